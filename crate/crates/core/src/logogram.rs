//! Logograms, reduced logograms and the closure operators built on them.
//!
//! `Log_E(A)` is the set of strings in `Σ∞(E)` whose presence in a word of
//! `E` forces membership in `A`. It is upward closed and usually huge, so it
//! is only ever queried by membership ([`in_logogram`]); the part that gets
//! materialized is its set of minimal elements, the reduced logogram
//! ([`reduced_logogram`]).

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::{Budget, Meter};
use crate::error::{Error, Result};
use crate::problems::ProblemSlice;
use crate::string::{Letter, PartialString};
use crate::universe::{expand_mask, in_sigma_infinity, Slice, Word, WordSet};

/// Per-candidate outcome of one search level: code, mark, and the string when
/// it is a new minimal element.
type LevelMarks = Vec<(usize, u8, Option<PartialString>)>;

/// A set of pairwise incomparable strings of `Σ∞(E)`, in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Antichain {
    elements: Vec<PartialString>,
}

impl Antichain {
    /// Validates incomparability and `Σ∞(E)` membership.
    pub fn new(elements: impl IntoIterator<Item = PartialString>, slice: &Slice) -> Result<Self> {
        let mut elements: Vec<PartialString> = elements.into_iter().collect();
        elements.sort();
        elements.dedup();
        for (i, f) in elements.iter().enumerate() {
            if !in_sigma_infinity(f, slice) {
                return Err(Error::Domain(format!(
                    "{} is not included in any word of {}",
                    slice.render(f),
                    slice.label()
                )));
            }
            for g in &elements[i + 1..] {
                if g.extends(f) || f.extends(g) {
                    return Err(Error::Domain(format!(
                        "{} and {} are comparable",
                        slice.render(f),
                        slice.render(g)
                    )));
                }
            }
        }
        Ok(Self { elements })
    }

    fn from_sorted(elements: Vec<PartialString>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Self { elements }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, PartialString> {
        self.elements.iter()
    }

    pub fn as_slice(&self) -> &[PartialString] {
        &self.elements
    }

    pub fn contains(&self, g: &PartialString) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// `true` iff some element is included in `word`.
    pub fn covers(&self, word: &Word) -> bool {
        self.elements.iter().any(|g| word.includes(g))
    }

    pub fn report(&self, slice: &Slice, set_label: impl Into<String>) -> AntichainReport {
        AntichainReport {
            slice: slice.label().to_string(),
            set_label: set_label.into(),
            strings: self.elements.iter().map(|g| slice.render(g)).collect(),
            count: self.elements.len(),
        }
    }
}

impl<'a> IntoIterator for &'a Antichain {
    type Item = &'a PartialString;
    type IntoIter = std::slice::Iter<'a, PartialString>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AntichainReport {
    pub slice: String,
    pub set_label: String,
    pub strings: Vec<String>,
    pub count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Membership {
    /// Not included in any word of `E`.
    Outside,
    /// In `Σ∞(E)` but some extension in `E` escapes `A`.
    Escapes,
    InLogogram,
}

/// Classifies `g` against `A` (given as a mask over the word space) in one
/// scan of its extensions.
pub(crate) fn logogram_membership(g: &PartialString, a: &[bool], slice: &Slice) -> Membership {
    let members = slice.members();
    let mut seen = false;
    for i in slice.extension_indices(g) {
        if members[i] {
            if !a[i] {
                return Membership::Escapes;
            }
            seen = true;
        }
    }
    if seen {
        Membership::InLogogram
    } else {
        Membership::Outside
    }
}

pub(crate) fn in_logogram_mask(g: &PartialString, a: &[bool], slice: &Slice) -> bool {
    logogram_membership(g, a, slice) == Membership::InLogogram
}

/// `g ∈ Log_E(A)`.
pub fn in_logogram(g: &PartialString, a: &WordSet, slice: &Slice) -> bool {
    in_logogram_mask(g, &slice.mask_of(a), slice)
}

/// `|Log_E(A)|`, the minimal elements of the logogram of `A`.
pub fn reduced_logogram(a: &WordSet, slice: &Slice, budget: &Budget) -> Result<Antichain> {
    reduced_logogram_mask(&slice.mask_of(a), slice, budget)
}

pub(crate) fn reduced_logogram_mask(a: &[bool], slice: &Slice, budget: &Budget) -> Result<Antichain> {
    let meter = budget.meter();
    minimal_search(a, slice, &meter).map(Antichain::from_sorted)
}

const UNMARKED: u8 = 0;
/// In the up-set of an already found minimal string.
const ABOVE: u8 = 1;
/// Outside `Σ∞(E)`, and so is everything above it.
const DEAD: u8 = 2;

const DENSE_MARKS_LIMIT: usize = 1 << 26;

enum Marks {
    Dense(Vec<u8>),
    Sparse(HashMap<usize, u8>),
}

impl Marks {
    fn new(slice: &Slice) -> Self {
        match slice.string_space() {
            Some(n) if n <= DENSE_MARKS_LIMIT => Marks::Dense(vec![UNMARKED; n]),
            _ => Marks::Sparse(HashMap::new()),
        }
    }

    fn get(&self, code: usize) -> u8 {
        match self {
            Marks::Dense(v) => v[code],
            Marks::Sparse(m) => m.get(&code).copied().unwrap_or(UNMARKED),
        }
    }

    fn set(&mut self, code: usize, mark: u8) {
        match self {
            Marks::Dense(v) => v[code] = mark,
            Marks::Sparse(m) => {
                m.insert(code, mark);
            }
        }
    }
}

/// Level-wise search by domain size. Candidates above a found minimal string
/// or above a string outside `Σ∞(E)` are decided from their immediate
/// restrictions without scanning words. Within a level candidates are
/// independent, so they are evaluated in parallel against the marks of the
/// previous levels and the marks are applied afterwards.
fn minimal_search(a: &[bool], slice: &Slice, meter: &Meter) -> Result<Vec<PartialString>> {
    let l = slice.length();
    let k = slice.alphabet().len();
    let k1 = k + 1;
    let place: Vec<usize> = (1..=l).map(|p| k1.pow((l - p) as u32)).collect();
    let mut marks = Marks::new(slice);
    let mut found: Vec<PartialString> = Vec::new();

    for level in 0..=l {
        let combos = combinations(l, level);
        let batch: Vec<std::result::Result<LevelMarks, ()>> = combos
            .par_iter()
            .map(|positions| {
                meter
                    .charge((k as u64).pow(level as u32))
                    .map_err(|_| ())?;
                let mut out = Vec::new();
                let mut digits = vec![0usize; level];
                loop {
                    let code: usize = positions
                        .iter()
                        .zip(&digits)
                        .map(|(&p, &d)| (d + 1) * place[p - 1])
                        .sum();
                    let mut mark = UNMARKED;
                    for (&p, &d) in positions.iter().zip(&digits) {
                        match marks.get(code - (d + 1) * place[p - 1]) {
                            ABOVE => {
                                mark = ABOVE;
                                break;
                            }
                            DEAD => mark = DEAD,
                            _ => {}
                        }
                    }
                    if mark == UNMARKED {
                        let g = PartialString::from_sorted_unchecked(
                            positions
                                .iter()
                                .zip(&digits)
                                .map(|(&p, &d)| (p, Letter(d as u8)))
                                .collect(),
                        );
                        match logogram_membership(&g, a, slice) {
                            Membership::Outside => out.push((code, DEAD, None)),
                            Membership::InLogogram => out.push((code, ABOVE, Some(g))),
                            Membership::Escapes => out.push((code, UNMARKED, None)),
                        }
                    } else {
                        out.push((code, mark, None));
                    }
                    if !advance(&mut digits, k) {
                        break;
                    }
                }
                Ok(out)
            })
            .collect();

        let mut open = false;
        let mut level_found = Vec::new();
        let mut exhausted = false;
        for chunk in batch {
            match chunk {
                Ok(entries) => {
                    for (code, mark, g) in entries {
                        match mark {
                            UNMARKED => open = true,
                            m => marks.set(code, m),
                        }
                        if let Some(g) = g {
                            level_found.push(g);
                        }
                    }
                }
                Err(()) => exhausted = true,
            }
        }
        if exhausted {
            found.sort();
            return Err(Error::BudgetExhausted {
                candidates: meter.used(),
                level,
                frontier: found,
            });
        }
        found.extend(level_found);
        if !open {
            break;
        }
    }
    found.sort();
    Ok(found)
}

/// All `size`-subsets of `1..=n`, each increasing, in lexicographic order.
fn combinations(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (1..=size).collect();
    if size > n {
        return out;
    }
    loop {
        out.push(current.clone());
        let mut i = size;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] < n - (size - 1 - i) {
                current[i] += 1;
                for j in i + 1..size {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
        }
    }
}

fn advance(digits: &mut [usize], k: usize) -> bool {
    for d in digits.iter_mut().rev() {
        *d += 1;
        if *d < k {
            return true;
        }
        *d = 0;
    }
    false
}

/// `H ⊒^E K`: every word of `E` including a string of `H` also includes a
/// string of `K`.
pub fn entangles(h: &[PartialString], k: &[PartialString], slice: &Slice) -> bool {
    entanglement_counterexample(h, k, slice).is_none()
}

/// A word of `E` that includes a string of `H` but none of `K`.
pub fn entanglement_counterexample(
    h: &[PartialString],
    k: &[PartialString],
    slice: &Slice,
) -> Option<Word> {
    let eh = expand_mask(h, slice);
    let ek = expand_mask(k, slice);
    eh.iter()
        .zip(&ek)
        .position(|(&x, &y)| x && !y)
        .map(|i| slice.word_at(i))
}

/// `E^H = E^K`.
pub fn isoexpansive(h: &[PartialString], k: &[PartialString], slice: &Slice) -> bool {
    expand_mask(h, slice) == expand_mask(k, slice)
}

/// `A^{βα} = E^{Log_E(A)}`, computed through the reduced logogram.
pub fn closure_ba(a: &WordSet, slice: &Slice) -> WordSet {
    slice.set_of(&closure_ba_mask(&slice.mask_of(a), slice))
}

pub(crate) fn closure_ba_mask(a: &[bool], slice: &Slice) -> Vec<bool> {
    let log = reduced_logogram_mask(a, slice, &Budget::unlimited())
        .expect("an unlimited budget cannot run out");
    expand_mask(log.iter(), slice)
}

/// `g ∈ H^{αβ} = Log_E(E^H)`.
pub fn closure_ab_contains(g: &PartialString, h: &[PartialString], slice: &Slice) -> bool {
    in_logogram_mask(g, &expand_mask(h, slice), slice)
}

/// `A^{βα} = A`.
pub fn is_closed(a: &WordSet, slice: &Slice) -> bool {
    let mask = slice.mask_of(a);
    closure_ba_mask(&mask, slice) == mask
}

/// `∀x ∈ E: x ∈ F ⇔ ∃f ∈ H, f ≤ x`, without requiring `H ⊆ |Log_E(F)|`.
pub fn decides_target(h: &[PartialString], problem: &ProblemSlice) -> bool {
    expand_mask(h, problem.slice()) == problem.target_mask()
}

/// Completeness of a subset of the reduced logogram.
pub fn is_complete(h: &[PartialString], problem: &ProblemSlice) -> Result<bool> {
    require_subset(h, problem)?;
    Ok(decides_target(h, problem))
}

fn require_subset(h: &[PartialString], problem: &ProblemSlice) -> Result<()> {
    let log = problem.logogram(&Budget::default())?;
    if let Some(g) = h.iter().find(|g| !log.contains(g)) {
        return Err(Error::Domain(format!(
            "{} is not in the reduced logogram of {}",
            problem.slice().render(g),
            problem.label()
        )));
    }
    Ok(())
}

/// For one string of a complete set: a word of `F` that includes it and no
/// other member of the set. Removing the string would leave that word
/// uncovered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RemovalWitness {
    pub string: PartialString,
    pub word: Option<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IrreducibilityReport {
    pub irreducible: bool,
    /// First string (canonical order) that can be dropped without losing
    /// completeness.
    pub removable: Option<PartialString>,
    pub witnesses: Vec<RemovalWitness>,
}

/// Irreducibility of a complete set. Completeness is monotone under
/// supersets, so it is enough to try removing one string at a time.
pub fn is_irreducible(h: &[PartialString], problem: &ProblemSlice) -> Result<IrreducibilityReport> {
    if !is_complete(h, problem)? {
        return Err(Error::Domain(format!(
            "set is not complete for {}",
            problem.label()
        )));
    }
    let mut h: Vec<PartialString> = h.to_vec();
    h.sort();
    h.dedup();
    let witnesses = unique_cover_words(&h, problem.slice())
        .into_iter()
        .zip(&h)
        .map(|(word, g)| RemovalWitness {
            string: g.clone(),
            word,
        })
        .collect::<Vec<_>>();
    let removable = witnesses
        .iter()
        .find(|w| w.word.is_none())
        .map(|w| w.string.clone());
    Ok(IrreducibilityReport {
        irreducible: removable.is_none(),
        removable,
        witnesses,
    })
}

/// For each string of `h`, the first word of `E` (canonical order) that
/// includes it and no other string of `h`.
pub(crate) fn unique_cover_words(h: &[PartialString], slice: &Slice) -> Vec<Option<Word>> {
    let mut count = vec![0u32; slice.space()];
    for g in h {
        for i in slice.member_extensions(g) {
            count[i] += 1;
        }
    }
    h.par_iter()
        .map(|g| {
            slice
                .member_extensions(g)
                .find(|&i| count[i] == 1)
                .map(|i| slice.word_at(i))
        })
        .collect()
}
