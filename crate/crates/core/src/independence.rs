//! Internal independence of a reference set and simple/strong independence
//! of a decision problem.
//!
//! Entanglement is read as "presence forces presence": `f` entangles `g`
//! when every word of `E` including `f` also includes `g`. Over a full cube
//! that happens exactly when `g <= f`.

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::Result;
use crate::logogram::unique_cover_words;
use crate::problems::ProblemSlice;
use crate::string::{Letter, PartialString};
use crate::universe::{in_sigma_infinity, Slice, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }

    pub(crate) fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

/// Strings that break a property, with an optional word backing the claim.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub strings: Vec<PartialString>,
    pub evidence: Option<Word>,
    pub reason: String,
}

/// A word of `E` that includes `string` and no other string of the set under
/// test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separator {
    pub string: PartialString,
    pub word: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependenceReport {
    pub verdict: Verdict,
    pub counterexample: Option<Counterexample>,
    pub separators: Vec<Separator>,
    pub strings_checked: u64,
    /// The check stopped early; a `Pass` then only covers what was checked.
    pub budget_exhausted: bool,
}

impl IndependenceReport {
    fn pass(strings_checked: u64, separators: Vec<Separator>) -> Self {
        Self {
            verdict: Verdict::Pass,
            counterexample: None,
            separators,
            strings_checked,
            budget_exhausted: false,
        }
    }

    fn fail(strings_checked: u64, counterexample: Counterexample) -> Self {
        Self {
            verdict: Verdict::Fail,
            counterexample: Some(counterexample),
            separators: Vec::new(),
            strings_checked,
            budget_exhausted: false,
        }
    }

    pub fn to_json(&self, slice: &Slice) -> IndependenceJson {
        IndependenceJson {
            verdict: self.verdict,
            counterexample: self.counterexample.as_ref().map(|c| CounterexampleJson {
                strings: c.strings.iter().map(|g| slice.render(g)).collect(),
                evidence: c.evidence.as_ref().map(|w| w.render(slice.alphabet())),
                reason: c.reason.clone(),
            }),
            separators: (!self.separators.is_empty()).then(|| {
                self.separators
                    .iter()
                    .map(|s| SeparatorJson {
                        string: slice.render(&s.string),
                        word: s.word.render(slice.alphabet()),
                    })
                    .collect()
            }),
            strings_checked: self.strings_checked,
            budget_exhausted: self.budget_exhausted,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IndependenceJson {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<CounterexampleJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separators: Option<Vec<SeparatorJson>>,
    pub strings_checked: u64,
    pub budget_exhausted: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleJson {
    pub strings: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<String>,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeparatorJson {
    pub string: String,
    pub word: String,
}

/// A word of `E` including `f` but not `g`, if any.
pub fn separating_word(f: &PartialString, g: &PartialString, slice: &Slice) -> Option<Word> {
    slice
        .member_extensions(f)
        .map(|i| slice.word_at(i))
        .find(|x| !x.includes(g))
}

/// Every string of `Σ∞(E)` with positions in `1..=L`, canonical order.
fn sigma_strings(slice: &Slice, limit: u64) -> std::result::Result<Vec<PartialString>, u64> {
    let l = slice.length();
    let k = slice.alphabet().len();
    let mut out = Vec::new();
    let mut digits = vec![0usize; l];
    let mut visited = 0u64;
    loop {
        visited += 1;
        if visited > limit {
            return Err(visited);
        }
        let g = PartialString::from_sorted_unchecked(
            digits
                .iter()
                .enumerate()
                .filter(|(_, &d)| d > 0)
                .map(|(i, &d)| (i + 1, Letter((d - 1) as u8)))
                .collect(),
        );
        if in_sigma_infinity(&g, slice) {
            out.push(g);
        }
        let mut i = l;
        loop {
            if i == 0 {
                out.sort();
                return Ok(out);
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] <= k {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Checks `f ⊒^E g ⇔ g <= f` over all pairs of `Σ∞(E)`. Each pair is charged
/// to the budget; when it runs out the report says so and covers only the
/// pairs visited.
pub fn internal_independence(slice: &Slice, budget: &Budget) -> IndependenceReport {
    let strings = match sigma_strings(slice, budget.max_candidates) {
        Ok(s) => s,
        Err(visited) => {
            return IndependenceReport {
                budget_exhausted: true,
                ..IndependenceReport::pass(visited, Vec::new())
            }
        }
    };
    let meter = budget.meter();
    let mut checked = 0u64;
    // Extension sets as sorted index lists; f ⊒ g iff ext(f) ⊆ ext(g).
    let ext: Vec<Vec<usize>> = strings
        .par_iter()
        .map(|g| slice.member_extensions(g).collect())
        .collect();
    for (a, f) in strings.iter().enumerate() {
        for (b, g) in strings.iter().enumerate() {
            if meter.charge(1).is_err() {
                return IndependenceReport {
                    budget_exhausted: true,
                    ..IndependenceReport::pass(checked, Vec::new())
                };
            }
            checked += 1;
            let restricts = f.extends(g);
            let entangled = is_sorted_subset(&ext[a], &ext[b]);
            if entangled != restricts {
                let evidence = if entangled {
                    None
                } else {
                    separating_word(f, g, slice)
                };
                return IndependenceReport::fail(
                    checked,
                    Counterexample {
                        strings: vec![f.clone(), g.clone()],
                        evidence,
                        reason: if entangled {
                            "first entangles second although second is not a restriction of it".into()
                        } else {
                            "second is a restriction of first but is not entangled".into()
                        },
                    },
                );
            }
        }
    }
    IndependenceReport::pass(checked, Vec::new())
}

fn is_sorted_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

/// Pairwise mutual independence of `|Log_E(F)|`.
pub fn simple_independence(problem: &ProblemSlice, budget: &Budget) -> Result<IndependenceReport> {
    let log = problem.logogram(budget)?;
    let slice = problem.slice();
    let strings = log.as_slice();
    let mut checked = 0u64;
    for (i, f) in strings.iter().enumerate() {
        for g in &strings[i + 1..] {
            checked += 1;
            for (a, b) in [(f, g), (g, f)] {
                if separating_word(a, b, slice).is_none() {
                    return Ok(IndependenceReport::fail(
                        checked,
                        Counterexample {
                            strings: vec![a.clone(), b.clone()],
                            evidence: None,
                            reason: "first entangles second".into(),
                        },
                    ));
                }
            }
        }
    }
    Ok(IndependenceReport::pass(checked, Vec::new()))
}

/// Strong internal independence: every string of `|Log_E(F)|` has a word of
/// `E` that includes it and no other string of the reduced logogram. A
/// separator avoiding all the others also avoids any subset of them, so the
/// whole set is the only case that needs checking.
pub fn strong_independence(problem: &ProblemSlice, budget: &Budget) -> Result<IndependenceReport> {
    let log = problem.logogram(budget)?;
    let strings = log.as_slice();
    let words = unique_cover_words(strings, problem.slice());
    let mut separators = Vec::with_capacity(strings.len());
    for (g, word) in strings.iter().zip(words) {
        match word {
            Some(word) => separators.push(Separator {
                string: g.clone(),
                word,
            }),
            None => {
                return Ok(IndependenceReport::fail(
                    separators.len() as u64 + 1,
                    Counterexample {
                        strings: vec![g.clone()],
                        evidence: None,
                        reason: "every word including this string includes another reduced-logogram string"
                            .into(),
                    },
                ))
            }
        }
    }
    Ok(IndependenceReport::pass(strings.len() as u64, separators))
}
