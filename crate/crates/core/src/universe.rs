//! Finite fixed-length word universes.
//!
//! A [`Slice`] is the part of a reference set `E` made of words of one length
//! `L`. Membership is tabulated once at construction so every quantifier over
//! `E` becomes a scan over a bit table. Words are indexed in lexicographic
//! order with position 1 as the most significant digit.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::string::{Alphabet, Letter, PartialString};

/// Largest word space `|Σ|^L` a slice will tabulate.
pub const MAX_WORDS: u128 = 1 << 22;

const SIGMA_TABLE_LIMIT: u128 = 1 << 22;

/// A total string on `1..=L`, stored as one letter per position.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Self { letters }
    }

    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self> {
        text.chars()
            .map(|c| {
                alphabet
                    .letter(c)
                    .ok_or_else(|| Error::Format(format!("unknown character `{c}` in word `{text}`")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Letter at 1-based `position`.
    pub fn at(&self, position: usize) -> Letter {
        self.letters[position - 1]
    }

    pub fn to_partial(&self) -> PartialString {
        PartialString::from_letters(&self.letters)
    }

    /// `true` iff `g <= self`.
    pub fn includes(&self, g: &PartialString) -> bool {
        g.iter()
            .all(|(p, l)| p <= self.letters.len() && self.letters[p - 1] == l)
    }

    /// Restriction of the word to the given positions.
    pub fn restrict(&self, positions: impl IntoIterator<Item = usize>) -> PartialString {
        let mut entries: Vec<(usize, Letter)> = positions
            .into_iter()
            .filter(|&p| p >= 1 && p <= self.letters.len())
            .map(|p| (p, self.letters[p - 1]))
            .collect();
        entries.sort_unstable();
        entries.dedup();
        PartialString::from_sorted_unchecked(entries)
    }

    pub fn render(&self, alphabet: &Alphabet) -> String {
        self.letters.iter().map(|&l| alphabet.symbol(l)).collect()
    }
}

pub type WordSet = BTreeSet<Word>;
pub type StringSet = BTreeSet<PartialString>;

/// How the words of `E` are chosen inside `Σ^L` in a serialized slice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Membership {
    /// `"all"`: the full cube.
    Keyword(String),
    /// `{"words": [...]}`: an explicit list.
    Words { words: Vec<String> },
    /// `{"adapter": "sat 2 2"}`: the reference set of a problem adapter.
    Adapter { adapter: String },
}

impl Membership {
    pub fn all() -> Self {
        Membership::Keyword("all".into())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SliceDescriptor {
    pub alphabet: Alphabet,
    pub length: usize,
    pub membership: Membership,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

/// One length-`L` slice of a reference set `E`.
#[derive(Clone)]
pub struct Slice {
    inner: Arc<SliceInner>,
}

struct SliceInner {
    alphabet: Alphabet,
    length: usize,
    label: String,
    /// `weights[p - 1] = |Σ|^(L - p)`.
    weights: Vec<usize>,
    members: Vec<bool>,
    member_count: usize,
    /// Tabulated `Σ∞(E)` membership indexed by string code; built lazily for
    /// slices that are not the full cube.
    sigma: OnceLock<Option<Vec<bool>>>,
}

impl fmt::Debug for Slice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Slice")
            .field("label", &self.inner.label)
            .field("alphabet", &self.inner.alphabet.symbols())
            .field("length", &self.inner.length)
            .field("members", &self.inner.member_count)
            .finish()
    }
}

impl Slice {
    /// Tabulates `membership` over `Σ^length`.
    pub fn new(
        alphabet: Alphabet,
        length: usize,
        label: impl Into<String>,
        membership: impl Fn(&Word) -> bool,
    ) -> Result<Self> {
        let total = word_space(&alphabet, length)?;
        let k = alphabet.len();
        let mut members = vec![false; total];
        let mut letters = vec![Letter(0); length];
        for (idx, slot) in members.iter_mut().enumerate() {
            decode_into(idx, k, &mut letters);
            *slot = membership(&Word::new(letters.clone()));
        }
        Self::from_table(alphabet, length, label.into(), members)
    }

    /// The full cube `Σ^length`.
    pub fn full(alphabet: Alphabet, length: usize) -> Result<Self> {
        let label = format!("{}^{}", alphabet.symbols().iter().collect::<String>(), length);
        let total = word_space(&alphabet, length)?;
        Self::from_table(alphabet, length, label, vec![true; total])
    }

    pub fn from_words(
        alphabet: Alphabet,
        length: usize,
        label: impl Into<String>,
        words: &[&str],
    ) -> Result<Self> {
        let total = word_space(&alphabet, length)?;
        let mut members = vec![false; total];
        let k = alphabet.len();
        for text in words {
            let w = Word::parse(text, &alphabet)?;
            if w.len() != length {
                return Err(Error::Validation(format!(
                    "word `{text}` has length {} but the slice has length {length}",
                    w.len()
                )));
            }
            members[encode(w.letters(), k)] = true;
        }
        Self::from_table(alphabet, length, label.into(), members)
    }

    /// Builds a slice from a descriptor whose membership is `"all"` or an
    /// explicit word list. Adapter references are resolved by
    /// [`crate::problems::slice_from_descriptor`].
    pub fn from_descriptor(desc: &SliceDescriptor) -> Result<Self> {
        let label = desc.label.clone();
        match &desc.membership {
            Membership::Keyword(k) if k == "all" => {
                let s = Self::full(desc.alphabet.clone(), desc.length)?;
                Ok(match label {
                    Some(l) => s.relabel(l),
                    None => s,
                })
            }
            Membership::Keyword(k) => Err(Error::Validation(format!(
                "unknown membership keyword `{k}`"
            ))),
            Membership::Words { words } => {
                let refs: Vec<&str> = words.iter().map(String::as_str).collect();
                Self::from_words(
                    desc.alphabet.clone(),
                    desc.length,
                    label.unwrap_or_else(|| "explicit".into()),
                    &refs,
                )
            }
            Membership::Adapter { adapter } => Err(Error::Validation(format!(
                "adapter reference `{adapter}` needs the problems module to resolve"
            ))),
        }
    }

    pub fn descriptor(&self) -> SliceDescriptor {
        let membership = if self.is_full() {
            Membership::all()
        } else {
            Membership::Words {
                words: self.words().map(|w| w.render(self.alphabet())).collect(),
            }
        };
        SliceDescriptor {
            alphabet: self.alphabet().clone(),
            length: self.length(),
            membership,
            label: Some(self.label().to_string()),
        }
    }

    pub(crate) fn from_table(
        alphabet: Alphabet,
        length: usize,
        label: String,
        members: Vec<bool>,
    ) -> Result<Self> {
        if length == 0 {
            return Err(Error::Validation("slice length must be positive".into()));
        }
        let member_count = members.iter().filter(|&&b| b).count();
        if member_count == 0 {
            return Err(Error::Validation(format!("slice `{label}` has an empty E")));
        }
        let k = alphabet.len();
        let weights = (1..=length).map(|p| k.pow((length - p) as u32)).collect();
        Ok(Self {
            inner: Arc::new(SliceInner {
                alphabet,
                length,
                label,
                weights,
                members,
                member_count,
                sigma: OnceLock::new(),
            }),
        })
    }

    pub fn relabel(&self, label: impl Into<String>) -> Self {
        let i = &self.inner;
        Self {
            inner: Arc::new(SliceInner {
                alphabet: i.alphabet.clone(),
                length: i.length,
                label: label.into(),
                weights: i.weights.clone(),
                members: i.members.clone(),
                member_count: i.member_count,
                sigma: OnceLock::new(),
            }),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.inner.alphabet
    }

    pub fn length(&self) -> usize {
        self.inner.length
    }

    pub fn label(&self) -> &str {
        &self.inner.label
    }

    /// Number of words of `E` in this slice.
    pub fn len(&self) -> usize {
        self.inner.member_count
    }

    pub fn is_empty(&self) -> bool {
        self.inner.member_count == 0
    }

    /// Size of the word space `|Σ|^L`.
    pub fn space(&self) -> usize {
        self.inner.members.len()
    }

    pub fn is_full(&self) -> bool {
        self.inner.member_count == self.inner.members.len()
    }

    pub fn contains(&self, word: &Word) -> bool {
        word.len() == self.length() && self.inner.members[self.index_of(word)]
    }

    pub(crate) fn members(&self) -> &[bool] {
        &self.inner.members
    }

    pub fn index_of(&self, word: &Word) -> usize {
        debug_assert_eq!(word.len(), self.length());
        encode(word.letters(), self.alphabet().len())
    }

    pub fn word_at(&self, index: usize) -> Word {
        let mut letters = vec![Letter(0); self.length()];
        decode_into(index, self.alphabet().len(), &mut letters);
        Word::new(letters)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let w = Word::parse(text, self.alphabet())?;
        if w.len() != self.length() {
            return Err(Error::Format(format!(
                "word `{text}` does not have length {}",
                self.length()
            )));
        }
        Ok(w)
    }

    pub fn parse_string(&self, text: &str) -> Result<PartialString> {
        PartialString::parse(text, self.alphabet())
    }

    pub fn render(&self, g: &PartialString) -> String {
        g.render(self.alphabet(), self.length())
    }

    /// The words of `E`, in lexicographic order.
    pub fn words(&self) -> impl Iterator<Item = Word> + '_ {
        self.member_indices().map(|i| self.word_at(i))
    }

    pub(crate) fn member_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.inner
            .members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| i)
    }

    /// Every word of `E` as a set.
    pub fn word_set(&self) -> WordSet {
        self.words().collect()
    }

    /// Membership table of `set` over the word space. Words of the wrong
    /// length are ignored.
    pub fn mask_of(&self, set: &WordSet) -> Vec<bool> {
        let mut mask = vec![false; self.space()];
        for w in set {
            if w.len() == self.length() {
                mask[self.index_of(w)] = true;
            }
        }
        mask
    }

    pub fn set_of(&self, mask: &[bool]) -> WordSet {
        mask.iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| self.word_at(i))
            .collect()
    }

    /// Indices of all words of `Σ^L` (members of `E` or not) extending `g`,
    /// increasing. Empty when `g` reaches past `L`.
    pub(crate) fn extension_indices(&self, g: &PartialString) -> ExtensionIndices {
        ExtensionIndices::new(self, g)
    }

    /// Indices of the words of `E` extending `g`.
    pub(crate) fn member_extensions<'a>(
        &'a self,
        g: &PartialString,
    ) -> impl Iterator<Item = usize> + 'a {
        let members = &self.inner.members;
        self.extension_indices(g).filter(move |&i| members[i])
    }

    /// Code of `g` in the `(|Σ|+1)^L` string space, blank = digit 0.
    pub(crate) fn string_code(&self, g: &PartialString) -> Option<usize> {
        if g.size() > self.length() {
            return None;
        }
        let k1 = self.alphabet().len() + 1;
        let l = self.length();
        Some(
            g.iter()
                .map(|(p, letter)| (letter.index() + 1) * k1.pow((l - p) as u32))
                .sum(),
        )
    }

    pub(crate) fn string_space(&self) -> Option<usize> {
        let k1 = (self.alphabet().len() + 1) as u128;
        let space = k1.checked_pow(self.length() as u32)?;
        (space <= usize::MAX as u128).then_some(space as usize)
    }

    fn sigma_table(&self) -> Option<&[bool]> {
        self.inner
            .sigma
            .get_or_init(|| self.build_sigma_table())
            .as_deref()
    }

    fn build_sigma_table(&self) -> Option<Vec<bool>> {
        let space = self.string_space()? as u128;
        let work = (self.len() as u128) << self.length().min(100);
        if self.is_full() || space > SIGMA_TABLE_LIMIT || work > (1 << 26) {
            return None;
        }
        let l = self.length();
        let k1 = self.alphabet().len() + 1;
        let pw: Vec<usize> = (1..=l).map(|p| k1.pow((l - p) as u32)).collect();
        let mut table = vec![false; space as usize];
        let mut partial = vec![0usize; 1 << l];
        for idx in self.member_indices() {
            let w = self.word_at(idx);
            for mask in 1usize..(1 << l) {
                let bit = mask.trailing_zeros() as usize;
                partial[mask] = partial[mask & (mask - 1)] + (w.letters[bit].index() + 1) * pw[bit];
                table[partial[mask]] = true;
            }
            table[0] = true;
        }
        Some(table)
    }
}

fn word_space(alphabet: &Alphabet, length: usize) -> Result<usize> {
    let words = (alphabet.len() as u128)
        .checked_pow(length as u32)
        .unwrap_or(u128::MAX);
    if words > MAX_WORDS {
        return Err(Error::SliceTooLarge {
            words,
            limit: MAX_WORDS,
        });
    }
    Ok(words as usize)
}

fn encode(letters: &[Letter], k: usize) -> usize {
    letters.iter().fold(0, |acc, l| acc * k + l.index())
}

fn decode_into(mut index: usize, k: usize, out: &mut [Letter]) {
    for slot in out.iter_mut().rev() {
        *slot = Letter((index % k) as u8);
        index /= k;
    }
}

/// Odometer over the free positions of a string, yielding word indices in
/// increasing order.
pub(crate) struct ExtensionIndices {
    k: usize,
    current: usize,
    /// Weights of the free positions, least significant first.
    free: Vec<usize>,
    digits: Vec<usize>,
    done: bool,
}

impl ExtensionIndices {
    fn new(slice: &Slice, g: &PartialString) -> Self {
        let k = slice.alphabet().len();
        let weights = &slice.inner.weights;
        if g.size() > slice.length() || g.iter().any(|(_, l)| l.index() >= k) {
            return Self {
                k,
                current: 0,
                free: Vec::new(),
                digits: Vec::new(),
                done: true,
            };
        }
        let mut fixed = vec![false; slice.length()];
        let mut base = 0;
        for (p, l) in g.iter() {
            fixed[p - 1] = true;
            base += l.index() * weights[p - 1];
        }
        let free: Vec<usize> = (0..slice.length())
            .rev()
            .filter(|&i| !fixed[i])
            .map(|i| weights[i])
            .collect();
        let digits = vec![0; free.len()];
        Self {
            k,
            current: base,
            free,
            digits,
            done: false,
        }
    }
}

impl Iterator for ExtensionIndices {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.done {
            return None;
        }
        let out = self.current;
        let mut i = 0;
        loop {
            if i == self.free.len() {
                self.done = true;
                break;
            }
            self.digits[i] += 1;
            self.current += self.free[i];
            if self.digits[i] < self.k {
                break;
            }
            self.current -= self.k * self.free[i];
            self.digits[i] = 0;
            i += 1;
        }
        Some(out)
    }
}

/// Words of the slice, in canonical order.
pub fn enumerate_words(slice: &Slice) -> impl Iterator<Item = Word> + '_ {
    slice.words()
}

/// `E^H`: the words of `E` that include some string of `H`.
pub fn expand<'a>(h: impl IntoIterator<Item = &'a PartialString>, slice: &Slice) -> WordSet {
    slice.set_of(&expand_mask(h, slice))
}

pub(crate) fn expand_mask<'a>(
    h: impl IntoIterator<Item = &'a PartialString>,
    slice: &Slice,
) -> Vec<bool> {
    let mut mask = vec![false; slice.space()];
    for g in h {
        for i in slice.member_extensions(g) {
            mask[i] = true;
        }
    }
    mask
}

/// `g ∈ Σ∞(E)`: some word of `E` extends `g`.
pub fn in_sigma_infinity(g: &PartialString, slice: &Slice) -> bool {
    if g.size() > slice.length() {
        return false;
    }
    if slice.is_full() {
        return g.iter().all(|(_, l)| l.index() < slice.alphabet().len());
    }
    if let (Some(table), Some(code)) = (slice.sigma_table(), slice.string_code(g)) {
        return table[code];
    }
    slice.member_extensions(g).next().is_some()
}

/// The words of `E` extending `g`, in canonical order.
pub fn extensions_in_e<'a>(g: &PartialString, slice: &'a Slice) -> impl Iterator<Item = Word> + 'a {
    slice.member_extensions(g).map(move |i| slice.word_at(i))
}
