//! Partial strings: finite partial maps from 1-based positions to letters.
//!
//! A [`PartialString`] is a generalized certificate. Words are the special
//! case whose domain is an initial segment `1..=L`. Strings are ordered by
//! extension (`f <= g` when `g` agrees with `f` everywhere `f` is defined),
//! which makes them a meet-semilattice with the void string as bottom; joins
//! exist for compatible pairs.
//!
//! Text form: one character per position, `_` for a blank.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a letter in its [`Alphabet`]. The numeric order is the canonical
/// letter order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter(pub u8);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

pub const BLANK: char = '_';

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<char>", into = "Vec<char>")]
pub struct Alphabet {
    letters: Vec<char>,
}

impl Alphabet {
    pub fn new(letters: impl IntoIterator<Item = char>) -> Result<Self> {
        let letters: Vec<char> = letters.into_iter().collect();
        if letters.is_empty() {
            return Err(Error::Validation("alphabet must be nonempty".into()));
        }
        if letters.len() > u8::MAX as usize {
            return Err(Error::Validation("alphabet has too many letters".into()));
        }
        for (i, c) in letters.iter().enumerate() {
            if *c == BLANK || c.is_whitespace() {
                return Err(Error::Validation(format!("`{c}` cannot be a letter")));
            }
            if letters[..i].contains(c) {
                return Err(Error::Validation(format!("duplicate letter `{c}`")));
            }
        }
        Ok(Self { letters })
    }

    /// The alphabet `{0, 1, .., k-1}` rendered as decimal digits.
    pub fn digits(k: u8) -> Self {
        assert!((1..=10).contains(&k), "digit alphabets have 1 to 10 letters");
        Self {
            letters: (0..k).map(|d| char::from(b'0' + d)).collect(),
        }
    }

    pub fn binary() -> Self {
        Self::digits(2)
    }

    pub fn ternary() -> Self {
        Self::digits(3)
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letter(&self, c: char) -> Option<Letter> {
        self.letters
            .iter()
            .position(|&l| l == c)
            .map(|i| Letter(i as u8))
    }

    pub fn symbol(&self, letter: Letter) -> char {
        self.letters[letter.index()]
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.letters.len()).map(|i| Letter(i as u8))
    }

    pub fn symbols(&self) -> &[char] {
        &self.letters
    }
}

impl TryFrom<Vec<char>> for Alphabet {
    type Error = Error;

    fn try_from(letters: Vec<char>) -> Result<Self> {
        Alphabet::new(letters)
    }
}

impl From<Alphabet> for Vec<char> {
    fn from(a: Alphabet) -> Self {
        a.letters
    }
}

/// A finite partial function from positions (`>= 1`) to letters.
///
/// Entries are kept sorted by position. The derived equality is equality of
/// partial functions; [`Ord`] is the canonical presentation order (domain
/// size first, then lexicographic on `(position, letter)` pairs) and has
/// nothing to do with the extension order, see [`PartialString::extends`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PartialString {
    entries: Vec<(usize, Letter)>,
}

impl PartialString {
    /// The void string.
    pub fn void() -> Self {
        Self::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Letter)>) -> Result<Self> {
        let mut entries: Vec<(usize, Letter)> = pairs.into_iter().collect();
        entries.sort_unstable();
        entries.dedup();
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Domain(format!(
                    "position {} assigned twice",
                    w[0].0
                )));
            }
        }
        if entries.first().is_some_and(|&(p, _)| p == 0) {
            return Err(Error::Domain("positions are 1-based".into()));
        }
        Ok(Self { entries })
    }

    pub(crate) fn from_sorted_unchecked(entries: Vec<(usize, Letter)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.first().is_none_or(|&(p, _)| p >= 1));
        Self { entries }
    }

    /// The total string on `1..=letters.len()`.
    pub fn from_letters(letters: &[Letter]) -> Self {
        Self {
            entries: letters
                .iter()
                .enumerate()
                .map(|(i, &l)| (i + 1, l))
                .collect(),
        }
    }

    pub fn parse(text: &str, alphabet: &Alphabet) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, c) in text.chars().enumerate() {
            if c == BLANK {
                continue;
            }
            let letter = alphabet
                .letter(c)
                .ok_or_else(|| Error::Format(format!("unknown character `{c}` in `{text}`")))?;
            entries.push((i + 1, letter));
        }
        Ok(Self { entries })
    }

    /// Text form padded with blanks to `width` (or to `size()` if larger).
    pub fn render(&self, alphabet: &Alphabet, width: usize) -> String {
        let width = width.max(self.size());
        let mut out = vec![BLANK; width];
        for &(p, l) in &self.entries {
            out[p - 1] = alphabet.symbol(l);
        }
        out.into_iter().collect()
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        Rendered {
            string: self,
            alphabet,
        }
    }

    pub fn is_void(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of positions in the domain.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Greatest position in the domain, 0 for the void string.
    pub fn size(&self) -> usize {
        self.entries.last().map_or(0, |&(p, _)| p)
    }

    pub fn get(&self, position: usize) -> Option<Letter> {
        self.entries
            .binary_search_by_key(&position, |&(p, _)| p)
            .ok()
            .map(|i| self.entries[i].1)
    }

    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|&(p, _)| p)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, Letter)> + '_ {
        self.entries.iter().copied()
    }

    pub fn entries(&self) -> &[(usize, Letter)] {
        &self.entries
    }

    /// `true` iff `f <= self`: `self` is defined wherever `f` is and agrees
    /// with it there.
    pub fn extends(&self, f: &PartialString) -> bool {
        if f.entries.len() > self.entries.len() {
            return false;
        }
        // Both sorted by position: merge walk.
        let mut mine = self.entries.iter();
        'outer: for &(p, l) in &f.entries {
            for &(q, m) in mine.by_ref() {
                match q.cmp(&p) {
                    Ordering::Less => continue,
                    Ordering::Equal if m == l => continue 'outer,
                    _ => return false,
                }
            }
            return false;
        }
        true
    }

    /// `true` iff `f < self`.
    pub fn properly_extends(&self, f: &PartialString) -> bool {
        self.entries.len() > f.entries.len() && self.extends(f)
    }

    pub fn compatible(&self, other: &PartialString) -> bool {
        self.merge(other).is_some()
    }

    /// Greatest lower bound: the positions where both are defined and agree.
    pub fn meet(&self, other: &PartialString) -> PartialString {
        let entries = self
            .entries
            .iter()
            .filter(|&&(p, l)| other.get(p) == Some(l))
            .copied()
            .collect();
        Self { entries }
    }

    /// Least upper bound of two compatible strings.
    pub fn join(&self, other: &PartialString) -> Result<PartialString> {
        self.merge(other).ok_or_else(|| Error::Incompatible {
            left: format!("{:?}", self.entries),
            right: format!("{:?}", other.entries),
        })
    }

    fn merge(&self, other: &PartialString) -> Option<PartialString> {
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    if a[i].1 != b[j].1 {
                        return None;
                    }
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Some(Self { entries: out })
    }

    /// All strings obtained by deleting exactly one position, in canonical
    /// order.
    pub fn immediate_restrictions(&self) -> Vec<PartialString> {
        let mut out: Vec<PartialString> = (0..self.entries.len())
            .map(|skip| {
                let mut entries = self.entries.clone();
                entries.remove(skip);
                Self { entries }
            })
            .collect();
        out.sort();
        out
    }

    /// Restriction to the positions accepted by `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(usize) -> bool) -> PartialString {
        Self {
            entries: self.entries.iter().filter(|&&(p, _)| keep(p)).copied().collect(),
        }
    }

    /// Same string with one more position set. Fails if `position` is
    /// already defined with a different letter.
    pub fn with(&self, position: usize, letter: Letter) -> Result<PartialString> {
        self.join(&Self::from_pairs([(position, letter)])?)
    }
}

impl Ord for PartialString {
    fn cmp(&self, other: &Self) -> Ordering {
        self.entries
            .len()
            .cmp(&other.entries.len())
            .then_with(|| self.entries.cmp(&other.entries))
    }
}

impl PartialOrd for PartialString {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct Rendered<'a> {
    string: &'a PartialString,
    alphabet: &'a Alphabet,
}

impl fmt::Display for Rendered<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.string.is_void() {
            return f.write_str("⊥");
        }
        f.write_str(&self.string.render(self.alphabet, 0))
    }
}

/// `true` iff `f <= g`.
pub fn is_extension(g: &PartialString, f: &PartialString) -> bool {
    g.extends(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> PartialString {
        PartialString::parse(s, &Alphabet::ternary()).unwrap()
    }

    fn ps(pairs: &[(usize, u8)]) -> PartialString {
        PartialString::from_pairs(pairs.iter().map(|&(p, l)| (p, Letter(l)))).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(t("___"), PartialString::void());
        assert_eq!(t("__11_2_2_"), ps(&[(3, 1), (4, 1), (6, 2), (8, 2)]));
        assert_eq!(t("1_2"), ps(&[(1, 1), (3, 2)]));
        assert_eq!(t("1_2___").size(), 3);
    }

    #[test]
    fn parse_rejects_unknown_characters() {
        let err = PartialString::parse("1x2", &Alphabet::ternary()).unwrap_err();
        assert!(matches!(err, Error::Format(_)));
        assert!(PartialString::parse("3", &Alphabet::ternary()).is_err());
    }

    #[test]
    fn render_pads_to_width() {
        let a = Alphabet::ternary();
        assert_eq!(t("1_2").render(&a, 5), "1_2__");
        assert_eq!(PartialString::void().render(&a, 3), "___");
        assert_eq!(t("__11_2_2_").render(&a, 9), "__11_2_2_");
        assert_eq!(PartialString::void().display(&a).to_string(), "⊥");
    }

    #[test]
    fn extension_examples() {
        assert!(is_extension(&t("2102"), &PartialString::void()));
        assert!(is_extension(&t("1012"), &ps(&[(1, 1), (4, 2)])));
        assert!(!is_extension(&ps(&[(1, 2)]), &ps(&[(1, 1)])));
        assert!(!t("1_").extends(&t("1_1")));
        assert!(t("1_1").properly_extends(&t("1")));
        assert!(!t("1").properly_extends(&t("1")));
    }

    #[test]
    fn compatibility_examples() {
        assert!(ps(&[(1, 1)]).compatible(&ps(&[(2, 2)])));
        assert!(!ps(&[(1, 1), (2, 0)]).compatible(&ps(&[(1, 1), (2, 2)])));
        let f = t("12_0");
        assert!(f.compatible(&f));
    }

    #[test]
    fn meet_examples() {
        assert_eq!(
            ps(&[(1, 1), (2, 0)]).meet(&ps(&[(1, 1), (2, 2)])),
            ps(&[(1, 1)])
        );
        assert_eq!(t("1_2").meet(&PartialString::void()), PartialString::void());
        assert_eq!(ps(&[(1, 1)]).meet(&ps(&[(2, 1)])), PartialString::void());
    }

    #[test]
    fn join_examples() {
        assert_eq!(
            ps(&[(1, 1)]).join(&ps(&[(3, 2)])).unwrap(),
            ps(&[(1, 1), (3, 2)])
        );
        let f = t("_21");
        assert_eq!(f.join(&PartialString::void()).unwrap(), f);
        assert!(matches!(
            ps(&[(1, 1)]).join(&ps(&[(1, 2)])),
            Err(Error::Incompatible { .. })
        ));
    }

    #[test]
    fn immediate_restriction_examples() {
        assert_eq!(
            ps(&[(1, 1), (3, 2)]).immediate_restrictions(),
            vec![ps(&[(1, 1)]), ps(&[(3, 2)])]
        );
        assert!(PartialString::void().immediate_restrictions().is_empty());
        assert_eq!(
            ps(&[(5, 2)]).immediate_restrictions(),
            vec![PartialString::void()]
        );
    }

    #[test]
    fn canonical_order_is_size_then_pairs() {
        let mut v = vec![t("2_"), t("11"), PartialString::void(), t("_0"), t("1_")];
        v.sort();
        assert_eq!(v, vec![PartialString::void(), t("1_"), t("2_"), t("_0"), t("11")]);
    }

    #[test]
    fn from_pairs_validates() {
        assert!(PartialString::from_pairs([(0, Letter(1))]).is_err());
        assert!(PartialString::from_pairs([(2, Letter(1)), (2, Letter(0))]).is_err());
        assert_eq!(
            PartialString::from_pairs([(2, Letter(1)), (2, Letter(1))]).unwrap(),
            ps(&[(2, 1)])
        );
    }

    #[test]
    fn alphabet_validation() {
        assert!(Alphabet::new([]).is_err());
        assert!(Alphabet::new(['a', 'a']).is_err());
        assert!(Alphabet::new(['a', '_']).is_err());
        let a = Alphabet::new(['x', 'y']).unwrap();
        assert_eq!(a.letter('y'), Some(Letter(1)));
        assert_eq!(a.symbol(Letter(0)), 'x');
    }
}
