//! Independent brute-force oracles shared by the integration tests.
//!
//! Nothing here calls the search code under test. Strings are encoded as
//! base-`(k+1)` numbers, digit 0 for a blank and `letter + 1` otherwise,
//! position 1 most significant.

#![allow(dead_code)]

use std::collections::BTreeSet;

use logogram_core::{Alphabet, Slice, Word};

pub struct Cube {
    pub k: usize,
    pub l: usize,
    pub weights: Vec<usize>,
    pub size: usize,
}

impl Cube {
    pub fn new(k: usize, l: usize) -> Self {
        let mut weights = vec![1; l];
        for p in (0..l.saturating_sub(1)).rev() {
            weights[p] = weights[p + 1] * (k + 1);
        }
        Self {
            k,
            l,
            weights,
            size: (k + 1).pow(l as u32),
        }
    }

    pub fn digits(&self, mut code: usize) -> Vec<usize> {
        let mut d = vec![0; self.l];
        for p in (0..self.l).rev() {
            d[p] = code % (self.k + 1);
            code /= self.k + 1;
        }
        d
    }

    pub fn render(&self, code: usize, alphabet: &Alphabet) -> String {
        self.digits(code)
            .into_iter()
            .map(|d| if d == 0 { '_' } else { alphabet.symbols()[d - 1] })
            .collect()
    }

    /// Codes of all restrictions of a word (all `2^L` position subsets).
    pub fn restrictions(&self, word: &[usize]) -> Vec<usize> {
        (0..1usize << self.l)
            .map(|mask| {
                (0..self.l)
                    .filter(|p| mask >> p & 1 == 1)
                    .map(|p| (word[p] + 1) * self.weights[p])
                    .sum()
            })
            .collect()
    }
}

pub fn letters(w: &Word) -> Vec<usize> {
    w.letters().iter().map(|l| l.0 as usize).collect()
}

/// Minimal strings `g` with `∅ ≠ E^g ⊆ A`, rendered in text form.
///
/// A string is in the logogram iff some word of `E` includes it and no word
/// of `E \ A` does. Logograms are upward closed inside `Σ∞(E)`, so minimality
/// only needs the immediate restrictions.
pub fn reduced_logogram(slice: &Slice, a: &BTreeSet<Word>) -> BTreeSet<String> {
    let cube = Cube::new(slice.alphabet().len(), slice.length());
    let mut sigma = vec![false; cube.size];
    let mut escapes = vec![false; cube.size];
    for w in slice.words() {
        let outside = !a.contains(&w);
        for code in cube.restrictions(&letters(&w)) {
            sigma[code] = true;
            if outside {
                escapes[code] = true;
            }
        }
    }
    let in_log = |c: usize| sigma[c] && !escapes[c];
    (0..cube.size)
        .filter(|&c| in_log(c))
        .filter(|&c| {
            let d = cube.digits(c);
            (0..cube.l)
                .filter(|&p| d[p] > 0)
                .all(|p| !in_log(c - d[p] * cube.weights[p]))
        })
        .map(|c| cube.render(c, slice.alphabet()))
        .collect()
}

/// Whether a ternary-encoded formula (`n` variables, `m` clauses) is
/// satisfiable, by truth table over explicitly decoded clauses.
pub fn cnf_satisfiable(word: &[usize], n: usize, m: usize) -> bool {
    let clauses: Vec<Vec<i64>> = (0..m)
        .map(|c| {
            (0..n)
                .filter_map(|v| match word[c * n + v] {
                    1 => Some(v as i64 + 1),
                    2 => Some(-(v as i64 + 1)),
                    _ => None,
                })
                .collect()
        })
        .collect();
    (0..1u32 << n).any(|assignment| {
        clauses.iter().all(|clause| {
            clause.iter().any(|&lit| {
                let value = assignment >> (lit.unsigned_abs() - 1) & 1 == 1;
                if lit > 0 {
                    value
                } else {
                    !value
                }
            })
        })
    })
}

/// Number of one-literal-per-clause selections with no variable taking both
/// signs, counted clause by clause.
pub fn sat_selection_count(n: usize, m: usize) -> u64 {
    fn go(clause: usize, m: usize, n: usize, signs: &mut Vec<u8>) -> u64 {
        if clause == m {
            return 1;
        }
        let mut total = 0;
        for v in 0..n {
            for s in [1u8, 2] {
                if signs[v] == 0 || signs[v] == s {
                    let old = signs[v];
                    signs[v] = s;
                    total += go(clause + 1, m, n, signs);
                    signs[v] = old;
                }
            }
        }
        total
    }
    go(0, m, n, &mut vec![0; n])
}
