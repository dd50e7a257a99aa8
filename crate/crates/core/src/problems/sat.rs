//! CNF formulas as ternary words.
//!
//! A formula over `n` variables with `m` clauses is a word of length `n·m`:
//! clause `j` occupies block `(j-1)·n+1 ..= j·n` and position `v` of a block
//! holds 0 (variable absent), 1 (`x_v`) or 2 (`¬x_v`). An all-zero block is
//! the empty clause and makes the formula unsatisfiable.
//!
//! Solutions are the `2^n` assignments, counted upward in binary from
//! all-false with variable 1 as the least significant bit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logogram::Antichain;
use crate::problems::ProblemSlice;
use crate::string::{Alphabet, Letter, PartialString};
use crate::universe::{Slice, Word};

pub const ABSENT: Letter = Letter(0);
pub const POSITIVE: Letter = Letter(1);
pub const NEGATIVE: Letter = Letter(2);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CnfShape {
    pub n: usize,
    pub m: usize,
}

impl CnfShape {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 || m == 0 {
            return Err(Error::Validation(format!(
                "a CNF shape needs n >= 1 and m >= 1, got n={n}, m={m}"
            )));
        }
        Ok(Self { n, m })
    }

    pub fn length(&self) -> usize {
        self.n * self.m
    }

    /// Clause block (0-based) and variable (1-based) of a 1-based position.
    pub fn locate(&self, position: usize) -> (usize, usize) {
        ((position - 1) / self.n, (position - 1) % self.n + 1)
    }

    pub fn position(&self, clause: usize, var: usize) -> usize {
        clause * self.n + var
    }

    /// Value of variable `var` (1-based) under assignment number `i` (0-based).
    pub fn assignment_value(&self, i: usize, var: usize) -> bool {
        (i >> (var - 1)) & 1 == 1
    }

    pub fn assignment_count(&self) -> usize {
        1 << self.n
    }

    pub fn assignment_label(&self, i: usize) -> String {
        (1..=self.n)
            .map(|v| if self.assignment_value(i, v) { 'T' } else { 'F' })
            .collect()
    }
}

/// Whether `letter` at variable `var` is a literal made true by assignment `i`.
pub(crate) fn literal_true(shape: &CnfShape, letter: Letter, var: usize, i: usize) -> bool {
    match letter {
        POSITIVE => shape.assignment_value(i, var),
        NEGATIVE => !shape.assignment_value(i, var),
        _ => false,
    }
}

fn satisfied_by(shape: &CnfShape, x: &Word, i: usize) -> bool {
    (0..shape.m).all(|c| {
        (1..=shape.n).any(|v| literal_true(shape, x.at(shape.position(c, v)), v, i))
    })
}

pub fn sat_problem(shape: CnfShape) -> Result<ProblemSlice> {
    let slice = Slice::full(Alphabet::ternary(), shape.length())?
        .relabel(format!("CNF(n={}, m={})", shape.n, shape.m));
    let solutions = (0..shape.assignment_count())
        .map(|i| shape.assignment_label(i))
        .collect();
    ProblemSlice::new(
        slice,
        format!("sat {} {}", shape.n, shape.m),
        move |x| (0..shape.assignment_count()).any(|i| satisfied_by(&shape, x, i)),
        solutions,
        move |x, i| satisfied_by(&shape, x, i),
    )
    .map(|p| p.with_cnf(shape))
}

/// One literal per clause block with values in {1, 2}, never the same
/// variable with both signs.
pub fn predicted_sat_logogram(shape: CnfShape) -> Result<Antichain> {
    let slice = Slice::full(Alphabet::ternary(), shape.length())?;
    let mut out = Vec::new();
    let mut picks: Vec<(usize, Letter)> = Vec::with_capacity(shape.m);
    collect_selections(&shape, &mut picks, &mut out);
    Antichain::new(out, &slice)
}

fn collect_selections(shape: &CnfShape, picks: &mut Vec<(usize, Letter)>, out: &mut Vec<PartialString>) {
    let clause = picks.len();
    if clause == shape.m {
        let entries = picks
            .iter()
            .enumerate()
            .map(|(c, &(v, l))| (shape.position(c, v), l))
            .collect();
        out.push(PartialString::from_sorted_unchecked(entries));
        return;
    }
    for v in 1..=shape.n {
        for sign in [POSITIVE, NEGATIVE] {
            if picks.iter().any(|&(u, s)| u == v && s != sign) {
                continue;
            }
            picks.push((v, sign));
            collect_selections(shape, picks, out);
            picks.pop();
        }
    }
}

/// The formula whose every clause is the single literal `g` prescribes there.
pub fn gamma(g: &PartialString, shape: CnfShape) -> Result<Word> {
    let malformed = |why: &str| {
        Error::Domain(format!(
            "{} is not a one-literal-per-clause string for n={}, m={}: {why}",
            g.render(&Alphabet::ternary(), shape.length()),
            shape.n,
            shape.m
        ))
    };
    if g.size() > shape.length() {
        return Err(malformed("reaches past the formula"));
    }
    let mut per_clause = vec![0usize; shape.m];
    let mut signs: Vec<Option<Letter>> = vec![None; shape.n + 1];
    for (p, l) in g.iter() {
        if l != POSITIVE && l != NEGATIVE {
            return Err(malformed("prescribes a value other than 1 or 2"));
        }
        let (c, v) = shape.locate(p);
        per_clause[c] += 1;
        match signs[v] {
            Some(s) if s != l => return Err(malformed("prescribes both signs of one variable")),
            _ => signs[v] = Some(l),
        }
    }
    if per_clause.iter().any(|&c| c != 1) {
        return Err(malformed("needs exactly one position per clause"));
    }
    let mut letters = vec![ABSENT; shape.length()];
    for (p, l) in g.iter() {
        letters[p - 1] = l;
    }
    Ok(Word::new(letters))
}

/// Clause-list form: `{"n": 4, "clauses": [[1, 3, -4]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseList {
    pub n: usize,
    pub clauses: Vec<Vec<i64>>,
}

pub fn encode_formula(formula: &ClauseList) -> Result<Word> {
    let shape = CnfShape::new(formula.n, formula.clauses.len())?;
    let mut letters = vec![ABSENT; shape.length()];
    for (c, clause) in formula.clauses.iter().enumerate() {
        for &lit in clause {
            let var = lit.unsigned_abs() as usize;
            if lit == 0 || var > shape.n {
                return Err(Error::Validation(format!(
                    "literal {lit} out of range for n={}",
                    shape.n
                )));
            }
            let code = if lit > 0 { POSITIVE } else { NEGATIVE };
            let slot = &mut letters[shape.position(c, var) - 1];
            if *slot != ABSENT && *slot != code {
                return Err(Error::Validation(format!(
                    "clause {} holds both signs of x{var}, which the ternary encoding cannot express",
                    c + 1
                )));
            }
            *slot = code;
        }
    }
    Ok(Word::new(letters))
}

pub fn decode_formula(word: &Word, shape: CnfShape) -> Result<ClauseList> {
    if word.len() != shape.length() {
        return Err(Error::Validation(format!(
            "word of length {} does not fit n={}, m={}",
            word.len(),
            shape.n,
            shape.m
        )));
    }
    let clauses = (0..shape.m)
        .map(|c| {
            (1..=shape.n)
                .filter_map(|v| match word.at(shape.position(c, v)) {
                    POSITIVE => Some(Ok(v as i64)),
                    NEGATIVE => Some(Ok(-(v as i64))),
                    ABSENT => None,
                    other => Some(Err(Error::Validation(format!("letter {} is not a CNF code", other.0)))),
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ClauseList { n: shape.n, clauses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;

    fn shape(n: usize, m: usize) -> CnfShape {
        CnfShape::new(n, m).unwrap()
    }

    #[test]
    fn encodes_the_reference_clause() {
        let w = encode_formula(&ClauseList {
            n: 4,
            clauses: vec![vec![1, 3, -4]],
        })
        .unwrap();
        assert_eq!(w.render(&Alphabet::ternary()), "1012");
        let back = decode_formula(&w, shape(4, 1)).unwrap();
        assert_eq!(back.clauses, vec![vec![1, 3, -4]]);
    }

    #[test]
    fn encoding_rejects_bad_literals() {
        assert!(encode_formula(&ClauseList { n: 2, clauses: vec![vec![3]] }).is_err());
        assert!(encode_formula(&ClauseList { n: 2, clauses: vec![vec![0]] }).is_err());
        assert!(encode_formula(&ClauseList { n: 2, clauses: vec![vec![1, -1]] }).is_err());
        assert!(encode_formula(&ClauseList { n: 2, clauses: vec![] }).is_err());
    }

    #[test]
    fn single_variable_single_clause() {
        let p = sat_problem(shape(1, 1)).unwrap();
        let f: Vec<String> = p.target_set().iter().map(|w| w.render(p.slice().alphabet())).collect();
        assert_eq!(f, ["1", "2"]);
        assert!(!p.in_target(&p.slice().parse_word("0").unwrap()));
        assert_eq!(p.alpha(), 2);
    }

    #[test]
    fn satisfaction_examples() {
        let p = sat_problem(shape(2, 1)).unwrap();
        // x1 = T, x2 = F is assignment number 1.
        assert_eq!(p.solutions()[1], "TF");
        let w = |t: &str| p.slice().parse_word(t).unwrap();
        assert!(p.satisfies(&w("12"), 1));
        assert!(p.satisfies(&w("02"), 1));
        assert!(!p.satisfies(&w("01"), 1));
    }

    #[test]
    fn predicted_logogram_counts() {
        assert_eq!(predicted_sat_logogram(shape(1, 1)).unwrap().len(), 2);
        assert_eq!(predicted_sat_logogram(shape(2, 2)).unwrap().len(), 12);
        assert_eq!(predicted_sat_logogram(shape(2, 3)).unwrap().len(), 28);
        assert_eq!(predicted_sat_logogram(shape(3, 2)).unwrap().len(), 30);
        let s = Slice::full(Alphabet::ternary(), 1).unwrap();
        let strs: Vec<String> = predicted_sat_logogram(shape(1, 1))
            .unwrap()
            .iter()
            .map(|g| s.render(g))
            .collect();
        assert_eq!(strs, ["1", "2"]);
    }

    #[test]
    fn gamma_examples() {
        let t = Alphabet::ternary();
        let g = PartialString::parse("1___2_", &t).unwrap();
        assert_eq!(gamma(&g, shape(3, 2)).unwrap().render(&t), "100020");
        let g = PartialString::parse("1", &t).unwrap();
        assert_eq!(gamma(&g, shape(1, 1)).unwrap().render(&t), "1");
        let g = PartialString::parse("1__2", &t).unwrap();
        assert_eq!(gamma(&g, shape(2, 2)).unwrap().render(&t), "1002");
    }

    #[test]
    fn gamma_rejects_malformed_strings() {
        let t = Alphabet::ternary();
        for bad in ["11__", "1___", "0_1_", "1_2_", "1_2_1"] {
            let g = PartialString::parse(bad, &t).unwrap();
            assert!(matches!(gamma(&g, shape(2, 2)), Err(Error::Domain(_))), "{bad}");
        }
    }

    #[test]
    fn brute_force_logogram_matches_prediction_small() {
        for (n, m) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let p = sat_problem(shape(n, m)).unwrap();
            let log = p.logogram(&Budget::default()).unwrap();
            assert_eq!(log, predicted_sat_logogram(shape(n, m)).unwrap(), "n={n} m={m}");
        }
    }
}
