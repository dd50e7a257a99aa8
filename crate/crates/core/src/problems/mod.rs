//! Problem adapters.
//!
//! A [`ProblemSlice`] is a slice of the reference set together with the
//! target set `F` and its decomposition into regions `F_i`, one per solution
//! `y_i`. Membership and region tables are evaluated once at construction
//! and the region cover `F = ∪ F_i` is checked exhaustively.

mod composite;
mod connectivity;
mod generic;
mod sat;

use std::fmt;
use std::sync::{Arc, OnceLock};

pub use composite::composite_problem;
pub use connectivity::{connectivity_problem, edge_positions};
pub use generic::{generic_problem, ProblemDescriptor, RegionDescriptor, WordList};
pub(crate) use sat::literal_true;
pub use sat::{
    decode_formula, encode_formula, gamma, predicted_sat_logogram, sat_problem, CnfShape, ClauseList,
};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::logogram::{reduced_logogram_mask, Antichain};
use crate::universe::{Membership, Slice, SliceDescriptor, Word, WordSet};

type Satisfies = Arc<dyn Fn(&Word, usize) -> bool + Send + Sync>;

#[derive(Clone)]
pub struct ProblemSlice {
    slice: Slice,
    label: String,
    solutions: Vec<String>,
    target: Vec<bool>,
    regions: Vec<Vec<bool>>,
    satisfies: Satisfies,
    cnf: Option<CnfShape>,
    logogram: Arc<OnceLock<Antichain>>,
}

impl fmt::Debug for ProblemSlice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ProblemSlice")
            .field("label", &self.label)
            .field("slice", &self.slice)
            .field("alpha", &self.solutions.len())
            .finish()
    }
}

impl ProblemSlice {
    /// Tabulates `F` and the regions over the words of `E`.
    ///
    /// Fails when some word of `F` is in no region, when a region leaks
    /// outside `F`, or when `F` is empty or all of `E`.
    pub fn new(
        slice: Slice,
        label: impl Into<String>,
        f_membership: impl Fn(&Word) -> bool,
        solutions: Vec<String>,
        satisfies: impl Fn(&Word, usize) -> bool + Send + Sync + 'static,
    ) -> Result<Self> {
        let label = label.into();
        let space = slice.space();
        let mut target = vec![false; space];
        let mut regions = vec![vec![false; space]; solutions.len()];
        for idx in slice.member_indices() {
            let x = slice.word_at(idx);
            let in_f = f_membership(&x);
            target[idx] = in_f;
            let mut covered = false;
            for (i, region) in regions.iter_mut().enumerate() {
                if satisfies(&x, i) {
                    region[idx] = true;
                    covered = true;
                }
            }
            if in_f != covered {
                let w = x.render(slice.alphabet());
                return Err(Error::Validation(if in_f {
                    format!("{label}: word {w} is in F but in no region")
                } else {
                    format!("{label}: word {w} is in a region but not in F")
                }));
            }
        }
        let size = target.iter().filter(|&&b| b).count();
        if size == 0 {
            return Err(Error::Degenerate(format!("{label}: F is empty")));
        }
        if size == slice.len() {
            return Err(Error::Degenerate(format!("{label}: F is all of E")));
        }
        Ok(Self {
            slice,
            label,
            solutions,
            target,
            regions,
            satisfies: Arc::new(satisfies),
            cnf: None,
            logogram: Arc::new(OnceLock::new()),
        })
    }

    pub(crate) fn with_cnf(mut self, shape: CnfShape) -> Self {
        self.cnf = Some(shape);
        self
    }

    pub fn slice(&self) -> &Slice {
        &self.slice
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Number of solutions relevant at this size.
    pub fn alpha(&self) -> usize {
        self.solutions.len()
    }

    pub fn solutions(&self) -> &[String] {
        &self.solutions
    }

    /// The CNF shape when this is a SAT slice.
    pub fn cnf_shape(&self) -> Option<CnfShape> {
        self.cnf
    }

    pub fn in_target(&self, x: &Word) -> bool {
        self.slice.contains(x) && self.target[self.slice.index_of(x)]
    }

    /// `x` is satisfied by solution `y_{i+1}`.
    pub fn satisfies(&self, x: &Word, i: usize) -> bool {
        (self.satisfies)(x, i)
    }

    pub fn target_set(&self) -> WordSet {
        self.slice.set_of(&self.target)
    }

    pub fn region_set(&self, i: usize) -> WordSet {
        self.slice.set_of(&self.regions[i])
    }

    pub(crate) fn target_mask(&self) -> &[bool] {
        &self.target
    }

    pub(crate) fn region_mask(&self, i: usize) -> &[bool] {
        &self.regions[i]
    }

    /// `|Log_E(F)|`, computed on first use and cached.
    pub fn logogram(&self, budget: &Budget) -> Result<Antichain> {
        if let Some(log) = self.logogram.get() {
            return Ok(log.clone());
        }
        let log = reduced_logogram_mask(&self.target, &self.slice, budget)?;
        Ok(self.logogram.get_or_init(|| log).clone())
    }

    /// `|Log_E(F_i)|` for region `i` (0-based).
    pub fn region_logogram(&self, i: usize, budget: &Budget) -> Result<Antichain> {
        reduced_logogram_mask(&self.regions[i], &self.slice, budget)
    }

    /// Table-driven copy of this problem.
    pub fn to_descriptor(&self) -> ProblemDescriptor {
        let render = |mask: &[bool]| -> Vec<String> {
            self.slice
                .set_of(mask)
                .iter()
                .map(|w| w.render(self.slice.alphabet()))
                .collect()
        };
        let e = if self.slice.is_full() {
            WordList::All("all".into())
        } else {
            WordList::Words(self.slice.words().map(|w| w.render(self.slice.alphabet())).collect())
        };
        ProblemDescriptor {
            label: Some(self.label.clone()),
            alphabet: self.slice.alphabet().clone(),
            length: self.slice.length(),
            e,
            f: render(&self.target),
            regions: self
                .solutions
                .iter()
                .zip(&self.regions)
                .map(|(s, mask)| RegionDescriptor {
                    solution: s.clone(),
                    words: render(mask),
                })
                .collect(),
        }
    }
}

/// Problem selector in text form: `sat N M`, `composite W`,
/// `connectivity V` (also accepted with `:` separators).
pub fn problem_from_selector(selector: &str) -> Result<ProblemSlice> {
    let parts: Vec<&str> = selector
        .split(|c: char| c.is_whitespace() || c == ':')
        .filter(|s| !s.is_empty())
        .collect();
    let num = |s: &str| -> Result<usize> {
        s.parse()
            .map_err(|_| Error::Validation(format!("`{s}` is not a count in `{selector}`")))
    };
    match parts.as_slice() {
        ["sat", n, m] => sat_problem(CnfShape::new(num(n)?, num(m)?)?),
        ["composite", w] => composite_problem(num(w)?),
        ["connectivity", v] => connectivity_problem(num(v)?),
        _ => Err(Error::Validation(format!("unknown problem selector `{selector}`"))),
    }
}

/// Resolves every membership form of a slice descriptor, including adapter
/// references.
pub fn slice_from_descriptor(desc: &SliceDescriptor) -> Result<Slice> {
    match &desc.membership {
        Membership::Adapter { adapter } => {
            let problem = problem_from_selector(adapter)?;
            let slice = problem.slice().clone();
            if slice.alphabet() != &desc.alphabet || slice.length() != desc.length {
                return Err(Error::Validation(format!(
                    "adapter `{adapter}` does not match the declared alphabet and length"
                )));
            }
            Ok(match &desc.label {
                Some(l) => slice.relabel(l.clone()),
                None => slice,
            })
        }
        _ => Slice::from_descriptor(desc),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::string::Alphabet;

    #[test]
    fn constructor_rejects_uncovered_words() {
        let s = Slice::full(Alphabet::binary(), 2).unwrap();
        let err = ProblemSlice::new(
            s,
            "bad",
            |w| w.letters().iter().all(|l| l.0 == 1),
            vec!["y1".into()],
            |_, _| false,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Validation(_)));
    }

    #[test]
    fn constructor_rejects_degenerate_targets() {
        let s = Slice::full(Alphabet::binary(), 2).unwrap();
        let err = ProblemSlice::new(s.clone(), "none", |_| false, vec![], |_, _| false).unwrap_err();
        assert!(matches!(err, Error::Degenerate(_)));
        let err = ProblemSlice::new(s, "all", |_| true, vec!["y".into()], |_, _| true).unwrap_err();
        assert!(matches!(err, Error::Degenerate(_)));
    }

    #[test]
    fn selectors() {
        assert_eq!(problem_from_selector("sat 2 1").unwrap().alpha(), 4);
        assert_eq!(problem_from_selector("composite:4").unwrap().slice().length(), 4);
        assert_eq!(problem_from_selector("connectivity 3").unwrap().alpha(), 3);
        assert!(problem_from_selector("sat 2").is_err());
        assert!(problem_from_selector("sat x 1").is_err());
    }

    #[test]
    fn adapter_slice_descriptor() {
        let d: SliceDescriptor = serde_json::from_str(
            r#"{"alphabet":["0","1","2"],"length":2,"membership":{"adapter":"sat 2 1"}}"#,
        )
        .unwrap();
        assert_eq!(slice_from_descriptor(&d).unwrap().len(), 9);
        let d: SliceDescriptor = serde_json::from_str(
            r#"{"alphabet":["0","1"],"length":2,"membership":{"adapter":"sat 2 1"}}"#,
        )
        .unwrap();
        assert!(slice_from_descriptor(&d).is_err());
    }
}
