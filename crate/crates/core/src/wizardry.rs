//! Witness/wizard classification and the cover of a target set.
//!
//! A string of `|Log_E(F)|` is a witness for region `F_i` when its expansion
//! lies inside `F_i`, and a wizard when it lies in no region even though it
//! lies in `F`. Minimal strings of `Log_E(F)` that lie in some `Log_E(F_i)`
//! are minimal there as well, so the classification is done on minimal
//! strings only.

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::Result;
use crate::logogram::{decides_target, in_logogram_mask};
use crate::problems::ProblemSlice;
use crate::string::PartialString;
use crate::universe::expand_mask;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedString {
    pub string: PartialString,
    /// 0-based region indices `i` with the string in `Log_E(F_i)`.
    pub witness_regions: Vec<usize>,
    pub is_wizard: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassifiedLogogram {
    pub entries: Vec<ClassifiedString>,
}

impl ClassifiedLogogram {
    pub fn wizards(&self) -> impl Iterator<Item = &PartialString> {
        self.entries.iter().filter(|e| e.is_wizard).map(|e| &e.string)
    }

    pub fn wizard_count(&self) -> usize {
        self.entries.iter().filter(|e| e.is_wizard).count()
    }
}

fn containing_regions(g: &PartialString, problem: &ProblemSlice) -> Vec<usize> {
    (0..problem.alpha())
        .filter(|&i| in_logogram_mask(g, problem.region_mask(i), problem.slice()))
        .collect()
}

pub fn classify(problem: &ProblemSlice, budget: &Budget) -> Result<ClassifiedLogogram> {
    let log = problem.logogram(budget)?;
    let entries = log
        .as_slice()
        .par_iter()
        .map(|g| {
            let witness_regions = containing_regions(g, problem);
            ClassifiedString {
                string: g.clone(),
                is_wizard: witness_regions.is_empty(),
                witness_regions,
            }
        })
        .collect();
    Ok(ClassifiedLogogram { entries })
}

/// Whether the union of the region logograms decides `F` within `E`.
///
/// When wizards exist the union need not lie inside `|Log_E(F)|`: a minimal
/// string of some `Log_E(F_i)` can properly extend a wizard. So the check is
/// the decision property itself rather than completeness of a subset.
pub fn witness_union_complete(problem: &ProblemSlice, budget: &Budget) -> Result<bool> {
    let mut union: Vec<PartialString> = Vec::new();
    for i in 0..problem.alpha() {
        if problem.region_mask(i).iter().any(|&b| b) {
            union.extend(problem.region_logogram(i, budget)?.iter().cloned());
        }
    }
    union.sort();
    union.dedup();
    Ok(decides_target(&union, problem))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Chart {
    pub string: String,
    pub expansion_size: usize,
    pub containing_regions: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverFlags {
    /// Some chart lies inside more than one region.
    pub multiple_containment: bool,
    pub max_containing_regions: usize,
    /// Fewer charts than regions.
    pub fewer_charts_than_regions: bool,
    /// Every nonempty region includes at least one whole chart.
    pub every_region_has_chart: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub problem: String,
    pub charts: Vec<Chart>,
    pub total_charts: usize,
    pub region_count: usize,
    /// Charts wholly inside each region, by region.
    pub region_charts: Vec<usize>,
    pub flags: CoverFlags,
}

pub fn cover(problem: &ProblemSlice, budget: &Budget) -> Result<CoverReport> {
    let log = problem.logogram(budget)?;
    let slice = problem.slice();
    let rows: Vec<(Chart, Vec<usize>)> = log
        .as_slice()
        .par_iter()
        .map(|g| {
            let expansion_size = slice.member_extensions(g).count();
            let regions = containing_regions(g, problem);
            let chart = Chart {
                string: slice.render(g),
                expansion_size,
                containing_regions: regions.len(),
            };
            (chart, regions)
        })
        .collect();
    let mut region_charts = vec![0; problem.alpha()];
    for (_, regions) in &rows {
        for &i in regions {
            region_charts[i] += 1;
        }
    }
    let every_region_has_chart = (0..problem.alpha())
        .filter(|&i| problem.region_mask(i).iter().any(|&b| b))
        .all(|i| region_charts[i] > 0);
    let charts: Vec<Chart> = rows.into_iter().map(|(c, _)| c).collect();
    let max_containing_regions = charts.iter().map(|c| c.containing_regions).max().unwrap_or(0);
    let flags = CoverFlags {
        multiple_containment: max_containing_regions > 1,
        max_containing_regions,
        fewer_charts_than_regions: charts.len() < problem.alpha(),
        every_region_has_chart,
    };
    Ok(CoverReport {
        problem: problem.label().to_string(),
        total_charts: charts.len(),
        region_count: problem.alpha(),
        charts,
        region_charts,
        flags,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessJson {
    pub string: String,
    /// Solution labels of the regions.
    pub regions: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WizardReport {
    pub problem: String,
    pub logogram_size: usize,
    pub wizards: Vec<String>,
    pub witnesses: Vec<WitnessJson>,
    pub cover: Vec<Chart>,
}

/// Classification and cover in one serializable report.
pub fn wizard_report(problem: &ProblemSlice, budget: &Budget) -> Result<WizardReport> {
    let classified = classify(problem, budget)?;
    let cover = cover(problem, budget)?;
    let slice = problem.slice();
    Ok(WizardReport {
        problem: problem.label().to_string(),
        logogram_size: classified.entries.len(),
        wizards: classified.wizards().map(|g| slice.render(g)).collect(),
        witnesses: classified
            .entries
            .iter()
            .filter(|e| !e.is_wizard)
            .map(|e| WitnessJson {
                string: slice.render(&e.string),
                regions: e
                    .witness_regions
                    .iter()
                    .map(|&i| problem.solutions()[i].clone())
                    .collect(),
            })
            .collect(),
        cover: cover.charts,
    })
}

/// Size of the expansion of a string set, for tabulation.
pub fn expansion_size(h: &[PartialString], problem: &ProblemSlice) -> usize {
    expand_mask(h, problem.slice()).iter().filter(|&&b| b).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{composite_problem, generic_problem, sat_problem, CnfShape, ProblemDescriptor};

    fn sat(n: usize, m: usize) -> ProblemSlice {
        sat_problem(CnfShape::new(n, m).unwrap()).unwrap()
    }

    #[test]
    fn sat_has_no_wizards() {
        for (n, m) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let c = classify(&sat(n, m), &Budget::default()).unwrap();
            assert_eq!(c.wizard_count(), 0, "n={n} m={m}");
        }
    }

    #[test]
    fn composite_four_has_wizard() {
        let p = composite_problem(4).unwrap();
        let c = classify(&p, &Budget::default()).unwrap();
        let g = p.slice().parse_string("111_").unwrap();
        let entry = c.entries.iter().find(|e| e.string == g).expect("111_ is minimal");
        assert!(entry.is_wizard);
        assert_eq!(expansion_size(&[g], &p), 2);
        assert!(witness_union_complete(&p, &Budget::default()).unwrap());
    }

    #[test]
    fn witness_union_on_sat() {
        assert!(witness_union_complete(&sat(2, 1), &Budget::default()).unwrap());
    }

    #[test]
    fn cover_counts() {
        let r = cover(&sat(2, 1), &Budget::default()).unwrap();
        assert_eq!(r.total_charts, 4);
        assert!(r.charts.iter().all(|c| c.containing_regions == 2));
        assert!(r.flags.multiple_containment);

        let r = cover(&sat(1, 1), &Budget::default()).unwrap();
        assert_eq!(r.total_charts, 2);
        assert!(r.charts.iter().all(|c| c.containing_regions == 1));
        assert!(!r.flags.multiple_containment);

        let r = cover(&sat(3, 1), &Budget::default()).unwrap();
        assert_eq!((r.total_charts, r.region_count), (6, 8));
        assert!(r.flags.fewer_charts_than_regions);
        assert!(r.flags.every_region_has_chart);
    }

    #[test]
    fn single_region_problem() {
        let d = r#"{"alphabet":["0","1"],"length":2,"e":"all","f":["11","10"],
            "regions":[{"solution":"y","words":["11","10"]}]}"#;
        let p = generic_problem(&ProblemDescriptor::from_json(d).unwrap()).unwrap();
        let c = classify(&p, &Budget::default()).unwrap();
        assert_eq!(c.wizard_count(), 0);
        assert!(witness_union_complete(&p, &Budget::default()).unwrap());
        let r = cover(&p, &Budget::default()).unwrap();
        assert!(r.charts.iter().all(|c| c.containing_regions == 1));
    }

    #[test]
    fn report_json_shape() {
        let p = composite_problem(4).unwrap();
        let r = wizard_report(&p, &Budget::default()).unwrap();
        assert!(r.wizards.contains(&"111_".to_string()));
        let v = serde_json::to_value(&r).unwrap();
        for key in ["problem", "logogram_size", "wizards", "witnesses", "cover"] {
            assert!(v.get(key).is_some(), "{key}");
        }
    }
}
