//! Decision programs as sequences of position probes, and their kernels.
//!
//! A program sees an input only through the letters at the positions it has
//! probed. Its kernel is the set of reduced-logogram strings that appear
//! inside the probed restriction of some accepted input.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::logogram::{decides_target, in_logogram_mask, Antichain};
use crate::problems::{CnfShape, ProblemSlice};
use crate::string::{Letter, PartialString};
use crate::universe::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Probe {
    pub position: usize,
    pub letter: Letter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Accept,
    Reject,
    Discard,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Probe(usize),
    Decide(Outcome),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeTrace {
    pub probes: Vec<Probe>,
    pub outcome: Outcome,
}

impl ProbeTrace {
    /// The input restricted to the probed positions.
    pub fn restriction(&self) -> PartialString {
        PartialString::from_pairs(self.probes.iter().map(|p| (p.position, p.letter)))
            .expect("probed positions are distinct")
    }
}

/// A deterministic program. `step` receives everything observed so far and
/// returns the next position to read or a verdict.
pub trait DecisionProgram: Sync {
    fn name(&self) -> &str;
    fn step(&self, observed: &[Probe]) -> Step;
}

/// Replays a program body against the observed letters. A read of a position
/// not yet observed suspends the body and becomes the next probe.
struct Replay<'a> {
    observed: &'a [Probe],
}

struct Unread(usize);

impl Replay<'_> {
    fn read(&self, position: usize) -> Result<Letter, Unread> {
        self.observed
            .iter()
            .find(|p| p.position == position)
            .map(|p| p.letter)
            .ok_or(Unread(position))
    }
}

fn replay(observed: &[Probe], body: impl FnOnce(&Replay) -> Result<Outcome, Unread>) -> Step {
    match body(&Replay { observed }) {
        Ok(outcome) => Step::Decide(outcome),
        Err(Unread(position)) => Step::Probe(position),
    }
}

fn literal_holds(shape: &CnfShape, letter: Letter, var: usize, i: usize) -> bool {
    crate::problems::literal_true(shape, letter, var, i)
}

/// Checks assignment `i` clause by clause, each clause left to right until a
/// true literal turns up.
fn assignment_satisfies(shape: &CnfShape, r: &Replay, i: usize) -> Result<bool, Unread> {
    for c in 0..shape.m {
        let mut satisfied = false;
        for v in 1..=shape.n {
            if literal_holds(shape, r.read(shape.position(c, v))?, v, i) {
                satisfied = true;
                break;
            }
        }
        if !satisfied {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Tries assignments `y_1, y_2, ...` in turn.
pub struct ForwardScan {
    shape: CnfShape,
}

impl ForwardScan {
    pub fn new(shape: CnfShape) -> Self {
        Self { shape }
    }
}

impl DecisionProgram for ForwardScan {
    fn name(&self) -> &str {
        "forward-scan"
    }

    fn step(&self, observed: &[Probe]) -> Step {
        replay(observed, |r| {
            for i in 0..self.shape.assignment_count() {
                if assignment_satisfies(&self.shape, r, i)? {
                    return Ok(Outcome::Accept);
                }
            }
            Ok(Outcome::Reject)
        })
    }
}

/// Tries assignments from the last one down.
pub struct BackwardScan {
    shape: CnfShape,
}

impl BackwardScan {
    pub fn new(shape: CnfShape) -> Self {
        Self { shape }
    }
}

impl DecisionProgram for BackwardScan {
    fn name(&self) -> &str {
        "backward-scan"
    }

    fn step(&self, observed: &[Probe]) -> Step {
        replay(observed, |r| {
            for i in (0..self.shape.assignment_count()).rev() {
                if assignment_satisfies(&self.shape, r, i)? {
                    return Ok(Outcome::Accept);
                }
            }
            Ok(Outcome::Reject)
        })
    }
}

/// Reads whole clauses in order and keeps the assignments that satisfy all
/// clauses read so far.
pub struct ClauseFirstScan {
    shape: CnfShape,
}

impl ClauseFirstScan {
    pub fn new(shape: CnfShape) -> Self {
        Self { shape }
    }
}

impl DecisionProgram for ClauseFirstScan {
    fn name(&self) -> &str {
        "clause-first"
    }

    fn step(&self, observed: &[Probe]) -> Step {
        let shape = &self.shape;
        replay(observed, |r| {
            let mut viable: Vec<usize> = (0..shape.assignment_count()).collect();
            for c in 0..shape.m {
                let block = (1..=shape.n)
                    .map(|v| r.read(shape.position(c, v)))
                    .collect::<Result<Vec<Letter>, Unread>>()?;
                viable.retain(|&i| {
                    block
                        .iter()
                        .enumerate()
                        .any(|(k, &l)| literal_holds(shape, l, k + 1, i))
                });
                if viable.is_empty() {
                    return Ok(Outcome::Reject);
                }
            }
            Ok(Outcome::Accept)
        })
    }
}

/// Looks for the strings of `|Log_E(F)|` one at a time in canonical order,
/// reading their positions left to right. Works for any problem.
pub struct CertificateScan {
    certificates: Vec<PartialString>,
}

impl CertificateScan {
    pub fn new(problem: &ProblemSlice, budget: &Budget) -> Result<Self> {
        Ok(Self {
            certificates: problem.logogram(budget)?.as_slice().to_vec(),
        })
    }
}

impl DecisionProgram for CertificateScan {
    fn name(&self) -> &str {
        "certificate-scan"
    }

    fn step(&self, observed: &[Probe]) -> Step {
        replay(observed, |r| {
            'next: for g in &self.certificates {
                for (p, l) in g.iter() {
                    if r.read(p)? != l {
                        continue 'next;
                    }
                }
                return Ok(Outcome::Accept);
            }
            Ok(Outcome::Reject)
        })
    }
}

/// Accepts without looking. Incorrect on every nontrivial problem.
pub struct ConstantAccept;

impl DecisionProgram for ConstantAccept {
    fn name(&self) -> &str {
        "constant-accept"
    }

    fn step(&self, _observed: &[Probe]) -> Step {
        Step::Decide(Outcome::Accept)
    }
}

/// The built-in programs applicable to `problem`: the three SAT scans on SAT
/// slices, and the certificate scan everywhere.
pub fn builtin_programs(problem: &ProblemSlice, budget: &Budget) -> Result<Vec<Box<dyn DecisionProgram>>> {
    let mut programs: Vec<Box<dyn DecisionProgram>> = Vec::new();
    if let Some(shape) = problem.cnf_shape() {
        programs.push(Box::new(ForwardScan::new(shape)));
        programs.push(Box::new(BackwardScan::new(shape)));
        programs.push(Box::new(ClauseFirstScan::new(shape)));
    }
    programs.push(Box::new(CertificateScan::new(problem, budget)?));
    Ok(programs)
}

/// Runs `program` on `x`, recording every probe.
pub fn run_traced(program: &dyn DecisionProgram, x: &Word, problem: &ProblemSlice) -> Result<ProbeTrace> {
    let length = problem.slice().length();
    let malformed = |reason: String| Error::MalformedProgram {
        program: program.name().to_string(),
        reason,
    };
    if x.len() != length {
        return Err(Error::Domain(format!("input has length {}, expected {length}", x.len())));
    }
    let mut probes: Vec<Probe> = Vec::new();
    loop {
        match program.step(&probes) {
            Step::Decide(outcome) => return Ok(ProbeTrace { probes, outcome }),
            Step::Probe(position) => {
                if !(1..=length).contains(&position) {
                    return Err(malformed(format!("probed position {position} outside 1..={length}")));
                }
                if probes.iter().any(|p| p.position == position) {
                    return Err(malformed(format!("probed position {position} twice")));
                }
                if probes.len() == length {
                    return Err(malformed(format!("more than {length} probes")));
                }
                probes.push(Probe {
                    position,
                    letter: x.at(position),
                });
            }
        }
    }
}

/// Whether the verdict follows from the probed letters alone.
pub fn justified(trace: &ProbeTrace, x: &Word, problem: &ProblemSlice) -> bool {
    let slice = problem.slice();
    if trace.probes.iter().any(|p| x.at(p.position) != p.letter) {
        return false;
    }
    let r = trace.restriction();
    match trace.outcome {
        Outcome::Accept => in_logogram_mask(&r, problem.target_mask(), slice),
        Outcome::Reject => !slice.member_extensions(&r).any(|i| problem.target_mask()[i]),
        Outcome::Discard => !slice.contains(x),
    }
}

/// Whether the verdict is the right answer for `x`.
pub fn correct(trace: &ProbeTrace, x: &Word, problem: &ProblemSlice) -> bool {
    let expected = if problem.in_target(x) {
        Outcome::Accept
    } else {
        Outcome::Reject
    };
    trace.outcome == expected
}

/// Strings of `log` included in the probed restriction.
pub fn certifying_strings(trace: &ProbeTrace, log: &Antichain) -> Vec<PartialString> {
    if trace.outcome != Outcome::Accept {
        return Vec::new();
    }
    let r = trace.restriction();
    log.iter().filter(|g| r.extends(g)).cloned().collect()
}

/// One JSON-lines record of a traced run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceRecord {
    pub program: String,
    pub input: String,
    pub probes: Vec<(usize, char)>,
    pub verdict: Outcome,
    pub correct: bool,
    pub justified: bool,
    pub certifying_strings: Vec<String>,
}

/// Traces `program` on every word of `E`, in word order.
pub fn trace_all(program: &dyn DecisionProgram, problem: &ProblemSlice, budget: &Budget) -> Result<Vec<TraceRecord>> {
    let log = problem.logogram(budget)?;
    let slice = problem.slice();
    let alphabet = slice.alphabet();
    let words: Vec<Word> = slice.words().collect();
    words
        .par_iter()
        .map(|x| {
            let trace = run_traced(program, x, problem)?;
            Ok(TraceRecord {
                program: program.name().to_string(),
                input: x.render(alphabet),
                probes: trace
                    .probes
                    .iter()
                    .map(|p| (p.position, alphabet.symbol(p.letter)))
                    .collect(),
                verdict: trace.outcome,
                correct: correct(&trace, x, problem),
                justified: justified(&trace, x, problem),
                certifying_strings: certifying_strings(&trace, &log)
                    .iter()
                    .map(|g| slice.render(g))
                    .collect(),
            })
        })
        .collect()
}

/// `Ker(P)`. Fails on the first input (in word order) where the program is
/// wrong or its verdict is not justified by what it read.
pub fn kernel(program: &dyn DecisionProgram, problem: &ProblemSlice, budget: &Budget) -> Result<Antichain> {
    let log = problem.logogram(budget)?;
    let slice = problem.slice();
    let words: Vec<Word> = slice.words().collect();
    let per_word: Vec<Result<Vec<PartialString>>> = words
        .par_iter()
        .map(|x| {
            let trace = run_traced(program, x, problem)?;
            let fault = if !correct(&trace, x, problem) {
                Some("incorrect")
            } else if !justified(&trace, x, problem) {
                Some("unjustified")
            } else {
                None
            };
            if let Some(fault) = fault {
                return Err(Error::IncorrectProgram {
                    program: program.name().to_string(),
                    input: x.render(slice.alphabet()),
                    problem: format!("{fault} for {}", problem.label()),
                });
            }
            Ok(certifying_strings(&trace, &log))
        })
        .collect();
    let mut used = BTreeSet::new();
    for strings in per_word {
        used.extend(strings?);
    }
    Antichain::new(used, slice)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProgramKernel {
    pub program: String,
    pub kernel: Vec<String>,
    pub size: usize,
    pub complete: bool,
    pub equals_logogram: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KernelComparison {
    pub problem: String,
    pub logogram_size: usize,
    /// Whether `|Log_E(F)|` is irreducible.
    pub irreducible: bool,
    pub programs: Vec<ProgramKernel>,
    pub all_equal: bool,
}

/// Kernels of several programs side by side.
pub fn compare_kernels(
    programs: &[&dyn DecisionProgram],
    problem: &ProblemSlice,
    budget: &Budget,
) -> Result<KernelComparison> {
    let log = problem.logogram(budget)?;
    let irreducible = crate::logogram::is_irreducible(log.as_slice(), problem)?.irreducible;
    let mut kernels = Vec::with_capacity(programs.len());
    let mut rows = Vec::with_capacity(programs.len());
    for p in programs {
        let k = kernel(*p, problem, budget)?;
        rows.push(ProgramKernel {
            program: p.name().to_string(),
            kernel: k.iter().map(|g| problem.slice().render(g)).collect(),
            size: k.len(),
            complete: decides_target(k.as_slice(), problem),
            equals_logogram: k == log,
        });
        kernels.push(k);
    }
    let all_equal = kernels.windows(2).all(|w| w[0] == w[1]);
    Ok(KernelComparison {
        problem: problem.label().to_string(),
        logogram_size: log.len(),
        irreducible,
        programs: rows,
        all_equal,
    })
}
