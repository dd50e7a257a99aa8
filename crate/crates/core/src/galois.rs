//! Seeded property checks of the expansion/logogram Galois connection.
//!
//! `α` sends a string set `H` to `E^H`, `β` sends a word set `A` to
//! `Log_E(A)`. `H ⊑^E K` is read as "`K` entangles `H`". Since logograms are
//! upward closed, every statement about `Log_E(A)` as a string set is checked
//! through its minimal elements: a word includes a string of `Log_E(A)` iff it
//! includes one of `|Log_E(A)|`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::independence::Verdict;
use crate::logogram::{in_logogram_mask, reduced_logogram_mask, Antichain};
use crate::string::PartialString;
use crate::universe::{expand_mask, Slice};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaloisCheck {
    pub eq: String,
    pub samples: u64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaloisReport {
    pub slice: String,
    pub seed: u64,
    pub checks: Vec<GaloisCheck>,
}

impl GaloisReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.verdict.passed())
    }
}

/// Names of the checks, in report order.
pub const CHECKS: [&str; 11] = [
    "entangled sets: K entangles H => E^K ⊆ E^H",
    "monotone: A ⊆ B => Log(A) ⊆ Log(B)",
    "unit: H^{αβ} entangles H",
    "extensive: A ⊆ A^{βα}",
    "inflationary: H ⊆ H^{αβ}",
    "stable expansion: H^α = H^{αβα}",
    "stable logogram: A^β = A^{βαβ}",
    "word closure: idempotent and monotone",
    "string closure: idempotent",
    "isoexpansive: H ≡ H^{αβ}",
    "void string: {⊥}^α = E",
];

struct Tally {
    samples: u64,
    counterexample: Option<String>,
}

impl Tally {
    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.samples += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(describe());
        }
    }
}

struct Sampler<'a> {
    slice: &'a Slice,
    rng: ChaCha8Rng,
    members: Vec<usize>,
}

impl Sampler<'_> {
    /// A random restriction of a random word of `E`, so always in `Σ∞(E)`.
    fn string(&mut self) -> PartialString {
        let idx = *self.members.choose(&mut self.rng).expect("E is nonempty");
        let word = self.slice.word_at(idx);
        let keep = self.rng.gen_range(0.0..1.0);
        let positions: Vec<usize> = (1..=self.slice.length())
            .filter(|_| self.rng.gen_bool(keep))
            .collect();
        word.restrict(positions)
    }

    fn string_set(&mut self) -> Vec<PartialString> {
        let n = self.rng.gen_range(0..=3);
        let mut h: Vec<PartialString> = (0..n).map(|_| self.string()).collect();
        h.sort();
        h.dedup();
        h
    }

    /// A random extension of `g` inside `Σ∞(E)`.
    fn extension(&mut self, g: &PartialString) -> PartialString {
        let candidates: Vec<usize> = self.slice.member_extensions(g).collect();
        let idx = *candidates.choose(&mut self.rng).expect("g is in Σ∞(E)");
        let word = self.slice.word_at(idx);
        let extra: Vec<usize> = (1..=self.slice.length())
            .filter(|&p| g.get(p).is_some() || self.rng.gen_bool(0.5))
            .collect();
        word.restrict(extra)
    }

    fn word_mask(&mut self) -> Vec<bool> {
        let density = self.rng.gen_range(0.0..1.0);
        let mut mask = vec![false; self.slice.space()];
        for &i in &self.members {
            mask[i] = self.rng.gen_bool(density);
        }
        mask
    }

    fn superset(&mut self, a: &[bool]) -> Vec<bool> {
        let density = self.rng.gen_range(0.0..1.0);
        let mut b = a.to_vec();
        for &i in &self.members {
            if !b[i] {
                b[i] = self.rng.gen_bool(density);
            }
        }
        b
    }
}

fn subset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(&x, &y)| !x || y)
}

/// Runs every check on `sample_count` seeded samples. Each sample is charged
/// to the budget once; running out is an error.
pub fn verify_galois(slice: &Slice, sample_count: u64, seed: u64, budget: &Budget) -> Result<GaloisReport> {
    let meter = budget.meter();
    let mut sampler = Sampler {
        slice,
        rng: ChaCha8Rng::seed_from_u64(seed),
        members: slice.member_indices().collect(),
    };
    let mut tallies: Vec<Tally> = CHECKS
        .iter()
        .map(|_| Tally {
            samples: 0,
            counterexample: None,
        })
        .collect();
    let show_set = |h: &[PartialString]| -> String {
        let parts: Vec<String> = h.iter().map(|g| slice.render(g)).collect();
        format!("{{{}}}", parts.join(", "))
    };
    let show_words = |mask: &[bool]| -> String {
        let parts: Vec<String> = slice
            .set_of(mask)
            .iter()
            .map(|w| w.render(slice.alphabet()))
            .collect();
        format!("{{{}}}", parts.join(", "))
    };
    let log = |a: &[bool]| -> Result<Antichain> { reduced_logogram_mask(a, slice, budget) };
    let all_e = slice.members().to_vec();

    let void_expansion = expand_mask([&PartialString::void()], slice);
    tallies[10].record(void_expansion == all_e, || "E^{⊥} differs from E".into());

    for _ in 0..sample_count {
        meter.charge(1).map_err(|_| Error::BudgetExhausted {
            candidates: meter.used(),
            level: 0,
            frontier: Vec::new(),
        })?;

        // K is built from extensions of H, so K entangles H by construction.
        let h = sampler.string_set();
        let mut k: Vec<PartialString> = h.iter().map(|g| sampler.extension(g)).collect();
        k.sort();
        k.dedup();
        let eh = expand_mask(&h, slice);
        let ek = expand_mask(&k, slice);
        tallies[0].record(subset(&ek, &eh), || {
            format!("H={} K={}", show_set(&h), show_set(&k))
        });

        let a = sampler.word_mask();
        let b = sampler.superset(&a);
        let log_a = log(&a)?;
        let log_b = log(&b)?;
        let inside = log_a.iter().all(|g| in_logogram_mask(g, &b, slice));
        let ea = expand_mask(log_a.iter(), slice);
        let eb = expand_mask(log_b.iter(), slice);
        tallies[1].record(inside && subset(&ea, &eb), || {
            format!("A={} B={}", show_words(&a), show_words(&b))
        });

        let log_eh = log(&eh)?;
        let e_ab = expand_mask(log_eh.iter(), slice);
        tallies[2].record(subset(&e_ab, &eh), || format!("H={}", show_set(&h)));
        tallies[4].record(
            h.iter().all(|g| in_logogram_mask(g, &eh, slice)),
            || format!("H={}", show_set(&h)),
        );
        tallies[5].record(e_ab == eh, || format!("H={}", show_set(&h)));
        tallies[9].record(e_ab == eh, || format!("H={}", show_set(&h)));
        let g = sampler.string();
        tallies[8].record(
            in_logogram_mask(&g, &e_ab, slice) == in_logogram_mask(&g, &eh, slice),
            || format!("H={} g={}", show_set(&h), slice.render(&g)),
        );

        // A -> A^{βα}
        let closure_a = expand_mask(log_a.iter(), slice);
        tallies[3].record(subset(&a, &closure_a), || format!("A={}", show_words(&a)));
        let log_closure = log(&closure_a)?;
        tallies[6].record(log_closure == log_a, || format!("A={}", show_words(&a)));
        let closure_b = expand_mask(log_b.iter(), slice);
        let closure_closure = expand_mask(log_closure.iter(), slice);
        tallies[7].record(
            closure_closure == closure_a && subset(&closure_a, &closure_b),
            || format!("A={} B={}", show_words(&a), show_words(&b)),
        );
    }

    let checks = CHECKS
        .iter()
        .zip(tallies)
        .map(|(eq, t)| GaloisCheck {
            eq: eq.to_string(),
            samples: t.samples,
            verdict: Verdict::from_bool(t.counterexample.is_none()),
            counterexample: t.counterexample,
        })
        .collect();
    Ok(GaloisReport {
        slice: slice.label().to_string(),
        seed,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::string::Alphabet;

    #[test]
    fn passes_on_small_slices() {
        let slices = [
            Slice::full(Alphabet::binary(), 3).unwrap(),
            Slice::full(Alphabet::ternary(), 2).unwrap(),
            Slice::from_words(Alphabet::binary(), 2, "twins", &["11", "00"]).unwrap(),
        ];
        for s in &slices {
            let r = verify_galois(s, 200, 7, &Budget::default()).unwrap();
            assert!(r.passed(), "{r:?}");
            assert!(r.checks.iter().all(|c| c.samples > 0));
        }
    }

    #[test]
    fn seeded_runs_are_reproducible() {
        let s = Slice::full(Alphabet::binary(), 3).unwrap();
        let a = verify_galois(&s, 50, 42, &Budget::default()).unwrap();
        let b = verify_galois(&s, 50, 42, &Budget::default()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let s = Slice::full(Alphabet::binary(), 2).unwrap();
        assert!(verify_galois(&s, 10, 1, &Budget::candidates(3)).is_err());
    }
}
