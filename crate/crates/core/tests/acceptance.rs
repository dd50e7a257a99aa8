//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use logogram_core::galois::verify_galois;
use logogram_core::independence::strong_independence;
use logogram_core::kernel::{compare_kernels, BackwardScan, ClauseFirstScan, DecisionProgram, ForwardScan};
use logogram_core::problems::{
    composite_problem, connectivity_problem, gamma, predicted_sat_logogram, sat_problem, CnfShape,
};
use logogram_core::wizardry::{classify, cover, witness_union_complete};
use logogram_core::{
    closure_ba, entangles, expand, in_logogram, is_irreducible, reduced_logogram, Alphabet, Budget,
    PartialString, ProblemSlice, Slice, Word, WordSet,
};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sat(n: usize, m: usize) -> ProblemSlice {
    sat_problem(CnfShape::new(n, m).unwrap()).unwrap()
}

fn rendered(slice: &Slice, strings: impl IntoIterator<Item = PartialString>) -> BTreeSet<String> {
    strings.into_iter().map(|g| slice.render(&g)).collect()
}

/// SAT shapes with `n, m <= 3`.
fn small_sat_shapes() -> Vec<(usize, usize)> {
    (1..=3).flat_map(|n| (1..=3).map(move |m| (n, m))).collect()
}

fn random_subset(slice: &Slice, rng: &mut ChaCha8Rng, density: f64) -> WordSet {
    slice.words().filter(|_| rng.gen_bool(density)).collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let budget = Budget::default();
    let mut slices = 0;
    let mut compare = |slice: &Slice, a: &WordSet, what: &str| -> Result<usize, String> {
        let got = reduced_logogram(a, slice, &budget).map_err(|e| format!("{what}: {e}"))?;
        let got = rendered(slice, got.iter().cloned());
        let want = common::reduced_logogram(slice, a);
        check(got == want, || format!("{what}: search {got:?} != oracle {want:?}"))?;
        slices += 1;
        Ok(got.len())
    };

    for n in 1..=8usize {
        for m in 1..=8usize {
            if 4u64.checked_pow((n * m) as u32).is_none_or(|s| s > 100_000) {
                continue;
            }
            let p = sat(n, m);
            let count = compare(p.slice(), &p.target_set(), &format!("sat {n} {m}"))?;
            let predicted = predicted_sat_logogram(CnfShape::new(n, m).unwrap()).unwrap();
            let predicted = rendered(p.slice(), predicted.iter().cloned());
            check(predicted == common::reduced_logogram(p.slice(), &p.target_set()), || {
                format!("sat {n} {m}: closed form disagrees")
            })?;
            check(count as u64 == common::sat_selection_count(n, m), || {
                format!("sat {n} {m}: {count} strings, selection count differs")
            })?;
        }
    }
    let expected = [((1, 1), 2), ((2, 1), 4), ((1, 2), 2), ((2, 2), 12), ((2, 3), 28), ((3, 2), 30)];
    for ((n, m), want) in expected {
        let p = sat(n, m);
        let got = p.logogram(&budget).map_err(|e| e.to_string())?.len();
        check(got == want, || format!("sat {n} {m}: {got} strings, expected {want}"))?;
    }
    for w in 3..=10 {
        let p = composite_problem(w).map_err(|e| e.to_string())?;
        compare(p.slice(), &p.target_set(), &format!("composite {w}"))?;
    }
    for v in 3..=5 {
        let p = connectivity_problem(v).map_err(|e| e.to_string())?;
        compare(p.slice(), &p.target_set(), &format!("connectivity {v}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for (k, l) in [(2u8, 3usize), (2, 5), (2, 8), (3, 3), (3, 5), (4, 4), (5, 3)] {
        let full = Slice::full(Alphabet::digits(k), l).unwrap();
        for round in 0..4 {
            let e: Vec<String> = full
                .words()
                .filter(|_| round == 0 || rng.gen_bool(0.6))
                .map(|w| w.render(full.alphabet()))
                .collect();
            let refs: Vec<&str> = e.iter().map(String::as_str).collect();
            let slice = Slice::from_words(Alphabet::digits(k), l, "E", &refs).unwrap();
            let density = rng.gen_range(0.1..0.9);
            let a = random_subset(&slice, &mut rng, density);
            compare(&slice, &a, &format!("random k={k} L={l} round {round}"))?;
        }
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("{slices} slices agree with the oracle; SAT counts 2/4/2/12/28/30"))
}

fn sat_shapes_with_extra() -> Vec<(usize, usize)> {
    let mut shapes = small_sat_shapes();
    shapes.push((4, 2));
    shapes
}

fn criterion_2() -> Outcome {
    for (n, m) in sat_shapes_with_extra() {
        let p = sat(n, m);
        let shape = p.cnf_shape().unwrap();
        let r = strong_independence(&p, &Budget::default()).map_err(|e| e.to_string())?;
        check(r.verdict.passed(), || format!("sat {n} {m}: {:?}", r.counterexample))?;
        let log = p.logogram(&Budget::default()).unwrap();
        check(r.separators.len() == log.len(), || format!("sat {n} {m}: separator count"))?;
        for g in log.iter() {
            let w = gamma(g, shape).map_err(|e| e.to_string())?;
            let others = log.iter().filter(|h| *h != g).any(|h| w.includes(h));
            check(w.includes(g) && !others && p.slice().contains(&w), || {
                format!("sat {n} {m}: padded word of {} does not separate", p.slice().render(g))
            })?;
        }
    }
    Ok("strong independence on SAT n,m <= 3 and (4,2); every padded word separates".into())
}

fn criterion_3() -> Outcome {
    for (n, m) in sat_shapes_with_extra() {
        let c = classify(&sat(n, m), &Budget::default()).map_err(|e| e.to_string())?;
        check(c.wizard_count() == 0, || format!("sat {n} {m}: {} wizards", c.wizard_count()))?;
    }
    Ok("zero wizards on SAT n,m <= 3 and (4,2)".into())
}

fn criterion_4() -> Outcome {
    for (n, m) in sat_shapes_with_extra() {
        let p = sat(n, m);
        let shape = p.cnf_shape().unwrap();
        let log = p.logogram(&Budget::default()).unwrap();
        let r = is_irreducible(log.as_slice(), &p).map_err(|e| e.to_string())?;
        check(r.irreducible, || format!("sat {n} {m}: removable {:?}", r.removable))?;
        for g in log.iter() {
            let w = gamma(g, shape).map_err(|e| e.to_string())?;
            let hits: Vec<&PartialString> = log.iter().filter(|h| w.includes(h)).collect();
            check(hits == [g], || {
                format!("sat {n} {m}: gamma of {} hits {}", p.slice().render(g), hits.len())
            })?;
        }
    }
    Ok("reduced logogram irreducible; gamma(g) includes g alone".into())
}

fn criterion_5() -> Outcome {
    let p = composite_problem(4).map_err(|e| e.to_string())?;
    let slice = p.slice();
    let c = classify(&p, &Budget::default()).map_err(|e| e.to_string())?;
    let g = slice.parse_string("111_").unwrap();
    let entry = c
        .entries
        .iter()
        .find(|e| e.string == g)
        .ok_or("111_ is not in the reduced logogram")?;
    check(entry.is_wizard, || "111_ lies in some region logogram".into())?;
    let values: Vec<u64> = expand([&g], slice)
        .iter()
        .map(|w| w.letters().iter().fold(0, |acc, l| acc * 2 + l.0 as u64))
        .collect();
    check(values == [14, 15], || format!("expansion {values:?}"))?;
    // Minimality and wizardhood by plain enumeration over the 16 words.
    let value = |w: &Word| w.letters().iter().fold(0u64, |acc, l| acc * 2 + l.0 as u64);
    let composite = |v: u64| (2..v).any(|d| v.is_multiple_of(d));
    for h in g.immediate_restrictions() {
        let has_prime = slice.words().any(|w| w.includes(&h) && !composite(value(&w)));
        check(has_prime, || format!("{} stays composite", slice.render(&h)))?;
    }
    let shared = (2..16u64).any(|d| values.iter().all(|&v| v != d && v % d == 0));
    check(!shared, || "14 and 15 share a divisor".into())?;
    let wizards: Vec<String> = c.wizards().map(|w| slice.render(w)).collect();
    check(!wizards.is_empty(), || "no wizard".into())?;
    Ok(format!("wizards of composite 4: {}", wizards.join(" ")))
}

fn criterion_6() -> Outcome {
    for (n, m) in small_sat_shapes() {
        let ok = witness_union_complete(&sat(n, m), &Budget::default()).map_err(|e| e.to_string())?;
        check(ok, || format!("sat {n} {m}"))?;
    }
    let p = composite_problem(4).map_err(|e| e.to_string())?;
    check(witness_union_complete(&p, &Budget::default()).map_err(|e| e.to_string())?, || {
        "composite 4".into()
    })?;
    Ok("region logograms together decide F on SAT n,m <= 3 and composite 4".into())
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut slices: Vec<Slice> = Vec::new();
    for l in 1..=6 {
        slices.push(Slice::full(Alphabet::binary(), l).unwrap());
    }
    for l in 1..=4 {
        slices.push(Slice::full(Alphabet::ternary(), l).unwrap());
    }
    slices.push(Slice::full(Alphabet::digits(4), 3).unwrap());
    slices.push(Slice::full(Alphabet::digits(9), 2).unwrap());
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (k, l) in [(2u8, 4usize), (2, 6), (3, 3), (3, 4)] {
        let e: Vec<String> = Slice::full(Alphabet::digits(k), l)
            .unwrap()
            .words()
            .filter(|_| rng.gen_bool(0.5))
            .map(|w| w.render(&Alphabet::digits(k)))
            .collect();
        let refs: Vec<&str> = e.iter().map(String::as_str).collect();
        slices.push(Slice::from_words(Alphabet::digits(k), l, format!("random {k}^{l}"), &refs).unwrap());
    }
    slices.push(sat(2, 2).slice().clone());
    for s in &slices {
        let r = verify_galois(s, 1000, 2024, &Budget::default()).map_err(|e| e.to_string())?;
        for c in &r.checks {
            check(c.verdict.passed(), || {
                format!("{}: {} fails on {:?}", s.label(), c.eq, c.counterexample)
            })?;
        }
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("{} slices x 1000 samples, no counterexample", slices.len()))
}

fn criterion_8() -> Outcome {
    for (n, m) in [(1, 1), (1, 2), (2, 1), (2, 2), (2, 3)] {
        let p = sat(n, m);
        let shape = p.cnf_shape().unwrap();
        let (f, b, c) = (ForwardScan::new(shape), BackwardScan::new(shape), ClauseFirstScan::new(shape));
        let programs: [&dyn DecisionProgram; 3] = [&f, &b, &c];
        let r = compare_kernels(&programs, &p, &Budget::default()).map_err(|e| e.to_string())?;
        check(r.all_equal, || format!("sat {n} {m}: kernels differ"))?;
        for k in &r.programs {
            check(k.complete && k.equals_logogram, || {
                format!("sat {n} {m}: kernel of {} has {} strings", k.program, k.size)
            })?;
        }
    }
    Ok("three scans correct and justified; kernels equal |Log| on SAT n,m <= 2 and (2,3)".into())
}

/// Every partial string over `k` letters and length at most `l`.
fn all_strings(k: u8, l: usize) -> Vec<PartialString> {
    let cube = common::Cube::new(k as usize, l);
    (0..cube.size)
        .map(|c| {
            let pairs = cube
                .digits(c)
                .into_iter()
                .enumerate()
                .filter(|(_, d)| *d > 0)
                .map(|(p, d)| (p + 1, logogram_core::Letter(d as u8 - 1)));
            PartialString::from_pairs(pairs).unwrap()
        })
        .collect()
}

fn lattice_laws() -> Result<u64, String> {
    let mut checked = 0;
    for (k, l) in [(2u8, 3usize), (3, 2)] {
        let strings = all_strings(k, l);
        for f in &strings {
            check(f.meet(f) == *f && f.join(f).unwrap() == *f, || "idempotence".into())?;
            for g in &strings {
                checked += 1;
                let m = f.meet(g);
                check(m == g.meet(f), || "meet commutes".into())?;
                check(f.extends(&m) && g.extends(&m), || "meet is below".into())?;
                check(f.compatible(g) == f.join(g).is_ok(), || "join exactly on compatible".into())?;
                if let Ok(j) = f.join(g) {
                    check(j.extends(f) && j.extends(g), || "join is above".into())?;
                    check(j.meet(f) == *f, || "absorption".into())?;
                }
                check((f.extends(g) && g.extends(f)) == (f == g), || "antisymmetry".into())?;
                check(f.extends(g) == (f.meet(g) == *g), || "order from meet".into())?;
                for h in strings.iter().step_by(3) {
                    check(f.meet(g).meet(h) == f.meet(&g.meet(h)), || "meet associates".into())?;
                    if f.extends(g) && g.extends(h) {
                        check(f.extends(h), || "transitivity".into())?;
                    }
                    if h.extends(f) && h.extends(g) {
                        let j = f.join(g).map_err(|_| "common extension but incompatible")?;
                        check(h.extends(&j), || "join is least".into())?;
                    }
                }
            }
        }
    }
    Ok(checked)
}

fn expansion_laws(rng: &mut ChaCha8Rng) -> Result<u64, String> {
    let mut checked = 0;
    for (k, l) in [(2u8, 3usize), (2, 4), (3, 2)] {
        let full = Slice::full(Alphabet::digits(k), l).unwrap();
        let strings = all_strings(k, l);
        for _ in 0..300 {
            let e: Vec<String> = full
                .words()
                .filter(|_| rng.gen_bool(0.7))
                .map(|w| w.render(full.alphabet()))
                .collect();
            let refs: Vec<&str> = e.iter().map(String::as_str).collect();
            let slice = Slice::from_words(Alphabet::digits(k), l, "E", &refs).unwrap();
            let pick = |rng: &mut ChaCha8Rng| -> Vec<PartialString> {
                let n = rng.gen_range(0..4);
                (0..n).map(|_| strings[rng.gen_range(0..strings.len())].clone()).collect()
            };
            let (h, kk) = (pick(rng), pick(rng));
            checked += 1;
            // union and intersection
            let union: Vec<PartialString> = h.iter().chain(&kk).cloned().collect();
            let eh = expand(&h, &slice);
            let ek = expand(&kk, &slice);
            check(expand(&union, &slice) == eh.union(&ek).cloned().collect(), || "union law".into())?;
            let joins: Vec<PartialString> =
                h.iter().flat_map(|a| kk.iter().filter_map(move |b| a.join(b).ok())).collect();
            check(expand(&joins, &slice) == eh.intersection(&ek).cloned().collect(), || {
                "intersection law".into()
            })?;
            // monotone
            check(expand(&h, &slice).is_subset(&expand(&union, &slice)), || "monotone".into())?;
            // idempotent
            let as_strings: Vec<PartialString> = eh.iter().map(Word::to_partial).collect();
            check(expand(&as_strings, &slice) == eh, || "idempotent".into())?;
            check(expand([&PartialString::void()], &slice) == slice.word_set(), || "void".into())?;
            // Log(A) ∪ Log(B) ⊆ Log(A ∪ B)
            let a = random_subset(&slice, rng, 0.5);
            let b = random_subset(&slice, rng, 0.5);
            let ab: WordSet = a.union(&b).cloned().collect();
            for s in [&a, &b] {
                let log = reduced_logogram(s, &slice, &Budget::default()).map_err(|e| e.to_string())?;
                check(log.iter().all(|g| in_logogram(g, &ab, &slice)), || "logogram union".into())?;
            }
            check(closure_ba(&a, &slice).is_superset(&a), || "closure extensive".into())?;
            // entanglement facts
            for f in &h {
                for g in &kk {
                    let on_e = entangles(std::slice::from_ref(f), std::slice::from_ref(g), &slice);
                    if f.extends(g) {
                        check(on_e, || "restriction is entangled".into())?;
                    }
                    let present = slice.words().any(|w| w.includes(f));
                    if !f.compatible(g) && present {
                        check(!on_e, || "incompatible strings entangled".into())?;
                    }
                    if entangles(std::slice::from_ref(f), std::slice::from_ref(g), &full) {
                        check(on_e, || "absolute entanglement not inherited".into())?;
                    }
                }
            }
            if entangles(&h, &kk, &full) {
                check(entangles(&h, &kk, &slice), || "set entanglement not inherited".into())?;
            }
        }
    }
    Ok(checked)
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let pairs = lattice_laws()?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let samples = expansion_laws(&mut rng)?;
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!("{pairs} string pairs, {samples} seeded samples, no violation"))
}

fn criterion_10() -> Outcome {
    let mut table = Vec::new();
    let mut saw_multiple = false;
    let mut saw_fewer = false;
    for (n, m) in small_sat_shapes() {
        let r = cover(&sat(n, m), &Budget::default()).map_err(|e| e.to_string())?;
        check(r.flags.every_region_has_chart, || format!("sat {n} {m}: empty region"))?;
        let counts: BTreeSet<usize> = r.charts.iter().map(|c| c.containing_regions).collect();
        check(r.flags.multiple_containment == (r.flags.max_containing_regions > 1), || "flag".into())?;
        check(r.flags.fewer_charts_than_regions == (r.total_charts < r.region_count), || "flag".into())?;
        if (n, m) == (2, 1) {
            check(r.total_charts == 4 && counts == BTreeSet::from([2]), || format!("(2,1): {counts:?}"))?;
            saw_multiple = r.flags.multiple_containment;
        }
        if (n, m) == (3, 1) {
            check(r.total_charts == 6 && r.region_count == 8, || "(3,1) sizes".into())?;
            saw_fewer = r.flags.fewer_charts_than_regions;
        }
        table.push(format!("({n},{m}):{}/{}", r.total_charts, r.region_count));
    }
    check(saw_multiple && saw_fewer, || "discrepancies not flagged".into())?;
    Ok(format!("charts/regions {}; both discrepancies flagged", table.join(" ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("reduced-logogram oracle equivalence", criterion_1),
        ("strong internal independence of SAT", criterion_2),
        ("no wizards in SAT", criterion_3),
        ("irreducibility of SAT", criterion_4),
        ("wizard in compositeness", criterion_5),
        ("witness union completeness", criterion_6),
        ("Galois connection properties", criterion_7),
        ("program kernels", criterion_8),
        ("order and entanglement properties", criterion_9),
        ("cover reporting", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("criterion {:>2} PASS [{name}] ({secs:.2}s) {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL [{name}] ({secs:.2}s) {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
