//! Acceptance criteria 1-10, one PASS/FAIL line each.
//!
//! Two criteria fail when evaluated literally. Criterion 8 fails because over the
//! finite group SL2(GF(2)) the two degree-two actions are isomorphic (the
//! non-isomorphism needs an infinite field). Criterion 10 fails because the
//! displayed coefficient of the `e` example is 4 where the definition of `e`
//! gives 2. The process exits nonzero if the failing set is anything else.

use std::collections::BTreeSet;
use std::time::Instant;

use num_bigint::BigInt;
use plethyverify::catalan::{enumerate_trees, tree_to_process, verify_catalan, ElectionProcess, SizeVector};
use plethyverify::combinat::{
    binomial, enumerate_ssyt, hook_character_product, hook_character_tableau_sum, hook_dimension, hook_shape,
    ssyt_to_subset_pair, subset_pair_to_ssyt, QPoly,
};
use plethyverify::linalg::sparse_rank;
use plethyverify::maps::{
    l_operator, l_operator_newton, verify_left_inverse, verify_theorem_hook, verify_theorem_trinomial,
    verify_wronskian, Model, VerificationReport,
};
use plethyverify::poly::{PolyRing, RationalFunction};
use plethyverify::scalar::FieldSpec;
use plethyverify::spaces::{sl2_e_act, sl2_f_act, sl2_generators, space_basis, FactorSpec, SpaceSpec};
use plethyverify::weyl::{
    degree_two_displays, delta_columns, delta_matrix, f_delta, find_invertible, first_moving, generic_display_pairs,
    hook_difference_vector, intertwiners, span_has_invertible,
};
use plethyverify::Result;
use rayon::prelude::*;

const KNOWN_FAILURES: [u32; 2] = [8, 10];
const GOLDEN: &str = include_str!("golden/worked_examples.txt");

fn fields() -> Vec<FieldSpec> {
    vec![FieldSpec::Rationals, FieldSpec::Prime(2), FieldSpec::Prime(3), FieldSpec::Prime(5)]
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

/// Runs every report, returning the failing titles.
fn run_reports<P: Sync>(points: &[P], run: impl Fn(&P) -> Result<VerificationReport> + Sync) -> (usize, Vec<String>) {
    let results: Vec<std::result::Result<VerificationReport, String>> =
        points.par_iter().map(|p| run(p).map_err(|e| e.to_string())).collect();
    let mut bad = Vec::new();
    for r in &results {
        match r {
            Ok(rep) if rep.passed() => {}
            Ok(rep) => {
                let names: Vec<&str> = rep.failures().map(|c| c.name.as_str()).collect();
                bad.push(format!("{} [{}]", rep.title(), names.join(", ")));
            }
            Err(e) => bad.push(format!("error: {e}")),
        }
    }
    (results.len(), bad)
}

fn summarize(n: usize, bad: &[String], extra: &str) -> Outcome {
    if bad.is_empty() {
        outcome(true, format!("{n} reports pass{extra}"))
    } else {
        outcome(false, format!("{} of {n} reports fail, first: {}{extra}", bad.len(), bad[0]))
    }
}

fn hook_grid() -> Vec<(u32, u32, u32, FieldSpec)> {
    let mut pts = Vec::new();
    for f in fields() {
        for m in 0..=2 {
            for n in 1..=3 {
                for d in 0..=4 {
                    if n <= d + 1 {
                        pts.push((m, n, d, f));
                    }
                }
            }
        }
    }
    pts
}

fn criterion_1() -> Outcome {
    let t0 = Instant::now();
    let pts = hook_grid();
    let (n, bad) = run_reports(&pts, |&(m, nn, d, f)| verify_theorem_hook(m, nn, d, f));
    let secs = t0.elapsed().as_secs_f64();
    let mut o = summarize(n, &bad, &format!(" in {secs:.1} s"));
    if secs >= 300.0 {
        o.pass = false;
    }
    o
}

fn criterion_2() -> Outcome {
    let mut pts = Vec::new();
    for f in fields() {
        for m in 0..=3 {
            for n in 0..=3 {
                for d in 0..=3 {
                    pts.push((m, n, d, f));
                }
            }
        }
    }
    let (n, bad) = run_reports(&pts, |&(m, nn, d, f)| verify_theorem_trinomial(m, nn, d, f));
    summarize(n, &bad, "")
}

fn criterion_3() -> Outcome {
    let mut pts = Vec::new();
    for f in fields() {
        for d in 0..=5 {
            for n in 0..=d + 1 {
                pts.push((n, d, f));
            }
        }
    }
    let (n, bad) = run_reports(&pts, |&(nn, d, f)| verify_wronskian(nn, d, f));
    summarize(n, &bad, "")
}

fn criterion_4() -> Outcome {
    let mut pts = Vec::new();
    for f in fields() {
        for n in 0..=2 {
            for m in 0..=2 {
                for beta in 0..=n {
                    for eps in 0..=3 {
                        pts.push((n, m, beta, eps, f));
                    }
                }
            }
        }
    }
    let (n, bad) = run_reports(&pts, |&(nn, m, beta, eps, f)| verify_left_inverse(nn, m, beta, eps, f));
    summarize(n, &bad, "")
}

/// Hook tableaux counted by entry sum without the library enumerator: a weakly
/// increasing first row `a_0..a_M` and a strictly increasing column below `a_0`.
fn character_oracle(m: u32, n: u32, d: u32) -> QPoly {
    fn rows(len: u32, lo: u32, hi: u32, strict: bool, acc: u32, out: &mut Vec<u32>) {
        if len == 0 {
            out.push(acc);
            return;
        }
        for v in lo..=hi {
            rows(len - 1, if strict { v + 1 } else { v }, hi, strict, acc + v, out);
        }
    }
    let mut coeffs = vec![BigInt::from(0); ((m + n) * d + 1) as usize];
    for a0 in 0..=d {
        let mut arm = Vec::new();
        rows(m, a0, d, false, 0, &mut arm);
        let mut leg = Vec::new();
        rows(n - 1, a0 + 1, d, true, 0, &mut leg);
        for &x in &arm {
            for &y in &leg {
                coeffs[(a0 + x + y) as usize] += 1;
            }
        }
    }
    QPoly::new(coeffs)
}

fn criterion_5() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for m in 0..=4 {
        for n in 1..=4 {
            for d in 0..=6 {
                if n > d + 1 {
                    continue;
                }
                count += 1;
                let prod = hook_character_product(m, n, d);
                let sum = hook_character_tableau_sum(m, n, d);
                let oracle = character_oracle(m, n, d);
                match (prod, sum) {
                    (Ok(p), Ok(s)) if p == s && s == oracle => {}
                    (p, s) => bad.push(format!("(M,N,d)=({m},{n},{d}): {p:?} vs {s:?}")),
                }
            }
        }
    }
    let example = hook_character_product(1, 2, 2).map(|p| p.to_string()).unwrap_or_default();
    if example != "q+2q²+2q³+2q⁴+q⁵" {
        bad.push(format!("(1,2,2) gives {example}"));
    }
    if bad.is_empty() {
        outcome(true, format!("{count} points agree with the tableau oracle; (1,2,2) = {example}"))
    } else {
        outcome(false, format!("{} mismatches, first: {}", bad.len(), bad[0]))
    }
}

fn criterion_6() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for m in 0..=4u32 {
        for n in 1..=4u32 {
            for d in 0..=6u32 {
                if n > d + 1 {
                    continue;
                }
                count += 1;
                let shape = hook_shape(m, n).expect("hook shape");
                let tabs = enumerate_ssyt(&shape, d);
                let dim = hook_dimension(m, n, d).expect("hook dimension");
                if binomial((d + m + 1) as u64, (m + n) as u64) * binomial((m + n - 1) as u64, m as u64) != dim
                    || dim != tabs.len().into()
                {
                    bad.push(format!("({m},{n},{d}): {} tableaux, dimension {dim}", tabs.len()));
                    continue;
                }
                let mut images = BTreeSet::new();
                for t in &tabs {
                    let back = ssyt_to_subset_pair(t, m, n, d)
                        .and_then(|(s, a)| {
                            images.insert((s.clone(), a.clone()));
                            subset_pair_to_ssyt(&s, &a, m, n, d)
                        })
                        .ok();
                    if back.as_ref() != Some(t) {
                        bad.push(format!("({m},{n},{d}): round trip fails on {t}"));
                        break;
                    }
                }
                if images.len() != tabs.len() {
                    bad.push(format!("({m},{n},{d}): subset pairs not distinct"));
                }
            }
        }
    }
    let eight = enumerate_ssyt(&hook_shape(1, 2).expect("hook shape"), 2).len();
    if eight != 8 {
        bad.push(format!("(1,2,2) has {eight} tableaux"));
    }
    if bad.is_empty() {
        outcome(true, format!("{count} points; (1,2,2) has {eight} tableaux"))
    } else {
        outcome(false, format!("{} failures, first: {}", bad.len(), bad[0]))
    }
}

fn criterion_7() -> Outcome {
    let pts = hook_grid();
    let bad: Vec<String> = pts
        .par_iter()
        .filter_map(|&(m, n, d, f)| {
            let run = || -> Result<Option<String>> {
                let (cols, _) = delta_columns(m as usize, n as usize, d, f)?;
                let image = sparse_rank(f, cols.iter().cloned());
                let kernel = delta_matrix(m as usize, n as usize, d, f)?.kernel_basis().len();
                let total = binomial((d + m) as u64, m as u64) * binomial((d + 1) as u64, n as u64);
                let hook = hook_dimension(m, n, d)?;
                if total != (kernel + image).into() || hook != kernel.into() {
                    return Ok(Some(format!(
                        "(M,N,d)=({m},{n},{d}) over {f}: ker {kernel}, im {image}, total {total}, hook {hook}"
                    )));
                }
                Ok(None)
            };
            run().unwrap_or_else(|e| Some(format!("({m},{n},{d}) over {f}: {e}")))
        })
        .collect();
    if bad.is_empty() {
        outcome(true, format!("{} points: ker + im = C(d+M,M)C(d+1,N) and ker = hook dimension", pts.len()))
    } else {
        outcome(false, format!("{} failures, first: {}", bad.len(), bad[0]))
    }
}

fn criterion_8() -> Outcome {
    let run = || -> Result<Outcome> {
        let gf2 = FieldSpec::Prime(2);
        let pairs: Vec<_> = sl2_generators(gf2).iter().map(degree_two_displays).collect();
        let basis = intertwiners(&pairs)?;
        let found = find_invertible(&basis, gf2, 1 << 20).flatten();
        let generic = intertwiners(&generic_display_pairs(gf2)?)?;
        let generic_invertible = span_has_invertible(&generic)?;
        let gf3 = FieldSpec::Prime(3);
        let w = hook_difference_vector(gf3)?;
        let fixed = !w.is_zero() && first_moving(&w, &sl2_generators(gf3))?.is_none();
        let gf2_part = match &found {
            None => format!("GF(2): {}-dim intertwiners, none invertible", basis.len()),
            Some(t) => format!("GF(2): invertible intertwiner {t} over SL2(GF(2))"),
        };
        let detail = format!(
            "{gf2_part}; generic γ: {}-dim, invertible: {generic_invertible}; GF(3): {w} fixed: {fixed}",
            generic.len()
        );
        Ok(outcome(found.is_none() && fixed, detail))
    };
    run().unwrap_or_else(|e| outcome(false, format!("error: {e}")))
}

fn criterion_9() -> Outcome {
    let mut bad = Vec::new();
    for k in 1..=8 {
        match verify_catalan(k, &SizeVector::powers_of_two(k)) {
            Ok(r) if r.passed() => {}
            Ok(r) => bad.push(r.render_text()),
            Err(e) => bad.push(format!("k={k}: {e}")),
        }
    }
    let (a, b, c, d) = (1, 3, 7, 15);
    let figure: BTreeSet<ElectionProcess> = [
        vec![(d, c), (c, b), (b, a)],
        vec![(d, b), (d - b, c - b), (b, a)],
        vec![(d, a), (d - b, c - b), (d - a, b - a)],
        vec![(d, a), (d - a, c - a), (c - a, b - a)],
        vec![(d, c), (c, a), (c - a, b - a)],
    ]
    .into_iter()
    .map(|s| ElectionProcess::new(s).expect("figure process"))
    .collect();
    let s4 = SizeVector::powers_of_two(4);
    let ours: std::result::Result<BTreeSet<ElectionProcess>, _> =
        enumerate_trees(4).iter().map(|t| tree_to_process(t, &s4)).collect();
    match ours {
        Ok(ours) if ours == figure && ours.len() == 5 => {}
        Ok(ours) => bad.push(format!("k=4 gives {} processes differing from the figure", ours.len())),
        Err(e) => bad.push(format!("k=4: {e}")),
    }
    if bad.is_empty() {
        outcome(true, "k = 1..8 pass; k = 4 matches the five figure processes")
    } else {
        outcome(false, format!("{} failures, first: {}", bad.len(), bad[0]))
    }
}

fn golden(key: &str) -> &'static str {
    GOLDEN
        .lines()
        .find_map(|l| l.strip_prefix(key).and_then(|r| r.strip_prefix(": ")))
        .unwrap_or_else(|| panic!("golden entry {key} missing"))
}

fn criterion_10() -> Outcome {
    let run = || -> Result<Vec<(String, bool)>> {
        let q = FieldSpec::Rationals;
        let mut parts = Vec::new();

        let fd = f_delta(&"[[0,2,2,5],[2],[4]]".parse()?, 5, q)?.to_string();
        parts.push((format!("f_delta {fd}"), fd == golden("f_delta")));

        let r = PolyRing::new(q, &[("x", 2)])?;
        let s = SpaceSpec::new(vec![FactorSpec::symmetric(&[r.alphabet("x")], 6)])?;
        let p = r.parse("x1^3*x2^4 + x1^4*x2^3")?;
        let e = sl2_e_act(&s, &p)?;
        parts.push((format!("e {}", r.render(&e)), e == r.parse(golden("e"))?));
        let f = sl2_f_act(&s, &p)?;
        parts.push((format!("f {}", r.render(&f)), f == r.parse(golden("f"))?));

        let model = Model::new(q, 1, 1)?;
        let ring = model.ring();
        let y1 = ring.var(model.y().var(0));
        let mut ok = true;
        let mut seen = 0;
        for bound in 0..=3 {
            let sym = SpaceSpec::new(vec![FactorSpec::symmetric(&[model.x(), model.y()], bound)])?;
            for pp in space_basis(&sym, q) {
                let want = ring.parse(&golden("recovering_z").replace('P', &format!("({})", ring.render(&pp))))?;
                let input = &y1 * &pp;
                let literal = l_operator(&model, 1, &RationalFunction::from(input.clone()))?.to_poly()?;
                let newton = l_operator_newton(&model, 1, &input)?;
                ok &= literal == want && newton == want;
                seen += 1;
            }
        }
        parts.push((format!("recovering z on {seen} symmetric P"), ok));
        Ok(parts)
    };
    match run() {
        Ok(parts) => {
            let pass = parts.iter().all(|(_, ok)| *ok);
            let detail: Vec<String> =
                parts.iter().map(|(d, ok)| format!("{d} {}", if *ok { "matches" } else { "DIFFERS" })).collect();
            outcome(pass, detail.join("; "))
        }
        Err(e) => outcome(false, format!("error: {e}")),
    }
}

fn main() {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut failing = Vec::new();
    for (k, run) in criteria {
        let t0 = Instant::now();
        let o = run();
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("criterion {k}: {verdict} ({:.1} s) {}", t0.elapsed().as_secs_f64(), o.detail);
        if !o.pass {
            failing.push(k);
        }
    }
    println!("failing criteria: {failing:?}; documented: {KNOWN_FAILURES:?}");
    if failing != KNOWN_FAILURES {
        std::process::exit(1);
    }
}
