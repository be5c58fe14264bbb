//! Whole-theorem verification drivers.

use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::report::{Check, VerificationReport, Witness};
use super::{
    delta_unchecked, hook_codomain, hook_domain, pi_codomain, pi_domain, pi_tilde_unchecked, space, z_to_y, zeta,
    zeta_inverse, Model,
};
use crate::combinat::{binomial, hook_character_product, hook_character_tableau_sum, hook_dimension, q_binomial, q_int};
use crate::error::{Error, Result};
use crate::linalg::{SparseEchelon, SparseVec};
use crate::poly::{vandermonde, MultiPoly, PolyRing};
use crate::scalar::{FieldSpec, Scalar};
use crate::spaces::{
    from_coordinates, group_act, sl2_e_act, sl2_f_act, sl2_generators, space_basis_element, CoordinateReader,
    FactorSpec, GroupElement, SpaceAction, SpaceSpec,
};
use crate::weyl::delta_kernel_dimension;

struct Evaluated {
    basis: Vec<MultiPoly>,
    images: Vec<MultiPoly>,
}

fn evaluate<F>(domain: &SpaceSpec, f: FieldSpec, map: F) -> Result<Evaluated>
where
    F: Fn(&MultiPoly) -> Result<MultiPoly> + Sync,
{
    let basis: Vec<MultiPoly> = (0..domain.dimension()).into_par_iter().map(|i| space_basis_element(domain, i, f)).collect();
    let images = basis.par_iter().map(&map).collect::<Result<Vec<_>>>()?;
    Ok(Evaluated { basis, images })
}

/// Reads every image in codomain coordinates; a failure becomes a witness.
fn lands_in(ring: &PolyRing, cod: &SpaceSpec, ev: &Evaluated) -> (Check, Option<Vec<SparseVec>>) {
    let reader = CoordinateReader::new(cod);
    let cols: Vec<Result<SparseVec>> = ev.images.par_iter().map(|p| reader.sparse(p)).collect();
    if let Some(bad) = cols.iter().position(|c| c.is_err()) {
        let w = Witness {
            input: ring.render(&ev.basis[bad]),
            lhs: ring.render(&ev.images[bad]),
            rhs: format!("an element of {cod}"),
        };
        return (Check::new("lands_in_codomain", false).detail(format!("image leaves {cod}")).witness(w), None);
    }
    let cols: Vec<SparseVec> = cols.into_iter().map(|c| c.expect("checked")).collect();
    (Check::new("lands_in_codomain", true).detail(cod.to_string()), Some(cols))
}

fn rank_of(f: FieldSpec, cols: &[SparseVec]) -> usize {
    let mut e = SparseEchelon::new(f);
    for c in cols {
        e.insert(c.clone());
    }
    e.rank()
}

fn big(n: usize) -> BigUint {
    BigUint::from(n)
}

fn dense_render(ring: &PolyRing, v: &SparseVec, cod: &SpaceSpec, f: FieldSpec) -> String {
    let mut dense = vec![Scalar::zero(f); cod.dimension()];
    for (i, c) in v {
        dense[*i] = c.clone();
    }
    ring.render(&from_coordinates(&dense, cod, f))
}

/// Equivariance `Φ(g·b) = g·Φ(b)` for every basis element `b` and generator `g`,
/// with both actions applied as Kronecker products of factor matrices on coordinates.
pub fn equivariance_by_coordinates(
    ring: &PolyRing,
    dom: &SpaceSpec,
    cod: &SpaceSpec,
    basis: &[MultiPoly],
    cols: &[SparseVec],
    gens: &[GroupElement],
) -> Check {
    let f = ring.field();
    let failures: Vec<Option<(usize, usize, SparseVec, SparseVec)>> = gens
        .par_iter()
        .enumerate()
        .map(|(gi, g)| {
            let ad = SpaceAction::new(g, dom);
            let ac = SpaceAction::new(g, cod);
            for b in 0..cols.len() {
                let mut lhs: SparseVec = Vec::new();
                for (c, a) in ad.column(b) {
                    lhs = crate::linalg::sparse_axpy(&lhs, &a, &cols[c]);
                }
                let rhs = ac.apply(&cols[b]);
                if lhs != rhs {
                    return Some((gi, b, lhs, rhs));
                }
            }
            None
        })
        .collect();
    match failures.into_iter().flatten().next() {
        None => Check::new("equivariance", true).detail(format!("{} generators", gens.len())),
        Some((gi, b, lhs, rhs)) => Check::new("equivariance", false)
            .detail(format!("fails for g = {}", gens[gi]))
            .witness(Witness {
                input: ring.render(&basis[b]),
                lhs: dense_render(ring, &lhs, cod, f),
                rhs: dense_render(ring, &rhs, cod, f),
            }),
    }
}

/// `map(g·b) = g·map(b)` with both sides computed by substitution, for every basis
/// element `b` of `dom` and every generator; over ℚ also `map ∘ e = e ∘ map` and
/// `map ∘ f = f ∘ map`.
pub fn verify_equivariance<F>(
    ring: &PolyRing,
    map: F,
    dom: &SpaceSpec,
    cod: &SpaceSpec,
    gens: &[GroupElement],
) -> Result<VerificationReport>
where
    F: Fn(&MultiPoly) -> Result<MultiPoly> + Sync,
{
    let t0 = Instant::now();
    let f = ring.field();
    let mut report = VerificationReport::new("equivariance", f, &[]);
    let ev = evaluate(dom, f, &map)?;
    let per_gen: Vec<Result<Check>> = gens
        .par_iter()
        .map(|g| {
            for (b, img) in ev.basis.iter().zip(&ev.images) {
                let lhs = map(&group_act(g, dom, b)?)?;
                let rhs = group_act(g, cod, img)?;
                if lhs != rhs {
                    let w = Witness { input: ring.render(b), lhs: ring.render(&lhs), rhs: ring.render(&rhs) };
                    return Ok(Check::new("equivariance", false).param("g", g).witness(w));
                }
            }
            Ok(Check::new("equivariance", true).param("g", g))
        })
        .collect();
    for c in per_gen {
        report.push(c?);
    }
    if f.is_rationals() {
        for c in sl2_checks(ring, &map, dom, cod, &ev)? {
            report.push(c);
        }
    }
    report.elapsed_ms = Some(t0.elapsed().as_millis());
    Ok(report)
}

type Act = fn(&SpaceSpec, &MultiPoly) -> Result<MultiPoly>;

fn sl2_checks<F>(ring: &PolyRing, map: &F, dom: &SpaceSpec, cod: &SpaceSpec, ev: &Evaluated) -> Result<Vec<Check>>
where
    F: Fn(&MultiPoly) -> Result<MultiPoly> + Sync,
{
    let acts: [(&str, Act); 2] = [("sl2_e", sl2_e_act), ("sl2_f", sl2_f_act)];
    let mut out = Vec::new();
    for (name, act) in acts {
        let bad = ev
            .basis
            .par_iter()
            .zip(&ev.images)
            .map(|(b, img)| -> Result<Option<Witness>> {
                let lhs = map(&act(dom, b)?)?;
                let rhs = act(cod, img)?;
                Ok((lhs != rhs).then(|| Witness { input: ring.render(b), lhs: ring.render(&lhs), rhs: ring.render(&rhs) }))
            })
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .next();
        out.push(match bad {
            None => Check::new(name, true),
            Some(w) => Check::new(name, false).witness(w),
        });
    }
    Ok(out)
}

fn first_mismatch(ring: &PolyRing, inputs: &[MultiPoly], got: &[Result<MultiPoly>], want: &[MultiPoly]) -> Option<Witness> {
    for i in 0..inputs.len() {
        let ok = matches!(&got[i], Ok(p) if p == &want[i]);
        if !ok {
            let lhs = match &got[i] {
                Ok(p) => ring.render(p),
                Err(e) => format!("error: {e}"),
            };
            return Some(Witness { input: ring.render(&inputs[i]), lhs, rhs: ring.render(&want[i]) });
        }
    }
    None
}

fn outcome(name: &str, w: Option<Witness>) -> Check {
    match w {
        None => Check::new(name, true),
        Some(w) => Check::new(name, false).witness(w),
    }
}

fn all_pass(report: &VerificationReport, names: &[&str]) -> bool {
    names.iter().all(|n| report.check(n).is_some_and(|c| c.pass))
}

fn equivariance_and_sl2<F>(
    report: &mut VerificationReport,
    model_ring: &PolyRing,
    map: &F,
    dom: &SpaceSpec,
    cod: &SpaceSpec,
    ev: &Evaluated,
    cols: Option<&Vec<SparseVec>>,
) -> Result<()>
where
    F: Fn(&MultiPoly) -> Result<MultiPoly> + Sync,
{
    let f = model_ring.field();
    match cols {
        Some(cols) => report.push(equivariance_by_coordinates(model_ring, dom, cod, &ev.basis, cols, &sl2_generators(f))),
        None => report.push(Check::new("equivariance", false).detail("images not in the codomain")),
    }
    if f.is_rationals() {
        for c in sl2_checks(model_ring, map, dom, cod, ev)? {
            report.push(c);
        }
    }
    Ok(())
}

/// The hook isomorphism `(ζ ⊗ 1) ∘ ψ` onto `Δ^(M+1,1^(N-1)) Sym^d E = ker δ_M`.
pub fn verify_theorem_hook(m: u32, n: u32, d: u32, f: FieldSpec) -> Result<VerificationReport> {
    let t0 = Instant::now();
    if n == 0 || n > d + 1 {
        return Err(Error::InvalidParameters(format!("need 1 <= N <= d+1, got N={n}, d={d}")));
    }
    let model = Model::new(f, n as usize, m as usize)?;
    let ring = model.ring();
    let mut report = VerificationReport::new("hook", f, &[("M", m), ("N", n), ("d", d)]);
    let dom = hook_domain(&model, d)?;
    let cod = hook_codomain(&model, d)?;
    let map = |p: &MultiPoly| Ok(zeta(&z_to_y(&model, p), model.x()));
    let ev = evaluate(&dom, f, map)?;

    let (lands, cols) = lands_in(ring, &cod, &ev);
    report.push(lands);
    let rank = cols.as_ref().map(|c| rank_of(f, c));
    report.push(
        Check::new("injective", rank == Some(dom.dimension()))
            .detail(format!("rank {} on a domain of dimension {}", rank.map_or("?".into(), |r| r.to_string()), dom.dimension())),
    );

    let kernel_bad = ev
        .images
        .par_iter()
        .position_first(|img| !delta_unchecked(&model, img).is_zero())
        .map(|i| Witness {
            input: ring.render(&ev.basis[i]),
            lhs: ring.render(&delta_unchecked(&model, &ev.images[i])),
            rhs: "0".into(),
        });
    report.push(outcome("image_in_kernel", kernel_bad));

    let expected = hook_dimension(m, n, d)?;
    let formula = binomial((d + m + 1) as u64, (m + n) as u64) * binomial((m + n - 1) as u64, m as u64);
    let kernel = delta_kernel_dimension(m as usize, n as usize, d, f)?;
    let dim_ok = big(dom.dimension()) == expected && formula == expected && big(kernel) == expected;
    report.push(
        Check::new("dimension", dim_ok)
            .detail(format!("domain {}, tableaux {expected}, binomials {formula}, ker δ {kernel}", dom.dimension())),
    );

    let back: Vec<Result<MultiPoly>> = ev
        .images
        .par_iter()
        .map(|img| pi_tilde_unchecked(&model, &zeta_inverse(img, model.x())?))
        .collect();
    report.push(outcome("left_inverse", first_mismatch(ring, &ev.images, &back, &ev.basis)));

    equivariance_and_sl2(&mut report, ring, &map, &dom, &cod, &ev, cols.as_ref())?;

    let char_ok = hook_character_product(m, n, d)? == hook_character_tableau_sum(m, n, d)?;
    report.push(Check::new("character", char_ok));

    let iso = all_pass(&report, &["lands_in_codomain", "injective", "image_in_kernel", "dimension", "equivariance"]);
    report.push(Check::new("isomorphism", iso));
    report.elapsed_ms = Some(t0.elapsed().as_millis());
    Ok(report)
}

/// The trinomial isomorphism `φ`, with its left inverse and the team-and-leader specializations.
pub fn verify_theorem_trinomial(m: u32, n: u32, d: u32, f: FieldSpec) -> Result<VerificationReport> {
    let t0 = Instant::now();
    let model = Model::new(f, n as usize, m as usize)?;
    let ring = model.ring();
    let mut report = VerificationReport::new("trinomial", f, &[("M", m), ("N", n), ("d", d)]);
    let dom = pi_domain(&model, n, d);
    let cod = pi_codomain(&model, n, d);
    let map = |p: &MultiPoly| Ok(z_to_y(&model, p));
    let ev = evaluate(&dom, f, map)?;

    let (lands, cols) = lands_in(ring, &cod, &ev);
    report.push(lands);
    let rank = cols.as_ref().map(|c| rank_of(f, c));
    let (dd, cd) = (dom.dimension(), cod.dimension());
    report.push(
        Check::new("rank", rank == Some(dd) && dd == cd)
            .detail(format!("rank {}, domain {dd}, codomain {cd}", rank.map_or("?".into(), |r| r.to_string()))),
    );
    let (m64, n64, d64) = (m as u64, n as u64, d as u64);
    let lhs = binomial(m64 + n64, m64) * binomial(m64 + n64 + d64, m64 + n64);
    let rhs = binomial(n64 + d64, n64) * binomial(m64 + n64 + d64, m64);
    report.push(
        Check::new("dimension", big(dd) == lhs && big(cd) == rhs && lhs == rhs)
            .detail(format!("C(M+N,M)C(M+N+d,M+N) = {lhs}, C(N+d,N)C(M+N+d,M) = {rhs}")),
    );

    let back: Vec<Result<MultiPoly>> = ev.images.par_iter().map(|img| pi_tilde_unchecked(&model, img)).collect();
    report.push(outcome("left_inverse", first_mismatch(ring, &ev.images, &back, &ev.basis)));

    equivariance_and_sl2(&mut report, ring, &map, &dom, &cod, &ev, cols.as_ref())?;

    let (mu, nu, du) = (m as usize, n as usize, d as usize);
    let ql = &q_binomial(nu + mu, mu) * &q_binomial(du + nu + mu, nu + mu);
    let qr = &q_binomial(du + nu, nu) * &q_binomial(du + nu + mu, mu);
    report.push(Check::new("q_identity", ql == qr));

    let core = all_pass(&report, &["lands_in_codomain", "rank", "dimension", "equivariance"]);
    if m == 1 {
        report.push(Check::new("team_and_leader_i", core).param("K", n).param("d", d));
        // Dual form, checked on characters: [d+K+1] [d+K, K] = [d+1] [d+K+1, K].
        let k = nu;
        let a = &q_int(du + k + 1) * &q_binomial(du + k, k);
        let b = &q_int(du + 1) * &q_binomial(du + k + 1, k);
        let dims = a.eval_at_one() == b.eval_at_one();
        report.push(Check::new("team_and_leader_iii_character", a == b && dims).param("K", n).param("d", d));
    }
    if n == 1 {
        report.push(Check::new("team_and_leader_ii", core).param("K", m).param("d", d));
    }
    let iso = core && all_pass(&report, &["left_inverse"]);
    report.push(Check::new("isomorphism", iso));
    report.elapsed_ms = Some(t0.elapsed().as_millis());
    Ok(report)
}

/// `ζ: Λ_{≤d}[x] → a_ρ(x) Λ_{≤d}[x]` with `|x| = N`.
pub fn verify_wronskian(n: u32, d: u32, f: FieldSpec) -> Result<VerificationReport> {
    let t0 = Instant::now();
    if n > d + 1 {
        return Err(Error::InvalidParameters(format!("need N <= d+1, got N={n}, d={d}")));
    }
    let model = Model::new(f, n as usize, 0)?;
    let ring = model.ring();
    let x = model.x();
    let mut report = VerificationReport::new("wronskian", f, &[("N", n), ("d", d)]);
    let dom = super::wronskian_domain(x, d);
    let cod = super::wronskian_codomain(x, d);
    let map = |p: &MultiPoly| Ok(zeta(p, x));
    let ev = evaluate(&dom, f, map)?;
    let (lands, cols) = lands_in(ring, &cod, &ev);
    report.push(lands);
    let rank = cols.as_ref().map(|c| rank_of(f, c));
    let (dd, cd) = (dom.dimension(), cod.dimension());
    report.push(
        Check::new("bijective", rank == Some(dd) && dd == cd)
            .detail(format!("rank {}, domain {dd}, codomain {cd}", rank.map_or("?".into(), |r| r.to_string()))),
    );
    let expect = binomial((d + n) as u64, n as u64);
    report.push(Check::new("dimension", big(dd) == expect && big(cd) == expect).detail(format!("C(d+N,N) = {expect}")));
    let back: Vec<Result<MultiPoly>> = ev.images.par_iter().map(|img| zeta_inverse(img, x)).collect();
    report.push(outcome("inverse", first_mismatch(ring, &ev.images, &back, &ev.basis)));
    equivariance_and_sl2(&mut report, ring, &map, &dom, &cod, &ev, cols.as_ref())?;
    let iso = all_pass(&report, &["lands_in_codomain", "bijective", "dimension", "equivariance"]);
    report.push(Check::new("isomorphism", iso));
    report.elapsed_ms = Some(t0.elapsed().as_millis());
    Ok(report)
}

/// `⋀^M Sym^(N+M-1) E ⊗ ⋀^(M+N) Sym^e E ≅ ⋀^N Sym^(e-M) E ⊗ ⋀^M Sym^e E` through
/// `φ` conjugated by Wronskian maps, with `d = e-M-N+1`.
pub fn verify_extgtl(m: u32, n: u32, e: u32, f: FieldSpec) -> Result<VerificationReport> {
    let t0 = Instant::now();
    if e + 1 < m + n {
        return Err(Error::InvalidParameters(format!("need e >= M+N-1, got M={m}, N={n}, e={e}")));
    }
    let d = e + 1 - m - n;
    let model = Model::new(f, n as usize, m as usize)?;
    let ring = model.ring();
    let mut report = VerificationReport::new("extgtl", f, &[("M", m), ("N", n), ("e", e)]);
    let (x, y, z) = (model.x(), model.y(), model.z());
    let dom = space(vec![FactorSpec::antisymmetric(&[z], n), FactorSpec::antisymmetric(&[x, y], d)]);
    let cod = space(vec![FactorSpec::antisymmetric(&[x], d), FactorSpec::antisymmetric(&[y], d + n)]);
    let mut xy = x.vars();
    xy.extend(y.vars());
    let scale = &vandermonde(&x.vars(), f) * &vandermonde(&y.vars(), f);
    let map = |p: &MultiPoly| -> Result<MultiPoly> {
        let q = crate::combinat::divide_by_vandermonde(p, &z.vars())?;
        let q = crate::combinat::divide_by_vandermonde(&q, &xy)?;
        Ok(&scale * &z_to_y(&model, &q))
    };
    let ev = evaluate(&dom, f, map)?;

    let (m64, n64, e64) = (m as u64, n as u64, e as u64);
    let lhs = binomial(n64 + m64, m64) * binomial(e64 + 1, m64 + n64);
    let rhs = binomial(e64 + 1 - m64, n64) * binomial(e64 + 1, m64);
    let (dd, cd) = (dom.dimension(), cod.dimension());
    report.push(
        Check::new("dimension_identity", lhs == rhs && big(dd) == lhs && big(cd) == rhs)
            .detail(format!("C(N+M,M)C(e+1,M+N) = {lhs}, C(e-M+1,N)C(e+1,M) = {rhs}")),
    );
    let (lands, cols) = lands_in(ring, &cod, &ev);
    report.push(lands);
    let rank = cols.as_ref().map(|c| rank_of(f, c));
    report.push(
        Check::new("bijective", rank == Some(dd) && dd == cd)
            .detail(format!("rank {}, domain {dd}, codomain {cd}", rank.map_or("?".into(), |r| r.to_string()))),
    );
    equivariance_and_sl2(&mut report, ring, &map, &dom, &cod, &ev, cols.as_ref())?;
    let iso = all_pass(&report, &["dimension_identity", "lands_in_codomain", "bijective", "equivariance"]);
    report.push(Check::new("isomorphism", iso));
    report.elapsed_ms = Some(t0.elapsed().as_millis());
    Ok(report)
}

struct Recovery {
    basis: Vec<MultiPoly>,
    images: Vec<MultiPoly>,
    back: Vec<Result<MultiPoly>>,
}

fn recover(model: &Model, beta: u32, eps: u32) -> Result<Recovery> {
    let f = model.field();
    let dom = pi_domain(model, beta, eps);
    let ev = evaluate(&dom, f, |p| Ok(z_to_y(model, p)))?;
    let back = ev.images.par_iter().map(|img| pi_tilde_unchecked(model, img)).collect();
    Ok(Recovery { basis: ev.basis, images: ev.images, back })
}

/// `π̃ ∘ π = id` on the basis of `Λ_{≤β}[z] ⊗ Λ_{≤ε}[x, y]`.
pub fn verify_left_inverse(n: u32, m: u32, beta: u32, eps: u32, f: FieldSpec) -> Result<VerificationReport> {
    let t0 = Instant::now();
    let model = Model::new(f, n as usize, m as usize)?;
    let mut report = VerificationReport::new("left_inverse", f, &[("N", n), ("M", m), ("beta", beta), ("eps", eps)]);
    let r = recover(&model, beta, eps)?;
    let uncleared = r.back.iter().filter(|b| matches!(b, Err(Error::DenominatorNotCleared))).count();
    report.push(Check::new("denominators_cleared", uncleared == 0).detail(format!("{uncleared} failures")));
    report.push(outcome("left_inverse", first_mismatch(model.ring(), &r.images, &r.back, &r.basis)));
    report.push(Check::new("image_codomain", true).detail(pi_codomain(&model, beta, eps).to_string()));
    report.elapsed_ms = Some(t0.elapsed().as_millis());
    Ok(report)
}

/// Runs `π̃ ∘ π` with `β = N+1`, outside the range where it is known to be a
/// left inverse, and records how many basis elements fail to come back and how
/// many of those failed with an uncleared denominator.
pub fn sharpness_probe(n: u32, m: u32, eps: u32, f: FieldSpec) -> Result<VerificationReport> {
    let t0 = Instant::now();
    let beta = n + 1;
    let model = Model::new(f, n as usize, m as usize)?;
    let mut report = VerificationReport::new("sharpness_probe", f, &[("N", n), ("M", m), ("beta", beta), ("eps", eps)]);
    let r = recover(&model, beta, eps)?;
    let uncleared = r.back.iter().filter(|b| matches!(b, Err(Error::DenominatorNotCleared))).count();
    let wrong: Vec<usize> = (0..r.basis.len()).filter(|&i| !matches!(&r.back[i], Ok(p) if p == &r.basis[i])).collect();
    let mut c = Check::new("recovery_fails", !wrong.is_empty())
        .detail(format!("{} of {} basis elements not recovered; {uncleared} uncleared denominators", wrong.len(), r.basis.len()));
    if let Some(&i) = wrong.first() {
        c = c.witness(Witness {
            input: model.render(&r.basis[i]),
            lhs: match &r.back[i] {
                Ok(p) => model.render(p),
                Err(e) => format!("error: {e}"),
            },
            rhs: model.render(&r.basis[i]),
        });
    }
    report.push(c);
    report.elapsed_ms = Some(t0.elapsed().as_millis());
    Ok(report)
}
