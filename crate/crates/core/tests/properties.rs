use num_bigint::BigInt;
use plethyverify::catalan::{enumerate_trees, rotation_edges, tree_to_process, verify_catalan, SizeVector};
use plethyverify::combinat::{
    binom, binomial, enumerate_ssyt, hook_character_tableau_sum, hook_dimension, hook_shape, q_binomial,
    ssyt_to_subset_pair, QPoly,
};
use plethyverify::combinat::schur_poly;
use plethyverify::maps::sharpness_probe;
use plethyverify::poly::{
    alternant, is_symmetric, lagrange_interpolate, symmetrize_orbit, vandermonde, Monomial, MultiPoly, PolyRing,
    RationalFunction,
};
use plethyverify::scalar::{FieldSpec, Scalar};
use plethyverify::spaces::{
    coordinates, group_act, sl2_e_act, sl2_f_act, sl2_h_act, space_basis, space_dimension, FactorKind, FactorSpec,
    GroupElement, SpaceSpec,
};
use plethyverify::weyl::{delta_kernel_dimension, induced_act, WedgeSymVector, WeylBasis};
use proptest::prelude::*;

const Q: FieldSpec = FieldSpec::Rationals;
const FIELDS: [FieldSpec; 5] =
    [Q, FieldSpec::Prime(2), FieldSpec::Prime(3), FieldSpec::Prime(5), FieldSpec::Prime(7)];

fn field() -> impl Strategy<Value = FieldSpec> {
    (0..FIELDS.len()).prop_map(|i| FIELDS[i])
}

fn scalar(f: FieldSpec) -> impl Strategy<Value = Scalar> {
    (-20i64..20, 1i64..9).prop_map(move |(n, d)| match f {
        FieldSpec::Rationals => Scalar::from_ratio(n, d, f).unwrap(),
        FieldSpec::Prime(_) => Scalar::from_i64(n, f),
    })
}

fn scalars3() -> impl Strategy<Value = (Scalar, Scalar, Scalar)> {
    field().prop_flat_map(|f| (scalar(f), scalar(f), scalar(f)))
}

/// A polynomial in `nvars` variables with at most `terms` terms of degree at most `deg` per variable.
fn poly(f: FieldSpec, nvars: usize, deg: u32, terms: usize) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec((prop::collection::vec(0..=deg, nvars), -5i64..6), 0..=terms).prop_map(move |ts| {
        MultiPoly::from_terms(f, ts.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), Scalar::from_i64(c, f))))
    })
}

fn group_element(f: FieldSpec) -> impl Strategy<Value = GroupElement> {
    (-4i64..5, -4i64..5, -4i64..5, -4i64..5).prop_filter_map("singular", move |(a, b, c, d)| {
        let s = |n| Scalar::from_i64(n, f);
        GroupElement::new(s(a), s(b), s(c), s(d)).ok().filter(|g| !g.det().is_zero())
    })
}

fn config() -> ProptestConfig {
    ProptestConfig { cases: 48, ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn field_axioms((a, b, c) in scalars3()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
            prop_assert_eq!(b.try_div(&a).unwrap(), &b * &a.inv().unwrap());
        } else {
            prop_assert!(a.inv().is_err());
        }
    }

    #[test]
    fn reduce_integer_is_a_homomorphism(f in field(), a in -10_000i64..10_000, b in -10_000i64..10_000) {
        prop_assert_eq!(f.reduce_integer(a * b), &f.reduce_integer(a) * &f.reduce_integer(b));
        prop_assert_eq!(f.reduce_integer(a + b), &f.reduce_integer(a) + &f.reduce_integer(b));
    }

    #[test]
    fn alternants_divide_by_vandermonde(f in field(), lambda in prop::collection::vec(0u32..4, 3)) {
        let mut lambda = lambda;
        lambda.sort_unstable_by(|a, b| b.cmp(a));
        let vars = [0, 1, 2];
        let a = alternant(&lambda, &vars, f).unwrap();
        let s = a.exact_div(&vandermonde(&vars, f)).unwrap();
        prop_assert!(is_symmetric(&s, &vars));
        prop_assert_eq!(&s * &vandermonde(&vars, f), a);
    }

    #[test]
    fn orbit_sums_are_symmetric(f in field(), e in prop::collection::vec(0u32..4, 3)) {
        let m = Monomial::from_exponents(&e);
        let vars = [0, 1, 2];
        let s = symmetrize_orbit(m, &vars, f);
        prop_assert!(is_symmetric(&s, &vars));
        prop_assert!(s.coeff(m).is_one());
    }

    #[test]
    fn lagrange_reproduces_polynomials(f in field(), p in poly(Q, 3, 2, 5)) {
        // Nodes are the free variables 1, 2 and their sum; the interpolation variable is 0.
        let p = p.reduce_into(f).unwrap();
        let v = |i| MultiPoly::var(i, f);
        let nodes: Vec<RationalFunction> = [v(1), v(2), &v(1) + &v(2)].into_iter().map(RationalFunction::from).collect();
        let r = lagrange_interpolate(&RationalFunction::from(p.clone()), 0, &nodes).unwrap();
        prop_assert_eq!(r.to_poly().unwrap(), p);
    }

    #[test]
    fn leibniz_rule(f in field(), p in poly(Q, 2, 3, 4), q in poly(Q, 2, 3, 4)) {
        let (p, q) = (p.reduce_into(f).unwrap(), q.reduce_into(f).unwrap());
        let lhs = (&p * &q).partial_derivative(0);
        let rhs = &(&p.partial_derivative(0) * &q) + &(&p * &q.partial_derivative(0));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn group_action_is_multiplicative(
        (f, g, h, idx) in field().prop_flat_map(|f| (Just(f), group_element(f), group_element(f), 0usize..64))
    ) {
        let r = PolyRing::new(f, &[("x", 2), ("y", 2)]).unwrap();
        let s = SpaceSpec::new(vec![
            FactorSpec::symmetric(&[r.alphabet("x")], 2),
            FactorSpec::antisymmetric(&[r.alphabet("y")], 1),
        ]).unwrap();
        let basis = space_basis(&s, f);
        let p = &basis[idx % basis.len()];
        let gh = group_act(&g.mul(&h), &s, p).unwrap();
        prop_assert_eq!(&gh, &group_act(&g, &s, &group_act(&h, &s, p).unwrap()).unwrap());
        prop_assert!(coordinates(&gh, &s).is_ok());
    }

    #[test]
    fn induced_action_is_multiplicative(
        (f, g, h, idx) in field().prop_flat_map(|f| (Just(f), group_element(f), group_element(f), 0usize..64))
    ) {
        let (d, n, m) = (2, 2, 1);
        let basis = WeylBasis::new(d, n, m);
        let (w, a) = basis.key(idx % basis.len());
        let v = WedgeSymVector::basis(d, w, a, f).unwrap();
        let lhs = induced_act(&g.mul(&h), &v).unwrap();
        prop_assert_eq!(lhs, induced_act(&g, &induced_act(&h, &v).unwrap()).unwrap());
    }

    #[test]
    fn q_binomial_at_one(n in 0usize..12, m in 0usize..12) {
        prop_assert_eq!(q_binomial(n, m).eval_at_one(), BigInt::from(binomial(n as u64, m as u64)));
    }

    #[test]
    fn trinomial_revision(m in 0usize..=4, n in 0usize..=4, d in 0usize..=4) {
        let b = |a: usize, c: usize| binomial(a as u64, c as u64);
        prop_assert_eq!(b(m + n, m) * b(m + n + d, m + n), b(n + d, n) * b(m + n + d, m));
        let lhs: QPoly = &q_binomial(m + n, m) * &q_binomial(m + n + d, m + n);
        let rhs: QPoly = &q_binomial(n + d, n) * &q_binomial(m + n + d, m);
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn sl2_commutator_on_weight_vectors() {
    let r = PolyRing::new(Q, &[("x", 2), ("y", 2)]).unwrap();
    for s in [
        SpaceSpec::new(vec![FactorSpec::symmetric(&[r.alphabet("x")], 3)]).unwrap(),
        SpaceSpec::new(vec![FactorSpec::antisymmetric(&[r.alphabet("x")], 2)]).unwrap(),
        SpaceSpec::new(vec![
            FactorSpec::symmetric(&[r.alphabet("x")], 2),
            FactorSpec::antisymmetric(&[r.alphabet("y")], 1),
        ])
        .unwrap(),
    ] {
        for p in space_basis(&s, Q) {
            let ef = &sl2_e_act(&s, &sl2_f_act(&s, &p).unwrap()).unwrap() - &sl2_f_act(&s, &sl2_e_act(&s, &p).unwrap()).unwrap();
            assert_eq!(ef, sl2_h_act(&s, &p).unwrap());
            // Weight of a monomial: sum over variables of 2α - D, with D the top exponent of its factor.
            let (lead, _) = p.leading().unwrap();
            let mut w = 0i64;
            for fac in s.factors() {
                let top = match fac.kind() {
                    FactorKind::Symmetric => fac.bound(),
                    FactorKind::Antisymmetric => fac.bound() + fac.num_vars() as u32 - 1,
                };
                w += fac.vars().iter().map(|&v| 2 * lead.exp(v) as i64 - top as i64).sum::<i64>();
            }
            assert_eq!(ef, p.scale(&Scalar::from_i64(w, Q)));
        }
    }
}

#[test]
fn space_dimensions_match_binomials() {
    let r = PolyRing::new(Q, &[("x", 3), ("y", 2)]).unwrap();
    for e in 0..4u32 {
        for (sym, alt) in [(true, true), (true, false), (false, true)] {
            let mut facs = Vec::new();
            let mut want = 1u64;
            if sym {
                facs.push(FactorSpec::symmetric(&[r.alphabet("x")], e));
                want *= binom(e as usize + 3, 3) as u64;
            }
            if alt {
                facs.push(FactorSpec::antisymmetric(&[r.alphabet("y")], e + 1));
                want *= binom(e as usize + 3, 2) as u64;
            }
            let s = SpaceSpec::new(facs).unwrap();
            assert_eq!(space_dimension(&s) as u64, want);
            assert_eq!(space_basis(&s, Q).len() as u64, want);
        }
    }
}

#[test]
fn ssyt_count_equals_kernel_dimension() {
    for f in FIELDS {
        for m in 0..=3usize {
            for n in 1..=3usize {
                for d in 0..=5u32 {
                    if n as u32 > d + 1 {
                        continue;
                    }
                    let count = enumerate_ssyt(&hook_shape(m as u32, n as u32).unwrap(), d).len();
                    assert_eq!(delta_kernel_dimension(m, n, d, f).unwrap(), count, "({m},{n},{d}) over {f}");
                }
            }
        }
    }
}

#[test]
fn ssyt_bijection_by_double_count() {
    for m in 0..=3u32 {
        for n in 1..=4u32 {
            for d in 0..=6u32 {
                if n > d + 1 {
                    continue;
                }
                let tabs = enumerate_ssyt(&hook_shape(m, n).unwrap(), d);
                assert_eq!(hook_dimension(m, n, d).unwrap(), tabs.len().into());
                let mut pairs = std::collections::BTreeSet::new();
                for t in &tabs {
                    let (s, a) = ssyt_to_subset_pair(t, m, n, d).unwrap();
                    assert_eq!(s.len(), (m + n) as usize);
                    assert!(s.iter().all(|&v| v <= d + m));
                    assert!(a.iter().all(|v| s[1..].contains(v)));
                    pairs.insert((s, a));
                }
                // |{S}| · |{A}| = C(d+M+1, M+N) · C(M+N-1, M)
                assert_eq!(pairs.len(), tabs.len());
            }
        }
    }
}

#[test]
fn schur_specializes_to_hook_character() {
    for m in 0..=2u32 {
        for n in 1..=2u32 {
            for d in (n - 1)..=3u32 {
                let nv = (d + 1) as usize;
                let r = PolyRing::new(Q, &[("x", nv), ("q", 1)]).unwrap();
                let vars = r.alphabet("x").vars();
                let lambda = hook_shape(m, n).unwrap();
                let s = schur_poly(&lambda, &vars, Q).unwrap();
                assert!(is_symmetric(&s, &vars));
                let q = r.var(r.alphabet("q").var(0));
                let mut spec = s;
                for (i, &v) in vars.iter().enumerate() {
                    spec = spec.substitute(v, &q.pow(i as u32));
                }
                let want = hook_character_tableau_sum(m, n, d).unwrap();
                let qv = r.alphabet("q").var(0);
                for k in 0..=want.degree().unwrap_or(0) + 2 {
                    let c = spec.coeff(Monomial::var(qv).with_exp(qv, k as u32));
                    assert_eq!(c, Scalar::from_bigint(&want.coefficient(k), Q), "λ={lambda}, d={d}, q^{k}");
                }
            }
        }
    }
}

#[test]
fn sharpness_probe_sees_non_recovery() {
    for f in [Q, FieldSpec::Prime(2), FieldSpec::Prime(3)] {
        for (n, m) in [(1, 1), (1, 2), (2, 1)] {
            let r = sharpness_probe(n, m, 1, f).unwrap();
            let c = r.check("recovery_fails").unwrap();
            assert!(c.pass, "{}", r.render_text());
            assert!(c.detail.as_deref().unwrap().ends_with("0 uncleared denominators"));
        }
    }
}

#[test]
fn catalan_invariants() {
    for k in 1..=8 {
        let s = SizeVector::powers_of_two(k);
        assert!(s.is_generic());
        assert!(verify_catalan(k, &s).unwrap().passed());
        let trees = enumerate_trees(k);
        for (i, _, t) in rotation_edges(&trees) {
            let a = tree_to_process(&trees[i], &s).unwrap().product();
            assert_eq!(a, tree_to_process(&t, &s).unwrap().product());
        }
    }
    let flat = SizeVector::new((1..=6).collect()).unwrap();
    assert!(!flat.is_generic());
    assert!(verify_catalan(6, &flat).is_err());
    assert_eq!(plethyverify::catalan::collision_count(6, &flat).unwrap(), 1);
}
