use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use proptest::prelude::*;

use super::*;
use crate::exactnum::{AtUOne, Factored, QMonomial};
use crate::localfactors::{PsiOrder, TorusPoint};

fn q(e: i64) -> QMonomial {
    QMonomial::q_pow(Rational64::from_integer(e))
}

fn point(g: &GroupContext, values: &[QMonomial]) -> TorusPoint {
    TorusPoint::from_simple_values(&g.dual, values).unwrap()
}

#[test]
fn mu_full_levi_is_prefactor() {
    let g = GroupContext::builtin("PGL3").unwrap();
    let spec = MuSpec::new(&g, vec![0, 1], Prefactor::None);
    let t = point(&g, &[q(1), QMonomial::root_of_unity(Rational64::new(1, 5))]);
    assert_eq!(mu_value(&spec, &t), MuOutcome::Value(Factored::one()));
}

#[test]
fn mu_rank_one_generic_matches_float_formula() {
    let g = GroupContext::builtin("PGL2").unwrap();
    let spec = MuSpec::new(&g, vec![], Prefactor::None);
    let x = QMonomial::q_pow(Rational64::new(1, 3));
    let v = mu_value(&spec, &point(&g, &[x])).value().cloned().unwrap();
    for q0 in [2.0f64, 3.0, 5.5] {
        let a = q0.powf(1.0 / 3.0);
        let class = |g: f64| (1.0 - g.powi(-2)) / ((1.0 + 1.0 / g) * (1.0 - 1.0 / (q0 * g)));
        let expect = class(a) * class(1.0 / a);
        let (re, im) = v.eval_numeric(q0).unwrap();
        assert!((re - expect).abs() < 1e-9 * expect.abs().max(1.0) && im.abs() < 1e-9);
    }
}

#[test]
fn mu_rank_one_pole_at_q() {
    let g = GroupContext::builtin("PGL2").unwrap();
    let spec = MuSpec::new(&g, vec![], Prefactor::None);
    assert_eq!(mu_value(&spec, &point(&g, &[q(1)])), MuOutcome::Pole(1));
}

#[test]
fn regularized_rank_one_principal() {
    let g = GroupContext::builtin("PGL2").unwrap();
    let r = g.principal_point();
    let v = regularized_mu(&MuSpec::plancherel(&g), &r);
    // -q^(1/2)/(q+1), checked numerically against the hand formula
    for q0 in [2.0f64, 7.0] {
        let expect = -q0.sqrt() / (q0 + 1.0);
        assert!((v.eval_numeric(q0).unwrap().0 - expect).abs() < 1e-12);
    }
    assert_eq!(v.to_string(), "-q^(1/2)/(q + 1)");
}

#[test]
fn regularized_at_identity_omits_one_factor_per_class() {
    for name in ["PGL2", "SL3", "G2", "PU3", "PU4"] {
        let g = GroupContext::builtin(name).unwrap();
        let r = TorusPoint::identity(g.dual.rank());
        let (num, _) = omitted_factors(&MuSpec::plancherel(&g), &r);
        assert_eq!(num as usize, g.rrs.classes.len(), "{name}");
    }
}

#[test]
fn residual_counts_rank_one() {
    let g = GroupContext::builtin("PGL2").unwrap();
    let rep = is_residual(&g.rrs, &point(&g, &[q(1)])).unwrap();
    assert_eq!((rep.poles, rep.zeros, rep.residual), (1, 0, true));
    let rep = is_residual(&g.rrs, &point(&g, &[QMonomial::one()])).unwrap();
    assert_eq!((rep.poles, rep.zeros, rep.residual), (0, 2, false));
    let rep = is_residual(&g.rrs, &point(&g, &[QMonomial::q_pow(Rational64::new(1, 2))])).unwrap();
    assert_eq!((rep.poles, rep.zeros, rep.residual), (0, 0, false));
}

#[test]
fn residual_rejects_unfixed_point() {
    let g = GroupContext::builtin("PU3").unwrap();
    let r = TorusPoint::new(vec![Rational64::new(1, 3), Rational64::from_integer(0)], vec![Rational64::from_integer(0); 2]).unwrap();
    assert!(matches!(is_residual(&g.rrs, &r), Err(crate::Error::NotThetaFixed)));
}

#[test]
fn residual_search_small_cases() {
    let b = SearchBounds::default();
    let g = GroupContext::builtin("PGL2").unwrap();
    let found = residual_search(&g, b, 1000).unwrap();
    assert_eq!(found.len(), 1);
    let g = GroupContext::builtin("PGL3").unwrap();
    let found = residual_search(&g, b, 1000).unwrap();
    assert_eq!(found.len(), 1);
    assert!(found.iter().any(|(_, p)| g.is_principal(p) || is_residual(&g.rrs, p).unwrap().residual));
    let g = GroupContext::builtin("GL1").unwrap();
    let found = residual_search(&g, b, 1000).unwrap();
    assert_eq!(found.len(), 1);
    assert!(found[0].0.is_empty());
}

#[test]
fn two_routes_rank_one_pins() {
    let g = GroupContext::builtin("PGL2").unwrap();
    let r = g.principal_point();
    let t = gamma_adjoint_two_routes(&g, &r, PsiOrder::MinusOne).unwrap();
    assert_eq!(t.gamma_direct, "q^(1/2)/(q + 1)");
    assert_eq!(t.mu_closed, "-q^(1/2)/(q + 1)");
    assert_eq!(t.ratio, Some(BigRational::from_integer(BigInt::from(-1))));
    let g0 = gamma_direct(&g, &r, PsiOrder::Zero);
    assert_eq!(g0.value().unwrap().to_string(), "q^2/(q + 1)");
}

#[test]
fn two_routes_rejects_non_residual() {
    let g = GroupContext::builtin("PGL2").unwrap();
    let r = point(&g, &[QMonomial::q_pow(Rational64::new(1, 2))]);
    assert!(matches!(gamma_adjoint_two_routes(&g, &r, PsiOrder::MinusOne), Err(crate::Error::NotResidual { .. })));
}

#[test]
fn levi_check_a2() {
    let g = GroupContext::builtin("PGL3").unwrap();
    let r = point(&g, &[q(1), QMonomial::one()]);
    let c = gamma_levi_relative_check(&g, &[0], &r, PsiOrder::MinusOne, 8).unwrap();
    assert_eq!(c.samples.len(), 8);
    assert!(c.sign.is_some());
    assert!(c.samples.iter().all(|s| s.real));
    let full = gamma_levi_relative_check(&g, &[0, 1], &g.principal_point(), PsiOrder::MinusOne, 3).unwrap();
    assert_eq!(full.sign, Some(1));
    assert!(full.samples.iter().all(|s| s.lhs == "1"));
}

#[test]
fn levi_check_torus_rank_one() {
    let g = GroupContext::builtin("SL2").unwrap();
    let c = gamma_levi_relative_check(&g, &[], &TorusPoint::identity(1), PsiOrder::Zero, 8).unwrap();
    assert_eq!(c.sign, Some(1));
}

#[test]
fn formal_degree_rank_one() {
    let pgl = GroupContext::builtin("PGL2").unwrap();
    let sl = GroupContext::builtin("SL2").unwrap();
    let f_pgl = formal_degree(&pgl, &pgl.principal_point(), PsiOrder::MinusOne, 1, SSharp::Principal).unwrap();
    assert_eq!(f_pgl.to_string(), "1/2*q^(1/2)/(q + 1)");
    let f_sl = formal_degree(&sl, &sl.principal_point(), PsiOrder::MinusOne, 1, SSharp::Principal).unwrap();
    assert_eq!(f_sl, f_pgl.mul(&Factored::from_int(2).unwrap()));
    let f3 = formal_degree(&pgl, &pgl.principal_point(), PsiOrder::MinusOne, 1, SSharp::Value(3)).unwrap();
    assert_eq!(f3, f_pgl.mul(&Factored::from_rational(BigRational::new(2.into(), 3.into())).unwrap()));
    let conj = point(&pgl, &[q(-1)]);
    assert_eq!(formal_degree(&pgl, &conj, PsiOrder::MinusOne, 1, SSharp::Principal).unwrap(), f_pgl);
    let g = GroupContext::builtin("Sp4").unwrap();
    let other = point(&g, &[q(-1), QMonomial::minus_one()]);
    assert!(matches!(formal_degree(&g, &other, PsiOrder::MinusOne, 1, SSharp::Principal), Err(crate::Error::NotPrincipal)));
}

#[test]
fn hecke_route_rank_one() {
    let g = GroupContext::builtin("PGL2").unwrap();
    let r = g.principal_point();
    let one = BigRational::from_integer(1.into());
    let h = hecke_formal_degree(&g, &r, &one).unwrap();
    let f = formal_degree(&g, &r, PsiOrder::MinusOne, 1, SSharp::Principal).unwrap();
    assert!(h.eq_up_to_sign(&f.mul(&Factored::from_int(2).unwrap())).is_some());
    assert_eq!(abs(&h).unwrap().to_string(), "q^(1/2)/(q + 1)");
}

#[test]
fn ratio_pins() {
    let get = |name: &str, key: &str| {
        let g = GroupContext::builtin(name).unwrap();
        ratio_identities(&g).unwrap().into_iter().find(|i| i.name == key).unwrap().value
    };
    assert_eq!(get("SL2", "omega_index_ratio"), "2");
    assert_eq!(get("GL2", "split_centre_factor"), "(q - 1)/q^(1/2)");
    assert_eq!(get("U1", "central_torus_mass"), "q^(1/2)/(q + 1)");
    assert_eq!(get("PGL2", "iwahori_inverse_volume"), "q^(1/2)/(q - 1)");
}

#[test]
fn q_to_one_limits() {
    let g = GroupContext::builtin("PGL2").unwrap();
    assert!(q_to_one_limit_check(&g, &point(&g, &[QMonomial::root_of_unity(Rational64::new(1, 5))])).unwrap());
    let g = GroupContext::builtin("PGL3").unwrap();
    let t = point(&g, &[QMonomial::root_of_unity(Rational64::new(1, 5)), QMonomial::root_of_unity(Rational64::new(2, 7))]);
    assert!(q_to_one_limit_check(&g, &t).unwrap());
    assert!(q_to_one_limit_check(&g, &point(&g, &[q(1), q(1)])).is_err());
}

#[test]
fn latex_table_has_rows() {
    let rec = Record {
        identity: "two_routes".into(),
        group: "PGL2".into(),
        point: "q".into(),
        lhs: "a".into(),
        rhs: "b".into(),
        ratio: "-1".into(),
        sign: Some(-1),
        verdict: true,
    };
    let s = to_latex(&[rec.clone(), rec]);
    assert_eq!(s.matches("two\\_routes").count(), 2);
    assert!(s.starts_with("\\begin{longtable}"));
}

fn torsion() -> impl Strategy<Value = QMonomial> {
    (0i64..12, -3i64..=3, 1i64..=3).prop_map(|(a, b, d)| QMonomial::new(Rational64::new(a, 12), Rational64::new(b, d)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mu_is_weyl_invariant(x in torsion(), y in torsion()) {
        let g = GroupContext::builtin("Sp4").unwrap();
        let t = point(&g, &[x, y]);
        let spec = MuSpec::plancherel(&g);
        let base = mu_value(&spec, &t);
        for w in g.weyl_group(1000).unwrap() {
            let v: Vec<QMonomial> = (0..2).map(|i| {
                let vals = [x, y];
                (0..2).fold(QMonomial::one(), |acc, k| acc.mul(&vals[k].powi(w.on_roots[k][i])))
            }).collect();
            prop_assert_eq!(mu_value(&spec, &point(&g, &v)), base.clone());
        }
    }

    #[test]
    fn regularized_agrees_where_finite(x in torsion()) {
        // the twist swaps the two simple roots, so fixed points have equal coordinates
        let g = GroupContext::builtin("PU3").unwrap();
        let t = point(&g, &[x, x]);
        let spec = MuSpec::plancherel(&g);
        if let MuOutcome::Value(v) = mu_value(&spec, &t) {
            prop_assert_eq!(regularized_mu(&spec, &t), v);
        }
    }

    #[test]
    fn gamma_finite_iff_residual(x in torsion(), y in torsion()) {
        let g = GroupContext::builtin("G2").unwrap();
        let t = point(&g, &[x, y]);
        let finite = matches!(gamma_direct(&g, &t, PsiOrder::MinusOne), AtUOne::Value(_));
        prop_assert_eq!(finite, is_residual(&g.rrs, &t).unwrap().residual);
    }
}
