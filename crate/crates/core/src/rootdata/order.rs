use num_rational::Rational64;

use super::datum::BasedRootDatum;
use super::matrix;
use super::twist::Twist;
use crate::error::Result;
use crate::exactnum::{CycloNumber, Field, Poly, QRatFun};

fn q_poly(coeffs: &[i64]) -> Poly<CycloNumber> {
    Poly::new(coeffs.iter().map(|&c| CycloNumber::from_int(c)).collect())
}

/// `|G(F_q)|` as a polynomial in `q`: the central torus contributes
/// `det(q - theta)`, each orbit of `k` simple factors with residual symmetry
/// `sigma` contributes `q^{kN} prod (q^{k d_i} - eps_i)`.
pub fn order_polynomial(datum: &BasedRootDatum, twist: &Twist) -> Result<QRatFun> {
    let mut out = q_poly(&matrix::char_poly(&twist.central_block()));
    let comps = datum.components();
    let comp_of = |node: usize| comps.iter().position(|r| r.contains(&node)).expect("node in a component");
    let perm = twist.permutation();
    let orbits = Twist::orbits_of(|c| comp_of(perm[comps[c].start]), comps.len());
    for orbit in orbits {
        let c0 = orbit[0];
        let k = orbit.len();
        let ty = datum.types()[c0];
        // sigma = perm^k on the nodes of c0
        let sigma: Vec<usize> = comps[c0]
            .clone()
            .map(|mut x| {
                for _ in 0..k {
                    x = perm[x];
                }
                x - comps[c0].start
            })
            .collect();
        let o = Twist::orbits_of(|i| sigma[i], sigma.len()).iter().map(Vec::len).fold(1, num_integer::lcm);
        let mut part = Poly::monomial(CycloNumber::one(), k * ty.positive_root_count());
        for (d, turns) in ty.twisted_degrees(o)? {
            let eps = CycloNumber::from_turns(Rational64::new(turns, o as i64));
            part = part.mul(&Poly::monomial(CycloNumber::one(), k * d as usize).sub(&Poly::constant(eps)));
        }
        out = out.mul(&part);
    }
    QRatFun::new(1, out, Poly::one())
}

/// `det(q - theta)` on `X_*`, the order of the reductive quotient of the
/// Iwahori subgroup modulo its pro-unipotent radical.
pub fn iwahori_quotient_order(_datum: &BasedRootDatum, twist: &Twist) -> QRatFun {
    QRatFun::new(1, q_poly(&matrix::char_poly(twist.theta_dual())), Poly::one()).expect("monic")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::datum::Isogeny;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn setup(spec: &str, iso: Isogeny, t: usize, perm: Option<&[usize]>) -> (BasedRootDatum, Twist) {
        let d = BasedRootDatum::build(spec, &iso, t).unwrap();
        let tw = match perm {
            Some(p) => Twist::from_diagram(&d, p, None).unwrap(),
            None => Twist::identity(&d),
        };
        (d, tw)
    }

    fn at(f: &QRatFun, q: i64) -> BigRational {
        let (re, _) = f.eval_numeric(&BigRational::from_integer(BigInt::from(q))).unwrap();
        BigRational::from_integer(BigInt::from(re.round() as i64))
    }

    #[test]
    fn torus_and_rank_one() {
        let (d, t) = setup("", Isogeny::Adjoint, 1, None);
        assert_eq!(order_polynomial(&d, &t).unwrap(), QRatFun::q_poly(&[-1, 1]));
        let (d, t) = setup("A1", Isogeny::SimplyConnected, 0, None);
        assert_eq!(order_polynomial(&d, &t).unwrap(), QRatFun::q_poly(&[0, -1, 0, 1]));
    }

    #[test]
    fn twisted_tables() {
        let (d, t) = setup("A2", Isogeny::Adjoint, 0, Some(&[1, 0]));
        // q^3 (q^2 - 1)(q^3 + 1)
        assert_eq!(order_polynomial(&d, &t).unwrap(), QRatFun::q_poly(&[0, 0, 0, -1, 0, 1, -1, 0, 1]));
        let (d, t) = setup("D4", Isogeny::Adjoint, 0, Some(&[2, 1, 3, 0]));
        let p = order_polynomial(&d, &t).unwrap();
        // q^12 (q^2 - 1)(q^6 - 1)(q^8 + q^4 + 1)
        let expect = QRatFun::q_poly(&[0; 12].iter().copied().chain([1]).collect::<Vec<_>>())
            .mul(&QRatFun::q_poly(&[-1, 0, 1]))
            .mul(&QRatFun::q_poly(&[-1, 0, 0, 0, 0, 0, 1]))
            .mul(&QRatFun::q_poly(&[1, 0, 0, 0, 1, 0, 0, 0, 1]));
        assert_eq!(p, expect);
        let (d, t) = setup("A1xA1", Isogeny::Adjoint, 0, Some(&[1, 0]));
        assert_eq!(order_polynomial(&d, &t).unwrap(), QRatFun::q_poly(&[0, 0, -1, 0, 0, 0, 1]));
    }

    #[test]
    fn iwahori_quotients() {
        let (d, t) = setup("A1", Isogeny::Adjoint, 0, None);
        assert_eq!(iwahori_quotient_order(&d, &t), QRatFun::q_poly(&[-1, 1]));
        let (d, t) = setup("A2", Isogeny::Adjoint, 0, Some(&[1, 0]));
        assert_eq!(iwahori_quotient_order(&d, &t), QRatFun::q_poly(&[-1, 0, 1]));
        let (d, t) = setup("A2", Isogeny::SimplyConnected, 0, None);
        assert_eq!(iwahori_quotient_order(&d, &t), QRatFun::q_poly(&[1, -2, 1]));
    }

    #[test]
    fn iwahori_quotient_is_product_over_simple_orbits() {
        for (s, p) in [("A3", vec![2, 1, 0]), ("D4", vec![2, 1, 3, 0]), ("E6", vec![5, 1, 4, 3, 2, 0]), ("A1xA1xA1", vec![1, 2, 0])] {
            for iso in [Isogeny::Adjoint, Isogeny::SimplyConnected] {
                let (d, t) = setup(s, iso, 0, Some(&p));
                let expect = t.simple_orbits().iter().fold(QRatFun::one(), |acc, o| {
                    let mut c = vec![0; o.len() + 1];
                    c[0] = -1;
                    c[o.len()] = 1;
                    acc.mul(&QRatFun::q_poly(&c))
                });
                assert_eq!(iwahori_quotient_order(&d, &t), expect, "{s}");
            }
        }
    }

    #[test]
    fn small_values() {
        let (d, t) = setup("A1", Isogeny::SimplyConnected, 0, None);
        let p = order_polynomial(&d, &t).unwrap();
        assert_eq!(at(&p, 2), BigRational::from_integer(6.into()));
        assert_eq!(at(&p, 3), BigRational::from_integer(24.into()));
    }
}
