use num_rational::Rational64;

use super::point::TorusPoint;
use super::wd::UnramifiedWDRep;
use crate::exactnum::{cyclotomic_poly, Poly, QMonomial};
use crate::restricted::RestrictedRootSystem;
use crate::rootdata::{matrix, BasedRootDatum, Twist};

/// Eigenvalues of a finite-order integer matrix, by cyclotomic factorization
/// of its characteristic polynomial.
pub fn finite_order_eigenvalues(theta: &matrix::IMat) -> Vec<QMonomial> {
    let cp = matrix::char_poly(theta);
    let mut p: Poly<num_rational::BigRational> = Poly::new(cp.iter().map(|&c| num_rational::BigRational::from_integer(c.into())).collect());
    let mut out = Vec::new();
    let mut n = 1u64;
    while p.degree().unwrap_or(0) > 0 {
        let phi = cyclotomic_poly(n);
        loop {
            let (quot, rem) = p.div_rem(&phi).expect("monic divisor");
            if !rem.is_zero() {
                break;
            }
            p = quot;
            for k in 1..=n as i64 {
                if num_integer::gcd(k, n as i64) == 1 {
                    out.push(QMonomial::root_of_unity(Rational64::new(k, n as i64)));
                }
            }
        }
        n += 1;
    }
    out
}

/// Eigenvalues of `Ad(r theta)` on the Lie algebra of the dual group, modulo
/// the fixed part of its centre. `dual` is the dual datum (its roots are
/// characters of the torus of `r`) and `dual_twist` the induced twist.
///
/// Each twist orbit `O` of roots of size `l` contributes the `l`-th roots of
/// `eps * prod_{beta in O} beta(r)`, where `eps = -1` exactly when the root is
/// `beta + theta^l beta` for a root `beta` moved by `theta^l`.
pub fn adjoint_eigenvalues(dual: &BasedRootDatum, dual_twist: &Twist, r: &TorusPoint) -> Vec<QMonomial> {
    let mut out = Vec::new();
    for orbit in dual_twist.simple_orbits() {
        out.extend(QMonomial::one().roots(orbit.len() as u32));
    }
    let central = dual_twist.central_block();
    out.extend(finite_order_eigenvalues(&central).into_iter().filter(|e| !e.is_one()));
    for orbit in dual_twist.root_orbits() {
        out.extend(root_orbit_eigenvalues(dual, dual_twist, &orbit, r));
    }
    out.sort();
    out
}

/// Eigenvalues of `Ad(r theta)` on the span of one twist orbit of root spaces.
pub fn root_orbit_eigenvalues(dual: &BasedRootDatum, dual_twist: &Twist, orbit: &[usize], r: &TorusPoint) -> Vec<QMonomial> {
    let l = orbit.len();
    let prod = orbit.iter().fold(QMonomial::one(), |acc, &i| acc.mul(&r.root_value(dual, i)));
    let sigma = |mut b: usize| {
        for _ in 0..l {
            b = dual_twist.on_root(b);
        }
        b
    };
    let target = &dual.root(orbit[0]).simple;
    let flipped = (0..dual.roots().len()).any(|b| {
        let sb = sigma(b);
        sb != b && dual.root(b).simple.iter().zip(&dual.root(sb).simple).zip(target).all(|((x, y), t)| x + y == *t)
    });
    if flipped { prod.neg() } else { prod }.roots(l as u32)
}

/// The `N = 0` representation `Ad(r theta)` on the dual Lie algebra.
pub fn adjoint_rep_semisimplified(dual: &BasedRootDatum, dual_twist: &Twist, r: &TorusPoint) -> UnramifiedWDRep {
    UnramifiedWDRep::from_eigenvalues(adjoint_eigenvalues(dual, dual_twist, r))
}

/// The same eigenvalues assembled class by class from the characteristic
/// factors `1 - X^{m_+} gamma_a(r)` and, for type II, `1 + X^{m_-} gamma_a(r)`.
pub fn adjoint_eigenvalues_from_classes(rrs: &RestrictedRootSystem, r: &TorusPoint) -> Vec<QMonomial> {
    let mut out = Vec::new();
    for orbit in &rrs.simple_orbits {
        out.extend(QMonomial::one().roots(orbit.len() as u32));
    }
    out.extend(finite_order_eigenvalues(&rrs.twist.central_block()).into_iter().filter(|e| !e.is_one()));
    for class in &rrs.classes {
        let g = class.gamma_value(&rrs.datum, r);
        out.extend(g.roots(class.m_plus.to_integer() as u32));
        if class.class_type == crate::restricted::ClassType::II {
            out.extend(g.neg().roots(class.m_minus.to_integer() as u32));
        }
    }
    out.sort();
    out
}
