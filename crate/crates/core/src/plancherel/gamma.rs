use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::context::GroupContext;
use super::mu::{mu_value, regularized_mu, MuOutcome, MuSpec, Prefactor};
use super::residual::{is_residual, is_residual_levi};
use crate::error::{Error, Result};
use crate::exactnum::{AtUOne, Factored, QMonomial};
use crate::localfactors::{adjoint_rep_semisimplified, root_orbit_eigenvalues, PsiOrder, TorusPoint, UnramifiedWDRep};
use crate::rootdata::fundamental_group_invariants;

/// `gamma(0, Ad(r theta), psi)` of the semisimplified adjoint parameter.
pub fn gamma_direct(group: &GroupContext, r: &TorusPoint, psi: PsiOrder) -> AtUOne<Factored> {
    adjoint_rep_semisimplified(&group.dual, &group.dual_twist, r).gamma_factor(psi)
}

fn finite(v: AtUOne<Factored>) -> Result<Factored> {
    match v {
        AtUOne::Value(x) => Ok(x),
        AtUOne::Zero(k) => Err(Error::GammaVanishes(k)),
        AtUOne::Pole(k) => Err(Error::GammaPole(k)),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoRoutes {
    pub gamma_direct: String,
    pub mu_closed: String,
    /// `gamma_direct / mu_closed`, a rational constant.
    pub d: String,
    pub d_smooth: bool,
    #[serde(skip)]
    pub gamma: Factored,
    #[serde(skip)]
    pub mu: Factored,
    #[serde(skip)]
    pub ratio: Option<BigRational>,
}

/// `det(1 - theta)` on the non-split part of the centre.
pub fn central_index(group: &GroupContext) -> BigInt {
    let mut n = Factored::one();
    for z in crate::localfactors::finite_order_eigenvalues(&group.dual_twist.central_block()) {
        if let Some(f) = Factored::one_minus(&z) {
            n = n.mul(&f);
        }
    }
    n.as_rational().map(|x| x.to_integer()).unwrap_or_else(BigInt::one)
}

/// True when `x / n` is `+-2^a 3^b` with integers `a`, `b`.
fn is_smooth(x: &BigRational, n: &BigInt) -> bool {
    if x.is_zero() {
        return false;
    }
    let y = x / BigRational::from_integer(n.clone());
    let strip = |mut v: BigInt| {
        v = v.abs();
        for p in [2u32, 3] {
            let p = BigInt::from(p);
            while (&v % &p).is_zero() {
                v /= &p;
            }
        }
        v.is_one()
    };
    strip(y.numer().clone()) && strip(y.denom().clone())
}

/// The adjoint gamma factor at a residual point computed directly and through
/// the regularized mu-function with the closed-formula prefactor.
pub fn gamma_adjoint_two_routes(group: &GroupContext, r: &TorusPoint, psi: PsiOrder) -> Result<TwoRoutes> {
    if !group.is_theta_fixed(r) {
        return Err(Error::NotThetaFixed);
    }
    let rep = is_residual(&group.rrs, r)?;
    if !rep.residual {
        return Err(Error::NotResidual { excess: rep.poles as i64 - rep.zeros as i64, rank: rep.target });
    }
    let gamma = finite(gamma_direct(group, r, psi))?;
    let mu = regularized_mu(&MuSpec::plancherel(group), r);
    let q = gamma.div(&mu);
    let ratio = q.as_rational();
    let n = central_index(group);
    Ok(TwoRoutes {
        gamma_direct: gamma.to_string(),
        mu_closed: mu.to_string(),
        d: ratio.as_ref().map(|x| x.to_string()).unwrap_or_else(|| q.to_string()),
        d_smooth: ratio.as_ref().is_some_and(|x| is_smooth(x, &n)),
        gamma,
        mu,
        ratio,
    })
}

/// Reality of the adjoint gamma factor at `r`: its complex conjugate agrees with it.
pub fn gamma_is_real(group: &GroupContext, r: &TorusPoint, psi: PsiOrder) -> Result<bool> {
    let g = finite(gamma_direct(group, r, psi))?;
    Ok(g.conj() == g)
}

#[derive(Clone, Debug, Serialize)]
pub struct LeviSample {
    pub exponent: String,
    pub lhs: String,
    pub rhs: String,
    pub sign: Option<i8>,
    pub real: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct LeviCheck {
    pub samples: Vec<LeviSample>,
    /// Common value of `lhs / rhs`, when it is constant.
    pub sign: Option<i8>,
    /// Sample exponents skipped because one side had a zero or pole.
    pub skipped: usize,
}

/// Compare `gamma(0, Ad on g/m, z r)` with the Levi-relative mu-function at
/// `z r`, for `k` central elements `z` with `alpha(z) = q^c` on the removed
/// orbits. `r` must be residual for the Levi.
pub fn gamma_levi_relative_check(group: &GroupContext, levi: &[usize], r: &TorusPoint, psi: PsiOrder, k: usize) -> Result<LeviCheck> {
    let res = is_residual_levi(&group.rrs, levi, r)?;
    if !res.residual {
        return Err(Error::NotResidual { excess: res.poles as i64 - res.zeros as i64, rank: res.target });
    }
    let split = group.rrs.levi_subsystem(levi);
    let spec = MuSpec::new(group, levi.to_vec(), Prefactor::Levi);
    let n_out: usize = split.outside.iter().map(|&c| group.rrs.classes[c].size()).sum();
    // the identity is normalized for psi of order -1
    let shift = match psi {
        PsiOrder::MinusOne => Factored::one(),
        PsiOrder::Zero => Factored::q_pow(Rational64::new(-(n_out as i64), 2)),
    };
    let base = group.simple_values(r);
    let orbits = group.dual_twist.root_orbits();
    let mut out = LeviCheck { samples: Vec::new(), sign: None, skipped: 0 };
    let mut j = 0i64;
    while out.samples.len() < k && (j as usize) < 4 * k + 8 {
        j += 1;
        if j % 7 == 0 {
            continue;
        }
        let c = Rational64::new(j, 7);
        let mut values = base.clone();
        for (o, orbit) in group.rrs.simple_orbits.iter().enumerate() {
            if !levi.contains(&o) {
                for &i in orbit {
                    values[i] = values[i].mul(&QMonomial::q_pow(c));
                }
            }
        }
        let zr = TorusPoint::from_simple_values(&group.dual, &values)?;
        let mut eigs = Vec::new();
        for orbit in &orbits {
            if split.outside.iter().any(|&c| group.rrs.classes[c].members.contains(&orbit[0])) {
                eigs.extend(root_orbit_eigenvalues(&group.dual, &group.dual_twist, orbit, &zr));
            }
        }
        let lhs = UnramifiedWDRep::from_eigenvalues(eigs).gamma_factor(psi);
        match (lhs, mu_value(&spec, &zr)) {
            (AtUOne::Value(l), MuOutcome::Value(rv)) => {
                let l = l.mul(&shift);
                out.samples.push(LeviSample {
                    exponent: c.to_string(),
                    lhs: l.to_string(),
                    rhs: rv.to_string(),
                    sign: l.eq_up_to_sign(&rv),
                    real: l.conj() == l,
                });
            }
            _ => out.skipped += 1,
        }
    }
    out.sign = match out.samples.first().and_then(|s| s.sign) {
        Some(s) if out.samples.len() == k && out.samples.iter().all(|x| x.sign == Some(s)) => Some(s),
        _ => None,
    };
    Ok(out)
}

/// `|S^sharp|` for the principal series case: the twist-invariant fundamental group of `G`.
pub fn principal_s_sharp(group: &GroupContext) -> u64 {
    fundamental_group_invariants(&group.datum, &group.twist).order()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SSharp {
    Value(u64),
    /// Use the principal-series value; requires a principal point.
    Principal,
}

/// `dim rho / |S^sharp| * |gamma(0, Ad, psi)|` at a residual point.
pub fn formal_degree(group: &GroupContext, r: &TorusPoint, psi: PsiOrder, dim_rho: u64, s: SSharp) -> Result<Factored> {
    let rep = is_residual(&group.rrs, r)?;
    if !rep.residual {
        return Err(Error::NotResidual { excess: rep.poles as i64 - rep.zeros as i64, rank: rep.target });
    }
    if dim_rho == 0 {
        return Err(Error::InvalidInput("dim rho must be positive".into()));
    }
    let s = match s {
        SSharp::Value(n) if n > 0 => n,
        SSharp::Value(_) => return Err(Error::InvalidInput("|S#| must be positive".into())),
        SSharp::Principal => {
            if !group.is_principal(r) {
                return Err(Error::NotPrincipal);
            }
            principal_s_sharp(group)
        }
    };
    let g = finite(gamma_direct(group, r, psi))?;
    let g = abs(&g)?;
    let c = BigRational::new(BigInt::from(dim_rho), BigInt::from(s));
    Ok(g.mul(&Factored::from_rational(c).expect("nonzero")))
}

/// Sign-normalize a real value so that it is positive for large `q`.
pub fn abs(x: &Factored) -> Result<Factored> {
    let (re, _) = x.eval_numeric(1.0e3)?;
    Ok(if re < 0.0 { x.neg() } else { x.clone() })
}

/// `vol(I)^{-1} * d_H * m^(r)` with the Levi prefactor, where the Iwahori volume is
/// `q^{-dim t/2} det(q - theta | t)`.
pub fn hecke_formal_degree(group: &GroupContext, r: &TorusPoint, d_h: &BigRational) -> Result<Factored> {
    let rep = is_residual(&group.rrs, r)?;
    if !rep.residual {
        return Err(Error::NotResidual { excess: rep.poles as i64 - rep.zeros as i64, rank: rep.target });
    }
    let tor = group.torus_eigenvalues();
    let mut vol = Factored::q_pow(Rational64::new(-(tor.len() as i64), 2));
    for z in &tor {
        vol = vol.mul(&Factored::q_pow(Rational64::one()).mul(&Factored::one_minus(&z.mul(&QMonomial::q_pow(-Rational64::one()))).expect("nonzero")));
    }
    let spec = MuSpec::new(group, Vec::new(), Prefactor::Monomial(QMonomial::q_pow(Rational64::new(tor.len() as i64 - group.adjoint_dimension() as i64, 2))));
    let m = regularized_mu(&spec, r);
    let d = Factored::from_rational(d_h.clone()).ok_or_else(|| Error::InvalidInput("d_H must be nonzero".into()))?;
    Ok(d.mul(&m).div(&vol))
}
