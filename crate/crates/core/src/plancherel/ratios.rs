use num_rational::Rational64;
use serde::Serialize;

use super::context::GroupContext;
use super::mu::{mu_value, MuOutcome, MuSpec, Prefactor};
use crate::error::{Error, Result};
use crate::exactnum::{CycloNumber, Factored, Field, QMonomial, QRatFun};
use crate::localfactors::{finite_order_eigenvalues, TorusPoint};
use crate::rootdata::{omega_index_ratio, order_polynomial};

#[derive(Clone, Debug, Serialize)]
pub struct RatioItem {
    pub name: String,
    pub value: String,
    #[serde(skip)]
    pub ratfun: QRatFun,
}

/// `prod_z (q - z)` over the eigenvalues of a finite-order matrix.
fn det_q_minus(theta: &crate::rootdata::matrix::IMat) -> Factored {
    let mut acc = Factored::one();
    for z in finite_order_eigenvalues(theta) {
        let f = Factored::one_minus(&z.mul(&QMonomial::q_pow(Rational64::from_integer(-1)))).expect("nonzero");
        acc = acc.mul(&f).mul(&Factored::q_pow(Rational64::from_integer(1)));
    }
    acc
}

fn item(name: &str, f: Factored) -> RatioItem {
    RatioItem { name: name.into(), value: f.to_string(), ratfun: f.to_ratfun() }
}

/// Volume ratios and normalizing constants attached to a group.
pub fn ratio_identities(group: &GroupContext) -> Result<Vec<RatioItem>> {
    let (g, t) = (&group.datum, &group.twist);
    let mut out = Vec::new();
    let r = omega_index_ratio(g, t)?;
    let rr = num_rational::BigRational::new((*r.numer()).into(), (*r.denom()).into());
    out.push(item("omega_index_ratio", Factored::from_rational(rr).expect("nonzero")));

    let central = t.central_block();
    let zdim = central.len() as i64;
    let zorder = det_q_minus(&central);
    out.push(item("central_torus_mass", Factored::q_pow(Rational64::new(zdim, 2)).div(&zorder)));

    let split = finite_order_eigenvalues(&central).iter().filter(|z| z.is_one()).count() as i64;
    let per = Factored::one_minus(&QMonomial::q_pow(Rational64::from_integer(-1))).expect("nonzero").mul(&Factored::q_pow(Rational64::new(1, 2)));
    out.push(item("split_centre_factor", per.pow(split)));

    let torus = det_q_minus(t.theta());
    out.push(item("iwahori_inverse_volume", Factored::q_pow(Rational64::new(g.rank() as i64, 2)).div(&torus)));

    let order = order_polynomial(g, t)?;
    let vol = order.mul(&QMonomial::q_pow(Rational64::new(-(g.dimension() as i64), 2)).to_ratfun());
    out.push(RatioItem { name: "hyperspecial_volume".into(), value: vol.to_string(), ratfun: vol });
    Ok(out)
}

/// At a point where no factor vanishes for generic `q`, the mu-function with
/// a pure `q`-power prefactor tends to 1 as `q -> 1`.
pub fn q_to_one_limit_check(group: &GroupContext, t: &TorusPoint) -> Result<bool> {
    let spec = MuSpec::new(group, Vec::new(), Prefactor::Levi);
    match mu_value(&spec, t) {
        MuOutcome::Value(v) => Ok(v.at_q_one()? == Some(CycloNumber::from_int(1))),
        MuOutcome::Zero(k) => Err(Error::Pole(format!("{k} numerator factors vanish identically; the point is not generic"))),
        MuOutcome::Pole(k) => Err(Error::Pole(format!("{k} denominator factors vanish identically; the point is not generic"))),
        MuOutcome::Indeterminate { zeros, poles } => {
            Err(Error::Pole(format!("{zeros} numerator and {poles} denominator factors vanish; the point is not generic")))
        }
    }
}
