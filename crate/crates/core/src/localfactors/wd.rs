use std::collections::BTreeMap;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{AtUOne, Factored, QMonomial, UProduct};

/// Summand `(lambda-line of Frobenius) tensor Sym^n`, with multiplicity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Summand {
    pub lambda: QMonomial,
    pub n: u32,
    pub mult: u32,
}

/// An unramified Weil-Deligne representation `V = sum V_n tensor Sym^n`,
/// stored as a sorted multiset of summands.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UnramifiedWDRep {
    summands: Vec<Summand>,
}

/// Additive character: conductor exponent 0 or -1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PsiOrder {
    Zero,
    MinusOne,
}

impl PsiOrder {
    pub fn from_int(k: i64) -> Result<Self> {
        match k {
            0 => Ok(PsiOrder::Zero),
            -1 => Ok(PsiOrder::MinusOne),
            _ => Err(Error::InvalidInput(format!("psi order must be 0 or -1, got {k}"))),
        }
    }
}

impl UnramifiedWDRep {
    pub fn new(summands: impl IntoIterator<Item = Summand>) -> Self {
        let mut acc: BTreeMap<(QMonomial, u32), u32> = BTreeMap::new();
        for s in summands {
            if s.mult > 0 {
                *acc.entry((s.lambda, s.n)).or_insert(0) += s.mult;
            }
        }
        UnramifiedWDRep { summands: acc.into_iter().map(|((lambda, n), mult)| Summand { lambda, n, mult }).collect() }
    }

    /// Direct sum of one-dimensional Frobenius lines with `N = 0`.
    pub fn from_eigenvalues(eigs: impl IntoIterator<Item = QMonomial>) -> Self {
        Self::new(eigs.into_iter().map(|lambda| Summand { lambda, n: 0, mult: 1 }))
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    pub fn dim(&self) -> u32 {
        self.summands.iter().map(|s| s.mult * (s.n + 1)).sum()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        Self::new(self.summands.iter().chain(&other.summands).copied())
    }

    pub fn dual(&self) -> Self {
        Self::new(self.summands.iter().map(|s| Summand { lambda: s.lambda.inv(), ..*s }))
    }

    pub fn is_self_dual(&self) -> bool {
        self.dual() == *self
    }

    /// Eigenvalues `lambda q^{k - n/2}`, `k = 0..n`, of Frobenius on all of `V`.
    pub fn frobenius_semisimple_eigenvalues(&self) -> Vec<QMonomial> {
        let mut out = Vec::new();
        for s in &self.summands {
            for k in 0..=s.n {
                let e = s.lambda.mul(&QMonomial::q_pow(Rational64::new(2 * k as i64 - s.n as i64, 2)));
                out.extend(std::iter::repeat_n(e, s.mult as usize));
            }
        }
        out.sort();
        out
    }

    pub fn semisimplify(&self) -> Self {
        Self::from_eigenvalues(self.frobenius_semisimple_eigenvalues())
    }

    /// `L(s, rho) = prod (1 - u lambda q^{-n/2})^{-mult}`, from the kernel of `N`.
    pub fn l_factor(&self, dual: bool) -> UProduct {
        let mut p = UProduct::one();
        for s in &self.summands {
            let lam = if dual { s.lambda.inv() } else { s.lambda };
            p.push(lam.mul(&QMonomial::q_pow(Rational64::new(-(s.n as i64), 2))), Rational64::from_integer(1), -(s.mult as i64));
        }
        p
    }

    /// `L(1 - s, rho^vee)`: `u` is replaced by `q^{-1} u^{-1}`.
    pub fn l_factor_reflected(&self) -> UProduct {
        let mut p = UProduct::one();
        for s in &self.summands {
            let e = s.lambda.inv().mul(&QMonomial::q_pow(Rational64::new(-(s.n as i64) - 2, 2)));
            p.push(e, Rational64::from_integer(-1), -(s.mult as i64));
        }
        p
    }

    /// `epsilon(s, rho, psi)`: the unramified part is 1 for `psi` of order 0, and
    /// `det(-u Fr | V / V^N)` comes from the lines of `Sym^n` off the kernel.
    /// Order -1 multiplies by `q^{dim (s - 1/2)}`.
    pub fn epsilon_factor(&self, psi: PsiOrder) -> UProduct {
        let mut c = QMonomial::one();
        let mut uexp = 0i64;
        for s in &self.summands {
            for k in 1..=s.n {
                let e = s.lambda.mul(&QMonomial::q_pow(Rational64::new(2 * k as i64 - s.n as i64, 2))).neg();
                c = c.mul(&e.powi(s.mult as i64));
                uexp += s.mult as i64;
            }
        }
        if psi == PsiOrder::MinusOne {
            let d = self.dim() as i64;
            c = c.mul(&QMonomial::q_pow(Rational64::new(-d, 2)));
            uexp -= d;
        }
        UProduct { coefficient: Factored::monomial(&c), u_exp: Rational64::from_integer(uexp), factors: Vec::new() }
    }

    /// `gamma(s) = epsilon(s) L(1 - s, rho^vee) / L(s, rho)` as a product in `u`.
    pub fn gamma_product(&self, psi: PsiOrder) -> UProduct {
        self.epsilon_factor(psi).mul(&self.l_factor_reflected()).div(&self.l_factor(false))
    }

    /// `gamma(0, rho, psi)`, or its order of vanishing at `s = 0`.
    pub fn gamma_factor(&self, psi: PsiOrder) -> AtUOne<Factored> {
        self.gamma_product(psi).at_u_one()
    }

    /// `gamma(0, rho) / gamma(0, rho_ss)`, which should be a sign.
    pub fn prop_a1_ratio(&self, psi: PsiOrder) -> Result<Factored> {
        if !self.is_self_dual() {
            return Err(Error::NotSelfDual);
        }
        let finite = |g: AtUOne<Factored>| match g {
            AtUOne::Value(v) => Ok(v),
            AtUOne::Zero(k) => Err(Error::GammaVanishes(k)),
            AtUOne::Pole(k) => Err(Error::GammaPole(k)),
        };
        let a = finite(self.gamma_factor(psi))?;
        let b = finite(self.semisimplify().gamma_factor(psi))?;
        Ok(a.div(&b))
    }

    pub fn to_record(&self) -> RepRecord {
        RepRecord {
            summands: self
                .summands
                .iter()
                .map(|s| {
                    let t = s.lambda.turns();
                    SummandRecord {
                        zeta: ZetaRecord { n: *t.denom() as u64, k: *t.numer() },
                        qexp: s.lambda.qexp().to_string(),
                        n: s.n,
                        mult: s.mult,
                    }
                })
                .collect(),
        }
    }

    pub fn from_record(r: &RepRecord) -> Result<Self> {
        let mut out = Vec::new();
        for s in &r.summands {
            if s.zeta.n == 0 {
                return Err(Error::InvalidInput("zeta order must be positive".into()));
            }
            let qexp: Rational64 = s.qexp.trim().parse().map_err(|_| Error::InvalidInput(format!("bad qexp {:?}", s.qexp)))?;
            let turns = Rational64::new(s.zeta.k, s.zeta.n as i64);
            out.push(Summand { lambda: QMonomial::new(turns, qexp), n: s.n, mult: s.mult });
        }
        if out.is_empty() {
            return Ok(Self::default());
        }
        Ok(Self::new(out))
    }
}

impl std::fmt::Display for UnramifiedWDRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .summands
            .iter()
            .map(|s| {
                let m = if s.mult > 1 { format!("{}x", s.mult) } else { String::new() };
                format!("{m}({}, Sym^{})", s.lambda, s.n)
            })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaRecord {
    #[serde(rename = "N")]
    pub n: u64,
    pub k: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummandRecord {
    pub zeta: ZetaRecord,
    pub qexp: String,
    pub n: u32,
    pub mult: u32,
}

/// Wire form `{"summands": [{"zeta": {"N", "k"}, "qexp": "p/q", "n", "mult"}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepRecord {
    pub summands: Vec<SummandRecord>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::QRatFun;

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    fn line(lambda: QMonomial, n: u32) -> UnramifiedWDRep {
        UnramifiedWDRep::new([Summand { lambda, n, mult: 1 }])
    }

    fn value(g: AtUOne<Factored>) -> QRatFun {
        g.value().expect("finite nonzero").to_ratfun()
    }

    #[test]
    fn frobenius_eigenvalues() {
        assert_eq!(line(QMonomial::one(), 0).frobenius_semisimple_eigenvalues(), vec![QMonomial::one()]);
        let mut e = line(QMonomial::one(), 2).frobenius_semisimple_eigenvalues();
        e.sort_by_key(|m| m.qexp());
        assert_eq!(e, vec![QMonomial::q_pow(r(-1, 1)), QMonomial::one(), QMonomial::q_pow(r(1, 1))]);
        let mut e = line(QMonomial::minus_one(), 1).frobenius_semisimple_eigenvalues();
        e.sort_by_key(|m| m.qexp());
        assert_eq!(e, vec![QMonomial::new(r(1, 2), r(-1, 2)), QMonomial::new(r(1, 2), r(1, 2))]);
    }

    #[test]
    fn l_factors() {
        let triv = line(QMonomial::one(), 0);
        assert_eq!(triv.l_factor(false), UProduct::one().with(QMonomial::one(), r(1, 1), -1));
        let st = line(QMonomial::one(), 2);
        assert_eq!(st.l_factor(false), UProduct::one().with(QMonomial::q_pow(r(-1, 1)), r(1, 1), -1));
        assert_eq!(st.l_factor(true), st.dual().l_factor(false));
    }

    #[test]
    fn epsilon_factors() {
        let triv = line(QMonomial::one(), 0);
        assert!(triv.epsilon_factor(PsiOrder::Zero).coefficient.is_constant());
        let st = line(QMonomial::one(), 2);
        let e = st.epsilon_factor(PsiOrder::Zero);
        assert_eq!(e.u_exp, r(2, 1));
        assert_eq!(e.coefficient.to_ratfun(), QRatFun::q());
        let e1 = triv.epsilon_factor(PsiOrder::MinusOne);
        assert_eq!(e1.u_exp, r(-1, 1));
        assert_eq!(e1.coefficient.to_ratfun(), QRatFun::q_pow(r(-1, 2)));
    }

    #[test]
    fn gamma_values() {
        assert_eq!(line(QMonomial::one(), 0).gamma_factor(PsiOrder::Zero), AtUOne::Zero(1));
        // 2q/(q+1)
        let g = value(line(QMonomial::minus_one(), 0).gamma_factor(PsiOrder::Zero));
        assert_eq!(g, QRatFun::q_poly(&[0, 2]).checked_div(&QRatFun::q_poly(&[1, 1])).unwrap());
        let ss = UnramifiedWDRep::from_eigenvalues([QMonomial::q_pow(r(-1, 1)), QMonomial::one(), QMonomial::q_pow(r(1, 1))]);
        let expect = QRatFun::q_poly(&[0, 0, 1]).checked_div(&QRatFun::q_poly(&[1, 1])).unwrap();
        assert_eq!(value(ss.gamma_factor(PsiOrder::Zero)), expect);
        let st = line(QMonomial::one(), 2);
        assert_eq!(value(st.gamma_factor(PsiOrder::Zero)), expect);
        let half = QRatFun::q_pow(r(1, 2)).checked_div(&QRatFun::q_poly(&[1, 1])).unwrap();
        assert_eq!(value(st.gamma_factor(PsiOrder::MinusOne)), half);
    }

    #[test]
    fn nilpotent_part_changes_gamma_by_a_sign() {
        let st = line(QMonomial::one(), 2);
        assert_eq!(st.prop_a1_ratio(PsiOrder::Zero).unwrap(), Factored::one());
        assert_eq!(line(QMonomial::one(), 0).prop_a1_ratio(PsiOrder::Zero), Err(Error::GammaVanishes(1)));
        let not_self_dual = line(QMonomial::q_pow(r(1, 1)), 0);
        assert_eq!(not_self_dual.prop_a1_ratio(PsiOrder::Zero), Err(Error::NotSelfDual));
    }

    #[test]
    fn records_roundtrip() {
        let v = line(QMonomial::new(r(1, 3), r(1, 2)), 1).direct_sum(&line(QMonomial::minus_one(), 0));
        assert_eq!(UnramifiedWDRep::from_record(&v.to_record()).unwrap(), v);
        let js = r#"{"summands":[{"zeta":{"N":1,"k":0},"qexp":"0","n":2,"mult":1}]}"#;
        let rec: RepRecord = serde_json::from_str(js).unwrap();
        assert_eq!(UnramifiedWDRep::from_record(&rec).unwrap(), line(QMonomial::one(), 2));
    }

    #[test]
    fn gamma_is_independent_of_representation() {
        let v = line(QMonomial::minus_one(), 2).direct_sum(&line(QMonomial::one(), 1));
        let g = v.gamma_product(PsiOrder::Zero);
        let dense = g.to_uratfun().unwrap().limit_at_u_one();
        assert_eq!(g.at_u_one().map(|f| f.to_ratfun()), dense);
    }
}
