use std::fmt;

use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::cyclo::{CycloNumber, CycloRecord};
use super::field::Field;
use super::poly::Poly;
use crate::error::{Error, Result};

type Q = BigRational;

/// A rational function of `q` with cyclotomic coefficients, written in the
/// variable `w = q^{1/M}`.
///
/// Canonical form: numerator and denominator coprime, denominator monic, and
/// `M` the smallest denominator able to express every exponent.
#[derive(Clone, Debug, PartialEq)]
pub struct QRatFun {
    m: u32,
    num: Poly<CycloNumber>,
    den: Poly<CycloNumber>,
}

impl QRatFun {
    pub fn new(m: u32, num: Poly<CycloNumber>, den: Poly<CycloNumber>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if m == 0 {
            return Err(Error::InvalidInput("q-denominator M must be positive".into()));
        }
        Ok(Self::canonical(m, num, den))
    }

    fn canonical(m: u32, num: Poly<CycloNumber>, den: Poly<CycloNumber>) -> Self {
        if num.is_zero() {
            return QRatFun { m: 1, num, den: Poly::one() };
        }
        let g = num.gcd(&den);
        let mut num = num.div_rem(&g).expect("gcd nonzero").0;
        let mut den = den.div_rem(&g).expect("gcd nonzero").0;
        let lead = den.leading().expect("nonzero").inv().expect("nonzero");
        num = num.scale(&lead);
        den = den.scale(&lead);
        let k = (m as usize).gcd(&num.exponent_gcd()).gcd(&den.exponent_gcd());
        if k > 1 {
            QRatFun { m: m / k as u32, num: num.deflate(k), den: den.deflate(k) }
        } else {
            QRatFun { m, num, den }
        }
    }

    /// Caller guarantees the parts already satisfy the canonical-form invariants.
    pub(crate) fn from_canonical_parts(m: u32, num: Poly<CycloNumber>, den: Poly<CycloNumber>) -> Self {
        debug_assert!(den.leading().is_some_and(|l| l.is_one()));
        QRatFun { m, num, den }
    }

    pub fn constant(c: CycloNumber) -> Self {
        QRatFun { m: 1, num: Poly::constant(c), den: Poly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(CycloNumber::from_int(n))
    }

    pub fn from_rational(q: Q) -> Self {
        Self::constant(CycloNumber::from_rational(q))
    }

    /// `q^e` for a rational exponent.
    pub fn q_pow(e: Rational64) -> Self {
        let m = *e.denom() as u32;
        let k = *e.numer();
        let mono = Poly::monomial(CycloNumber::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Self::canonical(m, mono, Poly::one())
        } else {
            Self::canonical(m, Poly::one(), mono)
        }
    }

    /// `q` itself.
    pub fn q() -> Self {
        Self::q_pow(Rational64::one())
    }

    /// Polynomial in `q` with integer coefficients, lowest degree first.
    pub fn q_poly(coeffs: &[i64]) -> Self {
        Self::canonical(1, Poly::new(coeffs.iter().map(|&c| CycloNumber::from_int(c)).collect()), Poly::one())
    }

    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn numerator(&self) -> &Poly<CycloNumber> {
        &self.num
    }
    pub fn denominator(&self) -> &Poly<CycloNumber> {
        &self.den
    }

    /// Numerator and denominator re-expressed with `w' = q^{1/(k M)}`.
    pub fn rescaled(&self, k: u32) -> (u32, Poly<CycloNumber>, Poly<CycloNumber>) {
        (self.m * k, self.num.inflate(k as usize), self.den.inflate(k as usize))
    }

    fn aligned(&self, other: &Self) -> (u32, [Poly<CycloNumber>; 4]) {
        let l = self.m.lcm(&other.m);
        let (_, a, b) = self.rescaled(l / self.m);
        let (_, c, d) = other.rescaled(l / other.m);
        (l, [a, b, c, d])
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul(&other.inv().expect("nonzero")))
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv().expect("nonzero base") } else { self.clone() };
        QRatFun { m: base.m, num: base.num.pow(e.unsigned_abs() as u32), den: base.den.pow(e.unsigned_abs() as u32) }
    }

    /// Applies `zeta -> zeta^{-1}` to every coefficient; `q` is real so `w` is fixed.
    pub fn conj(&self) -> Self {
        Self::canonical(self.m, self.num.map(CycloNumber::conj), self.den.map(CycloNumber::conj))
    }

    /// Value at `q = 1` (`w = 1`); errors on a pole there.
    pub fn at_q_one(&self) -> Result<CycloNumber> {
        let one = CycloNumber::one();
        let d = self.den.eval(&one);
        if d.is_zero() {
            return Err(Error::Pole("q = 1".into()));
        }
        Ok(self.num.eval(&one).checked_div(&d)?)
    }

    /// The value if this function is a constant.
    pub fn as_constant(&self) -> Option<CycloNumber> {
        if self.num.degree().unwrap_or(0) == 0 && self.den.degree() == Some(0) {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    /// Floating evaluation at a rational `q0 > 0`. Test oracle only.
    pub fn eval_numeric(&self, q0: &Q) -> Result<(f64, f64)> {
        if !q0.is_positive() {
            return Err(Error::InvalidInput("q0 must be positive".into()));
        }
        if self.m == 1 {
            let x = CycloNumber::from_rational(q0.clone());
            if self.den.eval(&x).is_zero() {
                return Err(Error::Pole(format!("q = {q0}")));
            }
        }
        let w = q0.to_f64().unwrap().powf(1.0 / self.m as f64);
        let (dr, di, scale) = eval_complex(&self.den, w);
        if (dr * dr + di * di).sqrt() <= 1e-12 * scale {
            return Err(Error::Pole(format!("q = {q0}")));
        }
        let (nr, ni, _) = eval_complex(&self.num, w);
        let d2 = dr * dr + di * di;
        Ok(((nr * dr + ni * di) / d2, (ni * dr - nr * di) / d2))
    }

    pub fn to_record(&self) -> RatFunRecord {
        RatFunRecord {
            m: self.m,
            num: self.num.coeffs().iter().map(CycloRecord::from).collect(),
            den: self.den.coeffs().iter().map(CycloRecord::from).collect(),
        }
    }

    pub fn from_record(r: &RatFunRecord) -> Result<Self> {
        let conv = |v: &[CycloRecord]| -> Result<Poly<CycloNumber>> {
            Ok(Poly::new(v.iter().map(CycloNumber::try_from).collect::<Result<Vec<_>>>()?))
        };
        Self::new(r.m, conv(&r.num)?, conv(&r.den)?)
    }

    /// LaTeX rendering with `q` as the variable.
    pub fn to_latex(&self) -> String {
        let n = poly_string(&self.num, self.m, true);
        if self.den.degree() == Some(0) && self.den.coeff(0).is_one() {
            return n;
        }
        format!("\\frac{{{}}}{{{}}}", n, poly_string(&self.den, self.m, true))
    }
}

fn eval_complex(p: &Poly<CycloNumber>, w: f64) -> (f64, f64, f64) {
    let mut re = 0.0;
    let mut im = 0.0;
    let mut scale = 0.0;
    for (k, c) in p.coeffs().iter().enumerate() {
        let (a, b) = c.to_complex();
        let wk = w.powi(k as i32);
        re += a * wk;
        im += b * wk;
        scale += (a * a + b * b).sqrt() * wk;
    }
    (re, im, scale)
}

fn q_power_string(k: usize, m: u32, latex: bool) -> String {
    let e = Rational64::new(k as i64, m as i64);
    if e.is_zero() {
        String::new()
    } else if e.is_one() {
        "q".into()
    } else if e.is_integer() {
        if latex {
            format!("q^{{{}}}", e.numer())
        } else {
            format!("q^{}", e.numer())
        }
    } else if latex {
        format!("q^{{{}/{}}}", e.numer(), e.denom())
    } else {
        format!("q^({}/{})", e.numer(), e.denom())
    }
}

fn poly_string(p: &Poly<CycloNumber>, m: u32, latex: bool) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let qp = q_power_string(k, m, latex);
        let cs = match c.as_rational() {
            Some(r) => {
                let neg = r.is_negative();
                let a = r.abs();
                let body = if One::is_one(&a) && !qp.is_empty() {
                    qp.clone()
                } else if qp.is_empty() {
                    rat_string(&a, latex)
                } else {
                    format!("{}{}{}", rat_string(&a, latex), if latex { "" } else { "*" }, qp)
                };
                (neg, body)
            }
            None => {
                let body = if qp.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c}){}{}", if latex { "" } else { "*" }, qp)
                };
                (false, body)
            }
        };
        terms.push(cs);
    }
    let mut out = String::new();
    for (i, (neg, body)) in terms.into_iter().enumerate() {
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

fn rat_string(r: &Q, latex: bool) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else if latex {
        format!("\\tfrac{{{}}}{{{}}}", r.numer(), r.denom())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for QRatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = poly_string(&self.num, self.m, false);
        if self.den.degree() == Some(0) {
            return write!(f, "{n}");
        }
        let d = poly_string(&self.den, self.m, false);
        let wrap = |s: String, p: &Poly<CycloNumber>| {
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(n, &self.num), wrap(d, &self.den))
    }
}

impl Field for QRatFun {
    fn zero() -> Self {
        QRatFun { m: 1, num: Poly::zero(), den: Poly::one() }
    }
    fn one() -> Self {
        Self::from_int(1)
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        let (l, [a, b, c, d]) = self.aligned(other);
        Self::canonical(l, a.mul(&d).add(&c.mul(&b)), b.mul(&d))
    }
    fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    fn mul(&self, other: &Self) -> Self {
        let (l, [a, b, c, d]) = self.aligned(other);
        Self::canonical(l, a.mul(&c), b.mul(&d))
    }
    fn neg(&self) -> Self {
        QRatFun { m: self.m, num: self.num.neg(), den: self.den.clone() }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::canonical(self.m, self.den.clone(), self.num.clone()))
        }
    }
    fn from_i64(n: i64) -> Self {
        Self::from_int(n)
    }
}

/// Wire form `{"M": int, "num": [cyclo, ...], "den": [cyclo, ...]}`, coefficients
/// of `w^0, w^1, ...` where `w = q^{1/M}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFunRecord {
    #[serde(rename = "M")]
    pub m: u32,
    pub num: Vec<CycloRecord>,
    pub den: Vec<CycloRecord>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(e: (i64, i64)) -> QRatFun {
        QRatFun::q_pow(Rational64::new(e.0, e.1))
    }

    #[test]
    fn half_powers_cancel() {
        let a = QRatFun::q_poly(&[-1, 1]).checked_div(&q((1, 2))).unwrap();
        let b = a.mul(&q((1, 2)));
        assert_eq!(b, QRatFun::q_poly(&[-1, 1]));
        assert_eq!(b.m(), 1);
    }

    #[test]
    fn geometric_factorization() {
        let one = QRatFun::one();
        let a = one.sub(&q((-2, 1))).checked_div(&one.sub(&q((-1, 1)))).unwrap();
        assert_eq!(a, one.add(&q((-1, 1))));
    }

    #[test]
    fn product_is_expanded_canonically() {
        let a = QRatFun::q_poly(&[-1, 0, 1]).mul(&QRatFun::q_poly(&[1, 0, 0, 1]));
        assert_eq!(a, QRatFun::q_poly(&[-1, 0, 1, -1, 0, 1]));
        assert_eq!(a.to_string(), "q^5 - q^3 + q^2 - 1");
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(QRatFun::one().checked_div(&QRatFun::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn numeric_evaluation() {
        let close = |a: (f64, f64), b: f64| (a.0 - b).abs() < 1e-12 && a.1.abs() < 1e-12;
        let four = Q::from_integer(4.into());
        assert!(close(QRatFun::q_poly(&[-1, 1]).eval_numeric(&four).unwrap(), 3.0));
        assert!(close(q((1, 2)).eval_numeric(&four).unwrap(), 2.0));
        let f = QRatFun::q_poly(&[-1, 0, 1]).checked_div(&QRatFun::q_poly(&[1, 1])).unwrap();
        assert!(close(f.eval_numeric(&Q::from_integer(7.into())).unwrap(), 6.0));
        let g = QRatFun::one().checked_div(&QRatFun::q_poly(&[-4, 1])).unwrap();
        assert!(matches!(g.eval_numeric(&four), Err(Error::Pole(_))));
    }

    #[test]
    fn conjugation() {
        let f = q((1, 2)).checked_div(&QRatFun::q_poly(&[1, 1])).unwrap();
        assert_eq!(f.conj(), f);
        let z3 = QRatFun::constant(CycloNumber::root_of_unity(1, 3)).mul(&QRatFun::q());
        assert_eq!(z3.conj(), QRatFun::constant(CycloNumber::root_of_unity(2, 3)).mul(&QRatFun::q()));
    }

    #[test]
    fn record_roundtrip() {
        let f = q((1, 2)).checked_div(&QRatFun::q_poly(&[1, 1])).unwrap();
        let json = serde_json::to_string(&f.to_record()).unwrap();
        let back: RatFunRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(QRatFun::from_record(&back).unwrap(), f);
    }
}
