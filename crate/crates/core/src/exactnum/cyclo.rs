use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::field::Field;
use super::poly::Poly;
use crate::error::{Error, Result};

type Q = BigRational;

fn cyclotomic_cache() -> &'static Mutex<HashMap<u64, Poly<Q>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Poly<Q>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `n`-th cyclotomic polynomial with rational coefficients.
pub fn cyclotomic_poly(n: u64) -> Poly<Q> {
    assert!(n > 0, "conductor must be positive");
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 = prod_{d | n} Phi_d
    let mut p = Poly::monomial(<Q as One>::one(), n as usize).sub(&Poly::one());
    for d in 1..n {
        if n % d == 0 {
            p = p.div_rem(&cyclotomic_poly(d)).expect("monic divisor").0;
        }
    }
    cyclotomic_cache().lock().unwrap().insert(n, p.clone());
    p
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u64
}

/// An element of the cyclotomic field `Q(zeta_N)`, stored as a polynomial in
/// `zeta_N` reduced modulo the `N`-th cyclotomic polynomial.
///
/// Rational values are always stored with conductor 1.
#[derive(Clone, Debug)]
pub struct CycloNumber {
    conductor: u64,
    poly: Poly<Q>,
}

impl CycloNumber {
    fn reduced(conductor: u64, poly: Poly<Q>) -> Self {
        let poly = if poly.degree().unwrap_or(0) as u64 >= euler_phi(conductor) {
            poly.div_rem(&cyclotomic_poly(conductor)).expect("monic").1
        } else {
            poly
        };
        if poly.degree().unwrap_or(0) == 0 {
            CycloNumber { conductor: 1, poly }
        } else {
            CycloNumber { conductor, poly }
        }
    }

    pub fn from_rational(q: Q) -> Self {
        CycloNumber { conductor: 1, poly: Poly::constant(q) }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Q::from_integer(n.into()))
    }

    /// `zeta_n^k`
    pub fn root_of_unity(k: i64, n: u64) -> Self {
        let k = k.rem_euclid(n as i64) as u64;
        let g = k.gcd(&n);
        let (k, n) = if k == 0 { (0, 1) } else { (k / g, n / g) };
        Self::reduced(n, Poly::monomial(<Q as One>::one(), k as usize))
    }

    /// `exp(2 pi i * frac)` for a rational `frac`.
    pub fn from_turns(frac: Rational64) -> Self {
        Self::root_of_unity(*frac.numer(), *frac.denom() as u64)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Coefficients in the power basis `1, zeta_N, ..., zeta_N^{phi(N)-1}`.
    pub fn coefficients(&self) -> Vec<Q> {
        let len = euler_phi(self.conductor) as usize;
        (0..len).map(|i| self.poly.coeff(i)).collect()
    }

    pub fn from_coefficients(conductor: u64, coeffs: Vec<Q>) -> Result<Self> {
        if conductor == 0 {
            return Err(Error::InvalidInput("conductor must be positive".into()));
        }
        if coeffs.len() as u64 > euler_phi(conductor) {
            return Err(Error::InvalidInput(format!(
                "conductor {conductor} takes {} coefficients, got {}",
                euler_phi(conductor),
                coeffs.len()
            )));
        }
        Ok(Self::reduced(conductor, Poly::new(coeffs)))
    }

    /// Re-express in `Q(zeta_target)`; `target` must be a multiple of the conductor.
    pub fn embed(&self, target: u64) -> Self {
        assert!(target % self.conductor == 0, "embedding target must be a multiple");
        if target == self.conductor {
            return self.clone();
        }
        let step = (target / self.conductor) as usize;
        Self::reduced(target, self.poly.inflate(step))
    }

    fn aligned(&self, other: &Self) -> (u64, Poly<Q>, Poly<Q>) {
        let l = self.conductor.lcm(&other.conductor);
        (l, self.embed(l).poly, other.embed(l).poly)
    }

    pub fn as_rational(&self) -> Option<Q> {
        if self.conductor == 1 {
            Some(self.poly.coeff(0))
        } else {
            None
        }
    }

    /// Complex conjugation `zeta -> zeta^{-1}`.
    pub fn conj(&self) -> Self {
        let n = self.conductor as usize;
        if n <= 2 {
            return self.clone();
        }
        let mut out = Poly::zero();
        for (k, c) in self.poly.coeffs().iter().enumerate() {
            out = out.add(&Poly::monomial(c.clone(), (n - k) % n));
        }
        Self::reduced(self.conductor, out)
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv().ok_or(Error::DivisionByZero)?))
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv().expect("nonzero base") } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.conductor as f64;
        self.poly.coeffs().iter().enumerate().fold((0.0, 0.0), |(re, im), (k, c)| {
            let a = c.to_f64().unwrap_or(f64::NAN);
            let t = std::f64::consts::TAU * k as f64 / n;
            (re + a * t.cos(), im + a * t.sin())
        })
    }
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        let (_, a, b) = self.aligned(other);
        a == b
    }
}

impl Field for CycloNumber {
    fn zero() -> Self {
        CycloNumber { conductor: 1, poly: Poly::zero() }
    }
    fn one() -> Self {
        Self::from_int(1)
    }
    fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
    fn add(&self, other: &Self) -> Self {
        let (l, a, b) = self.aligned(other);
        Self::reduced(l, a.add(&b))
    }
    fn sub(&self, other: &Self) -> Self {
        let (l, a, b) = self.aligned(other);
        Self::reduced(l, a.sub(&b))
    }
    fn mul(&self, other: &Self) -> Self {
        let (l, a, b) = self.aligned(other);
        Self::reduced(l, a.mul(&b))
    }
    fn neg(&self) -> Self {
        CycloNumber { conductor: self.conductor, poly: self.poly.neg() }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(q) = self.as_rational() {
            return Some(Self::from_rational(q.recip()));
        }
        let (g, s, _) = self.poly.ext_gcd(&cyclotomic_poly(self.conductor));
        debug_assert_eq!(g, Poly::one());
        Some(Self::reduced(self.conductor, s))
    }
    fn from_i64(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.poly.coeffs().iter().enumerate() {
            if Zero::is_zero(c) {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = One::is_one(&a);
            match k {
                0 => write!(f, "{a}")?,
                _ => {
                    if !unit {
                        write!(f, "{a}*")?;
                    }
                    write!(f, "z{}", self.conductor)?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// Wire form `{"N": n, "coeffs": ["p/q", ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycloRecord {
    #[serde(rename = "N")]
    pub n: u64,
    pub coeffs: Vec<String>,
}

pub fn rational_to_string(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::InvalidInput(format!("not a rational number: {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

impl From<&CycloNumber> for CycloRecord {
    fn from(c: &CycloNumber) -> Self {
        CycloRecord { n: c.conductor, coeffs: c.coefficients().iter().map(rational_to_string).collect() }
    }
}

impl TryFrom<&CycloRecord> for CycloNumber {
    type Error = Error;
    fn try_from(r: &CycloRecord) -> Result<Self> {
        let coeffs = r.coeffs.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()?;
        CycloNumber::from_coefficients(r.n, coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(k: i64, n: u64) -> CycloNumber {
        CycloNumber::root_of_unity(k, n)
    }

    #[test]
    fn small_cyclotomic_polys() {
        let c = |n| cyclotomic_poly(n).coeffs().iter().map(|q| q.to_integer().to_i64().unwrap()).collect::<Vec<_>>();
        assert_eq!(c(1), vec![-1, 1]);
        assert_eq!(c(6), vec![1, -1, 1]);
        assert_eq!(c(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn zeta3_sum_and_i_squared() {
        assert_eq!(z(1, 3).add(&z(2, 3)), CycloNumber::from_int(-1));
        assert_eq!(z(1, 4).mul(&z(1, 4)), CycloNumber::from_int(-1));
    }

    #[test]
    fn quotient_of_sixth_and_third_roots() {
        let r = z(1, 6).checked_div(&z(1, 3)).unwrap();
        let (re, im) = r.to_complex();
        let t = std::f64::consts::TAU * (1.0 / 6.0 - 1.0 / 3.0);
        assert!((re - t.cos()).abs() < 1e-12 && (im - t.sin()).abs() < 1e-12);
        assert_eq!(r, z(-1, 6));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(z(1, 5).checked_div(&CycloNumber::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn conjugation_inverts_roots() {
        assert_eq!(z(1, 3).conj(), z(2, 3));
        let a = z(1, 5).add(&CycloNumber::from_int(3)).mul(&z(2, 7));
        assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn record_roundtrip() {
        let a = z(1, 12).add(&CycloNumber::from_rational(Q::new(1.into(), 3.into())));
        let rec = CycloRecord::from(&a);
        assert_eq!(CycloNumber::try_from(&rec).unwrap(), a);
    }
}
