use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::{BigRational, Rational64};
use num_traits::{ToPrimitive, Zero};

use super::cyclo::{cyclotomic_poly, CycloNumber};
use super::field::Field;
use super::monomial::{reduce_turns, QMonomial};
use super::poly::Poly;
use super::qratfun::QRatFun;
use crate::error::{Error, Result};

/// Nonzero rational function of `q` kept fully factored over roots of unity:
///
/// `c * w^e * prod_eta (w - exp(2 pi i eta))^{m_eta}` with `w = q^{1/M}`.
///
/// Every product of binomials `1 - zeta q^c` lands in this group, and the
/// factored form is canonical once `M` is minimal, so multiplication,
/// division, conjugation and equality never need polynomial gcds.
#[derive(Clone, Debug, PartialEq)]
pub struct Factored {
    m: u32,
    constant: CycloNumber,
    wexp: i64,
    roots: BTreeMap<Rational64, i64>,
}

fn primes_of(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Factored {
    pub fn one() -> Self {
        Self::constant(CycloNumber::one()).expect("nonzero")
    }

    /// `None` for zero.
    pub fn constant(c: CycloNumber) -> Option<Self> {
        if c.is_zero() {
            None
        } else {
            Some(Factored { m: 1, constant: c, wexp: 0, roots: BTreeMap::new() })
        }
    }

    pub fn from_int(n: i64) -> Option<Self> {
        Self::constant(CycloNumber::from_int(n))
    }

    pub fn from_rational(q: BigRational) -> Option<Self> {
        Self::constant(CycloNumber::from_rational(q))
    }

    pub fn q_pow(e: Rational64) -> Self {
        Factored { m: *e.denom() as u32, constant: CycloNumber::one(), wexp: *e.numer(), roots: BTreeMap::new() }
            .minimized()
    }

    pub fn monomial(x: &QMonomial) -> Self {
        let mut f = Self::q_pow(x.qexp());
        f.constant = CycloNumber::from_turns(x.turns());
        f
    }

    /// `1 - x`, or `None` when `x = 1`.
    pub fn one_minus(x: &QMonomial) -> Option<Self> {
        let m = *x.qexp().denom() as u32;
        let k = *x.qexp().numer() * 1; // exponent of w = q^{1/m}
        let t = x.turns();
        let zeta = CycloNumber::from_turns(t);
        let f = match k.cmp(&0) {
            std::cmp::Ordering::Equal => return Self::constant(CycloNumber::one().sub(&zeta)),
            std::cmp::Ordering::Greater => {
                // 1 - zeta w^k = -zeta * prod_j (w - eta_j), eta_j^k = zeta^{-1}
                let roots = (0..k).map(|j| (reduce_turns((-t + j) / k), 1)).collect();
                Factored { m, constant: zeta.neg(), wexp: 0, roots }
            }
            std::cmp::Ordering::Less => {
                let n = -k;
                // 1 - zeta w^{-n} = w^{-n} prod_j (w - eta_j), eta_j^n = zeta
                let roots = (0..n).map(|j| (reduce_turns((t + j) / n), 1)).collect();
                Factored { m, constant: CycloNumber::one(), wexp: -n, roots }
            }
        };
        Some(f.minimized())
    }

    /// `1 + x`, or `None` when `x = -1`.
    pub fn one_plus(x: &QMonomial) -> Option<Self> {
        Self::one_minus(&x.neg())
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn constant_factor(&self) -> &CycloNumber {
        &self.constant
    }

    /// Multiplicities of the linear factors `w - exp(2 pi i eta)`.
    pub fn root_multiplicities(&self) -> &BTreeMap<Rational64, i64> {
        &self.roots
    }

    /// True when the function does not depend on `q`.
    pub fn is_constant(&self) -> bool {
        self.wexp == 0 && self.roots.is_empty()
    }

    /// Re-express with `w' = q^{1/(k M)}`.
    fn rescaled(&self, k: u32) -> Self {
        if k == 1 {
            return self.clone();
        }
        let k64 = k as i64;
        let mut roots = BTreeMap::new();
        for (eta, mult) in &self.roots {
            for j in 0..k64 {
                *roots.entry(reduce_turns((*eta + j) / k64)).or_insert(0) += mult;
            }
        }
        Factored { m: self.m * k, constant: self.constant.clone(), wexp: self.wexp * k64, roots }
    }

    fn minimized(mut self) -> Self {
        self.roots.retain(|_, m| *m != 0);
        'outer: loop {
            for p in primes_of(self.m) {
                if let Some(next) = self.deflate_by(p) {
                    self = next;
                    continue 'outer;
                }
            }
            return self;
        }
    }

    fn deflate_by(&self, p: u32) -> Option<Self> {
        let p64 = p as i64;
        if self.wexp % p64 != 0 {
            return None;
        }
        let mut groups: BTreeMap<Rational64, Vec<(Rational64, i64)>> = BTreeMap::new();
        for (eta, mult) in &self.roots {
            groups.entry(reduce_turns(*eta * p64)).or_default().push((*eta, *mult));
        }
        let mut roots = BTreeMap::new();
        for (key, members) in groups {
            if members.len() != p as usize || members.iter().any(|(_, m)| *m != members[0].1) {
                return None;
            }
            roots.insert(key, members[0].1);
        }
        Some(Factored { m: self.m / p, constant: self.constant.clone(), wexp: self.wexp / p64, roots })
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        let l = self.m.lcm(&other.m);
        (self.rescaled(l / self.m), other.rescaled(l / other.m))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (mut a, b) = self.aligned(other);
        a.constant = a.constant.mul(&b.constant);
        a.wexp += b.wexp;
        for (eta, mult) in b.roots {
            *a.roots.entry(eta).or_insert(0) += mult;
        }
        a.minimized()
    }

    pub fn inv(&self) -> Self {
        Factored {
            m: self.m,
            constant: self.constant.inv().expect("nonzero"),
            wexp: -self.wexp,
            roots: self.roots.iter().map(|(e, m)| (*e, -m)).collect(),
        }
    }

    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let e = e.abs();
        Factored {
            m: base.m,
            constant: base.constant.pow(e),
            wexp: base.wexp * e,
            roots: base.roots.iter().map(|(r, m)| (*r, m * e)).collect(),
        }
        .minimized()
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        out.constant = out.constant.neg();
        out
    }

    pub fn scale(&self, c: &CycloNumber) -> Option<Self> {
        if c.is_zero() {
            return None;
        }
        let mut out = self.clone();
        out.constant = out.constant.mul(c);
        Some(out)
    }

    /// Complex conjugate for real `q > 0`.
    pub fn conj(&self) -> Self {
        Factored {
            m: self.m,
            constant: self.constant.conj(),
            wexp: self.wexp,
            roots: self.roots.iter().map(|(e, m)| (reduce_turns(-*e), *m)).collect(),
        }
    }

    /// True when equal to `+-` the other value.
    pub fn eq_up_to_sign(&self, other: &Self) -> Option<i8> {
        if self == other {
            Some(1)
        } else if *self == other.neg() {
            Some(-1)
        } else {
            None
        }
    }

    /// If this value is a rational constant, return it.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_constant() {
            self.constant.as_rational()
        } else {
            None
        }
    }

    /// Value at `q = 1`: `Ok(None)` for a zero there, error for a pole.
    pub fn at_q_one(&self) -> Result<Option<CycloNumber>> {
        match self.roots.get(&Rational64::zero()) {
            Some(m) if *m < 0 => return Err(Error::Pole("q = 1".into())),
            Some(_) => return Ok(None),
            None => {}
        }
        let mut acc = self.constant.clone();
        for (eta, mult) in &self.roots {
            let f = CycloNumber::one().sub(&CycloNumber::from_turns(*eta));
            acc = acc.mul(&f.pow(*mult));
        }
        Ok(Some(acc))
    }

    pub fn eval_numeric(&self, q0: f64) -> Result<(f64, f64)> {
        if q0 <= 0.0 {
            return Err(Error::InvalidInput("q0 must be positive".into()));
        }
        if q0 == 1.0 && self.roots.get(&Rational64::zero()).is_some_and(|m| *m < 0) {
            return Err(Error::Pole("q = 1".into()));
        }
        let w = q0.powf(1.0 / self.m as f64);
        let mul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
        let powc = |z: (f64, f64), e: i64| {
            let (r, th) = ((z.0 * z.0 + z.1 * z.1).sqrt(), z.1.atan2(z.0));
            let r = r.powi(e as i32);
            (r * (th * e as f64).cos(), r * (th * e as f64).sin())
        };
        let mut acc = self.constant.to_complex();
        acc = mul(acc, (w.powi(self.wexp as i32), 0.0));
        for (eta, m) in &self.roots {
            let t = std::f64::consts::TAU * eta.to_f64().unwrap();
            acc = mul(acc, powc((w - t.cos(), -t.sin()), *m));
        }
        Ok(acc)
    }

    /// Expand into the dense canonical form.
    pub fn to_ratfun(&self) -> QRatFun {
        let mut num = Poly::constant(self.constant.clone());
        let mut den = Poly::<CycloNumber>::one();
        if self.wexp >= 0 {
            num = num.shift(self.wexp as usize);
        } else {
            den = den.shift((-self.wexp) as usize);
        }
        let (pos, neg): (BTreeMap<_, _>, BTreeMap<_, _>) = self.roots.iter().map(|(e, m)| (*e, *m)).partition(|(_, m)| *m > 0);
        num = num.mul(&expand_roots(pos));
        den = den.mul(&expand_roots(neg.into_iter().map(|(e, m)| (e, -m)).collect()));
        QRatFun::from_canonical_parts(self.m, num, den)
    }
}

/// `prod (w - exp(2 pi i eta))^{m}`, grouping complete sets of primitive roots
/// into rational cyclotomic polynomials.
fn expand_roots(mut roots: BTreeMap<Rational64, i64>) -> Poly<CycloNumber> {
    let mut out = Poly::<CycloNumber>::one();
    let mut denoms: Vec<i64> = roots.keys().map(|e| *e.denom()).collect();
    denoms.sort_unstable();
    denoms.dedup();
    for n in denoms {
        let prim: Vec<Rational64> = (0..n).filter(|j| j.gcd(&n) == 1).map(|j| Rational64::new(j, n)).collect();
        let full = prim.iter().map(|e| roots.get(e).copied().unwrap_or(0)).min().unwrap_or(0);
        if full > 0 {
            let phi = cyclotomic_poly(n as u64).map(|c| CycloNumber::from_rational(c.clone()));
            out = out.mul(&phi.pow(full as u32));
            for e in &prim {
                *roots.get_mut(e).expect("present") -= full;
            }
        }
    }
    for (eta, mult) in roots {
        if mult > 0 {
            let lin = Poly::new(vec![CycloNumber::from_turns(eta).neg(), CycloNumber::one()]);
            out = out.mul(&lin.pow(mult as u32));
        }
    }
    out
}

impl fmt::Display for Factored {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_ratfun())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(t: (i64, i64), e: (i64, i64)) -> QMonomial {
        QMonomial::new(Rational64::new(t.0, t.1), Rational64::new(e.0, e.1))
    }

    #[test]
    fn binomials_expand_correctly() {
        // 1 - q^2 = -(q-1)(q+1)
        let f = Factored::one_minus(&qm((0, 1), (2, 1))).unwrap();
        assert_eq!(f.to_ratfun(), QRatFun::q_poly(&[1, 0, -1]));
        // 1 + q^{-1/2}
        let g = Factored::one_plus(&qm((0, 1), (-1, 2))).unwrap();
        let expect = QRatFun::one().add(&QRatFun::q_pow(Rational64::new(-1, 2)));
        assert_eq!(g.to_ratfun(), expect);
        assert!(Factored::one_minus(&QMonomial::one()).is_none());
    }

    #[test]
    fn rescaling_is_value_preserving() {
        // (1 - q)(1 + q^{1/2})^{-1} = 1 - q^{1/2}
        let a = Factored::one_minus(&qm((0, 1), (1, 1))).unwrap();
        let b = Factored::one_plus(&qm((0, 1), (1, 2))).unwrap();
        let c = Factored::one_minus(&qm((0, 1), (1, 2))).unwrap();
        assert_eq!(a.div(&b), c);
        // (1 - q^{1/2})(1 + q^{1/2}) = 1 - q, back at M = 1
        let d = c.mul(&b);
        assert_eq!(d, a);
        assert_eq!(d.m(), 1);
    }

    #[test]
    fn conjugation_of_twisted_binomial() {
        let f = Factored::one_minus(&qm((1, 3), (1, 1))).unwrap();
        assert_eq!(f.conj(), Factored::one_minus(&qm((2, 3), (1, 1))).unwrap());
        assert_eq!(f.conj().conj(), f);
        assert_eq!(f.conj().to_ratfun(), f.to_ratfun().conj());
    }

    #[test]
    fn value_at_q_one() {
        let f = Factored::one_minus(&qm((1, 5), (2, 1))).unwrap().div(&Factored::one_minus(&qm((1, 5), (1, 1))).unwrap());
        assert_eq!(f.at_q_one().unwrap(), Some(CycloNumber::one()));
        let g = Factored::one_minus(&qm((0, 1), (1, 1))).unwrap();
        assert_eq!(g.at_q_one().unwrap(), None);
        assert!(g.inv().at_q_one().is_err());
    }
}
