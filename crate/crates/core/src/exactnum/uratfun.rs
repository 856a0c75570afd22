use num_rational::{BigRational, Rational64};
use num_traits::{Signed, Zero};

use super::factored::Factored;
use super::field::Field;
use super::monomial::QMonomial;
use super::poly::Poly;
use super::qratfun::QRatFun;
use crate::error::{Error, Result};

/// Behaviour of a function of `u = q^{-s}` at `u = 1`.
#[derive(Clone, Debug, PartialEq)]
pub enum AtUOne<T> {
    Value(T),
    Zero(u32),
    Pole(u32),
}

impl<T> AtUOne<T> {
    /// Signed vanishing order: positive for zeros, negative for poles.
    pub fn order(&self) -> i64 {
        match self {
            AtUOne::Value(_) => 0,
            AtUOne::Zero(k) => *k as i64,
            AtUOne::Pole(k) => -(*k as i64),
        }
    }

    pub fn value(&self) -> Option<&T> {
        match self {
            AtUOne::Value(v) => Some(v),
            _ => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> AtUOne<U> {
        match self {
            AtUOne::Value(v) => AtUOne::Value(f(v)),
            AtUOne::Zero(k) => AtUOne::Zero(k),
            AtUOne::Pole(k) => AtUOne::Pole(k),
        }
    }
}

fn from_order<T>(order: i64, value: T) -> AtUOne<T> {
    match order {
        0 => AtUOne::Value(value),
        k if k > 0 => AtUOne::Zero(k as u32),
        k => AtUOne::Pole((-k) as u32),
    }
}

/// Rational function of `u` with coefficients in `QRatFun`, kept in canonical
/// form: coprime numerator and denominator, denominator monic in `u`.
#[derive(Clone, Debug, PartialEq)]
pub struct URatFun {
    num: Poly<QRatFun>,
    den: Poly<QRatFun>,
}

impl URatFun {
    pub fn new(num: Poly<QRatFun>, den: Poly<QRatFun>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(URatFun { num, den: Poly::one() });
        }
        let g = num.gcd(&den);
        let num = num.div_rem(&g).expect("gcd nonzero").0;
        let den = den.div_rem(&g).expect("gcd nonzero").0;
        let lead = den.leading().expect("nonzero").inv().expect("nonzero");
        Ok(URatFun { num: num.scale(&lead), den: den.scale(&lead) })
    }

    pub fn constant(c: QRatFun) -> Self {
        URatFun { num: Poly::constant(c), den: Poly::one() }
    }

    /// `u^k` for any integer `k`.
    pub fn u_pow(k: i64) -> Self {
        let one = QRatFun::one();
        if k >= 0 {
            URatFun { num: Poly::monomial(one, k as usize), den: Poly::one() }
        } else {
            URatFun { num: Poly::one(), den: Poly::monomial(one, (-k) as usize) }
        }
    }

    /// `1 - c u^k`; negative `k` is cleared by multiplying through by `u^{-k}`.
    pub fn one_minus(c: QRatFun, k: i64) -> Result<Self> {
        if k >= 0 {
            let p = Poly::one().sub(&Poly::monomial(c, k as usize));
            Self::new(p, Poly::one())
        } else {
            let n = (-k) as usize;
            let p = Poly::monomial(QRatFun::one(), n).sub(&Poly::constant(c));
            Self::new(p, Poly::monomial(QRatFun::one(), n))
        }
    }

    pub fn numerator(&self) -> &Poly<QRatFun> {
        &self.num
    }
    pub fn denominator(&self) -> &Poly<QRatFun> {
        &self.den
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero denominator")
    }

    pub fn checked_div(&self, o: &Self) -> Result<Self> {
        if o.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.num.mul(&o.den), self.den.mul(&o.num))
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den)).expect("nonzero denominator")
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let (n, d) = if e >= 0 { (&self.num, &self.den) } else { (&self.den, &self.num) };
        let e = e.unsigned_abs() as u32;
        Self::new(n.pow(e), d.pow(e))
    }

    /// Vanishing order and leading Taylor coefficient ratio at `u = 1`.
    pub fn limit_at_u_one(&self) -> AtUOne<QRatFun> {
        let (zn, vn) = strip_root_one(&self.num);
        let (zd, vd) = strip_root_one(&self.den);
        let value = vn.checked_div(&vd).expect("stripped denominator nonzero at u = 1");
        from_order(zn as i64 - zd as i64, value)
    }
}

/// Multiplicity of `u = 1` as a root, and the value of the cofactor there.
fn strip_root_one(p: &Poly<QRatFun>) -> (u32, QRatFun) {
    if p.is_zero() {
        return (0, QRatFun::zero());
    }
    let lin = Poly::new(vec![QRatFun::one().neg(), QRatFun::one()]);
    let mut p = p.clone();
    let mut k = 0;
    loop {
        let v = p.eval(&QRatFun::one());
        if !v.is_zero() {
            return (k, v);
        }
        p = p.div_rem(&lin).expect("monic divisor").0;
        k += 1;
    }
}

/// Product `c * u^a * prod (1 - lambda u^k)^{m}` with monomial `lambda` and
/// rational `k`. This is the shape of every local factor and `mu`-function, and
/// it can be examined at `u = 1` factor by factor.
#[derive(Clone, Debug, PartialEq)]
pub struct UProduct {
    pub coefficient: Factored,
    pub u_exp: Rational64,
    pub factors: Vec<(QMonomial, Rational64, i64)>,
}

impl UProduct {
    pub fn one() -> Self {
        UProduct { coefficient: Factored::one(), u_exp: Rational64::zero(), factors: Vec::new() }
    }

    pub fn constant(c: Factored) -> Self {
        UProduct { coefficient: c, ..Self::one() }
    }

    /// Multiply by `(1 - lambda u^k)^m`.
    pub fn push(&mut self, lambda: QMonomial, k: Rational64, m: i64) {
        if m != 0 {
            self.factors.push((lambda, k, m));
        }
    }

    pub fn with(mut self, lambda: QMonomial, k: Rational64, m: i64) -> Self {
        self.push(lambda, k, m);
        self
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend(o.factors.iter().cloned());
        UProduct { coefficient: self.coefficient.mul(&o.coefficient), u_exp: self.u_exp + o.u_exp, factors }
    }

    pub fn inv(&self) -> Self {
        UProduct {
            coefficient: self.coefficient.inv(),
            u_exp: -self.u_exp,
            factors: self.factors.iter().map(|(l, k, m)| (*l, *k, -m)).collect(),
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        self.mul(&o.inv())
    }

    pub fn scale(&self, c: &Factored) -> Self {
        UProduct { coefficient: self.coefficient.mul(c), ..self.clone() }
    }

    /// At `u = 1` a factor with `lambda != 1` contributes `1 - lambda`; one
    /// with `lambda = 1` vanishes to first order with slope `-k`.
    pub fn at_u_one(&self) -> AtUOne<Factored> {
        let mut order = 0i64;
        let mut acc = self.coefficient.clone();
        for (lambda, k, m) in &self.factors {
            match Factored::one_minus(lambda) {
                Some(f) => acc = acc.mul(&f.pow(*m)),
                None => {
                    order += m;
                    let slope = Factored::from_rational(BigRational::new((-*k.numer()).into(), (*k.denom()).into()))
                        .expect("factor 1 - u^0 is identically zero");
                    acc = acc.mul(&slope.pow(*m));
                }
            }
        }
        from_order(order, acc)
    }

    /// Behaviour at `u = q^{-s0}`. Leading coefficients are taken with
    /// respect to `u q^{s0} - 1`.
    pub fn at_s(&self, s0: Rational64) -> AtUOne<Factored> {
        let u0 = QMonomial::q_pow(-s0);
        let shifted = UProduct {
            coefficient: self.coefficient.mul(&Factored::monomial(&u0.pow(self.u_exp))),
            u_exp: self.u_exp,
            factors: self.factors.iter().map(|(l, k, m)| (l.mul(&u0.pow(*k)), *k, *m)).collect(),
        };
        shifted.at_u_one()
    }

    /// Dense form, for cross-checking. Rational `k` must have denominator 1.
    pub fn to_uratfun(&self) -> Result<URatFun> {
        let int = |r: Rational64| -> Result<i64> {
            if r.is_integer() {
                Ok(*r.numer())
            } else {
                Err(Error::OutOfScope("fractional power of u".into()))
            }
        };
        let mut out = URatFun::constant(self.coefficient.to_ratfun()).mul(&URatFun::u_pow(int(self.u_exp)?));
        for (lambda, k, m) in &self.factors {
            let f = URatFun::one_minus(lambda.to_ratfun(), int(*k)?)?;
            out = out.mul(&f.pow(*m)?);
        }
        Ok(out)
    }

    /// Floating evaluation at `q = q0`, `u = u0`. Test oracle only.
    pub fn eval_numeric(&self, q0: f64, u0: f64) -> Result<(f64, f64)> {
        let mul = |a: (f64, f64), b: (f64, f64)| (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0);
        let mut acc = self.coefficient.eval_numeric(q0)?;
        acc = mul(acc, (u0.powf(*self.u_exp.numer() as f64 / *self.u_exp.denom() as f64), 0.0));
        for (lambda, k, m) in &self.factors {
            let l = lambda.to_complex(q0);
            let uk = u0.powf(*k.numer() as f64 / *k.denom() as f64);
            let f = (1.0 - l.0 * uk, -l.1 * uk);
            let n2 = f.0 * f.0 + f.1 * f.1;
            if n2 < 1e-300 && *m < 0 {
                return Err(Error::Pole("u".into()));
            }
            let fm = if *m >= 0 { f } else { (f.0 / n2, -f.1 / n2) };
            for _ in 0..m.abs() {
                acc = mul(acc, fm);
            }
        }
        Ok(acc)
    }
}
