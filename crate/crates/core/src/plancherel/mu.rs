use std::collections::BTreeMap;

use num_rational::Rational64;
use num_traits::Zero;

use super::context::GroupContext;
use crate::exactnum::{Factored, QMonomial};
use crate::localfactors::TorusPoint;
use crate::restricted::{OrbitClass, RestrictedRootSystem};

/// Normalizing factor in front of the product over classes.
#[derive(Clone, Debug, PartialEq)]
pub enum Prefactor {
    /// `q^{-(dim g - dim m)/2}`.
    Levi,
    /// `q^{-dim g / 2} / det(1 - q^{-1} theta | t)`.
    Plancherel,
    /// A user-supplied monomial.
    Monomial(QMonomial),
    None,
}

#[derive(Clone, Debug)]
pub struct MuSpec<'a> {
    pub group: &'a GroupContext,
    /// Simple orbits spanning the Levi subsystem.
    pub levi: Vec<usize>,
    /// Class index to `(m_+, m_-)`.
    pub overrides: BTreeMap<usize, (Rational64, Rational64)>,
    pub prefactor: Prefactor,
}

#[derive(Clone, Debug, PartialEq)]
pub enum MuOutcome {
    Value(Factored),
    Zero(u32),
    Pole(u32),
    Indeterminate { zeros: u32, poles: u32 },
}

impl MuOutcome {
    pub fn value(&self) -> Option<&Factored> {
        match self {
            MuOutcome::Value(v) => Some(v),
            _ => None,
        }
    }
}

/// Linear factors of one class at a point: numerator and denominator, each
/// factor `1 - x` stored as `x`.
#[derive(Clone, Debug, Default)]
pub struct LinearFactors {
    pub num: Vec<QMonomial>,
    pub den: Vec<QMonomial>,
}

/// `(1 - g^{-2}) / ((1 + q^{-m_-} g^{-1})(1 - q^{-m_+} g^{-1}))` split into
/// linear factors. With `m_- = 0` the factors `1 + g^{-1}` cancel.
pub fn class_factors(g: QMonomial, m_plus: Rational64, m_minus: Rational64) -> LinearFactors {
    let gi = g.inv();
    let mut f = LinearFactors { num: vec![gi], den: vec![QMonomial::q_pow(-m_plus).mul(&gi)] };
    if !m_minus.is_zero() {
        f.num.push(gi.neg());
        f.den.push(QMonomial::q_pow(-m_minus).mul(&gi).neg());
    }
    f
}

impl<'a> MuSpec<'a> {
    pub fn new(group: &'a GroupContext, levi: Vec<usize>, prefactor: Prefactor) -> Self {
        MuSpec { group, levi, overrides: BTreeMap::new(), prefactor }
    }

    /// Full product over all classes with the prefactor of the closed formula.
    pub fn plancherel(group: &'a GroupContext) -> Self {
        Self::new(group, Vec::new(), Prefactor::Plancherel)
    }

    pub fn rrs(&self) -> &RestrictedRootSystem {
        &self.group.rrs
    }

    pub fn parameters(&self, idx: usize) -> (Rational64, Rational64) {
        self.overrides.get(&idx).copied().unwrap_or_else(|| {
            let c: &OrbitClass = &self.rrs().classes[idx];
            (c.m_plus, c.m_minus)
        })
    }

    /// Classes outside the Levi subsystem.
    pub fn classes(&self) -> Vec<usize> {
        self.rrs().levi_subsystem(&self.levi).outside
    }

    pub fn prefactor_value(&self) -> Factored {
        match &self.prefactor {
            Prefactor::None => Factored::one(),
            Prefactor::Monomial(m) => Factored::monomial(m),
            Prefactor::Levi => {
                let n: usize = self.classes().iter().map(|&c| self.rrs().classes[c].size()).sum();
                Factored::q_pow(Rational64::new(-(n as i64), 2))
            }
            Prefactor::Plancherel => plancherel_prefactor(self.group),
        }
    }

    pub fn factors(&self, t: &TorusPoint) -> LinearFactors {
        let mut all = LinearFactors::default();
        for idx in self.classes() {
            let class = &self.rrs().classes[idx];
            let (mp, mm) = self.parameters(idx);
            let f = class_factors(class.gamma_value(&self.rrs().datum, t), mp, mm);
            all.num.extend(f.num);
            all.den.extend(f.den);
        }
        all
    }
}

/// `q^{-dim g / 2} / det(1 - q^{-1} theta | t)`.
pub fn plancherel_prefactor(group: &GroupContext) -> Factored {
    let mut p = Factored::q_pow(Rational64::new(-(group.adjoint_dimension() as i64), 2));
    for z in group.torus_eigenvalues() {
        let f = Factored::one_minus(&z.mul(&QMonomial::q_pow(Rational64::from_integer(-1)))).expect("q^{-1} z != 1");
        p = p.div(&f);
    }
    p
}

/// Product of the non-vanishing factors `1 - x`, and the number of vanishing ones.
fn product(xs: &[QMonomial]) -> (Factored, u32) {
    let mut acc = Factored::one();
    let mut zeros = 0;
    for x in xs {
        match Factored::one_minus(x) {
            Some(f) => acc = acc.mul(&f),
            None => zeros += 1,
        }
    }
    (acc, zeros)
}

/// The mu-function at `t`, or its zero/pole counts.
pub fn mu_value(spec: &MuSpec, t: &TorusPoint) -> MuOutcome {
    let f = spec.factors(t);
    let (n, zeros) = product(&f.num);
    let (d, poles) = product(&f.den);
    match (zeros, poles) {
        (0, 0) => MuOutcome::Value(spec.prefactor_value().mul(&n).div(&d)),
        (z, 0) => MuOutcome::Zero(z),
        (0, p) => MuOutcome::Pole(p),
        (z, p) => MuOutcome::Indeterminate { zeros: z, poles: p },
    }
}

/// The product with every vanishing linear factor omitted, numerator and
/// denominator independently, times the prefactor.
pub fn regularized_mu(spec: &MuSpec, t: &TorusPoint) -> Factored {
    let f = spec.factors(t);
    let (n, _) = product(&f.num);
    let (d, _) = product(&f.den);
    spec.prefactor_value().mul(&n).div(&d)
}

/// Number of omitted factors in numerator and denominator.
pub fn omitted_factors(spec: &MuSpec, t: &TorusPoint) -> (u32, u32) {
    let f = spec.factors(t);
    (product(&f.num).1, product(&f.den).1)
}
