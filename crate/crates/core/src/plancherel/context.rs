use crate::error::Result;
use crate::localfactors::{finite_order_eigenvalues, TorusPoint};
use crate::restricted::{restrict, RestrictedRootSystem};
use crate::rootdata::{weyl_elements, BasedRootDatum, GroupSpec, Twist, WeylElement};

/// A group together with the dual-side data every computation here needs.
#[derive(Clone, Debug)]
pub struct GroupContext {
    pub name: String,
    pub datum: BasedRootDatum,
    pub twist: Twist,
    pub dual: BasedRootDatum,
    pub dual_twist: Twist,
    /// Restricted roots of the dual group.
    pub rrs: RestrictedRootSystem,
}

impl GroupContext {
    pub fn new(name: &str, datum: BasedRootDatum, twist: Twist) -> Self {
        let dual = datum.dual();
        let dual_twist = twist.dual(&dual);
        let rrs = restrict(&dual, &dual_twist);
        GroupContext { name: name.into(), datum, twist, dual, dual_twist, rrs }
    }

    pub fn from_spec(name: &str, spec: &GroupSpec) -> Result<Self> {
        let (d, t) = spec.build()?;
        Ok(Self::new(name, d, t))
    }

    pub fn builtin(name: &str) -> Option<Self> {
        GroupSpec::builtin(name).map(|s| Self::from_spec(name, &s).expect("built-in specs are valid"))
    }

    /// Eigenvalues of the twist on the dual torus Lie algebra, without the fixed
    /// central directions.
    pub fn torus_eigenvalues(&self) -> Vec<crate::exactnum::QMonomial> {
        let mut out = Vec::new();
        for o in self.dual_twist.simple_orbits() {
            out.extend(crate::exactnum::QMonomial::one().roots(o.len() as u32));
        }
        out.extend(finite_order_eigenvalues(&self.dual_twist.central_block()).into_iter().filter(|e| !e.is_one()));
        out
    }

    /// Dimension of the dual Lie algebra modulo its fixed central part.
    pub fn adjoint_dimension(&self) -> usize {
        self.dual.roots().len() + self.torus_eigenvalues().len()
    }

    pub fn is_split(&self) -> bool {
        self.twist.is_trivial()
    }

    pub fn is_semisimple(&self) -> bool {
        self.datum.is_semisimple()
    }

    pub fn weyl_group(&self, bound: usize) -> Result<Vec<WeylElement>> {
        weyl_elements(&self.dual, &self.dual_twist, bound)
    }

    pub fn is_theta_fixed(&self, r: &TorusPoint) -> bool {
        r.is_fixed_by(self.dual_twist.theta_dual())
    }

    /// Values of the simple roots of the dual group at `r`.
    pub fn simple_values(&self, r: &TorusPoint) -> Vec<crate::exactnum::QMonomial> {
        (0..self.dual.semisimple_rank()).map(|i| r.root_value(&self.dual, i)).collect()
    }

    /// The point where every simple root of the dual group takes the value `q`.
    pub fn principal_point(&self) -> TorusPoint {
        let q = crate::exactnum::QMonomial::q_pow(1.into());
        TorusPoint::from_simple_values(&self.dual, &vec![q; self.dual.semisimple_rank()]).expect("valid")
    }

    /// Whether `r` is `W^theta`-conjugate to the principal point.
    pub fn is_principal(&self, r: &TorusPoint) -> bool {
        let q = crate::exactnum::QMonomial::q_pow(1.into());
        let values = self.simple_values(r);
        if values.iter().all(|v| *v == q) {
            return true;
        }
        let Ok(weyl) = self.weyl_group(crate::rootdata::DEFAULT_WEYL_BOUND) else {
            return false;
        };
        weyl.iter().any(|w| {
            (0..values.len()).all(|i| values.iter().enumerate().fold(crate::exactnum::QMonomial::one(), |acc, (k, x)| acc.mul(&x.powi(w.on_roots[k][i]))) == q)
        })
    }
}
