use super::datum::BasedRootDatum;
use super::matrix::{self, IMat};
use crate::error::{Error, Result};

/// A pinned automorphism: a diagram symmetry of `Delta` together with the
/// induced lattice automorphism of `X^*` (acting on column vectors).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Twist {
    perm: Vec<usize>,
    theta: IMat,
    theta_dual: IMat,
    order: usize,
    root_perm: Vec<usize>,
}

const ORDER_BOUND: usize = 720;

impl Twist {
    pub fn identity(datum: &BasedRootDatum) -> Self {
        let l = datum.semisimple_rank();
        Self::from_diagram(datum, &(0..l).collect::<Vec<_>>(), None).expect("identity is a diagram symmetry")
    }

    /// `perm[i]` is the image of simple root `i`. `central` acts on the central
    /// torus coordinates; it defaults to the identity.
    pub fn from_diagram(datum: &BasedRootDatum, perm: &[usize], central: Option<&IMat>) -> Result<Self> {
        let l = datum.semisimple_rank();
        let r = datum.rank();
        let t = datum.central_rank();
        let bad = |m: &str| Error::NotDiagramAutomorphism(m.into());
        if perm.len() != l {
            return Err(bad("permutation has the wrong length"));
        }
        let mut hit = vec![false; l];
        for &p in perm {
            if p >= l || std::mem::replace(&mut hit[p], true) {
                return Err(bad("not a permutation"));
            }
        }
        let c = datum.cartan();
        for i in 0..l {
            for j in 0..l {
                if c[perm[i]][perm[j]] != c[i][j] {
                    return Err(bad("permutation does not preserve the Cartan matrix"));
                }
            }
        }
        // On X^* tensor Q: the semisimple block is determined by alpha_i -> alpha_{perm i}.
        let mut theta = matrix::zeros(r, r);
        if l > 0 {
            let a: IMat = (0..l).map(|row| (0..l).map(|i| datum.root(i).character[row]).collect()).collect();
            let ainv = matrix::inverse_rational(&a).ok_or_else(|| bad("roots do not span"))?;
            for row in 0..l {
                for col in 0..l {
                    let s: num_rational::Rational64 = (0..l).map(|i| ainv[i][col] * datum.root(perm[i]).character[row]).sum();
                    if !s.is_integer() {
                        return Err(Error::InvalidLattice("character lattice is not stable under the twist".into()));
                    }
                    theta[row][col] = s.to_integer();
                }
            }
        }
        let central = central.cloned().unwrap_or_else(|| matrix::identity(t));
        if central.len() != t || central.iter().any(|row| row.len() != t) {
            return Err(Error::InvalidInput(format!("central twist must be {t}x{t}")));
        }
        for i in 0..t {
            for j in 0..t {
                theta[l + i][l + j] = central[i][j];
            }
        }
        let order = matrix::order(&theta, ORDER_BOUND).ok_or_else(|| Error::InvalidInput("twist has infinite order".into()))?;
        let theta_dual = matrix::transpose(&matrix::inverse_integer(&theta).expect("finite order"));
        let root_perm = datum
            .roots()
            .iter()
            .map(|root| {
                let mut img = vec![0; l];
                for (i, x) in root.simple.iter().enumerate() {
                    img[perm[i]] = *x;
                }
                datum.root_index(&img).expect("diagram symmetry permutes roots")
            })
            .collect();
        Ok(Twist { perm: perm.to_vec(), theta, theta_dual, order, root_perm })
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    /// Matrix on `X^*`.
    pub fn theta(&self) -> &IMat {
        &self.theta
    }

    /// Matrix on `X_*`, the inverse transpose.
    pub fn theta_dual(&self) -> &IMat {
        &self.theta_dual
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Image of root `i` under the twist.
    pub fn on_root(&self, i: usize) -> usize {
        self.root_perm[i]
    }

    /// Permutation matrix on simple-root coordinates.
    pub fn on_simple_coordinates(&self) -> IMat {
        let l = self.perm.len();
        let mut p = matrix::zeros(l, l);
        for (i, &j) in self.perm.iter().enumerate() {
            p[j][i] = 1;
        }
        p
    }

    /// Central block of `theta`.
    pub fn central_block(&self) -> IMat {
        let l = self.perm.len();
        self.theta[l..].iter().map(|row| row[l..].to_vec()).collect()
    }

    /// The same symmetry on the dual datum.
    pub fn dual(&self, dual_datum: &BasedRootDatum) -> Self {
        let central = matrix::transpose(&matrix::inverse_integer(&self.central_block()).expect("finite order"));
        Self::from_diagram(dual_datum, &self.perm, Some(&central)).expect("symmetry of the dual diagram")
    }

    /// Orbits of the twist on `0..n` under a permutation.
    pub fn orbits_of(perm: impl Fn(usize) -> usize, n: usize) -> Vec<Vec<usize>> {
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut orbit = vec![s];
            seen[s] = true;
            let mut x = perm(s);
            while x != s {
                seen[x] = true;
                orbit.push(x);
                x = perm(x);
            }
            out.push(orbit);
        }
        out
    }

    /// Orbits on the simple roots.
    pub fn simple_orbits(&self) -> Vec<Vec<usize>> {
        Self::orbits_of(|i| self.perm[i], self.perm.len())
    }

    /// Orbits on all roots.
    pub fn root_orbits(&self) -> Vec<Vec<usize>> {
        Self::orbits_of(|i| self.root_perm[i], self.root_perm.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::datum::Isogeny;

    #[test]
    fn orders() {
        let a2 = BasedRootDatum::from_cartan_type("A2", &Isogeny::Adjoint).unwrap();
        assert_eq!(Twist::from_diagram(&a2, &[1, 0], None).unwrap().order(), 2);
        let d4 = BasedRootDatum::from_cartan_type("D4", &Isogeny::Adjoint).unwrap();
        assert_eq!(Twist::from_diagram(&d4, &[2, 1, 3, 0], None).unwrap().order(), 3);
        let a3 = BasedRootDatum::from_cartan_type("A3", &Isogeny::SimplyConnected).unwrap();
        assert_eq!(Twist::identity(&a3).order(), 1);
    }

    #[test]
    fn rejects_non_symmetries() {
        let b2 = BasedRootDatum::from_cartan_type("B2", &Isogeny::Adjoint).unwrap();
        assert!(Twist::from_diagram(&b2, &[1, 0], None).is_err());
        let a3 = BasedRootDatum::from_cartan_type("A3", &Isogeny::Adjoint).unwrap();
        assert!(Twist::from_diagram(&a3, &[1, 0, 2], None).is_err());
    }

    #[test]
    fn twist_permutes_roots_and_coroots() {
        let a2 = BasedRootDatum::from_cartan_type("A2", &Isogeny::SimplyConnected).unwrap();
        let t = Twist::from_diagram(&a2, &[1, 0], None).unwrap();
        for (i, r) in a2.roots().iter().enumerate() {
            let img = a2.root(t.on_root(i));
            assert_eq!(matrix::apply(t.theta(), &r.character), img.character);
            assert_eq!(matrix::apply(t.theta_dual(), &r.cocharacter), img.cocharacter);
        }
        let d = a2.dual();
        assert_eq!(t.dual(&d).order(), 2);
    }
}
