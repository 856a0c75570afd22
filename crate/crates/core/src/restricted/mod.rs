//! Restricted root systems attached to a pinned diagram automorphism.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exactnum::{QMonomial, UProduct};
use crate::localfactors::TorusPoint;
use crate::rootdata::{matrix, BasedRootDatum, Twist};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ClassType {
    /// A twist orbit of mutually orthogonal roots.
    I,
    /// An orbit `{alpha, theta alpha}` together with the root `alpha + theta alpha`.
    II,
}

/// One equivalence class `a` of roots.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrbitClass {
    pub members: Vec<usize>,
    pub orbits: Vec<Vec<usize>>,
    pub positive: bool,
    /// Kac root: the restriction of the shortest member, in simple-root coordinates.
    pub beta: Vec<Rational64>,
    /// Restricted root `m_+ beta`; integral in simple-root coordinates.
    pub gamma: Vec<i64>,
    pub class_type: ClassType,
    pub f: Rational64,
    pub f1: Option<Rational64>,
    pub m_plus: Rational64,
    pub m_minus: Rational64,
}

impl OrbitClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// `gamma_a(r)`, where the roots of `datum` are characters of the torus of `r`.
    pub fn gamma_value(&self, datum: &BasedRootDatum, r: &TorusPoint) -> QMonomial {
        r.value(&character_of(datum, &self.gamma))
    }
}

/// `X^*` coordinates of an integral combination of simple roots.
pub fn character_of(datum: &BasedRootDatum, simple: &[i64]) -> Vec<i64> {
    (0..datum.rank()).map(|k| simple.iter().enumerate().map(|(i, c)| c * datum.root(i).character[k]).sum()).collect()
}

#[derive(Clone, Debug)]
pub struct RestrictedRootSystem {
    pub datum: BasedRootDatum,
    pub twist: Twist,
    pub classes: Vec<OrbitClass>,
    /// Twist orbits on the simple roots.
    pub simple_orbits: Vec<Vec<usize>>,
    /// For each simple orbit, the class containing it.
    pub basis_classes: Vec<usize>,
    /// Dimension of the fixed subspace of the twist on the torus Lie algebra.
    pub fixed_dim: usize,
}

/// Partition of the classes relative to a standard Levi subsystem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviSplit {
    pub simple_orbits: Vec<usize>,
    pub inside: Vec<usize>,
    pub outside: Vec<usize>,
}

fn average(datum: &BasedRootDatum, orbit: &[usize]) -> Vec<Rational64> {
    let l = datum.semisimple_rank();
    let n = Rational64::from_integer(orbit.len() as i64);
    (0..l).map(|k| orbit.iter().map(|&i| Rational64::from_integer(datum.root(i).simple[k])).sum::<Rational64>() / n).collect()
}

/// Primitive integral vector on the same ray, and the positive scale factor.
fn ray(v: &[Rational64]) -> (Vec<i64>, Rational64) {
    let den = v.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
    let ints: Vec<i64> = v.iter().map(|x| (x * den).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, x| acc.gcd(x)).max(1);
    (ints.iter().map(|x| x / g).collect(), Rational64::new(g, den))
}

/// Multiplicity of the eigenvalue 1 of a finite-order matrix.
fn fixed_dimension(theta: &matrix::IMat) -> usize {
    let mut p = matrix::char_poly(theta);
    let mut k = 0;
    // synthetic division by (x - 1)
    while p.len() > 1 && p.iter().sum::<i64>() == 0 {
        let n = p.len() - 1;
        let mut q = vec![0i64; n];
        let mut carry = 0;
        for i in (0..n).rev() {
            carry += p[i + 1];
            q[i] = carry;
        }
        p = q;
        k += 1;
    }
    k
}

/// Orbit classes of the roots of `datum` under `twist`.
pub fn restrict(datum: &BasedRootDatum, twist: &Twist) -> RestrictedRootSystem {
    let orbits = twist.root_orbits();
    let mut by_ray: BTreeMap<Vec<i64>, Vec<(Rational64, Vec<usize>)>> = BTreeMap::new();
    let mut ray_order = Vec::new();
    for orbit in orbits {
        let (dir, scale) = ray(&average(datum, &orbit));
        if !by_ray.contains_key(&dir) {
            ray_order.push(dir.clone());
        }
        by_ray.entry(dir).or_default().push((scale, orbit));
    }
    let mut classes = Vec::new();
    for dir in ray_order {
        let mut group = by_ray.remove(&dir).expect("present");
        group.sort_by(|a, b| a.0.cmp(&b.0));
        let (scale, _) = group[0].clone();
        let beta: Vec<Rational64> = dir.iter().map(|&x| scale * x).collect();
        let mut members: Vec<usize> = group.iter().flat_map(|(_, o)| o.iter().copied()).collect();
        members.sort_unstable();
        let size = Rational64::from_integer(members.len() as i64);
        let (class_type, f, f1, m_plus, m_minus) = if group.len() == 1 {
            (ClassType::I, size, None, size, Rational64::zero())
        } else {
            let third = size / 3;
            (ClassType::II, third * 4, Some(third * 2), third * 2, third)
        };
        let gamma = beta
            .iter()
            .map(|b| {
                let g = *b * m_plus;
                assert!(g.is_integer(), "restricted root is integral");
                g.to_integer()
            })
            .collect();
        let positive = datum.is_positive(members[0]);
        classes.push(OrbitClass {
            orbits: group.into_iter().map(|(_, o)| o).collect(),
            members,
            positive,
            beta,
            gamma,
            class_type,
            f,
            f1,
            m_plus,
            m_minus,
        });
    }
    let simple_orbits = twist.simple_orbits();
    let basis_classes = simple_orbits
        .iter()
        .map(|o| classes.iter().position(|c| c.members.contains(&o[0])).expect("every root is in a class"))
        .collect();
    RestrictedRootSystem {
        datum: datum.clone(),
        twist: twist.clone(),
        classes,
        simple_orbits,
        basis_classes,
        fixed_dim: fixed_dimension(twist.theta()),
    }
}

impl RestrictedRootSystem {
    /// `|Delta / theta|`.
    pub fn rank(&self) -> usize {
        self.simple_orbits.len()
    }

    pub fn positive_classes(&self) -> impl Iterator<Item = (usize, &OrbitClass)> {
        self.classes.iter().enumerate().filter(|(_, c)| c.positive)
    }

    /// Coordinates of a simple-root vector on the simple orbits: `sum_{i in O} v_i`.
    pub fn orbit_coordinates(&self, v: &[Rational64]) -> Vec<Rational64> {
        self.simple_orbits.iter().map(|o| o.iter().map(|&i| v[i]).sum()).collect()
    }

    /// Classes inside and outside the Levi subsystem spanned by the given simple orbits.
    pub fn levi_subsystem(&self, orbits: &[usize]) -> LeviSplit {
        let allowed: Vec<bool> =
            (0..self.datum.semisimple_rank()).map(|i| orbits.iter().any(|&o| self.simple_orbits[o].contains(&i))).collect();
        let (inside, outside) = (0..self.classes.len()).partition(|&c| {
            let root = self.datum.root(self.classes[c].members[0]);
            root.simple.iter().enumerate().all(|(i, x)| *x == 0 || allowed[i])
        });
        let mut simple_orbits = orbits.to_vec();
        simple_orbits.sort_unstable();
        LeviSplit { simple_orbits, inside, outside }
    }

    /// The invariant form on the root span, `(alpha_i, alpha_j)`.
    pub fn gram(&self) -> Vec<Vec<Rational64>> {
        invariant_form(&self.datum)
    }
}

/// Characteristic factor `det(1 - u Ad(r theta) | g_a)` from the class data:
/// `1 - u^{m_+} gamma(r)` for type I, times `1 + u^{m_-} gamma(r)` for type II.
pub fn char_factor(class: &OrbitClass, gamma_r: QMonomial) -> UProduct {
    let mut p = UProduct::one().with(gamma_r, class.m_plus, 1);
    if class.class_type == ClassType::II {
        p.push(gamma_r.neg(), class.m_minus, 1);
    }
    p
}

/// A Weyl- and diagram-invariant symmetric form, normalized per component.
pub fn invariant_form(datum: &BasedRootDatum) -> Vec<Vec<Rational64>> {
    let c = datum.cartan();
    let l = c.len();
    let mut len: Vec<Option<Rational64>> = vec![None; l];
    for comp in datum.components() {
        len[comp.start] = Some(Rational64::one());
        let mut changed = true;
        while changed {
            changed = false;
            for i in comp.clone() {
                for j in comp.clone() {
                    if let (Some(di), None) = (len[i], len[j]) {
                        if c[i][j] != 0 {
                            // c[i][j] d_j = c[j][i] d_i
                            len[j] = Some(di * c[j][i] / c[i][j]);
                            changed = true;
                        }
                    }
                }
            }
        }
        let min = comp.clone().map(|i| len[i].expect("connected")).min().expect("nonempty");
        for i in comp {
            len[i] = Some(len[i].unwrap() / min * 2);
        }
    }
    (0..l).map(|i| (0..l).map(|j| Rational64::from_integer(c[i][j]) * len[j].unwrap() / 2).collect()).collect()
}

/// Checks the root-system axioms for a finite set of vectors under a form:
/// integral Cartan numbers, closure under reflections, and reducedness.
pub fn is_reduced_root_system(vectors: &[Vec<Rational64>], gram: &[Vec<Rational64>]) -> bool {
    let form = |a: &[Rational64], b: &[Rational64]| -> Rational64 {
        let mut s = Rational64::zero();
        for i in 0..a.len() {
            for j in 0..b.len() {
                s += a[i] * gram[i][j] * b[j];
            }
        }
        s
    };
    for a in vectors {
        let aa = form(a, a);
        if !aa.is_positive() {
            return false;
        }
        for b in vectors {
            let n = form(b, a) * 2 / aa;
            if !n.is_integer() {
                return false;
            }
            let img: Vec<Rational64> = b.iter().zip(a).map(|(x, y)| *x - n * *y).collect();
            if !vectors.contains(&img) {
                return false;
            }
            if a != b {
                let (da, _) = ray(a);
                let (db, _) = ray(b);
                let neg: Vec<i64> = db.iter().map(|x| -x).collect();
                let opposite = b.iter().zip(a).all(|(x, y)| *x == -*y);
                if da == db || (da == neg && !opposite) {
                    return false;
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Isogeny;

    fn rrs(spec: &str, perm: Option<&[usize]>) -> RestrictedRootSystem {
        let d = BasedRootDatum::from_cartan_type(spec, &Isogeny::Adjoint).unwrap();
        let t = perm.map_or_else(|| Twist::identity(&d), |p| Twist::from_diagram(&d, p, None).unwrap());
        restrict(&d, &t)
    }

    fn r(n: i64) -> Rational64 {
        Rational64::from_integer(n)
    }

    #[test]
    fn unitary_a2_has_one_type_two_class() {
        let s = rrs("A2", Some(&[1, 0]));
        assert_eq!(s.classes.len(), 2);
        let a = &s.classes[s.basis_classes[0]];
        assert_eq!(a.size(), 3);
        assert_eq!(a.class_type, ClassType::II);
        assert_eq!((a.m_plus, a.m_minus), (r(2), r(1)));
        assert_eq!(a.f, r(4));
        assert_eq!(a.gamma, vec![1, 1]);
    }

    #[test]
    fn split_classes_are_singletons() {
        for spec in ["A1", "A2", "B2", "G2", "D4"] {
            let s = rrs(spec, None);
            assert_eq!(s.classes.len(), s.datum.roots().len());
            for c in &s.classes {
                assert_eq!((c.class_type, c.m_plus, c.m_minus), (ClassType::I, r(1), r(0)));
            }
            assert_eq!(s.fixed_dim, s.datum.rank());
        }
    }

    #[test]
    fn outer_a3_basis_classes() {
        let s = rrs("A3", Some(&[2, 1, 0]));
        let a = &s.classes[s.basis_classes[0]];
        let b = &s.classes[s.basis_classes[1]];
        assert_eq!(s.simple_orbits, vec![vec![0, 2], vec![1]]);
        assert_eq!((a.class_type, a.m_plus, a.m_minus), (ClassType::I, r(2), r(0)));
        assert_eq!((b.class_type, b.m_plus, b.m_minus), (ClassType::I, r(1), r(0)));
        assert_eq!(s.fixed_dim, 2);
    }

    #[test]
    fn classes_partition_roots_and_degrees_add_up() {
        for (spec, perm) in [("A2", vec![1, 0]), ("A4", vec![3, 2, 1, 0]), ("D4", vec![2, 1, 3, 0]), ("E6", vec![5, 1, 4, 3, 2, 0])] {
            let s = rrs(spec, Some(&perm));
            let total: usize = s.classes.iter().map(OrbitClass::size).sum();
            assert_eq!(total, s.datum.roots().len());
            for c in &s.classes {
                assert_eq!(c.m_plus + c.m_minus, Rational64::from_integer(c.size() as i64));
                assert!(c.m_plus >= c.m_minus && c.m_minus >= r(0));
                if c.class_type == ClassType::II {
                    assert!(spec == "A2" || spec == "A4");
                }
            }
        }
    }

    #[test]
    fn restricted_roots_form_reduced_systems() {
        for (spec, perm) in [("A2", vec![1, 0]), ("A3", vec![2, 1, 0]), ("A4", vec![3, 2, 1, 0]), ("D4", vec![2, 1, 3, 0]), ("A1xA1", vec![1, 0])] {
            let s = rrs(spec, Some(&perm));
            let vecs: Vec<Vec<Rational64>> = s.classes.iter().map(|c| c.gamma.iter().map(|&x| r(x)).collect()).collect();
            assert!(is_reduced_root_system(&vecs, &s.gram()), "{spec}");
        }
    }

    #[test]
    fn levi_split_in_a2() {
        let s = rrs("A2", None);
        let split = s.levi_subsystem(&[0]);
        assert_eq!(split.inside.len(), 2);
        assert_eq!(split.outside.len(), 4);
        assert!(s.levi_subsystem(&[0, 1]).outside.is_empty());
        assert_eq!(s.levi_subsystem(&[]).outside.len(), 6);
    }

    #[test]
    fn char_factor_shapes() {
        let s = rrs("A2", Some(&[1, 0]));
        let a = &s.classes[s.basis_classes[0]];
        let x = QMonomial::q_pow(r(1));
        let p = char_factor(a, x);
        // at u = 1 the class factor is (1 + q)(1 - q)
        let v = p.at_u_one().value().unwrap().to_ratfun();
        assert_eq!(v, crate::exactnum::QRatFun::q_poly(&[1, 0, -1]));
        // the factor 1 - u^{m_+} gamma(r) vanishes at u = q when gamma(r) = q^{-m_+}
        let z = char_factor(a, QMonomial::q_pow(r(-2)));
        assert_eq!(z.at_s(r(-1)).order(), 1);
    }
}
