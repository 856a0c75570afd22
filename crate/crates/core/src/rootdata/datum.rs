use std::collections::{HashMap, VecDeque};

use super::cartan::{parse_type, product_cartan, CartanType};
use super::matrix::{self, IMat};
use crate::error::{Error, Result};

/// Which lattice sits between the root and weight lattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Isogeny {
    SimplyConnected,
    Adjoint,
    /// Rows are a basis of `X^*` written in fundamental-weight coordinates.
    Basis(IMat),
}

/// A root with its coroot, in several coordinate systems.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Root {
    /// Coefficients on the simple roots.
    pub simple: Vec<i64>,
    /// Coefficients of the coroot on the simple coroots.
    pub coroot_simple: Vec<i64>,
    /// Coordinates in `X^*`.
    pub character: Vec<i64>,
    /// Coordinates of the coroot in `X_*`.
    pub cocharacter: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.simple.iter().sum()
    }
}

/// Based root datum with `X^* = X_* = Z^r` and the standard pairing.
///
/// Roots are stored positive first, sorted by height; the first `l` are the
/// simple roots and root `i + N` is the negative of root `i`.
#[derive(Clone, Debug)]
pub struct BasedRootDatum {
    types: Vec<CartanType>,
    cartan: IMat,
    rank: usize,
    roots: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
}

impl PartialEq for BasedRootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.types == other.types && self.cartan == other.cartan && self.rank == other.rank && self.roots == other.roots
    }
}

impl BasedRootDatum {
    pub fn from_cartan_type(spec: &str, isogeny: &Isogeny) -> Result<Self> {
        Self::build(spec, isogeny, 0)
    }

    /// Product of the semisimple datum with a split central torus of rank `t`.
    pub fn build(spec: &str, isogeny: &Isogeny, t: usize) -> Result<Self> {
        let types = if spec.trim().is_empty() || spec.trim() == "T" { Vec::new() } else { parse_type(spec)? };
        let cartan = product_cartan(&types);
        let l = cartan.len();
        let basis = match isogeny {
            Isogeny::SimplyConnected => matrix::identity(l),
            Isogeny::Adjoint => cartan.clone(),
            Isogeny::Basis(b) => {
                if b.len() != l || b.iter().any(|r| r.len() != l) {
                    return Err(Error::InvalidLattice(format!("basis must be {l}x{l}")));
                }
                b.clone()
            }
        };
        let binv = matrix::inverse_rational(&basis).ok_or_else(|| Error::InvalidLattice("singular basis".into()))?;
        // alpha_j in weight coordinates is row j of the Cartan matrix; solve c B = row.
        let mut chars = Vec::with_capacity(l);
        for row in &cartan {
            let c: Option<Vec<i64>> = (0..l)
                .map(|k| {
                    let s: num_rational::Rational64 = (0..l).map(|i| binv[i][k] * row[i]).sum();
                    s.is_integer().then(|| s.to_integer())
                })
                .collect();
            let mut c = c.ok_or_else(|| Error::InvalidLattice("lattice does not contain the root lattice".into()))?;
            c.resize(l + t, 0);
            chars.push(c);
        }
        let cochars = (0..l)
            .map(|j| {
                let mut v: Vec<i64> = (0..l).map(|k| basis[k][j]).collect();
                v.resize(l + t, 0);
                v
            })
            .collect();
        Self::from_simple(types, cartan, l + t, chars, cochars)
    }

    /// Close up under simple reflections from explicit simple roots and coroots.
    pub fn from_simple(types: Vec<CartanType>, cartan: IMat, rank: usize, chars: Vec<Vec<i64>>, cochars: Vec<Vec<i64>>) -> Result<Self> {
        let l = cartan.len();
        for i in 0..l {
            for j in 0..l {
                if matrix::dot(&chars[i], &cochars[j]) != cartan[i][j] {
                    return Err(Error::InvalidLattice("pairing does not reproduce the Cartan matrix".into()));
                }
            }
        }
        let unit = |i: usize| (0..l).map(|k| (k == i) as i64).collect::<Vec<_>>();
        let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
        let mut queue = VecDeque::new();
        for i in 0..l {
            seen.insert(unit(i), unit(i));
            queue.push_back(unit(i));
        }
        while let Some(b) = queue.pop_front() {
            let bv = seen[&b].clone();
            for j in 0..l {
                let pair: i64 = (0..l).map(|k| b[k] * cartan[k][j]).sum();
                let copair: i64 = (0..l).map(|k| cartan[j][k] * bv[k]).sum();
                let mut nb = b.clone();
                nb[j] -= pair;
                let mut nbv = bv.clone();
                nbv[j] -= copair;
                if !seen.contains_key(&nb) {
                    seen.insert(nb.clone(), nbv);
                    queue.push_back(nb);
                }
            }
        }
        let mut pos: Vec<(Vec<i64>, Vec<i64>)> = seen.into_iter().filter(|(b, _)| b.iter().all(|&x| x >= 0)).collect();
        pos.sort_by(|a, b| {
            let (ha, hb): (i64, i64) = (a.0.iter().sum(), b.0.iter().sum());
            ha.cmp(&hb).then_with(|| b.0.cmp(&a.0))
        });
        let lift = |coeffs: &[i64], basis: &[Vec<i64>]| -> Vec<i64> {
            (0..rank).map(|c| coeffs.iter().zip(basis).map(|(x, v)| x * v[c]).sum()).collect()
        };
        let mut roots: Vec<Root> = pos
            .iter()
            .map(|(b, bv)| Root { simple: b.clone(), coroot_simple: bv.clone(), character: lift(b, &chars), cocharacter: lift(bv, &cochars) })
            .collect();
        let negs: Vec<Root> = roots
            .iter()
            .map(|r| Root {
                simple: r.simple.iter().map(|x| -x).collect(),
                coroot_simple: r.coroot_simple.iter().map(|x| -x).collect(),
                character: r.character.iter().map(|x| -x).collect(),
                cocharacter: r.cocharacter.iter().map(|x| -x).collect(),
            })
            .collect();
        roots.extend(negs);
        let index = roots.iter().enumerate().map(|(i, r)| (r.simple.clone(), i)).collect();
        Ok(BasedRootDatum { types, cartan, rank, roots, index })
    }

    pub fn types(&self) -> &[CartanType] {
        &self.types
    }

    /// `cartan()[i][j] = <alpha_i, alpha_j^vee>`.
    pub fn cartan(&self) -> &IMat {
        &self.cartan
    }

    /// Rank of `X^*`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of simple roots.
    pub fn semisimple_rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn central_rank(&self) -> usize {
        self.rank - self.semisimple_rank()
    }

    pub fn is_semisimple(&self) -> bool {
        self.central_rank() == 0
    }

    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &Root {
        &self.roots[i]
    }

    pub fn num_positive(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.roots[..self.num_positive()]
    }

    pub fn simple_roots(&self) -> &[Root] {
        &self.roots[..self.semisimple_rank()]
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.num_positive()
    }

    pub fn negative_of(&self, i: usize) -> usize {
        let n = self.num_positive();
        if i < n {
            i + n
        } else {
            i - n
        }
    }

    /// Index of the root with the given simple-root coefficients.
    pub fn root_index(&self, simple: &[i64]) -> Option<usize> {
        self.index.get(simple).copied()
    }

    /// Dimension of the Lie algebra.
    pub fn dimension(&self) -> usize {
        self.roots.len() + self.rank
    }

    /// Simple-root index ranges of the irreducible components.
    pub fn components(&self) -> Vec<std::ops::Range<usize>> {
        let mut off = 0;
        self.types
            .iter()
            .map(|t| {
                off += t.rank;
                off - t.rank..off
            })
            .collect()
    }

    /// The dual datum: roots and coroots, `X^*` and `X_*` exchanged. Root `i`
    /// of the dual is the coroot of root `i`.
    pub fn dual(&self) -> Self {
        let roots: Vec<Root> = self
            .roots
            .iter()
            .map(|r| Root {
                simple: r.coroot_simple.clone(),
                coroot_simple: r.simple.clone(),
                character: r.cocharacter.clone(),
                cocharacter: r.character.clone(),
            })
            .collect();
        let index = roots.iter().enumerate().map(|(i, r)| (r.simple.clone(), i)).collect();
        BasedRootDatum {
            types: self.types.iter().map(CartanType::dual).collect(),
            cartan: matrix::transpose(&self.cartan),
            rank: self.rank,
            roots,
            index,
        }
    }

    /// Matrix of the simple reflection `s_i` on `X^*`.
    pub fn reflection_on_characters(&self, i: usize) -> IMat {
        let a = &self.roots[i].character;
        let av = &self.roots[i].cocharacter;
        (0..self.rank).map(|r| (0..self.rank).map(|c| (r == c) as i64 - a[r] * av[c]).collect()).collect()
    }

    /// Matrix of `s_i` on simple-root coordinates.
    pub fn reflection_on_roots(&self, i: usize) -> IMat {
        let l = self.semisimple_rank();
        // s_i(alpha_k) = alpha_k - <alpha_k, alpha_i^vee> alpha_i; column k is the image of alpha_k
        (0..l)
            .map(|r| (0..l).map(|k| (r == k) as i64 - if r == i { self.cartan[k][i] } else { 0 }).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_counts_match_tables() {
        for s in ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4", "E6", "A1xA1", "B2xG2"] {
            let d = BasedRootDatum::from_cartan_type(s, &Isogeny::Adjoint).unwrap();
            let n: usize = d.types().iter().map(CartanType::positive_root_count).sum();
            assert_eq!(d.num_positive(), n, "{s}");
            for r in d.roots() {
                assert_eq!(matrix::dot(&r.character, &r.cocharacter), 2);
            }
        }
    }

    #[test]
    fn small_cases() {
        let a1 = BasedRootDatum::from_cartan_type("A1", &Isogeny::Adjoint).unwrap();
        assert_eq!(a1.rank(), 1);
        assert_eq!(a1.roots()[0].character, vec![1]);
        assert_eq!(a1.roots()[0].cocharacter, vec![2]);
        let a2 = BasedRootDatum::from_cartan_type("A2", &Isogeny::SimplyConnected).unwrap();
        assert_eq!(a2.cartan(), &vec![vec![2, -1], vec![-1, 2]]);
        let g2 = BasedRootDatum::from_cartan_type("G2", &Isogeny::Adjoint).unwrap();
        assert_eq!(g2.roots().len(), 12);
    }

    #[test]
    fn dual_swaps_lengths() {
        let b3 = BasedRootDatum::from_cartan_type("B3", &Isogeny::SimplyConnected).unwrap();
        let d = b3.dual();
        assert_eq!(d.types()[0].family, 'C');
        assert_eq!(d.dual(), b3);
        assert_eq!(d.roots().len(), b3.roots().len());
    }

    #[test]
    fn intermediate_lattices() {
        // SL4 / mu_2: weight lattice generated by alpha's and 2 w_2
        let basis = vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, 2, 0]];
        assert!(BasedRootDatum::from_cartan_type("A3", &Isogeny::Basis(basis)).is_ok());
        let bad = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 2]];
        assert!(BasedRootDatum::from_cartan_type("A3", &Isogeny::Basis(bad)).is_err());
    }

    #[test]
    fn central_torus_pads_coordinates() {
        let d = BasedRootDatum::build("A1", &Isogeny::SimplyConnected, 1).unwrap();
        assert_eq!(d.rank(), 2);
        assert_eq!(d.central_rank(), 1);
        assert_eq!(d.roots()[0].character, vec![2, 0]);
        assert_eq!(d.dimension(), 4);
    }
}
