use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{reduce_turns, QMonomial};
use crate::rootdata::matrix::IMat;
use crate::rootdata::BasedRootDatum;

/// A point `t = exp(2 pi i mu) q^nu` of a torus, with `mu` (mod 1) and `nu`
/// rational vectors in cocharacter coordinates. A character `x` takes the
/// value `exp(2 pi i <x, mu>) q^{<x, nu>}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusPoint {
    mu: Vec<Rational64>,
    nu: Vec<Rational64>,
}

fn dot(x: &[i64], v: &[Rational64]) -> Rational64 {
    x.iter().zip(v).map(|(a, b)| *b * *a).sum()
}

impl TorusPoint {
    pub fn new(mu: Vec<Rational64>, nu: Vec<Rational64>) -> Result<Self> {
        if mu.len() != nu.len() {
            return Err(Error::InvalidInput("mu and nu must have the same length".into()));
        }
        Ok(TorusPoint { mu: mu.into_iter().map(reduce_turns).collect(), nu })
    }

    pub fn identity(rank: usize) -> Self {
        TorusPoint { mu: vec![Rational64::zero(); rank], nu: vec![Rational64::zero(); rank] }
    }

    pub fn mu(&self) -> &[Rational64] {
        &self.mu
    }

    pub fn nu(&self) -> &[Rational64] {
        &self.nu
    }

    pub fn rank(&self) -> usize {
        self.mu.len()
    }

    /// Value of the character with coordinates `x`.
    pub fn value(&self, x: &[i64]) -> QMonomial {
        QMonomial::new(dot(x, &self.mu), dot(x, &self.nu))
    }

    /// Value of root `i` of `datum`, whose characters live on this torus.
    pub fn root_value(&self, datum: &BasedRootDatum, i: usize) -> QMonomial {
        self.value(&datum.root(i).character)
    }

    /// The point of the span of the roots taking prescribed values on the
    /// simple roots. Central coordinates are set to zero.
    pub fn from_simple_values(datum: &BasedRootDatum, values: &[QMonomial]) -> Result<Self> {
        let l = datum.semisimple_rank();
        if values.len() != l {
            return Err(Error::InvalidInput(format!("expected {l} simple-root values")));
        }
        // mu = sum_j a_j alpha_j^vee, so <alpha_i, mu> = sum_j cartan[i][j] a_j.
        let c = datum.cartan();
        let solve = |rhs: Vec<Rational64>| -> Vec<Rational64> {
            let mut m: Vec<Vec<Rational64>> =
                (0..l).map(|i| (0..l).map(|j| Rational64::from_integer(c[i][j])).chain([rhs[i]]).collect()).collect();
            for col in 0..l {
                let piv = (col..l).find(|&r| !m[r][col].is_zero()).expect("Cartan matrix is invertible");
                m.swap(col, piv);
                let p = m[col][col];
                for v in m[col].iter_mut() {
                    *v /= p;
                }
                for r in 0..l {
                    if r != col {
                        let f = m[r][col];
                        let pivot_row = m[col].clone();
                        for (v, pv) in m[r].iter_mut().zip(pivot_row) {
                            *v -= f * pv;
                        }
                    }
                }
            }
            let a: Vec<Rational64> = m.iter().map(|row| row[l]).collect();
            (0..datum.rank()).map(|k| (0..l).map(|j| a[j] * datum.root(j).cocharacter[k]).sum()).collect()
        };
        let mu = solve(values.iter().map(|v| v.turns()).collect());
        let nu = solve(values.iter().map(|v| v.qexp()).collect());
        Self::new(mu, nu)
    }

    /// True when `theta mu = mu` mod 1 and `theta nu = nu`, with `theta`
    /// acting on cocharacter coordinates.
    pub fn is_fixed_by(&self, theta: &IMat) -> bool {
        let act = |v: &[Rational64]| -> Vec<Rational64> {
            theta.iter().map(|row| row.iter().zip(v).map(|(a, b)| *b * *a).sum()).collect()
        };
        let m = act(&self.mu);
        let n = act(&self.nu);
        n == self.nu && m.iter().zip(&self.mu).all(|(a, b)| (*a - *b).is_integer())
    }

    pub fn mul(&self, other: &Self) -> Self {
        TorusPoint {
            mu: self.mu.iter().zip(&other.mu).map(|(a, b)| reduce_turns(a + b)).collect(),
            nu: self.nu.iter().zip(&other.nu).map(|(a, b)| a + b).collect(),
        }
    }

    /// Complex conjugate `exp(-2 pi i mu) q^nu`.
    pub fn conj(&self) -> Self {
        TorusPoint { mu: self.mu.iter().map(|m| reduce_turns(-*m)).collect(), nu: self.nu.clone() }
    }

    /// The unitary part `exp(2 pi i mu)`.
    pub fn unitary_part(&self) -> Self {
        TorusPoint { mu: self.mu.clone(), nu: vec![Rational64::zero(); self.nu.len()] }
    }

    pub fn to_record(&self) -> PointRecord {
        let s = |v: &[Rational64]| v.iter().map(|x| x.to_string()).collect();
        PointRecord { mu: s(&self.mu), nu: s(&self.nu) }
    }

    pub fn from_record(r: &PointRecord) -> Result<Self> {
        let p = |v: &[String]| -> Result<Vec<Rational64>> {
            v.iter()
                .map(|s| s.trim().parse::<Rational64>().map_err(|_| Error::InvalidInput(format!("bad rational {s:?}"))))
                .collect()
        };
        Self::new(p(&r.mu)?, p(&r.nu)?)
    }
}

impl std::fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = |v: &[Rational64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "mu=[{}] nu=[{}]", s(&self.mu), s(&self.nu))
    }
}

/// Wire form `{"mu": ["p/q", ...], "nu": ["p/q", ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointRecord {
    pub mu: Vec<String>,
    pub nu: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::Isogeny;

    fn r(a: i64, b: i64) -> Rational64 {
        Rational64::new(a, b)
    }

    #[test]
    fn prescribed_simple_values() {
        let d = BasedRootDatum::from_cartan_type("A2", &Isogeny::SimplyConnected).unwrap();
        let vals = [QMonomial::new(r(1, 3), r(1, 1)), QMonomial::new(r(1, 2), r(-1, 2))];
        let t = TorusPoint::from_simple_values(&d, &vals).unwrap();
        assert_eq!(t.root_value(&d, 0), vals[0]);
        assert_eq!(t.root_value(&d, 1), vals[1]);
        assert_eq!(t.root_value(&d, 2), vals[0].mul(&vals[1]));
    }

    #[test]
    fn adjoint_rank_one_coordinates() {
        // roots of the dual of PGL2 are 2 in cocharacter coordinates
        let d = BasedRootDatum::from_cartan_type("A1", &Isogeny::Adjoint).unwrap().dual();
        let t = TorusPoint::new(vec![r(0, 1)], vec![r(1, 2)]).unwrap();
        assert_eq!(t.root_value(&d, 0), QMonomial::q_pow(r(1, 1)));
    }

    #[test]
    fn fixedness_and_records() {
        let swap = vec![vec![0, 1], vec![1, 0]];
        let t = TorusPoint::new(vec![r(1, 2), r(-1, 2)], vec![r(1, 1), r(1, 1)]).unwrap();
        assert!(t.is_fixed_by(&swap));
        let u = TorusPoint::new(vec![r(1, 3), r(0, 1)], vec![r(1, 1), r(1, 1)]).unwrap();
        assert!(!u.is_fixed_by(&swap));
        assert_eq!(TorusPoint::from_record(&t.to_record()).unwrap(), t);
        assert_eq!(t.conj().conj(), t);
    }
}
