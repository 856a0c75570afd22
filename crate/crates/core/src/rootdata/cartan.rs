use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::matrix::IMat;
use crate::error::{Error, Result};

/// An irreducible finite Cartan type with Bourbaki node labelling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub family: char,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: char, rank: usize) -> Result<Self> {
        let ok = match family {
            'A' => rank >= 1,
            'B' => rank >= 2,
            'C' => rank >= 2,
            'D' => rank >= 4,
            'E' => (6..=8).contains(&rank),
            'F' => rank == 4,
            'G' => rank == 2,
            _ => false,
        };
        if ok {
            Ok(CartanType { family, rank })
        } else {
            Err(Error::MalformedType(format!("{family}{rank}")))
        }
    }

    /// `cartan[i][j] = <alpha_i, alpha_j^vee>`.
    pub fn cartan_matrix(&self) -> IMat {
        let n = self.rank;
        let mut c = vec![vec![0i64; n]; n];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize| {
            c[i][j] = -1;
            c[j][i] = -1;
        };
        match self.family {
            'A' | 'B' | 'C' => (0..n - 1).for_each(|i| link(i, i + 1)),
            'D' => {
                (0..n - 2).for_each(|i| link(i, i + 1));
                link(n - 3, n - 1);
            }
            'E' => {
                link(0, 2);
                link(1, 3);
                (2..n - 1).for_each(|i| link(i, i + 1));
            }
            'F' => (0..3).for_each(|i| link(i, i + 1)),
            'G' => link(0, 1),
            _ => unreachable!(),
        }
        match self.family {
            'B' => c[n - 2][n - 1] = -2,
            'C' => c[n - 1][n - 2] = -2,
            'F' => c[1][2] = -2,
            'G' => c[1][0] = -3,
            _ => {}
        }
        c
    }

    /// Type of the dual root system. For F4 and G2 the node order is reversed.
    pub fn dual(&self) -> Self {
        match self.family {
            'B' => CartanType { family: 'C', rank: self.rank },
            'C' => CartanType { family: 'B', rank: self.rank },
            _ => *self,
        }
    }

    pub fn positive_root_count(&self) -> usize {
        let n = self.rank;
        match self.family {
            'A' => n * (n + 1) / 2,
            'B' | 'C' => n * n,
            'D' => n * (n - 1),
            'E' => [36, 63, 120][n - 6],
            'F' => 24,
            'G' => 6,
            _ => unreachable!(),
        }
    }

    /// Degrees of the basic invariants of the Weyl group.
    pub fn degrees(&self) -> Vec<u32> {
        let n = self.rank as u32;
        match self.family {
            'A' => (2..=n + 1).collect(),
            'B' | 'C' => (1..=n).map(|i| 2 * i).collect(),
            'D' => {
                let mut d: Vec<u32> = (1..n).map(|i| 2 * i).collect();
                d.push(n);
                d
            }
            'E' => match n {
                6 => vec![2, 5, 6, 8, 9, 12],
                7 => vec![2, 6, 8, 10, 12, 14, 18],
                _ => vec![2, 8, 12, 14, 18, 20, 24, 30],
            },
            'F' => vec![2, 6, 8, 12],
            'G' => vec![2, 6],
            _ => unreachable!(),
        }
    }

    /// Eigenvalues of a diagram automorphism of order `order` on the basic
    /// invariants, as turns `k/order`, aligned with `degrees()`.
    pub fn twisted_degrees(&self, order: usize) -> Result<Vec<(u32, i64)>> {
        let d = self.degrees();
        let unsupported = || Error::UnsupportedTwist(format!("{}{} of order {order}", self.family, self.rank));
        Ok(match (order, self.family) {
            (1, _) => d.into_iter().map(|x| (x, 0)).collect(),
            (2, 'A') if self.rank >= 2 => d.into_iter().map(|x| (x, (x % 2) as i64)).collect(),
            (2, 'D') => {
                // one of the (possibly two) invariants of degree n changes sign
                let mut flipped = false;
                d.into_iter()
                    .rev()
                    .map(|x| {
                        let s = if x as usize == self.rank && !flipped {
                            flipped = true;
                            1
                        } else {
                            0
                        };
                        (x, s)
                    })
                    .collect::<Vec<_>>()
                    .into_iter()
                    .rev()
                    .collect()
            }
            (2, 'E') if self.rank == 6 => d.into_iter().map(|x| (x, (x == 5 || x == 9) as i64)).collect(),
            (3, 'D') if self.rank == 4 => vec![(2, 0), (4, 1), (4, 2), (6, 0)],
            _ => return Err(unsupported()),
        })
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let family = chars.next().ok_or_else(|| Error::MalformedType(s.into()))?.to_ascii_uppercase();
        let rank: usize = chars.as_str().parse().map_err(|_| Error::MalformedType(s.into()))?;
        Self::new(family, rank)
    }
}

/// Parse `"A2"`, `"A1xA1"`, `"B2 x G2"`, ...
pub fn parse_type(spec: &str) -> Result<Vec<CartanType>> {
    if spec.trim().is_empty() {
        return Err(Error::MalformedType(spec.into()));
    }
    spec.split(['x', 'X', '*']).map(str::parse).collect()
}

/// Block-diagonal Cartan matrix of a product.
pub fn product_cartan(types: &[CartanType]) -> IMat {
    let n: usize = types.iter().map(|t| t.rank).sum();
    let mut c = vec![vec![0; n]; n];
    let mut off = 0;
    for t in types {
        let b = t.cartan_matrix();
        for i in 0..t.rank {
            for j in 0..t.rank {
                c[off + i][off + j] = b[i][j];
            }
        }
        off += t.rank;
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::matrix;

    fn det(c: &IMat) -> i64 {
        matrix::char_poly(c)[0] * if c.len() % 2 == 0 { 1 } else { -1 }
    }

    #[test]
    fn connection_indices() {
        for (s, d) in [("A1", 2), ("A3", 4), ("B3", 2), ("C3", 2), ("D4", 4), ("D5", 4), ("E6", 3), ("E7", 2), ("E8", 1), ("F4", 1), ("G2", 1)] {
            let t: CartanType = s.parse().unwrap();
            assert_eq!(det(&t.cartan_matrix()), d, "{s}");
        }
    }

    #[test]
    fn degrees_multiply_to_weyl_order() {
        for (s, w) in [("A2", 6u64), ("B2", 8), ("G2", 12), ("D4", 192), ("F4", 1152), ("E6", 51840)] {
            let t: CartanType = s.parse().unwrap();
            assert_eq!(t.degrees().iter().map(|&d| d as u64).product::<u64>(), w);
            let n: u32 = t.degrees().iter().map(|d| d - 1).sum();
            assert_eq!(n as usize, t.positive_root_count());
        }
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_type("A1xA1").unwrap().len(), 2);
        assert!(parse_type("Q3").is_err());
        assert!(parse_type("D3").is_err());
        assert!(parse_type("").is_err());
    }
}
