use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::datum::{BasedRootDatum, Isogeny};
use super::matrix;
use super::twist::Twist;
use crate::error::Result;

/// A finite abelian group by its invariant factors `d_1 | d_2 | ...`, each `>= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteAbelianGroupDesc {
    pub invariant_factors: Vec<u64>,
}

impl FiniteAbelianGroupDesc {
    pub fn trivial() -> Self {
        FiniteAbelianGroupDesc { invariant_factors: Vec::new() }
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    /// Recover invariant factors from the multiset of element orders.
    pub fn from_element_orders(orders: &[u64]) -> Self {
        let n = orders.len() as u64;
        let mut primes = Vec::new();
        let mut m = n;
        let mut p = 2;
        while m > 1 {
            if m % p == 0 {
                primes.push(p);
                while m % p == 0 {
                    m /= p;
                }
            }
            p += 1;
        }
        // cyclic p-factors of order >= p^j number log_p(a_j / a_{j-1})
        let mut factors: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
        for p in primes {
            let mut exps = Vec::new();
            let mut prev = 1u64;
            let mut pj = 1u64;
            loop {
                pj *= p;
                let a = orders.iter().filter(|&&o| pj % o == 0).count() as u64;
                let mut ratio = a / prev;
                let mut count = 0;
                while ratio > 1 {
                    ratio /= p;
                    count += 1;
                }
                if count == 0 {
                    break;
                }
                exps.push(count);
                prev = a;
            }
            // exps[j-1] = number of factors of order >= p^j
            let k = exps.first().copied().unwrap_or(0);
            let mut sizes = vec![0u32; k as usize];
            for (idx, &c) in exps.iter().enumerate() {
                for s in sizes.iter_mut().take(c as usize) {
                    *s = idx as u32 + 1;
                }
            }
            factors.insert(p, sizes);
        }
        let k = factors.values().map(Vec::len).max().unwrap_or(0);
        let mut inv: Vec<u64> = (0..k)
            .map(|i| factors.iter().map(|(p, s)| s.get(i).map_or(1, |e| p.pow(*e))).product())
            .collect();
        inv.sort_unstable();
        FiniteAbelianGroupDesc { invariant_factors: inv }
    }
}

/// The torsion part of `(X_* / Z Phi^vee)^theta`.
pub fn fundamental_group_invariants(datum: &BasedRootDatum, twist: &Twist) -> FiniteAbelianGroupDesc {
    let r = datum.rank();
    let l = datum.semisimple_rank();
    // columns: simple coroots in X_* coordinates
    let a: matrix::IMat = (0..r).map(|row| (0..l).map(|j| datum.root(j).cocharacter[row]).collect()).collect();
    let (u, d) = matrix::smith(&a);
    let uinv = matrix::inverse_integer(&u).expect("unimodular");
    let act = matrix::mul(&matrix::mul(&u, twist.theta_dual()), &uinv);
    let tors: Vec<(usize, i64)> = d.iter().enumerate().filter(|(_, &x)| x > 1).map(|(i, &x)| (i, x)).collect();
    let total: i64 = tors.iter().map(|(_, x)| x).product();
    let mut orders = Vec::new();
    for mut code in 0..total {
        let mut y = vec![0i64; r];
        for &(i, m) in &tors {
            y[i] = code % m;
            code /= m;
        }
        let img = matrix::apply(&act, &y);
        if tors.iter().all(|&(i, m)| (img[i] - y[i]).rem_euclid(m) == 0) {
            let ord = tors.iter().fold(1i64, |acc, &(i, m)| acc.lcm(&(m / y[i].gcd(&m))));
            orders.push(ord as u64);
        }
    }
    FiniteAbelianGroupDesc::from_element_orders(&orders)
}

/// `|Omega_ad^theta| / |Omega^theta|`, the adjoint datum carrying the same twist.
pub fn omega_index_ratio(datum: &BasedRootDatum, twist: &Twist) -> Result<Ratio<u64>> {
    let spec: Vec<String> = datum.types().iter().map(ToString::to_string).collect();
    let ad = BasedRootDatum::build(&spec.join("x"), &Isogeny::Adjoint, datum.central_rank())?;
    let block = twist.central_block();
    let ad_twist = Twist::from_diagram(&ad, twist.permutation(), Some(&block))?;
    let num = fundamental_group_invariants(&ad, &ad_twist).order();
    let den = fundamental_group_invariants(datum, twist).order();
    Ok(Ratio::new(num, den))
}
