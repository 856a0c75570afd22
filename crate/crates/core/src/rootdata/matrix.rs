//! Small dense integer matrices. Vectors are columns; `m[i][j]` is row `i`.

use num_rational::Rational64;
use num_traits::{One, Zero};

pub type IMat = Vec<Vec<i64>>;

pub fn identity(n: usize) -> IMat {
    (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect()
}

pub fn zeros(r: usize, c: usize) -> IMat {
    vec![vec![0; c]; r]
}

pub fn transpose(a: &IMat) -> IMat {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len()).map(|j| a.iter().map(|row| row[j]).collect()).collect()
}

pub fn mul(a: &IMat, b: &IMat) -> IMat {
    let inner = b.len();
    let cols = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| (0..cols).map(|j| (0..inner).map(|k| row[k] * b[k][j]).sum()).collect())
        .collect()
}

pub fn apply(a: &IMat, v: &[i64]) -> Vec<i64> {
    a.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Smallest `d >= 1` with `a^d = 1`, up to `bound`.
pub fn order(a: &IMat, bound: usize) -> Option<usize> {
    let id = identity(a.len());
    let mut p = a.clone();
    for d in 1..=bound {
        if p == id {
            return Some(d);
        }
        p = mul(&p, a);
    }
    None
}

pub fn to_rational(a: &IMat) -> Vec<Vec<Rational64>> {
    a.iter().map(|r| r.iter().map(|x| Rational64::from_integer(*x)).collect()).collect()
}

/// Inverse over the rationals, `None` if singular.
pub fn inverse_rational(a: &IMat) -> Option<Vec<Vec<Rational64>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational64>> = to_rational(a);
    let mut inv = to_rational(&identity(n));
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        inv.swap(col, piv);
        let p = m[col][col];
        for j in 0..n {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                for j in 0..n {
                    let (mc, ic) = (m[col][j], inv[col][j]);
                    m[r][j] -= f * mc;
                    inv[r][j] -= f * ic;
                }
            }
        }
    }
    Some(inv)
}

/// Inverse over the integers, `None` unless `a` is unimodular.
pub fn inverse_integer(a: &IMat) -> Option<IMat> {
    let inv = inverse_rational(a)?;
    inv.iter()
        .map(|row| row.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect::<Option<Vec<_>>>())
        .collect()
}

/// Coefficients `c_0, ..., c_n` of `det(x - a)`, by Faddeev-LeVerrier.
pub fn char_poly(a: &IMat) -> Vec<i64> {
    let n = a.len();
    let ar = to_rational(a);
    let mut c = vec![Rational64::zero(); n + 1];
    c[n] = Rational64::one();
    let mut mk = vec![vec![Rational64::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = vec![vec![Rational64::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut s = Rational64::zero();
                for l in 0..n {
                    s += ar[i][l] * mk[l][j];
                }
                next[i][j] = s;
            }
            next[i][i] += c[n - k + 1];
        }
        mk = next;
        let mut tr = Rational64::zero();
        for i in 0..n {
            for l in 0..n {
                tr += ar[i][l] * mk[l][i];
            }
        }
        c[n - k] = -tr / Rational64::from_integer(k as i64);
    }
    c.into_iter().map(|x| x.to_integer()).collect()
}

/// Smith normal form: returns `(u, d)` with `u` unimodular and `u a v` diagonal
/// with entries `d` (nonnegative, successively dividing), for some unimodular `v`.
pub fn smith(a: &IMat) -> (IMat, Vec<i64>) {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    let mut a = a.clone();
    let mut u = identity(m);
    let mut diag = Vec::new();
    for t in 0..m.min(n) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                diag.resize(m.min(n), 0);
                return (u, diag);
            };
            a.swap(t, pi);
            u.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t];
            let mut dirty = false;
            for i in t + 1..m {
                let f = a[i][t].div_euclid(p);
                if f != 0 {
                    for j in 0..n {
                        a[i][j] -= f * a[t][j];
                    }
                    for j in 0..m {
                        u[i][j] -= f * u[t][j];
                    }
                }
                dirty |= a[i][t] != 0;
            }
            for j in t + 1..n {
                let f = a[t][j].div_euclid(p);
                if f != 0 {
                    for row in a.iter_mut() {
                        row[j] -= f * row[t];
                    }
                }
                dirty |= a[t][j] != 0;
            }
            if dirty {
                continue;
            }
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| a[i][j] % p != 0));
            if let Some(i) = bad {
                for j in 0..n {
                    a[t][j] += a[i][j];
                }
                for j in 0..m {
                    u[t][j] += u[i][j];
                }
                continue;
            }
            break;
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        diag.push(a[t][t]);
    }
    (u, diag)
}
