//! Brute-force group orders over small finite fields and exact evaluation helpers.
#![allow(dead_code)]

use hecke_gamma::exactnum::QRatFun;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Value of a polynomial in `q` at an integer.
pub fn eval_poly_at(f: &QRatFun, q: i64) -> BigRational {
    assert_eq!(f.m(), 1, "expected a polynomial in q");
    let den = f.denominator().coeffs();
    assert_eq!(den.len(), 1, "expected a polynomial in q");
    let d = den[0].as_rational().expect("rational coefficients");
    let mut acc = BigRational::zero();
    let mut pow = BigRational::one();
    for c in f.numerator().coeffs() {
        acc += c.as_rational().expect("rational coefficients") * &pow;
        pow *= BigRational::from_integer(BigInt::from(q));
    }
    acc / d
}

fn det3(m: &[i64; 9], p: i64) -> i64 {
    let d = m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) + m[2] * (m[3] * m[7] - m[4] * m[6]);
    d.rem_euclid(p)
}

/// `|SL_2(F_p)|`.
pub fn count_sl2(p: i64) -> u64 {
    let mut n = 0;
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d - b * c).rem_euclid(p) == 1 {
                        n += 1;
                    }
                }
            }
        }
    }
    n
}

/// `|SL_3(F_2)|`.
pub fn count_sl3_f2() -> u64 {
    (0u32..512)
        .filter(|bits| {
            let m: [i64; 9] = std::array::from_fn(|i| ((bits >> i) & 1) as i64);
            det3(&m, 2) == 1
        })
        .count() as u64
}

/// `|Sp_4(F_2)|`: matrices with `g^T J g = J` for the standard alternating form.
pub fn count_sp4_f2() -> u64 {
    let j = [[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]];
    (0u32..1 << 16)
        .filter(|bits| {
            let g: [[u32; 4]; 4] = std::array::from_fn(|r| std::array::from_fn(|c| (bits >> (4 * r + c)) & 1));
            (0..4).all(|a| (0..4).all(|b| (0..4).map(|r| (0..4).map(|c| g[r][a] * j[r][c] * g[c][b]).sum::<u32>()).sum::<u32>() % 2 == j[a][b]))
        })
        .count() as u64
}

/// Arithmetic in `F_4 = F_2[w]/(w^2 + w + 1)`, elements as two-bit integers.
fn f4_mul(a: u8, b: u8) -> u8 {
    let (a0, a1, b0, b1) = (a & 1, a >> 1, b & 1, b >> 1);
    // (a0 + a1 w)(b0 + b1 w) with w^2 = w + 1
    let c0 = (a0 & b0) ^ (a1 & b1);
    let c1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1);
    c0 | (c1 << 1)
}

fn f4_frob(a: u8) -> u8 {
    f4_mul(a, a)
}

/// `|SU_3(F_2)|` inside `GL_3(F_4)`: `det g = 1` and `g^* J g = J` with `J`
/// antidiagonal and `*` the Frobenius-conjugate transpose.
pub fn count_su3_f2() -> u64 {
    let mut n = 0;
    for code in 0u32..1 << 18 {
        let g: [[u8; 3]; 3] = std::array::from_fn(|r| std::array::from_fn(|c| ((code >> (2 * (3 * r + c))) & 3) as u8));
        let unitary = (0..3).all(|a| {
            (0..3).all(|b| {
                let mut s = 0u8;
                for r in 0..3 {
                    // J has a single nonzero entry J[r][2 - r] = 1
                    s ^= f4_mul(f4_frob(g[r][a]), g[2 - r][b]);
                }
                s == u8::from(a + b == 2)
            })
        });
        if !unitary {
            continue;
        }
        let t = |i: usize, j: usize, k: usize| f4_mul(g[0][i], f4_mul(g[1][j], g[2][k]));
        let det = t(0, 1, 2) ^ t(0, 2, 1) ^ t(1, 0, 2) ^ t(1, 2, 0) ^ t(2, 0, 1) ^ t(2, 1, 0);
        if det == 1 {
            n += 1;
        }
    }
    n
}

/// Norm-one elements of `F_4^*` over `F_2`.
pub fn count_u1_f2() -> u64 {
    (1u8..4).filter(|&x| f4_mul(x, f4_frob(x)) == 1).count() as u64
}
