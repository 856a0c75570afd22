mod common;

use common::*;
use hecke_gamma::rootdata::{order_polynomial, GroupSpec};
use num_bigint::BigInt;
use num_rational::BigRational;

fn order_at(name: &str, q: i64) -> BigRational {
    let (d, t) = GroupSpec::builtin(name).unwrap().build().unwrap();
    eval_poly_at(&order_polynomial(&d, &t).unwrap(), q)
}

fn int(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[test]
fn sl2_over_f2_and_f3() {
    assert_eq!(count_sl2(2), 6);
    assert_eq!(count_sl2(3), 24);
    assert_eq!(order_at("SL2", 2), int(6));
    assert_eq!(order_at("SL2", 3), int(24));
    assert_eq!(order_at("PGL2", 3), int(24));
}

#[test]
fn sl3_over_f2() {
    assert_eq!(order_at("SL3", 2), int(count_sl3_f2()));
}

#[test]
fn sp4_over_f2() {
    assert_eq!(order_at("Sp4", 2), int(count_sp4_f2()));
}

#[test]
fn su3_over_f2() {
    let n = count_su3_f2();
    assert_eq!(n, 216);
    assert_eq!(order_at("SU3", 2), int(n));
}

#[test]
fn anisotropic_torus_over_f2() {
    assert_eq!(order_at("U1", 2), int(count_u1_f2()));
}
