use std::collections::BTreeSet;

use num_rational::Rational64;
use rayon::prelude::*;
use serde::Serialize;

use super::context::GroupContext;
use crate::error::{Error, Result};
use crate::exactnum::{AtUOne, QMonomial};
use crate::localfactors::{adjoint_rep_semisimplified, PsiOrder, TorusPoint};
use crate::restricted::RestrictedRootSystem;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ResidualReport {
    /// Classes with `gamma_a(r) = q^{-m_+}` or `gamma_a(r) = -q^{-m_-}`.
    pub poles: usize,
    /// Classes with `gamma_a(r)^2 = 1`.
    pub zeros: usize,
    pub target: usize,
    pub residual: bool,
}

fn count(rrs: &RestrictedRootSystem, classes: &[usize], r: &TorusPoint, target: usize) -> ResidualReport {
    let (mut poles, mut zeros) = (0, 0);
    for &c in classes {
        let class = &rrs.classes[c];
        let g = class.gamma_value(&rrs.datum, r);
        if g == QMonomial::q_pow(-class.m_plus) || g == QMonomial::q_pow(-class.m_minus).neg() {
            poles += 1;
        }
        if g.powi(2).is_one() {
            zeros += 1;
        }
    }
    ResidualReport { poles, zeros, target, residual: poles >= zeros && poles - zeros == target }
}

/// Pole/zero count of the mu-function at `r` over all classes.
pub fn is_residual(rrs: &RestrictedRootSystem, r: &TorusPoint) -> Result<ResidualReport> {
    is_residual_levi(rrs, &(0..rrs.rank()).collect::<Vec<_>>(), r)
}

/// Residuality for the Levi subsystem spanned by the given simple orbits.
pub fn is_residual_levi(rrs: &RestrictedRootSystem, levi: &[usize], r: &TorusPoint) -> Result<ResidualReport> {
    if !r.is_fixed_by(rrs.twist.theta_dual()) {
        return Err(Error::NotThetaFixed);
    }
    if levi.iter().any(|&o| o >= rrs.rank()) {
        return Err(Error::InvalidInput(format!("Levi orbit index out of range (rank {})", rrs.rank())));
    }
    let split = rrs.levi_subsystem(levi);
    Ok(count(rrs, &split.inside, r, levi.len()))
}

/// Grid points residual for the Levi spanned by `levi`, with the remaining
/// simple-orbit coordinates set to 1.
pub fn levi_residual_points(group: &GroupContext, levi: &[usize], bounds: SearchBounds) -> Result<Vec<TorusPoint>> {
    let mut out = Vec::new();
    for_each_grid_point(group, bounds, levi, |_, r| {
        if is_residual_levi(&group.rrs, levi, &r)?.residual {
            out.push(r);
        }
        Ok(())
    })?;
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    /// Bound on the real exponents of the simple-orbit coordinates.
    pub b: i64,
    /// Denominator of the torsion parts.
    pub d: i64,
}

/// Largest restricted rank the grid search accepts.
pub const MAX_SEARCH_RANK: usize = 4;

impl SearchBounds {
    pub fn validate(&self, group: &GroupContext) -> Result<()> {
        if self.b < 0 || self.d < 1 {
            return Err(Error::InvalidInput("search bounds need B >= 0 and D >= 1".into()));
        }
        if group.rrs.rank() > MAX_SEARCH_RANK {
            return Err(Error::BoundExceeded(format!("restricted rank {} > {MAX_SEARCH_RANK}", group.rrs.rank())));
        }
        Ok(())
    }
}

impl Default for SearchBounds {
    fn default() -> Self {
        SearchBounds { b: 3, d: 6 }
    }
}

/// Grid of candidate coordinates for one simple orbit of size `l`.
fn orbit_grid(l: usize, bounds: SearchBounds) -> Vec<QMonomial> {
    let l = l as i64;
    let mut out = Vec::new();
    for a in 0..bounds.d {
        for b in -bounds.b * l..=bounds.b * l {
            out.push(QMonomial::new(Rational64::new(a, bounds.d), Rational64::new(b, l)));
        }
    }
    out
}

/// All twist-fixed points whose simple-orbit coordinates lie on the grid. The
/// callback receives the orbit coordinates and the point.
pub fn for_each_grid_point(group: &GroupContext, bounds: SearchBounds, orbits: &[usize], mut f: impl FnMut(&[QMonomial], TorusPoint) -> Result<()>) -> Result<()> {
    let rrs = &group.rrs;
    let grids: Vec<Vec<QMonomial>> = orbits.iter().map(|&o| orbit_grid(rrs.simple_orbits[o].len(), bounds)).collect();
    let mut idx = vec![0usize; orbits.len()];
    loop {
        let coords: Vec<QMonomial> = idx.iter().zip(&grids).map(|(&i, g)| g[i]).collect();
        let mut values = vec![QMonomial::one(); group.dual.semisimple_rank()];
        for (k, &o) in orbits.iter().enumerate() {
            for &i in &rrs.simple_orbits[o] {
                values[i] = coords[k];
            }
        }
        f(&coords, TorusPoint::from_simple_values(&group.dual, &values)?)?;
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(());
            }
            idx[k] += 1;
            if idx[k] < grids[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Reduce each orbit coordinate modulo `l`-th roots of unity (`l` the orbit
/// size): multiplying by `t / theta(t)` changes only these, and conjugates `r theta`.
fn reduce_orbits(values: &mut [QMonomial], orbits: &[Vec<usize>]) {
    for o in orbits {
        let l = o.len() as i64;
        if l > 1 {
            let x = values[o[0]];
            let t = x.turns() * l;
            let reduced = QMonomial::new((t - t.floor()) / l, x.qexp());
            for &i in o {
                values[i] = reduced;
            }
        }
    }
}

/// Canonical representative of the simple-root values under `W^theta` and
/// twisted conjugation by the torus.
fn canonical(values: &[QMonomial], weyl: &[crate::rootdata::WeylElement], orbits: &[Vec<usize>]) -> Vec<QMonomial> {
    let image = |w: &crate::rootdata::WeylElement| {
        let mut v: Vec<QMonomial> =
            (0..values.len()).map(|i| values.iter().enumerate().fold(QMonomial::one(), |acc, (k, x)| acc.mul(&x.powi(w.on_roots[k][i])))).collect();
        reduce_orbits(&mut v, orbits);
        v
    };
    weyl.iter().map(image).min().unwrap_or_else(|| {
        let mut v = values.to_vec();
        reduce_orbits(&mut v, orbits);
        v
    })
}

/// Residual points on the grid, one per `W^theta`-orbit up to twisted conjugacy, returned as their
/// canonical simple-root values and a representative point.
pub fn residual_search(group: &GroupContext, bounds: SearchBounds, weyl_bound: usize) -> Result<Vec<(Vec<QMonomial>, TorusPoint)>> {
    bounds.validate(group)?;
    let weyl = group.weyl_group(weyl_bound)?;
    let orbits: Vec<usize> = (0..group.rrs.rank()).collect();
    let mut grid = Vec::new();
    for_each_grid_point(group, bounds, &orbits, |_, r| {
        grid.push(r);
        Ok(())
    })?;
    let keys: Vec<Option<Vec<QMonomial>>> = grid
        .par_iter()
        .map(|r| Ok(is_residual(&group.rrs, r)?.residual.then(|| canonical(&group.simple_values(r), &weyl, &group.rrs.simple_orbits))))
        .collect::<Result<_>>()?;
    let seen: BTreeSet<Vec<QMonomial>> = keys.into_iter().flatten().collect();
    seen.into_iter().map(|key| Ok((key.clone(), TorusPoint::from_simple_values(&group.dual, &key)?))).collect()
}

/// Outcome of comparing the residuality count against finiteness of the
/// adjoint gamma factor on a grid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscretenessCheck {
    pub points: usize,
    pub residual: usize,
    /// Grid points where the two criteria disagree.
    pub mismatches: Vec<String>,
    /// Grid points with a finite gamma value that is not conjugation invariant.
    pub non_real: Vec<String>,
}

/// `gamma(0, Ad(r theta))` is finite and nonzero exactly at residual points.
/// Also records whether each finite value is real.
pub fn discreteness_check(group: &GroupContext, bounds: SearchBounds) -> Result<DiscretenessCheck> {
    bounds.validate(group)?;
    let orbits: Vec<usize> = (0..group.rrs.rank()).collect();
    let mut grid = Vec::new();
    for_each_grid_point(group, bounds, &orbits, |coords, r| {
        grid.push((coords.to_vec(), r));
        Ok(())
    })?;
    let rows: Vec<(String, bool, bool, bool)> = grid
        .par_iter()
        .map(|(coords, r)| {
            let residual = is_residual(&group.rrs, r)?.residual;
            let rep = adjoint_rep_semisimplified(&group.dual, &group.dual_twist, r);
            let (finite, real) = match rep.gamma_factor(PsiOrder::MinusOne) {
                AtUOne::Value(v) => (true, v.conj() == v),
                _ => (false, true),
            };
            let c: Vec<String> = coords.iter().map(|x| x.to_string()).collect();
            Ok((c.join(", "), residual, finite, real))
        })
        .collect::<Result<_>>()?;
    let mut out = DiscretenessCheck { points: rows.len(), residual: 0, mismatches: Vec::new(), non_real: Vec::new() };
    for (label, residual, finite, real) in rows {
        out.residual += residual as usize;
        if residual != finite {
            out.mismatches.push(label.clone());
        }
        if !real {
            out.non_real.push(label);
        }
    }
    Ok(out)
}
