use std::collections::{HashSet, VecDeque};

use super::datum::BasedRootDatum;
use super::matrix::{self, IMat};
use super::twist::Twist;
use crate::error::{Error, Result};

pub const DEFAULT_WEYL_BOUND: usize = 100_000;

/// A Weyl group element acting on `X^*` and on simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    pub on_characters: IMat,
    pub on_roots: IMat,
}

/// The elements of `W` commuting with the twist.
pub fn weyl_elements(datum: &BasedRootDatum, twist: &Twist, bound: usize) -> Result<Vec<WeylElement>> {
    let l = datum.semisimple_rank();
    let gens: Vec<WeylElement> = (0..l)
        .map(|i| WeylElement { on_characters: datum.reflection_on_characters(i), on_roots: datum.reflection_on_roots(i) })
        .collect();
    let start = WeylElement { on_characters: matrix::identity(datum.rank()), on_roots: matrix::identity(l) };
    let mut seen: HashSet<IMat> = HashSet::from([start.on_roots.clone()]);
    let mut all = vec![start.clone()];
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        for g in &gens {
            let next = WeylElement {
                on_characters: matrix::mul(&g.on_characters, &w.on_characters),
                on_roots: matrix::mul(&g.on_roots, &w.on_roots),
            };
            if seen.insert(next.on_roots.clone()) {
                if all.len() >= bound {
                    return Err(Error::WeylBound(bound));
                }
                all.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    let p = twist.on_simple_coordinates();
    Ok(all.into_iter().filter(|w| matrix::mul(&p, &w.on_roots) == matrix::mul(&w.on_roots, &p)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::datum::Isogeny;

    fn count(spec: &str, perm: Option<&[usize]>) -> usize {
        let d = BasedRootDatum::from_cartan_type(spec, &Isogeny::Adjoint).unwrap();
        let t = perm.map_or_else(|| Twist::identity(&d), |p| Twist::from_diagram(&d, p, None).unwrap());
        weyl_elements(&d, &t, DEFAULT_WEYL_BOUND).unwrap().len()
    }

    #[test]
    fn group_orders() {
        assert_eq!(count("A1", None), 2);
        assert_eq!(count("A2", None), 6);
        assert_eq!(count("A2", Some(&[1, 0])), 2);
        assert_eq!(count("A1xA1", Some(&[1, 0])), 2);
        assert_eq!(count("B2", None), 8);
        assert_eq!(count("G2", None), 12);
        assert_eq!(count("D4", Some(&[2, 1, 3, 0])), 12);
    }

    #[test]
    fn bound_is_enforced() {
        let d = BasedRootDatum::from_cartan_type("B3", &Isogeny::Adjoint).unwrap();
        assert_eq!(weyl_elements(&d, &Twist::identity(&d), 10), Err(Error::WeylBound(10)));
    }

    #[test]
    fn representations_agree_on_roots() {
        let d = BasedRootDatum::from_cartan_type("B2", &Isogeny::SimplyConnected).unwrap();
        for w in weyl_elements(&d, &Twist::identity(&d), 100).unwrap() {
            for r in d.roots() {
                let img = matrix::apply(&w.on_roots, &r.simple);
                let idx = d.root_index(&img).expect("W permutes roots");
                assert_eq!(matrix::apply(&w.on_characters, &r.character), d.root(idx).character);
            }
        }
    }
}
