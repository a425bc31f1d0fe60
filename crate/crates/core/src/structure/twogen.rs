//! Two-generated subgroups of a given order.
//!
//! `x` runs over class representatives and `y` over the whole group, so
//! every two-generated subgroup of the target order is met up to
//! conjugacy. With a [`PairProfile`] taken from a model of the expected
//! group only pairs satisfying the same word orders are built.

use std::collections::HashSet;
use std::hash::{Hash, Hasher};

use super::classes::{cyclic_subgroup_classes, element_classes, DEFAULT_SEED, EXACT_CAP};
use crate::error::{Error, Result};
use crate::numtheory::gcd;
use crate::permcore::{ChainBuilder, Group, Perm};

/// Largest group whose elements are walked for the second generator.
pub const ENUMERATION_CAP: u128 = 20_000_000;

/// Orders of `a`, `b`, `ab`, `ab^-1`, `a^2 b` and `[a, b]` for one
/// generating pair of a model group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairProfile {
    pub orders: [u64; 6],
}

fn word_orders(a: &Perm, b: &Perm) -> [u64; 6] {
    let ai = a.inverse();
    let bi = b.inverse();
    [
        a.order(),
        b.order(),
        a.mul(b).order(),
        a.mul(&bi).order(),
        a.mul(a).mul(b).order(),
        ai.mul(&bi).mul(a).mul(b).order(),
    ]
}

fn generates(n: usize, a: &Perm, b: &Perm, order: u128) -> Option<Group> {
    let gens = [a.clone(), b.clone()];
    let c = ChainBuilder::new(n).gens(&gens).cap(order).build_capped()?;
    (c.order() == order).then(|| Group::from_chain(c))
}

/// A profile for `e`: `a` of the largest possible order, `b` the first
/// element in rank order with `<a, b> = e`. `None` if `e` is not
/// two-generated.
pub fn pair_profile(e: &Group) -> Option<PairProfile> {
    let n = e.degree();
    let order = e.order();
    if order == 1 {
        let id = Perm::identity(n);
        return Some(PairProfile { orders: word_orders(&id, &id) });
    }
    let elems = e.elements();
    let mut by_order: Vec<&Perm> = elems.iter().collect();
    by_order.sort_by_key(|x| std::cmp::Reverse(x.order()));
    let mut tried = HashSet::new();
    for a in by_order {
        // one element per cyclic subgroup is enough to try
        if !tried.insert(crate::permcore::subgroups::cyclic_key(e.chain(), a)) {
            continue;
        }
        for b in &elems {
            if generates(n, a, b, order).is_some() {
                return Some(PairProfile { orders: word_orders(a, b) });
            }
        }
    }
    None
}

fn class_reps(g: &Group) -> Result<Vec<Perm>> {
    if g.order() <= EXACT_CAP {
        let (cl, _) = element_classes(g)?;
        return Ok(cl.into_iter().map(|c| c.rep).collect());
    }
    let cl = cyclic_subgroup_classes(g, DEFAULT_SEED)?;
    if !cl.complete {
        return Err(Error::SearchFailed("cyclic subgroup classes are incomplete".into()));
    }
    let mut out = Vec::new();
    for c in cl.classes {
        for k in 1..c.order.max(2) {
            if gcd(k, c.order) == 1 {
                out.push(c.gen.pow(k as i64));
            }
        }
    }
    Ok(out)
}

fn subgroup_key(g: &Group, h: &Group) -> u128 {
    let gc = g.chain();
    let mut ranks: Vec<u128> = Vec::with_capacity(h.order() as usize);
    h.chain().for_each_element(|x| {
        ranks.push(gc.rank_member(x));
        true
    });
    ranks.sort_unstable();
    let mut h1 = std::collections::hash_map::DefaultHasher::new();
    let mut h2 = std::collections::hash_map::DefaultHasher::new();
    3u8.hash(&mut h2);
    ranks.hash(&mut h1);
    ranks.hash(&mut h2);
    ((h1.finish() as u128) << 64) | h2.finish() as u128
}

/// Visit distinct subgroups `<x, y>` of order `order`; `visit` returns
/// `false` to stop.
pub fn two_generated(g: &Group, order: u128, profile: Option<&PairProfile>, visit: &mut dyn FnMut(Group) -> bool) -> Result<()> {
    if !g.order().is_multiple_of(order) {
        return Ok(());
    }
    if g.order() > ENUMERATION_CAP {
        return Err(Error::CapExceeded { what: "two-generator search", size: g.order(), cap: ENUMERATION_CAP });
    }
    let n = g.degree();
    let divides = |o: u64| order.is_multiple_of(o as u128);
    let mut xs: Vec<Perm> = class_reps(g)?
        .into_iter()
        .filter(|x| match profile {
            Some(p) => x.order() == p.orders[0],
            None => divides(x.order()),
        })
        .collect();
    xs.sort_by_key(|x| std::cmp::Reverse(x.order()));
    let mut seen: HashSet<u128> = HashSet::new();
    for x in &xs {
        let mut stop = false;
        g.chain().for_each_element(|y| {
            let ok = match profile {
                Some(p) => y.order() == p.orders[1] && word_orders(x, y) == p.orders,
                None => divides(y.order()) && divides(x.mul(y).order()),
            };
            if !ok {
                return true;
            }
            if let Some(h) = generates(n, x, y, order) {
                if seen.insert(subgroup_key(g, &h)) && !visit(h) {
                    stop = true;
                    return false;
                }
            }
            true
        });
        if stop {
            break;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(n: usize, gens: &[&str]) -> Group {
        Group::new(n, gens.iter().map(|s| Perm::parse(s, n).unwrap()).collect()).unwrap()
    }

    #[test]
    fn finds_sym4_in_sym5() {
        let s5 = gp(5, &["(1,2)", "(1,2,3,4,5)"]);
        let s4 = gp(4, &["(1,2)", "(1,2,3,4)"]);
        let p = pair_profile(&s4).unwrap();
        let mut hits = Vec::new();
        two_generated(&s5, 24, Some(&p), &mut |h| {
            hits.push(h);
            true
        })
        .unwrap();
        // the point stabilizers, all conjugate; at least one is met
        assert!(!hits.is_empty());
        assert!(hits.iter().all(|h| h.order() == 24));
    }

    #[test]
    fn unfiltered_search_sees_both_classes_of_order_6() {
        let s5 = gp(5, &["(1,2)", "(1,2,3,4,5)"]);
        let mut shapes = HashSet::new();
        two_generated(&s5, 6, None, &mut |h| {
            shapes.insert(crate::structure::profile::profile(&h).orbit_sizes);
            true
        })
        .unwrap();
        // Z6, Sym(3) on three points, twisted Sym(3)
        assert!(shapes.contains(&vec![2, 3]));
        assert!(shapes.contains(&vec![1, 1, 3]));
    }

    #[test]
    fn klein_group_is_not_two_generated_from_one_element() {
        let v = gp(4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        assert!(pair_profile(&v).is_some());
        let e = gp(6, &["(1,2)", "(3,4)", "(5,6)"]);
        assert!(pair_profile(&e).is_none());
    }
}
