//! Factorizations `G = AB`, the divisibility filter on orders, and the
//! search for transitive metacyclic subgroups.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::permcore::coset::{coset_orbit_len, DEFAULT_DEGREE_CAP};
use crate::permcore::Group;
use crate::structure::metacyclic::{self, Found};
use crate::structure::signature::{signature, Signature};

/// Largest factor whose elements are walked to count `|A ∩ B|`.
pub const MEET_CAP: u128 = 100_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub g_order: u128,
    pub a_order: u128,
    pub b_order: u128,
    /// `|A ∩ B|`, when it could be counted or derived
    pub meet_order: Option<u128>,
    /// length of the `A`-orbit of the trivial coset of `B`
    pub a_orbit: Option<u128>,
    pub index: u128,
    pub verdict: bool,
    /// `G = AB` with `A ∩ B = 1`
    pub exact: bool,
}

/// `a_l b_l gmodl` divisible by `l`.
pub fn order_filter(a_l: u128, b_l: u128, gmodl: u128, l: u128) -> Result<bool> {
    if a_l == 0 || b_l == 0 || gmodl == 0 || l == 0 {
        return Err(Error::InvalidArgument("order_filter takes positive integers".into()));
    }
    // reduce first so the product cannot overflow
    let x = (a_l % l) * (b_l % l) % l;
    Ok((x * (gmodl % l)).is_multiple_of(l))
}

/// Number of elements of the smaller group lying in the other.
pub fn meet_order(a: &Group, b: &Group, cap: u128) -> Result<u128> {
    let (small, big) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    if small.order() > cap {
        return Err(Error::CapExceeded { what: "intersection", size: small.order(), cap });
    }
    let mut count = 0u128;
    small.chain().for_each_element(|x| {
        if big.contains(x) {
            count += 1;
        }
        true
    });
    Ok(count)
}

pub fn check_factorization(g: &Group, a: &Group, b: &Group) -> Result<Certificate> {
    if !g.contains_group(a) || !g.contains_group(b) {
        return Err(Error::NotInGroup);
    }
    let (go, ao, bo) = (g.order(), a.order(), b.order());
    let index = go / bo;
    let a_orbit = if index <= DEFAULT_DEGREE_CAP { Some(coset_orbit_len(g, b, a.gens(), DEFAULT_DEGREE_CAP)?) } else { None };
    let mut meet = match meet_order(a, b, MEET_CAP) {
        Ok(m) => Some(m),
        Err(Error::CapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };
    if meet.is_none() {
        // |A : A ∩ B| is the orbit length
        meet = a_orbit.map(|o| ao / o);
    }
    let verdict = match (a_orbit, meet) {
        (Some(o), _) => o == index,
        (None, Some(m)) => ao * bo == go * m,
        (None, None) => {
            return Err(Error::CapExceeded { what: "factorization check", size: index, cap: DEFAULT_DEGREE_CAP });
        }
    };
    Ok(Certificate { g_order: go, a_order: ao, b_order: bo, meet_order: meet, a_orbit, index, verdict, exact: verdict && meet == Some(1) })
}

/// Conjugacy-class representatives of transitive metacyclic subgroups,
/// with signatures. The flag is false when deduplication had to give up
/// on a conjugation orbit.
pub fn search_metacyclic_transitive(g: &Group, seed: u64) -> Result<(Vec<(Found, Signature)>, bool)> {
    let (found, exact) = metacyclic::search_metacyclic_transitive(g, seed)?;
    let mut out = Vec::with_capacity(found.len());
    for f in found {
        let s = signature(&f.group)?;
        out.push((f, s));
    }
    Ok((out, exact))
}
