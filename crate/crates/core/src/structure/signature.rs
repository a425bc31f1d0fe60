//! Structure signatures: element-order counts, abelian invariants and
//! derived length. Isomorphic groups have equal signatures; the converse
//! can fail, but not among the groups the claim files name.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numtheory::prime_factors_u128;
use crate::permcore::coset::canonical_rep;
use crate::permcore::subgroups::order_mod;
use crate::permcore::{Chain, Group, Perm};

pub const SIGNATURE_CAP: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, PartialOrd, Ord)]
pub struct Signature {
    pub order: u128,
    /// element order -> number of elements of that order
    pub element_orders: BTreeMap<u64, u64>,
    /// elementary divisors of the abelianization, ascending
    pub abelian_invariants: Vec<u64>,
    /// `None` for groups that are not solvable
    pub derived_length: Option<u32>,
}

impl Signature {
    pub fn is_abelian(&self) -> bool {
        self.derived_length.is_some_and(|d| d <= 1)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orders: Vec<String> = self.element_orders.iter().map(|(k, c)| format!("{k}:{c}")).collect();
        let ab: Vec<String> = self.abelian_invariants.iter().map(|x| x.to_string()).collect();
        write!(f, "sig{{order={},orders={{{}}},abelian=[{}]", self.order, orders.join(","), ab.join(","))?;
        match self.derived_length {
            Some(d) => write!(f, ",derived={d}}}"),
            None => write!(f, ",derived=none}}"),
        }
    }
}

fn commutator(a: &Perm, b: &Perm) -> Perm {
    a.inverse().mul(&b.inverse()).mul(a).mul(b)
}

/// Normal closure of `gens` in the group generated by `ambient`.
pub fn normal_closure(n: usize, ambient: &[Perm], gens: &[Perm]) -> Chain {
    let mut c = Chain::build(n, &[]);
    let mut queue: Vec<Perm> = gens.to_vec();
    while let Some(x) = queue.pop() {
        if c.contains(&x) {
            continue;
        }
        c.add_gen(&x);
        for s in ambient {
            queue.push(x.conj(s));
        }
    }
    c
}

/// Derived subgroup of `g`.
pub fn derived_subgroup(g: &Group) -> Group {
    let gens = g.gens();
    let mut comms = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = commutator(a, b);
            if !c.is_identity() {
                comms.push(c);
            }
        }
    }
    Group::from_chain(normal_closure(g.degree(), gens, &comms))
}

/// Derived length, or `None` if the derived series stalls above 1.
pub fn derived_length(g: &Group) -> Option<u32> {
    let mut h = g.clone();
    let mut len = 0;
    while h.order() > 1 {
        let d = derived_subgroup(&h);
        if d.order() == h.order() {
            return None;
        }
        h = d;
        len += 1;
    }
    Some(len)
}

/// Elementary divisors of `g / d` for a normal subgroup `d`, from the
/// element orders of the quotient.
fn quotient_invariants(g: &Group, d: &Chain) -> Vec<u64> {
    let q = g.order() / d.order();
    if q == 1 {
        return Vec::new();
    }
    // walk the quotient by canonical coset representatives
    let n = g.degree();
    let mut seen: HashMap<Vec<u32>, ()> = HashMap::new();
    let start = canonical_rep(d, &Perm::identity(n));
    seen.insert(start.images().to_vec(), ());
    let mut reps = vec![start];
    let mut i = 0;
    while i < reps.len() {
        for s in g.gens() {
            let y = canonical_rep(d, &reps[i].mul(s));
            if seen.insert(y.images().to_vec(), ()).is_none() {
                reps.push(y);
            }
        }
        i += 1;
    }
    debug_assert_eq!(reps.len() as u128, q);
    let orders: Vec<u64> = reps.iter().map(|r| order_mod(d, r)).collect();
    let mut inv = Vec::new();
    for p in prime_factors_u128(q) {
        // c[k] = number of elements of order dividing p^k
        let mut c = vec![1u64];
        loop {
            let pk = p.pow(c.len() as u32);
            let cnt = orders.iter().filter(|&&o| pk % o == 0).count() as u64;
            if cnt == *c.last().unwrap() && c.len() > 1 {
                break;
            }
            c.push(cnt);
        }
        let logs: Vec<u32> = c.iter().map(|&x| ilog(x, p)).collect();
        // number of cyclic factors of order at least p^k
        let ge: Vec<u32> = (1..logs.len()).map(|k| logs[k] - logs[k - 1]).collect();
        for k in 0..ge.len() {
            let next = ge.get(k + 1).copied().unwrap_or(0);
            for _ in 0..ge[k] - next {
                inv.push(p.pow(k as u32 + 1));
            }
        }
    }
    inv.sort_unstable();
    inv
}

fn ilog(mut x: u64, p: u64) -> u32 {
    let mut k = 0;
    while x > 1 {
        debug_assert_eq!(x % p, 0);
        x /= p;
        k += 1;
    }
    k
}

pub fn abelian_invariants(g: &Group) -> Vec<u64> {
    let d = derived_subgroup(g);
    quotient_invariants(g, d.chain())
}

pub fn element_orders(g: &Group) -> Result<BTreeMap<u64, u64>> {
    if g.order() > SIGNATURE_CAP {
        return Err(Error::CapExceeded { what: "element enumeration", size: g.order(), cap: SIGNATURE_CAP });
    }
    let mut m = BTreeMap::new();
    g.chain().for_each_element(|x| {
        *m.entry(x.order()).or_insert(0) += 1;
        true
    });
    Ok(m)
}

pub fn signature(g: &Group) -> Result<Signature> {
    Ok(Signature {
        order: g.order(),
        element_orders: element_orders(g)?,
        abelian_invariants: abelian_invariants(g),
        derived_length: derived_length(g),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(n: usize, gens: &[&str]) -> Group {
        Group::new(n, gens.iter().map(|s| Perm::parse(s, n).unwrap()).collect()).unwrap()
    }

    #[test]
    fn frobenius_55() {
        // x -> x+1 and x -> 3x on Z_11; 3 has order 5
        let t = Perm::from_images((0..11).map(|x| (x + 1) % 11).collect()).unwrap();
        let m = Perm::from_images((0..11).map(|x| (x * 3) % 11).collect()).unwrap();
        let s = signature(&Group::new(11, vec![t, m]).unwrap()).unwrap();
        assert_eq!(s.order, 55);
        assert_eq!(s.element_orders, BTreeMap::from([(1, 1), (5, 44), (11, 10)]));
        assert_eq!(s.abelian_invariants, vec![5]);
        assert_eq!(s.derived_length, Some(2));
    }

    #[test]
    fn d8_and_q8_differ() {
        let d8 = gp(4, &["(1,2,3,4)", "(1,3)"]);
        // Q8 regular on 8 points
        let q8 = gp(8, &["(1,2,3,4)(5,6,7,8)", "(1,5,3,7)(2,8,4,6)"]);
        let (a, b) = (signature(&d8).unwrap(), signature(&q8).unwrap());
        assert_eq!(a.element_orders[&2], 5);
        assert_eq!(b.element_orders[&2], 1);
        assert_eq!(a.abelian_invariants, vec![2, 2]);
        assert_eq!(b.abelian_invariants, vec![2, 2]);
    }

    #[test]
    fn abelian_invariants_of_products() {
        let g = gp(10, &["(1,2,3,4)", "(5,6)", "(7,8,9,10)"]);
        assert_eq!(abelian_invariants(&g), vec![2, 4, 4]);
        let s5 = gp(5, &["(1,2)", "(1,2,3,4,5)"]);
        assert_eq!(abelian_invariants(&s5), vec![2]);
        assert_eq!(derived_length(&s5), None);
        let s4 = gp(4, &["(1,2)", "(1,2,3,4)"]);
        assert_eq!(derived_length(&s4), Some(3));
    }
}
