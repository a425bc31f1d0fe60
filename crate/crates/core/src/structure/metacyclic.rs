//! Metacyclic subgroups.
//!
//! A metacyclic `M` has a cyclic normal `C = <c>` with `M = <c, b>`, and
//! then `b` normalizes `C`. So sweeping `c` over representatives of the
//! classes of cyclic subgroups of `G` and `b` over `N_G(<c>)` meets every
//! metacyclic subgroup of `G` up to conjugacy.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use super::classes::{cyclic_subgroup_classes, CyclicClasses, DEFAULT_SEED, EXACT_CAP};
use crate::error::{Error, Result};
use crate::numtheory::prime_factors_u128;
use crate::permcore::backtrack::cyclic_normalizer;
use crate::permcore::orbit::is_transitive;
use crate::permcore::{Chain, ChainBuilder, Group, Perm};

/// `M = <c, b>` with `<c>` normal and `M / <c>` generated by `b`.
#[derive(Clone, Debug, Serialize)]
pub struct MetacyclicWitness {
    #[serde(serialize_with = "ser_perm")]
    pub c: Perm,
    #[serde(serialize_with = "ser_perm")]
    pub b: Perm,
    pub c_order: u64,
    pub quotient_order: u64,
}

fn ser_perm<S: serde::Serializer>(p: &Perm, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

/// Does `bC` have order exactly `q` in `N/C`?
fn has_order_mod(cc: &Chain, b: &Perm, q: u64) -> bool {
    if q == 1 {
        return cc.contains(b);
    }
    if !b.order().is_multiple_of(q) || !cc.contains(&b.pow(q as i64)) {
        return false;
    }
    prime_factors_u128(q as u128).into_iter().all(|r| !cc.contains(&b.pow((q / r) as i64)))
}

fn mod_order(cc: &Chain, b: &Perm) -> u64 {
    crate::permcore::subgroups::order_mod(cc, b)
}

/// A witness that `h` is metacyclic whose cyclic part satisfies `accept`
/// (called with `|C|` and `|H/C|`), or `None` if there is none.
pub fn metacyclic_witness_where(h: &Group, accept: impl Fn(u64, u64) -> bool) -> Result<Option<MetacyclicWitness>> {
    let order = h.order();
    if order > EXACT_CAP {
        return Err(Error::CapExceeded { what: "metacyclic witness", size: order, cap: EXACT_CAP });
    }
    let n = h.degree();
    let mut classes = cyclic_subgroup_classes(h, DEFAULT_SEED)?.classes;
    // largest cyclic part first
    classes.sort_by(|a, b| b.order.cmp(&a.order));
    for cl in classes.iter().filter(|c| c.conjugates == 1) {
        let q = (order / cl.order as u128) as u64;
        if !accept(cl.order, q) {
            continue;
        }
        if q == 1 {
            return Ok(Some(MetacyclicWitness { c: cl.gen.clone(), b: Perm::identity(n), c_order: cl.order, quotient_order: 1 }));
        }
        let cc = Chain::build(n, std::slice::from_ref(&cl.gen));
        let mut found = None;
        h.chain().for_each_element(|b| {
            if has_order_mod(&cc, b, q) {
                found = Some(b.clone());
                false
            } else {
                true
            }
        });
        if let Some(b) = found {
            return Ok(Some(MetacyclicWitness { c: cl.gen.clone(), b, c_order: cl.order, quotient_order: q }));
        }
    }
    Ok(None)
}

pub fn metacyclic_witness(h: &Group) -> Result<Option<MetacyclicWitness>> {
    metacyclic_witness_where(h, |_, _| true)
}

/// Restrictions applied while sweeping.
#[derive(Clone, Debug, Default)]
pub struct SweepFilter {
    pub order: Option<u128>,
    pub transitive: bool,
}

/// A metacyclic subgroup met by the sweep.
#[derive(Clone, Debug)]
pub struct Found {
    pub group: Group,
    pub witness: MetacyclicWitness,
}

fn classes_for(g: &Group, seed: u64) -> Result<CyclicClasses> {
    let cl = cyclic_subgroup_classes(g, seed)?;
    if !cl.complete {
        return Err(Error::SearchFailed("cyclic subgroup classes are incomplete".into()));
    }
    Ok(cl)
}

/// Visit metacyclic subgroups `<c, b>` passing `filter`, class by class.
/// Within one `c` each subgroup is visited once; across classes the same
/// subgroup (or a conjugate) can recur. `visit` returns `false` to stop.
pub fn sweep(g: &Group, seed: u64, filter: &SweepFilter, visit: &mut dyn FnMut(Found) -> bool) -> Result<()> {
    let classes = classes_for(g, seed)?;
    let n = g.degree();
    let mut cls: Vec<_> = classes.classes.iter().filter(|c| c.order > 1).collect();
    cls.sort_by(|a, b| b.order.cmp(&a.order));
    for cl in cls {
        let co = cl.order as u128;
        if let Some(t) = filter.order {
            if t % co != 0 {
                continue;
            }
        }
        let norm = cyclic_normalizer(g, &cl.gen);
        if let Some(t) = filter.order {
            if norm.order() < t {
                continue;
            }
        }
        let cc = Chain::build(n, std::slice::from_ref(&cl.gen));
        let nc = norm.chain();
        let mut done: HashSet<u128> = HashSet::new();
        let mut stop = false;
        let mut err = None;
        nc.for_each_element(|b| {
            let key = nc.rank_member(b);
            if done.contains(&key) {
                return true;
            }
            let q = match filter.order {
                Some(t) => {
                    let q = (t / co) as u64;
                    if !has_order_mod(&cc, b, q) {
                        return true;
                    }
                    q
                }
                None => mod_order(&cc, b),
            };
            let m = co * q as u128;
            let gens = if q == 1 { vec![cl.gen.clone()] } else { vec![cl.gen.clone(), b.clone()] };
            if filter.transitive && (!m.is_multiple_of(n as u128) || !is_transitive(n, &gens)) {
                return true;
            }
            let group = match Group::with_known_order(n, gens, m) {
                Ok(x) => x,
                Err(e) => {
                    err = Some(e);
                    return false;
                }
            };
            // every other generator of the same quotient gives the same subgroup
            group.chain().for_each_element(|y| {
                if nc.contains(y) && has_order_mod(&cc, y, q) {
                    done.insert(nc.rank_member(y));
                }
                true
            });
            let witness = MetacyclicWitness { c: cl.gen.clone(), b: b.clone(), c_order: cl.order, quotient_order: q };
            if !visit(Found { group, witness }) {
                stop = true;
                return false;
            }
            true
        });
        if let Some(e) = err {
            return Err(e);
        }
        if stop {
            break;
        }
    }
    Ok(())
}

/// Largest order of a metacyclic subgroup, with a witness.
pub fn max_metacyclic_order(g: &Group, seed: u64) -> Result<(u128, MetacyclicWitness)> {
    let classes = classes_for(g, seed)?;
    let n = g.degree();
    let per_class: Vec<(u128, String, MetacyclicWitness)> = classes
        .classes
        .par_iter()
        .map(|cl| {
            let norm = if cl.order == 1 { g.clone() } else { cyclic_normalizer(g, &cl.gen) };
            let cc = Chain::build(n, std::slice::from_ref(&cl.gen));
            let mut best: Option<(u128, String, MetacyclicWitness)> = None;
            if cl.order == 1 {
                let w = MetacyclicWitness { c: cl.gen.clone(), b: cl.gen.clone(), c_order: 1, quotient_order: 1 };
                return (1, w.c.to_string(), w);
            }
            norm.chain().for_each_element(|b| {
                let q = mod_order(&cc, b);
                let m = cl.order as u128 * q as u128;
                if best.as_ref().is_some_and(|(bm, _, _)| m < *bm) {
                    return true;
                }
                let w = MetacyclicWitness { c: cl.gen.clone(), b: b.clone(), c_order: cl.order, quotient_order: q };
                let key = format!("{}|{}", w.c, w.b);
                if best.as_ref().is_none_or(|(bm, bk, _)| m > *bm || key < *bk) {
                    best = Some((m, key, w));
                }
                true
            });
            best.expect("normalizer is nonempty")
        })
        .collect();
    let (m, _, w) = per_class
        .into_iter()
        .min_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)))
        .expect("identity class");
    Ok((m, w))
}

/// A canonical-in-`G` key set for deduplicating subgroups up to conjugacy.
pub struct ConjugacyDedup<'a> {
    g: &'a Group,
    seen: HashSet<u128>,
    cap: usize,
    /// false once some orbit was too long to enumerate
    pub exact: bool,
}

impl<'a> ConjugacyDedup<'a> {
    pub fn new(g: &'a Group, cap: usize) -> Self {
        ConjugacyDedup { g, seen: HashSet::new(), cap, exact: true }
    }

    fn key(&self, elems: &[Perm], t: &Perm) -> u128 {
        let gc = self.g.chain();
        let mut ranks: Vec<u128> = elems.iter().map(|e| gc.rank_member(&e.conj(t))).collect();
        ranks.sort_unstable();
        use std::hash::{Hash, Hasher};
        let mut h1 = std::collections::hash_map::DefaultHasher::new();
        let mut h2 = std::collections::hash_map::DefaultHasher::new();
        7u8.hash(&mut h2);
        ranks.hash(&mut h1);
        ranks.hash(&mut h2);
        ((h1.finish() as u128) << 64) | h2.finish() as u128
    }

    /// True the first time a member of the conjugacy class of `h` is offered.
    pub fn is_new(&mut self, h: &Group) -> bool {
        let n = self.g.degree();
        let elems = h.elements();
        let id = Perm::identity(n);
        let k0 = self.key(&elems, &id);
        if self.seen.contains(&k0) {
            return false;
        }
        // walk the conjugation orbit, recording every conjugate
        let mut orbit: Vec<Perm> = vec![id];
        let mut local: HashSet<u128> = HashSet::from([k0]);
        let mut i = 0;
        while i < orbit.len() {
            for s in self.g.gens() {
                let t = orbit[i].mul(s);
                let k = self.key(&elems, &t);
                if local.insert(k) {
                    orbit.push(t);
                }
            }
            if orbit.len() > self.cap {
                self.exact = false;
                break;
            }
            i += 1;
        }
        self.seen.extend(local);
        true
    }
}

/// Representatives of the conjugacy classes of transitive metacyclic
/// subgroups of `g`.
pub fn search_metacyclic_transitive(g: &Group, seed: u64) -> Result<(Vec<Found>, bool)> {
    let filter = SweepFilter { order: None, transitive: true };
    let mut dedup = ConjugacyDedup::new(g, 200_000);
    let mut out = Vec::new();
    sweep(g, seed, &filter, &mut |f| {
        if dedup.is_new(&f.group) {
            out.push(f);
        }
        true
    })?;
    out.sort_by_key(|a| a.group.order());
    Ok((out, dedup.exact))
}

/// `Group` from `c` and `b` with the chain built under a cap; `None` if the
/// group is larger than `cap`.
pub fn capped_group(n: usize, gens: &[Perm], cap: u128) -> Option<Group> {
    ChainBuilder::new(n).gens(gens).cap(cap).build_capped().map(Group::from_chain)
}
