//! Conjugacy classes of elements and of cyclic subgroups.
//!
//! Up to [`EXACT_CAP`] elements every element is visited once and marked
//! by rank. Larger groups are sampled with a seeded generator; such results
//! are complete only when the class equation balances.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::numtheory::{arith, gcd};
use crate::permcore::backtrack::{chain_adapted_to, conjugating_element, cyclic_normalizer};
use crate::permcore::{Group, Perm};

pub const EXACT_CAP: u128 = 1_000_000;
pub const DEFAULT_SEED: u64 = 0x6d65_7461;

#[derive(Clone, Debug)]
pub struct ElementClass {
    pub rep: Perm,
    pub size: u128,
    pub order: u64,
}

/// A class of cyclic subgroups: a generator, the subgroup order and the
/// number of conjugate subgroups.
#[derive(Clone, Debug)]
pub struct CyclicClass {
    pub gen: Perm,
    pub order: u64,
    pub conjugates: u128,
}

#[derive(Clone, Debug)]
pub struct CyclicClasses {
    pub classes: Vec<CyclicClass>,
    /// False when randomized discovery could not balance the class equation.
    pub complete: bool,
}

/// Element classes and, for each rank, the index of its class.
pub fn element_classes(g: &Group) -> Result<(Vec<ElementClass>, Vec<u32>)> {
    let order = g.order();
    if order > EXACT_CAP {
        return Err(Error::CapExceeded { what: "exact class enumeration", size: order, cap: EXACT_CAP });
    }
    let chain = g.chain();
    let gens = g.gens();
    let mut class_of = vec![u32::MAX; order as usize];
    let mut classes = Vec::new();
    let mut r: usize = 0;
    chain.for_each_element(|x| {
        if class_of[r] == u32::MAX {
            let id = classes.len() as u32;
            class_of[r] = id;
            let mut stack = vec![x.clone()];
            let mut size = 1u128;
            while let Some(y) = stack.pop() {
                for s in gens {
                    let z = y.conj(s);
                    let rz = chain.rank_member(&z) as usize;
                    if class_of[rz] == u32::MAX {
                        class_of[rz] = id;
                        size += 1;
                        stack.push(z);
                    }
                }
            }
            classes.push(ElementClass { rep: x.clone(), size, order: x.order() });
        }
        r += 1;
        true
    });
    Ok((classes, class_of))
}

fn units(m: u64) -> impl Iterator<Item = u64> {
    (1..m.max(2)).filter(move |&k| gcd(k, m) == 1)
}

fn phi(m: u64) -> u128 {
    arith(m).map(|f| f.phi()).unwrap_or(1) as u128
}

fn exact_cyclic(g: &Group) -> Result<CyclicClasses> {
    let (classes, class_of) = element_classes(g)?;
    let chain = g.chain();
    let mut merged: Vec<Option<usize>> = vec![None; classes.len()];
    let mut out: Vec<(CyclicClass, u128)> = Vec::new();
    for (i, c) in classes.iter().enumerate() {
        if merged[i].is_some() {
            continue;
        }
        let slot = out.len();
        let mut total = 0u128;
        for k in units(c.order) {
            let j = class_of[chain.rank_member(&c.rep.pow(k as i64)) as usize] as usize;
            if merged[j].is_none() {
                merged[j] = Some(slot);
                total += classes[j].size;
            }
        }
        out.push((CyclicClass { gen: c.rep.clone(), order: c.order, conjugates: 0 }, total));
    }
    let classes = out
        .into_iter()
        .map(|(mut c, total)| {
            c.conjugates = total / phi(c.order);
            c
        })
        .collect();
    Ok(CyclicClasses { classes, complete: true })
}

/// Is `<y>` conjugate to `<r>`?
fn cyclic_conjugate(g: &Group, r: &Perm, y: &Perm) -> bool {
    if r.order() != y.order() || r.cycle_type() != y.cycle_type() {
        return false;
    }
    let chain = chain_adapted_to(g, r);
    units(y.order()).any(|k| {
        let yk = y.pow(k as i64);
        conjugating_element(&chain, r, &yk).is_some()
    })
}

fn random_cyclic(g: &Group, seed: u64, samples: usize) -> CyclicClasses {
    let order = g.order();
    let n = g.degree();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut classes = vec![CyclicClass { gen: Perm::identity(n), order: 1, conjugates: 1 }];
    let mut covered: u128 = 1;
    for _ in 0..samples {
        if covered == order {
            break;
        }
        let x = g.chain().random_element(&mut rng);
        let o = x.order();
        let fac = arith(o).expect("positive");
        for d in fac.divisors().into_iter().rev() {
            if d == 1 {
                continue;
            }
            let y = x.pow((o / d) as i64);
            if classes.iter().any(|c| cyclic_conjugate(g, &c.gen, &y)) {
                continue;
            }
            let norm = cyclic_normalizer(g, &y).order();
            let conjugates = order / norm;
            covered += conjugates * phi(d);
            classes.push(CyclicClass { gen: y, order: d, conjugates });
        }
    }
    classes.sort_by_key(|a| a.order);
    CyclicClasses { complete: covered == order, classes }
}

/// One generator per conjugacy class of cyclic subgroups.
pub fn cyclic_subgroup_classes(g: &Group, seed: u64) -> Result<CyclicClasses> {
    if g.order() <= EXACT_CAP {
        exact_cyclic(g)
    } else {
        Ok(random_cyclic(g, seed, 4000))
    }
}
