//! Right cosets `Hg`, identified by a canonical representative: the element
//! of `Hg` whose images of `H`'s base points are lexicographically least.

use std::collections::HashMap;

use super::chain::Chain;
use super::group::{Group, Subgroup};
use super::perm::Perm;
use crate::error::{Error, Result};

pub const DEFAULT_DEGREE_CAP: u128 = 1_000_000;

/// Canonical representative of `Hx`.
pub fn canonical_rep(h: &Chain, x: &Perm) -> Perm {
    let mut y = x.clone();
    for l in h.levels() {
        let orb = l.orbit();
        let mut best = 0usize;
        let mut best_img = y.apply(orb[0]);
        for (i, &d) in orb.iter().enumerate().skip(1) {
            let im = y.apply(d);
            if im < best_img {
                best_img = im;
                best = i;
            }
        }
        if best != 0 {
            y.premul_assign(&l.rep(best));
        }
    }
    y
}

/// Key of the coset `Hx` (the ambient rank of its canonical representative).
pub fn coset_key(g: &Chain, h: &Chain, x: &Perm) -> u128 {
    g.rank_member(&canonical_rep(h, x))
}

/// The action of `G` on the right cosets of `H`.
#[derive(Clone, Debug)]
pub struct CosetAction {
    /// Images of `G`'s generators, in generator order.
    pub image: Group,
    pub degree: usize,
    pub kernel_order: u128,
    /// Canonical representative of each coset; coset 0 is `H` itself.
    pub reps: Vec<Perm>,
}

pub fn coset_action(g: &Group, h: &Subgroup, cap: u128) -> Result<CosetAction> {
    let index = g.order() / h.order();
    if index > cap {
        return Err(Error::CapExceeded { what: "coset action degree", size: index, cap });
    }
    let gc = g.chain();
    let hc = h.chain();
    let n = g.degree();
    let mut keys: HashMap<u128, u32> = HashMap::new();
    let mut reps = vec![Perm::identity(n)];
    keys.insert(coset_key(gc, hc, &reps[0]), 0);
    let mut imgs: Vec<Vec<u32>> = vec![Vec::with_capacity(index as usize); g.gens().len()];
    let mut i = 0;
    while i < reps.len() {
        for (si, s) in g.gens().iter().enumerate() {
            let y = canonical_rep(hc, &reps[i].mul(s));
            let k = gc.rank_member(&y);
            let next = reps.len() as u32;
            let j = *keys.entry(k).or_insert_with(|| {
                reps.push(y);
                next
            });
            imgs[si].push(j);
        }
        i += 1;
    }
    assert_eq!(reps.len() as u128, index, "coset enumeration disagrees with the index");
    let gens: Vec<Perm> = imgs.into_iter().map(Perm::from_images_unchecked).collect();
    let image = Group::new(reps.len(), gens)?;
    let kernel_order = g.order() / image.order();
    Ok(CosetAction { degree: reps.len(), image, kernel_order, reps })
}

/// Size of the orbit of the trivial coset `B` under `A`, i.e. `|A : A ∩ B|`.
pub fn coset_orbit_len(g: &Group, b: &Group, a_gens: &[Perm], cap: u128) -> Result<u128> {
    let index = g.order() / b.order();
    if index > cap {
        return Err(Error::CapExceeded { what: "coset space", size: index, cap });
    }
    let gc = g.chain();
    let bc = b.chain();
    let n = g.degree();
    let mut seen: std::collections::HashSet<u128> = std::collections::HashSet::new();
    let mut queue = vec![Perm::identity(n)];
    seen.insert(coset_key(gc, bc, &queue[0]));
    while let Some(x) = queue.pop() {
        for s in a_gens {
            let y = canonical_rep(bc, &x.mul(s));
            if seen.insert(gc.rank_member(&y)) {
                queue.push(y);
            }
        }
    }
    Ok(seen.len() as u128)
}

/// Order of the core of `H` in `G` (kernel of the coset action).
pub fn core_order(g: &Group, h: &Subgroup, cap: u128) -> Result<u128> {
    Ok(coset_action(g, h, cap)?.kernel_order)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> Group {
        let cyc: Vec<u32> = (0..n as u32).collect();
        Group::new(n, vec![Perm::from_cycles(n, &[vec![0, 1]]).unwrap(), Perm::from_cycles(n, &[cyc]).unwrap()]).unwrap()
    }

    #[test]
    fn sym4_on_alt4() {
        let g = sym(4);
        let a4 = g.subgroup(vec![Perm::parse("(1,2,3)", 4).unwrap(), Perm::parse("(2,3,4)", 4).unwrap()]).unwrap();
        let act = coset_action(&g, &a4, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(act.degree, 2);
        assert_eq!(act.kernel_order, 12);
    }

    #[test]
    fn sym5_on_point_stabilizer() {
        let g = sym(5);
        let s4 = g.subgroup(vec![Perm::parse("(1,2)", 5).unwrap(), Perm::parse("(1,2,3,4)", 5).unwrap()]).unwrap();
        let act = coset_action(&g, &s4, DEFAULT_DEGREE_CAP).unwrap();
        assert_eq!(act.degree, 5);
        assert_eq!(act.kernel_order, 1);
        assert_eq!(act.image.order(), 120);
        assert!(coset_action(&g, &s4, 4).is_err());
        // a 5-cycle is transitive on the 5 cosets, a 3-cycle is not
        let c5 = Perm::parse("(1,2,3,4,5)", 5).unwrap();
        assert_eq!(coset_orbit_len(&g, &s4, &[c5], 100).unwrap(), 5);
        let c3 = Perm::parse("(3,4,5)", 5).unwrap();
        assert_eq!(coset_orbit_len(&g, &s4, &[c3], 100).unwrap(), 3);
    }
}
