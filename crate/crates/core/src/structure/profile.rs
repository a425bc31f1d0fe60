//! Orbit shapes and block systems.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::permcore::orbit::orbits;
use crate::permcore::{Group, Perm};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitivityProfile {
    /// orbit lengths, ascending
    pub orbit_sizes: Vec<usize>,
    pub transitive: bool,
    pub semiregular: bool,
    pub regular: bool,
}

/// Orbits of `<gens>` on `n` points, and whether the group of order `order`
/// acts semiregularly (every orbit has length `order`).
pub fn transitivity_profile(n: usize, gens: &[Perm], order: u128) -> TransitivityProfile {
    let mut orbit_sizes: Vec<usize> = orbits(n, gens).iter().map(|o| o.len()).collect();
    orbit_sizes.sort_unstable();
    let transitive = orbit_sizes.len() == 1;
    let semiregular = orbit_sizes.iter().all(|&s| s as u128 == order);
    TransitivityProfile { orbit_sizes, transitive, semiregular, regular: transitive && semiregular }
}

pub fn profile(g: &Group) -> TransitivityProfile {
    transitivity_profile(g.degree(), g.gens(), g.order())
}

// union-find with path halving
fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        parent[x as usize] = parent[parent[x as usize] as usize];
        x = parent[x as usize];
    }
    x
}

/// The finest block system in which `a` and `b` share a block, returned as
/// the block containing `a`.
pub fn minimal_block(n: usize, gens: &[Perm], a: u32, b: u32) -> Vec<u32> {
    let mut parent: Vec<u32> = (0..n as u32).collect();
    let mut queue = vec![(a, b)];
    let ra = find(&mut parent, a);
    let rb = find(&mut parent, b);
    parent[rb as usize] = ra;
    while let Some((x, y)) = queue.pop() {
        for s in gens {
            let u = find(&mut parent, s.apply(x));
            let v = find(&mut parent, s.apply(y));
            if u != v {
                parent[v as usize] = u;
                queue.push((u, v));
            }
        }
    }
    let r = find(&mut parent, a);
    (0..n as u32).filter(|&x| find(&mut parent, x) == r).collect()
}

/// `Ok(None)` if `g` is primitive, otherwise a nontrivial block.
pub fn is_primitive(g: &Group) -> Result<Option<Vec<u32>>> {
    let n = g.degree();
    if !profile(g).transitive {
        return Err(Error::Intransitive);
    }
    for b in 1..n as u32 {
        let blk = minimal_block(n, g.gens(), 0, b);
        if blk.len() < n {
            return Ok(Some(blk));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(n: usize, gens: &[&str]) -> Group {
        Group::new(n, gens.iter().map(|s| Perm::parse(s, n).unwrap()).collect()).unwrap()
    }

    #[test]
    fn profiles() {
        let p = profile(&gp(6, &["(1,2,3)"]));
        assert_eq!(p.orbit_sizes, vec![1, 1, 1, 3]);
        assert!(!p.transitive);
        let p = transitivity_profile(6, &[Perm::parse("(1,2,3)(4,5,6)", 6).unwrap()], 3);
        assert!(p.semiregular && !p.transitive);
        let a4 = profile(&gp(4, &["(1,2,3)", "(2,3,4)"]));
        assert!(a4.transitive && !a4.semiregular);
    }

    #[test]
    fn blocks() {
        let c4 = gp(4, &["(1,2,3,4)"]);
        assert_eq!(is_primitive(&c4).unwrap(), Some(vec![0, 2]));
        let s5 = gp(5, &["(1,2)", "(1,2,3,4,5)"]);
        assert_eq!(is_primitive(&s5).unwrap(), None);
        assert!(is_primitive(&gp(4, &["(1,2)"])).is_err());
    }
}
