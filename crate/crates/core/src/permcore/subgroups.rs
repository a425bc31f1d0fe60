//! Conjugacy of subgroups: canonical keys, normalizers from conjugation
//! orbits, Sylow subgroups.

use std::collections::HashMap;
use std::hash::{Hash, Hasher};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::backtrack::{centralizer, chain_adapted_to};
use super::chain::Chain;
use super::group::{Group, Subgroup};
use super::perm::Perm;
use crate::error::{Error, Result};
use crate::numtheory::{gcd, p_part_u128};

/// Default cap on the length of a conjugation orbit walked by [`normalizer`].
pub const DEFAULT_ORBIT_CAP: usize = 2_000_000;

/// Key of `<y>` within the group of `g`: the least rank over its generators.
/// Two cyclic subgroups are equal iff their keys are.
pub fn cyclic_key(g: &Chain, y: &Perm) -> u128 {
    let base = g.base();
    let o = y.order();
    // the cycle of y through each base point
    let cyc: Vec<Vec<u32>> = base
        .iter()
        .map(|&b| {
            let mut c = vec![b];
            let mut p = y.apply(b);
            while p != b {
                c.push(p);
                p = y.apply(p);
            }
            c
        })
        .collect();
    let mut best = u128::MAX;
    let mut imgs = vec![0u32; base.len()];
    for k in 1..=o.max(1) {
        if gcd(k, o) != 1 && o > 1 {
            continue;
        }
        for (j, c) in cyc.iter().enumerate() {
            imgs[j] = c[(k % c.len() as u64) as usize];
        }
        let r = g.rank_of_base_images(&imgs).expect("power of a member");
        best = best.min(r);
    }
    best
}

/// Hash of the sorted ranks of all elements of a subgroup.
fn element_key(g: &Chain, elems: &[Perm], t: Option<&Perm>) -> u128 {
    let mut ranks: Vec<u128> = elems
        .iter()
        .map(|e| match t {
            Some(t) => g.rank_member(&e.conj(t)),
            None => g.rank_member(e),
        })
        .collect();
    ranks.sort_unstable();
    let mut h1 = std::collections::hash_map::DefaultHasher::new();
    let mut h2 = std::collections::hash_map::DefaultHasher::new();
    0x5eedu32.hash(&mut h2);
    ranks.hash(&mut h1);
    ranks.hash(&mut h2);
    ((h1.finish() as u128) << 64) | h2.finish() as u128
}

/// Keys identifying conjugates `H^t` of a fixed subgroup.
pub struct SubgroupKeyer<'a> {
    g: &'a Chain,
    cyclic: Option<Perm>,
    elems: Vec<Perm>,
}

impl<'a> SubgroupKeyer<'a> {
    /// Subgroups that are not cyclic are keyed by their full element list,
    /// so they must be small (at most `elem_cap` elements).
    pub fn new(g: &'a Chain, h: &Group, elem_cap: u128) -> Result<Self> {
        let order = h.order();
        if let Some(x) = cyclic_generator(h) {
            return Ok(SubgroupKeyer { g, cyclic: Some(x), elems: Vec::new() });
        }
        if order > elem_cap {
            return Err(Error::CapExceeded { what: "subgroup keyed by elements", size: order, cap: elem_cap });
        }
        Ok(SubgroupKeyer { g, cyclic: None, elems: h.elements() })
    }

    pub fn key(&self, t: &Perm) -> u128 {
        match &self.cyclic {
            Some(x) => cyclic_key(self.g, &x.conj(t)),
            None => element_key(self.g, &self.elems, Some(t)),
        }
    }
}

/// A generator of `h` if one of its generators or their product generates it.
/// `None` does not prove that `h` is not cyclic.
pub fn cyclic_generator(h: &Group) -> Option<Perm> {
    let order = h.order();
    let n = h.degree();
    if order == 1 {
        return Some(Perm::identity(n));
    }
    let mut cands: Vec<Perm> = h.gens().to_vec();
    let mut prod = Perm::identity(n);
    for g in h.gens() {
        prod.mul_assign(g);
    }
    cands.push(prod);
    cands.into_iter().find(|c| c.order() as u128 == order)
}

/// Normalizer of `h` in `g`. Cyclic subgroups go to the backtrack search;
/// otherwise it comes from the orbit of `h` under conjugation.
pub fn normalizer(g: &Group, h: &Group, cap: usize) -> Result<Group> {
    if let Some(x) = cyclic_generator(h) {
        if !x.is_identity() {
            return Ok(super::backtrack::cyclic_normalizer(g, &x));
        }
    }
    let gc = g.chain();
    let keyer = SubgroupKeyer::new(gc, h, 200_000)?;
    let n = g.degree();
    let gens = g.gens();
    let mut keys: HashMap<u128, u32> = HashMap::new();
    keys.insert(keyer.key(&Perm::identity(n)), 0);
    let mut parent: Vec<(u32, u32)> = vec![(u32::MAX, 0)];
    let mut reps: Vec<Perm> = vec![Perm::identity(n)];
    let mut next: Vec<u32> = Vec::new();
    let mut i = 0;
    while i < reps.len() {
        for (si, s) in gens.iter().enumerate() {
            let t = reps[i].mul(s);
            let k = keyer.key(&t);
            let len = reps.len() as u32;
            let j = *keys.entry(k).or_insert(len);
            if j == len {
                if reps.len() >= cap {
                    return Err(Error::CapExceeded { what: "conjugation orbit", size: reps.len() as u128 + 1, cap: cap as u128 });
                }
                reps.push(t);
                parent.push((i as u32, si as u32));
            }
            next.push(j);
        }
        i += 1;
    }
    let m = reps.len() as u128;
    let target = g.order() / m;
    let mut nchain = Chain::build(n, h.gens());
    if nchain.order() < target {
        'outer: for i in 0..reps.len() {
            for (si, s) in gens.iter().enumerate() {
                let j = next[i * gens.len() + si] as usize;
                if parent[j] == (i as u32, si as u32) {
                    continue;
                }
                let sg = reps[i].mul(s).mul(&reps[j].inverse());
                nchain.add_gen(&sg);
                if nchain.order() >= target {
                    break 'outer;
                }
            }
        }
    }
    assert_eq!(nchain.order(), target, "orbit-stabilizer mismatch");
    Ok(Group::from_chain(nchain))
}

/// Least `k >= 1` with `y^k` in `p`.
pub fn order_mod(p: &Chain, y: &Perm) -> u64 {
    let mut z = y.clone();
    let mut k = 1;
    while !p.contains(&z) {
        z.mul_assign(y);
        k += 1;
    }
    k
}

/// Replace `g` by centralizers of `p`-elements while that keeps the full
/// `p`-part, so the normalizer climb runs in a small group.
fn shrink_for_sylow(g: &Group, p: u64, target: u128) -> Group {
    let mut cur = g.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(p);
    'shrink: while cur.order() > target {
        for _ in 0..64 {
            let y = cur.chain().random_element(&mut rng);
            let o = y.order();
            if !o.is_multiple_of(p) {
                continue;
            }
            let x = y.pow((o / p) as i64);
            if cur.gens().iter().all(|s| x.mul(s) == s.mul(&x)) {
                continue;
            }
            let c = Group::from_chain(centralizer(&chain_adapted_to(&cur, &x), &x));
            if p_part_u128(c.order(), p) == target {
                cur = c;
                continue 'shrink;
            }
        }
        break;
    }
    cur
}

/// A Sylow `p`-subgroup of `g`.
pub fn sylow_subgroup(g: &Group, p: u64, cap: usize) -> Result<Subgroup> {
    let target = p_part_u128(g.order(), p);
    let n = g.degree();
    if target == 1 {
        return Ok(Subgroup::from_group(g, Group::trivial(n)));
    }
    let h = shrink_for_sylow(g, p, target);
    let mut seed = None;
    h.chain().for_each_element(|x| {
        let o = x.order();
        if o % p == 0 {
            let mut q = o;
            while q % p == 0 {
                q /= p;
            }
            seed = Some(x.pow(q as i64));
            false
        } else {
            true
        }
    });
    let seed = seed.expect("Cauchy");
    let mut pc = Chain::build(n, &[seed]);
    while pc.order() < target {
        let pg = Group::from_chain(pc.clone());
        let norm = normalizer(&h, &pg, cap)?;
        let mut ext = None;
        norm.chain().for_each_element(|y| {
            let k = order_mod(&pc, y);
            if k > 1 && p_part_u128(k as u128, p) == k as u128 {
                ext = Some(y.pow((k / p) as i64));
                false
            } else {
                true
            }
        });
        let z = ext.expect("normalizer of a non-Sylow p-subgroup grows");
        pc.add_gen(&z);
    }
    Ok(Subgroup::from_group(g, Group::from_chain(pc)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> Group {
        let cyc: Vec<u32> = (0..n as u32).collect();
        Group::new(n, vec![Perm::from_cycles(n, &[vec![0, 1]]).unwrap(), Perm::from_cycles(n, &[cyc]).unwrap()]).unwrap()
    }

    #[test]
    fn cyclic_key_ignores_generator_choice() {
        let g = sym(6);
        let x = Perm::parse("(1,2,3,4,5)", 6).unwrap();
        let k = cyclic_key(g.chain(), &x);
        assert_eq!(k, cyclic_key(g.chain(), &x.pow(3)));
        assert_ne!(k, cyclic_key(g.chain(), &Perm::parse("(1,2,3,4,6)", 6).unwrap()));
    }

    #[test]
    fn normalizers() {
        let g = sym(5);
        let c5 = Group::new(5, vec![Perm::parse("(1,2,3,4,5)", 5).unwrap()]).unwrap();
        assert_eq!(normalizer(&g, &c5, 1000).unwrap().order(), 20);
        let v4 = Group::new(5, vec![Perm::parse("(1,2)(3,4)", 5).unwrap(), Perm::parse("(1,3)(2,4)", 5).unwrap()]).unwrap();
        assert_eq!(normalizer(&g, &v4, 1000).unwrap().order(), 24);
        assert!(normalizer(&g, &v4, 3).is_err());
    }

    #[test]
    fn sylow_orders() {
        let g = sym(6);
        for (p, o) in [(2, 16), (3, 9), (5, 5), (7, 1)] {
            assert_eq!(sylow_subgroup(&g, p, 100_000).unwrap().order(), o);
        }
    }
}
