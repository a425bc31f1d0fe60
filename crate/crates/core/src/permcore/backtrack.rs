//! Backtrack over base images.
//!
//! Elements of `G` are `u_{k-1} .. u_1 u_0` with `u_j` a coset representative
//! at level `j`; choosing the image of `b_j` level by level gives a search
//! tree that properties can prune. Subgroup searches use the subgroup found
//! so far to skip whole orbits of candidate images.

use super::chain::{Chain, ChainBuilder};
use super::group::Group;
use super::perm::Perm;

/// `allow(level, images)` sees the images of `b_0..=b_level`; `accept`
/// sees the finished element.
pub struct Search<'a> {
    chain: &'a Chain,
    depth: usize,
    allow: &'a dyn Fn(usize, &[u32]) -> bool,
    accept: &'a dyn Fn(&Perm) -> bool,
}

impl<'a> Search<'a> {
    /// `depth` is the number of levels to branch on. Elements agreeing on
    /// the first `depth` base images must agree on the property.
    pub fn new(chain: &'a Chain, depth: usize, allow: &'a dyn Fn(usize, &[u32]) -> bool, accept: &'a dyn Fn(&Perm) -> bool) -> Self {
        Search { chain, depth: depth.min(chain.levels().len()), allow, accept }
    }

    // Depth-first from level `j` with partial product `h = u_{j-1} .. u_i`.
    fn dfs(&self, j: usize, h: &Perm, images: &mut Vec<u32>) -> Option<Perm> {
        if j == self.depth {
            return (self.accept)(h).then(|| h.clone());
        }
        let l = &self.chain.levels()[j];
        let mut cands: Vec<(u32, usize)> = l.orbit().iter().enumerate().map(|(i, &d)| (h.apply(d), i)).collect();
        cands.sort_unstable();
        for (img, idx) in cands {
            images.push(img);
            if (self.allow)(j, images) {
                let mut nh = h.clone();
                if idx != 0 {
                    nh.premul_assign(&l.rep(idx));
                }
                if let Some(g) = self.dfs(j + 1, &nh, images) {
                    images.pop();
                    return Some(g);
                }
            }
            images.pop();
        }
        None
    }

    /// First element (in image order) with the property.
    pub fn find(&self) -> Option<Perm> {
        let n = self.chain.degree();
        self.dfs(0, &Perm::identity(n), &mut Vec::new())
    }

    /// The subgroup of elements with the property, which must be a subgroup
    /// containing the pointwise stabilizer of the first `depth` base points.
    pub fn subgroup(&self) -> Chain {
        let n = self.chain.degree();
        let levels = self.chain.levels();
        let mut k = self.chain.stabilizer_chain(self.depth);
        for i in (0..self.depth).rev() {
            let b = levels[i].base;
            let fixed: Vec<u32> = levels[..i].iter().map(|l| l.base).collect();
            let mut failed: Vec<u32> = Vec::new();
            let mut covered = covered_points(n, &k, b, &failed);
            let mut orbit: Vec<(u32, usize)> = levels[i].orbit().iter().enumerate().map(|(j, &d)| (d, j)).collect();
            orbit.sort_unstable();
            for (gamma, idx) in orbit {
                if covered[gamma as usize] {
                    continue;
                }
                let mut images = fixed.clone();
                images.push(gamma);
                let found = if (self.allow)(i, &images) {
                    let h = levels[i].rep(idx);
                    self.dfs(i + 1, &h, &mut images)
                } else {
                    None
                };
                match found {
                    Some(g) => {
                        k.add_gen(&g);
                    }
                    None => failed.push(gamma),
                }
                covered = covered_points(n, &k, b, &failed);
            }
        }
        k
    }
}

fn covered_points(n: usize, k: &Chain, b: u32, failed: &[u32]) -> Vec<bool> {
    let gens = k.strong_gens();
    let mut seen = vec![false; n];
    let mut stack: Vec<u32> = Vec::new();
    for &s in std::iter::once(&b).chain(failed.iter()) {
        if !seen[s as usize] {
            seen[s as usize] = true;
            stack.push(s);
        }
    }
    while let Some(x) = stack.pop() {
        for g in &gens {
            let y = g.apply(x);
            if !seen[y as usize] {
                seen[y as usize] = true;
                stack.push(y);
            }
        }
    }
    seen
}

/// Setwise stabilizer of `set` in `g`.
pub fn set_stabilizer(g: &Group, set: &[u32]) -> Group {
    let n = g.degree();
    let mut s: Vec<u32> = set.to_vec();
    s.sort_unstable();
    s.dedup();
    let chain = ChainBuilder::new(n).gens(g.gens()).base_prefix(&s).known_order(g.order()).build();
    let mut member = vec![false; n];
    for &x in &s {
        member[x as usize] = true;
    }
    let depth = s.len();
    let allow = |_lvl: usize, imgs: &[u32]| member[*imgs.last().unwrap() as usize];
    let accept = |_: &Perm| true;
    let k = Search::new(&chain, depth, &allow, &accept).subgroup();
    Group::from_chain(k)
}

/// Cycle position data for the consistency test of a conjugating map.
struct CycleData {
    id: Vec<u32>,
    off: Vec<u32>,
    len: Vec<u32>,
}

fn cycle_data(x: &Perm) -> CycleData {
    let n = x.degree();
    let mut id = vec![u32::MAX; n];
    let mut off = vec![0u32; n];
    let mut len = vec![0u32; n];
    let mut c = 0;
    for s in 0..n {
        if id[s] != u32::MAX {
            continue;
        }
        let mut pts = Vec::new();
        let mut p = s as u32;
        while id[p as usize] == u32::MAX {
            id[p as usize] = c;
            off[p as usize] = pts.len() as u32;
            pts.push(p);
            p = x.apply(p);
        }
        for &q in &pts {
            len[q as usize] = pts.len() as u32;
        }
        c += 1;
    }
    CycleData { id, off, len }
}

/// Point order walking the cycles of `x`, longest cycles first.
fn cycle_point_order(x: &Perm) -> Vec<u32> {
    let n = x.degree();
    let mut cycles: Vec<Vec<u32>> = Vec::new();
    let mut seen = vec![false; n];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut c = Vec::new();
        let mut p = s as u32;
        while !seen[p as usize] {
            seen[p as usize] = true;
            c.push(p);
            p = x.apply(p);
        }
        cycles.push(c);
    }
    cycles.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
    cycles.concat()
}

/// A chain of `g` whose base follows the cycles of `x`.
pub fn chain_adapted_to(g: &Group, x: &Perm) -> Chain {
    let order = cycle_point_order(x);
    ChainBuilder::new(g.degree()).gens(g.gens()).point_order(&order).base_prefix(&order[..1]).known_order(g.order()).build()
}

fn conj_allow<'a>(chain: &'a Chain, cx: &'a CycleData, cy: &'a CycleData) -> impl Fn(usize, &[u32]) -> bool + 'a {
    let base = chain.base();
    move |j: usize, imgs: &[u32]| {
        let b = base[j] as usize;
        let g = imgs[j] as usize;
        if cx.len[b] != cy.len[g] {
            return false;
        }
        for l in 0..j {
            let bl = base[l] as usize;
            let gl = imgs[l] as usize;
            if cx.id[bl] == cx.id[b] {
                let m = cx.len[b];
                let t = (cx.off[b] + m - cx.off[bl]) % m;
                if cy.id[gl] != cy.id[g] || (cy.off[g] + m - cy.off[gl]) % m != t {
                    return false;
                }
            } else if cy.id[gl] == cy.id[g] {
                return false;
            }
        }
        true
    }
}

/// Some `c` in `g` with `x^c = y`, if one exists. `chain` must be a chain of
/// `g`; a base adapted to `x` prunes best.
pub fn conjugating_element(chain: &Chain, x: &Perm, y: &Perm) -> Option<Perm> {
    if x.cycle_type() != y.cycle_type() {
        return None;
    }
    let cx = cycle_data(x);
    let cy = cycle_data(y);
    let allow = conj_allow(chain, &cx, &cy);
    let accept = |c: &Perm| x.conj(c) == *y;
    Search::new(chain, chain.levels().len(), &allow, &accept).find()
}

/// Centralizer of `x` in the group with chain `chain`.
pub fn centralizer(chain: &Chain, x: &Perm) -> Chain {
    let cx = cycle_data(x);
    let allow = conj_allow(chain, &cx, &cx);
    let accept = |c: &Perm| x.conj(c) == *x;
    Search::new(chain, chain.levels().len(), &allow, &accept).subgroup()
}

/// Normalizer of `<x>` in `g`, by backtrack: the centralizer plus one
/// conjugator `x -> x^k` for each reachable `k`.
pub fn cyclic_normalizer(g: &Group, x: &Perm) -> Group {
    let chain = chain_adapted_to(g, x);
    let mut n = centralizer(&chain, x);
    let o = x.order();
    let mut reached: Vec<bool> = vec![false; o as usize];
    reached[1 % o as usize] = true;
    let mut units: Vec<u64> = vec![1];
    for k in 2..o {
        if crate::numtheory::gcd(k, o) != 1 || reached[k as usize] {
            continue;
        }
        let y = x.pow(k as i64);
        if let Some(c) = conjugating_element(&chain, x, &y) {
            n.add_gen(&c);
            // close the set of reached exponents under multiplication
            units.push(k);
            let mut frontier = vec![1u64];
            let mut all = vec![false; o as usize];
            all[1 % o as usize] = true;
            while let Some(a) = frontier.pop() {
                for &u in &units {
                    let b = a * u % o;
                    if !all[b as usize] {
                        all[b as usize] = true;
                        frontier.push(b);
                    }
                }
            }
            reached = all;
        }
    }
    Group::from_chain(n)
}
