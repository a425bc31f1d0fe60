//! Stabilizer chains built by deterministic Schreier-Sims.
//!
//! Levels are numbered from 0. Level `i` holds base point `b_i`, the strong
//! generators fixing `b_0..b_{i-1}`, and a transversal for the orbit of `b_i`
//! under them. New base points are the smallest point moved by the element
//! that forced the new level, unless the caller supplies a prefix.

use rand::Rng;

use super::perm::Perm;

const NONE: u32 = u32::MAX;
// Above this many stored image entries a level keeps a Schreier tree
// instead of explicit coset representatives.
const EXPLICIT_LIMIT: usize = 1 << 23;

#[derive(Clone, Debug)]
enum Reps {
    Explicit { reps: Vec<Perm>, inv: Vec<Perm> },
    // For each orbit index: (parent orbit index, generator index); root has NONE.
    Tree { edge: Vec<(u32, u32)> },
}

#[derive(Clone, Debug)]
pub struct Level {
    pub base: u32,
    pub gens: Vec<Perm>,
    gens_inv: Vec<Perm>,
    orbit: Vec<u32>,
    pos: Vec<u32>,
    reps: Reps,
    // pairs (orbit index < done_pts, gen index < done_gens) are known to sift
    done_pts: usize,
    done_gens: usize,
}

impl Level {
    fn new(n: usize, base: u32) -> Level {
        let mut pos = vec![NONE; n];
        pos[base as usize] = 0;
        let explicit = n * n <= EXPLICIT_LIMIT;
        let reps = if explicit {
            Reps::Explicit { reps: vec![Perm::identity(n)], inv: vec![Perm::identity(n)] }
        } else {
            Reps::Tree { edge: vec![(NONE, NONE)] }
        };
        Level { base, gens: Vec::new(), gens_inv: Vec::new(), orbit: vec![base], pos, reps, done_pts: 0, done_gens: 0 }
    }

    pub fn orbit(&self) -> &[u32] {
        &self.orbit
    }

    pub fn orbit_len(&self) -> usize {
        self.orbit.len()
    }

    #[inline]
    pub fn index_of(&self, x: u32) -> Option<usize> {
        let i = self.pos[x as usize];
        (i != NONE).then_some(i as usize)
    }

    /// Coset representative `u` with `base^u = orbit[i]`.
    pub fn rep(&self, i: usize) -> Perm {
        match &self.reps {
            Reps::Explicit { reps, .. } => reps[i].clone(),
            Reps::Tree { edge } => {
                let n = self.pos.len();
                let mut path = Vec::new();
                let mut j = i;
                while edge[j].0 != NONE {
                    path.push(edge[j].1 as usize);
                    j = edge[j].0 as usize;
                }
                let mut u = Perm::identity(n);
                for &g in path.iter().rev() {
                    u.mul_assign(&self.gens[g]);
                }
                u
            }
        }
    }

    pub fn rep_inv(&self, i: usize) -> Perm {
        match &self.reps {
            Reps::Explicit { inv, .. } => inv[i].clone(),
            Reps::Tree { .. } => self.rep(i).inverse(),
        }
    }

    /// `x^(u_i^-1)` without materialising the representative.
    #[inline]
    pub fn apply_rep_inv(&self, i: usize, x: u32) -> u32 {
        match &self.reps {
            Reps::Explicit { inv, .. } => inv[i].apply(x),
            Reps::Tree { edge } => {
                let mut j = i;
                let mut y = x;
                while edge[j].0 != NONE {
                    y = self.gens_inv[edge[j].1 as usize].apply(y);
                    j = edge[j].0 as usize;
                }
                y
            }
        }
    }

    /// `h := h * u_i^-1`.
    fn strip(&self, h: &mut Perm, i: usize) {
        match &self.reps {
            Reps::Explicit { inv, .. } => h.mul_assign(&inv[i]),
            Reps::Tree { edge } => {
                let mut j = i;
                while edge[j].0 != NONE {
                    h.mul_assign(&self.gens_inv[edge[j].1 as usize]);
                    j = edge[j].0 as usize;
                }
            }
        }
    }

    fn push_point(&mut self, from: usize, gen: usize, y: u32) {
        let idx = self.orbit.len();
        self.pos[y as usize] = idx as u32;
        self.orbit.push(y);
        match &mut self.reps {
            Reps::Explicit { reps, inv } => {
                let u = reps[from].mul(&self.gens[gen]);
                inv.push(u.inverse());
                reps.push(u);
            }
            Reps::Tree { edge } => edge.push((from as u32, gen as u32)),
        }
    }

    fn add_gen(&mut self, g: Perm) {
        self.gens_inv.push(g.inverse());
        self.gens.push(g);
        let gi = self.gens.len() - 1;
        // images of existing points under the new generator, then close up
        let old = self.orbit.len();
        for i in 0..old {
            let y = self.gens[gi].apply(self.orbit[i]);
            if self.pos[y as usize] == NONE {
                self.push_point(i, gi, y);
            }
        }
        let mut i = old;
        while i < self.orbit.len() {
            for s in 0..self.gens.len() {
                let y = self.gens[s].apply(self.orbit[i]);
                if self.pos[y as usize] == NONE {
                    self.push_point(i, s, y);
                }
            }
            i += 1;
        }
        if let Reps::Tree { .. } = self.reps {
            self.reshape_tree();
        }
    }

    // Breadth-first tree over all generators, so that words stay short.
    // Orbit positions are kept, but the Schreier generators change, so the
    // level has to be checked again from scratch.
    fn reshape_tree(&mut self) {
        let m = self.orbit.len();
        let mut edge = vec![(NONE, NONE); m];
        let mut seen = vec![false; m];
        seen[0] = true;
        let mut queue = vec![0usize];
        let mut h = 0;
        while h < queue.len() {
            let i = queue[h];
            h += 1;
            for (s, g) in self.gens.iter().enumerate() {
                let j = self.pos[g.apply(self.orbit[i]) as usize] as usize;
                if !seen[j] {
                    seen[j] = true;
                    edge[j] = (i as u32, s as u32);
                    queue.push(j);
                }
            }
        }
        self.reps = Reps::Tree { edge };
        self.done_pts = 0;
        self.done_gens = 0;
    }
}

/// Base and strong generating set with transversals.
#[derive(Clone, Debug)]
pub struct Chain {
    n: usize,
    levels: Vec<Level>,
    // When set, the build stops as soon as the orbit product reaches it.
    target: Option<u128>,
    // Preferred order for choosing new base points.
    point_rank: Option<Vec<u32>>,
    // Abandon the build once the orbit product (a lower bound) exceeds this.
    cap: Option<u128>,
    exceeded: bool,
}

impl Chain {
    pub fn trivial(n: usize) -> Chain {
        Chain { n, levels: Vec::new(), target: None, point_rank: None, cap: None, exceeded: false }
    }

    pub fn build(n: usize, gens: &[Perm]) -> Chain {
        ChainBuilder::new(n).gens(gens).build()
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128).expect("group order overflows u128"))
    }

    /// All strong generators (level 0 holds every one of them).
    pub fn strong_gens(&self) -> Vec<Perm> {
        self.levels.first().map(|l| l.gens.clone()).unwrap_or_default()
    }

    /// Sift `g`; returns the residue and the level where sifting stopped
    /// (`levels.len()` when it passed every level).
    pub fn sift(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        for (i, l) in self.levels.iter().enumerate().skip(from) {
            let b = h.apply(l.base);
            match l.index_of(b) {
                None => return (h, i),
                Some(j) => {
                    if j != 0 {
                        l.strip(&mut h, j)
                    }
                }
            }
        }
        (h, self.levels.len())
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() != self.n {
            return false;
        }
        let (h, _) = self.sift(g, 0);
        h.is_identity()
    }

    /// Mixed-radix rank of the element with the given base images, level 0
    /// most significant. `None` when no element of the group has them.
    pub fn rank_of_base_images(&self, imgs: &[u32]) -> Option<u128> {
        let mut cur: Vec<u32> = imgs.to_vec();
        let mut r: u128 = 0;
        for (i, l) in self.levels.iter().enumerate() {
            let j = l.index_of(cur[i])?;
            r = r * l.orbit.len() as u128 + j as u128;
            if j != 0 {
                for x in cur.iter_mut().skip(i + 1) {
                    *x = l.apply_rep_inv(j, *x);
                }
            }
        }
        Some(r)
    }

    pub fn base_images(&self, g: &Perm) -> Vec<u32> {
        self.levels.iter().map(|l| g.apply(l.base)).collect()
    }

    /// Rank of `g`; `None` if `g` is not in the group.
    pub fn rank(&self, g: &Perm) -> Option<u128> {
        let r = self.rank_of_base_images(&self.base_images(g))?;
        // base images only determine g inside the group
        (self.element(r) == *g).then_some(r)
    }

    /// Rank of an element already known to lie in the group.
    pub fn rank_member(&self, g: &Perm) -> u128 {
        self.rank_of_base_images(&self.base_images(g)).expect("element not in group")
    }

    fn digits(&self, mut r: u128) -> Vec<usize> {
        let mut d = vec![0usize; self.levels.len()];
        for (i, l) in self.levels.iter().enumerate().rev() {
            let m = l.orbit.len() as u128;
            d[i] = (r % m) as usize;
            r /= m;
        }
        d
    }

    /// Element of rank `r`: `u_k * .. * u_1 * u_0`.
    pub fn element(&self, r: u128) -> Perm {
        let d = self.digits(r);
        let mut g = Perm::identity(self.n);
        for (i, l) in self.levels.iter().enumerate().rev() {
            if d[i] != 0 {
                g.mul_assign(&l.rep(d[i]));
            }
        }
        g
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Perm {
        let mut g = Perm::identity(self.n);
        for l in self.levels.iter().rev() {
            let j = rng.gen_range(0..l.orbit.len());
            if j != 0 {
                g.mul_assign(&l.rep(j));
            }
        }
        g
    }

    /// Visit every element in rank order. The callback returns `false` to stop.
    pub fn for_each_element<F: FnMut(&Perm) -> bool>(&self, mut f: F) {
        let k = self.levels.len();
        if k == 0 {
            f(&Perm::identity(self.n));
            return;
        }
        let reps: Vec<Vec<Perm>> = self.levels.iter().map(|l| (0..l.orbit.len()).map(|j| l.rep(j)).collect()).collect();
        // prefix[i] = u_i * u_{i-1} * .. * u_0
        let mut prefix: Vec<Perm> = vec![Perm::identity(self.n); k];
        let mut idx = vec![0usize; k];
        for i in 0..k {
            prefix[i] = if i == 0 { reps[0][0].clone() } else { reps[i][0].mul(&prefix[i - 1]) };
        }
        loop {
            if !f(&prefix[k - 1]) {
                return;
            }
            // odometer increment, last level fastest
            let mut i = k;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                idx[i] += 1;
                if idx[i] < reps[i].len() {
                    break;
                }
                idx[i] = 0;
            }
            for j in i..k {
                let u = &reps[j][idx[j]];
                prefix[j] = if j == 0 { u.clone() } else { u.mul(&prefix[j - 1]) };
            }
        }
    }

    pub fn elements(&self) -> Vec<Perm> {
        let mut out = Vec::with_capacity(self.order().min(1 << 24) as usize);
        self.for_each_element(|g| {
            out.push(g.clone());
            true
        });
        out
    }

    /// Strong generators of the pointwise stabilizer of `b_0..b_{i-1}`.
    pub fn stabilizer_gens(&self, i: usize) -> Vec<Perm> {
        self.levels.get(i).map(|l| l.gens.clone()).unwrap_or_default()
    }

    /// Chain for the pointwise stabilizer of the first `i` base points.
    pub fn stabilizer_chain(&self, i: usize) -> Chain {
        let mut c = Chain::trivial(self.n);
        c.levels = self.levels[i.min(self.levels.len())..].to_vec();
        c
    }

    /// Add a generator and restore the chain invariants.
    pub fn add_gen(&mut self, g: &Perm) -> bool {
        assert_eq!(g.degree(), self.n);
        let (h, j) = self.sift(g, 0);
        if h.is_identity() {
            return false;
        }
        self.insert_residue(h, 0, j);
        self.complete();
        true
    }

    fn new_base_point(&self, h: &Perm) -> u32 {
        match &self.point_rank {
            None => h.smallest_moved_point().expect("nonidentity"),
            Some(order) => *order.iter().find(|&&x| !h.fixes(x)).expect("nonidentity"),
        }
    }

    // Residue `h` fixes base points of levels < j; add it to levels from..=j.
    fn insert_residue(&mut self, h: Perm, from: usize, j: usize) {
        if j == self.levels.len() {
            let b = self.new_base_point(&h);
            self.levels.push(Level::new(self.n, b));
        }
        for l in from..=j {
            self.levels[l].add_gen(h.clone());
        }
    }

    fn reached_target(&self) -> bool {
        matches!(self.target, Some(t) if self.order() == t)
    }

    fn complete(&mut self) {
        if self.levels.is_empty() {
            return;
        }
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            if self.reached_target() {
                return;
            }
            if matches!(self.cap, Some(c) if self.order() > c) {
                self.exceeded = true;
                return;
            }
            let lvl = i as usize;
            match self.check_level(lvl) {
                None => i -= 1,
                Some((h, j)) => {
                    self.insert_residue(h, lvl + 1, j);
                    i = j as isize;
                }
            }
        }
    }

    // Sift all unchecked Schreier generators of a level through the levels
    // below it. Returns the first nontrivial residue.
    fn check_level(&mut self, lvl: usize) -> Option<(Perm, usize)> {
        let (np, ng) = (self.levels[lvl].orbit.len(), self.levels[lvl].gens.len());
        let (dp, dg) = (self.levels[lvl].done_pts, self.levels[lvl].done_gens);
        for pi in 0..np {
            let s_from = if pi < dp { dg } else { 0 };
            for si in s_from..ng {
                let l = &self.levels[lvl];
                let x = l.orbit[pi];
                let y = l.gens[si].apply(x);
                let yi = l.index_of(y).expect("orbit closed");
                if let Reps::Tree { edge } = &l.reps {
                    if edge[yi] == (pi as u32, si as u32) {
                        continue;
                    }
                }
                let mut sg = l.rep(pi);
                sg.mul_assign(&l.gens[si]);
                if yi != 0 {
                    l.strip(&mut sg, yi);
                }
                if sg.is_identity() {
                    continue;
                }
                let (h, j) = self.sift(&sg, lvl + 1);
                if !h.is_identity() {
                    return Some((h, j));
                }
            }
        }
        let l = &mut self.levels[lvl];
        l.done_pts = np;
        l.done_gens = ng;
        None
    }
}

/// Options for building a chain.
pub struct ChainBuilder<'a> {
    n: usize,
    gens: &'a [Perm],
    prefix: &'a [u32],
    target: Option<u128>,
    point_order: Option<&'a [u32]>,
    cap: Option<u128>,
}

impl<'a> ChainBuilder<'a> {
    pub fn new(n: usize) -> Self {
        ChainBuilder { n, gens: &[], prefix: &[], target: None, point_order: None, cap: None }
    }

    pub fn gens(mut self, gens: &'a [Perm]) -> Self {
        self.gens = gens;
        self
    }

    /// Points forced to be the first base points, in order (levels may be trivial).
    pub fn base_prefix(mut self, prefix: &'a [u32]) -> Self {
        self.prefix = prefix;
        self
    }

    /// Known group order: lets the build stop early.
    pub fn known_order(mut self, order: u128) -> Self {
        self.target = Some(order);
        self
    }

    /// Preference order for choosing base points beyond the prefix.
    pub fn point_order(mut self, order: &'a [u32]) -> Self {
        self.point_order = Some(order);
        self
    }

    /// Give up (see [`ChainBuilder::build_capped`]) once the group is
    /// known to have more than `cap` elements.
    pub fn cap(mut self, cap: u128) -> Self {
        self.cap = Some(cap);
        self
    }

    /// `None` when the cap was exceeded.
    pub fn build_capped(self) -> Option<Chain> {
        let c = self.build();
        (!c.exceeded).then_some(c)
    }

    pub fn build(self) -> Chain {
        let mut c = Chain::trivial(self.n);
        c.cap = self.cap;
        c.point_rank = self.point_order.map(|o| o.to_vec());
        for &p in self.prefix {
            if !c.levels.iter().any(|l| l.base == p) {
                c.levels.push(Level::new(self.n, p));
            }
        }
        let mut gens: Vec<Perm> = Vec::new();
        for g in self.gens {
            assert_eq!(g.degree(), self.n, "generator degree mismatch");
            if !g.is_identity() && !gens.contains(g) {
                gens.push(g.clone());
            }
        }
        for g in &gens {
            if c.levels.iter().all(|l| g.fixes(l.base)) {
                let b = c.new_base_point(g);
                c.levels.push(Level::new(self.n, b));
            }
        }
        for g in &gens {
            let j = c.levels.iter().position(|l| !g.fixes(l.base)).expect("base moved");
            for l in 0..=j {
                c.levels[l].add_gen(g.clone());
            }
        }
        c.target = self.target;
        c.complete();
        if self.target.is_some() && !c.exceeded {
            debug_assert!(c.reached_target(), "known order not reached");
        }
        c.target = None;
        c.cap = None;
        c
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn sym(n: usize) -> Vec<Perm> {
        let cyc: Vec<u32> = (0..n as u32).collect();
        vec![Perm::from_cycles(n, &[vec![0, 1]]).unwrap(), Perm::from_cycles(n, &[cyc]).unwrap()]
    }

    #[test]
    fn symmetric_orders() {
        assert_eq!(Chain::build(1, &[]).order(), 1);
        for n in 2..9 {
            let c = Chain::build(n, &sym(n));
            assert_eq!(c.order(), (1..=n as u128).product::<u128>());
        }
    }

    #[test]
    fn capped_build() {
        let g = sym(7);
        assert!(ChainBuilder::new(7).gens(&g).cap(1000).build_capped().is_none());
        assert_eq!(ChainBuilder::new(7).gens(&g).cap(5040).build_capped().unwrap().order(), 5040);
    }

    #[test]
    fn rank_round_trip() {
        let c = Chain::build(5, &sym(5));
        let mut seen = HashSet::new();
        for r in 0..c.order() {
            let g = c.element(r);
            assert_eq!(c.rank(&g), Some(r));
            assert!(seen.insert(g));
        }
        let mut count = 0u128;
        c.for_each_element(|g| {
            assert_eq!(c.rank(g), Some(count));
            count += 1;
            true
        });
        assert_eq!(count, 120);
    }

    #[test]
    fn membership() {
        let a5 = vec![Perm::parse("(1,2,3)", 5).unwrap(), Perm::parse("(1,2,3,4,5)", 5).unwrap()];
        let c = Chain::build(5, &a5);
        assert_eq!(c.order(), 60);
        assert!(!c.contains(&Perm::parse("(1,2)", 5).unwrap()));
        assert!(c.contains(&Perm::parse("(1,2)(3,4)", 5).unwrap()));
        assert_eq!(c.rank(&Perm::parse("(1,2)", 5).unwrap()), None);
    }

    #[test]
    fn prefix_and_known_order() {
        let g = sym(6);
        let c = ChainBuilder::new(6).gens(&g).base_prefix(&[4, 2]).known_order(720).build();
        assert_eq!(c.base()[..2], [4, 2]);
        assert_eq!(c.order(), 720);
        let s = c.stabilizer_chain(2);
        assert_eq!(s.order(), 24);
    }

    #[test]
    fn tree_transversal_matches_explicit() {
        // dihedral group of degree 3000 is large enough to force tree mode
        let n = 3000;
        let cyc: Vec<u32> = (0..n as u32).collect();
        let refl: Vec<Vec<u32>> = (1..1500u32).map(|i| vec![i, n as u32 - i]).collect();
        let r = Perm::from_cycles(n, &[cyc]).unwrap();
        // r^55 keeps the Schreier tree shallow
        let g = vec![r.clone(), Perm::from_cycles(n, &refl).unwrap(), r.pow(55)];
        let c = Chain::build(n, &g);
        assert!(matches!(c.levels[0].reps, Reps::Tree { .. }));
        assert_eq!(c.order(), 6000);
        let x = c.element(4321);
        assert_eq!(c.rank(&x), Some(4321));
        assert!(c.contains(&g[0].mul(&g[1])));
    }
}
