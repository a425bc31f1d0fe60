//! Brute-force oracles and the property battery, shared by the `properties`
//! and `acceptance` test targets.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use proptest::prelude::*;
use proptest::sample::Index;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use permfact::atlas::field::Field;
use permfact::atlas::groups::{build_group, coordinate_perm};
use permfact::atlas::linear::Matrix;
use permfact::atlas::spec::GroupSpec;
use permfact::factorization::{check_factorization, search_metacyclic_transitive};
use permfact::numtheory::{gcd, is_prime, lcm, lemma_exponent_bound, mult_order, phi, pow_mod};
use permfact::permcore::backtrack::set_stabilizer;
use permfact::permcore::coset::coset_action;
use permfact::permcore::orbit::orbit;
use permfact::structure::classes::{cyclic_subgroup_classes, DEFAULT_SEED};
use permfact::structure::expr::direct_product;
use permfact::structure::metacyclic::{max_metacyclic_order, metacyclic_witness, sweep, SweepFilter};
use permfact::structure::signature::signature;
use permfact::{Group, Perm, Subgroup};

pub type Img = Vec<u32>;

/// Apply `a`, then `b`.
pub fn compose(a: &[u32], b: &[u32]) -> Img {
    a.iter().map(|&x| b[x as usize]).collect()
}

/// Every element of `<gens>` by breadth-first search, or `None` past `cap`.
pub fn closure(n: usize, gens: &[Img], cap: usize) -> Option<Vec<Img>> {
    let id: Img = (0..n as u32).collect();
    let mut seen: HashSet<Img> = HashSet::from([id.clone()]);
    let mut out = vec![id];
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let y = compose(&out[i], g);
            if seen.insert(y.clone()) {
                out.push(y);
                if out.len() > cap {
                    return None;
                }
            }
        }
        i += 1;
    }
    Some(out)
}

pub fn to_perm(img: &[u32]) -> Perm {
    Perm::from_images(img.to_vec()).unwrap()
}

pub fn group_of(n: usize, gens: &[Img]) -> Group {
    Group::new(n, gens.iter().map(|g| to_perm(g)).collect()).unwrap()
}

pub fn named(spec: &str) -> Group {
    build_group(&GroupSpec::parse(spec).unwrap()).unwrap()
}

pub type Bits = Vec<u64>;

fn has(b: &Bits, i: usize) -> bool {
    b[i / 64] >> (i % 64) & 1 == 1
}

fn set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn subset(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// A subgroup of a multiplication table: its members and some generators.
#[derive(Clone, Debug)]
pub struct Sub {
    pub bits: Bits,
    pub gens: Vec<usize>,
    pub order: usize,
}

/// Multiplication table of a small group, element 0 the identity.
pub struct Table {
    pub n: usize,
    pub elems: Vec<Img>,
    index: HashMap<Img, usize>,
    mul: Vec<u32>,
    inv: Vec<u32>,
    gens: Vec<usize>,
}

impl Table {
    pub fn new(g: &Group) -> Table {
        let n = g.degree();
        let gens: Vec<Img> = g.gens().iter().map(|p| p.images().to_vec()).collect();
        let elems = closure(n, &gens, usize::MAX).unwrap();
        let index: HashMap<Img, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let m = elems.len();
        let mut mul = vec![0u32; m * m];
        for i in 0..m {
            for j in 0..m {
                mul[i * m + j] = index[&compose(&elems[i], &elems[j])] as u32;
            }
        }
        let inv = (0..m).map(|i| (0..m).find(|&j| mul[i * m + j] == 0).unwrap() as u32).collect();
        let gens = gens.iter().map(|x| index[x]).collect();
        Table { n, elems, index, mul, inv, gens }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.len() + b] as usize
    }

    pub fn conj(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv[g] as usize, x), g)
    }

    pub fn index_of(&self, p: &Perm) -> usize {
        self.index[p.images()]
    }

    pub fn perm(&self, i: usize) -> Perm {
        to_perm(&self.elems[i])
    }

    fn empty(&self) -> Bits {
        vec![0; self.len().div_ceil(64)]
    }

    pub fn generate(&self, gens: &[usize]) -> Sub {
        let mut bits = self.empty();
        set(&mut bits, 0);
        let mut members = vec![0usize];
        let mut i = 0;
        while i < members.len() {
            for &g in gens {
                let y = self.mul(members[i], g);
                if !has(&bits, y) {
                    set(&mut bits, y);
                    members.push(y);
                }
            }
            i += 1;
        }
        Sub { bits, gens: gens.to_vec(), order: members.len() }
    }

    pub fn members(&self, s: &Sub) -> Vec<usize> {
        (0..self.len()).filter(|&i| has(&s.bits, i)).collect()
    }

    pub fn elem_order(&self, x: usize) -> usize {
        let (mut y, mut k) = (x, 1);
        while y != 0 {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    /// The whole subgroup lattice, by joining cyclic subgroups of prime
    /// power order until nothing new appears.
    pub fn subgroups(&self) -> Vec<Sub> {
        let mut seen: HashSet<Bits> = HashSet::new();
        let mut subs = vec![self.generate(&[])];
        seen.insert(subs[0].bits.clone());
        let mut atoms = Vec::new();
        for x in 1..self.len() {
            if prime_power(self.elem_order(x) as u64) {
                let c = self.generate(&[x]);
                if seen.insert(c.bits.clone()) {
                    atoms.push(c.clone());
                    subs.push(c);
                }
            }
        }
        let mut i = 0;
        while i < subs.len() {
            for a in &atoms {
                if subset(&a.bits, &subs[i].bits) {
                    continue;
                }
                let mut gens = subs[i].gens.clone();
                gens.push(a.gens[0]);
                let j = self.generate(&gens);
                if seen.insert(j.bits.clone()) {
                    subs.push(j);
                }
            }
            i += 1;
        }
        subs
    }

    pub fn is_normal_in(&self, c: &Sub, h: &[usize]) -> bool {
        h.iter().all(|&g| c.gens.iter().all(|&x| has(&c.bits, self.conj(x, g))))
    }

    /// Has a cyclic normal subgroup with cyclic quotient.
    pub fn is_metacyclic(&self, h: &Sub) -> bool {
        let members = self.members(h);
        let mut tried: HashSet<Bits> = HashSet::new();
        for &x in &members {
            let c = self.generate(&[x]);
            if !tried.insert(c.bits.clone()) || !self.is_normal_in(&c, &h.gens) {
                continue;
            }
            let q = h.order / c.order;
            // some b whose coset has order q
            let ok = members.iter().any(|&b| {
                let (mut y, mut k) = (b, 1);
                while !has(&c.bits, y) {
                    y = self.mul(y, b);
                    k += 1;
                }
                k == q
            });
            if ok {
                return true;
            }
        }
        false
    }

    pub fn is_transitive(&self, h: &Sub) -> bool {
        let mut hit = vec![false; self.n];
        for i in self.members(h) {
            hit[self.elems[i][0] as usize] = true;
        }
        hit.iter().all(|&b| b)
    }

    pub fn as_group(&self, h: &Sub) -> Group {
        Group::new(self.n, h.gens.iter().map(|&i| self.perm(i)).collect()).unwrap()
    }

    pub fn bits_of(&self, g: &Group) -> Bits {
        let mut b = self.empty();
        for e in g.elements() {
            set(&mut b, self.index_of(&e));
        }
        b
    }

    /// Conjugacy class number of each subgroup in `subs`, which must be
    /// closed under conjugation.
    pub fn classes(&self, subs: &[Sub]) -> Vec<usize> {
        let pos: HashMap<&Bits, usize> = subs.iter().enumerate().map(|(i, s)| (&s.bits, i)).collect();
        let mut class = vec![usize::MAX; subs.len()];
        let mut next = 0;
        for start in 0..subs.len() {
            if class[start] != usize::MAX {
                continue;
            }
            class[start] = next;
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for &g in &self.gens {
                    let mut b = self.empty();
                    for x in self.members(&subs[i]) {
                        set(&mut b, self.conj(x, g));
                    }
                    let j = pos[&b];
                    if class[j] == usize::MAX {
                        class[j] = next;
                        stack.push(j);
                    }
                }
            }
            next += 1;
        }
        class
    }
}

pub fn prime_power(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d)).unwrap();
    let mut m = n;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

/// Small groups with their lattices enumerated by the oracle tests.
pub const SMALL: &[&str] = &[
    "Sym(4)", "Alt(5)", "Sym(5)", "D(12)", "D(16)", "Q(16)", "C(12)", "F(7,6)", "F(13,12)", "SD(9,6,2)",
    "SD(15,4,2)", "PSL(2,7)", "PGL(2,5)", "M9", "wreath(Sym(3), 2)",
];

/// Transitive groups up to order 500.
pub const MEDIUM: &[&str] = &[
    "Sym(4)", "Sym(5)", "PGL(2,5)", "Alt(5)", "PSL(2,7)", "PSL(2,7)@8", "F(7,6)", "F(11,10)", "F(13,12)", "D(16)",
    "Q(16)", "SD(15,4,2)", "M9", "wreath(Sym(3), 2)", "wreath(C(3), 2)", "AGL(2,3)", "AGL(1,8)",
];

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Run a property with a fixed seed so results are reproducible.
pub fn run_prop<S: Strategy>(cases: u32, s: S, f: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&s, f).map_err(|e| e.to_string())
}

pub fn perm_strategy(n: usize) -> impl Strategy<Value = Img> {
    Just((0..n as u32).collect::<Img>()).prop_shuffle()
}

/// Degree and 1 to 3 random generators.
pub fn gens_strategy(max_degree: usize) -> impl Strategy<Value = (usize, Vec<Img>)> {
    (2..=max_degree).prop_flat_map(|n| (Just(n), prop::collection::vec(perm_strategy(n), 1..=3)))
}

macro_rules! check {
    ($cond:expr, $($fmt:tt)*) => {
        prop_assert!($cond, $($fmt)*)
    };
}

pub fn perm_laws() -> Result<(), String> {
    let s = (1usize..=12).prop_flat_map(|n| (perm_strategy(n), perm_strategy(n), perm_strategy(n)));
    run_prop(256, s, |(a, b, c)| {
        let (pa, pb, pc) = (to_perm(&a), to_perm(&b), to_perm(&c));
        check!(pa.mul(&pb).mul(&pc) == pa.mul(&pb.mul(&pc)), "associativity");
        check!(pa.mul(&pa.inverse()).is_identity(), "inverse");
        check!(pa.mul(&pb).images() == compose(&a, &b).as_slice(), "a then b");
        let k = pa.order() as i64;
        check!(pa.pow(k).is_identity() && pa.pow(k + 1) == pa, "order");
        let mut bad = a.clone();
        if bad.len() > 1 {
            bad[0] = bad[1];
            check!(Perm::from_images(bad).is_err(), "non-bijection accepted");
        }
        Ok(())
    })
}

pub fn bsgs_matches_closure() -> Result<(), String> {
    let s = gens_strategy(7).prop_flat_map(|(n, gens)| (Just(n), Just(gens), perm_strategy(n)));
    run_prop(256, s, |(n, gens, probe)| {
        let elems = closure(n, &gens, 5040).unwrap();
        let g = group_of(n, &gens);
        check!(g.order() == elems.len() as u128, "order {} vs closure {}", g.order(), elems.len());
        let set: HashSet<&Img> = elems.iter().collect();
        check!(g.contains(&to_perm(&probe)) == set.contains(&probe), "membership of {probe:?}");
        let mut ranks = HashSet::new();
        for e in &elems {
            let p = to_perm(e);
            check!(g.contains(&p), "closure element rejected");
            let r = g.chain().rank(&p).unwrap();
            check!(g.chain().element(r) == p, "rank round trip");
            ranks.insert(r);
        }
        check!(ranks.len() == elems.len() && ranks.iter().all(|&r| r < g.order()), "ranks not a bijection");
        Ok(())
    })
}

/// Random group, a point, and two random elements of the group.
fn group_case() -> impl Strategy<Value = (usize, Vec<Img>, u32, Index, Index)> {
    gens_strategy(8).prop_flat_map(|(n, gens)| (Just(n), Just(gens), 0..n as u32, any::<Index>(), any::<Index>()))
}

pub fn lagrange_orbit_stabilizer() -> Result<(), String> {
    run_prop(200, group_case(), |(n, gens, p, i, j)| {
        let elems = closure(n, &gens, 40320).unwrap();
        let g = group_of(n, &gens);
        let perms = g.gens().to_vec();
        let orb = orbit(n, &perms, p).unwrap();
        let stab = set_stabilizer(&g, &[p]);
        check!(orb.len() as u128 * stab.order() == g.order(), "orbit-stabilizer at {p}");
        let fixing = elems.iter().filter(|e| e[p as usize] == p).count();
        check!(fixing as u128 == stab.order(), "stabilizer {} vs {fixing}", stab.order());
        let h = group_of(n, &[i.get(&elems).clone(), j.get(&elems).clone()]);
        check!(g.order().is_multiple_of(h.order()), "Lagrange: {} in {}", h.order(), g.order());
        check!(g.contains_group(&h), "subgroup not contained");
        Ok(())
    })
}

pub fn coset_action_kernel() -> Result<(), String> {
    run_prop(100, group_case(), |(n, gens, _, i, _)| {
        let elems = closure(n, &gens, 40320).unwrap();
        let g = group_of(n, &gens);
        let h = Subgroup::new(&g, vec![to_perm(i.get(&elems))]).unwrap();
        let ca = coset_action(&g, &h, 100_000).unwrap();
        check!(ca.degree as u128 == h.index(), "degree {} vs index {}", ca.degree, h.index());
        check!(ca.kernel_order * ca.image.order() == g.order(), "kernel {} image {}", ca.kernel_order, ca.image.order());
        // the kernel is the core: elements lying in every conjugate of H
        let hs: HashSet<Img> = h.elements().into_iter().map(|p| p.images().to_vec()).collect();
        let core = hs
            .iter()
            .filter(|x| {
                elems.iter().all(|t| {
                    let ti = to_perm(t).inverse();
                    hs.contains(&compose(&compose(ti.images(), x), t))
                })
            })
            .count();
        check!(core as u128 == ca.kernel_order, "core {core} vs kernel {}", ca.kernel_order);
        Ok(())
    })
}

pub fn signature_invariant() -> Result<(), String> {
    let s = gens_strategy(7).prop_flat_map(|(n, gens)| (Just(n), Just(gens), perm_strategy(n)));
    run_prop(100, s, |(n, gens, t)| {
        let g = group_of(n, &gens);
        let tp = to_perm(&t);
        let h = Group::new(n, g.gens().iter().map(|x| x.conj(&tp)).collect()).unwrap();
        check!(signature(&g).unwrap() == signature(&h).unwrap(), "signature moved under conjugation");
        Ok(())
    })
}

pub fn certificate_symmetry() -> Result<(), String> {
    run_prop(100, group_case(), |(n, gens, p, i, j)| {
        let elems = closure(n, &gens, 40320).unwrap();
        let g = group_of(n, &gens);
        let a = group_of(n, &[i.get(&elems).clone()]);
        let b = set_stabilizer(&group_of(n, &[j.get(&elems).clone(), i.get(&elems).clone()]), &[p]);
        let ab = check_factorization(&g, &a, &b).unwrap();
        let ba = check_factorization(&g, &b, &a).unwrap();
        check!(ab.verdict == ba.verdict && ab.meet_order == ba.meet_order && ab.exact == ba.exact, "{ab:?} vs {ba:?}");
        // the product set, counted directly
        let ae: Vec<Perm> = a.elements();
        let be: Vec<Perm> = b.elements();
        let prod: HashSet<Img> = ae.iter().flat_map(|x| be.iter().map(move |y| x.mul(y).images().to_vec())).collect();
        check!(ab.verdict == (prod.len() as u128 == g.order()), "verdict {} but |AB| = {}", ab.verdict, prod.len());
        Ok(())
    })
}

pub fn arith_laws() -> Result<(), String> {
    run_prop(300, (1u64..5000, 1u64..5000, 0u64..64), |(a, b, e)| {
        let g = gcd(a, b);
        check!(a % g == 0 && b % g == 0 && g * lcm(a, b) == a * b, "gcd/lcm {a} {b}");
        let naive_phi = (1..=a).filter(|&k| gcd(k, a) == 1).count() as u64;
        check!(phi(a) == naive_phi, "phi({a})");
        check!(is_prime(a) == (a >= 2 && (2..a).all(|d| a % d != 0)), "is_prime({a})");
        let m = b + 1;
        let naive = (0..e).fold(1u128, |acc, _| acc * a as u128 % m as u128) as u64;
        check!(pow_mod(a, e, m) == naive, "pow_mod({a},{e},{m})");
        if gcd(a, m) == 1 {
            let k = (1..=m).find(|&k| pow_mod(a, k, m) == 1 % m).unwrap();
            check!(mult_order(a % m, m) == k, "mult_order({a},{m})");
        }
        Ok(())
    })
}

/// Cycle type of an element of `Sym(n)^k` in product action, from the
/// coordinate cycle types.
fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn perm_of_type(n: usize, parts: &[usize]) -> Perm {
    let mut cycles = Vec::new();
    let mut at = 0u32;
    for &l in parts {
        cycles.push((at..at + l as u32).collect::<Vec<u32>>());
        at += l as u32;
    }
    Perm::from_cycles(n, &cycles).unwrap()
}

/// Semiregular cyclic subgroups of `Sym(n)^k` in product action have
/// order dividing `n`. Cycle types determine both sides, so running over
/// all tuples of partitions covers every element.
pub fn semiregular_cyclic() -> Result<(), String> {
    let mut checked = 0;
    for n in 2..=7usize {
        let parts = partitions(n, n);
        for k in 1..=3usize {
            let mut idx = vec![0usize; k];
            loop {
                let mut x = Perm::identity(n.pow(k as u32));
                for (c, &i) in idx.iter().enumerate() {
                    x = x.mul(&coordinate_perm(n, k, c, &perm_of_type(n, &parts[i])));
                }
                let ord = x.order() as usize;
                let semiregular = x.cycle_type().iter().all(|&l| l == ord);
                ensure(!semiregular || n % ord == 0, || format!("n={n} k={k} types {idx:?}: semiregular of order {ord}"))?;
                checked += 1;
                let mut c = 0;
                while c < k {
                    idx[c] += 1;
                    if idx[c] < parts.len() {
                        break;
                    }
                    idx[c] = 0;
                    c += 1;
                }
                if c == k {
                    break;
                }
            }
        }
    }
    ensure(checked > 3000, || format!("only {checked} tuples"))
}

pub fn semiregular_cyclic_sampled() -> Result<(), String> {
    let s = (2usize..=7, 2usize..=3).prop_flat_map(|(n, k)| (Just(n), Just(k), prop::collection::vec(perm_strategy(n), k)));
    run_prop(200, s, |(n, k, coords)| {
        let mut x = Perm::identity(n.pow(k as u32));
        for (c, s) in coords.iter().enumerate() {
            x = x.mul(&coordinate_perm(n, k, c, &to_perm(s)));
        }
        let ord = x.order() as usize;
        if x.cycle_type().iter().all(|&l| l == ord) {
            check!(n % ord == 0, "semiregular of order {ord} on {n}^{k}");
        }
        Ok(())
    })
}

/// Cyclic normal subgroups of transitive groups are semiregular; the
/// library and the lattice agree on how many there are.
pub fn normal_cyclic() -> Result<(), String> {
    for name in ["F(7,6)", "F(13,12)", "D(16)", "SD(9,6,2)", "wreath(C(3), 2)", "AGL(1,8)", "Sym(4)", "C(12)", "Q(16)", "SD(15,4,2)"] {
        let g = named(name);
        let t = Table::new(&g);
        let all: Vec<usize> = (0..t.len()).collect();
        let subs = t.subgroups();
        let mut normal_cyclic = 0;
        for s in &subs {
            let cyclic = t.members(s).iter().any(|&x| t.elem_order(x) == s.order);
            if !cyclic || !t.is_normal_in(s, &all) {
                continue;
            }
            normal_cyclic += 1;
            for x in t.members(s).into_iter().skip(1) {
                ensure(t.elems[x].iter().enumerate().all(|(i, &y)| i as u32 != y), || format!("{name}: a normal cyclic subgroup fixes a point"))?;
            }
        }
        let cl = cyclic_subgroup_classes(&g, DEFAULT_SEED).map_err(|e| e.to_string())?;
        let lib = cl.classes.iter().filter(|c| c.conjugates == 1).count();
        ensure(lib == normal_cyclic, || format!("{name}: {lib} normal cyclic classes, lattice has {normal_cyclic}"))?;
    }
    Ok(())
}

/// Metacyclic p-subgroups of `H^k` have order dividing `|H|^2`.
pub fn direct_product_bound() -> Result<(), String> {
    for name in ["Sym(3)", "D(8)", "Q(8)"] {
        let h = named(name);
        let bound = h.order() * h.order();
        for k in 2..=3 {
            let g = direct_product(&vec![h.clone(); k]).map_err(|e| e.to_string())?;
            let mut bad = None;
            let mut seen = 0;
            sweep(&g, DEFAULT_SEED, &SweepFilter::default(), &mut |f| {
                let m = f.group.order();
                seen += 1;
                if prime_power(m as u64) && !bound.is_multiple_of(m) {
                    bad = Some(m);
                    return false;
                }
                true
            })
            .map_err(|e| e.to_string())?;
            ensure(bad.is_none(), || format!("{name}^{k}: metacyclic p-subgroup of order {bad:?}"))?;
            ensure(seen > 0, || format!("{name}^{k}: sweep found nothing"))?;
        }
    }
    Ok(())
}

/// Exponent of the unitriangular group over `GF(p^f)`, by running over all
/// of its elements.
fn unitriangular_exponent(n: usize, p: u64, f: u32) -> u64 {
    let field = Field::new(p, f).unwrap();
    let q = field.order() as u64;
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let total = q.pow(slots.len() as u32);
    let mut exp = 1u64;
    for code in 0..total {
        let mut m = Matrix::identity(n);
        let mut c = code;
        for &(i, j) in &slots {
            m.set(i, j, (c % q) as u32);
            c /= q;
        }
        let mut y = m.clone();
        let mut k = 1u64;
        while !y.is_identity() {
            y = y.mul(&m, &field);
            k += 1;
        }
        exp = lcm(exp, k);
    }
    exp
}

pub fn exponent_bound() -> Result<(), String> {
    for (n, p, f) in [(2, 2, 1), (3, 2, 1), (4, 2, 1), (2, 3, 1), (3, 3, 1), (2, 2, 2), (5, 2, 1), (4, 3, 1)] {
        let e = unitriangular_exponent(n, p, f);
        let b = lemma_exponent_bound(n as u64, p);
        ensure(e == b, || format!("UT({n},{p}^{f}): exponent {e}, bound {b}"))?;
    }
    Ok(())
}

pub fn witness_oracle() -> Result<(), String> {
    let mut tally = [0usize; 2];
    for name in SMALL {
        let g = named(name);
        if g.order() > 200 {
            continue;
        }
        let t = Table::new(&g);
        for s in t.subgroups() {
            let h = t.as_group(&s);
            let w = metacyclic_witness(&h).map_err(|e| e.to_string())?;
            let want = t.is_metacyclic(&s);
            tally[want as usize] += 1;
            ensure(w.is_some() == want, || format!("{name}: subgroup of order {} metacyclic={want}, witness {w:?}", s.order))?;
            if let Some(w) = w {
                let c = Group::new(t.n, vec![w.c.clone()]).unwrap();
                let normal = h.gens().iter().all(|x| c.contains(&w.c.conj(x)));
                let ok = h.contains(&w.c) && h.contains(&w.b) && normal && w.c_order as u128 * w.quotient_order as u128 == h.order();
                ensure(ok, || format!("{name}: bad witness {w:?}"))?;
            }
        }
    }
    ensure(tally[0] > 50 && tally[1] > 500, || format!("lattices too thin: {tally:?}"))
}

/// The library's transitive metacyclic classes against the lattice, and
/// its largest metacyclic order against the lattice maximum.
pub fn search_oracle() -> Result<(), String> {
    let mut classes = 0;
    for name in MEDIUM {
        let g = named(name);
        let t = Table::new(&g);
        let subs = t.subgroups();
        let meta: Vec<bool> = subs.iter().map(|s| t.is_metacyclic(s)).collect();
        let best = subs.iter().zip(&meta).filter(|(_, &m)| m).map(|(s, _)| s.order).max().unwrap();
        let (lib_best, _) = max_metacyclic_order(&g, DEFAULT_SEED).map_err(|e| e.to_string())?;
        ensure(lib_best == best as u128, || format!("{name}: max metacyclic {lib_best}, lattice {best}"))?;

        let class = t.classes(&subs);
        let pos: HashMap<&Bits, usize> = subs.iter().enumerate().map(|(i, s)| (&s.bits, i)).collect();
        let want: HashSet<usize> = (0..subs.len()).filter(|&i| meta[i] && t.is_transitive(&subs[i])).map(|i| class[i]).collect();
        let (found, exact) = search_metacyclic_transitive(&g, DEFAULT_SEED).map_err(|e| e.to_string())?;
        ensure(exact, || format!("{name}: deduplication not exact"))?;
        let got: Vec<usize> = found.iter().map(|(f, _)| class[pos[&t.bits_of(&f.group)]]).collect();
        let got_set: HashSet<usize> = got.iter().copied().collect();
        ensure(got.len() == got_set.len(), || format!("{name}: a class was reported twice"))?;
        ensure(got_set == want, || format!("{name}: search found {} classes, lattice has {}", got_set.len(), want.len()))?;
        classes += want.len();
    }
    ensure(classes > 20, || format!("only {classes} transitive metacyclic classes in the corpus"))
}

pub type Check = (&'static str, fn() -> Result<(), String>);

/// Everything the property battery runs, in order.
pub const BATTERY: &[Check] = &[
    ("perm laws", perm_laws),
    ("bsgs vs closure", bsgs_matches_closure),
    ("lagrange, orbit-stabilizer", lagrange_orbit_stabilizer),
    ("coset action kernel", coset_action_kernel),
    ("signature invariance", signature_invariant),
    ("certificate symmetry", certificate_symmetry),
    ("arithmetic", arith_laws),
    ("normal cyclic is semiregular", normal_cyclic),
    ("semiregular cyclic, all types", semiregular_cyclic),
    ("semiregular cyclic, sampled", semiregular_cyclic_sampled),
    ("direct product bound", direct_product_bound),
    ("unitriangular exponent", exponent_bound),
    ("metacyclic witness oracle", witness_oracle),
    ("search oracle", search_oracle),
];

pub const SOLVER_PAIRS: [(u64, u64); 7] = [(3, 2), (3, 3), (4, 2), (4, 3), (5, 2), (6, 2), (8, 2)];

pub fn solver_pairs() -> Result<(), String> {
    let mut got = permfact::numtheory::affine_dimension_solver();
    got.sort_unstable();
    ensure(got == SOLVER_PAIRS, || format!("solver returned {got:?}"))
}

fn gcd128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Part of `a^m - 1` coprime to every `a^l - 1` with `l < m`. A prime
/// divides it exactly when it is a primitive prime divisor.
fn primitive_part(a: u64, m: u32) -> u128 {
    let mut n = (a as u128).pow(m) - 1;
    for l in 1..m {
        let d = (a as u128).pow(l) - 1;
        loop {
            let g = gcd128(n, d);
            if g == 1 {
                break;
            }
            n /= g;
        }
    }
    n
}

/// `zsigmondy(a, m)` against the primitive part, for `a <= 30`, `m <= 14`.
/// Returns the exceptions met, which should be `(2,6)` and `(2^k - 1, 2)`.
pub fn zsigmondy_brute() -> Result<Vec<(u64, u32)>, String> {
    use permfact::numtheory::zsigmondy;
    let mut exceptions = Vec::new();
    for a in 2..=30u64 {
        for m in 1..=14u32 {
            let rest = primitive_part(a, m);
            let got = zsigmondy(a, m);
            ensure(got.is_some() == (rest > 1), || format!("({a},{m}): got {got:?}, primitive part {rest}"))?;
            match got {
                None => {
                    if m >= 2 {
                        exceptions.push((a, m));
                    }
                }
                Some(r) => {
                    ensure(is_prime(r) && rest.is_multiple_of(r as u128), || format!("({a},{m}): {r} is not a primitive prime divisor"))?;
                    ensure(r % m as u64 == 1 % m as u64, || format!("({a},{m}): {r} is not 1 mod {m}"))?;
                    // nothing smaller of the form km + 1 works
                    if r < 100_000 {
                        let smaller = (1..r).filter(|x| x % m as u64 == 1 % m as u64).find(|&x| is_prime(x) && rest.is_multiple_of(x as u128));
                        ensure(smaller.is_none(), || format!("({a},{m}): {r} returned but {smaller:?} is smaller"))?;
                    }
                }
            }
        }
    }
    let want: Vec<(u64, u32)> = (2..=30u64).filter(|a| (a + 1).is_power_of_two()).map(|a| (a, 2)).chain([(2, 6)]).collect();
    let (mut e, mut w) = (exceptions.clone(), want);
    e.sort_unstable();
    w.sort_unstable();
    ensure(e == w, || format!("exceptions {e:?}, expected {w:?}"))?;
    Ok(exceptions)
}
