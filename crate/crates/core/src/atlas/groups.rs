//! Building groups from specs.
//!
//! Every family with a closed-form order is checked against it after the
//! chain is built; a mismatch is a construction error, never a warning.

use std::collections::HashMap;

use super::field::{Fe, Field};
use super::linear::{
    affine_perm, gl_extra, gl_order, pgl_order, psl_order, psp_order, sl_generators, sp_generators, Matrix,
    ProjectiveSpace, SemiLinear,
};
use super::mathieu;
use super::spec::{Classical, Family, GroupSpec};
use crate::error::{Error, Result};
use crate::numtheory::{arith, gcd, is_prime, pow_mod};
use crate::permcore::coset::{coset_action, coset_key, DEFAULT_DEGREE_CAP};
use crate::permcore::{Group, Perm, Subgroup};
use crate::structure::classes::DEFAULT_SEED;
use crate::structure::twogen::two_generated;

/// Largest degree any constructor will produce.
pub const DEGREE_CAP: u64 = 1_000_000;
/// Largest group whose elements become points (holomorphs, diagonal actions).
pub const REGULAR_CAP: u128 = 10_000;

/// A built group with its designated normal subgroup, and for wreath
/// products the factor group and the number of coordinates.
#[derive(Clone, Debug)]
pub struct Built {
    pub group: Group,
    pub socle: Option<Group>,
    pub factor: Option<(Box<Built>, usize)>,
}

impl Built {
    fn plain(group: Group) -> Built {
        Built { group, socle: None, factor: None }
    }

    fn simple(group: Group) -> Built {
        Built { socle: Some(group.clone()), group, factor: None }
    }
}

pub fn build_group(spec: &GroupSpec) -> Result<Group> {
    Ok(build(spec)?.group)
}

pub fn build(spec: &GroupSpec) -> Result<Built> {
    let b = build_family(&spec.family)?;
    let label = spec.to_string();
    let b = match spec.at {
        Some(d) if d as usize != b.group.degree() => reaction(b, d)?,
        _ => b,
    };
    Ok(Built { group: b.group.labelled(label), ..b })
}

fn checked(g: Group, order: u128, what: &str) -> Result<Group> {
    if g.order() != order {
        return Err(Error::Construction(format!("{what} has order {}, expected {order}", g.order())));
    }
    Ok(g)
}

fn perm(img: Vec<u32>) -> Result<Perm> {
    Perm::from_images(img)
}

fn factorial(n: u64) -> u128 {
    (1..=n as u128).product()
}

fn sym_gens(n: usize) -> Result<Vec<Perm>> {
    if n < 2 {
        return Ok(Vec::new());
    }
    let cyc: Vec<u32> = (0..n as u32).collect();
    Ok(vec![Perm::from_cycles(n, &[vec![0, 1]])?, Perm::from_cycles(n, &[cyc])?])
}

fn alt_gens(n: usize) -> Result<Vec<Perm>> {
    if n < 3 {
        return Ok(Vec::new());
    }
    let start = if n % 2 == 1 { 0 } else { 1 };
    let cyc: Vec<u32> = (start..n as u32).collect();
    Ok(vec![Perm::from_cycles(n, &[vec![0, 1, 2]])?, Perm::from_cycles(n, &[cyc])?])
}

fn primitive_root(p: u64) -> u64 {
    let primes = arith(p - 1).map(|f| f.primes()).unwrap_or_default();
    (2..p).find(|&g| primes.iter().all(|&r| pow_mod(g, (p - 1) / r, p) != 1)).unwrap_or(1)
}

/// Regular representation of a group given by a multiplication on
/// `0..order`, generated by right multiplication by `gens`.
fn regular(order: usize, gens: &[usize], mul: impl Fn(usize, usize) -> usize) -> Result<Group> {
    let perms = gens
        .iter()
        .map(|&g| perm((0..order).map(|x| mul(x, g) as u32).collect()))
        .collect::<Result<Vec<_>>>()?;
    Group::new(order, perms)
}

fn prime_power(q: u64) -> Result<(u64, u32)> {
    let f = arith(q)?;
    match f.primes().as_slice() {
        [p] => {
            let mut e = 0;
            let mut x = q;
            while x > 1 {
                x /= p;
                e += 1;
            }
            Ok((*p, e))
        }
        _ => Err(Error::InvalidArgument(format!("{q} is not a prime power"))),
    }
}

fn build_family(f: &Family) -> Result<Built> {
    match f {
        Family::Sym(n) => {
            let n = *n as usize;
            let g = checked(Group::new(n, sym_gens(n)?)?, factorial(n as u64), "Sym")?;
            let a = Group::new(n, alt_gens(n)?)?;
            Ok(Built { group: g, socle: Some(a), factor: None })
        }
        Family::Alt(n) => {
            let n = *n as usize;
            let g = checked(Group::new(n, alt_gens(n)?)?, (factorial(n as u64) / 2).max(1), "Alt")?;
            Ok(Built::simple(g))
        }
        Family::Cyclic(n) => {
            let n = *n as usize;
            if n == 0 {
                return Err(Error::InvalidArgument("C(0)".into()));
            }
            let g = perm((0..n as u32).map(|x| (x + 1) % n as u32).collect())?;
            Ok(Built::simple(checked(Group::new(n, vec![g])?, n as u128, "cyclic group")?))
        }
        Family::Dihedral(o) => {
            if o % 2 != 0 || *o < 6 {
                return Err(Error::InvalidArgument(format!("D({o}) needs an even order of at least 6")));
            }
            let n = (*o / 2) as u32;
            let r = perm((0..n).map(|x| (x + 1) % n).collect())?;
            let s = perm((0..n).map(|x| (n - x) % n).collect())?;
            let g = checked(Group::new(n as usize, vec![r.clone(), s])?, *o as u128, "dihedral group")?;
            Ok(Built { socle: Some(Group::new(n as usize, vec![r])?), group: g, factor: None })
        }
        Family::Quaternion(o) => {
            if o % 4 != 0 || *o < 8 {
                return Err(Error::InvalidArgument(format!("Q({o}) needs an order divisible by 4, at least 8")));
            }
            // a^i b^j stored as j*2n + i; b^2 = a^n, a^b = a^-1
            let n2 = (*o / 2) as usize;
            let mul = |x: usize, y: usize| {
                let (i, j) = (x % n2, x / n2);
                let (k, l) = (y % n2, y / n2);
                let mut e = if j == 1 { i + n2 - k } else { i + k };
                if j == 1 && l == 1 {
                    e += n2 / 2;
                }
                (j ^ l) * n2 + e % n2
            };
            let g = regular(*o as usize, &[1, n2], mul)?;
            Ok(Built::plain(checked(g, *o as u128, "quaternion group")?))
        }
        Family::Frobenius { p, d } => {
            if !is_prime(*p) || (p - 1) % d != 0 {
                return Err(Error::InvalidArgument(format!("F({p},{d}) needs a prime p with d | p-1")));
            }
            let w = pow_mod(primitive_root(*p), (p - 1) / d, *p);
            let t = perm((0..*p).map(|x| ((x + 1) % p) as u32).collect())?;
            let m = perm((0..*p).map(|x| (x * w % p) as u32).collect())?;
            let g = checked(Group::new(*p as usize, vec![t.clone(), m])?, (*p * *d) as u128, "Frobenius group")?;
            Ok(Built { socle: Some(Group::new(*p as usize, vec![t])?), group: g, factor: None })
        }
        Family::Split { m, d, r } => {
            if *m < 1 || *d < 1 || gcd(*r, *m) != 1 || pow_mod(*r, *d, *m) != 1 % *m {
                return Err(Error::InvalidArgument(format!("SD({m},{d},{r}) needs r a unit with r^d = 1 mod m")));
            }
            // b^j a^i stored as j*m + i; (b^j a^i)(b^l a^k) = b^{j+l} a^{i r^l + k}
            let (m_, d_) = (*m as usize, *d as usize);
            let rl: Vec<u64> = (0..*d).map(|l| pow_mod(*r, l, *m)).collect();
            let mul = |x: usize, y: usize| {
                let (i, j) = (x % m_, x / m_);
                let (k, l) = (y % m_, y / m_);
                let e = (i as u64 * rl[l] + k as u64) % *m;
                ((j + l) % d_) * m_ + e as usize
            };
            let g = regular(m_ * d_, &[1 % (m_ * d_), if d_ > 1 { m_ } else { 0 }], mul)?;
            Ok(Built::plain(checked(g, (*m * *d) as u128, "split metacyclic group")?))
        }
        Family::Classical { kind, n, q } => classical(*kind, *n as usize, *q),
        Family::Mathieu { n, ext } => mathieu_group(*n, *ext),
        Family::Graph(s) => graph(s),
        Family::Wreath { base, k } => wreath(&build(base)?, *k as usize),
        Family::Hol(s) => holomorph(s),
        Family::Diag { t, outer } => diagonal(t, *outer),
        Family::Coset { group, sub } => {
            let b = build(group)?;
            let h = crate::verifier::recipe::first(&b, sub, DEFAULT_SEED)?;
            on_cosets(&b, &h)
        }
        Family::Perms { degree, gens } => {
            let n = *degree as usize;
            let gens = gens.iter().map(|c| Perm::from_cycles(n, c)).collect::<Result<Vec<_>>>()?;
            Ok(Built::plain(Group::new(n, gens)?))
        }
    }
}

fn mathieu_group(n: u64, ext: bool) -> Result<Built> {
    if ext {
        let (g, s) = if n == 12 { mathieu::m12_2_with_socle()? } else { mathieu::m22_2_with_socle()? };
        return Ok(Built { group: g, socle: Some(s), factor: None });
    }
    let g = match n {
        9 => mathieu::m9()?,
        10 => mathieu::m10()?,
        11 => mathieu::m11()?,
        12 => mathieu::m12()?,
        22 => mathieu::m22()?,
        23 => mathieu::m23()?,
        24 => mathieu::m24()?,
        _ => return Err(Error::Unknown { kind: "Mathieu group", name: format!("M{n}") }),
    };
    Ok(Built::simple(g))
}

/// Socle maps and full generating maps for the projective families.
fn projective_maps(kind: Classical, field: &Field, n: usize) -> Result<(Vec<SemiLinear>, Vec<SemiLinear>, u128)> {
    let q = field.order() as u64;
    let f = field.degree() as u128;
    let sl: Vec<SemiLinear> = sl_generators(field, n).into_iter().map(SemiLinear::linear).collect();
    let mut all = sl.clone();
    let order = match kind {
        Classical::PSL => psl_order(n as u32, q),
        Classical::PGL => {
            all.push(SemiLinear::linear(gl_extra(field, n)));
            pgl_order(n as u32, q)
        }
        Classical::PSigmaL => {
            all.push(SemiLinear::frobenius(n));
            psl_order(n as u32, q) * f
        }
        Classical::PGammaL => {
            all.push(SemiLinear::linear(gl_extra(field, n)));
            all.push(SemiLinear::frobenius(n));
            pgl_order(n as u32, q) * f
        }
        _ => return Err(Error::InvalidArgument(format!("{} is not a projective linear family", kind.name()))),
    };
    Ok((sl, all, order))
}

fn classical(kind: Classical, n: usize, q: u64) -> Result<Built> {
    let (p, e) = prime_power(q)?;
    let field = Field::new(p, e)?;
    let name = format!("{}({n},{q})", kind.name());
    match kind {
        Classical::PSL | Classical::PGL | Classical::PSigmaL | Classical::PGammaL => {
            if n < 2 {
                return Err(Error::InvalidArgument(format!("{name} needs n >= 2")));
            }
            let space = ProjectiveSpace::new(field.clone(), n)?;
            let (sl, all, order) = projective_maps(kind, &field, n)?;
            let d = space.len();
            let socle = Group::new(d, sl.iter().map(|m| space.point_perm(m)).collect())?;
            let socle = checked(socle, psl_order(n as u32, q), &format!("PSL({n},{q})"))?;
            let g = Group::new(d, all.iter().map(|m| space.point_perm(m)).collect())?;
            Ok(Built { group: checked(g, order, &name)?, socle: Some(socle), factor: None })
        }
        Classical::PSp => {
            if !n.is_multiple_of(2) || n < 2 {
                return Err(Error::InvalidArgument(format!("{name} needs an even dimension")));
            }
            let space = ProjectiveSpace::new(field.clone(), n)?;
            let gens = sp_generators(&field, n).into_iter().map(|m| space.point_perm(&SemiLinear::linear(m))).collect();
            let g = checked(Group::new(space.len(), gens)?, psp_order(n as u32, q), &name)?;
            Ok(Built::simple(g))
        }
        Classical::PSU | Classical::PGammaU => {
            if (n, q) != (4, 2) {
                return Err(Error::InvalidArgument(format!("{name}: only the unitary groups over GF(4) in dimension 4 are built")));
            }
            let (full, socle) = psu42()?;
            if kind == Classical::PSU {
                Ok(Built::simple(socle))
            } else {
                Ok(Built { group: full, socle: Some(socle), factor: None })
            }
        }
        Classical::AGL | Classical::AGammaL => {
            if n < 1 {
                return Err(Error::InvalidArgument(format!("{name} needs n >= 1")));
            }
            let size = (q as u128).pow(n as u32);
            if size > DEGREE_CAP as u128 {
                return Err(Error::CapExceeded { what: "affine space", size, cap: DEGREE_CAP as u128 });
            }
            let zero = vec![0; n];
            let mut maps: Vec<SemiLinear> = if n >= 2 {
                sl_generators(&field, n).into_iter().map(SemiLinear::linear).collect()
            } else {
                Vec::new()
            };
            maps.push(SemiLinear::linear(gl_extra(&field, n)));
            let mut order = size * gl_order(n as u32, q as u128);
            if kind == Classical::AGammaL {
                maps.push(SemiLinear::frobenius(n));
                order *= field.degree() as u128;
            }
            let mut translations = Vec::new();
            for a in field.additive_basis() {
                for i in 0..n {
                    let mut v: Vec<Fe> = zero.clone();
                    v[i] = a;
                    translations.push(affine_perm(&field, n, &SemiLinear::linear(Matrix::identity(n)), &v));
                }
            }
            let socle = checked(Group::new(size as usize, translations.clone())?, size, "translation group")?;
            let mut gens: Vec<Perm> = maps.iter().map(|m| affine_perm(&field, n, m, &zero)).collect();
            gens.extend(translations);
            let g = checked(Group::new(size as usize, gens)?, order, &name)?;
            Ok(Built { group: g, socle: Some(socle), factor: None })
        }
    }
}

/// The orthogonal group of `x1 x2 + x3 x4 + x5^2 + x5 x6 + x6^2` on GF(2)^6
/// acting on its 27 nonzero singular vectors; it is PGammaU(4,2), and the
/// products of two reflections give PSU(4,2).
fn psu42() -> Result<(Group, Group)> {
    let bit = |x: u32, i: u32| (x >> i) & 1;
    let q = |x: u32| (bit(x, 0) & bit(x, 1)) ^ (bit(x, 2) & bit(x, 3)) ^ bit(x, 4) ^ (bit(x, 4) & bit(x, 5)) ^ bit(x, 5);
    let b = |x: u32, y: u32| q(x ^ y) ^ q(x) ^ q(y);
    let points: Vec<u32> = (1..64).filter(|&x| q(x) == 0).collect();
    let normals: Vec<u32> = (1..64).filter(|&x| q(x) == 1).collect();
    if points.len() != 27 || normals.len() != 36 {
        return Err(Error::Construction("quadric has the wrong number of points".into()));
    }
    let index: HashMap<u32, u32> = points.iter().enumerate().map(|(i, &x)| (x, i as u32)).collect();
    let reflections = normals
        .iter()
        .map(|&v| perm(points.iter().map(|&x| index[&if b(x, v) == 1 { x ^ v } else { x }]).collect()))
        .collect::<Result<Vec<_>>>()?;
    let full = checked(Group::new(27, reflections.clone())?, 51840, "PGammaU(4,2)")?;
    let r0 = &reflections[0];
    let socle = Group::new(27, reflections[1..].iter().map(|r| r0.mul(r)).collect())?;
    Ok((full, checked(socle, 25920, "PSU(4,2)")?))
}

/// Points and hyperplanes of a projective linear group, extended by the
/// polarity swapping each point with the hyperplane orthogonal to it.
fn graph(s: &GroupSpec) -> Result<Built> {
    let (kind, n, q) = match (&s.family, s.at) {
        (Family::Classical { kind, n, q }, None) => (*kind, *n as usize, *q),
        _ => return Err(Error::InvalidArgument(format!("graph() needs a projective linear group, got `{s}`"))),
    };
    if n < 3 {
        return Err(Error::InvalidArgument("graph() needs dimension at least 3".into()));
    }
    let (p, e) = prime_power(q)?;
    let field = Field::new(p, e)?;
    let space = ProjectiveSpace::new(field.clone(), n)?;
    let (sl, all, order) = projective_maps(kind, &field, n)?;
    let d = 2 * space.len();
    let socle = Group::new(d, sl.iter().map(|m| space.point_hyperplane_perm(m)).collect())?;
    let socle = checked(socle, psl_order(n as u32, q), "PSL on points and hyperplanes")?;
    let mut gens: Vec<Perm> = all.iter().map(|m| space.point_hyperplane_perm(m)).collect();
    gens.push(space.polarity());
    let g = checked(Group::new(d, gens)?, 2 * order, &format!("graph({s})"))?;
    Ok(Built { group: g, socle: Some(socle), factor: None })
}

/// Product action of `H wr Sym(k)` on `Delta^k`, coordinates encoded in
/// mixed radix with the first coordinate most significant.
pub fn wreath(h: &Built, k: usize) -> Result<Built> {
    if k < 2 {
        return Err(Error::InvalidArgument("wreath products need k >= 2".into()));
    }
    let d = h.group.degree();
    let size = (d as u128).pow(k as u32);
    if size > DEGREE_CAP as u128 {
        return Err(Error::CapExceeded { what: "product action degree", size, cap: DEGREE_CAP as u128 });
    }
    let mut gens: Vec<Perm> = h.group.gens().iter().map(|s| coordinate_perm(d, k, 0, s)).collect();
    gens.push(top_perm(d, k, &{
        let mut t: Vec<usize> = (0..k).collect();
        t.swap(0, 1);
        t
    }));
    if k > 2 {
        gens.push(top_perm(d, k, &(0..k).map(|i| (i + 1) % k).collect::<Vec<_>>()));
    }
    let order = h.group.order().pow(k as u32) * factorial(k as u64);
    let g = checked(Group::new(size as usize, gens)?, order, "wreath product")?;
    let socle = match &h.socle {
        Some(t) => {
            let sg: Vec<Perm> = (0..k).flat_map(|c| t.gens().iter().map(move |s| coordinate_perm(d, k, c, s))).collect();
            Some(Group::new(size as usize, sg)?)
        }
        None => None,
    };
    Ok(Built { group: g, socle, factor: Some((Box::new(h.clone()), k)) })
}

/// `s` acting on coordinate `c` of `Delta^k`.
pub fn coordinate_perm(d: usize, k: usize, c: usize, s: &Perm) -> Perm {
    let stride = d.pow((k - 1 - c) as u32);
    let size = d.pow(k as u32);
    let img: Vec<u32> = (0..size)
        .map(|x| {
            let digit = (x / stride) % d;
            (x - digit * stride + s.apply(digit as u32) as usize * stride) as u32
        })
        .collect();
    Perm::from_images(img).expect("coordinate action is a bijection")
}

/// Coordinate permutation: the entry in position `i` moves to position `sigma[i]`.
pub fn top_perm(d: usize, k: usize, sigma: &[usize]) -> Perm {
    let size = d.pow(k as u32);
    let img: Vec<u32> = (0..size)
        .map(|x| {
            let mut digits = vec![0; k];
            let mut y = x;
            for i in (0..k).rev() {
                digits[i] = y % d;
                y /= d;
            }
            let mut out = vec![0; k];
            for i in 0..k {
                out[sigma[i]] = digits[i];
            }
            out.iter().fold(0, |acc, &v| acc * d + v) as u32
        })
        .collect();
    Perm::from_images(img).expect("coordinate permutation is a bijection")
}

/// The elements of `t` in rank order, with a lookup by rank.
struct ElementSet {
    t: Group,
    elems: Vec<Perm>,
}

impl ElementSet {
    fn new(t: Group) -> Result<ElementSet> {
        if t.order() > REGULAR_CAP {
            return Err(Error::CapExceeded { what: "element set", size: t.order(), cap: REGULAR_CAP });
        }
        let elems = t.elements();
        Ok(ElementSet { t, elems })
    }

    fn index(&self, x: &Perm) -> u32 {
        self.t.chain().rank(x).expect("element of the group") as u32
    }

    fn on_elements(&self, f: impl Fn(&Perm) -> Perm) -> Result<Perm> {
        perm(self.elems.iter().map(|x| self.index(&f(x))).collect())
    }

    fn right(&self, s: &Perm) -> Result<Perm> {
        self.on_elements(|x| x.mul(s))
    }

    fn left(&self, s: &Perm) -> Result<Perm> {
        let si = s.inverse();
        self.on_elements(|x| si.mul(x))
    }

    fn translations(&self) -> Result<Vec<Perm>> {
        let mut out = Vec::new();
        for s in self.t.gens() {
            out.push(self.right(s)?);
            out.push(self.left(s)?);
        }
        Ok(out)
    }

    fn center_order(&self) -> u128 {
        self.elems.iter().filter(|z| self.t.gens().iter().all(|s| z.mul(s) == s.mul(z))).count() as u128
    }
}

/// Automorphisms of the group named by `s`, as maps on its elements.
fn automorphisms(s: &GroupSpec) -> Result<Vec<Box<dyn Fn(&Perm) -> Perm>>> {
    if s.at.is_some() {
        return Err(Error::InvalidArgument(format!("automorphisms of `{s}` need the natural action")));
    }
    let conj_by = |amb: Group| -> Vec<Box<dyn Fn(&Perm) -> Perm>> {
        amb.gens().iter().map(|g| {
            let g = g.clone();
            Box::new(move |x: &Perm| x.conj(&g)) as Box<dyn Fn(&Perm) -> Perm>
        }).collect()
    };
    match &s.family {
        Family::Classical { kind: Classical::PSL, n: 2, q } => {
            Ok(conj_by(build_group(&GroupSpec::new(Family::Classical { kind: Classical::PGammaL, n: 2, q: *q }))?))
        }
        Family::Sym(n) | Family::Alt(n) if *n != 6 => Ok(conj_by(build_group(&GroupSpec::new(Family::Sym(*n)))?)),
        Family::Cyclic(n) => {
            let n = *n;
            Ok((1..n.max(2))
                .filter(|&u| gcd(u, n) == 1)
                .map(|u| Box::new(move |x: &Perm| x.pow(u as i64)) as Box<dyn Fn(&Perm) -> Perm>)
                .collect())
        }
        _ => Err(Error::InvalidArgument(format!("no automorphism data for `{s}`"))),
    }
}

fn aut_perms(set: &ElementSet, s: &GroupSpec) -> Result<Vec<Perm>> {
    let gens = set.t.gens();
    let mut out = Vec::new();
    for a in automorphisms(s)? {
        // a homomorphism on generator pairs, and onto
        for x in gens {
            for y in gens {
                if a(&x.mul(y)) != a(x).mul(&a(y)) {
                    return Err(Error::Construction(format!("supplied map is not an automorphism of `{s}`")));
                }
            }
        }
        out.push(set.on_elements(|x| a(x))?);
    }
    Ok(out)
}

fn holomorph(s: &GroupSpec) -> Result<Built> {
    let set = ElementSet::new(build_group(s)?)?;
    let n = set.elems.len();
    let trans = set.translations()?;
    let auts = aut_perms(&set, s)?;
    // inner and supplied automorphisms; they fix the identity, so the
    // order of the result is |T| times the order of this group
    let mut a_gens: Vec<Perm> = set.t.gens().iter().map(|g| set.on_elements(|x| x.conj(g))).collect::<Result<_>>()?;
    a_gens.extend(auts.iter().cloned());
    let a_order = Group::new(n, a_gens)?.order();
    let socle = Group::new(n, trans.clone())?;
    let mut gens = trans;
    gens.extend(auts);
    let g = checked(Group::new(n, gens)?, n as u128 * a_order, &format!("hol({s})"))?;
    Ok(Built { group: g, socle: Some(socle), factor: None })
}

/// `T x T` on the elements of `T` by `t -> a^-1 t b`; `outer` adjoins
/// inversion and the supplied automorphisms.
fn diagonal(s: &GroupSpec, outer: bool) -> Result<Built> {
    let set = ElementSet::new(build_group(s)?)?;
    let n = set.elems.len();
    let trans = set.translations()?;
    let t = n as u128;
    let socle = checked(Group::new(n, trans.clone())?, t * t / set.center_order(), &format!("diag({s})"))?;
    if !outer {
        return Ok(Built { group: socle.clone(), socle: Some(socle), factor: None });
    }
    let mut gens = trans;
    gens.push(set.on_elements(|x| x.inverse())?);
    gens.extend(aut_perms(&set, s)?);
    let g = Group::new(n, gens)?;
    Ok(Built { group: g, socle: Some(socle), factor: None })
}

/// Images of `xs` in the action of `G` on the cosets with representatives
/// `reps` of the subgroup with chain `h`.
fn coset_images(g: &Group, h: &Group, reps: &[Perm], xs: &[Perm]) -> Result<Vec<Perm>> {
    let gc = g.chain();
    let hc = h.chain();
    let index: HashMap<u128, u32> = reps.iter().enumerate().map(|(i, r)| (coset_key(gc, hc, r), i as u32)).collect();
    xs.iter()
        .map(|x| {
            let img: Vec<u32> = reps.iter().map(|r| index[&coset_key(gc, hc, &r.mul(x))]).collect();
            perm(img)
        })
        .collect()
}

fn on_cosets(b: &Built, h: &Group) -> Result<Built> {
    let g = &b.group;
    let act = coset_action(g, &Subgroup::from_group(g, h.clone()), DEFAULT_DEGREE_CAP)?;
    if act.kernel_order != 1 {
        return Err(Error::Construction(format!("coset action has a kernel of order {}", act.kernel_order)));
    }
    let socle = match &b.socle {
        Some(s) => Some(Group::new(act.degree, coset_images(g, h, &act.reps, s.gens())?)?),
        None => None,
    };
    Ok(Built { group: act.image, socle, factor: None })
}

/// The action on the cosets of the first core-free two-generated subgroup
/// of index `d`.
fn reaction(b: Built, d: u64) -> Result<Built> {
    let g = &b.group;
    if d == 0 || !g.order().is_multiple_of(d as u128) {
        return Err(Error::InvalidArgument(format!("{} has no action of degree {d}", g.label())));
    }
    let mut found = None;
    let mut failure = None;
    two_generated(g, g.order() / d as u128, None, &mut |h| {
        match coset_action(g, &Subgroup::from_group(g, h.clone()), DEFAULT_DEGREE_CAP) {
            Ok(a) if a.kernel_order == 1 => {
                found = Some(h);
                false
            }
            Ok(_) => true,
            Err(e) => {
                failure = Some(e);
                false
            }
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let h = found.ok_or_else(|| Error::Construction(format!("no faithful action of degree {d} found")))?;
    on_cosets(&b, &h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::signature::signature;

    fn b(text: &str) -> Built {
        build(&GroupSpec::parse(text).unwrap()).unwrap()
    }

    #[test]
    fn small_families() {
        for (text, deg, order) in [
            ("Sym(5)", 5, 120),
            ("Alt(6)", 6, 360),
            ("Alt(7)", 7, 2520),
            ("C(7)", 7, 7),
            ("D(10)", 5, 10),
            ("Q(8)", 8, 8),
            ("Q(16)", 16, 16),
            ("F(11,5)", 11, 55),
            ("SD(9,3,4)", 27, 27),
            ("SD(9,6,2)", 54, 54),
        ] {
            let g = b(text).group;
            assert_eq!((g.degree(), g.order()), (deg, order), "{text}");
        }
    }

    #[test]
    fn linear_families() {
        for (text, deg, order) in [
            ("PSL(2,11)", 12, 660),
            ("PSL(3,2)", 7, 168),
            ("PGL(2,9)", 10, 720),
            ("PSigmaL(2,9)", 10, 720),
            ("PGammaL(2,9)", 10, 1440),
            ("PGammaL(2,16)", 17, 16320),
            ("PSp(4,3)", 40, 25920),
            ("AGL(3,2)", 8, 1344),
            ("AGammaL(1,9)", 9, 144),
            ("PSU(4,2)", 27, 25920),
            ("PGammaU(4,2)", 27, 51840),
            ("graph(PSL(3,3))", 26, 11232),
        ] {
            let g = b(text).group;
            assert_eq!((g.degree(), g.order()), (deg, order), "{text}");
        }
    }

    #[test]
    fn psl_3_2_looks_like_psl_2_7() {
        let a = signature(&b("PSL(3,2)").group).unwrap();
        let c = signature(&b("PSL(2,7)").group).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn action_by_degree() {
        let x = b("PSL(2,11)@11");
        assert_eq!((x.group.degree(), x.group.order()), (11, 660));
        assert_eq!(x.socle.unwrap().order(), 660);
        assert!(build(&GroupSpec::parse("PSL(2,11)@13").unwrap()).is_err());
    }

    #[test]
    fn wreath_product() {
        let w = b("wreath(Sym(5), 2)");
        assert_eq!((w.group.degree(), w.group.order()), (25, 28800));
        assert_eq!(w.socle.unwrap().order(), 3600);
        let c = Perm::parse("(1,2,3,4,5)", 5).unwrap();
        // (0,0) -> (1,0)
        assert_eq!(coordinate_perm(5, 2, 0, &c).apply(0), 5);
        assert_eq!(coordinate_perm(5, 2, 1, &c).apply(0), 1);
        let w3 = b("wreath(Sym(3), 3)");
        assert_eq!(w3.group.order(), 6u128.pow(3) * 6);
    }

    #[test]
    fn holomorphs_and_diagonals() {
        let h = b("hol(C(5))");
        assert_eq!((h.group.degree(), h.group.order()), (5, 20));
        let h = b("hol(PSL(2,5))");
        assert_eq!((h.group.degree(), h.group.order()), (60, 7200));
        let d = b("diag(PSL(2,5))");
        assert_eq!(d.group.order(), 3600);
        let stab = d.group.chain().stabilizer_chain(1).order();
        assert_eq!(d.group.chain().base()[0], 0);
        assert_eq!(stab, 60);
        let d = b("diag(PSL(2,5), outer)");
        assert_eq!(d.group.order(), 14400);
        assert!(build(&GroupSpec::parse("hol(M11)").unwrap()).is_err());
    }

    #[test]
    fn explicit_and_coset_groups() {
        let p = b("Perms(9, (1,2,3,4,5), (1,2,3), (1,2)(6,7,8,9))");
        assert_eq!(p.group.order(), 240);
        let c = b("coset(Sym(5), set_stab([1,2]))");
        assert_eq!((c.group.degree(), c.group.order()), (10, 120));
        assert_eq!(c.socle.unwrap().order(), 60);
    }
}
