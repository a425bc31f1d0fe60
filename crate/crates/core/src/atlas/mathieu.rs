//! Mathieu groups. M24 and M12 are generated on the projective line over
//! GF(23) and GF(11) (points `0..p-1`, infinity is `p`) by
//! `x -> x+1`, `x -> m x`, `x -> -1/x` and one further map that cubes
//! squares and non-squares with different scalings. The smaller groups are
//! point and set stabilizers. Every group is checked against its order.

use crate::error::{Error, Result};
use crate::permcore::backtrack::{set_stabilizer, Search};
use crate::permcore::{ChainBuilder, Group, Perm};

pub const M9_ORDER: u128 = 72;
pub const M10_ORDER: u128 = 720;
pub const M11_ORDER: u128 = 7920;
pub const M12_ORDER: u128 = 95040;
pub const M22_ORDER: u128 = 443520;
pub const M23_ORDER: u128 = 10200960;
pub const M24_ORDER: u128 = 244823040;

// (p, multiplier, exponent, scale)
const M24_DATA: (u64, u64, u64, u64) = (23, 2, 3, 9);
const M12_DATA: (u64, u64, u64, u64) = (11, 3, 3, 3);

/// `{0}` and the nonzero squares mod 23: a dodecad, whose stabilizer is M12.
const DODECAD: [u32; 12] = [0, 1, 2, 3, 4, 6, 8, 9, 12, 13, 16, 18];

fn pow_mod(b: u64, e: u64, p: u64) -> u64 {
    crate::numtheory::pow_mod(b, e, p)
}

fn projective_line_gens(data: (u64, u64, u64, u64)) -> Vec<Perm> {
    let (p, m, e, c) = data;
    let inf = p as u32;
    let n = p as usize + 1;
    let inv = |x: u64| pow_mod(x, p - 2, p);
    let is_square = |x: u64| pow_mod(x, (p - 1) / 2, p) == 1;
    let map = |f: &dyn Fn(u32) -> u32| Perm::from_images_unchecked((0..n as u32).map(f).collect());
    let alpha = map(&|x| if x == inf { inf } else { (x + 1) % p as u32 });
    let beta = map(&|x| if x == inf { inf } else { (x as u64 * m % p) as u32 });
    let gamma = map(&|x| {
        if x == inf {
            0
        } else if x == 0 {
            inf
        } else {
            ((p - inv(x as u64)) % p) as u32
        }
    });
    let ci = inv(c);
    let delta = map(&|x| {
        if x == inf || x == 0 {
            return x;
        }
        let y = pow_mod(x as u64, e, p);
        if is_square(x as u64) {
            (y * ci % p) as u32
        } else {
            (y * c % p) as u32
        }
    });
    vec![alpha, beta, gamma, delta]
}

fn checked(g: Group, order: u128, name: &str) -> Result<Group> {
    if g.order() != order {
        return Err(Error::Construction(format!("{name}: order {} does not match checksum {order}", g.order())));
    }
    Ok(g.labelled(name))
}

/// Stabilizer of the points `fix`, restricted to the complement (relabelled
/// in increasing order).
fn pointwise_restricted(g: &Group, fix: &[u32], order: u128, name: &str) -> Result<Group> {
    let n = g.degree();
    let chain = ChainBuilder::new(n).gens(g.gens()).base_prefix(fix).known_order(g.order()).build();
    let gens = chain.stabilizer_gens(fix.len());
    let keep: Vec<u32> = (0..n as u32).filter(|x| !fix.contains(x)).collect();
    let r = restrict(&gens, &keep)?;
    checked(Group::new(keep.len(), r)?, order, name)
}

/// Restriction of `gens` to the invariant set `keep`, renumbered by position.
pub fn restrict(gens: &[Perm], keep: &[u32]) -> Result<Vec<Perm>> {
    let n = gens.first().map_or(0, |g| g.degree());
    let mut pos = vec![u32::MAX; n];
    for (i, &x) in keep.iter().enumerate() {
        pos[x as usize] = i as u32;
    }
    gens.iter()
        .map(|g| {
            let img: Option<Vec<u32>> = keep.iter().map(|&x| pos.get(g.apply(x) as usize).copied().filter(|&y| y != u32::MAX)).collect();
            img.ok_or_else(|| Error::InvalidArgument("set is not invariant".into())).and_then(Perm::from_images)
        })
        .collect()
}

pub fn m24() -> Result<Group> {
    let gens = projective_line_gens(M24_DATA);
    checked(Group::new(24, gens)?, M24_ORDER, "M24")
}

pub fn m23() -> Result<Group> {
    pointwise_restricted(&m24()?, &[23], M23_ORDER, "M23")
}

pub fn m22() -> Result<Group> {
    pointwise_restricted(&m24()?, &[23, 0], M22_ORDER, "M22")
}

/// Stabilizer in M24 of the pair {0, infinity}, on the other 22 points.
pub fn m22_2() -> Result<Group> {
    let g = m24()?;
    let s = set_stabilizer(&g, &[0, 23]);
    let keep: Vec<u32> = (1..23).collect();
    checked(Group::new(22, restrict(s.gens(), &keep)?)?, 2 * M22_ORDER, "M22:2")
}

pub fn m12() -> Result<Group> {
    let gens = projective_line_gens(M12_DATA);
    checked(Group::new(12, gens)?, M12_ORDER, "M12")
}

pub fn m11() -> Result<Group> {
    pointwise_restricted(&m12()?, &[11], M11_ORDER, "M11")
}

pub fn m10() -> Result<Group> {
    pointwise_restricted(&m12()?, &[11, 0], M10_ORDER, "M10")
}

pub fn m9() -> Result<Group> {
    pointwise_restricted(&m12()?, &[11, 0, 1], M9_ORDER, "M9")
}

/// M12 as the stabilizer of a dodecad in M24, with socle-side generators
/// first; the second value is an element swapping the dodecad and its
/// complement.
fn dodecad_stabilizer() -> Result<(Group, Perm)> {
    let g = m24()?;
    let s = set_stabilizer(&g, &DODECAD);
    let s = checked(s, M12_ORDER, "M12")?;
    let mut inside = [false; 24];
    for &x in &DODECAD {
        inside[x as usize] = true;
    }
    let chain = ChainBuilder::new(24).gens(g.gens()).base_prefix(&DODECAD).known_order(M24_ORDER).build();
    let allow = |_: usize, imgs: &[u32]| !inside[*imgs.last().unwrap() as usize];
    let accept = |_: &Perm| true;
    let swap = Search::new(&chain, DODECAD.len(), &allow, &accept)
        .find()
        .ok_or_else(|| Error::Construction("no element maps the dodecad to its complement".into()))?;
    Ok((s, swap))
}

/// M12:2 on 24 points, and its M12.
pub fn m12_2_with_socle() -> Result<(Group, Group)> {
    let (s, swap) = dodecad_stabilizer()?;
    let mut gens = s.gens().to_vec();
    gens.push(swap);
    let g = checked(Group::new(24, gens)?, 2 * M12_ORDER, "M12:2")?;
    Ok((g, s))
}

pub fn m22_2_with_socle() -> Result<(Group, Group)> {
    Ok((m22_2()?, {
        let g = m24()?;
        let chain = ChainBuilder::new(24).gens(g.gens()).base_prefix(&[23, 0]).known_order(M24_ORDER).build();
        let keep: Vec<u32> = (1..23).collect();
        checked(Group::new(22, restrict(&chain.stabilizer_gens(2), &keep)?)?, M22_ORDER, "M22")?
    }))
}
