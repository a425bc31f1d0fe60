use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};

/// A bijection of `{0, .., n-1}`, stored as its image sequence.
///
/// Composition is left to right: `a.mul(&b)` applies `a` first, so
/// `x^(ab) = (x^a)^b`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Perm {
    img: Vec<u32>,
}

impl Hash for Perm {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.img.hash(state);
    }
}

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm { img: (0..n as u32).collect() }
    }

    /// Checked constructor; rejects anything that is not a bijection.
    pub fn from_images(img: Vec<u32>) -> Result<Perm> {
        let n = img.len();
        let mut seen = vec![false; n];
        for &x in &img {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::NotBijection);
            }
            seen[x] = true;
        }
        Ok(Perm { img })
    }

    /// Caller guarantees `img` is a bijection.
    pub(crate) fn from_images_unchecked(img: Vec<u32>) -> Perm {
        debug_assert!(Perm::from_images(img.clone()).is_ok());
        Perm { img }
    }

    /// Build from 0-based cycles on `n` points.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Perm> {
        let mut img: Vec<u32> = (0..n as u32).collect();
        let mut touched = vec![false; n];
        for c in cycles {
            for (i, &x) in c.iter().enumerate() {
                let x = x as usize;
                if x >= n {
                    return Err(Error::PointOutOfRange { point: x, degree: n });
                }
                if touched[x] {
                    return Err(Error::NotBijection);
                }
                touched[x] = true;
                img[x] = c[(i + 1) % c.len()];
            }
        }
        Ok(Perm { img })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.img.len()
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.img[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.img
    }

    pub fn is_identity(&self) -> bool {
        self.img.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` then `other`.
    pub fn mul(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { img: self.img.iter().map(|&x| other.img[x as usize]).collect() }
    }

    /// In-place `self := self * other`.
    pub fn mul_assign(&mut self, other: &Perm) {
        for x in self.img.iter_mut() {
            *x = other.img[*x as usize];
        }
    }

    /// In-place `self := other * self`.
    pub fn premul_assign(&mut self, other: &Perm) {
        let img: Vec<u32> = other.img.iter().map(|&x| self.img[x as usize]).collect();
        self.img = img;
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.img.len()];
        for (i, &x) in self.img.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm { img: inv }
    }

    /// `g^-1 * self * g`.
    pub fn conj(&self, g: &Perm) -> Perm {
        let mut img = vec![0u32; self.img.len()];
        for (i, &x) in self.img.iter().enumerate() {
            img[g.img[i] as usize] = g.img[x as usize];
        }
        Perm { img }
    }

    pub fn pow(&self, e: i64) -> Perm {
        let n = self.degree();
        let mut img = vec![0u32; n];
        let mut done = vec![false; n];
        let mut cyc = Vec::new();
        for s in 0..n {
            if done[s] {
                continue;
            }
            cyc.clear();
            let mut x = s as u32;
            loop {
                done[x as usize] = true;
                cyc.push(x);
                x = self.img[x as usize];
                if x as usize == s {
                    break;
                }
            }
            let l = cyc.len() as i64;
            let shift = e.rem_euclid(l) as usize;
            for (i, &y) in cyc.iter().enumerate() {
                img[y as usize] = cyc[(i + shift) % cyc.len()];
            }
        }
        Perm { img }
    }

    /// Disjoint cycles (length >= 2), each starting at its smallest point,
    /// sorted by first point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut done = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if done[s] || self.img[s] as usize == s {
                continue;
            }
            let mut c = Vec::new();
            let mut x = s as u32;
            while !done[x as usize] {
                done[x as usize] = true;
                c.push(x);
                x = self.img[x as usize];
            }
            out.push(c);
        }
        out
    }

    /// Cycle lengths including fixed points, sorted descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let n = self.degree();
        let mut done = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if done[s] {
                continue;
            }
            let mut l = 0;
            let mut x = s;
            while !done[x] {
                done[x] = true;
                l += 1;
                x = self.img[x] as usize;
            }
            out.push(l);
        }
        out.sort_unstable_by(|a, b| b.cmp(a));
        out
    }

    pub fn order(&self) -> u64 {
        let mut o: u64 = 1;
        let mut lens: Vec<usize> = self.cycle_type();
        lens.dedup();
        for l in lens {
            o = crate::numtheory::lcm(o, l as u64);
        }
        o
    }

    pub fn smallest_moved_point(&self) -> Option<u32> {
        self.img.iter().enumerate().find(|(i, &x)| *i as u32 != x).map(|(i, _)| i as u32)
    }

    pub fn fixes(&self, x: u32) -> bool {
        self.img[x as usize] == x
    }

    /// Parse 1-based cycle notation, e.g. `(1,2,3)(4,5)`; `()` is the identity.
    pub fn parse(text: &str, n: usize) -> Result<Perm> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |msg: &str| Error::Syntax { line: 1, col: 1, msg: format!("{msg} in permutation `{text}`") };
        let mut cycles: Vec<Vec<u32>> = Vec::new();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(bad("expected `(`"));
            }
            let close = rest.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let body = &rest[1..close];
            rest = &rest[close + 1..];
            if body.is_empty() {
                continue;
            }
            let mut c = Vec::new();
            for tok in body.split(',') {
                let v: usize = tok.parse().map_err(|_| bad("bad point"))?;
                if v == 0 || v > n {
                    return Err(Error::PointOutOfRange { point: v, degree: n });
                }
                c.push((v - 1) as u32);
            }
            if c.len() > 1 {
                cycles.push(c);
            }
        }
        Perm::from_cycles(n, &cycles)
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = self.cycles();
        if cs.is_empty() {
            return write!(f, "()");
        }
        for c in cs {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", x + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_left_to_right() {
        let a = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Perm::from_cycles(3, &[vec![1, 2]]).unwrap();
        // 0 -a-> 1 -b-> 2
        assert_eq!(a.mul(&b).apply(0), 2);
        let mut c = a.clone();
        c.mul_assign(&b);
        assert_eq!(c, a.mul(&b));
        let mut d = b.clone();
        d.premul_assign(&a);
        assert_eq!(d, a.mul(&b));
    }

    #[test]
    fn conj_matches_definition() {
        let x = Perm::parse("(1,2,3,4)", 5).unwrap();
        let g = Perm::parse("(1,5)(2,3)", 5).unwrap();
        assert_eq!(x.conj(&g), g.inverse().mul(&x).mul(&g));
    }

    #[test]
    fn parse_print_round_trip() {
        let p = Perm::parse(" (1, 2,3)(4,5) ", 6).unwrap();
        assert_eq!(p.to_string(), "(1,2,3)(4,5)");
        assert_eq!(p.order(), 6);
        assert_eq!(Perm::parse("()", 4).unwrap(), Perm::identity(4));
        assert_eq!(Perm::identity(4).to_string(), "()");
        assert!(Perm::parse("(1,2)(2,3)", 4).is_err());
        assert!(Perm::parse("(1,9)", 4).is_err());
    }

    #[test]
    fn pow_and_inverse() {
        let p = Perm::parse("(1,2,3,4,5)(6,7)", 7).unwrap();
        assert_eq!(p.pow(-1), p.inverse());
        assert_eq!(p.pow(10), Perm::identity(7));
        assert_eq!(p.pow(3), p.mul(&p).mul(&p));
        assert_eq!(p.cycle_type(), vec![5, 2]);
    }

    #[test]
    fn rejects_non_bijection() {
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert!(Perm::from_images(vec![2, 0, 1]).is_ok());
    }
}
