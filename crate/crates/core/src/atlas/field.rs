//! GF(p^f) in a polynomial basis. Elements are encoded as integers
//! `c_0 + c_1 p + .. + c_{f-1} p^{f-1}` over the residues `c_i` of the
//! coefficients, so `0` and `1` are the field's zero and one.

use crate::error::{Error, Result};
use crate::numtheory::{arith, is_prime, pow_mod};

pub type Fe = u32;

/// Pinned defining polynomials, low coefficient first, monic term omitted.
/// Each is the Conway polynomial for its field.
const PINNED: &[(u64, u32, &[u32])] = &[
    (2, 2, &[1, 1]),
    (2, 3, &[1, 1, 0]),
    (2, 4, &[1, 1, 0, 0]),
    (2, 5, &[1, 0, 1, 0, 0]),
    (2, 6, &[1, 1, 0, 1, 1, 0]),
    (3, 2, &[2, 2]),
    (3, 3, &[1, 2, 0]),
    (5, 2, &[2, 4]),
    (7, 2, &[3, 6]),
];

#[derive(Clone, Debug)]
pub struct Field {
    p: u32,
    f: u32,
    q: u32,
    // x^f = -(sum poly[i] x^i), stored as the coefficients of the monic polynomial
    poly: Vec<u32>,
    // multiplication by log tables; the field is small enough for that
    log: Vec<u32>,
    exp: Vec<Fe>,
}

impl Field {
    pub fn new(p: u64, f: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if f == 0 {
            return Err(Error::InvalidArgument("field degree must be positive".into()));
        }
        let q = (p as u128).pow(f);
        if q > 1 << 20 {
            return Err(Error::CapExceeded { what: "field size", size: q, cap: 1 << 20 });
        }
        let p = p as u32;
        let q = q as u32;
        let poly = match PINNED.iter().find(|(pp, ff, _)| *pp == p as u64 && *ff == f) {
            Some((_, _, c)) => c.to_vec(),
            None => least_primitive(p, f),
        };
        let mut fld = Field { p, f, q, poly, log: Vec::new(), exp: Vec::new() };
        fld.build_tables()?;
        Ok(fld)
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.f
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// Defining polynomial, low coefficient first, including the leading 1.
    pub fn polynomial(&self) -> Vec<u32> {
        let mut c = self.poly.clone();
        c.push(1);
        c
    }

    fn digits(&self, a: Fe) -> Vec<u32> {
        let mut d = vec![0; self.f as usize];
        let mut x = a;
        for c in d.iter_mut() {
            *c = x % self.p;
            x /= self.p;
        }
        d
    }

    fn from_digits(&self, d: &[u32]) -> Fe {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        if self.f == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.from_digits(&s)
    }

    pub fn neg(&self, a: Fe) -> Fe {
        let d: Vec<u32> = self.digits(a).iter().map(|&x| (self.p - x) % self.p).collect();
        self.from_digits(&d)
    }

    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    // schoolbook product reduced by the defining polynomial
    fn mul_slow(&self, a: Fe, b: Fe) -> Fe {
        let f = self.f as usize;
        let p = self.p as u64;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * f];
        for i in 0..f {
            for j in 0..f {
                prod[i + j] = (prod[i + j] + da[i] as u64 * db[j] as u64) % p;
            }
        }
        for k in (f..2 * f).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for i in 0..f {
                // x^k = x^(k-f) * x^f = -x^(k-f) * sum poly[i] x^i
                prod[k - f + i] = (prod[k - f + i] + (p - c) * self.poly[i] as u64) % p;
            }
        }
        let d: Vec<u32> = prod[..f].iter().map(|&x| x as u32).collect();
        self.from_digits(&d)
    }

    fn build_tables(&mut self) -> Result<()> {
        let q = self.q as usize;
        let g = if self.f == 1 { primitive_root(self.p) } else { self.p };
        let mut exp = Vec::with_capacity(q - 1);
        let mut log = vec![u32::MAX; q];
        let mut x: Fe = 1;
        for i in 0..q - 1 {
            if log[x as usize] != u32::MAX {
                return Err(Error::Construction(format!("defining polynomial of GF({}) is not primitive", self.q)));
            }
            log[x as usize] = i as u32;
            exp.push(x);
            x = self.mul_slow(x, g);
        }
        if x != 1 {
            return Err(Error::Construction(format!("generator of GF({}) has the wrong order", self.q)));
        }
        self.log = log;
        self.exp = exp;
        Ok(())
    }

    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
        self.exp[e as usize]
    }

    pub fn inv(&self, a: Fe) -> Option<Fe> {
        if a == 0 {
            return None;
        }
        let e = (self.q - 1 - self.log[a as usize]) % (self.q - 1);
        Some(self.exp[e as usize])
    }

    pub fn pow(&self, a: Fe, e: u64) -> Fe {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let l = (self.log[a as usize] as u64 * (e % (self.q as u64 - 1))) % (self.q as u64 - 1);
        self.exp[l as usize]
    }

    /// `x -> x^p`.
    pub fn frobenius(&self, a: Fe) -> Fe {
        self.pow(a, self.p as u64)
    }

    /// The primitive element: the class of `x` (or the least primitive root).
    pub fn generator(&self) -> Fe {
        self.exp[1 % self.exp.len()]
    }

    pub fn log(&self, a: Fe) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// Basis `1, w, .., w^{f-1}` of the field over GF(p).
    pub fn additive_basis(&self) -> Vec<Fe> {
        (0..self.f).map(|i| self.pow(self.generator(), i as u64)).collect()
    }

    /// Multiplicative order of `a`.
    pub fn element_order(&self, a: Fe) -> Option<u64> {
        let l = self.log(a)? as u64;
        Some((self.q as u64 - 1) / crate::numtheory::gcd(l, self.q as u64 - 1))
    }

    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        0..self.q
    }
}

fn primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let fac = arith(p as u64 - 1).expect("positive");
    (2..p)
        .find(|&g| fac.primes().iter().all(|&r| pow_mod(g as u64, (p as u64 - 1) / r, p as u64) != 1))
        .expect("primitive root exists")
}

// Lexicographically least monic primitive polynomial of degree f, comparing
// coefficient vectors from the constant term up.
fn least_primitive(p: u32, f: u32) -> Vec<u32> {
    let total = (p as u64).pow(f);
    for code in 0..total {
        let mut c = vec![0u32; f as usize];
        let mut x = code;
        for d in c.iter_mut() {
            *d = (x % p as u64) as u32;
            x /= p as u64;
        }
        if c[0] == 0 {
            continue;
        }
        let mut fld = Field { p, f, q: total as u32, poly: c.clone(), log: Vec::new(), exp: Vec::new() };
        if fld.build_tables().is_ok() {
            return c;
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4() {
        let f = Field::new(2, 2).unwrap();
        // x = 2, x + 1 = 3
        assert_eq!(f.mul(2, 3), 1);
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.polynomial(), vec![1, 1, 1]);
    }

    #[test]
    fn prime_field() {
        let f = Field::new(3, 1).unwrap();
        assert_eq!(f.add(2, 2), 1);
        assert_eq!(f.mul(2, 2), 1);
        assert_eq!(f.generator(), 2);
    }

    #[test]
    fn gf64_has_generator_of_order_63() {
        let f = Field::new(2, 6).unwrap();
        let orders: Vec<u64> = (1..64).map(|a| f.element_order(a).unwrap()).collect();
        assert!(orders.contains(&63));
        // brute force: x has order 63
        let mut y = 1;
        for i in 1..=63 {
            y = f.mul(y, 2);
            assert_eq!(y == 1, i == 63);
        }
    }

    #[test]
    fn field_axioms_small() {
        for (p, k) in [(2, 3), (3, 2), (5, 2), (2, 4), (7, 1), (3, 3), (11, 2)] {
            let f = Field::new(p, k).unwrap();
            let q = f.order();
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q.min(20) {
                    assert_eq!(f.mul(a, b), f.mul_slow(a, b));
                    let c = (a * 7 + b) % q;
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn composite_rejected() {
        assert!(Field::new(4, 1).is_err());
    }
}
