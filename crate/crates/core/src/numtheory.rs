//! Integer arithmetic: factorization, totients, p-parts, primitive prime
//! divisors and the divisibility filters used to prune impossible claims.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a / gcd(a, b)).checked_mul(b).expect("lcm overflows u64")
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin; the witness set is exact below 2^64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

// Pollard rho with Brent's cycle detection; the polynomial x^2 + c is
// stepped through c = 1, 2, .. so results are reproducible.
fn rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

fn factor_into(n: u64, out: &mut BTreeMap<u64, u32>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        *out.entry(n).or_insert(0) += 1;
        return;
    }
    let d = rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

/// An integer together with its prime factorization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factored {
    pub value: u64,
    pub prime_powers: BTreeMap<u64, u32>,
}

impl Factored {
    pub fn phi(&self) -> u64 {
        self.prime_powers.iter().map(|(&p, &e)| (p - 1) * p.pow(e - 1)).product()
    }

    pub fn p_part(&self, p: u64) -> u64 {
        self.prime_powers.get(&p).map_or(1, |&e| p.pow(e))
    }

    pub fn primes(&self) -> Vec<u64> {
        self.prime_powers.keys().copied().collect()
    }

    pub fn divisors(&self) -> Vec<u64> {
        let mut ds = vec![1u64];
        for (&p, &e) in &self.prime_powers {
            let mut next = Vec::with_capacity(ds.len() * (e as usize + 1));
            for &d in &ds {
                let mut q = d;
                for _ in 0..=e {
                    next.push(q);
                    q *= p;
                }
            }
            ds = next;
        }
        ds.sort_unstable();
        ds
    }
}

pub fn arith(n: u64) -> Result<Factored> {
    if n == 0 {
        return Err(Error::InvalidArgument("arith(0)".into()));
    }
    let mut pp = BTreeMap::new();
    let mut m = n;
    for p in [2u64, 3, 5, 7, 11, 13] {
        while m.is_multiple_of(p) {
            *pp.entry(p).or_insert(0) += 1;
            m /= p;
        }
    }
    factor_into(m, &mut pp);
    Ok(Factored { value: n, prime_powers: pp })
}

pub fn phi(n: u64) -> u64 {
    arith(n).map(|f| f.phi()).unwrap_or(0)
}

pub fn p_part(n: u64, p: u64) -> u64 {
    let mut r = 1;
    let mut m = n;
    while m > 0 && m.is_multiple_of(p) {
        r *= p;
        m /= p;
    }
    r
}

/// Same as [`p_part`] for orders that may exceed 64 bits.
pub fn p_part_u128(n: u128, p: u64) -> u128 {
    let p = p as u128;
    let mut r = 1;
    let mut m = n;
    while m > 0 && m.is_multiple_of(p) {
        r *= p;
        m /= p;
    }
    r
}

pub fn prime_factors_u128(mut n: u128) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p: u64 = 2;
    while n > u64::MAX as u128 {
        if n.is_multiple_of(p as u128) {
            out.push(p);
            while n.is_multiple_of(p as u128) {
                n /= p as u128;
            }
        }
        p += 1;
    }
    if n > 1 {
        for q in arith(n as u64).expect("nonzero").primes() {
            if !out.contains(&q) {
                out.push(q);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Multiplicative order of `a` modulo `m`, for `gcd(a, m) = 1`.
pub fn mult_order(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    let f = arith(phi(m)).expect("phi > 0");
    let mut o = f.value;
    for p in f.primes() {
        while o.is_multiple_of(p) && pow_mod(a, o / p, m) == 1 {
            o /= p;
        }
    }
    o
}

/// Smallest primitive prime divisor of `a^m - 1`, or `None` on the
/// Zsigmondy exceptions `(2, 6)` and `(2^k - 1, 2)`.
///
/// A prime `r` is primitive exactly when the order of `a` mod `r` is `m`,
/// so every candidate is `1 mod m`. Candidates are the prime factors of the
/// cyclotomic value `Phi_m(a)`; when `a^m - 1` does not fit in 128 bits the
/// search walks primes `r = km + 1` directly.
pub fn zsigmondy(a: u64, m: u32) -> Option<u64> {
    assert!(a >= 2 && m >= 1, "zsigmondy needs a >= 2, m >= 1");
    if let Some(c) = cyclotomic_value(a, m) {
        return prime_factors_u128(c).into_iter().find(|&r| !a.is_multiple_of(r) && mult_order(a % r, r) == m as u64);
    }
    if zsigmondy_exception(a, m) {
        return None;
    }
    let mut k = 1u64;
    loop {
        let r = k * m as u64 + 1;
        if is_prime(r) && !a.is_multiple_of(r) && mult_order(a % r, r) == m as u64 {
            return Some(r);
        }
        k += 1;
    }
}

/// `Phi_m(a)`, or `None` when `a^m - 1` overflows.
fn cyclotomic_value(a: u64, m: u32) -> Option<u128> {
    let mut v = (a as u128).checked_pow(m)? - 1;
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        v /= cyclotomic_value(a, d)?;
    }
    Some(v)
}

pub fn zsigmondy_exception(a: u64, m: u32) -> bool {
    (a == 2 && m == 6) || (m == 2 && (a + 1).is_power_of_two()) || (a == 2 && m == 1)
}

/// `p^ceil(log_p n)`: the smallest power of `p` that is at least `n`.
pub fn lemma_exponent_bound(n: u64, p: u64) -> u64 {
    assert!(n >= 1 && p >= 2);
    let mut q = 1u64;
    while q < n {
        q *= p;
    }
    q
}

fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

fn ceil_log(p: u64, x: u64) -> u64 {
    let mut e = 0;
    let mut q = 1u64;
    while q < x {
        q *= p;
        e += 1;
    }
    e
}

/// All `(n, p)` with `n >= 3`, `p` prime, `n, p <= 64` and
/// `ceil(n/2) <= ceil(log_p(n+1))`.
pub fn affine_dimension_solver() -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    for n in 3..=64u64 {
        for p in (2..=64u64).filter(|&p| is_prime(p)) {
            if ceil_div(n, 2) <= ceil_log(p, n + 1) {
                out.push((n, p));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WreathTop {
    Transitive,
    Intransitive,
}

/// Divisibility filter for product-action candidates:
/// transitive top `n^k | (nk)^2 phi(nk)`, intransitive top
/// `n^k | (2n)^2 phi(2n)`.
pub fn wreath_filter(n: u64, k: u32, variant: WreathTop) -> Result<bool> {
    if n < 5 {
        return Err(Error::InvalidArgument(format!("wreath_filter needs n >= 5, got {n}")));
    }
    if k < 2 {
        return Err(Error::InvalidArgument(format!("wreath_filter needs k >= 2, got {k}")));
    }
    let lhs = (n as u128).checked_pow(k);
    let m = match variant {
        WreathTop::Transitive => n * k as u64,
        WreathTop::Intransitive => 2 * n,
    };
    let rhs = (m as u128) * (m as u128) * phi(m) as u128;
    Ok(match lhs {
        Some(l) => rhs.is_multiple_of(l),
        None => false,
    })
}
