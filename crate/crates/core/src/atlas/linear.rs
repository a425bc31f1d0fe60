//! Matrices over GF(q) and the groups they induce on projective points,
//! hyperplanes and affine vectors. Vectors are rows and act by `v -> vM`,
//! which composes the same way as permutations do.

use std::collections::HashMap;

use super::field::{Fe, Field};
use crate::error::{Error, Result};
use crate::numtheory::gcd;
use crate::permcore::Perm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    pub n: usize,
    pub e: Vec<Fe>,
}

impl Matrix {
    pub fn identity(n: usize) -> Matrix {
        let mut e = vec![0; n * n];
        for i in 0..n {
            e[i * n + i] = 1;
        }
        Matrix { n, e }
    }

    pub fn get(&self, i: usize, j: usize) -> Fe {
        self.e[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Fe) {
        self.e[i * self.n + j] = x;
    }

    /// `I + a E_ij`.
    pub fn elementary(n: usize, i: usize, j: usize, a: Fe) -> Matrix {
        let mut m = Matrix::identity(n);
        m.set(i, j, a);
        m
    }

    pub fn diagonal(d: &[Fe]) -> Matrix {
        let mut m = Matrix::identity(d.len());
        for (i, &x) in d.iter().enumerate() {
            m.set(i, i, x);
        }
        m
    }

    pub fn mul(&self, other: &Matrix, f: &Field) -> Matrix {
        let n = self.n;
        let mut e = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    e[i * n + j] = f.add(e[i * n + j], f.mul(a, other.get(k, j)));
                }
            }
        }
        Matrix { n, e }
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let mut m = Matrix::identity(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, self.get(j, i));
            }
        }
        m
    }

    /// Inverse by Gauss-Jordan; `None` if singular.
    pub fn inverse(&self, f: &Field) -> Option<Matrix> {
        let n = self.n;
        let mut a = self.clone();
        let mut b = Matrix::identity(n);
        for c in 0..n {
            let piv = (c..n).find(|&r| a.get(r, c) != 0)?;
            if piv != c {
                for j in 0..n {
                    a.e.swap(piv * n + j, c * n + j);
                    b.e.swap(piv * n + j, c * n + j);
                }
            }
            let inv = f.inv(a.get(c, c))?;
            for j in 0..n {
                a.set(c, j, f.mul(a.get(c, j), inv));
                b.set(c, j, f.mul(b.get(c, j), inv));
            }
            for r in 0..n {
                let k = a.get(r, c);
                if r == c || k == 0 {
                    continue;
                }
                for j in 0..n {
                    a.set(r, j, f.sub(a.get(r, j), f.mul(k, a.get(c, j))));
                    b.set(r, j, f.sub(b.get(r, j), f.mul(k, b.get(c, j))));
                }
            }
        }
        Some(b)
    }

    pub fn det(&self, f: &Field) -> Fe {
        let n = self.n;
        let mut a = self.clone();
        let mut d: Fe = 1;
        for c in 0..n {
            let Some(piv) = (c..n).find(|&r| a.get(r, c) != 0) else {
                return 0;
            };
            if piv != c {
                for j in 0..n {
                    a.e.swap(piv * n + j, c * n + j);
                }
                d = f.neg(d);
            }
            let p = a.get(c, c);
            d = f.mul(d, p);
            let inv = f.inv(p).expect("nonzero pivot");
            for r in c + 1..n {
                let k = f.mul(a.get(r, c), inv);
                if k == 0 {
                    continue;
                }
                for j in c..n {
                    a.set(r, j, f.sub(a.get(r, j), f.mul(k, a.get(c, j))));
                }
            }
        }
        d
    }

    pub fn apply(&self, v: &[Fe], f: &Field) -> Vec<Fe> {
        let n = self.n;
        let mut out = vec![0; n];
        for (i, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, o) in out.iter_mut().enumerate() {
                *o = f.add(*o, f.mul(x, self.get(i, j)));
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.n)
    }
}

/// Maps that act on vectors: matrices, optionally followed by `x -> x^(p^k)`
/// on coordinates.
#[derive(Clone, Debug)]
pub struct SemiLinear {
    pub m: Matrix,
    pub frob: u32,
}

impl SemiLinear {
    pub fn linear(m: Matrix) -> Self {
        SemiLinear { m, frob: 0 }
    }

    pub fn frobenius(n: usize) -> Self {
        SemiLinear { m: Matrix::identity(n), frob: 1 }
    }

    pub fn apply(&self, v: &[Fe], f: &Field) -> Vec<Fe> {
        let mut w = self.m.apply(v, f);
        for _ in 0..self.frob {
            for x in w.iter_mut() {
                *x = f.frobenius(*x);
            }
        }
        w
    }
}

fn encode(v: &[Fe], q: u32) -> usize {
    v.iter().fold(0usize, |acc, &x| acc * q as usize + x as usize)
}

fn decode(mut c: usize, n: usize, q: u32) -> Vec<Fe> {
    let mut v = vec![0; n];
    for x in v.iter_mut().rev() {
        *x = (c % q as usize) as Fe;
        c /= q as usize;
    }
    v
}

/// The 1-spaces of GF(q)^n, each stored as its vector with first nonzero
/// coordinate 1, listed in increasing order of the base-q encoding.
#[derive(Clone, Debug)]
pub struct ProjectiveSpace {
    pub field: Field,
    pub n: usize,
    pub points: Vec<Vec<Fe>>,
    index: HashMap<usize, u32>,
}

impl ProjectiveSpace {
    pub fn new(field: Field, n: usize) -> Result<Self> {
        let q = field.order();
        let total = (q as u128).pow(n as u32);
        if total > 1 << 24 {
            return Err(Error::CapExceeded { what: "vector space", size: total, cap: 1 << 24 });
        }
        let mut points = Vec::new();
        let mut index = HashMap::new();
        for c in 1..total as usize {
            let v = decode(c, n, q);
            if v.iter().find(|&&x| x != 0) == Some(&1) {
                index.insert(c, points.len() as u32);
                points.push(v);
            }
        }
        Ok(ProjectiveSpace { field, n, points, index })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn normalize(&self, v: &[Fe]) -> Vec<Fe> {
        let f = &self.field;
        let lead = *v.iter().find(|&&x| x != 0).expect("nonzero vector");
        let inv = f.inv(lead).expect("nonzero");
        v.iter().map(|&x| f.mul(x, inv)).collect()
    }

    pub fn index_of(&self, v: &[Fe]) -> u32 {
        let w = self.normalize(v);
        self.index[&encode(&w, self.field.order())]
    }

    /// Action on points.
    pub fn point_perm(&self, g: &SemiLinear) -> Perm {
        let img: Vec<u32> = self.points.iter().map(|v| self.index_of(&g.apply(v, &self.field))).collect();
        Perm::from_images_unchecked(img)
    }

    /// Action on points followed by hyperplanes (hyperplane `i` has normal
    /// vector `points[i]`), on `2 * len()` points.
    pub fn point_hyperplane_perm(&self, g: &SemiLinear) -> Perm {
        let f = &self.field;
        let np = self.len() as u32;
        let mut img: Vec<u32> = self.points.iter().map(|v| self.index_of(&g.apply(v, f))).collect();
        // a normal w goes to w M^{-T}; the Frobenius part acts coordinatewise
        let mit = SemiLinear { m: g.m.inverse(f).expect("invertible").transpose(), frob: g.frob };
        img.extend(self.points.iter().map(|w| np + self.index_of(&mit.apply(w, f))));
        Perm::from_images_unchecked(img)
    }

    /// The polarity swapping point `i` and hyperplane `i`.
    pub fn polarity(&self) -> Perm {
        let np = self.len() as u32;
        let img: Vec<u32> = (0..np).map(|i| i + np).chain(0..np).collect();
        Perm::from_images_unchecked(img)
    }
}

/// All vectors of GF(q)^n, coordinate 0 most significant.
pub fn affine_perm(field: &Field, n: usize, g: &SemiLinear, shift: &[Fe]) -> Perm {
    let q = field.order();
    let total = (q as usize).pow(n as u32);
    let img: Vec<u32> = (0..total)
        .map(|c| {
            let v = decode(c, n, q);
            let w: Vec<Fe> = g.apply(&v, field).iter().zip(shift).map(|(&a, &b)| field.add(a, b)).collect();
            encode(&w, q) as u32
        })
        .collect();
    Perm::from_images_unchecked(img)
}

/// Generators of SL(n,q): elementary matrices next to the diagonal with
/// entries running over an additive basis.
pub fn sl_generators(field: &Field, n: usize) -> Vec<Matrix> {
    let mut out = Vec::new();
    for a in field.additive_basis() {
        for i in 0..n - 1 {
            out.push(Matrix::elementary(n, i, i + 1, a));
            out.push(Matrix::elementary(n, i + 1, i, a));
        }
    }
    out
}

/// `diag(w, 1, .., 1)` for the primitive element `w`; with SL it generates GL.
pub fn gl_extra(field: &Field, n: usize) -> Matrix {
    let mut d = vec![1; n];
    d[0] = field.generator();
    Matrix::diagonal(&d)
}

pub fn gl_order(n: u32, q: u128) -> u128 {
    (0..n).map(|i| q.pow(n) - q.pow(i)).product()
}

pub fn psl_order(n: u32, q: u64) -> u128 {
    gl_order(n, q as u128) / (q as u128 - 1) / gcd(n as u64, q - 1) as u128
}

pub fn pgl_order(n: u32, q: u64) -> u128 {
    gl_order(n, q as u128) / (q as u128 - 1)
}

pub fn psp_order(two_m: u32, q: u64) -> u128 {
    let m = two_m / 2;
    let q = q as u128;
    let mut o = q.pow(m * m);
    for i in 1..=m {
        o *= q.pow(2 * i) - 1;
    }
    o / gcd(2, q as u64 - 1) as u128
}

/// Gram matrix of the alternating form pairing `e_i` with `f_i = e_{m+i}`.
pub fn symplectic_form(field: &Field, two_m: usize) -> Matrix {
    let m = two_m / 2;
    let mut j = Matrix { n: two_m, e: vec![0; two_m * two_m] };
    for i in 0..m {
        j.set(i, m + i, 1);
        j.set(m + i, i, field.neg(1));
    }
    j
}

fn bilinear(field: &Field, gram: &Matrix, x: &[Fe], y: &[Fe]) -> Fe {
    // x J y^T
    let mut s = 0;
    for i in 0..x.len() {
        let mut t = 0;
        for j in 0..y.len() {
            t = field.add(t, field.mul(gram.get(i, j), y[j]));
        }
        s = field.add(s, field.mul(x[i], t));
    }
    s
}

/// The symplectic transvection `x -> x + a B(x,v) v` as a matrix.
pub fn symplectic_transvection(field: &Field, gram: &Matrix, v: &[Fe], a: Fe) -> Matrix {
    let n = v.len();
    let mut m = Matrix::identity(n);
    for i in 0..n {
        let mut ei = vec![0; n];
        ei[i] = 1;
        let c = field.mul(a, bilinear(field, gram, &ei, v));
        for j in 0..n {
            m.set(i, j, field.add(m.get(i, j), field.mul(c, v[j])));
        }
    }
    m
}

/// Transvections generating Sp(2m,q).
pub fn sp_generators(field: &Field, two_m: usize) -> Vec<Matrix> {
    let gram = symplectic_form(field, two_m);
    let mut vs: Vec<Vec<Fe>> = Vec::new();
    for i in 0..two_m {
        let mut v = vec![0; two_m];
        v[i] = 1;
        vs.push(v);
        for j in i + 1..two_m {
            let mut w = vec![0; two_m];
            w[i] = 1;
            w[j] = 1;
            vs.push(w);
        }
    }
    let mut out = Vec::new();
    for a in field.additive_basis() {
        for v in &vs {
            out.push(symplectic_transvection(field, &gram, v, a));
        }
    }
    out
}

pub fn preserves_form(field: &Field, gram: &Matrix, m: &Matrix) -> bool {
    m.mul(gram, field).mul(&m.transpose(), field) == *gram
}
