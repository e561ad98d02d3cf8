//! Arithmetic and canonical linear algebra over the local ring Z/p^n.
//!
//! Every element of Z/p^n factors as `u * p^k` with `u` a unit, and the
//! routines here work with that split directly instead of with generic
//! fraction-free elimination, so zero divisors never cancel by accident.

mod howell;
mod solve;

pub use howell::{howell_form, SubmoduleBasis};
pub use solve::{
    dual_constraints, image_basis, kernel_basis, quotient_invariants, quotient_structure,
    solve_linear, QuotientStructure, Solution,
};

pub(crate) use howell::RowSpanBuilder;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coefficient ring Z/p^n, with `p` an odd prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModulusContext {
    p: u64,
    n: u32,
    modulus: u64,
}

impl ModulusContext {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if p < 3 {
            return Err(Error::input(format!("p = {p} must be an odd prime")));
        }
        if !is_prime(p) {
            return Err(Error::input(format!("p = {p} is not prime")));
        }
        if n == 0 {
            return Err(Error::input("exponent n must be at least 1"));
        }
        let mut modulus: u64 = 1;
        for _ in 0..n {
            modulus = modulus
                .checked_mul(p)
                .filter(|m| *m <= 1 << 63)
                .ok_or_else(|| Error::input(format!("{p}^{n} does not fit in 63 bits")))?;
        }
        Ok(ModulusContext { p, n, modulus })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// The same prime with a different exponent.
    pub fn with_exponent(&self, n: u32) -> Result<Self> {
        ModulusContext::new(self.p, n)
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        x % self.modulus
    }

    #[inline]
    pub fn reduce_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.modulus as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a as u128 + b as u128;
        (s % self.modulus as u128) as u64
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.modulus - (b - a)
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.modulus as u128) as u64
    }

    pub fn pow(&self, base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.modulus;
        let mut b = self.reduce(base);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }

    /// `p^k`, reduced (so `p^n` is 0).
    pub fn p_pow(&self, k: u32) -> u64 {
        if k >= self.n {
            0
        } else {
            self.p.pow(k)
        }
    }

    /// p-adic valuation of a residue; `n` for zero.
    pub fn valuation(&self, x: u64) -> u32 {
        let mut x = self.reduce(x);
        if x == 0 {
            return self.n;
        }
        let mut k = 0;
        while x % self.p == 0 {
            x /= self.p;
            k += 1;
        }
        k
    }

    /// Splits a nonzero residue as `(u, k)` with `x = u * p^k` and `u` a unit.
    pub fn split(&self, x: u64) -> (u64, u32) {
        let k = self.valuation(x);
        if k == self.n {
            return (0, k);
        }
        (self.reduce(x) / self.p.pow(k), k)
    }

    pub fn is_unit(&self, x: u64) -> bool {
        x % self.p != 0
    }

    pub fn inv(&self, x: u64) -> Option<u64> {
        if !self.is_unit(x) {
            return None;
        }
        let (mut r0, mut r1) = (self.modulus as i128, self.reduce(x) as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(t0.rem_euclid(self.modulus as i128) as u64)
    }

    /// Exact division `x / p^k` of a residue with valuation at least `k`.
    #[inline]
    pub(crate) fn div_p_pow(&self, x: u64, k: u32) -> u64 {
        debug_assert!(self.valuation(x) >= k);
        self.reduce(x) / self.p.pow(k)
    }
}

impl fmt::Display for ModulusContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}^{}", self.p, self.n)
    }
}

pub fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= x {
        if x % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// A vector over Z/p^n with reduced coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModVector {
    ctx: ModulusContext,
    coords: Vec<u64>,
}

impl ModVector {
    pub fn new(ctx: ModulusContext, coords: Vec<u64>) -> Self {
        let coords = coords.into_iter().map(|c| ctx.reduce(c)).collect();
        ModVector { ctx, coords }
    }

    pub fn from_i64(ctx: ModulusContext, coords: &[i64]) -> Self {
        ModVector {
            ctx,
            coords: coords.iter().map(|&c| ctx.reduce_i64(c)).collect(),
        }
    }

    pub fn zero(ctx: ModulusContext, dim: usize) -> Self {
        ModVector {
            ctx,
            coords: vec![0; dim],
        }
    }

    pub fn ctx(&self) -> ModulusContext {
        self.ctx
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<u64> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &ModVector) -> ModVector {
        assert_eq!(self.dim(), other.dim(), "vector dimensions differ");
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| self.ctx.add(a, b))
            .collect();
        ModVector {
            ctx: self.ctx,
            coords,
        }
    }

    pub fn scale(&self, s: u64) -> ModVector {
        ModVector {
            ctx: self.ctx,
            coords: self.coords.iter().map(|&a| self.ctx.mul(a, s)).collect(),
        }
    }
}

impl std::ops::Index<usize> for ModVector {
    type Output = u64;
    fn index(&self, i: usize) -> &u64 {
        &self.coords[i]
    }
}

/// A dense row-major matrix over Z/p^n.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModMatrix {
    ctx: ModulusContext,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl ModMatrix {
    pub fn new(ctx: ModulusContext, rows: usize, cols: usize, entries: Vec<u64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::contract(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        let entries = entries.into_iter().map(|e| ctx.reduce(e)).collect();
        Ok(ModMatrix {
            ctx,
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from signed rows; every row must have the same length.
    pub fn from_rows_i64(ctx: ModulusContext, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::contract("ragged matrix rows"));
        }
        let entries = rows.iter().flatten().map(|&e| ctx.reduce_i64(e)).collect();
        Ok(ModMatrix {
            ctx,
            rows: rows.len(),
            cols,
            entries,
        })
    }

    pub(crate) fn from_row_vecs(ctx: ModulusContext, cols: usize, rows: &[Vec<u64>]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            debug_assert_eq!(r.len(), cols);
            entries.extend(r.iter().map(|&e| ctx.reduce(e)));
        }
        ModMatrix {
            ctx,
            rows: rows.len(),
            cols,
            entries,
        }
    }

    pub fn zero(ctx: ModulusContext, rows: usize, cols: usize) -> Self {
        ModMatrix {
            ctx,
            rows,
            cols,
            entries: vec![0; rows * cols],
        }
    }

    pub fn identity(ctx: ModulusContext, dim: usize) -> Self {
        let mut m = ModMatrix::zero(ctx, dim, dim);
        for i in 0..dim {
            m.entries[i * dim + i] = 1 % ctx.modulus();
        }
        m
    }

    pub fn diagonal(ctx: ModulusContext, diag: &[i64]) -> Self {
        let mut m = ModMatrix::zero(ctx, diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * diag.len() + i] = ctx.reduce_i64(d);
        }
        m
    }

    pub fn ctx(&self) -> ModulusContext {
        self.ctx
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> ModMatrix {
        let mut entries = vec![0; self.entries.len()];
        for r in 0..self.rows {
            for c in 0..self.cols {
                entries[c * self.rows + r] = self.get(r, c);
            }
        }
        ModMatrix {
            ctx: self.ctx,
            rows: self.cols,
            cols: self.rows,
            entries,
        }
    }

    pub fn mul(&self, other: &ModMatrix) -> Result<ModMatrix> {
        if self.cols != other.rows || self.ctx != other.ctx {
            return Err(Error::contract(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let ctx = self.ctx;
        let mut out = ModMatrix::zero(ctx, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.entries[idx] = ctx.add(out.entries[idx], ctx.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &ModVector) -> Result<ModVector> {
        if self.cols != v.dim() || self.ctx != v.ctx() {
            return Err(Error::contract(format!(
                "cannot apply {}x{} matrix to vector of length {}",
                self.rows,
                self.cols,
                v.dim()
            )));
        }
        let ctx = self.ctx;
        let coords = (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v.coords())
                    .fold(0, |acc, (&a, &b)| ctx.add(acc, ctx.mul(a, b)))
            })
            .collect();
        Ok(ModVector { ctx, coords })
    }

    pub fn sub(&self, other: &ModMatrix) -> Result<ModMatrix> {
        if self.rows != other.rows || self.cols != other.cols || self.ctx != other.ctx {
            return Err(Error::contract("matrix shapes differ"));
        }
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.ctx.sub(a, b))
            .collect();
        Ok(ModMatrix {
            ctx: self.ctx,
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn scale(&self, s: u64) -> ModMatrix {
        ModMatrix {
            ctx: self.ctx,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&e| self.ctx.mul(e, s)).collect(),
        }
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &ModMatrix) -> Result<ModMatrix> {
        if self.cols != other.cols || self.ctx != other.ctx {
            return Err(Error::contract("cannot stack matrices of different widths"));
        }
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        Ok(ModMatrix {
            ctx: self.ctx,
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            p: self.ctx.p(),
            n: self.ctx.n(),
            rows: self.row_vecs(),
        }
    }

    pub fn from_json(json: &MatrixJson) -> Result<Self> {
        let ctx = ModulusContext::new(json.p, json.n)?;
        let cols = json.rows.first().map_or(0, Vec::len);
        if json.rows.iter().any(|r| r.len() != cols) {
            return Err(Error::input("ragged matrix rows"));
        }
        if json.rows.iter().flatten().any(|&e| e >= ctx.modulus()) {
            return Err(Error::input(format!(
                "matrix entries must be residues below {}",
                ctx.modulus()
            )));
        }
        Ok(ModMatrix::from_row_vecs(ctx, cols, &json.rows))
    }
}

/// Wire form of a matrix: `{"p":…, "n":…, "rows":[[…],…]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub p: u64,
    pub n: u32,
    pub rows: Vec<Vec<u64>>,
}
