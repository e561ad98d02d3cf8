use super::{ModMatrix, ModVector, ModulusContext};
use crate::error::{Error, Result};

/// Canonical basis of a submodule of (Z/p^n)^m.
///
/// Rows are kept in Howell normal form: pivot columns strictly increase, each
/// pivot is exactly `p^k`, entries above a pivot lie in `[0, p^k)`, and any
/// element of the span whose first nonzero column is past row `i`'s pivot is
/// spanned by the rows after `i`. Two submodules are equal iff their bases are
/// equal entry-wise.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubmoduleBasis {
    ctx: ModulusContext,
    ambient_dim: usize,
    rows: Vec<ModVector>,
}

impl SubmoduleBasis {
    /// Span of arbitrary generating rows.
    pub fn from_rows(ctx: ModulusContext, ambient_dim: usize, rows: Vec<Vec<u64>>) -> Self {
        let rows = howell_rows(ctx, ambient_dim, rows);
        Self::from_howell_rows(ctx, ambient_dim, rows)
    }

    pub(crate) fn from_howell_rows(
        ctx: ModulusContext,
        ambient_dim: usize,
        rows: Vec<Vec<u64>>,
    ) -> Self {
        SubmoduleBasis {
            ctx,
            ambient_dim,
            rows: rows.into_iter().map(|r| ModVector::new(ctx, r)).collect(),
        }
    }

    pub fn zero(ctx: ModulusContext, ambient_dim: usize) -> Self {
        SubmoduleBasis {
            ctx,
            ambient_dim,
            rows: Vec::new(),
        }
    }

    pub fn full(ctx: ModulusContext, ambient_dim: usize) -> Self {
        let rows = (0..ambient_dim)
            .map(|i| {
                let mut r = vec![0; ambient_dim];
                r[i] = 1;
                r
            })
            .collect();
        Self::from_howell_rows(ctx, ambient_dim, rows)
    }

    pub fn ctx(&self) -> ModulusContext {
        self.ctx
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rows(&self) -> &[ModVector] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn as_matrix(&self) -> ModMatrix {
        let rows: Vec<Vec<u64>> = self.rows.iter().map(|r| r.coords().to_vec()).collect();
        ModMatrix::from_row_vecs(self.ctx, self.ambient_dim, &rows)
    }

    fn pivot(&self, i: usize) -> (usize, u32) {
        let row = self.rows[i].coords();
        let c = row.iter().position(|&x| x != 0).expect("Howell rows are nonzero");
        (c, self.ctx.valuation(row[c]))
    }

    /// `log_p` of the number of elements of the span.
    pub fn log_order(&self) -> u32 {
        (0..self.rows.len())
            .map(|i| self.ctx.n() - self.pivot(i).1)
            .sum()
    }

    /// Number of elements of the span, if it fits in a `u128`.
    pub fn order(&self) -> Option<u128> {
        (self.ctx.p() as u128).checked_pow(self.log_order())
    }

    /// Reduces `v` against the basis. Returns the coefficients used when `v`
    /// lies in the span, `None` otherwise.
    pub fn express(&self, v: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(v.len(), self.ambient_dim, "ambient dimension mismatch");
        let ctx = self.ctx;
        let mut rest: Vec<u64> = v.iter().map(|&x| ctx.reduce(x)).collect();
        let mut coeffs = vec![0; self.rows.len()];
        for (i, row) in self.rows.iter().enumerate() {
            let (c, k) = self.pivot(i);
            if rest[..c].iter().any(|&x| x != 0) {
                return None;
            }
            let e = rest[c];
            if e == 0 {
                continue;
            }
            if ctx.valuation(e) < k {
                return None;
            }
            let q = ctx.div_p_pow(e, k);
            coeffs[i] = q;
            axpy(ctx, &mut rest, ctx.neg(q), row.coords());
        }
        rest.iter().all(|&x| x == 0).then_some(coeffs)
    }

    pub fn contains(&self, v: &ModVector) -> bool {
        v.dim() == self.ambient_dim && self.express(v.coords()).is_some()
    }

    pub fn contains_all(&self, other: &SubmoduleBasis) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Span of the union.
    pub fn join(&self, other: &SubmoduleBasis) -> Result<SubmoduleBasis> {
        if self.ctx != other.ctx || self.ambient_dim != other.ambient_dim {
            return Err(Error::contract("submodules live in different ambient modules"));
        }
        let rows = self
            .rows
            .iter()
            .chain(&other.rows)
            .map(|r| r.coords().to_vec())
            .collect();
        Ok(SubmoduleBasis::from_rows(self.ctx, self.ambient_dim, rows))
    }
}

/// Howell basis of the row span of `m`.
pub fn howell_form(m: &ModMatrix) -> SubmoduleBasis {
    SubmoduleBasis::from_rows(m.ctx(), m.cols(), m.row_vecs())
}

#[inline]
pub(crate) fn axpy(ctx: ModulusContext, target: &mut [u64], a: u64, x: &[u64]) {
    if a == 0 {
        return;
    }
    for (t, &xi) in target.iter_mut().zip(x) {
        if xi != 0 {
            *t = ctx.add(*t, ctx.mul(a, xi));
        }
    }
}

/// Howell form of the span of `rows` (each of length `width`).
pub(crate) fn howell_rows(ctx: ModulusContext, width: usize, rows: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let mut pool: Vec<Vec<u64>> = rows
        .into_iter()
        .map(|r| {
            debug_assert_eq!(r.len(), width);
            r.into_iter().map(|x| ctx.reduce(x)).collect::<Vec<_>>()
        })
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect();
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new();

    for c in 0..width {
        let best = pool
            .iter()
            .enumerate()
            .filter(|(_, r)| r[c] != 0)
            .min_by_key(|(i, r)| (ctx.valuation(r[c]), *i))
            .map(|(i, _)| i);
        let Some(i) = best else { continue };
        let mut piv = pool.swap_remove(i);
        let (unit, k) = ctx.split(piv[c]);
        let unit_inv = ctx.inv(unit).expect("unit part is invertible");
        for x in piv.iter_mut() {
            *x = ctx.mul(*x, unit_inv);
        }
        for r in pool.iter_mut() {
            if r[c] != 0 {
                let q = ctx.div_p_pow(r[c], k);
                axpy(ctx, r, ctx.neg(q), &piv);
            }
        }
        if k > 0 {
            // p^(n-k) * piv vanishes at column c; keep it so later pivots
            // account for it.
            let annihilated: Vec<u64> = piv.iter().map(|&x| ctx.mul(x, ctx.p_pow(ctx.n() - k))).collect();
            pool.push(annihilated);
        }
        pool.retain(|r| r.iter().any(|&x| x != 0));
        basis.push((c, piv));
    }

    for i in 0..basis.len() {
        let (c, ref piv) = basis[i];
        let piv = piv.clone();
        let k = ctx.valuation(piv[c]);
        let pk = ctx.p_pow(k);
        for (_, row) in basis.iter_mut().take(i) {
            let e = row[c];
            if e >= pk && pk != 0 {
                let q = e / pk;
                axpy(ctx, row, ctx.neg(q), &piv);
            }
        }
    }
    basis.into_iter().map(|(_, r)| r).collect()
}

/// Accumulates a long stream of rows while keeping only a compact Howell
/// basis of their span in memory.
pub(crate) struct RowSpanBuilder {
    ctx: ModulusContext,
    width: usize,
    basis: Vec<Vec<u64>>,
    pending: Vec<Vec<u64>>,
}

impl RowSpanBuilder {
    const FLUSH_AT: usize = 512;

    pub(crate) fn new(ctx: ModulusContext, width: usize) -> Self {
        RowSpanBuilder {
            ctx,
            width,
            basis: Vec::new(),
            pending: Vec::new(),
        }
    }

    pub(crate) fn push(&mut self, row: Vec<u64>) {
        debug_assert_eq!(row.len(), self.width);
        if row.iter().all(|&x| x == 0) {
            return;
        }
        self.pending.push(row);
        if self.pending.len() >= Self::FLUSH_AT {
            self.flush();
        }
    }

    fn flush(&mut self) {
        if self.pending.is_empty() {
            return;
        }
        let mut rows = std::mem::take(&mut self.basis);
        rows.append(&mut self.pending);
        self.basis = howell_rows(self.ctx, self.width, rows);
    }

    pub(crate) fn finish(mut self) -> SubmoduleBasis {
        self.flush();
        SubmoduleBasis::from_howell_rows(self.ctx, self.width, self.basis)
    }
}
