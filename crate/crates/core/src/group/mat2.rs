use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{ModMatrix, ModVector, ModulusContext};

/// A 2x2 matrix over Z/p^n stored as `[a, b, c, d]` for `[[a, b], [c, d]]`.
///
/// Entries are always reduced; the modulus travels separately so the type
/// stays `Copy` and hashes by its entries alone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2(pub [u64; 4]);

impl Mat2 {
    pub fn identity() -> Mat2 {
        Mat2([1, 0, 0, 1])
    }

    pub fn from_i64(ctx: ModulusContext, rows: [[i64; 2]; 2]) -> Mat2 {
        Mat2([
            ctx.reduce_i64(rows[0][0]),
            ctx.reduce_i64(rows[0][1]),
            ctx.reduce_i64(rows[1][0]),
            ctx.reduce_i64(rows[1][1]),
        ])
    }

    pub fn diag(ctx: ModulusContext, a: i64, d: i64) -> Mat2 {
        Mat2::from_i64(ctx, [[a, 0], [0, d]])
    }

    pub fn from_mod_matrix(m: &ModMatrix) -> Result<Mat2> {
        if m.rows() != 2 || m.cols() != 2 {
            return Err(Error::contract(format!(
                "expected a 2x2 matrix, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let e = m.entries();
        Ok(Mat2([e[0], e[1], e[2], e[3]]))
    }

    pub fn to_mod_matrix(self, ctx: ModulusContext) -> ModMatrix {
        ModMatrix::new(ctx, 2, 2, self.0.to_vec()).expect("2x2 shape")
    }

    #[inline]
    pub fn entry(self, r: usize, c: usize) -> u64 {
        self.0[2 * r + c]
    }

    pub fn rows(self) -> [[u64; 2]; 2] {
        [[self.0[0], self.0[1]], [self.0[2], self.0[3]]]
    }

    #[inline]
    pub fn mul(self, other: Mat2, ctx: ModulusContext) -> Mat2 {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = other.0;
        let dot = |x: u64, y: u64, z: u64, w: u64| ctx.add(ctx.mul(x, y), ctx.mul(z, w));
        Mat2([dot(a, e, b, g), dot(a, f, b, h), dot(c, e, d, g), dot(c, f, d, h)])
    }

    pub fn pow(self, mut exp: u64, ctx: ModulusContext) -> Mat2 {
        let mut acc = Mat2::identity().reduce(ctx);
        let mut base = self;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(base, ctx);
            }
            base = base.mul(base, ctx);
            exp >>= 1;
        }
        acc
    }

    #[inline]
    pub fn apply(self, v: [u64; 2], ctx: ModulusContext) -> [u64; 2] {
        let [a, b, c, d] = self.0;
        [
            ctx.add(ctx.mul(a, v[0]), ctx.mul(b, v[1])),
            ctx.add(ctx.mul(c, v[0]), ctx.mul(d, v[1])),
        ]
    }

    pub fn apply_vec(self, v: &ModVector) -> ModVector {
        let ctx = v.ctx();
        let out = self.apply([v[0], v[1]], ctx);
        ModVector::new(ctx, out.to_vec())
    }

    pub fn det(self, ctx: ModulusContext) -> u64 {
        let [a, b, c, d] = self.0;
        ctx.sub(ctx.mul(a, d), ctx.mul(b, c))
    }

    pub fn trace(self, ctx: ModulusContext) -> u64 {
        ctx.add(self.0[0], self.0[3])
    }

    pub fn inverse(self, ctx: ModulusContext) -> Option<Mat2> {
        let det_inv = ctx.inv(self.det(ctx))?;
        let [a, b, c, d] = self.0;
        let s = |x: u64| ctx.mul(x, det_inv);
        Some(Mat2([s(d), s(ctx.neg(b)), s(ctx.neg(c)), s(a)]))
    }

    pub fn sub(self, other: Mat2, ctx: ModulusContext) -> Mat2 {
        let mut out = [0; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = ctx.sub(self.0[i], other.0[i]);
        }
        Mat2(out)
    }

    pub fn minus_identity(self, ctx: ModulusContext) -> Mat2 {
        self.sub(Mat2::identity().reduce(ctx), ctx)
    }

    /// Reduction into a coarser ring Z/p^k (k ≤ n).
    pub fn reduce(self, ctx: ModulusContext) -> Mat2 {
        Mat2(self.0.map(|x| ctx.reduce(x)))
    }

    pub fn is_identity(self) -> bool {
        self.0 == [1, 0, 0, 1]
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}
