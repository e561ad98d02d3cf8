use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::Mat2;
use crate::error::{Error, Result};
use crate::linalg::ModulusContext;

/// Checks `[[1+ap, 1+bp], [cp, 1+dp]]^(p^(m-1)) = [[1, p^(m-1)], [0, 1]]`
/// over `ctx = Z/p^m`.
pub fn power_identity_check(a: u64, b: u64, c: u64, d: u64, ctx: ModulusContext) -> Result<bool> {
    let m = ctx.n();
    if m < 2 {
        return Err(Error::precondition("the power identity needs m >= 2"));
    }
    let p = ctx.p();
    let lin = |x: u64| ctx.mul(ctx.reduce(x), p);
    let base = Mat2([
        ctx.add(1, lin(a)),
        ctx.add(1, lin(b)),
        lin(c),
        ctx.add(1, lin(d)),
    ]);
    let step = p.pow(m - 1);
    let expected = Mat2([1, step, 0, 1]);
    Ok(base.pow(step, ctx) == expected)
}

/// Result of checking the power identity on random parameter tuples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerIdentitySweep {
    pub p: u64,
    pub m: u32,
    pub trials: usize,
    pub failures: Vec<[u64; 4]>,
}

impl PowerIdentitySweep {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs `trials` random tuples `(a, b, c, d)` over Z/p^m from a seeded stream.
pub fn power_identity_sweep(p: u64, m: u32, trials: usize, seed: u64) -> Result<PowerIdentitySweep> {
    let ctx = ModulusContext::new(p, m)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (p << 8) ^ u64::from(m));
    let mut failures = Vec::new();
    for _ in 0..trials {
        let t: [u64; 4] = std::array::from_fn(|_| rng.gen_range(0..ctx.modulus()));
        if !power_identity_check(t[0], t[1], t[2], t[3], ctx)? {
            failures.push(t);
        }
    }
    Ok(PowerIdentitySweep {
        p,
        m,
        trials,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unipotent_case() {
        let ctx = ModulusContext::new(5, 2).unwrap();
        assert!(power_identity_check(0, 0, 0, 0, ctx).unwrap());
    }

    #[test]
    fn worked_tuple_mod_25() {
        let ctx = ModulusContext::new(5, 2).unwrap();
        // [[6, 11], [15, 21]]^5 computed by hand-unrolled repeated products.
        let m = Mat2([6, 11, 15, 21]);
        let mut acc = Mat2::identity();
        for _ in 0..5 {
            acc = acc.mul(m, ctx);
        }
        assert_eq!(acc, Mat2([1, 5, 0, 1]));
        assert!(power_identity_check(1, 2, 3, 4, ctx).unwrap());
    }

    #[test]
    fn level_one_is_rejected() {
        let ctx = ModulusContext::new(5, 1).unwrap();
        assert!(power_identity_check(0, 0, 0, 0, ctx).is_err());
    }
}
