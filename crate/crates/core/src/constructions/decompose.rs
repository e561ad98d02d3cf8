use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{ActingGroup, FiniteMatrixGroup, Mat2};

/// `τ = diagonal · lower · (σ^p)^λ` for an element τ of the reduction kernel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KernelDecomposition {
    pub diagonal: Mat2,
    pub lower: Mat2,
    pub lambda: u64,
}

impl KernelDecomposition {
    pub fn to_json(&self) -> Value {
        json!({
            "diagonal": self.diagonal.rows(),
            "lower": self.lower.rows(),
            "lambda": self.lambda,
        })
    }
}

/// Clears the top-right entry of `τ` one p-adic digit at a time by right
/// multiplication with powers of `σ^p`, then splits the lower-triangular
/// remainder into its diagonal and a lower unitriangular factor.
///
/// `sigma` must be an element of `g` whose top-right entry is a unit and whose
/// p-th power is ≡ Id mod p.
pub fn decompose_kernel_element(g: &FiniteMatrixGroup, sigma: Mat2, tau: usize) -> Result<KernelDecomposition> {
    let ctx = g.ctx();
    let (p, n) = (ctx.p(), ctx.n());
    let kernel = g.reduction_kernel().members;
    if kernel.binary_search(&tau).is_err() {
        return Err(Error::precondition(format!(
            "{} is not in the reduction kernel",
            g.matrix(tau)
        )));
    }
    if !g.contains(&sigma) {
        return Err(Error::precondition("σ is not an element of the group"));
    }
    let fp = ctx.with_exponent(1)?;
    let u_inv = fp
        .inv(fp.reduce(sigma.entry(0, 1)))
        .ok_or_else(|| Error::precondition("σ has a non-unit top-right entry"))?;
    let sp = sigma.pow(p, ctx);
    let sp_order = g.element_order(g.index_of(&sp).expect("σ^p lies in the group"));

    let t = g.matrix(tau);
    let mut lambda = 0u64;
    for i in 1..n {
        let current = t.mul(sp.pow(lambda, ctx), ctx);
        let top = current.entry(0, 1);
        if ctx.valuation(top) < i {
            return Err(Error::Consistency(format!(
                "top-right entry {top} of τσ^(pλ) is not divisible by p^{i}"
            )));
        }
        let digit = fp.mul(fp.reduce(ctx.div_p_pow(top, i)), u_inv);
        let step = ctx.mul(ctx.p_pow(i - 1), digit);
        lambda = ctx.sub(ctx.reduce(lambda), step);
    }
    let lower_triangular = t.mul(sp.pow(lambda, ctx), ctx);
    if lower_triangular.entry(0, 1) != 0 {
        return Err(Error::Consistency("top-right entry did not clear".into()));
    }
    let lambda = (sp_order - lambda % sp_order) % sp_order;
    let [a, _, _, d] = lower_triangular.0;
    let diagonal = Mat2([a, 0, 0, d]);
    let lower = diagonal
        .inverse(ctx)
        .expect("diagonal of an invertible triangular matrix")
        .mul(lower_triangular, ctx);

    let recomposed = diagonal.mul(lower, ctx).mul(sp.pow(lambda, ctx), ctx);
    if recomposed != t {
        return Err(Error::Consistency("factors do not multiply back to τ".into()));
    }
    for (name, m) in [("diagonal", diagonal), ("lower", lower)] {
        match g.index_of(&m) {
            Some(i) if kernel.binary_search(&i).is_ok() => {}
            _ => {
                return Err(Error::Consistency(format!(
                    "{name} factor {m} is not in the reduction kernel"
                )))
            }
        }
    }
    Ok(KernelDecomposition {
        diagonal,
        lower,
        lambda,
    })
}
