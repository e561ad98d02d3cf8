use serde_json::{json, Value};

use crate::cohomology::equivariant_homs;
use crate::error::{Error, Result};
use crate::group::{ActingGroup, FiniteMatrixGroup, Mat2};
use crate::linalg::kernel_basis;

/// The four sufficient conditions for a nonzero H^1_loc(G, (Z/p^2)^2) when
/// the reduction kernel H has exponent p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonvanishingHypotheses {
    /// Some element fixes no nonzero vector of V.
    pub fixed_point_free: bool,
    pub fixed_point_free_witness: Option<Mat2>,
    /// H embeds G-equivariantly into V[p].
    pub kernel_embeds: bool,
    pub kernel_embeds_note: Option<String>,
    /// Every `h = Id + pN` in H other than Id has `det N` a unit mod p.
    pub kernel_invertible: bool,
    pub kernel_invertible_counterexample: Option<Mat2>,
    /// p does not divide |G/H|.
    pub coprime_quotient: bool,
    pub kernel_order: usize,
    pub quotient_order: usize,
}

impl NonvanishingHypotheses {
    pub fn all_hold(&self) -> bool {
        self.fixed_point_free && self.kernel_embeds && self.kernel_invertible && self.coprime_quotient
    }

    pub fn flags(&self) -> [bool; 4] {
        [
            self.fixed_point_free,
            self.kernel_embeds,
            self.kernel_invertible,
            self.coprime_quotient,
        ]
    }

    pub fn to_json(&self) -> Value {
        json!({
            "fixed_point_free": self.fixed_point_free,
            "fixed_point_free_witness": self.fixed_point_free_witness.map(|m| m.rows()),
            "kernel_embeds": self.kernel_embeds,
            "kernel_embeds_note": self.kernel_embeds_note,
            "kernel_invertible": self.kernel_invertible,
            "kernel_invertible_counterexample": self.kernel_invertible_counterexample.map(|m| m.rows()),
            "coprime_quotient": self.coprime_quotient,
            "kernel_order": self.kernel_order,
            "quotient_order": self.quotient_order,
        })
    }
}

/// `N` with `h = Id + pN`, entries taken mod p. Requires `h ≡ Id (mod p)`.
pub fn kernel_logarithm(h: Mat2, g: &FiniteMatrixGroup) -> Mat2 {
    let ctx = g.ctx();
    let fp = ctx.with_exponent(1).expect("p is already validated");
    let n = h.minus_identity(ctx);
    Mat2(n.0.map(|x| fp.reduce(ctx.div_p_pow(x, 1))))
}

/// Evaluates the four hypotheses on a group over Z/p^2.
pub fn check_nonvanishing_hypotheses(g: &FiniteMatrixGroup) -> Result<NonvanishingHypotheses> {
    let ctx = g.ctx();
    if ctx.n() != 2 {
        return Err(Error::precondition("the hypothesis checker works over Z/p^2"));
    }
    let p = ctx.p();
    let fp = ctx.with_exponent(1)?;

    let fixed_point_free_witness = g
        .elements()
        .iter()
        .find(|m| kernel_basis(&m.minus_identity(ctx).to_mod_matrix(ctx)).is_zero())
        .copied();

    let kernel = g.reduction_kernel().members;
    let kernel_order = kernel.len();
    let quotient_order = g.order() / kernel_order;

    let (kernel_embeds, kernel_embeds_note) = if kernel_order == 1 {
        (false, Some("the reduction kernel is trivial".to_string()))
    } else {
        match equivariant_homs(g, &kernel) {
            Ok(h) if h.injective_exists => (true, None),
            Ok(_) => (false, Some("no injective equivariant map to V[p]".to_string())),
            Err(e) => (false, Some(e.to_string())),
        }
    };

    let kernel_invertible_counterexample = kernel
        .iter()
        .filter(|&&h| h != 0)
        .map(|&h| g.matrix(h))
        .find(|&h| !fp.is_unit(kernel_logarithm(h, g).det(fp)));

    Ok(NonvanishingHypotheses {
        fixed_point_free: fixed_point_free_witness.is_some(),
        fixed_point_free_witness,
        kernel_embeds,
        kernel_embeds_note,
        kernel_invertible: kernel_invertible_counterexample.is_none(),
        kernel_invertible_counterexample,
        coprime_quotient: quotient_order as u64 % p != 0,
        kernel_order,
        quotient_order,
    })
}
