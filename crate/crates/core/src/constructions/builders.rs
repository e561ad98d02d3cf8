use crate::error::{Error, Result};
use crate::group::{
    eigen_data, fixed_submodule, stabilizes_line, FiniteMatrixGroup, Mat2, DEFAULT_GROUP_CAP,
};
use crate::linalg::ModulusContext;

pub(crate) fn level_two(p: u64) -> Result<ModulusContext> {
    if p < 5 {
        return Err(Error::Hypothesis(format!("p = {p}: the constructions need p >= 5")));
    }
    ModulusContext::new(p, 2)
}

/// The order-3 matrix `[[1,-3],[1,-2]]`.
pub fn s3_rotation(ctx: ModulusContext) -> Mat2 {
    Mat2::from_i64(ctx, [[1, -3], [1, -2]])
}

/// The pinned order-2 lift `[[1,-3],[0,-1]]`; it inverts the rotation by conjugation.
pub fn s3_reflection(ctx: ModulusContext) -> Mat2 {
    Mat2::from_i64(ctx, [[1, -3], [0, -1]])
}

/// `[[1 + p(a-2b), 3p(b-a)], [-pb, 1 - p(a-2b)]]`.
pub fn s3_kernel_element(ctx: ModulusContext, a: i64, b: i64) -> Mat2 {
    let p = ctx.p() as i64;
    Mat2::from_i64(
        ctx,
        [[1 + p * (a - 2 * b), 3 * p * (b - a)], [-p * b, 1 - p * (a - 2 * b)]],
    )
}

/// Recovers `(a, b) mod p` from a member of the two-parameter kernel family.
pub fn s3_kernel_parameters(ctx: ModulusContext, h: Mat2) -> Option<(u64, u64)> {
    let p = ctx.p();
    let h = h.reduce(ctx);
    (0..p)
        .flat_map(|a| (0..p).map(move |b| (a, b)))
        .find(|&(a, b)| s3_kernel_element(ctx, a as i64, b as i64) == h)
}

fn s3_quotient_generators(ctx: ModulusContext) -> Vec<Mat2> {
    vec![
        s3_rotation(ctx),
        s3_reflection(ctx),
        s3_kernel_element(ctx, 1, 0),
        s3_kernel_element(ctx, 0, 1),
    ]
}

/// The group generated by the order-3 rotation, its inverting reflection and
/// the two-parameter kernel family, over Z/p^2. Needs `p ≡ 2 (mod 3)`.
pub fn build_s3_quotient_group(p: u64) -> Result<FiniteMatrixGroup> {
    let ctx = level_two(p)?;
    if p % 3 != 2 {
        return Err(Error::Hypothesis(format!(
            "p = {p} is not congruent to 2 mod 3; the S3-quotient construction needs p ≡ 2 (mod 3)"
        )));
    }
    FiniteMatrixGroup::generate(ctx, &s3_quotient_generators(ctx), DEFAULT_GROUP_CAP)
}

/// The same generators for any `p >= 5`, without the residue condition. For
/// `p ≡ 1 (mod 3)` the result is the counterexample to the kernel hypothesis.
pub fn build_s3_quotient_group_unchecked(p: u64) -> Result<FiniteMatrixGroup> {
    let ctx = level_two(p)?;
    FiniteMatrixGroup::generate(ctx, &s3_quotient_generators(ctx), DEFAULT_GROUP_CAP)
}

/// Smallest primitive root modulo p.
pub fn smallest_primitive_root(p: u64) -> u64 {
    let fp = ModulusContext::new(p, 1).expect("prime");
    let mut factors = Vec::new();
    let mut m = p - 1;
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            factors.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&r| factors.iter().all(|&q| fp.pow(r, (p - 1) / q) != 1))
        .expect("every prime has a primitive root")
}

/// The lift to `(Z/p^n)^*` of order exactly `p - 1` of the smallest primitive
/// root: `r^(p^(n-1))`.
pub fn teichmuller_lift(ctx: ModulusContext) -> u64 {
    let r = smallest_primitive_root(ctx.p());
    ctx.pow(r, ctx.p().pow(ctx.n() - 1))
}

/// `diag(1+p, 1-p)`.
pub fn split_diagonal(ctx: ModulusContext) -> Mat2 {
    let p = ctx.p() as i64;
    Mat2::diag(ctx, 1 + p, 1 - p)
}

/// `[[1, p], [0, 1]]`.
pub fn upper_unipotent_p(ctx: ModulusContext) -> Mat2 {
    Mat2::from_i64(ctx, [[1, ctx.p() as i64], [0, 1]])
}

/// `<diag(λ,1), diag(1+p,1-p), [[1,p],[0,1]]>` over Z/p^2 with λ the
/// Teichmüller lift of the smallest primitive root.
pub fn build_cyclic_split_group(p: u64) -> Result<FiniteMatrixGroup> {
    let ctx = level_two(p)?;
    let lambda = teichmuller_lift(ctx);
    let g = Mat2([lambda, 0, 0, 1]);
    FiniteMatrixGroup::generate(
        ctx,
        &[g, split_diagonal(ctx), upper_unipotent_p(ctx)],
        DEFAULT_GROUP_CAP,
    )
}

/// `diag(1, -1)`.
pub fn borel_reflection(ctx: ModulusContext) -> Mat2 {
    Mat2::diag(ctx, 1, -1)
}

/// `[[1+p, 1], [2p, 1+p]]`.
pub fn borel_unipotent(ctx: ModulusContext) -> Mat2 {
    let p = ctx.p() as i64;
    Mat2::from_i64(ctx, [[1 + p, 1], [2 * p, 1 + p]])
}

/// `<diag(1,-1), [[1+p,1],[2p,1+p]], diag(1+p,1-p)>` over Z/p^2.
pub fn build_borel_shared_fixed_group(p: u64) -> Result<FiniteMatrixGroup> {
    let ctx = level_two(p)?;
    FiniteMatrixGroup::generate(
        ctx,
        &[borel_reflection(ctx), borel_unipotent(ctx), split_diagonal(ctx)],
        DEFAULT_GROUP_CAP,
    )
}

/// The index-2 subgroup `<[[1+p,1],[2p,1+p]], diag(1+p,1-p)>`.
pub fn build_borel_index_two_group(p: u64) -> Result<FiniteMatrixGroup> {
    let ctx = level_two(p)?;
    FiniteMatrixGroup::generate(
        ctx,
        &[borel_unipotent(ctx), split_diagonal(ctx)],
        DEFAULT_GROUP_CAP,
    )
}

/// Reduction-kernel content for the unshared-fixed-vector family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UnsharedVariant {
    /// Only what `g` and `σ` generate.
    Canonical,
    /// Adds `diag(1+p, 1-p)`.
    ExtraDiagonal,
    /// Adds `[[1, 0], [p, 1]]`.
    ExtraLowerUnipotent,
    /// Arbitrary `g`, `σ` and extra kernel generators, checked against the hypotheses.
    Custom {
        g: Mat2,
        sigma: Mat2,
        extra: Vec<Mat2>,
    },
}

impl UnsharedVariant {
    pub fn name(&self) -> &'static str {
        match self {
            UnsharedVariant::Canonical => "canonical",
            UnsharedVariant::ExtraDiagonal => "extra-diagonal",
            UnsharedVariant::ExtraLowerUnipotent => "extra-lower-unipotent",
            UnsharedVariant::Custom { .. } => "custom",
        }
    }

    pub fn standard() -> [UnsharedVariant; 3] {
        [
            UnsharedVariant::Canonical,
            UnsharedVariant::ExtraDiagonal,
            UnsharedVariant::ExtraLowerUnipotent,
        ]
    }
}

/// Generators `(g, σ, extras)` of an unshared-fixed-vector instance.
pub fn unshared_generators(ctx: ModulusContext, variant: &UnsharedVariant) -> (Mat2, Mat2, Vec<Mat2>) {
    let p = ctx.p() as i64;
    let g = Mat2::diag(ctx, -1, 1);
    let sigma = Mat2::from_i64(ctx, [[1, 1], [0, 1]]);
    match variant {
        UnsharedVariant::Canonical => (g, sigma, Vec::new()),
        UnsharedVariant::ExtraDiagonal => (g, sigma, vec![split_diagonal(ctx)]),
        UnsharedVariant::ExtraLowerUnipotent => {
            (g, sigma, vec![Mat2::from_i64(ctx, [[1, 0], [p, 1]])])
        }
        UnsharedVariant::Custom { g, sigma, extra } => (
            g.reduce(ctx),
            sigma.reduce(ctx),
            extra.iter().map(|m| m.reduce(ctx)).collect(),
        ),
    }
}

/// A group over Z/p^n whose image mod p is Borel, generated by an element of
/// order 2 and one of order p that fix no common nonzero vector of V[p].
pub fn build_borel_unshared_fixed_group(p: u64, n: u32, variant: &UnsharedVariant) -> Result<FiniteMatrixGroup> {
    if p < 5 {
        return Err(Error::Hypothesis(format!("p = {p}: the constructions need p >= 5")));
    }
    if n < 2 {
        return Err(Error::input("the unshared-fixed-vector family needs n >= 2"));
    }
    let ctx = ModulusContext::new(p, n)?;
    let (g, sigma, extra) = unshared_generators(ctx, variant);
    check_unshared_hypotheses(ctx, g, sigma, &extra)?;
    let mut gens = vec![g, sigma];
    gens.extend(extra);
    FiniteMatrixGroup::generate(ctx, &gens, DEFAULT_GROUP_CAP)
}

fn check_unshared_hypotheses(ctx: ModulusContext, g: Mat2, sigma: Mat2, extra: &[Mat2]) -> Result<()> {
    let fp = ctx.with_exponent(1)?;
    let (gb, sb) = (g.reduce(fp), sigma.reduce(fp));
    if gb.is_identity() || !gb.mul(gb, fp).is_identity() {
        return Err(Error::input("g must have order 2 modulo p"));
    }
    if sb.is_identity() || !sb.pow(fp.p(), fp).is_identity() {
        return Err(Error::input("σ must have order p modulo p"));
    }
    if let Some(m) = extra.iter().find(|m| !m.reduce(fp).is_identity()) {
        return Err(Error::input(format!("extra generator {m} is not ≡ Id mod p")));
    }
    let borel = eigen_data(sb, fp)
        .eigenvectors
        .iter()
        .flat_map(|(_, vs)| vs.iter().copied())
        .any(|v| stabilizes_line(gb, v, fp));
    if !borel {
        return Err(Error::input("g and σ do not stabilize a common line mod p"));
    }
    if !fixed_submodule(&[gb, sb], fp).is_zero() {
        return Err(Error::input("g and σ fix a common nonzero vector of order p"));
    }
    Ok(())
}
