//! Explicit cocycle and obstruction checks for the Borel group whose
//! generators fix a common vector mod p.

use crate::cohomology::{inflate_class, Cocycle, CocycleSystem, Module};
use crate::error::{Error, Result};
use crate::group::{power_identity_sweep, ActingGroup, FiniteMatrixGroup, Mat2, QuotientGroup};
use crate::linalg::{solve_linear, ModVector, ModulusContext};

use super::builders::{borel_unipotent, split_diagonal, upper_unipotent_p};

/// How to read the first coordinate of the explicit cocycle on `G/H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormulaReading {
    /// `(i2(i2-1)/2, (-1)^i1 i2)`.
    Literal,
    /// `(i2^2/2, (-1)^i1 i2)`, the nearest table that is a cocycle.
    Corrected,
}

/// `(i1, i2)` with `x ≡ g^i1 σ^i2 (mod p)`, reading off `[[1, i2], [0, ±1]]`.
pub fn coset_exponents(x: Mat2, ctx: ModulusContext) -> Option<(u64, u64)> {
    let fp = ctx.with_exponent(1).ok()?;
    let [a, b, c, d] = x.reduce(fp).0;
    if a != 1 || c != 0 {
        return None;
    }
    match d {
        1 => Some((0, b)),
        d if d == fp.p() - 1 => Some((1, b)),
        _ => None,
    }
}

/// The explicit V[p]-valued table on `G/H`, in F_p coordinates.
pub fn formula_cocycle(q: &QuotientGroup<'_>, reading: FormulaReading) -> Result<Cocycle> {
    let ctx = q.ctx();
    let fp = ctx.with_exponent(1)?;
    let half = fp.inv(2).expect("p is odd");
    let values = (0..q.order())
        .map(|c| {
            let (i1, i2) = coset_exponents(q.action(c), ctx)
                .ok_or_else(|| Error::precondition("coset is not of the form g^i1 σ^i2 mod p"))?;
            let quad = match reading {
                FormulaReading::Literal => fp.mul(i2, fp.sub(i2, 1)),
                FormulaReading::Corrected => fp.mul(i2, i2),
            };
            let second = if i1 == 0 { i2 } else { fp.neg(i2) };
            Ok([fp.mul(quad, half), second])
        })
        .collect::<Result<_>>()?;
    Ok(Cocycle::new(Module::p_torsion(ctx), values))
}

/// Outcome of every step of the non-vanishing argument for this group.
#[derive(Clone, Debug)]
pub struct SharedFixedSteps {
    pub kernel_is_generated_by_upper_and_diagonal: bool,
    pub sigma_power_shape: bool,
    pub power_identity_trials: usize,
    pub power_identity_holds: bool,
    pub literal_formula_is_cocycle: bool,
    pub corrected_formula_is_cocycle: bool,
    /// Elements τ where `W_τ = (τ - Id)(α, pβ)` has no solution.
    pub local_solvability_failures: usize,
    pub sigma_solutions_have_unit_first_coordinate: bool,
    pub kernel_solutions_have_divisible_first_coordinate: bool,
    pub image_is_not_coboundary: bool,
    /// The image `W` of the corrected cocycle in H^1(G, V).
    pub w: Cocycle,
}

impl SharedFixedSteps {
    pub fn local_solvability(&self) -> bool {
        self.local_solvability_failures == 0
    }
}

/// Runs every step for the group produced by `build_borel_shared_fixed_group`.
pub fn shared_fixed_steps(g: &FiniteMatrixGroup, power_trials: usize, seed: u64) -> Result<SharedFixedSteps> {
    let ctx = g.ctx();
    let p = ctx.p();
    let kernel = g.reduction_kernel().members;

    let expected_kernel = FiniteMatrixGroup::generate(
        ctx,
        &[upper_unipotent_p(ctx), split_diagonal(ctx)],
        usize::MAX,
    )?;
    let mut expected: Vec<usize> = g.embedding_of(&expected_kernel)?;
    expected.sort_unstable();
    let kernel_is_generated_by_upper_and_diagonal = expected == kernel;

    let sigma = borel_unipotent(ctx);
    let sigma_power_shape = (1..=p).all(|i| {
        let s = sigma.pow(i, ctx);
        s.entry(0, 1) % p == i % p && s.entry(1, 0) == ctx.mul(2 * i % ctx.modulus(), p)
    });

    let sweep = power_identity_sweep(p, ctx.n(), power_trials, seed)?;

    let q = QuotientGroup::new(g, &kernel)?;
    let literal = formula_cocycle(&q, FormulaReading::Literal)?;
    let corrected = formula_cocycle(&q, FormulaReading::Corrected)?;
    let literal_formula_is_cocycle = literal.satisfies_identity_exhaustively(&q);
    let corrected_formula_is_cocycle = corrected.satisfies_identity_exhaustively(&q);
    if !corrected_formula_is_cocycle {
        return Err(Error::Consistency("corrected formula is not a cocycle".into()));
    }
    let w = inflate_class(&q, &corrected)?.embed_in_full()?;

    let local_solvability_failures = (0..g.order())
        .filter(|&x| !solvable_with_divisible_second(g.matrix(x), w.value(x), ctx))
        .count();

    let sigma_solutions = all_solutions(sigma.minus_identity(ctx), [0, p], ctx);
    let sigma_solutions_have_unit_first_coordinate =
        !sigma_solutions.is_empty() && sigma_solutions.iter().all(|x| x[0] % p != 0);
    let kernel_solutions = all_solutions(split_diagonal(ctx).minus_identity(ctx), [0, 0], ctx);
    let kernel_solutions_have_divisible_first_coordinate =
        kernel_solutions.iter().all(|x| x[0] % p == 0);

    let system = CocycleSystem::new(g, Module::full(ctx))?;
    let image_is_not_coboundary = system.is_coboundary(&w).is_none();

    Ok(SharedFixedSteps {
        kernel_is_generated_by_upper_and_diagonal,
        sigma_power_shape,
        power_identity_trials: sweep.trials,
        power_identity_holds: sweep.passed(),
        literal_formula_is_cocycle,
        corrected_formula_is_cocycle,
        local_solvability_failures,
        sigma_solutions_have_unit_first_coordinate,
        kernel_solutions_have_divisible_first_coordinate,
        image_is_not_coboundary,
        w,
    })
}

/// Whether `(τ - Id)(α, pβ) = target` has a solution.
fn solvable_with_divisible_second(tau: Mat2, target: [u64; 2], ctx: ModulusContext) -> bool {
    let a = tau.minus_identity(ctx).mul(Mat2([1, 0, 0, ctx.p()]), ctx);
    let sol = solve_linear(&a.to_mod_matrix(ctx), &ModVector::new(ctx, target.to_vec()))
        .expect("2x2 system");
    sol.particular.is_some()
}

/// Every `x ∈ (Z/p^n)^2` with `a x = target`, by enumeration.
pub fn all_solutions(a: Mat2, target: [u64; 2], ctx: ModulusContext) -> Vec<[u64; 2]> {
    let q = ctx.modulus();
    (0..q)
        .flat_map(|x| (0..q).map(move |y| [x, y]))
        .filter(|&v| a.apply(v, ctx) == target)
        .collect()
}
