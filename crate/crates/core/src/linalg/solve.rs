use super::howell::{axpy, howell_rows};
use super::{ModMatrix, ModVector, ModulusContext, SubmoduleBasis};
use crate::error::{Error, Result};

/// Outcome of [`solve_linear`]: one solution when the system is consistent,
/// plus the kernel, so the full solution set is `particular + kernel`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub particular: Option<ModVector>,
    pub kernel: SubmoduleBasis,
}

/// Howell form of `[A^T | I]`: the left block spans the row space of `A^T`
/// and the right block records how each row was combined.
fn augmented_transpose(a: &ModMatrix) -> Vec<Vec<u64>> {
    let ctx = a.ctx();
    let (m, d) = (a.rows(), a.cols());
    let rows = (0..d)
        .map(|j| {
            let mut r = Vec::with_capacity(m + d);
            r.extend((0..m).map(|i| a.get(i, j)));
            r.extend((0..d).map(|k| u64::from(k == j)));
            r
        })
        .collect();
    howell_rows(ctx, m + d, rows)
}

/// Kernel `{x : A x = 0}` as a Howell basis in (Z/p^n)^cols.
pub fn kernel_basis(a: &ModMatrix) -> SubmoduleBasis {
    let ctx = a.ctx();
    let d = a.cols();
    // The kernel only depends on the row span, which has at most `d` Howell rows.
    let reduced = howell_rows(ctx, d, a.row_vecs());
    let compact = ModMatrix::from_row_vecs(ctx, d, &reduced);
    let m = compact.rows();
    let tail: Vec<Vec<u64>> = augmented_transpose(&compact)
        .into_iter()
        .filter(|r| r[..m].iter().all(|&x| x == 0))
        .map(|r| r[m..].to_vec())
        .collect();
    SubmoduleBasis::from_rows(ctx, d, tail)
}

/// Solves `A x = b`.
pub fn solve_linear(a: &ModMatrix, b: &ModVector) -> Result<Solution> {
    if b.dim() != a.rows() {
        return Err(Error::contract(format!(
            "right-hand side has length {} but the matrix has {} rows",
            b.dim(),
            a.rows()
        )));
    }
    if b.ctx() != a.ctx() {
        return Err(Error::contract("matrix and vector use different moduli"));
    }
    let ctx = a.ctx();
    let (m, d) = (a.rows(), a.cols());
    let aug = augmented_transpose(a);

    let mut rest: Vec<u64> = b.coords().to_vec();
    rest.extend(std::iter::repeat(0).take(d));
    let mut consistent = true;
    for row in aug.iter() {
        let c = row.iter().position(|&x| x != 0).expect("nonzero Howell row");
        if c >= m {
            break;
        }
        if rest[..c].iter().any(|&x| x != 0) {
            consistent = false;
            break;
        }
        let e = rest[c];
        if e == 0 {
            continue;
        }
        let k = ctx.valuation(row[c]);
        if ctx.valuation(e) < k {
            consistent = false;
            break;
        }
        axpy(ctx, &mut rest, ctx.neg(ctx.div_p_pow(e, k)), row);
    }
    consistent = consistent && rest[..m].iter().all(|&x| x == 0);

    let kernel_rows: Vec<Vec<u64>> = aug
        .iter()
        .filter(|r| r[..m].iter().all(|&x| x == 0))
        .map(|r| r[m..].to_vec())
        .collect();
    let kernel = SubmoduleBasis::from_rows(ctx, d, kernel_rows);

    let particular = consistent.then(|| {
        let x = ModVector::new(ctx, rest[m..].iter().map(|&v| ctx.neg(v)).collect());
        debug_assert_eq!(a.mul_vec(&x).unwrap(), *b);
        x
    });
    Ok(Solution { particular, kernel })
}

/// Howell basis of the column span of `A`.
pub fn image_basis(a: &ModMatrix) -> SubmoduleBasis {
    SubmoduleBasis::from_rows(a.ctx(), a.rows(), a.transpose().row_vecs())
}

/// A matrix `K` whose kernel is exactly `span(S)`.
///
/// Rows of `K` span the annihilator of `S`; over Z/p^n the double annihilator
/// of a submodule is the submodule itself.
pub fn dual_constraints(s: &SubmoduleBasis) -> ModMatrix {
    let ctx = s.ctx();
    let m = s.ambient_dim();
    let annihilator = kernel_basis(&s.as_matrix());
    let k = if annihilator.is_zero() {
        ModMatrix::zero(ctx, 1, m)
    } else {
        annihilator.as_matrix()
    };
    debug_assert_eq!(kernel_basis(&k), *s, "double annihilator must recover S");
    k
}

/// Abelian-group structure of `big / small`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientStructure {
    /// Orders of the cyclic factors, each a power of p, in descending order.
    pub invariant_factors: Vec<u64>,
    /// One element of `big` per factor whose image generates that factor.
    pub generators: Vec<ModVector>,
}

impl QuotientStructure {
    pub fn order(&self) -> u128 {
        self.invariant_factors.iter().map(|&f| f as u128).product()
    }
}

pub fn quotient_invariants(big: &SubmoduleBasis, small: &SubmoduleBasis) -> Result<Vec<u64>> {
    quotient_structure(big, small).map(|q| q.invariant_factors)
}

pub fn quotient_structure(big: &SubmoduleBasis, small: &SubmoduleBasis) -> Result<QuotientStructure> {
    if big.ctx() != small.ctx() || big.ambient_dim() != small.ambient_dim() {
        return Err(Error::contract("submodules live in different ambient modules"));
    }
    if !big.contains_all(small) {
        return Err(Error::precondition(
            "quotient requested but the smaller submodule is not contained in the larger",
        ));
    }
    let ctx = big.ctx();
    let r = big.rows().len();
    if r == 0 {
        return Ok(QuotientStructure {
            invariant_factors: Vec::new(),
            generators: Vec::new(),
        });
    }
    // Coefficient space (Z/p^n)^r maps onto `big`; L is the preimage of `small`.
    let big_t = big.as_matrix().transpose();
    let mut relations: Vec<Vec<u64>> = kernel_basis(&big_t)
        .rows()
        .iter()
        .map(|v| v.coords().to_vec())
        .collect();
    for s in small.rows() {
        relations.push(big.express(s.coords()).expect("containment checked above"));
    }
    let snf = smith_form(ctx, r, relations);

    let mut factors: Vec<(u64, Vec<u64>)> = Vec::new();
    for t in 0..r {
        let k = snf.diagonal_valuations.get(t).copied().unwrap_or(ctx.n());
        if k == 0 {
            continue;
        }
        let coeffs = &snf.basis[t];
        let mut element = vec![0; big.ambient_dim()];
        for (c, row) in coeffs.iter().zip(big.rows()) {
            axpy(ctx, &mut element, *c, row.coords());
        }
        factors.push((ctx.p().pow(k), element));
    }
    factors.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(QuotientStructure {
        invariant_factors: factors.iter().map(|f| f.0).collect(),
        generators: factors
            .into_iter()
            .map(|(_, e)| ModVector::new(ctx, e))
            .collect(),
    })
}

struct SmithForm {
    /// Valuation `k_t` of the t-th diagonal entry `p^{k_t}`, for t < rank.
    diagonal_valuations: Vec<u32>,
    /// Rows `f_t` of the basis in which the relation module is `span{p^{k_t} f_t}`.
    basis: Vec<Vec<u64>>,
}

/// Smith form of the relation rows, tracking the change of basis of the
/// column space (the rows of `V^{-1}` for `U L V = D`).
fn smith_form(ctx: ModulusContext, width: usize, rows: Vec<Vec<u64>>) -> SmithForm {
    let mut d: Vec<Vec<u64>> = rows.into_iter().filter(|r| r.iter().any(|&x| x != 0)).collect();
    let mut basis: Vec<Vec<u64>> = (0..width)
        .map(|i| (0..width).map(|j| u64::from(i == j)).collect())
        .collect();
    let mut valuations = Vec::new();

    for t in 0..width.min(d.len()) {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in d.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let v = ctx.valuation(x);
                    if best.is_none_or(|b| v < b.0) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let Some((k, i, j)) = best else { break };
        d.swap(t, i);
        if j != t {
            for row in d.iter_mut() {
                row.swap(t, j);
            }
            basis.swap(t, j);
        }
        let (unit, _) = ctx.split(d[t][t]);
        let unit_inv = ctx.inv(unit).expect("unit");
        for row in d.iter_mut() {
            row[t] = ctx.mul(row[t], unit_inv);
        }
        for x in basis[t].iter_mut() {
            *x = ctx.mul(*x, unit);
        }
        let pivot_row = d[t].clone();
        for row in d.iter_mut().skip(t + 1) {
            if row[t] != 0 {
                let q = ctx.div_p_pow(row[t], k);
                axpy(ctx, row, ctx.neg(q), &pivot_row);
            }
        }
        for j in t + 1..width {
            let e = d[t][j];
            if e == 0 {
                continue;
            }
            let q = ctx.div_p_pow(e, k);
            for row in d.iter_mut() {
                let sub = ctx.mul(q, row[t]);
                row[j] = ctx.sub(row[j], sub);
            }
            let bj = basis[j].clone();
            axpy(ctx, &mut basis[t], q, &bj);
        }
        valuations.push(k);
    }
    SmithForm {
        diagonal_valuations: valuations,
        basis,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(p: u64, n: u32) -> ModulusContext {
        ModulusContext::new(p, n).unwrap()
    }

    fn mat(c: ModulusContext, rows: &[Vec<i64>]) -> ModMatrix {
        ModMatrix::from_rows_i64(c, rows).unwrap()
    }

    #[test]
    fn identity_has_unique_solution() {
        let c = ctx(5, 2);
        let b = ModVector::new(c, vec![3, 17]);
        let sol = solve_linear(&ModMatrix::identity(c, 2), &b).unwrap();
        assert_eq!(sol.particular, Some(b));
        assert!(sol.kernel.is_zero());
    }

    #[test]
    fn zero_matrix_with_nonzero_rhs_is_inconsistent() {
        let c = ctx(5, 2);
        let sol = solve_linear(&ModMatrix::zero(c, 2, 2), &ModVector::new(c, vec![1, 0])).unwrap();
        assert_eq!(sol.particular, None);
        assert_eq!(sol.kernel, SubmoduleBasis::full(c, 2));
    }

    #[test]
    fn dimension_mismatch_is_a_contract_error() {
        let c = ctx(5, 2);
        let err = solve_linear(&ModMatrix::identity(c, 2), &ModVector::zero(c, 3)).unwrap_err();
        assert!(matches!(err, Error::Contract(_)));
    }

    #[test]
    fn image_of_scalar_p() {
        let c = ctx(5, 2);
        let img = image_basis(&ModMatrix::identity(c, 2).scale(5));
        assert_eq!(img.order(), Some(25));
        assert_eq!(image_basis(&ModMatrix::identity(c, 2)), SubmoduleBasis::full(c, 2));
    }

    #[test]
    fn dual_of_pv_is_scalar_p() {
        let c = ctx(5, 2);
        let pv = SubmoduleBasis::from_rows(c, 2, vec![vec![5, 0], vec![0, 5]]);
        assert_eq!(dual_constraints(&pv), ModMatrix::identity(c, 2).scale(5));
        let full = dual_constraints(&SubmoduleBasis::full(c, 2));
        assert!(full.entries().iter().all(|&x| x == 0));
    }

    #[test]
    fn quotient_factor_lists() {
        let c = ctx(5, 2);
        let full = SubmoduleBasis::full(c, 2);
        let zero = SubmoduleBasis::zero(c, 2);
        let pv = SubmoduleBasis::from_rows(c, 2, vec![vec![5, 0], vec![0, 5]]);
        assert_eq!(quotient_invariants(&full, &zero).unwrap(), vec![25, 25]);
        assert_eq!(quotient_invariants(&full, &pv).unwrap(), vec![5, 5]);
        assert_eq!(quotient_invariants(&pv, &zero).unwrap(), vec![5, 5]);
        assert!(matches!(
            quotient_invariants(&pv, &full),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn mixed_quotient_generators_have_the_stated_orders() {
        let c = ctx(3, 3);
        let big = SubmoduleBasis::full(c, 3);
        let small = SubmoduleBasis::from_rows(c, 3, vec![vec![3, 9, 0], vec![0, 9, 0], vec![1, 0, 9]]);
        let q = quotient_structure(&big, &small).unwrap();
        assert_eq!(q.order(), 27u128.pow(3) / small.order().unwrap());
        for (f, g) in q.invariant_factors.iter().zip(&q.generators) {
            assert!(small.contains(&g.scale(*f)));
            assert!(!small.contains(&g.scale(*f / 3)));
        }
    }

    #[test]
    fn sigma_minus_identity_reaches_zero_p() {
        let c = ctx(5, 2);
        let img = image_basis(&mat(c, &[vec![5, 1], vec![10, 5]]));
        assert!(img.contains(&ModVector::new(c, vec![0, 5])));
    }
}
