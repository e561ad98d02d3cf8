use super::{ActingGroup, FiniteMatrixGroup, Mat2};
use crate::linalg::{kernel_basis, ModMatrix, ModulusContext, SubmoduleBasis};

/// Mod-p spectral data of a 2x2 matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenData {
    /// Roots of the characteristic polynomial in F_p, ascending, with
    /// multiplicity. Empty when the polynomial is irreducible.
    pub eigenvalues: Vec<u64>,
    pub irreducible: bool,
    /// For each distinct eigenvalue, a basis of its eigenspace over F_p.
    pub eigenvectors: Vec<(u64, Vec<[u64; 2]>)>,
}

/// Eigenvalues and eigenvectors of `m` reduced modulo p.
pub fn eigen_data(m: Mat2, ctx: ModulusContext) -> EigenData {
    let fp = ctx.with_exponent(1).expect("p is already validated");
    let m = m.reduce(fp);
    let (t, d) = (m.trace(fp), m.det(fp));
    let p = fp.p();
    let mut eigenvalues = Vec::new();
    for l in 0..p {
        // l^2 - t l + d
        let v = fp.add(fp.sub(fp.mul(l, l), fp.mul(t, l)), d);
        if v == 0 {
            eigenvalues.push(l);
        }
    }
    if eigenvalues.len() == 1 {
        // double root
        eigenvalues.push(eigenvalues[0]);
    }
    let mut eigenvectors = Vec::new();
    let mut distinct = eigenvalues.clone();
    distinct.dedup();
    for &l in &distinct {
        let shifted = m.sub(Mat2::from_i64(fp, [[l as i64, 0], [0, l as i64]]), fp);
        let ker = kernel_basis(&shifted.to_mod_matrix(fp));
        let vecs = ker.rows().iter().map(|r| [r[0], r[1]]).collect();
        eigenvectors.push((l, vecs));
    }
    EigenData {
        irreducible: eigenvalues.is_empty(),
        eigenvalues,
        eigenvectors,
    }
}

/// `{v : x v = v for every x in xs}` as a Howell basis of (Z/p^n)^2.
pub fn fixed_submodule(xs: &[Mat2], ctx: ModulusContext) -> SubmoduleBasis {
    let mut stacked = ModMatrix::zero(ctx, 0, 2);
    for x in xs {
        let block = x.minus_identity(ctx).to_mod_matrix(ctx);
        stacked = stacked.vstack(&block).expect("2-column blocks");
    }
    kernel_basis(&stacked)
}

/// A nonzero vector mod p spanning a line stabilized by every generator, if
/// one exists. Lines are scanned as `(1, 0), (1, 1), ..., (1, p-1), (0, 1)`,
/// so the trivial group reports `e1`.
pub fn borel_check(g: &FiniteMatrixGroup) -> Option<[u64; 2]> {
    let fp = g.ctx().with_exponent(1).expect("p is already validated");
    let p = fp.p();
    let lines = (0..p).map(|t| [1, t]).chain(std::iter::once([0, 1]));
    let gens: Vec<Mat2> = g.generators().iter().map(|m| m.reduce(fp)).collect();
    lines
        .into_iter()
        .find(|v| gens.iter().all(|m| stabilizes_line(*m, *v, fp)))
}

pub(crate) fn stabilizes_line(m: Mat2, v: [u64; 2], fp: ModulusContext) -> bool {
    let w = m.apply(v, fp);
    fp.sub(fp.mul(v[0], w[1]), fp.mul(v[1], w[0])) == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_GROUP_CAP;

    #[test]
    fn diagonal_eigen_data() {
        let c = ModulusContext::new(5, 2).unwrap();
        let e = eigen_data(Mat2::diag(c, 7, 1), c);
        assert_eq!(e.eigenvalues, vec![1, 2]);
        assert!(!e.irreducible);
        assert_eq!(e.eigenvectors, vec![(1, vec![[0, 1]]), (2, vec![[1, 0]])]);
    }

    #[test]
    fn order_three_rotation_is_irreducible_mod_five() {
        let c = ModulusContext::new(5, 2).unwrap();
        let e = eigen_data(Mat2::from_i64(c, [[1, -3], [1, -2]]), c);
        assert!(e.irreducible);
        assert!(e.eigenvectors.is_empty());
    }

    #[test]
    fn unipotent_has_one_line() {
        let c = ModulusContext::new(5, 1).unwrap();
        let e = eigen_data(Mat2::from_i64(c, [[1, 1], [0, 1]]), c);
        assert_eq!(e.eigenvalues, vec![1, 1]);
        assert_eq!(e.eigenvectors, vec![(1, vec![[1, 0]])]);
    }

    #[test]
    fn fixed_vectors_of_diagonal() {
        let c = ModulusContext::new(5, 2).unwrap();
        let f = fixed_submodule(&[Mat2::diag(c, 7, 1)], c);
        assert_eq!(f, SubmoduleBasis::from_rows(c, 2, vec![vec![0, 1]]));
        assert_eq!(fixed_submodule(&[Mat2::identity()], c), SubmoduleBasis::full(c, 2));
    }

    #[test]
    fn trivial_group_reports_first_line() {
        let c = ModulusContext::new(7, 1).unwrap();
        let g = FiniteMatrixGroup::generate(c, &[], DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(borel_check(&g), Some([1, 0]));
    }
}
