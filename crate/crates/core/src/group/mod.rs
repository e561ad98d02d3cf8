//! Finite subgroups of GL2(Z/p^n), enumerated from generators.

mod eigen;
mod mat2;
mod power;
mod quotient;

pub use eigen::{borel_check, eigen_data, fixed_submodule, EigenData};
pub(crate) use eigen::stabilizes_line;
pub use mat2::Mat2;
pub use power::{power_identity_check, power_identity_sweep, PowerIdentitySweep};
pub use quotient::QuotientGroup;

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::linalg::{ModMatrix, ModulusContext};

pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

/// Group structure needed to compute cohomology: a generating set, the left
/// Cayley graph, a breadth-first spanning tree and the matrix each element
/// acts by.
pub trait ActingGroup {
    fn ctx(&self) -> ModulusContext;
    fn order(&self) -> usize;
    fn identity(&self) -> usize {
        0
    }
    fn num_generators(&self) -> usize;
    /// Element index of the `j`-th generator.
    fn generator(&self, j: usize) -> usize;
    /// Index of `g_j * x`.
    fn left_mul_generator(&self, j: usize, x: usize) -> usize;
    /// `(j, y)` with `x = g_j * y` and `y` discovered before `x`; `None` for the identity.
    fn bfs_parent(&self, x: usize) -> Option<(usize, usize)>;
    /// Elements in discovery order; the identity comes first.
    fn bfs_order(&self) -> &[usize];
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inverse(&self, a: usize) -> usize;
    /// Matrix by which `x` acts on (Z/p^n)^2.
    fn action(&self, x: usize) -> Mat2;
}

/// One element of an enumerated group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub ctx: ModulusContext,
    pub mat: ModMatrix,
    pub id: usize,
}

/// A fully enumerated subgroup of GL2(Z/p^n).
///
/// Elements are numbered in breadth-first order of left multiplication by the
/// generators, so two closures of the same generator list agree index for
/// index. The identity is element 0.
#[derive(Clone, Debug)]
pub struct FiniteMatrixGroup {
    ctx: ModulusContext,
    generators: Vec<Mat2>,
    generator_ids: Vec<usize>,
    elements: Vec<Mat2>,
    index: HashMap<Mat2, usize>,
    cayley: Vec<usize>,
    parent: Vec<Option<(usize, usize)>>,
    inverse: Vec<usize>,
    order_list: Vec<usize>,
}

/// Closes `gens` under multiplication with the default size cap.
pub fn close_group(gens: &[ModMatrix], ctx: ModulusContext) -> Result<FiniteMatrixGroup> {
    let mats = gens
        .iter()
        .map(|g| {
            if g.ctx() != ctx {
                return Err(Error::contract("generator over a different modulus"));
            }
            Mat2::from_mod_matrix(g)
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteMatrixGroup::generate(ctx, &mats, DEFAULT_GROUP_CAP)
}

impl FiniteMatrixGroup {
    pub fn generate(ctx: ModulusContext, gens: &[Mat2], cap: usize) -> Result<Self> {
        let generators: Vec<Mat2> = gens.iter().map(|g| g.reduce(ctx)).collect();
        for (j, g) in generators.iter().enumerate() {
            if !ctx.is_unit(g.det(ctx)) {
                return Err(Error::input(format!(
                    "generator {j} = {g} is not invertible modulo {}",
                    ctx.p()
                )));
            }
        }
        let k = generators.len();
        let id = Mat2::identity().reduce(ctx);
        let mut elements = vec![id];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut parent = vec![None];
        let mut cayley: Vec<usize> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(y) = queue.pop_front() {
            let ym = elements[y];
            for (j, g) in generators.iter().enumerate() {
                let x = g.mul(ym, ctx);
                let xi = match index.get(&x) {
                    Some(&xi) => xi,
                    None => {
                        if elements.len() >= cap {
                            return Err(Error::Resource {
                                what: "group order".into(),
                                cap,
                            });
                        }
                        let xi = elements.len();
                        elements.push(x);
                        index.insert(x, xi);
                        parent.push(Some((j, y)));
                        queue.push_back(xi);
                        xi
                    }
                };
                debug_assert_eq!(cayley.len(), y * k + j);
                cayley.push(xi);
            }
        }
        let inverse = elements
            .iter()
            .map(|m| index[&m.inverse(ctx).expect("group elements are invertible")])
            .collect();
        let generator_ids = generators.iter().map(|g| index[g]).collect();
        let order_list = (0..elements.len()).collect();
        Ok(FiniteMatrixGroup {
            ctx,
            generators,
            generator_ids,
            elements,
            index,
            cayley,
            parent,
            inverse,
            order_list,
        })
    }

    pub fn generators(&self) -> &[Mat2] {
        &self.generators
    }

    pub fn elements(&self) -> &[Mat2] {
        &self.elements
    }

    pub fn matrix(&self, x: usize) -> Mat2 {
        self.elements[x]
    }

    pub fn element(&self, x: usize) -> GroupElement {
        GroupElement {
            ctx: self.ctx,
            mat: self.elements[x].to_mod_matrix(self.ctx),
            id: x,
        }
    }

    pub fn index_of(&self, m: &Mat2) -> Option<usize> {
        self.index.get(&m.reduce(self.ctx)).copied()
    }

    pub fn contains(&self, m: &Mat2) -> bool {
        self.index_of(m).is_some()
    }

    /// A word `[j_1, ..., j_r]` with `x = g_{j_1} * ... * g_{j_r}`.
    pub fn word(&self, mut x: usize) -> Vec<usize> {
        let mut w = Vec::new();
        while let Some((j, y)) = self.parent[x] {
            w.push(j);
            x = y;
        }
        w
    }

    pub fn pow(&self, x: usize, e: u64) -> usize {
        self.index[&self.elements[x].pow(e, self.ctx)]
    }

    /// Least `k ≥ 1` with `x^k = 1`.
    pub fn element_order(&self, x: usize) -> u64 {
        let ctx = self.ctx;
        let m = self.elements[x];
        let mut acc = m;
        let mut k = 1;
        while !acc.is_identity() {
            acc = acc.mul(m, ctx);
            k += 1;
        }
        k
    }

    /// The elements congruent to the identity modulo p. For n = 1 this is
    /// the trivial subgroup and a notice says so.
    pub fn reduction_kernel(&self) -> ReductionKernel {
        if self.ctx.n() == 1 {
            return ReductionKernel {
                members: vec![0],
                notice: Some("n = 1: reduction modulo p is the identity map".into()),
            };
        }
        let p = self.ctx.p();
        let members = self
            .elements
            .iter()
            .enumerate()
            .filter(|(_, m)| {
                let [a, b, c, d] = m.0;
                a % p == 1 && b % p == 0 && c % p == 0 && d % p == 1
            })
            .map(|(i, _)| i)
            .collect();
        ReductionKernel {
            members,
            notice: None,
        }
    }

    /// True iff `set` (sorted or not) is closed under products.
    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        if set.is_empty() {
            return false;
        }
        let mut member = vec![false; self.order()];
        for &s in set {
            member[s] = true;
        }
        set.iter()
            .all(|&a| set.iter().all(|&b| member[self.mul(a, b)]))
    }

    /// True iff `set` is a subgroup stable under conjugation by the generators.
    pub fn is_normal(&self, set: &[usize]) -> bool {
        if !self.is_subgroup(set) {
            return false;
        }
        let mut member = vec![false; self.order()];
        for &s in set {
            member[s] = true;
        }
        self.generator_ids.iter().all(|&g| {
            let gi = self.inverse[g];
            set.iter().all(|&s| member[self.mul(self.mul(g, s), gi)])
        })
    }

    /// `x S x^{-1}` as a sorted index list.
    pub fn conjugate_set(&self, x: usize, set: &[usize]) -> Vec<usize> {
        let xi = self.inverse[x];
        let mut out: Vec<usize> = set.iter().map(|&s| self.mul(self.mul(x, s), xi)).collect();
        out.sort_unstable();
        out
    }

    /// Re-enumerates a subset that is known to be a subgroup, picking a small
    /// generating set greedily (first element not yet generated, in index order).
    pub fn subgroup(&self, members: &[usize]) -> Result<FiniteMatrixGroup> {
        if !self.is_subgroup(members) {
            return Err(Error::precondition("element set is not a subgroup"));
        }
        let mut sorted = members.to_vec();
        sorted.sort_unstable();
        let mut gens: Vec<Mat2> = Vec::new();
        let mut current = FiniteMatrixGroup::generate(self.ctx, &gens, usize::MAX)?;
        for &m in &sorted {
            let mat = self.elements[m];
            if !current.contains(&mat) {
                gens.push(mat);
                current = FiniteMatrixGroup::generate(self.ctx, &gens, usize::MAX)?;
            }
        }
        Ok(current)
    }

    /// Positions in `self` of every element of `sub`, or an error naming the
    /// first element of `sub` that is missing.
    pub fn embedding_of(&self, sub: &FiniteMatrixGroup) -> Result<Vec<usize>> {
        if sub.ctx != self.ctx {
            return Err(Error::contract("groups over different moduli"));
        }
        sub.elements
            .iter()
            .map(|m| {
                self.index_of(m).ok_or_else(|| {
                    Error::precondition(format!("{m} is not an element of the ambient group"))
                })
            })
            .collect()
    }

    /// Image of the group under reduction to Z/p^k.
    pub fn reduce_to(&self, k: u32) -> Result<FiniteMatrixGroup> {
        let ctx = self.ctx.with_exponent(k)?;
        let gens: Vec<Mat2> = self.generators.iter().map(|g| g.reduce(ctx)).collect();
        FiniteMatrixGroup::generate(ctx, &gens, DEFAULT_GROUP_CAP)
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generator_ids;
        g.iter()
            .all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }
}

impl ActingGroup for FiniteMatrixGroup {
    fn ctx(&self) -> ModulusContext {
        self.ctx
    }

    fn order(&self) -> usize {
        self.elements.len()
    }

    fn num_generators(&self) -> usize {
        self.generators.len()
    }

    fn generator(&self, j: usize) -> usize {
        self.generator_ids[j]
    }

    fn left_mul_generator(&self, j: usize, x: usize) -> usize {
        self.cayley[x * self.generators.len() + j]
    }

    fn bfs_parent(&self, x: usize) -> Option<(usize, usize)> {
        self.parent[x]
    }

    fn bfs_order(&self) -> &[usize] {
        &self.order_list
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].mul(self.elements[b], self.ctx)]
    }

    fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    fn action(&self, x: usize) -> Mat2 {
        self.elements[x]
    }
}

/// The kernel of reduction modulo p, as element indices in ascending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionKernel {
    pub members: Vec<usize>,
    pub notice: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx25() -> ModulusContext {
        ModulusContext::new(5, 2).unwrap()
    }

    #[test]
    fn identity_generates_trivial_group() {
        let c = ctx25();
        let g = close_group(&[ModMatrix::identity(c, 2)], c).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.element_order(0), 1);
    }

    #[test]
    fn order_three_rotation() {
        let c = ctx25();
        let tau = ModMatrix::from_rows_i64(c, &[vec![1, -3], vec![1, -2]]).unwrap();
        let g = close_group(&[tau], c).unwrap();
        assert_eq!(g.order(), 3);
    }

    #[test]
    fn singular_generator_rejected() {
        let c = ctx25();
        let m = ModMatrix::from_rows_i64(c, &[vec![5, 0], vec![0, 1]]).unwrap();
        assert!(matches!(close_group(&[m], c), Err(Error::Input(_))));
    }

    #[test]
    fn cap_is_reported() {
        let c = ctx25();
        let gens = [Mat2::from_i64(c, [[1, 1], [0, 1]])];
        let err = FiniteMatrixGroup::generate(c, &gens, 10).unwrap_err();
        assert_eq!(
            err,
            Error::Resource {
                what: "group order".into(),
                cap: 10
            }
        );
    }

    #[test]
    fn element_orders() {
        let c = ctx25();
        let sigma = Mat2::from_i64(c, [[1, -3], [0, -1]]);
        let lifted = Mat2::from_i64(c, [[6, 1], [10, 6]]);
        let g = FiniteMatrixGroup::generate(c, &[sigma, lifted], DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(g.element_order(g.index_of(&sigma).unwrap()), 2);
        assert_eq!(g.element_order(g.index_of(&lifted).unwrap()), 25);
    }

    #[test]
    fn words_multiply_back() {
        let c = ctx25();
        let gens = [
            Mat2::from_i64(c, [[1, -3], [1, -2]]),
            Mat2::from_i64(c, [[1, -3], [0, -1]]),
        ];
        let g = FiniteMatrixGroup::generate(c, &gens, DEFAULT_GROUP_CAP).unwrap();
        for x in 0..g.order() {
            let prod = g
                .word(x)
                .iter()
                .fold(Mat2::identity(), |acc, &j| acc.mul(gens[j].reduce(c), c));
            assert_eq!(prod, g.matrix(x));
        }
    }

    #[test]
    fn trivial_kernel_at_level_one() {
        let c = ModulusContext::new(5, 1).unwrap();
        let g = FiniteMatrixGroup::generate(c, &[Mat2::diag(c, 2, 1)], DEFAULT_GROUP_CAP).unwrap();
        let k = g.reduction_kernel();
        assert_eq!(k.members, vec![0]);
        assert!(k.notice.is_some());
    }
}
