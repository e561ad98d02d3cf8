use std::collections::VecDeque;

use super::{ActingGroup, FiniteMatrixGroup, Mat2};
use crate::error::{Error, Result};
use crate::linalg::ModulusContext;

/// `G / N` for a normal subgroup `N`, with cosets numbered by their smallest
/// element index. The quotient acts through coset representatives, which is
/// only meaningful on modules where `N` acts trivially; the cohomology engine
/// checks that before using the action.
#[derive(Clone, Debug)]
pub struct QuotientGroup<'g> {
    parent: &'g FiniteMatrixGroup,
    normal_subgroup: Vec<usize>,
    coset_of: Vec<usize>,
    representatives: Vec<usize>,
    cayley: Vec<usize>,
    bfs_parent: Vec<Option<(usize, usize)>>,
    bfs_order: Vec<usize>,
    generator_cosets: Vec<usize>,
}

impl<'g> QuotientGroup<'g> {
    pub fn new(parent: &'g FiniteMatrixGroup, normal_subgroup: &[usize]) -> Result<Self> {
        if !parent.is_normal(normal_subgroup) {
            return Err(Error::precondition(
                "quotient by a subset that is not a normal subgroup",
            ));
        }
        let mut normal: Vec<usize> = normal_subgroup.to_vec();
        normal.sort_unstable();
        normal.dedup();

        let order = parent.order();
        let mut coset_of = vec![usize::MAX; order];
        let mut representatives = Vec::new();
        for x in 0..order {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let c = representatives.len();
            representatives.push(x);
            for &s in &normal {
                coset_of[parent.mul(x, s)] = c;
            }
        }
        debug_assert_eq!(representatives.len() * normal.len(), order);

        let q = representatives.len();
        let k = parent.num_generators();
        let mut cayley = Vec::with_capacity(q * k);
        for &rep in &representatives {
            for j in 0..k {
                cayley.push(coset_of[parent.left_mul_generator(j, rep)]);
            }
        }
        let mut bfs_parent = vec![None; q];
        let mut seen = vec![false; q];
        let mut bfs_order = vec![coset_of[0]];
        seen[coset_of[0]] = true;
        let mut queue = VecDeque::from([coset_of[0]]);
        while let Some(y) = queue.pop_front() {
            for j in 0..k {
                let x = cayley[y * k + j];
                if !seen[x] {
                    seen[x] = true;
                    bfs_parent[x] = Some((j, y));
                    bfs_order.push(x);
                    queue.push_back(x);
                }
            }
        }
        let generator_cosets = (0..k).map(|j| coset_of[parent.generator(j)]).collect();
        Ok(QuotientGroup {
            parent,
            normal_subgroup: normal,
            coset_of,
            representatives,
            cayley,
            bfs_parent,
            bfs_order,
            generator_cosets,
        })
    }

    pub fn parent(&self) -> &'g FiniteMatrixGroup {
        self.parent
    }

    pub fn normal_subgroup(&self) -> &[usize] {
        &self.normal_subgroup
    }

    pub fn coset_of(&self, x: usize) -> usize {
        self.coset_of[x]
    }

    pub fn representatives(&self) -> &[usize] {
        &self.representatives
    }

    pub fn representative(&self, c: usize) -> usize {
        self.representatives[c]
    }

    pub fn is_abelian(&self) -> bool {
        let q = self.order();
        (0..q).all(|a| (0..q).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Order of a coset in the quotient.
    pub fn element_order(&self, c: usize) -> u64 {
        let mut acc = c;
        let mut k = 1;
        while acc != self.coset_of[0] {
            acc = self.mul(acc, c);
            k += 1;
        }
        k
    }
}

impl ActingGroup for QuotientGroup<'_> {
    fn ctx(&self) -> ModulusContext {
        self.parent.ctx()
    }

    fn order(&self) -> usize {
        self.representatives.len()
    }

    fn identity(&self) -> usize {
        self.coset_of[0]
    }

    fn num_generators(&self) -> usize {
        self.generator_cosets.len()
    }

    fn generator(&self, j: usize) -> usize {
        self.generator_cosets[j]
    }

    fn left_mul_generator(&self, j: usize, x: usize) -> usize {
        self.cayley[x * self.generator_cosets.len() + j]
    }

    fn bfs_parent(&self, x: usize) -> Option<(usize, usize)> {
        self.bfs_parent[x]
    }

    fn bfs_order(&self) -> &[usize] {
        &self.bfs_order
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.coset_of[self
            .parent
            .mul(self.representatives[a], self.representatives[b])]
    }

    fn inverse(&self, a: usize) -> usize {
        self.coset_of[self.parent.inverse(self.representatives[a])]
    }

    fn action(&self, x: usize) -> Mat2 {
        self.parent.matrix(self.representatives[x])
    }
}
