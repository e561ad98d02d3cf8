use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::group::{ActingGroup, FiniteMatrixGroup, Mat2};
use crate::linalg::{howell_form, kernel_basis, ModMatrix, ModVector, ModulusContext};

/// Upper bound on the number of maps tried when looking for an injective one.
const INJECTIVITY_SEARCH_CAP: u128 = 2_000_000;

/// Maps from an elementary abelian normal subgroup `H` (as an F_p-space with
/// `G` acting by conjugation) to `V[p] = F_p^2`, commuting with `G`.
#[derive(Clone, Debug)]
pub struct EquivariantHoms {
    fp: ModulusContext,
    /// Element indices in `G` of an F_p-basis of `H`.
    pub source_basis: Vec<usize>,
    /// Coordinates of every element of `H` in `source_basis`.
    coords: HashMap<usize, Vec<u64>>,
    /// Each hom as a 2 x d matrix over F_p, row-major.
    pub basis: Vec<Vec<u64>>,
    pub injective_exists: bool,
    /// An injective hom when one exists.
    pub injective_example: Option<Vec<u64>>,
}

impl EquivariantHoms {
    pub fn source_dim(&self) -> usize {
        self.source_basis.len()
    }

    /// F_p-coordinates of an element of `H`.
    pub fn coordinates(&self, h: usize) -> Option<&[u64]> {
        self.coords.get(&h).map(Vec::as_slice)
    }

    /// Whether `phi`, given on every element of `H`, lies in the span of
    /// `basis`; values are in F_p coordinates of V[p].
    pub fn contains(&self, phi: impl Fn(usize) -> [u64; 2]) -> bool {
        let d = self.source_dim();
        let matrix: Vec<u64> = (0..2)
            .flat_map(|r| self.source_basis.iter().map(move |&b| (r, b)))
            .map(|(r, b)| phi(b)[r])
            .collect();
        let additive = self.coords.iter().all(|(&h, c)| {
            let v = apply(self.fp, &matrix, d, c);
            v == phi(h).map(|x| self.fp.reduce(x))
        });
        let span = howell_form(&ModMatrix::from_row_vecs(self.fp, 2 * d, &self.basis_or_zero()));
        additive && span.contains(&ModVector::new(self.fp, matrix))
    }

    fn basis_or_zero(&self) -> Vec<Vec<u64>> {
        if self.basis.is_empty() {
            vec![vec![0; 2 * self.source_dim()]]
        } else {
            self.basis.clone()
        }
    }
}

fn apply(fp: ModulusContext, m: &[u64], d: usize, x: &[u64]) -> [u64; 2] {
    std::array::from_fn(|r| {
        (0..d).fold(0, |acc, c| fp.add(acc, fp.mul(m[r * d + c], x[c])))
    })
}

/// `Hom_{F_p[G/H]}(H, V[p])` for a normal elementary abelian p-subgroup `H`.
pub fn equivariant_homs(g: &FiniteMatrixGroup, h: &[usize]) -> Result<EquivariantHoms> {
    let fp = g.ctx().with_exponent(1)?;
    let p = fp.p();
    if !g.is_normal(h) {
        return Err(Error::precondition("H is not a normal subgroup"));
    }
    let elementary = h.iter().all(|&a| {
        g.pow(a, p) == 0 && h.iter().all(|&b| g.mul(a, b) == g.mul(b, a))
    });
    if !elementary {
        return Err(Error::precondition("H is not elementary abelian of exponent p"));
    }

    // Greedy F_p-basis; each new element outside the span multiplies its size by p.
    let mut sorted = h.to_vec();
    sorted.sort_unstable();
    let mut source_basis = Vec::new();
    let mut coords: HashMap<usize, Vec<u64>> = HashMap::from([(0usize, Vec::new())]);
    for &x in &sorted {
        if coords.contains_key(&x) {
            continue;
        }
        let mut next = HashMap::with_capacity(coords.len() * p as usize);
        for (&s, c) in &coords {
            let mut acc = s;
            for e in 0..p {
                let mut cc = c.clone();
                cc.push(e);
                next.insert(acc, cc);
                acc = g.mul(acc, x);
            }
        }
        coords = next;
        source_basis.push(x);
    }
    let d = source_basis.len();
    for c in coords.values_mut() {
        c.resize(d, 0);
    }

    // Unknown Phi (2 x d). For each generator s of G: Phi C_s - A_s Phi = 0.
    let width = 2 * d;
    let mut equations: Vec<Vec<u64>> = Vec::new();
    for j in 0..g.num_generators() {
        let s = g.generator(j);
        let si = g.inverse(s);
        let conj: Vec<Vec<u64>> = source_basis
            .iter()
            .map(|&b| coords[&g.mul(g.mul(s, b), si)].clone())
            .collect();
        let a: Mat2 = g.matrix(s).reduce(fp);
        for r in 0..2 {
            for col in 0..d {
                // (Phi C)[r][col] = sum_k Phi[r][k] * conj[col][k]
                let mut row = vec![0u64; width];
                for k in 0..d {
                    row[r * d + k] = fp.add(row[r * d + k], conj[col][k]);
                }
                // (A Phi)[r][col] = sum_t A[r][t] Phi[t][col]
                for t in 0..2 {
                    row[t * d + col] = fp.sub(row[t * d + col], a.0[2 * r + t]);
                }
                equations.push(row);
            }
        }
    }
    let basis: Vec<Vec<u64>> = if width == 0 {
        Vec::new()
    } else if equations.is_empty() {
        howell_form(&ModMatrix::identity(fp, width))
            .rows()
            .iter()
            .map(|v| v.coords().to_vec())
            .collect()
    } else {
        kernel_basis(&ModMatrix::from_row_vecs(fp, width, &equations))
            .rows()
            .iter()
            .map(|v| v.coords().to_vec())
            .collect()
    };

    let injective_example = if d == 0 || d > 2 {
        None
    } else {
        find_injective(fp, d, &basis)?
    };
    Ok(EquivariantHoms {
        fp,
        source_basis,
        coords,
        basis,
        injective_exists: injective_example.is_some(),
        injective_example,
    })
}

fn find_injective(fp: ModulusContext, d: usize, basis: &[Vec<u64>]) -> Result<Option<Vec<u64>>> {
    let p = fp.p();
    let total = (p as u128).pow(basis.len() as u32);
    if total > INJECTIVITY_SEARCH_CAP {
        return Err(Error::Resource {
            what: "equivariant hom search".into(),
            cap: INJECTIVITY_SEARCH_CAP as usize,
        });
    }
    let mut digits = vec![0u64; basis.len()];
    loop {
        let mut m = vec![0u64; 2 * d];
        for (c, b) in digits.iter().zip(basis) {
            for (x, &y) in m.iter_mut().zip(b) {
                *x = fp.add(*x, fp.mul(*c, y));
            }
        }
        if rank(fp, d, &m) == d {
            return Ok(Some(m));
        }
        let mut carry = true;
        for dgt in digits.iter_mut() {
            *dgt += 1;
            if *dgt < p {
                carry = false;
                break;
            }
            *dgt = 0;
        }
        if carry {
            return Ok(None);
        }
    }
}

/// Column rank of a 2 x d matrix over F_p.
fn rank(fp: ModulusContext, d: usize, m: &[u64]) -> usize {
    let rows = vec![m[..d].to_vec(), m[d..].to_vec()];
    howell_form(&ModMatrix::from_row_vecs(fp, d, &rows)).rows().len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::DEFAULT_GROUP_CAP;

    #[test]
    fn trivial_action_gives_all_matrices() {
        // H = reduction kernel of <[[1,p],[0,1]], diag(1+p,1-p)>, G = H.
        let c = ModulusContext::new(5, 2).unwrap();
        let g = FiniteMatrixGroup::generate(
            c,
            &[Mat2::from_i64(c, [[1, 5], [0, 1]]), Mat2::from_i64(c, [[6, 0], [0, -4]])],
            DEFAULT_GROUP_CAP,
        )
        .unwrap();
        let h: Vec<usize> = (0..g.order()).collect();
        let homs = equivariant_homs(&g, &h).unwrap();
        assert_eq!(homs.source_dim(), 2);
        assert_eq!(homs.basis.len(), 4);
        assert!(homs.injective_exists);
    }

    #[test]
    fn rejects_non_elementary_subgroup() {
        let c = ModulusContext::new(5, 2).unwrap();
        let g = FiniteMatrixGroup::generate(c, &[Mat2::from_i64(c, [[1, 1], [0, 1]])], DEFAULT_GROUP_CAP)
            .unwrap();
        let h: Vec<usize> = (0..g.order()).collect();
        assert!(equivariant_homs(&g, &h).is_err());
    }
}
