//! Case classification of subgroups of GL2(F_p) and an inventory scan over
//! the subgroups of order prime to p.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cohomology::{CocycleSystem, Module};
use crate::error::{Error, Result};
use crate::group::{eigen_data, fixed_submodule, ActingGroup, FiniteMatrixGroup, Mat2, DEFAULT_GROUP_CAP};
use crate::linalg::{is_prime, ModulusContext};

/// Largest prime accepted by [`scan_prime_to_p`].
pub const SCAN_PRIME_CAP: u64 = 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    Case1,
    Case2,
    Case3,
    None,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Case1 => "Case1",
            CaseTag::Case2 => "Case2",
            CaseTag::Case3 => "Case3",
            CaseTag::None => "None",
        }
    }
}

/// Data from which the case tag can be rechecked by direct matrix computations.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CaseEvidence {
    /// Case1: a generator of the cyclic group. Case2: an element of order 3.
    pub generator: Option<Mat2>,
    pub eigenvalue: Option<u64>,
    pub common_eigenvector: Option<[u64; 2]>,
    /// `"Z/3"` or `"S3"` in Case2.
    pub isomorphism_type: Option<String>,
    pub order_p_element: Option<Mat2>,
    /// Element of order dividing 2 (Case3).
    pub involution: Option<Mat2>,
}

impl CaseEvidence {
    pub fn to_json(&self) -> Value {
        json!({
            "generator": self.generator.map(|m| m.rows()),
            "eigenvalue": self.eigenvalue,
            "common_eigenvector": self.common_eigenvector,
            "isomorphism_type": self.isomorphism_type,
            "order_p_element": self.order_p_element.map(|m| m.rows()),
            "involution": self.involution.map(|m| m.rows()),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CaseVerdict {
    pub case: CaseTag,
    pub evidence: CaseEvidence,
}

fn require_level_one(g: &FiniteMatrixGroup) -> Result<ModulusContext> {
    let ctx = g.ctx();
    if ctx.n() != 1 {
        return Err(Error::input(format!(
            "classification needs a group over F_p, got modulus {}",
            ctx.modulus()
        )));
    }
    Ok(ctx)
}

/// Nonzero vector fixed by `m`, if 1 is an eigenvalue.
fn fixed_vector(m: Mat2, ctx: ModulusContext) -> Option<[u64; 2]> {
    eigen_data(m, ctx)
        .eigenvectors
        .into_iter()
        .find(|(l, _)| *l == 1)
        .and_then(|(_, vs)| vs.first().copied())
}

fn case1(g: &FiniteMatrixGroup, ctx: ModulusContext) -> Option<CaseEvidence> {
    let order = g.order() as u64;
    if (ctx.p() - 1) % order != 0 {
        return None;
    }
    let x = (0..g.order()).find(|&x| g.element_order(x) == order)?;
    let m = g.matrix(x);
    let v = fixed_vector(m, ctx)?;
    Some(CaseEvidence {
        generator: Some(m),
        eigenvalue: Some(1),
        common_eigenvector: Some(v),
        ..Default::default()
    })
}

fn s3_type(g: &FiniteMatrixGroup) -> Option<&'static str> {
    match g.order() {
        3 => Some("Z/3"),
        6 if !g.is_abelian() => Some("S3"),
        _ => None,
    }
}

fn case2(g: &FiniteMatrixGroup, ctx: ModulusContext) -> Option<CaseEvidence> {
    if ctx.p() % 3 != 2 {
        return None;
    }
    let kind = s3_type(g)?;
    let threes: Vec<Mat2> = (0..g.order())
        .filter(|&x| g.element_order(x) == 3)
        .map(|x| g.matrix(x))
        .collect();
    if !threes.iter().all(|&m| eigen_data(m, ctx).irreducible) {
        return None;
    }
    Some(CaseEvidence {
        generator: threes.first().copied(),
        isomorphism_type: Some(kind.to_string()),
        ..Default::default()
    })
}

/// `(σ, g, v)` with σ of order p, g^2 = 1, `<σ, g> = G` and `σv = gv = v`.
fn case3_witness(g: &FiniteMatrixGroup, ctx: ModulusContext) -> Option<(Mat2, Mat2, [u64; 2])> {
    let p = ctx.p();
    let order = g.order() as u64;
    if order != p && order != 2 * p {
        return None;
    }
    let sigmas = (0..g.order()).filter(|&x| g.element_order(x) == p);
    let invols: Vec<usize> = (0..g.order()).filter(|&x| g.element_order(x) <= 2).collect();
    for s in sigmas {
        for &t in &invols {
            let (sm, tm) = (g.matrix(s), g.matrix(t));
            let fixed = fixed_submodule(&[sm, tm], ctx);
            let Some(v) = fixed.rows().first().map(|r| [r[0], r[1]]) else {
                continue;
            };
            match FiniteMatrixGroup::generate(ctx, &[sm, tm], g.order()) {
                Ok(h) if h.order() == g.order() => return Some((sm, tm, v)),
                _ => {}
            }
        }
    }
    None
}

fn case3(g: &FiniteMatrixGroup, ctx: ModulusContext) -> Option<CaseEvidence> {
    case3_witness(g, ctx).map(|(s, t, v)| CaseEvidence {
        eigenvalue: Some(1),
        common_eigenvector: Some(v),
        order_p_element: Some(s),
        involution: Some(t),
        ..Default::default()
    })
}

/// Classifies a subgroup of GL2(F_p), trying the cases in order 1, 2, 3.
pub fn classify_case(g: &FiniteMatrixGroup) -> Result<CaseVerdict> {
    let ctx = require_level_one(g)?;
    let found = [
        (CaseTag::Case1, case1(g, ctx)),
        (CaseTag::Case2, case2(g, ctx)),
        (CaseTag::Case3, case3(g, ctx)),
    ]
    .into_iter()
    .find_map(|(tag, e)| e.map(|e| (tag, e)));
    Ok(match found {
        Some((case, evidence)) => CaseVerdict { case, evidence },
        None => CaseVerdict {
            case: CaseTag::None,
            evidence: CaseEvidence::default(),
        },
    })
}

impl CaseVerdict {
    /// Rechecks the tag against `g` using only the recorded evidence plus
    /// the group's element list.
    pub fn reverify(&self, g: &FiniteMatrixGroup) -> bool {
        let ctx = g.ctx();
        if ctx.n() != 1 {
            return false;
        }
        let order = g.order() as u64;
        let e = &self.evidence;
        match self.case {
            CaseTag::Case1 => {
                let (Some(m), Some(v)) = (e.generator, e.common_eigenvector) else {
                    return false;
                };
                g.index_of(&m).is_some_and(|x| g.element_order(x) == order)
                    && (ctx.p() - 1) % order == 0
                    && v != [0, 0]
                    && m.apply(v, ctx) == v
            }
            CaseTag::Case2 => {
                let (Some(m), Some(kind)) = (e.generator, e.isomorphism_type.as_deref()) else {
                    return false;
                };
                ctx.p() % 3 == 2
                    && s3_type(g) == Some(kind)
                    && g.index_of(&m).is_some_and(|x| g.element_order(x) == 3)
                    && (0..g.order())
                        .filter(|&x| g.element_order(x) == 3)
                        .all(|x| eigen_data(g.matrix(x), ctx).irreducible)
            }
            CaseTag::Case3 => {
                let (Some(s), Some(t), Some(v)) = (e.order_p_element, e.involution, e.common_eigenvector)
                else {
                    return false;
                };
                let generated = FiniteMatrixGroup::generate(ctx, &[s, t], g.order())
                    .is_ok_and(|h| h.order() == g.order() && g.embedding_of(&h).is_ok());
                generated
                    && s.pow(ctx.p(), ctx).is_identity()
                    && !s.is_identity()
                    && t.mul(t, ctx).is_identity()
                    && v != [0, 0]
                    && s.apply(v, ctx) == v
                    && t.apply(v, ctx) == v
            }
            CaseTag::None => classify_case(g).is_ok_and(|v| v.case == CaseTag::None),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"case": self.case.as_str(), "evidence": self.evidence.to_json()})
    }
}

/// Outcome of the necessary-condition sieve with one line per shape tried.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShapeFilter {
    pub passes: bool,
    pub reasons: Vec<String>,
}

/// Whether the mod-p image of `g` has one of the shapes a group with nonzero
/// local cohomology at some level must have: cyclic of order dividing p - 1
/// with eigenvalue 1, Z/3 or S3, or generated by an element of order p and an
/// element of order dividing 2 other than -Id.
pub fn necessary_shape_filter(g: &FiniteMatrixGroup) -> ShapeFilter {
    let g1 = if g.ctx().n() == 1 {
        g.clone()
    } else {
        match g.reduce_to(1) {
            Ok(h) => h,
            Err(e) => {
                return ShapeFilter {
                    passes: false,
                    reasons: vec![format!("reduction mod p failed: {e}")],
                }
            }
        }
    };
    let ctx = g1.ctx();
    let p = ctx.p();
    let order = g1.order() as u64;
    let mut reasons = Vec::new();

    let cyclic = case1(&g1, ctx).is_some();
    reasons.push(if cyclic {
        "cyclic of order dividing p - 1 with eigenvalue 1".to_string()
    } else {
        format!("not cyclic of order dividing {} with eigenvalue 1", p - 1)
    });

    let s3 = s3_type(&g1);
    reasons.push(match s3 {
        Some(kind) => format!("isomorphic to {kind}"),
        None => "not isomorphic to Z/3 or S3".to_string(),
    });

    let minus_id = Mat2([p - 1, 0, 0, p - 1]);
    let borel = (order == p || order == 2 * p)
        && (0..g1.order())
            .filter(|&x| g1.element_order(x) == p)
            .any(|s| {
                (0..g1.order())
                    .filter(|&t| g1.element_order(t) <= 2 && g1.matrix(t) != minus_id)
                    .any(|t| {
                        FiniteMatrixGroup::generate(ctx, &[g1.matrix(s), g1.matrix(t)], g1.order())
                            .is_ok_and(|h| h.order() == g1.order())
                    })
            });
    reasons.push(if borel {
        "generated by an element of order p and an involution other than -Id".to_string()
    } else {
        "not generated by an element of order p and an involution other than -Id".to_string()
    });

    ShapeFilter {
        passes: cyclic || s3.is_some() || borel,
        reasons,
    }
}

#[derive(Clone, Debug)]
pub struct ScanEntry {
    pub verdict: CaseVerdict,
    pub order: usize,
    pub generators: Vec<Mat2>,
    pub fingerprint: Vec<(u64, u64)>,
    pub passes_shape_filter: bool,
    pub h1_loc_order: u128,
}

impl ScanEntry {
    pub fn to_json(&self) -> Value {
        json!({
            "case": self.verdict.case.as_str(),
            "order": self.order,
            "generators": self.generators.iter().map(|m| m.rows()).collect::<Vec<_>>(),
            "evidence": self.verdict.evidence.to_json(),
            "passes_shape_filter": self.passes_shape_filter,
            "h1_loc_order": self.h1_loc_order as u64,
        })
    }
}

/// Conjugation-invariant fingerprint: sorted (trace, det) of every element.
/// Distinct conjugacy classes may collide; the scan accepts that.
pub fn conjugacy_fingerprint(g: &FiniteMatrixGroup) -> Vec<(u64, u64)> {
    let ctx = g.ctx();
    let mut f: Vec<(u64, u64)> = g.elements().iter().map(|m| (m.trace(ctx), m.det(ctx))).collect();
    f.sort_unstable();
    f
}

fn gl2(ctx: ModulusContext) -> Vec<Mat2> {
    let p = ctx.p();
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    let m = Mat2([a, b, c, d]);
                    if m.det(ctx) != 0 {
                        out.push(m);
                    }
                }
            }
        }
    }
    out
}

fn matrix_order(m: Mat2, ctx: ModulusContext) -> u64 {
    let mut acc = m;
    let mut k = 1;
    while !acc.is_identity() {
        acc = acc.mul(m, ctx);
        k += 1;
    }
    k
}

/// Inventory of the cyclic subgroups of GL2(F_p) of order prime to p and the
/// subgroups `<x, y>` with x of order 3 and y an involution inverting x,
/// one entry per (case, fingerprint), sorted by case, order and generators.
pub fn scan_prime_to_p(p: u64) -> Result<Vec<ScanEntry>> {
    if !is_prime(p) || p < 5 {
        return Err(Error::input(format!("{p} is not a prime >= 5")));
    }
    if p > SCAN_PRIME_CAP {
        return Err(Error::Resource {
            what: format!("scan over GL2(F_{p})"),
            cap: SCAN_PRIME_CAP as usize,
        });
    }
    let ctx = ModulusContext::new(p, 1)?;
    let all = gl2(ctx);
    let orders: Vec<u64> = all.par_iter().map(|&m| matrix_order(m, ctx)).collect();

    let mut candidates: Vec<Vec<Mat2>> = all
        .iter()
        .zip(&orders)
        .filter(|(_, &o)| o % p != 0)
        .map(|(&m, _)| vec![m])
        .collect();
    let threes: Vec<Mat2> = all.iter().zip(&orders).filter(|(_, &o)| o == 3).map(|(&m, _)| m).collect();
    let twos: Vec<Mat2> = all.iter().zip(&orders).filter(|(_, &o)| o == 2).map(|(&m, _)| m).collect();
    for &x in &threes {
        let x_inv = x.mul(x, ctx);
        for &y in &twos {
            if y.mul(x, ctx).mul(y, ctx) == x_inv {
                candidates.push(vec![x, y]);
            }
        }
    }

    let groups: Vec<FiniteMatrixGroup> = candidates
        .par_iter()
        .map(|gens| FiniteMatrixGroup::generate(ctx, gens, DEFAULT_GROUP_CAP))
        .collect::<Result<_>>()?;

    // Keep the subgroup with the smallest sorted element list per key.
    let mut reps: BTreeMap<(CaseTag, Vec<(u64, u64)>), (Vec<Mat2>, FiniteMatrixGroup, CaseVerdict)> =
        BTreeMap::new();
    let classified: Vec<(CaseVerdict, Vec<(u64, u64)>, Vec<Mat2>)> = groups
        .par_iter()
        .map(|h| {
            let mut els = h.elements().to_vec();
            els.sort_unstable();
            Ok((classify_case(h)?, conjugacy_fingerprint(h), els))
        })
        .collect::<Result<_>>()?;
    for (h, (verdict, fp, els)) in groups.into_iter().zip(classified) {
        let key = (verdict.case, fp);
        match reps.get(&key) {
            Some((best, _, _)) if *best <= els => {}
            _ => {
                reps.insert(key, (els, h, verdict));
            }
        }
    }

    let mut entries: Vec<ScanEntry> = reps
        .into_par_iter()
        .map(|((_, fingerprint), (_, h, verdict))| {
            let loc = CocycleSystem::new(&h, Module::full(ctx))?.h1_loc()?;
            Ok(ScanEntry {
                order: h.order(),
                generators: h.generators().to_vec(),
                passes_shape_filter: necessary_shape_filter(&h).passes,
                h1_loc_order: loc.order as u128,
                fingerprint,
                verdict,
            })
        })
        .collect::<Result<_>>()?;
    entries.sort_by(|a, b| {
        (a.verdict.case, a.order, &a.generators).cmp(&(b.verdict.case, b.order, &b.generators))
    });
    Ok(entries)
}

/// The inventory as a JSON array.
pub fn inventory_json(entries: &[ScanEntry]) -> Value {
    Value::Array(entries.iter().map(ScanEntry::to_json).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(p: u64, gens: &[[[i64; 2]; 2]]) -> FiniteMatrixGroup {
        let c = ModulusContext::new(p, 1).unwrap();
        let gens: Vec<Mat2> = gens.iter().map(|g| Mat2::from_i64(c, *g)).collect();
        FiniteMatrixGroup::generate(c, &gens, DEFAULT_GROUP_CAP).unwrap()
    }

    #[test]
    fn diagonal_two_is_case1() {
        let g = group(5, &[[[2, 0], [0, 1]]]);
        let v = classify_case(&g).unwrap();
        assert_eq!(v.case, CaseTag::Case1);
        assert!(v.reverify(&g));
    }

    #[test]
    fn borel_pair_is_case3() {
        let g = group(5, &[[[1, 1], [0, 1]], [[1, 0], [0, -1]]]);
        let v = classify_case(&g).unwrap();
        assert_eq!(v.case, CaseTag::Case3);
        assert_eq!(v.evidence.common_eigenvector, Some([1, 0]));
        assert!(v.reverify(&g));
    }

    #[test]
    fn minus_identity_fails_filter() {
        let g = group(5, &[[[-1, 0], [0, -1]]]);
        assert!(!necessary_shape_filter(&g).passes);
        assert_eq!(classify_case(&g).unwrap().case, CaseTag::None);
    }

    #[test]
    fn full_gl2_fails_filter() {
        let g = group(5, &[[[2, 0], [0, 1]], [[-1, 1], [-1, 0]]]);
        assert_eq!(g.order(), 480);
        assert!(!necessary_shape_filter(&g).passes);
    }

    #[test]
    fn level_two_is_rejected() {
        let c = ModulusContext::new(5, 2).unwrap();
        let g = FiniteMatrixGroup::generate(c, &[], 1).unwrap();
        assert!(matches!(classify_case(&g), Err(Error::Input(_))));
    }

    #[test]
    fn scan_cap() {
        assert!(matches!(scan_prime_to_p(17), Err(Error::Resource { .. })));
        assert!(matches!(scan_prime_to_p(9), Err(Error::Input(_))));
    }
}
