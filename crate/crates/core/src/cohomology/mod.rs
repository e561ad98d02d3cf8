//! First cohomology of a finite matrix group with coefficients in V, V[p]
//! or V/V[p], together with the subgroup of classes satisfying the local
//! conditions.
//!
//! A cocycle is pinned down by its values on the generators, so the unknowns
//! are the `2k` coordinates of those values. Walking the left Cayley graph
//! expresses every value `Z_x` as a linear map `E_x` of the unknowns, and
//! every edge `x -> g_j x` contributes the consistency equation
//! `E_{g_j x} = S_j + g_j E_x`. Those equations are complete: if they hold
//! on every edge, the cocycle identity holds for all pairs by induction on
//! word length.

mod equivariant;
mod maps;
mod module;

pub use equivariant::{equivariant_homs, EquivariantHoms};
pub use maps::{
    inflate_class, inflation_restriction, restrict_class, restrict_to_indices,
    restriction_injective_on_local, InflationRestriction,
};
pub use module::{Module, ModuleKind};

use std::cell::OnceCell;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{ActingGroup, Mat2};
use crate::linalg::{
    dual_constraints, image_basis, kernel_basis, quotient_structure, solve_linear, ModMatrix,
    ModVector, QuotientStructure, RowSpanBuilder, SubmoduleBasis,
};

/// Class enumeration is used as a second route to H^1_loc up to this many classes.
pub const CLASS_ENUMERATION_LIMIT: u128 = 100_000;

/// Groups up to this order get the full |G|^2 cocycle-identity recheck of
/// every basis cocycle; larger groups are rechecked on Cayley edges only.
pub const EXHAUSTIVE_RECHECK_LIMIT: usize = 400;

/// A map from group elements to module values, stored as a full value table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cocycle {
    module: Module,
    values: Vec<[u64; 2]>,
}

impl Cocycle {
    pub fn new(module: Module, values: Vec<[u64; 2]>) -> Self {
        let ctx = module.ctx();
        let values = values.into_iter().map(|v| v.map(|x| ctx.reduce(x))).collect();
        Cocycle { module, values }
    }

    pub fn zero(module: Module, order: usize) -> Self {
        Cocycle {
            module,
            values: vec![[0, 0]; order],
        }
    }

    pub fn module(&self) -> Module {
        self.module
    }

    pub fn values(&self) -> &[[u64; 2]] {
        &self.values
    }

    pub fn value(&self, x: usize) -> [u64; 2] {
        self.values[x]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| *v == [0, 0])
    }

    pub fn add(&self, other: &Cocycle) -> Cocycle {
        assert_eq!(self.module, other.module);
        let ctx = self.module.ctx();
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| [ctx.add(a[0], b[0]), ctx.add(a[1], b[1])])
            .collect();
        Cocycle {
            module: self.module,
            values,
        }
    }

    pub fn scale(&self, s: u64) -> Cocycle {
        let ctx = self.module.ctx();
        Cocycle {
            module: self.module,
            values: self
                .values
                .iter()
                .map(|v| [ctx.mul(v[0], s), ctx.mul(v[1], s)])
                .collect(),
        }
    }

    /// The image of a V[p]-valued cocycle under the inclusion V[p] -> V.
    pub fn embed_in_full(&self) -> Result<Cocycle> {
        let full = Module::full(self.module.group_ctx());
        let values = self
            .values
            .iter()
            .map(|v| self.module.embed_in_full(*v))
            .collect::<Result<_>>()?;
        Ok(Cocycle {
            module: full,
            values,
        })
    }

    /// The coboundary `x -> x m - m`.
    pub fn coboundary<G: ActingGroup + ?Sized>(group: &G, module: Module, m: [u64; 2]) -> Cocycle {
        let ctx = module.ctx();
        let values = (0..group.order())
            .map(|x| {
                let w = module.act(group.action(x), m);
                [ctx.sub(w[0], m[0]), ctx.sub(w[1], m[1])]
            })
            .collect();
        Cocycle { module, values }
    }

    /// Checks `Z_{g x} = Z_g + g Z_x` on every Cayley edge and `Z_1 = 0`;
    /// by induction on word length this is the full cocycle identity.
    pub fn is_cocycle<G: ActingGroup + ?Sized>(&self, group: &G) -> bool {
        if self.values.len() != group.order() || self.values[group.identity()] != [0, 0] {
            return false;
        }
        let ctx = self.module.ctx();
        (0..group.num_generators()).all(|j| {
            let g = group.generator(j);
            let a = group.action(g);
            let zg = self.values[g];
            (0..group.order()).all(|x| {
                let gx = group.left_mul_generator(j, x);
                let w = self.module.act(a, self.values[x]);
                self.values[gx] == [ctx.add(zg[0], w[0]), ctx.add(zg[1], w[1])]
            })
        })
    }

    /// Checks `Z_{ab} = Z_a + a Z_b` for every pair.
    pub fn satisfies_identity_exhaustively<G: ActingGroup + ?Sized>(&self, group: &G) -> bool {
        if self.values.len() != group.order() {
            return false;
        }
        let ctx = self.module.ctx();
        (0..group.order()).all(|a| {
            let m = group.action(a);
            (0..group.order()).all(|b| {
                let w = self.module.act(m, self.values[b]);
                self.values[group.mul(a, b)]
                    == [ctx.add(self.values[a][0], w[0]), ctx.add(self.values[a][1], w[1])]
            })
        })
    }

    pub fn to_json(&self) -> Value {
        json!(self.values)
    }
}

/// Order, structure and representatives of H^1 or H^1_loc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Report {
    pub module: ModuleKind,
    pub order: u64,
    pub invariant_factors: Vec<u64>,
    pub generator_cocycles: Vec<Cocycle>,
    /// A local cocycle of order exactly p in H^1_loc that is not a
    /// coboundary; only populated for H^1_loc when the group is nontrivial.
    pub witness: Option<Cocycle>,
    /// Order found by enumerating classes, when that route was run.
    pub enumerated_order: Option<u64>,
}

impl H1Report {
    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn to_json(&self, group_label: &str) -> Value {
        json!({
            "group_label": group_label,
            "module": self.module,
            "order": self.order,
            "invariant_factors": self.invariant_factors,
            "witness": self.witness.as_ref().map(Cocycle::to_json),
        })
    }
}

/// Linear-algebra data for the cocycles of one (group, module) pair.
pub struct CocycleSystem<'g, G: ActingGroup + ?Sized> {
    group: &'g G,
    module: Module,
    /// Action of each element, reduced to the module's ring.
    actions: Vec<Mat2>,
    /// `E_x` as two rows of length `2k`.
    value_maps: Vec<[Vec<u64>; 2]>,
    /// Howell basis of the row space of the consistency equations.
    consistency: SubmoduleBasis,
    z1: SubmoduleBasis,
    b1: SubmoduleBasis,
    local_constraints: OnceCell<Vec<Vec<[u64; 2]>>>,
    z1_loc: OnceCell<SubmoduleBasis>,
}

impl<'g, G: ActingGroup + ?Sized> CocycleSystem<'g, G> {
    pub fn new(group: &'g G, module: Module) -> Result<Self> {
        if group.ctx() != module.group_ctx() {
            return Err(Error::contract("module and group use different moduli"));
        }
        let ctx = module.ctx();
        let order = group.order();
        let k = group.num_generators();
        let width = 2 * k;
        let actions: Vec<Mat2> = (0..order).map(|x| group.action(x).reduce(ctx)).collect();

        for j in 0..k {
            let a = actions[group.generator(j)];
            for x in 0..order {
                if actions[group.left_mul_generator(j, x)] != a.mul(actions[x], ctx) {
                    return Err(Error::precondition(format!(
                        "the group does not act through a homomorphism on {}",
                        module.kind()
                    )));
                }
            }
        }

        let mut value_maps: Vec<[Vec<u64>; 2]> = vec![[Vec::new(), Vec::new()]; order];
        let mut reached = vec![false; order];
        for &x in group.bfs_order() {
            reached[x] = true;
            value_maps[x] = match group.bfs_parent(x) {
                None => [vec![0; width], vec![0; width]],
                Some((j, y)) => {
                    let mut rows = apply_to_map(actions[group.generator(j)], &value_maps[y], ctx);
                    rows[0][2 * j] = ctx.add(rows[0][2 * j], 1);
                    rows[1][2 * j + 1] = ctx.add(rows[1][2 * j + 1], 1);
                    rows
                }
            };
        }
        if reached.contains(&false) {
            return Err(Error::contract("breadth-first order does not reach every element"));
        }

        let mut builder = RowSpanBuilder::new(ctx, width);
        for j in 0..k {
            let a = actions[group.generator(j)];
            for x in 0..order {
                let gx = group.left_mul_generator(j, x);
                let pushed = apply_to_map(a, &value_maps[x], ctx);
                for r in 0..2 {
                    let mut row: Vec<u64> = value_maps[gx][r]
                        .iter()
                        .zip(&pushed[r])
                        .map(|(&e, &f)| ctx.sub(e, f))
                        .collect();
                    row[2 * j + r] = ctx.sub(row[2 * j + r], 1);
                    builder.push(row);
                }
            }
        }
        let consistency = builder.finish();
        let z1 = kernel_basis(&consistency.as_matrix_or_empty(width));

        // B^1 is spanned by the coboundaries of e1 and e2, read on the generators.
        let coboundary_rows: Vec<Vec<u64>> = (0..2)
            .map(|i| {
                let mut e = [0u64; 2];
                e[i] = 1;
                (0..k)
                    .flat_map(|j| {
                        let w = actions[group.generator(j)].apply(e, ctx);
                        [ctx.sub(w[0], e[0]), ctx.sub(w[1], e[1])]
                    })
                    .collect()
            })
            .collect();
        let b1 = SubmoduleBasis::from_rows(ctx, width, coboundary_rows);
        debug_assert!(z1.contains_all(&b1));

        let system = CocycleSystem {
            group,
            module,
            actions,
            value_maps,
            consistency,
            z1,
            b1,
            local_constraints: OnceCell::new(),
            z1_loc: OnceCell::new(),
        };
        system.recheck_basis()?;
        Ok(system)
    }

    fn recheck_basis(&self) -> Result<()> {
        for row in self.z1.rows() {
            let c = self.cocycle_from_coords(row.coords());
            let ok = if self.group.order() <= EXHAUSTIVE_RECHECK_LIMIT {
                c.satisfies_identity_exhaustively(self.group)
            } else {
                c.is_cocycle(self.group)
            };
            if !ok {
                return Err(Error::Consistency(
                    "a basis cocycle fails the cocycle identity".into(),
                ));
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &'g G {
        self.group
    }

    pub fn module(&self) -> Module {
        self.module
    }

    /// Dimension of the generator-value coordinate space.
    pub fn coordinate_dim(&self) -> usize {
        2 * self.group.num_generators()
    }

    /// Z^1 in generator-value coordinates.
    pub fn cocycle_space(&self) -> &SubmoduleBasis {
        &self.z1
    }

    /// B^1 in generator-value coordinates.
    pub fn coboundary_space(&self) -> &SubmoduleBasis {
        &self.b1
    }

    /// Row space of the consistency equations harvested from the Cayley graph.
    pub fn consistency_equations(&self) -> &SubmoduleBasis {
        &self.consistency
    }

    pub fn cocycle_from_coords(&self, coords: &[u64]) -> Cocycle {
        let ctx = self.module.ctx();
        let values = self
            .value_maps
            .iter()
            .map(|m| [dot(ctx, &m[0], coords), dot(ctx, &m[1], coords)])
            .collect();
        Cocycle {
            module: self.module,
            values,
        }
    }

    /// Generator-value coordinates of a cocycle.
    pub fn coords_of(&self, c: &Cocycle) -> Vec<u64> {
        (0..self.group.num_generators())
            .flat_map(|j| c.values[self.group.generator(j)])
            .collect()
    }

    /// Per-element equations `K_x v = 0` cutting out `Im(x - 1)`.
    fn local_constraints(&self) -> &[Vec<[u64; 2]>] {
        self.local_constraints.get_or_init(|| {
            let ctx = self.module.ctx();
            self.actions
                .iter()
                .map(|a| {
                    let img = image_basis(&a.minus_identity(ctx).to_mod_matrix(ctx));
                    let k = dual_constraints(&img);
                    (0..k.rows())
                        .map(|r| [k.get(r, 0), k.get(r, 1)])
                        .filter(|r| *r != [0, 0])
                        .collect()
                })
                .collect()
        })
    }

    /// Whether `Z_x ∈ Im(x - 1)` for every element `x`.
    pub fn satisfies_local_conditions(&self, c: &Cocycle) -> bool {
        let ctx = self.module.ctx();
        self.local_constraints()
            .iter()
            .zip(&c.values)
            .all(|(rows, v)| {
                rows.iter()
                    .all(|r| ctx.add(ctx.mul(r[0], v[0]), ctx.mul(r[1], v[1])) == 0)
            })
    }

    /// The local cocycles `{Z ∈ Z^1 : Z_x ∈ Im(x - 1) for all x}`.
    pub fn local_cocycle_space(&self) -> &SubmoduleBasis {
        self.z1_loc.get_or_init(|| {
            let ctx = self.module.ctx();
            let width = self.coordinate_dim();
            let mut builder = RowSpanBuilder::new(ctx, width);
            for row in self.consistency.rows() {
                builder.push(row.coords().to_vec());
            }
            for (rows, map) in self.local_constraints().iter().zip(&self.value_maps) {
                for r in rows {
                    let eq: Vec<u64> = (0..width)
                        .map(|c| ctx.add(ctx.mul(r[0], map[0][c]), ctx.mul(r[1], map[1][c])))
                        .collect();
                    builder.push(eq);
                }
            }
            kernel_basis(&builder.finish().as_matrix_or_empty(width))
        })
    }

    /// `m` with `c = x m - m` for every element, if one exists.
    pub fn is_coboundary(&self, c: &Cocycle) -> Option<[u64; 2]> {
        let ctx = self.module.ctx();
        let order = self.group.order();
        let mut entries = Vec::with_capacity(4 * order);
        let mut rhs = Vec::with_capacity(2 * order);
        for (a, v) in self.actions.iter().zip(&c.values) {
            entries.extend_from_slice(&a.minus_identity(ctx).0);
            rhs.extend_from_slice(v);
        }
        let a = ModMatrix::new(ctx, 2 * order, 2, entries).expect("shape");
        let sol = solve_linear(&a, &ModVector::new(ctx, rhs)).expect("shape");
        sol.particular.map(|m| [m[0], m[1]])
    }

    pub fn h1(&self) -> Result<H1Report> {
        let q = quotient_structure(&self.z1, &self.b1)?;
        self.report(q, None)
    }

    pub fn h1_loc(&self) -> Result<H1Report> {
        let z1_loc = self.local_cocycle_space();
        if !z1_loc.contains_all(&self.b1) || !self.z1.contains_all(z1_loc) {
            return Err(Error::Consistency("expected B^1 ⊆ Z^1_loc ⊆ Z^1".into()));
        }
        let q = quotient_structure(z1_loc, &self.b1)?;
        let total = quotient_structure(&self.z1, &self.b1)?;
        let enumerated = if total.order() <= CLASS_ENUMERATION_LIMIT {
            Some(self.count_local_classes(&total))
        } else {
            None
        };
        if let Some(e) = enumerated {
            if e as u128 != q.order() {
                return Err(Error::Consistency(format!(
                    "H^1_loc has order {} by linear algebra but {e} by class enumeration",
                    q.order()
                )));
            }
        }
        let witness = match (q.invariant_factors.first(), q.generators.first()) {
            (Some(&f), Some(g)) => {
                let w = self.cocycle_from_coords(g.coords()).scale(f / self.module.ctx().p());
                if !self.satisfies_local_conditions(&w) || self.is_coboundary(&w).is_some() {
                    return Err(Error::Consistency(
                        "H^1_loc witness is not a local non-coboundary".into(),
                    ));
                }
                Some(w)
            }
            _ => None,
        };
        self.report(q, witness).map(|mut r| {
            r.enumerated_order = enumerated.map(|e| e as u64);
            r
        })
    }

    /// Every class of H^1 as a cocycle representative.
    pub fn enumerate_classes(&self, structure: &QuotientStructure) -> Vec<Cocycle> {
        let ctx = self.module.ctx();
        let width = self.coordinate_dim();
        let mut out = Vec::new();
        let mut digits = vec![0u64; structure.invariant_factors.len()];
        loop {
            let mut coords = vec![0u64; width];
            for (d, g) in digits.iter().zip(&structure.generators) {
                for (c, &x) in coords.iter_mut().zip(g.coords()) {
                    *c = ctx.add(*c, ctx.mul(*d, x));
                }
            }
            out.push(self.cocycle_from_coords(&coords));
            if !advance(&mut digits, &structure.invariant_factors) {
                return out;
            }
        }
    }

    fn count_local_classes(&self, total: &QuotientStructure) -> u128 {
        self.enumerate_classes(total)
            .iter()
            .filter(|c| self.satisfies_local_conditions(c))
            .count() as u128
    }

    /// Structure of H^1 as generators and invariant factors.
    pub fn h1_structure(&self) -> Result<QuotientStructure> {
        quotient_structure(&self.z1, &self.b1)
    }

    pub fn h1_loc_structure(&self) -> Result<QuotientStructure> {
        quotient_structure(self.local_cocycle_space(), &self.b1)
    }

    fn report(&self, q: QuotientStructure, witness: Option<Cocycle>) -> Result<H1Report> {
        let order = u64::try_from(q.order()).map_err(|_| Error::Resource {
            what: "cohomology group order".into(),
            cap: usize::MAX,
        })?;
        Ok(H1Report {
            module: self.module.kind(),
            order,
            invariant_factors: q.invariant_factors,
            generator_cocycles: q
                .generators
                .iter()
                .map(|g| self.cocycle_from_coords(g.coords()))
                .collect(),
            witness,
            enumerated_order: None,
        })
    }
}

fn advance(digits: &mut [u64], radices: &[u64]) -> bool {
    for (d, &r) in digits.iter_mut().zip(radices) {
        *d += 1;
        if *d < r {
            return true;
        }
        *d = 0;
    }
    false
}

#[inline]
fn dot(ctx: crate::linalg::ModulusContext, a: &[u64], b: &[u64]) -> u64 {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| ctx.add(acc, ctx.mul(x, y)))
}

/// `m * E` for a 2x2 matrix `m` and a 2-row map `E`.
fn apply_to_map(m: Mat2, e: &[Vec<u64>; 2], ctx: crate::linalg::ModulusContext) -> [Vec<u64>; 2] {
    let [a, b, c, d] = m.0;
    let combine = |x: u64, y: u64| -> Vec<u64> {
        e[0].iter()
            .zip(&e[1])
            .map(|(&u, &v)| ctx.add(ctx.mul(x, u), ctx.mul(y, v)))
            .collect()
    };
    [combine(a, b), combine(c, d)]
}

impl SubmoduleBasis {
    /// The basis as a matrix, or a single zero row when the span is zero.
    pub(crate) fn as_matrix_or_empty(&self, width: usize) -> ModMatrix {
        if self.is_zero() {
            ModMatrix::zero(self.ctx(), 1, width)
        } else {
            self.as_matrix()
        }
    }
}

/// Z^1(G, M) in generator-value coordinates.
pub fn cocycle_space<G: ActingGroup + ?Sized>(group: &G, module: Module) -> Result<SubmoduleBasis> {
    Ok(CocycleSystem::new(group, module)?.z1)
}

/// B^1(G, M) in generator-value coordinates.
pub fn coboundary_space<G: ActingGroup + ?Sized>(group: &G, module: Module) -> Result<SubmoduleBasis> {
    Ok(CocycleSystem::new(group, module)?.b1)
}

pub fn h1<G: ActingGroup + ?Sized>(group: &G, module: Module) -> Result<H1Report> {
    CocycleSystem::new(group, module)?.h1()
}

pub fn local_cocycle_space<G: ActingGroup + ?Sized>(group: &G, module: Module) -> Result<SubmoduleBasis> {
    Ok(CocycleSystem::new(group, module)?.local_cocycle_space().clone())
}

pub fn h1_loc<G: ActingGroup + ?Sized>(group: &G, module: Module) -> Result<H1Report> {
    CocycleSystem::new(group, module)?.h1_loc()
}

pub fn is_coboundary<G: ActingGroup + ?Sized>(group: &G, c: &Cocycle) -> Result<Option<[u64; 2]>> {
    Ok(CocycleSystem::new(group, c.module())?.is_coboundary(c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{FiniteMatrixGroup, DEFAULT_GROUP_CAP};
    use crate::linalg::ModulusContext;

    fn cyclic(ctx: ModulusContext, m: [[i64; 2]; 2]) -> FiniteMatrixGroup {
        FiniteMatrixGroup::generate(ctx, &[Mat2::from_i64(ctx, m)], DEFAULT_GROUP_CAP).unwrap()
    }

    #[test]
    fn trivial_group_has_no_cocycles() {
        let c = ModulusContext::new(5, 2).unwrap();
        let g = FiniteMatrixGroup::generate(c, &[], DEFAULT_GROUP_CAP).unwrap();
        let s = CocycleSystem::new(&g, Module::full(c)).unwrap();
        assert!(s.cocycle_space().is_zero());
        assert_eq!(s.h1().unwrap().order, 1);
        assert_eq!(s.h1_loc().unwrap().order, 1);
    }

    #[test]
    fn minus_identity_has_trivial_h1() {
        let c = ModulusContext::new(5, 2).unwrap();
        let g = cyclic(c, [[-1, 0], [0, -1]]);
        let s = CocycleSystem::new(&g, Module::full(c)).unwrap();
        assert_eq!(s.cocycle_space().order(), Some(625));
        assert_eq!(s.coboundary_space().order(), Some(625));
        assert_eq!(s.h1().unwrap().order, 1);
    }

    #[test]
    fn diagonal_coboundaries_have_order_p_squared() {
        let c = ModulusContext::new(5, 2).unwrap();
        let g = cyclic(c, [[6, 0], [0, -4]]);
        let s = CocycleSystem::new(&g, Module::full(c)).unwrap();
        assert_eq!(s.coboundary_space().order(), Some(25));
    }

    #[test]
    fn unipotent_mod_p_has_global_but_no_local_classes() {
        let c = ModulusContext::new(5, 1).unwrap();
        let g = cyclic(c, [[1, 1], [0, 1]]);
        let s = CocycleSystem::new(&g, Module::full(c)).unwrap();
        let h1 = s.h1().unwrap();
        assert_eq!((h1.order, h1.invariant_factors.clone()), (5, vec![5]));
        assert!(h1.generator_cocycles[0].satisfies_identity_exhaustively(&g));
        let loc = s.h1_loc().unwrap();
        assert_eq!(loc.order, 1);
        assert_eq!(loc.enumerated_order, Some(1));
        assert!(loc.witness.is_none());
    }

    #[test]
    fn coboundaries_are_recognised() {
        let c = ModulusContext::new(5, 2).unwrap();
        let g = cyclic(c, [[1, 1], [0, 1]]);
        let m = Module::full(c);
        let s = CocycleSystem::new(&g, m).unwrap();
        let b = Cocycle::coboundary(&g, m, [3, 7]);
        assert!(b.is_cocycle(&g));
        assert!(s.is_coboundary(&b).is_some());
        assert!(s.satisfies_local_conditions(&b));
        assert_eq!(s.is_coboundary(&Cocycle::zero(m, g.order())), Some([0, 0]));
        let h1 = s.h1().unwrap();
        for gen in &h1.generator_cocycles {
            assert!(s.is_coboundary(gen).is_none());
        }
    }

    #[test]
    fn coords_round_trip() {
        let c = ModulusContext::new(5, 2).unwrap();
        let g = cyclic(c, [[1, 1], [0, 1]]);
        let s = CocycleSystem::new(&g, Module::full(c)).unwrap();
        for row in s.cocycle_space().rows() {
            let z = s.cocycle_from_coords(row.coords());
            assert_eq!(s.coords_of(&z), row.coords());
        }
    }

    #[test]
    fn p_torsion_module_lives_mod_p() {
        let c = ModulusContext::new(5, 2).unwrap();
        let g = cyclic(c, [[1, 1], [0, 1]]);
        let m = Module::p_torsion(c);
        let s = CocycleSystem::new(&g, m).unwrap();
        // Same computation as for the unipotent group over F_5.
        assert_eq!(s.h1().unwrap().order, 5);
        let z = s.h1().unwrap().generator_cocycles[0].embed_in_full().unwrap();
        assert!(z.values().iter().all(|v| v[0] % 5 == 0 && v[1] % 5 == 0));
    }

    #[test]
    fn report_json_shape() {
        let c = ModulusContext::new(5, 1).unwrap();
        let g = cyclic(c, [[1, 1], [0, 1]]);
        let r = h1(&g, Module::full(c)).unwrap();
        let j = r.to_json("u");
        assert_eq!(j["module"], "V");
        assert_eq!(j["order"], 5);
        assert!(j["witness"].is_null());
    }
}
