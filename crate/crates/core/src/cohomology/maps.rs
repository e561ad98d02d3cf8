use super::{Cocycle, CocycleSystem, Module, CLASS_ENUMERATION_LIMIT};
use crate::error::{Error, Result};
use crate::group::{ActingGroup, FiniteMatrixGroup, QuotientGroup};
use crate::linalg::{ModVector, SubmoduleBasis};

/// Restriction of a cocycle on `group` to the subgroup `sub`; the result is
/// indexed by `sub`'s own element numbering.
pub fn restrict_class(group: &FiniteMatrixGroup, sub: &FiniteMatrixGroup, c: &Cocycle) -> Result<Cocycle> {
    if c.values().len() != group.order() {
        return Err(Error::contract("cocycle does not belong to this group"));
    }
    let embedding = group.embedding_of(sub)?;
    Ok(restrict_to_indices(c, &embedding))
}

/// The value table `x -> c[positions[x]]`.
pub fn restrict_to_indices(c: &Cocycle, positions: &[usize]) -> Cocycle {
    Cocycle::new(
        c.module(),
        positions.iter().map(|&x| c.value(x)).collect(),
    )
}

/// Inflation from `G/N` to `G`. The values must be fixed by `N`.
pub fn inflate_class(q: &QuotientGroup<'_>, c: &Cocycle) -> Result<Cocycle> {
    if c.values().len() != q.order() {
        return Err(Error::contract("cocycle does not belong to this quotient"));
    }
    let parent = q.parent();
    let module = c.module();
    for &s in q.normal_subgroup() {
        let a = parent.matrix(s);
        if let Some(v) = c.values().iter().find(|v| module.act(a, **v) != **v) {
            return Err(Error::precondition(format!(
                "value {v:?} is not fixed by the normal subgroup element {a}"
            )));
        }
    }
    let values = (0..parent.order()).map(|x| c.value(q.coset_of(x))).collect();
    let inflated = Cocycle::new(module, values);
    if !inflated.is_cocycle(parent) {
        return Err(Error::precondition("inflated table fails the cocycle identity"));
    }
    Ok(inflated)
}

/// Orders in `0 -> H^1(G/N, M) -> H^1(G, M) -> H^1(N, M)` for a module on
/// which `N` acts trivially.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InflationRestriction {
    pub quotient_h1_order: u128,
    pub inflation_image_order: u128,
    pub restriction_kernel_order: u128,
    /// Every class killed by restriction is inflated, and every inflated class is killed.
    pub kernel_equals_image: bool,
}

impl InflationRestriction {
    pub fn is_exact(&self) -> bool {
        self.kernel_equals_image && self.inflation_image_order == self.restriction_kernel_order
    }

    pub fn inflation_is_injective(&self) -> bool {
        self.inflation_image_order == self.quotient_h1_order
    }
}

fn enumeration_guard(order: u128) -> Result<()> {
    if order > CLASS_ENUMERATION_LIMIT {
        return Err(Error::Resource {
            what: "cohomology classes to enumerate".into(),
            cap: CLASS_ENUMERATION_LIMIT as usize,
        });
    }
    Ok(())
}

/// Compares the image of inflation with the kernel of restriction inside
/// H^1(G, M), class by class.
pub fn inflation_restriction(g: &FiniteMatrixGroup, normal: &[usize], module: Module) -> Result<InflationRestriction> {
    let q = QuotientGroup::new(g, normal)?;
    let sub = g.subgroup(normal)?;
    let embedding = g.embedding_of(&sub)?;

    let sys_q = CocycleSystem::new(&q, module)?;
    let sys_g = CocycleSystem::new(g, module)?;
    let sys_n = CocycleSystem::new(&sub, module)?;

    let hq = sys_q.h1_structure()?;
    enumeration_guard(hq.order())?;
    let inflated_rows: Vec<Vec<u64>> = sys_q
        .enumerate_classes(&hq)
        .iter()
        .map(|c| inflate_class(&q, c).map(|z| sys_g.coords_of(&z)))
        .collect::<Result<_>>()?;
    let width = sys_g.coordinate_dim();
    let image = SubmoduleBasis::from_rows(module.ctx(), width, inflated_rows)
        .join(sys_g.coboundary_space())?;
    let b1_log = sys_g.coboundary_space().log_order();
    let inflation_image_order = (module.ctx().p() as u128).pow(image.log_order() - b1_log);

    let hg = sys_g.h1_structure()?;
    enumeration_guard(hg.order())?;
    let mut restriction_kernel_order = 0u128;
    let mut kernel_equals_image = true;
    for c in sys_g.enumerate_classes(&hg) {
        let killed = sys_n.is_coboundary(&restrict_to_indices(&c, &embedding)).is_some();
        let inflated = image.contains(&ModVector::new(module.ctx(), sys_g.coords_of(&c)));
        if killed {
            restriction_kernel_order += 1;
        }
        if killed != inflated {
            kernel_equals_image = false;
        }
    }
    Ok(InflationRestriction {
        quotient_h1_order: hq.order(),
        inflation_image_order,
        restriction_kernel_order,
        kernel_equals_image,
    })
}

/// Number of classes of H^1_loc(G, M) and whether each nonzero one stays
/// nonzero after restriction to `sub`.
pub fn restriction_injective_on_local(
    g: &FiniteMatrixGroup,
    sub: &FiniteMatrixGroup,
    module: Module,
) -> Result<(u128, bool)> {
    let embedding = g.embedding_of(sub)?;
    let sys_g = CocycleSystem::new(g, module)?;
    let sys_s = CocycleSystem::new(sub, module)?;
    let loc = sys_g.h1_loc_structure()?;
    enumeration_guard(loc.order())?;
    let classes = sys_g.enumerate_classes(&loc);
    // The first enumerated class is the zero class.
    let injective = classes
        .iter()
        .skip(1)
        .all(|c| sys_s.is_coboundary(&restrict_to_indices(c, &embedding)).is_none());
    Ok((loc.order(), injective))
}
