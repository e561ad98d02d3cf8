use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::Mat2;
use crate::linalg::{ModVector, ModulusContext};

/// Which piece of V = (Z/p^n)^2 a group acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ModuleKind {
    /// V itself.
    #[serde(rename = "V")]
    Full,
    /// The p-torsion V[p] = p^(n-1) V, identified with F_p^2 (the action factors through reduction mod p).
    #[serde(rename = "V[p]")]
    PTorsion,
    /// V / V[p], identified with (Z/p^(n-1))^2.
    #[serde(rename = "V/V[p]")]
    PQuotient,
}

impl fmt::Display for ModuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModuleKind::Full => "V",
            ModuleKind::PTorsion => "V[p]",
            ModuleKind::PQuotient => "V/V[p]",
        })
    }
}

/// A module descriptor: the kind together with the ring the group lives over.
/// Values are stored in the module's own coordinate ring (`ctx`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Module {
    kind: ModuleKind,
    group_ctx: ModulusContext,
    ctx: ModulusContext,
}

impl Module {
    pub fn new(kind: ModuleKind, group_ctx: ModulusContext) -> Result<Self> {
        let level = match kind {
            ModuleKind::Full => group_ctx.n(),
            ModuleKind::PTorsion => 1,
            ModuleKind::PQuotient => {
                if group_ctx.n() < 2 {
                    return Err(Error::input("V/V[p] is zero when n = 1"));
                }
                group_ctx.n() - 1
            }
        };
        Ok(Module {
            kind,
            group_ctx,
            ctx: group_ctx.with_exponent(level)?,
        })
    }

    pub fn full(group_ctx: ModulusContext) -> Self {
        Module::new(ModuleKind::Full, group_ctx).expect("V always exists")
    }

    pub fn p_torsion(group_ctx: ModulusContext) -> Self {
        Module::new(ModuleKind::PTorsion, group_ctx).expect("V[p] always exists")
    }

    pub fn kind(&self) -> ModuleKind {
        self.kind
    }

    /// Coefficient ring of the module's coordinates.
    pub fn ctx(&self) -> ModulusContext {
        self.ctx
    }

    pub fn group_ctx(&self) -> ModulusContext {
        self.group_ctx
    }

    /// Number of elements of the module.
    pub fn order(&self) -> u128 {
        (self.ctx.modulus() as u128).pow(2)
    }

    #[inline]
    pub fn act(&self, m: Mat2, v: [u64; 2]) -> [u64; 2] {
        m.reduce(self.ctx).apply(v, self.ctx)
    }

    /// Image of a V[p] value in V (multiplication by p^(n-1) on lifts).
    pub fn embed_in_full(&self, v: [u64; 2]) -> Result<[u64; 2]> {
        match self.kind {
            ModuleKind::Full => Ok(v),
            ModuleKind::PTorsion => {
                let g = self.group_ctx;
                let s = g.p_pow(g.n() - 1);
                Ok([g.mul(v[0], s), g.mul(v[1], s)])
            }
            ModuleKind::PQuotient => Err(Error::contract("V/V[p] does not embed in V")),
        }
    }

    pub fn vector(&self, v: [u64; 2]) -> ModVector {
        ModVector::new(self.ctx, v.to_vec())
    }
}
