//! Group definition files.
//!
//! ```json
//! {"p": 5, "n": 2, "generators": [[[4, 0], [0, 1]], [[1, 5], [0, 1]]], "label": "example"}
//! ```
//!
//! Entries may be negative and are reduced mod p^n. The optional `"module"`
//! key selects `"V"` (default) or `"V[p]"`.

use serde::Deserialize;

use crate::cohomology::Module;
use crate::error::{Error, Result};
use crate::group::{FiniteMatrixGroup, Mat2};
use crate::linalg::ModulusContext;

#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDefinition {
    pub p: u64,
    pub n: u32,
    pub generators: Vec<[[i64; 2]; 2]>,
    #[serde(default)]
    pub label: Option<String>,
    #[serde(default)]
    pub module: Option<String>,
}

impl GroupDefinition {
    pub fn parse(text: &str) -> Result<GroupDefinition> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn ctx(&self) -> Result<ModulusContext> {
        ModulusContext::new(self.p, self.n)
    }

    pub fn label(&self) -> &str {
        self.label.as_deref().unwrap_or("unnamed")
    }

    pub fn module(&self) -> Result<Module> {
        let ctx = self.ctx()?;
        match self.module.as_deref() {
            None | Some("V") => Ok(Module::full(ctx)),
            Some("V[p]") => Ok(Module::p_torsion(ctx)),
            Some(other) => Err(Error::input(format!(
                "unknown module {other:?}, expected \"V\" or \"V[p]\""
            ))),
        }
    }

    pub fn build(&self, cap: usize) -> Result<FiniteMatrixGroup> {
        let ctx = self.ctx()?;
        let gens: Vec<Mat2> = self.generators.iter().map(|g| Mat2::from_i64(ctx, *g)).collect();
        FiniteMatrixGroup::generate(ctx, &gens, cap)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::ActingGroup;

    #[test]
    fn negative_entries_are_reduced() {
        let d = GroupDefinition::parse(r#"{"p":5,"n":1,"generators":[[[-1,0],[0,1]]]}"#).unwrap();
        let g = d.build(100).unwrap();
        assert_eq!(g.generators()[0], Mat2([4, 0, 0, 1]));
        assert_eq!(g.order(), 2);
        assert_eq!(d.label(), "unnamed");
    }

    #[test]
    fn parse_error_has_position() {
        let e = GroupDefinition::parse("{\n  \"p\": 5,\n  oops\n}").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
    }

    #[test]
    fn module_key() {
        let d = GroupDefinition::parse(r#"{"p":5,"n":2,"generators":[],"module":"V[p]"}"#).unwrap();
        assert_eq!(d.module().unwrap(), Module::p_torsion(d.ctx().unwrap()));
        let d = GroupDefinition::parse(r#"{"p":5,"n":2,"generators":[],"module":"W"}"#).unwrap();
        assert!(d.module().is_err());
    }

    #[test]
    fn non_prime_rejected() {
        let d = GroupDefinition::parse(r#"{"p":6,"n":1,"generators":[]}"#).unwrap();
        assert!(matches!(d.build(10), Err(Error::Input(_))));
    }
}
