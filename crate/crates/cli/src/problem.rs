use std::path::Path;

use serde::Deserialize;

use crate::args::Common;
use crate::CliError;

/// A problem description; every present entry overrides the matching flag.
#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub field: Option<String>,
    pub vars: Option<VarList>,
    pub form: Option<String>,
    pub poly: Option<String>,
    pub invariants: Option<Vec<String>>,
    #[serde(default)]
    pub options: ProblemOptions,
}

#[derive(Debug, Clone, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum VarList {
    Csv(String),
    List(Vec<String>),
}

#[derive(Debug, Clone, Default, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ProblemOptions {
    pub max_degree: Option<u32>,
    pub strategy: Option<String>,
}

impl ProblemFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Input(format!("problem file: {e}")))
    }

    pub fn apply(&self, c: &mut Common) {
        if let Some(f) = &self.field {
            c.field = Some(f.clone());
        }
        match &self.vars {
            Some(VarList::Csv(s)) => c.vars = Some(s.clone()),
            Some(VarList::List(v)) => c.vars = Some(v.join(",")),
            None => {}
        }
        if let Some(f) = &self.form {
            c.form = Some(f.clone());
        }
        if let Some(p) = &self.poly {
            c.poly = Some(p.clone());
        }
        if let Some(inv) = &self.invariants {
            c.invariants = Some(inv.join(";"));
        }
        if let Some(d) = self.options.max_degree {
            c.max_degree = Some(d);
        }
        if let Some(s) = &self.options.strategy {
            c.strategy = Some(s.clone());
        }
    }
}
