use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use ntpgraph::{catalog, parse_group_file, PermutationGroup};

/// Where a group comes from on the command line.
#[derive(Clone, Debug)]
pub enum GroupSource {
    Catalog { name: String, n: Option<usize> },
    File(PathBuf),
}

impl GroupSource {
    /// Identifier used in reports: the catalog expression or the file path.
    pub fn id(&self) -> String {
        match self {
            GroupSource::Catalog { name, n: Some(n) } => format!("{name}({n})"),
            GroupSource::Catalog { name, n: None } => name.clone(),
            GroupSource::File(path) => path.display().to_string(),
        }
    }

    pub fn resolve(&self) -> Result<PermutationGroup> {
        match self {
            GroupSource::Catalog { name, n } => {
                catalog::by_name(name.trim(), *n).with_context(|| format!("catalog group {:?}", self.id()))
            }
            GroupSource::File(path) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                parse_group_file(&text).with_context(|| format!("in {}", path.display()))
            }
        }
    }
}
