//! JSON file formats.
//!
//! Group: `{"order": n, "table": [[...]], "names": ["e", ...]}`.
//!
//! Action: `{"group": <group object | reference>, "carrier": m, "labels": [...],
//! "mu": [[[...]]]}`, where a reference is a gallery group name or a path to a
//! group file, resolved relative to the action file. Loading re-validates
//! every axiom.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::action::BinaryGSpace;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::registry;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Inline(FiniteGroup),
    Reference(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ActionFile {
    pub group: GroupRef,
    pub carrier: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub mu: Vec<Vec<Vec<usize>>>,
}

impl ActionFile {
    pub fn from_space(space: &BinaryGSpace) -> Self {
        ActionFile {
            group: GroupRef::Inline(space.group().clone()),
            carrier: space.carrier_size(),
            labels: space.labels().map(<[String]>::to_vec),
            mu: space.nested_table(),
        }
    }

    /// Resolves the group and validates the table. `base_dir` anchors
    /// relative group-file references.
    pub fn into_space(self, base_dir: Option<&Path>) -> Result<BinaryGSpace> {
        let group = match self.group {
            GroupRef::Inline(g) => g,
            GroupRef::Reference(name) => match registry::group_by_name(&name) {
                Ok(g) => g,
                Err(_) => {
                    let path = match base_dir {
                        Some(dir) => dir.join(&name),
                        None => name.into(),
                    };
                    load_group(&path)?
                }
            },
        };
        BinaryGSpace::new(group, self.carrier, self.mu, self.labels)
    }
}

pub fn group_to_json(group: &FiniteGroup) -> Result<String> {
    Ok(serde_json::to_string(group)?)
}

pub fn group_from_json(text: &str) -> Result<FiniteGroup> {
    // serde wraps the validation error; surface the original when possible
    let repr: serde_json::Value = serde_json::from_str(text)?;
    let table: Vec<Vec<usize>> = serde_json::from_value(
        repr.get("table")
            .cloned()
            .ok_or_else(|| Error::Shape("group file has no `table`".into()))?,
    )?;
    let order = repr.get("order").and_then(serde_json::Value::as_u64);
    if order != Some(table.len() as u64) {
        return Err(Error::Shape(format!(
            "`order` is {order:?} but table has {} rows",
            table.len()
        )));
    }
    let names = match repr.get("names") {
        Some(v) if !v.is_null() => Some(serde_json::from_value(v.clone())?),
        _ => None,
    };
    FiniteGroup::new(table, names)
}

pub fn load_group(path: &Path) -> Result<FiniteGroup> {
    group_from_json(&std::fs::read_to_string(path)?)
}

pub fn action_to_json(space: &BinaryGSpace) -> Result<String> {
    Ok(serde_json::to_string(&ActionFile::from_space(space))?)
}

pub fn action_from_json(text: &str, base_dir: Option<&Path>) -> Result<BinaryGSpace> {
    let file: ActionFile = match serde_json::from_str(text) {
        Ok(f) => f,
        Err(e) => {
            // an inline group that fails validation also lands here; re-run
            // the group loader to report the axiom rather than a parse error
            if let Ok(v) = serde_json::from_str::<serde_json::Value>(text) {
                if let Some(g) = v.get("group").filter(|g| g.is_object()) {
                    group_from_json(&g.to_string())?;
                }
            }
            return Err(e.into());
        }
    };
    file.into_space(base_dir)
}

pub fn load_action(path: &Path) -> Result<BinaryGSpace> {
    let text = std::fs::read_to_string(path)?;
    action_from_json(&text, path.parent())
}
