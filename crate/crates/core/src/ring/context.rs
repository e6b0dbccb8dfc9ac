use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarGroup {
    pub name: String,
    pub len: usize,
}

/// Ordered, named groups of polynomial variables.
///
/// Variable `i` of group `g` is addressed by the name `g<i+1>` (for example
/// `x1`, `q2_1` for groups named `q2`), or by its global index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VarContext {
    groups: Vec<VarGroup>,
}

impl VarContext {
    pub fn new<S: Into<String>>(groups: impl IntoIterator<Item = (S, usize)>) -> Result<Arc<Self>> {
        let groups: Vec<VarGroup> = groups
            .into_iter()
            .map(|(name, len)| VarGroup { name: name.into(), len })
            .collect();
        for (i, g) in groups.iter().enumerate() {
            if groups[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::Invalid(format!("duplicate variable group `{}`", g.name)));
            }
        }
        Ok(Arc::new(VarContext { groups }))
    }

    pub fn groups(&self) -> &[VarGroup] {
        &self.groups
    }

    pub fn nvars(&self) -> usize {
        self.groups.iter().map(|g| g.len).sum()
    }

    pub fn group(&self, name: &str) -> Option<Range<usize>> {
        let mut start = 0;
        for g in &self.groups {
            if g.name == name {
                return Some(start..start + g.len);
            }
            start += g.len;
        }
        None
    }

    pub fn group_or_err(&self, name: &str) -> Result<Range<usize>> {
        self.group(name).ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn var_name(&self, idx: usize) -> String {
        let mut start = 0;
        for g in &self.groups {
            if idx < start + g.len {
                let sep = if g.name.chars().last().is_some_and(|c| c.is_ascii_digit()) { "_" } else { "" };
                return format!("{}{}{}", g.name, sep, idx - start + 1);
            }
            start += g.len;
        }
        format!("?{idx}")
    }

    pub fn var_index(&self, name: &str) -> Result<usize> {
        (0..self.nvars())
            .find(|&i| self.var_name(i) == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }
}

impl fmt::Debug for VarContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.groups.iter().map(|g| format!("{}:{}", g.name, g.len)).collect();
        write!(f, "vars {}", parts.join(" "))
    }
}

pub fn same_context(a: &Arc<VarContext>, b: &Arc<VarContext>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
