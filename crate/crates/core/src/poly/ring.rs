use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::order::MonomialOrder;
use crate::error::{Error, Result};

/// Where the ideal is read: at the origin, as a homogeneous ideal of a
/// projective variety, or globally in affine space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Locus {
    Local,
    Projective,
    Affine,
}

impl Locus {
    pub fn parse(s: &str) -> Option<Locus> {
        match s {
            "local" => Some(Locus::Local),
            "projective" => Some(Locus::Projective),
            "affine" => Some(Locus::Affine),
            _ => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Locus::Local => "local",
            Locus::Projective => "projective",
            Locus::Affine => "affine",
        }
    }
}

/// Ordered variable names, the marked axis (parameter) variables and the locus.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingContext {
    vars: Vec<String>,
    axis: Vec<usize>,
    locus: Locus,
}

impl RingContext {
    pub fn new<S: AsRef<str>>(vars: &[S], locus: Locus) -> Result<Arc<RingContext>> {
        let vars: Vec<String> = vars.iter().map(|s| s.as_ref().to_string()).collect();
        if vars.is_empty() {
            return Err(Error::Input("a ring needs at least one variable".into()));
        }
        let mut seen = HashSet::new();
        for v in &vars {
            if !is_identifier(v) {
                return Err(Error::Input(format!("`{v}` is not a valid variable name")));
            }
            if !seen.insert(v.as_str()) {
                return Err(Error::Input(format!("variable `{v}` declared twice")));
            }
        }
        Ok(Arc::new(RingContext {
            vars,
            axis: Vec::new(),
            locus,
        }))
    }

    /// Same variables with the given axis variables marked.
    pub fn with_axis<S: AsRef<str>>(&self, axis: &[S]) -> Result<Arc<RingContext>> {
        let mut idx = Vec::new();
        for name in axis {
            let i = self
                .index_of(name.as_ref())
                .ok_or_else(|| Error::UnknownVariable(name.as_ref().to_string()))?;
            if !idx.contains(&i) {
                idx.push(i);
            }
        }
        idx.sort_unstable();
        Ok(Arc::new(RingContext {
            vars: self.vars.clone(),
            axis: idx,
            locus: self.locus,
        }))
    }

    pub fn with_locus(&self, locus: Locus) -> Arc<RingContext> {
        Arc::new(RingContext {
            vars: self.vars.clone(),
            axis: self.axis.clone(),
            locus,
        })
    }

    /// Append fresh variables after the existing ones. Each requested name is
    /// used as is when free, otherwise decorated with trailing underscores.
    pub fn extended<S: AsRef<str>>(&self, extra: &[S]) -> Arc<RingContext> {
        let mut vars = self.vars.clone();
        for base in extra {
            let mut name = base.as_ref().to_string();
            while vars.contains(&name) {
                name.push('_');
            }
            vars.push(name);
        }
        Arc::new(RingContext {
            vars,
            axis: self.axis.clone(),
            locus: self.locus,
        })
    }

    /// Keep only the listed variables (in the listed order); the axis is kept
    /// where it survives.
    pub fn restricted(&self, keep: &[usize]) -> Arc<RingContext> {
        let vars = keep.iter().map(|&i| self.vars[i].clone()).collect();
        let axis = keep
            .iter()
            .enumerate()
            .filter(|(_, i)| self.axis.contains(i))
            .map(|(j, _)| j)
            .collect();
        Arc::new(RingContext {
            vars,
            axis,
            locus: self.locus,
        })
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_name(&self, i: usize) -> &str {
        &self.vars[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn axis(&self) -> &[usize] {
        &self.axis
    }

    pub fn axis_mask(&self) -> Vec<bool> {
        (0..self.nvars()).map(|i| self.axis.contains(&i)).collect()
    }

    pub fn locus(&self) -> Locus {
        self.locus
    }

    /// The ordering used for printing and for bases when none is requested:
    /// `ds` at the origin, `dp` otherwise.
    pub fn default_order(&self) -> MonomialOrder {
        match self.locus {
            Locus::Local => MonomialOrder::NegDegRevLex,
            _ => MonomialOrder::DegRevLex,
        }
    }

    /// Same variable names in the same positions; locus and axis may differ.
    pub fn same_variables(&self, other: &RingContext) -> bool {
        self.vars == other.vars
    }
}

impl fmt::Display for RingContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ring {};", self.vars.join(","))?;
        if !self.axis.is_empty() {
            let names: Vec<&str> = self.axis.iter().map(|&i| self.vars[i].as_str()).collect();
            write!(f, " axis {};", names.join(","))?;
        }
        Ok(())
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
