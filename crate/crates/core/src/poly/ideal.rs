use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use super::polynomial::Polynomial;
use super::ring::{Locus, RingContext};
use crate::error::{Error, Result};

/// Finitely generated ideal. Zero generators are dropped, so the zero ideal
/// has no generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ring: Arc<RingContext>,
    gens: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: &Arc<RingContext>, gens: Vec<Polynomial>) -> Result<Ideal> {
        for g in &gens {
            if !g.ring().same_variables(ring) {
                return Err(Error::RingMismatch);
            }
        }
        if ring.locus() == Locus::Projective {
            if let Some(index) = gens.iter().position(|g| !g.is_homogeneous()) {
                return Err(Error::Inhomogeneous { index: index + 1 });
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens
                .into_iter()
                .filter(|g| !g.is_zero())
                .map(|g| g.with_ring(ring))
                .collect(),
        })
    }

    pub fn zero(ring: &Arc<RingContext>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: Vec::new(),
        }
    }

    pub fn unit(ring: &Arc<RingContext>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: vec![Polynomial::one(ring)],
        }
    }

    /// The ideal generated by the listed variables.
    pub fn of_vars(ring: &Arc<RingContext>, vars: &[usize]) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: vars.iter().map(|&i| Polynomial::var(ring, i)).collect(),
        }
    }

    pub fn maximal(ring: &Arc<RingContext>) -> Ideal {
        Self::of_vars(ring, &(0..ring.nvars()).collect::<Vec<_>>())
    }

    pub fn ring(&self) -> &Arc<RingContext> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(&self.ring, gens)
    }

    pub fn with_gens(&self, extra: impl IntoIterator<Item = Polynomial>) -> Result<Ideal> {
        let mut gens = self.gens.clone();
        gens.extend(extra);
        Ideal::new(&self.ring, gens)
    }

    /// Move to another ring containing the used variables, matching by name.
    pub fn map_to(&self, target: &Arc<RingContext>) -> Result<Ideal> {
        let gens = self.gens.iter().map(|g| g.map_to(target)).collect::<Result<Vec<_>>>()?;
        Ideal::new(target, gens)
    }

    /// Same generators in an equivalent ring (same variables, other locus).
    pub fn with_ring(&self, ring: &Arc<RingContext>) -> Ideal {
        Ideal {
            ring: ring.clone(),
            gens: self.gens.iter().map(|g| g.with_ring(ring)).collect(),
        }
    }

    pub fn substitute(&self, target: &Arc<RingContext>, images: &[Polynomial]) -> Result<Ideal> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.substitute(target, images))
            .collect::<Result<Vec<_>>>()?;
        Ideal::new(target, gens)
    }

    /// Source text in the input language that parses back to this ideal.
    pub fn to_source(&self) -> String {
        let mut s = format!("ring {};\n", self.ring.var_names().join(","));
        if !self.ring.axis().is_empty() {
            let names: Vec<&str> = self.ring.axis().iter().map(|&i| self.ring.var_name(i)).collect();
            s.push_str(&format!("axis {};\n", names.join(",")));
        }
        if self.ring.locus() != Locus::Local {
            s.push_str(&format!("option locus={};\n", self.ring.locus().as_str()));
        }
        s.push_str(&format!("ideal I = {};\n", self));
        s
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        f.write_str(&parts.join(", "))
    }
}

/// Serialized as the list of generators in input syntax.
impl Serialize for Ideal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.gens.iter().map(|g| g.to_string()))
    }
}
