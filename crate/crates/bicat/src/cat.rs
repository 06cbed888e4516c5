//! Plain finite categories with explicit composition tables.

use crate::error::{KernelError, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinMor {
    pub src: usize,
    pub tgt: usize,
    pub label: String,
}

/// A finite category: objects, morphisms, identities, and a total
/// composition table keyed `(g, f)` for the composite g∘f (f first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<FinMor>,
    pub identity: Vec<usize>,
    pub compose: BTreeMap<(usize, usize), usize>,
}

impl FiniteCategory {
    pub fn hom(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.morphisms.len())
            .filter(|&m| self.morphisms[m].src == a && self.morphisms[m].tgt == b)
            .collect()
    }

    pub fn composable(&self, g: usize, f: usize) -> bool {
        self.morphisms[f].tgt == self.morphisms[g].src
    }

    pub fn composite(&self, g: usize, f: usize) -> Result<usize> {
        self.compose.get(&(g, f)).copied().ok_or_else(|| KernelError::Invalid(format!(
            "missing composite {} . {}",
            self.morphisms[g].label, self.morphisms[f].label
        )))
    }

    /// Exhaustive check of the category axioms on the tables.
    pub fn check(&self) -> Result<()> {
        if self.identity.len() != self.objects.len() {
            return Err(KernelError::Invalid("identity table has wrong length".into()));
        }
        for (o, &i) in self.identity.iter().enumerate() {
            let m = &self.morphisms[i];
            if m.src != o || m.tgt != o {
                return Err(KernelError::Invalid(format!(
                    "identity of {} has wrong boundary",
                    self.objects[o]
                )));
            }
        }
        for f in 0..self.morphisms.len() {
            let (s, t) = (self.morphisms[f].src, self.morphisms[f].tgt);
            if self.composite(f, self.identity[s])? != f || self.composite(self.identity[t], f)? != f
            {
                return Err(KernelError::Invalid(format!(
                    "unit law fails at {}",
                    self.morphisms[f].label
                )));
            }
        }
        for f in 0..self.morphisms.len() {
            for g in 0..self.morphisms.len() {
                if !self.composable(g, f) {
                    if self.compose.contains_key(&(g, f)) {
                        return Err(KernelError::Invalid("composite of non-composable pair".into()));
                    }
                    continue;
                }
                let gf = self.composite(g, f)?;
                if self.morphisms[gf].src != self.morphisms[f].src
                    || self.morphisms[gf].tgt != self.morphisms[g].tgt
                {
                    return Err(KernelError::Invalid("composite has wrong boundary".into()));
                }
                for h in 0..self.morphisms.len() {
                    if self.composable(h, g) {
                        if self.composite(h, gf)? != self.composite(self.composite(h, g)?, f)? {
                            return Err(KernelError::Invalid(format!(
                                "associativity fails at ({}, {}, {})",
                                self.morphisms[h].label,
                                self.morphisms[g].label,
                                self.morphisms[f].label
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Is `m` invertible in this category (some n with both composites
    /// identities)?
    pub fn is_iso(&self, m: usize) -> bool {
        let (s, t) = (self.morphisms[m].src, self.morphisms[m].tgt);
        self.hom(t, s).iter().any(|&n| {
            self.compose.get(&(n, m)) == Some(&self.identity[s])
                && self.compose.get(&(m, n)) == Some(&self.identity[t])
        })
    }
}
