//! Slice 2-categories of cones over a diagram.
//!
//! For each choice of cone flavor and morphism flavor this builds the full
//! finite slice: objects are the bounded-enumerated cones over F (all
//! summits), a 1-cell (a, μ) → (b, ν) is a summit morphism f together with
//! a filling modification φ: νΔf ⇛ μ (identity for strict morphism
//! flavor, invertible for pseudo, arbitrary for lax), and a 2-cell
//! (f, φ) ⇒ (g, ψ) is an ambient 2-cell α: f ⇒ g with ψ ∘ (ν∗Δα) = φ.

use crate::cat::{FinMor, FiniteCategory};
use crate::diagram::{
    cones_equal, enumerate_cones, enumerate_modifications, postcompose_cone, Flavor, Modification,
    Transformation, TwoFunctor,
};
use crate::engine::Engine;
use crate::error::{KernelError, Result};
use crate::term::Term;
use crate::verdict::{Certificate, Status};
use crate::Word;
use serde::Serialize;
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct SliceOneCell {
    pub src: usize,
    pub tgt: usize,
    /// The summit morphism, as a normal-form word.
    pub word: Word,
    /// The filling modification φ : (tgt cone)Δword ⇛ (src cone).
    pub filler: Modification,
}

#[derive(Debug, Clone)]
pub struct SliceTwoCell {
    pub src: usize,
    pub tgt: usize,
    /// Canonical representative of the ambient 2-cell class.
    pub alpha: Term,
}

pub struct SliceTwoCategory {
    pub cone_flavor: Flavor,
    pub morphism_flavor: Flavor,
    pub objects: Vec<Transformation>,
    pub one_cells: Vec<SliceOneCell>,
    pub two_cells: Vec<SliceTwoCell>,
    /// `(g, f) -> g∘f` on 1-cell indices.
    pub compose_one: BTreeMap<(usize, usize), usize>,
    pub certificate: Certificate,
}

impl SliceTwoCategory {
    pub fn object_index(&self, c: &Transformation, amb: &Engine) -> Result<Option<usize>> {
        for (i, o) in self.objects.iter().enumerate() {
            if cones_equal(o, c, amb)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn one_cells_between(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.one_cells.len())
            .filter(|&m| self.one_cells[m].src == a && self.one_cells[m].tgt == b)
            .collect()
    }

    pub fn display_one_cell(&self, m: usize) -> String {
        let cell = &self.one_cells[m];
        let p = self.objects[cell.src].ambient();
        format!("({}, {})", p.display_word(&cell.word), cell.filler.display())
    }

    /// The hom-category Slice(a, b): objects the slice 1-cells, morphisms
    /// the slice 2-cells, composition vertical.
    pub fn hom(&self, a: usize, b: usize, amb: &Engine) -> Result<FiniteCategory> {
        if a >= self.objects.len() || b >= self.objects.len() {
            return Err(KernelError::UnknownName { kind: "cone", name: format!("#{}/{}", a, b) });
        }
        let p = self.objects[a].ambient().clone();
        let ones = self.one_cells_between(a, b);
        let twos: Vec<usize> = (0..self.two_cells.len())
            .filter(|&t| ones.contains(&self.two_cells[t].src))
            .filter(|&t| ones.contains(&self.two_cells[t].tgt))
            .collect();
        let obj_of: BTreeMap<usize, usize> = ones.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let morphisms: Vec<FinMor> = twos
            .iter()
            .map(|&t| FinMor {
                src: obj_of[&self.two_cells[t].src],
                tgt: obj_of[&self.two_cells[t].tgt],
                label: p.display_term(&self.two_cells[t].alpha),
            })
            .collect();
        let identity: Vec<usize> = ones
            .iter()
            .map(|&m| {
                twos.iter()
                    .position(|&t| {
                        self.two_cells[t].src == m
                            && self.two_cells[t].tgt == m
                            && self.two_cells[t].alpha.is_identity_term()
                    })
                    .expect("identity slice 2-cell is always enumerated")
            })
            .collect();
        let mut compose = BTreeMap::new();
        for (i1, &t1) in twos.iter().enumerate() {
            for (i2, &t2) in twos.iter().enumerate() {
                if self.two_cells[t1].tgt != self.two_cells[t2].src {
                    continue;
                }
                let composite = p.vcompose(&self.two_cells[t2].alpha, &self.two_cells[t1].alpha)?;
                let mut found = None;
                for (i3, &t3) in twos.iter().enumerate() {
                    if self.two_cells[t3].src == self.two_cells[t1].src
                        && self.two_cells[t3].tgt == self.two_cells[t2].tgt
                        && amb.equal_two_cells(&self.two_cells[t3].alpha, &composite)?.status
                            == Status::Holds
                    {
                        found = Some(i3);
                        break;
                    }
                }
                let i3 = found.ok_or(KernelError::BoundExceeded {
                    context: "composing slice 2-cells".into(),
                })?;
                compose.insert((i2, i1), i3);
            }
        }
        Ok(FiniteCategory {
            objects: ones.iter().map(|&m| self.display_one_cell(m)).collect(),
            morphisms,
            identity,
            compose,
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let p = self.objects.first().map(|c| c.ambient().clone());
        #[derive(Serialize)]
        struct OneCellJson {
            src: usize,
            tgt: usize,
            word: String,
            filler: Vec<String>,
        }
        #[derive(Serialize)]
        struct TwoCellJson {
            src: usize,
            tgt: usize,
            alpha: String,
        }
        let objects: Vec<String> = self.objects.iter().map(|c| c.display()).collect();
        let one_cells: Vec<OneCellJson> = self
            .one_cells
            .iter()
            .map(|m| OneCellJson {
                src: m.src,
                tgt: m.tgt,
                word: p.as_ref().unwrap().display_word(&m.word),
                filler: m
                    .filler
                    .components
                    .iter()
                    .map(|t| p.as_ref().unwrap().display_term(t))
                    .collect(),
            })
            .collect();
        let two_cells: Vec<TwoCellJson> = self
            .two_cells
            .iter()
            .map(|t| TwoCellJson {
                src: t.src,
                tgt: t.tgt,
                alpha: p.as_ref().unwrap().display_term(&t.alpha),
            })
            .collect();
        let compose: Vec<(usize, usize, usize)> =
            self.compose_one.iter().map(|(&(g, f), &gf)| (g, f, gf)).collect();
        serde_json::json!({
            "cone_flavor": self.cone_flavor.name(),
            "morphism_flavor": self.morphism_flavor.name(),
            "objects": objects,
            "one_cells": one_cells,
            "two_cells": two_cells,
            "compose_one": compose,
            "certificate": self.certificate.to_string(),
        })
    }
}

/// Build the fully enumerated slice 2-category of `cone_flavor` cones and
/// `morphism_flavor` morphisms over F.
pub fn build_slice(
    f: &Arc<TwoFunctor>,
    cone_flavor: Flavor,
    morphism_flavor: Flavor,
    amb: &Engine,
) -> Result<SliceTwoCategory> {
    let p = f.target.clone();
    let (objects, mut cert) = enumerate_cones(f, cone_flavor, amb)?;

    let mut one_cells: Vec<SliceOneCell> = Vec::new();
    for (a, mu) in objects.iter().enumerate() {
        for (b, nu) in objects.iter().enumerate() {
            let xa = mu.summit().expect("cones have constant source");
            let xb = nu.summit().expect("cones have constant source");
            let (words, c) = amb.one_cells(xa, xb)?;
            cert = cert.and(c);
            for w in words {
                let posted = postcompose_cone(nu, &w, amb)?;
                match morphism_flavor {
                    Flavor::Strict => {
                        if cones_equal(&posted, mu, amb)? {
                            let filler = Modification {
                                source: posted.clone(),
                                target: mu.clone(),
                                components: mu
                                    .obj_components
                                    .iter()
                                    .map(|cw| Term::identity(cw.clone()))
                                    .collect(),
                            };
                            one_cells.push(SliceOneCell { src: a, tgt: b, word: w, filler });
                        }
                    }
                    Flavor::Pseudo | Flavor::Lax => {
                        let (mods, c) = enumerate_modifications(&posted, mu, amb)?;
                        cert = cert.and(c);
                        for m in mods {
                            if morphism_flavor == Flavor::Pseudo {
                                let mut invertible = true;
                                for comp in &m.components {
                                    let v = amb.is_invertible(comp)?;
                                    cert = cert.and(v.certificate);
                                    if v.status != Status::Holds {
                                        invertible = false;
                                        break;
                                    }
                                }
                                if !invertible {
                                    continue;
                                }
                            }
                            one_cells.push(SliceOneCell {
                                src: a,
                                tgt: b,
                                word: w.clone(),
                                filler: m,
                            });
                        }
                    }
                }
            }
        }
    }

    // 2-cells: ambient α : f ⇒ g with ψ ∘ (ν ∗ Δα) = φ, componentwise.
    let mut two_cells: Vec<SliceTwoCell> = Vec::new();
    for (m1, c1) in one_cells.iter().enumerate() {
        for (m2, c2) in one_cells.iter().enumerate() {
            if c1.src != c2.src || c1.tgt != c2.tgt {
                continue;
            }
            let nu = &objects[c1.tgt];
            let (alphas, c) = amb.two_cells(&c1.word, &c2.word)?;
            cert = cert.and(c);
            'alphas: for alpha in alphas {
                for i in 0..nu.obj_components.len() {
                    let whiskered = p.whisker(
                        &Word::identity(alpha.src.src),
                        &alpha,
                        &nu.obj_components[i],
                    )?;
                    let lhs = p.vcompose(&c2.filler.components[i], &whiskered)?;
                    if amb.equal_two_cells(&lhs, &c1.filler.components[i])?.status != Status::Holds
                    {
                        continue 'alphas;
                    }
                }
                two_cells.push(SliceTwoCell { src: m1, tgt: m2, alpha });
            }
        }
    }

    // Composition table for 1-cells: χ_i = φ_i ∘ (ψ_i ∗ f).
    let mut compose_one = BTreeMap::new();
    for (m1, c1) in one_cells.iter().enumerate() {
        for (m2, c2) in one_cells.iter().enumerate() {
            if c1.tgt != c2.src {
                continue;
            }
            let word = p.compose(&c2.word, &c1.word)?;
            let mut components = Vec::new();
            for i in 0..c1.filler.components.len() {
                let whiskered = p.whisker(
                    &c1.word,
                    &c2.filler.components[i],
                    &Word::identity(c2.filler.components[i].src.tgt(&p)),
                )?;
                components.push(p.vcompose(&c1.filler.components[i], &whiskered)?);
            }
            let mut found = None;
            for (m3, c3) in one_cells.iter().enumerate() {
                if c3.src != c1.src || c3.tgt != c2.tgt || c3.word != word {
                    continue;
                }
                let mut all_equal = true;
                for (x, y) in c3.filler.components.iter().zip(&components) {
                    if amb.equal_two_cells(x, y)?.status != Status::Holds {
                        all_equal = false;
                        break;
                    }
                }
                if all_equal {
                    found = Some(m3);
                    break;
                }
            }
            let m3 = found.ok_or(KernelError::BoundExceeded {
                context: "composing slice 1-cells".into(),
            })?;
            compose_one.insert((m2, m1), m3);
        }
    }

    Ok(SliceTwoCategory {
        cone_flavor,
        morphism_flavor,
        objects,
        one_cells,
        two_cells,
        compose_one,
        certificate: cert,
    })
}
