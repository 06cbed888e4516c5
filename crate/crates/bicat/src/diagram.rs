//! 2-functors, strict/pseudo/lax transformations, and modifications.
//!
//! Transformations store components on generators only; components at
//! composite words are *defined* by the extension law
//! `μ_{u∘w} = (μ_u ∗ Sw) ∘ (Tu ∗ μ_w)` and never stored. Coherence is
//! checked on the source presentation's 1-relations and 2-generators,
//! which suffices because everything else is free.

use crate::engine::Engine;
use crate::error::{KernelError, Result};
use crate::presentation::{ObjId, Presentation, Word};
use crate::term::Term;
use crate::verdict::{Bounds, Certificate, Status, Verdict, Witness};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Flavor {
    Strict,
    Pseudo,
    Lax,
}

impl Flavor {
    pub fn parse(s: &str) -> Result<Flavor> {
        match s {
            "strict" => Ok(Flavor::Strict),
            "pseudo" => Ok(Flavor::Pseudo),
            "lax" => Ok(Flavor::Lax),
            _ => Err(KernelError::Invalid(format!("unknown flavor `{}`", s))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Flavor::Strict => "strict",
            Flavor::Pseudo => "pseudo",
            Flavor::Lax => "lax",
        }
    }
}

impl std::fmt::Display for Flavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoFunctor {
    pub name: String,
    pub source: Arc<Presentation>,
    pub target: Arc<Presentation>,
    pub obj_map: Vec<ObjId>,
    pub one_map: Vec<Word>,
    pub two_map: Vec<Term>,
}

impl TwoFunctor {
    pub fn apply_obj(&self, o: ObjId) -> ObjId {
        self.obj_map[o]
    }

    pub fn apply_word(&self, w: &Word) -> Word {
        let mut gens = Vec::new();
        for &g in &w.gens {
            gens.extend_from_slice(&self.one_map[g].gens);
        }
        self.target.normalize(&Word { src: self.obj_map[w.src], gens })
    }

    pub fn apply_term(&self, t: &Term) -> Result<Term> {
        let p = &self.target;
        let mut acc = Term::identity(self.apply_word(&t.src));
        for layer in &t.layers {
            let image = if layer.atom.inverted {
                self.two_map[layer.atom.gen].inverse(p)?
            } else {
                self.two_map[layer.atom.gen].clone()
            };
            let whiskered =
                p.whisker(&self.apply_word(&layer.pre), &image, &self.apply_word(&layer.post))?;
            acc = p.vcompose(&whiskered, &acc)?;
        }
        acc.tgt = self.apply_word(&t.tgt);
        Ok(acc)
    }

    /// The constant 2-functor Δx: everything collapses onto `x`.
    pub fn constant(source: Arc<Presentation>, target: Arc<Presentation>, x: ObjId) -> Result<TwoFunctor> {
        if x >= target.objects.len() {
            return Err(KernelError::UnknownName { kind: "object", name: format!("#{}", x) });
        }
        let obj_map = vec![x; source.objects.len()];
        let one_map = vec![Word::identity(x); source.one_gens.len()];
        let two_map = vec![Term::identity(Word::identity(x)); source.two_gens.len()];
        Ok(TwoFunctor {
            name: format!("Delta_{}", target.objects[x]),
            source,
            target,
            obj_map,
            one_map,
            two_map,
        })
    }

    pub fn is_constant_at(&self) -> Option<ObjId> {
        let x = *self.obj_map.first()?;
        let constant = self.obj_map.iter().all(|&o| o == x)
            && self.one_map.iter().all(|w| w.is_empty() && w.src == x)
            && self.two_map.iter().all(|t| t.is_identity_term() && t.src.is_empty());
        if constant { Some(x) } else { None }
    }

    /// Verify 2-functoriality: boundaries of all generator images, and
    /// preservation of both relation levels (in the target's equality).
    pub fn check(&self, amb: &Engine) -> Result<Verdict> {
        let s = &self.source;
        let p = &self.target;
        let bounds = amb.bounds();
        let mut witnesses = Vec::new();
        let mut cert = Certificate::Exact;
        let mut unknown = false;
        if self.obj_map.len() != s.objects.len()
            || self.one_map.len() != s.one_gens.len()
            || self.two_map.len() != s.two_gens.len()
        {
            return Err(KernelError::Invalid("functor assignment is not total".into()));
        }
        for &o in &self.obj_map {
            if o >= p.objects.len() {
                return Err(KernelError::UnknownName { kind: "object", name: format!("#{}", o) });
            }
        }
        for (g, w) in self.one_map.iter().enumerate() {
            p.check_word(w)?;
            let gen = &s.one_gens[g];
            if w.src != self.obj_map[gen.src] || w.tgt(p) != self.obj_map[gen.tgt] {
                witnesses.push(Witness::BoundaryMismatch {
                    left: format!("image of {}", gen.name),
                    right: format!(
                        "{} -> {}",
                        p.objects[self.obj_map[gen.src]], p.objects[self.obj_map[gen.tgt]]
                    ),
                });
            }
        }
        for (g, t) in self.two_map.iter().enumerate() {
            t.check(p)?;
            let gen = &s.two_gens[g];
            if p.normalize(&t.src) != self.apply_word(&gen.src)
                || p.normalize(&t.tgt) != self.apply_word(&gen.tgt)
            {
                witnesses.push(Witness::BoundaryMismatch {
                    left: format!("image of {}", gen.name),
                    right: format!(
                        "{} => {}",
                        p.display_word(&self.apply_word(&gen.src)),
                        p.display_word(&self.apply_word(&gen.tgt))
                    ),
                });
            }
            if gen.invertible {
                let v = amb.is_invertible(t)?;
                cert = cert.and(v.certificate);
                match v.status {
                    Status::Holds => {}
                    Status::Fails => witnesses.push(Witness::NotInvertible {
                        cell: format!("image of {}", gen.name),
                    }),
                    Status::UnknownAtBound => unknown = true,
                }
            }
        }
        if !witnesses.is_empty() {
            return Ok(Verdict::fails(cert, witnesses, bounds));
        }
        for (l, r) in &s.one_relations {
            if self.apply_word(l) != self.apply_word(r) {
                witnesses.push(Witness::EquationFails {
                    left: p.display_word(&self.apply_word(l)),
                    right: p.display_word(&self.apply_word(r)),
                    context: "image of a 1-relation".into(),
                });
            }
        }
        for (l, r) in &s.two_relations {
            let v = amb.equal_two_cells(&self.apply_term(l)?, &self.apply_term(r)?)?;
            cert = cert.and(v.certificate);
            match v.status {
                Status::Holds => {}
                Status::Fails => witnesses.push(Witness::EquationFails {
                    left: p.display_term(&self.apply_term(l)?),
                    right: p.display_term(&self.apply_term(r)?),
                    context: "image of a 2-relation".into(),
                }),
                Status::UnknownAtBound => unknown = true,
            }
        }
        Ok(finish(witnesses, unknown, cert, bounds))
    }
}

fn finish(witnesses: Vec<Witness>, unknown: bool, cert: Certificate, bounds: Bounds) -> Verdict {
    if !witnesses.is_empty() {
        Verdict::fails(cert, witnesses, bounds)
    } else if unknown {
        Verdict::unknown(vec![Witness::Note { text: "some condition unresolved at bound".into() }], bounds)
    } else {
        Verdict::holds(cert, bounds)
    }
}

/// A strict/pseudo/lax transformation between parallel 2-functors, with
/// components stored on generators. A *cone* is the special case where the
/// source functor is constant.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transformation {
    pub name: String,
    pub flavor: Flavor,
    pub source: Arc<TwoFunctor>,
    pub target: Arc<TwoFunctor>,
    /// μ_i : S(i) → T(i), one per source-presentation object.
    pub obj_components: Vec<Word>,
    /// μ_u : (Tu)·μ_i ⇒ μ_j·(Su), one per source-presentation 1-generator.
    pub one_components: Vec<Term>,
}

impl Transformation {
    pub fn summit(&self) -> Option<ObjId> {
        self.source.is_constant_at()
    }

    pub fn index(&self) -> &Arc<Presentation> {
        &self.source.source
    }

    pub fn ambient(&self) -> &Arc<Presentation> {
        &self.source.target
    }

    /// Component at an arbitrary source word, via the extension law.
    pub fn component_at(&self, w: &Word) -> Result<Term> {
        let p = self.ambient();
        let i = w.src;
        let mut done = Word::identity(i); // prefix of w already folded
        let mut acc = Term::identity(self.obj_components[i].clone());
        for &u in &w.gens {
            let tu = &self.target.one_map[u];
            let first = p.whisker(&Word::identity(acc.src.src), &acc, tu)?;
            let second = p.whisker(
                &self.source.apply_word(&done),
                &self.one_components[u],
                &Word::identity(tu.tgt(p)),
            )?;
            acc = p.vcompose(&second, &first)?;
            let mut gens = done.gens.clone();
            gens.push(u);
            done = Word { src: i, gens };
        }
        Ok(acc)
    }

    /// Verify the flavor conditions and all coherence equations.
    pub fn check(&self, amb: &Engine) -> Result<Verdict> {
        let s_pres = self.index().clone();
        let p = self.ambient().clone();
        let bounds = amb.bounds();
        let mut witnesses = Vec::new();
        let mut cert = Certificate::Exact;
        let mut unknown = false;
        if self.obj_components.len() != s_pres.objects.len()
            || self.one_components.len() != s_pres.one_gens.len()
        {
            return Err(KernelError::Invalid("transformation components are not total".into()));
        }
        for (i, w) in self.obj_components.iter().enumerate() {
            p.check_word(w)?;
            if w.src != self.source.apply_obj(i) || w.tgt(&p) != self.target.apply_obj(i) {
                witnesses.push(Witness::BoundaryMismatch {
                    left: format!("component at {}", s_pres.objects[i]),
                    right: p.display_word(w),
                });
            }
        }
        if !witnesses.is_empty() {
            return Ok(Verdict::fails(cert, witnesses, bounds));
        }
        for (u, t) in self.one_components.iter().enumerate() {
            t.check(&p)?;
            let gen = &s_pres.one_gens[u];
            let (i, j) = (gen.src, gen.tgt);
            let expected_src = p.compose(&self.target.apply_word(&Word::generator(&s_pres, u)), &self.obj_components[i])?;
            let expected_tgt = p.compose(&self.obj_components[j], &self.source.apply_word(&Word::generator(&s_pres, u)))?;
            if p.normalize(&t.src) != expected_src || p.normalize(&t.tgt) != expected_tgt {
                witnesses.push(Witness::BoundaryMismatch {
                    left: format!("component at {}", gen.name),
                    right: format!(
                        "{} => {}",
                        p.display_word(&expected_src),
                        p.display_word(&expected_tgt)
                    ),
                });
                continue;
            }
            match self.flavor {
                Flavor::Strict => {
                    if !t.is_identity_term() || expected_src != expected_tgt {
                        witnesses.push(Witness::Note {
                            text: format!(
                                "strict component at {} is not an identity on equal normal forms",
                                gen.name
                            ),
                        });
                    }
                }
                Flavor::Pseudo => {
                    let v = amb.is_invertible(t)?;
                    cert = cert.and(v.certificate);
                    match v.status {
                        Status::Holds => {}
                        Status::Fails => witnesses.push(Witness::NotInvertible {
                            cell: format!("component at {}: {}", gen.name, p.display_term(t)),
                        }),
                        Status::UnknownAtBound => unknown = true,
                    }
                }
                Flavor::Lax => {}
            }
        }
        if !witnesses.is_empty() {
            return Ok(Verdict::fails(cert, witnesses, bounds));
        }
        // Composite coherence on the source 1-relations.
        for (l, r) in &s_pres.one_relations {
            let v = amb.equal_two_cells(&self.component_at(l)?, &self.component_at(r)?)?;
            cert = cert.and(v.certificate);
            match v.status {
                Status::Holds => {}
                Status::Fails => witnesses.push(Witness::EquationFails {
                    left: p.display_term(&self.component_at(l)?),
                    right: p.display_term(&self.component_at(r)?),
                    context: format!(
                        "components at the two sides of {} = {}",
                        s_pres.display_word(l),
                        s_pres.display_word(r)
                    ),
                }),
                Status::UnknownAtBound => unknown = true,
            }
        }
        // 2-cell coherence for every source 2-generator α : f ⇒ g.
        for (a, gen) in s_pres.two_gens.iter().enumerate() {
            let alpha = Term::generator(&s_pres, a);
            let i_obj = gen.src.src;
            let j_obj = gen.src.tgt(&s_pres);
            let t_alpha = self.target.apply_term(&alpha)?;
            let s_alpha = self.source.apply_term(&alpha)?;
            let lhs = p.vcompose(
                &self.component_at(&gen.tgt)?,
                &p.whisker(&self.obj_components[i_obj], &t_alpha, &Word::identity(self.target.apply_obj(j_obj)))?,
            )?;
            let rhs = p.vcompose(
                &p.whisker(&Word::identity(self.source.apply_obj(i_obj)), &s_alpha, &self.obj_components[j_obj])?,
                &self.component_at(&gen.src)?,
            )?;
            let v = amb.equal_two_cells(&lhs, &rhs)?;
            cert = cert.and(v.certificate);
            match v.status {
                Status::Holds => {}
                Status::Fails => witnesses.push(Witness::EquationFails {
                    left: p.display_term(&lhs),
                    right: p.display_term(&rhs),
                    context: format!("2-cell coherence at {}", gen.name),
                }),
                Status::UnknownAtBound => unknown = true,
            }
        }
        Ok(finish(witnesses, unknown, cert, bounds))
    }

    /// Display as a cone: summit plus components.
    pub fn display(&self) -> String {
        let p = self.ambient();
        let obj = self
            .obj_components
            .iter()
            .map(|w| p.display_word(w))
            .collect::<Vec<_>>()
            .join(", ");
        let summit = self
            .summit()
            .map(|x| p.objects[x].clone())
            .unwrap_or_else(|| "?".into());
        if self.one_components.iter().all(|t| t.is_identity_term()) {
            format!("({}; {})", summit, obj)
        } else {
            let mor = self
                .one_components
                .iter()
                .map(|t| p.display_term(t))
                .collect::<Vec<_>>()
                .join(", ");
            format!("({}; {}; {})", summit, obj, mor)
        }
    }
}

/// A modification between parallel transformations: one 2-cell per source
/// object, compatible with the transformation components.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Modification {
    pub source: Transformation,
    pub target: Transformation,
    /// φ_i : μ_i ⇒ ν_i.
    pub components: Vec<Term>,
}

impl Modification {
    pub fn identity(t: &Transformation) -> Modification {
        Modification {
            source: t.clone(),
            target: t.clone(),
            components: t.obj_components.iter().map(|w| Term::identity(w.clone())).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.components.iter().all(|t| t.is_identity_term())
    }

    /// The defining equation at every source 1-generator:
    /// `ν_u ∘ (Tu ∗ φ_i) = (φ_j ∗ Su) ∘ μ_u`.
    pub fn check(&self, amb: &Engine) -> Result<Verdict> {
        let p = self.source.ambient().clone();
        let s_pres = self.source.index().clone();
        let bounds = amb.bounds();
        let mut witnesses = Vec::new();
        let mut cert = Certificate::Exact;
        let mut unknown = false;
        for (i, phi) in self.components.iter().enumerate() {
            phi.check(&p)?;
            if p.normalize(&phi.src) != p.normalize(&self.source.obj_components[i])
                || p.normalize(&phi.tgt) != p.normalize(&self.target.obj_components[i])
            {
                witnesses.push(Witness::BoundaryMismatch {
                    left: format!("component at {}", s_pres.objects[i]),
                    right: p.display_term(phi),
                });
            }
        }
        if !witnesses.is_empty() {
            return Ok(Verdict::fails(cert, witnesses, bounds));
        }
        for (u, gen) in s_pres.one_gens.iter().enumerate() {
            let (i, j) = (gen.src, gen.tgt);
            let tu = &self.source.target.one_map[u];
            let su = &self.source.source.one_map[u];
            let lhs = p.vcompose(
                &self.target.one_components[u],
                &p.whisker(&Word::identity(self.components[i].src.src), &self.components[i], tu)?,
            )?;
            let rhs = p.vcompose(
                &p.whisker(su, &self.components[j], &Word::identity(self.components[j].src.tgt(&p)))?,
                &self.source.one_components[u],
            )?;
            let v = amb.equal_two_cells(&lhs, &rhs)?;
            cert = cert.and(v.certificate);
            match v.status {
                Status::Holds => {}
                Status::Fails => witnesses.push(Witness::EquationFails {
                    left: p.display_term(&lhs),
                    right: p.display_term(&rhs),
                    context: format!("modification condition at {}", gen.name),
                }),
                Status::UnknownAtBound => unknown = true,
            }
        }
        Ok(finish(witnesses, unknown, cert, bounds))
    }

    pub fn display(&self) -> String {
        let p = self.source.ambient();
        format!(
            "({})",
            self.components.iter().map(|t| p.display_term(t)).collect::<Vec<_>>().join(", ")
        )
    }
}

/// All valid cones Δ? ⇒ F of the given flavor with summit `x`, components
/// drawn from bounded enumerations.
pub fn enumerate_cones_at(
    f: &Arc<TwoFunctor>,
    x: ObjId,
    flavor: Flavor,
    amb: &Engine,
) -> Result<(Vec<Transformation>, Certificate)> {
    let index = f.source.clone();
    let p = f.target.clone();
    let delta = Arc::new(TwoFunctor::constant(index.clone(), p.clone(), x)?);
    let mut cert = Certificate::Exact;

    // Object component candidates per index object.
    let mut obj_choices: Vec<Vec<Word>> = Vec::new();
    for i in 0..index.objects.len() {
        let (words, c) = amb.one_cells(x, f.apply_obj(i))?;
        cert = cert.and(c);
        obj_choices.push(words);
    }
    let mut cones = Vec::new();
    for objs in cartesian(&obj_choices) {
        // Morphism component candidates per index 1-generator.
        let mut mor_choices: Vec<Vec<Term>> = Vec::new();
        let mut viable = true;
        for (u, gen) in index.one_gens.iter().enumerate() {
            let src_word = p.compose(&f.one_map[u].clone(), &objs[gen.src])?;
            let tgt_word = p.compose(&objs[gen.tgt], &Word::identity(x))?;
            if flavor == Flavor::Strict {
                if src_word == tgt_word {
                    mor_choices.push(vec![Term::identity(src_word)]);
                } else {
                    viable = false;
                    break;
                }
                continue;
            }
            let (terms, c) = amb.two_cells(&src_word, &tgt_word)?;
            cert = cert.and(c);
            let mut keep = Vec::new();
            for t in terms {
                if flavor == Flavor::Pseudo {
                    let v = amb.is_invertible(&t)?;
                    cert = cert.and(v.certificate);
                    if v.status != Status::Holds {
                        if v.status == Status::UnknownAtBound {
                            cert = Certificate::Bounded;
                        }
                        continue;
                    }
                }
                keep.push(t);
            }
            if keep.is_empty() {
                viable = false;
                break;
            }
            mor_choices.push(keep);
        }
        if !viable {
            continue;
        }
        for mors in cartesian(&mor_choices) {
            let cone = Transformation {
                name: String::new(),
                flavor,
                source: delta.clone(),
                target: f.clone(),
                obj_components: objs.clone(),
                one_components: mors,
            };
            let v = cone.check(amb)?;
            cert = cert.and(v.certificate);
            match v.status {
                Status::Holds => cones.push(cone),
                Status::Fails => {}
                Status::UnknownAtBound => cert = Certificate::Bounded,
            }
        }
    }
    Ok((cones, cert))
}

/// Cones of the flavor over all summits, in object order.
pub fn enumerate_cones(
    f: &Arc<TwoFunctor>,
    flavor: Flavor,
    amb: &Engine,
) -> Result<(Vec<Transformation>, Certificate)> {
    let mut all = Vec::new();
    let mut cert = Certificate::Exact;
    for x in 0..f.target.objects.len() {
        let (cones, c) = enumerate_cones_at(f, x, flavor, amb)?;
        cert = cert.and(c);
        all.extend(cones);
    }
    Ok((all, cert))
}

/// All modifications μ ⇛ ν between parallel transformations.
pub fn enumerate_modifications(
    mu: &Transformation,
    nu: &Transformation,
    amb: &Engine,
) -> Result<(Vec<Modification>, Certificate)> {
    if mu.source != nu.source || mu.target != nu.target {
        return Err(KernelError::BoundaryMismatch {
            detail: "modifications need parallel transformations".into(),
        });
    }
    let index = mu.index().clone();
    let mut cert = Certificate::Exact;
    let mut comp_choices: Vec<Vec<Term>> = Vec::new();
    for i in 0..index.objects.len() {
        let (terms, c) = amb.two_cells(&mu.obj_components[i], &nu.obj_components[i])?;
        cert = cert.and(c);
        if terms.is_empty() {
            return Ok((vec![], cert));
        }
        comp_choices.push(terms);
    }
    let mut out = Vec::new();
    for components in cartesian(&comp_choices) {
        let m = Modification { source: mu.clone(), target: nu.clone(), components };
        let v = m.check(amb)?;
        cert = cert.and(v.certificate);
        match v.status {
            Status::Holds => out.push(m),
            Status::Fails => {}
            Status::UnknownAtBound => cert = Certificate::Bounded,
        }
    }
    Ok((out, cert))
}

/// λΔf: post-compose a cone with a morphism into its summit.
pub fn postcompose_cone(lambda: &Transformation, f: &Word, amb: &Engine) -> Result<Transformation> {
    let p = lambda.ambient().clone();
    let summit = lambda
        .summit()
        .ok_or_else(|| KernelError::Invalid("postcompose_cone needs a cone".into()))?;
    if f.tgt(&p) != summit {
        return Err(KernelError::BoundaryMismatch {
            detail: format!("`{}` does not reach the summit", p.display_word(f)),
        });
    }
    let index = lambda.index().clone();
    let delta = Arc::new(TwoFunctor::constant(index, p.clone(), f.src)?);
    let obj_components: Vec<Word> = lambda
        .obj_components
        .iter()
        .map(|w| p.compose(w, f))
        .collect::<Result<_>>()?;
    let one_components: Vec<Term> = lambda
        .one_components
        .iter()
        .map(|t| p.whisker(f, t, &Word::identity(t.src.tgt(&p))))
        .collect::<Result<_>>()?;
    let _ = amb;
    Ok(Transformation {
        name: format!("{}*{}", lambda.name, p.display_word(f)),
        flavor: lambda.flavor,
        source: delta,
        target: lambda.target.clone(),
        obj_components,
        one_components,
    })
}

/// λ∗Δα: whisker a cone with a 2-cell between morphisms into its summit.
pub fn postwhisker_modification(
    lambda: &Transformation,
    alpha: &Term,
    amb: &Engine,
) -> Result<Modification> {
    let p = lambda.ambient().clone();
    let source = postcompose_cone(lambda, &p.normalize(&alpha.src), amb)?;
    let target = postcompose_cone(lambda, &p.normalize(&alpha.tgt), amb)?;
    let components: Vec<Term> = lambda
        .obj_components
        .iter()
        .map(|w| p.whisker(&Word::identity(alpha.src.src), alpha, w))
        .collect::<Result<_>>()?;
    Ok(Modification { source, target, components })
}

/// Are two cones the same object (componentwise equal under the kernel's
/// equality)?
pub fn cones_equal(a: &Transformation, b: &Transformation, amb: &Engine) -> Result<bool> {
    let p = a.ambient();
    if a.summit() != b.summit() || a.obj_components.len() != b.obj_components.len() {
        return Ok(false);
    }
    for (x, y) in a.obj_components.iter().zip(&b.obj_components) {
        if p.normalize(x) != p.normalize(y) {
            return Ok(false);
        }
    }
    for (s, t) in a.one_components.iter().zip(&b.one_components) {
        if amb.equal_two_cells(s, t)?.status != Status::Holds {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Cartesian product of choice vectors, in lexicographic order.
fn cartesian<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    let mut out: Vec<Vec<T>> = vec![vec![]];
    for c in choices {
        let mut next = Vec::with_capacity(out.len() * c.len());
        for prefix in &out {
            for item in c {
                let mut row = prefix.clone();
                row.push(item.clone());
                next.push(row);
            }
        }
        out = next;
    }
    out
}
