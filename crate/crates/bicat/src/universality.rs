//! Terminality and limit predicates.
//!
//! A candidate cone (L, λ) is a 2-limit (iso strength) when, for every
//! object X of the ambient 2-category, post-composition with λ is an
//! isomorphism from the hom-category A(X, L) onto the category of
//! matching-flavor cones with summit X and their modifications; for bi
//! strength the isomorphism is weakened to an equivalence. Terminality is
//! decided directly on a built slice: every hom-category into the
//! candidate must be the terminal category (iso) or merely equivalent to
//! it (bi), using the finite characterization "nonempty and exactly one
//! morphism between every ordered pair of objects".

use crate::cat::{FinMor, FiniteCategory};
use crate::diagram::{
    cones_equal, enumerate_cones_at, enumerate_modifications, postcompose_cone,
    postwhisker_modification, Flavor, Modification, Transformation, TwoFunctor,
};
use crate::engine::Engine;
use crate::error::{KernelError, Result};
use crate::slice::SliceTwoCategory;
use crate::verdict::{Certificate, Status, Verdict, Witness};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strength {
    Iso,
    Bi,
}

impl Strength {
    pub fn parse(s: &str) -> Result<Strength> {
        match s {
            "iso" => Ok(Strength::Iso),
            "bi" => Ok(Strength::Bi),
            _ => Err(KernelError::Invalid(format!("unknown strength `{}`", s))),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Strength::Iso => "iso",
            Strength::Bi => "bi",
        }
    }
}

/// A functor between finite categories, given by index maps.
pub struct FunctorBetweenFiniteCategories {
    pub source: FiniteCategory,
    pub target: FiniteCategory,
    pub obj_map: Vec<usize>,
    pub mor_map: Vec<usize>,
}

impl FunctorBetweenFiniteCategories {
    /// Exhaustively verify identity and composition preservation.
    pub fn check(&self) -> Result<()> {
        for (o, &i) in self.source.identity.iter().enumerate() {
            if self.mor_map[i] != self.target.identity[self.obj_map[o]] {
                return Err(KernelError::Invalid(format!(
                    "functor does not preserve the identity of {}",
                    self.source.objects[o]
                )));
            }
        }
        for m in 0..self.source.morphisms.len() {
            let fm = &self.source.morphisms[m];
            let im = &self.target.morphisms[self.mor_map[m]];
            if im.src != self.obj_map[fm.src] || im.tgt != self.obj_map[fm.tgt] {
                return Err(KernelError::Invalid("functor breaks a boundary".into()));
            }
        }
        for (&(g, f), &gf) in &self.source.compose {
            let igf = self.target.composite(self.mor_map[g], self.mor_map[f])?;
            if igf != self.mor_map[gf] {
                return Err(KernelError::Invalid(format!(
                    "functor does not preserve the composite {} . {}",
                    self.source.morphisms[g].label, self.source.morphisms[f].label
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorAnalysis {
    pub injective_on_objects: bool,
    pub surjective_on_objects: bool,
    pub faithful: bool,
    pub full: bool,
    pub essentially_surjective: bool,
    pub witnesses: Vec<Witness>,
}

impl FunctorAnalysis {
    pub fn iso(&self) -> bool {
        self.injective_on_objects && self.surjective_on_objects && self.faithful && self.full
    }

    pub fn equivalence(&self) -> bool {
        self.faithful && self.full && self.essentially_surjective
    }
}

/// Compute all five flags with witnesses, exhaustively.
pub fn analyze_functor(fc: &FunctorBetweenFiniteCategories) -> FunctorAnalysis {
    let mut witnesses = Vec::new();

    let mut injective_on_objects = true;
    for a in 0..fc.source.objects.len() {
        for b in a + 1..fc.source.objects.len() {
            if fc.obj_map[a] == fc.obj_map[b] {
                injective_on_objects = false;
                witnesses.push(Witness::Collision {
                    first: fc.source.objects[a].clone(),
                    second: fc.source.objects[b].clone(),
                    image: fc.target.objects[fc.obj_map[a]].clone(),
                });
            }
        }
    }

    let mut surjective_on_objects = true;
    for t in 0..fc.target.objects.len() {
        if !fc.obj_map.contains(&t) {
            surjective_on_objects = false;
            witnesses.push(Witness::MissingPreimage {
                what: "object".into(),
                target: fc.target.objects[t].clone(),
            });
        }
    }

    let mut faithful = true;
    for a in 0..fc.source.morphisms.len() {
        for b in a + 1..fc.source.morphisms.len() {
            let (ma, mb) = (&fc.source.morphisms[a], &fc.source.morphisms[b]);
            if ma.src == mb.src && ma.tgt == mb.tgt && fc.mor_map[a] == fc.mor_map[b] {
                faithful = false;
                witnesses.push(Witness::Collision {
                    first: ma.label.clone(),
                    second: mb.label.clone(),
                    image: fc.target.morphisms[fc.mor_map[a]].label.clone(),
                });
            }
        }
    }

    let mut full = true;
    for a in 0..fc.source.objects.len() {
        for b in 0..fc.source.objects.len() {
            for g in fc.target.hom(fc.obj_map[a], fc.obj_map[b]) {
                let has_preimage = fc
                    .source
                    .hom(a, b)
                    .into_iter()
                    .any(|f| fc.mor_map[f] == g);
                if !has_preimage {
                    full = false;
                    witnesses.push(Witness::MissingPreimage {
                        what: "morphism".into(),
                        target: fc.target.morphisms[g].label.clone(),
                    });
                }
            }
        }
    }

    let mut essentially_surjective = true;
    for t in 0..fc.target.objects.len() {
        let hit = (0..fc.source.objects.len()).any(|a| {
            let ia = fc.obj_map[a];
            ia == t || fc.target.hom(ia, t).into_iter().any(|m| fc.target.is_iso(m))
        });
        if !hit {
            essentially_surjective = false;
            witnesses.push(Witness::NotEssentiallySurjective {
                target: fc.target.objects[t].clone(),
            });
        }
    }

    FunctorAnalysis {
        injective_on_objects,
        surjective_on_objects,
        faithful,
        full,
        essentially_surjective,
        witnesses,
    }
}

/// The finite category of flavor-cones with summit `x` and their
/// modifications, with enough bookkeeping to locate cells inside it.
pub struct ConeCategory {
    pub cones: Vec<Transformation>,
    pub modifications: Vec<(usize, usize, Modification)>,
    pub cat: FiniteCategory,
    pub certificate: Certificate,
}

impl ConeCategory {
    pub fn build(f: &Arc<TwoFunctor>, x: usize, flavor: Flavor, amb: &Engine) -> Result<ConeCategory> {
        let (cones, mut cert) = enumerate_cones_at(f, x, flavor, amb)?;
        let mut modifications: Vec<(usize, usize, Modification)> = Vec::new();
        for (i, mu) in cones.iter().enumerate() {
            for (j, nu) in cones.iter().enumerate() {
                let (mods, c) = enumerate_modifications(mu, nu, amb)?;
                cert = cert.and(c);
                for m in mods {
                    modifications.push((i, j, m));
                }
            }
        }
        let identity: Vec<usize> = (0..cones.len())
            .map(|i| {
                modifications
                    .iter()
                    .position(|(s, t, m)| *s == i && *t == i && m.is_identity())
                    .expect("identity modification is always enumerated")
            })
            .collect();
        let mut compose = BTreeMap::new();
        let p = f.target.clone();
        for (a, (s1, t1, m1)) in modifications.iter().enumerate() {
            for (b, (s2, t2, m2)) in modifications.iter().enumerate() {
                if t1 != s2 {
                    continue;
                }
                let comps: Vec<_> = m1
                    .components
                    .iter()
                    .zip(&m2.components)
                    .map(|(x1, x2)| p.vcompose(x2, x1))
                    .collect::<Result<_>>()?;
                let mut found = None;
                for (idx, (s3, t3, m3)) in modifications.iter().enumerate() {
                    if s3 != s1 || t3 != t2 {
                        continue;
                    }
                    let mut equal = true;
                    for (u, v) in m3.components.iter().zip(&comps) {
                        if amb.equal_two_cells(u, v)?.status != Status::Holds {
                            equal = false;
                            break;
                        }
                    }
                    if equal {
                        found = Some(idx);
                        break;
                    }
                }
                let idx = found.ok_or(KernelError::BoundExceeded {
                    context: "composing modifications".into(),
                })?;
                compose.insert((b, a), idx);
            }
        }
        let cat = FiniteCategory {
            objects: cones.iter().map(|c| c.display()).collect(),
            morphisms: modifications
                .iter()
                .map(|(s, t, m)| FinMor { src: *s, tgt: *t, label: m.display() })
                .collect(),
            identity,
            compose,
        };
        Ok(ConeCategory { cones, modifications, cat, certificate: cert })
    }

    pub fn cone_index(&self, c: &Transformation, amb: &Engine) -> Result<Option<usize>> {
        for (i, o) in self.cones.iter().enumerate() {
            if cones_equal(o, c, amb)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn modification_index(&self, m: &Modification, amb: &Engine) -> Result<Option<usize>> {
        let (s, t) = (
            self.cone_index(&m.source, amb)?,
            self.cone_index(&m.target, amb)?,
        );
        let (s, t) = match (s, t) {
            (Some(s), Some(t)) => (s, t),
            _ => return Ok(None),
        };
        'mods: for (i, (ms, mt, mm)) in self.modifications.iter().enumerate() {
            if *ms != s || *mt != t {
                continue;
            }
            for (u, v) in mm.components.iter().zip(&m.components) {
                if amb.equal_two_cells(u, v)?.status != Status::Holds {
                    continue 'mods;
                }
            }
            return Ok(Some(i));
        }
        Ok(None)
    }
}

/// The post-composition functor A(X, L) → (flavor-cones at X).
pub struct PostComposition {
    pub functor: FunctorBetweenFiniteCategories,
    pub target: ConeCategory,
    pub certificate: Certificate,
}

pub fn post_composition(
    f: &Arc<TwoFunctor>,
    lambda: &Transformation,
    x: usize,
    cone_flavor: Flavor,
    amb: &Engine,
) -> Result<PostComposition> {
    if lambda.flavor > cone_flavor {
        return Err(KernelError::Invalid(format!(
            "candidate cone has flavor {} but the question asks about {} cones",
            lambda.flavor, cone_flavor
        )));
    }
    let summit = lambda
        .summit()
        .ok_or_else(|| KernelError::Invalid("candidate is not a cone".into()))?;
    let hom = amb.hom_category(x, summit)?;
    let target = ConeCategory::build(f, x, cone_flavor, amb)?;
    let cert = hom.certificate.and(target.certificate);
    let mut obj_map = Vec::with_capacity(hom.objects.len());
    for w in &hom.objects {
        let posted = postcompose_cone(lambda, w, amb)?;
        let idx = target.cone_index(&posted, amb)?.ok_or(KernelError::BoundExceeded {
            context: "locating a post-composed cone".into(),
        })?;
        obj_map.push(idx);
    }
    let mut mor_map = Vec::with_capacity(hom.morphisms.len());
    for m in &hom.morphisms {
        let whiskered = postwhisker_modification(lambda, &m.term, amb)?;
        let idx = target
            .modification_index(&whiskered, amb)?
            .ok_or(KernelError::BoundExceeded {
                context: "locating a post-whiskered modification".into(),
            })?;
        mor_map.push(idx);
    }
    let functor = FunctorBetweenFiniteCategories {
        source: hom.cat,
        target: target.cat.clone(),
        obj_map,
        mor_map,
    };
    functor.check()?;
    Ok(PostComposition { functor, target, certificate: cert })
}

/// 2-terminality of a slice object: every hom-category into it is the
/// terminal category on the nose.
pub fn is_two_terminal(s: &SliceTwoCategory, c: usize, amb: &Engine) -> Result<Verdict> {
    let bounds = amb.bounds();
    let mut witnesses = Vec::new();
    for a in 0..s.objects.len() {
        let ones = s.one_cells_between(a, c);
        if ones.is_empty() {
            witnesses.push(Witness::EmptyHom { hom: format!("Slice({}, {})", s.objects[a].display(), s.objects[c].display()) });
            continue;
        }
        if ones.len() > 1 {
            witnesses.push(Witness::ExtraMorphism {
                hom: format!("Slice({}, {})", s.objects[a].display(), s.objects[c].display()),
                first: s.display_one_cell(ones[0]),
                second: s.display_one_cell(ones[1]),
            });
        }
        let twos: Vec<usize> = (0..s.two_cells.len())
            .filter(|&t| ones.contains(&s.two_cells[t].src) && ones.contains(&s.two_cells[t].tgt))
            .collect();
        if twos.len() > ones.len() {
            // more 2-cells than identities
            let p = s.objects[a].ambient();
            let extra = twos
                .iter()
                .find(|&&t| !s.two_cells[t].alpha.is_identity_term())
                .copied()
                .unwrap_or(twos[0]);
            witnesses.push(Witness::ExtraMorphism {
                hom: format!("Slice({}, {})", s.objects[a].display(), s.objects[c].display()),
                first: "the identity 2-cell".into(),
                second: p.display_term(&s.two_cells[extra].alpha),
            });
        }
    }
    Ok(if witnesses.is_empty() {
        Verdict::holds(s.certificate, bounds)
    } else {
        Verdict::fails(s.certificate, witnesses, bounds)
    })
}

/// Bi-terminality: every hom-category into the object is equivalent to the
/// terminal category — nonempty, with exactly one morphism between every
/// ordered pair of its objects.
pub fn is_bi_terminal(s: &SliceTwoCategory, c: usize, amb: &Engine) -> Result<Verdict> {
    let bounds = amb.bounds();
    let mut witnesses = Vec::new();
    for a in 0..s.objects.len() {
        let ones = s.one_cells_between(a, c);
        if ones.is_empty() {
            witnesses.push(Witness::EmptyHom { hom: format!("Slice({}, {})", s.objects[a].display(), s.objects[c].display()) });
            continue;
        }
        for &m1 in &ones {
            for &m2 in &ones {
                let twos: Vec<usize> = (0..s.two_cells.len())
                    .filter(|&t| s.two_cells[t].src == m1 && s.two_cells[t].tgt == m2)
                    .collect();
                if twos.len() != 1 {
                    let p = s.objects[a].ambient();
                    if twos.is_empty() {
                        witnesses.push(Witness::MissingPreimage {
                            what: "2-cell".into(),
                            target: format!(
                                "{} => {}",
                                s.display_one_cell(m1),
                                s.display_one_cell(m2)
                            ),
                        });
                    } else {
                        witnesses.push(Witness::ExtraMorphism {
                            hom: format!(
                                "{} => {}",
                                s.display_one_cell(m1),
                                s.display_one_cell(m2)
                            ),
                            first: p.display_term(&s.two_cells[twos[0]].alpha),
                            second: p.display_term(&s.two_cells[twos[1]].alpha),
                        });
                    }
                }
            }
        }
    }
    Ok(if witnesses.is_empty() {
        Verdict::holds(s.certificate, bounds)
    } else {
        Verdict::fails(s.certificate, witnesses, bounds)
    })
}

/// The limit predicate for a candidate cone, at the given cone flavor and
/// strength, quantified over every object of the ambient 2-category.
pub fn is_limit(
    f: &Arc<TwoFunctor>,
    lambda: &Transformation,
    cone_flavor: Flavor,
    strength: Strength,
    amb: &Engine,
) -> Result<Verdict> {
    let bounds = amb.bounds();
    let mut cert = Certificate::Exact;
    let mut witnesses = Vec::new();
    let mut unknown = false;
    for x in 0..f.target.objects.len() {
        let pc = match post_composition(f, lambda, x, cone_flavor, amb) {
            Ok(pc) => pc,
            Err(KernelError::BoundExceeded { .. }) => {
                unknown = true;
                cert = Certificate::Bounded;
                continue;
            }
            Err(e) => return Err(e),
        };
        cert = cert.and(pc.certificate);
        let analysis = analyze_functor(&pc.functor);
        let ok = match strength {
            Strength::Iso => analysis.iso(),
            Strength::Bi => analysis.equivalence(),
        };
        if !ok {
            let mut ws = analysis.witnesses;
            ws.insert(
                0,
                Witness::Note {
                    text: format!("post-composition fails at summit {}", f.target.objects[x]),
                },
            );
            witnesses.extend(ws);
        }
    }
    Ok(if !witnesses.is_empty() {
        Verdict::fails(cert, witnesses, bounds)
    } else if unknown {
        Verdict::unknown(
            vec![Witness::Note { text: "some summit could not be analyzed within bounds".into() }],
            bounds,
        )
    } else {
        Verdict::holds(cert, bounds)
    })
}
