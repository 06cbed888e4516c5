//! Finitely presented 2-categories: generators, relations, and the 1-cell
//! word problem.
//!
//! 1-cells are words over the declared generators, stored in diagrammatic
//! order (`gens[0]` is applied first), so the displayed composite `g . f`
//! is the word `[f, g]`. Equality of 1-cells is decided by shortlex
//! rewriting: each 1-relation is oriented from its shortlex-greater side to
//! its shortlex-less side, with the generator order given by declaration
//! order. That orientation is only sound if the resulting rewriting system
//! is confluent, so [`Presentation::validate`] runs a critical-pair check
//! and refuses to load a presentation that fails it. No completion is
//! attempted.

use crate::error::{KernelError, Result};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;

pub type ObjId = usize;
pub type OneGenId = usize;
pub type TwoGenId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OneGen {
    pub name: String,
    pub src: ObjId,
    pub tgt: ObjId,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoGen {
    pub name: String,
    pub src: Word,
    pub tgt: Word,
    pub invertible: bool,
}

/// A composable word of 1-cell generators. The empty word is the identity
/// and carries its object explicitly so that every word has a well-defined
/// boundary.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    pub src: ObjId,
    /// Generators in diagrammatic order: `gens[0]` is applied first.
    pub gens: Vec<OneGenId>,
}

impl Word {
    pub fn identity(obj: ObjId) -> Word {
        Word { src: obj, gens: vec![] }
    }

    pub fn generator(p: &Presentation, g: OneGenId) -> Word {
        Word { src: p.one_gens[g].src, gens: vec![g] }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn tgt(&self, p: &Presentation) -> ObjId {
        match self.gens.last() {
            Some(&g) => p.one_gens[g].tgt,
            None => self.src,
        }
    }
}

/// Shortlex: shorter words first, then lexicographic in generator ids.
/// This is the order that picks normal forms, so it is also the crate-wide
/// `Ord` for words.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.gens
            .len()
            .cmp(&other.gens.len())
            .then_with(|| self.gens.cmp(&other.gens))
            .then_with(|| self.src.cmp(&other.src))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An oriented 1-cell rewrite rule `lhs -> rhs` with `rhs` shortlex-less.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub name: String,
    pub objects: Vec<String>,
    pub one_gens: Vec<OneGen>,
    pub two_gens: Vec<TwoGen>,
    pub one_relations: Vec<(Word, Word)>,
    pub two_relations: Vec<(crate::term::Term, crate::term::Term)>,
    /// Oriented rules derived from `one_relations`; populated by `validate`.
    #[serde(skip)]
    pub rules: Vec<Rule>,
}

impl Presentation {
    pub fn object_id(&self, name: &str) -> Result<ObjId> {
        self.objects
            .iter()
            .position(|o| o == name)
            .ok_or_else(|| KernelError::UnknownName { kind: "object", name: name.into() })
    }

    pub fn one_gen_id(&self, name: &str) -> Result<OneGenId> {
        self.one_gens
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| KernelError::UnknownName { kind: "1-cell", name: name.into() })
    }

    pub fn two_gen_id(&self, name: &str) -> Result<TwoGenId> {
        self.two_gens
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| KernelError::UnknownName { kind: "2-cell", name: name.into() })
    }

    /// Check all structural invariants, orient the 1-relations shortlex, and
    /// verify local confluence of the resulting rules via critical pairs.
    /// Must be called (and succeed) before the presentation is used.
    pub fn validate(&mut self) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        for o in &self.objects {
            if !seen.insert(("object", o.clone())) {
                return Err(KernelError::DuplicateName { kind: "object", name: o.clone() });
            }
        }
        for g in &self.one_gens {
            if !seen.insert(("1-cell", g.name.clone())) {
                return Err(KernelError::DuplicateName { kind: "1-cell", name: g.name.clone() });
            }
            if g.src >= self.objects.len() || g.tgt >= self.objects.len() {
                return Err(KernelError::IllTyped {
                    kind: "1-cell generator",
                    detail: format!("`{}` references an undeclared object", g.name),
                });
            }
        }
        for g in &self.two_gens {
            if !seen.insert(("2-cell", g.name.clone())) {
                return Err(KernelError::DuplicateName { kind: "2-cell", name: g.name.clone() });
            }
        }

        // Typing of all stored words and generator boundaries.
        let words_of_two_gen: Vec<(Word, Word)> =
            self.two_gens.iter().map(|g| (g.src.clone(), g.tgt.clone())).collect();
        for (s, t) in &words_of_two_gen {
            self.check_word(s)?;
            self.check_word(t)?;
            if s.src != t.src || s.tgt(self) != t.tgt(self) {
                return Err(KernelError::IllTyped {
                    kind: "2-cell generator",
                    detail: "source and target words are not parallel".into(),
                });
            }
        }
        for (l, r) in &self.one_relations {
            self.check_word(l)?;
            self.check_word(r)?;
            if l.src != r.src || l.tgt(self) != r.tgt(self) {
                return Err(KernelError::IllTyped {
                    kind: "1-relation",
                    detail: format!(
                        "sides `{}` and `{}` are not parallel",
                        self.display_word(l),
                        self.display_word(r)
                    ),
                });
            }
        }

        // Orient the relations and check confluence before touching the
        // 2-relations (whose typing needs normalization).
        self.rules = self
            .one_relations
            .iter()
            .filter(|(l, r)| l != r)
            .map(|(l, r)| {
                if l > r {
                    Rule { lhs: l.clone(), rhs: r.clone() }
                } else {
                    Rule { lhs: r.clone(), rhs: l.clone() }
                }
            })
            .collect();
        self.check_confluence()?;

        let two_rels = self.two_relations.clone();
        for (l, r) in &two_rels {
            l.check(self)?;
            r.check(self)?;
            if self.normalize(&l.src) != self.normalize(&r.src)
                || self.normalize(&l.tgt) != self.normalize(&r.tgt)
            {
                return Err(KernelError::IllTyped {
                    kind: "2-relation",
                    detail: format!(
                        "sides `{}` and `{}` are not parallel up to 1-normalization",
                        self.display_term(l),
                        self.display_term(r)
                    ),
                });
            }
        }
        Ok(())
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        if w.src >= self.objects.len() {
            return Err(KernelError::IllTyped { kind: "word", detail: "undeclared base object".into() });
        }
        let mut at = w.src;
        for &g in &w.gens {
            let gen = self.one_gens.get(g).ok_or(KernelError::IllTyped {
                kind: "word",
                detail: "undeclared generator".into(),
            })?;
            if gen.src != at {
                return Err(KernelError::BoundaryMismatch {
                    detail: format!(
                        "`{}` expects source {}, found {}",
                        gen.name, self.objects[gen.src], self.objects[at]
                    ),
                });
            }
            at = gen.tgt;
        }
        Ok(())
    }

    /// Shortlex normal form. Applies the leftmost match of the first
    /// matching rule until no rule applies; terminates because every step
    /// is a strict shortlex decrease.
    pub fn normalize(&self, w: &Word) -> Word {
        let mut cur = w.clone();
        'outer: loop {
            for rule in &self.rules {
                let n = rule.lhs.gens.len();
                if n == 0 || cur.gens.len() < n {
                    continue;
                }
                for i in 0..=cur.gens.len() - n {
                    if cur.gens[i..i + n] == rule.lhs.gens[..] {
                        let mut next = Vec::with_capacity(cur.gens.len() - n + rule.rhs.gens.len());
                        next.extend_from_slice(&cur.gens[..i]);
                        next.extend_from_slice(&rule.rhs.gens);
                        next.extend_from_slice(&cur.gens[i + n..]);
                        cur.gens = next;
                        continue 'outer;
                    }
                }
            }
            return cur;
        }
    }

    /// Concatenate `f` then `g` and normalize. Errors unless tgt(f) = src(g).
    pub fn compose(&self, g: &Word, f: &Word) -> Result<Word> {
        if f.tgt(self) != g.src {
            return Err(KernelError::BoundaryMismatch {
                detail: format!(
                    "cannot compose `{}` after `{}`: target {} != source {}",
                    self.display_word(g),
                    self.display_word(f),
                    self.objects[f.tgt(self)],
                    self.objects[g.src]
                ),
            });
        }
        let mut gens = f.gens.clone();
        gens.extend_from_slice(&g.gens);
        Ok(self.normalize(&Word { src: f.src, gens }))
    }

    /// All normal-form words out of `from` with length at most `max_len`,
    /// together with a flag recording whether the enumeration was truncated
    /// (some extension normalized to a word longer than `max_len`).
    pub fn normal_words_from(&self, from: ObjId, max_len: usize) -> (Vec<Word>, bool) {
        let mut found = std::collections::BTreeSet::new();
        let mut frontier = vec![Word::identity(from)];
        found.insert(Word::identity(from));
        let mut truncated = false;
        while let Some(w) = frontier.pop() {
            let at = w.tgt(self);
            for (g, gen) in self.one_gens.iter().enumerate() {
                if gen.src != at {
                    continue;
                }
                let mut gens = w.gens.clone();
                gens.push(g);
                let ext = self.normalize(&Word { src: from, gens });
                if ext.len() > max_len {
                    truncated = true;
                    continue;
                }
                if found.insert(ext.clone()) {
                    frontier.push(ext);
                }
            }
        }
        (found.into_iter().collect(), truncated)
    }

    /// Objects reachable from `from` along 1-generators, and whether the
    /// reachable subgraph contains a cycle. Acyclicity is what licenses
    /// `exact` certificates: it guarantees the homs out of `from` are finite.
    pub fn reachable_acyclic(&self, from: ObjId) -> bool {
        // Iterative DFS with colors over the reachable subgraph.
        #[derive(Clone, Copy, PartialEq)]
        enum Color {
            White,
            Grey,
            Black,
        }
        let mut color = vec![Color::White; self.objects.len()];
        let mut stack = vec![(from, 0usize)];
        let succs: Vec<Vec<ObjId>> = (0..self.objects.len())
            .map(|o| self.one_gens.iter().filter(|g| g.src == o).map(|g| g.tgt).collect())
            .collect();
        color[from] = Color::Grey;
        while let Some(&mut (o, ref mut i)) = stack.last_mut() {
            if *i < succs[o].len() {
                let next = succs[o][*i];
                *i += 1;
                match color[next] {
                    Color::Grey => return false,
                    Color::White => {
                        color[next] = Color::Grey;
                        stack.push((next, 0));
                    }
                    Color::Black => {}
                }
            } else {
                color[o] = Color::Black;
                stack.pop();
            }
        }
        true
    }

    /// Critical-pair confluence check for the oriented rules.
    fn check_confluence(&self) -> Result<()> {
        let mut superpositions: Vec<Vec<OneGenId>> = Vec::new();
        for r1 in &self.rules {
            for r2 in &self.rules {
                let a = &r1.lhs.gens;
                let b = &r2.lhs.gens;
                // Proper overlaps: a nonempty suffix of a equals a prefix of b.
                for k in 1..a.len().min(b.len()) {
                    if a[a.len() - k..] == b[..k] {
                        let mut w = a.clone();
                        w.extend_from_slice(&b[k..]);
                        superpositions.push(w);
                    }
                }
                // Containment: b occurs inside a.
                if b.len() < a.len() {
                    for i in 0..=a.len() - b.len() {
                        if a[i..i + b.len()] == b[..] {
                            superpositions.push(a.clone());
                        }
                    }
                }
            }
        }
        for gens in superpositions {
            // Rewrite the superposition in all single-step ways, then
            // normalize each result; all must agree.
            let src = self.one_gens[gens[0]].src;
            let w = Word { src, gens };
            let mut results = std::collections::BTreeSet::new();
            for rule in &self.rules {
                let n = rule.lhs.gens.len();
                if n == 0 || w.gens.len() < n {
                    continue;
                }
                for i in 0..=w.gens.len() - n {
                    if w.gens[i..i + n] == rule.lhs.gens[..] {
                        let mut next = Vec::new();
                        next.extend_from_slice(&w.gens[..i]);
                        next.extend_from_slice(&rule.rhs.gens);
                        next.extend_from_slice(&w.gens[i + n..]);
                        results.insert(self.normalize(&Word { src, gens: next }));
                    }
                }
            }
            if results.len() > 1 {
                let mut it = results.into_iter();
                let l = it.next().unwrap();
                let r = it.next().unwrap();
                return Err(KernelError::NonConfluent {
                    overlap: self.display_word(&w),
                    left: self.display_word(&l),
                    right: self.display_word(&r),
                });
            }
        }
        Ok(())
    }

    pub fn display_word(&self, w: &Word) -> String {
        if w.gens.is_empty() {
            return format!("id({})", self.objects[w.src]);
        }
        // Applicative order for display: last-applied generator first.
        w.gens
            .iter()
            .rev()
            .map(|&g| self.one_gens[g].name.as_str())
            .collect::<Vec<_>>()
            .join(" . ")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "2category {}", self.name)
    }
}
