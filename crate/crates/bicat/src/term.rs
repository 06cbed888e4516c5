//! Pasting terms for 2-cells.
//!
//! A term is a vertical stack of layers; each layer whiskers a single atom
//! (a 2-generator or a formal inverse of an invertible one) by a word on
//! each side. The empty stack is the identity 2-cell on its boundary word.
//! Terms are syntax: deciding when two terms denote the same 2-cell is the
//! engine's job ([`crate::engine`]), not structural equality.

use crate::error::{KernelError, Result};
use crate::presentation::{Presentation, TwoGenId, Word};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Atom {
    pub gen: TwoGenId,
    pub inverted: bool,
}

impl Atom {
    pub fn src(&self, p: &Presentation) -> Word {
        let g = &p.two_gens[self.gen];
        if self.inverted { g.tgt.clone() } else { g.src.clone() }
    }

    pub fn tgt(&self, p: &Presentation) -> Word {
        let g = &p.two_gens[self.gen];
        if self.inverted { g.src.clone() } else { g.tgt.clone() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Layer {
    pub pre: Word,
    pub atom: Atom,
    pub post: Word,
}

impl Layer {
    pub fn src(&self, p: &Presentation) -> Word {
        let mut gens = self.pre.gens.clone();
        gens.extend_from_slice(&self.atom.src(p).gens);
        gens.extend_from_slice(&self.post.gens);
        Word { src: self.pre.src, gens }
    }

    pub fn tgt(&self, p: &Presentation) -> Word {
        let mut gens = self.pre.gens.clone();
        gens.extend_from_slice(&self.atom.tgt(p).gens);
        gens.extend_from_slice(&self.post.gens);
        Word { src: self.pre.src, gens }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Term {
    pub src: Word,
    pub tgt: Word,
    pub layers: Vec<Layer>,
}

impl Term {
    pub fn identity(w: Word) -> Term {
        Term { src: w.clone(), tgt: w, layers: vec![] }
    }

    pub fn generator(p: &Presentation, gen: TwoGenId) -> Term {
        Self::atom(p, Atom { gen, inverted: false })
    }

    pub fn atom(p: &Presentation, atom: Atom) -> Term {
        let g = &p.two_gens[atom.gen];
        let obj = g.src.src;
        Term {
            src: atom.src(p),
            tgt: atom.tgt(p),
            layers: vec![Layer {
                pre: Word::identity(obj),
                atom,
                post: Word::identity(g.src.tgt(p)),
            }],
        }
    }

    pub fn is_identity_term(&self) -> bool {
        self.layers.is_empty()
    }

    /// Structural well-typedness: every layer's boundary words are words of
    /// `p`, inverses only occur on invertible generators, and consecutive
    /// layers agree up to 1-normalization.
    pub fn check(&self, p: &Presentation) -> Result<()> {
        p.check_word(&self.src)?;
        p.check_word(&self.tgt)?;
        let mut at = p.normalize(&self.src);
        for layer in &self.layers {
            if layer.atom.gen >= p.two_gens.len() {
                return Err(KernelError::IllTyped { kind: "term", detail: "undeclared 2-cell".into() });
            }
            let g = &p.two_gens[layer.atom.gen];
            if layer.atom.inverted && !g.invertible {
                return Err(KernelError::NotInvertible { name: g.name.clone() });
            }
            let lsrc = layer.src(p);
            p.check_word(&lsrc)?;
            if p.normalize(&lsrc) != at {
                return Err(KernelError::BoundaryMismatch {
                    detail: format!(
                        "layer source `{}` does not match `{}`",
                        p.display_word(&lsrc),
                        p.display_word(&at)
                    ),
                });
            }
            at = p.normalize(&layer.tgt(p));
        }
        if at != p.normalize(&self.tgt) {
            return Err(KernelError::BoundaryMismatch {
                detail: format!(
                    "term target `{}` does not match declared `{}`",
                    p.display_word(&at),
                    p.display_word(&self.tgt)
                ),
            });
        }
        Ok(())
    }

    /// Formal inverse: reverse the stack and invert each atom. Only valid
    /// when every atom is invertible.
    pub fn inverse(&self, p: &Presentation) -> Result<Term> {
        let mut layers = Vec::with_capacity(self.layers.len());
        for layer in self.layers.iter().rev() {
            let g = &p.two_gens[layer.atom.gen];
            if !g.invertible {
                return Err(KernelError::NotInvertible { name: g.name.clone() });
            }
            layers.push(Layer {
                pre: layer.pre.clone(),
                atom: Atom { gen: layer.atom.gen, inverted: !layer.atom.inverted },
                post: layer.post.clone(),
            });
        }
        Ok(Term { src: self.tgt.clone(), tgt: self.src.clone(), layers })
    }
}

impl Presentation {
    /// Whisker `t` by `pre` (applied first) and `post` (applied last).
    pub fn whisker(&self, pre: &Word, t: &Term, post: &Word) -> Result<Term> {
        if pre.tgt(self) != t.src.src {
            return Err(KernelError::BoundaryMismatch {
                detail: format!(
                    "pre-whisker `{}` does not reach the term's source object",
                    self.display_word(pre)
                ),
            });
        }
        if t.src.tgt(self) != post.src {
            return Err(KernelError::BoundaryMismatch {
                detail: format!(
                    "post-whisker `{}` does not start at the term's target object",
                    self.display_word(post)
                ),
            });
        }
        let glue = |w: &Word| -> Word {
            let mut gens = pre.gens.clone();
            gens.extend_from_slice(&w.gens);
            gens.extend_from_slice(&post.gens);
            Word { src: pre.src, gens }
        };
        let layers = t
            .layers
            .iter()
            .map(|layer| Layer {
                pre: glue_pre(pre, &layer.pre),
                atom: layer.atom,
                post: glue_post(&layer.post, post),
            })
            .collect();
        Ok(Term { src: glue(&t.src), tgt: glue(&t.tgt), layers })
    }

    /// Vertical composite: `t1` first, then `t2`.
    pub fn vcompose(&self, t2: &Term, t1: &Term) -> Result<Term> {
        if self.normalize(&t1.tgt) != self.normalize(&t2.src) {
            return Err(KernelError::BoundaryMismatch {
                detail: format!(
                    "vertical composite: `{}` does not match `{}`",
                    self.display_word(&t1.tgt),
                    self.display_word(&t2.src)
                ),
            });
        }
        let mut layers = t1.layers.clone();
        layers.extend_from_slice(&t2.layers);
        Ok(Term { src: t1.src.clone(), tgt: t2.tgt.clone(), layers })
    }

    /// Horizontal composite: `t1` first (on 1-cells), then `t2`. Defined as
    /// whisker-then-vcompose; the other whiskering order is equal under the
    /// engine's equality, which is the interchange law.
    pub fn hcompose(&self, t2: &Term, t1: &Term) -> Result<Term> {
        if t1.src.tgt(self) != t2.src.src {
            return Err(KernelError::BoundaryMismatch {
                detail: "horizontal composite: boundaries not composable".into(),
            });
        }
        let first = self.whisker(&Word::identity(t1.src.src), t1, &t2.src)?;
        let second = self.whisker(&t1.tgt, t2, &Word::identity(t2.src.tgt(self)))?;
        self.vcompose(&second, &first)
    }

    pub fn display_term(&self, t: &Term) -> String {
        if t.layers.is_empty() {
            return format!("id({})", self.display_word(&t.src));
        }
        let layers: Vec<String> = t
            .layers
            .iter()
            .rev() // applicative order: last layer first, matching `&`
            .map(|layer| {
                let mut parts = Vec::new();
                if !layer.post.is_empty() {
                    parts.push(self.display_word(&layer.post));
                }
                let g = &self.two_gens[layer.atom.gen];
                parts.push(if layer.atom.inverted {
                    format!("{}^-1", g.name)
                } else {
                    g.name.clone()
                });
                if !layer.pre.is_empty() {
                    parts.push(self.display_word(&layer.pre));
                }
                let s = parts.join(" * ");
                if parts.len() > 1 && t.layers.len() > 1 { format!("({})", s) } else { s }
            })
            .collect();
        layers.join(" & ")
    }
}

fn glue_pre(outer: &Word, inner: &Word) -> Word {
    let mut gens = outer.gens.clone();
    gens.extend_from_slice(&inner.gens);
    Word { src: outer.src, gens }
}

fn glue_post(inner: &Word, outer: &Word) -> Word {
    let mut gens = inner.gens.clone();
    gens.extend_from_slice(&outer.gens);
    Word { src: inner.src, gens }
}
