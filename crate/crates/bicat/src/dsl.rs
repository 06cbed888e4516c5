//! The text format: presentations, 2-functors, and cones.
//!
//! Line-oriented, ASCII names, `#` comments. A document is a sequence of
//! blocks:
//!
//! ```text
//! 2category NAME
//! objects: A B C
//! 1cells:
//!   f: A -> B
//! 2cells:
//!   invertible alpha: (f) => (g)
//! relations:
//!   b . lambda0 = c . lambda1
//!   b * gamma0 = c * gamma1
//!
//! 2functor NAME: INDEX -> AMBIENT
//! on objects:
//!   P0 -> B
//! on 1cells:
//!   left -> b
//!
//! cone NAME: Delta L => FUNCTOR strict
//! at P0: lambda0
//! at 1cell x: lambdax
//! ```
//!
//! Term syntax: `.` composes 1-cells (`g . f` is f first), `*` whiskers /
//! horizontally composes (right operand first), `&` composes vertically
//! (`t2 & t1` is t1 first), `id(x)` is an identity, `name^-1` a declared
//! inverse. Precedence: `.` > `*` > `&`, all left-associative.
//!
//! 1-relations must precede any 2-relation whose boundary needs them.
//! The pretty-printer emits the same grammar; parse ∘ pretty ∘ parse is
//! the identity on documents.

use crate::diagram::{Flavor, Transformation, TwoFunctor};
use crate::error::{KernelError, Result};
use crate::presentation::{OneGen, Presentation, TwoGen, Word};
use crate::term::Term;
use std::sync::Arc;

#[derive(Debug, Clone, Default)]
pub struct Document {
    pub presentations: Vec<Arc<Presentation>>,
    pub functors: Vec<Arc<TwoFunctor>>,
    pub cones: Vec<Transformation>,
    /// Emission order of the blocks, as (kind, index) pairs.
    order: Vec<(BlockKind, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum BlockKind {
    Presentation,
    Functor,
    Cone,
}

impl Document {
    pub fn presentation(&self, name: &str) -> Result<Arc<Presentation>> {
        self.presentations
            .iter()
            .find(|p| p.name == name)
            .cloned()
            .ok_or_else(|| KernelError::UnknownName { kind: "2category", name: name.into() })
    }

    pub fn functor(&self, name: &str) -> Result<Arc<TwoFunctor>> {
        self.functors
            .iter()
            .find(|f| f.name == name)
            .cloned()
            .ok_or_else(|| KernelError::UnknownName { kind: "2functor", name: name.into() })
    }

    pub fn cone(&self, name: &str) -> Result<&Transformation> {
        self.cones
            .iter()
            .find(|c| c.name == name)
            .ok_or_else(|| KernelError::UnknownName { kind: "cone", name: name.into() })
    }
}

// ---------------------------------------------------------------------------
// tokens

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Dot,
    Star,
    Amp,
    LParen,
    RParen,
    Colon,
    Equals,
    Arrow,       // ->
    DoubleArrow, // =>
    Inverse,     // ^-1
}

fn tokenize(line: &str, lineno: usize) -> Result<Vec<(Tok, usize)>> {
    let bytes: Vec<char> = line.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let col = i + 1;
        match c {
            ' ' | '\t' => i += 1,
            '#' => break,
            '.' => {
                toks.push((Tok::Dot, col));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, col));
                i += 1;
            }
            '&' => {
                toks.push((Tok::Amp, col));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, col));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, col));
                i += 1;
            }
            ':' => {
                toks.push((Tok::Colon, col));
                i += 1;
            }
            '=' => {
                if bytes.get(i + 1) == Some(&'>') {
                    toks.push((Tok::DoubleArrow, col));
                    i += 2;
                } else {
                    toks.push((Tok::Equals, col));
                    i += 1;
                }
            }
            '-' => {
                if bytes.get(i + 1) == Some(&'>') {
                    toks.push((Tok::Arrow, col));
                    i += 2;
                } else {
                    return Err(KernelError::Parse { line: lineno, col, msg: "stray `-`".into() });
                }
            }
            '^' => {
                if bytes.get(i + 1) == Some(&'-') && bytes.get(i + 2) == Some(&'1') {
                    toks.push((Tok::Inverse, col));
                    i += 3;
                } else {
                    return Err(KernelError::Parse {
                        line: lineno,
                        col,
                        msg: "expected `^-1`".into(),
                    });
                }
            }
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                    i += 1;
                }
                toks.push((Tok::Ident(bytes[start..i].iter().collect()), col));
            }
            other => {
                return Err(KernelError::Parse {
                    line: lineno,
                    col,
                    msg: format!("unexpected character `{}`", other),
                })
            }
        }
    }
    Ok(toks)
}

// ---------------------------------------------------------------------------
// expressions

/// A cell-expression value: an object, a 1-cell word, or a 2-cell term.
#[derive(Debug, Clone)]
enum Value {
    Obj(usize),
    Word(Word),
    Term(Term),
}

struct ExprParser<'a> {
    pres: &'a Presentation,
    toks: &'a [(Tok, usize)],
    pos: usize,
    line: usize,
}

impl<'a> ExprParser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let col = self.toks.get(self.pos).map(|t| t.1).unwrap_or(0);
        Err(KernelError::Parse { line: self.line, col, msg: msg.into() })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn bump(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos).map(|t| &t.0);
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<Value> {
        self.vertical()
    }

    fn vertical(&mut self) -> Result<Value> {
        let mut acc = self.horizontal()?;
        while self.peek() == Some(&Tok::Amp) {
            self.bump();
            let rhs = self.horizontal()?;
            let t2 = self.as_term(acc)?;
            let t1 = self.as_term(rhs)?;
            acc = Value::Term(self.pres.vcompose(&t2, &t1)?);
        }
        Ok(acc)
    }

    fn horizontal(&mut self) -> Result<Value> {
        let mut acc = self.composite()?;
        while self.peek() == Some(&Tok::Star) {
            self.bump();
            let rhs = self.composite()?;
            acc = self.whisk(acc, rhs)?;
        }
        Ok(acc)
    }

    fn whisk(&mut self, left: Value, right: Value) -> Result<Value> {
        let p = self.pres;
        match (left, right) {
            (Value::Word(w), Value::Term(t)) => {
                Ok(Value::Term(p.whisker(&Word::identity(t.src.src), &t, &w)?))
            }
            (Value::Term(t), Value::Word(w)) => {
                Ok(Value::Term(p.whisker(&w, &t, &Word::identity(t.src.tgt(p)))?))
            }
            (Value::Term(t2), Value::Term(t1)) => Ok(Value::Term(p.hcompose(&t2, &t1)?)),
            _ => self.err("`*` needs at least one 2-cell operand; use `.` for 1-cells"),
        }
    }

    fn composite(&mut self) -> Result<Value> {
        let mut acc = self.primary()?;
        while self.peek() == Some(&Tok::Dot) {
            self.bump();
            let rhs = self.primary()?;
            let g = self.as_word(acc)?;
            let f = self.as_word(rhs)?;
            // composition is raw concatenation here; normalization is a
            // semantic step, not a parsing step
            if f.tgt(self.pres) != g.src {
                return self.err("1-cells not composable");
            }
            let mut gens = f.gens;
            gens.extend_from_slice(&g.gens);
            acc = Value::Word(Word { src: f.src, gens });
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<Value> {
        let v = match self.bump().cloned() {
            Some(Tok::LParen) => {
                let v = self.expr()?;
                if self.bump() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                v
            }
            Some(Tok::Ident(name)) if name == "id" && self.peek() == Some(&Tok::LParen) => {
                self.bump();
                let inner = self.expr()?;
                if self.bump() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                match inner {
                    Value::Obj(o) => Value::Word(Word::identity(o)),
                    Value::Word(w) => Value::Term(Term::identity(w)),
                    Value::Term(_) => return self.err("id(-) of a 2-cell"),
                }
            }
            Some(Tok::Ident(name)) => self.resolve(&name)?,
            _ => return self.err("expected an expression"),
        };
        if self.peek() == Some(&Tok::Inverse) {
            self.bump();
            let t = self.as_term(v)?;
            return Ok(Value::Term(t.inverse(self.pres)?));
        }
        Ok(v)
    }

    fn resolve(&self, name: &str) -> Result<Value> {
        if let Ok(g) = self.pres.one_gen_id(name) {
            return Ok(Value::Word(Word::generator(self.pres, g)));
        }
        if let Ok(g) = self.pres.two_gen_id(name) {
            return Ok(Value::Term(Term::generator(self.pres, g)));
        }
        if let Ok(o) = self.pres.object_id(name) {
            return Ok(Value::Obj(o));
        }
        self.err(format!("unknown name `{}`", name))
    }

    fn as_word(&self, v: Value) -> Result<Word> {
        match v {
            Value::Word(w) => Ok(w),
            Value::Obj(o) => Ok(Word::identity(o)),
            Value::Term(_) => self.err("expected a 1-cell, found a 2-cell"),
        }
    }

    fn as_term(&self, v: Value) -> Result<Term> {
        match v {
            Value::Term(t) => Ok(t),
            Value::Word(w) => Ok(Term::identity(w)),
            Value::Obj(o) => Ok(Term::identity(Word::identity(o))),
        }
    }
}

fn parse_value(pres: &Presentation, toks: &[(Tok, usize)], line: usize) -> Result<Value> {
    let mut p = ExprParser { pres, toks, pos: 0, line };
    let v = p.expr()?;
    if p.pos != toks.len() {
        return p.err("trailing tokens");
    }
    Ok(v)
}

pub fn parse_word(pres: &Presentation, text: &str) -> Result<Word> {
    let toks = tokenize(text, 1)?;
    let v = parse_value(pres, &toks, 1)?;
    ExprParser { pres, toks: &[], pos: 0, line: 1 }.as_word(v)
}

pub fn parse_term(pres: &Presentation, text: &str) -> Result<Term> {
    let toks = tokenize(text, 1)?;
    let v = parse_value(pres, &toks, 1)?;
    ExprParser { pres, toks: &[], pos: 0, line: 1 }.as_term(v)
}

// ---------------------------------------------------------------------------
// document parser

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Objects,
    OneCells,
    TwoCells,
    Relations,
    OnObjects,
    OnOneCells,
    OnTwoCells,
    ConeBody,
}

pub fn parse_document(text: &str) -> Result<Document> {
    let mut doc = Document::default();
    let mut pres: Option<Presentation> = None;
    let mut functor: Option<FunctorDraft> = None;
    let mut cone: Option<ConeDraft> = None;
    let mut section = Section::None;

    macro_rules! flush {
        () => {
            if let Some(mut p) = pres.take() {
                p.validate()?;
                doc.order.push((BlockKind::Presentation, doc.presentations.len()));
                doc.presentations.push(Arc::new(p));
            }
            if let Some(f) = functor.take() {
                doc.order.push((BlockKind::Functor, doc.functors.len()));
                doc.functors.push(Arc::new(f.finish()?));
            }
            if let Some(c) = cone.take() {
                doc.order.push((BlockKind::Cone, doc.cones.len()));
                doc.cones.push(c.finish()?);
            }
        };
    }

    for (lineno, raw) in text.lines().enumerate() {
        let lineno = lineno + 1;
        let toks = tokenize(raw, lineno)?;
        if toks.is_empty() {
            continue;
        }
        let perr = |col: usize, msg: &str| KernelError::Parse { line: lineno, col, msg: msg.into() };
        let head = match &toks[0].0 {
            Tok::Ident(s) => s.as_str(),
            // non-identifier start (e.g. a parenthesized relation side):
            // never a keyword, so hand it to the current section below
            _ => "",
        };
        match head {
            "2category" => {
                flush!();
                let name = ident_at(&toks, 1, lineno)?;
                pres = Some(Presentation {
                    name,
                    objects: vec![],
                    one_gens: vec![],
                    two_gens: vec![],
                    one_relations: vec![],
                    two_relations: vec![],
                    rules: vec![],
                });
                section = Section::None;
            }
            "2functor" => {
                flush!();
                // 2functor NAME: I -> A
                let name = ident_at(&toks, 1, lineno)?;
                expect(&toks, 2, &Tok::Colon, lineno)?;
                let src = ident_at(&toks, 3, lineno)?;
                expect(&toks, 4, &Tok::Arrow, lineno)?;
                let tgt = ident_at(&toks, 5, lineno)?;
                functor = Some(FunctorDraft::new(
                    name,
                    doc.presentation(&src)?,
                    doc.presentation(&tgt)?,
                    lineno,
                ));
                section = Section::None;
            }
            "cone" => {
                flush!();
                // cone NAME: Delta OBJ => FUNCTOR flavor
                let name = ident_at(&toks, 1, lineno)?;
                expect(&toks, 2, &Tok::Colon, lineno)?;
                let delta = ident_at(&toks, 3, lineno)?;
                if delta != "Delta" {
                    return Err(perr(toks[3].1, "expected `Delta`"));
                }
                let summit = ident_at(&toks, 4, lineno)?;
                expect(&toks, 5, &Tok::DoubleArrow, lineno)?;
                let fname = ident_at(&toks, 6, lineno)?;
                let flavor = Flavor::parse(&ident_at(&toks, 7, lineno)?)?;
                let f = doc.functor(&fname)?;
                cone = Some(ConeDraft::new(name, f, summit, flavor, lineno)?);
                section = Section::ConeBody;
            }
            "objects" if matches!(toks.get(1), Some((Tok::Colon, _))) => {
                section = Section::Objects;
                let p = pres.as_mut().ok_or_else(|| perr(toks[0].1, "no open 2category block"))?;
                for (t, c) in &toks[2..] {
                    match t {
                        Tok::Ident(n) => p.objects.push(n.clone()),
                        _ => return Err(perr(*c, "expected object names")),
                    }
                }
            }
            "1cells" if matches!(toks.get(1), Some((Tok::Colon, _))) && toks.len() == 2 => {
                section = Section::OneCells;
            }
            "2cells" if matches!(toks.get(1), Some((Tok::Colon, _))) && toks.len() == 2 => {
                section = Section::TwoCells;
            }
            "relations" if matches!(toks.get(1), Some((Tok::Colon, _))) && toks.len() == 2 => {
                section = Section::Relations;
            }
            "on" => {
                let what = ident_at(&toks, 1, lineno)?;
                expect(&toks, 3.min(toks.len() - 1), &Tok::Colon, lineno)?;
                section = match what.as_str() {
                    "objects" => Section::OnObjects,
                    "1cells" => Section::OnOneCells,
                    "2cells" => Section::OnTwoCells,
                    _ => return Err(perr(toks[1].1, "expected `objects`, `1cells`, or `2cells`")),
                };
            }
            "at" if section == Section::ConeBody => {
                let c = cone.as_mut().ok_or_else(|| perr(toks[0].1, "no open cone block"))?;
                c.entry(&toks, lineno)?;
            }
            _ => match section {
                Section::Objects => {
                    let p =
                        pres.as_mut().ok_or_else(|| perr(toks[0].1, "no open 2category block"))?;
                    for (t, c) in &toks {
                        match t {
                            Tok::Ident(n) => p.objects.push(n.clone()),
                            _ => return Err(perr(*c, "expected object names")),
                        }
                    }
                }
                Section::OneCells => {
                    // name: A -> B
                    let p =
                        pres.as_mut().ok_or_else(|| perr(toks[0].1, "no open 2category block"))?;
                    let name = ident_at(&toks, 0, lineno)?;
                    expect(&toks, 1, &Tok::Colon, lineno)?;
                    let src = ident_at(&toks, 2, lineno)?;
                    expect(&toks, 3, &Tok::Arrow, lineno)?;
                    let tgt = ident_at(&toks, 4, lineno)?;
                    let (src, tgt) = (p.object_id(&src)?, p.object_id(&tgt)?);
                    p.one_gens.push(OneGen { name, src, tgt });
                }
                Section::TwoCells => {
                    // [invertible] name: (w1) => (w2)
                    let p =
                        pres.as_mut().ok_or_else(|| perr(toks[0].1, "no open 2category block"))?;
                    let (invertible, rest) = if head == "invertible" {
                        (true, &toks[1..])
                    } else {
                        (false, &toks[..])
                    };
                    let name = ident_at(rest, 0, lineno)?;
                    expect(rest, 1, &Tok::Colon, lineno)?;
                    let arrow = rest
                        .iter()
                        .position(|(t, _)| t == &Tok::DoubleArrow)
                        .ok_or_else(|| perr(toks[0].1, "expected `=>`"))?;
                    let src = {
                        let v = parse_value(p, &rest[2..arrow], lineno)?;
                        ExprParser { pres: p, toks: &[], pos: 0, line: lineno }.as_word(v)?
                    };
                    let tgt = {
                        let v = parse_value(p, &rest[arrow + 1..], lineno)?;
                        ExprParser { pres: p, toks: &[], pos: 0, line: lineno }.as_word(v)?
                    };
                    p.two_gens.push(TwoGen { name, src, tgt, invertible });
                }
                Section::Relations => {
                    let p =
                        pres.as_mut().ok_or_else(|| perr(toks[0].1, "no open 2category block"))?;
                    let eq = toks
                        .iter()
                        .position(|(t, _)| t == &Tok::Equals)
                        .ok_or_else(|| perr(toks[0].1, "expected `=`"))?;
                    let lhs = parse_value(p, &toks[..eq], lineno)?;
                    let rhs = parse_value(p, &toks[eq + 1..], lineno)?;
                    match (lhs, rhs) {
                        (Value::Word(l), Value::Word(r)) => {
                            p.one_relations.push((l, r));
                            // keep the rewrite rules usable for later
                            // 2-relation boundaries; validate() re-derives
                            // and confluence-checks them
                            p.rules = p
                                .one_relations
                                .iter()
                                .filter(|(l, r)| l != r)
                                .map(|(l, r)| {
                                    if l > r {
                                        crate::presentation::Rule { lhs: l.clone(), rhs: r.clone() }
                                    } else {
                                        crate::presentation::Rule { lhs: r.clone(), rhs: l.clone() }
                                    }
                                })
                                .collect();
                        }
                        (l, r) => {
                            let helper = ExprParser { pres: p, toks: &[], pos: 0, line: lineno };
                            let l = helper.as_term(l)?;
                            let r = helper.as_term(r)?;
                            p.two_relations.push((l, r));
                        }
                    }
                }
                Section::OnObjects => {
                    let f = functor
                        .as_mut()
                        .ok_or_else(|| perr(toks[0].1, "no open 2functor block"))?;
                    let src = ident_at(&toks, 0, lineno)?;
                    expect(&toks, 1, &Tok::Arrow, lineno)?;
                    let tgt = ident_at(&toks, 2, lineno)?;
                    f.on_object(&src, &tgt, lineno)?;
                }
                Section::OnOneCells => {
                    let f = functor
                        .as_mut()
                        .ok_or_else(|| perr(toks[0].1, "no open 2functor block"))?;
                    let src = ident_at(&toks, 0, lineno)?;
                    expect(&toks, 1, &Tok::Arrow, lineno)?;
                    f.on_one_cell(&src, &toks[2..], lineno)?;
                }
                Section::OnTwoCells => {
                    let f = functor
                        .as_mut()
                        .ok_or_else(|| perr(toks[0].1, "no open 2functor block"))?;
                    let src = ident_at(&toks, 0, lineno)?;
                    expect(&toks, 1, &Tok::Arrow, lineno)?;
                    f.on_two_cell(&src, &toks[2..], lineno)?;
                }
                _ => return Err(perr(toks[0].1, "statement outside of any section")),
            },
        }
    }
    flush!();
    Ok(doc)
}

/// Parse a document and return its single (or first) presentation.
pub fn parse_presentation(text: &str) -> Result<Arc<Presentation>> {
    let doc = parse_document(text)?;
    doc.presentations
        .first()
        .cloned()
        .ok_or_else(|| KernelError::Invalid("document contains no 2category block".into()))
}

fn ident_at(toks: &[(Tok, usize)], i: usize, line: usize) -> Result<String> {
    match toks.get(i) {
        Some((Tok::Ident(s), _)) => Ok(s.clone()),
        Some((_, c)) => Err(KernelError::Parse { line, col: *c, msg: "expected a name".into() }),
        None => Err(KernelError::Parse { line, col: 0, msg: "unexpected end of line".into() }),
    }
}

fn expect(toks: &[(Tok, usize)], i: usize, want: &Tok, line: usize) -> Result<()> {
    match toks.get(i) {
        Some((t, _)) if t == want => Ok(()),
        Some((_, c)) => {
            Err(KernelError::Parse { line, col: *c, msg: format!("expected {:?}", want) })
        }
        None => Err(KernelError::Parse { line, col: 0, msg: "unexpected end of line".into() }),
    }
}

struct FunctorDraft {
    name: String,
    source: Arc<Presentation>,
    target: Arc<Presentation>,
    obj_map: Vec<Option<usize>>,
    one_map: Vec<Option<Word>>,
    two_map: Vec<Option<Term>>,
    line: usize,
}

impl FunctorDraft {
    fn new(name: String, source: Arc<Presentation>, target: Arc<Presentation>, line: usize) -> Self {
        let (no, n1, n2) = (source.objects.len(), source.one_gens.len(), source.two_gens.len());
        FunctorDraft {
            name,
            source,
            target,
            obj_map: vec![None; no],
            one_map: vec![None; n1],
            two_map: vec![None; n2],
            line,
        }
    }

    fn on_object(&mut self, src: &str, tgt: &str, _line: usize) -> Result<()> {
        let s = self.source.object_id(src)?;
        let t = self.target.object_id(tgt)?;
        self.obj_map[s] = Some(t);
        Ok(())
    }

    fn on_one_cell(&mut self, src: &str, toks: &[(Tok, usize)], line: usize) -> Result<()> {
        let s = self.source.one_gen_id(src)?;
        let v = parse_value(&self.target, toks, line)?;
        let w = ExprParser { pres: &self.target, toks: &[], pos: 0, line }.as_word(v)?;
        self.one_map[s] = Some(w);
        Ok(())
    }

    fn on_two_cell(&mut self, src: &str, toks: &[(Tok, usize)], line: usize) -> Result<()> {
        let s = self.source.two_gen_id(src)?;
        let v = parse_value(&self.target, toks, line)?;
        let t = ExprParser { pres: &self.target, toks: &[], pos: 0, line }.as_term(v)?;
        self.two_map[s] = Some(t);
        Ok(())
    }

    fn finish(self) -> Result<TwoFunctor> {
        let missing = |what: &str| KernelError::Parse {
            line: self.line,
            col: 0,
            msg: format!("2functor {} is missing an assignment for a {}", self.name, what),
        };
        Ok(TwoFunctor {
            name: self.name.clone(),
            source: self.source,
            target: self.target,
            obj_map: self.obj_map.into_iter().collect::<Option<_>>().ok_or(missing("object"))?,
            one_map: self.one_map.into_iter().collect::<Option<_>>().ok_or(missing("1-cell"))?,
            two_map: self.two_map.into_iter().collect::<Option<_>>().ok_or(missing("2-cell"))?,
        })
    }
}

struct ConeDraft {
    name: String,
    functor: Arc<TwoFunctor>,
    summit: usize,
    flavor: Flavor,
    obj_components: Vec<Option<Word>>,
    one_components: Vec<Option<Term>>,
    line: usize,
}

impl ConeDraft {
    fn new(
        name: String,
        functor: Arc<TwoFunctor>,
        summit: String,
        flavor: Flavor,
        line: usize,
    ) -> Result<Self> {
        let summit = functor.target.object_id(&summit)?;
        let (no, n1) = (functor.source.objects.len(), functor.source.one_gens.len());
        Ok(ConeDraft {
            name,
            functor,
            summit,
            flavor,
            obj_components: vec![None; no],
            one_components: vec![None; n1],
            line,
        })
    }

    /// `at OBJ: word` or `at 1cell GEN: term`.
    fn entry(&mut self, toks: &[(Tok, usize)], line: usize) -> Result<()> {
        let first = ident_at(toks, 1, line)?;
        if first == "1cell" {
            let gen = ident_at(toks, 2, line)?;
            expect(toks, 3, &Tok::Colon, line)?;
            let g = self.functor.source.one_gen_id(&gen)?;
            let v = parse_value(&self.functor.target, &toks[4..], line)?;
            let t = ExprParser { pres: &self.functor.target, toks: &[], pos: 0, line }.as_term(v)?;
            self.one_components[g] = Some(t);
        } else {
            expect(toks, 2, &Tok::Colon, line)?;
            let o = self.functor.source.object_id(&first)?;
            let v = parse_value(&self.functor.target, &toks[3..], line)?;
            let w = ExprParser { pres: &self.functor.target, toks: &[], pos: 0, line }.as_word(v)?;
            self.obj_components[o] = Some(w);
        }
        Ok(())
    }

    fn finish(self) -> Result<Transformation> {
        let p = self.functor.target.clone();
        let index = self.functor.source.clone();
        let obj_components: Vec<Word> = self
            .obj_components
            .into_iter()
            .enumerate()
            .map(|(i, w)| {
                w.ok_or_else(|| KernelError::Parse {
                    line: self.line,
                    col: 0,
                    msg: format!(
                        "cone {} is missing its component at {}",
                        self.name, index.objects[i]
                    ),
                })
            })
            .collect::<Result<_>>()?;
        let mut one_components = Vec::with_capacity(self.one_components.len());
        for (u, t) in self.one_components.into_iter().enumerate() {
            match t {
                Some(t) => one_components.push(t),
                None => {
                    // default: the identity, which is well-formed exactly
                    // when the two boundary composites agree
                    let gen = &index.one_gens[u];
                    let src = p.compose(&self.functor.one_map[u], &obj_components[gen.src])?;
                    let tgt = p.normalize(&obj_components[gen.tgt]);
                    if src != tgt {
                        return Err(KernelError::Parse {
                            line: self.line,
                            col: 0,
                            msg: format!(
                                "cone {} needs an explicit component at 1cell {}",
                                self.name, gen.name
                            ),
                        });
                    }
                    one_components.push(Term::identity(src));
                }
            }
        }
        let delta = Arc::new(TwoFunctor::constant(index, p, self.summit)?);
        Ok(Transformation {
            name: self.name,
            flavor: self.flavor,
            source: delta,
            target: self.functor,
            obj_components,
            one_components,
        })
    }
}

// ---------------------------------------------------------------------------
// pretty-printer

pub fn pretty_document(doc: &Document) -> String {
    let mut out = String::new();
    for (i, &(kind, idx)) in doc.order.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        match kind {
            BlockKind::Presentation => pretty_presentation(&doc.presentations[idx], &mut out),
            BlockKind::Functor => pretty_functor(&doc.functors[idx], &mut out),
            BlockKind::Cone => pretty_cone(&doc.cones[idx], &mut out),
        }
    }
    out
}

fn pretty_presentation(p: &Presentation, out: &mut String) {
    use std::fmt::Write;
    writeln!(out, "2category {}", p.name).unwrap();
    writeln!(out, "objects: {}", p.objects.join(" ")).unwrap();
    if !p.one_gens.is_empty() {
        writeln!(out, "1cells:").unwrap();
        for g in &p.one_gens {
            writeln!(out, "  {}: {} -> {}", g.name, p.objects[g.src], p.objects[g.tgt]).unwrap();
        }
    }
    if !p.two_gens.is_empty() {
        writeln!(out, "2cells:").unwrap();
        for g in &p.two_gens {
            let inv = if g.invertible { "invertible " } else { "" };
            writeln!(
                out,
                "  {}{}: ({}) => ({})",
                inv,
                g.name,
                p.display_word(&g.src),
                p.display_word(&g.tgt)
            )
            .unwrap();
        }
    }
    if !p.one_relations.is_empty() || !p.two_relations.is_empty() {
        writeln!(out, "relations:").unwrap();
        for (l, r) in &p.one_relations {
            writeln!(out, "  {} = {}", p.display_word(l), p.display_word(r)).unwrap();
        }
        for (l, r) in &p.two_relations {
            writeln!(out, "  {} = {}", p.display_term(l), p.display_term(r)).unwrap();
        }
    }
}

fn pretty_functor(f: &TwoFunctor, out: &mut String) {
    use std::fmt::Write;
    writeln!(out, "2functor {}: {} -> {}", f.name, f.source.name, f.target.name).unwrap();
    if !f.obj_map.is_empty() {
        writeln!(out, "on objects:").unwrap();
        for (i, &o) in f.obj_map.iter().enumerate() {
            writeln!(out, "  {} -> {}", f.source.objects[i], f.target.objects[o]).unwrap();
        }
    }
    if !f.one_map.is_empty() {
        writeln!(out, "on 1cells:").unwrap();
        for (i, w) in f.one_map.iter().enumerate() {
            writeln!(out, "  {} -> {}", f.source.one_gens[i].name, f.target.display_word(w))
                .unwrap();
        }
    }
    if !f.two_map.is_empty() {
        writeln!(out, "on 2cells:").unwrap();
        for (i, t) in f.two_map.iter().enumerate() {
            writeln!(out, "  {} -> {}", f.source.two_gens[i].name, f.target.display_term(t))
                .unwrap();
        }
    }
}

fn pretty_cone(c: &Transformation, out: &mut String) {
    use std::fmt::Write;
    let p = c.ambient();
    let index = c.index().clone();
    let summit = c.summit().expect("parsed cones have constant source");
    writeln!(
        out,
        "cone {}: Delta {} => {} {}",
        c.name,
        p.objects[summit],
        c.target.name,
        c.flavor.name()
    )
    .unwrap();
    for (i, w) in c.obj_components.iter().enumerate() {
        writeln!(out, "at {}: {}", index.objects[i], p.display_word(w)).unwrap();
    }
    for (u, t) in c.one_components.iter().enumerate() {
        writeln!(out, "at 1cell {}: {}", index.one_gens[u].name, p.display_term(t)).unwrap();
    }
}
