//! The bundled instance collection and its expectation tables.
//!
//! Six base instances ship as DSL files; four more are generated from them
//! by marking the relevant 2-generator invertible, so that the only
//! difference between a base instance and its `_inv` variant is
//! invertibility. The `expected.json` sidecar records, for four summary
//! tables, which cells are claimed implications and which are claimed
//! counter-examples; [`verify_tables`] recomputes every cell and reports
//! each as confirmed or mismatched.
//!
//! Set `BICAT_CORPUS_DIR` to load the DSL and expectation files from a
//! directory instead of the embedded copies.

use crate::diagram::{Flavor, Transformation, TwoFunctor};
use crate::dsl::{parse_document, Document};
use crate::engine::Engine;
use crate::error::{KernelError, Result};
use crate::slice::build_slice;
use crate::universality::{is_bi_terminal, is_limit, is_two_terminal, Strength};
use crate::verdict::{Bounds, Certificate, Status, Verdict};
use serde::Deserialize;
use std::collections::BTreeMap;
use std::sync::Arc;

const FILES: [(&str, &str); 6] = [
    ("ce_strict_gap", include_str!("../../../corpus/ce_strict_gap.bicat")),
    ("ce_lax_extra", include_str!("../../../corpus/ce_lax_extra.bicat")),
    ("ce_lax_terminal", include_str!("../../../corpus/ce_lax_terminal.bicat")),
    ("ce_laxcone_strict", include_str!("../../../corpus/ce_laxcone_strict.bicat")),
    ("ce_laxlimit_notterminal", include_str!("../../../corpus/ce_laxlimit_notterminal.bicat")),
    ("ce_laxterminal_notlimit", include_str!("../../../corpus/ce_laxterminal_notlimit.bicat")),
];

const EXPECTED_JSON: &str = include_str!("../../../corpus/expected.json");

/// The `_inv` variants: base instance plus the 2-generators to mark
/// invertible.
const VARIANTS: [(&str, &str, &[&str]); 4] = [
    ("ce_lax_extra_inv", "ce_lax_extra", &["alpha"]),
    ("ce_lax_terminal_inv", "ce_lax_terminal", &["gamma0", "gamma1"]),
    ("ce_laxlimit_notterminal_inv", "ce_laxlimit_notterminal", &["alpha"]),
    ("ce_laxterminal_notlimit_inv", "ce_laxterminal_notlimit", &["alpha"]),
];

pub struct CorpusInstance {
    pub name: String,
    pub description: String,
    /// The DSL source this instance was parsed from (after any
    /// invertibility rewrite).
    pub text: String,
    pub doc: Document,
    pub diagram: Arc<TwoFunctor>,
    pub candidate: Transformation,
}

impl CorpusInstance {
    pub fn engine(&self, bounds: Bounds) -> Engine {
        Engine::new(self.diagram.target.clone(), bounds)
    }
}

fn corpus_file(name: &str) -> Result<String> {
    if let Ok(dir) = std::env::var("BICAT_CORPUS_DIR") {
        let path = std::path::Path::new(&dir).join(format!("{}.bicat", name));
        return std::fs::read_to_string(&path)
            .map_err(|e| KernelError::Invalid(format!("cannot read {}: {}", path.display(), e)));
    }
    FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| t.to_string())
        .ok_or_else(|| KernelError::UnknownName { kind: "corpus instance", name: name.into() })
}

fn expected_file() -> Result<String> {
    if let Ok(dir) = std::env::var("BICAT_CORPUS_DIR") {
        let path = std::path::Path::new(&dir).join("expected.json");
        return std::fs::read_to_string(&path)
            .map_err(|e| KernelError::Invalid(format!("cannot read {}: {}", path.display(), e)));
    }
    Ok(EXPECTED_JSON.to_string())
}

/// Mark the named 2-cell declarations `invertible` in DSL source text.
fn make_invertible(text: &str, names: &[&str]) -> String {
    let mut out = String::with_capacity(text.len());
    for line in text.lines() {
        let trimmed = line.trim_start();
        let indent = &line[..line.len() - trimmed.len()];
        if names.iter().any(|n| trimmed.starts_with(&format!("{}:", n))) {
            out.push_str(indent);
            out.push_str("invertible ");
            out.push_str(trimmed);
        } else {
            out.push_str(line);
        }
        out.push('\n');
    }
    out
}

fn instance(name: &str, description: &str, text: String) -> Result<CorpusInstance> {
    let doc = parse_document(&text)?;
    let diagram = doc.functor("diag")?;
    let candidate = doc.cone("apex")?.clone();
    Ok(CorpusInstance {
        name: name.into(),
        description: description.into(),
        text,
        doc,
        diagram,
        candidate,
    })
}

/// The ten instances, in a fixed order: each base instance followed by its
/// invertibility variant where one exists.
pub fn corpus_instances() -> Result<Vec<CorpusInstance>> {
    let descriptions: BTreeMap<&str, &str> = [
        ("ce_strict_gap", "a modification between whiskered cones arising from no 2-cell"),
        ("ce_lax_extra", "a limit cone that stops being terminal once fillers are allowed"),
        ("ce_lax_extra_inv", "ce_lax_extra with alpha invertible"),
        ("ce_lax_terminal", "a lax-slice terminal cone with a cone missing from its image"),
        ("ce_lax_terminal_inv", "ce_lax_terminal with gamma0 and gamma1 invertible"),
        ("ce_laxcone_strict", "a lax cone over a free loop, bounded certificates only"),
        ("ce_laxlimit_notterminal", "a lax limit that is not terminal in the lax slice"),
        ("ce_laxlimit_notterminal_inv", "ce_laxlimit_notterminal with alpha invertible"),
        ("ce_laxterminal_notlimit", "a lax-slice terminal cone that is not a lax limit"),
        ("ce_laxterminal_notlimit_inv", "ce_laxterminal_notlimit with alpha invertible"),
    ]
    .into_iter()
    .collect();

    let mut out = Vec::new();
    for (base, _) in FILES {
        let text = corpus_file(base)?;
        out.push(instance(base, descriptions[base], text.clone())?);
        if let Some((vname, _, gens)) = VARIANTS.iter().find(|(_, b, _)| *b == base) {
            out.push(instance(vname, descriptions[vname], make_invertible(&text, gens))?);
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// expectation tables

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    LimitImpliesTerminal,
    TerminalImpliesLimit,
}

impl Direction {
    fn parse(s: &str) -> Result<Direction> {
        match s {
            "limit_implies_terminal" => Ok(Direction::LimitImpliesTerminal),
            "terminal_implies_limit" => Ok(Direction::TerminalImpliesLimit),
            _ => Err(KernelError::Invalid(format!("unknown direction `{}`", s))),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Direction::LimitImpliesTerminal => "limit_implies_terminal",
            Direction::TerminalImpliesLimit => "terminal_implies_limit",
        }
    }
}

#[derive(Deserialize)]
struct ExpectedFile {
    tables: Vec<ExpectedTable>,
    #[serde(default)]
    extra: Vec<ExpectedExtra>,
}

#[derive(Deserialize)]
struct ExpectedTable {
    title: String,
    strength: String,
    direction: String,
    /// Cone flavors labelling the columns, in order.
    columns: Vec<String>,
    rows: Vec<ExpectedRow>,
}

#[derive(Deserialize)]
struct ExpectedRow {
    slice: String,
    /// One cell per column: "implication", or a corpus instance name.
    cells: Vec<String>,
}

#[derive(Deserialize)]
struct ExpectedExtra {
    instance: String,
    cone: String,
    slice: String,
    direction: String,
    note: String,
}

/// One recomputed table cell.
pub struct CellReport {
    pub slice_flavor: Flavor,
    pub cone_flavor: Flavor,
    /// `None` for implication cells, the instance name otherwise.
    pub instance: Option<String>,
    pub limit: Option<Status>,
    pub terminal: Option<Status>,
    pub certificate: Certificate,
    pub confirmed: bool,
    /// Instance names the implication was exercised on (implication cells).
    pub support: Vec<String>,
    pub detail: String,
}

pub struct TableReport {
    pub title: String,
    pub strength: Strength,
    pub direction: Direction,
    pub columns: Vec<Flavor>,
    pub row_labels: Vec<Flavor>,
    pub cells: Vec<Vec<CellReport>>,
}

pub struct ExtraReport {
    pub instance: String,
    pub cone_flavor: Flavor,
    pub slice_flavor: Flavor,
    pub direction: Direction,
    pub note: String,
    pub limit: Status,
    pub terminal: Status,
    pub certificate: Certificate,
    pub confirmed: bool,
}

pub struct Report {
    pub tables: Vec<TableReport>,
    pub extra: Vec<ExtraReport>,
    pub bounds: Bounds,
}

impl Report {
    pub fn mismatches(&self) -> usize {
        self.tables
            .iter()
            .flat_map(|t| t.cells.iter().flatten())
            .filter(|c| !c.confirmed)
            .count()
            + self.extra.iter().filter(|e| !e.confirmed).count()
    }

    pub fn pass(&self) -> bool {
        self.mismatches() == 0
    }

    pub fn render_text(&self) -> String {
        use std::fmt::Write;
        let mut out = String::new();
        for table in &self.tables {
            writeln!(out, "table: {} [{}]", table.title, table.strength.name()).unwrap();
            writeln!(
                out,
                "  columns (cone flavor): {}",
                table
                    .columns
                    .iter()
                    .map(|f| f.name().to_string())
                    .collect::<Vec<_>>()
                    .join(" | ")
            )
            .unwrap();
            for (r, row) in table.cells.iter().enumerate() {
                writeln!(out, "  {}-slice:", table.row_labels[r].name()).unwrap();
                for cell in row {
                    let status = if cell.confirmed { "confirmed" } else { "MISMATCH" };
                    writeln!(out, "    [{}] {} -- {}", cell.cone_flavor.name(), status, cell.detail)
                        .unwrap();
                }
            }
            writeln!(out).unwrap();
        }
        for e in &self.extra {
            let status = if e.confirmed { "confirmed" } else { "MISMATCH" };
            writeln!(
                out,
                "extra: {} ({} cones, {} slice, {}) {} -- limit {}, terminal {} [{}] ({})",
                e.instance,
                e.cone_flavor.name(),
                e.slice_flavor.name(),
                e.direction.name(),
                status,
                e.limit,
                e.terminal,
                e.certificate,
                e.note
            )
            .unwrap();
        }
        let m = self.mismatches();
        if m == 0 {
            writeln!(out, "result: all cells confirmed").unwrap();
        } else {
            writeln!(out, "result: {} mismatched cell(s)", m).unwrap();
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let tables: Vec<serde_json::Value> = self
            .tables
            .iter()
            .map(|t| {
                serde_json::json!({
                    "title": t.title,
                    "strength": t.strength.name(),
                    "direction": t.direction.name(),
                    "columns": t.columns.iter().map(|f| f.name()).collect::<Vec<_>>(),
                    "rows": t.cells.iter().enumerate().map(|(r, row)| serde_json::json!({
                        "slice": t.row_labels[r].name(),
                        "cells": row.iter().map(|c| serde_json::json!({
                            "cone": c.cone_flavor.name(),
                            "instance": c.instance,
                            "limit": c.limit.map(|s| s.to_string()),
                            "terminal": c.terminal.map(|s| s.to_string()),
                            "certificate": c.certificate.to_string(),
                            "confirmed": c.confirmed,
                            "support": c.support,
                            "detail": c.detail,
                        })).collect::<Vec<_>>(),
                    })).collect::<Vec<_>>(),
                })
            })
            .collect();
        let extra: Vec<serde_json::Value> = self
            .extra
            .iter()
            .map(|e| {
                serde_json::json!({
                    "instance": e.instance,
                    "cone": e.cone_flavor.name(),
                    "slice": e.slice_flavor.name(),
                    "direction": e.direction.name(),
                    "note": e.note,
                    "limit": e.limit.to_string(),
                    "terminal": e.terminal.to_string(),
                    "certificate": e.certificate.to_string(),
                    "confirmed": e.confirmed,
                })
            })
            .collect();
        serde_json::json!({
            "tables": tables,
            "extra": extra,
            "mismatches": self.mismatches(),
            "pass": self.pass(),
            "bounds": {
                "max_word_length": self.bounds.max_word_length,
                "max_layers": self.bounds.max_layers,
                "max_rewrite_steps": self.bounds.max_rewrite_steps,
            },
        })
    }
}

/// Memoizing evaluator for the two predicates over the instance set.
pub struct Verifier {
    pub instances: Vec<CorpusInstance>,
    engines: Vec<Engine>,
    pub bounds: Bounds,
    limit_cache: BTreeMap<(usize, Flavor, Strength), Verdict>,
    terminal_cache: BTreeMap<(usize, Flavor, Flavor, Strength), Verdict>,
}

impl Verifier {
    pub fn new(bounds: Bounds) -> Result<Verifier> {
        let instances = corpus_instances()?;
        let engines = instances.iter().map(|i| i.engine(bounds)).collect();
        Ok(Verifier {
            instances,
            engines,
            bounds,
            limit_cache: BTreeMap::new(),
            terminal_cache: BTreeMap::new(),
        })
    }

    pub fn instance_index(&self, name: &str) -> Result<usize> {
        self.instances
            .iter()
            .position(|i| i.name == name)
            .ok_or_else(|| KernelError::UnknownName { kind: "corpus instance", name: name.into() })
    }

    pub fn limit(&mut self, idx: usize, cone: Flavor, strength: Strength) -> Result<Verdict> {
        if let Some(v) = self.limit_cache.get(&(idx, cone, strength)) {
            return Ok(v.clone());
        }
        let inst = &self.instances[idx];
        let v = is_limit(&inst.diagram, &inst.candidate, cone, strength, &self.engines[idx])?;
        self.limit_cache.insert((idx, cone, strength), v.clone());
        Ok(v)
    }

    pub fn terminal(
        &mut self,
        idx: usize,
        cone: Flavor,
        slice: Flavor,
        strength: Strength,
    ) -> Result<Verdict> {
        if let Some(v) = self.terminal_cache.get(&(idx, cone, slice, strength)) {
            return Ok(v.clone());
        }
        let inst = &self.instances[idx];
        let eng = &self.engines[idx];
        let s = build_slice(&inst.diagram, cone, slice, eng)?;
        let c = s.object_index(&inst.candidate, eng)?.ok_or_else(|| {
            KernelError::Invalid(format!(
                "candidate cone of {} not among the enumerated {} cones",
                inst.name,
                cone.name()
            ))
        })?;
        let v = match strength {
            Strength::Iso => is_two_terminal(&s, c, eng)?,
            Strength::Bi => is_bi_terminal(&s, c, eng)?,
        };
        self.terminal_cache.insert((idx, cone, slice, strength), v.clone());
        Ok(v)
    }

    fn counter_cell(
        &mut self,
        name: &str,
        cone: Flavor,
        slice: Flavor,
        strength: Strength,
        direction: Direction,
    ) -> Result<CellReport> {
        let idx = self.instance_index(name)?;
        let lim = self.limit(idx, cone, strength)?;
        let term = self.terminal(idx, cone, slice, strength)?;
        let (want_limit, want_terminal) = match direction {
            Direction::LimitImpliesTerminal => (Status::Holds, Status::Fails),
            Direction::TerminalImpliesLimit => (Status::Fails, Status::Holds),
        };
        let confirmed = lim.status == want_limit && term.status == want_terminal;
        let detail = format!(
            "{}: limit {} (want {}), terminal {} (want {})",
            name, lim.status, want_limit, term.status, want_terminal
        );
        Ok(CellReport {
            slice_flavor: slice,
            cone_flavor: cone,
            instance: Some(name.into()),
            limit: Some(lim.status),
            terminal: Some(term.status),
            certificate: lim.certificate.and(term.certificate),
            confirmed,
            support: vec![],
            detail,
        })
    }

    /// An implication cell: over every instance whose candidate has a
    /// flavor admissible for this column and whose limit predicate holds,
    /// the terminality predicate must hold too.
    fn implication_cell(
        &mut self,
        cone: Flavor,
        slice: Flavor,
        strength: Strength,
    ) -> Result<CellReport> {
        let mut support = Vec::new();
        let mut violations = Vec::new();
        let mut cert = Certificate::Exact;
        for idx in 0..self.instances.len() {
            if self.instances[idx].candidate.flavor > cone {
                continue;
            }
            let lim = self.limit(idx, cone, strength)?;
            cert = cert.and(lim.certificate);
            if lim.status != Status::Holds {
                continue;
            }
            let term = self.terminal(idx, cone, slice, strength)?;
            cert = cert.and(term.certificate);
            support.push(self.instances[idx].name.clone());
            if term.status != Status::Holds {
                violations.push(format!(
                    "{} (terminal {})",
                    self.instances[idx].name, term.status
                ));
            }
        }
        let confirmed = violations.is_empty();
        let detail = if confirmed {
            format!("implication holds on {} instance(s): {}", support.len(), support.join(", "))
        } else {
            format!("implication violated by {}", violations.join(", "))
        };
        Ok(CellReport {
            slice_flavor: slice,
            cone_flavor: cone,
            instance: None,
            limit: None,
            terminal: None,
            certificate: cert,
            confirmed,
            support,
            detail,
        })
    }
}

/// Recompute all four expectation tables plus the extra entries.
pub fn verify_tables(bounds: Bounds) -> Result<Report> {
    let expected: ExpectedFile = serde_json::from_str(&expected_file()?)
        .map_err(|e| KernelError::Invalid(format!("expected.json: {}", e)))?;
    let mut v = Verifier::new(bounds)?;

    let mut tables = Vec::new();
    for t in &expected.tables {
        let strength = Strength::parse(&t.strength)?;
        let direction = Direction::parse(&t.direction)?;
        let columns: Vec<Flavor> =
            t.columns.iter().map(|c| Flavor::parse(c)).collect::<Result<_>>()?;
        let mut row_labels = Vec::new();
        let mut cells = Vec::new();
        for row in &t.rows {
            let slice = Flavor::parse(&row.slice)?;
            row_labels.push(slice);
            if row.cells.len() != columns.len() {
                return Err(KernelError::Invalid("expected.json: ragged table row".into()));
            }
            let mut out_row = Vec::new();
            for (cell, &cone) in row.cells.iter().zip(&columns) {
                let report = if cell == "implication" {
                    v.implication_cell(cone, slice, strength)?
                } else {
                    v.counter_cell(cell, cone, slice, strength, direction)?
                };
                out_row.push(report);
            }
            cells.push(out_row);
        }
        tables.push(TableReport {
            title: t.title.clone(),
            strength,
            direction,
            columns,
            row_labels,
            cells,
        });
    }

    let mut extra = Vec::new();
    for e in &expected.extra {
        let cone = Flavor::parse(&e.cone)?;
        let slice = Flavor::parse(&e.slice)?;
        let direction = Direction::parse(&e.direction)?;
        let idx = v.instance_index(&e.instance)?;
        let lim = v.limit(idx, cone, Strength::Iso)?;
        let term = v.terminal(idx, cone, slice, Strength::Iso)?;
        let (want_limit, want_terminal) = match direction {
            Direction::LimitImpliesTerminal => (Status::Holds, Status::Fails),
            Direction::TerminalImpliesLimit => (Status::Fails, Status::Holds),
        };
        extra.push(ExtraReport {
            instance: e.instance.clone(),
            cone_flavor: cone,
            slice_flavor: slice,
            direction,
            note: e.note.clone(),
            limit: lim.status,
            terminal: term.status,
            certificate: lim.certificate.and(term.certificate),
            confirmed: lim.status == want_limit && term.status == want_terminal,
        });
    }

    Ok(Report { tables, extra, bounds })
}
