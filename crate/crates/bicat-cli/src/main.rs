//! `bicat`: command-line front-end for the bicat kernel.
//!
//! Subcommands:
//!   check        decide a limit or terminality question for one candidate cone
//!   enumerate    list cones (and optionally a whole slice 2-category)
//!   verify-paper recompute the bundled expectation tables
//!   explain      print an instance in canonical form with a summary
//!
//! Exit codes: 0 holds / all expectations match, 1 fails / mismatch,
//! 2 unknown at the configured bound, 64 on parse, I/O, or usage errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::process::ExitCode;
use std::sync::Arc;

use bicat::corpus::{corpus_instances, verify_tables};
use bicat::diagram::{enumerate_cones, Flavor, Transformation, TwoFunctor};
use bicat::dsl::{parse_document, pretty_document};
use bicat::slice::build_slice;
use bicat::universality::{is_bi_terminal, is_limit, is_two_terminal, Strength};
use bicat::{Bounds, Engine, Status, Verdict};

#[derive(Parser)]
#[command(name = "bicat", version, about = "compute with finitely presented 2-categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a limit or terminality question for a candidate cone.
    Check(CheckArgs),
    /// Enumerate cones over a diagram, or a whole slice 2-category.
    Enumerate(EnumerateArgs),
    /// Recompute every cell of the bundled expectation tables.
    VerifyPaper(VerifyArgs),
    /// Print an instance in canonical form together with a summary.
    Explain(ExplainArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FlavorArg {
    Strict,
    Pseudo,
    Lax,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Flavor {
        match f {
            FlavorArg::Strict => Flavor::Strict,
            FlavorArg::Pseudo => Flavor::Pseudo,
            FlavorArg::Lax => Flavor::Lax,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StrengthArg {
    Iso,
    Bi,
}

impl From<StrengthArg> for Strength {
    fn from(s: StrengthArg) -> Strength {
        match s {
            StrengthArg::Iso => Strength::Iso,
            StrengthArg::Bi => Strength::Bi,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum QuestionArg {
    Limit,
    Terminal,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Args)]
struct CommonArgs {
    /// Longest 1-cell word considered during enumeration.
    #[arg(long = "max-word-len")]
    max_word_len: Option<usize>,
    /// Longest vertical pasting considered when comparing 2-cells.
    #[arg(long = "max-layers")]
    max_layers: Option<usize>,
    /// Rewrite step budget for normalization and closure.
    #[arg(long = "max-rewrite-steps")]
    max_rewrite_steps: Option<usize>,
    #[arg(long, value_enum, default_value = "text")]
    format: FormatArg,
    /// Render witness names with Greek letters instead of ASCII.
    #[arg(long)]
    unicode: bool,
}

impl CommonArgs {
    fn bounds(&self) -> Bounds {
        let mut b = Bounds::default();
        if let Some(n) = self.max_word_len {
            b.max_word_length = n;
        }
        if let Some(n) = self.max_layers {
            b.max_layers = n;
        }
        if let Some(n) = self.max_rewrite_steps {
            b.max_rewrite_steps = n;
        }
        b
    }
}

#[derive(Args)]
struct CheckArgs {
    /// Path to a .bicat file, or the name of a bundled instance.
    input: String,
    #[arg(long, value_enum)]
    question: QuestionArg,
    #[arg(long = "cone-flavor", value_enum)]
    cone_flavor: FlavorArg,
    /// Morphism flavor of the slice; required for terminality questions.
    #[arg(long = "slice-flavor", value_enum)]
    slice_flavor: Option<FlavorArg>,
    #[arg(long, value_enum, default_value = "iso")]
    strength: StrengthArg,
    /// Name of the cone block to test (default: apex).
    #[arg(long, default_value = "apex")]
    candidate: String,
    /// Name of the 2-functor block holding the diagram (default: diag).
    #[arg(long, default_value = "diag")]
    diagram: String,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Path to a .bicat file, or the name of a bundled instance.
    input: String,
    #[arg(long = "cone-flavor", value_enum)]
    cone_flavor: FlavorArg,
    /// Also build the slice 2-category with this morphism flavor.
    #[arg(long = "slice-flavor", value_enum)]
    slice_flavor: Option<FlavorArg>,
    #[arg(long, default_value = "diag")]
    diagram: String,
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct ExplainArgs {
    /// Path to a .bicat file, or the name of a bundled instance.
    input: String,
    #[command(flatten)]
    common: CommonArgs,
}

/// ASCII names are the canonical spelling; `--unicode` swaps in Greek
/// letters for readability.
fn style(s: &str, unicode: bool) -> String {
    if !unicode {
        return s.to_string();
    }
    s.replace("lambda", "\u{03bb}")
        .replace("gamma", "\u{03b3}")
        .replace("alpha", "\u{03b1}")
        .replace("delta", "\u{0394}")
        .replace("=>", "\u{21d2}")
        .replace("^-1", "\u{207b}\u{00b9}")
}

struct Loaded {
    label: String,
    description: Option<String>,
    text: String,
    diagram: Arc<TwoFunctor>,
    candidate: Option<Transformation>,
}

fn load(input: &str, diagram: &str, candidate: Option<&str>) -> bicat::Result<Loaded> {
    let path = std::path::Path::new(input);
    if path.is_file() || input.ends_with(".bicat") {
        let text = std::fs::read_to_string(path).map_err(|e| {
            bicat::KernelError::Invalid(format!("cannot read {}: {}", path.display(), e))
        })?;
        let doc = parse_document(&text)?;
        let f = doc.functor(diagram)?;
        let cone = match candidate {
            Some(name) => Some(doc.cone(name)?.clone()),
            None => None,
        };
        Ok(Loaded {
            label: input.to_string(),
            description: None,
            text,
            diagram: f,
            candidate: cone,
        })
    } else {
        let instances = corpus_instances()?;
        let inst = instances
            .into_iter()
            .find(|i| i.name == input)
            .ok_or_else(|| bicat::KernelError::UnknownName {
                kind: "corpus instance",
                name: input.into(),
            })?;
        let f = inst.doc.functor(diagram)?;
        let cone = match candidate {
            Some(name) => Some(inst.doc.cone(name)?.clone()),
            None => None,
        };
        Ok(Loaded {
            label: inst.name,
            description: Some(inst.description),
            text: inst.text,
            diagram: f,
            candidate: cone,
        })
    }
}

fn exit_for_status(status: Status) -> ExitCode {
    match status {
        Status::Holds => ExitCode::SUCCESS,
        Status::Fails => ExitCode::from(1),
        Status::UnknownAtBound => ExitCode::from(2),
    }
}

fn run_check(a: &CheckArgs) -> bicat::Result<ExitCode> {
    let bounds = a.common.bounds();
    let loaded = load(&a.input, &a.diagram, Some(&a.candidate))?;
    let candidate = loaded.candidate.expect("candidate requested");
    let eng = Engine::new(loaded.diagram.target.clone(), bounds);
    let cone: Flavor = a.cone_flavor.into();
    let strength: Strength = a.strength.into();

    let (question, verdict): (&str, Verdict) = match a.question {
        QuestionArg::Limit => {
            ("limit", is_limit(&loaded.diagram, &candidate, cone, strength, &eng)?)
        }
        QuestionArg::Terminal => {
            let slice_flavor: Flavor = a
                .slice_flavor
                .ok_or_else(|| {
                    bicat::KernelError::Invalid(
                        "--question terminal requires --slice-flavor".into(),
                    )
                })?
                .into();
            let s = build_slice(&loaded.diagram, cone, slice_flavor, &eng)?;
            let c = s.object_index(&candidate, &eng)?.ok_or_else(|| {
                bicat::KernelError::Invalid(format!(
                    "candidate `{}` is not among the enumerated {} cones",
                    a.candidate,
                    cone.name()
                ))
            })?;
            let v = match strength {
                Strength::Iso => is_two_terminal(&s, c, &eng)?,
                Strength::Bi => is_bi_terminal(&s, c, &eng)?,
            };
            ("terminal", v)
        }
    };

    match a.common.format {
        FormatArg::Text => {
            println!(
                "{} {} ({} cones{}) on {}: {} [{}]",
                question,
                strength.name(),
                cone.name(),
                match a.slice_flavor {
                    Some(f) => format!(", {} slice", Flavor::from(f).name()),
                    None => String::new(),
                },
                style(&loaded.label, a.common.unicode),
                verdict.status,
                verdict.certificate,
            );
            println!("candidate: {}", style(&candidate.display(), a.common.unicode));
            for w in &verdict.witnesses {
                println!("witness: {}", style(&w.to_string(), a.common.unicode));
            }
        }
        FormatArg::Json => {
            let json = serde_json::json!({
                "command": "check",
                "input": loaded.label,
                "question": question,
                "cone_flavor": cone.name(),
                "slice_flavor": a.slice_flavor.map(|f| Flavor::from(f).name()),
                "strength": strength.name(),
                "candidate": candidate.display(),
                "status": verdict.status.to_string(),
                "certificate": verdict.certificate.to_string(),
                "witnesses": verdict.witnesses.iter().map(|w| w.to_string()).collect::<Vec<_>>(),
                "bounds": bounds,
            });
            println!("{}", serde_json::to_string_pretty(&json).unwrap());
        }
    }
    Ok(exit_for_status(verdict.status))
}

fn run_enumerate(a: &EnumerateArgs) -> bicat::Result<ExitCode> {
    let bounds = a.common.bounds();
    let loaded = load(&a.input, &a.diagram, None)?;
    let eng = Engine::new(loaded.diagram.target.clone(), bounds);
    let cone: Flavor = a.cone_flavor.into();

    match a.slice_flavor {
        None => {
            let (cones, cert) = enumerate_cones(&loaded.diagram, cone, &eng)?;
            match a.common.format {
                FormatArg::Text => {
                    println!(
                        "{} {} cone(s) over {} [{}]",
                        cones.len(),
                        cone.name(),
                        style(&loaded.label, a.common.unicode),
                        cert
                    );
                    for c in &cones {
                        println!("  {}", style(&c.display(), a.common.unicode));
                    }
                }
                FormatArg::Json => {
                    let json = serde_json::json!({
                        "command": "enumerate",
                        "input": loaded.label,
                        "cone_flavor": cone.name(),
                        "certificate": cert.to_string(),
                        "cones": cones.iter().map(|c| c.display()).collect::<Vec<_>>(),
                        "bounds": bounds,
                    });
                    println!("{}", serde_json::to_string_pretty(&json).unwrap());
                }
            }
        }
        Some(slice_flavor) => {
            let slice_flavor: Flavor = slice_flavor.into();
            let s = build_slice(&loaded.diagram, cone, slice_flavor, &eng)?;
            match a.common.format {
                FormatArg::Text => {
                    println!(
                        "slice of {} cones, {} morphisms over {} [{}]",
                        cone.name(),
                        slice_flavor.name(),
                        style(&loaded.label, a.common.unicode),
                        s.certificate
                    );
                    println!(
                        "{} object(s), {} 1-cell(s), {} 2-cell(s)",
                        s.objects.len(),
                        s.one_cells.len(),
                        s.two_cells.len()
                    );
                    for (i, o) in s.objects.iter().enumerate() {
                        println!("  object {}: {}", i, style(&o.display(), a.common.unicode));
                    }
                    for m in 0..s.one_cells.len() {
                        println!("  1-cell {}: {}", m, style(&s.display_one_cell(m), a.common.unicode));
                    }
                }
                FormatArg::Json => {
                    let json = serde_json::json!({
                        "command": "enumerate",
                        "input": loaded.label,
                        "cone_flavor": cone.name(),
                        "slice_flavor": slice_flavor.name(),
                        "slice": s.to_json(),
                        "bounds": bounds,
                    });
                    println!("{}", serde_json::to_string_pretty(&json).unwrap());
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(a: &VerifyArgs) -> bicat::Result<ExitCode> {
    let report = verify_tables(a.common.bounds())?;
    match a.common.format {
        FormatArg::Text => print!("{}", style(&report.render_text(), a.common.unicode)),
        FormatArg::Json => {
            println!("{}", serde_json::to_string_pretty(&report.to_json()).unwrap())
        }
    }
    Ok(if report.pass() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn run_explain(a: &ExplainArgs) -> bicat::Result<ExitCode> {
    let loaded = load(&a.input, "diag", None)?;
    let doc = parse_document(&loaded.text)?;
    match a.common.format {
        FormatArg::Text => {
            if let Some(d) = &loaded.description {
                println!("# {}: {}", loaded.label, d);
            }
            print!("{}", style(&pretty_document(&doc), a.common.unicode));
        }
        FormatArg::Json => {
            let json = serde_json::json!({
                "command": "explain",
                "input": loaded.label,
                "description": loaded.description,
                "canonical": pretty_document(&doc),
            });
            println!("{}", serde_json::to_string_pretty(&json).unwrap());
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Check(a) => run_check(a),
        Command::Enumerate(a) => run_enumerate(a),
        Command::VerifyPaper(a) => run_verify(a),
        Command::Explain(a) => run_explain(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            ExitCode::from(64)
        }
    }
}
