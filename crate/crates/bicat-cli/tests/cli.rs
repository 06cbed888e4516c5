//! Black-box checks of the binary: exit codes, format parity, and the
//! corpus-directory override.

use std::process::{Command, Output};

fn bicat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bicat")).args(args).output().expect("run bicat")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn exit_codes_follow_the_verdict() {
    // Holds -> 0.
    let o = bicat(&["check", "ce_lax_extra", "--question", "limit", "--cone-flavor", "strict"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    // Fails -> 1, with a printed witness.
    let o = bicat(&["check", "ce_strict_gap", "--question", "limit", "--cone-flavor", "strict"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("witness:"), "missing witness line:\n{}", text);
    assert!(text.contains("gamma0"), "witness should name gamma0:\n{}", text);

    // Missing file -> 64.
    let o = bicat(&["check", "missing.bicat", "--question", "limit", "--cone-flavor", "strict"]);
    assert_eq!(o.status.code(), Some(64));

    // Unknown corpus name -> 64.
    let o = bicat(&["check", "nonsense", "--question", "limit", "--cone-flavor", "strict"]);
    assert_eq!(o.status.code(), Some(64));

    // terminal without --slice-flavor -> 64.
    let o = bicat(&["check", "ce_strict_gap", "--question", "terminal", "--cone-flavor", "strict"]);
    assert_eq!(o.status.code(), Some(64));

    // verify-paper propagates mismatches as exit 1.
    let o = bicat(&["verify-paper"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn text_and_json_agree() {
    let args = ["check", "ce_laxterminal_notlimit", "--question", "limit", "--cone-flavor", "lax"];
    let text_out = bicat(&args);
    let mut jargs = args.to_vec();
    jargs.extend(["--format", "json"]);
    let json_out = bicat(&jargs);
    assert_eq!(text_out.status.code(), json_out.status.code());

    let json: serde_json::Value = serde_json::from_slice(&json_out.stdout).unwrap();
    let text = stdout(&text_out);
    assert!(text.contains(json["status"].as_str().unwrap()));
    assert!(text.contains(json["certificate"].as_str().unwrap()));
    let witnesses = json["witnesses"].as_array().unwrap();
    assert_eq!(text.matches("witness:").count(), witnesses.len());
    for w in witnesses {
        assert!(text.contains(w.as_str().unwrap()), "witness `{}` missing from text", w);
    }
}

#[test]
fn unicode_flag_renders_greek_names() {
    let o = bicat(&[
        "check",
        "ce_laxterminal_notlimit",
        "--question",
        "limit",
        "--cone-flavor",
        "lax",
        "--unicode",
    ]);
    let text = stdout(&o);
    assert!(text.contains("\u{03b1}"), "expected an alpha glyph:\n{}", text);
    assert!(!text.contains("alpha"), "ASCII name leaked into unicode output:\n{}", text);
}

#[test]
fn verify_paper_json_shape() {
    let o = bicat(&["verify-paper", "--format", "json"]);
    let json: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(json["tables"].as_array().unwrap().len(), 4);
    assert_eq!(json["pass"], serde_json::Value::Bool(false));
    assert_eq!(json["mismatches"], serde_json::json!(2));
    // Text output reports the same mismatch count.
    let t = bicat(&["verify-paper"]);
    assert!(stdout(&t).contains("result: 2 mismatched cell(s)"));
}

#[test]
fn corpus_dir_override_is_respected() {
    let dir = std::env::temp_dir().join(format!("bicat-corpus-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    // Start from the shipped corpus, then replace one instance with a
    // trivial identity cone over a point.
    let shipped = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    for entry in std::fs::read_dir(&shipped).unwrap() {
        let entry = entry.unwrap();
        std::fs::copy(entry.path(), dir.join(entry.file_name())).unwrap();
    }
    std::fs::write(
        dir.join("ce_strict_gap.bicat"),
        "2category one\nobjects: I0\n\n2category pt\nobjects: P\n\n\
         2functor diag: one -> pt\non objects:\n  I0 -> P\n\n\
         cone apex: Delta P => diag strict\nat I0: id(P)\n",
    )
    .unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_bicat"))
        .env("BICAT_CORPUS_DIR", &dir)
        .args(["enumerate", "ce_strict_gap", "--cone-flavor", "strict"])
        .output()
        .unwrap();
    let text = stdout(&o);
    assert!(text.contains("1 strict cone(s)"), "override not picked up:\n{}", text);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn explain_output_reparses() {
    let o = bicat(&["explain", "ce_lax_terminal"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    // Strip the description header; the rest must be valid DSL.
    let body: String =
        text.lines().filter(|l| !l.starts_with('#')).collect::<Vec<_>>().join("\n");
    bicat::dsl::parse_document(&body).expect("explain output re-parses");
}
