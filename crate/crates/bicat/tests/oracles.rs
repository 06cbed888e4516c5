//! Hand-checked facts about the bundled instances, frozen as regression
//! oracles. Every count in this file was derived by hand from the
//! presentations before being computed.

use bicat::corpus::{corpus_instances, verify_tables, CorpusInstance};
use bicat::diagram::{enumerate_modifications, postcompose_cone, Flavor};
use bicat::slice::build_slice;
use bicat::universality::{
    analyze_functor, is_bi_terminal, is_limit, is_two_terminal, post_composition, Strength,
};
use bicat::{Bounds, Certificate, Engine, Status, Word};

fn load(name: &str) -> (CorpusInstance, Engine) {
    let inst = corpus_instances()
        .unwrap()
        .into_iter()
        .find(|i| i.name == name)
        .unwrap_or_else(|| panic!("no instance `{}`", name));
    let eng = inst.engine(Bounds::default());
    (inst, eng)
}

fn gen_word(eng: &Engine, name: &str) -> Word {
    let p = eng.presentation();
    Word::generator(p, p.one_gen_id(name).unwrap())
}

#[test]
fn strict_gap_slice_and_modification() {
    let (inst, eng) = load("ce_strict_gap");

    // The strict slice has the candidate plus its two post-composites.
    let s = build_slice(&inst.diagram, Flavor::Strict, Flavor::Strict, &eng).unwrap();
    assert_eq!(s.certificate, Certificate::Exact);
    assert_eq!(s.objects.len(), 3);
    let l = s.object_index(&inst.candidate, &eng).unwrap().unwrap();
    for o in 0..s.objects.len() {
        assert_eq!(s.one_cells_between(o, l).len(), 1, "object {} into the candidate", o);
    }

    // Exactly one modification lambda*f => lambda*g, and it is not an
    // identity: its components come from the gamma generators.
    let lf = postcompose_cone(&inst.candidate, &gen_word(&eng, "f"), &eng).unwrap();
    let lg = postcompose_cone(&inst.candidate, &gen_word(&eng, "g"), &eng).unwrap();
    let (mods, cert) = enumerate_modifications(&lf, &lg, &eng).unwrap();
    assert_eq!(cert, Certificate::Exact);
    assert_eq!(mods.len(), 1);
    assert!(!mods[0].is_identity());

    // That modification is the reason the candidate is not a 2-limit: the
    // post-composition functor at X is bijective on objects but not full.
    let x = eng.presentation().object_id("X").unwrap();
    let pc = post_composition(&inst.diagram, &inst.candidate, x, Flavor::Strict, &eng).unwrap();
    let a = analyze_functor(&pc.functor);
    assert!(a.injective_on_objects && a.surjective_on_objects);
    assert!(!a.full);
    assert!(a.faithful);

    let lim = is_limit(&inst.diagram, &inst.candidate, Flavor::Strict, Strength::Iso, &eng).unwrap();
    assert_eq!(lim.status, Status::Fails);
    assert_eq!(lim.certificate, Certificate::Exact);

    // Yet the candidate is 2-terminal in the strict slice.
    let term = is_two_terminal(&s, l, &eng).unwrap();
    assert_eq!(term.status, Status::Holds);
    assert_eq!(term.certificate, Certificate::Exact);
}

#[test]
fn lax_extra_limit_but_two_slice_morphisms() {
    let (inst, eng) = load("ce_lax_extra");

    // hom(X, L) is the free arrow alpha: f => g, as a category: 2 objects,
    // 3 morphisms (two identities and alpha).
    let p = eng.presentation();
    let hom = eng.hom_category(p.object_id("X").unwrap(), p.object_id("L").unwrap()).unwrap();
    assert_eq!(hom.certificate, Certificate::Exact);
    assert_eq!(hom.objects.len(), 2);
    assert_eq!(hom.morphisms.len(), 3);

    let lim = is_limit(&inst.diagram, &inst.candidate, Flavor::Strict, Strength::Iso, &eng).unwrap();
    assert_eq!(lim.status, Status::Holds);
    assert_eq!(lim.certificate, Certificate::Exact);

    // In the lax slice the cone lambda*g has two morphisms into the
    // candidate: one over g with identity fillers and one over f with
    // whiskered-alpha fillers. So the candidate is not 2-terminal there.
    let s = build_slice(&inst.diagram, Flavor::Strict, Flavor::Lax, &eng).unwrap();
    assert_eq!(s.certificate, Certificate::Exact);
    let l = s.object_index(&inst.candidate, &eng).unwrap().unwrap();
    let lg = postcompose_cone(&inst.candidate, &gen_word(&eng, "g"), &eng).unwrap();
    let lg_idx = s.object_index(&lg, &eng).unwrap().unwrap();
    assert_eq!(s.one_cells_between(lg_idx, l).len(), 2);

    let term = is_two_terminal(&s, l, &eng).unwrap();
    assert_eq!(term.status, Status::Fails);
    assert_eq!(term.certificate, Certificate::Exact);
}

#[test]
fn lax_terminal_without_lax_limit() {
    let (inst, eng) = load("ce_lax_terminal");

    // Terminal in the lax slice of lax cones...
    let s = build_slice(&inst.diagram, Flavor::Lax, Flavor::Lax, &eng).unwrap();
    assert_eq!(s.certificate, Certificate::Exact);
    let l = s.object_index(&inst.candidate, &eng).unwrap().unwrap();
    let term = is_two_terminal(&s, l, &eng).unwrap();
    assert_eq!(term.status, Status::Holds);
    assert_eq!(term.certificate, Certificate::Exact);

    // ...but not a lax limit: the free lax cone at X is not in the image
    // of hom(X, L).
    let lim = is_limit(&inst.diagram, &inst.candidate, Flavor::Lax, Strength::Iso, &eng).unwrap();
    assert_eq!(lim.status, Status::Fails);
    assert_eq!(lim.certificate, Certificate::Exact);
}

#[test]
fn laxterminal_notlimit_three_cones_one_missing() {
    let (inst, eng) = load("ce_laxterminal_notlimit");

    let s = build_slice(&inst.diagram, Flavor::Lax, Flavor::Lax, &eng).unwrap();
    assert_eq!(s.certificate, Certificate::Exact);
    assert_eq!(s.objects.len(), 3);
    let l = s.object_index(&inst.candidate, &eng).unwrap().unwrap();
    for o in 0..s.objects.len() {
        assert_eq!(s.one_cells_between(o, l).len(), 1, "object {} into the candidate", o);
    }
    let term = is_two_terminal(&s, l, &eng).unwrap();
    assert_eq!(term.status, Status::Holds);
    assert_eq!(term.certificate, Certificate::Exact);

    // The lax cone whose filler is the generator alpha has no preimage
    // under post-composition, so the candidate is not a lax limit.
    let lim = is_limit(&inst.diagram, &inst.candidate, Flavor::Lax, Strength::Iso, &eng).unwrap();
    assert_eq!(lim.status, Status::Fails);
    assert_eq!(lim.certificate, Certificate::Exact);
    assert!(
        lim.witnesses.iter().any(|w| w.to_string().contains("alpha")),
        "expected an alpha-cone witness, got {:?}",
        lim.witnesses
    );
}

#[test]
fn laxlimit_notterminal_limit_without_terminality() {
    let (inst, eng) = load("ce_laxlimit_notterminal");

    for flavor in [Flavor::Pseudo, Flavor::Lax] {
        let lim = is_limit(&inst.diagram, &inst.candidate, flavor, Strength::Iso, &eng).unwrap();
        assert_eq!(lim.status, Status::Holds, "{} limit", flavor.name());
        assert_eq!(lim.certificate, Certificate::Exact);
    }

    // Two morphisms into the candidate from the alpha-cone break strict
    // terminality in the lax slice...
    let s = build_slice(&inst.diagram, Flavor::Lax, Flavor::Lax, &eng).unwrap();
    assert_eq!(s.objects.len(), 3);
    let l = s.object_index(&inst.candidate, &eng).unwrap().unwrap();
    let term = is_two_terminal(&s, l, &eng).unwrap();
    assert_eq!(term.status, Status::Fails);
    assert_eq!(term.certificate, Certificate::Exact);

    // ...while bi-terminality in the pseudo slice survives.
    let sp = build_slice(&inst.diagram, Flavor::Lax, Flavor::Pseudo, &eng).unwrap();
    let lp = sp.object_index(&inst.candidate, &eng).unwrap().unwrap();
    let bi = is_bi_terminal(&sp, lp, &eng).unwrap();
    assert_eq!(bi.status, Status::Holds);
}

#[test]
fn laxcone_strict_bounded_free_loop() {
    let (inst, eng) = load("ce_laxcone_strict");

    // The ambient category has a free loop b.a on A, so every enumeration
    // is bound-certified, never exact.
    let p = eng.presentation();
    let a = p.object_id("A").unwrap();
    let (words, cert) = eng.one_cells(a, a).unwrap();
    assert_eq!(cert, Certificate::Bounded);
    assert!(words.len() >= 3);

    // hom(X, L) is discrete on {f, g}: the only 2-cells into L are
    // identities.
    let x = p.object_id("X").unwrap();
    let l = p.object_id("L").unwrap();
    let hom = eng.hom_category(x, l).unwrap();
    assert_eq!(hom.objects.len(), 2);
    assert_eq!(hom.morphisms.len(), 2);

    // Yet a (gamma0, gamma1) modification lambda*f => lambda*g exists, so
    // post-composition cannot be full and the candidate is not a lax
    // limit.
    let lf = postcompose_cone(&inst.candidate, &gen_word(&eng, "f"), &eng).unwrap();
    let lg = postcompose_cone(&inst.candidate, &gen_word(&eng, "g"), &eng).unwrap();
    let (mods, _) = enumerate_modifications(&lf, &lg, &eng).unwrap();
    assert!(!mods.is_empty());
    assert!(mods.iter().all(|m| !m.is_identity()));

    // The strict slice of lax cones is far bigger than the three intended
    // cones: the free loop manufactures new lax cones at every length, so
    // the candidate is not 2-terminal there.
    let s = build_slice(&inst.diagram, Flavor::Lax, Flavor::Strict, &eng).unwrap();
    assert_eq!(s.certificate, Certificate::Bounded);
    assert!(s.objects.len() > 3, "free loop keeps generating cones, got {}", s.objects.len());
    let c = s.object_index(&inst.candidate, &eng).unwrap().unwrap();
    let term = is_two_terminal(&s, c, &eng).unwrap();
    assert_eq!(term.status, Status::Fails);
    assert_eq!(term.certificate, Certificate::Bounded);

    // The failure is stable under a larger word bound.
    let eng8 = inst.engine(Bounds { max_word_length: 8, ..Bounds::default() });
    let s8 = build_slice(&inst.diagram, Flavor::Lax, Flavor::Strict, &eng8).unwrap();
    let c8 = s8.object_index(&inst.candidate, &eng8).unwrap().unwrap();
    let term8 = is_two_terminal(&s8, c8, &eng8).unwrap();
    assert_eq!(term8.status, Status::Fails);
}

#[test]
fn invertible_variants_swap_verdicts() {
    // Making alpha invertible in ce_lax_extra turns the lax filler into a
    // pseudo one: the candidate stops being 2-terminal in the pseudo
    // slice too, while the strict limit survives.
    let (inst, eng) = load("ce_lax_extra_inv");
    let lim = is_limit(&inst.diagram, &inst.candidate, Flavor::Strict, Strength::Iso, &eng).unwrap();
    assert_eq!(lim.status, Status::Holds);
    let s = build_slice(&inst.diagram, Flavor::Strict, Flavor::Pseudo, &eng).unwrap();
    let l = s.object_index(&inst.candidate, &eng).unwrap().unwrap();
    let term = is_two_terminal(&s, l, &eng).unwrap();
    assert_eq!(term.status, Status::Fails);

    // In the base instance the pseudo slice is untouched: alpha is not
    // invertible, so no pseudo filler arises from it.
    let (base, beng) = load("ce_lax_extra");
    let sb = build_slice(&base.diagram, Flavor::Strict, Flavor::Pseudo, &beng).unwrap();
    let lb = sb.object_index(&base.candidate, &beng).unwrap().unwrap();
    let termb = is_two_terminal(&sb, lb, &beng).unwrap();
    assert_eq!(termb.status, Status::Holds);
}

#[test]
fn expectation_tables_two_known_mismatches() {
    let report = verify_tables(Bounds::default()).unwrap();
    assert_eq!(report.mismatches(), 2, "\n{}", report.render_text());
    assert!(!report.pass());

    // Both mismatches are the same finding: over the free-loop instance
    // the candidate is claimed terminal in the strict slice of lax cones,
    // but extra loop-generated cones admit no morphism into it.
    let bad: Vec<&bicat::corpus::CellReport> = report
        .tables
        .iter()
        .flat_map(|t| t.cells.iter().flatten())
        .filter(|c| !c.confirmed)
        .collect();
    assert_eq!(bad.len(), 2);
    for cell in bad {
        assert_eq!(cell.instance.as_deref(), Some("ce_laxcone_strict"));
        assert_eq!(cell.cone_flavor, Flavor::Lax);
        assert_eq!(cell.terminal, Some(Status::Fails));
    }
    for e in &report.extra {
        assert!(e.confirmed, "extra entry {} should confirm", e.instance);
    }
}
