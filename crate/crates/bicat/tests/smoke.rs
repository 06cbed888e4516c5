use bicat::corpus::corpus_instances;
use bicat::{Bounds, Engine};

#[test]
fn corpus_parses_and_validates() {
    let instances = corpus_instances().expect("corpus loads");
    assert_eq!(instances.len(), 10);
    let names: Vec<&str> = instances.iter().map(|i| i.name.as_str()).collect();
    assert!(names.contains(&"ce_strict_gap"));
    assert!(names.contains(&"ce_laxterminal_notlimit_inv"));
    for inst in &instances {
        let eng = inst.engine(Bounds::default());
        let v = inst.candidate.check(&eng).expect("candidate checks");
        assert!(v.is_holds(), "candidate of {} must be a valid cone: {:?}", inst.name, v.status);
    }
}

#[test]
fn hom_enumeration_matches_hand_counts() {
    let instances = corpus_instances().unwrap();
    let by_name = |n: &str| instances.iter().find(|i| i.name == n).unwrap();

    // Free loop: words X -> L at the default length bound, truncated.
    let inst = by_name("ce_laxcone_strict");
    let p = &inst.diagram.target;
    let eng = Engine::new(p.clone(), Bounds { max_word_length: 4, ..Bounds::default() });
    let (words, cert) = eng.one_cells(p.object_id("A").unwrap(), p.object_id("A").unwrap()).unwrap();
    assert_eq!(words.len(), 3); // id, b.a, b.a.b.a
    assert_eq!(cert, bicat::Certificate::Bounded);

    // Pullback ambient: no morphisms B -> C, exact.
    let inst = by_name("ce_strict_gap");
    let p = &inst.diagram.target;
    let eng = inst.engine(Bounds::default());
    let (words, cert) = eng.one_cells(p.object_id("B").unwrap(), p.object_id("C").unwrap()).unwrap();
    assert!(words.is_empty());
    assert_eq!(cert, bicat::Certificate::Exact);

    // One-free-lax-cone ambient: exactly f . alpha0 and alpha1 from X to B.
    let inst = by_name("ce_laxterminal_notlimit");
    let p = &inst.diagram.target;
    let eng = inst.engine(Bounds::default());
    let (words, cert) = eng.one_cells(p.object_id("X").unwrap(), p.object_id("B").unwrap()).unwrap();
    assert_eq!(words.len(), 2);
    assert_eq!(cert, bicat::Certificate::Exact);
}
