//! Pretty-printer / parser round-trips over the bundled sources.

use bicat::corpus::corpus_instances;
use bicat::dsl::{parse_document, pretty_document};
use bicat::Bounds;

#[test]
fn pretty_then_parse_is_identity() {
    for inst in corpus_instances().unwrap() {
        let doc1 = parse_document(&inst.text).unwrap();
        let p1 = pretty_document(&doc1);
        let doc2 = parse_document(&p1)
            .unwrap_or_else(|e| panic!("{}: canonical text does not re-parse: {}", inst.name, e));
        let p2 = pretty_document(&doc2);
        assert_eq!(p1, p2, "{}: canonical form is not a fixed point", inst.name);
    }
}

#[test]
fn round_trip_preserves_meaning() {
    for inst in corpus_instances().unwrap() {
        let doc2 = parse_document(&pretty_document(&inst.doc)).unwrap();
        let eng = inst.engine(Bounds::default());

        // Same presentations cell for cell.
        let f2 = doc2.functor("diag").unwrap();
        assert_eq!(f2.source.objects, inst.diagram.source.objects);
        assert_eq!(f2.target.objects, inst.diagram.target.objects);
        assert_eq!(f2.one_map, inst.diagram.one_map);
        assert_eq!(f2.two_map, inst.diagram.two_map);

        // The candidate cone survives with identical components.
        let c2 = doc2.cone("apex").unwrap();
        assert_eq!(c2.obj_components, inst.candidate.obj_components);
        for (a, b) in c2.one_components.iter().zip(&inst.candidate.one_components) {
            let v = eng.equal_two_cells(a, b).unwrap();
            assert!(v.is_holds(), "{}: component changed meaning", inst.name);
        }
    }
}
