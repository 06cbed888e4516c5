//! Algebraic laws checked across every bundled presentation: exhaustively
//! on generators, and on randomized samples of enumerated terms.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::OnceLock;

use proptest::prelude::*;

use bicat::corpus::corpus_instances;
use bicat::diagram::{enumerate_cones, enumerate_modifications, Flavor};
use bicat::slice::build_slice;
use bicat::universality::{analyze_functor, post_composition, FunctorBetweenFiniteCategories};
use bicat::{Bounds, Certificate, Engine, FiniteCategory, Presentation, Term, Word};

struct Fixture {
    name: String,
    eng: Engine,
    /// Sampled terms, bucketed by (src word, tgt word).
    terms: Vec<Term>,
    /// Horizontally composable term pairs (t1 then t2).
    hpairs: Vec<(Term, Term)>,
    /// Vertically composable term pairs (t1 then t2).
    vpairs: Vec<(Term, Term)>,
    /// Sampled normal words.
    words: Vec<Word>,
}

const WORDS_PER_HOM: usize = 4;
const TERMS_PER_BOUNDARY: usize = 4;

fn fixtures() -> &'static Vec<Fixture> {
    static FIX: OnceLock<Vec<Fixture>> = OnceLock::new();
    FIX.get_or_init(|| {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for inst in corpus_instances().unwrap() {
            let p = inst.diagram.target.clone();
            if !seen.insert(p.name.clone()) {
                continue; // `_inv` variants share the base name; skip repeats of identical ambients
            }
            let eng = inst.engine(Bounds::default());
            let n = p.objects.len();
            let mut words = Vec::new();
            let mut terms = Vec::new();
            for x in 0..n {
                for y in 0..n {
                    let (ws, _) = eng.one_cells(x, y).unwrap();
                    let ws: Vec<Word> =
                        ws.into_iter().filter(|w| w.len() <= 3).take(WORDS_PER_HOM).collect();
                    for f in &ws {
                        for g in &ws {
                            let (ts, _) = eng.two_cells(f, g).unwrap();
                            terms.extend(ts.into_iter().take(TERMS_PER_BOUNDARY));
                        }
                    }
                    words.extend(ws);
                }
            }
            let mut hpairs = Vec::new();
            let mut vpairs = Vec::new();
            for t1 in &terms {
                for t2 in &terms {
                    if t1.src.tgt(&p) == t2.src.src {
                        hpairs.push((t1.clone(), t2.clone()));
                    }
                    if p.normalize(&t1.tgt) == p.normalize(&t2.src) {
                        vpairs.push((t1.clone(), t2.clone()));
                    }
                }
            }
            out.push(Fixture { name: inst.name, eng, terms, hpairs, vpairs, words });
        }
        out
    })
}

/// Both evaluation orders of the horizontal composite of `t1: f => g`
/// (then) `t2: h => k`.
fn interchange_sides(p: &Presentation, t1: &Term, t2: &Term) -> (Term, Term) {
    let x = t1.src.src;
    let z = t2.src.tgt(p);
    let first = p.whisker(&Word::identity(x), t1, &t2.src).unwrap();
    let second = p.whisker(&t1.tgt, t2, &Word::identity(z)).unwrap();
    let left = p.vcompose(&second, &first).unwrap();
    let first = p.whisker(&t1.src, t2, &Word::identity(z)).unwrap();
    let second = p.whisker(&Word::identity(x), t1, &t2.tgt).unwrap();
    let right = p.vcompose(&second, &first).unwrap();
    (left, right)
}

#[test]
fn interchange_on_all_generator_pairs() {
    for fx in fixtures() {
        let p = fx.eng.presentation().clone();
        for (i, g1) in p.two_gens.iter().enumerate() {
            for (j, g2) in p.two_gens.iter().enumerate() {
                if g1.src.tgt(&p) != g2.src.src {
                    continue;
                }
                let t1 = Term::generator(&p, i);
                let t2 = Term::generator(&p, j);
                let (l, r) = interchange_sides(&p, &t1, &t2);
                let v = fx.eng.equal_two_cells(&l, &r).unwrap();
                assert!(
                    v.is_holds(),
                    "{}: interchange fails on generators {} and {}: {:?}",
                    fx.name,
                    g1.name,
                    g2.name,
                    v.status
                );
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn interchange_on_random_terms(seed in any::<prop::sample::Index>()) {
        for fx in fixtures() {
            if fx.hpairs.is_empty() {
                continue;
            }
            let (t1, t2) = &fx.hpairs[seed.index(fx.hpairs.len())];
            let p = fx.eng.presentation().clone();
            let (l, r) = interchange_sides(&p, t1, t2);
            let v = fx.eng.equal_two_cells(&l, &r).unwrap();
            prop_assert!(v.is_holds(), "{}: interchange fails: {:?}", fx.name, v.status);
        }
    }

    #[test]
    fn whiskering_preserves_vertical_composites(seed in any::<prop::sample::Index>()) {
        for fx in fixtures() {
            if fx.vpairs.is_empty() {
                continue;
            }
            let (t1, t2) = &fx.vpairs[seed.index(fx.vpairs.len())];
            let p = fx.eng.presentation().clone();
            let x = t1.src.src;
            let y = t1.src.tgt(&p);
            // Whisker with every sampled word on either side.
            for pre in fx.words.iter().filter(|w| w.tgt(&p) == x).take(3) {
                for post in fx.words.iter().filter(|w| w.src == y).take(3) {
                    let stacked = p.vcompose(t2, t1).unwrap();
                    let whole = p.whisker(pre, &stacked, post).unwrap();
                    let w1 = p.whisker(pre, t1, post).unwrap();
                    let w2 = p.whisker(pre, t2, post).unwrap();
                    let split = p.vcompose(&w2, &w1).unwrap();
                    let v = fx.eng.equal_two_cells(&whole, &split).unwrap();
                    prop_assert!(v.is_holds(), "{}: whisker not functorial", fx.name);
                }
            }
        }
    }

    #[test]
    fn whiskering_preserves_identities(seed in any::<prop::sample::Index>()) {
        for fx in fixtures() {
            if fx.words.is_empty() {
                continue;
            }
            let p = fx.eng.presentation().clone();
            let w = &fx.words[seed.index(fx.words.len())];
            for pre in fx.words.iter().filter(|u| u.tgt(&p) == w.src).take(3) {
                for post in fx.words.iter().filter(|u| u.src == w.tgt(&p)).take(3) {
                    let whiskered = p.whisker(pre, &Term::identity(w.clone()), post).unwrap();
                    let glued = p.compose(post, &p.compose(w, pre).unwrap()).unwrap();
                    let v = fx.eng.equal_two_cells(&whiskered, &Term::identity(glued)).unwrap();
                    prop_assert!(v.is_holds(), "{}: whiskered identity is not an identity", fx.name);
                }
            }
        }
    }

    #[test]
    fn normalize_is_idempotent(seed in any::<prop::sample::Index>()) {
        for fx in fixtures() {
            if fx.words.is_empty() {
                continue;
            }
            let p = fx.eng.presentation().clone();
            let w = &fx.words[seed.index(fx.words.len())];
            let n = p.normalize(w);
            prop_assert_eq!(p.normalize(&n), n.clone(), "{}", &fx.name);
            // Composites normalize the same whether or not the parts were
            // normalized first.
            for u in fx.words.iter().filter(|u| u.src == w.tgt(&p)).take(3) {
                let c = p.compose(u, w).unwrap();
                let via_parts = p.compose(&p.normalize(u), &n).unwrap();
                prop_assert_eq!(p.normalize(&c), p.normalize(&via_parts), "{}", &fx.name);
            }
        }
    }

    #[test]
    fn equality_is_an_equivalence(seed in any::<prop::sample::Index>()) {
        for fx in fixtures() {
            if fx.terms.is_empty() {
                continue;
            }
            let t = &fx.terms[seed.index(fx.terms.len())];
            let v = fx.eng.equal_two_cells(t, t).unwrap();
            prop_assert!(v.is_holds(), "{}: reflexivity", fx.name);
            let c = fx.eng.canonical_term(t).unwrap();
            prop_assert!(fx.eng.equal_two_cells(t, &c).unwrap().is_holds(), "{}: canonical", fx.name);
            let s = &fx.terms[seed.index(fx.terms.len().max(2) - 1)];
            if s.src == t.src && s.tgt == t.tgt {
                let a = fx.eng.equal_two_cells(s, t).unwrap();
                let b = fx.eng.equal_two_cells(t, s).unwrap();
                prop_assert_eq!(a.status, b.status, "{}: symmetry", &fx.name);
            }
        }
    }
}

#[test]
fn hom_categories_satisfy_category_laws() {
    for fx in fixtures() {
        let p = fx.eng.presentation().clone();
        for x in 0..p.objects.len() {
            for y in 0..p.objects.len() {
                let hom = fx.eng.hom_category(x, y).unwrap();
                hom.cat.check().unwrap_or_else(|e| {
                    panic!("{}: hom({}, {}) is not a category: {}", fx.name, p.objects[x], p.objects[y], e)
                });
            }
        }
    }
}

#[test]
fn flavor_inclusions_hold_on_all_instances() {
    for inst in corpus_instances().unwrap() {
        let eng = inst.engine(Bounds::default());
        let display = |cones: &[bicat::diagram::Transformation]| -> BTreeSet<String> {
            cones.iter().map(|c| c.display()).collect()
        };
        let (strict, _) = enumerate_cones(&inst.diagram, Flavor::Strict, &eng).unwrap();
        let (pseudo, _) = enumerate_cones(&inst.diagram, Flavor::Pseudo, &eng).unwrap();
        let (lax, _) = enumerate_cones(&inst.diagram, Flavor::Lax, &eng).unwrap();
        let (ds, dp, dl) = (display(&strict), display(&pseudo), display(&lax));
        assert!(ds.is_subset(&dp), "{}: strict cones escape the pseudo cones", inst.name);
        assert!(dp.is_subset(&dl), "{}: pseudo cones escape the lax cones", inst.name);

        // More permissive slices only grow.
        let objs = |cone: Flavor, slice: Flavor| {
            build_slice(&inst.diagram, cone, slice, &eng).unwrap().objects.len()
        };
        assert!(objs(Flavor::Strict, Flavor::Strict) <= objs(Flavor::Pseudo, Flavor::Strict));
        assert!(objs(Flavor::Pseudo, Flavor::Strict) <= objs(Flavor::Lax, Flavor::Strict));
        // More permissive morphism flavors only grow too. Slices a bound
        // cannot finish (composites of fillers past the layer cap) are
        // skipped rather than compared.
        let cells = |slice: Flavor| {
            build_slice(&inst.diagram, inst.candidate.flavor, slice, &eng)
                .ok()
                .map(|s| s.one_cells.len())
        };
        if let (Some(a), Some(b), Some(c)) =
            (cells(Flavor::Strict), cells(Flavor::Pseudo), cells(Flavor::Lax))
        {
            assert!(a <= b && b <= c, "{}: slice morphisms shrank", inst.name);
        }
    }
}

/// Recompute every functor-analysis flag from scratch with different code.
fn fiber_oracle(fc: &FunctorBetweenFiniteCategories) -> (bool, bool, bool, bool, bool) {
    let image: BTreeSet<usize> = fc.obj_map.iter().copied().collect();
    let injective = image.len() == fc.obj_map.len();
    let surjective = image.len() == fc.target.objects.len();

    let mut faithful = true;
    let mut fibers: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    for (m, mor) in fc.source.morphisms.iter().enumerate() {
        *fibers.entry((mor.src, mor.tgt, fc.mor_map[m])).or_default() += 1;
    }
    if fibers.values().any(|&n| n > 1) {
        faithful = false;
    }

    let mut full = true;
    for a in 0..fc.source.objects.len() {
        for b in 0..fc.source.objects.len() {
            let image_mors: BTreeSet<usize> =
                fc.source.hom(a, b).into_iter().map(|m| fc.mor_map[m]).collect();
            for g in fc.target.hom(fc.obj_map[a], fc.obj_map[b]) {
                if !image_mors.contains(&g) {
                    full = false;
                }
            }
        }
    }

    // Essential surjectivity via iso-classes of the target category.
    let iso_related = |cat: &FiniteCategory, a: usize, b: usize| {
        a == b || cat.hom(a, b).into_iter().any(|m| cat.is_iso(m))
    };
    let mut essentially_surjective = true;
    for t in 0..fc.target.objects.len() {
        if !fc.obj_map.iter().any(|&ia| iso_related(&fc.target, ia, t)) {
            essentially_surjective = false;
        }
    }
    (injective, surjective, faithful, full, essentially_surjective)
}

#[test]
fn functor_analysis_matches_fiber_oracle() {
    for inst in corpus_instances().unwrap() {
        let eng = inst.engine(Bounds::default());
        let p = inst.diagram.target.clone();
        for x in 0..p.objects.len() {
            let pc = post_composition(&inst.diagram, &inst.candidate, x, Flavor::Lax, &eng).unwrap();
            let a = analyze_functor(&pc.functor);
            let (inj, surj, faith, full, ess) = fiber_oracle(&pc.functor);
            assert_eq!(a.injective_on_objects, inj, "{} at {}", inst.name, p.objects[x]);
            assert_eq!(a.surjective_on_objects, surj, "{} at {}", inst.name, p.objects[x]);
            assert_eq!(a.faithful, faith, "{} at {}", inst.name, p.objects[x]);
            assert_eq!(a.full, full, "{} at {}", inst.name, p.objects[x]);
            assert_eq!(a.essentially_surjective, ess, "{} at {}", inst.name, p.objects[x]);
        }
    }
}

#[test]
fn enumerated_cells_reverify() {
    for inst in corpus_instances().unwrap() {
        let eng = inst.engine(Bounds::default());
        let (cones, _) = enumerate_cones(&inst.diagram, Flavor::Lax, &eng).unwrap();
        for c in &cones {
            assert!(c.check(&eng).unwrap().is_holds(), "{}: cone fails its own check", inst.name);
        }
        // Modifications between the first few parallel pairs.
        let mut budget = 12;
        'outer: for a in &cones {
            for b in &cones {
                if a.summit() != b.summit() {
                    continue;
                }
                let (mods, _) = enumerate_modifications(a, b, &eng).unwrap();
                for m in &mods {
                    assert!(m.check(&eng).unwrap().is_holds(), "{}: modification fails", inst.name);
                }
                budget -= 1;
                if budget == 0 {
                    break 'outer;
                }
            }
        }
    }
}

#[test]
fn exact_results_are_stable_under_larger_bounds() {
    let instances = corpus_instances().unwrap();
    let by_name = |n: &str| instances.iter().find(|i| i.name == n).unwrap();

    // Acyclic ambient: everything exact, counts frozen as the bound grows.
    let inst = by_name("ce_lax_extra");
    let p = inst.diagram.target.clone();
    let (x, l) = (p.object_id("X").unwrap(), p.object_id("L").unwrap());
    let small = inst.engine(Bounds::default());
    let large = inst.engine(Bounds { max_word_length: 8, max_layers: 8, ..Bounds::default() });
    let (w6, c6) = small.one_cells(x, l).unwrap();
    let (w8, c8) = large.one_cells(x, l).unwrap();
    assert_eq!((w6, c6), (w8.clone(), Certificate::Exact));
    assert_eq!(c8, Certificate::Exact);
    assert_eq!(
        build_slice(&inst.diagram, Flavor::Strict, Flavor::Lax, &small).unwrap().objects.len(),
        build_slice(&inst.diagram, Flavor::Strict, Flavor::Lax, &large).unwrap().objects.len(),
    );

    // Cyclic ambient: bounded certificates, and raising the bound really
    // does find more words.
    let inst = by_name("ce_laxcone_strict");
    let p = inst.diagram.target.clone();
    let a = p.object_id("A").unwrap();
    let small = inst.engine(Bounds::default());
    let large = inst.engine(Bounds { max_word_length: 8, ..Bounds::default() });
    let (w6, c6) = small.one_cells(a, a).unwrap();
    let (w8, c8) = large.one_cells(a, a).unwrap();
    assert_eq!(c6, Certificate::Bounded);
    assert_eq!(c8, Certificate::Bounded);
    assert!(w8.len() > w6.len());
}
