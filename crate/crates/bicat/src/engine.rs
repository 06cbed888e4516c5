//! Bounded decision procedures for 2-cell equality and enumeration.
//!
//! For each hom (X, Y) the engine builds a *pasting graph*: nodes are the
//! normal-form 1-cell words X → Y (up to a generous internal length cap),
//! and edges are whiskered atoms `(pre, atom, post)` with normalized
//! whisker words. A 2-cell term is an edge-path, and two terms denote the
//! same 2-cell exactly when their paths are connected by the congruence
//! generated by
//!
//!   * whiskered 2-relation instances (either orientation),
//!   * interchange swaps of layers with disjoint whisker support,
//!   * inverse cancellation for invertible atoms, and
//!   * 1-normalization of whisker words (built into the edge keys).
//!
//! The engine enumerates every path of at most `max_layers` edges, splices
//! every relation instance at every position of every path, and reads the
//! equality classes off a union-find. Because the path universe is closed
//! under subpaths and splices preserve endpoints, a single sweep computes
//! the full bounded congruence. A hom is certified *exact* when its
//! 1-generator graph is acyclic, nothing was truncated, and every path of
//! frontier length is provably equal to a shorter one — then longer terms
//! cannot create new classes or merge existing ones.

use crate::cat::{FinMor, FiniteCategory};
use crate::error::{KernelError, Result};
use crate::presentation::{ObjId, Presentation, Word};
use crate::term::{Atom, Layer, Term};
use crate::verdict::{Bounds, Certificate, Status, Verdict, Witness};
use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex};

/// A stable identifier for a 2-cell equality class: the hom it lives in
/// plus the union-find root of its path class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassRef {
    pub hom: (ObjId, ObjId),
    pub root: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Edge {
    from: usize,
    to: usize,
    atom: Atom,
    pre: Word,
    post: Word,
}

#[derive(Debug, Clone)]
struct RelInst {
    a: Vec<usize>,
    b: Vec<usize>,
    from: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Path {
    from: usize,
    to: usize,
    edges: Vec<usize>,
}

pub struct HomSpace {
    pub src: ObjId,
    pub tgt: ObjId,
    words: Vec<Word>,
    word_idx: BTreeMap<Word, usize>,
    edges: Vec<Edge>,
    edge_idx: BTreeMap<(Atom, Word, Word), usize>,
    paths: Vec<Path>,
    path_idx: BTreeMap<(usize, Vec<usize>), usize>,
    insts: Vec<RelInst>,
    class_of: Vec<usize>,
    /// Minimal path id per class root: the canonical representative.
    rep_of: BTreeMap<usize, usize>,
    pub exact: bool,
}

impl HomSpace {
    fn node(&self, w: &Word) -> Option<usize> {
        self.word_idx.get(w).copied()
    }

}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let r = self.find(self.0[x]);
            self.0[x] = r;
        }
        self.0[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Keep the smaller id as root so representatives are minimal.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

/// Decision procedures for one presentation at fixed bounds, with cached
/// pasting graphs. All methods are pure functions of the presentation and
/// bounds; the cache is invisible to callers and safe to share.
pub struct Engine {
    pres: Arc<Presentation>,
    bounds: Bounds,
    homs: Mutex<BTreeMap<(ObjId, ObjId), Arc<HomSpace>>>,
    words_from: Mutex<BTreeMap<ObjId, Arc<(Vec<Word>, bool)>>>,
}

impl Engine {
    pub fn new(pres: Arc<Presentation>, bounds: Bounds) -> Engine {
        Engine { pres, bounds, homs: Mutex::new(BTreeMap::new()), words_from: Mutex::new(BTreeMap::new()) }
    }

    pub fn presentation(&self) -> &Arc<Presentation> {
        &self.pres
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    /// Internal word-length cap for pasting graphs. Larger than the user
    /// bound so that whiskered boundaries of bounded cones stay in range.
    fn cap(&self) -> usize {
        self.bounds.max_word_length * 2 + 2
    }

    fn words_from(&self, o: ObjId) -> Arc<(Vec<Word>, bool)> {
        let mut cache = self.words_from.lock().unwrap();
        cache
            .entry(o)
            .or_insert_with(|| Arc::new(self.pres.normal_words_from(o, self.cap())))
            .clone()
    }

    fn words_between(&self, x: ObjId, y: ObjId) -> Vec<Word> {
        let p = &self.pres;
        self.words_from(x).0.iter().filter(|w| w.tgt(p) == y).cloned().collect()
    }

    /// All distinct 1-cell normal forms X → Y of length at most
    /// `max_word_length`, shortlex sorted, with an exactness certificate.
    pub fn one_cells(&self, x: ObjId, y: ObjId) -> Result<(Vec<Word>, Certificate)> {
        self.check_obj(x)?;
        self.check_obj(y)?;
        let (words, truncated) = self.pres.normal_words_from(x, self.bounds.max_word_length);
        let out: Vec<Word> = words.into_iter().filter(|w| w.tgt(&self.pres) == y).collect();
        let cert = if self.pres.reachable_acyclic(x) && !truncated {
            Certificate::Exact
        } else {
            Certificate::Bounded
        };
        Ok((out, cert))
    }

    fn check_obj(&self, o: ObjId) -> Result<()> {
        if o >= self.pres.objects.len() {
            return Err(KernelError::UnknownName { kind: "object", name: format!("#{}", o) });
        }
        Ok(())
    }

    pub fn hom_space(&self, x: ObjId, y: ObjId) -> Result<Arc<HomSpace>> {
        self.check_obj(x)?;
        self.check_obj(y)?;
        if let Some(h) = self.homs.lock().unwrap().get(&(x, y)) {
            return Ok(h.clone());
        }
        let built = Arc::new(self.build_hom(x, y));
        self.homs.lock().unwrap().insert((x, y), built.clone());
        Ok(built)
    }

    fn build_hom(&self, x: ObjId, y: ObjId) -> HomSpace {
        let p = &self.pres;
        let (all_words, mut truncated) = (*self.words_from(x)).clone();
        let words: Vec<Word> = all_words.iter().filter(|w| w.tgt(p) == y).cloned().collect();
        let word_idx: BTreeMap<Word, usize> =
            words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();

        let atoms: Vec<Atom> = (0..p.two_gens.len())
            .flat_map(|g| {
                let mut v = vec![Atom { gen: g, inverted: false }];
                if p.two_gens[g].invertible {
                    v.push(Atom { gen: g, inverted: true });
                }
                v
            })
            .collect();

        // Edges: every whiskered atom embedding between in-range nodes.
        let mut edge_set: BTreeSet<(usize, usize, Atom, Word, Word)> = BTreeSet::new();
        for &atom in &atoms {
            let s_obj = p.two_gens[atom.gen].src.src;
            let t_obj = p.two_gens[atom.gen].src.tgt(p);
            for pre in self.words_between(x, s_obj) {
                for post in self.words_between(t_obj, y) {
                    let glue = |mid: &Word| {
                        let mut gens = pre.gens.clone();
                        gens.extend_from_slice(&mid.gens);
                        gens.extend_from_slice(&post.gens);
                        p.normalize(&Word { src: pre.src, gens })
                    };
                    let from_w = glue(&atom.src(p));
                    let to_w = glue(&atom.tgt(p));
                    match (word_idx.get(&from_w), word_idx.get(&to_w)) {
                        (Some(&f), Some(&t)) => {
                            edge_set.insert((f, t, atom, pre.clone(), post.clone()));
                        }
                        _ => truncated = true,
                    }
                }
            }
        }
        let edges: Vec<Edge> = edge_set
            .into_iter()
            .map(|(from, to, atom, pre, post)| Edge { from, to, atom, pre, post })
            .collect();
        let edge_idx: BTreeMap<(Atom, Word, Word), usize> = edges
            .iter()
            .enumerate()
            .map(|(i, e)| ((e.atom, e.pre.clone(), e.post.clone()), i))
            .collect();

        // Path universe: all paths of at most max_layers edges, generated
        // by length so ids are sorted (length, lexicographic).
        let mut paths: Vec<Path> = Vec::new();
        let mut path_idx: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
        let mut path_capped = false;
        for n in 0..words.len() {
            path_idx.insert((n, vec![]), paths.len());
            paths.push(Path { from: n, to: n, edges: vec![] });
        }
        let mut level_start = 0;
        'levels: for _len in 1..=self.bounds.max_layers {
            let level_end = paths.len();
            for pid in level_start..level_end {
                for (eid, e) in edges.iter().enumerate() {
                    if e.from != paths[pid].to {
                        continue;
                    }
                    if paths.len() >= self.bounds.max_rewrite_steps {
                        path_capped = true;
                        break 'levels;
                    }
                    let mut seq = paths[pid].edges.clone();
                    seq.push(eid);
                    let key = (paths[pid].from, seq.clone());
                    if !path_idx.contains_key(&key) {
                        path_idx.insert(key, paths.len());
                        paths.push(Path { from: paths[pid].from, to: e.to, edges: seq });
                    }
                }
            }
            level_start = level_end;
        }

        // Relation instances.
        let mut inst_set: BTreeSet<(Vec<usize>, Vec<usize>, usize)> = BTreeSet::new();
        let mut inst_skipped = false;
        let lookup_seq = |t: &Term, pre: &Word, post: &Word| -> Option<(usize, Vec<usize>)> {
            let whiskered = p.whisker(pre, t, post).ok()?;
            let from = *word_idx.get(&p.normalize(&whiskered.src))?;
            let mut cur = from;
            let mut seq = Vec::with_capacity(whiskered.layers.len());
            for layer in &whiskered.layers {
                let key = (layer.atom, p.normalize(&layer.pre), p.normalize(&layer.post));
                let &eid = edge_idx.get(&key)?;
                if edges[eid].from != cur {
                    return None;
                }
                seq.push(eid);
                cur = edges[eid].to;
            }
            Some((from, seq))
        };
        // (a) whiskered 2-relations
        for (l, r) in &p.two_relations {
            let s_obj = l.src.src;
            let t_obj = l.src.tgt(p);
            for pre in self.words_between(x, s_obj) {
                for post in self.words_between(t_obj, y) {
                    match (lookup_seq(l, &pre, &post), lookup_seq(r, &pre, &post)) {
                        (Some((fa, a)), Some((_, b))) => {
                            inst_set.insert((a, b, fa));
                        }
                        _ => inst_skipped = true,
                    }
                }
            }
        }
        // (b) inverse cancellation
        for &atom in &atoms {
            if !p.two_gens[atom.gen].invertible {
                continue;
            }
            let inv = Atom { gen: atom.gen, inverted: !atom.inverted };
            let s_obj = p.two_gens[atom.gen].src.src;
            let t_obj = p.two_gens[atom.gen].src.tgt(p);
            for pre in self.words_between(x, s_obj) {
                for post in self.words_between(t_obj, y) {
                    let k1 = (atom, pre.clone(), post.clone());
                    let k2 = (inv, pre.clone(), post.clone());
                    if let (Some(&e1), Some(&e2)) = (edge_idx.get(&k1), edge_idx.get(&k2)) {
                        inst_set.insert((vec![e1, e2], vec![], edges[e1].from));
                    }
                }
            }
        }
        // (c) interchange of disjoint embeddings
        for &a1 in &atoms {
            for &a2 in &atoms {
                let (s1, t1) = (a1.src(p), a1.tgt(p));
                let (s2, t2) = (a2.src(p), a2.tgt(p));
                let (o1s, o1t) = (s1.src, s1.tgt(p));
                let (o2s, o2t) = (s2.src, s2.tgt(p));
                for pre in self.words_between(x, o1s) {
                    for mid in self.words_between(o1t, o2s) {
                        for post in self.words_between(o2t, y) {
                            let join = |a: &Word, b: &Word, c: &Word| {
                                let mut gens = a.gens.clone();
                                gens.extend_from_slice(&b.gens);
                                gens.extend_from_slice(&c.gens);
                                p.normalize(&Word { src: a.src, gens })
                            };
                            let e = |atom: Atom, pr: Word, po: Word| {
                                edge_idx.get(&(atom, pr, po)).copied()
                            };
                            let seq_a = (
                                e(a1, pre.clone(), join(&mid, &s2, &post)),
                                e(a2, join(&pre, &t1, &mid), post.clone()),
                            );
                            let seq_b = (
                                e(a2, join(&pre, &s1, &mid), post.clone()),
                                e(a1, pre.clone(), join(&mid, &t2, &post)),
                            );
                            match (seq_a, seq_b) {
                                ((Some(x1), Some(x2)), (Some(y1), Some(y2))) => {
                                    inst_set.insert((vec![x1, x2], vec![y1, y2], edges[x1].from));
                                }
                                _ => {
                                    // Disjoint embeddings whose joint
                                    // boundary exceeds the cap.
                                    inst_skipped = true;
                                }
                            }
                        }
                    }
                }
            }
        }
        let insts: Vec<RelInst> =
            inst_set.into_iter().map(|(a, b, from)| RelInst { a, b, from }).collect();

        // Congruence sweep: splice every instance at every position of
        // every path. Splices preserve endpoints, so a single pass plus
        // union-find yields the full bounded congruence.
        let node_at = |path: &Path, i: usize| -> usize {
            if i == 0 { path.from } else { edges[path.edges[i - 1]].to }
        };
        let mut uf = UnionFind::new(paths.len());
        let mut steps = 0usize;
        let mut step_capped = false;
        'sweep: for pid in 0..paths.len() {
            for inst in &insts {
                for (lhs, rhs) in [(&inst.a, &inst.b), (&inst.b, &inst.a)] {
                    let plen = paths[pid].edges.len();
                    if lhs.len() > plen || plen - lhs.len() + rhs.len() > self.bounds.max_layers {
                        continue;
                    }
                    for i in 0..=plen - lhs.len() {
                        let matches = if lhs.is_empty() {
                            node_at(&paths[pid], i) == inst.from
                        } else {
                            paths[pid].edges[i..i + lhs.len()] == lhs[..]
                        };
                        if !matches {
                            continue;
                        }
                        if steps >= self.bounds.max_rewrite_steps {
                            step_capped = true;
                            break 'sweep;
                        }
                        steps += 1;
                        let mut seq = Vec::with_capacity(plen - lhs.len() + rhs.len());
                        seq.extend_from_slice(&paths[pid].edges[..i]);
                        seq.extend_from_slice(rhs);
                        seq.extend_from_slice(&paths[pid].edges[i + lhs.len()..]);
                        if let Some(&qid) = path_idx.get(&(paths[pid].from, seq)) {
                            uf.union(pid, qid);
                        }
                    }
                }
            }
        }

        // Congruence closure: replacing a contiguous subpath by its class
        // representative preserves the class of the whole path. The
        // representative is the minimal path id, hence never longer, so the
        // result is always inside the universe. Iterate to fixpoint: each
        // round can expose shorter representatives for further merges.
        loop {
            let mut rep: BTreeMap<usize, usize> = BTreeMap::new();
            for pid in 0..paths.len() {
                let root = uf.find(pid);
                rep.entry(root).or_insert(pid);
            }
            let mut changed = false;
            'cong: for pid in 0..paths.len() {
                let plen = paths[pid].edges.len();
                for i in 0..plen {
                    for j in i + 1..=plen {
                        let sub_from = node_at(&paths[pid], i);
                        let sub = paths[pid].edges[i..j].to_vec();
                        let sub_pid = match path_idx.get(&(sub_from, sub)) {
                            Some(&q) => q,
                            None => continue,
                        };
                        let r = rep[&uf.find(sub_pid)];
                        if r == sub_pid {
                            continue;
                        }
                        if steps >= self.bounds.max_rewrite_steps {
                            step_capped = true;
                            break 'cong;
                        }
                        steps += 1;
                        let mut seq =
                            Vec::with_capacity(plen - (j - i) + paths[r].edges.len());
                        seq.extend_from_slice(&paths[pid].edges[..i]);
                        seq.extend_from_slice(&paths[r].edges);
                        seq.extend_from_slice(&paths[pid].edges[j..]);
                        if let Some(&qid) = path_idx.get(&(paths[pid].from, seq)) {
                            if uf.find(qid) != uf.find(pid) {
                                uf.union(pid, qid);
                                changed = true;
                            }
                        }
                    }
                }
            }
            if !changed || step_capped {
                break;
            }
        }

        let class_of: Vec<usize> = (0..paths.len()).map(|i| uf.find(i)).collect();
        let mut rep_of: BTreeMap<usize, usize> = BTreeMap::new();
        for (pid, &root) in class_of.iter().enumerate() {
            rep_of.entry(root).or_insert(pid);
        }

        // Frontier collapse: every maximal-length path must already be
        // equal to a shorter one, otherwise longer paths could matter.
        let frontier_ok = paths.iter().enumerate().all(|(pid, path)| {
            path.edges.len() < self.bounds.max_layers
                || paths[rep_of[&class_of[pid]]].edges.len() < self.bounds.max_layers
        });

        let exact = self.pres.reachable_acyclic(x)
            && !truncated
            && !path_capped
            && !step_capped
            && !inst_skipped
            && frontier_ok;

        HomSpace {
            src: x,
            tgt: y,
            words,
            word_idx,
            edges,
            edge_idx,
            paths,
            path_idx,
            insts,
            class_of,
            rep_of,
            exact,
        }
    }

    /// Translate a term into an edge path of its hom's pasting graph.
    /// `None` when some boundary word or whisker embedding falls outside
    /// the graph's cap (a bound, not an error).
    fn term_path(&self, hom: &HomSpace, t: &Term) -> Result<Option<(usize, Vec<usize>)>> {
        let p = &self.pres;
        t.check(p)?;
        let from = match hom.node(&p.normalize(&t.src)) {
            Some(n) => n,
            None => return Ok(None),
        };
        let mut cur = from;
        let mut seq = Vec::with_capacity(t.layers.len());
        for layer in &t.layers {
            let key = (layer.atom, p.normalize(&layer.pre), p.normalize(&layer.post));
            let eid = match hom.edge_idx.get(&key) {
                Some(&e) if hom.edges[e].from == cur => e,
                _ => return Ok(None),
            };
            seq.push(eid);
            cur = hom.edges[eid].to;
        }
        Ok(Some((from, seq)))
    }

    /// The class root of an edge path, reducing out-of-universe paths by a
    /// bounded search over relation splices when necessary.
    fn class_of_seq(&self, hom: &HomSpace, from: usize, seq: &[usize]) -> Option<usize> {
        if let Some(&pid) = hom.path_idx.get(&(from, seq.to_vec())) {
            return Some(hom.class_of[pid]);
        }
        // Out-of-universe (too long): search for an equal in-universe path.
        let max_len = seq.len().max(self.bounds.max_layers) + 2;
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut queue: std::collections::VecDeque<Vec<usize>> = Default::default();
        seen.insert(seq.to_vec());
        queue.push_back(seq.to_vec());
        let mut steps = 0usize;
        let node_at = |s: &[usize], i: usize| -> usize {
            if i == 0 { from } else { hom.edges[s[i - 1]].to }
        };
        while let Some(cur) = queue.pop_front() {
            if let Some(&pid) = hom.path_idx.get(&(from, cur.clone())) {
                return Some(hom.class_of[pid]);
            }
            for inst in &hom.insts {
                for (lhs, rhs) in [(&inst.a, &inst.b), (&inst.b, &inst.a)] {
                    if lhs.len() > cur.len() || cur.len() - lhs.len() + rhs.len() > max_len {
                        continue;
                    }
                    for i in 0..=cur.len() - lhs.len() {
                        let matches = if lhs.is_empty() {
                            node_at(&cur, i) == inst.from
                        } else {
                            cur[i..i + lhs.len()] == lhs[..]
                        };
                        if !matches {
                            continue;
                        }
                        steps += 1;
                        if steps > self.bounds.max_rewrite_steps {
                            return None;
                        }
                        let mut next = Vec::with_capacity(cur.len() - lhs.len() + rhs.len());
                        next.extend_from_slice(&cur[..i]);
                        next.extend_from_slice(rhs);
                        next.extend_from_slice(&cur[i + lhs.len()..]);
                        if seen.insert(next.clone()) {
                            queue.push_back(next);
                        }
                    }
                }
            }
        }
        None
    }

    fn term_of_path(&self, hom: &HomSpace, pid: usize) -> Term {
        let path = &hom.paths[pid];
        let layers: Vec<Layer> = path
            .edges
            .iter()
            .map(|&eid| {
                let e = &hom.edges[eid];
                Layer { pre: e.pre.clone(), atom: e.atom, post: e.post.clone() }
            })
            .collect();
        Term { src: hom.words[path.from].clone(), tgt: hom.words[path.to].clone(), layers }
    }

    /// The equality class of a term, when it can be resolved within bounds.
    pub fn class_of_term(&self, t: &Term) -> Result<Option<ClassRef>> {
        let x = t.src.src;
        let y = t.src.tgt(&self.pres);
        let hom = self.hom_space(x, y)?;
        match self.term_path(&hom, t)? {
            Some((from, seq)) => Ok(self
                .class_of_seq(&hom, from, &seq)
                .map(|root| ClassRef { hom: (x, y), root })),
            None => Ok(None),
        }
    }

    /// Canonical representative of a term's class (minimal path).
    pub fn canonical_term(&self, t: &Term) -> Result<Term> {
        let x = t.src.src;
        let y = t.src.tgt(&self.pres);
        let hom = self.hom_space(x, y)?;
        match self.class_of_term(t)? {
            Some(class) => Ok(self.term_of_path(&hom, hom.rep_of[&class.root])),
            None => Err(KernelError::BoundExceeded {
                context: format!("canonicalizing `{}`", self.pres.display_term(t)),
            }),
        }
    }

    /// Representatives of all equality classes of 2-cells f ⇒ g with at
    /// most `max_layers` layers.
    pub fn two_cells(&self, f: &Word, g: &Word) -> Result<(Vec<Term>, Certificate)> {
        let p = &self.pres;
        p.check_word(f)?;
        p.check_word(g)?;
        let (nf, ng) = (p.normalize(f), p.normalize(g));
        if nf.src != ng.src || nf.tgt(p) != ng.tgt(p) {
            return Err(KernelError::BoundaryMismatch {
                detail: format!("`{}` and `{}` are not parallel", p.display_word(f), p.display_word(g)),
            });
        }
        let (x, y) = (nf.src, nf.tgt(p));
        let hom = self.hom_space(x, y)?;
        let cert = if hom.exact { Certificate::Exact } else { Certificate::Bounded };
        let (fi, gi) = match (hom.node(&nf), hom.node(&ng)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Ok((vec![], Certificate::Bounded)),
        };
        let mut reps: BTreeMap<usize, usize> = BTreeMap::new();
        for (pid, path) in hom.paths.iter().enumerate() {
            if path.from == fi && path.to == gi {
                reps.entry(hom.class_of[pid]).or_insert(pid);
            }
        }
        let mut pids: Vec<usize> = reps.into_values().collect();
        pids.sort_unstable();
        Ok((pids.into_iter().map(|pid| self.term_of_path(&hom, pid)).collect(), cert))
    }

    /// Decide whether two parallel terms denote the same 2-cell.
    pub fn equal_two_cells(&self, s: &Term, t: &Term) -> Result<Verdict> {
        let p = &self.pres;
        s.check(p)?;
        t.check(p)?;
        let (ss, st) = (p.normalize(&s.src), p.normalize(&s.tgt));
        let (ts, tt) = (p.normalize(&t.src), p.normalize(&t.tgt));
        if ss != ts || st != tt {
            return Ok(Verdict::fails(
                Certificate::Exact,
                vec![Witness::BoundaryMismatch {
                    left: format!("{} => {}", p.display_word(&ss), p.display_word(&st)),
                    right: format!("{} => {}", p.display_word(&ts), p.display_word(&tt)),
                }],
                self.bounds,
            ));
        }
        let hom = self.hom_space(ss.src, ss.tgt(p))?;
        let cls_s = self.term_path(&hom, s)?.and_then(|(f, seq)| self.class_of_seq(&hom, f, &seq));
        let cls_t = self.term_path(&hom, t)?.and_then(|(f, seq)| self.class_of_seq(&hom, f, &seq));
        match (cls_s, cls_t) {
            (Some(a), Some(b)) if a == b => Ok(Verdict::holds(Certificate::Exact, self.bounds)),
            (Some(_), Some(_)) => {
                let cert = if hom.exact { Certificate::Exact } else { Certificate::Bounded };
                let verdict = Verdict {
                    status: if hom.exact { Status::Fails } else { Status::UnknownAtBound },
                    certificate: cert,
                    witnesses: vec![Witness::Note {
                        text: format!(
                            "`{}` and `{}` lie in distinct equality classes",
                            p.display_term(s),
                            p.display_term(t)
                        ),
                    }],
                    bounds: self.bounds,
                };
                Ok(verdict)
            }
            _ => Ok(Verdict::unknown(
                vec![Witness::Note {
                    text: "term falls outside the bounded pasting graph".into(),
                }],
                self.bounds,
            )),
        }
    }

    /// Does `t` have a two-sided inverse among the enumerated 2-cells?
    pub fn is_invertible(&self, t: &Term) -> Result<Verdict> {
        let p = &self.pres;
        t.check(p)?;
        let f = p.normalize(&t.src);
        let hom = self.hom_space(f.src, f.tgt(p))?;
        let cert = if hom.exact { Certificate::Exact } else { Certificate::Bounded };
        let (from, seq) = match self.term_path(&hom, t)? {
            Some(v) => v,
            None => return Ok(Verdict::unknown(
                vec![Witness::Note { text: "term falls outside the bounded pasting graph".into() }],
                self.bounds,
            )),
        };
        let to = seq.last().map(|&e| hom.edges[e].to).unwrap_or(from);
        let id_from = self.class_of_seq(&hom, from, &[]).expect("empty path is always present");
        let id_to = self.class_of_seq(&hom, to, &[]).expect("empty path is always present");
        let mut inconclusive = false;
        let mut candidates: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (pid, path) in hom.paths.iter().enumerate() {
            if path.from == to && path.to == from {
                candidates.entry(hom.class_of[pid]).or_insert_with(|| path.edges.clone());
            }
        }
        for u in candidates.values() {
            let mut left = seq.clone();
            left.extend_from_slice(u); // t then u : f => f
            let mut right = u.clone();
            right.extend_from_slice(&seq); // u then t : g => g
            match (self.class_of_seq(&hom, from, &left), self.class_of_seq(&hom, to, &right)) {
                (Some(a), Some(b)) => {
                    if a == id_from && b == id_to {
                        return Ok(Verdict::holds(cert, self.bounds));
                    }
                }
                _ => inconclusive = true,
            }
        }
        if inconclusive {
            return Ok(Verdict::unknown(
                vec![Witness::Note { text: "inverse candidates could not be resolved within bounds".into() }],
                self.bounds,
            ));
        }
        Ok(Verdict::fails(
            cert,
            vec![Witness::NotInvertible { cell: p.display_term(t) }],
            self.bounds,
        ))
    }

    /// The hom-category A(X, Y): objects the bounded 1-cell normal forms,
    /// morphisms the 2-cell classes, composition by path concatenation.
    pub fn hom_category(&self, x: ObjId, y: ObjId) -> Result<HomCat> {
        let p = &self.pres;
        let (objects, obj_cert) = self.one_cells(x, y)?;
        let hom = self.hom_space(x, y)?;
        let cert = obj_cert.and(if hom.exact { Certificate::Exact } else { Certificate::Bounded });
        let node_of: Vec<usize> = objects
            .iter()
            .map(|w| hom.node(w).expect("one_cells words are within the graph cap"))
            .collect();
        let obj_of_node: BTreeMap<usize, usize> =
            node_of.iter().enumerate().map(|(i, &n)| (n, i)).collect();
        // One morphism per class between object words, ordered by
        // representative path id for determinism.
        let mut by_class: BTreeMap<usize, (usize, usize, usize)> = BTreeMap::new();
        for (pid, path) in hom.paths.iter().enumerate() {
            if let (Some(&s), Some(&t)) = (obj_of_node.get(&path.from), obj_of_node.get(&path.to)) {
                let entry = by_class.entry(hom.class_of[pid]).or_insert((pid, s, t));
                if pid < entry.0 {
                    *entry = (pid, s, t);
                }
            }
        }
        let mut ordered: Vec<(usize, usize, usize, usize)> =
            by_class.into_iter().map(|(root, (pid, s, t))| (pid, s, t, root)).collect();
        ordered.sort_unstable();
        let morphisms: Vec<HomMor> = ordered
            .into_iter()
            .map(|(pid, s, t, root)| HomMor {
                src: s,
                tgt: t,
                root,
                rep: pid,
                term: self.term_of_path(&hom, pid),
            })
            .collect();
        let mor_of_root: BTreeMap<usize, usize> =
            morphisms.iter().enumerate().map(|(i, m)| (m.root, i)).collect();
        let identity: Vec<usize> = node_of
            .iter()
            .map(|&n| {
                let root = self.class_of_seq(&hom, n, &[]).unwrap();
                mor_of_root[&root]
            })
            .collect();
        let mut compose = BTreeMap::new();
        for (fi, fm) in morphisms.iter().enumerate() {
            for (gi, gm) in morphisms.iter().enumerate() {
                if fm.tgt != gm.src {
                    continue;
                }
                let mut seq = hom.paths[fm.rep].edges.clone();
                seq.extend_from_slice(&hom.paths[gm.rep].edges);
                let root = self
                    .class_of_seq(&hom, hom.paths[fm.rep].from, &seq)
                    .ok_or(KernelError::BoundExceeded {
                        context: "composing 2-cell classes in a hom-category".into(),
                    })?;
                let m = *mor_of_root.get(&root).ok_or(KernelError::BoundExceeded {
                    context: "composite class has no bounded representative".into(),
                })?;
                compose.insert((gi, fi), m);
            }
        }
        let cat = FiniteCategory {
            objects: objects.iter().map(|w| p.display_word(w)).collect(),
            morphisms: morphisms
                .iter()
                .map(|m| FinMor {
                    src: m.src,
                    tgt: m.tgt,
                    label: p.display_term(&m.term),
                })
                .collect(),
            identity,
            compose,
        };
        Ok(HomCat { src: x, tgt: y, objects, morphisms, cat, certificate: cert })
    }
}

/// A morphism of a hom-category: a 2-cell class with its canonical path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomMor {
    pub src: usize,
    pub tgt: usize,
    pub root: usize,
    rep: usize,
    /// Canonical representative term of the class.
    pub term: Term,
}

/// A hom-category together with the word/class bookkeeping needed to map
/// kernel cells onto its indices.
pub struct HomCat {
    pub src: ObjId,
    pub tgt: ObjId,
    pub objects: Vec<Word>,
    pub morphisms: Vec<HomMor>,
    pub cat: FiniteCategory,
    pub certificate: Certificate,
}

impl HomCat {
    pub fn object_index(&self, w: &Word) -> Option<usize> {
        self.objects.iter().position(|o| o == w)
    }

    pub fn morphism_index(&self, class: ClassRef) -> Option<usize> {
        if class.hom != (self.src, self.tgt) {
            return None;
        }
        self.morphisms.iter().position(|m| m.root == class.root)
    }
}

