//! Seeded generators for arrows, structures, trees and canonical diagrams.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::arrow::{BasicTerm, Cylinder, PrefixArrow};
use crate::coherence::{Diagram, Edge, Node, Term};
use crate::selfsim::SelfSimilar;
use crate::tree::Tree;
use crate::word::Bits;

/// Depth bound for the code trees behind random structures.
pub const CODE_DEPTH: usize = 4;

fn tree_code(t: &Tree) -> Vec<Bits> {
    t.leaves()
        .into_iter()
        .map(|p| Bits::from_bools(p.steps().iter().copied()))
        .collect()
}

/// A complete prefix code with `k` words, uniform over the code trees of
/// depth at most [`CODE_DEPTH`].
pub fn complete_code(rng: &mut impl Rng, k: usize) -> Vec<Bits> {
    let shapes: Vec<Tree> = Tree::all_with_leaves(k)
        .into_iter()
        .filter(|t| t.depth() <= CODE_DEPTH)
        .collect();
    let shape = shapes.choose(rng).expect("k ≤ 16 admits a shallow tree");
    tree_code(shape)
}

/// A bijection between two random complete codes of a common size in `2..=8`.
pub fn unitary(rng: &mut impl Rng) -> PrefixArrow {
    let k = rng.gen_range(2..=8);
    let source = complete_code(rng, k);
    let mut target = complete_code(rng, k);
    target.shuffle(rng);
    let terms = target
        .into_iter()
        .zip(source)
        .map(|(u, v)| BasicTerm::untyped(u, v));
    PrefixArrow::normalize(terms, Tree::Leaf, Tree::Leaf).expect("complete codes")
}

pub fn self_similar(rng: &mut impl Rng) -> SelfSimilar {
    SelfSimilar::from_unitary(&unitary(rng), &SelfSimilar::standard()).expect("unitary")
}

/// A partial bijection between subsets of two random complete codes.
pub fn partial_arrow(rng: &mut impl Rng) -> PrefixArrow {
    let (k, m) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
    let source = complete_code(rng, k);
    let mut target = complete_code(rng, m);
    target.shuffle(rng);
    let terms = target
        .into_iter()
        .zip(source)
        .filter(|_| rng.gen_bool(0.75))
        .map(|(u, v)| BasicTerm::untyped(u, v));
    PrefixArrow::normalize(terms, Tree::Leaf, Tree::Leaf).expect("prefix codes")
}

/// A uniformly chosen tree shape with `n` leaves.
pub fn tree(rng: &mut impl Rng, n: usize) -> Tree {
    Tree::all_with_leaves(n).choose(rng).expect("n ≥ 1").clone()
}

/// A random point prefix of the given length in a random leaf of `t`.
pub fn point(rng: &mut impl Rng, t: &Tree, len: usize) -> Cylinder {
    let leaf = t.leaves().choose(rng).expect("trees have leaves").clone();
    Cylinder::new(leaf, Bits::from_bools((0..len).map(|_| rng.gen_bool(0.5))))
}

/// `local` acting on the subtree at `path`, identities elsewhere.
fn in_context(t: &Tree, path: &[bool], local: Term) -> Term {
    match (path.split_first(), t.children()) {
        (None, _) => local,
        (Some((&right, rest)), Some((a, b))) => {
            if right {
                Term::tensor(Term::Id(a.clone()), in_context(b, rest, local))
            } else {
                Term::tensor(in_context(a, rest, local), Term::Id(b.clone()))
            }
        }
        (Some(_), None) => unreachable!("path stays inside the tree"),
    }
}

/// One associator, inverse associator or symmetry applied somewhere in `t`,
/// or `None` when `t` is a single leaf.
pub fn canonical_step(rng: &mut impl Rng, t: &Tree) -> Option<(Term, Tree)> {
    let mut sites = Vec::new();
    collect_sites(t, &mut Vec::new(), &mut sites);
    let (path, sub) = sites.choose(rng)?.clone();
    let (a, b) = sub.children().expect("sites are binary nodes");
    let mut options = vec![Term::Sym(a.clone(), b.clone())];
    if let Some((b1, b2)) = b.children() {
        options.push(Term::Assoc(a.clone(), b1.clone(), b2.clone()));
    }
    if let Some((a1, a2)) = a.children() {
        options.push(Term::AssocInv(a1.clone(), a2.clone(), b.clone()));
    }
    let local = options.choose(rng).expect("non-empty").clone();
    let term = in_context(t, &path, local);
    let (_, cod) = term.signature().expect("well typed by construction");
    Some((term, cod))
}

fn collect_sites(t: &Tree, at: &mut Vec<bool>, out: &mut Vec<(Vec<bool>, Tree)>) {
    if let Some((a, b)) = t.children() {
        out.push((at.clone(), t.clone()));
        at.push(false);
        collect_sites(a, at, out);
        at.pop();
        at.push(true);
        collect_sites(b, at, out);
        at.pop();
    }
}

/// A walk of `steps` canonical steps from `t`, as single-step terms.
pub fn canonical_walk(rng: &mut impl Rng, t: &Tree, steps: usize) -> Vec<(Term, Tree)> {
    let mut out = Vec::new();
    let mut cur = t.clone();
    for _ in 0..steps {
        match canonical_step(rng, &cur) {
            Some((term, cod)) => {
                cur = cod.clone();
                out.push((term, cod));
            }
            None => break,
        }
    }
    out
}

/// Associator steps rebracketing `t` into the right comb.
pub fn to_right_comb(t: &Tree) -> Vec<(Term, Tree)> {
    let mut out = Vec::new();
    rebracket(t, &mut Vec::new(), t.clone(), &mut out);
    out
}

fn rebracket(
    sub: &Tree,
    path: &mut Vec<bool>,
    mut whole: Tree,
    out: &mut Vec<(Term, Tree)>,
) -> Tree {
    let Some((a, b)) = sub.children() else {
        return whole;
    };
    if let Some((a1, a2)) = a.children() {
        let local = Term::AssocInv(a1.clone(), a2.clone(), b.clone());
        let term = in_context(&whole, path, local);
        whole = term.signature().expect("well typed").1;
        out.push((term, whole.clone()));
        let next = whole
            .subtree(&path_of(path))
            .expect("site persists")
            .clone();
        return rebracket(&next, path, whole, out);
    }
    path.push(true);
    let whole = rebracket(b, path, whole, out);
    path.pop();
    whole
}

fn path_of(steps: &[bool]) -> crate::word::LeafPath {
    let mut p = crate::word::LeafPath::root();
    for &s in steps {
        p = p.child(s);
    }
    p
}

/// A diagram with two canonical paths from a random tree to the right comb,
/// one edge per step. Roughly half the time the second path first retraces
/// a detour and then follows the first, so the assertion holds.
pub fn canonical_diagram(rng: &mut impl Rng, max_leaves: usize) -> Diagram {
    let n = rng.gen_range(1..=max_leaves);
    let start = tree(rng, n);
    let (la, lb) = (rng.gen_range(0..=4), rng.gen_range(0..=3));
    let walk_a = canonical_walk(rng, &start, la);
    let detour = canonical_walk(rng, &start, lb);
    let mut walk_b = if rng.gen_bool(0.5) {
        let mut back: Vec<(Term, Tree)> = Vec::new();
        let mut trees: Vec<Tree> = vec![start.clone()];
        trees.extend(detour.iter().map(|(_, t)| t.clone()));
        for (i, (term, _)) in detour.iter().enumerate().rev() {
            back.push((Term::dagger(term.clone()), trees[i].clone()));
        }
        let mut path = detour.clone();
        path.extend(back);
        path.extend(walk_a.iter().cloned());
        path
    } else {
        detour
    };
    let mut walk_a = walk_a;
    let end_a = walk_a.last().map_or(start.clone(), |(_, t)| t.clone());
    walk_a.extend(to_right_comb(&end_a));
    let end_b = walk_b.last().map_or(start.clone(), |(_, t)| t.clone());
    walk_b.extend(to_right_comb(&end_b));
    for walk in [&mut walk_a, &mut walk_b] {
        if walk.is_empty() {
            walk.push((Term::Id(start.clone()), start.clone()));
        }
    }

    let mut nodes = vec![
        Node {
            id: "start".into(),
            tree: Some(start),
        },
        Node {
            id: "end".into(),
            tree: Some(Tree::right_comb(n)),
        },
    ];
    let mut edges = Vec::new();
    let mut paths = Vec::new();
    for (w, walk) in [walk_a, walk_b].into_iter().enumerate() {
        let mut path = Vec::new();
        let mut from = 0;
        let last = walk.len() - 1;
        for (i, (term, cod)) in walk.into_iter().enumerate() {
            let to = if i == last {
                1
            } else {
                nodes.push(Node {
                    id: format!("p{w}n{i}"),
                    tree: Some(cod),
                });
                nodes.len() - 1
            };
            path.push(edges.len());
            edges.push(Edge {
                src: from,
                dst: to,
                term,
                id: None,
            });
            from = to;
        }
        paths.push(path);
    }
    let b = paths.pop().expect("two paths");
    let a = paths.pop().expect("two paths");
    Diagram {
        nodes,
        edges,
        asserts: vec![(a, b)],
    }
}

/// The syntactic inverse of a canonical term.
fn inverse(t: &Term) -> Term {
    match t {
        Term::Assoc(a, b, c) => Term::AssocInv(a.clone(), b.clone(), c.clone()),
        Term::AssocInv(a, b, c) => Term::Assoc(a.clone(), b.clone(), c.clone()),
        Term::Sym(a, b) => Term::Sym(b.clone(), a.clone()),
        Term::Tensor(a, b) => Term::tensor(inverse(a), inverse(b)),
        Term::Compose(g, f) => Term::compose(inverse(f), inverse(g)),
        Term::Dagger(f) => (**f).clone(),
        other => other.clone(),
    }
}

/// A random canonical term with domain `t`, composed of up to `steps` steps,
/// some written as daggers of their inverses.
pub fn canonical_term(rng: &mut impl Rng, t: &Tree, steps: usize) -> (Term, Tree) {
    let mut term = Term::Id(t.clone());
    let mut cod = t.clone();
    for (step, c) in canonical_walk(rng, t, steps) {
        let step = if rng.gen_bool(0.3) {
            Term::dagger(inverse(&step))
        } else {
            step
        };
        term = Term::compose(step, term);
        cod = c;
    }
    (term, cod)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coherence::check_free;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn codes_are_complete() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for k in 1..=8 {
            let code = complete_code(&mut rng, k);
            assert_eq!(code.len(), k);
            assert!(code.iter().all(|w| w.len() <= CODE_DEPTH));
            let kraft: f64 = code.iter().map(|w| 0.5f64.powi(w.len() as i32)).sum();
            assert_eq!(kraft, 1.0);
        }
    }

    #[test]
    fn unitaries_and_structures() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            assert!(unitary(&mut rng).is_unitary());
            self_similar(&mut rng);
            partial_arrow(&mut rng);
        }
    }

    #[test]
    fn right_comb_connector() {
        for n in 1..=5 {
            for t in Tree::all_with_leaves(n) {
                let steps = to_right_comb(&t);
                let end = steps.last().map_or(t.clone(), |(_, c)| c.clone());
                assert_eq!(end, Tree::right_comb(n), "{t}");
            }
        }
    }

    #[test]
    fn diagrams_are_well_typed() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut commuting = 0;
        for _ in 0..100 {
            let d = canonical_diagram(&mut rng, 5);
            d.check_typing().unwrap();
            if check_free(&d).unwrap().verdict() == crate::coherence::Verdict::Commutes {
                commuting += 1;
            }
        }
        assert!(commuting > 30 && commuting < 100, "{commuting}");
    }
}
