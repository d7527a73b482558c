#![allow(dead_code)]

use piso::coherence::{Diagram, Edge, Node, Term};
use piso::random;
use piso::{Applied, Bits, Cylinder, PrefixArrow, SelfSimilar, Tree};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn arrow(pairs: &[(&str, &str)]) -> PrefixArrow {
    PrefixArrow::untyped(pairs.iter().copied()).unwrap()
}

pub fn tree(src: &str) -> Tree {
    src.parse().unwrap()
}

/// Standard, swap, then `n` seeded random structures.
pub fn structures(seed: u64, n: usize) -> Vec<SelfSimilar> {
    let mut r = rng(seed);
    let mut out = vec![SelfSimilar::standard(), SelfSimilar::swap()];
    out.extend((0..n).map(|_| random::self_similar(&mut r)));
    out
}

/// Applies `factors` one after another, first factor first, using only
/// `PrefixArrow::apply`.
pub fn apply_chain(factors: &[&PrefixArrow], x: &Cylinder) -> Applied {
    let mut cur = x.clone();
    for f in factors {
        match f.apply(&cur) {
            Applied::Value(y) => cur = y,
            other => return other,
        }
    }
    Applied::Value(cur)
}

/// Every point prefix of length ≤ `max_len` in every leaf of `t`.
pub fn points(t: &Tree, max_len: usize) -> Vec<Cylinder> {
    let mut out = Vec::new();
    for leaf in t.leaves() {
        for len in 0..=max_len {
            for bits in Bits::all_of_length(len) {
                out.push(Cylinder::new(leaf.clone(), bits));
            }
        }
    }
    out
}

/// Compares `f` with the pointwise composite of `factors` on all point
/// prefixes up to `max_len`. Where the chain needs a longer input the
/// point is skipped; at `max_len` every point must be decided.
pub fn agrees_pointwise(
    f: &PrefixArrow,
    factors: &[&PrefixArrow],
    max_len: usize,
) -> Result<(), String> {
    for x in points(f.dom(), max_len) {
        let chain = apply_chain(factors, &x);
        let direct = f.apply(&x);
        match (&chain, &direct) {
            (Applied::NeedsLongerInput, _) if x.bits.len() < max_len => continue,
            (Applied::NeedsLongerInput, _) => {
                return Err(format!("chain undecided at {x:?}; raise max_len"));
            }
            (Applied::Value(_), Applied::NeedsLongerInput) if x.bits.len() < max_len => continue,
            _ if chain == direct => continue,
            _ => {
                return Err(format!(
                    "at {x:?}: composite gives {direct:?}, chain gives {chain:?}"
                ))
            }
        }
    }
    Ok(())
}

/// Pentagon for trees `a, b, c, d`.
pub fn pentagon(a: &Tree, b: &Tree, c: &Tree, d: &Tree) -> Diagram {
    let n = |x: &Tree, y: &Tree| Tree::node(x.clone(), y.clone());
    let trees = [
        n(a, &n(b, &n(c, d))),
        n(&n(a, b), &n(c, d)),
        n(&n(&n(a, b), c), d),
        n(a, &n(&n(b, c), d)),
        n(&n(a, &n(b, c)), d),
    ];
    let terms = [
        (0, 1, Term::Assoc(a.clone(), b.clone(), n(c, d))),
        (1, 2, Term::Assoc(n(a, b), c.clone(), d.clone())),
        (
            0,
            3,
            Term::tensor(
                Term::Id(a.clone()),
                Term::Assoc(b.clone(), c.clone(), d.clone()),
            ),
        ),
        (3, 4, Term::Assoc(a.clone(), n(b, c), d.clone())),
        (
            4,
            2,
            Term::tensor(
                Term::Assoc(a.clone(), b.clone(), c.clone()),
                Term::Id(d.clone()),
            ),
        ),
    ];
    build(&trees, terms.into_iter(), vec![(vec![0, 1], vec![2, 3, 4])])
}

/// Hexagon `τ_{C,A,B} σ_{A□B,C} τ_{A,B,C} = (σ_{A,C}⊗1) τ_{A,C,B} (1⊗σ_{B,C})`.
pub fn hexagon(a: &Tree, b: &Tree, c: &Tree) -> Diagram {
    let n = |x: &Tree, y: &Tree| Tree::node(x.clone(), y.clone());
    let trees = [
        n(a, &n(b, c)),
        n(&n(a, b), c),
        n(c, &n(a, b)),
        n(&n(c, a), b),
        n(a, &n(c, b)),
        n(&n(a, c), b),
    ];
    let terms = [
        (0, 1, Term::Assoc(a.clone(), b.clone(), c.clone())),
        (1, 2, Term::Sym(n(a, b), c.clone())),
        (2, 3, Term::Assoc(c.clone(), a.clone(), b.clone())),
        (
            0,
            4,
            Term::tensor(Term::Id(a.clone()), Term::Sym(b.clone(), c.clone())),
        ),
        (4, 5, Term::Assoc(a.clone(), c.clone(), b.clone())),
        (
            5,
            3,
            Term::tensor(Term::Sym(a.clone(), c.clone()), Term::Id(b.clone())),
        ),
    ];
    build(
        &trees,
        terms.into_iter(),
        vec![(vec![0, 1, 2], vec![3, 4, 5])],
    )
}

fn build(
    trees: &[Tree],
    terms: impl Iterator<Item = (usize, usize, Term)>,
    asserts: Vec<(Vec<usize>, Vec<usize>)>,
) -> Diagram {
    Diagram {
        nodes: trees
            .iter()
            .enumerate()
            .map(|(i, t)| Node {
                id: format!("n{i}"),
                tree: Some(t.clone()),
            })
            .collect(),
        edges: terms
            .map(|(src, dst, term)| Edge {
                src,
                dst,
                term,
                id: None,
            })
            .collect(),
        asserts,
    }
}

/// All `k`-tuples of trees with at most `max_leaves` leaves in total.
pub fn tree_tuples(k: usize, max_leaves: usize) -> Vec<Vec<Tree>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=max_leaves.saturating_sub(k - 1) {
        for t in Tree::all_with_leaves(first) {
            for mut rest in tree_tuples(k - 1, max_leaves - first) {
                rest.insert(0, t.clone());
                out.push(rest);
            }
        }
    }
    out
}

pub fn data(name: &str) -> String {
    let path = format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}
