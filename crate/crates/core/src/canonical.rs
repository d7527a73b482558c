//! Canonical isomorphisms and the projection / inclusion arrows of the
//! disjoint-union tensor, realised as leaf relabellings.

use crate::arrow::{BasicTerm, Cylinder, PrefixArrow};
use crate::error::{Error, Result};
use crate::tree::Tree;
use crate::word::{Bits, LeafPath};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CanonicalKind {
    Id,
    Assoc,
    AssocInv,
    Sym,
    IotaL,
    IotaR,
    PiL,
    PiR,
}

/// Relabels each leaf `prefix_from · x` of `sub` to `prefix_to · x`.
fn relabel(sub: &Tree, from: &str, to: &str, out: &mut Vec<BasicTerm>) {
    let from: LeafPath = from.parse().expect("static path");
    let to: LeafPath = to.parse().expect("static path");
    for leaf in sub.leaves() {
        out.push(BasicTerm::new(
            Cylinder::new(leaf.under_path(&to), Bits::empty()),
            Cylinder::new(leaf.under_path(&from), Bits::empty()),
        ));
    }
}

fn build(terms: Vec<BasicTerm>, dom: Tree, cod: Tree) -> PrefixArrow {
    PrefixArrow::normalize(terms, dom, cod).expect("leaf relabellings are bijective")
}

/// `τ_{A,B,C} : A□(B□C) → (A□B)□C`.
pub fn assoc(a: &Tree, b: &Tree, c: &Tree) -> PrefixArrow {
    let mut terms = Vec::new();
    relabel(a, "L", "LL", &mut terms);
    relabel(b, "RL", "LR", &mut terms);
    relabel(c, "RR", "R", &mut terms);
    build(
        terms,
        Tree::node(a.clone(), Tree::node(b.clone(), c.clone())),
        Tree::node(Tree::node(a.clone(), b.clone()), c.clone()),
    )
}

pub fn assoc_inv(a: &Tree, b: &Tree, c: &Tree) -> PrefixArrow {
    assoc(a, b, c).dagger()
}

/// `σ_{A,B} : A□B → B□A`.
pub fn sym(a: &Tree, b: &Tree) -> PrefixArrow {
    let mut terms = Vec::new();
    relabel(a, "L", "R", &mut terms);
    relabel(b, "R", "L", &mut terms);
    build(
        terms,
        Tree::node(a.clone(), b.clone()),
        Tree::node(b.clone(), a.clone()),
    )
}

/// `ι_l : X → X□Y`.
pub fn iota_l(x: &Tree, y: &Tree) -> PrefixArrow {
    let mut terms = Vec::new();
    relabel(x, "", "L", &mut terms);
    build(terms, x.clone(), Tree::node(x.clone(), y.clone()))
}

/// `ι_r : Y → X□Y`.
pub fn iota_r(x: &Tree, y: &Tree) -> PrefixArrow {
    let mut terms = Vec::new();
    relabel(y, "", "R", &mut terms);
    build(terms, y.clone(), Tree::node(x.clone(), y.clone()))
}

/// `π_l : X□Y → X`.
pub fn pi_l(x: &Tree, y: &Tree) -> PrefixArrow {
    iota_l(x, y).dagger()
}

/// `π_r : X□Y → Y`.
pub fn pi_r(x: &Tree, y: &Tree) -> PrefixArrow {
    iota_r(x, y).dagger()
}

/// Dispatch on kind; checks the number of tree arguments.
pub fn canonical(kind: CanonicalKind, trees: &[Tree]) -> Result<PrefixArrow> {
    let arity = match kind {
        CanonicalKind::Id => 1,
        CanonicalKind::Assoc | CanonicalKind::AssocInv => 3,
        _ => 2,
    };
    if trees.len() != arity {
        return Err(Error::Invalid(format!(
            "{kind:?} takes {arity} trees, got {}",
            trees.len()
        )));
    }
    let t = trees;
    Ok(match kind {
        CanonicalKind::Id => PrefixArrow::identity(&t[0]),
        CanonicalKind::Assoc => assoc(&t[0], &t[1], &t[2]),
        CanonicalKind::AssocInv => assoc_inv(&t[0], &t[1], &t[2]),
        CanonicalKind::Sym => sym(&t[0], &t[1]),
        CanonicalKind::IotaL => iota_l(&t[0], &t[1]),
        CanonicalKind::IotaR => iota_r(&t[0], &t[1]),
        CanonicalKind::PiL => pi_l(&t[0], &t[1]),
        CanonicalKind::PiR => pi_r(&t[0], &t[1]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrow::Applied;

    fn s() -> Tree {
        Tree::Leaf
    }

    fn at(leaf: &str, bits: &str) -> Cylinder {
        Cylinder::new(leaf.parse().unwrap(), bits.parse().unwrap())
    }

    #[test]
    fn symmetry_swaps_roots() {
        let sigma = sym(&s(), &s());
        assert_eq!(sigma.apply(&at("L", "01")), Applied::Value(at("R", "01")));
        assert_eq!(sigma.apply(&at("R", "1")), Applied::Value(at("L", "1")));
        assert_eq!(sigma.terms().len(), 2);
    }

    #[test]
    fn associator_relabels() {
        let tau = assoc(&s(), &s(), &s());
        assert_eq!(tau.apply(&at("L", "10")), Applied::Value(at("LL", "10")));
        assert_eq!(tau.apply(&at("RL", "")), Applied::Value(at("LR", "")));
        assert_eq!(tau.apply(&at("RR", "1")), Applied::Value(at("R", "1")));
        assert!(tau.is_unitary());
    }

    #[test]
    fn projections_and_inclusions() {
        let one = PrefixArrow::identity(&s());
        assert_eq!(pi_l(&s(), &s()).compose(&iota_l(&s(), &s())).unwrap(), one);
        assert_eq!(pi_r(&s(), &s()).compose(&iota_r(&s(), &s())).unwrap(), one);
        assert!(pi_r(&s(), &s())
            .compose(&iota_l(&s(), &s()))
            .unwrap()
            .is_zero());
        assert!(pi_l(&s(), &s())
            .compose(&iota_r(&s(), &s()))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn arity_checked() {
        assert!(canonical(CanonicalKind::Assoc, &[s(), s()]).is_err());
        assert!(canonical(CanonicalKind::Sym, &[s(), s()]).is_ok());
    }
}
