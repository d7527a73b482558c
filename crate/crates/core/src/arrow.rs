//! Partial isomorphisms between tree-shaped objects over the Cantor space.
//!
//! The object denoted by a [`Tree`] is a disjoint union of Cantor spaces, one
//! per leaf; a point is a leaf address together with an infinite bit-string.
//! An arrow is a finite join of [`BasicTerm`]s, each of which rewrites the
//! prefix `v` of a point in one leaf to the prefix `u` in another leaf,
//! leaving the tail untouched.
//!
//! Arrows are kept in a normal form: the terms are pairwise orthogonal on
//! both sides and no two terms are siblings `(t,u0 ← s,v0)`, `(t,u1 ← s,v1)`
//! that could be merged into `(t,u ← s,v)`. Merging strictly decreases the
//! number of terms and a term has at most one merge partner, so the rewrite
//! is terminating and confluent. Every term of a reduced arrow is a maximal
//! cylinder on which the map is a prefix replacement, which makes the normal
//! form unique and turns extensional equality into structural equality.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::tree::Tree;
use crate::word::{Bits, LeafPath};

/// A cylinder `{(leaf, bits·w)}` in the object denoted by a tree. Also used
/// for finite approximations of points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cylinder {
    pub leaf: LeafPath,
    pub bits: Bits,
}

impl Cylinder {
    pub fn new(leaf: LeafPath, bits: Bits) -> Self {
        Cylinder { leaf, bits }
    }

    /// A cylinder in the single leaf of `S`.
    pub fn at(bits: Bits) -> Self {
        Cylinder {
            leaf: LeafPath::root(),
            bits,
        }
    }

    pub fn comparable(&self, other: &Cylinder) -> bool {
        self.leaf == other.leaf && self.bits.comparable(&other.bits)
    }

    pub fn contains(&self, other: &Cylinder) -> bool {
        self.leaf == other.leaf && self.bits.is_prefix_of(&other.bits)
    }

    fn under(&self, right: bool) -> Cylinder {
        Cylinder {
            leaf: self.leaf.under(right),
            bits: self.bits.clone(),
        }
    }
}

impl fmt::Debug for Cylinder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:\"{}\"", self.leaf, self.bits)
    }
}

/// `(source.leaf, source.bits · w) ↦ (target.leaf, target.bits · w)`.
///
/// Field order makes the derived ordering lexicographic on the source side.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasicTerm {
    pub source: Cylinder,
    pub target: Cylinder,
}

impl BasicTerm {
    pub fn new(target: Cylinder, source: Cylinder) -> Self {
        BasicTerm { source, target }
    }

    /// A term between cylinders of `S`: `u ← v`.
    pub fn untyped(u: Bits, v: Bits) -> Self {
        BasicTerm::new(Cylinder::at(u), Cylinder::at(v))
    }

    pub fn transpose(&self) -> BasicTerm {
        BasicTerm {
            source: self.target.clone(),
            target: self.source.clone(),
        }
    }

    /// The sibling term and the merged parent, when both sides end in the
    /// same bit.
    fn merge_partner(&self) -> Option<(BasicTerm, BasicTerm)> {
        let (a, b) = (self.source.bits.last()?, self.target.bits.last()?);
        if a != b {
            return None;
        }
        let sibling = BasicTerm {
            source: Cylinder::new(self.source.leaf.clone(), self.source.bits.sibling()?),
            target: Cylinder::new(self.target.leaf.clone(), self.target.bits.sibling()?),
        };
        let parent = BasicTerm {
            source: Cylinder::new(self.source.leaf.clone(), self.source.bits.parent()?),
            target: Cylinder::new(self.target.leaf.clone(), self.target.bits.parent()?),
        };
        Some((sibling, parent))
    }
}

impl fmt::Debug for BasicTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} <- {:?})", self.target, self.source)
    }
}

/// Result of evaluating an arrow at a finite prefix of a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Applied {
    Value(Cylinder),
    /// The point lies outside the domain of definition.
    Undefined,
    /// The prefix is too short to decide which term applies.
    NeedsLongerInput,
}

impl Applied {
    pub fn value(self) -> Option<Cylinder> {
        match self {
            Applied::Value(c) => Some(c),
            _ => None,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PrefixArrow {
    dom: Tree,
    cod: Tree,
    terms: Vec<BasicTerm>,
}

fn check_side(mut cyls: Vec<&Cylinder>, tree: &Tree, side: &str) -> Result<()> {
    for c in &cyls {
        if !tree.has_leaf(&c.leaf) {
            return Err(Error::BadLeaf {
                leaf: c.leaf.to_string(),
                tree: tree.clone(),
            });
        }
    }
    cyls.sort();
    // Among sorted cylinders, a prefix sorts immediately before some extension.
    for pair in cyls.windows(2) {
        if pair[0].comparable(pair[1]) {
            return Err(Error::NotOrthogonal(format!(
                "{side} cylinders {:?} and {:?} overlap",
                pair[0], pair[1]
            )));
        }
    }
    Ok(())
}

fn reduce(terms: impl IntoIterator<Item = BasicTerm>) -> Vec<BasicTerm> {
    let mut set: HashSet<BasicTerm> = terms.into_iter().collect();
    let mut stack: Vec<BasicTerm> = set.iter().cloned().collect();
    while let Some(t) = stack.pop() {
        if !set.contains(&t) {
            continue;
        }
        if let Some((sibling, parent)) = t.merge_partner() {
            if set.contains(&sibling) {
                set.remove(&t);
                set.remove(&sibling);
                set.insert(parent.clone());
                stack.push(parent);
            }
        }
    }
    let mut out: Vec<BasicTerm> = set.into_iter().collect();
    out.sort();
    out
}

impl PrefixArrow {
    /// Checks typing and orthogonality, then reduces to normal form.
    pub fn normalize(
        terms: impl IntoIterator<Item = BasicTerm>,
        dom: Tree,
        cod: Tree,
    ) -> Result<PrefixArrow> {
        let terms: Vec<BasicTerm> = terms.into_iter().collect();
        check_side(terms.iter().map(|t| &t.source).collect(), &dom, "source")?;
        check_side(terms.iter().map(|t| &t.target).collect(), &cod, "target")?;
        Ok(PrefixArrow {
            dom,
            cod,
            terms: reduce(terms),
        })
    }

    /// For term sets that are orthogonal by construction.
    fn from_orthogonal(terms: Vec<BasicTerm>, dom: Tree, cod: Tree) -> PrefixArrow {
        debug_assert!(
            check_side(terms.iter().map(|t| &t.source).collect(), &dom, "source").is_ok()
        );
        debug_assert!(
            check_side(terms.iter().map(|t| &t.target).collect(), &cod, "target").is_ok()
        );
        PrefixArrow {
            dom,
            cod,
            terms: reduce(terms),
        }
    }

    /// Arrow `S → S` from `(u, v)` pairs meaning `u ← v`.
    pub fn untyped<'a>(pairs: impl IntoIterator<Item = (&'a str, &'a str)>) -> Result<PrefixArrow> {
        let terms = pairs
            .into_iter()
            .map(|(u, v)| Ok(BasicTerm::untyped(u.parse()?, v.parse()?)))
            .collect::<Result<Vec<_>>>()?;
        PrefixArrow::normalize(terms, Tree::Leaf, Tree::Leaf)
    }

    pub fn zero(dom: Tree, cod: Tree) -> PrefixArrow {
        PrefixArrow {
            dom,
            cod,
            terms: Vec::new(),
        }
    }

    pub fn identity(tree: &Tree) -> PrefixArrow {
        let terms = tree
            .leaves()
            .into_iter()
            .map(|leaf| {
                let c = Cylinder::new(leaf, Bits::empty());
                BasicTerm::new(c.clone(), c)
            })
            .collect();
        PrefixArrow {
            dom: tree.clone(),
            cod: tree.clone(),
            terms,
        }
    }

    pub fn dom(&self) -> &Tree {
        &self.dom
    }

    pub fn cod(&self) -> &Tree {
        &self.cod
    }

    pub fn terms(&self) -> &[BasicTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_endo_of_s(&self) -> bool {
        self.dom.is_leaf() && self.cod.is_leaf()
    }

    pub fn same_type(&self, other: &PrefixArrow) -> bool {
        self.dom == other.dom && self.cod == other.cod
    }

    fn require_same_type(&self, other: &PrefixArrow, context: &str) -> Result<()> {
        if self.dom != other.dom {
            return Err(Error::typing(context, &self.dom, &other.dom));
        }
        if self.cod != other.cod {
            return Err(Error::typing(context, &self.cod, &other.cod));
        }
        Ok(())
    }

    /// `self ∘ f`: first `f`, then `self`.
    pub fn compose(&self, f: &PrefixArrow) -> Result<PrefixArrow> {
        if f.cod != self.dom {
            return Err(Error::typing("composition", &self.dom, &f.cod));
        }
        let mut out = Vec::new();
        for ft in &f.terms {
            for gt in &self.terms {
                if gt.source.leaf != ft.target.leaf {
                    continue;
                }
                let (uf, vg) = (&ft.target.bits, &gt.source.bits);
                if let Some(rest) = uf.strip_prefix(vg) {
                    out.push(BasicTerm::new(
                        Cylinder::new(gt.target.leaf.clone(), gt.target.bits.concat(&rest)),
                        ft.source.clone(),
                    ));
                } else if let Some(rest) = vg.strip_prefix(uf) {
                    out.push(BasicTerm::new(
                        gt.target.clone(),
                        Cylinder::new(ft.source.leaf.clone(), ft.source.bits.concat(&rest)),
                    ));
                }
            }
        }
        Ok(PrefixArrow::from_orthogonal(
            out,
            f.dom.clone(),
            self.cod.clone(),
        ))
    }

    /// The generalised inverse: the relational converse.
    pub fn dagger(&self) -> PrefixArrow {
        let mut terms: Vec<BasicTerm> = self.terms.iter().map(BasicTerm::transpose).collect();
        terms.sort();
        PrefixArrow {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            terms,
        }
    }

    /// Disjoint union `self ⊎ g`: `self` under `L`, `g` under `R`.
    pub fn tensor(&self, g: &PrefixArrow) -> PrefixArrow {
        let mut terms: Vec<BasicTerm> = self
            .terms
            .iter()
            .map(|t| BasicTerm::new(t.target.under(false), t.source.under(false)))
            .chain(
                g.terms
                    .iter()
                    .map(|t| BasicTerm::new(t.target.under(true), t.source.under(true))),
            )
            .collect();
        terms.sort();
        PrefixArrow {
            dom: Tree::node(self.dom.clone(), g.dom.clone()),
            cod: Tree::node(self.cod.clone(), g.cod.clone()),
            terms,
        }
    }

    /// `g†f = 0` and `gf† = 0`.
    pub fn orthogonal(&self, g: &PrefixArrow) -> Result<bool> {
        self.require_same_type(g, "orthogonality")?;
        Ok(g.dagger().compose(self)?.is_zero() && g.compose(&self.dagger())?.is_zero())
    }

    pub fn join(&self, g: &PrefixArrow) -> Result<PrefixArrow> {
        if !self.orthogonal(g)? {
            return Err(Error::JoinUndefined(format!(
                "{} and {} are not orthogonal",
                self, g
            )));
        }
        let terms = self.terms.iter().chain(&g.terms).cloned().collect();
        Ok(PrefixArrow::from_orthogonal(
            terms,
            self.dom.clone(),
            self.cod.clone(),
        ))
    }

    /// Join of a family of pairwise-orthogonal arrows of the given type.
    pub fn join_all<'a>(
        arrows: impl IntoIterator<Item = &'a PrefixArrow>,
        dom: &Tree,
        cod: &Tree,
    ) -> Result<PrefixArrow> {
        let mut acc = PrefixArrow::zero(dom.clone(), cod.clone());
        for a in arrows {
            acc = acc.join(a)?;
        }
        Ok(acc)
    }

    /// The natural partial order: `self = g ∘ self† ∘ self`.
    pub fn natural_leq(&self, g: &PrefixArrow) -> Result<bool> {
        self.require_same_type(g, "natural order")?;
        Ok(&g.compose(&self.dagger().compose(self)?)? == self)
    }

    /// `self†∘self = 1` and `self∘self† = 1`.
    pub fn is_unitary(&self) -> bool {
        let left = self.dagger().compose(self).expect("dagger is composable");
        let right = self.compose(&self.dagger()).expect("dagger is composable");
        left == PrefixArrow::identity(&self.dom) && right == PrefixArrow::identity(&self.cod)
    }

    /// Evaluate at the finite prefix `point` of a point of the domain.
    pub fn apply(&self, point: &Cylinder) -> Applied {
        let mut short = false;
        for t in &self.terms {
            if t.source.leaf != point.leaf {
                continue;
            }
            if let Some(rest) = point.bits.strip_prefix(&t.source.bits) {
                return Applied::Value(Cylinder::new(
                    t.target.leaf.clone(),
                    t.target.bits.concat(&rest),
                ));
            }
            if point.bits.is_prefix_of(&t.source.bits) {
                short = true;
            }
        }
        if short {
            Applied::NeedsLongerInput
        } else {
            Applied::Undefined
        }
    }

    /// The partial identity on the domain of definition.
    pub fn domain_idempotent(&self) -> PrefixArrow {
        self.dagger().compose(self).expect("dagger is composable")
    }

    /// Length of the longest prefix any term reads or writes.
    pub fn max_depth(&self) -> usize {
        self.terms
            .iter()
            .map(|t| t.source.bits.len().max(t.target.bits.len()))
            .max()
            .unwrap_or(0)
    }

    /// Human-readable term list, `"u"<-"v"` per term, with `@ T<-S` leaf
    /// annotations when either side is not the root leaf.
    pub fn term_list(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let items: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                if t.source.leaf.is_root() && t.target.leaf.is_root() {
                    format!("\"{}\"<-\"{}\"", t.target.bits, t.source.bits)
                } else {
                    format!(
                        "\"{}\"<-\"{}\" @ \"{}\"<-\"{}\"",
                        t.target.bits, t.source.bits, t.target.leaf, t.source.leaf
                    )
                }
            })
            .collect();
        if items.len() == 1 {
            items.into_iter().next().unwrap()
        } else {
            format!("{{{}}}", items.join(", "))
        }
    }
}

impl fmt::Display for PrefixArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.term_list())
    }
}

impl fmt::Debug for PrefixArrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} -> {}] {}", self.dom, self.cod, self.term_list())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arrow(pairs: &[(&str, &str)]) -> PrefixArrow {
        PrefixArrow::untyped(pairs.iter().copied()).unwrap()
    }

    fn one() -> PrefixArrow {
        PrefixArrow::identity(&Tree::Leaf)
    }

    fn pt(s: &str) -> Cylinder {
        Cylinder::at(s.parse().unwrap())
    }

    #[test]
    fn sibling_merge() {
        assert_eq!(arrow(&[("0", "0"), ("1", "1")]), one());
        assert_eq!(arrow(&[("00", "00"), ("01", "01"), ("1", "1")]), one());
        assert_eq!(arrow(&[("", "0")]).terms().len(), 1);
        // A swap of siblings is not a prefix replacement.
        assert_eq!(arrow(&[("1", "0"), ("0", "1")]).terms().len(), 2);
    }

    #[test]
    fn rejects_overlap() {
        let err = PrefixArrow::untyped([("", "0"), ("", "1")]).unwrap_err();
        assert!(matches!(err, Error::NotOrthogonal(_)));
        let err = PrefixArrow::untyped([("0", "0"), ("1", "01")]).unwrap_err();
        assert!(matches!(err, Error::NotOrthogonal(_)));
    }

    #[test]
    fn rejects_bad_leaf() {
        let t = BasicTerm::new(Cylinder::new("L".parse().unwrap(), Bits::empty()), pt(""));
        assert!(matches!(
            PrefixArrow::normalize([t], Tree::Leaf, Tree::Leaf),
            Err(Error::BadLeaf { .. })
        ));
    }

    #[test]
    fn polycyclic_relations() {
        let p = arrow(&[("", "0")]);
        let q = arrow(&[("", "1")]);
        assert_eq!(p.compose(&p.dagger()).unwrap(), one());
        assert!(p.compose(&q.dagger()).unwrap().is_zero());
        assert_eq!(q.dagger().compose(&p).unwrap(), arrow(&[("1", "0")]));
    }

    #[test]
    fn dagger_examples() {
        assert_eq!(arrow(&[("", "0")]).dagger(), arrow(&[("0", "")]));
        assert_eq!(one().dagger(), one());
        let swap = arrow(&[("1", "0"), ("0", "1")]);
        assert_eq!(swap.dagger(), swap);
    }

    #[test]
    fn tensor_examples() {
        let p = arrow(&[("", "0")]);
        let q = arrow(&[("", "1")]);
        assert_eq!(one().tensor(&one()), PrefixArrow::identity(&Tree::pair()));
        let zero = PrefixArrow::zero(Tree::Leaf, Tree::Leaf);
        let pz = p.tensor(&zero);
        assert_eq!(pz.terms().len(), 1);
        assert_eq!(format!("{pz}"), "\"\"<-\"0\" @ \"L\"<-\"L\"");
        let pq = p.tensor(&q);
        assert_eq!(
            format!("{pq}"),
            "{\"\"<-\"0\" @ \"L\"<-\"L\", \"\"<-\"1\" @ \"R\"<-\"R\"}"
        );
    }

    #[test]
    fn joins() {
        let a = arrow(&[("1", "0")]);
        let b = arrow(&[("0", "1")]);
        assert_eq!(a.join(&b).unwrap(), arrow(&[("1", "0"), ("0", "1")]));
        let p = arrow(&[("", "0")]);
        let q = arrow(&[("", "1")]);
        assert!(!p.orthogonal(&q).unwrap());
        assert!(matches!(p.join(&q), Err(Error::JoinUndefined(_))));
        let zero = PrefixArrow::zero(Tree::Leaf, Tree::Leaf);
        assert_eq!(a.join(&zero).unwrap(), a);
    }

    #[test]
    fn order() {
        let f = arrow(&[("00", "10")]);
        let g = arrow(&[("0", "1")]);
        assert!(f.natural_leq(&g).unwrap());
        assert!(!g.natural_leq(&f).unwrap());
        assert!(g.natural_leq(&g).unwrap());
    }

    #[test]
    fn apply_examples() {
        let tau = arrow(&[("00", "0"), ("01", "10"), ("1", "11")]);
        assert_eq!(tau.apply(&pt("10110")), Applied::Value(pt("01110")));
        assert_eq!(one().apply(&pt("0110")), Applied::Value(pt("0110")));
        let p = arrow(&[("", "0")]);
        assert_eq!(p.apply(&pt("1101")), Applied::Undefined);
        assert_eq!(tau.apply(&pt("1")), Applied::NeedsLongerInput);
    }

    #[test]
    fn unitarity() {
        assert!(one().is_unitary());
        assert!(!arrow(&[("", "0")]).is_unitary());
        assert!(arrow(&[("00", "0"), ("01", "10"), ("1", "11")]).is_unitary());
    }

    #[test]
    fn composition_type_mismatch() {
        let id2 = PrefixArrow::identity(&Tree::pair());
        assert!(matches!(one().compose(&id2), Err(Error::Typing { .. })));
    }
}
