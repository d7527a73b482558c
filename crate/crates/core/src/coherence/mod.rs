//! Commutativity of diagrams built from canonical arrows, internal
//! operations of a self-similar structure, and their daggers.
//!
//! Three procedures are offered. [`check_free`] decides equality of
//! canonical composites by comparing the permutations they induce on
//! leaves. [`check_model`] evaluates every path in the prefix model.
//! [`lift`] searches for a retyping of a mixed diagram into canonical arrows
//! between trees whose free commutativity implies that of the original.

mod diagram;
mod lift;
mod term;

pub use diagram::{
    check_free, check_model, AssertOutcome, Diagram, DiagramReport, Edge, Node, Verdict,
};
pub use lift::{lift, LiftOutcome};
pub use term::{parse_document, parse_term, term_from, Document, Term};

use crate::arrow::PrefixArrow;
use crate::error::{Error, Result};
use crate::selfsim::SelfSimilar;
use crate::tree::Tree;

/// The arrow in the model denoted by a term with no internal operations.
pub fn inst(t: &Term) -> Result<PrefixArrow> {
    if t.is_internal() {
        return Err(Error::NoInst(t.to_sexpr()));
    }
    t.eval(None)
}

/// `code_S = 1`, `code_{A□B} = code ∘ (code_A ⊎ code_B)`.
pub fn gen_code(x: &Tree, s: &SelfSimilar) -> PrefixArrow {
    match x.children() {
        None => PrefixArrow::identity(x),
        Some((a, b)) => s
            .code()
            .compose(&gen_code(a, s).tensor(&gen_code(b, s)))
            .expect("S□S to S"),
    }
}

/// `code_cod ∘ f ∘ code_dom†`, collapsing every object to `S`.
pub fn phi(t: &Term, s: &SelfSimilar) -> Result<PrefixArrow> {
    phi_arrow(&t.eval(Some(s))?, s)
}

pub fn phi_arrow(f: &PrefixArrow, s: &SelfSimilar) -> Result<PrefixArrow> {
    gen_code(f.cod(), s)
        .compose(f)?
        .compose(&gen_code(f.dom(), s).dagger())
}

/// Image of each domain leaf (by left-to-right index) in the codomain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeafPermutation(pub Vec<usize>);

impl LeafPermutation {
    pub fn identity(n: usize) -> Self {
        LeafPermutation((0..n).collect())
    }

    /// `self` after `f`.
    pub fn after(&self, f: &LeafPermutation) -> Self {
        LeafPermutation(f.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        LeafPermutation(inv)
    }

    pub fn block_sum(&self, g: &LeafPermutation) -> Self {
        let n = self.0.len();
        LeafPermutation(
            self.0
                .iter()
                .copied()
                .chain(g.0.iter().map(|&j| j + n))
                .collect(),
        )
    }
}

pub fn leaf_permutation(t: &Term) -> Result<LeafPermutation> {
    Ok(match t {
        Term::Id(x) => LeafPermutation::identity(x.leaf_count()),
        Term::Assoc(a, b, c) | Term::AssocInv(a, b, c) => {
            LeafPermutation::identity(a.leaf_count() + b.leaf_count() + c.leaf_count())
        }
        Term::Sym(a, b) => {
            let (na, nb) = (a.leaf_count(), b.leaf_count());
            LeafPermutation((nb..nb + na).chain(0..nb).collect())
        }
        Term::Tensor(f, g) => leaf_permutation(f)?.block_sum(&leaf_permutation(g)?),
        Term::Compose(g, f) => {
            t.signature()?;
            leaf_permutation(g)?.after(&leaf_permutation(f)?)
        }
        Term::Dagger(f) => leaf_permutation(f)?.inverse(),
        other => return Err(Error::NotCanonical(other.to_sexpr())),
    })
}
