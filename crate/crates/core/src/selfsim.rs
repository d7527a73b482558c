//! Self-similar structures at `S`: a unitary code `S□S → S`, the one-object
//! tensor it induces, and the induced associator and symmetry.

use serde::Serialize;

use crate::arrow::PrefixArrow;
use crate::canonical::{assoc, sym};
use crate::error::{Error, Result};
use crate::tree::Tree;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SelfSimilar {
    code: PrefixArrow,
    decode: PrefixArrow,
}

impl SelfSimilar {
    /// `code : S□S → S`, which must be unitary.
    pub fn new(code: PrefixArrow) -> Result<SelfSimilar> {
        if code.dom() != &Tree::pair() || !code.cod().is_leaf() {
            return Err(Error::typing("code", &Tree::pair(), code.dom()));
        }
        if !code.is_unitary() {
            return Err(Error::NotUnitary(code.to_string()));
        }
        Ok(SelfSimilar {
            decode: code.dagger(),
            code,
        })
    }

    /// `(L,w) ↦ 0w`, `(R,w) ↦ 1w`.
    pub fn standard() -> SelfSimilar {
        let code = crate::sexpr::arrow_from(
            &crate::sexpr::parse_one(
                r#"(arrow :dom (S S) :cod S :terms ((("" "0") ("L" "")) (("" "1") ("R" ""))))"#,
            )
            .expect("static literal"),
        )
        .expect("static literal");
        SelfSimilar::new(code).expect("standard code is unitary")
    }

    /// The standard structure conjugated by the bit flip.
    pub fn swap() -> SelfSimilar {
        SelfSimilar::from_unitary(&bit_flip(), &SelfSimilar::standard())
            .expect("bit flip is unitary")
    }

    /// `(S, U∘code, decode∘U†)`.
    pub fn from_unitary(u: &PrefixArrow, base: &SelfSimilar) -> Result<SelfSimilar> {
        if !u.is_endo_of_s() {
            return Err(Error::typing("change of code", &Tree::Leaf, u.dom()));
        }
        if !u.is_unitary() {
            return Err(Error::NotUnitary(u.to_string()));
        }
        SelfSimilar::new(u.compose(&base.code)?)
    }

    pub fn code(&self) -> &PrefixArrow {
        &self.code
    }

    pub fn decode(&self) -> &PrefixArrow {
        &self.decode
    }

    /// `a ⊗ b = code ∘ (a ⊎ b) ∘ decode`.
    pub fn internalize(&self, a: &PrefixArrow, b: &PrefixArrow) -> Result<PrefixArrow> {
        for x in [a, b] {
            if !x.is_endo_of_s() {
                return Err(Error::typing("internal tensor", &Tree::Leaf, x.dom()));
            }
        }
        self.code.compose(&a.tensor(b))?.compose(&self.decode)
    }

    /// `code ∘ (code ⊎ 1) ∘ τ_{S,S,S} ∘ (1 ⊎ decode) ∘ decode`.
    pub fn tau(&self) -> PrefixArrow {
        let s = Tree::Leaf;
        let one = PrefixArrow::identity(&s);
        self.code
            .compose(&self.code.tensor(&one))
            .and_then(|x| x.compose(&assoc(&s, &s, &s)))
            .and_then(|x| x.compose(&one.tensor(&self.decode)))
            .and_then(|x| x.compose(&self.decode))
            .expect("factors are composable")
    }

    /// `code ∘ σ_{S,S} ∘ decode`.
    pub fn sigma(&self) -> PrefixArrow {
        self.code
            .compose(&sym(&Tree::Leaf, &Tree::Leaf))
            .and_then(|x| x.compose(&self.decode))
            .expect("factors are composable")
    }

    pub fn induced(&self) -> Induced {
        Induced {
            tau: self.tau(),
            sigma: self.sigma(),
        }
    }
}

/// The induced associator and symmetry of the internal tensor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Induced {
    pub tau: PrefixArrow,
    pub sigma: PrefixArrow,
}

/// `{1←0, 0←1}`.
pub fn bit_flip() -> PrefixArrow {
    PrefixArrow::untyped([("1", "0"), ("0", "1")]).expect("static arrow")
}

/// The unique unitary `U` with `b.code = U ∘ a.code`.
pub fn unique_unitary(a: &SelfSimilar, b: &SelfSimilar) -> PrefixArrow {
    b.code.compose(&a.decode).expect("both codes land in S")
}

#[derive(Clone, Debug, Serialize)]
pub struct LawCheck {
    pub name: &'static str,
    pub holds: bool,
    pub lhs: String,
    pub rhs: String,
}

fn law(name: &'static str, lhs: PrefixArrow, rhs: PrefixArrow) -> LawCheck {
    LawCheck {
        name,
        holds: lhs == rhs,
        lhs: lhs.term_list(),
        rhs: rhs.term_list(),
    }
}

/// The three arrows `S□(S□S) → S□S` etc. used by the lax conditions, plus
/// the typed canonical pieces at `S`.
struct Pieces {
    one: PrefixArrow,
    tau3: PrefixArrow,
    sigma2: PrefixArrow,
}

fn pieces() -> Pieces {
    let s = Tree::Leaf;
    Pieces {
        one: PrefixArrow::identity(&s),
        tau3: assoc(&s, &s, &s),
        sigma2: sym(&s, &s),
    }
}

fn chain(arrows: &[&PrefixArrow]) -> PrefixArrow {
    // Rightmost factor applies first.
    let (last, rest) = arrows.split_last().expect("non-empty chain");
    rest.iter().rev().fold((*last).clone(), |acc, g| {
        g.compose(&acc).expect("chain factors are composable")
    })
}

/// The four lax conditions, each as an exact arrow identity.
pub fn check_lax(s: &SelfSimilar) -> Vec<LawCheck> {
    let Pieces { one, tau3, sigma2 } = pieces();
    let (code, decode) = (&s.code, &s.decode);
    let Induced { tau, sigma } = s.induced();
    let code_1 = code.tensor(&one);
    let one_code = one.tensor(code);
    let decode_1 = decode.tensor(&one);
    vec![
        law(
            "lax associativity",
            chain(&[code, &code_1, &tau3]),
            chain(&[&tau, code, &one_code]),
        ),
        law(
            "lax Frobenius",
            chain(&[decode, &tau.dagger(), code]),
            chain(&[&one_code, &tau3.dagger(), &decode_1]),
        ),
        law(
            "classical structure",
            code.compose(decode).expect("S to S"),
            one.clone(),
        ),
        law(
            "lax symmetry",
            sigma2.compose(decode).expect("S to S□S"),
            decode.compose(&sigma).expect("S to S□S"),
        ),
    ]
}

/// The strict Frobenius square `decode ∘ code = (1⊎code) ∘ τ† ∘ (decode⊎1)`,
/// which holds only when the induced associator is trivial.
pub fn overly_restrictive(s: &SelfSimilar) -> LawCheck {
    let Pieces { one, tau3, .. } = pieces();
    law(
        "overly restrictive Frobenius",
        s.decode.compose(&s.code).expect("S□S to S□S"),
        chain(&[&one.tensor(&s.code), &tau3.dagger(), &s.decode.tensor(&one)]),
    )
}

/// True iff the induced associator is not the identity.
pub fn strict_collapse_fails(s: &SelfSimilar) -> bool {
    s.tau() != PrefixArrow::identity(&Tree::Leaf)
}
