//! Embeddings of the polycyclic monoid on two generators, and the 2×2
//! matrix representations they induce.

use std::fmt;

use crate::arrow::{BasicTerm, Cylinder, PrefixArrow};
use crate::canonical::{iota_l, iota_r, pi_l, pi_r};
use crate::error::{Error, Result};
use crate::selfsim::SelfSimilar;
use crate::tree::Tree;
use crate::word::{Bits, LeafPath};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P2Embedding {
    pub p: PrefixArrow,
    pub q: PrefixArrow,
}

impl P2Embedding {
    /// `p = π_l ∘ decode`, `q = π_r ∘ decode`.
    pub fn of(s: &SelfSimilar) -> P2Embedding {
        let (a, b) = (Tree::Leaf, Tree::Leaf);
        P2Embedding {
            p: pi_l(&a, &b).compose(s.decode()).expect("S□S to S"),
            q: pi_r(&a, &b).compose(s.decode()).expect("S□S to S"),
        }
    }

    /// `x_0 = p`, `x_1 = q`.
    pub fn x(&self, i: usize) -> &PrefixArrow {
        if i == 0 {
            &self.p
        } else {
            &self.q
        }
    }

    /// `pp† = 1 = qq†` and `pq† = 0 = qp†`.
    pub fn relations_hold(&self) -> bool {
        let one = PrefixArrow::identity(&Tree::Leaf);
        let c = |a: &PrefixArrow, b: &PrefixArrow| a.compose(&b.dagger()).expect("S to S");
        c(&self.p, &self.p) == one
            && c(&self.q, &self.q) == one
            && c(&self.p, &self.q).is_zero()
            && c(&self.q, &self.p).is_zero()
    }

    /// `p†p ∨ q†q = 1`.
    pub fn is_strong(&self) -> bool {
        self.p
            .domain_idempotent()
            .join(&self.q.domain_idempotent())
            .is_ok_and(|j| j == PrefixArrow::identity(&Tree::Leaf))
    }

    /// `ι_l p ∨ ι_r q`, which is the decode of the structure the embedding
    /// came from.
    pub fn decode(&self) -> Result<PrefixArrow> {
        let (a, b) = (Tree::Leaf, Tree::Leaf);
        iota_l(&a, &b)
            .compose(&self.p)?
            .join(&iota_r(&a, &b).compose(&self.q)?)
    }
}

/// `[[e00, e01], [e10, e11]]`, entries endo-arrows of `S`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix2 {
    pub entries: [[PrefixArrow; 2]; 2],
}

impl Matrix2 {
    pub fn new(entries: [[PrefixArrow; 2]; 2]) -> Result<Matrix2> {
        for e in entries.iter().flatten() {
            if !e.is_endo_of_s() {
                return Err(Error::typing("matrix entry", &Tree::Leaf, e.dom()));
            }
        }
        Ok(Matrix2 { entries })
    }

    pub fn identity() -> Matrix2 {
        let one = PrefixArrow::identity(&Tree::Leaf);
        let zero = PrefixArrow::zero(Tree::Leaf, Tree::Leaf);
        Matrix2 {
            entries: [[one.clone(), zero.clone()], [zero, one]],
        }
    }

    pub fn entry(&self, i: usize, j: usize) -> &PrefixArrow {
        &self.entries[i][j]
    }

    /// Ordinary product with join for sum; each sum must be of orthogonal
    /// arrows.
    pub fn mul(&self, n: &Matrix2) -> Result<Matrix2> {
        let m = &self.entries;
        let n = &n.entries;
        let cell = |i: usize, j: usize| -> Result<PrefixArrow> {
            m[i][0].compose(&n[0][j])?.join(&m[i][1].compose(&n[1][j])?)
        };
        Ok(Matrix2 {
            entries: [[cell(0, 0)?, cell(0, 1)?], [cell(1, 0)?, cell(1, 1)?]],
        })
    }

    /// `[[e00†, e10†], [e01†, e11†]]`.
    pub fn dagger(&self) -> Matrix2 {
        let e = &self.entries;
        Matrix2 {
            entries: [
                [e[0][0].dagger(), e[1][0].dagger()],
                [e[0][1].dagger(), e[1][1].dagger()],
            ],
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.entries[0][1].is_zero() && self.entries[1][0].is_zero()
    }

    /// `[[a, b], [c, d]]` with entries as S-expressions.
    pub fn to_sexpr(&self) -> String {
        let e = |i: usize, j: usize| crate::sexpr::arrow_to_sexpr(&self.entries[i][j]);
        format!("(({} {}) ({} {}))", e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }
}

impl fmt::Display for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = &self.entries;
        write!(f, "[[{}, {}],[{}, {}]]", e[0][0], e[0][1], e[1][0], e[1][1])
    }
}

impl fmt::Debug for Matrix2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn require_endo(f: &PrefixArrow, context: &str) -> Result<()> {
    if f.is_endo_of_s() {
        Ok(())
    } else if !f.dom().is_leaf() {
        Err(Error::typing(context, &Tree::Leaf, f.dom()))
    } else {
        Err(Error::typing(context, &Tree::Leaf, f.cod()))
    }
}

/// `[f]_{ij} = x_i ∘ f ∘ x_j†`.
pub fn matrix_rep(f: &PrefixArrow, s: &SelfSimilar) -> Result<Matrix2> {
    require_endo(f, "matrix representation")?;
    let e = P2Embedding::of(s);
    let cell = |i: usize, j: usize| -> PrefixArrow {
        e.x(i)
            .compose(f)
            .and_then(|x| x.compose(&e.x(j).dagger()))
            .expect("S to S")
    };
    Ok(Matrix2 {
        entries: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]],
    })
}

/// `⋁ x_i† ∘ e_ij ∘ x_j`.
pub fn reconstruct(m: &Matrix2, s: &SelfSimilar) -> Result<PrefixArrow> {
    let e = P2Embedding::of(s);
    let mut acc = PrefixArrow::zero(Tree::Leaf, Tree::Leaf);
    for i in 0..2 {
        for j in 0..2 {
            let piece = e.x(i).dagger().compose(&m.entries[i][j])?.compose(e.x(j))?;
            acc = acc.join(&piece)?;
        }
    }
    Ok(acc)
}

/// The change-of-basis matrix `u_ij = x_i^from ∘ (x_j^to)†`.
pub fn change_of_basis(from: &SelfSimilar, to: &SelfSimilar) -> Matrix2 {
    let (a, b) = (P2Embedding::of(from), P2Embedding::of(to));
    let cell = |i: usize, j: usize| a.x(i).compose(&b.x(j).dagger()).expect("S to S");
    Matrix2 {
        entries: [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]],
    }
}

#[derive(Clone, Debug)]
pub struct Rebased {
    pub direct: Matrix2,
    pub conjugated: Matrix2,
    pub basis: Matrix2,
}

impl Rebased {
    pub fn agree(&self) -> bool {
        self.direct == self.conjugated
    }
}

/// `[f]_to` directly and as `U† · [f]_from · U`.
pub fn rebase(f: &PrefixArrow, from: &SelfSimilar, to: &SelfSimilar) -> Result<Rebased> {
    let direct = matrix_rep(f, to)?;
    let u = change_of_basis(from, to);
    let conjugated = u.dagger().mul(&matrix_rep(f, from)?)?.mul(&u)?;
    Ok(Rebased {
        direct,
        conjugated,
        basis: u,
    })
}

pub fn is_diagonalized_by(f: &PrefixArrow, to: &SelfSimilar) -> Result<bool> {
    Ok(matrix_rep(f, to)?.is_diagonal())
}

/// `[X ⊗_to Y]_from`.
pub fn diagonal_form(
    x: &PrefixArrow,
    y: &PrefixArrow,
    from: &SelfSimilar,
    to: &SelfSimilar,
) -> Result<Matrix2> {
    matrix_rep(&to.internalize(x, y)?, from)
}

/// `(p g p†, q g q†)` for the embedding of `to`; `g` is diagonal under `to`
/// exactly when it is the internal tensor of these two.
pub fn diagonal_blocks(g: &PrefixArrow, to: &SelfSimilar) -> Result<(PrefixArrow, PrefixArrow)> {
    let m = matrix_rep(g, to)?;
    Ok((m.entries[0][0].clone(), m.entries[1][1].clone()))
}

/// Cylinder depth beyond which the mask enumeration becomes infeasible.
pub const MAX_SEARCH_DEPTH: usize = 4;

/// Searches for a structure diagonalising `f`, trying every clopen set `A`
/// made of cylinders of a fixed depth `d ≤ max_depth` such that `f` maps `A`
/// into `A` and its complement into its complement. The structure found
/// codes `A` on the left and the complement on the right.
pub fn find_diagonalizing(f: &PrefixArrow, max_depth: usize) -> Result<Option<SelfSimilar>> {
    require_endo(f, "diagonalisation")?;
    for depth in 1..=max_depth.min(MAX_SEARCH_DEPTH) {
        let cells: Vec<Bits> = Bits::all_of_length(depth).collect();
        let full: u64 = (1u64 << cells.len()) - 1;
        for mask in 1..full {
            let (mut a, mut b) = (Vec::new(), Vec::new());
            for (i, c) in cells.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    a.push(c.clone());
                } else {
                    b.push(c.clone());
                }
            }
            let (ea, eb) = (partial_identity(&a), partial_identity(&b));
            let cross = |x: &PrefixArrow, y: &PrefixArrow| {
                x.compose(f).and_then(|g| g.compose(y)).map(|g| g.is_zero())
            };
            if cross(&eb, &ea)? && cross(&ea, &eb)? {
                let code = split_code(&ea, &eb)?;
                return Ok(Some(SelfSimilar::new(code)?));
            }
        }
    }
    Ok(None)
}

fn partial_identity(cells: &[Bits]) -> PrefixArrow {
    let terms = cells
        .iter()
        .map(|c| BasicTerm::untyped(c.clone(), c.clone()));
    PrefixArrow::normalize(terms, Tree::Leaf, Tree::Leaf).expect("distinct cells of one depth")
}

/// Codes the maximal cylinders of `ea` and `eb` onto the leaves `L` and `R`,
/// each side via the comb code `0, 10, 110, …, 1…1`.
fn split_code(ea: &PrefixArrow, eb: &PrefixArrow) -> Result<PrefixArrow> {
    let mut terms = Vec::new();
    for (idem, leaf) in [(ea, false), (eb, true)] {
        let cells: Vec<&Bits> = idem.terms().iter().map(|t| &t.source.bits).collect();
        let m = cells.len();
        for (i, cell) in cells.into_iter().enumerate() {
            let mut comb = vec![true; i];
            if i + 1 < m {
                comb.push(false);
            }
            terms.push(BasicTerm::new(
                Cylinder::at(cell.clone()),
                Cylinder::new(LeafPath::root().child(leaf), Bits::from_bools(comb)),
            ));
        }
    }
    PrefixArrow::normalize(terms, Tree::pair(), Tree::Leaf)
}
