//! Retyping a mixed diagram as a diagram of canonical arrows between trees.
//!
//! Every edge term is first collapsed to a shape over `{1, τ, τ⁻¹, σ, ⊗, ∘}`
//! by sending identities, `code` and `decode` to `1`, associators (typed or
//! internal) to `τ`, symmetries to `σ` and both tensors to `⊗`. Given the
//! tree at one end of an edge, a shape has at most one canonical realisation
//! and it fixes the tree at the other end. Trees are therefore determined by
//! one choice per connected component, and the search enumerates those
//! choices by increasing leaf count.

use std::collections::VecDeque;

use super::diagram::{check_free, Diagram, Edge, Node, Verdict};
use super::term::Term;
use crate::error::Result;
use crate::tree::Tree;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Shape {
    One,
    Tau,
    TauInv,
    Sigma,
    Tensor(Box<Shape>, Box<Shape>),
    /// `Compose(g, f)` is `g ∘ f`.
    Compose(Box<Shape>, Box<Shape>),
}

impl Shape {
    fn of(t: &Term) -> Option<Shape> {
        Some(match t {
            Term::Id(_) | Term::Code | Term::Decode => Shape::One,
            Term::Assoc(..) | Term::AssocInternal => Shape::Tau,
            Term::AssocInv(..) => Shape::TauInv,
            Term::Sym(..) | Term::SymInternal => Shape::Sigma,
            Term::Tensor(a, b) | Term::TensorInternal(a, b) => {
                Shape::Tensor(Box::new(Shape::of(a)?), Box::new(Shape::of(b)?))
            }
            Term::Compose(g, f) => Shape::Compose(Box::new(Shape::of(g)?), Box::new(Shape::of(f)?)),
            Term::Dagger(t) => Shape::of(t)?.dagger(),
            Term::Arrow(_) | Term::Join(..) | Term::P | Term::Q | Term::Inj { .. } => return None,
        })
    }

    fn dagger(self) -> Shape {
        match self {
            Shape::One => Shape::One,
            Shape::Tau => Shape::TauInv,
            Shape::TauInv => Shape::Tau,
            Shape::Sigma => Shape::Sigma,
            Shape::Tensor(a, b) => Shape::Tensor(Box::new(a.dagger()), Box::new(b.dagger())),
            Shape::Compose(g, f) => Shape::Compose(Box::new(f.dagger()), Box::new(g.dagger())),
        }
    }

    /// The canonical term of this shape with domain `dom`, and its codomain.
    fn realise(&self, dom: &Tree) -> Option<(Term, Tree)> {
        match self {
            Shape::One => Some((Term::Id(dom.clone()), dom.clone())),
            Shape::Tau => {
                let (a, bc) = dom.children()?;
                let (b, c) = bc.children()?;
                let t = Term::Assoc(a.clone(), b.clone(), c.clone());
                let cod = Tree::node(Tree::node(a.clone(), b.clone()), c.clone());
                Some((t, cod))
            }
            Shape::TauInv => {
                let (ab, c) = dom.children()?;
                let (a, b) = ab.children()?;
                let t = Term::AssocInv(a.clone(), b.clone(), c.clone());
                let cod = Tree::node(a.clone(), Tree::node(b.clone(), c.clone()));
                Some((t, cod))
            }
            Shape::Sigma => {
                let (a, b) = dom.children()?;
                Some((
                    Term::Sym(a.clone(), b.clone()),
                    Tree::node(b.clone(), a.clone()),
                ))
            }
            Shape::Tensor(f, g) => {
                let (a, b) = dom.children()?;
                let (tf, cf) = f.realise(a)?;
                let (tg, cg) = g.realise(b)?;
                Some((Term::tensor(tf, tg), Tree::node(cf, cg)))
            }
            Shape::Compose(g, f) => {
                let (tf, mid) = f.realise(dom)?;
                let (tg, cod) = g.realise(&mid)?;
                Some((Term::compose(tg, tf), cod))
            }
        }
    }

    /// The canonical term of this shape with codomain `cod`, and its domain.
    fn realise_back(&self, cod: &Tree) -> Option<(Term, Tree)> {
        let (t, dom) = self.clone().dagger().realise(cod)?;
        Some((Term::dagger(t), dom))
    }
}

#[derive(Clone, Debug)]
pub enum LiftOutcome {
    /// A retyping whose assertions all commute in the free category.
    Certified { lifted: Diagram, leaves: usize },
    /// Retypings exist up to the bound, but none commutes freely.
    NotCertified { candidates: usize },
    /// No consistent retyping with at most `bound` leaves per tree.
    NoLift { reason: String },
}

/// Searches retypings with trees of at most `bound` leaves. A diagram that
/// is already canonical and well typed is its own lift.
pub fn lift(d: &Diagram, bound: usize) -> Result<LiftOutcome> {
    if d.is_canonical() && d.check_typing().is_ok() {
        let report = check_free(d)?;
        let leaves = d
            .nodes
            .iter()
            .filter_map(|n| n.tree.as_ref().map(Tree::leaf_count))
            .max()
            .unwrap_or(0);
        return Ok(match report.verdict() {
            Verdict::Commutes => LiftOutcome::Certified {
                lifted: d.clone(),
                leaves,
            },
            _ => LiftOutcome::NotCertified { candidates: 1 },
        });
    }
    let mut shapes = Vec::new();
    for (i, e) in d.edges.iter().enumerate() {
        match Shape::of(&e.term) {
            Some(s) => shapes.push(s),
            None => {
                return Ok(LiftOutcome::NoLift {
                    reason: format!("edge {i} has no canonical counterpart: {}", e.term),
                })
            }
        }
    }
    let components = components(d);
    let mut candidates = 0;
    for n in 1..=bound {
        let mut per_component = Vec::new();
        for comp in &components {
            let found = typings(d, &shapes, comp, n);
            if found.is_empty() {
                break;
            }
            per_component.push(found);
        }
        if per_component.len() < components.len() {
            continue;
        }
        // Components are independent: take the product of their typings in
        // order, stopping at the first that commutes.
        let mut choice = vec![0usize; per_component.len()];
        loop {
            candidates += 1;
            let lifted = assemble(d, &per_component, &choice);
            if check_free(&lifted)?.verdict() == Verdict::Commutes {
                return Ok(LiftOutcome::Certified { lifted, leaves: n });
            }
            if !advance(&mut choice, &per_component) {
                break;
            }
        }
    }
    Ok(if candidates > 0 {
        LiftOutcome::NotCertified { candidates }
    } else {
        LiftOutcome::NoLift {
            reason: format!("no consistent typing with at most {bound} leaves"),
        }
    })
}

fn advance(choice: &mut [usize], options: &[Vec<Typing>]) -> bool {
    for k in (0..choice.len()).rev() {
        choice[k] += 1;
        if choice[k] < options[k].len() {
            return true;
        }
        choice[k] = 0;
    }
    false
}

/// Trees per node and terms per edge, for one component.
#[derive(Clone, Debug)]
struct Typing {
    trees: Vec<(usize, Tree)>,
    terms: Vec<(usize, Term)>,
}

fn components(d: &Diagram) -> Vec<Vec<usize>> {
    let mut seen = vec![false; d.nodes.len()];
    let mut out = Vec::new();
    for start in 0..d.nodes.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for e in &d.edges {
                for (a, b) in [(e.src, e.dst), (e.dst, e.src)] {
                    if a == v && !seen[b] {
                        seen[b] = true;
                        comp.push(b);
                        queue.push_back(b);
                    }
                }
            }
        }
        out.push(comp);
    }
    out
}

/// All consistent typings of a component with `n`-leaf trees, the root's
/// declared tree first.
fn typings(d: &Diagram, shapes: &[Shape], comp: &[usize], n: usize) -> Vec<Typing> {
    let root = comp[0];
    let mut roots = Tree::all_with_leaves(n);
    if let Some(declared) = &d.nodes[root].tree {
        if let Some(i) = roots.iter().position(|t| t == declared) {
            let t = roots.remove(i);
            roots.insert(0, t);
        }
    }
    roots
        .into_iter()
        .filter_map(|t| propagate(d, shapes, root, t))
        .collect()
}

fn propagate(d: &Diagram, shapes: &[Shape], root: usize, tree: Tree) -> Option<Typing> {
    let mut trees: Vec<Option<Tree>> = vec![None; d.nodes.len()];
    let mut terms: Vec<Option<Term>> = vec![None; d.edges.len()];
    trees[root] = Some(tree);
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        let here = trees[v].clone().expect("queued nodes are typed");
        for (i, e) in d.edges.iter().enumerate() {
            if terms[i].is_some() {
                continue;
            }
            let (term, other, at) = if e.src == v {
                let (t, cod) = shapes[i].realise(&here)?;
                (t, cod, e.dst)
            } else if e.dst == v {
                let (t, dom) = shapes[i].realise_back(&here)?;
                (t, dom, e.src)
            } else {
                continue;
            };
            match &trees[at] {
                Some(existing) if *existing != other => return None,
                Some(_) => {}
                None => {
                    trees[at] = Some(other);
                    queue.push_back(at);
                }
            }
            terms[i] = Some(term);
        }
    }
    Some(Typing {
        trees: trees
            .into_iter()
            .enumerate()
            .filter_map(|(i, t)| t.map(|t| (i, t)))
            .collect(),
        terms: terms
            .into_iter()
            .enumerate()
            .filter_map(|(i, t)| t.map(|t| (i, t)))
            .collect(),
    })
}

fn assemble(d: &Diagram, per_component: &[Vec<Typing>], choice: &[usize]) -> Diagram {
    let mut nodes: Vec<Node> = d.nodes.clone();
    let mut edges: Vec<Edge> = d.edges.clone();
    for (options, &k) in per_component.iter().zip(choice) {
        let typing = &options[k];
        for (i, t) in &typing.trees {
            nodes[*i].tree = Some(t.clone());
        }
        for (i, t) in &typing.terms {
            edges[*i].term = t.clone();
        }
    }
    Diagram {
        nodes,
        edges,
        asserts: d.asserts.clone(),
    }
}
