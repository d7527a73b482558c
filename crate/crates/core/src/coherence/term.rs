//! Terms over the toolkit of canonical arrows, internal operations and
//! arrow literals, with typing, evaluation and S-expression syntax.

use std::fmt;

use crate::arrow::PrefixArrow;
use crate::canonical::{self, CanonicalKind};
use crate::error::{Error, Result};
use crate::matrix::P2Embedding;
use crate::selfsim::SelfSimilar;
use crate::sexpr::{self, Value};
use crate::tree::Tree;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Id(Tree),
    Assoc(Tree, Tree, Tree),
    AssocInv(Tree, Tree, Tree),
    Sym(Tree, Tree),
    Tensor(Box<Term>, Box<Term>),
    /// `Compose(g, f)` is `g ∘ f`.
    Compose(Box<Term>, Box<Term>),
    Dagger(Box<Term>),
    AssocInternal,
    SymInternal,
    TensorInternal(Box<Term>, Box<Term>),
    Code,
    Decode,
    Arrow(PrefixArrow),
    Join(Box<Term>, Box<Term>),
    P,
    Q,
    /// `ι_l : X → X□Y` or, with `right`, `ι_r : Y → X□Y`.
    Inj {
        right: bool,
        x: Tree,
        y: Tree,
    },
}

impl Term {
    pub fn compose(g: Term, f: Term) -> Term {
        Term::Compose(Box::new(g), Box::new(f))
    }

    pub fn tensor(a: Term, b: Term) -> Term {
        Term::Tensor(Box::new(a), Box::new(b))
    }

    pub fn dagger(t: Term) -> Term {
        Term::Dagger(Box::new(t))
    }

    pub fn tensor_internal(a: Term, b: Term) -> Term {
        Term::TensorInternal(Box::new(a), Box::new(b))
    }

    /// `(dom, cod)`.
    pub fn signature(&self) -> Result<(Tree, Tree)> {
        let s = Tree::Leaf;
        Ok(match self {
            Term::Id(t) => (t.clone(), t.clone()),
            Term::Assoc(a, b, c) => (
                Tree::node(a.clone(), Tree::node(b.clone(), c.clone())),
                Tree::node(Tree::node(a.clone(), b.clone()), c.clone()),
            ),
            Term::AssocInv(a, b, c) => (
                Tree::node(Tree::node(a.clone(), b.clone()), c.clone()),
                Tree::node(a.clone(), Tree::node(b.clone(), c.clone())),
            ),
            Term::Sym(a, b) => (
                Tree::node(a.clone(), b.clone()),
                Tree::node(b.clone(), a.clone()),
            ),
            Term::Tensor(f, g) => {
                let (fd, fc) = f.signature()?;
                let (gd, gc) = g.signature()?;
                (Tree::node(fd, gd), Tree::node(fc, gc))
            }
            Term::Compose(g, f) => {
                let (fd, fc) = f.signature()?;
                let (gd, gc) = g.signature()?;
                if fc != gd {
                    return Err(Error::typing("composition", &gd, &fc));
                }
                (fd, gc)
            }
            Term::Dagger(t) => {
                let (d, c) = t.signature()?;
                (c, d)
            }
            Term::AssocInternal | Term::SymInternal | Term::P | Term::Q => (s.clone(), s),
            Term::TensorInternal(a, b) => {
                for t in [a, b] {
                    let (d, c) = t.signature()?;
                    if d != s {
                        return Err(Error::typing("internal tensor", &s, &d));
                    }
                    if c != s {
                        return Err(Error::typing("internal tensor", &s, &c));
                    }
                }
                (s.clone(), s)
            }
            Term::Code => (Tree::pair(), s),
            Term::Decode => (s, Tree::pair()),
            Term::Arrow(f) => (f.dom().clone(), f.cod().clone()),
            Term::Join(a, b) => {
                let sa = a.signature()?;
                let (bd, bc) = b.signature()?;
                if sa.0 != bd {
                    return Err(Error::typing("join", &sa.0, &bd));
                }
                if sa.1 != bc {
                    return Err(Error::typing("join", &sa.1, &bc));
                }
                sa
            }
            Term::Inj { right, x, y } => {
                let src = if *right { y.clone() } else { x.clone() };
                (src, Tree::node(x.clone(), y.clone()))
            }
        })
    }

    /// Built only from identities, associators, symmetries, tensor,
    /// composition and dagger.
    pub fn is_canonical(&self) -> bool {
        match self {
            Term::Id(_) | Term::Assoc(..) | Term::AssocInv(..) | Term::Sym(..) => true,
            Term::Tensor(a, b) | Term::Compose(a, b) => a.is_canonical() && b.is_canonical(),
            Term::Dagger(t) => t.is_canonical(),
            _ => false,
        }
    }

    /// Mentions an operation that needs a self-similar structure.
    pub fn is_internal(&self) -> bool {
        match self {
            Term::AssocInternal
            | Term::SymInternal
            | Term::TensorInternal(..)
            | Term::Code
            | Term::Decode
            | Term::P
            | Term::Q => true,
            Term::Tensor(a, b) | Term::Compose(a, b) | Term::Join(a, b) => {
                a.is_internal() || b.is_internal()
            }
            Term::Dagger(t) => t.is_internal(),
            _ => false,
        }
    }

    /// The denoted arrow. Internal operations are resolved against `s`.
    pub fn eval(&self, s: Option<&SelfSimilar>) -> Result<PrefixArrow> {
        let need = |what: &str| {
            s.ok_or_else(|| Error::NoInst(format!("{what} needs a self-similar structure")))
        };
        match self {
            Term::Id(t) => Ok(PrefixArrow::identity(t)),
            Term::Assoc(a, b, c) => {
                canonical::canonical(CanonicalKind::Assoc, &[a.clone(), b.clone(), c.clone()])
            }
            Term::AssocInv(a, b, c) => {
                canonical::canonical(CanonicalKind::AssocInv, &[a.clone(), b.clone(), c.clone()])
            }
            Term::Sym(a, b) => Ok(canonical::sym(a, b)),
            Term::Tensor(f, g) => Ok(f.eval(s)?.tensor(&g.eval(s)?)),
            Term::Compose(g, f) => {
                let (f, g) = (f.eval(s)?, g.eval(s)?);
                g.compose(&f)
            }
            Term::Dagger(t) => Ok(t.eval(s)?.dagger()),
            Term::AssocInternal => Ok(need("tau-int")?.tau()),
            Term::SymInternal => Ok(need("sigma-int")?.sigma()),
            Term::TensorInternal(a, b) => {
                let sss = need("tensor-int")?;
                sss.internalize(&a.eval(s)?, &b.eval(s)?)
            }
            Term::Code => Ok(need("code")?.code().clone()),
            Term::Decode => Ok(need("decode")?.decode().clone()),
            Term::Arrow(f) => Ok(f.clone()),
            Term::Join(a, b) => a.eval(s)?.join(&b.eval(s)?),
            Term::P => Ok(P2Embedding::of(need("p")?).p),
            Term::Q => Ok(P2Embedding::of(need("q")?).q),
            Term::Inj { right: false, x, y } => Ok(canonical::iota_l(x, y)),
            Term::Inj { right: true, x, y } => Ok(canonical::iota_r(x, y)),
        }
    }

    pub fn to_sexpr(&self) -> String {
        match self {
            Term::Id(t) => format!("(id {t})"),
            Term::Assoc(a, b, c) => format!("(tau {a} {b} {c})"),
            Term::AssocInv(a, b, c) => format!("(tau-inv {a} {b} {c})"),
            Term::Sym(a, b) => format!("(sigma {a} {b})"),
            Term::Tensor(a, b) => format!("(tensor {} {})", a.to_sexpr(), b.to_sexpr()),
            Term::Compose(g, f) => format!("(comp {} {})", g.to_sexpr(), f.to_sexpr()),
            Term::Dagger(t) => format!("(dag {})", t.to_sexpr()),
            Term::AssocInternal => "tau-int".into(),
            Term::SymInternal => "sigma-int".into(),
            Term::TensorInternal(a, b) => format!("(tensor-int {} {})", a.to_sexpr(), b.to_sexpr()),
            Term::Code => "code".into(),
            Term::Decode => "decode".into(),
            Term::Arrow(f) => sexpr::arrow_to_sexpr(f),
            Term::Join(a, b) => format!("(join {} {})", a.to_sexpr(), b.to_sexpr()),
            Term::P => "p".into(),
            Term::Q => "q".into(),
            Term::Inj { right, x, y } => {
                format!("({} {x} {y})", if *right { "iota-r" } else { "iota-l" })
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sexpr())
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sexpr())
    }
}

/// What a source file may contain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Tree(Tree),
    Term(Term),
}

const OPERATORS: &[&str] = &[
    "arrow",
    "comp",
    "tensor",
    "dag",
    "join",
    "tau",
    "tau-inv",
    "sigma",
    "id",
    "iota-l",
    "iota-r",
    "pi-l",
    "pi-r",
    "tensor-int",
];

pub fn parse_document(src: &str) -> Result<Document> {
    let v = sexpr::parse_one(src)?;
    let is_term = match &v {
        Value::Atom(a, _) => a != "S",
        Value::Str(..) => false,
        Value::List(items, _) => items
            .first()
            .and_then(Value::as_atom)
            .is_some_and(|head| OPERATORS.contains(&head)),
    };
    if is_term {
        term_from(&v).map(Document::Term)
    } else {
        sexpr::tree_from(&v).map(Document::Tree)
    }
}

pub fn parse_term(src: &str) -> Result<Term> {
    term_from(&sexpr::parse_one(src)?)
}

fn trees<const N: usize>(form: &Value, args: &[Value]) -> Result<[Tree; N]> {
    if args.len() != N {
        return Err(form.error(format!("expected {N} tree arguments, found {}", args.len())));
    }
    let parsed = args
        .iter()
        .map(sexpr::tree_from)
        .collect::<Result<Vec<_>>>()?;
    Ok(parsed.try_into().expect("length checked"))
}

fn terms<const N: usize>(form: &Value, args: &[Value]) -> Result<[Term; N]> {
    if args.len() != N {
        return Err(form.error(format!("expected {N} term arguments, found {}", args.len())));
    }
    let parsed = args.iter().map(term_from).collect::<Result<Vec<_>>>()?;
    Ok(parsed.try_into().expect("length checked"))
}

pub fn term_from(v: &Value) -> Result<Term> {
    match v {
        Value::Atom(a, _) => match a.as_str() {
            "code" => Ok(Term::Code),
            "decode" => Ok(Term::Decode),
            "p" => Ok(Term::P),
            "q" => Ok(Term::Q),
            "tau-int" => Ok(Term::AssocInternal),
            "sigma-int" => Ok(Term::SymInternal),
            other => Err(v.error(format!("unknown term {other:?}"))),
        },
        Value::Str(..) => Err(v.error("expected a term, found a string")),
        Value::List(items, _) => {
            let Some(head) = items.first().and_then(Value::as_atom) else {
                return Err(v.error("expected an operator"));
            };
            let args = &items[1..];
            Ok(match head {
                "arrow" => Term::Arrow(sexpr::arrow_from(v)?),
                "comp" => {
                    if args.len() < 2 {
                        return Err(v.error("comp takes at least two terms"));
                    }
                    let mut parts = args.iter().map(term_from).collect::<Result<Vec<_>>>()?;
                    let last = parts.pop().expect("non-empty");
                    // (comp a b c) = a ∘ (b ∘ c)
                    parts
                        .into_iter()
                        .rev()
                        .fold(last, |f, g| Term::compose(g, f))
                }
                "tensor" => {
                    let [a, b] = terms(v, args)?;
                    Term::tensor(a, b)
                }
                "tensor-int" => {
                    let [a, b] = terms(v, args)?;
                    Term::tensor_internal(a, b)
                }
                "join" => {
                    let [a, b] = terms(v, args)?;
                    Term::Join(Box::new(a), Box::new(b))
                }
                "dag" => {
                    let [a] = terms(v, args)?;
                    Term::dagger(a)
                }
                "tau" => {
                    let [a, b, c] = trees(v, args)?;
                    Term::Assoc(a, b, c)
                }
                "tau-inv" => {
                    let [a, b, c] = trees(v, args)?;
                    Term::AssocInv(a, b, c)
                }
                "sigma" => {
                    let [a, b] = trees(v, args)?;
                    Term::Sym(a, b)
                }
                "id" => {
                    let [t] = trees(v, args)?;
                    Term::Id(t)
                }
                "iota-l" | "iota-r" | "pi-l" | "pi-r" => {
                    let [x, y] = trees(v, args)?;
                    let inj = Term::Inj {
                        right: head.ends_with('r'),
                        x,
                        y,
                    };
                    if head.starts_with("pi") {
                        Term::dagger(inj)
                    } else {
                        inj
                    }
                }
                other => return Err(items[0].error(format!("unknown operator {other:?}"))),
            })
        }
    }
}
