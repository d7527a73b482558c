use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::term::{parse_term, Term};
use super::{leaf_permutation, LeafPermutation};
use crate::arrow::PrefixArrow;
use crate::error::{Error, Result};
use crate::selfsim::SelfSimilar;
use crate::tree::Tree;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub id: String,
    /// `None` for a node of the untyped layer, which stands for `S`.
    pub tree: Option<Tree>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub src: usize,
    pub dst: usize,
    pub term: Term,
    pub id: Option<String>,
}

/// Nodes, edges between them, and pairs of paths asserted equal. A path is
/// a list of edge indices, first edge first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    pub asserts: Vec<(Vec<usize>, Vec<usize>)>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Key {
    Index(usize),
    Name(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NodeDoc {
    id: Key,
    tree: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeDoc {
    src: Key,
    dst: Key,
    term: String,
    #[serde(default)]
    id: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramDoc {
    nodes: Vec<NodeDoc>,
    edges: Vec<EdgeDoc>,
    asserts: Vec<(Vec<Key>, Vec<Key>)>,
}

impl Key {
    fn text(&self) -> String {
        match self {
            Key::Index(i) => i.to_string(),
            Key::Name(s) => s.clone(),
        }
    }
}

impl Diagram {
    pub fn from_json(src: &str) -> Result<Diagram> {
        let doc: DiagramDoc =
            serde_json::from_str(src).map_err(|e| Error::Diagram(e.to_string()))?;
        let mut nodes = Vec::new();
        let mut by_id = HashMap::new();
        for n in doc.nodes {
            let id = n.id.text();
            let tree = if n.tree == "untyped" {
                None
            } else {
                Some(
                    n.tree
                        .parse()
                        .map_err(|e| Error::Diagram(format!("node {id}: {e}")))?,
                )
            };
            if by_id.insert(id.clone(), nodes.len()).is_some() {
                return Err(Error::Diagram(format!("duplicate node id {id}")));
            }
            nodes.push(Node { id, tree });
        }
        let node = |k: &Key| {
            let id = k.text();
            by_id
                .get(&id)
                .copied()
                .ok_or_else(|| Error::Diagram(format!("unknown node {id}")))
        };
        let mut edges = Vec::new();
        for (i, e) in doc.edges.iter().enumerate() {
            let term = parse_term(&e.term).map_err(|err| match err {
                Error::Syntax { .. } | Error::BadLeaf { .. } | Error::NotOrthogonal(_) => {
                    Error::Diagram(format!("edge {i}: {err}"))
                }
                other => other,
            })?;
            edges.push(Edge {
                src: node(&e.src)?,
                dst: node(&e.dst)?,
                term,
                id: e.id.clone(),
            });
        }
        let edge = |k: &Key| match k {
            Key::Index(i) if *i < edges.len() => Ok(*i),
            Key::Name(name) => edges
                .iter()
                .position(|e| e.id.as_deref() == Some(name))
                .ok_or_else(|| Error::Diagram(format!("unknown edge {name}"))),
            Key::Index(i) => Err(Error::Diagram(format!("edge index {i} out of range"))),
        };
        let asserts = doc
            .asserts
            .iter()
            .map(|(a, b)| {
                Ok((
                    a.iter().map(edge).collect::<Result<Vec<_>>>()?,
                    b.iter().map(edge).collect::<Result<Vec<_>>>()?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        let d = Diagram {
            nodes,
            edges,
            asserts,
        };
        d.check_paths()?;
        Ok(d)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let nodes: Vec<_> = self
            .nodes
            .iter()
            .map(|n| {
                serde_json::json!({
                    "id": n.id,
                    "tree": n.tree.as_ref().map_or("untyped".to_string(), Tree::to_string),
                })
            })
            .collect();
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|e| {
                let mut v = serde_json::json!({
                    "src": self.nodes[e.src].id,
                    "dst": self.nodes[e.dst].id,
                    "term": e.term.to_sexpr(),
                });
                if let Some(id) = &e.id {
                    v["id"] = id.clone().into();
                }
                v
            })
            .collect();
        serde_json::json!({ "nodes": nodes, "edges": edges, "asserts": self.asserts })
    }

    /// Paths are non-empty, connected, and each asserted pair is parallel.
    fn check_paths(&self) -> Result<()> {
        for (k, (a, b)) in self.asserts.iter().enumerate() {
            let ends = |path: &[usize]| -> Result<(usize, usize)> {
                let (first, last) = match (path.first(), path.last()) {
                    (Some(f), Some(l)) => (f, l),
                    _ => return Err(Error::Diagram(format!("assertion {k}: empty path"))),
                };
                for w in path.windows(2) {
                    if self.edges[w[0]].dst != self.edges[w[1]].src {
                        return Err(Error::Diagram(format!(
                            "assertion {k}: edges {} and {} are not consecutive",
                            w[0], w[1]
                        )));
                    }
                }
                Ok((self.edges[*first].src, self.edges[*last].dst))
            };
            if ends(a)? != ends(b)? {
                return Err(Error::Diagram(format!(
                    "assertion {k}: paths do not share endpoints"
                )));
            }
        }
        Ok(())
    }

    /// Node trees, with untyped nodes read as `S`.
    fn tree_or_s(&self, node: usize) -> Tree {
        self.nodes[node].tree.clone().unwrap_or(Tree::Leaf)
    }

    /// Checks each edge's term against its endpoints.
    pub fn check_typing(&self) -> Result<()> {
        for (i, e) in self.edges.iter().enumerate() {
            let (d, c) = e.term.signature()?;
            let (src, dst) = (self.tree_or_s(e.src), self.tree_or_s(e.dst));
            if d != src {
                return Err(Error::typing(format!("source of edge {i}"), &src, &d));
            }
            if c != dst {
                return Err(Error::typing(format!("target of edge {i}"), &dst, &c));
            }
        }
        Ok(())
    }

    pub fn is_canonical(&self) -> bool {
        self.nodes.iter().all(|n| n.tree.is_some())
            && self.edges.iter().all(|e| e.term.is_canonical())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum AssertOutcome {
    Commutes,
    Differs {
        lhs: String,
        rhs: String,
    },
    /// Outside the fragment the procedure decides.
    Deferred {
        reason: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Commutes,
    Rejected,
    Undecided,
}

#[derive(Clone, Debug, Serialize)]
pub struct DiagramReport {
    pub mode: &'static str,
    pub outcomes: Vec<AssertOutcome>,
}

impl DiagramReport {
    pub fn verdict(&self) -> Verdict {
        if self
            .outcomes
            .iter()
            .any(|o| matches!(o, AssertOutcome::Differs { .. }))
        {
            Verdict::Rejected
        } else if self
            .outcomes
            .iter()
            .all(|o| matches!(o, AssertOutcome::Commutes))
        {
            Verdict::Commutes
        } else {
            Verdict::Undecided
        }
    }
}

fn path_permutation(d: &Diagram, path: &[usize]) -> Result<LeafPermutation> {
    let mut acc: Option<LeafPermutation> = None;
    for &i in path {
        let p = leaf_permutation(&d.edges[i].term)?;
        acc = Some(match acc {
            None => p,
            Some(a) => p.after(&a),
        });
    }
    Ok(acc.expect("non-empty path"))
}

/// Decides each assertion whose paths consist of canonical edges between
/// typed nodes by comparing leaf permutations; others are deferred.
pub fn check_free(d: &Diagram) -> Result<DiagramReport> {
    let mut outcomes = Vec::new();
    for (a, b) in &d.asserts {
        let edges = a.iter().chain(b);
        let mut reason = None;
        for &i in edges {
            let e = &d.edges[i];
            if !e.term.is_canonical() {
                reason = Some(format!("edge {i} is not canonical: {}", e.term));
                break;
            }
            if d.nodes[e.src].tree.is_none() || d.nodes[e.dst].tree.is_none() {
                reason = Some(format!("edge {i} touches an untyped node"));
                break;
            }
        }
        if let Some(reason) = reason {
            outcomes.push(AssertOutcome::Deferred { reason });
            continue;
        }
        for &i in a.iter().chain(b) {
            let e = &d.edges[i];
            let (dom, cod) = e.term.signature()?;
            let (src, dst) = (d.tree_or_s(e.src), d.tree_or_s(e.dst));
            if dom != src {
                return Err(Error::typing(format!("source of edge {i}"), &src, &dom));
            }
            if cod != dst {
                return Err(Error::typing(format!("target of edge {i}"), &dst, &cod));
            }
        }
        let (pa, pb) = (path_permutation(d, a)?, path_permutation(d, b)?);
        outcomes.push(if pa == pb {
            AssertOutcome::Commutes
        } else {
            AssertOutcome::Differs {
                lhs: format!("{:?}", pa.0),
                rhs: format!("{:?}", pb.0),
            }
        });
    }
    Ok(DiagramReport {
        mode: "free",
        outcomes,
    })
}

fn path_arrow(arrows: &[PrefixArrow], path: &[usize]) -> Result<PrefixArrow> {
    let mut acc = arrows[path[0]].clone();
    for &i in &path[1..] {
        acc = arrows[i].compose(&acc)?;
    }
    Ok(acc)
}

/// Evaluates every path in the prefix model and compares normal forms.
pub fn check_model(d: &Diagram, s: &SelfSimilar) -> Result<DiagramReport> {
    d.check_typing()?;
    let arrows = d
        .edges
        .iter()
        .map(|e| e.term.eval(Some(s)))
        .collect::<Result<Vec<_>>>()?;
    let mut outcomes = Vec::new();
    for (a, b) in &d.asserts {
        let (fa, fb) = (path_arrow(&arrows, a)?, path_arrow(&arrows, b)?);
        outcomes.push(if fa == fb {
            AssertOutcome::Commutes
        } else {
            AssertOutcome::Differs {
                lhs: fa.term_list(),
                rhs: fb.term_list(),
            }
        });
    }
    Ok(DiagramReport {
        mode: "model",
        outcomes,
    })
}
