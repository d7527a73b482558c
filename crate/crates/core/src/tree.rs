//! Free non-empty binary trees over the single symbol `S`.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;
use crate::word::LeafPath;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Leaf,
    Node(Box<Tree>, Box<Tree>),
}

impl Tree {
    pub fn leaf() -> Tree {
        Tree::Leaf
    }

    pub fn node(left: Tree, right: Tree) -> Tree {
        Tree::Node(Box::new(left), Box::new(right))
    }

    /// `S □ S`.
    pub fn pair() -> Tree {
        Tree::node(Tree::Leaf, Tree::Leaf)
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Tree::Leaf)
    }

    pub fn children(&self) -> Option<(&Tree, &Tree)> {
        match self {
            Tree::Leaf => None,
            Tree::Node(l, r) => Some((l, r)),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Tree::Leaf => 1,
            Tree::Node(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Tree::Leaf => 0,
            Tree::Node(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Leaf addresses in left-to-right order.
    pub fn leaves(&self) -> Vec<LeafPath> {
        let mut out = Vec::new();
        self.collect_leaves(LeafPath::root(), &mut out);
        out
    }

    fn collect_leaves(&self, at: LeafPath, out: &mut Vec<LeafPath>) {
        match self {
            Tree::Leaf => out.push(at),
            Tree::Node(l, r) => {
                l.collect_leaves(at.child(false), out);
                r.collect_leaves(at.child(true), out);
            }
        }
    }

    pub fn subtree(&self, path: &LeafPath) -> Option<&Tree> {
        let mut cur = self;
        for &step in path.steps() {
            let (l, r) = cur.children()?;
            cur = if step { r } else { l };
        }
        Some(cur)
    }

    pub fn has_leaf(&self, path: &LeafPath) -> bool {
        matches!(self.subtree(path), Some(Tree::Leaf))
    }

    /// Position of `path` in the left-to-right leaf order.
    pub fn leaf_index(&self, path: &LeafPath) -> Option<usize> {
        self.leaves().iter().position(|p| p == path)
    }

    /// Every tree shape with exactly `n` leaves, in a fixed order.
    pub fn all_with_leaves(n: usize) -> Vec<Tree> {
        if n == 0 {
            return Vec::new();
        }
        if n == 1 {
            return vec![Tree::Leaf];
        }
        let mut out = Vec::new();
        for k in 1..n {
            let lefts = Tree::all_with_leaves(k);
            let rights = Tree::all_with_leaves(n - k);
            for l in &lefts {
                for r in &rights {
                    out.push(Tree::node(l.clone(), r.clone()));
                }
            }
        }
        out
    }

    /// The right comb `S □ (S □ (… □ S))` with `n` leaves.
    pub fn right_comb(n: usize) -> Tree {
        assert!(n >= 1, "trees are non-empty");
        if n == 1 {
            Tree::Leaf
        } else {
            Tree::node(Tree::Leaf, Tree::right_comb(n - 1))
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Leaf => f.write_str("S"),
            Tree::Node(l, r) => write!(f, "({l} {r})"),
        }
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Tree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let value = crate::sexpr::parse_one(s)?;
        crate::sexpr::tree_from(&value)
    }
}
