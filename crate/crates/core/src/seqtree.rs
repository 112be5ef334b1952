//! Sequential trees and their rank functions.
//!
//! A sequential tree is a prefix-closed set of finite sequences of naturals,
//! ordered by reverse inclusion: extensions lie below, the empty sequence is
//! the top. The rank of a node is 0 at minimal nodes and otherwise the least
//! strict upper bound of the ranks of its extensions; on finite trees every
//! rank is a natural.
//!
//! Trees of infinite rank are described symbolically by a [`RankRecipe`] and
//! only ever materialized through bounded truncations.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ordinal::{OrdError, StdOrd};

pub type Seq = Vec<u64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SequentialTree {
    nodes: BTreeSet<Seq>,
}

/// Wire form: `{"nodes":[[ints],...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeqTreeJson {
    pub nodes: Vec<Seq>,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SeqTreeError {
    #[error("node {node:?} is present but its prefix {missing:?} is not")]
    NotPrefixClosed { node: Seq, missing: Seq },
    #[error("the empty tree has no rank")]
    Empty,
    #[error("invalid JSON: {0}")]
    Json(String),
}

impl SequentialTree {
    pub fn new(nodes: impl IntoIterator<Item = Seq>) -> Result<Self, SeqTreeError> {
        let nodes: BTreeSet<Seq> = nodes.into_iter().collect();
        for node in &nodes {
            if let Some((_, prefix)) = node.split_last() {
                if !nodes.contains(prefix) {
                    return Err(SeqTreeError::NotPrefixClosed {
                        node: node.clone(),
                        missing: prefix.to_vec(),
                    });
                }
            }
        }
        Ok(SequentialTree { nodes })
    }

    pub fn from_json_str(s: &str) -> Result<Self, SeqTreeError> {
        let json: SeqTreeJson =
            serde_json::from_str(s).map_err(|e| SeqTreeError::Json(e.to_string()))?;
        SequentialTree::new(json.nodes)
    }

    pub fn to_json(&self) -> SeqTreeJson {
        SeqTreeJson {
            nodes: self.nodes.iter().cloned().collect(),
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = &Seq> {
        self.nodes.iter()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, p: &[u64]) -> bool {
        self.nodes.contains(p)
    }

    /// `p <= q` iff `p` extends `q`.
    pub fn leq(p: &[u64], q: &[u64]) -> bool {
        p.starts_with(q)
    }

    /// Removes a node with no extensions; `None` if `p` is absent or has one.
    pub fn without_leaf(&self, p: &[u64]) -> Option<SequentialTree> {
        let has_child = self
            .nodes
            .range(p.to_vec()..)
            .nth(1)
            .is_some_and(|q| q.starts_with(p));
        if !self.nodes.contains(p) || has_child {
            return None;
        }
        let mut nodes = self.nodes.clone();
        nodes.remove(p);
        Some(SequentialTree { nodes })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankTable {
    pub ranks: BTreeMap<Seq, u64>,
    pub tree_rank: u64,
}

/// Ranks of every node, computed leaves-up over immediate extensions.
pub fn rank(tree: &SequentialTree) -> Result<RankTable, SeqTreeError> {
    if tree.is_empty() {
        return Err(SeqTreeError::Empty);
    }
    let mut by_depth: Vec<&Seq> = tree.nodes.iter().collect();
    by_depth.sort_by_key(|p| std::cmp::Reverse(p.len()));
    let mut ranks: BTreeMap<Seq, u64> = BTreeMap::new();
    for p in by_depth {
        let r = ranks.get(p).copied().unwrap_or(0);
        ranks.insert(p.clone(), r);
        if let Some((_, parent)) = p.split_last() {
            let slot = ranks.entry(parent.to_vec()).or_insert(0);
            *slot = (*slot).max(r + 1);
        }
    }
    let tree_rank = ranks[&Vec::new()];
    Ok(RankTable { ranks, tree_rank })
}

/// How a recipe node's children are generated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Children {
    /// Rank 0: no children.
    Leaf,
    /// Successor rank: a single child, labelled 0, of rank one less.
    Single(Box<RankRecipe>),
    /// Limit rank: child `k` has the `k`-th fundamental-sequence rank.
    Family(StdOrd),
}

/// A symbolic sequential tree of prescribed ordinal rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankRecipe {
    pub rank: StdOrd,
    pub children: Children,
}

impl RankRecipe {
    /// Child `k` of a family node, `None` for leaves and single-child nodes.
    pub fn family_child(&self, k: u64) -> Option<RankRecipe> {
        match &self.children {
            Children::Family(alpha) => Some(canonical_tree_unchecked(
                &alpha.fundamental(k).expect("family nodes have limit rank"),
            )),
            _ => None,
        }
    }

    /// Rank recomputed from the shape: 0 at leaves, one more than the child at
    /// single-child nodes, and at family nodes the limit whose fundamental
    /// sequence the children enumerate.
    pub fn symbolic_rank(&self) -> StdOrd {
        match &self.children {
            Children::Leaf => StdOrd::zero(),
            Children::Single(c) => c.symbolic_rank().succ(),
            Children::Family(alpha) => alpha.clone(),
        }
    }
}

fn canonical_tree_unchecked(alpha: &StdOrd) -> RankRecipe {
    let children = if alpha.is_zero() {
        Children::Leaf
    } else if let Some(prev) = alpha.predecessor() {
        Children::Single(Box::new(canonical_tree_unchecked(&prev)))
    } else {
        Children::Family(alpha.clone())
    };
    RankRecipe {
        rank: alpha.clone(),
        children,
    }
}

/// Canonical recipe of rank `alpha`, with `w^{...}` nesting at most
/// `max_depth`.
pub fn canonical_tree(alpha: &StdOrd, max_depth: usize) -> Result<RankRecipe, OrdError> {
    alpha.check_depth(max_depth)?;
    Ok(canonical_tree_unchecked(alpha))
}

/// Bounds for materializing a recipe.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Truncation {
    /// Family nodes keep children `0..width`.
    pub width: u64,
    /// Nodes at this length become leaves.
    pub depth: usize,
}

/// Materializes the recipe within the given bounds.
pub fn truncate(recipe: &RankRecipe, bounds: Truncation) -> SequentialTree {
    let mut nodes = BTreeSet::new();
    let mut stack = vec![(Vec::new(), recipe.clone())];
    while let Some((path, node)) = stack.pop() {
        if path.len() < bounds.depth {
            match &node.children {
                Children::Leaf => {}
                Children::Single(c) => {
                    let mut p = path.clone();
                    p.push(0);
                    stack.push((p, (**c).clone()));
                }
                Children::Family(_) => {
                    for k in 0..bounds.width {
                        let mut p = path.clone();
                        p.push(k);
                        stack.push((p, node.family_child(k).expect("family node")));
                    }
                }
            }
        }
        nodes.insert(path);
    }
    SequentialTree { nodes }
}
