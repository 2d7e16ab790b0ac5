use std::collections::VecDeque;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ItemId;
use crate::error::{Error, Result};

/// Nested-array form of a rooted tree: a leaf is its item, an internal node
/// is `[left, right]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Nested {
    Leaf(ItemId),
    Node(Box<Nested>, Box<Nested>),
}

impl Nested {
    pub fn node(left: Nested, right: Nested) -> Nested {
        Nested::Node(Box::new(left), Box::new(right))
    }
}

/// Rooted binary tree over a flat arena.
///
/// Nodes `0..n` are the leaves (node `i` carries item `i`), nodes `n..2n-1`
/// are internal. Children are ordered.
#[derive(Debug, Clone)]
pub struct RootedBinaryTree {
    n: usize,
    children: Vec<[usize; 2]>,
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    root: usize,
}

impl RootedBinaryTree {
    /// Builds a tree from the child pairs of internal nodes `n, n+1, ...`.
    pub fn from_parts(n: usize, children: Vec<[usize; 2]>, root: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTree("a tree needs at least one leaf".into()));
        }
        if children.len() != n - 1 {
            return Err(Error::InvalidTree(format!(
                "{} leaves need {} internal nodes, got {}",
                n,
                n - 1,
                children.len()
            )));
        }
        let total = 2 * n - 1;
        if root >= total {
            return Err(Error::InvalidTree(format!("root {root} out of range")));
        }
        let mut parent = vec![None; total];
        for (k, pair) in children.iter().enumerate() {
            let v = n + k;
            for &c in pair {
                if c >= total {
                    return Err(Error::InvalidTree(format!("child {c} out of range")));
                }
                if parent[c].is_some() || c == root {
                    return Err(Error::InvalidTree(format!("node {c} has two parents")));
                }
                parent[c] = Some(v);
            }
        }
        let mut depth = vec![usize::MAX; total];
        depth[root] = 0;
        let mut stack = vec![root];
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            if v >= n {
                for &c in &children[v - n] {
                    depth[c] = depth[v] + 1;
                    stack.push(c);
                }
            }
        }
        if seen != total {
            return Err(Error::InvalidTree("nodes unreachable from the root".into()));
        }
        Ok(RootedBinaryTree { n, children, parent, depth, root })
    }

    pub fn single_leaf() -> Self {
        RootedBinaryTree::from_parts(1, Vec::new(), 0).expect("one-leaf tree")
    }

    pub fn from_nested(nested: &Nested) -> Result<Self> {
        let mut leaves = Vec::new();
        collect_leaves(nested, &mut leaves);
        let n = leaves.len();
        let mut seen = vec![false; n];
        for &leaf in &leaves {
            if leaf >= n || seen[leaf] {
                return Err(Error::InvalidTree(format!(
                    "leaves must be exactly the items 0..{n}, found {leaf}"
                )));
            }
            seen[leaf] = true;
        }
        let mut children = Vec::with_capacity(n.saturating_sub(1));
        let root = build_from_nested(nested, n, &mut children);
        RootedBinaryTree::from_parts(n, children, root)
    }

    pub fn to_nested(&self) -> Nested {
        self.nested_at(self.root)
    }

    fn nested_at(&self, v: usize) -> Nested {
        match self.children(v) {
            None => Nested::Leaf(v),
            Some([l, r]) => Nested::node(self.nested_at(l), self.nested_at(r)),
        }
    }

    pub fn n_leaves(&self) -> usize {
        self.n
    }

    pub fn n_internal(&self) -> usize {
        self.children.len()
    }

    pub fn n_nodes(&self) -> usize {
        self.parent.len()
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        v < self.n
    }

    pub fn children(&self, v: usize) -> Option<[usize; 2]> {
        if v < self.n {
            None
        } else {
            Some(self.children[v - self.n])
        }
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    /// Lowest common ancestor by parent walks.
    pub fn lca(&self, mut u: usize, mut v: usize) -> usize {
        while self.depth[u] > self.depth[v] {
            u = self.parent[u].expect("non-root has a parent");
        }
        while self.depth[v] > self.depth[u] {
            v = self.parent[v].expect("non-root has a parent");
        }
        while u != v {
            u = self.parent[u].expect("non-root has a parent");
            v = self.parent[v].expect("non-root has a parent");
        }
        u
    }

    /// Whether the tree resolves `{a, b, c}` as `ab|c`.
    pub fn obeys_triplet(&self, a: ItemId, b: ItemId, c: ItemId) -> bool {
        self.depth[self.lca(a, b)] > self.depth[self.lca(a, c)]
    }

    /// Internal nodes in preorder.
    pub fn internal_nodes_preorder(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.n_internal());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            if let Some([l, r]) = self.children(v) {
                out.push(v);
                stack.push(r);
                stack.push(l);
            }
        }
        out
    }

    /// Leaves from left to right.
    pub fn leaves_in_order(&self) -> Vec<ItemId> {
        self.leaves_in_order_with(|_| false)
    }

    /// Leaves from left to right, reading the children of every internal node
    /// `v` with `swapped(v)` in reverse.
    pub fn leaves_in_order_with(&self, swapped: impl Fn(usize) -> bool) -> Vec<ItemId> {
        let mut out = Vec::with_capacity(self.n);
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            match self.children(v) {
                None => out.push(v),
                Some([l, r]) => {
                    let (first, second) = if swapped(v) { (r, l) } else { (l, r) };
                    stack.push(second);
                    stack.push(first);
                }
            }
        }
        out
    }

    /// Leaves below `v`, left to right.
    pub fn leaves_below(&self, v: usize) -> Vec<ItemId> {
        let mut out = Vec::new();
        let mut stack = vec![v];
        while let Some(u) = stack.pop() {
            match self.children(u) {
                None => out.push(u),
                Some([l, r]) => {
                    stack.push(r);
                    stack.push(l);
                }
            }
        }
        out
    }

    /// Structural equality including child order.
    fn same_shape(&self, other: &Self) -> bool {
        if self.n != other.n {
            return false;
        }
        let mut stack = vec![(self.root, other.root)];
        while let Some((u, v)) = stack.pop() {
            match (self.children(u), other.children(v)) {
                (None, None) if u == v => {}
                (Some([a, b]), Some([c, d])) => {
                    stack.push((a, c));
                    stack.push((b, d));
                }
                _ => return false,
            }
        }
        true
    }
}

fn collect_leaves(nested: &Nested, out: &mut Vec<ItemId>) {
    match nested {
        Nested::Leaf(i) => out.push(*i),
        Nested::Node(l, r) => {
            collect_leaves(l, out);
            collect_leaves(r, out);
        }
    }
}

fn build_from_nested(nested: &Nested, n: usize, children: &mut Vec<[usize; 2]>) -> usize {
    match nested {
        Nested::Leaf(i) => *i,
        Nested::Node(l, r) => {
            let slot = children.len();
            children.push([0, 0]);
            let left = build_from_nested(l, n, children);
            let right = build_from_nested(r, n, children);
            children[slot] = [left, right];
            n + slot
        }
    }
}

impl PartialEq for RootedBinaryTree {
    fn eq(&self, other: &Self) -> bool {
        self.same_shape(other)
    }
}

impl Eq for RootedBinaryTree {}

impl Serialize for RootedBinaryTree {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_nested().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RootedBinaryTree {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let nested = Nested::deserialize(deserializer)?;
        RootedBinaryTree::from_nested(&nested).map_err(serde::de::Error::custom)
    }
}

/// Unrooted tree whose internal nodes all have degree 3.
///
/// Nodes `0..n` are the leaves (node `i` carries item `i`), the remaining
/// `n - 2` nodes are internal. Serialized as its adjacency list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnrootedTree {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl UnrootedTree {
    pub fn from_adjacency(adj: Vec<Vec<usize>>) -> Result<Self> {
        let total = adj.len();
        let n = match total {
            0 => return Err(Error::InvalidTree("a tree needs at least one leaf".into())),
            1 => 1,
            t if t % 2 == 0 => (t + 2) / 2,
            t => return Err(Error::InvalidTree(format!("{t} nodes cannot form a trivalent tree"))),
        };
        let mut edges = 0;
        for (v, nbrs) in adj.iter().enumerate() {
            let want = if v < n {
                usize::from(n > 1)
            } else {
                3
            };
            if nbrs.len() != want {
                return Err(Error::InvalidTree(format!(
                    "node {v} has degree {}, expected {want}",
                    nbrs.len()
                )));
            }
            for &u in nbrs {
                if u >= total || u == v {
                    return Err(Error::InvalidTree(format!("bad neighbour {u} of node {v}")));
                }
                if adj[u].iter().filter(|&&x| x == v).count() != 1 {
                    return Err(Error::InvalidTree(format!("edge {v}-{u} not symmetric")));
                }
            }
            edges += nbrs.len();
        }
        if edges / 2 != total - 1 {
            return Err(Error::InvalidTree("edge count does not match a tree".into()));
        }
        let mut seen = vec![false; total];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    reached += 1;
                    queue.push_back(u);
                }
            }
        }
        if reached != total {
            return Err(Error::InvalidTree("tree is not connected".into()));
        }
        Ok(UnrootedTree { n, adj })
    }

    pub fn n_leaves(&self) -> usize {
        self.n
    }

    pub fn n_nodes(&self) -> usize {
        self.adj.len()
    }

    pub fn n_internal(&self) -> usize {
        self.adj.len() - self.n
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        v < self.n
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adj
    }

    /// Every edge once, smaller endpoint first.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.adj.len().saturating_sub(1));
        for (v, nbrs) in self.adj.iter().enumerate() {
            for &u in nbrs {
                if v < u {
                    out.push((v, u));
                }
            }
        }
        out
    }

    /// The tree hung from `root`.
    pub fn rooted_at(&self, root: usize) -> Rooting {
        let total = self.adj.len();
        let mut parent = vec![None; total];
        let mut depth = vec![0; total];
        let mut order = Vec::with_capacity(total);
        let mut seen = vec![false; total];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &u in &self.adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = Some(v);
                    depth[u] = depth[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        Rooting { parent, depth, order }
    }

    /// Whether the tree resolves `{a, b, c, d}` as `ab|cd`.
    ///
    /// Uses the four-point condition on path lengths: the split `ab|cd` is
    /// displayed iff `d(a,b) + d(c,d)` is strictly the smallest of the three
    /// pairings.
    pub fn obeys_quartet(&self, a: ItemId, b: ItemId, c: ItemId, d: ItemId) -> bool {
        self.rooted_at(0).obeys_quartet(a, b, c, d)
    }
}

/// Parent pointers and depths of an unrooted tree hung from one node.
#[derive(Debug, Clone)]
pub struct Rooting {
    parent: Vec<Option<usize>>,
    depth: Vec<usize>,
    order: Vec<usize>,
}

impl Rooting {
    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }

    /// Nodes in breadth-first order from the root.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn lca(&self, mut u: usize, mut v: usize) -> usize {
        while self.depth[u] > self.depth[v] {
            u = self.parent[u].expect("non-root has a parent");
        }
        while self.depth[v] > self.depth[u] {
            v = self.parent[v].expect("non-root has a parent");
        }
        while u != v {
            u = self.parent[u].expect("non-root has a parent");
            v = self.parent[v].expect("non-root has a parent");
        }
        u
    }

    pub fn distance(&self, u: usize, v: usize) -> usize {
        let w = self.lca(u, v);
        self.depth[u] + self.depth[v] - 2 * self.depth[w]
    }

    pub fn obeys_quartet(&self, a: ItemId, b: ItemId, c: ItemId, d: ItemId) -> bool {
        let ab_cd = self.distance(a, b) + self.distance(c, d);
        let ac_bd = self.distance(a, c) + self.distance(b, d);
        let ad_bc = self.distance(a, d) + self.distance(b, c);
        ab_cd < ac_bd && ab_cd < ad_bc
    }
}

impl Serialize for UnrootedTree {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.adj.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for UnrootedTree {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let adj = Vec::<Vec<usize>>::deserialize(deserializer)?;
        UnrootedTree::from_adjacency(adj).map_err(serde::de::Error::custom)
    }
}
