//! Incremental tree construction by leaf insertion.

use rand::Rng;

use crate::model::{ItemId, RootedBinaryTree, UnrootedTree};

/// Growable rooted forest over a fixed leaf set `0..n`.
#[derive(Debug, Clone)]
pub(crate) struct RootedArena {
    n: usize,
    children: Vec<[usize; 2]>,
    parent: Vec<Option<usize>>,
}

impl RootedArena {
    pub(crate) fn new(n: usize) -> Self {
        RootedArena { n, children: Vec::with_capacity(n.saturating_sub(1)), parent: vec![None; n] }
    }

    fn push_internal(&mut self, left: usize, right: usize) -> usize {
        let u = self.n + self.children.len();
        self.children.push([left, right]);
        self.parent.push(None);
        self.parent[left] = Some(u);
        self.parent[right] = Some(u);
        u
    }

    /// New root over two detached subtrees.
    pub(crate) fn join(&mut self, left: usize, right: usize) -> usize {
        self.push_internal(left, right)
    }

    /// Splices `leaf` onto the edge above `x` and returns the new node.
    pub(crate) fn insert_above(&mut self, x: usize, leaf: ItemId, leaf_left: bool) -> usize {
        let above = self.parent[x];
        let u = if leaf_left { self.push_internal(leaf, x) } else { self.push_internal(x, leaf) };
        self.parent[u] = above;
        if let Some(p) = above {
            let pair = &mut self.children[p - self.n];
            if pair[0] == x {
                pair[0] = u;
            } else {
                pair[1] = u;
            }
        }
        u
    }

    /// Uniform random rooted tree on `items`; returns its root.
    pub(crate) fn random_subtree<R: Rng + ?Sized>(&mut self, items: &[ItemId], rng: &mut R) -> usize {
        let mut root = items[0];
        let mut nodes = Vec::with_capacity(2 * items.len());
        nodes.push(items[0]);
        for &leaf in &items[1..] {
            let x = nodes[rng.random_range(0..nodes.len())];
            let u = self.insert_above(x, leaf, rng.random_bool(0.5));
            if x == root {
                root = u;
            }
            nodes.push(leaf);
            nodes.push(u);
        }
        root
    }

    /// Edges of the forest as `(parent, child)`.
    pub(crate) fn parent_child_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.children.iter().enumerate().flat_map(move |(k, &[l, r])| [(self.n + k, l), (self.n + k, r)])
    }

    pub(crate) fn finish(self, root: usize) -> RootedBinaryTree {
        RootedBinaryTree::from_parts(self.n, self.children, root).expect("arena builds valid trees")
    }
}

/// Growable unrooted trivalent tree over the leaf set `0..n`.
#[derive(Debug, Clone)]
pub(crate) struct UnrootedArena {
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl UnrootedArena {
    /// The tree on the first `min(n, 3)` leaves.
    pub(crate) fn new(n: usize) -> Self {
        let mut adj = vec![Vec::new(); n];
        let mut edges = Vec::new();
        match n {
            0 | 1 => {}
            2 => {
                adj[0].push(1);
                adj[1].push(0);
                edges.push((0, 1));
            }
            _ => {
                adj.push(vec![0, 1, 2]);
                for leaf in 0..3 {
                    adj[leaf].push(n);
                    edges.push((leaf, n));
                }
            }
        }
        UnrootedArena { adj, edges }
    }

    pub(crate) fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Splices `leaf` onto edge number `e`.
    pub(crate) fn insert_on_edge(&mut self, e: usize, leaf: ItemId) {
        let (u, v) = self.edges[e];
        let w = self.adj.len();
        for (x, y) in [(u, v), (v, u)] {
            let slot = self.adj[x].iter().position(|&z| z == y).expect("edge present");
            self.adj[x][slot] = w;
        }
        self.adj.push(vec![u, v, leaf]);
        self.adj[leaf].push(w);
        self.edges[e] = (u, w);
        self.edges.push((w, v));
        self.edges.push((w, leaf));
    }

    pub(crate) fn finish(self) -> UnrootedTree {
        UnrootedTree::from_adjacency(self.adj).expect("arena builds valid trees")
    }
}
