use crate::graph::SignedGraph;

/// Incident arcs per node: `out` holds `(neighbour, weight)` for arcs
/// leaving the node (all edges when undirected), `inc` for arcs entering it.
pub(crate) struct Adjacency {
    directed: bool,
    out: Vec<Vec<(usize, f64)>>,
    inc: Vec<Vec<(usize, f64)>>,
}

impl Adjacency {
    pub(crate) fn new(g: &SignedGraph) -> Self {
        let n = g.n();
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        for e in g.edges() {
            out[e.u].push((e.v, e.w));
            if g.is_directed() {
                inc[e.v].push((e.u, e.w));
            } else {
                out[e.v].push((e.u, e.w));
            }
        }
        Adjacency { directed: g.is_directed(), out, inc }
    }

    /// Change in cut weight from moving `i` to the other side.
    pub(crate) fn gain(&self, side: &[bool], i: usize) -> f64 {
        let si = side[i];
        if !self.directed {
            return self.out[i].iter().map(|&(j, w)| if side[j] == si { w } else { -w }).sum();
        }
        let mut delta = 0.0;
        for &(j, w) in &self.out[i] {
            if !side[j] {
                delta += if si { -w } else { w };
            }
        }
        for &(j, w) in &self.inc[i] {
            if side[j] {
                delta += if si { w } else { -w };
            }
        }
        delta
    }
}

/// Moves the single vertex with the largest positive gain until none is left.
/// Returns the number of moves.
pub(crate) fn polish(adj: &Adjacency, side: &mut [bool]) -> usize {
    const MIN_GAIN: f64 = 1e-9;
    let n = side.len();
    let mut gains: Vec<f64> = (0..n).map(|i| adj.gain(side, i)).collect();
    let mut moves = 0;
    loop {
        let Some((i, &g)) = gains.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1).then(b.0.cmp(&a.0))) else {
            return moves;
        };
        if g <= MIN_GAIN {
            return moves;
        }
        side[i] = !side[i];
        moves += 1;
        gains[i] = adj.gain(side, i);
        for &(j, _) in adj.out[i].iter().chain(&adj.inc[i]) {
            gains[j] = adj.gain(side, j);
        }
    }
}
