use std::collections::BTreeMap;

use rand::Rng;
use rand_distr::StandardNormal;

use crate::graph::SignedGraph;

/// Unit vectors, one row per node, plus `v0` as the last row for directed graphs.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddingVectors {
    dim: usize,
    data: Vec<f64>,
    v0_index: Option<usize>,
}

impl EmbeddingVectors {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn v0_index(&self) -> Option<usize> {
        self.v0_index
    }

    /// Largest deviation of a row norm from one.
    pub fn max_norm_error(&self) -> f64 {
        (0..self.rows()).map(|i| (norm(self.row(i)) - 1.0).abs()).fold(0.0, f64::max)
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Update rule for the relaxation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ascent {
    /// Simultaneous gradient step of size `1/L`, then row renormalization.
    ProjectedGradient,
    /// Each row in turn set to its normalized gradient, the exact maximizer
    /// with the other rows held fixed.
    BlockCoordinate,
}

/// The relaxation written as `constant + sum_{p<q} C[p][q] <v_p, v_q>`,
/// stored as a symmetric sparse matrix.
#[derive(Debug, Clone)]
pub(crate) struct Couplings {
    rows: usize,
    constant: f64,
    offsets: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<f64>,
    /// Twice the largest absolute row sum of the weight matrix, with each
    /// coupling counted as half a weight.
    lipschitz: f64,
    v0_index: Option<usize>,
}

impl Couplings {
    /// Undirected, each edge once: `1/2 sum w (1 - v_i.v_j)`. Directed, with
    /// `v0` as row `n`: `1/4 sum w (1 + v0.v_i - v0.v_j - v_i.v_j)`, which
    /// equals the directed cut weight at `v_i = v0` for `i` in S and
    /// `v_i = -v0` otherwise.
    pub(crate) fn new(g: &SignedGraph) -> Self {
        let n = g.n();
        let directed = g.is_directed();
        let rows = if directed { n + 1 } else { n };
        let mut constant = 0.0;
        let mut acc: BTreeMap<(usize, usize), f64> = BTreeMap::new();
        let mut add = |p: usize, q: usize, c: f64| {
            let key = if p < q { (p, q) } else { (q, p) };
            *acc.entry(key).or_insert(0.0) += c;
        };
        for e in g.edges() {
            if directed {
                constant += 0.25 * e.w;
                add(e.u, e.v, -0.25 * e.w);
                add(n, e.u, 0.25 * e.w);
                add(n, e.v, -0.25 * e.w);
            } else {
                constant += 0.5 * e.w;
                add(e.u, e.v, -0.5 * e.w);
            }
        }
        let mut degree = vec![0usize; rows];
        for (&(p, q), &c) in &acc {
            if c != 0.0 {
                degree[p] += 1;
                degree[q] += 1;
            }
        }
        let mut offsets = vec![0; rows + 1];
        for p in 0..rows {
            offsets[p + 1] = offsets[p] + degree[p];
        }
        let mut fill = offsets.clone();
        let mut cols = vec![0; offsets[rows]];
        let mut vals = vec![0.0; offsets[rows]];
        for (&(p, q), &c) in &acc {
            if c == 0.0 {
                continue;
            }
            cols[fill[p]] = q;
            vals[fill[p]] = c;
            fill[p] += 1;
            cols[fill[q]] = p;
            vals[fill[q]] = c;
            fill[q] += 1;
        }
        let max_row = (0..rows)
            .map(|p| vals[offsets[p]..offsets[p + 1]].iter().map(|c| 2.0 * c.abs()).sum::<f64>())
            .fold(0.0, f64::max);
        Couplings {
            rows,
            constant,
            offsets,
            cols,
            vals,
            lipschitz: 2.0 * max_row,
            v0_index: directed.then_some(n),
        }
    }

    fn gradient_into(&self, data: &[f64], k: usize, p: usize, out: &mut [f64]) {
        out.fill(0.0);
        for idx in self.offsets[p]..self.offsets[p + 1] {
            let q = self.cols[idx];
            let c = self.vals[idx];
            for (o, x) in out.iter_mut().zip(&data[q * k..(q + 1) * k]) {
                *o += c * x;
            }
        }
    }

    /// Relaxation value of an embedding.
    pub(crate) fn value(&self, data: &[f64], k: usize) -> f64 {
        let mut g = vec![0.0; k];
        let mut twice = 0.0;
        for p in 0..self.rows {
            self.gradient_into(data, k, p, &mut g);
            twice += dot(&data[p * k..(p + 1) * k], &g);
        }
        self.constant + 0.5 * twice
    }

    /// Relaxation value at the `{+1, -1}` embedding of a cut.
    pub(crate) fn value_at_cut(&self, side: &[bool]) -> f64 {
        let x = |p: usize| -> f64 {
            if Some(p) == self.v0_index || side[p] {
                1.0
            } else {
                -1.0
            }
        };
        let mut twice = 0.0;
        for p in 0..self.rows {
            for idx in self.offsets[p]..self.offsets[p + 1] {
                twice += self.vals[idx] * x(p) * x(self.cols[idx]);
            }
        }
        self.constant + 0.5 * twice
    }
}

pub(crate) struct Relaxed {
    pub(crate) embedding: EmbeddingVectors,
    pub(crate) value: f64,
}

fn normalize(v: &mut [f64]) {
    let len = norm(v);
    if len > 0.0 {
        for x in v.iter_mut() {
            *x /= len;
        }
    } else {
        v[0] = 1.0;
    }
}

/// Locally maximizes the relaxation from a random start.
pub(crate) fn relax<R: Rng + ?Sized>(
    c: &Couplings,
    k: usize,
    method: Ascent,
    max_iterations: usize,
    tolerance: f64,
    rng: &mut R,
) -> Relaxed {
    let rows = c.rows;
    let mut data: Vec<f64> = (0..rows * k).map(|_| rng.sample(StandardNormal)).collect();
    for p in 0..rows {
        normalize(&mut data[p * k..(p + 1) * k]);
    }
    let mut value = c.value(&data, k);
    let mut iterations = 0;
    let mut g = vec![0.0; k];
    match method {
        Ascent::BlockCoordinate => {
            while iterations < max_iterations {
                iterations += 1;
                let before = value;
                for p in 0..rows {
                    c.gradient_into(&data, k, p, &mut g);
                    let len = norm(&g);
                    if len <= 1e-300 {
                        continue;
                    }
                    let row = &mut data[p * k..(p + 1) * k];
                    let mut delta = 0.0;
                    for (x, gi) in row.iter_mut().zip(&g) {
                        let new = gi / len;
                        delta += (new - *x) * gi;
                        *x = new;
                    }
                    value += delta;
                }
                if (value - before).abs() <= tolerance * before.abs().max(1.0) {
                    break;
                }
            }
            value = c.value(&data, k);
        }
        Ascent::ProjectedGradient => {
            let step = if c.lipschitz > 0.0 { 1.0 / c.lipschitz } else { 0.0 };
            let mut grad = vec![0.0; rows * k];
            let mut previous = value;
            while iterations < max_iterations {
                let mut twice = 0.0;
                for p in 0..rows {
                    let gp = &mut grad[p * k..(p + 1) * k];
                    c.gradient_into(&data, k, p, gp);
                    twice += dot(&data[p * k..(p + 1) * k], gp);
                }
                let current = c.constant + 0.5 * twice;
                if iterations > 0 && (current - previous).abs() <= tolerance * previous.abs().max(1.0) {
                    break;
                }
                previous = current;
                iterations += 1;
                for (x, gi) in data.iter_mut().zip(&grad) {
                    *x += step * gi;
                }
                for p in 0..rows {
                    normalize(&mut data[p * k..(p + 1) * k]);
                }
            }
            value = c.value(&data, k);
        }
    }
    Relaxed { embedding: EmbeddingVectors { dim: k, data, v0_index: c.v0_index }, value }
}
