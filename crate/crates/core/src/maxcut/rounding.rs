use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;

use super::relax::{dot, norm, EmbeddingVectors};
use crate::error::{Error, Result};

/// Rotation `theta/2 + (pi/4)(1 - cos theta)` applied to the angle from `v0`.
pub fn f_half(theta: f64) -> Result<f64> {
    if !(0.0..=PI).contains(&theta) {
        return Err(Error::DomainViolation(theta));
    }
    Ok(0.5 * theta + 0.25 * PI * (1.0 - theta.cos()))
}

/// Probability that a uniform random hyperplane leaves `v_i`, `v_j` and `v0`
/// on one side, given their pairwise angles.
///
/// The angles must be realizable by three unit vectors; this is not checked.
pub fn same_side_probability(theta_ij: f64, theta_j0: f64, theta_i0: f64) -> f64 {
    1.0 - (theta_ij + theta_j0 + theta_i0) / (2.0 * PI)
}

/// Rows after moving each `v_i` within the plane of `v0` and `v_i` to the
/// angle `f_half(theta_0i)` from `v0`. `v0` itself is unchanged.
pub(crate) fn rotated_rows(e: &EmbeddingVectors) -> Vec<Vec<f64>> {
    let v0 = e.v0_index().expect("rotation needs v0");
    let z = e.row(v0);
    (0..e.rows())
        .map(|i| {
            let v = e.row(i);
            if i == v0 {
                return v.to_vec();
            }
            let cos = dot(z, v).clamp(-1.0, 1.0);
            let mut u: Vec<f64> = v.iter().zip(z).map(|(x, zi)| x - cos * zi).collect();
            let len = norm(&u);
            if len < 1e-12 {
                return v.to_vec();
            }
            u.iter_mut().for_each(|x| *x /= len);
            let target = f_half(cos.acos()).expect("acos lies in [0, pi]");
            let (s, c) = target.sin_cos();
            z.iter().zip(&u).map(|(zi, ui)| c * zi + s * ui).collect()
        })
        .collect()
}

pub(crate) fn random_direction<R: Rng + ?Sized>(k: usize, rng: &mut R) -> Vec<f64> {
    (0..k).map(|_| rng.sample(StandardNormal)).collect()
}

/// Undirected rounding: `i` joins S when `v_i . r >= 0`.
pub(crate) fn split_undirected(rows: &[&[f64]], r: &[f64], side: &mut [bool]) {
    for (s, v) in side.iter_mut().zip(rows) {
        *s = dot(v, r) >= 0.0;
    }
}

/// Directed rounding: `i` joins S when `v_i` falls on the side of `v0`;
/// `v_i . r == 0` counts as joining.
pub(crate) fn split_directed(rows: &[&[f64]], v0: &[f64], r: &[f64], side: &mut [bool]) {
    let s0 = dot(v0, r) >= 0.0;
    for (s, v) in side.iter_mut().zip(rows) {
        let d = dot(v, r);
        *s = d == 0.0 || (d > 0.0) == s0;
    }
}
