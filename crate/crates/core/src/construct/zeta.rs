//! ζ-sets: half of a major line's points plus the lines from a major point
//! to the other half.

use rand::seq::{index, SliceRandom};
use rand::Rng;
use serde::Serialize;

use super::{ConstructError, Frame};
use crate::metric::VertexSet;
use crate::plane::{IncidencePlane, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZetaSet {
    pub base_point: u32,
    pub base_line: u32,
    /// `⌊q/2⌋` points of the base line, support point excluded.
    pub point_half: Vec<u32>,
    /// The remaining points of the base line; each defines one line of
    /// `line_half` through the base point.
    pub complement: Vec<u32>,
    pub line_half: Vec<u32>,
}

impl ZetaSet {
    pub fn len(&self) -> usize {
        self.point_half.len() + self.line_half.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_vertex_set(&self, n: usize) -> VertexSet {
        VertexSet::from_vertices(
            n,
            self.point_half
                .iter()
                .map(|&p| VertexId::point(p))
                .chain(self.line_half.iter().map(|&l| VertexId::line(l))),
        )
    }
}

/// Draws `k` ζ-sets on distinct base points and distinct base lines.
///
/// Both major lists are shuffled in full before any half is drawn, so for a
/// fixed RNG state the first `k` sets do not depend on `k`.
pub fn sample_zeta_sets<R: Rng + ?Sized>(
    plane: &IncidencePlane,
    frame: &Frame,
    k: usize,
    rng: &mut R,
) -> Result<Vec<ZetaSet>, ConstructError> {
    let q = plane.q() as usize;
    if k > q {
        return Err(ConstructError::OrderTooSmall { q: plane.q(), k });
    }
    let mut points = frame.major_points.clone();
    let mut lines = frame.major_lines.clone();
    points.shuffle(rng);
    lines.shuffle(rng);
    let mut out = Vec::with_capacity(k);
    for (&base_point, &base_line) in points.iter().zip(&lines).take(k) {
        let on_line: Vec<u32> =
            plane.points_on(base_line).iter().copied().filter(|&p| p != frame.support_point).collect();
        debug_assert_eq!(on_line.len(), q);
        let mut chosen = vec![false; q];
        for i in index::sample(rng, q, q / 2) {
            chosen[i] = true;
        }
        let (mut point_half, mut complement) = (Vec::new(), Vec::new());
        for (i, &p) in on_line.iter().enumerate() {
            if chosen[i] {
                point_half.push(p);
            } else {
                complement.push(p);
            }
        }
        let mut line_half: Vec<u32> = complement
            .iter()
            .map(|&x| plane.join(base_point, x).expect("distinct points span a line"))
            .collect();
        line_half.sort_unstable();
        point_half.sort_unstable();
        out.push(ZetaSet { base_point, base_line, point_half, complement, line_half });
    }
    Ok(out)
}

/// Both sides of the per-pair inequality behind the ζ-set lemma:
/// `lhs = (q-k+1)/(q+1) r^k + k/(q+1) (q-1)/q r^(k-1)` with
/// `r = (q-2)/(2q-2)`, and `rhs = 2^-k`.
pub fn separation_probability_bound(q: u32, k: u32) -> (f64, f64) {
    let qf = q as f64;
    let kf = k as f64;
    let r = (qf - 2.0) / (2.0 * qf - 2.0);
    let lhs = (qf - kf + 1.0) / (qf + 1.0) * r.powi(k as i32)
        + kf / (qf + 1.0) * ((qf - 1.0) / qf * r.powi(k as i32 - 1));
    (lhs, 0.5f64.powi(k as i32))
}

/// `m(k) = 2 C(q^2, 2) / 2^k`, the bound on pairs left unseparated.
pub fn expected_collision_bound(q: u32, k: u32) -> f64 {
    let q2 = (q as f64) * (q as f64);
    q2 * (q2 - 1.0) / 2f64.powi(k as i32)
}
