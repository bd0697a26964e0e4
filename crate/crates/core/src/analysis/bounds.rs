//! Counting lower bound on the number of classes.
//!
//! A partition with `r` classes of points only, `s` of lines only and `t`
//! mixed classes can only resolve the `N = q^2+q+1` points if
//! `2^(r+t-1) (s+t) >= N`, and the lines if `2^(s+t-1) (r+t) >= N`.

use serde::Serialize;

use super::AnalysisError;

/// Side length of the `(r, s, t)` search box.
pub const BOX_LIMIT: u32 = 64;

const CAVEAT: &str = "with r = s = 0 points and lines are not automatically told apart; \
the value may need a +1 correction in edge cases";

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Inequality {
    /// `2^exponent * factor >= rhs`.
    pub exponent: u32,
    pub factor: u32,
    pub rhs: u64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LowerBoundResult {
    pub q: u32,
    pub r: u32,
    pub s: u32,
    pub t: u32,
    pub total: u32,
    pub point_side: Inequality,
    pub line_side: Inequality,
    /// Smallest `t` with `t 2^(t-1) >= q^2+q+1`.
    pub pure_mixed_t: u32,
    pub caveat: &'static str,
}

/// `2^exponent * factor >= rhs`, exactly.
fn power_times_at_least(exponent: u32, factor: u32, rhs: u64) -> bool {
    if factor == 0 {
        return rhs == 0;
    }
    if exponent >= 64 {
        return true;
    }
    (1u128 << exponent) * factor as u128 >= rhs as u128
}

fn inequality(capacity: u32, factor: u32, rhs: u64) -> Inequality {
    // Callers guarantee capacity >= 1.
    let exponent = capacity - 1;
    Inequality { exponent, factor, rhs, holds: power_times_at_least(exponent, factor, rhs) }
}

fn feasible(r: u32, s: u32, t: u32, points: u64) -> bool {
    r + t >= 1
        && s + t >= 1
        && power_times_at_least(r + t - 1, s + t, points)
        && power_times_at_least(s + t - 1, r + t, points)
}

pub fn lower_bound(q: u32) -> Result<LowerBoundResult, AnalysisError> {
    if q < 2 {
        return Err(AnalysisError::OrderTooSmall { q, min: 2 });
    }
    let points = q as u64 * q as u64 + q as u64 + 1;
    let mut best: Option<(u32, u32, u32, u32)> = None;
    for r in 0..=BOX_LIMIT {
        for s in 0..=BOX_LIMIT {
            for t in 0..=BOX_LIMIT {
                if !feasible(r, s, t, points) {
                    continue;
                }
                let total = r + s + t;
                if best.is_none_or(|b| total < b.0) {
                    best = Some((total, r, s, t));
                }
                // Larger t only increases the total.
                break;
            }
        }
    }
    let (total, r, s, t) = best.ok_or(AnalysisError::BoxExhausted { q })?;
    let pure_mixed_t = (1..=BOX_LIMIT)
        .find(|&t| power_times_at_least(t - 1, t, points))
        .ok_or(AnalysisError::BoxExhausted { q })?;
    Ok(LowerBoundResult {
        q,
        r,
        s,
        t,
        total,
        point_side: inequality(r + t, s + t, points),
        line_side: inequality(s + t, r + t, points),
        pure_mixed_t,
        caveat: CAVEAT,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_examples() {
        let b = lower_bound(2).unwrap();
        assert_eq!((b.r, b.s, b.t, b.total, b.pure_mixed_t), (0, 0, 3, 3, 3));
        assert!(b.point_side.holds && b.line_side.holds);
        assert_eq!(lower_bound(3).unwrap().total, 4);
        let b = lower_bound(16).unwrap();
        assert_eq!((b.total, b.pure_mixed_t), (7, 7));
        assert_eq!(b.point_side, Inequality { exponent: 6, factor: 7, rhs: 273, holds: true });
    }

    #[test]
    fn rejects_tiny_orders() {
        assert!(lower_bound(1).is_err());
        assert!(lower_bound(0).is_err());
    }

    #[test]
    fn exact_comparison_edges() {
        assert!(power_times_at_least(2, 3, 12));
        assert!(!power_times_at_least(2, 3, 13));
        assert!(power_times_at_least(70, 1, u64::MAX));
        assert!(!power_times_at_least(3, 0, 1));
    }

    #[test]
    fn optimum_is_minimal_in_the_box() {
        for q in [2u32, 5, 9, 31, 64] {
            let b = lower_bound(q).unwrap();
            let n = q as u64 * q as u64 + q as u64 + 1;
            for r in 0..=12 {
                for s in 0..=12 {
                    for t in 0..=12 {
                        if r + s + t < b.total {
                            assert!(!feasible(r, s, t, n), "q={q} ({r},{s},{t})");
                        }
                    }
                }
            }
        }
    }
}
