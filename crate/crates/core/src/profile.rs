//! Correlation profiles of code sets over the full shift range.

use serde::Serialize;

use crate::corrcore::{auto_sum, cross_sum_pointwise, CorrelationValue, SequenceMatrix};
use crate::error::Result;

/// One point of a profile: the sum between codes `p` and `p_prime` at shift `lambda`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfileRow {
    pub p: usize,
    pub p_prime: usize,
    pub lambda: i64,
    pub value: CorrelationValue,
}

fn shifts(codes: &[SequenceMatrix]) -> std::ops::RangeInclusive<i64> {
    let l = codes.first().map_or(1, |c| c.n_cols()) as i64;
    -(l - 1)..=l - 1
}

/// Auto sums `Σ_j A(row_j)(λ)` of each code for `λ ∈ [−(L−1), L−1]`.
pub fn auto_profile(codes: &[SequenceMatrix]) -> Vec<ProfileRow> {
    let mut out = Vec::new();
    for (p, c) in codes.iter().enumerate() {
        for lambda in shifts(codes) {
            out.push(ProfileRow {
                p,
                p_prime: p,
                lambda,
                value: auto_sum(c, lambda),
            });
        }
    }
    out
}

/// Pointwise cross sums between every ordered pair of distinct codes.
pub fn cross_profile(codes: &[SequenceMatrix]) -> Result<Vec<ProfileRow>> {
    let mut out = Vec::new();
    for (p, c) in codes.iter().enumerate() {
        for (pp, d) in codes.iter().enumerate().filter(|&(pp, _)| pp != p) {
            for lambda in shifts(codes) {
                out.push(ProfileRow {
                    p,
                    p_prime: pp,
                    lambda,
                    value: cross_sum_pointwise(c, d, lambda)?,
                });
            }
        }
    }
    Ok(out)
}
