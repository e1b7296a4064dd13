//! Aperiodic correlation sums.
//!
//! Every entry is a power of `ξ`, so `a_i · conj(b_j) = ξ^{(e_a − e_b) mod q}`.
//! Sums are accumulated as a histogram over `Z_q` and converted to a value once,
//! which keeps the binary and quaternary paths in exact integer arithmetic.

use num_complex::Complex64;

use super::sequence::{PhaseSequence, SequenceMatrix};
use super::value::{CorrelationValue, Gaussian};
use crate::error::{Error, Result};

/// Counts of each phase difference `d ∈ Z_q` in a correlation sum.
#[derive(Debug, Clone)]
struct PhaseHistogram {
    q: u32,
    counts: Vec<i64>,
    scale: usize,
}

impl PhaseHistogram {
    fn new(q: u32, scale: usize) -> Self {
        PhaseHistogram {
            q,
            counts: vec![0; q as usize],
            scale,
        }
    }

    /// Adds the terms of `C(a,b)(λ)`; `a` and `b` must share `q` and `L`.
    fn add_accf(&mut self, a: &[u32], b: &[u32], lag: i64) {
        let l = a.len() as i64;
        if lag.abs() >= l {
            return;
        }
        let q = self.q;
        let (xs, ys) = if lag >= 0 {
            (&a[..(l - lag) as usize], &b[lag as usize..])
        } else {
            (&a[(-lag) as usize..], &b[..(l + lag) as usize])
        };
        for (&x, &y) in xs.iter().zip(ys) {
            self.counts[((x + q - y) % q) as usize] += 1;
        }
    }

    fn value(&self) -> CorrelationValue {
        if self.q == 2 || self.q == 4 {
            let step = (4 / self.q) as i64;
            let mut acc = Gaussian::ZERO;
            for (d, &c) in self.counts.iter().enumerate() {
                acc += Gaussian::i_pow(d as i64 * step) * Gaussian::from(c);
            }
            CorrelationValue::Exact(acc)
        } else {
            let w = std::f64::consts::TAU / self.q as f64;
            let value = self
                .counts
                .iter()
                .enumerate()
                .map(|(d, &c)| Complex64::from_polar(c as f64, w * d as f64))
                .sum();
            CorrelationValue::Approx {
                value,
                scale: self.scale,
            }
        }
    }
}

/// `C(a,b)(λ)`: `Σ_i a_i·conj(b_{i+λ})` for `λ ≥ 0`, `Σ_i a_{i−λ}·conj(b_i)` for
/// `λ < 0`, and zero once `|λ| ≥ L`.
pub fn accf(a: &PhaseSequence, b: &PhaseSequence, lag: i64) -> Result<CorrelationValue> {
    a.check_compatible(b)?;
    let mut h = PhaseHistogram::new(a.q(), a.len());
    h.add_accf(a.exps(), b.exps(), lag);
    Ok(h.value())
}

/// `A(a)(λ) = C(a,a)(λ)`.
pub fn aacf(a: &PhaseSequence, lag: i64) -> CorrelationValue {
    let mut h = PhaseHistogram::new(a.q(), a.len());
    h.add_accf(a.exps(), a.exps(), lag);
    h.value()
}

/// Direct complex multiply-and-add evaluation of `C(a,b)(λ)`.
///
/// Shares no code with [`accf`]; used to cross-check the exact path.
pub fn accf_float(a: &PhaseSequence, b: &PhaseSequence, lag: i64) -> Result<Complex64> {
    a.check_compatible(b)?;
    let (x, y) = (a.to_complex(), b.to_complex());
    let l = x.len() as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..l {
        let j = i + lag;
        if (0..l).contains(&j) {
            acc += x[i as usize] * y[j as usize].conj();
        }
    }
    Ok(acc)
}

/// Hermitian inner product `Σ u_i·conj(v_i)`.
pub fn dot(u: &PhaseSequence, v: &PhaseSequence) -> Result<CorrelationValue> {
    accf(u, v, 0)
}

/// `Σ_j A(row_j)(λ)`.
pub fn auto_sum(s: &SequenceMatrix, lag: i64) -> CorrelationValue {
    let mut h = PhaseHistogram::new(s.q(), s.n_cols());
    for r in s.rows() {
        h.add_accf(r.exps(), r.exps(), lag);
    }
    h.value()
}

/// `Σ_j C(row_j, row_{(j+1) mod M})(λ)`.
pub fn cross_sum_adjacent(s: &SequenceMatrix, lag: i64) -> CorrelationValue {
    let m = s.n_rows();
    let mut h = PhaseHistogram::new(s.q(), s.n_cols());
    for j in 0..m {
        h.add_accf(s.row(j).exps(), s.row((j + 1) % m).exps(), lag);
    }
    h.value()
}

/// `Σ_i C(S.row_i, S'.row_i)(λ)`.
pub fn cross_sum_pointwise(
    s: &SequenceMatrix,
    t: &SequenceMatrix,
    lag: i64,
) -> Result<CorrelationValue> {
    if s.q() != t.q() || s.n_rows() != t.n_rows() || s.n_cols() != t.n_cols() {
        return Err(Error::Dimension(format!(
            "pointwise sum needs equal shapes: {}x{} (q = {}) vs {}x{} (q = {})",
            s.n_rows(),
            s.n_cols(),
            s.q(),
            t.n_rows(),
            t.n_cols(),
            t.q()
        )));
    }
    let mut h = PhaseHistogram::new(s.q(), s.n_cols());
    for (x, y) in s.rows().iter().zip(t.rows()) {
        h.add_accf(x.exps(), y.exps(), lag);
    }
    Ok(h.value())
}
