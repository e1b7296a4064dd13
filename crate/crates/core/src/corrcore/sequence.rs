use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::value::Gaussian;
use crate::error::{range_check, Error, Result};

/// A length-`L` sequence of `Z_q` phase exponents. Entry `i` evaluates to
/// `ξ^exps[i]` with `ξ = e^{2πi/q}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PhaseSequence {
    q: u32,
    exps: Vec<u32>,
}

pub(crate) fn check_modulus(q: u32) -> Result<()> {
    if q < 2 || !q.is_multiple_of(2) {
        return Err(Error::Argument(format!(
            "phase modulus q must be an even integer >= 2, got {q}"
        )));
    }
    Ok(())
}

impl PhaseSequence {
    pub fn new(q: u32, exps: Vec<u32>) -> Result<Self> {
        check_modulus(q)?;
        if exps.is_empty() {
            return Err(Error::Dimension(
                "sequence length must be at least 1".into(),
            ));
        }
        if let Some(&e) = exps.iter().find(|&&e| e >= q) {
            return Err(Error::Argument(format!(
                "exponent {e} is not reduced modulo q = {q}"
            )));
        }
        Ok(PhaseSequence { q, exps })
    }

    /// Builds a sequence from arbitrary integer exponents, reducing them mod `q`.
    pub fn from_exponents(q: u32, exps: impl IntoIterator<Item = i64>) -> Result<Self> {
        check_modulus(q)?;
        let exps = exps
            .into_iter()
            .map(|e| e.rem_euclid(q as i64) as u32)
            .collect();
        PhaseSequence::new(q, exps)
    }

    /// Binary sequence from `±1` entries.
    pub fn from_bipolar(values: &[i64]) -> Result<Self> {
        let exps = values
            .iter()
            .map(|&v| match v {
                1 => Ok(0),
                -1 => Ok(1),
                other => Err(Error::Argument(format!(
                    "bipolar entries must be +1 or -1, got {other}"
                ))),
            })
            .collect::<Result<Vec<u32>>>()?;
        PhaseSequence::new(2, exps)
    }

    /// Recovers exponents from Gaussian units. Only `q ∈ {2, 4}` can hold them.
    pub fn from_gaussian(q: u32, values: &[Gaussian]) -> Result<Self> {
        if q != 2 && q != 4 {
            return Err(Error::Argument(format!(
                "Gaussian-unit sequences need q in {{2, 4}}, got {q}"
            )));
        }
        let step = 4 / q;
        let exps = values
            .iter()
            .map(|g| {
                let e = g.unit_exponent().ok_or_else(|| {
                    Error::ConstructionInvariant(format!("entry {g} is not a unit"))
                })?;
                if e % step != 0 {
                    return Err(Error::ConstructionInvariant(format!(
                        "entry {g} is not a {q}-th root of unity"
                    )));
                }
                Ok(e / step)
            })
            .collect::<Result<Vec<u32>>>()?;
        PhaseSequence::new(q, exps)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    /// Always false: sequences have length at least one.
    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    /// True when correlation sums can be carried in Gaussian integers.
    pub fn is_exact(&self) -> bool {
        self.q == 2 || self.q == 4
    }

    /// `±1` entries, binary sequences only.
    pub fn to_bipolar(&self) -> Option<Vec<i64>> {
        (self.q == 2).then(|| self.exps.iter().map(|&e| 1 - 2 * e as i64).collect())
    }

    /// Entries as Gaussian units, `q ∈ {2, 4}` only.
    pub fn to_gaussian(&self) -> Option<Vec<Gaussian>> {
        if !self.is_exact() {
            return None;
        }
        let step = (4 / self.q) as i64;
        Some(
            self.exps
                .iter()
                .map(|&e| Gaussian::i_pow(e as i64 * step))
                .collect(),
        )
    }

    pub fn to_complex(&self) -> Vec<Complex64> {
        let w = std::f64::consts::TAU / self.q as f64;
        self.exps
            .iter()
            .map(|&e| Complex64::from_polar(1.0, w * e as f64))
            .collect()
    }

    fn map_exps(&self, f: impl Fn(u32) -> i64) -> PhaseSequence {
        let q = self.q as i64;
        PhaseSequence {
            q: self.q,
            exps: self
                .exps
                .iter()
                .map(|&e| f(e).rem_euclid(q) as u32)
                .collect(),
        }
    }

    /// `−v`.
    pub fn negate(&self) -> PhaseSequence {
        let half = (self.q / 2) as i64;
        self.map_exps(|e| e as i64 + half)
    }

    /// Complex conjugate `v*`.
    pub fn conj(&self) -> PhaseSequence {
        self.map_exps(|e| -(e as i64))
    }

    /// Multiplies every entry by `ξ^shift`.
    pub fn rotate_phase(&self, shift: i64) -> PhaseSequence {
        self.map_exps(|e| e as i64 + shift)
    }

    pub fn reversed(&self) -> PhaseSequence {
        let mut exps = self.exps.clone();
        exps.reverse();
        PhaseSequence { q: self.q, exps }
    }

    /// Entry-wise product `u ⊙ v`.
    pub fn elementwise(&self, other: &PhaseSequence) -> Result<PhaseSequence> {
        self.check_compatible(other)?;
        Ok(PhaseSequence {
            q: self.q,
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| (a + b) % self.q)
                .collect(),
        })
    }

    /// Keeps the first `len` entries (the `a^{len}` truncation).
    pub fn truncated(&self, len: usize) -> Result<PhaseSequence> {
        range_check("truncated length", len as i64, 1, self.len() as i64)?;
        Ok(PhaseSequence {
            q: self.q,
            exps: self.exps[..len].to_vec(),
        })
    }

    /// Concatenation `(u, v)`.
    pub fn concat(&self, other: &PhaseSequence) -> Result<PhaseSequence> {
        if self.q != other.q {
            return Err(Error::Dimension(format!(
                "cannot concatenate q = {} with q = {}",
                self.q, other.q
            )));
        }
        let mut exps = self.exps.clone();
        exps.extend_from_slice(&other.exps);
        Ok(PhaseSequence { q: self.q, exps })
    }

    pub(crate) fn check_compatible(&self, other: &PhaseSequence) -> Result<()> {
        if self.q != other.q {
            return Err(Error::Dimension(format!(
                "phase moduli differ: {} vs {}",
                self.q, other.q
            )));
        }
        if self.len() != other.len() {
            return Err(Error::Dimension(format!(
                "lengths differ: {} vs {}",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for PhaseSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_bipolar() {
            Some(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
            None => {
                let parts: Vec<String> = self.exps.iter().map(|x| x.to_string()).collect();
                write!(f, "ξ^({}) mod {}", parts.join(","), self.q)
            }
        }
    }
}

/// `T^k(v) = (v_{k−1}, …, v_0, v_{L−1}, …, v_k)` for `1 ≤ k ≤ L`.
pub fn shift_forward(v: &PhaseSequence, k: usize) -> Result<PhaseSequence> {
    let n = v.len();
    range_check("forward shift k", k as i64, 1, n as i64)?;
    let exps = (0..n).map(|m| v.exps[(k + n - 1 - m) % n]).collect();
    Ok(PhaseSequence { q: v.q, exps })
}

/// `k`-fold right rotation `(v_{L−1}, v_0, …, v_{L−2})`, `0 ≤ k ≤ L−1`.
pub fn shift_right(v: &PhaseSequence, k: usize) -> Result<PhaseSequence> {
    let n = v.len();
    range_check("right shift k", k as i64, 0, n as i64 - 1)?;
    let exps = (0..n).map(|m| v.exps[(m + n - k) % n]).collect();
    Ok(PhaseSequence { q: v.q, exps })
}

/// Kronecker product of plain vectors: entry `i·len(b) + j` is `a_i·b_j`.
pub fn kronecker<T: Copy + Mul<Output = T>>(a: &[T], b: &[T]) -> Vec<T> {
    a.iter()
        .flat_map(|&x| b.iter().map(move |&y| x * y))
        .collect()
}

/// `M` rows of identical length and modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SequenceMatrix {
    q: u32,
    rows: Vec<PhaseSequence>,
}

impl SequenceMatrix {
    pub fn new(rows: Vec<PhaseSequence>) -> Result<Self> {
        let first = rows
            .first()
            .ok_or_else(|| Error::Dimension("a matrix needs at least one row".into()))?;
        let (q, len) = (first.q, first.len());
        for (i, r) in rows.iter().enumerate() {
            if r.q != q || r.len() != len {
                return Err(Error::Dimension(format!(
                    "row {i} has (q = {}, L = {}), expected (q = {q}, L = {len})",
                    r.q,
                    r.len()
                )));
            }
        }
        Ok(SequenceMatrix { q, rows })
    }

    pub fn from_exponents(q: u32, rows: Vec<Vec<u32>>) -> Result<Self> {
        let rows = rows
            .into_iter()
            .map(|r| PhaseSequence::new(q, r))
            .collect::<Result<Vec<_>>>()?;
        SequenceMatrix::new(rows)
    }

    pub fn from_bipolar(rows: &[Vec<i64>]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| PhaseSequence::from_bipolar(r))
            .collect::<Result<Vec<_>>>()?;
        SequenceMatrix::new(rows)
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.rows[0].len()
    }

    /// True when correlation sums can be carried in Gaussian integers.
    pub fn is_exact(&self) -> bool {
        self.q == 2 || self.q == 4
    }

    pub fn is_square(&self) -> bool {
        self.n_rows() == self.n_cols()
    }

    pub fn rows(&self) -> &[PhaseSequence] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &PhaseSequence {
        &self.rows[i]
    }

    pub fn exponents(&self) -> Vec<Vec<u32>> {
        self.rows.iter().map(|r| r.exps.clone()).collect()
    }

    pub fn to_bipolar(&self) -> Option<Vec<Vec<i64>>> {
        self.rows.iter().map(|r| r.to_bipolar()).collect()
    }

    pub fn negate(&self) -> SequenceMatrix {
        SequenceMatrix {
            q: self.q,
            rows: self.rows.iter().map(|r| r.negate()).collect(),
        }
    }

    /// `[self, other]` side by side.
    pub fn hstack(&self, other: &SequenceMatrix) -> Result<SequenceMatrix> {
        if self.n_rows() != other.n_rows() {
            return Err(Error::Dimension(format!(
                "hstack needs equal row counts: {} vs {}",
                self.n_rows(),
                other.n_rows()
            )));
        }
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.concat(b))
            .collect::<Result<Vec<_>>>()?;
        SequenceMatrix::new(rows)
    }

    /// `self` stacked above `other`.
    pub fn vstack(&self, other: &SequenceMatrix) -> Result<SequenceMatrix> {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        SequenceMatrix::new(rows)
    }

    /// Multiplies every row entry-wise by `r` (the `r ⊙ M` broadcast).
    pub fn broadcast_product(&self, r: &PhaseSequence) -> Result<SequenceMatrix> {
        let rows = self
            .rows
            .iter()
            .map(|row| r.elementwise(row))
            .collect::<Result<Vec<_>>>()?;
        SequenceMatrix::new(rows)
    }
}

impl fmt::Display for SequenceMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

/// `Cir(a)`: row `i` is `T^{i+1}(a)`, so entry `[i][j] = a_{(i−j) mod L}`.
pub fn circulant(a: &PhaseSequence) -> SequenceMatrix {
    let rows = (1..=a.len())
        .map(|k| shift_forward(a, k).expect("k within [1, L]"))
        .collect();
    SequenceMatrix { q: a.q, rows }
}

/// Removes the last `k` columns, `0 ≤ k < L`.
pub fn truncate_columns(m: &SequenceMatrix, k: usize) -> Result<SequenceMatrix> {
    let l = m.n_cols();
    range_check("truncation k", k as i64, 0, l as i64 - 1)?;
    let rows = m
        .rows
        .iter()
        .map(|r| r.truncated(l - k))
        .collect::<Result<Vec<_>>>()?;
    SequenceMatrix::new(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bip(v: &[i64]) -> PhaseSequence {
        PhaseSequence::from_bipolar(v).unwrap()
    }

    #[test]
    fn rejects_bad_modulus_and_exponents() {
        assert!(PhaseSequence::new(3, vec![0]).is_err());
        assert!(PhaseSequence::new(0, vec![0]).is_err());
        assert!(PhaseSequence::new(4, vec![4]).is_err());
        assert!(PhaseSequence::new(2, vec![]).is_err());
        assert_eq!(
            PhaseSequence::from_exponents(4, [-1, 5]).unwrap().exps(),
            &[3, 1]
        );
    }

    #[test]
    fn forward_shift_matches_circulant_example() {
        let v = bip(&[1, -1, -1, 1]);
        assert_eq!(shift_forward(&v, 1).unwrap(), bip(&[1, 1, -1, -1]));
        assert_eq!(shift_forward(&v, 4).unwrap(), v);
        let w = bip(&[1, 1, 1, -1]);
        assert_eq!(shift_forward(&w, 4).unwrap(), bip(&[-1, 1, 1, 1]));
        assert!(shift_forward(&v, 0).is_err());
        assert!(shift_forward(&v, 5).is_err());
    }

    #[test]
    fn right_shift_rotates() {
        let v = PhaseSequence::new(4, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(shift_right(&v, 0).unwrap(), v);
        assert_eq!(shift_right(&v, 1).unwrap().exps(), &[3, 0, 1, 2]);
        assert_eq!(shift_right(&v, 2).unwrap().exps(), &[2, 3, 0, 1]);
        assert!(shift_right(&v, 4).is_err());
    }

    #[test]
    fn circulant_golden() {
        let c = circulant(&bip(&[1, -1, -1, 1]));
        assert_eq!(
            c.to_bipolar().unwrap(),
            vec![
                vec![1, 1, -1, -1],
                vec![-1, 1, 1, -1],
                vec![-1, -1, 1, 1],
                vec![1, -1, -1, 1],
            ]
        );
        let c = circulant(&bip(&[1, 1, 1, -1]));
        assert_eq!(
            c.to_bipolar().unwrap(),
            vec![
                vec![1, -1, 1, 1],
                vec![1, 1, -1, 1],
                vec![1, 1, 1, -1],
                vec![-1, 1, 1, 1],
            ]
        );
        let one = bip(&[-1]);
        assert_eq!(circulant(&one).rows(), std::slice::from_ref(&one));
    }

    #[test]
    fn circulant_entry_formula_and_columns() {
        let a = PhaseSequence::new(6, vec![0, 5, 2, 3, 1, 4]).unwrap();
        let c = circulant(&a);
        let n = a.len();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(c.row(i).exps()[j], a.exps()[(i + n - j) % n]);
            }
        }
        for j in 0..n {
            let col: Vec<u32> = (0..n).map(|i| c.row(i).exps()[j]).collect();
            assert_eq!(col, shift_right(&a, j).unwrap().exps());
        }
    }

    #[test]
    fn truncation() {
        let c = circulant(&bip(&[1, -1, -1, 1]));
        assert_eq!(truncate_columns(&c, 0).unwrap(), c);
        let t = truncate_columns(&c, 1).unwrap();
        assert_eq!(t.n_cols(), 3);
        assert_eq!(t.row(0), &bip(&[1, 1, -1]));
        assert!(truncate_columns(&c, 4).is_err());
    }

    #[test]
    fn kronecker_products() {
        assert_eq!(kronecker(&[1, -1], &[1, 1]), vec![1, 1, -1, -1]);
        assert_eq!(kronecker(&[3, -2, 5], &[1]), vec![3, -2, 5]);
        assert_eq!(kronecker(&[1, 1], &[1, 0]), vec![1, 0, 1, 0]);
    }

    #[test]
    fn gaussian_round_trip() {
        let s = PhaseSequence::new(4, vec![0, 1, 2, 3, 1]).unwrap();
        let g = s.to_gaussian().unwrap();
        assert_eq!(PhaseSequence::from_gaussian(4, &g).unwrap(), s);
        let b = bip(&[1, -1]);
        assert_eq!(
            PhaseSequence::from_gaussian(2, &b.to_gaussian().unwrap()).unwrap(),
            b
        );
        assert!(PhaseSequence::from_gaussian(2, &[Gaussian::new(0, 1)]).is_err());
    }
}
