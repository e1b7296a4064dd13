//! Circulant Hadamard matrices of order 4, the recursive doubling family,
//! circulant-block complementary sets and the code sets derived from them.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::corrcore::{check_modulus, circulant, truncate_columns, SequenceMatrix};
use crate::error::{range_check, Error, Result};
use crate::gbf::Gbf;
use crate::gcp::{complementary_mate, gcp_for, GcpPair};
use crate::verify::is_hadamard;

/// The order-4 circulant matrix of `ψ(f)` for
/// `f(x1, x2) = (q/2)(x1x2 + θ1x1 + θ2x2) + θ3`.
///
/// Rows are `T^1(ψ(f)) … T^4(ψ(f))`.
pub fn circulant_hadamard4(
    q: u32,
    theta1: u32,
    theta2: u32,
    theta3: u32,
) -> Result<SequenceMatrix> {
    check_modulus(q)?;
    for (what, t) in [("theta1", theta1), ("theta2", theta2), ("theta3", theta3)] {
        range_check(what, t as i64, 0, q as i64 - 1)?;
    }
    let half = (q / 2) as i64;
    let f = Gbf::from_terms(
        2,
        q,
        [
            (vec![1, 2], half),
            (vec![1], half * theta1 as i64),
            (vec![2], half * theta2 as i64),
            (vec![], theta3 as i64),
        ],
    )?;
    Ok(circulant(&f.evaluate()))
}

/// The eight binary circulant Hadamard matrices of order 4, one per
/// `(θ1, θ2, θ3) ∈ {0,1}³` in lexicographic order.
pub fn enumerate_chm4() -> Vec<SequenceMatrix> {
    let mut out = Vec::with_capacity(8);
    for t1 in 0..2 {
        for t2 in 0..2 {
            for t3 in 0..2 {
                out.push(circulant_hadamard4(2, t1, t2, t3).expect("binary parameters are valid"));
            }
        }
    }
    out
}

/// Block sign pattern used to double a matrix `E` into `[[±E, ±E], [±E, ±E]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DoublingVariant {
    /// `[[E, E], [E, −E]]`
    F,
    /// `[[E, E], [−E, E]]`
    G,
    /// `[[−E, E], [E, E]]`
    H,
    /// `[[E, −E], [E, E]]`
    I,
}

impl DoublingVariant {
    pub const ALL: [DoublingVariant; 4] = [
        DoublingVariant::F,
        DoublingVariant::G,
        DoublingVariant::H,
        DoublingVariant::I,
    ];

    /// Which of the four blocks (row-major) are negated.
    pub fn negated_blocks(self) -> [[bool; 2]; 2] {
        match self {
            DoublingVariant::F => [[false, false], [false, true]],
            DoublingVariant::G => [[false, false], [true, false]],
            DoublingVariant::H => [[true, false], [false, false]],
            DoublingVariant::I => [[false, true], [false, false]],
        }
    }
}

impl fmt::Display for DoublingVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            DoublingVariant::F => "F",
            DoublingVariant::G => "G",
            DoublingVariant::H => "H",
            DoublingVariant::I => "I",
        };
        f.write_str(s)
    }
}

impl FromStr for DoublingVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "F" => Ok(DoublingVariant::F),
            "G" => Ok(DoublingVariant::G),
            "H" => Ok(DoublingVariant::H),
            "I" => Ok(DoublingVariant::I),
            other => Err(Error::Argument(format!(
                "unknown doubling variant {other:?}; expected F, G, H or I"
            ))),
        }
    }
}

fn double(e: &SequenceMatrix, variant: DoublingVariant) -> SequenceMatrix {
    let neg = e.negate();
    let pick = |negated: bool| if negated { &neg } else { e };
    let [[a, b], [c, d]] = variant.negated_blocks();
    let top = pick(a).hstack(pick(b)).expect("blocks share shape");
    let bottom = pick(c).hstack(pick(d)).expect("blocks share shape");
    top.vstack(&bottom).expect("blocks share shape")
}

/// `n` doubling steps from a 4×4 circulant Hadamard seed.
///
/// Every inner level uses pattern [`DoublingVariant::F`]; `variant` applies
/// to the outermost level only. The result has order `2^{n+2}`.
pub fn doubling_chain(
    e4: &SequenceMatrix,
    n: u32,
    variant: DoublingVariant,
) -> Result<SequenceMatrix> {
    if e4.n_rows() != 4 || e4.n_cols() != 4 {
        return Err(Error::Argument(format!(
            "the doubling seed must be 4x4, got {}x{}",
            e4.n_rows(),
            e4.n_cols()
        )));
    }
    if !is_hadamard(e4)?.holds {
        return Err(Error::Argument(
            "the doubling seed is not a Hadamard matrix".into(),
        ));
    }
    range_check("doubling depth n", n as i64, 1, 20)?;
    let mut e = e4.clone();
    for level in 1..=n {
        let v = if level == n {
            variant
        } else {
            DoublingVariant::F
        };
        e = double(&e, v);
    }
    Ok(e)
}

/// Claimed parameters `(M, L, Z)` of the truncated doubling construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct CzcsParams {
    pub m: usize,
    pub l: usize,
    pub z: usize,
    pub n: u32,
    pub k: usize,
}

impl CzcsParams {
    /// `M = 2^{n+2}`, `L = 2^{n+2} − k`, `Z = 2^{n+1} − (k − 2^n)·⌊k/2^n⌋`.
    pub fn claimed(n: u32, k: usize) -> Self {
        let m = 1usize << (n + 2);
        let half = 1i64 << n;
        let k_i = k as i64;
        let z = (2 * half) - (k_i - half) * (k_i / half);
        CzcsParams {
            m,
            l: m - k,
            z: z as usize,
            n,
            k,
        }
    }
}

impl fmt::Display for CzcsParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})-CZCS", self.m, self.l, self.z)
    }
}

/// Doubling-chain matrix with `k` trailing columns removed, `0 ≤ k ≤ 2^{n+1} − 1`.
pub fn czcs_matrix(
    n: u32,
    k: usize,
    variant: DoublingVariant,
    e4: &SequenceMatrix,
) -> Result<(SequenceMatrix, CzcsParams)> {
    range_check("doubling depth n", n as i64, 1, 20)?;
    range_check("truncation k", k as i64, 0, (1i64 << (n + 1)) - 1)?;
    let full = doubling_chain(e4, n, variant)?;
    Ok((truncate_columns(&full, k)?, CzcsParams::claimed(n, k)))
}

/// Same truncation restricted to the complementary-set range `0 ≤ k ≤ 2^{n+1} − 2`.
pub fn gcs_truncated(
    e4: &SequenceMatrix,
    n: u32,
    k: usize,
    variant: DoublingVariant,
) -> Result<SequenceMatrix> {
    range_check("doubling depth n", n as i64, 1, 20)?;
    range_check("truncation k", k as i64, 0, (1i64 << (n + 1)) - 2)?;
    let full = doubling_chain(e4, n, variant)?;
    truncate_columns(&full, k)
}

/// `[[Cir(a), Cir(b)], [Cir(c), Cir(d)]]` with `(c, d)` the mate of `(a, b)`,
/// truncated by `k` columns, `0 ≤ k ≤ 2N − 2`.
pub fn gcs_circulant_from_pair(pair: &GcpPair, k: usize) -> Result<SequenceMatrix> {
    let n = pair.len();
    range_check("truncation k", k as i64, 0, 2 * n as i64 - 2)?;
    let mate = complementary_mate(pair);
    let top = circulant(pair.a()).hstack(&circulant(pair.b()))?;
    let bottom = circulant(mate.a()).hstack(&circulant(mate.b()))?;
    truncate_columns(&top.vstack(&bottom)?, k)
}

/// [`gcs_circulant_from_pair`] applied to the pair of length `N = 2^a·10^b·26^c`.
pub fn gcs_circulant(n: usize, k: usize) -> Result<SequenceMatrix> {
    gcs_circulant_from_pair(&gcp_for(n)?, k)
}

/// Order-`2N` Hadamard matrix: the untruncated circulant-block matrix.
pub fn hadamard_2n(n: usize) -> Result<SequenceMatrix> {
    gcs_circulant(n, 0)
}

/// `N` codes of identical shape sharing a phase modulus.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CodeSet {
    q: u32,
    codes: Vec<SequenceMatrix>,
}

impl CodeSet {
    pub fn new(codes: Vec<SequenceMatrix>) -> Result<Self> {
        let first = codes
            .first()
            .ok_or_else(|| Error::Dimension("a code set needs at least one code".into()))?;
        let shape = (first.q(), first.n_rows(), first.n_cols());
        for (p, c) in codes.iter().enumerate() {
            if (c.q(), c.n_rows(), c.n_cols()) != shape {
                return Err(Error::Dimension(format!(
                    "code {p} is {}x{} (q = {}), expected {}x{} (q = {})",
                    c.n_rows(),
                    c.n_cols(),
                    c.q(),
                    shape.1,
                    shape.2,
                    shape.0
                )));
            }
        }
        Ok(CodeSet { q: shape.0, codes })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn codes(&self) -> &[SequenceMatrix] {
        &self.codes
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// `(N, M, L)`.
    pub fn shape(&self) -> (usize, usize, usize) {
        (
            self.codes.len(),
            self.codes[0].n_rows(),
            self.codes[0].n_cols(),
        )
    }
}

/// Code `i` is row `R_i` of `g` multiplied entry-wise into every row of `g`.
pub fn row_product_codes(g: &SequenceMatrix) -> Result<CodeSet> {
    let codes = g
        .rows()
        .iter()
        .map(|r| g.broadcast_product(r))
        .collect::<Result<Vec<_>>>()?;
    CodeSet::new(codes)
}

/// Complete complementary code from a square circulant-block matrix.
pub fn ccc_codes(g: &SequenceMatrix) -> Result<CodeSet> {
    if !g.is_square() {
        return Err(Error::Argument(format!(
            "expected a square matrix, got {}x{}",
            g.n_rows(),
            g.n_cols()
        )));
    }
    row_product_codes(g)
}

/// Row-product code set of the order-`2^{n+2}` doubling matrix.
pub fn czcss_codes(e4: &SequenceMatrix, n: u32, variant: DoublingVariant) -> Result<CodeSet> {
    row_product_codes(&doubling_chain(e4, n, variant)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corrcore::{shift_forward, PhaseSequence};

    fn mat(rows: &[Vec<i64>]) -> SequenceMatrix {
        SequenceMatrix::from_bipolar(rows).unwrap()
    }

    #[test]
    fn diagonal_seed() {
        let e = circulant_hadamard4(2, 1, 1, 1).unwrap();
        assert_eq!(
            e,
            mat(&[
                vec![-1, 1, 1, 1],
                vec![1, -1, 1, 1],
                vec![1, 1, -1, 1],
                vec![1, 1, 1, -1],
            ])
        );
        let e = circulant_hadamard4(2, 0, 0, 0).unwrap();
        assert_eq!(e.row(0).to_bipolar().unwrap(), vec![1, -1, 1, 1]);
        assert!(circulant_hadamard4(3, 0, 0, 0).is_err());
        assert!(circulant_hadamard4(2, 2, 0, 0).is_err());
    }

    #[test]
    fn quaternary_seeds_are_complex_hadamard() {
        for t in 0..4 {
            let e = circulant_hadamard4(4, t, (t + 1) % 4, t).unwrap();
            assert!(is_hadamard(&e).unwrap().holds);
        }
        let e = circulant_hadamard4(6, 2, 5, 1).unwrap();
        assert!(is_hadamard(&e).unwrap().holds);
    }

    #[test]
    fn census_is_circulant_and_distinct() {
        let all = enumerate_chm4();
        assert_eq!(all.len(), 8);
        for (i, m) in all.iter().enumerate() {
            // column 0 of Cir(v) is v itself
            let v = PhaseSequence::new(2, (0..4).map(|i| m.row(i).exps()[0]).collect()).unwrap();
            for k in 1..=4 {
                assert_eq!(m.row(k - 1), &shift_forward(&v, k).unwrap());
            }
            assert!(all[..i].iter().all(|o| o != m));
        }
    }

    #[test]
    fn variant_parsing() {
        for v in DoublingVariant::ALL {
            assert_eq!(v.to_string().parse::<DoublingVariant>().unwrap(), v);
        }
        assert!("x".parse::<DoublingVariant>().is_err());
    }

    #[test]
    fn doubling_shapes_and_errors() {
        let e4 = circulant_hadamard4(2, 1, 1, 1).unwrap();
        for n in 1..=3 {
            let m = doubling_chain(&e4, n, DoublingVariant::G).unwrap();
            assert_eq!((m.n_rows(), m.n_cols()), (1 << (n + 2), 1 << (n + 2)));
        }
        assert!(doubling_chain(&e4, 0, DoublingVariant::F).is_err());
        let ones = mat(&vec![vec![1; 4]; 4]);
        assert!(matches!(
            doubling_chain(&ones, 1, DoublingVariant::F),
            Err(Error::Argument(_))
        ));
        assert!(doubling_chain(&mat(&[vec![1, 1], vec![1, -1]]), 1, DoublingVariant::F).is_err());
    }

    #[test]
    fn claimed_parameters() {
        assert_eq!(
            (
                CzcsParams::claimed(1, 3).m,
                CzcsParams::claimed(1, 3).l,
                CzcsParams::claimed(1, 3).z
            ),
            (8, 5, 3)
        );
        assert_eq!(CzcsParams::claimed(1, 0).z, 4);
        assert_eq!(CzcsParams::claimed(1, 1).z, 4);
        assert_eq!(CzcsParams::claimed(2, 5).z, 7);
        assert_eq!(CzcsParams::claimed(2, 5).to_string(), "(16,11,7)-CZCS");
    }

    #[test]
    fn truncation_ranges() {
        let e4 = circulant_hadamard4(2, 1, 1, 1).unwrap();
        assert!(czcs_matrix(1, 3, DoublingVariant::F, &e4).is_ok());
        assert!(matches!(
            czcs_matrix(1, 4, DoublingVariant::F, &e4),
            Err(Error::Range { .. })
        ));
        assert!(gcs_truncated(&e4, 1, 2, DoublingVariant::F).is_ok());
        assert!(gcs_truncated(&e4, 1, 3, DoublingVariant::F).is_err());
        assert!(gcs_circulant(4, 6).is_ok());
        assert!(gcs_circulant(4, 7).is_err());
        assert!(matches!(
            gcs_circulant(3, 0),
            Err(Error::UnsupportedLength { .. })
        ));
    }

    #[test]
    fn circulant_block_order_two() {
        let h = hadamard_2n(1).unwrap();
        assert_eq!(h, mat(&[vec![1, 1], vec![1, -1]]));
    }

    #[test]
    fn code_sets() {
        let g = hadamard_2n(1).unwrap();
        let s = ccc_codes(&g).unwrap();
        assert_eq!(s.shape(), (2, 2, 2));
        assert_eq!(s.codes()[0], mat(&[vec![1, 1], vec![1, -1]]));
        assert!(ccc_codes(&mat(&[vec![1, 1]])).is_err());
        assert!(CodeSet::new(vec![]).is_err());
        assert!(CodeSet::new(vec![g.clone(), mat(&[vec![1, 1]])]).is_err());
    }
}
