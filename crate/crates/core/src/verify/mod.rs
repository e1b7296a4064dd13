//! Brute-force oracles for the defining properties of each sequence family.
//!
//! Everything here consumes raw matrices and evaluates the definitions
//! directly; nothing calls back into the constructions.

mod lemmas;

pub use lemmas::{
    lemma_conformance, ConformanceReport, Counterexample, FormulaTally, ASSERTED_LEMMAS,
};

use serde::Serialize;

use crate::corrcore::{
    accf, auto_sum, cross_sum_adjacent, cross_sum_pointwise, dot, CorrelationValue, Gaussian,
    PhaseSequence, SequenceMatrix,
};
use crate::error::{Error, Result};

/// The property a report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    Hadamard,
    Gcs,
    Gcp,
    Mate,
    Czcs,
    Ccc,
    Czcss,
    HadamardRowsAreGcs,
}

/// The first violated condition found by an oracle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    /// Which sum failed, e.g. `auto_sum` or `gram`.
    pub condition: &'static str,
    /// Shift of the failing sum; absent for Gram-matrix entries.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<i64>,
    pub value: CorrelationValue,
    /// Row indices (or code indices) involved.
    pub rows: Vec<usize>,
}

/// Outcome of one oracle. `holds` is false exactly when `witness` is present.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub property: Property,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Largest zone width found (zone properties only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_zone: Option<usize>,
    /// Zone width that was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zone: Option<usize>,
    /// Whether the zone meets `Z = NL/(2M)` (code sets only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimal: Option<bool>,
}

impl VerifyReport {
    fn from_witness(property: Property, witness: Option<Witness>) -> Self {
        VerifyReport {
            property,
            holds: witness.is_none(),
            witness,
            max_zone: None,
            zone: None,
            optimal: None,
        }
    }
}

fn witness(
    condition: &'static str,
    lambda: Option<i64>,
    value: CorrelationValue,
    rows: Vec<usize>,
) -> Witness {
    Witness {
        condition,
        lambda,
        value,
        rows,
    }
}

/// `M·M^H = n·I` (plain transpose for binary matrices).
pub fn is_hadamard(m: &SequenceMatrix) -> Result<VerifyReport> {
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "Hadamard check needs a square matrix, got {}x{}",
            m.n_rows(),
            m.n_cols()
        )));
    }
    let n = m.n_rows();
    for i in 0..n {
        for j in i..n {
            let g = dot(m.row(i), m.row(j))?;
            let target = if i == j { n as i64 } else { 0 };
            if !g.equals(Gaussian::new(target, 0)) {
                return Ok(VerifyReport::from_witness(
                    Property::Hadamard,
                    Some(witness("gram", None, g, vec![i, j])),
                ));
            }
        }
    }
    Ok(VerifyReport::from_witness(Property::Hadamard, None))
}

fn first_nonzero_auto(m: &SequenceMatrix) -> Option<Witness> {
    (1..m.n_cols() as i64).find_map(|lag| {
        let v = auto_sum(m, lag);
        (!v.is_zero()).then(|| witness("auto_sum", Some(lag), v, (0..m.n_rows()).collect()))
    })
}

/// `Σ_j A(row_j)(λ) = 0` for `1 ≤ λ ≤ L−1`. Negative shifts follow by conjugation.
pub fn is_gcs(m: &SequenceMatrix) -> VerifyReport {
    VerifyReport::from_witness(Property::Gcs, first_nonzero_auto(m))
}

/// Golay pair check on two candidate sequences.
pub fn is_gcp(a: &PhaseSequence, b: &PhaseSequence) -> Result<VerifyReport> {
    a.check_compatible(b)?;
    let m = SequenceMatrix::new(vec![a.clone(), b.clone()])?;
    Ok(VerifyReport::from_witness(
        Property::Gcp,
        first_nonzero_auto(&m),
    ))
}

/// `C(a,c)(λ) + C(b,d)(λ) = 0` for every `λ ≠ 0`, both signs.
pub fn is_mate(
    p: (&PhaseSequence, &PhaseSequence),
    mate: (&PhaseSequence, &PhaseSequence),
) -> Result<VerifyReport> {
    let (a, b) = p;
    let (c, d) = mate;
    for (x, y) in [(a, b), (a, c), (a, d)] {
        x.check_compatible(y)?;
    }
    let l = a.len() as i64;
    for lag in (1 - l..l).filter(|&x| x != 0) {
        let v = accf(a, c, lag)? + accf(b, d, lag)?;
        if !v.is_zero() {
            return Ok(VerifyReport::from_witness(
                Property::Mate,
                Some(witness("cross_sum", Some(lag), v, vec![0, 1])),
            ));
        }
    }
    Ok(VerifyReport::from_witness(Property::Mate, None))
}

/// First condition that fails when the zone grows from `z − 1` to `z`.
///
/// Growing the zone adds `λ = z` to the front zone and `λ = L − z` to the
/// tail zone, so checking the new shifts in order is enough.
fn zone_step_failure(m: &SequenceMatrix, z: usize) -> Option<Witness> {
    let l = m.n_cols();
    let rows: Vec<usize> = (0..m.n_rows()).collect();
    let front = z as i64;
    let tail = (l - z) as i64;
    let v = auto_sum(m, front);
    if !v.is_zero() {
        return Some(witness("auto_sum", Some(front), v, rows));
    }
    let v = auto_sum(m, tail);
    if !v.is_zero() {
        return Some(witness("auto_sum", Some(tail), v, rows));
    }
    let v = cross_sum_adjacent(m, tail);
    if !v.is_zero() {
        return Some(witness("cross_sum_adjacent", Some(tail), v, rows));
    }
    None
}

/// Largest `Z` for which the set is a cross Z-complementary set.
///
/// The front zone is `{1..Z}`, the tail zone `{L−Z..L−1}`; auto sums must
/// vanish on both and adjacent cross sums on the tail. Shifts are checked for
/// `λ ≥ 0`. The scan stops at `Z = L − 1`. With a `bound`, `holds` means
/// `max_zone ≥ bound`; without one it means a nonempty zone exists.
pub fn czcs_max_zone(m: &SequenceMatrix, bound: Option<usize>) -> VerifyReport {
    let l = m.n_cols();
    let mut max_zone = 0;
    let mut fail = None;
    for z in 1..l {
        match zone_step_failure(m, z) {
            None => max_zone = z,
            Some(w) => {
                fail = Some(w);
                break;
            }
        }
    }
    let required = bound.unwrap_or(1);
    let holds = max_zone >= required;
    VerifyReport {
        property: Property::Czcs,
        holds,
        witness: if holds { None } else { fail },
        max_zone: Some(max_zone),
        zone: bound,
        optimal: None,
    }
}

fn check_code_shapes(codes: &[SequenceMatrix]) -> Result<()> {
    let first = codes
        .first()
        .ok_or_else(|| Error::Dimension("a code set needs at least one code".into()))?;
    for (p, c) in codes.iter().enumerate() {
        if c.q() != first.q() || c.n_rows() != first.n_rows() || c.n_cols() != first.n_cols() {
            return Err(Error::Dimension(format!(
                "code {p} is {}x{} (q = {}), expected {}x{} (q = {})",
                c.n_rows(),
                c.n_cols(),
                c.q(),
                first.n_rows(),
                first.n_cols(),
                first.q()
            )));
        }
    }
    Ok(())
}

/// Mutual orthogonality of a code set: the pointwise cross sum between codes
/// `p` and `p'` is `ML` at `λ = 0, p = p'` and zero everywhere else.
///
/// All ordered pairs are checked for `λ ≥ 0`, which covers negative shifts
/// through `C(S^p,S^p')(−λ) = conj C(S^p',S^p)(λ)`.
pub fn is_ccc(codes: &[SequenceMatrix]) -> Result<VerifyReport> {
    check_code_shapes(codes)?;
    let (m, l) = (codes[0].n_rows(), codes[0].n_cols());
    let peak = Gaussian::new((m * l) as i64, 0);
    for (p, sp) in codes.iter().enumerate() {
        for (pp, spp) in codes.iter().enumerate() {
            for lag in 0..l as i64 {
                let v = cross_sum_pointwise(sp, spp, lag)?;
                let ok = if p == pp && lag == 0 {
                    v.equals(peak)
                } else {
                    v.is_zero()
                };
                if !ok {
                    return Ok(VerifyReport::from_witness(
                        Property::Ccc,
                        Some(witness("pointwise_sum", Some(lag), v, vec![p, pp])),
                    ));
                }
            }
        }
    }
    Ok(VerifyReport::from_witness(Property::Ccc, None))
}

/// Sum of `C(S^p_j, S^{p'}_{(j+1) mod M})(λ)` over `j`.
fn adjacent_between(
    sp: &SequenceMatrix,
    spp: &SequenceMatrix,
    lag: i64,
) -> Result<CorrelationValue> {
    let m = sp.n_rows();
    let mut acc = CorrelationValue::zero(sp.is_exact(), sp.n_cols());
    for j in 0..m {
        acc += accf(sp.row(j), spp.row((j + 1) % m), lag)?;
    }
    Ok(acc)
}

/// Cross Z-complementary sequence set check with zone width `z`.
///
/// Within each code: auto sums vanish on the front and tail zones and
/// adjacent cross sums vanish on the tail zone. Between distinct codes:
/// pointwise sums vanish on `{0}` and both zones, and adjacent sums vanish on
/// the tail zone. `optimal` reports whether `z = NL/(2M)`.
pub fn is_czcss(codes: &[SequenceMatrix], z: usize) -> Result<VerifyReport> {
    check_code_shapes(codes)?;
    let n = codes.len();
    let (m, l) = (codes[0].n_rows(), codes[0].n_cols());
    if z == 0 || z >= l {
        return Err(Error::Range {
            what: "zone width Z",
            value: z as i64,
            min: 1,
            max: l as i64 - 1,
        });
    }
    let front: Vec<i64> = (1..=z as i64).collect();
    let tail: Vec<i64> = ((l - z) as i64..l as i64).collect();
    let mut zones = front.clone();
    zones.extend(tail.iter().filter(|t| !front.contains(t)));

    let report = |w: Witness| VerifyReport {
        property: Property::Czcss,
        holds: false,
        witness: Some(w),
        max_zone: None,
        zone: Some(z),
        optimal: Some(2 * m * z == n * l),
    };

    for (p, sp) in codes.iter().enumerate() {
        for &lag in &zones {
            let v = auto_sum(sp, lag);
            if !v.is_zero() {
                return Ok(report(witness("auto_sum", Some(lag), v, vec![p])));
            }
        }
        for &lag in &tail {
            let v = cross_sum_adjacent(sp, lag);
            if !v.is_zero() {
                return Ok(report(witness("cross_sum_adjacent", Some(lag), v, vec![p])));
            }
        }
    }
    for (p, sp) in codes.iter().enumerate() {
        for (pp, spp) in codes.iter().enumerate().filter(|&(pp, _)| pp != p) {
            for &lag in std::iter::once(&0).chain(&zones) {
                let v = cross_sum_pointwise(sp, spp, lag)?;
                if !v.is_zero() {
                    return Ok(report(witness("pointwise_sum", Some(lag), v, vec![p, pp])));
                }
            }
            for &lag in &tail {
                let v = adjacent_between(sp, spp, lag)?;
                if !v.is_zero() {
                    return Ok(report(witness(
                        "adjacent_cross_code_sum",
                        Some(lag),
                        v,
                        vec![p, pp],
                    )));
                }
            }
        }
    }
    Ok(VerifyReport {
        property: Property::Czcss,
        holds: true,
        witness: None,
        max_zone: None,
        zone: Some(z),
        optimal: Some(2 * m * z == n * l),
    })
}

/// Square complementary sets split by whether they are also Hadamard.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GcsClass {
    /// Complementary set that is also a Hadamard matrix.
    Type1,
    /// Complementary set that is not a Hadamard matrix.
    Type2,
    NotGcs,
}

pub fn classify_gcs(m: &SequenceMatrix) -> Result<GcsClass> {
    let hadamard = is_hadamard(m)?.holds;
    Ok(match (is_gcs(m).holds, hadamard) {
        (true, true) => GcsClass::Type1,
        (true, false) => GcsClass::Type2,
        (false, _) => GcsClass::NotGcs,
    })
}

/// Confirms a Hadamard matrix is a complementary set. Rejects non-Hadamard input.
pub fn hadamard_rows_are_gcs(m: &SequenceMatrix) -> Result<VerifyReport> {
    let h = is_hadamard(m)?;
    if !h.holds {
        return Err(Error::Argument(
            "expected a Hadamard matrix as input".into(),
        ));
    }
    let mut r = is_gcs(m);
    r.property = Property::HadamardRowsAreGcs;
    Ok(r)
}
