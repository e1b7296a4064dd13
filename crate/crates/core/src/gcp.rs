//! Golay complementary pairs: embedded seeds, Turyn composition and mates.

use crate::corrcore::{aacf, kronecker, Gaussian, PhaseSequence, SequenceMatrix};
use crate::error::{Error, Result};

/// Two equal-length sequences whose autocorrelations cancel at every nonzero shift.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GcpPair {
    a: PhaseSequence,
    b: PhaseSequence,
}

impl GcpPair {
    /// Validates `A(a)(λ) + A(b)(λ) = 0` for `1 ≤ λ ≤ L−1`.
    pub fn new(a: PhaseSequence, b: PhaseSequence) -> Result<Self> {
        a.check_compatible(&b)?;
        for lag in 1..a.len() as i64 {
            let s = aacf(&a, lag) + aacf(&b, lag);
            if !s.is_zero() {
                return Err(Error::ConstructionInvariant(format!(
                    "not a complementary pair: A(a)({lag}) + A(b)({lag}) = {s}"
                )));
            }
        }
        Ok(GcpPair { a, b })
    }

    pub fn from_bipolar(a: &[i64], b: &[i64]) -> Result<Self> {
        GcpPair::new(
            PhaseSequence::from_bipolar(a)?,
            PhaseSequence::from_bipolar(b)?,
        )
    }

    pub fn a(&self) -> &PhaseSequence {
        &self.a
    }

    pub fn b(&self) -> &PhaseSequence {
        &self.b
    }

    pub fn q(&self) -> u32 {
        self.a.q()
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn into_parts(self) -> (PhaseSequence, PhaseSequence) {
        (self.a, self.b)
    }

    /// The pair as a two-row matrix `[a; b]`.
    pub fn to_matrix(&self) -> SequenceMatrix {
        SequenceMatrix::new(vec![self.a.clone(), self.b.clone()]).expect("pair rows share shape")
    }
}

const SEED_2: [[i64; 2]; 2] = [[1, 1], [1, -1]];

const SEED_10: [[i64; 10]; 2] = [
    [1, 1, -1, 1, -1, 1, -1, -1, 1, 1],
    [1, 1, -1, 1, 1, 1, 1, 1, -1, -1],
];

const SEED_26: [&str; 2] = ["++++-++--+-+-+--+-+++--+++", "++++-++--+-+++++-+---++---"];

fn parse_signs(s: &str) -> Vec<i64> {
    s.bytes().map(|c| if c == b'+' { 1 } else { -1 }).collect()
}

/// Embedded binary pair of length 2, 10 or 26.
pub fn seed_pair(length: usize) -> Result<GcpPair> {
    match length {
        2 => GcpPair::from_bipolar(&SEED_2[0], &SEED_2[1]),
        10 => GcpPair::from_bipolar(&SEED_10[0], &SEED_10[1]),
        26 => GcpPair::from_bipolar(&parse_signs(SEED_26[0]), &parse_signs(SEED_26[1])),
        other => Err(Error::Argument(format!(
            "no seed pair of length {other}; seeds exist for 2, 10 and 26"
        ))),
    }
}

/// `(c, d) = (rev(b*), −rev(a*))`.
pub fn complementary_mate(p: &GcpPair) -> GcpPair {
    let c = p.b.conj().reversed();
    let d = p.a.conj().reversed().negate();
    GcpPair::new(c, d).expect("the mate of a complementary pair is complementary")
}

/// Which form of the Turyn composition to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TurynVariant {
    /// `e = a⊗s − b*⊗t`, `f = b⊗s + a*⊗t` with `s = (c+d)/2`, `t = (c−d)/2`.
    /// Does not produce complementary pairs; kept for comparison.
    Unreversed,
    /// `e = a⊗s − rev(b*)⊗t`, `f = b⊗s + rev(a*)⊗t`.
    #[default]
    Reversed,
}

/// Turyn composition with the default variant.
pub fn turyn_compose(p1: &GcpPair, p2: &GcpPair) -> Result<GcpPair> {
    turyn_compose_with(p1, p2, TurynVariant::default())
}

/// Composes a length-`m` pair with a binary length-`n` pair into a length-`mn` pair.
///
/// `p1` may be binary or quaternary. The result is re-checked and a failure
/// surfaces as [`Error::ConstructionInvariant`].
pub fn turyn_compose_with(p1: &GcpPair, p2: &GcpPair, variant: TurynVariant) -> Result<GcpPair> {
    let q = p1.q();
    let (a, b) = match (p1.a.to_gaussian(), p1.b.to_gaussian()) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(Error::Argument(format!(
                "Turyn composition needs the first pair in q = 2 or 4, got q = {q}"
            )))
        }
    };
    let (c, d) = match (p2.a.to_bipolar(), p2.b.to_bipolar()) {
        (Some(c), Some(d)) => (c, d),
        _ => {
            return Err(Error::Argument(
                "Turyn composition needs a binary second pair".into(),
            ))
        }
    };
    let half = |sign: i64| -> Vec<Gaussian> {
        c.iter()
            .zip(&d)
            .map(|(&x, &y)| Gaussian::from((x + sign * y) / 2))
            .collect()
    };
    let (s, t) = (half(1), half(-1));

    let conj = |v: &[Gaussian]| -> Vec<Gaussian> { v.iter().map(|g| g.conj()).collect() };
    let (mut a_star, mut b_star) = (conj(&a), conj(&b));
    if variant == TurynVariant::Reversed {
        a_star.reverse();
        b_star.reverse();
    }

    let combine = |x: Vec<Gaussian>, y: Vec<Gaussian>, sign: i64| -> Vec<Gaussian> {
        x.into_iter()
            .zip(y)
            .map(|(u, v)| u + v * Gaussian::from(sign))
            .collect()
    };
    let e = combine(kronecker(&a, &s), kronecker(&b_star, &t), -1);
    let f = combine(kronecker(&b, &s), kronecker(&a_star, &t), 1);

    let e = PhaseSequence::from_gaussian(q, &e)?;
    let f = PhaseSequence::from_gaussian(q, &f)?;
    GcpPair::new(e, f)
}

/// Seed factors of `N` taken greedily as 26, then 10, then 2.
pub fn factor_length(n: usize) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(unsupported(n));
    }
    let mut rest = n;
    let mut factors = Vec::new();
    for seed in [26, 10, 2] {
        while rest.is_multiple_of(seed) {
            factors.push(seed);
            rest /= seed;
        }
    }
    if rest != 1 {
        return Err(unsupported(n));
    }
    Ok(factors)
}

fn unsupported(n: usize) -> Error {
    Error::UnsupportedLength {
        length: n,
        reason: "pair lengths must be of the form 2^a * 10^b * 26^c".into(),
    }
}

/// A binary pair of length `N = 2^a·10^b·26^c`; `N = 1` gives `((1), (1))`.
pub fn gcp_for(n: usize) -> Result<GcpPair> {
    let factors = factor_length(n)?;
    let Some((&first, rest)) = factors.split_first() else {
        return GcpPair::from_bipolar(&[1], &[1]);
    };
    let mut acc = seed_pair(first)?;
    for &f in rest {
        acc = turyn_compose(&acc, &seed_pair(f)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corrcore::accf;

    fn bip(v: &[i64]) -> PhaseSequence {
        PhaseSequence::from_bipolar(v).unwrap()
    }

    fn is_mate(p: &GcpPair, m: &GcpPair) -> bool {
        let l = p.len() as i64;
        (1 - l..l).filter(|&x| x != 0).all(|lag| {
            (accf(p.a(), m.a(), lag).unwrap() + accf(p.b(), m.b(), lag).unwrap()).is_zero()
        })
    }

    #[test]
    fn seeds_are_pairs() {
        for l in [2, 10, 26] {
            let p = seed_pair(l).unwrap();
            assert_eq!(p.len(), l);
            assert_eq!(p.q(), 2);
        }
        assert_eq!(seed_pair(2).unwrap().a(), &bip(&[1, 1]));
        assert!(matches!(seed_pair(4), Err(Error::Argument(_))));
    }

    #[test]
    fn rejects_non_pairs() {
        assert!(matches!(
            GcpPair::from_bipolar(&[1, 1], &[1, 1]),
            Err(Error::ConstructionInvariant(_))
        ));
        assert!(matches!(
            GcpPair::from_bipolar(&[1, 1], &[1]),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn mate_examples() {
        let p = GcpPair::from_bipolar(&[1, 1, 1, -1], &[1, 1, -1, 1]).unwrap();
        let m = complementary_mate(&p);
        assert_eq!(m.a(), &bip(&[1, -1, 1, 1]));
        assert_eq!(m.b(), &bip(&[1, -1, -1, -1]));
        assert!(is_mate(&p, &m));

        let p = seed_pair(10).unwrap();
        let m = complementary_mate(&p);
        assert_eq!(m.a(), &bip(&[-1, -1, 1, 1, 1, 1, 1, -1, 1, 1]));
        assert_eq!(m.b(), &bip(&[-1, -1, 1, 1, -1, 1, -1, 1, -1, -1]));
        assert!(is_mate(&p, &m));

        let m = complementary_mate(&seed_pair(2).unwrap());
        assert_eq!(m.a(), &bip(&[-1, 1]));
        assert_eq!(m.b(), &bip(&[-1, -1]));
    }

    #[test]
    fn mate_twice_is_a_mate() {
        for l in [2, 10, 26] {
            let p = seed_pair(l).unwrap();
            let m = complementary_mate(&p);
            let mm = complementary_mate(&m);
            assert!(is_mate(&m, &mm));
            assert_eq!(mm.a(), &p.a().negate());
            assert_eq!(mm.b(), &p.b().negate());
        }
    }

    #[test]
    fn seed_composition_matrix_selects_reversed_variant() {
        let cases = [(2, 2), (2, 10), (10, 2), (2, 26), (10, 10)];
        for (x, y) in cases {
            let (p1, p2) = (seed_pair(x).unwrap(), seed_pair(y).unwrap());
            let out = turyn_compose_with(&p1, &p2, TurynVariant::Reversed).unwrap();
            assert_eq!(out.len(), x * y);
        }
        let unreversed_fails = cases.iter().all(|&(x, y)| {
            turyn_compose_with(
                &seed_pair(x).unwrap(),
                &seed_pair(y).unwrap(),
                TurynVariant::Unreversed,
            )
            .is_err()
        });
        assert!(unreversed_fails);
    }

    #[test]
    fn compose_two_by_two() {
        let p = seed_pair(2).unwrap();
        let out = turyn_compose(&p, &p).unwrap();
        assert_eq!(out.a(), &bip(&[1, 1, 1, -1]));
        assert_eq!(out.b(), &bip(&[1, 1, -1, 1]));
    }

    #[test]
    fn compose_with_trivial_pair() {
        let one = GcpPair::from_bipolar(&[1], &[1]).unwrap();
        let p = seed_pair(10).unwrap();
        assert_eq!(turyn_compose(&p, &one).unwrap(), p);
    }

    #[test]
    fn compose_quaternary_outer_pair() {
        let a = PhaseSequence::new(4, vec![0, 1]).unwrap();
        let b = PhaseSequence::new(4, vec![0, 3]).unwrap();
        let p = GcpPair::new(a, b).unwrap();
        let out = turyn_compose(&p, &seed_pair(10).unwrap()).unwrap();
        assert_eq!((out.q(), out.len()), (4, 20));
        let q4 = GcpPair::new(
            PhaseSequence::new(4, vec![0, 1]).unwrap(),
            PhaseSequence::new(4, vec![0, 3]).unwrap(),
        )
        .unwrap();
        assert!(matches!(
            turyn_compose(&seed_pair(2).unwrap(), &q4),
            Err(Error::Argument(_))
        ));
    }

    #[test]
    fn factorization() {
        assert_eq!(factor_length(1).unwrap(), Vec::<usize>::new());
        assert_eq!(factor_length(20).unwrap(), vec![10, 2]);
        assert_eq!(factor_length(52).unwrap(), vec![26, 2]);
        assert_eq!(factor_length(8).unwrap(), vec![2, 2, 2]);
        for bad in [0, 3, 7, 30] {
            assert!(matches!(
                factor_length(bad),
                Err(Error::UnsupportedLength { .. })
            ));
        }
    }

    #[test]
    fn pairs_for_admissible_lengths() {
        for n in [1, 2, 4, 8, 10, 20, 26, 40, 52, 100] {
            let p = gcp_for(n).unwrap();
            assert_eq!(p.len(), n);
            assert_eq!(p.q(), 2);
        }
        assert_eq!(gcp_for(1).unwrap().a(), &bip(&[1]));
    }
}
