//! Generalized Boolean functions `Z_2^m → Z_q` and the quadratic-form pair generator.

use std::collections::BTreeMap;

use crate::corrcore::{check_modulus, PhaseSequence};
use crate::error::{Error, Result};
use crate::gcp::GcpPair;

/// A polynomial in `x_1..x_m` with `Z_q` coefficients.
///
/// Monomials are stored as sorted, duplicate-free variable lists (the empty
/// list is the constant term) and zero coefficients are dropped, so equal
/// functions compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Gbf {
    m: usize,
    q: u32,
    coeffs: BTreeMap<Vec<usize>, u32>,
}

impl Gbf {
    /// The zero function on `m` variables.
    pub fn zero(m: usize, q: u32) -> Result<Self> {
        check_modulus(q)?;
        if m == 0 {
            return Err(Error::Argument("a GBF needs at least one variable".into()));
        }
        Ok(Gbf {
            m,
            q,
            coeffs: BTreeMap::new(),
        })
    }

    /// Builds `Σ coeff · Π x_i` from `(variables, coeff)` terms.
    pub fn from_terms<I, V>(m: usize, q: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (V, i64)>,
        V: AsRef<[usize]>,
    {
        let mut f = Gbf::zero(m, q)?;
        for (vars, c) in terms {
            f.add_term(vars.as_ref(), c)?;
        }
        Ok(f)
    }

    /// Adds `coeff · Π_{i ∈ vars} x_i`. Variables are 1-based; `x_i² = x_i`.
    pub fn add_term(&mut self, vars: &[usize], coeff: i64) -> Result<()> {
        let mut mono = vars.to_vec();
        mono.sort_unstable();
        mono.dedup();
        if let Some(&bad) = mono.iter().find(|&&v| v == 0 || v > self.m) {
            return Err(Error::Argument(format!(
                "variable x_{bad} is outside x_1..x_{}",
                self.m
            )));
        }
        let q = self.q as i64;
        let entry = self.coeffs.entry(mono).or_insert(0);
        *entry = (*entry as i64 + coeff).rem_euclid(q) as u32;
        self.coeffs.retain(|_, c| *c != 0);
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Nonzero terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&[usize], u32)> {
        self.coeffs.iter().map(|(k, &v)| (k.as_slice(), v))
    }

    /// Coefficient-wise sum.
    pub fn add(&self, other: &Gbf) -> Result<Gbf> {
        if self.m != other.m || self.q != other.q {
            return Err(Error::Dimension(format!(
                "cannot add GBFs over (m = {}, q = {}) and (m = {}, q = {})",
                self.m, self.q, other.m, other.q
            )));
        }
        let mut out = self.clone();
        for (vars, c) in other.terms() {
            out.add_term(vars, c as i64)?;
        }
        Ok(out)
    }

    /// `f(i_1, …, i_m) mod q` where `x_k` reads bit `k−1` of `index`.
    pub fn value_at(&self, index: usize) -> u32 {
        let q = self.q as u64;
        let sum: u64 = self
            .coeffs
            .iter()
            .filter(|(vars, _)| vars.iter().all(|&v| index >> (v - 1) & 1 == 1))
            .map(|(_, &c)| c as u64)
            .sum();
        (sum % q) as u32
    }

    /// The length-`2^m` sequence `ψ(f)` with `x_1` as the least significant bit.
    pub fn evaluate(&self) -> PhaseSequence {
        let exps = (0..1usize << self.m).map(|i| self.value_at(i)).collect();
        PhaseSequence::new(self.q, exps).expect("values are reduced mod q")
    }
}

/// The quadratic-form pair `(ψ(f + θ), ψ(f + 2^{h−1}·x_{π(1)} + θ'))` with
/// `f = 2^{h−1}·Σ x_{π(i)}x_{π(i+1)} + Σ c_k x_k`.
///
/// `perm` is a permutation of `1..=m` and `c` holds `m` linear coefficients.
/// The output is checked and a non-complementary result is reported as
/// [`Error::ConstructionInvariant`].
pub fn quadratic_gcp(
    m: usize,
    q: u32,
    h: u32,
    perm: &[usize],
    c: &[i64],
    theta: i64,
    theta_prime: i64,
) -> Result<GcpPair> {
    check_modulus(q)?;
    if m == 0 {
        return Err(Error::Argument("m must be at least 1".into()));
    }
    if h == 0 {
        return Err(Error::Argument("h must be at least 1".into()));
    }
    let mut seen = vec![false; m + 1];
    if perm.len() != m
        || perm
            .iter()
            .any(|&p| p == 0 || p > m || std::mem::replace(&mut seen[p], true))
    {
        return Err(Error::Argument(format!(
            "{perm:?} is not a permutation of 1..={m}"
        )));
    }
    if c.len() != m {
        return Err(Error::Argument(format!(
            "expected {m} linear coefficients, got {}",
            c.len()
        )));
    }
    let scale = pow2_mod(h - 1, q);
    let mut f = Gbf::zero(m, q)?;
    for w in perm.windows(2) {
        f.add_term(&[w[0], w[1]], scale)?;
    }
    for (k, &ck) in c.iter().enumerate() {
        f.add_term(&[k + 1], ck)?;
    }
    let mut a = f.clone();
    a.add_term(&[], theta)?;
    let mut b = f;
    b.add_term(&[perm[0]], scale)?;
    b.add_term(&[], theta_prime)?;
    GcpPair::new(a.evaluate(), b.evaluate())
}

fn pow2_mod(e: u32, q: u32) -> i64 {
    (0..e).fold(1i64, |acc, _| acc * 2 % q as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corrcore::aacf;
    use proptest::prelude::*;

    #[test]
    fn evaluation_examples() {
        let f = Gbf::from_terms(
            2,
            2,
            [(vec![1, 2], 1), (vec![1], 1), (vec![2], 1), (vec![], 1)],
        )
        .unwrap();
        assert_eq!(f.evaluate().exps(), &[1, 0, 0, 0]);
        assert_eq!(f.evaluate().to_bipolar().unwrap(), vec![-1, 1, 1, 1]);

        assert_eq!(Gbf::zero(2, 2).unwrap().evaluate().exps(), &[0, 0, 0, 0]);

        let x1 = Gbf::from_terms(1, 4, [(vec![1], 1)]).unwrap();
        assert_eq!(x1.evaluate().exps(), &[0, 1]);
    }

    #[test]
    fn bit_order_is_lsb_first() {
        let x1 = Gbf::from_terms(3, 2, [(vec![1], 1)]).unwrap();
        assert_eq!(x1.evaluate().exps(), &[0, 1, 0, 1, 0, 1, 0, 1]);
        let x3 = Gbf::from_terms(3, 2, [(vec![3], 1)]).unwrap();
        assert_eq!(x3.evaluate().exps(), &[0, 0, 0, 0, 1, 1, 1, 1]);
    }

    #[test]
    fn canonical_form() {
        let f = Gbf::from_terms(3, 4, [(vec![2, 1], 3), (vec![1, 2, 2], 1)]).unwrap();
        assert_eq!(f, Gbf::zero(3, 4).unwrap());
        let g = Gbf::from_terms(3, 4, [(vec![3, 1], 5)]).unwrap();
        assert_eq!(g.terms().collect::<Vec<_>>(), vec![(&[1usize, 3][..], 1)]);
        assert!(Gbf::from_terms(2, 2, [(vec![3], 1)]).is_err());
        assert!(Gbf::zero(2, 3).is_err());
    }

    #[test]
    fn quadratic_pairs() {
        let p = quadratic_gcp(2, 2, 1, &[1, 2], &[0, 0], 0, 0).unwrap();
        assert_eq!(p.a().to_bipolar().unwrap(), vec![1, 1, 1, -1]);
        assert_eq!(p.b().to_bipolar().unwrap(), vec![1, -1, 1, 1]);

        let p = quadratic_gcp(1, 2, 1, &[1], &[0], 0, 0).unwrap();
        assert_eq!(p.a().to_bipolar().unwrap(), vec![1, 1]);
        assert_eq!(p.b().to_bipolar().unwrap(), vec![1, -1]);

        let p = quadratic_gcp(2, 2, 1, &[2, 1], &[1, 0], 1, 0).unwrap();
        for lag in 1..4 {
            assert!((aacf(p.a(), lag) + aacf(p.b(), lag)).is_zero());
        }
    }

    #[test]
    fn rejects_bad_permutations() {
        for perm in [&[1, 1][..], &[0, 1], &[1, 3], &[1]] {
            assert!(matches!(
                quadratic_gcp(2, 2, 1, perm, &[0, 0], 0, 0),
                Err(Error::Argument(_))
            ));
        }
    }

    fn gbf(m: usize, q: u32) -> impl Strategy<Value = Gbf> {
        let term = (prop::collection::vec(1..=m, 0..=m), 0..q as i64);
        prop::collection::vec(term, 0..8)
            .prop_map(move |terms| Gbf::from_terms(m, q, terms).unwrap())
    }

    fn draw() -> impl Strategy<Value = (usize, u32, Vec<usize>, Vec<i64>, i64, i64)> {
        (1usize..=6, prop_oneof![Just(2u32), Just(4u32)]).prop_flat_map(|(m, q)| {
            (
                Just(m),
                Just(q),
                Just((1..=m).collect::<Vec<_>>()).prop_shuffle(),
                prop::collection::vec(0..q as i64, m),
                0..q as i64,
                0..q as i64,
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn quadratic_form_always_complementary((m, q, perm, c, t, tp) in draw()) {
            let h = q.trailing_zeros();
            let p = quadratic_gcp(m, q, h, &perm, &c, t, tp).unwrap();
            prop_assert_eq!(p.len(), 1 << m);
        }

        #[test]
        fn evaluation_is_linear(
            (f, g) in (1usize..=5, prop_oneof![Just(2u32), Just(4), Just(8)])
                .prop_flat_map(|(m, q)| (gbf(m, q), gbf(m, q)))
        ) {
            let q = f.q();
            let lhs = f.add(&g).unwrap().evaluate();
            let rhs: Vec<u32> = f.evaluate().exps().iter()
                .zip(g.evaluate().exps())
                .map(|(a, b)| (a + b) % q)
                .collect();
            prop_assert_eq!(lhs.exps(), &rhs[..]);
        }
    }
}
