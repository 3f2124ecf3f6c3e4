use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::rat_poly::RatPoly;

/// Chebyshev polynomial of the first kind, `T_{k+1} = 2z T_k - T_{k-1}`.
pub fn cheb(n: usize) -> RatPoly {
    cheb_table(n).pop().unwrap()
}

/// `[T_0, T_1, ..., T_n]`.
pub fn cheb_table(n: usize) -> Vec<RatPoly> {
    let mut table = Vec::with_capacity(n + 1);
    table.push(RatPoly::one());
    if n == 0 {
        return table;
    }
    table.push(RatPoly::z());
    let two_z = RatPoly::from_ints(&[0, 2]);
    for k in 1..n {
        let next = &(&two_z * &table[k]) - &table[k - 1];
        table.push(next);
    }
    table
}

/// A finite Chebyshev series `Σ c_m T_m` with nonzero rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ChebExpansion {
    terms: BTreeMap<usize, BigRational>,
}

impl ChebExpansion {
    pub fn new() -> Self {
        Self::default()
    }

    /// Zero coefficients are dropped.
    pub fn from_terms<I: IntoIterator<Item = (usize, BigRational)>>(terms: I) -> Self {
        let mut out = Self::new();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    pub fn add_term(&mut self, m: usize, c: BigRational) {
        let slot = self.terms.entry(m).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn get(&self, m: usize) -> Option<&BigRational> {
        self.terms.get(&m)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending degree.
    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (usize, &BigRational)> {
        self.terms.iter().map(|(&m, c)| (m, c))
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    /// The same expansion without its `T_0` term.
    pub fn without_constant(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&0);
        out
    }

    pub fn constant(&self) -> BigRational {
        self.terms.get(&0).cloned().unwrap_or_else(BigRational::zero)
    }
}

/// Greedy leading-term elimination: subtract `c T_m` with `m = deg Q` until
/// nothing is left. Each step strictly lowers the degree.
pub fn to_cheb(q: &RatPoly) -> ChebExpansion {
    let Some(top) = q.degree() else {
        return ChebExpansion::new();
    };
    let table = cheb_table(top);
    let mut rest = q.clone();
    let mut out = ChebExpansion::new();
    while let Some(m) = rest.degree() {
        let lc = rest.leading_coeff().unwrap().clone();
        let c = if m == 0 { lc } else { lc / BigRational::from_integer(num_bigint::BigInt::one() << (m - 1)) };
        rest = &rest - &table[m].scale(&c);
        debug_assert!(rest.degree().is_none_or(|d| d < m));
        out.add_term(m, c);
    }
    out
}

pub fn from_cheb(e: &ChebExpansion) -> RatPoly {
    let Some(top) = e.max_degree() else {
        return RatPoly::zero();
    };
    let table = cheb_table(top);
    e.iter()
        .fold(RatPoly::zero(), |acc, (m, c)| &acc + &table[m].scale(c))
}

/// Checks `2 z^d P((z^2+1)/(2z)) = z^{2d} + 1` as an identity of rational
/// functions: the left side is built over the denominator `(2z)^d`, which must
/// divide the cleared numerator exactly.
pub(crate) fn joukowski_conjugates_power(p: &RatPoly, d: usize) -> bool {
    let Some(deg) = p.degree() else {
        return false;
    };
    if deg > d {
        return false;
    }
    let z2_plus_1 = RatPoly::from_ints(&[1, 0, 1]);
    let two_z = RatPoly::from_ints(&[0, 2]);
    // P(x) = numerator / (2z)^d with x = (z^2+1)/(2z)
    let mut numerator = RatPoly::zero();
    let mut up = RatPoly::one();
    for k in 0..=d {
        let c = p.coeff(k);
        if !c.is_zero() {
            let term = &up * &two_z.pow((d - k) as u32);
            numerator = &numerator + &term.scale(&c);
        }
        up = &up * &z2_plus_1;
    }
    let denominator = two_z.pow(d as u32);
    let lhs = &RatPoly::monomial(BigRational::from_integer(2.into()), d) * &numerator;
    let (quot, rem) = lhs.div_rem(&denominator);
    let mut target = RatPoly::monomial(BigRational::one(), 2 * d);
    target = &target + &RatPoly::one();
    rem.is_zero() && quot == target
}

/// `T_d((z + 1/z)/2) = (z^d + z^{-d})/2`, verified exactly.
pub fn joukowski_identity_check(d: usize) -> bool {
    d >= 1 && joukowski_conjugates_power(&cheb(d), d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn low_degree_chebyshev() {
        assert_eq!(cheb(0), RatPoly::one());
        assert_eq!(cheb(1), RatPoly::z());
        assert_eq!(cheb(2), RatPoly::from_ints(&[-1, 0, 2]));
        assert_eq!(cheb(6), RatPoly::from_ints(&[-1, 0, 18, 0, -48, 0, 32]));
    }

    #[test]
    fn chebyshev_matches_cosine() {
        // T_n(cos t) = cos(n t)
        for n in 0..15usize {
            let p = cheb(n);
            for &t in &[0.1f64, 0.7, 1.3, 2.9] {
                let x = t.cos();
                let v = p.coeffs().iter().rev().fold(0.0, |acc, c| {
                    acc * x + num_traits::ToPrimitive::to_f64(c).unwrap()
                });
                assert!((v - (n as f64 * t).cos()).abs() < 1e-9, "n={n} t={t}");
            }
        }
    }

    #[test]
    fn greedy_expansion_examples() {
        let t3_t2 = &cheb(3) + &cheb(2);
        assert_eq!(to_cheb(&t3_t2), ChebExpansion::from_terms([(3, r(1, 1)), (2, r(1, 1))]));
        assert_eq!(to_cheb(&RatPoly::z()), ChebExpansion::from_terms([(1, r(1, 1))]));
        // 8z^4 = T_4 + 4 T_2 + 3
        let e = to_cheb(&RatPoly::from_ints(&[0, 0, 0, 0, 8]));
        assert_eq!(e, ChebExpansion::from_terms([(4, r(1, 1)), (2, r(4, 1)), (0, r(3, 1))]));
        assert!(to_cheb(&RatPoly::zero()).is_empty());
    }

    #[test]
    fn reconstruction_examples() {
        assert!(from_cheb(&ChebExpansion::new()).is_zero());
        let half = ChebExpansion::from_terms([(2, r(1, 2)), (0, r(1, 2))]);
        assert_eq!(from_cheb(&half), RatPoly::from_ints(&[0, 0, 1]));
        assert_eq!(from_cheb(&ChebExpansion::from_terms([(6, r(1, 1))])), cheb(6));
    }

    #[test]
    fn zero_terms_are_not_stored() {
        let mut e = ChebExpansion::from_terms([(3, r(1, 2)), (1, r(0, 1))]);
        assert_eq!(e.len(), 1);
        e.add_term(3, r(-1, 2));
        assert!(e.is_empty());
    }

    #[test]
    fn joukowski_small_degrees() {
        assert!(joukowski_identity_check(1));
        assert!(joukowski_identity_check(2));
        assert!(!joukowski_identity_check(0));
    }

    #[test]
    fn joukowski_rejects_perturbed_polynomial() {
        let bumped = &cheb(5) + &RatPoly::monomial(r(1, 1000), 2);
        assert!(!joukowski_conjugates_power(&bumped, 5));
        assert!(!joukowski_conjugates_power(&cheb(4), 5));
    }
}
