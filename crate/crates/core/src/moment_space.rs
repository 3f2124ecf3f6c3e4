//! The space `V(T_n, a, b)` of polynomials `q` whose moments against all
//! powers of `T_n` vanish on `[a, b]`.
//!
//! It has the basis `T_m'` over the degrees `m` with `T_d(a) = T_d(b)`,
//! `d = gcd(n, m)`. Membership is therefore read off the Chebyshev expansion
//! of `∫q`; the moment oracle is only consulted for witnesses.

use num_integer::Integer;
use num_rational::BigRational;

use crate::cyclotomic::divisors;
use crate::moments::{MomentConfig, MomentOracle, MomentValue, DEFAULT_I_MAX};
use crate::points::{CertifiedBool, ValidPair};
use crate::poly_core::{antiderivative, cheb, derivative, to_cheb, RatPoly};
use crate::representation::decompose_through;

/// Degrees `m` in `1..=m_max` for which `T_m'` is a basis element.
pub fn basis_degrees(pair: &ValidPair, m_max: usize) -> Vec<usize> {
    let n = pair.n();
    (1..=m_max)
        .filter(|&m| pair.cheb_equal_at(n.gcd(&(m as u64))).value)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateTerm {
    pub degree: usize,
    pub coeff: BigRational,
    /// `gcd(n, degree)`.
    pub gcd: u64,
}

#[derive(Clone, Debug)]
pub enum Verdict {
    /// `∫q = Σ coeff T_degree + const`, every term a basis element.
    Member { certificate: Vec<CertificateTerm> },
    /// Degrees whose coefficient is nonzero but whose `T_gcd` separates `a`
    /// from `b`, and the first nonzero moment found by a bounded search.
    NonMember { violations: Vec<usize>, witness: Option<(usize, MomentValue)> },
}

#[derive(Clone, Debug)]
pub struct MembershipVerdict {
    pub verdict: Verdict,
    pub certified: bool,
}

impl MembershipVerdict {
    pub fn is_member(&self) -> bool {
        matches!(self.verdict, Verdict::Member { .. })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct MemberOptions {
    /// Largest moment index tried when looking for a refutation witness.
    pub i_max: usize,
    pub moments: MomentConfig,
}

impl Default for MemberOptions {
    fn default() -> Self {
        Self { i_max: DEFAULT_I_MAX, moments: MomentConfig::default() }
    }
}

pub fn is_member(pair: &ValidPair, q: &RatPoly) -> MembershipVerdict {
    is_member_with(pair, q, &MemberOptions::default())
}

pub fn is_member_with(pair: &ValidPair, q: &RatPoly, options: &MemberOptions) -> MembershipVerdict {
    let n = pair.n();
    let expansion = to_cheb(&antiderivative(q)).without_constant();
    let mut certified = pair.is_exact();
    let mut certificate = Vec::new();
    let mut violations = Vec::new();
    for (m, c) in expansion.iter() {
        let gcd = n.gcd(&(m as u64));
        let decision = pair.cheb_equal_at(gcd);
        certified &= decision.certified;
        if decision.value {
            certificate.push(CertificateTerm { degree: m, coeff: c.clone(), gcd });
        } else {
            violations.push(m);
        }
    }
    let verdict = if violations.is_empty() {
        Verdict::Member { certificate }
    } else {
        let witness = MomentOracle::with_config(pair, options.moments).first_nonzero(q, options.i_max);
        Verdict::NonMember { violations, witness }
    };
    MembershipVerdict { verdict, certified }
}

/// `T_n = outer(T_w)` and `Q = inner_image(T_w)` with `T_w(a) = T_w(b)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionWitness {
    pub w: u64,
    pub outer: RatPoly,
    pub inner_image: RatPoly,
}

/// One divisor tried by [`composition_search`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorAttempt {
    pub w: u64,
    pub endpoint: CertifiedBool,
    /// `Q̃` with `Q̃(T_w) = Q`, or the degrees preventing it.
    pub decomposition: Result<RatPoly, Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionSearch {
    pub attempts: Vec<DivisorAttempt>,
    pub witness: Option<CompositionWitness>,
}

/// Looks for a common right factor `T_w` of `T_n` and `Q` with
/// `T_w(a) = T_w(b)`, trying divisors `w >= 2` of `n` largest first.
///
/// Any right factor of `T_n` is a linear change of some `T_w`, and linear
/// changes neither affect decomposability of `Q` nor `W(a) = W(b)`, so the
/// divisors of `n` are all that needs trying.
pub fn composition_search(pair: &ValidPair, big_q: &RatPoly) -> CompositionSearch {
    let n = pair.n();
    let mut attempts = Vec::new();
    for w in divisors(n).into_iter().rev().filter(|&w| w >= 2) {
        let endpoint = pair.cheb_equal_at(w);
        let decomposition = decompose_through(big_q, w).map_err(|e| match e {
            crate::Error::NotDecomposable { offending, .. } => offending,
            other => unreachable!("{other}"),
        });
        let found = endpoint.value && decomposition.is_ok();
        attempts.push(DivisorAttempt { w, endpoint, decomposition: decomposition.clone() });
        if found {
            let witness = CompositionWitness {
                w,
                outer: cheb((n / w) as usize),
                inner_image: decomposition.unwrap(),
            };
            return CompositionSearch { attempts, witness: Some(witness) };
        }
    }
    CompositionSearch { attempts, witness: None }
}

pub fn composition_condition(pair: &ValidPair, big_q: &RatPoly) -> Option<CompositionWitness> {
    composition_search(pair, big_q).witness
}

/// A member of the moment space that does not satisfy the composition
/// condition.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub m1: usize,
    pub m2: usize,
    pub q: RatPoly,
    pub membership: MembershipVerdict,
    pub search: CompositionSearch,
}

/// `q = T_m1' + T_m2'` for the first coprime pair `2 <= m1 < m2 <= n` of basis
/// degrees, with its membership certificate and the failed divisor search.
pub fn counterexample(pair: &ValidPair) -> Option<Counterexample> {
    let n = pair.n() as usize;
    let basis: Vec<usize> = basis_degrees(pair, n).into_iter().filter(|&m| m >= 2).collect();
    for (i, &m1) in basis.iter().enumerate() {
        for &m2 in &basis[i + 1..] {
            if m1.gcd(&m2) != 1 {
                continue;
            }
            let q = &derivative(&cheb(m1)) + &derivative(&cheb(m2));
            let membership = is_member(pair, &q);
            let search = composition_search(pair, &antiderivative(&q));
            if membership.is_member() && search.witness.is_none() {
                return Some(Counterexample { m1, m2, q, membership, search });
            }
        }
    }
    None
}
