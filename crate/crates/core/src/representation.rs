//! Two-term representation `∫q = A(T_d1) + B(T_d2) + c` of members of the
//! moment space.
//!
//! Write `a = (v + 1/v)/2`, `b = (w + 1/w)/2`. Then `T_m(a) = T_m(b)` holds
//! iff `v^m = w^{μm}` for some sign `μ`. Terms of the Chebyshev certificate
//! that share a sign can be merged: if `v^r = w^{μr}` and `v^s = w^{μs}` then
//! `v^g = w^{μg}` for `g = gcd(r, s)`, so `T_g(a) = T_g(b)` and both terms
//! factor through `T_g`. Two signs give at most two groups.

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::cyclotomic::divisors;
use crate::error::{Error, Result};
use crate::moment_space::{is_member, Verdict};
use crate::points::{PointPair, ValidPair};
use crate::poly_core::{antiderivative, cheb, compose, from_cheb, to_cheb, ChebExpansion, RatPoly};

/// `A` with `A(T_d) = F`.
///
/// `F = Σ c_m T_m` factors through `T_d` exactly when `d | m` for every
/// non-constant term, and then `A = Σ c_m T_{m/d}`.
pub fn decompose_through(f: &RatPoly, d: u64) -> Result<RatPoly> {
    assert!(d >= 1, "inner Chebyshev degree must be positive");
    let expansion = to_cheb(f);
    let d = d as usize;
    let offending: Vec<usize> = expansion.iter().map(|(m, _)| m).filter(|m| m % d != 0).collect();
    if !offending.is_empty() {
        return Err(Error::NotDecomposable { d: d as u64, offending });
    }
    let outer = ChebExpansion::from_terms(expansion.iter().map(|(m, c)| (m / d, c.clone())));
    Ok(from_cheb(&outer))
}

/// Signs `μ` with `v^m = w^{μm}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MuSigns {
    pub plus: bool,
    pub minus: bool,
}

impl MuSigns {
    pub fn is_empty(&self) -> bool {
        !self.plus && !self.minus
    }

    pub fn both(&self) -> bool {
        self.plus && self.minus
    }

    pub fn contains(&self, sign: i8) -> bool {
        if sign > 0 {
            self.plus
        } else {
            self.minus
        }
    }

    pub fn to_vec(&self) -> Vec<i8> {
        let mut out = Vec::new();
        if self.plus {
            out.push(1);
        }
        if self.minus {
            out.push(-1);
        }
        out
    }
}

/// `U_{k}(x)`, Chebyshev polynomial of the second kind.
fn cheb_u_eval(k: usize, x: &BigRational) -> BigRational {
    let two_x = x * BigRational::from_integer(2.into());
    let (mut prev, mut cur) = (BigRational::one(), two_x.clone());
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = &two_x * &cur - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn sign_of(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Rational endpoints: `v = a + α` with `α² = a² - 1` chosen so `|v| >= 1`
/// (`α = sgn(a)√(a²-1)` when `a² > 1`, `α = i√(1-a²)` when `a² < 1`). Then
/// `v^m = T_m(a) + α U_{m-1}(a)`, and comparing with `w^{±m}` reduces to the
/// sign of `α U_{m-1}(a) / (β U_{m-1}(b))`, which is rational.
fn rational_mu_signs(a: &BigRational, b: &BigRational, m: u64) -> MuSigns {
    let t = cheb(m as usize);
    let (ta, tb) = (t.eval(a), t.eval(b));
    if ta != tb {
        return MuSigns::default();
    }
    let one = BigRational::one();
    if &ta * &ta == one {
        // v^m = w^{±m} = ±1 simultaneously
        return MuSigns { plus: true, minus: true };
    }
    let (sa, sb) = (a * a - &one, b * b - &one);
    let (ua, ub) = (cheb_u_eval(m as usize - 1, a), cheb_u_eval(m as usize - 1, b));
    let ratio_sign = match (sign_of(&sa), sign_of(&sb)) {
        (1, 1) => sign_of(a) * sign_of(b) * sign_of(&ua) * sign_of(&ub),
        (-1, -1) => sign_of(&ua) * sign_of(&ub),
        _ => unreachable!("T_m(a) = T_m(b) with T_m(a)^2 != 1 forces a^2 - 1 and b^2 - 1 to share a sign"),
    };
    MuSigns { plus: ratio_sign > 0, minus: ratio_sign < 0 }
}

/// The signs `μ` for which `v^m = w^{μm}` on an exact pair.
pub fn mu_signs(pair: &ValidPair, m: u64) -> Result<MuSigns> {
    let n = pair.n() as i128;
    match pair.pair() {
        PointPair::Node { p, q, .. } => {
            let modulus = 2 * n;
            let (pm, qm) = (*p as i128 * m as i128, *q as i128 * m as i128);
            Ok(MuSigns {
                plus: (pm - qm).rem_euclid(modulus) == 0,
                minus: (pm + qm).rem_euclid(modulus) == 0,
            })
        }
        PointPair::Shift { k, inverted, generic: true, .. } => {
            let holds = (*k as i128 * m as i128).rem_euclid(n) == 0;
            Ok(if *inverted {
                MuSigns { plus: false, minus: holds }
            } else {
                MuSigns { plus: holds, minus: false }
            })
        }
        PointPair::Rational { a, b } => Ok(rational_mu_signs(a, b, m)),
        PointPair::Shift { .. } | PointPair::Numeric { .. } => Err(Error::NonExactPair),
    }
}

/// Numeric Joukowski preimages `(v, w)` with `|v|, |w| >= 1`, for checks.
pub fn joukowski_preimages(a: Complex64, b: Complex64) -> (Complex64, Complex64) {
    let pre = |x: Complex64| {
        if x.im == 0.0 && x.re.abs() < 1.0 {
            // unit circle: take the root in the upper half plane
            return Complex64::new(x.re, (1.0 - x.re * x.re).sqrt());
        }
        let r = (x * x - 1.0).sqrt();
        let v = x + r;
        if v.norm() >= 1.0 {
            v
        } else {
            x - r
        }
    };
    (pre(a), pre(b))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoTermRep {
    pub d1: u64,
    pub a: RatPoly,
    pub d2: u64,
    pub b: RatPoly,
    /// The `T_0` coefficient of `∫q`.
    pub constant: BigRational,
}

impl TwoTermRep {
    /// `A(T_d1) + B(T_d2) + constant`.
    pub fn reconstruct(&self) -> RatPoly {
        let first = compose(&self.a, &cheb(self.d1 as usize));
        let second = compose(&self.b, &cheb(self.d2 as usize));
        &(&first + &second) + &RatPoly::constant(self.constant.clone())
    }
}

#[derive(Default)]
struct Group {
    gcd: u64,
    terms: Vec<(usize, BigRational)>,
}

impl Group {
    fn push(&mut self, d: u64, m: usize, c: BigRational) {
        self.gcd = self.gcd.gcd(&d);
        self.terms.push((m, c));
    }

    fn outer(&self) -> RatPoly {
        let f = from_cheb(&ChebExpansion::from_terms(self.terms.iter().cloned()));
        decompose_through(&f, self.gcd).expect("group gcd divides each degree")
    }
}

/// Merges the certificate of a member into at most two terms.
///
/// Each certificate degree `m` contributes through `d = gcd(n, m)`, and is
/// grouped by the signs `μ` with `v^d = w^{μd}`. Degrees admitting both signs
/// are placed last, in descending order, into whichever group keeps its
/// running gcd larger. The group gcds divide `n`.
pub fn two_term(pair: &ValidPair, q: &RatPoly) -> Result<TwoTermRep> {
    if !pair.is_exact() {
        return Err(Error::NonExactPair);
    }
    let verdict = is_member(pair, q);
    if let Verdict::NonMember { violations, .. } = verdict.verdict {
        return Err(Error::NotAMember(violations));
    }
    let n = pair.n();
    let expansion = to_cheb(&antiderivative(q));
    let constant = expansion.constant();
    let terms = expansion.without_constant();
    if terms.is_empty() {
        return Ok(TwoTermRep { d1: n, a: RatPoly::zero(), d2: n, b: RatPoly::zero(), constant });
    }

    let (mut plus, mut minus) = (Group::default(), Group::default());
    let mut flexible = Vec::new();
    for (m, c) in terms.iter().rev() {
        let d = n.gcd(&(m as u64));
        let signs = mu_signs(pair, d)?;
        match (signs.plus, signs.minus) {
            (true, true) => flexible.push((d, m, c.clone())),
            (true, false) => plus.push(d, m, c.clone()),
            (false, true) => minus.push(d, m, c.clone()),
            (false, false) => unreachable!("member degree {m} without a μ-sign"),
        }
    }
    for (d, m, c) in flexible {
        let (gp, gm) = (plus.gcd.gcd(&d), minus.gcd.gcd(&d));
        let to_plus = match gp.cmp(&gm) {
            std::cmp::Ordering::Greater => true,
            std::cmp::Ordering::Less => false,
            std::cmp::Ordering::Equal => !plus.terms.is_empty() || minus.terms.is_empty(),
        };
        if to_plus {
            plus.push(d, m, c);
        } else {
            minus.push(d, m, c);
        }
    }

    let mut groups: Vec<Group> = [plus, minus].into_iter().filter(|g| !g.terms.is_empty()).collect();
    for g in &groups {
        assert!(g.gcd > 1, "merged group with gcd 1 would force a = b");
        assert!(divisors(n).contains(&g.gcd));
        assert!(pair.cheb_equal_at(g.gcd).value, "merged gcd {} fails the endpoint condition", g.gcd);
    }
    let first = groups.remove(0);
    let (d1, a) = (first.gcd, first.outer());
    let (d2, b) = match groups.pop() {
        Some(second) => (second.gcd, second.outer()),
        None => (d1, RatPoly::zero()),
    };
    Ok(TwoTermRep { d1, a, d2, b, constant })
}
