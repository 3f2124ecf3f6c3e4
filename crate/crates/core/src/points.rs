//! Endpoint pairs `(a, b)` with `T_n(a) = T_n(b)` and the predicate
//! `T_d(a) = T_d(b)`.
//!
//! Four models cover the cases the toolkit handles:
//! * [`PointPair::Node`]: `a = cos(pπ/n)`, `b = cos(qπ/n)`, decided by
//!   congruences modulo `2n`;
//! * [`PointPair::Shift`]: `a = (v + 1/v)/2`, `b = (w + 1/w)/2` with
//!   `w = ε_n^k v` or `w = ε_n^k / v`, decided by `k d mod n` when `v` is
//!   generic;
//! * [`PointPair::Rational`]: exact rational endpoints;
//! * [`PointPair::Numeric`]: floating-point endpoints with a tolerance, never
//!   certified.

use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::cyclotomic::divisors;
use crate::error::{Error, Result};
use crate::numeric::{BigComplex, NumCtx};
use crate::poly_core::{cheb, derivative};

pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub enum PointPair {
    Node { n: u64, p: i64, q: i64 },
    Shift { n: u64, k: i64, inverted: bool, v: Complex64, generic: bool },
    Rational { a: BigRational, b: BigRational },
    Numeric { a: Complex64, b: Complex64, tol: f64 },
}

/// A boolean decision together with how it was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CertifiedBool {
    pub value: bool,
    /// `true` when decided by exact arithmetic.
    pub certified: bool,
}

impl CertifiedBool {
    pub fn exact(value: bool) -> Self {
        Self { value, certified: true }
    }

    pub fn numeric(value: bool) -> Self {
        Self { value, certified: false }
    }
}

/// A pair that passed [`PointPair::validate`] for a given degree `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidPair {
    n: u64,
    pair: PointPair,
}

#[derive(Clone, Debug, PartialEq)]
pub enum EndpointValue {
    Exact(BigRational),
    Numeric(Complex64),
}

impl EndpointValue {
    pub fn to_c64(&self) -> Complex64 {
        match self {
            EndpointValue::Exact(r) => Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0),
            EndpointValue::Numeric(z) => *z,
        }
    }
}

/// `z0 = T_n(a) = T_n(b)` and the multiplicities of `a`, `b` as preimages.
#[derive(Clone, Debug, PartialEq)]
pub struct EndpointData {
    pub z0: EndpointValue,
    pub mult_a: u8,
    pub mult_b: u8,
}

fn invalid(reason: impl Into<String>) -> Error {
    Error::InvalidPair(reason.into())
}

/// `T_n(z)` by the three-term recurrence.
pub fn cheb_eval_c64(n: u64, z: Complex64) -> Complex64 {
    let (mut prev, mut cur) = (Complex64::new(1.0, 0.0), z);
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = 2.0 * z * cur - prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `T_n'(z) = n U_{n-1}(z)`.
fn cheb_derivative_c64(n: u64, z: Complex64) -> Complex64 {
    if n == 0 {
        return Complex64::new(0.0, 0.0);
    }
    let (mut prev, mut cur) = (Complex64::new(1.0, 0.0), 2.0 * z);
    for _ in 1..n - 1 {
        let next = 2.0 * z * cur - prev;
        prev = cur;
        cur = next;
    }
    let u = if n == 1 { prev } else { cur };
    n as f64 * u
}

fn shift_values(n: u64, k: i64, inverted: bool, v: Complex64) -> (Complex64, Complex64) {
    let t = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
    let eps = Complex64::new(t.cos(), t.sin());
    let w = if inverted { eps / v } else { eps * v };
    ((v + 1.0 / v) / 2.0, (w + 1.0 / w) / 2.0)
}

impl PointPair {
    /// Checks that the points are distinct and `T_n(a) = T_n(b)`.
    pub fn validate(&self, n: u64) -> Result<ValidPair> {
        if n == 0 {
            return Err(invalid("degree n must be positive"));
        }
        match self {
            PointPair::Node { n: pn, p, q } => {
                if *pn != n {
                    return Err(invalid(format!("node pair is for T_{pn}, problem is T_{n}")));
                }
                let m = 2 * n as i64;
                let (pm, qm) = (p.rem_euclid(m), q.rem_euclid(m));
                if pm == qm || pm == (m - qm) % m {
                    return Err(invalid("equal points: p = ±q mod 2n"));
                }
                if (pm - qm) % 2 != 0 {
                    return Err(invalid("parity: T_n(a) = (-1)^p differs from T_n(b) = (-1)^q"));
                }
            }
            PointPair::Shift { n: pn, k, inverted, v, generic } => {
                if *pn != n {
                    return Err(invalid(format!("shift pair is for T_{pn}, problem is T_{n}")));
                }
                if !(v.re.is_finite() && v.im.is_finite()) || v.norm() == 0.0 {
                    return Err(invalid("shift parameter v must be finite and nonzero"));
                }
                let km = k.rem_euclid(n as i64);
                if km == 0 {
                    return Err(invalid("equal points: k = 0 mod n gives w = v or w = 1/v"));
                }
                if *generic {
                    for d in divisors(n) {
                        let v2d = v.powu(2 * d as u32);
                        for sign in [1i64, -1] {
                            let t = 2.0 * std::f64::consts::PI * (sign * km * d as i64) as f64 / n as f64;
                            let rel = v2d * Complex64::new(t.cos(), t.sin());
                            if (rel - 1.0).norm() <= DEFAULT_TOL {
                                return Err(invalid(format!(
                                    "non-generic parameter: v^{} = ε_n^{}",
                                    2 * d,
                                    -sign * km * d as i64
                                )));
                            }
                        }
                    }
                } else {
                    let (a, b) = shift_values(n, *k, *inverted, *v);
                    if (a - b).norm() <= DEFAULT_TOL {
                        return Err(invalid("equal points"));
                    }
                }
            }
            PointPair::Rational { a, b } => {
                if a == b {
                    return Err(invalid("equal points"));
                }
                let t = cheb(n as usize);
                if t.eval(a) != t.eval(b) {
                    return Err(invalid("T_n(a) != T_n(b)"));
                }
            }
            PointPair::Numeric { a, b, tol } => {
                if tol.is_nan() || *tol <= 0.0 {
                    return Err(invalid("tolerance must be positive"));
                }
                if (a - b).norm() <= *tol {
                    return Err(invalid("equal points within tolerance"));
                }
                let gap = (cheb_eval_c64(n, *a) - cheb_eval_c64(n, *b)).norm();
                if gap > *tol {
                    return Err(invalid(format!("|T_n(a) - T_n(b)| = {gap:e} exceeds tolerance")));
                }
            }
        }
        Ok(ValidPair { n, pair: self.clone() })
    }
}

impl ValidPair {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn pair(&self) -> &PointPair {
        &self.pair
    }

    /// Whether decisions on this pair are made in exact arithmetic.
    pub fn is_exact(&self) -> bool {
        match &self.pair {
            PointPair::Node { .. } | PointPair::Rational { .. } => true,
            PointPair::Shift { generic, .. } => *generic,
            PointPair::Numeric { .. } => false,
        }
    }

    pub fn tolerance(&self) -> f64 {
        match &self.pair {
            PointPair::Numeric { tol, .. } => *tol,
            _ => DEFAULT_TOL,
        }
    }

    /// Decides `T_d(a) = T_d(b)`.
    pub fn cheb_equal_at(&self, d: u64) -> CertifiedBool {
        match &self.pair {
            PointPair::Node { p, q, .. } => {
                let m = 2 * self.n as i128;
                let (pd, qd) = (*p as i128 * d as i128, *q as i128 * d as i128);
                CertifiedBool::exact((pd - qd).rem_euclid(m) == 0 || (pd + qd).rem_euclid(m) == 0)
            }
            PointPair::Shift { k, generic: true, .. } => {
                CertifiedBool::exact((*k as i128 * d as i128).rem_euclid(self.n as i128) == 0)
            }
            PointPair::Rational { a, b } => {
                let t = cheb(d as usize);
                CertifiedBool::exact(t.eval(a) == t.eval(b))
            }
            PointPair::Shift { .. } | PointPair::Numeric { .. } => {
                let (a, b) = self.point_values_c64();
                let gap = (cheb_eval_c64(d, a) - cheb_eval_c64(d, b)).norm();
                CertifiedBool::numeric(gap <= self.tolerance())
            }
        }
    }

    /// Double-precision endpoint values.
    pub fn point_values_c64(&self) -> (Complex64, Complex64) {
        match &self.pair {
            PointPair::Node { p, q, .. } => {
                let c = |j: i64| {
                    let j = j.rem_euclid(2 * self.n as i64);
                    Complex64::new((std::f64::consts::PI * j as f64 / self.n as f64).cos(), 0.0)
                };
                (c(*p), c(*q))
            }
            PointPair::Shift { k, inverted, v, .. } => shift_values(self.n, *k, *inverted, *v),
            PointPair::Rational { a, b } => (
                Complex64::new(a.to_f64().unwrap_or(f64::NAN), 0.0),
                Complex64::new(b.to_f64().unwrap_or(f64::NAN), 0.0),
            ),
            PointPair::Numeric { a, b, .. } => (*a, *b),
        }
    }

    /// Endpoint values at the context's precision.
    pub fn point_values(&self, ctx: &mut NumCtx) -> (BigComplex, BigComplex) {
        match &self.pair {
            PointPair::Node { p, q, .. } => {
                let m = 2 * self.n;
                let mut node = |j: i64| {
                    let (u, w) = (ctx.root_of_unity(j, m), ctx.root_of_unity(-j, m));
                    let s = ctx.add(&u, &w);
                    ctx.half(&s)
                };
                (node(*p), node(*q))
            }
            PointPair::Shift { k, inverted, v, .. } => {
                let v = ctx.from_c64(*v);
                let eps = ctx.root_of_unity(*k, self.n);
                let w = if *inverted { ctx.div(&eps, &v) } else { ctx.mul(&eps, &v) };
                let one = ctx.one();
                let jouk = |ctx: &NumCtx, x: &BigComplex| {
                    let s = ctx.add(x, &ctx.div(&one, x));
                    ctx.half(&s)
                };
                (jouk(ctx, &v), jouk(ctx, &w))
            }
            PointPair::Rational { a, b } => (ctx.from_rational(a), ctx.from_rational(b)),
            PointPair::Numeric { a, b, .. } => (ctx.from_c64(*a), ctx.from_c64(*b)),
        }
    }

    /// `T_n(a)` and the multiplicity (1 or 2) of each endpoint.
    pub fn endpoint_data(&self) -> EndpointData {
        let n = self.n;
        match &self.pair {
            PointPair::Node { p, q, .. } => {
                let m = 2 * n as i64;
                let mult = |j: i64| {
                    let j = j.rem_euclid(m);
                    if j == 0 || j == n as i64 {
                        1
                    } else {
                        2
                    }
                };
                let z0 = if p.is_even() { 1 } else { -1 };
                EndpointData {
                    z0: EndpointValue::Exact(BigRational::from_integer(z0.into())),
                    mult_a: mult(*p),
                    mult_b: mult(*q),
                }
            }
            PointPair::Rational { a, b } => {
                let t = cheb(n as usize);
                let dt = derivative(&t);
                let mult = |x: &BigRational| if dt.eval(x).is_zero() { 2 } else { 1 };
                EndpointData {
                    z0: EndpointValue::Exact(t.eval(a)),
                    mult_a: mult(a),
                    mult_b: mult(b),
                }
            }
            PointPair::Shift { .. } | PointPair::Numeric { .. } => {
                let (a, b) = self.point_values_c64();
                let scale = (n * n) as f64;
                let mult = |x: Complex64| {
                    if cheb_derivative_c64(n, x).norm() <= self.tolerance() * scale {
                        2
                    } else {
                        1
                    }
                };
                EndpointData {
                    z0: EndpointValue::Numeric(cheb_eval_c64(n, a)),
                    mult_a: mult(a),
                    mult_b: mult(b),
                }
            }
        }
    }
}
