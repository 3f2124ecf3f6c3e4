//! The moment oracle: `∫_a^b T_n(z)^i q(z) dz`, computed as `R(b) - R(a)` for
//! the primitive `R` of `T_n^i q`.
//!
//! Rational endpoints are evaluated in `Q`, node endpoints in `Q(ε_{2n})`
//! (with `a = (u^p + u^{-p})/2`, `u = ε_{2n}`), and everything else
//! numerically with an error estimate. No quadrature is involved.

use std::sync::Arc;

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::cyclotomic::{CycloField, CycloNum};
use crate::numeric::{to_c64, BigComplex, NumCtx};
use crate::points::{PointPair, ValidPair};
use crate::poly_core::{antiderivative, cheb, RatPoly};

pub const DEFAULT_PRECISION: usize = 128;
pub const DEFAULT_I_MAX: usize = 24;
/// Bits of the working precision not trusted by the numeric error bound.
const SLACK_BITS: i32 = 8;

#[derive(Clone, Debug)]
pub enum MomentValue {
    ExactRational(BigRational),
    ExactCyclo(CycloNum),
    Numeric {
        value: BigComplex,
        error_bound: f64,
        /// Values with modulus at most `error_bound + tolerance` count as zero.
        tolerance: f64,
    },
}

impl MomentValue {
    pub fn is_exact(&self) -> bool {
        !matches!(self, MomentValue::Numeric { .. })
    }

    /// Exact zero test for exact variants, thresholded otherwise.
    pub fn is_zero(&self) -> bool {
        match self {
            MomentValue::ExactRational(r) => r.is_zero(),
            MomentValue::ExactCyclo(c) => c.is_zero(),
            MomentValue::Numeric { value, error_bound, tolerance } => {
                to_c64(value).norm() <= error_bound + tolerance
            }
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            MomentValue::ExactRational(r) => Complex64::new(r.to_f64().unwrap_or(f64::NAN), 0.0),
            MomentValue::ExactCyclo(c) => to_c64(&c.embed(&mut NumCtx::new(64))),
            MomentValue::Numeric { value, .. } => to_c64(value),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct MomentConfig {
    /// Bits used for numeric evaluation.
    pub precision: usize,
    /// Evaluate numerically even when an exact mode is available.
    pub force_numeric: bool,
}

impl Default for MomentConfig {
    fn default() -> Self {
        Self { precision: DEFAULT_PRECISION, force_numeric: false }
    }
}

enum Mode {
    Rational { a: BigRational, b: BigRational },
    Cyclo { field: Arc<CycloField>, p: i64, q: i64 },
    Numeric { ctx: Box<NumCtx>, a: BigComplex, b: BigComplex, radius: f64, input_tol: f64 },
}

/// Moment evaluator for one `(n, pair)`; caches the powers `T_n^i`.
pub struct MomentOracle {
    t_n: RatPoly,
    powers: Vec<RatPoly>,
    mode: Mode,
}

impl MomentOracle {
    pub fn new(pair: &ValidPair) -> Self {
        Self::with_config(pair, MomentConfig::default())
    }

    pub fn with_config(pair: &ValidPair, config: MomentConfig) -> Self {
        let n = pair.n();
        let mode = match pair.pair() {
            PointPair::Rational { a, b } if !config.force_numeric => {
                Mode::Rational { a: a.clone(), b: b.clone() }
            }
            PointPair::Node { p, q, .. } if !config.force_numeric => {
                Mode::Cyclo { field: CycloField::new(2 * n), p: *p, q: *q }
            }
            other => {
                let mut ctx = NumCtx::new(config.precision);
                let (a, b) = pair.point_values(&mut ctx);
                let radius = ctx.abs_f64(&a).max(ctx.abs_f64(&b)).max(1.0);
                // inputs known only to the pair tolerance: scale the zero threshold
                let input_tol = match other {
                    PointPair::Numeric { tol, .. } => *tol,
                    _ => 0.0,
                };
                Mode::Numeric { ctx: Box::new(ctx), a, b, radius, input_tol }
            }
        };
        Self { t_n: cheb(n as usize), powers: vec![RatPoly::one()], mode }
    }

    fn power(&mut self, i: usize) -> &RatPoly {
        while self.powers.len() <= i {
            let next = self.powers.last().unwrap() * &self.t_n;
            self.powers.push(next);
        }
        &self.powers[i]
    }

    /// `∫_a^b T_n^i q`.
    pub fn moment(&mut self, q: &RatPoly, i: usize) -> MomentValue {
        let integrand = self.power(i) * q;
        let primitive = antiderivative(&integrand);
        self.evaluate_difference(&primitive)
    }

    /// `R(b) - R(a)`.
    pub fn evaluate_difference(&mut self, r: &RatPoly) -> MomentValue {
        match &mut self.mode {
            Mode::Rational { a, b } => MomentValue::ExactRational(r.eval(b) - r.eval(a)),
            Mode::Cyclo { field, p, q } => {
                let rb = field.eval_joukowski(r, *q);
                let ra = field.eval_joukowski(r, *p);
                MomentValue::ExactCyclo(rb.try_sub(&ra).expect("same field"))
            }
            Mode::Numeric { ctx, a, b, radius, input_tol } => {
                let rb = ctx.eval_poly(r.coeffs(), b);
                let ra = ctx.eval_poly(r.coeffs(), a);
                let value = ctx.sub(&rb, &ra);
                let deg = r.degree().unwrap_or(0) as i32;
                let norm = r.l1_norm().to_f64().unwrap_or(f64::INFINITY) * radius.powi(deg);
                let error_bound = 2.0 * norm * 2f64.powi(SLACK_BITS - ctx.bits() as i32);
                let tolerance = if *input_tol > 0.0 {
                    *input_tol * norm.max(1.0)
                } else {
                    crate::points::DEFAULT_TOL
                };
                MomentValue::Numeric { value, error_bound, tolerance }
            }
        }
    }

    /// Moments for `i = 0..=i_max`.
    pub fn sweep(&mut self, q: &RatPoly, i_max: usize) -> Vec<MomentValue> {
        (0..=i_max).map(|i| self.moment(q, i)).collect()
    }

    /// Smallest `i <= i_max` with a nonzero moment.
    pub fn first_nonzero(&mut self, q: &RatPoly, i_max: usize) -> Option<(usize, MomentValue)> {
        (0..=i_max).find_map(|i| {
            let m = self.moment(q, i);
            (!m.is_zero()).then_some((i, m))
        })
    }
}

pub fn moment(pair: &ValidPair, q: &RatPoly, i: usize) -> MomentValue {
    MomentOracle::new(pair).moment(q, i)
}

pub fn moment_sweep(pair: &ValidPair, q: &RatPoly, i_max: usize) -> Vec<MomentValue> {
    MomentOracle::new(pair).sweep(q, i_max)
}

pub fn first_nonzero_moment(pair: &ValidPair, q: &RatPoly, i_max: usize) -> Option<usize> {
    MomentOracle::new(pair).first_nonzero(q, i_max).map(|(i, _)| i)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly_core::derivative;

    fn node_6_5_1() -> ValidPair {
        PointPair::Node { n: 6, p: 5, q: 1 }.validate(6).unwrap()
    }

    #[test]
    fn single_member_moment_is_exact_zero() {
        let q = derivative(&cheb(2));
        let m = moment(&node_6_5_1(), &q, 0);
        assert!(m.is_exact());
        assert!(m.is_zero());
    }

    #[test]
    fn constant_integrand_gives_b_minus_a() {
        let pair = node_6_5_1();
        let MomentValue::ExactCyclo(m) = moment(&pair, &RatPoly::one(), 0) else {
            panic!("expected a cyclotomic value");
        };
        let field = CycloField::new(12);
        let sqrt3 = field.root_power(1).try_add(&field.root_power(-1)).unwrap();
        assert_eq!(m, sqrt3);
        let v = to_c64(&m.embed(&mut NumCtx::new(64)));
        assert!((v.re - 3f64.sqrt()).abs() < 1e-12);
        assert_eq!(first_nonzero_moment(&pair, &RatPoly::one(), 0), Some(0));
    }

    #[test]
    fn counterexample_sweep_vanishes() {
        let q = &derivative(&cheb(3)) + &derivative(&cheb(2));
        let sweep = moment_sweep(&node_6_5_1(), &q, 20);
        assert_eq!(sweep.len(), 21);
        assert!(sweep.iter().all(|m| m.is_exact() && m.is_zero()));
        assert_eq!(first_nonzero_moment(&node_6_5_1(), &q, 24), None);
    }

    #[test]
    fn zero_integrand() {
        assert!(moment_sweep(&node_6_5_1(), &RatPoly::zero(), 5).iter().all(MomentValue::is_zero));
    }

    #[test]
    fn non_member_has_nonzero_moment() {
        let q = derivative(&cheb(5));
        let sweep = moment_sweep(&node_6_5_1(), &q, 24);
        assert!(sweep.iter().any(|m| !m.is_zero()));
        assert!(first_nonzero_moment(&node_6_5_1(), &q, 24).is_some());
    }

    #[test]
    fn rational_pair_is_exact_in_q() {
        let pair = PointPair::Rational {
            a: BigRational::new(1.into(), 2.into()),
            b: BigRational::new((-1).into(), 2.into()),
        }
        .validate(6)
        .unwrap();
        // T_2 is even, so T_2' integrates to zero between ±1/2
        let m = moment(&pair, &derivative(&cheb(2)), 3);
        assert!(matches!(m, MomentValue::ExactRational(ref r) if r.is_zero()));
        assert!(!moment(&pair, &RatPoly::one(), 0).is_zero());
    }

    #[test]
    fn numeric_mode_tracks_exact_mode() {
        let pair = node_6_5_1();
        let q = RatPoly::from_ints(&[1, -2, 3]);
        let mut exact = MomentOracle::new(&pair);
        let mut numeric = MomentOracle::with_config(&pair, MomentConfig { precision: 128, force_numeric: true });
        for i in 0..4 {
            let e = exact.moment(&q, i).to_c64();
            let n = numeric.moment(&q, i).to_c64();
            assert!((e - n).norm() < 1e-9 * (1.0 + e.norm()));
        }
    }
}
