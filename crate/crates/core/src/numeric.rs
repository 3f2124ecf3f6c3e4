//! Arbitrary-precision complex numbers on top of `astro-float`.
//!
//! Used for embedding exact values, for the numeric endpoint models and for
//! inverse-branch evaluation above double precision. All operations go
//! through a [`NumCtx`], which owns the constants cache and the working
//! precision.

use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_complex::Complex64;
use num_rational::BigRational;

const RM: RoundingMode = RoundingMode::ToEven;
/// Extra bits carried internally on top of the requested precision.
const GUARD_BITS: usize = 64;

#[derive(Clone)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let z = to_c64(self);
        write!(f, "BigComplex({} {:+}i)", z.re, z.im)
    }
}

pub struct NumCtx {
    bits: usize,
    cc: Consts,
}

fn float_to_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    match x.as_raw_parts() {
        Some((words, _, sign, exp, _)) if !x.is_zero() => {
            // value = 0.m * 2^exp with the top word holding the leading bits
            let top = *words.last().unwrap() as f64;
            let magnitude = top * 2f64.powi(exp - 64);
            if sign == Sign::Neg {
                -magnitude
            } else {
                magnitude
            }
        }
        _ => 0.0,
    }
}

pub fn to_c64(z: &BigComplex) -> Complex64 {
    Complex64::new(float_to_f64(&z.re), float_to_f64(&z.im))
}

impl NumCtx {
    pub fn new(bits: usize) -> Self {
        Self {
            bits: bits.max(1),
            cc: Consts::new().expect("astro-float constants cache"),
        }
    }

    /// Requested precision in bits.
    pub fn bits(&self) -> usize {
        self.bits
    }

    fn p(&self) -> usize {
        self.bits + GUARD_BITS
    }

    pub fn real(&self, x: f64) -> BigFloat {
        BigFloat::from_f64(x, self.p())
    }

    pub fn zero(&self) -> BigComplex {
        self.from_c64(Complex64::new(0.0, 0.0))
    }

    pub fn one(&self) -> BigComplex {
        self.from_c64(Complex64::new(1.0, 0.0))
    }

    pub fn i(&self) -> BigComplex {
        self.from_c64(Complex64::new(0.0, 1.0))
    }

    pub fn from_c64(&self, z: Complex64) -> BigComplex {
        BigComplex { re: self.real(z.re), im: self.real(z.im) }
    }

    pub fn from_rational(&mut self, x: &BigRational) -> BigComplex {
        let p = self.p();
        let num = BigFloat::parse(&x.numer().to_string(), Radix::Dec, p, RM, &mut self.cc);
        let den = BigFloat::parse(&x.denom().to_string(), Radix::Dec, p, RM, &mut self.cc);
        BigComplex { re: num.div(&den, p, RM), im: BigFloat::from_f64(0.0, p) }
    }

    pub fn add(&self, x: &BigComplex, y: &BigComplex) -> BigComplex {
        let p = self.p();
        BigComplex { re: x.re.add(&y.re, p, RM), im: x.im.add(&y.im, p, RM) }
    }

    pub fn sub(&self, x: &BigComplex, y: &BigComplex) -> BigComplex {
        let p = self.p();
        BigComplex { re: x.re.sub(&y.re, p, RM), im: x.im.sub(&y.im, p, RM) }
    }

    pub fn neg(&self, x: &BigComplex) -> BigComplex {
        BigComplex { re: x.re.neg(), im: x.im.neg() }
    }

    pub fn mul(&self, x: &BigComplex, y: &BigComplex) -> BigComplex {
        let p = self.p();
        let re = x.re.mul(&y.re, p, RM).sub(&x.im.mul(&y.im, p, RM), p, RM);
        let im = x.re.mul(&y.im, p, RM).add(&x.im.mul(&y.re, p, RM), p, RM);
        BigComplex { re, im }
    }

    pub fn scale(&self, x: &BigComplex, s: &BigFloat) -> BigComplex {
        let p = self.p();
        BigComplex { re: x.re.mul(s, p, RM), im: x.im.mul(s, p, RM) }
    }

    pub fn div(&self, x: &BigComplex, y: &BigComplex) -> BigComplex {
        let p = self.p();
        let norm = y.re.mul(&y.re, p, RM).add(&y.im.mul(&y.im, p, RM), p, RM);
        let conj = BigComplex { re: y.re.clone(), im: y.im.neg() };
        let num = self.mul(x, &conj);
        BigComplex { re: num.re.div(&norm, p, RM), im: num.im.div(&norm, p, RM) }
    }

    pub fn half(&self, x: &BigComplex) -> BigComplex {
        self.scale(x, &self.real(0.5))
    }

    pub fn abs(&self, x: &BigComplex) -> BigFloat {
        let p = self.p();
        x.re.mul(&x.re, p, RM).add(&x.im.mul(&x.im, p, RM), p, RM).sqrt(p, RM)
    }

    pub fn abs_f64(&self, x: &BigComplex) -> f64 {
        float_to_f64(&self.abs(x))
    }

    pub fn pi(&mut self) -> BigFloat {
        let p = self.p();
        self.cc.pi(p, RM)
    }

    /// `exp(2πi k / m)`.
    pub fn root_of_unity(&mut self, k: i64, m: u64) -> BigComplex {
        let m = m as i64;
        let k = k.rem_euclid(m);
        let p = self.p();
        let pi = self.pi();
        let angle = pi
            .mul(&BigFloat::from_i64(2 * k, p), p, RM)
            .div(&BigFloat::from_i64(m, p), p, RM);
        BigComplex {
            re: angle.cos(p, RM, &mut self.cc),
            im: angle.sin(p, RM, &mut self.cc),
        }
    }

    pub fn powi(&self, x: &BigComplex, e: u64) -> BigComplex {
        let mut acc = self.one();
        let mut base = x.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Principal square root, cut along the negative real axis.
    pub fn sqrt(&self, x: &BigComplex) -> BigComplex {
        let p = self.p();
        let r = self.abs(x);
        let half = self.real(0.5);
        let re = r.add(&x.re, p, RM).mul(&half, p, RM).sqrt(p, RM);
        let mut im = r.sub(&x.re, p, RM).mul(&half, p, RM).sqrt(p, RM);
        if x.im.is_negative() {
            im = im.neg();
        }
        BigComplex { re, im }
    }

    fn atan2(&mut self, y: &BigFloat, x: &BigFloat) -> BigFloat {
        let p = self.p();
        if x.is_zero() {
            let half_pi = self.pi().mul(&self.real(0.5), p, RM);
            return if y.is_zero() {
                BigFloat::from_f64(0.0, p)
            } else if y.is_negative() {
                half_pi.neg()
            } else {
                half_pi
            };
        }
        let base = y.div(x, p, RM).atan(p, RM, &mut self.cc);
        if x.is_positive() {
            base
        } else if y.is_negative() {
            base.sub(&self.pi(), p, RM)
        } else {
            base.add(&self.pi(), p, RM)
        }
    }

    /// Principal logarithm.
    pub fn ln(&mut self, x: &BigComplex) -> BigComplex {
        let p = self.p();
        let r = self.abs(x);
        let re = r.ln(p, RM, &mut self.cc);
        let im = self.atan2(&x.im, &x.re);
        BigComplex { re, im }
    }

    /// Principal arccosine, `-i ln(z + i sqrt(1 - z^2))`.
    pub fn acos(&mut self, z: &BigComplex) -> BigComplex {
        let one_minus = self.sub(&self.one(), &self.mul(z, z));
        let root = self.sqrt(&one_minus);
        let inner = self.add(z, &self.mul(&self.i(), &root));
        let l = self.ln(&inner);
        // -i * (re + i im) = im - i re
        BigComplex { re: l.im, im: l.re.neg() }
    }

    /// `cos(x + iy) = cos x cosh y - i sin x sinh y`.
    pub fn cos(&mut self, z: &BigComplex) -> BigComplex {
        let p = self.p();
        let cos_x = z.re.cos(p, RM, &mut self.cc);
        let sin_x = z.re.sin(p, RM, &mut self.cc);
        let cosh_y = z.im.cosh(p, RM, &mut self.cc);
        let sinh_y = z.im.sinh(p, RM, &mut self.cc);
        BigComplex {
            re: cos_x.mul(&cosh_y, p, RM),
            im: sin_x.mul(&sinh_y, p, RM).neg(),
        }
    }

    /// Horner evaluation of a rational polynomial.
    pub fn eval_poly(&mut self, coeffs: &[BigRational], x: &BigComplex) -> BigComplex {
        let mut acc = self.zero();
        for c in coeffs.iter().rev() {
            let c = self.from_rational(c);
            acc = self.add(&self.mul(&acc, x), &c);
        }
        acc
    }
}
