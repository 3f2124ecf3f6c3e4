//! Cyclotomic polynomials and exact arithmetic in `Q(ε_M)`.
//!
//! Elements of `Q(ε_M)` are stored in the power basis `1, ε, ..., ε^{φ(M)-1}`
//! modulo `Φ_M`, which makes equality (and so the zero test) a plain
//! comparison of coordinates.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{BigComplex, NumCtx};
use crate::poly_core::RatPoly;

/// Dense integer polynomial, ascending coefficients, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `Σ c z^e` over the given `(exponent, coefficient)` pairs; repeated
    /// exponents are combined.
    pub fn from_terms<I: IntoIterator<Item = (usize, i64)>>(terms: I) -> Self {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (e, c) in terms {
            if coeffs.len() <= e {
                coeffs.resize(e + 1, BigInt::zero());
            }
            coeffs[e] += c;
        }
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::from_coeffs(out)
    }

    pub fn to_rat_poly(&self) -> RatPoly {
        RatPoly::from_coeffs(self.coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }

    /// Division with remainder by a monic divisor; stays in `Z[z]`.
    pub fn div_rem_monic(&self, divisor: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.degree().unwrap();
        let Some(sd) = self.degree() else {
            return (IntPoly::zero(), IntPoly::zero());
        };
        if sd < dd {
            return (IntPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (i, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (IntPoly::from_coeffs(quot), IntPoly::from_coeffs(rem))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}z")?,
                (_, true) => write!(f, "z^{k}")?,
                (_, false) => write!(f, "{mag}z^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPoly({self})")
    }
}

pub fn divisors(m: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m.is_multiple_of(d) {
            small.push(d);
            if d * d != m {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn euler_phi(m: u64) -> u64 {
    (1..=m).filter(|k| k.gcd(&m) == 1).count() as u64
}

/// `Φ_M`, obtained as `(z^M - 1) / Π_{d | M, d < M} Φ_d` by exact division.
pub fn cyclotomic_poly(m: u64) -> IntPoly {
    assert!(m >= 1, "cyclotomic order must be positive");
    let mut known: BTreeMap<u64, IntPoly> = BTreeMap::new();
    for d in divisors(m) {
        let mut numerator = IntPoly::from_terms([(d as usize, 1), (0, -1)]);
        for e in divisors(d) {
            if e < d {
                let (q, r) = numerator.div_rem_monic(&known[&e]);
                debug_assert!(r.is_zero());
                numerator = q;
            }
        }
        known.insert(d, numerator);
    }
    known.remove(&m).unwrap()
}

/// `Φ_M | f` in `Z[z]`, by division with remainder.
pub fn divides_cyclotomic(f: &IntPoly, m: u64) -> bool {
    let (_, r) = f.div_rem_monic(&cyclotomic_poly(m));
    r.is_zero()
}

/// The integer polynomial `z^{j1 d} + z^{(n-j1) d} - z^{j2 d} - z^{(n-j2) d}`.
pub fn section_f_poly(n: u64, d: u64, j1: u64, j2: u64) -> IntPoly {
    let e = |j: u64| (j * d) as usize;
    IntPoly::from_terms([(e(j1), 1), (e(n - j1), 1), (e(j2), -1), (e(n - j2), -1)])
}

/// The field `Q(ε_M)` with `Φ_M` and the reductions of `ε^k`, `0 <= k < M`.
pub struct CycloField {
    order: u64,
    modulus: IntPoly,
    dim: usize,
    powers: Vec<Vec<BigInt>>,
}

impl fmt::Debug for CycloField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloField(Q(e{}))", self.order)
    }
}

impl CycloField {
    pub fn new(order: u64) -> Arc<Self> {
        let modulus = cyclotomic_poly(order);
        let dim = modulus.degree().unwrap();
        let mut powers = Vec::with_capacity(order as usize);
        let mut row = vec![BigInt::zero(); dim];
        row[0] = BigInt::one();
        for _ in 0..order {
            powers.push(row.clone());
            // multiply by z and fold z^dim back through Φ_M
            let carry = row[dim - 1].clone();
            for i in (1..dim).rev() {
                row[i] = &row[i - 1] - &carry * &modulus.coeffs[i];
            }
            row[0] = -&carry * &modulus.coeffs[0];
        }
        Arc::new(Self { order, modulus, dim, powers })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// `φ(M)`.
    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.modulus
    }

    fn index(&self, e: i64) -> usize {
        e.rem_euclid(self.order as i64) as usize
    }

    pub fn zero(self: &Arc<Self>) -> CycloNum {
        CycloNum { field: Arc::clone(self), coords: vec![BigRational::zero(); self.dim] }
    }

    pub fn from_rational(self: &Arc<Self>, c: BigRational) -> CycloNum {
        let mut x = self.zero();
        x.coords[0] = c;
        x
    }

    pub fn one(self: &Arc<Self>) -> CycloNum {
        self.from_rational(BigRational::one())
    }

    /// `ε^e` for any integer exponent.
    pub fn root_power(self: &Arc<Self>, e: i64) -> CycloNum {
        let row = &self.powers[self.index(e)];
        CycloNum {
            field: Arc::clone(self),
            coords: row.iter().cloned().map(BigRational::from_integer).collect(),
        }
    }

    /// `(Σ_k weights[k] ε^k) / denominator` for a vector indexed by the
    /// exponent modulo `M`.
    pub fn reduce_integers(self: &Arc<Self>, weights: &[BigInt], denominator: &BigInt) -> CycloNum {
        assert_eq!(weights.len(), self.order as usize);
        let mut acc = vec![BigInt::zero(); self.dim];
        for (w, row) in weights.iter().zip(&self.powers) {
            if w.is_zero() {
                continue;
            }
            for (a, r) in acc.iter_mut().zip(row) {
                if !r.is_zero() {
                    *a += w * r;
                }
            }
        }
        CycloNum {
            field: Arc::clone(self),
            coords: acc
                .into_iter()
                .map(|a| BigRational::new(a, denominator.clone()))
                .collect(),
        }
    }

    /// `f(ε)` for an integer polynomial.
    pub fn eval_int_poly(self: &Arc<Self>, f: &IntPoly) -> CycloNum {
        let mut weights = vec![BigInt::zero(); self.order as usize];
        for (k, c) in f.coeffs().iter().enumerate() {
            weights[k % self.order as usize] += c;
        }
        self.reduce_integers(&weights, &BigInt::one())
    }

    /// `P((ε^p + ε^{-p}) / 2)` exactly.
    ///
    /// With `x = ε^p + ε^{-p}` and `L` the denominator lcm of `P`, the value
    /// `2^D L P(x/2)` is an integer combination of powers of `ε`; Horner's
    /// scheme then only shifts an exponent-indexed integer vector.
    pub fn eval_joukowski(self: &Arc<Self>, poly: &RatPoly, p: i64) -> CycloNum {
        let Some(deg) = poly.degree() else {
            return self.zero();
        };
        let m = self.order as usize;
        let shift = self.index(p);
        let lcm = poly.denominator_lcm();
        let mut acc = vec![BigInt::zero(); m];
        let mut next = vec![BigInt::zero(); m];
        for k in (0..=deg).rev() {
            for j in 0..m {
                next[j] = &acc[(j + m - shift) % m] + &acc[(j + shift) % m];
            }
            std::mem::swap(&mut acc, &mut next);
            let c = poly.coeff(k);
            if !c.is_zero() {
                let scaled = (c * BigRational::from_integer(lcm.clone())).to_integer();
                acc[0] += scaled << (deg - k);
            }
        }
        self.reduce_integers(&acc, &(lcm << deg))
    }
}

/// An element of `Q(ε_M)`, `ε = exp(2πi/M)`.
#[derive(Clone)]
pub struct CycloNum {
    field: Arc<CycloField>,
    coords: Vec<BigRational>,
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.coords == other.coords
    }
}

impl Eq for CycloNum {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CycloOp {
    Add,
    Sub,
    Mul,
}

impl CycloNum {
    pub fn order(&self) -> u64 {
        self.field.order
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The value as a rational, if it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coords[1..].iter().all(Zero::is_zero).then(|| self.coords[0].clone())
    }

    fn check_order(&self, other: &CycloNum) -> Result<()> {
        if self.order() == other.order() {
            Ok(())
        } else {
            Err(Error::OrderMismatch { left: self.order(), right: other.order() })
        }
    }

    pub fn try_add(&self, other: &CycloNum) -> Result<CycloNum> {
        self.check_order(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        Ok(CycloNum { field: Arc::clone(&self.field), coords })
    }

    pub fn try_sub(&self, other: &CycloNum) -> Result<CycloNum> {
        self.check_order(other)?;
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect();
        Ok(CycloNum { field: Arc::clone(&self.field), coords })
    }

    pub fn try_mul(&self, other: &CycloNum) -> Result<CycloNum> {
        self.check_order(other)?;
        let field = &self.field;
        let m = field.order as usize;
        let mut product = vec![BigRational::zero(); m];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if !b.is_zero() {
                    product[(i + j) % m] += a * b;
                }
            }
        }
        let mut coords = vec![BigRational::zero(); field.dim];
        for (w, row) in product.iter().zip(&field.powers) {
            if w.is_zero() {
                continue;
            }
            for (c, r) in coords.iter_mut().zip(row) {
                if !r.is_zero() {
                    *c += w * BigRational::from_integer(r.clone());
                }
            }
        }
        Ok(CycloNum { field: Arc::clone(field), coords })
    }

    pub fn neg(&self) -> CycloNum {
        CycloNum { field: Arc::clone(&self.field), coords: self.coords.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> CycloNum {
        CycloNum { field: Arc::clone(&self.field), coords: self.coords.iter().map(|x| x * c).collect() }
    }

    /// Image under `Q(ε_M) -> Q(ε_{M'})`, `ε_M ↦ ε_{M'}^{M'/M}`; needs `M | M'`.
    pub fn lift(&self, target: &Arc<CycloField>) -> Result<CycloNum> {
        let (m, big) = (self.order(), target.order);
        if big % m != 0 {
            return Err(Error::OrderMismatch { left: m, right: big });
        }
        let step = (big / m) as usize;
        let mut weights = vec![BigRational::zero(); big as usize];
        for (i, c) in self.coords.iter().enumerate() {
            weights[(i * step) % big as usize] += c;
        }
        let mut coords = vec![BigRational::zero(); target.dim];
        for (w, row) in weights.iter().zip(&target.powers) {
            if w.is_zero() {
                continue;
            }
            for (c, r) in coords.iter_mut().zip(row) {
                *c += w * BigRational::from_integer(r.clone());
            }
        }
        Ok(CycloNum { field: Arc::clone(target), coords })
    }

    /// Numeric value with `ε = exp(2πi/M)` at the context's precision.
    pub fn embed(&self, ctx: &mut NumCtx) -> BigComplex {
        let mut acc = ctx.zero();
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let r = ctx.root_of_unity(i as i64, self.order());
            let c = ctx.from_rational(c);
            acc = ctx.add(&acc, &ctx.mul(&r, &c));
        }
        acc
    }
}

/// Field operation on two elements of the same `Q(ε_M)`.
pub fn cyclo_arith(x: &CycloNum, y: &CycloNum, op: CycloOp) -> Result<CycloNum> {
    match op {
        CycloOp::Add => x.try_add(y),
        CycloOp::Sub => x.try_sub(y),
        CycloOp::Mul => x.try_mul(y),
    }
}

/// Lifts both operands to `Q(ε_lcm)`.
pub fn lift_to_common(x: &CycloNum, y: &CycloNum) -> (CycloNum, CycloNum) {
    let l = x.order().lcm(&y.order());
    let field = CycloField::new(l);
    (x.lift(&field).unwrap(), y.lift(&field).unwrap())
}

/// Whether `Σ s ε_M^e` vanishes, for signs `s = ±1`.
pub fn root_power_sum_zero(m: u64, terms: &[(i8, i64)]) -> bool {
    let field = CycloField::new(m);
    let mut weights = vec![BigInt::zero(); m as usize];
    for &(s, e) in terms {
        weights[field.index(e)] += i64::from(s.signum());
    }
    field.reduce_integers(&weights, &BigInt::one()).is_zero()
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let m = self.order();
        let mut first = true;
        for (i, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "e{m}^{i}")?,
                (_, false) => write!(f, "{mag}*e{m}^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum({self})")
    }
}
