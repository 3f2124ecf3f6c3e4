#![allow(dead_code)]

use chebmoment::moment_space::basis_degrees;
use chebmoment::points::{PointPair, ValidPair};
use chebmoment::poly_core::{cheb, derivative};
use chebmoment::{BigRational, RatPoly};
use rand::rngs::StdRng;
use rand::Rng;

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

/// Small nonzero rational with numerator and denominator in `1..=6`.
pub fn random_rational(rng: &mut StdRng) -> BigRational {
    let p = rng.gen_range(1..=6) * if rng.gen_bool(0.5) { 1 } else { -1 };
    rat(p, rng.gen_range(1..=6))
}

pub fn random_poly(rng: &mut StdRng, max_degree: usize) -> RatPoly {
    let degree = rng.gen_range(0..=max_degree);
    let coeffs = (0..=degree)
        .map(|_| if rng.gen_bool(0.3) { rat(0, 1) } else { random_rational(rng) })
        .collect();
    RatPoly::from_coeffs(coeffs)
}

pub fn random_node_pair(rng: &mut StdRng, n: u64) -> ValidPair {
    loop {
        let p = rng.gen_range(0..2 * n as i64);
        let q = rng.gen_range(0..2 * n as i64);
        if let Ok(pair) = (PointPair::Node { n, p, q }).validate(n) {
            return pair;
        }
    }
}

/// A random combination of basis elements `T_m'` with `m <= max_m`, or
/// `None` when the basis is empty in that range.
pub fn random_member(rng: &mut StdRng, pair: &ValidPair, max_m: usize) -> Option<RatPoly> {
    let basis = basis_degrees(pair, max_m);
    if basis.is_empty() {
        return None;
    }
    let terms = rng.gen_range(1..=4);
    let mut q = RatPoly::zero();
    for _ in 0..terms {
        let m = basis[rng.gen_range(0..basis.len())];
        q = &q + &derivative(&cheb(m)).scale(&random_rational(rng));
    }
    Some(q)
}
