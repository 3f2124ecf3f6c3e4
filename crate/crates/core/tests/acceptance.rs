//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line.

mod common;

use std::time::{Duration, Instant};

use chebmoment::cyclotomic::{cyclotomic_poly, divides_cyclotomic, divisors, section_f_poly, IntPoly};
use chebmoment::moment_space::{basis_degrees, composition_condition, composition_search, is_member, Verdict};
use chebmoment::moments::{moment_sweep, MomentOracle, MomentValue};
use chebmoment::monodromy::{branch_eval, check_condition5, generated_group_order, perms};
use chebmoment::points::{cheb_eval_c64, PointPair, ValidPair};
use chebmoment::poly_core::{antiderivative, cheb, derivative, joukowski_identity_check};
use chebmoment::representation::two_term;
use chebmoment::RatPoly;
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::{random_member, random_node_pair, random_poly};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn node_6_5_1() -> ValidPair {
    PointPair::Node { n: 6, p: 5, q: 1 }.validate(6).unwrap()
}

fn dt(k: usize) -> RatPoly {
    derivative(&cheb(k))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let pair = node_6_5_1();
    let (a, b) = pair.point_values_c64();
    let s = 3f64.sqrt() / 2.0;
    ensure((a.re + s).abs() < 1e-15 && (b.re - s).abs() < 1e-15, || format!("endpoints {a}, {b}"))?;
    let sweep = moment_sweep(&pair, &(&dt(3) + &dt(2)), 20);
    let elapsed = start.elapsed();
    ensure(sweep.len() == 21, || format!("{} moments", sweep.len()))?;
    for (i, m) in sweep.iter().enumerate() {
        match m {
            MomentValue::ExactCyclo(c) if c.order() == 12 && c.is_zero() => {}
            other => return Err(format!("moment {i} is {other:?}")),
        }
    }
    ensure(elapsed < Duration::from_secs(5), || format!("took {elapsed:?}"))?;
    Ok(format!("21 exact zeros in Q(e12) in {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let pair = node_6_5_1();
    for (name, big_q) in [("T2", cheb(2)), ("T3", cheb(3))] {
        let w = composition_condition(&pair, &big_q).ok_or_else(|| format!("no witness for {name}"))?;
        ensure(
            chebmoment::poly_core::compose(&w.outer, &cheb(w.w as usize)) == cheb(6)
                && chebmoment::poly_core::compose(&w.inner_image, &cheb(w.w as usize)) == big_q,
            || format!("bad witness for {name}"),
        )?;
    }
    let search = composition_search(&pair, &(&cheb(3) + &cheb(2)));
    let tried: Vec<u64> = search.attempts.iter().map(|a| a.w).collect();
    ensure(search.witness.is_none(), || "found a witness for T3+T2".into())?;
    ensure(tried == vec![6, 3, 2], || format!("tried {tried:?}"))?;
    Ok("T2, T3 factor; T3+T2 fails for every w in {6, 3, 2}".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(3);
    let (mut members, mut non_members) = (0, 0);
    for case in 0..200 {
        let n = rng.gen_range(2..=8u64);
        let pair = random_node_pair(&mut rng, n);
        // half the cases are drawn from the space itself so both verdicts occur
        let q = if case % 2 == 0 {
            random_member(&mut rng, &pair, 13).unwrap_or_else(|| random_poly(&mut rng, 12))
        } else {
            random_poly(&mut rng, 12)
        };
        let verdict = is_member(&pair, &q);
        let mut oracle = MomentOracle::new(&pair);
        match verdict.verdict {
            Verdict::Member { .. } => {
                members += 1;
                for i in 0..=24 {
                    let m = oracle.moment(&q, i);
                    ensure(m.is_exact() && m.is_zero(), || format!("case {case}: member {q} has moment {i} = {m:?}"))?;
                }
            }
            Verdict::NonMember { witness, .. } => {
                non_members += 1;
                let (i, _) = witness.ok_or_else(|| format!("case {case}: no witness for {q}"))?;
                let m = oracle.moment(&q, i);
                ensure(i <= 24 && m.is_exact() && !m.is_zero(), || format!("case {case}: witness {i} not confirmed"))?;
            }
        }
        ensure(verdict.certified, || format!("case {case}: uncertified verdict"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(120), || format!("took {elapsed:?}"))?;
    Ok(format!("200/200 agree ({members} members, {non_members} non-members) in {elapsed:.2?}"))
}

fn criterion_4() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    let mut checked = 0;
    for n in 2..=8u64 {
        for _ in 0..10 {
            let pair = random_node_pair(&mut rng, n);
            for m in basis_degrees(&pair, 3 * n as usize) {
                let q = dt(m);
                let mut oracle = MomentOracle::new(&pair);
                for i in 0..=12 {
                    let v = oracle.moment(&q, i);
                    ensure(v.is_exact() && v.is_zero(), || format!("n={n} {:?} m={m} i={i}", pair.pair()))?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} basis elements with 13 exact zero moments each"))
}

fn criterion_5() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    let mut done = 0;
    while done < 100 {
        let n = rng.gen_range(2..=10u64);
        let pair = random_node_pair(&mut rng, n);
        let Some(q) = random_member(&mut rng, &pair, 3 * n as usize) else { continue };
        let rep = two_term(&pair, &q).map_err(|e| format!("n={n} {:?} q={q}: {e}", pair.pair()))?;
        ensure(rep.reconstruct() == antiderivative(&q), || format!("reconstruction failed for {q}"))?;
        for d in [rep.d1, rep.d2] {
            let c = pair.cheb_equal_at(d);
            ensure(c.value && c.certified && n % d == 0, || format!("d={d} fails for {:?}", pair.pair()))?;
        }
        done += 1;
    }
    let rep = two_term(&node_6_5_1(), &(&dt(3) + &dt(2))).map_err(|e| e.to_string())?;
    let mut ds = [rep.d1, rep.d2];
    ds.sort_unstable();
    ensure(ds == [2, 3], || format!("T3'+T2' gave {ds:?}"))?;
    Ok("100 random members reconstructed; T3'+T2' gives {3, 2}".into())
}

fn criterion_6() -> Outcome {
    for n in 1..=60u64 {
        let product = divisors(n).into_iter().fold(IntPoly::from_ints(&[1]), |acc, d| acc.mul(&cyclotomic_poly(d)));
        let expected = IntPoly::from_terms([(n as usize, 1), (0, -1)]);
        ensure(product == expected, || format!("product for n={n} is {product}"))?;
    }
    let mut cases = 0;
    for n in 1..=24u64 {
        for d in divisors(n) {
            for j1 in 0..=n / 2 {
                for j2 in 0..=n / 2 {
                    let f = section_f_poly(n, d, j1, j2);
                    let lhs = divides_cyclotomic(&f, n);
                    let (x, y) = ((j1 * d) % n, (j2 * d) % n);
                    let rhs = x == y || (x + y) % n == 0;
                    ensure(lhs == rhs, || format!("n={n} d={d} j1={j1} j2={j2}"))?;
                    cases += 1;
                }
            }
        }
    }
    Ok(format!("products exact for n <= 60; {cases} congruence cases agree"))
}

fn criterion_7() -> Outcome {
    for n in 1..=50 {
        ensure(perms(n).product().is_identity(), || format!("product fails for n={n}"))?;
    }
    for n in 3..=20 {
        let p = perms(n);
        let order = generated_group_order(&[p.pi_1, p.pi_minus_1, p.pi_infinity]);
        ensure(order == 2 * n, || format!("group order {order} for n={n}"))?;
    }
    let mut rng = StdRng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for n in 1..=12usize {
        for j in 0..n {
            for _ in 0..100 {
                let z = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
                let y = branch_eval(n, j, z).map_err(|e| e.to_string())?;
                let err = (cheb_eval_c64(n as u64, y) - z).norm();
                worst = worst.max(err);
                ensure(err < 1e-10, || format!("n={n} j={j} z={z}: error {err:e}"))?;
            }
        }
    }
    Ok(format!("product, group order 2n, branch inverse (worst {worst:.1e})"))
}

fn criterion_8() -> Outcome {
    let pair = node_6_5_1();
    let member = check_condition5(&pair, &(&cheb(3) + &cheb(2)), 20, 53).map_err(|e| e.to_string())?;
    let non_member = check_condition5(&pair, &cheb(5), 20, 53).map_err(|e| e.to_string())?;
    ensure(member.residuals.len() == 20 && member.max_residual <= 1e-8, || {
        format!("member residual {:e}", member.max_residual)
    })?;
    ensure(non_member.max_residual > 1e-3, || format!("non-member residual {:e}", non_member.max_residual))?;
    Ok(format!(
        "T3+T2 max residual {:.1e}, T5 max residual {:.2}",
        member.max_residual, non_member.max_residual
    ))
}

fn criterion_9() -> Outcome {
    let failing: Vec<usize> = (1..=64).filter(|&d| !joukowski_identity_check(d)).collect();
    ensure(failing.is_empty(), || format!("fails for d in {failing:?}"))?;
    Ok("identity holds for 1 <= d <= 64".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("counterexample moments vanish exactly", criterion_1),
        ("composition condition fails for T3+T2", criterion_2),
        ("membership agrees with the moment oracle", criterion_3),
        ("basis soundness", criterion_4),
        ("two-term representation", criterion_5),
        ("cyclotomic cross-check", criterion_6),
        ("monodromy", criterion_7),
        ("branch-sum diagnostic", criterion_8),
        ("Joukowski identity", criterion_9),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail}", k + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
