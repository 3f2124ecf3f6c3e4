use std::process::Command;

use chebmoment::cli::{
    BasisDto, Check5Dto, CompcheckDto, CounterexampleDto, MembershipDto, MomentsDto, MonodromyDto, TwoTermDto,
};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_chebmoment")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

/// Parses into the typed schema and checks re-emission is idempotent.
fn round_trip<T: Serialize + DeserializeOwned>(stdout: &str) -> T {
    let raw: Value = serde_json::from_str(stdout).expect("valid JSON");
    assert_eq!(raw["schema"], 1);
    assert!(raw["certified"].is_boolean());
    let typed: T = serde_json::from_value(raw.clone()).expect("matches schema");
    assert_eq!(serde_json::to_value(&typed).unwrap(), raw);
    typed
}

#[test]
fn member_counterexample() {
    let (code, out, _) = run(&["member", "-n", "6", "--node", "6", "5", "1", "-q", "dT3+dT2"]);
    assert_eq!(code, 0);
    let v: MembershipDto = round_trip(&out);
    assert_eq!(v.verdict, "Member");
    assert!(v.certified);
    let degrees: Vec<usize> = v.certificate.iter().map(|t| t.degree).collect();
    assert_eq!(degrees, vec![2, 3]);
    assert!(v.violations.is_empty() && v.witness.is_none());
}

#[test]
fn member_rejects_t5() {
    let (code, out, _) = run(&["member", "-n", "6", "--node", "6", "5", "1", "-q", "dT5"]);
    assert_eq!(code, 1);
    let v: MembershipDto = round_trip(&out);
    assert_eq!(v.verdict, "NonMember");
    assert_eq!(v.violations, vec![5]);
    let w = v.witness.expect("witness");
    assert!(w.exact && !w.zero && w.i <= 24);
}

#[test]
fn counterexample_transcript() {
    let (code, out, _) = run(&["counterexample", "-n", "6", "--node", "6", "5", "1"]);
    assert_eq!(code, 0);
    let c: CounterexampleDto = round_trip(&out);
    assert!(c.found && c.certified);
    assert_eq!((c.m1, c.m2), (Some(2), Some(3)));
    assert_eq!(c.q.as_deref(), Some("-3,4,12"));
    let ws: Vec<u64> = c.attempts.iter().map(|a| a.w).collect();
    assert_eq!(ws, vec![6, 3, 2]);

    let (code, out, _) = run(&["counterexample", "-n", "4", "--node", "4", "0", "2"]);
    assert_eq!(code, 1);
    assert!(!round_trip::<CounterexampleDto>(&out).found);
}

#[test]
fn compcheck() {
    let (code, out, _) = run(&["compcheck", "-n", "6", "--node", "6", "5", "1", "-Q", "T2"]);
    assert_eq!(code, 0);
    let c: CompcheckDto = round_trip(&out);
    let w = c.witness.expect("witness");
    assert_eq!((w.w, w.inner_image.as_str()), (2, "0,1"));

    let (code, out, _) = run(&["compcheck", "-n", "6", "--node", "6", "5", "1", "-Q", "T3+T2"]);
    assert_eq!(code, 1);
    let c: CompcheckDto = round_trip(&out);
    assert!(!c.found && c.attempts.len() == 3);
}

#[test]
fn basis_and_moments() {
    let (code, out, _) = run(&["basis", "-n", "6", "--node", "6", "5", "1", "--m-max", "6"]);
    assert_eq!(code, 0);
    assert_eq!(round_trip::<BasisDto>(&out).degrees, vec![2, 3, 4, 6]);

    let (code, out, _) = run(&["moments", "-n", "6", "--node", "6", "5", "1", "-q", "dT3+dT2", "--i-max", "20"]);
    assert_eq!(code, 0);
    let m: MomentsDto = round_trip(&out);
    assert_eq!(m.moments.len(), 21);
    assert!(m.certified && m.moments.iter().all(|x| x.exact && x.zero && x.value == "0"));
}

#[test]
fn numeric_moments_are_uncertified() {
    let (code, out, _) = run(&["moments", "-n", "2", "--numeric", "0.3,0", "-0.3,0", "-q", "1", "--i-max", "2"]);
    assert_eq!(code, 0);
    let m: MomentsDto = round_trip(&out);
    assert!(!m.certified);
    assert!(m.moments.iter().all(|x| !x.exact));
    assert!((m.moments[0].re + 0.6).abs() < 1e-12);
}

#[test]
fn twoterm() {
    let (code, out, _) = run(&["twoterm", "-n", "6", "--node", "6", "5", "1", "-q", "dT3+dT2"]);
    assert_eq!(code, 0);
    let t: TwoTermDto = round_trip(&out);
    assert_eq!((t.d1, t.a.as_str(), t.d2, t.b.as_str()), (3, "0,1", 2, "0,1"));
    assert!(out.contains("\"A\"") && out.contains("\"B\""));

    let (code, out, _) = run(&["twoterm", "-n", "6", "--node", "6", "5", "1", "-q", "dT5"]);
    assert_eq!(code, 1);
    assert_eq!(round_trip::<MembershipDto>(&out).verdict, "NonMember");
}

#[test]
fn monodromy() {
    let (code, out, _) = run(&["monodromy", "-n", "6"]);
    assert_eq!(code, 0);
    let m: MonodromyDto = round_trip(&out);
    assert_eq!(m.piinf, vec![1, 2, 3, 4, 5, 0]);
    assert_eq!(m.pim1, vec![5, 4, 3, 2, 1, 0]);
    assert_eq!(m.pi1, vec![0, 5, 4, 3, 2, 1]);
    assert!(m.product_ok);
}

#[test]
fn check5() {
    let base = ["check5", "-n", "6", "--node", "6", "5", "1", "--precision", "53"];
    let (code, out, _) = run(&[&base[..], &["-Q", "T3+T2"]].concat());
    assert_eq!(code, 0);
    let c: Check5Dto = round_trip(&out);
    assert_eq!(c.residuals.len(), 20);
    assert!(c.passed && c.max <= 1e-8 && !c.certified);

    let (code, out, _) = run(&[&base[..], &["-Q", "T5"]].concat());
    assert_eq!(code, 1);
    assert!(round_trip::<Check5Dto>(&out).max > 1e-3);
}

#[test]
fn other_pair_kinds() {
    let (code, out, _) = run(&["member", "-n", "2", "--rational", "1/3", "-1/3", "-q", "dT2"]);
    assert_eq!(code, 0);
    assert!(round_trip::<MembershipDto>(&out).certified);

    let (code, out, _) = run(&["basis", "-n", "6", "--shift", "6", "2", "1.3,0.4", "--m-max", "6"]);
    assert_eq!(code, 0);
    assert_eq!(round_trip::<BasisDto>(&out).degrees, vec![3, 6]);

    let (code, _, _) = run(&["basis", "-n", "6", "--shift", "6", "2", "1.3,0.4", "--non-generic"]);
    assert_eq!(code, 0);
}

#[test]
fn usage_errors() {
    let cases: [&[&str]; 5] = [
        &["member", "-n", "6", "-q", "dT2"],
        &["member", "-n", "6", "--node", "6", "5", "5", "-q", "dT2"],
        &["member", "-n", "6", "--node", "6", "5", "1", "-q", "T3+"],
        &["member", "-n", "6", "--node", "4", "0", "2", "-q", "dT2"],
        &["frobnicate"],
    ];
    for args in cases {
        let (code, out, err) = run(args);
        assert_eq!(code, 2, "{args:?}");
        assert!(out.is_empty() && !err.is_empty(), "{args:?}");
    }
}

#[test]
fn text_output() {
    let (code, out, _) = run(&["member", "-n", "6", "--node", "6", "5", "1", "-q", "dT3+dT2", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.contains("verdict: Member"));
    assert!(out.contains("certificate[0].degree: 2"));
}
