//! Command-line front end.
//!
//! Every subcommand prints one JSON object (or a flat text rendering of it)
//! carrying `"schema": 1` and a `certified` flag. Exit status is 0 on
//! success, 1 on a negative verdict and 2 on usage or validation errors.

use std::io::Write;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::moment_space::{
    basis_degrees, composition_search, counterexample, is_member_with, CertificateTerm, CompositionSearch,
    MemberOptions, Verdict,
};
use crate::moments::{MomentConfig, MomentOracle, MomentValue, DEFAULT_I_MAX, DEFAULT_PRECISION};
use crate::monodromy::{check_condition5, perms};
use crate::points::{PointPair, ValidPair, DEFAULT_TOL};
use crate::poly_core::{antiderivative, derivative, parse_poly, parse_rational, RatPoly};
use crate::representation::two_term;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(name = "chebmoment", version, about = "Moment problem for Chebyshev polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Degrees m <= m_max with T_m' in the moment space
    Basis {
        #[command(flatten)]
        pair: PairArgs,
        /// Defaults to 3n
        #[arg(long)]
        m_max: Option<usize>,
    },
    /// Decide membership of q and certify the verdict
    Member {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        poly: PolyArgs,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Moments for i = 0..=i_max
    Moments {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        poly: PolyArgs,
        #[command(flatten)]
        numeric: NumericArgs,
    },
    /// Two-term representation A(T_d1) + B(T_d2) of a member
    Twoterm {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        poly: PolyArgs,
    },
    /// Search for a common right factor T_w of T_n and Q
    Compcheck {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        poly: PolyArgs,
    },
    /// A member violating the composition condition
    Counterexample {
        #[command(flatten)]
        pair: PairArgs,
    },
    /// Monodromy permutations of T_n
    Monodromy {
        #[arg(short = 'n')]
        n: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Residuals of the branch-sum condition along a sampling segment
    Check5 {
        #[command(flatten)]
        pair: PairArgs,
        #[command(flatten)]
        poly: PolyArgs,
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_PRECISION)]
        precision: usize,
        #[arg(long, default_value_t = 1e-8)]
        threshold: f64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("pair_spec").required(true).args(["node", "rational", "numeric", "shift"])))]
struct PairArgs {
    #[arg(short = 'n')]
    n: u64,
    /// a = T-node index P, b = index Q of T_N
    #[arg(long, num_args = 3, value_names = ["N", "P", "Q"], allow_negative_numbers = true)]
    node: Option<Vec<i64>>,
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
    rational: Option<Vec<String>>,
    #[arg(long, num_args = 2, value_names = ["RE_A,IM_A", "RE_B,IM_B"], allow_hyphen_values = true)]
    numeric: Option<Vec<String>>,
    #[arg(long, default_value_t = DEFAULT_TOL)]
    tol: f64,
    #[arg(long, num_args = 3, value_names = ["N", "K", "RE_V,IM_V"], allow_hyphen_values = true)]
    shift: Option<Vec<String>>,
    #[arg(long, requires = "shift")]
    inverted: bool,
    /// Decide shift equalities numerically instead of from k
    #[arg(long, requires = "shift")]
    non_generic: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("poly_spec").required(true).args(["integrand", "primitive"])))]
struct PolyArgs {
    /// Integrand q: coefficient list or sum of Tk, dTk, z^k terms
    #[arg(short = 'q', long, allow_hyphen_values = true)]
    integrand: Option<String>,
    /// Primitive Q = ∫q
    #[arg(short = 'Q', long, allow_hyphen_values = true)]
    primitive: Option<String>,
}

#[derive(Args, Debug)]
struct NumericArgs {
    #[arg(long, default_value_t = DEFAULT_I_MAX)]
    i_max: usize,
    #[arg(long, default_value_t = DEFAULT_PRECISION)]
    precision: usize,
}

fn parse_complex(s: &str) -> Result<Complex64> {
    let bad = |reason: &str| Error::InvalidPair(format!("`{s}`: {reason}"));
    let mut parts = s.split(',').map(str::trim);
    let re = parts.next().unwrap_or_default();
    let im = parts.next().unwrap_or("0");
    if parts.next().is_some() {
        return Err(bad("expected RE,IM"));
    }
    let re: f64 = re.parse().map_err(|_| bad("real part is not a number"))?;
    let im: f64 = im.parse().map_err(|_| bad("imaginary part is not a number"))?;
    Ok(Complex64::new(re, im))
}

impl PairArgs {
    fn to_pair(&self) -> Result<ValidPair> {
        let pair = if let Some(v) = &self.node {
            if v[0] <= 0 {
                return Err(Error::InvalidPair("node degree must be positive".into()));
            }
            PointPair::Node { n: v[0] as u64, p: v[1], q: v[2] }
        } else if let Some(v) = &self.rational {
            PointPair::Rational { a: parse_rational(&v[0])?, b: parse_rational(&v[1])? }
        } else if let Some(v) = &self.numeric {
            PointPair::Numeric { a: parse_complex(&v[0])?, b: parse_complex(&v[1])?, tol: self.tol }
        } else if let Some(v) = &self.shift {
            let n: u64 = v[0].parse().map_err(|_| Error::InvalidPair(format!("bad degree `{}`", v[0])))?;
            let k: i64 = v[1].parse().map_err(|_| Error::InvalidPair(format!("bad shift `{}`", v[1])))?;
            PointPair::Shift { n, k, inverted: self.inverted, v: parse_complex(&v[2])?, generic: !self.non_generic }
        } else {
            unreachable!("clap enforces a pair spec")
        };
        pair.validate(self.n)
    }
}

impl PolyArgs {
    fn integrand(&self) -> Result<RatPoly> {
        match (&self.integrand, &self.primitive) {
            (Some(q), _) => parse_poly(q),
            (None, Some(big_q)) => Ok(derivative(&parse_poly(big_q)?)),
            (None, None) => unreachable!("clap enforces a polynomial"),
        }
    }

    fn primitive(&self) -> Result<RatPoly> {
        match (&self.integrand, &self.primitive) {
            (_, Some(big_q)) => parse_poly(big_q),
            (Some(q), None) => Ok(antiderivative(&parse_poly(q)?)),
            (None, None) => unreachable!("clap enforces a polynomial"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentDto {
    pub i: usize,
    /// Exact value in text form, or the decimal approximation.
    pub value: String,
    pub re: f64,
    pub im: f64,
    pub exact: bool,
    pub zero: bool,
}

impl MomentDto {
    fn new(i: usize, m: &MomentValue) -> Self {
        let z = m.to_c64();
        let value = match m {
            MomentValue::ExactRational(r) => r.to_string(),
            MomentValue::ExactCyclo(c) => c.to_string(),
            MomentValue::Numeric { .. } => format!("{}{:+}i", z.re, z.im),
        };
        Self { i, value, re: z.re, im: z.im, exact: m.is_exact(), zero: m.is_zero() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TermDto {
    pub degree: usize,
    pub coeff: String,
    pub gcd: u64,
}

impl From<&CertificateTerm> for TermDto {
    fn from(t: &CertificateTerm) -> Self {
        Self { degree: t.degree, coeff: t.coeff.to_string(), gcd: t.gcd }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisDto {
    pub schema: u32,
    pub n: u64,
    pub m_max: usize,
    pub degrees: Vec<usize>,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MembershipDto {
    pub schema: u32,
    /// `"Member"` or `"NonMember"`.
    pub verdict: String,
    pub certificate: Vec<TermDto>,
    pub violations: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<MomentDto>,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentsDto {
    pub schema: u32,
    pub moments: Vec<MomentDto>,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoTermDto {
    pub schema: u32,
    pub d1: u64,
    #[serde(rename = "A")]
    pub a: String,
    pub d2: u64,
    #[serde(rename = "B")]
    pub b: String,
    pub constant: String,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AttemptDto {
    pub w: u64,
    pub endpoints_equal: bool,
    pub endpoints_certified: bool,
    pub decomposable: bool,
    /// `Q̃` with `Q̃(T_w) = Q` when decomposable.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inner: Option<String>,
    pub offending: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessDto {
    pub w: u64,
    pub outer: String,
    pub inner_image: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompcheckDto {
    pub schema: u32,
    pub found: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDto>,
    pub attempts: Vec<AttemptDto>,
    pub certified: bool,
}

impl CompcheckDto {
    fn new(search: &CompositionSearch) -> Self {
        let attempts: Vec<AttemptDto> = search
            .attempts
            .iter()
            .map(|a| AttemptDto {
                w: a.w,
                endpoints_equal: a.endpoint.value,
                endpoints_certified: a.endpoint.certified,
                decomposable: a.decomposition.is_ok(),
                inner: a.decomposition.as_ref().ok().map(|p| p.to_string()),
                offending: a.decomposition.as_ref().err().cloned().unwrap_or_default(),
            })
            .collect();
        let certified = search.attempts.iter().all(|a| a.endpoint.certified);
        let witness = search.witness.as_ref().map(|w| WitnessDto {
            w: w.w,
            outer: w.outer.to_string(),
            inner_image: w.inner_image.to_string(),
        });
        Self { schema: SCHEMA_VERSION, found: witness.is_some(), witness, attempts, certified }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleDto {
    pub schema: u32,
    pub found: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m1: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m2: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<String>,
    pub certificate: Vec<TermDto>,
    pub attempts: Vec<AttemptDto>,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonodromyDto {
    pub schema: u32,
    pub n: u64,
    pub pi1: Vec<usize>,
    pub pim1: Vec<usize>,
    pub piinf: Vec<usize>,
    pub product_ok: bool,
    pub certified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check5Dto {
    pub schema: u32,
    pub branches_a: Vec<usize>,
    pub branches_b: Vec<usize>,
    pub residuals: Vec<f64>,
    pub max: f64,
    pub threshold: f64,
    pub passed: bool,
    pub certified: bool,
}

/// Runs the tool on `argv` (program name first) against the process streams.
pub fn run(argv: &[String]) -> i32 {
    let (stdout, stderr) = (std::io::stdout(), std::io::stderr());
    run_with(argv, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                2
            } else {
                let _ = write!(out, "{e}");
                0
            };
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok((value, format, code)) => {
            let text = match format {
                Format::Json => serde_json::to_string_pretty(&value).expect("serializable"),
                Format::Text => render_text(&value, ""),
            };
            let _ = writeln!(out, "{}", text.trim_end());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn to_value<T: Serialize>(dto: &T) -> Value {
    serde_json::to_value(dto).expect("serializable")
}

fn dispatch(command: Command) -> Result<(Value, Format, i32)> {
    match command {
        Command::Basis { pair, m_max } => {
            let vp = pair.to_pair()?;
            let m_max = m_max.unwrap_or(3 * vp.n() as usize);
            let degrees = basis_degrees(&vp, m_max);
            let dto = BasisDto { schema: SCHEMA_VERSION, n: vp.n(), m_max, degrees, certified: vp.is_exact() };
            Ok((to_value(&dto), pair.format, 0))
        }
        Command::Member { pair, poly, numeric } => {
            let vp = pair.to_pair()?;
            let q = poly.integrand()?;
            let options = MemberOptions {
                i_max: numeric.i_max,
                moments: MomentConfig { precision: numeric.precision, force_numeric: false },
            };
            let verdict = is_member_with(&vp, &q, &options);
            let dto = match &verdict.verdict {
                Verdict::Member { certificate } => MembershipDto {
                    schema: SCHEMA_VERSION,
                    verdict: "Member".into(),
                    certificate: certificate.iter().map(TermDto::from).collect(),
                    violations: Vec::new(),
                    witness: None,
                    certified: verdict.certified,
                },
                Verdict::NonMember { violations, witness } => MembershipDto {
                    schema: SCHEMA_VERSION,
                    verdict: "NonMember".into(),
                    certificate: Vec::new(),
                    violations: violations.clone(),
                    witness: witness.as_ref().map(|(i, m)| MomentDto::new(*i, m)),
                    certified: verdict.certified,
                },
            };
            let code = if verdict.is_member() { 0 } else { 1 };
            Ok((to_value(&dto), pair.format, code))
        }
        Command::Moments { pair, poly, numeric } => {
            let vp = pair.to_pair()?;
            let q = poly.integrand()?;
            let config = MomentConfig { precision: numeric.precision, force_numeric: false };
            let values = MomentOracle::with_config(&vp, config).sweep(&q, numeric.i_max);
            let moments: Vec<MomentDto> = values.iter().enumerate().map(|(i, m)| MomentDto::new(i, m)).collect();
            let certified = moments.iter().all(|m| m.exact);
            let dto = MomentsDto { schema: SCHEMA_VERSION, moments, certified };
            Ok((to_value(&dto), pair.format, 0))
        }
        Command::Twoterm { pair, poly } => {
            let vp = pair.to_pair()?;
            let q = poly.integrand()?;
            match two_term(&vp, &q) {
                Ok(rep) => {
                    let dto = TwoTermDto {
                        schema: SCHEMA_VERSION,
                        d1: rep.d1,
                        a: rep.a.to_string(),
                        d2: rep.d2,
                        b: rep.b.to_string(),
                        constant: rep.constant.to_string(),
                        certified: true,
                    };
                    Ok((to_value(&dto), pair.format, 0))
                }
                Err(Error::NotAMember(violations)) => {
                    let dto = MembershipDto {
                        schema: SCHEMA_VERSION,
                        verdict: "NonMember".into(),
                        certificate: Vec::new(),
                        violations,
                        witness: None,
                        certified: true,
                    };
                    Ok((to_value(&dto), pair.format, 1))
                }
                Err(e) => Err(e),
            }
        }
        Command::Compcheck { pair, poly } => {
            let vp = pair.to_pair()?;
            let big_q = poly.primitive()?;
            let dto = CompcheckDto::new(&composition_search(&vp, &big_q));
            let code = if dto.found { 0 } else { 1 };
            Ok((to_value(&dto), pair.format, code))
        }
        Command::Counterexample { pair } => {
            let vp = pair.to_pair()?;
            let dto = match counterexample(&vp) {
                Some(c) => {
                    let search = CompcheckDto::new(&c.search);
                    let certificate = match &c.membership.verdict {
                        Verdict::Member { certificate } => certificate.iter().map(TermDto::from).collect(),
                        Verdict::NonMember { .. } => unreachable!("counterexamples are members"),
                    };
                    CounterexampleDto {
                        schema: SCHEMA_VERSION,
                        found: true,
                        m1: Some(c.m1),
                        m2: Some(c.m2),
                        q: Some(c.q.to_string()),
                        certificate,
                        attempts: search.attempts,
                        certified: c.membership.certified && search.certified,
                    }
                }
                None => CounterexampleDto {
                    schema: SCHEMA_VERSION,
                    found: false,
                    m1: None,
                    m2: None,
                    q: None,
                    certificate: Vec::new(),
                    attempts: Vec::new(),
                    certified: vp.is_exact(),
                },
            };
            let code = if dto.found { 0 } else { 1 };
            Ok((to_value(&dto), pair.format, code))
        }
        Command::Monodromy { n, format } => {
            if n == 0 {
                return Err(Error::InvalidPair("degree n must be positive".into()));
            }
            let p = perms(n as usize);
            let dto = MonodromyDto {
                schema: SCHEMA_VERSION,
                n,
                pi1: p.pi_1.images().to_vec(),
                pim1: p.pi_minus_1.images().to_vec(),
                piinf: p.pi_infinity.images().to_vec(),
                product_ok: p.product().is_identity(),
                certified: true,
            };
            Ok((to_value(&dto), format, 0))
        }
        Command::Check5 { pair, poly, samples, precision, threshold } => {
            let vp = pair.to_pair()?;
            let big_q = poly.primitive()?;
            let report = check_condition5(&vp, &big_q, samples, precision)?;
            let passed = report.max_residual <= threshold;
            let dto = Check5Dto {
                schema: SCHEMA_VERSION,
                branches_a: report.branches_a.indices,
                branches_b: report.branches_b.indices,
                residuals: report.residuals,
                max: report.max_residual,
                threshold,
                passed,
                certified: false,
            };
            Ok((to_value(&dto), pair.format, if passed { 0 } else { 1 }))
        }
    }
}

fn render_text(value: &Value, prefix: &str) -> String {
    match value {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                render_text(v, &key)
            })
            .collect(),
        Value::Array(items) if items.iter().any(|v| v.is_object()) => items
            .iter()
            .enumerate()
            .map(|(i, v)| render_text(v, &format!("{prefix}[{i}]")))
            .collect(),
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(|v| v.to_string()).collect();
            format!("{prefix}: [{}]\n", parts.join(", "))
        }
        Value::String(s) => format!("{prefix}: {s}\n"),
        other => format!("{prefix}: {other}\n"),
    }
}
