//! Command-line front end: point evaluation, identity-suite runs, and CSV
//! grid export.
//!
//! Exit codes: 0 success (all identities pass for `suite`), 1 any identity
//! failed, 2 argument/parse errors, 3 evaluation failures (PoleHit,
//! NonConvergent, and friends).

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::error::QError;
use crate::fib;
use crate::hyper;
use crate::mu::{self, MRep, MuPoint, MuRep};
use crate::numerics::{CVal, Modulus, SummationPolicy, C64};
use crate::qcore::{self, PochIndex, ThetaRep};
use crate::rr;
use crate::suite::{self, Status, SuiteConfig, TolProfile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_SUITE_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EVAL: i32 = 3;

#[derive(Parser)]
#[command(
    name = "qmu",
    about = "q-series verified numerics: theta functions, bilateral hypergeometric series, \
             q-Borel/q-Laplace summation, mu-functions, q,t-Fibonacci sequences and the \
             Rogers-Ramanujan continued fraction",
    version
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a registered function at a point and print value and error estimate.
    Eval {
        /// Function name; run `qmu eval list` to print the registry.
        function: String,
        /// Base q as a real or complex literal ("0.2" or "0.1+0.05i").
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        /// Fibonacci deformation parameter.
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
        /// Integer index (sequence order, lattice shift, ...); "inf" selects
        /// the infinite q-Pochhammer index.
        #[arg(long, allow_hyphen_values = true)]
        n: Option<String>,
        /// Exponent m of a = q^m for the generalized mu-function.
        #[arg(long)]
        m: Option<u32>,
        /// Representation selector where a function has several
        /// (definition|psi02|vwp|borel, series|theta, sum|product, ratio|cf).
        #[arg(long)]
        rep: Option<String>,
    },
    /// Run the identity suite over seeded random grids.
    Suite {
        /// Comma-separated list of real q values.
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.15, 0.25, 0.35])]
        q: Vec<f64>,
        #[arg(long, default_value_t = 20)]
        points: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value = "default")]
        tol_profile: String,
        /// Report format: text or json.
        #[arg(long, default_value = "text")]
        report: String,
    },
    /// Evaluate a function along a real segment of one parameter, writing CSV.
    Grid {
        function: String,
        /// Parameter to vary (x, y, z, a, b, c, t).
        #[arg(long)]
        var: String,
        #[arg(long, allow_hyphen_values = true)]
        from: f64,
        #[arg(long, allow_hyphen_values = true)]
        to: f64,
        #[arg(long)]
        steps: usize,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        x: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        y: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        z: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        n: Option<String>,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        rep: Option<String>,
    },
}

/// Parse a complex literal: "1.5", "-0.3", "1.5+0.3i", "2-0.25i", "0.4i".
pub fn parse_complex(s: &str) -> Result<C64, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty complex literal".into());
    }
    if let Ok(re) = t.parse::<f64>() {
        return Ok(C64::new(re, 0.0));
    }
    let body = t
        .strip_suffix('i')
        .ok_or_else(|| format!("cannot parse '{s}' as a complex number"))?;
    // split at the sign separating re and im (skipping a leading sign and
    // exponent signs like 1e-3)
    let bytes = body.as_bytes();
    let mut split = None;
    for i in (1..bytes.len()).rev() {
        let ch = bytes[i] as char;
        if (ch == '+' || ch == '-') && !matches!(bytes[i - 1] as char, 'e' | 'E') {
            split = Some(i);
            break;
        }
    }
    match split {
        Some(i) => {
            let re: f64 = body[..i]
                .parse()
                .map_err(|_| format!("cannot parse real part of '{s}'"))?;
            let im_str = &body[i..];
            let im: f64 = if im_str == "+" {
                1.0
            } else if im_str == "-" {
                -1.0
            } else {
                im_str
                    .parse()
                    .map_err(|_| format!("cannot parse imaginary part of '{s}'"))?
            };
            Ok(C64::new(re, im))
        }
        None => {
            // pure imaginary
            let im: f64 = if body.is_empty() {
                1.0
            } else {
                body.parse()
                    .map_err(|_| format!("cannot parse '{s}' as a complex number"))?
            };
            Ok(C64::new(0.0, im))
        }
    }
}

struct Params {
    q: Option<Modulus>,
    values: BTreeMap<&'static str, C64>,
    n: Option<String>,
    m: Option<u32>,
    rep: Option<String>,
}

impl Params {
    fn q(&self) -> Result<&Modulus, String> {
        self.q.as_ref().ok_or_else(|| "--q is required".into())
    }

    fn get(&self, key: &str) -> Result<C64, String> {
        self.values
            .get(key)
            .copied()
            .ok_or_else(|| format!("--{key} is required"))
    }

    fn int(&self) -> Result<i64, String> {
        self.n
            .as_deref()
            .ok_or_else(|| "--n is required".to_string())?
            .parse::<i64>()
            .map_err(|_| "--n must be an integer".to_string())
    }

    fn rep(&self) -> &str {
        self.rep.as_deref().unwrap_or("")
    }
}

enum EvalOutcome {
    Value(CVal),
    Usage(String),
    Eval(QError),
}

fn eval_function(name: &str, p: &Params) -> EvalOutcome {
    let policy = SummationPolicy::default();
    let usage = |m: String| EvalOutcome::Usage(m);

    macro_rules! req {
        ($e:expr) => {
            match $e {
                Ok(v) => v,
                Err(m) => return usage(m),
            }
        };
    }
    macro_rules! run {
        ($e:expr) => {
            match $e {
                Ok(v) => EvalOutcome::Value(v),
                Err(e) => EvalOutcome::Eval(e),
            }
        };
    }

    match name {
        "theta" => {
            let q = req!(p.q());
            let x = req!(p.get("x"));
            // the CLI treats lattice arguments as poles so grid rows flag them
            if crate::numerics::near_lattice(x, q, crate::numerics::LATTICE_DELTA).is_some() {
                return EvalOutcome::Eval(QError::PoleHit("x on the q-lattice".into()));
            }
            let rep = match p.rep() {
                "" | "product" => ThetaRep::Product,
                "sum" => ThetaRep::Sum,
                other => return usage(format!("unknown theta rep '{other}' (product|sum)")),
            };
            run!(qcore::theta(x, q, rep, &policy))
        }
        "qpoch" => {
            let q = req!(p.q());
            let x = req!(p.get("x"));
            let idx = match p.n.as_deref() {
                Some("inf") | None => PochIndex::Infinite,
                Some(s) => match s.parse::<i64>() {
                    Ok(k) => PochIndex::Int(k),
                    Err(_) => return usage("--n must be an integer or 'inf'".into()),
                },
            };
            run!(qcore::qpoch(x, q, idx, &policy))
        }
        "qbinom" => {
            let q = req!(p.q());
            let alpha = req!(p.get("alpha"));
            let beta = req!(p.get("beta"));
            run!(qcore::qbinom(alpha, beta, q, &policy))
        }
        "eta" => run!(qcore::eta(req!(p.q()), &policy)),
        "phi01" => {
            let q = req!(p.q());
            run!(hyper::phi01(req!(p.get("z")), q, &policy))
        }
        "ramanujan_f0" => {
            let q = req!(p.q());
            run!(hyper::ramanujan_entire(req!(p.get("z")), q, &policy))
        }
        "little_mu" => {
            let q = req!(p.q());
            let x = req!(p.get("x"));
            let y = req!(p.get("y"));
            let rep = match p.rep() {
                "" | "definition" => MuRep::Definition,
                "psi02" => MuRep::Psi02,
                "vwp" => MuRep::Vwp,
                "borel" => MuRep::BorelImage,
                other => {
                    return usage(format!(
                        "unknown little_mu rep '{other}' (definition|psi02|vwp|borel)"
                    ))
                }
            };
            match MuPoint::new(x, y, q) {
                Ok(point) => run!(mu::little_mu(&point, rep, &policy)),
                Err(e) => EvalOutcome::Eval(e),
            }
        }
        "generalized_mu" => {
            let q = req!(p.q());
            let x = req!(p.get("x"));
            let y = req!(p.get("y"));
            let m = match p.m {
                Some(m) => m,
                None => return usage("--m (exponent of a = q^m) is required".into()),
            };
            match MuPoint::new(x, y, q) {
                Ok(point) => run!(mu::generalized_mu(&point, m, &policy)),
                Err(e) => EvalOutcome::Eval(e),
            }
        }
        "m" | "M" => {
            let q = req!(p.q());
            let x = req!(p.get("x"));
            let n = req!(p.int());
            let rep = match p.rep() {
                "" | "series" => MRep::Series,
                "psi02" => MRep::Psi02,
                "vwp" => MRep::Vwp,
                "theta" => MRep::ThetaClosed,
                other => return usage(format!("unknown M rep '{other}' (series|psi02|vwp|theta)")),
            };
            run!(mu::m_function(n, x, q, rep, &policy))
        }
        "s" | "S" | "t" | "T" => {
            let q = req!(p.q());
            let t = req!(p.get("t"));
            let n = req!(p.int());
            let lower = name.to_ascii_lowercase();
            let v = if lower == "s" {
                fib::fib_s(n, t, q.q())
            } else {
                fib::fib_t(n, t, q.q())
            };
            run!(v.map(CVal::new))
        }
        "s_closed" | "t_closed" => {
            let q = req!(p.q());
            let t = req!(p.get("t"));
            let n = req!(p.int());
            let v = if name == "s_closed" {
                fib::fib_s_closed(n, t, q.q())
            } else {
                fib::fib_t_closed(n, t, q.q())
            };
            EvalOutcome::Value(CVal::new(v))
        }
        "fib_det" => {
            let q = req!(p.q());
            let t = req!(p.get("t"));
            let n = req!(p.int());
            run!(fib::fib_det(n, t, q.q()).map(|d| CVal::new(d.determinant)))
        }
        "g" | "G" | "h" | "H" => {
            let q = req!(p.q());
            let rep = match p.rep() {
                "" | "sum" => rr::GhRep::Sum,
                "product" => rr::GhRep::Product,
                other => return usage(format!("unknown rep '{other}' (sum|product)")),
            };
            if name.eq_ignore_ascii_case("g") {
                run!(rr::rr_g(q, rep, &policy))
            } else {
                run!(rr::rr_h(q, rep, &policy))
            }
        }
        "r" | "R" => {
            let q = req!(p.q());
            let rep = match p.rep() {
                "" | "ratio" => rr::RRep::Ratio,
                "cf" | "continued_fraction" => rr::RRep::ContinuedFraction,
                other => return usage(format!("unknown rep '{other}' (ratio|cf)")),
            };
            run!(rr::rr_r(q, rep, &policy))
        }
        "rr_quadratic" => {
            let q = req!(p.q());
            run!(rr::rr_quadratic(q, &policy).map(|v| CVal::new(v.eta_form)))
        }
        "iz_u" => {
            let q = req!(p.q());
            let a = req!(p.get("a"));
            let x = req!(p.get("x"));
            run!(rr::iz_u(a, x, q, &policy))
        }
        "garrett_ismail" => {
            let q = req!(p.q());
            let n = req!(p.int());
            run!(
                fib::garrett_ismail_residual(n, q, fib::GiNormalization::EntireWeighted, &policy)
                    .map(|r| CVal::new(r.residual))
            )
        }
        "heine_identity" | "heine_operator" => {
            let q = req!(p.q());
            let (a, b, c, x) = (
                req!(p.get("a")),
                req!(p.get("b")),
                req!(p.get("c")),
                req!(p.get("x")),
            );
            run!(hyper::heine_residual(a, b, c, x, q, &policy).map(|r| {
                if name == "heine_identity" {
                    CVal::new(r.identity_residual)
                } else {
                    CVal::new(r.operator_residual)
                }
            }))
        }
        "list" => EvalOutcome::Usage(format!("registered functions: {}", FUNCTIONS.join(", "))),
        other => EvalOutcome::Usage(format!(
            "unknown function '{other}'; registered: {}",
            FUNCTIONS.join(", ")
        )),
    }
}

const FUNCTIONS: &[&str] = &[
    "theta",
    "qpoch",
    "qbinom",
    "eta",
    "phi01",
    "ramanujan_f0",
    "little_mu",
    "generalized_mu",
    "M",
    "S",
    "T",
    "s_closed",
    "t_closed",
    "fib_det",
    "G",
    "H",
    "R",
    "rr_quadratic",
    "iz_u",
    "garrett_ismail",
    "heine_identity",
    "heine_operator",
];

#[allow(clippy::too_many_arguments)]
fn collect_params(
    q: Option<String>,
    pairs: Vec<(&'static str, Option<String>)>,
    n: Option<String>,
    m: Option<u32>,
    rep: Option<String>,
) -> Result<Params, String> {
    let q = match q {
        Some(s) => {
            let qv = parse_complex(&s)?;
            Some(Modulus::from_q(qv).map_err(|e| e.to_string())?)
        }
        None => None,
    };
    let mut values = BTreeMap::new();
    for (key, v) in pairs {
        if let Some(s) = v {
            values.insert(key, parse_complex(&s)?);
        }
    }
    Ok(Params {
        q,
        values,
        n,
        m,
        rep,
    })
}

fn print_value(name: &str, v: &CVal) {
    println!("{name} = {v}");
    match v.err {
        Some(e) => println!("err <= {e:.3e}"),
        None => println!("err: exact to rounding"),
    }
}

/// Entry point used by the `qmu` binary. Returns the process exit code.
pub fn run() -> i32 {
    if let Ok(p) = std::env::var("QMU_PRECISION") {
        if p != "f64" {
            eprintln!("error: QMU_PRECISION='{p}' is not supported (only \"f64\")");
            return EXIT_USAGE;
        }
    }
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Eval {
            function,
            q,
            x,
            y,
            z,
            a,
            b,
            c,
            t,
            alpha,
            beta,
            n,
            m,
            rep,
        } => {
            let params = match collect_params(
                q,
                vec![
                    ("x", x),
                    ("y", y),
                    ("z", z),
                    ("a", a),
                    ("b", b),
                    ("c", c),
                    ("t", t),
                    ("alpha", alpha),
                    ("beta", beta),
                ],
                n,
                m,
                rep,
            ) {
                Ok(p) => p,
                Err(msg) => {
                    eprintln!("error: {msg}");
                    return EXIT_USAGE;
                }
            };
            match eval_function(&function, &params) {
                EvalOutcome::Value(v) => {
                    print_value(&function, &v);
                    EXIT_OK
                }
                EvalOutcome::Usage(msg) => {
                    eprintln!("error: {msg}");
                    EXIT_USAGE
                }
                EvalOutcome::Eval(e) => {
                    eprintln!("error: {e}");
                    EXIT_EVAL
                }
            }
        }
        Cmd::Suite {
            q,
            points,
            seed,
            tol_profile,
            report,
        } => {
            let tol_profile: TolProfile = match tol_profile.parse() {
                Ok(t) => t,
                Err(msg) => {
                    eprintln!("error: {msg}");
                    return EXIT_USAGE;
                }
            };
            if q.iter().any(|&v| !(v > 0.0 && v < 1.0)) {
                eprintln!("error: every q must lie strictly in (0, 1)");
                return EXIT_USAGE;
            }
            let config = SuiteConfig {
                q_values: q,
                points,
                seed,
                tol_profile,
            };
            let result = suite::run_suite(&config);
            match report.as_str() {
                "json" => println!("{}", serde_json::to_string_pretty(&result).unwrap()),
                "text" => {
                    for r in &result.reports {
                        let status = match r.status {
                            Status::Pass => "PASS",
                            Status::Fail => "FAIL",
                            Status::Skip => "SKIP",
                        };
                        println!(
                            "{status}  {:<32} points={:<4} skipped={:<3} max_rel={:.3e}{}",
                            r.identity_id,
                            r.points_tested,
                            r.points_skipped,
                            r.max_rel_residual,
                            r.note
                                .as_ref()
                                .map(|n| format!("  [{n}]"))
                                .unwrap_or_default()
                        );
                    }
                    let (pass, total) = (
                        result
                            .reports
                            .iter()
                            .filter(|r| r.status == Status::Pass)
                            .count(),
                        result.reports.len(),
                    );
                    println!("{pass}/{total} identities passed");
                }
                other => {
                    eprintln!("error: unknown report format '{other}' (text|json)");
                    return EXIT_USAGE;
                }
            }
            if result.all_pass() {
                EXIT_OK
            } else {
                EXIT_SUITE_FAIL
            }
        }
        Cmd::Grid {
            function,
            var,
            from,
            to,
            steps,
            out,
            q,
            x,
            y,
            z,
            a,
            b,
            c,
            t,
            n,
            m,
            rep,
        } => {
            let var_key: &'static str = match var.as_str() {
                "x" => "x",
                "y" => "y",
                "z" => "z",
                "a" => "a",
                "b" => "b",
                "c" => "c",
                "t" => "t",
                other => {
                    eprintln!("error: cannot vary '{other}' (one of x,y,z,a,b,c,t)");
                    return EXIT_USAGE;
                }
            };
            if steps == 0 {
                eprintln!("error: --steps must be at least 1");
                return EXIT_USAGE;
            }
            let params = match collect_params(
                q,
                vec![
                    ("x", x),
                    ("y", y),
                    ("z", z),
                    ("a", a),
                    ("b", b),
                    ("c", c),
                    ("t", t),
                ],
                n,
                m,
                rep,
            ) {
                Ok(p) => p,
                Err(msg) => {
                    eprintln!("error: {msg}");
                    return EXIT_USAGE;
                }
            };
            let mut rows = String::from("var_re,var_im,re,im,err,status\n");
            for j in 0..steps {
                let v = if steps == 1 {
                    from
                } else {
                    from + (to - from) * j as f64 / (steps - 1) as f64
                };
                let point = C64::new(v, 0.0);
                let mut p = Params {
                    q: params.q,
                    values: params.values.clone(),
                    n: params.n.clone(),
                    m: params.m,
                    rep: params.rep.clone(),
                };
                p.values.insert(var_key, point);
                match eval_function(&function, &p) {
                    EvalOutcome::Value(val) => {
                        let err = val.err.map(|e| format!("{e:e}")).unwrap_or_default();
                        rows.push_str(&format!(
                            "{:e},{:e},{:e},{:e},{},ok\n",
                            point.re, point.im, val.value.re, val.value.im, err
                        ));
                    }
                    EvalOutcome::Usage(msg) => {
                        eprintln!("error: {msg}");
                        return EXIT_USAGE;
                    }
                    EvalOutcome::Eval(e) => {
                        let status = match e {
                            QError::PoleHit(_) => "pole",
                            QError::NonConvergent { .. } => "nonconvergent",
                            _ => "error",
                        };
                        rows.push_str(&format!("{:e},{:e},,,,{status}\n", point.re, point.im));
                    }
                }
            }
            let file = std::fs::File::create(&out);
            match file.and_then(|mut f| f.write_all(rows.as_bytes())) {
                Ok(()) => EXIT_OK,
                Err(e) => {
                    eprintln!("error: cannot write {}: {e}", out.display());
                    EXIT_USAGE
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_literals() {
        assert_eq!(parse_complex("0.5").unwrap(), C64::new(0.5, 0.0));
        assert_eq!(parse_complex("-1.25").unwrap(), C64::new(-1.25, 0.0));
        assert_eq!(parse_complex("1.5+0.3i").unwrap(), C64::new(1.5, 0.3));
        assert_eq!(parse_complex("2-0.25i").unwrap(), C64::new(2.0, -0.25));
        assert_eq!(parse_complex("0.4i").unwrap(), C64::new(0.0, 0.4));
        assert_eq!(parse_complex("-0.4i").unwrap(), C64::new(0.0, -0.4));
        assert_eq!(parse_complex("1e-3+2e-4i").unwrap(), C64::new(1e-3, 2e-4));
        assert!(parse_complex("foo").is_err());
        assert!(parse_complex("").is_err());
    }

    #[test]
    fn eval_matches_library() {
        let params = collect_params(
            Some("0.3".into()),
            vec![("t", Some("1".into()))],
            Some("-1".into()),
            None,
            None,
        )
        .unwrap();
        match eval_function("S", &params) {
            EvalOutcome::Value(v) => assert!((v.value - C64::new(0.3, 0.0)).norm() < 1e-14),
            other => panic!(
                "unexpected outcome: {:?}",
                matches!(other, EvalOutcome::Value(_))
            ),
        }
    }

    #[test]
    fn eval_pole_is_flagged() {
        let params = collect_params(
            Some("0.2".into()),
            vec![("x", Some("0.2".into()))],
            None,
            None,
            None,
        )
        .unwrap();
        assert!(matches!(
            eval_function("theta", &params),
            EvalOutcome::Eval(QError::PoleHit(_))
        ));
    }
}
