//! `braidtail` command line. Exit codes: 0 ok, 1 verification failure,
//! 2 usage or hypothesis error, 3 resource cap.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use serde_json::json;

use crate::braid::parse_braid;
use crate::error::Error;
use crate::invariants::{colored_jones_with_progress, jones, kauffman_bracket, torus_jones};
use crate::temperley_lieb::{set_strand_cap, DEFAULT_STRAND_CAP};
use crate::theorem_lab::{
    batch_verify, parse_sweep_spec, scan_maxpower, verify_cabling_lemma, verify_tailcor,
    verify_theorem1, verify_theorem2, verify_writhe_corollary, ReportLine, Verdict,
};

pub const CAP_ENV: &str = "BRAIDTAIL_MAX_STRANDS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "braidtail",
    version,
    about = "Exact bracket, Jones and colored Jones of closed braids, with tail checks"
)]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Strand cap for Temperley-Lieb computations (default 16, or $BRAIDTAIL_MAX_STRANDS).
    #[arg(long, global = true, value_name = "K")]
    max_strands: Option<usize>,
    /// Allow a cap above the default.
    #[arg(long, global = true)]
    override_cap: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Kauffman bracket of the closure.
    Bracket {
        braid: String,
        /// Extra positive curls, each contributing -A^3.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        kinks: i64,
    },
    /// Jones polynomial of the closure.
    Jones { braid: String },
    /// Closed-form Jones polynomial of the torus link T(p, q).
    Torus {
        #[arg(short)]
        p: u64,
        #[arg(short)]
        q: u64,
    },
    /// Colored Jones polynomial of the closure of FT * braid (braid positive).
    Colored {
        braid: String,
        #[arg(short = 'N')]
        n_cable: u64,
        /// Per-summand progress on stderr.
        #[arg(long)]
        progress: bool,
    },
    /// Run one check.
    Verify {
        #[command(subcommand)]
        check: VerifyCmd,
    },
    /// Batch verification from a key=value spec file.
    Sweep { spec: PathBuf },
}

#[derive(Subcommand, Debug)]
enum VerifyCmd {
    /// Sign, lowest degree, tail and gap of V for FT * braid.
    T1 { braid: String },
    /// 2 mindeg V = w - n + 1.
    Wr { braid: String },
    /// Colored tails of FT * braid.
    T2 {
        braid: String,
        #[arg(short = 'N')]
        n_cable: u64,
    },
    /// Normalized colored tail for N > n - 2.
    Tailcor {
        braid: String,
        #[arg(short = 'N')]
        n_cable: u64,
    },
    /// Top A-degree of closures of FT * basis diagram.
    Maxpower {
        #[arg(short)]
        n: usize,
    },
    /// Cable of the full twist against the full twist on nr strands.
    Cabling {
        #[arg(short)]
        n: usize,
        #[arg(short)]
        r: usize,
    },
}

enum Failure {
    Lib(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

fn classify(e: &Error) -> (&'static str, i32) {
    match e {
        Error::Parse { .. } => ("parse", EXIT_USAGE),
        Error::InvalidArgument(_) => ("usage", EXIT_USAGE),
        Error::Hypothesis(_) => ("hypothesis", EXIT_USAGE),
        Error::Resource { .. } => ("resource", EXIT_RESOURCE),
        _ => ("math", EXIT_USAGE),
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "error[usage]: {}", e.render());
                    EXIT_USAGE
                }
            }
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Failure::Lib(e)) => {
            let (tag, code) = classify(&e);
            let _ = writeln!(err, "error[{tag}]: {e}");
            code
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error[usage]: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(msg)) => {
            let _ = writeln!(err, "error[io]: {msg}");
            EXIT_USAGE
        }
    }
}

fn configure_cap(cli: &Cli) -> Result<(), Failure> {
    let from_env = match std::env::var(CAP_ENV) {
        Ok(v) => Some(
            v.trim()
                .parse::<usize>()
                .map_err(|_| Failure::Usage(format!("{CAP_ENV}={v:?} is not a strand count")))?,
        ),
        Err(_) => None,
    };
    let cap = cli.max_strands.or(from_env).unwrap_or(DEFAULT_STRAND_CAP);
    if cap > DEFAULT_STRAND_CAP && !cli.override_cap {
        return Err(Failure::Usage(format!(
            "strand cap {cap} exceeds the default {DEFAULT_STRAND_CAP}; pass --override-cap"
        )));
    }
    set_strand_cap(cap)?;
    Ok(())
}

fn verdict_code(pass: bool) -> i32 {
    if pass {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}

fn emit_line(
    out: &mut dyn Write,
    json: bool,
    line: &ReportLine,
    verdict: Option<&Verdict>,
) -> Result<i32, Failure> {
    if json {
        writeln!(out, "{}", line.to_json_line())?;
    } else {
        writeln!(out, "{} {} {}", line.verdict, line.check, line.subject)?;
        if let Some(d) = verdict.and_then(|v| v.first_discrepancy.as_ref()) {
            let at = d.degree.map(|r| format!(" at t^{r}")).unwrap_or_default();
            writeln!(
                out,
                "  {}{at}: expected {}, observed {}",
                d.field, d.expected, d.observed
            )?;
        }
    }
    Ok(verdict_code(line.passed()))
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<i32, Failure> {
    configure_cap(cli)?;
    let json = cli.json;
    match &cli.cmd {
        Cmd::Bracket { braid, kinks } => {
            let b = parse_braid(braid)?;
            let p = kauffman_bracket(&b, *kinks)?;
            if json {
                let v = json!({
                    "braid": b.to_string(),
                    "strands": b.strands(),
                    "writhe": b.writhe(),
                    "kinks": kinks,
                    "bracket": p.to_json(),
                });
                writeln!(out, "{v}")?;
            } else {
                writeln!(out, "{p}")?;
            }
        }
        Cmd::Jones { braid } => {
            let b = parse_braid(braid)?;
            let p = jones(&b)?;
            if json {
                let v = json!({
                    "braid": b.to_string(),
                    "strands": b.strands(),
                    "writhe": b.writhe(),
                    "jones": p.to_json(),
                });
                writeln!(out, "{v}")?;
            } else {
                writeln!(out, "{p}")?;
            }
        }
        Cmd::Torus { p, q } => {
            let v = torus_jones(*p, *q)?;
            if json {
                writeln!(out, "{}", json!({ "p": p, "q": q, "jones": v.to_json() }))?;
            } else {
                writeln!(out, "{v}")?;
            }
        }
        Cmd::Colored {
            braid,
            n_cable,
            progress,
        } => {
            let b = parse_braid(braid)?;
            let report = |msg: &str| {
                if *progress {
                    let _ = writeln!(std::io::stderr().lock(), "progress: {msg}");
                }
            };
            let cj = colored_jones_with_progress(&b, *n_cable, &report)?;
            if json {
                let mut v = cj.to_json();
                v["braid"] = json!(b.to_string());
                writeln!(out, "{v}")?;
            } else {
                writeln!(out, "J_{}: {}", cj.color(), cj.unnormalized)?;
                writeln!(out, "J'_{}: {}", cj.color(), cj.normalized)?;
            }
        }
        Cmd::Verify { check } => return verify(check, json, out),
        Cmd::Sweep { spec } => {
            let text = std::fs::read_to_string(spec)
                .map_err(|e| Failure::Io(format!("{}: {e}", spec.display())))?;
            let spec = parse_sweep_spec(&text)?;
            let report = batch_verify(&spec)?;
            if json {
                out.write_all(report.to_json_lines().as_bytes())?;
            } else {
                for line in &report.lines {
                    writeln!(out, "{} {} {}", line.verdict, line.check, line.subject)?;
                }
                writeln!(out, "passed {} failed {}", report.passed, report.failed)?;
            }
            return Ok(verdict_code(report.all_pass()));
        }
    }
    Ok(EXIT_OK)
}

fn verify(check: &VerifyCmd, json: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    match check {
        VerifyCmd::T1 { braid } => {
            let r = verify_theorem1(&parse_braid(braid)?)?;
            let line = ReportLine::new("t1", &r.subject, r.verdict.pass, &r);
            emit_line(out, json, &line, Some(&r.verdict))
        }
        VerifyCmd::Wr { braid } => {
            let r = verify_writhe_corollary(&parse_braid(braid)?)?;
            let line = ReportLine::new("wr", &r.subject, r.pass, &r);
            if !json && !r.pass {
                writeln!(out, "  2 mindeg = {}, w - n + 1 = {}", r.lhs, r.rhs)?;
            }
            emit_line(out, json, &line, None)
        }
        VerifyCmd::T2 { braid, n_cable } => {
            let r = verify_theorem2(&parse_braid(braid)?, *n_cable)?;
            let subject = format!("{} N={}", r.subject, n_cable);
            let line = ReportLine::new("t2", &subject, r.verdict.pass, &r);
            emit_line(out, json, &line, Some(&r.verdict))
        }
        VerifyCmd::Tailcor { braid, n_cable } => {
            let r = verify_tailcor(&parse_braid(braid)?, *n_cable)?;
            let subject = format!("{} N={}", r.subject, n_cable);
            let line = ReportLine::new("tailcor", &subject, r.verdict.pass, &r);
            emit_line(out, json, &line, Some(&r.verdict))
        }
        VerifyCmd::Maxpower { n } => {
            let scan = scan_maxpower(*n)?;
            let line = ReportLine::new("maxpower", &format!("n={n}"), scan.pass, &scan);
            let code = emit_line(out, json, &line, None)?;
            if !json {
                let worst = scan.rows[1..].iter().filter_map(|r| r.max_degree).max();
                writeln!(
                    out,
                    "  {} closures, bound {}, worst {}, identity top degree {} (expected {})",
                    scan.rows.len(),
                    scan.bound,
                    worst.map_or("none".to_string(), |d| d.to_string()),
                    scan.identity_top_degree,
                    scan.identity_expected
                )?;
            }
            Ok(code)
        }
        VerifyCmd::Cabling { n, r } => {
            let rep = verify_cabling_lemma(*n, *r)?;
            let line = ReportLine::new("cabling", &format!("n={n} r={r}"), rep.pass, &rep);
            let code = emit_line(out, json, &line, None)?;
            if !json {
                writeln!(out, "  {} strands: {}", rep.strands, rep.direct)?;
            }
            Ok(code)
        }
    }
}
