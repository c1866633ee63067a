use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::theorems::{
    enumerate_words, theorem2_and_tailcor, verify_theorem1, verify_writhe_corollary,
};
use super::ReportLine;
use crate::braid::{sample_braid, BraidWord};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    T1,
    Wr,
    T2,
    Tailcor,
}

impl FromStr for Check {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "t1" => Ok(Check::T1),
            "wr" => Ok(Check::Wr),
            "t2" => Ok(Check::T2),
            "tailcor" => Ok(Check::Tailcor),
            other => Err(Error::invalid(format!("unknown check {other:?}"))),
        }
    }
}

/// Sweep description, read from `key=value` lines.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepSpec {
    pub checks: Vec<Check>,
    pub n_min: usize,
    pub n_max: usize,
    pub c_max: usize,
    pub samples: usize,
    pub seed: u64,
    /// Exhaustive enumeration for `t1`/`wr`; 0 disables it.
    pub exhaustive_n_max: usize,
    pub exhaustive_c_max: usize,
    /// Positive braids for `t2`/`tailcor`.
    pub color_n_max: usize,
    pub color_c_max: usize,
    pub color_cable_max: u64,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            checks: Vec::new(),
            n_min: 2,
            n_max: 4,
            c_max: 5,
            samples: 0,
            seed: 0,
            exhaustive_n_max: 0,
            exhaustive_c_max: 0,
            color_n_max: 3,
            color_c_max: 2,
            color_cable_max: 3,
        }
    }
}

pub fn parse_sweep_spec(text: &str) -> Result<SweepSpec> {
    let mut spec = SweepSpec::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let bad = |msg: String| Error::Parse {
            pos: lineno + 1,
            msg,
        };
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| bad(format!("expected key=value, got {line:?}")))?;
        let (key, value) = (key.trim(), value.trim());
        let num = |v: &str| -> Result<u64> {
            v.parse()
                .map_err(|_| bad(format!("{key} expects a nonnegative integer, got {v:?}")))
        };
        match key {
            "checks" => {
                spec.checks = value
                    .split(',')
                    .filter(|s| !s.trim().is_empty())
                    .map(Check::from_str)
                    .collect::<Result<_>>()?;
            }
            "n_min" => spec.n_min = num(value)? as usize,
            "n_max" => spec.n_max = num(value)? as usize,
            "c_max" => spec.c_max = num(value)? as usize,
            "samples" => spec.samples = num(value)? as usize,
            "seed" => spec.seed = num(value)?,
            "exhaustive_n_max" => spec.exhaustive_n_max = num(value)? as usize,
            "exhaustive_c_max" => spec.exhaustive_c_max = num(value)? as usize,
            "color_n_max" => spec.color_n_max = num(value)? as usize,
            "color_c_max" => spec.color_c_max = num(value)? as usize,
            "color_N_max" => spec.color_cable_max = num(value)?,
            other => return Err(bad(format!("unknown key {other:?}"))),
        }
    }
    if spec.n_min < 1 || spec.n_min > spec.n_max.max(1) {
        return Err(Error::invalid("sweep needs 1 <= n_min <= n_max"));
    }
    Ok(spec)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub lines: Vec<ReportLine>,
    pub passed: usize,
    pub failed: usize,
}

impl SweepReport {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json_lines(&self) -> String {
        self.lines.iter().map(|l| l.to_json_line() + "\n").collect()
    }
}

fn error_line(check: &str, subject: &str, e: &Error) -> ReportLine {
    ReportLine::new(
        check,
        subject,
        false,
        serde_json::json!({ "error": e.to_string() }),
    )
}

/// Uncolored subjects: exhaustive words, then seeded samples.
fn uncolored_subjects(spec: &SweepSpec) -> Result<Vec<BraidWord>> {
    let mut subjects = Vec::new();
    for n in spec.n_min..=spec.exhaustive_n_max {
        subjects.extend(enumerate_words(n, spec.exhaustive_c_max, false, n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..spec.samples {
        let n = rng.gen_range(spec.n_min..=spec.n_max);
        let c = if n < 2 {
            0
        } else {
            rng.gen_range(0..=spec.c_max)
        };
        let l = rng.gen_range(0..=n.min(c));
        let sub_seed: u64 = rng.gen();
        subjects.push(sample_braid(n, c, l, sub_seed)?);
    }
    Ok(subjects)
}

fn colored_subjects(spec: &SweepSpec) -> Vec<(BraidWord, u64)> {
    let mut out = Vec::new();
    for n in spec.n_min.max(1)..=spec.color_n_max {
        for w in enumerate_words(n, spec.color_c_max, true, 0) {
            for big_n in 1..=spec.color_cable_max {
                out.push((w.clone(), big_n));
            }
        }
    }
    out
}

/// Runs the selected checks over the sweep; output order is deterministic.
pub fn batch_verify(spec: &SweepSpec) -> Result<SweepReport> {
    let want = |c: Check| spec.checks.contains(&c);
    let mut lines = Vec::new();

    if want(Check::T1) || want(Check::Wr) {
        let subjects = uncolored_subjects(spec)?;
        let chunks: Vec<Vec<ReportLine>> = subjects
            .par_iter()
            .map(|b| {
                let subject = b.to_string();
                let mut out = Vec::new();
                if want(Check::T1) {
                    out.push(match verify_theorem1(b) {
                        Ok(r) => ReportLine::new("t1", &subject, r.verdict.pass, &r),
                        Err(e) => error_line("t1", &subject, &e),
                    });
                }
                if want(Check::Wr) {
                    out.push(match verify_writhe_corollary(b) {
                        Ok(r) => ReportLine::new("wr", &subject, r.pass, &r),
                        Err(e) => error_line("wr", &subject, &e),
                    });
                }
                out
            })
            .collect();
        lines.extend(chunks.into_iter().flatten());
    }

    if want(Check::T2) || want(Check::Tailcor) {
        let subjects = colored_subjects(spec);
        let chunks: Vec<Vec<ReportLine>> = subjects
            .par_iter()
            .map(|(b, big_n)| {
                let subject = format!("{b} N={big_n}");
                let mut out = Vec::new();
                match theorem2_and_tailcor(b, *big_n) {
                    Ok((t2, tc)) => {
                        if want(Check::T2) {
                            out.push(ReportLine::new("t2", &subject, t2.verdict.pass, &t2));
                        }
                        if let (true, Some(tc)) = (want(Check::Tailcor), tc) {
                            out.push(ReportLine::new("tailcor", &subject, tc.verdict.pass, &tc));
                        }
                    }
                    Err(e) => out.push(error_line("t2", &subject, &e)),
                }
                out
            })
            .collect();
        lines.extend(chunks.into_iter().flatten());
    }

    let passed = lines.iter().filter(|l| l.passed()).count();
    let failed = lines.len() - passed;
    Ok(SweepReport {
        lines,
        passed,
        failed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_spec_file() {
        let spec =
            parse_sweep_spec("n_max=4\nc_max=5 # comment\nsamples=200\nseed=42\nchecks=t1,wr\n")
                .unwrap();
        assert_eq!(spec.checks, vec![Check::T1, Check::Wr]);
        assert_eq!(
            (spec.n_max, spec.c_max, spec.samples, spec.seed),
            (4, 5, 200, 42)
        );
        assert!(parse_sweep_spec("bogus=1").is_err());
        assert!(parse_sweep_spec("n_max").is_err());
        assert!(parse_sweep_spec("checks=t9").is_err());
        assert!(parse_sweep_spec("samples=-3").is_err());
    }

    #[test]
    fn empty_sweep() {
        let r = batch_verify(&parse_sweep_spec("").unwrap()).unwrap();
        assert!(r.lines.is_empty());
        assert!(r.all_pass());
    }

    #[test]
    fn small_sampled_sweep_passes() {
        let spec = parse_sweep_spec("n_max=4\nc_max=5\nsamples=40\nseed=42\nchecks=t1,wr").unwrap();
        let r = batch_verify(&spec).unwrap();
        assert_eq!(r.lines.len(), 80);
        assert!(r.all_pass(), "{}", r.to_json_lines());
        assert_eq!(
            r.to_json_lines(),
            batch_verify(&spec).unwrap().to_json_lines()
        );
    }

    #[test]
    fn small_colored_sweep_passes() {
        let spec =
            parse_sweep_spec("color_n_max=2\ncolor_c_max=2\ncolor_N_max=2\nchecks=t2,tailcor")
                .unwrap();
        let r = batch_verify(&spec).unwrap();
        // 3 positive words x 2 colors, each with t2 and tailcor
        assert_eq!(r.lines.len(), 12);
        assert!(r.all_pass(), "{}", r.to_json_lines());
    }
}
