//! Machine checks of tail, gap and degree statements about Jones and colored
//! Jones polynomials of twisted braid closures.

mod scans;
mod sweep;
mod theorems;

use num_bigint::BigInt;
use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Var};

pub use scans::{scan_maxpower, verify_cabling_lemma, CablingReport, MaxpowerRow, MaxpowerScan};
pub use sweep::{batch_verify, parse_sweep_spec, Check, SweepReport, SweepSpec};
pub use theorems::{
    color_stabilization, enumerate_words, lemma8_failures, lemma8_grid, verify_tailcor,
    verify_theorem1, verify_theorem2, verify_writhe_corollary, Lemma8Check, StabilizationReport,
    Theorem2Report, WritheReport,
};

pub(crate) fn rat_json(r: &Rational64) -> [i64; 2] {
    [*r.numer(), *r.denom()]
}

pub(crate) fn ser_rat<S: serde::Serializer>(
    r: &Rational64,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    rat_json(r).serialize(s)
}

pub(crate) fn ser_big_vec<S: serde::Serializer>(
    v: &[BigInt],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let out: Vec<serde_json::Value> = v
        .iter()
        .map(|c| match c.to_i64() {
            Some(x) => serde_json::Value::from(x),
            None => serde_json::Value::from(c.to_string()),
        })
        .collect();
    out.serialize(s)
}

/// Lowest-degree window of a polynomial: `p = sign · t^min · (Σ_i coeffs[i] t^i + t^len · residual)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tail {
    pub sign: i8,
    pub min_t_degree: Rational64,
    pub coeffs: Vec<BigInt>,
    pub residual: LaurentPoly,
}

/// Extracts the tail in unit steps of `t` (two steps of `s` for `s`-polynomials).
pub fn extract_tail(p: &LaurentPoly, length: usize) -> Result<Tail> {
    if length < 1 {
        return Err(Error::invalid("tail length must be at least 1"));
    }
    let (lo, _) = p.degree_bounds()?;
    let lead = p.lowest_coeff().expect("nonzero");
    let sign: i8 = if lead.is_negative() { -1 } else { 1 };
    let step = if p.var() == Var::S { 2 } else { 1 };
    let normalized = p.shift(-lo).scale(&BigInt::from(sign));
    let coeffs: Vec<BigInt> = (0..length as i64)
        .map(|i| normalized.coeff(step * i))
        .collect();
    let window = LaurentPoly::from_terms(
        p.var(),
        coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| (step * i as i64, c.clone())),
    );
    let residual = (&normalized - &window).shift(-step * length as i64);
    Ok(Tail {
        sign,
        min_t_degree: p.t_exponent(lo),
        coeffs,
        residual,
    })
}

/// Zero coefficients in unit `t` steps strictly between the two lowest nonzero
/// terms; `None` for monomials.
pub fn lowest_gap(p: &LaurentPoly) -> Option<usize> {
    let mut it = p.terms();
    let (e0, _) = it.next()?;
    let (e1, _) = it.next()?;
    let step = if p.var() == Var::S { 2 } else { 1 };
    Some(((e1 - e0 + step - 1) / step - 1) as usize)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub field: String,
    #[serde(
        skip_serializing_if = "Option::is_none",
        serialize_with = "ser_opt_rat"
    )]
    pub degree: Option<Rational64>,
    pub expected: String,
    pub observed: String,
}

fn ser_opt_rat<S: serde::Serializer>(
    r: &Option<Rational64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    r.map(|r| rat_json(&r)).serialize(s)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_discrepancy: Option<Discrepancy>,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict {
            pass: true,
            first_discrepancy: None,
        }
    }

    pub fn fail(d: Discrepancy) -> Self {
        Verdict {
            pass: false,
            first_discrepancy: Some(d),
        }
    }

    pub fn as_str(&self) -> &'static str {
        if self.pass {
            "pass"
        } else {
            "fail"
        }
    }
}

/// Predicted versus observed tail data for one polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TailReport {
    pub subject: String,
    pub predicted_sign: i8,
    pub observed_sign: i8,
    #[serde(serialize_with = "ser_rat")]
    pub predicted_min_t_degree: Rational64,
    #[serde(serialize_with = "ser_rat")]
    pub observed_min_t_degree: Rational64,
    pub tail_length: usize,
    #[serde(serialize_with = "ser_big_vec")]
    pub predicted_tail_coeffs: Vec<BigInt>,
    #[serde(serialize_with = "ser_big_vec")]
    pub observed_tail_coeffs: Vec<BigInt>,
    pub gap_required: usize,
    pub gap_observed: usize,
    pub residual: LaurentPoly,
    pub verdict: Verdict,
}

impl TailReport {
    /// Builds the report and derives its verdict from the predicted and
    /// observed fields.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn assemble(
        subject: String,
        predicted_sign: i8,
        predicted_min_t_degree: Rational64,
        predicted_tail_coeffs: Vec<BigInt>,
        tail: Tail,
        gap_required: usize,
        gap_observed: usize,
    ) -> Self {
        let mut report = TailReport {
            subject,
            predicted_sign,
            observed_sign: tail.sign,
            predicted_min_t_degree,
            observed_min_t_degree: tail.min_t_degree,
            tail_length: predicted_tail_coeffs.len(),
            predicted_tail_coeffs,
            observed_tail_coeffs: tail.coeffs,
            gap_required,
            gap_observed,
            residual: tail.residual,
            verdict: Verdict::pass(),
        };
        report.verdict = report.judge();
        report
    }

    fn judge(&self) -> Verdict {
        let mismatch = |field: &str, degree: Option<Rational64>, e: String, o: String| {
            Verdict::fail(Discrepancy {
                field: field.to_string(),
                degree,
                expected: e,
                observed: o,
            })
        };
        if self.predicted_sign != self.observed_sign {
            return mismatch(
                "sign",
                None,
                self.predicted_sign.to_string(),
                self.observed_sign.to_string(),
            );
        }
        if self.predicted_min_t_degree != self.observed_min_t_degree {
            return mismatch(
                "min_t_degree",
                None,
                self.predicted_min_t_degree.to_string(),
                self.observed_min_t_degree.to_string(),
            );
        }
        for (i, (e, o)) in self
            .predicted_tail_coeffs
            .iter()
            .zip(&self.observed_tail_coeffs)
            .enumerate()
        {
            if e != o {
                return mismatch(
                    "tail_coeff",
                    Some(self.observed_min_t_degree + Rational64::from_integer(i as i64)),
                    e.to_string(),
                    o.to_string(),
                );
            }
        }
        if self.predicted_tail_coeffs.len() != self.observed_tail_coeffs.len() {
            return mismatch(
                "tail_length",
                None,
                self.predicted_tail_coeffs.len().to_string(),
                self.observed_tail_coeffs.len().to_string(),
            );
        }
        if self.gap_observed < self.gap_required {
            return mismatch(
                "gap",
                None,
                format!(">= {}", self.gap_required),
                self.gap_observed.to_string(),
            );
        }
        Verdict::pass()
    }

    /// True when every observed tail coefficient lies in {-1, 0, 1}.
    pub fn tail_is_unit(&self) -> bool {
        self.observed_tail_coeffs
            .iter()
            .all(|c| c.abs() <= BigInt::from(1))
    }
}

/// One JSON-lines record: `{"check", "subject", "verdict", "detail"}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportLine {
    pub check: String,
    pub subject: String,
    pub verdict: String,
    pub detail: serde_json::Value,
}

impl ReportLine {
    pub fn new(check: &str, subject: &str, pass: bool, detail: impl Serialize) -> Self {
        ReportLine {
            check: check.to_string(),
            subject: subject.to_string(),
            verdict: if pass { "pass" } else { "fail" }.to_string(),
            detail: serde_json::to_value(detail).expect("report detail"),
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == "pass"
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report line")
    }
}

pub(crate) fn unit_window(len: usize, hit: impl Fn(usize) -> bool) -> Vec<BigInt> {
    (0..len)
        .map(|i| {
            if hit(i) {
                BigInt::from(1)
            } else {
                BigInt::zero()
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(Var::S, terms.iter().copied())
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn tail_of_example() {
        let v = s(&[(12, 1), (16, 1), (20, 1), (24, 1)]);
        let t = extract_tail(&v, 5).unwrap();
        assert_eq!(t.sign, 1);
        assert_eq!(t.min_t_degree, Rational64::from_integer(6));
        assert_eq!(t.coeffs, ints(&[1, 0, 1, 0, 1]));
        assert_eq!(t.residual, s(&[(2, 1)]));
    }

    #[test]
    fn tail_of_hopf() {
        let t = extract_tail(&s(&[(1, -1), (5, -1)]), 2).unwrap();
        assert_eq!(t.sign, -1);
        assert_eq!(t.min_t_degree, Rational64::new(1, 2));
        assert_eq!(t.coeffs, ints(&[1, 0]));
        assert_eq!(t.residual, s(&[(0, 1)]));
    }

    #[test]
    fn tail_of_constant() {
        let t = extract_tail(&LaurentPoly::one(Var::S), 3).unwrap();
        assert_eq!((t.sign, t.min_t_degree), (1, Rational64::from_integer(0)));
        assert_eq!(t.coeffs, ints(&[1, 0, 0]));
        assert!(t.residual.is_zero());
    }

    #[test]
    fn tail_errors() {
        assert!(matches!(
            extract_tail(&LaurentPoly::zero(Var::S), 2),
            Err(Error::UndefinedDegree)
        ));
        assert!(extract_tail(&LaurentPoly::one(Var::S), 0).is_err());
    }

    #[test]
    fn tail_reconstructs_polynomial() {
        let p = s(&[(-3, -2), (1, 5), (3, 1), (4, -7), (11, 2)]);
        for len in 1..8 {
            let t = extract_tail(&p, len).unwrap();
            let window = LaurentPoly::from_terms(
                Var::S,
                t.coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (2 * i as i64, c.clone())),
            );
            let inner = &window + &t.residual.shift(2 * len as i64);
            let lo = (t.min_t_degree * 2).to_integer();
            let back = inner.shift(lo).scale(&BigInt::from(t.sign));
            assert_eq!(back, p);
        }
    }

    #[test]
    fn gap_counting() {
        assert_eq!(lowest_gap(&s(&[(12, 1), (28, -1)])), Some(7));
        assert_eq!(lowest_gap(&s(&[(0, 1), (2, 1)])), Some(0));
        assert_eq!(lowest_gap(&s(&[(0, 1)])), None);
    }

    #[test]
    fn verdict_reports_first_discrepancy() {
        let tail = Tail {
            sign: 1,
            min_t_degree: Rational64::from_integer(2),
            coeffs: ints(&[1, 0, 2]),
            residual: LaurentPoly::zero(Var::S),
        };
        let r = TailReport::assemble(
            "x".into(),
            1,
            Rational64::from_integer(2),
            ints(&[1, 0, 1]),
            tail.clone(),
            0,
            0,
        );
        let d = r.verdict.first_discrepancy.unwrap();
        assert_eq!(d.field, "tail_coeff");
        assert_eq!(d.degree, Some(Rational64::from_integer(4)));
        assert_eq!((d.expected.as_str(), d.observed.as_str()), ("1", "2"));

        let r = TailReport::assemble(
            "x".into(),
            1,
            Rational64::from_integer(2),
            ints(&[1, 0, 2]),
            tail,
            3,
            2,
        );
        assert_eq!(r.verdict.first_discrepancy.unwrap().field, "gap");
    }
}
