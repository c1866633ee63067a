use num_bigint::BigInt;
use num_rational::Rational64;
use serde::Serialize;

use super::{extract_tail, lowest_gap, ser_big_vec, ser_rat, unit_window, TailReport, Verdict};
use crate::braid::{full_twist, BraidWord};
use crate::error::{Error, Result};
use crate::invariants::{colored_jones, jones, ColoredJonesResult};
use crate::laurent::{LaurentPoly, Var};

fn parity_sign(k: usize) -> i8 {
    if k.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `B<n>: FT <letters of β'>`, the grammar form of `Δ_n β'`.
fn twisted_subject(beta_prime: &BraidWord) -> String {
    let mut s = format!("B{}: FT", beta_prime.strands());
    for g in beta_prime.letters() {
        s.push_str(&format!(" {g}"));
    }
    s
}

fn check_negatives(beta_prime: &BraidWord) -> Result<()> {
    let (n, l) = (beta_prime.strands(), beta_prime.negatives());
    if l > n {
        return Err(Error::Hypothesis(format!(
            "{l} negative crossings exceed the strand count {n}"
        )));
    }
    Ok(())
}

fn twisted_jones(beta_prime: &BraidWord) -> Result<LaurentPoly> {
    jones(&full_twist(beta_prime.strands())?.then(beta_prime)?)
}

/// Every word of length at most `max_len` on `n` strands, optionally
/// restricted to positive letters and to at most `max_negatives` inverses.
pub fn enumerate_words(
    n: usize,
    max_len: usize,
    positive_only: bool,
    max_negatives: usize,
) -> Vec<BraidWord> {
    let alphabet: Vec<i32> = if n < 2 {
        Vec::new()
    } else if positive_only {
        (1..n as i32).collect()
    } else {
        (1..n as i32).flat_map(|g| [g, -g]).collect()
    };
    let mut out = Vec::new();
    let mut layer: Vec<Vec<i32>> = vec![Vec::new()];
    for len in 0..=max_len {
        for w in &layer {
            out.push(BraidWord::new(n, w.clone()).expect("letters in range"));
        }
        if len == max_len {
            break;
        }
        layer = layer
            .iter()
            .flat_map(|w| {
                alphabet.iter().filter_map(move |&g| {
                    let negs = w.iter().filter(|&&x| x < 0).count() + usize::from(g < 0);
                    (negs <= max_negatives).then(|| {
                        let mut next = w.clone();
                        next.push(g);
                        next
                    })
                })
            })
            .collect();
    }
    out
}

/// Sign, lowest degree, length `n - ℓ + 1` tail and `(1 - t^2)` gap of the
/// Jones polynomial of `Δ_n β'`.
pub fn verify_theorem1(beta_prime: &BraidWord) -> Result<TailReport> {
    check_negatives(beta_prime)?;
    let (n, c, l) = (
        beta_prime.strands(),
        beta_prime.len(),
        beta_prime.negatives(),
    );
    let v = twisted_jones(beta_prime)?;
    let len = n - l + 1;
    let tail = extract_tail(&v, len)?;
    let one_minus_t2 = LaurentPoly::from_terms(Var::S, [(0, 1), (4, -1)]);
    let gap = lowest_gap(&(&one_minus_t2 * &v)).unwrap_or(0);
    let min = Rational64::new(((n - 1) * (n - 1) + c) as i64 - 2 * l as i64, 2);
    Ok(TailReport::assemble(
        twisted_subject(beta_prime),
        parity_sign(n + c + 1),
        min,
        unit_window(len, |i| i % 2 == 0),
        tail,
        n - l,
        gap,
    ))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WritheReport {
    pub subject: String,
    pub strands: usize,
    pub writhe: i64,
    #[serde(serialize_with = "ser_rat")]
    pub min_t_degree: Rational64,
    /// `2 · mindeg V`.
    #[serde(serialize_with = "ser_rat")]
    pub lhs: Rational64,
    /// `w - n + 1`.
    pub rhs: i64,
    pub pass: bool,
}

/// `2 · mindeg V(Δ_n β') = w(Δ_n β') - n + 1`.
pub fn verify_writhe_corollary(beta_prime: &BraidWord) -> Result<WritheReport> {
    check_negatives(beta_prime)?;
    let n = beta_prime.strands();
    let beta = full_twist(n)?.then(beta_prime)?;
    let v = jones(&beta)?;
    let (min, _) = v.t_degree_bounds()?;
    let lhs = min * 2;
    let rhs = beta.writhe() - n as i64 + 1;
    Ok(WritheReport {
        subject: twisted_subject(beta_prime),
        strands: n,
        writhe: beta.writhe(),
        min_t_degree: min,
        lhs,
        rhs,
        pass: lhs == Rational64::from_integer(rhs),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma8Check {
    pub strands: usize,
    pub length: usize,
    pub n_cable: u64,
    /// Indices `j` with `d1(j) <= d2(j+1)`.
    pub failures: Vec<u64>,
    pub pass: bool,
}

fn lemma8_d1(n: i128, c: i128, big_n: i128, j: i128) -> i128 {
    let r = big_n - 2 * j;
    r * r * (n * n + c) - 6
}

fn lemma8_d2(n: i128, c: i128, big_n: i128, j: i128) -> i128 {
    let r = big_n - 2 * j;
    r * r * (n * n + c) + 4 * n * r - 2
}

/// Indices `0 <= j <= N/2 - 1` where `d1(j) > d2(j+1)` fails.
pub fn lemma8_failures(n: usize, c: usize, n_cable: u64) -> Vec<u64> {
    let (nn, cc, bn) = (n as i128, c as i128, n_cable as i128);
    (0..n_cable / 2)
        .filter(|&j| {
            let j = j as i128;
            lemma8_d1(nn, cc, bn, j) <= lemma8_d2(nn, cc, bn, j + 1)
        })
        .collect()
}

/// Every `(n, c, N, j)` in the grid where the inequality fails.
pub fn lemma8_grid(
    strands: impl IntoIterator<Item = usize> + Clone,
    cables: impl IntoIterator<Item = u64> + Clone,
    lengths: impl IntoIterator<Item = usize> + Clone,
) -> Vec<(usize, usize, u64, u64)> {
    let mut out = Vec::new();
    for n in strands {
        for big_n in cables.clone() {
            for c in lengths.clone() {
                for j in lemma8_failures(n, c, big_n) {
                    out.push((n, c, big_n, j));
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem2Report {
    pub subject: String,
    pub n_cable: u64,
    /// Checks on `J_{N+1}`.
    pub unnormalized: TailReport,
    /// Checks on `J'_{N+1}`.
    pub normalized: TailReport,
    pub lemma8: Lemma8Check,
    pub verdict: Verdict,
}

fn check_positive(beta_prime: &BraidWord) -> Result<()> {
    if !beta_prime.is_positive() {
        return Err(Error::Hypothesis(format!(
            "{beta_prime} has negative crossings"
        )));
    }
    Ok(())
}

fn theorem2_from(beta_prime: &BraidWord, cj: &ColoredJonesResult) -> Result<Theorem2Report> {
    let (n, c, big_n) = (beta_prime.strands(), beta_prime.len(), cj.n_cable as usize);
    let subject = twisted_subject(beta_prime);
    let sign = parity_sign(big_n * (n + c + 1));
    let base = ((n - 1) * (n - 1) + c) as i64;
    let window = n * big_n + 1;

    let unnormalized = TailReport::assemble(
        subject.clone(),
        sign,
        Rational64::new(big_n as i64 * (base - 1), 2),
        unit_window(window, |_| true),
        extract_tail(&cj.unnormalized, window)?,
        0,
        0,
    );
    let normalized = TailReport::assemble(
        subject.clone(),
        sign,
        Rational64::new(big_n as i64 * base, 2),
        unit_window(window, |i| i % (big_n + 1) == 0 && i / (big_n + 1) < n),
        extract_tail(&cj.normalized, window)?,
        0,
        0,
    );
    let failures = lemma8_failures(n, c, cj.n_cable);
    let lemma8 = Lemma8Check {
        strands: n,
        length: c,
        n_cable: cj.n_cable,
        pass: failures.is_empty(),
        failures,
    };
    let verdict = if !unnormalized.verdict.pass {
        unnormalized.verdict.clone()
    } else if !normalized.verdict.pass {
        normalized.verdict.clone()
    } else if !lemma8.pass {
        Verdict::fail(super::Discrepancy {
            field: "lemma8".into(),
            degree: None,
            expected: "d1(j) > d2(j+1)".into(),
            observed: format!("fails at j = {:?}", lemma8.failures),
        })
    } else {
        Verdict::pass()
    };
    Ok(Theorem2Report {
        subject,
        n_cable: cj.n_cable,
        unnormalized,
        normalized,
        lemma8,
        verdict,
    })
}

/// Sign, lowest degree and tails of `J_{N+1}` and `J'_{N+1}` for `Δ_n β'`
/// with `β'` positive.
pub fn verify_theorem2(beta_prime: &BraidWord, n_cable: u64) -> Result<Theorem2Report> {
    check_positive(beta_prime)?;
    let cj = colored_jones(beta_prime, n_cable)?;
    theorem2_from(beta_prime, &cj)
}

/// For `N > n - 2`: the coefficients of `J'_{N+1}` below relative degree
/// `nN + 1` are exactly `Σ_{i<n} t^{i(N+1)}`, starting at `N((n-1)^2 + c)/2`.
pub fn verify_tailcor(beta_prime: &BraidWord, n_cable: u64) -> Result<TailReport> {
    check_positive(beta_prime)?;
    let n = beta_prime.strands();
    if n_cable as usize + 2 <= n {
        return Err(Error::Hypothesis(format!(
            "tail corollary needs N > n - 2, got N = {n_cable}, n = {n}"
        )));
    }
    let cj = colored_jones(beta_prime, n_cable)?;
    tailcor_from(beta_prime, &cj)
}

fn tailcor_from(beta_prime: &BraidWord, cj: &ColoredJonesResult) -> Result<TailReport> {
    let (n, c, big_n) = (beta_prime.strands(), beta_prime.len(), cj.n_cable as usize);
    let window = n * big_n + 1;
    Ok(TailReport::assemble(
        twisted_subject(beta_prime),
        parity_sign(big_n * (n + c + 1)),
        Rational64::new((big_n * ((n - 1) * (n - 1) + c)) as i64, 2),
        unit_window(window, |i| i % (big_n + 1) == 0),
        extract_tail(&cj.normalized, window)?,
        0,
        0,
    ))
}

/// Both colored checks from a single colored Jones computation.
pub(crate) fn theorem2_and_tailcor(
    beta_prime: &BraidWord,
    n_cable: u64,
) -> Result<(Theorem2Report, Option<TailReport>)> {
    check_positive(beta_prime)?;
    let cj = colored_jones(beta_prime, n_cable)?;
    let t2 = theorem2_from(beta_prime, &cj)?;
    let tc = if n_cable as usize + 2 > beta_prime.strands() {
        Some(tailcor_from(beta_prime, &cj)?)
    } else {
        None
    };
    Ok((t2, tc))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizationEntry {
    pub n_cable: u64,
    #[serde(serialize_with = "ser_big_vec")]
    pub tail: Vec<BigInt>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilizationReport {
    pub subject: String,
    pub tail_length: usize,
    pub entries: Vec<StabilizationEntry>,
    pub pass: bool,
}

/// First `m` coefficients of `J'_{N+1}` (sign and lowest monomial stripped)
/// for every `N` in `m..=max_cable`; passes when they all agree.
pub fn color_stabilization(
    beta_prime: &BraidWord,
    m: usize,
    max_cable: u64,
) -> Result<StabilizationReport> {
    check_positive(beta_prime)?;
    let mut entries = Vec::new();
    for big_n in m as u64..=max_cable {
        let cj = colored_jones(beta_prime, big_n)?;
        entries.push(StabilizationEntry {
            n_cable: big_n,
            tail: extract_tail(&cj.normalized, m)?.coeffs,
        });
    }
    let pass = entries.windows(2).all(|w| w[0].tail == w[1].tail);
    Ok(StabilizationReport {
        subject: twisted_subject(beta_prime),
        tail_length: m,
        entries,
        pass,
    })
}
