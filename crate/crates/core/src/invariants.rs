//! Link invariants of closed braids built on the Temperley–Lieb engine, plus
//! the closed torus-link formula as an engine-free oracle.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use rayon::prelude::*;
use serde::Serialize;

use crate::braid::{full_twist, BraidWord};
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Var};
use crate::temperley_lieb::{braid_image, check_cap, markov_closure};

/// `(-A^3)^k`.
pub fn kink_factor(k: i64) -> LaurentPoly {
    let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
    LaurentPoly::monomial(Var::A, 3 * k, sign)
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Bracket of the closure of `b` with `extra_positive_kinks` curls added.
pub fn kauffman_bracket(b: &BraidWord, extra_positive_kinks: i64) -> Result<LaurentPoly> {
    if extra_positive_kinks < 0 {
        return Err(Error::invalid("kink count must be nonnegative"));
    }
    let closure = markov_closure(&braid_image(b)?);
    Ok(&closure * &kink_factor(extra_positive_kinks))
}

/// Jones polynomial of the closure, in `s = t^{1/2}`.
pub fn jones(b: &BraidWord) -> Result<LaurentPoly> {
    let bracket = kauffman_bracket(b, 0)?;
    (&bracket * &kink_factor(-b.writhe())).a_to_s()
}

/// Jones polynomial of the torus link `T(p, q)` from its closed binomial-sum
/// formula, in `s = t^{1/2}`. Does not touch the Temperley–Lieb engine.
pub fn torus_jones(p: u64, q: u64) -> Result<LaurentPoly> {
    if p < 1 || q < 1 {
        return Err(Error::invalid("torus link parameters must be positive"));
    }
    let d = p.gcd(&q);
    let (pd, qd) = ((p / d) as i64, (q / d) as i64);
    let di = d as i64;
    // all t-exponents doubled into s-exponents
    let mut sum = LaurentPoly::zero(Var::S);
    for i in 0..=di {
        let c = binomial(d, i as u64);
        let base = pd * (1 + qd * i) * (di - i);
        sum.add_term(2 * (base + qd * (di - i)), c.clone());
        sum.add_term(2 * (base + 1 + qd * i), -c);
    }
    let one_minus_t2 = LaurentPoly::from_terms(Var::S, [(0, 1), (4, -1)]);
    let quotient = sum.divide_exact(&one_minus_t2)?;
    let sign = if d % 2 == 1 { 1 } else { -1 };
    let prefactor = LaurentPoly::monomial(Var::S, ((p - 1) * (q - 1)) as i64, sign);
    Ok(&prefactor * &quotient)
}

/// Coefficients `b_j = (-1)^j C(N-j, j)` of `S_N(x) = Σ_j b_j x^{N-2j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChebyshevExpansion {
    pub n: u64,
    pub coeffs: Vec<BigInt>,
}

impl ChebyshevExpansion {
    /// Dense coefficients of `x^0 ..= x^N`.
    pub fn dense(&self) -> Vec<BigInt> {
        let mut v = vec![BigInt::from(0); self.n as usize + 1];
        for (j, b) in self.coeffs.iter().enumerate() {
            v[self.n as usize - 2 * j] = b.clone();
        }
        v
    }
}

pub fn chebyshev(n: u64) -> ChebyshevExpansion {
    let coeffs = (0..=n / 2)
        .map(|j| {
            let b = binomial(n - j, j);
            if j % 2 == 0 {
                b
            } else {
                -b
            }
        })
        .collect();
    ChebyshevExpansion { n, coeffs }
}

/// `[N] = s^{-(N-1)} + s^{-(N-3)} + ... + s^{N-1}`.
pub fn quantum_integer(n: u64) -> Result<LaurentPoly> {
    if n < 1 {
        return Err(Error::invalid("quantum integer [N] needs N >= 1"));
    }
    let top = n as i64 - 1;
    Ok(LaurentPoly::from_terms(
        Var::S,
        (0..n as i64).map(|k| (-top + 2 * k, 1)),
    ))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredJonesResult {
    /// The cabling parameter `N`; the color is `N + 1`.
    pub n_cable: u64,
    pub unnormalized: LaurentPoly,
    pub normalized: LaurentPoly,
    /// Writhe of the kinked diagram, `n^2 + c`.
    pub writhe_used: i64,
    /// Widest cable evaluated, `nN`.
    pub strands_cabled: usize,
    pub components: usize,
    /// Number of cable brackets summed, `(floor(N/2) + 1)^components`.
    pub summands: usize,
}

impl ColoredJonesResult {
    pub fn color(&self) -> u64 {
        self.n_cable + 1
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "N": self.n_cable,
            "color": self.color(),
            "writhe": self.writhe_used,
            "cabled_strands": self.strands_cabled,
            "components": self.components,
            "summands": self.summands,
            "unnormalized": self.unnormalized.to_json(),
            "normalized": self.normalized.to_json(),
        })
    }
}

/// Full twist on each bundle, bundle `i` having width `widths[i]`.
fn bundle_twists(widths: &[usize]) -> Result<BraidWord> {
    let mut letters = Vec::new();
    let mut off = 0i32;
    for &w in widths {
        if w >= 2 {
            letters.extend(full_twist(w)?.letters().iter().map(|g| g + off));
        }
        off += w as i32;
    }
    BraidWord::new(widths.iter().sum(), letters)
}

/// `(A^2 + A^{-2}) ⟨D^{(r)}⟩` where `D` is the closure of `twisted` with a
/// positive kink on every strand and strand `i` cabled `widths[i]` times.
/// A kink cables to a full twist on its bundle plus one curl per strand. The
/// empty cable contributes `-1`, i.e. `(A^2 + A^{-2}) / δ`.
fn cable_summand(twisted: &BraidWord, widths: &[usize]) -> Result<LaurentPoly> {
    let total: usize = widths.iter().sum();
    if total == 0 {
        return Ok(LaurentPoly::constant(Var::A, -1));
    }
    let word = bundle_twists(widths)?.then(&twisted.cable_with(widths)?)?;
    let bracket = kauffman_bracket(&word, total as i64)?;
    let framing = LaurentPoly::from_terms(Var::A, [(2, 1), (-2, 1)]);
    Ok(&framing * &bracket)
}

/// Unnormalized and normalized colored Jones polynomials of the closure of
/// `Δ_n β'` for a positive `β'`, every component colored by the
/// `(N+1)`-dimensional representation. `S_N` is expanded independently on
/// each closure component, so a link with `m` components sums
/// `(floor(N/2) + 1)^m` blackboard cables; for knots this is the single
/// Chebyshev sum over `r = N - 2j`.
pub fn colored_jones(beta_prime: &BraidWord, n_cable: u64) -> Result<ColoredJonesResult> {
    colored_jones_with_progress(beta_prime, n_cable, &|_| {})
}

pub fn colored_jones_with_progress(
    beta_prime: &BraidWord,
    n_cable: u64,
    progress: &(dyn Fn(&str) + Sync),
) -> Result<ColoredJonesResult> {
    if !beta_prime.is_positive() {
        return Err(Error::Hypothesis(format!(
            "colored Jones requires a positive braid, got {beta_prime}"
        )));
    }
    if n_cable < 1 {
        return Err(Error::invalid("colored Jones needs N >= 1"));
    }
    let n = beta_prime.strands();
    let width = n * n_cable as usize;
    check_cap(width)?;

    let twisted = full_twist(n)?.then(beta_prime)?;
    let ids = twisted.closure_component_ids();
    let components = ids.iter().max().map_or(0, |m| m + 1);
    let cheb = chebyshev(n_cable);
    let per = cheb.coeffs.len();
    let count = per
        .checked_pow(components as u32)
        .ok_or_else(|| Error::invalid("too many cable summands"))?;

    // summand k picks j = digit of k in base `per` for each component
    let summands: Vec<Result<(BigInt, LaurentPoly)>> = (0..count)
        .into_par_iter()
        .map(|k| {
            let mut js = Vec::with_capacity(components);
            let mut rest = k;
            for _ in 0..components {
                js.push(rest % per);
                rest /= per;
            }
            let coeff: BigInt = js.iter().map(|&j| cheb.coeffs[j].clone()).product();
            let widths: Vec<usize> = ids.iter().map(|&c| n_cable as usize - 2 * js[c]).collect();
            let v = cable_summand(&twisted, &widths)?;
            progress(&format!(
                "cable widths {widths:?} on {} strands done",
                widths.iter().sum::<usize>()
            ));
            Ok((coeff, v))
        })
        .collect();
    let mut sum = LaurentPoly::zero(Var::A);
    for s in summands {
        let (b, v) = s?;
        sum += &v.scale(&b);
    }

    let writhe = (n * n) as i64 + beta_prime.len() as i64;
    let nn = n_cable as i64;
    let framing_exp = -(nn * nn + 2 * nn)
        .checked_mul(writhe)
        .ok_or_else(|| Error::invalid("framing exponent overflows"))?;
    let sign_parity = (nn * writhe + nn - 1).rem_euclid(2);
    let prefactor =
        LaurentPoly::monomial(Var::A, framing_exp, if sign_parity == 0 { 1 } else { -1 });
    let unnormalized = (&prefactor * &sum).a_to_s()?;
    let normalized = unnormalized.divide_exact(&quantum_integer(n_cable + 1)?)?;
    Ok(ColoredJonesResult {
        n_cable,
        unnormalized,
        normalized,
        writhe_used: writhe,
        strands_cabled: width,
        components,
        summands: count,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::parse_braid;

    fn s(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(Var::S, terms.iter().copied())
    }

    fn a(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(Var::A, terms.iter().copied())
    }

    #[test]
    fn bracket_examples() {
        assert!(kauffman_bracket(&BraidWord::identity(1).unwrap(), 0)
            .unwrap()
            .is_one());
        assert_eq!(
            kauffman_bracket(&parse_braid("B2: 1").unwrap(), 0).unwrap(),
            a(&[(3, -1)])
        );
        assert_eq!(
            kauffman_bracket(&parse_braid("B2: 1 1 1").unwrap(), 0).unwrap(),
            a(&[(5, -1), (-3, -1), (-7, 1)])
        );
        assert!(kauffman_bracket(&parse_braid("B2: 1").unwrap(), -1).is_err());
    }

    #[test]
    fn framing_factor() {
        let b = parse_braid("B3: 1 -2 1 1").unwrap();
        let base = kauffman_bracket(&b, 0).unwrap();
        for k in 0..4 {
            assert_eq!(
                kauffman_bracket(&b, k).unwrap(),
                &base * &kink_factor(1).pow(k as u32)
            );
        }
    }

    #[test]
    fn jones_examples() {
        let trefoil = jones(&parse_braid("B2: FT 1").unwrap()).unwrap();
        assert_eq!(trefoil, s(&[(2, 1), (6, 1), (8, -1)]));
        assert_eq!(trefoil.to_string(), "t + t^3 - t^4");
        let ex = jones(&parse_braid("B4: FT 2 2 1").unwrap()).unwrap();
        assert_eq!(ex.to_string(), "t^6 + t^8 + t^10 + t^12");
        let hopf = jones(&parse_braid("B2: FT").unwrap()).unwrap();
        assert_eq!(hopf, s(&[(1, -1), (5, -1)]));
        assert!(jones(&BraidWord::identity(1).unwrap()).unwrap().is_one());
    }

    #[test]
    fn torus_examples() {
        assert!(torus_jones(1, 5).unwrap().is_one());
        assert_eq!(torus_jones(2, 3).unwrap(), s(&[(2, 1), (6, 1), (8, -1)]));
        assert_eq!(torus_jones(2, 2).unwrap(), s(&[(1, -1), (5, -1)]));
        assert_eq!(
            torus_jones(3, 3).unwrap(),
            jones(&full_twist(3).unwrap()).unwrap()
        );
        assert!(torus_jones(0, 3).is_err());
    }

    #[test]
    fn torus_two_strand_closed_form() {
        // V(T(2,q)) = (-1)^{q+1} t^{(q-1)/2} (1 - t^3 + (-1)^q (t^{1+q} - t^{2+q})) / (1 - t^2)
        for q in 1..=9i64 {
            let sign = if q % 2 == 0 { -1 } else { 1 };
            let num = s(&[(0, 1), (6, -1), (2 * (1 + q), -sign), (2 * (2 + q), sign)]);
            let v = num.divide_exact(&s(&[(0, 1), (4, -1)])).unwrap();
            let v = &v * &LaurentPoly::monomial(Var::S, q - 1, sign);
            assert_eq!(torus_jones(2, q as u64).unwrap(), v, "q = {q}");
        }
    }

    #[test]
    fn chebyshev_examples() {
        assert_eq!(chebyshev(0).coeffs, vec![BigInt::from(1)]);
        assert_eq!(chebyshev(2).coeffs, vec![BigInt::from(1), BigInt::from(-1)]);
        assert_eq!(
            chebyshev(5).coeffs,
            vec![BigInt::from(1), BigInt::from(-4), BigInt::from(3)]
        );
    }

    #[test]
    fn chebyshev_recurrence() {
        // S_{N+1} = x S_N - S_{N-1}, on dense coefficient vectors
        for n in 1..=20u64 {
            let next = chebyshev(n + 1).dense();
            let cur = chebyshev(n).dense();
            let prev = chebyshev(n - 1).dense();
            let mut rhs = vec![BigInt::from(0); n as usize + 2];
            for (k, c) in cur.iter().enumerate() {
                rhs[k + 1] += c;
            }
            for (k, c) in prev.iter().enumerate() {
                rhs[k] -= c;
            }
            assert_eq!(next, rhs, "N = {n}");
            let e = chebyshev(n);
            assert_eq!(e.coeffs.len() as u64, n / 2 + 1);
            assert_eq!(e.coeffs[0], BigInt::from(1));
        }
    }

    #[test]
    fn quantum_integers() {
        assert!(quantum_integer(1).unwrap().is_one());
        assert_eq!(quantum_integer(2).unwrap(), s(&[(-1, 1), (1, 1)]));
        assert_eq!(
            quantum_integer(4).unwrap(),
            s(&[(-3, 1), (-1, 1), (1, 1), (3, 1)])
        );
        assert!(quantum_integer(0).is_err());
    }

    #[test]
    fn colored_unknot() {
        let unknot = BraidWord::identity(1).unwrap();
        for n in 1..=6 {
            let r = colored_jones(&unknot, n).unwrap();
            assert_eq!(r.unnormalized, quantum_integer(n + 1).unwrap(), "N = {n}");
            assert!(r.normalized.is_one());
        }
    }

    #[test]
    fn colored_trefoil_n1_is_j2() {
        let b = parse_braid("B2: 1").unwrap();
        let r = colored_jones(&b, 1).unwrap();
        let v = s(&[(2, 1), (6, 1), (8, -1)]);
        assert_eq!(r.unnormalized, &quantum_integer(2).unwrap() * &v);
        assert_eq!(r.normalized, v);
        assert_eq!((r.writhe_used, r.strands_cabled), (5, 2));
    }

    #[test]
    fn colored_rejects_bad_input() {
        let neg = parse_braid("B2: -1").unwrap();
        assert!(matches!(colored_jones(&neg, 1), Err(Error::Hypothesis(_))));
        let b = parse_braid("B3: 1").unwrap();
        assert!(matches!(
            colored_jones(&b, 6),
            Err(Error::Resource { strands: 18, .. })
        ));
        assert!(colored_jones(&b, 0).is_err());
    }
}
