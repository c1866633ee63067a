//! Sparse Laurent polynomials in one formal variable with arbitrary-precision
//! integer coefficients.
//!
//! Bracket-side values live in `A`. Jones-side values live in `s = t^{1/2} = A^{-2}`
//! so that half-integer powers of `t` stay integral; they render as powers of `t`.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    A,
    /// `s = t^{1/2}`.
    S,
    T,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Var::A => "A",
            Var::S => "s",
            Var::T => "t",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    var: Var,
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero(var: Var) -> Self {
        LaurentPoly {
            var,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(var: Var) -> Self {
        Self::monomial(var, 0, 1)
    }

    pub fn constant(var: Var, c: impl Into<BigInt>) -> Self {
        Self::monomial(var, 0, c)
    }

    pub fn monomial(var: Var, exp: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { var, terms }
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents are summed.
    pub fn from_terms<C: Into<BigInt>>(
        var: Var,
        terms: impl IntoIterator<Item = (i64, C)>,
    ) -> Self {
        let mut p = Self::zero(var);
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// `δ = -A^2 - A^{-2}`, the value of a trivial loop.
    pub fn delta() -> Self {
        Self::from_terms(Var::A, [(-2, -1), (2, -1)])
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn degree_bounds(&self) -> Result<(i64, i64)> {
        match (self.min_degree(), self.max_degree()) {
            (Some(lo), Some(hi)) => Ok((lo, hi)),
            _ => Err(Error::UndefinedDegree),
        }
    }

    /// Degree bounds measured in powers of `t`. Only meaningful for `s` and `t`.
    pub fn t_degree_bounds(&self) -> Result<(Rational64, Rational64)> {
        let (lo, hi) = self.degree_bounds()?;
        Ok((self.t_exponent(lo), self.t_exponent(hi)))
    }

    pub(crate) fn t_exponent(&self, exp: i64) -> Rational64 {
        match self.var {
            Var::S => Rational64::new(exp, 2),
            _ => Rational64::from_integer(exp),
        }
    }

    pub fn lowest_coeff(&self) -> Option<&BigInt> {
        self.terms.values().next()
    }

    pub(crate) fn add_term(&mut self, exp: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_var(&self, other: &Self) -> Result<()> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(Error::VariableMismatch(self.var, other.var))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_var(other)?;
        let mut out = Self::zero(self.var);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.var);
        }
        LaurentPoly {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// Multiplies by `var^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentPoly {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.var);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient in the Laurent ring; fails when `den` does not divide `self`.
    pub fn divide_exact(&self, den: &Self) -> Result<Self> {
        self.check_var(den)?;
        let (dlo, dhi) = den.degree_bounds()?;
        let dlead = den.terms[&dlo].clone();
        let not_divisible = || Error::NotDivisible {
            num: self.to_string(),
            den: den.to_string(),
        };
        let mut rem = self.clone();
        let mut quot = Self::zero(self.var);
        while let Some((rlo, rhi)) = rem.min_degree().zip(rem.max_degree()) {
            if rhi - rlo < dhi - dlo {
                return Err(not_divisible());
            }
            let (q, r) = rem.terms[&rlo].div_rem(&dlead);
            if !r.is_zero() {
                return Err(not_divisible());
            }
            let e = rlo - dlo;
            for (de, dc) in &den.terms {
                rem.add_term(de + e, -(dc * &q));
            }
            quot.add_term(e, q);
        }
        Ok(quot)
    }

    /// Change of variable `var^e -> target^{e * multiplier}`.
    pub fn substitute_power(&self, target: Var, multiplier: Rational64) -> Result<Self> {
        if multiplier.is_zero() {
            return Err(Error::invalid("substitution multiplier must be nonzero"));
        }
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let ne = multiplier * Rational64::from_integer(*e);
            if !ne.is_integer() {
                return Err(Error::ParityViolation {
                    exponent: *e,
                    multiplier: multiplier.to_string(),
                });
            }
            out.add_term(ne.to_integer(), c.clone());
        }
        Ok(out)
    }

    /// Maps a polynomial in `A` to `s = A^{-2}`.
    pub fn a_to_s(&self) -> Result<Self> {
        debug_assert_eq!(self.var, Var::A);
        self.substitute_power(Var::S, Rational64::new(-1, 2))
    }
}

impl Default for LaurentPoly {
    fn default() -> Self {
        Self::zero(Var::A)
    }
}

// Operator forms panic on a variable mismatch; use the `try_*` methods on untrusted input.

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("variable mismatch in add")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).expect("variable mismatch in sub")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("variable mismatch in mul")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            var: self.var,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        assert_eq!(self.var, rhs.var, "variable mismatch in add_assign");
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

fn fmt_exponent(var: Var, exp: i64) -> Option<String> {
    let (name, r) = match var {
        Var::A => ("A", Rational64::from_integer(exp)),
        Var::S | Var::T => (
            "t",
            if var == Var::S {
                Rational64::new(exp, 2)
            } else {
                Rational64::from_integer(exp)
            },
        ),
    };
    if r.is_zero() {
        None
    } else if r.is_one() {
        Some(name.to_string())
    } else if r.is_integer() {
        Some(format!("{name}^{}", r.to_integer()))
    } else {
        Some(format!("{name}^({}/{})", r.numer(), r.denom()))
    }
}

/// Ascending exponents with explicit signs, e.g. `-A^-3 + A^5` or `-t^(1/2) - t^(5/2)`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            match fmt_exponent(self.var, *e) {
                None => write!(f, "{abs}")?,
                Some(m) if abs.is_one() => f.write_str(&m)?,
                Some(m) => write!(f, "{abs}*{m}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly[{}]({})", self.var, self)
    }
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    var: String,
    terms: Vec<(i64, i64, serde_json::Value)>,
}

fn coeff_to_json(c: &BigInt) -> serde_json::Value {
    match c.to_i64() {
        Some(v) => serde_json::Value::from(v),
        None => serde_json::Value::from(c.to_string()),
    }
}

fn coeff_from_json(v: &serde_json::Value) -> std::result::Result<BigInt, String> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .ok_or_else(|| format!("non-integer coefficient {n}")),
        serde_json::Value::String(s) => s.parse().map_err(|_| format!("bad coefficient {s:?}")),
        other => Err(format!("bad coefficient {other}")),
    }
}

impl LaurentPoly {
    /// `{"var": ..., "terms": [[exp_num, exp_den, coeff], ...]}`; `s` renders as `t`.
    pub fn to_json(&self) -> serde_json::Value {
        let var = match self.var {
            Var::A => "A",
            Var::S | Var::T => "t",
        };
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let r = self.t_exponent(*e);
                (*r.numer(), *r.denom(), coeff_to_json(c))
            })
            .collect();
        serde_json::to_value(PolyJson {
            var: var.to_string(),
            terms,
        })
        .expect("polynomial json")
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

/// `"t"` deserializes into `s`-storage so half-integer exponents survive.
impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = PolyJson::deserialize(deserializer)?;
        let (var, scale) = match raw.var.as_str() {
            "A" => (Var::A, 1),
            "t" => (Var::S, 2),
            "s" => (Var::S, 1),
            other => return Err(de::Error::custom(format!("unknown variable {other:?}"))),
        };
        let mut p = LaurentPoly::zero(var);
        for (num, den, c) in raw.terms {
            if den <= 0 {
                return Err(de::Error::custom("exponent denominator must be positive"));
            }
            let e = Rational64::new(num, den) * Rational64::from_integer(scale);
            if !e.is_integer() {
                return Err(de::Error::custom(format!(
                    "exponent {num}/{den} not representable"
                )));
            }
            p.add_term(
                e.to_integer(),
                coeff_from_json(&c).map_err(de::Error::custom)?,
            );
        }
        Ok(p)
    }
}
