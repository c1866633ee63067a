//! Sparse propagation of braid letters through `TL_n`.
//!
//! Coefficients are dense Laurent windows. The hot path runs over `i128` with
//! checked arithmetic and is replayed over `BigInt` if anything overflows.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use rustc_hash::FxHashMap;

use super::diagram::TLDiagram;
use crate::laurent::{LaurentPoly, Var};

pub(crate) trait Scalar: Clone + Send + Sync {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    /// `self += sign * other`; false on overflow.
    fn add_signed(&mut self, other: &Self, negate: bool) -> bool;
    fn from_big(c: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    #[inline]
    fn add_signed(&mut self, other: &Self, negate: bool) -> bool {
        let r = if negate {
            self.checked_sub(*other)
        } else {
            self.checked_add(*other)
        };
        match r {
            Some(v) => {
                *self = v;
                true
            }
            None => false,
        }
    }
    fn from_big(c: &BigInt) -> Option<Self> {
        c.to_i128()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_signed(&mut self, other: &Self, negate: bool) -> bool {
        if negate {
            *self -= other;
        } else {
            *self += other;
        }
        true
    }
    fn from_big(c: &BigInt) -> Option<Self> {
        Some(c.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

/// Coefficients of `A^lo, A^{lo+1}, ...`.
#[derive(Clone, Debug)]
pub(crate) struct Dense<T> {
    lo: i64,
    c: Vec<T>,
}

impl<T: Scalar> Dense<T> {
    fn empty() -> Self {
        Dense {
            lo: 0,
            c: Vec::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(Scalar::is_zero)
    }

    /// `self += ±A^shift · src`.
    fn add_shifted(&mut self, src: &Dense<T>, shift: i64, negate: bool) -> bool {
        if src.c.is_empty() {
            return true;
        }
        let slo = src.lo + shift;
        let shi = slo + src.c.len() as i64;
        if self.c.is_empty() {
            self.lo = slo;
        }
        if slo < self.lo {
            let grow = (self.lo - slo) as usize;
            let mut v = vec![T::zero(); grow];
            v.append(&mut self.c);
            self.c = v;
            self.lo = slo;
        }
        let hi = self.lo + self.c.len() as i64;
        if shi > hi {
            self.c.resize(self.c.len() + (shi - hi) as usize, T::zero());
        }
        let off = (slo - self.lo) as usize;
        for (dst, s) in self.c[off..].iter_mut().zip(&src.c) {
            if !s.is_zero() && !dst.add_signed(s, negate) {
                return false;
            }
        }
        true
    }

    fn from_poly(p: &LaurentPoly) -> Option<Self> {
        let Some((lo, hi)) = p.min_degree().zip(p.max_degree()) else {
            return Some(Self::empty());
        };
        let mut c = vec![T::zero(); (hi - lo + 1) as usize];
        for (e, v) in p.terms() {
            c[(e - lo) as usize] = T::from_big(v)?;
        }
        Some(Dense { lo, c })
    }

    fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            Var::A,
            self.c
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(k, v)| (self.lo + k as i64, v.to_big())),
        )
    }
}

pub(crate) type Combo<T> = FxHashMap<TLDiagram, Dense<T>>;

/// Right-multiplies by each letter's skein image:
/// `σ_i -> A + A^{-1} e_i`, `σ_i^{-1} -> A^{-1} + A e_i`.
fn propagate<T: Scalar>(mut combo: Combo<T>, letters: &[i32]) -> Option<Combo<T>> {
    for &g in letters {
        let i = g.unsigned_abs() as usize;
        let eps: i64 = if g > 0 { 1 } else { -1 };
        let mut next: Combo<T> =
            FxHashMap::with_capacity_and_hasher(combo.len() * 2, Default::default());
        for (d, p) in &combo {
            if !next
                .entry(*d)
                .or_insert_with(Dense::empty)
                .add_shifted(p, eps, false)
            {
                return None;
            }
            let (d2, looped) = d.mul_generator(i);
            let slot = next.entry(d2).or_insert_with(Dense::empty);
            let ok = if looped {
                // A^{-eps} δ p = -A^{2-eps} p - A^{-2-eps} p
                slot.add_shifted(p, 2 - eps, true) && slot.add_shifted(p, -2 - eps, true)
            } else {
                slot.add_shifted(p, -eps, false)
            };
            if !ok {
                return None;
            }
        }
        next.retain(|_, p| !p.is_zero());
        combo = next;
    }
    Some(combo)
}

fn run<T: Scalar>(
    start: &[(TLDiagram, LaurentPoly)],
    letters: &[i32],
) -> Option<Vec<(TLDiagram, LaurentPoly)>> {
    let mut combo: Combo<T> = FxHashMap::default();
    for (d, p) in start {
        combo.insert(*d, Dense::from_poly(p)?);
    }
    let out = propagate(combo, letters)?;
    Some(out.into_iter().map(|(d, p)| (d, p.to_poly())).collect())
}

pub(crate) fn apply_letters(
    start: &[(TLDiagram, LaurentPoly)],
    letters: &[i32],
) -> Vec<(TLDiagram, LaurentPoly)> {
    run::<i128>(start, letters)
        .or_else(|| run::<BigInt>(start, letters))
        .expect("big integer propagation cannot overflow")
}
