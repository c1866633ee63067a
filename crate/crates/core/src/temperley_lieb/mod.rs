//! The Temperley–Lieb algebra `TL_n` over `Z[A, A^{-1}]`, the skein image of
//! braid words, and the Markov closure (the Kauffman bracket of a closed braid).

mod diagram;
mod engine;

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigUint;
use rustc_hash::FxHashMap;

pub use diagram::{TLDiagram, MAX_ENCODABLE_STRANDS};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Var};

pub const DEFAULT_STRAND_CAP: usize = 16;

static STRAND_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_STRAND_CAP);

/// Process-wide strand cap for basis enumeration and braid images.
pub fn strand_cap() -> usize {
    STRAND_CAP.load(Ordering::Relaxed)
}

pub fn set_strand_cap(cap: usize) -> Result<()> {
    if !(1..=MAX_ENCODABLE_STRANDS).contains(&cap) {
        return Err(Error::invalid(format!(
            "strand cap must lie in 1..={MAX_ENCODABLE_STRANDS}"
        )));
    }
    STRAND_CAP.store(cap, Ordering::Relaxed);
    Ok(())
}

pub fn catalan(n: usize) -> BigUint {
    // C_{k+1} = C_k * 2(2k+1) / (k+2)
    let mut c = BigUint::from(1u32);
    for k in 0..n {
        c = c * BigUint::from(2 * (2 * k + 1)) / BigUint::from(k + 2);
    }
    c
}

pub(crate) fn check_cap(strands: usize) -> Result<()> {
    let cap = strand_cap();
    if strands > cap {
        return Err(Error::Resource {
            strands,
            cap,
            catalan: catalan(strands).to_string(),
        });
    }
    Ok(())
}

/// The standard basis of `TL_n` in a fixed order with the identity at index 0.
pub fn enumerate_basis(n: usize) -> Result<Vec<TLDiagram>> {
    if n < 1 {
        return Err(Error::invalid("TL_n needs n >= 1"));
    }
    check_cap(n)?;
    Ok(diagram::all_diagrams(n))
}

/// A sparse `Z[A, A^{-1}]`-linear combination of basis diagrams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TLElement {
    n: usize,
    combo: FxHashMap<TLDiagram, LaurentPoly>,
}

impl TLElement {
    pub fn zero(n: usize) -> Self {
        TLElement {
            n,
            combo: FxHashMap::default(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagram(TLDiagram::identity(n), LaurentPoly::one(Var::A))
    }

    pub fn from_diagram(d: TLDiagram, coeff: LaurentPoly) -> Self {
        let mut el = Self::zero(d.n());
        el.add_term(d, &coeff);
        el
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.combo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.combo.is_empty()
    }

    pub fn coeff(&self, d: &TLDiagram) -> LaurentPoly {
        self.combo
            .get(d)
            .cloned()
            .unwrap_or_else(|| LaurentPoly::zero(Var::A))
    }

    pub fn add_term(&mut self, d: TLDiagram, coeff: &LaurentPoly) {
        assert_eq!(d.n(), self.n, "diagram strand count");
        assert_eq!(coeff.var(), Var::A, "TL coefficients live in A");
        if coeff.is_zero() {
            return;
        }
        let slot = self
            .combo
            .entry(d)
            .or_insert_with(|| LaurentPoly::zero(Var::A));
        *slot += coeff;
        if slot.is_zero() {
            self.combo.remove(&d);
        }
    }

    /// Terms sorted by diagram encoding.
    pub fn terms(&self) -> Vec<(TLDiagram, &LaurentPoly)> {
        let mut v: Vec<_> = self.combo.iter().map(|(d, p)| (*d, p)).collect();
        v.sort_by_key(|(d, _)| *d);
        v
    }

    /// `self` stacked under the diagram `h`.
    pub fn mul_diagram(&self, h: &TLDiagram) -> Result<TLElement> {
        let delta = LaurentPoly::delta();
        let mut out = TLElement::zero(self.n);
        for (d, p) in &self.combo {
            let (prod, loops) = d.compose(h)?;
            out.add_term(prod, &(p * &delta.pow(loops as u32)));
        }
        Ok(out)
    }

    /// `self` followed by the skein image of `b`.
    pub fn then_braid(&self, b: &BraidWord) -> Result<TLElement> {
        if b.strands() != self.n {
            return Err(Error::invalid(format!(
                "braid on {} strands applied to TL_{}",
                b.strands(),
                self.n
            )));
        }
        check_cap(self.n)?;
        let start: Vec<_> = self.combo.iter().map(|(d, p)| (*d, p.clone())).collect();
        let mut out = TLElement::zero(self.n);
        for (d, p) in engine::apply_letters(&start, b.letters()) {
            out.combo.insert(d, p);
        }
        Ok(out)
    }
}

/// Image of `b` under `σ_i -> A·1 + A^{-1} e_i`, `σ_i^{-1} -> A^{-1}·1 + A e_i`.
pub fn braid_image(b: &BraidWord) -> Result<TLElement> {
    check_cap(b.strands())?;
    TLElement::identity(b.strands()).then_braid(b)
}

/// `Σ_d coeff(d) · δ^{loops(closure d) - 1}`, normalized so a single loop is 1.
pub fn markov_closure(el: &TLElement) -> LaurentPoly {
    let mut by_loops: BTreeMap<usize, LaurentPoly> = BTreeMap::new();
    for (d, p) in &el.combo {
        *by_loops
            .entry(d.closure_loops())
            .or_insert_with(|| LaurentPoly::zero(Var::A)) += p;
    }
    let delta = LaurentPoly::delta();
    let mut total = LaurentPoly::zero(Var::A);
    for (loops, p) in by_loops {
        total += &(&p * &delta.pow(loops as u32 - 1));
    }
    total
}
