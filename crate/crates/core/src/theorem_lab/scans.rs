use serde::Serialize;

use crate::braid::{full_twist, BraidWord};
use crate::error::{Error, Result};
use crate::invariants::kauffman_bracket;
use crate::laurent::LaurentPoly;
use crate::temperley_lieb::{braid_image, enumerate_basis, markov_closure};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaxpowerRow {
    pub index: usize,
    pub diagram: String,
    /// `None` when the closure bracket vanishes.
    pub max_degree: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaxpowerScan {
    pub n: usize,
    /// `n^2 - 3n - 4`.
    pub bound: i64,
    pub rows: Vec<MaxpowerRow>,
    /// Top degree of the bracket of the closed full twist, expected `n^2 + n - 2`.
    pub identity_top_degree: i64,
    pub identity_expected: i64,
    pub pass: bool,
}

/// Top `A`-degree of `⟨closure(Δ_n h_i)⟩` over the whole standard basis.
pub fn scan_maxpower(n: usize) -> Result<MaxpowerScan> {
    if n < 2 {
        return Err(Error::invalid("maxpower scan needs n >= 2"));
    }
    let basis = enumerate_basis(n)?;
    let twist = braid_image(&full_twist(n)?)?;
    let ni = n as i64;
    let bound = ni * ni - 3 * ni - 4;
    let mut rows = Vec::with_capacity(basis.len());
    for (index, h) in basis.iter().enumerate() {
        let bracket = markov_closure(&twist.mul_diagram(h)?);
        rows.push(MaxpowerRow {
            index,
            diagram: h.to_string(),
            max_degree: bracket.max_degree(),
        });
    }
    let identity_top_degree = rows[0]
        .max_degree
        .expect("closed full twist has nonzero bracket");
    let identity_expected = ni * ni + ni - 2;
    let pass = identity_top_degree == identity_expected
        && rows[1..]
            .iter()
            .all(|r| r.max_degree.is_none_or(|d| d <= bound));
    Ok(MaxpowerScan {
        n,
        bound,
        rows,
        identity_top_degree,
        identity_expected,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CablingReport {
    pub n: usize,
    pub r: usize,
    pub strands: usize,
    pub cabled_word: String,
    /// `(-A^3)^{nr} ⟨closure(cable(Δ_n, r) · Δ_r^{⊗n})⟩`.
    pub cabled: LaurentPoly,
    /// `(-A^3)^{nr} ⟨closure(Δ_{nr})⟩`.
    pub direct: LaurentPoly,
    pub pass: bool,
}

/// Full twists on each of the `n` bundles of `r` strands.
fn bundle_twists(n: usize, r: usize) -> Result<BraidWord> {
    let local = full_twist(r)?;
    let mut letters = Vec::with_capacity(n * local.len());
    for bundle in 0..n {
        let off = (bundle * r) as i32;
        letters.extend(local.letters().iter().map(|g| g + off));
    }
    BraidWord::new(n * r, letters)
}

/// The r-cable of the kinked closed full twist on `n` strands against the
/// kinked closed full twist on `nr` strands. Each cabled kink is a full twist
/// on its bundle plus `r` curls, so both sides carry `nr` curls.
pub fn verify_cabling_lemma(n: usize, r: usize) -> Result<CablingReport> {
    if n < 1 || r < 1 {
        return Err(Error::invalid("cabling check needs n, r >= 1"));
    }
    let curls = (n * r) as i64;
    let cabled_word = full_twist(n)?.cable(r)?.then(&bundle_twists(n, r)?)?;
    let direct_word = full_twist(n * r)?;
    let cabled = kauffman_bracket(&cabled_word, curls)?;
    let direct = kauffman_bracket(&direct_word, curls)?;
    Ok(CablingReport {
        n,
        r,
        strands: n * r,
        cabled_word: cabled_word.to_string(),
        pass: cabled == direct && cabled_word.writhe() == direct_word.writhe(),
        cabled,
        direct,
    })
}
