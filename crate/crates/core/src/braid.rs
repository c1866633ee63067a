//! Braid words: parsing, writhe, induced permutations, full twists and
//! blackboard cabling.

use std::fmt;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A word in the Artin generators of `B_n`. Letter `g > 0` is `σ_g`, `g < 0` is `σ_{|g|}^{-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidStats {
    pub writhe: i64,
    pub length: usize,
    pub negatives: usize,
    /// `permutation[i]` is the top position reached by the strand starting at bottom position `i`.
    pub permutation: Vec<usize>,
    pub closure_components: usize,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands < 1 {
            return Err(Error::invalid("a braid needs at least one strand"));
        }
        if let Some(&g) = letters
            .iter()
            .find(|&&g| g == 0 || g.unsigned_abs() as usize >= strands)
        {
            return Err(Error::invalid(format!(
                "generator {g} out of range for {strands} strands"
            )));
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn identity(strands: usize) -> Result<Self> {
        Self::new(strands, Vec::new())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|&g| g > 0)
    }

    pub fn writhe(&self) -> i64 {
        self.letters.iter().map(|&g| g.signum() as i64).sum()
    }

    pub fn negatives(&self) -> usize {
        self.letters.iter().filter(|&&g| g < 0).count()
    }

    /// `self` followed by `other` (reading bottom to top).
    pub fn then(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::invalid(format!(
                "cannot concatenate braids on {} and {} strands",
                self.strands, other.strands
            )));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord {
            strands: self.strands,
            letters,
        })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|g| -g).collect(),
        }
    }

    pub fn permutation(&self) -> Vec<usize> {
        // at[p] = strand currently at position p
        let mut at: Vec<usize> = (0..self.strands).collect();
        for &g in &self.letters {
            let i = g.unsigned_abs() as usize - 1;
            at.swap(i, i + 1);
        }
        let mut perm = vec![0; self.strands];
        for (pos, &strand) in at.iter().enumerate() {
            perm[strand] = pos;
        }
        perm
    }

    pub fn closure_components(&self) -> usize {
        count_cycles(&self.permutation())
    }

    pub fn stats(&self) -> BraidStats {
        let permutation = self.permutation();
        BraidStats {
            writhe: self.writhe(),
            length: self.len(),
            negatives: self.negatives(),
            closure_components: count_cycles(&permutation),
            permutation,
        }
    }

    /// Component index of each bottom position in the closure, numbered in
    /// order of first appearance.
    pub fn closure_component_ids(&self) -> Vec<usize> {
        let perm = self.permutation();
        let mut ids = vec![usize::MAX; self.strands];
        let mut next = 0;
        for start in 0..self.strands {
            if ids[start] != usize::MAX {
                continue;
            }
            let mut i = start;
            while ids[i] == usize::MAX {
                ids[i] = next;
                i = perm[i];
            }
            next += 1;
        }
        ids
    }

    /// Blackboard `r`-cable: every strand becomes `r` parallel strands and each
    /// crossing becomes a bundle crossing of `r^2` letters of the same sign.
    pub fn cable(&self, r: usize) -> Result<BraidWord> {
        if r < 1 {
            return Err(Error::invalid("cable width must be at least 1"));
        }
        self.cable_with(&vec![r; self.strands])
    }

    /// Blackboard cable with width `widths[i]` on the strand starting at bottom
    /// position `i`. Widths must be constant along closure components; width 0
    /// deletes the strand.
    pub fn cable_with(&self, widths: &[usize]) -> Result<BraidWord> {
        if widths.len() != self.strands {
            return Err(Error::invalid(format!(
                "need {} cable widths, got {}",
                self.strands,
                widths.len()
            )));
        }
        let perm = self.permutation();
        if (0..self.strands).any(|i| widths[perm[i]] != widths[i]) {
            return Err(Error::invalid(
                "cable widths must agree along closure components",
            ));
        }
        let total: usize = widths.iter().sum();
        if total == 0 {
            return Err(Error::invalid("cable of total width 0"));
        }
        // width of the bundle currently at each position
        let mut at: Vec<i32> = widths.iter().map(|&w| w as i32).collect();
        let mut letters = Vec::new();
        for &g in &self.letters {
            let i = g.unsigned_abs() as usize - 1;
            let sign = g.signum();
            let base: i32 = at[..i].iter().sum();
            let (p, q) = (at[i], at[i + 1]);
            // the right bundle slides left through the left one, strand by strand
            for a in 1..=q {
                for k in (base + a..=base + a + p - 1).rev() {
                    letters.push(sign * k);
                }
            }
            at.swap(i, i + 1);
        }
        BraidWord::new(total, letters)
    }
}

fn count_cycles(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut cycles = 0;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
        }
    }
    cycles
}

/// The positive full twist `Δ_n = (σ_1 σ_2 ... σ_{n-1})^n`.
pub fn full_twist(n: usize) -> Result<BraidWord> {
    if n < 1 {
        return Err(Error::invalid("full twist needs at least one strand"));
    }
    let row: Vec<i32> = (1..n as i32).collect();
    let letters = row.iter().copied().cycle().take(n * (n - 1)).collect();
    BraidWord::new(n, letters)
}

/// Deterministic random word of length `c` on `n` strands with exactly
/// `negatives` inverse letters at uniformly random positions.
pub fn sample_braid(n: usize, c: usize, negatives: usize, seed: u64) -> Result<BraidWord> {
    if negatives > c {
        return Err(Error::invalid(format!(
            "cannot place {negatives} negative letters in a word of length {c}"
        )));
    }
    if n < 2 && c > 0 {
        return Err(Error::invalid("a nonempty word needs at least two strands"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut letters: Vec<i32> = (0..c).map(|_| rng.gen_range(1..n as i32)).collect();
    for idx in sample(&mut rng, c, negatives) {
        letters[idx] = -letters[idx];
    }
    BraidWord::new(n, letters)
}

/// Renders in the input grammar with the full twist expanded.
impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}:", self.strands)?;
        for g in &self.letters {
            write!(f, " {g}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for BraidWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_braid(s)
    }
}

/// Parses `B<n>: tok tok ...` with `tok` a signed generator index, `FT`
/// (full twist on all strands) or `FT(<m>)` (full twist on the first `m`).
/// `#` starts a comment. Error positions are 1-based columns.
pub fn parse_braid(text: &str) -> Result<BraidWord> {
    let body = match text.find('#') {
        Some(i) => &text[..i],
        None => text,
    };
    let err = |pos: usize, msg: String| Error::Parse { pos: pos + 1, msg };
    let lead = body.len() - body.trim_start().len();
    let rest = &body[lead..];
    let Some(after_b) = rest.strip_prefix('B') else {
        return Err(err(lead, "expected `B<n>:`".into()));
    };
    let Some(colon) = after_b.find(':') else {
        return Err(err(lead, "missing `:` after strand count".into()));
    };
    let n_text = &after_b[..colon];
    let n: usize = n_text
        .trim()
        .parse()
        .map_err(|_| err(lead + 1, format!("bad strand count {n_text:?}")))?;
    if n < 1 {
        return Err(err(lead + 1, "strand count must be at least 1".into()));
    }
    let mut letters = Vec::new();
    let toks_start = lead + 1 + colon + 1;
    let toks = &body[toks_start..];
    let mut offset = 0;
    for tok in toks.split_whitespace() {
        let rel = toks[offset..].find(tok).expect("token within text") + offset;
        offset = rel + tok.len();
        let pos = toks_start + rel;
        if let Some(arg) = tok.strip_prefix("FT") {
            let m = if arg.is_empty() {
                n
            } else {
                arg.strip_prefix('(')
                    .and_then(|a| a.strip_suffix(')'))
                    .and_then(|a| a.parse::<usize>().ok())
                    .ok_or_else(|| err(pos, format!("malformed full twist {tok:?}")))?
            };
            if m < 1 || m > n {
                return Err(err(pos, format!("full twist on {m} strands in B{n}")));
            }
            letters.extend(full_twist(m)?.letters);
            continue;
        }
        let g: i32 = tok
            .parse()
            .map_err(|_| err(pos, format!("unexpected token {tok:?}")))?;
        if g == 0 || g.unsigned_abs() as usize >= n {
            return Err(err(pos, format!("generator {g} out of range for B{n}")));
        }
        letters.push(g);
    }
    BraidWord::new(n, letters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_examples() {
        let b = parse_braid("B2: 1 1 1").unwrap();
        assert_eq!(b.letters(), &[1, 1, 1]);
        assert_eq!(b.strands(), 2);

        let b = parse_braid("B4: FT 2 2 1").unwrap();
        let mut expected = full_twist(4).unwrap().letters().to_vec();
        expected.extend([2, 2, 1]);
        assert_eq!(b.letters(), expected.as_slice());

        let e = parse_braid("B3: 4").unwrap_err();
        assert!(matches!(e, Error::Parse { pos: 5, .. }), "{e:?}");
    }

    #[test]
    fn parse_edge_cases() {
        assert_eq!(parse_braid("B1:").unwrap().len(), 0);
        assert_eq!(
            parse_braid("  B3: -1 2 # trailing comment 9")
                .unwrap()
                .letters(),
            &[-1, 2]
        );
        assert_eq!(parse_braid("B4: FT(2) 3").unwrap().letters(), &[1, 1, 3]);
        assert!(parse_braid("B0:").is_err());
        assert!(parse_braid("B3 1 2").is_err());
        assert!(parse_braid("C3: 1").is_err());
        assert!(parse_braid("B3: 0").is_err());
        assert!(parse_braid("B3: FT(4)").is_err());
        assert!(parse_braid("B3: FT(x)").is_err());
        assert!(parse_braid("B3: 1 x").is_err());
    }

    #[test]
    fn full_twist_small() {
        assert!(full_twist(1).unwrap().is_empty());
        assert_eq!(full_twist(2).unwrap().letters(), &[1, 1]);
        let d4 = full_twist(4).unwrap();
        assert_eq!(d4.len(), 12);
        assert_eq!(d4.permutation(), vec![0, 1, 2, 3]);
        assert!(full_twist(0).is_err());
    }

    #[test]
    fn full_twist_is_pure() {
        for n in 1..=12 {
            let d = full_twist(n).unwrap();
            assert_eq!(d.permutation(), (0..n).collect::<Vec<_>>());
            assert_eq!(d.len(), n * (n - 1));
        }
    }

    #[test]
    fn stats_examples() {
        let trefoil = parse_braid("B2: FT 1").unwrap().stats();
        assert_eq!((trefoil.writhe, trefoil.closure_components), (3, 1));

        let s = parse_braid("B4: FT 2 2 1").unwrap().stats();
        assert_eq!(s.writhe, 15);
        assert_eq!(s.length, 15);
        assert_eq!(s.negatives, 0);
        // Δ4 is pure, so the permutation is that of σ2²σ1 = σ1: a transposition
        assert_eq!(s.closure_components, 3);

        let t33 = full_twist(3).unwrap().stats();
        assert_eq!((t33.writhe, t33.closure_components), (6, 3));
    }

    #[test]
    fn cable_examples() {
        let b = parse_braid("B3: 1 -2 2 1").unwrap();
        assert_eq!(b.cable(1).unwrap(), b);
        let c = parse_braid("B2: 1").unwrap().cable(2).unwrap();
        assert_eq!(c.strands(), 4);
        assert_eq!(c.letters(), &[2, 1, 3, 2]);
        assert_eq!(c.closure_components(), 2);
        assert!(b.cable(0).is_err());
        // Hopf link, one component doubled, the other deleted or kept
        let hopf = parse_braid("B2: 1 1").unwrap();
        assert_eq!(hopf.closure_component_ids(), vec![0, 1]);
        assert_eq!(hopf.cable_with(&[2, 0]).unwrap().len(), 0);
        let mixed = hopf.cable_with(&[2, 1]).unwrap();
        assert_eq!(
            (mixed.strands(), mixed.len(), mixed.closure_components()),
            (3, 4, 3)
        );
        assert!(parse_braid("B2: 1").unwrap().cable_with(&[2, 1]).is_err());
        assert!(hopf.cable_with(&[0, 0]).is_err());
    }

    #[test]
    fn sample_examples() {
        assert!(sample_braid(2, 0, 0, 9).unwrap().is_empty());
        let b = sample_braid(4, 3, 0, 7).unwrap();
        assert_eq!((b.len(), b.negatives(), b.strands()), (3, 0, 4));
        let b = sample_braid(3, 5, 3, 1).unwrap();
        assert_eq!((b.len(), b.negatives()), (5, 3));
        assert_eq!(b, sample_braid(3, 5, 3, 1).unwrap());
        assert!(sample_braid(3, 2, 3, 1).is_err());
    }

    fn arb_braid() -> impl Strategy<Value = BraidWord> {
        (2usize..6).prop_flat_map(|n| {
            let gen = (1..n as i32, any::<bool>()).prop_map(|(g, neg)| if neg { -g } else { g });
            prop::collection::vec(gen, 0..12).prop_map(move |l| BraidWord::new(n, l).unwrap())
        })
    }

    proptest! {
        #[test]
        fn cable_scales_writhe_and_components(b in arb_braid(), r in 1usize..4) {
            let c = b.cable(r).unwrap();
            prop_assert_eq!(c.writhe(), (r * r) as i64 * b.writhe());
            prop_assert_eq!(c.closure_components(), r * b.closure_components());
            prop_assert_eq!(c.len(), r * r * b.len());
            // bundle-wise image of the permutation
            let p = b.permutation();
            let cp = c.permutation();
            for s in 0..b.strands() {
                for k in 0..r {
                    prop_assert_eq!(cp[s * r + k], p[s] * r + k);
                }
            }
        }

        #[test]
        fn render_parse_roundtrip(b in arb_braid()) {
            prop_assert_eq!(parse_braid(&b.to_string()).unwrap(), b);
        }
    }
}
