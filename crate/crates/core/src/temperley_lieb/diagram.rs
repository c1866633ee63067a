use std::fmt;

use crate::error::{Error, Result};

/// Hard limit of the fixed-width encoding.
pub const MAX_ENCODABLE_STRANDS: usize = 32;

/// A standard basis element of `TL_n`: a noncrossing perfect matching of `2n`
/// boundary points.
///
/// Points are numbered counterclockwise from 0: bottom positions left to right
/// are `0..n`, top positions right to left are `n..2n`, so top position `j`
/// is point `2n - 1 - j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TLDiagram {
    n: u8,
    pairs: [u8; 2 * MAX_ENCODABLE_STRANDS],
}

impl TLDiagram {
    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_ENCODABLE_STRANDS);
        let mut pairs = [0u8; 2 * MAX_ENCODABLE_STRANDS];
        for j in 0..n {
            pairs[j] = (2 * n - 1 - j) as u8;
            pairs[2 * n - 1 - j] = j as u8;
        }
        TLDiagram { n: n as u8, pairs }
    }

    /// The generator `e_i`, `1 <= i < n`.
    pub fn generator(n: usize, i: usize) -> Result<Self> {
        if i < 1 || i >= n {
            return Err(Error::invalid(format!("e_{i} does not exist in TL_{n}")));
        }
        let mut d = Self::identity(n);
        let (b0, b1) = (i - 1, i);
        let (t0, t1) = (d.top(i - 1), d.top(i));
        d.link(b0, b1);
        d.link(t0, t1);
        Ok(d)
    }

    /// Validates an involution array over `2n` points.
    pub fn from_pairing(n: usize, pairing: &[usize]) -> Result<Self> {
        if n > MAX_ENCODABLE_STRANDS || pairing.len() != 2 * n {
            return Err(Error::invalid(format!(
                "pairing of length {} does not describe a diagram on {n} strands",
                pairing.len()
            )));
        }
        for (p, &q) in pairing.iter().enumerate() {
            if q >= 2 * n || q == p || pairing[q] != p {
                return Err(Error::invalid(format!(
                    "pairing is not a perfect matching at point {p}"
                )));
            }
        }
        let mut pairs = [0u8; 2 * MAX_ENCODABLE_STRANDS];
        for (p, &q) in pairing.iter().enumerate() {
            pairs[p] = q as u8;
        }
        let d = TLDiagram { n: n as u8, pairs };
        if !d.is_noncrossing() {
            return Err(Error::invalid("pairing has crossing chords"));
        }
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn partner(&self, p: usize) -> usize {
        self.pairs[p] as usize
    }

    pub fn pairing(&self) -> Vec<usize> {
        (0..2 * self.n()).map(|p| self.partner(p)).collect()
    }

    #[inline]
    fn top(&self, j: usize) -> usize {
        2 * self.n() - 1 - j
    }

    #[inline]
    fn is_bottom(&self, p: usize) -> bool {
        p < self.n()
    }

    #[inline]
    fn link(&mut self, p: usize, q: usize) {
        self.pairs[p] = q as u8;
        self.pairs[q] = p as u8;
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n())
    }

    /// Bottom-to-bottom chords.
    pub fn cups(&self) -> usize {
        (0..self.n())
            .filter(|&p| self.is_bottom(self.partner(p)))
            .count()
            / 2
    }

    /// Top-to-top chords.
    pub fn caps(&self) -> usize {
        (self.n()..2 * self.n())
            .filter(|&p| !self.is_bottom(self.partner(p)))
            .count()
            / 2
    }

    pub fn through_strands(&self) -> usize {
        (0..self.n())
            .filter(|&p| !self.is_bottom(self.partner(p)))
            .count()
    }

    pub fn is_noncrossing(&self) -> bool {
        let n2 = 2 * self.n();
        let mut stack = Vec::with_capacity(n2);
        for p in 0..n2 {
            let q = self.partner(p);
            if q > p {
                stack.push(p);
            } else if stack.pop() != Some(q) {
                return false;
            }
        }
        stack.is_empty()
    }

    /// `self` stacked under `other`; returns the product diagram and the number
    /// of closed loops removed.
    pub fn compose(&self, other: &TLDiagram) -> Result<(TLDiagram, usize)> {
        let n = self.n();
        if other.n() != n {
            return Err(Error::invalid(format!(
                "cannot compose diagrams on {n} and {} strands",
                other.n()
            )));
        }
        let n2 = 2 * n;
        let mut middle_seen = vec![false; n];
        let mut out = [0u8; 2 * MAX_ENCODABLE_STRANDS];
        let mut done = vec![false; n2];

        // Walk from a result boundary point until another boundary point is reached.
        // Lower diagram points are bottom boundary / middle; upper are middle / top boundary.
        let walk = |start_lower: bool, start: usize, middle_seen: &mut Vec<bool>| -> usize {
            let (mut lower, mut p) = (start_lower, start);
            loop {
                if lower {
                    let q = self.partner(p);
                    if q < n {
                        return q;
                    }
                    let m = n2 - 1 - q;
                    middle_seen[m] = true;
                    lower = false;
                    p = m;
                } else {
                    let q = other.partner(p);
                    if q >= n {
                        return q;
                    }
                    middle_seen[q] = true;
                    lower = true;
                    p = n2 - 1 - q;
                }
            }
        };

        for p in 0..n2 {
            if done[p] {
                continue;
            }
            let q = if p < n {
                walk(true, p, &mut middle_seen)
            } else {
                walk(false, p, &mut middle_seen)
            };
            out[p] = q as u8;
            out[q] = p as u8;
            done[p] = true;
            done[q] = true;
        }

        let mut loops = 0;
        for m in 0..n {
            if middle_seen[m] {
                continue;
            }
            loops += 1;
            // a closed loop alternates lower top-chords and upper bottom-chords
            let mut cur = m;
            loop {
                middle_seen[cur] = true;
                let via_lower = n2 - 1 - self.partner(n2 - 1 - cur);
                middle_seen[via_lower] = true;
                cur = other.partner(via_lower);
                if cur == m {
                    break;
                }
            }
        }
        Ok((
            TLDiagram {
                n: self.n,
                pairs: out,
            },
            loops,
        ))
    }

    /// `self · e_i` (the generator on top), 1-based `i`. Returns the product
    /// and whether a loop was closed.
    #[inline]
    pub(crate) fn mul_generator(&self, i: usize) -> (TLDiagram, bool) {
        let t0 = self.top(i - 1);
        let t1 = self.top(i);
        let x = self.partner(t0);
        if x == t1 {
            return (*self, true);
        }
        let y = self.partner(t1);
        let mut d = *self;
        d.link(x, y);
        d.link(t0, t1);
        (d, false)
    }

    /// Number of loops in the closure by `n` parallel arcs joining top position
    /// `j` to bottom position `j`.
    pub fn closure_loops(&self) -> usize {
        let n = self.n();
        let n2 = 2 * n;
        let mut seen = [false; 2 * MAX_ENCODABLE_STRANDS];
        let mut loops = 0;
        for start in 0..n2 {
            if seen[start] {
                continue;
            }
            loops += 1;
            let mut p = start;
            loop {
                seen[p] = true;
                let q = self.partner(p);
                seen[q] = true;
                // closing arc: bottom j <-> top j
                p = n2 - 1 - q;
                if p == start {
                    break;
                }
            }
        }
        loops
    }

    /// Bottom row then top row (both left to right): `(` / `)` for cup and cap
    /// ends, `|` for through strands. Equal rows collapse to one.
    pub fn rows(&self) -> (String, String) {
        let n = self.n();
        let row = |points: Vec<usize>| -> String {
            points
                .iter()
                .enumerate()
                .map(|(pos, &p)| {
                    let q = self.partner(p);
                    match points.iter().position(|&r| r == q) {
                        None => '|',
                        Some(other) if other > pos => '(',
                        Some(_) => ')',
                    }
                })
                .collect()
        };
        (
            row((0..n).collect()),
            row((0..n).map(|j| self.top(j)).collect()),
        )
    }
}

impl fmt::Display for TLDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (bottom, top) = self.rows();
        if bottom == top {
            f.write_str(&bottom)
        } else {
            write!(f, "{bottom}/{top}")
        }
    }
}

impl fmt::Debug for TLDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TLDiagram({self})")
    }
}

/// All noncrossing matchings on `n` strands; the identity comes first, the rest
/// in lexicographic order of the pairing array.
pub(crate) fn all_diagrams(n: usize) -> Vec<TLDiagram> {
    fn fill(points: &[usize], pairs: &mut [usize], out: &mut Vec<Vec<usize>>, n2: usize) {
        if points.is_empty() {
            out.push(pairs[..n2].to_vec());
            return;
        }
        let first = points[0];
        for k in (1..points.len()).step_by(2) {
            let partner = points[k];
            pairs[first] = partner;
            pairs[partner] = first;
            let inside = &points[1..k];
            let outside = &points[k + 1..];
            let mut inner = Vec::new();
            fill(inside, pairs, &mut inner, n2);
            for sol in inner {
                let mut pp = sol;
                let mut rest = Vec::new();
                fill(outside, &mut pp, &mut rest, n2);
                out.extend(rest);
            }
        }
    }
    let n2 = 2 * n;
    let mut raw = Vec::new();
    let points: Vec<usize> = (0..n2).collect();
    let mut scratch = vec![0; n2];
    fill(&points, &mut scratch, &mut raw, n2);
    let mut diagrams: Vec<TLDiagram> = raw
        .into_iter()
        .map(|p| TLDiagram::from_pairing(n, &p).expect("generated matching is valid"))
        .collect();
    diagrams.sort_by_key(|d| (!d.is_identity(), d.pairing()));
    diagrams
}
