#![allow(dead_code)]

use braidtail::{BraidWord, LaurentPoly, Var};

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    if ra != rb {
        parent[ra] = rb;
    }
}

/// Kauffman bracket of the closure by summing all 2^c smoothings.
/// Grid point `(level, pos)` sits on strand `pos` just below crossing `level`.
pub fn state_sum_bracket(b: &BraidWord) -> LaurentPoly {
    let (n, letters) = (b.strands(), b.letters());
    let c = letters.len();
    assert!(c <= 20, "state sum is exponential");
    let id = |level: usize, pos: usize| level * n + pos;
    let delta = LaurentPoly::delta();
    let mut total = LaurentPoly::zero(Var::A);
    for state in 0u32..(1u32 << c) {
        let mut parent: Vec<usize> = (0..(c + 1) * n).collect();
        let mut a_exp = 0i64;
        for (k, &g) in letters.iter().enumerate() {
            let i = (g.unsigned_abs() - 1) as usize;
            let eps = g.signum() as i64;
            for p in 0..n {
                if p != i && p != i + 1 {
                    union(&mut parent, id(k, p), id(k + 1, p));
                }
            }
            let vertical = state >> k & 1 == 0;
            if vertical {
                union(&mut parent, id(k, i), id(k + 1, i));
                union(&mut parent, id(k, i + 1), id(k + 1, i + 1));
                a_exp += eps;
            } else {
                union(&mut parent, id(k, i), id(k, i + 1));
                union(&mut parent, id(k + 1, i), id(k + 1, i + 1));
                a_exp -= eps;
            }
        }
        for p in 0..n {
            union(&mut parent, id(0, p), id(c, p));
        }
        let loops = (0..parent.len())
            .filter(|&x| find(&mut parent, x) == x)
            .count();
        let term = LaurentPoly::monomial(Var::A, a_exp, 1);
        total += &(&term * &delta.pow(loops as u32 - 1));
    }
    total
}

/// `(1 - t^2)` written in `s = t^{1/2}`.
pub fn one_minus_t2() -> LaurentPoly {
    LaurentPoly::from_terms(Var::S, [(0, 1), (4, -1)])
}

/// `t^{1/2} + t^{-1/2}`, i.e. `[2]`.
pub fn quantum_two() -> LaurentPoly {
    LaurentPoly::from_terms(Var::S, [(1, 1), (-1, 1)])
}
