mod common;

use braidtail::invariants::{colored_jones, jones, kauffman_bracket, quantum_integer, torus_jones};
use braidtail::theorem_lab::{extract_tail, verify_theorem1};
use braidtail::{full_twist, parse_braid, BraidWord, LaurentPoly, Var};
use common::{one_minus_t2, quantum_two, state_sum_bracket};
use proptest::prelude::*;

fn b(s: &str) -> BraidWord {
    parse_braid(s).unwrap()
}

#[test]
fn state_sum_known_values() {
    // unknot, Hopf link, trefoil
    assert_eq!(state_sum_bracket(&b("B1:")), LaurentPoly::one(Var::A));
    assert_eq!(
        state_sum_bracket(&b("B2: 1 1")),
        LaurentPoly::from_terms(Var::A, [(4, -1), (-4, -1)])
    );
    assert_eq!(
        state_sum_bracket(&b("B2: 1 1 1")),
        LaurentPoly::from_terms(Var::A, [(5, -1), (-3, -1), (-7, 1)])
    );
    // two unlinked circles
    assert_eq!(state_sum_bracket(&b("B2:")), LaurentPoly::delta());
}

#[test]
fn tl_matches_state_sum_on_mixed_words() {
    for s in [
        "B3: 1 -2 1 -2",
        "B4: 1 2 3 -1 -2 3",
        "B3: FT",
        "B4: 2 2 -3 1 -1",
        "B5: 4 3 2 1 -4",
    ] {
        let w = b(s);
        assert_eq!(
            kauffman_bracket(&w, 0).unwrap(),
            state_sum_bracket(&w),
            "{s}"
        );
    }
}

#[test]
fn figure_eight_jones() {
    let v = jones(&b("B3: 1 -2 1 -2")).unwrap();
    let expected = LaurentPoly::from_terms(Var::S, [(-4, 1), (-2, -1), (0, 1), (2, -1), (4, 1)]);
    assert_eq!(v, expected);
}

#[test]
fn torus_family_matches_closed_form() {
    for (p, q) in [(2u64, 5u64), (3, 4), (3, 5), (4, 3)] {
        let mut letters = Vec::new();
        for _ in 0..q {
            letters.extend(1..p as i32);
        }
        let w = BraidWord::new(p as usize, letters).unwrap();
        assert_eq!(jones(&w).unwrap(), torus_jones(p, q).unwrap(), "T({p},{q})");
    }
}

#[test]
fn worked_example_times_one_minus_t2() {
    let v = jones(&b("B4: FT 2 2 1")).unwrap();
    let lhs = &one_minus_t2() * &v;
    assert_eq!(lhs, LaurentPoly::from_terms(Var::S, [(12, 1), (28, -1)]));
}

#[test]
fn colored_two_is_quantum_two_times_jones() {
    for s in ["B2:", "B2: 1 1", "B3: 1 2", "B3: 2 2 1"] {
        let w = b(s);
        let cj = colored_jones(&w, 1).unwrap();
        let v = jones(&full_twist(w.strands()).unwrap().then(&w).unwrap()).unwrap();
        assert_eq!(cj.unnormalized, &quantum_two() * &v, "{s}");
    }
}

#[test]
fn colored_unknot() {
    for n_cable in 1..=4u64 {
        let cj = colored_jones(&b("B1:"), n_cable).unwrap();
        assert_eq!(cj.unnormalized, quantum_integer(n_cable + 1).unwrap());
        assert!(cj.normalized.is_one());
    }
}

// Hopf link with both components colored N+1: [(N+1)^2] up to a unit.
#[test]
fn colored_hopf_link() {
    for n_cable in 1..=4u64 {
        let cj = colored_jones(&b("B2:"), n_cable).unwrap();
        assert_eq!(cj.components, 2);
        let m = n_cable + 1;
        let expected = quantum_integer(m * m).unwrap();
        let lo = cj.unnormalized.min_degree().unwrap() - expected.min_degree().unwrap();
        let sign = cj.unnormalized.lowest_coeff().unwrap().clone();
        assert_eq!(
            cj.unnormalized,
            expected.shift(lo).scale(&sign),
            "N={n_cable}"
        );
    }
}

#[test]
fn tail_of_twisted_trefoil_reconstructs() {
    let v = jones(&b("B2: FT 1")).unwrap();
    let tail = extract_tail(&v, 3).unwrap();
    assert_eq!(tail.sign, 1);
    assert!(verify_theorem1(&b("B2: 1")).unwrap().verdict.pass);
}

fn word(max_n: usize, max_c: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_n).prop_flat_map(move |n| {
        let g = (1..n as i32).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]);
        prop::collection::vec(g, 0..=max_c).prop_map(move |l| BraidWord::new(n, l).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn tl_bracket_equals_state_sum(w in word(5, 9)) {
        prop_assert_eq!(kauffman_bracket(&w, 0).unwrap(), state_sum_bracket(&w));
    }

    // The writhe-normalized bracket has A-exponents in a single class mod 4.
    #[test]
    fn normalized_bracket_exponent_parity(w in word(4, 8)) {
        let br = kauffman_bracket(&w, 0).unwrap();
        let exps: Vec<i64> = br.terms().map(|(e, _)| e).collect();
        prop_assert!(exps.windows(2).all(|p| (p[1] - p[0]) % 4 == 0));
    }

    #[test]
    fn jones_invariant_under_conjugation_and_stabilization(w in word(4, 6)) {
        let v = jones(&w).unwrap();
        let n = w.strands();
        let conj = BraidWord::new(n, [&[1][..], w.letters(), &[-1]].concat()).unwrap();
        prop_assert_eq!(&jones(&conj).unwrap(), &v);
        let stab = BraidWord::new(n + 1, [w.letters(), &[n as i32]].concat()).unwrap();
        prop_assert_eq!(&jones(&stab).unwrap(), &v);
        let neg = BraidWord::new(n + 1, [w.letters(), &[-(n as i32)]].concat()).unwrap();
        prop_assert_eq!(&jones(&neg).unwrap(), &v);
    }

    #[test]
    fn mixed_cable_writhe_and_components(w in word(4, 6), seed in 0usize..64) {
        let ids = w.closure_component_ids();
        let widths: Vec<usize> = ids.iter().map(|&c| (seed >> (2 * c % 6)) % 3 + 1).collect();
        let cabled = w.cable_with(&widths).unwrap();
        // each crossing of bundles p and q becomes p*q crossings of the same sign
        let mut at = widths.clone();
        let mut writhe = 0i64;
        for &g in w.letters() {
            let i = g.unsigned_abs() as usize - 1;
            writhe += g.signum() as i64 * (at[i] * at[i + 1]) as i64;
            at.swap(i, i + 1);
        }
        prop_assert_eq!(cabled.writhe(), writhe);
        let comps: usize = (0..=*ids.iter().max().unwrap())
            .map(|c| widths[ids.iter().position(|&x| x == c).unwrap()])
            .sum();
        prop_assert_eq!(cabled.closure_components(), comps);
    }

    #[test]
    fn inverse_is_mirror(w in word(4, 6)) {
        let mirror = |p: &LaurentPoly| LaurentPoly::from_terms(Var::S, p.terms().map(|(e, c)| (-e, c.clone())));
        prop_assert_eq!(jones(&w.inverse()).unwrap(), mirror(&jones(&w).unwrap()));
    }
}
