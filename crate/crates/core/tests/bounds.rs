use num_bigint::BigInt;

use diam2_core::bounds::{
    admissible_type1, admissible_type2, admissible_type4, m0, pi_type1, pi_type2, pi_type4, search_type1, search_type2,
    search_type4, tensor_inequality, type1_cap, type2_cap, type4_cap,
};
use diam2_core::field::is_prime;

// Independent group orders, straight from the textbook product formulas.
fn sp_order(n: u32, q: u64) -> BigInt {
    let m = n / 2;
    let mut out = BigInt::from(q).pow(m * m);
    for i in 1..=m {
        out *= BigInt::from(q).pow(2 * i) - 1;
    }
    out
}

fn ominus_order(n: u32, q: u64) -> BigInt {
    let m = n / 2;
    let mut out = 2 * BigInt::from(q).pow(m * (m - 1)) * (BigInt::from(q).pow(m) + 1);
    for i in 1..m {
        out *= BigInt::from(q).pow(2 * i) - 1;
    }
    out
}

fn naive_type4(q: u64, t: u32) -> BigInt {
    let base = BigInt::from(q - 1) * BigInt::from(2u32).pow(2 * t) * ominus_order(2 * t, 2);
    &base * &base + 1 - BigInt::from(q).pow(1 << t)
}

fn naive_type2(q: u64, t: u32) -> BigInt {
    let base = 2 * BigInt::from(q - 1) * BigInt::from(2u32).pow(2 * t) * sp_order(2 * t, 2);
    &base * &base + 1 - BigInt::from(q).pow(1 << t)
}

fn naive_type1(q: u64, r: u64, t: u32) -> BigInt {
    let base = BigInt::from((r - 1) * (q - 1)) * BigInt::from(r).pow(2 * t) * sp_order(2 * t, r);
    &base * &base + 1 - BigInt::from(q).pow(r.pow(t) as u32)
}

#[test]
fn pi_matches_naive_formulas() {
    for t in 2..=7u32 {
        for q in [3u64, 5, 7, 139, 149, 1913] {
            assert_eq!(pi_type4(q, t as u64).unwrap(), naive_type4(q, t), "type4 q={q} t={t}");
        }
    }
    for t in 2..=6u32 {
        for q in [5u64, 9, 13, 569, 23029] {
            assert_eq!(pi_type2(q, t as u64).unwrap(), naive_type2(q, t), "type2 q={q} t={t}");
        }
    }
    for (r, t) in [(3u64, 1u32), (3, 2), (3, 3), (5, 1), (7, 1), (11, 1)] {
        for q in [7u64, 11, 31, 73, 79] {
            assert_eq!(pi_type1(q, r, t as u64).unwrap(), naive_type1(q, r, t), "type1 q={q} r={r} t={t}");
        }
    }
}

/// The search answer is positive and every admissible value above it, up
/// to the cutoff and a little past it, is negative.
fn assert_sign_change(found: u64, above: &[u64], pi: impl Fn(u64) -> BigInt, what: &str) {
    assert!(pi(found) > BigInt::from(0), "{what}: pi({found}) not positive");
    for &q in above.iter().filter(|&&q| q > found) {
        assert!(pi(q) < BigInt::from(0), "{what}: pi({q}) not negative");
    }
}

#[test]
fn searches_are_sound() {
    for t in 2..=7u64 {
        let found = search_type4(t).unwrap().unwrap();
        let cap = type4_cap(t).unwrap();
        assert_sign_change(found, &admissible_type4(cap + 200), |q| naive_type4(q, t as u32), &format!("type4 t={t}"));
    }
    for t in 2..=6u64 {
        let found = search_type2(t).unwrap().unwrap();
        let cap = type2_cap(t).unwrap();
        assert_sign_change(found, &admissible_type2(cap + 200), |q| naive_type2(q, t as u32), &format!("type2 t={t}"));
    }
    for (r, t) in [(3u64, 1u64), (5, 1), (7, 1), (11, 1), (3, 2), (3, 3)] {
        let found = search_type1(r, t).unwrap().unwrap();
        let cap = type1_cap(r, t).unwrap();
        assert_sign_change(found, &admissible_type1(r, cap + 100), |q| naive_type1(q, r, t as u32), &format!("type1 r={r} t={t}"));
    }
}

#[test]
fn pi_is_eventually_decreasing_in_sign() {
    // once negative past the cutoff, pi stays negative
    for t in 2..=7u64 {
        let cap = type4_cap(t).unwrap();
        let signs: Vec<bool> = admissible_type4(cap + 500).iter().map(|&q| naive_type4(q, t as u32) > BigInt::from(0)).collect();
        let first_negative = signs.iter().position(|s| !s).unwrap();
        assert!(signs[first_negative..].iter().all(|s| !s), "t={t}");
    }
}

#[test]
fn published_type4_t3_is_the_crude_cutoff() {
    // 149 is the largest prime below (2^6 |O-(6,2)|)^(1/3), but pi is
    // already negative there; the sign change happens after 139.
    assert_eq!(type4_cap(3).unwrap(), 149);
    assert!(is_prime(149));
    assert!(naive_type4(149, 3) < BigInt::from(0));
    assert!(naive_type4(139, 3) > BigInt::from(0));
    assert_eq!(search_type4(3).unwrap(), Some(139));
}

#[test]
fn published_type1_small_cells() {
    // 79 = 1 mod 3 is admissible with pi > 0, above the published 73
    assert!(admissible_type1(3, 100).contains(&79));
    assert!(naive_type1(79, 3, 2) > BigInt::from(0));
    // 11 is not 1 mod 3; the published cell ignores the congruence
    assert!(!admissible_type1(3, 20).contains(&11));
    assert!(naive_type1(11, 3, 3) > BigInt::from(0));
    assert_eq!(search_type1(3, 3).unwrap(), Some(7));
}

#[test]
fn tensor_threshold_against_direct_evaluation() {
    for t in 3..=6u64 {
        let got = m0(t).unwrap();
        let holds = |m: u64| ((t * t + (2 * m * m - 3) * t + 4) as u128) < (m as u128).pow(t as u32);
        assert!(!holds(got));
        assert!((got + 1..=200).all(holds), "t={t}");
        assert!((2..=200).all(|m| tensor_inequality(m, t) == holds(m)));
    }
}

#[test]
fn excluded_pairs_have_no_admissible_q() {
    // pi is negative past these q, and nothing admissible sits below them
    for (r, t, above) in [(13u64, 1u64, 13u64), (5, 2, 7), (3, 4, 3)] {
        let cap = type1_cap(r, t).unwrap();
        for q in admissible_type1(r, cap + 50).into_iter().filter(|&q| q > above) {
            assert!(naive_type1(q, r, t as u32) < BigInt::from(0), "r={r} t={t} q={q}");
        }
        assert_eq!(search_type1(r, t).unwrap(), None, "r={r} t={t}");
    }
}
