//! Randomized cross-module invariants: symbolic formulas against their
//! combinatorial definitions, and engine-level consistency properties.

use johnson_scheme::exactmath::{binom_i, is_square, stirling2, ExactInt};
use johnson_scheme::johnson::{ball, sphere_size, verify_perfect, Code, Word};
use johnson_scheme::moments::{sigma_e, strength};
use johnson_scheme::sieve::{run_rules, Conclusion};
use num_traits::{One, Zero};
use proptest::prelude::*;

proptest! {
    #[test]
    fn binomial_symmetry_and_pascal(n in 0i64..=200, k in 0i64..=200) {
        let k = k.min(n);
        prop_assert_eq!(binom_i(n, k), binom_i(n, n - k));
        if n >= 1 {
            prop_assert_eq!(
                binom_i(n, k),
                binom_i(n - 1, k - 1) + binom_i(n - 1, k)
            );
        }
    }

    #[test]
    fn vandermonde_full_sphere(n in 1u64..=60, w in 0u64..=60) {
        let w = w.min(n);
        // the radius-w sphere is the whole space
        prop_assert_eq!(sphere_size(n, w, w.min(n - w)), binom_i(n as i64, w as i64));
    }

    #[test]
    fn stirling_alternating_sum(r in 0usize..=15, v in 0usize..=15) {
        // v! S(r,v) = sum_j (-1)^j C(v,j) (v-j)^r
        let mut total = ExactInt::zero();
        for j in 0..=v {
            let term = binom_i(v as i64, j as i64)
                * num_traits::pow::pow(ExactInt::from((v - j) as i64), r);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        let mut vfact = ExactInt::one();
        for i in 1..=v {
            vfact *= ExactInt::from(i as i64);
        }
        prop_assert_eq!(stirling2(r, v) * vfact, total);
    }

    #[test]
    fn catalan_numbers_are_integral(m in 0i64..=2000) {
        let c = binom_i(2 * m, m);
        prop_assert!((c % ExactInt::from(m + 1)).is_zero());
    }

    #[test]
    fn square_detection_around_squares(digits in "[1-9][0-9]{0,29}") {
        let x: ExactInt = digits.parse().unwrap();
        let sq = &x * &x;
        prop_assert_eq!(is_square(&sq), Some(x.clone()));
        if sq > ExactInt::from(4) {
            prop_assert!(is_square(&(&sq + ExactInt::one())).is_none());
            prop_assert!(is_square(&(&sq - ExactInt::one())).is_none());
        }
    }

    #[test]
    fn ball_enumeration_matches_sphere_size(n in 1u32..=12, w in 0u32..=12, e in 0u32..=12) {
        let w = w.min(n);
        let e = e.min(w).min(n - w);
        let center = Word::new(n, (0..w).collect()).unwrap();
        prop_assert_eq!(
            ExactInt::from(ball(&center, e).len() as i64),
            sphere_size(n as u64, w as u64, e as u64)
        );
    }

    #[test]
    fn complement_is_an_involution(n in 1u32..=10, seed in any::<u64>()) {
        // pseudo-random code: every 3rd word of the space by a seeded stride
        let w = (seed % (n as u64 + 1)) as u32;
        let space = johnson_scheme::johnson::enumerate_space(n, w);
        let words: Vec<Word> = space
            .into_iter()
            .enumerate()
            .filter(|(i, _)| (*i as u64 + seed) % 3 == 0)
            .map(|(_, x)| x)
            .collect();
        prop_assume!(!words.is_empty());
        let code = Code::new(n, w, words).unwrap();
        prop_assert_eq!(code.complement().complement(), code);
    }

    #[test]
    fn strength_root_is_the_first_sigma_zero(n in 4i64..=40, w in 2i64..=20) {
        prop_assume!(2 * w <= n);
        let r = strength(n, w, 1);
        if let Some(phi) = r.phi {
            prop_assert_eq!(sigma_e(n, w, phi + 1, 1), ExactInt::zero());
            for m in 1..=phi {
                prop_assert!(!sigma_e(n, w, m, 1).is_zero());
            }
        } else {
            for m in 1..w {
                prop_assert!(!sigma_e(n, w, m, 1).is_zero());
            }
        }
    }

    #[test]
    fn rules_are_complement_invariant(w in 1u64..=25, a in 0u64..=25, e in 1u64..=3) {
        // evaluating on either side of the complement gives one conclusion
        let n = 2 * w + a;
        let left = run_rules(n, w, e, None);
        let right = run_rules(n, n - w, e, None);
        prop_assert_eq!(left.conclusion, right.conclusion);
        prop_assert_eq!(left.canonical.w, right.canonical.w);
    }

    #[test]
    fn excluded_points_really_have_no_code(w in 1u32..=4, a in 0u32..=4) {
        // tiny spaces: if the rules exclude (n,w,1), no 1-perfect code can
        // be found by exhausting all sphere-packing-sized subsets
        let n = 2 * w + a;
        let report = run_rules(n as u64, w as u64, 1, None);
        prop_assume!(matches!(report.conclusion, Conclusion::Excluded(_)));
        let space = johnson_scheme::johnson::enumerate_space(n, w);
        let sphere = sphere_size(n as u64, w as u64, 1);
        let size = binom_i(n as i64, w as i64);
        if (&size % &sphere).is_zero() {
            let m = (size / sphere).to_string().parse::<usize>().unwrap();
            prop_assume!(m <= 3 && space.len() <= 24);
            // try every m-subset of the space
            let idx: Vec<usize> = (0..space.len()).collect();
            let mut found = false;
            let mut combo = vec![0usize; m];
            fn rec(
                idx: &[usize],
                combo: &mut Vec<usize>,
                depth: usize,
                start: usize,
                space: &[Word],
                n: u32,
                w: u32,
                found: &mut bool,
            ) {
                if *found {
                    return;
                }
                if depth == combo.len() {
                    let words: Vec<Word> =
                        combo.iter().map(|&i| space[i].clone()).collect();
                    if let Ok(code) = Code::new(n, w, words) {
                        if let Ok(v) = verify_perfect(&code, 1, 40) {
                            if v.is_perfect() {
                                *found = true;
                            }
                        }
                    }
                    return;
                }
                for i in start..idx.len() {
                    combo[depth] = idx[i];
                    rec(idx, combo, depth + 1, i + 1, space, n, w, found);
                }
            }
            rec(&idx, &mut combo, 0, 0, &space, n, w, &mut found);
            prop_assert!(!found, "rules excluded ({n},{w},1) but a code exists");
        }
    }
}
