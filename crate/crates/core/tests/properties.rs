use proptest::prelude::*;

use hcpca_core::drift::certificate::{check, fixtures, named_target, Certificate};
use hcpca_core::drift::lemma::{minmax_bound, stationary_drift, ChainSpec};
use hcpca_core::drift::all_kernels;
use hcpca_core::game::{first_mismatch, generate_board};
use hcpca_core::islands::{find_islands, modified_left, modified_right};
use hcpca_core::params::validate_noise;
use hcpca_core::pca::{envelope_step, hardcore_step, PcaSpec, StepContext};
use hcpca_core::rng::SeedSpec;
use hcpca_core::state::{BinRow, EnvRow, EnvState};
use hcpca_core::symbolic::{parse_poly, q, Monomial, PolyQ, Q, RatFnQ};

fn poly_strategy() -> impl Strategy<Value = PolyQ> {
    prop::collection::vec((0u32..4, 0u32..4, -6i64..7, 1i64..5), 0..6).prop_map(|ts| {
        PolyQ::from_terms(ts.into_iter().map(|(a, b, n, d)| (Monomial::new(a, b), q(n, d))))
    })
}

/// Rational point with `0 <= x0, x1 <= 1/2` and `x0 + x1 < 1`.
fn point() -> impl Strategy<Value = (Q, Q)> {
    (0i64..=50, 0i64..=50)
        .prop_filter("r > 0", |(a, b)| a + b < 100 && a + b > 0)
        .prop_map(|(a, b)| (q(a, 100), q(b, 100)))
}

fn env_state() -> impl Strategy<Value = EnvState> {
    prop_oneof![Just(EnvState::Zero), Just(EnvState::One), Just(EnvState::Question)]
}

fn noise() -> impl Strategy<Value = (f64, f64)> {
    (0u32..=10, 0u32..=10).prop_map(|(a, b)| (a as f64 / 20.0, b as f64 / 20.0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in poly_strategy(), b in poly_strategy(), c in poly_strategy()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &PolyQ::one(), a.clone());
    }

    #[test]
    fn canonical_string_round_trips(a in poly_strategy()) {
        prop_assert_eq!(parse_poly(&a.canonical_string()).unwrap(), a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in poly_strategy(), b in poly_strategy(), (x, y) in point()) {
        prop_assert_eq!((&a * &b).eval_at(&x, &y), a.eval_at(&x, &y) * b.eval_at(&x, &y));
        prop_assert_eq!((&a + &b).eval_at(&x, &y), a.eval_at(&x, &y) + b.eval_at(&x, &y));
    }

    #[test]
    fn ratfn_equality_matches_evaluation(a in poly_strategy(), k in 0u32..3, (x, y) in point()) {
        // a / r^k written two ways: as is, and with numerator and denominator times r.
        let f = RatFnQ::new(a.clone(), k);
        let g = RatFnQ::new(&a * &PolyQ::r(), k + 1);
        prop_assert_eq!(&f, &g);
        prop_assert_eq!(f.eval_at(&x, &y), g.eval_at(&x, &y));
    }

    #[test]
    fn kernels_sum_to_one_and_match_truncation((x, y) in point()) {
        let (xf, yf) = (
            num_traits::ToPrimitive::to_f64(&x).unwrap(),
            num_traits::ToPrimitive::to_f64(&y).unwrap(),
        );
        for (name, k) in all_kernels() {
            prop_assert_eq!(k.mass().eval_at(&x, &y), Some(q(1, 1)), "{}", name);
            let closed = k.drift1().value.eval_f64(xf, yf);
            // Enough terms that the geometric tail (1-r)^K is below e^-60.
            let terms = (60.0 / (1.0 - xf - yf)).ceil().max(400.0) as u32;
            let trunc = k.drift1_truncated(xf, yf, terms);
            prop_assert!((closed - trunc).abs() < 1e-9 * closed.abs().max(1.0), "{} {} {}", name, closed, trunc);
        }
    }

    #[test]
    fn certified_targets_stay_above_floor((x, y) in point(), slack in 1i64..10) {
        for (name, text) in fixtures() {
            let mut cert = Certificate::parse(text).unwrap();
            let target = named_target(&cert.target).unwrap();
            prop_assert!(target.eval_at(&x, &y).unwrap() > cert.floor, "{}", name);
            cert.floor -= q(slack, 7);
            prop_assert!(check(&cert).is_ok(), "{} with a lower floor", name);
        }
    }

    #[test]
    fn minmax_bound_is_below_stationary_drift(
        states in 2usize..5,
        weights in prop::collection::vec(1i64..6, 16),
        jumps in prop::collection::vec(-3i64..4, 16),
    ) {
        let transition: Vec<Vec<Q>> = (0..states)
            .map(|f| {
                let row = &weights[f * 4..f * 4 + states];
                let s: i64 = row.iter().sum();
                row.iter().map(|w| q(*w, s)).collect()
            })
            .collect();
        let jumps: Vec<Vec<Q>> = (0..states)
            .map(|f| jumps[f * 4..f * 4 + states].iter().map(|j| q(*j, 1)).collect())
            .collect();
        let names = (0..states).map(|s| format!("s{s}")).collect();
        let c = ChainSpec::new(names, transition, jumps).unwrap();
        prop_assert!(stationary_drift(&c).unwrap() >= minmax_bound(&c));
    }

    #[test]
    fn envelope_covers_every_completion(
        cells in prop::collection::vec(env_state(), 64..130),
        fill in prop::collection::vec(any::<bool>(), 130),
        n in 2usize..4,
        (e0, e1) in noise(),
        seed in any::<u64>(),
    ) {
        let spec = PcaSpec::new(n, validate_noise(e0, e1).unwrap()).unwrap();
        let ctx = StepContext::new(SeedSpec::new(seed), 0);
        let env = EnvRow::from_states(&cells);
        let bits: Vec<bool> = cells
            .iter()
            .zip(&fill)
            .map(|(s, f)| match s {
                EnvState::One => true,
                EnvState::Zero => false,
                EnvState::Question => *f,
            })
            .collect();
        let out_env = envelope_step(&env, &spec, &ctx, 1);
        let out_bin = hardcore_step(&BinRow::from_bits(&bits), &spec, &ctx, 1);
        for i in 0..cells.len() {
            match out_env.get(i as i64) {
                EnvState::Question => {}
                s => prop_assert_eq!(s, EnvState::from_bit(out_bin.bit(i as i64))),
            }
        }
    }

    #[test]
    fn envelope_equals_hardcore_on_binary_rows(
        bits in prop::collection::vec(any::<bool>(), 64..200),
        n in 2usize..5,
        (e0, e1) in noise(),
        seed in any::<u64>(),
    ) {
        let spec = PcaSpec::new(n, validate_noise(e0, e1).unwrap()).unwrap();
        let ctx = StepContext::new(SeedSpec::new(seed), 3);
        let b = BinRow::from_bits(&bits);
        let e = envelope_step(b.as_env(), &spec, &ctx, 5);
        let h = hardcore_step(&b, &spec, &ctx, 5);
        prop_assert_eq!(&e, h.as_env());
    }

    #[test]
    fn one_cell_change_stays_local(
        cells in prop::collection::vec(env_state(), 64..130),
        k in 0usize..64,
        new in env_state(),
        n in 2usize..4,
        seed in any::<u64>(),
    ) {
        let spec = PcaSpec::new(n, validate_noise(0.1, 0.15).unwrap()).unwrap();
        let ctx = StepContext::new(SeedSpec::new(seed), 0);
        let w = cells.len();
        let mut other = cells.clone();
        other[k] = new;
        let a = envelope_step(&EnvRow::from_states(&cells), &spec, &ctx, 2);
        let b = envelope_step(&EnvRow::from_states(&other), &spec, &ctx, 2);
        for i in 0..w {
            let reads_k = (0..n).any(|d| (i + d) % w == k);
            if !reads_k {
                prop_assert_eq!(a.get(i as i64), b.get(i as i64));
            }
        }
    }

    #[test]
    fn solved_boards_replay_the_envelope(
        width in 4usize..40,
        height in 1usize..30,
        n in 2usize..4,
        (e0, e1) in noise(),
        seed in any::<u64>(),
    ) {
        let p = validate_noise(e0, e1).unwrap();
        let ctx = StepContext::new(SeedSpec::new(seed), 1);
        let board = generate_board(width, height, &p, n, &ctx).unwrap();
        prop_assert_eq!(first_mismatch(&board, &p, &ctx).unwrap(), None);
    }

    #[test]
    fn islands_are_maximal_binary_runs(cells in prop::collection::vec(env_state(), 1..80)) {
        let row = EnvRow::from_states(&cells);
        let w = cells.len();
        match find_islands(&row) {
            Err(_) => prop_assert!(!cells.contains(&EnvState::Question)),
            Ok(isl) => {
                let mut covered = vec![false; w];
                for s in &isl {
                    let len = s.len(w);
                    prop_assert_eq!(row.get(s.i as i64 - 1), EnvState::Question);
                    prop_assert_eq!(row.get(s.i as i64 + len as i64), EnvState::Question);
                    for d in 0..len {
                        let c = (s.i + d) % w;
                        prop_assert!(!covered[c]);
                        prop_assert_ne!(cells[c], EnvState::Question);
                        covered[c] = true;
                    }
                }
                for c in 0..w {
                    prop_assert_eq!(covered[c], cells[c] != EnvState::Question);
                }
            }
        }
    }

    #[test]
    fn left_offsets_mirror_right_offsets(cells in prop::collection::vec(0u8..2, 3..6), n in 2usize..4) {
        let rev: Vec<u8> = cells.iter().rev().copied().collect();
        prop_assert_eq!(modified_left(&rev, n).unwrap(), -modified_right(&cells, n).unwrap());
        let d = modified_right(&cells, n).unwrap().doubled;
        let allowed: &[i64] = if n == 2 { &[0, -1, -2] } else { &[0, -2, -4] };
        prop_assert!(allowed.contains(&d));
    }
}
