use std::f64::consts::{FRAC_PI_2, PI, TAU};

use helstrom_ring::discrimination::{build_extended, extended_overlap, helstrom_cost, helstrom_oracle, BarrierModel};
use helstrom_ring::evolution::{autocorrelation, evolve};
use helstrom_ring::expansion::{coeff_a, coeff_b, coeff_c, coeff_d, expand_candidate, Chamber, ChamberGeometry};
use helstrom_ring::{ring_overlap, ring_state, Candidate, Exec, PhysicalConstants};
use proptest::prelude::*;

fn alpha() -> impl Strategy<Value = f64> {
    1e-3..FRAC_PI_2
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coefficient_magnitudes_pair_up(n in 1u32..5000, a in alpha()) {
        let ratio_first = coeff_c(n, a).unwrap().abs() / coeff_a(n, a).unwrap().abs();
        let ratio_second = coeff_d(n, a).unwrap().abs() / coeff_b(n, a).unwrap().abs();
        prop_assert!((ratio_first - 1.0).abs() < 1e-14);
        prop_assert!((ratio_second - 1.0).abs() < 1e-14);
    }

    #[test]
    fn helstrom_matches_oracle(a in 0.0..=FRAC_PI_2) {
        let closed = helstrom_cost(a.cos().powi(2)).unwrap();
        prop_assert!((closed - helstrom_oracle(a).unwrap()).abs() < 1e-12);
        prop_assert!((0.0..=0.5).contains(&closed));
    }

    #[test]
    fn helstrom_monotone(x in 0.0..1.0f64, dx in 1e-9..1.0f64) {
        let y = (x + dx).min(1.0);
        prop_assume!(y > x);
        prop_assert!(helstrom_cost(y).unwrap() > helstrom_cost(x).unwrap());
    }

    #[test]
    fn ring_overlap_symmetric(p in -10.0..10.0f64, q in -10.0..10.0f64) {
        let (a, b) = (ring_state(p).unwrap(), ring_state(q).unwrap());
        prop_assert!((ring_overlap(&a, &b) - ring_overlap(&b, &a).conj()).norm() < 1e-15);
        prop_assert!(ring_state(p).unwrap().offset() < TAU);
    }

    #[test]
    fn expansion_weights_bounded(a in alpha(), n in 1usize..400) {
        let g = ChamberGeometry::new(a).unwrap();
        for which in Candidate::BOTH {
            let e = expand_candidate(which, &g, n, Exec::Sequential).unwrap();
            prop_assert!(e.deficit() > -1e-14 && e.deficit() < 1.0);
        }
    }

    #[test]
    fn evolution_preserves_norm_and_bounds_autocorrelation(a in alpha(), t in 0.0..50.0f64) {
        let g = ChamberGeometry::new(a).unwrap();
        let k = PhysicalConstants::default();
        let e = expand_candidate(Candidate::Phi, &g, 200, Exec::Sequential).unwrap();
        for chamber in Chamber::BOTH {
            let s = evolve(&e, chamber, t, &k).unwrap();
            prop_assert!((s.norm_sq() - e.chamber_weight(chamber)).abs() < 1e-14);
            prop_assert!(autocorrelation(&e, chamber, t, &k).unwrap().norm() <= 1.0 + 1e-14);
            let back = s.reverse(t).unwrap();
            for (c, x) in back.coefficients().iter().zip(e.normalized(chamber)) {
                prop_assert!((c.re - x).abs() < 1e-14 && c.im.abs() < 1e-14);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn extended_overlap_grows_with_epsilon(a in 0.05..(PI / 2.0), e1 in 0.0..1.0f64, e2 in 0.0..1.0f64) {
        let g = ChamberGeometry::new(a).unwrap();
        let phi = build_extended(&expand_candidate(Candidate::Phi, &g, 20, Exec::Sequential).unwrap()).unwrap();
        let psi = build_extended(&expand_candidate(Candidate::Psi, &g, 20, Exec::Sequential).unwrap()).unwrap();
        let (lo, hi) = if e1 <= e2 { (e1, e2) } else { (e2, e1) };
        let o_lo = extended_overlap(&phi, &psi, &BarrierModel::new(lo).unwrap()).unwrap().norm();
        let o_hi = extended_overlap(&phi, &psi, &BarrierModel::new(hi).unwrap()).unwrap().norm();
        prop_assert!(o_lo <= o_hi + 1e-15);
        // Barrier factors enter as ε² times the ε = 1 overlap.
        let full = extended_overlap(&phi, &psi, &BarrierModel::new(1.0).unwrap()).unwrap().norm();
        prop_assert!((o_hi - hi * hi * full).abs() < 1e-14);
        let self_ov = extended_overlap(&phi, &phi, &BarrierModel::new(hi).unwrap()).unwrap();
        prop_assert!((self_ov.re - 1.0).abs() < 1e-12);
    }
}
