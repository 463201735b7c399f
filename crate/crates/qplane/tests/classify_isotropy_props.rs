//! Randomized laws for the canonical decomposition and the isotropy
//! structures built on top of it.

mod common;

use common::{flip_derivation, flip_sigma, modes, toric_derivation, toric_sigma};
use qplane::classify::{decompose_flip, decompose_toric, ToricDecomposition};
use qplane::isotropy::{
    gamma_lattice, isotropy, member, snf_invariant_factors, CharacterLattice,
};
use num_integer::Integer;
use qplane::qalgebra::{Automorphism, QElem};
use qplane::skewder::SigmaDerivation;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[test]
fn toric_decomposition_round_trips() {
    let mut rng = StdRng::seed_from_u64(301);
    for mode in modes() {
        for _ in 0..60 {
            let sigma = toric_sigma(&mut rng, mode);
            let d = toric_derivation(&mut rng, &sigma);
            let dec = decompose_toric(&d).unwrap();
            assert_eq!(dec.recombine(), d);
            // Decomposing the recombination is the identity on canonical
            // decompositions.
            assert_eq!(decompose_toric(&dec.recombine()).unwrap(), dec);
        }
    }
}

#[test]
fn flip_decomposition_round_trips() {
    let mut rng = StdRng::seed_from_u64(302);
    let mode = qplane::FieldMode::root_of_unity(2).unwrap();
    for _ in 0..120 {
        let sigma = flip_sigma(&mut rng, mode);
        let d = flip_derivation(&mut rng, &sigma);
        let dec = decompose_flip(&d).unwrap();
        assert_eq!(dec.recombine(), d);
        assert_eq!(decompose_flip(&dec.recombine()).unwrap(), dec);
    }
}

#[test]
fn nonzero_component_families_are_individually_non_inner() {
    let mut rng = StdRng::seed_from_u64(303);
    for mode in modes() {
        for _ in 0..50 {
            let sigma = toric_sigma(&mut rng, mode);
            let d = toric_derivation(&mut rng, &sigma);
            let dec = decompose_toric(&d).unwrap();
            let zero = QElem::zero(mode);
            // Single-variable family alone.
            if !dec.a_poly().is_empty() || !dec.b_poly().is_empty() {
                let part = ToricDecomposition::from_parts(
                    sigma.clone(),
                    zero.clone(),
                    dec.a_poly().to_vec(),
                    dec.b_poly().to_vec(),
                    zero.clone(),
                    zero.clone(),
                )
                .recombine();
                assert!(part.is_inner().is_none());
            }
            // Central pair alone.
            if !dec.lambda1().is_zero() || !dec.lambda2().is_zero() {
                let part = ToricDecomposition::from_parts(
                    sigma.clone(),
                    zero.clone(),
                    vec![],
                    vec![],
                    dec.lambda1().clone(),
                    dec.lambda2().clone(),
                )
                .recombine();
                assert!(part.is_inner().is_none());
            }
        }
    }
}

#[test]
fn invariant_factors_are_stable_under_unimodular_column_moves() {
    let mut rng = StdRng::seed_from_u64(304);
    for _ in 0..300 {
        let n = rng.gen_range(0..5usize);
        let rows: Vec<(i64, i64)> =
            (0..n).map(|_| (rng.gen_range(-6..=6), rng.gen_range(-6..=6))).collect();
        let base = snf_invariant_factors(&CharacterLattice::from_vectors(rows.iter().copied()));
        // Random product of elementary unimodular column operations.
        let mut m = [[1i64, 0], [0, 1]];
        for _ in 0..rng.gen_range(1..5) {
            let k = rng.gen_range(-2..=2i64);
            if rng.gen_bool(0.5) {
                // (u, v) -> (u + k v, v)
                for r in &mut m {
                    r[0] += k * r[1];
                }
            } else {
                for r in &mut m {
                    r[1] += k * r[0];
                }
            }
            if rng.gen_bool(0.3) {
                for r in &mut m {
                    r.swap(0, 1);
                }
            }
        }
        let moved = rows
            .iter()
            .map(|&(u, v)| (u * m[0][0] + v * m[1][0], u * m[0][1] + v * m[1][1]));
        let transformed = snf_invariant_factors(&CharacterLattice::from_vectors(moved));
        assert_eq!(base.invariant_factors, transformed.invariant_factors, "rows {rows:?}");
    }
}

#[test]
fn invariant_factors_count_kernel_points_on_a_finite_grid() {
    // Independent oracle in modular arithmetic: the number of points of the
    // character kernel on the M x M torsion grid is gcd(d1, M) * gcd(d2, M),
    // with factor 0 meaning a full multiplicative-group factor (gcd = M).
    let mut rng = StdRng::seed_from_u64(305);
    const M: i64 = 12;
    for _ in 0..200 {
        let n = rng.gen_range(0..4usize);
        let rows: Vec<(i64, i64)> =
            (0..n).map(|_| (rng.gen_range(-6..=6), rng.gen_range(-6..=6))).collect();
        let s = snf_invariant_factors(&CharacterLattice::from_vectors(rows.iter().copied()));
        let brute = (0..M)
            .flat_map(|a| (0..M).map(move |b| (a, b)))
            .filter(|&(a, b)| rows.iter().all(|&(u, v)| (u * a + v * b).rem_euclid(M) == 0))
            .count() as u64;
        let expect_factor = |d: u64| if d == 0 { M as u64 } else { d.gcd(&(M as u64)) };
        let (d1, d2) = s.invariant_factors;
        assert_eq!(brute, expect_factor(d1) * expect_factor(d2), "rows {rows:?}");
    }
}

#[test]
fn structural_membership_matches_conjugation_for_toric_twists() {
    let mut rng = StdRng::seed_from_u64(306);
    for mode in modes() {
        for _ in 0..25 {
            let sigma = toric_sigma(&mut rng, mode);
            let d = toric_derivation(&mut rng, &sigma);
            let desc = isotropy(&d);
            for _ in 0..8 {
                let n = rng.gen_range(1..=6u32);
                let rho = Automorphism::toric(
                    mode,
                    mode.unity_root(n, rng.gen_range(0..i64::from(n))),
                    mode.unity_root(n, rng.gen_range(0..i64::from(n))),
                )
                .unwrap();
                assert_eq!(desc.admits(&rho), member(&rho, &d));
            }
        }
    }
}

#[test]
fn members_compose_and_invert_inside_the_isotropy_group() {
    let mut rng = StdRng::seed_from_u64(307);
    for mode in modes() {
        let mut checked = 0;
        for _ in 0..40 {
            let sigma = toric_sigma(&mut rng, mode);
            let d = toric_derivation(&mut rng, &sigma);
            let sample = |rng: &mut StdRng| {
                let n = rng.gen_range(1..=4u32);
                Automorphism::toric(
                    mode,
                    mode.unity_root(n, rng.gen_range(0..i64::from(n))),
                    mode.unity_root(n, rng.gen_range(0..i64::from(n))),
                )
                .unwrap()
            };
            let members: Vec<Automorphism> =
                (0..10).map(|_| sample(&mut rng)).filter(|r| member(r, &d)).collect();
            for r1 in &members {
                assert!(member(&r1.inverse(), &d));
                for r2 in &members {
                    checked += 1;
                    assert!(member(&r1.compose(r2), &d));
                }
            }
        }
        assert!(checked > 50, "too few members sampled ({checked})");
    }
}

#[test]
fn gamma_lattice_is_invariant_under_nonzero_scaling() {
    let mut rng = StdRng::seed_from_u64(308);
    for mode in modes() {
        for _ in 0..40 {
            let sigma = toric_sigma(&mut rng, mode);
            let d = toric_derivation(&mut rng, &sigma);
            let c = common::nonzero_scalar(&mut rng, mode);
            let lat = gamma_lattice(&decompose_toric(&d).unwrap());
            let lat_scaled = gamma_lattice(&decompose_toric(&d.scale(&c)).unwrap());
            assert_eq!(lat, lat_scaled);
        }
    }
}

#[test]
fn zero_derivation_has_the_full_torus_as_isotropy() {
    for mode in modes() {
        let sigma = Automorphism::toric(mode, mode.integer(3), mode.integer(5)).unwrap();
        let d = SigmaDerivation::zero(sigma);
        let desc = isotropy(&d);
        let part = desc.toric().unwrap();
        assert!(part.lattice.is_empty());
        assert_eq!(part.structure.invariant_factors, (0, 0));
        assert!(!part.structure.is_finite);
    }
}
