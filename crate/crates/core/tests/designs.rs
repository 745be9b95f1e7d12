//! Design-level properties of the fiducial constructions.

use std::collections::BTreeSet;

use isomub::fiducials::{fiducial_mub_field, FiducialRecipe};
use isomub::finite_field::{FieldElement, FieldSpec};
use isomub::measures::{bound_mub, bound_sic, magick, StateRef};
use isomub::states::{schmidt_coefficients, DigitOrder};
use isomub::verify::{partition_orbit, verify_isoentangled, verify_mub};
use isomub::wh::wh_orbit;
use isomub::{DensityOperator, DimProfile, StateVector, WhGroup, WhIndex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// `|⟨ψ|W_KL|ψ⟩|²` is `0` for `K = 0, L ≠ 0` and `1/d` for `K ≠ 0`.
fn assert_overlap_pattern(s: &StateVector) {
    let group = WhGroup::new(s.profile());
    let d = s.dim();
    for kk in 0..d {
        for ll in 0..d {
            if kk == 0 && ll == 0 {
                continue;
            }
            let v = group.expectation(s, &WhIndex::from_flat(s.profile(), kk, ll)).unwrap().norm_sqr();
            let want = if kk == 0 { 0.0 } else { 1.0 / d as f64 };
            assert!((v - want).abs() < 1e-10, "K={kk} L={ll}: {v}");
        }
    }
}

#[test]
fn field_fiducials_have_the_overlap_pattern() {
    for (p, n, a) in [(5, 1, 1), (7, 1, 3), (5, 2, 1), (7, 2, 2), (11, 2, 1)] {
        assert_overlap_pattern(&FiducialRecipe::field(p, n, a).state().unwrap());
    }
}

#[test]
fn ring_fiducials_have_the_overlap_pattern() {
    for (n, a) in [(1, 1), (2, 1), (2, 2), (3, 1)] {
        assert_overlap_pattern(&FiducialRecipe::ring(n, a).state().unwrap());
    }
}

#[test]
fn alltop_families_are_complete() {
    for p in [5u32, 7, 11] {
        for a in 1..p as i64 {
            let set = partition_orbit(&FiducialRecipe::field(p, 1, a).phase_state().unwrap()).unwrap();
            assert_eq!(set.len(), p as usize);
            assert!(verify_mub(&set, true, 1e-9).unwrap().passed, "p={p} a={a}");
        }
    }
}

#[test]
fn bases_are_equally_entangled() {
    for recipe in [FiducialRecipe::field(5, 2, 1), FiducialRecipe::ring(2, 1), FiducialRecipe::field(7, 2, 3)] {
        let set = partition_orbit(&recipe.phase_state().unwrap()).unwrap();
        let report = verify_isoentangled(set.states(), &[0], 1e-9).unwrap();
        assert!(report.passed, "{recipe:?}");
    }
}

#[test]
fn several_schmidt_spectra_at_forty_nine() {
    let spec = FieldSpec::new(7, 2, None).unwrap();
    let mut spectra = BTreeSet::new();
    for a in FieldElement::all(&spec).into_iter().filter(|a| !a.is_zero()) {
        let s = fiducial_mub_field(&spec, &a, DigitOrder::Big).unwrap().to_amplitudes();
        let key: Vec<i64> = schmidt_coefficients(&s, &[0]).unwrap().iter().map(|c| (c * 1e8).round() as i64).collect();
        spectra.insert(key);
    }
    assert!(spectra.len() >= 2, "{} spectra", spectra.len());
}

#[test]
fn magick_is_convex() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let p = DimProfile::new(vec![3, 3]).unwrap();
    for _ in 0..50 {
        let a = DensityOperator::random(9, rng.random_range(1..=9), &mut rng);
        let b = DensityOperator::random(9, rng.random_range(1..=9), &mut rng);
        let lambda: f64 = rng.random();
        let mix = a.mix(&b, lambda).unwrap();
        let ma = magick(StateRef::Mixed(&a, &p)).unwrap();
        let mb = magick(StateRef::Mixed(&b, &p)).unwrap();
        let mm = magick(StateRef::Mixed(&mix, &p)).unwrap();
        assert!(mm <= lambda * ma + (1.0 - lambda) * mb + 1e-9);
    }
}

#[test]
fn pure_state_magick_floor_and_ceiling() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    for dims in [vec![2, 2], vec![5], vec![2, 3]] {
        let p = DimProfile::new(dims).unwrap();
        let d = p.total();
        for _ in 0..200 {
            let m = magick(&StateVector::random(&p, &mut rng)).unwrap();
            assert!(m >= d as f64 - 1e-9 && m <= bound_sic(d) + 1e-9, "d={d} M={m}");
        }
    }
}

#[test]
fn mixed_state_magick_floor() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let p = DimProfile::new(vec![2, 2]).unwrap();
    for _ in 0..100 {
        let rho = DensityOperator::random(4, rng.random_range(1..=4), &mut rng);
        assert!(magick(StateRef::Mixed(&rho, &p)).unwrap() >= 1.0 - 1e-12);
    }
}

#[test]
fn fiducial_orbits_reach_the_mub_bound() {
    for recipe in [FiducialRecipe::field(7, 1, 2), FiducialRecipe::ring(3, 1)] {
        let s = recipe.state().unwrap();
        let d = s.dim();
        assert!((magick(&s).unwrap() - bound_mub(d)).abs() < 1e-8);
        // every orbit element shares the same magick
        for (_, t) in wh_orbit(&s).into_iter().step_by(37) {
            assert!((magick(&t).unwrap() - bound_mub(d)).abs() < 1e-8);
        }
    }
}
