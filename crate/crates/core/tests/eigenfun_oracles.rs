mod common;

use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use symspec::catalog::lookup;
use symspec::eigenfun::{
    conjugate_matrix_polynomial, cpn_section, euclidean_laplacian, family_generators, hpn_restrict, hpn_section,
    mixed_laplacian, restrict_conjugate, sample_cp_parameters, sample_hp_parameters,
    sample_sun_parameters, sun_family, verify_family, OVERSAMPLING,
};
use symspec::polyalg::{apply_box, span_rank, GaussianRational, Polynomial};
use symspec::rootsys::{build_root_system, weyl_dim, Family};
use symspec::spectrum::multiplicity_closed;

fn conj(v: &[GaussianRational]) -> Vec<GaussianRational> {
    v.iter().map(GaussianRational::conj).collect()
}

fn cp_family(n: usize, k: u32, count: usize, seed: u64) -> Vec<Polynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (a, b) = sample_cp_parameters(&mut rng, n);
            restrict_conjugate(&cpn_section(&a, &b, k).unwrap()).unwrap()
        })
        .collect()
}

fn hp_family(n: usize, k: u32, count: usize, seed: u64) -> Vec<Polynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (a, b) = sample_hp_parameters(&mut rng, n);
            hpn_restrict(&hpn_section(&a, &b, k).unwrap()).unwrap()
        })
        .collect()
}

fn sun_generators(p: u32, q: u32, count: usize, seed: u64) -> Vec<Polynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let (a, b) = sample_sun_parameters(&mut rng, 3);
            sun_family(&a, &b, p, q, 3).unwrap()
        })
        .collect()
}

#[test]
fn cp_sections_are_annihilated() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for n in 1..=3 {
        for k in 1..=3 {
            for _ in 0..3 {
                let (a, b) = sample_cp_parameters(&mut rng, n);
                let p = cpn_section(&a, &b, k).unwrap();
                assert!(mixed_laplacian(&p).unwrap().is_zero(), "n={n} k={k}");
                let r = restrict_conjugate(&p).unwrap();
                assert!(euclidean_laplacian(&r).unwrap().is_zero(), "n={n} k={k}");
            }
        }
    }
}

#[test]
fn hp_sections_are_annihilated() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for n in 1..=2 {
        for k in 1..=3 {
            for _ in 0..2 {
                let (a, b) = sample_hp_parameters(&mut rng, n);
                let p = hpn_section(&a, &b, k).unwrap();
                assert!(apply_box(&p, n).unwrap().is_zero(), "n={n} k={k}");
            }
        }
    }
}

#[test]
fn cp_ranks_equal_multiplicities() {
    for (n, k) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let space = lookup("CP^n", Some(n)).unwrap();
        let m = multiplicity_closed(&space, k).unwrap().to_usize().unwrap();
        let family = cp_family(n, k, OVERSAMPLING * m, 10 + n as u64);
        assert_eq!(span_rank(&family, 1).unwrap(), m, "n={n} k={k}");
    }
}

#[test]
fn cp2_rank_over_forty_generators() {
    let family = cp_family(2, 1, 40, 77);
    for seed in [1, 2, 3] {
        assert_eq!(span_rank(&family, seed).unwrap(), 8);
    }
    assert_eq!(common::linalg::coefficient_rank(&family), 8);
}

#[test]
fn hp1_rank_is_five() {
    let family = hp_family(1, 1, 25, 8);
    for seed in [1, 2, 3] {
        assert_eq!(span_rank(&family, seed).unwrap(), 5);
    }
    assert_eq!(common::linalg::coefficient_rank(&family), 5);
}

#[test]
fn su3_ranks_equal_weyl_dimensions() {
    let a2 = build_root_system(Family::A, 2).unwrap();
    for (p, q) in [(1u32, 0u32), (0, 1), (1, 1)] {
        let w = a2.weight(&[2 * i64::from(q), 2 * i64::from(p)]).unwrap();
        let dim = weyl_dim(&a2, &w).unwrap().to_usize().unwrap();
        let family = sun_generators(p, q, OVERSAMPLING * dim, 5);
        assert_eq!(span_rank(&family, 1).unwrap(), dim, "(p,q)=({p},{q})");
        assert_eq!(common::linalg::coefficient_rank_mod_p(&family), dim);
    }
}

#[test]
fn conjugation_swaps_the_family() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for (p, q) in [(1, 0), (1, 1), (2, 1), (0, 2)] {
        let (a, b) = sample_sun_parameters(&mut rng, 3);
        let f = sun_family(&a, &b, p, q, 3).unwrap();
        let swapped = sun_family(&conj(&b), &conj(&a), q, p, 3).unwrap();
        assert_eq!(conjugate_matrix_polynomial(&f, 3).unwrap(), swapped);
    }
}

#[test]
fn verify_su3_so3() {
    let space = lookup("SU3/SO3", None).unwrap();
    let report = verify_family(&space, &[1, 1], 2).unwrap();
    assert!(report.passed(), "{report:#?}");
    assert_eq!(report.rank, Some(27));
    assert!(report.check("casimir_normalization").unwrap().passed);
}

#[test]
fn verify_reports_are_deterministic() {
    let space = lookup("CP^n", Some(1)).unwrap();
    let a = verify_family(&space, &[2], 6).unwrap();
    let b = verify_family(&space, &[2], 6).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.rank, Some(5));
}

#[test]
fn family_generators_match_verification() {
    let space = lookup("HP^n", Some(1)).unwrap();
    let report = verify_family(&space, &[2], 4).unwrap();
    let gens = family_generators(&space, &[2], report.generators, 4).unwrap();
    assert!(gens.iter().all(|f| euclidean_laplacian(f).unwrap().is_zero()));
    assert_eq!(Some(span_rank(&gens, 4).unwrap()), report.rank);
    let prefix = family_generators(&space, &[2], 3, 4).unwrap();
    assert_eq!(prefix[..], gens[..3]);
    assert!(family_generators(&lookup("CaP2", None).unwrap(), &[1], 1, 0).is_err());
}
