mod oracle;

use num_rational::Rational64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ulam_lab::group::{folner_box, FiniteGroup, FreeGroup, Group, Lattice, LatticePoint, ProbMeasure, Word};
use ulam_lab::paradox::{standard_f2_decomposition, TarskiTable};
use ulam_lab::rep_maps::{defect, pd_defect, perturb_representation, proximity, regular_representation, PairScan};
use ulam_lab::stability::{amenable_correction, check_condition5, VectorFamily};

#[test]
fn free_group_axioms_on_small_balls() {
    let g = FreeGroup::f2();
    let ball = g.ball(2).unwrap();
    for x in &ball {
        assert!(g.is_identity(&g.mul(x, &g.inv(x))));
        for y in &ball {
            for z in &ball {
                assert_eq!(g.mul(&g.mul(x, y), z), g.mul(x, &g.mul(y, z)));
            }
        }
    }
}

#[test]
fn free_group_balls_match_brute_force() {
    let g = FreeGroup::f2();
    for r in 0..=6 {
        let ours: Vec<String> = g.ball(r).unwrap().iter().map(Word::to_string).collect();
        let mut brute: Vec<String> = oracle::f2_ball(r).iter().map(|w| oracle::render(w)).collect();
        let mut sorted = ours.clone();
        sorted.sort();
        brute.sort();
        assert_eq!(sorted, brute, "r = {r}");
        let expected = 1 + (1..=r).map(|k| 4 * 3usize.pow(k as u32 - 1)).sum::<usize>();
        assert_eq!(ours.len(), expected);
    }
}

#[test]
fn lattice_box_shift_is_exact() {
    let z = Lattice::new(2).unwrap();
    for r in 0..=5usize {
        let mu: ProbMeasure<LatticePoint, Rational64> = folner_box(2, r).unwrap();
        for s in z.generators() {
            let shifted = mu.translate(&z, &s);
            assert_eq!(shifted.l1_distance(&mu), Rational64::new(2, 2 * r as i64 + 1));
        }
        assert!((oracle::box_shift_defect(2, r as i64) - 2.0 / (2 * r + 1) as f64).abs() < 1e-15);
    }
}

#[test]
fn unperturbed_maps_are_fixed_points() {
    let g = FiniteGroup::dihedral(4).unwrap();
    let pi = regular_representation::<f64>(&g).unwrap();
    let phi = perturb_representation(&pi, 0.0, 1).unwrap();
    let psi = amenable_correction(&phi.map).unwrap();
    assert!(proximity(&phi.map, &psi).unwrap() < 1e-14);
    let all: Vec<usize> = (0..8).collect();
    assert!(pd_defect(&psi, &all, 1e-9).unwrap().min_eigenvalue >= -1e-12);
}

#[test]
fn single_precision_pipeline() {
    let g = FiniteGroup::cyclic(5).unwrap();
    let pi = regular_representation::<f32>(&g).unwrap();
    let phi = perturb_representation(&pi, 0.05f32, 3).unwrap();
    let psi = amenable_correction(&phi.map).unwrap();
    assert!(proximity(&phi.map, &psi).unwrap() <= phi.defect + 1e-5);
    let all: Vec<usize> = (0..5).collect();
    assert!(pd_defect(&psi, &all, 1e-4).unwrap().verdict);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let xi = VectorFamily::random(vec![1, 2], 2, 5, &mut rng).unwrap();
    let zeta = VectorFamily::random(vec![1, 2], 2, 5, &mut rng).unwrap();
    assert!(check_condition5(&phi.map, &psi, &xi, &zeta, &all).unwrap().witness_y.is_some());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn correction_stays_within_defect(seed in 0u64..10_000, eps in 0.0f64..0.3, which in 0usize..3) {
        let g = [FiniteGroup::cyclic(4).unwrap(), FiniteGroup::symmetric(3).unwrap(), FiniteGroup::dihedral(3).unwrap()][which].clone();
        let pi = regular_representation::<f64>(&g).unwrap();
        let phi = perturb_representation(&pi, eps, seed).unwrap();
        let measured = defect(&phi.map, &PairScan::Domain).unwrap().epsilon;
        prop_assert!((measured - phi.defect).abs() < 1e-12);
        let psi = amenable_correction(&phi.map).unwrap();
        prop_assert!(proximity(&phi.map, &psi).unwrap() <= measured + 1e-12);
        let all: Vec<usize> = (0..g.order()).collect();
        prop_assert!(pd_defect(&psi, &all, 1e-9).unwrap().min_eigenvalue >= -1e-9);
    }

    #[test]
    fn partition_identity_for_rational_measures(weights in proptest::collection::vec(1i64..50, 17)) {
        let dec = standard_f2_decomposition();
        let support = FreeGroup::f2().ball(2).unwrap();
        let total: i64 = weights.iter().sum();
        let w: Vec<Rational64> = weights.iter().map(|&k| Rational64::new(k, total)).collect();
        let table = TarskiTable::new(&dec, support).unwrap();
        let (translates, pieces) = table.partition_sums(&w);
        prop_assert_eq!(translates, Rational64::from_integer(2));
        prop_assert!(pieces <= Rational64::from_integer(1));
        prop_assert!(table.defect(&w) >= Rational64::from_integer(1));
    }

    #[test]
    fn tarski_defect_matches_reference(seed in any::<u64>()) {
        let dec = standard_f2_decomposition();
        let ball = FreeGroup::f2().ball(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mu = ProbMeasure::dirichlet(ball.clone(), &mut rng).unwrap();
        let ours = ulam_lab::paradox::tarski_defect(&mu, &dec).unwrap();
        let lookup: std::collections::HashMap<String, oracle::Letters> =
            oracle::f2_ball(3).into_iter().map(|w| (oracle::render(&w), w)).collect();
        let pairs: Vec<(oracle::Letters, f64)> = mu.iter().map(|(w, &p)| (lookup[&w.to_string()].clone(), p)).collect();
        prop_assert!((ours - oracle::first_letter_defect(&pairs)).abs() < 1e-12);
        prop_assert!(ours >= 1.0 - 1e-9);
    }
}
