use std::f64::consts::{PI, SQRT_2};

use proptest::prelude::*;
use stabilab::bell::{
    chsh_of_mixture, chsh_planar, lhv_correlation, lhv_joint_probabilities, lhv_monte_carlo, singlet_correlation,
    DeterministicStrategy,
};
use stabilab::{CorrelationModel, Direction};

fn unit_vector() -> impl Strategy<Value = Direction> {
    (-1.0f64..1.0, 0.0f64..2.0 * PI).prop_map(|(z, phi)| {
        let r = (1.0 - z * z).sqrt();
        Direction::new(r * phi.cos(), r * phi.sin(), z).unwrap()
    })
}

proptest! {
    #[test]
    fn closed_form_lhv_never_violates(angles in proptest::array::uniform4(-PI..PI)) {
        let s = chsh_planar(angles, &CorrelationModel::LhvClosedForm).unwrap();
        prop_assert!(s <= 2.0 + 1e-9, "{}", s);
    }

    #[test]
    fn singlet_respects_tsirelson(angles in proptest::array::uniform4(-PI..PI)) {
        let s = chsh_planar(angles, &CorrelationModel::QuantumSinglet).unwrap();
        prop_assert!(s <= 2.0 * SQRT_2 + 1e-12);
    }

    #[test]
    fn correlations_are_bounded_and_symmetric(m in unit_vector(), n in unit_vector()) {
        let q = singlet_correlation(&m, &n);
        prop_assert!(q.abs() <= 1.0 + 1e-12);
        prop_assert!((q - singlet_correlation(&n, &m)).abs() < 1e-15);
        let l = lhv_correlation(m.angle_to(&n)).unwrap();
        prop_assert!(l.abs() <= 1.0);
        // The sign model agrees with quantum mechanics only at 0, π/2 and π.
        prop_assert!(l <= 0.0 || q >= 0.0);
    }

    #[test]
    fn probabilities_are_a_distribution(theta in 0.0f64..=PI) {
        let p = lhv_joint_probabilities(theta).unwrap();
        prop_assert!([p.pp, p.mm, p.pm, p.mp].iter().all(|&v| (0.0..=1.0).contains(&v)));
        prop_assert!((p.total() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn mixtures_of_deterministic_strategies_stay_below_two(weights in proptest::collection::vec(0.0f64..1.0, 16)) {
        prop_assume!(weights.iter().sum::<f64>() > 1e-6);
        let mixture: Vec<_> = weights.into_iter().zip(DeterministicStrategy::all()).collect();
        prop_assert!(chsh_of_mixture(&mixture) <= 2.0 + 1e-12);
    }
}

#[test]
fn monte_carlo_worker_count_only_changes_streams() {
    let (m, n) = (Direction::planar(0.3), Direction::planar(1.9));
    let one = lhv_monte_carlo(&m, &n, 200_000, 5, 1);
    let again = lhv_monte_carlo(&m, &n, 200_000, 5, 1);
    assert_eq!(one, again);
    let four = lhv_monte_carlo(&m, &n, 200_000, 5, 4);
    assert_eq!(four.samples, 200_000);
    let exact = lhv_correlation(m.angle_to(&n)).unwrap();
    for est in [one, four] {
        assert!((est.mean - exact).abs() < 5.0 * est.std_error);
    }
}
