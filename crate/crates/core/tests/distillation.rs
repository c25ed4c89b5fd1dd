use proptest::prelude::*;

use braidwork::calc::{
    crossover, distill_volume, distill_volume_with, output_error, scaling_volume, DistillationSpec, Protocol,
    ScalingModel, UniformDistance,
};

fn error(protocol: Protocol, levels: u32, p: f64) -> f64 {
    output_error(&DistillationSpec::new(protocol, levels, p)).unwrap().probability
}

#[test]
fn two_levels_of_a_at_one_percent() {
    let e = error(Protocol::A, 2, 0.01);
    let direct = 35.0 * (35.0 * 0.01f64.powi(3)).powi(3);
    assert!((e - direct).abs() <= direct * 1e-12);
    assert!((1.0e-12..=2.0e-12).contains(&e), "{e}");
}

#[test]
fn halving_the_input_at_two_levels_gains_512() {
    let ratio = error(Protocol::A, 2, 0.01) / error(Protocol::A, 2, 0.005);
    assert!((ratio - 512.0).abs() < 1e-9, "{ratio}");
}

#[test]
fn two_level_a_volume_is_552() {
    let v = distill_volume(&DistillationSpec::new(Protocol::A, 2, 0.01)).unwrap();
    assert_eq!(v.exact(), Some(552));
    assert_eq!(v.exact(), Some(192 + 15 * 192 / 8));
    assert!((v.cnot_units() - 46.0).abs() < 1e-12);
}

#[test]
fn two_level_y_volume_is_fractional() {
    let v = distill_volume(&DistillationSpec::new(Protocol::Y, 2, 0.01)).unwrap();
    // 18 + 7 * 18 / 8 in lowest terms.
    assert_eq!(v.numerator * 8, (18 * 8 + 7 * 18) * v.denominator);
    assert_eq!((v.numerator, v.denominator), (135, 4));
    assert_eq!(v.exact(), None);
}

#[test]
fn one_round_of_a_is_sixteen_cnots() {
    let v = distill_volume(&DistillationSpec::new(Protocol::A, 1, 0.01)).unwrap();
    assert_eq!(v.exact(), Some(192));
    assert_eq!(v.cnot_units(), 16.0);
}

#[test]
fn out_of_range_inputs_are_rejected() {
    for p in [0.0, 1.0, -0.1, f64::NAN] {
        assert!(output_error(&DistillationSpec::new(Protocol::Y, 1, p)).is_err());
    }
    assert!(output_error(&DistillationSpec::new(Protocol::Y, 0, 0.01)).is_err());
    assert!(distill_volume(&DistillationSpec::new(Protocol::A, 3, 0.01)).is_err());
    let three = distill_volume_with(&DistillationSpec::new(Protocol::A, 3, 0.01), &UniformDistance).unwrap();
    assert_eq!(three.exact(), Some(192 * (1 + 15 + 225)));
}

#[test]
fn topological_scaling_wins_eventually() {
    let (c, t) = (ScalingModel::concatenated(), ScalingModel::topological());
    let x = crossover(c, t).unwrap();
    assert!(scaling_volume(c, x * 4.0).unwrap() > scaling_volume(t, x * 4.0).unwrap());
    let l3 = scaling_volume(c, 8.0).unwrap();
    assert!((l3 - 1e9).abs() / 1e9 < 1e-9);
    assert_eq!(scaling_volume(t, 8.0).unwrap(), 512.0);
}

proptest! {
    #[test]
    fn halving_gains_two_to_the_three_to_the_levels(p in 1e-4f64..0.05, levels in 1u32..=2, a in any::<bool>()) {
        let protocol = if a { Protocol::A } else { Protocol::Y };
        let ratio = error(protocol, levels, p) / error(protocol, levels, p / 2.0);
        let want = 2f64.powi(3i32.pow(levels));
        prop_assert!((ratio / want - 1.0).abs() < 1e-9);
    }

    #[test]
    fn error_is_monotone_in_the_input(p in 1e-4f64..0.1, q in 1e-4f64..0.1) {
        prop_assume!(p < q);
        for protocol in [Protocol::Y, Protocol::A] {
            prop_assert!(error(protocol, 2, p) <= error(protocol, 2, q));
        }
    }
}
