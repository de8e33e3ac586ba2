use proptest::prelude::*;
use quarton::oracle::*;

fn inputs() -> impl Strategy<Value = OracleInputs<f64>> {
    (0.01f64..2.0, 0.01f64..2.0, 0.5f64..200.0, 0.5f64..200.0, 0.0f64..2000.0)
        .prop_map(|(a, b, ja, jb, q)| OracleInputs::new(a, b, ja, jb, q))
}

fn rel(x: f64, y: f64) -> f64 {
    if y == 0.0 {
        x.abs()
    } else {
        (x / y - 1.0).abs()
    }
}

proptest! {
    #[test]
    fn consistency_chain(i in inputs(), tilt in 0.0f64..100.0) {
        prop_assert!(rel(g_tilted(&i.with_tilt(0.0)), g_quarton(&i)) <= 1e-12);
        prop_assert!(rel(g_tilted(&i.with_tilt(i.e_q)), g_nonquarton(&i)) <= 1e-12);
        // tilt only ever lowers the coupling
        prop_assert!(g_tilted(&i.with_tilt(tilt)) <= g_quarton(&i) * (1.0 + 1e-12));
    }

    #[test]
    fn quarton_dominates_with_the_predicted_ratio(i in inputs()) {
        prop_assume!(i.e_q > 0.0);
        let (q, n) = (g_quarton(&i), g_nonquarton(&i));
        prop_assert!(q >= n);
        let want = ((1.0 + i.e_q / i.e_ja) * (1.0 + i.e_q / i.e_jb)).sqrt();
        prop_assert!(rel(q / n, want) <= 1e-12);
    }

    #[test]
    fn ratio_grows_with_coupler_energy(i in inputs(), k in 1.001f64..10.0) {
        prop_assume!(i.e_q > 0.0);
        let r = |x: &OracleInputs<f64>| g_quarton(x) / g_nonquarton(x);
        prop_assert!(r(&i.with_e_q(i.e_q * k)) > r(&i));
    }

    #[test]
    fn corrected_limit_is_bounded(i in inputs()) {
        let bound = 20.0 * (i.e_ca * i.e_cb).sqrt();
        prop_assert!(g_quarton_corrected(&i) <= bound);
    }

    #[test]
    fn self_kerr_vanishes_only_at_matching_energy(e_c in 0.01f64..2.0, e_j in 0.5f64..200.0, tilt in 0.0f64..50.0, e_q in 0.0f64..400.0) {
        let k = self_kerr(e_c, e_j, e_q, tilt).unwrap();
        prop_assert_eq!(k > 0.0, e_q > e_j);
        prop_assert_eq!(self_kerr(e_c, e_j, e_j, tilt).unwrap(), 0.0);
    }
}

#[test]
fn direct_evaluations() {
    let i = OracleInputs::<f64>::new(0.2, 0.2, 20.0, 20.0, 20.0);
    assert!((g_nonquarton(&i) - 0.2).abs() < 1e-15);
    assert!((g_quarton(&i) - 0.4).abs() < 1e-15);
    let k: f64 = self_kerr(0.2, 20.0, 30.0, 1.0).unwrap();
    assert!((k - 0.2 * 10.0 / 21.0).abs() < 1e-15);
    assert_eq!(self_kerr(0.2, 20.0, 0.0, 0.0).unwrap(), -0.2);
    assert!(self_kerr(0.2, 0.0, 1.0, 0.0).is_err());
}

#[test]
fn asymptotes() {
    let i = OracleInputs::new(0.2, 0.3, 20.0, 30.0, 0.0);
    let root = (0.2f64 * 0.3).sqrt();
    assert!(rel(g_nonquarton(&i.with_e_q(1e4 * 30.0)), 2.0 * root) < 1e-2);
    assert!(rel(g_quarton_corrected(&i.with_e_q(1e12)), 20.0 * root) < 1e-6);
    // typical transmon charging energy sets a 4 GHz ceiling
    let t = OracleInputs::new(0.2, 0.2, 20.0, 20.0, 1e15);
    assert!(rel(g_quarton_corrected(&t), 4.0) < 1e-9);
    // correction negligible when it is 1% of E_J
    let small = OracleInputs::new(0.2, 0.2, 20.0, 20.0, 2.0);
    assert!(rel(g_quarton_corrected(&small), g_quarton(&small)) < 1e-2);
}

#[test]
fn rejects_negative_inputs() {
    assert!(OracleInputs::new(0.2, 0.2, 20.0, 20.0, -1.0).validate().is_err());
    assert!(OracleInputs::new(0.2, 0.2, 20.0, f64::NAN, 1.0).validate().is_err());
    assert!(OracleInputs::new(0.2, 0.2, 20.0, 20.0, 1.0).validate().is_ok());
}
