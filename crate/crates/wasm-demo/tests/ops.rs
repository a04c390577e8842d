use pharmonic_wasm::ops;

#[test]
fn bloch_view_interleaves_curve() {
    let v = ops::bloch_view(3, 1.0, 5).unwrap();
    assert_eq!(v.curve.len(), 10);
    assert_eq!(v.curve[0], 0.0);
    assert_eq!(v.curve[8], 1.0);
    assert!((v.bound - 4.037006).abs() < 1e-5);
    assert!(v.y_star > 0.0 && v.y_star < 1.0);
}

#[test]
fn bloch_view_degenerate_p_one() {
    let v = ops::bloch_view(1, 2.0, 3).unwrap();
    assert!(v.y_star.is_nan());
    assert_eq!(v.bound, 8.0 / std::f64::consts::PI);
}

#[test]
fn bloch_view_rejects_bad_input() {
    assert!(ops::bloch_view(0, 1.0, 10).is_err());
    assert!(ops::bloch_view(2, -1.0, 10).is_err());
    assert!(ops::bloch_view(2, 1.0, 1).is_err());
}

#[test]
fn region_view_points_and_coverage() {
    let v = ops::region_view(2, 0.5, 0.0, 2000).unwrap();
    assert_eq!(v.points.len(), 4000);
    assert!(v.points.chunks(2).all(|w| w[0].hypot(w[1]) <= 1.0 + 1e-9));
    assert!(v.coverage_radius > 0.0 && v.coverage_radius < 0.2);
    assert!(ops::region_view(2, 1.0, 0.0, 10).is_err());
}

#[test]
fn landau_rows() {
    let [rho, r] = ops::landau_row(41, 2.0, 2).unwrap();
    assert!((rho - 0.0206783).abs() < 1e-6);
    assert!((r - 0.00227639).abs() < 1e-7);
    let [rho, _] = ops::landau_row(42, 3.0, 3).unwrap();
    assert!((rho - 0.0037942).abs() < 1e-6);
    assert!(ops::landau_row(43, 2.0, 2).is_err());
    assert!(ops::landau_row(41, 0.5, 2).is_err());
}
