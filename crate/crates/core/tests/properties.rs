mod common;

use std::f64::consts::PI;

use common::*;
use pharmonic::bloch::{self, CriticalPoint};
use pharmonic::geometry::{self, SamplingGrid};
use pharmonic::landau::{self, Theorem, DEFAULT_TOLERANCE};
use pharmonic::series::{colonna_dilation_bound, heinz_modulus_bound};
use pharmonic::variability;
use pharmonic::{mapfile, BiPolynomial, Complex64, HarmonicSeries, PHarmonicMap};
use proptest::prelude::*;

fn monomial_rule(q: &BiPolynomial, power: i32) -> BiPolynomial {
    BiPolynomial::from_terms(
        q.terms()
            .map(|((i, j), c)| ((i, j), c * (i as f64 - j as f64).powi(power))),
    )
}

fn starlike_g<R: rand::Rng>(rng: &mut R, degree: usize) -> HarmonicSeries {
    let mut g = HarmonicSeries::identity().padded(degree);
    for n in 2..=degree {
        g = g.with_z(n, random_complex(rng, 0.1 / (n * n) as f64));
    }
    for n in 1..=degree {
        g = g.with_zbar(n, random_complex(rng, 0.1 / (n * n) as f64));
    }
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn p_fold_laplacian_annihilates(map in map_strategy(5, 8)) {
        let q = map.to_bipoly();
        prop_assert!(q.laplacian_iter(map.p() as u32).is_zero());
        prop_assert!(map.apply_d().to_bipoly().laplacian_iter(map.p() as u32).is_zero());
    }

    #[test]
    fn d_operator_matches_monomial_rule(map in map_strategy(4, 8)) {
        let q = map.to_bipoly();
        let once = map.apply_d();
        prop_assert_eq!(once.to_bipoly(), monomial_rule(&q, 1));
        prop_assert_eq!(once.apply_d().to_bipoly(), monomial_rule(&monomial_rule(&q, 1), 1));
        let squared = monomial_rule(&q, 2);
        for ((i, j), c) in once.apply_d().to_bipoly().terms() {
            prop_assert!((c - squared.coeff(i, j)).norm() <= 1e-12 * c.norm());
        }
        prop_assert_eq!(q.apply_d(), monomial_rule(&q, 1));
    }

    #[test]
    fn wirtinger_matches_central_differences(
        map in map_strategy(3, 8),
        z in disk_point_strategy(0.9),
    ) {
        let h = 1e-5;
        let fx = (map.eval(z + cx(h, 0.0)) - map.eval(z - cx(h, 0.0))) / (2.0 * h);
        let fy = (map.eval(z + cx(0.0, h)) - map.eval(z - cx(0.0, h))) / (2.0 * h);
        let i = Complex64::i();
        let jet = map.wirtinger(z);
        prop_assert!((jet.f_z - (fx - i * fy) / 2.0).norm() <= 1e-6);
        prop_assert!((jet.f_zbar - (fx + i * fy) / 2.0).norm() <= 1e-6);
        prop_assert!((jet.f - map.eval(z)).norm() <= 1e-12 * (1.0 + jet.f.norm()));
    }

    #[test]
    fn metrics_are_consistent(map in map_strategy(3, 6), z in disk_point_strategy(0.95)) {
        let m = map.metrics(z);
        prop_assert!(m.big_lambda >= m.lambda.abs() - 1e-15);
        prop_assert!((m.jacobian - m.lambda * m.big_lambda).abs() <= 1e-9 * (1.0 + m.big_lambda.powi(2)));
    }

    #[test]
    fn map_file_round_trips(map in map_strategy(4, 6)) {
        let text = mapfile::to_text(&map);
        let back = mapfile::parse(&text).unwrap();
        prop_assert_eq!(back, map);
    }

    #[test]
    fn bloch_bound_is_homogeneous(p in 1u32..=6, m in 0.1..10.0f64, shift in -3i32..=3) {
        let c = 2f64.powi(shift);
        let base = bloch::bloch_upper_bound(p, m).unwrap().bound;
        prop_assert_eq!(bloch::bloch_upper_bound(p, c * m).unwrap().bound, c * base);
    }

    #[test]
    fn bloch_bound_scales_linearly(p in 1u32..=6, m in 0.1..10.0f64, c in 0.1..10.0f64) {
        let base = bloch::bloch_upper_bound(p, m).unwrap().bound;
        let scaled = bloch::bloch_upper_bound(p, c * m).unwrap().bound;
        prop_assert!((scaled - c * base).abs() <= 4.0 * f64::EPSILON * scaled);
    }

    #[test]
    fn heinz_and_colonna_hold(s in series_strategy(8), z in disk_point_strategy(0.999)) {
        let s = HarmonicSeries::new(cx(0.0, 0.0), s.z_coeffs().to_vec(), s.zbar_coeffs().to_vec()).unwrap();
        prop_assume!(s.abs_coeff_sum() > 1e-6);
        let s = s.scaled(cx(1.0 / s.abs_coeff_sum(), 0.0));
        let r = z.norm();
        prop_assert!(s.eval(z).norm() <= heinz_modulus_bound(r) + 1e-9);
        let dil = s.eval_d_z(z).norm() + s.eval_d_zbar(z).norm();
        prop_assert!(dil <= colonna_dilation_bound(r) + 1e-9);
    }

    #[test]
    fn seminorm_estimate_dominates_lower_quantity(map in map_strategy(3, 5)) {
        let grid = SamplingGrid::uniform(12, 48, 0.95).unwrap();
        let estimate = bloch::bloch_seminorm_estimate(&map, &grid);
        for z in grid.points() {
            let lower = (1.0 - z.norm_sqr()) * map.metrics(z).lambda.abs();
            prop_assert!(lower <= estimate.sup_value + 1e-12);
        }
    }

    #[test]
    fn truncated_mobius_within_tail_bound(
        p in 2usize..=5,
        a in disk_point_strategy(0.95),
        z in disk_point_strategy(0.999),
        terms in 5usize..=40,
    ) {
        let member = variability::mobius_member(p, a, terms).unwrap();
        let err = (member.closed_form(z) - member.truncated.eval(z)).norm();
        prop_assert!(err <= member.tail_bound + 1e-12);
        prop_assert_eq!(variability::normalization_check(&member.truncated, p), 0.0);
    }

    #[test]
    fn perturbed_constant_one_leaves_the_disk(
        perturbation in prop::collection::vec(complex_strategy(), 1..=6),
        conj in any::<bool>(),
    ) {
        prop_assume!(perturbation.iter().any(|v| v.norm() > 1e-3));
        let zeros = vec![cx(0.0, 0.0); perturbation.len()];
        let (c, d) = if conj { (zeros, perturbation) } else { (perturbation, zeros) };
        let s = HarmonicSeries::new(cx(1.0, 0.0), c, d).unwrap();
        prop_assert!(variability::parseval_sum(&s) > 1.0);
        prop_assert!(s.sampled_sup(1.0, 4096) > 1.0);
    }
}

#[test]
fn weighted_maps_share_starlike_margins_with_their_seed() {
    let mut rng = rng(11);
    let grid = SamplingGrid::uniform(24, 96, 0.95).unwrap();
    for _ in 0..20 {
        let g = starlike_g(&mut rng, 6);
        let lambdas: Vec<Complex64> = (0..3)
            .map(|_| cx(rand::Rng::gen_range(&mut rng, 0.1..2.0), 0.0))
            .collect();
        let f = geometry::weighted_sum_map(&g, &lambdas).unwrap();
        let seed = geometry::starlike_report(&PHarmonicMap::harmonic(g.clone()), &grid);
        let weighted = geometry::starlike_report(&f, &grid);
        assert_eq!(seed.passed, weighted.passed);
        assert!((seed.min_margin - weighted.min_margin).abs() <= 1e-10);
    }
}

#[test]
fn convexity_margin_is_starlike_margin_of_d() {
    let mut rng = rng(12);
    let grid = SamplingGrid::uniform(24, 96, 0.95).unwrap();
    let mut convex_seen = 0;
    for _ in 0..20 {
        let g = starlike_g(&mut rng, 5);
        let f = geometry::build_weighted_map(&g, 2).unwrap();
        let convex = geometry::convex_report(&f, &grid);
        if convex.passed {
            convex_seen += 1;
            let star = geometry::starlike_report(&f.apply_d(), &grid);
            assert!((star.min_margin - convex.min_margin).abs() <= 1e-10);
        }
    }
    assert!(convex_seen > 0);
}

#[test]
fn landau_equations_decrease_on_fine_grid() {
    for m in [1.0, 1.5, 2.0, 3.0, 5.0] {
        let rhos: Vec<f64> = (1..=10_000).map(|i| 0.999 * i as f64 / 10_001.0).collect();
        let p42: Vec<f64> = rhos
            .iter()
            .map(|&r| landau::p_thm42(r, m).unwrap())
            .collect();
        assert!(p42.windows(2).all(|w| w[1] < w[0]), "thm 4.2 M={m}");
        for p in 1..=5 {
            let p41: Vec<f64> = rhos
                .iter()
                .map(|&r| landau::p_thm41(r, m, p).unwrap())
                .collect();
            assert!(p41.windows(2).all(|w| w[1] < w[0]), "thm 4.1 M={m} p={p}");
        }
    }
}

#[test]
fn landau_branches_are_continuous() {
    let k = landau::constants();
    let eps = 1e-12;
    let gap = (landau::lambda0(k.m0 + eps).unwrap() - landau::lambda0(k.m0).unwrap()).abs();
    assert!(gap <= 1e-6);
    let gap = (landau::t_of_m(k.m1 + eps).unwrap() - landau::t_of_m(k.m1).unwrap()).abs();
    assert!(gap <= 1e-6);
}

#[test]
fn landau_radii_decrease_in_m_and_residuals_are_small() {
    for theorem in [Theorem::Thm41, Theorem::Thm42] {
        for p in 1..=4 {
            let rows: Vec<_> = landau::TABLE_MS
                .iter()
                .map(|&m| landau::solve(theorem, m, p, DEFAULT_TOLERANCE).unwrap())
                .collect();
            for w in rows.windows(2) {
                assert!(w[1].rho < w[0].rho && w[1].r < w[0].r, "{theorem} p={p}");
            }
            assert!(rows.iter().all(|r| r.residual.abs() <= 1e-10));
        }
    }
}

#[test]
fn thm42_radius_scales_with_rho_squared() {
    for m in landau::TABLE_MS {
        let rows: Vec<_> = (1..=5)
            .map(|p| landau::solve_thm42(m, p, DEFAULT_TOLERANCE).unwrap())
            .collect();
        for w in rows.windows(2) {
            assert_eq!(w[0].rho, w[1].rho);
            let ratio = w[1].r / w[0].r;
            assert!((ratio - w[0].rho * w[0].rho).abs() <= 1e-12 * ratio);
        }
    }
}

#[test]
fn phi_prime_matches_finite_differences() {
    let h = 1e-3;
    for p in 1..=6 {
        for i in 1..100 {
            let y = i as f64 / 100.0;
            let f = |t: f64| bloch::phi(p, y + t * h).unwrap();
            let fd = (f(-2.0) - 8.0 * f(-1.0) + 8.0 * f(1.0) - f(2.0)) / (12.0 * h);
            assert!(
                (bloch::phi_prime(p, y).unwrap() - fd).abs() <= 1e-8,
                "p={p} y={y}"
            );
        }
    }
}

#[test]
fn phi_has_a_single_interior_maximum() {
    for p in 2..=6 {
        let ys: Vec<f64> = (1..10_000).map(|i| i as f64 / 10_000.0).collect();
        let signs: Vec<bool> = ys
            .iter()
            .map(|&y| bloch::phi_prime(p, y).unwrap() > 0.0)
            .collect();
        let changes = signs.windows(2).filter(|w| w[0] != w[1]).count();
        assert_eq!(changes, 1, "p={p}");
        assert!(signs[0] && !signs[signs.len() - 1]);
        let bound = bloch::bloch_upper_bound(p, 1.0).unwrap();
        assert!(matches!(bound.y_star, CriticalPoint::Maximum(_)));
        for &y in &ys {
            assert!(bloch::phi(p, y).unwrap() <= bound.phi_at_star + 1e-12);
        }
    }
}

#[test]
fn layer_sum_form_agrees_with_jet() {
    let mut rng = rng(21);
    for _ in 0..100 {
        let p = rand::Rng::gen_range(&mut rng, 1..=4);
        let map = random_map(&mut rng, p, 6, 1.0);
        let z = random_in_disk(&mut rng, 0.95);
        let jet = map.metrics(z).big_lambda;
        let layered = bloch::layer_sum_dilation(&map, z);
        assert!(
            (jet - layered).abs() <= 1e-10 * (1.0 + jet),
            "{jet} vs {layered}"
        );
    }
}

#[test]
fn hyperbolic_quotient_is_bounded_by_seminorm() {
    let mut rng = rng(22);
    let grid = SamplingGrid::uniform(200, 256, 0.99).unwrap();
    for _ in 0..10 {
        let map = random_map(&mut rng, 2, 4, 0.5);
        let sup = bloch::bloch_seminorm_estimate(&map, &grid).sup_value;
        for _ in 0..20 {
            let z = random_in_disk(&mut rng, 0.9);
            let w = random_in_disk(&mut rng, 0.9);
            let quotient = bloch::hyperbolic_quotient(&map, z, w).unwrap();
            assert!(quotient <= sup * 1.01, "{quotient} > {sup}");
        }
    }
}

#[test]
fn parameter_map_is_injective_onto_the_disk() {
    let params = variability::polar_disk_grid(600, 0.998);
    for p in 2..=4 {
        let z0 = cx(0.3, -0.2);
        let values: Vec<Complex64> = params
            .iter()
            .map(|&a| variability::mobius_member(p, a, 5).unwrap().closed_form(z0))
            .collect();
        assert!(values.iter().all(|v| v.norm() <= 1.0 + 1e-12));
        for (i, u) in values.iter().enumerate() {
            for v in &values[i + 1..] {
                assert!((u - v).norm() > 1e-9);
            }
        }
    }
}

#[test]
fn mobius_members_lie_in_the_class() {
    let mut rng = rng(23);
    for _ in 0..30 {
        let p = rand::Rng::gen_range(&mut rng, 2..=5);
        let a = random_in_disk(&mut rng, 0.8);
        let member = variability::mobius_member(p, a, 200).unwrap();
        let report = variability::membership_check(&member.truncated, p);
        assert!(report.member, "p={p} a={a} sup={}", report.sampled_sup);
    }
}

#[test]
fn heinz_bound_is_attained_in_the_limit_by_the_extremal_map() {
    let s = pharmonic::series::extremal_lemma1(1, 1.0, cx(1.0, 0.0), cx(1.0, 0.0), 400).unwrap();
    let r: f64 = 0.5;
    let value = s.eval(cx(0.0, r)).norm();
    assert!((value - heinz_modulus_bound(r)).abs() < 1e-12);
    assert!(4.0 / PI * r.atan() - value >= -1e-12);
}
