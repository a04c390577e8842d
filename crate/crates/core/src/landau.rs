//! Landau-type radii for `D(f)` where `f` is p-harmonic.
//!
//! Two radius equations are solved by bisection. Both left-hand sides start
//! at `λ₀(M) > 0` for `ρ = 0` and decrease to `−∞` as `ρ → 1`, so the root
//! in `(0, 1)` is unique.
//!
//! * Layered maps `f = Σ |z|^{2(k-1)} G_{p-k+1}`:
//!   `P(ρ) = λ₀(M) − T(M)/(1−ρ)² Σ_{k=2}^{p} (2k−1) ρ^{2(k-1)}
//!          − Σ_{k=1}^{p} 2T(M) ρ^{2k-1}/(1−ρ)³ − (16M/π²) s₀ arctan ρ`,
//!   with `R = ρ [λ₀(M) − Σ_{k=2}^{p} T(M) ρ^{2(k-1)}/(1−ρ)² − (16M/π²) s₀ arctan ρ]`.
//! * Single-layer maps `f = |z|^{2(p-1)} G`:
//!   `P(ρ) = λ₀(M) − (48M/π²) s₀ arctan ρ − 2T(M) ρ/(1−ρ)³`,
//!   with `R = ρ^{2p-1} [λ₀(M) − (16M/π²) s₀ arctan ρ]`.

use std::f64::consts::{PI, SQRT_2};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{PHarmonicMap, PREMISE_RADIUS};

/// Lower end of the bisection bracket; the upper end is `1 − BRACKET_MARGIN`.
pub const BRACKET_MARGIN: f64 = 1e-9;
pub const MAX_ITERATIONS: usize = 200;
/// Default stopping width of the bisection interval.
pub const DEFAULT_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Theorem {
    /// Layered maps, `f = Σ |z|^{2(k-1)} G_{p-k+1}`.
    Thm41,
    /// Single weighted layer, `f = |z|^{2(p-1)} G`.
    Thm42,
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theorem::Thm41 => "41",
            Theorem::Thm42 => "42",
        })
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "41" | "4.1" | "thm41" | "Thm41" => Ok(Theorem::Thm41),
            "42" | "4.2" | "thm42" | "Thm42" => Ok(Theorem::Thm42),
            _ => Err(Error::invalid("theorem", "must be 41 or 42")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LandauConstants {
    /// Breakpoint of `λ₀`: `π / (2 (2π² − 16)^{1/4})`.
    pub m0: f64,
    /// Breakpoint of `T`: `π / √(π² − 8)`.
    pub m1: f64,
    /// `min_{0<x<1} q(x)` with `q(x) = (2 − x²)/((1 − x²) x)`.
    pub s0: f64,
    /// The minimiser `√((5 − √17)/2)`.
    pub r0: f64,
}

pub fn constants() -> LandauConstants {
    let sqrt17 = 17f64.sqrt();
    LandauConstants {
        m0: PI / (2.0 * (2.0 * PI * PI - 16.0).powf(0.25)),
        m1: PI / (PI * PI - 8.0).sqrt(),
        s0: (sqrt17 - 1.0) / (sqrt17 - 3.0) * (2.0 / (5.0 - sqrt17)).sqrt(),
        r0: ((5.0 - sqrt17) / 2.0).sqrt(),
    }
}

/// `q(x) = (2 − x²)/((1 − x²) x)` on `(0, 1)`.
pub fn q(x: f64) -> f64 {
    (2.0 - x * x) / ((1.0 - x * x) * x)
}

fn check_m(m: f64) -> Result<()> {
    if m >= 1.0 && m.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid("M", "must be ≥ 1"))
    }
}

fn check_p(p: u32) -> Result<()> {
    if p >= 1 {
        Ok(())
    } else {
        Err(Error::invalid("p", "must be ≥ 1"))
    }
}

fn check_rho(rho: f64) -> Result<()> {
    if (0.0..1.0).contains(&rho) {
        Ok(())
    } else {
        Err(Error::invalid("rho", "must lie in [0, 1)"))
    }
}

/// Lower bound for `λ_f(0)` of a harmonic `f` with `J_f(0) = 1`, `|f| < M`.
pub fn lambda0(m: f64) -> Result<f64> {
    check_m(m)?;
    Ok(if m <= constants().m0 {
        SQRT_2 / ((m * m - 1.0).sqrt() + (m * m + 1.0).sqrt())
    } else {
        PI / (4.0 * m)
    })
}

/// Coefficient bound `|a_n| + |b_n| ≤ T(M)` for `n ≥ 2`.
pub fn t_of_m(m: f64) -> Result<f64> {
    check_m(m)?;
    Ok(if m <= constants().m1 {
        (2.0 * m * m - 2.0).sqrt()
    } else {
        4.0 * m / PI
    })
}

fn arctan_term(m: f64, rho: f64) -> f64 {
    16.0 * m / (PI * PI) * constants().s0 * rho.atan()
}

pub fn p_thm41(rho: f64, m: f64, p: u32) -> Result<f64> {
    check_rho(rho)?;
    check_p(p)?;
    let lam = lambda0(m)?;
    let t = t_of_m(m)?;
    let one_minus = 1.0 - rho;
    let weighted: f64 = (2..=p)
        .map(|k| (2 * k - 1) as f64 * rho.powi(2 * (k as i32 - 1)))
        .sum();
    let odd: f64 = (1..=p).map(|k| rho.powi(2 * k as i32 - 1)).sum();
    Ok(lam
        - t / (one_minus * one_minus) * weighted
        - 2.0 * t * odd / one_minus.powi(3)
        - arctan_term(m, rho))
}

pub fn p_thm42(rho: f64, m: f64) -> Result<f64> {
    check_rho(rho)?;
    let lam = lambda0(m)?;
    let t = t_of_m(m)?;
    Ok(lam - 3.0 * arctan_term(m, rho) - 2.0 * t * rho / (1.0 - rho).powi(3))
}

fn r_thm41(rho: f64, m: f64, p: u32) -> Result<f64> {
    let t = t_of_m(m)?;
    let weighted: f64 = (2..=p)
        .map(|k| t * rho.powi(2 * (k as i32 - 1)) / (1.0 - rho).powi(2))
        .sum();
    Ok(rho * (lambda0(m)? - weighted - arctan_term(m, rho)))
}

fn r_thm42(rho: f64, m: f64, p: u32) -> Result<f64> {
    Ok(rho.powi(2 * p as i32 - 1) * (lambda0(m)? - arctan_term(m, rho)))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bisection {
    pub root: f64,
    pub iterations: usize,
}

/// Root of a decreasing `f` on `(lo, hi)` with `f(lo) > 0 ≥ f(hi)`; stops
/// once the bracket is narrower than `tol`.
pub fn bisect_decreasing<F>(f: F, lo: f64, hi: f64, tol: f64, max_iter: usize) -> Result<Bisection>
where
    F: Fn(f64) -> Result<f64>,
{
    if f(lo)? <= 0.0 || f(hi)? > 0.0 {
        return Err(Error::NoBracket { lo, hi });
    }
    let (mut a, mut b) = (lo, hi);
    let mut iterations = 0;
    while b - a > tol && iterations < max_iter {
        let mid = 0.5 * (a + b);
        if f(mid)? > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
        iterations += 1;
    }
    Ok(Bisection {
        root: 0.5 * (a + b),
        iterations,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LandauResult {
    pub theorem: Theorem,
    pub m: f64,
    pub p: u32,
    pub rho: f64,
    pub r: f64,
    pub residual: f64,
    pub iterations: usize,
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid("tol", "must be > 0"))
    }
}

pub fn solve_thm41(m: f64, p: u32, tol: f64) -> Result<LandauResult> {
    check_m(m)?;
    check_p(p)?;
    check_tol(tol)?;
    let equation = |rho| p_thm41(rho, m, p);
    let b = bisect_decreasing(
        equation,
        BRACKET_MARGIN,
        1.0 - BRACKET_MARGIN,
        tol,
        MAX_ITERATIONS,
    )?;
    Ok(LandauResult {
        theorem: Theorem::Thm41,
        m,
        p,
        rho: b.root,
        r: r_thm41(b.root, m, p)?,
        residual: equation(b.root)?,
        iterations: b.iterations,
    })
}

pub fn solve_thm42(m: f64, p: u32, tol: f64) -> Result<LandauResult> {
    check_m(m)?;
    check_p(p)?;
    check_tol(tol)?;
    let equation = |rho| p_thm42(rho, m);
    let b = bisect_decreasing(
        equation,
        BRACKET_MARGIN,
        1.0 - BRACKET_MARGIN,
        tol,
        MAX_ITERATIONS,
    )?;
    Ok(LandauResult {
        theorem: Theorem::Thm42,
        m,
        p,
        rho: b.root,
        r: r_thm42(b.root, m, p)?,
        residual: equation(b.root)?,
        iterations: b.iterations,
    })
}

pub fn solve(theorem: Theorem, m: f64, p: u32, tol: f64) -> Result<LandauResult> {
    match theorem {
        Theorem::Thm41 => solve_thm41(m, p, tol),
        Theorem::Thm42 => solve_thm42(m, p, tol),
    }
}

/// `M` values of the published tables.
pub const TABLE_MS: [f64; 4] = [1.1296, 2.0, 2.2976, 3.0];

/// Solves every `(M, p)` pair, `M`-major within each `p` block, i.e. rows
/// are ordered as `ps × Ms` the way the published tables list them.
pub fn generate_table(theorem: Theorem, ms: &[f64], ps: &[u32]) -> Result<Vec<LandauResult>> {
    ps.iter()
        .flat_map(|&p| ms.iter().map(move |&m| (m, p)))
        .map(|(m, p)| solve(theorem, m, p, DEFAULT_TOLERANCE))
        .collect()
}

/// Checks of the hypotheses on a layered map: `f(0) = 0`, `G_p(0) = 0`,
/// `J_f(0) = 1` and `|G_k| ≤ M` (sampled at radius 0.999).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypothesisReport {
    /// Layers are harmonic by construction.
    pub layers_harmonic: bool,
    pub f_at_origin: f64,
    pub origin_ok: bool,
    /// `|G_p(0)|`, the unweighted layer at the origin.
    pub top_layer_at_origin: f64,
    pub top_layer_ok: bool,
    pub jacobian_at_origin: f64,
    pub jacobian_ok: bool,
    pub layer_sups: Vec<f64>,
    pub bound_ok: bool,
    pub passed: bool,
}

pub fn validate_thm41_hypotheses(map: &PHarmonicMap, m: f64) -> HypothesisReport {
    let origin = Complex64::new(0.0, 0.0);
    let f0 = map.eval(origin).norm();
    let top = map.layer(1).eval(origin).norm();
    let jac = map.metrics(origin).jacobian;
    let angles = (8 * (map.degree() + 1)).max(2048);
    let layer_sups: Vec<f64> = map
        .layers()
        .iter()
        .map(|l| l.sampled_sup(PREMISE_RADIUS, angles))
        .collect();
    let origin_ok = f0 <= 1e-12;
    let top_layer_ok = top <= 1e-12;
    let jacobian_ok = (jac - 1.0).abs() <= 1e-9;
    let bound_ok = layer_sups.iter().all(|&s| s <= m * (1.0 + 1e-9));
    HypothesisReport {
        layers_harmonic: true,
        f_at_origin: f0,
        origin_ok,
        top_layer_at_origin: top,
        top_layer_ok,
        jacobian_at_origin: jac,
        jacobian_ok,
        layer_sups,
        bound_ok,
        passed: origin_ok && top_layer_ok && jacobian_ok && bound_ok,
    }
}

#[cfg(test)]
#[allow(clippy::approx_constant)]
mod tests {
    use super::*;
    use crate::series::HarmonicSeries;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn lambda0_values() {
        assert!((lambda0(1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((lambda0(2.0).unwrap() - PI / 8.0).abs() < 1e-15);
        assert!((lambda0(2.0).unwrap() - 0.3926991).abs() < 1e-7);
        assert!(lambda0(0.999).is_err());
    }

    #[test]
    fn t_values() {
        assert_eq!(t_of_m(1.0).unwrap(), 0.0);
        assert!((t_of_m(2.0).unwrap() - 6f64.sqrt()).abs() < 1e-15);
        assert!((t_of_m(2.0).unwrap() - 2.4494897).abs() < 1e-7);
        assert!(t_of_m(0.5).is_err());
    }

    #[test]
    fn branches_meet_at_breakpoints() {
        let c = constants();
        let m0 = c.m0;
        let left = SQRT_2 / ((m0 * m0 - 1.0).sqrt() + (m0 * m0 + 1.0).sqrt());
        assert!((left - PI / (4.0 * m0)).abs() <= 1e-6);
        assert!((lambda0(m0).unwrap() - left).abs() == 0.0);
        let m1 = c.m1;
        assert!(((2.0 * m1 * m1 - 2.0).sqrt() - 4.0 * m1 / PI).abs() <= 1e-6);
        assert_eq!(t_of_m(m1).unwrap(), (2.0 * m1 * m1 - 2.0).sqrt());
    }

    #[test]
    fn published_constants() {
        let c = constants();
        assert!((c.s0 - 4.1996).abs() < 1e-4);
        assert!((c.m0 - 1.1296).abs() < 1e-4);
        assert!((c.m1 - 2.2976).abs() < 1e-4);
        assert!((c.r0 - 0.66215).abs() < 1e-5);
        assert!((q(c.r0) - c.s0).abs() < 1e-13);
    }

    #[test]
    fn equations_start_at_lambda0() {
        for &m in &[1.0, 1.5, 3.0] {
            for p in 1..4 {
                assert_eq!(p_thm41(0.0, m, p).unwrap(), lambda0(m).unwrap());
            }
            assert_eq!(p_thm42(0.0, m).unwrap(), lambda0(m).unwrap());
        }
        assert!(p_thm41(1.0, 2.0, 2).is_err());
        assert!(p_thm42(1.2, 2.0).is_err());
    }

    #[test]
    fn published_roots_nearly_zero_the_equations() {
        assert!(p_thm41(0.0206783, 2.0, 2).unwrap().abs() < 5e-5);
        assert!(p_thm41(0.0714741, 1.1296, 2).unwrap().abs() < 5e-5);
        assert!(p_thm42(0.00856025, 2.0).unwrap().abs() < 5e-5);
        assert!(p_thm42(0.0281673, 1.1296).unwrap().abs() < 5e-5);
    }

    #[test]
    fn solver_examples() {
        let r = solve_thm41(2.0, 2, DEFAULT_TOLERANCE).unwrap();
        assert!(rel(r.rho, 0.0206783) < 2e-5);
        assert!(rel(r.r, 0.00227639) < 2e-5);
        assert!(r.residual.abs() <= 1e-10);

        let r = solve_thm41(3.0, 4, DEFAULT_TOLERANCE).unwrap();
        assert!(rel(r.rho, 0.00922254) < 2e-5);
        assert!(rel(r.r, 0.000674251) < 2e-5);

        let r = solve_thm41(2.2976, 3, DEFAULT_TOLERANCE).unwrap();
        assert!(rel(r.rho, 0.0155966) < 2e-5);
        assert!(rel(r.r, 0.00151523) < 2e-5);

        let r = solve_thm42(2.0, 2, DEFAULT_TOLERANCE).unwrap();
        assert!(rel(r.rho, 0.00856025) < 2e-5);
        assert!(rel(r.r, 1.73218e-7) < 2e-5);

        let r = solve_thm42(3.0, 3, DEFAULT_TOLERANCE).unwrap();
        assert!(rel(r.rho, 0.0037942) < 2e-5);
        assert!(rel(r.r, 1.44922e-13) < 2e-5);

        let r = solve_thm42(1.1296, 3, DEFAULT_TOLERANCE).unwrap();
        assert!(rel(r.rho, 0.0281673) < 2e-5);
        assert!(rel(r.r, 8.48819e-9) < 2e-5);
    }

    #[test]
    fn solver_rejects_bad_input() {
        assert!(solve_thm41(0.5, 2, DEFAULT_TOLERANCE).is_err());
        assert!(solve_thm41(2.0, 0, DEFAULT_TOLERANCE).is_err());
        assert!(solve_thm42(2.0, 2, 0.0).is_err());
    }

    #[test]
    fn bisection_without_bracket_errors() {
        let err = bisect_decreasing(|x| Ok(-x - 1.0), 0.0, 1.0, 1e-12, 100).unwrap_err();
        assert!(matches!(err, Error::NoBracket { .. }));
    }

    #[test]
    fn thm42_radius_ignores_p_and_r_scales_by_rho_squared() {
        for &m in &TABLE_MS {
            let a = solve_thm42(m, 2, DEFAULT_TOLERANCE).unwrap();
            let b = solve_thm42(m, 3, DEFAULT_TOLERANCE).unwrap();
            assert_eq!(a.rho, b.rho);
            assert!(rel(b.r / a.r, a.rho * a.rho) < 1e-12);
        }
    }

    #[test]
    fn table_shapes() {
        let t = generate_table(Theorem::Thm41, &TABLE_MS, &[2, 3, 4]).unwrap();
        assert_eq!(t.len(), 12);
        assert_eq!((t[0].m, t[0].p), (1.1296, 2));
        assert_eq!((t[4].m, t[4].p), (1.1296, 3));
        assert_eq!(
            generate_table(Theorem::Thm42, &TABLE_MS, &[2, 3])
                .unwrap()
                .len(),
            8
        );
        assert!(generate_table(Theorem::Thm41, &[], &[2])
            .unwrap()
            .is_empty());
        assert!(generate_table(Theorem::Thm41, &[0.5], &[2]).is_err());
    }

    #[test]
    fn theorem_parsing() {
        assert_eq!("41".parse::<Theorem>().unwrap(), Theorem::Thm41);
        assert_eq!("42".parse::<Theorem>().unwrap(), Theorem::Thm42);
        assert!("43".parse::<Theorem>().is_err());
    }

    #[test]
    fn hypothesis_examples() {
        let z = HarmonicSeries::identity();
        let good = PHarmonicMap::new(vec![z.clone(), HarmonicSeries::zero(1)]).unwrap();
        assert!(validate_thm41_hypotheses(&good, 1.0).passed);

        let twice = PHarmonicMap::new(vec![
            z.scaled(Complex64::new(2.0, 0.0)),
            HarmonicSeries::zero(1),
        ])
        .unwrap();
        let report = validate_thm41_hypotheses(&twice, 2.0);
        assert!(!report.passed);
        assert!(!report.jacobian_ok);
        assert!((report.jacobian_at_origin - 4.0).abs() < 1e-15);
        assert!(report.bound_ok);
    }
}
