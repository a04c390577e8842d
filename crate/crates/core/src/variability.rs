//! Region of variability `V_p(z₀) = {f(z₀) : f ∈ 𝓗_p ∖ 𝓗_{p-1}}`, where
//! `𝓗_p` holds the p-harmonic self-maps of the disk whose `z^{p-1}` Taylor
//! coefficient is 1.
//!
//! The Möbius-type family `f_a(z) = (z^{p-1} − a)/(1 − a z̄^{p-1})` lies in
//! `𝓗_p` for `p ≥ 2`, and `a ↦ f_a(z₀)` is a disk automorphism, so sampling
//! `a` over (almost) the closed disk fills `V_p(z₀)`. For `p = 1` the family
//! degenerates; Parseval forces a harmonic self-map with `f(0) = 1` to be
//! constant, which [`cartan_rigidity_check`] and [`parseval_sum`] exercise.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{HarmonicSeries, PHarmonicMap};

/// Default distance of the parameter `a` from the unit circle.
pub const DEFAULT_EPSILON: f64 = 1e-3;
/// Radius of the reference disk used to measure coverage.
pub const COVERAGE_DISK: f64 = 0.99;
const SUP_RADIUS: f64 = 0.9999;

#[derive(Debug, Clone, PartialEq)]
pub struct MobiusFamilyMember {
    pub p: usize,
    pub a: Complex64,
    /// Number of geometric-series terms kept.
    pub terms: usize,
    pub truncated: PHarmonicMap,
    /// `|a|^{K+1}/(1 − |a|)`, bounding `|closed_form − truncated|` on `|z| ≤ 1`.
    pub tail_bound: f64,
}

impl MobiusFamilyMember {
    pub fn closed_form(&self, z: Complex64) -> Complex64 {
        mobius_value(self.p, self.a, z)
    }
}

fn mobius_value(p: usize, a: Complex64, z: Complex64) -> Complex64 {
    let u = z.powu(p as u32 - 1);
    (u - a) / (1.0 - a * u.conj())
}

pub fn mobius_member(p: usize, a: Complex64, terms: usize) -> Result<MobiusFamilyMember> {
    mobius_member_with_margin(p, a, terms, DEFAULT_EPSILON)
}

/// Truncates `(z^{p-1} − a) Σ_{m≥0} (a z̄^{p-1})^m` after `m = terms`, split as
///
/// * layer 1: `z^{p-1} − a − Σ_{n=1}^{K} a^{n+1} z̄^{(p-1)n}`
/// * layer p (weight `|z|^{2(p-1)}`): `Σ_{n=1}^{K} aⁿ z̄^{(n-1)(p-1)}`
pub fn mobius_member_with_margin(
    p: usize,
    a: Complex64,
    terms: usize,
    epsilon: f64,
) -> Result<MobiusFamilyMember> {
    if p < 2 {
        return Err(Error::invalid("p", "must be ≥ 2"));
    }
    if terms == 0 {
        return Err(Error::invalid("K", "must be ≥ 1"));
    }
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::invalid("epsilon", "must lie in (0, 1)"));
    }
    if a.norm().is_nan() || a.norm() > 1.0 - epsilon {
        return Err(Error::invalid(
            "a",
            format!("must satisfy |a| ≤ 1 − {epsilon}"),
        ));
    }
    let step = p - 1;
    let degree = step * terms;
    let mut unweighted = HarmonicSeries::zero(degree)
        .with_z(step, Complex64::new(1.0, 0.0))
        .with_z(0, -a);
    let mut weighted = HarmonicSeries::zero(degree);
    for n in 1..=terms {
        unweighted = unweighted.with_zbar(step * n, -a.powu(n as u32 + 1));
        let an = a.powu(n as u32);
        let slot = step * (n - 1);
        weighted = if slot == 0 {
            weighted.with_z(0, an)
        } else {
            weighted.with_zbar(slot, an)
        };
    }
    let mut layers = vec![HarmonicSeries::zero(degree); p];
    layers[0] = unweighted;
    layers[p - 1] = weighted;
    let r = a.norm();
    Ok(MobiusFamilyMember {
        p,
        a,
        terms,
        truncated: PHarmonicMap::new(layers)?,
        tail_bound: r.powi(terms as i32 + 1) / (1.0 - r),
    })
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `|e·(p−1)! − (p−1)!|` for `e` the `z^{p-1}` coefficient of the monomial
/// expansion.
pub fn normalization_check(map: &PHarmonicMap, p: usize) -> f64 {
    let p = p.max(1);
    let e = map.to_bipoly().coeff(p as u32 - 1, 0);
    let scale = factorial(p - 1);
    (e * scale - scale).norm()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipReport {
    pub normalization_deviation: f64,
    pub sampled_sup: f64,
    pub member: bool,
}

/// Sampled membership in `𝓗_p`: normalization and `|f| ≤ 1` on the circle
/// of radius 0.9999.
pub fn membership_check(map: &PHarmonicMap, p: usize) -> MembershipReport {
    let deviation = normalization_check(map, p);
    let angles = (8 * (map.degree() + 1)).max(2048);
    let sampled_sup = (0..angles)
        .map(|k| {
            let z = Complex64::from_polar(SUP_RADIUS, 2.0 * PI * k as f64 / angles as f64);
            map.eval(z).norm()
        })
        .fold(0.0, f64::max);
    MembershipReport {
        normalization_deviation: deviation,
        sampled_sup,
        member: deviation <= 1e-12 && sampled_sup <= 1.0 + 1e-9,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionSample {
    pub z0: Complex64,
    pub p: usize,
    pub points: Vec<Complex64>,
    /// Largest distance from a reference point of the 0.99-disk to the
    /// nearest sample.
    pub coverage_radius: f64,
}

/// Polar grid with exactly `n` points covering `|a| ≤ radius`: the centre
/// plus rings whose point counts grow linearly with the ring index.
/// Ordered radius-major, angle-minor.
pub fn polar_disk_grid(n: usize, radius: f64) -> Vec<Complex64> {
    if n == 0 {
        return Vec::new();
    }
    let mut out = vec![Complex64::new(0.0, 0.0)];
    let rest = n - 1;
    if rest == 0 {
        return out;
    }
    let rings = ((rest as f64 / PI).sqrt().round() as usize).clamp(1, rest);
    let weight_total = (rings * (rings + 1) / 2) as f64;
    let mut placed = 0;
    for i in 1..=rings {
        let count = if i == rings {
            rest - placed
        } else {
            ((rest as f64 * i as f64 / weight_total).round() as usize).min(rest - placed)
        };
        placed += count;
        let r = radius * i as f64 / rings as f64;
        out.extend(
            (0..count).map(|k| Complex64::from_polar(r, 2.0 * PI * k as f64 / count as f64)),
        );
    }
    out
}

// Uniform bucket index for nearest-neighbour queries in [-1, 1]².
struct PointIndex<'a> {
    points: &'a [Complex64],
    cells: Vec<Vec<usize>>,
    side: usize,
    cell: f64,
}

impl<'a> PointIndex<'a> {
    fn new(points: &'a [Complex64], side: usize) -> Self {
        let cell = 2.0 / side as f64;
        let mut cells = vec![Vec::new(); side * side];
        for (idx, z) in points.iter().enumerate() {
            let (i, j) = Self::locate(*z, cell, side);
            cells[j * side + i].push(idx);
        }
        Self {
            points,
            cells,
            side,
            cell,
        }
    }

    fn locate(z: Complex64, cell: f64, side: usize) -> (usize, usize) {
        let clamp = |v: f64| (((v + 1.0) / cell).floor().max(0.0) as usize).min(side - 1);
        (clamp(z.re), clamp(z.im))
    }

    fn nearest_distance(&self, target: Complex64) -> f64 {
        let (ti, tj) = Self::locate(target, self.cell, self.side);
        let mut best = f64::INFINITY;
        for ring in 0..self.side {
            // every point outside the searched square is at least this far
            if ring > 0 && best <= (ring - 1) as f64 * self.cell {
                break;
            }
            let lo_i = ti.saturating_sub(ring);
            let hi_i = (ti + ring).min(self.side - 1);
            let lo_j = tj.saturating_sub(ring);
            let hi_j = (tj + ring).min(self.side - 1);
            for j in lo_j..=hi_j {
                for i in lo_i..=hi_i {
                    let on_border = i == lo_i || i == hi_i || j == lo_j || j == hi_j;
                    if !on_border {
                        continue;
                    }
                    for &idx in &self.cells[j * self.side + i] {
                        best = best.min((self.points[idx] - target).norm());
                    }
                }
            }
        }
        best
    }
}

/// Largest nearest-sample distance over a reference polar grid of the disk
/// of radius [`COVERAGE_DISK`].
pub fn coverage_radius(points: &[Complex64]) -> f64 {
    if points.is_empty() {
        return f64::INFINITY;
    }
    let targets = polar_disk_grid(10_000, COVERAGE_DISK);
    let index = PointIndex::new(points, 64);
    targets
        .iter()
        .map(|&t| index.nearest_distance(t))
        .fold(0.0, f64::max)
}

/// Samples `f_a(z₀)` for `n_samples` parameters `a` on a polar grid of
/// `|a| ≤ 1 − ε`.
pub fn region_sample(p: usize, z0: Complex64, n_samples: usize) -> Result<RegionSample> {
    if p < 2 {
        return Err(Error::invalid(
            "p",
            "must be ≥ 2 (for p = 1 the region is the single point 1)",
        ));
    }
    if z0.norm().is_nan() || z0.norm() >= 1.0 {
        return Err(Error::invalid("z0", "must satisfy |z0| < 1"));
    }
    if n_samples == 0 {
        return Err(Error::invalid("samples", "must be ≥ 1"));
    }
    let points: Vec<Complex64> = polar_disk_grid(n_samples, 1.0 - DEFAULT_EPSILON)
        .into_iter()
        .map(|a| mobius_value(p, a, z0))
        .collect();
    let coverage = coverage_radius(&points);
    Ok(RegionSample {
        z0,
        p,
        points,
        coverage_radius: coverage,
    })
}

/// `|c₀|² + Σ (|c_n|² + |d_n|²)`, the mean of `|s|²` on the unit circle.
pub fn parseval_sum(s: &HarmonicSeries) -> f64 {
    s.c0().norm_sqr()
        + s.z_coeffs()
            .iter()
            .chain(s.zbar_coeffs())
            .map(|v| v.norm_sqr())
            .sum::<f64>()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CartanReport {
    /// Sampled `sup |s|` at radius 0.9999.
    pub sampled_sup: f64,
    pub maps_into_disk: bool,
    /// `c₁ = 1` within 1e-9.
    pub normalized: bool,
    pub parseval_sum: f64,
    /// Coefficients other than `c₁` exceeding 1e-9, as `c0`, `c2`, `d1`, ...
    pub violations: Vec<String>,
    /// No violations: `s` is the identity.
    pub passed: bool,
    /// Either `s` is the identity or the premise (self-map with `c₁ = 1`)
    /// fails.
    pub rigidity_upheld: bool,
}

pub fn cartan_rigidity_check(s: &HarmonicSeries) -> CartanReport {
    const TOL: f64 = 1e-9;
    let angles = (8 * (s.degree() + 1)).max(4096);
    let sampled_sup = s.sampled_sup(SUP_RADIUS, angles);
    let maps_into_disk = sampled_sup <= 1.0 + TOL;
    let normalized = (s.z_coeff(1) - 1.0).norm() <= TOL;
    let mut violations = Vec::new();
    if s.c0().norm() > TOL {
        violations.push("c0".to_string());
    }
    for n in 1..=s.degree() {
        if n != 1 && s.z_coeff(n).norm() > TOL {
            violations.push(format!("c{n}"));
        }
        if s.zbar_coeff(n).norm() > TOL {
            violations.push(format!("d{n}"));
        }
    }
    if !normalized && !violations.iter().any(|v| v == "c1") {
        violations.insert(0, "c1".to_string());
    }
    let passed = violations.is_empty();
    CartanReport {
        sampled_sup,
        maps_into_disk,
        normalized,
        parseval_sum: parseval_sum(s),
        violations,
        passed,
        rigidity_upheld: passed || !(maps_into_disk && normalized),
    }
}
