//! Sampled geometric predicates: sense preservation, starlikeness and
//! convexity, plus the weighted-map constructions whose `D`-ratios agree with
//! those of the underlying harmonic map.
//!
//! Every predicate scans a [`SamplingGrid`] of punctured-disk points; none of
//! them certify univalence.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::bipoly::{powers, BiPolynomial};
use crate::error::{Error, Result};
use crate::series::{HarmonicSeries, PHarmonicMap};
use crate::ZERO_THRESHOLD;

/// Largest admissible ring radius.
pub const MAX_RADIUS: f64 = 0.999;

/// Concentric rings `radii` with `angles_per_ring` equally spaced angles
/// each. The origin is never sampled.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingGrid {
    radii: Vec<f64>,
    angles_per_ring: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridDescriptor {
    pub rings: usize,
    pub angles_per_ring: usize,
    pub r_min: f64,
    pub r_max: f64,
}

impl SamplingGrid {
    pub fn new(radii: Vec<f64>, angles_per_ring: usize) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::invalid("radii", "must not be empty"));
        }
        if angles_per_ring == 0 {
            return Err(Error::invalid("angles_per_ring", "must be ≥ 1"));
        }
        if radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("radii", "must be strictly increasing"));
        }
        if radii[0] <= 0.0 || radii[radii.len() - 1] > MAX_RADIUS {
            return Err(Error::invalid(
                "radii",
                format!("must lie in (0, {MAX_RADIUS}]"),
            ));
        }
        Ok(Self {
            radii,
            angles_per_ring,
        })
    }

    /// `rings` radii `r_max·i/rings`, `i = 1..=rings`.
    pub fn uniform(rings: usize, angles_per_ring: usize, r_max: f64) -> Result<Self> {
        let radii = (1..=rings)
            .map(|i| r_max * i as f64 / rings as f64)
            .collect();
        Self::new(radii, angles_per_ring)
    }

    /// `rings` radii spaced linearly from `r_min` to `r_max` inclusive.
    pub fn linear(r_min: f64, r_max: f64, rings: usize, angles_per_ring: usize) -> Result<Self> {
        let radii = match rings {
            1 => vec![r_max],
            _ => (0..rings)
                .map(|i| r_min + (r_max - r_min) * i as f64 / (rings - 1) as f64)
                .collect(),
        };
        Self::new(radii, angles_per_ring)
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn angles_per_ring(&self) -> usize {
        self.angles_per_ring
    }

    pub fn r_max(&self) -> f64 {
        self.radii[self.radii.len() - 1]
    }

    pub fn len(&self) -> usize {
        self.radii.len() * self.angles_per_ring
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Points in radius-major, angle-minor order.
    pub fn points(&self) -> impl Iterator<Item = Complex64> + '_ {
        let n = self.angles_per_ring;
        self.radii.iter().flat_map(move |&r| {
            (0..n).map(move |k| Complex64::from_polar(r, 2.0 * PI * k as f64 / n as f64))
        })
    }

    pub fn descriptor(&self) -> GridDescriptor {
        GridDescriptor {
            rings: self.radii.len(),
            angles_per_ring: self.angles_per_ring,
            r_min: self.radii[0],
            r_max: self.r_max(),
        }
    }
}

impl Default for SamplingGrid {
    /// 64 rings × 256 angles out to radius 0.99.
    fn default() -> Self {
        Self::uniform(64, 256, 0.99).expect("default grid is valid")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PredicateReport {
    pub passed: bool,
    pub min_margin: f64,
    pub worst_point: Complex64,
    pub points_checked: usize,
    pub vacuous: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl PredicateReport {
    fn vacuous() -> Self {
        Self {
            passed: false,
            min_margin: 0.0,
            worst_point: Complex64::new(0.0, 0.0),
            points_checked: 0,
            vacuous: true,
            reason: Some("map is identically zero".into()),
        }
    }
}

// Running minimum; strict comparison keeps the first point in grid order.
#[derive(Debug, Clone, Copy)]
struct MinTracker {
    value: f64,
    point: Complex64,
}

impl MinTracker {
    fn new() -> Self {
        Self {
            value: f64::INFINITY,
            point: Complex64::new(0.0, 0.0),
        }
    }

    fn offer(&mut self, value: f64, point: Complex64) {
        if value < self.value {
            self.value = value;
            self.point = point;
        }
    }
}

// Polynomials sharing one set of power tables per grid point.
struct PolySet<'a> {
    polys: Vec<&'a BiPolynomial>,
    di: u32,
    dj: u32,
}

impl<'a> PolySet<'a> {
    fn new(polys: Vec<&'a BiPolynomial>) -> Self {
        let (di, dj) = polys
            .iter()
            .map(|q| q.max_degrees())
            .fold((0, 0), |(a, b), (i, j)| (a.max(i), b.max(j)));
        Self { polys, di, dj }
    }

    fn eval(&self, z: Complex64, out: &mut [Complex64]) {
        let zp = powers(z, self.di);
        let zbp = powers(z.conj(), self.dj);
        for (slot, q) in out.iter_mut().zip(&self.polys) {
            *slot = q.eval_with_powers(&zp, &zbp);
        }
    }
}

/// Minimum of `J_f = |f_z|² − |f_z̄|²` over the grid; passes iff it is positive.
pub fn sense_preserving_report(map: &PHarmonicMap, grid: &SamplingGrid) -> PredicateReport {
    if map.is_zero() {
        return PredicateReport::vacuous();
    }
    let f = map.to_bipoly();
    let (fz, fzb) = (f.d_z(), f.d_zbar());
    let set = PolySet::new(vec![&fz, &fzb]);
    let mut buf = [Complex64::new(0.0, 0.0); 2];
    let mut min = MinTracker::new();
    for z in grid.points() {
        set.eval(z, &mut buf);
        min.offer(buf[0].norm_sqr() - buf[1].norm_sqr(), z);
    }
    let passed = min.value > 0.0;
    PredicateReport {
        passed,
        min_margin: min.value,
        worst_point: min.point,
        points_checked: grid.len(),
        vacuous: false,
        reason: (!passed).then(|| "Jacobian is not positive".to_string()),
    }
}

#[derive(Clone, Copy)]
enum Ratio {
    // Re(Df / f), nonvanishing f
    Starlike,
    // Re(D²f / Df), nonvanishing f and Df
    Convex,
}

fn ratio_report(map: &PHarmonicMap, grid: &SamplingGrid, kind: Ratio) -> PredicateReport {
    if map.is_zero() {
        return PredicateReport::vacuous();
    }
    let f0 = map.eval(Complex64::new(0.0, 0.0));
    let d1 = map.apply_d();
    let f = map.to_bipoly();
    let df = d1.to_bipoly();
    let d2f = d1.apply_d().to_bipoly();
    let (fz, fzb) = (f.d_z(), f.d_zbar());
    let set = PolySet::new(vec![&f, &df, &d2f, &fz, &fzb]);
    let mut buf = [Complex64::new(0.0, 0.0); 5];

    let mut margin = MinTracker::new();
    let mut jacobian = MinTracker::new();
    let mut vanishing: Option<Complex64> = None;
    for z in grid.points() {
        set.eval(z, &mut buf);
        let [fv, dfv, d2fv, fzv, fzbv] = buf;
        jacobian.offer(fzv.norm_sqr() - fzbv.norm_sqr(), z);
        let (num, den, guard) = match kind {
            Ratio::Starlike => (dfv, fv, fv.norm()),
            Ratio::Convex => (d2fv, dfv, fv.norm().min(dfv.norm())),
        };
        if guard <= ZERO_THRESHOLD {
            vanishing.get_or_insert(z);
            continue;
        }
        margin.offer((num / den).re, z);
    }

    let reason = if f0.norm() > ZERO_THRESHOLD {
        Some("f(0)≠0".to_string())
    } else if let Some(z) = vanishing {
        Some(match kind {
            Ratio::Starlike => format!("f vanishes at {z}"),
            Ratio::Convex => format!("f or Df vanishes at {z}"),
        })
    } else if jacobian.value <= 0.0 {
        Some(format!("not sense-preserving at {}", jacobian.point))
    } else if margin.value <= 0.0 {
        Some(match kind {
            Ratio::Starlike => "Re(Df/f) ≤ 0".to_string(),
            Ratio::Convex => "Re(D²f/Df) ≤ 0".to_string(),
        })
    } else {
        None
    };
    let (min_margin, worst_point) = if margin.value.is_finite() {
        (margin.value, margin.point)
    } else {
        (0.0, vanishing.unwrap_or_default())
    };
    PredicateReport {
        passed: reason.is_none(),
        min_margin,
        worst_point,
        points_checked: grid.len(),
        vacuous: false,
        reason,
    }
}

/// Minimum of `Re(Df/f)`; also requires `f(0) = 0`, `f ≠ 0` and `J_f > 0`
/// on the grid.
pub fn starlike_report(map: &PHarmonicMap, grid: &SamplingGrid) -> PredicateReport {
    ratio_report(map, grid, Ratio::Starlike)
}

/// Minimum of `Re(D²f/Df)`; also requires `f(0) = 0`, `f ≠ 0`, `Df ≠ 0` and
/// `J_f > 0` on the grid.
pub fn convex_report(map: &PHarmonicMap, grid: &SamplingGrid) -> PredicateReport {
    ratio_report(map, grid, Ratio::Convex)
}

/// `|z|^{2(p-1)} G(z)`: `G` sits in layer `p`, all lower layers are zero.
pub fn build_weighted_map(g: &HarmonicSeries, p: usize) -> Result<PHarmonicMap> {
    if p == 0 {
        return Err(Error::invalid("p", "must be ≥ 1"));
    }
    let mut layers = vec![HarmonicSeries::zero(g.degree()); p];
    layers[p - 1] = g.clone();
    PHarmonicMap::new(layers)
}

/// `G(z) · Σ_k λ_k |z|^{2(k-1)}`, i.e. layer `k` is `λ_k G`.
pub fn weighted_sum_map(g: &HarmonicSeries, lambdas: &[Complex64]) -> Result<PHarmonicMap> {
    if lambdas.is_empty() {
        return Err(Error::invalid("lambdas", "must not be empty"));
    }
    PHarmonicMap::new(lambdas.iter().map(|&l| g.scaled(l)).collect())
}

/// Largest deviations between the `D`-ratios of `f = G·Σλ_k|z|^{2(k-1)}`
/// and those of `G`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityCheck {
    /// `max |Df/f − DG/G|`.
    pub starlike_ratio: f64,
    /// `max |D²f/Df − D²G/DG|`.
    pub convex_ratio: f64,
    pub admissible_points: usize,
    pub vacuous: bool,
}

impl IdentityCheck {
    pub fn max_deviation(&self) -> f64 {
        self.starlike_ratio.max(self.convex_ratio)
    }
}

/// Points where `|G|·|Σλ_k|z|^{2(k-1)}|` (resp. `|DG|·|…|`) does not exceed
/// this are skipped.
pub const IDENTITY_ADMISSIBILITY: f64 = 1e-10;

pub fn thm1_identity_check(
    g: &HarmonicSeries,
    lambdas: &[Complex64],
    grid: &SamplingGrid,
) -> Result<IdentityCheck> {
    let f = weighted_sum_map(g, lambdas)?;
    let df = f.apply_d();
    let d2f = df.apply_d();
    let dg = g.apply_d();
    let d2g = dg.apply_d();

    let mut starlike_ratio: f64 = 0.0;
    let mut convex_ratio: f64 = 0.0;
    let mut admissible = 0;
    for z in grid.points() {
        let r2 = z.norm_sqr();
        let weight: Complex64 = lambdas
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &l| acc * r2 + l);
        let gv = g.eval(z);
        if gv.norm() * weight.norm() <= IDENTITY_ADMISSIBILITY {
            continue;
        }
        admissible += 1;
        let dgv = dg.eval(z);
        let dfv = df.eval(z);
        starlike_ratio = starlike_ratio.max((dfv / f.eval(z) - dgv / gv).norm());
        if dgv.norm() * weight.norm() > IDENTITY_ADMISSIBILITY {
            convex_ratio = convex_ratio.max((d2f.eval(z) / dfv - d2g.eval(z) / dgv).norm());
        }
    }
    Ok(IdentityCheck {
        starlike_ratio,
        convex_ratio,
        admissible_points: admissible,
        vacuous: admissible == 0,
    })
}
