//! Bloch seminorm of p-harmonic maps.
//!
//! For layers bounded by `M`, `B_f ≤ 2M φ_p(y*)` where
//!
//! ```text
//! φ_p(y) = (2/π) Σ_{k=1}^{p} y^{2(k-1)} + y(1 − y²) Σ_{k=2}^{p} (k−1) y^{2(k-2)}
//! ```
//!
//! and `y*` is the unique zero of `φ_p′` in `(0, 1)`. For `p = 1`, `φ₁ ≡ 2/π`
//! has no critical point and the bound is `4M/π`.
//!
//! For `p = 2` the maximum has the closed form
//! `φ₂(y₀) = (2/(27π³))(8 + 36π² + (4 + 3π²)^{3/2}) ≈ 1.3334134` at
//! `y₀ = (2 + √(4 + 3π²))/(3π)`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::{GridDescriptor, SamplingGrid};
use crate::series::PHarmonicMap;

/// Resolution of the sign scan that certifies a unique critical point.
pub const SIGN_SCAN_POINTS: usize = 10_000;

fn check_y(y: f64) -> Result<()> {
    if (0.0..=1.0).contains(&y) {
        Ok(())
    } else {
        Err(Error::invalid("y", "must lie in [0, 1]"))
    }
}

fn check_p(p: u32) -> Result<()> {
    if p >= 1 {
        Ok(())
    } else {
        Err(Error::invalid("p", "must be ≥ 1"))
    }
}

pub fn phi(p: u32, y: f64) -> Result<f64> {
    check_p(p)?;
    check_y(y)?;
    let y2 = y * y;
    let even: f64 = (1..=p).map(|k| y2.powi(k as i32 - 1)).sum();
    let mixed: f64 = (2..=p)
        .map(|k| (k - 1) as f64 * y2.powi(k as i32 - 2))
        .sum();
    Ok(2.0 / PI * even + y * (1.0 - y2) * mixed)
}

/// `φ_p′(y)`, differentiated term by term:
/// `(2/π) Σ 2(k−1) y^{2k-3} + Σ (k−1)[(2k−3) y^{2k-4} − (2k−1) y^{2k-2}]`.
pub fn phi_prime(p: u32, y: f64) -> Result<f64> {
    check_p(p)?;
    check_y(y)?;
    let mut total = 0.0;
    for k in 2..=p as i32 {
        let w = (k - 1) as f64;
        total += 2.0 / PI * 2.0 * w * y.powi(2 * k - 3);
        total +=
            w * ((2 * k - 3) as f64 * y.powi(2 * k - 4) - (2 * k - 1) as f64 * y.powi(2 * k - 2));
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CriticalPoint {
    /// `φ₁` is constant.
    Degenerate,
    Maximum(f64),
}

impl CriticalPoint {
    pub fn value(&self) -> Option<f64> {
        match self {
            CriticalPoint::Degenerate => None,
            CriticalPoint::Maximum(y) => Some(*y),
        }
    }
}

impl Serialize for CriticalPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CriticalPoint::Degenerate => s.serialize_str("degenerate"),
            CriticalPoint::Maximum(y) => s.serialize_f64(*y),
        }
    }
}

/// Zero of `φ_p′` in `(0, 1)`, after checking on a uniform scan that `φ_p′`
/// changes sign exactly once.
pub fn critical_point(p: u32) -> Result<CriticalPoint> {
    check_p(p)?;
    if p == 1 {
        return Ok(CriticalPoint::Degenerate);
    }
    let n = SIGN_SCAN_POINTS;
    let mut changes = Vec::new();
    let mut prev = phi_prime(p, 0.0)?;
    for i in 1..=n {
        let y = i as f64 / n as f64;
        let cur = phi_prime(p, y)?;
        if (prev > 0.0 && cur <= 0.0) || (prev < 0.0 && cur >= 0.0) {
            changes.push(i);
        }
        prev = cur;
    }
    if changes.len() != 1 || phi_prime(p, 0.0)? <= 0.0 {
        return Err(Error::NonuniqueCriticalPoint {
            p,
            sign_changes: changes.len(),
        });
    }
    let (mut a, mut b) = (
        (changes[0] - 1) as f64 / n as f64,
        changes[0] as f64 / n as f64,
    );
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        if phi_prime(p, mid)? > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    Ok(CriticalPoint::Maximum(0.5 * (a + b)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlochBound {
    pub p: u32,
    pub m: f64,
    pub y_star: CriticalPoint,
    pub phi_at_star: f64,
    /// `2M φ_p(y*)`.
    pub bound: f64,
}

pub fn bloch_upper_bound(p: u32, m: f64) -> Result<BlochBound> {
    if !(m > 0.0 && m.is_finite()) {
        return Err(Error::invalid("M", "must be > 0"));
    }
    let y_star = critical_point(p)?;
    let phi_at_star = match y_star {
        CriticalPoint::Degenerate => 2.0 / PI,
        CriticalPoint::Maximum(y) => phi(p, y)?,
    };
    Ok(BlochBound {
        p,
        m,
        y_star,
        phi_at_star,
        bound: 2.0 * m * phi_at_star,
    })
}

/// `(y, φ_p(y))` at `samples` equally spaced points of `[0, 1]`.
pub fn phi_curve(p: u32, samples: usize) -> Result<Vec<(f64, f64)>> {
    check_p(p)?;
    if samples < 2 {
        return Err(Error::invalid("samples", "must be ≥ 2"));
    }
    (0..samples)
        .map(|i| {
            let y = i as f64 / (samples - 1) as f64;
            phi(p, y).map(|v| (y, v))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BlochEstimate {
    pub sup_value: f64,
    pub argmax_point: Complex64,
    pub grid: GridDescriptor,
}

/// Sampled `sup (1 − |z|²) Λ_f(z)`; the first maximal point in grid order wins.
pub fn bloch_seminorm_estimate(map: &PHarmonicMap, grid: &SamplingGrid) -> BlochEstimate {
    let jets = map.jet_polynomials();
    let mut best = (0.0, Complex64::new(0.0, 0.0));
    for z in grid.points() {
        let (fz, fzb) = jets.first_order(z);
        let value = (1.0 - z.norm_sqr()) * (fz.norm() + fzb.norm());
        if value > best.0 {
            best = (value, z);
        }
    }
    BlochEstimate {
        sup_value: best.0,
        argmax_point: best.1,
        grid: grid.descriptor(),
    }
}

/// 128 rings clustered (cosine spacing) around the critical radius `y*`,
/// 256 angles, out to 0.99. Uniform rings when `p = 1`.
pub fn default_bloch_grid(p: u32) -> Result<SamplingGrid> {
    const RINGS: usize = 128;
    const ANGLES: usize = 256;
    const R_MAX: f64 = 0.99;
    let centre = match critical_point(p)? {
        CriticalPoint::Degenerate => return SamplingGrid::uniform(RINGS, ANGLES, R_MAX),
        CriticalPoint::Maximum(y) => y.min(0.98),
    };
    let below = RINGS / 2;
    let above = RINGS - below;
    let mut radii: Vec<f64> = (1..=below)
        .map(|i| centre * (0.5 * PI * i as f64 / below as f64).sin())
        .collect();
    radii.extend(
        (1..=above).map(|i| {
            centre + (R_MAX - centre) * (1.0 - (0.5 * PI * i as f64 / above as f64).cos())
        }),
    );
    radii.dedup_by(|a, b| *a <= *b);
    SamplingGrid::new(radii, ANGLES)
}

/// The braced quantity of the seminorm written through the layers,
/// `|Σ |z|^{2(k-1)} ∂_z G_k + Σ (k−1) z̄ |z|^{2(k-2)} G_k|
///  + |Σ |z|^{2(k-1)} ∂_z̄ G_k + Σ (k−1) z |z|^{2(k-2)} G_k|`.
pub fn layer_sum_dilation(map: &PHarmonicMap, z: Complex64) -> f64 {
    let r2 = z.norm_sqr();
    let mut a = Complex64::new(0.0, 0.0);
    let mut b = Complex64::new(0.0, 0.0);
    for (idx, layer) in map.layers().iter().enumerate() {
        let weight = r2.powi(idx as i32);
        a += weight * layer.eval_d_z(z);
        b += weight * layer.eval_d_zbar(z);
        if idx > 0 {
            let g = layer.eval(z) * (idx as f64 * r2.powi(idx as i32 - 1));
            a += z.conj() * g;
            b += z * g;
        }
    }
    a.norm() + b.norm()
}

/// Hyperbolic distance `½ log((1 + t)/(1 − t))`, `t = |z − w|/|1 − z̄w|`.
pub fn hyperbolic_distance(z: Complex64, w: Complex64) -> f64 {
    let t = (z - w).norm() / (1.0 - z.conj() * w).norm();
    t.atanh()
}

/// `|f(z) − f(w)| / ρ(z, w)`.
pub fn hyperbolic_quotient(map: &PHarmonicMap, z: Complex64, w: Complex64) -> Result<f64> {
    if z == w {
        return Err(Error::invalid("w", "must differ from z"));
    }
    if z.norm() >= 1.0 || w.norm() >= 1.0 {
        return Err(Error::invalid("z, w", "must lie in the open unit disk"));
    }
    Ok((map.eval(z) - map.eval(w)).norm() / hyperbolic_distance(z, w))
}
