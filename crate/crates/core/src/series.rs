//! Truncated harmonic layers and p-harmonic maps.
//!
//! A harmonic layer is `c₀ + Σ c_n zⁿ + Σ d_n z̄ⁿ`. The `d_n` are the literal
//! coefficients of `z̄ⁿ`; for a map written `h + ḡ` with `g = Σ b_n zⁿ` this
//! means `d_n = conj(b_n)` (see [`HarmonicSeries::from_analytic_parts`]).
//!
//! A [`PHarmonicMap`] with `p` layers is `Σ_{k=1}^{p} |z|^{2(k-1)} G_k(z)`,
//! where `layers[k-1]` holds `G_k`. In the customary notation
//! `f = Σ |z|^{2(k-1)} G_{p-k+1}`, our `layers[0]` is `G_p` (the unweighted
//! part) and `layers[p-1]` is `G_1`.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::bipoly::{powers, BiPolynomial};
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HarmonicSeries {
    c0: Complex64,
    c: Vec<Complex64>,
    d: Vec<Complex64>,
}

impl HarmonicSeries {
    pub fn new(c0: Complex64, c: Vec<Complex64>, d: Vec<Complex64>) -> Result<Self> {
        if c.len() != d.len() {
            return Err(Error::LengthMismatch {
                z_len: c.len(),
                zbar_len: d.len(),
            });
        }
        let finite = |v: &Complex64| v.re.is_finite() && v.im.is_finite();
        if !finite(&c0) || !c.iter().all(finite) || !d.iter().all(finite) {
            return Err(Error::NonFinite("harmonic series"));
        }
        Ok(Self { c0, c, d })
    }

    /// The zero layer of truncation degree `degree`.
    pub fn zero(degree: usize) -> Self {
        Self {
            c0: ZERO,
            c: vec![ZERO; degree],
            d: vec![ZERO; degree],
        }
    }

    pub fn constant(c0: Complex64) -> Self {
        Self {
            c0,
            ..Self::zero(0)
        }
    }

    /// `f(z) = z`.
    pub fn identity() -> Self {
        Self::zero(1).with_z(1, Complex64::new(1.0, 0.0))
    }

    /// `f(z) = z̄`.
    pub fn conj_identity() -> Self {
        Self::zero(1).with_zbar(1, Complex64::new(1.0, 0.0))
    }

    /// Builds `h + ḡ` from `h = a₀ + Σ a_n zⁿ` and `g = Σ b_n zⁿ`
    /// (`a[0]` is `a₁`, `b[0]` is `b₁`).
    pub fn from_analytic_parts(a0: Complex64, a: &[Complex64], b: &[Complex64]) -> Result<Self> {
        let n = a.len().max(b.len());
        let mut c = a.to_vec();
        c.resize(n, ZERO);
        let mut d: Vec<Complex64> = b.iter().map(|v| v.conj()).collect();
        d.resize(n, ZERO);
        Self::new(a0, c, d)
    }

    /// Returns a copy with the `zⁿ` coefficient set, growing the truncation
    /// degree if needed. `n = 0` sets the constant term.
    pub fn with_z(mut self, n: usize, value: Complex64) -> Self {
        if n == 0 {
            self.c0 = value;
        } else {
            self.grow(n);
            self.c[n - 1] = value;
        }
        self
    }

    /// Returns a copy with the `z̄ⁿ` coefficient set (`n ≥ 1`).
    pub fn with_zbar(mut self, n: usize, value: Complex64) -> Self {
        assert!(n >= 1, "zbar coefficients start at n = 1");
        self.grow(n);
        self.d[n - 1] = value;
        self
    }

    fn grow(&mut self, degree: usize) {
        if degree > self.c.len() {
            self.c.resize(degree, ZERO);
            self.d.resize(degree, ZERO);
        }
    }

    /// Pads the truncation degree to `degree` with zero coefficients.
    pub fn padded(mut self, degree: usize) -> Self {
        self.grow(degree);
        self
    }

    pub fn degree(&self) -> usize {
        self.c.len()
    }

    pub fn c0(&self) -> Complex64 {
        self.c0
    }

    /// Coefficients of `z, z², …`.
    pub fn z_coeffs(&self) -> &[Complex64] {
        &self.c
    }

    /// Coefficients of `z̄, z̄², …`.
    pub fn zbar_coeffs(&self) -> &[Complex64] {
        &self.d
    }

    /// Coefficient of `zⁿ` (the constant for `n = 0`), zero past the truncation.
    pub fn z_coeff(&self, n: usize) -> Complex64 {
        match n {
            0 => self.c0,
            _ => self.c.get(n - 1).copied().unwrap_or(ZERO),
        }
    }

    pub fn zbar_coeff(&self, n: usize) -> Complex64 {
        match n {
            0 => ZERO,
            _ => self.d.get(n - 1).copied().unwrap_or(ZERO),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.c0 == ZERO && self.c.iter().chain(&self.d).all(|v| *v == ZERO)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.c0 + horner_tail(&self.c, z) + horner_tail(&self.d, z.conj())
    }

    /// `f_z` at `z`.
    pub fn eval_d_z(&self, z: Complex64) -> Complex64 {
        derivative_sum(&self.c, z)
    }

    /// `f_z̄` at `z`.
    pub fn eval_d_zbar(&self, z: Complex64) -> Complex64 {
        derivative_sum(&self.d, z.conj())
    }

    pub fn to_bipoly(&self) -> BiPolynomial {
        let mut q = BiPolynomial::monomial(0, 0, self.c0);
        for (n, (&cn, &dn)) in self.c.iter().zip(&self.d).enumerate() {
            let e = n as u32 + 1;
            q.add_term(e, 0, cn);
            q.add_term(0, e, dn);
        }
        q
    }

    /// `D = z∂_z − z̄∂_z̄`: `c₀ ↦ 0`, `c_n ↦ n c_n`, `d_n ↦ −n d_n`.
    pub fn apply_d(&self) -> Self {
        let scale = |v: &[Complex64], sign: f64| {
            v.iter()
                .enumerate()
                .map(|(n, &x)| x * (sign * (n + 1) as f64))
                .collect()
        };
        Self {
            c0: ZERO,
            c: scale(&self.c, 1.0),
            d: scale(&self.d, -1.0),
        }
    }

    /// Largest `|f|` over `n_angles` equally spaced points of the circle `|z| = r`.
    pub fn sampled_sup(&self, r: f64, n_angles: usize) -> f64 {
        (0..n_angles)
            .map(|k| {
                let z = Complex64::from_polar(r, 2.0 * PI * k as f64 / n_angles as f64);
                self.eval(z).norm()
            })
            .fold(0.0, f64::max)
    }

    /// `|c₀| + Σ (|c_n| + |d_n|)`, an upper bound for `sup_{|z|≤1} |f|`.
    pub fn abs_coeff_sum(&self) -> f64 {
        self.c0.norm() + self.c.iter().chain(&self.d).map(|v| v.norm()).sum::<f64>()
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            c0: self.c0 * factor,
            c: self.c.iter().map(|v| v * factor).collect(),
            d: self.d.iter().map(|v| v * factor).collect(),
        }
    }
}

// Σ_{n≥1} a_n wⁿ by Horner.
fn horner_tail(coeffs: &[Complex64], w: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(ZERO, |acc, &a| (acc + a) * w)
}

// Σ_{n≥1} n a_n w^{n-1}.
fn derivative_sum(coeffs: &[Complex64], w: Complex64) -> Complex64 {
    coeffs
        .iter()
        .enumerate()
        .rev()
        .fold(ZERO, |acc, (n, &a)| acc * w + a * (n + 1) as f64)
}

/// A p-harmonic map as an ordered list of harmonic layers.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PHarmonicMap {
    layers: Vec<HarmonicSeries>,
}

impl PHarmonicMap {
    /// All layers are padded to a common truncation degree.
    pub fn new(layers: Vec<HarmonicSeries>) -> Result<Self> {
        if layers.is_empty() {
            return Err(Error::invalid("p", "must be ≥ 1"));
        }
        let degree = layers.iter().map(HarmonicSeries::degree).max().unwrap_or(0);
        Ok(Self {
            layers: layers.into_iter().map(|l| l.padded(degree)).collect(),
        })
    }

    /// A harmonic map (`p = 1`).
    pub fn harmonic(layer: HarmonicSeries) -> Self {
        Self {
            layers: vec![layer],
        }
    }

    pub fn p(&self) -> usize {
        self.layers.len()
    }

    pub fn layers(&self) -> &[HarmonicSeries] {
        &self.layers
    }

    /// Layer `k` (1-based), the one multiplied by `|z|^{2(k-1)}`.
    pub fn layer(&self, k: usize) -> &HarmonicSeries {
        &self.layers[k - 1]
    }

    pub fn degree(&self) -> usize {
        self.layers[0].degree()
    }

    pub fn is_zero(&self) -> bool {
        self.layers.iter().all(HarmonicSeries::is_zero)
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let weight = z.norm_sqr();
        self.layers
            .iter()
            .rev()
            .fold(ZERO, |acc, layer| acc * weight + layer.eval(z))
    }

    /// Exact monomial expansion, `|z|^{2(k-1)} = z^{k-1} z̄^{k-1}`.
    pub fn to_bipoly(&self) -> BiPolynomial {
        let mut q = BiPolynomial::zero();
        for (k, layer) in self.layers.iter().enumerate() {
            let shift = k as u32;
            for ((i, j), c) in layer.to_bipoly().terms() {
                q.add_term(i + shift, j + shift, c);
            }
        }
        q
    }

    /// `D` acts layer by layer since `D(|z|^{2k}) = 0`.
    pub fn apply_d(&self) -> Self {
        Self {
            layers: self.layers.iter().map(HarmonicSeries::apply_d).collect(),
        }
    }

    pub fn jet_polynomials(&self) -> JetPolynomials {
        JetPolynomials::new(self.to_bipoly())
    }

    pub fn wirtinger(&self, z: Complex64) -> WirtingerJet {
        self.jet_polynomials().at(z)
    }

    pub fn metrics(&self, z: Complex64) -> Metrics {
        self.wirtinger(z).metrics()
    }
}

/// Values of a map and its Wirtinger derivatives up to order two at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WirtingerJet {
    pub f: Complex64,
    pub f_z: Complex64,
    pub f_zbar: Complex64,
    pub f_zz: Complex64,
    pub f_zbarzbar: Complex64,
    pub f_zzbar: Complex64,
}

impl WirtingerJet {
    pub fn metrics(&self) -> Metrics {
        Metrics::from_derivatives(self.f_z, self.f_zbar)
    }
}

/// `λ_f = |f_z| − |f_z̄|`, `Λ_f = |f_z| + |f_z̄|`, `J_f = λ_f Λ_f`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Metrics {
    pub lambda: f64,
    pub big_lambda: f64,
    pub jacobian: f64,
}

impl Metrics {
    pub fn from_derivatives(f_z: Complex64, f_zbar: Complex64) -> Self {
        let (a, b) = (f_z.norm(), f_zbar.norm());
        Self {
            lambda: a - b,
            big_lambda: a + b,
            jacobian: (a - b) * (a + b),
        }
    }
}

/// Monomial forms of `f` and its derivatives, built once and evaluated at
/// many points.
#[derive(Debug, Clone)]
pub struct JetPolynomials {
    pub f: BiPolynomial,
    pub f_z: BiPolynomial,
    pub f_zbar: BiPolynomial,
    pub f_zz: BiPolynomial,
    pub f_zbarzbar: BiPolynomial,
    pub f_zzbar: BiPolynomial,
}

impl JetPolynomials {
    pub fn new(f: BiPolynomial) -> Self {
        let f_z = f.d_z();
        let f_zbar = f.d_zbar();
        Self {
            f_zz: f_z.d_z(),
            f_zzbar: f_z.d_zbar(),
            f_zbarzbar: f_zbar.d_zbar(),
            f,
            f_z,
            f_zbar,
        }
    }

    pub fn at(&self, z: Complex64) -> WirtingerJet {
        let (di, dj) = self.f.max_degrees();
        let zp = powers(z, di);
        let zbp = powers(z.conj(), dj);
        let ev = |q: &BiPolynomial| q.eval_with_powers(&zp, &zbp);
        WirtingerJet {
            f: ev(&self.f),
            f_z: ev(&self.f_z),
            f_zbar: ev(&self.f_zbar),
            f_zz: ev(&self.f_zz),
            f_zbarzbar: ev(&self.f_zbarzbar),
            f_zzbar: ev(&self.f_zzbar),
        }
    }

    /// `(f_z, f_z̄)` only.
    pub fn first_order(&self, z: Complex64) -> (Complex64, Complex64) {
        (self.f_z.eval(z), self.f_zbar.eval(z))
    }
}

/// The sharp extremal map for the coefficient bound `|c_n| + |d_n| ≤ 4M/π`,
/// `(2Mα/π) arg((1+βzⁿ)/(1−βzⁿ))`, truncated after `terms` odd powers:
/// `(2Mα/(iπ)) Σ_{k=1}^{terms} [(βzⁿ)^{2k-1} − (β̄z̄ⁿ)^{2k-1}]/(2k−1)`.
pub fn extremal_lemma1(
    n: usize,
    m: f64,
    alpha: Complex64,
    beta: Complex64,
    terms: usize,
) -> Result<HarmonicSeries> {
    if n == 0 {
        return Err(Error::invalid("n", "must be ≥ 1"));
    }
    if !(m >= 0.0 && m.is_finite()) {
        return Err(Error::invalid("M", "must be finite and ≥ 0"));
    }
    if terms == 0 {
        return Err(Error::invalid("K", "must be ≥ 1"));
    }
    for (name, v) in [("alpha", alpha), ("beta", beta)] {
        if (v.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::invalid(name, "must be unimodular"));
        }
    }
    let prefactor = alpha * (2.0 * m / PI) / Complex64::i();
    let mut s = HarmonicSeries::zero(n * (2 * terms - 1));
    for k in 1..=terms {
        let odd = 2 * k - 1;
        let power = n * odd;
        let bp = beta.powi(odd as i32);
        s.c[power - 1] = prefactor * bp / odd as f64;
        s.d[power - 1] = -prefactor * bp.conj() / odd as f64;
    }
    Ok(s)
}

/// Bound on `|f_n − truncation|` over `|z| ≤ r < 1` for [`extremal_lemma1`]:
/// `(4M/π) r^{n(2K+1)} / ((2K+1)(1 − r^{2n}))`.
pub fn extremal_tail_bound(n: usize, m: f64, terms: usize, r: f64) -> f64 {
    let odd = (2 * terms + 1) as f64;
    4.0 * m / PI * r.powf(n as f64 * odd) / (odd * (1.0 - r.powi(2 * n as i32)))
}

/// Per-index slack of the coefficient bound for a layer bounded by `M`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoefficientBoundReport {
    /// `M − |c₀|`.
    pub constant_slack: f64,
    /// `4M/π − (|c_n| + |d_n|)` for `n = 1..N`.
    pub slacks: Vec<f64>,
    /// Sampled `sup |s|` at radius 0.999, for the caller's premise.
    pub sampled_sup: f64,
    pub premise_holds: bool,
}

impl CoefficientBoundReport {
    pub fn min_slack(&self) -> f64 {
        self.slacks
            .iter()
            .copied()
            .fold(self.constant_slack, f64::min)
    }
}

pub const PREMISE_RADIUS: f64 = 0.999;

pub fn coeff_bound_check(s: &HarmonicSeries, m: f64) -> CoefficientBoundReport {
    let bound = 4.0 * m / PI;
    let slacks = s
        .z_coeffs()
        .iter()
        .zip(s.zbar_coeffs())
        .map(|(c, d)| bound - (c.norm() + d.norm()))
        .collect();
    let angles = (8 * (s.degree() + 1)).max(1024);
    let sampled_sup = s.sampled_sup(PREMISE_RADIUS, angles);
    CoefficientBoundReport {
        constant_slack: m - s.c0().norm(),
        slacks,
        sampled_sup,
        premise_holds: sampled_sup <= m * (1.0 + 1e-12),
    }
}

/// Heinz: `|f(z)| ≤ (4/π) arctan|z|` for harmonic self-maps fixing 0.
pub fn heinz_modulus_bound(r: f64) -> f64 {
    4.0 / PI * r.atan()
}

/// Colonna: `Λ_f(z) ≤ (4/π) / (1 − |z|²)` for harmonic self-maps of the disk.
pub fn colonna_dilation_bound(r: f64) -> f64 {
    4.0 / PI / (1.0 - r * r)
}
