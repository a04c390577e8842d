//! Browser bindings for the interactive demo page in `www/`.
//!
//! The exported functions are thin wrappers over [`ops`], which holds the
//! plain Rust implementations so they can be tested natively.

use wasm_bindgen::prelude::*;

pub mod ops {
    use num_complex::Complex64;
    use pharmonic::bloch::{self, CriticalPoint};
    use pharmonic::{landau, variability, Result, Theorem};

    pub struct BlochView {
        /// Interleaved `y, φ_p(y)` pairs.
        pub curve: Vec<f64>,
        /// `NaN` when `p = 1`.
        pub y_star: f64,
        pub phi_at_star: f64,
        pub bound: f64,
    }

    pub fn bloch_view(p: u32, m: f64, samples: usize) -> Result<BlochView> {
        let b = bloch::bloch_upper_bound(p, m)?;
        let curve = bloch::phi_curve(p, samples)?
            .into_iter()
            .flat_map(|(y, v)| [y, v])
            .collect();
        Ok(BlochView {
            curve,
            y_star: match b.y_star {
                CriticalPoint::Degenerate => f64::NAN,
                CriticalPoint::Maximum(y) => y,
            },
            phi_at_star: b.phi_at_star,
            bound: b.bound,
        })
    }

    pub struct RegionView {
        /// Interleaved `re, im` pairs.
        pub points: Vec<f64>,
        pub coverage_radius: f64,
    }

    pub fn region_view(p: usize, re: f64, im: f64, samples: usize) -> Result<RegionView> {
        let region = variability::region_sample(p, Complex64::new(re, im), samples)?;
        Ok(RegionView {
            points: region.points.iter().flat_map(|w| [w.re, w.im]).collect(),
            coverage_radius: region.coverage_radius,
        })
    }

    /// `[rho, R]`.
    pub fn landau_row(theorem: u32, m: f64, p: u32) -> Result<[f64; 2]> {
        let theorem: Theorem = theorem.to_string().parse()?;
        let row = landau::solve(theorem, m, p, landau::DEFAULT_TOLERANCE)?;
        Ok([row.rho, row.r])
    }
}

fn js_err(e: pharmonic::Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen]
pub struct BlochView(ops::BlochView);

#[wasm_bindgen]
impl BlochView {
    pub fn curve(&self) -> Vec<f64> {
        self.0.curve.clone()
    }

    #[wasm_bindgen(getter, js_name = yStar)]
    pub fn y_star(&self) -> f64 {
        self.0.y_star
    }

    #[wasm_bindgen(getter, js_name = phiAtStar)]
    pub fn phi_at_star(&self) -> f64 {
        self.0.phi_at_star
    }

    #[wasm_bindgen(getter)]
    pub fn bound(&self) -> f64 {
        self.0.bound
    }
}

#[wasm_bindgen(js_name = blochView)]
pub fn bloch_view(p: u32, m: f64, samples: usize) -> Result<BlochView, JsError> {
    ops::bloch_view(p, m, samples)
        .map(BlochView)
        .map_err(js_err)
}

#[wasm_bindgen]
pub struct RegionView(ops::RegionView);

#[wasm_bindgen]
impl RegionView {
    pub fn points(&self) -> Vec<f64> {
        self.0.points.clone()
    }

    #[wasm_bindgen(getter, js_name = coverageRadius)]
    pub fn coverage_radius(&self) -> f64 {
        self.0.coverage_radius
    }
}

#[wasm_bindgen(js_name = regionView)]
pub fn region_view(p: usize, re: f64, im: f64, samples: usize) -> Result<RegionView, JsError> {
    ops::region_view(p, re, im, samples)
        .map(RegionView)
        .map_err(js_err)
}

#[wasm_bindgen(js_name = landauRow)]
pub fn landau_row(theorem: u32, m: f64, p: u32) -> Result<Vec<f64>, JsError> {
    ops::landau_row(theorem, m, p)
        .map(|r| r.to_vec())
        .map_err(js_err)
}
