#![allow(dead_code)]

use pharmonic::{Complex64, HarmonicSeries, PHarmonicMap};
use proptest::prelude::*;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_complex<R: Rng>(rng: &mut R, scale: f64) -> Complex64 {
    cx(rng.gen_range(-scale..=scale), rng.gen_range(-scale..=scale))
}

/// Uniform on the disk of the given radius.
pub fn random_in_disk<R: Rng>(rng: &mut R, radius: f64) -> Complex64 {
    let r = radius * rng.gen::<f64>().sqrt();
    Complex64::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
}

pub fn random_series<R: Rng>(rng: &mut R, degree: usize, scale: f64) -> HarmonicSeries {
    let c = (0..degree).map(|_| random_complex(rng, scale)).collect();
    let d = (0..degree).map(|_| random_complex(rng, scale)).collect();
    HarmonicSeries::new(random_complex(rng, scale), c, d).unwrap()
}

pub fn random_map<R: Rng>(rng: &mut R, p: usize, degree: usize, scale: f64) -> PHarmonicMap {
    PHarmonicMap::new((0..p).map(|_| random_series(rng, degree, scale)).collect()).unwrap()
}

/// Harmonic series with `s(0) = 0` and `Σ(|c_n| + |d_n|) = budget`.
pub fn random_normalized_series<R: Rng>(rng: &mut R, degree: usize, budget: f64) -> HarmonicSeries {
    let s = random_series(rng, degree, 1.0);
    let s = HarmonicSeries::new(
        cx(0.0, 0.0),
        s.z_coeffs().to_vec(),
        s.zbar_coeffs().to_vec(),
    )
    .unwrap();
    let total = s.abs_coeff_sum();
    s.scaled(cx(budget / total, 0.0))
}

pub fn complex_strategy() -> impl Strategy<Value = Complex64> {
    (-1.0..=1.0f64, -1.0..=1.0f64).prop_map(|(re, im)| cx(re, im))
}

pub fn series_strategy(max_degree: usize) -> impl Strategy<Value = HarmonicSeries> {
    (0..=max_degree).prop_flat_map(|degree| {
        (
            complex_strategy(),
            prop::collection::vec(complex_strategy(), degree),
            prop::collection::vec(complex_strategy(), degree),
        )
            .prop_map(|(c0, c, d)| HarmonicSeries::new(c0, c, d).unwrap())
    })
}

pub fn map_strategy(max_p: usize, max_degree: usize) -> impl Strategy<Value = PHarmonicMap> {
    prop::collection::vec(series_strategy(max_degree), 1..=max_p)
        .prop_map(|layers| PHarmonicMap::new(layers).unwrap())
}

pub fn disk_point_strategy(radius: f64) -> impl Strategy<Value = Complex64> {
    (0.0..=radius, 0.0..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}
