//! Sparse polynomials in `z` and `z̄`.
//!
//! A [`BiPolynomial`] is the finite sum `Σ e_{ij} z^i z̄^j`. Wirtinger
//! derivatives act on monomials exactly (`∂_z z^i z̄^j = i z^{i-1} z̄^j`), so
//! the Laplacian `Δ = 4 ∂_z ∂_z̄` and the operator `D = z∂_z − z̄∂_z̄` never
//! leave the coefficient level. Zero coefficients are pruned with an exact
//! comparison; nothing is dropped for being merely small.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// Exponent pair `(i, j)` of the monomial `z^i z̄^j`.
pub type Exponent = (u32, u32);

#[derive(Debug, Clone, Default, PartialEq)]
pub struct BiPolynomial {
    terms: BTreeMap<Exponent, Complex64>,
}

impl BiPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(i: u32, j: u32, coeff: Complex64) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, coeff);
        p
    }

    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, Complex64)>,
    {
        let mut p = Self::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    /// Accumulate `coeff · z^i z̄^j`, removing the entry if it cancels to
    /// exactly zero.
    pub fn add_term(&mut self, i: u32, j: u32, coeff: Complex64) {
        if coeff == Complex64::new(0.0, 0.0) {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert(Complex64::new(0.0, 0.0));
        *entry += coeff;
        if *entry == Complex64::new(0.0, 0.0) {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> Complex64 {
        self.terms
            .get(&(i, j))
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exponent, Complex64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest coefficient modulus, 0 for the zero polynomial.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn max_degrees(&self) -> (u32, u32) {
        self.terms
            .keys()
            .fold((0, 0), |(a, b), &(i, j)| (a.max(i), b.max(j)))
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c * factor)))
    }

    /// Evaluate at `(z, z̄)` using precomputed power tables.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        if self.terms.is_empty() {
            return Complex64::new(0.0, 0.0);
        }
        let (di, dj) = self.max_degrees();
        let zp = powers(z, di);
        let zbp = powers(z.conj(), dj);
        self.terms
            .iter()
            .map(|(&(i, j), &c)| c * zp[i as usize] * zbp[j as usize])
            .sum()
    }

    /// Evaluate with caller-supplied tables `zp[i] = z^i`, `zbp[j] = z̄^j`
    /// covering [`max_degrees`](Self::max_degrees).
    pub fn eval_with_powers(&self, zp: &[Complex64], zbp: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(&(i, j), &c)| c * zp[i as usize] * zbp[j as usize])
            .sum()
    }

    /// `∂/∂z`.
    pub fn d_z(&self) -> Self {
        Self::from_terms(
            self.terms()
                .filter(|&((i, _), _)| i > 0)
                .map(|((i, j), c)| ((i - 1, j), c * i as f64)),
        )
    }

    /// `∂/∂z̄`.
    pub fn d_zbar(&self) -> Self {
        Self::from_terms(
            self.terms()
                .filter(|&((_, j), _)| j > 0)
                .map(|((i, j), c)| ((i, j - 1), c * j as f64)),
        )
    }

    /// `Δ = 4 ∂²/∂z∂z̄`, term-wise `4ij z^{i-1} z̄^{j-1}`.
    pub fn laplacian(&self) -> Self {
        Self::from_terms(
            self.terms()
                .filter(|&((i, j), _)| i > 0 && j > 0)
                .map(|((i, j), c)| ((i - 1, j - 1), c * (4 * i as u64 * j as u64) as f64)),
        )
    }

    /// `Δ` applied `times` times.
    pub fn laplacian_iter(&self, times: u32) -> Self {
        (0..times).fold(self.clone(), |acc, _| acc.laplacian())
    }

    /// `D = z∂_z − z̄∂_z̄`, which multiplies `z^i z̄^j` by `i − j`.
    pub fn apply_d(&self) -> Self {
        Self::from_terms(
            self.terms()
                .map(|((i, j), c)| ((i, j), c * (i as f64 - j as f64))),
        )
    }
}

/// `[1, z, z², …, z^max]`.
pub fn powers(z: Complex64, max: u32) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(max as usize + 1);
    let mut acc = Complex64::new(1.0, 0.0);
    out.push(acc);
    for _ in 0..max {
        acc *= z;
        out.push(acc);
    }
    out
}

impl Add for &BiPolynomial {
    type Output = BiPolynomial;

    fn add(self, rhs: &BiPolynomial) -> BiPolynomial {
        let mut out = self.clone();
        for ((i, j), c) in rhs.terms() {
            out.add_term(i, j, c);
        }
        out
    }
}

impl Add for BiPolynomial {
    type Output = BiPolynomial;

    fn add(self, rhs: BiPolynomial) -> BiPolynomial {
        &self + &rhs
    }
}

impl Neg for &BiPolynomial {
    type Output = BiPolynomial;

    fn neg(self) -> BiPolynomial {
        self.scale(Complex64::new(-1.0, 0.0))
    }
}

impl Sub for &BiPolynomial {
    type Output = BiPolynomial;

    fn sub(self, rhs: &BiPolynomial) -> BiPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &BiPolynomial {
    type Output = BiPolynomial;

    fn mul(self, rhs: &BiPolynomial) -> BiPolynomial {
        let mut out = BiPolynomial::zero();
        for ((i1, j1), c1) in self.terms() {
            for ((i2, j2), c2) in rhs.terms() {
                out.add_term(i1 + i2, j1 + j2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for BiPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, ((i, j), c)) in self.terms().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({}{:+}i) z^{} zbar^{}", c.re, c.im, i, j)?;
        }
        Ok(())
    }
}
