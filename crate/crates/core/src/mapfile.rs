//! Line-oriented text format for p-harmonic maps.
//!
//! ```text
//! # f(z) = z + |z|^2 (0.5 zbar)
//! p=2 N=1
//! 1 1 1 0 z
//! 2 1 0.5 0 zbar
//! ```
//!
//! The header gives the layer count `p` and truncation degree `N`. Each
//! following line is `k n re im kind`: the coefficient `re + i·im` of layer
//! `k` (weight `|z|^{2(k-1)}`), where `kind` is `z` or `zbar` for `zⁿ`/`z̄ⁿ`
//! (`1 ≤ n ≤ N`) and `const` for the constant (`n = 0`). Blank lines and
//! `#` comments are ignored; a repeated `(k, n, kind)` is an error.

use std::collections::HashSet;
use std::fmt::Write;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::series::{HarmonicSeries, PHarmonicMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Kind {
    Const,
    Z,
    Zbar,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_header(line_no: usize, line: &str) -> Result<(usize, usize)> {
    let mut p = None;
    let mut n = None;
    for token in line.split_whitespace() {
        let (key, value) = token.split_once('=').ok_or_else(|| {
            parse_err(
                line_no,
                format!("expected key=value in header, got {token:?}"),
            )
        })?;
        let value: usize = value
            .parse()
            .map_err(|_| parse_err(line_no, format!("{key} must be a non-negative integer")))?;
        match key {
            "p" => p = Some(value),
            "N" => n = Some(value),
            _ => return Err(parse_err(line_no, format!("unknown header key {key:?}"))),
        }
    }
    match (p, n) {
        (Some(0), _) => Err(parse_err(line_no, "p must be ≥ 1")),
        (Some(p), Some(n)) => Ok((p, n)),
        _ => Err(parse_err(line_no, "header must be `p=<int> N=<int>`")),
    }
}

pub fn parse(text: &str) -> Result<PHarmonicMap> {
    let mut header: Option<(usize, usize)> = None;
    let mut layers: Vec<HarmonicSeries> = Vec::new();
    let mut seen = HashSet::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((p, degree)) = header else {
            let h = parse_header(line_no, line)?;
            layers = vec![HarmonicSeries::zero(h.1); h.0];
            header = Some(h);
            continue;
        };

        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 5 {
            return Err(parse_err(
                line_no,
                format!("expected `k n re im kind`, got {} fields", fields.len()),
            ));
        }
        let k: usize = fields[0]
            .parse()
            .map_err(|_| parse_err(line_no, "k must be a positive integer"))?;
        if k == 0 || k > p {
            return Err(parse_err(line_no, format!("layer k = {k} outside 1..={p}")));
        }
        let n: usize = fields[1]
            .parse()
            .map_err(|_| parse_err(line_no, "n must be a non-negative integer"))?;
        let number = |s: &str, name: &str| -> Result<f64> {
            match s.parse::<f64>() {
                Ok(v) if v.is_finite() => Ok(v),
                _ => Err(parse_err(
                    line_no,
                    format!("{name} must be a finite number"),
                )),
            }
        };
        let value = Complex64::new(number(fields[2], "re")?, number(fields[3], "im")?);
        let kind = match fields[4] {
            "const" => Kind::Const,
            "z" => Kind::Z,
            "zbar" => Kind::Zbar,
            other => return Err(parse_err(line_no, format!("unknown kind {other:?}"))),
        };
        match kind {
            Kind::Const if n != 0 => return Err(parse_err(line_no, "const entries need n = 0")),
            Kind::Z | Kind::Zbar if n == 0 || n > degree => {
                return Err(parse_err(line_no, format!("n = {n} outside 1..={degree}")))
            }
            _ => {}
        }
        if !seen.insert((k, n, kind)) {
            return Err(parse_err(
                line_no,
                format!("duplicate coefficient ({k}, {n}, {})", fields[4]),
            ));
        }
        let layer = std::mem::replace(&mut layers[k - 1], HarmonicSeries::zero(0));
        layers[k - 1] = match kind {
            Kind::Const | Kind::Z => layer.with_z(n, value),
            Kind::Zbar => layer.with_zbar(n, value),
        };
    }
    if header.is_none() {
        return Err(parse_err(
            last_line.max(1),
            "missing `p=<int> N=<int>` header",
        ));
    }
    PHarmonicMap::new(layers)
}

/// Writes every nonzero coefficient with shortest round-trip formatting.
pub fn to_text(map: &PHarmonicMap) -> String {
    let mut out = format!("p={} N={}\n", map.p(), map.degree());
    for (idx, layer) in map.layers().iter().enumerate() {
        let k = idx + 1;
        let mut line = |n: usize, v: Complex64, kind: &str| {
            if v != Complex64::new(0.0, 0.0) {
                let _ = writeln!(out, "{k} {n} {} {} {kind}", v.re, v.im);
            }
        };
        line(0, layer.c0(), "const");
        for n in 1..=layer.degree() {
            line(n, layer.z_coeff(n), "z");
        }
        for n in 1..=layer.degree() {
            line(n, layer.zbar_coeff(n), "zbar");
        }
    }
    out
}
