use std::fmt::Write;
use std::fs;

use anyhow::{Context, Result};
use num_complex::Complex64;
use pharmonic::bloch::{self, CriticalPoint};
use pharmonic::format::significant;
use pharmonic::geometry::{self, PredicateReport, SamplingGrid};
use pharmonic::landau::{self, LandauResult, TABLE_MS};
use pharmonic::{mapfile, variability, Theorem};
use serde_json::{json, Value};

use crate::cli::{BlochArgs, CheckArgs, Format, LandauArgs, Predicate, TableArgs, VariabilityArgs};

pub struct Output {
    pub text: String,
    /// `false` only when a checked predicate fails.
    pub passed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, passed: true }
    }
}

// Shortest round-trip, switching to exponent form for very small or large values.
fn num(x: f64) -> String {
    format!("{x:?}")
}

fn json_text(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("json values serialize");
    text.push('\n');
    text
}

const P2_NOTE: &str = "bound from the closed form 2M(2/(27π³))(8 + 36π² + (4 + 3π²)^{3/2}); \
the value 30.7682M quoted in the literature does not match this closed form";

pub fn constants(format: Format) -> Output {
    let k = landau::constants();
    let values = [("M0", k.m0), ("M1", k.m1), ("s0", k.s0), ("r0", k.r0)];
    match format {
        Format::Csv => {
            let mut out = String::from("name,value\n");
            for (name, v) in values {
                let _ = writeln!(out, "{name},{}", significant(v, 10));
            }
            Output::ok(out)
        }
        Format::Json => Output::ok(json_text(&json!({
            "M0": k.m0,
            "M1": k.m1,
            "s0": k.s0,
            "r0": k.r0,
        }))),
    }
}

fn csv_row(r: &LandauResult, digits: usize) -> String {
    format!(
        "{},{},{},{}",
        significant(r.m, digits),
        r.p,
        significant(r.rho, digits),
        significant(r.r, digits)
    )
}

fn row_json(r: &LandauResult) -> Value {
    json!({
        "theorem": r.theorem.to_string(),
        "M": r.m,
        "p": r.p,
        "rho": r.rho,
        "R": r.r,
        "residual": r.residual,
        "iterations": r.iterations,
    })
}

fn check_precision(digits: usize) -> Result<()> {
    if (1..=17).contains(&digits) {
        Ok(())
    } else {
        Err(pharmonic::Error::InvalidParameter {
            name: "precision",
            requirement: "must lie in 1..=17".into(),
        }
        .into())
    }
}

pub fn landau(args: &LandauArgs, format: Format) -> Result<Output> {
    check_precision(args.precision.precision)?;
    let row = landau::solve(args.theorem, args.m, args.p, args.tol)?;
    Ok(Output::ok(match format {
        Format::Csv => csv_row(&row, args.precision.precision) + "\n",
        Format::Json => json_text(&row_json(&row)),
    }))
}

pub fn landau_table(args: &TableArgs, format: Format) -> Result<Output> {
    check_precision(args.precision.precision)?;
    let ms = if args.ms.is_empty() {
        TABLE_MS.to_vec()
    } else {
        args.ms.clone()
    };
    let ps = match (args.ps.is_empty(), args.theorem) {
        (false, _) => args.ps.clone(),
        (true, Theorem::Thm41) => vec![2, 3, 4],
        (true, Theorem::Thm42) => vec![2, 3],
    };
    let rows = landau::generate_table(args.theorem, &ms, &ps)?;
    Ok(Output::ok(match format {
        Format::Csv => {
            let mut out = String::from("M,p,rho,R\n");
            for row in &rows {
                out += &csv_row(row, args.precision.precision);
                out.push('\n');
            }
            out
        }
        Format::Json => json_text(&Value::Array(rows.iter().map(row_json).collect())),
    }))
}

pub fn bloch(args: &BlochArgs, format: Format) -> Result<Output> {
    let b = bloch::bloch_upper_bound(args.p, args.m)?;
    if let Some(path) = &args.emit_curve {
        let mut curve = String::from("y,phi\n");
        for (y, v) in bloch::phi_curve(args.p, args.samples)? {
            let _ = writeln!(curve, "{},{}", num(y), num(v));
        }
        fs::write(path, curve).with_context(|| format!("writing {}", path.display()))?;
    }
    let note = (args.p == 2).then_some(P2_NOTE);
    Ok(Output::ok(match format {
        Format::Json => {
            let mut value = json!({
                "p": b.p,
                "M": b.m,
                "y_star": b.y_star,
                "phi_at_star": b.phi_at_star,
                "bound": b.bound,
            });
            if let Some(note) = note {
                value["note"] = json!(note);
            }
            json_text(&value)
        }
        Format::Csv => {
            let y = match b.y_star {
                CriticalPoint::Degenerate => "degenerate".to_string(),
                CriticalPoint::Maximum(y) => num(y),
            };
            let mut out = format!(
                "p,M,y_star,phi_at_star,bound\n{},{},{y},{},{}\n",
                b.p,
                num(b.m),
                num(b.phi_at_star),
                num(b.bound)
            );
            if let Some(note) = note {
                let _ = writeln!(out, "# note: {note}");
            }
            out
        }
    }))
}

fn report_csv(name: &str, r: &PredicateReport) -> String {
    format!(
        "predicate,passed,min_margin,worst_re,worst_im,points_checked,vacuous,reason\n{name},{},{},{},{},{},{},{}\n",
        r.passed,
        num(r.min_margin),
        num(r.worst_point.re),
        num(r.worst_point.im),
        r.points_checked,
        r.vacuous,
        r.reason.as_deref().unwrap_or("")
    )
}

pub fn check(args: &CheckArgs, format: Format) -> Result<Output> {
    let text = fs::read_to_string(&args.map_file)
        .with_context(|| format!("reading {}", args.map_file.display()))?;
    let map =
        mapfile::parse(&text).with_context(|| format!("parsing {}", args.map_file.display()))?;
    let grid = SamplingGrid::uniform(args.rings, args.angles, args.r_max)?;
    let (name, report) = match args.predicate {
        Predicate::Sense => ("sense", geometry::sense_preserving_report(&map, &grid)),
        Predicate::Starlike => ("starlike", geometry::starlike_report(&map, &grid)),
        Predicate::Convex => ("convex", geometry::convex_report(&map, &grid)),
    };
    let text = match format {
        Format::Csv => report_csv(name, &report),
        Format::Json => {
            let mut value = serde_json::to_value(&report).expect("report serializes");
            value["predicate"] = json!(name);
            value["grid"] = serde_json::to_value(grid.descriptor()).expect("grid serializes");
            json_text(&value)
        }
    };
    Ok(Output {
        text,
        passed: report.passed,
    })
}

pub fn variability(args: &VariabilityArgs, format: Format) -> Result<Output> {
    let z0 = Complex64::new(args.z0_re, args.z0_im);
    let region = variability::region_sample(args.p, z0, args.samples)?;
    Ok(Output::ok(match format {
        Format::Csv => {
            let mut out = String::from("re,im\n");
            for w in &region.points {
                let _ = writeln!(out, "{},{}", num(w.re), num(w.im));
            }
            let _ = writeln!(
                out,
                "# p={} z0_re={} z0_im={} samples={} coverage_radius={}",
                region.p,
                num(z0.re),
                num(z0.im),
                region.points.len(),
                num(region.coverage_radius)
            );
            out
        }
        Format::Json => json_text(&json!({
            "p": region.p,
            "z0": [z0.re, z0.im],
            "samples": region.points.len(),
            "coverage_radius": region.coverage_radius,
            "points": region.points.iter().map(|w| [w.re, w.im]).collect::<Vec<_>>(),
        })),
    }))
}
