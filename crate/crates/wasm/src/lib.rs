//! Browser bindings for the demo page in `www/`.
//!
//! Every export returns a JSON string; the plain functions behind them are
//! ordinary Rust and are tested on the host.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use flatscan::complex::{default_epsilon, flat_filtration, Grid};
use flatscan::grassmann::affine_distance;
use flatscan::json::diagram_to_json;
use flatscan::persistence::pd_reduction;
use flatscan::shapes::{self, fixtures};
use flatscan::transform::{chi_pair, euler_curve, radon_chi};
use flatscan::{Error, Flat};

fn demo_grid(name: &str) -> Result<Grid, Error> {
    match name {
        "annulus" => Ok(fixtures::annulus()),
        "pinholed" => Ok(fixtures::pinholed_annulus()),
        "disk" => Ok(fixtures::disk()),
        "two-disks" => {
            let a = shapes::shifted_disk(fixtures::ANNULUS_SIZE, 11.0, -13.0, 0.0);
            let b = shapes::shifted_disk(fixtures::ANNULUS_SIZE, 11.0, 13.0, 0.0);
            Grid::from_fn(a.dims().to_vec(), |idx| a.get(idx) || b.get(idx))
        }
        other => Err(Error::InvalidArgument(format!("unknown shape {other:?}"))),
    }
}

/// Line through `(0, offset)` rotated to make `angle_deg` with the x-axis,
/// moving the base point with it so that `offset` is the signed distance
/// from the origin.
pub fn demo_line(angle_deg: f64, offset: f64) -> Result<Flat, Error> {
    let (s, c) = angle_deg.to_radians().sin_cos();
    Flat::line(&[c, s], &[-s * offset, c * offset])
}

/// Degree 0 and 1 diagrams, Euler curve and slice χ of a built-in shape
/// filtered by the distance to a line, plus the occupancy grid for drawing.
pub fn scan_line_json(shape: &str, angle_deg: f64, offset: f64) -> Result<String, Error> {
    let grid = demo_grid(shape)?;
    let s = grid.to_shape();
    let line = demo_line(angle_deg, offset)?;
    let filt = flat_filtration(&s, &line)?;
    let diagrams = pd_reduction(&s, &filt, 1)?;
    let curve = euler_curve(&s, &filt);
    let cells: String = grid.cells().iter().map(|&b| if b { '1' } else { '0' }).collect();
    let out = json!({
        "size": grid.dims()[0],
        "cells": cells,
        "line": { "direction": line.basis()[0], "displacement": line.displacement() },
        "diagrams": diagrams.iter().map(diagram_to_json).collect::<Vec<Value>>(),
        "euler_curve": curve.breakpoints(),
        "slice_chi": radon_chi(&s, &line, default_epsilon(&s))?,
    });
    Ok(out.to_string())
}

/// Affine Grassmannian distance between two lines given as (angle, offset).
pub fn line_distance_value(a1: f64, o1: f64, a2: f64, o2: f64) -> Result<f64, Error> {
    affine_distance(&demo_line(a1, o1)?, &demo_line(a2, o2)?)
}

/// Rows `[m, n, χ₁, χ₂, case]` for all `0 ≤ m < n ≤ max_n`.
pub fn chi_table_json(max_n: usize) -> Result<String, Error> {
    if max_n > 30 {
        return Err(Error::InvalidArgument("max_n must be at most 30".into()));
    }
    let mut rows = Vec::new();
    for n in 1..=max_n {
        for m in 0..n {
            let p = chi_pair(m, n)?;
            rows.push(json!([m, n, p.chi1, p.chi2, p.case.tag()]));
        }
    }
    Ok(Value::Array(rows).to_string())
}

fn js(e: Error) -> JsError {
    JsError::new(&e.to_string())
}

#[wasm_bindgen(js_name = scanLine)]
pub fn scan_line(shape: &str, angle_deg: f64, offset: f64) -> Result<String, JsError> {
    scan_line_json(shape, angle_deg, offset).map_err(js)
}

#[wasm_bindgen(js_name = lineDistance)]
pub fn line_distance(a1: f64, o1: f64, a2: f64, o2: f64) -> Result<f64, JsError> {
    line_distance_value(a1, o1, a2, o2).map_err(js)
}

#[wasm_bindgen(js_name = chiTable)]
pub fn chi_table(max_n: usize) -> Result<String, JsError> {
    chi_table_json(max_n).map_err(js)
}
