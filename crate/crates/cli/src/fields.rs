//! Field generation and the commands that read TFF1 files.

use std::f64::consts::PI;
use std::path::Path;

use serde_json::json;
use sha2::{Digest, Sha256};
use topoforms_core::groupfield::{from_euler, winding_number, GroupElementField};
use topoforms_core::lattice::RawField;
use topoforms_core::liealg::{check_symmetric_pair, AlgebraFile, SymmetricPairSpec, DEFAULT_TOL};
use topoforms_core::synth::{abc_flow, hedgehog, random_euler_angles, BandLimitedVector, FluxTubes};
use topoforms_core::topo::helicity;
use topoforms_core::{GridSpec, VectorField};

use crate::args::{Common, FieldKind, GenField};
use crate::report::{LevelRecord, Tolerances, VerificationReport};
use crate::{load_error, CliError};

fn kind_name(kind: FieldKind) -> &'static str {
    match kind {
        FieldKind::RandomBandlimited => "random-bandlimited",
        FieldKind::AbcFlow => "abc-flow",
        FieldKind::Hedgehog => "hedgehog",
        FieldKind::EulerRandom => "euler-random",
        FieldKind::FluxTubes => "flux-tubes",
    }
}

pub fn generate(args: &GenField, seed: u64) -> Result<(RawField, serde_json::Value), CliError> {
    let n = args.n;
    Ok(match args.kind {
        FieldKind::RandomBandlimited => {
            let grid = GridSpec::periodic_cube(args.dim, n)?;
            let components = args.components.unwrap_or(args.dim);
            let kmax = args.kmax.min(n / 4);
            let data = BandLimitedVector::periodic(&grid, components, kmax, args.amplitude, seed).sample(&grid);
            (RawField::new(grid, data)?, json!({"dim": args.dim, "components": components, "kmax": kmax, "amplitude": args.amplitude}))
        }
        FieldKind::AbcFlow => {
            let grid = GridSpec::periodic_cube(3, n)?;
            let [a, b, c] = [args.abc[0], args.abc[1], args.abc[2]];
            let v = abc_flow(&grid, a, b, c)?;
            let expected = (2.0 * PI).powi(3) * (a * a + b * b + c * c);
            (RawField::new(grid, v.into_components())?, json!({"abc": [a, b, c], "expected_helicity": expected}))
        }
        FieldKind::Hedgehog => {
            let grid = GridSpec::open_cube(3, n, -1.0, 1.0)?;
            let g = hedgehog(&grid, [0.0; 3], args.radius)?;
            let deviation = topoforms_core::groupfield::boundary_deviation(&g);
            (g.to_raw(), json!({"radius": args.radius, "boundary_deviation": deviation}))
        }
        FieldKind::EulerRandom => {
            let grid = GridSpec::periodic_cube(3, n)?;
            let g = from_euler(&random_euler_angles(&grid, args.kmax, args.amplitude, seed)?);
            (g.to_raw(), json!({"kmax": args.kmax, "amplitude": args.amplitude}))
        }
        FieldKind::FluxTubes => {
            let tubes = FluxTubes { flux1: args.flux1, flux2: args.flux2, ..FluxTubes::default() };
            let (lo, hi) = tubes.bounds(0.1);
            let grid = GridSpec::open(&[n; 3], &lo, &hi)?;
            let a = tubes.sample(&grid)?;
            (
                RawField::new(grid, a.into_components())?,
                json!({"flux1": args.flux1, "flux2": args.flux2, "expected_helicity": tubes.expected_helicity()}),
            )
        }
    })
}

pub fn gen_field(common: &Common, args: &GenField) -> Result<VerificationReport, CliError> {
    let out = common.out.as_deref().ok_or_else(|| CliError::Usage("gen-field needs --out <path>".into()))?;
    let (raw, params) = generate(args, common.seed)?;
    let bytes = raw.to_bytes();
    std::fs::write(out, &bytes).map_err(|e| CliError::Output(format!("{}: {e}", out.display())))?;
    let tol = Tolerances::new(&[], &common.tol)?;
    let mut report = VerificationReport::new("gen-field", common.seed, &tol);
    report.pass = true;
    report.detail("kind", kind_name(args.kind));
    report.detail("path", out.display().to_string());
    report.detail("shape", raw.grid.shape());
    report.detail("components", raw.components());
    report.detail("bytes", bytes.len());
    report.detail("sha256", format!("{:x}", Sha256::digest(&bytes)));
    report.detail("params", params);
    Ok(report)
}

fn load(path: &Path) -> Result<RawField, CliError> {
    RawField::load(path).map_err(|e| load_error(path, e))
}

pub fn winding(common: &Common, path: &Path) -> Result<VerificationReport, CliError> {
    let g = GroupElementField::from_raw(load(path)?)?;
    let w = winding_number(&g)?;
    let tol = Tolerances::new(&[("deviation", 2e-2)], &common.tol)?;
    let mut report = VerificationReport::new("winding", common.seed, &tol);
    let grid = g.grid();
    report.levels.push(LevelRecord { quantity: "W".into(), shape: grid.shape().to_vec(), h: grid.max_spacing(), value: w.W });
    report.pass = w.deviation < tol.get("deviation");
    report.detail("W", w.W);
    report.detail("nearest_integer", w.nearest_integer);
    report.detail("deviation", w.deviation);
    report.detail("boundary_deviation", w.boundary_deviation);
    report.detail("normalization", w.normalization);
    Ok(report)
}

pub fn helicity_cmd(common: &Common, path: &Path, expect: Option<f64>) -> Result<VerificationReport, CliError> {
    let raw = load(path)?;
    let v = VectorField::new(raw.grid.clone(), raw.data)?;
    let h = helicity(&v)?;
    let tol = Tolerances::new(&[("relative", 1e-3)], &common.tol)?;
    let mut report = VerificationReport::new("helicity", common.seed, &tol);
    let grid = v.grid();
    report.levels.push(LevelRecord { quantity: "helicity".into(), shape: grid.shape().to_vec(), h: grid.max_spacing(), value: h });
    report.detail("helicity", h);
    report.detail("curl", "central2");
    report.pass = match expect {
        Some(e) => {
            let rel = ((h - e) / e).abs();
            report.detail("expected", e);
            report.detail("relative_error", rel);
            rel < tol.get("relative")
        }
        None => true,
    };
    Ok(report)
}

pub fn algebra_check(common: &Common, path: &Path) -> Result<VerificationReport, CliError> {
    let file = AlgebraFile::load(path).map_err(|e| load_error(path, e))?;
    let alg = file.algebra()?;
    let t = file.h_indices.clone().unwrap_or_else(|| (0..alg.dim()).collect());
    let pair = SymmetricPairSpec::new(alg, t)?;
    let tol = Tolerances::new(&[("residual", DEFAULT_TOL)], &common.tol)?;
    let check = check_symmetric_pair(&pair, tol.get("residual"));
    let mut report = VerificationReport::new("algebra check", common.seed, &tol);
    report.pass = check.symmetric;
    report.details = serde_json::to_value(&check)?;
    Ok(report)
}
