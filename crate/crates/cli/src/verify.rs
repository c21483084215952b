//! `verify` subcommands.

use serde_json::json;
use topoforms_core::clebsch::{abelian_cs_group_identity, clebsch_from_su2, helicity_boundary_check, ClebschPotentials};
use topoforms_core::groupfield::{
    flatness_residual, from_euler, maurer_cartan, FlatnessScheme, MaurerCartanField, McScheme,
};
use topoforms_core::lattice::{convergence_study, max_norm};
use topoforms_core::liealg::{
    check_symmetric_pair, structure_constants, AlgebraFile, LieAlgebraSpec, SymmetricPairSpec, DEFAULT_TOL,
};
use topoforms_core::projection::{cs_coincidence_check, exp_series_maurer_cartan, project_connection_unchecked};
use topoforms_core::synth::{random_clebsch, random_euler_angles, BandLimitedVector};
use topoforms_core::topo::{divergence_identity_residual, GaugePotential};
use topoforms_core::{GridSpec, Mode, ScalarField};

use crate::args::{AlgebraArg, Common};
use crate::report::{LevelRecord, Tolerances, VerificationReport};
use crate::{load_error, CliError};

pub const MIN_ORDER: f64 = 1.8;

/// Band-limit and amplitude of the 4d potentials. The residual is the
/// discrete product-rule error, which on an 8⁴ grid is still visibly
/// pre-asymptotic for any nonconstant periodic data.
const DIV4_KMAX: usize = 1;
const DIV4_AMPLITUDE: f64 = 0.5;
const DIV2_KMAX: usize = 3;

/// Smooth Euler angles for analytic checks and for refinement studies.
const EULER_ANALYTIC: (usize, f64) = (2, 2.0);
const EULER_FD: (usize, f64) = (1, 0.5);

/// Amplitude of the algebra fields `X` in `g = exp(X)`. The truncated series
/// for `g⁻¹dg` errs at relative order `|X|²`; at 0.1 the central-difference
/// error dominates on all default grids.
const ALGEBRA_AMPLITUDE: f64 = 0.1;
const COINCIDENCE_SAMPLES: u64 = 10;

pub fn periodic_ladder(dim: usize, base: usize, levels: usize) -> Vec<GridSpec> {
    (0..levels)
        .map(|k| GridSpec::periodic_cube(dim, base << k).expect("valid ladder"))
        .collect()
}

/// Open unit cubes with `base·2^k` cells per axis.
pub fn open_ladder(base: usize, levels: usize) -> Vec<GridSpec> {
    (0..levels)
        .map(|k| GridSpec::open_cube(3, (base << k) + 1, 0.0, 1.0).expect("valid ladder"))
        .collect()
}

fn core_mode(common: &Common) -> Mode {
    match common.mode {
        crate::args::ModeArg::Analytic => Mode::Analytic,
        crate::args::ModeArg::Fd => Mode::Fd,
    }
}

pub fn divergence(common: &Common, dim: usize, algebra: AlgebraArg) -> Result<VerificationReport, CliError> {
    let lie_dim = match algebra {
        AlgebraArg::U1 => 1,
        AlgebraArg::Su2 => 3,
    };
    if dim == 2 && lie_dim != 1 {
        return Err(CliError::Usage("the 2d identity is Abelian; use --algebra u1".into()));
    }
    let levels = common.levels as usize;
    let structure = structure_constants(&LieAlgebraSpec::su2())?;
    let potential = |g: &GridSpec, kmax: usize, amplitude: f64| {
        let comps = BandLimitedVector::periodic(g, dim * lie_dim, kmax, amplitude, common.seed).sample(g);
        if lie_dim == 1 {
            GaugePotential::abelian(g.clone(), comps)
        } else {
            GaugePotential::non_abelian(g.clone(), structure.clone(), comps)
        }
    };
    if dim == 2 {
        let tol = Tolerances::new(&[("residual_max", 1e-12)], &common.tol)?;
        let mut report = VerificationReport::new("verify divergence", common.seed, &tol);
        for g in periodic_ladder(2, 16, levels) {
            let r = divergence_identity_residual(&potential(&g, DIV2_KMAX, 1.0)?)?;
            let h = g.max_spacing();
            report.levels.push(LevelRecord { quantity: "residual_max".into(), shape: g.shape().to_vec(), h, value: r.max });
            report.levels.push(LevelRecord { quantity: "residual_l2".into(), shape: g.shape().to_vec(), h, value: r.l2 });
        }
        report.pass = report
            .levels
            .iter()
            .filter(|l| l.quantity == "residual_max")
            .all(|l| l.value < tol.get("residual_max"));
        report.detail("dim", 2);
        report.detail("algebra", "u1");
        report.detail("kmax", DIV2_KMAX);
        return Ok(report);
    }
    let tol = Tolerances::new(&[("min_order", MIN_ORDER)], &common.tol)?;
    let mut report = VerificationReport::new("verify divergence", common.seed, &tol);
    let grids = periodic_ladder(4, 8, levels);
    let (lv, p) = convergence_study(&grids, |g| {
        Ok(divergence_identity_residual(&potential(g, DIV4_KMAX, DIV4_AMPLITUDE)?)?.l2)
    })?;
    report.levels = lv.iter().map(|l| LevelRecord::from_level("residual_l2", l)).collect();
    report.order("residual_l2", p);
    report.pass = p >= tol.get("min_order");
    report.detail("dim", 4);
    report.detail("algebra", if lie_dim == 1 { "u1" } else { "su2" });
    report.detail("kmax", DIV4_KMAX);
    report.detail("amplitude", DIV4_AMPLITUDE);
    Ok(report)
}

/// `θ = z`, `α = x`, `β = y` on the unit cube: helicity 1.
fn closed_form_boundary(n: usize) -> Result<(f64, f64, f64), CliError> {
    let grid = GridSpec::open_cube(3, n + 1, 0.0, 1.0)?;
    let c = ClebschPotentials::new(
        ScalarField::from_fn(&grid, |x| x[2]),
        ScalarField::from_fn(&grid, |x| x[0]),
        ScalarField::from_fn(&grid, |x| x[1]),
    )?;
    let r = helicity_boundary_check(&c)?;
    Ok((r.volume, r.surface, grid.max_spacing()))
}

pub fn clebsch(common: &Common) -> Result<VerificationReport, CliError> {
    let levels = common.levels as usize;
    let mode = core_mode(common);
    let grids = periodic_ladder(3, 16, levels);
    let seed = common.seed;
    match mode {
        Mode::Analytic => {
            let tol = Tolerances::new(
                &[("euler_routes", 1e-12), ("triple_route", 1e-10), ("closed_form_constant", 1.0)],
                &common.tol,
            )?;
            let mut report = VerificationReport::new("verify clebsch", seed, &tol);
            let (kmax, amp) = EULER_ANALYTIC;
            for g in &grids {
                let angles = random_euler_angles(g, kmax, amp, seed)?;
                let routes = clebsch_from_su2(&angles, Mode::Analytic)?;
                let triple = abelian_cs_group_identity(&angles, Mode::Analytic)?;
                let (shape, h) = (g.shape().to_vec(), g.max_spacing());
                report.levels.push(LevelRecord { quantity: "euler_routes".into(), shape: shape.clone(), h, value: routes.max_gap });
                report.levels.push(LevelRecord { quantity: "triple_route".into(), shape, h, value: triple.pointwise_gap });
            }
            // |value − 1| ≤ C h² on a 32-cell cube
            let (volume, surface, h) = closed_form_boundary(32)?;
            let closed_gap = (volume - 1.0).abs().max((surface - 1.0).abs());
            report.levels.push(LevelRecord { quantity: "closed_form".into(), shape: vec![33; 3], h, value: closed_gap });
            report.pass = report.levels.iter().all(|l| match l.quantity.as_str() {
                "closed_form" => l.value <= tol.get("closed_form_constant") * h * h,
                q => l.value < tol.get(q),
            });
            report.detail("mode", "analytic");
            report.detail("closed_form", json!({"volume": volume, "surface": surface, "expected": 1.0}));
            Ok(report)
        }
        Mode::Fd => {
            let tol = Tolerances::new(&[("min_order", MIN_ORDER)], &common.tol)?;
            let mut report = VerificationReport::new("verify clebsch", seed, &tol);
            let (kmax, amp) = EULER_FD;
            let (lv, p) = convergence_study(&grids, |g| {
                Ok(clebsch_from_su2(&random_euler_angles(g, kmax, amp, seed)?, Mode::Fd)?.max_gap)
            })?;
            report.levels.extend(lv.iter().map(|l| LevelRecord::from_level("euler_routes", l)));
            report.order("euler_routes", p);
            let (lv, p) = convergence_study(&grids, |g| {
                Ok(abelian_cs_group_identity(&random_euler_angles(g, kmax, amp, seed)?, Mode::Fd)?.pointwise_gap)
            })?;
            report.levels.extend(lv.iter().map(|l| LevelRecord::from_level("triple_route", l)));
            report.order("triple_route", p);
            let (lv, p) = convergence_study(&open_ladder(16, levels), |g| {
                let exact = random_clebsch(g, 6, 3.0, 1.0, seed)?;
                let c = ClebschPotentials::new(exact.theta().clone(), exact.alpha().clone(), exact.beta().clone())?;
                Ok(helicity_boundary_check(&c)?.gap)
            })?;
            report.levels.extend(lv.iter().map(|l| LevelRecord::from_level("boundary_reduction", l)));
            report.order("boundary_reduction", p);
            report.pass = report.measured_order.is_some_and(|m| m >= tol.get("min_order"));
            report.detail("mode", "fd");
            Ok(report)
        }
    }
}

pub fn flatness(common: &Common) -> Result<VerificationReport, CliError> {
    let levels = common.levels as usize;
    let seed = common.seed;
    let grids = periodic_ladder(3, 16, levels);
    // Random data that is not a Maurer-Cartan form.
    let control = {
        let g = &grids[0];
        let v = BandLimitedVector::periodic(g, 9, 2, 1.0, seed).sample(g);
        max_norm(flatness_residual(&MaurerCartanField::new(g.clone(), v)?, FlatnessScheme::Central2)?.values())
    };
    let mut report = match core_mode(common) {
        Mode::Analytic => {
            let tol = Tolerances::new(&[("residual_max", 1e-10), ("control_min", 0.1)], &common.tol)?;
            let mut report = VerificationReport::new("verify flatness", seed, &tol);
            let (kmax, amp) = EULER_ANALYTIC;
            for g in &grids {
                let angles = random_euler_angles(g, kmax, amp, seed)?;
                let mc = maurer_cartan(&from_euler(&angles), McScheme::EulerAnalytic(&angles))?;
                let r = max_norm(flatness_residual(&mc, FlatnessScheme::Exact)?.values());
                report.levels.push(LevelRecord { quantity: "residual_max".into(), shape: g.shape().to_vec(), h: g.max_spacing(), value: r });
            }
            report.pass = report.levels.iter().all(|l| l.value < tol.get("residual_max"))
                && control > tol.get("control_min");
            report.detail("mode", "analytic");
            report
        }
        Mode::Fd => {
            let tol = Tolerances::new(&[("min_order", MIN_ORDER), ("control_min", 0.1)], &common.tol)?;
            let mut report = VerificationReport::new("verify flatness", seed, &tol);
            let (kmax, amp) = EULER_FD;
            let (lv, p) = convergence_study(&grids, |g| {
                let mc = maurer_cartan(&from_euler(&random_euler_angles(g, kmax, amp, seed)?), McScheme::Central2)?;
                Ok(max_norm(flatness_residual(&mc, FlatnessScheme::Central2)?.values()))
            })?;
            report.levels = lv.iter().map(|l| LevelRecord::from_level("residual_max", l)).collect();
            report.order("residual_max", p);
            report.pass = p >= tol.get("min_order") && control > tol.get("control_min");
            report.detail("mode", "fd");
            report
        }
    };
    report.detail("control_residual_max", control);
    Ok(report)
}

/// Coordinates of the standard `σ_a / 2i` in the basis of `alg`, if `alg`
/// spans exactly su(2).
fn su2_embedding(alg: &LieAlgebraSpec) -> Option<Vec<[f64; 3]>> {
    if alg.matrix_dim() != 2 || alg.dim() != 3 {
        return None;
    }
    let std = LieAlgebraSpec::su2();
    let cols: Vec<Vec<f64>> = (0..3).map(|a| alg.coordinates(std.generator(a))).collect();
    for (a, c) in cols.iter().enumerate() {
        if (alg.combine(c) - std.generator(a)).norm() > DEFAULT_TOL {
            return None;
        }
    }
    Some((0..3).map(|c| [cols[0][c], cols[1][c], cols[2][c]]).collect())
}

/// Re-expresses a standard-basis su(2) potential in the basis of `pair`.
fn rebase(pot: &GaugePotential, map: &[[f64; 3]], pair: &SymmetricPairSpec) -> topoforms_core::Result<GaugePotential> {
    let convert = |blocks: &[Vec<f64>]| -> Vec<Vec<f64>> {
        let mut out = Vec::with_capacity(blocks.len());
        for blk in blocks.chunks(3) {
            for row in map {
                out.push((0..blk[0].len()).map(|s| (0..3).map(|a| row[a] * blk[a][s]).sum()).collect());
            }
        }
        out
    };
    let mut out = GaugePotential::non_abelian(pot.grid().clone(), pair.structure().clone(), convert(pot.components()))?;
    if pot.has_exact_derivative() {
        out = out.with_exterior_derivative(convert(&pot.exterior_derivative()?))?;
    }
    Ok(out)
}

pub fn coincidence(common: &Common, pair_file: Option<&std::path::Path>) -> Result<VerificationReport, CliError> {
    let pair = match pair_file {
        Some(path) => {
            let file = AlgebraFile::load(path).map_err(|e| load_error(path, e))?;
            let alg = file.algebra()?;
            let t = file.h_indices.clone().unwrap_or_else(|| (0..alg.dim()).collect());
            SymmetricPairSpec::new(alg, t)?
        }
        None => SymmetricPairSpec::su2_u1(),
    };
    let check = check_symmetric_pair(&pair, DEFAULT_TOL);
    let seed = common.seed;
    let levels = common.levels as usize;
    let mode = core_mode(common);
    let embedding = su2_embedding(pair.algebra());
    let tol = match (&embedding, mode) {
        (Some(_), Mode::Analytic) => Tolerances::new(&[("constancy", 1e-6), ("ratio_spread", 1e-6)], &common.tol)?,
        _ => Tolerances::new(&[("min_order", MIN_ORDER)], &common.tol)?,
    };
    let mut report = VerificationReport::new("verify coincidence", seed, &tol);
    report.detail("algebra", pair.algebra().name());
    report.detail("h_indices", pair.t_indices());
    report.detail("symmetric", check.symmetric);
    report.detail("dimension_condition", check.dimension_condition);
    match (embedding, mode) {
        (Some(map), Mode::Analytic) => {
            let (kmax, amp) = EULER_ANALYTIC;
            let grid = GridSpec::periodic_cube(3, 16)?;
            let mut samples = Vec::new();
            for s in seed..seed + COINCIDENCE_SAMPLES {
                let angles = random_euler_angles(&grid, kmax, amp, s)?;
                let mc = maurer_cartan(&from_euler(&angles), McScheme::EulerAnalytic(&angles))?;
                let conn = rebase(&mc.to_potential(), &map, &pair)?;
                let r = cs_coincidence_check(&project_connection_unchecked(&conn, &pair)?, &conn)?;
                report.levels.push(LevelRecord {
                    quantity: "constancy".into(),
                    shape: grid.shape().to_vec(),
                    h: grid.max_spacing(),
                    value: r.constancy.unwrap_or(f64::NAN),
                });
                samples.push(json!({"seed": s, "report": r}));
            }
            let means: Vec<f64> = samples
                .iter()
                .filter_map(|v| v["report"]["mean_pointwise_ratio"].as_f64())
                .collect();
            let spread = if means.len() == samples.len() && !means.is_empty() {
                means.iter().cloned().fold(f64::MIN, f64::max) - means.iter().cloned().fold(f64::MAX, f64::min)
            } else {
                f64::NAN
            };
            report.pass = check.symmetric
                && report.levels.iter().all(|l| l.value < tol.get("constancy"))
                && spread < tol.get("ratio_spread");
            report.detail("route", "su2-euler-analytic");
            report.detail("ratio_spread", crate::report::finite(spread));
            report.detail("ratio", means.first().copied());
            report.detail("samples", samples);
        }
        (Some(map), Mode::Fd) => {
            let (kmax, amp) = EULER_FD;
            let mut last = None;
            let (lv, p) = convergence_study(&periodic_ladder(3, 16, levels), |g| {
                let g_field = from_euler(&random_euler_angles(g, kmax, amp, seed)?);
                let conn = rebase(&maurer_cartan(&g_field, McScheme::Central2)?.to_potential(), &map, &pair)?;
                let r = cs_coincidence_check(&project_connection_unchecked(&conn, &pair)?, &conn)?;
                let c = r.constancy.unwrap_or(f64::NAN);
                last = Some(r);
                Ok(c)
            })?;
            report.levels = lv.iter().map(|l| LevelRecord::from_level("constancy", l)).collect();
            report.order("constancy", p);
            report.pass = check.symmetric && p >= tol.get("min_order");
            report.detail("route", "su2-euler-fd");
            report.detail("finest", last);
        }
        (None, _) => {
            // Algebra-level data: g = exp(X) with a truncated series for g⁻¹dg.
            let structure = pair.structure().clone();
            let mut last = None;
            let (lv, p) = convergence_study(&periodic_ladder(3, 16, levels), |g| {
                let x = BandLimitedVector::periodic(g, pair.dim_g(), 1, ALGEBRA_AMPLITUDE, seed).sample(g);
                let conn = exp_series_maurer_cartan(g, &structure, &x)?;
                let r = cs_coincidence_check(&project_connection_unchecked(&conn, &pair)?, &conn)?;
                let c = r.constancy.unwrap_or(f64::NAN);
                last = Some(r);
                Ok(c)
            })?;
            report.levels = lv.iter().map(|l| LevelRecord::from_level("constancy", l)).collect();
            report.order("constancy", p);
            report.pass = check.symmetric && p >= tol.get("min_order");
            report.detail("route", "exp-series-fd");
            report.detail("amplitude", ALGEBRA_AMPLITUDE);
            report.detail("finest", last);
        }
    }
    report.detail("pair_report", check);
    Ok(report)
}
