use std::f64::consts::PI;

use topoforms_core::clebsch::{
    abelian_cs_group_identity, clebsch_from_su2, helicity_boundary_check, total_derivative_gap,
    ClebschPotentials,
};
use topoforms_core::groupfield::{EulerAngleField, EulerJet};
use topoforms_core::lattice::{convergence_study, surface_flux};
use topoforms_core::synth::{self, random_euler_angles};
use topoforms_core::{GridSpec, Mode, ScalarField, TopoError};

fn random_clebsch(grid: &GridSpec, seed: u64) -> ClebschPotentials {
    synth::random_clebsch(grid, 6, 3.0, 1.0, seed).unwrap()
}

fn open_ladder(sizes: &[usize]) -> Vec<GridSpec> {
    sizes.iter().map(|&n| GridSpec::open_cube(3, n + 1, 0.0, 1.0).unwrap()).collect()
}

#[test]
fn linear_potentials_give_unit_helicity() {
    let grid = GridSpec::open_cube(3, 33, 0.0, 1.0).unwrap();
    let c = ClebschPotentials::new(
        ScalarField::from_fn(&grid, |x| x[2]),
        ScalarField::from_fn(&grid, |x| x[0]),
        ScalarField::from_fn(&grid, |x| x[1]),
    )
    .unwrap();
    let r = helicity_boundary_check(&c).unwrap();
    let h = 1.0 / 32.0;
    assert!((r.volume - 1.0).abs() < h * h, "{r:?}");
    assert!((r.surface - 1.0).abs() < h * h, "{r:?}");
    assert!(r.gap < h * h);
}

#[test]
fn zero_theta_has_no_helicity() {
    let grid = GridSpec::open_cube(3, 12, -1.0, 1.0).unwrap();
    let c = ClebschPotentials::new(
        ScalarField::zeros(&grid),
        ScalarField::from_fn(&grid, |x| x[0].sin() + x[1]),
        ScalarField::from_fn(&grid, |x| x[2] * x[1]),
    )
    .unwrap();
    let r = helicity_boundary_check(&c).unwrap();
    assert!(r.volume.abs() < 1e-12 && r.surface.abs() < 1e-12);
}

#[test]
fn boundary_reduction_rejects_periodic_grids() {
    let grid = GridSpec::periodic_cube(3, 8).unwrap();
    let z = ScalarField::zeros(&grid);
    let c = ClebschPotentials::new(z.clone(), z.clone(), z).unwrap();
    assert!(matches!(helicity_boundary_check(&c), Err(TopoError::PeriodicGrid)));
}

#[test]
fn boundary_gap_converges_with_finite_differences() {
    let (levels, p) = convergence_study(&open_ladder(&[16, 32, 64]), |g| {
        let exact = random_clebsch(g, 21);
        let c = ClebschPotentials::new(exact.theta().clone(), exact.alpha().clone(), exact.beta().clone())?;
        Ok(helicity_boundary_check(&c)?.gap)
    })
    .unwrap();
    assert!(p >= 1.8, "order {p}: {levels:?}");
}

#[test]
fn boundary_gap_converges_with_exact_gradients() {
    let (levels, p) =
        convergence_study(&open_ladder(&[16, 32, 64]), |g| Ok(helicity_boundary_check(&random_clebsch(g, 5))?.gap))
            .unwrap();
    assert!(p >= 1.8, "order {p}: {levels:?}");
}

#[test]
fn total_derivative_gap_converges() {
    let (levels, p) =
        convergence_study(&open_ladder(&[16, 32, 64]), |g| total_derivative_gap(&random_clebsch(g, 8), Mode::Analytic))
            .unwrap();
    assert!(p >= 1.8, "order {p}: {levels:?}");
}

#[test]
fn theta_shift_leaves_closed_field_helicity_unchanged() {
    // α, β periodic in x and y with B tangent to the z faces: no net flux.
    let grid = GridSpec::open(&[33, 33, 33], &[0.0, 0.0, 0.0], &[2.0 * PI, 2.0 * PI, 1.0]).unwrap();
    let make = |shift: f64| {
        ClebschPotentials::from_fn(&grid, move |x| {
            let (sx, cx, sy, cy) = (x[0].sin(), x[0].cos(), x[1].sin(), x[1].cos());
            (
                [x[2] * x[2] + shift, sx, sy],
                [[0.0, 0.0, 2.0 * x[2]], [cx, 0.0, 0.0], [0.0, cy, 0.0]],
            )
        })
        .unwrap()
    };
    let b = topoforms_core::clebsch::clebsch_field(&make(0.0), Mode::Analytic).unwrap();
    assert!(surface_flux(&b).unwrap().abs() < 1e-10);
    let r0 = helicity_boundary_check(&make(0.0)).unwrap();
    let r1 = helicity_boundary_check(&make(3.7)).unwrap();
    assert!((r0.volume - r1.volume).abs() < 1e-10);
    assert!((r0.surface - r1.surface).abs() < 1e-10);
}

#[test]
fn euler_routes_agree_to_machine_precision() {
    let grid = GridSpec::periodic_cube(3, 32).unwrap();
    for seed in 0..3 {
        let r = clebsch_from_su2(&random_euler_angles(&grid, 2, 2.0, seed).unwrap(), Mode::Analytic).unwrap();
        assert!(r.max_gap < 1e-12, "seed {seed}: {}", r.max_gap);
    }
}

#[test]
fn euler_routes_converge_with_finite_differences() {
    let grids: Vec<_> = [16, 32, 64].iter().map(|&n| GridSpec::periodic_cube(3, n).unwrap()).collect();
    let (levels, p) = convergence_study(&grids, |g| {
        Ok(clebsch_from_su2(&random_euler_angles(g, 1, 1.0, 2)?, Mode::Fd)?.max_gap)
    })
    .unwrap();
    assert!(p >= 1.8, "order {p}: {levels:?}");
}

#[test]
fn right_angle_gamma_and_constant_theta_give_zero_potential() {
    let grid = GridSpec::periodic_cube(3, 8).unwrap();
    let angles = EulerAngleField::from_fn(&grid, |x| EulerJet {
        angles: [x[0].sin(), PI / 2.0, 0.4],
        grad: [[x[0].cos(), 0.0, 0.0], [0.0; 3], [0.0; 3]],
    })
    .unwrap();
    let r = clebsch_from_su2(&angles, Mode::Analytic).unwrap();
    for i in 0..3 {
        assert!(r.clebsch_route.component(i, 0).iter().all(|x| x.abs() < 1e-15));
        assert!(r.group_route.component(i, 0).iter().all(|x| x.abs() < 1e-12));
    }
}

#[test]
fn triple_route_is_exact_with_analytic_derivatives() {
    let grid = GridSpec::periodic_cube(3, 24).unwrap();
    for seed in 0..3 {
        let r = abelian_cs_group_identity(&random_euler_angles(&grid, 2, 3.0, seed).unwrap(), Mode::Analytic)
            .unwrap();
        assert!(r.pointwise_gap < 1e-10, "{r:?}");
        assert!((r.lhs - r.rhs).abs() < 1e-9 * r.lhs.abs().max(1.0), "{r:?}");
    }
}

#[test]
fn triple_route_converges_with_finite_differences() {
    let grids: Vec<_> = [16, 32, 64].iter().map(|&n| GridSpec::periodic_cube(3, n).unwrap()).collect();
    let (levels, p) = convergence_study(&grids, |g| {
        Ok(abelian_cs_group_identity(&random_euler_angles(g, 1, 0.5, 6)?, Mode::Fd)?.pointwise_gap)
    })
    .unwrap();
    assert!(p >= 1.8, "order {p}: {levels:?}");
}

#[test]
fn constant_group_element_has_no_chern_simons() {
    let grid = GridSpec::periodic_cube(3, 8).unwrap();
    let angles = EulerAngleField::from_fn(&grid, |_| EulerJet { angles: [0.3, 1.1, -2.0], grad: [[0.0; 3]; 3] })
        .unwrap();
    for mode in [Mode::Analytic, Mode::Fd] {
        let r = abelian_cs_group_identity(&angles, mode).unwrap();
        assert!(r.lhs.abs() < 1e-14 && r.rhs.abs() < 1e-14);
    }
}
