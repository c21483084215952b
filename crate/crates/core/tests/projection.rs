use topoforms_core::clebsch::clebsch_from_su2;
use topoforms_core::groupfield::{from_euler, maurer_cartan, GroupElementField, McScheme, Quat};
use topoforms_core::liealg::{structure_constants, LieAlgebraSpec, SymmetricPairSpec};
use topoforms_core::projection::{
    cs_coincidence_check, exp_series_maurer_cartan, project_connection, project_connection_unchecked,
};
use topoforms_core::synth::{random_euler_angles, BandLimitedVector};
use topoforms_core::topo::GaugePotential;
use topoforms_core::{GridSpec, Mode, TopoError};

fn analytic_connection(grid: &GridSpec, seed: u64) -> GaugePotential {
    let angles = random_euler_angles(grid, 2, 2.0, seed).unwrap();
    maurer_cartan(&from_euler(&angles), McScheme::EulerAnalytic(&angles)).unwrap().to_potential()
}

fn max_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[test]
fn u1_projection_is_the_third_component() {
    let grid = GridSpec::periodic_cube(3, 16).unwrap();
    let angles = random_euler_angles(&grid, 2, 2.0, 3).unwrap();
    let conn = maurer_cartan(&from_euler(&angles), McScheme::EulerAnalytic(&angles)).unwrap().to_potential();
    let p = project_connection(&conn, &SymmetricPairSpec::su2_u1()).unwrap();
    assert_eq!(p.potential.lie_dim(), 1);
    let clebsch = clebsch_from_su2(&angles, Mode::Analytic).unwrap();
    for i in 0..3 {
        assert!(max_gap(p.potential.component(i, 0), conn.component(i, 2)) < 1e-12);
        assert!(max_gap(p.potential.component(i, 0), clebsch.clebsch_route.component(i, 0)) < 1e-12);
    }
}

#[test]
fn full_projection_is_the_identity() {
    let grid = GridSpec::periodic_cube(3, 10).unwrap();
    let conn = analytic_connection(&grid, 9);
    let pair = SymmetricPairSpec::new(LieAlgebraSpec::su2(), vec![0, 1, 2]).unwrap();
    let p = project_connection(&conn, &pair).unwrap();
    assert_eq!(p.potential.lie_dim(), 3);
    for i in 0..3 {
        for a in 0..3 {
            assert!(max_gap(p.potential.component(i, a), conn.component(i, a)) < 1e-12);
        }
    }
}

#[test]
fn su2_over_u1_coincides_with_constant_ratio() {
    let grid = GridSpec::periodic_cube(3, 16).unwrap();
    let pair = SymmetricPairSpec::su2_u1();
    let mut ratios = Vec::new();
    for seed in 0..10 {
        let conn = analytic_connection(&grid, seed);
        let r = cs_coincidence_check(&project_connection(&conn, &pair).unwrap(), &conn).unwrap();
        assert!(!r.indeterminate);
        assert!(r.constancy.unwrap() < 1e-8, "seed {seed}: {r:?}");
        ratios.push(r.mean_pointwise_ratio.unwrap());
    }
    for m in &ratios {
        assert!((m - 2.0 / 3.0).abs() < 1e-8, "{ratios:?}");
    }
}

#[test]
fn constant_group_element_is_indeterminate() {
    let grid = GridSpec::periodic_cube(3, 8).unwrap();
    let g = GroupElementField::constant(&grid, Quat::exp_algebra([0.2, 0.4, -0.3])).unwrap();
    let conn = maurer_cartan(&g, McScheme::Central2).unwrap().to_potential();
    let p = project_connection(&conn, &SymmetricPairSpec::su2_u1()).unwrap();
    assert!(p.potential.components().iter().flatten().all(|x| *x == 0.0));
    let r = cs_coincidence_check(&p, &conn).unwrap();
    assert!(r.indeterminate && r.ratio.is_none() && r.constancy.is_none());
    assert_eq!((r.cs_h, r.cs_g), (0.0, 0.0));
}

fn su3_connection(grid: &GridSpec, seed: u64) -> GaugePotential {
    let f = structure_constants(&LieAlgebraSpec::su3()).unwrap();
    let x = BandLimitedVector::periodic(grid, 8, 1, 1.0, seed).sample(grid);
    exp_series_maurer_cartan(grid, &f, &x).unwrap()
}

#[test]
fn su3_over_lambda3_is_rejected() {
    let grid = GridSpec::periodic_cube(3, 8).unwrap();
    let pair = SymmetricPairSpec::new(LieAlgebraSpec::su3(), vec![2]).unwrap();
    assert!(matches!(project_connection(&su3_connection(&grid, 1), &pair), Err(TopoError::NotSymmetric(_))));
}

#[test]
fn non_symmetric_split_does_not_coincide() {
    let grid = GridSpec::periodic_cube(3, 16).unwrap();
    let pair = SymmetricPairSpec::new(LieAlgebraSpec::su3(), vec![2]).unwrap();
    for seed in 0..3 {
        let conn = su3_connection(&grid, seed);
        let r = cs_coincidence_check(&project_connection_unchecked(&conn, &pair).unwrap(), &conn).unwrap();
        assert!(r.constancy.unwrap() > 1e-2, "seed {seed}: {r:?}");
    }
}

#[test]
fn projection_checks_the_lie_dimension() {
    let grid = GridSpec::periodic_cube(3, 6).unwrap();
    let conn = analytic_connection(&grid, 0);
    let pair = SymmetricPairSpec::new(LieAlgebraSpec::su3(), vec![0, 1, 2]).unwrap();
    assert!(matches!(
        project_connection_unchecked(&conn, &pair),
        Err(TopoError::ComponentMismatch { expected: 8, found: 3 })
    ));
}
