use proptest::prelude::*;
use topoforms_core::lattice::{
    central2, convergence_study, divergence, surface_flux, volume_integral, RawField,
};
use topoforms_core::synth::{seeded_rng, BandLimited, BandLimitedVector};
use topoforms_core::{GridSpec, ScalarField};

fn random_scalar(grid: &GridSpec, seed: u64) -> ScalarField {
    BandLimited::periodic(grid, 2, 1.0, &mut seeded_rng(seed, 0)).sample(grid)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn derivative_is_linear(seed in 0u64..1000, a in -3.0f64..3.0, b in -3.0f64..3.0, axis in 0usize..3) {
        let grid = GridSpec::periodic_cube(3, 8).unwrap();
        let f = random_scalar(&grid, seed);
        let g = random_scalar(&grid, seed + 7919);
        let combo = f.axpby(a, &g, b).unwrap();
        let lhs = central2(combo.values(), &grid, axis).unwrap();
        let df = central2(f.values(), &grid, axis).unwrap();
        let dg = central2(g.values(), &grid, axis).unwrap();
        for s in 0..grid.len() {
            prop_assert!((lhs[s] - (a * df[s] + b * dg[s])).abs() < 1e-12);
        }
    }

    #[test]
    fn periodic_derivative_telescopes(seed in 0u64..1000, n in 4usize..12, axis in 0usize..2) {
        let grid = GridSpec::periodic(&[n, n + 3], &[2.0, 5.0]).unwrap();
        let f = random_scalar(&grid, seed);
        let d = ScalarField::new(grid.clone(), central2(f.values(), &grid, axis).unwrap()).unwrap();
        prop_assert!(volume_integral(&d).abs() < 1e-12);
    }

    #[test]
    fn tff_round_trip_of_random_fields(seed in 0u64..1000) {
        let grid = GridSpec::open(&[5, 4, 6], &[-1.0, 0.0, 2.0], &[1.0, 3.0, 2.5]).unwrap();
        let v = BandLimitedVector::open(3, 3, 6, 2.0, 1.0, seed).sample(&grid);
        let raw = RawField::new(grid, v).unwrap();
        let back = RawField::read_from(raw.to_bytes().as_slice()).unwrap();
        prop_assert_eq!(back.to_bytes(), raw.to_bytes());
    }
}

#[test]
fn divergence_theorem_converges_on_open_grids() {
    let field = BandLimitedVector::open(3, 3, 6, 2.0, 1.0, 11);
    let grids: Vec<_> = [16, 32, 64]
        .iter()
        .map(|&n| GridSpec::open_cube(3, n + 1, 0.0, 1.0).unwrap())
        .collect();
    let (levels, p) = convergence_study(&grids, |g| {
        let v = field.sample_field(g)?;
        Ok((volume_integral(&divergence(&v)?) - surface_flux(&v)?).abs())
    })
    .unwrap();
    assert!(p >= 1.8, "order {p}: {levels:?}");
}

#[test]
fn tff_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("field.tff");
    let grid = GridSpec::periodic(&[6, 5, 4], &[1.0, 2.0, 3.0]).unwrap();
    let raw = RawField::new(grid.clone(), BandLimitedVector::periodic(&grid, 4, 2, 1.0, 3).sample(&grid)).unwrap();
    raw.save(&path).unwrap();
    let back = RawField::load(&path).unwrap();
    assert_eq!(back.to_bytes(), raw.to_bytes());
    assert_eq!(back.components(), 4);
}
