//! Field strengths, Chern-Pontryagin densities and Chern-Simons currents and
//! forms in one to four dimensions.

mod density;
mod epsilon;
mod potential;

pub use density::{
    cp_density, cp_density_2d, cp_density_4d, cs_1d, cs_1d_endpoint_check, cs_current,
    cs_density_3d, divergence_identity_residual, helicity, helicity_with, DivergenceResidual,
    EndpointCheck,
};
pub use epsilon::{epsilon_table, index_pairs, pair_slot, EpsilonEntry};
pub use potential::{field_strength, FieldStrength, GaugePotential};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{central2, volume_integral, GridSpec, ScalarField, VectorField};
    use crate::liealg::{structure_constants, LieAlgebraSpec};

    fn naive_eps(idx: &[usize]) -> f64 {
        let mut sign = 1.0;
        for i in 0..idx.len() {
            for j in i + 1..idx.len() {
                if idx[i] == idx[j] {
                    return 0.0;
                }
                if idx[i] > idx[j] {
                    sign = -sign;
                }
            }
        }
        sign
    }

    fn sample(grid: &GridSpec, f: impl Fn(&[f64]) -> f64 + Sync) -> Vec<f64> {
        ScalarField::from_fn(grid, f).into_values()
    }

    fn su2_structure() -> crate::liealg::StructureConstants {
        structure_constants(&LieAlgebraSpec::su2()).unwrap()
    }

    #[test]
    fn gradient_potential_is_flat() {
        let grid = GridSpec::periodic_cube(3, 24).unwrap();
        let phi = |x: &[f64]| x[0].sin() * x[1].cos() + (x[2] + x[0]).sin();
        let grads: Vec<Vec<f64>> = (0..3)
            .map(|ax| central2(&sample(&grid, phi), &grid, ax).unwrap())
            .collect();
        let f = field_strength(&GaugePotential::abelian(grid.clone(), grads).unwrap()).unwrap();
        let h2 = grid.max_spacing().powi(2);
        for p in 0..3 {
            assert!(f.pair_component(p, 0).iter().all(|x| x.abs() < h2));
        }

        let exact = vec![
            sample(&grid, |x| x[0].cos() * x[1].cos() + (x[2] + x[0]).cos()),
            sample(&grid, |x| -x[0].sin() * x[1].sin()),
            sample(&grid, |x| (x[2] + x[0]).cos()),
        ];
        let zero = vec![vec![0.0; grid.len()]; 3];
        let pot = GaugePotential::abelian(grid, exact).unwrap().with_exterior_derivative(zero).unwrap();
        let f = field_strength(&pot).unwrap();
        assert!((0..3).all(|p| f.pair_component(p, 0).iter().all(|&x| x == 0.0)));
    }

    #[test]
    fn linear_potential_gives_constant_field() {
        let e = 1.7;
        let grid = GridSpec::open_cube(2, 12, -1.0, 2.0).unwrap();
        let pot = GaugePotential::abelian(
            grid.clone(),
            vec![vec![0.0; grid.len()], sample(&grid, |x| e * x[0])],
        )
        .unwrap();
        let f = field_strength(&pot).unwrap();
        assert!(f.pair_component(0, 0).iter().all(|x| (x - e).abs() < 1e-12));
        assert_eq!(f.get(1, 0, 0, 5), -f.get(0, 1, 0, 5));
        assert_eq!(f.get(1, 1, 0, 5), 0.0);
        let cp = cp_density_2d(&f).unwrap();
        assert!(cp.values().iter().all(|x| (x - e).abs() < 1e-12));
    }

    #[test]
    fn commutator_term_of_constant_su2_potential() {
        let (a, b) = (0.8, -1.3);
        let grid = GridSpec::periodic_cube(3, 6).unwrap();
        let n = grid.len();
        let mut comps = vec![vec![0.0; n]; 9];
        comps[0] = vec![a; n]; // A^1_x
        comps[3 + 1] = vec![b; n]; // A^2_y
        let pot = GaugePotential::non_abelian(grid, su2_structure(), comps).unwrap();
        let f = field_strength(&pot).unwrap();
        for s in 0..n {
            assert!((f.get(0, 1, 2, s) - a * b).abs() < 1e-12);
            assert_eq!(f.get(0, 1, 0, s), 0.0);
            assert_eq!(f.get(0, 2, 2, s), 0.0);
        }
    }

    #[test]
    fn multi_component_without_algebra_is_rejected() {
        let grid = GridSpec::periodic_cube(3, 4).unwrap();
        let pot = GaugePotential::untyped(grid.clone(), 3, vec![vec![0.0; grid.len()]; 9]).unwrap();
        assert!(matches!(field_strength(&pot), Err(crate::TopoError::MissingAlgebra)));
    }

    fn random_field_strength(grid: &GridSpec, lie_dim: usize, seed: f64) -> FieldStrength {
        let f = (0..6 * lie_dim)
            .map(|k| {
                (0..grid.len())
                    .map(|s| ((s as f64 + 1.3) * (k as f64 + seed) * 0.731).sin())
                    .collect()
            })
            .collect();
        FieldStrength::new(grid.clone(), lie_dim, f).unwrap()
    }

    #[test]
    fn cp_density_matches_brute_force_sum() {
        let grid = GridSpec::periodic_cube(4, 4).unwrap();
        for lie_dim in [1, 3] {
            let f = random_field_strength(&grid, lie_dim, 0.37);
            let cp = cp_density_4d(&f).unwrap();
            for s in 0..grid.len() {
                let mut naive = 0.0;
                for m in 0..4usize.pow(4) {
                    let idx = [m % 4, (m / 4) % 4, (m / 16) % 4, m / 64];
                    let e = naive_eps(&idx);
                    if e == 0.0 {
                        continue;
                    }
                    for a in 0..lie_dim {
                        naive += 0.25 * e * f.get(idx[0], idx[1], a, s) * f.get(idx[2], idx[3], a, s);
                    }
                }
                assert!((cp.values()[s] - naive).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn cp_density_of_constant_e_and_b() {
        let (e, b) = (0.6, 2.5);
        let grid = GridSpec::periodic_cube(4, 4).unwrap();
        let n = grid.len();
        let mut data = vec![vec![0.0; n]; 6];
        data[0] = vec![e; n];
        data[5] = vec![b; n];
        let f = FieldStrength::new(grid, 1, data).unwrap();
        let cp = cp_density_4d(&f).unwrap();
        assert!(cp.values().iter().all(|x| (x - 2.0 * e * b).abs() < 1e-12));
    }

    #[test]
    fn self_dual_density_is_sum_of_squares() {
        let grid = GridSpec::periodic_cube(4, 4).unwrap();
        let mut f = random_field_strength(&grid, 1, 1.9);
        let comps: Vec<Vec<f64>> = (0..6).map(|p| f.pair_component(p, 0).to_vec()).collect();
        // *F₀₁ = F₂₃, *F₀₂ = −F₁₃, *F₀₃ = F₁₂
        let dual = vec![
            comps[0].clone(),
            comps[1].clone(),
            comps[2].clone(),
            comps[2].clone(),
            comps[1].iter().map(|x| -x).collect(),
            comps[0].clone(),
        ];
        f = FieldStrength::new(grid.clone(), 1, dual).unwrap();
        let cp = cp_density_4d(&f).unwrap();
        for s in 0..grid.len() {
            let sq: f64 = (0..6).map(|p| f.pair_component(p, 0)[s].powi(2)).sum();
            assert!((cp.values()[s] - sq).abs() < 1e-12);
        }
    }

    fn trig_potential_4d(grid: &GridSpec, lie_dim: usize) -> Vec<Vec<f64>> {
        (0..4 * lie_dim)
            .map(|k| {
                let kf = k as f64;
                sample(grid, move |x| {
                    (x[0] + kf).sin() * (2.0 * x[1] - 0.5 * kf).cos()
                        + 0.3 * (x[2] + x[3] * (1.0 + kf % 2.0)).sin()
                })
            })
            .collect()
    }

    #[test]
    fn cs_current_2d_is_reindexing() {
        let grid = GridSpec::periodic_cube(2, 8).unwrap();
        let a0 = sample(&grid, |x| x[0].sin() + x[1]);
        let a1 = sample(&grid, |x| (x[0] * x[1]).cos());
        let pot = GaugePotential::abelian(grid, vec![a0.clone(), a1.clone()]).unwrap();
        let c = cs_current(&pot).unwrap();
        assert_eq!(c.component(0), &a1[..]);
        assert!(c.component(1).iter().zip(&a0).all(|(x, y)| *x == -y));
        let r = divergence_identity_residual(&pot).unwrap();
        assert!(r.max < 1e-12);
    }

    #[test]
    fn cs_current_4d_matches_epsilon_oracle() {
        let grid = GridSpec::periodic_cube(4, 6).unwrap();
        let f = su2_structure();
        for lie_dim in [1, 3] {
            let comps = trig_potential_4d(&grid, lie_dim);
            let pot = if lie_dim == 1 {
                GaugePotential::abelian(grid.clone(), comps.clone()).unwrap()
            } else {
                GaugePotential::non_abelian(grid.clone(), f.clone(), comps.clone()).unwrap()
            };
            let c = cs_current(&pot).unwrap();
            // ∂_β A^a_γ by central differences, then the full 256-term sum.
            let d: Vec<Vec<Vec<f64>>> = (0..4)
                .map(|b| comps.iter().map(|x| central2(x, &grid, b).unwrap()).collect())
                .collect();
            for s in (0..grid.len()).step_by(37) {
                for mu in 0..4 {
                    let mut naive = 0.0;
                    for m in 0..64 {
                        let (al, be, ga) = (m % 4, (m / 4) % 4, m / 16);
                        let e = naive_eps(&[mu, al, be, ga]);
                        if e == 0.0 {
                            continue;
                        }
                        for a in 0..lie_dim {
                            naive += e * comps[al * lie_dim + a][s] * d[be][ga * lie_dim + a][s];
                            if lie_dim == 3 {
                                for b in 0..3 {
                                    for cc in 0..3 {
                                        naive += e * f.get(a, b, cc)
                                            * comps[al * 3 + a][s]
                                            * comps[be * 3 + b][s]
                                            * comps[ga * 3 + cc][s]
                                            / 3.0;
                                    }
                                }
                            }
                        }
                    }
                    assert!((c.component(mu)[s] - naive).abs() < 1e-12, "{mu} {s}");
                }
            }
        }
    }

    #[test]
    fn divergence_residual_shrinks_under_refinement_4d() {
        let f = su2_structure();
        let mut prev = f64::INFINITY;
        for n in [16, 32] {
            let grid = GridSpec::periodic_cube(4, n).unwrap();
            let pot = GaugePotential::non_abelian(grid.clone(), f.clone(), trig_potential_4d(&grid, 3))
                .unwrap();
            let r = divergence_identity_residual(&pot).unwrap();
            assert!(r.l2 < prev / 3.0);
            prev = r.l2;
        }
    }

    #[test]
    fn divergence_residual_rejects_open_grids() {
        let grid = GridSpec::open_cube(2, 6, 0.0, 1.0).unwrap();
        let pot = GaugePotential::abelian(grid.clone(), vec![vec![0.0; grid.len()]; 2]).unwrap();
        assert!(divergence_identity_residual(&pot).is_err());
        let g3 = GridSpec::periodic_cube(3, 4).unwrap();
        let p3 = GaugePotential::abelian(g3.clone(), vec![vec![0.0; g3.len()]; 3]).unwrap();
        assert!(cs_current(&p3).is_err());
    }

    #[test]
    fn abelian_cs_density_is_helicity_density() {
        let grid = GridSpec::periodic_cube(3, 16).unwrap();
        let v = VectorField::from_fn(&grid, |x, out| {
            out[0] = x[2].sin() + 0.4 * x[1].cos();
            out[1] = (x[0] + x[2]).sin();
            out[2] = x[1].sin() * x[0].cos();
        });
        let cs = cs_density_3d(&GaugePotential::from_vector_field(&v)).unwrap();
        let h = helicity(&v).unwrap();
        assert!((volume_integral(&cs) - h).abs() < 1e-12 * h.abs().max(1.0));
    }

    #[test]
    fn su2_cubic_term_is_twice_the_determinant() {
        let grid = GridSpec::periodic_cube(3, 4).unwrap();
        let n = grid.len();
        let m = [[0.3, -1.1, 0.4], [0.9, 0.2, -0.7], [0.5, 1.4, 0.8]];
        let comps = (0..9).map(|k| vec![m[k / 3][k % 3]; n]).collect();
        let pot = GaugePotential::non_abelian(grid, su2_structure(), comps).unwrap();
        let cs = cs_density_3d(&pot).unwrap();
        let det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        assert!(cs.values().iter().all(|x| (x - 2.0 * det).abs() < 1e-12));
    }

    #[test]
    fn cs_1d_fundamental_theorem() {
        let grid = GridSpec::open(&[2001], &[-5.0], &[5.0]).unwrap();
        let theta = ScalarField::from_fn(&grid, |x| x[0].tanh());
        let a = sample(&grid, |x| 1.0 / x[0].cosh().powi(2));
        let pot = GaugePotential::abelian(grid.clone(), vec![a]).unwrap();
        let r = cs_1d_endpoint_check(&pot, &theta).unwrap();
        assert!((r.endpoint_difference - 2.0 * 5f64.tanh()).abs() < 1e-15);
        assert!(r.gap < 1e-6, "{}", r.gap);

        let unit = GridSpec::open(&[9], &[0.0], &[1.0]).unwrap();
        let one = GaugePotential::abelian(unit.clone(), vec![vec![1.0; 9]]).unwrap();
        assert!((volume_integral(&cs_1d(&one).unwrap()) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn field_strength_rotates_with_constant_gauge() {
        // Constant h acts on A^a by its adjoint rotation R; F^a must follow.
        let grid = GridSpec::periodic_cube(3, 8).unwrap();
        let f = su2_structure();
        let comps: Vec<Vec<f64>> = (0..9)
            .map(|k| {
                let kf = k as f64;
                sample(&grid, move |x| (x[0] + 0.5 * kf).sin() * (x[1] - kf).cos() + 0.2 * kf * x[2].cos())
            })
            .collect();
        let (axis, angle) = ([0.36, 0.48, 0.8], 0.9f64);
        let (c, s) = (angle.cos(), angle.sin());
        let mut r = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let cross = match (i, j) {
                    (0, 1) => -axis[2],
                    (1, 0) => axis[2],
                    (0, 2) => axis[1],
                    (2, 0) => -axis[1],
                    (1, 2) => -axis[0],
                    (2, 1) => axis[0],
                    _ => 0.0,
                };
                r[i][j] = if i == j { c } else { 0.0 } + (1.0 - c) * axis[i] * axis[j] + s * cross;
            }
        }
        let rotate = |v: &[Vec<f64>], stride: usize| -> Vec<Vec<f64>> {
            let mut out = v.to_vec();
            for blk in 0..v.len() / stride {
                for a in 0..3 {
                    out[blk * stride + a] = (0..grid.len())
                        .map(|site| (0..3).map(|b| r[a][b] * v[blk * stride + b][site]).sum())
                        .collect();
                }
            }
            out
        };
        let f0 = field_strength(&GaugePotential::non_abelian(grid.clone(), f.clone(), comps.clone()).unwrap())
            .unwrap();
        let f1 = field_strength(&GaugePotential::non_abelian(grid.clone(), f, rotate(&comps, 3)).unwrap())
            .unwrap();
        let raw0: Vec<Vec<f64>> =
            (0..3).flat_map(|p| (0..3).map(move |a| (p, a))).map(|(p, a)| f0.pair_component(p, a).to_vec()).collect();
        let expected = rotate(&raw0, 3);
        for p in 0..3 {
            for a in 0..3 {
                let got = f1.pair_component(p, a);
                assert!(got.iter().zip(&expected[3 * p + a]).all(|(x, y)| (x - y).abs() < 1e-10));
            }
        }
    }
}
