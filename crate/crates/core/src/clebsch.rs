//! Clebsch potentials `A = dθ + α dβ`, the total-derivative form of their
//! Chern-Simons density, the boundary reduction of helicity, and their
//! recovery from SU(2) Euler angles.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Result, TopoError};
use crate::groupfield::{
    from_euler, maurer_cartan, trace_cubed_density, volume_form_density, EulerAngleField,
    MaurerCartanField, McScheme,
};
use crate::lattice::{
    divergence, gradient, max_norm, surface_flux, volume_integral, GridSpec, ScalarField,
    VectorField,
};
use crate::topo::{cs_density_3d, GaugePotential};
use crate::Mode;

/// `(θ, α, β)` on one 3d grid, optionally with exact gradients.
#[derive(Debug, Clone)]
pub struct ClebschPotentials {
    grid: GridSpec,
    theta: ScalarField,
    alpha: ScalarField,
    beta: ScalarField,
    gradients: Option<[VectorField; 3]>,
}

impl ClebschPotentials {
    pub fn new(theta: ScalarField, alpha: ScalarField, beta: ScalarField) -> Result<Self> {
        let grid = theta.grid().clone();
        grid.require_dim(3)?;
        if alpha.grid() != &grid || beta.grid() != &grid {
            return Err(TopoError::GridMismatch);
        }
        Ok(Self { grid, theta, alpha, beta, gradients: None })
    }

    /// Attaches exact gradients of `θ, α, β`.
    pub fn with_gradients(mut self, gradients: [VectorField; 3]) -> Result<Self> {
        if gradients.iter().any(|g| g.grid() != &self.grid) {
            return Err(TopoError::GridMismatch);
        }
        self.gradients = Some(gradients);
        Ok(self)
    }

    /// Samples values and exact gradients from `f(x) -> ([θ, α, β], [∇θ, ∇α, ∇β])`.
    pub fn from_fn<F>(grid: &GridSpec, f: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> ([f64; 3], [[f64; 3]; 3]) + Sync,
    {
        grid.require_dim(3)?;
        let jets: Vec<_> = (0..grid.len()).into_par_iter().map(|s| f(&grid.coords(s)[..3])).collect();
        let value = |k: usize| ScalarField::new(grid.clone(), jets.iter().map(|j| j.0[k]).collect());
        let grad = |k: usize| {
            VectorField::new(
                grid.clone(),
                (0..3).map(|i| jets.iter().map(|j| j.1[k][i]).collect()).collect(),
            )
        };
        Self::new(value(0)?, value(1)?, value(2)?)?.with_gradients([grad(0)?, grad(1)?, grad(2)?])
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn theta(&self) -> &ScalarField {
        &self.theta
    }

    pub fn alpha(&self) -> &ScalarField {
        &self.alpha
    }

    pub fn beta(&self) -> &ScalarField {
        &self.beta
    }

    pub fn has_gradients(&self) -> bool {
        self.gradients.is_some()
    }

    fn grads(&self, mode: Mode) -> Result<[VectorField; 3]> {
        match mode {
            Mode::Analytic => self.gradients.clone().ok_or(TopoError::MissingGradients),
            Mode::Fd => Ok([gradient(&self.theta)?, gradient(&self.alpha)?, gradient(&self.beta)?]),
        }
    }
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn at(v: &VectorField, s: usize) -> [f64; 3] {
    [v.component(0)[s], v.component(1)[s], v.component(2)[s]]
}

/// `A_i = ∂_iθ + α ∂_iβ`. In analytic mode the exact `dA = dα ∧ dβ` is
/// attached.
pub fn assemble_potential(c: &ClebschPotentials, mode: Mode) -> Result<GaugePotential> {
    let [gt, ga, gb] = c.grads(mode)?;
    let alpha = c.alpha.values();
    let comps = (0..3)
        .map(|i| {
            gt.component(i)
                .iter()
                .zip(gb.component(i))
                .zip(alpha)
                .map(|((t, b), a)| t + a * b)
                .collect()
        })
        .collect();
    let pot = GaugePotential::abelian(c.grid.clone(), comps)?;
    match mode {
        Mode::Fd => Ok(pot),
        Mode::Analytic => {
            // pairs 01 02 12
            let da = [(0, 1), (0, 2), (1, 2)]
                .iter()
                .map(|&(i, j)| {
                    (0..c.grid.len())
                        .map(|s| {
                            ga.component(i)[s] * gb.component(j)[s]
                                - ga.component(j)[s] * gb.component(i)[s]
                        })
                        .collect()
                })
                .collect();
            pot.with_exterior_derivative(da)
        }
    }
}

/// `B = ∇α × ∇β`, the curl of a Clebsch potential.
pub fn clebsch_field(c: &ClebschPotentials, mode: Mode) -> Result<VectorField> {
    let [_, ga, gb] = c.grads(mode)?;
    let per_site: Vec<[f64; 3]> =
        (0..c.grid.len()).into_par_iter().map(|s| cross(at(&ga, s), at(&gb, s))).collect();
    VectorField::new(c.grid.clone(), (0..3).map(|i| per_site.iter().map(|b| b[i]).collect()).collect())
}

/// `S^i = θ ε^{ijk} ∂_jα ∂_kβ`, whose divergence is `ε^{ijk} A_i ∂_j A_k`.
pub fn cs_surface_vector(c: &ClebschPotentials, mode: Mode) -> Result<VectorField> {
    clebsch_field(c, mode)?.scaled_by(&c.theta)
}

/// Max-norm of `∇·S − CS(A)` with a central-difference divergence of `S`.
pub fn total_derivative_gap(c: &ClebschPotentials, mode: Mode) -> Result<f64> {
    let div = divergence(&cs_surface_vector(c, mode)?)?;
    let cs = cs_density_3d(&assemble_potential(c, mode)?)?;
    let d: Vec<f64> = div.values().iter().zip(cs.values()).map(|(x, y)| x - y).collect();
    Ok(max_norm(&d))
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundaryCheck {
    pub volume: f64,
    pub surface: f64,
    pub gap: f64,
}

/// `∫A·B` against `∮θ B·dS`, using exact gradients when present.
pub fn helicity_boundary_check(c: &ClebschPotentials) -> Result<BoundaryCheck> {
    if c.grid.is_periodic() {
        return Err(TopoError::PeriodicGrid);
    }
    let mode = if c.has_gradients() { Mode::Analytic } else { Mode::Fd };
    let volume = volume_integral(&cs_density_3d(&assemble_potential(c, mode)?)?);
    let surface = surface_flux(&cs_surface_vector(c, mode)?)?;
    Ok(BoundaryCheck { volume, surface, gap: (volume - surface).abs() })
}

/// Clebsch data read off from Euler angles, and the potential built both ways.
#[derive(Debug, Clone)]
pub struct ClebschFromSu2 {
    pub clebsch: ClebschPotentials,
    /// `V³` of `g⁻¹dg`.
    pub group_route: GaugePotential,
    /// `dθ + cos γ dβ`.
    pub clebsch_route: GaugePotential,
    pub max_gap: f64,
}

/// `θ' = θ`, `α' = cos γ`, `β' = β`; both routes use exact derivatives in
/// analytic mode.
pub fn clebsch_from_su2(angles: &EulerAngleField, mode: Mode) -> Result<ClebschFromSu2> {
    let grid = angles.grid();
    let alpha = angles.gamma().map(f64::cos);
    let mut clebsch = ClebschPotentials::new(angles.theta().clone(), alpha, angles.beta().clone())?;
    let g = from_euler(angles);
    let mc = match mode {
        Mode::Analytic => {
            let grads = angles.gradients().ok_or(TopoError::MissingGradients)?;
            let sin_g = angles.gamma().map(f64::sin);
            let dalpha = VectorField::new(
                grid.clone(),
                (0..3)
                    .map(|i| {
                        grads[1].component(i).iter().zip(sin_g.values()).map(|(d, s)| -s * d).collect()
                    })
                    .collect(),
            )?;
            clebsch = clebsch.with_gradients([grads[2].clone(), dalpha, grads[0].clone()])?;
            maurer_cartan(&g, McScheme::EulerAnalytic(angles))?
        }
        Mode::Fd => maurer_cartan(&g, McScheme::Central2)?,
    };
    let group_route = mc.abelian_component(2);
    let clebsch_route = assemble_potential(&clebsch, mode)?;
    let max_gap = (0..3)
        .map(|i| {
            let d: Vec<f64> = group_route
                .component(i, 0)
                .iter()
                .zip(clebsch_route.component(i, 0))
                .map(|(x, y)| x - y)
                .collect();
            max_norm(&d)
        })
        .fold(0.0, f64::max);
    Ok(ClebschFromSu2 { clebsch, group_route, clebsch_route, max_gap })
}

/// The three densities `A dA`, `−V¹V²V³` and `(2/3) tr(g⁻¹dg)³` of an SU(2)
/// pure gauge, with `A = V³`.
#[derive(Debug, Clone)]
pub struct TripleRoute {
    pub a_da: ScalarField,
    pub volume_form: ScalarField,
    pub trace: ScalarField,
}

impl TripleRoute {
    pub fn from_maurer_cartan(mc: &MaurerCartanField) -> Result<Self> {
        let a_da = cs_density_3d(&mc.abelian_component(2))?;
        let volume_form = volume_form_density(mc).map(|x| -x);
        let trace = trace_cubed_density(mc).map(|x| 2.0 * x / 3.0);
        Ok(Self { a_da, volume_form, trace })
    }

    /// Largest pointwise difference between any two of the routes.
    pub fn max_pairwise_gap(&self) -> f64 {
        let d = |a: &ScalarField, b: &ScalarField| {
            max_norm(&a.values().iter().zip(b.values()).map(|(x, y)| x - y).collect::<Vec<_>>())
        };
        d(&self.a_da, &self.volume_form)
            .max(d(&self.a_da, &self.trace))
            .max(d(&self.volume_form, &self.trace))
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct GroupIdentity {
    pub lhs: f64,
    pub rhs: f64,
    pub pointwise_gap: f64,
}

/// `∫ A dA` for `A = V³` against `(2/3) ∫ tr(g⁻¹dg)³`.
pub fn abelian_cs_group_identity(angles: &EulerAngleField, mode: Mode) -> Result<GroupIdentity> {
    let g = from_euler(angles);
    let mc = match mode {
        Mode::Analytic => maurer_cartan(&g, McScheme::EulerAnalytic(angles))?,
        Mode::Fd => maurer_cartan(&g, McScheme::Central2)?,
    };
    let routes = TripleRoute::from_maurer_cartan(&mc)?;
    Ok(GroupIdentity {
        lhs: volume_integral(&routes.a_da),
        rhs: volume_integral(&routes.trace),
        pointwise_gap: routes.max_pairwise_gap(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupfield::EulerJet;
    use crate::lattice::curl;

    fn xyz(grid: &GridSpec, t: fn(&[f64]) -> f64, a: fn(&[f64]) -> f64, b: fn(&[f64]) -> f64) -> ClebschPotentials {
        ClebschPotentials::new(
            ScalarField::from_fn(grid, t),
            ScalarField::from_fn(grid, a),
            ScalarField::from_fn(grid, b),
        )
        .unwrap()
    }

    #[test]
    fn alpha_zero_gives_gradient() {
        let grid = GridSpec::periodic_cube(3, 12).unwrap();
        let c = xyz(&grid, |x| x[0].sin() * x[2].cos(), |_| 0.0, |x| x[1].sin());
        let a = assemble_potential(&c, Mode::Fd).unwrap();
        let g = gradient(c.theta()).unwrap();
        for i in 0..3 {
            assert_eq!(a.component(i, 0), g.component(i));
        }
    }

    #[test]
    fn linear_monge_potentials() {
        let grid = GridSpec::open_cube(3, 9, 0.0, 1.0).unwrap();
        let c = xyz(&grid, |_| 0.0, |x| x[0], |x| x[1]);
        let a = assemble_potential(&c, Mode::Fd).unwrap();
        let coords: Vec<f64> = (0..grid.len()).map(|s| grid.coords(s)[0]).collect();
        assert!(a.component(0, 0).iter().all(|x| x.abs() < 1e-12));
        assert!(a.component(1, 0).iter().zip(&coords).all(|(y, x)| (y - x).abs() < 1e-12));
        let b = curl(&a.to_vector_field().unwrap()).unwrap();
        let bc = clebsch_field(&c, Mode::Fd).unwrap();
        for s in 0..grid.len() {
            assert!((b.component(2)[s] - 1.0).abs() < 1e-12);
            assert!((bc.component(2)[s] - 1.0).abs() < 1e-12);
            assert!(b.component(0)[s].abs() < 1e-12 && b.component(1)[s].abs() < 1e-12);
        }
    }

    #[test]
    fn parallel_gradients_leave_no_surface_term() {
        let grid = GridSpec::periodic_cube(3, 10).unwrap();
        let c = ClebschPotentials::from_fn(&grid, |x| {
            let a = x[0].sin() + 0.5 * x[1].cos();
            let da = [x[0].cos(), -0.5 * x[1].sin(), 0.0];
            // β = a³, ∇β = 3a²∇α
            let db = da.map(|d| 3.0 * a * a * d);
            ([x[2].sin(), a, a * a * a], [[0.0, 0.0, x[2].cos()], da, db])
        })
        .unwrap();
        let s = cs_surface_vector(&c, Mode::Analytic).unwrap();
        assert!((0..3).all(|i| max_norm(s.component(i)) < 1e-12));
    }

    #[test]
    fn theta_zero_has_vanishing_density() {
        let grid = GridSpec::periodic_cube(3, 10).unwrap();
        let c = ClebschPotentials::from_fn(&grid, |x| {
            ([0.0, x[0].sin(), x[1].cos()], [[0.0; 3], [x[0].cos(), 0.0, 0.0], [0.0, -x[1].sin(), 0.0]])
        })
        .unwrap();
        let cs = cs_density_3d(&assemble_potential(&c, Mode::Analytic).unwrap()).unwrap();
        assert!(cs.max_abs() < 1e-15);
        assert!(total_derivative_gap(&c, Mode::Analytic).unwrap() < 1e-15);
    }

    #[test]
    fn closed_form_boundary_reduction() {
        let grid = GridSpec::open_cube(3, 32, 0.0, 1.0).unwrap();
        let c = xyz(&grid, |x| x[2], |x| x[0], |x| x[1]);
        let r = helicity_boundary_check(&c).unwrap();
        assert!((r.volume - 1.0).abs() < 1e-12);
        assert!((r.surface - 1.0).abs() < 1e-12);
        let zero = xyz(&grid, |_| 0.0, |x| x[0], |x| x[1]);
        let r0 = helicity_boundary_check(&zero).unwrap();
        assert!(r0.volume.abs() < 1e-15 && r0.surface.abs() < 1e-15);
        assert!(helicity_boundary_check(&xyz(&GridSpec::periodic_cube(3, 4).unwrap(), |_| 0.0, |_| 0.0, |_| 0.0)).is_err());
    }

    #[test]
    fn theta_along_x_routes_agree() {
        let grid = GridSpec::periodic_cube(3, 8).unwrap();
        let angles = EulerAngleField::from_fn(&grid, |x| EulerJet {
            angles: [0.0, 0.0, x[0]],
            grad: [[0.0; 3], [0.0; 3], [1.0, 0.0, 0.0]],
        })
        .unwrap();
        let r = clebsch_from_su2(&angles, Mode::Analytic).unwrap();
        assert!(r.max_gap < 1e-12);
        assert!(r.group_route.component(0, 0).iter().all(|x| (x - 1.0).abs() < 1e-12));
    }

    #[test]
    fn right_angle_gamma_gives_zero_potential() {
        let grid = GridSpec::periodic_cube(3, 6).unwrap();
        let angles = EulerAngleField::from_fn(&grid, |x| EulerJet {
            angles: [x[1].sin(), std::f64::consts::FRAC_PI_2, 0.4],
            grad: [[0.0, x[1].cos(), 0.0], [0.0; 3], [0.0; 3]],
        })
        .unwrap();
        let r = clebsch_from_su2(&angles, Mode::Analytic).unwrap();
        assert!((0..3).all(|i| max_norm(r.clebsch_route.component(i, 0)) < 1e-15));
        assert!(r.max_gap < 1e-15);
    }

    #[test]
    fn constant_group_element_has_no_cs() {
        let grid = GridSpec::periodic_cube(3, 6).unwrap();
        let angles = EulerAngleField::from_fn(&grid, |_| EulerJet { angles: [0.3, 1.0, -0.2], grad: [[0.0; 3]; 3] })
            .unwrap();
        let r = abelian_cs_group_identity(&angles, Mode::Analytic).unwrap();
        assert_eq!((r.lhs, r.rhs, r.pointwise_gap), (0.0, 0.0, 0.0));
    }
}
