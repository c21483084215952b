//! Seeded test-field factories: band-limited scalars and vectors, the ABC
//! flow, compactified hedgehogs, random Euler angles and linked flux tubes.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::clebsch::ClebschPotentials;
use crate::error::Result;
use crate::groupfield::{EulerAngleField, EulerJet, GroupElementField, Quat};
use crate::lattice::{GridSpec, ScalarField, VectorField};
use crate::topo::index_pairs;

/// Independent stream `stream` of the generator seeded with `seed`.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

#[derive(Debug, Clone, Copy)]
struct Mode {
    k: [f64; 4],
    c: f64,
    s: f64,
}

/// A truncated Fourier series `Σ c cos(k·x) + s sin(k·x)` with exact gradients.
#[derive(Debug, Clone)]
pub struct BandLimited {
    dim: usize,
    offset: f64,
    modes: Vec<Mode>,
}

impl BandLimited {
    /// Integer wave numbers `|m_i| ≤ kmax` on the torus of `grid`; the
    /// Riemann sum integrates products of these modes exactly once
    /// `2·kmax < shape`.
    pub fn periodic(grid: &GridSpec, kmax: usize, amplitude: f64, rng: &mut ChaCha8Rng) -> Self {
        let dim = grid.dim();
        let lengths: Vec<f64> =
            grid.shape().iter().zip(grid.spacing()).map(|(&n, h)| n as f64 * h).collect();
        let side = 2 * kmax + 1;
        let mut modes = Vec::new();
        for code in 0..side.pow(dim as u32) {
            let mut m = [0i64; 4];
            let mut c = code;
            for slot in m.iter_mut().take(dim) {
                *slot = (c % side) as i64 - kmax as i64;
                c /= side;
            }
            // keep one of each ±m pair, drop m = 0
            match m.iter().find(|&&x| x != 0) {
                Some(&first) if first > 0 => {}
                _ => continue,
            }
            let mut k = [0.0; 4];
            for i in 0..dim {
                k[i] = 2.0 * PI * m[i] as f64 / lengths[i];
            }
            modes.push(Mode { k, c: 0.0, s: 0.0 });
        }
        let scale = amplitude / (modes.len() as f64).sqrt();
        for mode in &mut modes {
            mode.c = scale * rng.gen_range(-1.0..1.0);
            mode.s = scale * rng.gen_range(-1.0..1.0);
        }
        Self { dim, offset: 0.0, modes }
    }

    /// `n_modes` random real wavevectors with components in `[-kscale, kscale]`.
    pub fn open(
        dim: usize,
        n_modes: usize,
        kscale: f64,
        amplitude: f64,
        rng: &mut ChaCha8Rng,
    ) -> Self {
        let scale = amplitude / (n_modes as f64).sqrt();
        let modes = (0..n_modes)
            .map(|_| {
                let mut k = [0.0; 4];
                for slot in k.iter_mut().take(dim) {
                    *slot = rng.gen_range(-kscale..kscale);
                }
                Mode { k, c: scale * rng.gen_range(-1.0..1.0), s: scale * rng.gen_range(-1.0..1.0) }
            })
            .collect();
        Self { dim, offset: 0.0, modes }
    }

    pub fn with_offset(mut self, offset: f64) -> Self {
        self.offset = offset;
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        self.offset
            + self
                .modes
                .iter()
                .map(|m| {
                    let ph = self.phase(m, x);
                    m.c * ph.cos() + m.s * ph.sin()
                })
                .sum::<f64>()
    }

    pub fn gradient(&self, x: &[f64]) -> [f64; 4] {
        let mut g = [0.0; 4];
        for m in &self.modes {
            let ph = self.phase(m, x);
            let d = -m.c * ph.sin() + m.s * ph.cos();
            for i in 0..self.dim {
                g[i] += m.k[i] * d;
            }
        }
        g
    }

    fn phase(&self, m: &Mode, x: &[f64]) -> f64 {
        (0..self.dim).map(|i| m.k[i] * x[i]).sum()
    }

    pub fn sample(&self, grid: &GridSpec) -> ScalarField {
        ScalarField::from_fn(grid, |x| self.value(x))
    }

    pub fn sample_gradient(&self, grid: &GridSpec) -> VectorField {
        let d = grid.dim();
        VectorField::from_fn(grid, |x, out| out.copy_from_slice(&self.gradient(x)[..d]))
    }
}

/// One independent band-limited series per component.
#[derive(Debug, Clone)]
pub struct BandLimitedVector {
    pub components: Vec<BandLimited>,
}

impl BandLimitedVector {
    /// Periodic components; component `c` draws from stream `c` of `seed`.
    pub fn periodic(grid: &GridSpec, count: usize, kmax: usize, amplitude: f64, seed: u64) -> Self {
        let components = (0..count)
            .map(|c| BandLimited::periodic(grid, kmax, amplitude, &mut seeded_rng(seed, c as u64)))
            .collect();
        Self { components }
    }

    pub fn open(dim: usize, count: usize, n_modes: usize, kscale: f64, amplitude: f64, seed: u64) -> Self {
        let components = (0..count)
            .map(|c| {
                BandLimited::open(dim, n_modes, kscale, amplitude, &mut seeded_rng(seed, c as u64))
            })
            .collect();
        Self { components }
    }

    pub fn sample(&self, grid: &GridSpec) -> Vec<Vec<f64>> {
        self.components.iter().map(|c| c.sample(grid).into_values()).collect()
    }

    pub fn sample_field(&self, grid: &GridSpec) -> Result<VectorField> {
        VectorField::new(grid.clone(), self.sample(grid))
    }

    /// Exact `∂_μV_ν − ∂_νV_μ` per Lie component, for data laid out as
    /// `components[μ * lie_dim + a]`.
    pub fn exterior_derivative(&self, grid: &GridSpec, lie_dim: usize) -> Vec<Vec<f64>> {
        let mut out = Vec::new();
        for (mu, nu) in index_pairs(grid.dim()) {
            for a in 0..lie_dim {
                let (am, an) = (&self.components[mu * lie_dim + a], &self.components[nu * lie_dim + a]);
                out.push(
                    ScalarField::from_fn(grid, |x| an.gradient(x)[mu] - am.gradient(x)[nu])
                        .into_values(),
                );
            }
        }
        out
    }
}

/// `v = (A sin z + C cos y, B sin x + A cos z, C sin y + B cos x)`; `∇×v = v`.
pub fn abc_flow(grid: &GridSpec, a: f64, b: f64, c: f64) -> Result<VectorField> {
    grid.require_dim(3)?;
    Ok(VectorField::from_fn(grid, |x, out| {
        out[0] = a * x[2].sin() + c * x[1].cos();
        out[1] = b * x[0].sin() + a * x[2].cos();
        out[2] = c * x[1].sin() + b * x[0].cos();
    }))
}

/// Smooth step `T(s) = (315/128) ∫₀ˢ (1 − t²)⁴ dt` for `|s| ≤ 1`, `±1` beyond.
pub fn smooth_step(s: f64) -> f64 {
    if s >= 1.0 {
        return 1.0;
    }
    if s <= -1.0 {
        return -1.0;
    }
    let s2 = s * s;
    315.0 / 128.0
        * s
        * (1.0 + s2 * (-4.0 / 3.0 + s2 * (6.0 / 5.0 + s2 * (-4.0 / 7.0 + s2 / 9.0))))
}

/// `T'(s)`.
pub fn smooth_step_derivative(s: f64) -> f64 {
    if s.abs() >= 1.0 {
        0.0
    } else {
        315.0 / 128.0 * (1.0 - s * s).powi(4)
    }
}

/// `P(s) = (105/8) ∫₀ˢ t²(1 − t²)² dt` and `1 − P(s)`, each evaluated
/// without cancellation; clamped beyond `s = 1`.
fn volume_fraction(s: f64) -> (f64, f64) {
    if s >= 1.0 {
        return (1.0, 0.0);
    }
    let s2 = s * s;
    let p = s * s2 * (35.0 / 8.0 + s2 * (-21.0 / 4.0 + s2 * 15.0 / 8.0));
    let q = (1.0 - s).powi(3) * (1.0 + s * (3.0 + s * (6.0 + s * (45.0 / 8.0 + s * 15.0 / 8.0))));
    (p, q)
}

/// `y − sin y cos y`, by its Taylor series for small `y`.
fn sweep(y: f64) -> f64 {
    if y > 0.5 {
        return y - 0.5 * (2.0 * y).sin();
    }
    // ½ Σ_{n≥1} (−1)^{n+1} (2y)^{2n+1} / (2n+1)!
    let z = 2.0 * y;
    let mut term = z * z * z / 6.0;
    let mut acc = 0.0;
    for n in 1..12 {
        acc += term;
        let k = 2 * n + 2;
        term *= -z * z / (k * (k + 1)) as f64;
    }
    0.5 * acc
}

/// Inverse of [`sweep`] on `[0, π/2]` by Newton's method; `sweep` is convex
/// there, so iterates approach the root monotonically after one step.
fn inverse_sweep(c: f64) -> f64 {
    if c <= 0.0 {
        return 0.0;
    }
    let mut y = (1.5 * c).cbrt().min(PI / 2.0);
    for _ in 0..60 {
        let slope = 2.0 * y.sin().powi(2);
        let step = (sweep(y) - c) / slope;
        y -= step;
        if step.abs() <= 1e-16 * y {
            break;
        }
    }
    y
}

/// Hedgehog profile on `[0, R]`: `f − sin f cos f = π(1 − P(r/R))`.
///
/// The left side is proportional to the volume of `S³` swept by the ball of
/// radius `r`, so the winding density is spread evenly over the ball. This
/// keeps the derivatives of `g` as small as a compact degree-one map allows.
pub fn hedgehog_profile(r: f64, radius: f64) -> f64 {
    let (p, q) = volume_fraction(r / radius);
    if q <= 0.5 {
        inverse_sweep(PI * q)
    } else {
        PI - inverse_sweep(PI * p)
    }
}

/// Hedgehog `cos f − i sin f r̂·σ`: `g(center) = −1` and `g = 1` for `r ≥ R`.
pub fn hedgehog_element(x: &[f64], center: [f64; 3], radius: f64) -> Quat {
    let d = [x[0] - center[0], x[1] - center[1], x[2] - center[2]];
    let r = (d[0] * d[0] + d[1] * d[1] + d[2] * d[2]).sqrt();
    if r >= radius {
        return Quat::IDENTITY;
    }
    let f = hedgehog_profile(r, radius);
    if r == 0.0 {
        return Quat::new(f.cos(), 0.0, 0.0, 0.0);
    }
    let s = f.sin() / r;
    Quat::new(f.cos(), s * d[0], s * d[1], s * d[2])
}

pub fn hedgehog(grid: &GridSpec, center: [f64; 3], radius: f64) -> Result<GroupElementField> {
    grid.require_dim(3)?;
    GroupElementField::from_fn(grid, |x| hedgehog_element(x, center, radius))
}

/// Product of hedgehogs with disjoint supports.
pub fn hedgehogs(grid: &GridSpec, centers: &[[f64; 3]], radius: f64) -> Result<GroupElementField> {
    grid.require_dim(3)?;
    GroupElementField::from_fn(grid, |x| {
        centers.iter().fold(Quat::IDENTITY, |acc, &c| acc * hedgehog_element(x, c, radius))
    })
}

/// Band-limited Euler angles with exact gradients; `γ` is centred on `π/2`
/// so that both `cos γ` and `sin γ` vary.
pub fn random_euler_angles(grid: &GridSpec, kmax: usize, amplitude: f64, seed: u64) -> Result<EulerAngleField> {
    grid.require_dim(3)?;
    let series: Vec<BandLimited> = (0..3)
        .map(|s| {
            let mut rng = seeded_rng(seed, s as u64);
            let b = if grid.is_periodic() {
                BandLimited::periodic(grid, kmax, amplitude, &mut rng)
            } else {
                BandLimited::open(3, 8, kmax as f64, amplitude, &mut rng)
            };
            if s == 1 {
                b.with_offset(PI / 2.0)
            } else {
                b
            }
        })
        .collect();
    EulerAngleField::from_fn(grid, |x| {
        let mut grad = [[0.0; 3]; 3];
        for (s, row) in grad.iter_mut().enumerate() {
            row.copy_from_slice(&series[s].gradient(x)[..3]);
        }
        EulerJet { angles: [series[0].value(x), series[1].value(x), series[2].value(x)], grad }
    })
}

/// Smooth `(θ, α, β)` with exact gradients, each a sum of `n_modes` random
/// plane waves with wavenumbers up to `kscale`.
pub fn random_clebsch(
    grid: &GridSpec,
    n_modes: usize,
    kscale: f64,
    amplitude: f64,
    seed: u64,
) -> Result<ClebschPotentials> {
    grid.require_dim(3)?;
    let series: Vec<BandLimited> = (0..3)
        .map(|s| BandLimited::open(3, n_modes, kscale, amplitude, &mut seeded_rng(seed, s)))
        .collect();
    ClebschPotentials::from_fn(grid, |x| {
        let grad = |k: usize| {
            let d = series[k].gradient(x);
            [d[0], d[1], d[2]]
        };
        ([series[0].value(x), series[1].value(x), series[2].value(x)], [grad(0), grad(1), grad(2)])
    })
}

/// Two linked toroidal flux tubes and a compactly supported vector potential.
///
/// Tube 1 circles the `z` axis at radius `R` in the plane `z = 0`; tube 2
/// circles `(R, 0, 0)` in the plane `y = 0`. Each tube's potential is
/// `A = Φ u(h) (1 − Cdf(ρ − R)) n̂` with `n̂` the tube's axis, `h` the height
/// along it and `u` a unit-mass bump of half-width `a`, so `B = ∇×A` carries
/// flux `Φ` around the loop. The linking number is `+1` and the helicity is
/// `2Φ₁Φ₂`.
#[derive(Debug, Clone, Copy)]
pub struct FluxTubes {
    pub radius: f64,
    pub half_width: f64,
    pub flux1: f64,
    pub flux2: f64,
}

impl Default for FluxTubes {
    fn default() -> Self {
        Self { radius: 1.0, half_width: 0.3, flux1: 1.0, flux2: 1.0 }
    }
}

impl FluxTubes {
    fn bump(&self, s: f64) -> f64 {
        smooth_step_derivative(s / self.half_width) / (2.0 * self.half_width)
    }

    fn cdf(&self, s: f64) -> f64 {
        0.5 * (1.0 + smooth_step(s / self.half_width))
    }

    /// Potential of one tube in its own frame: axis coordinate `h`, in-plane
    /// coordinates `(p, q)`.
    fn tube(&self, flux: f64, p: f64, q: f64, h: f64) -> f64 {
        let rho = (p * p + q * q).sqrt();
        flux * self.bump(h) * (1.0 - self.cdf(rho - self.radius))
    }

    pub fn potential(&self, x: &[f64]) -> [f64; 3] {
        let a1 = self.tube(self.flux1, x[0], x[1], x[2]);
        let a2 = self.tube(self.flux2, x[0] - self.radius, x[2], x[1]);
        [0.0, a2, a1]
    }

    pub fn expected_helicity(&self) -> f64 {
        2.0 * self.flux1 * self.flux2
    }

    /// Bounding box `(lower, upper)` of the supports with a margin.
    pub fn bounds(&self, margin: f64) -> ([f64; 3], [f64; 3]) {
        let r = self.radius + self.half_width + margin;
        ([-r, -r, -r], [self.radius + r, r, r])
    }

    pub fn sample(&self, grid: &GridSpec) -> Result<VectorField> {
        grid.require_dim(3)?;
        Ok(VectorField::from_fn(grid, |x, out| out.copy_from_slice(&self.potential(x))))
    }
}
