//! Tensor-product quadrature over momentum space with the invariant measure
//! `dμ = d³p / ((2π)³ 2E)`.
//!
//! Radial and polar directions use Gauss-Legendre rules mapped to `[0, p_max]`
//! and `[0, π]`; the azimuth uses the uniform periodic rule, which integrates
//! `e^{ikφ}` exactly for `|k| < phi_nodes`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::kinematics::{energy, MomentumPoint};
use crate::scalar::Real;

pub const DEFAULT_P_NODES: usize = 64;
pub const DEFAULT_THETA_NODES: usize = 64;
pub const DEFAULT_PHI_NODES: usize = 32;
/// Default radial cutoff is `m + DEFAULT_CUTOFF_WIDTHS · max σ`.
pub const DEFAULT_CUTOFF_WIDTHS: f64 = 8.0;

/// Gauss-Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre<T: Real>(n: usize) -> Vec<(T, T)> {
    let mut out = vec![(T::zero(), T::zero()); n];
    let nf = T::from_usize(n).unwrap();
    let two = T::lit(2.0);
    for i in 0..n.div_ceil(2) {
        let k = T::from_usize(i + 1).unwrap();
        let mut x = (T::PI() * (k - T::lit(0.25)) / (nf + T::lit(0.5))).cos();
        for _ in 0..100 {
            let (p, d) = legendre(n, x);
            let dx = p / d;
            x = x - dx;
            if dx.abs() <= T::epsilon() {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        let w = two / ((T::one() - x * x) * dp * dp);
        out[i] = (-x, w);
        out[n - 1 - i] = (x, w);
    }
    if n % 2 == 1 {
        out[n / 2].0 = T::zero();
    }
    out
}

/// `(P_n(x), P_n'(x))` by the three-term recurrence.
fn legendre<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    for k in 2..=n {
        let kf = T::from_usize(k).unwrap();
        let p2 = ((T::lit(2.0) * kf - T::one()) * x * p1 - (kf - T::one()) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    if n == 0 {
        return (T::one(), T::zero());
    }
    let nf = T::from_usize(n).unwrap();
    let d = nf * (x * p1 - p0) / (x * x - T::one());
    (p1, d)
}

/// Density of `dμ` in `(p, θ, φ)`: `p² sin θ / ((2π)³ · 2E)`.
pub fn measure_weight<T: Real>(point: &MomentumPoint<T>) -> T {
    let two_pi = T::TAU();
    point.p() * point.p() * point.theta().sin()
        / (two_pi * two_pi * two_pi * T::lit(2.0) * point.energy())
}

#[derive(Debug, Clone, Copy)]
struct RadialNode<T> {
    p: T,
    energy: T,
    weight: T,
}

#[derive(Debug, Clone, Copy)]
struct PolarNode<T> {
    theta: T,
    weight: T,
}

/// Momentum-space grid for a particle of the given mass.
#[derive(Debug, Clone)]
pub struct QuadratureGrid<T> {
    p_nodes: usize,
    theta_nodes: usize,
    phi_nodes: usize,
    p_max: T,
    mass: T,
    radial: Vec<RadialNode<T>>,
    polar: Vec<PolarNode<T>>,
    azimuth: Vec<T>,
    azimuth_weight: T,
}

impl<T: Real> QuadratureGrid<T> {
    pub fn new(
        p_nodes: usize,
        theta_nodes: usize,
        phi_nodes: usize,
        p_max: T,
        mass: T,
    ) -> Result<Self> {
        for (field, n) in [
            ("p_nodes", p_nodes),
            ("theta_nodes", theta_nodes),
            ("phi_nodes", phi_nodes),
        ] {
            if n < 2 {
                return Err(Error::invalid(field, format!("must be at least 2, got {n}")));
            }
        }
        if !(p_max > T::zero()) || !p_max.is_finite() {
            return Err(Error::invalid("p_max", format!("must be positive, got {p_max}")));
        }
        energy(T::zero(), mass)?;

        let half_p = p_max * T::lit(0.5);
        let radial = gauss_legendre::<T>(p_nodes)
            .into_iter()
            .map(|(x, w)| {
                let p = half_p * (x + T::one());
                RadialNode {
                    p,
                    energy: mass.hypot(p),
                    weight: half_p * w,
                }
            })
            .collect();
        let half_pi = T::FRAC_PI_2();
        let polar = gauss_legendre::<T>(theta_nodes)
            .into_iter()
            .map(|(x, w)| PolarNode {
                theta: half_pi * (x + T::one()),
                weight: half_pi * w,
            })
            .collect();
        let n_phi = T::from_usize(phi_nodes).unwrap();
        let azimuth = (0..phi_nodes)
            .map(|k| T::TAU() * T::from_usize(k).unwrap() / n_phi)
            .collect();
        Ok(Self {
            p_nodes,
            theta_nodes,
            phi_nodes,
            p_max,
            mass,
            radial,
            polar,
            azimuth,
            azimuth_weight: T::TAU() / n_phi,
        })
    }

    /// Default resolution with cutoff `m + 8·max_sigma`.
    pub fn default_for(mass: T, max_sigma: T) -> Result<Self> {
        Self::new(
            DEFAULT_P_NODES,
            DEFAULT_THETA_NODES,
            DEFAULT_PHI_NODES,
            mass + T::lit(DEFAULT_CUTOFF_WIDTHS) * max_sigma,
            mass,
        )
    }

    /// Same cutoff and mass, every node count doubled.
    pub fn doubled(&self) -> Self {
        Self::new(
            2 * self.p_nodes,
            2 * self.theta_nodes,
            2 * self.phi_nodes,
            self.p_max,
            self.mass,
        )
        .expect("doubling a valid grid keeps it valid")
    }

    pub fn p_nodes(&self) -> usize {
        self.p_nodes
    }
    pub fn theta_nodes(&self) -> usize {
        self.theta_nodes
    }
    pub fn phi_nodes(&self) -> usize {
        self.phi_nodes
    }
    pub fn p_max(&self) -> T {
        self.p_max
    }
    pub fn mass(&self) -> T {
        self.mass
    }

    /// Integrates an `N`-component complex integrand against `dμ`.
    ///
    /// Summation order is fixed (φ innermost, then θ, then p), so identical
    /// inputs give bit-identical results.
    pub fn integrate_array<const N: usize, F>(&self, f: F) -> Result<[Complex<T>; N]>
    where
        F: Fn(&MomentumPoint<T>) -> [Complex<T>; N],
    {
        let zero = Complex::new(T::zero(), T::zero());
        let norm = {
            let two_pi = T::TAU();
            T::one() / (two_pi * two_pi * two_pi * T::lit(2.0))
        };
        let mut total = [zero; N];
        for r in &self.radial {
            let radial_factor = r.weight * r.p * r.p / r.energy;
            let mut over_theta = [zero; N];
            for t in &self.polar {
                let mut over_phi = [zero; N];
                for &phi in &self.azimuth {
                    let point = MomentumPoint::new_unchecked(r.p, t.theta, phi, self.mass, r.energy);
                    let values = f(&point);
                    for (acc, v) in over_phi.iter_mut().zip(values) {
                        if !(v.re.is_finite() && v.im.is_finite()) {
                            return Err(Error::NonFiniteIntegrand {
                                p: r.p.as_f64(),
                                theta: t.theta.as_f64(),
                                phi: phi.as_f64(),
                            });
                        }
                        *acc = *acc + v;
                    }
                }
                let polar_factor = t.weight * t.theta.sin() * self.azimuth_weight;
                for (acc, v) in over_theta.iter_mut().zip(over_phi) {
                    *acc = *acc + v * polar_factor;
                }
            }
            for (acc, v) in total.iter_mut().zip(over_theta) {
                *acc = *acc + v * radial_factor;
            }
        }
        Ok(total.map(|v| v * norm))
    }

    pub fn integrate_complex<F>(&self, f: F) -> Result<Complex<T>>
    where
        F: Fn(&MomentumPoint<T>) -> Complex<T>,
    {
        self.integrate_array(|pt| [f(pt)]).map(|[v]| v)
    }

    pub fn integrate_real<F>(&self, f: F) -> Result<T>
    where
        F: Fn(&MomentumPoint<T>) -> T,
    {
        self.integrate_complex(|pt| Complex::new(f(pt), T::zero()))
            .map(|v| v.re)
    }
}

/// Relative change `|I₂ₓ − I₁ₓ| / max(|I₂ₓ|, floor)` between this grid and
/// the grid with every node count doubled.
pub fn convergence_check<T, F>(f: F, grid: &QuadratureGrid<T>) -> Result<T>
where
    T: Real,
    F: Fn(&MomentumPoint<T>) -> Complex<T>,
{
    let coarse = grid.integrate_complex(&f)?;
    let fine = grid.doubled().integrate_complex(&f)?;
    let floor = T::lit(1e-300).max(T::min_positive_value());
    Ok((fine - coarse).norm() / fine.norm().max(floor))
}
