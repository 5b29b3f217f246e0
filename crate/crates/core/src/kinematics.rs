//! Single-particle kinematics for z-axis boosts: energies, boosted energies
//! and the spin-1/2 Wigner rotation.
//!
//! Momenta are given in spherical coordinates `(p, θ, φ)` in natural units
//! with the rest mass `m`; angles are radians. Boosts act along `+z` with
//! rapidity `ζ`, so `v = tanh ζ`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::Mat2;
use crate::scalar::Real;

/// Largest rapidity magnitude accepted by [`Rapidity::new`].
pub const MAX_RAPIDITY: f64 = 20.0;

/// `sqrt(m² + p²)`.
pub fn energy<T: Real>(p: T, m: T) -> Result<T> {
    if !(m > T::zero()) || !m.is_finite() {
        return Err(Error::invalid("mass", format!("must be positive and finite, got {m}")));
    }
    if !(p >= T::zero()) || !p.is_finite() {
        return Err(Error::invalid("p", format!("must be non-negative and finite, got {p}")));
    }
    Ok(m.hypot(p))
}

/// A momentum-space sample together with the particle mass.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumPoint<T> {
    p: T,
    theta: T,
    phi: T,
    mass: T,
    energy: T,
}

impl<T: Real> MomentumPoint<T> {
    pub fn new(p: T, theta: T, phi: T, mass: T) -> Result<Self> {
        let energy = energy(p, mass)?;
        if !(theta >= T::zero() && theta <= T::PI()) {
            return Err(Error::invalid("theta", format!("must lie in [0, pi], got {theta}")));
        }
        if !(phi >= T::zero() && phi < T::TAU()) {
            return Err(Error::invalid("phi", format!("must lie in [0, 2pi), got {phi}")));
        }
        Ok(Self::new_unchecked(p, theta, phi, mass, energy))
    }

    /// Quadrature nodes are valid by construction; skips re-validation.
    #[inline]
    pub(crate) fn new_unchecked(p: T, theta: T, phi: T, mass: T, energy: T) -> Self {
        Self {
            p,
            theta,
            phi,
            mass,
            energy,
        }
    }

    #[inline]
    pub fn p(&self) -> T {
        self.p
    }
    #[inline]
    pub fn theta(&self) -> T {
        self.theta
    }
    #[inline]
    pub fn phi(&self) -> T {
        self.phi
    }
    #[inline]
    pub fn mass(&self) -> T {
        self.mass
    }
    #[inline]
    pub fn energy(&self) -> T {
        self.energy
    }
}

/// Boost rapidity along `+z`. Zero is the identity boost.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Rapidity<T>(T);

impl<T: Real> Rapidity<T> {
    pub fn new(zeta: T) -> Result<Self> {
        if !zeta.is_finite() || zeta.abs() > T::lit(MAX_RAPIDITY) {
            return Err(Error::RapidityOutOfRange(zeta.as_f64()));
        }
        Ok(Self(zeta))
    }

    pub fn identity() -> Self {
        Self(T::zero())
    }

    #[inline]
    pub fn value(self) -> T {
        self.0
    }

    pub fn velocity(self) -> T {
        self.0.tanh()
    }
}

/// `E' = E cosh ζ + p cos θ sinh ζ`.
pub fn boosted_energy<T: Real>(point: &MomentumPoint<T>, zeta: Rapidity<T>) -> T {
    let z = zeta.value();
    point.energy * z.cosh() + point.p * point.theta.cos() * z.sinh()
}

/// Spin-1/2 Wigner rotation `[[α, β e^{-iφ}], [−β e^{iφ}, α]]` for a z-boost.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WignerHalf<T> {
    pub alpha: T,
    pub beta: T,
    pub phi: T,
}

impl<T: Real> WignerHalf<T> {
    pub fn identity() -> Self {
        Self {
            alpha: T::one(),
            beta: T::zero(),
            phi: T::zero(),
        }
    }

    /// `e^{iφ}`.
    #[inline]
    pub fn phase(&self) -> Complex<T> {
        Complex::new(self.phi.cos(), self.phi.sin())
    }

    /// `D_{↑↑} = D_{↓↓} = α`.
    #[inline]
    pub fn up_up(&self) -> Complex<T> {
        Complex::new(self.alpha, T::zero())
    }

    /// `D_{↓↑} = −β e^{iφ}`.
    #[inline]
    pub fn down_up(&self) -> Complex<T> {
        self.phase() * (-self.beta)
    }

    /// `D_{↑↓} = β e^{−iφ}`.
    #[inline]
    pub fn up_down(&self) -> Complex<T> {
        self.phase().conj() * self.beta
    }

    pub fn matrix(&self) -> Mat2<T> {
        Mat2::new([
            [self.up_up(), self.up_down()],
            [self.down_up(), self.up_up()],
        ])
    }

    pub fn unitarity_defect(&self) -> T {
        (self.alpha * self.alpha + self.beta * self.beta - T::one()).abs()
    }
}

pub fn wigner_half<T: Real>(point: &MomentumPoint<T>, zeta: Rapidity<T>) -> WignerHalf<T> {
    let z = zeta.value();
    let half = z * T::lit(0.5);
    let (m, e, p) = (point.mass, point.energy, point.p);
    let (sin_t, cos_t) = point.theta.sin_cos();
    let e_boost = boosted_energy(point, zeta);
    let (sh, ch) = (half.sinh(), half.cosh());
    let rest = e + m;
    let moved = e_boost + m;
    let alpha = (rest / moved).sqrt() * (ch + p * cos_t / rest * sh);
    let beta = p * sin_t * sh / (rest * moved).sqrt();
    WignerHalf {
        alpha,
        beta,
        phi: point.phi,
    }
}
