//! Momentum-space wavefunction profiles.
//!
//! A profile is real-valued: `ψ(p) = N exp(−p²/(2σ²)) sqrt(1 + ε cos ϑ)`, where
//! the deformation angle `ϑ` is the azimuth `φ − phase` by default. With
//! `ε = 0` (or the spherical kind) the profile depends on `|p|` only.

use crate::error::{Error, Result};
use crate::kinematics::MomentumPoint;
use crate::quadrature::QuadratureGrid;
use crate::scalar::Real;

/// Relative change under grid doubling tolerated by [`normalize_profile`].
pub const NORMALIZATION_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProfileKind {
    DeformedGaussian,
    SphericalGaussian,
}

/// Which angle the `cos` deformation is written in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DeformationAngle {
    #[default]
    Azimuthal,
    Polar,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Profile<T> {
    kind: ProfileKind,
    sigma: T,
    epsilon: T,
    angle: DeformationAngle,
    phase: T,
    norm: Option<T>,
}

impl<T: Real> Profile<T> {
    pub fn deformed_gaussian(sigma: T, epsilon: T) -> Result<Self> {
        check_sigma(sigma)?;
        if !(epsilon >= T::zero() && epsilon < T::one()) {
            return Err(Error::invalid(
                "epsilon",
                format!("must lie in [0, 1), got {epsilon}"),
            ));
        }
        Ok(Self {
            kind: ProfileKind::DeformedGaussian,
            sigma,
            epsilon,
            angle: DeformationAngle::Azimuthal,
            phase: T::zero(),
            norm: None,
        })
    }

    pub fn spherical_gaussian(sigma: T) -> Result<Self> {
        check_sigma(sigma)?;
        Ok(Self {
            kind: ProfileKind::SphericalGaussian,
            sigma,
            epsilon: T::zero(),
            angle: DeformationAngle::Azimuthal,
            phase: T::zero(),
            norm: None,
        })
    }

    /// Selects the deformation angle. Clears any normalization.
    pub fn with_angle(mut self, angle: DeformationAngle) -> Self {
        self.angle = angle;
        self.norm = None;
        self
    }

    /// Rotates the azimuthal deformation to `cos(φ − phase)`. Clears any
    /// normalization.
    pub fn with_phase(mut self, phase: T) -> Result<Self> {
        if !phase.is_finite() {
            return Err(Error::invalid("phase", "must be finite"));
        }
        self.phase = phase;
        self.norm = None;
        Ok(self)
    }

    pub fn kind(&self) -> ProfileKind {
        self.kind
    }
    pub fn sigma(&self) -> T {
        self.sigma
    }
    pub fn epsilon(&self) -> T {
        self.epsilon
    }
    pub fn angle(&self) -> DeformationAngle {
        self.angle
    }
    pub fn phase(&self) -> T {
        self.phase
    }
    pub fn norm(&self) -> Option<T> {
        self.norm
    }
    pub fn is_normalized(&self) -> bool {
        self.norm.is_some()
    }

    /// True when the profile depends on `|p|` only.
    pub fn is_spherical(&self) -> bool {
        self.kind == ProfileKind::SphericalGaussian || self.epsilon == T::zero()
    }

    /// `1 + ε cos ϑ`; strictly positive for `ε < 1`.
    #[inline]
    fn deformation(&self, point: &MomentumPoint<T>) -> T {
        if self.kind == ProfileKind::SphericalGaussian {
            return T::one();
        }
        let angle = match self.angle {
            DeformationAngle::Azimuthal => point.phi() - self.phase,
            DeformationAngle::Polar => point.theta(),
        };
        T::one() + self.epsilon * angle.cos()
    }

    /// Unnormalized `|ψ|²` (i.e. with `N = 1`).
    #[inline]
    fn shape_squared(&self, point: &MomentumPoint<T>) -> T {
        let s2 = self.sigma * self.sigma;
        (-(point.p() * point.p()) / s2).exp() * self.deformation(point)
    }

    /// `|ψ(p)|²` for a normalized profile, `N = 1` otherwise.
    #[inline]
    pub(crate) fn density(&self, point: &MomentumPoint<T>) -> T {
        let n = self.norm.unwrap_or(T::one());
        n * n * self.shape_squared(point)
    }

    /// `ψ(p)` without the normalization check; used on hot paths after the
    /// owning state validated normalization.
    #[inline]
    pub(crate) fn amplitude(&self, point: &MomentumPoint<T>) -> T {
        let n = self.norm.unwrap_or(T::one());
        let s2 = self.sigma * self.sigma;
        n * (-(point.p() * point.p()) / (T::lit(2.0) * s2)).exp() * self.deformation(point).sqrt()
    }
}

fn check_sigma<T: Real>(sigma: T) -> Result<()> {
    if sigma > T::zero() && sigma.is_finite() {
        Ok(())
    } else {
        Err(Error::invalid("sigma", format!("must be positive, got {sigma}")))
    }
}

/// `ψ(p)` of a normalized profile.
pub fn eval_profile<T: Real>(profile: &Profile<T>, point: &MomentumPoint<T>) -> Result<T> {
    if !profile.is_normalized() {
        return Err(Error::UnnormalizedProfile);
    }
    Ok(profile.amplitude(point))
}

/// Sets `N` so that `∫ dμ |ψ|² = 1` on `grid`, after checking that the
/// integral is stable under doubling the grid.
pub fn normalize_profile<T: Real>(profile: &Profile<T>, grid: &QuadratureGrid<T>) -> Result<Profile<T>> {
    normalize_profile_with_tol(profile, grid, T::tol(NORMALIZATION_TOL))
}

pub fn normalize_profile_with_tol<T: Real>(
    profile: &Profile<T>,
    grid: &QuadratureGrid<T>,
    tol: T,
) -> Result<Profile<T>> {
    let coarse = grid.integrate_real(|pt| profile.shape_squared(pt))?;
    let fine = grid.doubled().integrate_real(|pt| profile.shape_squared(pt))?;
    let change = (fine - coarse).abs() / fine.abs().max(T::min_positive_value());
    if !(change <= tol) {
        return Err(Error::NonConvergent {
            change: change.as_f64(),
            tol: tol.as_f64(),
        });
    }
    if !(coarse > T::zero()) {
        return Err(Error::invalid("profile", "normalization integral vanished on the grid"));
    }
    Ok(Profile {
        norm: Some(coarse.sqrt().recip()),
        ..*profile
    })
}
