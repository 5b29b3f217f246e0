//! Spin-momentum qubit states and their reduced spin density matrices, in the
//! rest frame and after a z-boost.
//!
//! The boosted state is traced in the original momentum variable: because
//! `dμ` is boost invariant,
//!
//! ```text
//! τ = ∫ dμ(p) [D(W(Λ,p)) χ(p)] [D(W(Λ,p)) χ(p)]†,   χ(p) = (a ψ↑(p), b ψ↓(p))
//! ```
//!
//! so no wavefunction is ever resampled at `Λ⁻¹p`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::kinematics::{wigner_half, Rapidity};
use crate::linalg::Mat2;
use crate::quadrature::QuadratureGrid;
use crate::scalar::Real;
use crate::wavefunctions::{normalize_profile, DeformationAngle, Profile};

/// Unit-trace tolerance, sized for quadrature error.
pub const TRACE_TOL: f64 = 1e-8;
/// Smallest eigenvalue accepted for a state.
pub const PSD_TOL: f64 = 1e-10;
const HERMITIAN_TOL: f64 = 1e-12;
const AMPLITUDE_TOL: f64 = 1e-12;

/// A 2×2 density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinDensity<T> {
    m: Mat2<T>,
}

impl<T: Real> SpinDensity<T> {
    /// Validates `m` and stores its exactly-Hermitian part.
    pub fn new(m: Mat2<T>) -> Result<Self> {
        let bad = |reason: String| Error::InvalidState { index: 0, reason };
        let herm = m.hermiticity_error();
        if !(herm <= T::tol(HERMITIAN_TOL)) {
            return Err(bad(format!("not Hermitian (defect {herm:e})")));
        }
        let [r0, rx, ry, rz] = m.pauli();
        let h = Mat2::from_pauli(r0, rx, ry, rz);
        if !((r0 - T::one()).abs() <= T::tol(TRACE_TOL)) {
            return Err(bad(format!("trace {r0} differs from 1")));
        }
        let min_eig = h.eigvalsh()[0];
        if !(min_eig >= -T::tol(PSD_TOL)) {
            return Err(bad(format!("negative eigenvalue {min_eig:e}")));
        }
        Ok(Self { m: h })
    }

    pub fn pure(v: [Complex<T>; 2]) -> Result<Self> {
        let n2 = v[0].norm_sqr() + v[1].norm_sqr();
        if !((n2 - T::one()).abs() <= T::tol(AMPLITUDE_TOL)) {
            return Err(Error::invalid("amplitudes", format!("squared norm {n2} differs from 1")));
        }
        Self::new(Mat2::outer(v))
    }

    pub fn maximally_mixed() -> Self {
        Self {
            m: Mat2::identity().scale(T::lit(0.5)),
        }
    }

    pub fn basis(state: BasisState) -> Self {
        Self {
            m: Mat2::outer(state.amplitudes()),
        }
    }

    pub fn matrix(&self) -> &Mat2<T> {
        &self.m
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex<T> {
        self.m.e[row][col]
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> T {
        self.m.trace_product(&self.m).re
    }

    pub fn trace(&self) -> T {
        self.m.trace().re
    }

    pub fn min_eigenvalue(&self) -> T {
        self.m.eigvalsh()[0]
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.m.max_abs_diff(&other.m)
    }
}

/// The four spin preparations `|↑⟩, |↓⟩, |+⟩, |−⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BasisState {
    Up,
    Down,
    Plus,
    Minus,
}

impl BasisState {
    pub const ALL: [BasisState; 4] = [Self::Up, Self::Down, Self::Plus, Self::Minus];

    pub fn amplitudes<T: Real>(self) -> [Complex<T>; 2] {
        let one = Complex::new(T::one(), T::zero());
        let zero = Complex::new(T::zero(), T::zero());
        let h = Complex::new(T::FRAC_1_SQRT_2(), T::zero());
        match self {
            Self::Up => [one, zero],
            Self::Down => [zero, one],
            Self::Plus => [h, h],
            Self::Minus => [h, -h],
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Up => "up",
            Self::Down => "down",
            Self::Plus => "plus",
            Self::Minus => "minus",
        }
    }
}

/// `∫ dμ(p) (a ψ↑(p) |↑,p⟩ + b ψ↓(p) |↓,p⟩)` with `|a|² + |b|² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelativisticQubit<T> {
    amp_up: Complex<T>,
    amp_down: Complex<T>,
    profile_up: Profile<T>,
    profile_down: Profile<T>,
}

impl<T: Real> RelativisticQubit<T> {
    pub fn new(
        amp_up: Complex<T>,
        amp_down: Complex<T>,
        profile_up: Profile<T>,
        profile_down: Profile<T>,
    ) -> Result<Self> {
        let n2 = amp_up.norm_sqr() + amp_down.norm_sqr();
        if !((n2 - T::one()).abs() <= T::tol(AMPLITUDE_TOL)) {
            return Err(Error::invalid(
                "amplitudes",
                format!("|amp_up|² + |amp_down|² = {n2}, expected 1"),
            ));
        }
        if !(profile_up.is_normalized() && profile_down.is_normalized()) {
            return Err(Error::UnnormalizedProfile);
        }
        Ok(Self {
            amp_up,
            amp_down,
            profile_up,
            profile_down,
        })
    }

    /// Both spin components share one profile.
    pub fn with_profile(amps: [Complex<T>; 2], profile: Profile<T>) -> Result<Self> {
        Self::new(amps[0], amps[1], profile, profile)
    }

    pub fn basis(state: BasisState, profile: Profile<T>) -> Result<Self> {
        Self::with_profile(state.amplitudes(), profile)
    }

    pub fn amplitudes(&self) -> [Complex<T>; 2] {
        [self.amp_up, self.amp_down]
    }

    pub fn profiles(&self) -> [&Profile<T>; 2] {
        [&self.profile_up, &self.profile_down]
    }
}

/// Momentum traced out in the rest frame.
pub fn rest_reduced_density<T: Real>(
    state: &RelativisticQubit<T>,
    grid: &QuadratureGrid<T>,
) -> Result<SpinDensity<T>> {
    let overlap = grid.integrate_real(|pt| {
        state.profile_up.amplitude(pt) * state.profile_down.amplitude(pt)
    })?;
    let off = state.amp_up * state.amp_down.conj() * overlap;
    SpinDensity::new(Mat2::hermitian(
        state.amp_up.norm_sqr(),
        off,
        state.amp_down.norm_sqr(),
    ))
}

/// Boost integrals of one profile:
///
/// * `i1 = ∫ dμ |ψ|² D²_{↑↑}`
/// * `i2 = ∫ dμ |ψ|² |D_{↓↑}|²`
/// * `i3 = ∫ dμ |ψ|² D²_{↓↑}`
/// * `i4 = ∫ dμ |ψ|² D_{↓↑} D_{↑↑}`
///
/// The `|↑⟩`/`|↓⟩` blocks use `i4` in the off-diagonal slot; see
/// [`assemble_from_integrals`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoostIntegrals<T> {
    pub i1: T,
    pub i2: T,
    pub i3: Complex<T>,
    pub i4: Complex<T>,
}

pub fn boost_integrals<T: Real>(
    profile: &Profile<T>,
    zeta: Rapidity<T>,
    grid: &QuadratureGrid<T>,
) -> Result<BoostIntegrals<T>> {
    if !profile.is_normalized() {
        return Err(Error::UnnormalizedProfile);
    }
    let [i1, i2, i3, i4] = grid.integrate_array(|pt| {
        let w = wigner_half(pt, zeta);
        let rho = profile.density(pt);
        let du = w.down_up();
        let a = w.alpha;
        [
            Complex::new(rho * a * a, T::zero()),
            Complex::new(rho * w.beta * w.beta, T::zero()),
            du * du * rho,
            du * (a * rho),
        ]
    })?;
    Ok(BoostIntegrals {
        i1: i1.re,
        i2: i2.re,
        i3,
        i4,
    })
}

/// Momentum traced out after the boost, by direct 2×2 accumulation.
pub fn boosted_reduced_density<T: Real>(
    state: &RelativisticQubit<T>,
    zeta: Rapidity<T>,
    grid: &QuadratureGrid<T>,
) -> Result<SpinDensity<T>> {
    let [uu, ud, dd] = grid.integrate_array(|pt| {
        let d = wigner_half(pt, zeta).matrix();
        let chi = [
            state.amp_up * state.profile_up.amplitude(pt),
            state.amp_down * state.profile_down.amplitude(pt),
        ];
        let v = d.apply(chi);
        [v[0] * v[0].conj(), v[0] * v[1].conj(), v[1] * v[1].conj()]
    })?;
    SpinDensity::new(Mat2::hermitian(uu.re, ud, dd.re))
}

/// Boosted matrix of a single-profile basis state, assembled entrywise from
/// its [`BoostIntegrals`].
pub fn assemble_from_integrals<T: Real>(state: BasisState, ints: &BoostIntegrals<T>) -> Mat2<T> {
    let one = Complex::new(T::one(), T::zero());
    let half = T::lit(0.5);
    let i1 = Complex::new(ints.i1, T::zero());
    let i2 = Complex::new(ints.i2, T::zero());
    let (i3, i4) = (ints.i3, ints.i4);
    let e = match state {
        BasisState::Up => [[i1, i4.conj()], [i4, i2]],
        BasisState::Down => [[i2, -i4.conj()], [-i4, i1]],
        BasisState::Plus => [
            [(one - i4.conj() - i4) * half, (i1 - i3.conj()) * half],
            [(i1 - i3) * half, (one + i4.conj() + i4) * half],
        ],
        BasisState::Minus => [
            [(one + i4.conj() + i4) * half, (i3.conj() - i1) * half],
            [(i3 - i1) * half, (one - i4.conj() - i4) * half],
        ],
    };
    Mat2::new(e)
}

/// Convex combination `Σ wᵢ ρᵢ`.
pub fn ensemble_mix<T: Real>(states: &[SpinDensity<T>], weights: &[T]) -> Result<SpinDensity<T>> {
    if states.is_empty() || states.len() != weights.len() {
        return Err(Error::invalid(
            "weights",
            format!("{} weights for {} states", weights.len(), states.len()),
        ));
    }
    if weights.iter().any(|w| !(*w >= T::zero())) {
        return Err(Error::invalid("weights", "must be non-negative"));
    }
    let total = weights.iter().fold(T::zero(), |a, &w| a + w);
    if !((total - T::one()).abs() <= T::tol(1e-12)) {
        return Err(Error::invalid("weights", format!("sum to {total}, expected 1")));
    }
    let mixed = states
        .iter()
        .zip(weights)
        .fold(Mat2::zero(), |acc, (s, &w)| acc + s.m.scale(w));
    SpinDensity::new(mixed)
}

/// Parameters of the four-state family `|↑⟩, |↓⟩, |+⟩, |−⟩`, each carrying
/// its own deformed-Gaussian profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyParams<T> {
    pub mass: T,
    pub epsilon: T,
    /// Widths for up, down, plus, minus.
    pub sigmas: [T; 4],
    pub angle: DeformationAngle,
    pub phase: T,
}

impl<T: Real> FamilyParams<T> {
    /// `ε = 0.1, m = 1, σ = (2, 4, 3, 6)`.
    pub fn reference() -> Self {
        Self {
            mass: T::one(),
            epsilon: T::lit(0.1),
            sigmas: [2.0, 4.0, 3.0, 6.0].map(T::lit),
            angle: DeformationAngle::Azimuthal,
            phase: T::zero(),
        }
    }

    pub fn max_sigma(&self) -> T {
        self.sigmas.iter().fold(T::zero(), |a, &s| a.max(s))
    }

    pub fn default_grid(&self) -> Result<QuadratureGrid<T>> {
        QuadratureGrid::default_for(self.mass, self.max_sigma())
    }
}

/// The four normalized states of a [`FamilyParams`] on a fixed grid.
#[derive(Debug, Clone)]
pub struct StateFamily<T> {
    params: FamilyParams<T>,
    grid: QuadratureGrid<T>,
    states: [RelativisticQubit<T>; 4],
}

impl<T: Real> StateFamily<T> {
    pub fn build(params: FamilyParams<T>, grid: QuadratureGrid<T>) -> Result<Self> {
        if grid.mass() != params.mass {
            return Err(Error::invalid("mass", "grid and state family disagree on the mass"));
        }
        let mut states = Vec::with_capacity(4);
        for (basis, &sigma) in BasisState::ALL.iter().zip(&params.sigmas) {
            let raw = Profile::deformed_gaussian(sigma, params.epsilon)?
                .with_angle(params.angle)
                .with_phase(params.phase)?;
            let profile = normalize_profile(&raw, &grid)?;
            states.push(RelativisticQubit::basis(*basis, profile)?);
        }
        let states = [states[0], states[1], states[2], states[3]];
        Ok(Self {
            params,
            grid,
            states,
        })
    }

    pub fn with_default_grid(params: FamilyParams<T>) -> Result<Self> {
        let grid = params.default_grid()?;
        Self::build(params, grid)
    }

    pub fn params(&self) -> &FamilyParams<T> {
        &self.params
    }

    pub fn grid(&self) -> &QuadratureGrid<T> {
        &self.grid
    }

    pub fn states(&self) -> &[RelativisticQubit<T>; 4] {
        &self.states
    }

    pub fn rest(&self) -> Result<[SpinDensity<T>; 4]> {
        collect4(self.states.iter().map(|s| rest_reduced_density(s, &self.grid)))
    }

    pub fn boosted(&self, zeta: Rapidity<T>) -> Result<[SpinDensity<T>; 4]> {
        collect4(
            self.states
                .iter()
                .map(|s| boosted_reduced_density(s, zeta, &self.grid)),
        )
    }

    pub fn integrals(&self, zeta: Rapidity<T>) -> Result<[BoostIntegrals<T>; 4]> {
        let mut out = Vec::with_capacity(4);
        for s in &self.states {
            out.push(boost_integrals(s.profiles()[0], zeta, &self.grid)?);
        }
        Ok([out[0], out[1], out[2], out[3]])
    }
}

fn collect4<T: Copy>(it: impl Iterator<Item = Result<T>>) -> Result<[T; 4]> {
    let mut v = Vec::with_capacity(4);
    for (index, r) in it.enumerate() {
        v.push(r.map_err(|e| match e {
            Error::InvalidState { reason, .. } => Error::InvalidState { index, reason },
            other => other,
        })?);
    }
    Ok([v[0], v[1], v[2], v[3]])
}
