//! Preparation (non-)contextuality of qubit state sets.
//!
//! A set of density matrices that is linearly independent admits a
//! non-contextual model; for pure states independence is also necessary.
//! Independence is decided on Pauli (Bloch) coordinates by singular values.
//! For four independent qubit states the dual frame `{F_j}` with
//! `Tr(τᵢ F_j) = δᵢⱼ` and `Σ F_j = I` realizes the model
//! `Tr(ρ M) = Σ_λ Tr(ρ F_λ) Tr(τ_λ M)`.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{condition_number, lu_solve, mat_vec, singular_values, Mat2};
use crate::reduced_states::SpinDensity;
use crate::scalar::Real;

/// A singular value counts toward the rank when it exceeds
/// `RANK_TOL × σ_max`.
pub const RANK_TOL: f64 = 1e-9;
/// Purity below `1 − PURITY_TOL` is treated as mixed.
pub const PURITY_TOL: f64 = 1e-8;
/// Dual-frame systems beyond this condition number have no finite solution.
pub const MAX_CONDITION: f64 = 1e12;
const REFINE_ABOVE: f64 = 1e-10;

/// Pauli coordinates `(Tr M, Tr MX, Tr MY, Tr MZ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochView<T> {
    pub r0: T,
    pub rx: T,
    pub ry: T,
    pub rz: T,
}

impl<T: Real> BlochView<T> {
    pub fn of(m: &Mat2<T>) -> Self {
        let [r0, rx, ry, rz] = m.pauli();
        Self { r0, rx, ry, rz }
    }

    pub fn to_matrix(&self) -> Mat2<T> {
        Mat2::from_pauli(self.r0, self.rx, self.ry, self.rz)
    }

    pub fn as_array(&self) -> [T; 4] {
        [self.r0, self.rx, self.ry, self.rz]
    }

    /// Length of the Bloch vector `(rx, ry, rz)`.
    pub fn radius(&self) -> T {
        (self.rx * self.rx + self.ry * self.ry + self.rz * self.rz).sqrt()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankReport<T> {
    pub rank: usize,
    /// Descending.
    pub singular_values: Vec<T>,
    pub tol: T,
}

impl<T: Real> RankReport<T> {
    /// Smallest singular value that still counted toward the rank.
    pub fn smallest_counted(&self) -> Option<T> {
        self.rank
            .checked_sub(1)
            .and_then(|i| self.singular_values.get(i).copied())
    }

    pub fn smallest(&self) -> T {
        self.singular_values.last().copied().unwrap_or(T::zero())
    }

    /// `smallest_counted / σ_max`, the margin above the threshold.
    pub fn relative_margin(&self) -> Option<T> {
        let top = *self.singular_values.first()?;
        self.smallest_counted().map(|s| s / top)
    }
}

/// Rank of a state set under Bloch vectorization.
pub fn gram_rank<T: Real>(states: &[SpinDensity<T>], tol: T) -> RankReport<T> {
    let rows: Vec<Vec<T>> = states
        .iter()
        .map(|s| BlochView::of(s.matrix()).as_array().to_vec())
        .collect();
    let singular_values = singular_values(&rows);
    let top = singular_values.first().copied().unwrap_or(T::zero());
    let rank = singular_values
        .iter()
        .filter(|&&s| top > T::zero() && s > tol * top)
        .count();
    RankReport {
        rank,
        singular_values,
        tol,
    }
}

/// For pure states: non-contextual exactly when linearly independent.
pub fn is_noncontextual_pure<T: Real>(states: &[SpinDensity<T>], tol: T) -> Result<bool> {
    for (index, s) in states.iter().enumerate() {
        let purity = s.purity();
        if !(purity > T::one() - T::tol(PURITY_TOL)) {
            return Err(Error::NotPure {
                index,
                purity: purity.as_f64(),
            });
        }
    }
    Ok(gram_rank(states, tol).rank == states.len())
}

/// Verdict for an arbitrary (possibly mixed) state set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Contextual,
    NonContextual,
    /// Linearly dependent mixed states: the rank test alone does not decide.
    Undetermined,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Contextual => "contextual",
            Verdict::NonContextual => "non-contextual",
            Verdict::Undetermined => "undetermined",
        }
    }
}

pub fn classify<T: Real>(states: &[SpinDensity<T>], tol: T) -> Verdict {
    let independent = gram_rank(states, tol).rank == states.len();
    let all_pure = states
        .iter()
        .all(|s| s.purity() > T::one() - T::tol(PURITY_TOL));
    match (independent, all_pure) {
        (true, _) => Verdict::NonContextual,
        (false, true) => Verdict::Contextual,
        (false, false) => Verdict::Undetermined,
    }
}

/// Four Hermitian operators summing to `I` and dual to four states.
#[derive(Debug, Clone, PartialEq)]
pub struct DualFrame<T> {
    pub operators: [Mat2<T>; 4],
    /// The states `τ_λ` the frame is dual to; they serve as the model's
    /// response states.
    pub states: [SpinDensity<T>; 4],
    /// `max |Tr(τᵢ F_j) − δᵢⱼ|` over all 16 pairs.
    pub residual: T,
    pub condition: T,
}

impl<T: Real> DualFrame<T> {
    /// `Tr(τᵢ F_j)`.
    pub fn duality_matrix(&self) -> [[T; 4]; 4] {
        let mut out = [[T::zero(); 4]; 4];
        for (i, s) in self.states.iter().enumerate() {
            for (j, f) in self.operators.iter().enumerate() {
                out[i][j] = s.matrix().trace_product(f).re;
            }
        }
        out
    }

    /// Largest entrywise deviation of `Σ F_j` from `I`.
    pub fn completeness_error(&self) -> T {
        let sum = self
            .operators
            .iter()
            .fold(Mat2::zero(), |acc, f| acc + *f);
        sum.max_abs_diff(&Mat2::identity())
    }

    /// `(a, b, c, d)` of `F_j = a|↑⟩⟨↑| + (b+ic)|↑⟩⟨↓| + (b−ic)|↓⟩⟨↑| + d|↓⟩⟨↓|`.
    pub fn coefficients(&self, j: usize) -> [T; 4] {
        let e = &self.operators[j].e;
        [e[0][0].re, e[0][1].re, e[0][1].im, e[1][1].re]
    }
}

/// One row of the linear functional `F(a,b,c,d) ↦ Tr(τ F)`.
fn trace_row<T: Real>(s: &SpinDensity<T>) -> [T; 4] {
    let off = s.entry(0, 1);
    let two = T::lit(2.0);
    [s.entry(0, 0).re, two * off.re, two * off.im, s.entry(1, 1).re]
}

fn frame_operator<T: Real>(c: &[T]) -> Mat2<T> {
    Mat2::hermitian(c[0], Complex::new(c[1], c[2]), c[3])
}

/// Solves the 12-unknown system `Tr(τᵢ F_j) = δᵢⱼ` (i = 1..4, j = 1..3) and
/// completes the frame with `F₄ = I − F₁ − F₂ − F₃`.
pub fn build_dual_frame<T: Real>(states: &[SpinDensity<T>], tol: T) -> Result<DualFrame<T>> {
    if states.len() != 4 {
        return Err(Error::invalid(
            "states",
            format!("a dual frame needs exactly 4 states, got {}", states.len()),
        ));
    }
    let rank = gram_rank(states, tol);
    let rows: Vec<[T; 4]> = states.iter().map(trace_row).collect();
    let mut a = vec![vec![T::zero(); 12]; 12];
    let mut b = vec![T::zero(); 12];
    for j in 0..3 {
        for (i, row) in rows.iter().enumerate() {
            let eq = 4 * j + i;
            a[eq][4 * j..4 * j + 4].copy_from_slice(row);
            if i == j {
                b[eq] = T::one();
            }
        }
    }
    let condition = condition_number(&a);
    let max_condition = T::lit(MAX_CONDITION).min(T::one() / T::tol(1e-12));
    let singular = || Error::SingularSystem {
        condition: condition.as_f64(),
    };
    if rank.rank < 4 || !(condition <= max_condition) {
        return Err(singular());
    }
    let mut x = lu_solve(&a, &b).ok_or_else(singular)?;

    let states: [SpinDensity<T>; 4] = [states[0], states[1], states[2], states[3]];
    let mut frame = assemble_frame(&x, states);
    if frame.residual > T::tol(REFINE_ABOVE) {
        let ax = mat_vec(&a, &x);
        let r: Vec<T> = b.iter().zip(&ax).map(|(&u, &v)| u - v).collect();
        if let Some(dx) = lu_solve(&a, &r) {
            for (xi, d) in x.iter_mut().zip(dx) {
                *xi = *xi + d;
            }
            frame = assemble_frame(&x, states);
        }
    }
    frame.condition = condition;
    Ok(frame)
}

fn assemble_frame<T: Real>(x: &[T], states: [SpinDensity<T>; 4]) -> DualFrame<T> {
    let f1 = frame_operator(&x[0..4]);
    let f2 = frame_operator(&x[4..8]);
    let f3 = frame_operator(&x[8..12]);
    let f4 = Mat2::identity() - f1 - f2 - f3;
    let mut frame = DualFrame {
        operators: [f1, f2, f3, f4],
        states,
        residual: T::zero(),
        condition: T::zero(),
    };
    let d = frame.duality_matrix();
    let mut residual = T::zero();
    for (i, row) in d.iter().enumerate() {
        for (j, &v) in row.iter().enumerate() {
            let target = if i == j { T::one() } else { T::zero() };
            residual = residual.max((v - target).abs());
        }
    }
    frame.residual = residual;
    frame
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OntologicalReport<T> {
    /// `max |Tr(ρᵢ M_k) − Σ_λ Tr(ρᵢ F_λ) Tr(τ_λ M_k)|`.
    pub max_violation: T,
    /// `min Tr(ρᵢ F_λ)`; the model needs this non-negative.
    pub min_response: T,
    /// `max |Σ_λ Tr(ρᵢ F_λ) − 1|`.
    pub max_normalization_error: T,
}

impl<T: Real> OntologicalReport<T> {
    pub fn is_valid(&self, tol: T) -> bool {
        self.max_violation <= tol && self.min_response >= -tol && self.max_normalization_error <= tol
    }
}

/// Checks the decomposition with `G_λ = F_λ` and `σ_λ = τ_λ` over every
/// effect of every supplied POVM.
pub fn verify_ontological_model<T: Real>(
    states: &[SpinDensity<T>],
    frame: &DualFrame<T>,
    measurements: &[Vec<Mat2<T>>],
) -> OntologicalReport<T> {
    let mut report = OntologicalReport {
        max_violation: T::zero(),
        min_response: T::infinity(),
        max_normalization_error: T::zero(),
    };
    for rho in states {
        let weights: Vec<T> = frame
            .operators
            .iter()
            .map(|f| rho.matrix().trace_product(f).re)
            .collect();
        let total = weights.iter().fold(T::zero(), |a, &w| a + w);
        report.max_normalization_error = report.max_normalization_error.max((total - T::one()).abs());
        for &w in &weights {
            report.min_response = report.min_response.min(w);
        }
        for effect in measurements.iter().flatten() {
            let direct = rho.matrix().trace_product(effect).re;
            let modelled = weights
                .iter()
                .zip(&frame.states)
                .fold(T::zero(), |acc, (&w, tau)| {
                    acc + w * tau.matrix().trace_product(effect).re
                });
            report.max_violation = report.max_violation.max((direct - modelled).abs());
        }
    }
    report
}

/// `count` two-outcome projective measurements `{P_n, I − P_n}` along
/// directions drawn uniformly on the sphere from a fixed seed.
pub fn random_projective_povms<T: Real>(count: usize, seed: u64) -> Vec<Vec<Mat2<T>>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let z: f64 = rng.gen_range(-1.0..=1.0);
            let az: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let s = (1.0 - z * z).max(0.0).sqrt();
            let n = [s * az.cos(), s * az.sin(), z].map(T::lit);
            let p = Mat2::from_pauli(T::one(), n[0], n[1], n[2]);
            vec![p, Mat2::identity() - p]
        })
        .collect()
}
