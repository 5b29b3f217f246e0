//! Minimum-error discrimination of qubit states.
//!
//! # Solver
//!
//! With `Y = (y₀ I + y·σ)/2` and `pᵢρᵢ = (cᵢ I + aᵢ·σ)/2`, the dual constraint
//! `Y ⪰ pᵢρᵢ` reads `y₀ ≥ cᵢ + |y − aᵢ|`. The dual problem is therefore
//!
//! ```text
//! minimize over y ∈ R³:  f(y) = maxᵢ (cᵢ + |y − aᵢ|)
//! ```
//!
//! the smallest ball enclosing the balls `B(aᵢ, cᵢ)`. Its optimum is pinned by
//! at most four affinely independent active balls, with `y` in their convex
//! hull. [`min_error_sdp`] enumerates those support sets, solves each
//! equal-radius condition in closed form, and keeps the best dual point. The
//! barycentric weights of `y` give the optimal measurement: rank-one effects
//! along `(aᵢ − y)/|aᵢ − y|`, supported on the kernels of `Y − pᵢρᵢ`.
//! Every answer carries its dual certificate and is rejected when the gap
//! exceeds the tolerance.

use num_complex::Complex;
use rayon::prelude::*;

use crate::contextuality::{gram_rank, RANK_TOL};
use crate::error::{Error, Result};
use crate::kinematics::Rapidity;
use crate::linalg::{lu_solve, singular_values, Mat2};
use crate::reduced_states::{ensemble_mix, SpinDensity, StateFamily};
use crate::scalar::Real;

/// Default acceptance threshold on the duality gap.
pub const SDP_TOL: f64 = 1e-6;
const HERMITIAN_TOL: f64 = 1e-12;
const PRIOR_TOL: f64 = 1e-12;
const SUPPORT_TOL: f64 = 1e-9;
const MAX_SUPPORT: usize = 4;

/// `‖H‖₁ = |λ₁| + |λ₂|` for Hermitian `H`.
pub fn trace_norm<T: Real>(h: &Mat2<T>) -> Result<T> {
    let defect = h.hermiticity_error();
    if !(defect <= T::tol(HERMITIAN_TOL)) {
        return Err(Error::invalid("matrix", format!("not Hermitian (defect {defect:e})")));
    }
    let [l1, l2] = h.eigvalsh();
    Ok(l1.abs() + l2.abs())
}

/// Equal-prior two-state success probability `1/2 + ‖ρa − ρb‖₁ / 4`.
pub fn helstrom<T: Real>(rho_a: &SpinDensity<T>, rho_b: &SpinDensity<T>) -> T {
    let diff = *rho_a.matrix() - *rho_b.matrix();
    let [l1, l2] = diff.eigvalsh();
    T::lit(0.5) + T::lit(0.25) * (l1.abs() + l2.abs())
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscriminationProblem<T> {
    states: Vec<SpinDensity<T>>,
    priors: Vec<T>,
}

impl<T: Real> DiscriminationProblem<T> {
    pub fn new(states: Vec<SpinDensity<T>>, priors: Vec<T>) -> Result<Self> {
        if states.len() < 2 {
            return Err(Error::invalid("states", "need at least two states"));
        }
        if priors.len() != states.len() {
            return Err(Error::invalid(
                "priors",
                format!("{} priors for {} states", priors.len(), states.len()),
            ));
        }
        if priors.iter().any(|p| !(*p >= T::zero())) {
            return Err(Error::invalid("priors", "must be non-negative"));
        }
        let total = priors.iter().fold(T::zero(), |a, &p| a + p);
        if !((total - T::one()).abs() <= T::tol(PRIOR_TOL)) {
            return Err(Error::invalid("priors", format!("sum to {total}, expected 1")));
        }
        Ok(Self { states, priors })
    }

    pub fn uniform(states: Vec<SpinDensity<T>>) -> Result<Self> {
        let n = T::from_usize(states.len()).unwrap();
        let priors = vec![T::one() / n; states.len()];
        Self::new(states, priors)
    }

    pub fn states(&self) -> &[SpinDensity<T>] {
        &self.states
    }

    pub fn priors(&self) -> &[T] {
        &self.priors
    }

    /// `Σ pᵢ Tr(ρᵢ Mᵢ)`.
    pub fn success_probability(&self, povm: &[Mat2<T>]) -> T {
        self.states
            .iter()
            .zip(&self.priors)
            .zip(povm)
            .fold(T::zero(), |acc, ((s, &p), m)| {
                acc + p * s.matrix().trace_product(m).re
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscriminationResult<T> {
    pub povm: Vec<Mat2<T>>,
    pub p_success: T,
    pub dual_operator: Mat2<T>,
    /// `Tr Y − p_success`.
    pub duality_gap: T,
}

impl<T: Real> DiscriminationResult<T> {
    /// Smallest eigenvalue over all effects.
    pub fn min_effect_eigenvalue(&self) -> T {
        self.povm
            .iter()
            .map(|m| m.eigvalsh()[0])
            .fold(T::infinity(), T::min)
    }

    /// Largest entrywise deviation of `Σ Mᵢ` from `I`.
    pub fn completeness_error(&self) -> T {
        self.povm
            .iter()
            .fold(Mat2::zero(), |acc, m| acc + *m)
            .max_abs_diff(&Mat2::identity())
    }

    /// `minᵢ λ_min(Y − pᵢρᵢ)`; non-negative for a feasible certificate.
    pub fn dual_slack(&self, problem: &DiscriminationProblem<T>) -> T {
        problem
            .states
            .iter()
            .zip(&problem.priors)
            .map(|(s, &p)| (self.dual_operator - s.matrix().scale(p)).eigvalsh()[0])
            .fold(T::infinity(), T::min)
    }
}

type Vec3<T> = [T; 3];

fn sub3<T: Real>(a: Vec3<T>, b: Vec3<T>) -> Vec3<T> {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot3<T: Real>(a: Vec3<T>, b: Vec3<T>) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm3<T: Real>(a: Vec3<T>) -> T {
    dot3(a, a).sqrt()
}

/// `pᵢρᵢ` in Pauli form: offset `c` and Bloch-space centre `a`.
#[derive(Debug, Clone, Copy)]
struct WeightedBall<T> {
    c: T,
    a: Vec3<T>,
}

#[derive(Debug, Clone)]
struct Candidate<T> {
    value: T,
    y: Vec3<T>,
    support: Vec<usize>,
    weights: Vec<T>,
}

fn dual_objective<T: Real>(balls: &[WeightedBall<T>], y: Vec3<T>) -> T {
    balls
        .iter()
        .map(|b| b.c + norm3(sub3(y, b.a)))
        .fold(T::neg_infinity(), T::max)
}

/// Dual points pinned by the balls in `support` (equal `cᵢ + |y − aᵢ|`, `y` in
/// the affine hull).
fn support_candidates<T: Real>(
    balls: &[WeightedBall<T>],
    support: &[usize],
) -> Vec<(Vec3<T>, Vec<T>)> {
    let base = balls[support[0]];
    if support.len() == 1 {
        return vec![(base.a, vec![T::one()])];
    }
    let dirs: Vec<Vec3<T>> = support[1..]
        .iter()
        .map(|&i| sub3(balls[i].a, base.a))
        .collect();
    let rows: Vec<Vec<T>> = dirs.iter().map(|d| d.to_vec()).collect();
    let sv = singular_values(&rows);
    let (hi, lo) = (sv[0], *sv.last().unwrap());
    if !(hi > T::zero()) || lo <= T::lit(1e-10) * hi {
        return Vec::new();
    }
    let k = dirs.len();
    let gram: Vec<Vec<T>> = dirs
        .iter()
        .map(|u| dirs.iter().map(|v| dot3(*u, *v)).collect())
        .collect();
    let half = T::lit(0.5);
    let r0: Vec<T> = support[1..]
        .iter()
        .zip(&dirs)
        .map(|(&i, d)| half * (dot3(*d, *d) - balls[i].c * balls[i].c + base.c * base.c))
        .collect();
    let r1: Vec<T> = support[1..].iter().map(|&i| balls[i].c - base.c).collect();
    let (Some(t0), Some(t1)) = (lu_solve(&gram, &r0), lu_solve(&gram, &r1)) else {
        return Vec::new();
    };
    let combine = |t: &[T]| -> Vec3<T> {
        let mut u = [T::zero(); 3];
        for (tj, d) in t.iter().zip(&dirs) {
            for (x, dx) in u.iter_mut().zip(d) {
                *x = *x + *tj * *dx;
            }
        }
        u
    };
    let (u0, u1) = (combine(&t0), combine(&t1));
    // |u0 + R u1|² = (R − c₀)²
    let qa = dot3(u1, u1) - T::one();
    let qb = T::lit(2.0) * (dot3(u0, u1) + base.c);
    let qc = dot3(u0, u0) - base.c * base.c;
    let mut roots = Vec::with_capacity(2);
    let scale = qa.abs().max(qb.abs()).max(qc.abs()).max(T::min_positive_value());
    if qa.abs() <= T::lit(1e-14) * scale {
        if qb != T::zero() {
            roots.push(-qc / qb);
        }
    } else {
        let mut disc = qb * qb - T::lit(4.0) * qa * qc;
        if disc < T::zero() && disc > -T::lit(1e-12) * scale * scale {
            disc = T::zero();
        }
        if disc >= T::zero() {
            let sq = disc.sqrt();
            // Stable pairing of the two roots.
            let q = -half * (qb + qb.signum() * sq);
            if q != T::zero() {
                roots.push(qc / q);
            }
            roots.push(q / qa);
        }
    }
    let slack = T::lit(SUPPORT_TOL);
    let mut out = Vec::new();
    for r in roots {
        if !r.is_finite() || support.iter().any(|&i| r - balls[i].c < -slack) {
            continue;
        }
        let t: Vec<T> = t0.iter().zip(&t1).map(|(&a, &b)| a + r * b).collect();
        let first = T::one() - t.iter().fold(T::zero(), |a, &x| a + x);
        let mut weights = Vec::with_capacity(k + 1);
        weights.push(first);
        weights.extend(t);
        if weights.iter().any(|&w| w < -slack) {
            continue;
        }
        let shift = combine(&weights[1..]);
        let y = [base.a[0] + shift[0], base.a[1] + shift[1], base.a[2] + shift[2]];
        out.push((y, weights));
    }
    out
}

fn for_each_subset(n: usize, max: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, max: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        for i in start..n {
            cur.push(i);
            visit(cur);
            if cur.len() < max {
                rec(i + 1, n, max, cur, visit);
            }
            cur.pop();
        }
    }
    rec(0, n, max, &mut Vec::new(), &mut visit);
}

/// Optimal measurement for `max Σ pᵢ Tr(ρᵢ Mᵢ)` subject to `Mᵢ ⪰ 0, Σ Mᵢ = I`,
/// accepted only when the duality gap is at most `tol`.
pub fn min_error_sdp<T: Real>(
    problem: &DiscriminationProblem<T>,
    tol: T,
) -> Result<DiscriminationResult<T>> {
    let balls: Vec<WeightedBall<T>> = problem
        .states
        .iter()
        .zip(&problem.priors)
        .map(|(s, &p)| {
            let [_, rx, ry, rz] = s.matrix().pauli();
            WeightedBall {
                c: p,
                a: [p * rx, p * ry, p * rz],
            }
        })
        .collect();

    // `fallback` ignores the binding condition; it only matters when
    // rounding rejects every exact support, and the gap check then decides.
    let mut best: Option<Candidate<T>> = None;
    let mut fallback: Option<Candidate<T>> = None;
    for_each_subset(balls.len(), MAX_SUPPORT, |support| {
        for (y, weights) in support_candidates(&balls, support) {
            let value = dual_objective(&balls, y);
            // The measurement is read off the support, so every support
            // ball must be binding at y.
            let slack = T::lit(SUPPORT_TOL) * value.abs().max(T::one());
            let binding = support
                .iter()
                .all(|&i| balls[i].c + norm3(sub3(y, balls[i].a)) >= value - slack);
            let slot = if binding { &mut best } else { &mut fallback };
            if slot.as_ref().is_none_or(|b| value < b.value) {
                *slot = Some(Candidate {
                    value,
                    y,
                    support: support.to_vec(),
                    weights,
                });
            }
        }
    });
    let best = best
        .or(fallback)
        .expect("singleton supports always yield a candidate");

    let povm = measurement_from_support(&balls, &best);
    let p_success = problem.success_probability(&povm);
    let dual_operator = Mat2::from_pauli(best.value, best.y[0], best.y[1], best.y[2]);
    let duality_gap = best.value - p_success;
    if !(duality_gap <= tol) {
        return Err(Error::SolverGap {
            gap: duality_gap.as_f64(),
            tol: tol.as_f64(),
        });
    }
    Ok(DiscriminationResult {
        povm,
        p_success,
        dual_operator,
        duality_gap,
    })
}

fn measurement_from_support<T: Real>(balls: &[WeightedBall<T>], cand: &Candidate<T>) -> Vec<Mat2<T>> {
    let n = balls.len();
    let mut povm = vec![Mat2::zero(); n];
    let scale = balls.iter().fold(T::zero(), |m, b| m.max(b.c).max(norm3(b.a)));
    let tiny = T::epsilon() * T::lit(64.0) * scale.max(T::min_positive_value());
    let mut parts = Vec::with_capacity(cand.support.len());
    for (&i, &mu) in cand.support.iter().zip(&cand.weights) {
        let mu = mu.max(T::zero());
        if mu == T::zero() {
            continue;
        }
        let offset = sub3(balls[i].a, cand.y);
        let dist = norm3(offset);
        if dist <= tiny {
            // y sits on a centre: that single effect is the identity.
            povm[i] = Mat2::identity();
            return povm;
        }
        parts.push((i, mu * dist, offset.map(|x| x / dist)));
    }
    let total = parts.iter().fold(T::zero(), |a, p| a + p.1);
    let two = T::lit(2.0);
    for (i, w, dir) in parts {
        let w = two * w / total;
        povm[i] = Mat2::from_pauli(T::one(), dir[0], dir[1], dir[2]).scale(w);
    }
    povm
}

/// One row of a rapidity sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepValues<T> {
    /// Optimal four-state success probability with uniform priors.
    pub p_success_four: T,
    /// Helstrom probability for `½(τ₁+τ₂)` against `½(τ₃+τ₄)`.
    pub p_helstrom_two: T,
    /// Smallest Bloch singular value of the boosted four-state set.
    pub min_singular_value: T,
    pub duality_gap: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow<T> {
    pub zeta: T,
    pub outcome: std::result::Result<SweepValues<T>, Error>,
}

pub fn sweep_row<T: Real>(family: &StateFamily<T>, zeta: T, priors: &[T], tol: T) -> Result<SweepValues<T>> {
    let taus = family.boosted(Rapidity::new(zeta)?)?;
    let problem = DiscriminationProblem::new(taus.to_vec(), priors.to_vec())?;
    let sdp = min_error_sdp(&problem, tol)?;
    let half = [T::lit(0.5), T::lit(0.5)];
    let left = ensemble_mix(&taus[..2], &half)?;
    let right = ensemble_mix(&taus[2..], &half)?;
    let rank = gram_rank(&taus, T::lit(RANK_TOL));
    Ok(SweepValues {
        p_success_four: sdp.p_success,
        p_helstrom_two: helstrom(&left, &right),
        min_singular_value: rank.smallest(),
        duality_gap: sdp.duality_gap,
    })
}

/// Evaluates [`sweep_row`] for every rapidity; rows are independent and
/// returned in input order. A failing row does not stop the others.
pub fn sweep_rapidity<T: Real>(
    family: &StateFamily<T>,
    zetas: &[T],
    priors: &[T],
    tol: T,
) -> Vec<SweepRow<T>> {
    zetas
        .par_iter()
        .map(|&zeta| SweepRow {
            zeta,
            outcome: sweep_row(family, zeta, priors, tol),
        })
        .collect()
}

/// Uniform priors for `n` states.
pub fn uniform_priors<T: Real>(n: usize) -> Vec<T> {
    vec![T::one() / T::from_usize(n).unwrap(); n]
}

#[doc(hidden)]
pub fn random_state<T: Real, R: rand::Rng>(rng: &mut R) -> SpinDensity<T> {
    let z: f64 = rng.gen_range(-1.0..=1.0);
    let az: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
    let r: f64 = rng.gen_range(0.0f64..=1.0).cbrt();
    let s = (1.0 - z * z).max(0.0).sqrt();
    let v = [r * s * az.cos(), r * s * az.sin(), r * z].map(T::lit);
    SpinDensity::new(Mat2::from_pauli(T::one(), v[0], v[1], v[2])).expect("Bloch ball point is a state")
}

#[doc(hidden)]
pub fn random_unitary<T: Real, R: rand::Rng>(rng: &mut R) -> Mat2<T> {
    let mut q = [0.0f64; 4];
    for x in q.iter_mut() {
        *x = rng.gen_range(-1.0..=1.0);
    }
    let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let [a, b, c, d] = q.map(|x| T::lit(x / n));
    Mat2::new([
        [Complex::new(a, b), Complex::new(c, d)],
        [Complex::new(-c, d), Complex::new(a, -b)],
    ])
}
