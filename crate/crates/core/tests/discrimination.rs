use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use relspin::discrimination::{random_state, random_unitary, uniform_priors, SDP_TOL};
use relspin::{
    helstrom, min_error_sdp, sweep_rapidity, DiscriminationProblem, DiscriminationResult,
    FamilyParams, Mat2, Rapidity, SpinDensity, StateFamily,
};

/// Recomputes optimality from the returned certificate alone: a feasible
/// measurement and a feasible dual operator whose values nearly agree.
fn assert_certified(problem: &DiscriminationProblem<f64>, res: &DiscriminationResult<f64>) {
    let mut sum = Mat2::zero();
    for m in &res.povm {
        assert!(m.hermiticity_error() < 1e-12);
        assert!(m.eigvalsh()[0] >= -1e-9, "effect not PSD: {:?}", m.eigvalsh());
        sum = sum + *m;
    }
    assert!(sum.max_abs_diff(&Mat2::identity()) < 1e-9);
    let mut primal = 0.0;
    for ((rho, &p), m) in problem.states().iter().zip(problem.priors()).zip(&res.povm) {
        primal += p * rho.matrix().trace_product(m).re;
        let slack = res.dual_operator - rho.matrix().scale(p);
        assert!(slack.eigvalsh()[0] >= -1e-9, "dual infeasible: {:?}", slack.eigvalsh());
    }
    let dual = res.dual_operator.trace().re;
    assert!((primal - res.p_success).abs() < 1e-12);
    assert!(dual - primal >= -1e-9, "weak duality violated");
    assert!(dual - primal < 1e-6);
}

fn reference_instances() -> Vec<(Vec<SpinDensity<f64>>, Vec<f64>, f64)> {
    include_str!("data/sdp_reference.txt")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let v: Vec<f64> = l.split_whitespace().map(|x| x.parse().unwrap()).collect();
            assert_eq!(v.len(), 17);
            let states = (0..4)
                .map(|i| {
                    let (x, y, z) = (v[3 * i], v[3 * i + 1], v[3 * i + 2]);
                    // Pure inputs can sit a rounding error outside the ball.
                    let r = (x * x + y * y + z * z).sqrt().max(1.0);
                    SpinDensity::new(Mat2::from_pauli(1.0, x / r, y / r, z / r)).unwrap()
                })
                .collect();
            (states, v[12..16].to_vec(), v[16])
        })
        .collect()
}

#[test]
fn matches_external_conic_solver_on_fifty_instances() {
    let instances = reference_instances();
    assert_eq!(instances.len(), 50);
    let mut worst: f64 = 0.0;
    for (states, priors, expected) in instances {
        let problem = DiscriminationProblem::new(states, priors).unwrap();
        let res = min_error_sdp(&problem, SDP_TOL).unwrap();
        assert_certified(&problem, &res);
        worst = worst.max((res.p_success - expected).abs());
    }
    assert!(worst < 1e-7, "worst deviation {worst:e}");
}

#[test]
fn two_state_problems_reduce_to_helstrom() {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    for _ in 0..200 {
        let a = random_state::<f64, _>(&mut rng);
        let b = random_state::<f64, _>(&mut rng);
        let problem = DiscriminationProblem::uniform(vec![a, b]).unwrap();
        let res = min_error_sdp(&problem, SDP_TOL).unwrap();
        assert_certified(&problem, &res);
        assert!((res.p_success - helstrom(&a, &b)).abs() < 1e-7);
    }
}

#[test]
fn unequal_priors_route_through_the_sdp() {
    // Closed form for two states with priors p, 1 − p: ½(1 + ‖pρ − (1−p)σ‖₁).
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for k in 0..50 {
        let a = random_state::<f64, _>(&mut rng);
        let b = random_state::<f64, _>(&mut rng);
        let p = 0.05 + 0.9 * (k as f64 / 49.0);
        let problem = DiscriminationProblem::new(vec![a, b], vec![p, 1.0 - p]).unwrap();
        let res = min_error_sdp(&problem, SDP_TOL).unwrap();
        let diff = a.matrix().scale(p) - b.matrix().scale(1.0 - p);
        let [l1, l2] = diff.eigvalsh();
        let expected = 0.5 * (1.0 + l1.abs() + l2.abs());
        assert!((res.p_success - expected).abs() < 1e-9);
        assert!(res.p_success >= p.max(1.0 - p) - 1e-12);
    }
}

fn conjugate(u: &Mat2<f64>, s: &SpinDensity<f64>) -> SpinDensity<f64> {
    SpinDensity::new(*u * *s.matrix() * u.dagger()).unwrap()
}

#[test]
fn success_is_invariant_under_global_unitaries() {
    let family = StateFamily::with_default_grid(FamilyParams::<f64>::reference()).unwrap();
    let taus = family.boosted(Rapidity::new(1.0).unwrap()).unwrap();
    let base = min_error_sdp(&DiscriminationProblem::uniform(taus.to_vec()).unwrap(), SDP_TOL)
        .unwrap()
        .p_success;
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    let other: Vec<SpinDensity<f64>> = (0..5).map(|_| random_state(&mut rng)).collect();
    let other_base = min_error_sdp(&DiscriminationProblem::uniform(other.clone()).unwrap(), SDP_TOL)
        .unwrap()
        .p_success;
    for _ in 0..20 {
        let u = random_unitary::<f64, _>(&mut rng);
        assert!((u * u.dagger()).max_abs_diff(&Mat2::identity()) < 1e-14);
        let rotated: Vec<_> = taus.iter().map(|s| conjugate(&u, s)).collect();
        let p = min_error_sdp(&DiscriminationProblem::uniform(rotated).unwrap(), SDP_TOL)
            .unwrap()
            .p_success;
        assert!((p - base).abs() < 1e-7);
        let rotated: Vec<_> = other.iter().map(|s| conjugate(&u, s)).collect();
        let p = min_error_sdp(&DiscriminationProblem::uniform(rotated).unwrap(), SDP_TOL)
            .unwrap()
            .p_success;
        assert!((p - other_base).abs() < 1e-7);
    }
}

#[test]
fn many_states_and_degenerate_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in [3, 5, 8] {
        let states: Vec<_> = (0..n).map(|_| random_state::<f64, _>(&mut rng)).collect();
        let problem = DiscriminationProblem::new(states, uniform_priors(n)).unwrap();
        let res = min_error_sdp(&problem, SDP_TOL).unwrap();
        assert_certified(&problem, &res);
        assert!(res.p_success <= 1.0 + 1e-12 && res.p_success >= 1.0 / n as f64 - 1e-12);
    }
    // Repeated and collinear states.
    let up = SpinDensity::new(Mat2::from_pauli(1.0, 0.0, 0.0, 1.0)).unwrap();
    let half = SpinDensity::new(Mat2::from_pauli(1.0, 0.0, 0.0, 0.5)).unwrap();
    let down = SpinDensity::new(Mat2::from_pauli(1.0, 0.0, 0.0, -1.0)).unwrap();
    let problem = DiscriminationProblem::uniform(vec![up, up, half, down]).unwrap();
    let res = min_error_sdp(&problem, SDP_TOL).unwrap();
    assert_certified(&problem, &res);
    assert!((res.p_success - 0.5).abs() < 1e-12);
}

#[test]
fn sweep_rows_keep_order_and_isolate_failures() {
    let family = StateFamily::with_default_grid(FamilyParams::<f64>::reference()).unwrap();
    let zetas = [0.0, 25.0, 1.0, 0.5];
    let rows = sweep_rapidity(&family, &zetas, &uniform_priors(4), SDP_TOL);
    assert_eq!(rows.iter().map(|r| r.zeta).collect::<Vec<_>>(), zetas);
    assert!(rows[1].outcome.is_err());
    for i in [0, 2, 3] {
        let v = rows[i].outcome.as_ref().unwrap();
        assert!(v.duality_gap < 1e-6);
        assert!(v.p_success_four >= 0.25 && v.p_success_four <= 1.0);
    }
    let at = |i: usize| rows[i].outcome.as_ref().unwrap().p_success_four;
    assert!(at(2) < at(3) && at(3) < at(0));
}

#[test]
fn reference_sweep_regression_values() {
    // Default grid and reference parameters; values from the first validated run.
    let expected = [
        (0.5, 0.494583360393, 0.502250467428),
        (1.0, 0.481089210992, 0.507438890359),
        (2.0, 0.451194449214, 0.518228490313),
        (3.0, 0.433612321016, 0.523999919273),
    ];
    let family = StateFamily::with_default_grid(FamilyParams::<f64>::reference()).unwrap();
    let zetas: Vec<f64> = expected.iter().map(|e| e.0).collect();
    let rows = sweep_rapidity(&family, &zetas, &uniform_priors(4), SDP_TOL);
    for (row, (z, four, two)) in rows.iter().zip(expected) {
        let v = row.outcome.as_ref().unwrap();
        assert!((v.p_success_four - four).abs() < 1e-9, "zeta {z}: {}", v.p_success_four);
        assert!((v.p_helstrom_two - two).abs() < 1e-9, "zeta {z}: {}", v.p_helstrom_two);
    }
}
