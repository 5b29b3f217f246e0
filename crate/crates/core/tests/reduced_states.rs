use num_complex::Complex64 as C;
use proptest::prelude::*;
use relspin::contextuality::RANK_TOL;
use relspin::{
    assemble_from_integrals, boost_integrals, boosted_reduced_density, gram_rank,
    normalize_profile, rest_reduced_density, BasisState, FamilyParams, Mat2, Profile,
    QuadratureGrid, Rapidity, RelativisticQubit, SpinDensity, StateFamily,
};

fn small_grid(mass: f64, sigma: f64) -> QuadratureGrid<f64> {
    QuadratureGrid::new(48, 24, 16, mass + 8.0 * sigma, mass).unwrap()
}

fn zeta(z: f64) -> Rapidity<f64> {
    Rapidity::new(z).unwrap()
}

#[test]
fn integral_assembly_matches_direct_accumulation() {
    let family = StateFamily::with_default_grid(FamilyParams::reference()).unwrap();
    for z in [0.3, 1.0, 2.5] {
        let direct = family.boosted(zeta(z)).unwrap();
        let ints = family.integrals(zeta(z)).unwrap();
        for (i, b) in BasisState::ALL.iter().enumerate() {
            let assembled = assemble_from_integrals(*b, &ints[i]);
            let d = assembled.max_abs_diff(direct[i].matrix());
            assert!(d < 1e-12, "zeta {z} state {b:?}: {d:e}");
        }
    }
}

#[test]
fn deformation_along_cos_phi_gives_real_integrals() {
    // |ψ|² is even in φ, so every boost integral is real and I₃ vanishes.
    let family = StateFamily::with_default_grid(FamilyParams::reference()).unwrap();
    for ints in family.integrals(zeta(1.0)).unwrap() {
        assert!(ints.i3.norm() < 1e-14);
        assert!(ints.i4.im.abs() < 1e-14);
    }
}

#[test]
fn boost_acts_linearly_on_shared_profile_states() {
    // With a shared profile the boost is a fixed linear map on 2×2 matrices.
    // Fit it on four projectors, predict a fifth state.
    let g = small_grid(1.0, 2.0);
    let profile = normalize_profile(&Profile::deformed_gaussian(2.0, 0.4).unwrap(), &g).unwrap();
    let z = zeta(1.3);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let inputs = [
        [C::new(1.0, 0.0), C::new(0.0, 0.0)],
        [C::new(0.0, 0.0), C::new(1.0, 0.0)],
        [C::new(s, 0.0), C::new(s, 0.0)],
        [C::new(s, 0.0), C::new(0.0, s)],
    ];
    let image: Vec<Mat2<f64>> = inputs
        .iter()
        .map(|a| {
            let q = RelativisticQubit::with_profile(*a, profile).unwrap();
            *boosted_reduced_density(&q, z, &g).unwrap().matrix()
        })
        .collect();
    let target = [C::new(0.6, 0.0), C::new(0.48, 0.64)];
    let q = RelativisticQubit::with_profile(target, profile).unwrap();
    let direct = boosted_reduced_density(&q, z, &g).unwrap();
    // ρ = x₀P↑ + x₁P↓ + x₂P₊ + x₃P₊ᵢ with P₊ = (I+X)/2, P₊ᵢ = (I+Y)/2.
    let rho = Mat2::outer(target);
    let (rx, ry) = (2.0 * rho.e[0][1].re, -2.0 * rho.e[0][1].im);
    let x2 = rx;
    let x3 = ry;
    let x0 = rho.e[0][0].re - 0.5 * (x2 + x3);
    let x1 = rho.e[1][1].re - 0.5 * (x2 + x3);
    let predicted = image[0].scale(x0) + image[1].scale(x1) + image[2].scale(x2) + image[3].scale(x3);
    assert!(predicted.max_abs_diff(direct.matrix()) < 1e-13);
}

#[test]
fn zero_rapidity_is_identity_for_all_family_states() {
    let family = StateFamily::with_default_grid(FamilyParams::reference()).unwrap();
    let rest = family.rest().unwrap();
    let boosted = family.boosted(Rapidity::<f64>::identity()).unwrap();
    for (r, t) in rest.iter().zip(&boosted) {
        assert!(r.max_abs_diff(t) < 1e-12);
    }
}

#[test]
fn single_precision_family() {
    let params = FamilyParams::<f32>::reference();
    let grid = QuadratureGrid::<f32>::new(48, 48, 16, 49.0, 1.0).unwrap();
    let family = StateFamily::build(params, grid).unwrap();
    let tau32 = family.boosted(Rapidity::new(1.0f32).unwrap()).unwrap();
    let family64 = StateFamily::build(
        FamilyParams::reference(),
        QuadratureGrid::new(48, 48, 16, 49.0, 1.0).unwrap(),
    )
    .unwrap();
    let tau64 = family64.boosted(zeta(1.0)).unwrap();
    for (a, b) in tau32.iter().zip(&tau64) {
        for i in 0..2 {
            for j in 0..2 {
                let d = (a.entry(i, j).re as f64 - b.entry(i, j).re).abs();
                assert!(d < 1e-4, "{d}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn boosted_states_are_density_matrices(
        sigma in 0.8f64..5.0,
        eps in 0.0f64..0.95,
        a_re in -1.0f64..1.0,
        a_im in -1.0f64..1.0,
        b_re in -1.0f64..1.0,
        b_im in -1.0f64..1.0,
        z in -4.0f64..4.0,
    ) {
        let n = (a_re * a_re + a_im * a_im + b_re * b_re + b_im * b_im).sqrt();
        prop_assume!(n > 1e-3);
        let g = small_grid(1.0, sigma);
        let profile = normalize_profile(&Profile::deformed_gaussian(sigma, eps).unwrap(), &g).unwrap();
        let q = RelativisticQubit::with_profile(
            [C::new(a_re / n, a_im / n), C::new(b_re / n, b_im / n)],
            profile,
        ).unwrap();
        let tau = boosted_reduced_density(&q, zeta(z), &g).unwrap();
        prop_assert!((tau.trace() - 1.0).abs() < 1e-8);
        prop_assert!(tau.min_eigenvalue() > -1e-10);
        prop_assert!(tau.purity() <= 1.0 + 1e-10);
        let rest = rest_reduced_density(&q, &g).unwrap();
        prop_assert!((rest.purity() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn spherical_profiles_keep_the_set_dependent(
        sigma in 0.5f64..6.0,
        z in 0.2f64..3.0,
        mass in 0.5f64..2.0,
    ) {
        let g = small_grid(mass, sigma);
        let profile = normalize_profile(&Profile::spherical_gaussian(sigma).unwrap(), &g).unwrap();
        let ints = boost_integrals(&profile, zeta(z), &g).unwrap();
        prop_assert!(ints.i3.norm() < 1e-12);
        prop_assert!(ints.i4.norm() < 1e-12);
        let taus: Vec<SpinDensity<f64>> = BasisState::ALL
            .iter()
            .map(|b| {
                let q = RelativisticQubit::basis(*b, profile).unwrap();
                boosted_reduced_density(&q, zeta(z), &g).unwrap()
            })
            .collect();
        prop_assert_eq!(gram_rank(&taus, RANK_TOL).rank, 3);
    }
}
