use std::f64::consts::PI;

use kummer_core::field::BranchPoint;
use kummer_core::numerics::periods::{
    self, hypergeometric_p1, inhomogeneous_rhs, period_ode_residual, product_residual, reduced_first_component, reduced_second_component,
    square_split_residual, wronskian_condition,
};
use kummer_core::numerics::{
    check_h_identity, check_inhomogeneous, eval_l, eval_l_tensor, fd_apply_pf, period_p, quad_ts, FdScheme,
    QuadratureSpec,
};
use num_complex::Complex64;

fn c(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

const POINTS: [(f64, f64); 5] = [(-1.0, -2.0), (-0.5, -1.5), (-0.3, -1.1), (-1.7, -0.6), (-1.2, -0.25)];

#[test]
fn quadrature_basics() {
    let beta = quad_ts(|x, xc| c(1.0 / (x * xc).sqrt()), &spec()).unwrap();
    assert!((beta.re - PI).abs() <= 1e-10 * PI && beta.im == 0.0);
    let lin = quad_ts(|x, _| c(x), &spec()).unwrap();
    assert!((lin.re - 0.5).abs() < 1e-14);
    let (a, b) = (-1.0f64, -2.0f64);
    let v = quad_ts(|z, _| c(1.0 / ((1.0 - b * z).sqrt() * (1.0 - a * z).powf(1.5))), &spec()).unwrap();
    let expected = 2.0 * ((3.0f64).sqrt() / (2.0f64).sqrt() - 1.0);
    assert!((v.re - expected).abs() < 1e-12);
}

#[test]
fn quadrature_spec_validation() {
    assert!(QuadratureSpec::new(12, 1e-15).is_err());
    assert!(QuadratureSpec::new(12, 0.1).is_err());
    assert!(QuadratureSpec::new(13, 1e-10).is_err());
    assert!(FdScheme::new(1e-7).is_err());
    assert!(FdScheme::new(1e-3).is_ok());
}

#[test]
fn beta_error_contracts_with_level() {
    let errs: Vec<f64> = (0..=4)
        .map(|l| (kummer_core::numerics::quad::fixed_level(|x: f64, xc: f64| 1.0 / (x * xc).sqrt(), l) - PI).abs())
        .collect();
    // Double-exponential convergence: each halving of the step roughly
    // doubles the number of correct digits until rounding takes over.
    assert!(errs[1] <= 10.0 * errs[0] * errs[0], "{errs:?}");
    assert!(errs[2] <= 10.0 * errs[1] * errs[1] && errs[2] < 1e-14, "{errs:?}");
}

#[test]
fn p1_matches_hypergeometric_series() {
    let q = period_p(1, c(-0.5), &spec()).unwrap();
    let s = hypergeometric_p1(c(-0.5)).unwrap();
    assert!((q - s).norm() <= 1e-9 * s.norm(), "{q} vs {s}");
    assert!(period_p(1, c(0.5), &spec()).is_err());
    assert!(period_p(2, c(3.0), &spec()).is_err());
}

#[test]
fn periods_solve_the_one_variable_equation() {
    let fd = FdScheme::default();
    for which in [1, 2] {
        let r = period_ode_residual(which, -1.0, &spec(), &fd).unwrap();
        assert!(r <= 1e-5, "P{which}: {r}");
    }
    let k = wronskian_condition(-1.0, &spec(), &fd).unwrap();
    assert!(k < 1e6, "condition {k}");
}

#[test]
fn period_products_are_annihilated() {
    let fd = FdScheme::default();
    for (a, b) in POINTS {
        let p = BranchPoint::principal(a, b).unwrap();
        for j in [1, 2] {
            for k in [1, 2] {
                let r = product_residual(j, k, &p, &spec(), &fd).unwrap();
                assert!(r <= 1e-5, "P{j}(a)P{k}(b) at ({a}, {b}): {r}");
            }
        }
    }
}

#[test]
fn fd_of_constant() {
    let p = BranchPoint::principal(-1.0, -2.0).unwrap();
    let (r1, r2) = fd_apply_pf(|_| Ok(c(3.0)), &p, &FdScheme::default()).unwrap();
    assert!((r1 - c(-0.75)).norm() < 1e-12 && (r2 - c(-0.75)).norm() < 1e-12);
}

#[test]
fn l_two_routes_and_square_split() {
    let p = BranchPoint::principal(-1.0, -2.0).unwrap();
    let l1 = eval_l(&p, &spec()).unwrap();
    let l2 = eval_l_tensor(&p, 1e-9, 9).unwrap();
    assert!(l1.re > 0.0 && l1.im == 0.0);
    assert!((l1 - l2).norm() <= 1e-7 * l1.norm(), "{l1} vs {l2}");
    for (a, b) in POINTS {
        let p = BranchPoint::principal(a, b).unwrap();
        let r = square_split_residual(&p, &spec()).unwrap();
        assert!(r <= 1e-8, "({a}, {b}): {r}");
    }
    let off = BranchPoint::principal(-1.0, -2.0).unwrap().with_signs(2);
    assert!(eval_l(&off, &spec()).is_err());
}

#[test]
fn inhomogeneous_system() {
    let fd = FdScheme::default();
    for (a, b) in POINTS {
        let p = BranchPoint::principal(a, b).unwrap();
        let r = check_inhomogeneous(&p, &spec(), &fd).unwrap();
        assert!(r.relative.0 <= 1e-4, "({a}, {b}): {:?}", r.relative);
        let reduced = reduced_first_component(&p, &spec()).unwrap();
        assert!((reduced - r.rhs.0).norm() <= 1e-8 * r.rhs.0.norm());
        // The second component of 𝒟ℒ, for ℒ integrated over 0 < y < x < 1,
        // is the negative of the closed form (2/(a−b))(1 − √(1−a)/√(1−b)).
        // Finite differences and the 1-D reduction agree on this.
        assert!(r.relative_negated_second <= 1e-4, "({a}, {b}): {}", r.relative_negated_second);
        assert!(r.relative.1 > 1.9);
        let reduced = reduced_second_component(&p, &spec()).unwrap();
        assert!((reduced + r.rhs.1).norm() <= 1e-8 * r.rhs.1.norm());
    }
    let p = BranchPoint::principal(-1.0, -2.0).unwrap();
    let rhs = inhomogeneous_rhs().0.eval(&p).unwrap();
    assert!((rhs.re - 2.0 * (1.5f64.sqrt() - 1.0)).abs() < 1e-14);
}

#[test]
fn h_identity() {
    let fd = FdScheme::default();
    for (a, x) in [(-1.0, 0.3), (-2.0, 0.7)] {
        let r = check_h_identity(a, x, &fd).unwrap();
        assert!(r <= 1e-5, "({a}, {x}): {r}");
    }
    assert!(check_h_identity(-1e-9, 0.5, &fd).unwrap().is_finite());
    assert!(periods::h_function(-1.0, 0.5).is_finite());
}
