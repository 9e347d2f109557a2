use std::f64::consts::PI;
use std::fmt::Display;

use kummer_core::cocycle::{self, Cocycle, CocycleReport, Sampling};
use kummer_core::diffop;
use kummer_core::field::{serialize, BranchPoint};
use kummer_core::group::sigma::corrupted_literal;
use kummer_core::group::{data, table1, GroupData, SigmaTable};
use kummer_core::numerics::periods::{self as per, hypergeometric_p1};
use kummer_core::numerics::{self, quad::MAX_LEVEL, FdScheme, QuadratureSpec};
use kummer_core::rank::{self, NormalFunctionImage};
use num_complex::Complex64;

use crate::report::{Check, Report, TableRecord};
use crate::{Options, RankMode};

/// Tolerances fixed by the acceptance criteria.
pub const HOMOGENEOUS_TOL: f64 = 1e-5;
pub const INHOMOGENEOUS_TOL: f64 = 1e-4;
pub const REDUCTION_TOL: f64 = 1e-8;
pub const BETA_TOL: f64 = 1e-10;
pub const SVD_THRESHOLD: f64 = 1e-8;
pub const RANK_POINTS: usize = 24;
pub const PERIOD_POINTS: usize = 5;

fn failed(name: &str, err: impl Display) -> Check {
    Check::new(name, false, format!("error: {err}"))
}

fn order_checks(r: &mut Report, d: &GroupData) {
    let a = d.subgroup_analysis();
    r.push(Check::count("order_sigma", d.sigma.len(), 24));
    r.push(Check::count("order_gt", d.gt.len() * d.gt.len(), 576));
    r.push(Check::count("order_gy", d.order_gy(), 9216));
    r.push(Check::count("order_gx", d.len(), 18432));
    r.push(Check::count("order_h", a.order_h, 32));
    r.push(Check::count("order_i", a.order_i, 96));
    r.push(Check::count("order_h_cap_i", a.order_intersection, 1));
    r.push(Check::count("index_hi", a.index_hi, 6));
    let h = d.subgroup_h();
    let i = d.subgroup_i();
    r.push(Check::new("h_is_subgroup", d.is_subgroup(&h), format!("{} elements", h.len())));
    r.push(Check::new("i_is_subgroup", d.is_subgroup(&i), format!("{} elements", i.len())));
}

pub fn groups(opts: &Options) -> Report {
    let mut r = Report::new("groups");
    r.param("corrupt_table", opts.corrupt_table);
    if opts.corrupt_table {
        match SigmaTable::from_literal(&corrupted_literal()).and_then(|t| GroupData::build(&t)) {
            Ok(d) => order_checks(&mut r, &d),
            Err(e) => r.push(failed("table1_underlines", e)),
        }
        return r;
    }
    let t = table1();
    r.push(Check::no_failures("table1_closure", 24 * 24, &t.closure_failures()));
    r.push(Check::no_failures("table1_sections", 24, &t.section_failures()));
    order_checks(&mut r, data());
    let gens = data().generators();
    let closure = data().closure(&gens).len();
    r.push(Check::new("generators_span", closure == data().len(), format!("{} generators, closure {closure}", gens.len())));
    r
}

fn cocycle_check(rep: CocycleReport, label: &str) -> Check {
    Check::no_failures(&format!("cocycle_{}_{label}", rep.name), rep.pairs_checked, &rep.failures)
}

pub fn cocycles(opts: &Options) -> Report {
    let mut r = Report::new("cocycles");
    r.param("samples", opts.samples);
    r.param("seed", opts.seed);
    let n = data().len();
    r.push(Check::no_failures("chi_squared_equals_eta", n, &cocycle::chi_square_failures()));
    let random = Sampling::Random { pairs: opts.samples, seed: opts.seed };
    r.push(cocycle_check(cocycle::verify_cocycle(Cocycle::Chi, random), "random"));
    r.push(cocycle_check(cocycle::verify_cocycle(Cocycle::Eta, random), "random"));
    r.push(cocycle_check(cocycle::verify_cocycle(Cocycle::Phi1, Sampling::Exhaustive), "exhaustive"));
    r.push(cocycle_check(cocycle::verify_cocycle(Cocycle::Phi2, Sampling::Exhaustive), "exhaustive"));
    let classes = data().elements.iter().filter(|e| e.z < 2).count() * 2;
    r.push(Check::no_failures("eta_equals_sign_phi_squared", classes, &cocycle::eta_phi_failures()));
    let m = data().gt.len() * data().gt.len() * 2;
    r.push(Check::no_failures("phi_variable_separation", m, &cocycle::variable_separation_failures()));
    let k = opts.samples.min(1000);
    r.push(Check::no_failures("chi_inverse", k, &cocycle::chi_inverse_failures(k, opts.seed)));
    r.push(Check::new("phi_squares_in_family", cocycle::phi_values_in_family(), "φ² ∈ {±1, ±x, ±(1−x)}"));
    r
}

pub fn operators(_opts: &Options) -> Report {
    let mut r = Report::new("operators");
    let d = data();
    let id = d.gt.identity;
    r.push(match diffop::verify_transformation(id, id) {
        Ok(ok) => Check::new("transformation_identity", ok, "τ = id"),
        Err(e) => failed("transformation_identity", e),
    });
    let m = d.gt.len() * d.gt.len();
    r.push(Check::no_failures("transformation_all_tau", m, &diffop::transformation_failures()));
    r.push(Check::no_failures("listed_transformed_operators", d.gt.len(), &diffop::listed_operator_failures()));
    r
}

fn point_label(p: &BranchPoint) -> String {
    format!("({:.4},{:.4})", p.a.re, p.b.re)
}

fn relative(x: Complex64, y: Complex64) -> f64 {
    (x - y).norm() / y.norm()
}

pub fn periods(opts: &Options) -> Report {
    let mut r = Report::new("periods");
    let n = opts.points.unwrap_or(PERIOD_POINTS);
    r.param("points", n);
    r.param("seed", opts.seed);
    r.param("tol_quadrature", opts.tol_quadrature);
    r.param("tol_fd", opts.tol_fd);
    let spec = QuadratureSpec { max_level: MAX_LEVEL, target_tol: opts.tol_quadrature };
    let fd = FdScheme { h: opts.tol_fd };

    r.push(match numerics::quad_ts(|x, xc| Complex64::new(1.0 / (x * xc).sqrt(), 0.0), &spec) {
        Ok(v) => Check::bounded("quadrature_beta_pi", (v.re - PI).abs() / PI, BETA_TOL),
        Err(e) => failed("quadrature_beta_pi", e),
    });
    let c = Complex64::new(-0.5, 0.0);
    r.push(match (numerics::period_p(1, c, &spec), hypergeometric_p1(c)) {
        (Ok(q), Ok(s)) => Check::bounded("p1_hypergeometric", relative(q, s), 1e-9),
        (Err(e), _) | (_, Err(e)) => failed("p1_hypergeometric", e),
    });
    for which in [1u8, 2] {
        let name = format!("period_ode_p{which}");
        r.push(match per::period_ode_residual(which, -1.0, &spec, &fd) {
            Ok(v) => Check::bounded(&name, v, HOMOGENEOUS_TOL),
            Err(e) => failed(&name, e),
        });
    }
    r.push(match numerics::check_h_identity(-1.0, 0.3, &fd) {
        Ok(v) => Check::bounded("h_identity", v, HOMOGENEOUS_TOL),
        Err(e) => failed("h_identity", e),
    });

    let points = rank::sample_points(n, opts.seed);
    for p in &points {
        let at = point_label(p);
        for (j, k) in [(1u8, 1u8), (1, 2), (2, 1), (2, 2)] {
            let name = format!("homogeneous_p{j}p{k}{at}");
            r.push(match per::product_residual(j, k, p, &spec, &fd) {
                Ok(v) => Check::bounded(&name, v, HOMOGENEOUS_TOL),
                Err(e) => failed(&name, e),
            });
        }
        match numerics::check_inhomogeneous(p, &spec, &fd) {
            Ok(res) => {
                r.push(Check::bounded(&format!("inhomogeneous_first{at}"), res.relative.0, INHOMOGENEOUS_TOL));
                let name = format!("inhomogeneous_second{at}");
                let ok = res.relative.1 <= INHOMOGENEOUS_TOL;
                let witness = format!(
                    "{:.3e} (bound {INHOMOGENEOUS_TOL:.0e}); against the negated closed form {:.3e}",
                    res.relative.1, res.relative_negated_second
                );
                r.push(Check::new(name, ok, witness));
                r.push(match per::reduced_first_component(p, &spec) {
                    Ok(v) => Check::bounded(&format!("reduction_first{at}"), relative(v, res.rhs.0), REDUCTION_TOL),
                    Err(e) => failed(&format!("reduction_first{at}"), e),
                });
            }
            Err(e) => r.push(failed(&format!("inhomogeneous{at}"), e)),
        }
        let name = format!("l_square_split{at}");
        r.push(match per::square_split_residual(p, &spec) {
            Ok(v) => Check::bounded(&name, v, REDUCTION_TOL),
            Err(e) => failed(&name, e),
        });
    }
    if let Some(p) = points.first() {
        r.push(match (numerics::eval_l(p, &spec), numerics::eval_l_tensor(p, 1e-9, 9)) {
            (Ok(x), Ok(y)) => Check::bounded("l_two_routes", relative(y, x), 1e-7),
            (Err(e), _) | (_, Err(e)) => failed("l_two_routes", e),
        });
    }
    r
}

fn numeric_checks(r: &mut Report, rows: &[NormalFunctionImage], expected: usize, opts: &Options) {
    let n = opts.points.unwrap_or(RANK_POINTS);
    let mut found = Vec::new();
    for s in 0..3 {
        let seed = opts.seed + s;
        let pts = rank::sample_points(n.max(rows.len()), seed);
        let name = format!("numeric_rank_seed{seed}");
        match rank::numeric_rank(rows, &pts, SVD_THRESHOLD) {
            Ok(k) => {
                found.push(k);
                r.push(Check::count(&name, k, expected));
            }
            Err(e) => r.push(failed(&name, e)),
        }
    }
    let agree = found.len() == 3 && found.iter().all(|&k| k == found[0]);
    r.push(Check::new("numeric_rank_point_sets_agree", agree, format!("{found:?}")));
}

pub fn rank(opts: &Options, mode: RankMode) -> Report {
    let mut r = Report::new("rank");
    r.param("mode", mode.name());
    r.param("seed", opts.seed);
    r.param("points", opts.points.unwrap_or(RANK_POINTS));
    match mode {
        RankMode::Canonical => match rank::canonical_images() {
            Ok(c) => {
                r.push(Check::new("canonical_derivation", true, "Θ-derived triple equals the stored triple"));
                match rank::structural_rank(&c) {
                    Ok(k) => r.push(Check::count("structural_rank", k, 3)),
                    Err(e) => r.push(failed("structural_rank", e)),
                }
                let pairs: Vec<_> = c.iter().map(|x| x.d_image.clone()).collect();
                r.push(Check::count("exact_rank", rank::exact_rank(&pairs), 3));
                numeric_checks(&mut r, &c, 3, opts);
            }
            Err(e) => r.push(failed("canonical_derivation", e)),
        },
        RankMode::Table2 => match rank::table2() {
            Ok(rows) => {
                let table: Vec<TableRecord> = rows
                    .iter()
                    .map(|row| TableRecord {
                        rho_label: row.rho_label.clone(),
                        bullet: row.image.label.bullet.label().to_string(),
                        first_component: serialize::to_string(&row.image.d_image.0),
                        second_component: serialize::to_string(&row.image.d_image.1),
                        f1_index: row.first.f1,
                        f2_index: row.first.f2,
                        zeta_class: row.first.zeta,
                    })
                    .collect();
                let units: Vec<String> = rows.iter().map(|x| format!("i^{}", x.reference_factor)).collect();
                r.push(Check::new(
                    "table2_matches_up_to_mu4",
                    rows.len() == 18,
                    format!("{}/18 entries; factors {}", rows.len(), units.join(" ")),
                ));
                let images: Vec<NormalFunctionImage> = rows.into_iter().map(|x| x.image).collect();
                match rank::structural_rank(&images) {
                    Ok(k) => r.push(Check::count("structural_rank", k, 18)),
                    Err(e) => r.push(failed("structural_rank", e)),
                }
                numeric_checks(&mut r, &images, 18, opts);
                r.table = Some(table);
            }
            Err(e) => r.push(failed("table2_matches_up_to_mu4", e)),
        },
        RankMode::FullOrbit => {
            let d = data();
            match rank::orbit_rank_full() {
                Ok(o) => {
                    r.push(Check::count("orbit_images", o.images, 55_296));
                    r.push(Check::count("orbit_structural_rank", o.structural, 18));
                    r.push(Check::count("orbit_exact_rank", o.exact, 18));
                }
                Err(e) => r.push(failed("orbit_rank", e)),
            }
            for (name, set) in [("h", d.subgroup_h()), ("i", d.subgroup_i())] {
                match rank::orbit_rank(&set) {
                    Ok(o) => {
                        r.push(Check::count(&format!("{name}_orbit_structural_rank"), o.structural, 3));
                        r.push(Check::count(&format!("{name}_orbit_exact_rank"), o.exact, 3));
                    }
                    Err(e) => r.push(failed(&format!("{name}_orbit_rank"), e)),
                }
            }
        }
    }
    r
}
