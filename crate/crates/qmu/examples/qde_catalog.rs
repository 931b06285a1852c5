//! Laplace-type q-difference operators: residual evaluation, Newton-Puiseux
//! diagrams, the catalog of the six most degenerate equations with their
//! gauge-transformed solutions, and the Ismail-Zhang bilateral series.
//!
//! Run with: cargo run --example qde_catalog

use qmu::hyper::ramanujan_entire;
use qmu::qde::{catalog, gauge_modulus, gauge_solution, newton_puiseux, residual, LaplaceOperator};
use qmu::rr::{iz_relation_residual, iz_u};
use qmu::{Modulus, SummationPolicy, C64};

fn main() {
    let q = Modulus::from_real(0.2).unwrap();
    let policy = SummationPolicy::default();

    // the Ramanujan operator annihilates the convergent solution
    let y = C64::new(1.3, 0.0);
    let op = LaplaceOperator::ramanujan(y, &q);
    let r = residual(
        &op,
        |z| ramanujan_entire(z * y, &q, &policy),
        C64::new(0.5, 0.0),
        &q,
    )
    .unwrap();
    println!(
        "[T^2 - T - qxy] f0(xy): relative residual = {:.3e}",
        r.rel()
    );
    println!("Newton-Puiseux diagram: {:?}", newton_puiseux(&op));

    // the six-equation catalog and its gauge solutions
    let (a, b, x) = (C64::new(0.7, 0.0), C64::new(0.5, 0.0), C64::new(0.4, 0.0));
    let cat = catalog(a, b, &q).unwrap();
    for k in 1..=6usize {
        let qk = gauge_modulus(k, &q);
        let base = |z: C64| ramanujan_entire(z, &qk, &policy);
        let v = |z: C64| gauge_solution(k, a, b, z, &q, base, &policy);
        let r = residual(&cat[k - 1], v, x, &q).unwrap();
        println!(
            "v{k}: diagram {:?}, gauge-solution relative residual = {:.3e}",
            newton_puiseux(&cat[k - 1]),
            r.rel()
        );
    }

    // Ismail-Zhang bilateral Rogers-Ramanujan deformation
    let av = C64::new(0.5, 0.0);
    let u0 = iz_u(av, C64::new(1.0, 0.0), &q, &policy).unwrap();
    println!("u(0.5, 1, q) = {u0}");
    let r = iz_relation_residual(C64::new(0.6, 0.0), C64::new(0.9, 0.0), &q, &policy).unwrap();
    println!(
        "[xqT^2 + aT - 1] u: relative residual       = {:.3e}",
        r.operator_residual.norm() / r.operator_scale
    );
    println!(
        "little-mu relation: relative residual       = {:.3e}",
        r.mu_residual.norm() / r.mu_scale
    );
}
