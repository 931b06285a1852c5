//! Unilateral and bilateral basic hypergeometric series: the q-binomial
//! theorem, lattice truncation of a bilateral sum, and the Heine equation
//! with its fundamental-solution identity.
//!
//! Run with: cargo run --example hypergeometric_series

use qmu::hyper::{heine_residual, phi, psi, ramanujan_entire, HyperSpec};
use qmu::qcore::{qpoch, PochIndex};
use qmu::{Modulus, SummationPolicy, C64};

fn main() {
    let q = Modulus::from_real(0.2).unwrap();
    let policy = SummationPolicy::default();

    // q-binomial theorem: 1phi0(a; -; q, z) (z)_inf = (az)_inf
    let (a, z) = (C64::new(0.4, 0.0), C64::new(0.3, 0.0));
    let series = phi(&HyperSpec::new(vec![a], vec![], q, z), &policy).unwrap();
    let zp = qpoch(z, &q, PochIndex::Infinite, &policy).unwrap();
    let az = qpoch(a * z, &q, PochIndex::Infinite, &policy).unwrap();
    println!("1phi0(a;-;q,z)              = {series}");
    println!(
        "q-binomial theorem residual = {:.3e}",
        (series.value * zp.value - az.value).norm()
    );

    // a lower parameter q collapses the bilateral series onto its unilateral part
    let x = C64::new(0.3, 0.0);
    let bi = psi(
        &HyperSpec::new(
            vec![x],
            vec![q.q(), C64::new(0.0, 0.0)],
            q,
            C64::new(0.45, 0.1),
        ),
        &policy,
    )
    .unwrap();
    let uni = phi(
        &HyperSpec::new(vec![x], vec![C64::new(0.0, 0.0)], q, C64::new(0.45, 0.1)),
        &policy,
    )
    .unwrap();
    println!(
        "bilateral lattice truncation residual = {:.3e}",
        (bi.value - uni.value).norm()
    );

    // convergent Ramanujan solution
    let q25 = Modulus::from_real(0.25).unwrap();
    let f0 = ramanujan_entire(C64::new(0.4, 0.0), &q25, &policy).unwrap();
    println!("f0(0.4; 0.25)               = {f0}");

    // Heine equation and the two fundamental solutions around x = 0
    let r = heine_residual(
        C64::new(0.3, 0.0),
        C64::new(0.5, 0.0),
        C64::new(0.7, 0.0),
        C64::new(0.25, 0.0),
        &q,
        &policy,
    )
    .unwrap();
    println!(
        "Heine identity residual     = {:.3e} (scale {:.3e})",
        r.identity_residual.norm(),
        r.identity_scale
    );
    println!(
        "Heine operator residual     = {:.3e} (scale {:.3e})",
        r.operator_residual.norm(),
        r.operator_scale
    );
}
