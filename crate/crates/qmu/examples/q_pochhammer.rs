//! q-shifted factorials at every index type: nonnegative, negative,
//! fractional, and infinite, plus the splice identity and q-binomials.
//!
//! Run with: cargo run --example q_pochhammer

use qmu::numerics::cpowi;
use qmu::qcore::{gaussian_binom, qbinom, qpoch, qpoch_multi, PochIndex};
use qmu::{Modulus, SummationPolicy, C64};

fn main() {
    let q = Modulus::from_real(0.2).unwrap();
    let policy = SummationPolicy::default();
    let x = C64::new(0.4, 0.25);

    for idx in [
        PochIndex::Int(0),
        PochIndex::Int(3),
        PochIndex::Int(-2),
        PochIndex::Frac(C64::new(0.5, 0.0)),
        PochIndex::Infinite,
    ] {
        let v = qpoch(x, &q, idx, &policy).unwrap();
        println!("(x; q)_{idx:?} = {v}");
    }

    // (x)_{m+n} = (x)_m (x q^m)_n
    let (m, n) = (3i64, -2i64);
    let lhs = qpoch(x, &q, PochIndex::Int(m + n), &policy).unwrap();
    let rhs = qpoch(x, &q, PochIndex::Int(m), &policy).unwrap()
        * qpoch(x * cpowi(q.q(), m), &q, PochIndex::Int(n), &policy).unwrap();
    println!(
        "splice residual (m=3, n=-2)   = {:.3e}",
        (lhs.value - rhs.value).norm()
    );

    // multi-argument product
    let multi = qpoch_multi(
        &[C64::new(0.2, 0.0), C64::new(0.3, 0.0)],
        &q,
        PochIndex::Infinite,
        &policy,
    )
    .unwrap();
    println!("(0.2, 0.3; q)_inf             = {multi}");

    // q-binomials: the fractional route against the finite Gaussian product
    let q3 = Modulus::from_real(0.3).unwrap();
    let frac = qbinom(C64::new(4.0, 0.0), C64::new(2.0, 0.0), &q3, &policy).unwrap();
    let finite = gaussian_binom(4, 2, C64::new(0.3, 0.0));
    println!("binom(4,2)_0.3 fractional     = {frac}");
    println!("binom(4,2)_0.3 finite product = {finite}");
    println!(
        "1 + q + 2q^2 + q^3 + q^4      = {}",
        1.0 + 0.3 + 2.0 * 0.09 + 0.027 + 0.0081
    );
}
