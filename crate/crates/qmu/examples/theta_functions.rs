//! Jacobi theta function: product vs bilateral-sum representation, the
//! quasi-periodicity relations, lattice zeros, and an explicit modulus swap.
//!
//! Run with: cargo run --example theta_functions

use qmu::qcore::{theta, ThetaRep};
use qmu::{Modulus, SummationPolicy, C64};

fn main() {
    let q = Modulus::from_real(0.2).unwrap();
    let policy = SummationPolicy::default();
    let x = C64::new(0.7, 0.0);

    let prod = theta(x, &q, ThetaRep::Product, &policy).unwrap();
    let sum = theta(x, &q, ThetaRep::Sum, &policy).unwrap();
    println!("theta(0.7; 0.2) product rep = {prod}");
    println!("theta(0.7; 0.2) sum rep     = {sum}");
    println!(
        "triple product agreement    = {:.3e} (combined err {:.3e})",
        (prod.value - sum.value).norm(),
        prod.err_or_zero() + sum.err_or_zero()
    );

    // theta(x) + x theta(xq) = 0 and theta(x) + x theta(1/x) = 0
    let shift = theta(x * q.q(), &q, ThetaRep::Product, &policy).unwrap();
    let inv = theta(1.0 / x, &q, ThetaRep::Product, &policy).unwrap();
    println!(
        "shift relation residual     = {:.3e}",
        (prod.value + x * shift.value).norm()
    );
    println!(
        "inversion relation residual = {:.3e}",
        (prod.value + x * inv.value).norm()
    );

    // exact zero on the q-lattice
    let lattice = theta(q.q_powi(3), &q, ThetaRep::Product, &policy).unwrap();
    println!("theta(q^3; q)               = {lattice} (lattice zero)");

    // the modulus argument is explicit, so theta(.; q^5) is a one-liner
    let q5 = q.pow_int(5);
    let v = theta(C64::new(0.7, 0.0), &q5, ThetaRep::Product, &policy).unwrap();
    println!("theta(0.7; q^5)             = {v}");
}
