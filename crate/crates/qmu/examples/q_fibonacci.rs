//! q,t-Fibonacci sequences: recursion in both directions, the closed
//! q-binomial formulas for all integer n, the reversal identity at base 1/q,
//! the 2x2 determinant, and the Garrett-Ismail evaluation.
//!
//! Run with: cargo run --example q_fibonacci

use qmu::fib::{
    fib_det, fib_s, fib_s_closed, fib_t, fib_t_closed, garrett_ismail_disambiguate,
    garrett_ismail_residual, schur_s, schur_t,
};
use qmu::numerics::cpowi;
use qmu::{Modulus, SummationPolicy, C64};

fn main() {
    let t = C64::new(0.7, 0.3);
    let q = C64::new(0.3, 0.0);

    println!(" n :  S_n(t,q) recursion / closed        T_n(t,q) recursion / closed");
    for n in -4i64..=6 {
        let s = fib_s(n, t, q).unwrap();
        let sc = fib_s_closed(n, t, q);
        let tv = fib_t(n, t, q).unwrap();
        let tc = fib_t_closed(n, t, q);
        println!(
            "{n:>3}:  {:>11.6} / {:>11.6}    {:>11.6} / {:>11.6}",
            s.re, sc.re, tv.re, tc.re
        );
    }

    // reversal: S_n(t, q) = (-t)^{n-1} q^{n(n-1)/2} T_{-n}(t, 1/q)
    let n = 4i64;
    let lhs = fib_s_closed(n, t, q);
    let rhs = cpowi(-t, n - 1) * cpowi(q, n * (n - 1) / 2) * fib_t_closed(-n, t, 1.0 / q);
    println!("reversal residual at n = 4: {:.3e}", (lhs - rhs).norm());

    // determinant S_{n+1} T_{n-1} - S_n T_n = (-t)^n q^{n(n-1)/2}
    let d = fib_det(6, C64::new(0.8, 0.0), C64::new(0.25, 0.0)).unwrap();
    println!(
        "determinant n = 6: {} (closed {}, residual {:.3e})",
        d.determinant,
        d.closed,
        d.residual().norm()
    );

    // Schur's q-Fibonacci numbers and the Garrett-Ismail evaluation
    let qm = Modulus::from_real(0.2).unwrap();
    let policy = SummationPolicy::default();
    println!(
        "Schur S_5(q), T_5(q) at q = 0.2: {}, {}",
        schur_s(5, qm.q()),
        schur_t(5, qm.q())
    );
    let norm = garrett_ismail_disambiguate(&qm, &policy).unwrap();
    println!("Garrett-Ismail normalization selected by the n = 1 H-test: {norm}");
    for n in 0..=5i64 {
        let r = garrett_ismail_residual(n, &qm, norm, &policy).unwrap();
        println!(
            "  n = {n}: relative residual = {:.3e}",
            r.residual.norm() / r.scale
        );
    }
}
