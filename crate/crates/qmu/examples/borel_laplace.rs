//! q-Borel and q-Laplace transformations: the monomial round trip, the
//! divergent solutions as coefficient streams, and the q-Laplace image of the
//! closed-form Borel sum, which reproduces the little mu-function.
//!
//! Run with: cargo run --example borel_laplace

use qmu::formal::{
    borel_sum_f1, divergent_f1, divergent_g1, lb_composite, q_borel, q_laplace, FormalSeries,
};
use qmu::mu::{self, MuPoint, MuRep};
use qmu::numerics::cpowi;
use qmu::{Modulus, SummationPolicy, C64};

fn main() {
    let q = Modulus::from_real(0.2).unwrap();
    let policy = SummationPolicy::default();

    // L_q . B_q fixes convergent series pointwise: monomials go round trip
    let x = C64::new(0.7, 0.0);
    let lambda = C64::new(0.3, 0.0);
    for n in 0..=5usize {
        let v = lb_composite(&FormalSeries::monomial(n), x, lambda, &q, &policy).unwrap();
        println!(
            "L.B(x^{n})(0.7) = {v}  (x^{n} = {}, residual {:.3e})",
            cpowi(x, n as i64),
            (v.value - cpowi(x, n as i64)).norm()
        );
    }

    // divergent solution of the q-Hermite-Weber equation: leading coefficients
    let g1 = divergent_g1(C64::new(0.3, 0.0), &q);
    print!("g1 coefficients:");
    for n in 0..5 {
        print!(" {}", g1.coeff(n));
    }
    println!();

    // the Borel transform of the Ramanujan divergent solution sums to
    // 1/(-y xi)_inf; inside the disc the raw series agrees with the closed form
    let y = C64::new(1.4, 0.0);
    let b_series = q_borel(&divergent_f1(y, &q), &q);
    let b_closed = borel_sum_f1(y, &q, &policy);
    let xi = C64::new(0.15, 0.0);
    let raw = b_series.eval(xi, &policy).unwrap();
    let closed = b_closed(xi).unwrap();
    println!("B(f1)(0.15) series = {raw}, closed = {closed}");

    // pushing the closed Borel sum through the q-Laplace transform along the
    // ray lambda = -x/y lands on the little mu-function
    let (x, y) = (C64::new(0.5, 0.0), C64::new(2.0, 0.0));
    let img = q_laplace(borel_sum_f1(y, &q, &policy), x, -x / y, &q, &policy).unwrap();
    let iq = C64::new(0.0, 1.0) * q.q_pow(C64::new(-0.125, 0.0));
    let lmu = mu::little_mu(&MuPoint::new(x, y, &q).unwrap(), MuRep::Definition, &policy).unwrap();
    println!("i q^(-1/8) L_q(B f1)(x; -x/y) = {}", (img * iq).value);
    println!("little mu (definition)        = {}", lmu.value);
}
