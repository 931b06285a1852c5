//! Rogers-Ramanujan series and products, the continued fraction, the quadratic
//! eta-quotient relation, and the fifth-root evaluations of M_0 and M_1.
//!
//! Run with: cargo run --example rogers_ramanujan

use qmu::mu::{m_function, MRep};
use qmu::qcore::{qpoch, PochIndex};
use qmu::rr::{continued_fraction_convergents, rr_g, rr_h, rr_quadratic, rr_r, GhRep, RRep};
use qmu::{Modulus, SummationPolicy, C64};

fn main() {
    let q = Modulus::from_real(0.2).unwrap();
    let policy = SummationPolicy::default();

    let g_sum = rr_g(&q, GhRep::Sum, &policy).unwrap();
    let g_prod = rr_g(&q, GhRep::Product, &policy).unwrap();
    let h_sum = rr_h(&q, GhRep::Sum, &policy).unwrap();
    let h_prod = rr_h(&q, GhRep::Product, &policy).unwrap();
    println!("G(0.2) sum = {g_sum}");
    println!(
        "G(0.2) product residual = {:.3e}",
        (g_sum.value - g_prod.value).norm()
    );
    println!("H(0.2) sum = {h_sum}");
    println!(
        "H(0.2) product residual = {:.3e}",
        (h_sum.value - h_prod.value).norm()
    );

    let ratio = rr_r(&q, RRep::Ratio, &policy).unwrap();
    let cf = rr_r(&q, RRep::ContinuedFraction, &policy).unwrap();
    println!("R(0.2) ratio rep = {ratio}");
    println!(
        "R(0.2) continued fraction residual = {:.3e}",
        (ratio.value - cf.value).norm()
    );

    // successive convergents alternate around the limit
    let fifth = q.q_pow(C64::new(0.2, 0.0));
    print!("convergent offsets:");
    for c in continued_fraction_convergents(&q, 6) {
        print!(" {:+.2e}", (fifth * c - ratio.value).re);
    }
    println!();

    // eta(5 tau)/eta(tau/5) (1/R - 1 - R) = 1, and its series form
    let quad = rr_quadratic(&q, &policy).unwrap();
    println!("quadratic relation, eta form    = {}", quad.eta_form);
    println!("quadratic relation, series form = {}", quad.series_form);

    // M_0 and M_1 at x = q^{1/5} collapse onto eta-quotient combinations of G, H
    let root5 = q.root(5).unwrap();
    let fifth_root = root5.q();
    let pref = qpoch(q.q(), &q, PochIndex::Infinite, &policy)
        .unwrap()
        .value
        / qpoch(fifth_root, &root5, PochIndex::Infinite, &policy)
            .unwrap()
            .value;
    let m0 = m_function(0, fifth_root, &q, MRep::Series, &policy)
        .unwrap()
        .value;
    let m1 = m_function(1, fifth_root, &q, MRep::Series, &policy)
        .unwrap()
        .value;
    let expect0 = -pref * (fifth_root * g_sum.value + fifth_root * fifth_root * h_sum.value);
    let expect1 = pref * g_sum.value;
    println!("M_0(q^(1/5)) residual = {:.3e}", (m0 - expect0).norm());
    println!("M_1(q^(1/5)) residual = {:.3e}", (m1 - expect1).norm());
}
