//! The lattice family M_n(x; q) = -i q^{1/8} lmu(x, q^{n-1}/x): symmetries,
//! the closed theta-quotient forms for M_0 and M_1, the Fibonacci combination
//! for general n, the two-point kernel evaluation, and the pseudo-constant
//! G M_1 + H M_0 = 1.
//!
//! Run with: cargo run --example m_function

use qmu::mu::{gm1_plus_hm0, m_function, m_two_point_residual, MRep};
use qmu::{Modulus, SummationPolicy, C64};

fn main() {
    let q = Modulus::from_real(0.2).unwrap();
    let policy = SummationPolicy::default();
    let x = C64::new(0.7, 0.0);

    for n in [0i64, 1] {
        let series = m_function(n, x, &q, MRep::Series, &policy).unwrap();
        let closed = m_function(n, x, &q, MRep::ThetaClosed, &policy).unwrap();
        println!("M_{n}(0.7) series = {series}");
        println!(
            "M_{n}(0.7) theta-quotient closed form residual = {:.3e}",
            (series.value - closed.value).norm()
        );
    }

    // M_n(x) = M_n(1/x) = M_n(xq)
    let z = C64::new(0.6, 0.2);
    let base = m_function(2, z, &q, MRep::Series, &policy).unwrap().value;
    let inv = m_function(2, 1.0 / z, &q, MRep::Series, &policy)
        .unwrap()
        .value;
    let shift = m_function(2, z * q.q(), &q, MRep::Series, &policy)
        .unwrap()
        .value;
    println!(
        "M_2 inversion symmetry residual = {:.3e}",
        (base - inv).norm()
    );
    println!(
        "M_2 shift symmetry residual     = {:.3e}",
        (base - shift).norm()
    );

    // every representation of M_3 at one point
    let w = C64::new(0.75, 0.1);
    let series = m_function(3, w, &q, MRep::Series, &policy).unwrap().value;
    for rep in [MRep::Psi02, MRep::Vwp, MRep::ThetaClosed] {
        let v = m_function(3, w, &q, rep, &policy).unwrap().value;
        println!("M_3 {rep:?} residual = {:.3e}", (v - series).norm());
    }

    // two-point evaluation of the entire kernel at n = 0, 1, 2
    for n in 0i64..=2 {
        let (resid, scale) =
            m_two_point_residual(n, C64::new(0.5, 0.0), C64::new(1.3, 0.0), &q, &policy).unwrap();
        println!(
            "two-point kernel display n={n}: relative residual = {:.3e}",
            resid.norm() / scale
        );
    }

    // G M_1(x) + H M_0(x) is independent of x and equals 1
    for x in [C64::new(0.7, 0.0), C64::new(1.4, 0.3)] {
        let v = gm1_plus_hm0(x, &q, &policy).unwrap();
        println!("G M_1 + H M_0 at x = {x}: {v}");
    }
}
