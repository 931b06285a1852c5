//! The little mu-function: agreement of its four representations, the
//! q-difference relation and symmetries, connection formulas, the y -> 1
//! limit, and the degeneration of the generalized mu-function onto it.
//!
//! Run with: cargo run --example little_mu

use qmu::mu::{
    connection_residuals, degeneration_residual, limit_y1_residual, little_mu, MuPoint, MuRep,
};
use qmu::{Modulus, SummationPolicy, C64};

fn main() {
    let q = Modulus::from_real(0.25).unwrap();
    let policy = SummationPolicy::default();
    let p = MuPoint::new(C64::new(0.5, 0.2), C64::new(2.0, 0.0), &q).unwrap();

    let base = little_mu(&p, MuRep::Definition, &policy).unwrap();
    println!("lmu definition  = {base}");
    for rep in [MuRep::Psi02, MuRep::Vwp, MuRep::BorelImage] {
        let v = little_mu(&p, rep, &policy).unwrap();
        println!(
            "lmu {rep:?}: residual vs definition = {:.3e}",
            (v.value - base.value).norm()
        );
    }

    // lmu(x,y) = lmu(qx,y) - xy lmu(x/q,y), and the two symmetries
    let at = |x: C64, y: C64| {
        little_mu(&MuPoint::new(x, y, &q).unwrap(), MuRep::Definition, &policy)
            .unwrap()
            .value
    };
    let (x, y) = (p.x, p.y);
    println!(
        "q-difference residual   = {:.3e}",
        (at(x, y) - at(q.q() * x, y) + x * y * at(x / q.q(), y)).norm()
    );
    println!(
        "swap symmetry residual  = {:.3e}",
        (at(x, y) - at(y, x)).norm()
    );
    println!(
        "shift symmetry residual = {:.3e}",
        (at(x, y) - at(x / q.q(), q.q() * y)).norm()
    );

    // connection formulas
    let r = connection_residuals(&p, C64::new(0.4, 0.0), C64::new(1.4, 0.3), &policy).unwrap();
    println!(
        "three-term connection residual    = {:.3e}",
        r.three_term_residual.norm()
    );
    println!(
        "inhomogeneous connection residual = {:.3e}",
        r.inhomogeneous_residual.norm()
    );

    // lim_{y->1} theta(y) lmu(x, y), by symmetric Richardson extrapolation
    let (resid, scale) = limit_y1_residual(C64::new(0.5, 0.0), &q, &policy).unwrap();
    println!(
        "y -> 1 limit residual             = {:.3e} (relative {:.3e})",
        resid.norm(),
        resid.norm() / scale
    );

    // the generalized mu-function at a = q^m collapses onto lmu as m grows
    for m in [4u32, 8, 12] {
        let (resid, scale) = degeneration_residual(&p, m, &policy).unwrap();
        println!(
            "degeneration gap at a = q^{m:<2}       = {:.3e}",
            resid.norm() / scale
        );
    }
}
