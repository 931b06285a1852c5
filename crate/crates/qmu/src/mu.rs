//! The little mu-function in all of its representations, the generalized
//! mu-function it degenerates from, the lattice family M_n, and the
//! connection, contiguous and Wronskian identities they satisfy.
//!
//! The little mu-function is
//!
//! ```text
//! lmu(x, y) = i q^{-1/8} / ((x, q)_inf theta(qy)) * 1psi2(x; 0,0; q, 1/y)
//! ```
//!
//! for x, y off the q-lattice. It is symmetric in (x, y), satisfies
//! `lmu(x,y) = lmu(qx,y) - xy lmu(x/q,y)` (the Ramanujan equation in x), and
//! is the q-Borel sum of the divergent solution of that equation; the
//! `BorelImage` representation evaluates it through the q-Laplace transform
//! of the closed-form Borel sum `1/(-y xi)_inf`.

use crate::error::{QError, Result};
use crate::fib;
use crate::formal;
use crate::hyper::{self, HyperSpec};
use crate::numerics::{
    cpow, cpowi, near_lattice, sum_bilateral, CVal, Modulus, SummationPolicy, C64, LATTICE_DELTA,
};
use crate::qcore::{self, PochIndex, ThetaRep};
use crate::rr;

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

/// i q^{-1/8} on the principal branch.
pub(crate) fn i_q_eighth(q: &Modulus) -> C64 {
    C64::new(0.0, 1.0) * q.q_pow(C64::new(-0.125, 0.0))
}

fn theta_prod(x: C64, q: &Modulus, policy: &SummationPolicy) -> Result<C64> {
    Ok(qcore::theta(x, q, ThetaRep::Product, policy)?.value)
}

/// Nonzero theta value for a denominator; a lattice argument is a pole.
fn theta_denom(x: C64, q: &Modulus, policy: &SummationPolicy, what: &str) -> Result<C64> {
    if near_lattice(x, q, LATTICE_DELTA).is_some() {
        return Err(QError::PoleHit(format!("theta({what}) vanishes")));
    }
    theta_prod(x, q, policy)
}

/// An evaluation point with both coordinates off the q-lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MuPoint {
    pub x: C64,
    pub y: C64,
    pub q: Modulus,
}

impl MuPoint {
    pub fn new(x: C64, y: C64, q: &Modulus) -> Result<Self> {
        if let Some(n) = near_lattice(x, q, LATTICE_DELTA) {
            return Err(QError::PoleHit(format!("x is within 1e-10 of q^{n}")));
        }
        if let Some(n) = near_lattice(y, q, LATTICE_DELTA) {
            return Err(QError::PoleHit(format!("y is within 1e-10 of q^{n}")));
        }
        if x == C64::new(0.0, 0.0) || y == C64::new(0.0, 0.0) {
            return Err(QError::Domain(
                "mu-point coordinates must be nonzero".into(),
            ));
        }
        Ok(MuPoint { x, y, q: *q })
    }

    fn shifted(&self, x: C64, y: C64) -> Result<Self> {
        MuPoint::new(x, y, &self.q)
    }
}

/// Representation used to evaluate [`little_mu`]. All four evaluate the same
/// analytic function where they are defined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MuRep {
    /// The defining 1psi2 series.
    Definition,
    /// The 0psi2 form with prefactor 1/((qy, q)_inf theta(x)).
    Psi02,
    /// The very-well-poised bilateral sum. Needs the extra exclusion
    /// x/y off the q-lattice; its convergence window is the narrowest.
    Vwp,
    /// q-Laplace transform of the closed-form q-Borel sum of the divergent
    /// solution, along the ray lambda = -x/y.
    BorelImage,
}

pub fn little_mu(p: &MuPoint, rep: MuRep, policy: &SummationPolicy) -> Result<CVal> {
    let q = &p.q;
    let (x, y) = (p.x, p.y);
    let pref = i_q_eighth(q);
    match rep {
        MuRep::Definition => {
            let series = hyper::psi(
                &HyperSpec::new(vec![x], vec![C64::new(0.0, 0.0); 2], *q, one() / y),
                policy,
            )?;
            let den = qcore::qpoch_multi(&[x, q.q()], q, PochIndex::Infinite, policy)?.value
                * theta_denom(q.q() * y, q, policy, "qy")?;
            Ok(series * (pref / den))
        }
        MuRep::Psi02 => {
            let series = hyper::psi(
                &HyperSpec::new(vec![], vec![one() / y, C64::new(0.0, 0.0)], *q, x / y),
                policy,
            )?;
            let den = qcore::qpoch_multi(&[q.q() * y, q.q()], q, PochIndex::Infinite, policy)?
                .value
                * theta_denom(x, q, policy, "x")?;
            Ok(series * (pref / den))
        }
        MuRep::Vwp => {
            let qv = q.q();
            if near_lattice(x / (y * qv), q, LATTICE_DELTA).is_some() {
                return Err(QError::PoleHit(
                    "theta(x/(yq)) vanishes (x/y on the lattice)".into(),
                ));
            }
            let z = -x * x / (y * y * y * qv);
            let weight_base = x / y;
            // u_n = (x)_n / (1/y)_n * q^{(5/2)n(n-1)} z^n, updated by ratios
            let mut up_u = one();
            let mut up_n = 0i64;
            let mut up_first = true;
            let mut dn_u = one();
            let mut dn_n = 0i64;
            let series = sum_bilateral(
                |n| {
                    let u = if n >= 0 {
                        if up_first {
                            up_first = false;
                        } else {
                            let den = 1.0 - cpowi(qv, up_n) / y;
                            if den.norm() < LATTICE_DELTA {
                                return Err(QError::PoleHit("(1/y)_n factor vanished".into()));
                            }
                            up_u *= (1.0 - x * cpowi(qv, up_n)) / den * z * cpowi(qv, 5 * up_n);
                            up_n += 1;
                        }
                        up_u
                    } else {
                        let den = 1.0 - x * cpowi(qv, dn_n - 1);
                        if den.norm() < LATTICE_DELTA {
                            return Err(QError::PoleHit("(x)_n factor vanished".into()));
                        }
                        dn_u *=
                            (1.0 - cpowi(qv, dn_n - 1) / y) / den / z * cpowi(qv, -5 * (dn_n - 1));
                        dn_n -= 1;
                        dn_u
                    };
                    Ok((1.0 - weight_base * cpowi(qv, 2 * n - 1)) * u)
                },
                policy,
            )?;
            let den = qcore::qpoch_multi(&[x, y * qv, qv], q, PochIndex::Infinite, policy)?.value
                * theta_prod(x / (y * qv), q, policy)?;
            Ok(series * (pref / den))
        }
        MuRep::BorelImage => {
            let borel = formal::borel_sum_f1(y, q, policy);
            let v = formal::q_laplace(borel, x, -x / y, q, policy)?;
            Ok(v * pref)
        }
    }
}

/// The generalized mu-function at a = q^m (nonnegative integer exponent, so
/// the (xy)^{m/2} prefactor is branch-safe through the principal power):
///
/// ```text
/// gmu(x, y; q^m) = i q^{-1/8} (xy)^{m/2} (ax)_inf / ((x, q)_inf theta(y))
///                  * 1psi2(x; 0, ax; q, q/y)
/// ```
pub fn generalized_mu(p: &MuPoint, m: u32, policy: &SummationPolicy) -> Result<CVal> {
    let q = &p.q;
    let (x, y) = (p.x, p.y);
    let a = q.q_powi(m as i64);
    let series = hyper::psi(
        &HyperSpec::new(vec![x], vec![C64::new(0.0, 0.0), a * x], *q, q.q() / y),
        policy,
    )?;
    let num = i_q_eighth(q)
        * cpow(x * y, C64::new(m as f64 / 2.0, 0.0))
        * qcore::qpoch(a * x, q, PochIndex::Infinite, policy)?.value;
    let den = qcore::qpoch_multi(&[x, q.q()], q, PochIndex::Infinite, policy)?.value
        * theta_denom(y, q, policy, "y")?;
    Ok(series * (num / den))
}

/// Residual of the degeneration of the generalized mu-function onto the
/// little one: `(xy)^{-m/2} q^{-m/2} gmu(qx, y; q^m) - lmu(x, y)`. The gap
/// scales like q^m.
pub fn degeneration_residual(p: &MuPoint, m: u32, policy: &SummationPolicy) -> Result<(C64, f64)> {
    let q = &p.q;
    let shifted = p.shifted(q.q() * p.x, p.y)?;
    let g = generalized_mu(&shifted, m, policy)?.value;
    let scaled = g
        * cpow(p.x * p.y, C64::new(-(m as f64) / 2.0, 0.0))
        * q.q_pow(C64::new(-(m as f64) / 2.0, 0.0));
    let l = little_mu(p, MuRep::Definition, policy)?.value;
    Ok((scaled - l, l.norm().max(scaled.norm())))
}

/// Right-hand side of the y -> 1 limit: i q^{-1/8} 0phi1(-;0;q,xq^2)/theta(qx),
/// which is i q^{-1/8} times the convergent Ramanujan solution at x.
pub fn little_mu_limit_rhs(x: C64, q: &Modulus, policy: &SummationPolicy) -> Result<CVal> {
    let f0 = hyper::ramanujan_entire(x, q, policy)?;
    Ok(f0 * i_q_eighth(q))
}

/// Residual of lim_{y->1} theta(y) lmu(x,y) against [`little_mu_limit_rhs`],
/// certified by symmetrized two-step Richardson extrapolation at
/// h in {1e-3, 5e-4}: the symmetric average kills the O(h) term and the
/// Richardson step the O(h^2) one.
pub fn limit_y1_residual(x: C64, q: &Modulus, policy: &SummationPolicy) -> Result<(C64, f64)> {
    let sample = |h: f64| -> Result<C64> {
        let mut acc = C64::new(0.0, 0.0);
        for s in [1.0, -1.0] {
            let y = C64::new(1.0 + s * h, 0.0);
            let p = MuPoint::new(x, y, q)?;
            let v = little_mu(&p, MuRep::Definition, policy)?.value;
            acc += theta_prod(y, q, policy)? * v;
        }
        Ok(acc / 2.0)
    };
    let s1 = sample(1e-3)?;
    let s2 = sample(5e-4)?;
    let extrapolated = (s2 * 4.0 - s1) / 3.0;
    let rhs = little_mu_limit_rhs(x, q, policy)?.value;
    Ok((extrapolated - rhs, rhs.norm()))
}

/// Residuals of the two connection formulas: the three-term relation over the
/// pair (c1, c2) and the two-term-plus-inhomogeneous relation at c = c1.
#[derive(Debug, Clone, Copy)]
pub struct ConnectionReport {
    pub three_term_residual: C64,
    pub three_term_scale: f64,
    pub inhomogeneous_residual: C64,
    pub inhomogeneous_scale: f64,
}

pub fn connection_residuals(
    p: &MuPoint,
    c1: C64,
    c2: C64,
    policy: &SummationPolicy,
) -> Result<ConnectionReport> {
    let q = &p.q;
    let qv = q.q();
    let (x, y) = (p.x, p.y);
    let th = |w: C64| theta_prod(w, q, policy);
    let thd = |w: C64, what: &str| theta_denom(w, q, policy, what);

    let lmu = |xx: C64, yy: C64| -> Result<C64> {
        Ok(little_mu(&p.shifted(xx, yy)?, MuRep::Definition, policy)?.value)
    };

    let base = lmu(x, y)?;

    // three-term relation
    let denom_th = thd(x, "x")? * thd(y, "y")?;
    let a1 = th(x / c1)? * th(c1 * y)? * th(c2 * y / x)? * th(c2)?
        / (denom_th * thd(c1 * c2 * y / x, "c1 c2 y/x")? * thd(c2 / c1, "c2/c1")?);
    let a2 = th(x / c2)? * th(c2 * y)? * th(c1 * y / x)? * th(c1)?
        / (denom_th * thd(c2 * c1 * y / x, "c1 c2 y/x")? * thd(c1 / c2, "c1/c2")?);
    let t1 = a1 * lmu(x / c1, y * c1)?;
    let t2 = a2 * lmu(x / c2, y * c2)?;
    let three_term_residual = base - t1 - t2;
    let three_term_scale = base.norm().max(t1.norm()).max(t2.norm());

    // inhomogeneous relation at c = c1:
    // lmu(x,y) = lmu(x/c, yc) - i q^{-1/8} theta(c) theta(yc/x)
    //            / (theta(xq) theta(yq) theta(c/x) theta(yc)) 0phi1(-;0;q,xyq^2)
    let c = c1;
    let shifted = lmu(x / c, y * c)?;
    let inhom = i_q_eighth(q) * th(c)? * th(y * c / x)?
        / (thd(x * qv, "xq")? * thd(y * qv, "yq")? * thd(c / x, "c/x")? * thd(y * c, "yc")?)
        * hyper::phi01(x * y * qv * qv, q, policy)?.value;
    let inhomogeneous_residual = base - (shifted - inhom);
    let inhomogeneous_scale = base.norm().max(shifted.norm()).max(inhom.norm());

    Ok(ConnectionReport {
        three_term_residual,
        three_term_scale,
        inhomogeneous_residual,
        inhomogeneous_scale,
    })
}

/// Residual of the contiguous relation
/// `lmu(x q^{n-1}, y) = lmu(x/q, y) T_{n-1}(xy, q) + lmu(x, y) S_n(xy, q)`.
pub fn contiguous(p: &MuPoint, n: i64, policy: &SummationPolicy) -> Result<(C64, f64)> {
    let q = &p.q;
    let (x, y) = (p.x, p.y);
    let lhs = little_mu(
        &p.shifted(x * q.q_powi(n - 1), y)?,
        MuRep::Definition,
        policy,
    )?
    .value;
    let t = little_mu(&p.shifted(x / q.q(), y)?, MuRep::Definition, policy)?.value
        * fib::fib_t(n - 1, x * y, q.q())?;
    let s = little_mu(p, MuRep::Definition, policy)?.value * fib::fib_s(n, x * y, q.q())?;
    Ok((lhs - t - s, lhs.norm().max(t.norm()).max(s.norm())))
}

/// Representation used to evaluate [`m_function`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MRep {
    /// -i q^{1/8} lmu(x, q^{n-1}/x) through the defining series.
    Series,
    /// The 0psi2 representation (the little-mu Psi02 form at y = q^{n-1}/x).
    Psi02,
    /// The very-well-poised representation at the same point.
    Vwp,
    /// The closed theta-quotient combination
    /// M_n = M0_closed T_{n-1}(q) + M1_closed S_n(q), with theta(.; q^5)
    /// evaluated at modulus q^5 and Schur's q-Fibonacci numbers.
    ThetaClosed,
}

/// Closed theta-quotient form of M_0.
pub fn m_zero_closed(x: C64, q: &Modulus, policy: &SummationPolicy) -> Result<C64> {
    let qv = q.q();
    let q5 = q.pow_int(5);
    let gh =
        rr::rr_g(q, rr::GhRep::Sum, policy)?.value * rr::rr_h(q, rr::GhRep::Sum, policy)?.value;
    let x5 = cpowi(x, 5);
    let th5 =
        |w: C64| -> Result<C64> { Ok(qcore::theta(w, &q5, ThetaRep::Product, policy)?.value) };
    let th = |w: C64, what: &str| theta_denom(w, q, policy, what);
    Ok(gh
        * (th5(x5 * cpowi(qv, 2))? / (th(x * qv, "xq")? * th(x * x, "x^2")?)
            + th5(x5 * cpowi(qv, 3))? / (th(x, "x")? * th(x * x * qv, "x^2 q")?)))
}

/// Closed theta-quotient form of M_1.
pub fn m_one_closed(x: C64, q: &Modulus, policy: &SummationPolicy) -> Result<C64> {
    let qv = q.q();
    let q5 = q.pow_int(5);
    let gh =
        rr::rr_g(q, rr::GhRep::Sum, policy)?.value * rr::rr_h(q, rr::GhRep::Sum, policy)?.value;
    let x5 = cpowi(x, 5);
    let th5 =
        |w: C64| -> Result<C64> { Ok(qcore::theta(w, &q5, ThetaRep::Product, policy)?.value) };
    let th = |w: C64, what: &str| theta_denom(w, q, policy, what);
    Ok(gh
        * (th5(x5 * qv)? / (th(x, "x")? * th(x * x, "x^2")?)
            + th5(x5 * cpowi(qv, 4))? / (th(x * qv, "xq")? * th(x * x * qv, "x^2 q")?)))
}

/// M_n(x; q) = -i q^{1/8} lmu(x, q^{n-1}/x).
pub fn m_function(
    n: i64,
    x: C64,
    q: &Modulus,
    rep: MRep,
    policy: &SummationPolicy,
) -> Result<CVal> {
    match rep {
        MRep::Series | MRep::Psi02 | MRep::Vwp => {
            let y = q.q_powi(n - 1) / x;
            let p = MuPoint::new(x, y, q)?;
            let mu_rep = match rep {
                MRep::Series => MuRep::Definition,
                MRep::Psi02 => MuRep::Psi02,
                _ => MuRep::Vwp,
            };
            let v = little_mu(&p, mu_rep, policy)?;
            Ok(v * (-C64::new(0.0, 1.0) * q.q_pow(C64::new(0.125, 0.0))))
        }
        MRep::ThetaClosed => {
            let m0 = m_zero_closed(x, q, policy)?;
            let m1 = m_one_closed(x, q, policy)?;
            let qv = q.q();
            Ok(CVal::new(
                m0 * fib::schur_t(n - 1, qv) + m1 * fib::schur_s(n, qv),
            ))
        }
    }
}

/// Residual of the two-point evaluation of the entire kernel:
/// `0phi1(-;0;q,q^{n+1}) = (-1)^n q^{-n(n-1)/2} theta(x)^2 theta(y)^2
///  / (y theta(x/y) theta(xy)) * (M_n(x) - M_n(y))`.
pub fn m_two_point_residual(
    n: i64,
    x: C64,
    y: C64,
    q: &Modulus,
    policy: &SummationPolicy,
) -> Result<(C64, f64)> {
    let lhs = hyper::phi01(q.q_powi(n + 1), q, policy)?.value;
    let thx = theta_denom(x, q, policy, "x")?;
    let thy = theta_denom(y, q, policy, "y")?;
    let pref = cpowi(-one(), n) * cpowi(q.q(), -(n * (n - 1) / 2)) * thx * thx * thy * thy
        / (y * theta_denom(x / y, q, policy, "x/y")? * theta_denom(x * y, q, policy, "xy")?);
    let mx = m_function(n, x, q, MRep::Series, policy)?.value;
    let my = m_function(n, y, q, MRep::Series, policy)?.value;
    let rhs = pref * (mx - my);
    // the right side is a scaled near-cancellation, so its parts set the scale
    let scale = lhs
        .norm()
        .max(rhs.norm())
        .max((pref * mx).norm())
        .max((pref * my).norm());
    Ok((lhs - rhs, scale))
}

/// One residual together with the magnitude scale of the terms entering it.
#[derive(Debug, Clone, Copy)]
pub struct ResidualPair {
    pub residual: C64,
    pub scale: f64,
}

impl ResidualPair {
    fn new(residual: C64, scale: f64) -> Self {
        ResidualPair {
            residual,
            scale: scale.max(1e-300),
        }
    }

    pub fn rel(&self) -> f64 {
        self.residual.norm() / self.scale
    }
}

/// Residuals of the Wronskian relations: the general (m, n) pair, their
/// m = n+1 specializations (with closed right-hand sides), and the n = 0 pair.
#[derive(Debug, Clone, Copy)]
pub struct WronskianReport {
    /// General (m,n) determinant against the theta-quotient right side.
    pub general_theta: ResidualPair,
    /// General (m,n) kernel-paired relation with right side i q^{-1/8} (S T - S T).
    pub general_kernel: ResidualPair,
    /// m = n+1: determinant = (-xy)^n q^{n(n-1)/2 - 1/4} theta-quotient.
    pub shifted_theta: ResidualPair,
    /// m = n+1: kernel pair sums to i q^{-1/8}.
    pub shifted_kernel: ResidualPair,
    /// n = 0 determinant closed form.
    pub base_theta: ResidualPair,
    /// n = 0 kernel pair: phi01(xyq) lmu(x,y) + xy phi01(xyq^2) lmu(x/q,y) = i q^{-1/8}.
    pub base_kernel: ResidualPair,
}

pub fn wronskians(
    p: &MuPoint,
    c: C64,
    m: i64,
    n: i64,
    policy: &SummationPolicy,
) -> Result<WronskianReport> {
    let q = &p.q;
    let qv = q.q();
    let (x, y) = (p.x, p.y);
    let iq = i_q_eighth(q);
    let t = x * y;

    let lmu = |xx: C64, yy: C64| -> Result<C64> {
        Ok(little_mu(&p.shifted(xx, yy)?, MuRep::Definition, policy)?.value)
    };
    let p01 = |w: C64| -> Result<C64> { Ok(hyper::phi01(w, q, policy)?.value) };

    let theta_quotient = theta_prod(c, q, policy)? * theta_prod(y * c / x, q, policy)?
        / (theta_denom(c / x, q, policy, "c/x")?
            * theta_denom(y * c, q, policy, "yc")?
            * theta_denom(x, q, policy, "x")?
            * theta_denom(y, q, policy, "y")?);

    let st = |a: i64, b: i64| -> Result<C64> {
        Ok(fib::fib_s(a, t, qv)? * fib::fib_t(b - 1, t, qv)?
            - fib::fib_s(b, t, qv)? * fib::fib_t(a - 1, t, qv)?)
    };

    // general (m, n)
    let l_nc = lmu(x / c * q.q_powi(n - 1), y * c)?;
    let l_mc = lmu(x / c * q.q_powi(m - 1), y * c)?;
    let l_n = lmu(x * q.q_powi(n - 1), y)?;
    let l_m = lmu(x * q.q_powi(m - 1), y)?;
    let lhs = l_nc * l_m - l_mc * l_n;
    let rhs = q.q_pow(C64::new(-0.25, 0.0)) * theta_quotient * st(m, n)?;
    let general_theta = ResidualPair::new(
        lhs - rhs,
        (l_nc * l_m).norm().max((l_mc * l_n).norm()).max(rhs.norm()),
    );

    let w_n = cpowi(-t, n) * cpowi(qv, n * (n - 1) / 2) * p01(t * q.q_powi(n + 1))?;
    let w_m = cpowi(-t, m) * cpowi(qv, m * (m - 1) / 2) * p01(t * q.q_powi(m + 1))?;
    let lhs = w_n * l_m - w_m * l_n;
    let rhs = iq * st(m, n)?;
    let general_kernel = ResidualPair::new(
        lhs - rhs,
        (w_n * l_m).norm().max((w_m * l_n).norm()).max(rhs.norm()),
    );

    // m = n + 1 specializations at this n
    let l_n1c = lmu(x / c * q.q_powi(n), y * c)?;
    let l_n1 = lmu(x * q.q_powi(n), y)?;
    let lhs = l_nc * l_n1 - l_n1c * l_n;
    let rhs =
        cpowi(-t, n) * cpowi(qv, n * (n - 1) / 2) * q.q_pow(C64::new(-0.25, 0.0)) * theta_quotient;
    let shifted_theta = ResidualPair::new(
        lhs - rhs,
        (l_nc * l_n1)
            .norm()
            .max((l_n1c * l_n).norm())
            .max(rhs.norm()),
    );

    let a = p01(t * q.q_powi(n + 1))? * l_n1;
    let b = t * q.q_powi(n) * p01(t * q.q_powi(n + 2))? * l_n;
    let shifted_kernel = ResidualPair::new(a + b - iq, a.norm().max(b.norm()).max(iq.norm()));

    // n = 0 pair
    let l0c = lmu(x / (c * qv), y * c)?;
    let l0 = lmu(x, y)?;
    let l1c = lmu(x / c, y * c)?;
    let l1 = lmu(x / qv, y)?;
    let lhs = l0c * l0 - l1c * l1;
    let rhs = q.q_pow(C64::new(-0.25, 0.0)) * theta_quotient;
    let base_theta = ResidualPair::new(
        lhs - rhs,
        (l0c * l0).norm().max((l1c * l1).norm()).max(rhs.norm()),
    );

    let a = p01(t * qv)? * l0;
    let b = t * p01(t * qv * qv)? * l1;
    let base_kernel = ResidualPair::new(a + b - iq, a.norm().max(b.norm()).max(iq.norm()));

    Ok(WronskianReport {
        general_theta,
        general_kernel,
        shifted_theta,
        shifted_kernel,
        base_theta,
        base_kernel,
    })
}

/// G(q) M_1(x) + H(q) M_0(x), the x-independent pseudo-constant equal to 1.
pub fn gm1_plus_hm0(x: C64, q: &Modulus, policy: &SummationPolicy) -> Result<C64> {
    let g = rr::rr_g(q, rr::GhRep::Sum, policy)?.value;
    let h = rr::rr_h(q, rr::GhRep::Sum, policy)?.value;
    let m1 = m_function(1, x, q, MRep::Series, policy)?.value;
    let m0 = m_function(0, x, q, MRep::Series, policy)?.value;
    Ok(g * m1 + h * m0)
}
