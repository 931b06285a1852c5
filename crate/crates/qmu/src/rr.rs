//! Rogers-Ramanujan series and products, the continued fraction R(q), its
//! quadratic eta-quotient relation, and the Ismail-Zhang bilateral series.

use crate::error::{QError, Result};
use crate::mu;
use crate::numerics::{
    cpowi, near_lattice, sum_bilateral, CVal, Modulus, SummationPolicy, C64, LATTICE_DELTA,
};
use crate::qcore::{self, PochIndex, ThetaRep};

/// Representation choice for G(q) and H(q).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GhRep {
    /// Direct series sum_n q^{n^2}/(q)_n resp. q^{n^2+n}/(q)_n.
    Sum,
    /// Reciprocal products 1/(q, q^4; q^5)_inf resp. 1/(q^2, q^3; q^5)_inf.
    Product,
}

fn gh_series(q: &Modulus, extra: i64, policy: &SummationPolicy) -> Result<CVal> {
    // sum_n q^{n^2 + extra*n} / (q)_n via the term ratio q^{2n+1+extra}/(1-q^{n+1})
    let qv = q.q();
    let mut t = C64::new(1.0, 0.0);
    let mut n = 0i64;
    let mut first = true;
    crate::numerics::sum_unilateral(
        move |_| {
            if first {
                first = false;
                return Ok(t);
            }
            t *= cpowi(qv, 2 * n + 1 + extra) / (1.0 - cpowi(qv, n + 1));
            n += 1;
            Ok(t)
        },
        policy,
    )
}

pub fn rr_g(q: &Modulus, rep: GhRep, policy: &SummationPolicy) -> Result<CVal> {
    match rep {
        GhRep::Sum => gh_series(q, 0, policy),
        GhRep::Product => {
            let q5 = q.pow_int(5);
            let p = qcore::qpoch_multi(&[q.q(), q.q_powi(4)], &q5, PochIndex::Infinite, policy)?;
            Ok(CVal::new(C64::new(1.0, 0.0)) / p)
        }
    }
}

pub fn rr_h(q: &Modulus, rep: GhRep, policy: &SummationPolicy) -> Result<CVal> {
    match rep {
        GhRep::Sum => gh_series(q, 1, policy),
        GhRep::Product => {
            let q5 = q.pow_int(5);
            let p = qcore::qpoch_multi(
                &[q.q_powi(2), q.q_powi(3)],
                &q5,
                PochIndex::Infinite,
                policy,
            )?;
            Ok(CVal::new(C64::new(1.0, 0.0)) / p)
        }
    }
}

/// Representation choice for R(q).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RRep {
    /// q^{1/5} H(q) / G(q).
    Ratio,
    /// Convergents of q^{1/5} / (1 + q/(1 + q^2/(1 + ...))).
    ContinuedFraction,
}

/// Successive convergents of 1/(1 + q/(1 + q^2/(1 + ...))) by the standard
/// three-term recurrence (partial numerators 1, q, q^2, ..., denominators 1).
pub fn continued_fraction_convergents(q: &Modulus, depth: usize) -> Vec<C64> {
    let qv = q.q();
    let mut out = Vec::with_capacity(depth);
    let (mut a_prev, mut a_cur) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
    let (mut b_prev, mut b_cur) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0));
    let mut partial = C64::new(1.0, 0.0); // a_1 = 1, then q, q^2, ...
    for _ in 0..depth {
        let a_next = a_cur + partial * a_prev;
        let b_next = b_cur + partial * b_prev;
        a_prev = a_cur;
        a_cur = a_next;
        b_prev = b_cur;
        b_cur = b_next;
        out.push(a_cur / b_cur);
        partial *= qv;
    }
    out
}

const CF_MAX_DEPTH: usize = 500;

pub fn rr_r(q: &Modulus, rep: RRep, policy: &SummationPolicy) -> Result<CVal> {
    let fifth = q.q_pow(C64::new(0.2, 0.0));
    match rep {
        RRep::Ratio => {
            let g = rr_g(q, GhRep::Sum, policy)?;
            let h = rr_h(q, GhRep::Sum, policy)?;
            Ok(h / g * fifth)
        }
        RRep::ContinuedFraction => {
            let qv = q.q();
            let (mut a_prev, mut a_cur) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0));
            let (mut b_prev, mut b_cur) = (C64::new(0.0, 0.0), C64::new(1.0, 0.0));
            let mut partial = C64::new(1.0, 0.0);
            let mut prev_conv: Option<C64> = None;
            for _ in 0..CF_MAX_DEPTH {
                let a_next = a_cur + partial * a_prev;
                let b_next = b_cur + partial * b_prev;
                a_prev = a_cur;
                a_cur = a_next;
                b_prev = b_cur;
                b_cur = b_next;
                let conv = a_cur / b_cur;
                if let Some(p) = prev_conv {
                    if (conv - p).norm() <= policy.rel_tol * conv.norm() {
                        return Ok(CVal::with_err(
                            fifth * conv,
                            (conv - p).norm() * fifth.norm(),
                        ));
                    }
                }
                prev_conv = Some(conv);
                partial *= qv;
            }
            Err(QError::non_convergent(
                crate::error::Direction::Forward,
                CF_MAX_DEPTH,
                "continued-fraction convergents did not settle",
            ))
        }
    }
}

/// Both internal forms of the quadratic relation, each equal to 1:
/// the eta-quotient form eta(5 tau)/eta(tau/5) (1/R - 1 - R) and the
/// series form (q)_inf/(q^{1/5}; q^{1/5})_inf (G^2 - q^{1/5} G H - q^{2/5} H^2).
#[derive(Debug, Clone, Copy)]
pub struct RrQuadratic {
    pub eta_form: C64,
    pub series_form: C64,
}

pub fn rr_quadratic(q: &Modulus, policy: &SummationPolicy) -> Result<RrQuadratic> {
    let r = rr_r(q, RRep::Ratio, policy)?.value;
    if r.norm() == 0.0 {
        return Err(QError::DivisionByZero("R(q) = 0 in 1/R".into()));
    }
    let eta5 = qcore::eta(&q.pow_int(5), policy)?.value;
    let eta15 = qcore::eta(&Modulus::from_tau(q.tau() / 5.0)?, policy)?.value;
    let eta_form = eta5 / eta15 * (1.0 / r - 1.0 - r);

    let g = rr_g(q, GhRep::Sum, policy)?.value;
    let h = rr_h(q, GhRep::Sum, policy)?.value;
    let root5 = q.root(5)?;
    let fifth = root5.q();
    let pref = qcore::qpoch(q.q(), q, PochIndex::Infinite, policy)?.value
        / qcore::qpoch(fifth, &root5, PochIndex::Infinite, policy)?.value;
    let series_form = pref * (g * g - fifth * g * h - fifth * fifth * h * h);

    Ok(RrQuadratic {
        eta_form,
        series_form,
    })
}

/// The Ismail-Zhang bilateral deformation of the Rogers-Ramanujan series,
/// u(a, x, q) = sum_{n in Z} q^{n^2} x^n / (aq)_n.
pub fn iz_u(a: C64, x: C64, q: &Modulus, policy: &SummationPolicy) -> Result<CVal> {
    if x == C64::new(0.0, 0.0) {
        return Err(QError::Domain("iz_u needs x != 0".into()));
    }
    if near_lattice(a * q.q(), q, LATTICE_DELTA).is_some() {
        return Err(QError::PoleHit(
            "aq on the q-lattice zeroes a negative-index Pochhammer denominator".into(),
        ));
    }
    let qv = q.q();
    let mut up_t = C64::new(1.0, 0.0);
    let mut up_n = 0i64;
    let mut up_first = true;
    let mut dn_t = C64::new(1.0, 0.0);
    let mut dn_n = 0i64;
    sum_bilateral(
        move |n| {
            if n >= 0 {
                if up_first {
                    up_first = false;
                    return Ok(up_t);
                }
                let den = 1.0 - a * cpowi(qv, up_n + 1); // (aq)_{n+1}/(aq)_n = 1 - a q^{n+1}
                if den.norm() < LATTICE_DELTA {
                    return Err(QError::PoleHit("(aq)_n factor vanished".into()));
                }
                up_t *= cpowi(qv, 2 * up_n + 1) * x / den;
                up_n += 1;
                Ok(up_t)
            } else {
                // t_{m-1}/t_m = q^{1-2m} (1 - a q^{m+1})... with base (aq):
                // t_{n-1} = t_n * q^{1-2n} (1 - a q^n) / x  [derived from q^{n^2}x^n/(aq)_n]
                dn_t *= cpowi(qv, 1 - 2 * dn_n) * (1.0 - a * cpowi(qv, dn_n)) / x;
                dn_n -= 1;
                Ok(dn_t)
            }
        },
        policy,
    )
}

/// Residuals of the two displays satisfied by u(a, x, q): the q-difference
/// operator [xq T^2 + a T - 1] and the little-mu relation
/// i q^{-1/8} u(a,x,q) = (1/a, q)_inf theta(x/a) lmu(x/a, 1/(aq)).
#[derive(Debug, Clone, Copy)]
pub struct IzReport {
    pub operator_residual: C64,
    pub operator_scale: f64,
    pub mu_residual: C64,
    pub mu_scale: f64,
}

pub fn iz_relation_residual(
    a: C64,
    x: C64,
    q: &Modulus,
    policy: &SummationPolicy,
) -> Result<IzReport> {
    let qv = q.q();
    let t2 = x * qv * iz_u(a, qv * qv * x, q, policy)?.value;
    let t1 = a * iz_u(a, qv * x, q, policy)?.value;
    let t0 = iz_u(a, x, q, policy)?.value;

    let i = C64::new(0.0, 1.0);
    let lhs = i * q.q_pow(C64::new(-0.125, 0.0)) * t0;
    let point = mu::MuPoint::new(x / a, 1.0 / (a * qv), q)?;
    let lmu = mu::little_mu(&point, mu::MuRep::Definition, policy)?.value;
    let pref = qcore::qpoch_multi(&[1.0 / a, qv], q, PochIndex::Infinite, policy)?.value
        * qcore::theta(x / a, q, ThetaRep::Product, policy)?.value;
    let rhs = pref * lmu;

    Ok(IzReport {
        operator_residual: t2 + t1 - t0,
        operator_scale: t2.norm().max(t1.norm()).max(t0.norm()),
        mu_residual: lhs - rhs,
        mu_scale: lhs.norm().max(rhs.norm()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pol() -> SummationPolicy {
        SummationPolicy::default()
    }

    #[test]
    fn gh_sum_vs_product() {
        for qr in [0.1, 0.2, 0.3] {
            let q = Modulus::from_real(qr).unwrap();
            let gs = rr_g(&q, GhRep::Sum, &pol()).unwrap();
            let gp = rr_g(&q, GhRep::Product, &pol()).unwrap();
            assert!(
                (gs.value - gp.value).norm() <= 1e-12 * gs.norm(),
                "q = {qr}"
            );
            let hs = rr_h(&q, GhRep::Sum, &pol()).unwrap();
            let hp = rr_h(&q, GhRep::Product, &pol()).unwrap();
            assert!(
                (hs.value - hp.value).norm() <= 1e-12 * hs.norm(),
                "q = {qr}"
            );
        }
        // frozen sums at q = 0.2
        let q = Modulus::from_real(0.2).unwrap();
        assert!(
            (rr_g(&q, GhRep::Sum, &pol()).unwrap().value.re - 1.2520840053849602).abs() < 1e-14
        );
        assert!(
            (rr_h(&q, GhRep::Sum, &pol()).unwrap().value.re - 1.0500833387096913).abs() < 1e-14
        );
    }

    #[test]
    fn gh_leading_order() {
        // q -> 0: both series collapse onto the n = 0 term
        let q = Modulus::from_real(1e-12).unwrap();
        let g = rr_g(&q, GhRep::Sum, &pol()).unwrap();
        let h = rr_h(&q, GhRep::Sum, &pol()).unwrap();
        assert!((g.value - 1.0).norm() <= 3e-12);
        assert!((h.value - 1.0).norm() <= 3e-12);
    }

    #[test]
    fn r_leading_order_and_reps() {
        // q -> 0: R ~ q^{1/5}
        let q = Modulus::from_real(1e-10).unwrap();
        let r = rr_r(&q, RRep::Ratio, &pol()).unwrap();
        let lead = 1e-10f64.powf(0.2);
        assert!((r.value.re - lead).abs() <= 1e-9 * lead);

        let q = Modulus::from_real(0.2).unwrap();
        let ratio = rr_r(&q, RRep::Ratio, &pol()).unwrap();
        let cf = rr_r(&q, RRep::ContinuedFraction, &pol()).unwrap();
        assert!((ratio.value - cf.value).norm() <= 1e-11 * ratio.norm());
    }

    #[test]
    fn cf_convergents_alternate_around_ratio() {
        for qr in [0.1, 0.2, 0.3] {
            let q = Modulus::from_real(qr).unwrap();
            let fifth = q.q_pow(C64::new(0.2, 0.0));
            let target = rr_r(&q, RRep::Ratio, &pol()).unwrap().value;
            let convs = continued_fraction_convergents(&q, 10);
            let mut prev_sign = 0i8;
            for conv in convs {
                let d = (fifth * conv - target).re;
                if d.abs() < 1e-15 {
                    break;
                }
                let sign = if d > 0.0 { 1 } else { -1 };
                if prev_sign != 0 {
                    assert_ne!(sign, prev_sign, "q = {qr}");
                }
                prev_sign = sign;
            }
        }
    }

    #[test]
    fn quadratic_relation_is_one() {
        for qr in [0.1, 0.2, 0.3] {
            let q = Modulus::from_real(qr).unwrap();
            let v = rr_quadratic(&q, &pol()).unwrap();
            assert!(
                (v.eta_form - 1.0).norm() <= 1e-10,
                "q = {qr}: {}",
                v.eta_form
            );
            assert!(
                (v.eta_form - v.series_form).norm() <= 1e-11,
                "q = {qr}: forms disagree"
            );
        }
    }

    #[test]
    fn iz_recursion_and_operator() {
        let q = Modulus::from_real(0.2).unwrap();
        let a = C64::new(0.5, 0.0);
        // q^{m+1} u_{m+2} + a u_{m+1} - u_m = 0 with u_m = u(a, q^m, q)
        for m in 0..=2i64 {
            let u0 = iz_u(a, q.q_powi(m), &q, &pol()).unwrap().value;
            let u1 = iz_u(a, q.q_powi(m + 1), &q, &pol()).unwrap().value;
            let u2 = iz_u(a, q.q_powi(m + 2), &q, &pol()).unwrap().value;
            let resid = q.q_powi(m + 1) * u2 + a * u1 - u0;
            let scale = u0.norm().max(u1.norm()).max(u2.norm());
            assert!(resid.norm() <= 1e-12 * scale, "m = {m}");
        }

        let r = iz_relation_residual(a, C64::new(0.7, 0.0), &q, &pol()).unwrap();
        assert!(r.operator_residual.norm() <= 1e-10 * r.operator_scale);

        let r = iz_relation_residual(C64::new(0.6, 0.0), C64::new(0.9, 0.0), &q, &pol()).unwrap();
        assert!(
            r.mu_residual.norm() <= 1e-9 * r.mu_scale,
            "mu relation rel = {}",
            r.mu_residual.norm() / r.mu_scale
        );
    }

    #[test]
    fn iz_pole_detection() {
        let q = Modulus::from_real(0.2).unwrap();
        // a = 1 puts aq on the lattice
        assert!(matches!(
            iz_u(C64::new(1.0, 0.0), C64::new(0.5, 0.0), &q, &pol()),
            Err(QError::PoleHit(_))
        ));
    }
}
