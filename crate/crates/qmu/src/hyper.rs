//! Unilateral r_phi_s and bilateral r_psi_s basic hypergeometric series, plus
//! the named series of the Ramanujan equation: the entire 0_phi_1 kernel, its
//! theta-normalized solution, and the Heine equation checks.
//!
//! ```text
//! r_phi_s(a; b; q, z) = sum_{n>=0} (a_1..a_r)_n / ((b_1..b_s)_n (q)_n)
//!                       * [(-1)^n q^{n(n-1)/2}]^{s-r+1} * z^n
//! r_psi_s(a; b; q, z) = sum_{n in Z} (a_1..a_r)_n / (b_1..b_s)_n
//!                       * [(-1)^n q^{n(n-1)/2}]^{s-r} * z^n
//! ```
//!
//! Zero parameters are allowed everywhere: (0)_n = 1 for all n in Z, which is
//! what the ratio recurrences produce with no special casing. Bilateral
//! convergence is not pre-validated symbolically; the growth detector in the
//! summation kernel enforces it at runtime.

use crate::error::{QError, Result};
use crate::numerics::{
    cpowi, near_lattice, sum_bilateral, sum_unilateral, CVal, Modulus, SummationPolicy, C64,
    LATTICE_DELTA,
};
use crate::qcore::{self, PochIndex, ThetaRep};

/// Parameters of a basic hypergeometric series.
#[derive(Debug, Clone, PartialEq)]
pub struct HyperSpec {
    /// Upper parameters a_1, ..., a_r (zeros allowed).
    pub upper: Vec<C64>,
    /// Lower parameters b_1, ..., b_s (zeros allowed in the bilateral case).
    pub lower: Vec<C64>,
    pub q: Modulus,
    pub z: C64,
}

impl HyperSpec {
    pub fn new(upper: Vec<C64>, lower: Vec<C64>, q: Modulus, z: C64) -> Self {
        HyperSpec { upper, lower, q, z }
    }
}

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

/// Unilateral series r_phi_s.
///
/// Convergence: s-r+1 >= 1 is entire in z; s-r+1 = 0 needs |z| < 1;
/// s-r+1 < 0 is rejected as `Divergent` unless z = 0 (those series live in
/// [`crate::formal`] as formal power series).
pub fn phi(spec: &HyperSpec, policy: &SummationPolicy) -> Result<CVal> {
    let w = spec.lower.len() as i64 - spec.upper.len() as i64 + 1;
    if spec.z == C64::new(0.0, 0.0) {
        return Ok(CVal::with_err(one(), 0.0));
    }
    if w < 0 {
        return Err(QError::Divergent(format!(
            "{}phi{} has zero radius of convergence; evaluate it as a formal series",
            spec.upper.len(),
            spec.lower.len()
        )));
    }
    if w == 0 && spec.z.norm() >= 1.0 {
        return Err(QError::Divergent(format!(
            "{}phi{} needs |z| < 1, got |z| = {}",
            spec.upper.len(),
            spec.lower.len(),
            spec.z.norm()
        )));
    }
    for &b in &spec.lower {
        if b != C64::new(0.0, 0.0) {
            if let Some(k) = near_lattice(b, &spec.q, LATTICE_DELTA) {
                if k <= 0 {
                    return Err(QError::PoleHit(format!(
                        "lower parameter near q^{k} zeroes a denominator at finite order"
                    )));
                }
            }
        }
    }

    let q = spec.q.q();
    let upper = spec.upper.clone();
    let lower = spec.lower.clone();
    let z = spec.z;
    let mut t = one();
    let mut qn = one(); // q^n at the next ratio application
    let mut first = true;
    sum_unilateral(
        move |_| {
            if first {
                first = false;
                return Ok(t);
            }
            let mut num = one();
            for &a in &upper {
                num *= 1.0 - a * qn;
            }
            let mut den = 1.0 - q * qn; // the (q)_n factor advancing to n+1
            for &b in &lower {
                den *= 1.0 - b * qn;
            }
            if den.norm() < LATTICE_DELTA {
                return Err(QError::PoleHit(
                    "vanishing denominator factor in phi term recurrence".into(),
                ));
            }
            t *= num / den * cpowi(-qn, w) * z;
            qn *= q;
            Ok(t)
        },
        policy,
    )
}

/// Bilateral series r_psi_s, summed as two independent directional passes.
pub fn psi(spec: &HyperSpec, policy: &SummationPolicy) -> Result<CVal> {
    if spec.z == C64::new(0.0, 0.0) {
        return Err(QError::Domain(
            "bilateral series needs z != 0 (negative powers of z appear)".into(),
        ));
    }
    let w = spec.lower.len() as i64 - spec.upper.len() as i64;
    let q = spec.q.q();
    let qinv = one() / q;

    let fwd = {
        let upper = spec.upper.clone();
        let lower = spec.lower.clone();
        let z = spec.z;
        let mut t = one();
        let mut qn = one();
        let mut first = true;
        move |_: i64| {
            if first {
                first = false;
                return Ok(t);
            }
            let mut num = one();
            for &a in &upper {
                num *= 1.0 - a * qn;
            }
            let mut den = one();
            for &b in &lower {
                den *= 1.0 - b * qn;
            }
            if den.norm() < LATTICE_DELTA {
                return Err(QError::PoleHit(
                    "vanishing lower-parameter factor in psi forward pass".into(),
                ));
            }
            t *= num / den * cpowi(-qn, w) * z;
            qn *= q;
            Ok(t)
        }
    };

    let bwd = {
        let upper = spec.upper.clone();
        let lower = spec.lower.clone();
        let zinv = one() / spec.z;
        let mut t = one(); // t_0; first call produces t_{-1}
        let mut qn = one(); // becomes q^{n-1} before each application
        move |_: i64| {
            qn *= qinv;
            let mut num = one();
            for &b in &lower {
                num *= 1.0 - b * qn;
            }
            let mut den = one();
            for &a in &upper {
                den *= 1.0 - a * qn;
            }
            if den.norm() < LATTICE_DELTA {
                return Err(QError::PoleHit(
                    "upper parameter sits on the positive q-lattice (bilateral pole)".into(),
                ));
            }
            t *= num / den * cpowi(-qn, -w) * zinv;
            Ok(t)
        }
    };

    let mut fwd = fwd;
    let mut bwd = bwd;
    sum_bilateral(
        move |n| {
            if n >= 0 {
                fwd(n)
            } else {
                bwd(n)
            }
        },
        policy,
    )
}

/// The entire kernel 0_phi_1(-; 0; q, z) = sum_n q^{n(n-1)} z^n / (q)_n.
/// Every solution formula around the Ramanujan equation reduces to it.
pub fn phi01(z: C64, q: &Modulus, policy: &SummationPolicy) -> Result<CVal> {
    let qv = q.q();
    let mut t = one();
    let mut qn = one();
    let mut qq = qv; // q^{n+1}
    let mut first = true;
    sum_unilateral(
        move |_| {
            if first {
                first = false;
                return Ok(t);
            }
            t *= qn * qn * z / (1.0 - qq);
            qn *= qv;
            qq *= qv;
            Ok(t)
        },
        policy,
    )
}

/// theta(zq) * f0(z) in entire form: 0_phi_1(-; 0; q, z q^2). Evaluable on all
/// of C, including the lattice points where f0 itself has poles; at z = 1/q it
/// equals G(q) and at z = 1 it equals H(q).
pub fn ramanujan_a(z: C64, q: &Modulus, policy: &SummationPolicy) -> Result<CVal> {
    phi01(z * q.q_powi(2), q, policy)
}

/// The convergent solution f0(z) = 0_phi_1(-; 0; q, z q^2) / theta(z q) of the
/// Ramanujan equation around 0. PoleHit on the q-lattice where theta vanishes.
pub fn ramanujan_entire(z: C64, q: &Modulus, policy: &SummationPolicy) -> Result<CVal> {
    if near_lattice(z, q, LATTICE_DELTA).is_some() {
        return Err(QError::PoleHit(
            "ramanujan entire solution has a pole on the q-lattice".into(),
        ));
    }
    let num = ramanujan_a(z, q, policy)?;
    let den = qcore::theta(z * q.q(), q, ThetaRep::Product, policy)?;
    if den.norm() == 0.0 {
        return Err(QError::PoleHit("theta(zq) vanished".into()));
    }
    Ok(num / den)
}

/// 2_phi_1(a, b; c; q, z).
pub fn phi21(
    a: C64,
    b: C64,
    c: C64,
    z: C64,
    q: &Modulus,
    policy: &SummationPolicy,
) -> Result<CVal> {
    phi(&HyperSpec::new(vec![a, b], vec![c], *q, z), policy)
}

/// Residuals of the Heine equation and of its fundamental-solution identity.
#[derive(Debug, Clone, Copy)]
pub struct HeineReport {
    /// Difference of the two sides of the fundamental-solution identity.
    pub identity_residual: C64,
    pub identity_scale: f64,
    /// Residual of [(c - abqx)T^2 - (c + q - (a+b)qx)T + q(1-x)] on 2_phi_1(a,b;c;q,x).
    pub operator_residual: C64,
    pub operator_scale: f64,
}

pub fn heine_residual(
    a: C64,
    b: C64,
    c: C64,
    x: C64,
    q: &Modulus,
    policy: &SummationPolicy,
) -> Result<HeineReport> {
    if x == C64::new(0.0, 0.0) {
        return Err(QError::PoleHit(
            "x = 0 puts theta(x) at its essential boundary point".into(),
        ));
    }
    let qv = q.q();
    if near_lattice(x * qv / c, q, LATTICE_DELTA).is_some() {
        return Err(QError::PoleHit("theta(xq/c) vanishes".into()));
    }

    let theta = |w: C64| qcore::theta(w, q, ThetaRep::Product, policy);
    let lhs =
        theta(x)? / theta(x * qv / c)? * phi21(a * qv / c, b * qv / c, qv * qv / c, x, q, policy)?;
    let pref = qcore::qpoch_multi(&[qv / x, a * b * x / c], q, PochIndex::Infinite, policy)?;
    let rhs =
        pref / theta(x * qv / c)? * phi21(qv / a, qv / b, qv * qv / c, a * b * x / c, q, policy)?;

    let f = |t: C64| phi21(a, b, c, t, q, policy);
    let t2 = (c - a * b * qv * x) * f(qv * qv * x)?.value;
    let t1 = (c + qv - (a + b) * qv * x) * f(qv * x)?.value;
    let t0 = qv * (1.0 - x) * f(x)?.value;

    Ok(HeineReport {
        identity_residual: lhs.value - rhs.value,
        identity_scale: lhs.norm().max(rhs.norm()),
        operator_residual: t2 - t1 + t0,
        operator_scale: t2.norm().max(t1.norm()).max(t0.norm()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::qpoch;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn pol() -> SummationPolicy {
        SummationPolicy::default()
    }

    /// Brute-force bilateral window sum through finite Pochhammer products,
    /// independent of the ratio recurrence in `psi`.
    fn window_psi(upper: &[C64], lower: &[C64], q: &Modulus, z: C64, window: i64) -> C64 {
        let w = lower.len() as i64 - upper.len() as i64;
        let mut s = c(0.0, 0.0);
        for n in -window..=window {
            let mut term = c(1.0, 0.0);
            let mut ok = true;
            for &a in upper {
                match qpoch(a, q, PochIndex::Int(n), &pol()) {
                    Ok(v) => term *= v.value,
                    Err(_) => {
                        ok = false;
                        break;
                    }
                }
            }
            if !ok {
                continue;
            }
            for &b in lower {
                term /= qpoch(b, q, PochIndex::Int(n), &pol()).unwrap().value;
            }
            let weight = cpowi(-C64::new(1.0, 0.0), n * w) * cpowi(q.q(), w * (n * (n - 1) / 2));
            let t = term * weight * cpowi(z, n);
            if t.is_finite() && t.norm() > 1e-260 {
                s += t;
            }
        }
        s
    }

    #[test]
    fn phi_trivial_and_oracle() {
        let q = Modulus::from_real(0.2).unwrap();
        let v = phi(
            &HyperSpec::new(vec![], vec![c(0.0, 0.0)], q, c(0.0, 0.0)),
            &pol(),
        )
        .unwrap();
        assert_eq!(v.value, c(1.0, 0.0));

        // 0phi1(-;0;q, z q^2) at z = 0.5: 30-term direct oracle
        let z = c(0.5, 0.0) * q.q_powi(2);
        let mut oracle = c(0.0, 0.0);
        for n in 0..30i64 {
            let mut fact = c(1.0, 0.0);
            for k in 1..=n {
                fact *= 1.0 - q.q_powi(k);
            }
            oracle += cpowi(q.q(), n * (n - 1)) * cpowi(z, n) / fact;
        }
        assert!((oracle.re - 1.0250208340053772).abs() < 1e-15);
        let v = phi01(z, &q, &pol()).unwrap();
        assert!((v.value - oracle).norm() <= 1e-15);
    }

    #[test]
    fn q_binomial_theorem_point() {
        // 1phi0(a;-;q,z) = (az)_inf / (z)_inf
        let q = Modulus::from_real(0.2).unwrap();
        let (a, z) = (c(0.4, 0.0), c(0.3, 0.0));
        let lhs = phi(&HyperSpec::new(vec![a], vec![], q, z), &pol()).unwrap();
        let rhs = qpoch(a * z, &q, PochIndex::Infinite, &pol()).unwrap().value
            / qpoch(z, &q, PochIndex::Infinite, &pol()).unwrap().value;
        assert!((lhs.value - rhs).norm() <= 1e-13);
    }

    #[test]
    fn phi_divergence_cases() {
        let q = Modulus::from_real(0.2).unwrap();
        // 2phi0 with z != 0 is rejected here (it lives in formal)
        let err = phi(
            &HyperSpec::new(vec![c(0.3, 0.0), c(0.0, 0.0)], vec![], q, c(0.1, 0.0)),
            &pol(),
        )
        .unwrap_err();
        assert!(matches!(err, QError::Divergent(_)));
        // w = 0 at |z| >= 1
        let err = phi(
            &HyperSpec::new(vec![c(0.3, 0.0)], vec![], q, c(1.2, 0.0)),
            &pol(),
        )
        .unwrap_err();
        assert!(matches!(err, QError::Divergent(_)));
        // lower parameter on q^{-N}
        let err = phi(
            &HyperSpec::new(vec![c(0.3, 0.0)], vec![c(1.0, 0.0)], q, c(0.2, 0.0)),
            &pol(),
        )
        .unwrap_err();
        assert!(matches!(err, QError::PoleHit(_)));
    }

    #[test]
    fn psi_lattice_truncation_reduces_to_phi() {
        // a lower parameter q makes (q)_n infinite for n < 0: the bilateral sum
        // collapses onto its unilateral part, 1psi2(x; q,0; q,z) = 1phi1(x;0;q,z)
        let q = Modulus::from_real(0.2).unwrap();
        let (x, z) = (c(0.3, 0.0), c(0.45, 0.1));
        let bi = psi(
            &HyperSpec::new(vec![x], vec![q.q(), c(0.0, 0.0)], q, z),
            &pol(),
        )
        .unwrap();
        let uni = phi(&HyperSpec::new(vec![x], vec![c(0.0, 0.0)], q, z), &pol()).unwrap();
        assert!((bi.value - uni.value).norm() <= 1e-13 * uni.norm().max(1.0));
    }

    #[test]
    fn psi_window_oracles() {
        let q = Modulus::from_real(0.2).unwrap();
        let (x, y) = (c(0.3, 0.0), c(1.7, 0.0));
        let spec = HyperSpec::new(vec![x], vec![c(0.0, 0.0), c(0.0, 0.0)], q, 1.0 / y);
        let v = psi(&spec, &pol()).unwrap();
        let oracle = window_psi(&spec.upper, &spec.lower, &q, spec.z, 40);
        assert!((v.value - oracle).norm() <= 1e-13 * oracle.norm());

        let spec = HyperSpec::new(vec![], vec![1.0 / y, c(0.0, 0.0)], q, x / y);
        let v = psi(&spec, &pol()).unwrap();
        let oracle = window_psi(&spec.upper, &spec.lower, &q, spec.z, 40);
        assert!((v.value - oracle).norm() <= 1e-13 * oracle.norm());
    }

    #[test]
    fn psi_pole_on_positive_lattice() {
        let q = Modulus::from_real(0.2).unwrap();
        // upper parameter exactly q: (q)_{-1} is infinite
        let err = psi(
            &HyperSpec::new(vec![q.q()], vec![c(0.0, 0.0), c(0.0, 0.0)], q, c(0.5, 0.0)),
            &pol(),
        )
        .unwrap_err();
        assert!(matches!(err, QError::PoleHit(_)));
    }

    #[test]
    fn ramanujan_entire_values() {
        let q = Modulus::from_real(0.25).unwrap();
        let a0 = ramanujan_a(c(0.0, 0.0), &q, &pol()).unwrap();
        assert_eq!(a0.value, c(1.0, 0.0));

        let v = ramanujan_entire(c(0.4, 0.0), &q, &pol()).unwrap();
        assert!((v.value.re + 2.6380955318910875).abs() < 5e-14);

        // A(1/q) = G(q) and A(1) = H(q) against the direct series oracles
        let q = Modulus::from_real(0.2).unwrap();
        let g = ramanujan_a(1.0 / q.q(), &q, &pol()).unwrap();
        let h = ramanujan_a(c(1.0, 0.0), &q, &pol()).unwrap();
        let mut g_oracle = 0.0f64;
        let mut h_oracle = 0.0f64;
        for n in 0..40 {
            let mut fact = 1.0f64;
            for k in 1..=n {
                fact *= 1.0 - 0.2f64.powi(k);
            }
            g_oracle += 0.2f64.powi(n * n) / fact;
            h_oracle += 0.2f64.powi(n * n + n) / fact;
        }
        assert!((g.value.re - g_oracle).abs() < 1e-14);
        assert!((h.value.re - h_oracle).abs() < 1e-14);

        assert!(matches!(
            ramanujan_entire(q.q_powi(2), &q, &pol()),
            Err(QError::PoleHit(_))
        ));
    }

    #[test]
    fn entire_series_stable_under_tighter_truncation() {
        let q = Modulus::from_real(0.35).unwrap();
        let coarse = SummationPolicy {
            rel_tol: 1e-9,
            ..pol()
        };
        let a = phi01(c(2.3, 1.1), &q, &coarse).unwrap();
        let b = phi01(c(2.3, 1.1), &q, &pol()).unwrap();
        assert!((a.value - b.value).norm() <= a.err_or_zero());
    }

    #[test]
    fn heine_identity_and_operator() {
        let q = Modulus::from_real(0.2).unwrap();
        let r = heine_residual(
            c(0.3, 0.0),
            c(0.5, 0.0),
            c(0.7, 0.0),
            c(0.25, 0.0),
            &q,
            &pol(),
        )
        .unwrap();
        assert!(r.identity_residual.norm() <= 1e-10 * r.identity_scale);
        assert!(r.operator_residual.norm() <= 1e-10 * r.operator_scale);

        // the x = q point degenerates both sides of the identity to exactly 0
        let r = heine_residual(c(0.3, 0.0), c(0.5, 0.0), c(0.7, 0.0), q.q(), &q, &pol()).unwrap();
        assert!(r.identity_residual.norm() <= 1e-10);

        assert!(matches!(
            heine_residual(
                c(0.3, 0.0),
                c(0.5, 0.0),
                c(0.7, 0.0),
                c(0.0, 0.0),
                &q,
                &pol()
            ),
            Err(QError::PoleHit(_))
        ));
    }

    proptest! {
        // q-binomial theorem on random points inside the unit disc
        #[test]
        fn q_binomial_theorem_random(ar in 0.2f64..1.8, aphi in 0.0f64..6.283,
                                     zr in 0.1f64..0.9, zphi in 0.0f64..6.283) {
            let q = Modulus::from_real(0.2).unwrap();
            let a = C64::from_polar(ar, aphi);
            let z = C64::from_polar(zr, zphi);
            let lhs = phi(&HyperSpec::new(vec![a], vec![], q, z), &pol()).unwrap();
            let zp = qpoch(z, &q, PochIndex::Infinite, &pol()).unwrap();
            let az = qpoch(a * z, &q, PochIndex::Infinite, &pol()).unwrap();
            let scale = az.norm().max((lhs.value * zp.value).norm());
            prop_assert!((lhs.value * zp.value - az.value).norm() <= 1e-11 * scale);
        }
    }
}
