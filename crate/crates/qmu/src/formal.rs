//! Formal power series, the q-Borel and q-Laplace transformations, and the
//! divergent solutions of the q-Hermite-Weber and Ramanujan equations.
//!
//! The q-Borel transformation reweights coefficients,
//! `B_q: a_n -> a_n q^{n(n-1)/2}`, and the q-Laplace transformation sums the
//! resulting function over a geometric ray against a theta kernel:
//!
//! ```text
//! L_q(g)(x; lambda) = sum_{n in Z} g(lambda q^n) / theta_q(lambda q^n / x),
//! theta_q(z) = sum_{n in Z} q^{n(n-1)/2} z^n = (q)_inf * theta(-z; q).
//! ```
//!
//! The kernel normalization is pinned by the monomial round trip
//! `L_q(B_q(x^n)) = x^n`; with the plain theta in the kernel the round trip
//! returns `(q)_inf (-x)^n` instead, so `theta_q` here is the classical Jacobi
//! form above.

use std::sync::Arc;

use crate::error::{QError, Result};
use crate::numerics::{
    cpowi, near_lattice, sum_bilateral, sum_unilateral, CVal, Modulus, SummationPolicy, C64,
    LATTICE_DELTA,
};
use crate::qcore::{self, PochIndex, ThetaRep};

/// A lazily generated coefficient stream c_0, c_1, ... with no convergence
/// requirement. Generators must be pure: concurrent `coeff(n)` calls return
/// identical values.
#[derive(Clone)]
pub struct FormalSeries {
    gen: Arc<dyn Fn(usize) -> C64 + Send + Sync>,
}

impl std::fmt::Debug for FormalSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FormalSeries[{}, {}, {}, ...]",
            self.coeff(0),
            self.coeff(1),
            self.coeff(2)
        )
    }
}

impl FormalSeries {
    pub fn from_fn(gen: impl Fn(usize) -> C64 + Send + Sync + 'static) -> Self {
        FormalSeries { gen: Arc::new(gen) }
    }

    /// The monomial x^k.
    pub fn monomial(k: usize) -> Self {
        FormalSeries::from_fn(move |n| {
            if n == k {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        })
    }

    pub fn coeff(&self, n: usize) -> C64 {
        (self.gen)(n)
    }

    /// alpha * g + beta * h, coefficientwise.
    pub fn linear_combination(alpha: C64, g: &FormalSeries, beta: C64, h: &FormalSeries) -> Self {
        let g = g.clone();
        let h = h.clone();
        FormalSeries::from_fn(move |n| alpha * g.coeff(n) + beta * h.coeff(n))
    }

    /// Evaluate sum c_n xi^n under the policy. The growth detector reports
    /// NonConvergent outside the disc of convergence; a coefficient stream
    /// that leaves f64 range before the stopping rule (q-Gevrey growth like
    /// q^{-n(n-1)/2}) is also reported as NonConvergent, since the partial
    /// sums cannot be continued in working precision.
    pub fn eval(&self, xi: C64, policy: &SummationPolicy) -> Result<CVal> {
        let gen = self.gen.clone();
        let mut pow = C64::new(1.0, 0.0);
        let mut n_local = 0usize;
        sum_unilateral(
            move |_| {
                let c = gen(n_local);
                let t = c * pow;
                if !(t.re.is_finite() && t.im.is_finite()) {
                    return Err(QError::non_convergent(
                        crate::error::Direction::Forward,
                        n_local,
                        "coefficient stream left f64 range before the stopping rule",
                    ));
                }
                pow *= xi;
                n_local += 1;
                Ok(t)
            },
            policy,
        )
    }
}

/// q-Borel transformation: coefficient map a_n -> a_n q^{n(n-1)/2}.
pub fn q_borel(g: &FormalSeries, q: &Modulus) -> FormalSeries {
    let g = g.clone();
    let qv = q.q();
    FormalSeries::from_fn(move |n| {
        let n = n as i64;
        g.coeff(n as usize) * cpowi(qv, n * (n - 1) / 2)
    })
}

/// q-Laplace transformation (discrete Jackson integral over the ray
/// lambda q^Z) of an arbitrary evaluator:
///
/// `L_q(g)(x; lambda) = sum_{n in Z} g(lambda q^n) / ((q)_inf theta(-lambda q^n / x))`.
pub fn q_laplace(
    g_eval: impl Fn(C64) -> Result<CVal>,
    x: C64,
    lambda: C64,
    q: &Modulus,
    policy: &SummationPolicy,
) -> Result<CVal> {
    if x == C64::new(0.0, 0.0) || lambda == C64::new(0.0, 0.0) {
        return Err(QError::Domain(
            "q_laplace needs x != 0 and lambda != 0".into(),
        ));
    }
    // theta(-lambda q^n / x) vanishes iff -lambda/x lands on the q-lattice;
    // one check covers the whole ray.
    if near_lattice(-lambda / x, q, LATTICE_DELTA).is_some() {
        return Err(QError::PoleHit(
            "kernel theta vanishes on the ray: -lambda/x is on the q-lattice".into(),
        ));
    }
    let qq_inf = qcore::qpoch(q.q(), q, PochIndex::Infinite, policy)?.value;
    sum_bilateral(
        |n| {
            let ray = lambda * q.q_powi(n);
            let g = g_eval(ray)?;
            let kernel = qcore::theta(-ray / x, q, ThetaRep::Product, policy)?.value * qq_inf;
            if kernel.norm() == 0.0 {
                return Err(QError::PoleHit(
                    "kernel theta vanished on a ray point".into(),
                ));
            }
            Ok(g.value / kernel)
        },
        policy,
    )
}

/// L_q . B_q applied to a formal series: B_q(g) is evaluated as a convergent
/// power series at the ray points and pushed through [`q_laplace`]. Fails with
/// NonConvergent when a ray point with a still-significant kernel weight falls
/// outside the disc of convergence of B_q(g).
pub fn lb_composite(
    g: &FormalSeries,
    x: C64,
    lambda: C64,
    q: &Modulus,
    policy: &SummationPolicy,
) -> Result<CVal> {
    let borel = q_borel(g, q);
    q_laplace(|xi| borel.eval(xi, policy), x, lambda, q, policy)
}

/// Divergent solution of the q-Hermite-Weber equation around 0:
/// coefficients of `g1(x; a) = sum_n (a)_n/(q)_n q^{-n(n+1)/2} (-x)^n`.
pub fn divergent_g1(a: C64, q: &Modulus) -> FormalSeries {
    let q = *q;
    FormalSeries::from_fn(move |n| {
        let ni = n as i64;
        let pol = SummationPolicy::default();
        let num = qcore::qpoch(a, &q, PochIndex::Int(ni), &pol)
            .map(|v| v.value)
            .unwrap_or(C64::new(f64::NAN, 0.0));
        let den = qcore::qpoch(q.q(), &q, PochIndex::Int(ni), &pol)
            .map(|v| v.value)
            .unwrap_or(C64::new(f64::NAN, 0.0));
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        num / den * cpowi(q.q(), -(ni * (ni + 1) / 2)) * sign
    })
}

/// Divergent solution of the Ramanujan equation around 0, as a series in x
/// with y a parameter: `f1 = 2phi0(0,0; -; q, xy)` has coefficients
/// `(-y)^n q^{-n(n-1)/2} / (q)_n`.
pub fn divergent_f1(y: C64, q: &Modulus) -> FormalSeries {
    let q = *q;
    FormalSeries::from_fn(move |n| {
        let ni = n as i64;
        let pol = SummationPolicy::default();
        let den = qcore::qpoch(q.q(), &q, PochIndex::Int(ni), &pol)
            .map(|v| v.value)
            .unwrap_or(C64::new(f64::NAN, 0.0));
        cpowi(-y, ni) * cpowi(q.q(), -(ni * (ni - 1) / 2)) / den
    })
}

/// Formal solution around infinity of [xyT - 1 - xy]g = 0, as a series in
/// u = 1/(xy): coefficients `q^{n(n+1)/2} / (q)_n` of (-q u)_inf.
pub fn ginf(q: &Modulus) -> FormalSeries {
    let q = *q;
    FormalSeries::from_fn(move |n| {
        let ni = n as i64;
        let pol = SummationPolicy::default();
        let den = qcore::qpoch(q.q(), &q, PochIndex::Int(ni), &pol)
            .map(|v| v.value)
            .unwrap_or(C64::new(f64::NAN, 0.0));
        cpowi(q.q(), ni * (ni + 1) / 2) / den
    })
}

/// The q-Borel sum of `f1` in closed form: by the q-binomial theorem the
/// transform `sum_n (-y xi)^n/(q)_n` continues to `1/(-y xi)_inf` on all rays,
/// which is the evaluator the bilateral Laplace sum needs at ray points far
/// outside the series' disc of convergence |xi| < 1/|y|.
pub fn borel_sum_f1<'a>(
    y: C64,
    q: &'a Modulus,
    policy: &'a SummationPolicy,
) -> impl Fn(C64) -> Result<CVal> + 'a {
    move |xi: C64| {
        let p = qcore::qpoch_inf_flagged(-y * xi, q, policy)?;
        if p.zero_factor.is_some() || p.value.norm() == 0.0 {
            return Err(QError::PoleHit("(-y xi)_inf vanished on the ray".into()));
        }
        Ok(CVal::new(C64::new(1.0, 0.0)) / p.value)
    }
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

    #[test]
    fn values_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<FormalSeries>();
        assert_send_sync::<Modulus>();
        assert_send_sync::<CVal>();
        assert_send_sync::<SummationPolicy>();
    }

    #[test]
    fn borel_on_monomials() {
        let q = Modulus::from_real(0.2).unwrap();
        let b = q_borel(&FormalSeries::monomial(3), &q);
        assert!((b.coeff(3) - q.q_powi(3)).norm() < 1e-16);
        assert_eq!(b.coeff(2), c(0.0, 0.0));
        // k = 0, 1 carry weight q^0
        for k in 0..2 {
            let b = q_borel(&FormalSeries::monomial(k), &q);
            assert_eq!(b.coeff(k), c(1.0, 0.0));
        }
    }

    #[test]
    fn borel_of_g1_coefficients() {
        // (a)_n/(q)_n q^{-n(n+1)/2} (-1)^n maps to (a)_n/(q)_n (-1)^n q^{-n}
        let q = Modulus::from_real(0.2).unwrap();
        let a = c(0.3, 0.0);
        let b = q_borel(&divergent_g1(a, &q), &q);
        for n in 0..=10i64 {
            let num = qpoch(a, &q, PochIndex::Int(n), &pol()).unwrap().value;
            let den = qpoch(q.q(), &q, PochIndex::Int(n), &pol()).unwrap().value;
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let expect = num / den * sign * cpowi(q.q(), -n);
            assert!(
                (b.coeff(n as usize) - expect).norm() <= 1e-13 * expect.norm().max(1.0),
                "n = {n}"
            );
        }
        // n = 1 value spelled out: -(1-0.3)/(1-0.2)/0.2
        let g1 = divergent_g1(a, &q);
        assert!((g1.coeff(0) - 1.0).norm() < 1e-16);
        assert!((g1.coeff(1) - c(-0.7 / 0.8 / 0.2, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn f1_is_the_a_to_zero_limit_of_g1() {
        // coefficient streams of g1(xyq; a) at a = q^8 approach f1's
        let q = Modulus::from_real(0.2).unwrap();
        let y = c(1.3, 0.0);
        let a = q.q_powi(8);
        let f1 = divergent_f1(y, &q);
        // g1(X;a) with X = x y q: coefficient n picks up (y q)^n
        let g1 = divergent_g1(a, &q);
        for n in 0..=8usize {
            let shifted = g1.coeff(n) * cpowi(y * q.q(), n as i64);
            let rel = (shifted - f1.coeff(n)).norm() / f1.coeff(n).norm();
            assert!(rel <= 1e-4, "n = {n}, rel = {rel}");
        }
    }

    #[test]
    fn laplace_of_constant_is_constant() {
        let q = Modulus::from_real(0.2).unwrap();
        let v = q_laplace(
            |_| Ok(CVal::new(c(2.5, -0.5))),
            c(0.7, 0.0),
            c(0.3, 0.0),
            &q,
            &pol(),
        )
        .unwrap();
        assert!((v.value - c(2.5, -0.5)).norm() <= 1e-12);
    }

    #[test]
    fn monomial_round_trip() {
        let q = Modulus::from_real(0.2).unwrap();
        let x = c(0.7, 0.0);
        for lambda in [c(0.3, 0.0), c(0.25, 0.2)] {
            for k in 0..=3usize {
                let v = lb_composite(&FormalSeries::monomial(k), x, lambda, &q, &pol()).unwrap();
                let expect = cpowi(x, k as i64);
                assert!(
                    (v.value - expect).norm() <= 1e-10 * expect.norm(),
                    "k = {k}, lambda = {lambda}"
                );
            }
        }
    }

    #[test]
    fn laplace_pole_on_ray() {
        let q = Modulus::from_real(0.2).unwrap();
        // -lambda/x on the lattice: lambda = -x q^2
        let x = c(0.7, 0.0);
        let err = q_laplace(
            |_| Ok(CVal::new(c(1.0, 0.0))),
            x,
            -x * q.q_powi(2),
            &q,
            &pol(),
        )
        .unwrap_err();
        assert!(matches!(err, QError::PoleHit(_)));
    }

    #[test]
    fn composite_rejects_out_of_disc_rays() {
        // B_q(f1) has radius 1/|y|; with |x| ~ 1 the backward ray points leave
        // the disc while still carrying weight, which must surface as an error
        let q = Modulus::from_real(0.2).unwrap();
        let (x, y) = (c(0.9, 0.0), c(2.0, 0.0));
        let err = lb_composite(&divergent_f1(y, &q), x, -x / y, &q, &pol());
        assert!(matches!(err, Err(QError::NonConvergent { .. })));
    }

    #[test]
    fn closed_borel_sum_agrees_with_series_inside_disc() {
        let q = Modulus::from_real(0.2).unwrap();
        let y = c(1.4, 0.0);
        let series = q_borel(&divergent_f1(y, &q), &q);
        let policy = pol();
        let closed = borel_sum_f1(y, &q, &policy);
        // stay well inside the |xi| < 1/|y| disc so the series settles before
        // the raw q^{-n(n-1)/2} coefficients leave f64 range
        for xi in [c(0.15, 0.0), c(-0.1, 0.1), c(0.0, 0.12)] {
            let a = series.eval(xi, &pol()).unwrap();
            let b = closed(xi).unwrap();
            assert!((a.value - b.value).norm() <= 1e-12 * b.norm());
        }
    }

    #[test]
    fn ginf_expands_the_infinite_product() {
        // sum_n coeff(n) u^n = (-q u)_inf
        let q = Modulus::from_real(0.25).unwrap();
        let u = c(0.6, 0.2);
        let v = ginf(&q).eval(u, &pol()).unwrap();
        let p = qpoch(-q.q() * u, &q, PochIndex::Infinite, &pol()).unwrap();
        assert!((v.value - p.value).norm() <= 1e-13 * p.norm());
    }

    proptest! {
        // B(alpha g + beta h) = alpha B(g) + beta B(h), per coefficient, exact
        #[test]
        fn borel_linearity(ar in -2.0f64..2.0, ai in -2.0f64..2.0,
                           br in -2.0f64..2.0, bi in -2.0f64..2.0, n in 0usize..20) {
            let q = Modulus::from_real(0.3).unwrap();
            let g = FormalSeries::from_fn(|k| C64::new(1.0 / (k as f64 + 1.0), 0.5));
            let h = FormalSeries::from_fn(|k| C64::new(0.2 * k as f64, -1.0));
            let alpha = C64::new(ar, ai);
            let beta = C64::new(br, bi);
            let lhs = q_borel(&FormalSeries::linear_combination(alpha, &g, beta, &h), &q);
            let rhs_g = q_borel(&g, &q);
            let rhs_h = q_borel(&h, &q);
            let ta = alpha * rhs_g.coeff(n);
            let tb = beta * rhs_h.coeff(n);
            let scale = ta.norm().max(tb.norm()).max(1e-300);
            prop_assert!((lhs.coeff(n) - (ta + tb)).norm() <= 1e-14 * scale);
        }
    }
}
