//! Precision context, truncation policies, and the summation/product kernels
//! every other module builds on.
//!
//! All kernels are deterministic: identical inputs and policy give bit-identical
//! outputs. Term/factor closures are invoked for consecutive indices starting at
//! the base index of the pass (0 for unilateral, 0 and -1 for the two bilateral
//! passes), so they may carry incremental state.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Direction, QError, Result};

pub type C64 = Complex64;

/// Complex value in working precision with an optional absolute error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CVal {
    pub value: C64,
    /// Absolute error estimate when the producing kernel has one.
    pub err: Option<f64>,
}

impl CVal {
    pub fn new(value: C64) -> Self {
        CVal { value, err: None }
    }

    pub fn with_err(value: C64, err: f64) -> Self {
        CVal {
            value,
            err: Some(err),
        }
    }

    pub fn re(&self) -> f64 {
        self.value.re
    }

    pub fn im(&self) -> f64 {
        self.value.im
    }

    pub fn norm(&self) -> f64 {
        self.value.norm()
    }

    pub fn err_or_zero(&self) -> f64 {
        self.err.unwrap_or(0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.value.re.is_finite() && self.value.im.is_finite()
    }

    fn combine_err(a: Option<f64>, b: Option<f64>, extra: f64) -> Option<f64> {
        match (a, b) {
            (None, None) if extra == 0.0 => None,
            _ => Some(a.unwrap_or(0.0) + b.unwrap_or(0.0) + extra),
        }
    }
}

impl From<C64> for CVal {
    fn from(value: C64) -> Self {
        CVal::new(value)
    }
}

impl From<f64> for CVal {
    fn from(value: f64) -> Self {
        CVal::new(C64::new(value, 0.0))
    }
}

impl std::ops::Add for CVal {
    type Output = CVal;
    fn add(self, rhs: CVal) -> CVal {
        CVal {
            value: self.value + rhs.value,
            err: CVal::combine_err(self.err, rhs.err, 0.0),
        }
    }
}

impl std::ops::Sub for CVal {
    type Output = CVal;
    fn sub(self, rhs: CVal) -> CVal {
        CVal {
            value: self.value - rhs.value,
            err: CVal::combine_err(self.err, rhs.err, 0.0),
        }
    }
}

impl std::ops::Mul for CVal {
    type Output = CVal;
    fn mul(self, rhs: CVal) -> CVal {
        // first-order propagation: |a| e_b + |b| e_a
        let extra = 0.0;
        let err = match (self.err, rhs.err) {
            (None, None) => None,
            _ => Some(
                self.value.norm() * rhs.err.unwrap_or(0.0)
                    + rhs.value.norm() * self.err.unwrap_or(0.0)
                    + extra,
            ),
        };
        CVal {
            value: self.value * rhs.value,
            err,
        }
    }
}

impl std::ops::Div for CVal {
    type Output = CVal;
    fn div(self, rhs: CVal) -> CVal {
        let value = self.value / rhs.value;
        let err = match (self.err, rhs.err) {
            (None, None) => None,
            _ => {
                let d = rhs.value.norm();
                Some(
                    (self.err.unwrap_or(0.0) + value.norm() * rhs.err.unwrap_or(0.0))
                        / d.max(f64::MIN_POSITIVE),
                )
            }
        };
        CVal { value, err }
    }
}

impl std::ops::Neg for CVal {
    type Output = CVal;
    fn neg(self) -> CVal {
        CVal {
            value: -self.value,
            err: self.err,
        }
    }
}

impl std::ops::Mul<C64> for CVal {
    type Output = CVal;
    fn mul(self, rhs: C64) -> CVal {
        CVal {
            value: self.value * rhs,
            err: self.err.map(|e| e * rhs.norm()),
        }
    }
}

impl std::fmt::Display for CVal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let im = if self.value.im == 0.0 {
            0.0
        } else {
            self.value.im
        };
        if im.is_sign_negative() {
            write!(f, "{:.15e}{:.15e}i", self.value.re, im)
        } else {
            write!(f, "{:.15e}+{:.15e}i", self.value.re, im)
        }
    }
}

/// Integer power by binary exponentiation; negative exponents go through the
/// reciprocal. Deterministic, avoids polar-form rounding of `powf`.
pub fn cpowi(z: C64, n: i64) -> C64 {
    if n == 0 {
        return C64::new(1.0, 0.0);
    }
    let (mut base, mut e) = if n < 0 {
        (C64::new(1.0, 0.0) / z, (-n) as u64)
    } else {
        (z, n as u64)
    };
    let mut acc = C64::new(1.0, 0.0);
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

/// Principal complex power exp(alpha * Log z).
pub fn cpow(z: C64, alpha: C64) -> C64 {
    if z == C64::new(0.0, 0.0) {
        return if alpha == C64::new(0.0, 0.0) {
            C64::new(1.0, 0.0)
        } else {
            C64::new(0.0, 0.0)
        };
    }
    (alpha * z.ln()).exp()
}

/// The base q with |q| < 1, optionally tied to tau with q = exp(2 pi i tau).
///
/// When constructed from q directly, tau is derived from the principal
/// logarithm, so for real q in (0,1) every fractional power q^alpha taken
/// through [`Modulus::q_pow`] is the positive real root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Modulus {
    q: C64,
    tau: C64,
}

impl Modulus {
    pub fn from_q(q: C64) -> Result<Self> {
        if !(q.re.is_finite() && q.im.is_finite()) {
            return Err(QError::InvalidModulus("q must be finite".into()));
        }
        let n = q.norm();
        if n <= 0.0 || n >= 1.0 {
            return Err(QError::InvalidModulus(format!(
                "|q| must lie strictly in (0,1), got |q| = {n}"
            )));
        }
        // tau = Log q / (2 pi i); Im tau > 0 follows from |q| < 1
        let tau = q.ln() / (C64::new(0.0, 2.0 * PI));
        Ok(Modulus { q, tau })
    }

    pub fn from_real(q: f64) -> Result<Self> {
        Self::from_q(C64::new(q, 0.0))
    }

    pub fn from_tau(tau: C64) -> Result<Self> {
        if tau.im <= 0.0 {
            return Err(QError::InvalidModulus(format!(
                "Im(tau) must be positive, got {}",
                tau.im
            )));
        }
        let q = (C64::new(0.0, 2.0 * PI) * tau).exp();
        Ok(Modulus { q, tau })
    }

    pub fn q(&self) -> C64 {
        self.q
    }

    pub fn tau(&self) -> C64 {
        self.tau
    }

    /// q^n for integer n.
    pub fn q_powi(&self, n: i64) -> C64 {
        cpowi(self.q, n)
    }

    /// Principal q^alpha = exp(alpha * Log q).
    pub fn q_pow(&self, alpha: C64) -> C64 {
        cpow(self.q, alpha)
    }

    /// Modulus q^k (tau scaled by k).
    pub fn pow_int(&self, k: u32) -> Self {
        Modulus {
            q: cpowi(self.q, k as i64),
            tau: self.tau * k as f64,
        }
    }

    /// Modulus q^{1/k} on the principal branch (tau scaled by 1/k).
    pub fn root(&self, k: u32) -> Result<Self> {
        Modulus::from_tau(self.tau / k as f64)
    }
}

/// Truncation policy for series and infinite products.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SummationPolicy {
    /// Relative threshold against the running maximum partial-sum magnitude.
    pub rel_tol: f64,
    /// Hard cap on the number of terms per directional pass.
    pub max_terms: usize,
    /// Consecutive below-threshold terms required to stop.
    pub small_run: usize,
    /// Consecutive strictly growing term magnitudes tolerated before the pass
    /// is declared non-convergent. Theta-weighted series can grow for
    /// O(log(scale)/log(1/|q|)) leading terms before the q^{n^2} decay wins,
    /// so this is deliberately larger than `small_run`.
    pub growth_run: usize,
}

impl Default for SummationPolicy {
    fn default() -> Self {
        SummationPolicy {
            rel_tol: 1e-16,
            max_terms: 4000,
            small_run: 3,
            growth_run: 16,
        }
    }
}

impl SummationPolicy {
    pub fn validated(self) -> Result<Self> {
        if !(self.rel_tol > 0.0) {
            return Err(QError::InvalidPolicy("rel_tol must be > 0".into()));
        }
        if self.max_terms == 0 {
            return Err(QError::InvalidPolicy("max_terms must be >= 1".into()));
        }
        if self.small_run < 2 {
            return Err(QError::InvalidPolicy("small_run must be >= 2".into()));
        }
        Ok(self)
    }
}

/// Hard ceiling on term magnitudes; any legitimate transient in the |q| <= 0.5
/// regime stays far below this, so crossing it means the series diverges.
const TERM_EXPLOSION: f64 = 1e120;

fn check_finite(z: C64, what: &str) -> Result<C64> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(QError::NonFinite(what.into()))
    }
}

/// Sum of term(0) + term(1) + ... under the stopping policy.
///
/// Stops once `small_run` consecutive terms fall at or below
/// `rel_tol * max |partial sum|`; the reported error dominates the magnitude
/// of the first omitted term. An all-zero stream sums to exactly 0.
pub fn sum_unilateral<F>(term: F, policy: &SummationPolicy) -> Result<CVal>
where
    F: FnMut(usize) -> Result<C64>,
{
    sum_directional(term, policy, Direction::Forward)
}

fn sum_directional<F>(mut term: F, policy: &SummationPolicy, direction: Direction) -> Result<CVal>
where
    F: FnMut(usize) -> Result<C64>,
{
    let policy = policy.validated()?;
    let mut sum = C64::new(0.0, 0.0);
    let mut scale = 0.0f64;
    let mut small = 0usize;
    let mut grow = 0usize;
    let mut prev_mag: Option<f64> = None;

    for n in 0..policy.max_terms {
        let t = check_finite(term(n)?, "series term")?;
        sum += t;
        let tm = t.norm();
        scale = scale.max(sum.norm());

        if let Some(p) = prev_mag {
            if tm > p {
                grow += 1;
                if tm > TERM_EXPLOSION || grow >= policy.growth_run {
                    return Err(QError::non_convergent(
                        direction,
                        n + 1,
                        "term magnitudes keep growing",
                    ));
                }
            } else {
                grow = 0;
            }
        }
        prev_mag = Some(tm);

        // The zero-scale guard keeps leading zero coefficients (monomials,
        // lattice-truncated tails) from triggering a premature stop.
        if scale > 0.0 && tm <= policy.rel_tol * scale {
            small += 1;
            if small >= policy.small_run {
                let next = check_finite(term(n + 1)?, "series term")?;
                let err = next.norm() + f64::EPSILON * scale * (n as f64 + 2.0);
                return Ok(CVal::with_err(sum, err));
            }
        } else {
            small = 0;
        }
    }

    if scale == 0.0 {
        // every term was exactly zero
        return Ok(CVal::with_err(sum, 0.0));
    }
    Err(QError::non_convergent(
        direction,
        policy.max_terms,
        "max_terms reached",
    ))
}

/// Bilateral sum over all integers: two independent unilateral passes
/// (n = 0,1,2,... and n = -1,-2,...) under the same stopping rule.
pub fn sum_bilateral<F>(mut term: F, policy: &SummationPolicy) -> Result<CVal>
where
    F: FnMut(i64) -> Result<C64>,
{
    let fwd = sum_directional(|n| term(n as i64), policy, Direction::Forward)?;
    let bwd = sum_directional(|n| term(-1 - n as i64), policy, Direction::Backward)?;
    Ok(CVal::with_err(
        fwd.value + bwd.value,
        fwd.err_or_zero() + bwd.err_or_zero(),
    ))
}

/// Infinite product result. An exact zero factor is a legal value and is
/// reported through `zero_factor` so callers can treat lattice hits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfProd {
    pub value: CVal,
    pub zero_factor: Option<usize>,
}

/// Product of factor(0) * factor(1) * ... Terminates once `small_run`
/// consecutive factors satisfy |factor - 1| <= rel_tol; the error estimate
/// comes from the log-tail bound sum |factor - 1| of the omitted factors.
pub fn prod_infinite<F>(mut factor: F, policy: &SummationPolicy) -> Result<InfProd>
where
    F: FnMut(usize) -> Result<C64>,
{
    let policy = policy.validated()?;
    let mut prod = C64::new(1.0, 0.0);
    let mut run = 0usize;

    for n in 0..policy.max_terms {
        let f = check_finite(factor(n)?, "product factor")?;
        if f == C64::new(0.0, 0.0) {
            return Ok(InfProd {
                value: CVal::with_err(C64::new(0.0, 0.0), 0.0),
                zero_factor: Some(n),
            });
        }
        prod *= f;
        check_finite(prod, "partial product")?;

        if (f - 1.0).norm() <= policy.rel_tol {
            run += 1;
            if run >= policy.small_run {
                let next = check_finite(factor(n + 1)?, "product factor")?;
                // geometric tail bound, factor 2 covers ratios up to 1/2
                let rel_err = 2.0 * (next - 1.0).norm() + f64::EPSILON * (n as f64 + 2.0);
                return Ok(InfProd {
                    value: CVal::with_err(prod, prod.norm() * rel_err),
                    zero_factor: None,
                });
            }
        } else {
            run = 0;
        }
    }

    Err(QError::non_convergent(
        Direction::Forward,
        policy.max_terms,
        "product factors did not settle at 1",
    ))
}

/// Finds n with |x - q^n| < delta * |q^n|, scanning the integer window where
/// |q^n| is within a factor ~4 of |x|. Returns `None` for x = 0.
pub fn near_lattice(x: C64, q: &Modulus, delta: f64) -> Option<i64> {
    let xn = x.norm();
    if xn == 0.0 || !xn.is_finite() {
        return None;
    }
    let qn = q.q().norm();
    let center = xn.ln() / qn.ln();
    if !center.is_finite() || center.abs() > 1e6 {
        return None;
    }
    let lo = center.floor() as i64 - 2;
    let hi = center.ceil() as i64 + 2;
    for n in lo..=hi {
        let p = q.q_powi(n);
        if (x - p).norm() < delta * p.norm() {
            return Some(n);
        }
    }
    None
}

/// Default relative tolerance for lattice-proximity pole detection.
pub const LATTICE_DELTA: f64 = 1e-10;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::QError;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn zero_terms_sum_to_zero() {
        let policy = SummationPolicy::default();
        let v = sum_unilateral(|_| Ok(c(0.0, 0.0)), &policy).unwrap();
        assert_eq!(v.value, c(0.0, 0.0));
    }

    #[test]
    fn geometric_series() {
        let policy = SummationPolicy::default();
        let v = sum_unilateral(|n| Ok(cpowi(c(0.5, 0.0), n as i64)), &policy).unwrap();
        assert!((v.value - 2.0).norm() <= 1e-14);
    }

    #[test]
    fn gaussian_series_matches_direct_oracle() {
        // oracle: 60-term direct partial sum of q^{n^2} at q = 0.3
        let q = 0.3f64;
        let mut oracle = 0.0;
        for n in 0..60 {
            oracle += q.powi((n * n) as i32);
        }
        assert!((oracle - 1.3081196873047571).abs() < 1e-15);
        let policy = SummationPolicy::default();
        let v = sum_unilateral(|n| Ok(c(q.powi((n * n) as i32), 0.0)), &policy).unwrap();
        assert!((v.value.re - oracle).abs() <= 1e-15);
    }

    #[test]
    fn bilateral_zero_and_theta_window_oracle() {
        let policy = SummationPolicy::default();
        let v = sum_bilateral(|_| Ok(c(0.0, 0.0)), &policy).unwrap();
        assert_eq!(v.value, c(0.0, 0.0));

        // theta sum at x = 0.7, q = 0.2 against a 40-term symmetric window
        let x = c(0.7, 0.0);
        let q = c(0.2, 0.0);
        let mut oracle = c(0.0, 0.0);
        for n in -40i64..=40 {
            let e = n * (n - 1) / 2;
            oracle += cpowi(-x, n) * cpowi(q, e);
        }
        let v = sum_bilateral(
            |n| {
                let e = n * (n - 1) / 2;
                Ok(cpowi(-x, n) * cpowi(q, e))
            },
            &policy,
        )
        .unwrap();
        assert!((v.value - oracle).norm() <= 1e-15);
        assert!((v.value.re - 0.1256974314641777).abs() < 1e-15);
    }

    #[test]
    fn bilateral_reports_offending_direction() {
        let policy = SummationPolicy::default();
        let err = sum_bilateral(
            |n| {
                if n >= 0 {
                    Ok(c(0.0, 0.0))
                } else {
                    Ok(cpowi(c(2.0, 0.0), -n))
                }
            },
            &policy,
        )
        .unwrap_err();
        match err {
            QError::NonConvergent { direction, .. } => {
                assert_eq!(direction, crate::error::Direction::Backward)
            }
            other => panic!("expected NonConvergent, got {other:?}"),
        }
    }

    #[test]
    fn product_oracles() {
        let policy = SummationPolicy::default();
        let one = prod_infinite(|_| Ok(c(1.0, 0.0)), &policy).unwrap();
        assert_eq!(one.value.value, c(1.0, 0.0));

        // oracle: 200-factor direct product of (1 - 0.5 * 0.1^n)
        let mut oracle = 1.0f64;
        for n in 0..200 {
            oracle *= 1.0 - 0.5 * 0.1f64.powi(n);
        }
        assert!((oracle - 0.4723624438165722).abs() < 1e-15);
        let v = prod_infinite(|n| Ok(c(1.0 - 0.5 * 0.1f64.powi(n as i32), 0.0)), &policy).unwrap();
        assert!((v.value.value.re - oracle).abs() <= 1e-15);
        assert!(v.zero_factor.is_none());

        let z = prod_infinite(
            |n| Ok(if n == 0 { c(0.0, 0.0) } else { c(1.0, 0.0) }),
            &policy,
        )
        .unwrap();
        assert_eq!(z.value.value, c(0.0, 0.0));
        assert_eq!(z.zero_factor, Some(0));
    }

    #[test]
    fn product_error_bound_holds_under_tighter_tolerance() {
        let coarse = SummationPolicy {
            rel_tol: 1e-8,
            ..SummationPolicy::default()
        };
        let fine = SummationPolicy {
            rel_tol: 1e-9,
            ..SummationPolicy::default()
        };
        let f = |n: usize| Ok(c(1.0 - 0.8 * 0.45f64.powi(n as i32), 0.0));
        let a = prod_infinite(f, &coarse).unwrap();
        let b = prod_infinite(f, &fine).unwrap();
        assert!((a.value.value - b.value.value).norm() < a.value.err_or_zero());
    }

    #[test]
    fn growth_detection_fires() {
        let policy = SummationPolicy::default();
        let err = sum_unilateral(|n| Ok(cpowi(c(2.0, 0.0), n as i64)), &policy).unwrap_err();
        assert!(matches!(err, QError::NonConvergent { .. }));
    }

    #[test]
    fn transient_growth_is_tolerated() {
        // q^{n(n-1)/2} / y^n with tiny y grows for several leading terms
        let policy = SummationPolicy::default();
        let q = c(0.15, 0.0);
        let y = c(2.5e-4, 0.0);
        let v = sum_unilateral(
            |n| {
                let n = n as i64;
                Ok(cpowi(q, n * (n - 1) / 2) / cpowi(y, n))
            },
            &policy,
        )
        .unwrap();
        assert!(v.is_finite());
    }

    #[test]
    fn near_lattice_examples() {
        let q = Modulus::from_real(0.2).unwrap();
        let q3 = q.q_powi(3);
        assert_eq!(near_lattice(q3, &q, 1e-10), Some(3));
        let half_step = q.q_pow(c(0.5, 0.0));
        assert_eq!(near_lattice(half_step, &q, 1e-6), None);
        let perturbed = q3 * c(1.0 + 1e-12, 0.0);
        assert_eq!(near_lattice(perturbed, &q, 1e-9), Some(3));
        assert_eq!(near_lattice(c(0.0, 0.0), &q, 1e-9), None);
        // negative lattice side
        assert_eq!(near_lattice(q.q_powi(-2), &q, 1e-10), Some(-2));
    }

    #[test]
    fn modulus_invariants() {
        assert!(Modulus::from_real(1.0).is_err());
        assert!(Modulus::from_real(0.0).is_err());
        assert!(Modulus::from_q(c(0.8, 0.7)).is_err());
        let m = Modulus::from_real(0.2).unwrap();
        assert!(m.tau().im > 0.0);
        // from_tau round-trips q
        let m2 = Modulus::from_tau(m.tau()).unwrap();
        assert!((m2.q() - m.q()).norm() < 1e-15);
        // q^{1/5} via root is the positive real fifth root
        let r = m.root(5).unwrap();
        assert!((r.q().re - 0.2f64.powf(0.2)).abs() < 1e-15);
        assert!(r.q().im.abs() < 1e-16);
    }

    #[test]
    fn determinism() {
        let policy = SummationPolicy::default();
        let f = |n: usize| {
            let n = n as i64;
            Ok(cpowi(c(0.31, 0.12), n) * cpowi(c(0.5, 0.0), n * (n - 1) / 2))
        };
        let a = sum_unilateral(f, &policy).unwrap();
        let b = sum_unilateral(f, &policy).unwrap();
        assert_eq!(a.value, b.value);
        assert_eq!(a.err, b.err);
    }

    proptest! {
        #[test]
        fn bilateral_reduces_to_unilateral(re in -0.6f64..0.6, im in -0.6f64..0.6) {
            let policy = SummationPolicy::default();
            let z = c(re, im);
            let uni = sum_unilateral(|n| Ok(cpowi(z, n as i64)), &policy).unwrap();
            let bi = sum_bilateral(
                |n| Ok(if n < 0 { c(0.0, 0.0) } else { cpowi(z, n) }),
                &policy,
            )
            .unwrap();
            prop_assert_eq!(uni.value, bi.value);
        }
    }
}
