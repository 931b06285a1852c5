//! q-shifted factorials for every index type, the Jacobi theta function with
//! an explicit modulus, q-binomial coefficients, and the Dedekind eta function.
//!
//! Conventions:
//!
//! ```text
//! (x;q)_inf  = prod_{n>=0} (1 - x q^n)
//! (x;q)_n    = prod_{k=0}^{n-1} (1 - x q^k)            (n >= 0)
//! (x;q)_{-m} = 1 / prod_{k=1}^{m} (1 - x q^{-k})       (m > 0)
//! (x;q)_a    = (x;q)_inf / (q^a x;q)_inf               (principal branch of q^a)
//! theta(x;q) = (x;q)_inf (q/x;q)_inf
//!            = (1/(q;q)_inf) sum_{n in Z} (-x)^n q^{n(n-1)/2}
//! ```
//!
//! A zero parameter is the empty case: (0;q)_n = 1 for every index, which the
//! product forms produce without special handling.

use crate::error::{QError, Result};
use crate::numerics::{
    cpowi, prod_infinite, sum_bilateral, CVal, InfProd, Modulus, SummationPolicy, C64,
    LATTICE_DELTA,
};

/// Index of a q-shifted factorial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PochIndex {
    Int(i64),
    Frac(C64),
    Infinite,
}

/// (x;q)_inf with the zero-factor flag preserved (an exact lattice hit is the
/// legal value 0, flagged so callers dividing by it can raise PoleHit instead).
pub fn qpoch_inf_flagged(x: C64, q: &Modulus, policy: &SummationPolicy) -> Result<InfProd> {
    let qv = q.q();
    let mut p = C64::new(1.0, 0.0);
    prod_infinite(
        move |_| {
            let f = 1.0 - x * p;
            p *= qv;
            Ok(f)
        },
        policy,
    )
}

/// q-shifted factorial (x;q)_idx.
pub fn qpoch(x: C64, q: &Modulus, idx: PochIndex, policy: &SummationPolicy) -> Result<CVal> {
    match idx {
        PochIndex::Int(n) if n >= 0 => {
            let mut p = C64::new(1.0, 0.0);
            let mut qk = C64::new(1.0, 0.0);
            for _ in 0..n {
                p *= 1.0 - x * qk;
                qk *= q.q();
            }
            Ok(CVal::new(p))
        }
        PochIndex::Int(n) => {
            // 1 / prod_{k=1}^{-n} (1 - x q^{-k})
            let qinv = 1.0 / q.q();
            let mut p = C64::new(1.0, 0.0);
            let mut qk = C64::new(1.0, 0.0);
            for k in 1..=(-n) {
                qk *= qinv;
                let f = 1.0 - x * qk;
                if f.norm() < LATTICE_DELTA {
                    return Err(QError::PoleHit(format!(
                        "(x;q)_{{{n}}} has a vanishing factor at k = {k} (x near q^{k})"
                    )));
                }
                p *= f;
            }
            Ok(CVal::new(1.0 / p))
        }
        PochIndex::Infinite => {
            let p = qpoch_inf_flagged(x, q, policy)?;
            Ok(p.value)
        }
        PochIndex::Frac(alpha) => {
            let a = q.q_pow(alpha);
            let num = qpoch_inf_flagged(x, q, policy)?;
            let den = qpoch_inf_flagged(a * x, q, policy)?;
            if den.zero_factor.is_some() || den.value.norm() == 0.0 {
                return Err(QError::PoleHit(
                    "(q^a x;q)_inf vanishes in the fractional index denominator".into(),
                ));
            }
            Ok(num.value / den.value)
        }
    }
}

/// (a_1,...,a_r;q)_idx = prod_j (a_j;q)_idx. The empty list is 1.
pub fn qpoch_multi(
    xs: &[C64],
    q: &Modulus,
    idx: PochIndex,
    policy: &SummationPolicy,
) -> Result<CVal> {
    let mut acc = CVal::new(C64::new(1.0, 0.0));
    for &x in xs {
        acc = acc * qpoch(x, q, idx, policy)?;
    }
    Ok(acc)
}

/// Representation choice for [`theta`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ThetaRep {
    /// (x;q)_inf (q/x;q)_inf, the default; products avoid cancellation.
    Product,
    /// (1/(q;q)_inf) sum over Z of (-x)^n q^{n(n-1)/2}, via the triple product.
    Sum,
}

/// Jacobi theta function theta(x;q). Vanishes exactly on x in q^Z; a lattice
/// hit yields the value 0 (flagged internally through the zero factor), not an
/// error. The modulus is explicit so theta(.;q^5) is directly evaluable.
pub fn theta(x: C64, q: &Modulus, rep: ThetaRep, policy: &SummationPolicy) -> Result<CVal> {
    if x == C64::new(0.0, 0.0) {
        return Err(QError::Domain("theta argument must be nonzero".into()));
    }
    match rep {
        ThetaRep::Product => {
            let a = qpoch_inf_flagged(x, q, policy)?;
            if a.zero_factor.is_some() {
                return Ok(CVal::with_err(C64::new(0.0, 0.0), 0.0));
            }
            let b = qpoch_inf_flagged(q.q() / x, q, policy)?;
            if b.zero_factor.is_some() {
                return Ok(CVal::with_err(C64::new(0.0, 0.0), 0.0));
            }
            Ok(a.value * b.value)
        }
        ThetaRep::Sum => {
            let qv = q.q();
            let s = sum_bilateral(
                |n| {
                    // n(n-1)/2 is a nonnegative integer for every n in Z
                    let e = n * (n - 1) / 2;
                    Ok(cpowi(-x, n) * cpowi(qv, e))
                },
                policy,
            )?;
            let qq = qpoch_inf_flagged(qv, q, policy)?;
            Ok(s / qq.value)
        }
    }
}

/// q-binomial coefficient binom(alpha, beta)_q = (q)_alpha / ((q)_beta (q)_{alpha-beta})
/// through fractional q-shifted factorials; for nonnegative integers it equals
/// the Gaussian binomial.
pub fn qbinom(alpha: C64, beta: C64, q: &Modulus, policy: &SummationPolicy) -> Result<CVal> {
    let num = qpoch(q.q(), q, PochIndex::Frac(alpha), policy)?;
    let d1 = qpoch(q.q(), q, PochIndex::Frac(beta), policy)?;
    let d2 = qpoch(q.q(), q, PochIndex::Frac(alpha - beta), policy)?;
    let den = d1 * d2;
    if den.norm() == 0.0 {
        return Err(QError::PoleHit("q-binomial denominator vanishes".into()));
    }
    Ok(num / den)
}

/// Gaussian binomial for integer arguments as a finite product ratio.
/// Valid for any nonzero base, including |q| > 1 (used by the closed-form
/// q,t-Fibonacci sums at base 1/q). Returns 0 for k < 0 or k > n.
pub fn gaussian_binom(n: i64, k: i64, qv: C64) -> C64 {
    if k < 0 || k > n {
        return C64::new(0.0, 0.0);
    }
    let mut num = C64::new(1.0, 0.0);
    let mut den = C64::new(1.0, 0.0);
    for i in 1..=k {
        num *= 1.0 - cpowi(qv, n - k + i);
        den *= 1.0 - cpowi(qv, i);
    }
    num / den
}

/// Dedekind eta: q^{1/24} (q;q)_inf with q^{1/24} = exp(2 pi i tau / 24).
pub fn eta(q: &Modulus, policy: &SummationPolicy) -> Result<CVal> {
    let root = (C64::new(0.0, 2.0 * std::f64::consts::PI) * q.tau() / 24.0).exp();
    let p = qpoch(q.q(), q, PochIndex::Infinite, policy)?;
    Ok(p * root)
}
