//! Laplace-type q-difference operators with affine coefficients, their
//! Newton-Puiseux diagrams, the catalog of the six most degenerate equations,
//! and the gauge transformations expressing their solutions through solutions
//! of the normalized Ramanujan equation [T^2 - T - xq] v = 0.

use std::collections::BTreeSet;

use crate::error::{QError, Result};
use crate::mu::{self, MuPoint, MuRep};
use crate::numerics::{CVal, Modulus, SummationPolicy, C64};
use crate::qcore::{self, ThetaRep};

/// One affine coefficient c + d x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineCoeff {
    pub constant: C64,
    pub linear: C64,
}

impl AffineCoeff {
    pub fn new(constant: C64, linear: C64) -> Self {
        AffineCoeff { constant, linear }
    }

    pub fn zero() -> Self {
        AffineCoeff::new(C64::new(0.0, 0.0), C64::new(0.0, 0.0))
    }

    pub fn at(&self, x: C64) -> C64 {
        self.constant + self.linear * x
    }
}

/// Second-order Laplace-type operator a_2(x) T^2 + a_1(x) T + a_0(x) with
/// affine a_l and T f(x) = f(qx).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaplaceOperator {
    pub t2: AffineCoeff,
    pub t1: AffineCoeff,
    pub t0: AffineCoeff,
}

impl LaplaceOperator {
    pub fn new(t2: AffineCoeff, t1: AffineCoeff, t0: AffineCoeff) -> Result<Self> {
        let op = LaplaceOperator { t2, t1, t0 };
        if [t2, t1, t0]
            .iter()
            .all(|a| a.constant == C64::new(0.0, 0.0) && a.linear == C64::new(0.0, 0.0))
        {
            return Err(QError::Domain(
                "operator must have a nonzero coefficient".into(),
            ));
        }
        Ok(op)
    }

    /// [T^2 - T - q x y], the Ramanujan equation with parameter y.
    pub fn ramanujan(y: C64, q: &Modulus) -> Self {
        LaplaceOperator {
            t2: AffineCoeff::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0)),
            t1: AffineCoeff::new(C64::new(-1.0, 0.0), C64::new(0.0, 0.0)),
            t0: AffineCoeff::new(C64::new(0.0, 0.0), -q.q() * y),
        }
    }

    /// [T^2 - T - x q], the normalized Ramanujan equation.
    pub fn ramanujan_normalized(q: &Modulus) -> Self {
        Self::ramanujan(C64::new(1.0, 0.0), q)
    }

    /// [T^2 - (1 - a x) T - x], the q-Hermite-Weber equation.
    pub fn q_hermite_weber(a: C64) -> Self {
        LaplaceOperator {
            t2: AffineCoeff::new(C64::new(1.0, 0.0), C64::new(0.0, 0.0)),
            t1: AffineCoeff::new(C64::new(-1.0, 0.0), a),
            t0: AffineCoeff::new(C64::new(0.0, 0.0), C64::new(-1.0, 0.0)),
        }
    }

    /// [(c - abqx) T^2 - (c + q - (a+b)qx) T + q(1 - x)], the Heine equation.
    pub fn heine(a: C64, b: C64, c: C64, q: &Modulus) -> Self {
        let qv = q.q();
        LaplaceOperator {
            t2: AffineCoeff::new(c, -a * b * qv),
            t1: AffineCoeff::new(-(c + qv), (a + b) * qv),
            t0: AffineCoeff::new(qv, -qv),
        }
    }
}

/// Residual of an operator applied to an evaluator, with the magnitude of the
/// largest term as the natural scale.
#[derive(Debug, Clone, Copy)]
pub struct OperatorResidual {
    pub value: C64,
    pub scale: f64,
}

impl OperatorResidual {
    pub fn rel(&self) -> f64 {
        self.value.norm() / self.scale.max(1e-300)
    }
}

/// sum_l a_l(x) f(q^l x).
pub fn residual(
    op: &LaplaceOperator,
    f: impl Fn(C64) -> Result<CVal>,
    x: C64,
    q: &Modulus,
) -> Result<OperatorResidual> {
    let qv = q.q();
    let t2 = op.t2.at(x) * f(qv * qv * x)?.value;
    let t1 = op.t1.at(x) * f(qv * x)?.value;
    let t0 = op.t0.at(x) * f(x)?.value;
    Ok(OperatorResidual {
        value: t2 + t1 + t0,
        scale: t2.norm().max(t1.norm()).max(t0.norm()),
    })
}

/// The Newton-Puiseux diagram: exponent pairs (k, l) with a nonzero
/// coefficient of x^k in a_l.
pub fn newton_puiseux(op: &LaplaceOperator) -> BTreeSet<(i64, i64)> {
    let mut set = BTreeSet::new();
    for (l, a) in [(0i64, op.t0), (1, op.t1), (2, op.t2)] {
        if a.constant != C64::new(0.0, 0.0) {
            set.insert((0, l));
        }
        if a.linear != C64::new(0.0, 0.0) {
            set.insert((1, l));
        }
    }
    set
}

/// The six most degenerate Laplace-type equations (beyond constant
/// coefficients), indexed 1..=6:
///
/// ```text
/// v1: [a T^2 -    T - bxq]      v2: [axq T^2 -    T - b]
/// v3: [axq T^2 -  T - bxq]      v4: [a T^2 - xq T - bxq]
/// v5: [axq T^2 - xq T - b]      v6: [a T^2 - xq T - b]
/// ```
pub fn catalog(a: C64, b: C64, q: &Modulus) -> Result<[LaplaceOperator; 6]> {
    if a == C64::new(0.0, 0.0) || b == C64::new(0.0, 0.0) {
        return Err(QError::Domain("catalog parameters must be nonzero".into()));
    }
    let qv = q.q();
    let zero = C64::new(0.0, 0.0);
    let m1 = C64::new(-1.0, 0.0);
    let cc = AffineCoeff::new;
    Ok([
        LaplaceOperator {
            t2: cc(a, zero),
            t1: cc(m1, zero),
            t0: cc(zero, -b * qv),
        },
        LaplaceOperator {
            t2: cc(zero, a * qv),
            t1: cc(m1, zero),
            t0: cc(-b, zero),
        },
        LaplaceOperator {
            t2: cc(zero, a * qv),
            t1: cc(m1, zero),
            t0: cc(zero, -b * qv),
        },
        LaplaceOperator {
            t2: cc(a, zero),
            t1: cc(zero, -qv),
            t0: cc(zero, -b * qv),
        },
        LaplaceOperator {
            t2: cc(zero, a * qv),
            t1: cc(zero, -qv),
            t0: cc(-b, zero),
        },
        LaplaceOperator {
            t2: cc(a, zero),
            t1: cc(zero, -qv),
            t0: cc(-b, zero),
        },
    ])
}

/// Modulus at which the base solution of the normalized Ramanujan equation
/// must live for catalog equation k: q^2 for the squared-argument gauges
/// v3 and v6, q otherwise.
pub fn gauge_modulus(k: usize, q: &Modulus) -> Modulus {
    match k {
        3 | 6 => q.pow_int(2),
        _ => *q,
    }
}

/// Value of the gauge-transformed solution v_k at x, built from a solution
/// evaluator `base` of [T^2 - T - xq] v = 0 at [`gauge_modulus`]:
///
/// ```text
/// v1(x) = theta(-ax)/theta(-x) v0(abx)      v2(x) = theta(-ax)   v0(abx/q)
/// v3(x) = theta(-ax)  v0(abx^2/q; q^2)      v4(x) = theta(x/b)/theta(-x) v0(ab/x)
/// v5(x) = theta(xq/b) v0(ab/(xq))           v6(x) = theta(xq/b)  v0(ab/(x^2 q); q^2)
/// ```
pub fn gauge_solution(
    k: usize,
    a: C64,
    b: C64,
    x: C64,
    q: &Modulus,
    base: impl Fn(C64) -> Result<CVal>,
    policy: &SummationPolicy,
) -> Result<CVal> {
    let qv = q.q();
    let th = |w: C64| -> Result<C64> { Ok(qcore::theta(w, q, ThetaRep::Product, policy)?.value) };
    let v = match k {
        1 => {
            let d = th(-x)?;
            if d.norm() == 0.0 {
                return Err(QError::PoleHit("theta(-x) vanishes".into()));
            }
            th(-a * x)? / d * base(a * b * x)?.value
        }
        2 => th(-a * x)? * base(a * b * x / qv)?.value,
        3 => th(-a * x)? * base(a * b * x * x / qv)?.value,
        4 => {
            let d = th(-x)?;
            if d.norm() == 0.0 {
                return Err(QError::PoleHit("theta(-x) vanishes".into()));
            }
            th(x / b)? / d * base(a * b / x)?.value
        }
        5 => th(x * qv / b)? * base(a * b / (x * qv))?.value,
        6 => th(x * qv / b)? * base(a * b / (x * x * qv))?.value,
        _ => return Err(QError::Domain(format!("catalog index {k} out of 1..=6"))),
    };
    Ok(CVal::new(v))
}

/// lmu(x/y_aux, y_aux) as a second solution of [T^2 - T - xq] in x, returned
/// together with the operator residual at x.
pub fn little_mu_solution(
    x: C64,
    y_aux: C64,
    q: &Modulus,
    policy: &SummationPolicy,
) -> Result<(CVal, OperatorResidual)> {
    let f = |z: C64| -> Result<CVal> {
        let p = MuPoint::new(z / y_aux, y_aux, q)?;
        mu::little_mu(&p, MuRep::Definition, policy)
    };
    let value = f(x)?;
    let op = LaplaceOperator::ramanujan_normalized(q);
    let resid = residual(&op, f, x, q)?;
    Ok((value, resid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyper;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn pol() -> SummationPolicy {
        SummationPolicy::default()
    }

    #[test]
    fn newton_puiseux_examples() {
        let q = Modulus::from_real(0.2).unwrap();
        let ram = LaplaceOperator::ramanujan(c(1.0, 0.0), &q);
        let expect: BTreeSet<_> = [(0, 2), (0, 1), (1, 0)].into_iter().collect();
        assert_eq!(newton_puiseux(&ram), expect);

        let constant = LaplaceOperator::new(
            AffineCoeff::new(c(1.0, 0.0), c(0.0, 0.0)),
            AffineCoeff::new(c(2.0, 0.0), c(0.0, 0.0)),
            AffineCoeff::new(c(3.0, 0.0), c(0.0, 0.0)),
        )
        .unwrap();
        assert!(newton_puiseux(&constant).iter().all(|&(k, _)| k == 0));

        let cat = catalog(c(0.7, 0.0), c(0.5, 0.0), &q).unwrap();
        let expect3: BTreeSet<_> = [(1, 2), (0, 1), (1, 0)].into_iter().collect();
        assert_eq!(newton_puiseux(&cat[2]), expect3);
    }

    #[test]
    fn catalog_diagrams() {
        let q = Modulus::from_real(0.2).unwrap();
        let cat = catalog(c(0.7, 0.0), c(0.5, 0.0), &q).unwrap();
        let sets: Vec<Vec<(i64, i64)>> = vec![
            vec![(0, 1), (0, 2), (1, 0)],
            vec![(0, 0), (0, 1), (1, 2)],
            vec![(0, 1), (1, 0), (1, 2)],
            vec![(0, 2), (1, 0), (1, 1)],
            vec![(0, 0), (1, 1), (1, 2)],
            vec![(0, 0), (0, 2), (1, 1)],
        ];
        for (k, expect) in sets.into_iter().enumerate() {
            let got = newton_puiseux(&cat[k]);
            let expect: BTreeSet<_> = expect.into_iter().collect();
            assert_eq!(got, expect, "v{}", k + 1);
        }
        assert!(catalog(c(0.0, 0.0), c(0.5, 0.0), &q).is_err());
    }

    #[test]
    fn operator_constructors_match_displays() {
        let q = Modulus::from_real(0.2).unwrap();
        let cat = catalog(c(0.7, 0.0), c(0.5, 0.0), &q).unwrap();
        // v1 = [aT^2 - T - bxq], v6 = [aT^2 - xqT - b]
        assert_eq!(cat[0].t2.at(c(2.0, 0.0)), c(0.7, 0.0));
        assert_eq!(cat[0].t1.at(c(2.0, 0.0)), c(-1.0, 0.0));
        assert_eq!(cat[0].t0.at(c(2.0, 0.0)), c(-0.5 * 0.2 * 2.0, 0.0));
        assert_eq!(cat[5].t2.at(c(2.0, 0.0)), c(0.7, 0.0));
        assert_eq!(cat[5].t1.at(c(2.0, 0.0)), c(-0.2 * 2.0, 0.0));
        assert_eq!(cat[5].t0.at(c(2.0, 0.0)), c(-0.5, 0.0));
    }

    #[test]
    fn ramanujan_solutions_annihilate() {
        let q = Modulus::from_real(0.2).unwrap();
        // [T^2 - T - qxy] on f0(xy) in x
        let y = c(1.3, 0.0);
        let op = LaplaceOperator::ramanujan(y, &q);
        let f = |z: C64| hyper::ramanujan_entire(z * y, &q, &pol());
        let r = residual(&op, f, c(0.5, 0.0), &q).unwrap();
        assert!(r.rel() <= 1e-10, "f0 residual rel = {}", r.rel());

        // same operator on lmu(x, y) in x
        let f = |z: C64| mu::little_mu(&MuPoint::new(z, y, &q).unwrap(), MuRep::Definition, &pol());
        let r = residual(&op, f, c(0.5, 0.0), &q).unwrap();
        assert!(r.rel() <= 1e-10, "lmu residual rel = {}", r.rel());
    }

    #[test]
    fn q_hermite_weber_solution() {
        // g0(x; a) = (ax)_inf/theta(x) 0phi1(-; ax; q, xq) solves
        // [T^2 - (1-ax)T - x] at generic a and at a = q^2
        let q = Modulus::from_real(0.2).unwrap();
        for a in [c(0.7, 0.0), q.q_powi(2)] {
            let op = LaplaceOperator::q_hermite_weber(a);
            let g0 = |z: C64| -> Result<CVal> {
                let p = crate::qcore::qpoch(a * z, &q, crate::qcore::PochIndex::Infinite, &pol())?;
                let th = qcore::theta(z, &q, ThetaRep::Product, &pol())?;
                let series = hyper::phi(
                    &hyper::HyperSpec::new(vec![], vec![a * z], q, z * q.q()),
                    &pol(),
                )?;
                Ok(series * (p.value / th.value))
            };
            let r = residual(&op, g0, c(0.5, 0.0), &q).unwrap();
            assert!(r.rel() <= 1e-10, "a = {a}: rel = {}", r.rel());
        }
    }

    #[test]
    fn gauge_solutions_annihilated_by_catalog() {
        let q = Modulus::from_real(0.2).unwrap();
        let (a, b, x) = (c(0.7, 0.0), c(0.5, 0.0), c(0.4, 0.0));
        let cat = catalog(a, b, &q).unwrap();
        for k in 1..=6usize {
            let qk = gauge_modulus(k, &q);
            let base = |z: C64| hyper::ramanujan_entire(z, &qk, &pol());
            let v = |z: C64| gauge_solution(k, a, b, z, &q, base, &pol());
            let r = residual(&cat[k - 1], v, x, &q).unwrap();
            assert!(r.rel() <= 1e-9, "v{k}: rel = {}", r.rel());
        }
    }

    #[test]
    fn little_mu_second_solution() {
        let q = Modulus::from_real(0.2).unwrap();
        let (_, r) = little_mu_solution(c(0.5, 0.0), c(1.3, 0.0), &q, &pol()).unwrap();
        assert!(r.rel() <= 1e-10, "rel = {}", r.rel());

        // y -> 1: theta(y) lmu(x/y, y) -> i q^{-1/8} f0(x), via the symmetric
        // Richardson pair
        let x = c(0.5, 0.0);
        let sample = |h: f64| -> C64 {
            let mut acc = c(0.0, 0.0);
            for s in [1.0f64, -1.0] {
                let y = c(1.0 + s * h, 0.0);
                let v = mu::little_mu(
                    &MuPoint::new(x / y, y, &q).unwrap(),
                    MuRep::Definition,
                    &pol(),
                )
                .unwrap()
                .value;
                acc += qcore::theta(y, &q, ThetaRep::Product, &pol())
                    .unwrap()
                    .value
                    * v;
            }
            acc / 2.0
        };
        let extrap = (sample(5e-4) * 4.0 - sample(1e-3)) / 3.0;
        let rhs = C64::new(0.0, 1.0)
            * q.q_pow(c(-0.125, 0.0))
            * hyper::ramanujan_entire(x, &q, &pol()).unwrap().value;
        assert!((extrap - rhs).norm() <= 1e-7 * rhs.norm());

        // two distinct y_aux give solutions with a nonzero Casoratian against f0
        let casoratian = |y_aux: C64| -> C64 {
            let f = |z: C64| hyper::ramanujan_entire(z, &q, &pol()).unwrap().value;
            let g = |z: C64| {
                mu::little_mu(
                    &MuPoint::new(z / y_aux, y_aux, &q).unwrap(),
                    MuRep::Definition,
                    &pol(),
                )
                .unwrap()
                .value
            };
            let x = c(0.5, 0.0);
            f(x / q.q()) * g(x) - f(x) * g(x / q.q())
        };
        assert!(casoratian(c(1.3, 0.0)).norm() > 1e-6);
        assert!(casoratian(c(1.9, 0.0)).norm() > 1e-6);
    }

    #[test]
    fn residual_is_linear_in_f() {
        let q = Modulus::from_real(0.2).unwrap();
        let op = LaplaceOperator::ramanujan(c(1.1, 0.0), &q);
        let f = |z: C64| -> Result<CVal> { Ok(CVal::new(z * z + 1.0)) };
        let g = |z: C64| -> Result<CVal> { Ok(CVal::new(z.exp())) };
        let (alpha, beta) = (c(1.3, -0.4), c(0.2, 2.0));
        let combo =
            |z: C64| -> Result<CVal> { Ok(CVal::new(alpha * f(z)?.value + beta * g(z)?.value)) };
        let x = c(0.6, 0.1);
        let rc = residual(&op, combo, x, &q).unwrap().value;
        let rf = residual(&op, f, x, &q).unwrap().value;
        let rg = residual(&op, g, x, &q).unwrap().value;
        assert!((rc - (alpha * rf + beta * rg)).norm() <= 1e-13 * rc.norm().max(1.0));
    }
}
