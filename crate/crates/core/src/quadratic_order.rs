//! Imaginary quadratic fields `Q(sqrt(-m))`, lattices `<1, tau>` and their orders of
//! multipliers `R = <1, N tau>`.
//!
//! Ring elements are stored as coordinates `(x, y)` for `x + y * N * tau`. All arithmetic
//! goes through [`CurveParams`], which holds every integer constant derived from `tau`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Shape of the generator `omega` of the maximal order `Z[omega]`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OmegaCase {
    /// `omega = (1 + sqrt(-m)) / 2`, used when `m = 3 (mod 4)`.
    HalfIntegral,
    /// `omega = sqrt(-m)`.
    PureImaginary,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldParams {
    m: i64,
    omega_case: OmegaCase,
    m_prime: Option<i64>,
}

impl FieldParams {
    /// The field `Q(sqrt(-m))` for a square-free `m >= 1`.
    pub fn new(m: i64) -> Result<Self> {
        if m <= 0 {
            return Err(Error::NonPositiveM(m));
        }
        let mut d = 2i64;
        while d * d <= m {
            if m % (d * d) == 0 {
                return Err(Error::NotSquareFree { m, square: d * d });
            }
            d += 1;
        }
        let (omega_case, m_prime) = if m % 4 == 3 {
            (OmegaCase::HalfIntegral, Some((m + 1) / 4))
        } else {
            (OmegaCase::PureImaginary, None)
        };
        Ok(FieldParams { m, omega_case, m_prime })
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn omega_case(&self) -> OmegaCase {
        self.omega_case
    }

    /// `m'` with `4 m' - 1 = m`, only in the half-integral case.
    pub fn m_prime(&self) -> Option<i64> {
        self.m_prime
    }

    /// Discriminant of the maximal order.
    pub fn field_discriminant(&self) -> i64 {
        match self.omega_case {
            OmegaCase::HalfIntegral => -self.m,
            OmegaCase::PureImaginary => -4 * self.m,
        }
    }
}

/// A primitive integer quadratic `lead X^2 + lin X + constant`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntQuadratic {
    pub lead: BigInt,
    pub lin: BigInt,
    pub constant: BigInt,
}

impl IntQuadratic {
    pub fn discriminant(&self) -> BigInt {
        &self.lin * &self.lin - BigInt::from(4) * &self.lead * &self.constant
    }

    pub fn content(&self) -> BigInt {
        self.lead.gcd(&self.lin).gcd(&self.constant)
    }
}

impl fmt::Display for IntQuadratic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = [(&self.lead, "X^2"), (&self.lin, "X"), (&self.constant, "")];
        let mut first = true;
        for (coeff, mono) in terms {
            if coeff.is_zero() {
                continue;
            }
            let abs = coeff.abs();
            let sign = if coeff.is_negative() { "-" } else { "+" };
            if first {
                if coeff.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            if abs.is_one() && !mono.is_empty() {
                f.write_str(mono)?;
            } else {
                write!(f, "{abs}{mono}")?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// An element `x + y * N * tau` of the order `R`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RingElement {
    pub x: BigInt,
    pub y: BigInt,
}

impl RingElement {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        RingElement { x: x.into(), y: y.into() }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        RingElement::new(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.x, self.y)
    }
}

/// The lattice `<1, tau>` with `tau = (a + b omega) / c`, together with the constants of its
/// order of multipliers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveParams {
    field: FieldParams,
    a: BigInt,
    b: BigInt,
    c: BigInt,
    trace_num: BigInt,
    det_num: BigInt,
    g: BigInt,
    c_prime: BigInt,
    delta_prime: BigInt,
    n: BigInt,
    conductor: BigInt,
}

impl CurveParams {
    /// Builds the curve for `tau = (a + b omega) / c`. Inputs must already be canonical:
    /// `c > 0`, `b != 0` and `gcd(a, b, c) = 1`.
    pub fn new(
        field: FieldParams,
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
    ) -> Result<Self> {
        let (a, b, c) = (a.into(), b.into(), c.into());
        if b.is_zero() {
            return Err(Error::TauReal);
        }
        if !c.is_positive() {
            return Err(Error::NonPositiveDenominator(c.to_string()));
        }
        let content = a.gcd(&b).gcd(&c);
        if !content.is_one() {
            return Err(Error::TauNotPrimitive(content.to_string()));
        }

        let m = BigInt::from(field.m);
        let (trace_num, det_num) = match field.m_prime {
            Some(mp) => (
                BigInt::from(2) * &a + &b,
                &a * &a + &a * &b + &b * &b * BigInt::from(mp),
            ),
            None => (BigInt::from(2) * &a, &a * &a + &b * &b * m),
        };
        let g = c.gcd(&det_num);
        let c_prime = &c / &g;
        let delta_prime = &det_num / &g;
        let n = &c * &c / &g;
        let conductor = b.abs() * &c_prime;

        let curve = CurveParams {
            field,
            a,
            b,
            c,
            trace_num,
            det_num,
            g,
            c_prime,
            delta_prime,
            n,
            conductor,
        };
        curve.check_invariants()?;
        Ok(curve)
    }

    fn check_invariants(&self) -> Result<()> {
        if self.n != &self.g * &self.c_prime * &self.c_prime {
            return Err(Error::Invariant(format!("N = {} != g c'^2", self.n)));
        }
        let poly = self.min_poly();
        if !poly.content().is_one() {
            return Err(Error::Invariant(format!("minimal polynomial {poly} is not primitive")));
        }
        if !poly.discriminant().is_negative() {
            return Err(Error::Invariant(format!("minimal polynomial {poly} has real roots")));
        }
        Ok(())
    }

    pub fn field(&self) -> &FieldParams {
        &self.field
    }

    /// `(a, b, c)` with `tau = (a + b omega) / c`.
    pub fn tau(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c)
    }

    /// `c * trace(tau)`.
    pub fn trace_num(&self) -> &BigInt {
        &self.trace_num
    }

    /// `c^2 * norm(tau)`.
    pub fn det_num(&self) -> &BigInt {
        &self.det_num
    }

    pub fn g(&self) -> &BigInt {
        &self.g
    }

    pub fn c_prime(&self) -> &BigInt {
        &self.c_prime
    }

    pub fn delta_prime(&self) -> &BigInt {
        &self.delta_prime
    }

    /// The index `N` with `R = <1, N tau>`.
    pub fn n(&self) -> &BigInt {
        &self.n
    }

    /// Index of `R` in the maximal order.
    pub fn conductor(&self) -> &BigInt {
        &self.conductor
    }

    /// True when `R` is the maximal order, equivalently a Dedekind domain.
    pub fn is_maximal_order(&self) -> bool {
        self.conductor.is_one()
    }

    /// `trace(N tau) = t c'`; also the linear coefficient (negated) of the minimal polynomial.
    pub fn trace_times_c_prime(&self) -> BigInt {
        &self.trace_num * &self.c_prime
    }

    /// The primitive integer minimal polynomial `N X^2 - t c' X + delta'` of `tau`.
    pub fn min_poly(&self) -> IntQuadratic {
        IntQuadratic {
            lead: self.n.clone(),
            lin: -self.trace_times_c_prime(),
            constant: self.delta_prime.clone(),
        }
    }

    /// Discriminant of `R`, equal to the field discriminant times the conductor squared.
    pub fn order_discriminant(&self) -> BigInt {
        self.min_poly().discriminant()
    }

    pub fn add(&self, lhs: &RingElement, rhs: &RingElement) -> RingElement {
        RingElement { x: &lhs.x + &rhs.x, y: &lhs.y + &rhs.y }
    }

    pub fn neg(&self, value: &RingElement) -> RingElement {
        RingElement { x: -&value.x, y: -&value.y }
    }

    pub fn sub(&self, lhs: &RingElement, rhs: &RingElement) -> RingElement {
        self.add(lhs, &self.neg(rhs))
    }

    /// Product in `R`, reducing `(N tau)^2 = t c' (N tau) - N delta'`.
    pub fn mul(&self, lhs: &RingElement, rhs: &RingElement) -> RingElement {
        let s = self.trace_times_c_prime();
        let p = &self.n * &self.delta_prime;
        let yy = &lhs.y * &rhs.y;
        RingElement {
            x: &lhs.x * &rhs.x - &yy * p,
            y: &lhs.x * &rhs.y + &lhs.y * &rhs.x + yy * s,
        }
    }

    /// Image under complex conjugation: `conj(N tau) = t c' - N tau`.
    pub fn conj(&self, value: &RingElement) -> RingElement {
        RingElement { x: &value.x + &value.y * self.trace_times_c_prime(), y: -&value.y }
    }

    /// `value * conj(value)`, a non-negative integer.
    pub fn norm(&self, value: &RingElement) -> BigInt {
        let s = self.trace_times_c_prime();
        let p = &self.n * &self.delta_prime;
        &value.x * &value.x + &value.x * &value.y * s + &value.y * &value.y * p
    }

    /// The 2x2 integer matrix of multiplication by `value` on the basis `{1, tau}` of the
    /// lattice, as `[[x, -y delta'], [y N, x + y t c']]`.
    pub fn lambda_block(&self, value: &RingElement) -> [[BigInt; 2]; 2] {
        let y = &value.y;
        [
            [value.x.clone(), -(y * &self.delta_prime)],
            [y * &self.n, &value.x + y * self.trace_times_c_prime()],
        ]
    }

    /// The 2x2 integer matrix of multiplication by `value` on the basis `{1, N tau}` of `R`.
    pub fn order_block(&self, value: &RingElement) -> [[BigInt; 2]; 2] {
        let y = &value.y;
        [
            [value.x.clone(), -(y * &self.delta_prime * &self.n)],
            [y.clone(), &value.x + y * self.trace_times_c_prime()],
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn curve(m: i64, a: i64, b: i64, c: i64) -> CurveParams {
        CurveParams::new(FieldParams::new(m).unwrap(), a, b, c).unwrap()
    }

    fn el(x: i64, y: i64) -> RingElement {
        RingElement::new(x, y)
    }

    #[test]
    fn field_cases() {
        let f3 = FieldParams::new(3).unwrap();
        assert_eq!(f3.omega_case(), OmegaCase::HalfIntegral);
        assert_eq!(f3.m_prime(), Some(1));
        let f1 = FieldParams::new(1).unwrap();
        assert_eq!(f1.omega_case(), OmegaCase::PureImaginary);
        assert_eq!(f1.m_prime(), None);
        assert_eq!(FieldParams::new(7).unwrap().m_prime(), Some(2));
    }

    #[test]
    fn field_rejects_bad_m() {
        assert!(matches!(FieldParams::new(4), Err(Error::NotSquareFree { m: 4, square: 4 })));
        assert!(matches!(FieldParams::new(12), Err(Error::NotSquareFree { .. })));
        assert!(matches!(FieldParams::new(0), Err(Error::NonPositiveM(0))));
        assert!(matches!(FieldParams::new(-3), Err(Error::NonPositiveM(-3))));
        assert!(FieldParams::new(30).is_ok());
    }

    #[test]
    fn curve_constants() {
        let sqrt_m3 = curve(3, -1, 2, 1);
        assert_eq!(sqrt_m3.n(), &BigInt::from(1));
        assert_eq!(sqrt_m3.conductor(), &BigInt::from(2));
        assert_eq!(sqrt_m3.delta_prime(), &BigInt::from(3));
        assert!(sqrt_m3.trace_times_c_prime().is_zero());

        let omega = curve(3, 0, 1, 1);
        assert_eq!(omega.n(), &BigInt::from(1));
        assert_eq!(omega.conductor(), &BigInt::from(1));

        let half_i = curve(1, 0, 1, 2);
        assert_eq!(half_i.det_num(), &BigInt::from(1));
        assert_eq!(half_i.g(), &BigInt::from(1));
        assert_eq!(half_i.n(), &BigInt::from(4));
        assert_eq!(half_i.conductor(), &BigInt::from(2));

        // (1 + i) / 2: N = 2 yet R = Z[i]
        let half_one_plus_i = curve(1, 1, 1, 2);
        assert_eq!(half_one_plus_i.n(), &BigInt::from(2));
        assert_eq!(half_one_plus_i.conductor(), &BigInt::from(1));
    }

    #[test]
    fn curve_rejects_non_canonical_tau() {
        let f = FieldParams::new(3).unwrap();
        assert_eq!(CurveParams::new(f.clone(), 2, 2, 4), Err(Error::TauNotPrimitive("2".into())));
        assert_eq!(CurveParams::new(f.clone(), 1, 0, 1), Err(Error::TauReal));
        assert!(matches!(
            CurveParams::new(f, 1, 1, -1),
            Err(Error::NonPositiveDenominator(_))
        ));
    }

    #[test]
    fn minimal_polynomials() {
        let p = curve(3, -1, 2, 1).min_poly();
        assert_eq!((p.lead, p.lin, p.constant), (1.into(), 0.into(), 3.into()));
        let p = curve(3, 0, 1, 1).min_poly();
        assert_eq!((p.lead, p.lin, p.constant), (1.into(), (-1).into(), 1.into()));
        let p = curve(1, 0, 1, 2).min_poly();
        assert_eq!((p.lead.clone(), p.lin.clone(), p.constant.clone()), (4.into(), 0.into(), 1.into()));
        assert_eq!(p.to_string(), "4X^2 + 1");
        assert_eq!(curve(3, 0, 1, 1).min_poly().to_string(), "X^2 - X + 1");
    }

    #[test]
    fn sqrt_minus_three_is_a_root() {
        // evaluate X^2 + 3 at sqrt(-3) in floating point
        let p = curve(3, -1, 2, 1).min_poly();
        let (re, im) = (0.0f64, 3.0f64.sqrt());
        let sq = (re * re - im * im, 2.0 * re * im);
        let lead: f64 = p.lead.to_string().parse().unwrap();
        let lin: f64 = p.lin.to_string().parse().unwrap();
        let cst: f64 = p.constant.to_string().parse().unwrap();
        let val = (lead * sq.0 + lin * re + cst, lead * sq.1 + lin * im);
        assert!(val.0.abs() < 1e-12 && val.1.abs() < 1e-12);
    }

    #[test]
    fn products() {
        let c = curve(3, -1, 2, 1);
        assert_eq!(c.mul(&el(1, 1), &el(1, -1)), el(4, 0));
        assert_eq!(c.mul(&el(7, -3), &RingElement::one()), el(7, -3));
        let c = curve(1, 0, 1, 2);
        assert_eq!(c.mul(&el(0, 1), &el(0, 1)), el(-4, 0));
    }

    #[test]
    fn conjugation() {
        let c = curve(3, -1, 2, 1);
        assert_eq!(c.conj(&el(1, 1)), el(1, -1));
        assert_eq!(c.conj(&el(5, 0)), el(5, 0));
        let c = curve(3, 0, 1, 1);
        assert_eq!(c.conj(&el(0, 1)), el(1, -1));
    }

    #[test]
    fn blocks() {
        let c = curve(1, 0, 1, 2);
        let b = c.lambda_block(&el(0, 1));
        assert_eq!(b, [[0.into(), (-1).into()], [4.into(), 0.into()]]);
        let b = c.order_block(&el(0, 1));
        assert_eq!(b, [[0.into(), (-4).into()], [1.into(), 0.into()]]);
    }

    fn curves() -> Vec<CurveParams> {
        vec![
            curve(3, -1, 2, 1),
            curve(3, 0, 1, 1),
            curve(1, 0, 1, 2),
            curve(1, 1, 1, 2),
            curve(7, 1, 3, 2),
            curve(5, 0, 1, 3),
            curve(2, 1, 2, 5),
        ]
    }

    fn arb_el() -> impl Strategy<Value = RingElement> {
        (-50i64..50, -50i64..50).prop_map(|(x, y)| el(x, y))
    }

    proptest! {
        #[test]
        fn ring_laws(idx in 0usize..7, a in arb_el(), b in arb_el(), d in arb_el()) {
            let c = &curves()[idx];
            prop_assert_eq!(c.mul(&a, &b), c.mul(&b, &a));
            prop_assert_eq!(c.mul(&c.mul(&a, &b), &d), c.mul(&a, &c.mul(&b, &d)));
            prop_assert_eq!(
                c.mul(&a, &c.add(&b, &d)),
                c.add(&c.mul(&a, &b), &c.mul(&a, &d))
            );
            prop_assert_eq!(c.conj(&c.conj(&a)), a.clone());
            prop_assert_eq!(c.conj(&c.mul(&a, &b)), c.mul(&c.conj(&a), &c.conj(&b)));
            prop_assert_eq!(c.conj(&c.add(&a, &b)), c.add(&c.conj(&a), &c.conj(&b)));
        }

        #[test]
        fn norm_is_positive(idx in 0usize..7, a in arb_el()) {
            let c = &curves()[idx];
            let n = c.mul(&a, &c.conj(&a));
            prop_assert!(n.y.is_zero());
            prop_assert_eq!(&n.x, &c.norm(&a));
            if a.is_zero() {
                prop_assert!(n.x.is_zero());
            } else {
                prop_assert!(n.x.is_positive());
            }
        }
    }
}
