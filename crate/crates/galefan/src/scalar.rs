//! Exact ordered-field scalars: arbitrary-precision rationals, or elements
//! of a single real algebraic extension Q(theta) given by a squarefree
//! minimal polynomial and an isolating interval.
//!
//! Every value is immutable and kept in canonical form: an algebraic
//! element whose coefficient vector is constant collapses to a rational,
//! so structural equality is value equality.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::poly::{self, Poly};

/// A real algebraic field Q(theta): monic squarefree polynomial with
/// exactly one root in the rational isolating interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicField {
    minpoly: Poly,
    interval: (BigRational, BigRational),
}

impl AlgebraicField {
    pub fn new(minpoly: Poly, lo: BigRational, hi: BigRational) -> Result<Arc<Self>, Error> {
        let minpoly = poly::trim(minpoly);
        let d = poly::deg(&minpoly);
        if d < 2 {
            return Err(Error::InvalidField(
                "minimal polynomial must have degree >= 2".into(),
            ));
        }
        if !minpoly[d].is_one() {
            return Err(Error::InvalidField("minimal polynomial must be monic".into()));
        }
        let g = poly::gcd(&minpoly, &poly::derivative(&minpoly));
        if poly::deg(&g) != 0 {
            return Err(Error::InvalidField("minimal polynomial must be squarefree".into()));
        }
        if lo >= hi {
            return Err(Error::InvalidField("empty isolating interval".into()));
        }
        let flo = poly::eval(&minpoly, &lo);
        let fhi = poly::eval(&minpoly, &hi);
        if flo.is_zero() || fhi.is_zero() {
            return Err(Error::InvalidField(
                "isolating interval endpoints must not be roots".into(),
            ));
        }
        if poly::count_roots(&minpoly, &lo, &hi) != 1 {
            return Err(Error::InvalidField(
                "isolating interval must contain exactly one root".into(),
            ));
        }
        Ok(Arc::new(AlgebraicField {
            minpoly,
            interval: (lo, hi),
        }))
    }

    pub fn degree(&self) -> usize {
        poly::deg(&self.minpoly)
    }

    pub fn minpoly(&self) -> &Poly {
        &self.minpoly
    }

    pub fn interval(&self) -> &(BigRational, BigRational) {
        &self.interval
    }

    /// Bisect (lo, hi) once, keeping the half that contains the root.
    fn refine(&self, lo: &BigRational, hi: &BigRational) -> (BigRational, BigRational) {
        let two = BigRational::from(BigInt::from(2));
        let mid = (lo + hi) / two;
        // Squarefree with no rational root in range: eval(mid) != 0.
        let smid = poly::eval(&self.minpoly, &mid).is_positive();
        let slo = poly::eval(&self.minpoly, lo).is_positive();
        if slo != smid {
            (lo.clone(), mid)
        } else {
            (mid, hi.clone())
        }
    }

    /// A rational approximation of theta within tolerance `2^-bits`.
    pub fn approx(&self, bits: u32) -> BigRational {
        let (mut lo, mut hi) = self.interval.clone();
        let tol = BigRational::new(BigInt::one(), BigInt::from(2).pow(bits));
        while &hi - &lo > tol {
            let (nlo, nhi) = self.refine(&lo, &hi);
            lo = nlo;
            hi = nhi;
        }
        let two = BigRational::from(BigInt::from(2));
        (lo + hi) / two
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rat(BigRational),
    Alg {
        field: Arc<AlgebraicField>,
        /// Coefficients of sum c_k theta^k, length = field degree, in
        /// canonical reduced form (not all trailing-managed; fixed length).
        coeffs: Vec<BigRational>,
    },
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rat(BigRational::from(BigInt::from(n)))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        Scalar::Rat(r)
    }

    /// Element sum c_k theta^k of the given field, canonicalized.
    pub fn algebraic(field: Arc<AlgebraicField>, mut coeffs: Vec<BigRational>) -> Self {
        let d = field.degree();
        if coeffs.len() > d {
            let reduced = poly::rem(&coeffs, field.minpoly());
            coeffs = reduced;
        }
        coeffs.resize(d, BigRational::zero());
        if coeffs[1..].iter().all(|c| c.is_zero()) {
            return Scalar::Rat(coeffs[0].clone());
        }
        Scalar::Alg { field, coeffs }
    }

    /// The generator theta of a field.
    pub fn theta(field: Arc<AlgebraicField>) -> Self {
        let mut coeffs = vec![BigRational::zero(); field.degree()];
        coeffs[1] = BigRational::one();
        Scalar::Alg { field, coeffs }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rat(r) if r.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rat(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rat(r) => Some(r),
            Scalar::Alg { .. } => None,
        }
    }

    pub fn field(&self) -> Option<&Arc<AlgebraicField>> {
        match self {
            Scalar::Rat(_) => None,
            Scalar::Alg { field, .. } => Some(field),
        }
    }

    /// Coefficient vector over Q with respect to 1, theta, ..., theta^(D-1),
    /// padded to the degree of `field` (a rational is (r, 0, ..., 0)).
    pub fn coeff_vector(&self, degree: usize) -> Vec<BigRational> {
        match self {
            Scalar::Rat(r) => {
                let mut v = vec![BigRational::zero(); degree];
                v[0] = r.clone();
                v
            }
            Scalar::Alg { coeffs, .. } => {
                let mut v = coeffs.clone();
                v.resize(degree, BigRational::zero());
                v
            }
        }
    }

    fn common_field<'a>(a: &'a Scalar, b: &'a Scalar) -> Result<Option<&'a Arc<AlgebraicField>>, Error> {
        match (a.field(), b.field()) {
            (None, None) => Ok(None),
            (Some(f), None) | (None, Some(f)) => Ok(Some(f)),
            (Some(f), Some(g)) => {
                if f == g {
                    Ok(Some(f))
                } else {
                    Err(Error::FieldMismatch)
                }
            }
        }
    }

    fn to_poly(&self) -> Poly {
        match self {
            Scalar::Rat(r) => vec![r.clone()],
            Scalar::Alg { coeffs, .. } => poly::trim(coeffs.clone()),
        }
    }

    pub fn checked_add(&self, rhs: &Scalar) -> Result<Scalar, Error> {
        match Scalar::common_field(self, rhs)? {
            None => Ok(Scalar::Rat(
                self.as_rational().unwrap() + rhs.as_rational().unwrap(),
            )),
            Some(f) => Ok(Scalar::algebraic(
                f.clone(),
                poly::add(&self.to_poly(), &rhs.to_poly()),
            )),
        }
    }

    pub fn checked_sub(&self, rhs: &Scalar) -> Result<Scalar, Error> {
        self.checked_add(&(-rhs.clone()))
    }

    pub fn checked_mul(&self, rhs: &Scalar) -> Result<Scalar, Error> {
        match Scalar::common_field(self, rhs)? {
            None => Ok(Scalar::Rat(
                self.as_rational().unwrap() * rhs.as_rational().unwrap(),
            )),
            Some(f) => Ok(Scalar::algebraic(
                f.clone(),
                poly::mul(&self.to_poly(), &rhs.to_poly()),
            )),
        }
    }

    pub fn inverse(&self) -> Result<Scalar, Error> {
        match self {
            Scalar::Rat(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero)
                } else {
                    Ok(Scalar::Rat(r.recip()))
                }
            }
            Scalar::Alg { field, coeffs } => {
                // Extended gcd with the minimal polynomial; the gcd is a
                // nonzero constant whenever the element is invertible.
                let q = poly::trim(coeffs.clone());
                let (g, _s, t) = poly::egcd(field.minpoly(), &q);
                if poly::deg(&g) != 0 || poly::is_zero(&g) {
                    return Err(Error::DivisionByZero);
                }
                Ok(Scalar::algebraic(field.clone(), t))
            }
        }
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar, Error> {
        self.checked_mul(&rhs.inverse()?)
    }

    /// Exact sign in {-1, 0, +1}.
    pub fn sign(&self) -> i8 {
        match self {
            Scalar::Rat(r) => {
                if r.is_zero() {
                    0
                } else if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Scalar::Alg { field, coeffs } => {
                let q = poly::trim(coeffs.clone());
                // Zero detection: the value vanishes iff theta is a root of
                // gcd(q, minpoly). Canonical form rules this out for an
                // irreducible minpoly, but check anyway.
                let g = poly::gcd(&q, field.minpoly());
                if poly::deg(&g) >= 1
                    && poly::count_roots(&g, &field.interval().0, &field.interval().1) > 0
                {
                    return 0;
                }
                let (mut lo, mut hi) = field.interval().clone();
                loop {
                    let (vlo, vhi) = poly::interval_eval(&q, &lo, &hi);
                    if vlo.is_positive() {
                        return 1;
                    }
                    if vhi.is_negative() {
                        return -1;
                    }
                    let (nlo, nhi) = field.refine(&lo, &hi);
                    lo = nlo;
                    hi = nhi;
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.sign() < 0
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Decimal approximation for human-readable reports.
    pub fn approx_f64(&self) -> f64 {
        match self {
            Scalar::Rat(r) => rational_to_f64(r),
            Scalar::Alg { field, coeffs } => {
                let t = rational_to_f64(&field.approx(64));
                let mut acc = 0.0;
                for c in coeffs.iter().rev() {
                    acc = acc * t + rational_to_f64(c);
                }
                acc
            }
        }
    }
}

pub fn rational_to_f64(r: &BigRational) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // Scale down in tandem so both halves fit in f64 range.
    let nf = big_to_f64(n);
    let df = big_to_f64(d);
    nf / df
}

fn big_to_f64(x: &BigInt) -> f64 {
    let s = x.to_string();
    s.parse::<f64>().unwrap_or(f64::NAN)
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        let d = self.checked_sub(other).ok()?;
        Some(match d.sign() {
            1 => std::cmp::Ordering::Greater,
            -1 => std::cmp::Ordering::Less,
            _ => std::cmp::Ordering::Equal,
        })
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$checked(&rhs).expect("scalar arithmetic")
            }
        }
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                self.$checked(rhs).expect("scalar arithmetic")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        *self = self.checked_add(&rhs).expect("scalar arithmetic");
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        *self = self.checked_sub(&rhs).expect("scalar arithmetic");
    }
}

impl MulAssign for Scalar {
    fn mul_assign(&mut self, rhs: Scalar) {
        *self = self.checked_mul(&rhs).expect("scalar arithmetic");
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Alg { field, coeffs } => Scalar::Alg {
                field,
                coeffs: coeffs.into_iter().map(|c| -c).collect(),
            },
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{}", r),
            Scalar::Alg { coeffs, .. } => {
                let mut first = true;
                for (k, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    match k {
                        0 => write!(f, "{}", c)?,
                        1 => write!(f, "{}*t", c)?,
                        _ => write!(f, "{}*t^{}", c, k)?,
                    }
                }
                if first {
                    write!(f, "0")?;
                }
                Ok(())
            }
        }
    }
}

/// Shared field of a slice of scalars, erroring on a mix of two distinct
/// algebraic fields.
pub fn common_field_of(scalars: &[Scalar]) -> Result<Option<Arc<AlgebraicField>>, Error> {
    let mut found: Option<Arc<AlgebraicField>> = None;
    for s in scalars {
        if let Some(f) = s.field() {
            match &found {
                None => found = Some(f.clone()),
                Some(g) if g == f => {}
                Some(_) => return Err(Error::FieldMismatch),
            }
        }
    }
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sqrt5_field() -> Arc<AlgebraicField> {
        // x^2 - 5, root in (2, 3)
        AlgebraicField::new(
            vec![
                BigRational::from(BigInt::from(-5)),
                BigRational::zero(),
                BigRational::one(),
            ],
            BigRational::from(BigInt::from(2)),
            BigRational::from(BigInt::from(3)),
        )
        .unwrap()
    }

    #[test]
    fn rational_arith() {
        let a = Scalar::from_frac(1, 2);
        let b = Scalar::from_frac(1, 3);
        assert_eq!(&a + &b, Scalar::from_frac(5, 6));
    }

    #[test]
    fn sign_of_rationals() {
        assert_eq!(Scalar::from_frac(3, 7).sign(), 1);
        assert_eq!(Scalar::zero().sign(), 0);
        assert_eq!(Scalar::from_int(-2).sign(), -1);
    }

    #[test]
    fn theta_squared_is_five() {
        let f = sqrt5_field();
        let t = Scalar::theta(f);
        assert_eq!(&t * &t, Scalar::from_int(5));
    }

    #[test]
    fn sign_of_theta_minus_nine_fourths() {
        // sqrt(5) = 2.236... < 9/4, so the sign is -1.
        let f = sqrt5_field();
        let x = Scalar::theta(f) - Scalar::from_frac(9, 4);
        assert_eq!(x.sign(), -1);
    }

    #[test]
    fn inverse_of_one_plus_theta() {
        // 1/(1+sqrt5) = (-1+sqrt5)/4
        let f = sqrt5_field();
        let t = Scalar::theta(f.clone());
        let x = Scalar::one() + t.clone();
        let inv = x.inverse().unwrap();
        let expected = (Scalar::from_int(-1) + t) / Scalar::from_int(4);
        assert_eq!(inv, expected);
        assert_eq!(&x * &inv, Scalar::one());
    }

    #[test]
    fn canonical_collapse_to_rational() {
        let f = sqrt5_field();
        let t = Scalar::theta(f);
        let v = &t * &t; // 5
        assert!(v.is_rational());
    }

    #[test]
    fn mixed_field_rejected() {
        let f = sqrt5_field();
        let g = AlgebraicField::new(
            vec![
                BigRational::from(BigInt::from(-2)),
                BigRational::zero(),
                BigRational::one(),
            ],
            BigRational::from(BigInt::from(1)),
            BigRational::from(BigInt::from(2)),
        )
        .unwrap();
        let a = Scalar::theta(f);
        let b = Scalar::theta(g);
        assert!(a.checked_add(&b).is_err());
    }
}
