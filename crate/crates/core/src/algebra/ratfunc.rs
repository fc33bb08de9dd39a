use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::{default_var_names, poly_gcd, AlgebraError, FieldSpec, MultiPoly, Scalar};

/// Element of `K(z)`: a reduced fraction with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MultiPoly,
    den: MultiPoly,
}

impl RatFunc {
    /// Builds `num / den` in normalized form.
    pub fn new(num: MultiPoly, den: MultiPoly) -> Result<Self, AlgebraError> {
        num.compatible(&den)?;
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero(num.field(), num.nvars()));
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = poly_gcd(&num, &den)?;
            if g.is_one() {
                (num, den)
            } else {
                (num.exact_div(&g)?, den.exact_div(&g)?)
            }
        };
        let lc_inv = den.leading_coeff().expect("nonzero").inverse()?;
        Ok(RatFunc { num: num.scale(&lc_inv), den: den.scale(&lc_inv) })
    }

    pub fn from_poly(p: MultiPoly) -> Self {
        let den = MultiPoly::one(p.field(), p.nvars());
        RatFunc { num: p, den }
    }

    pub fn zero(field: FieldSpec, nvars: usize) -> Self {
        Self::from_poly(MultiPoly::zero(field, nvars))
    }

    pub fn one(field: FieldSpec, nvars: usize) -> Self {
        Self::from_poly(MultiPoly::one(field, nvars))
    }

    pub fn constant(field: FieldSpec, nvars: usize, c: Scalar) -> Self {
        Self::from_poly(MultiPoly::constant(field, nvars, c))
    }

    pub fn numer(&self) -> &MultiPoly {
        &self.num
    }

    pub fn denom(&self) -> &MultiPoly {
        &self.den
    }

    pub fn into_parts(self) -> (MultiPoly, MultiPoly) {
        (self.num, self.den)
    }

    pub fn field(&self) -> FieldSpec {
        self.num.field()
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// The numerator when the denominator is 1.
    pub fn as_poly(&self) -> Option<&MultiPoly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn compatible(&self, other: &RatFunc) -> Result<(), AlgebraError> {
        self.num.compatible(&other.num)
    }

    pub fn checked_add(&self, other: &RatFunc) -> Result<RatFunc, AlgebraError> {
        self.compatible(other)?;
        Ok(self + other)
    }

    pub fn checked_sub(&self, other: &RatFunc) -> Result<RatFunc, AlgebraError> {
        self.compatible(other)?;
        Ok(self - other)
    }

    pub fn checked_mul(&self, other: &RatFunc) -> Result<RatFunc, AlgebraError> {
        self.compatible(other)?;
        Ok(self * other)
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc, AlgebraError> {
        self.compatible(other)?;
        Ok(self * &other.inverse()?)
    }

    pub fn inverse(&self) -> Result<RatFunc, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn scale(&self, c: &Scalar) -> RatFunc {
        if c.is_zero() {
            return Self::zero(self.field(), self.nvars());
        }
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn mul_poly(&self, p: &MultiPoly) -> RatFunc {
        if self.is_polynomial() {
            return RatFunc::from_poly(&self.num * p);
        }
        RatFunc::new(&self.num * p, self.den.clone()).expect("nonzero denominator")
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        RatFunc { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Partial derivative with respect to `z_i` by the quotient rule.
    pub fn diff(&self, i: usize) -> Result<RatFunc, AlgebraError> {
        if i >= self.nvars() {
            return Err(AlgebraError::BadIndex(i));
        }
        Ok(self.partial(i))
    }

    pub(crate) fn partial(&self, i: usize) -> RatFunc {
        if self.is_polynomial() {
            return RatFunc::from_poly(self.num.partial(i));
        }
        let num = &(&self.num.partial(i) * &self.den) - &(&self.num * &self.den.partial(i));
        RatFunc::new(num, &self.den * &self.den).expect("nonzero denominator")
    }

    pub fn to_string_with(&self, vars: &[String]) -> String {
        if self.is_polynomial() {
            return self.num.to_string_with(vars);
        }
        format!("({})/({})", self.num.to_string_with(vars), self.den.to_string_with(vars))
    }
}

impl From<MultiPoly> for RatFunc {
    fn from(p: MultiPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_with(&default_var_names(self.nvars())))
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_polynomial() && rhs.is_polynomial() {
            return RatFunc::from_poly(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero denominator");
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::new(num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_polynomial() && rhs.is_polynomial() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.field(), self.nvars());
        }
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero denominator")
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;

    fn x(field: FieldSpec) -> MultiPoly {
        MultiPoly::var(field, 1, 0)
    }

    #[test]
    fn normalization_cancels_common_factor() {
        let q = FieldSpec::Rationals;
        let one = MultiPoly::one(q, 1);
        let x = x(q);
        let r = RatFunc::new(&x * &x - one.clone(), &x - &one).unwrap();
        assert_eq!(r.numer(), &(&x + &one));
        assert!(r.denom().is_one());
    }

    #[test]
    fn self_difference_is_zero() {
        let q = FieldSpec::Rationals;
        let x = x(q);
        let a = RatFunc::new(x.clone(), &x + &MultiPoly::one(q, 1)).unwrap();
        let z = &a - &a;
        assert!(z.is_zero());
        assert!(z.denom().is_one());
    }

    #[test]
    fn reciprocal_product() {
        let q = FieldSpec::Rationals;
        let x = x(q);
        let inv = RatFunc::new(MultiPoly::one(q, 1), x.clone()).unwrap();
        assert!((&inv * &RatFunc::from_poly(x)).is_one());
    }

    #[test]
    fn denominator_is_monic() {
        let q = FieldSpec::Rationals;
        let x = x(q);
        let r = RatFunc::new(MultiPoly::one(q, 1), x.scale(&q.from_i64(-2))).unwrap();
        assert!(r.denom().leading_coeff().unwrap().is_one());
        assert_eq!(r.numer(), &MultiPoly::constant(q, 1, q.from_rational(&num_rational::BigRational::new((-1).into(), 2.into())).unwrap()));
    }

    #[test]
    fn division_by_zero() {
        let q = FieldSpec::Rationals;
        let z = RatFunc::zero(q, 1);
        assert_eq!(RatFunc::one(q, 1).checked_div(&z), Err(AlgebraError::DivisionByZero));
        assert_eq!(RatFunc::new(x(q), MultiPoly::zero(q, 1)), Err(AlgebraError::DivisionByZero));
    }

    #[test]
    fn quotient_rule_in_char_two() {
        // d/dx (x^2/(x^2+1)) = 0 over F_2
        let f2 = FieldSpec::Prime(2);
        let x = x(f2);
        let x2 = &x * &x;
        let r = RatFunc::new(x2.clone(), &x2 + &MultiPoly::one(f2, 1)).unwrap();
        assert!(r.diff(0).unwrap().is_zero());
    }
}
