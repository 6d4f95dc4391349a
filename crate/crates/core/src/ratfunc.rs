//! Rational functions as reduced numerator/denominator pairs.
//!
//! Construction cancels the gcd and scales so the denominator is in
//! canonical unit form; the numerator carries the remaining unit.  The
//! denominator is therefore never the zero polynomial, and a zero function
//! is stored as 0/1.

use crate::alg::Coef;
use crate::mpoly::{gcd, MPoly};
use crate::realzeros::common_real_zeros;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct RationalFunction {
    num: MPoly,
    den: MPoly,
}

/// How a rational function behaves at a single point of its source space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointClass {
    /// Denominator nonzero: the function is defined nearby.
    Regular,
    /// Denominator zero, numerator nonzero.
    Pole,
    /// Both vanish.
    Indeterminate,
}

impl RationalFunction {
    pub fn new(num: MPoly, den: MPoly) -> Result<RationalFunction> {
        assert_eq!(num.nvars(), den.nvars());
        if den.is_zero() {
            return Err(Error::IdenticallyZeroDenominator);
        }
        Ok(RationalFunction::reduced(num, den))
    }

    fn reduced(num: MPoly, den: MPoly) -> RationalFunction {
        if num.is_zero() {
            return RationalFunction { num, den: MPoly::one(den.nvars()) };
        }
        // Primitive-PRS gcd cost grows sharply with arity.  Beyond the plane
        // the workbench only evaluates fractions along arcs, which does not
        // need lowest terms, so cancellation is reserved for the
        // representations the plane decisions actually inspect.
        if num.nvars() > 2 {
            let s = den.unit_scale();
            return RationalFunction { num: num.mul_coef(&s), den: den.mul_coef(&s) };
        }
        let g = gcd(&num, &den);
        let n = num.div_exact(&g).expect("gcd divides numerator");
        let d = den.div_exact(&g).expect("gcd divides denominator");
        let s = d.unit_scale();
        RationalFunction { num: n.mul_coef(&s), den: d.mul_coef(&s) }
    }

    pub fn from_poly(p: MPoly) -> RationalFunction {
        let nv = p.nvars();
        RationalFunction { num: p, den: MPoly::one(nv) }
    }

    pub fn constant(nvars: usize, c: Coef) -> RationalFunction {
        RationalFunction::from_poly(MPoly::constant(nvars, c))
    }

    pub fn zero(nvars: usize) -> RationalFunction {
        RationalFunction::from_poly(MPoly::zero(nvars))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.as_constant().is_some()
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, other: &RationalFunction) -> RationalFunction {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        RationalFunction::reduced(num, self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &RationalFunction) -> RationalFunction {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RationalFunction) -> RationalFunction {
        RationalFunction::reduced(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn recip(&self) -> Result<RationalFunction> {
        if self.num.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RationalFunction::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &RationalFunction) -> Result<RationalFunction> {
        Ok(self.mul(&other.recip()?))
    }

    pub fn pow(&self, k: i64) -> Result<RationalFunction> {
        if k < 0 {
            return self.recip()?.pow(-k);
        }
        let mut acc = RationalFunction::constant(self.nvars(), Coef::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        Ok(acc)
    }

    pub fn equals(&self, other: &RationalFunction) -> bool {
        self.num
            .mul(&other.den)
            .sub(&other.num.mul(&self.den))
            .is_zero()
    }

    pub fn classify_point(&self, xs: &[Coef]) -> PointClass {
        if !self.den.eval(xs).is_zero() {
            return PointClass::Regular;
        }
        if self.num.eval(xs).is_zero() {
            PointClass::Indeterminate
        } else {
            PointClass::Pole
        }
    }

    pub fn eval(&self, xs: &[Coef]) -> Result<Coef> {
        let d = self.den.eval(xs);
        if d.is_zero() {
            return Err(Error::OutsideDomain);
        }
        self.num.eval(xs).div(&d)
    }

    /// Points where numerator and denominator both vanish; finite because
    /// the representation is reduced.  Plane functions only.
    pub fn indeterminacy_points(&self) -> Result<Vec<Vec<Coef>>> {
        assert_eq!(self.nvars(), 2);
        if self.num.is_zero()
            || self.num.as_constant().is_some()
            || self.den.as_constant().is_some()
        {
            return Ok(Vec::new());
        }
        common_real_zeros(&self.num, &self.den)
    }
}
