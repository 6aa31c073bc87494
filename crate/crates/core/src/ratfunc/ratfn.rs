use std::fmt;

use super::poly::Poly;
use crate::cyclofield::Cyc;
use crate::error::{Error, Result};
use crate::expr;

/// A rational function `num / den` in `t` over Q(zeta_n).
///
/// Always reduced: `gcd(num, den) = 1` and `den` is monic, so equality is
/// structural. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<RatFn> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.conductor() != den.conductor() {
            return Err(Error::ConductorMismatch {
                left: num.conductor(),
                right: den.conductor(),
            });
        }
        if num.is_zero() {
            return Ok(RatFn::zero(num.conductor()));
        }
        let (_, mut num, mut den) = num.gcd_cofactors(&den);
        let lead = den.lead().expect("nonzero denominator").clone();
        if !lead.is_one() {
            let inv = lead.inv()?;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RatFn { num, den })
    }

    pub fn from_poly(p: Poly) -> RatFn {
        let n = p.conductor();
        RatFn {
            num: p,
            den: Poly::one(n),
        }
    }

    pub fn zero(conductor: u32) -> RatFn {
        RatFn::from_poly(Poly::zero(conductor))
    }

    pub fn one(conductor: u32) -> RatFn {
        RatFn::from_poly(Poly::one(conductor))
    }

    pub fn constant(c: Cyc) -> RatFn {
        RatFn::from_poly(Poly::constant(c))
    }

    pub fn t(conductor: u32) -> RatFn {
        RatFn::from_poly(Poly::t(conductor))
    }

    /// `(t - a)^k` for any integer `k`.
    pub fn linear_pow(a: &Cyc, k: i64) -> RatFn {
        let base = Poly::linear(a).pow(k.unsigned_abs() as u32);
        if k >= 0 {
            RatFn::from_poly(base)
        } else {
            RatFn {
                num: Poly::one(a.conductor()),
                den: base,
            }
        }
    }

    /// Parses the scalar grammar extended with the variable `t`.
    pub fn parse(src: &str, conductor: u32) -> Result<RatFn> {
        if conductor == 0 {
            return Err(Error::Usage("conductor must be positive".into()));
        }
        expr::parse_ratfn(src, conductor)
    }

    pub fn conductor(&self) -> u32 {
        self.num.conductor()
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, other: &RatFn) -> RatFn {
        if self.den == other.den {
            return RatFn::new(self.num.add(&other.num), self.den.clone()).expect("nonzero");
        }
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        RatFn::new(num, self.den.mul(&other.den)).expect("nonzero denominator")
    }

    pub fn neg(&self) -> RatFn {
        RatFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &RatFn) -> RatFn {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFn) -> RatFn {
        RatFn::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("nonzero denominator")
    }

    pub fn scale(&self, c: &Cyc) -> RatFn {
        RatFn::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    pub fn div(&self, other: &RatFn) -> Result<RatFn> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RatFn::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn recip(&self) -> Result<RatFn> {
        RatFn::one(self.conductor()).div(self)
    }

    pub fn pow(&self, exp: i64) -> Result<RatFn> {
        let base = if exp < 0 { self.recip()? } else { self.clone() };
        Ok(RatFn {
            num: base.num.pow(exp.unsigned_abs() as u32),
            den: base.den.pow(exp.unsigned_abs() as u32),
        })
    }

    /// Formal d/dt.
    pub fn derivative(&self) -> RatFn {
        let num = self
            .num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()));
        RatFn::new(num, self.den.mul(&self.den)).expect("nonzero denominator")
    }

    /// Value at a point, or `None` at a pole.
    pub fn eval(&self, x: &Cyc) -> Option<Cyc> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(&self.num.eval(x) / &d)
    }

    /// The composition `self(g(t))`.
    pub fn compose(&self, g: &RatFn) -> Result<RatFn> {
        let horner = |p: &Poly| -> RatFn {
            p.coeffs()
                .iter()
                .rev()
                .fold(RatFn::zero(self.conductor()), |acc, c| {
                    acc.mul(g).add(&RatFn::constant(c.clone()))
                })
        };
        horner(&self.num).div(&horner(&self.den))
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFn[{}]({})", self.conductor(), self)
    }
}

/// Arithmetic entry point mirroring the checked scalar API.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RatFnOp {
    Add,
    Sub,
    Mul,
    Div,
    Differentiate,
}

/// `g` is ignored for `Differentiate` and required otherwise.
pub fn ratfn_arith(op: RatFnOp, f: &RatFn, g: Option<&RatFn>) -> Result<RatFn> {
    let need = || g.ok_or_else(|| Error::Usage("second operand required".into()));
    let check = |g: &RatFn| {
        if g.conductor() == f.conductor() {
            Ok(())
        } else {
            Err(Error::ConductorMismatch {
                left: f.conductor(),
                right: g.conductor(),
            })
        }
    };
    match op {
        RatFnOp::Differentiate => Ok(f.derivative()),
        RatFnOp::Add => {
            let g = need()?;
            check(g)?;
            Ok(f.add(g))
        }
        RatFnOp::Sub => {
            let g = need()?;
            check(g)?;
            Ok(f.sub(g))
        }
        RatFnOp::Mul => {
            let g = need()?;
            check(g)?;
            Ok(f.mul(g))
        }
        RatFnOp::Div => {
            let g = need()?;
            check(g)?;
            f.div(g)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str, n: u32) -> RatFn {
        RatFn::parse(s, n).unwrap()
    }

    #[test]
    fn power_rule() {
        let f = RatFn::linear_pow(&Cyc::one(1), -1);
        let df = ratfn_arith(RatFnOp::Differentiate, &f, None).unwrap();
        assert_eq!(df, RatFn::linear_pow(&Cyc::one(1), -2).neg());
    }

    #[test]
    fn product_cancels() {
        let t = RatFn::t(3);
        let inv = t.recip().unwrap();
        assert_eq!(ratfn_arith(RatFnOp::Mul, &t, Some(&inv)).unwrap(), RatFn::one(3));
    }

    #[test]
    fn cayley_derivative() {
        let f = rf("(t+1)/(t-1)", 1);
        assert_eq!(f.derivative(), rf("-2/(t-1)^2", 1));
    }

    #[test]
    fn canonical_form() {
        let a = rf("(2*t - 2)/(4*t^2 - 4)", 1);
        assert_eq!(a, rf("1/(2*t + 2)", 1));
        assert!(a.denominator().lead().unwrap().is_one());
        assert_eq!(rf("t/t", 5), RatFn::one(5));
        assert_eq!(
            ratfn_arith(RatFnOp::Div, &RatFn::one(1), Some(&RatFn::zero(1))),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn composition() {
        // f(t) = t^2, g = 1/t
        let f = rf("t^2", 1);
        let g = rf("1/t", 1);
        assert_eq!(f.compose(&g).unwrap(), rf("t^-2", 1));
        assert_eq!(rf("1/(t-1)", 1).eval(&Cyc::one(1)), None);
    }
}
