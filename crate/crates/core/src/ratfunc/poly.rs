use std::fmt;

use crate::cyclofield::Cyc;
use crate::error::{Error, Result};

/// Dense univariate polynomial over Q(zeta_n), lowest degree first, with no
/// trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    conductor: u32,
    coeffs: Vec<Cyc>,
}

impl Poly {
    pub fn zero(conductor: u32) -> Poly {
        Poly {
            conductor,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: Cyc) -> Poly {
        let conductor = c.conductor();
        Poly::from_coeffs(vec![c], conductor)
    }

    pub fn one(conductor: u32) -> Poly {
        Poly::constant(Cyc::one(conductor))
    }

    /// The polynomial `t`.
    pub fn t(conductor: u32) -> Poly {
        Poly::from_coeffs(vec![Cyc::zero(conductor), Cyc::one(conductor)], conductor)
    }

    /// `t - a`.
    pub fn linear(a: &Cyc) -> Poly {
        let n = a.conductor();
        Poly::from_coeffs(vec![-a, Cyc::one(n)], n)
    }

    /// Panics if any coefficient has a different conductor.
    pub fn from_coeffs(mut coeffs: Vec<Cyc>, conductor: u32) -> Poly {
        assert!(
            coeffs.iter().all(|c| c.conductor() == conductor),
            "polynomial coefficients must share the conductor {conductor}"
        );
        while coeffs.last().is_some_and(Cyc::is_zero) {
            coeffs.pop();
        }
        Poly { conductor, coeffs }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[Cyc] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Cyc {
        self.coeffs
            .get(k)
            .cloned()
            .unwrap_or_else(|| Cyc::zero(self.conductor))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Cyc> {
        self.coeffs.last()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Poly::from_coeffs(coeffs, self.conductor)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Cyc) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect(), self.conductor)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.conductor);
        }
        let mut out = vec![Cyc::zero(self.conductor); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = &out[i + j] + &(a * b);
                }
            }
        }
        Poly::from_coeffs(out, self.conductor)
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut acc = Poly::one(self.conductor);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(self.conductor), self.clone()));
        }
        let mut quot = vec![Cyc::zero(self.conductor); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * dj);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((
            Poly::from_coeffs(quot, self.conductor),
            Poly::from_coeffs(rem, self.conductor),
        ))
    }

    /// Divides by the leading coefficient; the zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => self.clone(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.inv().expect("leading coefficient is nonzero")),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.gcd_cofactors(other).0
    }

    /// Monic gcd `g` together with `self / g` and `other / g`. The gcd of
    /// two zero polynomials is zero, with the inputs returned as cofactors.
    pub fn gcd_cofactors(&self, other: &Poly) -> (Poly, Poly, Poly) {
        if !self.is_zero() && !other.is_zero() {
            if let Some(found) = super::modgcd::modular_gcd(self, other) {
                return found;
            }
        }
        let g = self.euclid_gcd(other);
        if g.is_zero() {
            return (g, self.clone(), other.clone());
        }
        let qa = self.div_rem(&g).expect("nonzero gcd").0;
        let qb = other.div_rem(&g).expect("nonzero gcd").0;
        (g, qa, qb)
    }

    pub(super) fn euclid_gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * &Cyc::from_int(k as i64, self.conductor))
            .collect();
        Poly::from_coeffs(coeffs, self.conductor)
    }

    pub fn eval(&self, x: &Cyc) -> Cyc {
        self.coeffs
            .iter()
            .rev()
            .fold(Cyc::zero(self.conductor), |acc, c| &(&acc * x) + c)
    }

    /// Synthetic division by `t - a`: returns the quotient and `self(a)`.
    pub fn div_linear(&self, a: &Cyc) -> (Poly, Cyc) {
        if self.is_zero() {
            return (self.clone(), Cyc::zero(self.conductor));
        }
        let d = self.coeffs.len() - 1;
        let mut quot = vec![Cyc::zero(self.conductor); d];
        let mut carry = Cyc::zero(self.conductor);
        for k in (0..=d).rev() {
            let v = &self.coeffs[k] + &(&carry * a);
            if k == 0 {
                carry = v;
            } else {
                quot[k - 1] = v.clone();
                carry = v;
            }
        }
        (Poly::from_coeffs(quot, self.conductor), carry)
    }

    /// Number of times `t - a` divides `self`, and the cofactor. The zero
    /// polynomial reports multiplicity 0.
    pub fn strip_root(&self, a: &Cyc) -> (usize, Poly) {
        let mut mult = 0;
        let mut current = self.clone();
        if current.is_zero() {
            return (0, current);
        }
        loop {
            let (q, r) = current.div_linear(a);
            if !r.is_zero() {
                return (mult, current);
            }
            mult += 1;
            current = q;
        }
    }

    /// Coefficients of `self(s + a)` as a polynomial in `s`.
    pub fn taylor_shift(&self, a: &Cyc) -> Poly {
        self.taylor_prefix(a, self.coeffs.len())
    }

    /// `self(s + a)` truncated below `s^terms`.
    pub fn taylor_prefix(&self, a: &Cyc, terms: usize) -> Poly {
        let mut out = Vec::with_capacity(terms);
        let mut current = self.clone();
        while out.len() < terms && !current.is_zero() {
            let (q, r) = current.div_linear(a);
            out.push(r);
            current = q;
        }
        Poly::from_coeffs(out, self.conductor)
    }
}

/// First `terms` coefficients of the power series `num(s) / den(s)`; requires `den(0) != 0`.
pub(crate) fn series_quotient(num: &Poly, den: &Poly, terms: usize) -> Result<Vec<Cyc>> {
    let d0_inv = den.coeff(0).inv()?;
    let mut out: Vec<Cyc> = Vec::with_capacity(terms);
    for k in 0..terms {
        let mut acc = num.coeff(k);
        for j in 1..=k.min(den.coeffs().len().saturating_sub(1)) {
            acc = &acc - &(&den.coeffs()[j] * &out[k - j]);
        }
        out.push(&acc * &d0_inv);
    }
    Ok(out)
}

fn coeff_text(c: &Cyc) -> (bool, String) {
    match c.as_rational() {
        Some(r) if r < &num::BigRational::from_integer(0.into()) => (true, (-r).to_string()),
        Some(r) => (false, r.to_string()),
        None => (false, format!("({c})")),
    }
}

/// Prints in the rational-function grammar, highest degree first.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (negative, mag) = coeff_text(c);
            let mono = match k {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{k}"),
            };
            let body = if k == 0 {
                mag
            } else if mag == "1" {
                mono
            } else {
                format!("{mag}*{mono}")
            };
            match (first, negative) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.conductor, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[i64]) -> Poly {
        Poly::from_coeffs(v.iter().map(|&x| Cyc::from_int(x, 1)).collect(), 1)
    }

    #[test]
    fn division_and_gcd() {
        // (t^2 - 1) = (t - 1)(t + 1)
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&p(&[2, 2])), b);
        assert_eq!(p(&[3]).gcd(&a), Poly::one(1));
        assert_eq!(a.div_rem(&Poly::zero(1)), Err(Error::DivisionByZero));
    }

    #[test]
    fn roots_and_shifts() {
        // (t - 1)^2 (t + 2)
        let f = p(&[1, -2, 1]).mul(&p(&[2, 1]));
        let (m, co) = f.strip_root(&Cyc::one(1));
        assert_eq!(m, 2);
        assert_eq!(co, p(&[2, 1]));
        // f(s + 1) = s^2 (s + 3)
        assert_eq!(f.taylor_shift(&Cyc::one(1)), p(&[0, 0, 3, 1]));
        assert_eq!(f.eval(&Cyc::from_int(2, 1)), Cyc::from_int(4, 1));
    }

    #[test]
    fn series() {
        // 1 / (1 - s) = 1 + s + s^2 + ...
        let s = series_quotient(&p(&[1]), &p(&[1, -1]), 4).unwrap();
        assert!(s.iter().all(Cyc::is_one));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[-1, 0, 2]).to_string(), "2*t^2 - 1");
        let z = Poly::from_coeffs(vec![Cyc::zero(5), Cyc::zeta(5)], 5);
        assert_eq!(z.to_string(), "(z)*t");
    }
}
