use super::poly::{series_quotient, Poly};
use super::ratfn::RatFn;
use crate::cyclofield::Cyc;
use crate::error::{Error, Result};

/// `f = poly + sum_{i,k} terms[i][k-1] * (t - poles[i])^(-k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialFractions {
    pub poles: Vec<Cyc>,
    pub poly: Poly,
    /// `terms[i][k - 1]` is the coefficient of `(t - poles[i])^(-k)`.
    pub terms: Vec<Vec<Cyc>>,
}

impl PartialFractions {
    /// Coefficient of `(t - poles[i])^(-k)`, zero beyond the pole order.
    pub fn coefficient(&self, i: usize, k: usize) -> Cyc {
        self.terms[i]
            .get(k.wrapping_sub(1))
            .cloned()
            .unwrap_or_else(|| Cyc::zero(self.poly.conductor()))
    }

    /// Sums the decomposition back into a single rational function.
    pub fn reconstruct(&self) -> RatFn {
        let mut acc = RatFn::from_poly(self.poly.clone());
        for (pole, coeffs) in self.poles.iter().zip(&self.terms) {
            for (k, c) in coeffs.iter().enumerate() {
                if !c.is_zero() {
                    acc = acc.add(&RatFn::linear_pow(pole, -(k as i64 + 1)).scale(c));
                }
            }
        }
        acc
    }
}

/// Laurent coefficients of `num / den` at `a` where `den = (t - a)^order * rest`:
/// returns the coefficients of `(t - a)^(-order) .. (t - a)^(-1)`, highest pole first.
fn principal_part(num: &Poly, rest: &Poly, a: &Cyc, order: usize) -> Result<Vec<Cyc>> {
    let shifted_num = num.taylor_prefix(a, order);
    let shifted_den = rest.taylor_prefix(a, order);
    series_quotient(&shifted_num, &shifted_den, order)
}

/// Decomposes `f` against a known pole set; no root finding is performed.
pub fn partial_fractions(f: &RatFn, poles: &[Cyc]) -> Result<PartialFractions> {
    let n = f.conductor();
    for (i, p) in poles.iter().enumerate() {
        if p.conductor() != n {
            return Err(Error::ConductorMismatch {
                left: n,
                right: p.conductor(),
            });
        }
        if poles[..i].contains(p) {
            return Err(Error::Usage(format!("repeated pole {p}")));
        }
    }
    let num = f.numerator();
    let den = f.denominator();
    let (poly, _) = num.div_rem(den)?;

    let stripped: Vec<(usize, Poly)> = poles.iter().map(|p| den.strip_root(p)).collect();
    // den is monic and the poles distinct, so it factors over them exactly
    // when the orders account for its whole degree
    let total: usize = stripped.iter().map(|(m, _)| m).sum();
    if total != den.degree().unwrap_or(0) {
        let mut remaining = den.clone();
        for p in poles {
            remaining = remaining.strip_root(p).1;
        }
        return Err(Error::UnexpectedPole {
            factor: remaining.to_string(),
        });
    }

    let mut terms = Vec::with_capacity(poles.len());
    for (p, (order, rest)) in poles.iter().zip(&stripped) {
        if *order == 0 {
            terms.push(Vec::new());
            continue;
        }
        let mut series = principal_part(num, rest, p, *order)?;
        // series[j] multiplies (t - p)^(j - order)
        series.reverse();
        terms.push(series);
    }
    Ok(PartialFractions {
        poles: poles.to_vec(),
        poly,
        terms,
    })
}

/// Coefficient of `(t - a)^(-1)` in the Laurent expansion of `f` at `a`;
/// zero at regular points.
pub fn residue_at(f: &RatFn, a: &Cyc) -> Cyc {
    let (order, rest) = f.denominator().strip_root(a);
    if order == 0 {
        return Cyc::zero(f.conductor());
    }
    let series = principal_part(f.numerator(), &rest, a, order).expect("rest(a) != 0");
    series[order - 1].clone()
}

/// Residue at infinity, `-res_{s=0} f(1/s) / s^2`.
pub fn residue_at_infinity(f: &RatFn) -> Cyc {
    let n = f.conductor();
    let s_inv = RatFn::t(n).recip().expect("t is nonzero");
    let g = f
        .compose(&s_inv)
        .expect("composition with 1/t")
        .mul(&RatFn::linear_pow(&Cyc::zero(n), -2));
    -residue_at(&g, &Cyc::zero(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    fn rf(s: &str, n: u32) -> RatFn {
        RatFn::parse(s, n).unwrap()
    }

    fn c(s: &str, n: u32) -> Cyc {
        Cyc::parse(s, n).unwrap()
    }

    #[test]
    fn cayley_pullback_shape() {
        let f = rf("-2/((t-1)*(t+1))", 1);
        let poles = [c("0", 1), c("1", 1), c("-1", 1)];
        let pf = partial_fractions(&f, &poles).unwrap();
        assert!(pf.poly.is_zero());
        assert_eq!(pf.coefficient(0, 1), c("0", 1));
        assert_eq!(pf.coefficient(1, 1), c("-1", 1));
        assert_eq!(pf.coefficient(2, 1), c("1", 1));
        assert_eq!(pf.reconstruct(), f);
    }

    #[test]
    fn polynomial_only() {
        let pf = partial_fractions(&rf("t^2", 3), &[c("z", 3)]).unwrap();
        assert_eq!(pf.poly, Poly::t(3).mul(&Poly::t(3)));
        assert!(pf.terms[0].is_empty());
    }

    /// Oracle: clear denominators and solve the 3x3 system for
    /// 1 = A (t+1)^2 + B (t-1)(t+1) + C (t-1)
    /// by Cramer's rule over Q.
    fn double_pole_oracle() -> (BigRational, BigRational, BigRational) {
        // rows: t^2, t, 1 coefficients of (A, B, C)
        let m = [[1i64, 1, 0], [2, 0, 1], [1, -1, -1]];
        let rhs = [0i64, 0, 1];
        let det3 = |m: [[i64; 3]; 3]| {
            m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
        };
        let d = det3(m);
        let col = |j: usize| {
            let mut mm = m;
            for i in 0..3 {
                mm[i][j] = rhs[i];
            }
            BigRational::new(det3(mm).into(), d.into())
        };
        (col(0), col(1), col(2))
    }

    #[test]
    fn double_pole_matches_linear_solve() {
        let (a, b, cc) = double_pole_oracle();
        assert_eq!(a, BigRational::new(1.into(), 4.into()));
        let f = rf("1/((t-1)*(t+1)^2)", 1);
        let pf = partial_fractions(&f, &[c("1", 1), c("-1", 1)]).unwrap();
        assert_eq!(pf.coefficient(0, 1), Cyc::from_rational(a, 1));
        assert_eq!(pf.coefficient(1, 1), Cyc::from_rational(b, 1));
        assert_eq!(pf.coefficient(1, 2), Cyc::from_rational(cc, 1));
        assert_eq!(pf.coefficient(1, 2), c("-1/2", 1));
    }

    #[test]
    fn unexpected_pole() {
        let err = partial_fractions(&rf("1/(t*(t-2))", 1), &[c("0", 1)]).unwrap_err();
        assert_eq!(err, Error::UnexpectedPole { factor: "t - 2".into() });
    }

    #[test]
    fn residues() {
        assert_eq!(residue_at(&rf("1/(t-1)", 1), &c("1", 1)), c("1", 1));
        assert_eq!(residue_at(&rf("1/(t-1)^2", 1), &c("1", 1)), c("0", 1));
        assert_eq!(residue_at(&rf("-2/((t-1)*(t+1))", 1), &c("-1", 1)), c("1", 1));
        assert_eq!(residue_at(&rf("1/(t-1)", 1), &c("5", 1)), c("0", 1));
        assert_eq!(residue_at_infinity(&rf("1/t", 1)), c("-1", 1));
    }
}
