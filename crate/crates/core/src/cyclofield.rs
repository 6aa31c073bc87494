//! Exact arithmetic in cyclotomic fields Q(zeta_n).
//!
//! An element is stored by its coordinates over the power basis
//! `1, z, ..., z^(phi(n)-1)` after reduction modulo the n-th cyclotomic
//! polynomial, so two elements of the same field are equal exactly when
//! their coefficient vectors are.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use num::integer::Integer;
use num::{BigInt, BigRational, Complex, One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::expr;

/// Per-conductor data: the cyclotomic polynomial and the reduced powers of zeta.
#[derive(Debug)]
pub struct CyclotomicData {
    conductor: u32,
    /// Coefficients of Phi_n, lowest degree first; monic.
    modulus: Vec<BigInt>,
    /// `powers[k]` is zeta^k reduced, for `0 <= k < n`.
    powers: Vec<Vec<BigInt>>,
}

impl CyclotomicData {
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Euler's phi of the conductor, the dimension of the field over Q.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    fn build(n: u32) -> CyclotomicData {
        // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d
        let mut poly = vec![BigInt::zero(); n as usize + 1];
        poly[0] = -BigInt::one();
        poly[n as usize] = BigInt::one();
        for d in 1..n {
            if n % d == 0 {
                let divisor = field_data(d);
                poly = exact_div_monic(&poly, &divisor.modulus);
            }
        }
        let phi = poly.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut current = vec![BigInt::zero(); phi];
        current[0] = BigInt::one();
        for _ in 0..n {
            powers.push(current.clone());
            // multiply by z and fold the overflow term back in
            let overflow = current[phi - 1].clone();
            for j in (1..phi).rev() {
                current[j] = current[j - 1].clone();
            }
            current[0] = BigInt::zero();
            if !overflow.is_zero() {
                for j in 0..phi {
                    current[j] -= &overflow * &poly[j];
                }
            }
        }
        CyclotomicData {
            conductor: n,
            modulus: poly,
            powers,
        }
    }
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[k + j] -= &c * dj;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    quot
}

type Cache = RwLock<HashMap<u32, Arc<CyclotomicData>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Shared field data for conductor `n`, computed once and cached.
///
/// Panics if `n == 0`.
pub fn field_data(n: u32) -> Arc<CyclotomicData> {
    assert!(n >= 1, "conductor must be positive");
    if let Some(data) = cache().read().expect("cyclotomic cache poisoned").get(&n) {
        return data.clone();
    }
    let built = Arc::new(CyclotomicData::build(n));
    let mut guard = cache().write().expect("cyclotomic cache poisoned");
    guard.entry(n).or_insert(built).clone()
}

/// Euler's totient, via the degree of the cyclotomic polynomial.
pub fn euler_phi(n: u32) -> usize {
    field_data(n).degree()
}

/// An element of Q(zeta_n) in canonical reduced form.
#[derive(Clone)]
pub struct Cyc {
    field: Arc<CyclotomicData>,
    coeffs: Vec<BigRational>,
}

impl Cyc {
    pub fn zero(conductor: u32) -> Cyc {
        let field = field_data(conductor);
        let coeffs = vec![BigRational::zero(); field.degree()];
        Cyc { field, coeffs }
    }

    pub fn one(conductor: u32) -> Cyc {
        Cyc::from_rational(BigRational::one(), conductor)
    }

    pub fn from_rational(value: BigRational, conductor: u32) -> Cyc {
        let mut out = Cyc::zero(conductor);
        out.coeffs[0] = value;
        out
    }

    pub fn from_int(value: i64, conductor: u32) -> Cyc {
        Cyc::from_rational(BigRational::from_integer(value.into()), conductor)
    }

    /// Builds an element from power-basis coordinates; the length must be phi(n).
    pub fn from_coeffs(coeffs: Vec<BigRational>, conductor: u32) -> Result<Cyc> {
        let field = field_data(conductor);
        if coeffs.len() != field.degree() {
            return Err(Error::Usage(format!(
                "expected {} coefficients for conductor {}, got {}",
                field.degree(),
                conductor,
                coeffs.len()
            )));
        }
        Ok(Cyc { field, coeffs })
    }

    /// zeta_n^k for any integer k.
    pub fn zeta_pow(k: i64, conductor: u32) -> Cyc {
        let field = field_data(conductor);
        let idx = k.rem_euclid(conductor as i64) as usize;
        let coeffs = field.powers[idx]
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        Cyc { field, coeffs }
    }

    pub fn zeta(conductor: u32) -> Cyc {
        Cyc::zeta_pow(1, conductor)
    }

    /// Parses an expression in the field grammar, `z` standing for zeta_n.
    pub fn parse(src: &str, conductor: u32) -> Result<Cyc> {
        if conductor == 0 {
            return Err(Error::Usage("conductor must be positive".into()));
        }
        expr::parse_scalar(src, conductor)
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// The integer value, if the element is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }

    fn check_same(&self, other: &Cyc) -> Result<()> {
        if self.conductor() != other.conductor() {
            return Err(Error::ConductorMismatch {
                left: self.conductor(),
                right: other.conductor(),
            });
        }
        Ok(())
    }

    /// Reduces a dense polynomial in zeta (any length) into canonical form.
    fn from_dense(field: &Arc<CyclotomicData>, dense: Vec<BigRational>) -> Cyc {
        let phi = field.degree();
        let n = field.conductor as usize;
        let mut coeffs = vec![BigRational::zero(); phi];
        for (k, c) in dense.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if k < phi {
                coeffs[k] += c;
            } else {
                for (j, p) in field.powers[k % n].iter().enumerate() {
                    if !p.is_zero() {
                        coeffs[j] += &c * p;
                    }
                }
            }
        }
        Cyc {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn try_add(&self, other: &Cyc) -> Result<Cyc> {
        self.check_same(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Cyc) -> Result<Cyc> {
        self.check_same(other)?;
        Ok(self.add_unchecked(&other.neg_ref()))
    }

    pub fn try_mul(&self, other: &Cyc) -> Result<Cyc> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub fn try_div(&self, other: &Cyc) -> Result<Cyc> {
        self.check_same(other)?;
        Ok(self.mul_unchecked(&other.inv()?))
    }

    fn add_unchecked(&self, other: &Cyc) -> Cyc {
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Cyc {
            field: self.field.clone(),
            coeffs,
        }
    }

    fn neg_ref(&self) -> Cyc {
        Cyc {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, r: &BigRational) -> Cyc {
        if r.is_zero() {
            return Cyc::zero(self.conductor());
        }
        Cyc {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    fn mul_unchecked(&self, other: &Cyc) -> Cyc {
        if self.is_zero() || other.is_zero() {
            return Cyc::zero(self.conductor());
        }
        if let Some(r) = self.as_rational() {
            return other.scale(r);
        }
        if let Some(r) = other.as_rational() {
            return self.scale(r);
        }
        let phi = self.field.degree();
        let mut dense = vec![BigRational::zero(); 2 * phi - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    dense[i + j] += a * b;
                }
            }
        }
        Cyc::from_dense(&self.field, dense)
    }

    /// Image under the field automorphism zeta -> zeta^k; `k` must be a unit mod n.
    pub fn galois(&self, k: i64) -> Result<Cyc> {
        let n = self.conductor() as i64;
        let k = k.rem_euclid(n.max(1));
        if n > 1 && k.gcd(&n) != 1 {
            return Err(Error::Usage(format!("{k} is not a unit modulo {n}")));
        }
        Ok(self.substitute_power(k as usize, &self.field))
    }

    // sum c_j zeta_target^(j * step), reduced in `target`
    fn substitute_power(&self, step: usize, target: &Arc<CyclotomicData>) -> Cyc {
        let n = target.conductor as usize;
        let mut dense = vec![BigRational::zero(); n];
        for (j, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                dense[(j * step) % n] += c;
            }
        }
        Cyc::from_dense(target, dense)
    }

    /// Complex conjugation, zeta -> zeta^(n-1).
    pub fn conj(&self) -> Cyc {
        let n = self.conductor() as usize;
        if n <= 2 {
            return self.clone();
        }
        self.substitute_power(n - 1, &self.field)
    }

    /// Embeds into Q(zeta_M) via zeta_m -> zeta_M^(M/m).
    pub fn embed(&self, new_conductor: u32) -> Result<Cyc> {
        let m = self.conductor();
        if new_conductor == 0 || new_conductor % m != 0 {
            return Err(Error::NotDivisible {
                from: m,
                to: new_conductor,
            });
        }
        if new_conductor == m {
            return Ok(self.clone());
        }
        let target = field_data(new_conductor);
        Ok(self.substitute_power((new_conductor / m) as usize, &target))
    }

    /// Field norm down to Q.
    pub fn norm(&self) -> BigRational {
        self.norm_cofactor().1
    }

    // returns (prod of non-identity conjugates, norm)
    fn norm_cofactor(&self) -> (Cyc, BigRational) {
        let n = self.conductor() as i64;
        let mut co = Cyc::one(self.conductor());
        for k in 2..n {
            if k.gcd(&n) == 1 {
                co = co.mul_unchecked(&self.substitute_power(k as usize, &self.field));
            }
        }
        let full = self.mul_unchecked(&co);
        let norm = full
            .as_rational()
            .cloned()
            .expect("norm of a cyclotomic element is rational");
        (co, norm)
    }

    pub fn inv(&self) -> Result<Cyc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Cyc::from_rational(r.recip(), self.conductor()));
        }
        let (co, norm) = self.norm_cofactor();
        Ok(co.scale(&norm.recip()))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, exp: i64) -> Result<Cyc> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Cyc::one(self.conductor());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul_unchecked(&sq);
            }
        }
        Ok(acc)
    }

    /// Double-precision value at zeta = exp(2 pi i / n).
    pub fn approx(&self) -> Complex<f64> {
        let n = self.conductor() as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| {
                let angle = 2.0 * std::f64::consts::PI * j as f64 / n;
                let v = c.to_f64().unwrap_or(f64::NAN);
                Complex::new(v * angle.cos(), v * angle.sin())
            })
            .sum()
    }
}

/// Checked field arithmetic used by the public surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn cyc_arith(op: ArithOp, x: &Cyc, y: &Cyc) -> Result<Cyc> {
    match op {
        ArithOp::Add => x.try_add(y),
        ArithOp::Sub => x.try_sub(y),
        ArithOp::Mul => x.try_mul(y),
        ArithOp::Div => x.try_div(y),
    }
}

impl PartialEq for Cyc {
    fn eq(&self, other: &Cyc) -> bool {
        self.conductor() == other.conductor() && self.coeffs == other.coeffs
    }
}

impl Eq for Cyc {}

impl Hash for Cyc {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.conductor().hash(state);
        self.coeffs.hash(state);
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Cyc> for &Cyc {
            type Output = Cyc;
            fn $method(self, rhs: &Cyc) -> Cyc {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{e}"),
                }
            }
        }
        impl $trait<Cyc> for Cyc {
            type Output = Cyc;
            fn $method(self, rhs: Cyc) -> Cyc {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Cyc> for Cyc {
            type Output = Cyc;
            fn $method(self, rhs: &Cyc) -> Cyc {
                (&self).$method(rhs)
            }
        }
        impl $trait<Cyc> for &Cyc {
            type Output = Cyc;
            fn $method(self, rhs: Cyc) -> Cyc {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        self.neg_ref()
    }
}

impl Neg for Cyc {
    type Output = Cyc;
    fn neg(self) -> Cyc {
        self.neg_ref()
    }
}

impl fmt::Debug for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyc[{}]({})", self.conductor(), self)
    }
}

/// Prints in the expression grammar, so `Cyc::parse(&x.to_string(), n) == x`.
impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            let body = match k {
                0 => mag.to_string(),
                _ => {
                    let mono = if k == 1 { "z".to_string() } else { format!("z^{k}") };
                    if mag.is_one() {
                        mono
                    } else {
                        format!("{mag}*{mono}")
                    }
                }
            };
            match (first, negative) {
                (true, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "{body}")?,
                (false, true) => write!(f, " - {body}")?,
                (false, false) => write!(f, " + {body}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct CycRepr {
    conductor: u32,
    coeffs: Vec<String>,
}

impl Serialize for Cyc {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CycRepr {
            conductor: self.conductor(),
            coeffs: self.coeffs.iter().map(ToString::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Cyc {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Cyc, D::Error> {
        let repr = CycRepr::deserialize(deserializer)?;
        if repr.conductor == 0 {
            return Err(D::Error::custom("conductor must be positive"));
        }
        let coeffs = repr
            .coeffs
            .iter()
            .map(|s| BigRational::from_str(s).map_err(|e| D::Error::custom(format!("{s}: {e}"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Cyc::from_coeffs(coeffs, repr.conductor).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    #[test]
    fn cyclotomic_polynomials() {
        let phi12: Vec<i64> = field_data(12)
            .modulus()
            .iter()
            .map(|c| c.to_i64().unwrap())
            .collect();
        assert_eq!(phi12, vec![1, 0, -1, 0, 1]);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(2), 1);
        assert_eq!(euler_phi(5), 4);
        assert_eq!(euler_phi(30), 8);
    }

    #[test]
    fn parse_zero_and_reduction() {
        assert_eq!(Cyc::parse("0", 4).unwrap().coeffs(), ints(&[0, 0]).as_slice());
        let x = Cyc::parse("z + z^4", 5).unwrap();
        assert_eq!(x.coeffs(), ints(&[-1, 0, -1, -1]).as_slice());
    }

    #[test]
    fn golden_ratio_product() {
        let a = Cyc::parse("z + z^4", 5).unwrap();
        let b = Cyc::parse("z^2 + z^3", 5).unwrap();
        assert_eq!(cyc_arith(ArithOp::Mul, &a, &b).unwrap(), Cyc::from_int(-1, 5));
    }

    #[test]
    fn division() {
        let one = Cyc::one(5);
        let z = Cyc::zeta(5);
        assert_eq!(cyc_arith(ArithOp::Div, &one, &z).unwrap(), Cyc::zeta_pow(4, 5));
        assert_eq!(
            cyc_arith(ArithOp::Div, &one, &Cyc::zero(5)),
            Err(Error::DivisionByZero)
        );
        assert!(matches!(
            cyc_arith(ArithOp::Add, &one, &Cyc::one(4)),
            Err(Error::ConductorMismatch { .. })
        ));
    }

    #[test]
    fn conjugation() {
        assert_eq!(Cyc::zeta(5).conj(), Cyc::zeta_pow(4, 5));
        let r = Cyc::from_rational(q(-7, 3), 5);
        assert_eq!(r.conj(), r);
        let x = Cyc::parse("z + z^4", 5).unwrap();
        assert_eq!(x.conj(), x);
        assert!(x.approx().im.abs() < 1e-12);
    }

    #[test]
    fn embedding() {
        let m1 = Cyc::from_int(-1, 2);
        assert_eq!(m1.embed(4).unwrap(), Cyc::zeta_pow(2, 4));
        assert_eq!(Cyc::zero(3).embed(12).unwrap(), Cyc::zero(12));
        assert_eq!(Cyc::zeta(3).embed(6).unwrap(), Cyc::zeta_pow(2, 6));
        assert_eq!(
            Cyc::zeta(3).embed(8),
            Err(Error::NotDivisible { from: 3, to: 8 })
        );
    }

    #[test]
    fn approximations() {
        let i = Cyc::zeta(4).approx();
        assert!((i - Complex::new(0.0, 1.0)).norm() < 1e-12);
        let g = Cyc::parse("z + z^4", 5).unwrap().approx();
        assert!((g.re - (5f64.sqrt() - 1.0) / 2.0).abs() < 1e-10);
        let s5 = Cyc::parse("2*(z+z^4)+1", 5).unwrap().approx();
        assert!((s5.re - 5f64.sqrt()).abs() < 1e-10 && s5.im.abs() < 1e-10);
    }

    #[test]
    fn sixth_root_is_the_tetrahedral_constant() {
        // x = (1 + i sqrt 3)/2 checked through the complex embedding
        let x = Cyc::parse("z", 6).unwrap();
        let v = x.approx();
        assert!((v - Complex::new(0.5, 3f64.sqrt() / 2.0)).norm() < 1e-12);
        // -zeta_3^2 is the same number
        let alt = Cyc::parse("-z^2", 3).unwrap().embed(6).unwrap();
        assert_eq!(alt, x);
        // while -zeta_6^2 is its conjugate
        assert_eq!(Cyc::parse("-z^2", 6).unwrap(), x.conj());
    }

    #[test]
    fn primitivity() {
        for n in 1..=24u32 {
            let z = Cyc::zeta(n);
            assert!(z.pow(n as i64).unwrap().is_one());
            for k in 1..n as i64 {
                assert!(!z.pow(k).unwrap().is_one(), "zeta_{n}^{k} == 1");
            }
        }
    }

    #[test]
    fn display_round_trip_and_json() {
        let x = Cyc::parse("3/2 - z^3 + 4*z/7", 7).unwrap();
        assert_eq!(Cyc::parse(&x.to_string(), 7).unwrap(), x);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"conductor":7,"coeffs":["3/2","4/7","0","-1","0","0"]}"#);
        let back: Cyc = serde_json::from_str(&json).unwrap();
        assert_eq!(back, x);
        assert!(serde_json::from_str::<Cyc>(r#"{"conductor":5,"coeffs":["1"]}"#).is_err());
    }

    #[test]
    fn norm_is_rational() {
        let x = Cyc::parse("1 + 2*z - z^3", 7).unwrap();
        let n = x.norm();
        let inv = x.inv().unwrap();
        assert!((&x * &inv).is_one());
        assert!(!n.is_zero());
    }
}
