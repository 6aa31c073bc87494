use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::ratfn::RatFn;
use super::poly::Poly;
use crate::cyclofield::Cyc;
use crate::error::{Error, Result};

/// A point of the projective line: a finite value or infinity.
///
/// This is the normalized form of a pair `(u, v)` modulo scalars with the
/// last nonzero coordinate equal to 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProjPoint {
    Finite(Cyc),
    Infinity,
}

impl ProjPoint {
    /// Normalizes a homogeneous pair; fails when both coordinates vanish.
    pub fn from_pair(u: &Cyc, v: &Cyc) -> Result<ProjPoint> {
        if v.is_zero() {
            if u.is_zero() {
                return Err(Error::Usage("(0, 0) is not a projective point".into()));
            }
            Ok(ProjPoint::Infinity)
        } else {
            Ok(ProjPoint::Finite(u.try_div(v)?))
        }
    }

    pub fn finite(&self) -> Option<&Cyc> {
        match self {
            ProjPoint::Finite(a) => Some(a),
            ProjPoint::Infinity => None,
        }
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(a) => write!(f, "{a}"),
            ProjPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// A fractional linear map `t -> (a t + b) / (c t + d)`, stored as a 2x2
/// matrix modulo scalars, normalized so the first nonzero entry in
/// row-major order is 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Moebius {
    m: [Cyc; 4],
}

impl Moebius {
    pub fn new(a: Cyc, b: Cyc, c: Cyc, d: Cyc) -> Result<Moebius> {
        let n = a.conductor();
        for x in [&b, &c, &d] {
            if x.conductor() != n {
                return Err(Error::ConductorMismatch {
                    left: n,
                    right: x.conductor(),
                });
            }
        }
        let det = &(&a * &d) - &(&b * &c);
        if det.is_zero() {
            return Err(Error::Usage("singular fractional linear map".into()));
        }
        Ok(Moebius::normalized([a, b, c, d]))
    }

    fn normalized(m: [Cyc; 4]) -> Moebius {
        let pivot = m.iter().find(|x| !x.is_zero()).expect("nonzero matrix");
        if pivot.is_one() {
            return Moebius { m };
        }
        let inv = pivot.inv().expect("nonzero pivot");
        Moebius {
            m: [&m[0] * &inv, &m[1] * &inv, &m[2] * &inv, &m[3] * &inv],
        }
    }

    pub fn identity(conductor: u32) -> Moebius {
        Moebius {
            m: [
                Cyc::one(conductor),
                Cyc::zero(conductor),
                Cyc::zero(conductor),
                Cyc::one(conductor),
            ],
        }
    }

    /// Builds from expressions in the scalar grammar.
    pub fn parse(a: &str, b: &str, c: &str, d: &str, conductor: u32) -> Result<Moebius> {
        Moebius::new(
            Cyc::parse(a, conductor)?,
            Cyc::parse(b, conductor)?,
            Cyc::parse(c, conductor)?,
            Cyc::parse(d, conductor)?,
        )
    }

    pub fn conductor(&self) -> u32 {
        self.m[0].conductor()
    }

    /// Entries `[a, b, c, d]` of the normalized matrix.
    pub fn entries(&self) -> &[Cyc; 4] {
        &self.m
    }

    pub fn is_identity(&self) -> bool {
        self.m[0].is_one() && self.m[1].is_zero() && self.m[2].is_zero() && self.m[3].is_one()
    }

    pub fn det(&self) -> Cyc {
        &(&self.m[0] * &self.m[3]) - &(&self.m[1] * &self.m[2])
    }

    pub fn trace(&self) -> Cyc {
        &self.m[0] + &self.m[3]
    }

    /// `tr^2 / det - 1`: the character of the three-dimensional rotation
    /// (adjoint) representation, well defined on the projective class. For a
    /// rotation by angle theta it equals `1 + 2 cos theta`.
    pub fn rotation_character(&self) -> Cyc {
        let tr = self.trace();
        &(&(&tr * &tr) / &self.det()) - &Cyc::one(self.conductor())
    }

    pub fn apply(&self, p: &ProjPoint) -> ProjPoint {
        let [a, b, c, d] = &self.m;
        match p {
            ProjPoint::Infinity => {
                if c.is_zero() {
                    ProjPoint::Infinity
                } else {
                    ProjPoint::Finite(a / c)
                }
            }
            ProjPoint::Finite(x) => {
                let num = &(a * x) + b;
                let den = &(c * x) + d;
                ProjPoint::from_pair(&num, &den).expect("nonsingular map")
            }
        }
    }

    /// `self o other`, i.e. `t -> self(other(t))`.
    pub fn compose(&self, other: &Moebius) -> Moebius {
        let [a, b, c, d] = &self.m;
        let [e, f, g, h] = &other.m;
        Moebius::normalized([
            &(a * e) + &(b * g),
            &(a * f) + &(b * h),
            &(c * e) + &(d * g),
            &(c * f) + &(d * h),
        ])
    }

    pub fn inverse(&self) -> Moebius {
        let [a, b, c, d] = &self.m;
        Moebius::normalized([d.clone(), -b, -c, a.clone()])
    }

    /// Smallest `k >= 1` with `self^k = id`, if at most `bound`.
    pub fn order(&self, bound: usize) -> Option<usize> {
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.compose(self);
        }
        None
    }

    /// The map as a rational function of `t`.
    pub fn to_ratfn(&self) -> RatFn {
        let n = self.conductor();
        let [a, b, c, d] = &self.m;
        let num = Poly::from_coeffs(vec![b.clone(), a.clone()], n);
        let den = Poly::from_coeffs(vec![d.clone(), c.clone()], n);
        RatFn::new(num, den).expect("nonsingular map")
    }

    /// Lifts the coefficients into a larger cyclotomic field.
    pub fn embed(&self, conductor: u32) -> Result<Moebius> {
        let [a, b, c, d] = &self.m;
        Ok(Moebius::normalized([
            a.embed(conductor)?,
            b.embed(conductor)?,
            c.embed(conductor)?,
            d.embed(conductor)?,
        ]))
    }

    /// The unique map sending `src[i]` to `dst[i]`.
    pub fn from_triple(src: &[ProjPoint; 3], dst: &[ProjPoint; 3]) -> Result<Moebius> {
        let conductor = src
            .iter()
            .chain(dst)
            .find_map(|p| p.finite().map(Cyc::conductor))
            .ok_or_else(|| Error::Usage("triples cannot be all infinite".into()))?;
        for t in [src, dst] {
            if t[0] == t[1] || t[0] == t[2] || t[1] == t[2] {
                return Err(Error::Usage("triple points must be pairwise distinct".into()));
            }
            for p in t {
                if let ProjPoint::Finite(x) = p {
                    if x.conductor() != conductor {
                        return Err(Error::ConductorMismatch {
                            left: conductor,
                            right: x.conductor(),
                        });
                    }
                }
            }
        }
        let to_std_src = to_standard(src, conductor);
        let to_std_dst = to_standard(dst, conductor);
        let m = to_std_dst.inverse().compose(&to_std_src);
        debug_assert!(src.iter().zip(dst).all(|(s, d)| &m.apply(s) == d));
        Ok(m)
    }
}

// Map sending (p0, p1, p2) to (0, 1, inf).
fn to_standard(p: &[ProjPoint; 3], n: u32) -> Moebius {
    let one = Cyc::one(n);
    let zero = Cyc::zero(n);
    let m = match (&p[0], &p[1], &p[2]) {
        (ProjPoint::Infinity, ProjPoint::Finite(z2), ProjPoint::Finite(z3)) => {
            // (z2 - z3) / (t - z3)
            [zero, z2 - z3, one, -z3]
        }
        (ProjPoint::Finite(z1), ProjPoint::Infinity, ProjPoint::Finite(z3)) => {
            // (t - z1) / (t - z3)
            [one.clone(), -z1, one, -z3]
        }
        (ProjPoint::Finite(z1), ProjPoint::Finite(z2), ProjPoint::Infinity) => {
            // (t - z1) / (z2 - z1)
            [one, -z1, zero, z2 - z1]
        }
        (ProjPoint::Finite(z1), ProjPoint::Finite(z2), ProjPoint::Finite(z3)) => {
            // (t - z1)(z2 - z3) / ((t - z3)(z2 - z1))
            let u = z2 - z3;
            let v = z2 - z1;
            [u.clone(), -&(z1 * &u), v.clone(), -&(z3 * &v)]
        }
        _ => unreachable!("distinct points contain at most one infinity"),
    };
    Moebius::normalized(m)
}

impl fmt::Display for Moebius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = &self.m;
        write!(f, "(({a})*t + ({b}))/(({c})*t + ({d}))")
    }
}

impl fmt::Debug for Moebius {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Moebius[{}]({})", self.conductor(), self)
    }
}

/// Serialized as the row-major 2x2 matrix `[[a, b], [c, d]]`.
impl Serialize for Moebius {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let [a, b, c, d] = &self.m;
        [[a, b], [c, d]].serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Moebius {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Moebius, D::Error> {
        let [[a, b], [c, d]] = <[[Cyc; 2]; 2]>::deserialize(deserializer)?;
        Moebius::new(a, b, c, d).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fin(s: &str, n: u32) -> ProjPoint {
        ProjPoint::Finite(Cyc::parse(s, n).unwrap())
    }

    #[test]
    fn apply_points() {
        let id = Moebius::identity(5);
        assert_eq!(id.apply(&fin("z^2", 5)), fin("z^2", 5));
        let psi = Moebius::parse("0", "z", "1", "0", 5).unwrap();
        assert_eq!(psi.apply(&ProjPoint::Infinity), fin("0", 5));
        assert_eq!(psi.apply(&fin("0", 5)), ProjPoint::Infinity);
        let phi = Moebius::parse("z", "0", "0", "1", 5).unwrap();
        for i in 0..5 {
            assert_eq!(
                phi.apply(&ProjPoint::Finite(Cyc::zeta_pow(i, 5))),
                ProjPoint::Finite(Cyc::zeta_pow(i + 1, 5))
            );
        }
    }

    #[test]
    fn composition() {
        let phi = Moebius::parse("z", "0", "0", "1", 4).unwrap();
        assert!(phi.compose(&phi.inverse()).is_identity());
        let mut acc = Moebius::identity(4);
        for _ in 0..4 {
            acc = acc.compose(&phi);
        }
        assert!(acc.is_identity());
        assert_eq!(phi.order(10), Some(4));
        // x = sigma tau has order 4 on the (0, 1, -1) configuration
        let tau = Moebius::parse("-1", "0", "0", "1", 1).unwrap();
        let sigma = Moebius::parse("1", "1", "1", "-1", 1).unwrap();
        assert_eq!(sigma.compose(&tau).order(10), Some(4));
    }

    #[test]
    fn triples() {
        let n = 5;
        let std = [fin("0", n), fin("1", n), ProjPoint::Infinity];
        let m = Moebius::from_triple(&std, &std).unwrap();
        assert!(m.is_identity());
        let swapped = [ProjPoint::Infinity, fin("1", n), fin("0", n)];
        let inv = Moebius::from_triple(&std, &swapped).unwrap();
        assert_eq!(inv, Moebius::parse("0", "1", "1", "0", n).unwrap());
        let rot = [fin("0", n), fin("z", n), ProjPoint::Infinity];
        assert_eq!(
            Moebius::from_triple(&std, &rot).unwrap(),
            Moebius::parse("z", "0", "0", "1", n).unwrap()
        );
        let bad = [fin("0", n), fin("0", n), ProjPoint::Infinity];
        assert!(matches!(Moebius::from_triple(&bad, &std), Err(Error::Usage(_))));
    }

    #[test]
    fn rotation_character_of_fifth_turn() {
        let phi = Moebius::parse("z", "0", "0", "1", 5).unwrap();
        assert_eq!(phi.rotation_character(), Cyc::parse("1 + z + z^4", 5).unwrap());
    }

    #[test]
    fn json_shape() {
        let m = Moebius::parse("0", "1", "1", "0", 1).unwrap();
        let js = serde_json::to_string(&m).unwrap();
        let back: Moebius = serde_json::from_str(&js).unwrap();
        assert_eq!(back, m);
        assert!(js.starts_with("[[{\"conductor\":1"));
    }
}
