//! Kähler differentials of the N-point ring modulo exact forms, in the
//! residue basis `omega_i = class of dt / (t - a_i)`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::cyclofield::Cyc;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::ratfunc::{partial_fractions, Moebius, ProjPoint, RatFn};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointConfig {
    conductor: u32,
    points: Vec<Cyc>,
}

impl PointConfig {
    /// Points are embedded into `Q(zeta_conductor)` and must be pairwise distinct.
    pub fn new(conductor: u32, points: Vec<Cyc>) -> Result<PointConfig> {
        if conductor == 0 {
            return Err(Error::Config("conductor must be positive".into()));
        }
        if points.is_empty() {
            return Err(Error::Config("at least one point is required".into()));
        }
        let points = points
            .iter()
            .map(|p| p.embed(conductor))
            .collect::<Result<Vec<_>>>()?;
        let mut seen = HashSet::new();
        for p in &points {
            if !seen.insert(p.clone()) {
                return Err(Error::Config(format!("duplicate point {p}")));
            }
        }
        Ok(PointConfig { conductor, points })
    }

    pub fn parse<S: AsRef<str>>(conductor: u32, points: &[S]) -> Result<PointConfig> {
        let points = points
            .iter()
            .map(|s| Cyc::parse(s.as_ref(), conductor))
            .collect::<Result<Vec<_>>>()?;
        PointConfig::new(conductor, points)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn points(&self) -> &[Cyc] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The pole set `S`: the punctures followed by infinity.
    pub fn points_with_infinity(&self) -> Vec<ProjPoint> {
        self.points
            .iter()
            .cloned()
            .map(ProjPoint::Finite)
            .chain(std::iter::once(ProjPoint::Infinity))
            .collect()
    }

    /// Index of a puncture, `None` for infinity or a regular point.
    pub fn index_of(&self, p: &ProjPoint) -> Option<usize> {
        p.finite().and_then(|a| self.points.iter().position(|q| q == a))
    }

    pub fn embed(&self, conductor: u32) -> Result<PointConfig> {
        PointConfig::new(conductor, self.points.clone())
    }
}

/// A class in the quotient, as coordinates in the residue basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OmegaVec {
    pub coeffs: Vec<Cyc>,
}

impl OmegaVec {
    pub fn zero(config: &PointConfig) -> OmegaVec {
        OmegaVec {
            coeffs: vec![Cyc::zero(config.conductor); config.len()],
        }
    }

    pub fn basis(config: &PointConfig, i: usize) -> OmegaVec {
        let mut v = OmegaVec::zero(config);
        v.coeffs[i] = Cyc::one(config.conductor);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Cyc::is_zero)
    }
}

fn to_conductor(f: &RatFn, config: &PointConfig) -> Result<RatFn> {
    if f.conductor() == config.conductor {
        return Ok(f.clone());
    }
    let embed = |p: &crate::ratfunc::Poly| -> Result<crate::ratfunc::Poly> {
        Ok(crate::ratfunc::Poly::from_coeffs(
            p.coeffs()
                .iter()
                .map(|c| c.embed(config.conductor))
                .collect::<Result<_>>()?,
            config.conductor,
        ))
    };
    RatFn::new(embed(f.numerator())?, embed(f.denominator())?)
}

/// The class of `f dt`: its finite residues at the punctures.
pub fn reduce(f: &RatFn, config: &PointConfig) -> Result<OmegaVec> {
    let f = to_conductor(f, config)?;
    let pf = partial_fractions(&f, &config.points)?;
    Ok(OmegaVec {
        coeffs: (0..config.len()).map(|i| pf.coefficient(i, 1)).collect(),
    })
}

/// The scalar part of the current-algebra bracket: the class of `f dg`.
pub fn cocycle(f: &RatFn, g: &RatFn, config: &PointConfig) -> Result<OmegaVec> {
    let f = to_conductor(f, config)?;
    let g = to_conductor(g, config)?;
    reduce(&f.mul(&g.derivative()), config)
}

/// Checks that `m` permutes the punctures together with infinity.
pub fn check_automorphism(m: &Moebius, config: &PointConfig) -> Result<()> {
    let s = config.points_with_infinity();
    for p in &s {
        let q = m.apply(p);
        if !s.contains(&q) {
            return Err(Error::NotAutomorphism(format!("{m} sends {p} to {q}")));
        }
    }
    Ok(())
}

/// Raw substitution: column `i` is the class of `M'(t) dt / (M(t) - a_i)`.
/// This is contravariant: `S(M N) = S(N) S(M)`.
pub fn pullback_matrix(m: &Moebius, config: &PointConfig) -> Result<Matrix> {
    let n = config.conductor;
    let m = if m.conductor() == n { m.clone() } else { m.embed(n)? };
    check_automorphism(&m, config)?;
    let f = m.to_ratfn();
    let df = f.derivative();
    let columns = config
        .points
        .iter()
        .map(|a| {
            let shifted = f.sub(&RatFn::constant(a.clone()));
            let g = df.div(&shifted)?;
            Ok(reduce(&g, config)?.coeffs)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(&columns, config.len(), n))
}

/// The left action `rho(M) = S(M^-1)`, a homomorphism.
pub fn action_matrix(m: &Moebius, config: &PointConfig) -> Result<Matrix> {
    pullback_matrix(&m.inverse(), config)
}
