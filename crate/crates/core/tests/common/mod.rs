#![allow(dead_code)]

use npoint_center::omega::PointConfig;
use npoint_center::presets::{Preset, FAMILY_PRESETS};
use npoint_center::{Cyc, RatFn};
use rand::Rng;

pub fn cyc(src: &str, n: u32) -> Cyc {
    Cyc::parse(src, n).unwrap()
}

pub fn vecs(rows: &[&[&str]], n: u32) -> Vec<Vec<Cyc>> {
    rows.iter().map(|r| r.iter().map(|s| cyc(s, n)).collect()).collect()
}

pub fn family_configs() -> Vec<(Preset, PointConfig)> {
    FAMILY_PRESETS.iter().map(|p| (*p, p.config().unwrap())).collect()
}

/// `a + b z` with small rational `a`, `b`.
pub fn small_cyc(rng: &mut impl Rng, n: u32) -> Cyc {
    let a = Cyc::from_int(rng.gen_range(-3..=3), n);
    let b = Cyc::from_int(rng.gen_range(-3..=3), n) * Cyc::zeta(n);
    let d = Cyc::from_int(rng.gen_range(1..=3), n);
    (a + b) / d
}

/// Assembles `sum_j p_j t^j + sum_(i,k) c_ik (t - a_i)^-k`.
pub fn assemble(config: &PointConfig, poly: &[Cyc], parts: &[(usize, i64, Cyc)]) -> RatFn {
    let n = config.conductor();
    let mut f = RatFn::zero(n);
    for (j, c) in poly.iter().enumerate() {
        f = f.add(&RatFn::linear_pow(&Cyc::zero(n), j as i64).scale(c));
    }
    for (i, k, c) in parts {
        f = f.add(&RatFn::linear_pow(&config.points()[*i], -k).scale(c));
    }
    f
}

/// A random element of the ring, touching roughly half of the punctures.
pub fn random_element(rng: &mut impl Rng, config: &PointConfig) -> RatFn {
    let n = config.conductor();
    let poly: Vec<Cyc> = (0..rng.gen_range(0..=2)).map(|_| small_cyc(rng, n)).collect();
    let mut parts = Vec::new();
    for i in 0..config.len() {
        if rng.gen_bool(0.5) {
            for k in 1..=rng.gen_range(1..=2) {
                parts.push((i, k, small_cyc(rng, n)));
            }
        }
    }
    assemble(config, &poly, &parts)
}
