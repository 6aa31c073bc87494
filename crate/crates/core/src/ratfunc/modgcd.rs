//! Multi-modular gcd in Q(zeta_n)[t].
//!
//! Each prime p = 1 mod n splits completely in Q(zeta_n); sending zeta to
//! each primitive n-th root of unity mod p gives phi(n) images in F_p[t].
//! Power-basis coordinates of the gcd are recovered from those images by a
//! Vandermonde solve, lifted by CRT and rational reconstruction, and the
//! candidate is accepted only once it divides both inputs exactly.

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use super::poly::Poly;
use crate::cyclofield::Cyc;

const PRIME_CEILING: u64 = 1 << 31;
const MAX_PRIMES: usize = 64;

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn inv_mod(x: u64, p: u64) -> u64 {
    pow_mod(x, p - 2, p)
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Primes `p = 1 mod n` below 2^31, descending.
fn primes(n: u64) -> impl Iterator<Item = u64> {
    let start = (PRIME_CEILING - 1) / n * n + 1;
    let start = if start >= PRIME_CEILING { start - n } else { start };
    (0..)
        .map(move |k| start - k * n)
        .take_while(move |&p| p > n)
        .filter(|&p| is_prime(p))
}

/// A primitive n-th root of unity mod p.
fn root_of_unity(n: u64, p: u64) -> u64 {
    let factors = prime_factors(n);
    (2..p)
        .map(|x| pow_mod(x, (p - 1) / n, p))
        .find(|&w| factors.iter().all(|q| pow_mod(w, n / q, p) != 1))
        .expect("p = 1 mod n has primitive roots")
}

fn rat_mod(r: &BigRational, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let den = r.denom().mod_floor(&pb).to_u64()?;
    if den == 0 {
        return None;
    }
    let num = r.numer().mod_floor(&pb).to_u64()?;
    Some(num * inv_mod(den, p) % p)
}

fn eval_mod(c: &Cyc, node: u64, p: u64) -> Option<u64> {
    let mut acc = 0;
    let mut power = 1;
    for coeff in c.coeffs() {
        if !coeff.is_zero() {
            acc = (acc + rat_mod(coeff, p)? * power) % p;
        }
        power = power * node % p;
    }
    Some(acc)
}

fn image(poly: &Poly, node: u64, p: u64) -> Option<Vec<u64>> {
    poly.coeffs().iter().map(|c| eval_mod(c, node, p)).collect()
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn rem_fp(a: &mut Vec<u64>, b: &[u64], p: u64) {
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    while a.len() > db {
        let top = a.len() - 1;
        let c = a[top] * inv % p;
        if c != 0 {
            for (j, bj) in b.iter().enumerate() {
                let k = top - db + j;
                a[k] = (a[k] + p - c * bj % p) % p;
            }
        }
        a.pop();
        trim(a);
    }
}

fn gcd_fp(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        rem_fp(&mut a, &b, p);
        std::mem::swap(&mut a, &mut b);
    }
    let inv = inv_mod(*a.last().expect("nonzero input"), p);
    a.iter().map(|x| x * inv % p).collect()
}

/// Inverse of the Vandermonde matrix `V[j][k] = nodes[j]^k` mod p.
fn vandermonde_inverse(nodes: &[u64], p: u64) -> Vec<Vec<u64>> {
    let m = nodes.len();
    let mut a: Vec<Vec<u64>> = nodes
        .iter()
        .enumerate()
        .map(|(j, &x)| {
            let mut row: Vec<u64> = (0..m).map(|k| pow_mod(x, k as u64, p)).collect();
            row.extend((0..m).map(|k| u64::from(k == j)));
            row
        })
        .collect();
    for col in 0..m {
        let pivot = (col..m).find(|&r| a[r][col] != 0).expect("distinct nodes");
        a.swap(col, pivot);
        let inv = inv_mod(a[col][col], p);
        for x in a[col].iter_mut() {
            *x = *x * inv % p;
        }
        for r in 0..m {
            if r != col && a[r][col] != 0 {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(&pivot_row) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
    }
    a.into_iter().map(|row| row[m..].to_vec()).collect()
}

/// `u / v` with `|u|, |v| <= sqrt(m / 2)` and `u = x v mod m`.
fn rational_reconstruction(x: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), x.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

fn exact_quotient(a: &Poly, g: &Poly) -> Option<Poly> {
    let (q, r) = a.div_rem(g).ok()?;
    r.is_zero().then_some(q)
}

/// Monic gcd of two nonzero polynomials with their cofactors, or `None`
/// when no good primes produced a certified answer.
pub(super) fn modular_gcd(a: &Poly, b: &Poly) -> Option<(Poly, Poly, Poly)> {
    let n = a.conductor();
    let units: Vec<u64> = (1..=u64::from(n)).filter(|j| j.gcd(&u64::from(n)) == 1).collect();
    let phi = units.len();
    let mut best: Option<usize> = None;
    let mut residues: Vec<Vec<BigInt>> = Vec::new();
    let mut modulus = BigInt::one();
    let mut previous: Option<Poly> = None;
    for p in primes(u64::from(n)).take(MAX_PRIMES) {
        let w = root_of_unity(u64::from(n), p);
        let nodes: Vec<u64> = units.iter().map(|&j| pow_mod(w, j, p)).collect();
        let mut gcds = Vec::with_capacity(phi);
        for &x in &nodes {
            let (Some(ia), Some(ib)) = (image(a, x, p), image(b, x, p)) else {
                break;
            };
            if ia.last() == Some(&0) || ib.last() == Some(&0) {
                break;
            }
            gcds.push(gcd_fp(ia, ib, p));
        }
        if gcds.len() != phi {
            continue;
        }
        let d = gcds[0].len() - 1;
        if gcds.iter().any(|g| g.len() - 1 != d) {
            continue;
        }
        if d == 0 {
            return Some((Poly::one(n), a.clone(), b.clone()));
        }
        match best {
            Some(bd) if d > bd => continue,
            Some(bd) if d == bd => {}
            _ => {
                best = Some(d);
                residues = vec![vec![BigInt::zero(); phi]; d + 1];
                modulus = BigInt::one();
                previous = None;
            }
        }
        let vinv = vandermonde_inverse(&nodes, p);
        let pb = BigInt::from(p);
        let m_inv = inv_mod(modulus.mod_floor(&pb).to_u64().expect("reduced"), p);
        for (i, slot) in residues.iter_mut().enumerate() {
            for (k, r) in slot.iter_mut().enumerate() {
                let c = (0..phi).fold(0, |acc, j| (acc + vinv[k][j] * gcds[j][i]) % p);
                let current = r.mod_floor(&pb).to_u64().expect("reduced");
                let step = (c + p - current) % p * m_inv % p;
                *r += &modulus * BigInt::from(step);
            }
        }
        modulus *= &pb;
        let candidate: Option<Vec<Cyc>> = residues
            .iter()
            .map(|slot| {
                let coords: Option<Vec<BigRational>> =
                    slot.iter().map(|r| rational_reconstruction(r, &modulus)).collect();
                Cyc::from_coeffs(coords?, n).ok()
            })
            .collect();
        let Some(candidate) = candidate.map(|c| Poly::from_coeffs(c, n)) else {
            continue;
        };
        if previous.as_ref() == Some(&candidate) {
            if let (Some(qa), Some(qb)) = (exact_quotient(a, &candidate), exact_quotient(b, &candidate)) {
                return Some((candidate, qa, qb));
            }
        }
        previous = Some(candidate);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(src: &[&str], n: u32) -> Poly {
        Poly::from_coeffs(src.iter().map(|s| Cyc::parse(s, n).unwrap()).collect(), n)
    }

    #[test]
    fn primes_are_congruent() {
        for n in [1u64, 4, 5, 7, 12] {
            let ps: Vec<u64> = primes(n).take(3).collect();
            assert!(ps.iter().all(|&p| (p - 1) % n == 0 && is_prime(p) && p < PRIME_CEILING));
            let w = root_of_unity(n, ps[0]);
            assert_eq!(pow_mod(w, n, ps[0]), 1);
        }
    }

    #[test]
    fn reconstruction() {
        let m = BigInt::from(1_000_000_007u64);
        let x = BigRational::new((-3).into(), 7.into());
        let residue = (x.numer() * BigInt::from(inv_mod(7, 1_000_000_007))).mod_floor(&m);
        assert_eq!(rational_reconstruction(&residue, &m), Some(x));
    }

    #[test]
    fn common_factor_is_found() {
        let n = 5;
        let shared = poly(&["z^2 + 1/3", "-z", "1"], n);
        let a = shared.mul(&poly(&["2", "z^3"], n));
        let b = shared.mul(&poly(&["1/2", "z", "7"], n));
        let (g, qa, qb) = modular_gcd(&a, &b).unwrap();
        assert_eq!(g, shared);
        assert_eq!(g.mul(&qa), a);
        assert_eq!(g.mul(&qb), b);
        let coprime = modular_gcd(&poly(&["1", "1"], n), &poly(&["-1", "1"], n)).unwrap();
        assert!(coprime.0.is_one());
    }
}
