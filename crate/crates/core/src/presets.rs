//! Named point configurations together with the generators, printed
//! matrices and bases published for them.

use std::fmt;
use std::str::FromStr;

use crate::autgroup::GroupType;
use crate::cyclofield::Cyc;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::omega::PointConfig;
use crate::ratfunc::Moebius;
use crate::reptheory::{golden_conjugate, golden_ratio};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    /// `(z, z^2, ..., z^(n-1), 1)` over `Q(zeta_n)`.
    Cyclic(usize),
    /// `(0, z, ..., z^(n-1), 1)` over `Q(zeta_n)`.
    Dihedral(usize),
    D4Special,
    S4,
    A4,
    A5,
}

/// One preset per family, in the order they are verified.
pub const FAMILY_PRESETS: [Preset; 6] = [
    Preset::Cyclic(5),
    Preset::Dihedral(5),
    Preset::D4Special,
    Preset::S4,
    Preset::A4,
    Preset::A5,
];

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Preset> {
        let parse_n = |rest: &str| -> Result<usize> {
            rest.parse::<usize>()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::Config(format!("bad preset size in '{s}'")))
        };
        match s {
            "d4-special" => Ok(Preset::D4Special),
            "s4" => Ok(Preset::S4),
            "a4" => Ok(Preset::A4),
            "a5" => Ok(Preset::A5),
            _ => {
                if let Some(rest) = s.strip_prefix("cyclic:") {
                    Ok(Preset::Cyclic(parse_n(rest)?))
                } else if let Some(rest) = s.strip_prefix("dihedral:") {
                    Ok(Preset::Dihedral(parse_n(rest)?))
                } else {
                    Err(Error::Config(format!(
                        "unknown preset '{s}' (expected cyclic:n, dihedral:n, d4-special, s4, a4 or a5)"
                    )))
                }
            }
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Cyclic(n) => write!(f, "cyclic:{n}"),
            Preset::Dihedral(n) => write!(f, "dihedral:{n}"),
            Preset::D4Special => f.write_str("d4-special"),
            Preset::S4 => f.write_str("s4"),
            Preset::A4 => f.write_str("a4"),
            Preset::A5 => f.write_str("a5"),
        }
    }
}

fn cyc(s: &str, n: u32) -> Cyc {
    Cyc::parse(s, n).expect("preset expression parses")
}

fn map(entries: [&str; 4], n: u32) -> Moebius {
    Moebius::parse(entries[0], entries[1], entries[2], entries[3], n).expect("preset map is invertible")
}

impl Preset {
    pub fn conductor(&self) -> u32 {
        match *self {
            Preset::Cyclic(n) | Preset::Dihedral(n) => n as u32,
            Preset::D4Special => 1,
            Preset::S4 => 4,
            Preset::A4 => 6,
            Preset::A5 => 5,
        }
    }

    pub fn point_expressions(&self) -> Vec<String> {
        let roots = |n: usize| -> Vec<String> {
            (1..n).map(|k| format!("z^{k}")).chain(["1".to_string()]).collect()
        };
        match *self {
            Preset::Cyclic(n) => roots(n),
            Preset::Dihedral(n) => std::iter::once("0".to_string()).chain(roots(n)).collect(),
            Preset::D4Special => ["0", "1", "-1"].map(String::from).to_vec(),
            Preset::S4 => ["0", "1", "z", "-1", "-z"].map(String::from).to_vec(),
            Preset::A4 => ["0", "1", "z"].map(String::from).to_vec(),
            Preset::A5 => std::iter::once("0".to_string())
                .chain((1..=5).map(|i| format!("z^{}*(z + z^4)", i - 1)))
                .chain((6..=10).map(|i| format!("z^{}*(z^2 + z^3)", i - 6)))
                .collect(),
        }
    }

    pub fn config(&self) -> Result<PointConfig> {
        PointConfig::parse(self.conductor(), &self.point_expressions())
    }

    /// The group type the literature assigns to this configuration.
    pub fn stated_type(&self) -> GroupType {
        match *self {
            Preset::Cyclic(n) => GroupType::Cyclic(n),
            Preset::Dihedral(n) => GroupType::Dihedral(n),
            Preset::D4Special => GroupType::Dihedral(4),
            Preset::S4 => GroupType::S4,
            Preset::A4 => GroupType::A4,
            Preset::A5 => GroupType::A5,
        }
    }

    /// Published generators (for A5 the full list of 60 maps).
    pub fn generators(&self) -> Vec<Moebius> {
        let n = self.conductor();
        match *self {
            Preset::Cyclic(_) => vec![self.phi()],
            Preset::Dihedral(_) => vec![self.phi(), map(["0", "z", "1", "0"], n)],
            Preset::D4Special => vec![map(["-1", "0", "0", "1"], n), map(["1", "1", "1", "-1"], n)],
            Preset::S4 => vec![self.phi(), map(["1", "z", "1", "-z"], n)],
            Preset::A4 => vec![
                map(["0", "z", "1", "0"], n),
                map(["1", "-z", "1", "-1"], n),
                map(["z", "-z", "1", "-z"], n),
                map(["-z", "z", "0", "1"], n),
            ],
            Preset::A5 => {
                let mut out = Vec::with_capacity(60);
                let a = "(z - z^4)";
                let b = "(z^2 - z^3)";
                for j in 0..5 {
                    let zj = format!("z^{j}");
                    out.push(map([&zj, "0", "0", "1"], n));
                    out.push(map(["0", "-1", &zj, "0"], n));
                    for l in 0..5 {
                        let zl = format!("z^{l}");
                        out.push(map(
                            [
                                &format!("-{zj}*{a}*{zl}"),
                                &format!("{zj}*{b}"),
                                &format!("{b}*{zl}"),
                                a,
                            ],
                            n,
                        ));
                        out.push(map(
                            [
                                &format!("{zj}*{b}*{zl}"),
                                &format!("{zj}*{a}"),
                                &format!("{a}*{zl}"),
                                &format!("-{b}"),
                            ],
                            n,
                        ));
                    }
                }
                out
            }
        }
    }

    /// `t -> z t` (`t -> i t` for S4), where the preset has it.
    pub fn phi(&self) -> Moebius {
        map(["z", "0", "0", "1"], self.conductor())
    }

    /// Named maps whose raw substitution matrices were printed, with those matrices.
    pub fn printed_matrices(&self) -> Vec<(&'static str, Moebius, Matrix)> {
        match self {
            Preset::S4 => vec![
                (
                    "phi",
                    self.phi(),
                    Matrix::from_int_rows(
                        &[
                            vec![1, 0, 0, 0, 0],
                            vec![0, 0, 1, 0, 0],
                            vec![0, 0, 0, 1, 0],
                            vec![0, 0, 0, 0, 1],
                            vec![0, 1, 0, 0, 0],
                        ],
                        4,
                    ),
                ),
                (
                    "psi",
                    map(["1", "z", "1", "-z"], 4),
                    Matrix::from_int_rows(
                        &[
                            vec![0, 0, 0, 1, 0],
                            vec![0, 0, 1, 0, 0],
                            vec![-1, -1, -1, -1, -1],
                            vec![0, 0, 0, 0, 1],
                            vec![1, 0, 0, 0, 0],
                        ],
                        4,
                    ),
                ),
            ],
            Preset::A5 => {
                let unit = |pairs: &[(usize, usize)]| {
                    let mut m = vec![vec![0i64; 11]; 11];
                    for &(r, c) in pairs {
                        m[r][c] = 1;
                    }
                    m
                };
                let mut phi = unit(&[(0, 0), (5, 1), (10, 6)]);
                for i in 1..5 {
                    phi[i][i + 1] = 1;
                    phi[i + 5][i + 6] = 1;
                }
                let mut psi = unit(&[]);
                psi[0] = vec![-1; 11];
                for i in 1..=10 {
                    psi[i][11 - i] = 1;
                }
                let mut beta = unit(&[
                    (0, 1),
                    (1, 0),
                    (2, 5),
                    (3, 8),
                    (4, 9),
                    (5, 2),
                    (7, 10),
                    (8, 3),
                    (9, 4),
                    (10, 7),
                ]);
                beta[6] = vec![-1; 11];
                vec![
                    ("phi", self.phi(), Matrix::from_int_rows(&phi, 5)),
                    ("psi", map(["0", "-1", "z", "0"], 5), Matrix::from_int_rows(&psi, 5)),
                    (
                        "beta",
                        map(["z^2 + z^3", "1", "1", "-z^2 - z^3"], 5),
                        Matrix::from_int_rows(&beta, 5),
                    ),
                ]
            }
            _ => Vec::new(),
        }
    }

    /// Published projectors `(1/|G|) sum chi(g) rho(g)`, keyed by table row name.
    pub fn printed_projectors(&self) -> Vec<(&'static str, Matrix)> {
        let scaled = |rows: &[Vec<i64>], num: i64, den: i64, n: u32| {
            Matrix::from_int_rows(rows, n).scale(&(Cyc::from_int(num, n) / Cyc::from_int(den, n)))
        };
        match self {
            Preset::D4Special => vec![
                ("U1", scaled(&[vec![2, 1, 1], vec![0, 1, -1], vec![0, -1, 1]], 1, 4, 4)),
                ("psi3", scaled(&[vec![0, -4, -4], vec![0, 4, 4], vec![0, 4, 4]], 1, 8, 4)),
            ],
            Preset::S4 => vec![
                (
                    "theta",
                    scaled(
                        &[
                            vec![0, -1, -1, -1, -1],
                            vec![0, 1, 0, 1, 0],
                            vec![0, 0, 1, 0, 1],
                            vec![0, 1, 0, 1, 0],
                            vec![0, 0, 1, 0, 1],
                        ],
                        1,
                        4,
                        4,
                    ),
                ),
                (
                    "epsilon_rho",
                    scaled(
                        &[
                            vec![2, 1, 1, 1, 1],
                            vec![0, 1, 0, -1, 0],
                            vec![0, 0, 1, 0, -1],
                            vec![0, -1, 0, 1, 0],
                            vec![0, 0, -1, 0, 1],
                        ],
                        1,
                        6,
                        4,
                    ),
                ),
            ],
            Preset::A5 => {
                let mut chi5 = vec![vec![0i64; 11]; 11];
                chi5[0] = std::iter::once(0).chain(std::iter::repeat(-6).take(10)).collect();
                for i in 1..=10 {
                    let partner = if i <= 5 { i + 5 } else { i - 5 };
                    chi5[i][i] = 6;
                    chi5[i][partner] = 6;
                }
                let sqrt5_over_30 = golden_sqrt5().scale(&num::BigRational::new(1.into(), 30.into()));
                vec![
                    ("chi5", scaled(&chi5, 1, 60, 5)),
                    ("chi2", icosahedral_pattern(false).scale(&sqrt5_over_30)),
                    ("chi3", icosahedral_pattern(true).scale(&sqrt5_over_30)),
                ]
            }
            _ => Vec::new(),
        }
    }

    /// Published bases of the isotypic components, keyed by table row name.
    pub fn printed_bases(&self) -> Vec<(&'static str, Vec<Vec<Cyc>>)> {
        let ints = |rows: &[&[i64]], n: u32| -> Vec<Vec<Cyc>> {
            rows.iter()
                .map(|r| r.iter().map(|&v| Cyc::from_int(v, n)).collect())
                .collect()
        };
        match self {
            Preset::D4Special => vec![
                ("psi3", ints(&[&[1, -1, -1]], 1)),
                ("U1", ints(&[&[1, 0, 0], &[0, 1, -1]], 1)),
            ],
            Preset::S4 => vec![
                ("theta", ints(&[&[-1, 1, 0, 1, 0], &[-1, 0, 1, 0, 1]], 4)),
                (
                    "epsilon_rho",
                    ints(&[&[1, 0, 0, 0, 0], &[0, -1, 0, 1, 0], &[0, 0, -1, 0, 1]], 4),
                ),
            ],
            Preset::A4 => vec![("chi3", ints(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]], 6))],
            Preset::A5 => {
                let u5 = (1..=5)
                    .map(|i| {
                        let mut v = vec![0i64; 11];
                        v[0] = -1;
                        v[i] = 1;
                        v[i + 5] = 1;
                        v.into_iter().map(|x| Cyc::from_int(x, 5)).collect()
                    })
                    .collect();
                vec![("chi5", u5), ("chi2", u3_basis(false)), ("chi3", u3_basis(true))]
            }
            _ => Vec::new(),
        }
    }
}

/// `sqrt 5 = 1 + 2(z + z^4)` in `Q(zeta_5)`.
pub fn golden_sqrt5() -> Cyc {
    cyc("1 + 2*z + 2*z^4", 5)
}

/// The printed 11x11 matrices behind the two three-dimensional projectors,
/// before the common factor `sqrt 5 / 30`. `s` is sqrt 5, `x` is xi and
/// `y` is its conjugate.
fn icosahedral_pattern(primed: bool) -> Matrix {
    const FIRST: [&str; 11] = ["s", "x", "x", "x", "x", "x", "-y", "-y", "-y", "-y", "-y"];
    const REST: [[&str; 11]; 10] = [
        ["1", "x", "1", "0", "0", "1", "y", "0", "1", "1", "0"],
        ["1", "1", "x", "1", "0", "0", "0", "y", "0", "1", "1"],
        ["1", "0", "1", "x", "1", "0", "1", "0", "y", "0", "1"],
        ["1", "0", "0", "1", "x", "1", "1", "1", "0", "y", "0"],
        ["1", "1", "0", "0", "1", "x", "0", "1", "1", "0", "y"],
        ["-1", "-x", "-1", "0", "0", "-1", "-y", "0", "-1", "-1", "0"],
        ["-1", "-1", "-x", "-1", "0", "0", "0", "-y", "0", "-1", "-1"],
        ["-1", "0", "-1", "-x", "-1", "0", "-1", "0", "-y", "0", "-1"],
        ["-1", "0", "0", "-1", "-x", "-1", "-1", "-1", "0", "-y", "0"],
        ["-1", "-1", "0", "0", "-1", "-x", "0", "-1", "-1", "0", "-y"],
    ];
    const FIRST_PRIMED: [&str; 11] = ["s", "-y", "-y", "-y", "-y", "-y", "x", "x", "x", "x", "x"];
    const REST_PRIMED: [[&str; 11]; 10] = [
        ["-1", "-y", "-1", "0", "0", "-1", "-x", "0", "-1", "-1", "0"],
        ["-1", "-1", "-y", "-1", "0", "0", "0", "-x", "0", "-1", "-1"],
        ["-1", "0", "-1", "-y", "-1", "0", "-1", "0", "-x", "0", "-1"],
        ["-1", "0", "0", "-1", "-y", "-1", "-1", "-1", "0", "-x", "0"],
        ["-1", "-1", "0", "0", "-1", "-y", "0", "-1", "-1", "0", "-x"],
        ["1", "y", "1", "0", "0", "1", "x", "0", "1", "1", "0"],
        ["1", "1", "y", "1", "0", "0", "0", "x", "0", "1", "1"],
        ["1", "0", "1", "y", "1", "0", "1", "0", "x", "0", "1"],
        ["1", "0", "0", "1", "y", "1", "1", "1", "0", "x", "0"],
        ["1", "1", "0", "0", "1", "y", "0", "1", "1", "0", "x"],
    ];
    let token = |t: &str| -> Cyc {
        let (neg, body) = t.strip_prefix('-').map_or((false, t), |b| (true, b));
        let v = match body {
            "s" => golden_sqrt5(),
            "x" => golden_ratio(),
            "y" => golden_conjugate(),
            other => cyc(other, 5),
        };
        if neg {
            -v
        } else {
            v
        }
    };
    let (first, rest) = if primed {
        (FIRST_PRIMED, REST_PRIMED)
    } else {
        (FIRST, REST)
    };
    let rows = std::iter::once(first)
        .chain(rest)
        .map(|r| r.iter().map(|t| token(t)).collect())
        .collect();
    Matrix::from_rows(rows, 5).expect("square pattern")
}

/// The published bases of the two three-dimensional components.
fn u3_basis(primed: bool) -> Vec<Vec<Cyc>> {
    let n = 5;
    let zero = Cyc::zero(n);
    let one = Cyc::one(n);
    let s5 = golden_sqrt5();
    let mut first = vec![s5];
    first.extend((0..5).map(|_| one.clone()));
    first.extend((0..5).map(|_| -&one));
    // `a` is xi, or -xi-bar for the primed basis
    let a = if primed { -golden_conjugate() } else { golden_ratio() };
    let sign = if primed { -&one } else { one.clone() };
    let build = |pattern: &[(usize, bool)]| {
        let mut v = vec![zero.clone(); 11];
        v[0] = a.clone();
        for &(idx, scaled) in pattern {
            let magnitude = if scaled { a.clone() } else { one.clone() };
            let negative = idx >= 6;
            let base = if negative { -&magnitude } else { magnitude };
            v[idx] = if primed && !scaled { &base * &sign } else { base };
        }
        v
    };
    if primed {
        for x in first.iter_mut().skip(1) {
            *x = -&*x;
        }
    }
    vec![
        first,
        build(&[(1, true), (2, false), (5, false), (6, true), (7, false), (10, false)]),
        build(&[(1, false), (2, true), (3, false), (6, false), (7, true), (8, false)]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["cyclic:5", "dihedral:6", "d4-special", "s4", "a4", "a5"] {
            assert_eq!(s.parse::<Preset>().unwrap().to_string(), s);
        }
        assert!("cyclic:0".parse::<Preset>().is_err());
        assert!("octahedron".parse::<Preset>().is_err());
    }

    #[test]
    fn icosahedral_points() {
        let cfg = Preset::A5.config().unwrap();
        assert_eq!(cfg.len(), 11);
        // (z + z^4)(z^2 + z^3) = -1
        let p1 = &cfg.points()[1];
        let p6 = &cfg.points()[6];
        assert_eq!(p1 * p6, Cyc::from_int(-1, 5));
        assert_eq!(Preset::A5.generators().len(), 60);
    }

    #[test]
    fn primed_basis_literal() {
        // -xb w0 - xb w1 - w2 - w5 + xb w6 + w7 + w10
        let v = &u3_basis(true)[1];
        let xb = golden_conjugate();
        let one = Cyc::one(5);
        let expected = vec![
            -&xb,
            -&xb,
            -&one,
            Cyc::zero(5),
            Cyc::zero(5),
            -&one,
            xb.clone(),
            one.clone(),
            Cyc::zero(5),
            Cyc::zero(5),
            one.clone(),
        ];
        assert_eq!(v, &expected);
        // xi w0 + w1 + xi w2 + w3 - w6 - xi w7 - w8
        let w = &u3_basis(false)[2];
        let xi = golden_ratio();
        assert_eq!(w[0], xi);
        assert_eq!(w[1], one);
        assert_eq!(w[2], xi);
        assert_eq!(w[3], one);
        assert_eq!(w[6], -&one);
        assert_eq!(w[7], -&xi);
        assert_eq!(w[8], -&one);
        assert_eq!(w[10], Cyc::zero(5));
        // sqrt5 w0 - sum (w_i - w_{i+5})
        let f = &u3_basis(true)[0];
        assert_eq!(f[0], golden_sqrt5());
        assert_eq!(f[1], -&one);
        assert_eq!(f[6], one);
    }
}
