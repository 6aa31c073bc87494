//! Character tables for the finite rotation groups.

use num::integer::gcd;
use num::{BigInt, BigRational};
use serde::Serialize;

use crate::autgroup::GroupType;
use crate::cyclofield::Cyc;
use crate::error::{Error, Result};

/// One row per irreducible character, one column per conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharTable {
    pub group_type: GroupType,
    pub conductor: u32,
    pub names: Vec<String>,
    pub degrees: Vec<usize>,
    pub rows: Vec<Vec<Cyc>>,
    pub column_labels: Vec<String>,
    pub class_sizes: Vec<usize>,
    pub element_orders: Vec<usize>,
}

impl CharTable {
    pub fn group_order(&self) -> usize {
        self.class_sizes.iter().sum()
    }

    pub fn row_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Index of the row whose character is the three-dimensional rotation
    /// representation, as a sum of rows with multiplicity.
    pub fn rotation_decomposition(&self) -> Vec<(usize, usize)> {
        let idx = |name: &str| self.row_index(name).expect("named row exists");
        match self.group_type {
            GroupType::Cyclic(1) => vec![(0, 3)],
            GroupType::Cyclic(2) => vec![(0, 1), (1, 2)],
            GroupType::Cyclic(n) => vec![(0, 1), (1, 1), (n - 1, 1)],
            GroupType::Dihedral(2) => vec![(idx("psi2"), 1), (idx("psi3"), 1), (idx("psi4"), 1)],
            GroupType::Dihedral(_) => vec![(idx("psi2"), 1), (idx("U1"), 1)],
            GroupType::A4 => vec![(idx("chi3"), 1)],
            GroupType::S4 => vec![(idx("epsilon_rho"), 1)],
            GroupType::A5 => vec![(idx("chi2"), 1)],
        }
    }

    /// Checks row and column orthogonality and the degree sum exactly.
    pub fn check_orthogonality(&self) -> Result<()> {
        let order = self.group_order();
        let k = self.rows.len();
        let fail = |what: String| Err(Error::NotCharacter(format!("{}: {what}", self.group_type)));
        if k != self.class_sizes.len() {
            return fail(format!("{k} rows for {} classes", self.class_sizes.len()));
        }
        if self.degrees.iter().map(|d| d * d).sum::<usize>() != order {
            return fail("degree squares do not sum to the group order".into());
        }
        let n = self.conductor;
        let inv_order = BigRational::new(BigInt::from(1), BigInt::from(order));
        for i in 0..k {
            if self.rows[i][0] != Cyc::from_int(self.degrees[i] as i64, n) {
                return fail(format!("row {} does not start with its degree", self.names[i]));
            }
            for j in i..k {
                let mut acc = Cyc::zero(n);
                for c in 0..k {
                    let term = &self.rows[i][c] * &self.rows[j][c].conj();
                    acc = &acc + &term.scale(&BigRational::from_integer(self.class_sizes[c].into()));
                }
                let expected = if i == j { Cyc::one(n) } else { Cyc::zero(n) };
                if acc.scale(&inv_order) != expected {
                    return fail(format!("rows {} and {} are not orthonormal", self.names[i], self.names[j]));
                }
            }
        }
        for c in 0..k {
            for d in c..k {
                let acc = (0..k).fold(Cyc::zero(n), |acc, i| {
                    &acc + &(&self.rows[i][c] * &self.rows[i][d].conj())
                });
                let expected = if c == d {
                    Cyc::from_int((order / self.class_sizes[c]) as i64, n)
                } else {
                    Cyc::zero(n)
                };
                if acc != expected {
                    return fail(format!(
                        "columns {} and {} fail column orthogonality",
                        self.column_labels[c], self.column_labels[d]
                    ));
                }
            }
        }
        Ok(())
    }
}

fn ints(values: &[i64], n: u32) -> Vec<Cyc> {
    values.iter().map(|&v| Cyc::from_int(v, n)).collect()
}

pub fn character_table(gt: GroupType) -> CharTable {
    match gt {
        GroupType::Cyclic(n) => cyclic_table(n),
        GroupType::Dihedral(n) => dihedral_table(n),
        GroupType::A4 => a4_table(),
        GroupType::S4 => s4_table(),
        GroupType::A5 => a5_table(),
    }
}

fn cyclic_table(n: usize) -> CharTable {
    let cond = n as u32;
    let rows = (0..n)
        .map(|k| (0..n).map(|j| Cyc::zeta_pow((j * k) as i64, cond)).collect())
        .collect();
    CharTable {
        group_type: GroupType::Cyclic(n),
        conductor: cond,
        names: (0..n).map(|k| format!("chi{k}")).collect(),
        degrees: vec![1; n],
        rows,
        column_labels: (0..n).map(|j| format!("r^{j}")).collect(),
        class_sizes: vec![1; n],
        element_orders: (0..n).map(|j| n / gcd(n, j)).collect(),
    }
}

fn dihedral_table(n: usize) -> CharTable {
    let cond = n as u32;
    let m = n / 2;
    let even = n % 2 == 0;
    let rotations: Vec<usize> = (0..=m).collect();
    let mut column_labels: Vec<String> = rotations.iter().map(|j| format!("r^{j}")).collect();
    let mut class_sizes: Vec<usize> = rotations
        .iter()
        .map(|&j| if j == 0 || 2 * j == n { 1 } else { 2 })
        .collect();
    let mut element_orders: Vec<usize> = rotations.iter().map(|&j| n / gcd(n, j)).collect();
    if even {
        column_labels.extend(["s".to_string(), "s r".to_string()]);
        class_sizes.extend([m, m]);
        element_orders.extend([2, 2]);
    } else {
        column_labels.push("s".into());
        class_sizes.push(n);
        element_orders.push(2);
    }

    let sign = |j: usize| if j % 2 == 0 { 1 } else { -1 };
    let mut names = vec!["psi1".to_string(), "psi2".to_string()];
    let mut rows: Vec<Vec<Cyc>> = Vec::new();
    let one_dim = |rot: &dyn Fn(usize) -> i64, refl: &[i64]| -> Vec<Cyc> {
        let mut r: Vec<i64> = rotations.iter().map(|&j| rot(j)).collect();
        r.extend_from_slice(refl);
        ints(&r, cond)
    };
    if even {
        rows.push(one_dim(&|_| 1, &[1, 1]));
        rows.push(one_dim(&|_| 1, &[-1, -1]));
        rows.push(one_dim(&|j| sign(j), &[1, -1]));
        rows.push(one_dim(&|j| sign(j), &[-1, 1]));
        names.extend(["psi3".to_string(), "psi4".to_string()]);
    } else {
        rows.push(one_dim(&|_| 1, &[1]));
        rows.push(one_dim(&|_| 1, &[-1]));
    }
    let top = if even { m.saturating_sub(1) } else { m };
    for k in 1..=top {
        let mut row: Vec<Cyc> = rotations
            .iter()
            .map(|&j| {
                let e = (j * k) as i64;
                &Cyc::zeta_pow(e, cond) + &Cyc::zeta_pow(-e, cond)
            })
            .collect();
        row.extend(std::iter::repeat(Cyc::zero(cond)).take(if even { 2 } else { 1 }));
        rows.push(row);
        names.push(format!("U{k}"));
    }
    let degrees = rows
        .iter()
        .map(|r| r[0].as_integer().and_then(|d| usize::try_from(d).ok()).expect("integer degree"))
        .collect();
    CharTable {
        group_type: GroupType::Dihedral(n),
        conductor: cond,
        names,
        degrees,
        rows,
        column_labels,
        class_sizes,
        element_orders,
    }
}

fn a4_table() -> CharTable {
    let n = 3;
    let w = Cyc::zeta(n);
    let w2 = Cyc::zeta_pow(2, n);
    let one = Cyc::one(n);
    CharTable {
        group_type: GroupType::A4,
        conductor: n,
        names: ["trivial", "chi1", "chi2", "chi3"].map(String::from).to_vec(),
        degrees: vec![1, 1, 1, 3],
        rows: vec![
            ints(&[1, 1, 1, 1], n),
            vec![one.clone(), one.clone(), w.clone(), w2.clone()],
            vec![one.clone(), one, w2, w],
            ints(&[3, -1, 0, 0], n),
        ],
        column_labels: ["I", "sigma1", "tau2", "tau2^2"].map(String::from).to_vec(),
        class_sizes: vec![1, 3, 4, 4],
        element_orders: vec![1, 2, 3, 3],
    }
}

fn s4_table() -> CharTable {
    let n = 1;
    CharTable {
        group_type: GroupType::S4,
        conductor: n,
        names: ["trivial", "epsilon", "theta", "rho", "epsilon_rho"]
            .map(String::from)
            .to_vec(),
        degrees: vec![1, 1, 2, 3, 3],
        rows: vec![
            ints(&[1, 1, 1, 1, 1], n),
            ints(&[1, -1, 1, 1, -1], n),
            ints(&[2, 0, 2, -1, 0], n),
            ints(&[3, 1, -1, 0, -1], n),
            ints(&[3, -1, -1, 0, 1], n),
        ],
        column_labels: ["I", "psi phi", "phi^2", "psi", "phi"].map(String::from).to_vec(),
        class_sizes: vec![1, 6, 3, 8, 6],
        element_orders: vec![1, 2, 2, 3, 4],
    }
}

/// `(1 + sqrt 5) / 2` in `Q(zeta_5)`.
pub fn golden_ratio() -> Cyc {
    Cyc::parse("1 + z + z^4", 5).expect("valid expression")
}

/// `(1 - sqrt 5) / 2` in `Q(zeta_5)`.
pub fn golden_conjugate() -> Cyc {
    Cyc::parse("-z - z^4", 5).expect("valid expression")
}

fn a5_table() -> CharTable {
    let n = 5;
    let xi = golden_ratio();
    let xib = golden_conjugate();
    let c = |v: i64| Cyc::from_int(v, n);
    CharTable {
        group_type: GroupType::A5,
        conductor: n,
        names: ["trivial", "chi2", "chi3", "chi4", "chi5"].map(String::from).to_vec(),
        degrees: vec![1, 3, 3, 4, 5],
        rows: vec![
            ints(&[1, 1, 1, 1, 1], n),
            vec![c(3), c(0), c(-1), xi.clone(), xib.clone()],
            vec![c(3), c(0), c(-1), xib, xi],
            ints(&[4, 1, 0, -1, -1], n),
            ints(&[5, -1, 1, 0, 0], n),
        ],
        column_labels: ["I", "(123)", "(12)(34)", "(12345)", "(21345)"]
            .map(String::from)
            .to_vec(),
        class_sizes: vec![1, 20, 15, 12, 12],
        element_orders: vec![1, 3, 2, 5, 5],
    }
}
