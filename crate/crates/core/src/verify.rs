//! Checks binding each preset to its published decomposition.

use num::BigRational;
use serde::{Deserialize, Serialize};

use crate::autgroup::{closure, GroupType};
use crate::cyclofield::Cyc;
use crate::linalg::{proportional, same_span, Matrix};
use crate::omega::pullback_matrix;
use crate::presets::Preset;
use crate::reptheory::{character_table, decompose_with, CharTable, Decomposition};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Assertion {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Assertion {
        Assertion {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

struct Checks(Vec<Assertion>);

impl Checks {
    fn check(&mut self, name: impl Into<String>, passed: bool, detail: impl FnOnce() -> String) {
        let detail = if passed { String::new() } else { detail() };
        self.0.push(Assertion::new(name, passed, detail));
    }
}

fn embed_vecs(vs: &[Vec<Cyc>], field: u32) -> Vec<Vec<Cyc>> {
    vs.iter()
        .map(|v| v.iter().map(|x| x.embed(field).expect("field contains preset")).collect())
        .collect()
}

fn show(vs: &[Vec<Cyc>]) -> String {
    let rows: Vec<String> = vs
        .iter()
        .map(|v| {
            let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
            format!("({})", parts.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

/// `u_k = sum_i z^(k i) omega_i` where position `p` carries `z^(p + offset)`;
/// positions before `skip` get zero.
fn root_combination(k: i64, len: usize, skip: usize, offset: i64, n: u32, field: u32) -> Vec<Cyc> {
    (0..len)
        .map(|p| {
            if p < skip {
                Cyc::zero(field)
            } else {
                Cyc::zeta_pow(k * (p as i64 + offset), n).embed(field).expect("n divides field")
            }
        })
        .collect()
}

/// Whether `preset` is a case where the computed group strictly contains
/// the one the literature names for it.
pub fn exceeds_stated_group(preset: Preset) -> bool {
    matches!(preset, Preset::Cyclic(n) if n < 4) || matches!(preset, Preset::Dihedral(2) | Preset::Dihedral(4))
}

/// Notes for presets whose true automorphism group differs from the stated one.
pub fn preset_notes(preset: Preset, d: &Decomposition) -> Vec<String> {
    if d.group_type == preset.stated_type() {
        return Vec::new();
    }
    vec![format!(
        "preset {preset}: the automorphism group of this configuration is {} of order {}, strictly containing the stated {} of order {}",
        d.group_type,
        d.group.order(),
        preset.stated_type(),
        preset.stated_type().order()
    )]
}

pub fn verify_preset(preset: Preset) -> Vec<Assertion> {
    verify_preset_with(preset, &character_table)
}

/// Runs every assertion bound to `preset`, drawing tables from `tables`.
pub fn verify_preset_with(preset: Preset, tables: &dyn Fn(GroupType) -> CharTable) -> Vec<Assertion> {
    let config = match preset.config() {
        Ok(c) => c,
        Err(e) => return vec![Assertion::new("configuration", false, e.to_string())],
    };
    match decompose_with(&config, tables) {
        Ok(d) => verify_decomposition(Some(preset), &d),
        Err(e) => vec![Assertion::new("decomposition", false, e.to_string())],
    }
}

/// Structural checks for any decomposition, plus the published claims when
/// `preset` names one.
pub fn verify_decomposition(preset: Option<Preset>, d: &Decomposition) -> Vec<Assertion> {
    let mut c = Checks(Vec::new());
    structural_checks(&mut c, d);
    let Some(preset) = preset else {
        return c.0;
    };
    group_checks(&mut c, preset, d);
    match preset {
        Preset::Cyclic(n) => cyclic_checks(&mut c, n, d),
        Preset::Dihedral(n) => dihedral_checks(&mut c, n, d),
        Preset::D4Special => {
            c.check("multiplicities (0,0,1,0,1)", d.multiplicities == [0, 0, 1, 0, 1], || {
                format!("got {:?}", d.multiplicities)
            });
        }
        Preset::S4 => {
            character_check(&mut c, d, &[5, -1, 1, -1, 1]);
            c.check("class sizes (1,6,3,8,6)", d.table.class_sizes == [1, 6, 3, 8, 6], || {
                format!("got {:?}", d.table.class_sizes)
            });
            c.check("multiplicities theta + epsilon_rho", d.multiplicities == [0, 0, 1, 0, 1], || {
                format!("got {:?}", d.multiplicities)
            });
        }
        Preset::A4 => {
            character_check(&mut c, d, &[3, -1, 0, 0]);
            c.check("single three-dimensional irreducible", d.multiplicities == [0, 0, 0, 1], || {
                format!("got {:?}", d.multiplicities)
            });
        }
        Preset::A5 => {
            character_check(&mut c, d, &[11, -1, -1, 1, 1]);
            c.check("multiplicities chi2 + chi3 + chi5", d.multiplicities == [0, 1, 1, 0, 1], || {
                format!("got {:?}", d.multiplicities)
            });
        }
    }
    if d.group_type == preset.stated_type() {
        printed_checks(&mut c, preset, d);
    }
    c.0
}

fn character_check(c: &mut Checks, d: &Decomposition, expected: &[i64]) {
    let want: Vec<Cyc> = expected.iter().map(|&v| Cyc::from_int(v, d.field())).collect();
    c.check(format!("character {expected:?}"), d.character == want, || {
        format!("got {}", show(&[d.character.clone()]))
    });
}

fn group_checks(c: &mut Checks, preset: Preset, d: &Decomposition) {
    let stated = preset.stated_type();
    let gens = preset.generators();
    let in_group = gens.iter().all(|g| d.group.index_of(g).is_some());
    c.check("published maps are automorphisms", in_group, || {
        "a published map does not permute the punctures".into()
    });
    if exceeds_stated_group(preset) {
        c.check(
            format!("group strictly contains {stated}"),
            d.group.order() > stated.order() && d.group.order() % stated.order() == 0,
            || format!("order {}", d.group.order()),
        );
    } else {
        c.check(format!("group type {stated}"), d.group_type == stated, || {
            format!("got {} of order {}", d.group_type, d.group.order())
        });
        let generated = closure(d.field(), &gens).map(|g| g.same_elements(&d.group));
        c.check("published generators generate the group", generated == Ok(true), || {
            format!("{generated:?}")
        });
        c.check("multiplicity one", d.multiplicities.iter().all(|&m| m <= 1), || {
            format!("got {:?}", d.multiplicities)
        });
    }
}

fn structural_checks(c: &mut Checks, d: &Decomposition) {
    c.check("character table orthogonality", d.table.check_orthogonality().is_ok(), || {
        d.table.check_orthogonality().unwrap_err().to_string()
    });
    let dim = d.config.len();
    let total: usize = d.multiplicities.iter().zip(&d.table.degrees).map(|(m, g)| m * g).sum();
    c.check("dimensions sum to N", total == dim, || format!("{total} != {dim}"));
    let identity = Matrix::identity(dim, d.field());
    let sum = d.projectors.iter().fold(Matrix::zeros(dim, dim, d.field()), |a, p| a.add(p));
    c.check("projectors sum to the identity", sum == identity, || format!("{sum:?}"));
    for (i, p) in d.projectors.iter().enumerate() {
        let name = &d.table.names[i];
        let expected_rank = d.multiplicities[i] * d.table.degrees[i];
        c.check(format!("projector {name} is idempotent"), &p.mul(p) == p, String::new);
        c.check(format!("projector {name} has rank m*deg"), p.rank() == expected_rank, || {
            format!("rank {} != {expected_rank}", p.rank())
        });
        c.check(
            format!("basis of {name} has m*deg vectors"),
            d.bases[i].len() == expected_rank,
            || format!("{} vectors", d.bases[i].len()),
        );
    }
}

fn basis_coeffs(d: &Decomposition, row: usize) -> Vec<Vec<Cyc>> {
    d.bases[row].iter().map(|v| v.coeffs.clone()).collect()
}

fn span_check(c: &mut Checks, d: &Decomposition, row_name: &str, expected: &[Vec<Cyc>]) {
    let Some(row) = d.component(row_name) else {
        c.check(format!("component {row_name} exists"), false, || "missing".into());
        return;
    };
    let expected = embed_vecs(expected, d.field());
    let got = basis_coeffs(d, row);
    c.check(
        format!("span of {row_name}"),
        same_span(&got, &expected, d.config.len(), d.field()),
        || format!("computed {} vs published {}", show(&got), show(&expected)),
    );
}

fn cyclic_checks(c: &mut Checks, n: usize, d: &Decomposition) {
    let field = d.field();
    let cond = n as u32;
    let len = d.config.len();
    let phi = Preset::Cyclic(n).phi();
    let Ok(s_phi) = pullback_matrix(&phi, &d.config) else {
        c.check("phi is an automorphism", false, || "pullback failed".into());
        return;
    };
    let rho_phi = &d.rho[d.group.index_of(&phi).expect("phi in group")];
    let mut seen = Vec::new();
    for k in 0..n as i64 {
        let u = root_combination(k, len, 0, 1, cond, field);
        let zk = Cyc::zeta_pow(k, cond).embed(field).expect("field");
        let scaled: Vec<Cyc> = u.iter().map(|x| x * &zk).collect();
        c.check(format!("substitution phi scales u_{k} by z^{k}"), s_phi.mul_vec(&u) == scaled, || {
            show(&[s_phi.mul_vec(&u)])
        });
        let zmk = zk.inv().expect("root of unity");
        let inv_scaled: Vec<Cyc> = u.iter().map(|x| x * &zmk).collect();
        c.check(format!("action rho(phi) scales u_{k} by z^-{k}"), rho_phi.mul_vec(&u) == inv_scaled, || {
            show(&[rho_phi.mul_vec(&u)])
        });
        if d.group_type == GroupType::Cyclic(n) {
            let owner = (0..d.bases.len())
                .find(|&r| d.bases[r].len() == 1 && proportional(&d.bases[r][0].coeffs, &u));
            c.check(format!("u_{k} spans a one-dimensional component"), owner.is_some(), || {
                "no component is spanned by it".into()
            });
            seen.extend(owner);
        }
    }
    if d.group_type == GroupType::Cyclic(n) {
        seen.sort_unstable();
        seen.dedup();
        c.check("the u_k give n distinct components", seen.len() == n, || {
            format!("{} distinct", seen.len())
        });
    }
}

fn dihedral_checks(c: &mut Checks, n: usize, d: &Decomposition) {
    let field = d.field();
    let cond = n as u32;
    let len = d.config.len();
    let preset = Preset::Dihedral(n);
    let psi = preset.generators()[1].clone();
    let Ok(s_psi) = pullback_matrix(&psi, &d.config) else {
        c.check("psi is an automorphism", false, || "pullback failed".into());
        return;
    };
    let u = |k: i64| root_combination(k, len, 1, 0, cond, field);
    for k in 1..n as i64 {
        let zk = Cyc::zeta_pow(k, cond).embed(field).expect("field");
        let target: Vec<Cyc> = u(n as i64 - k).iter().map(|x| x * &zk).collect();
        c.check(format!("substitution psi sends u_{k} to z^{k} u_{}", n as i64 - k), s_psi.mul_vec(&u(k)) == target, || {
            show(&[s_psi.mul_vec(&u(k))])
        });
    }
    let mut omega0 = vec![Cyc::zero(field); len];
    omega0[0] = Cyc::one(field);
    // the root sum does not vanish for k = n, leaving an omega_0 term
    let un = u(n as i64);
    let shifted: Vec<Cyc> = un
        .iter()
        .zip(&omega0)
        .map(|(x, o)| x - &(o * &Cyc::from_int(n as i64, field)))
        .collect();
    c.check(format!("substitution psi sends u_{n} to u_{n} - {n} omega_0"), s_psi.mul_vec(&un) == shifted, || {
        show(&[s_psi.mul_vec(&un)])
    });
    if d.group_type != GroupType::Dihedral(n) {
        return;
    }
    span_check(c, d, "psi2", &[omega0.clone()]);
    let half = Cyc::from_rational(BigRational::new(n.into(), 2.into()), field);
    let invariant: Vec<Cyc> = un.iter().zip(&omega0).map(|(x, o)| x - &(o * &half)).collect();
    span_check(c, d, "psi1", &[invariant]);
    let m = n / 2;
    let top = if n % 2 == 0 { m - 1 } else { m };
    for k in 1..=top as i64 {
        span_check(c, d, &format!("U{k}"), &[u(k), u(n as i64 - k)]);
    }
    if n % 2 == 0 {
        let um = u(m as i64);
        let owner = ["psi3", "psi4"].into_iter().find(|name| {
            d.component(name).is_some_and(|r| {
                d.bases[r].len() == 1 && proportional(&d.bases[r][0].coeffs, &um)
            })
        });
        c.check(format!("u_{m} spans a sign component"), owner.is_some(), || {
            "neither psi3 nor psi4 is spanned by it".into()
        });
    }
}

fn printed_checks(c: &mut Checks, preset: Preset, d: &Decomposition) {
    for (name, basis) in preset.printed_bases() {
        span_check(c, d, name, &basis);
    }
    for (name, m, printed) in preset.printed_matrices() {
        let printed = printed.embed(d.field()).expect("field");
        let got = pullback_matrix(&m, &d.config);
        c.check(format!("printed matrix of {name}"), got.as_ref() == Ok(&printed), || {
            format!("computed {got:?}")
        });
    }
    for (name, printed) in preset.printed_projectors() {
        let Some(row) = d.component(name) else {
            c.check(format!("component {name} exists"), false, || "missing".into());
            continue;
        };
        let deg = Cyc::from_int(d.table.degrees[row] as i64, d.field());
        let expected = printed.embed(d.field()).expect("field").scale(&deg);
        c.check(
            format!("projector {name} equals degree times the printed one"),
            d.projectors[row] == expected,
            || format!("computed {:?}", d.projectors[row]),
        );
    }
}
