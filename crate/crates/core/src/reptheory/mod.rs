//! Characters, multiplicities and isotypic projections for the action of
//! the automorphism group on the residue space.

mod report;
mod tables;

use num::integer::lcm;
use num::{BigInt, BigRational};
use rayon::prelude::*;

pub use report::{CharacterEntry, Component, ConfigEcho, DecompositionReport, GroupSummary, ProjectorEntry, ReportOptions};
pub use tables::{character_table, golden_conjugate, golden_ratio, CharTable};

use crate::autgroup::{compute_aut, identify_type, Group, GroupType};
use crate::cyclofield::Cyc;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::omega::{action_matrix, OmegaVec, PointConfig};

/// `columns[c]` is the group class placed under table column `c`.
pub type Alignment = Vec<usize>;

fn embed_all(values: &[Cyc], conductor: u32) -> Vec<Cyc> {
    values
        .iter()
        .map(|v| v.embed(conductor).expect("conductor divides the common field"))
        .collect()
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn candidate_alignments(g: &Group, table: &CharTable) -> Vec<Alignment> {
    let n = g.order();
    let class = |i: usize| g.class_of(i);
    let of_order = |k: usize| (0..n).filter(move |&i| g.element_order(i) == k);
    let classes_with = |order: usize, size: usize| -> Vec<usize> {
        (0..g.classes().len())
            .filter(|&c| g.element_order(g.classes()[c][0]) == order && g.classes()[c].len() == size)
            .collect()
    };
    match table.group_type {
        GroupType::Cyclic(1) => vec![vec![0]],
        GroupType::Cyclic(k) => of_order(k)
            .map(|r| g.powers(r).into_iter().map(class).collect())
            .collect(),
        GroupType::Dihedral(2) => {
            let invols: Vec<usize> = of_order(2).collect();
            permutations(&invols)
                .into_iter()
                .map(|p| vec![0, class(p[0]), class(p[1]), class(p[2])])
                .collect()
        }
        GroupType::Dihedral(k) => {
            let m = k / 2;
            let mut out = Vec::new();
            for r in of_order(k) {
                let rotations = g.powers(r);
                let Some(s) = (0..n).find(|i| !rotations.contains(i) && g.element_order(*i) == 2)
                else {
                    continue;
                };
                let mut cols: Vec<usize> = rotations[..=m].iter().map(|&i| class(i)).collect();
                if k % 2 == 0 {
                    let (even, odd) = (class(s), class(g.mul(s, r)));
                    let mut swapped = cols.clone();
                    cols.extend([even, odd]);
                    swapped.extend([odd, even]);
                    out.push(cols);
                    out.push(swapped);
                } else {
                    cols.push(class(s));
                    out.push(cols);
                }
            }
            out
        }
        GroupType::A4 => {
            let threes = classes_with(3, 4);
            let twos = classes_with(2, 3);
            if threes.len() != 2 || twos.len() != 1 {
                return Vec::new();
            }
            vec![
                vec![0, twos[0], threes[0], threes[1]],
                vec![0, twos[0], threes[1], threes[0]],
            ]
        }
        GroupType::S4 => {
            let pick = |o, s| classes_with(o, s).first().copied();
            match (pick(2, 6), pick(2, 3), pick(3, 8), pick(4, 6)) {
                (Some(a), Some(b), Some(c), Some(d)) => vec![vec![0, a, b, c, d]],
                _ => Vec::new(),
            }
        }
        GroupType::A5 => {
            let fives = classes_with(5, 12);
            match (classes_with(3, 20).first(), classes_with(2, 15).first(), fives.len()) {
                (Some(&a), Some(&b), 2) => vec![
                    vec![0, a, b, fives[0], fives[1]],
                    vec![0, a, b, fives[1], fives[0]],
                ],
                _ => Vec::new(),
            }
        }
    }
}

/// Whether the aligned rotation character of the group matches the row
/// combination the table designates for the rotation representation.
fn rotation_consistent(g: &Group, table: &CharTable, columns: &[usize], field: u32) -> bool {
    let combo = table.rotation_decomposition();
    columns.iter().enumerate().all(|(c, &cls)| {
        let rep = g.element(g.classes()[cls][0]);
        let observed = rep.rotation_character().embed(field).expect("common field");
        let expected = combo.iter().fold(Cyc::zero(field), |acc, &(row, mult)| {
            let v = table.rows[row][c].embed(field).expect("common field");
            &acc + &(&v * &Cyc::from_int(mult as i64, field))
        });
        observed == expected
    })
}

/// Bijections from table columns to group classes preserving element order
/// and class size. Alignments consistent with the geometric rotation
/// character come first; the remaining statistic-preserving ones follow.
pub fn match_classes(g: &Group, table: &CharTable) -> Result<Vec<Alignment>> {
    let gt = identify_type(g)?;
    if gt != table.group_type {
        return Err(Error::ClassMatching(format!(
            "group is {gt} but the table is for {}",
            table.group_type
        )));
    }
    if g.classes().len() != table.class_sizes.len() {
        return Err(Error::ClassMatching(format!(
            "{} classes against {} table columns",
            g.classes().len(),
            table.class_sizes.len()
        )));
    }
    let field = lcm(g.conductor(), table.conductor);
    let valid = |cols: &Alignment| {
        let mut seen = cols.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len() == cols.len()
            && cols.iter().enumerate().all(|(c, &cls)| {
                g.classes()[cls].len() == table.class_sizes[c]
                    && g.element_order(g.classes()[cls][0]) == table.element_orders[c]
            })
    };
    let mut unique: Vec<Alignment> = Vec::new();
    for cols in candidate_alignments(g, table) {
        if valid(&cols) && !unique.contains(&cols) {
            unique.push(cols);
        }
    }
    if unique.is_empty() {
        return Err(Error::ClassMatching(format!(
            "no class bijection preserves element orders and class sizes for {gt}"
        )));
    }
    let (mut first, rest): (Vec<_>, Vec<_>) = unique
        .into_iter()
        .partition(|cols| rotation_consistent(g, table, cols, field));
    first.extend(rest);
    Ok(first)
}

/// `rho(g)` for every element, in group order, over `config`'s field.
pub fn action_matrices(g: &Group, config: &PointConfig) -> Result<Vec<Matrix>> {
    g.elements()
        .par_iter()
        .map(|m| action_matrix(m, config))
        .collect()
}

/// Trace of the action at one representative per group class.
pub fn rep_character(g: &Group, config: &PointConfig) -> Result<Vec<Cyc>> {
    g.classes()
        .iter()
        .map(|class| Ok(action_matrix(g.element(class[0]), config)?.trace()))
        .collect()
}

fn inner_product(chi: &[Cyc], row: &[Cyc], sizes: &[usize], field: u32) -> Cyc {
    let order: usize = sizes.iter().sum();
    let sum = chi.iter().zip(row).zip(sizes).fold(Cyc::zero(field), |acc, ((x, y), &s)| {
        &acc + &(&(x * &y.conj()) * &Cyc::from_int(s as i64, field))
    });
    sum.scale(&BigRational::new(BigInt::from(1), BigInt::from(order)))
}

/// `m_i = <chi, chi_i>` for a class function aligned to the table columns.
pub fn multiplicities(chi: &[Cyc], table: &CharTable) -> Result<Vec<usize>> {
    let field = chi.first().map_or(table.conductor, Cyc::conductor);
    table
        .rows
        .iter()
        .zip(&table.names)
        .map(|(row, name)| {
            let row = embed_all(row, field);
            let ip = inner_product(chi, &row, &table.class_sizes, field);
            ip.as_integer()
                .and_then(|m| usize::try_from(m).ok())
                .ok_or_else(|| {
                    Error::NotCharacter(format!("inner product with {name} is {ip}"))
                })
        })
        .collect()
}

/// `pi = deg/|G| * sum_g conj(chi(g)) rho(g)` for table row `row`.
pub fn projector(
    row: usize,
    table: &CharTable,
    g: &Group,
    columns: &[usize],
    rho: &[Matrix],
) -> Matrix {
    let field = rho[0].conductor();
    let dim = rho[0].rows();
    let mut column_of_class = vec![0; columns.len()];
    for (c, &cls) in columns.iter().enumerate() {
        column_of_class[cls] = c;
    }
    let values = embed_all(&table.rows[row], field);
    let mut acc = Matrix::zeros(dim, dim, field);
    for (i, m) in rho.iter().enumerate() {
        let weight = values[column_of_class[g.class_of(i)]].conj();
        if !weight.is_zero() {
            acc = acc.add(&m.scale(&weight));
        }
    }
    let factor = BigRational::new(BigInt::from(table.degrees[row]), BigInt::from(g.order()));
    acc.scale(&Cyc::from_rational(factor, field))
}

/// Pivot-column basis of the image of a projector.
pub fn isotypic_basis(p: &Matrix) -> Vec<OmegaVec> {
    p.column_space_basis()
        .into_iter()
        .map(|coeffs| OmegaVec { coeffs })
        .collect()
}

/// Everything computed for one configuration, before serialization.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub original: PointConfig,
    pub config: PointConfig,
    pub group: Group,
    pub group_type: GroupType,
    pub table: CharTable,
    pub alignment: Alignment,
    /// Other alignments that also give nonnegative integer multiplicities.
    pub alternative_alignments: Vec<Alignment>,
    pub rho: Vec<Matrix>,
    /// Character of the action, one value per table column.
    pub character: Vec<Cyc>,
    pub multiplicities: Vec<usize>,
    pub projectors: Vec<Matrix>,
    pub bases: Vec<Vec<OmegaVec>>,
}

impl Decomposition {
    pub fn field(&self) -> u32 {
        self.config.conductor()
    }

    pub fn component(&self, name: &str) -> Option<usize> {
        self.table.row_index(name)
    }

    /// Group element placed under table column `c` (minimal index in its class).
    pub fn representative(&self, c: usize) -> usize {
        self.group.classes()[self.alignment[c]][0]
    }
}

pub fn decompose(config: &PointConfig) -> Result<Decomposition> {
    decompose_with(config, &character_table)
}

/// As [`decompose`] with a caller-chosen source of character tables.
pub fn decompose_with(
    config: &PointConfig,
    tables: &dyn Fn(GroupType) -> CharTable,
) -> Result<Decomposition> {
    let base_group = compute_aut(config)?;
    let group_type = identify_type(&base_group)?;
    let table = tables(group_type);
    let field = lcm(config.conductor(), table.conductor);
    let lifted = config.embed(field)?;
    let group = Group::from_elements(field, base_group.elements().to_vec())?;
    let rho = action_matrices(&group, &lifted)?;
    let class_traces: Vec<Cyc> = group
        .classes()
        .iter()
        .map(|class| rho[class[0]].trace())
        .collect();

    let mut chosen = None;
    let mut alternatives = Vec::new();
    let mut last_error = None;
    for cols in match_classes(&group, &table)? {
        let chi: Vec<Cyc> = cols.iter().map(|&cls| class_traces[cls].clone()).collect();
        match multiplicities(&chi, &table) {
            Ok(m) if chosen.is_none() => chosen = Some((cols, chi, m)),
            Ok(_) => alternatives.push(cols),
            Err(e) => last_error = Some(e),
        }
    }
    let Some((alignment, character, mults)) = chosen else {
        return Err(Error::ClassMatching(format!(
            "no alignment of {group_type} classes gives nonnegative integer multiplicities{}",
            last_error.map(|e| format!(" ({e})")).unwrap_or_default()
        )));
    };

    let projectors: Vec<Matrix> = (0..table.rows.len())
        .into_par_iter()
        .map(|row| projector(row, &table, &group, &alignment, &rho))
        .collect();
    let bases = projectors.iter().map(isotypic_basis).collect();
    Ok(Decomposition {
        original: config.clone(),
        config: lifted,
        group,
        group_type,
        table,
        alignment,
        alternative_alignments: alternatives,
        rho,
        character,
        multiplicities: mults,
        projectors,
        bases,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::autgroup::closure;
    use crate::linalg::same_span;
    use crate::ratfunc::Moebius;

    fn cfg(n: u32, pts: &[&str]) -> PointConfig {
        PointConfig::parse(n, pts).unwrap()
    }

    fn vecs(rows: &[&[&str]], n: u32) -> Vec<Vec<Cyc>> {
        rows.iter()
            .map(|r| r.iter().map(|s| Cyc::parse(s, n).unwrap()).collect())
            .collect()
    }

    fn coeffs(basis: &[OmegaVec]) -> Vec<Vec<Cyc>> {
        basis.iter().map(|v| v.coeffs.clone()).collect()
    }

    #[test]
    fn special_dihedral_decomposition() {
        let d = decompose(&cfg(1, &["0", "1", "-1"])).unwrap();
        assert_eq!(d.group_type, GroupType::Dihedral(4));
        assert_eq!(d.multiplicities, vec![0, 0, 1, 0, 1]);
        let psi3 = d.component("psi3").unwrap();
        let u1 = d.component("U1").unwrap();
        assert!(same_span(&coeffs(&d.bases[psi3]), &vecs(&[&["1", "-1", "-1"]], 4), 3, 4));
        assert!(same_span(
            &coeffs(&d.bases[u1]),
            &vecs(&[&["1", "0", "0"], &["0", "1", "-1"]], 4),
            3,
            4
        ));
    }

    #[test]
    fn trivial_projector_on_cyclic_five() {
        let d = decompose(&cfg(5, &["z", "z^2", "z^3", "z^4", "1"])).unwrap();
        assert_eq!(d.multiplicities, vec![1; 5]);
        let p = &d.projectors[0];
        assert_eq!(p.rank(), 1);
        let ones = vec![vec![Cyc::one(5); 5]];
        assert!(same_span(&coeffs(&d.bases[0]), &ones, 5, 5));
    }

    #[test]
    fn tetrahedral_single_irreducible() {
        let d = decompose(&cfg(6, &["0", "1", "z"])).unwrap();
        assert_eq!(d.group_type, GroupType::A4);
        assert_eq!(d.character, vec![Cyc::from_int(3, 6), Cyc::from_int(-1, 6), Cyc::zero(6), Cyc::zero(6)]);
        assert_eq!(d.multiplicities, vec![0, 0, 0, 1]);
    }

    #[test]
    fn rep_character_matches_octahedral_row() {
        let config = cfg(4, &["0", "1", "z", "-1", "-z"]);
        let d = decompose(&config).unwrap();
        let expected: Vec<Cyc> = [5, -1, 1, -1, 1].iter().map(|&v| Cyc::from_int(v, 4)).collect();
        assert_eq!(d.character, expected);
        let by_class = rep_character(&d.group, &config).unwrap();
        for (c, &cls) in d.alignment.iter().enumerate() {
            assert_eq!(by_class[cls], d.character[c]);
            for &i in &d.group.classes()[cls] {
                assert_eq!(d.rho[i].trace(), d.character[c]);
            }
        }
    }

    #[test]
    fn trivial_group_multiplicity() {
        let g = closure(1, &[]).unwrap();
        let table = character_table(GroupType::Cyclic(1));
        let config = cfg(1, &["0", "1", "2", "3"]);
        let chi = rep_character(&g, &config).unwrap();
        assert_eq!(multiplicities(&chi, &table).unwrap(), vec![4]);
    }

    #[test]
    fn non_character_is_rejected() {
        let table = character_table(GroupType::Cyclic(2));
        let chi = vec![Cyc::from_int(1, 2), Cyc::from_int(0, 2)];
        assert!(matches!(multiplicities(&chi, &table), Err(Error::NotCharacter(_))));
    }

    #[test]
    fn zero_projector_has_empty_basis() {
        assert!(isotypic_basis(&Matrix::zeros(3, 3, 1)).is_empty());
    }

    #[test]
    fn mismatched_table_is_refused() {
        let g = closure(5, &[Moebius::parse("z", "0", "0", "1", 5).unwrap()]).unwrap();
        let table = character_table(GroupType::A5);
        assert!(matches!(match_classes(&g, &table), Err(Error::ClassMatching(_))));
    }
}
