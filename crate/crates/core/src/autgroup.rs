//! Finite groups of fractional linear maps: automorphisms of the N-point
//! ring, closures of generator sets, conjugacy classes and Klein types.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::omega::PointConfig;
use crate::ratfunc::{Moebius, ProjPoint};

/// Largest group `closure` will build before giving up.
pub const CLOSURE_BOUND: usize = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupType {
    Cyclic(usize),
    Dihedral(usize),
    A4,
    S4,
    A5,
}

impl GroupType {
    pub fn order(&self) -> usize {
        match *self {
            GroupType::Cyclic(n) => n,
            GroupType::Dihedral(n) => 2 * n,
            GroupType::A4 => 12,
            GroupType::S4 => 24,
            GroupType::A5 => 60,
        }
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupType::Cyclic(n) => write!(f, "C{n}"),
            GroupType::Dihedral(n) => write!(f, "D{n}"),
            GroupType::A4 => f.write_str("A4"),
            GroupType::S4 => f.write_str("S4"),
            GroupType::A5 => f.write_str("A5"),
        }
    }
}

impl Serialize for GroupType {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// A finite group of normalized maps with its multiplication table.
/// Element 0 is the identity.
#[derive(Clone, Debug)]
pub struct Group {
    conductor: u32,
    elements: Vec<Moebius>,
    index: HashMap<Moebius, usize>,
    table: Vec<Vec<usize>>,
    inverses: Vec<usize>,
    orders: Vec<usize>,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
}

impl Group {
    /// Builds the table for a set of maps, failing if it is not closed.
    pub fn from_elements(conductor: u32, elements: Vec<Moebius>) -> Result<Group> {
        let identity = Moebius::identity(conductor);
        let mut ordered = vec![identity.clone()];
        let mut index = HashMap::new();
        index.insert(identity, 0);
        for m in elements {
            let m = if m.conductor() == conductor { m } else { m.embed(conductor)? };
            if !index.contains_key(&m) {
                index.insert(m.clone(), ordered.len());
                ordered.push(m);
            }
        }
        let not_closed = |a: &Moebius, b: &Moebius| {
            Error::NotAutomorphism(format!("element set not closed: {a} o {b} is missing"))
        };
        let table = ordered
            .par_iter()
            .map(|a| {
                ordered
                    .iter()
                    .map(|b| index.get(&a.compose(b)).copied().ok_or_else(|| not_closed(a, b)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let n = ordered.len();
        let inverses = (0..n)
            .map(|i| (0..n).find(|&j| table[i][j] == 0).expect("finite closed set has inverses"))
            .collect();
        let orders = (0..n)
            .map(|i| {
                let mut k = 1;
                let mut x = i;
                while x != 0 {
                    x = table[x][i];
                    k += 1;
                }
                k
            })
            .collect();
        let mut g = Group {
            conductor,
            elements: ordered,
            index,
            table,
            inverses,
            orders,
            classes: Vec::new(),
            class_of: Vec::new(),
        };
        g.classes = conjugacy_classes(&g);
        g.class_of = vec![0; n];
        for (c, class) in g.classes.iter().enumerate() {
            for &i in class {
                g.class_of[i] = c;
            }
        }
        Ok(g)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Moebius] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Moebius {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &Moebius) -> Option<usize> {
        if m.conductor() == self.conductor {
            self.index.get(m).copied()
        } else {
            m.embed(self.conductor).ok().and_then(|m| self.index.get(&m).copied())
        }
    }

    /// Index of `elements[i] o elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn inverse(&self, i: usize) -> usize {
        self.inverses[i]
    }

    pub fn element_order(&self, i: usize) -> usize {
        self.orders[i]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_of[i]
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (i + 1..n).all(|j| self.table[i][j] == self.table[j][i]))
    }

    /// Whether both groups consist of the same maps.
    pub fn same_elements(&self, other: &Group) -> bool {
        self.order() == other.order()
            && other.elements.iter().all(|m| self.index_of(m).is_some())
    }

    /// Indices of the cyclic subgroup generated by `i`.
    pub fn powers(&self, i: usize) -> Vec<usize> {
        let mut out = vec![0];
        let mut x = i;
        while x != 0 {
            out.push(x);
            x = self.table[x][i];
        }
        out
    }
}

impl Serialize for Group {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Group", 4)?;
        s.serialize_field("order", &self.order())?;
        s.serialize_field("type", &identify_type(self).ok())?;
        s.serialize_field("elements", &self.elements)?;
        s.serialize_field("classes", &self.classes)?;
        s.end()
    }
}

/// All maps permuting `points ∪ {∞}`.
pub fn compute_aut(config: &PointConfig) -> Result<Group> {
    if config.len() + 1 < 3 {
        return Err(Error::Underdetermined(format!(
            "{} puncture(s) do not pin down a fractional linear map",
            config.len()
        )));
    }
    let s = config.points_with_infinity();
    let reference = [s[0].clone(), s[1].clone(), s[2].clone()];
    let k = s.len();
    let triples: Vec<[usize; 3]> = (0..k)
        .flat_map(|i| (0..k).flat_map(move |j| (0..k).map(move |l| [i, j, l])))
        .filter(|[i, j, l]| i != j && i != l && j != l)
        .collect();
    let found = triples
        .par_iter()
        .map(|&[i, j, l]| {
            let target = [s[i].clone(), s[j].clone(), s[l].clone()];
            let m = Moebius::from_triple(&reference, &target)?;
            Ok(permutes(&m, &s).then_some(m))
        })
        .collect::<Result<Vec<_>>>()?;
    Group::from_elements(config.conductor(), found.into_iter().flatten().collect())
}

fn permutes(m: &Moebius, s: &[ProjPoint]) -> bool {
    s.iter().all(|p| s.contains(&m.apply(p)))
}

/// The smallest group containing `generators`, embedded at `conductor`.
pub fn closure(conductor: u32, generators: &[Moebius]) -> Result<Group> {
    let gens = generators
        .iter()
        .map(|g| g.embed(conductor))
        .collect::<Result<Vec<_>>>()?;
    let identity = Moebius::identity(conductor);
    let mut seen: HashMap<Moebius, ()> = HashMap::new();
    seen.insert(identity.clone(), ());
    let mut elements = vec![identity.clone()];
    let mut queue = VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = x.compose(g);
            if seen.insert(y.clone(), ()).is_none() {
                if elements.len() >= CLOSURE_BOUND {
                    return Err(Error::NotFinite {
                        bound: CLOSURE_BOUND,
                    });
                }
                elements.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    Group::from_elements(conductor, elements)
}

/// Conjugation orbits, each sorted, ordered by their minimal element.
pub fn conjugacy_classes(g: &Group) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        let mut class: Vec<usize> = (0..n)
            .map(|h| g.mul(g.mul(h, i), g.inverse(h)))
            .collect();
        class.sort_unstable();
        class.dedup();
        for &j in &class {
            assigned[j] = true;
        }
        classes.push(class);
    }
    classes
}

fn order_counts(g: &Group) -> HashMap<usize, usize> {
    let mut counts = HashMap::new();
    for i in 0..g.order() {
        *counts.entry(g.element_order(i)).or_insert(0) += 1;
    }
    counts
}

/// Returns `(r, s)` with `r` of order `n = |G| / 2` and `s` an involution
/// outside `<r>` inverting it, if `G` is dihedral.
pub fn dihedral_generators(g: &Group) -> Option<(usize, usize)> {
    let order = g.order();
    if order < 4 || order % 2 != 0 {
        return None;
    }
    let m = order / 2;
    (0..order).filter(|&r| g.element_order(r) == m).find_map(|r| {
        let rotations = g.powers(r);
        (0..order)
            .filter(|s| !rotations.contains(s) && g.element_order(*s) == 2)
            .find(|&s| g.mul(g.mul(s, r), s) == g.inverse(r))
            .map(|s| (r, s))
    })
}

pub fn identify_type(g: &Group) -> Result<GroupType> {
    let n = g.order();
    if g.is_abelian() && (0..n).any(|i| g.element_order(i) == n) {
        return Ok(GroupType::Cyclic(n));
    }
    if dihedral_generators(g).is_some() {
        return Ok(GroupType::Dihedral(n / 2));
    }
    let counts = order_counts(g);
    let matches = |expected: &[(usize, usize)]| {
        let total: usize = expected.iter().map(|&(_, c)| c).sum();
        total + 1 == n && expected.iter().all(|(o, c)| counts.get(o) == Some(c))
    };
    match n {
        12 if matches(&[(3, 8), (2, 3)]) => Ok(GroupType::A4),
        24 if matches(&[(4, 6), (3, 8), (2, 9)]) => Ok(GroupType::S4),
        60 if matches(&[(5, 24), (3, 20), (2, 15)]) => Ok(GroupType::A5),
        _ => Err(Error::NotKlein(format!(
            "group of order {n} matches no finite rotation group"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: u32, pts: &[&str]) -> PointConfig {
        PointConfig::parse(n, pts).unwrap()
    }

    fn class_sizes(g: &Group) -> Vec<usize> {
        let mut v: Vec<usize> = g.classes().iter().map(Vec::len).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn cyclic_five() {
        let g = compute_aut(&cfg(5, &["1", "z", "z^2", "z^3", "z^4"])).unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(identify_type(&g).unwrap(), GroupType::Cyclic(5));
        assert_eq!(g.classes().len(), 5);
    }

    #[test]
    fn special_dihedral() {
        let g = compute_aut(&cfg(1, &["0", "1", "-1"])).unwrap();
        assert_eq!(g.order(), 8);
        assert!(g.index_of(&Moebius::parse("-1", "0", "0", "1", 1).unwrap()).is_some());
        assert!(g.index_of(&Moebius::parse("1", "1", "1", "-1", 1).unwrap()).is_some());
        assert_eq!(identify_type(&g).unwrap(), GroupType::Dihedral(4));
        assert_eq!(class_sizes(&g), vec![1, 1, 2, 2, 2]);
    }

    #[test]
    fn octahedral() {
        let g = compute_aut(&cfg(4, &["0", "1", "z", "-1", "-z"])).unwrap();
        assert_eq!(g.order(), 24);
        assert_eq!(identify_type(&g).unwrap(), GroupType::S4);
        assert_eq!(class_sizes(&g), vec![1, 3, 6, 6, 8]);
    }

    #[test]
    fn closures() {
        assert_eq!(closure(5, &[Moebius::identity(5)]).unwrap().order(), 1);
        let phi = Moebius::parse("z", "0", "0", "1", 5).unwrap();
        let psi = Moebius::parse("0", "z", "1", "0", 5).unwrap();
        let g = closure(5, &[phi, psi]).unwrap();
        assert_eq!(g.order(), 10);
        assert_eq!(identify_type(&g).unwrap(), GroupType::Dihedral(5));
        let dilation = Moebius::parse("2", "0", "0", "1", 1).unwrap();
        assert_eq!(
            closure(1, &[dilation]).unwrap_err(),
            Error::NotFinite { bound: CLOSURE_BOUND }
        );
    }

    #[test]
    fn klein_four_is_dihedral() {
        let a = Moebius::parse("-1", "0", "0", "1", 1).unwrap();
        let b = Moebius::parse("0", "1", "1", "0", 1).unwrap();
        let g = closure(1, &[a, b]).unwrap();
        assert_eq!(identify_type(&g).unwrap(), GroupType::Dihedral(2));
        let c2 = closure(1, &[Moebius::parse("-1", "0", "0", "1", 1).unwrap()]).unwrap();
        assert_eq!(identify_type(&c2).unwrap(), GroupType::Cyclic(2));
    }

    #[test]
    fn underdetermined() {
        assert!(matches!(
            compute_aut(&cfg(1, &["0"])),
            Err(Error::Underdetermined(_))
        ));
    }

    #[test]
    fn not_closed() {
        let phi = Moebius::parse("z", "0", "0", "1", 5).unwrap();
        assert!(Group::from_elements(5, vec![phi]).is_err());
    }

    #[test]
    fn json_shape() {
        let g = compute_aut(&cfg(1, &["0", "1", "-1"])).unwrap();
        let v: serde_json::Value = serde_json::to_value(&g).unwrap();
        assert_eq!(v["order"], 8);
        assert_eq!(v["type"], "D4");
        assert_eq!(v["elements"].as_array().unwrap().len(), 8);
        assert_eq!(v["classes"].as_array().unwrap().len(), 5);
    }
}
