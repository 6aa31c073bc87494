//! Property tests for the algebraic invariants of each layer.

mod common;

use std::sync::OnceLock;

use common::{assemble, family_configs};
use num::BigRational;
use npoint_center::autgroup::{closure, compute_aut, identify_type, GroupType};
use npoint_center::cyclofield::euler_phi;
use npoint_center::linalg::Matrix;
use npoint_center::omega::{cocycle, pullback_matrix, reduce, PointConfig};
use npoint_center::presets::{Preset, FAMILY_PRESETS};
use npoint_center::ratfunc::{partial_fractions, residue_at, residue_at_infinity, ProjPoint};
use npoint_center::reptheory::{character_table, decompose, Decomposition};
use npoint_center::verify::verify_preset;
use npoint_center::{Cyc, Moebius, RatFn};
use proptest::prelude::*;

const CONDUCTORS: [u32; 8] = [1, 2, 3, 4, 5, 7, 8, 12];

fn cyc_from(n: u32, coords: &[(i64, i64)]) -> Cyc {
    let coeffs = coords
        .iter()
        .take(euler_phi(n))
        .map(|&(p, q)| BigRational::new(p.into(), q.into()))
        .collect();
    Cyc::from_coeffs(coeffs, n).unwrap()
}

fn coords(height: i64) -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::vec((-height..=height, 1..=height.min(9)), 4)
}

/// An element of Q(zeta_n) for n = 5 (four power-basis coordinates).
fn cyc5(height: i64) -> impl Strategy<Value = Cyc> {
    coords(height).prop_map(|c| cyc_from(5, &c))
}

/// A conductor with three elements of its field.
fn field_triple(height: i64) -> impl Strategy<Value = (Cyc, Cyc, Cyc)> {
    prop::sample::select(CONDUCTORS.to_vec()).prop_flat_map(move |n| {
        let padded = move || prop::collection::vec((-height..=height, 1..=9i64), 12).prop_map(move |c| cyc_from(n, &c));
        (padded(), padded(), padded())
    })
}

fn decompositions() -> &'static Vec<(Preset, Decomposition)> {
    static CACHE: OnceLock<Vec<(Preset, Decomposition)>> = OnceLock::new();
    CACHE.get_or_init(|| family_configs().into_iter().map(|(p, c)| (p, decompose(&c).unwrap())).collect())
}

#[derive(Clone, Debug)]
struct ElementSpec {
    poly: Vec<(i64, i64)>,
    parts: Vec<(usize, i64, (i64, i64))>,
}

fn element_spec(points: usize, height: i64) -> impl Strategy<Value = ElementSpec> {
    (
        prop::collection::vec((-height..=height, -height..=height), 0..3),
        prop::collection::vec((0..points, 1..=3i64, (-height..=height, -height..=height)), 0..5),
    )
        .prop_map(|(poly, parts)| ElementSpec { poly, parts })
}

fn build(config: &PointConfig, spec: &ElementSpec) -> RatFn {
    let n = config.conductor();
    let c = |(a, b): (i64, i64)| &Cyc::from_int(a, n) + &(&Cyc::from_int(b, n) * &Cyc::zeta(n));
    let poly: Vec<Cyc> = spec.poly.iter().map(|&ab| c(ab)).collect();
    let parts: Vec<(usize, i64, Cyc)> = spec.parts.iter().map(|&(i, k, ab)| (i, k, c(ab))).collect();
    assemble(config, &poly, &parts)
}

fn preset_and_element(height: i64) -> impl Strategy<Value = (usize, ElementSpec)> {
    (0..FAMILY_PRESETS.len()).prop_flat_map(move |i| {
        let points = FAMILY_PRESETS[i].config().unwrap().len();
        (Just(i), element_spec(points, height))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((x, y, z) in field_triple(20)) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &y, &y * &x);
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn conj_is_an_involutive_automorphism((x, y, _) in field_triple(20)) {
        prop_assert_eq!(x.conj().conj(), x.clone());
        prop_assert_eq!((&x * &y).conj(), &x.conj() * &y.conj());
        prop_assert_eq!((&x + &y).conj(), &x.conj() + &y.conj());
        prop_assert!((&x * &x.conj()).approx().im.abs() < 1e-9);
    }

    #[test]
    fn approx_is_a_ring_homomorphism((x, y, _) in field_triple(1000)) {
        let (ax, ay) = (x.approx(), y.approx());
        prop_assert!(((&x + &y).approx() - (ax + ay)).norm() < 1e-9);
        prop_assert!(((&x * &y).approx() - ax * ay).norm() < 1e-9 * (1.0 + (ax * ay).norm()));
    }

    #[test]
    fn moebius_from_triple_round_trips(a in cyc5(6), b in cyc5(6), c in cyc5(6), d in cyc5(6), e in cyc5(6)) {
        let src = [ProjPoint::Finite(a), ProjPoint::Finite(b), ProjPoint::Infinity];
        let dst = [ProjPoint::Finite(c), ProjPoint::Infinity, ProjPoint::Finite(d)];
        prop_assume!(src[0] != src[1] && dst[0] != dst[2]);
        let m = Moebius::from_triple(&src, &dst).unwrap();
        for (s, t) in src.iter().zip(&dst) {
            prop_assert_eq!(&m.apply(s), t);
        }
        let other = ProjPoint::Finite(e);
        prop_assert_eq!(m.inverse().apply(&m.apply(&other)), other);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn partial_fractions_reconstruct(
        points in prop::collection::vec(cyc5(5), 4),
        spec in element_spec(4, 9),
    ) {
        let config = PointConfig::new(5, points);
        prop_assume!(config.is_ok());
        let config = config.unwrap();
        let f = build(&config, &spec);
        let pf = partial_fractions(&f, config.points()).unwrap();
        prop_assert_eq!(pf.reconstruct(), f.clone());
        let n = config.conductor();
        let mut expected = vec![vec![Cyc::zero(n); 3]; 4];
        for &(i, k, (a, b)) in &spec.parts {
            let c = &Cyc::from_int(a, n) + &(&Cyc::from_int(b, n) * &Cyc::zeta(n));
            expected[i][k as usize - 1] = &expected[i][k as usize - 1] + &c;
        }
        for (i, row) in expected.iter().enumerate() {
            for (k, c) in row.iter().enumerate() {
                prop_assert_eq!(&pf.coefficient(i, k + 1), c);
            }
        }
    }

    #[test]
    fn exact_forms_reduce_to_zero((i, spec) in preset_and_element(50)) {
        let config = FAMILY_PRESETS[i].config().unwrap();
        let h = build(&config, &spec);
        prop_assert!(reduce(&h.derivative(), &config).unwrap().is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn residues_sum_to_zero(points in prop::collection::vec(cyc5(4), 4), spec in element_spec(4, 9)) {
        let config = PointConfig::new(5, points);
        prop_assume!(config.is_ok());
        let config = config.unwrap();
        let f = build(&config, &spec);
        let finite = config.points().iter().fold(Cyc::zero(5), |acc, a| &acc + &residue_at(&f, a));
        prop_assert!((&finite + &residue_at_infinity(&f)).is_zero());
    }

    #[test]
    fn derivatives_have_no_residues(points in prop::collection::vec(cyc5(4), 4), spec in element_spec(4, 9)) {
        let config = PointConfig::new(5, points);
        prop_assume!(config.is_ok());
        let config = config.unwrap();
        let df = build(&config, &spec).derivative();
        for a in config.points() {
            prop_assert!(residue_at(&df, a).is_zero());
        }
        prop_assert!(residue_at_infinity(&df).is_zero());
    }

    #[test]
    fn reduce_is_linear((i, f) in preset_and_element(9), g in element_spec(3, 9), a in (-5i64..=5, -5i64..=5)) {
        let config = FAMILY_PRESETS[i].config().unwrap();
        let n = config.conductor();
        let g = ElementSpec { parts: g.parts.into_iter().filter(|p| p.0 < config.len()).collect(), ..g };
        let (f, g) = (build(&config, &f), build(&config, &g));
        let alpha = &Cyc::from_int(a.0, n) + &(&Cyc::from_int(a.1, n) * &Cyc::zeta(n));
        let lhs = reduce(&f.scale(&alpha).add(&g), &config).unwrap();
        let (rf, rg) = (reduce(&f, &config).unwrap(), reduce(&g, &config).unwrap());
        let rhs: Vec<Cyc> = rf.coeffs.iter().zip(&rg.coeffs).map(|(x, y)| &(x * &alpha) + y).collect();
        prop_assert_eq!(lhs.coeffs, rhs);
    }

    #[test]
    fn cocycle_is_antisymmetric((i, f) in preset_and_element(9), g in element_spec(3, 9)) {
        let config = FAMILY_PRESETS[i].config().unwrap();
        let g = ElementSpec { parts: g.parts.into_iter().filter(|p| p.0 < config.len()).collect(), ..g };
        let (f, g) = (build(&config, &f), build(&config, &g));
        let fg = cocycle(&f, &g, &config).unwrap();
        let gf = cocycle(&g, &f, &config).unwrap();
        let negated: Vec<Cyc> = gf.coeffs.iter().map(|x| -x).collect();
        prop_assert_eq!(fg.coeffs, negated);
    }

    #[test]
    fn projectors_commute_with_the_action(p in 0..FAMILY_PRESETS.len(), g in 0usize..60) {
        let (_, d) = &decompositions()[p];
        let rho = &d.rho[g % d.group.order()];
        for q in &d.projectors {
            prop_assert_eq!(q.mul(rho), rho.mul(q));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn cyclic_eigenvectors(n in 4usize..=9, k in 0i64..9) {
        let config = Preset::Cyclic(n).config().unwrap();
        let cond = n as u32;
        let s = pullback_matrix(&Preset::Cyclic(n).phi(), &config).unwrap();
        let u: Vec<Cyc> = config.points().iter().map(|a| a.pow(k).unwrap()).collect();
        let zk = Cyc::zeta_pow(k, cond);
        let scaled: Vec<Cyc> = u.iter().map(|x| x * &zk).collect();
        prop_assert_eq!(s.mul_vec(&u), scaled);
    }

    #[test]
    fn dihedral_flip(n in 3usize..=9, k in 1i64..9) {
        prop_assume!(k < n as i64);
        let config = Preset::Dihedral(n).config().unwrap();
        let cond = n as u32;
        let psi = Moebius::parse("0", "z", "1", "0", cond).unwrap();
        let s = pullback_matrix(&psi, &config).unwrap();
        let u = |k: i64| -> Vec<Cyc> {
            config.points().iter().map(|a| if a.is_zero() { a.clone() } else { a.pow(k).unwrap() }).collect()
        };
        let zk = Cyc::zeta_pow(k, cond);
        let target: Vec<Cyc> = u(n as i64 - k).iter().map(|x| x * &zk).collect();
        prop_assert_eq!(s.mul_vec(&u(k)), target);
    }
}

#[test]
fn pullback_reverses_composition_on_every_preset_group() {
    for (p, d) in decompositions() {
        let g = &d.group;
        let s: Vec<Matrix> = g.elements().iter().map(|m| pullback_matrix(m, &d.config).unwrap()).collect();
        for i in 0..g.order() {
            for j in 0..g.order() {
                assert_eq!(s[g.mul(i, j)], s[j].mul(&s[i]), "{p}: {i} {j}");
            }
        }
    }
}

#[test]
fn projector_algebra_on_every_preset() {
    for (p, d) in decompositions() {
        let dim = d.config.len();
        let identity = Matrix::identity(dim, d.field());
        let sum = d.projectors.iter().fold(Matrix::zeros(dim, dim, d.field()), |a, q| a.add(q));
        assert_eq!(sum, identity, "{p}");
        let mut total = 0;
        for (i, q) in d.projectors.iter().enumerate() {
            assert_eq!(&q.mul(q), q, "{p} {i}");
            assert_eq!(q.rank(), d.multiplicities[i] * d.table.degrees[i], "{p} {i}");
            total += d.multiplicities[i] * d.table.degrees[i];
        }
        assert_eq!(total, dim, "{p}");
        assert!(d.multiplicities.iter().all(|&m| m <= 1), "{p}: {:?}", d.multiplicities);
    }
}

#[test]
fn groups_match_published_generators_and_permute_the_punctures() {
    for (p, config) in family_configs() {
        let g = compute_aut(&config).unwrap();
        let generated = closure(config.conductor(), &p.generators()).unwrap();
        assert!(g.same_elements(&generated), "{p}");
        let s = config.points_with_infinity();
        for m in g.elements() {
            let mut images: Vec<usize> = s
                .iter()
                .map(|x| s.iter().position(|y| *y == m.apply(x)).expect("image is a puncture"))
                .collect();
            images.sort_unstable();
            assert_eq!(images, (0..s.len()).collect::<Vec<_>>(), "{p}: {m}");
        }
    }
}

#[test]
fn klein_disjunction_and_class_equation() {
    let mut configs: Vec<PointConfig> = family_configs().into_iter().map(|(_, c)| c).collect();
    for n in 2..=8 {
        configs.push(Preset::Cyclic(n).config().unwrap());
        configs.push(Preset::Dihedral(n).config().unwrap());
    }
    configs.push(PointConfig::parse(1, &["0", "1", "2", "5"]).unwrap());
    for config in &configs {
        let g = compute_aut(config).unwrap();
        let t = identify_type(&g).unwrap();
        assert_eq!(t.order(), g.order(), "{t}");
        match t {
            GroupType::Cyclic(_) | GroupType::Dihedral(_) => {}
            _ => assert!([12, 24, 60].contains(&g.order()), "{t}"),
        }
        let sizes: Vec<usize> = g.classes().iter().map(Vec::len).collect();
        assert_eq!(sizes.iter().sum::<usize>(), g.order());
        assert!(sizes.iter().all(|s| g.order() % s == 0));
    }
}

#[test]
fn tables_are_orthogonal_up_to_thirty() {
    let mut types: Vec<GroupType> = (1..=30).map(GroupType::Cyclic).chain((2..=30).map(GroupType::Dihedral)).collect();
    types.extend([GroupType::A4, GroupType::S4, GroupType::A5]);
    for t in types {
        let table = character_table(t);
        table.check_orthogonality().unwrap_or_else(|e| panic!("{t}: {e}"));
        assert_eq!(table.class_sizes.iter().sum::<usize>(), t.order(), "{t}");
        assert_eq!(table.degrees.iter().map(|d| d * d).sum::<usize>(), t.order(), "{t}");
    }
}

#[test]
fn published_decompositions_verify() {
    for p in FAMILY_PRESETS {
        let failed: Vec<_> = verify_preset(p).into_iter().filter(|a| !a.passed).collect();
        assert!(failed.is_empty(), "{p}: {failed:#?}");
    }
}
