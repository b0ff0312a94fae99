//! Independent oracles and property tests.

#![allow(clippy::needless_range_loop)]

use std::collections::BTreeMap;

use adesurf::cox::{self, SurfaceConfigD};
use adesurf::curves::{self, CurveKind};
use adesurf::flag;
use adesurf::linalg;
use adesurf::roots::{all_roots, reflect, RootSystemData};
use adesurf::weights::{
    decompose_sym2, freudenthal, inner_product, line_weight_multiset, reflect_weight,
    ruling_weight_multiset, weight_of, weyl_dim, WeightMultiset, WeightVector,
};
use adesurf::{
    BigInt, BigRational, BigUint, DivisorClass, IntersectionLattice, Kind, SurfaceFamily,
};
use proptest::prelude::*;
use proptest::sample::select;

fn lattice(kind: Kind, n: usize) -> IntersectionLattice {
    IntersectionLattice::build(SurfaceFamily::new(kind, n).unwrap()).unwrap()
}

fn roots(kind: Kind, n: usize) -> RootSystemData {
    RootSystemData::new(&lattice(kind, n)).unwrap()
}

fn all_families() -> Vec<(Kind, usize)> {
    let mut v: Vec<(Kind, usize)> = (1..=6).map(|n| (Kind::A, n)).collect();
    v.extend((2..=7).map(|n| (Kind::D, n)));
    v.extend((3..=8).map(|n| (Kind::E, n)));
    v
}

fn raw_pair(gram: &[Vec<i64>], a: &[i64], b: &[i64]) -> i64 {
    let mut s = 0;
    for i in 0..a.len() {
        for j in 0..b.len() {
            s += a[i] * gram[i][j] * b[j];
        }
    }
    s
}

/// Box search straight from the Gram matrix.
fn box_search(
    lat: &IntersectionLattice,
    square: i64,
    dot_k: i64,
    radius: i64,
) -> Vec<DivisorClass> {
    let gram = lat.gram();
    let k = lat.canonical().coords().to_vec();
    let c = lat.marking().coords().to_vec();
    let r = lat.rank();
    let mut out = Vec::new();
    let width = (2 * radius + 1) as usize;
    let total = width.pow(r as u32);
    for mut code in 0..total {
        let mut v = Vec::with_capacity(r);
        for _ in 0..r {
            v.push((code % width) as i64 - radius);
            code /= width;
        }
        if raw_pair(gram, &v, &v) == square
            && raw_pair(gram, &v, &k) == dot_k
            && raw_pair(gram, &v, &c) == 0
        {
            out.push(DivisorClass::new(v));
        }
    }
    out.sort();
    out
}

#[test]
fn enumeration_matches_doubled_box_search() {
    let small = [
        (Kind::A, 1),
        (Kind::A, 2),
        (Kind::A, 3),
        (Kind::A, 4),
        (Kind::D, 2),
        (Kind::D, 3),
        (Kind::D, 4),
        (Kind::E, 3),
        (Kind::E, 4),
    ];
    for (kind, n) in small {
        let lat = lattice(kind, n);
        for (ck, q, p) in [
            (CurveKind::Roots, -2, 0),
            (CurveKind::Lines, -1, -1),
            (CurveKind::Rulings, 0, -2),
        ] {
            let found = curves::enumerate(&lat, ck);
            let bound = found
                .iter()
                .flat_map(|d| d.coords().iter().map(|x| x.abs()))
                .max()
                .unwrap_or(0)
                .max(1);
            let radius = (2 * bound).max(adesurf::selftest::doubled_radius(&lat, ck));
            let naive = box_search(&lat, q, p, radius);
            assert_eq!(found.classes(), naive.as_slice(), "{kind}{n} {ck}");
        }
    }
}

#[test]
fn small_counts_match_closed_forms() {
    for n in 1..=5 {
        let lat = lattice(Kind::A, n);
        assert_eq!(curves::enumerate_roots(&lat).len(), n * (n + 1));
    }
    for n in 3..=6 {
        let lat = lattice(Kind::D, n);
        assert_eq!(curves::enumerate_roots(&lat).len(), 2 * n * (n - 1));
    }
}

/// Symmetric square by listing unordered pairs of basis vectors.
fn explicit_sym2(weights: &[WeightVector]) -> BTreeMap<WeightVector, u64> {
    let mut out = BTreeMap::new();
    for i in 0..weights.len() {
        for j in i..weights.len() {
            *out.entry(weights[i].plus(&weights[j])).or_insert(0) += 1;
        }
    }
    out
}

fn as_map(m: &WeightMultiset) -> BTreeMap<WeightVector, u64> {
    m.iter().map(|(w, k)| (w.clone(), k)).collect()
}

#[test]
fn freudenthal_matches_sym2_of_defining_module() {
    for (kind, n) in [(Kind::A, 1), (Kind::A, 2), (Kind::A, 3), (Kind::D, 3)] {
        let rs = roots(kind, n);
        let lines = curves::enumerate_lines(rs.lattice());
        let weights: Vec<WeightVector> = lines.iter().map(|l| weight_of(&rs, l)).collect();
        let top = weights
            .iter()
            .find(|w| w.is_dominant() && !w.is_zero())
            .unwrap();
        let mut expected = explicit_sym2(&weights);
        if kind == Kind::D {
            let zero = WeightVector::zero(rs.rank());
            let m = expected.get_mut(&zero).unwrap();
            *m -= 1;
            if *m == 0 {
                expected.remove(&zero);
            }
        }
        let v = freudenthal(&rs, &top.scaled(2)).unwrap();
        assert_eq!(as_map(&v), expected, "{kind}{n}");
        let dim = weights.len() as u64;
        let trivial = u64::from(kind == Kind::D);
        assert_eq!(v.total(), dim * (dim + 1) / 2 - trivial);
    }
}

#[test]
fn d3_is_a3() {
    let d3 = roots(Kind::D, 3);
    assert_eq!(d3.type_label().to_string(), "A3");
    let a3 = roots(Kind::A, 3);
    let perms = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let iso = perms
        .iter()
        .any(|p| (0..3).all(|i| (0..3).all(|j| d3.cartan()[p[i]][p[j]] == a3.cartan()[i][j])));
    assert!(iso);
}

#[test]
fn rho_norm_matches_coxeter_number() {
    // For simply laced g: <rho, rho> = h (h + 1) r / 12.
    let cases = [
        (Kind::A, 3, 4),
        (Kind::A, 6, 7),
        (Kind::D, 4, 6),
        (Kind::D, 6, 10),
        (Kind::E, 6, 12),
        (Kind::E, 7, 18),
        (Kind::E, 8, 30),
    ];
    for (kind, n, h) in cases {
        let rs = roots(kind, n);
        let r = rs.rank() as i64;
        let rho = WeightVector::new(vec![1; rs.rank()]);
        let got = inner_product(&rs, &rho, &rho).unwrap();
        assert_eq!(
            got,
            BigRational::new((h * (h + 1) * r).into(), 12.into()),
            "{kind}{n}"
        );
    }
}

#[test]
fn lie_algebra_dimensions() {
    // Positive roots plus rank, and the adjoint is the highest root's module.
    for (kind, n, dim) in [
        (Kind::E, 6, 78u64),
        (Kind::E, 7, 133),
        (Kind::E, 8, 248),
        (Kind::D, 5, 45),
    ] {
        let rs = roots(kind, n);
        assert_eq!((2 * rs.positive_roots().len() + rs.rank()) as u64, dim);
        let highest = rs.positive_roots().last().unwrap();
        let theta = weight_of(&rs, &-highest);
        let theta = if theta.is_dominant() {
            theta
        } else {
            weight_of(&rs, highest)
        };
        assert_eq!(weyl_dim(&rs, &theta).unwrap(), BigUint::from(dim));
    }
}

fn rational(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

fn distinct_points(n: usize) -> impl Strategy<Value = Vec<BigRational>> {
    proptest::collection::btree_set((-40i64..40, 1i64..5), n..=n)
        .prop_map(|s| {
            s.into_iter()
                .map(|(p, q)| rational(p, q))
                .collect::<Vec<_>>()
        })
        .prop_filter("distinct values", |v| {
            let mut w = v.clone();
            w.sort();
            w.dedup();
            w.len() == v.len()
        })
        .prop_shuffle()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reflections_are_isometries(
        fam in select(all_families()),
        pick in any::<prop::sample::Index>(),
        x in proptest::collection::vec(-8i64..=8, 10),
        y in proptest::collection::vec(-8i64..=8, 10),
    ) {
        let rs = roots(fam.0, fam.1);
        let lat = rs.lattice();
        let r = lat.rank();
        let all = all_roots(&rs);
        prop_assume!(!all.is_empty());
        let alpha = &all.classes()[pick.index(all.len())];
        let x = DivisorClass::new(x[..r].to_vec());
        let y = DivisorClass::new(y[..r].to_vec());
        let sx = reflect(lat, &x, alpha).unwrap();
        let sy = reflect(lat, &y, alpha).unwrap();
        prop_assert_eq!(raw_pair(lat.gram(), sx.coords(), sy.coords()), raw_pair(lat.gram(), x.coords(), y.coords()));
        prop_assert_eq!(&reflect(lat, &sx, alpha).unwrap(), &x);
        prop_assert_eq!(lat.pair(&sx, lat.canonical()).unwrap(), lat.pair(&x, lat.canonical()).unwrap());
    }

    #[test]
    fn weights_commute_with_reflections(
        fam in select(all_families()),
        node in any::<prop::sample::Index>(),
        x in proptest::collection::vec(-8i64..=8, 10),
    ) {
        let rs = roots(fam.0, fam.1);
        let lat = rs.lattice();
        let i = node.index(rs.rank());
        let x = DivisorClass::new(x[..lat.rank()].to_vec());
        let sx = reflect(lat, &x, &rs.simple_roots()[i]).unwrap();
        prop_assert_eq!(weight_of(&rs, &sx), reflect_weight(&rs, &weight_of(&rs, &x), i));
    }

    #[test]
    fn characters_are_weyl_invariant(fam in select(all_families()), node in any::<prop::sample::Index>()) {
        let rs = roots(fam.0, fam.1);
        let i = node.index(rs.rank());
        let d = decompose_sym2(&rs).unwrap();
        for m in [line_weight_multiset(&rs), ruling_weight_multiset(&rs), d.sym2, d.v_part, d.w_part] {
            for (w, k) in m.iter() {
                prop_assert_eq!(m.multiplicity(&reflect_weight(&rs, w, i)), k);
            }
        }
    }

    #[test]
    fn freudenthal_total_is_weyl_dimension(
        fam in select(vec![(Kind::A, 2), (Kind::A, 3), (Kind::D, 4), (Kind::E, 3), (Kind::D, 2)]),
        labels in proptest::collection::vec(0i64..=2, 4),
    ) {
        let rs = roots(fam.0, fam.1);
        let lambda = WeightVector::new(labels[..rs.rank()].to_vec());
        let m = freudenthal(&rs, &lambda).unwrap();
        prop_assert_eq!(BigUint::from(m.total()), weyl_dim(&rs, &lambda).unwrap());
        prop_assert_eq!(m.multiplicity(&lambda), 1);
    }

    #[test]
    fn dn_relations_vanish_on_the_pencil(pts in (3usize..=6).prop_flat_map(distinct_points)) {
        // x_j y_j is the section u - t_j v of f.
        let n = pts.len();
        let lat = lattice(Kind::D, n);
        let cfg = SurfaceConfigD::new(pts.clone()).unwrap();
        let p = cox::dn_ideal(&lat, &cfg).unwrap();
        prop_assert_eq!(p.relations.len(), n - 2);
        for rel in &p.relations {
            let mut u = BigRational::from_integer(0.into());
            let mut v = u.clone();
            for term in &rel.terms {
                prop_assert!(term.coeff != BigRational::from_integer(0.into()));
                let j = term.monomial[0];
                u += &term.coeff;
                v -= &term.coeff * &pts[j];
            }
            prop_assert_eq!(u, BigRational::from_integer(0.into()));
            prop_assert_eq!(v, BigRational::from_integer(0.into()));
        }
    }

    #[test]
    fn embedding_is_certified(pts in (3usize..=6).prop_flat_map(distinct_points)) {
        let n = pts.len();
        let rs = roots(Kind::D, n);
        let cfg = SurfaceConfigD::new(pts).unwrap();
        let e = flag::embed_cox_into_cone_d(&rs, &cfg).unwrap();
        prop_assert!(e.conditions_hold(&cfg));
        prop_assert!(e.certified());
        prop_assert!(e.system.is_homogeneous());
    }

    #[test]
    fn d_sections_count_quotient_monomials(
        n in 3usize..=4,
        a in 0i64..=3,
        c in proptest::collection::vec(-2i64..=2, 4),
    ) {
        let lat = lattice(Kind::D, n);
        let mut coords = vec![a, 0];
        coords.extend_from_slice(&c[..n]);
        let d = DivisorClass::new(coords);
        let p = cox::dn_ideal(&lat, &SurfaceConfigD::consecutive(n)).unwrap();
        prop_assert_eq!(cox::graded_piece_dim(&p, &lat, &d).unwrap(), cox::section_dim(&lat, &d).unwrap());
    }

    #[test]
    fn determinant_matches_cofactor_expansion(m in proptest::collection::vec(proptest::collection::vec(-5i64..=5, 4), 4)) {
        fn laplace(m: &[Vec<i64>]) -> i64 {
            if m.len() == 1 {
                return m[0][0];
            }
            (0..m.len())
                .map(|j| {
                    let minor: Vec<Vec<i64>> = m[1..]
                        .iter()
                        .map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &x)| x).collect())
                        .collect();
                    let sign = if j % 2 == 0 { 1 } else { -1 };
                    sign * m[0][j] * laplace(&minor)
                })
                .sum()
        }
        let det = laplace(&m);
        prop_assert_eq!(linalg::determinant(&m), BigInt::from(det));
        let rows: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        prop_assert_eq!(linalg::rank(&rows) == 4, det != 0);
        if let Some(inv) = linalg::inverse(&m) {
            for i in 0..4 {
                for j in 0..4 {
                    let s: BigRational = (0..4).map(|k| BigRational::from_integer(m[i][k].into()) * &inv[k][j]).sum();
                    prop_assert_eq!(s, BigRational::from_integer(i64::from(i == j).into()));
                }
            }
        } else {
            prop_assert_eq!(det, 0);
        }
    }
}
