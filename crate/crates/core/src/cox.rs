//! Cox rings graded by `Pic(S)`, restricted to classes with `D.C = 0`.
//!
//! The D-family ring is presented explicitly by quadrics; for the E-family
//! only relation counts are available.

use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::curves::{enumerate_lines, enumerate_rulings, pairs_of_lines_summing_to, ClassSet};
use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, IntersectionLattice, Kind};
use crate::linalg;
use crate::roots::RootSystemData;
use crate::weights::{weight_of, WeightVector};

/// Default cap on the number of monomials enumerated per degree.
pub const DEFAULT_MONOMIAL_CAP: usize = 2_000_000;

/// Positions `t_1, ..., t_n` of the reducible fibres on the base line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceConfigD {
    points: Vec<BigRational>,
}

impl SurfaceConfigD {
    pub fn new(points: Vec<BigRational>) -> Result<Self> {
        for (i, p) in points.iter().enumerate() {
            if points[..i].contains(p) {
                return Err(Error::RepeatedPoints);
            }
        }
        Ok(SurfaceConfigD { points })
    }

    /// The points `0, 1, ..., n-1`.
    pub fn consecutive(n: usize) -> Self {
        SurfaceConfigD {
            points: (0..n as i64)
                .map(|i| BigRational::from_integer(i.into()))
                .collect(),
        }
    }

    pub fn points(&self) -> &[BigRational] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub class: DivisorClass,
    pub degree: i64,
}

/// A coefficient times a monomial, the monomial stored as a sorted list of
/// generator indices (with repetition).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub coeff: BigRational,
    pub monomial: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub class: DivisorClass,
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxPresentation {
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
}

impl CoxPresentation {
    pub fn free(generators: Vec<Generator>) -> Self {
        CoxPresentation {
            generators,
            relations: Vec::new(),
        }
    }

    pub fn monomial_class(&self, monomial: &[usize]) -> DivisorClass {
        let rank = self.generators.first().map_or(0, |g| g.class.len());
        monomial.iter().fold(DivisorClass::zero(rank), |acc, &i| {
            &acc + &self.generators[i].class
        })
    }

    /// Every generator has degree one, every relation is homogeneous for its
    /// class and has only nonzero coefficients.
    pub fn is_well_formed(&self, lat: &IntersectionLattice) -> bool {
        let gens_ok = self
            .generators
            .iter()
            .all(|g| g.degree == 1 && lat.degree(&g.class).ok() == Some(1));
        let rels_ok = self.relations.iter().all(|r| {
            !r.terms.is_empty()
                && r.terms
                    .iter()
                    .all(|t| !t.coeff.is_zero() && self.monomial_class(&t.monomial) == r.class)
        });
        gens_ok && rels_ok
    }

    /// Every monomial of every relation has the same torus weight.
    pub fn is_weight_homogeneous(&self, rs: &RootSystemData) -> bool {
        self.relations.iter().all(|r| {
            let weights: Vec<WeightVector> = r
                .terms
                .iter()
                .map(|t| weight_of(rs, &self.monomial_class(&t.monomial)))
                .collect();
            weights.windows(2).all(|w| w[0] == w[1])
        })
    }
}

/// Degree-one generators: the lines, plus two sections of `-K + C` on the
/// E8 surface.
pub fn cox_generators(lat: &IntersectionLattice) -> Vec<Generator> {
    let n = lat.family().n();
    let gen = |name: String, class: DivisorClass| Generator {
        name,
        class,
        degree: 1,
    };
    match lat.family().kind() {
        Kind::A => (1..=n + 1)
            .map(|i| gen(format!("x{i}"), lat.exceptional(i)))
            .collect(),
        Kind::D => {
            let f = lat.basis("f").expect("D lattice has f");
            let mut out: Vec<Generator> = (1..=n)
                .map(|i| gen(format!("x{i}"), lat.exceptional(i)))
                .collect();
            out.extend((1..=n).map(|i| gen(format!("y{i}"), &f - &lat.exceptional(i))));
            out
        }
        Kind::E => {
            let lines = enumerate_lines(lat);
            let mut out: Vec<Generator> = lines
                .iter()
                .enumerate()
                .map(|(i, l)| gen(format!("e{}", i + 1), l.clone()))
                .collect();
            if n == 8 {
                let k = lat.anticanonical_pullback();
                out.push(gen("k1".into(), k.clone()));
                out.push(gen("k2".into(), k));
            }
            out
        }
    }
}

fn require_orthogonal(lat: &IntersectionLattice, d: &DivisorClass) -> Result<()> {
    if lat.pair(d, lat.marking())? != 0 {
        return Err(Error::NotOrthogonalToMarking(lat.format_class(d)));
    }
    Ok(())
}

/// `dim H^0(S, O(D))` for `D.C = 0`.
///
/// A-family: 1 when every `l_i` coefficient is nonnegative. D-family: with
/// `D = a f + sum c_i l_i` and `a0 = a - sum_{c_i < 0} |c_i|`, the dimension
/// is `a0 + 1` (or 0). E-family: Riemann-Roch `1 + (D^2 - D.K)/2` on the
/// classes where higher cohomology vanishes: 0, lines, rulings, `-K+C`
/// (E7, E8) and `-2K+2C` (E8).
pub fn section_dim(lat: &IntersectionLattice, d: &DivisorClass) -> Result<u64> {
    require_orthogonal(lat, d)?;
    let n = lat.family().n();
    match lat.family().kind() {
        Kind::A => Ok(u64::from(d.coords()[1..].iter().all(|&c| c >= 0))),
        Kind::D => {
            let c = d.coords();
            let a0 = c[0] - c[2..].iter().filter(|&&x| x < 0).map(|x| -x).sum::<i64>();
            Ok(if a0 >= 0 { a0 as u64 + 1 } else { 0 })
        }
        Kind::E => {
            let anti = lat.anticanonical_pullback();
            let supported = d.is_zero()
                || crate::curves::satisfies(lat, d, crate::curves::CurveKind::Lines)
                || crate::curves::satisfies(lat, d, crate::curves::CurveKind::Rulings)
                || (n >= 7 && *d == anti)
                || (n == 8 && *d == anti.scaled(2));
            if !supported {
                return Err(Error::UnsupportedClass(lat.format_class(d)));
            }
            let chi = 1 + (lat.square(d)? - lat.pair(d, lat.canonical())?) / 2;
            Ok(chi as u64)
        }
    }
}

/// The quadric ideal of the D-family Cox ring for fibres over `t_1..t_n`.
///
/// Relation `i` (for `3 <= i <= n`) is
/// `(t2 - ti) x1 y1 + (ti - t1) x2 y2 + (t1 - t2) xi yi`: with
/// `x_j y_j = u - t_j v` in the two-dimensional space of sections of `f`,
/// this is the linear dependence among three of them.
pub fn dn_ideal(lat: &IntersectionLattice, cfg: &SurfaceConfigD) -> Result<CoxPresentation> {
    let fam = lat.family();
    if fam.kind() != Kind::D {
        return Err(Error::WrongFamily {
            expected: "D-family".into(),
            got: fam.to_string(),
        });
    }
    let n = fam.n();
    let generators = cox_generators(lat);
    if n < 3 {
        return Ok(CoxPresentation::free(generators));
    }
    if cfg.len() != n {
        return Err(Error::PointCount {
            expected: n,
            got: cfg.len(),
        });
    }
    let t = cfg.points();
    let f = lat.basis("f")?;
    let pair = |j: usize| vec![j, n + j];
    let relations = (2..n)
        .map(|i| Relation {
            class: f.clone(),
            terms: vec![
                Term {
                    coeff: &t[1] - &t[i],
                    monomial: pair(0),
                },
                Term {
                    coeff: &t[i] - &t[0],
                    monomial: pair(1),
                },
                Term {
                    coeff: &t[0] - &t[1],
                    monomial: pair(i),
                },
            ],
        })
        .collect();
    Ok(CoxPresentation {
        generators,
        relations,
    })
}

/// Presentation for the families where it is known explicitly: the free
/// polynomial ring for A (and D2), the quadric ideal for D (n >= 3).
pub fn presentation(
    lat: &IntersectionLattice,
    cfg: Option<&SurfaceConfigD>,
) -> Result<CoxPresentation> {
    let fam = lat.family();
    match fam.kind() {
        Kind::A => Ok(CoxPresentation::free(cox_generators(lat))),
        Kind::D if fam.n() < 3 => Ok(CoxPresentation::free(cox_generators(lat))),
        Kind::D => {
            let default = SurfaceConfigD::consecutive(fam.n());
            dn_ideal(lat, cfg.unwrap_or(&default))
        }
        Kind::E => Err(Error::WrongFamily {
            expected: "A- or D-family presentation".into(),
            got: fam.to_string(),
        }),
    }
}

/// Monomials of a fixed total degree, bucketed by class.
#[derive(Debug, Default)]
struct MonomialTable {
    by_degree: BTreeMap<i64, HashMap<DivisorClass, Vec<Vec<usize>>>>,
}

impl MonomialTable {
    fn ensure(&mut self, pres: &CoxPresentation, degree: i64, cap: usize) -> Result<()> {
        if self.by_degree.contains_key(&degree) {
            return Ok(());
        }
        let mut buckets: HashMap<DivisorClass, Vec<Vec<usize>>> = HashMap::new();
        if degree >= 0 {
            let mut count = 0usize;
            let mut buf = Vec::new();
            let rank = pres.generators.first().map_or(0, |g| g.class.len());
            walk(
                pres,
                degree as usize,
                0,
                DivisorClass::zero(rank),
                &mut buf,
                &mut |m, c| {
                    count += 1;
                    if count > cap {
                        return false;
                    }
                    buckets.entry(c.clone()).or_default().push(m.to_vec());
                    true
                },
            );
            if count > cap {
                return Err(Error::EnumerationOverflow(cap));
            }
        }
        self.by_degree.insert(degree, buckets);
        Ok(())
    }

    fn get(&self, degree: i64, class: &DivisorClass) -> &[Vec<usize>] {
        self.by_degree
            .get(&degree)
            .and_then(|b| b.get(class))
            .map_or(&[], |v| v.as_slice())
    }
}

fn walk(
    pres: &CoxPresentation,
    remaining: usize,
    start: usize,
    class: DivisorClass,
    buf: &mut Vec<usize>,
    visit: &mut dyn FnMut(&[usize], &DivisorClass) -> bool,
) -> bool {
    if remaining == 0 {
        return visit(buf, &class);
    }
    for i in start..pres.generators.len() {
        buf.push(i);
        let next = &class + &pres.generators[i].class;
        let keep_going = walk(pres, remaining - 1, i, next, buf, visit);
        buf.pop();
        if !keep_going {
            return false;
        }
    }
    true
}

fn merge(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut v = Vec::with_capacity(a.len() + b.len());
    v.extend_from_slice(a);
    v.extend_from_slice(b);
    v.sort_unstable();
    v
}

/// Monomial basis of one graded piece of the polynomial ring and the
/// (relation x monomial) products landing in it, as coefficient rows.
#[derive(Debug, Clone)]
pub struct ClassPiece {
    pub monomials: Vec<Vec<usize>>,
    pub rows: Vec<Vec<BigRational>>,
}

impl ClassPiece {
    pub fn quotient_dim(&self) -> u64 {
        (self.monomials.len() - linalg::rank_rational(&self.rows)) as u64
    }

    /// Coefficient row of a polynomial whose monomials lie in this piece.
    pub fn row_of(&self, terms: &[Term]) -> Result<Vec<BigRational>> {
        let mut row = vec![BigRational::zero(); self.monomials.len()];
        for term in terms {
            let mut m = term.monomial.clone();
            m.sort_unstable();
            let col = self
                .monomials
                .iter()
                .position(|b| *b == m)
                .ok_or_else(|| Error::Internal("monomial outside the graded piece".into()))?;
            row[col] += &term.coeff;
        }
        Ok(row)
    }
}

fn piece(
    pres: &CoxPresentation,
    table: &mut MonomialTable,
    class: &DivisorClass,
    degree: i64,
    cap: usize,
) -> Result<ClassPiece> {
    table.ensure(pres, degree, cap)?;
    let monomials = table.get(degree, class).to_vec();
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    if monomials.is_empty() {
        return Ok(ClassPiece { monomials, rows });
    }
    let column: HashMap<&[usize], usize> = monomials
        .iter()
        .enumerate()
        .map(|(i, m)| (m.as_slice(), i))
        .collect();
    for rel in &pres.relations {
        let rel_degree = rel.terms[0].monomial.len() as i64;
        let cofactor_degree = degree - rel_degree;
        if cofactor_degree < 0 {
            continue;
        }
        table.ensure(pres, cofactor_degree, cap)?;
        for m in table.get(cofactor_degree, &(class - &rel.class)) {
            let mut row = vec![BigRational::zero(); monomials.len()];
            for term in &rel.terms {
                let product = merge(&term.monomial, m);
                let col = column.get(product.as_slice()).ok_or_else(|| {
                    Error::Internal("relation product left its graded piece".into())
                })?;
                row[*col] += &term.coeff;
            }
            rows.push(row);
        }
    }
    Ok(ClassPiece { monomials, rows })
}

fn piece_dim(
    pres: &CoxPresentation,
    table: &mut MonomialTable,
    class: &DivisorClass,
    degree: i64,
    cap: usize,
) -> Result<u64> {
    Ok(piece(pres, table, class, degree, cap)?.quotient_dim())
}

/// The class-`D` piece of the polynomial ring on the generators.
pub fn class_piece(
    pres: &CoxPresentation,
    lat: &IntersectionLattice,
    d: &DivisorClass,
) -> Result<ClassPiece> {
    require_orthogonal(lat, d)?;
    let degree = lat.degree(d)?;
    piece(
        pres,
        &mut MonomialTable::default(),
        d,
        degree,
        DEFAULT_MONOMIAL_CAP,
    )
}

/// Dimension of the class-`D` piece of the quotient ring: monomials of class
/// `D` minus the rank of all (relation x monomial) products landing there.
pub fn graded_piece_dim(
    pres: &CoxPresentation,
    lat: &IntersectionLattice,
    d: &DivisorClass,
) -> Result<u64> {
    graded_piece_dim_capped(pres, lat, d, DEFAULT_MONOMIAL_CAP)
}

pub fn graded_piece_dim_capped(
    pres: &CoxPresentation,
    lat: &IntersectionLattice,
    d: &DivisorClass,
    cap: usize,
) -> Result<u64> {
    require_orthogonal(lat, d)?;
    let degree = lat.degree(d)?;
    let mut table = MonomialTable::default();
    piece_dim(pres, &mut table, d, degree, cap)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertEntry {
    pub class: DivisorClass,
    pub degree: i64,
    pub graded: u64,
    pub sections: u64,
}

impl HilbertEntry {
    pub fn agrees(&self) -> bool {
        self.graded == self.sections
    }
}

#[derive(Debug, Clone)]
pub struct HilbertReport {
    pub max_degree: i64,
    pub entries: Vec<HilbertEntry>,
}

impl HilbertReport {
    pub fn mismatches(&self) -> Vec<&HilbertEntry> {
        self.entries.iter().filter(|e| !e.agrees()).collect()
    }

    pub fn passes(&self) -> bool {
        self.entries.iter().all(HilbertEntry::agrees)
    }
}

/// Compares the quotient-ring dimension with `section_dim` on every class of
/// degree at most `max_degree` that is a sum of generator classes.
pub fn verify_hilbert(
    pres: &CoxPresentation,
    lat: &IntersectionLattice,
    max_degree: i64,
) -> Result<HilbertReport> {
    let mut table = MonomialTable::default();
    let mut entries = Vec::new();
    for degree in 0..=max_degree.max(-1) {
        table.ensure(pres, degree, DEFAULT_MONOMIAL_CAP)?;
        let mut classes: Vec<DivisorClass> = table.by_degree[&degree].keys().cloned().collect();
        classes.sort();
        for class in classes {
            let graded = piece_dim(pres, &mut table, &class, degree, DEFAULT_MONOMIAL_CAP)?;
            let sections = section_dim(lat, &class)?;
            entries.push(HilbertEntry {
                class,
                degree,
                graded,
                sections,
            });
        }
    }
    Ok(HilbertReport {
        max_degree,
        entries,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Census {
    pub monomials: u64,
    pub sections: u64,
    pub relations: u64,
}

/// Degree-two relation count at `target`: quadratic monomials of that class
/// minus the dimension of its sections.
pub fn relation_census(
    lat: &IntersectionLattice,
    target: &DivisorClass,
    lines: &ClassSet,
) -> Result<Census> {
    let fam = lat.family();
    let anti = lat.anticanonical_pullback();
    let is_ruling = crate::curves::satisfies(lat, target, crate::curves::CurveKind::Rulings);
    let extra = match (fam.kind(), fam.n()) {
        _ if is_ruling => 0,
        (Kind::E, 7) if *target == anti => 0,
        (Kind::E, 8) if *target == anti.scaled(2) => 3,
        _ => return Err(Error::UnsupportedTarget(lat.format_class(target))),
    };
    let monomials = pairs_of_lines_summing_to(target, lines) as u64 + extra;
    let sections = section_dim(lat, target)?;
    let relations = monomials.checked_sub(sections).ok_or_else(|| {
        Error::Internal(format!(
            "more sections than monomials at {}",
            lat.format_class(target)
        ))
    })?;
    Ok(Census {
        monomials,
        sections,
        relations,
    })
}

/// Census at every ruling, in ruling order.
pub fn ruling_census(lat: &IntersectionLattice) -> Result<Vec<(DivisorClass, Census)>> {
    let lines = enumerate_lines(lat);
    enumerate_rulings(lat)
        .iter()
        .map(|r| Ok((r.clone(), relation_census(lat, r, &lines)?)))
        .collect()
}

/// Characters of the Neron-Severi torus modulo `C` and of the maximal torus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorusCharacter {
    /// `D` modulo `ZC`: the coordinates with the `C` coordinate removed.
    pub modulo_marking: Vec<i64>,
    pub weight: WeightVector,
}

pub fn torus_character(rs: &RootSystemData, d: &DivisorClass) -> Result<TorusCharacter> {
    let lat = rs.lattice();
    lat.pair(d, d)?;
    let idx = lat
        .marking_index()
        .ok_or_else(|| Error::Internal("marking class is not a basis vector".into()))?;
    let modulo_marking = d
        .coords()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != idx)
        .map(|(_, &x)| x)
        .collect();
    Ok(TorusCharacter {
        modulo_marking,
        weight: weight_of(rs, d),
    })
}

fn check_linearization(lat: &IntersectionLattice, lin: &DivisorClass) -> Result<()> {
    require_orthogonal(lat, lin)?;
    let ok = match lat.family().kind() {
        Kind::D => lin == lat.marking(),
        Kind::A => enumerate_lines(lat).contains(lin),
        Kind::E => false,
    };
    if !ok {
        return Err(Error::UnsupportedClass(format!(
            "linearization {} on {}",
            lat.format_class(lin),
            lat.family()
        )));
    }
    Ok(())
}

/// Hilbert function `k -> dim H^0(k L)` along the linearization ray, for
/// `k = 0..=max_k`: the f-ray on D-surfaces, a line ray on A-surfaces.
pub fn git_hilbert(
    lat: &IntersectionLattice,
    lin: &DivisorClass,
    max_k: usize,
) -> Result<Vec<u64>> {
    check_linearization(lat, lin)?;
    (0..=max_k as i64)
        .map(|k| section_dim(lat, &lin.scaled(k)))
        .collect()
}

/// The same Hilbert function read off the quotient ring.
pub fn git_hilbert_from_presentation(
    pres: &CoxPresentation,
    lat: &IntersectionLattice,
    lin: &DivisorClass,
    max_k: usize,
) -> Result<Vec<u64>> {
    check_linearization(lat, lin)?;
    let mut table = MonomialTable::default();
    (0..=max_k as i64)
        .map(|k| {
            let d = lin.scaled(k);
            let degree = lat.degree(&d)?;
            piece_dim(pres, &mut table, &d, degree, DEFAULT_MONOMIAL_CAP)
        })
        .collect()
}

pub(crate) fn rational(p: i64) -> BigRational {
    if p == 1 {
        BigRational::one()
    } else {
        BigRational::from_integer(p.into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::SurfaceFamily;

    fn lattice(kind: Kind, n: usize) -> IntersectionLattice {
        IntersectionLattice::build(SurfaceFamily::new(kind, n).unwrap()).unwrap()
    }

    fn coeffs(rel: &Relation) -> Vec<BigRational> {
        rel.terms.iter().map(|t| t.coeff.clone()).collect()
    }

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| rational(x)).collect()
    }

    #[test]
    fn generator_counts() {
        assert_eq!(cox_generators(&lattice(Kind::A, 3)).len(), 4);
        assert_eq!(cox_generators(&lattice(Kind::D, 5)).len(), 10);
        assert_eq!(cox_generators(&lattice(Kind::E, 6)).len(), 27);
        assert_eq!(cox_generators(&lattice(Kind::E, 8)).len(), 242);
    }

    #[test]
    fn section_dims() {
        let d4 = lattice(Kind::D, 4);
        let d = d4.class(&[("f", 2), ("l1", 3)]).unwrap();
        assert_eq!(section_dim(&d4, &d).unwrap(), 3);
        let d = d4.class(&[("f", 1), ("l1", -2)]).unwrap();
        assert_eq!(section_dim(&d4, &d).unwrap(), 0);

        let e7 = lattice(Kind::E, 7);
        assert_eq!(section_dim(&e7, &e7.anticanonical_pullback()).unwrap(), 3);
        let e8 = lattice(Kind::E, 8);
        let k = e8.anticanonical_pullback();
        assert_eq!(section_dim(&e8, &k).unwrap(), 2);
        assert_eq!(section_dim(&e8, &k.scaled(2)).unwrap(), 4);
        let unsupported = e8.class(&[("h", 2)]).unwrap();
        assert!(matches!(
            section_dim(&e8, &unsupported),
            Err(Error::UnsupportedClass(_))
        ));
        let s = d4.basis("s").unwrap();
        assert!(matches!(
            section_dim(&d4, &s),
            Err(Error::NotOrthogonalToMarking(_))
        ));
    }

    #[test]
    fn dn_ideal_coefficients() {
        let d3 = lattice(Kind::D, 3);
        let p = dn_ideal(&d3, &SurfaceConfigD::consecutive(3)).unwrap();
        assert_eq!(p.relations.len(), 1);
        assert_eq!(coeffs(&p.relations[0]), ints(&[-1, 2, -1]));
        assert!(p.is_well_formed(&d3));

        let d4 = lattice(Kind::D, 4);
        let p = dn_ideal(&d4, &SurfaceConfigD::consecutive(4)).unwrap();
        assert_eq!(p.relations.len(), 2);
        assert_eq!(coeffs(&p.relations[0]), ints(&[-1, 2, -1]));
        assert_eq!(coeffs(&p.relations[1]), ints(&[-2, 3, -1]));
        let f = d4.basis("f").unwrap();
        assert!(p.relations.iter().all(|r| r.class == f));
    }

    #[test]
    fn dn_ideal_errors() {
        let t = |v: &[i64]| v.iter().map(|&x| rational(x)).collect::<Vec<_>>();
        assert_eq!(
            SurfaceConfigD::new(t(&[0, 1, 1])),
            Err(Error::RepeatedPoints)
        );
        let d4 = lattice(Kind::D, 4);
        let cfg = SurfaceConfigD::new(t(&[0, 1, 2])).unwrap();
        assert!(matches!(dn_ideal(&d4, &cfg), Err(Error::PointCount { .. })));
        let d2 = lattice(Kind::D, 2);
        assert!(dn_ideal(&d2, &SurfaceConfigD::consecutive(2))
            .unwrap()
            .relations
            .is_empty());
        assert!(matches!(
            dn_ideal(&lattice(Kind::E, 6), &cfg),
            Err(Error::WrongFamily { .. })
        ));
    }

    #[test]
    fn graded_pieces() {
        let d3 = lattice(Kind::D, 3);
        let p = dn_ideal(&d3, &SurfaceConfigD::consecutive(3)).unwrap();
        assert_eq!(
            graded_piece_dim(&p, &d3, &d3.basis("f").unwrap()).unwrap(),
            2
        );

        let d4 = lattice(Kind::D, 4);
        let p = dn_ideal(&d4, &SurfaceConfigD::consecutive(4)).unwrap();
        let two_f = d4.class(&[("f", 2)]).unwrap();
        assert_eq!(graded_piece_dim(&p, &d4, &two_f).unwrap(), 3);

        let a2 = lattice(Kind::A, 2);
        let p = presentation(&a2, None).unwrap();
        let d = a2.class(&[("l1", 1), ("l2", 2)]).unwrap();
        assert_eq!(graded_piece_dim(&p, &a2, &d).unwrap(), 1);
    }

    #[test]
    fn monomial_cap_is_enforced() {
        let d5 = lattice(Kind::D, 5);
        let p = dn_ideal(&d5, &SurfaceConfigD::consecutive(5)).unwrap();
        let d = d5.class(&[("f", 3)]).unwrap();
        assert_eq!(
            graded_piece_dim_capped(&p, &d5, &d, 10),
            Err(Error::EnumerationOverflow(10))
        );
    }

    #[test]
    fn hilbert_reports() {
        let d3 = lattice(Kind::D, 3);
        let p = dn_ideal(&d3, &SurfaceConfigD::consecutive(3)).unwrap();
        assert!(verify_hilbert(&p, &d3, 6).unwrap().passes());

        let a4 = lattice(Kind::A, 4);
        let p = presentation(&a4, None).unwrap();
        let r = verify_hilbert(&p, &a4, 5).unwrap();
        assert!(r.passes());
        assert!(r.entries.iter().all(|e| e.graded <= 1));
    }

    #[test]
    fn censuses() {
        let e6 = lattice(Kind::E, 6);
        let lines = enumerate_lines(&e6);
        let r = e6.class(&[("h", 1), ("l1", -1)]).unwrap();
        let c = relation_census(&e6, &r, &lines).unwrap();
        assert_eq!((c.monomials, c.sections, c.relations), (5, 2, 3));

        let e7 = lattice(Kind::E, 7);
        let c = relation_census(&e7, &e7.anticanonical_pullback(), &enumerate_lines(&e7)).unwrap();
        assert_eq!((c.monomials, c.sections, c.relations), (28, 3, 25));

        let e8 = lattice(Kind::E, 8);
        let target = e8.anticanonical_pullback().scaled(2);
        let c = relation_census(&e8, &target, &enumerate_lines(&e8)).unwrap();
        assert_eq!((c.monomials, c.sections, c.relations), (123, 4, 119));

        let bad = e6.exceptional(1);
        assert!(matches!(
            relation_census(&e6, &bad, &lines),
            Err(Error::UnsupportedTarget(_))
        ));
    }

    #[test]
    fn torus_characters() {
        let d4 = lattice(Kind::D, 4);
        let rs = RootSystemData::new(&d4).unwrap();
        let f = d4.basis("f").unwrap();
        let tc = torus_character(&rs, &f).unwrap();
        assert!(tc.weight.is_zero());
        assert_eq!(tc.modulo_marking, vec![0; 5]);

        let e6 = lattice(Kind::E, 6);
        let rs = RootSystemData::new(&e6).unwrap();
        let mut ws: Vec<WeightVector> = cox_generators(&e6)
            .iter()
            .map(|g| torus_character(&rs, &g.class).unwrap().weight)
            .collect();
        ws.sort();
        ws.dedup();
        assert_eq!(ws.len(), 27);

        let e8 = lattice(Kind::E, 8);
        let rs = RootSystemData::new(&e8).unwrap();
        let gens = cox_generators(&e8);
        let k1 = torus_character(&rs, &gens[240].class).unwrap();
        let k2 = torus_character(&rs, &gens[241].class).unwrap();
        assert_eq!(k1.weight, k2.weight);
        assert!(k1.weight.is_zero());
        assert!(gens[..240]
            .iter()
            .all(|g| torus_character(&rs, &g.class).unwrap().weight != k1.weight));
    }

    #[test]
    fn git_functions() {
        let d4 = lattice(Kind::D, 4);
        let f = d4.basis("f").unwrap();
        assert_eq!(git_hilbert(&d4, &f, 5).unwrap(), vec![1, 2, 3, 4, 5, 6]);
        let a3 = lattice(Kind::A, 3);
        assert_eq!(git_hilbert(&a3, &a3.exceptional(1), 4).unwrap(), vec![1; 5]);

        let d3 = lattice(Kind::D, 3);
        let p = dn_ideal(&d3, &SurfaceConfigD::consecutive(3)).unwrap();
        let f3 = d3.basis("f").unwrap();
        assert_eq!(
            git_hilbert_from_presentation(&p, &d3, &f3, 5).unwrap(),
            git_hilbert(&d3, &f3, 5).unwrap()
        );
        let l1 = d4.exceptional(1);
        assert!(git_hilbert(&d4, &l1, 3).is_err());
    }
}
