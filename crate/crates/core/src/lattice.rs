//! Picard lattices of A-, D- and E-surfaces in their fixed bases.
//!
//! * E-family (rank n+2): basis `h, l1, ..., l(n+1)`, Gram `diag(1, -1, ..., -1)`,
//!   `K = -3h + sum l_i`, marking class `C = l(n+1)`.
//! * D-family (rank n+2): basis `f, s, l1, ..., ln` with `f.s = 1`, `f^2 = s^2 = 0`,
//!   `l_i^2 = -1`, `K = -2f - 2s + sum l_i`, `C = f`.
//! * A-family (rank n+2): basis `h, l1, ..., l(n+1)` as for E, with `C = h`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::linalg;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    A,
    D,
    E,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::A => "A",
            Kind::D => "D",
            Kind::E => "E",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Kind::A),
            "D" | "d" => Ok(Kind::D),
            "E" | "e" => Ok(Kind::E),
            other => Err(Error::InvalidFamily(format!("unknown kind {other:?}"))),
        }
    }
}

/// A family of ADE-surfaces together with its rank parameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceFamily {
    kind: Kind,
    n: usize,
}

impl SurfaceFamily {
    pub fn new(kind: Kind, n: usize) -> Result<Self> {
        let ok = match kind {
            Kind::A => n >= 1,
            Kind::D => n >= 2,
            Kind::E => (3..=8).contains(&n),
        };
        if !ok {
            return Err(Error::InvalidFamily(format!("{kind}{n} is out of range")));
        }
        Ok(SurfaceFamily { kind, n })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The two semisimple but non-simple cases E3 = A2xA1 and D2 = A1xA1.
    pub fn is_reducible(&self) -> bool {
        matches!((self.kind, self.n), (Kind::E, 3) | (Kind::D, 2))
    }
}

impl fmt::Display for SurfaceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.kind, self.n)
    }
}

/// Integer coordinates of a divisor class in a lattice basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DivisorClass(Vec<i64>);

impl DivisorClass {
    pub fn new(coords: Vec<i64>) -> Self {
        DivisorClass(coords)
    }

    pub fn zero(rank: usize) -> Self {
        DivisorClass(vec![0; rank])
    }

    pub fn unit(rank: usize, index: usize) -> Self {
        let mut v = vec![0; rank];
        v[index] = 1;
        DivisorClass(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        DivisorClass(self.0.iter().map(|x| x * k).collect())
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;

    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.len(), rhs.len(), "class length mismatch");
        DivisorClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;

    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(self.len(), rhs.len(), "class length mismatch");
        DivisorClass(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;

    fn neg(self) -> DivisorClass {
        DivisorClass(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&DivisorClass> for i64 {
    type Output = DivisorClass;

    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        rhs.scaled(self)
    }
}

/// A based unimodular Lorentzian lattice with canonical and marking class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionLattice {
    family: SurfaceFamily,
    labels: Vec<String>,
    gram: Vec<Vec<i64>>,
    canonical: DivisorClass,
    marking: DivisorClass,
}

impl IntersectionLattice {
    pub fn build(family: SurfaceFamily) -> Result<Self> {
        let n = family.n();
        let (labels, gram, canonical, marking) = match family.kind() {
            Kind::E | Kind::A => {
                let rank = n + 2;
                let mut labels = vec!["h".to_string()];
                labels.extend((1..=n + 1).map(|i| format!("l{i}")));
                let gram = diagonal_form(rank);
                let mut k = vec![1; rank];
                k[0] = -3;
                let marking = if family.kind() == Kind::E {
                    DivisorClass::unit(rank, rank - 1)
                } else {
                    DivisorClass::unit(rank, 0)
                };
                (labels, gram, DivisorClass(k), marking)
            }
            Kind::D => {
                let rank = n + 2;
                let mut labels = vec!["f".to_string(), "s".to_string()];
                labels.extend((1..=n).map(|i| format!("l{i}")));
                let mut gram = vec![vec![0; rank]; rank];
                gram[0][1] = 1;
                gram[1][0] = 1;
                for (i, row) in gram.iter_mut().enumerate().skip(2) {
                    row[i] = -1;
                }
                let mut k = vec![1; rank];
                k[0] = -2;
                k[1] = -2;
                (labels, gram, DivisorClass(k), DivisorClass::unit(rank, 0))
            }
        };
        Self::from_parts(family, labels, gram, canonical, marking)
    }

    /// Assembles a lattice from raw data, checking symmetry, unimodularity,
    /// hyperbolic signature and nondegeneracy of the (C, K) plane.
    #[allow(clippy::needless_range_loop)]
    pub fn from_parts(
        family: SurfaceFamily,
        labels: Vec<String>,
        gram: Vec<Vec<i64>>,
        canonical: DivisorClass,
        marking: DivisorClass,
    ) -> Result<Self> {
        let rank = labels.len();
        if gram.len() != rank || gram.iter().any(|row| row.len() != rank) {
            return Err(Error::InvalidLattice(
                "gram shape does not match basis".into(),
            ));
        }
        if canonical.len() != rank || marking.len() != rank {
            return Err(Error::InvalidLattice(
                "class length does not match basis".into(),
            ));
        }
        for i in 0..rank {
            for j in 0..i {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidLattice("gram is not symmetric".into()));
                }
            }
        }
        let det = linalg::determinant(&gram);
        if det.abs() != 1.into() {
            return Err(Error::InvalidLattice(format!(
                "determinant {det} is not a unit"
            )));
        }
        let (pos, neg, _) = linalg::inertia(&gram);
        if pos != 1 || neg != rank - 1 {
            return Err(Error::InvalidLattice(format!(
                "signature ({pos}, {neg}) is not hyperbolic"
            )));
        }
        let lat = IntersectionLattice {
            family,
            labels,
            gram,
            canonical,
            marking,
        };
        let (cc, ck, kk) = (
            lat.pair_unchecked(&lat.marking, &lat.marking),
            lat.pair_unchecked(&lat.marking, &lat.canonical),
            lat.pair_unchecked(&lat.canonical, &lat.canonical),
        );
        if cc * kk - ck * ck == 0 {
            return Err(Error::InvalidLattice(
                "the (C, K) plane is degenerate".into(),
            ));
        }
        Ok(lat)
    }

    pub fn family(&self) -> SurfaceFamily {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &[Vec<i64>] {
        &self.gram
    }

    pub fn canonical(&self) -> &DivisorClass {
        &self.canonical
    }

    pub fn marking(&self) -> &DivisorClass {
        &self.marking
    }

    /// Index of the basis vector equal to the marking class, if any.
    pub fn marking_index(&self) -> Option<usize> {
        let c = self.marking.coords();
        let idx = c.iter().position(|&x| x == 1)?;
        (c.iter().filter(|&&x| x != 0).count() == 1).then_some(idx)
    }

    /// Basis vector by label (`"h"`, `"f"`, `"s"`, `"l3"`, ...).
    pub fn basis(&self, label: &str) -> Result<DivisorClass> {
        let idx = self
            .labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnsupportedClass(format!("no basis label {label:?}")))?;
        Ok(DivisorClass::unit(self.rank(), idx))
    }

    /// Integer combination of basis vectors, e.g. `[("h", 1), ("l1", -1)]`.
    pub fn class(&self, terms: &[(&str, i64)]) -> Result<DivisorClass> {
        let mut v = vec![0; self.rank()];
        for &(label, coeff) in terms {
            let idx = self
                .labels
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| Error::UnsupportedClass(format!("no basis label {label:?}")))?;
            v[idx] += coeff;
        }
        Ok(DivisorClass(v))
    }

    /// Exceptional class `l_i` (1-based).
    pub fn exceptional(&self, i: usize) -> DivisorClass {
        self.basis(&format!("l{i}"))
            .unwrap_or_else(|_| panic!("{} has no class l{i}", self.family))
    }

    pub fn pair(&self, a: &DivisorClass, b: &DivisorClass) -> Result<i64> {
        for x in [a, b] {
            if x.len() != self.rank() {
                return Err(Error::DimensionMismatch {
                    expected: self.rank(),
                    got: x.len(),
                });
            }
        }
        Ok(self.pair_unchecked(a, b))
    }

    pub(crate) fn pair_unchecked(&self, a: &DivisorClass, b: &DivisorClass) -> i64 {
        let mut total = 0;
        for (i, &ai) in a.0.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            let row = &self.gram[i];
            let s: i64 = row.iter().zip(&b.0).map(|(g, bj)| g * bj).sum();
            total += ai * s;
        }
        total
    }

    pub fn square(&self, a: &DivisorClass) -> Result<i64> {
        self.pair(a, a)
    }

    /// Anticanonical degree `D.(-K)`.
    pub fn degree(&self, d: &DivisorClass) -> Result<i64> {
        Ok(-self.pair(d, &self.canonical)?)
    }

    /// Pullback of the anticanonical class orthogonal to `C`, i.e. `-K + C`.
    pub fn anticanonical_pullback(&self) -> DivisorClass {
        &self.marking - &self.canonical
    }

    pub fn format_class(&self, d: &DivisorClass) -> String {
        let mut out = String::new();
        for (label, &c) in self.labels.iter().zip(d.coords()) {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 {
                "-"
            } else if out.is_empty() {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            if mag == 1 {
                out.push_str(&format!("{sign}{label}"));
            } else {
                out.push_str(&format!("{sign}{mag}{label}"));
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

fn diagonal_form(rank: usize) -> Vec<Vec<i64>> {
    let mut g = vec![vec![0; rank]; rank];
    g[0][0] = 1;
    for (i, row) in g.iter_mut().enumerate().skip(1) {
        row[i] = -1;
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lattice(kind: Kind, n: usize) -> IntersectionLattice {
        IntersectionLattice::build(SurfaceFamily::new(kind, n).unwrap()).unwrap()
    }

    #[test]
    fn family_ranges() {
        assert!(SurfaceFamily::new(Kind::A, 0).is_err());
        assert!(SurfaceFamily::new(Kind::D, 1).is_err());
        assert!(SurfaceFamily::new(Kind::E, 2).is_err());
        assert!(SurfaceFamily::new(Kind::E, 9).is_err());
        assert!(SurfaceFamily::new(Kind::E, 3).unwrap().is_reducible());
        assert!(SurfaceFamily::new(Kind::D, 2).unwrap().is_reducible());
        assert!(!SurfaceFamily::new(Kind::D, 3).unwrap().is_reducible());
    }

    #[test]
    fn e6_lattice() {
        let l = lattice(Kind::E, 6);
        assert_eq!(l.rank(), 8);
        assert_eq!(l.canonical().coords(), &[-3, 1, 1, 1, 1, 1, 1, 1]);
        assert_eq!(l.marking(), &l.exceptional(7));
        let h = l.basis("h").unwrap();
        assert_eq!(l.pair(&h, &h).unwrap(), 1);
        // K = -3h + l1 + ... + l7 on the rank-8 basis
        assert_eq!(l.square(l.canonical()).unwrap(), 2);
        assert_eq!(l.degree(&l.exceptional(1)).unwrap(), 1);
    }

    #[test]
    fn d4_lattice() {
        let l = lattice(Kind::D, 4);
        assert_eq!(l.rank(), 6);
        let f = l.basis("f").unwrap();
        let s = l.basis("s").unwrap();
        assert_eq!(l.pair(&f, &s).unwrap(), 1);
        assert_eq!(l.marking(), &f);
        assert_eq!(l.pair(l.marking(), l.canonical()).unwrap(), -2);
        let l1 = l.exceptional(1);
        assert_eq!(l.pair(&(&f - &l1), &l1).unwrap(), 1);
        assert_eq!(l.degree(&f).unwrap(), 2);
    }

    #[test]
    fn a2_lattice() {
        let l = lattice(Kind::A, 2);
        assert_eq!(l.rank(), 4);
        assert_eq!(l.marking(), &l.basis("h").unwrap());
        assert_eq!(l.pair(l.marking(), l.canonical()).unwrap(), -3);
    }

    #[test]
    fn marking_invariants_per_family() {
        for (kind, range, expected) in [
            (Kind::E, 3..=8, (-1, -1)),
            (Kind::D, 2..=9, (0, -2)),
            (Kind::A, 1..=9, (1, -3)),
        ] {
            for n in range {
                let l = lattice(kind, n);
                let c = l.marking();
                let got = (l.square(c).unwrap(), l.pair(c, l.canonical()).unwrap());
                assert_eq!(got, expected, "{kind}{n}");
                let k = l.canonical();
                assert_eq!(l.degree(k).unwrap(), -l.square(k).unwrap());
                assert_eq!(linalg::inertia(l.gram()), (1, l.rank() - 1, 0));
            }
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let l = lattice(Kind::E, 6);
        let short = DivisorClass::new(vec![1, 0]);
        assert_eq!(
            l.pair(&short, l.canonical()),
            Err(Error::DimensionMismatch {
                expected: 8,
                got: 2
            })
        );
    }

    #[test]
    fn from_parts_rejects_bad_gram() {
        let l = lattice(Kind::E, 4);
        let mut gram = l.gram().to_vec();
        gram[2][2] = 1;
        let err = IntersectionLattice::from_parts(
            l.family(),
            l.labels().to_vec(),
            gram,
            l.canonical().clone(),
            l.marking().clone(),
        );
        assert!(matches!(err, Err(Error::InvalidLattice(_))));
    }

    #[test]
    fn class_formatting() {
        let l = lattice(Kind::E, 6);
        let d = l.class(&[("h", 1), ("l1", -1)]).unwrap();
        assert_eq!(l.format_class(&d), "h-l1");
        assert_eq!(l.format_class(l.canonical()), "-3h+l1+l2+l3+l4+l5+l6+l7");
    }
}
