//! Exhaustive enumeration of roots, lines and rulings.
//!
//! A class `D` with `D.C = 0`, `D^2 = q` and `D.K = p` is searched inside
//! explicit integer ranges:
//!
//! * E-family: `D = a h + sum_{i<=n} b_i l_i` (the `l(n+1)` coefficient is
//!   `-D.C = 0`). Then `sum b_i = -3a - p` and `sum b_i^2 = a^2 - q`, and
//!   Cauchy-Schwarz `(sum b_i)^2 <= n sum b_i^2` gives
//!   `(9 - n) a^2 + 6 p a + p^2 + n q <= 0`, a bounded range for `a` since
//!   `n <= 8`. For lines on the E8 surface this is `-1 <= a <= 7`.
//! * D-family: `D = a f + c s + sum b_i l_i` with `c = D.f = 0`, so
//!   `D^2 = -sum b_i^2` bounds every `b_i`, and `D.K = -2a - sum b_i`
//!   determines `a`.
//! * A-family: `D = a h + sum b_i l_i` with `a = D.h = 0`; then
//!   `sum b_i = -p` and `sum b_i^2 = -q`.
//!
//! Every candidate is re-checked against the lattice's own pairing before it
//! is accepted.

use std::collections::HashSet;
use std::fmt;

use crate::lattice::{DivisorClass, IntersectionLattice, Kind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurveKind {
    Roots,
    Lines,
    Rulings,
}

impl CurveKind {
    /// Required `(D^2, D.K)`.
    pub fn numerics(&self) -> (i64, i64) {
        match self {
            CurveKind::Roots => (-2, 0),
            CurveKind::Lines => (-1, -1),
            CurveKind::Rulings => (0, -2),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CurveKind::Roots => "roots",
            CurveKind::Lines => "lines",
            CurveKind::Rulings => "rulings",
        }
    }
}

impl fmt::Display for CurveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for CurveKind {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "roots" => Ok(CurveKind::Roots),
            "lines" => Ok(CurveKind::Lines),
            "rulings" => Ok(CurveKind::Rulings),
            other => Err(crate::Error::UnsupportedClass(format!(
                "unknown class kind {other:?}"
            ))),
        }
    }
}

/// A sorted, duplicate-free set of classes of one kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSet {
    kind: CurveKind,
    classes: Vec<DivisorClass>,
}

impl ClassSet {
    pub fn new(kind: CurveKind, mut classes: Vec<DivisorClass>) -> Self {
        classes.sort();
        classes.dedup();
        ClassSet { kind, classes }
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn classes(&self) -> &[DivisorClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn contains(&self, d: &DivisorClass) -> bool {
        self.classes.binary_search(d).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, DivisorClass> {
        self.classes.iter()
    }
}

/// Search ranges used for one enumeration, for reporting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBounds {
    /// Inclusive range of the leading coefficient, when it is searched.
    pub leading: Option<(i64, i64)>,
    pub description: String,
}

pub fn search_bounds(lat: &IntersectionLattice, kind: CurveKind) -> SearchBounds {
    let (q, p) = kind.numerics();
    let n = lat.family().n() as i64;
    match lat.family().kind() {
        Kind::E => {
            let (c2, c1, c0) = (9 - n, 6 * p, p * p + n * q);
            let leading = integer_range_nonpositive(c2, c1, c0);
            let range = match leading {
                Some((lo, hi)) => format!("{lo} <= a <= {hi}"),
                None => "empty".into(),
            };
            SearchBounds {
                leading,
                description: format!(
                    "D = a h + sum b_i l_i (i <= {n}), b_{} = 0 from D.C = 0; \
                     sum b_i = -3a {} and sum b_i^2 = a^2 {}; Cauchy-Schwarz gives \
                     {c2} a^2 + {c1} a + {c0} <= 0, so {range}",
                    n + 1,
                    signed_term(-p),
                    signed_term(-q),
                ),
            }
        }
        Kind::D => SearchBounds {
            leading: None,
            description: format!(
                "D = a f + c s + sum b_i l_i with c = D.f = 0; sum b_i^2 = {} bounds |b_i| <= {}, \
                 and a = ({} - sum b_i) / 2 from D.K = {p}",
                -q,
                isqrt(-q),
                -p,
            ),
        },
        Kind::A => SearchBounds {
            leading: Some((0, 0)),
            description: format!(
                "D = a h + sum b_i l_i with a = D.h = 0; sum b_i = {} and sum b_i^2 = {} \
                 over {} coordinates",
                -p,
                -q,
                n + 1
            ),
        },
    }
}

fn signed_term(x: i64) -> String {
    if x < 0 {
        format!("- {}", -x)
    } else {
        format!("+ {x}")
    }
}

pub fn enumerate(lat: &IntersectionLattice, kind: CurveKind) -> ClassSet {
    let (q, p) = kind.numerics();
    let rank = lat.rank();
    let n = lat.family().n();
    let mut candidates = Vec::new();
    match lat.family().kind() {
        Kind::E => {
            if let Some((lo, hi)) = search_bounds(lat, kind).leading {
                for a in lo..=hi {
                    let norm = a * a - q;
                    let sum = -3 * a - p;
                    for b in vectors_with(n, Some(sum), norm) {
                        let mut v = Vec::with_capacity(rank);
                        v.push(a);
                        v.extend(b);
                        v.push(0);
                        candidates.push(DivisorClass::new(v));
                    }
                }
            }
        }
        Kind::D => {
            for b in vectors_with(n, None, -q) {
                let s: i64 = b.iter().sum();
                if (-p - s) % 2 != 0 {
                    continue;
                }
                let mut v = Vec::with_capacity(rank);
                v.push((-p - s) / 2);
                v.push(0);
                v.extend(b);
                candidates.push(DivisorClass::new(v));
            }
        }
        Kind::A => {
            for b in vectors_with(n + 1, Some(-p), -q) {
                let mut v = Vec::with_capacity(rank);
                v.push(0);
                v.extend(b);
                candidates.push(DivisorClass::new(v));
            }
        }
    }
    candidates.retain(|d| satisfies(lat, d, kind));
    ClassSet::new(kind, candidates)
}

pub fn enumerate_roots(lat: &IntersectionLattice) -> ClassSet {
    enumerate(lat, CurveKind::Roots)
}

pub fn enumerate_lines(lat: &IntersectionLattice) -> ClassSet {
    enumerate(lat, CurveKind::Lines)
}

pub fn enumerate_rulings(lat: &IntersectionLattice) -> ClassSet {
    enumerate(lat, CurveKind::Rulings)
}

/// Whether `d` satisfies the defining equations of `kind`.
pub fn satisfies(lat: &IntersectionLattice, d: &DivisorClass, kind: CurveKind) -> bool {
    let (q, p) = kind.numerics();
    lat.pair_unchecked(d, d) == q
        && lat.pair_unchecked(d, lat.canonical()) == p
        && lat.pair_unchecked(d, lat.marking()) == 0
}

/// Number of unordered pairs `{l, l'}` of lines with `l + l' = target`.
pub fn pairs_of_lines_summing_to(target: &DivisorClass, lines: &ClassSet) -> usize {
    let set: HashSet<&DivisorClass> = lines.iter().collect();
    let mut ordered = 0;
    let mut diagonal = 0;
    for l in lines.iter() {
        let partner = target - l;
        if &partner == l {
            diagonal += 1;
        } else if set.contains(&partner) {
            ordered += 1;
        }
    }
    ordered / 2 + diagonal
}

/// All integer vectors of length `k` with the given sum of squares and, if
/// given, the given coordinate sum.
pub(crate) fn vectors_with(k: usize, sum: Option<i64>, norm: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(k);
    if norm >= 0 {
        fill(k, sum, norm, &mut buf, &mut out);
    }
    out
}

fn fill(k: usize, sum: Option<i64>, norm: i64, buf: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if k == 0 {
        if norm == 0 && sum.is_none_or(|s| s == 0) {
            out.push(buf.clone());
        }
        return;
    }
    if let Some(s) = sum {
        // x^2 = x (mod 2) and Cauchy-Schwarz on the remaining coordinates.
        if (s - norm).rem_euclid(2) != 0 || s * s > k as i64 * norm {
            return;
        }
    }
    let r = isqrt(norm);
    for x in -r..=r {
        buf.push(x);
        fill(k - 1, sum.map(|s| s - x), norm - x * x, buf, out);
        buf.pop();
    }
}

pub(crate) fn isqrt(x: i64) -> i64 {
    if x <= 0 {
        return 0;
    }
    let mut r = (x as f64).sqrt() as i64;
    while r * r > x {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= x {
        r += 1;
    }
    r
}

/// Integers `a` with `c2 a^2 + c1 a + c0 <= 0`, for `c2 > 0`.
fn integer_range_nonpositive(c2: i64, c1: i64, c0: i64) -> Option<(i64, i64)> {
    debug_assert!(c2 > 0);
    let val = |a: i64| c2 * a * a + c1 * a + c0;
    let vertex = (-c1).div_euclid(2 * c2);
    let start = [vertex, vertex + 1].into_iter().find(|&a| val(a) <= 0)?;
    let mut lo = start;
    while val(lo - 1) <= 0 {
        lo -= 1;
    }
    let mut hi = start;
    while val(hi + 1) <= 0 {
        hi += 1;
    }
    Some((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::SurfaceFamily;

    fn lattice(kind: Kind, n: usize) -> IntersectionLattice {
        IntersectionLattice::build(SurfaceFamily::new(kind, n).unwrap()).unwrap()
    }

    #[test]
    fn e8_line_bound() {
        let b = search_bounds(&lattice(Kind::E, 8), CurveKind::Lines);
        assert_eq!(b.leading, Some((-1, 7)));
        assert!(b.description.contains("-1 <= a <= 7"));
    }

    #[test]
    fn root_counts() {
        assert_eq!(enumerate_roots(&lattice(Kind::A, 3)).len(), 12);
        assert_eq!(enumerate_roots(&lattice(Kind::D, 4)).len(), 24);
        assert_eq!(enumerate_roots(&lattice(Kind::E, 6)).len(), 72);
        for n in 1..=6 {
            assert_eq!(enumerate_roots(&lattice(Kind::A, n)).len(), n * (n + 1));
        }
        for n in 2..=7 {
            assert_eq!(enumerate_roots(&lattice(Kind::D, n)).len(), 2 * n * (n - 1));
        }
    }

    #[test]
    fn d_lines_are_exceptional_and_complements() {
        for n in 2..=6 {
            let lat = lattice(Kind::D, n);
            let lines = enumerate_lines(&lat);
            assert_eq!(lines.len(), 2 * n);
            let f = lat.basis("f").unwrap();
            for i in 1..=n {
                let li = lat.exceptional(i);
                assert!(lines.contains(&li));
                assert!(lines.contains(&(&f - &li)));
            }
            let rulings = enumerate_rulings(&lat);
            assert_eq!(rulings.classes(), &[f]);
        }
    }

    #[test]
    fn a_lines_are_exceptional() {
        for n in 1..=6 {
            let lat = lattice(Kind::A, n);
            let lines = enumerate_lines(&lat);
            let expected: Vec<_> = (1..=n + 1).map(|i| lat.exceptional(i)).collect();
            assert_eq!(lines, ClassSet::new(CurveKind::Lines, expected));
            assert!(enumerate_rulings(&lat).is_empty());
        }
    }

    #[test]
    fn e_counts() {
        let lines = [10, 16, 27, 56, 240];
        let rulings = [5, 10, 27, 126, 2160];
        for (i, n) in (4..=8).enumerate() {
            let lat = lattice(Kind::E, n);
            assert_eq!(enumerate_lines(&lat).len(), lines[i], "lines E{n}");
            assert_eq!(enumerate_rulings(&lat).len(), rulings[i], "rulings E{n}");
        }
    }

    #[test]
    fn degrees_of_enumerated_classes() {
        let lat = lattice(Kind::E, 7);
        for (kind, deg) in [
            (CurveKind::Roots, 0),
            (CurveKind::Lines, 1),
            (CurveKind::Rulings, 2),
        ] {
            for d in enumerate(&lat, kind).iter() {
                assert_eq!(lat.degree(d).unwrap(), deg);
            }
        }
    }

    #[test]
    fn output_is_sorted_and_unique() {
        let set = enumerate_lines(&lattice(Kind::E, 6));
        assert!(set.classes().windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn line_pairs() {
        let e6 = lattice(Kind::E, 6);
        let target = e6.class(&[("h", 1), ("l1", -1)]).unwrap();
        assert_eq!(pairs_of_lines_summing_to(&target, &enumerate_lines(&e6)), 5);

        let d4 = lattice(Kind::D, 4);
        let f = d4.basis("f").unwrap();
        assert_eq!(pairs_of_lines_summing_to(&f, &enumerate_lines(&d4)), 4);

        let e7 = lattice(Kind::E, 7);
        let target = e7.anticanonical_pullback();
        assert_eq!(
            pairs_of_lines_summing_to(&target, &enumerate_lines(&e7)),
            28
        );
    }

    #[test]
    fn diagonal_pairs_count_once() {
        let lat = lattice(Kind::A, 2);
        let lines = enumerate_lines(&lat);
        let l1 = lat.exceptional(1);
        assert_eq!(pairs_of_lines_summing_to(&l1.scaled(2), &lines), 1);
    }

    #[test]
    fn quadratic_range() {
        assert_eq!(integer_range_nonpositive(1, -6, -7), Some((-1, 7)));
        assert_eq!(integer_range_nonpositive(1, 0, 1), None);
        assert_eq!(integer_range_nonpositive(1, 0, 0), Some((0, 0)));
    }
}
