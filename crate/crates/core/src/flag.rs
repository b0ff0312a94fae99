//! Quadrics cutting out cones over flag varieties, and their relation to the
//! Cox ring.

use std::fmt::Write as _;

use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::cox::{self, rational, CoxPresentation, SurfaceConfigD, Term};
use crate::curves::enumerate_lines;
use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, IntersectionLattice, Kind};
use crate::linalg;
use crate::roots::RootSystemData;
use crate::weights::{weight_of, WeightMultiset, WeightVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Variable {
    pub name: String,
    pub class: DivisorClass,
    pub weight: WeightVector,
}

/// `variable -> scalar * target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    pub variable: usize,
    pub scalar: BigRational,
    pub target: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadricSystem {
    pub variables: Vec<Variable>,
    pub quadrics: Vec<Vec<Term>>,
    pub substitution: Option<Vec<Substitution>>,
}

impl QuadricSystem {
    fn monomial_class(&self, m: &[usize]) -> DivisorClass {
        let rank = self.variables.first().map_or(0, |v| v.class.len());
        m.iter().fold(DivisorClass::zero(rank), |acc, &i| {
            &acc + &self.variables[i].class
        })
    }

    fn monomial_weight(&self, m: &[usize]) -> WeightVector {
        let rank = self
            .variables
            .first()
            .map_or(0, |v| v.weight.labels().len());
        m.iter().fold(WeightVector::zero(rank), |acc, &i| {
            acc.plus(&self.variables[i].weight)
        })
    }

    /// Every quadric has one class and one weight across its monomials, and
    /// every substitution scalar is nonzero.
    pub fn is_homogeneous(&self) -> bool {
        let quadrics_ok = self.quadrics.iter().all(|q| {
            q.windows(2).all(|w| {
                self.monomial_class(&w[0].monomial) == self.monomial_class(&w[1].monomial)
                    && self.monomial_weight(&w[0].monomial) == self.monomial_weight(&w[1].monomial)
            })
        });
        let subs_ok = self
            .substitution
            .iter()
            .flatten()
            .all(|s| !s.scalar.is_zero());
        quadrics_ok && subs_ok
    }

    pub fn quadric_class(&self, i: usize) -> Option<DivisorClass> {
        self.quadrics
            .get(i)
            .and_then(|q| q.first())
            .map(|t| self.monomial_class(&t.monomial))
    }

    pub fn quadric_weight(&self, i: usize) -> Option<WeightVector> {
        self.quadrics
            .get(i)
            .and_then(|q| q.first())
            .map(|t| self.monomial_weight(&t.monomial))
    }

    pub fn format_quadric(&self, i: usize) -> String {
        let names: Vec<&str> = self.variables.iter().map(|v| v.name.as_str()).collect();
        format_polynomial(&self.quadrics[i], &names)
    }
}

/// Renders `sum c * monomial` with unit coefficients suppressed.
pub fn format_polynomial(terms: &[Term], names: &[&str]) -> String {
    let mut out = String::new();
    for (k, t) in terms.iter().enumerate() {
        let negative = t.coeff.is_negative();
        let abs = t.coeff.abs();
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let mono: Vec<&str> = t.monomial.iter().map(|&i| names[i]).collect();
        if !abs.is_one() || mono.is_empty() {
            let _ = write!(out, "{abs}");
            if !mono.is_empty() {
                out.push('*');
            }
        }
        out.push_str(&mono.join("*"));
    }
    out
}

fn require_kind(lat: &IntersectionLattice, kind: Kind, what: &str) -> Result<()> {
    if lat.family().kind() != kind {
        return Err(Error::WrongFamily {
            expected: what.into(),
            got: lat.family().to_string(),
        });
    }
    Ok(())
}

/// `sum X_i Y_i` on the lines of a D-surface, `X_i <-> l_i` and
/// `Y_i <-> f - l_i`.
pub fn cone_quadric_d(rs: &RootSystemData) -> Result<QuadricSystem> {
    let lat = rs.lattice();
    require_kind(lat, Kind::D, "D-family")?;
    let n = lat.family().n();
    if n < 3 {
        return Err(Error::WrongFamily {
            expected: "D-family with n >= 3".into(),
            got: lat.family().to_string(),
        });
    }
    let f = lat.basis("f")?;
    let var = |name: String, class: DivisorClass| Variable {
        weight: weight_of(rs, &class),
        name,
        class,
    };
    let mut variables: Vec<Variable> = (1..=n)
        .map(|i| var(format!("X{i}"), lat.exceptional(i)))
        .collect();
    variables.extend((1..=n).map(|i| var(format!("Y{i}"), &f - &lat.exceptional(i))));
    let quadric = (0..n)
        .map(|i| Term {
            coeff: BigRational::one(),
            monomial: vec![i, n + i],
        })
        .collect();
    Ok(QuadricSystem {
        variables,
        quadrics: vec![quadric],
        substitution: None,
    })
}

#[derive(Debug, Clone)]
pub struct Embedding {
    pub system: QuadricSystem,
    pub presentation: CoxPresentation,
    pub coefficients: Vec<BigRational>,
    pub rank_before: usize,
    pub rank_after: usize,
}

impl Embedding {
    pub fn certified(&self) -> bool {
        self.rank_before == self.rank_after
    }

    pub fn conditions_hold(&self, cfg: &SurfaceConfigD) -> bool {
        let sum: BigRational = self.coefficients.iter().sum();
        let moment: BigRational = self
            .coefficients
            .iter()
            .zip(cfg.points())
            .map(|(c, t)| c * t)
            .sum();
        sum.is_zero() && moment.is_zero() && self.coefficients.iter().all(|c| !c.is_zero())
    }
}

const EMBED_SEARCH_LIMIT: usize = 1_000_000;

/// Nonzero `c` with `sum c_i = 0` and `sum c_i t_i = 0`.
///
/// For n = 3 this is the ray `(t2 - t3, t3 - t1, t1 - t2)`. For larger n the
/// free coordinates `c_3..c_n` run over integers in `[-B, B] \ {0}` in the
/// order `-1, 1, -2, 2, ...` (lexicographically) for `B = 1, 2, ...`; `c_1`
/// and `c_2` are then solved for, and the first all-nonzero vector with
/// every `|c_i| <= B` is returned.
pub fn solve_coefficients(cfg: &SurfaceConfigD) -> Result<Vec<BigRational>> {
    let t = cfg.points();
    let n = t.len();
    if n < 3 {
        return Err(Error::NoSolution);
    }
    if n == 3 {
        return Ok(vec![&t[1] - &t[2], &t[2] - &t[0], &t[0] - &t[1]]);
    }
    let free = n - 2;
    let mut visited = 0usize;
    for bound in 1i64.. {
        let values: Vec<i64> = (1..=bound).flat_map(|v| [-v, v]).collect();
        let limit = BigRational::from_integer(bound.into());
        let mut idx = vec![0usize; free];
        loop {
            visited += 1;
            if visited > EMBED_SEARCH_LIMIT {
                return Err(Error::NoSolution);
            }
            let tail: Vec<BigRational> = idx.iter().map(|&k| rational(values[k])).collect();
            let s: BigRational = tail.iter().sum();
            let m: BigRational = tail.iter().zip(&t[2..]).map(|(c, ti)| c * ti).sum();
            let c2 = (&t[0] * &s - &m) / (&t[1] - &t[0]);
            let c1 = -&s - &c2;
            if !c1.is_zero() && !c2.is_zero() && c1.abs() <= limit && c2.abs() <= limit {
                let mut out = vec![c1, c2];
                out.extend(tail);
                return Ok(out);
            }
            if !advance(&mut idx, values.len()) {
                break;
            }
        }
    }
    Err(Error::NoSolution)
}

/// Odometer step over `idx` with digits below `base`; false once it wraps.
fn advance(idx: &mut [usize], base: usize) -> bool {
    for d in idx.iter_mut().rev() {
        *d += 1;
        if *d < base {
            return true;
        }
        *d = 0;
    }
    false
}

/// The substitution `X_i -> c_i x_i`, `Y_i -> y_i` pulling the cone quadric
/// back into the ideal of the Cox ring, with the in-ideal certificate: the
/// rank of the relation matrix at class f is unchanged by adjoining
/// `sum c_i x_i y_i`.
pub fn embed_cox_into_cone_d(rs: &RootSystemData, cfg: &SurfaceConfigD) -> Result<Embedding> {
    let lat = rs.lattice();
    let mut system = cone_quadric_d(rs)?;
    let n = lat.family().n();
    let presentation = cox::dn_ideal(lat, cfg)?;
    let coefficients = solve_coefficients(cfg)?;

    let f = lat.basis("f")?;
    let piece = cox::class_piece(&presentation, lat, &f)?;
    let image: Vec<Term> = coefficients
        .iter()
        .enumerate()
        .map(|(i, c)| Term {
            coeff: c.clone(),
            monomial: vec![i, n + i],
        })
        .collect();
    let rank_before = linalg::rank_rational(&piece.rows);
    let mut rows = piece.rows.clone();
    rows.push(piece.row_of(&image)?);
    let rank_after = linalg::rank_rational(&rows);

    let gens = &presentation.generators;
    let mut subs: Vec<Substitution> = coefficients
        .iter()
        .enumerate()
        .map(|(i, c)| Substitution {
            variable: i,
            scalar: c.clone(),
            target: gens[i].name.clone(),
        })
        .collect();
    subs.extend((0..n).map(|i| Substitution {
        variable: n + i,
        scalar: BigRational::one(),
        target: gens[n + i].name.clone(),
    }));
    system.substitution = Some(subs);
    Ok(Embedding {
        system,
        presentation,
        coefficients,
        rank_before,
        rank_after,
    })
}

#[derive(Debug, Clone)]
pub struct AnDegree {
    pub degree: i64,
    pub graded: u64,
    pub expected: u64,
}

#[derive(Debug, Clone)]
pub struct AnReport {
    pub generators: usize,
    pub relations: usize,
    pub degrees: Vec<AnDegree>,
    pub weights: Vec<WeightVector>,
}

impl AnReport {
    pub fn weights_distinct(&self) -> bool {
        let mut w = self.weights.clone();
        w.sort();
        w.dedup();
        w.len() == self.weights.len()
    }

    pub fn holds(&self) -> bool {
        self.relations == 0
            && self.weights_distinct()
            && self.degrees.iter().all(|d| d.graded == d.expected)
    }
}

/// Graded dimensions of the A-family Cox ring per total degree, against the
/// coordinate ring of projective n-space.
pub fn an_report(rs: &RootSystemData, max_degree: i64) -> Result<AnReport> {
    let lat = rs.lattice();
    require_kind(lat, Kind::A, "A-family")?;
    let n = lat.family().n() as u64;
    let pres = cox::presentation(lat, None)?;
    let hilbert = cox::verify_hilbert(&pres, lat, max_degree)?;
    let degrees = (0..=max_degree)
        .map(|d| AnDegree {
            degree: d,
            graded: hilbert
                .entries
                .iter()
                .filter(|e| e.degree == d)
                .map(|e| e.graded)
                .sum(),
            expected: binomial(d as u64 + n, n),
        })
        .collect();
    Ok(AnReport {
        generators: pres.generators.len(),
        relations: pres.relations.len(),
        degrees,
        weights: pres
            .generators
            .iter()
            .map(|g| weight_of(rs, &g.class))
            .collect(),
    })
}

#[derive(Debug, Clone)]
pub struct TensorReport {
    pub left: Vec<DivisorClass>,
    pub right: Vec<DivisorClass>,
    pub product: WeightMultiset,
    pub lines: WeightMultiset,
    pub classes_match: bool,
    pub segre: Option<QuadricSystem>,
}

impl TensorReport {
    pub fn holds(&self) -> bool {
        self.product == self.lines
            && self.classes_match
            && self.segre.as_ref().is_none_or(|s| s.is_homogeneous())
    }
}

/// Line weights of the E3 and D2 surfaces as a product of two factors.
pub fn tensor_factorization(rs: &RootSystemData) -> Result<TensorReport> {
    let lat = rs.lattice();
    let fam = lat.family();
    let c = |terms: &[(&str, i64)]| lat.class(terms);
    let h = lat.basis(lat.labels()[0].as_str())?;
    let (left, right) = match (fam.kind(), fam.n()) {
        (Kind::E, 3) => (
            (1..=3)
                .map(|i| &lat.exceptional(i) - &h)
                .collect::<Vec<_>>(),
            vec![
                h.clone(),
                c(&[("h", 2), ("l1", -1), ("l2", -1), ("l3", -1)])?,
            ],
        ),
        (Kind::D, 2) => (
            vec![c(&[("l1", 1), ("s", -1)])?, c(&[("l2", 1), ("s", -1)])?],
            vec![
                lat.basis("s")?,
                c(&[("s", 1), ("f", 1), ("l1", -1), ("l2", -1)])?,
            ],
        ),
        _ => {
            return Err(Error::WrongFamily {
                expected: "E3 or D2".into(),
                got: fam.to_string(),
            })
        }
    };
    let left_w: Vec<WeightVector> = left.iter().map(|d| weight_of(rs, d)).collect();
    let right_w: Vec<WeightVector> = right.iter().map(|d| weight_of(rs, d)).collect();
    let product: WeightMultiset = left_w
        .iter()
        .flat_map(|a| right_w.iter().map(move |b| a.plus(b)))
        .collect();
    let line_set = enumerate_lines(lat);
    let lines: WeightMultiset = line_set.iter().map(|l| weight_of(rs, l)).collect();
    let mut sums: Vec<DivisorClass> = left
        .iter()
        .flat_map(|a| right.iter().map(move |b| a + b))
        .collect();
    sums.sort();
    let classes_match = sums == line_set.classes();

    let segre = if fam.kind() == Kind::D {
        let var = |name: &str, class: DivisorClass| Variable {
            name: name.into(),
            weight: weight_of(rs, &class),
            class,
        };
        let z = |i: usize, j: usize| &left[i] + &right[j];
        let variables = vec![
            var("z11", z(0, 0)),
            var("z12", z(0, 1)),
            var("z21", z(1, 0)),
            var("z22", z(1, 1)),
        ];
        let quadric = vec![
            Term {
                coeff: BigRational::one(),
                monomial: vec![0, 3],
            },
            Term {
                coeff: -BigRational::one(),
                monomial: vec![1, 2],
            },
        ];
        Some(QuadricSystem {
            variables,
            quadrics: vec![quadric],
            substitution: None,
        })
    } else {
        None
    };
    Ok(TensorReport {
        left,
        right,
        product,
        lines,
        classes_match,
        segre,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::SurfaceFamily;

    fn rs(kind: Kind, n: usize) -> RootSystemData {
        RootSystemData::new(
            &IntersectionLattice::build(SurfaceFamily::new(kind, n).unwrap()).unwrap(),
        )
        .unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&x| rational(x)).collect()
    }

    #[test]
    fn cone_quadric() {
        let r = rs(Kind::D, 3);
        let q = cone_quadric_d(&r).unwrap();
        assert_eq!(q.format_quadric(0), "X1*Y1 + X2*Y2 + X3*Y3");
        assert!(q.is_homogeneous());
        assert!(q.quadric_weight(0).unwrap().is_zero());
        assert_eq!(q.quadric_class(0).unwrap(), r.lattice().basis("f").unwrap());

        let q5 = cone_quadric_d(&rs(Kind::D, 5)).unwrap();
        assert_eq!(q5.quadrics[0].len(), 5);
        assert!(cone_quadric_d(&rs(Kind::E, 6)).is_err());
    }

    #[test]
    fn embeddings() {
        let e = embed_cox_into_cone_d(&rs(Kind::D, 3), &SurfaceConfigD::consecutive(3)).unwrap();
        assert_eq!(e.coefficients, ints(&[-1, 2, -1]));
        assert!(e.certified());

        let cfg = SurfaceConfigD::consecutive(4);
        let e = embed_cox_into_cone_d(&rs(Kind::D, 4), &cfg).unwrap();
        assert_eq!(e.coefficients, ints(&[1, -1, -1, 1]));
        assert!(e.certified() && e.conditions_hold(&cfg));
        assert!(e.system.is_homogeneous());
    }

    #[test]
    fn embedding_with_fractional_points() {
        let half = BigRational::new(1.into(), 2.into());
        let pts = vec![rational(0), half, rational(3), rational(-2), rational(7)];
        let cfg = SurfaceConfigD::new(pts).unwrap();
        let e = embed_cox_into_cone_d(&rs(Kind::D, 5), &cfg).unwrap();
        assert!(e.certified() && e.conditions_hold(&cfg));
    }

    #[test]
    fn uncertified_vector_is_detected() {
        let r = rs(Kind::D, 4);
        let lat = r.lattice();
        let pres = cox::dn_ideal(lat, &SurfaceConfigD::consecutive(4)).unwrap();
        let piece = cox::class_piece(&pres, lat, &lat.basis("f").unwrap()).unwrap();
        let before = linalg::rank_rational(&piece.rows);
        let bogus: Vec<Term> = (0..4)
            .map(|i| Term {
                coeff: rational(1),
                monomial: vec![i, 4 + i],
            })
            .collect();
        let mut rows = piece.rows.clone();
        rows.push(piece.row_of(&bogus).unwrap());
        assert_eq!(linalg::rank_rational(&rows), before + 1);
    }

    #[test]
    fn an_reports() {
        let a2 = an_report(&rs(Kind::A, 2), 5).unwrap();
        let dims: Vec<u64> = a2.degrees.iter().map(|d| d.graded).collect();
        assert_eq!(dims, vec![1, 3, 6, 10, 15, 21]);
        assert!(a2.holds());

        let a1 = an_report(&rs(Kind::A, 1), 4).unwrap();
        let dims: Vec<u64> = a1.degrees.iter().map(|d| d.graded).collect();
        assert_eq!(dims, vec![1, 2, 3, 4, 5]);

        let a4 = an_report(&rs(Kind::A, 4), 2).unwrap();
        assert_eq!(a4.weights.len(), 5);
        assert!(a4.weights_distinct());
    }

    #[test]
    fn tensor_factorizations() {
        let e3 = tensor_factorization(&rs(Kind::E, 3)).unwrap();
        assert_eq!(e3.product.total(), 6);
        assert!(e3.holds());
        assert!(e3.segre.is_none());

        let d2r = rs(Kind::D, 2);
        let d2 = tensor_factorization(&d2r).unwrap();
        assert_eq!(d2.product.total(), 4);
        assert!(d2.holds());
        let lat = d2r.lattice();
        assert_eq!(&d2.left[0] + &d2.right[0], lat.exceptional(1));
        let segre = d2.segre.unwrap();
        assert_eq!(segre.format_quadric(0), "z11*z22 - z12*z21");
        assert_eq!(segre.quadric_class(0).unwrap(), lat.basis("f").unwrap());

        assert!(tensor_factorization(&rs(Kind::D, 3)).is_err());
    }
}
