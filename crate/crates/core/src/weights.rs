//! Weights, characters and the symmetric-square decomposition.
//!
//! A class `D` is sent to its Dynkin labels `(-D.alpha_i)_i`; this factors
//! through `Pic / (ZC + ZK)`. The invariant form on weights is
//! `<mu, nu> = mu^T A^{-1} nu` for the (symmetric) Cartan matrix `A`, which
//! for a block-diagonal `A` is automatically computed block by block.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::curves::{enumerate_lines, enumerate_rulings};
use crate::error::{Error, Result};
use crate::lattice::{DivisorClass, Kind};
use crate::linalg;
use crate::roots::{weyl_orbit, RootSystemData};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(Vec<i64>);

impl WeightVector {
    pub fn new(labels: Vec<i64>) -> Self {
        WeightVector(labels)
    }

    pub fn zero(rank: usize) -> Self {
        WeightVector(vec![0; rank])
    }

    pub fn labels(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    pub fn scaled(&self, k: i64) -> Self {
        WeightVector(self.0.iter().map(|x| x * k).collect())
    }

    pub fn plus(&self, other: &WeightVector) -> Self {
        self.add(&other.0)
    }

    fn add(&self, other: &[i64]) -> Self {
        WeightVector(self.0.iter().zip(other).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "]")
    }
}

/// Finite map from weights to positive multiplicities.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WeightMultiset(BTreeMap<WeightVector, u64>);

impl WeightMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, w: WeightVector, mult: u64) {
        if mult > 0 {
            *self.0.entry(w).or_insert(0) += mult;
        }
    }

    pub fn multiplicity(&self, w: &WeightVector) -> u64 {
        self.0.get(w).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    /// Number of distinct weights.
    pub fn support_len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&WeightVector, u64)> {
        self.0.iter().map(|(w, &m)| (w, m))
    }

    /// Multiplicity of the zero weight.
    pub fn zero_multiplicity(&self) -> u64 {
        self.0
            .iter()
            .find(|(w, _)| w.is_zero())
            .map_or(0, |(_, &m)| m)
    }

    pub fn union(&self, other: &WeightMultiset) -> WeightMultiset {
        let mut out = self.clone();
        for (w, m) in other.iter() {
            out.add(w.clone(), m);
        }
        out
    }

    /// Pointwise difference; fails if any multiplicity would go negative.
    pub fn checked_sub(&self, other: &WeightMultiset) -> Result<WeightMultiset> {
        let mut out = self.0.clone();
        for (w, m) in other.iter() {
            let have = out.get(w).copied().unwrap_or(0);
            if have < m {
                return Err(Error::Internal(format!(
                    "negative multiplicity {} at weight {w}",
                    have as i128 - m as i128
                )));
            }
            if have == m {
                out.remove(w);
            } else {
                out.insert(w.clone(), have - m);
            }
        }
        Ok(WeightMultiset(out))
    }

    /// Whether every multiplicity is preserved by every simple reflection.
    pub fn is_weyl_invariant(&self, rs: &RootSystemData) -> bool {
        self.0.iter().all(|(w, &m)| {
            (0..rs.rank()).all(|i| self.multiplicity(&reflect_weight(rs, w, i)) == m)
        })
    }
}

impl FromIterator<WeightVector> for WeightMultiset {
    fn from_iter<I: IntoIterator<Item = WeightVector>>(iter: I) -> Self {
        let mut m = WeightMultiset::new();
        for w in iter {
            m.add(w, 1);
        }
        m
    }
}

pub fn weight_of(rs: &RootSystemData, d: &DivisorClass) -> WeightVector {
    let lat = rs.lattice();
    assert_eq!(d.len(), lat.rank(), "class length mismatch");
    WeightVector(
        rs.simple_roots()
            .iter()
            .map(|a| -lat.pair_unchecked(d, a))
            .collect(),
    )
}

/// Simple reflection `s_i(mu) = mu - mu_i alpha_i` in label coordinates.
pub fn reflect_weight(rs: &RootSystemData, w: &WeightVector, i: usize) -> WeightVector {
    let c = w.0[i];
    if c == 0 {
        return w.clone();
    }
    WeightVector(
        w.0.iter()
            .zip(&rs.cartan()[i])
            .map(|(x, a)| x - c * a)
            .collect(),
    )
}

/// Dominant representative of the Weyl orbit of `w`.
pub fn to_dominant(rs: &RootSystemData, w: &WeightVector) -> WeightVector {
    let mut cur = w.clone();
    while let Some(i) = cur.0.iter().position(|&x| x < 0) {
        cur = reflect_weight(rs, &cur, i);
    }
    cur
}

/// Integer form `scale * A^{-1}`.
#[derive(Debug, Clone)]
struct ScaledForm {
    scale: i64,
    matrix: Vec<Vec<i64>>,
}

impl ScaledForm {
    fn new(rs: &RootSystemData) -> Result<Self> {
        let inv = linalg::inverse(rs.cartan())
            .ok_or_else(|| Error::Internal("Cartan matrix is singular".into()))?;
        let scale = inv
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let matrix = inv
            .iter()
            .map(|row| {
                row.iter()
                    .map(|x| (x.numer() * (&scale / x.denom())).to_i64().expect("small"))
                    .collect()
            })
            .collect();
        Ok(ScaledForm {
            scale: scale.to_i64().expect("small"),
            matrix,
        })
    }

    fn eval(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (i, &ai) in a.iter().enumerate() {
            if ai != 0 {
                s += ai
                    * self.matrix[i]
                        .iter()
                        .zip(b)
                        .map(|(m, bj)| m * bj)
                        .sum::<i64>();
            }
        }
        s
    }
}

pub fn inner_product(
    rs: &RootSystemData,
    mu: &WeightVector,
    nu: &WeightVector,
) -> Result<BigRational> {
    let form = ScaledForm::new(rs)?;
    Ok(BigRational::new(
        form.eval(&mu.0, &nu.0).into(),
        form.scale.into(),
    ))
}

fn rho(rank: usize) -> WeightVector {
    WeightVector(vec![1; rank])
}

/// Weyl dimension formula `prod_{alpha>0} <lambda+rho, alpha> / <rho, alpha>`.
pub fn weyl_dim(rs: &RootSystemData, lambda: &WeightVector) -> Result<BigUint> {
    if !lambda.is_dominant() || lambda.0.len() != rs.rank() {
        return Err(Error::NonDominant(lambda.to_string()));
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for coords in rs.positive_root_coords() {
        let height: i64 = coords.iter().sum();
        let shifted: i64 = coords.iter().zip(&lambda.0).map(|(c, l)| c * (l + 1)).sum();
        num *= shifted as u64;
        den *= height as u64;
    }
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::Internal("Weyl dimension is not an integer".into()));
    }
    Ok(q)
}

/// Full character of the irreducible module with highest weight `lambda`.
///
/// Multiplicities of dominant weights come from the Freudenthal recursion,
/// processed in decreasing `|mu + rho|^2` (which refines the dominance
/// order on dominant weights); all other weights inherit the multiplicity
/// of their dominant conjugate.
pub fn freudenthal(rs: &RootSystemData, lambda: &WeightVector) -> Result<WeightMultiset> {
    if !lambda.is_dominant() || lambda.0.len() != rs.rank() {
        return Err(Error::NonDominant(lambda.to_string()));
    }
    let rank = rs.rank();
    let form = ScaledForm::new(rs)?;
    let support = weight_support(rs, lambda);

    // Positive roots in label coordinates, paired with simple-root coordinates.
    let pos: Vec<(Vec<i64>, &Vec<i64>)> = rs
        .positive_root_coords()
        .iter()
        .map(|c| {
            let labels = (0..rank)
                .map(|k| (0..rank).map(|j| c[j] * rs.cartan()[j][k]).sum())
                .collect();
            (labels, c)
        })
        .collect();

    let r = rho(rank);
    let norm_shift = |w: &WeightVector| {
        let v = w.add(&r.0);
        form.eval(&v.0, &v.0)
    };
    let mut dominant: Vec<&WeightVector> = support.iter().filter(|w| w.is_dominant()).collect();
    dominant.sort_by(|a, b| norm_shift(b).cmp(&norm_shift(a)).then(b.cmp(a)));

    let top = norm_shift(lambda);
    let mut mult: HashMap<WeightVector, u64> = HashMap::new();
    for mu in dominant {
        if mu == lambda {
            mult.insert(mu.clone(), 1);
            continue;
        }
        let mut acc: i128 = 0;
        for (labels, coords) in &pos {
            let mut nu = mu.add(labels);
            while support.contains(&nu) {
                let m = *mult
                    .get(&to_dominant(rs, &nu))
                    .ok_or_else(|| Error::Internal(format!("weight {nu} visited out of order")))?;
                let pairing: i64 = coords.iter().zip(&nu.0).map(|(c, x)| c * x).sum();
                acc += m as i128 * pairing as i128;
                nu = nu.add(labels);
            }
        }
        let num = 2 * acc * form.scale as i128;
        let den = (top - norm_shift(mu)) as i128;
        if den <= 0 || num % den != 0 {
            return Err(Error::Internal(format!(
                "Freudenthal step at {mu} is not integral"
            )));
        }
        mult.insert(mu.clone(), (num / den) as u64);
    }

    let mut out = WeightMultiset::new();
    for w in support {
        let m = mult[&to_dominant(rs, &w)];
        out.add(w, m);
    }
    Ok(out)
}

/// The set of weights of the irreducible module: closure of `lambda` under
/// full alpha_i-strings `mu, mu - alpha_i, ..., mu - mu_i alpha_i`.
fn weight_support(rs: &RootSystemData, lambda: &WeightVector) -> HashSet<WeightVector> {
    let mut seen: HashSet<WeightVector> = HashSet::new();
    let mut stack = vec![lambda.clone()];
    seen.insert(lambda.clone());
    while let Some(mu) = stack.pop() {
        for i in 0..rs.rank() {
            let mut cur = mu.clone();
            for _ in 0..mu.0[i].max(0) {
                cur = WeightVector(
                    cur.0
                        .iter()
                        .zip(&rs.cartan()[i])
                        .map(|(x, a)| x - a)
                        .collect(),
                );
                if seen.insert(cur.clone()) {
                    stack.push(cur.clone());
                }
            }
        }
    }
    seen
}

/// The line on which the weight is dominant and nonzero: the highest weight
/// of the representation attached to the left-end node.
pub fn top_line(rs: &RootSystemData) -> Result<DivisorClass> {
    let lines = enumerate_lines(rs.lattice());
    let mut tops = lines.iter().filter(|l| {
        let w = weight_of(rs, l);
        w.is_dominant() && !w.is_zero()
    });
    match (tops.next(), tops.next()) {
        (Some(l), None) => Ok(l.clone()),
        _ => Err(Error::Internal("no unique dominant line".into())),
    }
}

/// Weights of the line bundle sum: each line once, plus the zero weight
/// eight times on the E8 surface.
pub fn line_weight_multiset(rs: &RootSystemData) -> WeightMultiset {
    let lines = enumerate_lines(rs.lattice());
    let mut m: WeightMultiset = lines.iter().map(|l| weight_of(rs, l)).collect();
    let fam = rs.lattice().family();
    if fam.kind() == Kind::E && fam.n() == 8 {
        m.add(WeightVector::zero(rs.rank()), 8);
    }
    m
}

pub fn ruling_weight_multiset(rs: &RootSystemData) -> WeightMultiset {
    enumerate_rulings(rs.lattice())
        .iter()
        .map(|r| weight_of(rs, r))
        .collect()
}

/// Character of the symmetric square.
pub fn sym2_multiset(m: &WeightMultiset) -> WeightMultiset {
    let entries: Vec<(&WeightVector, u64)> = m.iter().collect();
    let mut out = WeightMultiset::new();
    for (i, &(mu, a)) in entries.iter().enumerate() {
        out.add(mu.add(&mu.0), a * (a + 1) / 2);
        for &(nu, b) in &entries[i + 1..] {
            out.add(mu.add(&nu.0), a * b);
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct Sym2Decomposition {
    pub sym2: WeightMultiset,
    pub v_part: WeightMultiset,
    pub w_part: WeightMultiset,
    pub expected_w: WeightMultiset,
    pub highest_weight: WeightVector,
}

impl Sym2Decomposition {
    pub fn matches(&self) -> bool {
        self.w_part == self.expected_w
    }
}

fn ruling_highest(rs: &RootSystemData) -> Result<WeightVector> {
    let lat = rs.lattice();
    let d = lat.class(&[("h", 1), ("l1", -1)])?;
    Ok(weight_of(rs, &d))
}

/// Splits the symmetric square of the line character as `W + V_{2 lambda}`
/// and builds the expected remainder `W` for the family.
pub fn decompose_sym2(rs: &RootSystemData) -> Result<Sym2Decomposition> {
    let lines = line_weight_multiset(rs);
    let sym2 = sym2_multiset(&lines);
    let lambda = weight_of(rs, &top_line(rs)?);
    let v_part = freudenthal(rs, &lambda.scaled(2))?;
    let w_part = sym2.checked_sub(&v_part)?;
    let fam = rs.lattice().family();
    let zero = WeightVector::zero(rs.rank());
    let expected_w = match (fam.kind(), fam.n()) {
        (Kind::A, _) => WeightMultiset::new(),
        (Kind::D, _) => std::iter::once(zero).collect(),
        (Kind::E, n) if n <= 6 => ruling_weight_multiset(rs),
        (Kind::E, 7) => {
            let mut w = ruling_weight_multiset(rs);
            w.add(zero, 7);
            w
        }
        _ => {
            let mut w = freudenthal(rs, &ruling_highest(rs)?)?;
            w.add(zero, 1);
            w
        }
    };
    Ok(Sym2Decomposition {
        sym2,
        v_part,
        w_part,
        expected_w,
        highest_weight: lambda,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RulingRelation {
    /// The weights of `h - l1` are exactly the ruling weights.
    Equal,
    /// Ruling weights plus the zero weight with the given multiplicity.
    EqualWithZero(u64),
    /// Rulings sit with multiplicity one inside a strictly larger character.
    StrictContainment,
}

#[derive(Debug, Clone)]
pub struct RulingCheck {
    pub relation: RulingRelation,
    pub rulings: usize,
    pub character_total: u64,
    pub holds: bool,
}

#[derive(Debug, Clone)]
pub struct WeightLemmaReport {
    pub top_line: DivisorClass,
    /// Weyl orbit of the top line equals the set of lines.
    pub orbit_is_lines: bool,
    /// Character of the top-line weight equals the line character.
    pub character_is_lines: bool,
    pub rulings: Option<RulingCheck>,
}

impl WeightLemmaReport {
    pub fn holds(&self) -> bool {
        self.orbit_is_lines
            && self.character_is_lines
            && self.rulings.as_ref().is_none_or(|r| r.holds)
    }
}

pub fn verify_weight_lemma(rs: &RootSystemData) -> Result<WeightLemmaReport> {
    let lat = rs.lattice();
    let top = top_line(rs)?;
    let lines = enumerate_lines(lat);
    let orbit_is_lines = weyl_orbit(rs, &top)? == lines.classes();
    let character_is_lines = freudenthal(rs, &weight_of(rs, &top))? == line_weight_multiset(rs);

    let fam = lat.family();
    let rulings = if fam.kind() == Kind::E {
        let pi = freudenthal(rs, &ruling_highest(rs)?)?;
        let ruling_weights = ruling_weight_multiset(rs);
        let rulings = enumerate_rulings(lat).len();
        let (relation, holds) = match fam.n() {
            n if n <= 6 => (RulingRelation::Equal, pi == ruling_weights),
            7 => {
                let mut expected = ruling_weights.clone();
                expected.add(WeightVector::zero(rs.rank()), 7);
                (RulingRelation::EqualWithZero(7), pi == expected)
            }
            _ => {
                let inside = ruling_weights
                    .iter()
                    .all(|(w, m)| m == 1 && pi.multiplicity(w) == 1);
                let injective = ruling_weights.total() as usize == rulings;
                (
                    RulingRelation::StrictContainment,
                    inside && injective && pi.total() > rulings as u64,
                )
            }
        };
        Some(RulingCheck {
            relation,
            rulings,
            character_total: pi.total(),
            holds,
        })
    } else {
        None
    };
    Ok(WeightLemmaReport {
        top_line: top,
        orbit_is_lines,
        character_is_lines,
        rulings,
    })
}
