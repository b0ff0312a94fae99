//! The full invariant suite as a library routine: nine numbered criteria run
//! over every family up to E8, with the lattice construction injectable so a
//! deliberately broken lattice can be shown to fail.

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cox::{self, rational, SurfaceConfigD};
use crate::curves::{self, enumerate_lines, enumerate_rulings, search_bounds, ClassSet, CurveKind};
use crate::error::{Error, Result};
use crate::flag;
use crate::lattice::{DivisorClass, IntersectionLattice, Kind, SurfaceFamily};
use crate::roots::{all_roots, reflect, weyl_orbit, RootSystemData};
use crate::weights::{
    decompose_sym2, freudenthal, line_weight_multiset, reflect_weight, ruling_weight_multiset,
    sym2_multiset, verify_weight_lemma, weight_of, WeightMultiset, WeightVector,
};

pub type LatticeBuilder<'a> = &'a dyn Fn(SurfaceFamily) -> Result<IntersectionLattice>;

pub const CRITERIA: [(u8, &str); 9] = [
    (1, "enumeration counts"),
    (2, "Sym2 decomposition"),
    (3, "weight lemma"),
    (4, "D-family Cox ring"),
    (5, "quadric census"),
    (6, "D-family flag embedding"),
    (7, "torus and GIT"),
    (8, "E3/D2 tensor factorizations"),
    (9, "oracle equivalences"),
];

/// Number of random (root, x, y) triples in the reflection check.
pub const REFLECTION_SAMPLES: usize = 10_000;
const SEED: u64 = 0x5eed_ade5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
    pub details: Vec<String>,
}

impl CriterionResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn status_line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        format!(
            "criterion {}: {} [{}] ({} checks)",
            self.id, status, self.name, self.checks
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelftestReport {
    pub criteria: Vec<CriterionResult>,
}

impl SelftestReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(CriterionResult::passed)
    }
}

impl fmt::Display for SelftestReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.criteria {
            writeln!(f, "{}", c.status_line())?;
            for d in &c.details {
                writeln!(f, "    {d}")?;
            }
            for e in &c.failures {
                writeln!(f, "    failed: {e}")?;
            }
        }
        let passed = self.criteria.iter().filter(|c| c.passed()).count();
        write!(f, "{passed}/{} criteria passed", self.criteria.len())
    }
}

struct Checker<'a> {
    build: LatticeBuilder<'a>,
    checks: usize,
    failures: Vec<String>,
    details: Vec<String>,
}

impl Checker<'_> {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        self.checks += 1;
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn eq<T: PartialEq + fmt::Debug>(&mut self, what: &str, got: T, want: T) {
        self.checks += 1;
        if got != want {
            self.failures
                .push(format!("{what}: got {got:?}, expected {want:?}"));
        }
    }

    fn note(&mut self, s: String) {
        self.details.push(s);
    }

    fn lattice(&self, kind: Kind, n: usize) -> Result<IntersectionLattice> {
        (self.build)(SurfaceFamily::new(kind, n)?)
    }

    fn roots(&self, kind: Kind, n: usize) -> Result<RootSystemData> {
        RootSystemData::new(&self.lattice(kind, n)?)
    }
}

/// The families exercised by the suite.
pub fn families() -> Vec<SurfaceFamily> {
    let mut out = Vec::new();
    for n in 1..=7 {
        out.push(SurfaceFamily::new(Kind::A, n).expect("valid"));
    }
    for n in 2..=8 {
        out.push(SurfaceFamily::new(Kind::D, n).expect("valid"));
    }
    for n in 3..=8 {
        out.push(SurfaceFamily::new(Kind::E, n).expect("valid"));
    }
    out
}

pub fn default_builder(family: SurfaceFamily) -> Result<IntersectionLattice> {
    IntersectionLattice::build(family)
}

pub fn run() -> SelftestReport {
    run_with(&default_builder)
}

pub fn run_with(build: LatticeBuilder<'_>) -> SelftestReport {
    SelftestReport {
        criteria: CRITERIA
            .iter()
            .map(|&(id, _)| run_criterion(id, build))
            .collect(),
    }
}

pub fn run_criterion(id: u8, build: LatticeBuilder<'_>) -> CriterionResult {
    let name = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .map_or("unknown criterion", |c| c.1);
    let mut ck = Checker {
        build,
        checks: 0,
        failures: Vec::new(),
        details: Vec::new(),
    };
    let outcome = match id {
        1 => enumeration_counts(&mut ck),
        2 => sym2_identities(&mut ck),
        3 => weight_lemma(&mut ck),
        4 => dn_cox_ring(&mut ck),
        5 => quadric_census(&mut ck),
        6 => flag_embedding(&mut ck),
        7 => torus_and_git(&mut ck),
        8 => tensor_factorizations(&mut ck),
        9 => oracles(&mut ck),
        _ => Err(Error::Internal(format!("no criterion {id}"))),
    };
    if let Err(e) = outcome {
        ck.failures.push(format!("error: {e}"));
    }
    CriterionResult {
        id,
        name,
        checks: ck.checks,
        failures: ck.failures,
        details: ck.details,
    }
}

fn enumeration_counts(ck: &mut Checker) -> Result<()> {
    let e_lines = [10, 16, 27, 56, 240];
    let e_rulings = [5, 10, 27, 126, 2160];
    for (k, n) in (4..=8).enumerate() {
        let lat = ck.lattice(Kind::E, n)?;
        ck.eq(
            &format!("E{n} lines"),
            enumerate_lines(&lat).len(),
            e_lines[k],
        );
        ck.eq(
            &format!("E{n} rulings"),
            enumerate_rulings(&lat).len(),
            e_rulings[k],
        );
    }
    for (n, roots) in [(6, 72), (7, 126), (8, 240)] {
        let lat = ck.lattice(Kind::E, n)?;
        ck.eq(
            &format!("E{n} roots"),
            curves::enumerate_roots(&lat).len(),
            roots,
        );
    }
    for n in 2..=8 {
        let lat = ck.lattice(Kind::D, n)?;
        ck.eq(&format!("D{n} lines"), enumerate_lines(&lat).len(), 2 * n);
        let rulings = enumerate_rulings(&lat);
        ck.eq(
            &format!("D{n} rulings"),
            rulings.classes(),
            &[lat.basis("f")?][..],
        );
    }
    for n in 1..=7 {
        let lat = ck.lattice(Kind::A, n)?;
        ck.eq(&format!("A{n} lines"), enumerate_lines(&lat).len(), n + 1);
    }
    let rs = ck.roots(Kind::E, 8)?;
    let m = line_weight_multiset(&rs);
    ck.eq("E8 line character total", m.total(), 248);
    ck.eq("E8 zero weight multiplicity", m.zero_multiplicity(), 8);
    ck.note(format!("E8: 240 lines + 8 zero weights = {}", m.total()));
    Ok(())
}

fn sym2_identities(ck: &mut Checker) -> Result<()> {
    let totals = [
        (4, 55, 5, 50),
        (5, 136, 10, 126),
        (6, 378, 27, 351),
        (7, 1596, 133, 1463),
        (8, 30876, 3876, 27000),
    ];
    for (n, s, w, v) in totals {
        let rs = ck.roots(Kind::E, n)?;
        let d = decompose_sym2(&rs)?;
        ck.eq(
            &format!("E{n} Sym2 = W + V"),
            (d.sym2.total(), d.w_part.total(), d.v_part.total()),
            (s, w, v),
        );
        ck.check(
            d.matches(),
            format!("E{n} remainder differs from the expected W"),
        );
        let zero = WeightVector::zero(rs.rank());
        let expected = match n {
            7 => {
                let mut m = ruling_weight_multiset(&rs);
                m.add(zero, 7);
                m
            }
            8 => {
                let lat = rs.lattice();
                let mut m =
                    freudenthal(&rs, &weight_of(&rs, &lat.class(&[("h", 1), ("l1", -1)])?))?;
                ck.eq("E8 adjacent character", m.total(), 3875);
                m.add(zero, 1);
                m
            }
            _ => ruling_weight_multiset(&rs),
        };
        ck.check(
            d.w_part == expected,
            format!("E{n} remainder is not the ruling character"),
        );
        ck.note(format!("E{n}: {s} = {w} + {v}"));
    }
    for n in 2..=8 {
        let rs = ck.roots(Kind::D, n)?;
        let d = decompose_sym2(&rs)?;
        let zero: WeightMultiset = std::iter::once(WeightVector::zero(rs.rank())).collect();
        ck.check(
            d.w_part == zero,
            format!("D{n} remainder is not a single zero weight"),
        );
    }
    for n in 1..=7 {
        let rs = ck.roots(Kind::A, n)?;
        let d = decompose_sym2(&rs)?;
        ck.check(d.w_part.is_empty(), format!("A{n} remainder is not empty"));
    }
    Ok(())
}

fn weight_lemma(ck: &mut Checker) -> Result<()> {
    for fam in families() {
        let rs = ck.roots(fam.kind(), fam.n())?;
        let lat = rs.lattice();
        let top = lat.exceptional(if fam.kind() == Kind::A {
            fam.n() + 1
        } else {
            fam.n()
        });
        let orbit = weyl_orbit(&rs, &top)?;
        ck.check(
            orbit == enumerate_lines(lat).classes(),
            format!("{fam}: orbit of the top line is not the line set"),
        );
        let report = verify_weight_lemma(&rs)?;
        ck.check(report.holds(), format!("{fam}: weight lemma fails"));
        if let Some(r) = &report.rulings {
            ck.note(format!(
                "{fam}: {} rulings, character of h-l1 has {} weights",
                r.rulings, r.character_total
            ));
            if fam.n() == 8 {
                ck.check(
                    r.rulings == 2160 && r.character_total > 2160,
                    "E8: rulings are not strictly contained",
                );
            }
        }
    }
    Ok(())
}

fn sample_configs(n: usize) -> Vec<SurfaceConfigD> {
    let half = BigRational::new(1.into(), 2.into());
    let third = BigRational::new((-7).into(), 3.into());
    let mut spread: Vec<BigRational> = vec![
        rational(0),
        half,
        third,
        rational(5),
        rational(-11),
        rational(13),
    ];
    spread.truncate(n);
    vec![
        SurfaceConfigD::consecutive(n),
        SurfaceConfigD::new(spread).expect("distinct"),
    ]
}

fn dn_cox_ring(ck: &mut Checker) -> Result<()> {
    for n in 3..=5 {
        let lat = ck.lattice(Kind::D, n)?;
        for cfg in sample_configs(n) {
            let p = cox::dn_ideal(&lat, &cfg)?;
            ck.eq(&format!("D{n} generators"), p.generators.len(), 2 * n);
            ck.eq(&format!("D{n} relations"), p.relations.len(), n - 2);
            let nonzero = p
                .relations
                .iter()
                .flat_map(|r| &r.terms)
                .all(|t| !t.coeff.is_zero());
            ck.check(nonzero, format!("D{n}: zero coefficient in a relation"));
        }
        let p = cox::dn_ideal(&lat, &SurfaceConfigD::consecutive(n))?;
        let report = cox::verify_hilbert(&p, &lat, 6)?;
        ck.check(
            report.passes(),
            format!("D{n}: {} Hilbert mismatches", report.mismatches().len()),
        );
        ck.note(format!(
            "D{n}: {} classes of degree <= 6 agree",
            report.entries.len()
        ));
        let f = lat.basis("f")?;
        for a0 in 0..=6 {
            let dim = cox::graded_piece_dim(&p, &lat, &f.scaled(a0))?;
            ck.eq(&format!("D{n} dim at {a0}f"), dim, a0 as u64 + 1);
        }
    }
    Ok(())
}

fn quadric_census(ck: &mut Checker) -> Result<()> {
    for (n, per) in [(4, 1), (5, 2), (6, 3), (7, 4)] {
        let lat = ck.lattice(Kind::E, n)?;
        let census = cox::ruling_census(&lat)?;
        let all_equal = census.iter().all(|(_, c)| c.relations == per);
        ck.check(
            all_equal,
            format!("E{n}: per-ruling relation count is not {per}"),
        );
        let total: u64 = census.iter().map(|(_, c)| c.relations).sum();
        ck.note(format!("E{n}: {} rulings x {per} = {total}", census.len()));
        if n == 6 {
            ck.eq("E6 total quadrics", total, 81);
        }
        if n == 4 {
            ck.eq("E4 total quadrics", total, 5);
        }
    }
    let e7 = ck.lattice(Kind::E, 7)?;
    let c = cox::relation_census(&e7, &e7.anticanonical_pullback(), &enumerate_lines(&e7))?;
    ck.eq(
        "E7 census at -K+C",
        (c.monomials, c.sections, c.relations),
        (28, 3, 25),
    );
    let e8 = ck.lattice(Kind::E, 8)?;
    let target = e8.anticanonical_pullback().scaled(2);
    let c = cox::relation_census(&e8, &target, &enumerate_lines(&e8))?;
    ck.eq(
        "E8 census at -2K+2C",
        (c.monomials, c.sections, c.relations),
        (123, 4, 119),
    );
    Ok(())
}

fn flag_embedding(ck: &mut Checker) -> Result<()> {
    for n in 3..=5 {
        let rs = ck.roots(Kind::D, n)?;
        let cfg = SurfaceConfigD::consecutive(n);
        let e = flag::embed_cox_into_cone_d(&rs, &cfg)?;
        ck.check(
            e.conditions_hold(&cfg),
            format!("D{n}: coefficients fail the linear conditions"),
        );
        ck.check(
            e.certified(),
            format!("D{n}: pulled-back quadric is not in the ideal"),
        );
        let c: Vec<String> = e.coefficients.iter().map(|x| x.to_string()).collect();
        ck.note(format!(
            "D{n}: c = ({}), rank {} -> {}",
            c.join(", "),
            e.rank_before,
            e.rank_after
        ));
    }
    Ok(())
}

fn torus_and_git(ck: &mut Checker) -> Result<()> {
    for n in 3..=5 {
        let rs = ck.roots(Kind::D, n)?;
        let lat = rs.lattice();
        for cfg in sample_configs(n) {
            let p = cox::dn_ideal(lat, &cfg)?;
            ck.check(
                p.is_well_formed(lat),
                format!("D{n}: relation not Pic-homogeneous"),
            );
            ck.check(
                p.is_weight_homogeneous(&rs),
                format!("D{n}: relation not weight-homogeneous"),
            );
        }
        let cone = flag::cone_quadric_d(&rs)?;
        ck.check(
            cone.is_homogeneous(),
            format!("D{n}: cone quadric not homogeneous"),
        );
        let f = lat.basis("f")?;
        let p = cox::dn_ideal(lat, &SurfaceConfigD::consecutive(n))?;
        let from_ring = cox::git_hilbert_from_presentation(&p, lat, &f, 5)?;
        ck.eq(
            &format!("D{n} GIT Hilbert from the ring"),
            from_ring,
            (1..=6).collect::<Vec<u64>>(),
        );
        let tc = cox::torus_character(&rs, &f)?;
        ck.check(tc.weight.is_zero(), format!("D{n}: f has nonzero weight"));
    }
    for n in 2..=8 {
        let lat = ck.lattice(Kind::D, n)?;
        let f = lat.basis("f")?;
        ck.eq(
            &format!("D{n} GIT Hilbert"),
            cox::git_hilbert(&lat, &f, 5)?,
            (1..=6).collect::<Vec<u64>>(),
        );
    }
    for n in 1..=7 {
        let lat = ck.lattice(Kind::A, n)?;
        let line = lat.exceptional(1);
        ck.eq(
            &format!("A{n} GIT Hilbert"),
            cox::git_hilbert(&lat, &line, 5)?,
            vec![1u64; 6],
        );
        let rs = RootSystemData::new(&lat)?;
        let an = flag::an_report(&rs, 3)?;
        ck.check(
            an.holds(),
            format!("A{n}: Cox ring is not the coordinate ring of projective space"),
        );
    }
    Ok(())
}

fn tensor_factorizations(ck: &mut Checker) -> Result<()> {
    let e3 = flag::tensor_factorization(&ck.roots(Kind::E, 3)?)?;
    ck.eq("E3 product size", e3.product.total(), 6);
    ck.check(e3.holds(), "E3: line weights do not factor as 3 x 2");
    let rs = ck.roots(Kind::D, 2)?;
    let d2 = flag::tensor_factorization(&rs)?;
    ck.eq("D2 product size", d2.product.total(), 4);
    ck.check(d2.holds(), "D2: line weights do not factor as 2 x 2");
    let segre = d2
        .segre
        .ok_or_else(|| Error::Internal("missing Segre quadric".into()))?;
    ck.eq(
        "D2 Segre class",
        segre.quadric_class(0),
        Some(rs.lattice().basis("f")?),
    );
    ck.note(format!("D2 Segre quadric: {}", segre.format_quadric(0)));
    Ok(())
}

/// Weights of a minuscule module: the Weyl orbit of `omega` computed on
/// Dynkin labels alone.
pub fn minuscule_character(rs: &RootSystemData, omega: &WeightVector) -> WeightMultiset {
    let mut seen: BTreeSet<WeightVector> = BTreeSet::new();
    let mut stack = vec![omega.clone()];
    while let Some(w) = stack.pop() {
        if !seen.insert(w.clone()) {
            continue;
        }
        for i in 0..rs.rank() {
            stack.push(reflect_weight(rs, &w, i));
        }
    }
    seen.into_iter().collect()
}

/// Every integer vector with coordinates in `[-radius, radius]` solving the
/// class equations for `kind`.
pub fn naive_search(lat: &IntersectionLattice, kind: CurveKind, radius: i64) -> ClassSet {
    let r = lat.rank();
    let mut found = Vec::new();
    let mut coords = vec![-radius; r];
    loop {
        let d = DivisorClass::new(coords.clone());
        if curves::satisfies(lat, &d, kind) {
            found.push(d);
        }
        let mut i = 0;
        while i < r {
            if coords[i] < radius {
                coords[i] += 1;
                break;
            }
            coords[i] = -radius;
            i += 1;
        }
        if i == r {
            break;
        }
    }
    ClassSet::new(kind, found)
}

/// Twice the largest coordinate the analytic search bounds allow.
pub fn doubled_radius(lat: &IntersectionLattice, kind: CurveKind) -> i64 {
    let (q, _) = kind.numerics();
    let lead = search_bounds(lat, kind)
        .leading
        .map_or(0, |(lo, hi)| lo.abs().max(hi.abs()));
    let tail = curves::isqrt(lead * lead - q);
    2 * lead.max(tail).max(1)
}

fn oracles(ck: &mut Checker) -> Result<()> {
    // Sym2 of the defining module against Freudenthal.
    for (kind, n) in [(Kind::A, 1), (Kind::A, 2), (Kind::A, 3), (Kind::D, 3)] {
        let rs = ck.roots(kind, n)?;
        let mut omega = vec![0; rs.rank()];
        omega[rs.left_node()] = 1;
        let omega = WeightVector::new(omega);
        let v = minuscule_character(&rs, &omega);
        let explicit = sym2_multiset(&v);
        let mut via = freudenthal(&rs, &omega.scaled(2))?;
        if kind == Kind::D {
            via.add(WeightVector::zero(rs.rank()), 1);
        }
        ck.check(
            explicit == via,
            format!("{kind}{n}: Sym2 of the defining module disagrees"),
        );
        ck.check(
            v == line_weight_multiset(&rs),
            format!("{kind}{n}: defining module is not the line character"),
        );
    }

    // Enumeration against a naive box search.
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
        let lat = ck.lattice(kind, n)?;
        for ckind in [CurveKind::Roots, CurveKind::Lines, CurveKind::Rulings] {
            let radius = doubled_radius(&lat, ckind);
            let naive = naive_search(&lat, ckind, radius);
            ck.check(
                naive == curves::enumerate(&lat, ckind),
                format!("{kind}{n} {ckind}: enumeration differs from the box search"),
            );
        }
    }

    let d3 = ck.roots(Kind::D, 3)?;
    ck.eq("D3 type", d3.type_label().components(), &[(Kind::A, 3)][..]);

    // Weyl invariance of every character in play.
    for fam in families() {
        let rs = ck.roots(fam.kind(), fam.n())?;
        let d = decompose_sym2(&rs)?;
        let all = [
            line_weight_multiset(&rs),
            ruling_weight_multiset(&rs),
            d.sym2,
            d.v_part,
            d.w_part,
        ];
        ck.check(
            all.iter().all(|m| m.is_weyl_invariant(&rs)),
            format!("{fam}: character not Weyl-invariant"),
        );
    }

    // Reflections are isometries.
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut pool = Vec::new();
    for fam in families() {
        let rs = ck.roots(fam.kind(), fam.n())?;
        let roots = all_roots(&rs);
        if !roots.is_empty() {
            pool.push((rs.lattice().clone(), roots));
        }
    }
    let mut bad = 0usize;
    for _ in 0..REFLECTION_SAMPLES {
        let (lat, roots) = &pool[rng.gen_range(0..pool.len())];
        let alpha = &roots.classes()[rng.gen_range(0..roots.len())];
        let mut random =
            || DivisorClass::new((0..lat.rank()).map(|_| rng.gen_range(-6..=6)).collect());
        let x = random();
        let y = random();
        let sx = reflect(lat, &x, alpha)?;
        let sy = reflect(lat, &y, alpha)?;
        if lat.pair(&sx, &sy)? != lat.pair(&x, &y)? || reflect(lat, &sx, alpha)? != x {
            bad += 1;
        }
    }
    ck.eq("reflections breaking the form", bad, 0);
    ck.note(format!(
        "{REFLECTION_SAMPLES} random reflection pairs checked"
    ));
    Ok(())
}

/// One line per criterion, for the acceptance harness and the CLI.
pub fn summary(report: &SelftestReport) -> String {
    let mut out = String::new();
    for c in &report.criteria {
        let _ = writeln!(out, "{}", c.status_line());
    }
    out
}
