use adesurf::cox::{self, CoxPresentation, SurfaceConfigD};
use adesurf::curves::{self, CurveKind};
use adesurf::flag::{self, format_polynomial, QuadricSystem};
use adesurf::roots::RootSystemData;
use adesurf::selftest;
use adesurf::weights::{self, weight_of, weyl_dim, WeightVector};
use adesurf::{BigRational, DivisorClass, IntersectionLattice, Kind, SurfaceFamily};
use serde_json::{json, Value};

use crate::config::RunConfig;
use crate::output::{CliError, Output, Table};

fn class(d: &DivisorClass) -> Value {
    json!(d.coords())
}

fn weight(w: &WeightVector) -> Value {
    json!(w.labels())
}

fn ratio(q: &BigRational) -> Value {
    Value::String(q.to_string())
}

fn lattice(family: SurfaceFamily) -> Result<IntersectionLattice, CliError> {
    Ok(IntersectionLattice::build(family)?)
}

fn surface_config(cfg: &RunConfig) -> Result<SurfaceConfigD, CliError> {
    let points = cfg
        .points
        .clone()
        .ok_or_else(|| CliError::Input(format!("{} needs --points", cfg.family)))?;
    Ok(SurfaceConfigD::new(points)?)
}

pub fn enumerate(family: SurfaceFamily, what: CurveKind) -> Result<Output, CliError> {
    let lat = lattice(family)?;
    let set = curves::enumerate(&lat, what);
    let bounds = curves::search_bounds(&lat, what);
    let mut out = Output::new("enumerate", Some(family));
    out.results.push(json!({
        "kind": what.name(),
        "count": set.len(),
        "basis": lat.labels(),
        "search_bounds": bounds.description,
        "classes": set.iter().map(class).collect::<Vec<_>>(),
    }));
    let mut table = Table::new(lat.labels().iter().cloned());
    for d in set.iter() {
        table.push(d.coords().iter());
    }
    out.table = Some(table);
    Ok(out)
}

pub fn verify_sym2(family: SurfaceFamily) -> Result<Output, CliError> {
    let rs = RootSystemData::new(&lattice(family)?)?;
    let d = weights::decompose_sym2(&rs)?;
    let mut out = Output::new("verify", Some(family));
    let (s, w, v) = (d.sym2.total(), d.w_part.total(), d.v_part.total());
    let dim = weyl_dim(&rs, &d.highest_weight.scaled(2))?;
    let dim =
        u64::try_from(&dim).map_err(|_| CliError::Failed("dimension overflows u64".into()))?;
    out.check(
        "dim V(2 lambda) by the Weyl formula",
        json!(v),
        json!(dim),
        dim == v,
    );
    out.check(
        "remainder equals W",
        json!(w),
        json!(d.expected_w.total()),
        d.matches(),
    );
    out.check(
        "remainder is Weyl-invariant",
        json!(d.w_part.is_weyl_invariant(&rs)),
        json!(true),
        d.w_part.is_weyl_invariant(&rs),
    );
    out.results.push(json!({
        "identity": format!("{s} = {w} + {v}"),
        "highest_weight": weight(&d.highest_weight),
        "zero_weight_in_w": d.w_part.zero_multiplicity(),
    }));
    let mut table = Table::new(["sym2", "w", "v"]);
    table.push([s, w, v]);
    out.table = Some(table);
    Ok(out)
}

pub fn verify_weights(family: SurfaceFamily) -> Result<Output, CliError> {
    let rs = RootSystemData::new(&lattice(family)?)?;
    let lat = rs.lattice();
    let report = weights::verify_weight_lemma(&rs)?;
    let lines = curves::enumerate_lines(lat);
    let mut out = Output::new("verify", Some(family));
    out.results.push(json!({
        "top_line": class(&report.top_line),
        "top_weight": weight(&weight_of(&rs, &report.top_line)),
        "type": rs.type_label().to_string(),
    }));
    out.check(
        "Weyl orbit of the top line equals the lines",
        json!(report.orbit_is_lines),
        json!(true),
        report.orbit_is_lines,
    );
    out.check(
        "line character is irreducible",
        json!(weights::line_weight_multiset(&rs).total()),
        json!(
            lines.len() as u64
                + if family.kind() == Kind::E && family.n() == 8 {
                    8
                } else {
                    0
                }
        ),
        report.character_is_lines,
    );
    if let Some(r) = &report.rulings {
        out.check(
            format!("character of h - l1 against rulings ({:?})", r.relation),
            json!(r.character_total),
            json!(r.rulings),
            r.holds,
        );
    }
    let mut table = Table::new(["check", "passed"]);
    for v in &out.results[1..] {
        table.push([
            v["check"].as_str().unwrap_or("").to_string(),
            v["passed"].to_string(),
        ]);
    }
    out.table = Some(table);
    Ok(out)
}

fn presentation_for(
    cfg: &RunConfig,
    lat: &IntersectionLattice,
) -> Result<CoxPresentation, CliError> {
    if cfg.needs_points() {
        Ok(cox::dn_ideal(lat, &surface_config(cfg)?)?)
    } else {
        Ok(cox::presentation(lat, None)?)
    }
}

pub fn verify_hilbert(cfg: &RunConfig) -> Result<Output, CliError> {
    let lat = lattice(cfg.family)?;
    let pres = presentation_for(cfg, &lat)?;
    let report = cox::verify_hilbert(&pres, &lat, cfg.max_degree)?;
    let mut out = Output::new("verify", Some(cfg.family));
    let mut table = Table::new(["class", "degree", "graded", "sections"]);
    for e in &report.entries {
        out.check(
            format!("class {}", lat.format_class(&e.class)),
            json!(e.graded),
            json!(e.sections),
            e.agrees(),
        );
        table.push([
            lat.format_class(&e.class),
            e.degree.to_string(),
            e.graded.to_string(),
            e.sections.to_string(),
        ]);
    }
    out.table = Some(table);
    Ok(out)
}

pub fn verify_census(family: SurfaceFamily) -> Result<Output, CliError> {
    let lat = lattice(family)?;
    let mut out = Output::new("verify", Some(family));
    let mut table = Table::new(["target", "monomials", "sections", "relations"]);
    let census = cox::ruling_census(&lat)?;
    for (r, c) in &census {
        table.push([
            lat.format_class(r),
            c.monomials.to_string(),
            c.sections.to_string(),
            c.relations.to_string(),
        ]);
        out.results.push(json!({
            "target": class(r),
            "monomials": c.monomials,
            "sections": c.sections,
            "relations": c.relations,
        }));
    }
    let total: u64 = census.iter().map(|(_, c)| c.relations).sum();
    let first = census.first().map_or(0, |(_, c)| c.relations);
    let uniform = census.iter().all(|(_, c)| c.relations == first);
    out.check(
        "total quadrics over all rulings",
        json!(total),
        json!(first * census.len() as u64),
        uniform,
    );
    if family.kind() == Kind::D {
        let ideal = cox::dn_ideal(&lat, &SurfaceConfigD::consecutive(family.n()))?;
        out.check(
            "census at f equals the ideal's relation count",
            json!(total),
            json!(ideal.relations.len()),
            total == ideal.relations.len() as u64,
        );
    }
    let lines = curves::enumerate_lines(&lat);
    let anti = lat.anticanonical_pullback();
    let extra = match (family.kind(), family.n()) {
        (Kind::E, 7) => Some(anti),
        (Kind::E, 8) => Some(anti.scaled(2)),
        _ => None,
    };
    if let Some(target) = extra {
        let c = cox::relation_census(&lat, &target, &lines)?;
        table.push([
            lat.format_class(&target),
            c.monomials.to_string(),
            c.sections.to_string(),
            c.relations.to_string(),
        ]);
        out.results.push(json!({
            "target": class(&target),
            "monomials": c.monomials,
            "sections": c.sections,
            "relations": c.relations,
        }));
    }
    out.table = Some(table);
    Ok(out)
}

pub fn verify_git(cfg: &RunConfig) -> Result<Output, CliError> {
    let lat = lattice(cfg.family)?;
    let lin = match cfg.family.kind() {
        Kind::D => lat.basis("f")?,
        Kind::A => lat.exceptional(1),
        Kind::E => {
            return Err(CliError::Input(format!(
                "no GIT linearization for {}",
                cfg.family
            )));
        }
    };
    let k = cfg.max_k;
    let expected: Vec<u64> = match cfg.family.kind() {
        Kind::D => (1..=k as u64 + 1).collect(),
        _ => vec![1; k + 1],
    };
    let hilbert = cox::git_hilbert(&lat, &lin, k)?;
    let mut out = Output::new("verify", Some(cfg.family));
    out.check(
        format!("Hilbert function along {}", lat.format_class(&lin)),
        json!(hilbert),
        json!(expected),
        hilbert == expected,
    );
    if cfg.points.is_some() || !cfg.needs_points() {
        let pres = presentation_for(cfg, &lat)?;
        let via = cox::git_hilbert_from_presentation(&pres, &lat, &lin, k)?;
        out.check(
            "Hilbert function of the quotient ring",
            json!(via),
            json!(hilbert),
            via == hilbert,
        );
        let rs = RootSystemData::new(&lat)?;
        let homogeneous = pres.is_well_formed(&lat) && pres.is_weight_homogeneous(&rs);
        out.check(
            "relations are Pic- and weight-homogeneous",
            json!(homogeneous),
            json!(true),
            homogeneous,
        );
    }
    let mut table = Table::new(["k", "dim"]);
    for (i, d) in hilbert.iter().enumerate() {
        table.push([i as u64, *d]);
    }
    out.table = Some(table);
    Ok(out)
}

fn quadric_json(sys: &QuadricSystem) -> Value {
    let names: Vec<&str> = sys.variables.iter().map(|v| v.name.as_str()).collect();
    json!({
        "variables": sys.variables.iter().map(|v| json!({
            "name": v.name,
            "class": class(&v.class),
            "weight": weight(&v.weight),
        })).collect::<Vec<_>>(),
        "quadrics": sys.quadrics.iter().enumerate().map(|(i, q)| json!({
            "text": sys.format_quadric(i),
            "class": sys.quadric_class(i).as_ref().map(class),
            "weight": sys.quadric_weight(i).as_ref().map(weight),
            "terms": q.iter().map(|t| json!({
                "coeff": ratio(&t.coeff),
                "monomial": t.monomial.iter().map(|&j| names[j]).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
        "substitution": sys.substitution.as_ref().map(|s| s.iter().map(|x| json!({
            "variable": names[x.variable],
            "scalar": ratio(&x.scalar),
            "target": x.target,
        })).collect::<Vec<_>>()),
        "homogeneous": sys.is_homogeneous(),
    })
}

fn presentation_json(p: &CoxPresentation) -> Value {
    let names: Vec<&str> = p.generators.iter().map(|g| g.name.as_str()).collect();
    json!({
        "generators": p.generators.iter().map(|g| json!({
            "name": g.name,
            "class": class(&g.class),
            "degree": g.degree,
        })).collect::<Vec<_>>(),
        "relations": p.relations.iter().map(|r| json!({
            "text": format_polynomial(&r.terms, &names),
            "class": class(&r.class),
            "terms": r.terms.iter().map(|t| json!({
                "coeff": ratio(&t.coeff),
                "monomial": t.monomial.iter().map(|&j| names[j]).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn quadrics(cfg: &RunConfig) -> Result<Output, CliError> {
    let fam = cfg.family;
    let lat = lattice(fam)?;
    let rs = RootSystemData::new(&lat)?;
    let mut out = Output::new("quadrics", Some(fam));
    let mut table = Table::new(["system", "polynomial"]);
    if fam.is_reducible() {
        let report = flag::tensor_factorization(&rs)?;
        out.results.push(json!({
            "left": report.left.iter().map(class).collect::<Vec<_>>(),
            "right": report.right.iter().map(class).collect::<Vec<_>>(),
            "product_weights": report.product.total(),
            "line_weights": report.lines.total(),
            "segre": report.segre.as_ref().map(quadric_json),
        }));
        out.check(
            format!(
                "line weights factor as {} x {}",
                report.left.len(),
                report.right.len()
            ),
            json!(report.product.total()),
            json!(report.lines.total()),
            report.holds(),
        );
        if let Some(s) = &report.segre {
            table.push(["segre".to_string(), s.format_quadric(0)]);
        }
    } else if fam.kind() == Kind::A {
        let report = flag::an_report(&rs, cfg.max_degree)?;
        out.results.push(json!({
            "generators": report.generators,
            "relations": report.relations,
            "weights": report.weights.iter().map(weight).collect::<Vec<_>>(),
        }));
        for d in &report.degrees {
            out.check(
                format!("degree {} dimension", d.degree),
                json!(d.graded),
                json!(d.expected),
                d.graded == d.expected,
            );
        }
        out.check(
            "generator weights distinct",
            json!(report.weights_distinct()),
            json!(true),
            report.weights_distinct(),
        );
    } else if fam.kind() == Kind::D {
        let points = surface_config(cfg)?;
        let e = flag::embed_cox_into_cone_d(&rs, &points)?;
        let names: Vec<&str> = e
            .presentation
            .generators
            .iter()
            .map(|g| g.name.as_str())
            .collect();
        for r in &e.presentation.relations {
            table.push(["cox".to_string(), format_polynomial(&r.terms, &names)]);
        }
        table.push(["cone".to_string(), e.system.format_quadric(0)]);
        out.results.push(json!({
            "points": points.points().iter().map(ratio).collect::<Vec<_>>(),
            "cox": presentation_json(&e.presentation),
            "cone": quadric_json(&e.system),
            "coefficients": e.coefficients.iter().map(ratio).collect::<Vec<_>>(),
        }));
        out.check(
            "coefficients are nonzero and solve both conditions",
            json!(e.conditions_hold(&points)),
            json!(true),
            e.conditions_hold(&points),
        );
        out.check(
            "pulled-back quadric lies in the ideal (rank before, after)",
            json!(e.rank_after),
            json!(e.rank_before),
            e.certified(),
        );
    } else {
        return Err(CliError::Input(format!("no explicit quadrics for {fam}")));
    }
    out.table = Some(table);
    Ok(out)
}

pub fn selftest() -> Output {
    let report = selftest::run();
    let mut out = Output::new("selftest", None);
    let mut table = Table::new(["criterion", "name", "status", "checks"]);
    for c in &report.criteria {
        out.passed &= c.passed();
        table.push([
            c.id.to_string(),
            c.name.to_string(),
            if c.passed() { "PASS" } else { "FAIL" }.to_string(),
            c.checks.to_string(),
        ]);
        out.results.push(json!({
            "criterion": c.id,
            "name": c.name,
            "passed": c.passed(),
            "checks": c.checks,
            "details": c.details,
            "failures": c.failures,
        }));
    }
    out.table = Some(table);
    out
}

pub fn selftest_text(out: &Output) -> String {
    let mut s = String::new();
    for r in &out.results {
        let status = if r["passed"].as_bool() == Some(true) {
            "PASS"
        } else {
            "FAIL"
        };
        s.push_str(&format!(
            "criterion {}: {} [{}] ({} checks)\n",
            r["criterion"],
            status,
            r["name"].as_str().unwrap_or(""),
            r["checks"]
        ));
        for f in r["failures"].as_array().into_iter().flatten() {
            s.push_str(&format!("    failed: {}\n", f.as_str().unwrap_or("")));
        }
    }
    let passed = out
        .results
        .iter()
        .filter(|r| r["passed"].as_bool() == Some(true))
        .count();
    s.push_str(&format!("{passed}/{} criteria passed\n", out.results.len()));
    s
}
