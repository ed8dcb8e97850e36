//! One function per subcommand. Each returns the report body; `main`
//! fills in timing, digest and exit code.

use serde::Serialize;
use serde_json::{json, Value};

use helly_core::certificate::Certificate;
use helly_core::constructions::{
    generate_figure1, generate_planar, generate_simplex_family, planar_lower_bounds, simplex_lower_bounds,
    verify_relint_property,
};
use helly_core::geometry::{intersect_refs, Intersection, Polyhedron};
use helly_core::helly::{
    check_ch, dichotomy_report, fractional_two_color_search, generic_line_class, intersecting_class,
    theorem_main_d2, two_color_lemma, BetaFormula, BoundFormulas, ColoredFamily, DichotomyOutcome,
};
use helly_core::hypergraph::{
    duality_report, line_cover_number, nu_star, piercing_number, CoverResult, Hypergraph, Payload,
};
use helly_core::rational::{parse_rational, Rational};
use helly_core::{Budget, Error};

use crate::document::{ConstructionDocument, FamilyDocument, ReportDocument, Status};

pub struct Outcome {
    pub status: Status,
    pub results: Value,
    pub certificates: Vec<Certificate>,
    pub upper_bound_only: Vec<String>,
    pub log: Vec<String>,
}

impl Outcome {
    fn new(status: Status, results: Value) -> Self {
        Outcome {
            status,
            results,
            certificates: Vec::new(),
            upper_bound_only: Vec::new(),
            log: Vec::new(),
        }
    }

    fn verified(results: Value) -> Self {
        Outcome::new(Status::Verified, results)
    }

    fn refuted(results: Value) -> Self {
        Outcome::new(Status::Refuted, results)
    }
}

pub enum Failure {
    Input(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    pub fn status(&self) -> Status {
        match self {
            Failure::Input(_) => Status::InputError,
            Failure::Core(e) => match e {
                Error::Scale { .. } | Error::RetriesExhausted { .. } | Error::Generation(_) => Status::Scale,
                Error::DisjointPair { .. }
                | Error::CommonPoint { .. }
                | Error::Precondition(_)
                | Error::TheoremViolation(_) => Status::Refuted,
                _ => Status::InputError,
            },
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Input(m) => m.clone(),
            Failure::Core(e) => e.to_string(),
        }
    }
}

pub type CmdResult = Result<Outcome, Failure>;

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report values serialize")
}

pub fn parse_json<T: serde::de::DeserializeOwned>(bytes: &[u8], what: &str) -> Result<T, Failure> {
    serde_json::from_slice(bytes).map_err(|e| Failure::Input(format!("malformed {what}: {e}")))
}

pub fn load_family(bytes: &[u8]) -> Result<(ColoredFamily, Vec<String>), Failure> {
    let doc: FamilyDocument = parse_json(bytes, "family document")?;
    Ok((doc.to_family()?, doc.labels()))
}

fn pick_sets(fam: &ColoredFamily, class: Option<usize>) -> Result<Vec<Polyhedron>, Failure> {
    match class {
        None => Ok(fam.all_sets()),
        Some(c) => fam
            .classes
            .get(c)
            .cloned()
            .ok_or_else(|| Failure::Input(format!("class {c} does not exist"))),
    }
}

fn emptiness(sets: Vec<Polyhedron>) -> Result<Option<Certificate>, Failure> {
    let refs: Vec<&Polyhedron> = sets.iter().collect();
    Ok(match intersect_refs(&refs)? {
        Intersection::Empty { certificate } => Some(Certificate::Emptiness { sets, certificate }),
        Intersection::Common { .. } => None,
    })
}

/// Certificates for a cover number: the witness objects meet every set,
/// the witness hits every hypergraph edge, and a fractional matching bounds
/// the number from below.
fn cover_certificates(sets: &[Polyhedron], r: &CoverResult, out: &mut Outcome, label: &str) -> Result<(), Failure> {
    out.certificates.push(Certificate::Transversal {
        sets: sets.to_vec(),
        objects: r.cover.clone(),
    });
    out.certificates.push(Certificate::HypergraphTransversal {
        hypergraph: strip(&r.hypergraph),
        transversal: r.transversal.clone(),
    });
    if !r.hypergraph.edges.is_empty() {
        out.certificates.push(Certificate::FractionalMatching {
            hypergraph: strip(&r.hypergraph),
            result: nu_star(&r.hypergraph)?,
        });
    }
    if r.transversal.upper_bound_only || !r.complete {
        out.upper_bound_only.push(label.to_string());
    }
    Ok(())
}

fn strip(h: &Hypergraph) -> Hypergraph {
    Hypergraph {
        vertex_count: h.vertex_count,
        edges: h.edges.clone(),
        vertex_payload: None,
    }
}

fn cover_summary(r: &CoverResult) -> Value {
    json!({
        "value": r.transversal.tau,
        "exact": r.complete && !r.transversal.upper_bound_only,
        "candidates": r.hypergraph.vertex_count,
        "cover": to_value(&r.cover),
        "search": to_value(&r.transversal.record),
    })
}

pub fn check_ch_cmd(fam: &ColoredFamily, budget: &Budget) -> CmdResult {
    let r = check_ch(fam, budget)?;
    let mut out = if r.holds {
        Outcome::verified(to_value(&r))
    } else {
        Outcome::refuted(to_value(&r))
    };
    if let Some(tuple) = &r.violating_rainbow {
        let sets = tuple.iter().map(|&(c, i)| fam.classes[c][i].clone()).collect();
        out.certificates.extend(emptiness(sets)?);
    }
    Ok(out)
}

pub fn intersecting_class_cmd(fam: &ColoredFamily, budget: &Budget) -> CmdResult {
    let ch = check_ch(fam, budget)?;
    if !ch.holds {
        let mut out = Outcome::refuted(json!({ "colorful_helly": to_value(&ch) }));
        let tuple = ch.violating_rainbow.unwrap_or_default();
        out.certificates
            .extend(emptiness(tuple.iter().map(|&(c, i)| fam.classes[c][i].clone()).collect())?);
        return Ok(out);
    }
    let (class, point) = intersecting_class(fam, budget)?;
    let mut out = Outcome::verified(json!({ "class": class, "point": to_value(&point) }));
    out.certificates.push(Certificate::CommonPoint {
        sets: fam.classes[class].clone(),
        point,
    });
    Ok(out)
}

pub fn pierce_cmd(fam: &ColoredFamily, class: Option<usize>, budget: &Budget) -> CmdResult {
    let sets = pick_sets(fam, class)?;
    let r = piercing_number(&sets, budget)?;
    let mut out = Outcome::verified(json!({ "class": class, "piercing_number": cover_summary(&r) }));
    cover_certificates(&sets, &r, &mut out, "piercing_number")?;
    Ok(out)
}

pub fn line_cover_cmd(fam: &ColoredFamily, class: Option<usize>, budget: &Budget) -> CmdResult {
    let sets = pick_sets(fam, class)?;
    let r = line_cover_number(&sets, budget)?;
    let mut out = Outcome::verified(json!({ "class": class, "line_cover_number": cover_summary(&r) }));
    cover_certificates(&sets, &r, &mut out, "line_cover_number")?;
    Ok(out)
}

fn pair_refutation(fam: &ColoredFamily, first: (usize, usize), second: (usize, usize), e: &Error) -> CmdResult {
    let mut out = Outcome::refuted(json!({ "disjoint_pair": [first, second], "reason": e.to_string() }));
    let sets = vec![fam.classes[first.0][first.1].clone(), fam.classes[second.0][second.1].clone()];
    out.certificates.extend(emptiness(sets)?);
    Ok(out)
}

fn dichotomy_outcome(fam: &ColoredFamily, outcome: DichotomyOutcome) -> Outcome {
    let mut out = Outcome::verified(json!({ "outcome": to_value(&outcome) }));
    if let DichotomyOutcome::HyperplaneCover { separation, .. } = &outcome {
        out.certificates.push(Certificate::SeparatingHalfspaces {
            separation: separation.clone(),
        });
    }
    if matches!(outcome, DichotomyOutcome::Unresolved { .. }) {
        out.status = Status::Refuted;
    }
    out.certificates.push(Certificate::Dichotomy {
        classes: fam.classes.clone(),
        outcome,
    });
    out
}

fn two_classes(fam: &ColoredFamily) -> Result<(), Failure> {
    if fam.class_count() != 2 {
        return Err(Failure::Input(format!("expected 2 color classes, found {}", fam.class_count())));
    }
    Ok(())
}

pub fn two_color_cmd(fam: &ColoredFamily) -> CmdResult {
    two_classes(fam)?;
    match two_color_lemma(&fam.classes[0], &fam.classes[1]) {
        Ok(o) => Ok(dichotomy_outcome(fam, o)),
        Err(e @ Error::DisjointPair { first, second }) => pair_refutation(fam, first, second, &e),
        Err(e) => Err(e.into()),
    }
}

pub fn d2_dichotomy_cmd(fam: &ColoredFamily) -> CmdResult {
    two_classes(fam)?;
    match theorem_main_d2(fam) {
        Ok(o) => Ok(dichotomy_outcome(fam, o)),
        Err(e @ Error::DisjointPair { first, second }) => pair_refutation(fam, first, second, &e),
        Err(e) => Err(e.into()),
    }
}

pub fn dichotomy_report_cmd(fam: &ColoredFamily, f_budget: usize, g_budget: usize, budget: &Budget) -> CmdResult {
    let r = dichotomy_report(fam, f_budget, g_budget, budget)?;
    let any = r.satisfied().next().is_some();
    let mut out = Outcome::verified(to_value(&r));
    out.log.push(format!("{} of {} splits satisfied", r.satisfied().count(), r.entries.len()));
    if !any {
        out.status = Status::Refuted;
    }
    for (i, e) in r.entries.iter().enumerate() {
        if let Some(c) = &e.cover {
            if !c.exact {
                out.upper_bound_only.push(format!("entries[{i}].cover"));
            }
        }
        if let Some(p) = &e.piercing {
            let sets: Vec<Polyhedron> = e.pierced.iter().flat_map(|&c| fam.classes[c].clone()).collect();
            out.certificates.push(Certificate::Transversal {
                sets,
                objects: p.objects.clone(),
            });
        }
    }
    Ok(out)
}

pub fn parse_q(text: &str, what: &str) -> Result<Rational, Failure> {
    parse_rational(text).map_err(|e| Failure::Input(format!("{what}: {e}")))
}

pub fn fractional_cmd(fam: &ColoredFamily, alpha: &Rational, beta: BetaFormula, budget: &Budget) -> CmdResult {
    two_classes(fam)?;
    let formulas = BoundFormulas::new(beta);
    let r = fractional_two_color_search(&fam.classes[0], &fam.classes[1], alpha, &formulas, budget)?;
    let mut out = Outcome::verified(to_value(&r));
    out.log.push(format!("fractional Helly bound is configuration: {}", r.beta));
    let covered: Vec<Polyhedron> = fam.classes[0].iter().filter(|s| s.contains(&r.best_point)).cloned().collect();
    if !covered.is_empty() {
        out.certificates.push(Certificate::CommonPoint {
            sets: covered,
            point: r.best_point.clone(),
        });
    }
    if let Some(h) = &r.best_hyperplane {
        let flat = h.to_flat();
        let crossed: Vec<Polyhedron> = fam.classes[1]
            .iter()
            .filter(|s| helly_core::geometry::flat_crosses(&flat, s).unwrap_or(false))
            .cloned()
            .collect();
        out.certificates.push(Certificate::Transversal {
            sets: crossed,
            objects: vec![Payload::Flat { flat }],
        });
    }
    out.upper_bound_only.push("point_coverage".into());
    out.upper_bound_only.push("hyperplane_coverage".into());
    Ok(out)
}

pub fn duality_cmd(bytes: &[u8], b: usize, budget: &Budget) -> CmdResult {
    let h: Hypergraph = parse_json(bytes, "hypergraph")?;
    h.validate()?;
    let r = duality_report(&h, b, budget)?;
    let mut out = if r.sandwich_holds {
        Outcome::verified(to_value(&r))
    } else {
        Outcome::refuted(to_value(&r))
    };
    out.log.extend(r.notes.iter().cloned());
    out.certificates.push(Certificate::FractionalTransversal {
        hypergraph: h.clone(),
        result: r.tau_star.clone(),
    });
    out.certificates.push(Certificate::FractionalMatching {
        hypergraph: h.clone(),
        result: r.nu_star.clone(),
    });
    if let Some(m) = &r.nu_b {
        out.certificates.push(Certificate::BMatching {
            hypergraph: h.clone(),
            matching: m.clone(),
        });
    }
    if let Some(t) = &r.tau {
        if t.upper_bound_only {
            out.upper_bound_only.push("tau".into());
        }
        out.certificates.push(Certificate::HypergraphTransversal {
            hypergraph: h,
            transversal: t.clone(),
        });
    }
    Ok(out)
}

pub enum GenerateKind {
    Figure1 { d: usize, n: usize },
    Planar { f: usize },
    Simplex { d: usize, f: usize },
}

pub fn generate_cmd(kind: GenerateKind, seed: u64, budget: &Budget) -> CmdResult {
    let (doc, fam, log) = match kind {
        GenerateKind::Figure1 { d, n } => {
            let fam = generate_figure1(d, n)?;
            (ConstructionDocument::Figure1 { d, n }, fam, Vec::new())
        }
        GenerateKind::Planar { f } => {
            let c = generate_planar(f, seed)?;
            let fam = c.family();
            let log = c.audit.log.clone();
            (ConstructionDocument::Planar { construction: c }, fam, log)
        }
        GenerateKind::Simplex { d, f } => {
            let c = generate_simplex_family(d, f, seed, budget)?;
            let fam = c.family();
            let log = c.log.clone();
            (ConstructionDocument::Simplex { construction: c }, fam, log)
        }
    };
    let mut out = Outcome::verified(json!({
        "family": to_value(&FamilyDocument::from_family(&fam, None)),
        "construction": to_value(&doc),
    }));
    out.log = log;
    Ok(out)
}

/// Accepts either a bare construction document or a `generate` report.
fn load_construction(bytes: &[u8]) -> Result<ConstructionDocument, Failure> {
    let v: Value = parse_json(bytes, "construction")?;
    let inner = v.get("results").and_then(|r| r.get("construction")).cloned().unwrap_or(v);
    serde_json::from_value(inner).map_err(|e| Failure::Input(format!("malformed construction: {e}")))
}

pub fn verify_lower_bound_cmd(bytes: &[u8], budget: &Budget) -> CmdResult {
    match load_construction(bytes)? {
        ConstructionDocument::Figure1 { d, n } => {
            let fam = generate_figure1(d, n)?;
            let mut out = Outcome::verified(Value::Null);
            let mut values = Vec::new();
            for (i, class) in fam.classes[..d].iter().enumerate() {
                let r = piercing_number(class, budget)?;
                values.push(r.transversal.tau);
                cover_certificates(class, &r, &mut out, &format!("class {i} piercing"))?;
            }
            let ok = values.iter().all(|&v| v == n);
            out.results = json!({ "kind": "figure1", "class_piercing": values, "expected": n, "holds": ok });
            if !ok {
                out.status = Status::Refuted;
            }
            Ok(out)
        }
        ConstructionDocument::Planar { construction: c } => {
            if let Err(why) = c.verify() {
                return Ok(Outcome::refuted(json!({ "kind": "planar", "structure": why })));
            }
            let r = planar_lower_bounds(&c, budget)?;
            let mut out = Outcome::verified(json!({
                "kind": "planar",
                "f": c.f,
                "triangle_piercing": cover_summary(&r.triangle_piercing),
                "segment_piercing": cover_summary(&r.segment_piercing),
                "line_cover": cover_summary(&r.line_cover),
                "triples_checked": r.triples_checked,
                "holds": r.holds(),
            }));
            cover_certificates(&c.triangles, &r.triangle_piercing, &mut out, "triangle_piercing")?;
            cover_certificates(&c.segments, &r.segment_piercing, &mut out, "segment_piercing")?;
            let all: Vec<Polyhedron> = c.triangles.iter().chain(&c.segments).cloned().collect();
            cover_certificates(&all, &r.line_cover, &mut out, "line_cover")?;
            if !r.holds() {
                out.status = Status::Refuted;
            }
            Ok(out)
        }
        ConstructionDocument::Simplex { construction: c } => {
            if let Err(why) = c.verify(budget) {
                return Ok(Outcome::refuted(json!({ "kind": "simplex", "structure": why })));
            }
            let r = simplex_lower_bounds(&c, budget)?;
            let mut out = Outcome::verified(json!({
                "kind": "simplex",
                "d": c.d,
                "f": c.f,
                "colorful_helly": r.ch.holds,
                "class_piercing": r.class_piercing.iter().map(|p| p.as_ref().map(cover_summary)).collect::<Vec<_>>(),
                "line_lower_bound": r.line_lower_bound,
                "facet_group_separation": to_value(&c.separation),
                "line_cover": r.line_cover.as_ref().map(cover_summary),
                "exact_line_cover": r.exact_line_cover(),
                "facets_crossed": to_value(&r.facets),
                "holds": r.holds(),
            }));
            out.log.extend(r.notes.iter().cloned());
            for (i, p) in r.class_piercing.iter().enumerate() {
                if let Some(p) = p {
                    cover_certificates(&c.classes[i], p, &mut out, &format!("class {i} piercing"))?;
                }
            }
            if let Some(l) = &r.line_cover {
                let all: Vec<Polyhedron> = c.classes.iter().flatten().cloned().collect();
                cover_certificates(&all, l, &mut out, "line_cover")?;
            }
            if !r.holds() {
                out.status = Status::Refuted;
            }
            Ok(out)
        }
    }
}

pub fn relint_cmd(bytes: &[u8]) -> CmdResult {
    let ConstructionDocument::Simplex { construction: c } = load_construction(bytes)? else {
        return Err(Failure::Input("relint-check needs a simplex construction".into()));
    };
    let r = verify_relint_property(&c)?;
    let mut out = if r.holds() {
        Outcome::verified(Value::Null)
    } else {
        Outcome::refuted(Value::Null)
    };
    out.results = json!({
        "d": r.d,
        "selections": r.selections,
        "certified": r.certificates.len(),
        "failures": r.failures,
    });
    for cert in r.certificates {
        let (facet, cones) = cert.selection.split_last().expect("selection has a facet");
        let sets = cones.iter().enumerate().map(|(i, &j)| c.cones[i][j].clone()).collect();
        out.certificates.push(Certificate::RelativeInterior {
            sets,
            face: c.facets[*facet].clone(),
            certificate: cert,
        });
    }
    Ok(out)
}

pub fn generic_line_cmd(fam: &ColoredFamily, seed: u64, budget: &Budget) -> CmdResult {
    let g = generic_line_class(fam, seed, budget)?;
    let mut out = Outcome::verified(to_value(&g));
    out.certificates.push(Certificate::Transversal {
        sets: fam.classes[g.class].clone(),
        objects: vec![Payload::Flat { flat: g.line }],
    });
    Ok(out)
}

pub fn recheck_cmd(bytes: &[u8]) -> CmdResult {
    let report: ReportDocument = parse_json(bytes, "report")?;
    let mut failures = Vec::new();
    for (i, c) in report.certificates.iter().enumerate() {
        if let Err(why) = c.verify() {
            failures.push(json!({ "index": i, "kind": c.kind(), "reason": why }));
        }
    }
    let results = json!({
        "command": report.command,
        "certificates": report.certificates.len(),
        "failures": failures,
        "original_status": report.status,
    });
    Ok(if failures.is_empty() {
        Outcome::verified(results)
    } else {
        Outcome::refuted(results)
    })
}
