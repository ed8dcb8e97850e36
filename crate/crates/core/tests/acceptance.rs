//! Acceptance suite: one PASS/FAIL line per criterion, each checked against
//! its wall-clock limit. Exits nonzero if any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::oracle::{arrangement_piercing, grid_line_cover};
use common::random::{colorful_family, random_hypergraph, random_set, two_colored, two_colored_without_common_point};
use common::{families, hypergraphs, small_planar_fixtures};
use helly_core::constructions::{
    generate_planar, generate_simplex_family, max_simplex_facets_crossed, planar_lower_bounds, simplex_lower_bounds,
    verify_relint_property,
};
use helly_core::geometry::{flat_crosses, polyhedra_intersect, Polyhedron};
use helly_core::helly::{
    check_ch, fractional_two_color_search, intersecting_class, theorem_main_d2, two_color_lemma, BoundFormulas,
    ColoredFamily, DichotomyOutcome,
};
use helly_core::hypergraph::{duality_report, line_cover_number, piercing_number, Hypergraph};
use helly_core::{Budget, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn rat(n: usize, d: usize) -> Rational {
    Rational::new((n as i64).into(), (d as i64).into())
}

fn duality_sandwich() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut cases: Vec<(String, Hypergraph)> = hypergraphs();
    cases.extend((0..50).map(|i| (format!("random {i}"), random_hypergraph(&mut rng, 12, 20))));
    let mut checked = 0;
    for (name, h) in &cases {
        for b in 1..=3 {
            let r = duality_report(h, b, &Budget::default()).map_err(|e| format!("{name}: {e}"))?;
            let nb = r.nu_b.as_ref().ok_or(format!("{name}: nu_b missing"))?;
            let t = r.tau.as_ref().ok_or(format!("{name}: tau missing"))?;
            r.tau_star.verify_transversal(h)?;
            r.nu_star.verify_matching(h)?;
            nb.verify(h)?;
            t.verify(h)?;
            ensure!(r.nu_star.value == r.tau_star.value, "{name}: nu* != tau*");
            ensure!(rat(nb.value, b) <= r.nu_star.value, "{name}: nu_b/b > nu*");
            ensure!(r.tau_star.value <= rat(t.tau, 1), "{name}: tau* > tau");
            ensure!(!t.upper_bound_only && r.sandwich_holds, "{name}: sandwich not certified");
            checked += 1;
        }
    }
    Ok(format!("{} hypergraphs, {checked} reports", cases.len()))
}

fn two_color_constructive() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut max_planes = [0usize; 2];
    for i in 0..100 {
        let dim = 2 + i % 2;
        let (a, b) = two_colored_without_common_point(&mut rng, dim);
        let out = two_color_lemma(&a, &b).map_err(|e| format!("instance {i}: {e}"))?;
        let DichotomyOutcome::HyperplaneCover { class, hyperplanes, .. } = &out else {
            return Err(format!("instance {i}: expected hyperplanes, got {out:?}"));
        };
        ensure!(*class == 1, "instance {i}: wrong class crossed");
        ensure!(hyperplanes.len() <= dim, "instance {i}: {} hyperplanes", hyperplanes.len());
        for (j, s) in b.iter().enumerate() {
            let hit = hyperplanes.iter().any(|h| flat_crosses(&h.to_flat(), s).unwrap());
            ensure!(hit, "instance {i}: set {j} of the second class is not crossed");
        }
        out.verify(&[&a, &b])?;
        max_planes[dim - 2] = max_planes[dim - 2].max(hyperplanes.len());
    }
    Ok(format!("100 instances, at most {} planes in R^2, {} in R^3", max_planes[0], max_planes[1]))
}

fn check_d2(fam: &ColoredFamily, what: &str) -> Result<bool, String> {
    let out = theorem_main_d2(fam).map_err(|e| format!("{what}: {e}"))?;
    out.verify(&[&fam.classes[0], &fam.classes[1]]).map_err(|e| format!("{what}: {e}"))?;
    match out {
        DichotomyOutcome::PiercedClass { points, .. } => {
            ensure!(points.len() == 1, "{what}: {} points", points.len());
            Ok(true)
        }
        DichotomyOutcome::LineCover { lines } => {
            ensure!(lines.len() <= 4, "{what}: {} lines", lines.len());
            Ok(false)
        }
        other => Err(format!("{what}: unexpected outcome {other:?}")),
    }
}

fn planar_dichotomy() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut pierced, mut lined) = (0, 0);
    for i in 0..50 {
        let (a, b) = two_colored(&mut rng, 2);
        let fam = ColoredFamily::new(2, vec![a, b]).unwrap();
        if check_d2(&fam, &format!("random {i}"))? {
            pierced += 1;
        } else {
            lined += 1;
        }
    }
    for f in 1..=3 {
        let c = generate_planar(f, 7).map_err(|e| e.to_string())?;
        if check_d2(&c.family(), &format!("planar f={f}"))? {
            pierced += 1;
        } else {
            lined += 1;
        }
    }
    Ok(format!("{pierced} pierced, {lined} line covers"))
}

fn planar_lower_bound_family() -> Outcome {
    let budget = Budget {
        max_family: 18,
        ..Budget::default()
    };
    let mut parts = Vec::new();
    for f in 1..=3 {
        let c = generate_planar(f, 7).map_err(|e| e.to_string())?;
        c.verify()?;
        let r = planar_lower_bounds(&c, &budget).map_err(|e| format!("f={f}: {e}"))?;
        let (tp, sp, lc) = (&r.triangle_piercing, &r.segment_piercing, &r.line_cover);
        ensure!(!tp.transversal.upper_bound_only && tp.transversal.tau >= f, "f={f}: triangle piercing");
        ensure!(!sp.transversal.upper_bound_only && sp.transversal.tau == 6 * f, "f={f}: segment piercing");
        ensure!(lc.complete && !lc.transversal.upper_bound_only && lc.transversal.tau >= 2, "f={f}: line cover");
        parts.push(format!(
            "f={f}: {}/{}/{} over {} triples",
            tp.transversal.tau, sp.transversal.tau, lc.transversal.tau, r.triples_checked
        ));
    }
    Ok(parts.join("; "))
}

fn simplex_lower_bound_family() -> Outcome {
    let mut parts = Vec::new();
    for f in 1..=2 {
        let c = generate_simplex_family(3, f, 7, &Budget::default()).map_err(|e| e.to_string())?;
        let r = simplex_lower_bounds(&c, &Budget::default()).map_err(|e| format!("f={f}: {e}"))?;
        ensure!(r.ch.holds, "f={f}: colorful Helly fails");
        for i in 0..2 {
            let p = r.class_piercing[i].as_ref().ok_or(format!("f={f}: class {i} piercing unknown"))?;
            ensure!(!p.transversal.upper_bound_only && p.transversal.tau >= f, "f={f}: class {i} piercing");
        }
        ensure!(r.line_lower_bound >= 2, "f={f}: line lower bound {}", r.line_lower_bound);
        ensure!(r.exact_line_cover() == Some(r.line_lower_bound), "f={f}: line cover not pinned down");
        parts.push(format!("f={f}: line cover {}", r.line_lower_bound));
    }
    let crossed = max_simplex_facets_crossed(3).map_err(|e| e.to_string())?.max_crossed;
    ensure!(crossed == 2, "a line crosses {crossed} facets");
    Ok(parts.join("; ") + "; facets crossed 2")
}

fn relint_sweep() -> Outcome {
    let mut parts = Vec::new();
    for d in 2..=3 {
        let c = generate_simplex_family(d, 1, 7, &Budget::default()).map_err(|e| e.to_string())?;
        let r = verify_relint_property(&c).map_err(|e| e.to_string())?;
        ensure!(r.failures.is_empty(), "d={d}: failing selections {:?}", r.failures);
        ensure!(r.certificates.len() == r.selections, "d={d}: missing certificates");
        parts.push(format!("d={d}: {} selections", r.selections));
    }
    Ok(parts.join("; "))
}

fn colorful_helly() -> Outcome {
    let budget = Budget::default();
    let mut fixtures = 0;
    for (name, fam) in families() {
        if fam.class_count() == fam.dim + 1 && check_ch(&fam, &budget).unwrap().holds {
            let (c, p) = intersecting_class(&fam, &budget).map_err(|e| format!("{name}: {e}"))?;
            ensure!(fam.classes[c].iter().all(|s| s.contains(&p)), "{name}: point misses class {c}");
            fixtures += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut sampled = 0;
    for i in 0..50 {
        let (fam, tries) = colorful_family(&mut rng, 2 + i % 2, &budget);
        sampled += tries;
        let (c, p) = intersecting_class(&fam, &budget).map_err(|e| format!("random {i}: {e}"))?;
        ensure!(fam.classes[c].iter().all(|s| s.contains(&p)), "random {i}: point misses class {c}");
    }
    Ok(format!("{fixtures} fixtures, 50 random instances ({sampled} sampled)"))
}

fn fractional_thresholds() -> Outcome {
    let formulas = BoundFormulas::default();
    let lambda = formulas.lambda(&Rational::from_integer(1.into()), 2).map_err(|e| e.to_string())?;
    ensure!(lambda == rat(1, 216), "lambda(1, 2) = {lambda}");
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut done = 0;
    let mut point_side = 0;
    while done < 20 {
        let a: Vec<Polyhedron> = (0..rng.gen_range(2..=5)).map(|_| random_set(&mut rng, 2)).collect();
        let b: Vec<Polyhedron> = (0..rng.gen_range(2..=5)).map(|_| random_set(&mut rng, 2)).collect();
        let meeting = a
            .iter()
            .flat_map(|x| b.iter().map(move |y| (x, y)))
            .filter(|(x, y)| !polyhedra_intersect(&[(*x).clone(), (*y).clone()]).unwrap().is_empty())
            .count();
        let fraction = rat(meeting, a.len() * b.len());
        if fraction < rat(1, 2) {
            continue;
        }
        let alpha = [rat(1, 2), rat(2, 3), rat(3, 4), rat(1, 1)]
            .into_iter()
            .filter(|x| x <= &fraction)
            .last()
            .unwrap();
        let r = fractional_two_color_search(&a, &b, &alpha, &formulas, &Budget::default())
            .map_err(|e| format!("instance {done}: {e}"))?;
        ensure!(r.point_threshold_met || r.hyperplane_threshold_met, "instance {done}: no threshold met");
        ensure!(r.beta.contains("configuration"), "instance {done}: beta not flagged");
        if r.point_threshold_met {
            point_side += 1;
        }
        done += 1;
    }
    Ok(format!("lambda(1,2) = 1/216; 20 instances, {point_side} met the point threshold"))
}

fn oracle_equivalence() -> Outcome {
    let fixtures = small_planar_fixtures();
    ensure!(!fixtures.is_empty(), "no small planar fixtures");
    for (name, polys, sets) in &fixtures {
        let p = piercing_number(sets, &Budget::default()).map_err(|e| format!("{name}: {e}"))?;
        let l = line_cover_number(sets, &Budget::default()).map_err(|e| format!("{name}: {e}"))?;
        let (po, lo) = (arrangement_piercing(polys), grid_line_cover(polys));
        ensure!(p.transversal.tau == po, "{name}: piercing {} vs oracle {po}", p.transversal.tau);
        ensure!(l.complete && l.transversal.tau == lo, "{name}: line cover {} vs oracle {lo}", l.transversal.tau);
    }
    Ok(format!("{} families", fixtures.len()))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 9] = [
        ("duality sandwich", 60, duality_sandwich),
        ("two-colored lemma, constructive", 120, two_color_constructive),
        ("planar dichotomy", 120, planar_dichotomy),
        ("planar lower-bound family", 180, planar_lower_bound_family),
        ("simplex family in R^3", 300, simplex_lower_bound_family),
        ("relative-interior sweep", 120, relint_sweep),
        ("colorful Helly class finder", 120, colorful_helly),
        ("fractional two-colored thresholds", 120, fractional_thresholds),
        ("oracle equivalence", 180, oracle_equivalence),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let elapsed = start.elapsed();
        let result = match result {
            Ok(_) if elapsed > Duration::from_secs(*limit) => Err(format!("took longer than {limit} s")),
            r => r,
        };
        match result {
            Ok(detail) => println!("PASS {}. {name} ({:.1} s): {detail}", i + 1, elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name} ({:.1} s): {why}", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
