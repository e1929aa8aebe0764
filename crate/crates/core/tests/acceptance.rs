//! One test per acceptance criterion. Each prints a single PASS/FAIL line
//! with its wall time and fails if the check fails or exceeds its limit.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use surfqp::dg::{all_cases, DgContext, GinzburgPresentation, Transcription};
use surfqp::fixtures;
use surfqp::ktheory::{identity, K0Lattice, TwistWord};
use surfqp::surface::FlipDirection::{Backward, Forward};
use surfqp::transport::path_transport;
use surfqp::{run_suite, ExtAlgebraTable, MarkedSurface, Status, SuiteConfig, SUITES};

type Check = Result<String, String>;

fn criterion(n: u32, title: &str, limit_secs: u64, check: impl FnOnce() -> Check) {
    let start = Instant::now();
    let result = check();
    let elapsed = start.elapsed();
    let limit = Duration::from_secs(limit_secs);
    let (ok, detail) = match &result {
        Ok(d) if elapsed <= limit => (true, d.clone()),
        Ok(d) => (false, format!("{d}; took {elapsed:?}, limit {limit:?}")),
        Err(e) => (false, e.clone()),
    };
    println!(
        "criterion {n} {}: {title} ({:.1} ms, limit {limit_secs} s) {detail}",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64() * 1e3
    );
    assert!(ok, "criterion {n} failed: {detail}");
}

fn suite(name: &str, config: &SuiteConfig) -> Result<surfqp::VerificationReport, String> {
    let r = run_suite(name, config).map_err(|e| e.to_string())?;
    let first = r
        .failures()
        .next()
        .map(|c| format!("{} {}: {:?}", c.fixture, c.operation, c.witness));
    match first {
        Some(e) => Err(e),
        None => Ok(r),
    }
}

fn surface_config(names: &[&str]) -> SuiteConfig {
    let mut c = SuiteConfig::builtin();
    c.surfaces.retain(|(n, _)| names.contains(&n.as_str()));
    c.qps.retain(|(n, _)| names.contains(&n.as_str()));
    c
}

/// Solves `V - E + F = 2 - 2g - b` and `3F = 2n + |M|` with `V = |M|`,
/// `E = n + |M|`, by search over small `n`.
fn euler_oracle(s: &MarkedSurface) -> Option<(usize, usize)> {
    let m = s.marked_points();
    let chi = 2 - 2 * s.genus as i64 - s.boundaries.len() as i64;
    (0..200i64).find_map(|n| {
        let three_f = 2 * n + m;
        (three_f % 3 == 0 && m - (n + m) + three_f / 3 == chi)
            .then_some((n as usize, (three_f / 3) as usize))
    })
}

#[test]
fn criterion_1_surface_counting() {
    criterion(1, "arc and triangle counts", 1, || {
        let mut checked = 0;
        for (g, b) in [
            (0, vec![5]),
            (0, vec![6]),
            (0, vec![7]),
            (0, vec![1, 1]),
            (0, vec![2, 1]),
            (1, vec![1]),
            (1, vec![2, 3]),
            (2, vec![1]),
        ] {
            let s = MarkedSurface::new(g, b.clone()).map_err(|e| e.to_string())?;
            let got = (s.arc_count(), s.decoration_count());
            if Some(got) != euler_oracle(&s) {
                return Err(format!("g={g} b={b:?}: {got:?} vs {:?}", euler_oracle(&s)));
            }
            checked += 1;
        }
        for (name, n, aleph) in [("pentagon", 2, 3), ("hexagon", 3, 4), ("annulus", 2, 2)] {
            let t = fixtures::triangulation(name).unwrap();
            let s = t
                .surface()
                .cloned()
                .unwrap_or_else(|| MarkedSurface::disc(t.boundary_labels().len() as u32).unwrap());
            let direct = (t.arcs().len(), t.triangles().len());
            if direct != (n, aleph) || (s.arc_count(), s.decoration_count()) != (n, aleph) {
                return Err(format!(
                    "{name}: triangulation {direct:?}, formula ({}, {})",
                    s.arc_count(),
                    s.decoration_count()
                ));
            }
            checked += 1;
        }
        Ok(format!("{checked} surfaces"))
    });
}

#[test]
fn criterion_2_flip_mutation() {
    criterion(2, "flip = mutation", 10, || {
        let r = suite(
            "flip-mutation",
            &surface_config(&["hexagon", "pentagon", "annulus"]),
        )?;
        let hex = r
            .cases
            .iter()
            .filter(|c| c.fixture.starts_with("hexagon#") && c.status == Status::Pass)
            .count();
        if hex != 42 {
            return Err(format!("{hex} hexagon cases, expected 14×3"));
        }
        Ok(format!("{} cases, {hex} on the hexagon", r.cases.len()))
    });
}

#[test]
fn criterion_3_d_squared() {
    criterion(3, "d² = 0 with negative controls", 5, || {
        let r = suite("d2", &SuiteConfig::builtin())?;
        let controls = r
            .cases
            .iter()
            .filter(|c| c.operation.starts_with("control"))
            .count();
        if controls == 0 {
            return Err("no negative control ran".into());
        }
        for n in fixtures::TRIANGULATION_NAMES {
            if !r
                .cases
                .iter()
                .any(|c| c.fixture == n && c.operation == "d²=0")
            {
                return Err(format!("{n} not covered"));
            }
        }
        Ok(format!("{} cases, {controls} controls", r.cases.len()))
    });
}

#[test]
fn criterion_4_keller_yang() {
    criterion(4, "Keller–Yang table is a dg homomorphism", 30, || {
        let r = suite("ky-hom", &SuiteConfig::builtin())?;
        let local = r
            .cases
            .iter()
            .filter(|c| c.fixture == "local" && !c.operation.starts_with("control"))
            .count();
        if local != 5 {
            return Err(format!("local quiver: {local} vertices checked"));
        }
        let controls = r
            .cases
            .iter()
            .filter(|c| c.operation.starts_with("control"))
            .count();
        Ok(format!("{} cases, {controls} controls", r.cases.len()))
    });
}

#[test]
fn criterion_5_matrix_identities() {
    criterion(5, "resolutions, φ chain maps and homotopies", 30, || {
        let config = SuiteConfig::builtin();
        let res = suite("resolutions", &config)?;
        let hom = suite("homotopies", &config)?;
        let mut zero_cases = 0;
        for (name, qp) in &config.qps {
            let g = GinzburgPresentation::new(qp).map_err(|e| e.to_string())?;
            let ctx = DgContext::new(&g);
            for k in qp.quiver.vertices() {
                for inst in all_cases(&g, k, Transcription::Corrected).map_err(|e| e.to_string())? {
                    if inst.case == surfqp::dg::HomotopyCase::APrime {
                        continue;
                    }
                    let diff = inst.left.sub(&inst.right).map_err(|e| e.to_string())?;
                    if !diff.is_zero() || !inst.theta.is_zero() {
                        return Err(format!(
                            "{name} {} {}: difference {diff}",
                            inst.case.name(),
                            inst.arrow
                        ));
                    }
                    if !inst.verify(&ctx).passed() {
                        return Err(format!("{name} {} {}", inst.case.name(), inst.arrow));
                    }
                    zero_cases += 1;
                }
            }
        }
        Ok(format!(
            "{} resolution cases, {} homotopy cases, {zero_cases} identically zero",
            res.cases.len(),
            hom.count(Status::Pass)
        ))
    });
}

#[test]
fn criterion_6_ext_algebra() {
    criterion(6, "Ext-algebra structure", 5, || {
        let r = suite("ext-compat", &SuiteConfig::builtin())?;
        let dims = ExtAlgebraTable::of(&fixtures::pentagon())
            .map_err(|e| e.to_string())?
            .graded_dims();
        if dims != [2, 1, 1, 2] {
            return Err(format!("pentagon dims {dims:?}"));
        }
        Ok(format!("{} cases, pentagon {dims:?}", r.cases.len()))
    });
}

fn steps(s: &[(&str, surfqp::FlipDirection)]) -> Vec<(String, surfqp::FlipDirection)> {
    s.iter().map(|(k, d)| (k.to_string(), *d)).collect()
}

#[test]
fn criterion_7_transport() {
    criterion(7, "transport path independence", 10, || {
        let err = |e: surfqp::Error| e.to_string();
        for t in [
            fixtures::pentagon(),
            fixtures::hexagon(),
            fixtures::heptagon(),
        ] {
            for k in t.arcs() {
                for d in [Forward, Backward] {
                    let m =
                        path_transport(&t, &steps(&[(&k, d), (&k, d.inverse())])).map_err(err)?;
                    if !m.is_identity() {
                        return Err(format!("cancel pair at {k} is not the identity"));
                    }
                }
            }
        }
        let h = fixtures::heptagon();
        let mut squares = 0;
        for (a, b) in [("d0-2", "d0-4"), ("d0-2", "d0-5"), ("d0-3", "d0-5")] {
            let ab = path_transport(&h, &steps(&[(a, Forward), (b, Forward)])).map_err(err)?;
            let ba = path_transport(&h, &steps(&[(b, Forward), (a, Forward)])).map_err(err)?;
            if !ab.agrees_with(&ba) {
                return Err(format!("square {a},{b} does not commute"));
            }
            squares += 1;
        }
        let double =
            path_transport(&h, &steps(&[("d0-3", Forward), ("d0-3", Forward)])).map_err(err)?;
        double.check_relabel()?;
        if double.is_identity() {
            return Err("double forward flip is trivial".into());
        }
        let r = suite("transport-paths", &SuiteConfig::builtin())?;
        Ok(format!(
            "{squares} heptagon squares, suite {} cases",
            r.cases.len()
        ))
    });
}

/// Twist action computed straight from arrow counts, without the lattice.
fn oracle_word_matrix(qp: &surfqp::Qp, w: &TwistWord) -> Vec<Vec<i64>> {
    let vs = qp.quiver.vertices();
    let n = vs.len();
    let chi = |i: usize, j: usize| {
        qp.quiver.arrow_count(&vs[j], &vs[i]) as i64 - qp.quiver.arrow_count(&vs[i], &vs[j]) as i64
    };
    let mut cols = Vec::new();
    for start in 0..n {
        let mut x: Vec<i64> = (0..n).map(|j| i64::from(j == start)).collect();
        for (v, e) in w.letters.iter().rev() {
            let i = vs.iter().position(|u| u == v).unwrap();
            let c: i64 = (0..n).map(|j| chi(i, j) * x[j]).sum();
            x[i] -= i64::from(*e) * c;
        }
        cols.push(x);
    }
    (0..n)
        .map(|i| (0..n).map(|j| cols[j][i]).collect())
        .collect()
}

#[test]
fn criterion_8_k0() {
    criterion(8, "K0 twists", 5, || {
        let r = suite("k0", &SuiteConfig::builtin())?;
        let a2 = fixtures::a2();
        let l = K0Lattice::from_quiver(&a2.quiver);
        if !l
            .braid_relation_check("1", "2")
            .map_err(|e| e.to_string())?
            .passed()
        {
            return Err("A2 braid relation".into());
        }
        let d = K0Lattice::from_quiver(&fixtures::disconnected().quiver);
        if !d
            .braid_relation_check("1", "2")
            .map_err(|e| e.to_string())?
            .commute_holds
        {
            return Err("disconnected twists do not commute".into());
        }
        let mut words = 0;
        for qp in [
            fixtures::a2(),
            fixtures::three_cycle(),
            fixtures::kronecker(),
            fixtures::pentagon().qp().unwrap(),
        ] {
            let l = K0Lattice::from_quiver(&qp.quiver);
            for (w, m) in l.enumerate_words(3).map_err(|e| e.to_string())? {
                if m != oracle_word_matrix(&qp, &w) {
                    return Err(format!("word {w} disagrees with the oracle"));
                }
                words += 1;
            }
        }
        let a2_ids = l
            .enumerate_words(3)
            .map_err(|e| e.to_string())?
            .into_iter()
            .filter(|(w, m)| !w.is_empty() && *m == identity(2))
            .count();
        Ok(format!(
            "{} cases, {words} words match the oracle, {a2_ids} accidental A2 identities",
            r.cases.len()
        ))
    });
}

#[test]
fn criterion_9_determinism() {
    criterion(9, "byte-identical reports", 30, || {
        let run = || -> Result<BTreeMap<&str, String>, String> {
            let config = SuiteConfig::builtin();
            SUITES
                .iter()
                .map(|s| {
                    Ok((
                        *s,
                        run_suite(s, &config).map_err(|e| e.to_string())?.to_json(),
                    ))
                })
                .collect()
        };
        let (a, b) = (run()?, run()?);
        if a != b {
            return Err("reports differ between runs".into());
        }
        let bytes: usize = a.values().map(String::len).sum();
        Ok(format!("{} suites, {bytes} bytes", a.len()))
    });
}
