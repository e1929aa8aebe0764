//! Batch verification suites and their reports.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::dg::{
    all_cases, sharp_bundle, simple_resolution, DgContext, GinzburgPresentation, KyTable,
    SignConvention, Transcription,
};
use crate::error::{Error, Result};
use crate::ext::{pi_dictionary, ExtAlgebraTable};
use crate::fixtures;
use crate::ktheory::{determinant, K0Lattice};
use crate::mutation::{check_flip_mutation, check_flip_mutation_without_w2};
use crate::qp::Qp;
use crate::surface::{DecoratedTriangulation, FlipDirection};
use crate::transport::path_transport;

pub const SUITES: [&str; 8] = [
    "d2",
    "ky-hom",
    "resolutions",
    "homotopies",
    "flip-mutation",
    "ext-compat",
    "transport-paths",
    "k0",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// An observation that is recorded but not asserted.
    Reported,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Reported => "reported",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Case {
    pub fixture: String,
    pub operation: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub cases: Vec<Case>,
    pub fingerprint: BTreeMap<String, String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, s: Status) -> usize {
        self.cases.iter().filter(|c| c.status == s).count()
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "suite {}", self.suite)?;
        for (k, v) in &self.fingerprint {
            writeln!(f, "  {k}: {v}")?;
        }
        for c in &self.cases {
            write!(f, "{:<8} {:<24} {}", c.status, c.fixture, c.operation)?;
            if let Some(w) = &c.witness {
                write!(f, "  [{w}]")?;
            }
            writeln!(f)?;
        }
        write!(
            f,
            "{} pass, {} fail, {} reported",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Reported)
        )
    }
}

/// Fixtures a suite runs over. Algebraic suites use `qps`; surface suites
/// enumerate every triangulation reachable from each entry of `surfaces`.
#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub surfaces: Vec<(String, DecoratedTriangulation)>,
    pub qps: Vec<(String, Qp)>,
    pub sign: SignConvention,
}

impl SuiteConfig {
    pub fn builtin() -> Self {
        SuiteConfig {
            surfaces: fixtures::TRIANGULATION_NAMES
                .iter()
                .map(|n| (n.to_string(), fixtures::triangulation(n).expect("builtin")))
                .collect(),
            qps: fixtures::builtin_qps(),
            sign: SignConvention::FROZEN,
        }
    }

    /// One triangulation; its QP is the only algebraic fixture.
    pub fn surface(name: &str, t: DecoratedTriangulation) -> Result<Self> {
        let qp = t.qp()?;
        Ok(SuiteConfig {
            surfaces: vec![(name.to_string(), t)],
            qps: vec![(name.to_string(), qp)],
            sign: SignConvention::FROZEN,
        })
    }

    pub fn qp(name: &str, qp: Qp) -> Self {
        SuiteConfig {
            surfaces: Vec::new(),
            qps: vec![(name.to_string(), qp)],
            sign: SignConvention::FROZEN,
        }
    }
}

struct Cases(Vec<Case>);

impl Cases {
    fn push(&mut self, fixture: &str, op: impl Into<String>, ok: bool, witness: Option<String>) {
        self.0.push(Case {
            fixture: fixture.to_string(),
            operation: op.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            witness: if ok { None } else { witness },
        });
    }

    fn issues(&mut self, fixture: &str, op: impl Into<String>, issues: Vec<String>) {
        let ok = issues.is_empty();
        self.push(fixture, op, ok, Some(issues.join("; ")));
    }

    fn report(&mut self, fixture: &str, op: impl Into<String>, witness: String) {
        self.0.push(Case {
            fixture: fixture.to_string(),
            operation: op.into(),
            status: Status::Reported,
            witness: Some(witness),
        });
    }

    /// A negative control passes when the corrupted input is rejected.
    fn control(&mut self, fixture: &str, op: impl Into<String>, rejected: bool) {
        let w = (!rejected).then(|| "corrupted input was accepted".to_string());
        self.push(fixture, op, rejected, w);
    }

    fn error(&mut self, fixture: &str, op: impl Into<String>, e: Error) {
        self.push(fixture, op, false, Some(e.to_string()));
    }
}

pub fn run_suite(name: &str, config: &SuiteConfig) -> Result<VerificationReport> {
    let mut cases = Cases(Vec::new());
    match name {
        "d2" => suite_d2(config, &mut cases)?,
        "ky-hom" => suite_ky(config, &mut cases)?,
        "resolutions" => suite_resolutions(config, &mut cases)?,
        "homotopies" => suite_homotopies(config, &mut cases)?,
        "flip-mutation" => suite_flip_mutation(config, &mut cases)?,
        "ext-compat" => suite_ext(config, &mut cases)?,
        "transport-paths" => suite_transport(config, &mut cases)?,
        "k0" => suite_k0(config, &mut cases)?,
        other => return Err(Error::UnknownSuite(other.to_string())),
    }
    let mut fingerprint = BTreeMap::new();
    fingerprint.insert(
        "package".into(),
        format!("surfqp {}", env!("CARGO_PKG_VERSION")),
    );
    fingerprint.insert("sign-convention".into(), config.sign.name().into());
    fingerprint.insert(
        "surfaces".into(),
        config
            .surfaces
            .iter()
            .map(|(n, _)| n.as_str())
            .collect::<Vec<_>>()
            .join(","),
    );
    fingerprint.insert(
        "qps".into(),
        config
            .qps
            .iter()
            .map(|(n, _)| n.as_str())
            .collect::<Vec<_>>()
            .join(","),
    );
    Ok(VerificationReport {
        suite: name.to_string(),
        cases: cases.0,
        fingerprint,
    })
}

fn ginzburg(qp: &Qp) -> Result<GinzburgPresentation> {
    GinzburgPresentation::new(qp)
}

fn suite_d2(config: &SuiteConfig, cases: &mut Cases) -> Result<()> {
    for (name, qp) in &config.qps {
        let g = ginzburg(qp)?;
        let bad: Vec<String> = g
            .check_d_squared()
            .into_iter()
            .map(|(x, m)| format!("{x}: {m}"))
            .collect();
        cases.issues(name, "d²=0", bad);
        let target = qp.quiver.arrows().iter().find_map(|a| {
            let star = crate::dg::star_name(&a.id);
            let rule = g.rule(&star)?;
            (!rule.is_zero()).then(|| (star, rule.clone()))
        });
        if let Some((star, rule)) = target {
            let bad = g.with_rule(&star, -rule);
            cases.control(
                name,
                format!("control: negate d({star})"),
                !bad.check_d_squared().is_empty(),
            );
        }
    }
    Ok(())
}

fn suite_ky(config: &SuiteConfig, cases: &mut Cases) -> Result<()> {
    for (name, qp) in &config.qps {
        let g = ginzburg(qp)?;
        let ctx = DgContext::with_sign(&g, config.sign);
        for k in qp.quiver.vertices() {
            let mut table = KyTable::new(&g, k)?;
            let bad: Vec<String> = table
                .check(&ctx)
                .into_iter()
                .map(|f| format!("{}: {}", f.generator, f.detail))
                .collect();
            cases.issues(name, format!("ky k={k}"), bad);
            if let Some(id) = table.beta_star_ids().first().cloned() {
                table.negate(&id);
                cases.control(
                    name,
                    format!("control: negate f({id}) k={k}"),
                    !table.check(&ctx).is_empty(),
                );
            }
        }
    }
    Ok(())
}

fn suite_resolutions(config: &SuiteConfig, cases: &mut Cases) -> Result<()> {
    for (name, qp) in &config.qps {
        let g = ginzburg(qp)?;
        let ctx = DgContext::with_sign(&g, config.sign);
        let vs = qp.quiver.vertices();
        for i in vs {
            let m = simple_resolution(&g, i)?;
            cases.issues(name, format!("pS_{i}"), ctx.check_module(&m));
        }
        for k in vs {
            for i in vs {
                let b = sharp_bundle(&g, k, i)?;
                cases.issues(
                    name,
                    format!("F(pS~_{i}) k={k}"),
                    ctx.check_module(b.f_module()),
                );
                cases.issues(
                    name,
                    format!("pS#_{i} k={k}"),
                    ctx.check_module(b.sharp_module()),
                );
                cases.issues(name, format!("phi_{i} k={k}"), ctx.check_chain_map(&b.phi));
            }
        }
    }
    Ok(())
}

fn suite_homotopies(config: &SuiteConfig, cases: &mut Cases) -> Result<()> {
    for (name, qp) in &config.qps {
        let g = ginzburg(qp)?;
        let ctx = DgContext::with_sign(&g, config.sign);
        for k in qp.quiver.vertices() {
            for inst in all_cases(&g, k, Transcription::Corrected)? {
                let out = inst.verify(&ctx);
                let op = format!("{} {} k={k}", out.case.name(), out.arrow);
                cases.push(name, op, out.passed(), out.witness.clone());
            }
            for inst in all_cases(&g, k, Transcription::Literal)? {
                let out = inst.verify(&ctx);
                if !out.passed() {
                    let op = format!("literal {} {} k={k}", out.case.name(), out.arrow);
                    cases.report(name, op, out.witness.unwrap_or_default());
                }
            }
        }
    }
    Ok(())
}

/// Every triangulation reachable from each configured surface, named
/// `surface#n` in breadth-first order.
fn triangulations(config: &SuiteConfig) -> Vec<(String, DecoratedTriangulation)> {
    let mut out = Vec::new();
    for (name, seed) in &config.surfaces {
        for (n, t) in fixtures::all_triangulations(seed).into_iter().enumerate() {
            out.push((format!("{name}#{n}"), t));
        }
    }
    out
}

fn suite_flip_mutation(config: &SuiteConfig, cases: &mut Cases) -> Result<()> {
    for (fx, t) in triangulations(config) {
        for k in t.arcs() {
            if !t.is_flippable(&k) {
                continue;
            }
            let op = format!("flip~mutate {k}");
            match check_flip_mutation(&t, &k) {
                Ok(o) => cases.push(&fx, op, o.passed, o.witness),
                Err(e) => cases.error(&fx, op, e),
            }
        }
    }
    // The control needs a flip whose result has a potential term through
    // `k`; otherwise dropping W~2 changes nothing.
    for (name, seed) in &config.surfaces {
        let found = fixtures::all_triangulations(seed)
            .into_iter()
            .find_map(|t| {
                let k = t
                    .arcs()
                    .into_iter()
                    .find(|k| t.is_flippable(k) && potential_touches(&t, k))?;
                Some((t, k))
            });
        if let Some((t, k)) = found {
            let rejected = check_flip_mutation_without_w2(&t, &k).map_or(true, |o| !o.passed);
            cases.control(name, format!("control: drop W~2 at {k}"), rejected);
        }
    }
    Ok(())
}

fn potential_touches(t: &DecoratedTriangulation, k: &str) -> bool {
    let Ok(qp) = t.flip(k, FlipDirection::Forward).and_then(|f| f.qp()) else {
        return false;
    };
    qp.potential.support().iter().any(|a| {
        qp.quiver
            .arrow(a)
            .is_some_and(|x| x.source == k || x.target == k)
    })
}

fn suite_ext(config: &SuiteConfig, cases: &mut Cases) -> Result<()> {
    for (fx, t) in triangulations(config) {
        let table = match ExtAlgebraTable::of(&t) {
            Ok(x) => x,
            Err(e) => {
                cases.error(&fx, "ext table", e);
                continue;
            }
        };
        let q1 = t.qp()?.quiver.arrows().len();
        let n = t.arcs().len();
        let dims = table.graded_dims();
        cases.push(
            &fx,
            "graded dims",
            dims == [n, q1, q1, n],
            Some(format!("{dims:?} vs {:?}", [n, q1, q1, n])),
        );
        let assoc = table.associativity_failures();
        cases.push(
            &fx,
            "associativity",
            assoc.is_empty(),
            assoc.first().map(|x| format!("{x:?}")),
        );
        let unit = table.unit_failures();
        cases.push(&fx, "unit", unit.is_empty(), Some(unit.join(",")));
        let pairing = table.pairing_failures();
        cases.push(
            &fx,
            "cy pairing",
            pairing.is_empty(),
            Some(pairing.join(",")),
        );
        match pi_dictionary(&t) {
            Ok(d) => {
                let images: std::collections::BTreeSet<&String> = d.values().collect();
                let ok = images.len() == d.len() && d.len() == table.basis().len();
                cases.push(
                    &fx,
                    "pi dictionary",
                    ok,
                    Some(format!(
                        "{} generators, {} basis",
                        d.len(),
                        table.basis().len()
                    )),
                );
            }
            Err(e) => cases.error(&fx, "pi dictionary", e),
        }
    }
    Ok(())
}

fn suite_transport(config: &SuiteConfig, cases: &mut Cases) -> Result<()> {
    use FlipDirection::*;
    for (fx, t) in triangulations(config) {
        let arcs: Vec<String> = t.arcs().into_iter().filter(|k| t.is_flippable(k)).collect();
        let lattice = K0Lattice::from_quiver(&t.qp()?.quiver);
        for k in &arcs {
            for d in [Forward, Backward] {
                let step = path_transport(&t, &[(k.clone(), d)])?;
                cases.push(
                    &fx,
                    format!("euler {k}{}", d.symbol()),
                    step.check_euler().is_ok(),
                    step.check_euler().err(),
                );
                let back = path_transport(&t, &[(k.clone(), d), (k.clone(), d.inverse())])?;
                cases.push(
                    &fx,
                    format!("cancel {k}{}{}", d.symbol(), d.inverse().symbol()),
                    back.is_identity(),
                    Some(format!("{}", back.to_json_value())),
                );
            }
            let double = path_transport(&t, &[(k.clone(), Forward), (k.clone(), Forward)])?;
            let iso = double.check_relabel();
            cases.push(
                &fx,
                format!("double {k}++ relabel"),
                double.relabel.is_some() && iso.is_ok(),
                iso.err(),
            );
            cases.push(
                &fx,
                format!("double {k}++ nontrivial"),
                !double.is_identity(),
                None,
            );
            let twist = lattice.word_matrix(&format!("{k}-").parse()?)?;
            cases.push(
                &fx,
                format!("double {k}++ frame = twist^-1"),
                double.frame == twist,
                Some(format!("{:?} vs {:?}", double.frame, twist)),
            );
        }
        for (n, a) in arcs.iter().enumerate() {
            for b in &arcs[n + 1..] {
                let shared = (0..t.triangles().len()).any(|d| {
                    let g: Vec<String> = t.germs(d).into_iter().map(|(_, x)| x).collect();
                    g.contains(a) && g.contains(b)
                });
                if shared {
                    continue;
                }
                let ab = path_transport(&t, &[(a.clone(), Forward), (b.clone(), Forward)])?;
                let ba = path_transport(&t, &[(b.clone(), Forward), (a.clone(), Forward)])?;
                cases.push(
                    &fx,
                    format!("square {a},{b}"),
                    ab.agrees_with(&ba),
                    Some(format!("{} vs {}", ab.to_json_value(), ba.to_json_value())),
                );
            }
        }
    }
    Ok(())
}

fn suite_k0(config: &SuiteConfig, cases: &mut Cases) -> Result<()> {
    for (name, qp) in &config.qps {
        let l = K0Lattice::from_quiver(&qp.quiver);
        cases.push(name, "χ antisymmetric", l.is_antisymmetric(), None);
        for v in l.vertices() {
            for e in [1, -1] {
                let m = l.twist_matrix(v, e)?;
                let det = determinant(&m);
                let sym = if e > 0 { '+' } else { '-' };
                cases.push(
                    name,
                    format!("unimodular {v}{sym}"),
                    det.abs() == 1,
                    Some(format!("det {det}")),
                );
                cases.push(
                    name,
                    format!("preserves χ {v}{sym}"),
                    l.preserves_form(&m),
                    None,
                );
            }
        }
        let vs = l.vertices().to_vec();
        for (n, i) in vs.iter().enumerate() {
            for j in &vs[n + 1..] {
                let r = l.braid_relation_check(i, j)?;
                let op = format!("braid {i},{j}");
                match r.expected {
                    Some(rel) => cases.push(
                        name,
                        op,
                        r.passed(),
                        Some(format!(
                            "{rel:?} expected, braid {} commute {}",
                            r.braid_holds, r.commute_holds
                        )),
                    ),
                    None => cases.report(
                        name,
                        op,
                        format!(
                            "{} arrows: braid {} commute {}",
                            r.arrows, r.braid_holds, r.commute_holds
                        ),
                    ),
                }
            }
        }
        if l.rank() <= 4 {
            let words = l.enumerate_words(3)?;
            let bad = words
                .iter()
                .find(|(_, m)| determinant(m).abs() != 1 || !l.preserves_form(m));
            cases.push(
                name,
                "words ≤3 unimodular, χ-preserving",
                bad.is_none(),
                bad.map(|(w, _)| w.to_string()),
            );
            let ids = words
                .iter()
                .filter(|(w, m)| !w.is_empty() && *m == crate::ktheory::identity(l.rank()))
                .count();
            cases.report(
                name,
                "words ≤3",
                format!(
                    "{} words, {} distinct matrices, {ids} nonempty words with identity matrix",
                    words.len(),
                    crate::ktheory::distinct_matrices(&words)
                ),
            );
        }
    }
    Ok(())
}
