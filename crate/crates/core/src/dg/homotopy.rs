//! Lifts of the morphisms `π_R`, `π♯_R` to the resolutions, and the
//! identities `φ_t ∘ F(π_R) - π♯_R ∘ φ_s = [d, θ]` for arrows `R` of the
//! pre-mutated quiver at the mutation vertex.

use num_traits::One;
use serde::Serialize;

use super::algebra::GinzburgPresentation;
use super::module::{ChainMap, DgContext, Matrix};
use super::resolution::{pair_key, sharp_bundle, SharpBundle};
use crate::error::{Error, Result};
use crate::qp::{Arrow, Coeff};

/// Which transcription of the `𝔟′`, `𝔟′*` maps to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Transcription {
    /// Entries exactly as printed.
    Literal,
    /// Index typos fixed and signs chosen so that the diagrams commute.
    Corrected,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HomotopyCase {
    /// `R = 𝔞′` for `𝔞: i -> k`.
    APrime,
    /// `R = 𝔞′*`.
    APrimeStar,
    /// `R = 𝔟′` for `𝔟: k -> i`.
    BPrime,
    /// `R = 𝔟′*`.
    BPrimeStar,
}

impl HomotopyCase {
    pub fn name(self) -> &'static str {
        match self {
            HomotopyCase::APrime => "a'",
            HomotopyCase::APrimeStar => "a'*",
            HomotopyCase::BPrime => "b'",
            HomotopyCase::BPrimeStar => "b'*",
        }
    }
}

/// All data of one case: the two lifted maps, the two composites, and the
/// homotopy.
#[derive(Clone, Debug)]
pub struct HomotopyInstance {
    pub case: HomotopyCase,
    pub arrow: String,
    pub i: String,
    pub k: String,
    /// `F(π_R)` lifted to the `F(pS~)` resolutions.
    pub f_lift: ChainMap,
    /// `π♯_R` lifted to the sharp resolutions.
    pub sharp_lift: ChainMap,
    /// `φ_t ∘ F(π_R)`.
    pub left: Matrix,
    /// `π♯_R ∘ φ_s`.
    pub right: Matrix,
    pub theta: Matrix,
    /// Shared source and target of `left`, `right` and `θ`.
    pub source: super::module::ModulePresentation,
    pub target: super::module::ModulePresentation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomotopyOutcome {
    pub case: HomotopyCase,
    pub arrow: String,
    pub f_lift_ok: bool,
    pub sharp_lift_ok: bool,
    pub identity_ok: bool,
    pub witness: Option<String>,
}

impl HomotopyOutcome {
    pub fn passed(&self) -> bool {
        self.f_lift_ok && self.sharp_lift_ok && self.identity_ok
    }
}

fn one(v: &str) -> crate::qp::PathExpr {
    crate::qp::PathExpr::trivial(v)
}

fn sign(t: Transcription) -> Coeff {
    match t {
        Transcription::Literal => Coeff::one(),
        Transcription::Corrected => -Coeff::one(),
    }
}

/// Builds the case data for an arrow at the mutation vertex `k`.
pub fn homotopy_instance(
    g: &GinzburgPresentation,
    k: &str,
    arrow: &str,
    case: HomotopyCase,
    tr: Transcription,
) -> Result<HomotopyInstance> {
    let q = &g.qp().quiver;
    let ar = q.require_arrow(arrow)?.clone();
    let i = match case {
        HomotopyCase::APrime | HomotopyCase::APrimeStar => {
            if ar.target != k {
                return Err(Error::invalid(format!("`{arrow}` does not end at {k}")));
            }
            ar.source.clone()
        }
        HomotopyCase::BPrime | HomotopyCase::BPrimeStar => {
            if ar.source != k {
                return Err(Error::invalid(format!("`{arrow}` does not start at {k}")));
            }
            ar.target.clone()
        }
    };
    let bi = sharp_bundle(g, k, &i)?;
    let bk = sharp_bundle(g, k, k)?;
    let into_k: Vec<&Arrow> = q.arrows_into(k).collect();
    let out_of_k: Vec<&Arrow> = q.arrows_from(k).collect();
    let a = arrow;
    match case {
        HomotopyCase::APrime => {
            // F(pS~_k) -> F(pS~_i)[1]
            let (fi, fk) = (&bi.f_layout, &bk.f_layout);
            let mut f = Matrix::zero(fi.gens.len(), fk.gens.len());
            f.set(fi.at(4, a), fk.at(1, ""), one(k));
            for r in &into_k {
                f.set(
                    fi.at(5, &pair_key(a, &r.id)),
                    fk.at(2, &r.id),
                    one(&r.source),
                );
            }
            for c in &out_of_k {
                f.set(
                    fi.at(7, &pair_key(a, &c.id)),
                    fk.at(3, &c.id),
                    one(&c.target),
                );
            }
            f.set(fi.at(10, ""), fk.at(4, a), one(&i));
            // pS#_k -> pS#_i[1]
            let (si, sk) = (&bi.sharp_layout, &bk.sharp_layout);
            let mut s = Matrix::zero(si.gens.len(), sk.gens.len());
            s.set(si.at(7, a), sk.at(1, ""), one(k));
            for r in &into_k {
                s.set(
                    si.at(8, &pair_key(a, &r.id)),
                    sk.at(2, &r.id),
                    one(&r.source),
                );
            }
            for c in &out_of_k {
                s.set(
                    si.at(9, &pair_key(a, &c.id)),
                    sk.at(3, &c.id),
                    one(&c.target),
                );
            }
            s.set(si.at(10, a), sk.at(4, ""), one(k));
            // θ: F(pS~_k) -> pS#_i[1], degree -1
            let mut theta = Matrix::zero(si.gens.len(), fk.gens.len());
            theta.set(si.at(5, a), fk.at(5, ""), one(k));
            theta.set(si.at(6, ""), fk.at(6, a), one(&i));
            assemble(case, a, &bk, &bi, f, s, theta, 1)
        }
        HomotopyCase::APrimeStar => {
            // F(pS~_i) -> F(pS~_k)[2]
            let (fi, fk) = (&bi.f_layout, &bk.f_layout);
            let mut f = Matrix::zero(fk.gens.len(), fi.gens.len());
            f.set(fk.at(4, a), fi.at(1, ""), one(&i));
            f.set(fk.at(5, ""), fi.at(4, a), one(k));
            for r in &into_k {
                f.set(
                    fk.at(6, &r.id),
                    fi.at(5, &pair_key(a, &r.id)),
                    one(&r.source),
                );
            }
            let (si, sk) = (&bi.sharp_layout, &bk.sharp_layout);
            let mut s = Matrix::zero(sk.gens.len(), si.gens.len());
            s.set(sk.at(4, ""), si.at(7, a), one(k));
            let theta = Matrix::zero(sk.gens.len(), fi.gens.len());
            assemble(case, a, &bi, &bk, f, s, theta, 2)
        }
        HomotopyCase::BPrime => {
            // F(pS~_i) -> F(pS~_k)[1]
            let (fi, fk) = (&bi.f_layout, &bk.f_layout);
            let mut f = Matrix::zero(fk.gens.len(), fi.gens.len());
            f.set(fk.at(3, a), fi.at(1, ""), one(&i));
            for w in &into_k {
                f.set(
                    fk.at(4, &w.id),
                    fi.at(3, &pair_key(&w.id, a)),
                    one(&w.source),
                );
            }
            f.set(fk.at(5, ""), fi.at(8, a), one(k));
            for x in &into_k {
                let (row, col) = match tr {
                    Transcription::Corrected => {
                        (Some(fk.at(6, &x.id)), fi.get(9, &pair_key(&x.id, a)))
                    }
                    // δ_{𝔟,x} never fires: 𝔟 leaves k while x enters it.
                    Transcription::Literal => (None, None),
                };
                if let (Some(r), Some(c)) = (row, col) {
                    f.set(r, c, one(&x.source));
                }
            }
            let (si, sk) = (&bi.sharp_layout, &bk.sharp_layout);
            let mut s = Matrix::zero(sk.gens.len(), si.gens.len());
            s.set(sk.at(3, a), si.at(1, ""), one(&i).scale(sign(tr)));
            s.set(sk.at(4, ""), si.at(3, a), one(k).scale(sign(tr)));
            let theta = Matrix::zero(sk.gens.len(), fi.gens.len());
            assemble(case, a, &bi, &bk, f, s, theta, 1)
        }
        HomotopyCase::BPrimeStar => {
            // F(pS~_k) -> F(pS~_i)[2]
            let (fi, fk) = (&bi.f_layout, &bk.f_layout);
            let mut f = Matrix::zero(fi.gens.len(), fk.gens.len());
            f.set(fi.at(8, a), fk.at(1, ""), one(k));
            if tr == Transcription::Corrected {
                for r in &into_k {
                    f.set(
                        fi.at(9, &pair_key(&r.id, a)),
                        fk.at(2, &r.id),
                        one(&r.source),
                    );
                }
            }
            f.set(fi.at(10, ""), fk.at(3, a), one(&i));
            let f = f.scale(sign(tr));
            let (si, sk) = (&bi.sharp_layout, &bk.sharp_layout);
            let mut s = Matrix::zero(si.gens.len(), sk.gens.len());
            s.set(si.at(3, a), sk.at(1, ""), one(k));
            for r in &into_k {
                for b in q.arrows_from(&i).filter(|b| b.target != k) {
                    s.set(
                        si.at(4, &b.id),
                        sk.at(2, &r.id),
                        g.path_derivative(&[&r.id, a, &b.id]),
                    );
                }
            }
            s.set(si.at(6, ""), sk.at(3, a), one(&i));
            let theta = Matrix::zero(si.gens.len(), fk.gens.len());
            assemble(case, a, &bk, &bi, f, s, theta, 2)
        }
    }
}

/// `from` is the bundle of the source vertex of `R`, `to` of the target.
#[allow(clippy::too_many_arguments)]
fn assemble(
    case: HomotopyCase,
    arrow: &str,
    from: &SharpBundle,
    to: &SharpBundle,
    f: Matrix,
    s: Matrix,
    theta: Matrix,
    shift: i32,
) -> Result<HomotopyInstance> {
    let f_lift = ChainMap::new(
        format!("F(pi_{})", case.name()),
        from.f_module().clone(),
        to.f_module().shifted(shift),
        f,
        0,
    );
    let sharp_lift = ChainMap::new(
        format!("pi#_{}", case.name()),
        from.sharp_module().clone(),
        to.sharp_module().shifted(shift),
        s,
        0,
    );
    let left = to.phi.matrix.mul(&f_lift.matrix)?;
    let right = sharp_lift.matrix.mul(&from.phi.matrix)?;
    Ok(HomotopyInstance {
        case,
        arrow: arrow.to_string(),
        i: if from.i == from.k {
            to.i.clone()
        } else {
            from.i.clone()
        },
        k: from.k.clone(),
        source: from.f_module().clone(),
        target: to.sharp_module().shifted(shift),
        f_lift,
        sharp_lift,
        left,
        right,
        theta,
    })
}

impl HomotopyInstance {
    pub fn verify(&self, ctx: &DgContext) -> HomotopyOutcome {
        let f_issues = ctx.check_chain_map(&self.f_lift);
        let s_issues = ctx.check_chain_map(&self.sharp_lift);
        let mut theta_issues =
            ctx.check_entries(&self.target.gens, &self.source.gens, &self.theta, -1);
        let res = ctx.homotopy_residual(
            &self.source,
            &self.target,
            &self.left,
            &self.right,
            &self.theta,
        );
        match &res {
            Ok(m) if m.is_zero() => {}
            Ok(m) => theta_issues.push(format!("φ∘F(π) - π♯∘φ - [d,θ] = {m}")),
            Err(e) => theta_issues.push(e.to_string()),
        }
        let mut witness = Vec::new();
        for (what, v) in [
            ("F(π) lift", &f_issues),
            ("π♯ lift", &s_issues),
            ("identity", &theta_issues),
        ] {
            if !v.is_empty() {
                witness.push(format!("{what}: {}", v.join("; ")));
            }
        }
        HomotopyOutcome {
            case: self.case,
            arrow: self.arrow.clone(),
            f_lift_ok: f_issues.is_empty(),
            sharp_lift_ok: s_issues.is_empty(),
            identity_ok: theta_issues.is_empty(),
            witness: if witness.is_empty() {
                None
            } else {
                Some(witness.join(" | "))
            },
        }
    }
}

/// Every case at `k`: `𝔞′`, `𝔞′*` for arrows into `k`, `𝔟′`, `𝔟′*` for
/// arrows out of `k`.
pub fn all_cases(
    g: &GinzburgPresentation,
    k: &str,
    tr: Transcription,
) -> Result<Vec<HomotopyInstance>> {
    let q = &g.qp().quiver;
    let mut out = Vec::new();
    for a in q.arrows_into(k) {
        for case in [HomotopyCase::APrime, HomotopyCase::APrimeStar] {
            out.push(homotopy_instance(g, k, &a.id, case, tr)?);
        }
    }
    for b in q.arrows_from(k) {
        for case in [HomotopyCase::BPrime, HomotopyCase::BPrimeStar] {
            out.push(homotopy_instance(g, k, &b.id, case, tr)?);
        }
    }
    Ok(out)
}
