//! The Keller–Yang generator table `f` from the Ginzburg algebra of the
//! pre-mutation to endomorphisms of `μ♯_k(Γ) = ⊕ P~_v`.

use std::collections::BTreeMap;

use super::algebra::{loop_name, star_name, GenKind, GinzburgPresentation};
use super::module::{DgContext, Gen, Matrix, ModulePresentation};
use crate::error::Result;
use crate::mutation::{premutate, PremutationResult};
use crate::qp::{Arrow, Path, PathExpr, Potential, Qp};

/// `P~_k = P_k[1] ⊕ ⊕_{t(ρ)=k} P^ρ_{s(ρ)}` with `ρ` in the lower-left block.
pub fn mu_sharp(g: &GinzburgPresentation, k: &str) -> Result<ModulePresentation> {
    g.qp().quiver.require_vertex(k)?;
    let rho: Vec<&Arrow> = g.qp().quiver.arrows_into(k).collect();
    let mut gens = vec![Gen::new(k, 1, format!("P_{k}[1]"))];
    for r in &rho {
        gens.push(Gen::new(r.source.clone(), 0, format!("P^{}", r.id)));
    }
    let mut m = ModulePresentation::new(format!("P~_{k}"), gens);
    for (n, r) in rho.iter().enumerate() {
        m.d.set(1 + n, 0, g.gen(&r.id));
    }
    Ok(m)
}

/// `W~` with `-[ab]` substituted in `W~_1`: the image of `W~` under
/// `[ab] -> -[ab]`, `α' -> -α'`. The table is a dg homomorphism on this
/// presentation.
pub fn sign_twisted(pre: &PremutationResult) -> Potential {
    let reversed: std::collections::BTreeSet<&str> =
        pre.reversed.iter().map(|(r, _)| r.as_str()).collect();
    let composite: std::collections::BTreeSet<&str> =
        pre.composites.iter().map(|(c, _, _)| c.as_str()).collect();
    let mut out = Potential::zero();
    for (cycle, c) in pre.potential.cycles() {
        let flip = cycle.iter().any(|a| composite.contains(a.as_str()))
            && !cycle.iter().any(|a| reversed.contains(a.as_str()));
        out.add_normalized(cycle.clone(), if flip { -*c } else { *c });
    }
    out
}

#[derive(Clone, Debug)]
pub struct KyTable {
    pub k: String,
    pub premutation: PremutationResult,
    pub tilde: GinzburgPresentation,
    /// `P~_v` for every vertex.
    pub modules: BTreeMap<String, ModulePresentation>,
    /// `f_x: P~_{t(x)} -> P~_{s(x)}` for every generator `x` of the
    /// pre-mutated Ginzburg algebra.
    pub maps: BTreeMap<String, Matrix>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KyFailure {
    pub generator: String,
    pub detail: String,
}

impl KyTable {
    pub fn new(g: &GinzburgPresentation, k: &str) -> Result<Self> {
        let qp = g.qp();
        let q = &qp.quiver;
        let pre = premutate(q, &qp.potential, k)?;
        let tilde = GinzburgPresentation::new(&Qp::new(pre.quiver.clone(), sign_twisted(&pre)))?;
        let mut modules = BTreeMap::new();
        for v in q.vertices() {
            let m = if v == k {
                mu_sharp(g, k)?
            } else {
                ModulePresentation::new(
                    format!("P_{v}"),
                    vec![Gen::new(v.clone(), 0, format!("P_{v}"))],
                )
            };
            modules.insert(v.clone(), m);
        }
        let rho: Vec<&Arrow> = q.arrows_into(k).collect();
        let nk = 1 + rho.len();
        let rev: BTreeMap<&str, &str> = pre
            .reversed
            .iter()
            .map(|(r, a)| (r.as_str(), a.as_str()))
            .collect();
        let comp: BTreeMap<&str, (&str, &str)> = pre
            .composites
            .iter()
            .map(|(c, a, b)| (c.as_str(), (a.as_str(), b.as_str())))
            .collect();
        let single = |e: PathExpr| {
            let mut m = Matrix::zero(1, 1);
            m.set(0, 0, e);
            m
        };
        let mut maps = BTreeMap::new();
        for x in tilde.generators() {
            let base = match x.kind {
                GenKind::Arrow => x.id.as_str(),
                GenKind::Star => x.id.strip_suffix('*').unwrap_or(&x.id),
                GenKind::Loop => "",
            };
            let m = match x.kind {
                GenKind::Loop => {
                    if x.source == k {
                        let mut m = Matrix::zero(nk, nk);
                        m.set(0, 0, -g.loop_at(k));
                        for (n, r) in rho.iter().enumerate() {
                            m.set(0, 1 + n, -g.star(&r.id));
                        }
                        m
                    } else {
                        single(g.loop_at(&x.source))
                    }
                }
                _ if rev.contains_key(base) => {
                    let a = q.require_arrow(rev[base])?;
                    let star = x.kind == GenKind::Star;
                    if a.target == k {
                        // α with t(α) = k
                        if !star {
                            let mut m = Matrix::zero(nk, 1);
                            let n = rho.iter().position(|r| r.id == a.id).expect("incoming");
                            m.set(1 + n, 0, g.unit(&a.source));
                            m
                        } else {
                            let mut m = Matrix::zero(1, nk);
                            m.set(0, 0, -(&g.gen(&a.id) * &g.loop_at(k)));
                            for (n, r) in rho.iter().enumerate() {
                                m.set(0, 1 + n, -(&g.gen(&a.id) * &g.star(&r.id)));
                            }
                            m
                        }
                    } else if !star {
                        // β with s(β) = k
                        let mut m = Matrix::zero(1, nk);
                        m.set(0, 0, g.star(&a.id));
                        for (n, r) in rho.iter().enumerate() {
                            m.set(0, 1 + n, g.path_derivative(&[&r.id, &a.id]));
                        }
                        m
                    } else {
                        let mut m = Matrix::zero(nk, 1);
                        m.set(0, 0, -g.gen(&a.id));
                        m
                    }
                }
                _ if comp.contains_key(base) => {
                    let (a, b) = comp[base];
                    if x.kind == GenKind::Star {
                        Matrix::zero(1, 1)
                    } else {
                        single(-g.word(&[a, b]))
                    }
                }
                GenKind::Arrow => single(g.gen(&x.id)),
                GenKind::Star => single(g.star(base)),
            };
            maps.insert(x.id.clone(), m);
        }
        Ok(KyTable {
            k: k.to_string(),
            premutation: pre,
            tilde,
            modules,
            maps,
        })
    }

    /// Negative control: flips the sign of one generator's matrix.
    pub fn negate(&mut self, id: &str) {
        if let Some(m) = self.maps.get_mut(id) {
            *m = m.neg();
        }
    }

    pub fn module(&self, v: &str) -> &ModulePresentation {
        &self.modules[v]
    }

    /// `f` on a path of the pre-mutated algebra: the ordered matrix product.
    pub fn apply_path(&self, p: &Path) -> Result<Matrix> {
        let mut acc = Matrix::identity(&self.module(&p.source).gens);
        for x in &p.arrows {
            acc = acc.mul(&self.maps[x])?;
        }
        Ok(acc)
    }

    pub fn apply(&self, e: &PathExpr, source: &str, target: &str) -> Result<Matrix> {
        let mut acc = Matrix::zero(self.module(source).len(), self.module(target).len());
        for (p, c) in e.terms() {
            acc = acc.add(&self.apply_path(p)?.scale(*c))?;
        }
        Ok(acc)
    }

    /// Verifies `f(d~x) = D f(x) - (-1)^{|x|} f(x) D + σ d(f(x))` and the
    /// degree of every entry, for every generator `x`.
    pub fn check(&self, ctx: &DgContext) -> Vec<KyFailure> {
        let mut bad = Vec::new();
        for x in self.tilde.generators() {
            let f = &self.maps[&x.id];
            let (src, tgt) = (self.module(&x.target), self.module(&x.source));
            let issues = ctx.check_entries(&tgt.gens, &src.gens, f, x.degree);
            if !issues.is_empty() {
                bad.push(KyFailure {
                    generator: x.id.clone(),
                    detail: issues.join("; "),
                });
                continue;
            }
            let dx = self.tilde.rule(&x.id).cloned().unwrap_or_default();
            let lhs = match self.apply(&dx, &x.source, &x.target) {
                Ok(m) => m,
                Err(e) => {
                    bad.push(KyFailure {
                        generator: x.id.clone(),
                        detail: e.to_string(),
                    });
                    continue;
                }
            };
            let rhs = ctx
                .chain_residual(src, tgt, f, x.degree)
                .expect("shapes agree");
            let res = lhs.sub(&rhs).expect("shapes agree");
            if !res.is_zero() {
                bad.push(KyFailure {
                    generator: x.id.clone(),
                    detail: format!("f(d~x) - d(f(x)) = {res}"),
                });
            }
        }
        bad
    }

    /// Generator ids of the form `β'*` for arrows leaving the mutation
    /// vertex; used to pick negative controls.
    pub fn beta_star_ids(&self) -> Vec<String> {
        let q = &self.premutation;
        q.reversed
            .iter()
            .filter(|(r, _)| {
                q.quiver
                    .arrow(r)
                    .map(|a| a.target == self.k)
                    .unwrap_or(false)
            })
            .map(|(r, _)| star_name(r))
            .collect()
    }

    pub fn loop_id(&self) -> String {
        loop_name(&self.k)
    }
}
