use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::qp::{Coeff, Path, PathExpr, Qp};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Arrow,
    Star,
    Loop,
}

/// A generator of the doubled graded quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub id: String,
    pub source: String,
    pub target: String,
    pub degree: i32,
    pub kind: GenKind,
}

pub fn star_name(a: &str) -> String {
    format!("{a}*")
}

pub fn loop_name(v: &str) -> String {
    format!("e_{v}*")
}

/// Ginzburg dg algebra of a QP: arrows in degree 0, reversed arrows `a*` in
/// degree -1 and loops `e_v*` in degree -2, with `d(a) = 0`,
/// `d(a*) = ∂_a W` and `d(e_v*) = Σ_{s(a)=v} a a* - Σ_{t(a)=v} a* a`.
#[derive(Clone, Debug)]
pub struct GinzburgPresentation {
    qp: Qp,
    gens: Vec<Generator>,
    index: BTreeMap<String, usize>,
    rules: BTreeMap<String, PathExpr>,
}

impl GinzburgPresentation {
    pub fn new(qp: &Qp) -> Result<Self> {
        let q = &qp.quiver;
        let mut gens = Vec::new();
        for a in q.arrows() {
            gens.push(Generator {
                id: a.id.clone(),
                source: a.source.clone(),
                target: a.target.clone(),
                degree: 0,
                kind: GenKind::Arrow,
            });
        }
        for a in q.arrows() {
            gens.push(Generator {
                id: star_name(&a.id),
                source: a.target.clone(),
                target: a.source.clone(),
                degree: -1,
                kind: GenKind::Star,
            });
        }
        for v in q.vertices() {
            gens.push(Generator {
                id: loop_name(v),
                source: v.clone(),
                target: v.clone(),
                degree: -2,
                kind: GenKind::Loop,
            });
        }
        let mut index = BTreeMap::new();
        for (i, g) in gens.iter().enumerate() {
            if index.insert(g.id.clone(), i).is_some() {
                return Err(Error::invalid(format!(
                    "generator name `{}` clashes in the doubled quiver",
                    g.id
                )));
            }
        }
        let mut out = GinzburgPresentation {
            qp: qp.clone(),
            gens,
            index,
            rules: BTreeMap::new(),
        };
        for a in q.arrows() {
            out.rules.insert(a.id.clone(), PathExpr::zero());
            let d = qp.potential.cyclic_derivative(q, &a.id)?;
            out.rules.insert(star_name(&a.id), d);
        }
        for v in q.vertices() {
            let mut d = PathExpr::zero();
            for a in q.arrows_from(v) {
                d += &out.gen(&a.id) * &out.gen(&star_name(&a.id));
            }
            for a in q.arrows_into(v) {
                d += -(&out.gen(&star_name(&a.id)) * &out.gen(&a.id));
            }
            out.rules.insert(loop_name(v), d);
        }
        Ok(out)
    }

    pub fn qp(&self) -> &Qp {
        &self.qp
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generator(&self, id: &str) -> Option<&Generator> {
        self.index.get(id).map(|&i| &self.gens[i])
    }

    pub fn rule(&self, id: &str) -> Option<&PathExpr> {
        self.rules.get(id)
    }

    /// Replaces the differential of one generator. Used to build corrupted
    /// negative controls.
    pub fn with_rule(&self, id: &str, d: PathExpr) -> Self {
        let mut out = self.clone();
        out.rules.insert(id.to_string(), d);
        out
    }

    /// The length-one path of a generator.
    pub fn gen_path(&self, id: &str) -> Path {
        let g = self
            .generator(id)
            .unwrap_or_else(|| panic!("unknown generator `{id}`"));
        Path {
            source: g.source.clone(),
            target: g.target.clone(),
            arrows: vec![g.id.clone()],
        }
    }

    pub fn gen(&self, id: &str) -> PathExpr {
        PathExpr::path(self.gen_path(id))
    }

    pub fn star(&self, a: &str) -> PathExpr {
        self.gen(&star_name(a))
    }

    pub fn loop_at(&self, v: &str) -> PathExpr {
        self.gen(&loop_name(v))
    }

    pub fn unit(&self, v: &str) -> PathExpr {
        PathExpr::trivial(v)
    }

    /// Product of generators given by id.
    pub fn word(&self, ids: &[&str]) -> PathExpr {
        let mut out: Option<PathExpr> = None;
        for id in ids {
            let g = self.gen(id);
            out = Some(match out {
                None => g,
                Some(acc) => &acc * &g,
            });
        }
        out.expect("nonempty word")
    }

    /// `∂_p W` for an arrow word `p` of the base quiver.
    pub fn path_derivative(&self, word: &[&str]) -> PathExpr {
        let w: Vec<String> = word.iter().map(|s| s.to_string()).collect();
        self.qp
            .potential
            .path_derivative(&self.qp.quiver, &w)
            .expect("derivative along base arrows")
    }

    pub fn degree_of_path(&self, p: &Path) -> i32 {
        p.arrows
            .iter()
            .map(|a| self.generator(a).map_or(0, |g| g.degree))
            .sum()
    }

    /// Every term of `e` has degree `deg`.
    pub fn is_homogeneous(&self, e: &PathExpr, deg: i32) -> bool {
        e.terms().all(|(p, _)| self.degree_of_path(p) == deg)
    }

    /// Leibniz rule with Koszul signs.
    pub fn d_path(&self, p: &Path) -> PathExpr {
        let mut out = PathExpr::zero();
        let mut prefix_deg = 0;
        for i in 0..p.arrows.len() {
            let x = &p.arrows[i];
            let dx = self.rules.get(x).cloned().unwrap_or_default();
            if !dx.is_zero() {
                let pre = Path {
                    source: p.source.clone(),
                    target: self.gen_path(x).source,
                    arrows: p.arrows[..i].to_vec(),
                };
                let post = Path {
                    source: self.gen_path(x).target,
                    target: p.target.clone(),
                    arrows: p.arrows[i + 1..].to_vec(),
                };
                let sign = if prefix_deg % 2 == 0 {
                    Coeff::one()
                } else {
                    -Coeff::one()
                };
                let term = &(&PathExpr::path(pre) * &dx) * &PathExpr::path(post);
                out += term.scale(sign);
            }
            prefix_deg += self.generator(x).map_or(0, |g| g.degree);
        }
        out
    }

    pub fn d(&self, e: &PathExpr) -> PathExpr {
        e.map_paths(|p| self.d_path(p))
    }

    /// Residuals of `d²` on generators, and generators whose differential
    /// has the wrong degree. Empty means the presentation is a dg algebra.
    pub fn check_d_squared(&self) -> Vec<(String, String)> {
        let mut bad = Vec::new();
        for g in &self.gens {
            let dg = self.rules.get(&g.id).cloned().unwrap_or_default();
            if !self.is_homogeneous(&dg, g.degree + 1) {
                bad.push((g.id.clone(), format!("d({}) = {dg} has wrong degree", g.id)));
                continue;
            }
            let dd = self.d(&dg);
            if !dd.is_zero() {
                bad.push((g.id.clone(), format!("d²({}) = {dd}", g.id)));
            }
        }
        bad
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qp::{Arrow, Potential, Quiver};

    fn s(x: &str) -> String {
        x.to_string()
    }

    fn three_cycle() -> Qp {
        let q = Quiver::new(
            vec![s("1"), s("2"), s("3")],
            vec![
                Arrow::new("x", "1", "2"),
                Arrow::new("y", "2", "3"),
                Arrow::new("z", "3", "1"),
            ],
        )
        .unwrap();
        let mut w = Potential::zero();
        w.add_cycle(&q, &[s("x"), s("y"), s("z")], Coeff::one())
            .unwrap();
        Qp::new(q, w)
    }

    #[test]
    fn rules_of_three_cycle() {
        let g = GinzburgPresentation::new(&three_cycle()).unwrap();
        assert_eq!(g.rule("x*").unwrap(), &g.word(&["y", "z"]));
        assert!(g.rule("x").unwrap().is_zero());
        let expect = &g.word(&["x", "x*"]) - &g.word(&["z*", "z"]);
        assert_eq!(g.rule("e_1*").unwrap(), &expect);
        assert!(g.check_d_squared().is_empty());
    }

    #[test]
    fn negated_rule_breaks_d_squared() {
        let g = GinzburgPresentation::new(&three_cycle()).unwrap();
        let bad = g.with_rule("x*", -g.rule("x*").unwrap().clone());
        let res = bad.check_d_squared();
        assert!(res.iter().any(|(id, _)| id.starts_with("e_")));
    }

    #[test]
    fn leibniz_sign() {
        let g = GinzburgPresentation::new(&three_cycle()).unwrap();
        // d(z* x*) = d(z*) x* - z* d(x*) = x y x* - z* y z
        let lhs = g.d(&g.word(&["z*", "x*"]));
        let rhs = &g.word(&["x", "y", "x*"]) - &g.word(&["z*", "y", "z"]);
        assert_eq!(lhs, rhs);
    }
}
