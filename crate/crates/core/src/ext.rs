//! The graded Ext-algebra of the simples of a triangulation's heart, written
//! in the angle basis: identities and Calabi–Yau classes per arc, one
//! degree-1 angle per clockwise angle between arc sides and one degree-2
//! angle per angle of span two.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::dg::{loop_name, star_name};
use crate::error::{Error, Result};
use crate::surface::DecoratedTriangulation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ExtKind {
    Id,
    Angle,
    Cy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtBasisElement {
    pub id: String,
    pub kind: ExtKind,
    pub degree: u8,
    /// Dual arc of the source simple.
    pub source: String,
    pub target: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub decoration: Option<usize>,
    /// Germ slots of an angle inside its triangle.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub source_slot: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub target_slot: Option<usize>,
}

impl ExtBasisElement {
    fn id_of(arc: &str) -> Self {
        ExtBasisElement {
            id: format!("id:{arc}"),
            kind: ExtKind::Id,
            degree: 0,
            source: arc.to_string(),
            target: arc.to_string(),
            decoration: None,
            source_slot: None,
            target_slot: None,
        }
    }

    fn cy_of(arc: &str) -> Self {
        ExtBasisElement {
            id: format!("cy:{arc}"),
            kind: ExtKind::Cy,
            degree: 3,
            ..Self::id_of(arc)
        }
    }

    pub fn angle_id(decoration: usize, from: usize, to: usize) -> String {
        format!("z{decoration}:{from}>{to}")
    }

    /// Clockwise corner span of an angle.
    pub fn span(&self) -> Option<usize> {
        match (self.source_slot, self.target_slot) {
            (Some(p), Some(q)) => Some((q + 3 - p) % 3),
            _ => None,
        }
    }
}

/// Basis and sparse multiplication table; every nonzero structure constant
/// is `+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtAlgebraTable {
    basis: Vec<ExtBasisElement>,
    index: BTreeMap<String, usize>,
    /// `(f, g) -> f∘g`, with `g` applied first.
    products: BTreeMap<(usize, usize), usize>,
}

#[derive(Serialize, Deserialize)]
struct TableDocument {
    basis: Vec<ExtBasisElement>,
    products: Vec<[String; 3]>,
}

impl ExtAlgebraTable {
    pub fn of(t: &DecoratedTriangulation) -> Result<Self> {
        if t.has_self_glued() {
            return Err(Error::unsupported(
                "Ext tables of triangulations with self-glued triangles",
            ));
        }
        let mut basis = Vec::new();
        for a in t.arcs() {
            basis.push(ExtBasisElement::id_of(&a));
        }
        for (d, tri) in t.triangles().iter().enumerate() {
            for p in 0..3 {
                for span in 1..=2 {
                    let q = (p + span) % 3;
                    if let (Some(a), Some(b)) = (tri[p].arc(), tri[q].arc()) {
                        basis.push(ExtBasisElement {
                            id: ExtBasisElement::angle_id(d, p, q),
                            kind: ExtKind::Angle,
                            degree: span as u8,
                            source: a.to_string(),
                            target: b.to_string(),
                            decoration: Some(d),
                            source_slot: Some(p),
                            target_slot: Some(q),
                        });
                    }
                }
            }
        }
        for a in t.arcs() {
            basis.push(ExtBasisElement::cy_of(&a));
        }
        basis.sort_by(|x, y| (x.degree, &x.id).cmp(&(y.degree, &y.id)));
        Ok(Self::from_basis(basis))
    }

    fn from_basis(basis: Vec<ExtBasisElement>) -> Self {
        let index: BTreeMap<String, usize> = basis
            .iter()
            .enumerate()
            .map(|(n, b)| (b.id.clone(), n))
            .collect();
        let mut products = BTreeMap::new();
        for (fi, f) in basis.iter().enumerate() {
            for (gi, g) in basis.iter().enumerate() {
                if g.target != f.source {
                    continue;
                }
                let out = match (g.kind, f.kind) {
                    (ExtKind::Id, _) => Some(fi),
                    (_, ExtKind::Id) => Some(gi),
                    (ExtKind::Angle, ExtKind::Angle)
                        if g.decoration == f.decoration && g.target_slot == f.source_slot =>
                    {
                        let d = g.decoration.expect("angle");
                        let (p, r) = (g.source_slot.unwrap(), f.target_slot.unwrap());
                        match g.span().unwrap() + f.span().unwrap() {
                            2 => index.get(&ExtBasisElement::angle_id(d, p, r)).copied(),
                            3 => index.get(&format!("cy:{}", g.source)).copied(),
                            _ => None,
                        }
                    }
                    _ => None,
                };
                if let Some(o) = out {
                    products.insert((fi, gi), o);
                }
            }
        }
        ExtAlgebraTable {
            basis,
            index,
            products,
        }
    }

    pub fn basis(&self) -> &[ExtBasisElement] {
        &self.basis
    }

    pub fn element(&self, id: &str) -> Option<&ExtBasisElement> {
        self.index.get(id).map(|&n| &self.basis[n])
    }

    /// `f∘g` (first `g`, then `f`), or `None` for zero.
    pub fn compose(&self, f: &str, g: &str) -> Option<&ExtBasisElement> {
        let (fi, gi) = (*self.index.get(f)?, *self.index.get(g)?);
        self.products.get(&(fi, gi)).map(|&o| &self.basis[o])
    }

    pub fn products(&self) -> impl Iterator<Item = (&str, &str, &str)> {
        self.products.iter().map(|(&(f, g), &o)| {
            (
                self.basis[f].id.as_str(),
                self.basis[g].id.as_str(),
                self.basis[o].id.as_str(),
            )
        })
    }

    /// Dimensions in degrees 0..=3.
    pub fn graded_dims(&self) -> [usize; 4] {
        let mut d = [0; 4];
        for b in &self.basis {
            d[b.degree as usize] += 1;
        }
        d
    }

    /// Dual arcs, i.e. the simples.
    pub fn arcs(&self) -> Vec<String> {
        self.basis
            .iter()
            .filter(|b| b.kind == ExtKind::Id)
            .map(|b| b.source.clone())
            .collect()
    }

    /// Euler form `χ(S_i,S_j) = Σ_d (-1)^d dim Ext^d(S_i,S_j)`, read off the
    /// basis.
    pub fn euler_form(&self) -> BTreeMap<(String, String), i64> {
        let mut chi = BTreeMap::new();
        for a in self.arcs() {
            for b in self.arcs() {
                chi.insert((a.clone(), b), 0);
            }
        }
        for e in &self.basis {
            let sign = if e.degree % 2 == 0 { 1 } else { -1 };
            *chi.get_mut(&(e.source.clone(), e.target.clone()))
                .expect("arc pair") += sign;
        }
        chi
    }

    /// Triples `(a,b,c)` with `(a∘b)∘c != a∘(b∘c)`.
    pub fn associativity_failures(&self) -> Vec<(String, String, String)> {
        let n = self.basis.len();
        let mul = |f: Option<usize>, g: Option<usize>| -> Option<usize> {
            self.products.get(&(f?, g?)).copied()
        };
        let mut bad = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let l = mul(mul(Some(a), Some(b)), Some(c));
                    let r = mul(Some(a), mul(Some(b), Some(c)));
                    if l != r {
                        bad.push((
                            self.basis[a].id.clone(),
                            self.basis[b].id.clone(),
                            self.basis[c].id.clone(),
                        ));
                    }
                }
            }
        }
        bad
    }

    /// Elements on which some identity fails to act as a unit.
    pub fn unit_failures(&self) -> Vec<String> {
        let mut bad = Vec::new();
        for x in &self.basis {
            let left = self.compose(&format!("id:{}", x.target), &x.id);
            let right = self.compose(&x.id, &format!("id:{}", x.source));
            if left.map(|e| &e.id) != Some(&x.id) || right.map(|e| &e.id) != Some(&x.id) {
                bad.push(x.id.clone());
            }
        }
        bad
    }

    /// Degree-1 angles with no degree-2 partner `b` satisfying `b∘a = cy`.
    pub fn pairing_failures(&self) -> Vec<String> {
        let mut bad = Vec::new();
        for a in self.basis.iter().filter(|b| b.degree == 1) {
            let paired = self.basis.iter().filter(|b| b.degree == 2).any(|b| {
                self.compose(&b.id, &a.id)
                    .is_some_and(|c| c.kind == ExtKind::Cy)
            });
            if !paired {
                bad.push(a.id.clone());
            }
        }
        bad
    }

    /// Checks that a basis bijection `self -> other` is degree preserving
    /// and multiplicative; returns the first witness of failure.
    pub fn check_isomorphism(
        &self,
        other: &ExtAlgebraTable,
        map: &BTreeMap<String, String>,
    ) -> std::result::Result<(), String> {
        let targets: BTreeSet<&String> = map.values().collect();
        if map.len() != self.basis.len() || targets.len() != other.basis.len() {
            return Err("not a bijection of bases".into());
        }
        for b in &self.basis {
            let Some(img) = map.get(&b.id).and_then(|i| other.element(i)) else {
                return Err(format!("{} has no image", b.id));
            };
            if img.degree != b.degree {
                return Err(format!("{} -> {} changes degree", b.id, img.id));
            }
        }
        for f in &self.basis {
            for g in &self.basis {
                let left = self.compose(&f.id, &g.id).map(|e| map[&e.id].clone());
                let right = other
                    .compose(&map[&f.id], &map[&g.id])
                    .map(|e| e.id.clone());
                if left != right {
                    return Err(format!(
                        "{}∘{}: image of product {:?}, product of images {:?}",
                        f.id, g.id, left, right
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let doc = TableDocument {
            basis: self.basis.clone(),
            products: self
                .products()
                .map(|(f, g, o)| [f.to_string(), g.to_string(), o.to_string()])
                .collect(),
        };
        serde_json::to_value(doc).expect("table serializes")
    }

    /// Rebuilds a table from its JSON form; the product list must agree with
    /// the clockwise rule.
    pub fn from_json_value(v: serde_json::Value) -> Result<Self> {
        let doc: TableDocument = serde_json::from_value(v)?;
        let table = Self::from_basis(doc.basis);
        let listed: BTreeSet<[String; 3]> = doc.products.into_iter().collect();
        let derived: BTreeSet<[String; 3]> = table
            .products()
            .map(|(f, g, o)| [f.to_string(), g.to_string(), o.to_string()])
            .collect();
        if listed != derived {
            return Err(Error::invalid("product list disagrees with the basis"));
        }
        Ok(table)
    }
}

/// Generators of the doubled quiver `Q̄` (trivial paths, arrows, stars and
/// loops) matched with the angle basis: `e_i -> id`, `τ -> span-1 angle`,
/// `ρ* -> span-2 angle`, `e_i* -> cy`.
pub fn pi_dictionary(t: &DecoratedTriangulation) -> Result<BTreeMap<String, String>> {
    let table = ExtAlgebraTable::of(t)?;
    let mut out = BTreeMap::new();
    for a in t.arcs() {
        out.insert(format!("e_{a}"), format!("id:{a}"));
        out.insert(loop_name(&a), format!("cy:{a}"));
    }
    for arrow in t.qp()?.quiver.arrows() {
        let (d, p) = parse_arrow_id(&arrow.id)?;
        let span1 = ExtBasisElement::angle_id(d, p, (p + 1) % 3);
        let span2 = ExtBasisElement::angle_id(d, (p + 1) % 3, p);
        for id in [&span1, &span2] {
            if table.element(id).is_none() {
                return Err(Error::invalid(format!("no basis element {id}")));
            }
        }
        out.insert(arrow.id.clone(), span1);
        out.insert(star_name(&arrow.id), span2);
    }
    Ok(out)
}

fn parse_arrow_id(id: &str) -> Result<(usize, usize)> {
    let bad = || Error::invalid(format!("`{id}` is not an angle arrow id"));
    let (d, p) = id
        .strip_prefix('t')
        .and_then(|s| s.split_once('.'))
        .ok_or_else(bad)?;
    Ok((d.parse().map_err(|_| bad())?, p.parse().map_err(|_| bad())?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn pentagon_dims() {
        let t = ExtAlgebraTable::of(&fixtures::pentagon()).unwrap();
        assert_eq!(t.graded_dims(), [2, 1, 1, 2]);
    }

    #[test]
    fn central_triangle_angles_compose() {
        let h = fixtures::hexagon_central();
        let t = ExtAlgebraTable::of(&h).unwrap();
        let central = (0..h.decoration_count())
            .find(|&d| h.germs(d).len() == 3)
            .unwrap();
        let a = ExtBasisElement::angle_id(central, 0, 1);
        let b = ExtBasisElement::angle_id(central, 1, 2);
        let c = t.compose(&b, &a).unwrap();
        assert_eq!(c.id, ExtBasisElement::angle_id(central, 0, 2));
        assert_eq!(c.degree, 2);
    }

    #[test]
    fn angles_at_different_decorations_vanish() {
        let t = ExtAlgebraTable::of(&fixtures::annulus()).unwrap();
        let deg1: Vec<_> = t.basis().iter().filter(|b| b.degree == 1).collect();
        assert_eq!(deg1.len(), 2);
        assert_ne!(deg1[0].decoration, deg1[1].decoration);
        for x in &deg1 {
            for y in t.basis().iter().filter(|b| b.degree == 2) {
                if x.decoration != y.decoration {
                    assert!(t.compose(&y.id, &x.id).is_none());
                }
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let t = ExtAlgebraTable::of(&fixtures::hexagon()).unwrap();
        let back = ExtAlgebraTable::from_json_value(t.to_json_value()).unwrap();
        assert_eq!(t, back);
    }

    #[test]
    fn dictionary_covers_doubled_quiver() {
        let h = fixtures::hexagon_central();
        let d = pi_dictionary(&h).unwrap();
        let q = h.qp().unwrap().quiver;
        assert_eq!(d.len(), 2 * q.vertices().len() + 2 * q.arrows().len());
        let vals: BTreeSet<_> = d.values().collect();
        assert_eq!(vals.len(), d.len());
    }
}
