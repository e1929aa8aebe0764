//! Exact path algebra over the rationals: quivers, linear combinations of
//! paths, cyclically normalized potentials and cyclic derivatives.
//!
//! Paths compose left to right: `ab` means first `a`, then `b`, so a path is
//! only valid when the target of each arrow is the source of the next.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exact coefficient type used everywhere in the crate.
pub type Coeff = Rational64;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub id: String,
    #[serde(rename = "src")]
    pub source: String,
    #[serde(rename = "tgt")]
    pub target: String,
}

impl Arrow {
    pub fn new(
        id: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
    ) -> Self {
        Arrow {
            id: id.into(),
            source: source.into(),
            target: target.into(),
        }
    }
}

/// A finite quiver. Vertex order and arrow order are the construction order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    index: BTreeMap<String, usize>,
}

impl Quiver {
    /// Builds a quiver without loops. Oriented 2-cycles are allowed; use
    /// [`Quiver::check_no_two_cycles`] where they are forbidden.
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(Error::invalid(format!("duplicate vertex `{v}`")));
            }
        }
        let mut index = BTreeMap::new();
        for (i, a) in arrows.iter().enumerate() {
            if index.insert(a.id.clone(), i).is_some() {
                return Err(Error::invalid(format!("duplicate arrow id `{}`", a.id)));
            }
            for end in [&a.source, &a.target] {
                if !seen.contains(end) {
                    return Err(Error::invalid(format!(
                        "arrow `{}` references unknown vertex `{end}`",
                        a.id
                    )));
                }
            }
            if a.source == a.target {
                return Err(Error::invalid(format!("arrow `{}` is a loop", a.id)));
            }
        }
        Ok(Quiver {
            vertices,
            arrows,
            index,
        })
    }

    /// Same as [`Quiver::new`], additionally rejecting oriented 2-cycles.
    pub fn new_strict(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let q = Self::new(vertices, arrows)?;
        q.check_no_two_cycles()?;
        Ok(q)
    }

    pub fn check_no_two_cycles(&self) -> Result<()> {
        for a in &self.arrows {
            if let Some(b) = self
                .arrows
                .iter()
                .find(|b| b.source == a.target && b.target == a.source)
            {
                return Err(Error::invalid(format!(
                    "oriented 2-cycle between arrows `{}` and `{}`",
                    a.id, b.id
                )));
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertices.iter().any(|x| x == v)
    }

    pub fn arrow(&self, id: &str) -> Option<&Arrow> {
        self.index.get(id).map(|&i| &self.arrows[i])
    }

    pub fn require_arrow(&self, id: &str) -> Result<&Arrow> {
        self.arrow(id)
            .ok_or_else(|| Error::UnknownArrow(id.to_string()))
    }

    pub fn require_vertex(&self, v: &str) -> Result<()> {
        if self.has_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v.to_string()))
        }
    }

    pub fn arrows_from<'a>(&'a self, v: &'a str) -> impl Iterator<Item = &'a Arrow> + 'a {
        self.arrows.iter().filter(move |a| a.source == v)
    }

    pub fn arrows_into<'a>(&'a self, v: &'a str) -> impl Iterator<Item = &'a Arrow> + 'a {
        self.arrows.iter().filter(move |a| a.target == v)
    }

    /// Number of arrows `i -> j`.
    pub fn arrow_count(&self, i: &str, j: &str) -> usize {
        self.arrows
            .iter()
            .filter(|a| a.source == i && a.target == j)
            .count()
    }

    /// The length-one path of an arrow.
    pub fn path_of(&self, id: &str) -> Result<Path> {
        let a = self.require_arrow(id)?;
        Ok(Path::arrow(a))
    }

    /// Builds the path spelled by `word`, checking composability.
    pub fn path(&self, word: &[String]) -> Result<Path> {
        let first = word
            .first()
            .ok_or_else(|| Error::invalid("empty arrow word"))?;
        let mut p = self.path_of(first)?;
        for id in &word[1..] {
            let next = self.path_of(id)?;
            p = p
                .then(&next)
                .ok_or_else(|| Error::invalid(format!("arrow word {word:?} is not composable")))?;
        }
        Ok(p)
    }
}

/// A path in a quiver: a trivial path at a vertex or a composable word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Path {
    pub source: String,
    pub target: String,
    pub arrows: Vec<String>,
}

impl Path {
    pub fn trivial(v: impl Into<String>) -> Self {
        let v = v.into();
        Path {
            source: v.clone(),
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(a: &Arrow) -> Self {
        Path {
            source: a.source.clone(),
            target: a.target.clone(),
            arrows: vec![a.id.clone()],
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `other`, or `None` when they do not compose.
    pub fn then(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend(other.arrows.iter().cloned());
        Some(Path {
            source: self.source.clone(),
            target: other.target.clone(),
            arrows,
        })
    }
}

impl fmt::Display for Path {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arrows.is_empty() {
            write!(f, "e_{}", self.source)
        } else {
            write!(f, "{}", self.arrows.join("."))
        }
    }
}

/// A finite linear combination of paths with nonzero rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PathExpr {
    terms: BTreeMap<Path, Coeff>,
}

impl PathExpr {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn path(p: Path) -> Self {
        Self::term(p, Coeff::one())
    }

    pub fn term(p: Path, c: Coeff) -> Self {
        let mut e = Self::zero();
        e.add_term(p, c);
        e
    }

    pub fn trivial(v: impl Into<String>) -> Self {
        Self::path(Path::trivial(v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, p: Path, c: Coeff) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(p) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Coeff)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, p: &Path) -> Coeff {
        self.terms.get(p).copied().unwrap_or_else(Coeff::zero)
    }

    pub fn scale(&self, c: Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        PathExpr {
            terms: self
                .terms
                .iter()
                .map(|(p, v)| (p.clone(), *v * c))
                .collect(),
        }
    }

    /// Applies a linear map defined on single paths.
    pub fn map_paths(&self, mut f: impl FnMut(&Path) -> PathExpr) -> PathExpr {
        let mut out = PathExpr::zero();
        for (p, c) in &self.terms {
            out += f(p).scale(*c);
        }
        out
    }
}

impl AddAssign<PathExpr> for PathExpr {
    fn add_assign(&mut self, rhs: PathExpr) {
        for (p, c) in rhs.terms {
            self.add_term(p, c);
        }
    }
}

impl AddAssign<&PathExpr> for PathExpr {
    fn add_assign(&mut self, rhs: &PathExpr) {
        for (p, c) in &rhs.terms {
            self.add_term(p.clone(), *c);
        }
    }
}

impl Add for &PathExpr {
    type Output = PathExpr;
    fn add(self, rhs: &PathExpr) -> PathExpr {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for PathExpr {
    type Output = PathExpr;
    fn add(mut self, rhs: PathExpr) -> PathExpr {
        self += rhs;
        self
    }
}

impl Neg for &PathExpr {
    type Output = PathExpr;
    fn neg(self) -> PathExpr {
        self.scale(-Coeff::one())
    }
}

impl Neg for PathExpr {
    type Output = PathExpr;
    fn neg(self) -> PathExpr {
        -&self
    }
}

impl Sub for &PathExpr {
    type Output = PathExpr;
    fn sub(self, rhs: &PathExpr) -> PathExpr {
        self + &(-rhs)
    }
}

impl Sub for PathExpr {
    type Output = PathExpr;
    fn sub(self, rhs: PathExpr) -> PathExpr {
        &self - &rhs
    }
}

/// Bilinear concatenation; non-composable pairs contribute zero.
impl Mul for &PathExpr {
    type Output = PathExpr;
    fn mul(self, rhs: &PathExpr) -> PathExpr {
        let mut out = PathExpr::zero();
        for (p, a) in &self.terms {
            for (q, b) in &rhs.terms {
                if let Some(pq) = p.then(q) {
                    out.add_term(pq, *a * *b);
                }
            }
        }
        out
    }
}

impl Mul for PathExpr {
    type Output = PathExpr;
    fn mul(self, rhs: PathExpr) -> PathExpr {
        &self * &rhs
    }
}

impl fmt::Display for PathExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "{p}")?;
            } else {
                write!(f, "{a}*{p}")?;
            }
        }
        Ok(())
    }
}

/// Lexicographically minimal rotation of a cyclic word.
pub fn normalize_cycle(cycle: &[String]) -> Vec<String> {
    (0..cycle.len())
        .map(|r| {
            let mut w = cycle[r..].to_vec();
            w.extend_from_slice(&cycle[..r]);
            w
        })
        .min()
        .unwrap_or_default()
}

/// A potential: linear combination of cycles, keyed by canonical rotation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Potential {
    cycles: BTreeMap<Vec<String>, Coeff>,
}

impl Potential {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Adds `c * cycle`, checking that `cycle` is a cycle of `quiver`.
    pub fn add_cycle(&mut self, quiver: &Quiver, cycle: &[String], c: Coeff) -> Result<()> {
        let p = quiver.path(cycle)?;
        if p.source != p.target {
            return Err(Error::invalid(format!("{cycle:?} is not a cycle")));
        }
        self.add_normalized(normalize_cycle(cycle), c);
        Ok(())
    }

    pub(crate) fn add_normalized(&mut self, key: Vec<String>, c: Coeff) {
        if c.is_zero() {
            return;
        }
        let v = *self.cycles.entry(key.clone()).or_insert_with(Coeff::zero) + c;
        if v.is_zero() {
            self.cycles.remove(&key);
        } else {
            self.cycles.insert(key, v);
        }
    }

    pub fn cycles(&self) -> impl Iterator<Item = (&Vec<String>, &Coeff)> {
        self.cycles.iter()
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// Every arrow occurring in some term.
    pub fn support(&self) -> BTreeSet<String> {
        self.cycles.keys().flatten().cloned().collect()
    }

    /// Renames arrows; the result is re-normalized.
    pub fn rename(&self, f: impl Fn(&str) -> String) -> Potential {
        let mut out = Potential::zero();
        for (w, c) in &self.cycles {
            let renamed: Vec<String> = w.iter().map(|a| f(a)).collect();
            out.add_normalized(normalize_cycle(&renamed), *c);
        }
        out
    }

    /// Cyclic derivative `∂_a W`.
    pub fn cyclic_derivative(&self, quiver: &Quiver, a: &str) -> Result<PathExpr> {
        quiver.require_arrow(a)?;
        self.path_derivative(quiver, &[a.to_string()])
    }

    /// `∂_p W`: for every rotation of every term that starts with the word
    /// `p`, the remaining path after `p`.
    pub fn path_derivative(&self, quiver: &Quiver, p: &[String]) -> Result<PathExpr> {
        let mut out = PathExpr::zero();
        if p.is_empty() {
            return Err(Error::invalid("derivative along an empty word"));
        }
        for (w, c) in &self.cycles {
            let n = w.len();
            if p.len() > n {
                continue;
            }
            for r in 0..n {
                if (0..p.len()).all(|i| w[(r + i) % n] == p[i]) {
                    let rest: Vec<String> = (p.len()..n).map(|i| w[(r + i) % n].clone()).collect();
                    let path = if rest.is_empty() {
                        let last = quiver.require_arrow(&p[p.len() - 1])?;
                        Path::trivial(last.target.clone())
                    } else {
                        quiver.path(&rest)?
                    };
                    out.add_term(path, *c);
                }
            }
        }
        Ok(out)
    }

    /// Terms that are 2-cycles.
    pub fn two_cycle_terms(&self) -> Vec<(Vec<String>, Coeff)> {
        self.cycles
            .iter()
            .filter(|(w, _)| w.len() == 2)
            .map(|(w, c)| (w.clone(), *c))
            .collect()
    }
}

impl fmt::Display for Potential {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.cycles.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .cycles
            .iter()
            .map(|(w, c)| {
                if c.is_one() {
                    w.join(".")
                } else {
                    format!("{c}*{}", w.join("."))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QpClass {
    Trivial,
    Reduced,
    Mixed,
}

/// Trivial: every term is a 2-cycle and they cover every arrow. Reduced: no
/// 2-cycle term. Mixed otherwise.
pub fn classify_qp(quiver: &Quiver, w: &Potential) -> QpClass {
    let two = w.two_cycle_terms();
    if two.is_empty() {
        return QpClass::Reduced;
    }
    let all_two = w.cycles().all(|(c, _)| c.len() == 2);
    let covered: BTreeSet<&String> = two.iter().flat_map(|(c, _)| c.iter()).collect();
    if all_two && quiver.arrows().iter().all(|a| covered.contains(&a.id)) {
        QpClass::Trivial
    } else {
        QpClass::Mixed
    }
}

/// A quiver with potential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Qp {
    pub quiver: Quiver,
    pub potential: Potential,
}

impl Qp {
    pub fn new(quiver: Quiver, potential: Potential) -> Self {
        Qp { quiver, potential }
    }

    pub fn classify(&self) -> QpClass {
        classify_qp(&self.quiver, &self.potential)
    }

    pub fn to_document(&self) -> QpDocument {
        QpDocument {
            vertices: self.quiver.vertices().to_vec(),
            arrows: self.quiver.arrows().to_vec(),
            potential: self
                .potential
                .cycles()
                .map(|(w, c)| PotentialTerm {
                    cycle: w.clone(),
                    coeff: format_coeff(c),
                })
                .collect(),
        }
    }

    pub fn from_document(doc: &QpDocument) -> Result<Self> {
        let quiver = Quiver::new(doc.vertices.clone(), doc.arrows.clone())?;
        let mut potential = Potential::zero();
        for t in &doc.potential {
            potential.add_cycle(&quiver, &t.cycle, parse_coeff(&t.coeff)?)?;
        }
        Ok(Qp { quiver, potential })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("qp document serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: QpDocument = serde_json::from_str(s)?;
        Self::from_document(&doc)
    }
}

/// JSON layout of a quiver with potential.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QpDocument {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    #[serde(default)]
    pub potential: Vec<PotentialTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PotentialTerm {
    pub cycle: Vec<String>,
    pub coeff: String,
}

pub fn format_coeff(c: &Coeff) -> String {
    format!("{}/{}", c.numer(), c.denom())
}

/// Parses `"p/q"` or an integer `"p"`.
pub fn parse_coeff(s: &str) -> Result<Coeff> {
    let bad = || Error::invalid(format!("malformed coefficient `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Coeff::new(p, q))
        }
        None => Ok(Coeff::from_integer(s.trim().parse().map_err(|_| bad())?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn multiply_examples() {
        let qp = three_cycle();
        let q = &qp.quiver;
        let x = PathExpr::path(q.path_of("x").unwrap());
        let y = PathExpr::path(q.path_of("y").unwrap());
        let xy = &x * &y;
        assert_eq!(xy, PathExpr::path(q.path(&[s("x"), s("y")]).unwrap()));
        assert!((&x * &x).is_zero());
        assert_eq!(&PathExpr::trivial("1") * &x, x);
        assert!((&PathExpr::trivial("2") * &x).is_zero());
    }

    #[test]
    fn cyclic_derivative_examples() {
        let qp = three_cycle();
        let (q, w) = (&qp.quiver, &qp.potential);
        assert_eq!(
            w.cyclic_derivative(q, "x").unwrap(),
            PathExpr::path(q.path(&[s("y"), s("z")]).unwrap())
        );
        assert_eq!(
            w.cyclic_derivative(q, "y").unwrap(),
            PathExpr::path(q.path(&[s("z"), s("x")]).unwrap())
        );
        let q2 = Quiver::new(
            vec![s("1"), s("2"), s("3"), s("4")],
            vec![
                Arrow::new("x", "1", "2"),
                Arrow::new("y", "2", "3"),
                Arrow::new("z", "3", "1"),
                Arrow::new("u", "3", "4"),
            ],
        )
        .unwrap();
        let mut w2 = Potential::zero();
        w2.add_cycle(&q2, &[s("x"), s("y"), s("z")], Coeff::one())
            .unwrap();
        assert!(w2.cyclic_derivative(&q2, "u").unwrap().is_zero());
        assert!(matches!(
            w2.cyclic_derivative(&q2, "nope"),
            Err(Error::UnknownArrow(_))
        ));
    }

    #[test]
    fn full_cycle_derivative_is_trivial_path() {
        let qp = three_cycle();
        let d = qp
            .potential
            .path_derivative(&qp.quiver, &[s("y"), s("z"), s("x")])
            .unwrap();
        assert_eq!(d, PathExpr::trivial("2"));
    }

    #[test]
    fn rotation_is_normalized() {
        let qp = three_cycle();
        let mut w = Potential::zero();
        w.add_cycle(&qp.quiver, &[s("z"), s("x"), s("y")], Coeff::one())
            .unwrap();
        assert_eq!(w, qp.potential);
    }

    #[test]
    fn classify_examples() {
        let q = Quiver::new(
            vec![s("1"), s("2")],
            vec![Arrow::new("u", "1", "2"), Arrow::new("v", "2", "1")],
        )
        .unwrap();
        let mut w = Potential::zero();
        w.add_cycle(&q, &[s("u"), s("v")], Coeff::one()).unwrap();
        assert_eq!(classify_qp(&q, &w), QpClass::Trivial);

        let qp = three_cycle();
        assert_eq!(qp.classify(), QpClass::Reduced);

        let q = Quiver::new(
            vec![s("1"), s("2"), s("3"), s("4"), s("5")],
            vec![
                Arrow::new("u", "1", "2"),
                Arrow::new("v", "2", "1"),
                Arrow::new("x", "3", "4"),
                Arrow::new("y", "4", "5"),
                Arrow::new("z", "5", "3"),
            ],
        )
        .unwrap();
        let mut w = Potential::zero();
        w.add_cycle(&q, &[s("u"), s("v")], Coeff::one()).unwrap();
        w.add_cycle(&q, &[s("x"), s("y"), s("z")], Coeff::one())
            .unwrap();
        assert_eq!(classify_qp(&q, &w), QpClass::Mixed);
    }

    #[test]
    fn rejects_loops_and_two_cycles() {
        assert!(Quiver::new(vec![s("1")], vec![Arrow::new("a", "1", "1")]).is_err());
        let two = vec![Arrow::new("u", "1", "2"), Arrow::new("v", "2", "1")];
        assert!(Quiver::new(vec![s("1"), s("2")], two.clone()).is_ok());
        assert!(Quiver::new_strict(vec![s("1"), s("2")], two).is_err());
    }

    #[test]
    fn json_round_trip() {
        let mut qp = three_cycle();
        qp.potential = qp.potential.scale_for_test(Coeff::new(-3, 2));
        let back = Qp::from_json(&qp.to_json()).unwrap();
        assert_eq!(back, qp);
        assert!(qp.to_json().contains("\"-3/2\""));
    }

    impl Potential {
        fn scale_for_test(&self, c: Coeff) -> Potential {
            let mut out = Potential::zero();
            for (w, v) in self.cycles() {
                out.add_normalized(w.clone(), *v * c);
            }
            out
        }
    }
}
