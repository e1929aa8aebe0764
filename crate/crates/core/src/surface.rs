//! Marked surfaces, decorated triangulations and flips.
//!
//! A triangulation is stored as one side triple per triangle. The index of a
//! triangle is the id of its decorating point, so flips move side triples
//! between decorations and the decorated datum is exactly the triangle list.
//! Sides of a triangle are listed in clockwise order.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use petgraph::dot::Dot;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qp::{Arrow, Coeff, Potential, Qp, Quiver};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedSurface {
    pub genus: u32,
    /// Marked points on each boundary component.
    pub boundaries: Vec<u32>,
}

impl MarkedSurface {
    pub fn new(genus: u32, boundaries: Vec<u32>) -> Result<Self> {
        if boundaries.is_empty() {
            return Err(Error::invalid("surface needs a boundary component"));
        }
        if boundaries.contains(&0) {
            return Err(Error::invalid(
                "every boundary component needs a marked point",
            ));
        }
        let s = MarkedSurface { genus, boundaries };
        if s.raw_arc_count() < 1 {
            return Err(Error::invalid(format!(
                "surface has n = {} < 1",
                s.raw_arc_count()
            )));
        }
        Ok(s)
    }

    pub fn disc(m: u32) -> Result<Self> {
        Self::new(0, vec![m])
    }

    pub fn marked_points(&self) -> i64 {
        self.boundaries.iter().map(|&b| b as i64).sum()
    }

    fn raw_arc_count(&self) -> i64 {
        6 * self.genus as i64 + 3 * self.boundaries.len() as i64 + self.marked_points() - 6
    }

    /// `n = 6g + 3|∂S| + |M| - 6`.
    pub fn arc_count(&self) -> usize {
        self.raw_arc_count() as usize
    }

    /// `ℵ = (2n + |M|) / 3`.
    pub fn decoration_count(&self) -> usize {
        ((2 * self.raw_arc_count() + self.marked_points()) / 3) as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Arc(String),
    Boundary(String),
}

impl Side {
    pub fn arc(&self) -> Option<&str> {
        match self {
            Side::Arc(a) => Some(a),
            Side::Boundary(_) => None,
        }
    }

    pub fn label(&self) -> &str {
        match self {
            Side::Arc(a) | Side::Boundary(a) => a,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FlipDirection {
    Forward,
    Backward,
}

impl FlipDirection {
    pub fn inverse(self) -> Self {
        match self {
            FlipDirection::Forward => FlipDirection::Backward,
            FlipDirection::Backward => FlipDirection::Forward,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            FlipDirection::Forward => '+',
            FlipDirection::Backward => '-',
        }
    }
}

/// Triangles are cyclic; the stored rotation is the smallest one.
fn min_rotation(tri: [Side; 3]) -> [Side; 3] {
    (0..3)
        .map(|r| {
            [
                tri[r].clone(),
                tri[(r + 1) % 3].clone(),
                tri[(r + 2) % 3].clone(),
            ]
        })
        .min()
        .expect("three rotations")
}

/// Position of a side: (triangle/decoration index, slot 0..3).
pub type SidePos = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecoratedTriangulation {
    surface: Option<MarkedSurface>,
    triangles: Vec<[Side; 3]>,
}

impl DecoratedTriangulation {
    /// Validates that every arc is glued exactly twice and every boundary
    /// segment is used once. With a surface, counts are checked against it.
    pub fn new(triangles: Vec<[Side; 3]>, surface: Option<MarkedSurface>) -> Result<Self> {
        let t = DecoratedTriangulation {
            surface,
            triangles: triangles.into_iter().map(min_rotation).collect(),
        };
        let mut arc_uses: BTreeMap<&str, usize> = BTreeMap::new();
        let mut bdry = BTreeSet::new();
        for tri in &t.triangles {
            for s in tri {
                match s {
                    Side::Arc(a) => *arc_uses.entry(a).or_default() += 1,
                    Side::Boundary(b) => {
                        if !bdry.insert(b.as_str()) {
                            return Err(Error::invalid(format!(
                                "boundary segment `{b}` used twice"
                            )));
                        }
                    }
                }
            }
        }
        for (a, n) in &arc_uses {
            if *n != 2 {
                return Err(Error::invalid(format!(
                    "arc `{a}` appears on {n} sides, expected 2"
                )));
            }
            if bdry.contains(a) {
                return Err(Error::invalid(format!(
                    "`{a}` is both an arc and a boundary segment"
                )));
            }
        }
        if let Some(s) = &t.surface {
            if arc_uses.len() != s.arc_count() {
                return Err(Error::invalid(format!(
                    "{} arcs, surface requires {}",
                    arc_uses.len(),
                    s.arc_count()
                )));
            }
            if t.triangles.len() != s.decoration_count() {
                return Err(Error::invalid(format!(
                    "{} triangles, surface requires {}",
                    t.triangles.len(),
                    s.decoration_count()
                )));
            }
            if bdry.len() as i64 != s.marked_points() {
                return Err(Error::invalid(format!(
                    "{} boundary segments, surface has {} marked points",
                    bdry.len(),
                    s.marked_points()
                )));
            }
        }
        Ok(t)
    }

    /// Triangulation of a convex `m`-gon with vertices `0..m` numbered
    /// clockwise. Diagonal `(u,v)` becomes arc `d{u}-{v}`, boundary edge
    /// `(u,u+1)` becomes segment `b{u}`.
    pub fn polygon(m: usize, diagonals: &[(usize, usize)]) -> Result<Self> {
        if m < 4 {
            return Err(Error::invalid("polygon needs at least 4 vertices"));
        }
        let norm = |u: usize, v: usize| if u < v { (u, v) } else { (v, u) };
        let diags: BTreeSet<(usize, usize)> = diagonals.iter().map(|&(u, v)| norm(u, v)).collect();
        let is_bdry = |u: usize, v: usize| (u + 1) % m == v || (v + 1) % m == u;
        for &(u, v) in &diags {
            if u == v || v >= m || is_bdry(u, v) {
                return Err(Error::invalid(format!("({u},{v}) is not a diagonal")));
            }
        }
        let edge = |u: usize, v: usize| diags.contains(&norm(u, v)) || is_bdry(u, v);
        let side = |u: usize, v: usize| {
            let (a, b) = norm(u, v);
            if is_bdry(a, b) {
                let start = if (a + 1) % m == b { a } else { b };
                Side::Boundary(format!("b{start}"))
            } else {
                Side::Arc(format!("d{a}-{b}"))
            }
        };
        let mut triangles = Vec::new();
        for u in 0..m {
            for v in u + 1..m {
                for w in v + 1..m {
                    if edge(u, v) && edge(v, w) && edge(u, w) {
                        triangles.push([side(u, v), side(v, w), side(w, u)]);
                    }
                }
            }
        }
        Self::new(triangles, Some(MarkedSurface::disc(m as u32)?))
    }

    pub fn surface(&self) -> Option<&MarkedSurface> {
        self.surface.as_ref()
    }

    pub fn triangles(&self) -> &[[Side; 3]] {
        &self.triangles
    }

    pub fn decoration_count(&self) -> usize {
        self.triangles.len()
    }

    /// Arc ids in sorted order; this is the vertex order of the quiver.
    pub fn arcs(&self) -> Vec<String> {
        let set: BTreeSet<&str> = self
            .triangles
            .iter()
            .flatten()
            .filter_map(Side::arc)
            .collect();
        set.into_iter().map(String::from).collect()
    }

    pub fn boundary_labels(&self) -> Vec<String> {
        let set: BTreeSet<&str> = self
            .triangles
            .iter()
            .flatten()
            .filter_map(|s| match s {
                Side::Boundary(b) => Some(b.as_str()),
                Side::Arc(_) => None,
            })
            .collect();
        set.into_iter().map(String::from).collect()
    }

    pub fn side(&self, pos: SidePos) -> &Side {
        &self.triangles[pos.0][pos.1]
    }

    pub fn occurrences(&self, arc: &str) -> Vec<SidePos> {
        let mut out = Vec::new();
        for (t, tri) in self.triangles.iter().enumerate() {
            for (p, s) in tri.iter().enumerate() {
                if s.arc() == Some(arc) {
                    out.push((t, p));
                }
            }
        }
        out
    }

    /// Both sides of the arc lie in the same triangle.
    pub fn is_self_glued(&self, arc: &str) -> bool {
        let occ = self.occurrences(arc);
        occ.len() == 2 && occ[0].0 == occ[1].0
    }

    pub fn has_self_glued(&self) -> bool {
        self.arcs().iter().any(|a| self.is_self_glued(a))
    }

    pub fn is_flippable(&self, arc: &str) -> bool {
        self.occurrences(arc).len() == 2 && !self.is_self_glued(arc)
    }

    /// The clockwise germ list of a decoration: its arc sides in slot order.
    pub fn germs(&self, decoration: usize) -> Vec<(usize, String)> {
        self.triangles[decoration]
            .iter()
            .enumerate()
            .filter_map(|(p, s)| s.arc().map(|a| (p, a.to_string())))
            .collect()
    }

    /// Pairs of glued side positions, one entry per arc, in arc order.
    pub fn gluing(&self) -> Vec<(SidePos, SidePos)> {
        self.arcs()
            .iter()
            .map(|a| {
                let o = self.occurrences(a);
                (o[0], o[1])
            })
            .collect()
    }

    /// Arrow id for the clockwise angle from slot `p` to slot `p+1` of a
    /// triangle.
    pub fn angle_arrow_id(decoration: usize, slot: usize) -> String {
        format!("t{decoration}.{slot}")
    }

    /// The quiver with potential: one arrow per clockwise angle between two
    /// arc sides, and one 3-cycle per triangle with three arc sides.
    pub fn qp(&self) -> Result<Qp> {
        let mut arrows = Vec::new();
        let mut cycles = Vec::new();
        for (d, tri) in self.triangles.iter().enumerate() {
            for p in 0..3 {
                if let (Some(a), Some(b)) = (tri[p].arc(), tri[(p + 1) % 3].arc()) {
                    arrows.push(Arrow::new(Self::angle_arrow_id(d, p), a, b));
                }
            }
            if tri.iter().all(|s| s.arc().is_some()) {
                cycles.push(
                    (0..3)
                        .map(|p| Self::angle_arrow_id(d, p))
                        .collect::<Vec<_>>(),
                );
            }
        }
        let quiver = Quiver::new_strict(self.arcs(), arrows)?;
        let mut w = Potential::zero();
        for c in cycles {
            w.add_cycle(&quiver, &c, Coeff::from_integer(1))?;
        }
        Ok(Qp::new(quiver, w))
    }

    /// Number of arrows `i -> j` in the quiver, counted from angles.
    pub fn arrow_count(&self, i: &str, j: &str) -> usize {
        self.triangles
            .iter()
            .map(|tri| {
                (0..3)
                    .filter(|&p| tri[p].arc() == Some(i) && tri[(p + 1) % 3].arc() == Some(j))
                    .count()
            })
            .sum()
    }

    /// Replaces arc `k` by the other diagonal of its quadrilateral. Writing
    /// the two triangles as `A = [k,a1,a2]`, `B = [k,b1,b2]` (rotated so `k`
    /// comes first), the forward flip gives `A = [k,a2,b1]`, `B = [k,b2,a1]`
    /// and the backward flip `A = [k,b2,a1]`, `B = [k,a2,b1]`. The new
    /// diagonal keeps the id `k`.
    pub fn flip(&self, k: &str, dir: FlipDirection) -> Result<Self> {
        let occ = self.occurrences(k);
        if occ.len() != 2 {
            return Err(Error::UnknownArc(k.to_string()));
        }
        if occ[0].0 == occ[1].0 {
            return Err(Error::unsupported(format!(
                "arc `{k}` is glued to itself inside one triangle and cannot be flipped"
            )));
        }
        let rot = |(t, s): SidePos| -> [Side; 3] {
            let tri = &self.triangles[t];
            [
                tri[s].clone(),
                tri[(s + 1) % 3].clone(),
                tri[(s + 2) % 3].clone(),
            ]
        };
        let [kk, a1, a2] = rot(occ[0]);
        let [_, b1, b2] = rot(occ[1]);
        let (na, nb) = match dir {
            FlipDirection::Forward => ([kk.clone(), a2, b1], [kk, b2, a1]),
            FlipDirection::Backward => ([kk.clone(), b2, a1], [kk, a2, b1]),
        };
        let mut triangles = self.triangles.clone();
        triangles[occ[0].0] = min_rotation(na);
        triangles[occ[1].0] = min_rotation(nb);
        Ok(DecoratedTriangulation {
            surface: self.surface.clone(),
            triangles,
        })
    }

    /// Applies a sequence of flips.
    pub fn flip_path(&self, path: &[(String, FlipDirection)]) -> Result<Self> {
        let mut t = self.clone();
        for (k, d) in path {
            t = t.flip(k, *d)?;
        }
        Ok(t)
    }

    /// Canonical string of the gluing datum. Arcs are relabeled by first
    /// encounter in a traversal that starts at the smallest boundary label;
    /// with `decorated` the decoration of each visited triangle is kept.
    pub fn canonical_key(&self, decorated: bool) -> String {
        let start = self
            .triangles
            .iter()
            .enumerate()
            .flat_map(|(t, tri)| {
                tri.iter().enumerate().filter_map(move |(p, s)| match s {
                    Side::Boundary(b) => Some((b.clone(), t, p)),
                    Side::Arc(_) => None,
                })
            })
            .min()
            .map(|(_, t, p)| (t, p))
            .unwrap_or((0, 0));
        let mut rot: Vec<Option<usize>> = vec![None; self.triangles.len()];
        let mut order = Vec::new();
        let mut names: BTreeMap<&str, usize> = BTreeMap::new();
        let mut queue = VecDeque::new();
        rot[start.0] = Some(start.1);
        queue.push_back(start.0);
        while let Some(t) = queue.pop_front() {
            order.push(t);
            let r = rot[t].expect("queued triangles are rotated");
            for j in 0..3 {
                let slot = (r + j) % 3;
                if let Side::Arc(a) = &self.triangles[t][slot] {
                    let next = names.len();
                    names.entry(a).or_insert(next);
                    for (t2, s2) in self.occurrences(a) {
                        if (t2, s2) != (t, slot) && rot[t2].is_none() {
                            rot[t2] = Some(s2);
                            queue.push_back(t2);
                        }
                    }
                }
            }
        }
        let mut out = String::new();
        for t in order {
            let r = rot[t].unwrap_or(0);
            out.push('[');
            for j in 0..3 {
                if j > 0 {
                    out.push(',');
                }
                match &self.triangles[t][(r + j) % 3] {
                    Side::Arc(a) => out.push_str(&format!("a{}", names[a.as_str()])),
                    Side::Boundary(b) => out.push_str(&format!("|{b}")),
                }
            }
            out.push(']');
            if decorated {
                out.push_str(&format!("@{t}"));
            }
        }
        out
    }

    pub fn to_document(&self) -> TriangulationDocument {
        TriangulationDocument {
            surface: self.surface.clone(),
            triangles: self
                .triangles
                .iter()
                .map(|tri| tri.iter().map(|s| s.label().to_string()).collect())
                .collect(),
            gluing: self
                .gluing()
                .into_iter()
                .map(|((t, i), (u, j))| [t, i, u, j])
                .collect(),
            boundary: self.boundary_labels(),
        }
    }

    pub fn from_document(doc: &TriangulationDocument) -> Result<Self> {
        let bdry: BTreeSet<&str> = doc.boundary.iter().map(String::as_str).collect();
        let mut triangles = Vec::new();
        for tri in &doc.triangles {
            if tri.len() != 3 {
                return Err(Error::invalid("every triangle needs exactly 3 sides"));
            }
            let side = |s: &String| {
                if bdry.contains(s.as_str()) {
                    Side::Boundary(s.clone())
                } else {
                    Side::Arc(s.clone())
                }
            };
            triangles.push([side(&tri[0]), side(&tri[1]), side(&tri[2])]);
        }
        let t = Self::new(triangles, doc.surface.clone())?;
        if !doc.gluing.is_empty() {
            let mut given: Vec<(SidePos, SidePos)> = doc
                .gluing
                .iter()
                .map(|g| {
                    let (a, b) = ((g[0], g[1]), (g[2], g[3]));
                    if a < b {
                        (a, b)
                    } else {
                        (b, a)
                    }
                })
                .collect();
            given.sort();
            let mut actual = t.gluing();
            actual.sort();
            if given != actual {
                return Err(Error::invalid(
                    "gluing list does not match the arc labels of the triangles",
                ));
            }
        }
        Ok(t)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("triangulation serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: TriangulationDocument = serde_json::from_str(s)?;
        Self::from_document(&doc)
    }
}

impl fmt::Display for DecoratedTriangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (d, tri) in self.triangles.iter().enumerate() {
            if d > 0 {
                write!(f, " ")?;
            }
            write!(
                f,
                "z{d}[{},{},{}]",
                tri[0].label(),
                tri[1].label(),
                tri[2].label()
            )?;
        }
        Ok(())
    }
}

/// JSON layout of a triangulation. Triangle `i` carries decoration `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub surface: Option<MarkedSurface>,
    pub triangles: Vec<Vec<String>>,
    #[serde(default)]
    pub gluing: Vec<[usize; 4]>,
    pub boundary: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct EgNode {
    pub key: String,
    pub triangulation: DecoratedTriangulation,
    pub depth: usize,
}

/// Depth-bounded forward-flip exchange graph.
#[derive(Clone, Debug)]
pub struct ExchangeGraph {
    pub decorated: bool,
    pub nodes: Vec<EgNode>,
    /// (from, to, arc id in the representative of `from`).
    pub edges: Vec<(usize, usize, String)>,
}

impl ExchangeGraph {
    pub fn to_dot(&self) -> String {
        let mut g: DiGraph<String, String> = DiGraph::new();
        let ids: Vec<_> = self
            .nodes
            .iter()
            .map(|n| g.add_node(n.key.clone()))
            .collect();
        for (a, b, k) in &self.edges {
            g.add_edge(ids[*a], ids[*b], k.clone());
        }
        format!("{}", Dot::new(&g))
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "decorated": self.decorated,
            "nodes": self.nodes.iter().enumerate().map(|(i, n)| serde_json::json!({
                "id": i,
                "key": n.key,
                "depth": n.depth,
            })).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|(a, b, k)| serde_json::json!({
                "from": a, "to": b, "arc": k,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Breadth-first enumeration of forward flips up to `depth`. Nodes are
/// identified by [`DecoratedTriangulation::canonical_key`].
pub fn exchange_graph_bfs(
    t0: &DecoratedTriangulation,
    depth: usize,
    decorated: bool,
) -> ExchangeGraph {
    let mut nodes = vec![EgNode {
        key: t0.canonical_key(decorated),
        triangulation: t0.clone(),
        depth: 0,
    }];
    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    index.insert(nodes[0].key.clone(), 0);
    let mut edges = Vec::new();
    let mut frontier = 0;
    while frontier < nodes.len() {
        if nodes[frontier].depth >= depth {
            frontier += 1;
            continue;
        }
        let t = nodes[frontier].triangulation.clone();
        let d = nodes[frontier].depth;
        for k in t.arcs() {
            if !t.is_flippable(&k) {
                continue;
            }
            let next = t.flip(&k, FlipDirection::Forward).expect("flippable arc");
            let key = next.canonical_key(decorated);
            let to = match index.get(&key) {
                Some(&i) => i,
                None => {
                    let i = nodes.len();
                    index.insert(key.clone(), i);
                    nodes.push(EgNode {
                        key,
                        triangulation: next,
                        depth: d + 1,
                    });
                    i
                }
            };
            edges.push((frontier, to, k));
        }
        frontier += 1;
    }
    ExchangeGraph {
        decorated,
        nodes,
        edges,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fan(m: usize) -> DecoratedTriangulation {
        let d: Vec<_> = (2..m - 1).map(|i| (0, i)).collect();
        DecoratedTriangulation::polygon(m, &d).unwrap()
    }

    #[test]
    fn counts() {
        let cases = [
            (0, vec![5], 2, 3),
            (0, vec![6], 3, 4),
            (0, vec![1, 1], 2, 2),
            (1, vec![1], 4, 3),
        ];
        for (g, b, n, aleph) in cases {
            let s = MarkedSurface::new(g, b).unwrap();
            assert_eq!(s.arc_count(), n);
            assert_eq!(s.decoration_count(), aleph);
        }
        assert!(MarkedSurface::disc(3).is_err());
        assert!(MarkedSurface::new(0, vec![]).is_err());
    }

    #[test]
    fn pentagon_fan_is_a2() {
        let qp = fan(5).qp().unwrap();
        assert_eq!(qp.quiver.vertices().len(), 2);
        assert_eq!(qp.quiver.arrows().len(), 1);
        assert!(qp.potential.is_zero());
    }

    #[test]
    fn hexagon_central_is_three_cycle() {
        let t = DecoratedTriangulation::polygon(6, &[(0, 2), (2, 4), (0, 4)]).unwrap();
        let qp = t.qp().unwrap();
        assert_eq!(qp.quiver.arrows().len(), 3);
        assert_eq!(qp.potential.len(), 1);
        for k in t.arcs() {
            let f = t.flip(&k, FlipDirection::Forward).unwrap();
            let q = f.qp().unwrap();
            assert!(q.potential.is_zero());
            assert_eq!(q.quiver.arrows().len(), 2);
        }
    }

    #[test]
    fn flip_inverse() {
        let t = fan(6);
        for k in t.arcs() {
            for d in [FlipDirection::Forward, FlipDirection::Backward] {
                let back = t.flip(&k, d).unwrap().flip(&k, d.inverse()).unwrap();
                assert_eq!(back, t);
            }
        }
    }

    #[test]
    fn double_forward_swaps_decorations() {
        let t = fan(6);
        let k = "d0-3";
        let tt = t
            .flip(k, FlipDirection::Forward)
            .unwrap()
            .flip(k, FlipDirection::Forward)
            .unwrap();
        assert_ne!(tt, t);
        assert_eq!(tt.canonical_key(false), t.canonical_key(false));
        assert_ne!(tt.canonical_key(true), t.canonical_key(true));
    }

    #[test]
    fn catalan_counts() {
        assert_eq!(exchange_graph_bfs(&fan(5), 0, false).nodes.len(), 1);
        let g5 = exchange_graph_bfs(&fan(5), 10, false);
        assert_eq!(g5.nodes.len(), 5);
        assert_eq!(g5.edges.len(), 10);
        let g6 = exchange_graph_bfs(&fan(6), 20, false);
        assert_eq!(g6.nodes.len(), 14);
        let g7 = exchange_graph_bfs(&fan(7), 30, false);
        assert_eq!(g7.nodes.len(), 42);
    }

    #[test]
    fn self_glued_rejected() {
        let t = DecoratedTriangulation::new(
            vec![
                [
                    Side::Arc("x".into()),
                    Side::Arc("x".into()),
                    Side::Arc("y".into()),
                ],
                [
                    Side::Arc("y".into()),
                    Side::Boundary("b0".into()),
                    Side::Boundary("b1".into()),
                ],
            ],
            None,
        )
        .unwrap();
        assert!(matches!(
            t.flip("x", FlipDirection::Forward),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn json_round_trip() {
        let t = fan(6);
        assert_eq!(DecoratedTriangulation::from_json(&t.to_json()).unwrap(), t);
    }
}
