//! Builtin fixtures: small discs, the annulus with one marked point on each
//! boundary, and a few hand-written quivers with potential.

use num_traits::One;

use crate::qp::{Arrow, Coeff, Potential, Qp, Quiver};
use crate::surface::{exchange_graph_bfs, DecoratedTriangulation, MarkedSurface, Side};

pub fn pentagon() -> DecoratedTriangulation {
    DecoratedTriangulation::polygon(5, &[(0, 2), (0, 3)]).expect("pentagon fan")
}

pub fn hexagon() -> DecoratedTriangulation {
    DecoratedTriangulation::polygon(6, &[(0, 2), (0, 3), (0, 4)]).expect("hexagon fan")
}

/// Hexagon with an interior triangle.
pub fn hexagon_central() -> DecoratedTriangulation {
    DecoratedTriangulation::polygon(6, &[(0, 2), (2, 4), (0, 4)]).expect("hexagon central")
}

pub fn heptagon() -> DecoratedTriangulation {
    DecoratedTriangulation::polygon(7, &[(0, 2), (0, 3), (0, 4), (0, 5)]).expect("heptagon fan")
}

/// Annulus with one marked point on each boundary component; its quiver
/// is the Kronecker quiver.
pub fn annulus() -> DecoratedTriangulation {
    let arc = |s: &str| Side::Arc(s.to_string());
    let bd = |s: &str| Side::Boundary(s.to_string());
    DecoratedTriangulation::new(
        vec![
            [arc("g1"), bd("b_in"), arc("g2")],
            [arc("g1"), bd("b_out"), arc("g2")],
        ],
        Some(MarkedSurface::new(0, vec![1, 1]).expect("annulus")),
    )
    .expect("annulus triangulation")
}

pub fn triangulation(name: &str) -> Option<DecoratedTriangulation> {
    Some(match name {
        "pentagon" => pentagon(),
        "hexagon" => hexagon(),
        "hexagon-central" => hexagon_central(),
        "heptagon" => heptagon(),
        "annulus" => annulus(),
        _ => return None,
    })
}

pub const TRIANGULATION_NAMES: [&str; 5] = [
    "pentagon",
    "hexagon",
    "hexagon-central",
    "heptagon",
    "annulus",
];

/// Every triangulation reachable from the seed, one per undecorated class.
pub fn all_triangulations(seed: &DecoratedTriangulation) -> Vec<DecoratedTriangulation> {
    exchange_graph_bfs(seed, usize::MAX, false)
        .nodes
        .into_iter()
        .map(|n| n.triangulation)
        .collect()
}

fn qp_from(vertices: &[&str], arrows: &[(&str, &str, &str)], cycles: &[&[&str]]) -> Qp {
    let quiver = Quiver::new_strict(
        vertices.iter().map(|v| v.to_string()).collect(),
        arrows
            .iter()
            .map(|(a, s, t)| Arrow::new(*a, *s, *t))
            .collect(),
    )
    .expect("fixture quiver");
    let mut w = Potential::zero();
    for c in cycles {
        let c: Vec<String> = c.iter().map(|a| a.to_string()).collect();
        w.add_cycle(&quiver, &c, Coeff::one())
            .expect("fixture cycle");
    }
    Qp::new(quiver, w)
}

pub fn a2() -> Qp {
    qp_from(&["1", "2"], &[("x", "1", "2")], &[])
}

pub fn three_cycle() -> Qp {
    qp_from(
        &["1", "2", "3"],
        &[("x", "1", "2"), ("y", "2", "3"), ("z", "3", "1")],
        &[&["x", "y", "z"]],
    )
}

pub fn kronecker() -> Qp {
    qp_from(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")], &[])
}

/// Two 3-cycles glued at `k`: `a: k->1, b: 1->2, c: 2->k, e: k->3,
/// f: 3->4, g: 4->k`, `W = abc + efg`.
pub fn local() -> Qp {
    qp_from(
        &["1", "2", "3", "4", "k"],
        &[
            ("a", "k", "1"),
            ("b", "1", "2"),
            ("c", "2", "k"),
            ("e", "k", "3"),
            ("f", "3", "4"),
            ("g", "4", "k"),
        ],
        &[&["a", "b", "c"], &["e", "f", "g"]],
    )
}

/// Two vertices with no arrows.
pub fn disconnected() -> Qp {
    qp_from(&["1", "2"], &[], &[])
}

pub fn qp(name: &str) -> Option<Qp> {
    Some(match name {
        "a2" => a2(),
        "three-cycle" => three_cycle(),
        "kronecker" => kronecker(),
        "local" => local(),
        "disconnected" => disconnected(),
        other => return triangulation(other).map(|t| t.qp().expect("fixture qp")),
    })
}

pub const QP_NAMES: [&str; 4] = ["a2", "three-cycle", "kronecker", "local"];

/// Named QPs used by the algebraic suites: the hand-written ones plus the
/// QP of every builtin triangulation.
pub fn builtin_qps() -> Vec<(String, Qp)> {
    let mut out: Vec<(String, Qp)> = QP_NAMES
        .iter()
        .map(|n| (n.to_string(), qp(n).expect("builtin")))
        .collect();
    for n in TRIANGULATION_NAMES {
        out.push((
            n.to_string(),
            triangulation(n).unwrap().qp().expect("fixture qp"),
        ));
    }
    out
}
