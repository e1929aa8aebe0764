//! Worked examples with hand-computed expected values.

use std::collections::BTreeMap;

use num_complex::Complex64;
use surfqp::dg::{mu_sharp, simple_resolution, GinzburgPresentation};
use surfqp::fixtures;
use surfqp::ktheory::{twist_charge, K0Lattice, TwistWord};
use surfqp::mutation::{find_isomorphism, reduce};
use surfqp::surface::exchange_graph_bfs;
use surfqp::FlipDirection::{Backward, Forward};
use surfqp::{
    classify_qp, mutate, premutate, Arrow, CentralCharge, MarkedSurface, Path, PathExpr, Potential,
    QpClass, Quiver,
};

fn quiver(vs: &[&str], arrows: &[(&str, &str, &str)]) -> Quiver {
    Quiver::new(
        vs.iter().map(|v| v.to_string()).collect(),
        arrows
            .iter()
            .map(|(a, s, t)| Arrow::new(*a, *s, *t))
            .collect(),
    )
    .unwrap()
}

fn potential(q: &Quiver, cycles: &[&[&str]]) -> Potential {
    let mut w = Potential::zero();
    for c in cycles {
        let c: Vec<String> = c.iter().map(|s| s.to_string()).collect();
        w.add_cycle(q, &c, 1.into()).unwrap();
    }
    w
}

fn arrow_ids(q: &Quiver) -> Vec<String> {
    let mut v: Vec<String> = q.arrows().iter().map(|a| a.id.clone()).collect();
    v.sort();
    v
}

#[test]
fn path_multiplication() {
    let q = quiver(&["1", "2", "3"], &[("x", "1", "2"), ("y", "2", "3")]);
    let x = PathExpr::path(q.path_of("x").unwrap());
    let y = PathExpr::path(q.path_of("y").unwrap());
    let xy = PathExpr::path(q.path(&["x".into(), "y".into()]).unwrap());
    assert_eq!(&x * &y, xy);
    assert!((&x * &x).is_zero());
    assert_eq!(&PathExpr::trivial("1") * &x, x);
    assert!((&PathExpr::trivial("2") * &x).is_zero());
}

#[test]
fn cyclic_derivatives() {
    let qp = fixtures::three_cycle();
    let q = &qp.quiver;
    let w = &qp.potential;
    let p = |s: &[&str]| {
        PathExpr::path(
            q.path(&s.iter().map(|x| x.to_string()).collect::<Vec<_>>())
                .unwrap(),
        )
    };
    assert_eq!(w.cyclic_derivative(q, "x").unwrap(), p(&["y", "z"]));
    assert_eq!(w.cyclic_derivative(q, "y").unwrap(), p(&["z", "x"]));
    let a2 = fixtures::a2();
    assert!(a2
        .potential
        .cyclic_derivative(&a2.quiver, "x")
        .unwrap()
        .is_zero());
}

#[test]
fn classification() {
    let q = quiver(&["1", "2"], &[("u", "1", "2"), ("v", "2", "1")]);
    assert_eq!(
        classify_qp(&q, &potential(&q, &[&["u", "v"]])),
        QpClass::Trivial
    );
    let c = fixtures::three_cycle();
    assert_eq!(classify_qp(&c.quiver, &c.potential), QpClass::Reduced);
    let q = quiver(
        &["1", "2", "3", "4", "5"],
        &[
            ("u", "1", "2"),
            ("v", "2", "1"),
            ("x", "3", "4"),
            ("y", "4", "5"),
            ("z", "5", "3"),
        ],
    );
    assert_eq!(
        classify_qp(&q, &potential(&q, &[&["u", "v"], &["x", "y", "z"]])),
        QpClass::Mixed
    );
}

#[test]
fn surface_counts() {
    let s = |g, b: &[u32]| MarkedSurface::new(g, b.to_vec()).unwrap();
    assert_eq!(s(0, &[5]).arc_count(), 2);
    assert_eq!(s(0, &[1, 1]).arc_count(), 2);
    assert_eq!(s(1, &[1]).arc_count(), 4);
    assert_eq!(s(0, &[5]).decoration_count(), 3);
    assert_eq!(s(0, &[6]).decoration_count(), 4);
    assert_eq!(s(0, &[1, 1]).decoration_count(), 2);
}

#[test]
fn quivers_of_triangulations() {
    let p = fixtures::pentagon().qp().unwrap();
    assert_eq!((p.quiver.vertices().len(), p.quiver.arrows().len()), (2, 1));
    assert!(p.potential.is_zero());

    let h = fixtures::hexagon_central().qp().unwrap();
    assert_eq!((h.quiver.vertices().len(), h.quiver.arrows().len()), (3, 3));
    assert_eq!(h.potential.len(), 1);
    assert_eq!(h.potential.cycles().next().unwrap().0.len(), 3);

    let a = fixtures::annulus().qp().unwrap();
    let vs = a.quiver.vertices();
    assert_eq!(vs.len(), 2);
    assert_eq!(
        a.quiver.arrow_count(&vs[0], &vs[1]) + a.quiver.arrow_count(&vs[1], &vs[0]),
        2
    );
    assert!(a.potential.is_zero());
}

#[test]
fn flips() {
    for t in fixtures::all_triangulations(&fixtures::hexagon()) {
        for k in t.arcs() {
            assert_eq!(t.flip(&k, Forward).unwrap().flip(&k, Backward).unwrap(), t);
        }
    }
    let h = fixtures::hexagon_central();
    for k in h.arcs() {
        assert!(h
            .flip(&k, Forward)
            .unwrap()
            .qp()
            .unwrap()
            .potential
            .is_zero());
    }
    let p = fixtures::pentagon();
    let arcs = p.arcs();
    let mut t = p.clone();
    for i in 0..5 {
        t = t.flip(&arcs[i % 2], Forward).unwrap();
    }
    assert_eq!(t.canonical_key(false), p.canonical_key(false));
}

#[test]
fn exchange_graphs() {
    let g = exchange_graph_bfs(&fixtures::hexagon(), 0, false);
    assert_eq!((g.nodes.len(), g.edges.len()), (1, 0));

    let g = exchange_graph_bfs(&fixtures::pentagon(), 10, false);
    assert_eq!(g.nodes.len(), 5);
    let mut degree = [0; 5];
    let mut pairs = std::collections::BTreeSet::new();
    for (a, b, _) in &g.edges {
        if a != b && pairs.insert((*a.min(b), *a.max(b))) {
            degree[*a] += 1;
            degree[*b] += 1;
        }
    }
    assert_eq!(pairs.len(), 5);
    assert!(degree.iter().all(|&d| d == 2));

    assert_eq!(
        exchange_graph_bfs(&fixtures::hexagon(), 20, false)
            .nodes
            .len(),
        14
    );
    for t in fixtures::all_triangulations(&fixtures::hexagon()) {
        assert!(exchange_graph_bfs(&t, 1, false).edges.len() <= 3);
    }
}

#[test]
fn premutation_examples() {
    let a2 = fixtures::a2();
    let pre = premutate(&a2.quiver, &a2.potential, "2").unwrap();
    assert_eq!(arrow_ids(&pre.quiver), ["x'"]);
    assert!(pre.potential.is_zero());

    let c = fixtures::three_cycle();
    let pre = premutate(&c.quiver, &c.potential, "2").unwrap();
    assert_eq!(arrow_ids(&pre.quiver), ["[x.y]", "x'", "y'", "z"]);
    let expected = potential(&pre.quiver, &[&["[x.y]", "z"], &["[x.y]", "y'", "x'"]]);
    assert_eq!(pre.potential, expected);

    let (q, w) = reduce(&pre.quiver, &pre.potential).unwrap();
    assert_eq!(arrow_ids(&q), ["x'", "y'"]);
    assert!(w.is_zero());

    let k = fixtures::kronecker();
    let pre = premutate(&k.quiver, &k.potential, "2").unwrap();
    assert_eq!(arrow_ids(&pre.quiver), ["a'", "b'"]);
    assert!(pre.potential.is_zero());
}

#[test]
fn reduction_examples() {
    let c = fixtures::three_cycle();
    let (q, w) = reduce(&c.quiver, &c.potential).unwrap();
    assert_eq!((q, w), (c.quiver.clone(), c.potential.clone()));

    let q = quiver(&["1", "2"], &[("u", "1", "2"), ("v", "2", "1")]);
    let (q2, w2) = reduce(&q, &potential(&q, &[&["u", "v"]])).unwrap();
    assert!(q2.arrows().is_empty());
    assert_eq!(q2.vertices(), q.vertices());
    assert!(w2.is_zero());
}

#[test]
fn mutation_examples() {
    let c = fixtures::three_cycle();
    let m = mutate(&c.quiver, &c.potential, "2").unwrap();
    assert_eq!(arrow_ids(&m.quiver), ["x'", "y'"]);
    assert_eq!(m.quiver.arrow("y'").unwrap().source, "3");
    assert_eq!(m.quiver.arrow("x'").unwrap().target, "1");
    assert!(m.potential.is_zero());

    let a2 = fixtures::a2();
    let m = mutate(&a2.quiver, &a2.potential, "2").unwrap();
    assert_eq!(m.quiver.arrow_count("2", "1"), 1);

    for k in ["1", "2", "3"] {
        let once = mutate(&c.quiver, &c.potential, k).unwrap();
        let twice = mutate(&once.quiver, &once.potential, k).unwrap();
        assert!(find_isomorphism(&twice, &c).is_ok(), "vertex {k}");
    }
}

#[test]
fn ginzburg_differential() {
    let g = GinzburgPresentation::new(&fixtures::a2()).unwrap();
    let mut ids: Vec<&str> = g.generators().iter().map(|x| x.id.as_str()).collect();
    ids.sort();
    assert_eq!(ids.len(), 4);
    assert!(ids.contains(&"x") && g.generator(&surfqp::dg::star_name("x")).is_some());
    assert!(g.d(&g.star("x")).is_zero());

    let c = fixtures::three_cycle();
    let g = GinzburgPresentation::new(&c).unwrap();
    assert_eq!(g.d(&g.star("x")), g.word(&["y", "z"]));

    let g = GinzburgPresentation::new(&fixtures::kronecker()).unwrap();
    assert!(g.d(&g.star("a")).is_zero() && g.d(&g.star("b")).is_zero());
}

fn has_entry(m: &surfqp::dg::ModulePresentation, e: &PathExpr) -> bool {
    m.d.entries().any(|(_, x)| x == e)
}

#[test]
fn keller_yang_modules() {
    let g = GinzburgPresentation::new(&fixtures::three_cycle()).unwrap();
    let m = mu_sharp(&g, "2").unwrap();
    assert_eq!(m.len(), 2);
    assert!(has_entry(&m, &g.gen("x")));

    let g = GinzburgPresentation::new(&fixtures::a2()).unwrap();
    assert_eq!(mu_sharp(&g, "1").unwrap().len(), 1);

    let g = GinzburgPresentation::new(&fixtures::kronecker()).unwrap();
    assert_eq!(mu_sharp(&g, "2").unwrap().len(), 3);
}

#[test]
fn simple_resolutions() {
    let g = GinzburgPresentation::new(&fixtures::a2()).unwrap();
    let s = simple_resolution(&g, "1").unwrap();
    assert_eq!(s.len(), 3);
    assert!(has_entry(&s, &-g.star("x")));
    assert!(has_entry(&s, &g.gen("x")));

    let g = GinzburgPresentation::new(&fixtures::three_cycle()).unwrap();
    let s = simple_resolution(&g, "1").unwrap();
    assert_eq!(s.len(), 4);
    assert!(has_entry(&s, &-g.gen("y")));

    let g = GinzburgPresentation::new(&fixtures::disconnected()).unwrap();
    let s = simple_resolution(&g, "1").unwrap();
    assert_eq!(s.len(), 2);
    assert!(has_entry(&s, &g.loop_at("1")));
}

#[test]
fn twists_on_classes() {
    let l = K0Lattice::from_quiver(&fixtures::three_cycle().quiver);
    let s1 = l.simple("1").unwrap();
    assert_eq!(
        l.twist_class("1", 1, &l.simple("2").unwrap()).unwrap(),
        [1, 1, 0]
    );
    assert_eq!(l.twist_class("1", 1, &s1).unwrap(), s1);

    let k = K0Lattice::from_quiver(&fixtures::kronecker().quiver);
    assert_eq!(
        k.twist_class("1", 1, &k.simple("2").unwrap()).unwrap(),
        [2, 1]
    );

    let a2 = K0Lattice::from_quiver(&fixtures::a2().quiver);
    let w: TwistWord = "1+,2-,1+".parse().unwrap();
    assert_eq!(
        a2.word_matrix(&w.then(&w.inverse())).unwrap(),
        surfqp::ktheory::identity(2)
    );
    assert_eq!(
        a2.word_matrix(&TwistWord::default()).unwrap(),
        surfqp::ktheory::identity(2)
    );
    let lhs = a2.word_matrix(&"1+,2+,1+".parse().unwrap()).unwrap();
    let rhs = a2.word_matrix(&"2+,1+,2+".parse().unwrap()).unwrap();
    assert_eq!(lhs, rhs);
    let braid = k.braid_relation_check("1", "2").unwrap();
    assert!(!braid.braid_holds);
}

#[test]
fn twisted_central_charge() {
    let a2 = K0Lattice::from_quiver(&fixtures::a2().quiver);
    let z = CentralCharge::new(BTreeMap::from([
        ("1".to_string(), Complex64::new(0.0, 1.0)),
        ("2".to_string(), Complex64::new(-1.0, 2.0)),
    ]))
    .unwrap();
    let same = |a: &CentralCharge, b: &CentralCharge| {
        a.values()
            .iter()
            .zip(b.values())
            .all(|((u, x), (v, y))| u == v && (x - y).norm() < 1e-12)
    };
    assert!(same(
        &twist_charge(&a2, &TwistWord::default(), &z).unwrap(),
        &z
    ));
    let w: TwistWord = "1+".parse().unwrap();
    assert!(same(
        &twist_charge(&a2, &w.then(&w.inverse()), &z).unwrap(),
        &z
    ));
    let z1 = twist_charge(&a2, &w, &z).unwrap();
    assert!((z1.values()["2"] - Complex64::new(-1.0, 1.0)).norm() < 1e-12);
    assert!((z1.values()["1"] - z.values()["1"]).norm() < 1e-12);
}

#[test]
fn path_display_and_trivial_paths() {
    assert!(Path::trivial("1").is_trivial());
    assert_eq!(Path::trivial("1").len(), 0);
}
