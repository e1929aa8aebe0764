//! Pre-mutation, 2-cycle reduction, mutation, and the comparison of a
//! mutated surface QP with the QP of the flipped triangulation.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::One;

use crate::error::{Error, Result};
use crate::qp::{normalize_cycle, Arrow, Coeff, PathExpr, Potential, Qp, Quiver};
use crate::surface::{DecoratedTriangulation, FlipDirection};

pub fn reversed_name(a: &str) -> String {
    format!("{a}'")
}

pub fn composite_name(a: &str, b: &str) -> String {
    format!("[{a}.{b}]")
}

#[derive(Clone, Debug)]
pub struct PremutationResult {
    pub quiver: Quiver,
    pub potential: Potential,
    /// `([ab], a, b)` for each composable pair through the vertex.
    pub composites: Vec<(String, String, String)>,
    /// `(a', a)` for each arrow incident to the vertex.
    pub reversed: Vec<(String, String)>,
}

impl PremutationResult {
    pub fn qp(&self) -> Qp {
        Qp::new(self.quiver.clone(), self.potential.clone())
    }
}

/// Replaces every composition `ab` through `k` by `[ab]` inside one cycle.
fn substitute_composites(q: &Quiver, cycle: &[String], k: &str) -> Result<Vec<String>> {
    let n = cycle.len();
    let src = |a: &String| q.require_arrow(a).map(|x| x.source.clone());
    let mut start = None;
    for (r, a) in cycle.iter().enumerate() {
        if src(a)? != k {
            start = Some(r);
            break;
        }
    }
    let Some(start) = start else {
        return Ok(cycle.to_vec());
    };
    let word: Vec<&String> = (0..n).map(|i| &cycle[(start + i) % n]).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < n {
        let a = q.require_arrow(word[i])?;
        if a.target == k {
            let b = word[(i + 1) % n];
            out.push(composite_name(&a.id, b));
            i += 2;
        } else {
            out.push(a.id.clone());
            i += 1;
        }
    }
    Ok(out)
}

/// Pre-mutation at `k`: adds `[ab]` for every path `ab` through `k`, reverses
/// the arrows at `k`, and sets `W~ = W~1 + sum [ab] b' a'`.
pub fn premutate(q: &Quiver, w: &Potential, k: &str) -> Result<PremutationResult> {
    premutate_with(q, w, k, true)
}

fn premutate_with(q: &Quiver, w: &Potential, k: &str, with_w2: bool) -> Result<PremutationResult> {
    q.require_vertex(k)?;
    let incoming: Vec<&Arrow> = q.arrows_into(k).collect();
    let outgoing: Vec<&Arrow> = q.arrows_from(k).collect();
    let mut arrows: Vec<Arrow> = q
        .arrows()
        .iter()
        .filter(|a| a.source != k && a.target != k)
        .cloned()
        .collect();
    let mut reversed = Vec::new();
    for a in q.arrows() {
        if a.source == k || a.target == k {
            let r = reversed_name(&a.id);
            arrows.push(Arrow::new(r.clone(), a.target.clone(), a.source.clone()));
            reversed.push((r, a.id.clone()));
        }
    }
    let mut composites = Vec::new();
    for a in &incoming {
        for b in &outgoing {
            let c = composite_name(&a.id, &b.id);
            arrows.push(Arrow::new(c.clone(), a.source.clone(), b.target.clone()));
            composites.push((c, a.id.clone(), b.id.clone()));
        }
    }
    let quiver = Quiver::new(q.vertices().to_vec(), arrows)?;
    let mut potential = Potential::zero();
    for (cycle, c) in w.cycles() {
        let sub = substitute_composites(q, cycle, k)?;
        potential.add_cycle(&quiver, &sub, *c)?;
    }
    if with_w2 {
        for (ab, a, b) in &composites {
            potential.add_cycle(
                &quiver,
                &[ab.clone(), reversed_name(b), reversed_name(a)],
                Coeff::one(),
            )?;
        }
    }
    Ok(PremutationResult {
        quiver,
        potential,
        composites,
        reversed,
    })
}

/// Eliminates 2-cycle terms until the potential is reduced. For a term
/// `c·uv` with `W = c·uv + uA + vB + C`, the arrows `u`, `v` are deleted
/// and `W` becomes `C - (1/c)·BA`.
pub fn reduce(q: &Quiver, w: &Potential) -> Result<(Quiver, Potential)> {
    reduce_with(q, w, |_| 0)
}

/// Same as [`reduce`], with `pick` choosing which 2-cycle term (by index
/// into the sorted list of 2-cycle terms) is eliminated next.
pub fn reduce_with(
    q: &Quiver,
    w: &Potential,
    mut pick: impl FnMut(usize) -> usize,
) -> Result<(Quiver, Potential)> {
    let mut quiver = q.clone();
    let mut w = w.clone();
    loop {
        let two = w.two_cycle_terms();
        if two.is_empty() {
            return Ok((quiver, w));
        }
        let mut seen: BTreeMap<&String, usize> = BTreeMap::new();
        for (cyc, _) in &two {
            for a in cyc {
                *seen.entry(a).or_default() += 1;
            }
        }
        if let Some((a, _)) = seen.iter().find(|(_, &n)| n > 1) {
            return Err(Error::unsupported(format!(
                "arrow `{a}` occurs in more than one 2-cycle term"
            )));
        }
        let (uv, c) = two[pick(two.len()) % two.len()].clone();
        let (u, v) = (uv[0].clone(), uv[1].clone());
        let mut a_part = PathExpr::zero();
        let mut b_part = PathExpr::zero();
        let mut rest = Potential::zero();
        for (cyc, coeff) in w.cycles() {
            if *cyc == uv {
                continue;
            }
            let hits: Vec<usize> = (0..cyc.len())
                .filter(|&i| cyc[i] == u || cyc[i] == v)
                .collect();
            match hits.as_slice() {
                [] => rest.add_normalized(cyc.clone(), *coeff),
                [i] => {
                    let n = cyc.len();
                    let tail: Vec<String> = (1..n).map(|j| cyc[(i + j) % n].clone()).collect();
                    let path = quiver.path(&tail)?;
                    if cyc[*i] == u {
                        a_part.add_term(path, *coeff);
                    } else {
                        b_part.add_term(path, *coeff);
                    }
                }
                _ => {
                    return Err(Error::unsupported(format!(
                        "term {cyc:?} meets the 2-cycle {u}{v} more than once"
                    )))
                }
            }
        }
        let ba = &b_part * &a_part;
        let scale = -Coeff::one() / c;
        for (p, coeff) in ba.terms() {
            rest.add_normalized(normalize_cycle(&p.arrows), *coeff * scale);
        }
        let arrows: Vec<Arrow> = quiver
            .arrows()
            .iter()
            .filter(|a| a.id != u && a.id != v)
            .cloned()
            .collect();
        quiver = Quiver::new(quiver.vertices().to_vec(), arrows)?;
        w = rest;
    }
}

/// Mutation: reduction of the pre-mutation.
pub fn mutate(q: &Quiver, w: &Potential, k: &str) -> Result<Qp> {
    let pre = premutate(q, w, k)?;
    let (quiver, potential) = reduce(&pre.quiver, &pre.potential)?;
    Ok(Qp::new(quiver, potential))
}

/// Searches for an arrow bijection, fixing vertices, that carries `left`
/// to `right` with equal normalized potentials. Returns the renaming, or a
/// witness describing the obstruction.
pub fn find_isomorphism(
    left: &Qp,
    right: &Qp,
) -> std::result::Result<BTreeMap<String, String>, String> {
    let lv: BTreeSet<&String> = left.quiver.vertices().iter().collect();
    let rv: BTreeSet<&String> = right.quiver.vertices().iter().collect();
    if lv != rv {
        return Err(format!("vertex sets differ: {lv:?} vs {rv:?}"));
    }
    let group = |q: &Quiver| {
        let mut g: BTreeMap<(String, String), Vec<String>> = BTreeMap::new();
        for a in q.arrows() {
            g.entry((a.source.clone(), a.target.clone()))
                .or_default()
                .push(a.id.clone());
        }
        g
    };
    let (lg, rg) = (group(&left.quiver), group(&right.quiver));
    let keys: BTreeSet<_> = lg.keys().chain(rg.keys()).collect();
    for key in &keys {
        let (l, r) = (
            lg.get(key).map_or(0, Vec::len),
            rg.get(key).map_or(0, Vec::len),
        );
        if l != r {
            return Err(format!("{l} vs {r} arrows {} -> {}", key.0, key.1));
        }
    }
    let groups: Vec<(&Vec<String>, &Vec<String>)> = lg.iter().map(|(k, l)| (l, &rg[k])).collect();
    let mut perms: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut total: usize = 1;
    for (l, _) in &groups {
        let p = permutations(l.len());
        total = total.saturating_mul(p.len());
        perms.push(p);
    }
    if total > 100_000 {
        return Err(format!("isomorphism search space too large ({total})"));
    }
    let mut choice = vec![0usize; groups.len()];
    let mut best_witness = String::new();
    loop {
        let mut map = BTreeMap::new();
        for (g, (l, r)) in groups.iter().enumerate() {
            for (i, &j) in perms[g][choice[g]].iter().enumerate() {
                map.insert(l[i].clone(), r[j].clone());
            }
        }
        let renamed = left.potential.rename(|a| map[a].clone());
        if renamed == right.potential {
            return Ok(map);
        }
        if best_witness.is_empty() {
            best_witness = potential_difference(&renamed, &right.potential);
        }
        let mut g = 0;
        loop {
            if g == groups.len() {
                return Err(best_witness);
            }
            choice[g] += 1;
            if choice[g] < perms[g].len() {
                break;
            }
            choice[g] = 0;
            g += 1;
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn potential_difference(a: &Potential, b: &Potential) -> String {
    let mut diff = a.clone();
    for (c, v) in b.cycles() {
        diff.add_normalized(c.clone(), -*v);
    }
    let msg = match diff.cycles().next() {
        Some((c, v)) => format!(
            "potential differs on term {} (coefficient {v})",
            c.join(".")
        ),
        None => "potentials agree".into(),
    };
    msg
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlipMutationOutcome {
    pub arc: String,
    pub passed: bool,
    pub witness: Option<String>,
}

/// Compares `mutate(qp(t), k)` with `qp(flip(t, k))` up to an arrow
/// bijection that fixes the arcs.
pub fn check_flip_mutation(t: &DecoratedTriangulation, k: &str) -> Result<FlipMutationOutcome> {
    check_flip_mutation_impl(t, k, true)
}

/// Negative control: the same comparison with `W~2` dropped before reduction.
pub fn check_flip_mutation_without_w2(
    t: &DecoratedTriangulation,
    k: &str,
) -> Result<FlipMutationOutcome> {
    check_flip_mutation_impl(t, k, false)
}

fn check_flip_mutation_impl(
    t: &DecoratedTriangulation,
    k: &str,
    with_w2: bool,
) -> Result<FlipMutationOutcome> {
    let qp = t.qp()?;
    let pre = premutate_with(&qp.quiver, &qp.potential, k, with_w2)?;
    let (mq, mw) = reduce(&pre.quiver, &pre.potential)?;
    let mutated = Qp::new(mq, mw);
    let flipped = t.flip(k, FlipDirection::Forward)?.qp()?;
    let res = find_isomorphism(&mutated, &flipped);
    Ok(FlipMutationOutcome {
        arc: k.to_string(),
        passed: res.is_ok(),
        witness: res.err(),
    })
}
