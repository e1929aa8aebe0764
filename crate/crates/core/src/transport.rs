//! Transport of the angle basis along flips. A flip at `k` replaces each
//! simple of the new heart by its image under the Keller–Yang equivalence:
//! `S♯_k = S_k[1]` and `S♯_i` the extension of `S_i` by `#(i→k)` copies of
//! `S_k`. On K₀ this gives a frame matrix; along a path frames multiply.
//! When a path returns to the starting triangulation up to decorations, the
//! basis of the final table is matched with the starting one.

use std::collections::BTreeMap;

use serde_json::json;

use crate::error::{Error, Result};
use crate::ext::{ExtAlgebraTable, ExtBasisElement, ExtKind};
use crate::ktheory::{identity, mat_mul, transpose, IntMatrix};
use crate::surface::{DecoratedTriangulation, FlipDirection};

#[derive(Clone, Debug)]
pub struct TransportMap {
    pub path: Vec<(String, FlipDirection)>,
    /// Order of the K₀ basis; arcs keep their ids across flips.
    pub arcs: Vec<String>,
    pub start: DecoratedTriangulation,
    pub end: DecoratedTriangulation,
    pub source_table: ExtAlgebraTable,
    pub target_table: ExtAlgebraTable,
    /// Column `j`: the class of the transported simple `S_j` of the final
    /// heart in the simples of the starting heart.
    pub frame: IntMatrix,
    /// Final basis id -> starting basis id, when the final triangulation is
    /// the starting one with decorations permuted.
    pub relabel: Option<BTreeMap<String, String>>,
}

/// Frame of a single flip of `t` at `k`: `-e_k` for `k`, and
/// `e_i + #(i→k) e_k` (forward) or `e_i + #(k→i) e_k` (backward).
pub fn flip_frame(t: &DecoratedTriangulation, k: &str, dir: FlipDirection) -> Result<IntMatrix> {
    let arcs = t.arcs();
    let kk = arcs
        .iter()
        .position(|a| a == k)
        .ok_or_else(|| Error::UnknownArc(k.to_string()))?;
    let mut m = identity(arcs.len());
    for (j, a) in arcs.iter().enumerate() {
        if j == kk {
            m[kk][kk] = -1;
        } else {
            let n = match dir {
                FlipDirection::Forward => t.arrow_count(a, k),
                FlipDirection::Backward => t.arrow_count(k, a),
            };
            m[kk][j] = n as i64;
        }
    }
    Ok(m)
}

pub fn flip_transport(t: &DecoratedTriangulation, k: &str) -> Result<TransportMap> {
    path_transport(t, &[(k.to_string(), FlipDirection::Forward)])
}

pub fn path_transport(
    t0: &DecoratedTriangulation,
    path: &[(String, FlipDirection)],
) -> Result<TransportMap> {
    let mut t = t0.clone();
    let mut frame = identity(t0.arcs().len());
    for (k, d) in path {
        if !t.is_flippable(k) {
            return Err(Error::unsupported(format!("arc `{k}` is not flippable")));
        }
        frame = mat_mul(&frame, &flip_frame(&t, k, *d)?);
        t = t.flip(k, *d)?;
    }
    let source_table = ExtAlgebraTable::of(t0)?;
    let target_table = ExtAlgebraTable::of(&t)?;
    let relabel = decoration_matching(&t, t0).map(|m| basis_relabel(&target_table, &m));
    Ok(TransportMap {
        path: path.to_vec(),
        arcs: t0.arcs(),
        start: t0.clone(),
        end: t,
        source_table,
        target_table,
        frame,
        relabel,
    })
}

/// `d -> d'` with `end.triangles[d] == start.triangles[d']`, when this is a
/// bijection.
fn decoration_matching(
    end: &DecoratedTriangulation,
    start: &DecoratedTriangulation,
) -> Option<BTreeMap<usize, usize>> {
    if end.triangles().len() != start.triangles().len() {
        return None;
    }
    let mut used = vec![false; start.triangles().len()];
    let mut out = BTreeMap::new();
    for (d, tri) in end.triangles().iter().enumerate() {
        let d2 = (0..used.len()).find(|&e| !used[e] && start.triangles()[e] == *tri)?;
        used[d2] = true;
        out.insert(d, d2);
    }
    Some(out)
}

fn basis_relabel(
    table: &ExtAlgebraTable,
    deco: &BTreeMap<usize, usize>,
) -> BTreeMap<String, String> {
    table
        .basis()
        .iter()
        .map(|b| {
            let img = match (b.kind, b.decoration) {
                (ExtKind::Angle, Some(d)) => ExtBasisElement::angle_id(
                    deco[&d],
                    b.source_slot.expect("angle"),
                    b.target_slot.expect("angle"),
                ),
                _ => b.id.clone(),
            };
            (b.id.clone(), img)
        })
        .collect()
}

impl TransportMap {
    /// `Mᵀ χ_start M = χ_end`, with both forms read off the Ext tables.
    pub fn check_euler(&self) -> std::result::Result<(), String> {
        let form = |t: &ExtAlgebraTable| -> IntMatrix {
            let chi = t.euler_form();
            self.arcs
                .iter()
                .map(|a| {
                    self.arcs
                        .iter()
                        .map(|b| chi[&(a.clone(), b.clone())])
                        .collect()
                })
                .collect()
        };
        let (c0, c1) = (form(&self.source_table), form(&self.target_table));
        let pulled = mat_mul(&mat_mul(&transpose(&self.frame), &c0), &self.frame);
        if pulled == c1 {
            Ok(())
        } else {
            Err(format!("Mᵀχ M = {pulled:?}, χ' = {c1:?}"))
        }
    }

    /// The relabelling, when present, is a degree-preserving algebra
    /// isomorphism of the final table onto the starting table.
    pub fn check_relabel(&self) -> std::result::Result<(), String> {
        match &self.relabel {
            Some(m) => self.target_table.check_isomorphism(&self.source_table, m),
            None => Ok(()),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.frame == identity(self.arcs.len())
            && self
                .relabel
                .as_ref()
                .is_some_and(|m| m.iter().all(|(a, b)| a == b))
    }

    /// Same endpoint, same frame and same relabelling.
    pub fn agrees_with(&self, other: &TransportMap) -> bool {
        self.start == other.start
            && self.end == other.end
            && self.arcs == other.arcs
            && self.frame == other.frame
            && self.relabel == other.relabel
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let path: Vec<String> = self
            .path
            .iter()
            .map(|(k, d)| format!("{k}{}", d.symbol()))
            .collect();
        let frame: BTreeMap<&String, BTreeMap<&String, i64>> = self
            .arcs
            .iter()
            .enumerate()
            .map(|(j, a)| {
                let col = self
                    .arcs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| self.frame[*i][j] != 0)
                    .map(|(i, b)| (b, self.frame[i][j]))
                    .collect();
                (a, col)
            })
            .collect();
        json!({
            "path": path,
            "start": self.start.canonical_key(true),
            "end": self.end.canonical_key(true),
            "frame": frame,
            "relabel": self.relabel.as_ref().map(|m| m.iter().collect::<Vec<_>>()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use FlipDirection::*;

    fn p(steps: &[(&str, FlipDirection)]) -> Vec<(String, FlipDirection)> {
        steps.iter().map(|(k, d)| (k.to_string(), *d)).collect()
    }

    #[test]
    fn empty_path_is_identity() {
        let t = path_transport(&fixtures::pentagon(), &[]).unwrap();
        assert!(t.is_identity());
    }

    #[test]
    fn cancel_pair() {
        for dir in [Forward, Backward] {
            let t = path_transport(
                &fixtures::hexagon(),
                &p(&[("d0-3", dir), ("d0-3", dir.inverse())]),
            )
            .unwrap();
            assert!(t.is_identity());
        }
    }

    #[test]
    fn euler_compatible_on_all_hexagon_flips() {
        for t in fixtures::all_triangulations(&fixtures::hexagon()) {
            for k in t.arcs() {
                for d in [Forward, Backward] {
                    let m = path_transport(&t, &[(k.clone(), d)]).unwrap();
                    assert_eq!(m.check_euler(), Ok(()), "{k}{}", d.symbol());
                }
            }
        }
    }

    #[test]
    fn heptagon_square_commutes() {
        let h = fixtures::heptagon();
        let a = path_transport(&h, &p(&[("d0-2", Forward), ("d0-4", Forward)])).unwrap();
        let b = path_transport(&h, &p(&[("d0-4", Forward), ("d0-2", Forward)])).unwrap();
        assert!(a.agrees_with(&b));
    }

    #[test]
    fn double_forward_is_nontrivial() {
        let h = fixtures::hexagon();
        let t = path_transport(&h, &p(&[("d0-3", Forward), ("d0-3", Forward)])).unwrap();
        assert!(!t.is_identity());
        assert!(t.relabel.as_ref().unwrap().iter().any(|(a, b)| a != b));
        assert_eq!(t.check_relabel(), Ok(()));
    }
}
