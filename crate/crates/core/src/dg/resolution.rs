//! Cofibrant resolutions of simples, the images `F(pS~_i)` under the
//! Keller–Yang equivalence, the resolutions of the sharp simples, and the
//! comparison maps `φ_i` between them.
//!
//! Summands are grouped in numbered blocks; a block is indexed by arrows or
//! pairs of arrows of the base quiver, in quiver order.

use std::collections::BTreeMap;

use super::algebra::GinzburgPresentation;
use super::module::{ChainMap, Gen, Matrix, ModulePresentation};
use crate::error::{Error, Result};
use crate::qp::{Arrow, PathExpr};

/// Summand list with lookup by `(block, key)`.
#[derive(Clone, Debug, Default)]
pub struct Layout {
    pub gens: Vec<Gen>,
    index: BTreeMap<(usize, String), usize>,
}

impl Layout {
    fn push(&mut self, block: usize, key: &str, vertex: &str, shift: i32) {
        let label = if key.is_empty() {
            format!("{block}")
        } else {
            format!("{block}:{key}")
        };
        self.index.insert((block, key.to_string()), self.gens.len());
        self.gens.push(Gen::new(vertex, shift, label));
    }

    pub fn at(&self, block: usize, key: &str) -> usize {
        *self
            .index
            .get(&(block, key.to_string()))
            .unwrap_or_else(|| panic!("no summand {block}:{key}"))
    }

    pub fn get(&self, block: usize, key: &str) -> Option<usize> {
        self.index.get(&(block, key.to_string())).copied()
    }

    fn module(&self, name: &str) -> ModulePresentation {
        ModulePresentation::new(name, self.gens.clone())
    }
}

pub fn pair_key(a: &str, b: &str) -> String {
    format!("{a},{b}")
}

/// Arrow sets around a vertex `i` and the mutation vertex `k`.
struct Around<'a> {
    arrows: &'a [Arrow],
    i: &'a str,
    k: &'a str,
}

impl<'a> Around<'a> {
    fn filter(&self, f: impl Fn(&Arrow) -> bool) -> Vec<&'a Arrow> {
        self.arrows.iter().filter(|a| f(a)).collect()
    }
    /// `t = i`, `s != k`.
    fn alpha(&self) -> Vec<&'a Arrow> {
        self.filter(|a| a.target == self.i && a.source != self.k)
    }
    /// `s = i`, `t != k`.
    fn beta(&self) -> Vec<&'a Arrow> {
        self.filter(|a| a.source == self.i && a.target != self.k)
    }
    /// `i -> k`.
    fn to_k(&self) -> Vec<&'a Arrow> {
        self.filter(|a| a.source == self.i && a.target == self.k)
    }
    /// `k -> i`.
    fn k_to_i(&self) -> Vec<&'a Arrow> {
        self.filter(|a| a.source == self.k && a.target == self.i)
    }
    fn arrows_into_k(&self) -> Vec<&'a Arrow> {
        self.filter(|a| a.target == self.k)
    }
    fn out_of_k(&self) -> Vec<&'a Arrow> {
        self.filter(|a| a.source == self.k)
    }
    /// `(a, b)` with `t(a) = s(b) = k`, `t(b) = i`.
    fn through_k_to_i(&self) -> Vec<(&'a Arrow, &'a Arrow)> {
        let mut out = Vec::new();
        for a in self.arrows_into_k() {
            for b in self.k_to_i() {
                out.push((a, b));
            }
        }
        out
    }
    /// `(p, q)` with `s(p) = i`, `t(p) = t(q) = k`.
    fn pq(&self) -> Vec<(&'a Arrow, &'a Arrow)> {
        let mut out = Vec::new();
        for p in self.to_k() {
            for q in self.arrows_into_k() {
                out.push((p, q));
            }
        }
        out
    }
    /// `(l, g)` with `s(l) = i`, `t(l) = s(g) = k`.
    fn lg(&self) -> Vec<(&'a Arrow, &'a Arrow)> {
        let mut out = Vec::new();
        for l in self.to_k() {
            for g in self.out_of_k() {
                out.push((l, g));
            }
        }
        out
    }
}

fn delta(cond: bool, e: PathExpr) -> PathExpr {
    if cond {
        e
    } else {
        PathExpr::zero()
    }
}

/// Resolution `pS_i = P_i[3] ⊕ P_{s(ρ)}[2] ⊕ P_{t(τ)}[1] ⊕ P_i`.
pub fn simple_resolution(g: &GinzburgPresentation, i: &str) -> Result<ModulePresentation> {
    g.qp().quiver.require_vertex(i)?;
    let (layout, m) = simple_resolution_layout(g, i);
    debug_assert_eq!(layout.gens.len(), m.gens.len());
    Ok(m)
}

pub fn simple_resolution_layout(g: &GinzburgPresentation, i: &str) -> (Layout, ModulePresentation) {
    let arrows = g.qp().quiver.arrows();
    let rho: Vec<&Arrow> = arrows.iter().filter(|a| a.target == i).collect();
    let tau: Vec<&Arrow> = arrows.iter().filter(|a| a.source == i).collect();
    let mut l = Layout::default();
    l.push(1, "", i, 3);
    for r in &rho {
        l.push(2, &r.id, &r.source, 2);
    }
    for t in &tau {
        l.push(3, &t.id, &t.target, 1);
    }
    l.push(4, "", i, 0);
    let mut m = l.module(&format!("pS_{i}"));
    let (p1, p4) = (l.at(1, ""), l.at(4, ""));
    m.d.set(p4, p1, g.loop_at(i));
    for r in &rho {
        let row = l.at(2, &r.id);
        m.d.set(row, p1, g.gen(&r.id));
        m.d.set(p4, row, g.star(&r.id));
    }
    for t in &tau {
        let row = l.at(3, &t.id);
        m.d.set(row, p1, -g.star(&t.id));
        m.d.set(p4, row, g.gen(&t.id));
        for r in &rho {
            let col = l.at(2, &r.id);
            m.d.set(row, col, -g.path_derivative(&[&r.id, &t.id]));
        }
    }
    (l, m)
}

/// `F(pS~_i)`, `pS♯_i` and `φ_i: F(pS~_i) -> pS♯_i` for one vertex.
#[derive(Clone, Debug)]
pub struct SharpBundle {
    pub i: String,
    pub k: String,
    pub f_layout: Layout,
    pub sharp_layout: Layout,
    pub phi: ChainMap,
}

impl SharpBundle {
    pub fn f_module(&self) -> &ModulePresentation {
        &self.phi.source
    }

    pub fn sharp_module(&self) -> &ModulePresentation {
        &self.phi.target
    }
}

/// Builds the bundle for `i` relative to the mutation vertex `k`.
pub fn sharp_bundle(g: &GinzburgPresentation, k: &str, i: &str) -> Result<SharpBundle> {
    let q = &g.qp().quiver;
    q.require_vertex(k)?;
    q.require_vertex(i)?;
    if q.arrow_count(k, k) > 0 {
        return Err(Error::invalid("loops at the mutation vertex"));
    }
    if i == k {
        Ok(sharp_bundle_at_k(g, k))
    } else {
        Ok(sharp_bundle_off_k(g, k, i))
    }
}

fn sharp_bundle_off_k(g: &GinzburgPresentation, k: &str, i: &str) -> SharpBundle {
    let ar = Around {
        arrows: g.qp().quiver.arrows(),
        i,
        k,
    };
    let d = |w: &[&str]| g.path_derivative(w);
    let e = |v: &str| g.unit(v);

    // F(pS~_i)
    let mut fl = Layout::default();
    fl.push(1, "", i, 3);
    for a in ar.alpha() {
        fl.push(2, &a.id, &a.source, 2);
    }
    for (a, b) in ar.through_k_to_i() {
        fl.push(3, &pair_key(&a.id, &b.id), &a.source, 2);
    }
    for c in ar.to_k() {
        fl.push(4, &c.id, k, 3);
    }
    for (p, qq) in ar.pq() {
        fl.push(5, &pair_key(&p.id, &qq.id), &qq.source, 2);
    }
    for b in ar.beta() {
        fl.push(6, &b.id, &b.target, 1);
    }
    for (l, gg) in ar.lg() {
        fl.push(7, &pair_key(&l.id, &gg.id), &gg.target, 1);
    }
    for h in ar.k_to_i() {
        fl.push(8, &h.id, k, 2);
    }
    for (x, y) in ar.through_k_to_i() {
        fl.push(9, &pair_key(&x.id, &y.id), &x.source, 1);
    }
    fl.push(10, "", i, 0);
    let mut fm = fl.module(&format!("F(pS~_{i})"));
    let (b1, b10) = (fl.at(1, ""), fl.at(10, ""));
    let dm = &mut fm.d;
    dm.set(b10, b1, g.loop_at(i));
    for a in ar.alpha() {
        let r = fl.at(2, &a.id);
        dm.set(r, b1, g.gen(&a.id));
        dm.set(b10, r, g.star(&a.id));
    }
    for (a, b) in ar.through_k_to_i() {
        let r = fl.at(3, &pair_key(&a.id, &b.id));
        dm.set(r, b1, g.word(&[&a.id, &b.id]));
    }
    for c in ar.to_k() {
        let r = fl.at(4, &c.id);
        dm.set(b10, r, -(&g.gen(&c.id) * &g.loop_at(k)));
    }
    for (p, qq) in ar.pq() {
        let r = fl.at(5, &pair_key(&p.id, &qq.id));
        dm.set(r, b1, delta(p.id == qq.id, e(i)));
        for c in ar.to_k() {
            if c.id == p.id {
                dm.set(r, fl.at(4, &c.id), g.gen(&qq.id));
            }
        }
        dm.set(b10, r, -(&g.gen(&p.id) * &g.star(&qq.id)));
    }
    for b in ar.beta() {
        let r = fl.at(6, &b.id);
        dm.set(r, b1, -g.star(&b.id));
        for a in ar.alpha() {
            dm.set(r, fl.at(2, &a.id), -d(&[&a.id, &b.id]));
        }
        for (x, y) in ar.through_k_to_i() {
            dm.set(
                r,
                fl.at(3, &pair_key(&x.id, &y.id)),
                -d(&[&x.id, &y.id, &b.id]),
            );
        }
        dm.set(b10, r, g.gen(&b.id));
    }
    for (l, gg) in ar.lg() {
        let r = fl.at(7, &pair_key(&l.id, &gg.id));
        for a in ar.alpha() {
            dm.set(r, fl.at(2, &a.id), -d(&[&a.id, &l.id, &gg.id]));
        }
        for c in ar.to_k() {
            if c.id == l.id {
                dm.set(r, fl.at(4, &c.id), g.star(&gg.id));
            }
        }
        for (p, qq) in ar.pq() {
            if p.id == l.id {
                dm.set(r, fl.at(5, &pair_key(&p.id, &qq.id)), d(&[&qq.id, &gg.id]));
            }
        }
        dm.set(b10, r, g.word(&[&l.id, &gg.id]));
    }
    for h in ar.k_to_i() {
        let r = fl.at(8, &h.id);
        dm.set(r, b1, -g.gen(&h.id));
        dm.set(b10, r, -g.star(&h.id));
    }
    for (x, y) in ar.through_k_to_i() {
        let r = fl.at(9, &pair_key(&x.id, &y.id));
        dm.set(r, fl.at(3, &pair_key(&x.id, &y.id)), -e(&x.source));
        dm.set(r, fl.at(8, &y.id), -g.gen(&x.id));
        dm.set(b10, r, -d(&[&x.id, &y.id]));
    }

    // pS♯_i
    let mut sl = Layout::default();
    sl.push(1, "", i, 3);
    for a in ar.alpha() {
        sl.push(2, &a.id, &a.source, 2);
    }
    for h in ar.k_to_i() {
        sl.push(3, &h.id, k, 2);
    }
    for b in ar.beta() {
        sl.push(4, &b.id, &b.target, 1);
    }
    for s in ar.to_k() {
        sl.push(5, &s.id, k, 1);
    }
    sl.push(6, "", i, 0);
    for c in ar.to_k() {
        sl.push(7, &c.id, k, 3);
    }
    for (p, qq) in ar.pq() {
        sl.push(8, &pair_key(&p.id, &qq.id), &qq.source, 2);
    }
    for (l, gg) in ar.lg() {
        sl.push(9, &pair_key(&l.id, &gg.id), &gg.target, 1);
    }
    for t in ar.to_k() {
        sl.push(10, &t.id, k, 0);
    }
    let mut sm = sl.module(&format!("pS#_{i}"));
    let (c1, c6) = (sl.at(1, ""), sl.at(6, ""));
    let dm = &mut sm.d;
    dm.set(c6, c1, g.loop_at(i));
    for a in ar.alpha() {
        let r = sl.at(2, &a.id);
        dm.set(r, c1, g.gen(&a.id));
        dm.set(c6, r, g.star(&a.id));
    }
    for h in ar.k_to_i() {
        let r = sl.at(3, &h.id);
        dm.set(r, c1, g.gen(&h.id));
        dm.set(c6, r, g.star(&h.id));
    }
    for b in ar.beta() {
        let r = sl.at(4, &b.id);
        dm.set(r, c1, -g.star(&b.id));
        for a in ar.alpha() {
            dm.set(r, sl.at(2, &a.id), -d(&[&a.id, &b.id]));
        }
        for h in ar.k_to_i() {
            dm.set(r, sl.at(3, &h.id), -d(&[&h.id, &b.id]));
        }
        dm.set(c6, r, g.gen(&b.id));
    }
    for s in ar.to_k() {
        let r = sl.at(5, &s.id);
        dm.set(r, c1, -g.star(&s.id));
        for a in ar.alpha() {
            dm.set(r, sl.at(2, &a.id), -d(&[&a.id, &s.id]));
        }
        dm.set(c6, r, g.gen(&s.id));
    }
    for (p, qq) in ar.pq() {
        let r = sl.at(8, &pair_key(&p.id, &qq.id));
        dm.set(r, c1, delta(p.id == qq.id, e(i)));
        dm.set(r, sl.at(7, &p.id), g.gen(&qq.id));
    }
    for (l, gg) in ar.lg() {
        let r = sl.at(9, &pair_key(&l.id, &gg.id));
        for a in ar.alpha() {
            dm.set(r, sl.at(2, &a.id), d(&[&a.id, &l.id, &gg.id]));
        }
        dm.set(r, sl.at(7, &l.id), -g.star(&gg.id));
        for (p, qq) in ar.pq() {
            if p.id == l.id {
                dm.set(r, sl.at(8, &pair_key(&p.id, &qq.id)), -d(&[&qq.id, &gg.id]));
            }
        }
    }
    for t in ar.to_k() {
        let r = sl.at(10, &t.id);
        dm.set(r, sl.at(5, &t.id), e(k));
        dm.set(r, sl.at(7, &t.id), g.loop_at(k));
        for (p, qq) in ar.pq() {
            if p.id == t.id {
                dm.set(r, sl.at(8, &pair_key(&p.id, &qq.id)), g.star(&qq.id));
            }
        }
        for (l, gg) in ar.lg() {
            if l.id == t.id {
                dm.set(r, sl.at(9, &pair_key(&l.id, &gg.id)), g.gen(&gg.id));
            }
        }
    }

    // φ_i
    let mut phi = Matrix::zero(sl.gens.len(), fl.gens.len());
    phi.set(c1, b1, e(i));
    phi.set(c6, b10, e(i));
    for a in ar.alpha() {
        phi.set(sl.at(2, &a.id), fl.at(2, &a.id), e(&a.source));
    }
    for h in ar.k_to_i() {
        phi.set(sl.at(3, &h.id), fl.at(8, &h.id), -e(k));
    }
    for b in ar.beta() {
        let r = sl.at(4, &b.id);
        phi.set(r, fl.at(6, &b.id), e(&b.target));
        for (x, y) in ar.through_k_to_i() {
            phi.set(
                r,
                fl.at(9, &pair_key(&x.id, &y.id)),
                -d(&[&x.id, &y.id, &b.id]),
            );
        }
    }
    for s in ar.to_k() {
        let r = sl.at(5, &s.id);
        phi.set(r, fl.at(4, &s.id), -g.loop_at(k));
        for (p, qq) in ar.pq() {
            if p.id == s.id {
                phi.set(r, fl.at(5, &pair_key(&p.id, &qq.id)), -g.star(&qq.id));
            }
        }
        for (l, gg) in ar.lg() {
            if l.id == s.id {
                phi.set(r, fl.at(7, &pair_key(&l.id, &gg.id)), g.gen(&gg.id));
            }
        }
    }
    for c in ar.to_k() {
        phi.set(sl.at(7, &c.id), fl.at(4, &c.id), e(k));
    }
    for (p, qq) in ar.pq() {
        let key = pair_key(&p.id, &qq.id);
        phi.set(sl.at(8, &key), fl.at(5, &key), e(&qq.source));
    }
    for (l, gg) in ar.lg() {
        let key = pair_key(&l.id, &gg.id);
        phi.set(sl.at(9, &key), fl.at(7, &key), -e(&gg.target));
    }

    SharpBundle {
        i: i.to_string(),
        k: k.to_string(),
        phi: ChainMap::new(format!("phi_{i}"), fm, sm, phi, 0),
        f_layout: fl,
        sharp_layout: sl,
    }
}

fn sharp_bundle_at_k(g: &GinzburgPresentation, k: &str) -> SharpBundle {
    let ar = Around {
        arrows: g.qp().quiver.arrows(),
        i: k,
        k,
    };
    let d = |w: &[&str]| g.path_derivative(w);
    let e = |v: &str| g.unit(v);
    let rho = ar.arrows_into_k();
    let gamma = ar.out_of_k();

    let mut fl = Layout::default();
    fl.push(1, "", k, 4);
    for r in &rho {
        fl.push(2, &r.id, &r.source, 3);
    }
    for c in &gamma {
        fl.push(3, &c.id, &c.target, 2);
    }
    for w in &rho {
        fl.push(4, &w.id, &w.source, 1);
    }
    fl.push(5, "", k, 1);
    for z in &rho {
        fl.push(6, &z.id, &z.source, 0);
    }
    let mut fm = fl.module(&format!("F(pS~_{k})"));
    let (k1, k5) = (fl.at(1, ""), fl.at(5, ""));
    let dm = &mut fm.d;
    dm.set(k5, k1, -g.loop_at(k));
    for r in &rho {
        let row = fl.at(2, &r.id);
        dm.set(row, k1, -g.gen(&r.id));
        dm.set(k5, row, -g.star(&r.id));
    }
    for c in &gamma {
        let row = fl.at(3, &c.id);
        dm.set(row, k1, -g.star(&c.id));
        for r in &rho {
            dm.set(row, fl.at(2, &r.id), -d(&[&r.id, &c.id]));
        }
        dm.set(k5, row, g.gen(&c.id));
    }
    for w in &rho {
        let row = fl.at(4, &w.id);
        dm.set(row, k1, &g.gen(&w.id) * &g.loop_at(k));
        for r in &rho {
            dm.set(row, fl.at(2, &r.id), &g.gen(&w.id) * &g.star(&r.id));
        }
        for c in &gamma {
            dm.set(row, fl.at(3, &c.id), -g.word(&[&w.id, &c.id]));
        }
    }
    for z in &rho {
        let row = fl.at(6, &z.id);
        dm.set(row, fl.at(4, &z.id), e(&z.source));
        dm.set(row, k5, g.gen(&z.id));
    }

    let mut sl = Layout::default();
    sl.push(1, "", k, 4);
    for r in &rho {
        sl.push(2, &r.id, &r.source, 3);
    }
    for c in &gamma {
        sl.push(3, &c.id, &c.target, 2);
    }
    sl.push(4, "", k, 1);
    let mut sm = sl.module(&format!("pS#_{k}"));
    let (l1, l4) = (sl.at(1, ""), sl.at(4, ""));
    let dm = &mut sm.d;
    dm.set(l4, l1, -g.loop_at(k));
    for r in &rho {
        let row = sl.at(2, &r.id);
        dm.set(row, l1, -g.gen(&r.id));
        dm.set(l4, row, -g.star(&r.id));
    }
    for c in &gamma {
        let row = sl.at(3, &c.id);
        dm.set(row, l1, g.star(&c.id));
        for r in &rho {
            dm.set(row, sl.at(2, &r.id), d(&[&r.id, &c.id]));
        }
        dm.set(l4, row, -g.gen(&c.id));
    }

    let mut phi = Matrix::zero(sl.gens.len(), fl.gens.len());
    phi.set(l1, k1, e(k));
    phi.set(l4, k5, e(k));
    for r in &rho {
        phi.set(sl.at(2, &r.id), fl.at(2, &r.id), e(&r.source));
    }
    for c in &gamma {
        phi.set(sl.at(3, &c.id), fl.at(3, &c.id), -e(&c.target));
    }

    SharpBundle {
        i: k.to_string(),
        k: k.to_string(),
        phi: ChainMap::new(format!("phi_{k}"), fm, sm, phi, 0),
        f_layout: fl,
        sharp_layout: sl,
    }
}
