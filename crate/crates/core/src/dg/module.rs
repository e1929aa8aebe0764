use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::algebra::GinzburgPresentation;
use crate::error::{Error, Result};
use crate::qp::{Coeff, PathExpr};

/// One summand `P_v[shift]` of a twisted direct sum of shifted projectives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gen {
    pub vertex: String,
    pub shift: i32,
    pub label: String,
}

impl Gen {
    pub fn new(vertex: impl Into<String>, shift: i32, label: impl Into<String>) -> Self {
        Gen {
            vertex: vertex.into(),
            shift,
            label: label.into(),
        }
    }
}

/// Sparse matrix over the path algebra. Entry `(i, j)` is left
/// multiplication by an element of `e_{v_i} Γ e_{v_j}`, mapping summand `j`
/// of the source to summand `i` of the target.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), PathExpr>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    /// Identity on a list of summands: trivial paths on the diagonal.
    pub fn identity(gens: &[Gen]) -> Self {
        let mut m = Self::zero(gens.len(), gens.len());
        for (i, g) in gens.iter().enumerate() {
            m.set(i, i, PathExpr::trivial(g.vertex.clone()));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn set(&mut self, i: usize, j: usize, e: PathExpr) {
        assert!(
            i < self.rows && j < self.cols,
            "entry ({i},{j}) out of range"
        );
        if e.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), e);
        }
    }

    pub fn add_at(&mut self, i: usize, j: usize, e: &PathExpr) {
        let cur = self.get(i, j);
        self.set(i, j, &cur + e);
    }

    pub fn get(&self, i: usize, j: usize) -> PathExpr {
        self.entries.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &PathExpr)> {
        self.entries.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn map(&self, mut f: impl FnMut(usize, usize, &PathExpr) -> PathExpr) -> Matrix {
        let mut out = Matrix::zero(self.rows, self.cols);
        for (&(i, j), e) in &self.entries {
            out.set(i, j, f(i, j, e));
        }
        out
    }

    pub fn scale(&self, c: Coeff) -> Matrix {
        self.map(|_, _, e| e.scale(c))
    }

    pub fn neg(&self) -> Matrix {
        self.scale(-Coeff::one())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = self.clone();
        for (&(i, j), e) in &other.entries {
            out.add_at(i, j, e);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut by_row: BTreeMap<usize, Vec<(usize, &PathExpr)>> = BTreeMap::new();
        for (&(k, j), e) in &other.entries {
            by_row.entry(k).or_default().push((j, e));
        }
        let mut out = Matrix::zero(self.rows, other.cols);
        for (&(i, k), a) in &self.entries {
            if let Some(row) = by_row.get(&k) {
                for (j, b) in row {
                    out.add_at(i, *j, &(a * *b));
                }
            }
        }
        Ok(out)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zero(self.rows + other.rows, self.cols + other.cols);
        for (&(i, j), e) in &self.entries {
            out.set(i, j, e.clone());
        }
        for (&(i, j), e) in &other.entries {
            out.set(self.rows + i, self.cols + j, e.clone());
        }
        out
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "0 ({}x{})", self.rows, self.cols);
        }
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|((i, j), e)| format!("({},{}): {e}", i + 1, j + 1))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// A finitely generated dg module `⊕ P_{v_i}[n_i]` with a strictly lower
/// triangular twisting matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    pub name: String,
    pub gens: Vec<Gen>,
    pub d: Matrix,
}

impl ModulePresentation {
    pub fn new(name: impl Into<String>, gens: Vec<Gen>) -> Self {
        let n = gens.len();
        ModulePresentation {
            name: name.into(),
            gens,
            d: Matrix::zero(n, n),
        }
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// `M[n]`: every shift grows by `n` and the twisting matrix picks up
    /// `(-1)^n`. Degree-0 maps keep their matrices under shifts.
    pub fn shifted(&self, n: i32) -> Self {
        let sign = if n % 2 == 0 {
            Coeff::one()
        } else {
            -Coeff::one()
        };
        ModulePresentation {
            name: format!("{}[{n}]", self.name),
            gens: self
                .gens
                .iter()
                .map(|g| Gen::new(g.vertex.clone(), g.shift + n, g.label.clone()))
                .collect(),
            d: self.d.scale(sign),
        }
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.label == label)
    }
}

/// How the internal differential of a shifted projective is signed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignConvention {
    /// `P[n]` carries `(-1)^n d_Γ`; the twisted differential is
    /// `σ d_Γ + D` with `σ` the diagonal sign matrix.
    ShiftTwisted,
    /// Every summand carries the unsigned `d_Γ`.
    Plain,
}

impl SignConvention {
    pub const FROZEN: SignConvention = SignConvention::ShiftTwisted;

    pub fn name(self) -> &'static str {
        match self {
            SignConvention::ShiftTwisted => "shift-twisted",
            SignConvention::Plain => "plain",
        }
    }
}

fn parity(n: i32) -> Coeff {
    if n.rem_euclid(2) == 0 {
        Coeff::one()
    } else {
        -Coeff::one()
    }
}

/// Verification context: a Ginzburg algebra plus the sign convention.
#[derive(Clone, Copy)]
pub struct DgContext<'a> {
    pub gamma: &'a GinzburgPresentation,
    pub sign: SignConvention,
}

impl<'a> DgContext<'a> {
    pub fn new(gamma: &'a GinzburgPresentation) -> Self {
        DgContext {
            gamma,
            sign: SignConvention::FROZEN,
        }
    }

    pub fn with_sign(gamma: &'a GinzburgPresentation, sign: SignConvention) -> Self {
        DgContext { gamma, sign }
    }

    /// Entrywise `d_Γ`, with row `i` signed by `(-1)^{n_i}` under the
    /// shift-twisted convention.
    pub fn sigma_d(&self, rows: &[Gen], m: &Matrix) -> Matrix {
        m.map(|i, _, e| {
            let de = self.gamma.d(e);
            match self.sign {
                SignConvention::ShiftTwisted => de.scale(parity(rows[i].shift)),
                SignConvention::Plain => de,
            }
        })
    }

    /// Checks that each entry of a degree-`r` map from `src` to `tgt` is a
    /// combination of paths `v_i -> v_j` of degree `r + n_i - n_j`.
    pub fn check_entries(&self, tgt: &[Gen], src: &[Gen], m: &Matrix, r: i32) -> Vec<String> {
        let mut bad = Vec::new();
        if m.rows() != tgt.len() || m.cols() != src.len() {
            bad.push(format!(
                "matrix is {}x{}, expected {}x{}",
                m.rows(),
                m.cols(),
                tgt.len(),
                src.len()
            ));
            return bad;
        }
        for (&(i, j), e) in m.entries() {
            let want = r + tgt[i].shift - src[j].shift;
            for (p, _) in e.terms() {
                if p.source != tgt[i].vertex || p.target != src[j].vertex {
                    bad.push(format!(
                        "entry ({},{}) term {p} runs {}->{}, expected {}->{}",
                        i + 1,
                        j + 1,
                        p.source,
                        p.target,
                        tgt[i].vertex,
                        src[j].vertex
                    ));
                } else if self.gamma.degree_of_path(p) != want {
                    bad.push(format!(
                        "entry ({},{}) term {p} has degree {}, expected {want}",
                        i + 1,
                        j + 1,
                        self.gamma.degree_of_path(p)
                    ));
                }
            }
        }
        bad
    }

    /// `D² + σ d(D)`, which vanishes exactly for a valid twisted module.
    pub fn maurer_cartan(&self, m: &ModulePresentation) -> Matrix {
        let d2 = m.d.mul(&m.d).expect("square");
        d2.add(&self.sigma_d(&m.gens, &m.d)).expect("same shape")
    }

    /// Entry/degree problems plus a nonzero Maurer–Cartan residual.
    pub fn check_module(&self, m: &ModulePresentation) -> Vec<String> {
        let mut bad = self.check_entries(&m.gens, &m.gens, &m.d, 1);
        for (&(i, j), _) in m.d.entries() {
            if i <= j {
                bad.push(format!(
                    "entry ({},{}) is not strictly lower triangular",
                    i + 1,
                    j + 1
                ));
            }
        }
        let mc = self.maurer_cartan(m);
        if !mc.is_zero() {
            bad.push(format!("D² + σd(D) = {mc}"));
        }
        bad
    }

    /// `D_N F - (-1)^r F D_M + σ_N d(F)` for a degree-`r` map `F: M -> N`.
    pub fn chain_residual(
        &self,
        src: &ModulePresentation,
        tgt: &ModulePresentation,
        f: &Matrix,
        r: i32,
    ) -> Result<Matrix> {
        let a = tgt.d.mul(f)?;
        let b = f.mul(&src.d)?.scale(parity(r));
        a.sub(&b)?.add(&self.sigma_d(&tgt.gens, f))
    }

    pub fn check_chain_map(&self, map: &ChainMap) -> Vec<String> {
        let mut bad =
            self.check_entries(&map.target.gens, &map.source.gens, &map.matrix, map.degree);
        if !bad.is_empty() {
            return bad;
        }
        match self.chain_residual(&map.source, &map.target, &map.matrix, map.degree) {
            Ok(res) if res.is_zero() => {}
            Ok(res) => bad.push(format!("chain-map residual {res}")),
            Err(e) => bad.push(e.to_string()),
        }
        bad
    }

    /// `[d, θ] = σ_N d(Θ) + D_N Θ - (-1)^{|θ|} Θ D_M`.
    pub fn commutator(
        &self,
        src: &ModulePresentation,
        tgt: &ModulePresentation,
        theta: &Matrix,
        deg: i32,
    ) -> Result<Matrix> {
        self.chain_residual(src, tgt, theta, deg)
    }

    /// Residual of `f - g = [d, θ]` for degree-0 maps `f, g: M -> N`.
    pub fn homotopy_residual(
        &self,
        src: &ModulePresentation,
        tgt: &ModulePresentation,
        f: &Matrix,
        g: &Matrix,
        theta: &Matrix,
    ) -> Result<Matrix> {
        let diff = f.sub(g)?;
        diff.sub(&self.commutator(src, tgt, theta, -1)?)
    }
}

/// A homogeneous map of twisted modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub name: String,
    pub source: ModulePresentation,
    pub target: ModulePresentation,
    pub matrix: Matrix,
    pub degree: i32,
}

impl ChainMap {
    pub fn new(
        name: impl Into<String>,
        source: ModulePresentation,
        target: ModulePresentation,
        matrix: Matrix,
        degree: i32,
    ) -> Self {
        ChainMap {
            name: name.into(),
            source,
            target,
            matrix,
            degree,
        }
    }

    /// Composition `self ∘ first` of degree-0 maps.
    pub fn after(&self, first: &ChainMap) -> Result<Matrix> {
        self.matrix.mul(&first.matrix)
    }
}
