//! The Grothendieck lattice spanned by the simples, its Euler form, and the
//! action of spherical twists and their words on classes and central charges.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qp::Quiver;

pub type IntMatrix = Vec<Vec<i64>>;

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let (n, m, p) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    (0..n)
        .map(|i| {
            (0..p)
                .map(|j| (0..m).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose(a: &IntMatrix) -> IntMatrix {
    let m = a.first().map_or(0, Vec::len);
    (0..m)
        .map(|j| a.iter().map(|row| row[j]).collect())
        .collect()
}

/// Determinant by fraction-free elimination.
pub fn determinant(a: &IntMatrix) -> i128 {
    let n = a.len();
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&r| m[r][k] != 0) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
        }
        prev = m[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * m[n - 1][n - 1]
    }
}

/// Classes are integer vectors in the basis of simples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct K0Lattice {
    vertices: Vec<String>,
    /// `chi[i][j] = χ(S_i, S_j)`.
    chi: IntMatrix,
}

impl K0Lattice {
    pub fn from_quiver(q: &Quiver) -> Self {
        let vertices = q.vertices().to_vec();
        let chi = vertices
            .iter()
            .map(|i| {
                vertices
                    .iter()
                    .map(|j| q.arrow_count(j, i) as i64 - q.arrow_count(i, j) as i64)
                    .collect()
            })
            .collect();
        K0Lattice { vertices, chi }
    }

    pub fn with_form(vertices: Vec<String>, chi: IntMatrix) -> Result<Self> {
        let n = vertices.len();
        if chi.len() != n || chi.iter().any(|r| r.len() != n) {
            return Err(Error::Shape(format!("Euler form must be {n}×{n}")));
        }
        Ok(K0Lattice { vertices, chi })
    }

    pub fn rank(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn form(&self) -> &IntMatrix {
        &self.chi
    }

    pub fn index(&self, v: &str) -> Result<usize> {
        self.vertices
            .iter()
            .position(|x| x == v)
            .ok_or_else(|| Error::UnknownVertex(v.to_string()))
    }

    pub fn simple(&self, v: &str) -> Result<Vec<i64>> {
        let i = self.index(v)?;
        Ok((0..self.rank()).map(|j| i64::from(i == j)).collect())
    }

    pub fn chi(&self, x: &[i64], y: &[i64]) -> i64 {
        let n = self.rank();
        (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| x[i] * self.chi[i][j] * y[j])
            .sum()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.chi
            == transpose(&self.chi)
                .iter()
                .map(|r| r.iter().map(|x| -x).collect())
                .collect::<IntMatrix>()
    }

    /// `φ_{S_i}^{±1}(x) = x ∓ χ(S_i, x) S_i`.
    pub fn twist_class(&self, i: &str, exponent: i8, x: &[i64]) -> Result<Vec<i64>> {
        let k = self.index(i)?;
        let s = self.simple(i)?;
        let c = self.chi(&s, x) * i64::from(exponent.signum());
        let mut out = x.to_vec();
        out[k] -= c;
        Ok(out)
    }

    /// Columns are the images of the simples.
    pub fn twist_matrix(&self, i: &str, exponent: i8) -> Result<IntMatrix> {
        let cols: Vec<Vec<i64>> = self
            .vertices
            .iter()
            .map(|v| self.twist_class(i, exponent, &self.simple(v).unwrap()))
            .collect::<Result<_>>()?;
        Ok(transpose(&cols))
    }

    /// Product of the letter matrices in reading order, so the last letter
    /// acts first.
    pub fn word_matrix(&self, w: &TwistWord) -> Result<IntMatrix> {
        let mut m = identity(self.rank());
        for (v, e) in &w.letters {
            m = mat_mul(&m, &self.twist_matrix(v, *e)?);
        }
        Ok(m)
    }

    pub fn apply_word(&self, w: &TwistWord, x: &[i64]) -> Result<Vec<i64>> {
        let m = self.word_matrix(w)?;
        Ok(m.iter()
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// `Mᵀ χ M = χ`.
    pub fn preserves_form(&self, m: &IntMatrix) -> bool {
        mat_mul(&mat_mul(&transpose(m), &self.chi), m) == self.chi
    }

    pub fn braid_relation_check(&self, i: &str, j: &str) -> Result<BraidReport> {
        if i == j {
            return Err(Error::invalid("braid check needs two distinct vertices"));
        }
        let (a, b) = (self.index(i)?, self.index(j)?);
        let arrows = self.chi[a][b].unsigned_abs();
        let w = |s: &str| -> Result<IntMatrix> { self.word_matrix(&s.parse()?) };
        let (iplus, jplus) = (format!("{i}+"), format!("{j}+"));
        let braid_holds =
            w(&format!("{iplus},{jplus},{iplus}"))? == w(&format!("{jplus},{iplus},{jplus}"))?;
        let commute_holds = w(&format!("{iplus},{jplus}"))? == w(&format!("{jplus},{iplus}"))?;
        let expected = match arrows {
            0 => Some(BraidRelation::Commute),
            1 => Some(BraidRelation::Braid),
            _ => None,
        };
        Ok(BraidReport {
            i: i.to_string(),
            j: j.to_string(),
            arrows,
            expected,
            braid_holds,
            commute_holds,
        })
    }

    /// All reduced words of length at most `max_len`, with their matrices.
    pub fn enumerate_words(&self, max_len: usize) -> Result<Vec<(TwistWord, IntMatrix)>> {
        let letters: Vec<(String, i8)> = self
            .vertices
            .iter()
            .flat_map(|v| [(v.clone(), 1), (v.clone(), -1)])
            .collect();
        let mut out = vec![(TwistWord::default(), identity(self.rank()))];
        let mut frontier = out.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for (w, m) in &frontier {
                for (v, e) in &letters {
                    if w.letters.last() == Some(&(v.clone(), -e)) {
                        continue;
                    }
                    let mut w2 = w.clone();
                    w2.letters.push((v.clone(), *e));
                    let m2 = mat_mul(m, &self.twist_matrix(v, *e)?);
                    next.push((w2, m2));
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BraidRelation {
    Braid,
    Commute,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BraidReport {
    pub i: String,
    pub j: String,
    /// `a_ij + a_ji`.
    pub arrows: u64,
    pub expected: Option<BraidRelation>,
    pub braid_holds: bool,
    pub commute_holds: bool,
}

impl BraidReport {
    /// The relation predicted by the arrow count holds; pairs with two or
    /// more arrows have no prediction and always pass.
    pub fn passed(&self) -> bool {
        match self.expected {
            Some(BraidRelation::Braid) => self.braid_holds,
            Some(BraidRelation::Commute) => self.commute_holds,
            None => true,
        }
    }
}

/// A word in the twists, written `"1+,2-,1+"`; the sign is the last
/// character of each letter so vertex names may contain `-`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwistWord {
    pub letters: Vec<(String, i8)>,
}

impl TwistWord {
    pub fn inverse(&self) -> Self {
        TwistWord {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|(v, e)| (v.clone(), -e))
                .collect(),
        }
    }

    /// Cancels adjacent inverse pairs.
    pub fn reduced(&self) -> Self {
        let mut out: Vec<(String, i8)> = Vec::new();
        for (v, e) in &self.letters {
            if out.last() == Some(&(v.clone(), -e)) {
                out.pop();
            } else {
                out.push((v.clone(), *e));
            }
        }
        TwistWord { letters: out }
    }

    pub fn then(&self, other: &TwistWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        TwistWord { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl FromStr for TwistWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (v, e) = match tok.chars().last() {
                Some('+') => (&tok[..tok.len() - 1], 1),
                Some('-') => (&tok[..tok.len() - 1], -1),
                _ => return Err(Error::invalid(format!("letter `{tok}` must end in + or -"))),
            };
            if v.is_empty() {
                return Err(Error::invalid(format!("letter `{tok}` has no vertex")));
            }
            letters.push((v.to_string(), e));
        }
        Ok(TwistWord { letters })
    }
}

impl fmt::Display for TwistWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|(v, e)| format!("{v}{}", if *e > 0 { '+' } else { '-' }))
            .collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Phase tolerance used when normalizing simple phases.
pub const PHASE_TOL: f64 = 1e-12;

/// `Z(E) = m(E) exp(iπφ(E))`, given on the simples.
#[derive(Clone, Debug, PartialEq)]
pub struct CentralCharge {
    values: BTreeMap<String, Complex64>,
}

impl CentralCharge {
    /// Every simple must have nonzero charge of phase in `(0,1]`.
    pub fn new(values: BTreeMap<String, Complex64>) -> Result<Self> {
        for (v, z) in &values {
            let ph = phase(*z);
            if z.norm() == 0.0 || ph <= PHASE_TOL || ph > 1.0 + PHASE_TOL {
                return Err(Error::invalid(format!(
                    "charge of S_{v} has phase {ph} outside (0,1]"
                )));
            }
        }
        Ok(CentralCharge { values })
    }

    /// No phase normalization, for charges produced by twisting.
    pub fn unchecked(values: BTreeMap<String, Complex64>) -> Self {
        CentralCharge { values }
    }

    pub fn values(&self) -> &BTreeMap<String, Complex64> {
        &self.values
    }

    pub fn of_class(&self, lattice: &K0Lattice, x: &[i64]) -> Complex64 {
        lattice
            .vertices()
            .iter()
            .zip(x)
            .map(|(v, &c)| self.values.get(v).copied().unwrap_or_default() * c as f64)
            .sum()
    }

    pub fn mass(&self, lattice: &K0Lattice, x: &[i64]) -> f64 {
        self.of_class(lattice, x).norm()
    }

    pub fn phase(&self, lattice: &K0Lattice, x: &[i64]) -> f64 {
        phase(self.of_class(lattice, x))
    }

    /// Reads `{vertex: [re, im]}`.
    pub fn from_json(s: &str) -> Result<Self> {
        let raw: BTreeMap<String, [f64; 2]> = serde_json::from_str(s)?;
        Self::new(
            raw.into_iter()
                .map(|(k, [re, im])| (k, Complex64::new(re, im)))
                .collect(),
        )
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let raw: BTreeMap<&String, [f64; 2]> =
            self.values.iter().map(|(k, z)| (k, [z.re, z.im])).collect();
        serde_json::to_value(raw).expect("charge serializes")
    }
}

/// `arg(z)/π` in `(-1, 1]`.
pub fn phase(z: Complex64) -> f64 {
    z.arg() / std::f64::consts::PI
}

/// `Z' = Z ∘ M⁻¹` with `M` the word matrix; `M⁻¹` is the matrix of the
/// inverse word.
pub fn twist_charge(
    lattice: &K0Lattice,
    w: &TwistWord,
    z: &CentralCharge,
) -> Result<CentralCharge> {
    let inv = lattice.word_matrix(&w.inverse())?;
    let cols = transpose(&inv);
    let values = lattice
        .vertices()
        .iter()
        .zip(&cols)
        .map(|(v, col)| (v.clone(), z.of_class(lattice, col)))
        .collect();
    Ok(CentralCharge::unchecked(values))
}

/// Distinct matrices among a set of words.
pub fn distinct_matrices(words: &[(TwistWord, IntMatrix)]) -> usize {
    words
        .iter()
        .map(|(_, m)| m.clone())
        .collect::<BTreeSet<_>>()
        .len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn lattice(name: &str) -> K0Lattice {
        K0Lattice::from_quiver(&fixtures::qp(name).unwrap().quiver)
    }

    #[test]
    fn three_cycle_twist() {
        let l = lattice("three-cycle");
        assert_eq!(
            l.twist_class("1", 1, &l.simple("2").unwrap()).unwrap(),
            vec![1, 1, 0]
        );
        assert_eq!(
            l.twist_class("1", 1, &l.simple("1").unwrap()).unwrap(),
            vec![1, 0, 0]
        );
    }

    #[test]
    fn kronecker_twist() {
        let l = lattice("kronecker");
        assert_eq!(
            l.twist_class("1", 1, &l.simple("2").unwrap()).unwrap(),
            vec![2, 1]
        );
    }

    #[test]
    fn a2_braid_and_matrices() {
        let l = lattice("a2");
        assert!(l.braid_relation_check("1", "2").unwrap().passed());
        assert_eq!(
            l.twist_matrix("1", 1).unwrap(),
            vec![vec![1, 1], vec![0, 1]]
        );
        let w: TwistWord = "1+,2-".parse().unwrap();
        let m = l.word_matrix(&w.then(&w.inverse())).unwrap();
        assert_eq!(m, identity(2));
    }

    #[test]
    fn kronecker_braid_reported() {
        let r = lattice("kronecker").braid_relation_check("1", "2").unwrap();
        assert_eq!(r.expected, None);
        assert!(!r.braid_holds);
    }

    #[test]
    fn word_parse_display() {
        let w: TwistWord = "d0-2+, d0-3-".parse().unwrap();
        assert_eq!(w.letters, vec![("d0-2".into(), 1), ("d0-3".into(), -1)]);
        assert_eq!(w.to_string(), "d0-2+,d0-3-");
        assert!("1".parse::<TwistWord>().is_err());
        assert_eq!(
            "1+,1-,2+"
                .parse::<TwistWord>()
                .unwrap()
                .reduced()
                .to_string(),
            "2+"
        );
    }

    #[test]
    fn a2_charge() {
        let l = lattice("a2");
        let z = CentralCharge::new(
            [
                ("1".to_string(), Complex64::i()),
                ("2".to_string(), Complex64::i()),
            ]
            .into(),
        )
        .unwrap();
        let z2 = twist_charge(&l, &"1+".parse().unwrap(), &z).unwrap();
        assert_eq!(z2.values()["2"], Complex64::new(0.0, 0.0));
        assert_eq!(z2.values()["1"], Complex64::i());
        let back = twist_charge(&l, &"1+,1-".parse().unwrap(), &z).unwrap();
        assert_eq!(back.values(), z.values());
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&vec![vec![2, 1], vec![1, 1]]), 1);
        assert_eq!(determinant(&vec![vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(determinant(&vec![vec![1, 2], vec![2, 4]]), 0);
    }
}
