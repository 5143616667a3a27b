//! The split Lie algebra of type D4 as 8×8 matrices x with xᵗC = −Cx.

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::Serialize;

use super::AlgebraData;
use crate::error::{Error, Result};
use crate::exact::{CycloScalar, Vector};

pub const DIM: usize = 28;
pub const RANK: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Slot {
    H(usize),
    B(usize, usize),
    C(usize, usize),
    D(usize, usize),
}

// 1-based index pairs in basis order
const POSITIVE: [Slot; 12] = [
    Slot::B(2, 1),
    Slot::B(3, 2),
    Slot::B(4, 3),
    Slot::C(3, 4),
    Slot::B(3, 1),
    Slot::B(4, 1),
    Slot::B(4, 2),
    Slot::C(4, 1),
    Slot::C(4, 2),
    Slot::C(2, 1),
    Slot::C(3, 1),
    Slot::C(2, 3),
];

fn opposite(s: Slot) -> Slot {
    match s {
        Slot::B(i, j) => Slot::B(j, i),
        Slot::C(i, j) => Slot::D(i, j),
        other => other,
    }
}

fn slots() -> Vec<Slot> {
    let mut v: Vec<Slot> = (1..=4).map(Slot::H).collect();
    v.extend(POSITIVE);
    v.extend(POSITIVE.iter().map(|&s| opposite(s)));
    v
}

type Mat8 = [[i64; 8]; 8];

fn e(m: &mut Mat8, r: usize, c: usize, v: i64) {
    m[r - 1][c - 1] += v;
}

fn slot_matrix(s: Slot) -> Mat8 {
    let mut m = [[0i64; 8]; 8];
    match s {
        Slot::H(i) => {
            e(&mut m, i, i, 1);
            e(&mut m, i + 4, i + 4, -1);
        }
        Slot::B(i, j) => {
            e(&mut m, j, i, 1);
            e(&mut m, i + 4, j + 4, -1);
        }
        Slot::C(i, j) => {
            e(&mut m, j, i + 4, 1);
            e(&mut m, i, j + 4, -1);
        }
        Slot::D(i, j) => {
            e(&mut m, i + 4, j, 1);
            e(&mut m, j + 4, i, -1);
        }
    }
    m
}

fn slot_name(s: Slot) -> String {
    match s {
        Slot::H(i) => format!("h{i}"),
        Slot::B(i, j) => format!("b{i}{j}"),
        Slot::C(i, j) => format!("c{i}{j}"),
        Slot::D(i, j) => format!("d{i}{j}"),
    }
}

/// Weight of a slot as a functional on h = Σ wᵢhᵢ.
fn slot_weight(s: Slot) -> [i32; 4] {
    let mut w = [0i32; 4];
    match s {
        Slot::H(_) => {}
        Slot::B(i, j) => {
            w[j - 1] += 1;
            w[i - 1] -= 1;
        }
        Slot::C(i, j) => {
            w[i - 1] += 1;
            w[j - 1] += 1;
        }
        Slot::D(i, j) => {
            w[i - 1] -= 1;
            w[j - 1] -= 1;
        }
    }
    w
}

fn commutator(a: &Mat8, b: &Mat8) -> Mat8 {
    let mut out = [[0i64; 8]; 8];
    for i in 0..8 {
        for k in 0..8 {
            if a[i][k] != 0 {
                for j in 0..8 {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
            if b[i][k] != 0 {
                for j in 0..8 {
                    out[i][j] -= b[i][k] * a[k][j];
                }
            }
        }
    }
    out
}

/// Root data attached to the basis of [`build_d4_split`].
#[derive(Clone, Debug, Serialize)]
pub struct RootDatum {
    /// αᵢ as coefficient vectors on (w₁..w₄), where h = Σ wᵢhᵢ.
    pub simple_roots: [[i32; 4]; 4],
    /// Root of each slot in simple-root coordinates; `None` on the Cartan slots.
    pub root_of_basis: Vec<Option<[i32; 4]>>,
    pub cartan_matrix: [[i32; 4]; 4],
    #[serde(skip)]
    slot_of_root: HashMap<[i32; 4], usize>,
}

impl RootDatum {
    pub fn slot_of(&self, root: &[i32; 4]) -> Option<usize> {
        self.slot_of_root.get(root).copied()
    }

    pub fn roots(&self) -> impl Iterator<Item = [i32; 4]> + '_ {
        self.root_of_basis.iter().flatten().copied()
    }

    pub fn height(root: &[i32; 4]) -> i32 {
        root.iter().sum()
    }

    pub fn is_positive(root: &[i32; 4]) -> bool {
        root.iter().all(|&c| c >= 0) && root.iter().any(|&c| c > 0)
    }

    /// Slot holding v_{αᵢ} (i = 0..3).
    pub fn simple_slot(&self, i: usize) -> usize {
        let mut r = [0; 4];
        r[i] = 1;
        self.slot_of(&r).expect("simple root present")
    }

    /// Slot holding v_{−αᵢ}.
    pub fn negative_simple_slot(&self, i: usize) -> usize {
        let mut r = [0; 4];
        r[i] = -1;
        self.slot_of(&r).expect("negative simple root present")
    }

    /// Value of the root at slot `k` on hⱼ, i.e. the weight coefficient wⱼ.
    pub fn weight(&self, k: usize) -> [i32; 4] {
        let mut w = [0; 4];
        if let Some(c) = self.root_of_basis[k] {
            for (i, ci) in c.iter().enumerate() {
                for j in 0..4 {
                    w[j] += ci * self.simple_roots[i][j];
                }
            }
        }
        w
    }
}

fn express_in_simple_roots(simple: &[[i32; 4]; 4], w: [i32; 4]) -> Option<[i32; 4]> {
    // coefficients of D4 roots lie in {−2..2}
    let range = -2..=2;
    for a in range.clone() {
        for b in range.clone() {
            for c in range.clone() {
                for d in range.clone() {
                    let coef = [a, b, c, d];
                    let mut s = [0i32; 4];
                    for (i, ci) in coef.iter().enumerate() {
                        for j in 0..4 {
                            s[j] += ci * simple[i][j];
                        }
                    }
                    if s == w {
                        return Some(coef);
                    }
                }
            }
        }
    }
    None
}

/// A left-normed bracket word [[[v_{i₁}, v_{i₂}], v_{i₃}], …] evaluating to `scalar`·v at `slot`.
#[derive(Clone, Debug)]
pub struct BracketWord {
    pub slot: usize,
    pub root: [i32; 4],
    /// Simple-root indices (0-based) in bracketing order.
    pub simples: Vec<usize>,
    /// True when the word uses the negative simple vectors.
    pub negative: bool,
    pub scalar: CycloScalar,
}

impl BracketWord {
    /// Evaluate the word with the simple vectors replaced by `letters[i]`.
    pub fn evaluate(&self, alg: &AlgebraData, letters: &[Vector]) -> Vector {
        let mut acc = letters[self.simples[0]].clone();
        for &i in &self.simples[1..] {
            acc = alg.product(&acc, &letters[i]);
        }
        acc
    }
}

fn words_for_sign(alg: &AlgebraData, rd: &RootDatum, negative: bool) -> Result<Vec<BracketWord>> {
    let sign = if negative { -1 } else { 1 };
    let mut roots: Vec<(usize, [i32; 4])> = rd
        .root_of_basis
        .iter()
        .enumerate()
        .filter_map(|(k, r)| r.map(|r| (k, r)))
        .filter(|(_, r)| RootDatum::is_positive(&r.map(|c| c * sign)))
        .collect();
    roots.sort_by_key(|(k, r)| (RootDatum::height(&r.map(|c| c * sign)), *k));
    // words known so far, keyed by slot; simple slots have the trivial word
    let mut known: HashMap<usize, (Vec<usize>, CycloScalar)> = HashMap::new();
    let mut out = Vec::new();
    for (slot, root) in roots {
        let positive = root.map(|c| c * sign);
        let height = RootDatum::height(&positive);
        if height == 1 {
            let i = positive.iter().position(|&c| c == 1).unwrap();
            known.insert(slot, (vec![i], CycloScalar::one()));
            continue;
        }
        let mut found = None;
        let mut preds: Vec<usize> = known.keys().copied().collect();
        preds.sort_unstable();
        'search: for pred in preds {
            let pr = rd.root_of_basis[pred].unwrap().map(|c| c * sign);
            if RootDatum::height(&pr) != height - 1 {
                continue;
            }
            for i in 0..RANK {
                let mut cand = pr;
                cand[i] += 1;
                if cand != positive {
                    continue;
                }
                let letter = if negative { rd.negative_simple_slot(i) } else { rd.simple_slot(i) };
                let coeff = alg
                    .basis_product(pred, letter)
                    .iter()
                    .find(|(k, _)| *k == slot)
                    .map(|(_, c)| c.clone());
                if let Some(c) = coeff {
                    let (w, s) = &known[&pred];
                    let mut word = w.clone();
                    word.push(i);
                    found = Some((word, s * &c));
                    break 'search;
                }
            }
        }
        let (simples, scalar) =
            found.ok_or_else(|| Error::Internal(format!("no bracket decomposition for slot {slot}")))?;
        known.insert(slot, (simples.clone(), scalar.clone()));
        out.push(BracketWord { slot, root, simples, negative, scalar });
    }
    Ok(out)
}

/// Words for the 8 positive non-simple roots, chosen greedily by height.
///
/// Ties between decompositions are broken by the predecessor's slot, then by
/// the simple index.
pub fn bracket_words_for_positive_roots(alg: &AlgebraData, rd: &RootDatum) -> Result<Vec<BracketWord>> {
    words_for_sign(alg, rd, false)
}

/// The same construction for the negative roots, using v_{−αᵢ} as letters.
pub fn bracket_words_for_negative_roots(alg: &AlgebraData, rd: &RootDatum) -> Result<Vec<BracketWord>> {
    words_for_sign(alg, rd, true)
}

/// d4 with its root datum, and the 8×8 matrices of the basis.
pub fn build_d4_split() -> (AlgebraData, RootDatum) {
    let m = D4Model::build();
    (m.algebra, m.roots)
}

#[derive(Clone, Debug)]
pub struct D4Model {
    pub algebra: AlgebraData,
    pub roots: RootDatum,
    pub positive_words: Vec<BracketWord>,
    pub negative_words: Vec<BracketWord>,
    matrices: Vec<Mat8>,
}

impl D4Model {
    fn build() -> Self {
        let slots = slots();
        let matrices: Vec<Mat8> = slots.iter().map(|&s| slot_matrix(s)).collect();
        // each basis matrix has an entry no other basis matrix touches
        let pivots: Vec<(usize, usize, i64)> = matrices
            .iter()
            .enumerate()
            .map(|(k, m)| {
                let mut chosen = None;
                'outer: for r in 0..8 {
                    for c in 0..8 {
                        if m[r][c] != 0 && matrices.iter().enumerate().all(|(l, o)| l == k || o[r][c] == 0) {
                            chosen = Some((r, c, m[r][c]));
                            break 'outer;
                        }
                    }
                }
                chosen.expect("basis matrices have private entries")
            })
            .collect();
        let names = slots.iter().map(|&s| slot_name(s)).collect();
        let algebra = AlgebraData::from_products(names, |i, j| {
            let c = commutator(&matrices[i], &matrices[j]);
            let coords: Vec<i64> = pivots.iter().map(|&(r, cc, v)| c[r][cc] / v).collect();
            let mut recon = [[0i64; 8]; 8];
            for (k, &x) in coords.iter().enumerate() {
                for r in 0..8 {
                    for cc in 0..8 {
                        recon[r][cc] += x * matrices[k][r][cc];
                    }
                }
            }
            assert_eq!(recon, c, "commutator outside the span of the basis");
            coords.into_iter().map(CycloScalar::from_int).collect()
        });
        let simple_roots = [[1, -1, 0, 0], [0, 1, -1, 0], [0, 0, 1, -1], [0, 0, 1, 1]];
        let root_of_basis: Vec<Option<[i32; 4]>> = slots
            .iter()
            .map(|&s| match s {
                Slot::H(_) => None,
                s => Some(express_in_simple_roots(&simple_roots, slot_weight(s)).expect("weight is a root")),
            })
            .collect();
        let slot_of_root = root_of_basis
            .iter()
            .enumerate()
            .filter_map(|(k, r)| r.map(|r| (r, k)))
            .collect();
        let roots = RootDatum {
            simple_roots,
            root_of_basis,
            cartan_matrix: [[2, -1, 0, 0], [-1, 2, -1, -1], [0, -1, 2, 0], [0, -1, 0, 2]],
            slot_of_root,
        };
        let positive_words = bracket_words_for_positive_roots(&algebra, &roots).expect("positive words");
        let negative_words = bracket_words_for_negative_roots(&algebra, &roots).expect("negative words");
        D4Model { algebra, roots, positive_words, negative_words, matrices }
    }

    /// The 8×8 matrix of basis element `k`.
    pub fn basis_matrix(&self, k: usize) -> [[i64; 8]; 8] {
        self.matrices[k]
    }

    pub fn slot_index(&self, name: &str) -> Option<usize> {
        self.algebra.names().iter().position(|n| n == name)
    }

    /// All 16 words, positive first.
    pub fn words(&self) -> impl Iterator<Item = &BracketWord> {
        self.positive_words.iter().chain(&self.negative_words)
    }
}

/// Shared d4 model, built on first use.
pub fn d4_model() -> &'static D4Model {
    static MODEL: OnceLock<D4Model> = OnceLock::new();
    MODEL.get_or_init(D4Model::build)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_matrices_are_skew_for_c() {
        for k in 0..DIM {
            let x = d4_model().basis_matrix(k);
            // xᵗC + Cx = 0 with C swapping the two halves
            for r in 0..8 {
                for c in 0..8 {
                    let xtc = x[(c + 4) % 8][r];
                    let cx = x[(r + 4) % 8][c];
                    assert_eq!(xtc + cx, 0, "slot {k}");
                }
            }
        }
    }

    #[test]
    fn cartan_acts_by_recorded_roots() {
        let m = d4_model();
        for k in 4..DIM {
            let w = m.roots.weight(k);
            for (i, wi) in w.iter().enumerate() {
                let p = m.algebra.basis_product_dense(i, k);
                for (l, c) in p.iter().enumerate() {
                    let expected = if l == k { CycloScalar::from_int(*wi as i64) } else { CycloScalar::zero() };
                    assert_eq!(*c, expected, "[h{}, slot {k}]", i + 1);
                }
            }
        }
    }

    #[test]
    fn display_roots() {
        let m = d4_model();
        assert_eq!(m.roots.root_of_basis[4], Some([1, 0, 0, 0]));
        assert_eq!(m.roots.root_of_basis[7], Some([0, 0, 0, 1]));
        assert_eq!(m.roots.root_of_basis[13], Some([1, 2, 1, 1]));
        assert_eq!(m.roots.root_of_basis[16], Some([-1, 0, 0, 0]));
        let pos = m.roots.roots().filter(RootDatum::is_positive).count();
        assert_eq!(pos, 12);
        assert_eq!(m.roots.roots().count(), 24);
    }

    #[test]
    fn words_cover_non_simple_roots() {
        let m = d4_model();
        assert_eq!(m.positive_words.len(), 8);
        assert_eq!(m.negative_words.len(), 8);
        let first = &m.positive_words[0];
        assert_eq!(m.algebra.names()[first.slot], "b31");
        assert_eq!(first.simples, vec![0, 1]);
        let top = m.positive_words.iter().find(|w| w.root == [1, 2, 1, 1]).unwrap();
        assert_eq!(top.simples.len(), 5);
        for w in m.words() {
            let letters: Vec<Vector> = (0..4)
                .map(|i| {
                    let s = if w.negative { m.roots.negative_simple_slot(i) } else { m.roots.simple_slot(i) };
                    m.algebra.unit_vector(s)
                })
                .collect();
            let v = w.evaluate(&m.algebra, &letters);
            let mut expected = vec![CycloScalar::zero(); DIM];
            expected[w.slot] = w.scalar.clone();
            assert_eq!(v, expected);
        }
    }
}
