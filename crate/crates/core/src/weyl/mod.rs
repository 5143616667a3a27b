//! The isometry group of the D4 root system, its lexicographic enumeration,
//! conjugacy classes, and the induced action on the maximal torus.

mod table2;
mod torus;

pub use table2::{table2_rows, verify_table2, Table2Check, Table2Row, TABLE2};
pub use torus::{
    act_on_monomials, act_on_torus, fixed_subtorus, intersect_fixed_subtori, joint_stabilizer_indices, FixedTorus,
    TorsionGenerator,
};

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::liealg::d4_model;

/// Row i is the image of αᵢ in simple-root coordinates.
pub type IsoMatrix = [[i32; 4]; 4];

pub const IDENTITY: IsoMatrix = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];

/// s₁..s₄ are the simple reflections, s₅ and s₆ diagram symmetries.
pub const GENERATORS: [IsoMatrix; 6] = [
    [[-1, 0, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    [[1, 1, 0, 0], [0, -1, 0, 0], [0, 1, 1, 0], [0, 1, 0, 1]],
    [[1, 0, 0, 0], [0, 1, 1, 0], [0, 0, -1, 0], [0, 0, 0, 1]],
    [[1, 0, 0, 0], [0, 1, 0, 1], [0, 0, 1, 0], [0, 0, 0, -1]],
    [[0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1], [1, 0, 0, 0]],
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
];

pub const ORDER: usize = 1152;
pub const IDENTITY_INDEX: usize = 894;
pub const MINUS_IDENTITY_INDEX: usize = 259;

pub fn mat_mul(a: &IsoMatrix, b: &IsoMatrix) -> IsoMatrix {
    let mut out = [[0; 4]; 4];
    for i in 0..4 {
        for k in 0..4 {
            if a[i][k] != 0 {
                for j in 0..4 {
                    out[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    out
}

pub fn mat_neg(a: &IsoMatrix) -> IsoMatrix {
    a.map(|r| r.map(|x| -x))
}

/// Image of a root (simple-root coordinates, row vector) under σ.
pub fn apply_to_root(sigma: &IsoMatrix, root: &[i32; 4]) -> [i32; 4] {
    let mut out = [0; 4];
    for i in 0..4 {
        for j in 0..4 {
            out[j] += root[i] * sigma[i][j];
        }
    }
    out
}

/// Order of σ, or None past `cap`.
pub fn matrix_order(a: &IsoMatrix, cap: u32) -> Option<u32> {
    let mut p = *a;
    for n in 1..=cap {
        if p == IDENTITY {
            return Some(n);
        }
        p = mat_mul(&p, a);
    }
    None
}

/// All products of `gens`, sorted by row-major first difference.
pub fn closure(gens: &[IsoMatrix]) -> Vec<IsoMatrix> {
    let mut seen: HashSet<IsoMatrix> = HashSet::new();
    let mut queue: VecDeque<IsoMatrix> = VecDeque::new();
    seen.insert(IDENTITY);
    queue.push_back(IDENTITY);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = mat_mul(&x, g);
            if seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    let mut v: Vec<IsoMatrix> = seen.into_iter().collect();
    v.sort();
    v
}

#[derive(Clone, Debug, Serialize)]
pub struct IsometryElement {
    pub index: usize,
    pub matrix: IsoMatrix,
}

#[derive(Clone, Debug)]
pub struct IsometryGroup {
    elements: Vec<IsoMatrix>,
    lookup: HashMap<IsoMatrix, usize>,
    orders: Vec<u32>,
    inverses: Vec<usize>,
}

impl IsometryGroup {
    /// Index-preserving group from a sorted, closed element list.
    fn from_elements(elements: Vec<IsoMatrix>) -> Self {
        let lookup: HashMap<IsoMatrix, usize> = elements.iter().enumerate().map(|(i, m)| (*m, i + 1)).collect();
        let orders = elements.iter().map(|m| matrix_order(m, 64).expect("finite order")).collect();
        let inverses = elements
            .iter()
            .map(|m| {
                let n = matrix_order(m, 64).unwrap();
                let mut p = IDENTITY;
                for _ in 0..n - 1 {
                    p = mat_mul(&p, m);
                }
                lookup[&p]
            })
            .collect();
        IsometryGroup { elements, lookup, orders, inverses }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// σⱼ for the 1-based index j.
    pub fn matrix(&self, j: usize) -> Result<&IsoMatrix> {
        if j == 0 || j > self.elements.len() {
            return Err(Error::IndexOutOfRange(j, self.elements.len()));
        }
        Ok(&self.elements[j - 1])
    }

    pub fn element(&self, j: usize) -> Result<IsometryElement> {
        Ok(IsometryElement { index: j, matrix: *self.matrix(j)? })
    }

    pub fn elements(&self) -> impl Iterator<Item = IsometryElement> + '_ {
        self.elements.iter().enumerate().map(|(i, m)| IsometryElement { index: i + 1, matrix: *m })
    }

    pub fn index_of(&self, m: &IsoMatrix) -> Option<usize> {
        self.lookup.get(m).copied()
    }

    pub fn order_of(&self, j: usize) -> u32 {
        self.orders[j - 1]
    }

    pub fn inverse_index(&self, j: usize) -> usize {
        self.inverses[j - 1]
    }

    /// Index of the matrix product σᵢσⱼ.
    pub fn product_index(&self, i: usize, j: usize) -> usize {
        self.lookup[&mat_mul(&self.elements[i - 1], &self.elements[j - 1])]
    }

    /// Group axioms and root-permutation property.
    pub fn check_closed(&self) -> Result<()> {
        let roots: HashSet<[i32; 4]> = d4_model().roots.roots().collect();
        for a in &self.elements {
            for b in &self.elements {
                if !self.lookup.contains_key(&mat_mul(a, b)) {
                    return Err(Error::Anchor("isometry group is not closed under products".into()));
                }
            }
            let image: HashSet<[i32; 4]> = roots.iter().map(|r| apply_to_root(a, r)).collect();
            if image != roots {
                return Err(Error::Anchor(format!("{a:?} does not permute the roots")));
            }
        }
        Ok(())
    }

    /// Conjugacy classes, each sorted, listed by smallest index.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let gens: Vec<(IsoMatrix, IsoMatrix)> = GENERATORS
            .iter()
            .map(|g| {
                let gi = self.elements[self.inverses[self.lookup[g] - 1] - 1];
                (*g, gi)
            })
            .collect();
        let mut class_of = vec![usize::MAX; self.elements.len()];
        let mut classes = Vec::new();
        for start in 0..self.elements.len() {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![start + 1];
            class_of[start] = id;
            let mut queue = VecDeque::from([self.elements[start]]);
            while let Some(x) = queue.pop_front() {
                for (g, gi) in &gens {
                    let y = mat_mul(&mat_mul(gi, &x), g);
                    let k = self.lookup[&y] - 1;
                    if class_of[k] == usize::MAX {
                        class_of[k] = id;
                        members.push(k + 1);
                        queue.push_back(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }
}

/// The full group with anchors verified: 1152 elements, σ₈₉₄ = I, σ₂₅₉ = −I.
pub fn generate_isometry_group() -> Result<IsometryGroup> {
    let elements = closure(&GENERATORS);
    if elements.len() != ORDER {
        return Err(Error::Anchor(format!("group order {} instead of {ORDER}", elements.len())));
    }
    let g = IsometryGroup::from_elements(elements);
    if g.matrix(IDENTITY_INDEX)? != &IDENTITY {
        return Err(Error::Anchor(format!("sigma_{IDENTITY_INDEX} is not the identity")));
    }
    if g.matrix(MINUS_IDENTITY_INDEX)? != &mat_neg(&IDENTITY) {
        return Err(Error::Anchor(format!("sigma_{MINUS_IDENTITY_INDEX} is not minus the identity")));
    }
    Ok(g)
}

/// Shared copy of [`generate_isometry_group`]; panics if an anchor fails.
pub fn isometry_group() -> &'static IsometryGroup {
    static G: OnceLock<IsometryGroup> = OnceLock::new();
    G.get_or_init(|| generate_isometry_group().expect("isometry group anchors"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusEntry {
    pub order: u32,
    pub count: usize,
    pub orbits: usize,
    /// Smallest index in each orbit.
    pub representatives: Vec<usize>,
}

/// Element and orbit counts per element order.
pub fn conjugacy_census(g: &IsometryGroup) -> BTreeMap<u32, CensusEntry> {
    let mut out: BTreeMap<u32, CensusEntry> = BTreeMap::new();
    for class in g.conjugacy_classes() {
        let order = g.order_of(class[0]);
        let e = out.entry(order).or_insert(CensusEntry { order, count: 0, orbits: 0, representatives: vec![] });
        e.count += class.len();
        e.orbits += 1;
        e.representatives.push(class[0]);
    }
    out
}

/// Expected census (order, elements, orbits).
pub const CENSUS: [(u32, usize, usize); 7] =
    [(1, 1, 1), (2, 139, 7), (3, 80, 3), (4, 228, 5), (6, 464, 7), (8, 144, 1), (12, 96, 1)];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Coset {
    V0,
    V1,
    V2,
    V3,
    V4,
    V5,
}

impl Coset {
    pub const ALL: [Coset; 6] = [Coset::V0, Coset::V1, Coset::V2, Coset::V3, Coset::V4, Coset::V5];

    pub fn label(self) -> &'static str {
        ["V0", "V1", "V2", "V3", "V4", "V5"][self as usize]
    }
}

struct CosetData {
    weyl: HashSet<IsoMatrix>,
    /// rₖ⁻¹ for the coset representatives I, σ₃, σ₃σ₄, σ₃σ₄², σ₄, σ₄².
    inverse_reps: Vec<IsoMatrix>,
}

fn coset_data() -> &'static CosetData {
    static D: OnceLock<CosetData> = OnceLock::new();
    D.get_or_init(|| {
        let g = isometry_group();
        let weyl: HashSet<IsoMatrix> = closure(&GENERATORS[..4]).into_iter().collect();
        let s3 = *g.matrix(3).unwrap();
        let s4 = *g.matrix(4).unwrap();
        let s44 = mat_mul(&s4, &s4);
        let reps = [IDENTITY, s3, mat_mul(&s3, &s4), mat_mul(&s3, &s44), s4, s44];
        let inverse_reps = reps
            .iter()
            .map(|r| *g.matrix(g.inverse_index(g.index_of(r).unwrap())).unwrap())
            .collect();
        CosetData { weyl, inverse_reps }
    })
}

/// The Weyl group ⟨s₁..s₄⟩ as a sorted list.
pub fn weyl_subgroup() -> Vec<IsoMatrix> {
    closure(&GENERATORS[..4])
}

/// The coset Wr containing σ, for the six representatives r listed in [`Coset`].
pub fn coset_class(sigma: &IsoMatrix) -> Coset {
    let d = coset_data();
    for (k, rinv) in d.inverse_reps.iter().enumerate() {
        if d.weyl.contains(&mat_mul(sigma, rinv)) {
            return Coset::ALL[k];
        }
    }
    unreachable!("the six cosets cover the group")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn anchors_and_order() {
        let g = isometry_group();
        assert_eq!(g.len(), 1152);
        assert_eq!(g.order_of(IDENTITY_INDEX), 1);
        assert_eq!(g.inverse_index(MINUS_IDENTITY_INDEX), MINUS_IDENTITY_INDEX);
    }

    #[test]
    fn weyl_subgroup_has_192_elements() {
        assert_eq!(weyl_subgroup().len(), 192);
        assert_eq!(closure(&GENERATORS[..1]).len(), 2);
        assert_eq!(closure(&[]).len(), 1);
    }

    #[test]
    fn closed_and_permutes_roots() {
        isometry_group().check_closed().unwrap();
    }

    #[test]
    fn census_matches() {
        let c = conjugacy_census(isometry_group());
        let got: Vec<(u32, usize, usize)> = c.values().map(|e| (e.order, e.count, e.orbits)).collect();
        assert_eq!(got, CENSUS.to_vec());
    }

    #[test]
    fn cosets_partition_evenly() {
        let g = isometry_group();
        let mut counts = BTreeMap::new();
        for e in g.elements() {
            *counts.entry(coset_class(&e.matrix)).or_insert(0) += 1;
        }
        assert_eq!(counts.len(), 6);
        assert!(counts.values().all(|&c| c == 192));
        assert_eq!(coset_class(g.matrix(96).unwrap()), Coset::V0);
        assert_eq!(coset_class(g.matrix(894).unwrap()), Coset::V0);
    }
}
