//! Gradings induced by commuting families of semisimple automorphisms.

mod group;
mod spec_file;
mod table1;

pub use group::{grading_group, support_group};
pub use spec_file::{parse_spec_file, parse_spec_value};
pub use table1::{
    family_quasitorus, nontorality_witnesses, q_family, qj_family, run_table1_row, table1_row, table1_suite, Table1Result, Table1Row, NontoralityWitness,
    TABLE1,
};

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use serde_json::{json, Value};

use crate::autgroup::{commute_check, order_of, scalar_json, Automorphism, Order, ORDER_CAP};
use crate::error::{Error, Result};
use crate::exact::{field, AbelianInvariants, CycloScalar, ExactMatrix, SpanReader, Vector};
use crate::liealg::AlgebraData;

#[derive(Clone, Debug, Default)]
pub struct QuasitorusSpec {
    pub name: Option<String>,
    pub finite_gens: Vec<Automorphism>,
    pub continuous_gens: Vec<Automorphism>,
}

impl QuasitorusSpec {
    /// Split a family into finite-order matrices and diagonal one-parameter families.
    pub fn from_automorphisms(name: Option<String>, family: Vec<Automorphism>) -> Result<Self> {
        let mut spec = QuasitorusSpec { name, ..Default::default() };
        for a in family {
            match a {
                Automorphism::Matrix { .. } => spec.finite_gens.push(a),
                Automorphism::DiagonalMonomial { .. } => spec.continuous_gens.push(a),
            }
        }
        Ok(spec)
    }

    fn all(&self) -> Vec<Automorphism> {
        self.finite_gens.iter().chain(&self.continuous_gens).cloned().collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Label {
    /// Eigenvalue exponents k with eigenvalue ζ_{nᵢ}^k, reduced mod nᵢ.
    pub finite: Vec<i64>,
    /// Integer weights of the one-parameter families.
    pub weights: Vec<i64>,
}

impl Label {
    pub fn is_identity(&self) -> bool {
        self.finite.iter().chain(&self.weights).all(|&x| x == 0)
    }

    fn add(&self, other: &Label, moduli: &[u32]) -> Label {
        Label {
            finite: self
                .finite
                .iter()
                .zip(&other.finite)
                .zip(moduli)
                .map(|((a, b), &n)| (a + b).rem_euclid(n as i64))
                .collect(),
            weights: self.weights.iter().zip(&other.weights).map(|(a, b)| a + b).collect(),
        }
    }

    /// The label as an integer vector in Z^{k+r}.
    pub fn flat(&self) -> Vec<i64> {
        self.finite.iter().chain(&self.weights).copied().collect()
    }
}

#[derive(Clone, Debug)]
pub struct Component {
    pub label: Label,
    pub basis: Vec<Vector>,
}

#[derive(Clone, Debug)]
pub struct Grading {
    pub name: Option<String>,
    pub dim: usize,
    /// nᵢ for each finite generator.
    pub moduli: Vec<u32>,
    /// Number of Z factors (formal parameters).
    pub params: usize,
    /// Sorted by label.
    pub components: Vec<Component>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradingInvariants {
    #[serde(rename = "type")]
    pub type_tuple: Vec<usize>,
    pub group: AbelianInvariants,
    pub dim_identity: usize,
}

impl std::fmt::Display for GradingInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let t: Vec<String> = self.type_tuple.iter().map(usize::to_string).collect();
        write!(f, "group {}, type ({}), dim L_e {}", self.group, t.join(","), self.dim_identity)
    }
}

fn zeta(n: u32) -> Result<CycloScalar> {
    CycloScalar::root_of_unity(n)
}

/// Split `block` (a basis of an M-invariant subspace) into eigenspaces of M.
fn refine_block(m: &ExactMatrix, n: u32, block: &[Vector]) -> Result<Vec<(i64, Vec<Vector>)>> {
    let reader = SpanReader::new(block)?;
    let k = block.len();
    let mut cols = Vec::with_capacity(k);
    for b in block {
        let image = m.mul_vec(b);
        cols.push(
            reader
                .coordinates(&image)
                .ok_or_else(|| Error::Grading("eigenspace refinement left a non-invariant subspace".into()))?,
        );
    }
    let r = ExactMatrix::from_columns(&cols);
    let z = zeta(n)?;
    let mut out = Vec::new();
    let mut total = 0;
    let mut eig = CycloScalar::one();
    for e in 0..n as i64 {
        let kernel = r.shift(&eig).kernel();
        if !kernel.is_empty() {
            total += kernel.len();
            let vecs = kernel
                .iter()
                .map(|c| {
                    let mut v = vec![CycloScalar::zero(); block[0].len()];
                    for (cj, bj) in c.iter().zip(block) {
                        if cj.is_zero() {
                            continue;
                        }
                        for (x, y) in v.iter_mut().zip(bj) {
                            if !y.is_zero() {
                                *x += &(cj * y);
                            }
                        }
                    }
                    v
                })
                .collect();
            out.push((e, vecs));
        }
        eig = &eig * &z;
    }
    if total != k {
        return Err(Error::Grading(format!("generator is not diagonalizable: eigenspaces span {total} of {k}")));
    }
    Ok(out)
}

/// Joint eigenspace decomposition of `alg` under the quasitorus.
pub fn compute_grading(alg: &AlgebraData, q: &QuasitorusSpec) -> Result<Grading> {
    let n = alg.dim();
    let pairs = commute_check(&q.all());
    if !pairs.is_empty() {
        return Err(Error::NonCommuting { pairs });
    }
    let conductor = field().conductor();
    let mut moduli = Vec::new();
    for g in &q.finite_gens {
        if g.dim() != n {
            return Err(Error::Dimension(format!("generator of size {} on algebra of dimension {n}", g.dim())));
        }
        match order_of(g, ORDER_CAP) {
            Order::Finite(k) if conductor % k == 0 => moduli.push(k),
            Order::Finite(k) => return Err(Error::ConductorInsufficient { conductor, required: k }),
            Order::Infinite => return Err(Error::Grading("finite generator has no finite order".into())),
        }
    }
    // continuous generators: the basis is already a weight basis
    let mut blocks: BTreeMap<Vec<i64>, Vec<usize>> = BTreeMap::new();
    for k in 0..n {
        let mut w = Vec::new();
        for c in &q.continuous_gens {
            let Automorphism::DiagonalMonomial { exponents } = c else { unreachable!() };
            if exponents.len() != n {
                return Err(Error::Dimension("continuous generator has wrong size".into()));
            }
            w.extend_from_slice(&exponents[k]);
        }
        blocks.entry(w).or_default().push(k);
    }
    let params = q.continuous_gens.iter().map(Automorphism::parameters).sum();
    let mut components = Vec::new();
    for (weights, slots) in blocks {
        let mut current: Vec<(Vec<i64>, Vec<Vector>)> = vec![(Vec::new(), slots.iter().map(|&s| alg.unit_vector(s)).collect())];
        for (g, &order) in q.finite_gens.iter().zip(&moduli) {
            let m = g.as_matrix().unwrap();
            let mut next = Vec::new();
            for (label, block) in current {
                for (e, sub) in refine_block(m, order, &block)? {
                    let mut l = label.clone();
                    l.push(e);
                    next.push((l, sub));
                }
            }
            current = next;
        }
        for (finite, basis) in current {
            components.push(Component { label: Label { finite, weights: weights.clone() }, basis });
        }
    }
    components.sort_by(|a, b| a.label.cmp(&b.label));
    let grading = Grading { name: q.name.clone(), dim: n, moduli, params, components };
    grading.verify(alg)?;
    Ok(grading)
}

impl Grading {
    /// Dimension count, independence and multiplicativity.
    pub fn verify(&self, alg: &AlgebraData) -> Result<()> {
        let total: usize = self.components.iter().map(|c| c.basis.len()).sum();
        if total != self.dim {
            return Err(Error::Grading(format!("component dimensions sum to {total}, not {}", self.dim)));
        }
        let all: Vec<Vector> = self.components.iter().flat_map(|c| c.basis.iter().cloned()).collect();
        if crate::exact::span_rank(&all) != self.dim {
            return Err(Error::Grading("components are not independent".into()));
        }
        if let Some((a, b)) = self.multiplicativity_violation(alg)? {
            return Err(Error::Grading(format!("[L_g, L_h] not in L_gh for components {a}, {b}")));
        }
        Ok(())
    }

    /// First component pair (i, j) with [L_i, L_j] outside the component of the summed label.
    pub fn multiplicativity_violation(&self, alg: &AlgebraData) -> Result<Option<(usize, usize)>> {
        let index: HashMap<&Label, usize> = self.components.iter().enumerate().map(|(i, c)| (&c.label, i)).collect();
        let readers: Vec<SpanReader> =
            self.components.iter().map(|c| SpanReader::new(&c.basis)).collect::<Result<_>>()?;
        for (i, a) in self.components.iter().enumerate() {
            for (j, b) in self.components.iter().enumerate() {
                let target = index.get(&a.label.add(&b.label, &self.moduli)).copied();
                for x in &a.basis {
                    for y in &b.basis {
                        let p = alg.product(x, y);
                        let ok = match target {
                            Some(t) => readers[t].contains(&p),
                            None => p.iter().all(CycloScalar::is_zero),
                        };
                        if !ok {
                            return Ok(Some((i, j)));
                        }
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn support(&self) -> Vec<&Label> {
        self.components.iter().map(|c| &c.label).collect()
    }

    pub fn invariants(&self) -> GradingInvariants {
        GradingInvariants {
            type_tuple: grading_type(self),
            group: grading_group(self),
            dim_identity: identity_component_dim(self),
        }
    }

    pub fn to_json(&self) -> Value {
        let inv = self.invariants();
        json!({
            "name": self.name,
            "group": { "rank": inv.group.rank, "torsion": inv.group.torsion },
            "type": inv.type_tuple,
            "dim_identity": inv.dim_identity,
            "moduli": self.moduli,
            "params": self.params,
            "components": self.components.iter().map(|c| json!({
                "label": { "finite": c.label.finite, "weights": c.label.weights },
                "dim": c.basis.len(),
                "basis": c.basis.iter().map(|v| v.iter().map(scalar_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// hᵢ = number of components of dimension i, trailing zeros trimmed.
pub fn grading_type(g: &Grading) -> Vec<usize> {
    let max = g.components.iter().map(|c| c.basis.len()).max().unwrap_or(0);
    let mut t = vec![0; max];
    for c in &g.components {
        t[c.basis.len() - 1] += 1;
    }
    t
}

pub fn identity_component_dim(g: &Grading) -> usize {
    g.components.iter().find(|c| c.label.is_identity()).map_or(0, |c| c.basis.len())
}

/// Dimension of the subalgebra fixed by every member of the family.
pub fn fixed_subalgebra_dim(alg: &AlgebraData, family: &[Automorphism]) -> usize {
    let n = alg.dim();
    let mut rows: Vec<Vector> = Vec::new();
    for a in family {
        match a {
            Automorphism::Matrix { matrix, .. } => {
                let d = matrix.shift(&CycloScalar::one());
                rows.extend((0..n).map(|i| d.row(i).to_vec()));
            }
            Automorphism::DiagonalMonomial { exponents } => {
                for (k, e) in exponents.iter().enumerate() {
                    if e.iter().any(|&x| x != 0) {
                        rows.push(alg.unit_vector(k));
                    }
                }
            }
        }
    }
    if rows.is_empty() {
        return n;
    }
    n - ExactMatrix::from_rows(rows).rank()
}
