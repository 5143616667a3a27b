//! The action of isometries on the maximal torus t_{α,β,γ,δ}.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::{isometry_group, IsoMatrix, IDENTITY};
use crate::error::{Error, Result};
use crate::exact::{hermite_normal_form, smith_normal_form, CycloScalar, IntMatrix};

/// σ·t with t'ᵢ = ∏ⱼ tⱼ^{σᵢⱼ}.
pub fn act_on_torus(sigma: &IsoMatrix, t: &[CycloScalar]) -> Result<Vec<CycloScalar>> {
    if t.len() != 4 {
        return Err(Error::Dimension(format!("torus point has {} coordinates", t.len())));
    }
    if t.iter().any(CycloScalar::is_zero) {
        return Err(Error::ZeroCoordinate);
    }
    let mut out = Vec::with_capacity(4);
    for row in sigma {
        let mut acc = CycloScalar::one();
        for (tj, &e) in t.iter().zip(row) {
            if e != 0 {
                acc = &acc * &tj.pow(e as i64)?;
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// The same substitution on formal monomials: row i of `exps` holds the exponents of
/// tᵢ in the parameters, and the result is σ·exps.
pub fn act_on_monomials(sigma: &IsoMatrix, exps: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    if exps.len() != 4 {
        return Err(Error::Dimension(format!("torus monomial has {} rows", exps.len())));
    }
    let k = exps[0].len();
    let mut out = vec![vec![0i64; k]; 4];
    for i in 0..4 {
        for j in 0..4 {
            for p in 0..k {
                out[i][p] += sigma[i][j] as i64 * exps[j][p];
            }
        }
    }
    Ok(out)
}

/// tⱼ = ζ_order^{exponents[j]}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionGenerator {
    pub order: u64,
    pub exponents: [i64; 4],
}

impl TorsionGenerator {
    pub fn point(&self) -> Result<Vec<CycloScalar>> {
        let z = CycloScalar::root_of_unity(self.order as u32)?;
        self.exponents.iter().map(|&e| z.pow(e)).collect()
    }
}

/// {t ∈ T : σ·t = t for all given σ} ≅ (K^×)^rank × ∏ Z_{torsion}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedTorus {
    pub rank: usize,
    pub torsion: Vec<u64>,
    /// Free directions: s ↦ (s^{v₁}, …, s^{v₄}) for each v, in Hermite normal form.
    pub kernel_basis: Vec<[i64; 4]>,
    pub torsion_generators: Vec<TorsionGenerator>,
}

fn root_symbol(order: u64, e: i64) -> String {
    let e = e.rem_euclid(order as i64);
    match (order, e) {
        (_, 0) => "1".into(),
        (2, 1) => "-1".into(),
        (3, 1) => "ω".into(),
        (3, 2) => "ω²".into(),
        (4, 1) => "i".into(),
        (4, 3) => "-i".into(),
        (d, e) => format!("ζ{d}^{e}"),
    }
}

const PARAMS: [&str; 4] = ["x", "y", "z", "u"];

impl FixedTorus {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    /// Isomorphism type such as "K^×2 x Z2", or "1".
    pub fn type_string(&self) -> String {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("K^×".to_string()),
            r => parts.push(format!("K^×{r}")),
        }
        let inv = crate::exact::AbelianInvariants::new(0, self.torsion.clone());
        if !inv.is_trivial() {
            parts.push(inv.to_string());
        }
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join(" x ")
        }
    }

    /// Readable parametrization, e.g. "{t(x,y,z,x^-2y^-2z^-1)}" or "<t(-1,1,1,1)>".
    pub fn parametrization(&self) -> String {
        let mut pieces = Vec::new();
        if self.rank > 0 {
            let coords: Vec<String> = (0..4)
                .map(|j| {
                    let mut s = String::new();
                    for (k, v) in self.kernel_basis.iter().enumerate() {
                        match v[j] {
                            0 => {}
                            1 => s.push_str(PARAMS[k]),
                            e => s.push_str(&format!("{}^{}", PARAMS[k], e)),
                        }
                    }
                    if s.is_empty() {
                        "1".into()
                    } else {
                        s
                    }
                })
                .collect();
            pieces.push(format!("{{t({})}}", coords.join(",")));
        }
        for g in &self.torsion_generators {
            let coords: Vec<String> = g.exponents.iter().map(|&e| root_symbol(g.order, e)).collect();
            pieces.push(format!("<t({})>", coords.join(",")));
        }
        if pieces.is_empty() {
            "{t(1,1,1,1)}".into()
        } else {
            pieces.join(" · ")
        }
    }
}

fn stacked_relations(sigmas: &[IsoMatrix]) -> Vec<Vec<i64>> {
    let mut rows = Vec::new();
    for s in sigmas {
        for i in 0..4 {
            rows.push((0..4).map(|j| (s[i][j] - IDENTITY[i][j]) as i64).collect());
        }
    }
    rows
}

fn to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("small integer")
}

/// Joint fixed points of the given isometries, via the Smith form of the stacked B − I.
pub fn fixed_subtorus(sigmas: &[IsoMatrix]) -> FixedTorus {
    let rows = stacked_relations(sigmas);
    if rows.is_empty() {
        return FixedTorus {
            rank: 4,
            torsion: vec![],
            kernel_basis: (0..4).map(|i| std::array::from_fn(|j| (i == j) as i64)).collect(),
            torsion_generators: vec![],
        };
    }
    let m = IntMatrix::from_i64_rows(&rows);
    let snf = smith_normal_form(&m);
    let r = snf.rank();
    let mut torsion = Vec::new();
    let mut torsion_generators = Vec::new();
    for (i, d) in snf.d.iter().enumerate() {
        if d.is_zero() || *d == BigInt::from(1) {
            continue;
        }
        let order = d.to_u64().expect("small divisor");
        let exponents = std::array::from_fn(|j| to_i64(snf.v.get(j, i)).rem_euclid(order as i64));
        torsion.push(order);
        torsion_generators.push(TorsionGenerator { order, exponents });
    }
    let free: Vec<Vec<BigInt>> = (r..4).map(|j| snf.v.column(j)).collect();
    let kernel_basis: Vec<[i64; 4]> = hermite_normal_form(&free)
        .iter()
        .map(|v| std::array::from_fn(|j| to_i64(&v[j])))
        .collect();
    // certify: free directions are annihilated, torsion points are killed mod their order
    for v in &kernel_basis {
        for row in &rows {
            assert_eq!(row.iter().zip(v).map(|(a, b)| a * b).sum::<i64>(), 0);
        }
    }
    for g in &torsion_generators {
        for row in &rows {
            let s: i64 = row.iter().zip(&g.exponents).map(|(a, b)| a * b).sum();
            assert_eq!(s.rem_euclid(g.order as i64), 0);
        }
    }
    FixedTorus { rank: 4 - r, torsion, kernel_basis, torsion_generators }
}

/// T^{(i)} ∩ T^{(j)} for 1-based indices.
pub fn intersect_fixed_subtori(i: usize, j: usize) -> Result<FixedTorus> {
    let g = isometry_group();
    Ok(fixed_subtorus(&[*g.matrix(i)?, *g.matrix(j)?]))
}

/// Indices of all σ fixing every given point.
pub fn joint_stabilizer_indices(points: &[Vec<CycloScalar>]) -> Result<Vec<usize>> {
    let g = isometry_group();
    let n = crate::exact::field().conductor() as i64;
    // roots of unity reduce to integer congruences on exponents
    let exps: Option<Vec<Vec<i64>>> = points
        .iter()
        .map(|p| p.iter().map(|x| x.root_of_unity_exponent().map(i64::from)).collect())
        .collect();
    let mut out = Vec::new();
    for e in g.elements() {
        let fixes = match &exps {
            Some(exps) => exps.iter().all(|k| {
                (0..4).all(|i| {
                    let s: i64 = (0..4).map(|j| e.matrix[i][j] as i64 * k[j]).sum();
                    (s - k[i]).rem_euclid(n) == 0
                })
            }),
            None => {
                let mut all = true;
                for p in points {
                    if act_on_torus(&e.matrix, p)? != *p {
                        all = false;
                        break;
                    }
                }
                all
            }
        };
        if fixes {
            out.push(e.index);
        }
    }
    Ok(out)
}
