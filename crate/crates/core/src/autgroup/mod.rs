//! Automorphisms of d4: the maximal torus, lifts of root-system isometries,
//! and twist repair for commuting families.

mod lift;
mod twist;

pub use lift::{extend_isometry, lift_coefficients, LiftCoefficient};
pub use twist::{repair_commuting_twist, FamilyMember, TwistReport};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::{CycloScalar, ExactMatrix};
use crate::liealg::{d4_model, AlgebraData};

pub const ORDER_CAP: u32 = 48;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Automorphism {
    /// A matrix acting on coordinate columns; `order` is cached when known.
    Matrix { matrix: ExactMatrix, order: Option<u32> },
    /// diag(s^{e_k}) over formal parameters s = (s₁..s_m); row k holds e_k.
    DiagonalMonomial { exponents: Vec<Vec<i64>> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Order {
    Finite(u32),
    Infinite,
}

impl Automorphism {
    pub fn matrix(m: ExactMatrix) -> Self {
        Automorphism::Matrix { matrix: m, order: None }
    }

    pub fn as_matrix(&self) -> Option<&ExactMatrix> {
        match self {
            Automorphism::Matrix { matrix, .. } => Some(matrix),
            Automorphism::DiagonalMonomial { .. } => None,
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Automorphism::Matrix { matrix, .. } => matrix.rows(),
            Automorphism::DiagonalMonomial { exponents } => exponents.len(),
        }
    }

    /// Number of formal parameters (0 for matrices).
    pub fn parameters(&self) -> usize {
        match self {
            Automorphism::Matrix { .. } => 0,
            Automorphism::DiagonalMonomial { exponents } => exponents.first().map_or(0, Vec::len),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Automorphism::Matrix { .. } => "matrix",
            Automorphism::DiagonalMonomial { .. } => "diagonal-monomial",
        }
    }

    /// Composition self ∘ other; both must be matrices.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        match (self.as_matrix(), other.as_matrix()) {
            (Some(a), Some(b)) => Ok(Automorphism::matrix(a.mul(b))),
            _ => Err(Error::NeedsMatrix),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Automorphism::Matrix { matrix, order } => json!({
                "kind": "matrix",
                "rows": matrix.rows(),
                "cols": matrix.cols(),
                "order": order,
                "entries": (0..matrix.rows())
                    .map(|i| matrix.row(i).iter().map(scalar_json).collect::<Vec<_>>())
                    .collect::<Vec<_>>(),
            }),
            Automorphism::DiagonalMonomial { exponents } => json!({
                "kind": "diagonal-monomial",
                "exponents": exponents,
            }),
        }
    }
}

/// Coefficients in the power basis of Q(ζ_N), as reduced fraction strings.
pub fn scalar_json(x: &CycloScalar) -> Value {
    Value::Array(x.coeffs().iter().map(|c| Value::String(c.to_string())).collect())
}

/// Exponent of t_{α,β,γ,δ} on each d4 basis slot, i.e. the root in simple coordinates.
pub fn slot_exponents() -> Vec<[i32; 4]> {
    d4_model().roots.root_of_basis.iter().map(|r| r.unwrap_or([0; 4])).collect()
}

/// t_{α,β,γ,δ} as a diagonal matrix on the basis of d4.
pub fn torus_automorphism(values: &[CycloScalar]) -> Result<Automorphism> {
    if values.len() != 4 {
        return Err(Error::Dimension(format!("torus needs 4 parameters, got {}", values.len())));
    }
    if values.iter().any(CycloScalar::is_zero) {
        return Err(Error::ZeroCoordinate);
    }
    let inverses: Vec<CycloScalar> = values.iter().map(|v| v.inv()).collect::<Result<_>>()?;
    let diag = slot_exponents()
        .iter()
        .map(|e| {
            let mut acc = CycloScalar::one();
            for (i, &c) in e.iter().enumerate() {
                let base = if c >= 0 { &values[i] } else { &inverses[i] };
                for _ in 0..c.unsigned_abs() {
                    acc = &acc * base;
                }
            }
            acc
        })
        .collect();
    Ok(Automorphism::matrix(ExactMatrix::diagonal(diag)))
}

/// A torus subgroup in formal parameters: coordinate i is ∏ₚ sₚ^{exps[i][p]}.
pub fn torus_monomial(exps: &[Vec<i64>]) -> Result<Automorphism> {
    if exps.len() != 4 {
        return Err(Error::Dimension(format!("torus needs 4 coordinates, got {}", exps.len())));
    }
    let m = exps[0].len();
    if exps.iter().any(|r| r.len() != m) {
        return Err(Error::Dimension("ragged torus exponents".into()));
    }
    let exponents = slot_exponents()
        .iter()
        .map(|e| (0..m).map(|p| (0..4).map(|i| e[i] as i64 * exps[i][p]).sum()).collect())
        .collect();
    Ok(Automorphism::DiagonalMonomial { exponents })
}

/// t = ζ_N^{θ}, coordinates given by exponents modulo the conductor.
pub fn torus_from_exponents(theta: &[i64; 4]) -> Automorphism {
    let vals: Vec<CycloScalar> = theta.iter().map(|&k| CycloScalar::zeta_power(k)).collect();
    torus_automorphism(&vals).expect("roots of unity are nonzero")
}

/// If `m` is a torus element with root-of-unity parameters, their exponents mod N.
pub fn torus_exponents_of(m: &ExactMatrix) -> Option<[i64; 4]> {
    if !m.is_diagonal() {
        return None;
    }
    let rd = &d4_model().roots;
    let mut theta = [0i64; 4];
    for (i, t) in theta.iter_mut().enumerate() {
        *t = m.get(rd.simple_slot(i), rd.simple_slot(i)).root_of_unity_exponent()? as i64;
    }
    (torus_from_exponents(&theta).as_matrix() == Some(m)).then_some(theta)
}

/// Least n ≤ cap with aⁿ = I.
pub fn order_of(a: &Automorphism, cap: u32) -> Order {
    match a {
        Automorphism::Matrix { matrix, order } => {
            if let Some(n) = order {
                return Order::Finite(*n);
            }
            let id = ExactMatrix::identity(matrix.rows());
            let mut p = matrix.clone();
            for n in 1..=cap {
                if p == id {
                    return Order::Finite(n);
                }
                p = p.mul(matrix);
            }
            Order::Infinite
        }
        Automorphism::DiagonalMonomial { exponents } => {
            if exponents.iter().flatten().all(|&e| e == 0) {
                Order::Finite(1)
            } else {
                Order::Infinite
            }
        }
    }
}

/// Cache the exact order on a matrix automorphism.
pub fn with_order(a: Automorphism, cap: u32) -> Result<Automorphism> {
    match (order_of(&a, cap), a) {
        (Order::Finite(n), Automorphism::Matrix { matrix, .. }) => Ok(Automorphism::Matrix { matrix, order: Some(n) }),
        (Order::Infinite, Automorphism::Matrix { .. }) => {
            Err(Error::Grading(format!("automorphism has no finite order up to {cap}")))
        }
        (_, other) => Ok(other),
    }
}

fn commute(a: &Automorphism, b: &Automorphism) -> bool {
    use Automorphism::*;
    match (a, b) {
        (Matrix { matrix: x, .. }, Matrix { matrix: y, .. }) => x.commutes_with(y),
        (DiagonalMonomial { .. }, DiagonalMonomial { .. }) => true,
        (Matrix { matrix, .. }, DiagonalMonomial { exponents }) | (DiagonalMonomial { exponents }, Matrix { matrix, .. }) => {
            // diag(s^w) commutes with M for all s iff M only links equal weights
            (0..matrix.rows()).all(|i| {
                (0..matrix.cols()).all(|j| matrix.get(i, j).is_zero() || exponents[i] == exponents[j])
            })
        }
    }
}

/// All index pairs (i < j) that fail to commute.
pub fn commute_check(family: &[Automorphism]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            if !commute(&family[i], &family[j]) {
                out.push((i, j));
            }
        }
    }
    out
}

/// First basis pair (i, j) where `m` fails to preserve the product.
pub fn bracket_violation(alg: &AlgebraData, m: &ExactMatrix) -> Option<(usize, usize)> {
    let n = alg.dim();
    let cols: Vec<Vec<(usize, CycloScalar)>> = (0..n)
        .map(|j| (0..n).filter(|&i| !m.get(i, j).is_zero()).map(|i| (i, m.get(i, j).clone())).collect())
        .collect();
    let mut lhs = vec![CycloScalar::zero(); n];
    let mut rhs = vec![CycloScalar::zero(); n];
    for i in 0..n {
        for j in 0..n {
            lhs.iter_mut().for_each(|x| *x = CycloScalar::zero());
            rhs.iter_mut().for_each(|x| *x = CycloScalar::zero());
            for (k, c) in alg.basis_product(i, j) {
                for (r, x) in &cols[*k] {
                    lhs[*r] += &(c * x);
                }
            }
            for (a, x) in &cols[i] {
                for (b, y) in &cols[j] {
                    let xy = x * y;
                    for (k, c) in alg.basis_product(*a, *b) {
                        rhs[*k] += &(&xy * c);
                    }
                }
            }
            if lhs != rhs {
                return Some((i, j));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> CycloScalar {
        CycloScalar::from_int(v)
    }

    #[test]
    fn torus_identity_and_orders() {
        let id = torus_automorphism(&[int(1), int(1), int(1), int(1)]).unwrap();
        assert!(id.as_matrix().unwrap().is_identity());
        assert_eq!(order_of(&id, ORDER_CAP), Order::Finite(1));
        let t = torus_automorphism(&[int(-1), int(1), int(1), int(1)]).unwrap();
        assert_eq!(order_of(&t, ORDER_CAP), Order::Finite(2));
        let k = t.as_matrix().unwrap().shift(&CycloScalar::one()).kernel();
        assert_eq!(k.len(), 16);
        assert!(torus_automorphism(&[int(0), int(1), int(1), int(1)]).is_err());
    }

    #[test]
    fn torus_eigenvalues_follow_the_diagonal_list() {
        let t = torus_automorphism(&[int(2), int(3), int(5), int(7)]).unwrap();
        let m = t.as_matrix().unwrap();
        // c21 sits at slot 13 with eigenvalue αβ²γδ
        assert_eq!(*m.get(13, 13), int(2 * 9 * 5 * 7));
        assert_eq!(*m.get(8, 8), int(6));
        assert_eq!(*m.get(25, 25), CycloScalar::from_ratio(1, 630));
    }

    #[test]
    fn torus_is_a_homomorphism() {
        let a = [int(2), int(3), int(-1), CycloScalar::from_ratio(1, 5)];
        let b = [int(7), CycloScalar::root_of_unity(3).unwrap(), int(2), int(-3)];
        let ab: Vec<CycloScalar> = a.iter().zip(&b).map(|(x, y)| x * y).collect();
        let lhs = torus_automorphism(&a).unwrap().compose(&torus_automorphism(&b).unwrap()).unwrap();
        assert_eq!(lhs, torus_automorphism(&ab).unwrap());
    }

    #[test]
    fn torus_preserves_brackets() {
        let t = torus_automorphism(&[int(2), int(3), int(-1), int(5)]).unwrap();
        assert_eq!(bracket_violation(&d4_model().algebra, t.as_matrix().unwrap()), None);
    }

    #[test]
    fn monomial_commutation() {
        let fam = vec![
            torus_monomial(&[vec![-1], vec![1], vec![0], vec![0]]).unwrap(),
            torus_automorphism(&[int(-1), int(1), int(1), int(1)]).unwrap(),
        ];
        assert!(commute_check(&fam).is_empty());
    }
}
