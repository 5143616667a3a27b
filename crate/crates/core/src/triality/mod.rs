//! Outer order-3 automorphisms of so(S, q) from symmetric composition algebras.
//!
//! For a symmetric composition algebra (S, *, q) the triality map sends
//! g ∈ so(S, q) to the unique g⁻ with g(x*y) = g⁻(x)*y + x*g⁺(y) for some g⁺.
//! It has order 3, and its fixed subalgebra is Der(S, *).

mod composition;

pub use composition::{
    build_cayley, build_okubo, build_para_hurwitz, check_okubo_commutator, okubo_commutator_factor, okubo_literal_commutator_factor, inner_automorphism, okubo_basis_matrix,
    okubo_coordinates, okubo_matrix, okubo_mu, CompositionAlgebraData, CompositionKind, CAYLEY_NAMES, OKUBO_NAMES,
};

use std::sync::OnceLock;

use crate::autgroup::{bracket_violation, commute_check, with_order, Automorphism, ORDER_CAP};
use crate::error::{Error, Result};
use crate::exact::{CycloScalar, ExactMatrix, Vector};
use crate::gradings::{compute_grading, Grading, QuasitorusSpec};
use crate::liealg::{build_so_of_form, AlgebraData, derivation_algebra, LinearLieAlgebra};

/// so(S, q) together with its triality automorphism.
#[derive(Clone, Debug)]
pub struct TrialityData {
    pub composition: CompositionAlgebraData,
    pub so: LinearLieAlgebra,
    /// θ on coordinates of so(S, q).
    pub theta: ExactMatrix,
    /// g⁺ for each basis element, as coordinate columns.
    pub theta_plus: ExactMatrix,
}

/// Solve g(x*y) = g⁻(x)*y + x*g⁺(y) for every basis element g of so(S, q).
///
/// Unknowns are the 56 coordinates of (g⁻, g⁺); equations are the 8 coordinates
/// of the identity for all 64 basis pairs.
pub fn triality_operator(s: &CompositionAlgebraData) -> Result<TrialityData> {
    let so = build_so_of_form(&s.form)?;
    let n = so.maps.len();
    let dim = s.algebra.dim();
    let mut columns: Vec<Vector> = Vec::with_capacity(2 * n);
    for side in 0..2 {
        for k in 0..n {
            let e = &so.maps[k];
            let mut col = Vec::with_capacity(dim * dim * dim);
            for x in 0..dim {
                for y in 0..dim {
                    let v = if side == 0 {
                        s.mul(&e.column(x), &s.algebra.unit_vector(y))
                    } else {
                        s.mul(&s.algebra.unit_vector(x), &e.column(y))
                    };
                    col.extend(v);
                }
            }
            columns.push(col);
        }
    }
    let system = ExactMatrix::from_columns(&columns);
    let rank = system.rank();
    if rank != 2 * n {
        return Err(Error::Triality(format!("system has rank {rank}, expected {}", 2 * n)));
    }
    let rhs: Vec<Vector> = so
        .maps
        .iter()
        .map(|g| {
            let mut v = Vec::with_capacity(dim * dim * dim);
            for x in 0..dim {
                for y in 0..dim {
                    v.extend(g.mul_vec(&s.algebra.basis_product_dense(x, y)));
                }
            }
            v
        })
        .collect();
    let sols = system.solve_many(&rhs).ok_or_else(|| Error::Triality("no solution for some basis element".into()))?;
    let minus: Vec<Vector> = sols.iter().map(|v| v[..n].to_vec()).collect();
    let plus: Vec<Vector> = sols.iter().map(|v| v[n..].to_vec()).collect();
    let theta = ExactMatrix::from_columns(&minus);
    let theta_plus = ExactMatrix::from_columns(&plus);
    if !theta.pow(3).is_identity() {
        return Err(Error::Triality("θ³ ≠ 1".into()));
    }
    if let Some((i, j)) = bracket_violation(&so.algebra, &theta) {
        return Err(Error::Triality(format!("θ breaks the bracket at ({i}, {j})")));
    }
    Ok(TrialityData { composition: s.clone(), so, theta, theta_plus })
}

impl TrialityData {
    /// The fixed subalgebra of θ as a subspace of so(S, q).
    pub fn fixed_dim(&self) -> usize {
        self.so.maps.len() - self.theta.shift(&CycloScalar::one()).rank()
    }

    pub fn derivation_dim(&self) -> Result<usize> {
        Ok(derivation_algebra(&self.composition.algebra)?.maps.len())
    }

    /// Dimensions of the eigenspaces of θ for 1, ω, ω².
    pub fn eigenspace_dims(&self) -> Result<[usize; 3]> {
        let w = CycloScalar::root_of_unity(3)?;
        let mut out = [0; 3];
        for (k, d) in out.iter_mut().enumerate() {
            *d = self.theta.shift(&w.pow(k as i64)?).kernel().len();
        }
        Ok(out)
    }

    pub fn theta_automorphism(&self) -> Result<Automorphism> {
        with_order(Automorphism::matrix(self.theta.clone()), ORDER_CAP)
    }

    /// f^◊ : g ↦ f g f⁻¹ on so(S, q), for a similitude f.
    pub fn conjugation_embedding(&self, f: &ExactMatrix) -> Result<ExactMatrix> {
        self.composition.multiplier(f).ok_or(Error::NotSimilitude)?;
        let m = self.so.conjugation_matrix(f)?;
        if let Some((i, j)) = bracket_violation(&self.so.algebra, &m) {
            return Err(Error::Internal(format!("conjugation breaks the bracket at ({i}, {j})")));
        }
        Ok(m)
    }

    /// A one-parameter family f_s = diag(s^{e₀}, …, s^{e₇}) of isometries, embedded.
    ///
    /// The basis element E_{p,q} of so(S, q) spans a weight space of weight eₚ + e_q,
    /// which is checked at s = 2.
    pub fn diagonal_family(&self, exponents: &[i64]) -> Result<Automorphism> {
        let dim = self.composition.algebra.dim();
        if exponents.len() != dim {
            return Err(Error::Dimension(format!("need {dim} exponents")));
        }
        let two = CycloScalar::from_int(2);
        let f = ExactMatrix::diagonal(exponents.iter().map(|&e| two.pow(e)).collect::<Result<_>>()?);
        let m = self.conjugation_embedding(&f)?;
        let mut weights = Vec::new();
        for p in 0..dim {
            for q in p + 1..dim {
                weights.push(exponents[p] + exponents[q]);
            }
        }
        let expected = ExactMatrix::diagonal(weights.iter().map(|&w| two.pow(w)).collect::<Result<_>>()?);
        if m != expected {
            return Err(Error::Internal("basis of so(S, q) is not a weight basis for this family".into()));
        }
        Ok(Automorphism::DiagonalMonomial { exponents: weights.into_iter().map(|w| vec![w]).collect() })
    }
}

static PARA_HURWITZ: OnceLock<std::result::Result<TrialityData, String>> = OnceLock::new();
static OKUBO: OnceLock<std::result::Result<TrialityData, String>> = OnceLock::new();

fn cached(cell: &'static OnceLock<std::result::Result<TrialityData, String>>, build: impl FnOnce() -> Result<TrialityData>) -> Result<&'static TrialityData> {
    cell.get_or_init(|| build().map_err(|e| e.to_string())).as_ref().map_err(|e| Error::Triality(e.clone()))
}

/// θ from the para-Hurwitz algebra of the split Cayley algebra.
pub fn para_hurwitz_triality() -> Result<&'static TrialityData> {
    cached(&PARA_HURWITZ, || triality_operator(&build_para_hurwitz(&build_cayley()?)?))
}

/// θ′ from the Okubo algebra.
pub fn okubo_triality() -> Result<&'static TrialityData> {
    cached(&OKUBO, || triality_operator(&build_okubo()?))
}

/// diag(λ, λ⁻¹, α, β, γ, α⁻¹, β⁻¹, γ⁻¹) on the Cayley basis.
pub fn cayley_torus(lambda: &CycloScalar, alpha: &CycloScalar, beta: &CycloScalar, gamma: &CycloScalar) -> Result<ExactMatrix> {
    Ok(ExactMatrix::diagonal(vec![
        lambda.clone(),
        lambda.inv()?,
        alpha.clone(),
        beta.clone(),
        gamma.clone(),
        alpha.inv()?,
        beta.inv()?,
        gamma.inv()?,
    ]))
}

#[derive(Clone, Debug)]
pub struct AdmissibleTriple {
    pub t: ExactMatrix,
    pub minus: ExactMatrix,
    pub plus: ExactMatrix,
    pub multiplier: CycloScalar,
}

/// (t, t⁻, t⁺) for a diagonal t on the para-Hurwitz algebra.
///
/// `roots` are square roots of αβγλ, λα/(βγ), λβ/(αγ) and λγ/(αβ); the other
/// four radicals are these divided by λ. The identity
/// μ(t)⁻¹ t(x*y) = t⁻(x)*t⁺(y) is checked on all basis pairs.
pub fn admissible_triple_diagonal(
    lambda: &CycloScalar,
    alpha: &CycloScalar,
    beta: &CycloScalar,
    gamma: &CycloScalar,
    roots: &[CycloScalar; 4],
) -> Result<AdmissibleTriple> {
    let radicands = [
        &(&(alpha * beta) * gamma) * lambda,
        (lambda * alpha).div(&(beta * gamma))?,
        (lambda * beta).div(&(alpha * gamma))?,
        (lambda * gamma).div(&(alpha * beta))?,
    ];
    for (i, (r, s)) in radicands.iter().zip(roots).enumerate() {
        if &(s * s) != r {
            return Err(Error::Witness(format!("root {i} does not square to its radicand {r}")));
        }
    }
    let li = lambda.inv()?;
    let t = cayley_torus(lambda, alpha, beta, gamma)?;
    let minus = cayley_torus(&roots[0].inv()?, &roots[1], &roots[2], &roots[3])?;
    let plus = cayley_torus(&(&roots[0] * &li), &(&roots[1] * &li), &(&roots[2] * &li), &(&roots[3] * &li))?;
    let s = &para_hurwitz_triality()?.composition;
    let multiplier = s.multiplier(&t).ok_or(Error::NotSimilitude)?;
    let mi = multiplier.inv()?;
    for x in 0..8 {
        for y in 0..8 {
            let lhs: Vector = t.mul_vec(&s.algebra.basis_product_dense(x, y)).iter().map(|c| c * &mi).collect();
            let rhs = s.mul(&minus.column(x), &plus.column(y));
            if lhs != rhs {
                return Err(Error::Witness(format!("admissible identity fails at basis pair ({x}, {y}); try other signs")));
            }
        }
    }
    Ok(AdmissibleTriple { t, minus, plus, multiplier })
}

/// The flip f of the Cayley algebra used in the (14, 7) grading.
pub fn cayley_flip() -> ExactMatrix {
    ExactMatrix::from_int_rows(&[
        &[0, 1, 0, 0, 0, 0, 0, 0],
        &[1, 0, 0, 0, 0, 0, 0, 0],
        &[0, 0, 0, 0, 0, 1, 0, 0],
        &[0, 0, 0, 0, 0, 0, 1, 0],
        &[0, 0, 0, 0, 0, 0, 0, -1],
        &[0, 0, 1, 0, 0, 0, 0, 0],
        &[0, 0, 0, 1, 0, 0, 0, 0],
        &[0, 0, 0, 0, -1, 0, 0, 0],
    ])
}

pub fn okubo_p1() -> ExactMatrix {
    ExactMatrix::from_int_rows(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]])
}

pub fn okubo_p2() -> Result<ExactMatrix> {
    let w = CycloScalar::root_of_unity(3)?;
    Ok(ExactMatrix::diagonal(vec![CycloScalar::one(), w.clone(), &w * &w]))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum TrialityGrading {
    P1,
    P2,
    P3,
    P4,
}

impl TrialityGrading {
    pub const ALL: [TrialityGrading; 4] = [Self::P1, Self::P2, Self::P3, Self::P4];

    pub fn name(self) -> &'static str {
        match self {
            Self::P1 => "P1",
            Self::P2 => "P2",
            Self::P3 => "P3",
            Self::P4 => "P4",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|p| p.name().eq_ignore_ascii_case(s))
    }

    /// The Table 1 row this grading should match, if any.
    pub fn counterpart(self) -> Option<&'static str> {
        match self {
            Self::P1 => Some("Q13"),
            Self::P2 => Some("Q12"),
            Self::P3 => Some("Q14"),
            Self::P4 => None,
        }
    }
}

/// Exponents of s on the Okubo basis under conjugation by diag(p₁, p₂, p₃) with pᵢ = s^{eᵢ}.
fn okubo_inner_weights(e: [i64; 3]) -> Vec<i64> {
    let off = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];
    let mut w: Vec<i64> = off.iter().map(|&(i, j)| e[i] - e[j]).collect();
    w.extend([0, 0]);
    w
}

/// The quasitorus for a triality grading, and the triality data it acts on.
pub fn triality_quasitorus(which: TrialityGrading) -> Result<(&'static TrialityData, QuasitorusSpec)> {
    let (data, family) = match which {
        TrialityGrading::P1 => {
            let d = para_hurwitz_triality()?;
            // t_{α,1} and t_{1,β}
            let fam = vec![
                d.theta_automorphism()?,
                d.diagonal_family(&[0, 0, 1, 0, -1, -1, 0, 1])?,
                d.diagonal_family(&[0, 0, 0, 1, -1, 0, -1, 1])?,
            ];
            (d, fam)
        }
        TrialityGrading::P2 => {
            let d = para_hurwitz_triality()?;
            let one = CycloScalar::one();
            let m1 = -CycloScalar::one();
            let mut fam = vec![d.theta_automorphism()?];
            for f in [cayley_torus(&one, &one, &m1, &m1)?, cayley_torus(&one, &m1, &one, &m1)?, cayley_flip()] {
                if !d.composition.is_automorphism(&f) {
                    return Err(Error::Internal("generator is not an automorphism of the composition algebra".into()));
                }
                fam.push(with_order(Automorphism::matrix(d.conjugation_embedding(&f)?), ORDER_CAP)?);
            }
            (d, fam)
        }
        TrialityGrading::P3 => {
            let d = okubo_triality()?;
            let mut fam = vec![d.theta_automorphism()?];
            for p in [okubo_p1(), okubo_p2()?] {
                let f = inner_automorphism(&p)?;
                fam.push(with_order(Automorphism::matrix(d.conjugation_embedding(&f)?), ORDER_CAP)?);
            }
            (d, fam)
        }
        TrialityGrading::P4 => {
            let d = okubo_triality()?;
            let fam = vec![
                d.theta_automorphism()?,
                d.diagonal_family(&okubo_inner_weights([1, -1, 0]))?,
                d.diagonal_family(&okubo_inner_weights([0, -1, 1]))?,
            ];
            (d, fam)
        }
    };
    let pairs = commute_check(&family);
    if !pairs.is_empty() {
        return Err(Error::NonCommuting { pairs });
    }
    let spec = QuasitorusSpec::from_automorphisms(Some(which.name().to_string()), family)?;
    Ok((data, spec))
}

/// so(S, q) and the generator family of Pᵢ, for i in 1..=4.
pub fn build_p(i: usize) -> Result<(&'static AlgebraData, QuasitorusSpec)> {
    let which = *TrialityGrading::ALL.get(i.wrapping_sub(1)).ok_or(Error::IndexOutOfRange(i, 4))?;
    let (data, spec) = triality_quasitorus(which)?;
    Ok((&data.so.algebra, spec))
}

pub fn triality_grading(which: TrialityGrading) -> Result<Grading> {
    let (data, spec) = triality_quasitorus(which)?;
    compute_grading(&data.so.algebra, &spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triality_component_dimensions() {
        let d = para_hurwitz_triality().unwrap();
        assert_eq!(d.eigenspace_dims().unwrap(), [14, 7, 7]);
        assert_eq!(d.fixed_dim(), d.derivation_dim().unwrap());
        let o = okubo_triality().unwrap();
        assert_eq!(o.eigenspace_dims().unwrap(), [8, 10, 10]);
        assert_eq!(o.fixed_dim(), o.derivation_dim().unwrap());
    }

    #[test]
    fn admissible_triple_for_order_three_torus() {
        let w = CycloScalar::root_of_unity(3).unwrap();
        let w2 = &w * &w;
        let one = CycloScalar::one();
        let triple = admissible_triple_diagonal(&one, &w2, &one, &one, &[w.clone(), w.clone(), w2.clone(), w2.clone()]);
        assert!(triple.is_ok(), "{triple:?}");
    }

    #[test]
    fn trivial_triple_is_identity() {
        let one = CycloScalar::one();
        let tr = admissible_triple_diagonal(&one, &one, &one, &one, &[one.clone(), one.clone(), one.clone(), one.clone()]).unwrap();
        assert!(tr.minus.is_identity() && tr.plus.is_identity());
    }

    #[test]
    fn derivations_are_fixed_by_theta() {
        let d = para_hurwitz_triality().unwrap();
        let der = derivation_algebra(&d.composition.algebra).unwrap();
        for g in &der.maps {
            let c = d.so.coordinates(g).expect("derivations are skew");
            assert_eq!(d.theta.mul_vec(&c), c);
        }
    }

    #[test]
    fn cayley_torus_and_flip() {
        let d = para_hurwitz_triality().unwrap();
        let c = build_cayley().unwrap();
        let two = CycloScalar::from_int(2);
        let three = CycloScalar::from_int(3);
        let ab = (&two * &three).inv().unwrap();
        let t = cayley_torus(&CycloScalar::one(), &two, &three, &ab).unwrap();
        assert!(c.is_automorphism(&t));
        assert_eq!(c.multiplier(&t), Some(CycloScalar::one()));
        let f = cayley_flip();
        assert!(c.is_automorphism(&f));
        assert!(d.conjugation_embedding(&f).is_ok());
        let one = CycloScalar::one();
        let m1 = -CycloScalar::one();
        for t in [cayley_torus(&one, &one, &m1, &m1).unwrap(), cayley_torus(&one, &m1, &one, &m1).unwrap()] {
            assert!(f.commutes_with(&t));
        }
        assert!(d.conjugation_embedding(&ExactMatrix::identity(8)).unwrap().is_identity());
        let bad = ExactMatrix::diagonal(vec![two.clone(), one.clone(), one.clone(), one.clone(), one.clone(), one.clone(), one.clone(), one]);
        assert!(matches!(d.conjugation_embedding(&bad), Err(Error::NotSimilitude)));
    }

    #[test]
    fn okubo_p_matrices() {
        let w = CycloScalar::root_of_unity(3).unwrap();
        let (p1, p2) = (okubo_p1(), okubo_p2().unwrap());
        // the printed matrices give p₁p₂ = ω²p₂p₁; any primitive cube root serves
        assert_eq!(p1.mul(&p2), p2.mul(&p1).scale(&(&w * &w)));
        assert_ne!(p1.mul(&p2), p2.mul(&p1).scale(&w));
        let (a, b) = (inner_automorphism(&p1).unwrap(), inner_automorphism(&p2).unwrap());
        assert!(a.commutes_with(&b));
    }

    #[test]
    fn p_family_index_range() {
        assert!(matches!(build_p(0), Err(Error::IndexOutOfRange(0, 4))));
        assert!(matches!(build_p(5), Err(Error::IndexOutOfRange(5, 4))));
    }

    #[test]
    fn bad_witness_is_rejected() {
        let one = CycloScalar::one();
        let two = CycloScalar::from_int(2);
        let r = admissible_triple_diagonal(&one, &one, &one, &one, &[two, one.clone(), one.clone(), one.clone()]);
        assert!(matches!(r, Err(Error::Witness(_))));
    }

    #[test]
    fn stabilizer_torus_triples_are_scalar_multiples() {
        // λ = 1, αβγ = 1: t⁻ and t⁺ agree with t up to a scalar
        let one = CycloScalar::one();
        let a = CycloScalar::from_int(4);
        let b = CycloScalar::from_ratio(1, 4);
        // radicands 1, 16, 1/16, 1
        let roots = [one.clone(), CycloScalar::from_int(4), CycloScalar::from_ratio(1, 4), one.clone()];
        let tr = admissible_triple_diagonal(&one, &a, &b, &one, &roots).unwrap();
        assert_eq!(tr.minus, tr.t);
        assert_eq!(tr.plus, tr.t);
    }
}
