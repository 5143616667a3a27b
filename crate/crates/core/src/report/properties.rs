//! Seeded random sampling behind the property criterion.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::autgroup::{bracket_violation, extend_isometry, torus_automorphism};
use crate::error::Result;
use crate::exact::{field, smith_normal_form, CycloScalar, ExactMatrix, IntMatrix, Rational};
use crate::liealg::d4_model;
use crate::weyl::{act_on_torus, isometry_group};

pub const DEFAULT_SEED: u64 = 0x5eed_d4;

#[derive(Clone, Debug, Default)]
pub struct PropertyOutcome {
    pub field_axioms: (usize, usize),
    pub snf: (usize, usize),
    pub kernels: (usize, usize),
    pub lifts: (usize, usize),
    pub torus_compat: (usize, usize),
    /// How many sampled pairs also satisfy σ̃tσ̃⁻¹ = σ·t.
    pub torus_compat_opposite: usize,
}

impl PropertyOutcome {
    pub fn passed(&self) -> bool {
        [self.field_axioms, self.snf, self.kernels, self.lifts, self.torus_compat].iter().all(|(ok, n)| ok == n && *n > 0)
    }

    pub fn summary(&self) -> String {
        format!(
            "field {}/{}, snf {}/{}, kernel {}/{}, lifts {}/{}, torus σ̃⁻¹tσ̃=σ·t {}/{} (σ̃tσ̃⁻¹=σ·t {}/{})",
            self.field_axioms.0,
            self.field_axioms.1,
            self.snf.0,
            self.snf.1,
            self.kernels.0,
            self.kernels.1,
            self.lifts.0,
            self.lifts.1,
            self.torus_compat.0,
            self.torus_compat.1,
            self.torus_compat_opposite,
            self.torus_compat.1
        )
    }
}

pub fn random_scalar(rng: &mut impl Rng) -> CycloScalar {
    let d = field().degree();
    let coeffs = (0..d)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Rational::from_integer(0.into())
            } else {
                Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=4).into())
            }
        })
        .collect();
    CycloScalar::from_coeffs(coeffs).expect("degree-sized coefficient vector")
}

fn nonzero_scalar(rng: &mut impl Rng) -> CycloScalar {
    loop {
        let x = random_scalar(rng);
        if !x.is_zero() {
            return x;
        }
    }
}

fn field_axioms_hold(a: &CycloScalar, b: &CycloScalar, c: &CycloScalar) -> bool {
    let assoc = &(a * b) * c == a * &(b * c);
    let comm = a * b == b * a && a + b == b + a;
    let distrib = a * &(b + c) == &(a * b) + &(a * c);
    let neg = (a - a).is_zero();
    let inv = a.is_zero() || (a * &a.inv().expect("nonzero")).is_one();
    assoc && comm && distrib && neg && inv
}

fn random_int_matrix(rng: &mut impl Rng) -> IntMatrix {
    let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=5));
    let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-6..=6)).collect()).collect();
    IntMatrix::from_i64_rows(&rows)
}

fn snf_reconstructs(a: &IntMatrix) -> bool {
    let s = smith_normal_form(a);
    let d = IntMatrix::diagonal(a.rows(), a.cols(), &s.d);
    let unimodular = |m: &IntMatrix| {
        let det = m.determinant();
        det == BigInt::from(1) || det == BigInt::from(-1)
    };
    let divides = s.d.windows(2).all(|w| if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) });
    s.u.mul(a).mul(&s.v) == d && unimodular(&s.u) && unimodular(&s.v) && divides
}

fn kernel_certified(m: &ExactMatrix) -> bool {
    let k = m.kernel();
    k.iter().all(|v| m.mul_vec(v).iter().all(CycloScalar::is_zero)) && m.rank() + k.len() == m.cols()
}

pub fn run_properties(seed: u64, samples: usize) -> Result<PropertyOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = PropertyOutcome::default();

    for _ in 0..samples {
        let (a, b, c) = (random_scalar(&mut rng), random_scalar(&mut rng), random_scalar(&mut rng));
        out.field_axioms.1 += 1;
        out.field_axioms.0 += usize::from(field_axioms_hold(&a, &b, &c));
    }
    for _ in 0..samples {
        let a = random_int_matrix(&mut rng);
        out.snf.1 += 1;
        out.snf.0 += usize::from(snf_reconstructs(&a));
    }
    for _ in 0..samples {
        let (r, c) = (rng.gen_range(1..=5), rng.gen_range(1..=6));
        let rank_one_row: Vec<CycloScalar> = (0..c).map(|_| random_scalar(&mut rng)).collect();
        let m = ExactMatrix::from_fn(r, c, |i, j| if i % 2 == 0 { rank_one_row[j].clone() } else { random_scalar(&mut rng) });
        out.kernels.1 += 1;
        out.kernels.0 += usize::from(kernel_certified(&m));
    }

    let g = isometry_group();
    let indices: Vec<usize> = (1..=g.len()).collect();
    let alg = &d4_model().algebra;
    for &j in indices.choose_multiple(&mut rng, samples) {
        let sigma = g.matrix(j)?;
        out.lifts.1 += 1;
        let ok = extend_isometry(sigma).map(|m| bracket_violation(alg, &m).is_none()).unwrap_or(false);
        out.lifts.0 += usize::from(ok);
    }
    for _ in 0..samples {
        let j = *indices.choose(&mut rng).expect("nonempty");
        let sigma = g.matrix(j)?;
        let t: Vec<CycloScalar> = (0..4).map(|_| nonzero_scalar(&mut rng)).collect();
        let lift = extend_isometry(sigma)?;
        let inv = lift.inverse()?;
        let tm = torus_automorphism(&t)?.as_matrix().expect("torus is a matrix").clone();
        let acted = torus_automorphism(&act_on_torus(sigma, &t)?)?.as_matrix().expect("torus is a matrix").clone();
        out.torus_compat.1 += 1;
        out.torus_compat.0 += usize::from(inv.mul(&tm).mul(&lift) == acted);
        out.torus_compat_opposite += usize::from(lift.mul(&tm).mul(&inv) == acted);
    }
    Ok(out)
}
