use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::{commute_check, extend_isometry, torus_automorphism, torus_from_exponents, torus_monomial, Automorphism};
use crate::error::{Error, Result};
use crate::exact::{field, smith_normal_form, CycloScalar, ExactMatrix, IntMatrix};
use crate::liealg::d4_model;
use crate::weyl::{act_on_monomials, act_on_torus, isometry_group, mat_mul, IsoMatrix, IDENTITY};

/// One generator of a quasitorus of d4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilyMember {
    /// t_{α,β,γ,δ} with numeric coordinates.
    Torus(Vec<CycloScalar>),
    /// A torus subgroup; row i holds the parameter exponents of coordinate i.
    TorusParam(Vec<Vec<i64>>),
    /// σ̃ⱼ·t_{twist}.
    Lift { index: usize, twist: Vec<CycloScalar> },
}

impl FamilyMember {
    pub fn lift(index: usize) -> Self {
        FamilyMember::Lift { index, twist: vec![CycloScalar::one(); 4] }
    }

    pub fn automorphism(&self) -> Result<Automorphism> {
        match self {
            FamilyMember::Torus(v) => torus_automorphism(v),
            FamilyMember::TorusParam(e) => torus_monomial(e),
            FamilyMember::Lift { index, twist } => {
                let sigma = isometry_group().matrix(*index)?;
                let l = extend_isometry(sigma)?;
                let t = torus_automorphism(twist)?;
                Ok(Automorphism::matrix(l.mul(t.as_matrix().unwrap())))
            }
        }
    }

    /// Image in the isometry group (identity for torus members).
    pub fn isometry(&self) -> Result<IsoMatrix> {
        match self {
            FamilyMember::Lift { index, .. } => Ok(*isometry_group().matrix(*index)?),
            _ => Ok(IDENTITY),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistReport {
    /// Non-commuting pairs of the family as given.
    pub literal_pairs: Vec<(usize, usize)>,
    /// Extra twist exponents (units of 1/N) multiplied onto each lift, in family order.
    pub twists: Vec<Option<[i64; 4]>>,
    /// Order d of the twist coordinates that was needed (1 when unchanged).
    pub twist_order: u32,
    #[serde(skip)]
    pub members: Vec<FamilyMember>,
    #[serde(skip)]
    pub automorphisms: Vec<Automorphism>,
}

impl TwistReport {
    pub fn changed(&self) -> bool {
        self.twists.iter().flatten().any(|t| t.iter().any(|&x| x != 0))
    }
}

fn divisors(n: u32) -> Vec<u32> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Exponents c with g_a g_b = g_b g_a t(c), given that both products induce the same isometry.
fn commutator_torus(ga: &ExactMatrix, gb: &ExactMatrix) -> Result<[i64; 4]> {
    let p = ga.mul(gb);
    let q = gb.mul(ga);
    let rd = &d4_model().roots;
    let mut c = [0i64; 4];
    for (i, ci) in c.iter_mut().enumerate() {
        let s = rd.simple_slot(i);
        let (row, mu) = (0..q.rows())
            .find_map(|r| (!q.get(r, s).is_zero()).then(|| (r, q.get(r, s).clone())))
            .ok_or_else(|| Error::Internal("zero column".into()))?;
        let ratio = p.get(row, s).div(&mu)?;
        *ci = ratio
            .root_of_unity_exponent()
            .ok_or_else(|| Error::Internal(format!("commutator eigenvalue {ratio} is not a root of unity")))?
            as i64;
    }
    let t = torus_from_exponents(&c);
    if q.mul(t.as_matrix().unwrap()) != p {
        return Err(Error::Internal("commutator of lifts is not a torus element".into()));
    }
    Ok(c)
}

struct PairConstraint {
    a: usize,
    b: usize,
    // (B_b − I) θ_a − (B_a − I) θ_b ≡ rhs  (mod N)
    ma: [[i64; 4]; 4],
    mb: [[i64; 4]; 4],
    rhs: [i64; 4],
}

impl PairConstraint {
    fn holds(&self, ta: &[i64; 4], tb: &[i64; 4], n: i64) -> bool {
        (0..4).all(|i| {
            let s: i64 = (0..4).map(|j| self.ma[i][j] * ta[j] - self.mb[i][j] * tb[j]).sum();
            (s - self.rhs[i]).rem_euclid(n) == 0
        })
    }
}

fn minus_identity(b: &IsoMatrix) -> [[i64; 4]; 4] {
    std::array::from_fn(|i| std::array::from_fn(|j| (b[i][j] - IDENTITY[i][j]) as i64))
}

/// Whether the stacked system has a solution with all θ in (N/d)·Z.
fn solvable(cons: &[PairConstraint], k: usize, n: i64, step: i64) -> bool {
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for c in cons {
        for i in 0..4 {
            let mut row = vec![0i64; 4 * k];
            for j in 0..4 {
                row[4 * c.a + j] += step * c.ma[i][j];
                row[4 * c.b + j] -= step * c.mb[i][j];
            }
            rows.push(row);
            rhs.push(c.rhs[i]);
        }
    }
    let snf = smith_normal_form(&IntMatrix::from_i64_rows(&rows));
    let nb = BigInt::from(n);
    for i in 0..rows.len() {
        let ur: BigInt = (0..rows.len()).map(|j| snf.u.get(i, j) * BigInt::from(rhs[j])).sum();
        let ur = ur.mod_floor(&nb);
        let d = snf.d.get(i).cloned().unwrap_or_else(BigInt::zero);
        let g = d.gcd(&nb);
        if !ur.is_multiple_of(&g) {
            return false;
        }
    }
    true
}

fn search(
    cons: &[PairConstraint],
    k: usize,
    n: i64,
    d: i64,
    assigned: &mut Vec<[i64; 4]>,
) -> bool {
    if assigned.len() == k {
        return true;
    }
    let a = assigned.len();
    let step = n / d;
    let total = d.pow(4);
    for code in 0..total {
        // lexicographic: first coordinate most significant
        let mut theta = [0i64; 4];
        let mut rest = code;
        for j in (0..4).rev() {
            theta[j] = (rest % d) * step;
            rest /= d;
        }
        let ok = cons.iter().filter(|c| c.a.max(c.b) == a).all(|c| {
            let ta = if c.a == a { &theta } else { &assigned[c.a] };
            let tb = if c.b == a { &theta } else { &assigned[c.b] };
            c.holds(ta, tb, n)
        });
        if ok {
            assigned.push(theta);
            if search(cons, k, n, d, assigned) {
                return true;
            }
            assigned.pop();
        }
    }
    false
}

/// Multiply torus twists onto the lifts of a family so that it becomes abelian.
///
/// Twists have coordinates ζ_d^e for the smallest d dividing `bound` (and the
/// conductor) that admits a solution; among those the lexicographically first
/// exponent vector is used. A family that already commutes is returned unchanged.
pub fn repair_commuting_twist(family: &[FamilyMember], bound: u32) -> Result<TwistReport> {
    let autos: Vec<Automorphism> = family.iter().map(FamilyMember::automorphism).collect::<Result<_>>()?;
    let literal_pairs = commute_check(&autos);
    let lifts: Vec<usize> = (0..family.len()).filter(|&i| matches!(family[i], FamilyMember::Lift { .. })).collect();
    if literal_pairs.is_empty() {
        return Ok(TwistReport {
            literal_pairs,
            twists: family.iter().map(|m| matches!(m, FamilyMember::Lift { .. }).then_some([0; 4])).collect(),
            twist_order: 1,
            members: family.to_vec(),
            automorphisms: autos,
        });
    }
    // twists cannot help unless the images commute and torus members are fixed
    let mut image_pairs = Vec::new();
    for (i, j) in &literal_pairs {
        let (si, sj) = (family[*i].isometry()?, family[*j].isometry()?);
        let ok = match (&family[*i], &family[*j]) {
            (FamilyMember::Lift { .. }, FamilyMember::Lift { .. }) => mat_mul(&si, &sj) == mat_mul(&sj, &si),
            (FamilyMember::Lift { .. }, FamilyMember::Torus(t)) => act_on_torus(&si, t)? == *t,
            (FamilyMember::Torus(t), FamilyMember::Lift { .. }) => act_on_torus(&sj, t)? == *t,
            (FamilyMember::Lift { .. }, FamilyMember::TorusParam(e)) => act_on_monomials(&si, e)? == *e,
            (FamilyMember::TorusParam(e), FamilyMember::Lift { .. }) => act_on_monomials(&sj, e)? == *e,
            _ => false,
        };
        if !ok {
            image_pairs.push((*i, *j));
        }
    }
    if !image_pairs.is_empty() {
        return Err(Error::NonCommuting { pairs: image_pairs });
    }
    let n = field().conductor() as i64;
    let mut cons = Vec::new();
    for (x, &a) in lifts.iter().enumerate() {
        for (y, &b) in lifts.iter().enumerate().skip(x + 1) {
            let ga = autos[a].as_matrix().unwrap();
            let gb = autos[b].as_matrix().unwrap();
            let c = commutator_torus(ga, gb)?;
            let (ba, bb) = (family[a].isometry()?, family[b].isometry()?);
            cons.push(PairConstraint {
                a: x,
                b: y,
                ma: minus_identity(&bb),
                mb: minus_identity(&ba),
                rhs: c.map(|v| (-v).rem_euclid(n)),
            });
        }
    }
    let k = lifts.len();
    let bound_n = num_integer::gcd(bound, n as u32);
    for d in divisors(bound_n) {
        let d = d as i64;
        if !solvable(&cons, k, n, n / d) {
            continue;
        }
        let mut assigned = Vec::new();
        if !search(&cons, k, n, d, &mut assigned) {
            return Err(Error::Internal("solvable twist system without enumerated solution".into()));
        }
        let mut members = family.to_vec();
        let mut automorphisms = autos.clone();
        let mut twists: Vec<Option<[i64; 4]>> =
            family.iter().map(|m| matches!(m, FamilyMember::Lift { .. }).then_some([0; 4])).collect();
        for (x, &a) in lifts.iter().enumerate() {
            let theta = assigned[x];
            twists[a] = Some(theta);
            if let FamilyMember::Lift { twist, .. } = &mut members[a] {
                for (t, &e) in twist.iter_mut().zip(&theta) {
                    *t = &*t * &CycloScalar::zeta_power(e);
                }
            }
            automorphisms[a] = members[a].automorphism()?;
        }
        let left = commute_check(&automorphisms);
        if !left.is_empty() {
            return Err(Error::Internal(format!("twisted family still fails to commute at {left:?}")));
        }
        return Ok(TwistReport {
            literal_pairs,
            twists,
            twist_order: d.to_u32().unwrap(),
            members,
            automorphisms,
        });
    }
    Err(Error::NoTwist { bound, pairs: literal_pairs })
}
