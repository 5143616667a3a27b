//! The fourteen maximal quasitori of Aut d4 and the quasitori Q(j, id).

use serde::Serialize;

use super::{compute_grading, fixed_subalgebra_dim, GradingInvariants, QuasitorusSpec};
use crate::autgroup::{repair_commuting_twist, with_order, FamilyMember, TwistReport, ORDER_CAP};
use crate::error::{Error, Result};
use crate::exact::{field, AbelianInvariants, CycloScalar};
use crate::liealg::d4_model;
use crate::weyl::{fixed_subtorus, isometry_group, TABLE2};

/// A torus coordinate in a generator of the table.
#[derive(Clone, Copy, Debug)]
enum C {
    /// ζ_d^k.
    Root(u32, i64),
    /// ∏ pᵢ^{eᵢ} over the formal parameters of the generator.
    Mono(&'static [i64]),
}

const ONE: C = C::Root(1, 0);
const M1: C = C::Root(2, 1);
const I: C = C::Root(4, 1);
const MI: C = C::Root(4, 3);
const W: C = C::Root(3, 1);
const U: C = C::Mono(&[1]);
const UINV: C = C::Mono(&[-1]);

#[derive(Clone, Copy, Debug)]
enum Gen {
    T([C; 4]),
    L(usize, [C; 4]),
}

const ID: [C; 4] = [ONE, ONE, ONE, ONE];

const fn t(c: [C; 4]) -> Gen {
    Gen::T(c)
}

#[derive(Clone, Copy, Debug)]
pub struct Table1Row {
    pub name: &'static str,
    generators: &'static [Gen],
    pub rank: usize,
    /// Cyclic factors as printed.
    pub torsion: &'static [u64],
    pub type_tuple: &'static [usize],
    pub dim_identity: usize,
}

impl Table1Row {
    pub fn expected(&self) -> GradingInvariants {
        GradingInvariants {
            type_tuple: self.type_tuple.to_vec(),
            group: AbelianInvariants::new(self.rank, self.torsion.to_vec()),
            dim_identity: self.dim_identity,
        }
    }

    pub fn family(&self) -> Result<Vec<FamilyMember>> {
        self.generators.iter().map(member).collect()
    }
}

fn member(g: &Gen) -> Result<FamilyMember> {
    match g {
        Gen::T(cs) if cs.iter().any(|c| matches!(c, C::Mono(_))) => {
            let exps = cs
                .iter()
                .map(|c| match c {
                    C::Mono(e) => Ok(e.to_vec()),
                    C::Root(_, 0) => Ok(vec![0]),
                    C::Root(..) => Err(Error::Spec("mixed numeric and formal torus coordinates".into())),
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(FamilyMember::TorusParam(exps))
        }
        Gen::T(cs) => Ok(FamilyMember::Torus(values(cs)?)),
        Gen::L(j, cs) => Ok(FamilyMember::Lift { index: *j, twist: values(cs)? }),
    }
}

fn values(cs: &[C; 4]) -> Result<Vec<CycloScalar>> {
    cs.iter()
        .map(|c| match c {
            C::Root(d, k) => CycloScalar::root_of_unity(*d)?.pow(*k),
            C::Mono(_) => Err(Error::Spec("formal coordinate in a numeric twist".into())),
        })
        .collect()
}

macro_rules! row {
    ($name:expr, [$($g:expr),* $(,)?], $rank:expr, $tors:expr, $ty:expr, $e:expr) => {
        Table1Row { name: $name, generators: &[$($g),*], rank: $rank, torsion: $tors, type_tuple: $ty, dim_identity: $e }
    };
}

pub const TABLE1: [Table1Row; 14] = [
    row!("Q1", [t([M1, ONE, ONE, ONE]), t([ONE, ONE, M1, M1]), t([ONE, M1, ONE, ONE]),
        Gen::L(1, ID), Gen::L(3, ID), Gen::L(19, ID), Gen::L(259, ID)], 0, &[2, 2, 2, 2, 2, 2, 2], &[28], 0),
    row!("Q2", [t([M1, ONE, ONE, ONE]), t([ONE, ONE, M1, M1]), t([UINV, U, ONE, ONE]),
        Gen::L(1, ID), Gen::L(3, ID), Gen::L(19, ID)], 1, &[2, 2, 2, 2, 2], &[28], 1),
    row!("Q3", [t([M1, ONE, ONE, ONE]), t([UINV, U, ONE, ONE]), t([UINV, ONE, U, U]),
        Gen::L(1, ID), Gen::L(3, ID)], 2, &[2, 2, 2], &[26, 1], 2),
    row!("Q4", [t([UINV, U, ONE, ONE]), t([UINV, ONE, U, U]), t([U, ONE, ONE, C::Mono(&[-2])]),
        Gen::L(3, ID)], 3, &[2], &[25, 0, 1], 3),
    row!("Q5", [t([M1, ONE, ONE, ONE]), t([UINV, ONE, U, U]), t([ONE, M1, ONE, M1]),
        Gen::L(49, [ONE, M1, ONE, ONE])], 1, &[2, 2, 2], &[25, 0, 1], 1),
    row!("Q6", [t([ONE, M1, ONE, ONE]), t([M1, M1, ONE, ONE]),
        Gen::L(259, [M1, M1, M1, M1]), Gen::L(7, ID)], 0, &[2, 2, 2, 4], &[24, 2], 0),
    row!("Q7", [t([M1, ONE, M1, ONE]), t([ONE, M1, ONE, ONE]), t([ONE, ONE, ONE, U]),
        Gen::L(280, ID), Gen::L(634, ID)], 1, &[2, 2, 2, 2], &[28], 1),
    row!("Q8", [t([M1, ONE, ONE, ONE]), t([ONE, M1, ONE, ONE]), t([ONE, ONE, M1, M1]),
        Gen::L(1, [I, ONE, I, MI]), Gen::L(259, [ONE, ONE, ONE, M1]), Gen::L(243, [M1, MI, ONE, ONE])],
        0, &[2, 2, 2, 2, 2, 2], &[28], 0),
    row!("Q9", [t([M1, ONE, ONE, ONE]), t([ONE, M1, ONE, ONE]), t([ONE, ONE, M1, ONE]), t([ONE, ONE, ONE, M1]),
        Gen::L(259, ID)], 0, &[2, 2, 2, 2, 2], &[24, 0, 0, 1], 0),
    row!("Q10", [t([M1, ONE, ONE, ONE]), t([UINV, U, ONE, ONE]), t([UINV, ONE, U, U]),
        Gen::L(1, ID)], 2, &[2, 2], &[20, 4], 2),
    row!("Q11", [t([U, ONE, ONE, ONE]), t([ONE, U, ONE, ONE]), t([ONE, ONE, U, ONE]), t([ONE, ONE, ONE, U])],
        4, &[], &[24, 0, 0, 1], 4),
    row!("Q12", [t([ONE, M1, ONE, ONE]), t([M1, M1, M1, M1]), Gen::L(20, ID)], 0, &[2, 2, 2, 3], &[14, 7], 0),
    row!("Q13", [t([ONE, U, C::Mono(&[-2]), ONE]), t([U, ONE, C::Mono(&[-3]), U]), Gen::L(4, ID)],
        2, &[3], &[26, 1], 2),
    row!("Q14", [t([ONE, W, W, W]), t([W, ONE, W, ONE]), Gen::L(59, ID)], 0, &[3, 3, 3], &[24, 2], 0),
];

pub fn table1_row(name: &str) -> Option<&'static Table1Row> {
    TABLE1.iter().find(|r| r.name.eq_ignore_ascii_case(name))
}

/// The family of a table row after twist repair.
pub fn q_family(row: &Table1Row) -> Result<(QuasitorusSpec, TwistReport)> {
    family_quasitorus(Some(row.name.to_string()), &row.family()?)
}

/// Repair twists if needed, then split the family into finite and continuous parts.
pub fn family_quasitorus(name: Option<String>, family: &[FamilyMember]) -> Result<(QuasitorusSpec, TwistReport)> {
    let report = repair_commuting_twist(family, field().conductor())?;
    let autos = report
        .automorphisms
        .iter()
        .cloned()
        .map(|a| with_order(a, ORDER_CAP))
        .collect::<Result<Vec<_>>>()?;
    Ok((QuasitorusSpec::from_automorphisms(name, autos)?, report))
}

#[derive(Clone, Debug, Serialize)]
pub struct Table1Result {
    pub name: String,
    pub expected: GradingInvariants,
    pub computed: Option<GradingInvariants>,
    pub twist: Option<TwistReport>,
    pub components: usize,
    /// Other rows whose expected invariants equal the computed ones.
    pub also_matches: Vec<String>,
    pub error: Option<String>,
}

impl Table1Result {
    pub fn passed(&self) -> bool {
        self.computed.as_ref() == Some(&self.expected)
    }

    /// Which of group, type, dim L_e differ.
    pub fn mismatches(&self) -> Vec<&'static str> {
        let Some(c) = &self.computed else { return vec!["computation"] };
        let mut out = Vec::new();
        if c.group != self.expected.group {
            out.push("group");
        }
        if c.type_tuple != self.expected.type_tuple {
            out.push("type");
        }
        if c.dim_identity != self.expected.dim_identity {
            out.push("dim L_e");
        }
        out
    }
}

pub fn run_table1_row(row: &Table1Row) -> Table1Result {
    let alg = &d4_model().algebra;
    let outcome = q_family(row).and_then(|(spec, report)| Ok((compute_grading(alg, &spec)?, report)));
    let (computed, twist, components, error) = match outcome {
        Ok((g, report)) => (Some(g.invariants()), Some(report), g.components.len(), None),
        Err(e) => (None, None, 0, Some(e.to_string())),
    };
    let also_matches = match &computed {
        Some(c) => TABLE1
            .iter()
            .filter(|r| r.name != row.name && r.expected() == *c)
            .map(|r| r.name.to_string())
            .collect(),
        None => vec![],
    };
    Table1Result { name: row.name.into(), expected: row.expected(), computed, twist, components, also_matches, error }
}

/// Every row of the table, computed and compared.
pub fn table1_suite() -> Vec<Table1Result> {
    TABLE1.iter().map(run_table1_row).collect()
}

/// ⟨σ̃ⱼ, T^{(j)}⟩ as a family: the lift, torsion points, and one-parameter directions.
pub fn qj_family(j: usize) -> Result<Vec<FamilyMember>> {
    let sigma = isometry_group().matrix(j)?;
    let fixed = fixed_subtorus(&[*sigma]);
    let mut fam = vec![FamilyMember::lift(j)];
    for g in &fixed.torsion_generators {
        fam.push(FamilyMember::Torus(g.point()?));
    }
    for v in &fixed.kernel_basis {
        fam.push(FamilyMember::TorusParam(v.iter().map(|&x| vec![x]).collect()));
    }
    Ok(fam)
}

#[derive(Clone, Debug, Serialize)]
pub struct NontoralityWitness {
    pub index: usize,
    pub dim_identity: usize,
    pub fixed_dim: usize,
    pub type_tuple: Vec<usize>,
}

/// dim L_e of the grading of Q(j, id) for Table 2 representatives outside `skip`.
pub fn nontorality_witnesses(skip: &[usize]) -> Result<Vec<NontoralityWitness>> {
    let alg = &d4_model().algebra;
    let mut out = Vec::new();
    for row in TABLE2.iter().filter(|r| !skip.contains(&r.index)) {
        let fam = qj_family(row.index)?;
        let autos = fam
            .iter()
            .map(|m| m.automorphism().and_then(|a| with_order(a, ORDER_CAP)))
            .collect::<Result<Vec<_>>>()?;
        let fixed_dim = fixed_subalgebra_dim(alg, &autos);
        let spec = QuasitorusSpec::from_automorphisms(Some(format!("Q({},id)", row.index)), autos)?;
        let g = compute_grading(alg, &spec)?;
        let inv = g.invariants();
        out.push(NontoralityWitness { index: row.index, dim_identity: inv.dim_identity, fixed_dim, type_tuple: inv.type_tuple });
    }
    Ok(out)
}
