//! Orbit representatives and their fixed subtori.

use serde::Serialize;

use super::{fixed_subtorus, isometry_group, FixedTorus};

#[derive(Clone, Copy, Debug)]
pub struct Table2Row {
    pub order: u32,
    pub index: usize,
    pub rank: usize,
    pub torsion: &'static [u64],
    /// Whether Q(j, id) is toral.
    pub toral: bool,
}

const fn row(order: u32, index: usize, rank: usize, torsion: &'static [u64], toral: bool) -> Table2Row {
    Table2Row { order, index, rank, torsion, toral }
}

pub const TABLE2: [Table2Row; 25] = [
    row(1, 894, 4, &[], true),
    row(2, 1, 2, &[2], false),
    row(2, 3, 3, &[], false),
    row(2, 9, 2, &[], false),
    row(2, 19, 1, &[2, 2], false),
    row(2, 49, 1, &[2, 2], false),
    row(2, 259, 0, &[2, 2, 2, 2], false),
    row(2, 270, 3, &[], true),
    row(3, 4, 2, &[], false),
    row(3, 59, 0, &[3, 3], false),
    row(3, 96, 2, &[], true),
    row(4, 2, 1, &[2], false),
    row(4, 7, 1, &[2], false),
    row(4, 30, 2, &[], false),
    row(4, 34, 0, &[2, 2], false),
    row(4, 46, 0, &[2, 4], false),
    row(6, 10, 1, &[], false),
    row(6, 11, 1, &[], false),
    row(6, 20, 0, &[2, 2], false),
    row(6, 55, 0, &[2, 2], false),
    row(6, 56, 1, &[], false),
    row(6, 78, 1, &[], false),
    row(6, 318, 0, &[], false),
    row(8, 8, 0, &[2], false),
    row(12, 58, 0, &[], false),
];

#[derive(Clone, Debug, Serialize)]
pub struct Table2Record {
    pub index: usize,
    pub order: u32,
    pub rank: usize,
    pub torsion: Vec<u64>,
    #[serde(rename = "type")]
    pub type_string: String,
    pub parametrization: String,
    pub toral: bool,
}

#[derive(Clone, Debug)]
pub struct Table2Check {
    pub expected: Table2Row,
    pub order: u32,
    pub fixed: FixedTorus,
}

impl Table2Check {
    pub fn passed(&self) -> bool {
        self.order == self.expected.order
            && self.fixed.rank == self.expected.rank
            && self.fixed.torsion == self.expected.torsion
    }
}

/// Computed order and fixed subtorus for each representative.
pub fn verify_table2() -> Vec<Table2Check> {
    let g = isometry_group();
    TABLE2
        .iter()
        .map(|r| Table2Check {
            expected: *r,
            order: g.order_of(r.index),
            fixed: fixed_subtorus(&[*g.matrix(r.index).expect("index in range")]),
        })
        .collect()
}

pub fn table2_rows() -> Vec<Table2Record> {
    verify_table2()
        .into_iter()
        .map(|c| Table2Record {
            index: c.expected.index,
            order: c.order,
            rank: c.fixed.rank,
            torsion: c.fixed.torsion.clone(),
            type_string: c.fixed.type_string(),
            parametrization: c.fixed.parametrization(),
            toral: c.expected.toral,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::CycloScalar;
    use crate::weyl::act_on_torus;

    #[test]
    fn all_rows_match() {
        for c in verify_table2() {
            assert!(c.passed(), "row {}: order {} type {}", c.expected.index, c.order, c.fixed.type_string());
        }
    }

    #[test]
    fn printed_parametrizations_are_fixed() {
        let g = isometry_group();
        let q = |n: i64, d: i64| CycloScalar::from_ratio(n, d);
        let (x, y, z) = (2i64, 3i64, 5i64);
        // j = 3: t(x, y, z, 1/(x²y²z))
        let t = vec![q(x, 1), q(y, 1), q(z, 1), q(1, x * x * y * y * z)];
        assert_eq!(act_on_torus(g.matrix(3).unwrap(), &t).unwrap(), t);
        // j = 4: t(x, y, x⁻³y⁻², x)
        let t = vec![q(x, 1), q(y, 1), q(1, x * x * x * y * y), q(x, 1)];
        assert_eq!(act_on_torus(g.matrix(4).unwrap(), &t).unwrap(), t);
        // j = 96: t(1, x, y, 1/(xy))
        let t = vec![q(1, 1), q(x, 1), q(y, 1), q(1, x * y)];
        assert_eq!(act_on_torus(g.matrix(96).unwrap(), &t).unwrap(), t);
    }
}
