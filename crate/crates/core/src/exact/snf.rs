//! Integer matrices: Smith and Hermite normal forms.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix { rows: r, cols: c, data: rows.iter().flatten().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn diagonal(rows: usize, cols: usize, d: &[BigInt]) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, x) in d.iter().enumerate() {
            m.set(i, i, x.clone());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let v = out.get(i, j) + a * rhs.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(p) => {
                        a.swap(k, p);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k·row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = self.get(dst, j) + k * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    /// col[dst] += k·col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = self.get(i, dst) + k * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j);
            self.set(r, j, v);
        }
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| i64::try_from(x).expect("entry fits in i64")).collect())
            .collect()
    }
}

/// `u · a · v = diag(d)` with `u`, `v` unimodular and `d₁ | d₂ | …`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub d: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.d.iter().filter(|x| !x.is_zero()).count()
    }

    /// Elementary divisors greater than one.
    pub fn nonunit_divisors(&self) -> Vec<BigInt> {
        self.d.iter().filter(|x| !x.is_zero() && !x.is_one()).cloned().collect()
    }
}

pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows, a.cols);
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    for t in 0..m.min(n) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = s.get(i, j);
                if !x.is_zero() && best.map_or(true, |(bi, bj)| x.abs() < s.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let q = -(s.get(i, t).div_floor(s.get(t, t)));
                s.add_row(i, t, &q);
                u.add_row(i, t, &q);
                if !s.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let q = -(s.get(t, j).div_floor(s.get(t, t)));
                s.add_col(j, t, &q);
                v.add_col(j, t, &q);
                if !s.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // a smaller remainder exists in row or column t: move it to the pivot
                let mut best = (t, t);
                for i in t + 1..m {
                    let x = s.get(i, t);
                    if !x.is_zero() && x.abs() < s.get(best.0, best.1).abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    let x = s.get(t, j);
                    if !x.is_zero() && x.abs() < s.get(best.0, best.1).abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    s.swap_rows(t, best.0);
                    u.swap_rows(t, best.0);
                }
                if best.1 != t {
                    s.swap_cols(t, best.1);
                    v.swap_cols(t, best.1);
                }
                continue;
            }
            // divisibility of the trailing block
            let p = s.get(t, t).clone();
            let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !s.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => {
                    let one = BigInt::one();
                    s.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    let d = (0..m.min(n)).map(|i| s.get(i, i).clone()).collect();
    SnfResult { d, u, v }
}

/// Row-style Hermite normal form of the lattice spanned by `rows`.
///
/// Returns a basis in echelon form with positive pivots and the entries above
/// each pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn hermite_normal_form(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = rows.to_vec();
    let ncols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        loop {
            // pick smallest nonzero |entry| in column c at or below r
            let Some(p) = (r..a.len())
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()))
            else {
                break;
            };
            a.swap(r, p);
            let mut done = true;
            for i in r + 1..a.len() {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                    *x -= &q * y;
                }
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if r < a.len() && !a[r][c].is_zero() {
            if a[r][c].is_negative() {
                a[r].iter_mut().for_each(|x| *x = -x.clone());
            }
            let pivot_row = a[r].clone();
            for i in 0..r {
                let q = a[i][c].div_floor(&pivot_row[c]);
                if !q.is_zero() {
                    for (x, y) in a[i].iter_mut().zip(&pivot_row) {
                        *x -= &q * y;
                    }
                }
            }
            r += 1;
        }
    }
    a.truncate(r);
    a
}

/// Basis of the integer null space {x ∈ Zⁿ : a·x = 0}, in Hermite normal form.
pub fn integer_kernel(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    let rank = snf.rank();
    let cols: Vec<Vec<BigInt>> = (rank..a.cols).map(|j| snf.v.column(j)).collect();
    hermite_normal_form(&cols)
}

/// Invariants of a finitely generated abelian group Z^rank × ∏ Z_{torsion_i}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct AbelianInvariants {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        AbelianInvariants { rank: 0, torsion: vec![] }
    }

    pub fn new(rank: usize, mut torsion: Vec<u64>) -> Self {
        torsion.retain(|&d| d > 1);
        AbelianInvariants { rank, torsion: canonical_invariant_factors(&torsion) }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn order(&self) -> Option<u64> {
        (self.rank == 0).then(|| self.torsion.iter().product())
    }
}

impl std::fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        let t = &self.torsion;
        while i < t.len() {
            let mut j = i;
            while j < t.len() && t[j] == t[i] {
                j += 1;
            }
            parts.push(if j - i == 1 { format!("Z{}", t[i]) } else { format!("Z{}^{}", t[i], j - i) });
            i = j;
        }
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// Rewrite a list of cyclic orders as the invariant-factor chain d₁ | d₂ | ….
pub fn canonical_invariant_factors(orders: &[u64]) -> Vec<u64> {
    let diag: Vec<BigInt> = orders.iter().map(|&d| BigInt::from(d)).collect();
    let n = diag.len();
    let snf = smith_normal_form(&IntMatrix::diagonal(n, n, &diag));
    snf.nonunit_divisors().iter().map(|d| u64::try_from(d).expect("small torsion")).collect()
}

/// Invariants of Z^n / (row lattice of `relations`).
pub fn cokernel_invariants(relations: &IntMatrix) -> AbelianInvariants {
    let snf = smith_normal_form(relations);
    let rank = relations.cols - snf.rank();
    let torsion = snf.nonunit_divisors().iter().map(|d| u64::try_from(d).expect("small torsion")).collect();
    AbelianInvariants { rank, torsion }
}
