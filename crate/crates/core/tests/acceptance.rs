//! The acceptance criteria, one line each. Expected values are written out
//! here from the reference tables and checked against independent
//! recomputations wherever the library's own route could hide an error.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use d4_gradings::autgroup::torus_automorphism;
use d4_gradings::exact::{smith_normal_form, CycloScalar, IntMatrix, SpanReader, Vector};
use d4_gradings::gradings::{compute_grading, nontorality_witnesses, q_family, run_table1_row, table1_row, Grading};
use d4_gradings::liealg::{d4_model, derivation_algebra, AlgebraData};
use d4_gradings::report::{random_scalar, run_properties, DEFAULT_SEED};
use d4_gradings::triality::{
    build_cayley, build_okubo, build_para_hurwitz, okubo_basis_matrix, okubo_commutator_factor, okubo_coordinates,
    okubo_literal_commutator_factor, okubo_matrix, okubo_mu, okubo_triality, para_hurwitz_triality, triality_grading,
    CompositionAlgebraData, TrialityData, TrialityGrading,
};
use d4_gradings::weyl::{generate_isometry_group, isometry_group, IsoMatrix};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

// ---------- group theory oracles ----------

const S: [IsoMatrix; 6] = [
    [[-1, 0, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
    [[1, 1, 0, 0], [0, -1, 0, 0], [0, 1, 1, 0], [0, 1, 0, 1]],
    [[1, 0, 0, 0], [0, 1, 1, 0], [0, 0, -1, 0], [0, 0, 0, 1]],
    [[1, 0, 0, 0], [0, 1, 0, 1], [0, 0, 1, 0], [0, 0, 0, -1]],
    [[0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1], [1, 0, 0, 0]],
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]],
];
const I4: IsoMatrix = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];

fn mul(a: &IsoMatrix, b: &IsoMatrix) -> IsoMatrix {
    let mut c = [[0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            c[i][j] = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    c
}

fn order(a: &IsoMatrix) -> u32 {
    let mut p = *a;
    let mut n = 1;
    while p != I4 {
        p = mul(&p, a);
        n += 1;
    }
    n
}

/// Closure under right multiplication by generators, sorted lexicographically.
fn own_closure() -> Vec<IsoMatrix> {
    let mut seen: BTreeSet<IsoMatrix> = BTreeSet::from([I4]);
    let mut frontier = vec![I4];
    while let Some(x) = frontier.pop() {
        for s in &S {
            let y = mul(&x, s);
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// Elementary divisors to invariant factors d₁ | d₂ | … (without 1s).
fn invariant_factors(elementary: &[u64]) -> Vec<u64> {
    let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for &q in elementary {
        let p = (2..=q).find(|p| q % p == 0).unwrap();
        by_prime.entry(p).or_default().push(q);
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut out = vec![1u64; len];
    for powers in by_prime.values_mut() {
        powers.sort_unstable_by(|a, b| b.cmp(a));
        for (i, q) in powers.iter().enumerate() {
            out[len - 1 - i] *= q;
        }
    }
    out
}

/// Free rank and torsion of the torus fixed by all σ: Z⁴ modulo the rows of the σ − I.
fn fixed_torus_invariants(sigmas: &[&IsoMatrix]) -> (usize, Vec<u64>) {
    let mut rows = Vec::new();
    for s in sigmas {
        for i in 0..4 {
            rows.push((0..4).map(|j| s[i][j] as i64 - i64::from(i == j)).collect::<Vec<_>>());
        }
    }
    let snf = smith_normal_form(&IntMatrix::from_i64_rows(&rows));
    let nonzero: Vec<&BigInt> = snf.d.iter().filter(|d| !d.is_zero()).collect();
    let torsion = nonzero.iter().filter(|d| !d.is_one()).map(|d| u64::try_from(d.magnitude().clone()).unwrap()).collect();
    (4 - nonzero.len(), torsion)
}

fn act(sigma: &IsoMatrix, t: &[CycloScalar]) -> Vec<CycloScalar> {
    (0..4)
        .map(|i| (0..4).fold(CycloScalar::one(), |acc, j| &acc * &t[j].pow(sigma[i][j] as i64).unwrap()))
        .collect()
}

// ---------- criteria ----------

fn c1() -> Outcome {
    let t = Instant::now();
    let g = generate_isometry_group().map_err(|e| e.to_string())?;
    let el = t.elapsed();
    let own = own_closure();
    ensure(g.len() == 1152 && own.len() == 1152, format!("{} elements, independent closure {}", g.len(), own.len()))?;
    let lib: Vec<IsoMatrix> = g.elements().map(|e| e.matrix).collect();
    ensure(lib == own, "element order differs from the lexicographic closure")?;
    let minus = I4.map(|r| r.map(|x| -x));
    ensure(own[893] == I4 && own[258] == minus, "σ894 = I or σ259 = -I fails")?;
    ensure(el < Duration::from_secs(10), format!("took {el:.2?}"))?;
    Ok(format!("1152 elements, σ894 = I, σ259 = -I, {el:.2?}"))
}

fn c2() -> Outcome {
    let t = Instant::now();
    let els = own_closure();
    let index: HashMap<IsoMatrix, usize> = els.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let inv: Vec<IsoMatrix> = S.iter().map(|s| els[(0..els.len()).find(|&k| mul(s, &els[k]) == I4).unwrap()]).collect();
    let mut class = vec![usize::MAX; els.len()];
    let mut counts: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
    for start in 0..els.len() {
        if class[start] != usize::MAX {
            continue;
        }
        class[start] = start;
        let mut stack = vec![start];
        let mut size = 0;
        while let Some(x) = stack.pop() {
            size += 1;
            for (s, si) in S.iter().zip(&inv) {
                let y = index[&mul(&mul(s, &els[x]), si)];
                if class[y] == usize::MAX {
                    class[y] = start;
                    stack.push(y);
                }
            }
        }
        let e = counts.entry(order(&els[start])).or_default();
        e.0 += size;
        e.1 += 1;
    }
    let expected: BTreeMap<u32, (usize, usize)> =
        [(1, (1, 1)), (2, (139, 7)), (3, (80, 3)), (4, (228, 5)), (6, (464, 7)), (8, (144, 1)), (12, (96, 1))].into();
    ensure(counts == expected, format!("independent census {counts:?}"))?;
    let lib = d4_gradings::weyl::conjugacy_census(isometry_group());
    let lib: BTreeMap<u32, (usize, usize)> = lib.values().map(|e| (e.order, (e.count, e.orbits))).collect();
    ensure(lib == expected, format!("library census {lib:?}"))?;
    let el = t.elapsed();
    ensure(el < Duration::from_secs(30), format!("took {el:.2?}"))?;
    Ok(format!("orders 2,3,4,6,8,12 → 139/7, 80/3, 228/5, 464/7, 144/1, 96/1; {el:.2?}"))
}

/// (order, representative, free rank, elementary divisors) from the fixed-subtorus table.
const TABLE2: [(u32, usize, usize, &[u64]); 25] = [
    (1, 894, 4, &[]),
    (2, 1, 2, &[2]),
    (2, 3, 3, &[]),
    (2, 9, 2, &[]),
    (2, 19, 1, &[2, 2]),
    (2, 49, 1, &[2, 2]),
    (2, 259, 0, &[2, 2, 2, 2]),
    (2, 270, 3, &[]),
    (3, 4, 2, &[]),
    (3, 59, 0, &[3, 3]),
    (3, 96, 2, &[]),
    (4, 2, 1, &[2]),
    (4, 7, 1, &[2]),
    (4, 30, 2, &[]),
    (4, 34, 0, &[2, 2]),
    (4, 46, 0, &[2, 4]),
    (6, 10, 1, &[]),
    (6, 11, 1, &[]),
    (6, 20, 0, &[2, 2]),
    (6, 55, 0, &[2, 2]),
    (6, 56, 1, &[]),
    (6, 78, 1, &[]),
    (6, 318, 0, &[]),
    (8, 8, 0, &[2]),
    (12, 58, 0, &[]),
];

fn c3() -> Outcome {
    let g = isometry_group();
    let mut bad = Vec::new();
    for (ord, j, rank, elem) in TABLE2 {
        let m = g.matrix(j).map_err(|e| e.to_string())?;
        let own = fixed_torus_invariants(&[m]);
        let lib = d4_gradings::weyl::fixed_subtorus(&[*m]);
        let expected = (rank, invariant_factors(elem));
        if order(m) != ord || own != expected || (lib.rank, lib.torsion.clone()) != expected {
            bad.push(j);
        }
    }
    ensure(bad.is_empty(), format!("rows {bad:?} differ"))?;
    Ok("25/25 representatives: order and fixed-subtorus type agree".into())
}

fn c4() -> Outcome {
    let w = CycloScalar::root_of_unity(3).map_err(|e| e.to_string())?;
    let one = CycloScalar::one();
    let p = [vec![one.clone(), w.clone(), w.clone(), w.clone()], vec![w.clone(), one.clone(), w.clone(), one]];
    let g = isometry_group();
    let own: Vec<usize> = g.elements().filter(|e| p.iter().all(|t| act(&e.matrix, t) == *t)).map(|e| e.index).collect();
    let lib = d4_gradings::weyl::joint_stabilizer_indices(&p).map_err(|e| e.to_string())?;
    ensure(own == [59, 835, 894] && lib == own, format!("stabilizer {own:?} (library {lib:?})"))?;
    let m = |j| g.matrix(j).unwrap();
    let a = fixed_torus_invariants(&[m(4), m(952)]);
    let b = fixed_torus_invariants(&[m(1149), m(952)]);
    ensure(a == (0, vec![3]) && b == (0, vec![]), format!("intersections {a:?}, {b:?}"))?;
    Ok("stabilizer {59, 835, 894}; T4∩T952 ≅ Z3; T1149∩T952 = 1".into())
}

type Mat8 = [[i64; 8]; 8];

fn e(i: usize, j: usize) -> Mat8 {
    let mut m = [[0; 8]; 8];
    m[i - 1][j - 1] = 1;
    m
}

fn lin(a: &Mat8, b: &Mat8, s: i64) -> Mat8 {
    let mut m = *a;
    for i in 0..8 {
        for j in 0..8 {
            m[i][j] += s * b[i][j];
        }
    }
    m
}

fn comm(a: &Mat8, b: &Mat8) -> Mat8 {
    let mut m = [[0; 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            m[i][j] = (0..8).map(|k| a[i][k] * b[k][j] - b[i][k] * a[k][j]).sum();
        }
    }
    m
}

/// (kind, i, j, root) in the order of the display of the root-vector basis.
const DISPLAY: [(char, usize, usize, [i32; 4]); 12] = [
    ('b', 2, 1, [1, 0, 0, 0]),
    ('b', 3, 2, [0, 1, 0, 0]),
    ('b', 4, 3, [0, 0, 1, 0]),
    ('c', 3, 4, [0, 0, 0, 1]),
    ('b', 3, 1, [1, 1, 0, 0]),
    ('b', 4, 1, [1, 1, 1, 0]),
    ('b', 4, 2, [0, 1, 1, 0]),
    ('c', 4, 1, [1, 1, 0, 1]),
    ('c', 4, 2, [0, 1, 0, 1]),
    ('c', 2, 1, [1, 2, 1, 1]),
    ('c', 3, 1, [1, 1, 1, 1]),
    ('c', 2, 3, [0, 1, 1, 1]),
];

fn displayed_basis() -> Vec<(Mat8, Option<[i32; 4]>)> {
    let b = |i, j| lin(&e(j, i), &e(i + 4, j + 4), -1);
    let c = |i, j| lin(&e(j, i + 4), &e(i, j + 4), -1);
    let d = |i, j| lin(&e(i + 4, j), &e(j + 4, i), -1);
    let mut out: Vec<(Mat8, Option<[i32; 4]>)> = (1..=4).map(|i| (lin(&e(i, i), &e(i + 4, i + 4), -1), None)).collect();
    for &(k, i, j, r) in &DISPLAY {
        out.push((if k == 'b' { b(i, j) } else { c(i, j) }, Some(r)));
    }
    for &(k, i, j, r) in &DISPLAY {
        out.push((if k == 'b' { b(j, i) } else { d(i, j) }, Some(r.map(|x| -x))));
    }
    out
}

/// α(h) for h = Σ wᵢhᵢ, with αᵢ(h) = wᵢ − wᵢ₊₁ (i ≤ 3) and α₄(h) = w₃ + w₄.
fn root_value(r: &[i32; 4], w: &[i64; 4]) -> i64 {
    r[0] as i64 * (w[0] - w[1]) + r[1] as i64 * (w[1] - w[2]) + r[2] as i64 * (w[2] - w[3]) + r[3] as i64 * (w[2] + w[3])
}

fn c5() -> Outcome {
    let model = d4_model();
    let basis = displayed_basis();
    for (k, (m, _)) in basis.iter().enumerate() {
        ensure(model.basis_matrix(k) == *m, format!("basis element {k} differs from the formula"))?;
    }
    // every root vector has its displayed root
    let w = [3i64, 5, 11, 17];
    let h = (0..4).fold([[0; 8]; 8], |acc, i| lin(&acc, &basis[i].0, w[i]));
    for (k, (m, r)) in basis.iter().enumerate().skip(4) {
        let v = root_value(&r.unwrap(), &w);
        ensure(comm(&h, m) == m.map(|row| row.map(|x| v * x)), format!("[h, x_{k}] is not α(h)x"))?;
    }
    // structure constants reproduce matrix commutators
    let alg = &model.algebra;
    for i in 0..28 {
        for j in 0..28 {
            let mut recon = [[0i64; 8]; 8];
            for (k, c) in alg.basis_product(i, j) {
                let c = c.as_rational().filter(|q| q.is_integer()).ok_or("non-integer structure constant")?;
                let c = i64::try_from(c.to_integer()).map_err(|e| e.to_string())?;
                recon = lin(&recon, &basis[*k].0, c);
            }
            ensure(recon == comm(&basis[i].0, &basis[j].0), format!("structure constants of ({i}, {j})"))?;
        }
    }
    alg.check_lie().map_err(|e| e.to_string())?;
    let broken = alg.with_perturbed_constant(4, 5, 8, CycloScalar::one());
    ensure(broken.check_lie().is_err(), "a perturbed constant went unnoticed")?;
    // torus eigenvalues: diag{1,1,1,1, α, β, γ, δ, αβ, αβγ, βγ, αβδ, βδ, αβ²γδ, αβγδ, βγδ, inverses}
    let monomials: [[i32; 4]; 12] = [
        [1, 0, 0, 0],
        [0, 1, 0, 0],
        [0, 0, 1, 0],
        [0, 0, 0, 1],
        [1, 1, 0, 0],
        [1, 1, 1, 0],
        [0, 1, 1, 0],
        [1, 1, 0, 1],
        [0, 1, 0, 1],
        [1, 2, 1, 1],
        [1, 1, 1, 1],
        [0, 1, 1, 1],
    ];
    let vals = [2i64, 3, 5, 7];
    let t = torus_automorphism(&vals.map(CycloScalar::from_int)).map_err(|e| e.to_string())?;
    let tm = t.as_matrix().unwrap();
    ensure(tm.is_diagonal(), "torus element is not diagonal")?;
    for k in 0..28 {
        let exps = match k {
            0..=3 => [0; 4],
            4..=15 => monomials[k - 4],
            _ => monomials[k - 16].map(|x| -x),
        };
        let mut v = CycloScalar::one();
        for i in 0..4 {
            v = &v * &CycloScalar::from_int(vals[i]).pow(exps[i] as i64).unwrap();
        }
        ensure(*tm.get(k, k) == v, format!("torus eigenvalue at slot {k}"))?;
    }
    Ok("basis = displayed matrices; 24 roots; constants reproduce commutators; Jacobi on 28³; 28 torus monomials".into())
}

/// Every bracket of homogeneous elements lands in the component of the summed label.
fn multiplicative(alg: &AlgebraData, g: &Grading) -> Result<(), String> {
    let readers: Vec<SpanReader> = g.components.iter().map(|c| SpanReader::new(&c.basis).unwrap()).collect();
    let key = |f: &[i64], w: &[i64]| -> (Vec<i64>, Vec<i64>) { (f.to_vec(), w.to_vec()) };
    let lookup: HashMap<(Vec<i64>, Vec<i64>), usize> =
        g.components.iter().enumerate().map(|(i, c)| (key(&c.label.finite, &c.label.weights), i)).collect();
    let total: usize = g.components.iter().map(|c| c.basis.len()).sum();
    ensure(total == alg.dim(), format!("components span {total} dimensions"))?;
    for a in &g.components {
        for b in &g.components {
            let f: Vec<i64> = a.label.finite.iter().zip(&b.label.finite).zip(&g.moduli).map(|((x, y), &n)| (x + y).rem_euclid(n as i64)).collect();
            let w: Vec<i64> = a.label.weights.iter().zip(&b.label.weights).map(|(x, y)| x + y).collect();
            let target = lookup.get(&(f, w));
            for x in &a.basis {
                for y in &b.basis {
                    let p = alg.product(x, y);
                    if p.iter().all(CycloScalar::is_zero) {
                        continue;
                    }
                    match target {
                        Some(&t) if readers[t].contains(&p) => {}
                        _ => return Err("a bracket leaves the expected component".into()),
                    }
                }
            }
        }
    }
    Ok(())
}

/// (row, rank, elementary divisors, type, dim L_e) as printed.
const TABLE1: [(&str, usize, &[u64], &[usize], usize); 14] = [
    ("Q1", 0, &[2, 2, 2, 2, 2, 2, 2], &[28], 0),
    ("Q2", 1, &[2, 2, 2, 2, 2], &[28], 1),
    ("Q3", 2, &[2, 2, 2], &[26, 1], 2),
    ("Q4", 3, &[2], &[25, 0, 1], 3),
    ("Q5", 1, &[2, 2, 2], &[25, 0, 1], 1),
    ("Q6", 0, &[2, 2, 2, 4], &[24, 2], 0),
    ("Q7", 1, &[2, 2, 2, 2], &[28], 1),
    ("Q8", 0, &[2, 2, 2, 2, 2, 2], &[28], 0),
    ("Q9", 0, &[2, 2, 2, 2, 2], &[24, 0, 0, 1], 0),
    ("Q10", 2, &[2, 2], &[20, 4], 2),
    ("Q11", 4, &[], &[24, 0, 0, 1], 4),
    ("Q12", 0, &[2, 2, 2, 3], &[14, 7], 0),
    ("Q13", 2, &[3], &[26, 1], 2),
    ("Q14", 0, &[3, 3, 3], &[24, 2], 0),
];

fn c6() -> Outcome {
    let t = Instant::now();
    let alg = &d4_model().algebra;
    let mut twisted = Vec::new();
    for (name, rank, elem, ty, dim_e) in TABLE1 {
        let row = table1_row(name).ok_or(format!("{name} missing"))?;
        let r = run_table1_row(row);
        let c = r.computed.as_ref().ok_or(format!("{name}: {}", r.error.clone().unwrap_or_default()))?;
        ensure(
            c.group.rank == rank && c.group.torsion == invariant_factors(elem) && c.type_tuple == ty && c.dim_identity == dim_e,
            format!("{name}: computed {c}"),
        )?;
        let sum: usize = c.type_tuple.iter().enumerate().map(|(i, h)| (i + 1) * h).sum();
        ensure(sum == 28, format!("{name}: Σ i·hᵢ = {sum}"))?;
        let (spec, twist) = q_family(row).map_err(|e| e.to_string())?;
        if twist.changed() {
            twisted.push(name);
        }
        let g = compute_grading(alg, &spec).map_err(|e| e.to_string())?;
        multiplicative(alg, &g).map_err(|e| format!("{name}: {e}"))?;
    }
    let el = t.elapsed();
    ensure(el < Duration::from_secs(600), format!("took {el:.2?}"))?;
    let tw = if twisted.is_empty() { "no twist repair needed".to_string() } else { format!("twist repair used for {twisted:?}") };
    Ok(format!("14/14 rows match group, type, dim L_e; Σ i·hᵢ = 28; multiplicative; {tw}; {el:.2?}"))
}

fn c7() -> Outcome {
    let skip = [96, 270, 894, 318];
    let ws = nontorality_witnesses(&skip).map_err(|e| e.to_string())?;
    let expected: BTreeSet<usize> = TABLE2.iter().map(|r| r.1).filter(|j| !skip.contains(j)).collect();
    let got: BTreeSet<usize> = ws.iter().map(|w| w.index).collect();
    ensure(got == expected, "witness set differs from the representatives")?;
    for w in &ws {
        ensure(w.dim_identity == w.fixed_dim, format!("σ{}: dim L_e {} but fixed subalgebra {}", w.index, w.dim_identity, w.fixed_dim))?;
        ensure(w.dim_identity < 4, format!("σ{}: dim L_e = {}", w.index, w.dim_identity))?;
    }
    let max = ws.iter().map(|w| w.dim_identity).max().unwrap_or(0);
    Ok(format!("{} representatives, max dim L_e = {max}", ws.len()))
}

fn scale(v: &[CycloScalar], c: &CycloScalar) -> Vector {
    v.iter().map(|x| x * c).collect()
}

fn random_vec(rng: &mut ChaCha8Rng) -> Vector {
    (0..8).map(|_| random_scalar(rng)).collect()
}

fn check_symmetric(s: &CompositionAlgebraData, rng: &mut ChaCha8Rng, what: &str) -> Result<(), String> {
    s.check_symmetric_composition().map_err(|e| format!("{what}: {e}"))?;
    for _ in 0..4 {
        let (x, y) = (random_vec(rng), random_vec(rng));
        ensure(s.mul(&s.mul(&x, &y), &x) == scale(&y, &s.q(&x)), format!("{what}: (x*y)*x ≠ q(x)y for a random pair"))?;
    }
    Ok(())
}

fn c8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let c = build_cayley().map_err(|e| e.to_string())?;
    let unit = |i: usize| c.algebra.unit_vector(i);
    let neg = |v: Vector| -> Vector { v.iter().map(|x| -x).collect() };
    // e1 e2 u1 u2 u3 v1 v2 v3
    ensure(c.mul(&unit(2), &unit(3)) == unit(7) && c.mul(&unit(3), &unit(2)) == neg(unit(7)), "u1u2 = v3 = -u2u1")?;
    ensure(c.mul(&unit(5), &unit(6)) == neg(unit(4)) && c.mul(&unit(6), &unit(5)) == unit(4), "-v1v2 = u3 = v2v1")?;
    ensure(c.mul(&unit(0), &unit(2)) == unit(2) && c.mul(&unit(2), &unit(1)) == unit(2), "e1u = u = ue2")?;
    ensure(c.mul(&unit(2), &unit(5)) == unit(0) && c.mul(&unit(5), &unit(2)) == unit(1), "u1v1 = e1, v1u1 = e2")?;
    c.check_multiplicative().map_err(|e| e.to_string())?;
    let conj = c.conjugation.clone().unwrap();
    let mut one = unit(0);
    one[1] = CycloScalar::one();
    for _ in 0..4 {
        let (x, y) = (random_vec(&mut rng), random_vec(&mut rng));
        ensure(c.q(&c.mul(&x, &y)) == &c.q(&x) * &c.q(&y), "q(xy) ≠ q(x)q(y) for a random pair")?;
        ensure(c.mul(&x, &conj.mul_vec(&x)) == scale(&one, &c.q(&x)), "x x̄ ≠ q(x)1")?;
    }
    let p = build_para_hurwitz(&c).map_err(|e| e.to_string())?;
    check_symmetric(&p, &mut rng, "para-Hurwitz")?;
    let o = build_okubo().map_err(|e| e.to_string())?;
    check_symmetric(&o, &mut rng, "Okubo")?;

    let w = CycloScalar::root_of_unity(3).map_err(|e| e.to_string())?;
    let mu = okubo_mu().map_err(|e| e.to_string())?;
    ensure(&mu * &CycloScalar::from_int(3) == &CycloScalar::one() - &w, "μ ≠ (1-ω)/3")?;
    // the product recomputed from 3×3 matrices
    let third = CycloScalar::from_ratio(1, 3);
    for _ in 0..4 {
        let (x, y) = (random_vec(&mut rng), random_vec(&mut rng));
        let (mx, my) = (okubo_matrix(&x), okubo_matrix(&y));
        let xy = mx.mul(&my);
        let tr = &(xy.get(0, 0) + xy.get(1, 1)) + xy.get(2, 2);
        let prod = xy.scale(&mu).add(&my.mul(&mx).scale(&(&CycloScalar::one() - &mu))).shift(&(&tr * &third));
        ensure(okubo_coordinates(&prod).unwrap() == o.mul(&x, &y), "Okubo product differs from μxy+(1-μ)yx-tr(xy)/3")?;
    }
    let commutes_with = |k: &CycloScalar| {
        (0..8).all(|i| {
            (0..8).all(|j| {
                let (x, y) = (okubo_basis_matrix(i), okubo_basis_matrix(j));
                let lhs = okubo_coordinates(&x.mul(&y).sub(&y.mul(&x))).unwrap();
                let d: Vector = o.mul(&unit(i), &unit(j)).iter().zip(o.mul(&unit(j), &unit(i))).map(|(a, b)| a - &b).collect();
                lhs == scale(&d, k)
            })
        })
    };
    let k = okubo_commutator_factor().map_err(|e| e.to_string())?;
    ensure(commutes_with(&k), "[x,y] is not proportional to x*y - y*x")?;
    ensure(k == &CycloScalar::one() + &(&w * &CycloScalar::from_int(2)), "constant is not 1+2ω")?;
    let literal = commutes_with(&okubo_literal_commutator_factor().map_err(|e| e.to_string())?);
    Ok(format!(
        "Cayley norm multiplicative; (x*y)*x = q(x)y on 64 basis pairs (both); μ exact; [x,y] = (2μ-1)⁻¹(x*y - y*x) = (1+2ω)(x*y - y*x); printed constant (2ω-1)⁻¹ {}",
        if literal { "also holds" } else { "does not hold (misprint, see notes)" }
    ))
}

fn triality_checks(d: &TrialityData, expected: [usize; 3], der: usize) -> Result<String, String> {
    let n = d.so.maps.len();
    ensure(d.theta.pow(3).is_identity() && !d.theta.is_identity(), "θ does not have order 3")?;
    let alg = &d.so.algebra;
    let cols: Vec<Vector> = (0..n).map(|k| d.theta.column(k)).collect();
    for i in 0..n {
        for j in 0..n {
            ensure(d.theta.mul_vec(&alg.basis_product_dense(i, j)) == alg.product(&cols[i], &cols[j]), "θ breaks a bracket")?;
        }
    }
    // g(x*y) = θ(g)(x)*y + x*g⁺(y)
    let s = &d.composition;
    for k in 0..n {
        let g = &d.so.maps[k];
        let gm = d.so.element(&d.theta.column(k));
        let gp = d.so.element(&d.theta_plus.column(k));
        for x in 0..8 {
            for y in 0..8 {
                let (ex, ey) = (s.algebra.unit_vector(x), s.algebra.unit_vector(y));
                let lhs = g.mul_vec(&s.mul(&ex, &ey));
                let a = s.mul(&gm.mul_vec(&ex), &ey);
                let b = s.mul(&ex, &gp.mul_vec(&ey));
                let rhs: Vector = a.iter().zip(&b).map(|(p, q)| p + q).collect();
                ensure(lhs == rhs, "triality identity fails")?;
            }
        }
    }
    let w = CycloScalar::root_of_unity(3).map_err(|e| e.to_string())?;
    let dims: Vec<usize> = (0..3).map(|k| d.theta.shift(&w.pow(k).unwrap()).kernel().len()).collect();
    let der_dim = derivation_algebra(&s.algebra).map_err(|e| e.to_string())?.maps.len();
    ensure(dims == expected && der_dim == der && dims[0] == der_dim, format!("components {dims:?}, Der {der_dim}"))?;
    Ok(format!("components {dims:?}, Der {der_dim}"))
}

fn c9() -> Outcome {
    let a = triality_checks(para_hurwitz_triality().map_err(|e| e.to_string())?, [14, 7, 7], 14)?;
    let b = triality_checks(okubo_triality().map_err(|e| e.to_string())?, [8, 10, 10], 8)?;
    Ok(format!("θ³ = θ′³ = id, bracket-preserving, satisfy the triality identity; θ: {a}; θ′: {b}"))
}

fn c10() -> Outcome {
    let expected: [(TrialityGrading, usize, &[u64], &[usize], usize); 3] = [
        (TrialityGrading::P1, 2, &[3], &[26, 1], 2),
        (TrialityGrading::P2, 0, &[2, 2, 2, 3], &[14, 7], 0),
        (TrialityGrading::P3, 0, &[3, 3, 3], &[24, 2], 0),
    ];
    let mut parts = Vec::new();
    let mut p1 = None;
    for (p, rank, elem, ty, dim_e) in expected {
        let g = triality_grading(p).map_err(|e| e.to_string())?;
        let alg = match p {
            TrialityGrading::P3 => &okubo_triality().unwrap().so.algebra,
            _ => &para_hurwitz_triality().unwrap().so.algebra,
        };
        multiplicative(alg, &g).map_err(|e| format!("{}: {e}", p.name()))?;
        let c = g.invariants();
        ensure(
            c.group.rank == rank && c.group.torsion == invariant_factors(elem) && c.type_tuple == ty && c.dim_identity == dim_e,
            format!("{}: {c}", p.name()),
        )?;
        let q = table1_row(p.counterpart().unwrap()).unwrap().expected();
        ensure(c == q, format!("{} differs from {}", p.name(), p.counterpart().unwrap()))?;
        parts.push(format!("{}={}", p.name(), p.counterpart().unwrap()));
        if p == TrialityGrading::P1 {
            p1 = Some(c);
        }
    }
    let p4 = triality_grading(TrialityGrading::P4).map_err(|e| e.to_string())?;
    multiplicative(&okubo_triality().unwrap().so.algebra, &p4)?;
    let p4 = p4.invariants();
    let rel = if Some(&p4) == p1.as_ref() { "equal to P1" } else { "differs from P1" };
    Ok(format!("{}; P4 reported: {p4} ({rel})", parts.join(", ")))
}

fn c11() -> Outcome {
    let p = run_properties(DEFAULT_SEED, 50).map_err(|e| e.to_string())?;
    ensure(p.passed(), p.summary())?;
    Ok(format!("seed {DEFAULT_SEED:#x}: {}; σ·t is the printed monomial action", p.summary()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("isometry group", c1),
        ("conjugacy census", c2),
        ("fixed subtori table", c3),
        ("stabilizer anchor", c4),
        ("Lie algebra model", c5),
        ("Table 1", c6),
        ("nontorality witnesses", c7),
        ("composition algebras", c8),
        ("triality", c9),
        ("cross-validation", c10),
        ("property suites", c11),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let el = t.elapsed();
        match r {
            Ok(msg) => println!("criterion {:>2} PASS {name}: {msg} [{el:.2?}]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {msg} [{el:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
