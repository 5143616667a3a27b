//! Exact arithmetic in the cyclotomic field Q(ζ_N).
//!
//! Elements are stored in the power basis 1, ζ, …, ζ^{φ(N)-1} reduced modulo the
//! N-th cyclotomic polynomial, so two elements are equal exactly when their
//! coefficient vectors are equal. The conductor is process-wide: it is fixed by
//! [`init_conductor`] or defaults to 24 on first use.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

pub const DEFAULT_CONDUCTOR: u32 = 24;

static FIELD: OnceLock<CyclotomicField> = OnceLock::new();

/// Fix the conductor for the lifetime of the process.
///
/// Calling this after the field has been used (or initialized) with a
/// different conductor is an error; re-initializing with the same value is a
/// no-op.
pub fn init_conductor(n: u32) -> Result<&'static CyclotomicField> {
    if n == 0 {
        return Err(Error::ConductorInsufficient { conductor: 0, required: 1 });
    }
    let f = FIELD.get_or_init(|| CyclotomicField::new(n));
    if f.conductor != n {
        return Err(Error::ConductorLocked { current: f.conductor, requested: n });
    }
    Ok(f)
}

pub fn field() -> &'static CyclotomicField {
    FIELD.get_or_init(|| CyclotomicField::new(DEFAULT_CONDUCTOR))
}

/// Precomputed data for Q(ζ_N).
#[derive(Debug)]
pub struct CyclotomicField {
    conductor: u32,
    degree: usize,
    /// Φ_N, lowest coefficient first.
    phi: Vec<i64>,
    /// x^k mod Φ_N for 0 ≤ k < 2·degree − 1.
    reduction: Vec<Vec<i64>>,
    /// ζ^k for 0 ≤ k < N.
    powers: Vec<Vec<i64>>,
}

impl CyclotomicField {
    fn new(n: u32) -> Self {
        let phi = cyclotomic_polynomial(n);
        let degree = phi.len() - 1;
        let reduce_step = |v: &[i64]| -> Vec<i64> {
            // multiply by x, then fold x^degree = -Σ phi_i x^i
            let mut out = vec![0i64; degree];
            let top = v[degree - 1];
            for i in (1..degree).rev() {
                out[i] = v[i - 1];
            }
            out[0] = 0;
            if top != 0 {
                for i in 0..degree {
                    out[i] -= top * phi[i];
                }
            }
            out
        };
        let mut unit = vec![0i64; degree];
        unit[0] = 1;
        let mut reduction = Vec::with_capacity(2 * degree);
        let mut cur = unit.clone();
        for _ in 0..(2 * degree).max(1) {
            reduction.push(cur.clone());
            cur = reduce_step(&cur);
        }
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = unit;
        for _ in 0..n {
            powers.push(cur.clone());
            cur = reduce_step(&cur);
        }
        CyclotomicField { conductor: n, degree, phi, reduction, powers }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// φ(N), the dimension of the field over Q.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Coefficients of Φ_N, constant term first.
    pub fn cyclotomic_polynomial(&self) -> &[i64] {
        &self.phi
    }
}

/// Integer coefficients of Φ_n, constant term first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in 1..n {
        if n % d == 0 {
            num = poly_div_exact(&num, &cyclotomic_polynomial(d));
        }
    }
    num
}

fn poly_div_exact(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut q = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        q[k] = c;
        if c != 0 {
            for (i, &d) in den.iter().enumerate() {
                rem[k + i] -= c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    q
}

/// An element of Q(ζ_N) in canonical power-basis form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloScalar {
    coeffs: Vec<Rational>,
}

impl CycloScalar {
    pub fn zero() -> Self {
        CycloScalar { coeffs: vec![Rational::zero(); field().degree] }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut s = Self::zero();
        s.coeffs[0] = q;
        s
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// Build from power-basis coordinates; the length must equal φ(N).
    pub fn from_coeffs(coeffs: Vec<Rational>) -> Result<Self> {
        let d = field().degree;
        if coeffs.len() != d {
            return Err(Error::Dimension(format!("expected {d} coefficients, got {}", coeffs.len())));
        }
        Ok(CycloScalar { coeffs })
    }

    fn from_int_vec(v: &[i64]) -> Self {
        CycloScalar { coeffs: v.iter().map(|&c| Rational::from_integer(BigInt::from(c))).collect() }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn conductor(&self) -> u32 {
        field().conductor
    }

    /// ζ_N^k for any integer k.
    pub fn zeta_power(k: i64) -> Self {
        let f = field();
        let n = f.conductor as i64;
        Self::from_int_vec(&f.powers[k.rem_euclid(n) as usize])
    }

    /// ζ_d = ζ_N^{N/d}.
    pub fn root_of_unity(d: u32) -> Result<Self> {
        let n = field().conductor;
        if d == 0 || n % d != 0 {
            return Err(Error::ConductorInsufficient { conductor: n, required: d });
        }
        Ok(Self::zeta_power((n / d) as i64))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, when the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// The k in [0, N) with self = ζ_N^k, if self is an N-th root of unity.
    pub fn root_of_unity_exponent(&self) -> Option<u32> {
        let f = field();
        let target: Vec<Rational> = self.coeffs.clone();
        f.powers.iter().position(|p| {
            p.iter().zip(&target).all(|(&a, b)| b.is_integer() && *b.numer() == BigInt::from(a))
        })
        .map(|k| k as u32)
    }

    /// Multiplicative order if self is a root of unity in the field.
    pub fn multiplicative_order(&self) -> Option<u32> {
        let n = field().conductor;
        self.root_of_unity_exponent().map(|k| n / num_integer::gcd(n, k))
    }

    fn scale_rational(&self, q: &Rational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        if q.is_one() {
            return self.clone();
        }
        CycloScalar { coeffs: self.coeffs.iter().map(|c| c * q).collect() }
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        if let Some(q) = self.as_rational() {
            return rhs.scale_rational(q);
        }
        if let Some(q) = rhs.as_rational() {
            return self.scale_rational(q);
        }
        let f = field();
        let d = f.degree;
        let mut prod = vec![Rational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<Rational> = prod[..d].to_vec();
        for (k, c) in prod.iter().enumerate().skip(d) {
            if c.is_zero() {
                continue;
            }
            for (i, &r) in f.reduction[k].iter().enumerate() {
                if r != 0 {
                    out[i] += c * Rational::from_integer(BigInt::from(r));
                }
            }
        }
        CycloScalar { coeffs: out }
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.recip()));
        }
        if let Some(k) = self.root_of_unity_exponent() {
            return Ok(Self::zeta_power(-(k as i64)));
        }
        // Solve (multiplication-by-self) · y = 1 over Q.
        let d = field().degree;
        let mut basis = Self::zero();
        let mut cols: Vec<Vec<Rational>> = Vec::with_capacity(d);
        for i in 0..d {
            basis.coeffs.iter_mut().for_each(|c| *c = Rational::zero());
            basis.coeffs[i] = Rational::one();
            cols.push(self.mul_ref(&basis).coeffs);
        }
        let mut aug: Vec<Vec<Rational>> = (0..d)
            .map(|r| {
                let mut row: Vec<Rational> = (0..d).map(|c| cols[c][r].clone()).collect();
                row.push(if r == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for c in 0..d {
            let p = (c..d).find(|&r| !aug[r][c].is_zero()).ok_or(Error::DivisionByZero)?;
            aug.swap(c, p);
            let piv = aug[c][c].recip();
            for x in aug[c].iter_mut() {
                *x *= &piv;
            }
            for r in 0..d {
                if r != c && !aug[r][c].is_zero() {
                    let factor = aug[r][c].clone();
                    let pivot_row = aug[c].clone();
                    for (x, y) in aug[r].iter_mut().zip(pivot_row.iter()) {
                        *x -= &factor * y;
                    }
                }
            }
        }
        Ok(CycloScalar { coeffs: aug.into_iter().map(|row| row[d].clone()).collect() })
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(acc)
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }
}

impl Default for CycloScalar {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for CycloScalar {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl<'a> Add<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: &CycloScalar) -> CycloScalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: &CycloScalar) -> CycloScalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a CycloScalar> for &'a CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: &CycloScalar) -> CycloScalar {
        self.mul_ref(rhs)
    }
}

impl Add for CycloScalar {
    type Output = CycloScalar;
    fn add(mut self, rhs: CycloScalar) -> CycloScalar {
        self += &rhs;
        self
    }
}

impl Sub for CycloScalar {
    type Output = CycloScalar;
    fn sub(mut self, rhs: CycloScalar) -> CycloScalar {
        self -= &rhs;
        self
    }
}

impl Mul for CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: CycloScalar) -> CycloScalar {
        self.mul_ref(&rhs)
    }
}

impl AddAssign<&CycloScalar> for CycloScalar {
    fn add_assign(&mut self, rhs: &CycloScalar) {
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl SubAssign<&CycloScalar> for CycloScalar {
    fn sub_assign(&mut self, rhs: &CycloScalar) {
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar { coeffs: self.coeffs.into_iter().map(|c| -c).collect() }
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        -(self.clone())
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        if let Some(k) = self.root_of_unity_exponent() {
            return write!(f, "z^{k}");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "z")?,
                (1, false) => write!(f, "{mag}*z")?,
                (_, true) => write!(f, "z^{i}")?,
                (_, false) => write!(f, "{mag}*z^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
