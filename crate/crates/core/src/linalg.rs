//! Exact integer linear algebra: determinants, rank, principal minors and
//! characteristic polynomials. Nothing in here rounds.
//!
//! Determinant and rank use fraction-free (Bareiss) elimination. Every
//! intermediate entry is a minor of the input, so the divisions are exact.
//! Small inputs run on `i128` with overflow checks and fall back to
//! `BigInt` when a product would not fit.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A square matrix of arbitrary-precision integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_rows<T, R>(rows: &[R]) -> Result<Self>
    where
        T: Into<BigInt> + Clone,
        R: AsRef<[T]>,
    {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            let row = row.as_ref();
            if row.len() != dim {
                return Err(Error::NotSquare {
                    rows: dim,
                    cols: row.len(),
                });
            }
            entries.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix { dim, entries })
    }

    /// Builds a `dim x dim` matrix from `f(i, j)`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        IntMatrix { dim, entries }
    }

    pub fn zeros(dim: usize) -> Self {
        IntMatrix {
            dim,
            entries: vec![BigInt::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { BigInt::one() } else { BigInt::zero() })
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: impl Into<BigInt>) {
        self.entries[i * self.dim + j] = value.into();
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        self.entries.chunks(self.dim.max(1)).take(self.dim)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// The matrix with row and column `i` removed.
    pub fn principal_submatrix(&self, i: usize) -> Result<IntMatrix> {
        if i >= self.dim {
            return Err(Error::VertexOutOfRange {
                index: i,
                len: self.dim,
            });
        }
        let keep: Vec<usize> = (0..self.dim).filter(|&k| k != i).collect();
        Ok(self.select(&keep))
    }

    /// Principal submatrix on the given indices, in the given order.
    pub fn select(&self, indices: &[usize]) -> IntMatrix {
        IntMatrix::from_fn(indices.len(), |r, c| self.get(indices[r], indices[c]).clone())
    }

    /// `P M P^T` where row `k` of the result is row `perm[k]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> IntMatrix {
        assert_eq!(perm.len(), self.dim);
        self.select(perm)
    }

    fn to_i128(&self) -> Option<Vec<i128>> {
        self.entries.iter().map(|x| x.to_i64().map(i128::from)).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        IntMatrix::from_fn(n, |i, j| {
            (0..n).fold(BigInt::zero(), |acc, k| acc + self.get(i, k) * other.get(k, j))
        })
    }

    pub fn trace(&self) -> BigInt {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Entry type for the shared elimination routines.
trait Exact: Clone + PartialEq {
    fn zero_value() -> Self;
    fn one_value() -> Self;
    fn is_zero_value(&self) -> bool;
    /// `(a * d - b * c) / p`, `None` on overflow.
    fn bareiss_step(a: &Self, d: &Self, b: &Self, c: &Self, p: &Self) -> Option<Self>;
    fn negated(self) -> Self;
}

impl Exact for i128 {
    fn zero_value() -> Self {
        0
    }
    fn one_value() -> Self {
        1
    }
    fn is_zero_value(&self) -> bool {
        *self == 0
    }
    fn bareiss_step(a: &Self, d: &Self, b: &Self, c: &Self, p: &Self) -> Option<Self> {
        let num = a.checked_mul(*d)?.checked_sub(b.checked_mul(*c)?)?;
        debug_assert_eq!(num % p, 0);
        Some(num / p)
    }
    fn negated(self) -> Self {
        -self
    }
}

impl Exact for BigInt {
    fn zero_value() -> Self {
        Zero::zero()
    }
    fn one_value() -> Self {
        One::one()
    }
    fn is_zero_value(&self) -> bool {
        Zero::is_zero(self)
    }
    fn bareiss_step(a: &Self, d: &Self, b: &Self, c: &Self, p: &Self) -> Option<Self> {
        let num = a * d - b * c;
        debug_assert!(Zero::is_zero(&(&num % p)));
        Some(num / p)
    }
    fn negated(self) -> Self {
        -self
    }
}

fn bareiss_det<T: Exact>(mut m: Vec<T>, n: usize) -> Option<T> {
    if n == 0 {
        return Some(T::one_value());
    }
    let mut negate = false;
    let mut prev = T::one_value();
    for k in 0..n - 1 {
        if m[k * n + k].is_zero_value() {
            let Some(p) = (k + 1..n).find(|&i| !m[i * n + k].is_zero_value()) else {
                return Some(T::zero_value());
            };
            for j in 0..n {
                m.swap(k * n + j, p * n + j);
            }
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i * n + j] =
                    T::bareiss_step(&m[i * n + j], &m[k * n + k], &m[i * n + k], &m[k * n + j], &prev)?;
            }
        }
        prev = m[k * n + k].clone();
    }
    let det = m[n * n - 1].clone();
    Some(if negate { det.negated() } else { det })
}

fn bareiss_rank<T: Exact>(mut m: Vec<T>, n: usize) -> Option<usize> {
    let mut rank = 0;
    let mut prev = T::one_value();
    for col in 0..n {
        let Some(p) = (rank..n).find(|&i| !m[i * n + col].is_zero_value()) else {
            continue;
        };
        if p != rank {
            for j in 0..n {
                m.swap(rank * n + j, p * n + j);
            }
        }
        for i in rank + 1..n {
            for j in col + 1..n {
                m[i * n + j] = T::bareiss_step(
                    &m[i * n + j],
                    &m[rank * n + col],
                    &m[i * n + col],
                    &m[rank * n + j],
                    &prev,
                )?;
            }
            m[i * n + col] = T::zero_value();
        }
        prev = m[rank * n + col].clone();
        rank += 1;
        if rank == n {
            break;
        }
    }
    Some(rank)
}

/// Exact determinant.
pub fn determinant(m: &IntMatrix) -> BigInt {
    let n = m.dim();
    if let Some(det) = m.to_i128().and_then(|small| bareiss_det(small, n)) {
        return BigInt::from(det);
    }
    bareiss_det(m.entries.clone(), n).expect("BigInt elimination cannot overflow")
}

/// Exact rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    let n = m.dim();
    if let Some(r) = m.to_i128().and_then(|small| bareiss_rank(small, n)) {
        return r;
    }
    bareiss_rank(m.entries.clone(), n).expect("BigInt elimination cannot overflow")
}

/// `dim - rank`; for a symmetric matrix this is the multiplicity of the
/// eigenvalue zero.
pub fn nullity(m: &IntMatrix) -> usize {
    m.dim() - rank(m)
}

/// Determinant of `m` with row and column `i` removed.
pub fn principal_minor(m: &IntMatrix, i: usize) -> Result<BigInt> {
    if m.dim() < 2 {
        return Err(Error::GraphTooSmall(m.dim()));
    }
    Ok(determinant(&m.principal_submatrix(i)?))
}

/// Exact `det(xI - M)` by the Faddeev-LeVerrier recurrence.
///
/// With `N_0 = 0` and `c_n = 1`, for `k = 1..=n`:
/// `N_k = M N_(k-1) + c_(n-k+1) I` and `c_(n-k) = -tr(M N_k) / k`.
/// The division is exact for integer `M`.
pub fn char_poly(m: &IntMatrix) -> IntPolynomial {
    let n = m.dim();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut acc = IntMatrix::zeros(n);
    for k in 1..=n {
        let mut next = m.mul(&acc);
        for i in 0..n {
            let d = next.get(i, i) + &coeffs[n - k + 1];
            next.set(i, i, d);
        }
        let t = m.mul(&next).trace();
        debug_assert!((&t % BigInt::from(k)).is_zero());
        coeffs[n - k] = -(t / BigInt::from(k));
        acc = next;
    }
    IntPolynomial::new(coeffs)
}

/// Integer polynomial, coefficients lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn sub(&self, other: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = BigInt::zero();
        let out = (0..len)
            .map(|i| {
                self.coeffs.get(i).unwrap_or(&zero) - other.coeffs.get(i).unwrap_or(&zero)
            })
            .collect();
        Self::new(out)
    }

    pub fn eval_at_zero(&self) -> BigInt {
        self.coeffs.first().cloned().unwrap_or_default()
    }

    /// Multiplicity of the root `0`. The zero polynomial reports 0.
    pub fn trailing_zero_count(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (deg, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let abs = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_coeff = deg == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match deg {
                0 => {}
                1 => f.write_str("x")?,
                d => write!(f, "x^{d}")?,
            }
        }
        Ok(())
    }
}
