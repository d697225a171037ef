//! Exact dense linear algebra over the rationals.

mod pluecker;
mod veronese;

pub use pluecker::{cocircuit_matrix, pluecker, shuffle_sign, sign_insert, PlueckerVector};
pub use veronese::{multi_veronese, symmetric_square, veronese_index};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("not a point of Gr({k},{n}): matrix has rank {rank}")]
    NotAPoint { k: usize, n: usize, rank: usize },
    #[error("element {0} already belongs to the subset")]
    ElementInSet(usize),
    #[error("could not parse matrix: {0}")]
    Parse(String),
}

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

/// Result of exact Gauss-Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: QMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self, LinalgError> {
        if rows * cols != entries.len() {
            return Err(LinalgError::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(QMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::DimensionMismatch("ragged rows".into()));
        }
        Ok(QMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor for integer fixtures.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| rat(v)).collect()).collect())
            .expect("rectangular fixture")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(l, j);
                    if !b.is_zero() {
                        let idx = i * other.cols + j;
                        out.entries[idx] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    /// `self * diag(d)`.
    pub fn scale_columns(&self, d: &[Rational]) -> Result<QMatrix, LinalgError> {
        if d.len() != self.cols {
            return Err(LinalgError::DimensionMismatch("diagonal length".into()));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            for (j, dj) in d.iter().enumerate() {
                out.entries[i * self.cols + j] *= dj;
            }
        }
        Ok(out)
    }

    pub fn select_columns(&self, cols: &[usize]) -> QMatrix {
        let mut out = QMatrix::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (jj, &j) in cols.iter().enumerate() {
                out.set(i, jj, self.get(i, j).clone());
            }
        }
        out
    }

    /// Horizontal concatenation `(self | other)`.
    pub fn hcat(&self, other: &QMatrix) -> Result<QMatrix, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch("row counts differ".into()));
        }
        let mut out = QMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                out.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(out)
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        let rank = pivots.len();
        Rref {
            matrix: m,
            pivots,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right kernel, one vector per free column of the RREF.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rational::zero(); self.cols];
            v[free] = Rational::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -matrix.get(r, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    pub fn determinant(&self) -> Result<Rational, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != c {
                m.swap_rows(c, p);
                det = -det;
            }
            let piv = m.get(c, c).clone();
            det *= &piv;
            for i in c + 1..n {
                if m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c) / &piv;
                for j in c..n {
                    let v = m.get(i, j) - &f * m.get(c, j);
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    pub fn inverse(&self) -> Option<QMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = self.hcat(&QMatrix::identity(n)).ok()?;
        let r = aug.rref();
        if r.pivots.iter().take(n).copied().ne(0..n) {
            return None;
        }
        let cols: Vec<usize> = (n..2 * n).collect();
        Some(r.matrix.select_columns(&cols))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl fmt::Display for QMatrix {
    /// Whitespace separated rows, the same format accepted by `FromStr`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for QMatrix {
    type Err = LinalgError;

    /// One row per non-empty line, entries `num` or `num/den`; lines starting
    /// with `#` are ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut rows = Vec::new();
        for (lineno, line) in s.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let row = line
                .split_whitespace()
                .map(parse_rational)
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| LinalgError::Parse(format!("line {}: {e}", lineno + 1)))?;
            rows.push(row);
        }
        if rows.is_empty() {
            return Err(LinalgError::Parse("empty matrix".into()));
        }
        QMatrix::from_rows(rows)
    }
}

/// Parses `a` or `a/b` into a normalized rational.
pub fn parse_rational(tok: &str) -> Result<Rational, String> {
    let (num, den) = match tok.split_once('/') {
        Some((n, d)) => (n, d),
        None => (tok, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| format!("bad rational '{tok}'"))?;
    let den: BigInt = den.trim().parse().map_err(|_| format!("bad rational '{tok}'"))?;
    if den.is_zero() {
        return Err(format!("zero denominator in '{tok}'"));
    }
    Ok(Rational::new(num, den))
}

/// Clears denominators and removes the content; the first nonzero entry
/// becomes positive. Zero vectors are returned unchanged.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<Rational> {
    use num_integer::Integer;
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = ints
        .iter()
        .find(|x| !x.is_zero())
        .map_or(BigInt::one(), |x| x.signum());
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &g * &sign))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_of_identity_is_identity() {
        let r = QMatrix::identity(2).rref();
        assert_eq!(r.matrix, QMatrix::identity(2));
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn rref_of_proportional_rows() {
        let r = QMatrix::from_i64(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r.matrix, QMatrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn identity_has_empty_kernel() {
        assert!(QMatrix::identity(4).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = QMatrix::from_i64(&[&[1, 2, 3, 4], &[2, 4, 6, 9]]);
        let ker = m.kernel_basis();
        assert_eq!(ker.len() + m.rank(), 4);
        for v in &ker {
            assert!(m.mul_vec(v).unwrap().iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn determinant_and_inverse() {
        let m = QMatrix::from_i64(&[&[2, 1], &[7, 4]]);
        assert_eq!(m.determinant().unwrap(), rat(1));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), QMatrix::identity(2));
        assert!(QMatrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn parse_and_display_round_trip() {
        let m: QMatrix = "1 0 3/5 -4/5\n0 1 4/5 3/5\n".parse().unwrap();
        assert_eq!(m.get(0, 3), &ratio(-4, 5));
        assert_eq!(m.to_string().parse::<QMatrix>().unwrap(), m);
        assert!("1 2\n3".parse::<QMatrix>().is_err());
        assert!("1/0".parse::<QMatrix>().is_err());
    }

    #[test]
    fn primitive_vector_normalization() {
        let v = vec![ratio(-1, 2), ratio(1, 3), rat(0)];
        assert_eq!(primitive_integer_vector(&v), vec![rat(3), rat(-2), rat(0)]);
    }
}
