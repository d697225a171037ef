use super::{QMatrix, Rational};

/// Row index of the monomial `x_i x_j` (`i <= j`) among the
/// `k(k+1)/2` quadratic monomials ordered `(0,0), (0,1), .., (0,k-1), (1,1), ..`.
pub fn veronese_index(k: usize, i: usize, j: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    // rows before block i: k + (k-1) + .. + (k-i+1)
    i * k - i * (i.saturating_sub(1)) / 2 + (j - i)
}

/// Applies the degree-2 Veronese map to every column. Cross terms carry
/// coefficient 1, so `multi_veronese(M) * lambda = 0` is literally the
/// entrywise statement `M diag(lambda) M^t = 0`.
pub fn multi_veronese(m: &QMatrix) -> QMatrix {
    let k = m.rows();
    let rows = k * (k + 1) / 2;
    let mut out = QMatrix::zeros(rows, m.cols());
    for c in 0..m.cols() {
        let mut r = 0;
        for i in 0..k {
            for j in i..k {
                out.set(r, c, m.get(i, c) * m.get(j, c));
                r += 1;
            }
        }
    }
    out
}

/// The matrix `G^[2]` with `multi_veronese(G * M) = G^[2] * multi_veronese(M)`.
pub fn symmetric_square(g: &QMatrix) -> QMatrix {
    let k = g.rows();
    assert_eq!(k, g.cols(), "symmetric square of a non-square matrix");
    let dim = k * (k + 1) / 2;
    let mut out = QMatrix::zeros(dim, dim);
    for a in 0..k {
        for b in a..k {
            let row = veronese_index(k, a, b);
            for i in 0..k {
                for j in i..k {
                    let col = veronese_index(k, i, j);
                    let v: Rational = if i == j {
                        g.get(a, i) * g.get(b, i)
                    } else {
                        g.get(a, i) * g.get(b, j) + g.get(a, j) * g.get(b, i)
                    };
                    out.set(row, col, v);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;

    #[test]
    fn identity_columns() {
        let v = multi_veronese(&QMatrix::identity(2));
        assert_eq!(v, QMatrix::from_i64(&[&[1, 0], &[0, 0], &[0, 1]]));
    }

    #[test]
    fn all_ones_column() {
        let v = multi_veronese(&QMatrix::from_i64(&[&[1], &[1]]));
        assert_eq!(v, QMatrix::from_i64(&[&[1], &[1], &[1]]));
    }

    #[test]
    fn index_layout() {
        let k = 4;
        let mut expected = 0;
        for i in 0..k {
            for j in i..k {
                assert_eq!(veronese_index(k, i, j), expected);
                assert_eq!(veronese_index(k, j, i), expected);
                expected += 1;
            }
        }
    }

    #[test]
    fn change_of_basis_fixture() {
        let g = QMatrix::from_i64(&[&[1, 2, 0], &[0, 1, -1], &[3, 0, 1]]);
        let m = QMatrix::from_i64(&[&[1, 0, 2, -1, 5], &[0, 3, 1, 1, -2], &[4, 1, 0, 2, 1]]);
        let lhs = multi_veronese(&g.mul(&m).unwrap());
        let rhs = symmetric_square(&g).mul(&multi_veronese(&m)).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.get(0, 0), &rat(1));
    }
}
