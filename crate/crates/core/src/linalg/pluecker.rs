use std::collections::BTreeMap;

use num_traits::Zero;

use super::{LinalgError, QMatrix, Rational};
use crate::subsets::{self, Set};

/// Maximal minors `q_I` of a full-rank `k x n` matrix, indexed by k-subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlueckerVector {
    k: usize,
    n: usize,
    coords: BTreeMap<Set, Rational>,
}

impl PlueckerVector {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `q_I`; zero for subsets of the wrong size.
    pub fn get(&self, set: Set) -> Rational {
        self.coords.get(&set).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Set, &Rational)> {
        self.coords.iter().map(|(s, q)| (*s, q))
    }

    /// Support of the vector, i.e. the bases of the represented matroid.
    pub fn support(&self) -> Vec<Set> {
        self.coords
            .iter()
            .filter(|(_, q)| !q.is_zero())
            .map(|(s, _)| *s)
            .collect()
    }

    pub fn scaled(&self, c: &Rational) -> PlueckerVector {
        PlueckerVector {
            k: self.k,
            n: self.n,
            coords: self.coords.iter().map(|(s, q)| (*s, q * c)).collect(),
        }
    }
}

/// Plücker coordinates of the row space of `m`.
pub fn pluecker(m: &QMatrix) -> Result<PlueckerVector, LinalgError> {
    let (k, n) = (m.rows(), m.cols());
    let rank = m.rank();
    if rank < k {
        return Err(LinalgError::NotAPoint { k, n, rank });
    }
    let coords = subsets::k_subsets_revlex(n, k)
        .into_iter()
        .map(|s| {
            let cols: Vec<usize> = subsets::elements(s).collect();
            let det = m
                .select_columns(&cols)
                .determinant()
                .expect("square by construction");
            (s, det)
        })
        .collect();
    Ok(PlueckerVector { k, n, coords })
}

/// `(-1)^{#{s in S : s > i}}`: the parity of sorting `i` into `S` when it
/// is appended at the end.
pub fn sign_insert(s: Set, i: usize) -> Result<i8, LinalgError> {
    if subsets::contains(s, i) {
        return Err(LinalgError::ElementInSet(i + 1));
    }
    let larger = (s >> i >> 1).count_ones();
    Ok(if larger.is_multiple_of(2) { 1 } else { -1 })
}

/// Sign of the permutation that lists sorted `a` followed by sorted `b`.
pub fn shuffle_sign(a: Set, b: Set) -> i8 {
    let inversions: u32 = subsets::elements(b).map(|j| (a >> j).count_ones()).sum();
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// The `C(n,k-1) x n` matrix with entry `sign_insert(I,j) * q_{I+j}` for
/// `j` outside `I`, rows in lex order of the (k-1)-subsets.
pub fn cocircuit_matrix(q: &PlueckerVector) -> QMatrix {
    let rows = cocircuit_rows(q);
    let mut d = QMatrix::zeros(rows.len(), q.n);
    for (r, &set) in rows.iter().enumerate() {
        for j in 0..q.n {
            if subsets::contains(set, j) {
                continue;
            }
            let sign = sign_insert(set, j).expect("j outside set");
            let v = q.get(set | subsets::singleton(j));
            d.set(r, j, if sign > 0 { v } else { -v });
        }
    }
    d
}

/// Row labels of [`cocircuit_matrix`].
pub fn cocircuit_rows(q: &PlueckerVector) -> Vec<Set> {
    subsets::k_subsets_lex(q.n, q.k.saturating_sub(1))
}
