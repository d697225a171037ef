//! Realization spaces of matroids and their self-projecting parts.

mod sgr;
mod spaces;

pub use sgr::{sgr_vanishing_test, SgrVanishing};
pub use spaces::{
    compare_spaces, rational_point, realization_space, sp_realization_space, sp_realization_space_from, Comparison, RealizationOptions,
    RealizationSpace, SpMode, SpaceKind,
};

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::matroid::Matroid;
use crate::poly::{MonomialOrder, PolyError, Polynomial, Ring};
use crate::subsets::{self, Set};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealizationError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("spaces were computed in different coordinates")]
    CoordinateMismatch,
    #[error("unsupported shape ({k}, {n})")]
    Unsupported { k: usize, n: usize },
    #[error("inconsistent spaces: {0}")]
    Inconsistent(String),
}

/// Where the variable entries of the symbolic matrix are pinned to 1.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum NormalizationRule {
    /// Topmost free entry of each column, then the leftmost free entry of
    /// every row still without a 1, then row-major completion to a spanning
    /// forest of the support graph.
    #[default]
    TopLeft,
    /// Mirror image: bottommost per column, rightmost per row, completion in
    /// reverse row-major order.
    BottomRight,
}

/// One entry of the symbolic `(Id_k | x)` matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Entry {
    Zero,
    One,
    Var(usize),
}

/// A matroid relabeled so that `{0..k-1}` is a basis, with the symbolic
/// matrix used to parametrize its realizations.
#[derive(Clone, Debug)]
pub struct CoordinatizedMatroid {
    matroid: Matroid,
    relabeling: Vec<usize>,
    entries: Vec<Vec<Entry>>,
    normalized: Vec<(usize, usize)>,
    ring: Arc<Ring>,
}

impl PartialEq for CoordinatizedMatroid {
    fn eq(&self, o: &Self) -> bool {
        self.matroid == o.matroid && self.relabeling == o.relabeling && self.entries == o.entries
    }
}

impl CoordinatizedMatroid {
    /// The relabeled matroid.
    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    /// Original element `i` sits in column `relabeling[i]`.
    pub fn relabeling(&self) -> &[usize] {
        &self.relabeling
    }

    pub fn entries(&self) -> &[Vec<Entry>] {
        &self.entries
    }

    /// `(row, column)` positions pinned to 1, 0-based.
    pub fn normalized(&self) -> &[(usize, usize)] {
        &self.normalized
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn k(&self) -> usize {
        self.matroid.rank()
    }

    pub fn n(&self) -> usize {
        self.matroid.n()
    }

    pub fn entry_poly(&self, i: usize, j: usize) -> Polynomial {
        match self.entries[i][j] {
            Entry::Zero => Polynomial::zero(&self.ring),
            Entry::One => Polynomial::one(&self.ring),
            Entry::Var(v) => Polynomial::var(&self.ring, v),
        }
    }

    /// Determinant of the columns in `set`.
    pub fn minor(&self, set: Set) -> Polynomial {
        let cols: Vec<usize> = subsets::elements(set).collect();
        let m: Vec<Vec<Polynomial>> = (0..self.k())
            .map(|i| cols.iter().map(|&j| self.entry_poly(i, j)).collect())
            .collect();
        poly_det(&self.ring, &m)
    }

    /// Generators of the ideal of vanishing nonbasis minors.
    pub fn nonbasis_minors(&self) -> Vec<Polynomial> {
        self.matroid.nonbases().into_iter().map(|s| self.minor(s)).collect()
    }

    /// Basis minors, one entry per basis (possibly constant or zero).
    pub fn basis_minors(&self) -> Vec<Polynomial> {
        self.matroid.bases().iter().map(|&b| self.minor(b)).collect()
    }
}

impl fmt::Display for CoordinatizedMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.entries {
            let cells: Vec<String> = row
                .iter()
                .map(|e| match e {
                    Entry::Zero => "0".to_string(),
                    Entry::One => "1".to_string(),
                    Entry::Var(v) => self.ring.names()[*v].clone(),
                })
                .collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

/// Determinant of a square polynomial matrix, expanding over column subsets.
pub fn poly_det(ring: &Arc<Ring>, m: &[Vec<Polynomial>]) -> Polynomial {
    let k = m.len();
    if k == 0 {
        return Polynomial::one(ring);
    }
    let mut table: Vec<Option<Polynomial>> = vec![None; 1 << k];
    table[0] = Some(Polynomial::one(ring));
    for mask in 0..(1usize << k) {
        let Some(acc) = table[mask].take() else {
            continue;
        };
        if acc.is_zero() {
            continue;
        }
        let row = mask.count_ones() as usize;
        if row == k {
            table[mask] = Some(acc);
            continue;
        }
        for j in 0..k {
            if mask >> j & 1 == 1 || m[row][j].is_zero() {
                continue;
            }
            let mut term = &acc * &m[row][j];
            if (mask >> j >> 1).count_ones() % 2 == 1 {
                term = -&term;
            }
            let slot = &mut table[mask | 1 << j];
            *slot = Some(match slot.take() {
                Some(p) => &p + &term,
                None => term,
            });
        }
        table[mask] = Some(acc);
    }
    table[(1 << k) - 1].take().unwrap_or_else(|| Polynomial::zero(ring))
}

/// Relabeling sending the lex-least basis to `0..k` and the rest after it,
/// both in increasing order.
fn lex_least_basis_relabeling(m: &Matroid) -> Vec<usize> {
    let basis = subsets::k_subsets_lex(m.n(), m.rank())
        .into_iter()
        .find(|&s| m.is_basis(s))
        .expect("every matroid has a basis");
    block_relabeling(m.n(), basis, &[])
}

/// `first` goes to `0..|first|`, then `then` in the given order, then the
/// rest increasing.
fn block_relabeling(n: usize, first: Set, then: &[usize]) -> Vec<usize> {
    let mut perm = vec![usize::MAX; n];
    let mut next = 0;
    for e in subsets::elements(first) {
        perm[e] = next;
        next += 1;
    }
    for &e in then {
        perm[e] = next;
        next += 1;
    }
    for p in perm.iter_mut() {
        if *p == usize::MAX {
            *p = next;
            next += 1;
        }
    }
    perm
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        self.0[x] = r;
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

/// Builds the symbolic matrix for the matroid relabeled by `perm`.
pub fn coordinatize_with(m: &Matroid, perm: &[usize], rule: NormalizationRule) -> CoordinatizedMatroid {
    let matroid = m.relabel(perm);
    let (k, n) = (matroid.rank(), matroid.n());
    let id = subsets::full(k);
    assert!(matroid.is_basis(id), "relabeling must make the first k elements a basis");
    let free = |i: usize, c: usize| matroid.is_basis((id & !subsets::singleton(i)) | subsets::singleton(c));

    let mut ones = vec![vec![false; n]; k];
    let mut forest = UnionFind((0..k + n).collect());
    let mut pin = |ones: &mut Vec<Vec<bool>>, i: usize, c: usize| {
        if !ones[i][c] && forest.union(i, k + c) {
            ones[i][c] = true;
        }
    };
    let rows: Vec<usize> = match rule {
        NormalizationRule::TopLeft => (0..k).collect(),
        NormalizationRule::BottomRight => (0..k).rev().collect(),
    };
    let cols: Vec<usize> = match rule {
        NormalizationRule::TopLeft => (k..n).collect(),
        NormalizationRule::BottomRight => (k..n).rev().collect(),
    };
    for &c in &cols {
        if let Some(&i) = rows.iter().find(|&&i| free(i, c)) {
            pin(&mut ones, i, c);
        }
    }
    for &i in &rows {
        if ones[i].iter().any(|&b| b) {
            continue;
        }
        if let Some(&c) = cols.iter().find(|&&c| free(i, c)) {
            pin(&mut ones, i, c);
        }
    }
    // a residual torus survives unless the pinned entries span every
    // connected component of the support graph
    for &i in &rows {
        for &c in &cols {
            if free(i, c) {
                pin(&mut ones, i, c);
            }
        }
    }

    let mut names = Vec::new();
    let mut entries = vec![vec![Entry::Zero; n]; k];
    let mut normalized = Vec::new();
    for (i, row) in entries.iter_mut().enumerate() {
        row[i] = Entry::One;
    }
    for i in 0..k {
        for c in k..n {
            if ones[i][c] {
                entries[i][c] = Entry::One;
                normalized.push((i, c));
            } else if free(i, c) {
                entries[i][c] = Entry::Var(names.len());
                names.push(format!("x{}_{}", i + 1, c + 1));
            }
        }
    }
    normalized.sort_unstable();
    let ring = Ring::new(names, MonomialOrder::GRevLex).expect("at most 32 free entries");
    CoordinatizedMatroid {
        matroid,
        relabeling: perm.to_vec(),
        entries,
        normalized,
        ring,
    }
}

/// Coordinates with the lex-least basis as identity block.
pub fn coordinatize(m: &Matroid) -> CoordinatizedMatroid {
    coordinatize_with(m, &lex_least_basis_relabeling(m), NormalizationRule::TopLeft)
}

/// Coordinates in which `{0..k-1}` plus column `k` form a circuit, so that
/// column `k` has no forced zeros. `None` when no basis extends to a
/// `(k+1)`-element circuit.
pub fn find_frame_relabeling(m: &Matroid) -> Option<CoordinatizedMatroid> {
    let (k, n) = (m.rank(), m.n());
    for b in subsets::k_subsets_lex(n, k) {
        if !m.is_basis(b) {
            continue;
        }
        for e in (0..n).filter(|&e| !subsets::contains(b, e)) {
            let all_bases = subsets::elements(b).all(|x| m.is_basis((b & !subsets::singleton(x)) | subsets::singleton(e)));
            if all_bases {
                let perm = block_relabeling(n, b, &[e]);
                return Some(coordinatize_with(m, &perm, NormalizationRule::TopLeft));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subsets::from_elements;

    #[test]
    fn uniform_two_four() {
        let c = coordinatize(&Matroid::uniform(2, 4));
        assert_eq!(c.relabeling(), &[0, 1, 2, 3]);
        // columns pinned at the top, row 2 pinned at its leftmost entry
        assert_eq!(c.normalized(), &[(0, 2), (0, 3), (1, 2)]);
        assert_eq!(c.ring().names(), &["x2_4"]);
        assert_eq!(c.to_string(), "1 0 1 1\n0 1 1 x2_4\n");
    }

    #[test]
    fn lex_least_basis_goes_first() {
        // element 1 (0-based 0) is a loop
        let m = Matroid::from_bases(3, 2, [from_elements([1, 2])]).unwrap();
        let c = coordinatize(&m);
        assert!(c.matroid().is_basis(0b011));
        assert_eq!(c.relabeling(), &[2, 0, 1]);
    }

    #[test]
    fn avoids_dependent_first_block() {
        let m = Matroid::from_nonbases(9, 4, &[from_elements([0, 1, 2, 3]), from_elements([3, 4, 5, 6]), from_elements([0, 6, 7, 8])])
            .unwrap();
        let c = coordinatize(&m);
        assert_eq!(&c.relabeling()[..5], &[0, 1, 2, 4, 3]);
    }

    #[test]
    fn forced_zeros_follow_nonbases() {
        // rank 3, points 1,2,4 collinear: det(e1, e2, x) = x_3,4 vanishes
        let m = Matroid::from_nonbases(5, 3, &[from_elements([0, 1, 3])]).unwrap();
        let c = coordinatize(&m);
        assert_eq!(c.entries()[2][3], Entry::Zero);
        assert!(c.minor(from_elements([0, 1, 3])).is_zero());
    }

    #[test]
    fn uniform_three_six_has_four_parameters() {
        let c = coordinatize(&Matroid::uniform(3, 6));
        assert_eq!(c.ring().nvars(), 4);
        let alt = coordinatize_with(&Matroid::uniform(3, 6), &[0, 1, 2, 3, 4, 5], NormalizationRule::BottomRight);
        assert_eq!(alt.ring().nvars(), 4);
    }

    #[test]
    fn frames() {
        let c = find_frame_relabeling(&Matroid::uniform(3, 6)).unwrap();
        assert!((0..3).all(|i| c.entries()[i][3] == Entry::One));
        // U_{1,1} plus a loop: no circuit of size 2 through a basis
        let m = Matroid::from_bases(2, 1, [0b01]).unwrap();
        assert!(find_frame_relabeling(&m).is_none());
    }

    #[test]
    fn determinant_of_symbolic_matrix() {
        let r = Ring::new(["a", "b", "c", "d"], MonomialOrder::GRevLex).unwrap();
        let v = |i| Polynomial::var(&r, i);
        let det = poly_det(&r, &[vec![v(0), v(1)], vec![v(2), v(3)]]);
        assert_eq!(det.to_string(), "-b*c+a*d");
    }
}
