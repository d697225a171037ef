//! Matroids on small ground sets, stored by their bases.

mod canonical;

pub use canonical::CanonicalForm;

use std::fmt;
use std::sync::OnceLock;

use thiserror::Error;

use crate::linalg::QMatrix;
use crate::subsets::{self, Set, MAX_GROUND};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("no bases given")]
    NoBases,
    #[error("ground set of size {0} exceeds the supported maximum of {MAX_GROUND}")]
    GroundTooLarge(usize),
    #[error("rank {k} exceeds ground set size {n}")]
    RankTooLarge { k: usize, n: usize },
    #[error("basis {0} does not have the expected cardinality {1}")]
    WrongCardinality(String, usize),
    #[error("basis {0} is not contained in the ground set")]
    OutOfRange(String),
    #[error("not a matroid: exchange fails for bases {b1} and {b2} at element {element}")]
    NotAMatroid {
        b1: String,
        b2: String,
        element: usize,
    },
    #[error("operation requires rank {expected}, matroid has rank {actual}")]
    WrongRank { expected: usize, actual: usize },
}

/// A rank-`k` matroid on `{0, .., n-1}` given by its bases.
///
/// Immutable after construction. Derived tables (rank function) are built
/// lazily and shared.
pub struct Matroid {
    n: usize,
    k: usize,
    /// Sorted in numeric (revlex) order.
    bases: Vec<Set>,
    /// One bit per subset mask of the ground set.
    basis_bits: Vec<u64>,
    rank_table: OnceLock<Vec<u8>>,
}

impl Clone for Matroid {
    fn clone(&self) -> Self {
        Matroid {
            n: self.n,
            k: self.k,
            bases: self.bases.clone(),
            basis_bits: self.basis_bits.clone(),
            rank_table: OnceLock::new(),
        }
    }
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k && self.bases == other.bases
    }
}

impl Eq for Matroid {}

impl std::hash::Hash for Matroid {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.k.hash(state);
        self.bases.hash(state);
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matroid(rank {} on {}; nonbases [", self.k, self.n)?;
        for (i, s) in self.nonbases().into_iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", subsets::fmt_set_compact(s, self.n))?;
        }
        write!(f, "])")
    }
}

/// Witness for a half-coloop `e`: two hyperplanes covering everything but `e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HalfColoop {
    pub element: usize,
    pub flat1: Set,
    pub flat2: Set,
}

/// Loops and parallel classes of a rank-2 matroid, classes sorted by
/// decreasing size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank2Profile {
    pub loops: Set,
    pub classes: Vec<Set>,
}

impl Rank2Profile {
    /// Half-coloop criterion for rank 2: `r` in {2,3} and the last class is a
    /// singleton.
    pub fn has_half_coloop(&self) -> bool {
        let r = self.classes.len();
        (r == 2 || r == 3) && self.classes.last().is_some_and(|c| c.count_ones() == 1)
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| subsets::card(*c)).collect()
    }
}

impl Matroid {
    /// Validated constructor: checks cardinalities and basis exchange.
    pub fn from_bases(n: usize, k: usize, bases: impl IntoIterator<Item = Set>) -> Result<Self, MatroidError> {
        let m = Self::build(n, k, bases)?;
        m.check_exchange()?;
        Ok(m)
    }

    /// Constructor for basis families that are matroids by construction
    /// (duals, relabelings, positroid necklaces). Cardinalities are still
    /// checked; the exchange axiom is only checked in debug builds.
    pub fn from_bases_unchecked(n: usize, k: usize, bases: impl IntoIterator<Item = Set>) -> Result<Self, MatroidError> {
        let m = Self::build(n, k, bases)?;
        debug_assert!(m.check_exchange().is_ok(), "unchecked constructor got a non-matroid");
        Ok(m)
    }

    fn build(n: usize, k: usize, bases: impl IntoIterator<Item = Set>) -> Result<Self, MatroidError> {
        if n > MAX_GROUND {
            return Err(MatroidError::GroundTooLarge(n));
        }
        if k > n {
            return Err(MatroidError::RankTooLarge { k, n });
        }
        let mut bases: Vec<Set> = bases.into_iter().collect();
        bases.sort_unstable();
        bases.dedup();
        if bases.is_empty() {
            return Err(MatroidError::NoBases);
        }
        let ground = subsets::full(n);
        let mut basis_bits = vec![0u64; (1usize << n).div_ceil(64)];
        for &b in &bases {
            if b & !ground != 0 {
                return Err(MatroidError::OutOfRange(subsets::fmt_set(b)));
            }
            if subsets::card(b) != k {
                return Err(MatroidError::WrongCardinality(subsets::fmt_set(b), k));
            }
            basis_bits[b as usize / 64] |= 1 << (b % 64);
        }
        Ok(Matroid {
            n,
            k,
            bases,
            basis_bits,
            rank_table: OnceLock::new(),
        })
    }

    /// Matroid of the columns of a rational matrix.
    pub fn from_matrix(m: &QMatrix) -> Result<Self, MatroidError> {
        let n = m.cols();
        let k = m.rank();
        let bases = subsets::k_subsets_revlex(n, k).into_iter().filter(|&s| {
            let cols: Vec<usize> = subsets::elements(s).collect();
            m.select_columns(&cols).rank() == k
        });
        Self::from_bases_unchecked(n, k, bases)
    }

    pub fn uniform(k: usize, n: usize) -> Self {
        Self::from_bases_unchecked(n, k, subsets::k_subsets_revlex(n, k)).expect("uniform matroid")
    }

    /// All k-subsets except the given nonbases.
    pub fn from_nonbases(n: usize, k: usize, nonbases: &[Set]) -> Result<Self, MatroidError> {
        let bases = subsets::k_subsets_revlex(n, k)
            .into_iter()
            .filter(|s| !nonbases.contains(s));
        Self::from_bases(n, k, bases)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn bases(&self) -> &[Set] {
        &self.bases
    }

    #[inline]
    pub fn is_basis(&self, s: Set) -> bool {
        (s as usize) < (1usize << self.n) && self.basis_bits[s as usize / 64] >> (s % 64) & 1 == 1
    }

    pub fn nonbases(&self) -> Vec<Set> {
        subsets::k_subsets_revlex(self.n, self.k)
            .into_iter()
            .filter(|&s| !self.is_basis(s))
            .collect()
    }

    /// `spans[m]` is true when `m` contains a basis.
    fn spanning_table(&self) -> Vec<bool> {
        let size = 1usize << self.n;
        let mut spans = vec![false; size];
        for m in 0..size {
            let m_set = m as Set;
            spans[m] = if subsets::card(m_set) == self.k {
                self.is_basis(m_set)
            } else if subsets::card(m_set) < self.k {
                false
            } else {
                subsets::elements(m_set).any(|e| spans[m & !(1 << e)])
            };
        }
        spans
    }

    /// Basis exchange, checked through fundamental cocircuits: for a basis
    /// `B1` and `x` in `B1`, no basis may avoid `{x}` together with every `y`
    /// that can replace `x`.
    fn check_exchange(&self) -> Result<(), MatroidError> {
        let spans = self.spanning_table();
        let ground = subsets::full(self.n);
        for &b1 in &self.bases {
            for x in subsets::elements(b1) {
                let without = b1 & !subsets::singleton(x);
                let mut exchange = subsets::singleton(x);
                for y in subsets::elements(ground & !b1) {
                    if self.is_basis(without | subsets::singleton(y)) {
                        exchange |= subsets::singleton(y);
                    }
                }
                let avoid = ground & !exchange;
                if spans[avoid as usize] {
                    let b2 = *self
                        .bases
                        .iter()
                        .find(|&&b| b & !avoid == 0)
                        .expect("spanning set contains a basis");
                    return Err(MatroidError::NotAMatroid {
                        b1: subsets::fmt_set(b1),
                        b2: subsets::fmt_set(b2),
                        element: x + 1,
                    });
                }
            }
        }
        Ok(())
    }

    fn rank_table(&self) -> &[u8] {
        self.rank_table.get_or_init(|| {
            let size = 1usize << self.n;
            let mut independent = vec![false; size];
            for &b in &self.bases {
                independent[b as usize] = true;
            }
            // downward closure, largest masks first
            for m in (0..size).rev() {
                if independent[m] {
                    for e in subsets::elements(m as Set) {
                        independent[m & !(1 << e)] = true;
                    }
                }
            }
            let mut rank = vec![0u8; size];
            for m in 1..size {
                rank[m] = if independent[m] {
                    m.count_ones() as u8
                } else {
                    subsets::elements(m as Set)
                        .map(|e| rank[m & !(1 << e)])
                        .max()
                        .unwrap_or(0)
                };
            }
            rank
        })
    }

    pub fn rank_of(&self, s: Set) -> usize {
        self.rank_table()[(s & subsets::full(self.n)) as usize] as usize
    }

    pub fn is_independent(&self, s: Set) -> bool {
        self.rank_of(s) == subsets::card(s)
    }

    pub fn closure(&self, s: Set) -> Set {
        let r = self.rank_of(s);
        (0..self.n)
            .filter(|&e| subsets::contains(s, e) || self.rank_of(s | subsets::singleton(e)) == r)
            .fold(0, |acc, e| acc | subsets::singleton(e))
    }

    pub fn is_flat(&self, s: Set) -> bool {
        self.closure(s) == s
    }

    /// All closed sets of rank `r`, in numeric order.
    pub fn flats_of_rank(&self, r: usize) -> Vec<Set> {
        if r == self.k.saturating_sub(1) && self.k > 0 {
            return self.hyperplanes();
        }
        let mut out: Vec<Set> = (0..(1u32 << self.n))
            .filter(|&s| self.rank_of(s) == r && self.is_flat(s))
            .collect();
        out.sort_unstable();
        out
    }

    /// Flats of rank `k-1`, obtained as closures of independent `(k-1)`-sets.
    /// Only uses basis membership.
    pub fn hyperplanes(&self) -> Vec<Set> {
        if self.k == 0 {
            return Vec::new();
        }
        let ground = subsets::full(self.n);
        let mut seen = std::collections::HashSet::new();
        let mut out = Vec::new();
        for &b in &self.bases {
            for x in subsets::elements(b) {
                let s = b & !subsets::singleton(x);
                if !seen.insert(s) {
                    continue;
                }
                let mut flat = s;
                for e in subsets::elements(ground & !s) {
                    if !self.is_basis(s | subsets::singleton(e)) {
                        flat |= subsets::singleton(e);
                    }
                }
                out.push(flat);
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// An element `e` with two hyperplanes whose union is everything but `e`.
    pub fn half_coloop(&self) -> Option<HalfColoop> {
        if self.k == 0 {
            return None;
        }
        let ground = subsets::full(self.n);
        let hyper = self.hyperplanes();
        for (i, &f1) in hyper.iter().enumerate() {
            for &f2 in &hyper[i..] {
                let union = f1 | f2;
                if union.count_ones() as usize + 1 == self.n {
                    let element = (ground & !union).trailing_zeros() as usize;
                    return Some(HalfColoop { element, flat1: f1, flat2: f2 });
                }
            }
        }
        None
    }

    pub fn has_half_coloop(&self) -> bool {
        self.half_coloop().is_some()
    }

    /// A matroid is self-projecting when it has no half-coloop.
    pub fn is_self_projecting(&self) -> bool {
        !self.has_half_coloop()
    }

    /// Every basis has a disjoint basis.
    pub fn has_disjoint_basis_property(&self) -> bool {
        if self.n < 2 * self.k {
            return false;
        }
        let spans = self.spanning_table();
        let ground = subsets::full(self.n);
        self.bases.iter().all(|&b| spans[(ground & !b) as usize])
    }

    pub fn dual(&self) -> Matroid {
        let ground = subsets::full(self.n);
        Matroid::from_bases_unchecked(self.n, self.n - self.k, self.bases.iter().map(|&b| ground & !b))
            .expect("dual of a matroid")
    }

    /// Identically self-dual: the basis family is closed under complement.
    pub fn is_identically_self_dual(&self) -> bool {
        2 * self.k == self.n && self.dual().bases == self.bases
    }

    pub fn loops(&self) -> Set {
        let covered = self.bases.iter().fold(0, |acc, &b| acc | b);
        subsets::full(self.n) & !covered
    }

    pub fn coloops(&self) -> Set {
        self.bases.iter().fold(subsets::full(self.n), |acc, &b| acc & b)
    }

    /// Pairs `{e,f}` of non-loops contained in some basis are not parallel;
    /// returns the parallel classes of non-loop elements, ordered by their
    /// smallest element.
    pub fn parallel_classes(&self) -> Vec<Set> {
        let loops = self.loops();
        let mut together = vec![0 as Set; self.n];
        if self.k >= 2 {
            for &b in &self.bases {
                for e in subsets::elements(b) {
                    together[e] |= b;
                }
            }
        }
        let mut assigned: Set = loops;
        let mut classes = Vec::new();
        for e in 0..self.n {
            if subsets::contains(assigned, e) {
                continue;
            }
            let mut class = subsets::singleton(e);
            for f in e + 1..self.n {
                if !subsets::contains(assigned, f) && !subsets::contains(together[e], f) {
                    class |= subsets::singleton(f);
                }
            }
            assigned |= class;
            classes.push(class);
        }
        classes
    }

    pub fn is_simple(&self) -> bool {
        self.loops() == 0 && self.parallel_classes().iter().all(|c| c.count_ones() == 1)
    }

    /// Deletes loops and keeps the smallest element of each parallel class,
    /// relabeling the survivors to `0..m` in increasing order.
    pub fn simplify(&self) -> Matroid {
        let keep: Vec<usize> = self
            .parallel_classes()
            .iter()
            .map(|c| c.trailing_zeros() as usize)
            .collect();
        self.restrict(&keep)
    }

    /// Restriction to the listed elements (which must span), relabeled to
    /// `0..len` in the given order.
    pub fn restrict(&self, elements: &[usize]) -> Matroid {
        let mut perm = vec![usize::MAX; self.n];
        let mut mask: Set = 0;
        for (new, &old) in elements.iter().enumerate() {
            perm[old] = new;
            mask |= subsets::singleton(old);
        }
        let bases: Vec<Set> = self
            .bases
            .iter()
            .filter(|&&b| b & !mask == 0)
            .map(|&b| subsets::relabel(b, &perm))
            .collect();
        Matroid::from_bases_unchecked(elements.len(), self.k, bases).expect("restriction to a spanning set")
    }

    /// Relabels element `i` to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Matroid {
        Matroid::from_bases_unchecked(self.n, self.k, self.bases.iter().map(|&b| subsets::relabel(b, perm)))
            .expect("relabeling preserves matroids")
    }

    /// Minimal dependent sets in numeric order.
    pub fn circuits(&self) -> Vec<Set> {
        (1..(1u32 << self.n))
            .filter(|&s| {
                !self.is_independent(s)
                    && subsets::elements(s).all(|e| self.is_independent(s & !subsets::singleton(e)))
            })
            .collect()
    }

    pub fn rank2_profile(&self) -> Result<Rank2Profile, MatroidError> {
        if self.k != 2 {
            return Err(MatroidError::WrongRank { expected: 2, actual: self.k });
        }
        let mut classes = self.parallel_classes();
        // stable: equal sizes keep the order of their smallest element
        classes.sort_by_key(|c| std::cmp::Reverse(c.count_ones()));
        Ok(Rank2Profile {
            loops: self.loops(),
            classes,
        })
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        canonical::canonical_form(self)
    }

    pub fn is_isomorphic(&self, other: &Matroid) -> bool {
        self.n == other.n
            && self.k == other.k
            && self.bases.len() == other.bases.len()
            && self.canonical_form() == other.canonical_form()
    }

    /// The relabeling realising the canonical form together with the form.
    pub fn canonical_labeling(&self) -> (Vec<usize>, CanonicalForm) {
        canonical::canonical_labeling(self)
    }
}
