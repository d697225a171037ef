//! Positroids from Grassmann necklaces and the orthopositroid test.
//!
//! A decorated permutation `pi` of `{0,..,n-1}` whose fixed points are
//! marked loop or coloop determines the necklace
//! `I_i = { j : j <_i pi^{-1}(j) } + coloops`, where `<_i` is the cyclic
//! order starting at `i`. The bases of the positroid are the k-sets that
//! dominate `I_i` in the `i`-shifted Gale order for every `i`.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::sign_insert;
use crate::matroid::{CanonicalForm, Matroid};
use crate::selfproj::{ogr_nonempty, SignVector};
use crate::subsets::{self, Set};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PositroidError {
    #[error("necklace must have {expected} sets, got {got}")]
    Length { expected: usize, got: usize },
    #[error("necklace set {0} has the wrong size")]
    Cardinality(usize),
    #[error("necklace violates the exchange condition at position {0}")]
    Exchange(usize),
    #[error("not a permutation of 1..{0}")]
    NotAPermutation(usize),
    #[error("unsupported size (k, n) = ({k}, {n})")]
    Unsupported { k: usize, n: usize },
}

fn rotate_down(s: Set, i: usize, n: usize) -> Set {
    if i == 0 {
        return s;
    }
    ((s >> i) | (s << (n - i))) & subsets::full(n)
}

/// `b >= a` in the Gale order of sorted element lists (both of size k).
fn gale_geq(b: Set, a: Set, n: usize) -> bool {
    let mut low = 0u32;
    for t in 0..n {
        low |= 1 << t;
        if (b & low).count_ones() > (a & low).count_ones() {
            return false;
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DecoratedPermutation {
    perm: Vec<usize>,
    coloops: Set,
}

impl DecoratedPermutation {
    /// Fixed points listed in `coloops` are coloops, the others are loops.
    pub fn new(perm: Vec<usize>, coloops: Set) -> Result<Self, PositroidError> {
        let n = perm.len();
        let mut seen = 0u32;
        for &p in &perm {
            if p >= n || subsets::contains(seen, p) {
                return Err(PositroidError::NotAPermutation(n));
            }
            seen |= 1 << p;
        }
        let fixed = (0..n).filter(|&i| perm[i] == i).fold(0, |a, i| a | 1 << i);
        Ok(DecoratedPermutation {
            perm,
            coloops: coloops & fixed,
        })
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    /// Number of weak anti-exceedances `pi(i) < i`, plus coloops.
    pub fn rank(&self) -> usize {
        let strict = (0..self.n()).filter(|&i| self.perm[i] < i).count();
        strict + subsets::card(self.coloops)
    }

    pub fn necklace(&self) -> GrassmannNecklace {
        let n = self.n();
        let mut inv = vec![0; n];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        let sets = (0..n)
            .map(|i| {
                let mut s = self.coloops;
                for j in 0..n {
                    if inv[j] != j && (j + n - i) % n < (inv[j] + n - i) % n {
                        s |= 1 << j;
                    }
                }
                s
            })
            .collect();
        GrassmannNecklace {
            n,
            k: self.rank(),
            sets,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GrassmannNecklace {
    n: usize,
    k: usize,
    sets: Vec<Set>,
}

impl GrassmannNecklace {
    pub fn new(n: usize, k: usize, sets: Vec<Set>) -> Result<Self, PositroidError> {
        if sets.len() != n {
            return Err(PositroidError::Length {
                expected: n,
                got: sets.len(),
            });
        }
        let g = GrassmannNecklace { n, k, sets };
        g.validate()?;
        Ok(g)
    }

    pub fn sets(&self) -> &[Set] {
        &self.sets
    }

    pub fn validate(&self) -> Result<(), PositroidError> {
        let n = self.n;
        for (i, &s) in self.sets.iter().enumerate() {
            if subsets::card(s) != self.k || s & !subsets::full(n) != 0 {
                return Err(PositroidError::Cardinality(i + 1));
            }
            let next = self.sets[(i + 1) % n];
            let ok = if subsets::contains(s, i) {
                let rest = s & !(1 << i);
                next & rest == rest && subsets::card(next & !rest) == 1
            } else {
                next == s
            };
            if !ok {
                return Err(PositroidError::Exchange(i + 1));
            }
        }
        Ok(())
    }

    /// Bases: every k-set that Gale-dominates `I_i` in the order starting at `i`.
    pub fn bases(&self) -> Vec<Set> {
        let n = self.n;
        let rotated: Vec<Set> = (0..n).map(|i| rotate_down(self.sets[i], i, n)).collect();
        subsets::k_subsets_revlex(n, self.k)
            .into_iter()
            .filter(|&b| (0..n).all(|i| gale_geq(rotate_down(b, i, n), rotated[i], n)))
            .collect()
    }

    pub fn matroid(&self) -> Matroid {
        Matroid::from_bases_unchecked(self.n, self.k, self.bases()).expect("necklace has a basis")
    }

    /// Necklace of a matroid: `I_i` is the Gale-least basis from position `i`.
    /// Agrees with the input necklace exactly when the matroid is a positroid
    /// built from it.
    pub fn of_matroid(m: &Matroid) -> Self {
        let n = m.n();
        let sets = (0..n)
            .map(|i| {
                *m.bases()
                    .iter()
                    .min_by_key(|&&b| {
                        let r = rotate_down(b, i, n);
                        subsets::lex_key(r)
                    })
                    .expect("nonempty")
            })
            .collect();
        GrassmannNecklace { n, k: m.rank(), sets }
    }
}

impl fmt::Display for GrassmannNecklace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sets.iter().map(|&s| subsets::fmt_set(s)).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Calls `visit` on every permutation of `0..n` (Heap's algorithm).
fn for_each_permutation(n: usize, mut visit: impl FnMut(&[usize])) {
    let mut a: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    visit(&a);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            visit(&a);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// `pi` is lexicographically minimal among its conjugates by rotations.
fn rotation_minimal(p: &[usize]) -> bool {
    let n = p.len();
    for r in 1..n {
        for x in 0..n {
            let q = (p[(x + r) % n] + n - r) % n;
            match q.cmp(&p[x]) {
                std::cmp::Ordering::Less => return false,
                std::cmp::Ordering::Greater => break,
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    true
}

/// Loopless positroids of rank `k` on `n` elements (fixed points are coloops),
/// one per rotation class of decorated permutations.
pub fn loopless_positroids_up_to_rotation(k: usize, n: usize) -> Vec<GrassmannNecklace> {
    let mut out = Vec::new();
    for_each_permutation(n, |p| {
        let weak = (0..n).filter(|&i| p[i] <= i).count();
        if weak != k || !rotation_minimal(p) {
            return;
        }
        let coloops = (0..n).filter(|&i| p[i] == i).fold(0, |a, i| a | 1 << i);
        let d = DecoratedPermutation {
            perm: p.to_vec(),
            coloops,
        };
        out.push(d.necklace());
    });
    out
}

/// Every positroid of rank `k` on `n` elements, one per decorated permutation.
pub fn enumerate_positroids(k: usize, n: usize) -> Vec<Matroid> {
    let mut out = Vec::new();
    for_each_permutation(n, |p| {
        let fixed: Vec<usize> = (0..n).filter(|&i| p[i] == i).collect();
        let strict = (0..n).filter(|&i| p[i] < i).count();
        if strict > k || strict + fixed.len() < k {
            return;
        }
        for choice in subsets::k_subsets_revlex(fixed.len(), k - strict) {
            let coloops = subsets::elements(choice).fold(0, |a, j| a | 1 << fixed[j]);
            let d = DecoratedPermutation {
                perm: p.to_vec(),
                coloops,
            };
            out.push(d.necklace().matroid());
        }
    });
    out
}

/// Simple by a direct scan: no loops and every pair lies in some basis.
fn is_simple_bases(n: usize, bases: &[Set]) -> bool {
    let mut together = vec![0u32; n];
    for &b in bases {
        for e in subsets::elements(b) {
            together[e] |= b;
        }
    }
    together.iter().all(|&t| t == subsets::full(n))
}

/// Pairs `(S, T)` reduced to what the test reads: the candidate mask and
/// the mask of candidates whose sign product is negative.
fn ortho_constraints(m: &Matroid) -> Vec<(Set, Set)> {
    let (n, k) = (m.n(), m.rank());
    if k == 0 {
        return Vec::new();
    }
    let small = subsets::k_subsets_revlex(n, k - 1);
    // per (k-1)-set: elements extending it to a basis, and their sign mask
    let ext: Vec<(Set, Set)> = small
        .iter()
        .map(|&s| {
            let mut cand = 0;
            let mut neg = 0;
            for l in 0..n {
                if !subsets::contains(s, l) && m.is_basis(s | 1 << l) {
                    cand |= 1 << l;
                    if sign_insert(s, l).expect("l not in s") < 0 {
                        neg |= 1 << l;
                    }
                }
            }
            (cand, neg)
        })
        .collect();
    let mut pairs: Vec<(Set, Set)> = Vec::new();
    for (i, &(ca, na)) in ext.iter().enumerate() {
        for &(cb, nb) in &ext[i..] {
            let cand = ca & cb;
            if cand.count_ones() >= 1 {
                pairs.push((cand, (na ^ nb) & cand));
            }
        }
    }
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

fn ortho_holds(pairs: &[(Set, Set)], negative: Set) -> bool {
    pairs.iter().all(|&(cand, neg)| {
        let minus = (neg ^ negative) & cand;
        let plus = cand & !minus;
        (plus == 0) == (minus == 0)
    })
}

/// Orthopositroid test for the sign vector `sv`, over all pairs of
/// `(k-1)`-sets.
pub fn is_orthopositroid(m: &Matroid, sv: &SignVector) -> bool {
    assert_eq!(sv.len(), m.n(), "sign vector length");
    let negative = subsets::full(m.n()) & !sv.positive_mask();
    ortho_holds(&ortho_constraints(m), negative)
}

/// Some sign vector with nonempty real orthogonal Grassmannian passes.
/// The first sign is fixed to `+`: negation swaps the two witness sets.
pub fn orthopositroid_witness(m: &Matroid) -> Option<SignVector> {
    let (n, k) = (m.n(), m.rank());
    let pairs = ortho_constraints(m);
    let full = subsets::full(n);
    (0..1u32 << (n.max(1) - 1))
        .map(|rest| SignVector::from_mask(n, 1 | rest << 1))
        .filter(|sv| ogr_nonempty(sv, k))
        .find(|sv| ortho_holds(&pairs, full & !sv.positive_mask()))
}

pub fn is_orthopositroid_any(m: &Matroid) -> bool {
    orthopositroid_witness(m).is_some()
}

/// One isomorphism class of simple positroids.
#[derive(Clone, Debug)]
pub struct PositroidClass {
    pub canonical: CanonicalForm,
    /// Positroid labelings in the class, one per rotation class.
    pub members: Vec<GrassmannNecklace>,
    pub self_projecting: bool,
    pub orthopositroid: bool,
}

#[derive(Clone, Debug)]
pub struct PositroidSurvey {
    pub k: usize,
    pub n: usize,
    /// Loopless decorated permutations up to rotation.
    pub necklaces: usize,
    pub classes: Vec<PositroidClass>,
}

impl PositroidSurvey {
    pub fn simple(&self) -> usize {
        self.classes.len()
    }

    pub fn self_projecting(&self) -> usize {
        self.classes.iter().filter(|c| c.self_projecting).count()
    }

    pub fn orthopositroids(&self) -> usize {
        self.classes.iter().filter(|c| c.orthopositroid).count()
    }

    pub fn row(&self) -> (usize, usize, usize) {
        (self.simple(), self.self_projecting(), self.orthopositroids())
    }

    /// Self-projecting classes that are not orthopositroids.
    pub fn exceptional(&self) -> impl Iterator<Item = &PositroidClass> {
        self.classes.iter().filter(|c| c.self_projecting && !c.orthopositroid)
    }
}

/// Counts simple positroids up to isomorphism, the self-projecting ones and
/// those that are orthopositroids for some labeling and sign vector.
pub fn survey_positroids(k: usize, n: usize) -> Result<PositroidSurvey, PositroidError> {
    if k == 0 || k > n || n > 10 {
        return Err(PositroidError::Unsupported { k, n });
    }
    let necklaces = loopless_positroids_up_to_rotation(k, n);
    let count = necklaces.len();
    let simple: Vec<(GrassmannNecklace, Matroid)> = necklaces
        .into_par_iter()
        .filter_map(|g| {
            let bases = g.bases();
            if !is_simple_bases(n, &bases) {
                return None;
            }
            let m = Matroid::from_bases_unchecked(n, k, bases).expect("bases");
            Some((g, m))
        })
        .collect();
    let keyed: Vec<(CanonicalForm, GrassmannNecklace, Matroid)> = simple
        .into_par_iter()
        .map(|(g, m)| (m.canonical_form(), g, m))
        .collect();
    let mut groups: BTreeMap<CanonicalForm, Vec<(GrassmannNecklace, Matroid)>> = BTreeMap::new();
    for (c, g, m) in keyed {
        groups.entry(c).or_default().push((g, m));
    }
    let classes = groups
        .into_par_iter()
        .map(|(canonical, members)| {
            let self_projecting = members[0].1.is_self_projecting();
            let orthopositroid = members.iter().any(|(_, m)| is_orthopositroid_any(m));
            PositroidClass {
                canonical,
                members: members.into_iter().map(|(g, _)| g).collect(),
                self_projecting,
                orthopositroid,
            }
        })
        .collect();
    Ok(PositroidSurvey {
        k,
        n,
        necklaces: count,
        classes,
    })
}
