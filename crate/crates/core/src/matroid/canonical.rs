//! Canonical labeling by partition refinement and individualization.

use std::collections::HashSet;

use super::Matroid;
use crate::subsets::{self, Set};

/// Isomorphism invariant of a matroid: the basis family of a canonically
/// relabeled copy.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub k: usize,
    pub bases: Vec<Set>,
}

impl CanonicalForm {
    pub fn to_matroid(&self) -> Matroid {
        Matroid::from_bases_unchecked(self.n, self.k, self.bases.iter().copied()).expect("canonical form")
    }

    /// `*`/`0` string over the k-subsets in revlex order.
    pub fn revlex_string(&self) -> String {
        let set: HashSet<Set> = self.bases.iter().copied().collect();
        subsets::k_subsets_revlex(self.n, self.k)
            .into_iter()
            .map(|s| if set.contains(&s) { '*' } else { '0' })
            .collect()
    }
}

type Partition = Vec<Vec<usize>>;

struct Search<'a> {
    n: usize,
    family: &'a [Set],
    first: Option<(Vec<Set>, Vec<usize>)>,
    best: Option<(Vec<Set>, Vec<usize>)>,
    generators: Vec<Vec<usize>>,
}

pub(super) fn canonical_form(m: &Matroid) -> CanonicalForm {
    canonical_labeling(m).1
}

pub(super) fn canonical_labeling(m: &Matroid) -> (Vec<usize>, CanonicalForm) {
    let n = m.n();
    let nonbases = m.nonbases();
    // the smaller family carries the same information; the choice depends
    // only on the isomorphism class
    let family: Vec<Set> = if nonbases.len() <= m.bases().len() {
        nonbases
    } else {
        m.bases().to_vec()
    };
    let mut search = Search {
        n,
        family: &family,
        first: None,
        best: None,
        generators: Vec::new(),
    };
    let mut root: Partition = vec![(0..n).collect()];
    refine(&mut root, &family, n);
    search.explore(root, &mut Vec::new());
    let perm = search.best.expect("search visits at least one leaf").1;
    let mut bases: Vec<Set> = m.bases().iter().map(|&b| subsets::relabel(b, &perm)).collect();
    bases.sort_unstable();
    (perm, CanonicalForm { n, k: m.rank(), bases })
}

fn cell_index(p: &Partition, n: usize) -> Vec<usize> {
    let mut idx = vec![0; n];
    for (c, cell) in p.iter().enumerate() {
        for &e in cell {
            idx[e] = c;
        }
    }
    idx
}

/// Splits cells by the multiset of cell-index patterns of the family members
/// through each element, until stable.
fn refine(p: &mut Partition, family: &[Set], n: usize) {
    loop {
        let idx = cell_index(p, n);
        let mut sig: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
        for &s in family {
            for e in subsets::elements(s) {
                let mut pattern: Vec<usize> = subsets::elements(s).filter(|&f| f != e).map(|f| idx[f]).collect();
                pattern.sort_unstable();
                sig[e].push(pattern);
            }
        }
        for s in sig.iter_mut() {
            s.sort_unstable();
        }
        let mut next: Partition = Vec::with_capacity(p.len());
        for cell in p.iter() {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut sorted = cell.clone();
            sorted.sort_by(|&a, &b| sig[a].cmp(&sig[b]).then(a.cmp(&b)));
            let mut start = 0;
            for i in 1..=sorted.len() {
                if i == sorted.len() || sig[sorted[i]] != sig[sorted[start]] {
                    next.push(sorted[start..i].to_vec());
                    start = i;
                }
            }
        }
        let stable = next.len() == p.len();
        *p = next;
        if stable {
            return;
        }
    }
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut y = x;
    while parent[y] != r {
        let next = parent[y];
        parent[y] = r;
        y = next;
    }
    r
}

impl Search<'_> {
    fn explore(&mut self, p: Partition, prefix: &mut Vec<usize>) {
        let Some(target) = p.iter().position(|c| c.len() > 1) else {
            self.leaf(&p);
            return;
        };
        let candidates = p[target].clone();
        let mut explored: Vec<usize> = Vec::new();
        for &v in &candidates {
            if !explored.is_empty() && self.in_explored_orbit(v, &explored, prefix) {
                continue;
            }
            let mut child = p.clone();
            let rest: Vec<usize> = child[target].iter().copied().filter(|&e| e != v).collect();
            child[target] = vec![v];
            child.insert(target + 1, rest);
            refine(&mut child, self.family, self.n);
            prefix.push(v);
            self.explore(child, prefix);
            prefix.pop();
            explored.push(v);
        }
    }

    /// Orbits of the known automorphisms fixing `prefix` pointwise.
    fn in_explored_orbit(&self, v: usize, explored: &[usize], prefix: &[usize]) -> bool {
        let mut parent: Vec<usize> = (0..self.n).collect();
        for g in &self.generators {
            if prefix.iter().any(|&x| g[x] != x) {
                continue;
            }
            for (x, &y) in g.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&w| find(&mut parent, w) == rv)
    }

    fn leaf(&mut self, p: &Partition) {
        let perm = cell_index(p, self.n);
        let mut code: Vec<Set> = self.family.iter().map(|&s| subsets::relabel(s, &perm)).collect();
        code.sort_unstable();
        for reference in [&self.first, &self.best].into_iter().flatten() {
            if reference.0 == code {
                // automorphism: x -> ref^{-1}(perm(x))
                let mut inverse = vec![0; self.n];
                for (x, &y) in reference.1.iter().enumerate() {
                    inverse[y] = x;
                }
                let gamma: Vec<usize> = (0..self.n).map(|x| inverse[perm[x]]).collect();
                if gamma.iter().enumerate().any(|(x, &y)| x != y) {
                    self.generators.push(gamma);
                }
                return;
            }
        }
        if self.first.is_none() {
            self.first = Some((code.clone(), perm.clone()));
        }
        if self.best.as_ref().is_none_or(|b| code < b.0) {
            self.best = Some((code, perm));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        p.shuffle(rng);
        p
    }

    #[test]
    fn relabelings_share_a_canonical_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let m = Matroid::from_nonbases(
            7,
            3,
            &[
                subsets::from_elements([0, 1, 2]),
                subsets::from_elements([2, 3, 4]),
                subsets::from_elements([0, 4, 5]),
            ],
        )
        .unwrap();
        let c = m.canonical_form();
        for _ in 0..20 {
            let p = random_perm(7, &mut rng);
            assert_eq!(m.relabel(&p).canonical_form(), c);
        }
        assert_eq!(c.to_matroid().canonical_form(), c);
    }

    #[test]
    fn non_isomorphic_matroids_differ() {
        let a = Matroid::from_nonbases(6, 3, &[subsets::from_elements([0, 1, 2])]).unwrap();
        let b = Matroid::from_nonbases(
            6,
            3,
            &[subsets::from_elements([0, 1, 2]), subsets::from_elements([3, 4, 5])],
        )
        .unwrap();
        assert!(!a.is_isomorphic(&b));
        assert!(a.is_isomorphic(&a.relabel(&[5, 4, 3, 2, 1, 0])));
    }

    #[test]
    fn uniform_matroid_is_fast() {
        let u = Matroid::uniform(4, 12);
        assert_eq!(u.canonical_form().bases.len(), 495);
    }

    #[test]
    fn canonical_labeling_maps_to_form() {
        let m = Matroid::from_nonbases(6, 3, &[subsets::from_elements([1, 3, 5])]).unwrap();
        let (perm, form) = m.canonical_labeling();
        assert_eq!(m.relabel(&perm), form.to_matroid());
        assert_eq!(form.revlex_string().len(), 20);
    }
}
