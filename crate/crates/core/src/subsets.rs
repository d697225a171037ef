//! Subsets of a small ground set `{0, .., n-1}` packed into machine words.
//!
//! Bit `i` of a [`Set`] is element `i`. Elements are 0-based internally and
//! printed 1-based.
//!
//! Two orders on k-subsets are used throughout:
//!
//! * **lex**: compare the sorted element lists lexicographically,
//!   `{1,2} < {1,3} < {1,4} < {2,3} < {2,4} < {3,4}` for `(n, k) = (4, 2)`.
//! * **revlex** (colex): compare the largest differing element first. This
//!   coincides with the numeric order of the masks:
//!   `{1,2} < {1,3} < {2,3} < {1,4} < {2,4} < {3,4}`.

use std::fmt::Write;

/// A subset of `{0, .., 31}`.
pub type Set = u32;

/// Largest ground set supported by the matroid and catalog code.
pub const MAX_GROUND: usize = 16;

#[inline]
pub fn contains(s: Set, e: usize) -> bool {
    s >> e & 1 == 1
}

#[inline]
pub fn singleton(e: usize) -> Set {
    1 << e
}

#[inline]
pub fn full(n: usize) -> Set {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

#[inline]
pub fn card(s: Set) -> usize {
    s.count_ones() as usize
}

/// Iterates the elements of `s` in increasing order.
pub fn elements(s: Set) -> impl Iterator<Item = usize> {
    let mut rest = s;
    std::iter::from_fn(move || {
        if rest == 0 {
            None
        } else {
            let e = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(e)
        }
    })
}

pub fn from_elements<I: IntoIterator<Item = usize>>(it: I) -> Set {
    it.into_iter().fold(0, |acc, e| acc | singleton(e))
}

/// All k-subsets of `{0,..,n-1}` in revlex (numeric) order.
pub fn k_subsets_revlex(n: usize, k: usize) -> Vec<Set> {
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        return vec![0];
    }
    let mut out = Vec::with_capacity(binomial(n, k));
    let limit: u64 = 1u64 << n;
    let mut s: u64 = (1u64 << k) - 1;
    while s < limit {
        out.push(s as Set);
        // Gosper's hack
        let c = s & s.wrapping_neg();
        let r = s + c;
        s = (((r ^ s) >> 2) / c) | r;
    }
    out
}

/// All k-subsets of `{0,..,n-1}` in lex order of their sorted element lists.
pub fn k_subsets_lex(n: usize, k: usize) -> Vec<Set> {
    let mut out = k_subsets_revlex(n, k);
    out.sort_by_key(|&s| lex_key(s));
    out
}

/// Sort key realising lex order on equal-cardinality subsets.
pub fn lex_key(s: Set) -> Vec<usize> {
    elements(s).collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Applies a relabeling `perm` (old element `i` becomes `perm[i]`).
pub fn relabel(s: Set, perm: &[usize]) -> Set {
    elements(s).fold(0, |acc, e| acc | singleton(perm[e]))
}

/// Formats a subset 1-based, e.g. `{1,2,4}`.
pub fn fmt_set(s: Set) -> String {
    let mut out = String::from("{");
    for (i, e) in elements(s).enumerate() {
        if i > 0 {
            out.push(',');
        }
        let _ = write!(out, "{}", e + 1);
    }
    out.push('}');
    out
}

/// Compact 1-based formatting without separators when every label is a single
/// digit (`1234`), comma separated otherwise.
pub fn fmt_set_compact(s: Set, n: usize) -> String {
    if n <= 9 {
        elements(s).map(|e| char::from(b'1' + e as u8)).collect()
    } else {
        elements(s)
            .map(|e| (e + 1).to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}
