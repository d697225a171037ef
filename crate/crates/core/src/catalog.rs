//! Matroid catalogs: revlex basis strings, small enumerations, ingestion of
//! external dumps and survey records.
//!
//! A revlex string for `(n, k)` has one character per k-subset of `[n]` in
//! revlex order, `*` for a basis and `0` otherwise. For `(n, k) = (4, 2)`
//! the positions are
//!
//! ```text
//! 0:{1,2} 1:{1,3} 2:{2,3} 3:{1,4} 4:{2,4} 5:{3,4}
//! ```
//!
//! so `"*****0"` is the matroid in which `{3,4}` is the only nonbasis.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufRead, BufReader};
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matroid::{CanonicalForm, Matroid, MatroidError};
use crate::poly::Budget;
use crate::realization::{
    compare_spaces, realization_space, RealizationError, sp_realization_space_from, RealizationOptions, RealizationSpace,
};
use crate::subsets::{self, Set};

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("expected {expected} characters for (n, k) = ({n}, {k}), found {got}")]
    WrongLength { n: usize, k: usize, expected: usize, got: usize },
    #[error("unexpected character {ch:?} at position {pos}")]
    BadChar { pos: usize, ch: char },
    #[error("malformed header: {0}")]
    BadHeader(String),
    #[error("{0}")]
    Matroid(#[from] MatroidError),
    #[error("unsupported catalog (rank {k}, n {n})")]
    Unsupported { k: usize, n: usize },
    #[error(transparent)]
    Realization(#[from] RealizationError),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("bad record: {0}")]
    Record(#[from] serde_json::Error),
}

/// Parses a revlex basis string for the given shape.
pub fn parse_revlex_with(text: &str, k: usize, n: usize) -> Result<Matroid, CatalogError> {
    let text = text.trim();
    let subsets = subsets::k_subsets_revlex(n, k);
    let got = text.chars().count();
    if got != subsets.len() {
        return Err(CatalogError::WrongLength {
            n,
            k,
            expected: subsets.len(),
            got,
        });
    }
    let mut bases = Vec::new();
    for (pos, (ch, &s)) in text.chars().zip(&subsets).enumerate() {
        match ch {
            '*' => bases.push(s),
            '0' => {}
            _ => return Err(CatalogError::BadChar { pos, ch }),
        }
    }
    Ok(Matroid::from_bases(n, k, bases)?)
}

/// Parses a line `rank n string`.
pub fn parse_revlex(line: &str) -> Result<Matroid, CatalogError> {
    let mut it = line.split_whitespace();
    let (Some(k), Some(n), Some(s), None) = (it.next(), it.next(), it.next(), it.next()) else {
        return Err(CatalogError::BadHeader(line.trim().to_string()));
    };
    let parse = |t: &str| t.parse::<usize>().map_err(|_| CatalogError::BadHeader(line.trim().to_string()));
    let (k, n) = (parse(k)?, parse(n)?);
    if n > subsets::MAX_GROUND || k > n {
        return Err(CatalogError::Unsupported { k, n });
    }
    parse_revlex_with(s, k, n)
}

fn parse_label(ch: char, pos: usize) -> Result<usize, CatalogError> {
    match ch {
        '1'..='9' => Ok(ch as usize - '1' as usize),
        'a'..='g' => Ok(ch as usize - 'a' as usize + 9),
        _ => Err(CatalogError::BadChar { pos, ch }),
    }
}

/// Parses either a revlex line `rank n string` or a list such as
/// `n=9 k=4 nonbases=1234,4567,1789` or `n=4 bases=12,13,14,23,24`.
/// Elements are the digits `1..9` followed by `a..g` for 10 to 16.
pub fn parse_matroid(text: &str) -> Result<Matroid, CatalogError> {
    let text = text.trim();
    if !text.contains('=') {
        return parse_revlex(text);
    }
    let bad = || CatalogError::BadHeader(text.to_string());
    let (mut n, mut k, mut sets, mut nonbases) = (None, None, None, false);
    for field in text.split_whitespace() {
        let (key, value) = field.split_once('=').ok_or_else(bad)?;
        match key {
            "n" => n = Some(value.parse::<usize>().map_err(|_| bad())?),
            "k" | "rank" => k = Some(value.parse::<usize>().map_err(|_| bad())?),
            "bases" | "nonbases" => {
                nonbases = key == "nonbases";
                let mut list = Vec::new();
                for word in value.split(',').filter(|w| !w.is_empty()) {
                    let mut set: Set = 0;
                    for (pos, ch) in word.chars().enumerate() {
                        set |= 1 << parse_label(ch, pos)?;
                    }
                    list.push(set);
                }
                sets = Some(list);
            }
            _ => return Err(bad()),
        }
    }
    let n = n.ok_or_else(bad)?;
    let sets = sets.ok_or_else(bad)?;
    if n > subsets::MAX_GROUND {
        return Err(CatalogError::Unsupported { k: k.unwrap_or(0), n });
    }
    let k = match (k, sets.first()) {
        (Some(k), _) => k,
        (None, Some(&s)) => subsets::card(s),
        (None, None) => return Err(bad()),
    };
    if nonbases {
        Ok(Matroid::from_nonbases(n, k, &sets)?)
    } else {
        Ok(Matroid::from_bases(n, k, sets)?)
    }
}

pub fn revlex_string(m: &Matroid) -> String {
    subsets::k_subsets_revlex(m.n(), m.rank())
        .into_iter()
        .map(|s| if m.is_basis(s) { '*' } else { '0' })
        .collect()
}

/// `rank n string`, the inverse of [`parse_revlex`].
pub fn emit_revlex(m: &Matroid) -> String {
    format!("{} {} {}", m.rank(), m.n(), revlex_string(m))
}

fn partitions(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if n == 0 {
        out.push(prefix.clone());
        return;
    }
    for part in (1..=n.min(max)).rev() {
        prefix.push(part);
        partitions(n - part, part, prefix, out);
        prefix.pop();
    }
}

/// Rank-2 matroid with `loops` loops followed by parallel classes of the
/// given sizes.
pub fn rank2_matroid(loops: usize, classes: &[usize]) -> Matroid {
    let n = loops + classes.iter().sum::<usize>();
    let mut class_of = vec![usize::MAX; n];
    let mut e = loops;
    for (c, &size) in classes.iter().enumerate() {
        for _ in 0..size {
            class_of[e] = c;
            e += 1;
        }
    }
    let bases = subsets::k_subsets_revlex(n, 2).into_iter().filter(|&s| {
        let v: Vec<usize> = subsets::elements(s).collect();
        class_of[v[0]] != usize::MAX && class_of[v[1]] != usize::MAX && class_of[v[0]] != class_of[v[1]]
    });
    Matroid::from_bases_unchecked(n, 2, bases).expect("rank-2 matroid")
}

/// All rank-2 matroids on `n` elements up to isomorphism, one per number of
/// loops and partition of the remaining elements into at least two classes.
pub fn enumerate_rank2(n: usize) -> Vec<Matroid> {
    let mut out = Vec::new();
    for loops in 0..n.saturating_sub(1) {
        let mut parts = Vec::new();
        partitions(n - loops, n - loops, &mut Vec::new(), &mut parts);
        for p in parts.into_iter().filter(|p| p.len() >= 2) {
            out.push(rank2_matroid(loops, &p));
        }
    }
    out
}

/// Lines (rank-2 flats) of a simple rank-3 matroid, including two-point lines.
fn lines_of(m: &Matroid) -> Vec<Set> {
    m.flats_of_rank(2)
}

fn rank3_from_lines(n: usize, lines: &[Set]) -> Matroid {
    let bases = subsets::k_subsets_revlex(n, 3)
        .into_iter()
        .filter(|&t| !lines.iter().any(|&l| l & t == t));
    Matroid::from_bases_unchecked(n, 3, bases).expect("simple rank-3 matroid")
}

/// Pairwise disjoint subfamilies of `lines`, as lists of indices.
fn disjoint_families(lines: &[Set], start: usize, used: Set, chosen: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    visit(chosen);
    for i in start..lines.len() {
        if lines[i] & used == 0 {
            chosen.push(i);
            disjoint_families(lines, i + 1, used | lines[i], chosen, visit);
            chosen.pop();
        }
    }
}

/// One-point extensions of a simple rank-3 matroid: the new point joins a
/// pairwise disjoint family of existing lines.
fn single_extensions(m: &Matroid) -> Vec<Matroid> {
    let n = m.n();
    let lines = lines_of(m);
    let big: Vec<Set> = lines.iter().copied().filter(|&l| subsets::card(l) >= 3).collect();
    let p = 1 << n;
    let mut out = Vec::new();
    disjoint_families(&lines, 0, 0, &mut Vec::new(), &mut |chosen| {
        let mut new_lines: Vec<Set> = big.clone();
        for &i in chosen {
            let l = lines[i];
            if subsets::card(l) >= 3 {
                let pos = new_lines.iter().position(|&x| x == l).expect("big line");
                new_lines[pos] |= p;
            } else {
                new_lines.push(l | p);
            }
        }
        out.push(rank3_from_lines(n + 1, &new_lines));
    });
    out
}

/// Simple rank-3 matroids on `n` elements up to isomorphism, sorted by
/// canonical form.
pub fn enumerate_simple_rank3(n: usize) -> Vec<Matroid> {
    if n < 3 {
        return Vec::new();
    }
    let mut level: Vec<CanonicalForm> = vec![Matroid::uniform(3, 3).canonical_form()];
    for _ in 3..n {
        let candidates: Vec<CanonicalForm> = level
            .par_iter()
            .flat_map_iter(|c| single_extensions(&c.to_matroid()))
            .map(|m| m.canonical_form())
            .collect();
        let mut seen: HashSet<CanonicalForm> = HashSet::new();
        let mut next: Vec<CanonicalForm> = candidates.into_iter().filter(|c| seen.insert(c.clone())).collect();
        next.sort();
        level = next;
    }
    level.iter().map(CanonicalForm::to_matroid).collect()
}

/// Streaming reader of a revlex catalog. Lines may carry the `rank n`
/// prefix; blank lines and `#` comments are skipped.
pub struct CatalogReader<R> {
    lines: io::Lines<R>,
    line_no: usize,
    k: usize,
    n: usize,
}

impl<R: BufRead> CatalogReader<R> {
    pub fn new(reader: R, k: usize, n: usize) -> Self {
        CatalogReader {
            lines: reader.lines(),
            line_no: 0,
            k,
            n,
        }
    }
}

impl<R: BufRead> Iterator for CatalogReader<R> {
    /// Line number (1-based) and the parsed matroid.
    type Item = (usize, Result<Matroid, CatalogError>);

    fn next(&mut self) -> Option<Self::Item> {
        loop {
            let line = self.lines.next()?;
            self.line_no += 1;
            let line = match line {
                Ok(l) => l,
                Err(e) => return Some((self.line_no, Err(e.into()))),
            };
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let parsed = if t.contains(char::is_whitespace) {
                parse_revlex(t).and_then(|m| {
                    if (m.rank(), m.n()) == (self.k, self.n) {
                        Ok(m)
                    } else {
                        Err(CatalogError::BadHeader(format!("expected rank {} n {}", self.k, self.n)))
                    }
                })
            } else {
                parse_revlex_with(t, self.k, self.n)
            };
            return Some((self.line_no, parsed));
        }
    }
}

pub fn ingest_catalog(path: &Path, k: usize, n: usize) -> Result<CatalogReader<BufReader<File>>, CatalogError> {
    Ok(CatalogReader::new(BufReader::new(File::open(path)?), k, n))
}

/// Counts for one row of the matroid count table.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountRow {
    pub rank: usize,
    pub n: usize,
    pub classes: usize,
    pub self_projecting: usize,
    /// Lines rejected while parsing, with their line numbers.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rejected: Vec<(usize, String)>,
}

pub fn count_row(k: usize, n: usize, matroids: &[Matroid]) -> CountRow {
    CountRow {
        rank: k,
        n,
        classes: matroids.len(),
        self_projecting: matroids.par_iter().filter(|m| m.is_self_projecting()).count(),
        rejected: Vec::new(),
    }
}

/// Simple matroids of an ingested catalog, deduplicated up to isomorphism,
/// plus the rejected lines.
pub fn ingest_simple_classes(
    path: &Path,
    k: usize,
    n: usize,
) -> Result<(Vec<Matroid>, Vec<(usize, String)>), CatalogError> {
    let mut rejected = Vec::new();
    let mut simple = Vec::new();
    for (line, parsed) in ingest_catalog(path, k, n)? {
        match parsed {
            Ok(m) if m.is_simple() => simple.push(m),
            Ok(_) => {}
            Err(e) => rejected.push((line, e.to_string())),
        }
    }
    let keyed: Vec<(CanonicalForm, Matroid)> = simple.into_par_iter().map(|m| (m.canonical_form(), m)).collect();
    let mut seen = HashSet::new();
    let classes = keyed.into_iter().filter(|(c, _)| seen.insert(c.clone())).map(|(_, m)| m).collect();
    Ok((classes, rejected))
}

/// One matroid of a survey with its realization data.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurveyRecord {
    pub rank: usize,
    pub n: usize,
    /// Revlex string of the canonical form.
    pub canonical: String,
    pub self_projecting: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_dim: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s_dim: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(default)]
    pub r_timeout: bool,
    #[serde(default)]
    pub s_timeout: bool,
    /// The self-projecting space was certified equal without elimination.
    #[serde(default)]
    pub s_shortcut: bool,
    #[serde(default)]
    pub seconds: f64,
    /// Revlex string of the matroid the spaces were computed for, when it is
    /// not the canonical form.
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub input: String,
    /// 1-based: element `i` (of `input` if present, else of the canonical
    /// form) is column `relabeling[i]` of `matrix`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relabeling: Vec<usize>,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub matrix: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub r_generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub s_generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub inverted: Vec<String>,
}

impl SurveyRecord {
    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("record serializes")
    }

    pub fn from_line(line: &str) -> Result<Self, CatalogError> {
        Ok(serde_json::from_str(line)?)
    }

    /// The record with timing removed, for comparing runs.
    pub fn without_timing(&self) -> Self {
        SurveyRecord {
            seconds: 0.0,
            ..self.clone()
        }
    }

    pub fn matroid(&self) -> Result<Matroid, CatalogError> {
        parse_revlex_with(&self.canonical, self.rank, self.n)
    }
}

#[derive(Clone, Debug)]
pub enum SurveySource {
    Rank2(usize),
    SimpleRank3(usize),
    Catalog { path: std::path::PathBuf, rank: usize, n: usize },
    Matroids(Vec<Matroid>),
}

#[derive(Clone, Copy, Debug)]
pub struct SurveyOptions {
    /// Compute realization spaces of the self-projecting matroids.
    pub realize: bool,
    /// Per-matroid budget for the realization computations.
    pub realization: RealizationOptions,
    pub jobs: usize,
}

impl Default for SurveyOptions {
    fn default() -> Self {
        SurveyOptions {
            realize: true,
            realization: RealizationOptions::default(),
            jobs: 1,
        }
    }
}

fn source_matroids(source: &SurveySource) -> Result<Vec<Matroid>, CatalogError> {
    Ok(match source {
        SurveySource::Rank2(n) => enumerate_rank2(*n),
        SurveySource::SimpleRank3(n) => {
            if *n > 9 {
                return Err(CatalogError::Unsupported { k: 3, n: *n });
            }
            enumerate_simple_rank3(*n)
        }
        SurveySource::Catalog { path, rank, n } => ingest_simple_classes(path, *rank, *n)?.0,
        SurveySource::Matroids(ms) => ms.clone(),
    })
}

fn remaining(opts: &RealizationOptions, start: Instant) -> RealizationOptions {
    RealizationOptions {
        seconds: opts.seconds.map(|s| (s - start.elapsed().as_secs_f64()).max(0.0)),
        ..*opts
    }
}

fn generators(space: &RealizationSpace) -> Vec<String> {
    space.generators().iter().map(ToString::to_string).collect()
}

impl SurveyRecord {
    /// Record of the canonical form of `m`, without realization data.
    pub fn for_matroid(m: &Matroid) -> Self {
        let canonical = m.canonical_form();
        SurveyRecord {
            rank: m.rank(),
            n: m.n(),
            canonical: canonical.revlex_string(),
            self_projecting: m.is_self_projecting(),
            r_dim: None,
            s_dim: None,
            verdict: None,
            r_timeout: false,
            s_timeout: false,
            s_shortcut: false,
            seconds: 0.0,
            input: String::new(),
            relabeling: Vec::new(),
            matrix: String::new(),
            r_generators: Vec::new(),
            s_generators: Vec::new(),
            inverted: Vec::new(),
        }
    }

    /// Fills in the realization data. The spaces must be computed for the
    /// matroid as given, which is recorded through the relabeling.
    pub fn set_realization(&mut self, r: &RealizationSpace) {
        let labeled = revlex_string(&r.coordinates.matroid().relabel(&inverse(r.coordinates.relabeling())));
        self.input = if labeled == self.canonical { String::new() } else { labeled };
        self.r_dim = r.dimension;
        self.r_timeout = r.timed_out();
        self.relabeling = r.coordinates.relabeling().iter().map(|e| e + 1).collect();
        self.matrix = r.coordinates.to_string().trim_end().replace('\n', "; ");
        self.r_generators = generators(r);
        self.inverted = r.inverted.iter().map(ToString::to_string).collect();
    }

    pub fn set_self_projecting(&mut self, s: &RealizationSpace) {
        self.s_dim = s.dimension;
        self.s_timeout = s.timed_out();
        self.s_shortcut = s.shortcut;
        self.s_generators = generators(s);
    }
}

fn inverse(perm: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    inv
}

/// Survey record of a single matroid, computed on its canonical form.
pub fn survey_matroid(m: &Matroid, opts: &SurveyOptions) -> Result<SurveyRecord, CatalogError> {
    let start = Instant::now();
    let m = m.canonical_form().to_matroid();
    let mut rec = SurveyRecord::for_matroid(&m);
    if opts.realize && rec.self_projecting {
        let r = realization_space(&m, &opts.realization)?;
        let s = sp_realization_space_from(&r, &remaining(&opts.realization, start))?;
        let left = remaining(&opts.realization, start);
        let budget = left.seconds.map_or_else(Budget::unlimited, Budget::seconds);
        let verdict = compare_spaces(&r, &s, &budget)?;
        rec.set_realization(&r);
        rec.set_self_projecting(&s);
        rec.verdict = Some(verdict.label().to_string());
    }
    rec.seconds = start.elapsed().as_secs_f64();
    Ok(rec)
}

/// Surveys every matroid of the source on `jobs` workers; records come back
/// sorted by canonical form whatever the number of workers.
pub fn run_survey(source: &SurveySource, opts: &SurveyOptions) -> Result<Vec<SurveyRecord>, CatalogError> {
    let matroids = source_matroids(source)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs.max(1))
        .build()
        .map_err(|e| CatalogError::Io(io::Error::other(e)))?;
    let mut records: Vec<SurveyRecord> = pool.install(|| {
        matroids
            .par_iter()
            .map(|m| survey_matroid(m, opts))
            .collect::<Result<Vec<_>, _>>()
    })?;
    records.sort_by(|a, b| (a.rank, a.n, &a.canonical).cmp(&(b.rank, b.n, &b.canonical)));
    Ok(records)
}

/// Dimension counts (`-1` for empty) of the completed computations and the
/// number of timeouts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Histogram {
    pub counts: BTreeMap<i64, usize>,
    pub timeouts: usize,
}

impl Histogram {
    pub fn get(&self, dim: i64) -> usize {
        self.counts.get(&dim).copied().unwrap_or(0)
    }

    /// Counts for dimensions `-1..=max`.
    pub fn row(&self, max: i64) -> Vec<usize> {
        (-1..=max).map(|d| self.get(d)).collect()
    }
}

pub fn histograms(records: &[SurveyRecord]) -> (Histogram, Histogram) {
    let mut r = Histogram::default();
    let mut s = Histogram::default();
    for rec in records.iter().filter(|r| r.self_projecting) {
        for (h, dim, timeout) in [(&mut r, rec.r_dim, rec.r_timeout), (&mut s, rec.s_dim, rec.s_timeout)] {
            match dim {
                Some(d) if !timeout => *h.counts.entry(d).or_default() += 1,
                _ => h.timeouts += 1,
            }
        }
    }
    (r, s)
}

/// Aligned text table: one row per label, columns `-1..=max` and timeouts.
pub fn format_dimension_table(rows: &[(String, Histogram)]) -> String {
    let max = rows
        .iter()
        .flat_map(|(_, h)| h.counts.keys().copied())
        .max()
        .unwrap_or(0)
        .max(0);
    let label_w = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0).max(8);
    let mut out = String::new();
    let _ = write!(out, "{:<label_w$} |", "(n,space)");
    for d in -1..=max {
        let _ = write!(out, " {d:>4}");
    }
    out.push_str(" | timeout\n");
    out.push_str(&"-".repeat(label_w + 2 + 5 * (max as usize + 2) + 10));
    out.push('\n');
    for (label, h) in rows {
        let _ = write!(out, "{label:<label_w$} |");
        for c in h.row(max) {
            let _ = write!(out, " {c:>4}");
        }
        let _ = writeln!(out, " | {:>7}", h.timeouts);
    }
    out
}

pub fn format_count_table(rows: &[CountRow]) -> String {
    let mut out = String::from("rank    n  classes  self-proj\n");
    for r in rows {
        let _ = writeln!(out, "{:>4} {:>4} {:>8} {:>10}", r.rank, r.n, r.classes, r.self_projecting);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::subsets::from_elements;

    #[test]
    fn pinned_revlex_positions() {
        let m = Matroid::from_nonbases(4, 2, &[from_elements([2, 3])]).unwrap();
        assert_eq!(revlex_string(&m), "*****0");
        let m = Matroid::from_nonbases(4, 2, &[from_elements([0, 2])]).unwrap();
        assert_eq!(revlex_string(&m), "*0****");
        assert_eq!(parse_revlex("2 3 ***").unwrap(), Matroid::uniform(2, 3));
        assert_eq!(emit_revlex(&Matroid::uniform(2, 3)), "2 3 ***");
    }

    #[test]
    fn matroid_lists() {
        let m = parse_matroid("n=9 k=4 nonbases=1234,4567,1789").unwrap();
        assert_eq!(m.nonbases().len(), 3);
        assert_eq!(parse_matroid("n=3 bases=12,13,23").unwrap(), Matroid::uniform(2, 3));
        assert_eq!(parse_matroid("2 3 ***").unwrap(), Matroid::uniform(2, 3));
        assert_eq!(parse_matroid("n=10 nonbases=9a").unwrap().n(), 10);
        assert!(parse_matroid("n=3 bases=12,34").is_err());
        assert!(parse_matroid("n=3").is_err());
    }

    #[test]
    fn rejections() {
        assert!(matches!(parse_revlex("2 3 000"), Err(CatalogError::Matroid(MatroidError::NoBases))));
        assert!(matches!(parse_revlex("2 3 **"), Err(CatalogError::WrongLength { .. })));
        assert!(matches!(parse_revlex("2 3 *x*"), Err(CatalogError::BadChar { pos: 1, ch: 'x' })));
        // {1,2} and {3,4} only: exchange fails
        assert!(matches!(parse_revlex("2 4 *0000*"), Err(CatalogError::Matroid(_))));
        assert!(parse_revlex("2 three ***").is_err());
    }

    #[test]
    fn reader_collects_errors() {
        let text = "# header\n***\n\n*0*\n2 3 ***\n3 3 *\n";
        let items: Vec<_> = CatalogReader::new(text.as_bytes(), 2, 3).collect();
        assert_eq!(items.len(), 4);
        assert!(items[0].1.is_ok());
        assert_eq!(items[1].0, 4);
        assert!(items[1].1.is_ok());
        assert!(items[2].1.is_ok());
        assert!(items[3].1.is_err());
        assert_eq!(CatalogReader::new("".as_bytes(), 2, 3).count(), 0);
    }

    #[test]
    fn rank2_counts_match_closed_form() {
        // sum over loops l of partitions of n - l with at least two parts
        fn p(n: usize, max: usize) -> usize {
            if n == 0 {
                return 1;
            }
            (1..=n.min(max)).map(|q| p(n - q, q)).sum()
        }
        for n in 2..=9 {
            let expected: usize = (0..n - 1).map(|l| p(n - l, n - l) - 1).sum();
            let ms = enumerate_rank2(n);
            assert_eq!(ms.len(), expected);
            let forms: HashSet<_> = ms.iter().map(Matroid::canonical_form).collect();
            assert_eq!(forms.len(), ms.len());
        }
    }

    #[test]
    fn rank2_criterion_agrees() {
        for m in enumerate_rank2(7) {
            let profile = m.rank2_profile().unwrap();
            assert_eq!(m.is_self_projecting(), !profile.has_half_coloop());
        }
    }

    #[test]
    fn small_simple_rank3() {
        assert_eq!(enumerate_simple_rank3(4).len(), 2);
        assert_eq!(enumerate_simple_rank3(5).len(), 4);
        for m in enumerate_simple_rank3(5) {
            assert!(m.is_simple());
            assert_eq!(m.rank(), 3);
        }
    }

    #[test]
    fn record_line_round_trip() {
        let opts = SurveyOptions {
            realization: RealizationOptions::unlimited(),
            ..SurveyOptions::default()
        };
        let rec = survey_matroid(&Matroid::uniform(2, 4), &opts).unwrap();
        assert_eq!(rec.r_dim, Some(1));
        assert_eq!(rec.verdict.as_deref(), Some("equal"));
        assert_eq!(SurveyRecord::from_line(&rec.to_line()).unwrap(), rec);
        assert_eq!(rec.matroid().unwrap().canonical_form(), Matroid::uniform(2, 4).canonical_form());
    }
}
