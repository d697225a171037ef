//! End-to-end acceptance checks, one line per criterion.
//!
//! Rank-4 catalog checks run when `SPG_RANK4_CATALOG_DIR` names a directory
//! holding `r4n8.txt` and `r4n9.txt` (revlex, one matroid per line). The
//! sampled rank-4 realization check additionally needs `SPG_ACCEPTANCE_LONG=1`
//! and honours `SPG_BUDGET_SECONDS`.

mod common;

use std::collections::{BTreeMap, HashSet};
use std::env;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use selfproj::catalog::{
    enumerate_rank2, enumerate_simple_rank3, revlex_string, histograms, ingest_simple_classes, run_survey, Histogram, SurveyOptions,
    SurveySource,
};
use selfproj::linalg::{multi_veronese, pluecker, ratio, rat, QMatrix, Rational};
use selfproj::matroid::Matroid;
use selfproj::poly::{
    buchberger, eliminate, is_groebner_basis, parse_polynomial, saturate, Budget, GroebnerBasis, Monomial,
    MonomialOrder, Polynomial, Ring,
};
use selfproj::positroid::survey_positroids;
use selfproj::realization::{
    compare_spaces, realization_space, sgr_vanishing_test, sp_realization_space_from, Comparison, RealizationOptions,
};
use selfproj::selfproj::{certify_self_projecting, cocircuit_residual, stiefel_residual, Certificate, Refusal};
use selfproj::subsets;

/// Exact arithmetic throughout: every numeric comparison below is equality.
const TOLERANCE: i64 = 0;
/// Per-matroid wall-clock budget for realization computations, seconds.
const BUDGET_SECONDS: f64 = 360.0;
/// Timeouts allowed for the rank-3, 8-element self-projecting spaces.
const MAX_TIMEOUTS_N8: usize = 4;

enum Verdict {
    Pass(String),
    Fail(String),
    Skip(String),
}

type Check = fn() -> Verdict;

fn verdict(ok: bool, detail: String) -> Verdict {
    if ok {
        Verdict::Pass(detail)
    } else {
        Verdict::Fail(detail)
    }
}

fn catalog_dir() -> Option<PathBuf> {
    env::var_os("SPG_RANK4_CATALOG_DIR").map(PathBuf::from)
}

fn survey_options() -> SurveyOptions {
    SurveyOptions {
        realize: true,
        realization: RealizationOptions {
            seconds: Some(BUDGET_SECONDS),
            ..RealizationOptions::default()
        },
        jobs: 1,
    }
}

fn counts(ms: &[Matroid]) -> (usize, usize) {
    (ms.len(), ms.iter().filter(|m| m.is_self_projecting()).count())
}

fn enumerated_counts() -> Verdict {
    let rank2 = [(7, 2), (13, 5), (23, 12), (37, 22), (58, 39), (87, 63), (128, 99)];
    let rank3 = [(9, 2), (23, 12), (68, 53), (383, 363)];
    let mut bad = Vec::new();
    for (n, want) in (4..=10).zip(rank2) {
        let got = counts(&enumerate_rank2(n));
        if got != want {
            bad.push(format!("rank 2, n={n}: {got:?} != {want:?}"));
        }
    }
    for (n, want) in (6..=9).zip(rank3) {
        let got = counts(&enumerate_simple_rank3(n));
        if got != want {
            bad.push(format!("rank 3, n={n}: {got:?} != {want:?}"));
        }
    }
    verdict(bad.is_empty(), if bad.is_empty() { "11 rows match".into() } else { bad.join("; ") })
}

fn ingested_counts() -> Verdict {
    let Some(dir) = catalog_dir() else {
        return Verdict::Skip("SPG_RANK4_CATALOG_DIR not set".into());
    };
    let mut notes = Vec::new();
    let mut ok = true;
    for (n, want) in [(8, (617, 13)), (9, (185981, 7365))] {
        let path = dir.join(format!("r4n{n}.txt"));
        if !path.exists() {
            return Verdict::Skip(format!("{} missing", path.display()));
        }
        let (classes, rejected) = match ingest_simple_classes(&path, 4, n) {
            Ok(x) => x,
            Err(e) => return Verdict::Fail(format!("{}: {e}", path.display())),
        };
        let got = counts(&classes);
        ok &= got == want && rejected.is_empty();
        notes.push(format!("n={n}: {got:?} (want {want:?}, {} rejected lines)", rejected.len()));
    }
    verdict(ok, notes.join("; "))
}

fn histogram_matches(h: &Histogram, want: &[usize]) -> bool {
    h.row(want.len() as i64 - 2) == want && h.counts.values().sum::<usize>() == want.iter().sum::<usize>()
}

fn rank3_dimensions() -> Verdict {
    let table: [(usize, [usize; 10], [usize; 10]); 3] = [
        (6, [0, 0, 0, 1, 1, 0, 0, 0, 0, 0], [0, 0, 0, 2, 0, 0, 0, 0, 0, 0]),
        (7, [1, 1, 1, 3, 3, 1, 1, 1, 0, 0], [1, 1, 1, 3, 3, 1, 1, 1, 0, 0]),
        (8, [2, 2, 5, 11, 12, 11, 5, 3, 1, 1], [2, 2, 5, 11, 12, 9, 3, 3, 1, 1]),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (n, want_r, want_s) in table {
        let records = match run_survey(&SurveySource::SimpleRank3(n), &survey_options()) {
            Ok(r) => r,
            Err(e) => return Verdict::Fail(format!("n={n}: {e}")),
        };
        let (r, s) = histograms(&records);
        let r_ok = r.timeouts == 0 && histogram_matches(&r, &want_r);
        let s_ok = if n < 8 {
            s.timeouts == 0 && histogram_matches(&s, &want_s)
        } else {
            // Our completed S dimensions may exceed the reference only by
            // cases it could not finish: two of dimension 4, two of 5.
            let mut excess: BTreeMap<i64, usize> = BTreeMap::new();
            let mut below = false;
            for (i, &w) in want_s.iter().enumerate() {
                let d = i as i64 - 1;
                let got = s.get(d);
                if got < w {
                    below = true;
                } else if got > w {
                    excess.insert(d, got - w);
                }
            }
            let allowed = excess.iter().all(|(&d, &c)| matches!((d, c), (4, 1..=2) | (5, 1..=2)));
            !below
                && allowed
                && s.timeouts <= MAX_TIMEOUTS_N8
                && s.counts.values().sum::<usize>() + s.timeouts == want_s.iter().sum::<usize>() + 4
        };
        ok &= r_ok && s_ok;
        notes.push(format!(
            "n={n}: R {:?}{} S {:?}{}",
            r.row(8),
            if r_ok { "" } else { " MISMATCH" },
            s.row(8),
            if s_ok { "" } else { " MISMATCH" }
        ));
        if s.timeouts > 0 {
            notes.push(format!("n={n}: {} S timeouts", s.timeouts));
        }
    }
    verdict(ok, notes.join("; "))
}

fn rank2_equal() -> Verdict {
    let opts = RealizationOptions {
        seconds: Some(BUDGET_SECONDS),
        shortcut: false,
        ..RealizationOptions::default()
    };
    let mut checked = 0;
    let mut bad = Vec::new();
    for n in 2..=6 {
        for m in enumerate_rank2(n).into_iter().filter(Matroid::is_self_projecting) {
            let outcome = realization_space(&m, &opts).and_then(|r| {
                let s = sp_realization_space_from(&r, &opts)?;
                compare_spaces(&r, &s, &Budget::seconds(BUDGET_SECONDS))
            });
            checked += 1;
            match outcome {
                Ok(Comparison::Equal) => {}
                Ok(c) => bad.push(format!("{}: {}", revlex_string(&m), c.label())),
                Err(e) => bad.push(format!("{}: {e}", revlex_string(&m))),
            }
        }
    }
    verdict(bad.is_empty() && checked > 0, format!("{checked} matroids, failures: {bad:?}"))
}

fn uniform_three_six() -> Verdict {
    let m = Matroid::uniform(3, 6);
    let opts = RealizationOptions {
        seconds: Some(BUDGET_SECONDS),
        ..RealizationOptions::default()
    };
    let r = match realization_space(&m, &opts) {
        Ok(r) => r,
        Err(e) => return Verdict::Fail(e.to_string()),
    };
    let s = match sp_realization_space_from(&r, &opts) {
        Ok(s) => s,
        Err(e) => return Verdict::Fail(e.to_string()),
    };
    let cmp = compare_spaces(&r, &s, &Budget::seconds(BUDGET_SECONDS)).map(|c| c.label());
    let ok = r.dimension == Some(3) && s.dimension == Some(2) && cmp.as_ref().ok() == Some(&"S-strictly-smaller");
    verdict(ok, format!("dim R = {:?} (want 3), dim S = {:?} (want 2), comparison {cmp:?}", r.dimension, s.dimension))
}

fn zero_dimensional_example() -> QMatrix {
    QMatrix::from_rows(vec![
        vec![rat(1), rat(0), rat(0), rat(0), ratio(2, 3), rat(0), rat(1), rat(1), ratio(1, 2)],
        vec![rat(0), rat(1), rat(0), rat(0), rat(0), rat(2), ratio(1, 2), rat(1), ratio(1, 2)],
        vec![rat(0), rat(0), rat(1), rat(0), rat(1), rat(1), rat(1), rat(1), rat(1)],
        vec![rat(0), rat(0), rat(0), rat(1), rat(2), rat(2), rat(2), rat(1), rat(1)],
    ])
    .expect("4 x 9")
}

fn not_sp_realizable() -> Verdict {
    let x = zero_dimensional_example();
    let rank = multi_veronese(&x).rank();
    let refused = matches!(certify_self_projecting(&x), Ok(Certificate::Refused(Refusal::KernelTrivial)));
    let m = match Matroid::from_matrix(&x) {
        Ok(m) => m,
        Err(e) => return Verdict::Fail(e.to_string()),
    };
    let opts = RealizationOptions {
        seconds: Some(BUDGET_SECONDS),
        ..RealizationOptions::default()
    };
    let spaces = realization_space(&m, &opts).and_then(|r| {
        let s = sp_realization_space_from(&r, &opts)?;
        Ok((r, s))
    });
    let (r_dim, s_empty) = match &spaces {
        Ok((r, s)) => (r.dimension, s.is_empty()),
        Err(e) => return Verdict::Fail(e.to_string()),
    };
    let ok = rank == 9 && refused && m.is_self_projecting() && r_dim == Some(0) && s_empty == Some(true);
    verdict(
        ok,
        format!(
            "rank nu = {rank}, refused = {refused}, self-projecting = {}, dim R = {r_dim:?}, S empty = {s_empty:?}",
            m.is_self_projecting()
        ),
    )
}

fn positroid_rows() -> Verdict {
    let rows = [
        ((3, 6), (8, 2, 2)),
        ((3, 7), (13, 5, 5)),
        ((3, 8), (23, 13, 13)),
        ((4, 8), (124, 6, 6)),
        ((3, 9), (38, 26, 26)),
        ((3, 10), (64, 50, 50)),
        ((4, 9), (408, 30, 29)),
        ((4, 10), (1301, 200, 200)),
        ((5, 10), (5270, 19, 19)),
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for ((k, n), want) in rows {
        let start = Instant::now();
        let s = match survey_positroids(k, n) {
            Ok(s) => s,
            Err(e) => return Verdict::Fail(e.to_string()),
        };
        let got = s.row();
        ok &= got == want;
        notes.push(format!("({k},{n}) {got:?} {:.0}s", start.elapsed().as_secs_f64()));
        if (k, n) == (4, 9) {
            let reference = Matroid::from_nonbases(
                9,
                4,
                &[
                    subsets::from_elements([0, 1, 2, 3]),
                    subsets::from_elements([3, 4, 5, 6]),
                    subsets::from_elements([0, 6, 7, 8]),
                ],
            )
            .expect("valid nonbases");
            let ex: Vec<_> = s.exceptional().collect();
            let iso = ex.len() == 1 && ex[0].canonical.to_matroid().is_isomorphic(&reference);
            ok &= iso;
            notes.push(format!("(4,9) exceptional class isomorphic to reference: {iso}"));
        }
    }
    verdict(ok, notes.join("; "))
}

/// Rank-3 matroids on 6 elements, including loops and parallel elements,
/// up to isomorphism.
fn all_rank3_on_six() -> Vec<Matroid> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for m in 3..=6 {
        for simple in enumerate_simple_rank3(m) {
            for loops in 0..=6 - m {
                let mut mult = vec![1usize; m];
                let extra = 6 - m - loops;
                distribute(extra, 0, &mut mult, &mut |mult| {
                    let mut point = Vec::new();
                    for (p, &c) in mult.iter().enumerate() {
                        point.extend(std::iter::repeat_n(Some(p), c));
                    }
                    point.extend(std::iter::repeat_n(None, loops));
                    let bases = subsets::k_subsets_revlex(6, 3).into_iter().filter(|&t| {
                        let pts: Vec<Option<usize>> = subsets::elements(t).map(|e| point[e]).collect();
                        match pts[..] {
                            [Some(a), Some(b), Some(c)] => {
                                a != b && b != c && a != c && simple.is_basis(subsets::from_elements([a, b, c]))
                            }
                            _ => false,
                        }
                    });
                    let lifted = Matroid::from_bases(6, 3, bases).expect("parallel extension");
                    if seen.insert(lifted.canonical_form()) {
                        out.push(lifted);
                    }
                });
            }
        }
    }
    out
}

fn distribute(extra: usize, from: usize, mult: &mut Vec<usize>, visit: &mut impl FnMut(&[usize])) {
    if extra == 0 {
        visit(mult);
        return;
    }
    for p in from..mult.len() {
        mult[p] += 1;
        distribute(extra - 1, p, mult, visit);
        mult[p] -= 1;
    }
}

fn within_tolerance(m: &QMatrix) -> bool {
    let tol = Rational::from_integer(TOLERANCE.into());
    m.entries().iter().all(|e| num_traits::Signed::abs(e) <= tol)
}

fn dimension_by_brute_force(nvars: usize, supports: &[u32]) -> i64 {
    (0u32..1 << nvars)
        .filter(|&s| supports.iter().all(|&g| g & !s != 0))
        .map(|s| s.count_ones() as i64)
        .max()
        .unwrap_or(-1)
}

fn same_ideal(a: &GroebnerBasis, b: &GroebnerBasis) -> bool {
    a.polys().iter().all(|p| b.contains(p)) && b.polys().iter().all(|p| a.contains(p))
}

fn property_suites() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e1f);
    let mut notes = Vec::new();
    let mut ok = true;

    // (a) isotropic Cayley points
    let mut certified = 0;
    for k in [2, 3, 4] {
        for _ in 0..100 {
            let x = common::random_cayley(k, &mut rng);
            let Ok(Certificate::SelfProjecting(w)) = certify_self_projecting(&x) else {
                ok = false;
                continue;
            };
            let stiefel = stiefel_residual(&x, w.values()).map(|r| within_tolerance(&r)).unwrap_or(false);
            let cocircuit = pluecker(&x)
                .ok()
                .and_then(|q| cocircuit_residual(&q, w.values()).ok())
                .map(|r| within_tolerance(&r))
                .unwrap_or(false);
            let free = Matroid::from_matrix(&x).map(|m| !m.has_half_coloop()).unwrap_or(false);
            if stiefel && cocircuit && free {
                certified += 1;
            } else {
                ok = false;
            }
        }
    }
    notes.push(format!("cayley {certified}/300"));

    // (b) Groebner engine
    let ring = Ring::new(["x", "y", "z", "w"], MonomialOrder::GRevLex).expect("ring");
    let mut gb_ok = 0;
    let trials = 40;
    for _ in 0..trials {
        let gens: Vec<Polynomial> = (0..rng.gen_range(2..=4)).map(|_| random_poly(&ring, &mut rng)).collect();
        match buchberger(&ring, &gens, &Budget::unlimited()) {
            Ok(gb) if is_groebner_basis(gb.polys()) && gens.iter().all(|g| gb.contains(g)) => gb_ok += 1,
            _ => ok = false,
        }
    }
    notes.push(format!("bases {gb_ok}/{trials}"));

    let oracle = oracle_examples();
    ok &= oracle.is_empty();
    if !oracle.is_empty() {
        notes.push(format!("oracle failures {oracle:?}"));
    }

    let mut dim_ok = 0;
    for _ in 0..200 {
        let nvars = rng.gen_range(1..=8);
        let names: Vec<String> = (0..nvars).map(|i| format!("v{i}")).collect();
        let r = Ring::new(names, MonomialOrder::GRevLex).expect("ring");
        let gens: Vec<Polynomial> = (0..rng.gen_range(1..=5))
            .map(|_| {
                let exps: Vec<u16> = (0..nvars).map(|_| if rng.gen_bool(0.3) { rng.gen_range(1..=2) } else { 0 }).collect();
                Polynomial::monomial(&r, Monomial::from_exponents(&exps), rat(1))
            })
            .collect();
        let supports: Vec<u32> = gens.iter().map(Polynomial::support).collect();
        let gb = buchberger(&r, &gens, &Budget::unlimited()).expect("monomial ideal");
        if gb.dimension() == dimension_by_brute_force(nvars, &supports) {
            dim_ok += 1;
        } else {
            ok = false;
        }
    }
    notes.push(format!("monomial dimensions {dim_ok}/200"));

    // (c) vanishing of det nu(X) on 3 x 6 configurations
    let sgr = sgr_vanishing_test(3, 6).expect("(3,6) supported");
    let mut vanish = 0;
    for _ in 0..100 {
        let x = common::random_cayley(3, &mut rng);
        if sgr.evaluate(&x).map(|v| v == rat(0)).unwrap_or(false) {
            vanish += 1;
        } else {
            ok = false;
        }
    }
    let generic = pinned_generic();
    let value = sgr.evaluate(&generic).expect("3 x 6");
    let full_rank = multi_veronese(&generic).rank() == 6;
    ok &= value != rat(0) && full_rank;
    notes.push(format!("det nu vanishes {vanish}/100, generic value {value}, generic nu full rank {full_rank}"));

    // (d) equivalences for n = 2k
    let mut catalog = enumerate_rank2(4);
    catalog.extend(all_rank3_on_six());
    let mut agree = 0;
    for m in &catalog {
        let a = !m.has_half_coloop();
        if a == m.has_disjoint_basis_property() && a == m.is_identically_self_dual() {
            agree += 1;
        } else {
            ok = false;
            notes.push(format!("equivalence fails for {}", revlex_string(m)));
        }
    }
    notes.push(format!("n=2k equivalences {agree}/{}", catalog.len()));
    verdict(ok, notes.join(", "))
}

/// The generic matrix whose `det nu` must not vanish.
fn pinned_generic() -> QMatrix {
    QMatrix::from_i64(&[&[1, 0, 0, 1, 1, 1], &[0, 1, 0, 1, 2, 3], &[0, 0, 1, 1, 5, 7]])
}

fn random_poly(ring: &std::sync::Arc<Ring>, rng: &mut impl Rng) -> Polynomial {
    let terms = (0..rng.gen_range(1..=3))
        .map(|_| {
            let exps: Vec<u16> = (0..ring.nvars()).map(|_| rng.gen_range(0..=2)).collect();
            (Monomial::from_exponents(&exps), Rational::from_integer(rng.gen_range(-3i64..=3).into()))
        })
        .collect();
    Polynomial::from_terms(ring, terms)
}

fn oracle_examples() -> Vec<String> {
    let mut bad = Vec::new();
    let ring = Ring::new(["t", "x", "y", "z"], MonomialOrder::GRevLex).expect("ring");
    let p = |s: &str| parse_polynomial(&ring, s).expect("polynomial");
    let ideal = |gens: &[&str]| {
        let gens: Vec<Polynomial> = gens.iter().map(|g| p(g)).collect();
        buchberger(&ring, &gens, &Budget::unlimited()).expect("basis")
    };
    let b = Budget::unlimited();
    let cases: Vec<(&str, GroebnerBasis, GroebnerBasis)> = vec![
        ("eliminate t from t*x-1", eliminate(&ring, &[p("t*x-1")], &[0], &b).expect("elim"), ideal(&["0"])),
        (
            "twisted cubic",
            eliminate(&ring, &[p("y-x^2"), p("z-x^3")], &[1], &b).expect("elim"),
            ideal(&["z^2-y^3"]),
        ),
        ("eliminate x from x+y, x-y", eliminate(&ring, &[p("x+y"), p("x-y")], &[1], &b).expect("elim"), ideal(&["y"])),
        ("saturate x*y by x", saturate(&ideal(&["x*y"]), &p("x"), &b).expect("sat"), ideal(&["y"])),
        ("saturate x^2 by x", saturate(&ideal(&["x^2"]), &p("x"), &b).expect("sat"), ideal(&["1"])),
        ("saturate x*(x-1) by x", saturate(&ideal(&["x^2-x"]), &p("x"), &b).expect("sat"), ideal(&["x-1"])),
    ];
    for (name, got, want) in cases {
        if !same_ideal(&got, &want) {
            bad.push(name.to_string());
        }
    }
    bad
}

fn sampled_rank4() -> Verdict {
    let Some(dir) = catalog_dir() else {
        return Verdict::Skip("SPG_RANK4_CATALOG_DIR not set".into());
    };
    if env::var_os("SPG_ACCEPTANCE_LONG").is_none() {
        return Verdict::Skip("long tier, set SPG_ACCEPTANCE_LONG=1".into());
    }
    let path = dir.join("r4n9.txt");
    let (classes, _) = match ingest_simple_classes(&path, 4, 9) {
        Ok(x) => x,
        Err(e) => return Verdict::Fail(format!("{}: {e}", path.display())),
    };
    // Sample: self-projecting non-uniform classes in file order, every
    // (N/200)-th one starting with the first.
    let pool: Vec<Matroid> = classes
        .into_iter()
        .filter(|m| m.is_self_projecting() && m.bases().len() < subsets::binomial(9, 4))
        .collect();
    let sample: Vec<&Matroid> = (0..200).map(|i| &pool[i * pool.len() / 200]).collect();
    let budget: f64 = env::var("SPG_BUDGET_SECONDS")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(BUDGET_SECONDS);
    let opts = RealizationOptions {
        seconds: Some(budget),
        ..RealizationOptions::default()
    };
    let mut tally: BTreeMap<&str, usize> = BTreeMap::new();
    let mut bad = Vec::new();
    for m in sample {
        let label = revlex_string(m);
        let result = realization_space(m, &opts).and_then(|r| {
            let s = sp_realization_space_from(&r, &opts)?;
            let c = compare_spaces(&r, &s, &Budget::seconds(budget))?;
            Ok((r, s, c))
        });
        let (r, s, c) = match result {
            Ok(x) => x,
            Err(e) => {
                bad.push(format!("{label}: {e}"));
                continue;
            }
        };
        let consistent = match &c {
            Comparison::Equal => r.dimension == s.dimension && r.dimension.is_some_and(|d| d >= 0),
            Comparison::SStrictlySmaller { .. } => matches!((r.dimension, s.dimension), (Some(a), Some(b)) if b <= a && b >= 0),
            Comparison::SEmptyRNonempty => {
                s.ideal.as_ref().is_some_and(GroebnerBasis::is_unit) && r.dimension.is_some_and(|d| d >= 0)
            }
            Comparison::BothEmpty => r.dimension == Some(-1),
            Comparison::Undetermined => true,
        };
        if !consistent {
            bad.push(format!("{label}: {} with dims {:?}/{:?}", c.label(), r.dimension, s.dimension));
        }
        *tally.entry(c.label()).or_default() += 1;
    }
    verdict(bad.is_empty(), format!("{tally:?}; inconsistencies {bad:?}"))
}

fn main() -> ExitCode {
    let checks: [(u32, &str, Check); 9] = [
        (1, "enumerated matroid counts", enumerated_counts),
        (2, "ingested rank-4 matroid counts", ingested_counts),
        (3, "rank-3 realization dimension histograms", rank3_dimensions),
        (4, "rank-2 spaces agree", rank2_equal),
        (5, "uniform rank-3 matroid on 6 elements", uniform_three_six),
        (6, "zero-dimensional matroid without self-projecting realization", not_sp_realizable),
        (7, "positroid survey rows", positroid_rows),
        (8, "property suites", property_suites),
        (9, "sampled rank-4 realization verdicts", sampled_rank4),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (id, name, check) in checks {
        let start = Instant::now();
        let v = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| Verdict::Fail(format!("panicked: {}", panic_message(&e))));
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match v {
            Verdict::Pass(d) => ("PASS", d),
            Verdict::Fail(d) => {
                failed += 1;
                ("FAIL", d)
            }
            Verdict::Skip(d) => ("SKIP", d),
        };
        println!("criterion {id} {tag} {name} ({secs:.1}s): {detail}");
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

fn panic_message(e: &Box<dyn std::any::Any + Send>) -> String {
    e.downcast_ref::<String>()
        .cloned()
        .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
        .unwrap_or_default()
}
