use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use selfproj::catalog::{
    self, count_row, format_count_table, format_dimension_table, histograms, parse_matroid, run_survey, CountRow,
    SurveyOptions, SurveyRecord, SurveySource,
};
use selfproj::linalg::{parse_rational, pluecker, QMatrix, Rational};
use selfproj::matroid::Matroid;
use selfproj::poly::Budget;
use selfproj::positroid::{survey_positroids, PositroidSurvey};
use selfproj::realization::{
    compare_spaces, realization_space, sp_realization_space_from, RealizationOptions, RealizationSpace, SpMode,
};
use selfproj::selfproj::{cayley_point, certify_self_projecting, cocircuit_residual, stiefel_residual, Certificate};
use selfproj::subsets::fmt_set;

#[derive(Parser)]
#[command(name = "spg", version, about = "Self-projecting matroids, realization spaces and positroids")]
struct Cli {
    /// Seconds allowed per realization computation.
    #[arg(long, global = true, env = "SPG_BUDGET_SECONDS", default_value_t = 360.0)]
    budget: f64,
    /// Worker threads for surveys.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomly generated inputs.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Records,
}

#[derive(Subcommand)]
enum Command {
    /// Self-projectivity, disjoint-basis property and half-coloops of a matroid.
    Check {
        /// `rank n revlex`, `n=.. bases=..`, `n=.. k=.. nonbases=..` or `@file`.
        matroid: String,
    },
    /// Finds a multiplier vector making a rational matrix isotropic.
    Certify {
        /// Whitespace separated rows of rationals (`num/den`).
        file: Option<PathBuf>,
        /// Use a seeded random Cayley point of size k x 2k instead of a file.
        #[arg(long, value_name = "K", conflicts_with = "file")]
        cayley: Option<usize>,
    },
    /// Realization space of a matroid.
    Rspace(SpaceArgs),
    /// Self-projecting realization space of a matroid, compared with the
    /// realization space.
    Sprspace(SpaceArgs),
    /// Counts (and optionally realization spaces) over a class of matroids.
    Survey {
        #[arg(long)]
        rank: usize,
        /// A size or a range such as `4..10`.
        #[arg(long)]
        n: String,
        /// Revlex catalog file (required for rank 4).
        #[arg(long)]
        source: Option<PathBuf>,
        /// Compute realization spaces of the self-projecting matroids.
        #[arg(long)]
        realize: bool,
        /// Expected `classes,self-projecting` for every size; exit 1 on mismatch.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Simple, self-projecting and orthopositroid classes of positroids.
    Positroids {
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        n: String,
        /// Expected `simple,self-projecting,orth`; exit 1 on mismatch.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Prints the count, dimension and positroid tables.
    Tables {
        /// Directory with rank-4 catalogs named `r4n8.txt` and `r4n9.txt`.
        #[arg(long, env = "SPG_RANK4_CATALOG_DIR")]
        catalog_dir: Option<PathBuf>,
        /// Include the (4,10) and (5,10) positroid rows.
        #[arg(long)]
        extended: bool,
    },
}

#[derive(Args)]
struct SpaceArgs {
    matroid: String,
    /// Relabel so that a circuit of size k+1 contains the first k+1 columns.
    #[arg(long)]
    frame: bool,
    /// One multiplier per column and all entries of X L X^t.
    #[arg(long)]
    literal: bool,
    /// Skip the generic-kernel certificate and always eliminate.
    #[arg(long)]
    no_shortcut: bool,
}

enum Outcome {
    Success,
    Negative,
    Timeout,
}

fn read_arg(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).with_context(|| format!("reading {path}")),
        None => Ok(arg.to_string()),
    }
}

fn load_matroid(arg: &str) -> Result<Matroid> {
    let text = read_arg(arg)?;
    parse_matroid(text.trim()).map_err(|e| anyhow!("invalid matroid: {e}"))
}

fn parse_range(text: &str) -> Result<Vec<usize>> {
    let parse = |t: &str| t.trim().parse::<usize>().with_context(|| format!("bad size {t:?}"));
    match text.split_once("..") {
        Some((a, b)) => {
            let b = b.strip_prefix('=').unwrap_or(b);
            Ok((parse(a)?..=parse(b)?).collect())
        }
        None => Ok(vec![parse(text)?]),
    }
}

fn parse_expect(text: &str, len: usize) -> Result<Vec<usize>> {
    let v: Vec<usize> = text
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .with_context(|| format!("bad expectation {text:?}"))?;
    if v.len() != len {
        bail!("expected {len} comma separated numbers, got {text:?}");
    }
    Ok(v)
}

fn parse_matrix(text: &str) -> Result<QMatrix> {
    let rows: Vec<Vec<Rational>> = text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split_whitespace()
                .map(|t| parse_rational(t).map_err(|e| anyhow!("bad entry {t:?}: {e}")))
                .collect()
        })
        .collect::<Result<_>>()?;
    QMatrix::from_rows(rows).map_err(|e| anyhow!("bad matrix: {e}"))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn cmd_check(m: &Matroid, format: Format) -> Outcome {
    let sp = m.is_self_projecting();
    if format == Format::Records {
        println!("{}", SurveyRecord::for_matroid(m).to_line());
    } else {
        println!("rank {} on {} elements, {} bases", m.rank(), m.n(), m.bases().len());
        println!("simple: {}", yes(m.is_simple()));
        println!("self-projecting: {}", yes(sp));
        println!("disjoint-basis property: {}", yes(m.has_disjoint_basis_property()));
        if 2 * m.rank() == m.n() {
            println!("identically self-dual: {}", yes(m.is_identically_self_dual()));
        }
        match m.half_coloop() {
            Some(h) => println!(
                "half-coloop: {} with flats {} and {}",
                h.element + 1,
                fmt_set(h.flat1),
                fmt_set(h.flat2)
            ),
            None => println!("half-coloop: none"),
        }
    }
    if sp {
        Outcome::Success
    } else {
        Outcome::Negative
    }
}

fn cayley(k: usize, seed: u64) -> QMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let upper: Vec<Rational> = (0..k * (k - 1) / 2)
        .map(|_| Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=5).into()))
        .collect();
    cayley_point(k, &upper)
}

fn cmd_certify(x: &QMatrix) -> Result<Outcome> {
    let cert = certify_self_projecting(x).map_err(|e| anyhow!("{e}"))?;
    match cert {
        Certificate::SelfProjecting(w) => {
            let lambda = w.values();
            let stiefel = stiefel_residual(x, lambda)?;
            let q = pluecker(x)?;
            let cocircuit = cocircuit_residual(&q, lambda)?;
            println!("self-projecting: yes");
            println!("lambda: {w}");
            println!("stiefel residual zero: {}", yes(stiefel.is_zero()));
            println!("cocircuit residual zero: {}", yes(cocircuit.is_zero()));
            if stiefel.is_zero() && cocircuit.is_zero() {
                Ok(Outcome::Success)
            } else {
                bail!("witness failed verification")
            }
        }
        Certificate::Refused(r) => {
            println!("self-projecting: no ({r})");
            Ok(Outcome::Negative)
        }
    }
}

fn print_space(label: &str, s: &RealizationSpace) {
    match s.dimension {
        Some(d) => println!("{label} dimension: {d}{}", if d < 0 { " (empty)" } else { "" }),
        None => println!("{label} dimension: unknown (timeout after {:.1}s)", s.elapsed.as_secs_f64()),
    }
    println!("{label} generators:");
    for g in s.generators() {
        println!("  {g}");
    }
}

fn cmd_space(args: &SpaceArgs, self_projecting: bool, budget: f64, format: Format) -> Result<Outcome> {
    let m = load_matroid(&args.matroid)?;
    let opts = RealizationOptions {
        seconds: Some(budget),
        frame: args.frame,
        mode: if args.literal { SpMode::Literal } else { SpMode::Substituted },
        shortcut: !args.no_shortcut,
        ..RealizationOptions::default()
    };
    let start = Instant::now();
    let r = realization_space(&m, &opts)?;
    let mut record = SurveyRecord::for_matroid(&m);
    record.set_realization(&r);
    let mut timed_out = r.timed_out();
    let mut s_space = None;
    if self_projecting {
        let s = sp_realization_space_from(&r, &opts)?;
        let verdict = compare_spaces(&r, &s, &Budget::seconds(budget))?;
        record.set_self_projecting(&s);
        record.verdict = Some(verdict.label().to_string());
        timed_out |= s.timed_out();
        s_space = Some((s, verdict));
    }
    record.seconds = start.elapsed().as_secs_f64();
    if format == Format::Records {
        println!("{}", record.to_line());
    } else {
        let c = &r.coordinates;
        let columns: Vec<String> = c.relabeling().iter().enumerate().map(|(i, p)| format!("{}->{}", i + 1, p + 1)).collect();
        println!("element -> column: {}", columns.join(" "));
        println!("matrix:");
        for line in c.to_string().lines() {
            println!("  {line}");
        }
        print_space("R", &r);
        println!("inverted:");
        for f in &r.inverted {
            println!("  {f}");
        }
        if let Some((s, verdict)) = &s_space {
            print_space("S", s);
            if s.shortcut {
                println!("S certified equal to R by the generic kernel test");
            }
            println!("comparison: {}", verdict.label());
        }
    }
    Ok(if timed_out { Outcome::Timeout } else { Outcome::Success })
}

fn survey_opts(cli: &Cli, realize: bool) -> SurveyOptions {
    SurveyOptions {
        realize,
        realization: RealizationOptions {
            seconds: Some(cli.budget),
            ..RealizationOptions::default()
        },
        jobs: cli.jobs,
    }
}

fn rank4_hint(n: usize) -> anyhow::Error {
    anyhow!(
        "rank-4 matroids are not enumerated here; pass --source PATH to a revlex catalog \
         (one matroid per line, e.g. r4n{n}.txt exported from a matroid database)"
    )
}

fn cmd_survey(
    cli: &Cli,
    rank: usize,
    sizes: &[usize],
    source: Option<&Path>,
    realize: bool,
    expect: Option<&str>,
) -> Result<Outcome> {
    let expect = expect.map(|e| parse_expect(e, 2)).transpose()?;
    let mut outcome = Outcome::Success;
    let mut count_rows = Vec::new();
    let mut dim_rows = Vec::new();
    for &n in sizes {
        let src = match (rank, source) {
            (_, Some(path)) => SurveySource::Catalog {
                path: path.to_path_buf(),
                rank,
                n,
            },
            (2, None) => SurveySource::Rank2(n),
            (3, None) => SurveySource::SimpleRank3(n),
            (4, None) => return Err(rank4_hint(n)),
            _ => bail!("no built-in enumeration for rank {rank}; pass --source"),
        };
        let records = run_survey(&src, &survey_opts(cli, realize))?;
        let row = CountRow {
            rank,
            n,
            classes: records.len(),
            self_projecting: records.iter().filter(|r| r.self_projecting).count(),
            rejected: Vec::new(),
        };
        if let Some(e) = &expect {
            if [row.classes, row.self_projecting] != e[..] {
                eprintln!("mismatch for n = {n}: got {},{}", row.classes, row.self_projecting);
                outcome = Outcome::Negative;
            }
        }
        if cli.format == Format::Records {
            for r in &records {
                println!("{}", r.to_line());
            }
        }
        if realize {
            let (r, s) = histograms(&records);
            dim_rows.push((format!("({n},R)"), r));
            dim_rows.push((format!("({n},S)"), s));
        }
        count_rows.push(row);
    }
    if cli.format == Format::Text {
        print!("{}", format_count_table(&count_rows));
        if realize {
            println!();
            print!("{}", format_dimension_table(&dim_rows));
        }
    }
    Ok(outcome)
}

fn print_positroid_row(s: &PositroidSurvey) {
    let (a, b, c) = s.row();
    println!("{:>4} {:>4} {:>9} {:>8} {:>10} {:>6}", s.k, s.n, s.necklaces, a, b, c);
}

const POSITROID_HEADER: &str = "rank    n necklaces   simple  self-proj   orth";

fn cmd_positroids(rank: usize, sizes: &[usize], expect: Option<&str>, format: Format) -> Result<Outcome> {
    let expect = expect.map(|e| parse_expect(e, 3)).transpose()?;
    let mut outcome = Outcome::Success;
    if format == Format::Text {
        println!("{POSITROID_HEADER}");
    }
    for &n in sizes {
        let s = survey_positroids(rank, n)?;
        let (a, b, c) = s.row();
        if format == Format::Records {
            println!(
                "{}",
                serde_json::json!({
                    "rank": rank, "n": n, "necklaces": s.necklaces,
                    "simple": a, "self_projecting": b, "orthopositroids": c,
                    "exceptional": s.exceptional().map(|x| x.canonical.revlex_string()).collect::<Vec<_>>(),
                })
            );
        } else {
            print_positroid_row(&s);
            for x in s.exceptional() {
                let nb: Vec<String> = x.canonical.to_matroid().nonbases().into_iter().map(fmt_set).collect();
                println!("  self-projecting, not an orthopositroid: nonbases {}", nb.join(" "));
            }
        }
        if let Some(e) = &expect {
            if [a, b, c] != e[..] {
                eprintln!("mismatch for ({rank},{n}): got {a},{b},{c}");
                outcome = Outcome::Negative;
            }
        }
    }
    Ok(outcome)
}

fn cmd_tables(cli: &Cli, catalog_dir: Option<&Path>, extended: bool) -> Result<Outcome> {
    let mut rows = Vec::new();
    for n in 4..=10 {
        rows.push(count_row(2, n, &catalog::enumerate_rank2(n)));
    }
    for n in 6..=9 {
        rows.push(count_row(3, n, &catalog::enumerate_simple_rank3(n)));
    }
    match catalog_dir {
        Some(dir) => {
            for n in [8, 9] {
                let path = dir.join(format!("r4n{n}.txt"));
                if path.exists() {
                    let (ms, rejected) = catalog::ingest_simple_classes(&path, 4, n)?;
                    let mut row = count_row(4, n, &ms);
                    row.rejected = rejected;
                    rows.push(row);
                } else {
                    eprintln!("no catalog at {}", path.display());
                }
            }
        }
        None => eprintln!("rank-4 rows need --catalog-dir (files r4n8.txt, r4n9.txt)"),
    }
    println!("Matroid counts");
    print!("{}", format_count_table(&rows));

    println!("\nRealization space dimensions, rank 3");
    let mut dims = Vec::new();
    for n in 6..=8 {
        let records = run_survey(&SurveySource::SimpleRank3(n), &survey_opts(cli, true))?;
        let (r, s) = histograms(&records);
        dims.push((format!("({n},R)"), r));
        dims.push((format!("({n},S)"), s));
    }
    print!("{}", format_dimension_table(&dims));

    println!("\nPositroids up to isomorphism");
    println!("{POSITROID_HEADER}");
    let mut cases = vec![(3, 6), (3, 7), (3, 8), (4, 8), (3, 9), (4, 9), (3, 10)];
    if extended {
        cases.extend([(4, 10), (5, 10)]);
    }
    for (k, n) in cases {
        print_positroid_row(&survey_positroids(k, n)?);
    }
    Ok(Outcome::Success)
}

fn run(cli: &Cli) -> Result<Outcome> {
    if !(cli.budget > 0.0) {
        bail!("--budget must be positive");
    }
    if cli.jobs == 0 {
        bail!("--jobs must be at least 1");
    }
    match &cli.command {
        Command::Check { matroid } => Ok(cmd_check(&load_matroid(matroid)?, cli.format)),
        Command::Certify { file, cayley: k } => {
            let x = match (file, k) {
                (_, Some(k)) if *k >= 1 => cayley(*k, cli.seed),
                (Some(path), None) => parse_matrix(&std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?)?,
                _ => bail!("give a matrix file or --cayley K"),
            };
            if cli.format == Format::Text {
                println!("matrix {} x {}", x.rows(), x.cols());
            }
            cmd_certify(&x)
        }
        Command::Rspace(a) => cmd_space(a, false, cli.budget, cli.format),
        Command::Sprspace(a) => cmd_space(a, true, cli.budget, cli.format),
        Command::Survey {
            rank,
            n,
            source,
            realize,
            expect,
        } => cmd_survey(cli, *rank, &parse_range(n)?, source.as_deref(), *realize, expect.as_deref()),
        Command::Positroids { rank, n, expect } => cmd_positroids(*rank, &parse_range(n)?, expect.as_deref(), cli.format),
        Command::Tables { catalog_dir, extended } => cmd_tables(cli, catalog_dir.as_deref(), *extended),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Ok(Outcome::Timeout) => ExitCode::from(3),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
