//! `hatgame`: solver CLI for the asymmetric 3-player 3-color hat game.
//!
//! Exit codes: 0 success, 1 invalid input, 2 capacity refusal, 3 internal
//! invariant violation.

use hatgame_cli::artifact;

use artifact::{
    fmt_sig15, patterns_csv, write_json, ComplexityDoc, DominanceDoc, MatrixDoc, MinDasDoc,
    OptimalDoc, PatternRecord, RegionDoc, SetRecord, SetsDoc, ShapeDoc, SolutionDoc, ValueDoc,
    COMPLEXITY_SCHEMA, DOMINANCE_SCHEMA, MATRIX_SCHEMA, MIN_DAS_SCHEMA, SETS_SCHEMA,
    SOLUTION_SCHEMA,
};
use clap::{Parser, Subcommand, ValueEnum};
use hatgame::{
    alpha, build_decision_matrix, classify, complexity_report, dominant_patterns,
    enumerate_adequate_sets_with_workers, evaluate_exact, find_min_das_with_workers,
    format_scientific_6, pattern_census, region_boundaries, simulate, solve_with_workers,
    weak_only_sets_with_workers, AdequateSet, Code, GameShape, ProbabilityVector, Rational, Scalar,
    Solution, SolveMode,
};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "hatgame",
    version,
    about = "Adequate-set solver for the asymmetric 3-player 3-color hat game"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate every adequate set of a given size.
    Enumerate {
        #[arg(long, default_value_t = 3)]
        players: usize,
        #[arg(long, default_value_t = 3)]
        colors: usize,
        /// Set size (das) to enumerate.
        #[arg(long)]
        size: usize,
        /// Write the sets as a JSON artifact.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Color probabilities; adds each set's mass to the artifact.
        #[arg(long)]
        probs: Option<String>,
        #[arg(long)]
        workers: Option<usize>,
        /// Also count sets passing only the weaker outside-only condition.
        #[arg(long)]
        weak_diagnostic: bool,
    },
    /// Find the optimal winning probability and strategies for a
    /// distribution.
    Solve {
        /// Comma-separated probabilities, decimals or fractions
        /// (fractions select exact arithmetic).
        #[arg(long)]
        probs: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
        mode: ModeArg,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Report which simplex region a distribution falls in.
    Classify {
        #[arg(long)]
        probs: String,
    },
    /// Export the pattern census of the optimal-size sets as CSV.
    Patterns {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Compute the minimal patterns and a dominator for every pattern.
    Dominance {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        workers: Option<usize>,
    },
    /// Build and print the decision matrix of an adequate set.
    Strategy {
        /// Comma-separated configuration codes of the loss set.
        #[arg(long, conflicts_with = "from")]
        set: Option<String>,
        /// Read the set from an `enumerate` artifact instead.
        #[arg(long)]
        from: Option<PathBuf>,
        /// Record index into the artifact given by --from; defaults to 0.
        #[arg(long)]
        index: Option<usize>,
        #[arg(long, default_value_t = 3)]
        players: usize,
        #[arg(long, default_value_t = 3)]
        colors: usize,
        /// Also evaluate the strategy exactly under these probabilities.
        #[arg(long)]
        probs: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Estimate a strategy's winning probability by seeded simulation.
    Simulate {
        #[arg(long)]
        set: String,
        #[arg(long)]
        probs: String,
        #[arg(long, default_value_t = 1_000_000)]
        trials: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        players: usize,
        #[arg(long, default_value_t = 3)]
        colors: usize,
    },
    /// Find the smallest adequate-set size and a witness.
    MinDas {
        #[arg(long)]
        players: usize,
        #[arg(long)]
        colors: usize,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Report the search-space sizes of the competing methods.
    Complexity {
        #[arg(long)]
        players: u64,
        #[arg(long)]
        colors: u64,
        #[arg(long)]
        das: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export a (p, r) grid of region labels and optimal values as CSV.
    RegionMap {
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 64)]
        p_steps: usize,
        #[arg(long, default_value_t = 64)]
        r_steps: usize,
        /// Also export the boundary curves per p value.
        #[arg(long)]
        curves_out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Exhaustive,
    ClosedForm,
}

impl From<ModeArg> for SolveMode {
    fn from(mode: ModeArg) -> SolveMode {
        match mode {
            ModeArg::Exhaustive => SolveMode::Exhaustive,
            ModeArg::ClosedForm => SolveMode::ClosedForm,
        }
    }
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error(transparent)]
    Game(#[from] hatgame::Error),
    #[error(transparent)]
    Artifact(#[from] artifact::ArtifactError),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Game(e) => e.exit_code() as u8,
            _ => 1,
        }
    }
}

fn main() -> ExitCode {
    // die quietly when a pipe reader (head, grep) closes stdout early
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            eprint!("{err}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}

/// Probabilities in the arithmetic mode selected by their spelling:
/// fractions everywhere means exact rationals.
enum ParsedProbs {
    Float(ProbabilityVector<f64>),
    Exact(ProbabilityVector<Rational>),
}

impl ParsedProbs {
    fn to_float(&self) -> Result<ProbabilityVector<f64>, CliError> {
        match self {
            ParsedProbs::Float(p) => Ok(p.clone()),
            ParsedProbs::Exact(p) => Ok(ProbabilityVector::new(p.to_f64())?),
        }
    }
}

fn parse_fraction(token: &str) -> Result<Rational, CliError> {
    let (num, den) = token
        .split_once('/')
        .ok_or_else(|| CliError::Usage(format!("`{token}` is not a fraction")))?;
    let num: i64 = num
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("bad fraction numerator in `{token}`")))?;
    let den: i64 = den
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("bad fraction denominator in `{token}`")))?;
    if den == 0 {
        return Err(CliError::Usage(format!("zero denominator in `{token}`")));
    }
    Ok(Rational::ratio(num, den))
}

fn parse_probs(list: &str) -> Result<ParsedProbs, CliError> {
    let tokens: Vec<&str> = list.split(',').map(str::trim).collect();
    if tokens.iter().all(|t| t.contains('/')) {
        let entries = tokens
            .iter()
            .map(|t| parse_fraction(t))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ParsedProbs::Exact(ProbabilityVector::new(entries)?))
    } else {
        let entries = tokens
            .iter()
            .map(|t| {
                if t.contains('/') {
                    parse_fraction(t).map(|r| Scalar::to_f64(&r))
                } else {
                    t.parse::<f64>()
                        .map_err(|_| CliError::Usage(format!("`{t}` is not a probability")))
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(ParsedProbs::Float(ProbabilityVector::new(entries)?))
    }
}

fn parse_codes(list: &str) -> Result<Vec<Code>, CliError> {
    list.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<Code>()
                .map_err(|_| CliError::Usage(format!("`{t}` is not a configuration code")))
        })
        .collect()
}

/// Effective worker count: the flag (or all available CPUs), capped by the
/// HATGAME_MAX_WORKERS environment variable.
fn resolve_workers(flag: Option<usize>) -> usize {
    let available = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    let requested = flag.unwrap_or(available).max(1);
    match std::env::var("HATGAME_MAX_WORKERS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
    {
        Some(cap) if cap >= 1 => requested.min(cap),
        _ => requested,
    }
}

/// Scalar with the CLI's display and artifact conventions.
trait CliScalar: Scalar {
    fn render(&self) -> String;
    fn doc(&self) -> ValueDoc;
}

impl CliScalar for f64 {
    fn render(&self) -> String {
        fmt_sig15(*self)
    }

    fn doc(&self) -> ValueDoc {
        ValueDoc::Float(*self)
    }
}

impl CliScalar for Rational {
    fn render(&self) -> String {
        format!("{self} ({})", fmt_sig15(Scalar::to_f64(self)))
    }

    fn doc(&self) -> ValueDoc {
        ValueDoc::from_rational(self)
    }
}

fn write_text(path: &Path, body: &str) -> Result<(), CliError> {
    std::fs::write(path, body).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn codes_line(codes: &[Code]) -> String {
    codes
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Enumerate {
            players,
            colors,
            size,
            out,
            probs,
            workers,
            weak_diagnostic,
        } => run_enumerate(
            players,
            colors,
            size,
            out,
            probs.as_deref().map(parse_probs).transpose()?,
            resolve_workers(workers),
            weak_diagnostic,
        ),
        Command::Solve {
            probs,
            mode,
            out,
            workers,
        } => match parse_probs(&probs)? {
            ParsedProbs::Float(p) => run_solve(&p, mode.into(), out, resolve_workers(workers)),
            ParsedProbs::Exact(p) => run_solve(&p, mode.into(), out, resolve_workers(workers)),
        },
        Command::Classify { probs } => match parse_probs(&probs)? {
            ParsedProbs::Float(p) => run_classify(&p),
            ParsedProbs::Exact(p) => run_classify(&p),
        },
        Command::Patterns { out, workers } => run_patterns(out, resolve_workers(workers)),
        Command::Dominance { out, workers } => run_dominance(out, resolve_workers(workers)),
        Command::Strategy {
            set,
            from,
            index,
            players,
            colors,
            probs,
            out,
        } => run_strategy(
            set,
            from,
            index,
            players,
            colors,
            probs.as_deref().map(parse_probs).transpose()?,
            out,
        ),
        Command::Simulate {
            set,
            probs,
            trials,
            seed,
            players,
            colors,
        } => run_simulate(&set, &probs, trials, seed, players, colors),
        Command::MinDas {
            players,
            colors,
            workers,
            out,
        } => run_min_das(players, colors, resolve_workers(workers), out),
        Command::Complexity {
            players,
            colors,
            das,
            out,
        } => run_complexity(players, colors, das, out),
        Command::RegionMap {
            out,
            p_steps,
            r_steps,
            curves_out,
        } => run_region_map(out, p_steps, r_steps, curves_out),
    }
}

fn run_enumerate(
    players: usize,
    colors: usize,
    size: usize,
    out: Option<PathBuf>,
    probs: Option<ParsedProbs>,
    workers: usize,
    weak_diagnostic: bool,
) -> Result<(), CliError> {
    let shape = GameShape::new(players, colors)?;
    let sets = enumerate_adequate_sets_with_workers(&shape, size, workers)?;
    println!(
        "found {} adequate set(s) of size {size} ({players} players, {colors} colors)",
        sets.len()
    );
    if sets.len() <= 32 {
        for set in &sets {
            println!("  {}", codes_line(set.codes()));
        }
    }

    fn masses<T: CliScalar>(
        sets: &[AdequateSet],
        p: &ProbabilityVector<T>,
    ) -> Result<(Vec<ValueDoc>, Vec<ValueDoc>), CliError> {
        let values = sets
            .iter()
            .map(|s| s.phi(p))
            .collect::<Result<Vec<T>, hatgame::Error>>()?;
        if let Some(min) = values
            .iter()
            .cloned()
            .min_by(|a, b| a.partial_cmp(b).expect("comparable masses"))
        {
            let ties = values
                .iter()
                .filter(|v| ((*v).clone() - min.clone()).abs() <= T::tie_tolerance())
                .count();
            println!("minimal mass: {} achieved by {ties} set(s)", min.render());
        }
        Ok((
            p.entries().iter().map(|e| e.doc()).collect(),
            values.iter().map(|v| v.doc()).collect(),
        ))
    }
    let (probs_doc, phi_docs) = match &probs {
        None => (None, None),
        Some(ParsedProbs::Float(p)) => {
            let (pd, vd) = masses(&sets, p)?;
            (Some(pd), Some(vd))
        }
        Some(ParsedProbs::Exact(p)) => {
            let (pd, vd) = masses(&sets, p)?;
            (Some(pd), Some(vd))
        }
    };

    let weak_only_count = if weak_diagnostic {
        let extra = weak_only_sets_with_workers(&shape, size, workers)?;
        if extra.is_empty() {
            println!(
                "weak-reading diagnostic: no size-{size} set passes the outside-only \
                 condition while failing the normative one"
            );
        } else {
            println!(
                "weak-reading diagnostic: {} set(s) pass the outside-only condition \
                 but fail the normative one",
                extra.len()
            );
            for set in extra.iter().take(10) {
                println!("  {}", codes_line(set.codes()));
            }
        }
        Some(extra.len())
    } else {
        None
    };

    if let Some(path) = out {
        let doc = SetsDoc {
            schema: SETS_SCHEMA.into(),
            shape: ShapeDoc::of(&shape),
            das: size,
            count: sets.len(),
            probs: probs_doc,
            weak_only_count,
            sets: sets
                .iter()
                .zip(
                    phi_docs
                        .map(|v| v.into_iter().map(Some).collect::<Vec<_>>())
                        .unwrap_or_else(|| vec![None; sets.len()]),
                )
                .map(|(s, phi)| SetRecord {
                    codes: s.codes().to_vec(),
                    phi,
                })
                .collect(),
        };
        write_json(&path, &doc)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn solution_doc<T: CliScalar>(
    solution: &Solution<T>,
    probs: &ProbabilityVector<T>,
    mode: SolveMode,
) -> SolutionDoc {
    SolutionDoc {
        schema: SOLUTION_SCHEMA.into(),
        shape: ShapeDoc {
            players: 3,
            colors: 3,
        },
        mode: match mode {
            SolveMode::Exhaustive => "exhaustive".into(),
            SolveMode::ClosedForm => "closed-form".into(),
        },
        probs: probs.entries().iter().map(|e| e.doc()).collect(),
        value: solution.value.doc(),
        region: solution.classification.as_ref().map(|c| RegionDoc {
            label: c.label.region.to_string(),
            formula_index: c.label.winning_formula_index(),
            tied: c.label.tied.clone(),
            sorted: vec![c.sorted.p.doc(), c.sorted.q.doc(), c.sorted.r.doc()],
            permutation: c.sorted.permutation.to_vec(),
            alpha: alpha(),
        }),
        optimal: solution
            .optimal
            .iter()
            .map(|o| OptimalDoc {
                codes: o.set.codes().to_vec(),
                phi: o.phi.doc(),
                cells: o.matrix.rows_i8(),
            })
            .collect(),
    }
}

fn run_solve<T: CliScalar>(
    probs: &ProbabilityVector<T>,
    mode: SolveMode,
    out: Option<PathBuf>,
    workers: usize,
) -> Result<(), CliError> {
    let solution = solve_with_workers(probs, mode, workers)?;
    println!("optimal winning probability: {}", solution.value.render());
    if let Some(c) = &solution.classification {
        println!(
            "region: {} (formula {})",
            c.label.region,
            c.label.winning_formula_index()
        );
        if c.label.is_boundary() {
            println!(
                "boundary point; tied formulas: {}",
                c.label
                    .tied
                    .iter()
                    .map(|i| i.to_string())
                    .collect::<Vec<_>>()
                    .join(", ")
            );
        }
    }
    println!("optimal set(s): {}", solution.optimal.len());
    for o in &solution.optimal {
        println!("  {}  mass {}", codes_line(o.set.codes()), o.phi.render());
    }
    if solution.optimal.len() <= 4 {
        for o in &solution.optimal {
            println!("\ndecision matrix for {}:", codes_line(o.set.codes()));
            println!("{}", o.matrix.render_grid());
        }
    }
    if let Some(path) = out {
        write_json(&path, &solution_doc(&solution, probs, mode))?;
        println!("\nwrote {}", path.display());
    }
    Ok(())
}

fn run_classify<T: CliScalar>(probs: &ProbabilityVector<T>) -> Result<(), CliError> {
    let c = classify(probs)?;
    println!(
        "region: {} (formula {})",
        c.label.region,
        c.label.winning_formula_index()
    );
    println!("optimal winning probability: {}", c.value.render());
    println!(
        "formula values: psi1 = {}, psi2 = {}, psi3 = {}",
        c.values[0].render(),
        c.values[1].render(),
        c.values[2].render()
    );
    println!(
        "sorted probabilities: p = {}, q = {}, r = {}",
        c.sorted.p.render(),
        c.sorted.q.render(),
        c.sorted.r.render()
    );
    println!(
        "color order (input index -> sorted position): {:?}",
        c.sorted.permutation
    );
    if c.label.is_boundary() {
        println!(
            "boundary point; tied formulas: {}",
            c.label
                .tied
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        );
    }
    println!("alpha: {}", fmt_sig15(alpha()));
    Ok(())
}

fn enumerate_optimal_size(workers: usize) -> Result<Vec<AdequateSet>, CliError> {
    let shape = GameShape::new(3, 3)?;
    Ok(enumerate_adequate_sets_with_workers(&shape, 12, workers)?)
}

fn run_patterns(out: Option<PathBuf>, workers: usize) -> Result<(), CliError> {
    let sets = enumerate_optimal_size(workers)?;
    let census = pattern_census(&sets);
    let csv = patterns_csv(3, 3, &census);
    println!(
        "{} sets of size 12, {} distinct patterns",
        sets.len(),
        census.len()
    );
    match out {
        Some(path) => {
            write_text(&path, &csv)?;
            println!("wrote {}", path.display());
        }
        None => print!("{csv}"),
    }
    Ok(())
}

fn run_dominance(out: Option<PathBuf>, workers: usize) -> Result<(), CliError> {
    let sets = enumerate_optimal_size(workers)?;
    let census = pattern_census(&sets);
    let patterns: Vec<_> = census.iter().map(|(p, _)| p.clone()).collect();
    let analysis = dominant_patterns(&patterns)?;
    println!("minimal (dominant) patterns: {}", analysis.minimal.len());
    for &i in &analysis.minimal {
        println!("  {}", patterns[i]);
    }
    println!(
        "every one of the {} patterns has a certified minimal dominator",
        patterns.len()
    );
    if let Some(path) = out {
        let doc = DominanceDoc {
            schema: DOMINANCE_SCHEMA.into(),
            shape: ShapeDoc {
                players: 3,
                colors: 3,
            },
            das: 12,
            set_count: sets.len(),
            minimal: analysis
                .minimal
                .iter()
                .map(|&i| patterns[i].coeffs().to_vec())
                .collect(),
            patterns: census
                .iter()
                .enumerate()
                .map(|(i, (p, mult))| PatternRecord {
                    index: i + 1,
                    coeffs: p.coeffs().to_vec(),
                    multiplicity: *mult,
                    dominator: analysis
                        .minimal
                        .iter()
                        .position(|&m| m == analysis.dominator[i])
                        .expect("dominator is minimal"),
                })
                .collect(),
        };
        write_json(&path, &doc)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn run_strategy(
    set: Option<String>,
    from: Option<PathBuf>,
    index: Option<usize>,
    players: usize,
    colors: usize,
    probs: Option<ParsedProbs>,
    out: Option<PathBuf>,
) -> Result<(), CliError> {
    let shape = GameShape::new(players, colors)?;
    let set = match (set, from) {
        (Some(list), None) => AdequateSet::new(shape, parse_codes(&list)?)?,
        (None, Some(path)) => {
            let doc: SetsDoc = artifact::read_json(&path)?;
            let sets = doc.to_sets(&path.display().to_string())?;
            let index = index.unwrap_or(0);
            sets.into_iter().nth(index).ok_or_else(|| {
                CliError::Usage(format!("artifact has no record at index {index}"))
            })?
        }
        _ => {
            return Err(CliError::Usage(
                "exactly one of --set or --from is required".into(),
            ))
        }
    };
    let matrix = build_decision_matrix(&set)?;
    println!("loss set: {}", codes_line(set.codes()));
    println!("{}", matrix.render_grid());

    let win_doc = match &probs {
        None => None,
        Some(ParsedProbs::Float(p)) => {
            let report = evaluate_exact(&matrix, p)?;
            println!("winning probability: {}", report.win_probability.render());
            Some(report.win_probability.doc())
        }
        Some(ParsedProbs::Exact(p)) => {
            let report = evaluate_exact(&matrix, p)?;
            println!("winning probability: {}", report.win_probability.render());
            Some(report.win_probability.doc())
        }
    };

    if let Some(path) = out {
        let doc = MatrixDoc {
            schema: MATRIX_SCHEMA.into(),
            shape: ShapeDoc::of(&shape),
            codes: set.codes().to_vec(),
            cells: matrix.rows_i8(),
            win_probability: win_doc,
        };
        write_json(&path, &doc)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn run_simulate(
    set: &str,
    probs: &str,
    trials: u64,
    seed: u64,
    players: usize,
    colors: usize,
) -> Result<(), CliError> {
    let shape = GameShape::new(players, colors)?;
    let set = AdequateSet::new(shape, parse_codes(set)?)?;
    let matrix = build_decision_matrix(&set)?;
    let probs = parse_probs(probs)?.to_float()?;
    let result = simulate(&matrix, &probs, trials, seed)?;
    println!("estimate: {}", fmt_sig15(result.estimate));
    println!("standard error: {}", fmt_sig15(result.std_error));
    println!(
        "wins: {} of {} trials (seed {})",
        result.wins, result.trials, result.seed
    );
    Ok(())
}

fn run_min_das(
    players: usize,
    colors: usize,
    workers: usize,
    out: Option<PathBuf>,
) -> Result<(), CliError> {
    let shape = GameShape::new(players, colors)?;
    let (das, witness) = find_min_das_with_workers(&shape, workers)?;
    let uniform: ProbabilityVector<Rational> = ProbabilityVector::uniform(colors);
    let value = Rational::ratio(1, 1) - witness.phi(&uniform)?;
    println!("minimal adequate set size: {das}");
    println!("witness: {}", codes_line(witness.codes()));
    println!("uniform winning probability: {}", value.render());
    if let Some(path) = out {
        let doc = MinDasDoc {
            schema: MIN_DAS_SCHEMA.into(),
            shape: ShapeDoc::of(&shape),
            das,
            witness: witness.codes().to_vec(),
            uniform_win_probability: value.doc(),
        };
        write_json(&path, &doc)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn run_complexity(
    players: u64,
    colors: u64,
    das: u64,
    out: Option<PathBuf>,
) -> Result<(), CliError> {
    let report = complexity_report(players, colors, das)?;
    println!(
        "brute force:   {} ({})",
        report.brute_force,
        format_scientific_6(&report.brute_force)
    );
    println!(
        "reduced scan:  {} ({})",
        report.reduced,
        format_scientific_6(&report.reduced)
    );
    println!(
        "adequate sets: {} ({})",
        report.adequate,
        format_scientific_6(&report.adequate)
    );
    if let Some(path) = out {
        let doc = ComplexityDoc {
            schema: COMPLEXITY_SCHEMA.into(),
            players,
            colors,
            das,
            brute_force: report.brute_force.to_string(),
            brute_force_scientific: format_scientific_6(&report.brute_force),
            reduced: report.reduced.to_string(),
            reduced_scientific: format_scientific_6(&report.reduced),
            adequate: report.adequate.to_string(),
            adequate_scientific: format_scientific_6(&report.adequate),
        };
        write_json(&path, &doc)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn run_region_map(
    out: Option<PathBuf>,
    p_steps: usize,
    r_steps: usize,
    curves_out: Option<PathBuf>,
) -> Result<(), CliError> {
    if p_steps == 0 || r_steps == 0 {
        return Err(CliError::Usage("step counts must be positive".into()));
    }
    let mut csv = String::from("p,r,label,psi\n");
    let mut rows = 0usize;
    for i in 0..=p_steps {
        let p = 1.0 / 3.0 + (2.0 / 3.0) * i as f64 / p_steps as f64;
        let p = p.min(1.0);
        let lower = (1.0 - 2.0 * p).max(0.0);
        let upper = (1.0 - p) / 2.0;
        for j in 0..=r_steps {
            let r = if upper > lower {
                lower + (upper - lower) * j as f64 / r_steps as f64
            } else {
                lower
            };
            let q = 1.0 - p - r;
            let probs = ProbabilityVector::new(vec![p, q, r])?;
            let c = classify(&probs)?;
            csv.push_str(&format!(
                "{},{},{},{}\n",
                fmt_sig15(p),
                fmt_sig15(r),
                c.label.region,
                fmt_sig15(c.value)
            ));
            rows += 1;
            if upper <= lower {
                break; // degenerate r-range at p = 1
            }
        }
    }
    match &out {
        Some(path) => {
            write_text(path, &csv)?;
            println!("wrote {rows} grid rows to {}", path.display());
        }
        None => print!("{csv}"),
    }

    if let Some(path) = curves_out {
        let mut curves =
            String::from("p,ab_curve,bc_curve,r_lower,r_upper,ab_active,bc_active,alpha\n");
        for i in 0..=p_steps {
            let p = (1.0 / 3.0 + (2.0 / 3.0) * i as f64 / p_steps as f64).min(1.0);
            let b = region_boundaries(p)?;
            curves.push_str(&format!(
                "{},{},{},{},{},{},{},{}\n",
                fmt_sig15(b.p),
                fmt_sig15(b.ab_curve),
                fmt_sig15(b.bc_curve),
                fmt_sig15(b.r_lower),
                fmt_sig15(b.r_upper),
                b.ab_active,
                b.bc_active,
                fmt_sig15(b.alpha)
            ));
        }
        write_text(&path, &curves)?;
        println!("wrote boundary curves to {}", path.display());
    }
    Ok(())
}
