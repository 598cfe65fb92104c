//! Command-line definition and dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use recip_core::scan::{
    circulant_universe, cycle_colourings, scan_generic, Checkpoint, ScanItem, Universe,
};
use recip_core::{
    verify_family, ColouredGraph, FamilySpec, Predicate, ScanOptions, ScanResult, VertexColourings,
};

use crate::config::{Overrides, Settings};
use crate::error::{exit, CliError};
use crate::report::{analyze, AnalyzeOptions};

#[derive(Debug, Parser)]
#[command(
    name = "recip",
    version,
    about = "Linear and quadratic parts of reciprocal ideals of coloured graphs"
)]
pub struct Cli {
    /// TOML config file with cap and job settings.
    #[arg(long, global = true, env = "RECIP_CONFIG")]
    pub config: Option<PathBuf>,

    /// Largest vertex count accepted by the symbolic pipeline.
    #[arg(long, global = true, env = "RECIP_MAX_N")]
    pub max_n: Option<usize>,

    /// Node budget for the automorphism search.
    #[arg(long, global = true, env = "RECIP_MAX_SEARCH_NODES")]
    pub max_search_nodes: Option<u64>,

    /// Largest automorphism group enumerated element by element.
    #[arg(long, global = true, env = "RECIP_MAX_GROUP_ELEMENTS")]
    pub max_group_elements: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Analyze one coloured graph.
    Analyze(AnalyzeArgs),
    /// Exhaustive scans over graph families.
    Scan(ScanArgs),
    /// Check the closed-form statements for a graph family.
    Verify(VerifyArgs),
    /// List the family constructors.
    Families,
    /// Print the version.
    Version,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Latex,
}

#[derive(Debug, Args)]
pub struct FamilyArgs {
    /// Family constructor (see `recip families`).
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    /// Circulant connection set, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub connection: Option<Vec<usize>>,
}

impl FamilyArgs {
    fn spec(&self) -> Result<Option<FamilySpec>, CliError> {
        match &self.family {
            None => Ok(None),
            Some(tag) => Ok(Some(FamilySpec::from_parts(
                tag,
                self.n,
                self.m,
                self.connection.clone(),
            )?)),
        }
    }
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Graph file (JSON or plain text); `-` reads standard input.
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub family: FamilyArgs,
    /// Also compute the degree-two part.
    #[arg(long)]
    pub quadratics: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Include per-stage timings (makes output nondeterministic).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScanKind {
    /// Binomials of coloured n-cycles against the symmetry forms.
    Cycles,
    /// Eigenvalue count against pair-orbit count for circulant graphs.
    Circulants,
    /// Closed-form pencil counts against computed dimensions on the family fixtures.
    Fixtures,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PredicateArg {
    BinomialsInduced,
    REqualsS,
    Table1Consistency,
}

impl From<PredicateArg> for Predicate {
    fn from(p: PredicateArg) -> Self {
        match p {
            PredicateArg::BinomialsInduced => Predicate::BinomialsInduced,
            PredicateArg::REqualsS => Predicate::REqualsS,
            PredicateArg::Table1Consistency => Predicate::Table1Consistency,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VertexColouringsArg {
    All,
    Uniform,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    pub kind: ScanKind,
    /// Cycle length or circulant order.
    #[arg(long)]
    pub n: Option<usize>,
    /// Vertex colourings of the cycle: one colour, or every set partition.
    #[arg(long, value_enum, default_value_t = VertexColouringsArg::Uniform)]
    pub vertex_colourings: VertexColouringsArg,
    /// Enumerate every labelled colouring instead of one per dihedral class.
    #[arg(long)]
    pub no_dihedral: bool,
    /// Predicate for `fixtures` scans.
    #[arg(long, value_enum, default_value_t = PredicateArg::Table1Consistency)]
    pub predicate: PredicateArg,
    /// Worker threads (default: one per logical core).
    #[arg(long, env = "RECIP_JOBS")]
    pub jobs: Option<usize>,
    /// Raise the size cap for this scan kind.
    #[arg(long)]
    pub cap: Option<usize>,
    /// First universe index to check.
    #[arg(long, default_value_t = 0)]
    pub start: usize,
    /// One past the last universe index to check.
    #[arg(long)]
    pub end: Option<usize>,
    /// Resume from and keep updating this checkpoint file.
    #[arg(long)]
    pub checkpoint: Option<PathBuf>,
    /// Write the result here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Suppress progress lines on standard error.
    #[arg(long)]
    pub quiet: bool,
    /// Include elapsed time (makes output nondeterministic).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub family: FamilyArgs,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

/// What a command produced: text for standard output and the exit code.
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

fn settings(
    cli: &Cli,
    jobs: Option<usize>,
    cap: Option<usize>,
    kind: Option<ScanKind>,
) -> Result<Settings, CliError> {
    let file = match &cli.config {
        Some(path) => Overrides::load(path)?,
        None => Overrides::default(),
    };
    let flags = Overrides {
        max_n: cli.max_n,
        max_search_nodes: cli.max_search_nodes,
        max_group_elements: cli.max_group_elements,
        jobs,
        cycle_cap: cap.filter(|_| kind == Some(ScanKind::Cycles)),
        circulant_cap: cap.filter(|_| kind == Some(ScanKind::Circulants)),
    };
    Ok(Settings::resolve(flags.over(file)))
}

fn read_graph(path: &Path) -> Result<ColouredGraph, CliError> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| CliError::io(path, e))?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?
    };
    Ok(ColouredGraph::parse(&text)?)
}

fn run_analyze(cli: &Cli, args: &AnalyzeArgs) -> Result<Outcome, CliError> {
    let settings = settings(cli, None, None, None)?;
    let (source, g) = match (&args.input, args.family.spec()?) {
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "give either an input file or --family, not both".into(),
            ))
        }
        (None, None) => return Err(CliError::Usage("give an input file or --family".into())),
        (Some(path), None) => (path.display().to_string(), read_graph(path)?),
        (None, Some(spec)) => (spec.to_string(), spec.build()?),
    };
    let report = analyze(
        &source,
        &g,
        &settings,
        &AnalyzeOptions {
            quadratics: args.quadratics,
            timings: args.timings,
        },
    )?;
    let output = match args.format {
        Format::Text => report.to_text(),
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
        Format::Latex => report.to_latex(),
    };
    Ok(Outcome {
        output,
        code: exit::OK,
    })
}

fn run_verify(cli: &Cli, args: &VerifyArgs) -> Result<Outcome, CliError> {
    let settings = settings(cli, None, None, None)?;
    let spec = args
        .family
        .spec()?
        .ok_or_else(|| CliError::Usage("verify needs --family".into()))?;
    let v = verify_family(&spec, &settings.limits)?;
    let output = match args.format {
        Format::Json => serde_json::to_string_pretty(&v).expect("verification serializes") + "\n",
        Format::Csv => {
            let mut out = String::from("family,clause,passed,detail\n");
            for c in &v.checks {
                out.push_str(&format!(
                    "\"{}\",\"{}\",{},\"{}\"\n",
                    v.family,
                    c.clause,
                    c.passed,
                    c.detail.replace('"', "\"\"")
                ));
            }
            out
        }
        Format::Text => {
            let mut out = format!(
                "{}: {} (r = {}, s = {})\n",
                v.family,
                if v.passed { "pass" } else { "FAIL" },
                v.r,
                v.s
            );
            for c in &v.checks {
                out.push_str(&format!(
                    "  [{}] {}: {}\n",
                    if c.passed { "ok" } else { "FAIL" },
                    c.clause,
                    c.detail
                ));
            }
            out
        }
        Format::Latex => return Err(CliError::Usage("verify has no LaTeX output".into())),
    };
    Ok(Outcome {
        output,
        code: if v.passed { exit::OK } else { exit::FAILURES },
    })
}

/// Uniform family fixtures used by `scan fixtures`.
pub fn family_fixtures() -> Vec<FamilySpec> {
    let mut out = vec![FamilySpec::petersen()];
    out.extend((3..=8).map(FamilySpec::cycle));
    out.extend((2..=7).map(FamilySpec::complete));
    out.extend((2..=4).map(|m| FamilySpec::complete_bipartite(m, m)));
    out.extend([(2, 3), (2, 4), (3, 4)].map(|(m, n)| FamilySpec::complete_bipartite(m, n)));
    out.extend((2..=4).map(FamilySpec::hyperoctahedral));
    out.extend((4..=7).map(FamilySpec::star));
    out
}

fn scan_universe(
    args: &ScanArgs,
    settings: &Settings,
) -> Result<(String, Universe, Vec<ScanItem>, Predicate), CliError> {
    let need_n = || {
        args.n
            .ok_or_else(|| CliError::Usage("this scan needs --n".into()))
    };
    match args.kind {
        ScanKind::Cycles => {
            let n = need_n()?;
            if n > settings.cycle_cap {
                return Err(recip_core::Error::ResourceCap(format!(
                    "cycle colouring scan with n = {n} exceeds the cap {} (raise with --cap)",
                    settings.cycle_cap
                ))
                .into());
            }
            let vertices = match args.vertex_colourings {
                VertexColouringsArg::All => VertexColourings::All,
                VertexColouringsArg::Uniform => VertexColourings::Uniform,
            };
            let dihedral = !args.no_dihedral;
            let (universe, items) = cycle_colourings(n, vertices, dihedral)?;
            let id = format!(
                "cycles-n{n}-{vertices}{}",
                if dihedral { "-dihedral" } else { "" }
            );
            Ok((id, universe, items, Predicate::BinomialsInduced))
        }
        ScanKind::Circulants => {
            let n = need_n()?;
            if n > settings.circulant_cap {
                return Err(recip_core::Error::ResourceCap(format!(
                    "circulant scan with n = {n} exceeds the cap {} (raise with --cap)",
                    settings.circulant_cap
                ))
                .into());
            }
            let (universe, items) = circulant_universe(n)?;
            Ok((
                format!("circulants-n{n}"),
                universe,
                items,
                Predicate::REqualsS,
            ))
        }
        ScanKind::Fixtures => {
            let specs = family_fixtures();
            let items = specs
                .iter()
                .map(|s| {
                    Ok(ScanItem {
                        label: s.to_string(),
                        graph: s.build()?,
                    })
                })
                .collect::<Result<Vec<_>, recip_core::Error>>()?;
            let universe = Universe {
                description: "uniform family fixtures".into(),
                n: items.iter().map(|i| i.graph.n()).max().unwrap_or(0),
                raw_count: items.len(),
                size: items.len(),
            };
            let predicate: Predicate = args.predicate.into();
            Ok((format!("fixtures-{predicate}"), universe, items, predicate))
        }
    }
}

fn write_checkpoint(path: &Path, cp: &Checkpoint) -> Result<(), CliError> {
    let tmp = path.with_extension("tmp");
    std::fs::write(&tmp, cp.to_text()).map_err(|e| CliError::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| CliError::io(path, e))
}

fn run_scan(cli: &Cli, args: &ScanArgs) -> Result<Outcome, CliError> {
    let settings = settings(cli, args.jobs, args.cap, Some(args.kind))?;
    if !args.quiet {
        for w in settings.cost_warnings() {
            eprintln!("warning: {w}");
        }
    }
    let (id, universe, items, predicate) = scan_universe(args, &settings)?;
    let resume = match &args.checkpoint {
        Some(path) if path.exists() => {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            Some(Checkpoint::from_text(&text)?)
        }
        _ => None,
    };
    let opts = ScanOptions {
        limits: settings.limits,
        start: args.start,
        end: args.end,
        jobs: settings.jobs,
        ..ScanOptions::default()
    };
    let total = args.end.unwrap_or(items.len()).min(items.len());
    let mut write_error = None;
    let result = scan_generic(&id, universe, &items, predicate, &opts, resume, |cp| {
        if !args.quiet {
            eprintln!(
                "{id}: {}/{total} checked, {} counterexamples",
                cp.next_index,
                cp.counterexamples.len()
            );
        }
        if let Some(path) = &args.checkpoint {
            if let Err(e) = write_checkpoint(path, cp) {
                write_error.get_or_insert(e);
            }
        }
    })?;
    if let Some(e) = write_error {
        return Err(e);
    }
    let output = render_scan(&result, args.format, args.timings)?;
    Ok(Outcome {
        output,
        code: if result.holds() {
            exit::OK
        } else {
            exit::FAILURES
        },
    })
}

pub fn render_scan(r: &ScanResult, format: Format, timings: bool) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => {
            let mut v = serde_json::to_value(r).expect("scan result serializes");
            if timings {
                v["elapsed_ms"] = serde_json::json!(r.elapsed.as_millis() as u64);
            }
            serde_json::to_string_pretty(&v).expect("json value serializes") + "\n"
        }
        Format::Csv => {
            let mut out =
                String::from("scan_id,index,label,connected,pure_difference,r,s,witnesses\n");
            for c in &r.counterexamples {
                let cell = |v: Option<usize>| v.map_or(String::new(), |x| x.to_string());
                out.push_str(&format!(
                    "{},{},\"{}\",{},{},{},{},\"{}\"\n",
                    r.scan_id,
                    c.index,
                    c.label,
                    c.connected,
                    c.pure_difference,
                    cell(c.r),
                    cell(c.s),
                    c.witnesses.join("; ")
                ));
            }
            out
        }
        Format::Text => {
            let mut out = format!(
                "{} ({})\nuniverse: {} ({} before symmetry reduction, {} enumerated)\nchecked: {} (indices {}..{})\ncounterexamples: {}\n",
                r.scan_id, r.predicate, r.universe.description, r.universe.raw_count, r.universe.size, r.checked, r.start, r.end,
                r.counterexamples.len()
            );
            for c in &r.counterexamples {
                out.push_str(&format!(
                    "  #{} {}{}: {}\n",
                    c.index,
                    c.label,
                    if c.connected { "" } else { " (disconnected)" },
                    c.witnesses.join("; ")
                ));
            }
            if timings {
                out.push_str(&format!("elapsed: {} ms\n", r.elapsed.as_millis()));
            }
            out
        }
        Format::Latex => return Err(CliError::Usage("scan has no LaTeX output".into())),
    })
}

fn families_text() -> String {
    let rows = [
        ("cycle", "--n N (N >= 3)", "cycle C_N"),
        ("complete", "--n N", "complete graph K_N"),
        (
            "complete_bipartite",
            "--m M --n N (M <= N)",
            "K_{M,N}; K_{M,M} split by vertex parity",
        ),
        (
            "hyperoctahedral",
            "--m M",
            "H_M = K_{2M} minus a perfect matching",
        ),
        ("star", "--n N", "star K_{1,N-1} with centre 1"),
        (
            "circulant",
            "--n N --connection S",
            "circulant graph on Z_N, S within 1..N/2",
        ),
        ("petersen", "", "Petersen graph"),
    ];
    let mut out = String::new();
    for (tag, params, what) in rows {
        out.push_str(&format!("{tag:<20}{params:<26}{what}\n"));
    }
    out
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Analyze(a) => run_analyze(cli, a),
        Command::Scan(s) => run_scan(cli, s),
        Command::Verify(v) => run_verify(cli, v),
        Command::Families => Ok(Outcome {
            output: families_text(),
            code: exit::OK,
        }),
        Command::Version => Ok(Outcome {
            output: format!("recip {}\n", env!("CARGO_PKG_VERSION")),
            code: exit::OK,
        }),
    }
}

/// Parses `args`, runs the command, writes its output and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                exit::USAGE
            } else {
                exit::OK
            };
            let _ = e.print();
            return code;
        }
    };
    let out_path = match &cli.command {
        Command::Scan(s) => s.out.clone(),
        _ => None,
    };
    match run(&cli) {
        Ok(outcome) => {
            let written = match &out_path {
                Some(path) => {
                    std::fs::write(path, &outcome.output).map_err(|e| CliError::io(path, e))
                }
                None => std::io::stdout()
                    .write_all(outcome.output.as_bytes())
                    .map_err(|e| CliError::io("<stdout>", e)),
            };
            match written {
                Ok(()) => outcome.code,
                Err(e) => {
                    eprintln!("error: {e}");
                    e.exit_code()
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
