use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use brucknet::{
    attach_perpendicularity, build_affine_plane, build_net_from_mols, check_axiom,
    check_counting_formulas, classify, construct_gk, delete_parallel_classes, extract_tau,
    net_parameters, perp_applicable, pole_polar_census, verify_theorem_roundtrip, AnalysisError,
    Axiom, ConstructError, Geometry, GeometryError, GkConfig, LatinSquareSet, Tau,
};
use brucknet_cli::document::{GeometryDocument, ParseError};
use brucknet_cli::dot::export_dot;
use brucknet_cli::mols::parse_mols;
use brucknet_cli::report::{verdict_line, RunReport};

/// Generate, verify and analyze finite geometries with perpendicularity.
#[derive(Parser)]
#[command(name = "brucknet", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a geometry document
    Gen {
        #[command(subcommand)]
        generator: Generator,
    },
    /// Check an axiom profile; exit 0 only if every requested axiom holds
    Check {
        /// Geometry document (`-` for stdin)
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Profile::All)]
        profile: Profile,
        /// Write the report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Derive net parameters, pole/polar census, counting identities and
    /// the perpendicularity involution; skipped stages name the failed
    /// hypothesis
    Analyze {
        /// Geometry document (`-` for stdin)
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render the incidence structure as a DOT graph
    ExportDot {
        /// Geometry document (`-` for stdin)
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum Generator {
    /// Affine plane of prime order q
    Affine {
        q: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Net from a file of mutually orthogonal latin squares
    NetFromMols {
        mols: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Remove parallel classes (indices in canonical class order) from a net
    DeleteClasses {
        input: PathBuf,
        #[arg(long, value_delimiter = ',')]
        classes: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Attach perpendicularity via a fixed-point-free involution on the
    /// parallel classes, e.g. `--tau 0-1,2-3`
    AttachTau {
        input: PathBuf,
        #[arg(long)]
        tau: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Extend a partial Sherk plane with k lines perpendicular to every
    /// original line
    Gk {
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Like gk, plus one apex point on all new lines and the pairing of new
    /// lines (k must be even)
    GkStar {
        input: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Profile {
    /// A*, B1-B5
    Sherk,
    /// A*, N1-N3 plus net parameter derivation
    Net,
    /// Everything, including thickness
    All,
}

impl Profile {
    fn name(self) -> &'static str {
        match self {
            Profile::Sherk => "sherk",
            Profile::Net => "net",
            Profile::All => "all",
        }
    }

    fn axioms(self) -> Vec<Axiom> {
        match self {
            Profile::Sherk => vec![
                Axiom::AStar,
                Axiom::B1,
                Axiom::B2,
                Axiom::B3,
                Axiom::B4,
                Axiom::B5,
            ],
            Profile::Net => vec![Axiom::AStar, Axiom::N1, Axiom::N2, Axiom::N3],
            Profile::All => vec![
                Axiom::A,
                Axiom::AStar,
                Axiom::B1,
                Axiom::B2,
                Axiom::B3,
                Axiom::B4,
                Axiom::B5,
                Axiom::N1,
                Axiom::N2,
                Axiom::N3,
                Axiom::ThickLine,
                Axiom::AllThick,
            ],
        }
    }
}

#[derive(thiserror::Error, Debug)]
enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {source}")]
    InvalidDocument { path: String, source: GeometryError },
    #[error("invalid --tau value: {0}")]
    TauSyntax(String),
    #[error(transparent)]
    Construct(#[from] ConstructError),
}

impl CliError {
    // 2: input or parse error; 3: construction precondition error.
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Construct(_) => 3,
            _ => 2,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn display_path(path: &Path) -> String {
    path.display().to_string()
}

fn read_text(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|source| CliError::Io {
                path: "<stdin>".to_string(),
                source,
            })?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: display_path(path),
        source,
    })
}

fn read_geometry(path: &Path) -> Result<Geometry, CliError> {
    let text = read_text(path)?;
    let doc = GeometryDocument::parse(&text).map_err(|source| CliError::Parse {
        path: display_path(path),
        source,
    })?;
    doc.to_geometry()
        .map_err(|source| CliError::InvalidDocument {
            path: display_path(path),
            source,
        })
}

fn write_output(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: display_path(path),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(command: Command) -> Result<bool, CliError> {
    match command {
        Command::Gen { generator } => run_gen(generator).map(|()| true),
        Command::Check {
            input,
            profile,
            out,
        } => {
            let started = Instant::now();
            let g = read_geometry(&input)?;
            let report = run_check(&g, profile, &display_path(&input));
            write_output(out.as_ref(), &report.render())?;
            eprintln!("timing_ms {}", started.elapsed().as_millis());
            Ok(report.passed())
        }
        Command::Analyze { input, out } => {
            let started = Instant::now();
            let g = read_geometry(&input)?;
            let report = run_analyze(&g, &display_path(&input));
            write_output(out.as_ref(), &report.render())?;
            eprintln!("timing_ms {}", started.elapsed().as_millis());
            Ok(report.passed())
        }
        Command::ExportDot { input, out } => {
            let text = read_text(&input)?;
            let doc = GeometryDocument::parse(&text).map_err(|source| CliError::Parse {
                path: display_path(&input),
                source,
            })?;
            // Validate even though only the document is rendered.
            doc.to_geometry()
                .map_err(|source| CliError::InvalidDocument {
                    path: display_path(&input),
                    source,
                })?;
            write_output(out.as_ref(), &export_dot(&doc))?;
            Ok(true)
        }
    }
}

fn emit_geometry(g: &Geometry, out: Option<&PathBuf>) -> Result<(), CliError> {
    write_output(out, &GeometryDocument::from_geometry(g).emit())
}

fn run_gen(generator: Generator) -> Result<(), CliError> {
    match generator {
        Generator::Affine { q, out } => {
            let g = build_affine_plane(q)?;
            emit_geometry(&g, out.as_ref())
        }
        Generator::NetFromMols { mols, out } => {
            let text = read_text(&mols)?;
            let (order, squares) = parse_mols(&text).map_err(|source| CliError::Parse {
                path: display_path(&mols),
                source,
            })?;
            let set = LatinSquareSet::new(order, squares)?;
            emit_geometry(&build_net_from_mols(&set), out.as_ref())
        }
        Generator::DeleteClasses {
            input,
            classes,
            out,
        } => {
            let g = read_geometry(&input)?;
            let result = delete_parallel_classes(&g, &classes)?;
            emit_geometry(&result, out.as_ref())
        }
        Generator::AttachTau { input, tau, out } => {
            let g = read_geometry(&input)?;
            let pairs = parse_tau_pairs(&tau)?;
            let params = net_parameters(&g).map_err(|e| ConstructError::NotANet(Box::new(e)))?;
            // Degree guards come before pair validation so an odd-degree net
            // is reported as such, not as an incomplete pair list.
            if params.r % 2 != 0 {
                return Err(ConstructError::OddDegree { degree: params.r }.into());
            }
            if params.r == 2 {
                return Err(ConstructError::DegreeTwo.into());
            }
            let tau = Tau::from_pairs(params.num_classes, &pairs).map_err(ConstructError::from)?;
            let result = attach_perpendicularity(&g, &tau)?;
            emit_geometry(&result, out.as_ref())
        }
        Generator::Gk { input, k, out } => {
            let g = read_geometry(&input)?;
            let result = construct_gk(&g, GkConfig::plain(k)?)?;
            emit_geometry(&result, out.as_ref())
        }
        Generator::GkStar { input, k, out } => {
            let g = read_geometry(&input)?;
            let result = construct_gk(&g, GkConfig::starred(k)?)?;
            emit_geometry(&result, out.as_ref())
        }
    }
}

fn parse_tau_pairs(text: &str) -> Result<Vec<(usize, usize)>, CliError> {
    text.split(',')
        .map(|part| {
            let (a, b) = part
                .split_once('-')
                .ok_or_else(|| CliError::TauSyntax(format!("expected `i-j`, got `{part}`")))?;
            let a = a.trim().parse::<usize>().map_err(|_| {
                CliError::TauSyntax(format!("expected a class index, got `{}`", a.trim()))
            })?;
            let b = b.trim().parse::<usize>().map_err(|_| {
                CliError::TauSyntax(format!("expected a class index, got `{}`", b.trim()))
            })?;
            Ok((a, b))
        })
        .collect()
}

fn is_b_axiom(axiom: Axiom) -> bool {
    matches!(
        axiom,
        Axiom::B1 | Axiom::B2 | Axiom::B3 | Axiom::B4 | Axiom::B5
    )
}

fn push_params(g: &Geometry, report: &mut RunReport) {
    match net_parameters(g) {
        Ok(p) => report.push(format!(
            "params n={} r={} v={} b={} classes={}",
            p.n, p.r, p.v, p.b, p.num_classes
        )),
        Err(AnalysisError::NotANet {
            property,
            witness,
            detail,
        }) => {
            report.push(format!(
                "params fail {property} witness {witness}: {detail}"
            ));
            report.fail();
        }
        Err(other) => {
            report.push(format!("params fail {other}"));
            report.fail();
        }
    }
}

fn run_check(g: &Geometry, profile: Profile, input: &str) -> RunReport {
    let mut report = RunReport::new(format!("check --profile {} {}", profile.name(), input));
    let applicable = perp_applicable(g);
    for axiom in profile.axioms() {
        if is_b_axiom(axiom) && !applicable {
            report.push(format!("axiom {axiom} skip no-perp-relation"));
            report.fail();
            continue;
        }
        let verdict = check_axiom(g, axiom).expect("applicability checked above");
        report.push(verdict_line(&verdict));
        if !verdict.holds {
            report.fail();
        }
    }
    if matches!(profile, Profile::Net | Profile::All) {
        push_params(g, &mut report);
    }
    if profile == Profile::All {
        match classify(g) {
            Ok(classification) => {
                if classification.classes.is_empty() {
                    report.push("classes: none");
                } else {
                    let names: Vec<String> = classification
                        .classes
                        .iter()
                        .map(|c| c.to_string())
                        .collect();
                    report.push(format!("classes: {}", names.join(" ")));
                }
            }
            Err(e) => {
                report.push(format!("classes fail {e}"));
                report.fail();
            }
        }
    }
    report
}

fn run_analyze(g: &Geometry, input: &str) -> RunReport {
    let mut report = RunReport::new(format!("analyze {input}"));

    match classify(g) {
        Ok(classification) => {
            if classification.classes.is_empty() {
                report.push("classes: none");
            } else {
                let names: Vec<String> = classification
                    .classes
                    .iter()
                    .map(|c| c.to_string())
                    .collect();
                report.push(format!("classes: {}", names.join(" ")));
            }
        }
        Err(e) => {
            report.push(format!("classes fail {e}"));
            report.fail();
        }
    }

    let params = net_parameters(g);
    push_params(g, &mut report);

    if perp_applicable(g) {
        match pole_polar_census(g) {
            Ok(census) => {
                let per_line = census
                    .poles_per_line
                    .map(|n| n.to_string())
                    .unwrap_or_else(|| "mixed".to_string());
                let per_point = census
                    .polars_per_point
                    .map(|n| n.to_string())
                    .unwrap_or_else(|| "mixed".to_string());
                report.push(format!(
                    "census total-poles={} total-polars={} poles-per-line={per_line} polars-per-point={per_point}",
                    census.total_poles(),
                    census.total_polars()
                ));
            }
            Err(e) => {
                report.push(format!("census fail {e}"));
                report.fail();
            }
        }
    } else {
        report.push("census skip no-perp-relation");
        report.fail();
    }

    match check_counting_formulas(g) {
        Ok(r) => report.push(format!(
            "formulas N={} M={} Nr={} Mn={} status=pass",
            r.poles_per_line,
            r.polars_per_point,
            r.poles_per_line * r.r,
            r.polars_per_point * r.n
        )),
        Err(AnalysisError::HypothesisFailed { hypothesis, .. }) => {
            report.push(format!("formulas skip hypothesis {hypothesis}"));
            report.fail();
        }
        Err(e) => {
            report.push(format!("formulas fail {e}"));
            report.fail();
        }
    }

    let tau = match extract_tau(g) {
        Ok(tau) => {
            report.push(format!("tau {tau}"));
            Some(tau)
        }
        Err(AnalysisError::HypothesisFailed { hypothesis, .. }) => {
            report.push(format!("tau skip hypothesis {hypothesis}"));
            report.fail();
            None
        }
        Err(e) => {
            report.push(format!("tau fail {e}"));
            report.fail();
            None
        }
    };

    match (tau, params.is_ok()) {
        (Some(tau), true) => {
            let bare = Geometry::new(g.num_points(), g.lines().to_vec())
                .expect("stripping the relation from a valid geometry cannot fail");
            match verify_theorem_roundtrip(&bare, &tau) {
                Ok(r) => report.push(format!(
                    "roundtrip attach=pass axioms=pass params=pass tau=pass recovered {}",
                    r.recovered_tau
                )),
                Err(e) => {
                    report.push(format!("roundtrip fail {e}"));
                    report.fail();
                }
            }
        }
        _ => {
            report.push("roundtrip skip unmet-preconditions");
            report.fail();
        }
    }

    report
}
