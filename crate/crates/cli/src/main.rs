use std::fs;
use std::io::IsTerminal;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use nilgeo::render::{self, Style};
use nilgeo::{build_report, fuzz, load, paper_suite, parse_scales, CliError, Loaded, Source};
use nilgeo_core::algebra::catalog;
use nilgeo_core::classify::naturally_reductive_structure;
use nilgeo_core::exact::{rat, DEFAULT_SPECTRUM_BOUND};
use nilgeo_core::isospectral::{gordon_wilson, KernelMode, NilmanifoldData};

#[derive(Parser)]
#[command(name = "nilgeo", version)]
#[command(about = "Exact geometry of metric 2-step nilpotent Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SourceArgs {
    /// Algebra JSON file
    path: Option<PathBuf>,
    /// Catalog algebra instead of a file
    #[arg(long, conflicts_with = "path")]
    catalog: Option<String>,
}

impl SourceArgs {
    fn source(&self) -> Result<Source, CliError> {
        match (&self.path, &self.catalog) {
            (Some(p), None) => Ok(Source::File(p.clone())),
            (None, Some(c)) => Ok(Source::Catalog(c.clone())),
            _ => Err(CliError::Usage("give an algebra file or --catalog <name>".into())),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Full diagnostic report for one algebra
    Inspect {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        json: bool,
    },
    /// Isospectrality criteria for a pair of nilmanifolds (default: the quaternionic pair)
    Isospec {
        /// Algebra JSON files
        paths: Vec<PathBuf>,
        /// Catalog algebras, used after any files
        #[arg(long)]
        catalog: Vec<String>,
        /// Diagonal scales of M, e.g. 1,1,1,1,1,1
        #[arg(long = "lattice-M")]
        lattice_m: Option<String>,
        /// Diagonal scales of L, e.g. 1/2,1/2,1/2
        #[arg(long = "lattice-L")]
        lattice_l: Option<String>,
        /// Squared-length bound for length spectra
        #[arg(long, default_value_t = DEFAULT_SPECTRUM_BOUND as u64)]
        bound: u64,
        #[arg(long, default_value = "symbolic")]
        mode: KernelMode,
        #[arg(long)]
        json: bool,
    },
    /// Naturally reductive structure or obstruction
    NrCheck {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        json: bool,
    },
    /// Replicates every computation on the quaternionic pair
    PaperVerify {
        #[arg(long)]
        json: bool,
    },
    /// Random algebras checked against the definition oracles
    Fuzz {
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
        count: u64,
        #[arg(long, default_value_t = 4)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        m: usize,
        /// Directory for one JSON file per discrepancy
        #[arg(long)]
        dump: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
}

fn style() -> Style {
    let enabled = std::env::var("NILGEO_COLOR").map_or(true, |v| v != "0");
    Style {
        color: enabled && std::io::stdout().is_terminal(),
    }
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) {
    if json {
        println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
    } else {
        print!("{}", text());
    }
}

fn status(ok: bool) -> ExitCode {
    ExitCode::from(if ok { 0 } else { 1 })
}

fn nilmanifold(l: &Loaded, m_flag: Option<&str>, l_flag: Option<&str>) -> Result<NilmanifoldData, CliError> {
    let scales = |flag: Option<&str>| -> Result<_, CliError> {
        flag.map(parse_scales)
            .transpose()
            .map_err(|e| CliError::Usage(e.to_string()))
    };
    let spec = l.file.lattice.clone().unwrap_or_default();
    let ms = scales(m_flag)?.or(spec.m_scale);
    let ls = scales(l_flag)?.or(spec.l_scale);
    Ok(NilmanifoldData::with_scales(
        l.file.algebra.clone(),
        ms.as_deref(),
        ls.as_deref(),
    )?)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    let style = style();
    match cli.command {
        Command::Inspect { source, json } => {
            let l = load(&source.source()?)?;
            let r = build_report(l.name(), l.source.describe(), &l.file.algebra);
            emit(json, &r, || render::report(&r, style));
            Ok(ExitCode::SUCCESS)
        }
        Command::Isospec {
            paths,
            catalog,
            lattice_m,
            lattice_l,
            bound,
            mode,
            json,
        } => {
            let mut sources: Vec<Source> = paths.into_iter().map(Source::File).collect();
            sources.extend(catalog.into_iter().map(Source::Catalog));
            if sources.is_empty() {
                sources = vec![
                    Source::Catalog("paper-nj".into()),
                    Source::Catalog("paper-njprime".into()),
                ];
            }
            if sources.len() != 2 {
                return Err(CliError::Usage(format!(
                    "isospec needs two algebras, got {}",
                    sources.len()
                )));
            }
            let first = nilmanifold(&load(&sources[0])?, lattice_m.as_deref(), lattice_l.as_deref())?;
            let second = nilmanifold(&load(&sources[1])?, lattice_m.as_deref(), lattice_l.as_deref())?;
            let v = gordon_wilson(&first, &second, mode, &rat(bound as i64))?;
            emit(json, &v, || render::verdict(&v, style));
            Ok(status(v.established()))
        }
        Command::NrCheck { source, json } => {
            let l = load(&source.source()?)?;
            let a = &l.file.algebra;
            let nr = naturally_reductive_structure(a);
            emit(json, &nr, || {
                let mut out = String::new();
                render::naturally_reductive(&mut out, &nr, a.dim_v(), a.dim_z(), style);
                out
            });
            Ok(status(nr.structure().is_some()))
        }
        Command::PaperVerify { json } => {
            let rows = paper_suite(&catalog::paper_nj(), &catalog::paper_njprime());
            emit(json, &rows, || render::suite(&rows, style));
            Ok(status(rows.iter().all(|r| r.pass)))
        }
        Command::Fuzz {
            seed,
            count,
            n,
            m,
            dump,
            json,
        } => {
            if n == 0 {
                return Err(CliError::Usage("--n must be at least 1".into()));
            }
            let s = fuzz(seed, count as usize, n, m);
            if let Some(dir) = dump {
                let io = |e: std::io::Error| CliError::Io {
                    path: dir.display().to_string(),
                    message: e.to_string(),
                };
                fs::create_dir_all(&dir).map_err(io)?;
                for (i, d) in s.discrepancies.iter().enumerate() {
                    let path = dir.join(format!("case-{}-{i}.json", d.case));
                    let text = serde_json::to_string_pretty(d).expect("discrepancy serializes");
                    fs::write(path, text).map_err(io)?;
                }
            }
            emit(json, &s, || render::fuzz(&s, style));
            Ok(status(s.discrepancies.is_empty()))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
