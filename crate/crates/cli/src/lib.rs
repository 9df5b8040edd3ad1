//! Command-line front end for the extremal-number toolkit.

pub mod names;

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use anyhow::{bail, ensure, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use turan_core::constructions::{ConstructionSpec, Objective};
use turan_core::containment::minimalize;
use turan_core::covering::covering_report;
use turan_core::report::{write_csv, TheoremReport};
use turan_core::solver::{ex_general, SolverConfig, MAX_CEILING};
use turan_core::verifier::{self, DenseCandidate};

use names::{parse_families, parse_family, parse_graph, parse_range};

#[derive(Parser, Debug, Clone, Serialize)]
#[command(name = "turan", version, about = "Exact Turán-type numbers for small graphs")]
pub struct RunConfig {
    /// Worker threads for enumeration and grid points.
    #[arg(long, global = true, default_value_t = 1)]
    pub workers: usize,
    /// Largest order searched exhaustively (at most 10).
    #[arg(long, global = true, env = "TURAN_CEILING")]
    pub ceiling: Option<usize>,
    /// Edge depth at which the search tree is split into jobs.
    #[arg(long, global = true, default_value_t = 3)]
    pub split_depth: usize,
    /// Output stem; writes `<stem>.json`, `<stem>.csv` and `<stem>.timing.json`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Print the JSON payload instead of the text summary.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Both,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case", tag = "name")]
pub enum Command {
    /// ex(n, K_r, F) with every extremal graph.
    Ex {
        #[arg(long)]
        n: String,
        #[arg(long, default_value_t = 2)]
        r: usize,
        /// Forbidden graphs, comma separated.
        #[arg(long)]
        forbid: Vec<String>,
        /// Forbidden families such as `fp(C5,2)`.
        #[arg(long = "forbid-family")]
        forbid_family: Vec<String>,
    },
    /// The covering family F[p].
    Family {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        p: String,
    },
    /// Compare a closed form against exhaustive search.
    Verify {
        #[command(subcommand)]
        theorem: Theorem,
    },
    /// Build an extremal candidate and print its graph6.
    Construct {
        #[command(subcommand)]
        kind: Construct,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DenseArg {
    Complete,
    Turan,
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case", tag = "theorem")]
pub enum Theorem {
    /// ex(n, M_{s+1}) against the larger of G(n,s,K_{s+1}) and K_{2s+1}.
    ErdosGallai {
        #[arg(long)]
        n: String,
        #[arg(long)]
        s: String,
    },
    /// ex(n, K_r, {M_{s+1}, K_{k+1}}) against the two candidates.
    MaHou {
        #[arg(long)]
        n: String,
        #[arg(long)]
        s: String,
        #[arg(long)]
        r: String,
        #[arg(long)]
        k: String,
        #[arg(long, value_enum, default_value_t = DenseArg::Complete)]
        dense: DenseArg,
    },
    /// Exact value and unique extremal graph G(n,s,F[s]).
    Main {
        #[arg(long = "F")]
        f: String,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: String,
    },
    /// Linear growth with the profile peak as slope.
    MainSlope {
        #[arg(long = "F")]
        f: String,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: String,
    },
    /// s(n-s) + ex(s, F[s]) when p(F) >= s+1.
    Classical {
        #[arg(long = "F")]
        f: String,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        n: String,
    },
    /// Slope p(F)-1 for bipartite F with p(F) <= s.
    Gerbner {
        #[arg(long = "F")]
        f: String,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        n: String,
    },
    /// Balanced forests.
    Forest {
        #[arg(long = "F")]
        f: String,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        n: String,
    },
    /// ex(p-1, F[p-1]) for balanced forests.
    ForestRemark {
        #[arg(long = "F")]
        f: Vec<String>,
    },
    /// Minimum barrier value against matching number for all small graphs.
    TutteBerge {
        #[arg(long)]
        n: String,
    },
    /// Component checks for colour-critical F.
    ColorCritical {
        #[arg(long = "F")]
        f: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        p: String,
    },
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Construct {
    /// K_{s,n-s} with a best F-free filling of the s-part.
    Gns {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: usize,
        #[arg(long)]
        forbid: Vec<String>,
        /// Maximise K_r counts instead of edges.
        #[arg(long)]
        r: Option<usize>,
    },
    /// K_{2s+1}.
    Clique {
        #[arg(long)]
        s: usize,
    },
    /// G(n - t(2p-1), p-1, F[p-1]) plus t copies of K_{2p-1}.
    ForestExtremal {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: usize,
        #[arg(long)]
        t: usize,
        #[arg(long = "F")]
        f: String,
    },
    /// Balanced complete multipartite graph.
    Turan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        parts: usize,
    },
}

/// Result of one command before it is written anywhere.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub text: String,
    /// Deterministic JSON payload.
    pub json: String,
    pub csv: Option<String>,
    /// Parameter strings of failed points; empty unless a verification failed.
    pub failures: Vec<String>,
    pub elapsed: Duration,
}

impl Outcome {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn exit_code(&self) -> i32 {
        if self.ok() {
            0
        } else {
            1
        }
    }
}

impl RunConfig {
    pub fn solver(&self) -> Result<SolverConfig> {
        if let Some(c) = self.ceiling {
            ensure!(c <= MAX_CEILING, "ceiling must be at most {MAX_CEILING}, got {c}");
        }
        ensure!(self.workers >= 1, "need at least one worker");
        Ok(SolverConfig {
            ceiling: self.ceiling,
            workers: self.workers,
            split_depth: self.split_depth,
        })
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    let solver = cfg.solver()?;
    let start = Instant::now();
    let mut outcome = match &cfg.command {
        Command::Ex {
            n,
            r,
            forbid,
            forbid_family,
        } => cmd_ex(n, *r, forbid, forbid_family, &solver)?,
        Command::Family { graph, p } => cmd_family(graph, p)?,
        Command::Verify { theorem } => cmd_verify(theorem, &solver)?,
        Command::Construct { kind } => cmd_construct(kind, &solver)?,
    };
    outcome.elapsed = start.elapsed();
    Ok(outcome)
}

fn outcome(text: String, json: String) -> Outcome {
    Outcome {
        text,
        json,
        csv: None,
        failures: Vec::new(),
        elapsed: Duration::ZERO,
    }
}

pub fn cmd_ex(
    n: &str,
    r: usize,
    forbid: &[String],
    forbid_family: &[String],
    solver: &SolverConfig,
) -> Result<Outcome> {
    let items: Vec<&String> = forbid.iter().chain(forbid_family).collect();
    ensure!(!items.is_empty(), "give at least one --forbid or --forbid-family");
    let fam = parse_families(&items)?;
    let mut results = Vec::new();
    let mut text = String::new();
    for n in parse_range(n)? {
        let ex = ex_general(n, r, &fam, solver)?;
        let value = ex.value.map_or("none".to_string(), |v| v.to_string());
        writeln!(text, "ex({n}, K{r}, {{{}}}) = {value}", fam.label())?;
        for w in &ex.witnesses {
            writeln!(text, "  {w}")?;
        }
        results.push(ex);
    }
    Ok(outcome(text, to_json(&results)?))
}

pub fn cmd_family(graph: &str, p: &str) -> Result<Outcome> {
    let f = parse_graph(graph)?;
    let mut reports = Vec::new();
    let mut text = String::new();
    for p in parse_range(p)? {
        let report = covering_report(&f, p)?;
        let minimal = minimalize(&report.family);
        let members: Vec<String> = report.family.members().iter().map(|g| g.to_graph6()).collect();
        let min: Vec<String> = minimal.members().iter().map(|g| g.to_graph6()).collect();
        writeln!(
            text,
            "F[{p}] of {f}: {{{}}} minimal {{{}}} fallback_used = {}",
            members.join(", "),
            min.join(", "),
            report.fallback_used
        )?;
        reports.push(json!({ "report": report, "minimal": minimal }));
    }
    Ok(outcome(text, to_json(&reports)?))
}

fn grid2(n: &str, s: &str) -> Result<Vec<(usize, usize)>> {
    let ns = parse_range(n)?;
    let ss = parse_range(s)?;
    let grid: Vec<(usize, usize)> = ss
        .iter()
        .flat_map(|&s| ns.iter().map(move |&n| (n, s)))
        .filter(|&(n, s)| n > 2 * s)
        .collect();
    ensure!(!grid.is_empty(), "no grid point has n >= 2s+1");
    Ok(grid)
}

pub fn verify_report(theorem: &Theorem, solver: &SolverConfig) -> Result<TheoremReport> {
    let report = match theorem {
        Theorem::ErdosGallai { n, s } => verifier::verify_erdos_gallai(&grid2(n, s)?, solver)?,
        Theorem::MaHou { n, s, r, k, dense } => {
            let mut grid = Vec::new();
            for &s in &parse_range(s)? {
                for &r in &parse_range(r)? {
                    for &k in &parse_range(k)? {
                        for &n in &parse_range(n)? {
                            if n > 2 * s && k >= r && r >= 2 {
                                grid.push((n, s, r, k));
                            }
                        }
                    }
                }
            }
            ensure!(!grid.is_empty(), "no grid point has n >= 2s+1 and k >= r >= 2");
            let dense = match dense {
                DenseArg::Complete => DenseCandidate::Complete,
                DenseArg::Turan => DenseCandidate::Turan,
            };
            verifier::verify_ma_hou(&grid, dense, solver)?
        }
        Theorem::Main { f, s, r, n } => {
            verifier::verify_main_theorem_exact(&parse_graph(f)?, *s, *r, &parse_range(n)?, solver)?
        }
        Theorem::MainSlope { f, s, r, n } => {
            verifier::verify_main_theorem_slope(&parse_graph(f)?, *s, *r, &parse_range(n)?, solver)?
        }
        Theorem::Classical { f, s, n } => {
            verifier::verify_classical_exact(&parse_graph(f)?, *s, &parse_range(n)?, solver)?
        }
        Theorem::Gerbner { f, s, n } => verifier::verify_gerbner_slope(&parse_graph(f)?, *s, &parse_range(n)?, solver)?,
        Theorem::Forest { f, s, n } => verifier::verify_forest_theorem(&parse_graph(f)?, *s, &parse_range(n)?, solver)?,
        Theorem::ForestRemark { f } => {
            let mut forests = Vec::new();
            for item in f {
                for name in names::split_top_level(item)? {
                    forests.push(parse_graph(name)?);
                }
            }
            ensure!(!forests.is_empty(), "give at least one --F");
            verifier::verify_forest_remark(&forests, solver)?
        }
        Theorem::TutteBerge { n } => {
            let n_max = *parse_range(n)?.iter().max().expect("ranges are non-empty");
            verifier::verify_tutte_berge(n_max, solver)?
        }
        Theorem::ColorCritical { f, r, p } => {
            verifier::verify_color_critical_components(&parse_graph(f)?, *r, &parse_range(p)?, solver)?
        }
    };
    Ok(report)
}

pub fn render_report(report: &TheoremReport) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "{}", report.theorem);
    for c in &report.checks {
        let _ = writeln!(text, "  check {}: {} ({})", c.name, c.verdict.as_str(), c.detail);
    }
    for p in &report.points {
        let opt = |v: Option<u64>| v.map_or("-".to_string(), |v| v.to_string());
        let uniq = p
            .uniqueness
            .map_or(String::new(), |u| format!(" unique {}", u.as_str()));
        let _ = writeln!(
            text,
            "  {} brute {} formula {} {}{}",
            p.params_text(),
            opt(p.brute),
            opt(p.formula),
            p.verdict.as_str(),
            uniq
        );
    }
    let s = &report.summary;
    let _ = writeln!(
        text,
        "  {} points: {} pass, {} fail, {} small-n, {} unmet, {} rejected; all pass: {}",
        s.points, s.pass, s.fail, s.small_n_exception, s.hypothesis_unmet, s.rejected, s.all_pass
    );
    text
}

pub fn cmd_verify(theorem: &Theorem, solver: &SolverConfig) -> Result<Outcome> {
    let report = verify_report(theorem, solver)?;
    Ok(Outcome {
        text: render_report(&report),
        json: report.to_json()?,
        csv: Some(write_csv(std::slice::from_ref(&report))?),
        failures: report.summary.failures.clone(),
        elapsed: Duration::ZERO,
    })
}

pub fn construction_spec(kind: &Construct) -> Result<ConstructionSpec> {
    Ok(match kind {
        Construct::Gns { n, s, forbid, r } => {
            ensure!(!forbid.is_empty(), "give at least one --forbid");
            let fam = parse_families(forbid)?;
            ConstructionSpec::GNSFamily {
                n: *n,
                s: *s,
                family: fam.members().to_vec(),
                objective: r.map_or(Objective::Edges, |r| Objective::Cliques { r }),
            }
        }
        Construct::Clique { s } => ConstructionSpec::Clique2s1 { s: *s },
        Construct::ForestExtremal { n, p, t, f } => {
            ensure!(*p >= 1, "p must be at least 1");
            let g = parse_graph(f)?;
            let fam = parse_family(&format!("fp(g6:{},{})", g.to_graph6(), p - 1))?;
            ConstructionSpec::ForestExtremal {
                n: *n,
                p: *p,
                t: *t,
                family: fam.members().to_vec(),
            }
        }
        Construct::Turan { n, parts } => ConstructionSpec::Turan { p: *n, parts: *parts },
    })
}

pub fn cmd_construct(kind: &Construct, solver: &SolverConfig) -> Result<Outcome> {
    let spec = construction_spec(kind)?;
    let g = spec.build(solver)?;
    let json = to_json(&json!({
        "spec": spec,
        "graph": g,
        "order": g.order(),
        "edges": g.edge_count(),
    }))?;
    Ok(outcome(format!("{g}\n"), json))
}

fn stem_path(stem: &Path, ext: &str) -> PathBuf {
    let base = match stem.extension().and_then(|e| e.to_str()) {
        Some("json" | "csv") => stem.with_extension(""),
        _ => stem.to_path_buf(),
    };
    let mut name = base.into_os_string();
    name.push(ext);
    PathBuf::from(name)
}

/// Writes the payload files and the timing sidecar; returns the paths.
pub fn write_outputs(cfg: &RunConfig, outcome: &Outcome) -> Result<Vec<PathBuf>> {
    let Some(stem) = &cfg.out else {
        return Ok(Vec::new());
    };
    let mut written = Vec::new();
    if matches!(cfg.format, Format::Json | Format::Both) {
        let path = stem_path(stem, ".json");
        fs::write(&path, &outcome.json).with_context(|| format!("writing {}", path.display()))?;
        written.push(path);
    }
    if matches!(cfg.format, Format::Csv | Format::Both) {
        let Some(csv) = &outcome.csv else {
            bail!("CSV output is only available for verify");
        };
        let path = stem_path(stem, ".csv");
        fs::write(&path, csv).with_context(|| format!("writing {}", path.display()))?;
        written.push(path);
    }
    let timing = json!({
        "config": cfg,
        "elapsed_seconds": outcome.elapsed.as_secs_f64(),
    });
    let path = stem_path(stem, ".timing.json");
    fs::write(&path, to_json(&timing)?).with_context(|| format!("writing {}", path.display()))?;
    written.push(path);
    Ok(written)
}

/// Machine-readable failure list for stderr.
pub fn failure_list(outcome: &Outcome) -> Result<String> {
    Ok(serde_json::to_string(&json!({ "failures": outcome.failures }))?)
}
