use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;
use tmesh_dim::io::{
    parse_degree_range, parse_mesh_file, parse_mesh_str, render_level_svg, render_table, serialize_reports,
    write_atomic, MeshDoc,
};
use tmesh_dim::{fixtures, Analysis, Error, OrderingStrategy, Result};

#[derive(Parser)]
#[command(name = "tmesh-dim", version, about = "Dimension bounds for non-uniform degree splines on T-meshes")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Levels, relative Betti numbers, maximal segments and assumption checks.
    Analyze(Common),
    /// Euler characteristic and dimension bounds over a degree range.
    Bounds(Common),
    /// Exact dimensions from the rank oracle.
    Oracle(Common),
    /// Stability verdicts with per-level slack.
    Certify(Common),
    /// One SVG drawing per level.
    Svg(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum ReportKind {
    Text,
    Machine,
}

#[derive(Clone, Copy, ValueEnum)]
enum Ordering {
    Input,
    Greedy,
    Exhaustive,
    Auto,
}

#[derive(Args)]
struct Common {
    /// Mesh document.
    #[arg(required_unless_present = "fixture", conflicts_with = "fixture")]
    mesh: Option<PathBuf>,
    /// Use a bundled fixture instead of a file.
    #[arg(long)]
    fixture: Option<String>,
    /// Bi-degree or inclusive range, e.g. "3,3" or "3,3:5,5".
    #[arg(long, default_value = "3,3")]
    degrees: String,
    #[arg(long, value_enum, default_value = "auto")]
    ordering: Ordering,
    #[arg(long, value_enum, default_value = "text")]
    report: ReportKind,
    /// Also run the rank oracle.
    #[arg(long)]
    with_oracle: bool,
    /// Output file, or directory for svg.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn load(&self) -> Result<Analysis> {
        self.doc()?.analysis()
    }

    fn doc(&self) -> Result<MeshDoc> {
        match (&self.mesh, &self.fixture) {
            (Some(p), _) => parse_mesh_file(p),
            (None, Some(name)) => {
                let text = fixtures::mesh_text(name).ok_or_else(|| Error::Parse {
                    location: "--fixture".into(),
                    message: format!(
                        "unknown fixture {name:?}; known: {}",
                        fixtures::names().collect::<Vec<_>>().join(", ")
                    ),
                })?;
                parse_mesh_str(text)
            }
            (None, None) => unreachable!("clap requires one source"),
        }
    }

    fn strategy(&self) -> OrderingStrategy {
        match self.ordering {
            Ordering::Input => OrderingStrategy::Input,
            Ordering::Greedy => OrderingStrategy::Greedy,
            Ordering::Exhaustive => OrderingStrategy::Exhaustive,
            Ordering::Auto => OrderingStrategy::Auto,
        }
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(p) => write_atomic(p, text.as_bytes()),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn analyze(c: &Common) -> Result<()> {
    let a = c.load()?;
    let report = a.assumptions();
    let s = a.mesh.stats();
    let levels: Vec<_> = a
        .levels
        .iter()
        .zip(&a.contexts)
        .map(|(l, ctx)| {
            json!({
                "i": l.index,
                "n": a.profile.n(l.index.min(a.profile.top())),
                "faces": l.faces,
                "c": l.c,
                "h": l.h,
                "segments": ctx.segments.iter().map(|sg| json!({
                    "label": sg.label(),
                    "interior": sg.interior,
                    "r": sg.r,
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    let out = match c.report {
        ReportKind::Machine => {
            let doc = json!({
                "faces": s.faces,
                "edges": s.edges,
                "vertices": s.vertices,
                "levels_n": a.profile.levels,
                "assumptions_ok": report.ok(),
                "holes": report.holes,
                "levels": levels,
            });
            serde_json::to_string_pretty(&doc).unwrap() + "\n"
        }
        ReportKind::Text => {
            let mut t = format!(
                "mesh: {} faces, {} edges, {} vertices\nlevels: {}\n",
                s.faces,
                s.edges,
                s.vertices,
                a.profile.levels.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" < ")
            );
            for (l, ctx) in a.levels.iter().zip(&a.contexts) {
                t += &format!(
                    "level {}: {} faces, c={}, h={}, {} maximal segments ({} interior)\n",
                    l.index,
                    l.faces.len(),
                    l.c,
                    l.h,
                    ctx.segments.len(),
                    ctx.interior.len()
                );
                for sg in &ctx.segments {
                    t += &format!("  {} r={}{}\n", sg.label(), sg.r, if sg.interior { " interior" } else { "" });
                }
            }
            t += &if report.ok() {
                "assumptions: ok\n".to_string()
            } else {
                format!("assumptions: relative holes at {:?}\n", report.holes)
            };
            t
        }
    };
    c.emit(&out)?;
    if !report.ok() {
        return Err(Error::AssumptionViolated(format!("relative holes at {:?}", report.holes)));
    }
    Ok(())
}

fn bounds(c: &Common, oracle: bool) -> Result<()> {
    let a = c.load()?;
    let degrees = parse_degree_range(&c.degrees)?;
    let reports = a.sweep(&degrees, c.strategy(), oracle)?;
    let out = match c.report {
        ReportKind::Machine => serialize_reports(&reports),
        ReportKind::Text => render_table(&reports),
    };
    c.emit(&out)?;
    if let Some(r) = reports.iter().find(|r| !r.assumptions_ok) {
        return Err(Error::AssumptionViolated(format!("relative holes at {:?}", r.holes)));
    }
    Ok(())
}

fn oracle(c: &Common) -> Result<()> {
    let a = c.load()?;
    let degrees = parse_degree_range(&c.degrees)?;
    let dims: Vec<i64> = degrees.par_iter().map(|&m| a.oracle(m)).collect();
    let out = match c.report {
        ReportKind::Machine => {
            let rows: Vec<_> = degrees.iter().zip(&dims).map(|(m, d)| json!({"m": m, "oracle": d})).collect();
            serde_json::to_string_pretty(&rows).unwrap() + "\n"
        }
        ReportKind::Text => degrees.iter().zip(&dims).map(|(m, d)| format!("{m} {d}\n")).collect(),
    };
    c.emit(&out)
}

fn certify(c: &Common) -> Result<()> {
    let a = c.load()?;
    let degrees = parse_degree_range(&c.degrees)?;
    let reports = a.sweep(&degrees, c.strategy(), c.with_oracle)?;
    let rows: Vec<_> = reports
        .iter()
        .map(|r| {
            let slack: Option<i64> = r.levels.iter().map(|l| l.slack()).sum();
            json!({
                "m": r.m,
                "certified": r.certified,
                "exact": r.exact,
                "lower": r.lower_special.or(r.lower_general),
                "upper": r.upper,
                "slack": slack,
                "level_slack": r.levels.iter().map(|l| l.slack()).collect::<Vec<_>>(),
                "configuration1": r.configuration1,
                "oracle": r.oracle,
            })
        })
        .collect();
    let out = match c.report {
        ReportKind::Machine => serde_json::to_string_pretty(&rows).unwrap() + "\n",
        ReportKind::Text => {
            let mut t = String::new();
            for (r, row) in reports.iter().zip(&rows) {
                let b = |v: Option<i64>| v.map(|x| x.to_string()).unwrap_or_else(|| "-".into());
                t += &format!(
                    "m={} {} bounds {}/{} slack {} per level {:?}{}\n",
                    r.m,
                    if r.certified { format!("certified exact {}", r.chi) } else { "not certified".into() },
                    b(r.lower_special.or(r.lower_general)),
                    b(r.upper),
                    b(row["slack"].as_i64()),
                    r.levels.iter().map(|l| b(l.slack())).collect::<Vec<_>>(),
                    r.oracle.map(|o| format!(" oracle {o}")).unwrap_or_default()
                );
            }
            t
        }
    };
    c.emit(&out)?;
    if let Some(r) = reports.iter().find(|r| !r.assumptions_ok) {
        return Err(Error::AssumptionViolated(format!("relative holes at {:?}", r.holes)));
    }
    Ok(())
}

fn svg(c: &Common) -> Result<()> {
    let a = c.load()?;
    let dir = c.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir)?;
    for l in &a.levels {
        let path = dir.join(format!("level-{}.svg", l.index));
        write_atomic(&path, render_level_svg(&a, l.index).as_bytes())?;
        println!("{}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match &cli.cmd {
        Cmd::Analyze(c) => analyze(c),
        Cmd::Bounds(c) => bounds(c, c.with_oracle),
        Cmd::Oracle(c) => oracle(c),
        Cmd::Certify(c) => certify(c),
        Cmd::Svg(c) => svg(c),
    };
    match res {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
