//! Command-line frontend: orbit tables, Weyl images, verification suites
//! and diagram rendering.
//!
//! Every command is a pure function of its arguments, so [`execute`]
//! returns the whole stdout and exit code and the binary only prints it.

pub mod cache;
pub mod render;

use std::fmt::Write;

use clap::{Parser, Subcommand, ValueEnum};
use kantor_core::admissibility::{enumerate_ka, enumerate_sp, find_orbit, validate};
use kantor_core::verify::{self, Suite};
use kantor_core::weyl_image::{weyl_image, weyl_image_by, Route};
use kantor_core::{DiagramType, Error, Marking, NodeSet, OrbitEntry, PairParameters, Result, RootSystem, WeylElement};
use serde::Serialize;

use cache::{Cached, ResultCache};
use render::{Format, Labelling, RenderSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug, Serialize)]
#[command(name = "kantor", version, about = "Marked Dynkin diagrams of simple Kantor pairs and their short Peirce gradings")]
pub struct Cli {
    /// Read and print E-type node ids in Bourbaki numbering.
    #[arg(long, global = true)]
    pub bourbaki: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Serialize)]
pub enum Command {
    /// Orbit table of admissible markings.
    Classify {
        #[arg(value_name = "TYPE")]
        ty: String,
        /// Pairs (S, T) instead of subsets S.
        #[arg(long)]
        sp: bool,
        /// Drop gradings with empty T.
        #[arg(long, requires = "sp")]
        nontrivial_only: bool,
        #[arg(long, value_enum, default_value_t = TableFormat::Text)]
        format: TableFormat,
    },
    /// Image of (S, T) under the BC2 Weyl group.
    WeylImage {
        #[arg(value_name = "TYPE")]
        ty: String,
        #[arg(long = "S", value_name = "NODES")]
        s: String,
        #[arg(long = "T", value_name = "NODES", default_value = "")]
        t: String,
        /// One of 1,s1,s2,s2s1,-1,-s1,-s2,-s2s1; all eight when omitted.
        #[arg(long, allow_hyphen_values = true)]
        u: Option<String>,
        /// Show each of the three routes.
        #[arg(long)]
        check: bool,
    },
    /// Run verification suites and print a JSON report.
    Verify {
        /// Every reduced type of rank at most 6 when omitted.
        #[arg(value_name = "TYPE")]
        ty: Option<String>,
        #[arg(long, value_enum, default_value_t = SuiteArg::All)]
        suite: SuiteArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Draw a marked diagram.
    Render {
        #[arg(value_name = "TYPE")]
        ty: String,
        #[arg(long = "S", value_name = "NODES")]
        s: String,
        #[arg(long = "T", value_name = "NODES")]
        t: Option<String>,
        #[arg(long, value_enum, default_value_t = RenderFormat::Ascii)]
        format: RenderFormat,
        /// Also show where the lowest root attaches.
        #[arg(long)]
        extended: bool,
        /// Omit the orbit label.
        #[arg(long)]
        no_params: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum TableFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum RenderFormat {
    Ascii,
    Json,
    Tex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum SuiteArg {
    Admissibility,
    Weyl,
    Chevalley,
    Table1,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Admissibility => Suite::Admissibility,
            SuiteArg::Weyl => Suite::Weyl,
            SuiteArg::Chevalley => Suite::Chevalley,
            SuiteArg::Table1 => Suite::Table1,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: EXIT_OK, stdout }
    }
}

fn parse_type(s: &str) -> Result<DiagramType> {
    let ty: DiagramType = s.parse()?;
    if !ty.is_reduced() {
        return Err(Error::Unsupported(format!("{ty} is not reduced; BC systems only occur as grading targets")));
    }
    Ok(ty)
}

/// `"1,5"` to a node set; the empty string is the empty set.
pub fn parse_nodes(ty: DiagramType, lab: Labelling, s: &str) -> Result<NodeSet> {
    let ids = s
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<usize>().map_err(|_| Error::Parse(format!("`{p}` is not a node id"))))
        .collect::<Result<Vec<_>>>()?;
    lab.read_set(ty, &ids)
}

fn labelling(cli: &Cli) -> Labelling {
    if cli.bourbaki {
        Labelling::Bourbaki
    } else {
        Labelling::Standard
    }
}

#[derive(Serialize)]
struct OrbitRow<'a> {
    label: &'a str,
    #[serde(rename = "S")]
    s: Vec<usize>,
    #[serde(rename = "T", skip_serializing_if = "Option::is_none")]
    t: Option<Vec<usize>>,
    size: usize,
    params: PairParameters,
}

fn classify(ty: DiagramType, lab: Labelling, sp: bool, nontrivial: bool, format: TableFormat) -> Result<String> {
    let rs = RootSystem::new(ty);
    let table = if sp { enumerate_sp(&rs, nontrivial)? } else { enumerate_ka(&rs)? };
    if format == TableFormat::Json {
        let rows: Vec<OrbitRow> = table
            .iter()
            .map(|e| OrbitRow {
                label: &e.label,
                s: lab.show_set(ty, e.rep.s),
                t: e.rep.t.map(|t| lab.show_set(ty, t)),
                size: e.size,
                params: e.params,
            })
            .collect();
        return Ok(serde_json::to_string_pretty(&rows).expect("serializable") + "\n");
    }
    let kind = if sp { "SP-graded" } else { "Kantor" };
    let mut out = format!("{ty}: {} {kind} orbit(s)\n", table.len());
    let width = table.iter().map(|e| e.label.len()).max().unwrap_or(0).max(5);
    if sp {
        writeln!(out, "{:width$}  {:7} {:7} {:>4} {:>5} {:>5} {:>5}", "label", "S", "T", "size", "d", "e", "f").unwrap();
    } else {
        writeln!(out, "{:width$}  {:7} {:>4} {:>5} {:>5}", "label", "S", "size", "d", "e").unwrap();
    }
    for e in &table {
        let s = lab.fmt_set(ty, e.rep.s);
        let p = e.params;
        match e.rep.t {
            Some(t) => writeln!(
                out,
                "{:width$}  {:7} {:7} {:>4} {:>5} {:>5} {:>5}",
                e.label,
                s,
                lab.fmt_set(ty, t),
                e.size,
                p.d,
                p.e,
                p.f.unwrap_or(0)
            ),
            None => writeln!(out, "{:width$}  {:7} {:>4} {:>5} {:>5}", e.label, s, e.size, p.d, p.e),
        }
        .unwrap();
    }
    Ok(out)
}

fn orbit_label(rs: &RootSystem, table: &[OrbitEntry], m: &Marking) -> Result<String> {
    find_orbit(rs, table, m)
        .map(|e| e.label.clone())
        .ok_or_else(|| Error::Internal(format!("{m} is missing from the orbit table")))
}

fn weyl(ty: DiagramType, lab: Labelling, s: &str, t: &str, u: Option<&str>, check: bool) -> Result<String> {
    let rs = RootSystem::new(ty);
    let s = parse_nodes(ty, lab, s)?;
    let t = parse_nodes(ty, lab, t)?;
    let m = Marking::sp(ty, s, t);
    validate(&rs, &m)?;
    let elements = match u {
        Some(u) => vec![u.parse::<WeylElement>()?],
        None => WeylElement::ALL.to_vec(),
    };
    let table = enumerate_sp(&rs, false)?;
    let show = |s: NodeSet, t: NodeSet| format!("S={} T={}", lab.fmt_set(ty, s), lab.fmt_set(ty, t));
    let mut out = format!("{ty} {}  {}\n", show(s, t), orbit_label(&rs, &table, &m)?);
    for u in elements {
        let (s2, t2) = weyl_image(&rs, u, s, t)?;
        let label = orbit_label(&rs, &table, &Marking::sp(ty, s2, t2))?;
        writeln!(out, "{:>5}: {}  {label}", u.name(), show(s2, t2)).unwrap();
        if check {
            for (name, route) in [("table", Route::Table), ("general", Route::General), ("oracle", Route::Oracle)] {
                let (a, b) = weyl_image_by(&rs, route, u, s, t)?;
                writeln!(out, "       {name:8} {}", show(a, b)).unwrap();
            }
        }
    }
    Ok(out)
}

fn verify_cmd(ty: Option<&str>, suite: SuiteArg, seed: u64) -> Result<Outcome> {
    let types = match ty {
        Some(t) => vec![parse_type(t)?],
        None => DiagramType::all_reduced(1, 6),
    };
    let report = verify::run(suite.into(), &types, seed);
    let code = if report.passed { EXIT_OK } else { EXIT_FAILED };
    Ok(Outcome { code, stdout: serde_json::to_string_pretty(&report).expect("serializable") + "\n" })
}

fn render_cmd(ty: DiagramType, spec: RenderSpec, s: &str, t: Option<&str>) -> Result<String> {
    let rs = RootSystem::new(ty);
    let s = parse_nodes(ty, spec.labelling, s)?;
    let m = match t {
        None => Marking::kantor(ty, s),
        Some(t) => Marking::sp(ty, s, parse_nodes(ty, spec.labelling, t)?),
    };
    validate(&rs, &m)?;
    let table = if m.t.is_some() { enumerate_sp(&rs, false)? } else { enumerate_ka(&rs)? };
    let label = orbit_label(&rs, &table, &m)?;
    Ok(render::render(&rs, &m, &label, &spec))
}

/// Run a parsed command. Errors are usage or validation failures.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let lab = labelling(cli);
    match &cli.command {
        Command::Classify { ty, sp, nontrivial_only, format } => {
            classify(parse_type(ty)?, lab, *sp, *nontrivial_only, *format).map(Outcome::ok)
        }
        Command::WeylImage { ty, s, t, u, check } => weyl(parse_type(ty)?, lab, s, t, u.as_deref(), *check).map(Outcome::ok),
        Command::Verify { ty, suite, seed } => verify_cmd(ty.as_deref(), *suite, *seed),
        Command::Render { ty, s, t, format, extended, no_params } => {
            let format = match format {
                RenderFormat::Ascii => Format::Ascii,
                RenderFormat::Json => Format::Json,
                RenderFormat::Tex => Format::Tex,
            };
            let spec = RenderSpec { format, include_extended: *extended, include_params: !no_params, labelling: lab };
            render_cmd(parse_type(ty)?, spec, s, t.as_deref()).map(Outcome::ok)
        }
    }
}

/// [`execute`] through the cache. Only completed runs are stored.
pub fn execute_cached(cli: &Cli, cache: Option<&ResultCache>) -> Result<Outcome> {
    let Some(cache) = cache else { return execute(cli) };
    let key = ResultCache::key(&serde_json::to_string(cli).expect("serializable"));
    if let Some(hit) = cache.get(&key) {
        return Ok(Outcome { code: hit.code, stdout: hit.stdout });
    }
    let out = execute(cli)?;
    // a cache that cannot be written is not an error
    let _ = cache.put(&key, &Cached { code: out.code, stdout: out.stdout.clone() });
    Ok(out)
}
