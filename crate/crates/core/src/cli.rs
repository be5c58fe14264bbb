//! Command-line driver: verification campaigns over parameter grids, identity
//! checks and enumeration dumps.
//!
//! Exit codes: 0 when every check passes, 1 when some check fails, 2 on usage errors.

use std::io::Write;
use std::ops::RangeInclusive;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use crate::catalan::{collision_count, enumerate_trees, tree_to_process, verify_catalan, SizeVector};
use crate::combinat::{enumerate_ssyt, hook_character_product, hook_character_tableau_sum, Partition};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::maps::{
    verify_extgtl, verify_theorem_hook, verify_theorem_trinomial, verify_wronskian, Check, VerificationReport,
    REPORT_SCHEMA,
};
use crate::scalar::FieldSpec;
use crate::spaces::sl2_generators;
use crate::weyl::{
    degree_two_displays, find_invertible, first_moving, generic_display_pairs, hook_difference_vector, intertwiners,
    span_has_invertible,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// An inclusive range written `a..b`, or a single value `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span(RangeInclusive<u32>);

impl Span {
    pub fn values(&self) -> Vec<u32> {
        self.0.clone().collect()
    }
}

impl FromStr for Span {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Span, String> {
        let num = |t: &str| t.trim().parse::<u32>().map_err(|_| format!("bad range '{s}'"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b)?),
            None => (num(s)?, num(s)?),
        };
        if lo > hi {
            return Err(format!("empty range '{s}'"));
        }
        Ok(Span(lo..=hi))
    }
}

/// A comma-separated field list such as `GF(2),GF(3),Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fields(pub Vec<FieldSpec>);

impl FromStr for Fields {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Fields, String> {
        parse_fields(s).map(Fields)
    }
}

fn parse_fields(s: &str) -> std::result::Result<Vec<FieldSpec>, String> {
    let fields: Vec<FieldSpec> = s
        .split(',')
        .map(|t| t.trim().parse::<FieldSpec>().map_err(|e| format!("bad field '{t}': {e}")))
        .collect::<std::result::Result<_, _>>()?;
    if fields.is_empty() {
        return Err("no fields".into());
    }
    Ok(fields)
}

#[derive(Parser, Debug)]
#[command(name = "plethyverify", version, about = "Exact verification of SL2 plethysm isomorphisms")]
pub struct Cli {
    /// Emit JSON reports instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<std::path::PathBuf>,
    /// Worker threads for grid campaigns.
    #[arg(long, global = true, env = "PLETHY_JOBS")]
    jobs: Option<usize>,
    /// Include wall-clock times in reports.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Verify an isomorphism on every point of a parameter grid.
    Verify {
        #[command(subcommand)]
        which: VerifyCommand,
    },
    /// Compare the product and tableau forms of the hook character.
    Character {
        #[arg(long = "M")]
        m: Span,
        #[arg(long = "N")]
        n: Span,
        #[arg(long = "d")]
        d: Span,
    },
    /// List semistandard tableaux of a shape.
    Tableaux {
        /// Row lengths, e.g. `2,1,1`.
        #[arg(long)]
        shape: String,
        #[arg(long)]
        max_entry: u32,
    },
    /// Trees, election processes and their correspondence.
    Catalan {
        #[arg(long)]
        layers: usize,
        /// `N_1,...,N_k`; defaults to `2^i - 1`.
        #[arg(long)]
        sizes: Option<String>,
        /// Also print every tree and its process.
        #[arg(long)]
        list: bool,
    },
    /// Small-characteristic witnesses.
    Counterexample {
        #[arg(value_parser = ["char2-sym", "char3-hook"])]
        which: String,
    },
}

#[derive(Args, Debug, Clone)]
struct Grid {
    #[arg(long = "M", default_value = "0")]
    m: Span,
    #[arg(long = "N")]
    n: Span,
    #[arg(long = "d")]
    d: Span,
    #[arg(long, default_value = "Q")]
    field: Fields,
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    Hook(Grid),
    Trinomial(Grid),
    Wronskian {
        #[arg(long = "N")]
        n: Span,
        #[arg(long = "d")]
        d: Span,
        #[arg(long, default_value = "Q")]
        field: Fields,
    },
    Extgtl {
        #[arg(long = "M")]
        m: Span,
        #[arg(long = "N")]
        n: Span,
        #[arg(long = "e")]
        e: Span,
        #[arg(long, default_value = "Q")]
        field: Fields,
    },
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema: &'a str,
    reports: &'a [VerificationReport],
    #[serde(skip_serializing_if = "Vec::is_empty")]
    skipped: Vec<String>,
}

/// Outcome of one command: reports plus free-form text lines.
#[derive(Default)]
struct Output {
    reports: Vec<VerificationReport>,
    lines: Vec<String>,
    skipped: Vec<String>,
}

type Point = (Vec<(&'static str, u32)>, FieldSpec);

fn grid3(names: [&'static str; 3], a: &Span, b: &Span, c: &Span, fields: &[FieldSpec]) -> Vec<Point> {
    let mut out = Vec::new();
    for &f in fields {
        for x in a.values() {
            for y in b.values() {
                for z in c.values() {
                    out.push((vec![(names[0], x), (names[1], y), (names[2], z)], f));
                }
            }
        }
    }
    out
}

fn label(p: &Point) -> String {
    let parts: Vec<String> = p.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{} over {}", parts.join(", "), p.1)
}

/// Runs every grid point; points whose parameters are out of range for the
/// theorem are skipped, other errors become failing reports.
fn campaign(points: Vec<Point>, valid: impl Fn(&Point) -> bool + Sync, run: impl Fn(&Point) -> Result<VerificationReport> + Sync) -> Output {
    let results: Vec<(Point, Option<Result<VerificationReport>>)> = points
        .into_par_iter()
        .map(|p| {
            let r = valid(&p).then(|| run(&p));
            (p, r)
        })
        .collect();
    let mut out = Output::default();
    for (p, r) in results {
        match r {
            None => out.skipped.push(label(&p)),
            Some(Ok(rep)) => out.reports.push(rep),
            Some(Err(e)) => {
                let params: Vec<(&str, u32)> = p.0.clone();
                let mut rep = VerificationReport::new("error", p.1, &params);
                rep.push(Check::new("runs", false).detail(e.to_string()));
                out.reports.push(rep);
            }
        }
    }
    out
}

fn verify(which: &VerifyCommand) -> Output {
    let get = |p: &Point, k: &str| p.0.iter().find(|(n, _)| *n == k).map(|(_, v)| *v).expect("grid name");
    match which {
        VerifyCommand::Hook(g) => campaign(
            grid3(["M", "N", "d"], &g.m, &g.n, &g.d, &g.field.0),
            |p| get(p, "N") >= 1 && get(p, "N") <= get(p, "d") + 1,
            |p| verify_theorem_hook(get(p, "M"), get(p, "N"), get(p, "d"), p.1),
        ),
        VerifyCommand::Trinomial(g) => campaign(
            grid3(["M", "N", "d"], &g.m, &g.n, &g.d, &g.field.0),
            |_| true,
            |p| verify_theorem_trinomial(get(p, "M"), get(p, "N"), get(p, "d"), p.1),
        ),
        VerifyCommand::Wronskian { n, d, field } => {
            let points: Vec<Point> = grid3(["N", "d", "_"], n, d, &Span(0..=0), &field.0)
                .into_iter()
                .map(|(mut v, f)| {
                    v.pop();
                    (v, f)
                })
                .collect();
            campaign(points, |p| get(p, "N") <= get(p, "d") + 1, |p| verify_wronskian(get(p, "N"), get(p, "d"), p.1))
        }
        VerifyCommand::Extgtl { m, n, e, field } => campaign(
            grid3(["M", "N", "e"], m, n, e, &field.0),
            |p| get(p, "e") + 1 >= get(p, "M") + get(p, "N"),
            |p| verify_extgtl(get(p, "M"), get(p, "N"), get(p, "e"), p.1),
        ),
    }
}

fn character(m: &Span, n: &Span, d: &Span) -> Result<Output> {
    let mut out = Output::default();
    for mm in m.values() {
        for nn in n.values() {
            if nn == 0 {
                out.skipped.push(format!("M={mm}, N=0"));
                continue;
            }
            for dd in d.values() {
                let a = hook_character_product(mm, nn, dd)?;
                let b = hook_character_tableau_sum(mm, nn, dd)?;
                let verdict = if a == b { "EQUAL" } else { "DIFFERENT" };
                out.lines.push(format!("M={mm} N={nn} d={dd}: {a}, {verdict}"));
                if a != b {
                    out.lines.push(format!("  tableau sum: {b}"));
                }
                let mut rep = VerificationReport::new("character", FieldSpec::Rationals, &[("M", mm), ("N", nn), ("d", dd)]);
                rep.field = "Z[q]".into();
                rep.push(Check::new("character", a == b).param("product", &a).param("tableaux", &b));
                out.reports.push(rep);
            }
        }
    }
    Ok(out)
}

fn tableaux(shape: &str, max_entry: u32) -> Result<Output> {
    let shape: Partition = shape.parse()?;
    let ts = enumerate_ssyt(&shape, max_entry);
    let mut out = Output::default();
    out.lines.extend(ts.iter().map(|t| t.to_string()));
    out.lines.push(format!("count: {}", ts.len()));
    Ok(out)
}

fn catalan(k: usize, sizes: Option<&str>, list: bool) -> Result<Output> {
    if k == 0 {
        return Err(Error::InvalidParameters("--layers must be at least 1".into()));
    }
    let s = match sizes {
        None => SizeVector::powers_of_two(k),
        Some(t) => {
            let v = t
                .split(',')
                .map(|x| x.trim().parse::<u64>().map_err(|_| Error::Parse(format!("bad size '{x}'"))))
                .collect::<Result<Vec<_>>>()?;
            let s = SizeVector::new(v)?;
            if s.k() != k {
                return Err(Error::InvalidParameters(format!("{} sizes given for {k} layers", s.k())));
            }
            s
        }
    };
    let mut out = Output::default();
    let trees = enumerate_trees(k);
    if !s.is_generic() {
        let c = collision_count(k, &s)?;
        out.lines.push(format!("sizes {s} are not in generic position"));
        out.lines.push(format!("trees: {}, collisions: {c}", trees.len()));
        return Ok(out);
    }
    if list {
        for t in &trees {
            out.lines.push(format!("{t}  ->  {}", tree_to_process(t, &s)?));
        }
    }
    let rep = verify_catalan(k, &s)?;
    let count = rep.check("injective").and_then(|c| c.detail.clone()).unwrap_or_default();
    out.lines.push(format!("count: {} ({count})", trees.len()));
    out.reports.push(rep);
    Ok(out)
}

fn counterexample(which: &str) -> Result<Output> {
    let mut out = Output::default();
    match which {
        "char2-sym" => {
            let f = FieldSpec::prime(2)?;
            let mut rep = VerificationReport::new("char2-sym", f, &[]);
            let pairs: Vec<(Matrix, Matrix)> = sl2_generators(f).iter().map(degree_two_displays).collect();
            let finite = intertwiners(&pairs)?;
            let found = find_invertible(&finite, f, 1 << 20).flatten();
            let mut c = Check::new("no_invertible_intertwiner_over_gf2_points", found.is_none())
                .detail(format!("{} generators, intertwiner space of dimension {}", pairs.len(), finite.len()));
            if let Some(t) = &found {
                c = c.param("invertible", t);
            }
            rep.push(c);
            let generic = intertwiners(&generic_display_pairs(f)?)?;
            rep.push(
                Check::new("no_invertible_intertwiner_generic", !span_has_invertible(&generic)?)
                    .detail(format!("γ indeterminate, intertwiner space of dimension {}", generic.len())),
            );
            out.reports.push(rep);
        }
        "char3-hook" => {
            let f = FieldSpec::prime(3)?;
            let mut rep = VerificationReport::new("char3-hook", f, &[]);
            let v = hook_difference_vector(f)?;
            out.lines.push(format!("F(0 2 / 1) - F(0 1 / 2) = {v}"));
            rep.push(Check::new("nonzero", !v.is_zero()));
            let moved = first_moving(&v, &sl2_generators(f))?;
            let mut c = Check::new("fixed_by_generators", moved.is_none());
            if let Some(g) = moved {
                c = c.param("moved_by", g);
            }
            rep.push(c);
            out.reports.push(rep);
        }
        _ => unreachable!("clap restricts the choices"),
    }
    Ok(out)
}

fn execute(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Verify { which } => Ok(verify(which)),
        Command::Character { m, n, d } => character(m, n, d),
        Command::Tableaux { shape, max_entry } => tableaux(shape, *max_entry),
        Command::Catalan { layers, sizes, list } => catalan(*layers, sizes.as_deref(), *list),
        Command::Counterexample { which } => counterexample(which),
    }
}

fn render(cli: &Cli, out: &mut Output) -> Result<String> {
    if !cli.timing {
        for r in &mut out.reports {
            r.elapsed_ms = None;
        }
    }
    if cli.json {
        let env = Envelope { schema: REPORT_SCHEMA, reports: &out.reports, skipped: out.skipped.clone() };
        let mut s = serde_json::to_string_pretty(&env).map_err(|e| Error::Parse(e.to_string()))?;
        s.push('\n');
        return Ok(s);
    }
    let mut s = String::new();
    for l in &out.lines {
        s.push_str(l);
        s.push('\n');
    }
    for r in &out.reports {
        s.push_str(&r.render_text());
    }
    if !out.skipped.is_empty() {
        s.push_str(&format!("skipped {} points outside the theorem's range\n", out.skipped.len()));
    }
    if !out.reports.is_empty() {
        let failed = out.reports.iter().filter(|r| !r.passed()).count();
        s.push_str(&format!("{} reports, {failed} failed\n", out.reports.len()));
    }
    Ok(s)
}

/// Parses `args` (including the program name), runs the command and writes the
/// report to `stdout` or the `--out` file. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.unwrap_or(0)).build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let result = pool.install(|| execute(&cli));
    let mut out = match result {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    if out.reports.is_empty() && out.lines.is_empty() {
        let _ = writeln!(stderr, "error: no parameter point is in range");
        return EXIT_USAGE;
    }
    let text = match render(&cli, &mut out) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text),
        None => stdout.write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_USAGE;
    }
    if out.reports.iter().all(|r| r.passed()) {
        EXIT_OK
    } else {
        EXIT_FAIL
    }
}
