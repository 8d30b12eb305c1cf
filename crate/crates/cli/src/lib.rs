//! Command-line front end for `hilbcone`. Every subcommand is a thin layer
//! over the library; `run` returns the text that would be printed so tests
//! can compare it with library output directly.

use std::fmt;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hilbcone::chambers::{fixture, Fixture};
use hilbcone::expr::{self, Symbol};
use hilbcone::rational::Q;
use hilbcone::severi::{self, Filter, SeveriInput, SeveriResult};
use hilbcone::{Cone, SurfaceKind};
use serde_json::{json, Value};

pub mod reproduce;

pub const FIXTURE_DIR_VAR: &str = "HILBCONE_FIXTURES";

#[derive(Parser, Debug)]
#[command(name = "hilbcone", version, about = "Exact divisor classes, Severi classes and wall sets on Hilbert schemes of points")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Severi class of n-nodal curves in a class, with its precondition report
    Class(ClassArgs),
    /// Solve the dimension equation for curve classes or node counts
    Enumerate(EnumerateArgs),
    /// Cone and wall-set operations on rays or fixtures
    Cone(ConeArgs),
    /// Draw a rank-2 or rank-3 fixture as SVG
    Plot(PlotArgs),
    /// Run the catalogue of worked examples
    Reproduce(ReproduceArgs),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Table,
}

#[derive(Args, Debug)]
pub struct ClassArgs {
    /// p2, fr:<r>, k3:<deg> or blowup:<surface>:<k>
    #[arg(long, default_value = "p2")]
    pub surface: String,
    /// Curve class, e.g. 7H or 7E+7F
    #[arg(long, allow_hyphen_values = true)]
    pub curve: String,
    /// Number of nodes
    #[arg(long)]
    pub n: u32,
    /// Codimension of the linear subsystem
    #[arg(long, default_value_t = 0)]
    pub codim: u32,
    /// Total number of points m >= n (plane only)
    #[arg(long)]
    pub subcollection: Option<u32>,
    /// h0 of the curve class, for surfaces where it is not known
    #[arg(long)]
    pub h0: Option<i64>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub surface: Option<String>,
    #[arg(long)]
    pub n: Option<u32>,
    /// Comma-separated: chi, h0_exact, genus, expected_dim, k3c_effective, ample
    #[arg(long)]
    pub filters: Option<String>,
    /// K3 degree (4, 6 or 8)
    #[arg(long)]
    pub k3: Option<i64>,
    #[arg(long)]
    pub nmax: Option<i64>,
    #[arg(long, value_enum, default_value_t)]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConeAction {
    /// Intersect a cone with a subspace
    Restrict,
    /// Test membership of a point
    Contains,
    /// Restrict a fixture's wall set to a subspace
    WallsRestrict,
    /// Carry a wall set on fr:<r+1> down to fr:<r>
    Transport,
    /// Chamber of a point in a fixture's wall set
    Locate,
}

#[derive(Args, Debug)]
pub struct ConeArgs {
    #[arg(value_enum)]
    pub action: ConeAction,
    /// Fixture path, name in $HILBCONE_FIXTURES, or built-in name
    #[arg(long)]
    pub fixture: Option<String>,
    /// Comma-separated generators, e.g. B,7H-B
    #[arg(long, allow_hyphen_values = true)]
    pub rays: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub point: Option<String>,
    /// Comma-separated subspace basis, e.g. H,B
    #[arg(long, allow_hyphen_values = true)]
    pub subspace: Option<String>,
    /// Coordinate labels for --rays (default: labels in order of use, B last)
    #[arg(long)]
    pub basis: Option<String>,
}

#[derive(Args, Debug)]
pub struct PlotArgs {
    #[arg(long)]
    pub fixture: String,
    /// Output file; - for stdout
    #[arg(long, default_value = "-")]
    pub out: String,
}

#[derive(Args, Debug)]
pub struct ReproduceArgs {
    #[arg(long)]
    pub json: bool,
    /// Only entries whose group or id starts with this
    #[arg(long)]
    pub filter: Option<String>,
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Lib(hilbcone::Error),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
            CliError::Lib(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<hilbcone::Error> for CliError {
    fn from(e: hilbcone::Error) -> Self {
        CliError::Lib(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Text for stdout and the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub code: i32,
}

impl Output {
    fn ok(text: String) -> Output {
        Output { text, code: 0 }
    }
}

pub fn run(cli: &Cli) -> CliResult<Output> {
    match &cli.command {
        Command::Class(a) => cmd_class(a).map(Output::ok),
        Command::Enumerate(a) => cmd_enumerate(a).map(Output::ok),
        Command::Cone(a) => cmd_cone(a).map(Output::ok),
        Command::Plot(a) => cmd_plot(a).map(Output::ok),
        Command::Reproduce(a) => Ok(cmd_reproduce(a)),
    }
}

fn pretty<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

pub fn severi_input(a: &ClassArgs) -> CliResult<SeveriInput> {
    let s = expr::parse_surface(&a.surface)?;
    let curve = expr::parse_surface_class(&s, &a.curve)?;
    let mut input = SeveriInput::new(s, curve, a.n);
    input.codim = a.codim;
    input.m = a.subcollection;
    input.h0 = a.h0;
    Ok(input)
}

pub fn cmd_class(a: &ClassArgs) -> CliResult<String> {
    let res = severi::severi_class(&severi_input(a)?)?;
    Ok(match a.format {
        Format::Json => pretty(&res),
        Format::Table => class_table(&res),
    })
}

fn verdict(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

fn class_table(r: &SeveriResult) -> String {
    let c = &r.checks;
    let mut rows = vec![("surface", r.surface.clone()), ("n", r.cls.n.to_string()), ("class", r.cls.to_string())];
    if let Some(norm) = &r.normalized {
        rows.push(("normalized", norm.to_string()));
    }
    let d = &c.dimension_equation;
    rows.push(("dimension", format!("{} = {}, expected {}: {}", d.quantity, d.value, d.expected, verdict(d.pass))));
    rows.push(("k3c_effective", serde_json::to_value(c.k3c_effective).unwrap().as_str().unwrap_or("").to_string()));
    let g = &c.genus_bound;
    rows.push(("genus_bound", format!("n = {} <= p_a = {}: {}", g.n, g.p_a, verdict(g.pass))));
    rows.push(("expected_dim", serde_json::to_value(c.expected_dim_condition).unwrap().as_str().unwrap_or("").to_string()));
    let flags: Vec<&str> = r.flags.iter().map(|f| f.code()).collect();
    rows.push(("flags", if flags.is_empty() { "none".into() } else { flags.join(", ") }));
    let mut out = String::new();
    for (k, v) in rows {
        out.push_str(&format!("{k:<14} {v}\n"));
    }
    for n in &r.notes {
        out.push_str(&format!("{:<14} {n}\n", "note"));
    }
    out
}

fn parse_filters(s: Option<&str>) -> CliResult<Vec<Filter>> {
    match s {
        None => Ok(vec![Filter::Chi]),
        Some(list) => list.split(',').filter(|x| !x.trim().is_empty()).map(|x| x.parse::<Filter>().map_err(CliError::from)).collect(),
    }
}

fn flag_list(flags: &[severi::Flag]) -> String {
    if flags.is_empty() {
        "-".into()
    } else {
        flags.iter().map(|f| f.code()).collect::<Vec<_>>().join(",")
    }
}

pub fn cmd_enumerate(a: &EnumerateArgs) -> CliResult<String> {
    let k3_deg = match (&a.k3, &a.surface) {
        (Some(d), _) => Some(*d),
        (None, Some(s)) if s.starts_with("k3:") => match expr::parse_surface(s)?.kind() {
            SurfaceKind::K3 { deg } => Some(*deg as i64),
            _ => None,
        },
        _ => None,
    };
    if let Some(deg) = k3_deg {
        let nmax = a.nmax.or(a.n.map(i64::from)).ok_or_else(|| usage("K3 enumeration needs --nmax"))?;
        let sols = severi::enumerate_k3(deg, nmax)?;
        return Ok(match a.format {
            Format::Json => pretty(&json!({ "surface": format!("k3:{deg}"), "nmax": nmax, "solutions": sols })),
            Format::Table => {
                let mut out = format!("{:>6} {:>6} {:>8} {:>6}  flags\n", "d", "n", "p_a", "genus");
                for s in &sols {
                    out.push_str(&format!("{:>6} {:>6} {:>8} {:>6}  {}\n", s.d, s.n, s.p_a, verdict(s.genus_ok), flag_list(&s.flags)));
                }
                out.push_str(&format!("{} solutions\n", sols.len()));
                out
            }
        });
    }
    let spec = a.surface.as_deref().ok_or_else(|| usage("enumerate needs --surface or --k3"))?;
    let s = expr::parse_surface(spec)?;
    let n = a.n.ok_or_else(|| usage("enumerate needs --n"))?;
    match s.kind() {
        SurfaceKind::P2 => {
            let sols = severi::enumerate_p2(n as i64);
            Ok(match a.format {
                Format::Json => pretty(&json!({ "surface": "p2", "n": n, "solutions": sols })),
                Format::Table => {
                    let mut out = format!("{:>6} {:>6}  flags\n", "d", "n");
                    for s in &sols {
                        out.push_str(&format!("{:>6} {:>6}  {}\n", s.d, s.n, flag_list(&s.flags)));
                    }
                    out.push_str(&format!("{} solutions\n", sols.len()));
                    out
                }
            })
        }
        SurfaceKind::Hirzebruch { r } => {
            let filters = parse_filters(a.filters.as_deref())?;
            let sols = severi::enumerate_hirzebruch(*r as i64, n, &filters)?;
            let names: Vec<&str> = filters.iter().map(|f| f.name()).collect();
            Ok(match a.format {
                Format::Json => pretty(&json!({ "surface": spec, "n": n, "filters": names, "solutions": sols })),
                Format::Table => {
                    let mut out = format!("{:>6} {:>6}", "a", "b");
                    for f in Filter::ALL {
                        out.push_str(&format!(" {:>13}", f.name()));
                    }
                    out.push('\n');
                    for c in &sols {
                        out.push_str(&format!("{:>6} {:>6}", c.a, c.b));
                        for f in Filter::ALL {
                            out.push_str(&format!(" {:>13}", verdict(c.verdicts[&f])));
                        }
                        out.push('\n');
                    }
                    out.push_str(&format!("{} solutions\n", sols.len()));
                    out
                }
            })
        }
        other => Err(usage(format!("no enumerator for surface {other}; use p2, fr:<r> or --k3"))),
    }
}

/// Read a fixture from a path, from `$HILBCONE_FIXTURES`, or from the
/// built-in set, in that order.
pub fn load_fixture(name: &str) -> CliResult<Fixture> {
    let read = |p: &Path| -> CliResult<Fixture> {
        let src = std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
        Ok(Fixture::parse(&src)?)
    };
    let direct = Path::new(name);
    if direct.is_file() {
        return read(direct);
    }
    if let Some(dir) = std::env::var_os(FIXTURE_DIR_VAR) {
        for cand in [name.to_string(), format!("{name}.json")] {
            let p = Path::new(&dir).join(cand);
            if p.is_file() {
                return read(&p);
            }
        }
    }
    match fixture::builtin_source(name) {
        Some(src) => Ok(Fixture::parse(src)?),
        None => Err(usage(format!(
            "fixture {name:?} not found (looked at the path, ${FIXTURE_DIR_VAR}, and built-ins {})",
            fixture::builtin_names().join(", ")
        ))),
    }
}

fn q_str(x: &Q) -> Value {
    Value::String(x.to_string())
}

fn mat_json(m: &[Vec<Q>]) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(q_str).collect())).collect())
}

pub fn cone_json(basis: &[String], c: &Cone) -> Value {
    json!({
        "basis": basis,
        "rays": mat_json(c.rays()),
        "lineality": mat_json(c.lineality()),
        "facets": mat_json(c.facets()),
        "equalities": mat_json(c.equalities()),
    })
}

fn parse_list(list: &str, syms: &[Symbol]) -> CliResult<Vec<Vec<Q>>> {
    let items = expr::split_list(list);
    if items.is_empty() {
        return Err(usage("empty list"));
    }
    items.iter().map(|e| expr::parse_expr(e, syms).map_err(CliError::from)).collect()
}

pub fn cmd_cone(a: &ConeArgs) -> CliResult<String> {
    let fixture = a.fixture.as_deref().map(load_fixture).transpose()?;
    let (basis, syms, cone) = match (&fixture, &a.rays) {
        (Some(f), None) => (f.basis.clone(), expr::wallset_symbols(&f.surface, &f.basis), f.bounding()?),
        (None, Some(rays)) => {
            let basis = match &a.basis {
                Some(b) => expr::split_list(b),
                None => {
                    let mut used = expr::split_list(rays);
                    for extra in [&a.point, &a.subspace].into_iter().flatten() {
                        used.extend(expr::split_list(extra));
                    }
                    expr::infer_labels(&used)
                }
            };
            let syms = expr::coordinate_symbols(&basis);
            let gens = parse_list(rays, &syms)?;
            (basis, syms, Cone::from_generators(gens)?)
        }
        (Some(_), Some(_)) => return Err(usage("give either --fixture or --rays, not both")),
        (None, None) => return Err(usage("give --fixture or --rays")),
    };
    let need_fixture = || fixture.as_ref().ok_or_else(|| usage("this action needs --fixture"));
    let point = || -> CliResult<Vec<Q>> {
        let p = a.point.as_deref().ok_or_else(|| usage("this action needs --point"))?;
        Ok(expr::parse_expr(p, &syms)?)
    };
    let subspace = || -> CliResult<(Vec<Vec<Q>>, Vec<String>)> {
        let s = a.subspace.as_deref().ok_or_else(|| usage("this action needs --subspace"))?;
        Ok((parse_list(s, &syms)?, expr::split_list(s)))
    };
    let out = match a.action {
        ConeAction::Restrict => {
            let (sub, labels) = subspace()?;
            cone_json(&labels, &cone.intersect_subspace(&sub)?)
        }
        ConeAction::Contains => {
            let p = point()?;
            json!({ "point": p.iter().map(q_str).collect::<Vec<_>>(), "contains": cone.contains(&p)?, "interior": cone.contains_interior(&p)? })
        }
        ConeAction::WallsRestrict => {
            let ws = need_fixture()?.wall_set()?;
            let (sub, labels) = subspace()?;
            let res = ws.restrict_walls(&sub, labels)?;
            json!({ "wall_set": Fixture::from_wall_set(&res.walls), "dropped": res.dropped })
        }
        ConeAction::Transport => {
            let ws = need_fixture()?.wall_set()?;
            serde_json::to_value(Fixture::from_wall_set(&hilbcone::transport_wallset_down(&ws)?)).expect("serializable")
        }
        ConeAction::Locate => {
            let ws = need_fixture()?.wall_set()?;
            let loc = ws.locate(&point()?)?;
            let labels: Vec<&str> = ws.walls.iter().map(|w| w.label.as_str()).collect();
            json!({ "walls": labels, "location": loc })
        }
    };
    let _ = basis;
    Ok(pretty(&out))
}

pub fn cmd_plot(a: &PlotArgs) -> CliResult<String> {
    let f = load_fixture(&a.fixture)?;
    let svg = hilbcone::fixture_svg(&f)?;
    if a.out == "-" {
        return Ok(svg);
    }
    std::fs::write(&a.out, svg).map_err(|e| CliError::Io(format!("{}: {e}", a.out)))?;
    Ok(String::new())
}

pub fn cmd_reproduce(a: &ReproduceArgs) -> Output {
    let report = reproduce::run_catalog(a.filter.as_deref());
    let text = if a.json { pretty(&report) } else { report.to_text() };
    Output { text, code: report.exit_code() }
}
