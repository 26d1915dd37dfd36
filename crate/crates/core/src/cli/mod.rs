//! Command-line front end.
//!
//! [`run`] parses arguments, dispatches one analysis and writes the report.
//! Exit codes: `0` success, `1` domain error (for example a non-radiant fan
//! given to an analysis that needs a bilateral fan), `2` malformed input.

mod input;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::coxaction::{self, CoxModel};
use crate::fan::{self, RayMatrix, SearchOptions};
use crate::groups::{self, GroupError, RootSet, VarietyType};
use crate::liealg::{self, BracketTable};
use crate::roots::{DemazureRoot, Root, RootSystem};
use crate::surfaces::{self, SurfaceError, SurfaceSequence};

pub use input::{parse_document, parse_rows, parse_sequence, FanInputDocument, InputError};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "toric-radiant",
    version,
    about = "Unipotent automorphisms of radiant toric varieties"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List all Demazure roots with their kinds and parities.
    Roots(Common),
    /// Structure of U_max and U_ss.
    Umax(Common),
    /// Enumerate regular unipotent subgroups with an open orbit.
    Enumerate {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = groups::DEFAULT_MAX_RESULTS)]
        max_results: usize,
        /// Include the dimension histogram.
        #[arg(long)]
        histogram: bool,
    },
    /// Central and derived series of U_max via the root graph.
    Series(Common),
    /// Center of U_max.
    Center(Common),
    /// Type I (commutative U_max) or Type II.
    Type(Common),
    /// Split off projective-line factors of a Type I variety.
    Split(Common),
    /// Check commutation relations on the Cox-ring model.
    Verify(Common),
    /// Report on a smooth toric surface, or enumerate surfaces.
    Surface {
        #[command(flatten)]
        common: Common,
        /// Enumerate all surfaces with at most this many rays.
        #[arg(long, value_name = "M")]
        enumerate: Option<usize>,
        /// Largest q for the Hirzebruch seeds (default: the ray bound).
        #[arg(long)]
        max_q: Option<usize>,
        #[arg(long, default_value_t = surfaces::DEFAULT_MAX_SURFACES)]
        max_results: usize,
    },
    /// Search for a bilateral labeling of a ray list.
    Bilateral(Common),
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Rows separated by ';', entries by spaces, e.g. "1 1 0; 1 0 0".
    #[arg(long)]
    pub ray_matrix: Option<String>,
    /// Ray generators in the same row format.
    #[arg(long)]
    pub rays: Option<String>,
    /// Self-intersection sequence, e.g. "0,1,0,-1".
    #[arg(long)]
    pub sequence: Option<String>,
    /// JSON file with {"n","ray_matrix"}, {"n","rays"} or {"sequence"}.
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Dot,
}

/// The resolved input of a request.
enum Source {
    Matrix(RayMatrix),
    Rays(fan::RayList),
    Sequence(SurfaceSequence),
    None,
}

struct Failure {
    code: i32,
    message: String,
    report: Option<Value>,
}

impl Failure {
    fn malformed(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
            report: None,
        }
    }

    fn domain(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
            report: None,
        }
    }
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Malformed(m) => Failure::malformed(m),
            InputError::NotRadiant(m) => Failure::domain(m),
        }
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        let report = match &e {
            GroupError::CapExceeded { partial, .. } => Some(json!({
                "partial": true,
                "count": partial.len(),
                "subgroups": partial.iter().map(root_set_json).collect::<Vec<_>>(),
            })),
            _ => None,
        };
        Failure {
            code: 1,
            message: e.to_string(),
            report,
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit code. Reports go to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    let format = cli.common().format;
    match dispatch(&cli.command) {
        Ok(report) => {
            let _ = write!(out, "{}", render(&report, format));
            0
        }
        Err(f) => {
            if let Some(report) = f.report {
                let _ = write!(out, "{}", render(&Rendered::Json(report), format));
            }
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

impl Cli {
    fn common(&self) -> &Common {
        match &self.command {
            Command::Roots(c)
            | Command::Umax(c)
            | Command::Series(c)
            | Command::Center(c)
            | Command::Type(c)
            | Command::Split(c)
            | Command::Verify(c)
            | Command::Bilateral(c) => c,
            Command::Enumerate { common, .. } | Command::Surface { common, .. } => common,
        }
    }
}

enum Rendered {
    Json(Value),
    Dot(String),
}

fn render(r: &Rendered, format: Format) -> String {
    match (r, format) {
        (Rendered::Dot(s), _) => s.clone(),
        (Rendered::Json(v), Format::Table) => {
            let mut s = String::new();
            table(v, "", &mut s);
            s
        }
        (Rendered::Json(v), _) => {
            let mut s = serde_json::to_string_pretty(v).expect("serializable");
            s.push('\n');
            s
        }
    }
}

/// Flattens a JSON object into `key: value` lines.
fn table(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() {
                    k.clone()
                } else {
                    format!("{prefix}.{k}")
                };
                table(x, &key, out);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in items.iter().enumerate() {
                table(x, &format!("{prefix}[{i}]"), out);
            }
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(scalar).collect();
            out.push_str(&format!("{prefix}: {}\n", parts.join(", ")));
        }
        other => out.push_str(&format!("{prefix}: {}\n", scalar(other))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn resolve(c: &Common) -> Result<Source, Failure> {
    let given = [
        c.ray_matrix.is_some(),
        c.rays.is_some(),
        c.sequence.is_some(),
        c.input.is_some(),
    ]
    .iter()
    .filter(|&&b| b)
    .count();
    if given > 1 {
        return Err(Failure::malformed(
            "give exactly one of --ray-matrix, --rays, --sequence, --input",
        ));
    }
    if let Some(s) = &c.ray_matrix {
        let rows = input::parse_rows(s)?;
        let n = rows[0].len();
        return Ok(Source::Matrix(input::ray_matrix(n, rows)?));
    }
    if let Some(s) = &c.rays {
        let rows = input::parse_rows(s)?;
        let n = rows[0].len();
        return Ok(Source::Rays(input::ray_list(n, rows)?));
    }
    if let Some(s) = &c.sequence {
        return Ok(Source::Sequence(input::sequence(input::parse_sequence(
            s,
        )?)?));
    }
    if let Some(p) = &c.input {
        return Ok(match input::read_document(p)? {
            FanInputDocument::RayMatrix { n, ray_matrix } => {
                Source::Matrix(input::ray_matrix(n, ray_matrix)?)
            }
            FanInputDocument::Rays { n, rays } => Source::Rays(input::ray_list(n, rays)?),
            FanInputDocument::Sequence { sequence } => Source::Sequence(input::sequence(sequence)?),
        });
    }
    Ok(Source::None)
}

fn require_matrix(c: &Common) -> Result<RayMatrix, Failure> {
    match resolve(c)? {
        Source::Matrix(a) => Ok(a),
        Source::Rays(rl) => Ok(input::matrix_from_rays(&rl)?),
        Source::Sequence(seq) => Ok(input::matrix_from_sequence(&seq)?),
        Source::None => Err(Failure::malformed(
            "missing input: give --ray-matrix, --rays, --sequence or --input",
        )),
    }
}

fn no_dot(c: &Common, command: &str) -> Result<(), Failure> {
    if c.format == Format::Dot {
        return Err(Failure::malformed(format!(
            "--format dot is only available for `series`, not `{command}`"
        )));
    }
    Ok(())
}

fn dispatch(cmd: &Command) -> Result<Rendered, Failure> {
    match cmd {
        Command::Roots(c) => {
            no_dot(c, "roots")?;
            let rs = RootSystem::new(&require_matrix(c)?);
            Ok(Rendered::Json(roots_report(&rs)))
        }
        Command::Umax(c) => {
            no_dot(c, "umax")?;
            let rs = RootSystem::new(&require_matrix(c)?);
            Ok(Rendered::Json(umax_report(&rs)))
        }
        Command::Enumerate {
            common,
            max_results,
            histogram,
        } => {
            no_dot(common, "enumerate")?;
            let rs = RootSystem::new(&require_matrix(common)?);
            let en = groups::enumerate_open_orbit_subgroups(&rs, *max_results)?;
            let mut v = header(&rs, "enumerate");
            v["count"] = json!(en.subgroups.len());
            if *histogram {
                v["histogram"] = histogram_json(&en.histogram);
            }
            v["subgroups"] = en.subgroups.iter().map(root_set_json).collect();
            Ok(Rendered::Json(v))
        }
        Command::Series(c) => {
            let rs = RootSystem::new(&require_matrix(c)?);
            let full = RootSet::full(&rs);
            if c.format == Format::Dot {
                return Ok(Rendered::Dot(groups::emit_dot(&groups::root_graph(&full)?)));
            }
            Ok(Rendered::Json(series_json(&rs, &full)?))
        }
        Command::Center(c) => {
            no_dot(c, "center")?;
            let rs = RootSystem::new(&require_matrix(c)?);
            let full = RootSet::full(&rs);
            let center = groups::center(&rs, &full)?;
            let lie = liealg::lie_center(full.roots(), &BracketTable::full(&rs));
            let mut v = header(&rs, "center");
            v["center_indices"] = json!(center.indices.iter().map(|i| i + 1).collect::<Vec<_>>());
            v["center"] = root_set_json(&center.roots);
            v["lie_center_dimension"] = json!(lie.kernel_dim);
            Ok(Rendered::Json(v))
        }
        Command::Type(c) => {
            no_dot(c, "type")?;
            let rs = RootSystem::new(&require_matrix(c)?);
            let t = groups::variety_type(&rs);
            let mut v = header(&rs, "type");
            v["type"] = json!(t.to_string());
            v["commutative"] = json!(t == VarietyType::TypeI);
            Ok(Rendered::Json(v))
        }
        Command::Split(c) => {
            no_dot(c, "split")?;
            let rs = RootSystem::new(&require_matrix(c)?);
            let s = groups::split_projective_lines(&rs)?;
            let mut v = header(&rs, "split");
            v["b"] = json!(s.b);
            v["columns"] = json!(s.columns.iter().map(|i| i + 1).collect::<Vec<_>>());
            v["remainder"] = match &s.remainder {
                Some(a) => matrix_json(a),
                None => Value::Null,
            };
            Ok(Rendered::Json(v))
        }
        Command::Verify(c) => {
            no_dot(c, "verify")?;
            let rs = RootSystem::new(&require_matrix(c)?);
            verify_report(&rs)
        }
        Command::Surface {
            common,
            enumerate,
            max_q,
            max_results,
        } => {
            no_dot(common, "surface")?;
            surface_command(common, *enumerate, *max_q, *max_results)
        }
        Command::Bilateral(c) => {
            no_dot(c, "bilateral")?;
            bilateral_command(c)
        }
    }
}

fn root_json(r: &Root) -> Value {
    json!({
        "ray": r.ray + 1,
        "coords": r.coords(),
        "name": r.to_string(),
    })
}

fn root_set_json(m: &RootSet) -> Value {
    json!({
        "dimension": m.len(),
        "roots": m.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
    })
}

fn matrix_json(a: &RayMatrix) -> Value {
    json!({
        "n": a.n(),
        "ray_matrix": a.rows().iter().map(|r| r.coords().to_vec()).collect::<Vec<_>>(),
    })
}

fn histogram_json(h: &BTreeMap<usize, usize>) -> Value {
    Value::Object(h.iter().map(|(d, c)| (d.to_string(), json!(c))).collect())
}

/// Fields shared by every fan report.
fn header(rs: &RootSystem, command: &str) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "n": rs.n(),
        "input_ray_matrix": matrix_json(rs.user_matrix())["ray_matrix"],
        "canonical_ray_matrix": matrix_json(rs.matrix())["ray_matrix"],
        // Canonical column i is input column canonical_permutation[i] (1-based).
        "canonical_permutation": rs.permutation().iter().map(|i| i + 1).collect::<Vec<_>>(),
    })
}

fn demazure_json(d: &DemazureRoot) -> Value {
    let mut v = root_json(&d.root);
    v["kind"] = json!(d.kind);
    v["parity"] = json!(d.parity);
    v
}

fn roots_report(rs: &RootSystem) -> Value {
    let report = rs.report();
    let mut v = header(rs, "roots");
    v["count"] = json!(report.len());
    v["roots"] = report.all_roots.iter().map(demazure_json).collect();
    v["per_ray"] = report
        .per_ray
        .iter()
        .map(|rs| rs.len())
        .collect::<Vec<_>>()
        .into();
    v["positive"] = rs
        .positive_partition()
        .iter()
        .map(|p| p.iter().map(|r| r.to_string()).collect::<Vec<_>>())
        .collect::<Vec<_>>()
        .into();
    v["classes"] = json!(rs
        .preorder()
        .classes
        .iter()
        .map(|c| c.iter().map(|i| i + 1).collect::<Vec<_>>())
        .collect::<Vec<_>>());
    v
}

fn umax_report(rs: &RootSystem) -> Value {
    let shape = groups::umax_shape(rs);
    let per_ray = groups::umax_per_ray(rs);
    let uss = groups::uss_shape(rs);
    let blocks = groups::class_blocks(rs);
    let mut v = header(rs, "umax");
    v["dimension"] = json!(shape.dim());
    v["shape"] = json!(shape.to_string());
    v["shape_tree"] = json!(shape);
    v["per_ray"] = json!(per_ray.to_string());
    v["blocks"] = blocks
        .iter()
        .map(|(k, l)| json!({"k": k, "l": l}))
        .collect();
    v["uss"] = json!({
        "shape": uss.shape.to_string(),
        "sizes": uss.sizes,
        "simple_components": uss.simple_components,
    });
    v
}

fn series_json(rs: &RootSystem, m: &RootSet) -> Result<Value, Failure> {
    let s = groups::series_report(rs, m)?;
    let g = groups::root_graph(m)?;
    let names = |sets: &[RootSet]| -> Value {
        sets.iter()
            .map(|x| x.iter().map(|r| r.to_string()).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .into()
    };
    let mut v = header(rs, "series");
    v["nilpotency_class"] = json!(s.nilpotency_class);
    v["derived_length"] = json!(s.derived_length);
    v["longest_path"] = json!(s.longest_path);
    v["arrows"] = json!({"inner": g.inner_count(), "outer": g.outer_count()});
    v["lower"] = names(&s.lower);
    v["upper"] = names(&s.upper);
    v["derived"] = names(&s.derived);
    v["center_indices"] = json!(s
        .center_indices
        .map(|c| c.iter().map(|i| i + 1).collect::<Vec<_>>()));
    Ok(v)
}

/// Runs the Cox-ring checks: conjugation for all positive-root pairs on
/// different rays with `d ≤ 4`, commutator signs for all pairs, and the
/// block embedding of every class.
fn verify_report(rs: &RootSystem) -> Result<Rendered, Failure> {
    let model = CoxModel::new(rs, 2);
    let cox = |e: coxaction::CoxError| Failure::domain(e.to_string());
    let (a, b) = (model.param(0).map_err(cox)?, model.param(1).map_err(cox)?);
    let pos = rs.positive_roots();
    let (mut conj, mut conj_fail) = (0, Vec::new());
    let (mut comm, mut comm_fail) = (0, Vec::new());
    for e in &pos {
        for f in &pos {
            if f.ray > e.ray && e.coords()[f.ray] <= 4 {
                conj += 1;
                if !coxaction::verify_conjugation(&model, e, f, &a, &b).map_err(cox)? {
                    conj_fail.push(format!("{e}, {f}"));
                }
            }
            comm += 1;
            if !coxaction::commutator_check(&model, e, f)
                .map_err(cox)?
                .consistent()
            {
                comm_fail.push(format!("{e}, {f}"));
            }
        }
    }
    let mut blocks = Vec::new();
    for s in 0..rs.preorder().classes.len() {
        let r = coxaction::matrix_embedding_check(&model, s).map_err(cox)?;
        blocks.push(json!({"k": r.k, "l": r.l, "pairs": r.pairs_checked}));
    }
    let ok = conj_fail.is_empty() && comm_fail.is_empty();
    let mut v = header(rs, "verify");
    v["conjugation"] = json!({"checked": conj, "failures": conj_fail});
    v["commutator"] = json!({"checked": comm, "failures": comm_fail});
    v["blocks"] = blocks.into();
    v["ok"] = json!(ok);
    if ok {
        Ok(Rendered::Json(v))
    } else {
        Err(Failure {
            code: 1,
            message: "verification failed".into(),
            report: Some(v),
        })
    }
}

fn surface_command(
    c: &Common,
    enumerate: Option<usize>,
    max_q: Option<usize>,
    max_results: usize,
) -> Result<Rendered, Failure> {
    let surf = |e: SurfaceError| Failure::domain(e.to_string());
    if let Some(max_m) = enumerate {
        if max_m < 3 {
            return Err(Failure::malformed("--enumerate needs at least 3 rays"));
        }
        let list = surfaces::enumerate_smooth_surfaces(max_m, max_q.unwrap_or(max_m), max_results)
            .map_err(surf)?;
        let items: Vec<Value> = list
            .iter()
            .map(|s| {
                json!({
                    "sequence": s.entries(),
                    "m": s.m(),
                    "radiant": surfaces::is_radiant_sequence(s),
                })
            })
            .collect();
        let non_radiant = items
            .iter()
            .filter(|x| x["radiant"] == json!(false))
            .count();
        return Ok(Rendered::Json(json!({
            "schema_version": SCHEMA_VERSION,
            "command": "surface",
            "max_m": max_m,
            "max_q": max_q.unwrap_or(max_m),
            "count": items.len(),
            "non_radiant": non_radiant,
            "surfaces": items,
        })));
    }
    let seq = match resolve(c)? {
        Source::Sequence(s) => s,
        _ => {
            return Err(Failure::malformed(
                "surface needs --sequence or a sequence document",
            ))
        }
    };
    match surfaces::surface_report(&seq) {
        Ok(r) => Ok(Rendered::Json(json!({
            "schema_version": SCHEMA_VERSION,
            "command": "surface",
            "sequence": seq.entries(),
            "radiant": true,
            "picard_number": r.picard_number,
            "rays": r.rays.iter().map(|x| x.coords().to_vec()).collect::<Vec<_>>(),
            "basis_rays": r.bilateral.basis_indices.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "ray_matrix": matrix_json(&r.bilateral.matrix)["ray_matrix"],
            "canonical_permutation": r.root_system_permutation.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "comparable": r.comparable,
            "d": r.d,
            "umax_shape": r.umax_shape.to_string(),
            "umax_per_ray": r.umax_per_ray.to_string(),
            "nilpotency_class": r.nilpotency_class,
            "subgroup_count": r.subgroups.len(),
            "subgroups": r.subgroups.iter().map(root_set_json).collect::<Vec<_>>(),
        }))),
        Err(SurfaceError::NotRadiant { picard_number }) => Err(Failure {
            code: 1,
            message: format!(
                "not radiant: sequence {seq} has no two adjacent non-positive entries"
            ),
            report: Some(json!({
                "schema_version": SCHEMA_VERSION,
                "command": "surface",
                "sequence": seq.entries(),
                "radiant": false,
                "status": "not radiant",
                "picard_number": picard_number,
            })),
        }),
        Err(e) => Err(surf(e)),
    }
}

fn bilateral_command(c: &Common) -> Result<Rendered, Failure> {
    let rl = match resolve(c)? {
        Source::Rays(rl) => rl,
        Source::Sequence(s) => {
            fan::RayList::new(2, s.rays()).map_err(|e| Failure::malformed(e.to_string()))?
        }
        Source::Matrix(a) => a.to_ray_list(),
        Source::None => {
            return Err(Failure::malformed(
                "bilateral needs --rays, --sequence, --ray-matrix or --input",
            ))
        }
    };
    let found = fan::bilateralize(&rl, SearchOptions::default()).map_err(|e| match e {
        fan::FanError::SearchCapExceeded { .. } => Failure::domain(e.to_string()),
        other => Failure::malformed(other.to_string()),
    })?;
    let mut v = json!({
        "schema_version": SCHEMA_VERSION,
        "command": "bilateral",
        "n": rl.n(),
        "rays": rl.rays().iter().map(|x| x.coords().to_vec()).collect::<Vec<_>>(),
        "radiant": found.is_some(),
    });
    if let Some(w) = found {
        let rs = RootSystem::new(&w.matrix);
        v["basis_rays"] = json!(w.basis_indices.iter().map(|i| i + 1).collect::<Vec<_>>());
        v["ray_order"] = json!(w.permutation.iter().map(|i| i + 1).collect::<Vec<_>>());
        v["ray_matrix"] = matrix_json(&w.matrix)["ray_matrix"].clone();
        v["canonical_permutation"] =
            json!(rs.permutation().iter().map(|i| i + 1).collect::<Vec<_>>());
    }
    Ok(Rendered::Json(v))
}
