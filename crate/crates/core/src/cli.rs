//! Command-line surface. Commands exchange bound quivers as canonical JSON
//! on files or stdin/stdout.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cover::{complete_tau_slice, tau_mutation, z_separated, znq_cover, Mutation, SliceWindow};
use crate::dual::quadratic_dual;
use crate::error::{Error, Result};
use crate::graded::{
    default_degree_cap, graded_dims, is_n_properly_graded, stable_translation_check, GradedDims, ProperGrading,
};
use crate::io::{parse_bound_quiver, parse_coefficient, to_dot, to_json};
use crate::koszul::koszul_profile;
use crate::loewy::{classify, default_h_max, gk_estimate, loewy_matrix, ClassificationReport};
use crate::mckay::{
    abelian_vertex_id, ade_double, mckay_abelian, mckay_add_loops, mckay_ade, mckay_from_characters,
    relations_sr, relations_sr_dual, relations_xi, relations_xi_dual, slice_relations_sr, slice_relations_xi,
    AbelianSpec, AdeFamily, CharacterTable, SrParams, Which, XiParams, XiSpec,
};
use crate::quiver::BoundQuiver;
use crate::trivext::trivial_extension_with_cap;

pub const REPORT_SCHEMA: &str = "qlab.report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Dot,
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "qlab", version, about = "Bound quiver algebras: duals, trivial extensions, covers, McKay families, classification")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Output file; stdout when absent
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    /// Degree cap for the properly-graded probe
    #[arg(long, env = "QLAB_DEGREE_CAP", global = true)]
    pub degree_cap: Option<usize>,
    /// Seed recorded in report headers
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate quivers and relation families
    #[command(subcommand)]
    Gen(GenCommand),
    /// Quadratic dual
    Dual(InputArgs),
    /// Trivial extension with its returning arrows
    Trivext(TrivextArgs),
    /// Window of a ℤ-cover
    Cover(CoverArgs),
    /// Complete τ-slice of the separated cover
    Slice(SliceArgs),
    /// τ-mutation of a complete τ-slice
    Mutate(MutateArgs),
    /// Graded dimensions and Hilbert series
    Hilbert(HilbertArgs),
    /// Minimal resolution profile of the simples
    Koszul(KoszulArgs),
    /// Finite / tame / wild classification
    Classify(ClassifyArgs),
    /// Full pipeline in one document
    Report(ReportArgs),
}

#[derive(Debug, Subcommand)]
pub enum GenCommand {
    /// McKay quiver of ℤ/r₁ × ⋯ × ℤ/r_m
    Abelian(AbelianArgs),
    /// Doubled extended ADE diagram
    Ade(AdeArgs),
    /// McKay quiver from a character table
    Chartable(ChartableArgs),
    /// Relation families on McKay quivers
    Relations(RelationsArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Input quiver document; stdin when absent or "-"
    #[arg(long, short)]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct AbelianArgs {
    #[arg(long, value_delimiter = ',', required = true)]
    pub orders: Vec<usize>,
    /// Emit the bare quiver even when the (s, r) relations apply
    #[arg(long)]
    pub no_relations: bool,
    /// Add a loop at every vertex
    #[arg(long)]
    pub loops: bool,
}

#[derive(Debug, Args)]
pub struct AdeArgs {
    #[arg(long)]
    pub family: String,
    /// Rank; ignored for E6/E7/E8
    #[arg(long, default_value_t = 0)]
    pub l: usize,
    #[arg(long)]
    pub loops: bool,
    /// Relation family to attach (needs --loops)
    #[arg(long, value_parser = ["xi"])]
    pub relations: Option<String>,
    /// Comma-separated vertex labels whose loop squares to zero
    #[arg(long = "J", default_value = "")]
    pub j: String,
    #[arg(long)]
    pub dual: bool,
}

#[derive(Debug, Args)]
pub struct ChartableArgs {
    #[arg(long)]
    pub file: PathBuf,
    /// Rows whose characters sum to χ_V
    #[arg(long, value_delimiter = ',', required = true)]
    pub faithful: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyKind {
    Sr,
    Xi,
}

#[derive(Debug, Args)]
pub struct RelationsArgs {
    #[arg(long, value_enum)]
    pub family: FamilyKind,
    #[arg(long, default_value_t = 4)]
    pub s: usize,
    #[arg(long, default_value_t = 4)]
    pub r: usize,
    /// ADE family for --family xi
    #[arg(long, default_value = "A")]
    pub xi: String,
    #[arg(long, default_value_t = 5)]
    pub l: usize,
    #[arg(long = "J", default_value = "")]
    pub j: String,
    /// Value of every parameter (a nonzero integer or fraction)
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub value: String,
    #[arg(long)]
    pub dual: bool,
    /// Parameter-free relations on the 3-level slice
    #[arg(long)]
    pub slice: bool,
}

#[derive(Debug, Args)]
pub struct TrivextArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Sign of the twist on arrows; (-1)^n when absent
    #[arg(long, allow_hyphen_values = true)]
    pub twist: Option<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoverMode {
    Separated,
    Znq,
}

#[derive(Debug, Args)]
pub struct CoverArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value = "separated")]
    pub mode: CoverMode,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub from: i64,
    #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
    pub to: i64,
}

#[derive(Debug, Args)]
pub struct SliceArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    pub at: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MutationKind {
    Source,
    Sink,
}

#[derive(Debug, Args)]
pub struct MutateArgs {
    /// The covered quiver Q̃ (with declared n)
    #[arg(long)]
    pub base: PathBuf,
    /// The slice to mutate; stdin when absent
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub vertex: String,
    #[arg(long, value_enum, default_value = "source")]
    pub kind: MutationKind,
}

#[derive(Debug, Args)]
pub struct HilbertArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = 4)]
    pub tmax: usize,
}

#[derive(Debug, Args)]
pub struct KoszulArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Translation degree; the document's "n" when absent
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 4)]
    pub tmax: usize,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub hmax: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub hmax: Option<usize>,
    /// Depth of the resolution profile
    #[arg(long, default_value_t = 4)]
    pub tmax: usize,
}

/// Resolved settings of one invocation, echoed in report headers.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineConfig {
    pub command: String,
    pub input: Option<String>,
    pub output: Option<String>,
    pub format: Format,
    pub degree_cap: Option<usize>,
    pub h_max: Option<usize>,
    pub t_max: Option<usize>,
    pub n: Option<usize>,
    pub window: Option<(i64, i64)>,
    pub seed: u64,
}

pub enum Output {
    Quiver(BoundQuiver),
    Document { json: Value, table: String },
}

impl Output {
    fn render(&self, format: Format) -> Result<String> {
        match (self, format) {
            (Output::Quiver(bq), Format::Json) => Ok(to_json(bq)),
            (Output::Quiver(bq), Format::Dot) => Ok(to_dot(bq.quiver())),
            (Output::Quiver(bq), Format::Table) => Ok(quiver_table(bq)),
            (Output::Document { json, .. }, Format::Json) => {
                Ok(serde_json::to_string_pretty(json).expect("serializable") + "\n")
            }
            (Output::Document { table, .. }, Format::Table) => Ok(table.clone()),
            (Output::Document { .. }, Format::Dot) => {
                Err(Error::Validation("dot output is only available for quivers".into()))
            }
        }
    }
}

fn quiver_table(bq: &BoundQuiver) -> String {
    let q = bq.quiver();
    let mut out = String::new();
    let _ = writeln!(out, "vertices  {}", q.vertex_count());
    let _ = writeln!(out, "arrows    {}", q.arrow_count());
    let _ = writeln!(out, "relations {}", bq.relations().len());
    if let Some(n) = bq.n() {
        let _ = writeln!(out, "n         {n}");
    }
    for a in q.arrows() {
        let _ = writeln!(out, "  {:<16} {} -> {}", a.id, q.vertex_id(a.source), q.vertex_id(a.target));
    }
    for r in bq.relations() {
        let _ = writeln!(out, "  {}", r.display(q));
    }
    out
}

fn read_input(input: &InputArgs) -> Result<BoundQuiver> {
    let text = match &input.input {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| Error::Io(e.to_string()))?;
            s
        }
    };
    parse_bound_quiver(&text)
}

fn parse_labels(s: &str) -> Result<BTreeSet<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| Error::Validation(format!("vertex label {x:?} is not an integer"))))
        .collect()
}

fn ade_rank(family: AdeFamily, l: usize) -> usize {
    match family {
        AdeFamily::E6 => 6,
        AdeFamily::E7 => 7,
        AdeFamily::E8 => 8,
        _ => l,
    }
}

pub fn cmd_gen(cmd: &GenCommand) -> Result<Output> {
    let bq = match cmd {
        GenCommand::Abelian(a) => {
            let spec = AbelianSpec::new(a.orders.clone())?;
            let pair = a.orders.len() == 2 && a.orders.iter().all(|&r| r >= 4);
            if pair && !a.no_relations && !a.loops {
                relations_sr(a.orders[0], a.orders[1], &SrParams::ones(a.orders[0], a.orders[1]))?
            } else {
                let q = mckay_abelian(&spec);
                BoundQuiver::free(if a.loops { mckay_add_loops(&q) } else { q })
            }
        }
        GenCommand::Ade(a) => {
            let family: AdeFamily = a.family.parse()?;
            let l = ade_rank(family, a.l);
            match (&a.relations, a.loops) {
                (Some(_), false) => return Err(Error::Validation("--relations xi needs --loops".into())),
                (Some(_), true) => {
                    let spec = XiSpec { family, l, j: parse_labels(&a.j)?, params: XiParams::default() };
                    if a.dual {
                        relations_xi_dual(&spec)?
                    } else {
                        relations_xi(&spec)?
                    }
                }
                (None, true) => BoundQuiver::free(mckay_ade(family, l)?),
                (None, false) => BoundQuiver::free(ade_double(family, l)?),
            }
        }
        GenCommand::Chartable(c) => {
            let text = std::fs::read_to_string(&c.file).map_err(|e| Error::Io(format!("{}: {e}", c.file.display())))?;
            let table: CharacterTable = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            if let Some(&bad) = c.faithful.iter().find(|&&k| k >= table.characters.len()) {
                return Err(Error::Validation(format!("row {bad} is out of range")));
            }
            let chi: Vec<Complex64> = table.sum_of_rows(&c.faithful);
            BoundQuiver::free(mckay_from_characters(&table, &chi)?)
        }
        GenCommand::Relations(r) => {
            let value = parse_coefficient(&r.value)?;
            let which = if r.dual { Which::Dual } else { Which::Primal };
            match r.family {
                FamilyKind::Sr if r.slice => slice_relations_sr(r.s, r.r, which)?,
                FamilyKind::Sr => {
                    let params = SrParams::constant(r.s, r.r, value);
                    if r.dual {
                        relations_sr_dual(r.s, r.r, &params)?
                    } else {
                        relations_sr(r.s, r.r, &params)?
                    }
                }
                FamilyKind::Xi => {
                    let family: AdeFamily = r.xi.parse()?;
                    let l = ade_rank(family, r.l);
                    let j = parse_labels(&r.j)?;
                    if r.slice {
                        slice_relations_xi(family, l, &j, which)?
                    } else {
                        let labels = crate::mckay::ade_diagram(family, l)?.0;
                        let mut params = XiParams::default();
                        for &v in &labels {
                            params.c.insert(v, value.clone());
                            params.b.insert(v, vec![value.clone(); 3]);
                        }
                        let (_, edges) = crate::mckay::ade_diagram(family, l)?;
                        for e in edges {
                            params.a.insert(e, value.clone());
                        }
                        let spec = XiSpec { family, l, j, params };
                        if r.dual {
                            relations_xi_dual(&spec)?
                        } else {
                            relations_xi(&spec)?
                        }
                    }
                }
            }
        }
    };
    Ok(Output::Quiver(bq))
}

pub fn cmd_dual(args: &InputArgs) -> Result<Output> {
    Ok(Output::Quiver(quadratic_dual(&read_input(args)?)?))
}

pub fn cmd_trivext(args: &TrivextArgs, cap: Option<usize>) -> Result<Output> {
    let bq = read_input(&args.input)?;
    let cap = cap.unwrap_or_else(|| default_degree_cap(&bq));
    Ok(Output::Quiver(trivial_extension_with_cap(&bq, args.twist, cap)?.bound))
}

fn window_output(w: &SliceWindow) -> Output {
    Output::Quiver(w.bound.clone())
}

pub fn cmd_cover(args: &CoverArgs, cap: Option<usize>) -> Result<Output> {
    if args.to < args.from {
        return Err(Error::Validation(format!("window [{}, {}] is empty", args.from, args.to)));
    }
    let bq = read_input(&args.input)?;
    match args.mode {
        CoverMode::Separated => Ok(window_output(&z_separated(&bq, args.from, args.to))),
        CoverMode::Znq => {
            let cap = cap.unwrap_or_else(|| default_degree_cap(&bq));
            let te = trivial_extension_with_cap(&bq, None, cap)?;
            Ok(window_output(&znq_cover(&te, args.from, args.to)?))
        }
    }
}

fn declared_n(bq: &BoundQuiver, n: Option<usize>) -> Result<usize> {
    n.or(bq.n()).ok_or_else(|| Error::Validation("pass --n or declare \"n\" in the document".into()))
}

pub fn cmd_slice(args: &SliceArgs) -> Result<Output> {
    let bq = read_input(&args.input)?;
    let n = declared_n(&bq, None)? as i64;
    let w = z_separated(&bq, args.at, args.at + n);
    Ok(Output::Quiver(complete_tau_slice(&w, args.at)?))
}

pub fn cmd_mutate(args: &MutateArgs) -> Result<Output> {
    let base = read_input(&InputArgs { input: Some(args.base.clone()) })?;
    let n = declared_n(&base, None)? as i64;
    let slice = read_input(&args.input)?;
    let levels: Vec<i64> = slice
        .quiver()
        .vertices()
        .iter()
        .map(|id| {
            id.rsplit_once('@')
                .and_then(|(_, t)| t.parse().ok())
                .ok_or_else(|| Error::Validation(format!("vertex {id:?} is not of the form i@t")))
        })
        .collect::<Result<_>>()?;
    let lo = levels.iter().min().copied().unwrap_or(0) - (n + 1);
    let hi = levels.iter().max().copied().unwrap_or(0) + (n + 1);
    let w = z_separated(&base, lo, hi);
    let kind = match args.kind {
        MutationKind::Source => Mutation::Source,
        MutationKind::Sink => Mutation::Sink,
    };
    Ok(Output::Quiver(tau_mutation(&w, &slice, &args.vertex, kind)?))
}

fn dims_json(bq: &BoundQuiver, gd: &GradedDims) -> Value {
    let q = bq.quiver();
    let hilbert: serde_json::Map<String, Value> =
        (0..q.vertex_count()).map(|i| (q.vertex_id(i).to_string(), json!(gd.hilbert(i)))).collect();
    json!({
        "blocks": gd.blocks,
        "hilbert": hilbert,
        "t_max": gd.t_max(),
        "total": gd.total(),
        "vertices": q.vertices(),
    })
}

fn dims_table(bq: &BoundQuiver, gd: &GradedDims) -> String {
    let q = bq.quiver();
    let width = q.vertices().iter().map(String::len).max().unwrap_or(1).max(6);
    let mut out = String::new();
    let _ = write!(out, "{:<width$}", "vertex");
    for t in 0..=gd.t_max() {
        let _ = write!(out, " {:>4}", format!("t{t}"));
    }
    out.push('\n');
    for i in 0..q.vertex_count() {
        let _ = write!(out, "{:<width$}", q.vertex_id(i));
        for x in gd.hilbert(i) {
            let _ = write!(out, " {x:>4}");
        }
        out.push('\n');
    }
    out
}

pub fn cmd_hilbert(args: &HilbertArgs) -> Result<Output> {
    let bq = read_input(&args.input)?;
    let (gd, _) = graded_dims(&bq, args.tmax);
    Ok(Output::Document { json: dims_json(&bq, &gd), table: dims_table(&bq, &gd) })
}

pub fn cmd_koszul(args: &KoszulArgs) -> Result<Output> {
    let bq = read_input(&args.input)?;
    let n = declared_n(&bq, args.n)?;
    let (gd, alg) = graded_dims(&bq, n + 2);
    let stability = stable_translation_check(&gd, n);
    if !stability.is_stable() {
        return Err(Error::NotLoewyBounded(format!("not a stable {n}-translation algebra: {stability:?}")));
    }
    let prof = koszul_profile(&alg, n, args.tmax);
    let mut table = String::new();
    for (t, degs) in prof.generator_degrees.iter().enumerate() {
        let _ = writeln!(table, "P^{t}: {} generators, degrees {:?}", degs.len(), degs.iter().collect::<BTreeSet<_>>());
    }
    let _ = writeln!(table, "status: {:?}", prof.status);
    Ok(Output::Document { json: serde_json::to_value(&prof).expect("serializable"), table })
}

fn classification(bq: &BoundQuiver, n: usize, h_max: Option<usize>) -> Result<(ClassificationReport, GradedDims)> {
    let (gd, _) = graded_dims(bq, n + 2);
    let l = loewy_matrix(&gd, n)?;
    let h = h_max.unwrap_or_else(|| default_h_max(&l));
    Ok((classify(&l, h)?, gd))
}

fn classification_json(report: &ClassificationReport) -> Value {
    let mut v = serde_json::to_value(report).expect("serializable");
    v["gk_estimate"] = serde_json::to_value(gk_estimate(report)).expect("serializable");
    v
}

fn classification_table(report: &ClassificationReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "verdict:        {}", report.verdict);
    let _ = writeln!(out, "gk estimate:    {}", gk_estimate(report));
    let _ = writeln!(out, "n, vertices:    {}, {}", report.n, report.vertices);
    let _ = writeln!(out, "char poly:      {}", report.char_poly);
    let _ = writeln!(out, "jordan block 1: {}", report.jordan_block_one);
    if let Some(w) = &report.negativity {
        let _ = writeln!(out, "negative L^h V0 at h = {}", w.h);
    }
    for note in &report.notes {
        let _ = writeln!(out, "note: {note}");
    }
    out
}

pub fn cmd_classify(args: &ClassifyArgs) -> Result<Output> {
    let bq = read_input(&args.input)?;
    let n = declared_n(&bq, args.n)?;
    let (report, _) = classification(&bq, n, args.hmax)?;
    Ok(Output::Document { json: classification_json(&report), table: classification_table(&report) })
}

/// The whole pipeline: grading, Hilbert data, stability, resolution
/// profile, classification.
pub fn report_document(bq: &BoundQuiver, n: usize, h_max: Option<usize>, t_max: usize, config: &PipelineConfig) -> Result<Value> {
    let cap = config.degree_cap.unwrap_or_else(|| default_degree_cap(bq));
    let proper = match is_n_properly_graded(bq, cap) {
        Ok(p) => serde_json::to_value(p).expect("serializable"),
        Err(e) => json!({"kind": "error", "code": e.code(), "message": e.to_string()}),
    };
    let (gd, alg) = graded_dims(bq, n + 2);
    let stability = stable_translation_check(&gd, n);
    let koszul = if stability.is_stable() {
        serde_json::to_value(koszul_profile(&alg, n, t_max)).expect("serializable")
    } else {
        Value::Null
    };
    let l = loewy_matrix(&gd, n)?;
    let h = h_max.unwrap_or_else(|| default_h_max(&l));
    let report = classify(&l, h)?;
    let q = bq.quiver();
    Ok(json!({
        "schema": REPORT_SCHEMA,
        "config": config,
        "input": {
            "arrows": q.arrow_count(),
            "relations": bq.relations().len(),
            "vertices": q.vertex_count(),
        },
        "n": n,
        "proper_grading": proper,
        "graded_dims": dims_json(bq, &gd),
        "stability": stability,
        "koszul": koszul,
        "classification": classification_json(&report),
    }))
}

pub fn cmd_report(args: &ReportArgs, config: &PipelineConfig) -> Result<Output> {
    let bq = read_input(&args.input)?;
    let n = declared_n(&bq, args.n)?;
    let doc = report_document(&bq, n, args.hmax, args.tmax, config)?;
    let mut table = String::new();
    let _ = writeln!(table, "schema:    {REPORT_SCHEMA}");
    let _ = writeln!(table, "stability: {}", doc["stability"]["kind"]);
    let _ = writeln!(table, "koszul:    {}", doc["koszul"]["status"]);
    let _ = writeln!(table, "verdict:   {}", doc["classification"]["verdict"]);
    Ok(Output::Document { json: doc, table })
}

impl Cli {
    pub fn config(&self) -> PipelineConfig {
        let path = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string());
        let mut c = PipelineConfig {
            command: String::new(),
            input: None,
            output: path(&self.output),
            format: self.format,
            degree_cap: self.degree_cap,
            h_max: None,
            t_max: None,
            n: None,
            window: None,
            seed: self.seed,
        };
        let (name, input) = match &self.command {
            Command::Gen(g) => (
                match g {
                    GenCommand::Abelian(_) => "gen abelian",
                    GenCommand::Ade(_) => "gen ade",
                    GenCommand::Chartable(_) => "gen chartable",
                    GenCommand::Relations(_) => "gen relations",
                },
                None,
            ),
            Command::Dual(a) => ("dual", Some(a)),
            Command::Trivext(a) => ("trivext", Some(&a.input)),
            Command::Cover(a) => {
                c.window = Some((a.from, a.to));
                ("cover", Some(&a.input))
            }
            Command::Slice(a) => ("slice", Some(&a.input)),
            Command::Mutate(a) => ("mutate", Some(&a.input)),
            Command::Hilbert(a) => {
                c.t_max = Some(a.tmax);
                ("hilbert", Some(&a.input))
            }
            Command::Koszul(a) => {
                c.t_max = Some(a.tmax);
                c.n = a.n;
                ("koszul", Some(&a.input))
            }
            Command::Classify(a) => {
                c.h_max = a.hmax;
                c.n = a.n;
                ("classify", Some(&a.input))
            }
            Command::Report(a) => {
                c.h_max = a.hmax;
                c.t_max = Some(a.tmax);
                c.n = a.n;
                ("report", Some(&a.input))
            }
        };
        c.command = name.to_string();
        c.input = input.map(|i| path(&i.input).unwrap_or_else(|| "-".into()));
        c
    }

    pub fn execute(&self) -> Result<String> {
        let config = self.config();
        let out = match &self.command {
            Command::Gen(g) => cmd_gen(g)?,
            Command::Dual(a) => cmd_dual(a)?,
            Command::Trivext(a) => cmd_trivext(a, self.degree_cap)?,
            Command::Cover(a) => cmd_cover(a, self.degree_cap)?,
            Command::Slice(a) => cmd_slice(a)?,
            Command::Mutate(a) => cmd_mutate(a)?,
            Command::Hilbert(a) => cmd_hilbert(a)?,
            Command::Koszul(a) => cmd_koszul(a)?,
            Command::Classify(a) => cmd_classify(a)?,
            Command::Report(a) => cmd_report(a, &config)?,
        };
        out.render(self.format)
    }
}

/// Exit status for an error: 2 for bad input, 3 for mathematical failure.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_validation() {
        2
    } else {
        3
    }
}

/// Parses arguments, runs, writes output; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match cli.execute() {
        Ok(text) => {
            let written = match &cli.output {
                Some(p) => std::fs::write(p, text).map_err(|e| e.to_string()),
                None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("error [io_error]: {e}");
                    2
                }
            }
        }
        Err(e) => {
            eprintln!("error [{}]: {e}", e.code());
            exit_code(&e)
        }
    }
}

#[doc(hidden)]
pub fn abelian_label(g: &[usize]) -> String {
    abelian_vertex_id(g)
}

#[doc(hidden)]
pub fn proper_grading_label(p: &ProperGrading) -> String {
    match p {
        ProperGrading::Yes { n } => format!("Yes({n})"),
        ProperGrading::No { shorter, longer } => format!("No({shorter} vs {longer})"),
    }
}
