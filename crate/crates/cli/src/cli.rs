//! The `qrep` command line.
//!
//! Exit codes: 0 success, 1 usage, 2 parse diagnostics, 3 numeric
//! precondition failure.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use qrep_core::additive::{closed_orbit_certificate, sink_source_witness, unimodular_rescale, Certificate, MonotoneCheck};
use qrep_core::kempf_ness::{kn_flow, kn_moment};
use qrep_core::ops::{clip, collapse, pinch, reduce_to_rose, reverse_arrows};
use qrep_core::representation::{evaluate_word, gauge_act};
use qrep_core::retract::retract_representation;
use qrep_core::topology::{
    betti_number, components, dimension_formula, ends, euler_characteristic, is_strongly_connected, is_super_cyclic,
};
use qrep_core::toric::{invariant_monomial_basis, weight_matrix};
use qrep_core::{CMatrix, Family, GroupSpec, Quiver, RelationSet, Representation};
use serde_json::{json, Value};

use crate::dsl::{self, QuiverDocument, Weights};
use crate::json;

pub const MAX_N: usize = 16;

#[derive(Parser, Debug)]
#[command(name = "qrep", version, about = "Quiver representations with values in complex matrix groups")]
pub struct Cli {
    /// Numeric tolerance.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tol: f64,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// JSON output for commands that default to text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GroupArgs {
    /// GL, SL, U, SU or TORUS.
    #[arg(long, default_value = "SL")]
    pub group: String,
    #[arg(long, default_value_t = 2)]
    pub n: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Topological invariants, predicates and the moduli dimension.
    Info {
        file: PathBuf,
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Collapse a spanning tree down to a rose.
    Reduce { file: PathBuf },
    /// Collapse one arrow.
    Collapse {
        file: PathBuf,
        #[arg(long)]
        arrow: String,
    },
    /// Identify two vertices.
    Pinch { file: PathBuf, v1: String, v2: String },
    /// Delete one arrow.
    Clip {
        file: PathBuf,
        #[arg(long)]
        arrow: String,
    },
    /// Reverse the listed arrows.
    Reverse {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', required = true)]
        arrows: Vec<String>,
    },
    /// Random representation.
    Sample {
        file: PathBuf,
        #[command(flatten)]
        group: GroupArgs,
    },
    /// Apply a gauge element to a representation.
    Act {
        file: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        gauge: PathBuf,
    },
    /// Polar retraction onto the compact form.
    Retract {
        file: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, default_value_t = 1.0)]
        t: f64,
    },
    /// Moment matrices and their aggregate norm.
    KnResidual {
        file: PathBuf,
        #[arg(long)]
        rep: PathBuf,
    },
    /// Norm-decreasing flow towards the Kempf-Ness set.
    KnFlow {
        file: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        #[arg(long, default_value_t = 0.1)]
        step: f64,
        #[arg(long, default_value_t = 10_000)]
        max_iter: usize,
    },
    /// One-parameter degeneration at a source or sink.
    Witness {
        file: PathBuf,
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        vertex: String,
    },
    /// Closed-orbit certificate.
    Certificate { file: PathBuf },
    /// Rescale a gauge between unimodular representations to unit determinant.
    Rescale {
        file: PathBuf,
        #[arg(long)]
        gauge: PathBuf,
        #[arg(long)]
        x: PathBuf,
        #[arg(long = "x-prime")]
        x_prime: PathBuf,
    },
    /// Invariant Laurent monomials of the weighted scalar action.
    Toric { file: PathBuf },
    /// Evaluate relation words on a representation.
    CheckRelations {
        file: PathBuf,
        #[arg(long)]
        rep: PathBuf,
    },
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Parse(String),
    Numeric(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Numeric(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Parse(m) | Failure::Numeric(m) => m,
        }
    }
}

impl From<qrep_core::Error> for Failure {
    fn from(e: qrep_core::Error) -> Self {
        Failure::Numeric(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load_document(path: &Path) -> Result<QuiverDocument, Failure> {
    let text = read(path)?;
    dsl::parse(&text).map_err(|diags| {
        Failure::Parse(
            diags
                .iter()
                .map(|d| format!("{}:{d}", path.display()))
                .collect::<Vec<_>>()
                .join("\n"),
        )
    })
}

fn load_json(path: &Path) -> Result<Value, Failure> {
    let text = read(path)?;
    serde_json::from_str(&text).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))
}

fn check_size(n: usize) -> Result<(), Failure> {
    if n > MAX_N {
        return Err(Failure::Usage(format!(
            "matrix size {n} exceeds the supported maximum of {MAX_N}"
        )));
    }
    Ok(())
}

fn decoded<T>(path: &Path, r: Result<Result<T, qrep_core::Error>, json::DecodeError>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?
        .map_err(|e| Failure::Numeric(format!("{}: {e}", path.display())))
}

fn load_rep(q: &Quiver, path: &Path) -> Result<Representation, Failure> {
    let v = load_json(path)?;
    if let Some(n) = v.pointer("/group/n").and_then(Value::as_u64) {
        check_size(n as usize)?;
    }
    decoded(path, json::decode_representation(q, &v))
}

fn group_spec(g: &GroupArgs) -> Result<GroupSpec, Failure> {
    check_size(g.n)?;
    let family: Family = g.group.parse().map_err(|e: qrep_core::Error| Failure::Usage(e.to_string()))?;
    GroupSpec::new(family, g.n).map_err(|e| Failure::Usage(e.to_string()))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn quiver_output(doc: &QuiverDocument, as_json: bool) -> String {
    if as_json {
        pretty(&json!({
            "version": json::VERSION,
            "kind": "quiver",
            "quiver": json::quiver(&doc.quiver),
            "relations": json::relations(&doc.relations),
            "text": dsl::print(doc),
        }))
    } else {
        dsl::print(doc)
    }
}

fn info(doc: &QuiverDocument, g: &GroupArgs, as_json: bool) -> Outcome {
    let group = group_spec(g)?;
    let q = &doc.quiver;
    let end_list = ends(q);
    let dimension = dimension_formula(q, &group);
    if as_json {
        return Ok(pretty(&json!({
            "version": json::VERSION,
            "kind": "info",
            "vertices": q.num_vertices(),
            "arrows": q.num_arrows(),
            "components": components(q).len(),
            "b1": betti_number(q),
            "euler_characteristic": euler_characteristic(q),
            "ends": end_list.iter().map(|(v, k)| json!({"vertex": v, "kind": k.name()})).collect::<Vec<_>>(),
            "super_cyclic": is_super_cyclic(q),
            "strongly_connected": is_strongly_connected(q),
            "group": json::group(&group),
            "dimension": dimension.as_ref().ok(),
            "relations": doc.relations.relations.len(),
        })));
    }
    let ends_text = if end_list.is_empty() {
        "none".to_string()
    } else {
        end_list
            .iter()
            .map(|(v, k)| format!("{v} ({})", k.name()))
            .collect::<Vec<_>>()
            .join(", ")
    };
    let dim_text = match &dimension {
        Ok(d) => d.to_string(),
        Err(e) => format!("n/a ({e})"),
    };
    Ok(format!(
        "vertices: {}\narrows: {}\ncomponents: {}\nb1: {}\neuler_characteristic: {}\nends: {ends_text}\nsuper_cyclic: {}\nstrongly_connected: {}\nrelations: {}\ndimension {group}: {dim_text}\n",
        q.num_vertices(),
        q.num_arrows(),
        components(q).len(),
        betti_number(q),
        euler_characteristic(q),
        is_super_cyclic(q),
        is_strongly_connected(q),
        doc.relations.relations.len(),
    ))
}

fn keep_weights(w: &Option<Weights>, q: &Quiver) -> Option<Weights> {
    w.as_ref().map(|w| Weights {
        mu: q.arrow_ids().map(|a| (a.to_string(), w.mu[a])).collect(),
        nu: q.arrow_ids().map(|a| (a.to_string(), w.nu[a])).collect(),
    })
}

fn rewritten(doc: &QuiverDocument, q: Quiver, relations: RelationSet, weights: Option<Weights>) -> QuiverDocument {
    let mut out = QuiverDocument::new(doc.name.clone(), q, relations);
    out.weights = weights;
    out
}

fn reduce(doc: &QuiverDocument, as_json: bool) -> Outcome {
    let (rose, rel, trace) = reduce_to_rose(&doc.quiver, &doc.relations)?;
    let loops = rose.num_arrows();
    let note = if loops == 0 { Some("moduli is a point") } else { None };
    if as_json {
        let mut v = json::reduction_trace(&trace);
        v["loops"] = json!(loops);
        v["note"] = json!(note);
        return Ok(pretty(&v));
    }
    let weights = keep_weights(&doc.weights, &rose);
    let mut out = dsl::print(&rewritten(doc, rose, rel, weights));
    out.push_str(&format!("# loops: {loops}\n"));
    if let Some(n) = note {
        out.push_str(&format!("# {n}\n"));
    }
    Ok(out)
}

fn drop_relations_with(r: &RelationSet, arrows: &[String]) -> (RelationSet, usize) {
    let kept: Vec<_> = r
        .relations
        .iter()
        .filter(|w| !w.letters.iter().any(|l| arrows.contains(&l.arrow)))
        .cloned()
        .collect();
    let dropped = r.relations.len() - kept.len();
    (RelationSet::new(kept), dropped)
}

fn certificate_text(c: &Certificate) -> String {
    match c {
        Certificate::AllInvertibleOrbitsClosed { sample } => {
            let mut s = String::from("all invertible orbits closed (strongly connected)\n");
            if let Some((alpha, check)) = sample {
                let a: Vec<String> = alpha.iter().map(|(v, x)| format!("{v}={x}")).collect();
                s.push_str(&format!("sample weights: {}\n", a.join(" ")));
                match check {
                    MonotoneCheck::Constant => s.push_str("check: constant\n"),
                    MonotoneCheck::NotMonotone { arrow, cycle } => {
                        s.push_str(&format!("check: arrow {arrow} decreases; cycle {cycle}\n"))
                    }
                    MonotoneCheck::Contradiction { cycle } => s.push_str(&format!("check: contradiction on cycle {cycle}\n")),
                }
            }
            s
        }
        Certificate::EndsObstruct(e) => format!("ends obstruct closed orbits: {}\n", e.join(", ")),
        Certificate::Inconclusive => "inconclusive: no ends, but not strongly connected\n".to_string(),
    }
}

fn execute(cli: &Cli, note: &mut Vec<String>) -> Outcome {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(Failure::Usage("--tol must be a positive number".into()));
    }
    match &cli.command {
        Command::Info { file, group } => info(&load_document(file)?, group, cli.json),
        Command::Reduce { file } => reduce(&load_document(file)?, cli.json),
        Command::Collapse { file, arrow } => {
            let doc = load_document(file)?;
            let (q, r, _) = collapse(&doc.quiver, &doc.relations, arrow)?;
            let w = keep_weights(&doc.weights, &q);
            Ok(quiver_output(&rewritten(&doc, q, r, w), cli.json))
        }
        Command::Pinch { file, v1, v2 } => {
            let doc = load_document(file)?;
            let (q, _) = pinch(&doc.quiver, v1, v2)?;
            let w = doc.weights.clone();
            Ok(quiver_output(&rewritten(&doc, q, doc.relations.clone(), w), cli.json))
        }
        Command::Clip { file, arrow } => {
            let doc = load_document(file)?;
            let q = clip(&doc.quiver, arrow)?;
            let (r, dropped) = drop_relations_with(&doc.relations, std::slice::from_ref(arrow));
            if dropped > 0 {
                note.push(format!("dropped {dropped} relation(s) through `{arrow}`"));
            }
            let w = keep_weights(&doc.weights, &q);
            Ok(quiver_output(&rewritten(&doc, q, r, w), cli.json))
        }
        Command::Reverse { file, arrows } => {
            let doc = load_document(file)?;
            let q = reverse_arrows(&doc.quiver, arrows)?;
            let (r, dropped) = drop_relations_with(&doc.relations, arrows);
            if dropped > 0 {
                note.push(format!("dropped {dropped} relation(s) through reversed arrows"));
            }
            // a reversed arrow carries f^-1, so its weights swap
            let w = doc.weights.as_ref().map(|w| {
                let mut w = w.clone();
                for a in arrows {
                    let (m, n) = (w.mu[a], w.nu[a]);
                    w.mu.insert(a.clone(), n);
                    w.nu.insert(a.clone(), m);
                }
                w
            });
            Ok(quiver_output(&rewritten(&doc, q, r, w), cli.json))
        }
        Command::Sample { file, group } => {
            let doc = load_document(file)?;
            let g = group_spec(group)?;
            Ok(pretty(&json::representation(&Representation::random(doc.quiver, g, cli.seed))))
        }
        Command::Act { file, rep, gauge } => {
            let doc = load_document(file)?;
            let f = load_rep(&doc.quiver, rep)?;
            let gv = load_json(gauge)?;
            if let Some(n) = gv.pointer("/group/n").and_then(Value::as_u64) {
                check_size(n as usize)?;
            }
            let g = decoded(gauge, json::decode_gauge(&doc.quiver, &gv))?;
            Ok(pretty(&json::representation(&gauge_act(&g, &f)?)))
        }
        Command::Retract { file, rep, t } => {
            let doc = load_document(file)?;
            let f = load_rep(&doc.quiver, rep)?;
            let r = retract_representation(&f, *t)?;
            if let Some(n) = r.notice {
                note.push(n.to_string());
            }
            Ok(pretty(&json::representation(&r.representation)))
        }
        Command::KnResidual { file, rep } => {
            let doc = load_document(file)?;
            let f = load_rep(&doc.quiver, rep)?;
            Ok(pretty(&json::kn_residual(&kn_moment(&f))))
        }
        Command::KnFlow { file, rep, step, max_iter } => {
            let doc = load_document(file)?;
            let f = load_rep(&doc.quiver, rep)?;
            let report = kn_flow(&f, *step, *max_iter, cli.tol)?;
            if !report.converged {
                note.push(format!("not converged after {} iterations", report.iterations));
            }
            Ok(pretty(&json::flow_report(&report)))
        }
        Command::Witness { file, rep, vertex } => {
            let doc = load_document(file)?;
            let v = load_json(rep)?;
            let x = decoded(rep, json::decode_additive(&doc.quiver, &v))?;
            check_size(x.n())?;
            Ok(pretty(&json::witness(&sink_source_witness(&x, vertex)?)))
        }
        Command::Certificate { file } => {
            let doc = load_document(file)?;
            let c = closed_orbit_certificate(&doc.quiver)?;
            Ok(if cli.json { pretty(&json::certificate(&c)) } else { certificate_text(&c) })
        }
        Command::Rescale { file, gauge, x, x_prime } => {
            let doc = load_document(file)?;
            let gv = load_json(gauge)?;
            if let Some(n) = gv.pointer("/group/n").and_then(Value::as_u64) {
                check_size(n as usize)?;
            }
            let g = decoded(gauge, json::decode_gauge(&doc.quiver, &gv))?;
            let xa = decoded(x, json::decode_additive(&doc.quiver, &load_json(x)?))?;
            let xb = decoded(x_prime, json::decode_additive(&doc.quiver, &load_json(x_prime)?))?;
            Ok(pretty(&json::gauge(&unimodular_rescale(&g, &xa, &xb, cli.tol)?)))
        }
        Command::Toric { file } => {
            let doc = load_document(file)?;
            let w = doc.weights_or_unit();
            let action = weight_matrix(&doc.quiver, &w.mu, &w.nu)?;
            let basis = invariant_monomial_basis(&action);
            if cli.json {
                return Ok(pretty(&json::monomial_basis(&basis)));
            }
            let mut s = format!(
                "arrows: {}\nrank: {}\ncell_dimension: {}\nsaturated: {}\nbasis:\n",
                basis.arrows.join(" "),
                basis.rank,
                basis.cell_dimension,
                basis.is_saturated()
            );
            for v in &basis.vectors {
                let items: Vec<String> = v.iter().map(ToString::to_string).collect();
                s.push_str(&format!("  ({})\n", items.join(", ")));
            }
            Ok(s)
        }
        Command::CheckRelations { file, rep } => {
            let doc = load_document(file)?;
            let f = load_rep(&doc.quiver, rep)?;
            let n = f.group().n;
            let mut rows = Vec::new();
            for w in &doc.relations.relations {
                let m = evaluate_word(&f, w)?;
                rows.push((w.clone(), m.dist(&CMatrix::identity(n))));
            }
            let satisfied = rows.iter().all(|r| r.1 <= cli.tol);
            if cli.json {
                let items: Vec<Value> = rows
                    .iter()
                    .map(|(w, d)| json!({"relation": json::word(w), "residual": d}))
                    .collect();
                return Ok(pretty(&json!({
                    "version": json::VERSION,
                    "kind": "relation_check",
                    "satisfied": satisfied,
                    "tolerance": cli.tol,
                    "relations": items,
                })));
            }
            let mut s = String::new();
            for (w, d) in &rows {
                s.push_str(&format!("{w}: {d:e}\n"));
            }
            s.push_str(&format!("satisfied: {satisfied}\n"));
            Ok(s)
        }
    }
}

/// Runs the CLI on `args` (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
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
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    let mut notes = Vec::new();
    let result = execute(&cli, &mut notes);
    for n in &notes {
        let _ = writeln!(err, "note: {n}");
    }
    match result {
        Ok(s) => {
            let _ = out.write_all(s.as_bytes());
            0
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message());
            f.code()
        }
    }
}
