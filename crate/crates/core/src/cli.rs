//! The `cellkernel` command line, callable in-process for testing.

use std::ffi::OsString;
use std::io::Write;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Pow;
use serde_json::{json, Value};

use crate::combinatorics::Permutation;
use crate::diagram::{multiply_diagrams, Diagram};
use crate::error::{Error, Result};
use crate::guard::SizeGuard;
use crate::linalg::{commutant, Matrix};
use crate::ring::{Field, Ring, RingSpec};
use crate::symgroup::{murphy_basis, GroupAlgElem, MurphyKind};
use crate::tensor::{acting_diagrams, diagram_matrix, orbit_basis, Eps, Instance, ValueType};
use crate::theorems::{
    basis_elements, expected_kernel_rank, kernel, run_checks, CheckReport, GridOptions, CHECK_NAMES,
};
use crate::{with_field, with_ring};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Parser)]
#[command(name = "cellkernel", version, about = "Exact kernels of Weyl group actions on tensor space")]
struct Cli {
    /// Output format; defaults to json, or pretty for `diagram` and `decompose`.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Allow instances with d <= r + 1, where the kernel is zero.
    #[arg(long, global = true)]
    allow_faithful: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct InstanceArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    r: usize,
    /// 0 or half
    #[arg(long, default_value = "0")]
    eps: Eps,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Kernel rank and basis of the group action on tensor space.
    Kernel {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long, default_value = "Z")]
        ring: RingSpec,
    },
    /// Run verification checks over their instance grids.
    #[command(group(ArgGroup::new("which").required(true).args(["all", "check"])))]
    Verify {
        #[arg(long)]
        all: bool,
        /// Check to run; repeatable.
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(CHECK_NAMES))]
        check: Vec<String>,
        #[arg(long, default_value_t = 5)]
        max_d: usize,
        /// Restrict ring-parameterized checks to one ring.
        #[arg(long)]
        ring: Option<RingSpec>,
        /// Worker threads (0 picks one per core).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
    /// Dump a Murphy basis of the group algebra.
    Murphy {
        #[arg(long)]
        d: usize,
        #[arg(long, default_value = "x")]
        basis: MurphyKind,
        #[arg(long, default_value = "Z")]
        ring: RingSpec,
    },
    /// Partition diagram arithmetic.
    Diagram {
        #[command(subcommand)]
        op: DiagramOp,
    },
    /// Value-type orbit table of the simple tensors.
    Decompose {
        #[command(flatten)]
        inst: InstanceArgs,
    },
    /// Commutant of the diagram action on tensor space.
    Commutant {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long, default_value = "Q")]
        ring: RingSpec,
    },
}

#[derive(Debug, Subcommand)]
enum DiagramOp {
    /// Multiply two diagrams, `left` on top.
    Mul {
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
        #[arg(long, allow_hyphen_values = true)]
        delta: i64,
    },
}

/// Parses `args` (including the program name), writes results to `out` and
/// diagnostics to `err`, and returns the process exit code: 0 on success, 1
/// when a check fails, 2 for usage errors and size-guard refusals.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let result = SizeGuard::from_env().and_then(|guard| execute(&cli, &guard));
    match result {
        Ok(Output { text, pass, summary }) => {
            if out.write_all(text.as_bytes()).is_err() {
                return 1;
            }
            if let Some(s) = summary {
                let _ = writeln!(err, "{s}");
            }
            if pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let _ = writeln!(err, "cellkernel: {e}");
            match e {
                Error::InvalidArgument(_) | Error::SizeGuard(_) | Error::Parse(_) | Error::Ring(_) => 2,
                Error::Mismatch(_) | Error::Assertion(_) => 1,
            }
        }
    }
}

struct Output {
    text: String,
    pass: bool,
    summary: Option<String>,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, pass: true, summary: None }
    }
}

fn execute(cli: &Cli, guard: &SizeGuard) -> Result<Output> {
    match &cli.command {
        Command::Kernel { inst, ring } => {
            let inst = instance(inst, *ring)?;
            if inst.d() <= inst.r + 1 && !cli.allow_faithful {
                return Err(Error::InvalidArgument(format!(
                    "d = {} <= r + 1 = {}, so the kernel is zero; pass --allow-faithful to compute it anyway",
                    inst.d(),
                    inst.r + 1
                )));
            }
            let format = cli.format.unwrap_or(Format::Json);
            with_ring!(inst.ring, |ring| kernel_cmd(&ring, &inst, format, guard)).map(Output::ok)
        }
        Command::Verify { all, check, max_d, ring, jobs } => {
            guard.check_degree(*max_d)?;
            let names: Vec<&str> = if *all { CHECK_NAMES.to_vec() } else { check.iter().map(String::as_str).collect() };
            let opts = GridOptions { max_d: *max_d, ring: *ring, guard: *guard };
            let reports = run_checks(&names, &opts, *jobs)?;
            let failed = reports.iter().filter(|r| !r.pass).count();
            Ok(Output {
                text: verify_text(&reports, cli.format.unwrap_or(Format::Json))?,
                pass: failed == 0,
                summary: Some(format!("{} reports, {} passed, {failed} failed", reports.len(), reports.len() - failed)),
            })
        }
        Command::Murphy { d, basis, ring } => {
            guard.check_degree(*d)?;
            let format = cli.format.unwrap_or(Format::Json);
            with_ring!(*ring, |r| murphy_cmd(&r, *d, *basis, format, guard)).map(Output::ok)
        }
        Command::Diagram { op: DiagramOp::Mul { left, right, delta } } => {
            diagram_mul(left, right, *delta, cli.format.unwrap_or(Format::Pretty)).map(Output::ok)
        }
        Command::Decompose { inst } => {
            let inst = instance(inst, RingSpec::Integers)?;
            decompose(&inst, cli.format.unwrap_or(Format::Pretty), guard).map(Output::ok)
        }
        Command::Commutant { inst, ring } => {
            let inst = instance(inst, *ring)?;
            let format = cli.format.unwrap_or(Format::Json);
            with_field!(inst.ring, |f| commutant_cmd(&f, &inst, format, guard)).map(Output::ok)
        }
    }
}

fn instance(args: &InstanceArgs, ring: RingSpec) -> Result<Instance> {
    Instance::new(args.n, args.r, args.eps, ring)
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Assertion(format!("csv output: {e}"));
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(&row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Assertion(format!("csv output: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Assertion(e.to_string()))
}

fn json_line(v: &Value) -> String {
    let mut s = v.to_string();
    s.push('\n');
    s
}

/// `k=v` pairs of a JSON object, strings unquoted.
fn flat_pairs(v: &Value) -> String {
    match v {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}={s}"),
                other => format!("{k}={other}"),
            })
            .collect::<Vec<_>>()
            .join(" "),
        other => other.to_string(),
    }
}

fn term_rows<R: Ring>(index: usize, e: &GroupAlgElem<R>) -> Vec<Vec<String>> {
    e.terms()
        .iter()
        .map(|(w, c): (&Permutation, _)| vec![index.to_string(), w.to_string(), e.ring().format(c)])
        .collect()
}

fn kernel_cmd<R: Ring>(ring: &R, inst: &Instance, format: Format, guard: &SizeGuard) -> Result<String> {
    let d = inst.d();
    let basis = basis_elements(ring, d, &kernel(ring, inst, guard)?)?;
    let expected = expected_kernel_rank(d, inst.r);
    Ok(match format {
        Format::Json => json_line(&json!({
            "instance": inst,
            "rank": basis.len(),
            "expected_rank": expected,
            "basis": basis.iter().map(GroupAlgElem::to_json).collect::<Vec<_>>(),
        })),
        Format::Csv => csv_text(
            &["basis_row", "permutation", "coefficient"],
            basis.iter().enumerate().flat_map(|(i, e)| term_rows(i, e)),
        )?,
        Format::Pretty => {
            let mut s = format!("{inst}\nkernel rank {} (cell ideal rank {expected})\n", basis.len());
            for e in &basis {
                s.push_str(&format!("  {e}\n"));
            }
            s
        }
    })
}

fn verify_text(reports: &[CheckReport], format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => reports.iter().map(|r| r.to_json_line() + "\n").collect(),
        Format::Csv => csv_text(
            &["check", "instance", "pass", "ranks", "witness"],
            reports.iter().map(|r| {
                vec![
                    r.check.clone(),
                    r.instance.to_string(),
                    r.pass.to_string(),
                    serde_json::to_string(&r.ranks).expect("ranks serialize"),
                    r.witness.as_ref().map(Value::to_string).unwrap_or_default(),
                ]
            }),
        )?,
        Format::Pretty => reports
            .iter()
            .map(|r| {
                let ranks: Vec<String> = r.ranks.iter().map(|(k, v)| format!("{k}={v}")).collect();
                let mut line = format!(
                    "{} {} {} [{}]",
                    if r.pass { "PASS" } else { "FAIL" },
                    r.check,
                    flat_pairs(&r.instance),
                    ranks.join(" ")
                );
                if let (false, Some(w)) = (r.pass, &r.witness) {
                    line.push_str(&format!(" witness={w}"));
                }
                line + "\n"
            })
            .collect(),
    })
}

fn murphy_cmd<R: Ring>(ring: &R, d: usize, kind: MurphyKind, format: Format, guard: &SizeGuard) -> Result<String> {
    let basis = murphy_basis(d, kind, ring, guard)?;
    let name = match kind {
        MurphyKind::X => "x",
        MurphyKind::Y => "y",
    };
    Ok(match format {
        Format::Json => basis
            .iter()
            .map(|b| {
                json_line(&json!({
                    "basis": name,
                    "shape": b.shape.to_string(),
                    "s": b.s.to_string(),
                    "t": b.t.to_string(),
                    "element": b.elem.to_json(),
                }))
            })
            .collect(),
        Format::Csv => csv_text(
            &["shape", "s", "t", "permutation", "coefficient"],
            basis.iter().flat_map(|b| {
                b.elem.terms().iter().map(move |(w, c)| {
                    vec![b.shape.to_string(), b.s.to_string(), b.t.to_string(), w.to_string(), ring.format(c)]
                })
            }),
        )?,
        Format::Pretty => {
            basis.iter().map(|b| format!("{name} s={} t={} shape ({}): {}\n", b.s, b.t, b.shape, b.elem)).collect()
        }
    })
}

fn diagram_mul(left: &str, right: &str, delta: i64, format: Format) -> Result<String> {
    let x: Diagram = left.parse()?;
    let y: Diagram = right.parse()?;
    if x.strands() != y.strands() {
        return Err(Error::InvalidArgument(format!(
            "{left:?} has {} strands but {right:?} has {}",
            x.strands(),
            y.strands()
        )));
    }
    let (m, z) = multiply_diagrams(&x, &y)?;
    let scalar: BigInt = BigInt::from(delta).pow(m as u32);
    Ok(match format {
        Format::Json => json_line(&json!({
            "left": x.to_string(),
            "right": y.to_string(),
            "delta": delta,
            "middle_components": m,
            "scalar": scalar.to_string(),
            "product": z.to_string(),
        })),
        Format::Csv => csv_text(
            &["left", "right", "delta", "middle_components", "scalar", "product"],
            [vec![x.to_string(), y.to_string(), delta.to_string(), m.to_string(), scalar.to_string(), z.to_string()]],
        )?,
        Format::Pretty => format!("{scalar} * {z}\n"),
    })
}

fn decompose(inst: &Instance, format: Format, guard: &SizeGuard) -> Result<String> {
    guard.check_action(inst.d(), inst.n, inst.r)?;
    let half = inst.eps == Eps::Half;
    let places = if half { inst.r + 1 } else { inst.r };
    let mut rows = Vec::new();
    for t in ValueType::all(places) {
        let orbit = orbit_basis(&t, inst, half)?;
        let first = orbit.first().map(ToString::to_string);
        rows.push((t, orbit.len(), first));
    }
    let total: usize = rows.iter().map(|(_, k, _)| k).sum();
    Ok(match format {
        Format::Json => rows
            .iter()
            .map(|(t, k, first)| {
                json_line(&json!({ "value_type": t.to_string(), "blocks": t.len(), "orbit_size": k, "representative": first }))
            })
            .collect(),
        Format::Csv => csv_text(
            &["value_type", "blocks", "orbit_size", "representative"],
            rows.iter().map(|(t, k, first)| vec![t.to_string(), t.len().to_string(), k.to_string(), first.clone().unwrap_or_default()]),
        )?,
        Format::Pretty => {
            let width = rows.iter().map(|(t, _, _)| t.to_string().len()).max().unwrap_or(0);
            let mut s = format!("{inst}\n");
            for (t, k, first) in &rows {
                s.push_str(&format!("{:<width$}  blocks {}  orbit {:>5}  {}\n", t.to_string(), t.len(), k, first.as_deref().unwrap_or("-")));
            }
            s.push_str(&format!("total {total} = {}^{}\n", inst.n, inst.r));
            s
        }
    })
}

fn commutant_cmd<F: Field>(field: &F, inst: &Instance, format: Format, guard: &SizeGuard) -> Result<String> {
    guard.check_action(inst.d(), inst.n, inst.r)?;
    let dim = inst.dim();
    let mats: Vec<Matrix<F>> =
        acting_diagrams(inst).iter().map(|x| diagram_matrix(field, x, inst)).collect::<Result<_>>()?;
    let basis = commutant(field, &mats, dim)?;
    let entries = |m: &Matrix<F>| -> Vec<Vec<String>> {
        m.rows().iter().map(|row| row.iter().map(|c| field.format(c)).collect()).collect()
    };
    Ok(match format {
        Format::Json => json_line(&json!({
            "instance": inst,
            "dimension": basis.len(),
            "basis": basis.iter().map(entries).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut rows = Vec::new();
            for (k, m) in basis.iter().enumerate() {
                for (i, row) in m.rows().iter().enumerate() {
                    for (j, c) in row.iter().enumerate() {
                        if !field.is_zero(c) {
                            rows.push(vec![k.to_string(), i.to_string(), j.to_string(), field.format(c)]);
                        }
                    }
                }
            }
            csv_text(&["basis_index", "row", "column", "value"], rows)?
        }
        Format::Pretty => {
            let mut s = format!("{inst}\ncommutant dimension {}\n", basis.len());
            for (k, m) in basis.iter().enumerate() {
                s.push_str(&format!("basis {k}:\n"));
                for row in entries(m) {
                    s.push_str(&format!("  {}\n", row.join(" ")));
                }
            }
            s
        }
    })
}
