//! Command-line front end.
//!
//! Exit codes: 0 success or colorable, 1 not colorable or obstructed,
//! 2 invalid input, 3 guard exceeded, 64 usage error.

use std::io::Write;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::cover::{DPInstance, ListAssignment};
use crate::gen::{self, GluePlan};
use crate::io::{self as jio, IoError};
use crate::obstruction::{self, Decision, ObstructionCertificate};
use crate::signed;
use crate::solver::{self, ChromaticNumber, SolveError, SolveResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_USAGE: i32 = 64;

#[derive(Debug, Parser)]
#[command(name = "dpcover", version, about = "DP-coloring of multigraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Find a coloring of an instance or report that none exists.
    Solve {
        file: String,
        #[arg(long)]
        json: bool,
    },
    /// Decide a degree-list instance: a coloring or an obstruction certificate.
    Decide {
        file: String,
        /// Write the certificate of the first obstructed component here.
        #[arg(long)]
        certificate: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Signed coloring with palette N_k or with lists drawn from it.
    Signed {
        file: String,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        lists: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Generate instances.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Build the cover graph and export it as DOT.
    Cover {
        file: String,
        #[arg(long)]
        dot: Option<String>,
        /// Leave the per-vertex cliques out of the DOT output.
        #[arg(long)]
        no_cliques: bool,
    },
    /// Check an instance against the matching-assignment conditions.
    Validate { file: String },
    /// DP-chromatic number of a graph with at most 5 vertices.
    Chromatic {
        file: String,
        #[arg(long, default_value_t = 3)]
        k_max: u32,
    },
}

#[derive(Debug, Subcommand)]
enum GenCommand {
    /// K_n^t with an H(n,t) cover.
    Knt {
        n: u32,
        t: u32,
        #[command(flatten)]
        out: GenOut,
    },
    /// C_n^t with a fat ladder or fat Moebius ladder cover.
    Cnt {
        n: u32,
        t: u32,
        #[command(flatten)]
        out: GenOut,
    },
    /// Bad blocks glued along a block tree.
    Glue {
        plan: String,
        #[command(flatten)]
        out: GenOut,
    },
    /// Random matchings on a graph, with degree lists unless --lists is given.
    Random {
        graph: String,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        density: f64,
        #[arg(long)]
        lists: Option<String>,
        #[arg(short = 'o', long)]
        output: Option<String>,
    },
}

#[derive(Debug, clap::Args)]
struct GenOut {
    #[arg(short = 'o', long)]
    output: Option<String>,
    #[arg(long)]
    certificate: Option<String>,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<IoError> for Failure {
    fn from(e: IoError) -> Self {
        Failure { code: EXIT_INVALID, message: e.to_string() }
    }
}

fn invalid(e: impl std::fmt::Display) -> Failure {
    Failure { code: EXIT_INVALID, message: e.to_string() }
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn load_valid(path: &str) -> Result<DPInstance, Failure> {
    let inst = jio::parse_instance(&jio::read_file(path)?)?;
    let v = inst.validate();
    if !v.is_empty() {
        let lines: Vec<String> = v.iter().map(|x| x.to_string()).collect();
        return Err(invalid(format!("invalid instance:\n  {}", lines.join("\n  "))));
    }
    Ok(inst)
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| invalid(format!("cannot write output: {e}")))
}

fn transversal_lines(t: &crate::cover::Transversal) -> String {
    t.iter().map(|(v, c)| format!("  {v} = {c}\n")).collect()
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Solve { file, json } => {
            let inst = load_valid(&file)?;
            let res = solver::solve(&inst).map_err(invalid)?;
            report_solve(&res, json, out)
        }
        Command::Decide { file, certificate, json } => {
            let inst = load_valid(&file)?;
            let parts = obstruction::decide_components(&inst).map_err(invalid)?;
            report_decide(&parts, certificate.as_deref(), json, out)
        }
        Command::Signed { file, k, lists, json } => run_signed(&file, k, lists.as_deref(), json, out),
        Command::Gen { what } => run_gen(what, out),
        Command::Cover { file, dot, no_cliques } => {
            let inst = load_valid(&file)?;
            let cover = inst.build_cover().map_err(invalid)?;
            let text = cover.to_dot(!no_cliques);
            match dot {
                Some(path) => {
                    jio::write_file(&path, &text)?;
                    emit(out, &format!("cover: {} nodes, {} edges\n", cover.node_count(), cover.edge_count()))?;
                }
                None => emit(out, &text)?,
            }
            Ok(EXIT_OK)
        }
        Command::Validate { file } => {
            let inst = jio::parse_instance(&jio::read_file(&file)?)?;
            let v = inst.validate();
            if v.is_empty() {
                let kind = if inst.is_exact_degree_list() {
                    "exact degree lists"
                } else if inst.is_degree_list() {
                    "degree lists"
                } else {
                    "lists below degree"
                };
                emit(out, &format!("VALID ({kind})\n"))?;
                Ok(EXIT_OK)
            } else {
                let mut text = format!("INVALID: {} violation(s)\n", v.len());
                for x in &v {
                    text.push_str(&format!("  {x}\n"));
                }
                emit(out, &text)?;
                Ok(EXIT_INVALID)
            }
        }
        Command::Chromatic { file, k_max } => {
            let g = jio::parse_graph(&jio::read_file(&file)?)?;
            match solver::dp_chromatic_number_small(&g, k_max) {
                Ok(ChromaticNumber::Exact(k)) => emit(out, &format!("chi_DP = {k}\n"))?,
                Ok(ChromaticNumber::Unknown) => emit(out, &format!("chi_DP > {k_max}\n"))?,
                Err(e @ SolveError::GuardExceeded { .. }) => {
                    return Err(Failure { code: EXIT_GUARD, message: e.to_string() })
                }
                Err(e) => return Err(invalid(e)),
            }
            Ok(EXIT_OK)
        }
    }
}

fn report_solve(res: &SolveResult, json: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let code = if res.is_colorable() { EXIT_OK } else { EXIT_NEGATIVE };
    if json {
        let v = match res {
            SolveResult::Colorable(t) => json!({"status": "colorable", "transversal": t.as_map()}),
            SolveResult::NotColorable { witness } => json!({"status": "not_colorable", "witness": witness}),
        };
        emit(out, &jio::to_canonical_json(&v))?;
    } else {
        match res {
            SolveResult::Colorable(t) => emit(out, &format!("COLORABLE\n{}", transversal_lines(t)))?,
            SolveResult::NotColorable { witness: Some(w) } => emit(out, &format!("NOT_COLORABLE (list of {w} exhausted)\n"))?,
            SolveResult::NotColorable { witness: None } => emit(out, "NOT_COLORABLE\n")?,
        }
    }
    Ok(code)
}

fn report_decide(
    parts: &[(DPInstance, Decision)],
    certificate: Option<&str>,
    json: bool,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let first_cert: Option<&ObstructionCertificate> = parts.iter().find_map(|(_, d)| match d {
        Decision::Obstructed(c) => Some(c),
        Decision::Colorable(_) => None,
    });
    if let (Some(path), Some(cert)) = (certificate, first_cert) {
        jio::write_file(path, &jio::to_canonical_json(cert))?;
    }
    let code = if first_cert.is_some() { EXIT_NEGATIVE } else { EXIT_OK };
    if json {
        let comps: Vec<Value> = parts
            .iter()
            .map(|(c, d)| match d {
                Decision::Colorable(t) => {
                    json!({"vertices": c.graph().vertices(), "decision": "colorable", "transversal": t.as_map()})
                }
                Decision::Obstructed(cert) => {
                    json!({"vertices": c.graph().vertices(), "decision": "obstructed", "certificate": cert})
                }
            })
            .collect();
        let status = if first_cert.is_some() { "obstructed" } else { "colorable" };
        emit(out, &jio::to_canonical_json(&json!({"status": status, "components": comps})))?;
    } else {
        let mut text = String::from(if first_cert.is_some() { "OBSTRUCTED\n" } else { "COLORABLE\n" });
        for (c, d) in parts {
            let names = c.graph().vertices().join(",");
            match d {
                Decision::Colorable(t) => text.push_str(&format!("component {names}: colorable\n{}", transversal_lines(t))),
                Decision::Obstructed(cert) => {
                    text.push_str(&format!("component {names}: obstructed\n"));
                    for line in cert.summary().lines() {
                        text.push_str(&format!("  {line}\n"));
                    }
                }
            }
        }
        emit(out, &text)?;
    }
    Ok(code)
}

/// Smallest `k` with every color of `lists` in `N_k`.
fn palette_for(lists: &ListAssignment) -> u32 {
    let mut k = 1u32;
    for &c in lists.iter().flatten() {
        let need = if c == 0 { 1 } else { 2 * c.unsigned_abs() as u32 };
        k = k.max(need);
    }
    let zero = lists.iter().any(|l| l.contains(&0));
    if zero && k.is_multiple_of(2) {
        k + 1
    } else {
        k
    }
}

fn run_signed(file: &str, k: Option<u32>, lists: Option<&str>, json: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let s = jio::parse_signed(&jio::read_file(file)?)?;
    let n = s.graph().vertex_count();
    let (lists, k) = match (lists, k) {
        (None, None) => return Err(Failure { code: EXIT_USAGE, message: "signed needs --k or --lists".into() }),
        (None, Some(k)) => (ListAssignment::uniform(n, signed::n_k(k).map_err(invalid)?.colors), k),
        (Some(path), k) => {
            let l = jio::parse_lists(s.graph(), &jio::read_file(path)?)?;
            let k = k.unwrap_or_else(|| palette_for(&l));
            (l, k)
        }
    };
    let inst = signed::signed_to_dp(&s, &lists, k).map_err(invalid)?;
    if inst.is_degree_list() && n > 0 {
        let parts = obstruction::decide_components(&inst).map_err(invalid)?;
        return report_decide(&parts, None, json, out);
    }
    let res = solver::solve(&inst).map_err(invalid)?;
    report_solve(&res, json, out)
}

fn write_generated(
    inst: &DPInstance,
    cert: Option<&ObstructionCertificate>,
    out_path: Option<&str>,
    cert_path: Option<&str>,
    out: &mut dyn Write,
) -> Result<i32, Failure> {
    let text = jio::instance_to_json(inst);
    match out_path {
        Some(p) => jio::write_file(p, &text)?,
        None => emit(out, &text)?,
    }
    if let (Some(p), Some(c)) = (cert_path, cert) {
        jio::write_file(p, &jio::to_canonical_json(c))?;
    }
    Ok(EXIT_OK)
}

fn run_gen(what: GenCommand, out: &mut dyn Write) -> Result<i32, Failure> {
    let (made, o) = match what {
        GenCommand::Knt { n, t, out: o } => (gen::bad_instance_knt(n, t), o),
        GenCommand::Cnt { n, t, out: o } => (gen::bad_instance_cnt(n, t), o),
        GenCommand::Glue { plan, out: o } => {
            let plan: GluePlan = serde_json::from_str(&jio::read_file(&plan)?).map_err(IoError::from)?;
            (gen::glue_bad(&plan), o)
        }
        GenCommand::Random { graph, seed, density, lists, output } => {
            if !(0.0..=1.0).contains(&density) {
                return Err(invalid(format!("density {density} outside [0, 1]")));
            }
            let g = jio::parse_graph(&jio::read_file(&graph)?)?;
            let l = match lists {
                Some(p) => jio::parse_lists(&g, &jio::read_file(&p)?)?,
                None => ListAssignment::degree_lists(&g),
            };
            let m = gen::random_matching(&g, &l, seed, density);
            let inst = DPInstance::new(g, l, m).map_err(invalid)?;
            return write_generated(&inst, None, output.as_deref(), None, out);
        }
    };
    let (inst, cert) = made.map_err(invalid)?;
    write_generated(&inst, Some(&cert), o.output.as_deref(), o.certificate.as_deref(), out)
}
