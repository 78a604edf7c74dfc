//! Command-line front end: load or generate instances, run checks, print a
//! JSON report on standard output.
//!
//! Exit status: 0 when every check passes, 1 when a check fails (the report
//! carries a witness), 2 on input errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::coloring::{ColoredPoset, MAX_ELEMENTS};
use crate::decomposition::{barrier_partition, compress_antichain, compress_chain, decompose};
use crate::definability::{assemble_psi, define_antichain, define_chain_case1, define_chain_case2, CaseSplit, Ctx};
use crate::generate::{instance_rng, random_poset, trace_instance, valid_coloring, TRACE_FAMILIES};
use crate::io;
use crate::poset::Poset;
use crate::set::ElementSet;
use crate::trace::{four_sets_search, DEFAULT_TUPLE_CAP, is_delta_indiscernible, trace_coloring, IndexedSequence, TraceStructure};
use crate::{min_chain_cover, Error};

#[derive(Debug, Parser)]
#[command(name = "posetdef", version, about = "Poset decompositions, indiscernible colorings and trace definability")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub opts: Opts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Clone, Args)]
pub struct Opts {
    /// Poset JSON file.
    #[arg(long, global = true)]
    pub poset: Option<PathBuf>,
    /// Coloring JSON file (needs --poset).
    #[arg(long, global = true)]
    pub coloring: Option<PathBuf>,
    /// Trace structure JSON file.
    #[arg(long, global = true)]
    pub trace: Option<PathBuf>,
    /// Indexed sequence JSON file (needs --poset).
    #[arg(long, global = true)]
    pub seq: Option<PathBuf>,
    /// Override N (defaults to the coloring file, or the independence dimension).
    #[arg(long = "n-param", global = true)]
    pub n_param: Option<usize>,
    /// Generate the instance from this seed instead of reading files.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the main artifact (decomposition, DOT) to this file.
    #[arg(long, global = true)]
    pub emit: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    /// Largest poset accepted by the exhaustive coloring checks.
    #[arg(long = "max-elements", default_value_t = MAX_ELEMENTS, global = true)]
    pub max_elements: usize,
    /// Most tuples the indiscernibility check may enumerate.
    #[arg(long = "tuple-cap", default_value_t = DEFAULT_TUPLE_CAP, global = true)]
    pub tuple_cap: usize,
    /// Comma-separated element list for compress/define.
    #[arg(long, global = true, value_delimiter = ',')]
    pub elements: Option<Vec<usize>>,
    /// Color class `t` for compress/define.
    #[arg(long, global = true)]
    pub color: Option<u8>,
    /// Trace row for define; all rows when omitted.
    #[arg(long, global = true)]
    pub row: Option<usize>,
    /// Include wall-clock timings (makes reports run-dependent).
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Load and validate a poset, or render it.
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Width and a minimum chain cover with its antichain certificate.
    Dilworth,
    #[command(subcommand)]
    Coloring(ColoringCmd),
    #[command(subcommand)]
    Trace(TraceCmd),
    #[command(subcommand)]
    Define(DefineCmd),
    /// Exhaustive search over 4-point posets indexing four fixed sets.
    #[command(name = "four-sets", alias = "example41")]
    FourSets,
}

#[derive(Debug, Subcommand)]
pub enum PosetCmd {
    Check,
    Dot,
}

#[derive(Debug, Subcommand)]
pub enum ColoringCmd {
    Verify,
    Decompose,
    Compress,
}

#[derive(Debug, Subcommand)]
pub enum TraceCmd {
    /// Independence dimension with a shattered witness.
    Id,
    Indiscernible,
    /// Every row's coloring is indiscernible at N = independence dimension.
    #[command(name = "coloring-check", alias = "lemma34")]
    ColoringCheck,
}

#[derive(Debug, Subcommand)]
pub enum DefineCmd {
    Antichain,
    Chain,
    Psi,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: Vec<String>,
    /// SHA-256 of each input file, by flag name.
    pub inputs: BTreeMap<String, String>,
    pub checks: Vec<CheckResult>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

struct Session {
    opts: Opts,
    checks: Vec<CheckResult>,
    inputs: BTreeMap<String, String>,
    timings: BTreeMap<String, f64>,
}

fn input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::Io { .. }
            | Error::Schema(_)
            | Error::Parse(_)
            | Error::Cycle(..)
            | Error::OutOfRange { .. }
            | Error::CapExceeded { .. }
            | Error::NotAntichain(..)
            | Error::NotChain(..)
            | Error::NotMaximalAntichain
            | Error::NotMonochromatic(_)
            | Error::RepeatedIndex(_)
            | Error::NotTotal
    )
}

fn missing(flag: &str) -> Error {
    Error::Schema(format!("--{flag} is required (or pass --seed)"))
}

impl Session {
    fn digest(&mut self, flag: &str, path: &Path) -> Result<(), Error> {
        let bytes = std::fs::read(path)
            .map_err(|e| Error::Io { path: path.display().to_string(), reason: e.to_string() })?;
        let hex: String = Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect();
        self.inputs.insert(flag.to_string(), hex);
        Ok(())
    }

    fn check(&mut self, name: &str, passed: bool, witness: Option<Value>) {
        self.checks.push(CheckResult { name: name.to_string(), passed, witness: if passed { None } else { witness } });
    }

    fn timed<T>(&mut self, label: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.timings.insert(label.to_string(), start.elapsed().as_secs_f64() * 1e3);
        out
    }

    fn poset(&mut self) -> Result<Poset, Error> {
        if let Some(path) = self.opts.poset.clone() {
            self.digest("poset", &path)?;
            return io::load_poset(&path);
        }
        let seed = self.opts.seed.ok_or_else(|| missing("poset"))?;
        let mut rng = instance_rng(seed, 0);
        let n = rand::Rng::gen_range(&mut rng, 2..=20);
        Ok(random_poset(&mut rng, n, 0.3))
    }

    fn colored(&mut self) -> Result<ColoredPoset, Error> {
        let cap = self.opts.max_elements;
        if let Some(path) = self.opts.coloring.clone() {
            let p = self.poset()?;
            self.digest("coloring", &path)?;
            let file: io::ColoringFile = io::read_json(&path)?;
            let n = self.opts.n_param.unwrap_or(file.n);
            return ColoredPoset::with_cap(p, file.f, n, cap);
        }
        let seed = self.opts.seed.ok_or_else(|| missing("coloring"))?;
        let cp = valid_coloring(&mut instance_rng(seed, 0), 40.min(cap), self.opts.n_param.unwrap_or(1));
        Ok(cp)
    }

    fn trace_and_seq(&mut self) -> Result<(TraceStructure, IndexedSequence), Error> {
        if let Some(path) = self.opts.trace.clone() {
            self.digest("trace", &path)?;
            let trace = io::load_trace(&path)?;
            let seq_path = self.opts.seq.clone().ok_or_else(|| missing("seq"))?;
            let p = self.poset()?;
            self.digest("seq", &seq_path)?;
            let seq = io::read_json::<io::SeqFile>(&seq_path)?.to_sequence(p)?;
            seq.check_against(&trace)?;
            return Ok((trace, seq));
        }
        let seed = self.opts.seed.ok_or_else(|| missing("trace"))?;
        let family = TRACE_FAMILIES[(seed % TRACE_FAMILIES.len() as u64) as usize];
        let inst = trace_instance(seed, 0, family, 8)
            .ok_or_else(|| Error::Schema(format!("no indiscernible {family} instance for seed {seed}")))?;
        Ok((inst.trace, inst.seq))
    }

    fn trace_only(&mut self) -> Result<TraceStructure, Error> {
        if self.opts.trace.is_some() && self.opts.seq.is_none() {
            let path = self.opts.trace.clone().expect("checked");
            self.digest("trace", &path)?;
            return io::load_trace(&path);
        }
        Ok(self.trace_and_seq()?.0)
    }

    fn elements(&self, p: &Poset) -> Result<ElementSet, Error> {
        let list = self.opts.elements.clone().ok_or_else(|| Error::Schema("--elements is required".into()))?;
        ElementSet::from_members(p.len(), list)
    }

    // Writes `text` to --emit when given; otherwise returns it for the report.
    fn emit(&self, text: String) -> Result<Value, Error> {
        match &self.opts.emit {
            Some(path) => {
                io::write_text(path, &text)?;
                Ok(json!({ "emitted": path.display().to_string() }))
            }
            None => Ok(serde_json::from_str(&text).unwrap_or(Value::String(text))),
        }
    }
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn execute(cmd: &Command, s: &mut Session) -> Result<Value, Error> {
    match cmd {
        Command::Poset(PosetCmd::Check) => {
            let p = s.poset()?;
            let cover = min_chain_cover(&p);
            Ok(json!({ "n": p.len(), "relations": p.relation_pairs().len(), "covers": p.covers().len(), "width": cover.width() }))
        }
        Command::Poset(PosetCmd::Dot) => {
            let p = s.poset()?;
            s.emit(p.to_dot("poset"))
        }
        Command::Dilworth => {
            let p = s.poset()?;
            let cover = s.timed("dilworth", || min_chain_cover(&p));
            let mut seen = p.empty_set();
            let mut disjoint = true;
            for c in cover.chain_sets(p.len()) {
                disjoint &= seen.is_disjoint(&c) && p.incomparable_pair(&c).is_none();
                seen = seen.union(&c);
            }
            s.check("chains_partition_poset", disjoint && seen == p.all(), Some(to_value(&cover.chains)));
            let anti = p.comparable_pair(&cover.width_witness);
            s.check("witness_is_antichain", anti.is_none(), Some(to_value(&anti)));
            s.check("witness_matches_chain_count", cover.width_witness.len() == cover.width(), None);
            Ok(json!({ "width": cover.width_witness.len(), "chains": cover.width(), "cover": cover.chains, "antichain": cover.width_witness }))
        }
        Command::Coloring(ColoringCmd::Verify) => {
            let cp = s.colored()?;
            let report = s.timed("verify", || cp.verify());
            let witness = report.violations.first().map(to_value);
            s.check("indiscernible", report.passes, witness);
            Ok(json!({ "n": cp.poset.len(), "colors": cp.colors(), "report": report }))
        }
        Command::Coloring(ColoringCmd::Decompose) => {
            let cp = s.colored()?;
            let dec = s.timed("decompose", || decompose(&cp))?;
            let n = cp.poset.len();
            let mismatch: Vec<usize> = (0..n).filter(|&i| dec.evaluate(i) != cp.color(i)).collect();
            s.check("evaluate_matches_coloring", mismatch.is_empty(), Some(to_value(&mismatch)));
            let k = dec.blocks.count();
            s.check("barrier_count_bound", k <= 2 * cp.n_param + 2, Some(json!({ "k": k })));
            s.check("block_chain_bound", dec.max_chains() <= cp.block_bound(), Some(json!({ "max_chains": dec.max_chains() })));
            let artifact = match s.opts.format {
                Format::Json => serde_json::to_string_pretty(&dec).expect("serializable"),
                Format::Dot => io::decomposition_dot(&cp, &dec),
            };
            Ok(json!({ "k": k, "max_chains": dec.max_chains(), "decomposition": s.emit(artifact)? }))
        }
        Command::Coloring(ColoringCmd::Compress) => {
            let cp = s.colored()?;
            let p = &cp.poset;
            let x = s.elements(p)?;
            let t = match s.opts.color {
                Some(t) => t,
                None => x.first().map(|i| cp.color(i)).ok_or_else(|| Error::Schema("empty --elements".into()))?,
            };
            let n = cp.n_param;
            if p.incomparable_pair(&x).is_none() {
                let comp = compress_chain(&cp, &x, t)?;
                let covered = comp.covered(p);
                s.check("interval_count", comp.pairs.len() <= n + 1, Some(to_value(&comp.pairs)));
                s.check("covers_chain", x.is_subset(&covered), None);
                let leak: Vec<usize> = covered.iter().filter(|&i| cp.color(i) != t).collect();
                s.check("intervals_monochromatic", leak.is_empty(), Some(to_value(&leak)));
                return Ok(json!({ "kind": "chain", "compression": comp }));
            }
            let comp = compress_antichain(&cp, &x, t)?;
            s.check("core_size", comp.a0.len() <= 2 * n + 1, Some(to_value(&comp.a0)));
            s.check("witness_sizes", comp.j_minus.len() <= n && comp.j_plus.len() <= n, None);
            let (_, partition) = barrier_partition(&cp, &x, t)?;
            let parts: Vec<Value> = partition.iter().map(|(k, v)| json!({ "key": k, "members": v })).collect();
            Ok(json!({ "kind": "antichain", "compression": comp, "partition": parts }))
        }
        Command::Trace(TraceCmd::Id) => {
            let t = s.trace_only()?;
            let (dim, witness) = s.timed("independence_dimension", || t.independence_dimension());
            Ok(json!({ "rows": t.rows(), "columns": t.columns(), "dimension": dim, "witness": witness }))
        }
        Command::Trace(TraceCmd::Indiscernible) => {
            let (t, seq) = s.trace_and_seq()?;
            let n = s.opts.n_param.unwrap_or_else(|| t.independence_dimension().0);
            let cap = s.opts.tuple_cap;
            let report = s.timed("indiscernible", || is_delta_indiscernible(&t, &seq, n, true, cap))?;
            s.check("indiscernible", report.holds, Some(to_value(&report.counterexample)));
            Ok(json!({ "n": n, "report": report }))
        }
        Command::Trace(TraceCmd::ColoringCheck) => {
            let (t, seq) = s.trace_and_seq()?;
            let mut rows = Vec::new();
            let mut first_bad = None;
            for a in 0..t.rows() {
                let cp = trace_coloring(&t, &seq, a)?;
                let report = cp.verify();
                if !report.passes && first_bad.is_none() {
                    first_bad = Some(json!({ "row": a, "violation": report.violations.first() }));
                }
                rows.push(json!({ "row": a, "n": cp.n_param, "passes": report.passes }));
            }
            s.check("every_row_indiscernible", first_bad.is_none(), first_bad);
            Ok(json!({ "rows": rows }))
        }
        Command::Define(which) => define(which, s),
        Command::FourSets => {
            let report = s.timed("four_sets", four_sets_search);
            s.check("no_admissible_order", report.admissible == 0, Some(to_value(&report)));
            s.check("full_enumeration", report.posets_tested == 219, Some(json!({ "tested": report.posets_tested })));
            Ok(to_value(&report))
        }
    }
}

fn define(which: &DefineCmd, s: &mut Session) -> Result<Value, Error> {
    let (t, seq) = s.trace_and_seq()?;
    let rows: Vec<usize> = match s.opts.row {
        Some(r) => vec![r],
        None => (0..t.rows()).collect(),
    };
    let mut out = Vec::new();
    for row in rows {
        let ctx = Ctx::new(&t, &seq, row)?;
        match which {
            DefineCmd::Psi => {
                let psi = assemble_psi(&ctx)?;
                s.check(&format!("row_{row}_exact"), psi.exact(), Some(to_value(&psi.mismatches)));
                let sound = psi.parts.iter().all(|d| d.check(&ctx).sound());
                s.check(&format!("row_{row}_parts_sound"), sound, None);
                out.push(json!({
                    "row": row,
                    "case": psi.case,
                    "formula": psi.formula.to_sexpr(),
                    "params": psi.formula.params,
                    "template": psi.formula.template(),
                    "exceptions": psi.exceptions(),
                }));
            }
            DefineCmd::Antichain | DefineCmd::Chain => {
                let x = s.elements(ctx.poset())?;
                let color = s.opts.color.unwrap_or_else(|| x.first().map_or(1, |i| ctx.color(i)));
                let def = match which {
                    DefineCmd::Antichain => define_antichain(&ctx, &x, color)?,
                    _ if crate::definability::case_split(&t, &seq, ctx.n) == CaseSplit::Homogeneous => {
                        define_chain_case1(&ctx, &x, color)?
                    }
                    _ => define_chain_case2(&ctx, &x, color)?,
                };
                let check = def.check(&ctx);
                s.check(&format!("row_{row}_sound"), check.sound(), Some(to_value(&check)));
                s.check(&format!("row_{row}_within_budget"), def.within_budget(), Some(json!({ "params": def.params(), "budget": def.budget })));
                out.push(json!({
                    "row": row,
                    "formula": def.formula.to_sexpr(),
                    "params": def.formula.params,
                    "budget": def.budget,
                    "exceptions": def.exceptions,
                }));
            }
        }
    }
    Ok(Value::Array(out))
}

/// Parses `argv` (including the program name), runs the command and prints
/// the report; returns the exit status.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_to(argv, &mut std::io::stdout().lock())
}

/// As `run`, writing the report to `out`. A closed pipe is not an error.
pub fn run_to<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut session =
        Session { opts: cli.opts.clone(), checks: Vec::new(), inputs: BTreeMap::new(), timings: BTreeMap::new() };
    match execute(&cli.command, &mut session) {
        Ok(result) => {
            let report = RunReport {
                command: argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect(),
                inputs: session.inputs,
                checks: session.checks,
                result,
                timings_ms: cli.opts.timings.then_some(session.timings),
            };
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&report).expect("serializable"));
            if report.passed() { 0 } else { 1 }
        }
        Err(e) => {
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&json!({ "error": e.to_string() })).expect("serializable"));
            if input_error(&e) { 2 } else { 1 }
        }
    }
}
