//! Command-line front end.
//!
//! Exit codes: 0 success, 2 bad input, 3 size guard exceeded, 4 a checked
//! invariant failed.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::error::{Error, Result};
use crate::parabolic::{self, Side};
use crate::piece_maps::{self, WpConfig};
use crate::pieces;
use crate::report::{self, Document, PieceRecord, WpRecord, FORMAT_VERSION};
use crate::rootsys::{aut_compose, build_root_system, validate_automorphism, CartanSpec, CartanType, Family, RootAutomorphism, RootSystem};
use crate::subset::{IndexSubset, Word};
use crate::twisted::{self, InvolutionPair, JOracle};
use crate::weyl::WeylElement;

pub mod output;
pub mod selftest;

use output::{Cell, Format, Output};

#[derive(Parser, Debug)]
#[command(name = "weylpieces", version, about = "Weyl group combinatorics of G-stable and twisted pieces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Cartan type, e.g. A2, B3, A2xA2.
    #[arg(long = "type", value_name = "TYPE")]
    cartan_type: Option<String>,
    /// Subset of simple indices, 1-based, e.g. "1,3". Empty for none.
    #[arg(long = "J", value_name = "LIST", default_value = "", allow_hyphen_values = true)]
    j: String,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Largest group order to enumerate.
    #[arg(long)]
    guard: Option<u64>,
    /// Include sequences, certificates and traces.
    #[arg(long)]
    verbose: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the pieces (J, w, K) for every w in W^{δ(J)}.
    Enumerate {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "id")]
        delta: String,
        /// Re-validate a JSON document written by `enumerate`.
        #[arg(long, value_name = "FILE")]
        replay: Option<String>,
    },
    /// The Bédard sequence with limit w.
    Bedard {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "id")]
        delta: String,
        #[arg(long)]
        w: String,
    },
    /// The inverse map on piece indices, W^{δ(J)} → W^J.
    Epsilon {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "id")]
        delta: String,
        #[arg(long)]
        w: String,
    },
    /// The piece index in W^{δ(J)} of an arbitrary element.
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "id")]
        delta: String,
        #[arg(long)]
        x: String,
    },
    /// The index set W(J, σ, τ) with solutions and distinguished elements.
    Wset {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        sigma: String,
        #[arg(long)]
        tau: String,
        /// full | doubled | custom:FILE
        #[arg(long, default_value = "full")]
        joracle: String,
    },
    /// The involution on piece indices induced by σ.
    Wp {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "id")]
        delta: String,
        #[arg(long)]
        sigma: String,
        /// A single element; all of W^{δ(J)} if omitted.
        #[arg(long)]
        w: Option<String>,
        /// Accept σ that do not map Phi_J onto Phi_{δ(J)}.
        #[arg(long)]
        no_levi_check: bool,
    },
    /// Run every property suite over a set of root systems.
    Selftest {
        /// Comma separated types, e.g. "A1,A2,B2,A1xA1".
        #[arg(long)]
        types: Option<String>,
        /// Families to take up to --max-rank, e.g. "A,B,G".
        #[arg(long, default_value = "A,B,C,D,G")]
        families: String,
        #[arg(long, default_value_t = 3)]
        max_rank: usize,
        /// Extra system given as a Cartan matrix file (one row per line).
        #[arg(long, value_name = "FILE")]
        cartan: Option<String>,
        #[arg(long)]
        guard: Option<u64>,
    },
}

/// Parses `args` (including the program name), writes results to `out` and
/// diagnostics to `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    let (output, format) = match cmd {
        Command::Enumerate { common, replay: Some(file), .. } => (replay(&file, &common)?, common.format),
        Command::Enumerate { common, delta, replay: None } => {
            let rs = system(&common)?;
            let d = parse_automorphism(&rs, &delta)?;
            let j = parse_subset(&common.j, rs.rank())?;
            (enumerate(&rs, j, &d, common.verbose)?, common.format)
        }
        Command::Bedard { common, delta, w } => {
            let rs = system(&common)?;
            let d = parse_automorphism(&rs, &delta)?;
            let j = parse_subset(&common.j, rs.rank())?;
            (bedard(&rs, j, &d, &parse_element(&rs, &w)?)?, common.format)
        }
        Command::Epsilon { common, delta, w } => {
            let rs = system(&common)?;
            let d = parse_automorphism(&rs, &delta)?;
            let j = parse_subset(&common.j, rs.rank())?;
            (epsilon(&rs, j, &d, &parse_element(&rs, &w)?, common.verbose)?, common.format)
        }
        Command::Classify { common, delta, x } => {
            let rs = system(&common)?;
            let d = parse_automorphism(&rs, &delta)?;
            let j = parse_subset(&common.j, rs.rank())?;
            (classify(&rs, j, &d, &parse_element(&rs, &x)?, common.verbose)?, common.format)
        }
        Command::Wset { common, sigma, tau, joracle } => {
            let rs = system(&common)?;
            let s = parse_automorphism(&rs, &sigma)?;
            let t = parse_automorphism(&rs, &tau)?;
            let j = parse_subset(&common.j, rs.rank())?;
            let oracle = parse_joracle(&rs, &joracle)?;
            (wset(&rs, j, s, t, &oracle)?, common.format)
        }
        Command::Wp { common, delta, sigma, w, no_levi_check } => {
            let rs = system(&common)?;
            let d = parse_automorphism(&rs, &delta)?;
            let s = parse_automorphism(&rs, &sigma)?;
            let j = parse_subset(&common.j, rs.rank())?;
            let w = w.map(|w| parse_element(&rs, &w)).transpose()?;
            let cfg = WpConfig { require_levi_match: !no_levi_check };
            (wp(&rs, j, &d, &s, w.as_ref(), cfg)?, common.format)
        }
        Command::Selftest { types, families, max_rank, cartan, guard } => {
            let systems = selftest_systems(types.as_deref(), &families, max_rank, cartan.as_deref(), guard)?;
            let rep = selftest::run(&systems)?;
            serde_json::to_writer_pretty(&mut *out, &rep)?;
            writeln!(out)?;
            return Ok(if rep.passed { 0 } else { 4 });
        }
    };
    output.write(format, out)?;
    Ok(0)
}

fn system(common: &Common) -> Result<RootSystem> {
    let t = common
        .cartan_type
        .as_deref()
        .ok_or_else(|| Error::Spec("--type is required".into()))?;
    build_system(t, common.guard)
}

fn build_system(t: &str, guard: Option<u64>) -> Result<RootSystem> {
    let rs = build_root_system(&t.parse::<CartanSpec>()?)?;
    Ok(match guard {
        Some(g) => rs.with_guard(g),
        None => rs,
    })
}

/// `1,3`, `1 3`, `{1,3}`, `[1,3]` or empty.
pub fn parse_subset(s: &str, rank: usize) -> Result<IndexSubset> {
    let t = s.trim().trim_matches(|c| matches!(c, '{' | '}' | '[' | ']'));
    let labels = t
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<usize>().map_err(|_| Error::Parse(format!("bad index {p:?} in {s:?}"))))
        .collect::<Result<Vec<_>>>()?;
    IndexSubset::from_labels(&labels, rank)
}

fn parse_element(rs: &RootSystem, s: &str) -> Result<WeylElement> {
    rs.from_word(&s.parse::<Word>()?)
}

fn read_matrix(path: &str) -> Result<Vec<Vec<i32>>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| {
            l.split_whitespace()
                .map(|x| x.parse::<i32>().map_err(|_| Error::Parse(format!("{path}: bad integer {x:?}"))))
                .collect()
        })
        .collect()
}

/// `id`, `neg`, `flip`, `productSwap`, `neg*flip`, `neg*productSwap`, or
/// `@FILE` holding the matrix whose columns are the images of the simple roots.
pub fn parse_automorphism(rs: &RootSystem, spec: &str) -> Result<RootAutomorphism> {
    if let Some(path) = spec.strip_prefix('@') {
        return validate_automorphism(rs, read_matrix(path)?, None);
    }
    let named = |name: &str| -> Result<RootAutomorphism> {
        match name {
            "id" => Ok(RootAutomorphism::identity(rs)),
            "neg" => Ok(RootAutomorphism::negation(rs)),
            "flip" => RootAutomorphism::diagram_flip(rs),
            "productSwap" => RootAutomorphism::product_swap(rs),
            other => Err(Error::Automorphism(format!("unknown automorphism {other:?}"))),
        }
    };
    match spec.split_once('*') {
        Some((a, b)) => aut_compose(rs, &named(a)?, &named(b)?),
        None => named(spec),
    }
}

#[derive(Deserialize)]
struct OracleFile {
    version: String,
    sets: Vec<OracleEntry>,
}

#[derive(Deserialize)]
struct OracleEntry {
    #[serde(rename = "J")]
    j: IndexSubset,
    elements: Vec<Word>,
}

pub fn parse_joracle(rs: &RootSystem, spec: &str) -> Result<JOracle> {
    match spec {
        "full" => Ok(JOracle::Full),
        "doubled" => twisted::doubled_j_oracle(rs),
        other => {
            let path = other
                .strip_prefix("custom:")
                .ok_or_else(|| Error::Parse(format!("unknown oracle {other:?}")))?;
            let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
            let file: OracleFile = serde_json::from_str(&text)?;
            if file.version != FORMAT_VERSION {
                return Err(Error::Parse(format!("unsupported oracle version {:?}", file.version)));
            }
            let mut map = BTreeMap::new();
            for entry in file.sets {
                if entry.j.iter().any(|i| i >= rs.rank()) {
                    return Err(Error::Parse(format!("oracle subset {} out of range", entry.j)));
                }
                let els = entry.elements.iter().map(|w| rs.from_word(w)).collect::<Result<Vec<_>>>()?;
                map.insert(entry.j, els);
            }
            Ok(JOracle::Custom(map))
        }
    }
}

fn enumerate(rs: &RootSystem, j: IndexSubset, d: &RootAutomorphism, verbose: bool) -> Result<Output> {
    let ps = pieces::enumerate_pieces(rs, j, d)?;
    let records: Vec<PieceRecord> = ps.iter().map(|p| report::piece_record(rs, p)).collect();
    let mut headers = vec!["w", "K", "length"];
    if verbose {
        headers.push("sequence");
    }
    let rows = ps
        .iter()
        .map(|p| {
            let mut row = vec![Cell::Word(rs.reduced_word(&p.w)), Cell::Set(p.k), Cell::Text(p.w.length().to_string())];
            if verbose {
                row.push(Cell::Words(p.sequence.steps.iter().map(|(_, w)| rs.reduced_word(w)).collect()));
            }
            row
        })
        .collect();
    Output::new(&Document::new("enumerate", rs, j, d, records), headers, rows)
}

/// Reads an `enumerate` document and checks every record against the
/// sequence axioms, `I(J, w, δ)`, and the full list of `W^{δ(J)}`.
fn replay(path: &str, common: &Common) -> Result<Output> {
    let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
    let doc: Document<PieceRecord> = serde_json::from_str(&text)?;
    doc.check_version()?;
    if doc.command != "enumerate" {
        return Err(Error::Parse(format!("expected an enumerate document, got {:?}", doc.command)));
    }
    let rs = build_system(&doc.cartan_type, common.guard)?;
    let d = validate_automorphism(&rs, doc.delta.clone(), None)?;
    let invalid = |msg: String| Error::Precondition(format!("replayed document does not validate: {msg}"));
    let dj = d.map_subset(doc.j).ok_or_else(|| invalid("δ is not a diagram automorphism".into()))?;
    let mut seen = Vec::new();
    for rec in &doc.records {
        if rec.j != doc.j {
            return Err(invalid(format!("record J {} differs from document J {}", rec.j, doc.j)));
        }
        let w = rs.from_word(&rec.w)?;
        let seq = report::sequence_from_record(&rs, &rec.sequence)?;
        let limit = pieces::check_bedard_axioms(&rs, doc.j, &d, &seq).map_err(|e| invalid(e.to_string()))?;
        if limit != w {
            return Err(invalid(format!("sequence of {} has a different limit", rec.w)));
        }
        if pieces::i_set(&rs, doc.j, &d, &w)? != rec.k {
            return Err(invalid(format!("K of {} is wrong", rec.w)));
        }
        seen.push(w);
    }
    if seen != parabolic::enumerate_min_reps(&rs, dj, Side::Right)? {
        return Err(invalid("records do not list W^δ(J) in order".into()));
    }
    let summary = serde_json::json!({
        "version": FORMAT_VERSION,
        "command": "replay",
        "type": rs.label(),
        "J": doc.j,
        "records": doc.records.len(),
        "valid": true,
    });
    Ok(Output {
        json: summary,
        headers: vec!["records", "valid"],
        rows: vec![vec![Cell::Text(doc.records.len().to_string()), Cell::Text("true".into())]],
    })
}

fn bedard(rs: &RootSystem, j: IndexSubset, d: &RootAutomorphism, w: &WeylElement) -> Result<Output> {
    let seq = pieces::bedard_sequence(rs, j, d, w)?;
    let rec = PieceRecord { j, w: rs.reduced_word(w), k: seq.stable_subset(), sequence: report::sequence_record(rs, &seq) };
    let rows = seq
        .steps
        .iter()
        .enumerate()
        .map(|(n, (jn, wn))| vec![Cell::Text(n.to_string()), Cell::Set(*jn), Cell::Word(rs.reduced_word(wn))])
        .collect();
    Output::new(&Document::new("bedard", rs, j, d, vec![rec]), vec!["n", "J_n", "w_n"], rows)
}

fn epsilon(rs: &RootSystem, j: IndexSubset, d: &RootAutomorphism, w: &WeylElement, verbose: bool) -> Result<Output> {
    let (v, dual) = piece_maps::epsilon(rs, j, d, w)?;
    let cert = piece_maps::epsilon_oracle(rs, j, d, w)?;
    if cert.v != v {
        return Err(Error::Contract("dual sequence and W_J scan disagree".into()));
    }
    let rec = report::epsilon_record(rs, &cert, verbose.then_some(&dual));
    let rows = vec![vec![Cell::Word(rec.w.clone()), Cell::Word(rec.v.clone()), Cell::Word(rec.witness.clone())]];
    Output::new(&Document::new("epsilon", rs, j, d, vec![rec]), vec!["w", "epsilon", "witness"], rows)
}

fn classify(rs: &RootSystem, j: IndexSubset, d: &RootAutomorphism, x: &WeylElement, verbose: bool) -> Result<Output> {
    let trace = pieces::classify_trace(rs, j, d, x)?;
    let rec = report::classify_record(rs, x, &trace, verbose);
    let rows = vec![vec![Cell::Word(rec.x.clone()), Cell::Word(rec.w.clone())]];
    Output::new(&Document::new("classify", rs, j, d, vec![rec]), vec!["x", "w"], rows)
}

fn wset(rs: &RootSystem, j: IndexSubset, s: RootAutomorphism, t: RootAutomorphism, oracle: &JOracle) -> Result<Output> {
    let pair = InvolutionPair::new(rs, s, t)?;
    let sols = twisted::w_set(rs, j, &pair, oracle, oracle)?;
    let records: Vec<_> = sols.iter().map(|x| report::solution_record(rs, x)).collect();
    let rows = records
        .iter()
        .map(|r| vec![Cell::Word(r.w.clone()), Cell::Set(r.k), Cell::Word(r.u.clone()), Cell::Words(r.solutions.clone())])
        .collect();
    Output::new(&Document::new("wset", rs, j, &pair.delta, records), vec!["w", "K", "u", "solutions"], rows)
}

fn wp(
    rs: &RootSystem,
    j: IndexSubset,
    d: &RootAutomorphism,
    s: &RootAutomorphism,
    w: Option<&WeylElement>,
    cfg: WpConfig,
) -> Result<Output> {
    let pairs = match w {
        Some(w) => vec![(w.clone(), piece_maps::wp(rs, j, d, s, w, cfg)?)],
        None => piece_maps::wp_table(rs, j, d, s, cfg)?,
    };
    let records: Vec<WpRecord> = pairs
        .iter()
        .map(|(a, b)| WpRecord { w: rs.reduced_word(a), image: rs.reduced_word(b) })
        .collect();
    let rows = records.iter().map(|r| vec![Cell::Word(r.w.clone()), Cell::Word(r.image.clone())]).collect();
    Output::new(&Document::new("wp", rs, j, d, records), vec!["w", "image"], rows)
}

fn selftest_systems(
    types: Option<&str>,
    families: &str,
    max_rank: usize,
    cartan: Option<&str>,
    guard: Option<u64>,
) -> Result<Vec<RootSystem>> {
    let mut systems = Vec::new();
    match types {
        Some(list) => {
            for t in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                systems.push(build_system(t, guard)?);
            }
        }
        None => {
            for f in families.split(',').map(str::trim).filter(|f| !f.is_empty()) {
                let family: Family = f.parse()?;
                for rank in 1..=max_rank {
                    let Ok(t) = CartanType::new(family, rank) else { continue };
                    let rs = build_root_system(&CartanSpec { entries: vec![t] })?;
                    let rs = match guard {
                        Some(g) => rs.with_guard(g),
                        None => rs,
                    };
                    if rs.weyl_order().is_some_and(|o| o <= rs.guard() as u128) {
                        systems.push(rs);
                    }
                }
            }
        }
    }
    if let Some(path) = cartan {
        let rs = RootSystem::from_cartan(read_matrix(path)?)?;
        systems.push(match guard {
            Some(g) => rs.with_guard(g),
            None => rs,
        });
    }
    if systems.is_empty() {
        return Err(Error::Spec("no systems selected".into()));
    }
    Ok(systems)
}

/// Entry point of the binary.
pub fn main_exit_code() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}
