//! Command-line dispatcher. Subcommands map onto the library modules;
//! output is canonical and byte-stable for fixed inputs and seed.
//!
//! Exit codes: 0 yes/solved, 1 no, 2 input or precondition error, 3 size
//! limit exceeded, 4 internal invariant breach.
//!
//! Query parameters can ride inside instance files as `key: value` lines
//! (`order`, `set`, `limit`, `ell`); flags override embedded keys. That
//! lets `reduce` outputs feed `recognize` and `control` directly.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::formats::{self, DocKeys};
use crate::limits::Limits;
use crate::model::{Candidate, Ranking, WeakOrder};
use crate::recognition::{
    fasr_deletion, fasr_restriction, is_kemeny_consensus, is_minimum_fas, is_minimum_gnd,
    is_minimum_gnd_prime, is_minimum_vertex_cover, is_slater_consensus, vcr_deletion,
    vcr_restriction,
};
use crate::reductions::{
    election_from_digraph, fasr_to_kemeny_recognition, fasrr_to_kemeny_cdc, gnd_to_vcrr,
    phi_to_phi_prime, qsat2_to_gnd_prime, vc_to_fas, vcrd_to_fasrd, vcrr_to_fasrr,
    verify_reduction,
};
use crate::solvers::{
    borda_consensus, borda_scores, election_slater_input, kemeny_consensus_set,
    slater_consensus_set, ConsensusSet,
};
use crate::strategic::{
    borda_manipulation_to_consensus, kemeny_cav_to_consensus, kemeny_cdc_to_consensus,
    kemeny_cdv_to_consensus, kemeny_manipulation_to_consensus, slater_cdc_to_consensus,
    slater_manipulation_to_winner, VoteAssignment,
};

const EXIT_YES: i32 = 0;
const EXIT_NO: i32 = 1;
const EXIT_INPUT: i32 = 2;
const EXIT_LIMIT: i32 = 3;
const EXIT_INTERNAL: i32 = 4;

#[derive(Parser)]
#[command(
    name = "consensus-lab",
    version,
    about = "Exact desk-scale workbench for consensus rankings",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the optimal ranking(s) of an election file.
    Consensus {
        rule: Rule,
        file: PathBuf,
        /// Enumerate the complete optimum set even past the configured
        /// count cap.
        #[arg(long)]
        all: bool,
        /// Emit the result as one JSON object instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Decide whether a proposed solution is optimal; exits 0 yes, 1 no.
    Recognize {
        question: Question,
        file: PathBuf,
        /// Ranking to test, `a>b>c`.
        #[arg(long)]
        order: Option<String>,
        /// Vertex set `a,b,c` or arc set `u>v,w>x` to test.
        #[arg(long)]
        set: Option<String>,
        /// Pattern-size parameter for node-deletion questions.
        #[arg(long)]
        ell: Option<u64>,
        /// Deletion budget for the witness-search questions.
        #[arg(long)]
        limit: Option<u64>,
        /// Forbid independent sets instead of cliques.
        #[arg(long)]
        independent: bool,
    },
    /// Search strategic ballots for a coalition of manipulators.
    Manipulate {
        rule: ManipulationRule,
        file: PathBuf,
        /// Size of the manipulating coalition.
        #[arg(long)]
        manipulators: u64,
        /// Target outcome: a ranking, or a `=`-tied order for borda.
        #[arg(long)]
        target: Option<String>,
        /// Candidate the coalition wants on top (slater-winner).
        #[arg(long)]
        prefer: Option<String>,
    },
    /// Search deletions or additions that make a target a consensus.
    Control {
        action: ControlAction,
        file: PathBuf,
        /// Largest number of deletions or additions allowed.
        #[arg(long)]
        limit: Option<u64>,
        /// Target ranking, `a>b>c`.
        #[arg(long)]
        target: Option<String>,
        /// Election file holding the registrable votes (cav only).
        #[arg(long)]
        pool: Option<PathBuf>,
    },
    /// Transform one problem instance into another and write it out.
    Reduce {
        name: String,
        input: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
        /// Vertex or arc set the transformation consumes.
        #[arg(long)]
        set: Option<String>,
        /// Budget carried into the produced instance.
        #[arg(long)]
        limit: Option<u64>,
        /// Pattern-size parameter consumed by gnd2vcrr.
        #[arg(long)]
        ell: Option<u64>,
        /// Equalize quantifier blocks with fresh variables (qsat2gnd).
        #[arg(long = "pad-blocks")]
        pad_blocks: bool,
    },
    /// Replay a named transformation on seeded random instances and
    /// compare both sides with independent solvers.
    Verify {
        name: String,
        #[arg(long = "max-size")]
        max_size: Option<usize>,
        #[arg(long)]
        trials: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Emit the report as one JSON object instead of text.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Rule {
    Kemeny,
    Slater,
    Borda,
}

#[derive(Clone, Copy, ValueEnum)]
enum Question {
    Kemeny,
    Slater,
    MinFas,
    MinVc,
    MinGnd,
    VcDeletion,
    VcRestriction,
    FasDeletion,
    FasRestriction,
}

#[derive(Clone, Copy, ValueEnum)]
enum ManipulationRule {
    Kemeny,
    Borda,
    SlaterWinner,
}

#[derive(Clone, Copy, ValueEnum)]
enum ControlAction {
    Cdc,
    Cdv,
    Cav,
    SlaterCdc,
}

/// Parses argv and runs the selected subcommand, returning the process
/// exit code. All output goes to stdout, diagnostics to stderr.
pub fn run(argv: impl IntoIterator<Item = String>) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let wants_stderr = err.use_stderr();
            let _ = err.print();
            return if wants_stderr { EXIT_INPUT } else { EXIT_YES };
        }
    };
    let limits = match Limits::from_env() {
        Ok(limits) => limits,
        Err(err) => return fail(&err),
    };
    match dispatch(cli.command, &limits) {
        Ok(code) => code,
        Err(err) => fail(&err),
    }
}

fn fail(err: &Error) -> i32 {
    eprintln!("error: {err}");
    match err {
        Error::SizeLimit { .. } => EXIT_LIMIT,
        Error::Internal(_) => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    }
}

fn dispatch(command: Command, limits: &Limits) -> Result<i32> {
    match command {
        Command::Consensus {
            rule,
            file,
            all,
            json,
        } => cmd_consensus(rule, &file, all, json, limits),
        Command::Recognize {
            question,
            file,
            order,
            set,
            ell,
            limit,
            independent,
        } => cmd_recognize(question, &file, order, set, ell, limit, independent, limits),
        Command::Manipulate {
            rule,
            file,
            manipulators,
            target,
            prefer,
        } => cmd_manipulate(rule, &file, manipulators, target, prefer, limits),
        Command::Control {
            action,
            file,
            limit,
            target,
            pool,
        } => cmd_control(action, &file, limit, target, pool.as_deref(), limits),
        Command::Reduce {
            name,
            input,
            output,
            set,
            limit,
            ell,
            pad_blocks,
        } => cmd_reduce(&name, &input, &output, set, limit, ell, pad_blocks),
        Command::Verify {
            name,
            max_size,
            trials,
            seed,
            json,
        } => cmd_verify(&name, max_size, trials, seed, json, limits),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|err| Error::invalid("input file", format!("{}: {err}", path.display())))
}

fn write_out(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text)
        .map_err(|err| Error::invalid("output file", format!("{}: {err}", path.display())))
}

fn require<T>(what: &'static str, value: Option<T>) -> Result<T> {
    value.ok_or_else(|| Error::invalid(what, "missing; pass the flag or embed the key in the file"))
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String> {
    serde_json::to_string(value).map_err(|err| Error::Internal(format!("json encoding: {err}")))
}

fn yes_no(answer: bool) -> i32 {
    println!("{}", if answer { "yes" } else { "no" });
    if answer {
        EXIT_YES
    } else {
        EXIT_NO
    }
}

/// Witness line with the label, trimmed so an empty witness prints as the
/// bare label.
fn labeled_line(label: &str, body: &str) -> String {
    format!("{label}: {body}").trim_end().to_string()
}

fn vertex_witness(witness: Option<BTreeSet<String>>) -> i32 {
    match witness {
        Some(set) => {
            println!("yes");
            println!(
                "{}",
                labeled_line(
                    "witness",
                    &formats::format_name_set(set.iter().map(String::as_str))
                )
            );
            EXIT_YES
        }
        None => {
            println!("no");
            EXIT_NO
        }
    }
}

fn vote_lines(assignment: &VoteAssignment) {
    for (count, ranking) in assignment {
        println!("{count}: {ranking}");
    }
}

fn assignment_answer(assignment: Option<VoteAssignment>) -> i32 {
    match assignment {
        Some(votes) => {
            println!("yes");
            vote_lines(&votes);
            EXIT_YES
        }
        None => {
            println!("no");
            EXIT_NO
        }
    }
}

fn print_consensus_set(set: &ConsensusSet, json: bool) -> Result<()> {
    if json {
        println!("{}", to_json(set)?);
    } else {
        println!("score: {}", set.optimum);
        for ranking in &set.consensuses {
            println!("{ranking}");
        }
    }
    Ok(())
}

fn cmd_consensus(rule: Rule, file: &Path, all: bool, json: bool, limits: &Limits) -> Result<i32> {
    let election = formats::parse_election(&read(file)?)?;
    // Default: the full optimum set where enumeration is in bounds, one
    // witness consensus above that. `--all` forces full enumeration; the
    // score-DP candidate bound and the count cap still guard it.
    let mut enumeration = limits.clone();
    if all {
        enumeration.max_enumeration_candidates = usize::MAX;
    }
    let full = all || election.candidate_count() <= enumeration.max_enumeration_candidates;
    match rule {
        Rule::Kemeny => {
            let set = kemeny_consensus_set(&election, &enumeration, full)?;
            print_consensus_set(&set, json)?;
        }
        Rule::Slater => {
            let (digraph, weights) = election_slater_input(&election);
            let set = slater_consensus_set(&digraph, &weights, &enumeration, full)?;
            print_consensus_set(&set, json)?;
        }
        Rule::Borda => {
            let scores = borda_scores(&election);
            let consensus = borda_consensus(&election);
            if json {
                let score_map: serde_json::Map<String, serde_json::Value> = scores
                    .iter()
                    .map(|(c, s)| (c.name().to_string(), serde_json::json!(s)))
                    .collect();
                let doc = serde_json::json!({
                    "consensus": consensus.to_string(),
                    "scores": score_map,
                });
                println!("{}", to_json(&doc)?);
            } else {
                println!("{consensus}");
                let listing = scores
                    .iter()
                    .map(|(c, s)| format!("{}={s}", c.name()))
                    .collect::<Vec<_>>()
                    .join(",");
                println!("scores: {listing}");
            }
        }
    }
    Ok(EXIT_YES)
}

#[allow(clippy::too_many_arguments)]
fn cmd_recognize(
    question: Question,
    file: &Path,
    order: Option<String>,
    set: Option<String>,
    ell: Option<u64>,
    limit: Option<u64>,
    independent: bool,
    limits: &Limits,
) -> Result<i32> {
    let text = read(file)?;
    match question {
        Question::Kemeny => {
            let (election, keys) = formats::parse_election_doc(&text)?;
            let order: Ranking = require("order", order.or(keys.order))?.parse()?;
            Ok(yes_no(is_kemeny_consensus(&election, &order, limits)?))
        }
        Question::Slater => {
            let (election, keys) = formats::parse_election_doc(&text)?;
            let order: Ranking = require("order", order.or(keys.order))?.parse()?;
            let (digraph, weights) = election_slater_input(&election);
            Ok(yes_no(is_slater_consensus(
                &digraph, &weights, &order, limits,
            )?))
        }
        Question::MinFas => {
            let (digraph, keys) = formats::parse_digraph_doc(&text)?;
            let arcs = formats::parse_arc_set(&require("set", set.or(keys.set))?)?;
            Ok(yes_no(is_minimum_fas(&digraph, &arcs, limits)?))
        }
        Question::MinVc => {
            let (graph, keys) = formats::parse_graph_doc(&text)?;
            let cover = formats::parse_name_set(&require("set", set.or(keys.set))?)?;
            Ok(yes_no(is_minimum_vertex_cover(&graph, &cover, limits)?))
        }
        Question::MinGnd => {
            let (graph, keys) = formats::parse_graph_doc(&text)?;
            let solution = formats::parse_name_set(&require("set", set.or(keys.set))?)?;
            let ell = require("ell", ell.or(keys.ell))?;
            let answer = if independent {
                is_minimum_gnd_prime(&graph, ell, &solution, limits)?
            } else {
                is_minimum_gnd(&graph, ell, &solution, limits)?
            };
            Ok(yes_no(answer))
        }
        Question::VcDeletion => {
            let (graph, keys) = formats::parse_graph_doc(&text)?;
            let cover = formats::parse_name_set(&require("set", set.or(keys.set))?)?;
            let budget = limit.or(keys.limit).unwrap_or(0);
            Ok(vertex_witness(vcr_deletion(
                &graph, budget, &cover, limits,
            )?))
        }
        Question::VcRestriction => {
            let (graph, keys) = formats::parse_graph_doc(&text)?;
            let cover = formats::parse_name_set(&require("set", set.or(keys.set))?)?;
            let budget = limit.or(keys.limit).unwrap_or(0);
            Ok(vertex_witness(vcr_restriction(
                &graph, budget, &cover, limits,
            )?))
        }
        Question::FasDeletion => {
            let (digraph, keys) = formats::parse_digraph_doc(&text)?;
            let arcs = formats::parse_arc_set(&require("set", set.or(keys.set))?)?;
            let budget = limit.or(keys.limit).unwrap_or(0);
            Ok(vertex_witness(fasr_deletion(
                &digraph, budget, &arcs, limits,
            )?))
        }
        Question::FasRestriction => {
            let (digraph, keys) = formats::parse_digraph_doc(&text)?;
            let arcs = formats::parse_arc_set(&require("set", set.or(keys.set))?)?;
            let budget = limit.or(keys.limit).unwrap_or(0);
            Ok(vertex_witness(fasr_restriction(
                &digraph, budget, &arcs, limits,
            )?))
        }
    }
}

fn cmd_manipulate(
    rule: ManipulationRule,
    file: &Path,
    manipulators: u64,
    target: Option<String>,
    prefer: Option<String>,
    limits: &Limits,
) -> Result<i32> {
    let election = formats::parse_election(&read(file)?)?;
    match rule {
        ManipulationRule::Kemeny => {
            let target: Ranking = require("target", target)?.parse()?;
            Ok(assignment_answer(kemeny_manipulation_to_consensus(
                &election,
                manipulators,
                &target,
                limits,
            )?))
        }
        ManipulationRule::Borda => {
            let target: WeakOrder = require("target", target)?.parse()?;
            Ok(assignment_answer(borda_manipulation_to_consensus(
                &election,
                manipulators,
                &target,
                limits,
            )?))
        }
        ManipulationRule::SlaterWinner => {
            let preferred: Candidate = require("prefer", prefer)?.parse()?;
            Ok(assignment_answer(slater_manipulation_to_winner(
                &election,
                manipulators,
                &preferred,
                limits,
            )?))
        }
    }
}

fn cmd_control(
    action: ControlAction,
    file: &Path,
    limit: Option<u64>,
    target: Option<String>,
    pool: Option<&Path>,
    limits: &Limits,
) -> Result<i32> {
    let (election, keys) = formats::parse_election_doc(&read(file)?)?;
    let budget = require("limit", limit.or(keys.limit))?;
    let target: Ranking = require("target", target.or(keys.order))?.parse()?;
    match action {
        ControlAction::Cdc => {
            let witness = kemeny_cdc_to_consensus(&election, budget, &target, limits)?;
            Ok(candidate_witness(witness))
        }
        ControlAction::SlaterCdc => {
            let witness = slater_cdc_to_consensus(&election, budget, &target, limits)?;
            Ok(candidate_witness(witness))
        }
        ControlAction::Cdv => Ok(assignment_answer(kemeny_cdv_to_consensus(
            &election, budget, &target, limits,
        )?)),
        ControlAction::Cav => {
            let pool_path = require("pool", pool)?;
            let pool_election = formats::parse_election(&read(pool_path)?)?;
            let pool_votes: Vec<(u64, Ranking)> = pool_election
                .vote_groups()
                .iter()
                .map(|g| (g.count, g.ranking.clone()))
                .collect();
            Ok(assignment_answer(kemeny_cav_to_consensus(
                &election,
                budget,
                &pool_votes,
                &target,
                limits,
            )?))
        }
    }
}

fn candidate_witness(witness: Option<BTreeSet<Candidate>>) -> i32 {
    match witness {
        Some(deleted) => {
            println!("yes");
            println!(
                "{}",
                labeled_line(
                    "delete",
                    &formats::format_name_set(deleted.iter().map(Candidate::name))
                )
            );
            EXIT_YES
        }
        None => {
            println!("no");
            EXIT_NO
        }
    }
}

fn cmd_reduce(
    name: &str,
    input: &Path,
    output: &Path,
    set: Option<String>,
    limit: Option<u64>,
    ell: Option<u64>,
    pad_blocks: bool,
) -> Result<i32> {
    let text = read(input)?;
    let produced = match name {
        "vc2fas" | "vc_to_fas" => {
            let (graph, keys) = formats::parse_graph_doc(&text)?;
            let cover = formats::parse_name_set(&require("set", set.or(keys.set))?)?;
            let (digraph, image) = vc_to_fas(&graph, &cover)?;
            formats::serialize_digraph_doc(
                &digraph,
                &DocKeys {
                    set: Some(formats::format_arc_set(
                        image.iter().map(|(t, h)| (t.as_str(), h.as_str())),
                    )),
                    ..DocKeys::default()
                },
            )
        }
        "g2election" | "election_from_digraph" | "e_of_g_wmg" => {
            let digraph = formats::parse_digraph(&text)?;
            formats::serialize_election(&election_from_digraph(&digraph)?)
        }
        "fas2rec" | "fasr_to_kemeny_recognition" => {
            let (digraph, keys) = formats::parse_digraph_doc(&text)?;
            let arcs = formats::parse_arc_set(&require("set", set.or(keys.set))?)?;
            let instance = fasr_to_kemeny_recognition(&digraph, &arcs)?;
            formats::serialize_election_doc(
                &instance.election,
                &DocKeys {
                    order: Some(instance.order.to_string()),
                    reject: instance.rejected,
                    ..DocKeys::default()
                },
            )
        }
        "phi2phiprime" | "phi_to_phi_prime" => {
            let formula = formats::parse_cnf(&text)?;
            formats::serialize_cnf(&phi_to_phi_prime(&formula)?)
        }
        "qsat2gnd" | "qsat2_to_gnd_prime" => {
            let mut instance = formats::parse_qsat2(&text)?;
            if pad_blocks {
                instance = instance.pad_blocks()?;
            }
            let image = qsat2_to_gnd_prime(&instance)?;
            formats::serialize_graph_doc(
                &image.graph,
                &DocKeys {
                    set: Some(formats::format_name_set(
                        image.solution.iter().map(String::as_str),
                    )),
                    limit: Some(image.budget),
                    ell: Some(image.ell),
                    ..DocKeys::default()
                },
            )
        }
        "gnd2vcrr" | "gnd_to_vcrr" => {
            let (graph, keys) = formats::parse_graph_doc(&text)?;
            let budget = limit.or(keys.limit).unwrap_or(0);
            let ell = require("ell", ell.or(keys.ell))?;
            let image = gnd_to_vcrr(&graph, budget, ell)?;
            formats::serialize_graph_doc(
                &image.graph,
                &DocKeys {
                    set: Some(formats::format_name_set(
                        image.cover.iter().map(String::as_str),
                    )),
                    limit: Some(image.budget),
                    ..DocKeys::default()
                },
            )
        }
        "vcrr2fasrr" | "vcrr_to_fasrr" | "vcrd2fasrd" | "vcrd_to_fasrd" => {
            let (graph, keys) = formats::parse_graph_doc(&text)?;
            let cover = formats::parse_name_set(&require("set", set.or(keys.set))?)?;
            let budget = limit.or(keys.limit).unwrap_or(0);
            let image = if name.starts_with("vcrr") {
                vcrr_to_fasrr(&graph, budget, &cover)?
            } else {
                vcrd_to_fasrd(&graph, budget, &cover)?
            };
            formats::serialize_digraph_doc(
                &image.digraph,
                &DocKeys {
                    set: Some(formats::format_arc_set(
                        image.arcs.iter().map(|(t, h)| (t.as_str(), h.as_str())),
                    )),
                    limit: Some(image.budget),
                    ..DocKeys::default()
                },
            )
        }
        "fasrr2cdc" | "fasrr_to_kemeny_cdc" => {
            let (digraph, keys) = formats::parse_digraph_doc(&text)?;
            let arcs = formats::parse_arc_set(&require("set", set.or(keys.set))?)?;
            let budget = limit.or(keys.limit).unwrap_or(0);
            let instance = fasrr_to_kemeny_cdc(&digraph, budget, &arcs)?;
            formats::serialize_election_doc(
                &instance.election,
                &DocKeys {
                    order: Some(instance.order.to_string()),
                    limit: Some(instance.budget),
                    reject: instance.rejected,
                    ..DocKeys::default()
                },
            )
        }
        other => return Err(Error::UnknownReduction(other.to_string())),
    };
    write_out(output, &produced)?;
    Ok(EXIT_YES)
}

fn cmd_verify(
    name: &str,
    max_size: Option<usize>,
    trials: Option<u64>,
    seed: u64,
    json: bool,
    limits: &Limits,
) -> Result<i32> {
    let report = verify_reduction(name, max_size, trials, seed, limits)?;
    if json {
        println!("{}", to_json(&report)?);
    } else {
        println!("reduction: {}", report.name);
        println!("max-size: {}", report.max_size);
        println!("trials: {}", report.trials);
        println!("seed: {}", report.seed);
        println!("agreements: {}", report.agreements);
        println!("failures: {}", report.failures.len());
        for failure in &report.failures {
            println!(
                "trial {}: left={} right={}",
                failure.trial, failure.left, failure.right
            );
            for line in failure.instance.lines() {
                println!("  {line}");
            }
        }
    }
    Ok(if report.all_agreed() {
        EXIT_YES
    } else {
        EXIT_NO
    })
}
