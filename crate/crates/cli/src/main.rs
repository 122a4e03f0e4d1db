//! `delaygame`: generate gadget automata, translate weak Muller automata to
//! parity form, check lasso membership, solve delay games and run the
//! desk-scale verification checks.

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use delaygame::engine::{
    solve_delay_game, InputStrategy, IoAlphabet, OutputStrategy, SolvedDelayGame, DEFAULT_NODE_BUDGET,
};
use delaygame::gadgets::{self, CarryCheck};
use delaygame::hoa::to_hoa;
use delaygame::jpair::{verify_pair_bounds, VerifyMode};
use delaygame::random::random_weak_muller;
use delaygame::strategies::*;
use delaygame::translate::color_profile;
use delaygame::{
    lasso_accepts, minimal_lookahead, parse_automaton, serialize_automaton, simulate_play, weak_muller_to_parity,
    Automaton, Lasso, Player,
};

use report::{Format, RunReport};

#[derive(Debug, Parser)]
#[command(name = "delaygame", version, about = "Weak Muller automata and delay games")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value = "markdown", global = true)]
    format: Format,
    /// Include wall-clock time in reports (makes them non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Bitstore,
    Copycheck,
    Pn,
    Addgadget,
    Sumpair,
    Guessbit,
    Addrcheck,
    Superblock,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PnRepr {
    /// Explicit weak Muller condition.
    Explicit,
    /// Reachability condition.
    Reach,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Carry {
    Strict,
    Modular,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a gadget automaton (or a superblock word).
    Gen {
        family: Family,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "explicit")]
        repr: PnRepr,
        #[arg(long, value_enum, default_value = "strict")]
        carry: Carry,
        /// Value to encode (superblock only).
        #[arg(long)]
        value: Option<u64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Translate a weak Muller automaton to a parity automaton.
    Translate {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Emit HOA instead of JSON.
        #[arg(long)]
        hoa: bool,
    },
    /// Decide membership of the lasso `spoke · cycle^ω`.
    Member {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long, default_value = "")]
        spoke: String,
        #[arg(long)]
        cycle: String,
    },
    /// Solve the delay game with constant lookahead.
    Solve {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long)]
        lookahead: usize,
        #[arg(long, env = "DELAYGAME_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
        budget: usize,
    },
    /// Find the smallest lookahead with which Player O wins.
    Lookahead {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long)]
        max: usize,
        #[arg(long, env = "DELAYGAME_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
        budget: usize,
    },
    /// Play two strategies against each other.
    Play {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long)]
        lookahead: usize,
        /// random, const:TOKEN, pn-spoiler, sumpair-spoiler, sumpair-random, arena
        #[arg(long)]
        strategy_i: String,
        /// random, const:TOKEN, copycheck, pn, pn-lenient, pn-greedy, sumpair,
        /// sumpair-lenient, sumpair-greedy, sumpair-random, arena
        #[arg(long)]
        strategy_o: String,
        /// Family parameter for the gadget strategies.
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 1000)]
        rounds: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, env = "DELAYGAME_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
        budget: usize,
    },
    /// Desk-scale checks of the combinatorial and translation results.
    Verify {
        #[command(subcommand)]
        check: Verify,
    },
}

#[derive(Debug, Subcommand)]
enum Verify {
    /// Count words of length 2^n over n letters that contain a bad j-pair.
    Jpair {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "samples")]
        exhaustive: bool,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Both bad-pair bounds for n = 1..=max-n.
    PairBounds {
        #[arg(long)]
        max_n: usize,
        /// Sample size used when n is too large for exhaustive checking.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Source and translated automata agree on all short lassos.
    Translation {
        #[arg(long, default_value_t = 200)]
        det: usize,
        #[arg(long, default_value_t = 100)]
        nondet: usize,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Once Player O wins, it keeps winning with more lookahead.
    Monotone {
        #[arg(long)]
        automaton: PathBuf,
        #[arg(long, default_value_t = 10)]
        max: usize,
        #[arg(long, env = "DELAYGAME_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
        budget: usize,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Refused(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn refuse(e: impl std::fmt::Display) -> CliError {
    CliError::Refused(e.to_string())
}

/// What a command produced: text for standard output and whether the
/// command's own check passed.
struct Output {
    text: Text,
    passed: bool,
}

enum Text {
    Report(RunReport),
    Raw(String),
}

impl Output {
    fn report(r: RunReport) -> Self {
        Output { text: Text::Report(r), passed: true }
    }

    fn checked(r: RunReport, passed: bool) -> Self {
        Output { text: Text::Report(r), passed }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let echo = std::iter::once("delaygame".to_string()).chain(std::env::args().skip(1)).collect::<Vec<_>>().join(" ");
    let start = Instant::now();
    match run(&cli, echo) {
        Ok(out) => {
            match out.text {
                Text::Raw(s) => print!("{s}"),
                Text::Report(mut r) => {
                    if cli.timing {
                        r.timing(start.elapsed());
                    }
                    print!("{}", r.render(cli.format));
                }
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Usage(_) => 2,
                _ => 1,
            })
        }
    }
}

fn load(path: &Path) -> Result<Automaton, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?;
    parse_automaton(&text).map_err(|e| CliError::Refused(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.into(), source })
}

fn run(cli: &Cli, echo: String) -> Result<Output, CliError> {
    let mut r = RunReport::new(echo);
    match &cli.command {
        Command::Gen { family, n, repr, carry, value, output } => {
            gen(&mut r, *family, *n, *repr, *carry, *value, output.as_deref())
        }
        Command::Translate { automaton, output, hoa } => translate(&mut r, automaton, output.as_deref(), *hoa),
        Command::Member { automaton, spoke, cycle } => {
            let a = load(automaton)?;
            let lasso = Lasso::parse(&a, spoke, cycle).map_err(refuse)?;
            let accepted = lasso_accepts(&a, &lasso).map_err(refuse)?;
            r.param("automaton", automaton.display()).param("spoke", spoke).param("cycle", cycle);
            r.verdict("verdict", if accepted { "ACCEPT" } else { "REJECT" });
            Ok(Output::report(r))
        }
        Command::Solve { automaton, lookahead, budget } => {
            let a = load(automaton)?;
            let solved = solve_delay_game(&a, *lookahead, *budget).map_err(refuse)?;
            let arena = &solved.arena;
            r.param("automaton", automaton.display()).param("lookahead", lookahead).param("budget", budget);
            r.columns(&["k", "winner", "nodes", "edges"]).row(vec![
                lookahead.to_string(),
                solved.winner().to_string(),
                arena.num_nodes().to_string(),
                arena.game().num_edges().to_string(),
            ]);
            r.verdict("winner", solved.winner()).budget(arena.num_nodes(), *budget);
            Ok(Output::report(r))
        }
        Command::Lookahead { automaton, max, budget } => {
            let a = load(automaton)?;
            let rep = minimal_lookahead(&a, *max, *budget).map_err(refuse)?;
            r.param("automaton", automaton.display()).param("max", max).param("budget", budget);
            r.columns(&["k", "winner", "nodes"]);
            for s in &rep.steps {
                r.row(vec![s.k.to_string(), s.winner.to_string(), s.nodes.to_string()]);
            }
            r.verdict("minimal", rep.minimal.map_or("none".to_string(), |k| k.to_string()));
            if let Some(e) = &rep.stopped {
                r.verdict("largest decided", rep.largest_decided().map_or("none".to_string(), |k| k.to_string()));
                r.verdict("stopped", e);
            }
            let peak = rep.steps.iter().map(|s| s.nodes).max().unwrap_or(0);
            r.budget(peak, *budget);
            Ok(Output::report(r))
        }
        Command::Play { automaton, lookahead, strategy_i, strategy_o, n, rounds, seed, budget } => {
            let a = load(automaton)?;
            play(&mut r, &a, automaton, *lookahead, strategy_i, strategy_o, *n, *rounds, *seed, *budget)
        }
        Command::Verify { check } => verify(&mut r, check),
    }
}

fn gen(
    r: &mut RunReport,
    family: Family,
    n: usize,
    repr: PnRepr,
    carry: Carry,
    value: Option<u64>,
    output: Option<&Path>,
) -> Result<Output, CliError> {
    let name = family.to_possible_value().expect("no skipped variants").get_name().to_string();
    r.param("family", &name).param("n", n);
    let a = match family {
        Family::Bitstore => gadgets::bit_store(n),
        Family::Copycheck => gadgets::copy_check(n),
        Family::Pn => {
            r.param("repr", if repr == PnRepr::Explicit { "explicit" } else { "reach" });
            match repr {
                PnRepr::Explicit => gadgets::pn_explicit_wdma(n),
                PnRepr::Reach => gadgets::pn_reach(n),
            }
        }
        Family::Addgadget => gadgets::add_gadget(n),
        Family::Sumpair => {
            r.param("carry", if carry == Carry::Strict { "strict" } else { "modular" });
            let c = match carry {
                Carry::Strict => CarryCheck::Strict,
                Carry::Modular => CarryCheck::Modular,
            };
            gadgets::sum_pair_automaton(n, c)
        }
        Family::Guessbit => gadgets::guess_bit(n),
        Family::Addrcheck => gadgets::addr_update_checker(n),
        Family::Superblock => {
            let value = value.ok_or_else(|| CliError::Usage("gen superblock needs --value".into()))?;
            let word = gadgets::superblock_encode(n, value).map_err(refuse)?;
            r.param("value", value);
            if let Some(path) = output {
                write(path, &format!("{word}\n"))?;
                r.verdict("written", path.display());
            }
            r.verdict("word", word);
            return Ok(Output::report(r.clone()));
        }
    }
    .map_err(refuse)?;
    let text = serialize_automaton(&a);
    let Some(path) = output else { return Ok(Output { text: Text::Raw(text), passed: true }) };
    write(path, &text)?;
    r.verdict("states", a.num_states())
        .verdict("transitions", a.num_transitions())
        .verdict("deterministic", a.is_deterministic())
        .verdict("written", path.display());
    Ok(Output::report(r.clone()))
}

fn translate(r: &mut RunReport, automaton: &Path, output: Option<&Path>, hoa: bool) -> Result<Output, CliError> {
    let a = load(automaton)?;
    let t = weak_muller_to_parity(&a).map_err(refuse)?;
    let text = if hoa { to_hoa(&t.automaton).map_err(refuse)? } else { serialize_automaton(&t.automaton) };
    let Some(path) = output else { return Ok(Output { text: Text::Raw(text), passed: true }) };
    write(path, &text)?;
    let profile = color_profile(&t);
    r.param("automaton", automaton.display()).param("format", if hoa { "hoa" } else { "json" });
    r.columns(&["color", "states"]);
    for (c, count) in &profile.colors {
        r.row(vec![c.to_string(), count.to_string()]);
    }
    r.verdict("source states", a.num_states())
        .verdict("states", profile.states)
        .verdict("max growth", profile.max_growth)
        .verdict("written", path.display());
    Ok(Output::report(r.clone()))
}

fn need_n(name: &str, n: Option<usize>) -> Result<usize, CliError> {
    n.ok_or_else(|| CliError::Usage(format!("strategy `{name}` needs --n")))
}

fn const_token(tokens: &[String], tok: &str) -> Result<usize, CliError> {
    tokens.iter().position(|t| t == tok).ok_or_else(|| CliError::Usage(format!("unknown token `{tok}`")))
}

fn input_strategy<'a>(
    name: &str,
    io: &IoAlphabet,
    n: Option<usize>,
    seed: u64,
    solved: Option<&'a SolvedDelayGame>,
) -> Result<Box<dyn InputStrategy + 'a>, CliError> {
    Ok(match name {
        "random" => Box::new(RandomInput::from_seed(seed, 8)),
        "pn-spoiler" => Box::new(IPnSpoiler::new(need_n(name, n)?)),
        "sumpair-spoiler" => Box::new(ISumPairSpoiler::new(need_n(name, n)?)),
        "sumpair-random" => Box::new(RandomSumPairInput::new(need_n(name, n)?, seed)),
        "arena" => Box::new(ArenaInput::new(solved.expect("arena solved beforehand"))),
        s => match s.strip_prefix("const:") {
            Some(tok) => Box::new(ConstantInput(const_token(io.inputs(), tok)?)),
            None => return Err(CliError::Usage(format!("unknown input strategy `{s}`"))),
        },
    })
}

fn output_strategy<'a>(
    name: &str,
    io: &IoAlphabet,
    n: Option<usize>,
    seed: u64,
    solved: Option<&'a SolvedDelayGame>,
) -> Result<Box<dyn OutputStrategy + 'a>, CliError> {
    Ok(match name {
        "random" => Box::new(RandomOutput::from_seed(seed.wrapping_add(1), 8)),
        "copycheck" => Box::new(OCopyCheck::new(need_n(name, n)?)),
        "pn" => Box::new(OPn::new(need_n(name, n)?)),
        "pn-lenient" => Box::new(OPn::lenient(need_n(name, n)?)),
        "pn-greedy" => Box::new(GreedyPnOutput::new(need_n(name, n)?)),
        "sumpair" => Box::new(OSumPair::new(need_n(name, n)?)),
        "sumpair-lenient" => Box::new(OSumPair::lenient(need_n(name, n)?)),
        "sumpair-greedy" => Box::new(OSumPair::greedy(need_n(name, n)?)),
        "sumpair-random" => Box::new(RandomSumPairOutput::new(need_n(name, n)?, seed.wrapping_add(1))),
        "arena" => Box::new(ArenaOutput::new(solved.expect("arena solved beforehand"))),
        s => match s.strip_prefix("const:") {
            Some(tok) => Box::new(ConstantOutput(const_token(io.outputs(), tok)?)),
            None => return Err(CliError::Usage(format!("unknown output strategy `{s}`"))),
        },
    })
}

#[allow(clippy::too_many_arguments)]
fn play(
    r: &mut RunReport,
    a: &Automaton,
    path: &Path,
    k: usize,
    si: &str,
    so: &str,
    n: Option<usize>,
    rounds: usize,
    seed: u64,
    budget: usize,
) -> Result<Output, CliError> {
    let io = IoAlphabet::of(a).map_err(refuse)?;
    let solved = if si == "arena" || so == "arena" {
        let s = solve_delay_game(a, k, budget).map_err(refuse)?;
        r.budget(s.arena.num_nodes(), budget);
        Some(s)
    } else {
        None
    };
    let mut pi = input_strategy(si, &io, n, seed, solved.as_ref())?;
    let mut po = output_strategy(so, &io, n, seed, solved.as_ref())?;
    let t = simulate_play(a, k, pi.as_mut(), po.as_mut(), rounds).map_err(refuse)?;
    r.param("automaton", path.display())
        .param("lookahead", k)
        .param("strategy-i", pi.name())
        .param("strategy-o", po.name())
        .param("rounds", rounds)
        .param("seed", seed);
    r.columns(&["round", "input", "output"]);
    for (i, &y) in t.outputs.iter().enumerate() {
        r.row(vec![i.to_string(), io.inputs()[t.inputs[i]].clone(), io.outputs()[y].clone()]);
    }
    let word = |ls: &[usize]| ls.iter().map(|&l| a.alphabet()[l].to_string()).collect::<Vec<_>>().join(" ");
    r.verdict("rounds played", t.rounds);
    if let Some(l) = &t.lasso {
        r.verdict("spoke", word(l.spoke())).verdict("cycle", word(l.cycle()));
    }
    r.verdict("verdict", t.verdict);
    Ok(Output::report(r.clone()))
}

fn all_lassos(letters: usize, max: usize) -> Vec<Lasso> {
    let mut words = vec![Vec::new()];
    let mut by_len = vec![words.clone()];
    for _ in 0..max {
        words = words.iter().flat_map(|w| (0..letters).map(move |l| [w.as_slice(), &[l]].concat())).collect();
        by_len.push(words.clone());
    }
    let mut out = Vec::new();
    for u in by_len.iter().flatten() {
        for v in by_len[1..].iter().flatten() {
            out.push(Lasso::new(u.clone(), v.clone()).expect("cycle is non-empty"));
        }
    }
    out
}

fn verify(r: &mut RunReport, check: &Verify) -> Result<Output, CliError> {
    match check {
        Verify::Jpair { n, exhaustive, samples, seed } => {
            let mode = match (exhaustive, samples) {
                (_, Some(count)) => VerifyMode::Sampled { count: *count, seed: *seed },
                _ => VerifyMode::Exhaustive,
            };
            let rep = verify_pair_bounds(*n, mode).map_err(refuse)?;
            r.param("n", n).param("mode", mode_name(mode));
            r.verdict("words with a bad pair", format!("{}/{}", rep.with_pair, rep.checked));
            r.verdict("free word length", rep.free_word_len).verdict("free word has no bad pair", rep.free_word_ok);
            let passed = rep.passed();
            r.verdict("result", pass(passed));
            Ok(Output::checked(r.clone(), passed))
        }
        Verify::PairBounds { max_n, samples, seed } => {
            r.param("max n", max_n).param("samples", samples).param("seed", seed);
            r.columns(&["n", "mode", "checked", "with pair", "free word length", "free word ok"]);
            let mut passed = true;
            for n in 1..=*max_n {
                let mode = if n <= 3 {
                    VerifyMode::Exhaustive
                } else {
                    VerifyMode::Sampled { count: *samples, seed: seed.wrapping_add(n as u64) }
                };
                let rep = verify_pair_bounds(n, mode).map_err(refuse)?;
                passed &= rep.passed();
                r.row(vec![
                    n.to_string(),
                    mode_name(mode).to_string(),
                    rep.checked.to_string(),
                    rep.with_pair.to_string(),
                    rep.free_word_len.to_string(),
                    rep.free_word_ok.to_string(),
                ]);
            }
            r.verdict("result", pass(passed));
            Ok(Output::checked(r.clone(), passed))
        }
        Verify::Translation { det, nondet, max_len, seed } => {
            r.param("det", det).param("nondet", nondet).param("max len", max_len).param("seed", seed);
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let lassos = all_lassos(2, *max_len);
            r.columns(&["kind", "automata", "lassos", "agree"]);
            let mut passed = true;
            for (kind, count, max_states, deterministic) in [("deterministic", *det, 4, true), ("non-deterministic", *nondet, 3, false)] {
                let (mut total, mut agree) = (0usize, 0usize);
                for _ in 0..count {
                    let states = rng.gen_range(1..=max_states);
                    let a = random_weak_muller(&mut rng, states, 2, deterministic);
                    let t = weak_muller_to_parity(&a).map_err(refuse)?;
                    for l in &lassos {
                        let src = lasso_accepts(&a, l).map_err(refuse)?;
                        let dst = lasso_accepts(&t.automaton, l).map_err(refuse)?;
                        total += 1;
                        agree += usize::from(src == dst);
                    }
                }
                passed &= agree == total;
                r.row(vec![kind.into(), count.to_string(), total.to_string(), agree.to_string()]);
            }
            r.verdict("result", pass(passed));
            Ok(Output::checked(r.clone(), passed))
        }
        Verify::Monotone { automaton, max, budget } => {
            let a = load(automaton)?;
            r.param("automaton", automaton.display()).param("max", max).param("budget", budget);
            r.columns(&["k", "winner", "nodes"]);
            let mut o_from = None;
            let mut passed = true;
            let mut peak = 0;
            let mut decided = 0;
            for k in 1..=*max {
                let solved = match solve_delay_game(&a, k, *budget) {
                    Ok(s) => s,
                    Err(e @ delaygame::engine::EngineError::Budget { .. }) => {
                        r.verdict("stopped", e);
                        break;
                    }
                    Err(e) => return Err(refuse(e)),
                };
                let w = solved.winner();
                peak = peak.max(solved.arena.num_nodes());
                decided = k;
                r.row(vec![k.to_string(), w.to_string(), solved.arena.num_nodes().to_string()]);
                if o_from.is_some() && w != Player::O {
                    passed = false;
                }
                if w == Player::O && o_from.is_none() {
                    o_from = Some(k);
                }
            }
            r.verdict("largest decided", decided);
            r.verdict("O wins from", o_from.map_or("none".to_string(), |k| k.to_string()));
            r.verdict("monotone", pass(passed)).budget(peak, *budget);
            Ok(Output::checked(r.clone(), passed))
        }
    }
}

fn mode_name(mode: VerifyMode) -> String {
    match mode {
        VerifyMode::Exhaustive => "exhaustive".into(),
        VerifyMode::Sampled { count, seed } => format!("sampled({count}, seed {seed})"),
    }
}

fn pass(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}
