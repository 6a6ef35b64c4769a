//! The `faircheck` command line. [`run`] takes the argument vector and
//! returns the exit code together with everything meant for standard output,
//! so tests can drive it without spawning processes.
//!
//! Exit codes: 0 when the check holds, 1 when it fails (a witness is
//! printed), 2 for usage and input errors.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use faircheck::abstraction::{
    abstract_behavior, compute_xtd, image_automaton, is_weakly_continuation_closed, preserve_check, Extension,
    Homomorphism,
};
use faircheck::automata::Finite;
use faircheck::format::{parse_automaton, parse_homomorphism, print_automaton, ParsedAutomaton};
use faircheck::pltl::{
    evaluate_lasso, parse_formula, to_positive_normal_form, transform, Formula, Labeling, Transform,
};
use faircheck::relprops::{
    is_machine_closed, is_relative_liveness, is_relative_safety, is_safety_property, satisfies, Property, Verdict,
    Witness,
};
use faircheck::synthesis::{synthesize_fair_impl, verify_fair_impl, FairLts};
use faircheck::{Alphabet, BuchiAutomaton, Error, FinAutomaton, LassoWord};

pub const HOLDS: i32 = 0;
pub const FAILS: i32 = 1;
pub const USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "faircheck", version, about = "Check temporal properties within fairness and across abstractions")]
struct Cli {
    /// Print a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Report the wall-clock time of the command.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide relative liveness (rl), relative safety (rs) or plain satisfaction (sat).
    Check {
        kind: CheckKind,
        #[arg(long)]
        system: PathBuf,
        #[command(flatten)]
        property: PropertyArgs,
    },
    /// Check that every prefix of the system extends into the sub-behavior.
    MachineClosed {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        sub: PathBuf,
    },
    /// Decide whether a property is a safety property.
    SafetyClass {
        #[command(flatten)]
        property: PropertyArgs,
        #[command(flatten)]
        alphabet: AlphabetArgs,
    },
    /// Print the abstraction h(L) of a transition system.
    Abstract {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        hom: PathBuf,
    },
    /// Check weak continuation-closure of a homomorphism on a system.
    Wcc {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        hom: PathBuf,
    },
    /// Check a formula on the abstraction and its translation on the system.
    Preserve {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        hom: PathBuf,
        #[arg(long)]
        formula: String,
    },
    /// Rewrite a formula into positive normal form or apply N, T or R.
    Transform {
        #[arg(long)]
        formula: String,
        #[arg(long)]
        mode: Mode,
    },
    /// Pad maximal words with `#` (relative to a homomorphism if given).
    Xtd {
        #[arg(long)]
        system: PathBuf,
        #[arg(long)]
        hom: Option<PathBuf>,
    },
    /// Build a fair implementation of the system satisfying the property.
    Synthesize {
        #[arg(long)]
        system: PathBuf,
        #[command(flatten)]
        property: PropertyArgs,
    },
    /// Check a fair implementation (Büchi file, accepting states are the marks).
    VerifyImpl {
        #[arg(long = "impl")]
        implementation: PathBuf,
        #[arg(long)]
        system: PathBuf,
        #[command(flatten)]
        property: PropertyArgs,
    },
    /// Evaluate a formula on a lasso `stem;cycle` under the canonical labeling.
    Eval {
        #[arg(long)]
        lasso: String,
        #[arg(long)]
        formula: String,
        #[command(flatten)]
        alphabet: AlphabetArgs,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CheckKind {
    Rl,
    Rs,
    Sat,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Mode {
    #[value(name = "N")]
    N,
    #[value(name = "T")]
    T,
    #[value(name = "R")]
    R,
    Pnf,
}

#[derive(Args, Debug)]
struct PropertyArgs {
    /// PLTL formula over the letters of the alphabet.
    #[arg(long, conflicts_with_all = ["property", "complement"])]
    formula: Option<String>,
    /// Büchi file accepting the property.
    #[arg(long, requires = "complement")]
    property: Option<PathBuf>,
    /// Büchi file accepting the complement of the property.
    #[arg(long, requires = "property")]
    complement: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct AlphabetArgs {
    /// Space-separated letters.
    #[arg(long, conflicts_with = "system")]
    alphabet: Option<String>,
    /// Take the alphabet from this automaton file.
    #[arg(long)]
    system: Option<PathBuf>,
}

/// Machine-readable record of one invocation. Keys serialize in a fixed
/// order, so reports are byte-stable.
#[derive(Serialize, Debug)]
pub struct RunReport {
    pub command: Vec<String>,
    pub exit_code: i32,
    /// SHA-256 of every input file, keyed by option name.
    pub inputs: BTreeMap<String, String>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<f64>,
}

struct Outcome {
    code: i32,
    lines: Vec<String>,
    result: Value,
}

enum Failure {
    Usage(String),
    Input(String),
}

impl Failure {
    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Input(m) => m,
        }
    }
}

#[derive(Default)]
struct Ctx {
    inputs: BTreeMap<String, String>,
}

impl Ctx {
    fn read(&mut self, key: &str, path: &Path) -> Result<String, Failure> {
        let bytes = fs::read(path).map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
        self.inputs.insert(key.to_string(), hex::encode(Sha256::digest(&bytes)));
        String::from_utf8(bytes).map_err(|_| Failure::Input(format!("{}: not valid UTF-8", path.display())))
    }

    fn automaton(&mut self, key: &str, path: &Path) -> Result<ParsedAutomaton, Failure> {
        let text = self.read(key, path)?;
        parse_automaton(&text).map_err(|e| at(path, e))
    }

    fn lts(&mut self, key: &str, path: &Path) -> Result<FinAutomaton, Failure> {
        match self.automaton(key, path)? {
            ParsedAutomaton::Finite(a) => Ok(a),
            ParsedAutomaton::Buchi(_) => Err(Failure::Input(format!(
                "{}: expected a finitary automaton, found a Büchi automaton",
                path.display()
            ))),
        }
    }

    fn hom(&mut self, path: &Path, source: &Alphabet) -> Result<Homomorphism, Failure> {
        let text = self.read("hom", path)?;
        parse_homomorphism(&text, source).map_err(|e| at(path, e))
    }

    fn property(&mut self, args: &PropertyArgs, alphabet: &Alphabet) -> Result<(Property, Value), Failure> {
        match (&args.formula, &args.property, &args.complement) {
            (Some(text), None, None) => {
                let f = formula_over(text, alphabet)?;
                let p = Property::from_formula(&f, &Labeling::canonical(alphabet));
                Ok((p, json!(f.to_string())))
            }
            (None, Some(pos), Some(neg)) => {
                let pos_a = self.automaton("property", pos)?.omega_behavior();
                let neg_a = self.automaton("complement", neg)?.omega_behavior();
                same_alphabet(alphabet, pos_a.alphabet())?;
                same_alphabet(alphabet, neg_a.alphabet())?;
                let p = Property::from_automata(pos_a, neg_a).map_err(input)?;
                Ok((p, json!(format!("{} / {}", pos.display(), neg.display()))))
            }
            _ => Err(Failure::Usage("give --formula or both --property and --complement".into())),
        }
    }

    fn alphabet(&mut self, args: &AlphabetArgs, fallback: impl FnOnce() -> Vec<String>) -> Result<Alphabet, Failure> {
        match (&args.alphabet, &args.system) {
            (Some(text), _) => Alphabet::new(text.split_whitespace()).map_err(input),
            (None, Some(path)) => Ok(self.automaton("system", path)?.alphabet().clone()),
            (None, None) => Alphabet::new(fallback()).map_err(input),
        }
    }
}

fn at(path: &Path, e: Error) -> Failure {
    Failure::Input(format!("{}:{e}", path.display()))
}

fn input(e: Error) -> Failure {
    Failure::Input(e.to_string())
}

fn same_alphabet(want: &Alphabet, got: &Alphabet) -> Result<(), Failure> {
    if want == got {
        Ok(())
    } else {
        Err(Failure::Input(format!("alphabet mismatch: {want} vs {got}")))
    }
}

fn formula_over(text: &str, alphabet: &Alphabet) -> Result<Formula, Failure> {
    let f = parse_formula(text).map_err(|e| Failure::Input(format!("formula:{e}")))?;
    if let Some(bad) = f.atoms().into_iter().find(|p| alphabet.symbol(p).is_none()) {
        return Err(Failure::Input(format!("formula atom `{bad}` is not a letter of {alphabet}")));
    }
    Ok(f)
}

fn witness_json(w: &Witness, alphabet: &Alphabet) -> Value {
    match w {
        Witness::Prefix(word) => json!({ "prefix": alphabet.render(word) }),
        Witness::Lasso(x) => json!({
            "stem": alphabet.render(x.stem()),
            "cycle": alphabet.render(x.cycle()),
        }),
    }
}

fn verdict_json(v: &Verdict, alphabet: &Alphabet) -> Value {
    json!({
        "holds": v.holds,
        "witness": v.witness.as_ref().map(|w| witness_json(w, alphabet)),
    })
}

fn verdict_outcome(label: &str, v: &Verdict, alphabet: &Alphabet, extra: Value) -> Outcome {
    let mut lines = vec![format!("{label}: {v}")];
    if let Some(w) = &v.witness {
        lines.push(format!("witness: {}", w.render(alphabet)));
    }
    let mut result = verdict_json(v, alphabet);
    if let (Value::Object(r), Value::Object(e)) = (&mut result, extra) {
        r.extend(e);
    }
    Outcome {
        code: if v.holds { HOLDS } else { FAILS },
        lines,
        result,
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn execute(cmd: &Command, ctx: &mut Ctx) -> Result<Outcome, Failure> {
    match cmd {
        Command::Check { kind, system, property } => {
            let sys = ctx.automaton("system", system)?.omega_behavior();
            let (p, desc) = ctx.property(property, sys.alphabet())?;
            let (label, v) = match kind {
                CheckKind::Rl => ("relative liveness", is_relative_liveness(&sys, &p)),
                CheckKind::Rs => ("relative safety", is_relative_safety(&sys, &p)),
                CheckKind::Sat => ("satisfaction", satisfies(&sys, &p)),
            };
            let v = v.map_err(input)?;
            Ok(verdict_outcome(label, &v, sys.alphabet(), json!({ "property": desc })))
        }
        Command::MachineClosed { system, sub } => {
            let sys = ctx.automaton("system", system)?.omega_behavior();
            let live = ctx.automaton("sub", sub)?.omega_behavior();
            let v = is_machine_closed(&sys, &live).map_err(input)?;
            Ok(verdict_outcome("machine closed", &v, sys.alphabet(), json!({})))
        }
        Command::SafetyClass { property, alphabet } => {
            let atoms = || property.formula.iter().flat_map(|t| formula_atoms(t)).collect();
            let s = ctx.alphabet(alphabet, atoms)?;
            let (p, desc) = ctx.property(property, &s)?;
            let safe = is_safety_property(&p);
            Ok(Outcome {
                code: if safe { HOLDS } else { FAILS },
                lines: vec![format!("safety property: {}", yes(safe))],
                result: json!({ "property": desc, "safety": safe }),
            })
        }
        Command::Abstract { system, hom } => {
            let l = ctx.lts("system", system)?;
            let h = ctx.hom(hom, l.alphabet())?;
            abstract_behavior(&l, &h).map_err(input)?;
            let image = image_automaton(&h, &l).map_err(input)?;
            let text = print_automaton(&image);
            Ok(Outcome {
                code: HOLDS,
                lines: text.lines().map(str::to_string).collect(),
                result: json!({ "automaton": text }),
            })
        }
        Command::Wcc { system, hom } => {
            let l = ctx.lts("system", system)?;
            let h = ctx.hom(hom, l.alphabet())?;
            let report = is_weakly_continuation_closed(&l, &h).map_err(input)?;
            let s = l.alphabet();
            let mut lines = vec![format!("weakly continuation-closed: {}", yes(report.closed))];
            let mut violations = Vec::new();
            for v in &report.violations {
                let states: Vec<&str> = l.run(&v.word).into_iter().map(|q| l.state_name(q)).collect();
                let image = h.apply_word(&v.word);
                lines.push(format!(
                    "violation: after {} (state {}), abstract {} (state {})",
                    shown(s, &v.word),
                    states.join(","),
                    shown(h.target(), &image),
                    v.abstract_state
                ));
                violations.push(json!({
                    "word": s.render(&v.word),
                    "states": states,
                    "image": h.target().render(&image),
                    "abstract_state": v.abstract_state,
                }));
            }
            Ok(Outcome {
                code: if report.closed { HOLDS } else { FAILS },
                lines,
                result: json!({ "closed": report.closed, "violations": violations }),
            })
        }
        Command::Preserve { system, hom, formula } => {
            let l = ctx.lts("system", system)?;
            let h = ctx.hom(hom, l.alphabet())?;
            let eta = parse_formula(formula).map_err(|e| Failure::Input(format!("formula:{e}")))?;
            let r = preserve_check(&l, &h, &eta).map_err(input)?;
            let lines = vec![
                format!("weakly continuation-closed: {}", yes(r.wcc.closed)),
                format!("abstract: {}", r.abstract_verdict),
                format!("concrete: {}", r.concrete_verdict),
                format!("concrete formula: {}", r.concrete_formula),
                format!("equivalence certified: {}", yes(r.equivalence_certified)),
                format!("concrete implies abstract: {}", yes(r.concrete_implies_abstract)),
            ];
            let abstract_alphabet = h.target().padded();
            let concrete_alphabet = l.alphabet().padded();
            Ok(Outcome {
                code: if r.equivalence_certified { HOLDS } else { FAILS },
                lines,
                result: json!({
                    "wcc_closed": r.wcc.closed,
                    "abstract": verdict_json(&r.abstract_verdict, &abstract_alphabet),
                    "concrete": verdict_json(&r.concrete_verdict, &concrete_alphabet),
                    "concrete_formula": r.concrete_formula.to_string(),
                    "equivalence_certified": r.equivalence_certified,
                    "concrete_implies_abstract": r.concrete_implies_abstract,
                }),
            })
        }
        Command::Transform { formula, mode } => {
            let f = parse_formula(formula).map_err(|e| Failure::Input(format!("formula:{e}")))?;
            let pnf = to_positive_normal_form(&f);
            let out = match mode {
                Mode::Pnf => pnf,
                Mode::N => transform(&pnf, Transform::N).map_err(input)?,
                Mode::T => transform(&pnf, Transform::T).map_err(input)?,
                Mode::R => transform(&pnf, Transform::R).map_err(input)?,
            };
            Ok(Outcome {
                code: HOLDS,
                lines: vec![out.to_string()],
                result: json!({ "formula": out.to_string() }),
            })
        }
        Command::Xtd { system, hom } => {
            let l = ctx.lts("system", system)?;
            let h = match hom {
                Some(path) => Some(ctx.hom(path, l.alphabet())?),
                None => None,
            };
            let variant = h.as_ref().map_or(Extension::Plain, Extension::Relative);
            let text = print_automaton(&compute_xtd(&l, variant).map_err(input)?);
            Ok(Outcome {
                code: HOLDS,
                lines: text.lines().map(str::to_string).collect(),
                result: json!({ "automaton": text }),
            })
        }
        Command::Synthesize { system, property } => {
            let l = ctx.lts("system", system)?;
            let (p, desc) = ctx.property(property, l.alphabet())?;
            let rl = is_relative_liveness(&l.limit().map_err(input)?, &p).map_err(input)?;
            if !rl.holds {
                return Ok(verdict_outcome("relative liveness", &rl, l.alphabet(), json!({ "property": desc })));
            }
            let imp = synthesize_fair_impl(&l, &p).map_err(input)?;
            let mut fair = imp.as_buchi();
            for q in fair.states() {
                fair.rename_state(q, format!("s{q}"));
            }
            let text = print_automaton(&fair);
            Ok(Outcome {
                code: HOLDS,
                lines: text.lines().map(str::to_string).collect(),
                result: json!({ "property": desc, "holds": true, "implementation": text }),
            })
        }
        Command::VerifyImpl { implementation, system, property } => {
            let l = ctx.lts("system", system)?;
            let (p, desc) = ctx.property(property, l.alphabet())?;
            let imp = match ctx.automaton("impl", implementation)? {
                ParsedAutomaton::Buchi(b) => fair_lts(&b),
                ParsedAutomaton::Finite(a) => fair_lts(&a.reinterpret()),
            }
            .map_err(input)?;
            let v = verify_fair_impl(&imp, &l, &p).map_err(input)?;
            Ok(verdict_outcome("fair implementation", &v, l.alphabet(), json!({ "property": desc })))
        }
        Command::Eval { lasso, formula, alphabet } => {
            let fallback = || {
                let mut letters: Vec<String> = formula_atoms(formula);
                letters.extend(lasso.split(|c: char| c == ';' || c.is_whitespace()).map(str::to_string));
                letters.retain(|l| !l.is_empty());
                letters.sort();
                letters.dedup();
                letters
            };
            let s = ctx.alphabet(alphabet, fallback)?;
            let f = formula_over(formula, &s)?;
            let x = LassoWord::parse(lasso, &s).map_err(|e| Failure::Input(format!("lasso: {e}")))?;
            let holds = evaluate_lasso(&x, &Labeling::canonical(&s), &f);
            Ok(Outcome {
                code: if holds { HOLDS } else { FAILS },
                lines: vec![format!("{}: {}", x.pretty(&s), if holds { "holds" } else { "fails" })],
                result: json!({ "lasso": x.render(&s), "formula": f.to_string(), "holds": holds }),
            })
        }
    }
}

fn shown(alphabet: &Alphabet, w: &[faircheck::Symbol]) -> String {
    if w.is_empty() {
        "ε".to_string()
    } else {
        alphabet.render(w)
    }
}

fn formula_atoms(text: &str) -> Vec<String> {
    parse_formula(text).map(|f| f.atoms().into_iter().collect()).unwrap_or_default()
}

fn fair_lts(b: &BuchiAutomaton) -> Result<FairLts, Error> {
    let marks: Vec<bool> = b.states().map(|q| b.is_accepting(q)).collect();
    FairLts::new(b.reinterpret::<Finite>().all_accepting(), marks)
}

/// Runs the command line `args` (without the program name) and returns the
/// exit code and the text for standard output.
pub fn run<I, S>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(std::iter::once("faircheck".to_string()).chain(args.iter().cloned())) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { HOLDS };
            return (code, e.render().to_string());
        }
    };
    let start = Instant::now();
    let mut ctx = Ctx::default();
    let outcome = execute(&cli.command, &mut ctx);
    let elapsed = cli.timing.then(|| start.elapsed().as_secs_f64() * 1000.0);

    let (code, lines, result) = match outcome {
        Ok(o) => (o.code, o.lines, o.result),
        Err(f) => {
            let msg = f.message().to_string();
            (USAGE, vec![format!("error: {msg}")], json!({ "error": msg }))
        }
    };
    let mut out = String::new();
    if cli.json {
        let report = RunReport {
            command: args,
            exit_code: code,
            inputs: ctx.inputs,
            result,
            timing_ms: elapsed,
        };
        out.push_str(&serde_json::to_string_pretty(&report).expect("report serializes"));
        out.push('\n');
    } else {
        for l in lines {
            out.push_str(&l);
            out.push('\n');
        }
        if let Some(ms) = elapsed {
            out.push_str(&format!("time: {ms:.3} ms\n"));
        }
    }
    (code, out)
}
