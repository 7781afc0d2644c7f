//! Command-line front end for the alternation-hierarchy toolkit.
//!
//! Every subcommand is deterministic: the same invocation prints the same
//! bytes. Exit code 0 means a definite answer, 2 means the answer is
//! inconclusive (an evaluation budget ran out), and 1 means the invocation
//! or its input was bad.

use std::collections::BTreeSet;
use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use fo2alt::{
    approx_equiv, classify, compile, eval_fo2, eval_tl, fo2_metrics, green, is_lda,
    level_identity, parse_fo2, parse_regex_inferring_alphabet, parse_term, parse_tl, satisfies,
    syntactic_presentation, tl_metrics, translate, Alphabet, ClassificationReport,
    ClassifyOptions, Dfa, EquivParams, Fo2Assignment, MinimalLevel, ReportedVerdict, Semigroup,
    SyntacticPresentation, Word, DEFAULT_EVALUATION_BUDGET,
};

#[derive(Parser)]
#[command(
    name = "fo2alt",
    version,
    about = "Alternation-hierarchy analysis for regular languages",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Locate a regular language in the alternation hierarchy
    Classify(ClassifyCmd),
    /// Print the syntactic semigroup and its structure
    Semigroup(SemigroupCmd),
    /// Check an omega-term identity on a semigroup
    Identity(IdentityCmd),
    /// Evaluate a formula on a word
    Eval(EvalCmd),
    /// Translate a two-variable sentence into unary temporal logic
    Translate(TranslateCmd),
    /// Test two words for bounded-alternation equivalence
    Equiv(EquivCmd),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Json => "json",
        })
    }
}

/// A regular language given either as a pattern or as an automaton file.
#[derive(Args)]
#[command(group(ArgGroup::new("language").required(true).args(["regex", "dfa"])))]
struct LanguageSource {
    /// Regular expression; the alphabet is inferred from its letters
    #[arg(long, value_name = "PATTERN")]
    regex: Option<String>,
    /// JSON automaton file
    #[arg(long, value_name = "FILE")]
    dfa: Option<PathBuf>,
}

impl LanguageSource {
    /// Produces the canonical minimal automaton plus a source label.
    fn load(&self) -> Result<(Dfa, String), String> {
        if let Some(pattern) = &self.regex {
            let (regex, alphabet) = parse_regex_inferring_alphabet(pattern)
                .map_err(|e| format!("invalid pattern: {e}"))?;
            let dfa = compile(&regex, &alphabet)
                .map_err(|e| format!("cannot compile pattern: {e}"))?;
            Ok((dfa, pattern.clone()))
        } else {
            let path = self.dfa.as_ref().expect("the argument group guarantees a source");
            let text = fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let dfa = Dfa::from_json_str(&text)
                .map_err(|e| format!("{}: {e}", path.display()))?;
            Ok((dfa.canonical_minimal(), path.display().to_string()))
        }
    }
}

/// A finite semigroup: either the syntactic semigroup of a language or a raw
/// multiplication table.
#[derive(Args)]
#[command(group(ArgGroup::new("algebra").required(true).args(["regex", "dfa", "semigroup"])))]
struct AlgebraSource {
    /// Regular expression; the alphabet is inferred from its letters
    #[arg(long, value_name = "PATTERN")]
    regex: Option<String>,
    /// JSON automaton file
    #[arg(long, value_name = "FILE")]
    dfa: Option<PathBuf>,
    /// JSON multiplication-table file
    #[arg(long, value_name = "FILE")]
    semigroup: Option<PathBuf>,
}

enum Algebra {
    /// Derived from a language; carries the letter map and syntactic image.
    Syntactic { presentation: SyntacticPresentation, source: String },
    /// Loaded directly from a table; no homomorphism attached.
    Raw { semigroup: Semigroup, source: String },
}

impl Algebra {
    fn semigroup(&self) -> &Semigroup {
        match self {
            Algebra::Syntactic { presentation, .. } => &presentation.semigroup,
            Algebra::Raw { semigroup, .. } => semigroup,
        }
    }

    fn source(&self) -> &str {
        match self {
            Algebra::Syntactic { source, .. } | Algebra::Raw { source, .. } => source,
        }
    }

    fn presentation(&self) -> Option<&SyntacticPresentation> {
        match self {
            Algebra::Syntactic { presentation, .. } => Some(presentation),
            Algebra::Raw { .. } => None,
        }
    }
}

impl AlgebraSource {
    fn load(&self) -> Result<Algebra, String> {
        if let Some(path) = &self.semigroup {
            let text = fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let semigroup = Semigroup::from_json_str(&text)
                .map_err(|e| format!("{}: {e}", path.display()))?;
            Ok(Algebra::Raw { semigroup, source: path.display().to_string() })
        } else {
            let language = LanguageSource { regex: self.regex.clone(), dfa: self.dfa.clone() };
            let (dfa, source) = language.load()?;
            Ok(Algebra::Syntactic { presentation: syntactic_presentation(&dfa), source })
        }
    }
}

#[derive(Args)]
struct ClassifyCmd {
    #[command(flatten)]
    source: LanguageSource,
    /// Highest alternation level to test
    #[arg(long = "max-m", value_name = "M", default_value_t = 3,
          value_parser = clap::value_parser!(u32).range(1..))]
    max_m: u32,
    /// Node-evaluation budget per identity check
    #[arg(long, value_name = "N", default_value_t = DEFAULT_EVALUATION_BUDGET)]
    budget: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct SemigroupCmd {
    #[command(flatten)]
    source: AlgebraSource,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
#[command(group(ArgGroup::new("what").required(true).args(["level", "terms"])))]
struct IdentityCmd {
    #[command(flatten)]
    source: AlgebraSource,
    /// Check the canonical identity pair for this level
    #[arg(long, value_name = "M")]
    level: Option<u32>,
    /// An identity as two omega-terms: left side, then right side
    #[arg(value_name = "TERM", num_args = 2)]
    terms: Vec<String>,
    /// Node-evaluation budget
    #[arg(long, value_name = "N", default_value_t = DEFAULT_EVALUATION_BUDGET)]
    budget: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
#[command(group(ArgGroup::new("formula").required(true).args(["fo2", "tl"])))]
struct EvalCmd {
    /// Two-variable first-order formula
    #[arg(long, value_name = "SENTENCE")]
    fo2: Option<String>,
    /// Unary temporal formula
    #[arg(long, value_name = "FORMULA")]
    tl: Option<String>,
    /// Word to evaluate on
    #[arg(long, value_name = "WORD")]
    word: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct TranslateCmd {
    /// Two-variable first-order sentence; the alphabet is inferred from its
    /// letter tests
    #[arg(long, value_name = "SENTENCE")]
    fo2: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct EquivCmd {
    /// First word
    #[arg(long, value_name = "WORD")]
    u: String,
    /// Second word
    #[arg(long, value_name = "WORD")]
    v: String,
    /// Alternation bound
    #[arg(long, value_name = "M")]
    m: u32,
    /// Depth bound
    #[arg(long, value_name = "N")]
    n: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// Whether the printed answer is final or was cut short by a budget.
enum Outcome {
    Definite,
    Inconclusive,
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests land here too; only real usage
            // errors are failures.
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Classify(cmd) => run_classify(cmd),
        Command::Semigroup(cmd) => run_semigroup(cmd),
        Command::Identity(cmd) => run_identity(cmd),
        Command::Eval(cmd) => run_eval(cmd),
        Command::Translate(cmd) => run_translate(cmd),
        Command::Equiv(cmd) => run_equiv(cmd),
    };
    match result {
        Ok(Outcome::Definite) => ExitCode::SUCCESS,
        Ok(Outcome::Inconclusive) => ExitCode::from(2),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run_classify(cmd: ClassifyCmd) -> Result<Outcome, String> {
    let (dfa, source) = cmd.source.load()?;
    let options = ClassifyOptions { max_m: cmd.max_m, budget: cmd.budget };
    let report = classify(&dfa, source, &options);
    match cmd.format {
        Format::Json => println!("{}", report.to_json_string()),
        Format::Text => print_report(&report),
    }
    Ok(if report.minimal_level_is_tight() { Outcome::Definite } else { Outcome::Inconclusive })
}

fn print_report(report: &ClassificationReport) {
    println!("source: {}", report.source);
    println!("alphabet: {}", report.alphabet.iter().collect::<String>());
    println!("semigroup order: {}", report.semigroup_order);
    println!("lda: {}", yes_no(report.lda));
    for level in &report.levels {
        let granted = match level.granted {
            Some(true) => "yes",
            Some(false) => "no",
            None => "unknown",
        };
        let j_union = match level.j_union {
            Some(ok) => format!("; j-union: {}", yes_no(ok)),
            None => String::new(),
        };
        println!(
            "level {}: {granted} (identity: {}{j_union})",
            level.m,
            describe_verdict(&level.identity)
        );
    }
    println!("minimal level: {}", describe_minimal(report.minimal_level));
}

fn describe_minimal(minimal: MinimalLevel) -> String {
    match minimal {
        MinimalLevel::Level(m) => m.to_string(),
        MinimalLevel::NotDefinable => "NOT_DEFINABLE".to_string(),
        MinimalLevel::AboveBound => "ABOVE_BOUND".to_string(),
    }
}

fn describe_verdict(verdict: &ReportedVerdict) -> String {
    match verdict {
        ReportedVerdict::Holds => "holds".to_string(),
        ReportedVerdict::Fails { assignment, lhs, rhs } => {
            let bindings: Vec<String> =
                assignment.iter().map(|(var, value)| format!("{var} = {value}")).collect();
            format!("fails ({}; lhs = {lhs}, rhs = {rhs})", bindings.join(", "))
        }
        ReportedVerdict::Inconclusive { budget, assignments_checked } => {
            format!("inconclusive (budget {budget}, assignments checked {assignments_checked})")
        }
    }
}

fn run_semigroup(cmd: SemigroupCmd) -> Result<Outcome, String> {
    let algebra = cmd.source.load()?;
    let s = algebra.semigroup();
    let relations = green(s);
    let lda = is_lda(s);
    match cmd.format {
        Format::Text => {
            println!("source: {}", algebra.source());
            println!("order: {}", s.order());
            println!("elements: {}", s.names().join(", "));
            if let Some(p) = algebra.presentation() {
                let letters: Vec<String> =
                    p.letter_map.iter().map(|(c, &x)| format!("{c} -> {}", s.name(x))).collect();
                println!("letters: {}", letters.join(", "));
                println!("image: {}", braced(p.image.iter().map(|&x| s.name(x))));
            }
            println!("idempotents: {}", braced(s.idempotents().into_iter().map(|x| s.name(x))));
            println!("lda: {}", yes_no(lda));
            println!("r-classes: {}", render_classes(&relations.r_classes(), s));
            println!("l-classes: {}", render_classes(&relations.l_classes(), s));
            println!("j-classes: {}", render_classes(&relations.j_classes(), s));
            println!("h-classes: {}", render_classes(&relations.h_classes(), s));
            println!();
            print!("{s}");
        }
        Format::Json => {
            // A superset of the table format, so the output can be fed back
            // in through --semigroup.
            let mut doc = serde_json::Map::new();
            doc.insert("source".into(), json!(algebra.source()));
            doc.insert("order".into(), json!(s.order()));
            doc.insert("names".into(), json!(s.names()));
            doc.insert("table".into(), json!(table_rows(s)));
            if let Some(p) = algebra.presentation() {
                let letters: serde_json::Map<String, serde_json::Value> = p
                    .letter_map
                    .iter()
                    .map(|(c, &x)| (c.to_string(), json!(s.name(x))))
                    .collect();
                doc.insert("letters".into(), serde_json::Value::Object(letters));
                doc.insert(
                    "image".into(),
                    json!(p.image.iter().map(|&x| s.name(x)).collect::<Vec<_>>()),
                );
            }
            doc.insert(
                "idempotents".into(),
                json!(s.idempotents().into_iter().map(|x| s.name(x)).collect::<Vec<_>>()),
            );
            doc.insert("lda".into(), json!(lda));
            doc.insert(
                "green".into(),
                json!({
                    "r": class_names(&relations.r_classes(), s),
                    "l": class_names(&relations.l_classes(), s),
                    "j": class_names(&relations.j_classes(), s),
                    "h": class_names(&relations.h_classes(), s),
                }),
            );
            println!("{}", serde_json::Value::Object(doc));
        }
    }
    Ok(Outcome::Definite)
}

fn table_rows(s: &Semigroup) -> Vec<Vec<usize>> {
    (0..s.order()).map(|x| (0..s.order()).map(|y| s.mul(x, y)).collect()).collect()
}

fn braced<'a>(names: impl Iterator<Item = &'a str>) -> String {
    format!("{{{}}}", names.collect::<Vec<_>>().join(", "))
}

fn render_classes(classes: &[Vec<usize>], s: &Semigroup) -> String {
    classes
        .iter()
        .map(|class| braced(class.iter().map(|&x| s.name(x))))
        .collect::<Vec<_>>()
        .join(" ")
}

fn class_names(classes: &[Vec<usize>], s: &Semigroup) -> Vec<Vec<String>> {
    classes
        .iter()
        .map(|class| class.iter().map(|&x| s.name(x).to_string()).collect())
        .collect()
}

fn run_identity(cmd: IdentityCmd) -> Result<Outcome, String> {
    let algebra = cmd.source.load()?;
    let s = algebra.semigroup();
    let (lhs, rhs) = match cmd.level {
        Some(m) => level_identity(m).map_err(|e| e.to_string())?,
        None => {
            let lhs = parse_term(&cmd.terms[0]).map_err(|e| format!("left term: {e}"))?;
            let rhs = parse_term(&cmd.terms[1]).map_err(|e| format!("right term: {e}"))?;
            (lhs, rhs)
        }
    };
    let verdict = ReportedVerdict::from_verdict(&satisfies(s, &lhs, &rhs, cmd.budget), s);
    match cmd.format {
        Format::Text => println!("identity: {}", describe_verdict(&verdict)),
        Format::Json => {
            let mut doc = serde_json::Map::new();
            if let Some(m) = cmd.level {
                doc.insert("level".into(), json!(m));
            }
            doc.insert("lhs".into(), json!(lhs.to_string()));
            doc.insert("rhs".into(), json!(rhs.to_string()));
            doc.insert(
                "verdict".into(),
                serde_json::to_value(&verdict).expect("verdicts serialize"),
            );
            println!("{}", serde_json::Value::Object(doc));
        }
    }
    Ok(if verdict.is_definite() { Outcome::Definite } else { Outcome::Inconclusive })
}

fn run_eval(cmd: EvalCmd) -> Result<Outcome, String> {
    let word: Word = cmd.word.parse().expect("word parsing is infallible");
    let (value, metrics) = if let Some(text) = &cmd.fo2 {
        let phi = parse_fo2(text).map_err(|e| e.to_string())?;
        let value = eval_fo2(&phi, &word, &Fo2Assignment::empty()).map_err(|e| e.to_string())?;
        (value, fo2_metrics(&phi))
    } else {
        let text = cmd.tl.as_ref().expect("the argument group guarantees a formula");
        let phi = parse_tl(text).map_err(|e| e.to_string())?;
        let value = eval_tl(&phi, &word, None).map_err(|e| e.to_string())?;
        (value, tl_metrics(&phi))
    };
    match cmd.format {
        Format::Text => {
            println!("{value}");
            println!("m = {}, n = {}", metrics.m, metrics.n);
        }
        Format::Json => {
            println!("{}", json!({ "value": value, "m": metrics.m, "n": metrics.n }));
        }
    }
    Ok(Outcome::Definite)
}

fn run_translate(cmd: TranslateCmd) -> Result<Outcome, String> {
    let phi = parse_fo2(&cmd.fo2).map_err(|e| e.to_string())?;
    let letters: BTreeSet<char> = phi.letters();
    if letters.is_empty() {
        return Err(
            "the sentence tests no letters, so its alphabet cannot be inferred".to_string()
        );
    }
    let alphabet = Alphabet::new(letters).map_err(|e| e.to_string())?;
    let translated = translate(&phi, &alphabet).map_err(|e| e.to_string())?;
    let metrics = tl_metrics(&translated);
    match cmd.format {
        Format::Text => {
            println!("{translated}");
            println!("m = {}, n = {}", metrics.m, metrics.n);
        }
        Format::Json => {
            println!(
                "{}",
                json!({ "formula": translated.to_string(), "m": metrics.m, "n": metrics.n })
            );
        }
    }
    Ok(Outcome::Definite)
}

fn run_equiv(cmd: EquivCmd) -> Result<Outcome, String> {
    let u: Word = cmd.u.parse().expect("word parsing is infallible");
    let v: Word = cmd.v.parse().expect("word parsing is infallible");
    if u.len() > 64 || v.len() > 64 {
        return Err("words longer than 64 letters are not supported".to_string());
    }
    let equivalent = approx_equiv(&u, &v, EquivParams { m: cmd.m, n: cmd.n });
    match cmd.format {
        Format::Text => println!("{equivalent}"),
        Format::Json => println!("{}", json!({ "equivalent": equivalent })),
    }
    Ok(Outcome::Definite)
}

fn yes_no(value: bool) -> &'static str {
    if value {
        "yes"
    } else {
        "no"
    }
}
