//! The `piso` command line.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value as Json};

use crate::arrow::PrefixArrow;
use crate::coherence::{self, Diagram, DiagramReport, Document, LiftOutcome, Verdict};
use crate::error::{Error, Result};
use crate::finite;
use crate::matrix::{self, Matrix2};
use crate::selfsim::{self, SelfSimilar};
use crate::sexpr::arrow_to_sexpr;

#[derive(Parser, Debug)]
#[command(
    name = "piso",
    version,
    about = "Exact computation with partial isomorphisms"
)]
struct Cli {
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = finite::DEFAULT_SEED)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the normal form of a term or tree.
    Eval {
        file: PathBuf,
        #[arg(long, default_value = "standard")]
        sss: String,
    },
    /// Print the matrix representation of an endo-arrow of S.
    Matrix {
        file: PathBuf,
        #[arg(long)]
        sss: String,
    },
    /// Compute a representation under a new structure two ways and compare.
    Rebase {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Check diagonality under `--to`, or search for a diagonalising structure.
    Diag {
        file: PathBuf,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: Option<String>,
        #[arg(long, default_value_t = 4)]
        search_depth: usize,
    },
    /// Decide commutativity of a diagram document.
    Coherence {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Free)]
        mode: Mode,
        #[arg(long, default_value_t = 3)]
        bound: usize,
        #[arg(long, default_value = "standard")]
        sss: String,
    },
    /// Check the inverse-category laws in the finite model.
    Oracle {
        #[arg(long, default_value_t = 3)]
        max_size: usize,
    },
    /// Check the lax laws and strictness collapse for a structure.
    Laws {
        #[arg(long)]
        sss: String,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Free,
    Model,
    Lift,
}

/// What a run printed and how it ended.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    command: &'static str,
    inputs: Json,
    results: Vec<Json>,
    text: Vec<String>,
    passed: bool,
}

impl Report {
    fn new(command: &'static str, inputs: Json) -> Self {
        Report {
            command,
            inputs,
            results: Vec::new(),
            text: Vec::new(),
            passed: true,
        }
    }

    fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    fn check(&mut self, name: &str, ok: bool) {
        self.passed &= ok;
        self.line(format!("{} {name}", if ok { "PASS" } else { "FAIL" }));
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), rendered)
            } else {
                (rendered, String::new())
            };
            return Outcome {
                code,
                stdout,
                stderr,
            };
        }
    };
    let json = cli.json;
    let name = command_name(&cli.command);
    match dispatch(cli) {
        Ok(report) => {
            let code = if report.passed { 0 } else { 1 };
            let stdout = if json {
                let doc = json!({
                    "command": report.command,
                    "inputs": report.inputs,
                    "results": report.results,
                    "verdict": if report.passed { "pass" } else { "fail" },
                });
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&doc).expect("serialisable")
                )
            } else {
                report.text.iter().map(|l| format!("{l}\n")).collect()
            };
            Outcome {
                code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => {
            let stdout = if json {
                let doc = json!({
                    "command": name,
                    "inputs": Json::Null,
                    "results": [],
                    "verdict": "error",
                    "error": e.to_string(),
                });
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&doc).expect("serialisable")
                )
            } else {
                String::new()
            };
            Outcome {
                code: 2,
                stdout,
                stderr: format!("error: {e}\n"),
            }
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Eval { .. } => "eval",
        Command::Matrix { .. } => "matrix",
        Command::Rebase { .. } => "rebase",
        Command::Diag { .. } => "diag",
        Command::Coherence { .. } => "coherence",
        Command::Oracle { .. } => "oracle",
        Command::Laws { .. } => "laws",
    }
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

/// `standard`, `swap`, or a file holding a term for the code arrow.
pub fn load_sss(name: &str) -> Result<SelfSimilar> {
    match name {
        "standard" => Ok(SelfSimilar::standard()),
        "swap" => Ok(SelfSimilar::swap()),
        path => {
            let src = read(&PathBuf::from(path))?;
            let code = coherence::parse_term(&src)?.eval(Some(&SelfSimilar::standard()))?;
            SelfSimilar::new(code)
        }
    }
}

fn load_arrow(path: &PathBuf, s: &SelfSimilar) -> Result<PrefixArrow> {
    let term = coherence::parse_term(&read(path)?)?;
    term.signature()?;
    term.eval(Some(s))
}

fn arrow_json(f: &PrefixArrow) -> Json {
    json!({
        "dom": f.dom().to_string(),
        "cod": f.cod().to_string(),
        "arrow": arrow_to_sexpr(f),
    })
}

fn matrix_json(m: &Matrix2) -> Json {
    json!(m.to_sexpr())
}

fn dispatch(cli: Cli) -> Result<Report> {
    match cli.command {
        Command::Eval { file, sss } => {
            let s = load_sss(&sss)?;
            let mut r = Report::new("eval", json!({ "file": file, "sss": sss }));
            match coherence::parse_document(&read(&file)?)? {
                Document::Tree(t) => {
                    let leaves: Vec<String> = t.leaves().iter().map(|p| p.to_string()).collect();
                    r.line(format!("tree {t}"));
                    r.line(format!("leaves {}", leaves.join(" ")));
                    r.results
                        .push(json!({ "tree": t.to_string(), "leaves": leaves }));
                }
                Document::Term(term) => {
                    term.signature()?;
                    let f = term.eval(Some(&s))?;
                    r.line(format!("{} -> {}", f.dom(), f.cod()));
                    r.line(f.term_list());
                    r.results.push(arrow_json(&f));
                }
            }
            Ok(r)
        }
        Command::Matrix { file, sss } => {
            let s = load_sss(&sss)?;
            let f = load_arrow(&file, &s)?;
            let m = matrix::matrix_rep(&f, &s)?;
            let mut r = Report::new("matrix", json!({ "file": file, "sss": sss }));
            r.line(m.to_string());
            r.results.push(json!({ "matrix": matrix_json(&m) }));
            Ok(r)
        }
        Command::Rebase { file, from, to } => {
            let (a, b) = (load_sss(&from)?, load_sss(&to)?);
            let f = load_arrow(&file, &a)?;
            let rb = matrix::rebase(&f, &a, &b)?;
            let mut r = Report::new("rebase", json!({ "file": file, "from": from, "to": to }));
            r.line(format!("direct     {}", rb.direct));
            r.line(format!("conjugated {}", rb.conjugated));
            r.check("direct and conjugated representations agree", rb.agree());
            r.results.push(json!({
                "direct": matrix_json(&rb.direct),
                "conjugated": matrix_json(&rb.conjugated),
                "basis": matrix_json(&rb.basis),
                "agree": rb.agree(),
            }));
            Ok(r)
        }
        Command::Diag {
            file,
            from,
            to,
            search_depth,
        } => {
            let a = load_sss(&from)?;
            let f = load_arrow(&file, &a)?;
            let mut r = Report::new(
                "diag",
                json!({ "file": file, "from": from, "to": to, "search_depth": search_depth }),
            );
            let target = match &to {
                Some(name) => Some(load_sss(name)?),
                None => {
                    let found = matrix::find_diagonalizing(&f, search_depth)?;
                    match &found {
                        Some(s) => r.line(format!("found code {}", s.code())),
                        None => r.line(format!(
                            "no diagonalising structure from cylinders of depth <= {}",
                            search_depth.min(matrix::MAX_SEARCH_DEPTH)
                        )),
                    }
                    r.results.push(json!({
                        "found": found.as_ref().map(|s| arrow_to_sexpr(s.code())),
                    }));
                    found
                }
            };
            let Some(b) = target else {
                r.passed = false;
                return Ok(r);
            };
            let m = matrix::matrix_rep(&f, &b)?;
            r.line(format!("[f]_to {m}"));
            let diagonal = m.is_diagonal();
            r.check("off-diagonal entries vanish", diagonal);
            let mut result = json!({ "matrix": matrix_json(&m), "diagonal": diagonal });
            if diagonal {
                let (x, y) = matrix::diagonal_blocks(&f, &b)?;
                let rebuilt = b.internalize(&x, &y)? == f;
                let form = matrix::diagonal_form(&x, &y, &a, &b)? == matrix::matrix_rep(&f, &a)?;
                r.line(format!("X = {x}"));
                r.line(format!("Y = {y}"));
                r.check("f is the internal tensor of X and Y", rebuilt);
                r.check("diagonal form matches [f]_from", form);
                result["x"] = json!(arrow_to_sexpr(&x));
                result["y"] = json!(arrow_to_sexpr(&y));
            }
            r.results.push(result);
            Ok(r)
        }
        Command::Coherence {
            file,
            mode,
            bound,
            sss,
        } => {
            let s = load_sss(&sss)?;
            let d = Diagram::from_json(&read(&file)?)?;
            let mode_name = match mode {
                Mode::Free => "free",
                Mode::Model => "model",
                Mode::Lift => "lift",
            };
            let mut r = Report::new(
                "coherence",
                json!({ "file": file, "mode": mode_name, "bound": bound, "sss": sss }),
            );
            match mode {
                Mode::Free => {
                    let free = coherence::check_free(&d)?;
                    let undecided = free.verdict() == Verdict::Undecided;
                    report_diagram(&mut r, &free);
                    if undecided {
                        r.line("some assertions are outside the canonical fragment; evaluating in the model");
                        let model = coherence::check_model(&d, &s)?;
                        report_diagram(&mut r, &model);
                    }
                }
                Mode::Model => {
                    let model = coherence::check_model(&d, &s)?;
                    report_diagram(&mut r, &model);
                }
                Mode::Lift => match coherence::lift(&d, bound)? {
                    LiftOutcome::Certified { lifted, leaves } => {
                        r.line(format!("lift found with {leaves}-leaf trees"));
                        for (i, n) in lifted.nodes.iter().enumerate() {
                            let t = n.tree.as_ref().expect("lifted nodes are typed");
                            r.line(format!("  node {} : {t}", d.nodes[i].id));
                        }
                        r.check("lift commutes in the free category", true);
                        let model = coherence::check_model(&d, &s)?;
                        r.check(
                            "model evaluation agrees",
                            model.verdict() == Verdict::Commutes,
                        );
                        r.results.push(json!({
                            "lift": lifted.to_json(),
                            "leaves": leaves,
                            "model": model,
                        }));
                    }
                    LiftOutcome::NotCertified { candidates } => {
                        r.line(format!(
                            "{candidates} consistent lifts up to {bound} leaves, none commutes"
                        ));
                        r.passed = false;
                        r.results
                            .push(json!({ "lift": Json::Null, "candidates": candidates }));
                    }
                    LiftOutcome::NoLift { reason } => {
                        r.line(format!("no lift within bound {bound}: {reason}"));
                        r.passed = false;
                        r.results
                            .push(json!({ "lift": Json::Null, "reason": reason }));
                    }
                },
            }
            Ok(r)
        }
        Command::Oracle { max_size } => {
            let report = finite::check_axioms_seeded(max_size, cli.seed);
            let mut r = Report::new(
                "oracle",
                json!({ "max_size": max_size, "seed": report.seed }),
            );
            r.line(if report.exhaustive {
                format!("exhaustive over carriers of size <= {max_size}")
            } else {
                format!("sampled with seed {:#x}", cli.seed)
            });
            for c in &report.checks {
                r.check(&format!("{} ({} cases)", c.name, c.cases), c.passed());
                if let Some(w) = &c.counterexample {
                    r.line(format!("  counterexample: {w}"));
                }
            }
            r.results = report.checks.iter().map(|c| json!(c)).collect();
            Ok(r)
        }
        Command::Laws { sss } => {
            let s = load_sss(&sss)?;
            let mut r = Report::new("laws", json!({ "sss": sss }));
            for law in selfsim::check_lax(&s) {
                r.check(law.name, law.holds);
                if !law.holds {
                    r.line(format!("  lhs {}", law.lhs));
                    r.line(format!("  rhs {}", law.rhs));
                }
                r.results.push(json!(law));
            }
            let strict = selfsim::overly_restrictive(&s);
            r.check(&format!("{} is rejected", strict.name), !strict.holds);
            r.results.push(json!(strict));
            let collapse = selfsim::strict_collapse_fails(&s);
            r.line(format!("induced associator {}", s.tau()));
            r.check("induced associator is not the identity", collapse);
            r.results.push(json!({ "name": "strict collapse", "tau": arrow_to_sexpr(&s.tau()), "holds": collapse }));
            Ok(r)
        }
    }
}

fn report_diagram(r: &mut Report, d: &DiagramReport) {
    for (i, o) in d.outcomes.iter().enumerate() {
        match o {
            coherence::AssertOutcome::Commutes => {
                r.line(format!("assertion {i}: commutes ({})", d.mode))
            }
            coherence::AssertOutcome::Differs { lhs, rhs } => {
                r.line(format!("assertion {i}: differs ({})", d.mode));
                r.line(format!("  lhs {lhs}"));
                r.line(format!("  rhs {rhs}"));
            }
            coherence::AssertOutcome::Deferred { reason } => {
                r.line(format!("assertion {i}: deferred ({}): {reason}", d.mode))
            }
        }
    }
    let v = d.verdict();
    // Deferred outcomes are settled by the caller with a further mode.
    if v == Verdict::Rejected || (v == Verdict::Undecided && d.mode != "free") {
        r.passed = false;
    }
    r.line(format!(
        "verdict ({}): {}",
        d.mode,
        match v {
            Verdict::Commutes => "commutes",
            Verdict::Rejected => "rejected",
            Verdict::Undecided => "undecided",
        }
    ));
    r.results.push(json!(d));
}
