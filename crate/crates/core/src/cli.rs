//! Batch command-line surface. Exit codes: 0 for an affirmative result
//! (valid, accepted, found, all axioms pass), 1 for a negative result with a
//! witness, 2 for usage or input errors. All sampling is seeded, so output
//! is deterministic for fixed inputs and flags.

use std::collections::BTreeMap;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::algebra::{
    self, audit_axioms, find_kappa, find_kappa_exhaustive, Algebra, AuditReport,
    FiniteTable, Samples,
};
use crate::arith::{Dyadic, UnitDyadic};
use crate::cpl::{self, parse_formula, ProofOutcome, TautVerdict};
use crate::decide::{
    decide_equation_with, grid_search, CounterExample, DecideOptions, Verdict,
};
use crate::group::{GroupElem, LuGroup};
use crate::term::{
    eval_cont_term, eval_lu_term, formation_sequence, hat_translate,
    lu_formation_sequence, parse_cont_term, parse_lu_term,
};

const EXIT_OK: i32 = 0;
const EXIT_NEGATIVE: i32 = 1;
const EXIT_USAGE: i32 = 2;

#[derive(Parser)]
#[command(name = "cpl", version, about = "Continuous-logic toolkit", disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for all randomized sampling.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sample count for randomized audits.
    #[arg(long, global = true, default_value_t = 10_000)]
    samples: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Lang {
    Cont,
    Lu,
    Cpl,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AlgName {
    Standard,
    Dual,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a term or formula and print its canonical form.
    Parse {
        #[arg(long, value_enum, default_value_t = Lang::Cont)]
        lang: Lang,
        text: String,
        /// Also print the formation sequence.
        #[arg(long)]
        formation: bool,
    },
    /// Evaluate a term or formula at an exact assignment.
    Eval {
        #[arg(long, value_enum, default_value_t = Lang::Cont)]
        lang: Lang,
        text: String,
        /// Bindings like "x1=1/2" (terms), "P1=1/2" (formulas) or
        /// "x1=(1/2, 3)" (group terms); repeatable.
        #[arg(long = "assign")]
        assignments: Vec<String>,
        /// Algebra for continuous terms.
        #[arg(long, value_enum, default_value_t = AlgName::Standard)]
        alg: AlgName,
        /// Strong unit for group terms, e.g. "(1, 0)".
        #[arg(long, default_value = "(1)")]
        unit: String,
    },
    /// Decide whether a formula evaluates to 0 under every valuation.
    Taut {
        formula: String,
        /// Run only the dyadic grid oracle at resolution 2^-k.
        #[arg(long, value_name = "K")]
        grid: Option<u32>,
        #[arg(long, default_value_t = 16)]
        budget: usize,
    },
    /// Decide whether two continuous terms agree at every assignment.
    Eq {
        lhs: String,
        rhs: String,
        /// Run only the dyadic grid oracle at resolution 2^-k.
        #[arg(long, value_name = "K")]
        grid: Option<u32>,
        #[arg(long, default_value_t = 16)]
        budget: usize,
    },
    /// Check a proof file ("-" reads standard input).
    ProofCheck { file: String },
    /// Search for a halving table on a finite MV algebra: either
    /// "lukasiewicz <n>" or a JSON table file.
    KappaSearch {
        target: Vec<String>,
        /// Use the exhaustive search over all candidate maps.
        #[arg(long)]
        brute_force: bool,
    },
    /// Closure of a dyadic seed set under the standard operations, up to an
    /// exponent budget.
    Subalg {
        #[arg(long)]
        budget: u32,
        /// Comma-separated seed elements.
        #[arg(long, default_value = "0,1")]
        elems: String,
    },
    /// Audit the unit-interval algebra of the lattice group with the given
    /// strong unit.
    Gamma {
        /// Strong unit, e.g. "(1, 0)"; the rank is its length.
        #[arg(long)]
        unit: String,
    },
    /// Hat-translate a continuous term into the group language.
    Translate { term: String },
    /// Audit the axioms on an algebra: "standard", "dual", "product2", or a
    /// JSON table file.
    Audit {
        target: String,
        /// Check all tuples instead of sampling (finite tables only).
        #[arg(long)]
        exhaustive: bool,
    },
}

/// Runs the CLI against an argument vector; returns (exit code, stdout,
/// stderr).
pub fn run(argv: &[String], stdin: &str) -> (i32, String, String) {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    (EXIT_OK, rendered, String::new())
                }
                _ => (EXIT_USAGE, String::new(), rendered),
            };
        }
    };
    match dispatch(cli.command, &cli.common, stdin) {
        Ok((code, out)) => (code, out, String::new()),
        Err(msg) => (EXIT_USAGE, String::new(), format!("error: {msg}\n")),
    }
}

fn dispatch(cmd: Command, common: &Common, stdin: &str) -> Result<(i32, String), String> {
    match cmd {
        Command::Parse { lang, text, formation } => cmd_parse(lang, &text, formation, common),
        Command::Eval { lang, text, assignments, alg, unit } => {
            cmd_eval(lang, &text, &assignments, alg, &unit, common)
        }
        Command::Taut { formula, grid, budget } => cmd_taut(&formula, grid, budget, common),
        Command::Eq { lhs, rhs, grid, budget } => cmd_eq(&lhs, &rhs, grid, budget, common),
        Command::ProofCheck { file } => cmd_proof_check(&file, stdin, common),
        Command::KappaSearch { target, brute_force } => {
            cmd_kappa_search(&target, brute_force, common)
        }
        Command::Subalg { budget, elems } => cmd_subalg(budget, &elems, common),
        Command::Gamma { unit } => cmd_gamma(&unit, common),
        Command::Translate { term } => cmd_translate(&term, common),
        Command::Audit { target, exhaustive } => cmd_audit(&target, exhaustive, common),
    }
}

fn ok_result(common: &Common, text: String, json_result: serde_json::Value) -> (i32, String) {
    match common.format {
        Format::Text => (EXIT_OK, text),
        Format::Json => (
            EXIT_OK,
            format!("{}\n", json!({"verdict": "ok", "result": json_result})),
        ),
    }
}

fn cmd_parse(lang: Lang, text: &str, formation: bool, common: &Common) -> Result<(i32, String), String> {
    let (canonical, seq) = match lang {
        Lang::Cont => {
            let t = parse_cont_term(text).map_err(|e| e.to_string())?;
            (t.to_string(), formation.then(|| formation_sequence(&t).to_string()))
        }
        Lang::Lu => {
            let t = parse_lu_term(text).map_err(|e| e.to_string())?;
            (t.to_string(), formation.then(|| lu_formation_sequence(&t).to_string()))
        }
        Lang::Cpl => {
            let f = parse_formula(text).map_err(|e| e.to_string())?;
            if formation {
                return Err("--formation applies to terms only".into());
            }
            (f.to_string(), None)
        }
    };
    let mut out = format!("{canonical}\n");
    if let Some(seq) = &seq {
        out.push_str(seq);
    }
    Ok(ok_result(
        common,
        out,
        json!({"canonical": canonical, "formation": seq}),
    ))
}

fn parse_bindings(items: &[String]) -> Result<Vec<(String, String)>, String> {
    items
        .iter()
        .map(|item| {
            item.split_once('=')
                .map(|(k, v)| (k.trim().to_string(), v.trim().to_string()))
                .ok_or_else(|| format!("bad binding {item:?}; expected name=value"))
        })
        .collect()
}

fn var_index(name: &str, prefix: char) -> Result<u32, String> {
    name.strip_prefix(prefix)
        .and_then(|i| i.parse::<u32>().ok())
        .filter(|&i| i >= 1)
        .ok_or_else(|| format!("bad variable name {name:?}; expected {prefix}<n>"))
}

fn cmd_eval(
    lang: Lang,
    text: &str,
    assignments: &[String],
    alg: AlgName,
    unit: &str,
    common: &Common,
) -> Result<(i32, String), String> {
    let bindings = parse_bindings(assignments)?;
    let value = match lang {
        Lang::Cont => {
            let t = parse_cont_term(text).map_err(|e| e.to_string())?;
            let algebra = match alg {
                AlgName::Standard => Algebra::standard(),
                AlgName::Dual => Algebra::standard_dual(),
            };
            let mut map = BTreeMap::new();
            for (name, v) in &bindings {
                let d = Dyadic::from_str(v).map_err(|e| e.to_string())?;
                map.insert(var_index(name, 'x')?, algebra::Elem::Dy(d));
            }
            eval_cont_term(&t, &algebra, &map)
                .map_err(|e| e.to_string())?
                .to_string()
        }
        Lang::Cpl => {
            let f = parse_formula(text).map_err(|e| e.to_string())?;
            let mut map = cpl::Valuation::new();
            for (name, v) in &bindings {
                let d = UnitDyadic::from_str(v).map_err(|e| e.to_string())?;
                map.insert(var_index(name, 'P')?, d);
            }
            cpl::eval_formula(&f, &map)
                .map_err(|e| e.to_string())?
                .to_string()
        }
        Lang::Lu => {
            let t = parse_lu_term(text).map_err(|e| e.to_string())?;
            let u: GroupElem = unit.parse().map_err(|e: crate::arith::ScalarParseError| e.to_string())?;
            let group = LuGroup::new(u).map_err(|e| e.to_string())?;
            let mut map = BTreeMap::new();
            for (name, v) in &bindings {
                let g: GroupElem = v.parse().map_err(|e: crate::arith::ScalarParseError| e.to_string())?;
                map.insert(var_index(name, 'x')?, g);
            }
            eval_lu_term(&t, &group, &map, group.unit())
                .map_err(|e| e.to_string())?
                .to_string()
        }
    };
    Ok(ok_result(common, format!("{value}\n"), json!(value)))
}

fn counterexample_json(ce: &CounterExample) -> serde_json::Value {
    json!({
        "assignment": ce
            .assignment
            .iter()
            .map(|(i, v)| (format!("x{i}"), v.to_string()))
            .collect::<BTreeMap<_, _>>(),
        "lhs": ce.lhs_value.to_string(),
        "rhs": ce.rhs_value.to_string(),
    })
}

fn cmd_taut(
    formula: &str,
    grid: Option<u32>,
    budget: usize,
    common: &Common,
) -> Result<(i32, String), String> {
    let f = parse_formula(formula).map_err(|e| e.to_string())?;
    let opts = DecideOptions { budget, ..DecideOptions::default() };
    let verdict = match grid {
        None => cpl::decide_taut_with(&f, opts).map_err(|e| e.to_string())?,
        Some(k) => {
            let term = cpl::to_cont_term(&f);
            let one = crate::term::ContTerm::neg(crate::term::ContTerm::Zero);
            match grid_search(&term, &one, k, opts.grid_cap).map_err(|e| e.to_string())? {
                None => {
                    let text = "NO VIOLATION FOUND\n".to_string();
                    let j = json!({"verdict": "no-violation", "witness": null});
                    return Ok(finish_verdict(common, EXIT_OK, text, j));
                }
                Some(ce) => {
                    let valuation: BTreeMap<u32, crate::arith::Rational> = ce
                        .assignment
                        .iter()
                        .map(|(i, x)| {
                            (*i, crate::arith::Rational::from_integer(1.into()) - x)
                        })
                        .collect();
                    let value =
                        crate::arith::Rational::from_integer(1.into()) - &ce.lhs_value;
                    TautVerdict::CounterExample { valuation, value }
                }
            }
        }
    };
    Ok(match verdict {
        TautVerdict::Valid => finish_verdict(
            common,
            EXIT_OK,
            "VALID\n".into(),
            json!({"verdict": "valid", "witness": null}),
        ),
        TautVerdict::CounterExample { valuation, value } => {
            let mut line = String::new();
            for (i, v) in &valuation {
                line.push_str(&format!("P{i}={v} "));
            }
            line.push_str(&format!("→ value={value}\n"));
            let witness = json!({
                "valuation": valuation
                    .iter()
                    .map(|(i, v)| (format!("P{i}"), v.to_string()))
                    .collect::<BTreeMap<_, _>>(),
                "value": value.to_string(),
            });
            finish_verdict(
                common,
                EXIT_NEGATIVE,
                format!("NOT A TAUTOLOGY\n{line}"),
                json!({"verdict": "counterexample", "witness": witness}),
            )
        }
    })
}

fn finish_verdict(
    common: &Common,
    code: i32,
    text: String,
    j: serde_json::Value,
) -> (i32, String) {
    match common.format {
        Format::Text => (code, text),
        Format::Json => (code, format!("{j}\n")),
    }
}

fn cmd_eq(
    lhs: &str,
    rhs: &str,
    grid: Option<u32>,
    budget: usize,
    common: &Common,
) -> Result<(i32, String), String> {
    let l = parse_cont_term(lhs).map_err(|e| e.to_string())?;
    let r = parse_cont_term(rhs).map_err(|e| e.to_string())?;
    let opts = DecideOptions { budget, ..DecideOptions::default() };
    let verdict = match grid {
        None => decide_equation_with(&l, &r, opts).map_err(|e| e.to_string())?,
        Some(k) => match grid_search(&l, &r, k, opts.grid_cap).map_err(|e| e.to_string())? {
            None => {
                let text = "NO VIOLATION FOUND\n".to_string();
                let j = json!({"verdict": "no-violation", "witness": null});
                return Ok(finish_verdict(common, EXIT_OK, text, j));
            }
            Some(ce) => Verdict::CounterExample(ce),
        },
    };
    Ok(match verdict {
        Verdict::Valid => finish_verdict(
            common,
            EXIT_OK,
            "VALID\n".into(),
            json!({"verdict": "valid", "witness": null}),
        ),
        Verdict::CounterExample(ce) => finish_verdict(
            common,
            EXIT_NEGATIVE,
            format!("{ce}\n"),
            json!({"verdict": "counterexample", "witness": counterexample_json(&ce)}),
        ),
    })
}

fn cmd_proof_check(file: &str, stdin: &str, common: &Common) -> Result<(i32, String), String> {
    let text = if file == "-" {
        stdin.to_string()
    } else {
        std::fs::read_to_string(file).map_err(|e| format!("{file}: {e}"))?
    };
    let (hypotheses, proof) = cpl::parse_proof_file(&text).map_err(|e| e.to_string())?;
    Ok(match cpl::check_proof(&proof, &hypotheses) {
        ProofOutcome::Accepted => finish_verdict(
            common,
            EXIT_OK,
            "ACCEPTED\n".into(),
            json!({"verdict": "accepted", "witness": null}),
        ),
        ProofOutcome::Rejected { step, reason } => finish_verdict(
            common,
            EXIT_NEGATIVE,
            format!("REJECTED step {}: {reason}\n", step + 1),
            json!({
                "verdict": "rejected",
                "witness": {"step": step + 1, "reason": reason},
            }),
        ),
    })
}

fn cmd_kappa_search(
    target: &[String],
    brute_force: bool,
    common: &Common,
) -> Result<(i32, String), String> {
    let table = match target {
        [kind, n] if kind == "lukasiewicz" => {
            let n: u32 = n.parse().map_err(|_| "bad chain length".to_string())?;
            if n == 0 {
                return Err("chain length must be at least 1".into());
            }
            FiniteTable::lukasiewicz(n)
        }
        [path] => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
            FiniteTable::from_json(&text).map_err(|e| e.to_string())?
        }
        _ => return Err("expected \"lukasiewicz <n>\" or a table file".into()),
    };
    let found = if brute_force {
        find_kappa_exhaustive(&table, 50_000_000).map_err(|e| e.to_string())?
    } else {
        find_kappa(&table).map_err(|e| e.to_string())?
    };
    Ok(match found {
        None => finish_verdict(
            common,
            EXIT_NEGATIVE,
            "NO KAPPA EXISTS\n".into(),
            json!({"verdict": "none", "witness": null}),
        ),
        Some(kappa) => {
            let mut text = "KAPPA FOUND\n".to_string();
            let mut map = BTreeMap::new();
            for (i, &k) in kappa.iter().enumerate() {
                text.push_str(&format!(
                    "kappa({}) = {}\n",
                    table.element_name(i),
                    table.element_name(k)
                ));
                map.insert(
                    table.element_name(i).to_string(),
                    table.element_name(k).to_string(),
                );
            }
            finish_verdict(
                common,
                EXIT_OK,
                text,
                json!({"verdict": "found", "witness": {"kappa": map}}),
            )
        }
    })
}

fn cmd_subalg(budget: u32, elems: &str, common: &Common) -> Result<(i32, String), String> {
    let seed: Vec<UnitDyadic> = elems
        .split(',')
        .map(|e| UnitDyadic::from_str(e).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    let closure = algebra::generate_subalgebra(&seed, budget);
    let rendered: Vec<String> = closure.iter().map(UnitDyadic::to_string).collect();
    Ok(ok_result(
        common,
        format!("{}\n", rendered.join(" ")),
        json!(rendered),
    ))
}

fn audit_output(common: &Common, report: &AuditReport) -> (i32, String) {
    let code = if report.all_pass() { EXIT_OK } else { EXIT_NEGATIVE };
    let j = json!({
        "verdict": if report.all_pass() { "pass" } else { "fail" },
        "witness": report
            .checks
            .iter()
            .filter(|c| !c.passed())
            .map(|c| {
                json!({"axiom": c.axiom.to_string(), "at": c.witness.clone()})
            })
            .collect::<Vec<_>>(),
        "report": report
            .checks
            .iter()
            .map(|c| {
                json!({
                    "axiom": c.axiom.to_string(),
                    "status": if c.skipped {
                        "skipped"
                    } else if c.passed() {
                        "pass"
                    } else {
                        "fail"
                    },
                    "checked": c.checked,
                    "witness": c.witness.clone(),
                })
            })
            .collect::<Vec<_>>(),
    });
    finish_verdict(common, code, report.to_string(), j)
}

fn cmd_gamma(unit: &str, common: &Common) -> Result<(i32, String), String> {
    let u: GroupElem = unit
        .parse()
        .map_err(|e: crate::arith::ScalarParseError| e.to_string())?;
    let group = LuGroup::new(u).map_err(|e| e.to_string())?;
    let alg = Algebra::gamma(group);
    let report = audit_axioms(
        &alg,
        Samples::Count { n: common.samples, seed: common.seed },
    )
    .map_err(|e| e.to_string())?;
    Ok(audit_output(common, &report))
}

fn cmd_translate(term: &str, common: &Common) -> Result<(i32, String), String> {
    let t = parse_cont_term(term).map_err(|e| e.to_string())?;
    let hat = hat_translate(&t).to_string();
    Ok(ok_result(common, format!("{hat}\n"), json!(hat)))
}

fn cmd_audit(target: &str, exhaustive: bool, common: &Common) -> Result<(i32, String), String> {
    let alg = match target {
        "standard" => Algebra::standard(),
        "dual" => Algebra::standard_dual(),
        "product2" => Algebra::product(vec![Algebra::standard(), Algebra::standard()]),
        path => {
            let text = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
            Algebra::finite(FiniteTable::from_json(&text).map_err(|e| e.to_string())?)
        }
    };
    let samples = if exhaustive {
        Samples::Exhaustive
    } else {
        Samples::Count { n: common.samples, seed: common.seed }
    };
    let report = audit_axioms(&alg, samples).map_err(|e| e.to_string())?;
    Ok(audit_output(common, &report))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let argv: Vec<String> =
            std::iter::once("cpl").chain(args.iter().copied()).map(String::from).collect();
        run(&argv, "")
    }

    #[test]
    fn taut_and_eq_exit_codes() {
        let (code, out, _) = call(&["taut", "(P1 -. P1)"]);
        assert_eq!((code, out.as_str()), (0, "VALID\n"));

        let (code, out, _) = call(&["eq", "(x1 + x1)", "x1"]);
        assert_eq!(code, 1);
        assert_eq!(out, "x1=1/2 → lhs=1 rhs=1/2\n");

        let (code, _, err) = call(&["eq", "(x1 + x1", "x1"]);
        assert_eq!(code, 2);
        assert!(err.contains("syntax error"));
    }

    #[test]
    fn kappa_search_chain() {
        let (code, out, _) = call(&["kappa-search", "lukasiewicz", "4"]);
        assert_eq!((code, out.as_str()), (1, "NO KAPPA EXISTS\n"));
        let (code, out, _) = call(&["kappa-search", "lukasiewicz", "4", "--brute-force"]);
        assert_eq!((code, out.as_str()), (1, "NO KAPPA EXISTS\n"));
    }

    #[test]
    fn subalg_closure_listing() {
        let (code, out, _) = call(&["subalg", "--budget", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out, "0 1/4 1/2 3/4 1\n");
    }

    #[test]
    fn translate_and_parse() {
        let (code, out, _) = call(&["translate", "#x1"]);
        assert_eq!((code, out.as_str()), (0, "*(y + x1)\n"));

        let (code, out, _) = call(&["parse", "( x1+  !x2 )"]);
        assert_eq!((code, out.as_str()), (0, "(x1 + !x2)\n"));

        let (code, out, _) = call(&["parse", "#0", "--formation"]);
        assert_eq!(code, 0);
        assert_eq!(out, "#0\n1. 0 [S2]\n2. #0 [S5 1]\n");
    }

    #[test]
    fn eval_surface() {
        let (code, out, _) = call(&[
            "eval",
            "(x1 + x2)",
            "--assign",
            "x1=1/2",
            "--assign",
            "x2=3/4",
        ]);
        assert_eq!((code, out.as_str()), (0, "1\n"));

        let (code, out, _) = call(&["eval", "--lang", "cpl", "%P1", "--assign", "P1=1/2"]);
        assert_eq!((code, out.as_str()), (0, "1/4\n"));

        let (code, out, _) = call(&[
            "eval",
            "--lang",
            "lu",
            "*(y + 0)",
            "--unit",
            "(1)",
        ]);
        assert_eq!((code, out.as_str()), (0, "(1/2)\n"));

        let (code, _, err) = call(&["eval", "x1"]);
        assert_eq!(code, 2);
        assert!(err.contains("unbound"));
    }

    #[test]
    fn proof_check_stdin() {
        let text = "hyp 0: (P1 -. P2)\nhyp 1: P2\n1. (P1 -. P2) ; hyp 0\n2. P2 ; hyp 1\n3. P1 ; mp 1 2\n";
        let argv: Vec<String> = ["cpl", "proof-check", "-"].iter().map(|s| s.to_string()).collect();
        let (code, out, _) = run(&argv, text);
        assert_eq!((code, out.as_str()), (0, "ACCEPTED\n"));

        let bad = "1. P1 ; mp 1 1\n";
        let (code, out, _) = run(&argv, bad);
        assert_eq!(code, 1);
        assert!(out.starts_with("REJECTED step 1"));
    }

    #[test]
    fn audit_standard_passes() {
        let (code, out, _) = call(&["audit", "standard", "--samples", "500"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("C1: pass (500 tuples)"));
        assert!(out.contains("C8: pass (500 tuples)"));
    }

    #[test]
    fn gamma_audit_passes() {
        let (code, out, _) = call(&["gamma", "--unit", "(1, 0)", "--samples", "300"]);
        assert_eq!(code, 0, "{out}");
    }

    #[test]
    fn json_format() {
        let (code, out, _) = call(&["taut", "P1", "--format", "json"]);
        assert_eq!(code, 1);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdict"], "counterexample");
        assert_eq!(v["witness"]["valuation"]["P1"], "1");

        let (_, out, _) = call(&["eq", "x1", "x1", "--format", "json"]);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["verdict"], "valid");
    }

    #[test]
    fn usage_errors_exit_2() {
        let (code, _, err) = call(&["frobnicate"]);
        assert_eq!(code, 2);
        assert!(!err.is_empty());
        let (code, _, _) = call(&["kappa-search", "lukasiewicz", "0"]);
        assert_eq!(code, 2);
    }
}
