//! Argument parsing and command dispatch.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use invpair::oracle::{
    quotient_refute, todd_coxeter, Claim, CosetStatus, FinitePresentation, OracleError, Refutation,
    DEFAULT_MAX_COSETS,
};
use invpair::orbifold::{BaseOrbifold, DEFAULT_CONJUGATOR_RADIUS};
use invpair::seifert::{
    case23r_report, classify_family, find_inner_inversion, genset237_engine, parse_pair_file,
    parse_presentation_file, verify_inner_inversion, Family, FamilyDescriptor, InnerInversion,
    PairFile, SeifertError, SeifertPresentation, TwistedPresentation, DEFAULT_MAX_WORD,
};
use invpair::words::{parse_word, InnerWitness, Word};
use serde_json::json;

use crate::suite::{
    format_report, report_json, verify_paper_suite, CheckResult, SuiteConfig, Verdict,
};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EXHAUSTED: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "invpair",
    version,
    about = "Generating pairs and inversions in 2-orbifold and Seifert fibered groups"
)]
pub struct Cli {
    #[command(flatten)]
    pub budget: Budget,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Budget {
    /// Conjugator search radius, in letters.
    #[arg(long, global = true)]
    pub radius: Option<usize>,
    /// Coset limit for Todd-Coxeter.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_COSETS)]
    pub max_cosets: usize,
    /// Longest base word the rewriting engine accepts.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_WORD)]
    pub kb_rules: usize,
    /// Print a JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Normal form `(base, f^t)` of a word.
    Normalize {
        #[arg(long)]
        pres: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Does a pair generate? Either a closed-form family or a presentation and pair file.
    CheckGeneration(GenerationArgs),
    /// Search for, or verify, an inner inversion of a pair.
    CheckInvertible {
        #[arg(long)]
        pres: PathBuf,
        #[arg(long)]
        pair: PathBuf,
    },
    /// Classify a family descriptor.
    Classify {
        #[arg(long)]
        family: String,
    },
    /// Look for finite quotients refuting a claim.
    QuotientScan(ScanArgs),
    /// Run the full replay suite.
    VerifyPaper {
        /// Brieskorn fixture; its `fiberExp` replaces the default 6.
        #[arg(long)]
        pres: Option<PathBuf>,
        /// Skip cross-oracle checks; they report UNKNOWN.
        #[arg(long)]
        no_oracles: bool,
        #[arg(long, default_value_t = SuiteConfig::default().seed)]
        seed: u64,
    },
}

#[derive(Args, Debug)]
pub struct GenerationArgs {
    /// `2,3,r`, `2,4,r` or `3,3,r`.
    #[arg(long, conflicts_with_all = ["pres", "pair"], requires_all = ["fiber_exp", "k", "l"])]
    pub family: Option<String>,
    #[arg(long = "fiberExp", allow_negative_numbers = true)]
    pub fiber_exp: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub k: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    pub l: Option<i64>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 1)]
    pub eta: i64,
    #[arg(long, requires = "pair")]
    pub pres: Option<PathBuf>,
    #[arg(long, requires = "pres")]
    pub pair: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long, conflicts_with = "base", required_unless_present = "base")]
    pub pres: Option<PathBuf>,
    /// Triangle base, e.g. `S2(3,3,4)`, scanned without a fiber.
    #[arg(long)]
    pub base: Option<String>,
    /// Scans `g ~ g^-1`, `h ~ h^-1` and generation.
    #[arg(long)]
    pub pair: Option<PathBuf>,
    /// `u = v`.
    #[arg(long)]
    pub equal: Option<String>,
    /// `u ~ v`.
    #[arg(long)]
    pub conjugate: Option<String>,
}

pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String, code: i32) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }

    fn err(code: i32, msg: impl std::fmt::Display) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

fn seifert_exit(e: &SeifertError) -> i32 {
    match e {
        SeifertError::BudgetExhausted { .. } => EXIT_EXHAUSTED,
        _ => EXIT_USAGE,
    }
}

fn read(path: &Path) -> Result<String, Outcome> {
    fs::read_to_string(path)
        .map_err(|e| Outcome::err(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn load_pres(path: &Path, budget: &Budget) -> Result<SeifertPresentation, Outcome> {
    let text = read(path)?;
    let f = parse_presentation_file(&text)
        .map_err(|e| Outcome::err(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    SeifertPresentation::with_budget(f.base, f.e1, f.e2, f.fiber_exp, budget.kb_rules)
        .map_err(|e| Outcome::err(seifert_exit(&e), format!("{}: {e}", path.display())))
}

fn load_pair(path: &Path) -> Result<PairFile, Outcome> {
    let text = read(path)?;
    parse_pair_file(&text).map_err(|e| Outcome::err(EXIT_USAGE, format!("{}: {e}", path.display())))
}

fn word(s: &str) -> Result<Word, Outcome> {
    parse_word(s).map_err(|e| Outcome::err(EXIT_USAGE, format!("`{s}`: {e}")))
}

fn checks_outcome(checks: &[CheckResult], json: bool) -> Outcome {
    let stdout = if json {
        format!("{}\n", report_json(checks))
    } else {
        format_report(checks)
    };
    let code = if checks.iter().any(|c| c.verdict == Verdict::Fail) {
        EXIT_FAIL
    } else if checks.iter().any(|c| c.exhausted) {
        EXIT_EXHAUSTED
    } else {
        EXIT_PASS
    };
    Outcome::ok(stdout, code)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PASS
            };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text, code)
            };
        }
    };
    dispatch(&cli).unwrap_or_else(|o| o)
}

fn dispatch(cli: &Cli) -> Result<Outcome, Outcome> {
    let b = &cli.budget;
    match &cli.command {
        Command::Normalize { pres, word: w } => normalize(&load_pres(pres, b)?, &word(w)?, b.json),
        Command::CheckGeneration(args) => check_generation(args, b),
        Command::CheckInvertible { pres, pair } => check_invertible(pres, pair, b),
        Command::Classify { family } => classify(family, b.json),
        Command::QuotientScan(args) => quotient_scan(args, b),
        Command::VerifyPaper {
            pres,
            no_oracles,
            seed,
        } => {
            let mut cfg = SuiteConfig {
                oracles: !no_oracles,
                max_cosets: b.max_cosets,
                max_word: b.kb_rules,
                seed: *seed,
                ..SuiteConfig::default()
            };
            if let Some(r) = b.radius {
                cfg.radius = r;
            }
            if let Some(path) = pres {
                let f = parse_presentation_file(&read(path)?)
                    .map_err(|e| Outcome::err(EXIT_USAGE, format!("{}: {e}", path.display())))?;
                if f.base != (BaseOrbifold::Triangle { p: 2, q: 3, r: 7 }) || f.e1 != 1 || f.e2 != 1
                {
                    return Err(Outcome::err(
                        EXIT_USAGE,
                        "the Brieskorn fixture must have base=S2(2,3,7), e1=1, e2=1",
                    ));
                }
                cfg.brieskorn_fiber_exp = f.fiber_exp;
            }
            Ok(checks_outcome(&verify_paper_suite(&cfg), b.json))
        }
    }
}

fn normalize(pres: &SeifertPresentation, w: &Word, json: bool) -> Result<Outcome, Outcome> {
    let x = pres
        .normalize(w)
        .map_err(|e| Outcome::err(seifert_exit(&e), e))?;
    let stdout = if json {
        format!(
            "{}\n",
            json!({ "base": x.base.to_string(), "t": x.t.to_string() })
        )
    } else {
        format!("({}, f^{})\n", x.base, x.t)
    };
    Ok(Outcome::ok(stdout, EXIT_PASS))
}

fn parse_family(s: &str) -> Result<(Family, u32), Outcome> {
    let bad = || Outcome::err(EXIT_USAGE, format!("family `{s}` is not p,q,r"));
    let v: Vec<u32> = s
        .split(',')
        .map(|x| x.trim().parse().map_err(|_| bad()))
        .collect::<Result<_, _>>()?;
    let [p, q, r] = v[..] else { return Err(bad()) };
    let fam = Family::from_orders(p, q).ok_or_else(|| {
        Outcome::err(
            EXIT_USAGE,
            format!("no exceptional family with orders {p},{q}"),
        )
    })?;
    Ok((fam, r))
}

fn generation_line(generates: bool, what: &str, n: impl std::fmt::Display) -> String {
    if generates {
        "generating".to_string()
    } else {
        format!("not generating ({what} {n})")
    }
}

fn check_generation(args: &GenerationArgs, b: &Budget) -> Result<Outcome, Outcome> {
    if let Some(fam) = &args.family {
        let (family, r) = parse_family(fam)?;
        let (fe, k, l) = (args.fiber_exp.unwrap(), args.k.unwrap(), args.l.unwrap());
        let (generates, gcd, exponents) = if (family, r) == (Family::TwoThree, 7) {
            let g = genset237_engine(fe, k, l).map_err(|e| Outcome::err(seifert_exit(&e), e))?;
            let ex: Vec<String> = g.exponents.iter().map(|x| x.to_string()).collect();
            (g.generates, g.gcd, ex)
        } else {
            let rep = case23r_report(family, r, fe, k, l, args.eta)
                .map_err(|e| Outcome::err(seifert_exit(&e), e))?;
            let ex: Vec<String> = rep.exponents.iter().map(|(_, t)| t.to_string()).collect();
            (rep.generates, rep.intersection.d, ex)
        };
        let line = generation_line(generates, "gcd", &gcd);
        let stdout = if b.json {
            json!({ "generates": generates, "gcd": gcd.to_string(), "exponents": exponents })
                .to_string()
        } else {
            line
        };
        return Ok(Outcome::ok(
            stdout + "\n",
            if generates { EXIT_PASS } else { EXIT_FAIL },
        ));
    }
    let (Some(pres), Some(pair)) = (&args.pres, &args.pair) else {
        return Err(Outcome::err(
            EXIT_USAGE,
            "check-generation needs --family with --fiberExp, --k, --l, or --pres with --pair",
        ));
    };
    let pres = load_pres(pres, b)?;
    let pair = load_pair(pair)?.pair;
    let table = todd_coxeter(
        &pres.finite_presentation(),
        &[pair.first, pair.second],
        b.max_cosets,
    )
    .map_err(|e| Outcome::err(EXIT_USAGE, e))?;
    match table.status() {
        CosetStatus::Index(n) => {
            let stdout = if b.json {
                json!({ "generates": n == 1, "index": n }).to_string()
            } else {
                generation_line(n == 1, "index", n)
            };
            Ok(Outcome::ok(
                stdout + "\n",
                if n == 1 { EXIT_PASS } else { EXIT_FAIL },
            ))
        }
        CosetStatus::Overflow => Err(Outcome::err(
            EXIT_EXHAUSTED,
            format!("coset enumeration exceeded {} cosets", b.max_cosets),
        )),
    }
}

fn check_invertible(pres: &Path, pair: &Path, b: &Budget) -> Result<Outcome, Outcome> {
    let pres = load_pres(pres, b)?;
    let PairFile { pair, witness } = load_pair(pair)?;
    let fail = |e: SeifertError| Outcome::err(seifert_exit(&e), e);
    let check = match witness {
        Some(w) => {
            let ok = verify_inner_inversion(&pres, &pair, &InnerWitness::new(w.clone()))
                .map_err(fail)?;
            CheckResult::pass_if("invertible", ok)
                .with("witness", &w)
                .with("source", "file")
        }
        None => {
            let radius = b.radius.unwrap_or(DEFAULT_CONJUGATOR_RADIUS);
            match find_inner_inversion(&pres, &pair, radius).map_err(fail)? {
                InnerInversion::YesWithWitness(w) => CheckResult::new("invertible", Verdict::Pass)
                    .with("witness", w)
                    .with("source", "search"),
                InnerInversion::RefutedConjugacy { element, hom } => {
                    CheckResult::new("invertible", Verdict::Fail)
                        .with("element", element)
                        .with("hom", hom.describe())
                }
                InnerInversion::Unknown => {
                    CheckResult::new("invertible", Verdict::Unknown).with("radius", radius)
                }
            }
        }
    };
    Ok(checks_outcome(&[check], b.json))
}

fn classify(family: &str, json: bool) -> Result<Outcome, Outcome> {
    let d: FamilyDescriptor = family.parse().map_err(|e| Outcome::err(EXIT_USAGE, e))?;
    let c = classify_family(&d).map_err(|e| Outcome::err(seifert_exit(&e), e))?;
    let stdout = if json {
        format!(
            "{}\n",
            json!({
                "descriptor": c.descriptor,
                "verdict": c.verdict,
                "rule": c.rule,
                "inversion": c.inversion,
                "evidence": c.evidence,
            })
        )
    } else {
        let mut s = format!(
            "family: {}\nverdict: {}\nrule: {}\n",
            c.descriptor, c.verdict, c.rule
        );
        for e in &c.evidence {
            s.push_str(&format!("evidence: {e}\n"));
        }
        s
    };
    Ok(Outcome::ok(stdout, EXIT_PASS))
}

fn split_claim(s: &str, sep: char) -> Result<(Word, Word), Outcome> {
    let (u, v) = s
        .split_once(sep)
        .ok_or_else(|| Outcome::err(EXIT_USAGE, format!("expected `u {sep} v`, got `{s}`")))?;
    Ok((word(u.trim())?, word(v.trim())?))
}

fn scan_presentation(args: &ScanArgs, b: &Budget) -> Result<FinitePresentation, Outcome> {
    if let Some(base) = &args.base {
        let base: BaseOrbifold = base.parse().map_err(|e| Outcome::err(EXIT_USAGE, e))?;
        let BaseOrbifold::Triangle { p, q, r } = base else {
            return Err(Outcome::err(
                EXIT_USAGE,
                "--base must be a triangle orbifold",
            ));
        };
        return Ok(FinitePresentation::triangle(p, q, r));
    }
    let path = args.pres.as_ref().expect("clap requires --pres or --base");
    let f = parse_presentation_file(&read(path)?)
        .map_err(|e| Outcome::err(EXIT_USAGE, format!("{}: {e}", path.display())))?;
    match f.base {
        BaseOrbifold::Triangle { .. } => Ok(load_pres(path, b)?.finite_presentation()),
        other => TwistedPresentation::new(other)
            .map(|t| t.finite_presentation())
            .map_err(|e| Outcome::err(EXIT_USAGE, e)),
    }
}

fn quotient_scan(args: &ScanArgs, b: &Budget) -> Result<Outcome, Outcome> {
    let pres = scan_presentation(args, b)?;
    let mut claims: Vec<(String, Claim)> = Vec::new();
    if let Some(path) = &args.pair {
        let pair = load_pair(path)?.pair;
        claims.push((
            "scan.g-inverse".into(),
            Claim::Conjugate(pair.first.clone(), pair.first.inv()),
        ));
        claims.push((
            "scan.generates".into(),
            Claim::Generates(vec![pair.first.clone(), pair.second.clone()]),
        ));
        claims.push((
            "scan.h-inverse".into(),
            Claim::Conjugate(pair.second.clone(), pair.second.inv()),
        ));
    }
    if let Some(s) = &args.equal {
        let (u, v) = split_claim(s, '=')?;
        claims.push(("scan.equal".into(), Claim::Equal(u, v)));
    }
    if let Some(s) = &args.conjugate {
        let (u, v) = split_claim(s, '~')?;
        claims.push(("scan.conjugate".into(), Claim::Conjugate(u, v)));
    }
    if claims.is_empty() {
        return Err(Outcome::err(
            EXIT_USAGE,
            "quotient-scan needs --pair, --equal or --conjugate",
        ));
    }
    let mut checks = Vec::new();
    for (id, claim) in claims {
        let res =
            quotient_refute(&pres, &claim).map_err(|e: OracleError| Outcome::err(EXIT_USAGE, e))?;
        checks.push(match res {
            Refutation::Refuted(h) => CheckResult::new(id, Verdict::Fail).with("hom", h.describe()),
            Refutation::NotRefuted => CheckResult::new(id, Verdict::Unknown).with("refuted", false),
        });
    }
    checks.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(checks_outcome(&checks, b.json))
}
