//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification or replay failure, 2 unexplained or
//! stuck leaf, 3 usage error, 4 incomplete search.

use std::ffi::OsString;
use std::io::{self, Write};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::eisenstein::{self, EisensteinInteger};
use crate::engine::{search, SearchConfig};
use crate::families::{verify_family, Family, Verdict};
use crate::forms::BinaryQuadraticForm;
use crate::identities::{self, IdentityRow};
use crate::replay;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_UNEXPLAINED: i32 = 2;
pub const EXIT_USAGE: i32 = 3;
pub const EXIT_INCOMPLETE: i32 = 4;

#[derive(Debug, Parser)]
#[command(name = "quadmult", version, about = "Multiplicative functions commuting with binary quadratic forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Derive every multiplicative function consistent with the form up to N
    Classify(ClassifyArgs),
    /// Check a known family against the functional equation on [1, B]²
    Verify(VerifyArgs),
    /// Re-run a finite derivation step by step
    Replay {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        theorem: u8,
        #[arg(long)]
        json: bool,
    },
    /// Verify the induction identities and their root pairs
    Identities {
        #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(i64).range(1..))]
        kmax: i64,
    },
    /// Splitting table of rational primes in ℤ[ω], or norms
    Eisenstein {
        #[arg(long, value_name = "B")]
        prime_table: Option<u64>,
        /// Norm of u + vω, given as "u,v"
        #[arg(long, value_name = "U,V", allow_hyphen_values = true, value_parser = parse_pair)]
        norm: Vec<(i64, i64)>,
    },
    /// List the positive representations of n by the form
    Represent {
        #[arg(long)]
        form: BinaryQuadraticForm,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[arg(long, allow_hyphen_values = true)]
    form: BinaryQuadraticForm,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(3..))]
    limit: u64,
    #[arg(long)]
    json: bool,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    threads: u64,
    #[arg(long, default_value_t = 16, value_parser = clap::value_parser!(u32).range(1..))]
    degree_cap: u32,
    #[arg(long, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    max_depth: u64,
    #[arg(long, default_value_t = 10_000, value_parser = clap::value_parser!(u64).range(1..))]
    max_branches: u64,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, allow_hyphen_values = true)]
    form: BinaryQuadraticForm,
    #[arg(long)]
    family: Family,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    bound: u64,
    #[arg(long)]
    json: bool,
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let (u, v) = s.split_once(',').ok_or_else(|| format!("expected \"u,v\", got {s:?}"))?;
    let parse = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"));
    Ok((parse(u)?, parse(v)?))
}

/// Runs the CLI on `args` (including the program name), writing to stdout/stderr.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

/// Like [`main_with_args`] with explicit output streams.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_USAGE
                }
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

struct Failure(i32, String);

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure(EXIT_FAILURE, e.to_string())
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure(EXIT_USAGE, e.to_string())
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Classify(args) => classify(args, out),
        Command::Verify(args) => verify(args, out),
        Command::Replay { theorem, json } => replay_cmd(theorem, json, out),
        Command::Identities { kmax } => identities_cmd(kmax, out),
        Command::Eisenstein { prime_table, norm } => eisenstein_cmd(prime_table, &norm, out),
        Command::Represent { form, n, json } => {
            let reps = form.representations(n).map_err(usage)?;
            if json {
                let pairs: Vec<_> = reps.iter().map(|r| [r.x, r.y]).collect();
                writeln!(out, "{}", json!({ "form": form.to_string(), "n": n, "representations": pairs }))?;
            } else {
                let pairs: Vec<String> = reps.iter().map(|r| format!("({},{})", r.x, r.y)).collect();
                writeln!(out, "{n} = Q(x,y) for Q = {form}: {}", if pairs.is_empty() { "none".into() } else { pairs.join(" ") })?;
            }
            Ok(EXIT_OK)
        }
    }
}

fn classify(args: ClassifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let config = SearchConfig {
        degree_cap: args.degree_cap,
        max_depth: args.max_depth as usize,
        max_branches: args.max_branches as usize,
        threads: args.threads as usize,
        ..SearchConfig::default()
    };
    let report = search(&args.form, args.limit, &config).map_err(usage)?;
    if args.json {
        writeln!(out, "{}", report.to_json())?;
    } else {
        write!(out, "{}", report.to_text())?;
    }
    Ok(if report.incomplete {
        EXIT_INCOMPLETE
    } else if report.stuck().next().is_some() || report.unexplained().next().is_some() {
        EXIT_UNEXPLAINED
    } else {
        EXIT_OK
    })
}

fn verify(args: VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let verdict = verify_family(&args.family, &args.form, args.bound);
    if args.json {
        let mut v = serde_json::to_value(verdict).expect("verdict serializes");
        v["family"] = json!(args.family.to_string());
        v["form"] = json!(args.form.to_string());
        v["bound"] = json!(args.bound);
        writeln!(out, "{v}")?;
    } else {
        match verdict {
            Verdict::Pass => writeln!(out, "{} on {} for 1 <= x,y <= {}: pass", args.family, args.form, args.bound)?,
            Verdict::Fail { x, y } => {
                let n = args.form.evaluate(&x.into(), &y.into());
                let f = |m: u64| args.family.value(m);
                let rhs = args.form.apply(&f(x), &f(y));
                let lhs = args.family.value_big(&n);
                writeln!(
                    out,
                    "{} on {}: fail at (x,y) = ({x},{y}): f({n}) = {lhs} but Q(f({x}), f({y})) = {rhs}",
                    args.family, args.form
                )?;
            }
        }
    }
    Ok(if verdict.passed() { EXIT_OK } else { EXIT_FAILURE })
}

fn replay_cmd(theorem: u8, json: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let failed = |e: crate::Error| Failure(EXIT_FAILURE, e.to_string());
    if theorem == 1 {
        let r = replay::replay_theorem1().map_err(failed)?;
        if json {
            writeln!(out, "{}", serde_json::to_string_pretty(&r).expect("replay serializes"))?;
            return Ok(EXIT_OK);
        }
        writeln!(out, "{:<8} {:<8} {:<44} inputs", "step", "value", "relations")?;
        for s in &r.steps {
            print_step(out, s)?;
        }
        let table: Vec<String> = r.values.iter().map(|(n, v)| format!("f({n})={v}")).collect();
        writeln!(out, "\nf(n) = n for 1 <= n <= {}: {}", replay::THEOREM1_RANGE, table.join(" "))?;
    } else {
        let r = replay::replay_theorem2_cases().map_err(failed)?;
        if json {
            writeln!(out, "{}", serde_json::to_string_pretty(&r).expect("replay serializes"))?;
            return Ok(EXIT_OK);
        }
        writeln!(out, "case split: f(2) is a root of the derived condition, roots [{}]", r.split.roots.join(", "))?;
        writeln!(out, "{:>5} {:>5} {:>5} {:>5} {:>5} {:>5}", "f(1)", "f(2)", "f(3)", "f(4)", "f(6)", "f(7)")?;
        for c in &r.cases {
            writeln!(out, "{:>5} {:>5} {:>5} {:>5} {:>5} {:>5}", 1, c.f2, c.f3, c.f4, c.f6, c.f7)?;
        }
        for id in &r.identities {
            writeln!(out, "identity: {id}")?;
        }
        let pattern: Vec<&str> = r.f2_pattern.iter().map(|(_, v)| v.as_str()).collect();
        writeln!(out, "f(2) = 0: f(1..={}) = {}", replay::THEOREM2_BOUND, pattern.join(""))?;
        let last = r.identity_chain.last().map(|(n, v)| format!("f({n})={v}")).unwrap_or_default();
        writeln!(out, "f(2) = 2: f(n) = n for n <= {} ({last})", replay::THEOREM2_BOUND)?;
    }
    Ok(EXIT_OK)
}

fn print_step(out: &mut dyn Write, s: &replay::StepRecord) -> io::Result<()> {
    let rels: Vec<String> = s.relations.iter().map(ToString::to_string).collect();
    let inputs: Vec<String> = s.inputs.iter().map(|(n, v)| format!("f({n})={v}")).collect();
    writeln!(
        out,
        "{:<8} {:<8} {:<44} {}",
        format!("f({})", s.target),
        s.value,
        rels.join("; "),
        inputs.join(" ")
    )
}

fn identities_cmd(kmax: i64, out: &mut dyn Write) -> Result<i32, Failure> {
    let rows = identities::verification_table(kmax);
    writeln!(
        out,
        "{:<14} {:<22} {:<22} {:>3} {:<9} {:<18} unique for k in (k0, {kmax}] / [induction start, {kmax}]",
        "pair", "(u, v)", "(s, t)", "k0", "identity", "roots"
    )?;
    let mut ok = true;
    for IdentityRow { pair, expansion, roots, unique_from_threshold, unique_from_induction_start } in &rows {
        let fmt_pair = |(a, b): (identities::Linear, identities::Linear)| format!("({a}, {b})");
        let roots_s = roots.map(|(a, b)| format!("{a} | {b}")).unwrap_or_else(|| "FAIL".into());
        writeln!(
            out,
            "{:<14} {:<22} {:<22} {:>3} {:<9} {:<18} {} / {}",
            pair.name,
            fmt_pair(pair.left),
            fmt_pair(pair.right),
            pair.threshold,
            if expansion.is_some() { "pass" } else { "FAIL" },
            roots_s,
            if *unique_from_threshold { "pass" } else { "FAIL" },
            if *unique_from_induction_start { "pass" } else { "FAIL" },
        )?;
        ok &= expansion.is_some() && roots.is_some() && *unique_from_threshold && *unique_from_induction_start;
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAILURE })
}

fn eisenstein_cmd(prime_table: Option<u64>, norms: &[(i64, i64)], out: &mut dyn Write) -> Result<i32, Failure> {
    if prime_table.is_none() && norms.is_empty() {
        return Err(usage("eisenstein needs --prime-table B or --norm u,v"));
    }
    if let Some(bound) = prime_table {
        writeln!(out, "{:>6} {:>5} {:<9} witness", "p", "p%3", "type")?;
        for row in eisenstein::prime_table(bound) {
            let witness = match row.splitting.witness() {
                Some(z) => format!("N({z}) = {}", z.norm()),
                None => "-".into(),
            };
            writeln!(out, "{:>6} {:>5} {:<9} {witness}", row.p, row.residue, row.splitting.name())?;
        }
    }
    for &(u, v) in norms {
        let z = EisensteinInteger::new(u, v);
        writeln!(out, "N({z}) = {}", z.norm())?;
    }
    Ok(EXIT_OK)
}
