//! Command-line front end for the Johnson-scheme perfect-code toolkit:
//! parameter sieving, exclusion-table reproduction, file-based verification
//! of codes and designs, Pell-family scans, and direct moment evaluation.
//!
//! All numeric output is exact decimal. Identical invocations produce
//! byte-identical output; set `JS_THREADS` to cap internal parallelism
//! (output order is canonical regardless).

use clap::{Args, Parser, Subcommand, ValueEnum};
use johnson_scheme::designs::{code_strength, verify_design, BlockDesign};
use johnson_scheme::exactmath::ExactInt;
use johnson_scheme::johnson::{
    verify_perfect, verify_perfect_doubly, Code, DoublyCode, DoublyPerfectVerdict, PerfectVerdict,
    DEFAULT_DOUBLY_GUARD, DEFAULT_N_GUARD,
};
use johnson_scheme::moments::{
    a_moment_1perfect, b_moment_1perfect, delta_moment_1perfect, delta_moments_2perfect, strength,
    TranslateLeader,
};
use johnson_scheme::pell::exclusion_scan;
use johnson_scheme::sieve::{
    doubly_checks, residue_classes_2perfect, residue_tables_1perfect, sieve_range, Conclusion,
    DoublyParams, PointReport, RuleVerdict, Status, RULE_IDS,
};
use std::io::Write as _;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "jsieve",
    about = "Necessary-condition sieve for perfect codes in the Johnson scheme",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    /// One tab-separated row per (parameter point, rule).
    Tsv,
    /// One block per parameter point with rule witnesses verbatim.
    StructuredText,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value = "tsv")]
    format: Format,
    /// Write output to a file instead of stdout.
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Run every necessary condition over a rectangle of (w, a = n-2w)
    /// parameters and report the points that are not excluded.
    ///
    /// TSV columns: n, w, e, rule, status, witness, conclusion.
    Sieve {
        /// Packing radius e.
        #[arg(long, default_value_t = 1)]
        e: u64,
        #[arg(long, default_value_t = 1)]
        w_min: u64,
        #[arg(long)]
        w_max: u64,
        #[arg(long, default_value_t = 0)]
        a_min: u64,
        /// Upper bound on a = n - 2w (defaults to w-max).
        #[arg(long)]
        a_max: Option<u64>,
        /// Restrict to n = 2w (shorthand for --a-min 0 --a-max 0).
        #[arg(long)]
        n_eq_2w: bool,
        /// Comma-separated rule subset (default: all rules).
        #[arg(long, value_delimiter = ',')]
        rules: Option<Vec<String>>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Reproduce the exclusion tables.
    Tables {
        #[arg(long, value_enum)]
        which: Table,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Verify a code or design file by brute-force enumeration.
    ///
    /// Exit code 0 = verified, 1 = refuted, 2 = parse or guard error.
    Verify {
        /// Constant-weight code file (header `n=.. w=..` optional, one word
        /// per line as 0-based coordinates).
        #[arg(long, conflicts_with_all = ["design", "doubly_code"])]
        code: Option<std::path::PathBuf>,
        /// Block-design file (same block-list format).
        #[arg(long, conflicts_with = "doubly_code")]
        design: Option<std::path::PathBuf>,
        /// Doubly-constant-weight code file (mandatory header
        /// `n1=.. w1=.. n2=.. w2=..`).
        #[arg(long)]
        doubly_code: Option<std::path::PathBuf>,
        /// Packing radius for code verification.
        #[arg(long)]
        e: Option<u32>,
        /// Design strength t for design verification.
        #[arg(long)]
        t: Option<u32>,
    },
    /// Scan the Pell-equation family behind 2-perfect codes in J(2w,w).
    ///
    /// TSV columns: t, k, x, y, w, 1+4(x-y), 1+4(x+y), w=2(mod 12),
    /// x=1(mod 3), plus-square, minus-square, w>=5, survives.
    Pell {
        /// Report every row with n = 2w below this bound.
        #[arg(long, default_value = "2500000000000000")]
        n_limit: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Apply the doubly-constant-weight necessary conditions to one point.
    Doubly {
        #[arg(long)]
        w1: u64,
        #[arg(long)]
        n1: u64,
        #[arg(long)]
        w2: u64,
        #[arg(long)]
        n2: u64,
        #[arg(long, default_value_t = 1)]
        e: u64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Evaluate the configuration-moment closed forms at one point.
    ///
    /// e=1: strength, difference, A- and B-moments at index k.
    /// e=2 with n=2w: strength and both translate-leader moments at j=k.
    Moments {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        w: i64,
        #[arg(long)]
        k: i64,
        #[arg(long, default_value_t = 1)]
        e: i64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Table {
    /// Tables 1-2: residue exclusion grids mod 60 with refinements.
    #[value(name = "1perfect-mod60")]
    OnePerfectMod60,
    /// Surviving residue classes for 2-perfect codes in J(2w,w).
    #[value(name = "2perfect-classes")]
    TwoPerfectClasses,
    /// Table 3: the Pell family below 2.5e15 with its exclusion columns.
    Pell,
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Unknown => "unknown",
        Status::NotApplicable => "n/a",
    }
}

fn conclusion_str(c: &Conclusion) -> String {
    match c {
        Conclusion::Trivial(f) => format!("trivial({})", f.label()),
        Conclusion::Excluded(ids) => format!("excluded({})", ids.join(",")),
        Conclusion::Survives => "survives".to_string(),
    }
}

fn render_point_tsv(out: &mut String, r: &PointReport) {
    let c = conclusion_str(&r.conclusion);
    let (n, w, e) = (r.params.n, r.params.w, r.params.e);
    if r.verdicts.is_empty() {
        out.push_str(&format!("{n}\t{w}\t{e}\t-\t-\t-\t{c}\n"));
        return;
    }
    for v in &r.verdicts {
        out.push_str(&format!(
            "{n}\t{w}\t{e}\t{}\t{}\t{}\t{c}\n",
            v.rule,
            status_str(v.status),
            v.witness
        ));
    }
}

fn render_point_structured(out: &mut String, r: &PointReport) {
    out.push_str(&format!(
        "point n={} w={} e={}\n",
        r.params.n, r.params.w, r.params.e
    ));
    if r.canonical.w != r.params.w {
        out.push_str(&format!("canonical w={}\n", r.canonical.w));
    }
    out.push_str(&format!("conclusion: {}\n", conclusion_str(&r.conclusion)));
    for v in &r.verdicts {
        render_verdict_structured(out, v);
    }
    out.push('\n');
}

fn render_verdict_structured(out: &mut String, v: &RuleVerdict) {
    if v.witness.is_empty() {
        out.push_str(&format!("  {}: {}\n", v.rule, status_str(v.status)));
    } else {
        out.push_str(&format!(
            "  {}: {} | {}\n",
            v.rule,
            status_str(v.status),
            v.witness
        ));
    }
}

fn emit(output: &OutputArgs, text: &str) -> Result<(), String> {
    match &output.out {
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| format!("writing stdout: {e}"))?;
        }
        Some(path) => {
            std::fs::write(path, text).map_err(|e| format!("writing {}: {e}", path.display()))?;
        }
    }
    Ok(())
}

fn cmd_sieve(
    e: u64,
    w_min: u64,
    w_max: u64,
    a_min: u64,
    a_max: Option<u64>,
    n_eq_2w: bool,
    rules: Option<Vec<String>>,
    output: &OutputArgs,
) -> Result<ExitCode, String> {
    let (a_min, a_max) = if n_eq_2w {
        (0, 0)
    } else {
        (a_min, a_max.unwrap_or(w_max))
    };
    if a_min > a_max {
        return Err(format!("--a-min {a_min} exceeds --a-max {a_max}"));
    }
    if let Some(rs) = &rules {
        for r in rs {
            if !RULE_IDS.contains(&r.as_str()) {
                return Err(format!("unknown rule '{r}' (see --help for the catalog)"));
            }
        }
    }
    let reports = sieve_range(e, w_min, w_max, a_min, a_max, rules.as_deref());
    let mut text = String::new();
    for r in &reports {
        match output.format {
            Format::Tsv => render_point_tsv(&mut text, r),
            Format::StructuredText => render_point_structured(&mut text, r),
        }
    }
    emit(output, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_tables(which: Table, output: &OutputArgs) -> Result<ExitCode, String> {
    let mut text = String::new();
    match which {
        Table::Pell => {
            let limit: ExactInt = "2500000000000000".parse().unwrap();
            for rep in exclusion_scan(&limit) {
                let s = &rep.solution;
                text.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\n",
                    s.k, s.col2, s.col3, s.x, s.w
                ));
            }
        }
        Table::OnePerfectMod60 => {
            let t = residue_tables_1perfect();
            for (name, table) in [("table1", &t.table1), ("table2", &t.table2)] {
                text.push_str(name);
                for r in table.residues {
                    text.push_str(&format!("\t{r}"));
                }
                text.push('\n');
                for (i, &w0) in table.residues.iter().enumerate() {
                    text.push_str(&w0.to_string());
                    for j in 0..5 {
                        text.push_str(if table.dash[i][j] { "\t-" } else { "\t+" });
                    }
                    text.push('\n');
                }
            }
            for r in &t.refinements {
                text.push_str(&format!(
                    "refinement\ttable{}\tw={}\tn-w={}\t{}\n",
                    r.table,
                    r.w_residue,
                    r.u_residue,
                    r.condition()
                ));
            }
        }
        Table::TwoPerfectClasses => {
            let c = residue_classes_2perfect();
            let join = |v: &[u64]| {
                v.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            };
            text.push_str(&format!("mod 60: {}\n", join(&c.mod60)));
            text.push_str(&format!("mod 420: {}\n", join(&c.mod420)));
        }
    }
    emit(output, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(
    code: Option<std::path::PathBuf>,
    design: Option<std::path::PathBuf>,
    doubly_code: Option<std::path::PathBuf>,
    e: Option<u32>,
    t: Option<u32>,
) -> Result<ExitCode, String> {
    let read = |p: &std::path::Path| {
        std::fs::read_to_string(p).map_err(|e| format!("reading {}: {e}", p.display()))
    };
    match (code, design, doubly_code) {
        (Some(path), None, None) => {
            let e = e.ok_or("--code requires --e")?;
            let code = Code::parse(&read(&path)?).map_err(|err| err.to_string())?;
            let verdict = verify_perfect(&code, e, DEFAULT_N_GUARD).map_err(|err| err.to_string())?;
            match verdict {
                PerfectVerdict::Perfect { min_j_distance } => {
                    println!(
                        "PERFECT: {} words, e={e}, min J-distance {}",
                        code.len(),
                        min_j_distance.map_or("-".to_string(), |d| d.to_string())
                    );
                    Ok(ExitCode::SUCCESS)
                }
                PerfectVerdict::NotPerfect { witness, count } => {
                    println!(
                        "NOT PERFECT: word {:?} is covered {count} times",
                        witness.support()
                    );
                    Ok(ExitCode::from(1))
                }
            }
        }
        (None, Some(path), None) => {
            let t = t.ok_or("--design requires --t")?;
            let d = BlockDesign::parse(&read(&path)?).map_err(|err| err.to_string())?;
            match verify_design(&d, t) {
                Some(lambda) => {
                    println!(
                        "DESIGN: {t}-({},{},{lambda}) design, strength {}",
                        d.n(),
                        d.w(),
                        code_strength(&d)
                    );
                    Ok(ExitCode::SUCCESS)
                }
                None => {
                    println!("NOT A {t}-DESIGN");
                    Ok(ExitCode::from(1))
                }
            }
        }
        (None, None, Some(path)) => {
            let e = e.ok_or("--doubly-code requires --e")?;
            let code = DoublyCode::parse(&read(&path)?).map_err(|err| err.to_string())?;
            let verdict =
                verify_perfect_doubly(&code, e, DEFAULT_DOUBLY_GUARD).map_err(|err| err.to_string())?;
            match verdict {
                DoublyPerfectVerdict::Perfect { min_j_distance } => {
                    println!(
                        "PERFECT: {} words, e={e}, min J-distance {}",
                        code.len(),
                        min_j_distance.map_or("-".to_string(), |d| d.to_string())
                    );
                    Ok(ExitCode::SUCCESS)
                }
                DoublyPerfectVerdict::NotPerfect { witness, count } => {
                    println!(
                        "NOT PERFECT: word ({:?} | {:?}) is covered {count} times",
                        witness.first().support(),
                        witness.second().support()
                    );
                    Ok(ExitCode::from(1))
                }
            }
        }
        _ => Err("exactly one of --code, --design, --doubly-code is required".into()),
    }
}

fn cmd_pell(n_limit: &str, output: &OutputArgs) -> Result<ExitCode, String> {
    let limit: ExactInt = n_limit
        .parse()
        .map_err(|_| format!("--n-limit '{n_limit}' is not a decimal integer"))?;
    let mut text = String::new();
    for rep in exclusion_scan(&limit) {
        let s = &rep.solution;
        let b = |v: bool| if v { "yes" } else { "no" };
        match output.format {
            Format::Tsv => text.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                s.t,
                s.k,
                s.x,
                s.y,
                s.w,
                s.col2,
                s.col3,
                b(rep.w_residue_pass),
                b(rep.mod3_pass),
                b(rep.c2_square),
                b(rep.d2_square),
                b(rep.w_at_least_5),
                b(rep.survives())
            )),
            Format::StructuredText => {
                text.push_str(&format!("row t={} k={} x={} y={} w={}\n", s.t, s.k, s.x, s.y, s.w));
                text.push_str(&format!("  1+4(x-y) = {}\n  1+4(x+y) = {}\n", s.col2, s.col3));
                text.push_str(&format!(
                    "  w=2(mod 12): {} | x=1(mod 3): {} | plus-branch square: {} | minus-branch square: {} | w>=5: {}\n",
                    b(rep.w_residue_pass),
                    b(rep.mod3_pass),
                    b(rep.c2_square),
                    b(rep.d2_square),
                    b(rep.w_at_least_5)
                ));
                text.push_str(&format!("  survives: {}\n\n", b(rep.survives())));
            }
        }
    }
    emit(output, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_doubly(p: DoublyParams, output: &OutputArgs) -> Result<ExitCode, String> {
    if p.w1 > p.n1 || p.w2 > p.n2 {
        return Err("need w1 <= n1 and w2 <= n2".into());
    }
    let r = doubly_checks(&p);
    let c = conclusion_str(&r.conclusion);
    let mut text = String::new();
    match output.format {
        Format::Tsv => {
            if r.verdicts.is_empty() {
                text.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t-\t-\t-\t{c}\n",
                    p.w1, p.n1, p.w2, p.n2, p.e
                ));
            }
            for v in &r.verdicts {
                text.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{c}\n",
                    p.w1,
                    p.n1,
                    p.w2,
                    p.n2,
                    p.e,
                    v.rule,
                    status_str(v.status),
                    v.witness
                ));
            }
        }
        Format::StructuredText => {
            text.push_str(&format!(
                "point w1={} n1={} w2={} n2={} e={}\n",
                p.w1, p.n1, p.w2, p.n2, p.e
            ));
            text.push_str(&format!("conclusion: {c}\n"));
            for v in &r.verdicts {
                render_verdict_structured(&mut text, v);
            }
            text.push('\n');
        }
    }
    emit(output, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_moments(n: i64, w: i64, k: i64, e: i64) -> Result<ExitCode, String> {
    if !(0 <= w && 2 * w <= n) {
        return Err("need 0 <= w and 2w <= n".into());
    }
    if e == 1 {
        if !(0 <= k && k <= w) {
            return Err("need 0 <= k <= w".into());
        }
        let s = strength(n, w, 1);
        println!(
            "strength: {}",
            s.phi.map_or("non-integral".to_string(), |p| p.to_string())
        );
        println!("delta moment D_{k} = {}", delta_moment_1perfect(n, w, k));
        println!("A-moment A_{k} = {}", a_moment_1perfect(n, w, k));
        println!("B-moment B_{k} = {}", b_moment_1perfect(n, w, k));
        Ok(ExitCode::SUCCESS)
    } else if e == 2 && n == 2 * w {
        if !(0 <= k && k <= w) {
            return Err("need 0 <= k <= w".into());
        }
        let s = strength(n, w, 2);
        println!(
            "strength: {}",
            s.phi.map_or("non-integral".to_string(), |p| p.to_string())
        );
        println!(
            "leader-1 moment at j={k}: {}",
            delta_moments_2perfect(w, k, TranslateLeader::Leader1)
        );
        println!(
            "leader-2 moment at j={k}: {}",
            delta_moments_2perfect(w, k, TranslateLeader::Leader2)
        );
        Ok(ExitCode::SUCCESS)
    } else {
        Err("closed-form moments are available for e=1, or e=2 with n=2w".into())
    }
}

fn run() -> Result<ExitCode, String> {
    if let Ok(threads) = std::env::var("JS_THREADS") {
        let threads: usize = threads
            .parse()
            .map_err(|_| format!("JS_THREADS '{threads}' is not a positive integer"))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .ok();
    }
    let cli = Cli::parse();
    match cli.command {
        Command::Sieve {
            e,
            w_min,
            w_max,
            a_min,
            a_max,
            n_eq_2w,
            rules,
            output,
        } => cmd_sieve(e, w_min, w_max, a_min, a_max, n_eq_2w, rules, &output),
        Command::Tables { which, output } => cmd_tables(which, &output),
        Command::Verify {
            code,
            design,
            doubly_code,
            e,
            t,
        } => cmd_verify(code, design, doubly_code, e, t),
        Command::Pell { n_limit, output } => cmd_pell(&n_limit, &output),
        Command::Doubly {
            w1,
            n1,
            w2,
            n2,
            e,
            output,
        } => cmd_doubly(DoublyParams { w1, n1, w2, n2, e }, &output),
        Command::Moments { n, w, k, e } => cmd_moments(n, w, k, e),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use johnson_scheme::sieve::run_rules;

    #[test]
    fn single_point_sieve_is_consistent() {
        let r = run_rules(14, 7, 1, None);
        let mut tsv = String::new();
        render_point_tsv(&mut tsv, &r);
        assert!(tsv.lines().count() >= 10);
        assert!(tsv.contains("excluded("));
        let mut st = String::new();
        render_point_structured(&mut st, &r);
        assert!(st.starts_with("point n=14 w=7 e=1\n"));
    }
}
