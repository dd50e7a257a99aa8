//! `logogram`: reduced logograms, independence, wizards, Galois checks and
//! program kernels of small decision problems.
//!
//! Exit status: 0 success, 1 invalid input, 2 budget exhausted, 3 a checked
//! property does not hold.

mod output;

use std::fs;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use logogram_core::galois::verify_galois;
use logogram_core::independence::{internal_independence, simple_independence, strong_independence};
use logogram_core::kernel::{builtin_programs, compare_kernels, trace_all, DecisionProgram};
use logogram_core::problems::{
    composite_problem, connectivity_problem, gamma, generic_problem, sat_problem, CnfShape, ProblemDescriptor,
};
use logogram_core::wizardry::{cover, witness_union_complete, wizard_report};
use logogram_core::{is_irreducible, Budget, Error, ProblemSlice};

use output::{emit, Format, Report};

#[derive(Parser)]
#[command(name = "logogram", version, about = "Certificate structure of small decision problems")]
struct Cli {
    #[command(flatten)]
    options: Options,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Options {
    /// Maximum number of candidate strings (or pairs, or samples) examined.
    #[arg(long, global = true, env = "LOGOGRAM_BUDGET_STRINGS", default_value_t = Budget::DEFAULT_CANDIDATES)]
    budget_strings: u64,

    /// Wall-clock limit in seconds.
    #[arg(long, global = true, env = "LOGOGRAM_BUDGET_SECONDS")]
    budget_seconds: Option<f64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Seed for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Also compute the reduced logogram of every region.
    #[arg(long, global = true)]
    regions: bool,

    /// Samples for `galois`.
    #[arg(long, global = true, default_value_t = 1000)]
    samples: u64,

    /// JSON-lines trace dump for `kernel`.
    #[arg(long, global = true)]
    trace_out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced logogram of the target set.
    Logogram {
        #[command(subcommand)]
        problem: ProblemArg,
    },
    /// Witness/wizard classification of the reduced logogram.
    Wizards {
        #[command(subcommand)]
        problem: ProblemArg,
    },
    /// Internal, simple and strong independence.
    Independence {
        #[command(subcommand)]
        problem: ProblemArg,
    },
    /// Irreducibility of the reduced logogram, with removal witnesses.
    Irreducible {
        #[command(subcommand)]
        problem: ProblemArg,
    },
    /// Seeded checks of the expansion/logogram Galois connection.
    Galois {
        #[command(subcommand)]
        problem: ProblemArg,
    },
    /// Traced runs and kernels of the built-in decision programs.
    Kernel {
        #[command(subcommand)]
        problem: ProblemArg,
    },
    /// Charts of the cover of the target set and their region containment.
    Cover {
        #[command(subcommand)]
        problem: ProblemArg,
    },
}

#[derive(Subcommand, Clone)]
enum ProblemArg {
    /// CNF formulas with N variables and M clauses.
    Sat { n: usize, m: usize },
    /// Compositeness of WIDTH-bit numbers.
    Composite { width: usize },
    /// Connectivity of graphs on VERTICES labelled vertices.
    Connectivity { vertices: usize },
    /// Table-driven problem from a JSON descriptor.
    Generic { path: PathBuf },
}

impl ProblemArg {
    fn build(&self) -> Result<ProblemSlice, Failure> {
        Ok(match self {
            ProblemArg::Sat { n, m } => sat_problem(CnfShape::new(*n, *m)?)?,
            ProblemArg::Composite { width } => composite_problem(*width)?,
            ProblemArg::Connectivity { vertices } => connectivity_problem(*vertices)?,
            ProblemArg::Generic { path } => {
                let text = fs::read_to_string(path)
                    .map_err(|e| Failure::invalid(format!("cannot read {}: {e}", path.display())))?;
                generic_problem(&ProblemDescriptor::from_json(&text)?)?
            }
        })
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            e if e.is_budget() => 2,
            Error::IncorrectProgram { .. } | Error::MalformedProgram { .. } => 3,
            _ => 1,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

impl Options {
    fn budget(&self) -> Result<Budget, Failure> {
        if self.budget_strings == 0 {
            return Err(Failure::invalid("--budget-strings must be positive"));
        }
        let time = match self.budget_seconds {
            None => None,
            Some(s) if s.is_finite() && s > 0.0 => Some(Duration::from_secs_f64(s)),
            Some(s) => return Err(Failure::invalid(format!("--budget-seconds must be positive, got {s}"))),
        };
        Ok(Budget::new(self.budget_strings, time))
    }
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn logogram_report(p: &ProblemSlice, opts: &Options, budget: &Budget) -> Result<Report, Failure> {
    let slice = p.slice();
    let target = p.logogram(budget)?.report(slice, "F");
    let mut rows: Vec<Vec<String>> = target.strings.iter().map(|s| vec!["F".into(), s.clone()]).collect();
    let title = format!("{}: {} strings in the reduced logogram of F", p.label(), target.count);
    let json = if opts.regions {
        let mut regions = Vec::with_capacity(p.alpha());
        for (i, label) in p.solutions().iter().enumerate() {
            let r = p.region_logogram(i, budget)?.report(slice, label.clone());
            rows.extend(r.strings.iter().map(|s| vec![label.clone(), s.clone()]));
            regions.push(r);
        }
        json!({ "target": target, "regions": regions })
    } else {
        json!(target)
    };
    Ok(Report {
        json,
        title,
        header: vec!["set", "string"],
        rows,
        violation: false,
    })
}

fn wizards_report(p: &ProblemSlice, budget: &Budget) -> Result<Report, Failure> {
    let r = wizard_report(p, budget)?;
    let union_complete = witness_union_complete(p, budget)?;
    let mut rows: Vec<Vec<String>> = r
        .wizards
        .iter()
        .map(|s| vec![s.clone(), "yes".into(), String::new()])
        .collect();
    rows.extend(r.witnesses.iter().map(|w| vec![w.string.clone(), "no".into(), w.regions.join(" ")]));
    let title = format!(
        "{}: {} strings, {} wizards, witness union complete: {}",
        p.label(),
        r.logogram_size,
        r.wizards.len(),
        yes_no(union_complete)
    );
    let mut json = json!(r);
    json["witness_union_complete"] = json!(union_complete);
    Ok(Report {
        json,
        title,
        header: vec!["string", "wizard", "regions"],
        rows,
        violation: !union_complete,
    })
}

fn independence_report(p: &ProblemSlice, budget: &Budget) -> Result<(Report, bool), Failure> {
    let slice = p.slice();
    let internal = internal_independence(slice, budget);
    let simple = simple_independence(p, budget)?;
    let strong = strong_independence(p, budget)?;
    let checks = [("internal", &internal), ("simple", &simple), ("strong", &strong)];
    let rows = checks
        .iter()
        .map(|(name, r)| {
            let json = r.to_json(slice);
            vec![
                name.to_string(),
                if r.verdict.passed() { "pass" } else { "fail" }.to_string(),
                r.strings_checked.to_string(),
                yes_no(r.budget_exhausted),
                json.counterexample.map(|c| c.strings.join(" ")).unwrap_or_default(),
            ]
        })
        .collect();
    let violation = checks.iter().any(|(_, r)| !r.verdict.passed());
    let json = json!({
        "problem": p.label(),
        "internal": internal.to_json(slice),
        "simple": simple.to_json(slice),
        "strong": strong.to_json(slice),
    });
    let report = Report {
        json,
        title: format!("{}: independence", p.label()),
        header: vec!["check", "verdict", "checked", "budget_exhausted", "counterexample"],
        rows,
        violation,
    };
    Ok((report, internal.budget_exhausted))
}

fn irreducible_report(p: &ProblemSlice, budget: &Budget) -> Result<Report, Failure> {
    let slice = p.slice();
    let log = p.logogram(budget)?;
    let r = is_irreducible(log.as_slice(), p)?;
    let mut witnesses = Vec::with_capacity(r.witnesses.len());
    let mut rows = Vec::with_capacity(r.witnesses.len());
    for w in &r.witnesses {
        let word = w.word.as_ref().map(|x| x.render(slice.alphabet()));
        let mut entry = json!({ "string": slice.render(&w.string), "word": word });
        if let Some(shape) = p.cnf_shape() {
            let g = gamma(&w.string, shape)?;
            entry["gamma"] = json!(g.render(slice.alphabet()));
        }
        rows.push(vec![slice.render(&w.string), word.unwrap_or_default()]);
        witnesses.push(entry);
    }
    let json = json!({
        "problem": p.label(),
        "irreducible": r.irreducible,
        "removable": r.removable.as_ref().map(|g| slice.render(g)),
        "witnesses": witnesses,
    });
    Ok(Report {
        json,
        title: format!("{}: irreducible: {}", p.label(), yes_no(r.irreducible)),
        header: vec!["string", "witness"],
        rows,
        violation: !r.irreducible,
    })
}

fn galois_report(p: &ProblemSlice, opts: &Options, budget: &Budget) -> Result<Report, Failure> {
    let r = verify_galois(p.slice(), opts.samples, opts.seed, budget)?;
    let rows = r
        .checks
        .iter()
        .map(|c| {
            vec![
                c.eq.clone(),
                c.samples.to_string(),
                if c.verdict.passed() { "pass" } else { "fail" }.to_string(),
                c.counterexample.clone().unwrap_or_default(),
            ]
        })
        .collect();
    Ok(Report {
        title: format!("{}: {} samples, seed {}", r.slice, opts.samples, opts.seed),
        violation: !r.passed(),
        json: json!({ "checks": r.checks }),
        header: vec!["check", "samples", "verdict", "counterexample"],
        rows,
    })
}

fn kernel_report(p: &ProblemSlice, opts: &Options, budget: &Budget) -> Result<Report, Failure> {
    let programs = builtin_programs(p, budget)?;
    let refs: Vec<&dyn DecisionProgram> = programs.iter().map(|b| b.as_ref()).collect();
    if let Some(path) = &opts.trace_out {
        let io = |e: std::io::Error| Failure::invalid(format!("cannot write {}: {e}", path.display()));
        let mut w = BufWriter::new(fs::File::create(path).map_err(io)?);
        for prog in &refs {
            for record in trace_all(*prog, p, budget)? {
                let line = serde_json::to_string(&record).map_err(|e| Failure::invalid(e.to_string()))?;
                writeln!(w, "{line}").map_err(io)?;
            }
        }
        w.flush().map_err(io)?;
    }
    let c = compare_kernels(&refs, p, budget)?;
    let rows = c
        .programs
        .iter()
        .map(|k| vec![k.program.clone(), k.size.to_string(), yes_no(k.complete), yes_no(k.equals_logogram)])
        .collect();
    let violation = c.programs.iter().any(|k| !k.complete) || (c.irreducible && !c.all_equal);
    Ok(Report {
        title: format!(
            "{}: |Log| = {}, irreducible: {}, kernels equal: {}",
            c.problem,
            c.logogram_size,
            yes_no(c.irreducible),
            yes_no(c.all_equal)
        ),
        json: json!(c),
        header: vec!["program", "kernel_size", "complete", "equals_logogram"],
        rows,
        violation,
    })
}

fn cover_report(p: &ProblemSlice, budget: &Budget) -> Result<Report, Failure> {
    let r = cover(p, budget)?;
    let rows = r
        .charts
        .iter()
        .map(|c| vec![c.string.clone(), c.expansion_size.to_string(), c.containing_regions.to_string()])
        .collect();
    let mut notes = Vec::new();
    if r.flags.multiple_containment {
        notes.push(format!("a chart lies in {} regions", r.flags.max_containing_regions));
    }
    if r.flags.fewer_charts_than_regions {
        notes.push("fewer charts than regions".to_string());
    }
    let title = format!(
        "{}: {} charts, {} regions{}",
        r.problem,
        r.total_charts,
        r.region_count,
        if notes.is_empty() {
            String::new()
        } else {
            format!("; flagged: {}", notes.join(", "))
        }
    );
    Ok(Report {
        title,
        json: json!(r),
        header: vec!["string", "expansion_size", "containing_regions"],
        rows,
        violation: false,
    })
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    let opts = &cli.options;
    let budget = opts.budget()?;
    let (problem, command) = match &cli.command {
        Command::Logogram { problem } => (problem, "logogram"),
        Command::Wizards { problem } => (problem, "wizards"),
        Command::Independence { problem } => (problem, "independence"),
        Command::Irreducible { problem } => (problem, "irreducible"),
        Command::Galois { problem } => (problem, "galois"),
        Command::Kernel { problem } => (problem, "kernel"),
        Command::Cover { problem } => (problem, "cover"),
    };
    let p = problem.build()?;
    let mut budget_hit = false;
    let report = match command {
        "logogram" => logogram_report(&p, opts, &budget)?,
        "wizards" => wizards_report(&p, &budget)?,
        "independence" => {
            let (r, exhausted) = independence_report(&p, &budget)?;
            budget_hit = exhausted;
            r
        }
        "irreducible" => irreducible_report(&p, &budget)?,
        "galois" => galois_report(&p, opts, &budget)?,
        "kernel" => kernel_report(&p, opts, &budget)?,
        _ => cover_report(&p, &budget)?,
    };
    let text = report.render(opts.format).map_err(Failure::invalid)?;
    emit(&text, opts.out.as_deref()).map_err(|e| Failure::invalid(format!("cannot write report: {e}")))?;
    Ok(if report.violation {
        3
    } else if budget_hit {
        2
    } else {
        0
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
