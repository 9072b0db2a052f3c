use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use wilf_core::{
    count_fixed_with_limit, count_wilf_with_limit, enumerate_all_partitions, enumerate_wilf,
    family, fixed_point_cover, report_with_limits, to_csv, to_json, CountError, CoverError,
    CoverOutcome, CoverSet, FamilyError, FamilySpec, Partition, PartitionError, PermutationSampler,
    ReportLimits, EXCEPTIONS, FIXED_COUNT_LIMIT, WILF_COUNT_LIMIT,
};

#[derive(Parser)]
#[command(
    name = "wilf",
    version,
    about = "Wilf partitions, their involution, and its fixed points"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the output to this file instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum CountKind {
    /// Wilf partitions.
    #[value(name = "f")]
    Wilf,
    /// Fixed points of the involution.
    #[value(name = "F")]
    Fixed,
}

impl CountKind {
    fn label(self) -> &'static str {
        match self {
            CountKind::Wilf => "f",
            CountKind::Fixed => "F",
        }
    }

    fn default_limit(self) -> u64 {
        match self {
            CountKind::Wilf => WILF_COUNT_LIMIT,
            CountKind::Fixed => FIXED_COUNT_LIMIT,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Count Wilf partitions (kind f) or involution fixed points (kind F).
    Count {
        #[arg(long, value_enum)]
        kind: CountKind,
        /// Single weight to count.
        #[arg(long, conflicts_with = "n_max", required_unless_present = "n_max")]
        n: Option<u64>,
        /// Sweep all weights 0..=N-MAX instead.
        #[arg(long, value_name = "N_MAX")]
        n_max: Option<u64>,
        /// Feasibility guard override (largest weight accepted).
        #[arg(long)]
        limit: Option<u64>,
    },
    /// List the partitions of a weight, one per line.
    Enumerate {
        #[arg(long)]
        n: u64,
        /// Only Wilf partitions.
        #[arg(long, conflicts_with = "fixed_only")]
        wilf_only: bool,
        /// Only fixed points of the involution.
        #[arg(long)]
        fixed_only: bool,
        /// Feasibility guard override (largest weight accepted).
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Swap parts with multiplicities in a Wilf partition.
    Involute {
        /// Partition in canonical form, e.g. "5^2+4^1+3^3+1^6".
        #[arg(long)]
        partition: String,
    },
    /// Produce a fixed point of the given weight with labels from the
    /// sparse cover set.
    Cover {
        #[arg(long)]
        n: u64,
    },
    /// Sample lower-bound family members.
    Family {
        #[arg(long)]
        n: u64,
        /// Number of permutation blocks (K).
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Permutation sampler seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// How many members to sample.
        #[arg(long, default_value_t = 1)]
        count: u32,
        /// Explicit block size (R) instead of the canonical formula.
        #[arg(long)]
        r_override: Option<u32>,
        /// Explicit comma-separated labels instead of the smallest
        /// non-members of the cover set.
        #[arg(long, value_delimiter = ',')]
        xs: Option<Vec<u64>>,
    },
    /// Compare exact counts against the logarithmic estimates. Text mode
    /// emits the CSV table.
    Report {
        /// Comma-separated weights.
        #[arg(long, value_delimiter = ',', required_unless_present = "n_max")]
        n_values: Option<Vec<u64>>,
        /// Sweep weights 1..=N-MAX instead.
        #[arg(long, conflicts_with = "n_values", value_name = "N_MAX")]
        n_max: Option<u64>,
        #[arg(long, default_value_t = 1, requires = "n_max")]
        step: u64,
        /// Largest weight for the exact Wilf count column.
        #[arg(long, default_value_t = WILF_COUNT_LIMIT)]
        wilf_limit: u64,
        /// Largest weight for the exact fixed-point count column.
        #[arg(long, default_value_t = FIXED_COUNT_LIMIT)]
        fixed_limit: u64,
    },
    /// Reference table of f and F values with the shifted f row.
    Table {
        #[arg(long, default_value_t = 20)]
        n_max: u64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<CountError> for Failure {
    fn from(e: CountError) -> Self {
        Failure {
            code: 4,
            message: e.to_string(),
        }
    }
}

impl From<PartitionError> for Failure {
    fn from(e: PartitionError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<CoverError> for Failure {
    fn from(e: CoverError) -> Self {
        Failure::usage(e.to_string())
    }
}

impl From<FamilyError> for Failure {
    fn from(e: FamilyError) -> Self {
        Failure {
            code: if e.is_infeasible() { 3 } else { 1 },
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1u8 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    let format = cli.format;
    let out = cli.out.clone();
    match run(cli.command, format) {
        Ok(output) => {
            if let Some(path) = out {
                if let Err(e) = fs::write(&path, &output) {
                    eprintln!("cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            } else {
                print!("{output}");
            }
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("{}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(command: Command, format: Format) -> Result<String, Failure> {
    match command {
        Command::Count {
            kind,
            n,
            n_max,
            limit,
        } => run_count(kind, n, n_max, limit, format),
        Command::Enumerate {
            n,
            wilf_only,
            fixed_only,
            limit,
        } => run_enumerate(n, wilf_only, fixed_only, limit, format),
        Command::Involute { partition } => run_involute(&partition, format),
        Command::Cover { n } => run_cover(n, format),
        Command::Family {
            n,
            k,
            seed,
            count,
            r_override,
            xs,
        } => run_family(n, k, seed, count, r_override, xs, format),
        Command::Report {
            n_values,
            n_max,
            step,
            wilf_limit,
            fixed_limit,
        } => run_report(n_values, n_max, step, wilf_limit, fixed_limit, format),
        Command::Table { n_max } => run_table(n_max, format),
    }
}

fn count_one(kind: CountKind, n: u64, limit: Option<u64>) -> Result<u128, Failure> {
    let limit = limit.unwrap_or_else(|| kind.default_limit());
    let value = match kind {
        CountKind::Wilf => count_wilf_with_limit(n, limit)?,
        CountKind::Fixed => count_fixed_with_limit(n, limit)?,
    };
    Ok(value)
}

fn run_count(
    kind: CountKind,
    n: Option<u64>,
    n_max: Option<u64>,
    limit: Option<u64>,
    format: Format,
) -> Result<String, Failure> {
    let label = kind.label();
    if let Some(n) = n {
        let value = count_one(kind, n, limit)?;
        return Ok(match format {
            Format::Text => format!("{value}\n"),
            Format::Csv => format!("n,{label}\n{n},{value}\n"),
            Format::Json => {
                let row = json!({ "n": n, label: value });
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&row).expect("plain data")
                )
            }
        });
    }
    let n_max = n_max.expect("clap enforces one of --n/--n-max");
    let mut rows = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        rows.push((n, count_one(kind, n, limit)?));
    }
    Ok(match format {
        Format::Text => {
            let mut out = String::new();
            for (n, value) in &rows {
                out.push_str(&format!("{label}({n}) = {value}\n"));
            }
            out
        }
        Format::Csv => {
            let mut out = format!("n,{label}\n");
            for (n, value) in &rows {
                out.push_str(&format!("{n},{value}\n"));
            }
            out
        }
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|(n, v)| json!({ "n": n, label: v }))
                .collect();
            format!(
                "{}\n",
                serde_json::to_string_pretty(&items).expect("plain data")
            )
        }
    })
}

fn run_enumerate(
    n: u64,
    wilf_only: bool,
    fixed_only: bool,
    limit: Option<u64>,
    format: Format,
) -> Result<String, Failure> {
    let texts: Vec<String> = if fixed_only {
        let limit = limit.unwrap_or(FIXED_COUNT_LIMIT);
        wilf_core::enumerate_fixed_with_limit(n, limit)?
            .iter()
            .map(Partition::to_string)
            .collect()
    } else {
        let limit = limit.unwrap_or(WILF_COUNT_LIMIT);
        if n > limit {
            return Err(CountError::TooLarge { n, limit }.into());
        }
        if wilf_only {
            enumerate_wilf(n).map(|p| p.to_string()).collect()
        } else {
            enumerate_all_partitions(n).map(|p| p.to_string()).collect()
        }
    };
    Ok(match format {
        Format::Text => {
            let mut out = String::new();
            for t in &texts {
                out.push_str(t);
                out.push('\n');
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("partition\n");
            for t in &texts {
                out.push_str(t);
                out.push('\n');
            }
            out
        }
        Format::Json => format!(
            "{}\n",
            serde_json::to_string_pretty(&texts).expect("plain data")
        ),
    })
}

fn run_involute(partition: &str, format: Format) -> Result<String, Failure> {
    let p: Partition = partition.parse()?;
    let image = p.involute()?;
    Ok(match format {
        Format::Text => format!("{image}\n"),
        Format::Csv => format!("input,image\n{p},{image}\n"),
        Format::Json => {
            let row = json!({ "input": p.to_string(), "image": image.to_string() });
            format!(
                "{}\n",
                serde_json::to_string_pretty(&row).expect("plain data")
            )
        }
    })
}

fn run_cover(n: u64, format: Format) -> Result<String, Failure> {
    if n == 0 {
        return Err(Failure::usage("weight must be positive"));
    }
    let cs = CoverSet::for_weight(n)?;
    match fixed_point_cover(n, &cs)? {
        CoverOutcome::Covered(member) => Ok(match format {
            Format::Text => format!("{member}\n"),
            Format::Csv => format!("n,member\n{n},{member}\n"),
            Format::Json => {
                let row = json!({ "n": n, "member": member.to_string() });
                format!(
                    "{}\n",
                    serde_json::to_string_pretty(&row).expect("plain data")
                )
            }
        }),
        CoverOutcome::NoCover => {
            let set = EXCEPTIONS
                .iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(", ");
            Err(Failure {
                code: 2,
                message: format!("{n} admits no fixed point; the exception set is {{{set}}}"),
            })
        }
    }
}

fn run_family(
    n: u64,
    k: u32,
    seed: u64,
    count: u32,
    r_override: Option<u32>,
    xs: Option<Vec<u64>>,
    format: Format,
) -> Result<String, Failure> {
    let mut cs = CoverSet::with_depth(10)?;
    let r = match r_override {
        Some(r) => r,
        None => family::block_size_for(n, k)?,
    };
    let mut sampler = PermutationSampler::new(seed);
    let mut members: Vec<String> = Vec::with_capacity(count as usize);
    for _ in 0..count {
        let perms = sampler.permutations(k, r);
        let spec = match &xs {
            Some(labels) => FamilySpec::with_labels(n, k, r, labels.clone(), perms, &mut cs)?,
            None => FamilySpec::with_block_size(n, k, r, perms, &mut cs)?,
        };
        members.push(spec.member(&mut cs)?.to_string());
    }
    let log_size = family::log_size(k, r);
    Ok(match format {
        Format::Text => {
            let mut out = format!("n={n} K={k} R={r} seed={seed} ln_family_size={log_size:.6}\n");
            for m in &members {
                out.push_str(m);
                out.push('\n');
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("n,k,r,seed,index,ln_family_size,member\n");
            for (i, m) in members.iter().enumerate() {
                out.push_str(&format!("{n},{k},{r},{seed},{i},{log_size:.6},{m}\n"));
            }
            out
        }
        Format::Json => {
            let row = json!({
                "n": n,
                "k": k,
                "r": r,
                "seed": seed,
                "ln_family_size": log_size,
                "members": members,
            });
            format!(
                "{}\n",
                serde_json::to_string_pretty(&row).expect("plain data")
            )
        }
    })
}

fn run_report(
    n_values: Option<Vec<u64>>,
    n_max: Option<u64>,
    step: u64,
    wilf_limit: u64,
    fixed_limit: u64,
    format: Format,
) -> Result<String, Failure> {
    if step == 0 {
        return Err(Failure::usage("--step must be positive"));
    }
    let ns: Vec<u64> = match (n_values, n_max) {
        (Some(values), _) => values,
        (None, Some(n_max)) => (1..=n_max).step_by(step as usize).collect(),
        (None, None) => unreachable!("clap enforces one of --n-values/--n-max"),
    };
    let limits = ReportLimits {
        wilf_limit,
        fixed_limit,
    };
    let rows = report_with_limits(&ns, &limits);
    Ok(match format {
        Format::Text | Format::Csv => to_csv(&rows),
        Format::Json => format!("{}\n", to_json(&rows)),
    })
}

fn run_table(n_max: u64, format: Format) -> Result<String, Failure> {
    if n_max == 0 {
        return Err(Failure::usage("--n-max must be positive"));
    }
    let mut rows = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let f = count_wilf_with_limit(n - 1, WILF_COUNT_LIMIT)?;
        let fixed = count_fixed_with_limit(n, FIXED_COUNT_LIMIT)?;
        rows.push((n, f, fixed));
    }
    let header = "n,f,F\n";
    let comment =
        "# The f column is read one weight back: the entry at n counts the Wilf partitions of n-1.\n";
    Ok(match format {
        Format::Text => {
            let mut out = String::from(comment);
            out.push_str(header);
            for (n, f, fixed) in &rows {
                out.push_str(&format!("{n},{f},{fixed}\n"));
            }
            out
        }
        Format::Csv => {
            let mut out = String::from(header);
            for (n, f, fixed) in &rows {
                out.push_str(&format!("{n},{f},{fixed}\n"));
            }
            out
        }
        Format::Json => {
            let items: Vec<_> = rows
                .iter()
                .map(|(n, f, fixed)| json!({ "n": n, "f": f, "F": fixed }))
                .collect();
            format!(
                "{}\n",
                serde_json::to_string_pretty(&items).expect("plain data")
            )
        }
    })
}
