//! Command-line front end: deterministic emitters over the core library.
//!
//! Exit codes: 0 success, 2 invalid configuration or malformed input,
//! 3 integer overflow, 4 a mathematical verification failed.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use unitri_core::actions::{check_action_laws, ActionLawReport};
use unitri_core::basicset::standard_basic_set as standard_labels;
use unitri_core::basicset::{stable_basic_set, BasicSetReport, CountingIdentity};
use unitri_core::clifford::{build_theta_g, check_equivariance, TransferInput};
use unitri_core::labels::{enumerate_class_labels, enumerate_irr_labels};
use unitri_core::{Error, GroupSpec};

const EXIT_CONFIG: i32 = 2;
const EXIT_OVERFLOW: i32 = 3;
const EXIT_VERIFY: i32 = 4;

#[derive(Parser)]
#[command(
    name = "unitri",
    version,
    about = "Stable unitriangular basic sets for SL_n(q) and SU_n(q), computed on character labels"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate character or conjugacy-class labels
    Enumerate(EnumerateArgs),
    /// Run the replacement pipeline and emit the verified report
    StableBasicSet(StableArgs),
    /// Run the invariant suite over a parameter grid
    Verify(VerifyArgs),
    /// Run the descent engine on a JSON decomposition-data file
    Transfer(TransferArgs),
}

#[derive(Args)]
struct GroupArgs {
    /// Matrix size n ≥ 2
    #[arg(long)]
    n: u32,
    /// Field size, a prime power
    #[arg(long)]
    q: u64,
    /// Unitary twist: GU/SU instead of GL/SL
    #[arg(long)]
    twisted: bool,
    /// The non-defining prime
    #[arg(long)]
    ell: Option<u64>,
    /// Largest admissible bit width of q^n (the enumeration moduli)
    #[arg(long, default_value_t = 127)]
    max_bits: u32,
}

impl GroupArgs {
    fn spec(&self, ell_required: bool) -> Result<GroupSpec, CliError> {
        let ell = match self.ell {
            Some(ell) => ell,
            None if ell_required => {
                return Err(CliError::Config("this command requires --ell".into()))
            }
            // irrelevant to unfiltered enumeration; pick a valid default
            None => {
                if self.q.is_multiple_of(2) {
                    3
                } else {
                    2
                }
            }
        };
        let spec = GroupSpec::new(self.n, self.q, self.twisted, ell)
            .map_err(|e| CliError::Config(e.to_string()))?;
        guard_width(&spec, self.max_bits)?;
        Ok(spec)
    }
}

fn guard_width(spec: &GroupSpec, max_bits: u32) -> Result<(), CliError> {
    if max_bits > 127 {
        return Err(CliError::Config("--max-bits cannot exceed 127".into()));
    }
    let bits = spec.n * (64 - (spec.q - 1).leading_zeros());
    if bits > max_bits {
        return Err(CliError::Core(Error::Overflow(format!(
            "q^n needs about {bits} bits, over the --max-bits limit of {max_bits}"
        ))));
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Pretty,
    Json,
    Tsv,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "pretty")]
    format: Format,
    /// Output file; defaults to `$UNITRI_OUT_DIR/<command>.<ext>` when
    /// that variable is set, stdout otherwise
    #[arg(long)]
    out: Option<PathBuf>,
}

impl OutputArgs {
    fn emit(&self, command: &str, content: &str) -> Result<(), CliError> {
        let path = self.out.clone().or_else(|| {
            std::env::var_os("UNITRI_OUT_DIR").map(|dir| {
                let ext = match self.format {
                    Format::Json => "json",
                    Format::Tsv => "tsv",
                    Format::Pretty => "txt",
                };
                PathBuf::from(dir).join(format!("{command}.{ext}"))
            })
        });
        match path {
            Some(path) => std::fs::write(&path, content)
                .map_err(|e| CliError::Config(format!("cannot write {}: {e}", path.display()))),
            None => {
                let mut stdout = std::io::stdout().lock();
                stdout
                    .write_all(content.as_bytes())
                    .map_err(|e| CliError::Config(format!("cannot write stdout: {e}")))
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum LabelKind {
    Irr,
    Classes,
}

#[derive(Args)]
struct EnumerateArgs {
    #[command(flatten)]
    group: GroupArgs,
    /// Which labels to list
    #[arg(long, value_enum)]
    kind: LabelKind,
    /// Restrict to ell'-labels (requires --ell)
    #[arg(long)]
    ell_prime_only: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct StableArgs {
    #[command(flatten)]
    group: GroupArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated list of matrix sizes
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<u32>,
    /// Comma-separated list of field sizes
    #[arg(long, value_delimiter = ',', required = true)]
    q: Vec<u64>,
    /// Comma-separated list of primes; pairs with ell = p are skipped
    #[arg(long, value_delimiter = ',', required = true)]
    ell: Vec<u64>,
    /// Which twists to cover
    #[arg(long, value_enum, default_value = "both")]
    twisted: TwistSelection,
    /// Worker threads for the grid (0 = library default)
    #[arg(long, default_value_t = 0)]
    threads: usize,
    #[arg(long, default_value_t = 127)]
    max_bits: u32,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TwistSelection {
    Linear,
    Unitary,
    Both,
}

#[derive(Args)]
struct TransferArgs {
    /// JSON file with the decomposition data and Clifford context
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    output: OutputArgs,
}

enum CliError {
    Config(String),
    Core(Error),
    /// A mathematical check failed; the report was already emitted.
    VerificationFailed(String),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Core(Error::Overflow(_)) => EXIT_OVERFLOW,
            CliError::Core(Error::HypothesisViolation { .. }) => EXIT_VERIFY,
            CliError::Core(Error::InconsistentData(_)) => EXIT_VERIFY,
            CliError::Core(_) => EXIT_CONFIG,
            CliError::VerificationFailed(_) => EXIT_VERIFY,
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Config(msg) => format!("configuration error: {msg}"),
            CliError::Core(err) => err.to_string(),
            CliError::VerificationFailed(msg) => format!("verification failed: {msg}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        CliError::Core(err)
    }
}

fn main() {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Enumerate(args) => cmd_enumerate(args),
        Command::StableBasicSet(args) => cmd_stable_basic_set(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Transfer(args) => cmd_transfer(args),
    };
    if let Err(err) = result {
        eprintln!("unitri: {}", err.message());
        std::process::exit(err.exit_code());
    }
}

fn cmd_enumerate(args: EnumerateArgs) -> Result<(), CliError> {
    if args.ell_prime_only && args.group.ell.is_none() {
        return Err(CliError::Config("--ell-prime-only requires --ell".into()));
    }
    let spec = args.group.spec(false)?;
    let content = match args.kind {
        LabelKind::Irr => {
            let labels = if args.ell_prime_only {
                standard_labels(&spec)?
            } else {
                enumerate_irr_labels(&spec)?
            };
            match args.output.format {
                Format::Json => to_json(&labels)?,
                Format::Tsv => {
                    let mut s = String::from("index\tss\tmp\n");
                    for (i, l) in labels.iter().enumerate() {
                        s.push_str(&format!("{i}\t{}\t{}\n", l.ss, l.mp));
                    }
                    s
                }
                Format::Pretty => {
                    let mut s = format!(
                        "{} irreducible-character labels of {}\n",
                        labels.len(),
                        group_name(&spec)
                    );
                    for (i, l) in labels.iter().enumerate() {
                        s.push_str(&format!("{i:>5}  {l}\n"));
                    }
                    s
                }
            }
        }
        LabelKind::Classes => {
            let pairs = enumerate_class_labels(&spec, args.ell_prime_only)?;
            match args.output.format {
                Format::Json => {
                    #[derive(Serialize)]
                    struct Row<'a> {
                        ss: &'a unitri_core::SemisimpleClassLabel,
                        unipotent: &'a unitri_core::MultiPartitionLabel,
                    }
                    let rows: Vec<Row> = pairs
                        .iter()
                        .map(|(ss, mu)| Row { ss, unipotent: mu })
                        .collect();
                    to_json(&rows)?
                }
                Format::Tsv => {
                    let mut s = String::from("index\tss\tunipotent\n");
                    for (i, (ss, mu)) in pairs.iter().enumerate() {
                        s.push_str(&format!("{i}\t{ss}\t{mu}\n"));
                    }
                    s
                }
                Format::Pretty => {
                    let mut s = format!(
                        "{} conjugacy-class labels of {}\n",
                        pairs.len(),
                        group_name(&spec)
                    );
                    for (i, (ss, mu)) in pairs.iter().enumerate() {
                        s.push_str(&format!("{i:>5}  ss {ss}  unipotent {mu}\n"));
                    }
                    s
                }
            }
        }
    };
    args.output.emit("enumerate", &content)
}

fn cmd_stable_basic_set(args: StableArgs) -> Result<(), CliError> {
    let spec = args.group.spec(true)?;
    let report = stable_basic_set(&spec)?;
    let content = match args.output.format {
        Format::Json => to_json(&report)?,
        Format::Tsv => {
            let mut s =
                String::from("index\toriginal\tell_a\treplacement\tkappa_original\tkappa_brauer\tkappa_replacement\tpass\n");
            for (i, rec) in report.replacements.iter().enumerate() {
                s.push_str(&format!(
                    "{i}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                    rec.original,
                    rec.ell_a,
                    rec.replacement,
                    rec.checks.kappa_original,
                    rec.checks.kappa_brauer_original,
                    rec.checks.kappa_replacement,
                    rec.checks.pass()
                ));
            }
            s
        }
        Format::Pretty => pretty_report(&report),
    };
    args.output.emit("stable-basic-set", &content)?;
    if report.pass() {
        Ok(())
    } else {
        Err(CliError::VerificationFailed(format!(
            "stable basic set for {} failed verification",
            group_name(&spec)
        )))
    }
}

fn pretty_report(report: &BasicSetReport) -> String {
    let mut s = format!(
        "{}, ell = {}: {} basic-set labels, {} replaced\n",
        group_name(&report.spec),
        report.spec.ell,
        report.summary.total_labels,
        report.summary.replacements_performed
    );
    for rec in report.replacements.iter().filter(|r| !r.is_identity()) {
        s.push_str(&format!(
            "  replace  {}\n  by       {}\n  ell^a = {}, kappa: original {}, brauer {}, replacement {}\n",
            rec.original,
            rec.replacement,
            rec.ell_a,
            rec.checks.kappa_original,
            rec.checks.kappa_brauer_original,
            rec.checks.kappa_replacement
        ));
    }
    s.push_str(&format!(
        "  kappa table: {}\n",
        report
            .summary
            .kappa_table
            .iter()
            .map(|(k, c)| format!("{k}×{c}"))
            .collect::<Vec<_>>()
            .join(", ")
    ));
    s.push_str(&format!(
        "  counting identity: {} = {} ({})\n  stability: {}\n  records: {}\n",
        report.counting_identity.lhs,
        report.counting_identity.rhs,
        pass_str(report.counting_identity.pass),
        pass_str(report.stability.pass),
        pass_str(report.replacements.iter().all(|r| r.checks.pass()))
    ));
    s
}

#[derive(Serialize)]
struct VerifyPoint {
    spec: GroupSpec,
    irr_labels: usize,
    class_labels: usize,
    label_count_pass: bool,
    counting: CountingIdentity,
    replacements: usize,
    records_pass: bool,
    stability_pass: bool,
    action_laws: ActionLawReport,
    pass: bool,
}

fn verify_point(spec: &GroupSpec) -> Result<VerifyPoint, Error> {
    let irr = enumerate_irr_labels(spec)?.len();
    let classes = enumerate_class_labels(spec, false)?.len();
    let report = stable_basic_set(spec)?;
    let action_laws = check_action_laws(spec)?;
    let records_pass = report.replacements.iter().all(|r| r.checks.pass());
    let pass = irr == classes
        && report.counting_identity.pass
        && records_pass
        && report.stability.pass
        && action_laws.pass();
    Ok(VerifyPoint {
        spec: *spec,
        irr_labels: irr,
        class_labels: classes,
        label_count_pass: irr == classes,
        counting: report.counting_identity,
        replacements: report.summary.replacements_performed,
        records_pass,
        stability_pass: report.stability.pass,
        action_laws,
        pass,
    })
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    let twists: &[bool] = match args.twisted {
        TwistSelection::Linear => &[false],
        TwistSelection::Unitary => &[true],
        TwistSelection::Both => &[false, true],
    };
    let mut grid = Vec::new();
    for &n in &args.n {
        for &q in &args.q {
            for &twisted in twists {
                for &ell in &args.ell {
                    if let Ok(spec) = GroupSpec::new(n, q, twisted, ell) {
                        guard_width(&spec, args.max_bits)?;
                        grid.push(spec);
                    }
                }
            }
        }
    }
    if grid.is_empty() {
        return Err(CliError::Config("the requested grid is empty".into()));
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.threads)
        .build()
        .map_err(|e| CliError::Config(e.to_string()))?;
    let mut points: Vec<(usize, Result<VerifyPoint, Error>)> = pool.install(|| {
        grid.par_iter()
            .enumerate()
            .map(|(i, spec)| (i, verify_point(spec)))
            .collect()
    });
    points.sort_by_key(|(i, _)| *i);
    let points: Vec<VerifyPoint> = points
        .into_iter()
        .map(|(_, r)| r)
        .collect::<Result<_, _>>()?;

    let all_pass = points.iter().all(|p| p.pass);
    let content = match args.output.format {
        Format::Json => to_json(&points)?,
        Format::Tsv => {
            let mut s = String::from(
                "n\tq\ttwisted\tell\tirr\tclasses\treplacements\tcounting_lhs\tcounting_rhs\tstability\tactions\tpass\n",
            );
            for p in &points {
                s.push_str(&format!(
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
                    p.spec.n,
                    p.spec.q,
                    p.spec.twisted,
                    p.spec.ell,
                    p.irr_labels,
                    p.class_labels,
                    p.replacements,
                    p.counting.lhs,
                    p.counting.rhs,
                    p.stability_pass,
                    p.action_laws.pass(),
                    p.pass
                ));
            }
            s
        }
        Format::Pretty => {
            let mut s = String::new();
            for p in &points {
                s.push_str(&format!(
                    "{} ell={}: labels {} = classes {}, {} replaced, counting {} = {}, stability {}, actions {} — {}\n",
                    group_name(&p.spec),
                    p.spec.ell,
                    p.irr_labels,
                    p.class_labels,
                    p.replacements,
                    p.counting.lhs,
                    p.counting.rhs,
                    pass_str(p.stability_pass),
                    pass_str(p.action_laws.pass()),
                    if p.pass { "PASS" } else { "FAIL" }
                ));
            }
            s.push_str(&format!(
                "{} grid points: {}\n",
                points.len(),
                if all_pass {
                    "all PASS"
                } else {
                    "FAILURES PRESENT"
                }
            ));
            s
        }
    };
    args.output.emit("verify", &content)?;
    if all_pass {
        Ok(())
    } else {
        Err(CliError::VerificationFailed(
            "some grid points failed".into(),
        ))
    }
}

fn cmd_transfer(args: TransferArgs) -> Result<(), CliError> {
    let text = std::fs::read_to_string(&args.input)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", args.input.display())))?;
    let input: TransferInput = serde_json::from_str(&text)
        .map_err(|e| CliError::Config(format!("malformed input: {e}")))?;
    let (data, ctx, extra) = input.into_parts()?;
    let outcome = build_theta_g(&data, &ctx)?;
    let equivariance = extra
        .as_ref()
        .map(|action| check_equivariance(&ctx, &outcome.theta_g, action))
        .transpose()?;

    #[derive(Serialize)]
    struct ThetaRow<'a> {
        brauer: &'a str,
        ordinary: &'a str,
    }
    #[derive(Serialize)]
    struct TransferReport<'a> {
        reps: Vec<&'a str>,
        theta: Vec<ThetaRow<'a>>,
        unitriangular: &'a unitri_core::clifford::CheckReport,
        conjugation_equivariant: &'a unitri_core::clifford::CheckReport,
        #[serde(skip_serializing_if = "Option::is_none")]
        extra_action: Option<&'a unitri_core::clifford::CheckReport>,
    }
    let theta: Vec<ThetaRow> = ctx
        .g_ibr
        .iter()
        .enumerate()
        .map(|(y, name)| ThetaRow {
            brauer: name,
            ordinary: &ctx.g_irr[outcome.theta_g[y]],
        })
        .collect();
    let report = TransferReport {
        reps: outcome.reps.iter().map(|&c| data.ibr[c].as_str()).collect(),
        theta,
        unitriangular: &outcome.unitriangular,
        conjugation_equivariant: &outcome.gtilde_equivariant,
        extra_action: equivariance.as_ref(),
    };

    let content = match args.output.format {
        Format::Json => to_json(&report)?,
        Format::Tsv => {
            let mut s = String::from("brauer\tordinary\n");
            for row in &report.theta {
                s.push_str(&format!("{}\t{}\n", row.brauer, row.ordinary));
            }
            s
        }
        Format::Pretty => {
            let mut s = format!("representatives: {}\n", report.reps.join(", "));
            for row in &report.theta {
                s.push_str(&format!("  {} -> {}\n", row.brauer, row.ordinary));
            }
            s.push_str(&format!(
                "unitriangular: {}\nconjugation-equivariant: {}\n",
                pass_str(report.unitriangular.pass),
                pass_str(report.conjugation_equivariant.pass)
            ));
            if let Some(eq) = &equivariance {
                s.push_str(&format!(
                    "extra action equivariant: {}\n",
                    pass_str(eq.pass)
                ));
            }
            s
        }
    };
    args.output.emit("transfer", &content)?;

    let ok = outcome.unitriangular.pass
        && outcome.gtilde_equivariant.pass
        && equivariance.as_ref().is_none_or(|e| e.pass);
    if ok {
        Ok(())
    } else {
        Err(CliError::VerificationFailed(
            "transfer checks failed".into(),
        ))
    }
}

fn group_name(spec: &GroupSpec) -> String {
    format!(
        "{}{}({})",
        if spec.twisted { "GU" } else { "GL" },
        spec.n,
        spec.q
    )
}

fn pass_str(pass: bool) -> &'static str {
    if pass {
        "ok"
    } else {
        "FAIL"
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::Config(e.to_string()))
}
