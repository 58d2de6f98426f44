//! Command implementations behind the `commlat` binary.
//!
//! Every command reads its inputs, returns the complete stdout text, and
//! leaves printing to the caller, so output can be compared byte for byte.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use commlat::classify::analyze;
use commlat::commutator::{
    construct_pullback, construct_splitting, construct_sublattice, enumerate_commutators,
    largest_commutator, CommutatorTable, Validation,
};
use commlat::corpus::CorpusSpec;
use commlat::error::LatticeError;
use commlat::io::{self, FormatError};
use commlat::lattice::{FiniteLattice, LatticeMap, LatticePartition, SublatticeEmbedding};
use commlat::projectivity::SplittingPair;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_BUG: i32 = 3;

#[derive(Debug)]
pub enum CliError {
    /// Unreadable, malformed, or inadmissible input.
    Invalid(String),
    /// A cross-check between independent computations failed.
    Bug(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::Bug(_) => EXIT_BUG,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Invalid(m) | CliError::Bug(m) => m,
        }
    }
}

impl From<LatticeError> for CliError {
    fn from(e: LatticeError) -> Self {
        if e.is_bug() {
            CliError::Bug(e.to_string())
        } else {
            CliError::Invalid(e.to_string())
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Lattice(e) => e.into(),
            e => CliError::Invalid(e.to_string()),
        }
    }
}

/// Result of a command: stdout text and exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            stdout,
            code: EXIT_OK,
        }
    }
}

pub type CmdResult = Result<Output, CliError>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    Sublattice,
    Pullback,
    Splitting,
}

#[derive(Debug, Parser)]
#[command(
    name = "commlat",
    version,
    about = "Commutator lattices and forcing on finite modular lattices"
)]
pub struct Cli {
    /// Output style for reports (analyze, check-table, enumerate).
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide which commutator types the lattice forces.
    Analyze { path: PathBuf },
    /// Emit the largest commutator multiplication as a table file.
    Largest { path: PathBuf },
    /// Check a table file against the commutator axioms.
    CheckTable { path: PathBuf },
    /// List every commutator multiplication (at most 5 elements).
    Enumerate {
        path: PathBuf,
        #[arg(long, default_value_t = usize::MAX)]
        cap: usize,
    },
    /// Build a commutator multiplication from a known one or a splitting pair.
    ///
    /// sublattice: PATH is a table file, `--members` lists the sublattice.
    /// pullback: PATH is the source lattice, `--target` a table file on the
    /// target, `--map` the image of each source element.
    /// splitting: PATH is a lattice file, `--splitting delta,epsilon`, and
    /// optionally `--congruence`; by default the congruence generated by
    /// (epsilon, 1) is used.
    Construct {
        #[arg(value_enum)]
        kind: ConstructKind,
        path: PathBuf,
        #[arg(long)]
        members: Option<String>,
        #[arg(long)]
        target: Option<PathBuf>,
        #[arg(long)]
        map: Option<String>,
        #[arg(long)]
        splitting: Option<String>,
        #[arg(long)]
        congruence: Option<PathBuf>,
    },
    /// Generate all lattices up to a size, one lattice file per line.
    Corpus {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long)]
        modular_only: bool,
        /// Keep every natural labeling instead of one per isomorphism class.
        #[arg(long)]
        all_labelings: bool,
        /// Write one file per lattice into this directory instead of stdout.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Quotient by the congruence generated by the seed pairs.
    Quotient {
        path: PathBuf,
        #[arg(long)]
        seed_pairs: String,
    },
    /// Emit the order dual.
    Dual { path: PathBuf },
}

pub fn run(cli: &Cli) -> CmdResult {
    let format = cli.format;
    match &cli.command {
        Command::Analyze { path } => cmd_analyze(path, format),
        Command::Largest { path } => cmd_largest(path),
        Command::CheckTable { path } => cmd_check_table(path, format),
        Command::Enumerate { path, cap } => cmd_enumerate(path, *cap, format),
        Command::Construct {
            kind,
            path,
            members,
            target,
            map,
            splitting,
            congruence,
        } => {
            let args = ConstructArgs {
                members: members.as_deref(),
                target: target.as_deref(),
                map: map.as_deref(),
                splitting: splitting.as_deref(),
                congruence: congruence.as_deref(),
            };
            cmd_construct(path, *kind, &args)
        }
        Command::Corpus {
            max_n,
            modular_only,
            all_labelings,
            out_dir,
        } => {
            let spec = CorpusSpec::new(*max_n, *modular_only, !*all_labelings)?;
            cmd_corpus(&spec, out_dir.as_deref())
        }
        Command::Quotient { path, seed_pairs } => cmd_quotient(path, seed_pairs),
        Command::Dual { path } => cmd_dual(path),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Invalid(format!("{}: {e}", path.display())))
}

fn read_lattice(path: &Path) -> Result<FiniteLattice, CliError> {
    io::parse_lattice(&read(path)?).map_err(|e| with_path(path, e))
}

fn read_table(path: &Path) -> Result<CommutatorTable, CliError> {
    io::parse_table(&read(path)?).map_err(|e| with_path(path, e))
}

fn with_path(path: &Path, e: FormatError) -> CliError {
    match CliError::from(e) {
        CliError::Invalid(m) => CliError::Invalid(format!("{}: {m}", path.display())),
        bug => bug,
    }
}

fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("plain data serializes");
    s.push('\n');
    s
}

fn parse_list(text: &str, what: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Invalid(format!("cannot parse {what} {text:?}")))
}

/// Parses `a,b;c,d`.
pub fn parse_pairs(text: &str) -> Result<Vec<(usize, usize)>, CliError> {
    text.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| match parse_list(p, "seed pair")?[..] {
            [a, b] => Ok((a, b)),
            _ => Err(CliError::Invalid(format!(
                "seed pair {p:?} needs two elements"
            ))),
        })
        .collect()
}

fn table_text(t: &CommutatorTable) -> String {
    let mut s = String::new();
    for row in t.rows() {
        let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        s += &cells.join(" ");
        s.push('\n');
    }
    s
}

pub fn cmd_analyze(path: &Path, format: Format) -> CmdResult {
    let l = read_lattice(path)?;
    let report = analyze(&l)?;
    Ok(Output::ok(match format {
        Format::Json => json_line(&report),
        Format::Text => report.summary(),
    }))
}

pub fn cmd_largest(path: &Path) -> CmdResult {
    let l = read_lattice(path)?;
    Ok(Output::ok(io::table_to_json(&largest_commutator(&l))))
}

#[derive(Serialize)]
struct CheckDocument<'a> {
    valid: bool,
    #[serde(flatten)]
    validation: &'a Validation,
}

/// Exit status is [`EXIT_INVALID`] when the table breaks an axiom.
pub fn cmd_check_table(path: &Path, format: Format) -> CmdResult {
    let t = read_table(path)?;
    let v = t.validate();
    let stdout = match format {
        Format::Json => json_line(&CheckDocument {
            valid: v.is_valid(),
            validation: &v,
        }),
        Format::Text if v.is_valid() => "valid commutator multiplication\n".to_string(),
        Format::Text => {
            let mut s = format!("invalid: {} violation(s)\n", v.violations.len());
            for x in &v.violations {
                let _ = writeln!(s, "  {x}");
            }
            s
        }
    };
    let code = if v.is_valid() { EXIT_OK } else { EXIT_INVALID };
    Ok(Output { stdout, code })
}

/// JSON: one table file per line. Text: a count followed by each table.
pub fn cmd_enumerate(path: &Path, cap: usize, format: Format) -> CmdResult {
    let l = read_lattice(path)?;
    let all = enumerate_commutators(&l, cap)?;
    let mut s = String::new();
    match format {
        Format::Json => {
            for c in &all {
                s += &io::table_to_json(c);
            }
        }
        Format::Text => {
            let _ = writeln!(s, "{} commutator multiplication(s)", all.len());
            for (i, c) in all.iter().enumerate() {
                let _ = writeln!(s, "\n#{}", i + 1);
                s += &table_text(c);
            }
        }
    }
    Ok(Output::ok(s))
}

#[derive(Debug, Default, Clone, Copy)]
pub struct ConstructArgs<'a> {
    pub members: Option<&'a str>,
    pub target: Option<&'a Path>,
    pub map: Option<&'a str>,
    pub splitting: Option<&'a str>,
    pub congruence: Option<&'a Path>,
}

fn required<'a, T: ?Sized>(v: Option<&'a T>, flag: &str, kind: &str) -> Result<&'a T, CliError> {
    v.ok_or_else(|| CliError::Invalid(format!("{kind} construction needs --{flag}")))
}

fn valid_input(t: CommutatorTable) -> Result<commlat::commutator::Commutator, CliError> {
    t.into_commutator()
        .map_err(|e| CliError::Invalid(e.to_string()))
}

pub fn cmd_construct(path: &Path, kind: ConstructKind, args: &ConstructArgs<'_>) -> CmdResult {
    let result = match kind {
        ConstructKind::Sublattice => {
            let k = valid_input(read_table(path)?)?;
            let members = parse_list(required(args.members, "members", "sublattice")?, "members")?;
            let s = SublatticeEmbedding::new(k.lattice().clone(), members)?;
            construct_sublattice(&k, &s)?
        }
        ConstructKind::Pullback => {
            let source = read_lattice(path)?;
            let target = required(args.target, "target", "pullback")?;
            let k = valid_input(read_table(target)?)?;
            let image = parse_list(required(args.map, "map", "pullback")?, "map")?;
            let h = LatticeMap::new(source, k.lattice().clone(), image)?;
            construct_pullback(&h, &k)?
        }
        ConstructKind::Splitting => {
            let l = read_lattice(path)?;
            let pair = match parse_list(
                required(args.splitting, "splitting", "splitting")?,
                "splitting pair",
            )?[..]
            {
                [d, e] => SplittingPair::new(&l, d, e)?,
                _ => return Err(CliError::Invalid("--splitting needs delta,epsilon".into())),
            };
            let theta: LatticePartition = match args.congruence {
                Some(p) => io::parse_congruence(&read(p)?, l.n()).map_err(|e| with_path(p, e))?,
                None => l.congruence_generated([(pair.epsilon, l.top())]),
            };
            construct_splitting(&l, pair, &theta)?
        }
    };
    Ok(Output::ok(io::table_to_json(&result)))
}

/// Without a directory, lattice files go to stdout one per line; with one,
/// each lattice is written to `n<size>_<index>.json` and the paths are listed.
pub fn cmd_corpus(spec: &CorpusSpec, out_dir: Option<&Path>) -> CmdResult {
    let corpus = spec.generate();
    let mut s = String::new();
    match out_dir {
        None => {
            for l in &corpus {
                s += &io::lattice_to_json(l);
            }
        }
        Some(dir) => {
            let fail = |e: std::io::Error| CliError::Invalid(format!("{}: {e}", dir.display()));
            fs::create_dir_all(dir).map_err(fail)?;
            let mut index = 0;
            let mut last_n = 0;
            for l in &corpus {
                if l.n() != last_n {
                    last_n = l.n();
                    index = 0;
                }
                let file = dir.join(format!("n{}_{:04}.json", l.n(), index));
                fs::write(&file, io::lattice_to_json(l)).map_err(fail)?;
                let _ = writeln!(s, "{}", file.display());
                index += 1;
            }
        }
    }
    Ok(Output::ok(s))
}

pub fn cmd_quotient(path: &Path, seed_pairs: &str) -> CmdResult {
    let l = read_lattice(path)?;
    let pairs = parse_pairs(seed_pairs)?;
    for &(a, b) in &pairs {
        for x in [a, b] {
            if x >= l.n() {
                return Err(LatticeError::ElementOutOfRange { elem: x, n: l.n() }.into());
            }
        }
    }
    let theta = l.congruence_generated(pairs);
    let (q, _) = l.quotient(&theta)?;
    Ok(Output::ok(io::lattice_to_json(&q)))
}

pub fn cmd_dual(path: &Path) -> CmdResult {
    let l = read_lattice(path)?;
    Ok(Output::ok(io::lattice_to_json(&l.dual())))
}
