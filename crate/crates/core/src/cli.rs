//! Command-line front end. [`run`] parses arguments and returns the exit
//! code together with the text destined for stdout and stderr, so the whole
//! interface can be exercised without spawning processes.
//!
//! Exit codes: 0 success, 1 a checked property failed, 2 bad input,
//! 3 a size cap was exceeded.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{parse_gamma_semiring, validate_gamma_semiring, GammaSemiring};
use crate::correspondence::{run_suite, SuiteConfig, TransferContext, TransferMap};
use crate::enumeration::{
    enumerate_with_cap, generate_gamma_semirings, random_fuzzy_ideal, random_fuzzy_subset, EnumerationError,
    Family, GeneratorSpec, DEFAULT_ENUMERATION_CAP,
};
use crate::fuzzy::{parse_fuzzy_subset, Carrier, FuzzySubset, IdealChecker, IdealKind};
use crate::operator::{
    build_operator_semiring, find_left_unity, find_right_unity, FiniteSemiring, OperatorError, Side,
    DEFAULT_MAX_ELEMENTS,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY_FAILED: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;
pub const EXIT_CAP_EXCEEDED: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Parser)]
#[command(
    name = "gammasr",
    version,
    about = "Finite Gamma-semirings, operator semirings and fuzzy ideals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SideArg {
    Left,
    Right,
    Both,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OneSide {
    Left,
    Right,
}

impl From<OneSide> for Side {
    fn from(s: OneSide) -> Side {
        match s {
            OneSide::Left => Side::Left,
            OneSide::Right => Side::Right,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the Gamma-semiring axioms on a structure file
    Validate { structure: PathBuf },
    /// Build the left and/or right operator semirings
    BuildOperators {
        structure: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        side: SideArg,
        #[arg(long, default_value_t = DEFAULT_MAX_ELEMENTS)]
        max_elements: usize,
    },
    /// Decide whether a fuzzy subset is an ideal of the given kind
    Check {
        structure: PathBuf,
        fuzzy: PathBuf,
        #[arg(long)]
        kind: IdealKind,
        #[arg(long, default_value = "S")]
        on: Carrier,
        #[arg(long, default_value_t = DEFAULT_MAX_ELEMENTS)]
        max_elements: usize,
    },
    /// Apply one transfer map to a fuzzy subset on its source carrier
    Transfer {
        structure: PathBuf,
        fuzzy: PathBuf,
        #[arg(long)]
        map: TransferMap,
        #[arg(long, default_value_t = DEFAULT_MAX_ELEMENTS)]
        max_elements: usize,
    },
    /// Transfer a fuzzy subset to the other carrier and back
    Roundtrip {
        structure: PathBuf,
        fuzzy: PathBuf,
        #[arg(long, value_enum, default_value = "left")]
        side: OneSide,
        /// Carrier of the input: S, or the operator semiring of --side
        #[arg(long, default_value = "S")]
        on: Carrier,
        #[arg(long, default_value_t = DEFAULT_MAX_ELEMENTS)]
        max_elements: usize,
    },
    /// List every fuzzy ideal of a kind with values in C_k
    Enumerate {
        structure: PathBuf,
        #[arg(long, default_value_t = 2)]
        chain: u64,
        #[arg(long)]
        kind: IdealKind,
        #[arg(long, default_value = "S")]
        on: Carrier,
        #[arg(long)]
        count_only: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_ELEMENTS)]
        max_elements: usize,
    },
    /// Write generated structures and seeded fuzzy subsets to a directory
    Generate {
        #[arg(long, default_value = "from_semiring_subset")]
        family: Family,
        #[arg(long = "s")]
        s_size: usize,
        #[arg(long = "gamma")]
        g_size: usize,
        #[arg(long, default_value_t = 2)]
        chain: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run every preservation, bijection, unity and monotonicity check
    Suite {
        structure: PathBuf,
        #[arg(long, default_value_t = 2)]
        chain: u64,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        force_ungated: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_ELEMENTS)]
        max_elements: usize,
    },
}

#[derive(Debug)]
enum Failure {
    Input(String),
    Cap(String),
}

impl From<EnumerationError> for Failure {
    fn from(e: EnumerationError) -> Self {
        match e {
            EnumerationError::CapExceeded { .. } => Failure::Cap(e.to_string()),
            EnumerationError::InvalidSpec(_) => Failure::Input(e.to_string()),
        }
    }
}

impl From<OperatorError> for Failure {
    fn from(e: OperatorError) -> Self {
        match e {
            OperatorError::TooManyElements { .. } | OperatorError::TooManyFormalSums { .. } => {
                Failure::Cap(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Self { text, code: EXIT_OK }
    }

    fn verdict(text: String, passed: bool) -> Self {
        let code = if passed { EXIT_OK } else { EXIT_PROPERTY_FAILED };
        Self { text, code }
    }
}

pub fn run<I, T>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutcome {
                    exit_code: EXIT_INPUT_ERROR,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CommandOutcome {
                    exit_code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => CommandOutcome {
            exit_code: out.code,
            stdout: out.text,
            stderr: String::new(),
        },
        Err(Failure::Input(msg)) => CommandOutcome {
            exit_code: EXIT_INPUT_ERROR,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        },
        Err(Failure::Cap(msg)) => CommandOutcome {
            exit_code: EXIT_CAP_EXCEEDED,
            stdout: String::new(),
            stderr: format!("error: cap exceeded: {msg}\n"),
        },
    }
}

fn dispatch(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Validate { structure } => validate(&structure),
        Command::BuildOperators {
            structure,
            side,
            max_elements,
        } => build_operators(&structure, side, max_elements),
        Command::Check {
            structure,
            fuzzy,
            kind,
            on,
            max_elements,
        } => check(&structure, &fuzzy, kind, on, max_elements),
        Command::Transfer {
            structure,
            fuzzy,
            map,
            max_elements,
        } => transfer(&structure, &fuzzy, map, max_elements),
        Command::Roundtrip {
            structure,
            fuzzy,
            side,
            on,
            max_elements,
        } => roundtrip(&structure, &fuzzy, side.into(), on, max_elements),
        Command::Enumerate {
            structure,
            chain,
            kind,
            on,
            count_only,
            max_elements,
        } => enumerate(&structure, chain, kind, on, count_only, max_elements),
        Command::Generate {
            family,
            s_size,
            g_size,
            chain,
            seed,
            out,
        } => generate(
            GeneratorSpec {
                s_size,
                g_size,
                chain_k: chain,
                seed,
                family,
            },
            &out,
        ),
        Command::Suite {
            structure,
            chain,
            samples,
            seed,
            report,
            force_ungated,
            max_elements,
        } => suite(
            &structure,
            SuiteConfig {
                chain_k: chain,
                samples,
                seed,
                force_ungated,
                ..SuiteConfig::default()
            },
            report.as_deref(),
            max_elements,
        ),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_structure(path: &Path) -> Result<GammaSemiring, Failure> {
    parse_gamma_semiring(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Loads a structure and rejects it unless every axiom holds.
fn load_valid_structure(path: &Path) -> Result<GammaSemiring, Failure> {
    let g = load_structure(path)?;
    let report = validate_gamma_semiring(&g);
    match report.violations.first() {
        None => Ok(g),
        Some(v) => Err(Failure::Input(format!(
            "{}: not a Gamma-semiring ({v})",
            path.display()
        ))),
    }
}

fn load_fuzzy(path: &Path, carrier: Carrier, expected_len: usize) -> Result<FuzzySubset, Failure> {
    let f = parse_fuzzy_subset(&read(path)?, carrier)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    if f.len() != expected_len {
        return Err(Failure::Input(format!(
            "{}: {} values given but {carrier} has {expected_len} elements",
            path.display(),
            f.len()
        )));
    }
    Ok(f)
}

fn context(path: &Path, max_elements: usize) -> Result<TransferContext, Failure> {
    Ok(TransferContext::with_max_elements(
        load_valid_structure(path)?,
        max_elements,
    )?)
}

fn validate(path: &Path) -> Result<Output, Failure> {
    let g = load_structure(path)?;
    let report = validate_gamma_semiring(&g);
    if report.ok() {
        return Ok(Output::ok("OK: axioms (1)-(4) hold\n".into()));
    }
    let mut text = format!("FAIL: {} axiom(s) violated\n", report.violations.len());
    for v in &report.violations {
        let _ = writeln!(text, "{v}");
    }
    Ok(Output::verdict(text, false))
}

fn build_operators(path: &Path, side: SideArg, max_elements: usize) -> Result<Output, Failure> {
    let g = load_valid_structure(path)?;
    let sides: &[Side] = match side {
        SideArg::Left => &[Side::Left],
        SideArg::Right => &[Side::Right],
        SideArg::Both => &[Side::Left, Side::Right],
    };
    let mut text = String::new();
    for &side in sides {
        let sr = build_operator_semiring(&g, side, max_elements)?;
        let unity = match side {
            Side::Left => find_left_unity(&g, &sr),
            Side::Right => find_right_unity(&g, &sr),
        };
        let _ = writeln!(text, "{side} operator semiring: {} elements", sr.size());
        describe_semiring(&mut text, &sr);
        match unity {
            Some(u) => {
                let _ = writeln!(text, "unity {} = element {}", u.formal_sum, u.element);
            }
            None => text.push_str("no unity\n"),
        }
    }
    Ok(Output::ok(text))
}

fn describe_semiring(text: &mut String, sr: &FiniteSemiring) {
    text.push_str("elements\n");
    for i in 0..sr.size() {
        let _ = writeln!(text, "{i} {} {}", sr.element(i), sr.witness(i));
    }
    for (label, op) in [
        (
            "add",
            FiniteSemiring::add as fn(&FiniteSemiring, usize, usize) -> usize,
        ),
        ("mul", FiniteSemiring::mul),
    ] {
        let _ = writeln!(text, "{label}");
        for i in 0..sr.size() {
            let row: Vec<String> = (0..sr.size()).map(|j| op(sr, i, j).to_string()).collect();
            let _ = writeln!(text, "{}", row.join(" "));
        }
    }
}

fn check(
    path: &Path,
    fuzzy: &Path,
    kind: IdealKind,
    on: Carrier,
    max_elements: usize,
) -> Result<Output, Failure> {
    let g = load_valid_structure(path)?;
    let checker = match on {
        Carrier::S => IdealChecker::for_gamma(&g),
        Carrier::L => IdealChecker::for_semiring(&build_operator_semiring(&g, Side::Left, max_elements)?),
        Carrier::R => IdealChecker::for_semiring(&build_operator_semiring(&g, Side::Right, max_elements)?),
    };
    let f = load_fuzzy(fuzzy, on, checker.size())?;
    Ok(match checker.check(f.values(), kind) {
        None => Output::ok(format!("OK: fuzzy {kind} ideal of {on}\n")),
        Some(v) => Output::verdict(
            format!("FAIL: not a fuzzy {kind} ideal of {on}\n{} {v}\n", v.condition()),
            false,
        ),
    })
}

fn transfer(path: &Path, fuzzy: &Path, map: TransferMap, max_elements: usize) -> Result<Output, Failure> {
    let ctx = context(path, max_elements)?;
    let input = load_fuzzy(fuzzy, map.source(), ctx.carrier_size(map.source()))?;
    let image = map
        .apply(&ctx, &input)
        .map_err(|e| Failure::Input(e.to_string()))?;
    Ok(Output::ok(format!(
        "# {} on {}\n{image}",
        map.as_str(),
        map.target()
    )))
}

fn roundtrip(
    path: &Path,
    fuzzy: &Path,
    side: Side,
    on: Carrier,
    max_elements: usize,
) -> Result<Output, Failure> {
    let ctx = context(path, max_elements)?;
    let op = Carrier::of_side(side);
    if on != Carrier::S && on != op {
        return Err(Failure::Input(format!("--on {on} does not match --side {side}")));
    }
    let (forward, back) = match side {
        Side::Left => (TransferMap::PlusPrime, TransferMap::Plus),
        Side::Right => (TransferMap::StarPrime, TransferMap::Star),
    };
    let (first, second) = if on == Carrier::S {
        (forward, back)
    } else {
        (back, forward)
    };
    let input = load_fuzzy(fuzzy, on, ctx.carrier_size(on))?;
    let mid = first
        .apply(&ctx, &input)
        .map_err(|e| Failure::Input(e.to_string()))?;
    let end = second
        .apply(&ctx, &mid)
        .map_err(|e| Failure::Input(e.to_string()))?;
    let same = end == input;
    let text = format!(
        "# {} on {}\n{mid}# {} on {}\n{end}{}\n",
        first.as_str(),
        first.target(),
        second.as_str(),
        second.target(),
        if same { "roundtrip OK" } else { "roundtrip FAIL" }
    );
    Ok(Output::verdict(text, same))
}

fn enumerate(
    path: &Path,
    chain: u64,
    kind: IdealKind,
    on: Carrier,
    count_only: bool,
    max_elements: usize,
) -> Result<Output, Failure> {
    let ctx = context(path, max_elements)?;
    let ideals = enumerate_with_cap(ctx.checker(on), chain, kind, DEFAULT_ENUMERATION_CAP)?;
    let mut text = String::new();
    if !count_only {
        for f in &ideals {
            let values: Vec<String> = f.values().iter().map(ToString::to_string).collect();
            let _ = writeln!(text, "{}", values.join(" "));
        }
    }
    let _ = writeln!(text, "count {}", ideals.len());
    Ok(Output::ok(text))
}

fn generate(spec: GeneratorSpec, out: &Path) -> Result<Output, Failure> {
    let structures: Vec<GammaSemiring> = generate_gamma_semirings(&spec)?.collect();
    fs::create_dir_all(out).map_err(|e| Failure::Input(format!("{}: {e}", out.display())))?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut text = String::new();
    for (i, g) in structures.iter().enumerate() {
        let stem = g.name().map_or_else(|| format!("structure-{i}"), str::to_string);
        let checker = IdealChecker::for_gamma(g);
        let sigma = random_fuzzy_ideal(&checker, spec.chain_k, IdealKind::TwoSided, &mut rng)
            .unwrap_or_else(|| random_fuzzy_subset(Carrier::S, g.s_size(), spec.chain_k, &mut rng));
        for (ext, body) in [("gsr", g.to_string()), ("fz", sigma.to_string())] {
            let file = out.join(format!("{stem}.{ext}"));
            fs::write(&file, body).map_err(|e| Failure::Input(format!("{}: {e}", file.display())))?;
        }
        let _ = writeln!(text, "{stem}");
    }
    let _ = writeln!(text, "wrote {} structures to {}", structures.len(), out.display());
    Ok(Output::ok(text))
}

fn suite(
    path: &Path,
    config: SuiteConfig,
    report_path: Option<&Path>,
    max_elements: usize,
) -> Result<Output, Failure> {
    let ctx = context(path, max_elements)?;
    let report = run_suite(&ctx, &config)?;
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    let body = format!(
        "REPORT structure={} chain={} samples={} seed={}\nGATE left-unity={} right-unity={}\n{report}",
        ctx.name(),
        config.chain_k,
        config.samples,
        config.seed,
        yes_no(ctx.left_unity.is_some()),
        yes_no(ctx.right_unity.is_some()),
    );
    let text = match report_path {
        Some(p) => {
            fs::write(p, &body).map_err(|e| Failure::Input(format!("{}: {e}", p.display())))?;
            body.lines().last().map(|l| format!("{l}\n")).unwrap_or_default()
        }
        None => body,
    };
    Ok(Output::verdict(text, report.all_passed()))
}
