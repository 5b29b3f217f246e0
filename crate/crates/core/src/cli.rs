//! Command-line front end.
//!
//! Every option can come from a flat `key = value` file (`--config`) or from
//! a flag of the same name; flags win. All output starts with the resolved
//! configuration as `#` comment lines.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::contextuality::{
    build_dual_frame, classify, gram_rank, random_projective_povms, verify_ontological_model,
    RankReport, Verdict, RANK_TOL,
};
use crate::discrimination::{
    helstrom, min_error_sdp, sweep_rapidity, DiscriminationProblem, SweepRow, SDP_TOL,
};
use crate::error::Error;
use crate::kinematics::Rapidity;
use crate::linalg::Mat2;
use crate::quadrature::{
    QuadratureGrid, DEFAULT_CUTOFF_WIDTHS, DEFAULT_PHI_NODES, DEFAULT_P_NODES, DEFAULT_THETA_NODES,
};
use crate::reduced_states::{
    assemble_from_integrals, ensemble_mix, BasisState, FamilyParams, SpinDensity, StateFamily,
};
use crate::wavefunctions::DeformationAngle;

pub const CSV_HEADER: &str = "zeta,p_success_four,p_helstrom_two,min_singular_value,status";

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_IO: i32 = 3;

/// Fully resolved run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mass: f64,
    pub epsilon: f64,
    /// Up, down, plus, minus.
    pub sigmas: [f64; 4],
    pub zeta: f64,
    pub zeta_min: f64,
    pub zeta_max: f64,
    pub zeta_steps: usize,
    pub p_nodes: usize,
    pub theta_nodes: usize,
    pub phi_nodes: usize,
    /// `None` means `mass + 8 · max σ`.
    pub p_max: Option<f64>,
    pub priors: [f64; 4],
    pub tol: f64,
    pub seed: u64,
    pub povms: usize,
    pub deformation_angle: DeformationAngle,
    pub deformation_phase: f64,
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let reference = FamilyParams::<f64>::reference();
        Self {
            mass: reference.mass,
            epsilon: reference.epsilon,
            sigmas: reference.sigmas,
            zeta: 1.0,
            zeta_min: 0.0,
            zeta_max: 3.0,
            zeta_steps: 31,
            p_nodes: DEFAULT_P_NODES,
            theta_nodes: DEFAULT_THETA_NODES,
            phi_nodes: DEFAULT_PHI_NODES,
            p_max: None,
            priors: [0.25; 4],
            tol: SDP_TOL,
            seed: 1,
            povms: 100,
            deformation_angle: DeformationAngle::Azimuthal,
            deformation_phase: 0.0,
            out: None,
        }
    }
}

const KEYS: [&str; 21] = [
    "mass",
    "epsilon",
    "sigma_up",
    "sigma_down",
    "sigma_plus",
    "sigma_minus",
    "zeta",
    "zeta_min",
    "zeta_max",
    "zeta_steps",
    "p_nodes",
    "theta_nodes",
    "phi_nodes",
    "p_max",
    "priors",
    "tol",
    "seed",
    "povms",
    "deformation_angle",
    "deformation_phase",
    "out",
];

fn parse_num<V: std::str::FromStr>(field: &'static str, raw: &str) -> Result<V, Error> {
    raw.trim()
        .parse()
        .map_err(|_| Error::invalid(field, format!("cannot parse {raw:?}")))
}

impl RunConfig {
    /// Applies one `key = value` assignment. Dashes and underscores in the
    /// key are interchangeable.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), Error> {
        let norm = key.trim().replace('-', "_");
        let field = KEYS
            .iter()
            .copied()
            .find(|k| *k == norm)
            .ok_or_else(|| Error::invalid("config", format!("unknown key {key:?}")))?;
        match field {
            "mass" => self.mass = parse_num(field, value)?,
            "epsilon" => self.epsilon = parse_num(field, value)?,
            "sigma_up" => self.sigmas[0] = parse_num(field, value)?,
            "sigma_down" => self.sigmas[1] = parse_num(field, value)?,
            "sigma_plus" => self.sigmas[2] = parse_num(field, value)?,
            "sigma_minus" => self.sigmas[3] = parse_num(field, value)?,
            "zeta" => self.zeta = parse_num(field, value)?,
            "zeta_min" => self.zeta_min = parse_num(field, value)?,
            "zeta_max" => self.zeta_max = parse_num(field, value)?,
            "zeta_steps" => self.zeta_steps = parse_num(field, value)?,
            "p_nodes" => self.p_nodes = parse_num(field, value)?,
            "theta_nodes" => self.theta_nodes = parse_num(field, value)?,
            "phi_nodes" => self.phi_nodes = parse_num(field, value)?,
            "p_max" => {
                self.p_max = match value.trim() {
                    "auto" => None,
                    v => Some(parse_num(field, v)?),
                }
            }
            "priors" => {
                let parts: Vec<f64> = value
                    .split(',')
                    .map(|v| parse_num("priors", v))
                    .collect::<Result<_, _>>()?;
                self.priors = parts
                    .try_into()
                    .map_err(|_| Error::invalid("priors", "expected four comma-separated values"))?;
            }
            "tol" => self.tol = parse_num(field, value)?,
            "seed" => self.seed = parse_num(field, value)?,
            "povms" => self.povms = parse_num(field, value)?,
            "deformation_angle" => {
                self.deformation_angle = match value.trim() {
                    "azimuthal" => DeformationAngle::Azimuthal,
                    "polar" => DeformationAngle::Polar,
                    other => {
                        return Err(Error::invalid(
                            "deformation_angle",
                            format!("expected azimuthal or polar, got {other:?}"),
                        ))
                    }
                }
            }
            "deformation_phase" => self.deformation_phase = parse_num(field, value)?,
            "out" => self.out = Some(PathBuf::from(value.trim())),
            _ => unreachable!("every key is handled"),
        }
        Ok(())
    }

    /// Applies a flat `key = value` text; `#` starts a comment.
    pub fn apply_text(&mut self, text: &str) -> Result<(), Error> {
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::invalid("config", format!("expected key = value, got {line:?}")))?;
            self.set(key, value)?;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), Error> {
        let positive = |field: &'static str, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::invalid(field, format!("must be positive, got {v}")))
            }
        };
        positive("mass", self.mass)?;
        for (field, s) in ["sigma_up", "sigma_down", "sigma_plus", "sigma_minus"]
            .into_iter()
            .zip(self.sigmas)
        {
            positive(field, s)?;
        }
        if !(0.0..1.0).contains(&self.epsilon) {
            return Err(Error::invalid(
                "epsilon",
                format!("must lie in [0, 1), got {}", self.epsilon),
            ));
        }
        for (field, z) in [("zeta", self.zeta), ("zeta_min", self.zeta_min), ("zeta_max", self.zeta_max)] {
            Rapidity::new(z).map_err(|_| {
                Error::invalid(field, format!("must be finite with |zeta| <= 20, got {z}"))
            })?;
        }
        if self.zeta_min > self.zeta_max {
            return Err(Error::invalid("zeta_min", "must not exceed zeta_max"));
        }
        if self.zeta_steps < 1 {
            return Err(Error::invalid("zeta_steps", "must be at least 1"));
        }
        for (field, n) in [
            ("p_nodes", self.p_nodes),
            ("theta_nodes", self.theta_nodes),
            ("phi_nodes", self.phi_nodes),
        ] {
            if n < 2 {
                return Err(Error::invalid(field, format!("must be at least 2, got {n}")));
            }
        }
        if let Some(p) = self.p_max {
            positive("p_max", p)?;
        }
        if self.priors.iter().any(|p| !(*p >= 0.0)) {
            return Err(Error::invalid("priors", "must be non-negative"));
        }
        let total: f64 = self.priors.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::invalid("priors", format!("sum to {total}, expected 1")));
        }
        positive("tol", self.tol)?;
        if !self.deformation_phase.is_finite() {
            return Err(Error::invalid("deformation_phase", "must be finite"));
        }
        Ok(())
    }

    pub fn family_params(&self) -> FamilyParams<f64> {
        FamilyParams {
            mass: self.mass,
            epsilon: self.epsilon,
            sigmas: self.sigmas,
            angle: self.deformation_angle,
            phase: self.deformation_phase,
        }
    }

    pub fn resolved_p_max(&self) -> f64 {
        self.p_max.unwrap_or_else(|| {
            let max_sigma = self.sigmas.iter().fold(0.0f64, |a, &s| a.max(s));
            self.mass + DEFAULT_CUTOFF_WIDTHS * max_sigma
        })
    }

    pub fn grid(&self) -> Result<QuadratureGrid<f64>, Error> {
        QuadratureGrid::new(
            self.p_nodes,
            self.theta_nodes,
            self.phi_nodes,
            self.resolved_p_max(),
            self.mass,
        )
    }

    pub fn family(&self) -> Result<StateFamily<f64>, Error> {
        StateFamily::build(self.family_params(), self.grid()?)
    }

    /// Evenly spaced rapidities from `zeta_min` to `zeta_max` inclusive.
    pub fn zetas(&self) -> Vec<f64> {
        if self.zeta_steps == 1 {
            return vec![self.zeta_min];
        }
        let span = self.zeta_max - self.zeta_min;
        let last = (self.zeta_steps - 1) as f64;
        (0..self.zeta_steps)
            .map(|k| self.zeta_min + span * k as f64 / last)
            .collect()
    }

    /// The configuration as `# key = value` lines.
    pub fn echo(&self) -> String {
        let mut s = String::new();
        let mut line = |k: &str, v: String| {
            let _ = writeln!(s, "# {k} = {v}");
        };
        line("mass", self.mass.to_string());
        line("epsilon", self.epsilon.to_string());
        for (k, v) in ["sigma_up", "sigma_down", "sigma_plus", "sigma_minus"]
            .into_iter()
            .zip(self.sigmas)
        {
            line(k, v.to_string());
        }
        line("zeta", self.zeta.to_string());
        line("zeta_min", self.zeta_min.to_string());
        line("zeta_max", self.zeta_max.to_string());
        line("zeta_steps", self.zeta_steps.to_string());
        line("p_nodes", self.p_nodes.to_string());
        line("theta_nodes", self.theta_nodes.to_string());
        line("phi_nodes", self.phi_nodes.to_string());
        line("p_max", self.resolved_p_max().to_string());
        line(
            "priors",
            self.priors.map(|p| p.to_string()).join(","),
        );
        line("tol", self.tol.to_string());
        line("seed", self.seed.to_string());
        line("povms", self.povms.to_string());
        line(
            "deformation_angle",
            match self.deformation_angle {
                DeformationAngle::Azimuthal => "azimuthal",
                DeformationAngle::Polar => "polar",
            }
            .to_string(),
        );
        line("deformation_phase", self.deformation_phase.to_string());
        s
    }
}

#[derive(Debug, Parser)]
#[command(name = "relspin", version, about = "Boosted spin-1/2 states: contextuality and discrimination")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rest and boosted reduced density matrices with diagnostics.
    Boost(Flags),
    /// Rank tests, verdicts and the dual frame.
    Contextuality(Flags),
    /// Rapidity sweep written as CSV.
    Sweep(Flags),
    /// Four-state SDP and two-ensemble Helstrom at one rapidity.
    Discriminate(Flags),
}

#[derive(Debug, Args)]
struct Flags {
    /// Flat key = value file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    mass: Option<String>,
    #[arg(long)]
    epsilon: Option<String>,
    #[arg(long)]
    sigma_up: Option<String>,
    #[arg(long)]
    sigma_down: Option<String>,
    #[arg(long)]
    sigma_plus: Option<String>,
    #[arg(long)]
    sigma_minus: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    zeta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    zeta_min: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    zeta_max: Option<String>,
    #[arg(long)]
    zeta_steps: Option<String>,
    #[arg(long)]
    p_nodes: Option<String>,
    #[arg(long)]
    theta_nodes: Option<String>,
    #[arg(long)]
    phi_nodes: Option<String>,
    /// Radial cutoff, or `auto` for mass + 8 · max sigma.
    #[arg(long)]
    p_max: Option<String>,
    /// Four comma-separated priors.
    #[arg(long)]
    priors: Option<String>,
    #[arg(long)]
    tol: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// Number of random projective measurements for the model check.
    #[arg(long)]
    povms: Option<String>,
    /// `azimuthal` (default) or `polar`.
    #[arg(long)]
    deformation_angle: Option<String>,
    /// Azimuthal offset of the deformation, in radians.
    #[arg(long, allow_hyphen_values = true)]
    deformation_phase: Option<String>,
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Flags {
    fn overrides(&self) -> Vec<(&'static str, String)> {
        let mut v = Vec::new();
        let mut push = |k: &'static str, val: &Option<String>| {
            if let Some(x) = val {
                v.push((k, x.clone()));
            }
        };
        push("mass", &self.mass);
        push("epsilon", &self.epsilon);
        push("sigma_up", &self.sigma_up);
        push("sigma_down", &self.sigma_down);
        push("sigma_plus", &self.sigma_plus);
        push("sigma_minus", &self.sigma_minus);
        push("zeta", &self.zeta);
        push("zeta_min", &self.zeta_min);
        push("zeta_max", &self.zeta_max);
        push("zeta_steps", &self.zeta_steps);
        push("p_nodes", &self.p_nodes);
        push("theta_nodes", &self.theta_nodes);
        push("phi_nodes", &self.phi_nodes);
        push("p_max", &self.p_max);
        push("priors", &self.priors);
        push("tol", &self.tol);
        push("seed", &self.seed);
        push("povms", &self.povms);
        push("deformation_angle", &self.deformation_angle);
        push("deformation_phase", &self.deformation_phase);
        if let Some(out) = &self.out {
            v.push(("out", out.to_string_lossy().into_owned()));
        }
        v
    }
}

type Handler = fn(&RunConfig, &mut dyn Write) -> Result<(), Failure>;

#[derive(Debug)]
enum Failure {
    Numeric(Error),
    Io { path: PathBuf, source: io::Error },
    /// Output was produced but some rows failed.
    Rows { failed: usize, worst: i32 },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numeric(e)
    }
}

fn exit_code(e: &Error) -> i32 {
    if e.is_validation() {
        EXIT_VALIDATION
    } else {
        EXIT_NUMERICAL
    }
}

fn resolve(flags: &Flags) -> Result<RunConfig, Failure> {
    let mut cfg = RunConfig::default();
    if let Some(path) = &flags.config {
        let text = fs::read_to_string(path).map_err(|source| Failure::Io {
            path: path.clone(),
            source,
        })?;
        cfg.apply_text(&text)?;
    }
    for (k, v) in flags.overrides() {
        cfg.set(k, &v)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the process exit code.
pub fn run<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_VALIDATION } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let (flags, cmd): (&Flags, Handler) = match &cli.command {
        Command::Boost(f) => (f, cmd_boost),
        Command::Contextuality(f) => (f, cmd_contextuality),
        Command::Sweep(f) => (f, cmd_sweep),
        Command::Discriminate(f) => (f, cmd_discriminate),
    };
    let outcome = resolve(flags).and_then(|cfg| cmd(&cfg, stdout));
    match outcome {
        Ok(()) => EXIT_OK,
        Err(Failure::Numeric(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
        Err(Failure::Io { path, source }) => {
            let _ = writeln!(stderr, "error: {}: {source}", path.display());
            EXIT_IO
        }
        Err(Failure::Rows { failed, worst }) => {
            let _ = writeln!(stderr, "error: {failed} sweep row(s) failed");
            worst
        }
    }
}

/// Writes `text` to `cfg.out` when set, otherwise to `stdout`.
fn emit(cfg: &RunConfig, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match &cfg.out {
        Some(path) => write_file(path, text),
        None => stdout.write_all(text.as_bytes()).map_err(|source| Failure::Io {
            path: PathBuf::from("<stdout>"),
            source,
        }),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|source| Failure::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn sig10(x: f64) -> String {
    format!("{x:.9e}")
}

fn matrix_lines(out: &mut String, name: &str, m: &Mat2<f64>) {
    for (r, row) in m.e.iter().enumerate() {
        let cells: Vec<String> = row
            .iter()
            .map(|c| format!("{} {:+.9e}i", sig10(c.re), c.im))
            .collect();
        let _ = writeln!(out, "{name}[{r}] = [{}]", cells.join(", "));
    }
}

fn state_diagnostics(out: &mut String, s: &SpinDensity<f64>) {
    let _ = writeln!(
        out,
        "  trace = {}  hermiticity_error = {}  min_eigenvalue = {}  purity = {}",
        sig10(s.trace()),
        sig10(s.matrix().hermiticity_error()),
        sig10(s.min_eigenvalue()),
        sig10(s.purity())
    );
}

fn cmd_boost(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<(), Failure> {
    let family = cfg.family()?;
    let zeta = Rapidity::new(cfg.zeta)?;
    let rest = family.rest()?;
    let boosted = family.boosted(zeta)?;
    let integrals = family.integrals(zeta)?;
    let mut out = cfg.echo();
    for (i, basis) in BasisState::ALL.iter().enumerate() {
        let _ = writeln!(out, "state {} ({})", i + 1, basis.label());
        matrix_lines(&mut out, "  rho", rest[i].matrix());
        state_diagnostics(&mut out, &rest[i]);
        matrix_lines(&mut out, "  tau", boosted[i].matrix());
        state_diagnostics(&mut out, &boosted[i]);
        let ints = &integrals[i];
        let _ = writeln!(
            out,
            "  I1 = {}  I2 = {}  I3 = {} {:+.9e}i  I4 = {} {:+.9e}i",
            sig10(ints.i1),
            sig10(ints.i2),
            sig10(ints.i3.re),
            ints.i3.im,
            sig10(ints.i4.re),
            ints.i4.im
        );
        let assembled = assemble_from_integrals(*basis, ints);
        let _ = writeln!(
            out,
            "  assembled_vs_direct = {}",
            sig10(assembled.max_abs_diff(boosted[i].matrix()))
        );
    }
    emit(cfg, &out, stdout)
}

fn rank_lines(out: &mut String, label: &str, report: &RankReport<f64>, verdict: Verdict) {
    let svs: Vec<String> = report.singular_values.iter().map(|&s| sig10(s)).collect();
    let _ = writeln!(out, "{label}: rank {} of 4, verdict {}", report.rank, verdict.label());
    let _ = writeln!(out, "  singular_values = [{}]", svs.join(", "));
}

fn cmd_contextuality(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<(), Failure> {
    let family = cfg.family()?;
    let zeta = Rapidity::new(cfg.zeta)?;
    let rest = family.rest()?;
    let boosted = family.boosted(zeta)?;
    let mut out = cfg.echo();
    for (label, states) in [("rest", &rest), ("boosted", &boosted)] {
        let report = gram_rank(states, RANK_TOL);
        rank_lines(&mut out, label, &report, classify(states, RANK_TOL));
        match build_dual_frame(states, RANK_TOL) {
            Ok(frame) => {
                let povms = random_projective_povms(cfg.povms, cfg.seed);
                let model = verify_ontological_model(states, &frame, &povms);
                let _ = writeln!(
                    out,
                    "  dual_frame: residual = {}  condition = {}  completeness_error = {}",
                    sig10(frame.residual),
                    sig10(frame.condition),
                    sig10(frame.completeness_error())
                );
                for j in 0..4 {
                    let c = frame.coefficients(j).map(sig10);
                    let _ = writeln!(out, "  F{} (a, b, c, d) = ({})", j + 1, c.join(", "));
                }
                let _ = writeln!(
                    out,
                    "  model: max_violation = {}  min_response = {}  max_normalization_error = {}  povms = {}",
                    sig10(model.max_violation),
                    sig10(model.min_response),
                    sig10(model.max_normalization_error),
                    cfg.povms
                );
            }
            Err(Error::SingularSystem { condition }) => {
                let _ = writeln!(out, "  dual_frame: none (condition {})", sig10(condition));
            }
            Err(e) => return Err(e.into()),
        }
    }
    emit(cfg, &out, stdout)
}

fn csv_row(row: &SweepRow<f64>) -> String {
    match &row.outcome {
        Ok(v) => format!(
            "{:.6},{:.6},{:.6},{:.6e},ok",
            row.zeta, v.p_success_four, v.p_helstrom_two, v.min_singular_value
        ),
        Err(e) => format!("{:.6},,,,{}", row.zeta, e.code()),
    }
}

/// Renders a complete sweep as CSV text, config echo included.
pub fn sweep_csv(cfg: &RunConfig, rows: &[SweepRow<f64>]) -> String {
    let mut out = cfg.echo();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&csv_row(row));
        out.push('\n');
    }
    out
}

fn cmd_sweep(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<(), Failure> {
    let family = cfg.family()?;
    let rows = sweep_rapidity(&family, &cfg.zetas(), &cfg.priors, cfg.tol);
    emit(cfg, &sweep_csv(cfg, &rows), stdout)?;
    let failures: Vec<&Error> = rows.iter().filter_map(|r| r.outcome.as_ref().err()).collect();
    if failures.is_empty() {
        return Ok(());
    }
    let worst = failures.iter().map(|e| exit_code(e)).max().unwrap_or(EXIT_NUMERICAL);
    Err(Failure::Rows {
        failed: failures.len(),
        worst,
    })
}

fn cmd_discriminate(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<(), Failure> {
    let family = cfg.family()?;
    let taus = family.boosted(Rapidity::new(cfg.zeta)?)?;
    let problem = DiscriminationProblem::new(taus.to_vec(), cfg.priors.to_vec())?;
    let sdp = min_error_sdp(&problem, cfg.tol)?;
    let left = ensemble_mix(&taus[..2], &[0.5, 0.5])?;
    let right = ensemble_mix(&taus[2..], &[0.5, 0.5])?;
    let mut out = cfg.echo();
    let _ = writeln!(out, "p_success_four = {:.6}", sdp.p_success);
    let _ = writeln!(out, "duality_gap = {}", sig10(sdp.duality_gap));
    matrix_lines(&mut out, "Y", &sdp.dual_operator);
    for (i, m) in sdp.povm.iter().enumerate() {
        matrix_lines(&mut out, &format!("M{}", i + 1), m);
    }
    let _ = writeln!(out, "p_helstrom_two = {:.6}", helstrom(&left, &right));
    emit(cfg, &out, stdout)
}
