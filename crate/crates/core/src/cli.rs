//! Command-line front end. Every command writes CSV or JSON to stdout or to
//! `--out`, and [`run`] maps outcomes to exit codes: 0 when every check
//! passes, 1 when a check fails, 2 on usage errors.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::warn;
use serde::Serialize;
use serde_json::json;

use crate::detmodel::{make_config, regime, DetConfig};
use crate::error::{invalid, Result, ZicError};
use crate::gaussian::{
    self, GaussConfig, GdofPoint, GridSpec, DEFAULT_GRID_DENSITY,
};
use crate::regions::{capacity_region, sum_capacity_curve, vertices};
use crate::schemes::{corner_scheme, corners, LinearScheme};
use crate::verifier::{verify, Rational, VerifierConfig, MAX_ENUM_CAP};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Environment variable overriding the exhaustive-verification cap.
pub const ENUM_CAP_VAR: &str = "ZIC_ENUM_CAP";

/// SNR points used by `gauss-gdof`: 10^1 .. 10^12.
const GDOF_SNRS: [f64; 12] = [
    1e1, 1e2, 1e3, 1e4, 1e5, 1e6, 1e7, 1e8, 1e9, 1e10, 1e11, 1e12,
];
/// Allowed distance between the numeric and closed-form GDOF.
pub const GDOF_TOLERANCE: f64 = 0.05;
/// Slack on the `[0, 2]` gap certificate.
pub const GAP_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "zic", version, about = "Z interference channel secrecy toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct Output {
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Capacity region of the deterministic model: constraints and vertices.
    DetRegion {
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long = "C", allow_negative_numbers = true)]
        c: i64,
        #[command(flatten)]
        output: Output,
    },
    /// Verify every corner scheme, or the scheme in --scheme-file (JSON only).
    DetVerify {
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, allow_negative_numbers = true)]
        n: i64,
        #[arg(long = "C", allow_negative_numbers = true)]
        c: i64,
        #[arg(long)]
        scheme_file: Option<PathBuf>,
        #[command(flatten)]
        output: Output,
    },
    /// Normalized secure sum capacity against alpha = n/m.
    DetSumCurve {
        #[arg(long)]
        m: u32,
        /// Comma-separated cooperation values.
        #[arg(long = "C", value_delimiter = ',', required = true)]
        c: Vec<u32>,
        /// Comma-separated alphas, "p/q" or decimal; defaults to k/m for k in 0..=3m.
        #[arg(long, value_delimiter = ',')]
        alpha_grid: Option<Vec<String>>,
        #[command(flatten)]
        output: Output,
    },
    /// Frontier of the Gaussian achievable region.
    GaussRegion {
        #[arg(long = "P", default_value_t = 100.0)]
        p: f64,
        #[arg(long, default_value_t = 1.0)]
        hd: f64,
        #[arg(long)]
        hc: f64,
        #[arg(long = "CG", default_value_t = 0.0)]
        cg: f64,
        /// One count for every parameter, or six counts
        /// theta1,theta2,beta1,beta2,lambda1,lambda2 (a beta count of 1 means full power).
        #[arg(long)]
        grid_density: Option<String>,
        #[command(flatten)]
        output: Output,
    },
    /// Secure sum GDOF: closed form against the numeric slope.
    GaussGdof {
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        gamma: Option<Vec<f64>>,
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
        kappa_grid: Option<Vec<f64>>,
        #[command(flatten)]
        output: Output,
    },
    /// Lower bound, outer bound and gap of the sum rate.
    GaussGap {
        #[arg(long = "P", value_delimiter = ',', required = true)]
        p: Vec<f64>,
        #[arg(long, default_value_t = 1.0)]
        hd: f64,
        #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
        hc: Vec<f64>,
        #[arg(long = "CG", value_delimiter = ',', default_value = "0")]
        cg: Vec<f64>,
        #[command(flatten)]
        output: Output,
    },
}

/// Text to emit and whether every check passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Rendered {
    pub text: String,
    pub all_green: bool,
}

impl Rendered {
    fn green(text: String) -> Self {
        Self {
            text,
            all_green: true,
        }
    }
}

/// Formats a float with 12 significant digits, trailing zeros trimmed.
pub fn fmt_float(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.11e}");
    let exp: i32 = sci[sci.find('e').map_or(0, |i| i + 1)..].parse().unwrap_or(0);
    if !(-5..15).contains(&exp) {
        let (mantissa, _) = sci.split_once('e').unwrap_or((&sci, ""));
        return format!("{}e{exp}", trim_zeros(mantissa));
    }
    let prec = (11 - exp).max(0) as usize;
    trim_zeros(&format!("{x:.prec$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn rational_to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        fmt_float(rational_to_f64(r))
    }
}

/// Parses `"p/q"`, an integer, or a decimal such as `"0.125"` exactly.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || invalid(format!("cannot parse {s:?} as a rational"));
    if let Some((p, q)) = s.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(invalid(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(p, q));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.len() > 15 || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let negative = int.starts_with('-');
    let int_digits = int.trim_start_matches(['-', '+']);
    if int_digits.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    let whole: i64 = if int_digits.is_empty() {
        0
    } else {
        int_digits.parse().map_err(|_| bad())?
    };
    let scale = 10i64.pow(frac.len() as u32);
    let part: i64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
    let magnitude = whole
        .checked_mul(scale)
        .and_then(|w| w.checked_add(part))
        .ok_or_else(bad)?;
    Ok(Rational::new(if negative { -magnitude } else { magnitude }, scale))
}

fn parse_grid_density(s: &str) -> Result<GridSpec> {
    let counts = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| invalid(format!("bad grid density {t:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    match counts[..] {
        [n] => Ok(GridSpec::uniform(n)),
        [theta1, theta2, beta1, beta2, lambda1, lambda2] => Ok(GridSpec {
            theta1,
            theta2,
            beta1,
            beta2,
            lambda1,
            lambda2,
        }),
        _ => Err(invalid(
            "grid density takes one count or six counts theta1,theta2,beta1,beta2,lambda1,lambda2",
        )),
    }
}

fn enum_cap_from_env() -> Result<VerifierConfig> {
    match std::env::var(ENUM_CAP_VAR) {
        Ok(v) => {
            let cap: u32 = v
                .trim()
                .parse()
                .map_err(|_| invalid(format!("{ENUM_CAP_VAR}={v:?} is not a bit count")))?;
            VerifierConfig::with_cap(cap.min(MAX_ENUM_CAP))
        }
        Err(_) => Ok(VerifierConfig::default()),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn det_region(cfg: &DetConfig, format: Format) -> Result<Rendered> {
    let region = capacity_region(cfg)?;
    let verts = vertices(&region)?;
    let text = match format {
        Format::Csv => {
            let mut out = String::from("R1,R2\n");
            for (r1, r2) in &verts {
                let _ = writeln!(out, "{},{}", fmt_rational(r1), fmt_rational(r2));
            }
            out
        }
        Format::Json => to_json(&json!({
            "config": {"m": cfg.m(), "n": cfg.n(), "C": cfg.c()},
            "regime": regime(cfg)?.to_string(),
            "constraints": region.constraints,
            "vertices": verts
                .iter()
                .map(|(a, b)| [a.to_string(), b.to_string()])
                .collect::<Vec<_>>(),
        }))?,
    };
    Ok(Rendered::green(text))
}

fn det_verify(
    cfg: &DetConfig,
    scheme_file: Option<&PathBuf>,
    vcfg: VerifierConfig,
) -> Result<Rendered> {
    let mut entries = Vec::new();
    let mut all_green = true;
    if let Some(path) = scheme_file {
        let scheme: LinearScheme = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        scheme.check_dims(cfg)?;
        let report = verify(cfg, &scheme, vcfg)?;
        all_green &= report.is_green();
        entries.push(json!({"corner": "custom", "report": report}));
    } else {
        for corner in corners(cfg)? {
            let report = verify(cfg, &corner_scheme(cfg, corner)?, vcfg)?;
            all_green &= report.is_green();
            entries.push(json!({"corner": corner.to_string(), "report": report}));
        }
    }
    Ok(Rendered {
        text: to_json(&entries)?,
        all_green,
    })
}

fn default_alpha_grid(m: u32) -> Vec<Rational> {
    (0..=3 * i64::from(m))
        .map(|k| Rational::new(k, i64::from(m)))
        .collect()
}

fn det_sum_curve(
    m: u32,
    cs: &[u32],
    alphas: &[Rational],
    format: Format,
) -> Result<Rendered> {
    let mut rows = Vec::new();
    for &c in cs {
        for (alpha, value) in sum_capacity_curve(m, c, alphas)? {
            rows.push((alpha, c, value));
        }
    }
    let text = match format {
        Format::Csv => {
            let mut out = String::from("alpha,C,norm_sum\n");
            for (alpha, c, value) in &rows {
                let _ = writeln!(out, "{},{c},{}", fmt_rational(alpha), fmt_rational(value));
            }
            out
        }
        Format::Json => to_json(
            &rows
                .iter()
                .map(|(alpha, c, value)| {
                    json!({
                        "alpha": alpha.to_string(),
                        "C": c,
                        "normSum": value.to_string(),
                        "normSumValue": rational_to_f64(value),
                    })
                })
                .collect::<Vec<_>>(),
        )?,
    };
    Ok(Rendered::green(text))
}

fn pairs_csv(header: &str, rows: &[(f64, f64)]) -> String {
    let mut out = format!("{header}\n");
    for (a, b) in rows {
        let _ = writeln!(out, "{},{}", fmt_float(*a), fmt_float(*b));
    }
    out
}

fn gauss_region(cfg: &GaussConfig, grid: &GridSpec, format: Format) -> Result<Rendered> {
    let frontier = gaussian::achievable_region(cfg, grid)?;
    let outer = gaussian::sum_rate_outer(cfg);
    let text = match format {
        Format::Csv => pairs_csv("R1,R2", &frontier),
        Format::Json => to_json(&json!({
            "config": cfg,
            "grid": grid,
            "sumRateOuter": outer,
            "frontier": frontier.iter().map(|p| [p.0, p.1]).collect::<Vec<_>>(),
        }))?,
    };
    Ok(Rendered::green(text))
}

fn default_kappa_grid() -> Vec<f64> {
    (0..=20).map(|k| f64::from(k) / 20.0).collect()
}

fn gauss_gdof(kappas: &[f64], gammas: &[f64], format: Format) -> Result<Rendered> {
    let mut rows = Vec::new();
    let mut all_green = true;
    for &gamma in gammas {
        for &kappa in kappas {
            let formula = gaussian::sum_gdof(kappa, gamma)?;
            let numeric = gaussian::gdof_numeric(kappa, gamma, &GDOF_SNRS)?;
            if (numeric - formula).abs() > GDOF_TOLERANCE {
                warn!("kappa = {kappa}, gamma = {gamma}: numeric {numeric} vs formula {formula}");
                all_green = false;
            }
            rows.push((GdofPoint { kappa, gamma, dsum: formula }, numeric));
        }
    }
    let text = match format {
        Format::Csv => {
            let mut out = String::from("kappa,gamma,dsum_formula,dsum_numeric\n");
            for (pt, numeric) in &rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{}",
                    fmt_float(pt.kappa),
                    fmt_float(pt.gamma),
                    fmt_float(pt.dsum),
                    fmt_float(*numeric)
                );
            }
            out
        }
        Format::Json => to_json(
            &rows
                .iter()
                .map(|(pt, numeric)| json!({"point": pt, "dsumNumeric": numeric}))
                .collect::<Vec<_>>(),
        )?,
    };
    Ok(Rendered { text, all_green })
}

#[derive(Debug, Serialize)]
struct GapRow {
    #[serde(rename = "P")]
    p: f64,
    hc: f64,
    #[serde(rename = "CG")]
    cg: f64,
    lower: f64,
    outer: f64,
    gap: f64,
}

fn gauss_gap(ps: &[f64], hd: f64, hcs: &[f64], cgs: &[f64], format: Format) -> Result<Rendered> {
    let mut rows = Vec::new();
    let mut all_green = true;
    let mut first_skip = None;
    for &p in ps {
        for &hc in hcs {
            for &cg in cgs {
                let cfg = GaussConfig::new(p, hd, hc, cg)?;
                let lower = match gaussian::sum_rate_lower(&cfg) {
                    Ok(v) => v,
                    Err(ZicError::Precondition(msg)) => {
                        warn!("skipping P = {p}, hc = {hc}, CG = {cg}: {msg}");
                        first_skip.get_or_insert(msg);
                        continue;
                    }
                    Err(e) => return Err(e),
                };
                let outer = gaussian::sum_rate_outer(&cfg);
                let gap = outer - lower;
                if !(-GAP_TOLERANCE..=2.0 + GAP_TOLERANCE).contains(&gap) {
                    all_green = false;
                }
                rows.push(GapRow { p, hc, cg, lower, outer, gap });
            }
        }
    }
    if rows.is_empty() {
        return Err(ZicError::Precondition(
            first_skip.unwrap_or_else(|| "no parameter points".to_string()),
        ));
    }
    let text = match format {
        Format::Csv => {
            let mut out = String::from("P,hc,CG,lower,outer,gap\n");
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    fmt_float(r.p),
                    fmt_float(r.hc),
                    fmt_float(r.cg),
                    fmt_float(r.lower),
                    fmt_float(r.outer),
                    fmt_float(r.gap)
                );
            }
            out
        }
        Format::Json => to_json(&rows)?,
    };
    Ok(Rendered { text, all_green })
}

/// Runs a parsed command and returns its output without writing it.
pub fn execute(cmd: &Command) -> Result<Rendered> {
    match cmd {
        Command::DetRegion { m, n, c, output } => {
            det_region(&make_config(*m, *n, *c)?, output.format.unwrap_or_default())
        }
        Command::DetVerify {
            m,
            n,
            c,
            scheme_file,
            output,
        } => {
            if output.format == Some(Format::Csv) {
                return Err(invalid("det-verify emits JSON only"));
            }
            det_verify(&make_config(*m, *n, *c)?, scheme_file.as_ref(), enum_cap_from_env()?)
        }
        Command::DetSumCurve {
            m,
            c,
            alpha_grid,
            output,
        } => {
            let alphas = match alpha_grid {
                Some(list) => list
                    .iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()?,
                None => default_alpha_grid(*m),
            };
            det_sum_curve(*m, c, &alphas, output.format.unwrap_or_default())
        }
        Command::GaussRegion {
            p,
            hd,
            hc,
            cg,
            grid_density,
            output,
        } => {
            let grid = match grid_density {
                Some(s) => parse_grid_density(s)?,
                None => GridSpec::uniform(DEFAULT_GRID_DENSITY),
            };
            gauss_region(
                &GaussConfig::new(*p, *hd, *hc, *cg)?,
                &grid,
                output.format.unwrap_or_default(),
            )
        }
        Command::GaussGdof {
            gamma,
            kappa_grid,
            output,
        } => {
            let gammas = gamma.clone().unwrap_or_else(|| vec![0.0, 0.5, 1.0, 2.0]);
            let kappas = kappa_grid.clone().unwrap_or_else(default_kappa_grid);
            gauss_gdof(&kappas, &gammas, output.format.unwrap_or_default())
        }
        Command::GaussGap {
            p,
            hd,
            hc,
            cg,
            output,
        } => gauss_gap(p, *hd, hc, cg, output.format.unwrap_or_default()),
    }
}

fn output_of(cmd: &Command) -> &Output {
    match cmd {
        Command::DetRegion { output, .. }
        | Command::DetVerify { output, .. }
        | Command::DetSumCurve { output, .. }
        | Command::GaussRegion { output, .. }
        | Command::GaussGdof { output, .. }
        | Command::GaussGap { output, .. } => output,
    }
}

fn is_usage_error(e: &ZicError) -> bool {
    matches!(
        e,
        ZicError::Validation(_)
            | ZicError::UndefinedAlpha
            | ZicError::InvalidCorner { .. }
            | ZicError::Precondition(_)
            | ZicError::Json(_)
    )
}

/// Executes `cli`, writes its output and returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let rendered = match execute(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return if is_usage_error(&e) {
                EXIT_USAGE
            } else {
                EXIT_CHECK_FAILED
            };
        }
    };
    let written = match &output_of(&cli.command).out {
        Some(path) => std::fs::write(path, &rendered.text),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(rendered.text.as_bytes())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_CHECK_FAILED;
    }
    if rendered.all_green {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}
