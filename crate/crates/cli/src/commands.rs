//! Command-line surface: one subcommand per report the tool produces, plus
//! shared output plumbing. Every subcommand builds a [`ReportDoc`]; the
//! caller renders it in the requested format and writes it to stdout or to
//! `--out`. Identical invocations produce byte-identical output.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use retcalc::econometrics::{ols, sharpe, significance_marker, FactorSeries};
use retcalc::fixtures::{
    market_factor_high, market_factor_low, snapshot_1926, snapshot_1932, snapshot_2020, table3_panel_a,
    table3_panel_b, table8, LegFixture, TABLE2_PANELS,
};
use retcalc::long_short::{bhls_from_legs, leg_return_diffs, prop2_gap, prop2_gap_net};
use retcalc::market_share::{common_capital, factor_capital_share, share_of_market, MarketSnapshot};
use retcalc::mc_experiments::{
    alpha_inflation_experiment_with, table3_replay, ExperimentConfig, GbmParams, SeedSpec,
    DEFAULT_MASTER_SEED,
};
use retcalc::return_calculus::{compound_on_mean, mean_summary, returns_from_values};
use retcalc::value_process::{
    mean_on_fixed_capital, pr_terminal_compounded, pr_terminal_flat, RatePath,
};
use retcalc::{Convention, Error as CoreError, PriceSeries, ReturnSeries};

use crate::golden::{run_all_goldens, GoldenOptions};
use crate::ingest;
use crate::report::{fmt_f, OutputFormat, ReportDoc};
use crate::svg::{line_plot, SeriesSpec};
use crate::CliError;

/// Return-convention analytics: compounding ledgers, long-short scenarios,
/// regression diagnostics and seeded Monte Carlo experiments.
#[derive(Debug, Parser)]
#[command(name = "retcalc", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format for the report document.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Md)]
    pub format: OutputFormat,

    /// Write the report to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Summarize a monthly price CSV: period means under both conventions,
    /// Sharpe ratios, and buy-and-hold versus restarted-capital ledgers.
    Analyze(AnalyzeArgs),
    /// Walk the three embedded two-period long-short scenarios.
    BhlsDemo,
    /// Replay the embedded decade fixtures: excess compounding year by year
    /// against the zero-cost portfolio value.
    ReplayTable3(ReplayArgs),
    /// Seeded Monte Carlo: how often a net-return intercept crosses a
    /// significance threshold that the same path's log-return intercept
    /// does not.
    McAlpha(McAlphaArgs),
    /// Statistics of the embedded pathological price pair, optionally with
    /// an SVG plot of both series.
    Pathological(PathologicalArgs),
    /// Terminal-value gap between compounding two legs separately and
    /// compounding their excess return.
    Prop2(Prop2Args),
    /// Factor capital as a share of the market, from the embedded market
    /// snapshots or a user-supplied one.
    MarketShare(MarketShareArgs),
    /// Check every embedded golden table; exits 1 on any mismatch.
    Golden(GoldenArgs),
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    /// Price CSV with header `date,close` (ISO-8601 dates, positive closes).
    #[arg(long)]
    pub prices: PathBuf,

    /// Annual risk-free rate, as a decimal.
    #[arg(long, default_value_t = 0.03)]
    pub rf: f64,

    /// Optional per-period rate CSV with header `date,rate`; replaces the
    /// constant --rf in the reinvestment ledger.
    #[arg(long)]
    pub rates: Option<PathBuf>,

    /// Periods per year in the input series.
    #[arg(long, default_value_t = 12)]
    pub periods_per_year: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PanelChoice {
    A,
    B,
    Both,
}

#[derive(Debug, Args)]
pub struct ReplayArgs {
    /// Which embedded decade fixture to replay.
    #[arg(long, value_enum, default_value_t = PanelChoice::Both)]
    pub panel: PanelChoice,
}

/// Embedded decade market factors the experiment can regress on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Decade {
    /// Rising decade: annualized mean 15.4%, volatility 13.3%.
    High,
    /// Flat decade: annualized mean -1.3%, volatility 16.4%.
    Low,
}

impl Decade {
    pub fn market(self) -> &'static PriceSeries {
        match self {
            Decade::High => market_factor_high(),
            Decade::Low => market_factor_low(),
        }
    }

    /// The decade's own annualized volatility: the default simulation vol.
    pub fn default_vol(self) -> f64 {
        match self {
            Decade::High => 0.133,
            Decade::Low => 0.164,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Decade::High => "embedded high decade",
            Decade::Low => "embedded low decade",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Dependent {
    /// Regress excess returns (path minus rf on market minus rf).
    Excess,
    /// Regress raw returns.
    Raw,
}

#[derive(Debug, Args)]
pub struct McAlphaArgs {
    /// Flat `key = value` config file; explicit flags override it. Keys:
    /// drift, vol, paths, seed, rf, horizon, steps_per_year, market,
    /// decade, dependent, two_sided.
    #[arg(long)]
    pub config: Option<PathBuf>,

    /// Annual drift of the simulated paths (default 0.08).
    #[arg(long)]
    pub drift: Option<f64>,

    /// Annual volatility (default: the selected decade's volatility).
    #[arg(long)]
    pub vol: Option<f64>,

    /// Number of simulated paths (default 10000).
    #[arg(long)]
    pub paths: Option<u32>,

    /// Master seed for the counter-based generator (default 7).
    #[arg(long)]
    pub seed: Option<u64>,

    /// Annual risk-free rate (default 0.03).
    #[arg(long)]
    pub rf: Option<f64>,

    /// Horizon in periods (default 120).
    #[arg(long)]
    pub horizon: Option<u32>,

    /// Periods per year (default 12).
    #[arg(long)]
    pub steps_per_year: Option<u32>,

    /// Market factor CSV (header `date,close`) with horizon+1 rows;
    /// requires --vol.
    #[arg(long)]
    pub market: Option<PathBuf>,

    /// Embedded decade market factor (default high); ignored with --market.
    #[arg(long, value_enum)]
    pub decade: Option<Decade>,

    /// Dependent series convention (default excess).
    #[arg(long, value_enum)]
    pub dependent: Option<Dependent>,

    /// Compare |t| against the thresholds instead of signed t.
    #[arg(long)]
    pub two_sided: bool,
}

#[derive(Debug, Args)]
pub struct PathologicalArgs {
    /// Write an SVG line plot of both embedded series to this path.
    #[arg(long)]
    pub plot: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct Prop2Args {
    /// Average per-period log return of the risky leg.
    #[arg(long, default_value_t = 0.10)]
    pub ybar: f64,

    /// Per-period log rate of the risk-free leg.
    #[arg(long, default_value_t = 0.03)]
    pub r: f64,

    /// Number of periods.
    #[arg(long, default_value_t = 20)]
    pub n: u32,

    /// Capital each leg starts with.
    #[arg(long, default_value_t = 100.0)]
    pub base: f64,
}

#[derive(Debug, Args)]
pub struct MarketShareArgs {
    /// Market snapshot CSV with header `name,firms,min,max,cap`; when
    /// omitted, the embedded snapshots are reported.
    #[arg(long)]
    pub snapshot: Option<PathBuf>,

    /// Label for the user-supplied snapshot.
    #[arg(long, default_value = "snapshot")]
    pub label: String,

    /// Multiplier applied to the snapshot's cap/min/max columns.
    #[arg(long, default_value_t = 1.0)]
    pub unit: f64,
}

#[derive(Debug, Args)]
pub struct GoldenArgs {
    /// Monthly index CSV for the conditional long-horizon table.
    #[arg(long)]
    pub prices: Option<PathBuf>,

    /// Annual risk-free rate for the conditional table.
    #[arg(long, default_value_t = 0.03)]
    pub rf: f64,

    /// Paths per Monte Carlo cell.
    #[arg(long, default_value_t = 10_000)]
    pub paths: u32,

    /// Master seed for the Monte Carlo cells.
    #[arg(long, default_value_t = DEFAULT_MASTER_SEED)]
    pub seed: u64,
}

/// A finished command: the report plus whether a golden run passed.
#[derive(Debug)]
pub struct RunResult {
    pub doc: ReportDoc,
    pub golden_ok: bool,
}

fn ok(doc: ReportDoc) -> RunResult {
    RunResult {
        doc,
        golden_ok: true,
    }
}

/// Parse the process arguments, run the selected command and emit its
/// report. Returns whether the run should exit successfully.
pub fn run() -> Result<bool, CliError> {
    let cli = Cli::parse();
    let result = execute(&cli.command)?;
    let rendered = result.doc.render(cli.format);
    match &cli.out {
        Some(path) => fs::write(path, rendered)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?,
        None => print!("{rendered}"),
    }
    Ok(result.golden_ok)
}

/// Dispatch a parsed command.
pub fn execute(command: &Command) -> Result<RunResult, CliError> {
    match command {
        Command::Analyze(args) => run_analyze(args).map(ok),
        Command::BhlsDemo => run_bhls_demo().map(ok),
        Command::ReplayTable3(args) => run_replay(args).map(ok),
        Command::McAlpha(args) => run_mc_alpha(args).map(ok),
        Command::Pathological(args) => run_pathological(args).map(ok),
        Command::Prop2(args) => run_prop2(args).map(ok),
        Command::MarketShare(args) => run_market_share(args).map(ok),
        Command::Golden(args) => run_golden(args),
    }
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

fn run_analyze(args: &AnalyzeArgs) -> Result<ReportDoc, CliError> {
    let prices = ingest::load_prices(&args.prices)?;
    let (rows, span) = ingest::describe(&prices);
    let mut doc = ReportDoc::new(format!("price series analysis: {}", args.prices.display()));
    doc.push("observations", rows.to_string(), span);
    doc.push("start value", fmt_f(prices.first(), 2), "");
    doc.push("final value", fmt_f(prices.last(), 2), "");

    let summary = mean_summary(&prices)?;
    let n = summary.n_periods;
    doc.push(
        "geometric mean (log, per period)",
        fmt_f(summary.geometric_mean_log, 6),
        "path-independent: ln(final/start)/n",
    );
    doc.push(
        "arithmetic mean (net, per period)",
        fmt_f(summary.arithmetic_mean_net, 6),
        "path-dependent simple average",
    );
    doc.push("stdev (log, per period)", fmt_f(summary.stdev_log, 6), "");
    doc.push("stdev (net, per period)", fmt_f(summary.stdev_net, 6), "");

    let rf_period = RatePath::per_period(args.rf, args.periods_per_year);
    let log_returns = prices.returns(Convention::Log)?;
    let net_returns = prices.returns(Convention::Net)?;
    let rf_note = format!("per-period rf {}", fmt_f(rf_period, 6));
    doc.push("Sharpe (log)", sharpe_cell(&log_returns, rf_period)?, rf_note.clone());
    doc.push("Sharpe (net)", sharpe_cell(&net_returns, rf_period)?, rf_note);

    doc.push(
        "buy-and-hold final",
        fmt_f(prices.last(), 2),
        "start compounded through every period",
    );
    let gm_final = compound_on_mean(
        prices.first(),
        summary.geometric_mean_log,
        n as u32,
        Convention::Log,
    )?;
    doc.push(
        "compounded at geometric mean",
        fmt_f(gm_final, 2),
        "equals the buy-and-hold final exactly",
    );
    let am_final = compound_on_mean(
        prices.first(),
        summary.arithmetic_mean_net,
        n as u32,
        Convention::Net,
    )?;
    doc.push(
        "compounded at arithmetic mean",
        fmt_f(am_final, 2),
        "overstates buy-and-hold whenever returns vary",
    );

    let flat = pr_terminal_flat(prices.first(), net_returns.values())?;
    doc.push(
        "restarted capital, cash flat: cash sum",
        fmt_f(flat.cash_simple_sum, 2),
        "per-period profits swept, uninvested",
    );
    doc.push(
        "restarted capital, cash flat: total",
        fmt_f(flat.terminal_total, 2),
        "position plus swept cash",
    );

    let rate_path = match &args.rates {
        Some(path) => RatePath::Explicit(ingest::load_rates(path)?),
        None => RatePath::constant_annual(args.rf, args.periods_per_year),
    };
    let compounded = pr_terminal_compounded(prices.first(), net_returns.values(), &rate_path)?;
    doc.push(
        "restarted capital, cash at rf: cash",
        fmt_f(compounded.cash_compounded, 2),
        "swept cash reinvested at the risk-free rate",
    );
    doc.push(
        "restarted capital, cash at rf: total",
        fmt_f(compounded.terminal_total, 2),
        "position plus reinvested cash",
    );
    let annuity = mean_on_fixed_capital(
        prices.first(),
        summary.arithmetic_mean_net,
        n,
        &rate_path,
    )?;
    doc.push(
        "annuity at arithmetic mean",
        fmt_f(annuity, 2),
        "closed form: constant mean sweep reinvested at rf",
    );
    Ok(doc)
}

fn sharpe_cell(series: &ReturnSeries, rf_per_period: f64) -> Result<String, CliError> {
    match sharpe(series, rf_per_period) {
        Ok(s) => Ok(fmt_f(s.sharpe, 4)),
        Err(CoreError::DegenerateSeries) => Ok("N/A".to_string()),
        Err(e) => Err(e.into()),
    }
}

// ---------------------------------------------------------------------------
// bhls-demo
// ---------------------------------------------------------------------------

fn run_bhls_demo() -> Result<ReportDoc, CliError> {
    let mut doc = ReportDoc::new("two-period long-short scenarios");
    for panel in &TABLE2_PANELS {
        for (leg, path) in [("long", &panel.long), ("short", &panel.short)] {
            for conv in [Convention::Net, Convention::Log] {
                let r = returns_from_values(path.as_slice(), conv)?;
                doc.push(
                    format!("{} — {leg} ({} %)", panel.label, conv.name()),
                    two_period_cell(&r),
                    "",
                );
            }
        }
        for conv in [Convention::Net, Convention::Log] {
            let d = leg_return_diffs(&panel.long, &panel.short, conv)?;
            doc.push(
                format!("{} — long minus short ({} %)", panel.label, conv.name()),
                two_period_cell(&d),
                "per-period return difference",
            );
        }
        let bhls = bhls_from_legs(&panel.long, &panel.short)?;
        let values: Vec<String> = bhls.values().iter().map(|v| fmt_f(*v, 0)).collect();
        doc.push(
            format!("{} — portfolio value", panel.label),
            values.join(", "),
            "zero cost at inception, so its own returns are undefined",
        );
    }
    Ok(doc)
}

fn two_period_cell(returns: &[f64]) -> String {
    let mean = (returns[0] + returns[1]) / 2.0;
    format!(
        "{}, {}; mean {}",
        fmt_f(100.0 * returns[0], 1),
        fmt_f(100.0 * returns[1], 1),
        fmt_f(100.0 * mean, 1)
    )
}

// ---------------------------------------------------------------------------
// replay-table3
// ---------------------------------------------------------------------------

fn run_replay(args: &ReplayArgs) -> Result<ReportDoc, CliError> {
    let mut doc = ReportDoc::new("decade replay");
    if matches!(args.panel, PanelChoice::A | PanelChoice::Both) {
        replay_panel(&mut doc, "A", table3_panel_a())?;
    }
    if matches!(args.panel, PanelChoice::B | PanelChoice::Both) {
        replay_panel(&mut doc, "B", table3_panel_b())?;
    }
    Ok(doc)
}

fn replay_panel(doc: &mut ReportDoc, key: &str, fixture: &LegFixture) -> Result<(), CliError> {
    let r = table3_replay(&fixture.years, &fixture.risky, &fixture.riskfree)?;
    doc.push(
        format!("{key} start (year {})", r.start_year),
        fmt_f(r.start_value, 2),
        "both legs start at the same capital",
    );
    for row in &r.rows {
        doc.push(
            format!("{key} year {}", row.year),
            format!(
                "risky {} | riskfree {} | value {}",
                fmt_f(row.risky, 2),
                fmt_f(row.riskfree, 2),
                fmt_f(row.bhls, 2)
            ),
            format!(
                "excess log {} comp {} | excess net {} comp {}",
                fmt_f(row.excess_log, 4),
                fmt_f(row.comp_log, 2),
                fmt_f(row.excess_net, 4),
                fmt_f(row.comp_net, 2)
            ),
        );
    }
    doc.push(
        format!("{key} mean excess"),
        format!("log {} | net {}", fmt_f(r.mean_log, 4), fmt_f(r.mean_net, 4)),
        "",
    );
    doc.push(
        format!("{key} final"),
        format!(
            "comp log {} | comp net {} | value {}",
            fmt_f(r.final_comp_log, 2),
            fmt_f(r.final_comp_net, 2),
            fmt_f(r.final_bhls, 2)
        ),
        "",
    );
    doc.push(
        format!("{key} compounded at mean"),
        format!(
            "log {} | net {}",
            fmt_f(r.comp_at_mean_log, 2),
            fmt_f(r.comp_at_mean_net, 2)
        ),
        "the log mean reconstructs the compounded final exactly",
    );
    Ok(())
}

// ---------------------------------------------------------------------------
// mc-alpha
// ---------------------------------------------------------------------------

/// Values an experiment config file may set; flags override these.
#[derive(Debug, Default, PartialEq)]
struct McConfig {
    drift: Option<f64>,
    vol: Option<f64>,
    paths: Option<u32>,
    seed: Option<u64>,
    rf: Option<f64>,
    horizon: Option<u32>,
    steps_per_year: Option<u32>,
    market: Option<PathBuf>,
    decade: Option<Decade>,
    dependent: Option<Dependent>,
    two_sided: Option<bool>,
}

fn parse_mc_config(path: &Path) -> Result<McConfig, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let mut cfg = McConfig::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at = |msg: String| CliError::Input(format!("{}: line {}: {msg}", path.display(), idx + 1));
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| at("expected `key = value`".to_string()))?;
        let key = key.trim().to_ascii_lowercase().replace('-', "_");
        let value = value.trim();
        match key.as_str() {
            "drift" => cfg.drift = Some(parse_with(value, &key, &at)?),
            "vol" | "volatility" => cfg.vol = Some(parse_with(value, &key, &at)?),
            "paths" => cfg.paths = Some(parse_with(value, &key, &at)?),
            "seed" => cfg.seed = Some(parse_with(value, &key, &at)?),
            "rf" => cfg.rf = Some(parse_with(value, &key, &at)?),
            "horizon" => cfg.horizon = Some(parse_with(value, &key, &at)?),
            "steps_per_year" => cfg.steps_per_year = Some(parse_with(value, &key, &at)?),
            "market" | "market_csv" => cfg.market = Some(PathBuf::from(value)),
            "decade" => {
                cfg.decade = Some(match value.to_ascii_lowercase().as_str() {
                    "high" => Decade::High,
                    "low" => Decade::Low,
                    other => return Err(at(format!("decade must be high or low, got {other:?}"))),
                })
            }
            "dependent" => {
                cfg.dependent = Some(match value.to_ascii_lowercase().as_str() {
                    "excess" => Dependent::Excess,
                    "raw" => Dependent::Raw,
                    other => return Err(at(format!("dependent must be excess or raw, got {other:?}"))),
                })
            }
            "two_sided" => cfg.two_sided = Some(parse_with(value, &key, &at)?),
            other => return Err(at(format!("unknown config key {other:?}"))),
        }
    }
    Ok(cfg)
}

fn parse_with<T: std::str::FromStr>(
    value: &str,
    key: &str,
    at: &dyn Fn(String) -> CliError,
) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| at(format!("cannot parse {value:?} for key {key:?}")))
}

#[derive(Debug)]
struct ResolvedMc {
    params: GbmParams,
    market: PriceSeries,
    market_label: String,
    rf: f64,
    paths: u32,
    seed: u64,
    config: ExperimentConfig,
}

fn resolve_mc(args: &McAlphaArgs) -> Result<ResolvedMc, CliError> {
    let file = match &args.config {
        Some(path) => parse_mc_config(path)?,
        None => McConfig::default(),
    };
    let market_path = args.market.clone().or(file.market);
    let decade = args.decade.or(file.decade).unwrap_or(Decade::High);
    let (market, market_label, default_vol) = match &market_path {
        Some(path) => {
            let series = ingest::load_prices(path)?;
            (series, path.display().to_string(), None)
        }
        None => (
            decade.market().clone(),
            decade.label().to_string(),
            Some(decade.default_vol()),
        ),
    };
    let vol = match args.vol.or(file.vol).or(default_vol) {
        Some(v) => v,
        None => {
            return Err(CliError::input(
                "--vol is required when the market factor comes from a file",
            ))
        }
    };
    let horizon = args.horizon.or(file.horizon).unwrap_or(120);
    let steps = args.steps_per_year.or(file.steps_per_year).unwrap_or(12);
    let dependent = args.dependent.or(file.dependent).unwrap_or(Dependent::Excess);
    Ok(ResolvedMc {
        params: GbmParams {
            drift_annual: args.drift.or(file.drift).unwrap_or(0.08),
            vol_annual: vol,
            steps_per_year: steps,
            horizon_periods: horizon,
            s0: 100.0,
        },
        market,
        market_label,
        rf: args.rf.or(file.rf).unwrap_or(0.03),
        paths: args.paths.or(file.paths).unwrap_or(10_000),
        seed: args.seed.or(file.seed).unwrap_or(DEFAULT_MASTER_SEED),
        config: ExperimentConfig {
            dependent_excess: dependent == Dependent::Excess,
            two_sided: args.two_sided || file.two_sided.unwrap_or(false),
        },
    })
}

fn run_mc_alpha(args: &McAlphaArgs) -> Result<ReportDoc, CliError> {
    let resolved = resolve_mc(args)?;
    let report = alpha_inflation_experiment_with(
        &resolved.market,
        &resolved.params,
        resolved.rf,
        resolved.paths,
        SeedSpec::new(resolved.seed),
        resolved.config,
    )?;
    let mut doc = ReportDoc::new("simulated alpha inflation");
    doc.push("market factor", resolved.market_label, "regressor for every path");
    doc.push("drift (annual)", fmt_f(resolved.params.drift_annual, 4), "");
    doc.push("volatility (annual)", fmt_f(resolved.params.vol_annual, 4), "");
    doc.push(
        "horizon",
        format!(
            "{} periods at {} per year",
            resolved.params.horizon_periods, resolved.params.steps_per_year
        ),
        "",
    );
    doc.push("risk-free (annual)", fmt_f(resolved.rf, 4), "");
    doc.push("paths", report.n_paths.to_string(), "");
    doc.push("master seed", resolved.seed.to_string(), "counter-based substream per path");
    doc.push(
        "dependent",
        if resolved.config.dependent_excess { "excess returns" } else { "raw returns" }.to_string(),
        "",
    );
    doc.push(
        "threshold side",
        if resolved.config.two_sided { "two-sided |t|" } else { "one-sided t" }.to_string(),
        "",
    );
    doc.push(
        "significant slopes",
        report.sig_beta_count.to_string(),
        "paths with market-beta t above the lowest threshold (log convention)",
    );
    for (threshold, count) in report.threshold_counts() {
        doc.push(
            format!("inflated intercepts at t = {threshold}"),
            count.to_string(),
            "log t below the threshold, net t above it",
        );
    }
    doc.push(
        "inflation percentage",
        fmt_f(report.inflation_percentage, 1),
        "inflated intercepts summed over thresholds, per significant slope",
    );
    doc.push("excluded paths", report.excluded_paths.to_string(), "degenerate regressions");
    Ok(doc)
}

// ---------------------------------------------------------------------------
// pathological
// ---------------------------------------------------------------------------

fn run_pathological(args: &PathologicalArgs) -> Result<ReportDoc, CliError> {
    const RF: f64 = crate::golden::PATHOLOGICAL_RF;
    let fixture = table8();
    let mut doc = ReportDoc::new("pathological price pair");
    doc.push(
        "series",
        format!("{} months per leg", fixture.months.len()),
        "Up drifts calmly; Down collapses early and recovers violently",
    );

    let up_net = ReturnSeries::new(Convention::Net, returns_from_values(&fixture.up, Convention::Net)?)?;
    let down_net =
        ReturnSeries::new(Convention::Net, returns_from_values(&fixture.down, Convention::Net)?)?;
    let up_log = up_net.convert(Convention::Log)?;
    let down_log = down_net.convert(Convention::Log)?;

    for (name, series) in [
        ("Up (net)", &up_net),
        ("Down (net)", &down_net),
        ("Up (log)", &up_log),
        ("Down (log)", &down_log),
    ] {
        let s = sharpe(series, RF)?;
        doc.push(
            name,
            format!(
                "mean {} | stdev {} | Sharpe {}",
                fmt_f(s.mean, 3),
                fmt_f(s.stdev, 3),
                fmt_f(s.sharpe, 3)
            ),
            format!("monthly, rf {}", fmt_f(RF, 4)),
        );
    }

    for (name, dep, fac) in [
        ("net", &down_net, &up_net),
        ("log", &down_log, &up_log),
    ] {
        let dep_x: Vec<f64> = dep.values().iter().map(|r| r - RF).collect();
        let fac_x: Vec<f64> = fac.values().iter().map(|r| r - RF).collect();
        let fit = ols(&dep_x, &[FactorSeries::new("up excess", fac_x)], true)?;
        doc.push(
            format!("Down on Up regression ({name})"),
            format!(
                "alpha {} (t {}{}) | beta {} (t {}{})",
                fmt_f(fit.alpha, 4),
                fmt_f(fit.t_alpha, 2),
                significance_marker(fit.t_alpha, false),
                fmt_f(fit.betas[0], 3),
                fmt_f(fit.t_betas[0], 2),
                significance_marker(fit.t_betas[0], false)
            ),
            "excess on excess with intercept",
        );
    }

    if let Some(path) = &args.plot {
        let svg = line_plot(
            "paired monthly price series",
            &[
                SeriesSpec { name: "Up", values: &fixture.up },
                SeriesSpec { name: "Down", values: &fixture.down },
            ],
            800,
            480,
        );
        fs::write(path, svg).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        doc.push("plot", path.display().to_string(), "SVG with one polyline per series");
    }
    Ok(doc)
}

// ---------------------------------------------------------------------------
// prop2
// ---------------------------------------------------------------------------

fn run_prop2(args: &Prop2Args) -> Result<ReportDoc, CliError> {
    let (ybar, r, n, base) = (args.ybar, args.r, args.n, args.base);
    let mut doc = ReportDoc::new("separate versus excess compounding gap");
    doc.push(
        "inputs",
        format!("ybar {} | r {} | n {n} | base {}", fmt_f(ybar, 6), fmt_f(r, 6), fmt_f(base, 2)),
        "per-period log returns",
    );
    let market = compound_on_mean(base, ybar, n, Convention::Log)?;
    let bill = compound_on_mean(base, r, n, Convention::Log)?;
    doc.push("risky leg terminal", fmt_f(market, 2), "base * exp(n*ybar)");
    doc.push("risk-free leg terminal", fmt_f(bill, 2), "base * exp(n*r)");

    let log_gap = prop2_gap(ybar, r, n, base)?;
    doc.push("separate-legs gap", fmt_f(log_gap.mmtb, 2), "risky minus risk-free terminal");
    doc.push(
        "excess-compounded gap (log)",
        fmt_f(log_gap.xmfv, 2),
        "base grown at ybar - r, net of base",
    );
    doc.push(
        "understatement (log)",
        format!("{}%", fmt_f(100.0 * log_gap.underestimate, 2)),
        "share of the separate-legs gap missed by excess compounding",
    );

    let net_gap = prop2_gap_net(ybar, r, n, base)?;
    doc.push(
        "net excess per period",
        format!("{}%", fmt_f(100.0 * (ybar.exp() - r.exp()), 3)),
        "exp(ybar) - exp(r)",
    );
    doc.push(
        "excess-compounded terminal (net)",
        fmt_f(base + net_gap.xmfv, 2),
        "base compounded at the net excess",
    );
    doc.push(
        "understatement (net)",
        format!("{}%", fmt_f(100.0 * net_gap.underestimate, 2)),
        "",
    );
    Ok(doc)
}

// ---------------------------------------------------------------------------
// market-share
// ---------------------------------------------------------------------------

fn run_market_share(args: &MarketShareArgs) -> Result<ReportDoc, CliError> {
    match &args.snapshot {
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            let snapshot = MarketSnapshot::from_csv_str(&args.label, &text, args.unit)
                .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
            snapshot_doc(&snapshot)
        }
        None => embedded_share_doc(),
    }
}

fn snapshot_doc(snapshot: &MarketSnapshot) -> Result<ReportDoc, CliError> {
    let mut doc = ReportDoc::new(format!("market snapshot: {}", snapshot.label()));
    doc.push("market cap", fmt_f(snapshot.market_cap(), 1), "input units");
    let names: Vec<String> = snapshot.portfolio_names().map(str::to_string).collect();
    for name in names {
        let share = share_of_market(snapshot, &name)?;
        doc.push(
            format!("{name} share"),
            format!("{}%", fmt_f(100.0 * share, 2)),
            "",
        );
    }
    let capital = common_capital(snapshot)?;
    doc.push(
        "common factor capital",
        fmt_f(capital, 1),
        "half the smallest corner portfolio",
    );
    let own = factor_capital_share(snapshot, snapshot, capital)?;
    doc.push(
        "size-factor share",
        format!("{}%", fmt_f(100.0 * own.smb_share, 2)),
        "six constituent portfolios",
    );
    doc.push(
        "value-factor share",
        format!("{}%", fmt_f(100.0 * own.hml_share, 2)),
        "four constituent portfolios",
    );
    Ok(doc)
}

fn embedded_share_doc() -> Result<ReportDoc, CliError> {
    let early = snapshot_1926();
    let crash = snapshot_1932();
    let late = snapshot_2020();
    let mut doc = ReportDoc::new("factor capital shares (embedded snapshots)");
    for (snapshot, names) in [
        (early, ["Small", "High", "S/L"]),
        (late, ["Small", "High", "S/H"]),
    ] {
        for name in names {
            let share = share_of_market(snapshot, name)?;
            doc.push(
                format!("{} {name} share", snapshot.label()),
                format!("{}%", fmt_f(100.0 * share, 2)),
                "",
            );
        }
    }
    let capital = common_capital(early)?;
    doc.push(
        "1926 common factor capital",
        format!("{} million", fmt_f(capital / 1000.0, 1)),
        "half the smallest corner portfolio",
    );
    doc.push(
        "1932 common factor capital",
        format!("{} million", fmt_f(common_capital(crash)? / 1000.0, 1)),
        "the same construction three years after the crash",
    );
    let own = factor_capital_share(early, early, capital)?;
    doc.push(
        "1926 size-factor share",
        format!("{}%", fmt_f(100.0 * own.smb_share, 2)),
        "6x common capital over the 1926 market",
    );
    doc.push(
        "1926 value-factor share",
        format!("{}%", fmt_f(100.0 * own.hml_share, 2)),
        "4x common capital over the 1926 market",
    );
    let later = factor_capital_share(early, late, capital)?;
    doc.push(
        "1926 factor capital in the 2020 market",
        format!("{}%", fmt_f(100.0 * later.combined_share, 4)),
        "combined 10x common capital over the 2020 market",
    );
    doc.push(
        "1926/2020 market-cap ratio",
        format!("{}%", fmt_f(100.0 * later.market_cap_ratio, 3)),
        "",
    );
    let survival = crash.cap("S/L")? / early.cap("S/L")?;
    doc.push(
        "1932/1926 smallest-corner ratio",
        format!("{}%", fmt_f(100.0 * survival, 1)),
        "the corner portfolio funding the factors shrank this much",
    );
    let ew = early.min_size("Market")? * early.firm_count("Market")? as f64 / early.market_cap();
    doc.push(
        "smallest-firm equal-weight share",
        format!("{}%", fmt_f(100.0 * ew, 3)),
        "1926 smallest listed size held once per name",
    );
    Ok(doc)
}

// ---------------------------------------------------------------------------
// golden
// ---------------------------------------------------------------------------

fn run_golden(args: &GoldenArgs) -> Result<RunResult, CliError> {
    let prices = match &args.prices {
        Some(path) => Some(ingest::load_prices(path)?),
        None => None,
    };
    let summary = run_all_goldens(&GoldenOptions {
        mc_seed: args.seed,
        mc_paths: args.paths,
        prices,
        rf_annual: args.rf,
    });
    Ok(RunResult {
        golden_ok: summary.passed(),
        doc: summary.to_doc(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    #[test]
    fn config_file_parses_every_key() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(
            f,
            "# experiment\ndrift = 0.16\nvol=0.164\npaths = 500\nseed = 11\nrf = 0.02\n\
             horizon = 24\nsteps-per-year = 12\ndecade = low\ndependent = raw\ntwo_sided = true"
        )
        .unwrap();
        let cfg = parse_mc_config(f.path()).unwrap();
        assert_eq!(cfg.drift, Some(0.16));
        assert_eq!(cfg.vol, Some(0.164));
        assert_eq!(cfg.paths, Some(500));
        assert_eq!(cfg.seed, Some(11));
        assert_eq!(cfg.rf, Some(0.02));
        assert_eq!(cfg.horizon, Some(24));
        assert_eq!(cfg.steps_per_year, Some(12));
        assert_eq!(cfg.decade, Some(Decade::Low));
        assert_eq!(cfg.dependent, Some(Dependent::Raw));
        assert_eq!(cfg.two_sided, Some(true));
    }

    #[test]
    fn config_rejects_unknown_keys_with_line_numbers() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "drift = 0.08\nwhatever = 1").unwrap();
        let err = parse_mc_config(f.path()).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 2"), "{msg}");
        assert!(msg.contains("whatever"), "{msg}");
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn flags_override_the_config_file() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "drift = 0.16\npaths = 500\ndecade = low").unwrap();
        let args = McAlphaArgs {
            config: Some(f.path().to_path_buf()),
            drift: Some(0.08),
            vol: None,
            paths: None,
            seed: None,
            rf: None,
            horizon: None,
            steps_per_year: None,
            market: None,
            decade: None,
            dependent: None,
            two_sided: false,
        };
        let resolved = resolve_mc(&args).unwrap();
        assert_eq!(resolved.params.drift_annual, 0.08); // flag wins
        assert_eq!(resolved.paths, 500); // config fills the gap
        assert_eq!(resolved.params.vol_annual, 0.164); // low-decade default vol
        assert_eq!(resolved.seed, DEFAULT_MASTER_SEED);
        assert!(resolved.config.dependent_excess);
    }

    #[test]
    fn market_file_requires_an_explicit_vol() {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        writeln!(f, "date,close\n2000-01-01,100.0\n2000-02-01,101.0").unwrap();
        let args = McAlphaArgs {
            config: None,
            drift: None,
            vol: None,
            paths: None,
            seed: None,
            rf: None,
            horizon: None,
            steps_per_year: None,
            market: Some(f.path().to_path_buf()),
            decade: None,
            dependent: None,
            two_sided: false,
        };
        let err = resolve_mc(&args).unwrap_err();
        assert!(err.to_string().contains("--vol"), "{err}");
    }

    #[test]
    fn bhls_demo_reports_the_published_percentages() {
        let doc = run_bhls_demo().unwrap();
        let text = doc.to_markdown();
        assert!(text.contains("50.0, -33.3; mean 8.3"), "{text}");
        assert!(text.contains("0, 70, 0"), "{text}");
        assert!(text.contains("0, 80, 45"), "{text}");
    }

    #[test]
    fn prop2_defaults_match_the_published_scalars() {
        let args = Prop2Args {
            ybar: 0.10,
            r: 0.03,
            n: 20,
            base: 100.0,
        };
        let doc = run_prop2(&args).unwrap();
        let text = doc.to_markdown();
        assert!(text.contains("738.91"), "{text}");
        assert!(text.contains("556.69"), "{text}");
        assert!(text.contains("45.12%"), "{text}");
        assert!(text.contains("42.06%"), "{text}");
    }

    #[test]
    fn embedded_share_report_includes_both_eras() {
        let doc = embedded_share_doc().unwrap();
        let text = doc.to_markdown();
        assert!(text.contains("1926 Small share"), "{text}");
        assert!(text.contains("172.3 million"), "{text}");
        assert!(text.contains("0.0047%"), "{text}");
    }

    #[test]
    fn replay_reports_both_panels_by_default() {
        let args = ReplayArgs {
            panel: PanelChoice::Both,
        };
        let doc = run_replay(&args).unwrap();
        let text = doc.to_markdown();
        assert!(text.contains("A year"), "{text}");
        assert!(text.contains("B year"), "{text}");
        assert!(text.contains("140.30"), "{text}");
        assert!(text.contains("-18.66"), "{text}");
    }

    #[test]
    fn clap_surface_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
