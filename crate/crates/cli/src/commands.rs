//! The four subcommands.

use serde::Serialize;
use telecanon_core::bases::{build_basis_form1, build_basis_form2, MeasurementBasis};
use telecanon_core::channels::{
    build_named, CanonicalParams1, CanonicalParams2, ChannelSpec, NamedChannel,
};
use telecanon_core::diagnostics::{build_report, ChannelReport, FidelitySection, ReportInputs};
use telecanon_core::extractor::{classify, extract_operators};
use telecanon_core::protocol::{FidelityStats, Teleporter};
use telecanon_core::qmath::{Label, PureState};
use telecanon_core::sweep::{run_sweep, summarize, Family, SweepConfig, SweepPoint, SweepSummary};
use telecanon_core::Execution;

use crate::config::{CommandKind, FormArg, InputChoice, OutputMode, RunConfig};
use crate::{text, CliError, Outcome, EXIT_NOT_PERFECT, EXIT_OK};

pub struct Setup {
    pub spec: ChannelSpec,
    pub channel: PureState,
    pub basis: MeasurementBasis,
}

/// Channel and the measurement basis paired with its form.
pub fn setup(cfg: &RunConfig) -> Result<Setup, CliError> {
    let p1 = || CanonicalParams1::new(cfg.a, cfg.b, cfg.delta, cfg.lambda, cfg.gamma);
    let p2 = || CanonicalParams2::new(cfg.a, cfg.b, cfg.delta, cfg.lambda, cfg.gamma);
    let named = match cfg.form {
        FormArg::Ghz => Some(NamedChannel::Ghz { gamma: cfg.gamma }),
        FormArg::W1 => Some(NamedChannel::W1),
        FormArg::Bell => Some(NamedChannel::BellEmbedded),
        _ => None,
    };
    if let Some(n) = named {
        let basis = match n.family() {
            ChannelSpec::Form1(p) => build_basis_form1(&p)?,
            ChannelSpec::Form2(p) => build_basis_form2(&p)?,
            _ => unreachable!("named channels belong to a canonical family"),
        };
        return Ok(Setup {
            spec: ChannelSpec::Named(n),
            channel: build_named(&n),
            basis,
        });
    }
    let (spec, basis) = match cfg.form {
        FormArg::Form1 => {
            let p = p1();
            (ChannelSpec::Form1(p), build_basis_form1(&p)?)
        }
        FormArg::Form2 => {
            let p = p2();
            (ChannelSpec::Form2(p), build_basis_form2(&p)?)
        }
        FormArg::General => {
            let amps = cfg
                .amps
                .ok_or_else(|| CliError::Usage("--form general needs --amps".into()))?;
            (
                ChannelSpec::general(amps),
                MeasurementBasis::computational(),
            )
        }
        FormArg::Ghz | FormArg::W1 | FormArg::Bell => unreachable!(),
    };
    let channel = spec.realize()?;
    Ok(Setup {
        spec,
        channel,
        basis,
    })
}

pub fn execute(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match cfg.command {
        CommandKind::Verify => report_command(cfg, false),
        CommandKind::Teleport | CommandKind::Demo => report_command(cfg, true),
        CommandKind::Sweep => sweep_command(cfg),
    }
}

fn input_state(
    alpha: num_complex::Complex64,
    beta: num_complex::Complex64,
) -> Result<PureState, CliError> {
    Ok(PureState::qubit(Label::A, alpha, beta)?)
}

fn report_command(cfg: &RunConfig, teleport: bool) -> Result<Outcome, CliError> {
    if teleport && cfg.shots == 0 {
        return Err(CliError::Usage("--shots must be at least 1".into()));
    }
    let input = match cfg.input {
        InputChoice::Explicit(alpha, beta) if teleport => Some(input_state(alpha, beta)?),
        _ => None,
    };
    let Setup {
        spec,
        channel,
        basis,
    } = setup(cfg)?;
    let extraction = extract_operators(&channel, &basis)?;
    let verdict = classify(&extraction, cfg.tol);

    let mut stderr = String::new();
    let fidelity = if teleport && verdict.perfect {
        let tp = Teleporter::new(&channel, &basis, verdict.clone())?;
        let exec = Execution::default();
        let traces = match &input {
            Some(state) => tp.run_shots(state, cfg.shots, cfg.seed, exec)?,
            None => tp.batch_sessions(cfg.shots, cfg.seed, exec)?,
        };
        Some(FidelitySection {
            stats: FidelityStats::from_traces(&traces)?,
            traces: cfg.traces.then_some(traces),
        })
    } else {
        if teleport {
            stderr.push_str("error: channel is not perfect; teleportation skipped\n");
        }
        None
    };

    let report = build_report(ReportInputs {
        spec: &spec,
        channel: &channel,
        basis: &basis,
        extraction: &extraction,
        verdict: &verdict,
        fidelity,
        tol: cfg.tol,
        dump_basis: cfg.dump_basis,
    })?;
    let stdout = render_report(&report, cfg.output)?;
    Ok(Outcome {
        code: if verdict.perfect {
            EXIT_OK
        } else {
            EXIT_NOT_PERFECT
        },
        stdout,
        stderr,
    })
}

fn render_report(report: &ChannelReport, mode: OutputMode) -> Result<String, CliError> {
    let value = serde_json::to_value(report).map_err(|e| CliError::Serialize(e.to_string()))?;
    Ok(match mode {
        OutputMode::Json => json_line(&value)?,
        _ => text::render_report(&value),
    })
}

fn json_line<T: Serialize>(v: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| CliError::Serialize(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

#[derive(Debug, Serialize)]
pub struct SweepReport {
    pub family: Family,
    pub grid: usize,
    pub random_phases: bool,
    pub seed: u64,
    pub tol: f64,
    pub summary: SweepSummary,
    pub points: Vec<SweepPoint>,
}

fn sweep_command(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let family = match cfg.form {
        FormArg::Form1 => Family::Form1,
        FormArg::Form2 => Family::Form2,
        other => {
            return Err(CliError::Usage(format!(
                "sweep needs --form 1 or 2, got {other}"
            )))
        }
    };
    let sweep_cfg = SweepConfig {
        family,
        grid: cfg.grid,
        random_phases: cfg.random_phases,
        seed: cfg.seed,
        tol: cfg.tol,
    };
    let points = run_sweep(&sweep_cfg, Execution::default())?;
    let summary = summarize(&points);
    let code = if summary.all_perfect() {
        EXIT_OK
    } else {
        EXIT_NOT_PERFECT
    };
    let report = SweepReport {
        family,
        grid: cfg.grid,
        random_phases: cfg.random_phases,
        seed: cfg.seed,
        tol: cfg.tol,
        summary,
        points,
    };
    let stdout = match cfg.output {
        OutputMode::Json => json_line(&report)?,
        OutputMode::Csv => sweep_csv(&report.points)?,
        OutputMode::Text => {
            let value =
                serde_json::to_value(&report).map_err(|e| CliError::Serialize(e.to_string()))?;
            text::render_sweep(&value)
        }
    };
    Ok(Outcome {
        code,
        stdout,
        stderr: String::new(),
    })
}

fn sweep_csv(points: &[SweepPoint]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for p in points {
        w.serialize(p)
            .map_err(|e| CliError::Serialize(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Serialize(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Serialize(e.to_string()))
}
