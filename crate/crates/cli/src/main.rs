//! `polariton`: spectra, sweeps, transition tables, oracle certification and
//! two-photon-resonance reports for N multilevel emitters coupled to a
//! cavity mode.
//!
//! Exit codes: 0 success, 1 certification failure, 2 usage error.

mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use output::{fmt_f64, json_envelope, Format, TableRow};
use polariton::analysis::{find_crossing, run_sweep, CouplingMode, SweepSpec, SweepVariable};
use polariton::manifolds::{solve_manifold, Irrep, Manifold, StateLabel};
use polariton::oracle::{certify_grid, CERTIFY_CAP};
use polariton::params::{build_morse_model, EmitterModel, SystemParams};
use polariton::perturb::pt_frequencies;
use polariton::transitions::{numeric_amplitudes, TransitionOperator};

#[derive(Parser)]
#[command(
    name = "polariton",
    version,
    about = "Eigenspectra and transition amplitudes of N multilevel emitters \
             collectively coupled to one cavity mode"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Labeled eigenspectrum of one excitation manifold
    Spectrum(SpectrumArgs),
    /// Spectra over a parameter grid with adiabatic state tracking
    Sweep(SweepArgs),
    /// Certify reduced spectra against the brute-force oracle at small N
    Verify(VerifyArgs),
    /// Eigenfrequency and transition-amplitude tables (closed form vs numeric)
    Tables(TablesArgs),
    /// Locate the avoided crossings where two-photon absorption is enhanced
    Resonance(ResonanceArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum UnitsArg {
    /// Report frequencies in units of omega_10
    Omega10,
    /// Report frequencies as given
    Absolute,
}

#[derive(Args)]
struct ParamArgs {
    /// Number of emitters (scientific notation accepted, e.g. 1e6)
    #[arg(long, default_value = "4", value_parser = parse_count)]
    n: u64,
    /// Cavity frequency
    #[arg(long, default_value_t = 1.0)]
    omega0: f64,
    /// Emitter 0->1 frequency
    #[arg(long, default_value_t = 1.0)]
    omega10: f64,
    /// Per-emitter coupling g (conflicts with --collective-g)
    #[arg(long, conflicts_with = "collective_g")]
    g: Option<f64>,
    /// Collective coupling sqrt(N) g [default: 0.07]
    #[arg(long)]
    collective_g: Option<f64>,
    /// Emitter model: tc, ho or anh (sweep accepts a comma list, e.g. tc,ho)
    #[arg(long, default_value = "ho")]
    model: String,
    /// Mechanical anharmonicity chi (anh model)
    #[arg(long, default_value_t = 0.0)]
    chi: f64,
    /// Electrical anharmonicity gamma (anh model; conflicts with --morse)
    #[arg(long, conflicts_with = "morse")]
    gamma: Option<f64>,
    /// Tie gamma to chi through the Morse-oscillator relation
    #[arg(long)]
    morse: bool,
}

impl ParamArgs {
    fn model_token(&self, token: &str) -> Result<EmitterModel, String> {
        match token {
            "tc" => Ok(EmitterModel::TavisCummings),
            "ho" => Ok(EmitterModel::Harmonic),
            "anh" => {
                if self.morse {
                    build_morse_model(self.chi).map_err(|e| e.to_string())
                } else if let Some(gamma) = self.gamma {
                    Ok(EmitterModel::Anharmonic {
                        chi: self.chi,
                        gamma,
                    })
                } else {
                    Err("--model anh requires --gamma or --morse".into())
                }
            }
            other => Err(format!("unknown model: {other} (expected tc, ho or anh)")),
        }
    }

    fn model(&self) -> Result<EmitterModel, String> {
        if self.model.contains(',') {
            return Err("a model list is only valid for the sweep subcommand".into());
        }
        self.model_token(&self.model)
    }

    fn model_list(&self) -> Result<Vec<(String, EmitterModel)>, String> {
        self.model
            .split(',')
            .map(|tok| Ok((tok.to_string(), self.model_token(tok)?)))
            .collect()
    }

    fn params_for(&self, model: EmitterModel) -> Result<SystemParams, String> {
        let built = match (self.g, self.collective_g) {
            (Some(g), None) => SystemParams::new(self.n, self.omega0, self.omega10, g, model),
            (None, cg) => SystemParams::with_collective_g(
                self.n,
                self.omega0,
                self.omega10,
                cg.unwrap_or(0.07),
                model,
            ),
            (Some(_), Some(_)) => unreachable!("clap enforces the conflict"),
        };
        built.map_err(|e| e.to_string())
    }

    fn params(&self) -> Result<SystemParams, String> {
        self.params_for(self.model()?)
    }
}

fn parse_count(s: &str) -> Result<u64, String> {
    let v: f64 = s.parse().map_err(|_| format!("not a number: {s}"))?;
    if !(v >= 1.0) || v > 1e12 || v.fract().abs() > 1e-6 * v.max(1.0) {
        return Err(format!(
            "emitter count must be an integer in [1, 1e12], got {s}"
        ));
    }
    Ok(v.round() as u64)
}

#[derive(Args)]
struct IoArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Output path (standard output when omitted)
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Frequency units in the output
    #[arg(long, value_enum, default_value_t = UnitsArg::Omega10)]
    units: UnitsArg,
}

impl IoArgs {
    fn format(&self) -> Format {
        match self.format {
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }

    fn unit(&self, p: &SystemParams) -> f64 {
        match self.units {
            UnitsArg::Omega10 => p.omega_10(),
            UnitsArg::Absolute => 1.0,
        }
    }

    /// Writes the fully rendered output in one shot (no partial output on
    /// error paths).
    fn emit(&self, body: &[u8]) -> std::io::Result<()> {
        match &self.out {
            Some(path) => std::fs::write(path, body),
            None => std::io::stdout().write_all(body),
        }
    }
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct SpectrumArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Excitation manifold
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
    manifold: u8,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepVarArg {
    N,
    Detuning,
    Chi,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct SweepArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Swept variable
    #[arg(long, value_enum)]
    var: SweepVarArg,
    #[arg(long)]
    from: f64,
    #[arg(long)]
    to: f64,
    #[arg(long)]
    points: usize,
    /// Geometric grid instead of linear
    #[arg(long)]
    log: bool,
    /// Keep the per-emitter g fixed over N sweeps instead of sqrt(N) g
    #[arg(long)]
    fix_per_emitter_g: bool,
    /// Excitation manifold
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=2))]
    manifold: u8,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct VerifyArgs {
    /// Largest emitter count to certify
    #[arg(long, default_value_t = CERTIFY_CAP, value_parser = clap::value_parser!(u64).range(1..=CERTIFY_CAP))]
    n_max: u64,
    /// Random parameter draws per (N, model)
    #[arg(long, default_value_t = 10)]
    draws: u32,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Emit the JSON report instead of text
    #[arg(long)]
    json: bool,
    /// Output path (standard output when omitted)
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct TablesArgs {
    #[command(flatten)]
    params: ParamArgs,
    /// Which table: 1 eigenfrequencies, 2/3 dipole (A/B irrep), 4/5 photon (A/B)
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
    which: u8,
    #[command(flatten)]
    io: IoArgs,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct ResonanceArgs {
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, default_value_t = 0.005)]
    chi_from: f64,
    #[arg(long, default_value_t = 0.35)]
    chi_to: f64,
    #[arg(long, default_value_t = 120)]
    points: usize,
    /// Output path (standard output when omitted)
    #[arg(long)]
    out: Option<std::path::PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = match cli.command {
        Command::Spectrum(a) => cmd_spectrum(a),
        Command::Sweep(a) => cmd_sweep(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Tables(a) => cmd_tables(a),
        Command::Resonance(a) => cmd_resonance(a),
    };
    match run {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn cmd_spectrum(a: SpectrumArgs) -> Result<ExitCode, String> {
    let p = a.params.params()?;
    let manifold = Manifold::from_u8(a.manifold).map_err(|e| e.to_string())?;
    let spectrum = solve_manifold(&p, manifold).map_err(|e| e.to_string())?;
    let mut buf = Vec::new();
    output::write_spectrum(&mut buf, a.io.format(), &p, &spectrum, a.io.unit(&p))
        .map_err(|e| e.to_string())?;
    a.io.emit(&buf).map_err(|e| e.to_string())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep(a: SweepArgs) -> Result<ExitCode, String> {
    let variable = match a.var {
        SweepVarArg::N => SweepVariable::Emitters,
        SweepVarArg::Detuning => SweepVariable::Detuning,
        SweepVarArg::Chi => SweepVariable::Anharmonicity,
    };
    let models = a.params.model_list()?;
    // anharmonicity sweeps follow the Morse family regardless of the named
    // model, so a model list (or tc) has nothing to compare
    if matches!(variable, SweepVariable::Anharmonicity) {
        if models.iter().any(|(_, m)| m.is_tc()) {
            return Err("the tc model has no anharmonicity to sweep (use ho or anh)".into());
        }
        if models.len() > 1 {
            return Err("anharmonicity sweeps take a single model".into());
        }
    }
    let coupling_mode = if a.fix_per_emitter_g {
        CouplingMode::FixedPerEmitter
    } else {
        CouplingMode::FixedCollective
    };

    let mut results = Vec::new();
    let mut unit = 1.0;
    for (name, model) in models {
        let base = a.params.params_for(model)?;
        unit = a.io.unit(&base);
        let spec = SweepSpec {
            variable,
            from: a.from,
            to: a.to,
            points: a.points,
            log: a.log,
            base,
            coupling_mode,
            manifold: a.manifold,
        };
        let result = run_sweep(&spec).map_err(|e| e.to_string())?;
        for w in &result.warnings {
            eprintln!(
                "warning: tracking ambiguity at point {} ({} block): {}",
                w.point,
                w.irrep.name(),
                w.detail
            );
        }
        results.push((name, result));
    }
    let mut buf = Vec::new();
    output::write_sweep(&mut buf, a.io.format(), &results, unit).map_err(|e| e.to_string())?;
    a.io.emit(&buf).map_err(|e| e.to_string())?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(a: VerifyArgs) -> Result<ExitCode, String> {
    let report = certify_grid(a.n_max, a.draws, a.seed).map_err(|e| e.to_string())?;
    let mut buf = Vec::new();
    if a.json {
        let doc = json!({
            "version": env!("CARGO_PKG_VERSION"),
            "seed": report.seed,
            "n_max": report.n_max,
            "draws": report.draws,
            "pass": report.pass,
            "rows": report.rows,
        });
        writeln!(
            buf,
            "{}",
            serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?
        )
        .map_err(|e| e.to_string())?;
    } else {
        for row in &report.rows {
            writeln!(
                buf,
                "N={} model={:<12} max_deviation={} {}",
                row.n,
                row.model,
                fmt_f64(row.max_deviation),
                if row.pass { "PASS" } else { "FAIL" }
            )
            .map_err(|e| e.to_string())?;
        }
        writeln!(
            buf,
            "certification {} (n_max={}, draws={}, seed={})",
            if report.pass { "PASSED" } else { "FAILED" },
            report.n_max,
            report.draws,
            report.seed
        )
        .map_err(|e| e.to_string())?;
    }
    match &a.out {
        Some(path) => std::fs::write(path, &buf).map_err(|e| e.to_string())?,
        None => std::io::stdout()
            .write_all(&buf)
            .map_err(|e| e.to_string())?,
    }
    if report.pass {
        Ok(ExitCode::SUCCESS)
    } else {
        for row in report.rows.iter().filter(|r| !r.pass) {
            eprintln!(
                "verification failed at N={} model={}: {}",
                row.n,
                row.model,
                row.failure.as_deref().unwrap_or("unknown")
            );
        }
        Ok(ExitCode::from(1))
    }
}

fn model_name(m: &EmitterModel) -> String {
    match m {
        EmitterModel::TavisCummings => "tc".into(),
        EmitterModel::Harmonic => "ho".into(),
        EmitterModel::Anharmonic { .. } => "anh".into(),
    }
}

fn cmd_tables(a: TablesArgs) -> Result<ExitCode, String> {
    let p = a.params.params()?;
    let mut rows: Vec<TableRow> = Vec::new();
    match a.which {
        1 => {
            // harmonic column: closed frequencies vs the numeric harmonic
            // spectrum; correction column: tabulated shift vs exact - harmonic
            let p_ho = p.with_model(EmitterModel::Harmonic);
            let ho = solve_manifold(&p_ho, Manifold::Two).map_err(|e| e.to_string())?;
            let corrections = match p.model() {
                EmitterModel::Anharmonic { .. } => {
                    Some((pt_frequencies(&p).map_err(|e| e.to_string())?, {
                        solve_manifold(&p, Manifold::Two).map_err(|e| e.to_string())?
                    }))
                }
                _ => None,
            };
            let order: Vec<StateLabel> = vec![
                StateLabel::TwoPlus,
                StateLabel::OnePlusOneMinus,
                StateLabel::TwoDarkA,
                StateLabel::TwoMinus,
                StateLabel::OnePlusOneB,
                StateLabel::TwoDarkB,
                StateLabel::OneMinusOneB,
                StateLabel::PairC,
            ];
            for label in order {
                if let Some((pt, anh)) = &corrections {
                    if let Some(row) = pt.iter().find(|r| r.label == label) {
                        let numeric = anh.find(label).map(|e| e.frequency - row.order0_frequency);
                        rows.push(TableRow {
                            table_id: 1,
                            row_label: label.name().into(),
                            model: "anh".into(),
                            closed_form: Some(row.shift),
                            numeric,
                            discrepancy: numeric.map(|nv| (row.shift - nv).abs()),
                        });
                    }
                }
                let closed = harmonic_frequency(&p_ho, label);
                let numeric = ho.find(label).map(|e| e.frequency);
                if closed.is_some() || numeric.is_some() {
                    rows.push(TableRow {
                        table_id: 1,
                        row_label: label.name().into(),
                        model: "ho".into(),
                        closed_form: closed,
                        numeric,
                        discrepancy: closed.zip(numeric).map(|(c, nv)| (c - nv).abs()),
                    });
                }
            }
        }
        which => {
            let (op, irrep) = match which {
                2 => (TransitionOperator::Dipole, Irrep::A),
                3 => (TransitionOperator::Dipole, Irrep::B),
                4 => (TransitionOperator::PhotonCreation, Irrep::A),
                _ => (TransitionOperator::PhotonCreation, Irrep::B),
            };
            let reports = numeric_amplitudes(&p, op).map_err(|e| e.to_string())?;
            let model = model_name(&p.model());
            for r in reports {
                let row_irrep = match r.ket {
                    StateLabel::OneDark => Irrep::B,
                    _ => Irrep::A,
                };
                if row_irrep == irrep {
                    rows.push(TableRow::from_report(which, &r, &model));
                }
            }
        }
    }
    let mut buf = Vec::new();
    output::write_tables(&mut buf, a.io.format(), &p, &rows).map_err(|e| e.to_string())?;
    a.io.emit(&buf).map_err(|e| e.to_string())?;
    Ok(ExitCode::SUCCESS)
}

fn harmonic_frequency(p: &SystemParams, label: StateLabel) -> Option<f64> {
    let d = p.derive();
    let (wp, wm) = d.omega_pm(p);
    let w10 = p.omega_10();
    let n = p.n_emitters();
    match label {
        StateLabel::TwoPlus => Some(2.0 * wp),
        StateLabel::TwoMinus => Some(2.0 * wm),
        StateLabel::OnePlusOneMinus => Some(wp + wm),
        StateLabel::TwoDarkA if n >= 2 => Some(2.0 * w10),
        StateLabel::OnePlusOneB if n >= 2 => Some(w10 + wp),
        StateLabel::OneMinusOneB if n >= 2 => Some(w10 + wm),
        StateLabel::TwoDarkB if n >= 3 => Some(2.0 * w10),
        StateLabel::PairC if n >= 4 => Some(2.0 * w10),
        _ => None,
    }
}

fn cmd_resonance(a: ResonanceArgs) -> Result<ExitCode, String> {
    // resonance scans sweep the Morse anharmonicity; the base model only
    // seeds the sweep spec
    if a.params.model == "tc" {
        return Err("resonance scans need a multilevel model".into());
    }
    let model = EmitterModel::Harmonic;
    let base = a.params.params_for(model)?;
    let spec = SweepSpec {
        variable: SweepVariable::Anharmonicity,
        from: a.chi_from,
        to: a.chi_to,
        points: a.points,
        log: false,
        base,
        coupling_mode: CouplingMode::FixedCollective,
        manifold: 2,
    };
    let mut reports = Vec::new();
    for pair in [
        (StateLabel::TwoDarkA, StateLabel::OnePlusOneMinus),
        (StateLabel::TwoDarkA, StateLabel::TwoMinus),
    ] {
        let rep = find_crossing(&spec, pair).map_err(|e| e.to_string())?;
        reports.push(json!({
            "found": rep.found,
            "branch_a": rep.branches.0.name(),
            "branch_b": rep.branches.1.name(),
            "kind": rep.kind,
            "location": rep.location,
            "min_gap": rep.min_gap,
        }));
    }
    let doc = json_envelope(&base, None, reports);
    let body = format!(
        "{}\n",
        serde_json::to_string_pretty(&doc).map_err(|e| e.to_string())?
    );
    match &a.out {
        Some(path) => std::fs::write(path, body).map_err(|e| e.to_string())?,
        None => print!("{body}"),
    }
    Ok(ExitCode::SUCCESS)
}
