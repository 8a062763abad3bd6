//! CSV/JSON serialization of spectra, sweeps, tables and reports.
//!
//! CSV floats use 17 significant digits (round-trip safe); JSON uses the
//! shortest round-trip representation. Identical inputs produce byte-identical
//! output.

use std::io::Write;

use serde::Serialize;
use serde_json::json;

use polariton::analysis::SweepResult;
use polariton::manifolds::LabeledSpectrum;
use polariton::params::SystemParams;
use polariton::transitions::TransitionReport;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// 17 significant digits, round-trip safe.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt_f64(x: Option<f64>) -> String {
    match x {
        Some(v) => fmt_f64(v),
        None => "n/a".into(),
    }
}

/// Top-level JSON envelope: metadata plus a records array.
pub fn json_envelope<T: Serialize>(
    params: &SystemParams,
    seed: Option<u64>,
    records: T,
) -> serde_json::Value {
    json!({
        "version": env!("CARGO_PKG_VERSION"),
        "params": params,
        "seed": seed,
        "records": records,
    })
}

pub fn write_spectrum(
    out: &mut dyn Write,
    format: Format,
    params: &SystemParams,
    spectrum: &LabeledSpectrum,
    unit: f64,
) -> std::io::Result<()> {
    match format {
        Format::Json => {
            let records: Vec<_> = spectrum
                .entries
                .iter()
                .map(|e| {
                    json!({
                        "manifold": spectrum.manifold,
                        "irrep": e.irrep.name(),
                        "label": e.label.name(),
                        "frequency": e.frequency / unit,
                        "multiplicity": e.multiplicity,
                        "photon_content": e.photon_content,
                        "basis": e.basis.iter().map(|b| b.name()).collect::<Vec<_>>(),
                        "eigenvector": e.eigenvector,
                    })
                })
                .collect();
            let doc = json_envelope(params, None, records);
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "manifold",
                "model",
                "chi",
                "gamma",
                "irrep",
                "label",
                "frequency",
                "multiplicity",
                "photon_content",
                "c1",
                "c2",
                "c3",
                "c4",
            ])
            .map_err(csv_err)?;
            let model = params.model();
            let model_name = match model {
                polariton::params::EmitterModel::TavisCummings => "tc",
                polariton::params::EmitterModel::Harmonic => "ho",
                polariton::params::EmitterModel::Anharmonic { .. } => "anh",
            };
            for e in &spectrum.entries {
                let mut row = vec![
                    spectrum.manifold.to_string(),
                    model_name.into(),
                    fmt_f64(model.chi()),
                    fmt_f64(model.gamma()),
                    e.irrep.name().into(),
                    e.label.name().into(),
                    fmt_f64(e.frequency / unit),
                    e.multiplicity.to_string(),
                    fmt_f64(e.photon_content),
                ];
                for i in 0..4 {
                    row.push(
                        e.eigenvector
                            .get(i)
                            .map(|c| fmt_f64(*c))
                            .unwrap_or_default(),
                    );
                }
                w.write_record(&row).map_err(csv_err)?;
            }
            w.flush()
        }
    }
}

pub fn write_sweep(
    out: &mut dyn Write,
    format: Format,
    results: &[(String, SweepResult)],
    unit: f64,
) -> std::io::Result<()> {
    match format {
        Format::Json => {
            let mut records = Vec::new();
            for (model, result) in results {
                for pt in &result.points {
                    for e in &pt.spectrum.entries {
                        records.push(json!({
                            "sweep_value": pt.value,
                            "model": model,
                            "irrep": e.irrep.name(),
                            "label": e.label.name(),
                            "frequency": e.frequency / unit,
                            "multiplicity": e.multiplicity,
                            "photon_content": e.photon_content,
                        }));
                    }
                }
            }
            let doc = json_envelope(&results[0].1.spec.base, None, records);
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "sweep_value",
                "model",
                "irrep",
                "label",
                "frequency",
                "multiplicity",
                "photon_content",
            ])
            .map_err(csv_err)?;
            // row order: sweep value, then model, then block, then frequency
            let npoints = results[0].1.points.len();
            for pi in 0..npoints {
                for (model, result) in results {
                    let pt = &result.points[pi];
                    for e in &pt.spectrum.entries {
                        w.write_record(&[
                            fmt_f64(pt.value),
                            model.clone(),
                            e.irrep.name().into(),
                            e.label.name().into(),
                            fmt_f64(e.frequency / unit),
                            e.multiplicity.to_string(),
                            fmt_f64(e.photon_content),
                        ])
                        .map_err(csv_err)?;
                    }
                }
            }
            w.flush()
        }
    }
}

/// One row of the `tables` command.
pub struct TableRow {
    pub table_id: u8,
    pub row_label: String,
    pub model: String,
    pub closed_form: Option<f64>,
    pub numeric: Option<f64>,
    pub discrepancy: Option<f64>,
}

impl TableRow {
    pub fn from_report(table_id: u8, r: &TransitionReport, model: &str) -> Self {
        TableRow {
            table_id,
            row_label: format!("{}<-{}", r.bra.name(), r.ket.name()),
            model: model.into(),
            closed_form: r.closed_form,
            numeric: r.numeric,
            discrepancy: r.discrepancy,
        }
    }
}

pub fn write_tables(
    out: &mut dyn Write,
    format: Format,
    params: &SystemParams,
    rows: &[TableRow],
) -> std::io::Result<()> {
    match format {
        Format::Json => {
            let records: Vec<_> = rows
                .iter()
                .map(|r| {
                    json!({
                        "table_id": r.table_id,
                        "row_label": r.row_label,
                        "model": r.model,
                        "closed_form": r.closed_form,
                        "numeric": r.numeric,
                        "discrepancy": r.discrepancy,
                    })
                })
                .collect();
            let doc = json_envelope(params, None, records);
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record([
                "table_id",
                "row_label",
                "model",
                "closed_form",
                "numeric",
                "discrepancy",
            ])
            .map_err(csv_err)?;
            for r in rows {
                w.write_record(&[
                    r.table_id.to_string(),
                    r.row_label.clone(),
                    r.model.clone(),
                    opt_f64(r.closed_form),
                    opt_f64(r.numeric),
                    opt_f64(r.discrepancy),
                ])
                .map_err(csv_err)?;
            }
            w.flush()
        }
    }
}

fn csv_err(e: csv::Error) -> std::io::Error {
    std::io::Error::other(e)
}
