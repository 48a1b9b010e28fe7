//! Cartesian parameter sweeps with a stable row order.

use super::output;
use super::{
    collect_params, load_config, merge_common, run_checker, OutputFormat, ParamValue,
    ScalarParams, SweepArgs, TheoremSelector, PARAM_NAMES,
};
use crate::expr::FunctionSpec;
use crate::fracint::QuadSettings;

use std::collections::BTreeMap;
use std::io::Write;

/// Expand the parameter grids and run the checker at every point, emitting
/// one row per point in lexicographic order over (a, b, m, alpha, alpha1, q).
/// A failing point becomes an `error` row; the sweep never aborts.
pub fn run_sweep(
    sel: TheoremSelector,
    f: &FunctionSpec,
    params: &BTreeMap<&'static str, ParamValue>,
    settings: &QuadSettings,
    format: OutputFormat,
    out: &mut impl Write,
) -> std::io::Result<()> {
    let axes: Vec<(&'static str, Vec<f64>)> = PARAM_NAMES
        .into_iter()
        .filter_map(|name| params.get(name).map(|v| (name, v.expand())))
        .collect();

    let emit_csv = matches!(format, OutputFormat::Csv | OutputFormat::Text);
    if emit_csv {
        writeln!(out, "{}", output::SWEEP_CSV_HEADER)?;
    }

    let mut index = vec![0usize; axes.len()];
    loop {
        let mut scalars = ScalarParams::nan();
        for (axis, &i) in axes.iter().zip(&index) {
            scalars.set(axis.0, axis.1[i]);
        }
        match run_checker(sel, f, &scalars, settings) {
            Ok(report) => {
                if emit_csv {
                    writeln!(out, "{}", output::csv_report_row(&report, &f.source_text, &scalars))?;
                } else {
                    let line = output::json_report_row(&report, &f.source_text, &scalars)
                        .map_err(std::io::Error::other)?;
                    writeln!(out, "{line}")?;
                }
            }
            Err(e) => {
                let msg = e.to_string();
                if emit_csv {
                    writeln!(
                        out,
                        "{}",
                        output::csv_error_row(sel, &f.source_text, &scalars, &msg)
                    )?;
                } else {
                    let line = output::json_error_row(sel, &f.source_text, &scalars, &msg)
                        .map_err(std::io::Error::other)?;
                    writeln!(out, "{line}")?;
                }
            }
        }

        // odometer increment, last axis fastest
        let mut pos = axes.len();
        loop {
            if pos == 0 {
                return Ok(());
            }
            pos -= 1;
            index[pos] += 1;
            if index[pos] < axes[pos].1.len() {
                break;
            }
            index[pos] = 0;
        }
    }
}

pub(super) fn run_sweep_cmd(args: SweepArgs, out: &mut impl Write) -> Result<u8, String> {
    let cfg = load_config(&args.common.config)?;
    let merged = merge_common(&args.common, &cfg, crate::convexity::DEFAULT_GRID_N)?;
    merged.settings.validate().map_err(|e| e.to_string())?;
    let theorem_name = super::pick_str(&args.theorem, &cfg, "theorem")
        .ok_or("sweep requires --theorem")?;
    let sel = TheoremSelector::parse(&theorem_name)?;
    let function_text =
        super::pick_str(&args.f, &cfg, "f").ok_or("sweep requires --f")?;
    let f = FunctionSpec::parse(&function_text).map_err(|e| e.to_string())?;
    let raw: [(&'static str, &Option<String>); 6] = [
        ("a", &args.a),
        ("b", &args.b),
        ("m", &args.m),
        ("alpha", &args.alpha),
        ("alpha1", &args.alpha1),
        ("q", &args.q),
    ];
    let params = collect_params(sel, &raw, &cfg)?;
    if !params
        .values()
        .any(|v| matches!(v, ParamValue::Range { .. }))
    {
        return Err("sweep requires at least one ranged parameter (start:stop:step)".into());
    }
    run_sweep(
        sel,
        &f,
        &params,
        &merged.settings,
        merged.format.unwrap_or(OutputFormat::Csv),
        out,
    )
    .map_err(|e| e.to_string())?;
    Ok(0)
}
