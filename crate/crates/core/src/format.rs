//! Number formatting and the CSV layouts written by the command-line tool.

use std::io::Write;

use crate::error::{Error, Result};
use crate::lab::{Method, TrialOutcome, TrialRecord};
use crate::sweep::CurvePoint;

pub const SWEEP_HEADER: &str = "n,d,a,delta,eps_v,eps_w,delta_star";
pub const TRIAL_HEADER: &str = "trial,seed,method,anchor_error,Delta,bound,test_error,holds";

/// Formats `x` with `digits` significant digits in the style of C's `%g`:
/// fixed notation for decimal exponents in `[-4, digits)`, scientific
/// otherwise, trailing zeros removed.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    let digits = digits.max(1);
    if !x.is_finite() {
        return x.to_string();
    }
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mantissa), sign, exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Six significant digits, the precision of every CSV column.
pub fn g6(x: f64) -> String {
    fmt_sig(x, 6)
}

pub fn write_sweep_csv(out: &mut dyn Write, points: &[CurvePoint]) -> std::io::Result<()> {
    writeln!(out, "{SWEEP_HEADER}")?;
    for p in points {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            p.n,
            g6(p.dimension),
            g6(p.a),
            g6(p.delta),
            g6(p.eps_v),
            g6(p.eps_w),
            g6(p.delta_star)
        )?;
    }
    Ok(())
}

pub fn write_trial_csv(out: &mut dyn Write, records: &[TrialRecord]) -> std::io::Result<()> {
    writeln!(out, "{TRIAL_HEADER}")?;
    for r in records {
        let o = &r.outcome;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.trial,
            r.seed,
            o.method,
            g6(o.anchor_error),
            g6(o.disagreement),
            g6(o.bound_value),
            g6(o.test_error),
            o.holds
        )?;
    }
    Ok(())
}

fn records(text: &str, header: &str) -> Result<Vec<csv::StringRecord>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(text.as_bytes());
    let found = reader
        .headers()
        .map_err(|e| Error::Parse(e.to_string()))?
        .iter()
        .collect::<Vec<_>>()
        .join(",");
    if found != header {
        return Err(Error::Parse(format!("expected header `{header}`, found `{found}`")));
    }
    reader
        .records()
        .map(|r| r.map_err(|e| Error::Parse(e.to_string())))
        .collect()
}

fn field<T: std::str::FromStr>(rec: &csv::StringRecord, i: usize, name: &str) -> Result<T> {
    let raw = rec
        .get(i)
        .ok_or_else(|| Error::Parse(format!("missing column `{name}`")))?;
    raw.parse()
        .map_err(|_| Error::Parse(format!("bad `{name}` value `{raw}`")))
}

/// Parses output of [`write_sweep_csv`].
pub fn parse_sweep_csv(text: &str) -> Result<Vec<CurvePoint>> {
    records(text, SWEEP_HEADER)?
        .iter()
        .map(|r| {
            Ok(CurvePoint {
                n: field(r, 0, "n")?,
                dimension: field(r, 1, "d")?,
                a: field(r, 2, "a")?,
                delta: field(r, 3, "delta")?,
                eps_v: field(r, 4, "eps_v")?,
                eps_w: field(r, 5, "eps_w")?,
                delta_star: field(r, 6, "delta_star")?,
            })
        })
        .collect()
}

/// Parses output of [`write_trial_csv`]. Rates come back at the six
/// significant digits they were written with.
pub fn parse_trial_csv(text: &str) -> Result<Vec<TrialRecord>> {
    records(text, TRIAL_HEADER)?
        .iter()
        .map(|r| {
            Ok(TrialRecord {
                trial: field(r, 0, "trial")?,
                seed: field(r, 1, "seed")?,
                outcome: TrialOutcome {
                    method: field::<Method>(r, 2, "method")?,
                    anchor_error: field(r, 3, "anchor_error")?,
                    disagreement: field(r, 4, "Delta")?,
                    bound_value: field(r, 5, "bound")?,
                    test_error: field(r, 6, "test_error")?,
                    holds: field(r, 7, "holds")?,
                },
            })
        })
        .collect()
}
