//! Reconstruction reports as CSV: one row `x_1,…,x_n,f_true,f_rec` per
//! chart point and a closing `# {json}` line with the error norms.

use anyhow::{bail, Context, Result};
use geomeans::{Method, ReconstructionReport, SpaceSpec};
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

/// Footer of a report file. Timing is left out so that repeated runs
/// produce identical files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub space: SpaceSpec,
    pub method: Method,
    pub points: usize,
    #[serde(with = "nullable")]
    pub rel_l2: f64,
    #[serde(with = "nullable")]
    pub sup_error: f64,
    #[serde(with = "nullable")]
    pub calibration: f64,
}

/// Non-finite values are written as `null` and read back as NaN.
mod nullable {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_finite() {
            s.serialize_f64(*v)
        } else {
            s.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(d)?.unwrap_or(f64::NAN))
    }
}

impl Summary {
    pub fn of(r: &ReconstructionReport) -> Self {
        Self {
            space: r.space,
            method: r.method,
            points: r.points.len(),
            rel_l2: r.rel_l2,
            sup_error: r.sup_error,
            calibration: r.calibration,
        }
    }
}

/// A report read back from disk.
#[derive(Debug, Clone, PartialEq)]
pub struct ReportFile {
    pub points: Vec<Vec<f64>>,
    pub truth: Vec<f64>,
    pub reconstructed: Vec<f64>,
    pub summary: Summary,
}

pub fn header(n: usize) -> String {
    let mut cols: Vec<String> = (1..=n).map(|k| format!("x_{k}")).collect();
    cols.push("f_true".into());
    cols.push("f_rec".into());
    cols.join(",")
}

pub fn write_report<W: Write>(mut w: W, r: &ReconstructionReport) -> Result<()> {
    writeln!(w, "{}", header(r.space.n))?;
    for ((x, t), v) in r.points.iter().zip(&r.truth).zip(&r.reconstructed) {
        for c in x {
            write!(w, "{c},")?;
        }
        writeln!(w, "{t},{v}")?;
    }
    writeln!(w, "# {}", serde_json::to_string(&Summary::of(r))?)?;
    Ok(())
}

pub fn read_report<R: BufRead>(r: R) -> Result<ReportFile> {
    let mut lines = r.lines();
    let header_line = lines.next().context("empty report")??;
    let n = header_line.split(',').count().checked_sub(2).context("report header too short")?;
    if header_line.trim_end() != header(n) {
        bail!("unexpected report header {header_line:?}");
    }
    let (mut points, mut truth, mut reconstructed) = (Vec::new(), Vec::new(), Vec::new());
    let mut summary = None;
    for (k, line) in lines.enumerate() {
        let line = line?;
        let k = k + 2;
        if let Some(json) = line.strip_prefix("# ") {
            summary = Some(serde_json::from_str::<Summary>(json).with_context(|| format!("line {k}: summary"))?);
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let vals = line
            .split(',')
            .map(|s| s.trim().parse::<f64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .with_context(|| format!("line {k}"))?;
        if vals.len() != n + 2 {
            bail!("line {k}: {} fields, expected {}", vals.len(), n + 2);
        }
        points.push(vals[..n].to_vec());
        truth.push(vals[n]);
        reconstructed.push(vals[n + 1]);
    }
    let summary = summary.context("report has no summary line")?;
    if summary.space.n != n || summary.points != points.len() {
        bail!("summary does not match the rows");
    }
    Ok(ReportFile {
        points,
        truth,
        reconstructed,
        summary,
    })
}

pub fn save_report(path: &Path, r: &ReconstructionReport) -> Result<()> {
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(f);
    write_report(&mut w, r)?;
    w.flush()?;
    Ok(())
}

pub fn load_report(path: &Path) -> Result<ReportFile> {
    let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    read_report(BufReader::new(f)).with_context(|| format!("report {}", path.display()))
}
