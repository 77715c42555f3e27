//! Plain (P2) grayscale images of a two-dimensional slice of a report.

use anyhow::{bail, Context, Result};
use std::io::Write;

pub const LEVELS: u32 = 255;

/// Parsed `--slice` argument `x<k>=<value>` (1-based axis).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Slice {
    pub axis: usize,
    pub value: f64,
}

impl std::str::FromStr for Slice {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> Result<Self> {
        let (axis, value) = s.split_once('=').context("slice must look like x3=0")?;
        let k: usize = axis
            .trim()
            .trim_start_matches(['x', 'X'])
            .trim_start_matches('_')
            .parse()
            .with_context(|| format!("slice axis {axis:?}"))?;
        if k == 0 {
            bail!("slice axes are numbered from 1");
        }
        Ok(Slice {
            axis: k - 1,
            value: value.trim().parse().with_context(|| format!("slice value {value:?}"))?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    pub width: usize,
    pub height: usize,
    /// Row-major, top row first.
    pub pixels: Vec<u32>,
    pub min: f64,
    pub max: f64,
}

fn distinct(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v.dedup_by(|a, b| (*a - *b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0));
    v
}

fn index(axis: &[f64], x: f64) -> usize {
    axis.iter()
        .enumerate()
        .min_by(|a, b| (a.1 - x).abs().total_cmp(&(b.1 - x).abs()))
        .map(|(i, _)| i)
        .unwrap_or(0)
}

/// Rasterizes scattered values on a regular grid. The two image axes are the
/// first two coordinates not fixed by `slice`; points off the slice are
/// dropped and empty pixels take the minimum level.
pub fn rasterize(points: &[Vec<f64>], values: &[f64], slice: Option<Slice>) -> Result<Image> {
    let n = points.first().map_or(0, Vec::len);
    if n < 2 {
        bail!("need at least two coordinates to render");
    }
    if let Some(s) = slice {
        if s.axis >= n {
            bail!("slice axis x{} beyond the {n} coordinates", s.axis + 1);
        }
    }
    let free: Vec<usize> = (0..n).filter(|&k| slice.is_none_or(|s| s.axis != k)).take(2).collect();
    if free.len() < 2 {
        bail!("slice leaves fewer than two axes");
    }
    let keep: Vec<(f64, f64, f64)> = points
        .iter()
        .zip(values)
        .filter(|(p, _)| slice.is_none_or(|s| (p[s.axis] - s.value).abs() <= 1e-9))
        .map(|(p, v)| (p[free[0]], p[free[1]], *v))
        .collect();
    if keep.is_empty() {
        bail!("no points on the requested slice");
    }
    let xs = distinct(keep.iter().map(|k| k.0).collect());
    let ys = distinct(keep.iter().map(|k| k.1).collect());
    let finite = keep.iter().map(|k| k.2).filter(|v| v.is_finite());
    let min = finite.clone().fold(f64::INFINITY, f64::min);
    let max = finite.fold(f64::NEG_INFINITY, f64::max);
    if !min.is_finite() {
        bail!("no finite values to render");
    }
    let level = |v: f64| -> u32 {
        if max > min && v.is_finite() {
            ((v - min) / (max - min) * LEVELS as f64).round() as u32
        } else {
            0
        }
    };
    let (width, height) = (xs.len(), ys.len());
    let mut pixels = vec![0; width * height];
    for (x, y, v) in keep {
        let col = index(&xs, x);
        let row = height - 1 - index(&ys, y);
        pixels[row * width + col] = level(v);
    }
    Ok(Image {
        width,
        height,
        pixels,
        min,
        max,
    })
}

pub fn write_pgm<W: Write>(mut w: W, img: &Image) -> Result<()> {
    writeln!(w, "P2")?;
    writeln!(w, "# min {} max {}", img.min, img.max)?;
    writeln!(w, "{} {}", img.width, img.height)?;
    writeln!(w, "{LEVELS}")?;
    for row in img.pixels.chunks(img.width) {
        let line: Vec<String> = row.iter().map(u32::to_string).collect();
        writeln!(w, "{}", line.join(" "))?;
    }
    Ok(())
}
