//! Text format for sampled means:
//!
//! ```text
//! # geomeans-means v1
//! # {"space":...,"boundary":...,"tgrid":...,"alpha":null}
//! center_idx,t,value
//! 0,0.001,0
//! ```
//!
//! Rows are in long format, centre-major. Floats use the shortest decimal
//! that reads back to the same value.

use anyhow::{bail, Context, Result};
use geomeans::{BoundaryGrid, MeanData, SpaceSpec, TGrid};
use serde::{Deserialize, Serialize};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

pub const MAGIC: &str = "# geomeans-means v1";
pub const HEADER: &str = "center_idx,t,value";

#[derive(Serialize, Deserialize)]
struct Meta {
    space: SpaceSpec,
    boundary: BoundaryGrid,
    tgrid: TGrid,
    alpha: Option<f64>,
}

pub fn write_means<W: Write>(mut w: W, data: &MeanData) -> Result<()> {
    data.check()?;
    let meta = Meta {
        space: data.space,
        boundary: data.boundary.clone(),
        tgrid: data.tgrid,
        alpha: data.alpha,
    };
    writeln!(w, "{MAGIC}")?;
    writeln!(w, "# {}", serde_json::to_string(&meta)?)?;
    writeln!(w, "{HEADER}")?;
    let nodes = data.tgrid.nodes();
    for (i, row) in data.values.iter().enumerate() {
        for (t, v) in nodes.iter().zip(row) {
            writeln!(w, "{i},{t},{v}")?;
        }
    }
    Ok(())
}

pub fn read_means<R: BufRead>(r: R) -> Result<MeanData> {
    let mut lines = r.lines().enumerate();
    let mut next = |what: &str| -> Result<(usize, String)> {
        match lines.next() {
            Some((k, l)) => Ok((k + 1, l?)),
            None => bail!("means file ends before the {what}"),
        }
    };
    let (_, magic) = next("format line")?;
    if magic.trim_end() != MAGIC {
        bail!("not a means file: first line {magic:?}");
    }
    let (_, meta) = next("metadata line")?;
    let json = meta.strip_prefix("# ").context("metadata line must start with `# `")?;
    let de = &mut serde_json::Deserializer::from_str(json);
    let meta: Meta = serde_path_to_error::deserialize(de).context("means metadata")?;
    let (_, header) = next("header")?;
    if header.trim_end() != HEADER {
        bail!("expected header {HEADER:?}, found {header:?}");
    }
    if meta.boundary.space != meta.space {
        bail!("boundary grid and data live in different spaces");
    }
    let tgrid = TGrid::new(meta.tgrid.start, meta.tgrid.end, meta.tgrid.len)?;
    let nodes = tgrid.nodes();
    let mut values = vec![Vec::with_capacity(tgrid.len); meta.boundary.len()];
    for (k, line) in lines {
        let line = line?;
        let k = k + 1;
        if line.trim().is_empty() {
            continue;
        }
        let mut f = line.split(',');
        let (Some(i), Some(t), Some(v), None) = (f.next(), f.next(), f.next(), f.next()) else {
            bail!("line {k}: expected 3 fields");
        };
        let i: usize = i.trim().parse().with_context(|| format!("line {k}: centre index"))?;
        let t: f64 = t.trim().parse().with_context(|| format!("line {k}: t"))?;
        let v: f64 = v.trim().parse().with_context(|| format!("line {k}: value"))?;
        let Some(row) = values.get_mut(i) else {
            bail!("line {k}: centre {i} beyond the {} centres", meta.boundary.len());
        };
        let j = row.len();
        match nodes.get(j) {
            Some(&tj) if (t - tj).abs() <= 1e-12 * tj.abs().max(1.0) => row.push(v),
            Some(&tj) => bail!("line {k}: t = {t} where node {j} is {tj}"),
            None => bail!("line {k}: more than {} values for centre {i}", tgrid.len),
        }
    }
    let data = MeanData {
        space: meta.space,
        boundary: meta.boundary,
        tgrid,
        values,
        alpha: meta.alpha,
    };
    data.check()?;
    Ok(data)
}

pub fn save_means(path: &Path, data: &MeanData) -> Result<()> {
    let f = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(f);
    write_means(&mut w, data)?;
    w.flush()?;
    Ok(())
}

pub fn load_means(path: &Path) -> Result<MeanData> {
    let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    read_means(BufReader::new(f)).with_context(|| format!("means file {}", path.display()))
}
