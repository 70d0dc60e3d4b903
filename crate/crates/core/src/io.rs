//! File formats: generator and spec JSON, witness JSON, evaluation and
//! approximation result JSON, sample CSV ingestion, scan CSV output.
//!
//! Rationals serialize as canonical "p/q" strings ("p" for integers)
//! everywhere.

use std::io::{BufRead, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::approximate::{ApproximationResult, SampledFunction};
use crate::certify::NonAffineWitness;
use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::numeric::{rat_parse, rat_string, Enclosure};
use crate::series::{BlancmangeSpec, SeriesValue};
use crate::zoom::SlopeSample;

#[derive(Debug, Serialize, Deserialize)]
pub struct GeneratorFile {
    pub p: u32,
    pub vertices: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorRef {
    Inline(GeneratorFile),
    Path(String),
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SpecFile {
    pub generator: GeneratorRef,
    pub c: u32,
}

impl GeneratorFile {
    pub fn from_generator(g: &Generator) -> Self {
        Self {
            p: g.p(),
            vertices: g.vertices().iter().map(rat_string).collect(),
        }
    }

    pub fn build(&self) -> Result<Generator> {
        let vertices = self
            .vertices
            .iter()
            .map(|s| rat_parse(s))
            .collect::<Result<Vec<_>>>()?;
        Generator::new(self.p, vertices)
    }
}

pub fn load_generator(path: &Path) -> Result<Generator> {
    let text = std::fs::read_to_string(path)?;
    let file: GeneratorFile = serde_json::from_str(&text)?;
    file.build()
}

/// Load a spec file; a string-valued "generator" is a path resolved
/// relative to the spec file's directory.
pub fn load_spec(path: &Path) -> Result<BlancmangeSpec> {
    let text = std::fs::read_to_string(path)?;
    let file: SpecFile = serde_json::from_str(&text)?;
    let generator = match file.generator {
        GeneratorRef::Inline(g) => g.build()?,
        GeneratorRef::Path(rel) => {
            let base = path.parent().unwrap_or_else(|| Path::new("."));
            load_generator(&base.join(rel))?
        }
    };
    BlancmangeSpec::new(generator, file.c)
}

pub fn spec_json(spec: &BlancmangeSpec) -> serde_json::Value {
    serde_json::json!({
        "generator": GeneratorFile::from_generator(spec.generator()),
        "c": spec.c(),
    })
}

#[derive(Debug, Serialize, Deserialize)]
pub struct WitnessInterval {
    pub m: u32,
    pub j: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct WitnessFile {
    pub interval: WitnessInterval,
    pub points: Vec<[String; 2]>,
    pub det: String,
}

impl WitnessFile {
    pub fn from_witness(spec: &BlancmangeSpec, w: &NonAffineWitness) -> Self {
        let point = |pt, v| {
            [
                rat_string(&spec.badic_value(pt)),
                rat_string(v),
            ]
        };
        Self {
            interval: WitnessInterval {
                m: w.interval.m,
                j: w.interval.j.to_string(),
            },
            points: vec![
                point(&w.left, &w.values[0]),
                point(&w.middle, &w.values[1]),
                point(&w.right, &w.values[2]),
            ],
            det: rat_string(&w.det),
        }
    }

    /// Independent re-check: recompute the determinant from the printed
    /// points only and confirm it matches and is nonzero.
    pub fn verify(&self) -> Result<()> {
        if self.points.len() != 3 {
            return Err(Error::Format("witness needs exactly three points".into()));
        }
        let mut pts = Vec::with_capacity(3);
        for [t, v] in &self.points {
            pts.push((rat_parse(t)?, rat_parse(v)?));
        }
        let det = (&pts[2].0 - &pts[0].0) * (&pts[1].1 - &pts[0].1)
            - (&pts[1].0 - &pts[0].0) * (&pts[2].1 - &pts[0].1);
        if rat_string(&det) != self.det {
            return Err(Error::Format("witness determinant mismatch".into()));
        }
        if det == num_traits::Zero::zero() {
            return Err(Error::Internal("witness determinant is zero".into()));
        }
        Ok(())
    }
}

fn enclosure_json(e: &Enclosure) -> serde_json::Value {
    serde_json::json!({ "lo": rat_string(e.lo()), "hi": rat_string(e.hi()) })
}

pub fn eval_json(t_label: &str, v: &SeriesValue) -> serde_json::Value {
    serde_json::json!({
        "t": t_label,
        "lo": rat_string(v.enclosure.lo()),
        "hi": rat_string(v.enclosure.hi()),
        "n_used": v.n_used,
    })
}

pub fn approx_json(r: &ApproximationResult) -> serde_json::Value {
    serde_json::json!({
        "spec": spec_json(&r.spec),
        "interp_error": enclosure_json(&r.interp_error),
        "series_error": enclosure_json(&r.series_error),
        "total": enclosure_json(&r.total),
    })
}

/// Read a two-column CSV ("t","f" header, rational strings) into samples.
pub fn read_samples_csv<R: BufRead>(reader: R) -> Result<SampledFunction> {
    let mut samples = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if idx == 0 && line.trim_start_matches('"').starts_with('t') {
            continue; // header row
        }
        let (t, f) = line.split_once(',').ok_or_else(|| {
            Error::Format(format!("sample row {} is not 't,f'", idx + 1))
        })?;
        samples.push((
            rat_parse(t.trim().trim_matches('"'))?,
            rat_parse(f.trim().trim_matches('"'))?,
        ));
    }
    SampledFunction::new(samples)
}

/// Write a divergence scan as CSV: n, h, slope (exact rational strings).
pub fn write_scan_csv<W: Write>(mut out: W, rows: &[SlopeSample]) -> Result<()> {
    writeln!(out, "n,h,slope")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{}",
            row.n,
            rat_string(&row.h),
            rat_string(&row.slope)
        )?;
    }
    Ok(())
}
