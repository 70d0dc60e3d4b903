//! Multiscale snapshot rendering: per-frame CSV of partial-sum columns,
//! one SVG per frame, and a manifest with exact window geometry.

use std::io::Write;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::{One, Pow, ToPrimitive};
use serde::{Deserialize, Serialize};

use blancmange::numeric::{rat_string, Rational};
use blancmange::{BlancmangeSpec, Error, Result};

const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

/// A render job: which partial sums to draw, around which center, how
/// many magnification frames, at what resolution.
#[derive(Debug, Clone)]
pub struct RenderJob {
    pub spec: BlancmangeSpec,
    pub sums: Vec<u32>,
    pub center: Rational,
    pub factor: Rational,
    pub frames: u32,
    pub resolution: u32,
    pub out_dir: PathBuf,
}

/// Optional job file; flags override whatever it sets.
#[derive(Debug, Default, Serialize, Deserialize)]
pub struct JobFile {
    pub spec: Option<String>,
    pub sums: Option<Vec<u32>>,
    pub center: Option<String>,
    pub factor: Option<String>,
    pub frames: Option<u32>,
    pub res: Option<u32>,
    pub out: Option<String>,
}

struct FrameData {
    index: u32,
    lo: Rational,
    hi: Rational,
    grid_level: u32,
    rows: Vec<(Rational, Vec<Rational>)>,
}

impl RenderJob {
    fn validate(&self) -> Result<()> {
        if self.sums.is_empty() || self.sums.len() > 6 {
            return Err(Error::Format(
                "between 1 and 6 partial-sum orders are supported".into(),
            ));
        }
        if self.factor <= Rational::one() {
            return Err(Error::Format("magnification factor must exceed 1".into()));
        }
        if self.frames == 0 {
            return Err(Error::Format("at least one frame is required".into()));
        }
        if self.resolution < 2 {
            return Err(Error::Format("resolution must be at least 2".into()));
        }
        Ok(())
    }

    /// Window of frame i: width factor^(−i), shared center.
    fn window(&self, i: u32) -> (Rational, Rational) {
        let mut width = Rational::one();
        for _ in 0..i {
            width /= &self.factor;
        }
        let half = width / Rational::from_integer(2.into());
        (&self.center - &half, &self.center + &half)
    }
}

fn sample_frame(job: &RenderJob, index: u32) -> FrameData {
    let spec = &job.spec;
    let (lo, hi) = job.window(index);
    let width = &hi - &lo;
    // Deepest lattice level whose spacing still gives >= resolution
    // points across the window; abscissae stay exactly computable.
    let mut grid_level = 0u32;
    loop {
        let spacing = Rational::new(BigInt::one(), spec.lattice_denom(grid_level));
        if &spacing * Rational::from_integer(BigInt::from(job.resolution)) <= width {
            break;
        }
        grid_level += 1;
    }
    let scale = Rational::from_integer(spec.lattice_denom(grid_level));
    let j_lo = (&lo * &scale).ceil().to_integer();
    let j_hi = (&hi * &scale).floor().to_integer();
    let total = (&j_hi - &j_lo + BigInt::one())
        .to_u64()
        .expect("frame sample count fits u64");
    let stride = BigInt::from((total / (job.resolution as u64 * 2)).max(1));
    let mut rows = Vec::new();
    let mut j = j_lo;
    while j <= j_hi {
        let t = Rational::new(j.clone(), scale.to_integer());
        let values = job.sums.iter().map(|&n| spec.partial_sum(n, &t)).collect();
        rows.push((t, values));
        j += &stride;
    }
    FrameData {
        index,
        lo,
        hi,
        grid_level,
        rows,
    }
}

fn write_csv(path: &Path, job: &RenderJob, frame: &FrameData) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    let header: Vec<String> = job.sums.iter().map(|n| format!("B_{n}")).collect();
    writeln!(out, "t,{}", header.join(","))?;
    for (t, values) in &frame.rows {
        let cells: Vec<String> = values
            .iter()
            .map(|v| format!("{}", v.to_f64().expect("value fits f64")))
            .collect();
        writeln!(out, "{},{}", rat_string(t), cells.join(","))?;
    }
    Ok(())
}

fn write_svg(path: &Path, job: &RenderJob, frame: &FrameData) -> Result<()> {
    const W: f64 = 800.0;
    const H: f64 = 500.0;
    const MARGIN: f64 = 50.0;

    let lo = frame.lo.to_f64().unwrap();
    let hi = frame.hi.to_f64().unwrap();
    let mut y_min = f64::INFINITY;
    let mut y_max = f64::NEG_INFINITY;
    for (_, values) in &frame.rows {
        for v in values {
            let y = v.to_f64().unwrap();
            y_min = y_min.min(y);
            y_max = y_max.max(y);
        }
    }
    if y_max <= y_min {
        y_max = y_min + 1.0;
    }
    let pad = 0.05 * (y_max - y_min);
    let (y_min, y_max) = (y_min - pad, y_max + pad);

    let x_of = |t: f64| MARGIN + (t - lo) / (hi - lo) * (W - 2.0 * MARGIN);
    let y_of = |y: f64| H - MARGIN - (y - y_min) / (y_max - y_min) * (H - 2.0 * MARGIN);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" \
         viewBox=\"0 0 {W} {H}\">\n<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>\n"
    ));
    svg.push_str(&format!(
        "<rect x=\"{m}\" y=\"{m}\" width=\"{w}\" height=\"{h}\" fill=\"none\" \
         stroke=\"#333\" stroke-width=\"1\"/>\n",
        m = MARGIN,
        w = W - 2.0 * MARGIN,
        h = H - 2.0 * MARGIN
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"13\" text-anchor=\"middle\">frame {}: \
         [{}, {}]</text>\n",
        W / 2.0,
        MARGIN - 12.0,
        frame.index,
        rat_string(&frame.lo),
        rat_string(&frame.hi),
    ));
    for (col, n) in job.sums.iter().enumerate() {
        let color = PALETTE[col % PALETTE.len()];
        let points: Vec<String> = frame
            .rows
            .iter()
            .map(|(t, values)| {
                format!(
                    "{:.2},{:.2}",
                    x_of(t.to_f64().unwrap()),
                    y_of(values[col].to_f64().unwrap())
                )
            })
            .collect();
        svg.push_str(&format!(
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.2\" points=\"{}\"/>\n",
            color,
            points.join(" ")
        ));
        // Legend entry.
        let ly = MARGIN + 16.0 + 18.0 * col as f64;
        svg.push_str(&format!(
            "<line x1=\"{x0}\" y1=\"{ly}\" x2=\"{x1}\" y2=\"{ly}\" stroke=\"{color}\" \
             stroke-width=\"2\"/>\n<text x=\"{xt}\" y=\"{yt}\" font-size=\"12\">B_{n}</text>\n",
            x0 = W - MARGIN - 90.0,
            x1 = W - MARGIN - 60.0,
            xt = W - MARGIN - 52.0,
            yt = ly + 4.0,
        ));
    }
    svg.push_str("</svg>\n");
    std::fs::write(path, svg)?;
    Ok(())
}

/// Run a render job: one CSV and one SVG per frame plus a manifest with
/// the exact window geometry and the declared float error budget.
pub fn run(job: &RenderJob) -> Result<()> {
    job.validate()?;
    std::fs::create_dir_all(&job.out_dir)?;

    let frames: Vec<FrameData> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..job.frames)
            .map(|i| scope.spawn(move || sample_frame(job, i)))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });

    let max_n = *job.sums.iter().max().expect("validated nonempty");
    let budget = job.spec.tail_bound(max_n)
        + Rational::new(BigInt::one(), BigInt::from(2).pow(40u32));
    let mut manifest_frames = Vec::new();
    for frame in &frames {
        let csv_name = format!("frame_{}.csv", frame.index);
        let svg_name = format!("frame_{}.svg", frame.index);
        write_csv(&job.out_dir.join(&csv_name), job, frame)?;
        write_svg(&job.out_dir.join(&svg_name), job, frame)?;
        manifest_frames.push(serde_json::json!({
            "index": frame.index,
            "lo": rat_string(&frame.lo),
            "hi": rat_string(&frame.hi),
            "width": rat_string(&(&frame.hi - &frame.lo)),
            "grid_level": frame.grid_level,
            "samples": frame.rows.len(),
            "csv": csv_name,
            "svg": svg_name,
        }));
    }
    let manifest = serde_json::json!({
        "spec": blancmange::io::spec_json(&job.spec),
        "sums": job.sums,
        "center": rat_string(&job.center),
        "factor": rat_string(&job.factor),
        "frames": job.frames,
        "resolution": job.resolution,
        "float_budget": rat_string(&budget),
        "frame_files": manifest_frames,
    });
    std::fs::write(
        job.out_dir.join("manifest.json"),
        serde_json::to_string_pretty(&manifest)?,
    )?;
    Ok(())
}
