//! Batch CLI for generalized blancmange functions: certified evaluation,
//! non-affineness certificates, multiscale rendering, uniform
//! approximation, and difference-quotient scans.
//!
//! Exit codes: 0 success, 1 usage error, 2 domain error, 3 internal
//! inconsistency.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_traits::{Pow, Signed, Zero};
use rand::{Rng, SeedableRng};

use blancmange::certify::nonaffine_certificate;
use blancmange::io::{self, WitnessFile};
use blancmange::numeric::{rat_parse, rat_string, Rational};
use blancmange::zoom::{divergence_scan, ScanSide};
use blancmange::{corpus, BlancmangeSpec, Error};

use render::{JobFile, RenderJob};

#[derive(Parser)]
#[command(
    name = "blancmange",
    about = "Generalized blancmange functions: exact evaluation, certificates, rendering",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Spec selection shared by most subcommands: either a spec file, or a
/// generator file plus a multiplier c.
#[derive(Args)]
struct SpecArgs {
    /// Spec JSON file: {"generator": <object or path>, "c": int}
    #[arg(long, value_name = "PATH")]
    spec: Option<PathBuf>,
    /// Generator JSON file: {"p": int, "vertices": ["0","1/2","0"]}
    #[arg(long, value_name = "PATH")]
    gen: Option<PathBuf>,
    /// Dilation multiplier c (with --gen); base is b = c*p
    #[arg(long, value_name = "INT")]
    c: Option<u32>,
}

impl SpecArgs {
    fn load(&self) -> Result<BlancmangeSpec, Error> {
        match (&self.spec, &self.gen) {
            (Some(path), None) => io::load_spec(path),
            (None, Some(path)) => {
                let g = io::load_generator(path)?;
                BlancmangeSpec::new(g, self.c.unwrap_or(1))
            }
            _ => Err(Error::Format(
                "give exactly one of --spec PATH or --gen PATH [--c INT]".into(),
            )),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate B(t) with a certified enclosure (exact on the lattice)
    Eval {
        #[command(flatten)]
        spec: SpecArgs,
        /// Evaluation point, a rational like 1/4
        #[arg(long, value_name = "RAT")]
        at: String,
        /// Enclosure tolerance (rational, decimal, or 1e-9 form)
        #[arg(long, value_name = "RAT", default_value = "1/1000000000")]
        tol: String,
        /// Emit JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Produce a non-affineness witness over an interval
    Certify {
        #[command(flatten)]
        spec: SpecArgs,
        /// Query interval as two rationals, e.g. "0 1/2"
        #[arg(long, value_name = "RAT RAT")]
        interval: String,
        /// Write the witness JSON here instead of stdout
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Render magnification snapshots: per-frame CSV + SVG
    Render {
        #[command(flatten)]
        spec: SpecArgs,
        /// Job JSON file; flags override its fields
        #[arg(long, value_name = "PATH")]
        job: Option<PathBuf>,
        /// Partial-sum orders to draw, e.g. 2,4,6,8,10,12 (max 6)
        #[arg(long, value_name = "CSV-INTS", value_delimiter = ',')]
        sums: Vec<u32>,
        /// Center of magnification
        #[arg(long, value_name = "RAT")]
        center: Option<String>,
        /// Magnification factor per frame (> 1)
        #[arg(long, value_name = "RAT")]
        factor: Option<String>,
        /// Number of frames
        #[arg(long, value_name = "INT")]
        frames: Option<u32>,
        /// Samples per frame
        #[arg(long, value_name = "INT")]
        res: Option<u32>,
        /// Output directory
        #[arg(long, value_name = "DIR")]
        out: Option<PathBuf>,
    },
    /// Fit a blancmange approximant to sampled data within eps
    Approx {
        /// CSV of samples with columns t,f (rational strings)
        samples: PathBuf,
        /// Target uniform error
        #[arg(long, value_name = "RAT")]
        eps: String,
        /// Write the result JSON here instead of stdout
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Suggested starting subdivision count
        #[arg(long, value_name = "INT")]
        p_hint: Option<u32>,
    },
    /// Difference-quotient scan at a lattice point
    Scan {
        #[command(flatten)]
        spec: SpecArgs,
        /// Lattice base point
        #[arg(long, value_name = "RAT")]
        t0: String,
        /// Number of scales
        #[arg(long, value_name = "INT", default_value = "8")]
        depth: u32,
        /// Use left increments instead of right
        #[arg(long)]
        left: bool,
        /// Write CSV here instead of stdout
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
    },
    /// Run the built-in identity sweep on a random corpus
    Selftest {
        /// Corpus seed
        #[arg(long, value_name = "INT", default_value = "1")]
        seed: u64,
    },
}

/// Accept "p/q", "p", decimals like 0.05, and scientific forms like 1e-9.
fn parse_tolerance(text: &str) -> Result<Rational, Error> {
    if let Ok(r) = rat_parse(text) {
        return Ok(r);
    }
    let lower = text.to_ascii_lowercase();
    let (mantissa, exp) = match lower.split_once('e') {
        Some((m, e)) => {
            let exp: i32 = e
                .parse()
                .map_err(|_| Error::ParseRational(text.to_string()))?;
            (m.to_string(), exp)
        }
        None => (lower, 0),
    };
    let (int_part, frac_part) = match mantissa.split_once('.') {
        Some((i, f)) => (i.to_string(), f.to_string()),
        None => (mantissa, String::new()),
    };
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() {
        return Err(Error::ParseRational(text.to_string()));
    } else {
        digits
            .parse()
            .map_err(|_| Error::ParseRational(text.to_string()))?
    };
    let shift = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    Ok(if shift >= 0 {
        Rational::from_integer(numer * ten.pow(shift as u32))
    } else {
        Rational::new(numer, ten.pow((-shift) as u32))
    })
}

fn parse_interval(text: &str) -> Result<(Rational, Rational), Error> {
    let mut parts = text.split_whitespace();
    match (parts.next(), parts.next(), parts.next()) {
        (Some(a), Some(b), None) => Ok((rat_parse(a)?, rat_parse(b)?)),
        _ => Err(Error::Format(
            "interval must be two rationals like \"0 1/2\"".into(),
        )),
    }
}

fn cmd_eval(spec: &SpecArgs, at: &str, tol: &str, json: bool) -> Result<(), Error> {
    let spec = spec.load()?;
    let t = rat_parse(at)?;
    let tol = parse_tolerance(tol)?;
    if let Ok(pt) = spec.badic_from_rational(&t) {
        let exact = spec.eval_exact_badic(&pt);
        if json {
            let value = serde_json::json!({
                "t": rat_string(&t),
                "exact": rat_string(&exact),
                "lo": rat_string(&exact),
                "hi": rat_string(&exact),
                "n_used": pt.m() + 1,
            });
            println!("{}", serde_json::to_string_pretty(&value)?);
        } else {
            println!("B({}) = {} (exact, lattice level {})", rat_string(&t), rat_string(&exact), pt.m());
        }
        return Ok(());
    }
    let v = spec.eval_enclosure(&t, &tol)?;
    if json {
        println!(
            "{}",
            serde_json::to_string_pretty(&io::eval_json(&rat_string(&t), &v))?
        );
    } else {
        println!(
            "B({}) in [{}, {}] (n = {})",
            rat_string(&t),
            rat_string(v.enclosure.lo()),
            rat_string(v.enclosure.hi()),
            v.n_used
        );
    }
    Ok(())
}

fn cmd_certify(spec: &SpecArgs, interval: &str, out: Option<&PathBuf>) -> Result<(), Error> {
    let spec = spec.load()?;
    let (a, b) = parse_interval(interval)?;
    let witness = nonaffine_certificate(&spec, &a, &b)?;
    let file = WitnessFile::from_witness(&spec, &witness);
    file.verify()?;
    let text = serde_json::to_string_pretty(&file)?;
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => println!("{text}"),
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_render(
    spec: &SpecArgs,
    job_file: Option<&PathBuf>,
    sums: &[u32],
    center: Option<&str>,
    factor: Option<&str>,
    frames: Option<u32>,
    res: Option<u32>,
    out: Option<&PathBuf>,
) -> Result<(), Error> {
    let job_cfg: JobFile = match job_file {
        Some(path) => serde_json::from_str(&std::fs::read_to_string(path)?)?,
        None => JobFile::default(),
    };
    let spec = if spec.spec.is_some() || spec.gen.is_some() {
        spec.load()?
    } else if let Some(path) = &job_cfg.spec {
        io::load_spec(std::path::Path::new(path))?
    } else {
        return Err(Error::Format("no spec given via flags or job file".into()));
    };
    let sums = if sums.is_empty() {
        job_cfg.sums.unwrap_or_else(|| vec![2, 4, 6, 8, 10, 12])
    } else {
        sums.to_vec()
    };
    let pick_rat = |flag: Option<&str>, file: &Option<String>, default: &str| {
        rat_parse(flag.unwrap_or(file.as_deref().unwrap_or(default)))
    };
    let job = RenderJob {
        spec,
        sums,
        center: pick_rat(center, &job_cfg.center, "1/2")?,
        factor: pick_rat(factor, &job_cfg.factor, "4")?,
        frames: frames.or(job_cfg.frames).unwrap_or(6),
        resolution: res.or(job_cfg.res).unwrap_or(256),
        out_dir: out
            .cloned()
            .or_else(|| job_cfg.out.as_ref().map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("frames")),
    };
    render::run(&job)
}

fn cmd_approx(
    samples: &PathBuf,
    eps: &str,
    out: Option<&PathBuf>,
    p_hint: Option<u32>,
) -> Result<(), Error> {
    let eps = parse_tolerance(eps)?;
    let reader = std::io::BufReader::new(std::fs::File::open(samples)?);
    let f = io::read_samples_csv(reader)?;
    let result = blancmange::approximate::approximate_function(&f, &eps, p_hint)?;
    let text = serde_json::to_string_pretty(&io::approx_json(&result))?;
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => println!("{text}"),
    }
    if result.total.hi() < &eps {
        Ok(())
    } else {
        Err(Error::EpsUnachievable {
            eps: rat_string(&eps),
            best: rat_string(result.total.hi()),
        })
    }
}

fn cmd_scan(
    spec: &SpecArgs,
    t0: &str,
    depth: u32,
    left: bool,
    out: Option<&PathBuf>,
) -> Result<(), Error> {
    if depth == 0 {
        return Err(Error::Format("depth must be at least 1".into()));
    }
    let spec = spec.load()?;
    let t0 = rat_parse(t0)?;
    let pt = spec.badic_from_rational(&t0)?;
    let side = if left { ScanSide::Left } else { ScanSide::Right };
    let rows = divergence_scan(&spec, &pt, depth, side);
    match out {
        Some(path) => {
            let file = std::fs::File::create(path)?;
            io::write_scan_csv(std::io::BufWriter::new(file), &rows)?;
        }
        None => io::write_scan_csv(std::io::stdout().lock(), &rows)?,
    }
    Ok(())
}

fn cmd_selftest(seed: u64) -> Result<(), Error> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let mut residuals = 0usize;
    let mut certificates = 0usize;
    for _ in 0..20 {
        let spec = corpus::random_spec(&mut rng);
        for _ in 0..25 {
            let pt = corpus::random_lattice_point(&mut rng, &spec, 3);
            let n = rng.gen_range(0..=12);
            if !spec.functional_eq_residual(n, &pt).is_zero() {
                return Err(Error::Internal(format!(
                    "functional equation residual nonzero at n={n}, b={}",
                    spec.b()
                )));
            }
            residuals += 1;
        }
        for _ in 0..10 {
            let a_num = rng.gen_range(0..31i64);
            let w = rng.gen_range(1..=(32 - a_num).min(8));
            let a = Rational::new(a_num.into(), 32.into());
            let b = Rational::new((a_num + w).into(), 32.into());
            let witness = nonaffine_certificate(&spec, &a, &b)?;
            if witness.det.is_zero() {
                return Err(Error::Internal("zero witness determinant".into()));
            }
            certificates += 1;
        }
        let t = Rational::new(
            BigInt::from(rng.gen_range(0i64..1000)),
            BigInt::from(1000),
        );
        let n = rng.gen_range(0..=12u32);
        let dev = (spec.partial_sum(40, &t) - spec.partial_sum(n, &t)).abs();
        if dev > spec.tail_bound(n) {
            return Err(Error::Internal("tail bound violated".into()));
        }
    }
    println!("selftest: {residuals} functional-equation residuals exactly zero");
    println!("selftest: {certificates} non-affineness certificates with det != 0");
    println!("selftest: tail bounds sound on the corpus");
    Ok(())
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Internal(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are not usage errors.
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let result = match &cli.command {
        Command::Eval { spec, at, tol, json } => cmd_eval(spec, at, tol, *json),
        Command::Certify { spec, interval, out } => cmd_certify(spec, interval, out.as_ref()),
        Command::Render {
            spec,
            job,
            sums,
            center,
            factor,
            frames,
            res,
            out,
        } => cmd_render(
            spec,
            job.as_ref(),
            sums,
            center.as_deref(),
            factor.as_deref(),
            *frames,
            *res,
            out.as_ref(),
        ),
        Command::Approx {
            samples,
            eps,
            out,
            p_hint,
        } => cmd_approx(samples, eps, out.as_ref(), *p_hint),
        Command::Scan {
            spec,
            t0,
            depth,
            left,
            out,
        } => cmd_scan(spec, t0, *depth, *left, out.as_ref()),
        Command::Selftest { seed } => cmd_selftest(*seed),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
