//! Uniform approximation pipeline: interpolate a sampled function into a
//! generator, bound ‖s − B(s,c)‖ with the geometric-series formula, and
//! pick c (and p) to meet a target uniform error.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::numeric::{rat_string, Enclosure, Rational};
use crate::series::BlancmangeSpec;

/// Cap for the doubling search over subdivision counts.
pub const DEFAULT_P_CAP: u32 = 1 << 14;

/// Sorted rational samples of a continuous function on [0, 1] with
/// f(0) = f(1) = 0, read between samples by linear interpolation.
#[derive(Debug, Clone)]
pub struct SampledFunction {
    samples: Vec<(Rational, Rational)>,
}

/// Outcome of the pipeline: the chosen spec and the certified error split.
#[derive(Debug, Clone)]
pub struct ApproximationResult {
    pub spec: BlancmangeSpec,
    pub interp_error: Enclosure,
    pub series_error: Enclosure,
    pub total: Enclosure,
}

impl SampledFunction {
    pub fn new(samples: Vec<(Rational, Rational)>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptySamples);
        }
        for pair in samples.windows(2) {
            if pair[0].0 >= pair[1].0 {
                return Err(Error::SamplesUnsorted);
            }
        }
        let first = &samples[0];
        let last = &samples[samples.len() - 1];
        if !first.0.is_zero()
            || last.0 != Rational::one()
            || !first.1.is_zero()
            || !last.1.is_zero()
        {
            return Err(Error::SampleEndpoints);
        }
        Ok(Self { samples })
    }

    pub fn samples(&self) -> &[(Rational, Rational)] {
        &self.samples
    }

    /// Piecewise-linear read-off at any t in [0, 1].
    pub fn value_at(&self, t: &Rational) -> Rational {
        debug_assert!(!t.is_negative() && t <= &Rational::one());
        let idx = self.samples.partition_point(|(a, _)| a <= t);
        if idx == 0 {
            return self.samples[0].1.clone();
        }
        let (a0, v0) = &self.samples[idx - 1];
        if a0 == t || idx == self.samples.len() {
            return v0.clone();
        }
        let (a1, v1) = &self.samples[idx];
        v0 + (t - a0) * (v1 - v0) / (a1 - a0)
    }
}

/// Build the generator with vertices v_i = f(i/p) read off the sample
/// representative of f.
pub fn interpolate(f: &SampledFunction, p: u32) -> Result<Generator> {
    let vertices = (0..=p)
        .map(|i| f.value_at(&Rational::new(BigInt::from(i), BigInt::from(p))))
        .collect();
    Generator::new(p, vertices)
}

/// Enclosure of ‖s − B(s,c)‖∞. Upper bound: the geometric-series formula
/// M/(b−1), since s − B = −Σ_{k≥1} s_k. Lower bound: exact maximum of
/// |s(t) − B(t)| over a b-adic lattice, where both sides evaluate exactly.
pub fn series_distance(spec: &BlancmangeSpec) -> Enclosure {
    let m_norm = spec.generator().sup_norm().0;
    let hi = &m_norm / Rational::from_integer(BigInt::from(spec.b() - 1));

    // Pick the deepest lattice level whose point count stays modest.
    let mut level = 0u32;
    let mut count = spec.p() as u64;
    while level < 8 && count.saturating_mul(spec.b()) <= 4096 {
        count = count.saturating_mul(spec.b());
        level += 1;
    }
    let mut lo = Rational::zero();
    for j in 0..=count {
        let pt = spec.badic(BigInt::from(j), level);
        let t = spec.badic_value(&pt);
        let dev = (spec.generator().eval(&t) - spec.eval_exact_badic(&pt)).abs();
        if dev > lo {
            lo = dev;
        }
    }
    Enclosure::new(lo, hi).expect("lattice max cannot exceed the sup-norm bound")
}

/// Minimal c ≥ 1 with M/(c·p − 1) < eps, so series_distance's upper bound
/// meets the target.
pub fn choose_c(g: &Generator, eps: &Rational) -> Result<u32> {
    if !eps.is_positive() {
        return Err(Error::NonPositiveTolerance);
    }
    let m_norm = g.sup_norm().0;
    let p = Rational::from_integer(BigInt::from(g.p()));
    let mut c = 1u32;
    loop {
        let bound = &m_norm
            / (Rational::from_integer(BigInt::from(c)) * &p - Rational::one());
        if &bound < eps {
            return Ok(c);
        }
        c += 1;
    }
}

/// End-to-end density pipeline: double p until the interpolation error on
/// the sample set fits its budget share, then choose c for the series
/// share. Errors are measured against the sample representative of f.
pub fn approximate_function(
    f: &SampledFunction,
    eps: &Rational,
    p_hint: Option<u32>,
) -> Result<ApproximationResult> {
    approximate_function_capped(f, eps, p_hint, DEFAULT_P_CAP)
}

pub fn approximate_function_capped(
    f: &SampledFunction,
    eps: &Rational,
    p_hint: Option<u32>,
    p_cap: u32,
) -> Result<ApproximationResult> {
    if !eps.is_positive() {
        return Err(Error::NonPositiveTolerance);
    }
    let budget = eps / Rational::from_integer(BigInt::from(2));
    let mut p = p_hint.unwrap_or(2).max(2);
    let mut best: Option<(Generator, Rational)> = None;
    loop {
        match interpolate(f, p) {
            Ok(g) => {
                let err = interp_error_on_samples(f, &g);
                let good_enough = err <= budget;
                match &best {
                    Some((_, prev)) if prev <= &err => {}
                    _ => best = Some((g, err)),
                }
                if good_enough {
                    break;
                }
            }
            Err(Error::AllInteriorZero) => {
                // Either f is flat at this resolution or identically zero;
                // a finer p may still pick up structure.
            }
            Err(e) => return Err(e),
        }
        if p >= p_cap {
            let best_bound = best
                .as_ref()
                .map(|(_, e)| rat_string(e))
                .unwrap_or_else(|| "none (no valid generator)".into());
            return Err(Error::EpsUnachievable {
                eps: rat_string(eps),
                best: best_bound,
            });
        }
        p = (p * 2).min(p_cap);
    }
    let (gen, interp_max) = best.expect("loop exits with a generator");
    let c = choose_c(&gen, &budget)?;
    let spec = BlancmangeSpec::new(gen, c)?;
    let series_error = series_distance(&spec);
    let interp_error = Enclosure::new(interp_max.clone(), interp_max)?;
    let total = interp_error.add(&series_error);
    Ok(ApproximationResult {
        spec,
        interp_error,
        series_error,
        total,
    })
}

/// Exact max |f − s| over the sample abscissae and the generator vertices
/// (both functions are affine between consecutive breakpoints of either,
/// so this union of breakpoints attains the sup of the difference).
fn interp_error_on_samples(f: &SampledFunction, g: &Generator) -> Rational {
    let mut max = Rational::zero();
    for (t, v) in f.samples() {
        let dev = (v - g.eval(t)).abs();
        if dev > max {
            max = dev;
        }
    }
    for i in 0..=g.p() {
        let t = Rational::new(BigInt::from(i), BigInt::from(g.p()));
        let dev = (f.value_at(&t) - g.eval(&t)).abs();
        if dev > max {
            max = dev;
        }
    }
    max
}
