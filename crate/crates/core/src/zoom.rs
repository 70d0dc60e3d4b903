//! Finite-scale renormalization: the exact zoom identity
//! b^n·(B(t0 + u/b^n) − B_n(t0 + u/b^n)) = B(b^n·t0 + u), chord-defect
//! measurement across scales, and difference-quotient divergence scans.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{Enclosure, Rational};
use crate::series::{BAdicPoint, BlancmangeSpec};

/// Measured failure of affineness over a window: an enclosure of
/// sup |B − chord| and the same normalized by the window width.
#[derive(Debug, Clone)]
pub struct DefectReport {
    pub grid_level: u32,
    pub defect: Enclosure,
    pub normalized: Enclosure,
}

/// Scan direction for difference quotients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScanSide {
    Right,
    Left,
}

/// One row of a divergence scan: scale index, step, exact chord slope.
#[derive(Debug, Clone)]
pub struct SlopeSample {
    pub n: u32,
    pub h: Rational,
    pub slope: Rational,
}

/// Exact zoom operator: magnify B around the anchor by b^n after removing
/// the affine part B_n. By the functional equation this equals B evaluated
/// at b^n·t0 + u, which is how the value is certified.
pub fn renormalize(
    spec: &BlancmangeSpec,
    n: u32,
    anchor: &BAdicPoint,
    u: &Rational,
) -> Result<Rational> {
    let t0 = spec.badic_value(anchor);
    let delta = Rational::from_integer(spec.b_pow(n));
    let t = &t0 + u / &delta;
    let pt = spec.badic_from_rational(&t)?;
    Ok(&delta * (spec.eval_exact_badic(&pt) - spec.partial_sum(n, &t)))
}

/// Enclose sup |B − chord| over [lo, hi] from the level-`grid_level`
/// lattice points inside it. The window endpoints must themselves be
/// lattice points at or below that level, so the chord is exact. The low
/// endpoint is a true lower bound for the sup over the whole window; the
/// high endpoint pads with twice the level tail bound, which covers both
/// the off-lattice part of B and the gap to the lattice maximum.
pub fn chord_defect(
    spec: &BlancmangeSpec,
    lo: &Rational,
    hi: &Rational,
    grid_level: u32,
) -> Result<DefectReport> {
    if lo >= hi {
        return Err(Error::EmptyInterval);
    }
    let a = spec.badic_from_rational(lo)?;
    let b = spec.badic_from_rational(hi)?;
    if a.m() > grid_level || b.m() > grid_level {
        return Err(Error::NonLatticePoint(
            "window endpoints lie below the sampling grid".into(),
        ));
    }
    let ya = spec.eval_exact_badic(&a);
    let yb = spec.eval_exact_badic(&b);
    let width = hi - lo;
    let slope = (&yb - &ya) / &width;

    let denom = spec.lattice_denom(grid_level);
    let scale = Rational::from_integer(denom);
    let j_lo = (lo * &scale).ceil().to_integer();
    let j_hi = (hi * &scale).floor().to_integer();
    let mut max_dev = Rational::zero();
    let mut j = j_lo;
    while j <= j_hi {
        let pt = spec.badic(j.clone(), grid_level);
        let t = spec.badic_value(&pt);
        let chord = &ya + &slope * (&t - lo);
        let dev = (spec.eval_exact_badic(&pt) - chord).abs();
        if dev > max_dev {
            max_dev = dev;
        }
        j += 1;
    }
    let slack = spec.tail_bound(grid_level) * Rational::from_integer(2.into());
    let defect = Enclosure::new(max_dev.clone(), &max_dev + slack)?;
    let normalized = defect.scale(&(Rational::from_integer(1.into()) / width));
    Ok(DefectReport {
        grid_level,
        defect,
        normalized,
    })
}

/// Exact chord defect of the partial sum B_n itself over a window; used
/// to check that affine pieces have zero defect.
pub fn partial_sum_chord_defect(
    spec: &BlancmangeSpec,
    n: u32,
    lo: &Rational,
    hi: &Rational,
    grid_level: u32,
) -> Result<Rational> {
    if lo >= hi {
        return Err(Error::EmptyInterval);
    }
    let ya = spec.partial_sum(n, lo);
    let yb = spec.partial_sum(n, hi);
    let slope = (&yb - &ya) / (hi - lo);
    let denom = spec.lattice_denom(grid_level);
    let scale = Rational::from_integer(denom);
    let j_lo = (lo * &scale).ceil().to_integer();
    let j_hi = (hi * &scale).floor().to_integer();
    let mut max_dev = Rational::zero();
    let mut j = j_lo;
    while j <= j_hi {
        let t = Rational::new(j.clone(), scale.to_integer());
        let dev = (spec.partial_sum(n, &t) - (&ya + &slope * (&t - lo))).abs();
        if dev > max_dev {
            max_dev = dev;
        }
        j += 1;
    }
    Ok(max_dev)
}

/// Difference quotients (B(t0 ± h_n) − B(t0))/(±h_n) with h_n = 1/(p·b^n)
/// for n = 1..=depth; exact, and exposes non-convergence.
pub fn divergence_scan(
    spec: &BlancmangeSpec,
    t0: &BAdicPoint,
    depth: u32,
    side: ScanSide,
) -> Vec<SlopeSample> {
    let t = spec.badic_value(t0);
    let y0 = spec.eval_exact_badic(t0);
    (1..=depth)
        .map(|n| {
            let h = Rational::new(1.into(), spec.lattice_denom(n));
            let step = match side {
                ScanSide::Right => h.clone(),
                ScanSide::Left => -h.clone(),
            };
            let pt = spec
                .badic_from_rational(&(&t + &step))
                .expect("lattice point plus lattice step stays on the lattice");
            let slope = (spec.eval_exact_badic(&pt) - &y0) / &step;
            SlopeSample { n, h, slope }
        })
        .collect()
}
