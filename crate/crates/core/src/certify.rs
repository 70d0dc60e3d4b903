//! Constructive certificates: the affine pieces of the partial sums, grid
//! interval location, and exact three-point witnesses proving that B is
//! affine on no open interval.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{rat_string, Rational};
use crate::series::{BAdicPoint, BlancmangeSpec};

/// Default level cap when searching for a lattice interval inside a query.
pub const DEFAULT_LOCATE_CAP: u32 = 64;

/// The open lattice interval I_{m,j} = (j/(p·b^m), (j+1)/(p·b^m)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridInterval {
    pub m: u32,
    pub j: BigInt,
}

impl GridInterval {
    pub fn lo(&self, spec: &BlancmangeSpec) -> Rational {
        Rational::new(self.j.clone(), spec.lattice_denom(self.m))
    }

    pub fn hi(&self, spec: &BlancmangeSpec) -> Rational {
        Rational::new(&self.j + 1, spec.lattice_denom(self.m))
    }

    pub fn width(&self, spec: &BlancmangeSpec) -> Rational {
        Rational::new(BigInt::from(1), spec.lattice_denom(self.m))
    }
}

/// One affine piece of B_n: B_n(t) = slope·t + intercept on the closed
/// interval. `interval` is None only for the n = 0 convention (all of ℝ).
#[derive(Debug, Clone)]
pub struct AffinePiece {
    pub interval: Option<GridInterval>,
    pub slope: Rational,
    pub intercept: Rational,
}

/// Three exact graph points of B over an interval with a nonzero
/// collinearity determinant: a certificate that B is not affine there.
#[derive(Debug, Clone)]
pub struct NonAffineWitness {
    pub interval: GridInterval,
    pub left: BAdicPoint,
    pub middle: BAdicPoint,
    pub right: BAdicPoint,
    pub values: [Rational; 3],
    pub det: Rational,
}

impl NonAffineWitness {
    /// Recompute the determinant from the printed points alone; this is
    /// the check an independent verifier performs.
    pub fn recheck_det(&self, spec: &BlancmangeSpec) -> Rational {
        let tl = spec.badic_value(&self.left);
        let tm = spec.badic_value(&self.middle);
        let tr = spec.badic_value(&self.right);
        let [vl, vm, vr] = &self.values;
        (&tr - &tl) * (vm - vl) - (&tm - &tl) * (vr - vl)
    }
}

/// Exact affine pieces of B_n over the level n−1 lattice indices in `range`.
///
/// B_n is affine on the closure of each (i/(p·b^{n−1}), (i+1)/(p·b^{n−1})),
/// so slope and intercept fall out of the exact endpoint values.
pub fn affine_pieces(
    spec: &BlancmangeSpec,
    n: u32,
    range: std::ops::Range<i64>,
) -> Vec<AffinePiece> {
    if n == 0 {
        // B_0 is identically zero: one piece covering all of ℝ.
        return vec![AffinePiece {
            interval: None,
            slope: Rational::zero(),
            intercept: Rational::zero(),
        }];
    }
    let level = n - 1;
    let denom = spec.lattice_denom(level);
    range
        .map(|i| {
            let t0 = Rational::new(BigInt::from(i), denom.clone());
            let t1 = Rational::new(BigInt::from(i + 1), denom.clone());
            let y0 = spec.partial_sum(n, &t0);
            let y1 = spec.partial_sum(n, &t1);
            let slope = (&y1 - &y0) / (&t1 - &t0);
            let intercept = y0 - &slope * t0;
            AffinePiece {
                interval: Some(GridInterval {
                    m: level,
                    j: BigInt::from(i),
                }),
                slope,
                intercept,
            }
        })
        .collect()
}

/// Reduce a query interval into [0, 1] by an integer shift.
fn reduce_interval(lo: &Rational, hi: &Rational) -> Result<(Rational, Rational)> {
    if lo >= hi {
        return Err(Error::EmptyInterval);
    }
    let shift = lo.floor();
    let a = lo - &shift;
    let b = hi - &shift;
    if b > Rational::from_integer(BigInt::from(1)) {
        return Err(Error::IntervalOutOfRange);
    }
    Ok((a, b))
}

/// The lattice interval of minimal level m (then minimal j) whose closure
/// fits inside the closure of (lo, hi).
pub fn locate_grid_interval(
    spec: &BlancmangeSpec,
    lo: &Rational,
    hi: &Rational,
) -> Result<GridInterval> {
    locate_grid_interval_capped(spec, lo, hi, DEFAULT_LOCATE_CAP)
}

pub fn locate_grid_interval_capped(
    spec: &BlancmangeSpec,
    lo: &Rational,
    hi: &Rational,
    cap: u32,
) -> Result<GridInterval> {
    let (a, b) = reduce_interval(lo, hi)?;
    for m in 0..=cap {
        let denom = spec.lattice_denom(m);
        let scale = Rational::from_integer(denom);
        let j = (&a * &scale).ceil().to_integer();
        if Rational::new(&j + 1, scale.to_integer()) <= b {
            return Ok(GridInterval { m, j });
        }
    }
    Err(Error::LocateCapExceeded { cap })
}

/// Interior lattice offset for the witness midpoint: among the b−1
/// integers j0 strictly between j·b and (j+1)·b, pick the one whose
/// vertex value |v_{j0 mod p}| is maximal (nonzero), smallest j0 on ties.
fn select_witness_offset(spec: &BlancmangeSpec, gi: &GridInterval) -> Result<(BigInt, usize)> {
    let p = BigInt::from(spec.p());
    let base = &gi.j * BigInt::from(spec.b());
    let mut best: Option<(BigInt, usize, Rational)> = None;
    for r in 1..spec.b() {
        let j0 = &base + BigInt::from(r);
        let i0: usize = j0
            .mod_floor(&p)
            .try_into()
            .expect("residue fits in usize");
        let mag = spec.generator().vertex(i0).abs();
        if mag.is_zero() {
            continue;
        }
        if best.as_ref().is_none_or(|(_, _, m)| &mag > m) {
            best = Some((j0, i0, mag));
        }
    }
    let (j0, i0, _) = best.ok_or_else(|| {
        Error::Internal("no interior lattice point with a nonzero vertex value".into())
    })?;
    Ok((j0, i0))
}

/// Produce the exact three-point non-collinearity witness for B over the
/// located lattice interval inside (lo, hi).
pub fn nonaffine_certificate(
    spec: &BlancmangeSpec,
    lo: &Rational,
    hi: &Rational,
) -> Result<NonAffineWitness> {
    let gi = locate_grid_interval(spec, lo, hi)?;
    let (j0, _) = select_witness_offset(spec, &gi)?;

    let left = spec.badic(gi.j.clone(), gi.m);
    let right = spec.badic(&gi.j + 1, gi.m);
    let middle = spec.badic(j0, gi.m + 1);

    let vl = spec.eval_exact_badic(&left);
    let vm = spec.eval_exact_badic(&middle);
    let vr = spec.eval_exact_badic(&right);

    let tl = spec.badic_value(&left);
    let tm = spec.badic_value(&middle);
    let tr = spec.badic_value(&right);
    let det = (&tr - &tl) * (&vm - &vl) - (&tm - &tl) * (&vr - &vl);
    if det.is_zero() {
        // Impossible for a valid spec: the midpoint deviates from the
        // chord by exactly v_{i0}/b^{m+1} != 0. Reaching here means the
        // evaluator itself is broken.
        return Err(Error::Internal(format!(
            "collinear witness points over ({}, {})",
            rat_string(lo),
            rat_string(hi)
        )));
    }
    Ok(NonAffineWitness {
        interval: gi,
        left,
        middle,
        right,
        values: [vl, vm, vr],
        det,
    })
}

/// Certified lower bound |v_{i0}|/b^{m+1} on the maximal deviation of B
/// from its chord over I_{m,j}: the tail past m+1 vanishes at the three
/// witness abscissae and B_{m+1} is affine on the interval, so the chord
/// deviation at the midpoint witness is exactly s_{m+1}(j0/(p·b^{m+1})).
pub fn roughness_lower_bound(spec: &BlancmangeSpec, gi: &GridInterval) -> Result<Rational> {
    let (_, i0) = select_witness_offset(spec, gi)?;
    let v = spec.generator().vertex(i0).abs();
    Ok(v / Rational::from_integer(spec.b_pow(gi.m + 1)))
}
