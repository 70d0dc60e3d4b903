//! The generalized blancmange function B(s,c) = Σ_{k≥0} s(b^k t)/b^k with
//! b = c·p: exact partial sums, geometric tail bounds, exact evaluation on
//! the b-adic lattice, and the functional equation
//! B(t) = B_n(t) + B(b^n t)/b^n as a checkable identity.

use num_bigint::BigInt;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};
use crate::generator::Generator;
use crate::numeric::{rat_string, Enclosure, Rational};

/// Hard cap on series depth when chasing a tolerance.
pub const DEFAULT_TERM_CAP: u32 = 64;

/// Hard cap on the lattice level when recognizing b-adic rationals.
pub const DEFAULT_LATTICE_CAP: u32 = 128;

/// A generator together with the dilation multiplier c; base b = c·p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlancmangeSpec {
    gen: Generator,
    c: u32,
    b: u64,
}

/// A lattice rational j/(p·b^m), stored at the least level m realizing it.
///
/// On this lattice every summand s_k with k ≥ m+1 vanishes exactly, so B
/// is a finite exact sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BAdicPoint {
    j: BigInt,
    m: u32,
}

impl BAdicPoint {
    pub fn j(&self) -> &BigInt {
        &self.j
    }

    pub fn m(&self) -> u32 {
        self.m
    }
}

/// A certified evaluation: the partial sum used and the enclosure around it.
#[derive(Debug, Clone)]
pub struct SeriesValue {
    pub point: Rational,
    pub n_used: u32,
    pub enclosure: Enclosure,
}

impl BlancmangeSpec {
    pub fn new(gen: Generator, c: u32) -> Result<Self> {
        if c == 0 {
            return Err(Error::ZeroMultiplier);
        }
        let b = c as u64 * gen.p() as u64;
        Ok(Self { gen, c, b })
    }

    /// The classic blancmange: tent generator, c = 1, b = 2.
    pub fn classic() -> Self {
        Self::new(Generator::classic(), 1).expect("classic spec is valid")
    }

    pub fn generator(&self) -> &Generator {
        &self.gen
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn p(&self) -> u32 {
        self.gen.p()
    }

    pub fn b_pow(&self, k: u32) -> BigInt {
        BigInt::from(self.b).pow(k)
    }

    /// Denominator p·b^m of the level-m lattice.
    pub fn lattice_denom(&self, m: u32) -> BigInt {
        BigInt::from(self.p()) * self.b_pow(m)
    }

    /// Canonicalize j/(p·b^m) to the least level realizing the same value.
    pub fn badic(&self, mut j: BigInt, mut m: u32) -> BAdicPoint {
        let b = BigInt::from(self.b);
        while m > 0 && (&j % &b).is_zero() {
            j /= &b;
            m -= 1;
        }
        BAdicPoint { j, m }
    }

    /// Recognize a rational as a lattice point, if it is one below the cap.
    pub fn badic_from_rational(&self, t: &Rational) -> Result<BAdicPoint> {
        for m in 0..=DEFAULT_LATTICE_CAP {
            let denom = self.lattice_denom(m);
            if (&denom % t.denom()).is_zero() {
                let j = t.numer() * (denom / t.denom());
                return Ok(self.badic(j, m));
            }
        }
        Err(Error::NonLatticePoint(rat_string(t)))
    }

    pub fn badic_value(&self, pt: &BAdicPoint) -> Rational {
        Rational::new(pt.j.clone(), self.lattice_denom(pt.m))
    }

    /// Exact partial sum B_n(t) = Σ_{k=0}^{n-1} s(b^k t)/b^k.
    pub fn partial_sum(&self, n: u32, t: &Rational) -> Rational {
        let mut sum = Rational::zero();
        let mut bk = BigInt::one();
        for _ in 0..n {
            let scale = Rational::from_integer(bk.clone());
            sum += self.gen.eval(&(t * &scale)) / scale;
            bk *= self.b;
        }
        sum
    }

    /// Exact geometric tail bound Σ_{k≥n} M/b^k = M·b^{1−n}/(b−1),
    /// an upper bound for sup_t |B(t) − B_n(t)|.
    pub fn tail_bound(&self, n: u32) -> Rational {
        let m = self.gen.sup_norm().0;
        let b = BigInt::from(self.b);
        m * Rational::new(b.clone(), self.b_pow(n) * (b - BigInt::one()))
    }

    /// Exact value of B at a lattice point: all summands of index > m
    /// vanish there, so B = B_{m+1} exactly.
    pub fn eval_exact_badic(&self, pt: &BAdicPoint) -> Rational {
        let t = self.badic_value(pt);
        self.partial_sum(pt.m + 1, &t)
    }

    /// Certified enclosure of B(t) with the minimal depth meeting eps.
    pub fn eval_enclosure(&self, t: &Rational, eps: &Rational) -> Result<SeriesValue> {
        self.eval_enclosure_capped(t, eps, DEFAULT_TERM_CAP)
    }

    pub fn eval_enclosure_capped(
        &self,
        t: &Rational,
        eps: &Rational,
        cap: u32,
    ) -> Result<SeriesValue> {
        if !eps.is_positive() {
            return Err(Error::NonPositiveTolerance);
        }
        let mut n = 0u32;
        loop {
            let tail = self.tail_bound(n);
            if &tail < eps {
                let center = self.partial_sum(n, t);
                let enclosure = Enclosure::centered(&center, &tail)?;
                return Ok(SeriesValue {
                    point: center,
                    n_used: n,
                    enclosure,
                });
            }
            if n == cap {
                return Err(Error::TailCapExceeded { cap });
            }
            n += 1;
        }
    }

    /// Exact residual B_n(t) + B(b^n t)/b^n − B(t) at a lattice point.
    /// The functional equation says this is identically zero.
    pub fn functional_eq_residual(&self, n: u32, pt: &BAdicPoint) -> Rational {
        let t = self.badic_value(pt);
        let bn = self.b_pow(n);
        let shifted = self.badic(pt.j() * &bn, pt.m());
        let lhs = self.partial_sum(n, &t)
            + self.eval_exact_badic(&shifted) / Rational::from_integer(bn);
        lhs - self.eval_exact_badic(pt)
    }
}
