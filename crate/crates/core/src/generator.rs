//! Periodic piecewise-linear generators: period-1 functions determined by
//! p+1 vertex values v0..vp with v0 = vp = 0, affine on each (i/p, (i+1)/p).

use num_bigint::BigInt;
use num_traits::{Pow, Signed, Zero};

use crate::error::{Error, Result};
use crate::numeric::{frac_mod1, rat_int, Rational};

/// A generator: subdivision count p and the vertex values s(i/p).
///
/// Vertices are the sole representation; slopes are derived on demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    p: u32,
    vertices: Vec<Rational>,
}

/// The sup norm M = ‖s‖ of a generator, attained at a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupNorm(pub Rational);

impl Generator {
    pub fn new(p: u32, vertices: Vec<Rational>) -> Result<Self> {
        if p < 2 {
            return Err(Error::SubdivisionTooSmall(p));
        }
        if vertices.len() != p as usize + 1 {
            return Err(Error::VertexCount {
                expected: p as usize + 1,
                got: vertices.len(),
            });
        }
        if !vertices[0].is_zero() || !vertices[p as usize].is_zero() {
            return Err(Error::EndpointNotZero);
        }
        if vertices[1..p as usize].iter().all(Zero::is_zero) {
            return Err(Error::AllInteriorZero);
        }
        Ok(Self { p, vertices })
    }

    /// The classic tent generator: p = 2, peak 1/2 at t = 1/2.
    pub fn classic() -> Self {
        Self::new(2, vec![rat_int(0), Rational::new(1.into(), 2.into()), rat_int(0)])
            .expect("classic generator is valid")
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn vertices(&self) -> &[Rational] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Rational {
        &self.vertices[i]
    }

    /// Exact value s(t), reducing t by period 1 first.
    pub fn eval(&self, t: &Rational) -> Rational {
        let u = frac_mod1(t); // in [0, 1)
        let scaled = &u * rat_int(self.p as i64);
        let i = scaled.floor().to_integer();
        let i: usize = i.try_into().expect("piece index in 0..p");
        let theta = scaled - rat_int(i as i64); // in [0, 1)
        let v0 = &self.vertices[i];
        let v1 = &self.vertices[i + 1];
        v0 + theta * (v1 - v0)
    }

    /// Exact value of the dilated summand s_k(t) = s(b^k t) / b^k.
    pub fn eval_dilated(&self, b: u64, k: u32, t: &Rational) -> Result<Rational> {
        if b == 0 || !b.is_multiple_of(self.p as u64) {
            return Err(Error::BaseNotMultiple { b, p: self.p });
        }
        let bk = BigInt::from(b).pow(k);
        let scaled = t * Rational::from_integer(bk.clone());
        Ok(self.eval(&scaled) / Rational::from_integer(bk))
    }

    /// M = max |v_i|; positive by the nonzero-interior-vertex invariant.
    pub fn sup_norm(&self) -> SupNorm {
        let m = self
            .vertices
            .iter()
            .map(Signed::abs)
            .max()
            .expect("generator has vertices");
        SupNorm(m)
    }

    /// Exact slope p·(v_{i+1} − v_i) of s on (i/p, (i+1)/p).
    pub fn slope_on_piece(&self, i: usize) -> Result<Rational> {
        if i >= self.p as usize {
            return Err(Error::PieceIndex { i, p: self.p });
        }
        Ok(rat_int(self.p as i64) * (&self.vertices[i + 1] - &self.vertices[i]))
    }
}
