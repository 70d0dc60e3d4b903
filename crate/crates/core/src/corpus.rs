//! Random spec corpus used by property sweeps and the CLI selftest.

use num_bigint::BigInt;
use num_traits::Zero;
use rand::Rng;

use crate::generator::Generator;
use crate::numeric::Rational;
use crate::series::{BAdicPoint, BlancmangeSpec};

/// Random generator with p+1 rational vertices in [−1, 1].
pub fn random_generator<R: Rng>(rng: &mut R, p: u32) -> Generator {
    loop {
        let vertices: Vec<Rational> = (0..=p)
            .map(|i| {
                if i == 0 || i == p {
                    Rational::zero()
                } else {
                    let den = rng.gen_range(1..=8i64);
                    let num = rng.gen_range(-den..=den);
                    Rational::new(BigInt::from(num), BigInt::from(den))
                }
            })
            .collect();
        if let Ok(g) = Generator::new(p, vertices) {
            return g;
        }
    }
}

/// Random spec with p in 2..=7 and c in 1..=4.
pub fn random_spec<R: Rng>(rng: &mut R) -> BlancmangeSpec {
    let p = rng.gen_range(2..=7);
    let c = rng.gen_range(1..=4);
    BlancmangeSpec::new(random_generator(rng, p), c).expect("corpus spec is valid")
}

/// Random lattice point j/(p·b^m) in [0, 1] with m at most `max_m`.
pub fn random_lattice_point<R: Rng>(
    rng: &mut R,
    spec: &BlancmangeSpec,
    max_m: u32,
) -> BAdicPoint {
    let m = rng.gen_range(0..=max_m);
    let count: u64 = (spec.p() as u64) * spec.b().pow(m);
    let j = rng.gen_range(0..=count);
    spec.badic(BigInt::from(j), m)
}
