//! Acceptance suite: exact-arithmetic checks of the headline identities,
//! one pass/fail line per criterion. The render-integrity criterion lives
//! in the CLI crate's acceptance suite.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};

use blancmange::certify::{nonaffine_certificate, roughness_lower_bound, GridInterval};
use blancmange::numeric::{rat, rat_int, Rational};
use blancmange::zoom::{chord_defect, divergence_scan, renormalize, ScanSide};
use blancmange::{approximate, corpus, BlancmangeSpec, SampledFunction};

fn corpus_specs(seed: u64, count: usize) -> Vec<BlancmangeSpec> {
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    (0..count).map(|_| corpus::random_spec(&mut rng)).collect()
}

fn report(n: u32, name: &str) {
    println!("criterion {n} ({name}): pass");
}

// Criterion 1: the functional equation B(t) = B_n(t) + B(b^n t)/b^n holds
// with exactly zero residual on random lattice points.
#[test]
fn criterion_1_functional_equation_exact() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(101);
    for spec in corpus_specs(1, 20) {
        for _ in 0..100 {
            let pt = corpus::random_lattice_point(&mut rng, &spec, 3);
            let n = rng.gen_range(0..=12);
            let residual = spec.functional_eq_residual(n, &pt);
            assert!(
                residual.is_zero(),
                "nonzero residual at n={n}, b={}",
                spec.b()
            );
        }
    }
    report(1, "functional-equation identity");
}

// Independent brute-force oracle for the classic function: its own tent
// formula and a 40-term sum, sharing no code with the library path.
fn classic_brute_force(t: &Rational) -> Rational {
    fn tent(t: &Rational) -> Rational {
        let u = t - t.floor();
        if u <= rat(1, 2) {
            u
        } else {
            rat_int(1) - u
        }
    }
    let mut sum = Rational::zero();
    for k in 0..40u32 {
        let pow = Rational::from_integer(BigInt::from(2).pow(k));
        sum += tent(&(t * &pow)) / pow;
    }
    sum
}

// Criterion 2: classic lattice values against the brute-force oracle, and
// the enclosure at the off-lattice point 1/3 contains 2/3.
#[test]
fn criterion_2_classic_values_oracle() {
    let spec = BlancmangeSpec::classic();
    let cases = [
        (rat(1, 4), rat(1, 2)),
        (rat(1, 2), rat(1, 2)),
        (rat(1, 8), rat(3, 8)),
    ];
    for (t, expected) in &cases {
        let pt = spec.badic_from_rational(t).unwrap();
        let value = spec.eval_exact_badic(&pt);
        assert_eq!(&value, expected);
        // At lattice points every oracle term past the level vanishes, so
        // the 40-term sum is exactly B.
        assert_eq!(value, classic_brute_force(t));
    }
    let v = spec
        .eval_enclosure(&rat(1, 3), &rat(1, 1_000_000_000))
        .unwrap();
    assert!(v.enclosure.contains(&rat(2, 3)));
    report(2, "classic values oracle");
}

// Criterion 3: nonzero witness determinants across the corpus, plus the
// pinned classic witness over (0, 1/2).
#[test]
fn criterion_3_nonaffine_certificates() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(303);
    for spec in corpus_specs(3, 20) {
        for _ in 0..200 {
            let a_num = rng.gen_range(0..63i64);
            let w_num = rng.gen_range(1..=(64 - a_num).min(16));
            let a = rat(a_num, 64);
            let b = rat(a_num + w_num, 64);
            let w = nonaffine_certificate(&spec, &a, &b).unwrap();
            assert!(!w.det.is_zero());
        }
    }
    let spec = BlancmangeSpec::classic();
    let w = nonaffine_certificate(&spec, &rat_int(0), &rat(1, 2)).unwrap();
    assert_eq!(spec.badic_value(&w.left), rat_int(0));
    assert_eq!(spec.badic_value(&w.right), rat(1, 2));
    assert_eq!(spec.badic_value(&w.middle), rat(1, 4));
    assert_eq!(w.values, [rat_int(0), rat(1, 2), rat(1, 2)]);
    assert_eq!(w.det, rat(1, 8));
    report(3, "non-affineness certificates");
}

// Criterion 4: the normalized chord defect never drops below 1/2 for the
// classic spec, at every level m ≤ 8 and every cell, and the witness
// point deviation equals the scale-free value exactly.
#[test]
fn criterion_4_multiscale_roughness_invariance() {
    let spec = BlancmangeSpec::classic();
    let scale_free = rat(1, 2); // |v_{i0}|·p/b
    for m in 0..=8u32 {
        let cells = 2i64 * 2i64.pow(m);
        for j in 0..cells {
            let gi = GridInterval {
                m,
                j: BigInt::from(j),
            };
            let dr = chord_defect(&spec, &gi.lo(&spec), &gi.hi(&spec), m + 1).unwrap();
            let normalized_lo = dr.defect.lo() / gi.width(&spec);
            assert!(normalized_lo >= scale_free, "m={m} j={j}");
            // The certified lower bound is exactly the scale-free value.
            let bound = roughness_lower_bound(&spec, &gi).unwrap();
            assert_eq!(&bound / gi.width(&spec), scale_free);
            assert_eq!(dr.defect.lo(), &bound);
        }
    }
    report(4, "multiscale roughness invariance");
}

// Criterion 5: the zoom operator agrees exactly with direct lattice
// evaluation across the corpus for n ≤ 12.
#[test]
fn criterion_5_renormalization_identity() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(505);
    for spec in corpus_specs(5, 20) {
        for _ in 0..10 {
            let anchor = corpus::random_lattice_point(&mut rng, &spec, 2);
            let u_pt = corpus::random_lattice_point(&mut rng, &spec, 2);
            let u = spec.badic_value(&u_pt);
            for n in 0..=12u32 {
                let lhs = renormalize(&spec, n, &anchor, &u).unwrap();
                let target =
                    spec.badic_value(&anchor) * Rational::from_integer(spec.b_pow(n)) + &u;
                let rhs = spec.eval_exact_badic(&spec.badic_from_rational(&target).unwrap());
                assert_eq!(lhs, rhs);
            }
        }
    }
    report(5, "renormalization identity");
}

// Criterion 6: the closed-form divergence at 0 for the classic spec —
// slope m at scale h = 2^{-m}, for m ≤ 20.
#[test]
fn criterion_6_divergence_scan_closed_form() {
    let spec = BlancmangeSpec::classic();
    let origin = spec.badic(BigInt::from(0), 0);
    // m = 1 directly: (B(1/2) − B(0)) / (1/2) = 1.
    let half = spec.badic_from_rational(&rat(1, 2)).unwrap();
    assert_eq!(spec.eval_exact_badic(&half) / rat(1, 2), rat_int(1));
    // Scan rows use h_n = 1/(p·b^n) = 2^{-(n+1)}, so row n covers m = n+1.
    for row in divergence_scan(&spec, &origin, 19, ScanSide::Right) {
        let m = row.n + 1;
        assert_eq!(row.h, Rational::new(1.into(), BigInt::from(2).pow(m)));
        assert_eq!(row.slope, rat_int(m as i64));
    }
    report(6, "divergence scan closed form");
}

// Criterion 7: the density pipeline on sin(πx), and the geometric bound
// formula M/(b−1) across random specs.
#[test]
fn criterion_7_density_pipeline() {
    let scale = BigInt::from(1i64 << 30);
    let samples: Vec<(Rational, Rational)> = (0..=256i64)
        .map(|i| {
            let t = rat(i, 256);
            let y = (std::f64::consts::PI * i as f64 / 256.0).sin();
            let v = if i == 0 || i == 256 {
                Rational::zero()
            } else {
                Rational::new(
                    BigInt::from((y * (1i64 << 30) as f64).round() as i64),
                    scale.clone(),
                )
            };
            (t, v)
        })
        .collect();
    let f = SampledFunction::new(samples).unwrap();
    let eps = rat(1, 20);
    let result = approximate::approximate_function(&f, &eps, None).unwrap();
    assert!(result.total.hi() < &eps);
    // Every sample lies within total.hi of the approximant.
    let check_eps = rat(1, 1 << 20);
    for (t, v) in f.samples().iter().step_by(16) {
        let enc = result.spec.eval_enclosure(t, &check_eps).unwrap();
        let dev = (v - enc.point).abs();
        assert!(dev <= result.total.hi() + enc.enclosure.width());
    }
    for spec in corpus_specs(7, 50) {
        let d = approximate::series_distance(&spec);
        let formula =
            spec.generator().sup_norm().0 / rat_int(spec.b() as i64 - 1);
        assert_eq!(d.hi(), &formula);
    }
    report(7, "density pipeline");
}

// Criterion 8: geometric tail soundness against a 64-term reference sum.
#[test]
fn criterion_8_tail_soundness() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(808);
    for _ in 0..1000 {
        let spec = corpus::random_spec(&mut rng);
        let t = Rational::new(
            BigInt::from(rng.gen_range(-1000i64..1000)),
            BigInt::from(rng.gen_range(1i64..1000)),
        );
        let n = rng.gen_range(0..=16u32);
        let reference = spec.partial_sum(64, &t);
        let dev = (reference - spec.partial_sum(n, &t)).abs();
        assert!(dev <= spec.tail_bound(n));
    }
    report(8, "tail soundness");
}

#[allow(dead_code)]
fn f64_guard(x: &Rational) -> f64 {
    x.to_f64().unwrap()
}
