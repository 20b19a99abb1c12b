//! Frozen values from an independent 30-digit evaluation.

// The literals keep the oracle's digits as printed.
#![allow(clippy::excessive_precision)]

use turan_core::gamma::{digamma, gamma_ratio, ln_gamma, pochhammer, pochhammer_rational, recip_gamma};
use turan_core::rational::{int, rat};
use turan_core::special::{bessel_i, exp_remainder, kummer, kummer_logderiv, kummer_param_derivative, pfq};
use turan_core::HypergeometricParamsF64;

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

const LN_GAMMA: &[(f64, f64)] = &[
    (0.5, 0.572_364_942_924_700_087),
    (1.5, -0.120_782_237_635_245_222),
    (2.5, 0.284_682_870_472_919_160),
    (7.25, 7.052_185_450_738_539_445),
    (33.3, 82.603_723_581_654_952_93),
    (100.75, 362.587_146_293_233_867_8),
    (170.0, 701.437_263_808_737_085_4),
];

const RECIP_GAMMA: &[(f64, f64)] = &[
    (-0.5, -0.282_094_791_773_878_143),
    (-0.25, -0.204_012_234_774_565_745),
    (0.5, 0.564_189_583_547_756_287),
    (3.5, 0.300_901_111_225_470_020),
    (-1.5, 0.423_142_187_660_817_215),
    (12.2, 1.534_358_688_337_555_296e-8),
];

const DIGAMMA: &[(f64, f64)] = &[
    (0.5, -1.963_510_026_021_423_479),
    (1.0, -0.577_215_664_901_532_861),
    (2.75, 0.818_901_024_975_432_592),
    (10.0, 2.251_752_589_066_721_108),
    (0.1, -10.423_754_940_411_076_80),
];

#[test]
fn ln_gamma_matches_oracle() {
    for &(x, want) in LN_GAMMA {
        assert!(rel(ln_gamma(x).unwrap(), want) < 1e-13, "lnΓ({x})");
    }
    assert_eq!(ln_gamma(1.0_f64).unwrap(), 0.0);
    assert!(rel(ln_gamma(5.0_f64).unwrap(), 24.0_f64.ln()) < 1e-15);
    assert!(ln_gamma(0.0_f64).is_err());
    assert!(ln_gamma(-2.5_f64).is_err());
}

#[test]
fn recip_gamma_matches_oracle() {
    for &(x, want) in RECIP_GAMMA {
        assert!(rel(recip_gamma(x), want) < 1e-13, "1/Γ({x})");
    }
    for k in 0..=20 {
        assert_eq!(recip_gamma(-(k as f64)), 0.0);
    }
    assert_eq!(recip_gamma(1.0_f64), 1.0);
}

#[test]
fn digamma_matches_oracle() {
    for &(x, want) in DIGAMMA {
        assert!(
            (digamma(x).unwrap() - want).abs() < 1e-12 * want.abs().max(1.0),
            "ψ({x})"
        );
    }
    assert!(digamma(0.0_f64).is_err());
}

#[test]
fn pochhammer_examples() {
    assert_eq!(pochhammer(2.0_f64, 3), 24.0);
    assert_eq!(pochhammer(0.5_f64, 2), 0.75);
    assert_eq!(pochhammer(-7.3_f64, 0), 1.0);
    assert_eq!(pochhammer_rational(&rat(1, 2), 2), rat(3, 4));
    assert_eq!(pochhammer_rational(&int(-3), 5), int(0));
    assert_eq!(pochhammer_rational(&rat(1, 3), 3), rat(28, 27));
    assert!(rel(gamma_ratio(2.0_f64, 0.5).unwrap(), 1.329_340_388_179_137_0) < 1e-13);
    assert_eq!(gamma_ratio(1.0_f64, 1.0).unwrap(), 1.0);
}

#[test]
fn bessel_matches_oracle() {
    let table = [
        (0.0, 1.0, 1.266_065_877_752_008_336),
        (0.0, 2.0, 2.279_585_302_336_067_267),
        (1.0, 2.0, 1.590_636_854_637_329_063),
        (0.5, 1.0, 0.937_674_888_245_487_647),
        (2.5, 7.0, 104.613_367_572_348_712_5),
        (-0.5, 3.0, 4.637_757_757_861_502_793),
        (-1.5, 2.0, 0.984_941_053_000_236_440),
        (3.0, 20.0, 34_592_416.340_919_618_93),
    ];
    for (nu, u, want) in table {
        assert!(rel(bessel_i(nu, u).unwrap(), want) < 1e-12, "I_{nu}({u})");
    }
}

#[test]
fn hypergeometric_matches_oracle() {
    let table = [
        (1.0, 2.0, 1.0, 1.718_281_828_459_045_235),
        (2.0, 3.0, 1.0, 2.0),
        (0.5, 1.5, 4.0, 8.226_313_882_753_615_112),
        (3.0, 0.4, 6.0, 93_556.783_745_986_701_89),
        (1.5, 2.5, -3.0, 0.227_278_245_931_787_432),
    ];
    for (a, b, x, want) in table {
        assert!(rel(kummer(a, b, x).unwrap(), want) < 1e-12, "F({a};{b};{x})");
    }
    assert!(rel(kummer_logderiv(2.0, 5.0, 3.0).unwrap(), 0.524_854_586_902_790_203) < 1e-12);
    assert!(rel(kummer_logderiv(3.0, 1.5, 2.0).unwrap(), 1.401_863_802_128_093_526) < 1e-12);
    let p = HypergeometricParamsF64::new(vec![0.5, 1.5], vec![2.5]).unwrap();
    assert!(rel(pfq(&p, 0.9).unwrap(), 1.667_303_469_184_580_159) < 1e-11);
}

#[test]
fn remainder_and_derivative_match_oracle() {
    assert!(rel(exp_remainder(2.0, 0.5, 1.2).unwrap(), 2.660_127_516_524_915_951) < 1e-13);
    assert!(rel(exp_remainder(1.0, -1.5, 0.8).unwrap(), 2.398_078_036_205_280_092) < 1e-13);
    assert!(
        rel(
            kummer_param_derivative(1.0, 1.0, 1.0).unwrap(),
            2.165_382_215_326_936_359
        ) < 1e-13
    );
    assert!(
        rel(
            kummer_param_derivative(2.5, 0.5, 3.0).unwrap(),
            317.146_184_892_056_793_4
        ) < 1e-12
    );
}
