//! Log-gamma, reciprocal gamma, digamma and rising factorials.
//!
//! `ln_gamma` reduces its argument into `[1.5, 2.5]` and sums the Taylor series
//! of `lnΓ(2 + z)`, whose coefficients `(ζ(k) − 1)/k` decay like `2^{-k}`; large
//! arguments go through Stirling's series. This keeps the relative error small
//! even next to the zeros of `lnΓ` at 1 and 2, where a Lanczos sum loses digits.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{is_nonpositive_integer, Real};

const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `ζ(k) − 1` for `k = 2, 3, …, 41`.
const ZETA_MINUS_ONE: [f64; 40] = [
    6.449_340_668_482_264e-1,
    2.020_569_031_595_943e-1,
    8.232_323_371_113_819e-2,
    3.692_775_514_336_993e-2,
    1.734_306_198_444_914e-2,
    8.349_277_381_922_827e-3,
    4.077_356_197_944_339e-3,
    2.008_392_826_082_214e-3,
    9.945_751_278_180_853e-4,
    4.941_886_041_194_646e-4,
    2.460_865_533_080_483e-4,
    1.227_133_475_784_891e-4,
    6.124_813_505_870_483e-5,
    3.058_823_630_702_049e-5,
    1.528_225_940_865_187e-5,
    7.637_197_637_899_762e-6,
    3.817_293_264_999_84e-6,
    1.908_212_716_553_939e-6,
    9.539_620_338_727_96e-7,
    4.769_329_867_878_065e-7,
    2.384_505_027_277_33e-7,
    1.192_199_259_653_111e-7,
    5.960_818_905_125_948e-8,
    2.980_350_351_465_228e-8,
    1.490_155_482_836_504e-8,
    7.450_711_789_835_429e-9,
    3.725_334_024_788_457e-9,
    1.862_659_723_513_049e-9,
    9.313_274_324_196_682e-10,
    4.656_629_065_033_784e-10,
    2.328_311_833_676_505e-10,
    1.164_155_017_270_052e-10,
    5.820_772_087_902_701e-11,
    2.910_385_044_497_1e-11,
    1.455_192_189_104_198e-11,
    7.275_959_835_057_481e-12,
    3.637_979_547_378_651e-12,
    1.818_989_650_307_066e-12,
    9.094_947_840_263_889e-13,
    4.547_473_783_042_154e-13,
];

/// `B_{2k} / (2k(2k−1))` for `k = 1..8`.
const STIRLING: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// `B_{2k} / (2k)` for `k = 1..8`, used by the digamma asymptotic series.
const DIGAMMA_ASYMPTOTIC: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32_760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

const STIRLING_CUTOFF: f64 = 12.0;

fn domain<T: Real>(function: &'static str, x: T) -> Error {
    Error::Domain {
        function,
        value: x.as_f64(),
        expected: "x > 0",
    }
}

/// `lnΓ(2 + z)` for `|z| ≤ 1/2`.
fn ln_gamma_2p<T: Real>(z: T) -> T {
    let mut power = -z;
    let mut acc = T::zero();
    for (i, c) in ZETA_MINUS_ONE.iter().enumerate() {
        power *= -z;
        let k = i + 2;
        let term = T::lit(*c) * power / T::of_usize(k);
        acc += term;
        if term.abs() <= T::epsilon() * T::lit(1e-3) * acc.abs() {
            break;
        }
    }
    z * T::lit(1.0 - EULER_GAMMA) + acc
}

fn stirling_correction<T: Real>(x: T) -> T {
    let inv = x.recip();
    let inv2 = inv * inv;
    let mut power = inv;
    let mut acc = T::zero();
    for c in STIRLING {
        acc += T::lit(c) * power;
        power *= inv2;
    }
    acc
}

/// `log Γ(x)` for `x > 0`.
pub fn ln_gamma<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) {
        return Err(domain("ln_gamma", x));
    }
    if x.is_infinite() {
        return Ok(x);
    }
    let half = T::lit(0.5);
    let one = T::one();
    let two = T::lit(2.0);
    if x < half {
        return Ok(ln_gamma_2p(x) - x.ln_1p() - x.ln());
    }
    if x < T::lit(1.5) {
        let z = x - one;
        return Ok(ln_gamma_2p(z) - z.ln_1p());
    }
    if x <= T::lit(2.5) {
        return Ok(ln_gamma_2p(x - two));
    }
    if x < T::lit(STIRLING_CUTOFF) {
        let mut y = x;
        let mut product = one;
        while y > T::lit(2.5) {
            y -= one;
            product *= y;
        }
        return Ok(ln_gamma_2p(y - two) + product.ln());
    }
    let ln_sqrt_2pi = T::lit(0.918_938_533_204_672_8);
    Ok((x - half) * x.ln() - x + ln_sqrt_2pi + stirling_correction(x))
}

/// `1/Γ(x)`, an entire function: exactly zero at `0, −1, −2, …`.
pub fn recip_gamma<T: Real>(x: T) -> T {
    if x.is_nan() {
        return x;
    }
    if is_nonpositive_integer(x) {
        return T::zero();
    }
    if x > T::zero() {
        return match ln_gamma(x) {
            Ok(l) => (-l).exp(),
            Err(_) => T::nan(),
        };
    }
    // 1/Γ(x) = (x)_n / Γ(x + n) with x + n > 0.
    let n = (-x).ceil().to_usize().unwrap_or(0) + 1;
    pochhammer(x, n) * recip_gamma(x + T::of_usize(n))
}

/// `ψ(x) = Γ′(x)/Γ(x)` for `x > 0`.
pub fn digamma<T: Real>(x: T) -> Result<T> {
    if !(x > T::zero()) {
        return Err(domain("digamma", x));
    }
    let mut y = x;
    let mut shift = T::zero();
    while y < T::lit(10.0) {
        shift += y.recip();
        y += T::one();
    }
    let inv2 = (y * y).recip();
    let mut power = inv2;
    let mut series = T::zero();
    for c in DIGAMMA_ASYMPTOTIC {
        series += T::lit(c) * power;
        power *= inv2;
    }
    Ok(y.ln() - T::lit(0.5) / y - series - shift)
}

/// Rising factorial `(x)_n = x(x+1)⋯(x+n−1)`.
pub fn pochhammer<T: Real>(x: T, n: usize) -> T {
    let mut acc = T::one();
    for k in 0..n {
        acc *= x + T::of_usize(k);
    }
    acc
}

/// Exact rising factorial over the rationals.
pub fn pochhammer_rational(x: &BigRational, n: usize) -> BigRational {
    let mut acc = BigRational::one();
    let mut factor = x.clone();
    for _ in 0..n {
        if factor.is_zero() {
            return BigRational::zero();
        }
        acc *= &factor;
        factor += BigRational::from_integer(BigInt::one());
    }
    acc
}

/// `Γ(x + α)/Γ(x)` for `x > 0`, `α ≥ 0`, without forming either gamma.
pub fn gamma_ratio<T: Real>(x: T, alpha: T) -> Result<T> {
    if !(x > T::zero()) {
        return Err(domain("gamma_ratio", x));
    }
    if !(alpha >= T::zero()) {
        return Err(Error::Domain {
            function: "gamma_ratio",
            value: alpha.as_f64(),
            expected: "alpha >= 0",
        });
    }
    if alpha == T::zero() {
        return Ok(T::one());
    }
    if alpha == alpha.round() && alpha <= T::lit(64.0) {
        return Ok(pochhammer(x, alpha.to_usize().unwrap_or(0)));
    }
    if x >= T::lit(STIRLING_CUTOFF) {
        // Difference of Stirling series, arranged so nothing large cancels.
        let y = x + alpha;
        let half = T::lit(0.5);
        let log =
            (x - half) * (alpha / x).ln_1p() + alpha * y.ln() - alpha + stirling_correction(y) - stirling_correction(x);
        return Ok(log.exp());
    }
    Ok((ln_gamma(x + alpha)? - ln_gamma(x)?).exp())
}

/// `Γ(p)/Γ(q)`, read as a limit when `p − q` is an integer and either side is a pole.
fn pair_quotient<T: Real>(p: T, q: T) -> T {
    let d = p - q;
    if d == d.round() && d.abs() <= T::lit(256.0) {
        let n = d.abs().to_usize().unwrap_or(0);
        return if d >= T::zero() {
            pochhammer(q, n)
        } else {
            pochhammer(p, n).recip()
        };
    }
    if p > T::zero() && q > T::zero() {
        return match (ln_gamma(p), ln_gamma(q)) {
            (Ok(lp), Ok(lq)) => (lp - lq).exp(),
            _ => T::nan(),
        };
    }
    recip_gamma(q) / recip_gamma(p)
}

/// `Γ(p₁)Γ(p₂) / (Γ(q₁)Γ(q₂))` with poles resolved by pairing arguments that
/// differ by an integer, so quotients like `Γ(μ+1)/Γ(μ)` stay finite at `μ = 0, −1`.
pub fn gamma_quotient<T: Real>(p: [T; 2], q: [T; 2]) -> T {
    let integral = |x: T| x == x.round();
    let [p1, p2] = p;
    let [q1, q2] = q;
    if integral(p1 - q2) && !integral(p1 - q1) {
        return pair_quotient(p1, q2) * pair_quotient(p2, q1);
    }
    if integral(p1 - q1) || integral(p2 - q2) {
        return pair_quotient(p1, q1) * pair_quotient(p2, q2);
    }
    if integral(p2 - q1) {
        return pair_quotient(p2, q1) * pair_quotient(p1, q2);
    }
    if p.iter().chain(q.iter()).all(|x| *x > T::zero()) {
        let l = |x: T| ln_gamma(x).unwrap_or_else(|_| T::nan());
        return (l(p1) + l(p2) - l(q1) - l(q2)).exp();
    }
    recip_gamma(q1) * recip_gamma(q2) / (recip_gamma(p1) * recip_gamma(p2))
}

/// A gamma argument tagged with whether it sits on a pole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GammaArgument<T> {
    pub value: T,
    pub pole_flag: bool,
}

impl<T: Real> GammaArgument<T> {
    pub fn new(value: T) -> Self {
        Self {
            value,
            pole_flag: is_nonpositive_integer(value),
        }
    }

    /// `1/Γ(value)`, exactly zero on a pole.
    pub fn recip(&self) -> T {
        if self.pole_flag {
            T::zero()
        } else {
            recip_gamma(self.value)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * a.abs().max(b.abs()).max(f64::MIN_POSITIVE)
    }

    #[test]
    fn ln_gamma_integer_points() {
        assert_eq!(ln_gamma(1.0_f64).unwrap(), 0.0);
        assert!(ln_gamma(2.0_f64).unwrap().abs() < 1e-300);
        assert!(close(ln_gamma(5.0_f64).unwrap(), 24f64.ln(), 1e-15));
        let mut lf = 0.0_f64;
        for n in 1..170 {
            lf += (n as f64).ln();
            assert!(close(ln_gamma((n + 1) as f64).unwrap(), lf, 1e-13), "n = {n}");
        }
    }

    #[test]
    fn ln_gamma_half() {
        assert!(close(ln_gamma(0.5_f64).unwrap(), 0.572_364_942_924_700_1, 1e-14));
    }

    #[test]
    fn ln_gamma_rejects_nonpositive() {
        assert!(ln_gamma(0.0_f64).is_err());
        assert!(ln_gamma(-1.5_f64).is_err());
    }

    #[test]
    fn recip_gamma_poles_and_signs() {
        for k in 0..=20 {
            assert_eq!(recip_gamma(-(k as f64)), 0.0);
        }
        assert!(recip_gamma(-0.5_f64) < 0.0);
        assert!(close(
            recip_gamma(-0.5_f64),
            -1.0 / (2.0 * std::f64::consts::PI.sqrt()),
            1e-14
        ));
        assert!(close(recip_gamma(0.5_f64), 0.564_189_583_547_756_3, 1e-14));
        assert_eq!(recip_gamma(1.0_f64), 1.0);
    }

    #[test]
    fn digamma_values() {
        assert!(close(digamma(1.0_f64).unwrap(), -0.577_215_664_901_532_9, 1e-13));
        assert!(close(digamma(0.5_f64).unwrap(), -1.963_510_026_021_423_5, 1e-13));
        assert!(close(digamma(2.0_f64).unwrap(), 0.422_784_335_098_467_1, 1e-13));
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(2.0_f64, 3), 24.0);
        assert_eq!(pochhammer(0.5_f64, 2), 0.75);
        assert_eq!(pochhammer(7.25_f64, 0), 1.0);
        assert_eq!(pochhammer_rational(&rat(1, 2), 2), rat(3, 4));
        assert_eq!(pochhammer_rational(&rat(-3, 1), 5), rat(0, 1));
        assert_eq!(pochhammer_rational(&rat(1, 3), 3), rat(28, 27));
    }

    #[test]
    fn gamma_ratio_values() {
        assert_eq!(gamma_ratio(1.0_f64, 1.0).unwrap(), 1.0);
        assert_eq!(gamma_ratio(3.3_f64, 0.0).unwrap(), 1.0);
        assert!(close(gamma_ratio(2.0_f64, 0.5).unwrap(), 1.329_340_388_179_137, 1e-14));
        let direct = (ln_gamma(40.7_f64).unwrap() - ln_gamma(40.0_f64).unwrap()).exp();
        assert!(close(gamma_ratio(40.0_f64, 0.7).unwrap(), direct, 1e-13));
    }

    #[test]
    fn gamma_quotient_limits_at_poles() {
        // Γ(μ+1)Γ(μ+b)/(Γ(μ)Γ(μ+1+b)) = μ/(μ+b), also at μ = 0 and μ = −1.
        for mu in [-1.0_f64, 0.0, 0.5, 2.0] {
            let q = gamma_quotient([mu + 1.0, mu + 2.5], [mu, mu + 3.5]);
            assert!(close(q, mu / (mu + 2.5), 1e-14), "mu = {mu}");
        }
        let g = gamma_quotient([1.5_f64, 1.5], [1.0, 2.0]);
        assert!(close(g, std::f64::consts::PI / 4.0, 1e-14));
    }

    #[test]
    fn works_in_single_precision() {
        assert!((ln_gamma(0.5_f32).unwrap() - 0.572_364_9).abs() < 1e-6);
        assert_eq!(recip_gamma(-3.0_f32), 0.0);
    }
}
