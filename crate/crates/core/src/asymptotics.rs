//! Closed-form growth approximants for the walk sequences, normalized error
//! envelopes against the exact counts, and a high-precision quadrature for
//! the spectral integral of `a_n`.
//!
//! Values of size `2^n` never pass through `f64`. Exact counts are divided by
//! `beta^n` as rationals before conversion, and approximants are compared
//! through their prefactor only, so every float handled here is of order 1.

use std::f64::consts::PI;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::series::to_f64;
use crate::walks::GrowthSequence;

/// A nonnegative real `mantissa * 2^exp2`, for values such as `2^n` that do
/// not fit in an `f64`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledReal {
    pub mantissa: f64,
    pub exp2: i64,
}

impl ScaledReal {
    pub const ZERO: ScaledReal = ScaledReal {
        mantissa: 0.0,
        exp2: 0,
    };

    pub fn new(mantissa: f64, exp2: i64) -> Self {
        if mantissa == 0.0 {
            return Self::ZERO;
        }
        let shift = mantissa.log2().floor() as i64;
        Self {
            mantissa: mantissa / 2f64.powi(shift as i32),
            exp2: exp2 + shift,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa == 0.0
    }

    /// `log2` of the value; `-inf` for zero.
    pub fn log2(&self) -> f64 {
        self.mantissa.log2() + self.exp2 as f64
    }

    /// Plain `f64`; overflows to infinity for large exponents.
    pub fn to_f64(&self) -> f64 {
        self.mantissa * 2f64.powf(self.exp2 as f64)
    }

    /// `self / 2^k` as an `f64`.
    pub fn over_pow2(&self, k: i64) -> f64 {
        self.mantissa * 2f64.powf((self.exp2 - k) as f64)
    }
}

/// Bounded oscillating factor `h(n)` of an approximant `h(n) n^tau beta^n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Prefactor {
    Constant(f64),
    /// Different constants along even and odd `n`.
    ByParity { even: f64, odd: f64 },
}

impl Prefactor {
    pub fn at(&self, n: usize) -> f64 {
        match *self {
            Prefactor::Constant(c) => c,
            Prefactor::ByParity { even, odd } => {
                if n % 2 == 0 {
                    even
                } else {
                    odd
                }
            }
        }
    }

    fn values(&self) -> [f64; 2] {
        [self.at(0), self.at(1)]
    }
}

/// `h(n) * n^tau * beta^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Approximant {
    pub tau: Ratio<i64>,
    pub beta: u64,
    pub prefactor: Prefactor,
    pub label: String,
}

fn sqrt_two_over_pi() -> f64 {
    (2.0 / PI).sqrt()
}

fn check_ell(ell: u64) -> Result<()> {
    if ell < 2 {
        return Err(Error::ModulusTooSmall { ell, min: 2 });
    }
    Ok(())
}

impl Approximant {
    fn a1(prefactor: Prefactor, label: String) -> Self {
        Self {
            tau: Ratio::new(-1, 2),
            beta: 2,
            prefactor,
            label,
        }
    }

    fn scale(factor: Prefactor, by: f64) -> Prefactor {
        match factor {
            Prefactor::Constant(c) => Prefactor::Constant(c * by),
            Prefactor::ByParity { even, odd } => Prefactor::ByParity {
                even: even * by,
                odd: odd * by,
            },
        }
    }

    /// `a_n ~ sqrt(2/pi) n^{-1/2} 2^n`.
    pub fn classical() -> Self {
        Self::a1(Prefactor::Constant(sqrt_two_over_pi()), "a_n".into())
    }

    /// Growth of `b_n(ell)`: `(ell+1)/(2 ell)` times the classical one for
    /// odd `ell`, `(ell + 1 + (-1)^{n+1})/(2 ell)` for even `ell`.
    pub fn modular(ell: u64) -> Result<Self> {
        check_ell(ell)?;
        let l = ell as f64;
        let factor = if ell % 2 == 1 {
            Prefactor::Constant((l + 1.0) / (2.0 * l))
        } else {
            Prefactor::ByParity {
                even: l / (2.0 * l),
                odd: (l + 2.0) / (2.0 * l),
            }
        };
        Ok(Self::a1(
            Self::scale(factor, sqrt_two_over_pi()),
            format!("b_n(ell={ell})"),
        ))
    }

    /// Growth of the residue sum `c_n^(r)` for modulus `ell`.
    pub fn residue(ell: u64, r: u64) -> Result<Self> {
        check_ell(ell)?;
        if r >= ell {
            return Err(Error::ResidueOutOfRange { r, ell });
        }
        let l = ell as f64;
        let factor = if ell % 2 == 1 {
            Prefactor::Constant(1.0 / l)
        } else if r % 2 == 0 {
            Prefactor::ByParity {
                even: 2.0 / l,
                odd: 0.0,
            }
        } else {
            Prefactor::ByParity {
                even: 0.0,
                odd: 2.0 / l,
            }
        };
        Ok(Self::a1(
            Self::scale(factor, sqrt_two_over_pi()),
            format!("c_n^({r})(ell={ell})"),
        ))
    }

    /// Growth of the wall count `w_n = c_n^(ell-1)`.
    pub fn wall(ell: u64) -> Result<Self> {
        let mut a = Self::residue(ell, ell.saturating_sub(1))?;
        a.label = format!("w_n(ell={ell})");
        Ok(a)
    }

    /// `h(n)`, the approximant divided by `n^tau beta^n`.
    pub fn normalized(&self, n: usize) -> f64 {
        self.prefactor.at(n)
    }

    pub fn value(&self, n: usize) -> Result<ScaledReal> {
        if n == 0 {
            return Err(Error::InvalidArgument("approximants start at n = 1".into()));
        }
        let h = self.prefactor.at(n);
        if h == 0.0 {
            return Ok(ScaledReal::ZERO);
        }
        let tau = *self.tau.numer() as f64 / *self.tau.denom() as f64;
        let log2 = h.log2() + tau * (n as f64).log2() + n as f64 * (self.beta as f64).log2();
        let exp2 = log2.floor();
        Ok(ScaledReal::new(2f64.powf(log2 - exp2), exp2 as i64))
    }

    /// `prefactor` stays in `(0, inf)` for the parity classes it is nonzero on.
    pub fn prefactor_bounds(&self) -> (f64, f64) {
        let v = self.prefactor.values();
        (v[0].min(v[1]), v[0].max(v[1]))
    }
}

pub fn a_approx(n: usize) -> Result<ScaledReal> {
    Approximant::classical().value(n)
}

pub fn b_approx(ell: u64, n: usize) -> Result<ScaledReal> {
    Approximant::modular(ell)?.value(n)
}

pub fn c_approx(ell: u64, r: u64, n: usize) -> Result<ScaledReal> {
    Approximant::residue(ell, r)?.value(n)
}

pub fn w_approx(ell: u64, n: usize) -> Result<ScaledReal> {
    Approximant::wall(ell)?.value(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// `lim w_n / b_n` along the given parity class of `n`.
pub fn w_ratio_limit(ell: u64, parity: Parity) -> Result<BigRational> {
    check_ell(ell)?;
    let r = |p: u64, q: u64| BigRational::new(BigInt::from(p), BigInt::from(q));
    Ok(match (ell % 2, parity) {
        (1, _) => r(2, ell + 1),
        (_, Parity::Even) => BigRational::zero(),
        (_, Parity::Odd) => r(4, ell + 2),
    })
}

/// `x / (n^tau beta^n)` for an exact count `x`, as an `f64`.
pub fn normalize_exact(x: &BigUint, n: usize, tau: Ratio<i64>, beta: u64) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let q = BigRational::new(BigInt::from(x.clone()), BigInt::from(BigUint::from(beta).pow(n as u32)));
    let tau = *tau.numer() as f64 / *tau.denom() as f64;
    to_f64(&q) * (n as f64).powf(-tau)
}

/// `x / (n^{-1/2} 2^n)`.
pub fn normalize_a1(x: &BigUint, n: usize) -> f64 {
    normalize_exact(x, n, Ratio::new(-1, 2), 2)
}

/// Normalized errors of an exact sequence against an approximant.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub label: String,
    pub window: (usize, usize),
    /// `(n, e_n)` with `e_n = |exact_n - approx_n| / (n^tau beta^n)`.
    pub errors: Vec<(usize, f64)>,
    /// `max n * e_n` over the window.
    pub constant: f64,
    pub lower_half_max: f64,
    pub upper_half_max: f64,
    pub pass: bool,
}

/// Allowed growth of `max n e_n` from the lower to the upper half-window.
pub const TREND_FACTOR: f64 = 1.2;

pub fn error_envelope(
    exact: &GrowthSequence,
    approx: &Approximant,
    window: (usize, usize),
) -> Result<ErrorReport> {
    let (lo, hi) = window;
    if lo == 0 || lo > hi {
        return Err(Error::EmptyWindow { lo, hi });
    }
    if hi >= exact.len() {
        return Err(Error::RowOutOfRange {
            n: hi,
            max: exact.len().saturating_sub(1),
        });
    }
    let errors: Vec<(usize, f64)> = (lo..=hi)
        .map(|n| {
            let x = normalize_exact(&exact.values[n], n, approx.tau, approx.beta);
            (n, (x - approx.normalized(n)).abs())
        })
        .collect();
    let mid = lo + (hi - lo) / 2;
    let scaled = |(n, e): &(usize, f64)| *n as f64 * e;
    let max_of = |it: &mut dyn Iterator<Item = f64>| it.fold(0.0f64, f64::max);
    let lower_half_max = max_of(&mut errors.iter().filter(|(n, _)| *n <= mid).map(scaled));
    let upper_half_max = max_of(&mut errors.iter().filter(|(n, _)| *n > mid).map(scaled));
    let constant = lower_half_max.max(upper_half_max);
    Ok(ErrorReport {
        label: format!("{} vs {}", exact.label, approx.label),
        window,
        errors,
        constant,
        lower_half_max,
        upper_half_max,
        pass: upper_half_max <= TREND_FACTOR * lower_half_max,
    })
}

/// One line of a ratio table: `exact_n / approx_n` and `n |ratio - 1|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioRow {
    pub n: usize,
    pub ratio: f64,
    pub n_times_error: f64,
}

/// Ratios against the approximant for `n` in `window`; rows where the
/// approximant vanishes are skipped.
pub fn ratio_table(
    exact: &GrowthSequence,
    approx: &Approximant,
    window: (usize, usize),
) -> Result<Vec<RatioRow>> {
    let (lo, hi) = window;
    if lo == 0 || lo > hi {
        return Err(Error::EmptyWindow { lo, hi });
    }
    if hi >= exact.len() {
        return Err(Error::RowOutOfRange {
            n: hi,
            max: exact.len().saturating_sub(1),
        });
    }
    Ok((lo..=hi)
        .filter(|&n| approx.normalized(n) != 0.0)
        .map(|n| {
            let ratio = normalize_exact(&exact.values[n], n, approx.tau, approx.beta)
                / approx.normalized(n);
            RatioRow {
                n,
                ratio,
                n_times_error: n as f64 * (ratio - 1.0).abs(),
            }
        })
        .collect())
}

// ---------------------------------------------------------------------------
// Spectral integral

/// Default working precision of [`spectral_an`], in decimal digits.
pub const DEFAULT_DIGITS: u32 = 32;

/// Largest `n` accepted by [`spectral_an`].
pub const SPECTRAL_MAX_N: usize = 60;

const RM: RoundingMode = RoundingMode::ToEven;
const GAUSS_POINTS: usize = 16;
const MAX_PANELS: usize = 4096;

/// Result of the spectral quadrature.
#[derive(Debug, Clone)]
pub struct SpectralValue {
    pub n: usize,
    pub digits: u32,
    pub value: BigFloat,
    /// Number of Gauss panels evaluated.
    pub panels: usize,
}

impl SpectralValue {
    pub fn to_f64(&self) -> f64 {
        bigfloat_to_f64(&self.value)
    }

    /// `|value - exact| / exact`, evaluated at working precision.
    pub fn relative_error(&self, exact: &BigUint) -> f64 {
        let p = bits_for(self.digits);
        let mut cc = Consts::new().expect("constant cache");
        let e = BigFloat::parse(&exact.to_string(), Radix::Dec, p, RM, &mut cc);
        let diff = self.value.sub(&e, p, RM).abs();
        bigfloat_to_f64(&diff.div(&e, p, RM))
    }
}

fn bits_for(digits: u32) -> usize {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64
}

pub fn bigfloat_to_f64(x: &BigFloat) -> f64 {
    x.to_string().parse().unwrap_or(f64::NAN)
}

struct GaussRule {
    nodes: Vec<BigFloat>,
    weights: Vec<BigFloat>,
}

/// Legendre `P_m(x)` and `P_m'(x)` by the three-term recurrence.
fn legendre(m: usize, x: &BigFloat, p: usize) -> (BigFloat, BigFloat) {
    let one = BigFloat::from_u64(1, p);
    let mut p0 = one.clone();
    let mut p1 = x.clone();
    for k in 2..=m {
        let kf = BigFloat::from_u64(k as u64, p);
        let a = BigFloat::from_u64(2 * k as u64 - 1, p).mul(x, p, RM).mul(&p1, p, RM);
        let b = BigFloat::from_u64(k as u64 - 1, p).mul(&p0, p, RM);
        let p2 = a.sub(&b, p, RM).div(&kf, p, RM);
        p0 = p1;
        p1 = p2;
    }
    // P_m' = m (x P_m - P_{m-1}) / (x^2 - 1)
    let mf = BigFloat::from_u64(m as u64, p);
    let num = mf.mul(&x.mul(&p1, p, RM).sub(&p0, p, RM), p, RM);
    let den = x.mul(x, p, RM).sub(&one, p, RM);
    (p1, num.div(&den, p, RM))
}

impl GaussRule {
    fn new(m: usize, p: usize) -> Self {
        let guard = p + 64;
        let two = BigFloat::from_u64(2, guard);
        let one = BigFloat::from_u64(1, guard);
        let mut nodes = Vec::with_capacity(m);
        let mut weights = Vec::with_capacity(m);
        let tol_exp = -(p as i64);
        for i in 1..=m {
            let guess = (PI * (i as f64 - 0.25) / (m as f64 + 0.5)).cos();
            let mut x = BigFloat::from_f64(guess, guard);
            for _ in 0..100 {
                let (pm, dpm) = legendre(m, &x, guard);
                let dx = pm.div(&dpm, guard, RM);
                x = x.sub(&dx, guard, RM);
                let small = dx.is_zero()
                    || dx
                        .exponent()
                        .is_some_and(|e| (e as i64) < tol_exp);
                if small {
                    break;
                }
            }
            let (_, dpm) = legendre(m, &x, guard);
            let w = two.div(
                &one.sub(&x.mul(&x, guard, RM), guard, RM)
                    .mul(&dpm.mul(&dpm, guard, RM), guard, RM),
                guard,
                RM,
            );
            nodes.push(x);
            weights.push(w);
        }
        Self { nodes, weights }
    }

    fn integrate<F: FnMut(&BigFloat) -> BigFloat>(
        &self,
        f: &mut F,
        a: &BigFloat,
        b: &BigFloat,
        p: usize,
    ) -> BigFloat {
        let two = BigFloat::from_u64(2, p);
        let half = b.sub(a, p, RM).div(&two, p, RM);
        let mid = b.add(a, p, RM).div(&two, p, RM);
        let mut acc = BigFloat::from_u64(0, p);
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let t = mid.add(&half.mul(x, p, RM), p, RM);
            acc = acc.add(&w.mul(&f(&t), p, RM), p, RM);
        }
        acc.mul(&half, p, RM)
    }
}

/// `a_n` from the spectral integral
/// `(2/pi) * int_0^pi (2 cos t)^n (1 + cos t)/2 dt`, by adaptive
/// Gauss-Legendre quadrature at `digits` decimal digits of working precision.
/// The range is split at `pi/2`, where the integrand changes sign for odd `n`.
pub fn spectral_an(n: usize, digits: u32) -> Result<SpectralValue> {
    if n > SPECTRAL_MAX_N {
        return Err(Error::InvalidArgument(format!(
            "spectral quadrature supports n <= {SPECTRAL_MAX_N}, got {n}"
        )));
    }
    if digits < 16 {
        return Err(Error::InvalidArgument(format!(
            "quadrature needs at least 16 digits, got {digits}"
        )));
    }
    let p = bits_for(digits);
    let mut cc = Consts::new().expect("constant cache");
    let pi = cc.pi(p, RM);
    let two = BigFloat::from_u64(2, p);
    let one = BigFloat::from_u64(1, p);
    let zero = BigFloat::from_u64(0, p);
    let half_pi = pi.div(&two, p, RM);
    let rule = GaussRule::new(GAUSS_POINTS, p);

    // |integrand| <= 2^n on the whole range; the target is relative to a_n,
    // which is at least 2^n / (n + 1).
    let tol = BigFloat::parse(&format!("1e-{digits}"), Radix::Dec, p, RM, &mut cc)
        .mul(&two.powi(n, p, RM), p, RM)
        .div(&BigFloat::from_u64(n as u64 + 1, p), p, RM);

    let mut integrand = |t: &BigFloat| {
        let c = t.cos(p, RM, &mut cc);
        let base = two.mul(&c, p, RM).powi(n, p, RM);
        base.mul(&one.add(&c, p, RM), p, RM).div(&two, p, RM)
    };

    let mut total = zero.clone();
    let mut panels = 0usize;
    for (a, b) in [(zero.clone(), half_pi.clone()), (half_pi.clone(), pi.clone())] {
        let whole = rule.integrate(&mut integrand, &a, &b, p);
        panels += 1;
        let mut stack = vec![(a, b, whole, 0u32)];
        while let Some((a, b, whole, depth)) = stack.pop() {
            let mid = a.add(&b, p, RM).div(&two, p, RM);
            let left = rule.integrate(&mut integrand, &a, &mid, p);
            let right = rule.integrate(&mut integrand, &mid, &b, p);
            panels += 2;
            let refined = left.add(&right, p, RM);
            let diff = refined.sub(&whole, p, RM).abs();
            let local_tol = tol.div(&BigFloat::from_u64(1u64 << depth.min(62), p), p, RM);
            if diff <= local_tol {
                total = total.add(&refined, p, RM);
            } else if panels > MAX_PANELS {
                return Err(Error::QuadratureDiverged {
                    digits,
                    evaluations: panels,
                });
            } else {
                stack.push((a, mid.clone(), left, depth + 1));
                stack.push((mid, b, right, depth + 1));
            }
        }
    }
    let value = total.mul(&two, p, RM).div(&pi, p, RM);
    Ok(SpectralValue {
        n,
        digits,
        value,
        panels,
    })
}

/// `a_n` in floating point from the ratio `a_n / 2^n`, for reports.
pub fn a_over_pow2(x: &BigUint, n: usize) -> f64 {
    to_f64(&BigRational::new(
        BigInt::from(x.clone()),
        BigInt::from(BigUint::from(1u8) << n),
    ))
}

/// Rational to `f64` for small values such as ratio limits.
pub fn rational_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}
