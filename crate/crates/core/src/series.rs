//! Exact truncated power series, Laurent polynomials and Chebyshev
//! polynomials of the second kind over `Q`, and the generating functions
//! built from them.
//!
//! Everything here is exact. The only floating point in the module is the
//! root isolation in [`real_roots`], which runs exact Sturm counts on
//! rational intervals and reports the final brackets as `f64`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::walks;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Formats a rational as `"p/q"` with `q >= 1`.
pub fn rational_to_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `"p/q"` or a bare integer `"p"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(p, q))
}

// ---------------------------------------------------------------------------
// Dense polynomials

/// Dense polynomial with rational coefficients, lowest degree first. The
/// zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// `c * x^k`
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let dd = d
            .degree()
            .ok_or_else(|| Error::InvalidArgument("division by the zero polynomial".into()))?;
        let lead = d.leading().expect("nonzero divisor").clone();
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok((Poly::default(), Poly::default()));
        };
        if nd < dd {
            return Ok((Poly::default(), self.clone()));
        }
        let mut quot = vec![BigRational::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] / &lead;
            if c.is_zero() {
                continue;
            }
            for (i, di) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * di;
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        Ok((Poly::new(quot), Poly::new(rem)))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::default();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

// ---------------------------------------------------------------------------
// Laurent polynomials

/// Finite Laurent polynomial over `Q`; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigRational::one(), 0)
    }

    pub fn monomial(c: BigRational, exp: i64) -> Self {
        let mut p = Self::default();
        p.add_term(exp, c);
        p
    }

    fn add_term(&mut self, exp: i64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn terms(&self) -> &BTreeMap<i64, BigRational> {
        &self.terms
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.terms.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Converts to an ordinary polynomial; fails on negative exponents.
    pub fn to_poly(&self) -> Result<Poly> {
        match self.min_exp() {
            None => Ok(Poly::default()),
            Some(e) if e < 0 => Err(Error::InvalidArgument(format!(
                "Laurent polynomial has a term x^{e}"
            ))),
            Some(_) => {
                let top = self.max_exp().unwrap_or(0) as usize;
                Ok(Poly::new((0..=top).map(|i| self.coeff(i as i64)).collect()))
            }
        }
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| match e {
                0 => format!("{c}"),
                _ => format!("{c}*x^{e}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

// ---------------------------------------------------------------------------
// Chebyshev polynomials of the second kind

/// `U_j` with integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChebPoly {
    index: usize,
    coeffs: Vec<BigInt>,
}

impl ChebPoly {
    pub fn index(&self) -> usize {
        self.index
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("U_j is never zero")
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    /// `U_j(1/(2x))` as a Laurent polynomial in `x`.
    pub fn at_half_reciprocal(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        let mut pow2 = BigInt::one();
        for (i, c) in self.coeffs.iter().enumerate() {
            out.add_term(-(i as i64), BigRational::new(c.clone(), pow2.clone()));
            pow2 <<= 1;
        }
        out
    }
}

/// All of `U_0, ..., U_j` from `U_0 = 1`, `U_1 = 2x`,
/// `U_j = 2x U_{j-1} - U_{j-2}`.
pub fn cheb_u_upto(j: usize) -> Vec<ChebPoly> {
    let mut out: Vec<Vec<BigInt>> = Vec::with_capacity(j + 1);
    out.push(vec![BigInt::one()]);
    if j >= 1 {
        out.push(vec![BigInt::zero(), BigInt::from(2)]);
    }
    for k in 2..=j {
        let mut next = vec![BigInt::zero(); k + 1];
        for (i, c) in out[k - 1].iter().enumerate() {
            next[i + 1] += c * 2;
        }
        for (i, c) in out[k - 2].iter().enumerate() {
            next[i] -= c;
        }
        out.push(next);
    }
    out.into_iter()
        .enumerate()
        .map(|(index, coeffs)| ChebPoly { index, coeffs })
        .collect()
}

pub fn cheb_u(j: usize) -> ChebPoly {
    cheb_u_upto(j).pop().expect("at least U_0")
}

/// `R_{ell-j}` from `R_{ell-2} = 1`, `R_{ell-3} = 1/x` and
/// `R_{ell-j} = x^{-1} R_{ell-j+1} - R_{ell-j+2}`, for `2 <= j <= ell`.
pub fn r_poly(ell: u64, j: u64) -> Result<LaurentPoly> {
    if ell < 2 {
        return Err(Error::ModulusTooSmall { ell, min: 2 });
    }
    if !(2..=ell).contains(&j) {
        return Err(Error::IndexOutOfRange { j, lo: 2, hi: ell });
    }
    let x_inv = LaurentPoly::monomial(BigRational::one(), -1);
    let mut older = LaurentPoly::one();
    if j == 2 {
        return Ok(older);
    }
    let mut newer = x_inv.clone();
    for _ in 4..=j {
        let next = &(&x_inv * &newer) - &older;
        older = newer;
        newer = next;
    }
    Ok(newer)
}

// ---------------------------------------------------------------------------
// Truncated power series

/// Power series over `Q` truncated after degree `truncation`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    coeffs: Vec<BigRational>,
}

impl RationalSeries {
    pub fn zero(truncation: usize) -> Self {
        Self {
            coeffs: vec![BigRational::zero(); truncation + 1],
        }
    }

    pub fn one(truncation: usize) -> Self {
        let mut s = Self::zero(truncation);
        s.coeffs[0] = BigRational::one();
        s
    }

    /// Takes the first `truncation + 1` coefficients, padding with zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>, truncation: usize) -> Self {
        coeffs.resize(truncation + 1, BigRational::zero());
        Self { coeffs }
    }

    pub fn from_poly(p: &Poly, truncation: usize) -> Self {
        Self::from_coeffs(p.coeffs().to_vec(), truncation)
    }

    pub fn from_integers(values: &[BigUint], truncation: usize) -> Self {
        Self::from_coeffs(
            values
                .iter()
                .map(|v| BigRational::from_integer(BigInt::from(v.clone())))
                .collect(),
            truncation,
        )
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    /// Coefficients as integers; fails if any is not integral or negative.
    pub fn to_naturals(&self) -> Result<Vec<BigUint>> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.is_integer() && !c.is_negative() {
                    Ok(c.to_integer().magnitude().clone())
                } else {
                    Err(Error::InvalidArgument(format!(
                        "coefficient {} is not a natural number",
                        rational_to_string(c)
                    )))
                }
            })
            .collect()
    }

    pub fn truncate(&self, truncation: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), truncation)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.truncation() != other.truncation() {
            return Err(Error::TruncationMismatch(self.truncation(), other.truncation()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let n = self.truncation();
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(Self { coeffs: out })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// `self / d`; the constant term of `d` must be nonzero.
    pub fn div(&self, d: &Self) -> Result<Self> {
        self.check_same(d)?;
        let d0 = d.coeffs[0].clone();
        if d0.is_zero() {
            return Err(Error::BadConstantTerm {
                expected: "nonzero".into(),
                found: "0".into(),
            });
        }
        let n = self.truncation();
        let mut q: Vec<BigRational> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k].clone();
            for i in 1..=k {
                let di = &d.coeffs[i];
                if !di.is_zero() {
                    acc -= di * &q[k - i];
                }
            }
            q.push(acc / &d0);
        }
        Ok(Self { coeffs: q })
    }

    /// The square root with constant term 1; needs constant term 1.
    pub fn sqrt(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::BadConstantTerm {
                expected: "1".into(),
                found: rational_to_string(&self.coeffs[0]),
            });
        }
        let n = self.truncation();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let mut t: Vec<BigRational> = Vec::with_capacity(n + 1);
        t.push(BigRational::one());
        for k in 1..=n {
            let mut acc = self.coeffs[k].clone();
            for i in 1..k {
                acc -= &t[i] * &t[k - i];
            }
            t.push(acc * &half);
        }
        Ok(Self { coeffs: t })
    }

    /// Coefficients as `"p/q"` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(rational_to_string).collect()
    }

    pub fn from_strings<S: AsRef<str>>(items: &[S]) -> Result<Self> {
        if items.is_empty() {
            return Err(Error::Parse("empty series".into()));
        }
        let coeffs = items
            .iter()
            .map(|s| parse_rational(s.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { coeffs })
    }
}

// ---------------------------------------------------------------------------
// Generating functions

/// `a(x, 0) = (1 - sqrt(1 - 4x^2)) / (2x^2)`, the generating function of
/// walks returning to the origin.
pub fn gf_a_half_line(truncation: usize) -> RationalSeries {
    let inner = RationalSeries::from_poly(&Poly::from_ints(&[1, 0, -4]), truncation + 2);
    let root = inner.sqrt().expect("constant term is 1");
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let coeffs = (0..=truncation)
        .map(|k| -root.coeff(k + 2) * &half)
        .collect();
    RationalSeries::from_coeffs(coeffs, truncation)
}

/// `sum_{k=0}^{top} x^{shift} U_k(1/(2x))` as an ordinary polynomial.
fn cleared_cheb_sum(us: &[ChebPoly], top: usize, shift: i64) -> Poly {
    let sum = us[..=top]
        .iter()
        .fold(LaurentPoly::zero(), |acc, u| &acc + &u.at_half_reciprocal());
    sum.shift(shift)
        .to_poly()
        .expect("x^shift clears every U_k with k <= shift")
}

/// The pieces of the rational generating function of `b_n(ell)` after
/// clearing Laurent denominators by `x^{ell-1}`:
/// `f = (wall_factor * C + constant_part) / denominator`,
/// where `C(x) = sum_n c_n^(ell-1) x^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GfBParts {
    pub wall_factor: Poly,
    pub constant_part: Poly,
    pub denominator: Poly,
}

pub fn gf_b_parts(ell: u64) -> Result<GfBParts> {
    if ell < 3 {
        return Err(Error::ModulusTooSmall { ell, min: 3 });
    }
    let top = (ell - 1) as usize;
    let us = cheb_u_upto(top);
    Ok(GfBParts {
        wall_factor: cleared_cheb_sum(&us, top, top as i64),
        constant_part: cleared_cheb_sum(&us, top - 1, top as i64 - 1),
        denominator: cleared_cheb_sum(&us[top..], 0, top as i64),
    })
}

/// Truncated generating function `sum_n b_n(ell) x^n`, given the wall
/// residue series `c_series = sum_n c_n^(ell-1) x^n` at the same truncation.
pub fn gf_b(ell: u64, truncation: usize, c_series: &RationalSeries) -> Result<RationalSeries> {
    let parts = gf_b_parts(ell)?;
    let c = c_series.truncate(truncation);
    let num = RationalSeries::from_poly(&parts.wall_factor, truncation)
        .mul(&c)?
        .add(&RationalSeries::from_poly(&parts.constant_part, truncation))?;
    num.div(&RationalSeries::from_poly(&parts.denominator, truncation))
}

/// `sum_n c_n^(ell-1) x^n`, exact, from the walk recursion.
pub fn wall_series(ell: u64, truncation: usize) -> Result<RationalSeries> {
    let sums = walks::streamed_sums(ell, truncation)?;
    Ok(RationalSeries::from_integers(&sums.wall.values, truncation))
}

fn one_plus_minus_power(sign: i64, k: usize) -> Poly {
    &Poly::from_ints(&[1]) + &Poly::monomial(rat(sign), k)
}

/// Numerator `(1 - w^{ell-1})(1 + w^p)` and denominator
/// `(1 - w^{p-1})(1 + w^ell)` of the mixed-case factor.
pub fn mixed_factor_parts(p: u64, ell: u64) -> Result<(Poly, Poly)> {
    if p < 2 {
        return Err(Error::InvalidArgument(format!("mixed factor needs p >= 2, got {p}")));
    }
    if ell < 2 {
        return Err(Error::ModulusTooSmall { ell, min: 2 });
    }
    let (p, ell) = (p as usize, ell as usize);
    let num = &one_plus_minus_power(-1, ell - 1) * &one_plus_minus_power(1, p);
    let den = &one_plus_minus_power(-1, p - 1) * &one_plus_minus_power(1, ell);
    Ok((num, den))
}

/// Power-series expansion in `w` of
/// `(1 - w^{ell-1})(1 + w^p) / ((1 - w^{p-1})(1 + w^ell))`.
/// All four factors have constant term 1.
pub fn mixed_factor_series(p: u64, ell: u64, truncation: usize) -> Result<RationalSeries> {
    let (num, den) = mixed_factor_parts(p, ell)?;
    RationalSeries::from_poly(&num, truncation).div(&RationalSeries::from_poly(&den, truncation))
}

/// Value of the mixed factor as `w -> 1`: cancel `(1 - w)` from numerator
/// and denominator by exact division and evaluate at `w = 1`.
pub fn mixed_factor_limit(p: u64, ell: u64) -> Result<BigRational> {
    let (num, den) = mixed_factor_parts(p, ell)?;
    let one_minus_w = Poly::from_ints(&[1, -1]);
    let (nq, nr) = num.div_rem(&one_minus_w)?;
    let (dq, dr) = den.div_rem(&one_minus_w)?;
    debug_assert!(nr.is_zero() && dr.is_zero());
    let one = BigRational::one();
    let d1 = dq.eval(&one);
    if d1.is_zero() {
        return Err(Error::InvalidArgument("denominator vanishes at w = 1".into()));
    }
    Ok(nq.eval(&one) / d1)
}

// ---------------------------------------------------------------------------
// Real roots

/// Sturm sequence of a squarefree-or-not polynomial (distinct roots are
/// counted once).
pub fn sturm_sequence(p: &Poly) -> Vec<Poly> {
    let mut seq = vec![p.clone(), p.derivative()];
    while let Some(last) = seq.last() {
        if last.degree().unwrap_or(0) == 0 {
            break;
        }
        let prev = &seq[seq.len() - 2];
        let (_, r) = prev.div_rem(last).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    seq.retain(|q| !q.is_zero());
    seq
}

fn sign_changes(seq: &[Poly], x: &BigRational) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|q| q.eval(x))
        .filter(|v| !v.is_zero())
        .map(|v| if v.is_positive() { 1 } else { -1 })
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Number of distinct real roots in the half-open interval `(a, b]`.
pub fn count_roots(seq: &[Poly], a: &BigRational, b: &BigRational) -> usize {
    sign_changes(seq, a).saturating_sub(sign_changes(seq, b))
}

/// Distinct real roots of `p`, each located to within `tol` by exact Sturm
/// bisection and reported as the bracket midpoint.
pub fn real_roots(p: &Poly, tol: f64) -> Result<Vec<f64>> {
    let deg = p
        .degree()
        .ok_or_else(|| Error::InvalidArgument("zero polynomial has no isolated roots".into()))?;
    if deg == 0 {
        return Ok(Vec::new());
    }
    let lead = p.leading().expect("nonzero").abs();
    let bound = p.coeffs()[..deg]
        .iter()
        .map(|c| c.abs() / &lead)
        .fold(BigRational::zero(), |m, c| if c > m { c } else { m })
        + BigRational::one();
    let seq = sturm_sequence(p);
    let tol_q = BigRational::new(BigInt::one(), BigInt::from((1.0 / tol).ceil() as u64));
    let two = rat(2);
    let mut roots = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let c = count_roots(&seq, &lo, &hi);
        if c == 0 {
            continue;
        }
        if c == 1 && &hi - &lo < tol_q {
            let mid = (&lo + &hi) / &two;
            roots.push(to_f64(&mid));
            continue;
        }
        let mid = (&lo + &hi) / &two;
        stack.push((mid.clone(), hi));
        stack.push((lo, mid));
    }
    roots.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    Ok(roots)
}

/// Nearest `f64` to a rational of moderate size.
pub fn to_f64(q: &BigRational) -> f64 {
    let n = q.numer();
    let d = q.denom();
    let shift = (n.bits() as i64 - d.bits() as i64 - 60).max(0) as u32;
    let lshift = (d.bits() as i64 - n.bits() as i64 + 60).max(0) as u32;
    let scaled = ((n << lshift) / (d << shift)).to_string();
    let v: f64 = scaled.parse().unwrap_or(f64::NAN);
    v * 2f64.powi(shift as i32 - lshift as i32)
}

/// Real roots of the cleared denominator `x^{ell-1} U_{ell-1}(1/(2x))`.
pub fn denominator_roots(ell: u64, tol: f64) -> Result<Vec<f64>> {
    let parts = gf_b_parts(ell)?;
    real_roots(&parts.denominator, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cheb_small() {
        assert_eq!(cheb_u(0).coeffs(), ints(&[1]).as_slice());
        assert_eq!(cheb_u(1).coeffs(), ints(&[0, 2]).as_slice());
        assert_eq!(cheb_u(2).coeffs(), ints(&[-1, 0, 4]).as_slice());
        for j in 0..=50 {
            let u = cheb_u(j);
            assert_eq!(u.degree(), j);
            assert_eq!(*u.leading(), BigInt::one() << j);
            assert_eq!(u.eval(&BigRational::one()), rat(j as i64 + 1));
        }
    }

    #[test]
    fn r_poly_small() {
        assert_eq!(r_poly(7, 2).unwrap(), LaurentPoly::one());
        assert_eq!(r_poly(7, 3).unwrap(), LaurentPoly::monomial(rat(1), -1));
        let expected = &LaurentPoly::monomial(rat(1), -2) - &LaurentPoly::one();
        assert_eq!(r_poly(7, 4).unwrap(), expected);
        assert!(r_poly(7, 1).is_err());
        assert!(r_poly(7, 8).is_err());
        assert!(r_poly(1, 2).is_err());
    }

    #[test]
    fn r_poly_is_cheb_at_half_reciprocal() {
        for ell in 2..=12u64 {
            for j in 2..=ell {
                let direct = cheb_u((j - 2) as usize).at_half_reciprocal();
                assert_eq!(r_poly(ell, j).unwrap(), direct, "ell={ell} j={j}");
            }
        }
    }

    #[test]
    fn sqrt_of_one_minus_four_x_squared() {
        let s = RationalSeries::from_poly(&Poly::from_ints(&[1, 0, -4]), 8);
        let t = s.sqrt().unwrap();
        let expected: Vec<BigRational> = [1, 0, -2, 0, -2, 0, -4, 0, -10].iter().map(|&c| rat(c)).collect();
        assert_eq!(t.coeffs(), expected.as_slice());
        assert_eq!(RationalSeries::one(5).sqrt().unwrap(), RationalSeries::one(5));
        let bad = RationalSeries::from_poly(&Poly::from_ints(&[2, 1]), 4);
        assert!(matches!(bad.sqrt(), Err(Error::BadConstantTerm { .. })));
    }

    #[test]
    fn division_checks() {
        let n = RationalSeries::from_poly(&Poly::from_ints(&[1, 2, 3]), 10);
        let d = RationalSeries::from_poly(&Poly::from_ints(&[3, -1, 5, 7]), 10);
        let q = n.div(&d).unwrap();
        assert_eq!(q.mul(&d).unwrap(), n);
        let z = RationalSeries::from_poly(&Poly::from_ints(&[0, 1]), 10);
        assert!(n.div(&z).is_err());
        assert!(n.add(&RationalSeries::one(3)).is_err());
    }

    #[test]
    fn catalan_generating_function() {
        let a = gf_a_half_line(16);
        let expected: Vec<BigRational> =
            [1, 0, 1, 0, 2, 0, 5, 0, 14, 0, 42, 0, 132, 0, 429, 0, 1430].iter().map(|&c| rat(c)).collect();
        assert_eq!(a.coeffs(), expected.as_slice());
    }

    #[test]
    fn gf_b_small() {
        let expect = |ell: u64, v: &[u64]| {
            let c = wall_series(ell, 10).unwrap();
            let f = gf_b(ell, 10, &c).unwrap().to_naturals().unwrap();
            let v: Vec<BigUint> = v.iter().map(|&x| BigUint::from(x)).collect();
            assert_eq!(f, v, "ell={ell}");
        };
        expect(3, &[1, 1, 2, 2, 5, 6, 15, 21, 50, 77, 176]);
        expect(4, &[1, 1, 2, 3, 5, 9, 14, 29, 43, 99, 142]);
        expect(5, &[1, 1, 2, 3, 6, 9, 19, 28, 62, 91, 208]);
        assert!(gf_b(2, 10, &wall_series(2, 10).unwrap()).is_err());
    }

    #[test]
    fn cleared_denominator_has_unit_constant_term() {
        for ell in 3..=12 {
            let parts = gf_b_parts(ell).unwrap();
            assert!(parts.denominator.coeff(0).is_one());
        }
    }

    #[test]
    fn mixed_factor() {
        assert_eq!(mixed_factor_series(5, 5, 20).unwrap(), RationalSeries::one(20));
        assert_eq!(mixed_factor_limit(2, 5).unwrap(), rat(4));
        assert_eq!(mixed_factor_limit(4, 4).unwrap(), rat(1));
        assert!(mixed_factor_limit(1, 5).is_err());
        for p in 2..8 {
            for ell in 2..8 {
                let s = mixed_factor_series(p, ell, 12).unwrap();
                assert!(s.coeff(0).is_one());
            }
        }
    }

    #[test]
    fn denominator_roots_outside_half_disc() {
        for ell in 3..=10u64 {
            let roots = denominator_roots(ell, 1e-9).unwrap();
            // U_{ell-1} has roots y = cos(k pi / ell); for even ell the root
            // y = 0 has no preimage x = 1/(2y).
            let expected = if ell % 2 == 0 { ell - 2 } else { ell - 1 };
            assert_eq!(roots.len() as u64, expected, "ell={ell}");
            for (k, r) in roots.iter().enumerate() {
                assert!(r.abs() > 0.5 + 1e-9, "ell={ell} root {k} = {r}");
            }
        }
    }

    #[test]
    fn rational_strings() {
        let q = parse_rational("-3/6").unwrap();
        assert_eq!(rational_to_string(&q), "-1/2");
        assert_eq!(parse_rational("7").unwrap(), rat(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        let s = RationalSeries::from_strings(&["1/1", "0/1", "5/3"]).unwrap();
        assert_eq!(RationalSeries::from_strings(&s.to_strings()).unwrap(), s);
    }
}
