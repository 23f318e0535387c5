//! Tilting modules for quantum `sl2` at a root of unity, at the level of
//! characters.
//!
//! Writing `k + 1 = a * ell + b` with `0 <= b < ell`, the indecomposable
//! tilting module `T(k)` has Weyl factors
//!
//! * `Delta(k)` alone when `a = 0` (fundamental alcove) or `b = 0` (wall);
//! * `Delta(k)` and `Delta(j)` with `j + 1 = a * ell - b` otherwise.
//!
//! Tensor products are computed on Weyl factors with the Clebsch-Gordan rule
//! and then split back into indecomposable tiltings by peeling off the
//! highest weight, which is unique because the factor matrix is
//! unitriangular.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use crate::asymptotics::normalize_exact;
use crate::error::{Error, Result};

/// Highest weight of an `sl2` module; `Delta(k)` has dimension `k + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Weight(pub u64);

impl Weight {
    pub fn weyl_dim(self) -> u64 {
        self.0 + 1
    }

    /// `(a, b)` with `k + 1 = a * ell + b`, `0 <= b < ell`.
    pub fn digits(self, ell: u64) -> (u64, u64) {
        ((self.0 + 1) / ell, (self.0 + 1) % ell)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u64> for Weight {
    fn from(k: u64) -> Self {
        Weight(k)
    }
}

/// Position of `k + 1` relative to the alcove pattern of `ell`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    /// `k + 1 < ell`
    FundamentalAlcove,
    /// `ell | k + 1`
    Wall,
    /// `k + 1 > ell` and off the walls
    Interior,
}

pub fn region(k: Weight, ell: u64) -> Region {
    match k.digits(ell) {
        (0, _) => Region::FundamentalAlcove,
        (_, 0) => Region::Wall,
        _ => Region::Interior,
    }
}

/// `T(k)` is projective iff `k + 1 >= ell`.
pub fn is_projective(k: Weight, ell: u64) -> bool {
    k.0 + 1 >= ell
}

/// `T(k)` is simple (equivalently a Weyl module) iff it has one Weyl factor.
pub fn is_simple(k: Weight, ell: u64) -> bool {
    region(k, ell) != Region::Interior
}

fn check_ell(ell: u64) -> Result<()> {
    if ell < 2 {
        return Err(Error::ModulusTooSmall { ell, min: 2 });
    }
    Ok(())
}

/// Formal sum of Weyl modules: weight to multiplicity. Zero multiplicities
/// are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DeltaMultiset {
    map: BTreeMap<Weight, BigUint>,
}

impl DeltaMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(k: Weight) -> Self {
        let mut d = Self::new();
        d.add(k, BigUint::one());
        d
    }

    pub fn from_pairs<I: IntoIterator<Item = (u64, u64)>>(pairs: I) -> Self {
        let mut d = Self::new();
        for (k, m) in pairs {
            d.add(Weight(k), BigUint::from(m));
        }
        d
    }

    pub fn add(&mut self, k: Weight, m: BigUint) {
        if m.is_zero() {
            return;
        }
        *self.map.entry(k).or_default() += m;
    }

    fn subtract(&mut self, k: Weight, m: &BigUint) -> Result<()> {
        let slot = self.map.get_mut(&k).ok_or(Error::NotTilting { weight: k.0 })?;
        if &*slot < m {
            return Err(Error::NotTilting { weight: k.0 });
        }
        *slot -= m;
        if slot.is_zero() {
            self.map.remove(&k);
        }
        Ok(())
    }

    pub fn get(&self, k: Weight) -> BigUint {
        self.map.get(&k).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (Weight, &BigUint)> {
        self.map.iter().map(|(k, m)| (*k, m))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn max_weight(&self) -> Option<Weight> {
        self.map.keys().next_back().copied()
    }

    /// Total dimension `sum mult * (k + 1)`.
    pub fn dimension(&self) -> BigUint {
        self.map.iter().map(|(k, m)| m * k.weyl_dim()).sum()
    }
}

/// Multiplicities of indecomposable tilting modules in a tilting module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TiltingDecomposition {
    ell: u64,
    summands: BTreeMap<Weight, BigUint>,
}

impl TiltingDecomposition {
    pub fn from_summands<I: IntoIterator<Item = (Weight, BigUint)>>(ell: u64, items: I) -> Result<Self> {
        check_ell(ell)?;
        let mut summands: BTreeMap<Weight, BigUint> = BTreeMap::new();
        for (k, m) in items {
            if !m.is_zero() {
                *summands.entry(k).or_default() += m;
            }
        }
        Ok(Self { ell, summands })
    }

    pub fn ell(&self) -> u64 {
        self.ell
    }

    pub fn get(&self, k: Weight) -> BigUint {
        self.summands.get(&k).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = (Weight, &BigUint)> {
        self.summands.iter().map(|(k, m)| (*k, m))
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    /// Re-expands every `T(k)` into its Weyl factors.
    pub fn expand(&self) -> DeltaMultiset {
        let mut out = DeltaMultiset::new();
        for (k, m) in &self.summands {
            for (j, f) in delta_factors(*k, self.ell).iter() {
                out.add(j, m * f);
            }
        }
        out
    }

    /// `sum mult * dim T(k)`.
    pub fn dimension(&self) -> BigUint {
        self.summands
            .iter()
            .map(|(k, m)| m * dim_tilting(*k, self.ell))
            .sum()
    }

    /// Whether every summand lies in the projective cone.
    pub fn all_projective(&self) -> bool {
        self.summands.keys().all(|k| is_projective(*k, self.ell))
    }
}

/// Weyl factors of `T(k)` by the digit flip `[a, b] -> [a, -b]`.
pub fn delta_factors(k: Weight, ell: u64) -> DeltaMultiset {
    let mut d = DeltaMultiset::single(k);
    let (a, b) = k.digits(ell);
    if a != 0 && b != 0 {
        d.add(Weight(a * ell - b - 1), BigUint::one());
    }
    d
}

/// `dim T(k)`: `k + 1` when simple, `2 a ell` otherwise.
pub fn dim_tilting(k: Weight, ell: u64) -> BigUint {
    let (a, b) = k.digits(ell);
    if a == 0 || b == 0 {
        BigUint::from(k.weyl_dim())
    } else {
        BigUint::from(2 * a) * ell
    }
}

/// Clebsch-Gordan product on Weyl factors:
/// `Delta(a) (x) Delta(b) = sum_{i=0}^{min(a,b)} Delta(a + b - 2i)`.
pub fn cg_square_free_product(d1: &DeltaMultiset, d2: &DeltaMultiset) -> DeltaMultiset {
    let mut out = DeltaMultiset::new();
    for (a, ma) in d1.iter() {
        for (b, mb) in d2.iter() {
            let m = ma * mb;
            for i in 0..=a.0.min(b.0) {
                out.add(Weight(a.0 + b.0 - 2 * i), m.clone());
            }
        }
    }
    out
}

/// Splits a Weyl-factor multiset into indecomposable tiltings, peeling off
/// the highest remaining weight each time. Fails if a multiplicity would go
/// negative, which means `d` is not the character of a tilting module.
pub fn tilting_decompose(d: &DeltaMultiset, ell: u64) -> Result<TiltingDecomposition> {
    check_ell(ell)?;
    let mut rest = d.clone();
    let mut summands = BTreeMap::new();
    while let Some(k) = rest.max_weight() {
        let m = rest.get(k);
        for (j, f) in delta_factors(k, ell).iter() {
            rest.subtract(j, &(&m * f))?;
        }
        summands.insert(k, m);
    }
    Ok(TiltingDecomposition { ell, summands })
}

/// One step of [`TensorPowers`].
#[derive(Debug, Clone)]
pub struct TensorPowerStep {
    pub n: usize,
    pub weyl: DeltaMultiset,
    pub tilting: TiltingDecomposition,
}

/// Successive tensor powers `T(k)^{(x) n}` for `n = 0, 1, 2, ...`, folded from
/// the left on Weyl factors.
#[derive(Debug, Clone)]
pub struct TensorPowers {
    ell: u64,
    factor: DeltaMultiset,
    current: DeltaMultiset,
    n: usize,
}

impl TensorPowers {
    pub fn new(k: Weight, ell: u64) -> Result<Self> {
        check_ell(ell)?;
        Ok(Self {
            ell,
            factor: delta_factors(k, ell),
            current: DeltaMultiset::single(Weight(0)),
            n: 0,
        })
    }
}

impl Iterator for TensorPowers {
    type Item = TensorPowerStep;

    fn next(&mut self) -> Option<TensorPowerStep> {
        let tilting = tilting_decompose(&self.current, self.ell)
            .expect("tensor products of tilting modules are tilting");
        let step = TensorPowerStep {
            n: self.n,
            weyl: self.current.clone(),
            tilting,
        };
        self.current = cg_square_free_product(&self.current, &self.factor);
        self.n += 1;
        Some(step)
    }
}

/// Tilting decomposition of `T(k)^{(x) n}` together with its Weyl factors,
/// which are the decomposition of the characteristic-zero counterpart.
pub fn tensor_power(k: Weight, n: usize, ell: u64) -> Result<(TiltingDecomposition, DeltaMultiset)> {
    check_ell(ell)?;
    let factor = delta_factors(k, ell);
    let mut acc = DeltaMultiset::single(Weight(0));
    for _ in 0..n {
        acc = cg_square_free_product(&acc, &factor);
    }
    Ok((tilting_decompose(&acc, ell)?, acc))
}

/// Number of indecomposable summands, with multiplicity.
pub fn count_summands(td: &TiltingDecomposition) -> BigUint {
    td.summands.values().sum()
}

/// Number of Weyl factors, with multiplicity.
pub fn count_weyl(d: &DeltaMultiset) -> BigUint {
    d.map.values().sum()
}

/// Summands `T(m)` with `m + 1 = 0 (mod ell)`.
pub fn wall_summands(td: &TiltingDecomposition, ell: u64) -> BigUint {
    td.summands
        .iter()
        .filter(|(k, _)| (k.0 + 1) % ell == 0)
        .map(|(_, m)| m.clone())
        .sum()
}

/// Leading constant `sqrt(6 / ((k^2 - 1) pi))` of the characteristic-zero
/// growth of the `k`-dimensional simple `sl2` module; needs `k >= 2`.
pub fn char_zero_constant(k: u64) -> Option<f64> {
    (k >= 2).then(|| (6.0 / (((k * k - 1) as f64) * std::f64::consts::PI)).sqrt())
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsRow {
    pub n: usize,
    pub summands: BigUint,
    pub weyl: BigUint,
    /// `weyl / 2 <= summands <= weyl`, checked on integers.
    pub holds: bool,
    /// `weyl / (c n^{-1/2} (dim V)^n)` with the characteristic-zero constant
    /// `c`; absent for `k < 2` or `n = 0`.
    pub char_zero_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundsReport {
    /// `V = T(k - 1)`.
    pub k: u64,
    pub ell: u64,
    pub dim: BigUint,
    pub rows: Vec<BoundsRow>,
}

impl BoundsReport {
    pub fn all_hold(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

/// Checks `count_weyl / 2 <= count_summands <= count_weyl` for
/// `V = T(k - 1)` and `n = 0..=n_max`.
pub fn bounds_check(k: u64, ell: u64, n_max: usize) -> Result<BoundsReport> {
    check_ell(ell)?;
    if k == 0 {
        return Err(Error::InvalidArgument("V = T(k - 1) needs k >= 1".into()));
    }
    let v = Weight(k - 1);
    let dim = dim_tilting(v, ell);
    let beta = dim.to_u64();
    let constant = char_zero_constant(k);
    let rows = TensorPowers::new(v, ell)?
        .take(n_max + 1)
        .map(|step| {
            let summands = count_summands(&step.tilting);
            let weyl = count_weyl(&step.weyl);
            let holds = &weyl <= &(&summands * 2u32) && summands <= weyl;
            let char_zero_ratio = match (constant, beta) {
                (Some(c), Some(beta)) if step.n > 0 => {
                    Some(normalize_exact(&weyl, step.n, Ratio::new(-1, 2), beta) / c)
                }
                _ => None,
            };
            BoundsRow {
                n: step.n,
                summands,
                weyl,
                holds,
                char_zero_ratio,
            }
        })
        .collect();
    Ok(BoundsReport { k, ell, dim, rows })
}

/// For `T(a) (x) T(b)` with `T(a)` projective, checks that every summand is
/// projective again.
pub fn projective_closure_check(a: Weight, b: Weight, ell: u64) -> Result<bool> {
    check_ell(ell)?;
    if !is_projective(a, ell) {
        return Err(Error::InvalidArgument(format!(
            "T({a}) is not projective for ell = {ell}"
        )));
    }
    let d = cg_square_free_product(&delta_factors(a, ell), &delta_factors(b, ell));
    Ok(tilting_decompose(&d, ell)?.all_projective())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn td(ell: u64, pairs: &[(u64, u64)]) -> TiltingDecomposition {
        TiltingDecomposition {
            ell,
            summands: pairs.iter().map(|&(k, m)| (Weight(k), BigUint::from(m))).collect(),
        }
    }

    #[test]
    fn digit_game_examples() {
        assert_eq!(delta_factors(Weight(3), 3), DeltaMultiset::from_pairs([(3, 1), (1, 1)]));
        assert_eq!(delta_factors(Weight(2), 5), DeltaMultiset::single(Weight(2)));
        assert_eq!(delta_factors(Weight(4), 5), DeltaMultiset::single(Weight(4)));
        assert_eq!(dim_tilting(Weight(3), 3), BigUint::from(6u8));
        assert_eq!(dim_tilting(Weight(0), 3), BigUint::one());
        assert_eq!(dim_tilting(Weight(1), 2), BigUint::from(2u8));
    }

    #[test]
    fn one_or_two_factors() {
        for ell in 2..=12 {
            for k in 0..=10_000u64 {
                let d = delta_factors(Weight(k), ell);
                assert!(d.len() == 1 || d.len() == 2);
                let simple = k + 1 <= ell || (k + 1) % ell == 0;
                assert_eq!(d.len() == 1, simple, "k={k} ell={ell}");
                assert_eq!(d.dimension(), dim_tilting(Weight(k), ell));
            }
        }
    }

    #[test]
    fn clebsch_gordan() {
        let p = cg_square_free_product(&DeltaMultiset::single(Weight(3)), &DeltaMultiset::single(Weight(1)));
        assert_eq!(p, DeltaMultiset::from_pairs([(4, 1), (2, 1)]));
        let d = DeltaMultiset::from_pairs([(5, 2), (1, 3)]);
        assert_eq!(cg_square_free_product(&DeltaMultiset::single(Weight(0)), &d), d);
        for a in 0..8 {
            for b in 0..8 {
                let p = cg_square_free_product(&DeltaMultiset::single(Weight(a)), &DeltaMultiset::single(Weight(b)));
                assert_eq!(count_weyl(&p), BigUint::from(a.min(b) + 1));
                assert_eq!(p.dimension(), BigUint::from((a + 1) * (b + 1)));
            }
        }
    }

    #[test]
    fn worked_example_ell_three() {
        let (t, d) = tensor_power(Weight(3), 2, 3).unwrap();
        assert_eq!(d, DeltaMultiset::from_pairs([(6, 1), (4, 3), (2, 4), (0, 2)]));
        assert_eq!(t, td(3, &[(6, 1), (4, 2), (2, 4)]));
        assert_eq!(count_summands(&t), BigUint::from(7u8));
        assert_eq!(count_weyl(&d), BigUint::from(10u8));
        assert_eq!(wall_summands(&t, 3), BigUint::from(4u8));
        assert_eq!(t.dimension(), BigUint::from(36u8));
        // T(6) + 3 T(4) + T(2) + 2 T(0) has dimension 35 and the wrong factors.
        let alt = td(3, &[(6, 1), (4, 3), (2, 1), (0, 2)]);
        assert_eq!(alt.dimension(), BigUint::from(35u8));
        assert_ne!(alt.expand(), d);
        assert_eq!(t.expand(), d);
    }

    #[test]
    fn decompose_rejects_non_tilting() {
        // Delta(3) alone is not tilting at ell = 3: T(3) also needs Delta(1).
        let err = tilting_decompose(&DeltaMultiset::single(Weight(3)), 3).unwrap_err();
        assert_eq!(err, Error::NotTilting { weight: 1 });
        assert!(tilting_decompose(&DeltaMultiset::single(Weight(1)), 3).is_ok());
        assert!(tilting_decompose(&DeltaMultiset::new(), 1).is_err());
    }

    #[test]
    fn trivial_powers() {
        let (t, _) = tensor_power(Weight(5), 0, 4).unwrap();
        assert_eq!(t, td(4, &[(0, 1)]));
        let rep = bounds_check(1, 4, 10).unwrap();
        assert!(rep.rows.iter().all(|r| r.summands.is_one() && r.weyl.is_one()));
        assert!(rep.rows.iter().all(|r| r.char_zero_ratio.is_none()));
    }

    #[test]
    fn t1_summands_match_first_values() {
        let counts: Vec<u64> = TensorPowers::new(Weight(1), 4)
            .unwrap()
            .take(11)
            .map(|s| count_summands(&s.tilting).try_into().unwrap())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 9, 14, 29, 43, 99, 142]);
    }

    #[test]
    fn wall_summand_examples() {
        let (t, _) = tensor_power(Weight(1), 7, 4).unwrap();
        assert_eq!(wall_summands(&t, 4), BigUint::from(15u8));
        for n in (0..20).step_by(2) {
            let (t, _) = tensor_power(Weight(1), n, 4).unwrap();
            assert!(wall_summands(&t, 4).is_zero());
        }
    }

    #[test]
    fn projective_closure() {
        assert!(projective_closure_check(Weight(2), Weight(1), 3).unwrap());
        // ell = 2: T(1) is the Steinberg module and T(1)^2 = T(2).
        let (t, _) = tensor_power(Weight(1), 2, 2).unwrap();
        assert_eq!(t, td(2, &[(2, 1)]));
        assert!(projective_closure_check(Weight(1), Weight(1), 2).unwrap());
        assert!(projective_closure_check(Weight(0), Weight(1), 3).is_err());
        for ell in 2..7 {
            for a in ell - 1..ell + 8 {
                for b in 0..12 {
                    assert!(projective_closure_check(Weight(a), Weight(b), ell).unwrap());
                }
            }
        }
    }

    #[test]
    fn bounds_on_t3() {
        let rep = bounds_check(4, 3, 30).unwrap();
        assert!(rep.all_hold());
        assert_eq!(rep.dim, BigUint::from(6u8));
    }
}
