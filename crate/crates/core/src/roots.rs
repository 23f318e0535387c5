//! Root-system statistics for simple types and the growth-envelope constants
//! built from them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::Pow;

use crate::error::{Error, Result};
use crate::tilting::char_zero_constant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// A simple Cartan type such as `A2` or `E8`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RootType {
    pub family: Family,
    pub rank: u32,
}

impl RootType {
    pub fn new(family: Family, rank: u32) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if !ok {
            return Err(Error::InvalidRootSystem(format!("{family:?}{rank}")));
        }
        Ok(Self { family, rank })
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for RootType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidRootSystem(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(bad()),
        };
        let rest = chars.as_str().trim_start_matches('_');
        let rank: u32 = rest.parse().map_err(|_| bad())?;
        Self::new(family, rank)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSystemStats {
    pub root_type: RootType,
    pub num_positive_roots: u64,
    pub coxeter_number: u64,
    /// `rho` in the fundamental-weight basis.
    pub rho: Vec<u64>,
}

pub fn stats(root_type: RootType) -> RootSystemStats {
    let n = root_type.rank as u64;
    let (pos, h) = match root_type.family {
        Family::A => (n * (n + 1) / 2, n + 1),
        Family::B | Family::C => (n * n, 2 * n),
        Family::D => (n * (n - 1), 2 * n - 2),
        Family::E => match n {
            6 => (36, 12),
            7 => (63, 18),
            _ => (120, 30),
        },
        Family::F => (24, 12),
        Family::G => (6, 6),
    };
    RootSystemStats {
        root_type,
        num_positive_roots: pos,
        coxeter_number: h,
        rho: vec![1; n as usize],
    }
}

fn check_ell(ell: u64) -> Result<()> {
    if ell < 2 {
        return Err(Error::ModulusTooSmall { ell, min: 2 });
    }
    Ok(())
}

/// `ell^{#R+}`.
pub fn steinberg_dim(stats: &RootSystemStats, ell: u64) -> Result<BigUint> {
    check_ell(ell)?;
    Ok(BigUint::from(ell).pow(stats.num_positive_roots))
}

/// `min(ell, h)^{#R+}`: bound on the number of Weyl factors of an
/// indecomposable projective tilting module.
pub fn projective_delta_bound(stats: &RootSystemStats, ell: u64) -> Result<BigUint> {
    check_ell(ell)?;
    Ok(BigUint::from(ell.min(stats.coxeter_number)).pow(stats.num_positive_roots))
}

/// Sharper rank-2 constants: 12 for `A2`, 32 for `B2`/`C2`, 348 for `G2`.
pub fn rank2_improved_bound(root_type: RootType) -> Result<u64> {
    match (root_type.family, root_type.rank) {
        (Family::A, 2) => Ok(12),
        (Family::B | Family::C, 2) => Ok(32),
        (Family::G, 2) => Ok(348),
        _ => Err(Error::InvalidRootSystem(format!(
            "{root_type} has no improved rank-2 constant"
        ))),
    }
}

/// Smallest `ell` for which [`rank2_improved_bound`] applies.
pub fn rank2_min_ell(root_type: RootType) -> Option<u64> {
    match (root_type.family, root_type.rank) {
        (Family::A, 2) => Some(3),
        (Family::B | Family::C, 2) => Some(5),
        (Family::G, 2) => Some(7),
        _ => None,
    }
}

/// Parameters of `b_n in Theta(n^tau beta^n)` with explicit constants.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaEnvelope {
    pub tau: Ratio<i64>,
    pub beta: u64,
    pub upper_const: f64,
    pub lower_const: f64,
    /// Exact integer with `lower_const = upper_const / divisor`.
    pub divisor: BigUint,
}

impl ThetaEnvelope {
    pub fn contains(&self, normalized: f64) -> bool {
        self.lower_const <= normalized && normalized <= self.upper_const
    }
}

/// Envelope from a characteristic-zero leading constant. Rank-2 types use
/// the sharper divisor when `ell` is admissible.
pub fn theta_envelope(
    stats: &RootSystemStats,
    dim_t: u64,
    char_zero_const: f64,
    ell: u64,
) -> Result<ThetaEnvelope> {
    if dim_t == 0 {
        return Err(Error::InvalidArgument("dim T must be at least 1".into()));
    }
    if !(char_zero_const > 0.0 && char_zero_const.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "characteristic-zero constant must be positive, got {char_zero_const}"
        )));
    }
    let rt = stats.root_type;
    let divisor = match rank2_min_ell(rt) {
        Some(min) if ell >= min => BigUint::from(rank2_improved_bound(rt)?),
        _ => projective_delta_bound(stats, ell)?,
    };
    let d: f64 = divisor.to_string().parse().unwrap_or(f64::INFINITY);
    Ok(ThetaEnvelope {
        tau: Ratio::new(-(stats.num_positive_roots as i64), 2),
        beta: dim_t,
        upper_const: char_zero_const,
        lower_const: char_zero_const / d,
        divisor,
    })
}

/// The type `A1` envelope for `V = T(k - 1)`; needs `k >= 2`.
pub fn a1_envelope(k: u64, dim_t: u64, ell: u64) -> Result<ThetaEnvelope> {
    let c = char_zero_constant(k)
        .ok_or_else(|| Error::InvalidArgument(format!("A1 constant needs k >= 2, got {k}")))?;
    let a1 = stats(RootType::new(Family::A, 1)?);
    theta_envelope(&a1, dim_t, c, ell)
}
