//! Self-check suite behind `tiltwalk verify`.
//!
//! The quick profile covers the golden fixtures and the exact cross-checks up
//! to `n = 200`. The full profile adds the `n = 2000` asymptotics, the
//! quadrature check and the A1 envelope.

use std::fmt;
use std::path::Path;
use std::thread;

use num_bigint::BigUint;
use num_rational::BigRational;

use crate::asymptotics::{
    error_envelope, normalize_a1, rational_f64, spectral_an, w_ratio_limit, Approximant, Parity,
    SPECTRAL_MAX_N,
};
use crate::error::{Error, Result};
use crate::io::{parse_csv_matrix, table_matrix, table_to_csv};
use crate::roots::{self, RootType};
use crate::series::{gf_b, mixed_factor_limit, mixed_factor_series, wall_series, RationalSeries};
use crate::tilting::{
    bounds_check, dim_tilting, tensor_power, wall_summands,
    DeltaMultiset, TensorPowers, Weight,
};
use crate::walks::{
    ballot_formula, classical_table, modular_table, row_sum, streamed_sums, wall_count,
};

pub const CLASSICAL_FILE: &str = "classical_15.csv";
pub const PRINTED_FILE: &str = "printed_b_table_15.csv";
pub const FIRST_VALUES_FILE: &str = "b_first_eleven.csv";

/// Text of the reference fixtures.
#[derive(Debug, Clone)]
pub struct Golden {
    pub classical: String,
    /// The printed constrained table; it is the `ell = 3` table.
    pub printed: String,
    /// Lines `ell,b_0,...,b_10`.
    pub first_values: String,
}

impl Golden {
    pub fn embedded() -> Self {
        Self {
            classical: include_str!("../golden/classical_15.csv").to_string(),
            printed: include_str!("../golden/printed_b_table_15.csv").to_string(),
            first_values: include_str!("../golden/b_first_eleven.csv").to_string(),
        }
    }

    pub fn from_dir(dir: &Path) -> Result<Self> {
        let read = |name: &str| {
            std::fs::read_to_string(dir.join(name))
                .map_err(|e| Error::Parse(format!("{}: {e}", dir.join(name).display())))
        };
        Ok(Self {
            classical: read(CLASSICAL_FILE)?,
            printed: read(PRINTED_FILE)?,
            first_values: read(FIRST_VALUES_FILE)?,
        })
    }

    /// `(ell, [b_0, ..., b_10])` rows.
    pub fn first_values(&self) -> Result<Vec<(u64, Vec<BigUint>)>> {
        parse_csv_matrix(&self.first_values)?
            .into_iter()
            .map(|mut row| {
                if row.is_empty() {
                    return Err(Error::Parse("empty fixture row".into()));
                }
                let ell = u64::try_from(row.remove(0))
                    .map_err(|_| Error::Parse("modulus out of range".into()))?;
                Ok((ell, row))
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    Quick,
    Full,
}

impl std::str::FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Profile::Quick),
            "full" => Ok(Profile::Full),
            _ => Err(Error::Parse(format!("unknown profile {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        write!(f, "{verdict} {}: {}", self.name, self.detail)
    }
}

type CheckFn = fn(&Golden, u32) -> Result<(bool, String)>;

const QUICK: &[(&str, CheckFn)] = &[
    ("golden-classical", golden_classical),
    ("golden-printed-table", golden_printed),
    ("first-values", first_values),
    ("generating-function", generating_function),
    ("ballot", ballot),
    ("tilting-vs-walks", tilting_vs_walks),
    ("worked-example", worked_example),
    ("wall-summands", wall_summands_check),
    ("bounds", bounds),
    ("rank2-constants", rank2_constants),
    ("mixed-factor", mixed_factor),
];

const FULL: &[(&str, CheckFn)] = &[
    ("asymptotic-ratio", asymptotic_ratio),
    ("wall-ratio-limits", wall_ratio_limits),
    ("quadrature", quadrature),
    ("a1-envelope", a1_envelope_check),
];

/// Runs the profile, one worker per check; results come back in the
/// fixed table order.
pub fn run(profile: Profile, golden: &Golden, digits: u32) -> Vec<CheckResult> {
    let mut checks: Vec<(&'static str, CheckFn)> = QUICK.to_vec();
    if profile == Profile::Full {
        checks.extend_from_slice(FULL);
    }
    thread::scope(|s| {
        let handles: Vec<_> = checks
            .iter()
            .map(|&(name, f)| (name, s.spawn(move || f(golden, digits))))
            .collect();
        handles
            .into_iter()
            .map(|(name, h)| {
                let (pass, detail) = match h.join() {
                    Ok(Ok(r)) => r,
                    Ok(Err(e)) => (false, format!("error: {e}")),
                    Err(_) => (false, "panicked".to_string()),
                };
                CheckResult { name, pass, detail }
            })
            .collect()
    })
}

fn golden_classical(g: &Golden, _: u32) -> Result<(bool, String)> {
    let ok = table_to_csv(&classical_table(15)) == g.classical;
    Ok((ok, "classical_table(15) vs fixture, byte compare".into()))
}

fn golden_printed(g: &Golden, _: u32) -> Result<(bool, String)> {
    let printed = parse_csv_matrix(&g.printed)?;
    let ok = table_matrix(&modular_table(3, 15)?) == printed;
    Ok((ok, "modular_table(3, 15) vs printed constrained table".into()))
}

fn first_values(g: &Golden, _: u32) -> Result<(bool, String)> {
    let rows = g.first_values()?;
    let mut bad = Vec::new();
    for (ell, expect) in &rows {
        let t = modular_table(*ell, expect.len().saturating_sub(1))?;
        let got: Vec<BigUint> = (0..expect.len()).map(|n| row_sum(&t, n)).collect::<Result<_>>()?;
        if &got != expect {
            bad.push(*ell);
        }
    }
    Ok((bad.is_empty() && !rows.is_empty(), format!("{} moduli, mismatches at ell = {bad:?}", rows.len())))
}

fn generating_function(_: &Golden, _: u32) -> Result<(bool, String)> {
    const N: usize = 200;
    let mut bad = Vec::new();
    for ell in 3..=9 {
        let sums = streamed_sums(ell, N)?;
        let f = gf_b(ell, N, &wall_series(ell, N)?)?;
        if f.to_naturals()? != sums.modular.values {
            bad.push(ell);
        }
    }
    // ell = 2 has no generating-function form: b_n = a_n for odd n and
    // b_n = a_{n-1} for even n.
    let sums = streamed_sums(2, N)?;
    let a = &sums.classical.values;
    let two_ok = (1..=N).all(|n| {
        let b = &sums.modular.values[n];
        if n % 2 == 1 {
            *b == a[n]
        } else {
            *b == a[n - 1]
        }
    });
    if !two_ok {
        bad.push(2);
    }
    Ok((bad.is_empty(), format!("n <= {N}, ell = 2..9, mismatches at {bad:?}")))
}

fn ballot(_: &Golden, _: u32) -> Result<(bool, String)> {
    let t = classical_table(200);
    let ok = t
        .rows()
        .iter()
        .enumerate()
        .all(|(n, row)| row.iter().enumerate().all(|(m, v)| *v == ballot_formula(n as u64, m as u64)));
    Ok((ok, "closed form vs recursion, n <= 200".into()))
}

fn tilting_vs_walks(_: &Golden, _: u32) -> Result<(bool, String)> {
    const N: usize = 200;
    let mut bad = Vec::new();
    for ell in 2..=9 {
        let table = modular_table(ell, N)?;
        let ok = TensorPowers::new(Weight(1), ell)?.take(N + 1).all(|step| {
            let row = table.row(step.n).expect("row in range");
            row.iter()
                .enumerate()
                .all(|(m, v)| step.tilting.get(Weight(m as u64)) == *v)
                && step.tilting.len() == row.iter().filter(|v| **v != BigUint::default()).count()
                && step.tilting.dimension() == BigUint::from(2u32).pow(step.n as u32)
        });
        if !ok {
            bad.push(ell);
        }
    }
    Ok((bad.is_empty(), format!("T(1)^n multiplicities vs b(n, m), n <= {N}, mismatches at {bad:?}")))
}

fn worked_example(_: &Golden, _: u32) -> Result<(bool, String)> {
    let (td, d) = tensor_power(Weight(3), 2, 3)?;
    let expect = DeltaMultiset::from_pairs([(6, 1), (4, 3), (2, 4), (0, 2)]);
    let ok = d == expect && td.expand() == d && td.dimension() == dim_tilting(Weight(3), 3).pow(2);
    let parts: Vec<String> = td
        .iter()
        .rev()
        .map(|(k, m)| if *m == BigUint::from(1u8) { format!("T({k})") } else { format!("{m}T({k})") })
        .collect();
    Ok((ok, format!("T(3)^2 at ell = 3 = {}", parts.join(" + "))))
}

fn wall_summands_check(_: &Golden, _: u32) -> Result<(bool, String)> {
    const N: usize = 200;
    let mut bad = Vec::new();
    for ell in 2..=9 {
        let ok = TensorPowers::new(Weight(1), ell)?
            .take(N + 1)
            .all(|s| wall_summands(&s.tilting, ell) == wall_count(ell, s.n).expect("ell >= 2"));
        if !ok {
            bad.push(ell);
        }
    }
    Ok((bad.is_empty(), format!("n <= {N}, mismatches at {bad:?}")))
}

fn bounds(_: &Golden, _: u32) -> Result<(bool, String)> {
    let mut bad = Vec::new();
    for k in [3, 4, 6] {
        for ell in 3..=5 {
            if !bounds_check(k, ell, 30)?.all_hold() {
                bad.push((k - 1, ell));
            }
        }
    }
    Ok((bad.is_empty(), format!("V = T(2), T(3), T(5), n <= 30, failures {bad:?}")))
}

fn rank2_constants(_: &Golden, _: u32) -> Result<(bool, String)> {
    let mut ok = true;
    let mut seen = Vec::new();
    for (t, improved, plain) in [("A2", 12u64, 27u64), ("B2", 32, 256), ("C2", 32, 256), ("G2", 348, 46656)] {
        let rt: RootType = t.parse()?;
        let st = roots::stats(rt);
        let a = roots::rank2_improved_bound(rt)?;
        let b = roots::projective_delta_bound(&st, st.coxeter_number)?;
        ok &= a == improved && b == BigUint::from(plain);
        seen.push(format!("{t}: {a}/{b}"));
    }
    Ok((ok, seen.join(", ")))
}

fn mixed_factor(_: &Golden, _: u32) -> Result<(bool, String)> {
    const N: usize = 64;
    let mut bad = Vec::new();
    for p in 2..=7u64 {
        for ell in 2..=7u64 {
            let (num, den) = crate::series::mixed_factor_parts(p, ell)?;
            let f = mixed_factor_series(p, ell, N)?;
            let lhs = f.mul(&RationalSeries::from_poly(&den, N))?;
            let limit = mixed_factor_limit(p, ell)?;
            let ok = lhs == RationalSeries::from_poly(&num, N)
                && limit == BigRational::new((ell as i64 - 1).into(), (p as i64 - 1).into());
            if !ok {
                bad.push((p, ell));
            }
        }
    }
    Ok((bad.is_empty(), format!("p, ell in 2..7, truncation {N}, failures {bad:?}")))
}

const ASYMPTOTIC_N: usize = 2000;

fn asymptotic_ratio(_: &Golden, _: u32) -> Result<(bool, String)> {
    let mut ok = true;
    let mut worst = 0.0f64;
    for ell in 2..=9 {
        let sums = streamed_sums(ell, ASYMPTOTIC_N)?;
        let approx = Approximant::modular(ell)?;
        let n = ASYMPTOTIC_N;
        let x = crate::asymptotics::normalize_exact(&sums.modular.values[n], n, approx.tau, approx.beta);
        let err = (x / approx.normalized(n) - 1.0).abs();
        worst = worst.max(err);
        let report = error_envelope(&sums.modular, &approx, (200, ASYMPTOTIC_N))?;
        ok &= err <= 0.01 && report.pass;
    }
    Ok((ok, format!("max |b_n / approx - 1| at n = {ASYMPTOTIC_N}: {worst:.3e}")))
}

fn wall_ratio_limits(_: &Golden, _: u32) -> Result<(bool, String)> {
    let mut ok = true;
    let mut worst = 0.0f64;
    for ell in 2..=9 {
        let sums = streamed_sums(ell, ASYMPTOTIC_N + 1)?;
        for n in [ASYMPTOTIC_N, ASYMPTOTIC_N + 1] {
            let w = normalize_a1(&sums.wall.values[n], n);
            let b = normalize_a1(&sums.modular.values[n], n);
            let target = rational_f64(&w_ratio_limit(ell, Parity::of(n))?);
            let dev = (w / b - target).abs();
            worst = worst.max(dev);
            ok &= dev <= 0.02;
        }
    }
    Ok((ok, format!("max |w_n / b_n - limit| at n = {ASYMPTOTIC_N}, {}: {worst:.3e}", ASYMPTOTIC_N + 1)))
}

fn quadrature(_: &Golden, digits: u32) -> Result<(bool, String)> {
    let t = classical_table(SPECTRAL_MAX_N);
    let mut worst = 0.0f64;
    for n in 0..=SPECTRAL_MAX_N {
        let exact = row_sum(&t, n)?;
        worst = worst.max(spectral_an(n, digits)?.relative_error(&exact));
    }
    Ok((worst <= 1e-9, format!("max relative error n <= {SPECTRAL_MAX_N} at {digits} digits: {worst:.3e}")))
}

fn a1_envelope_check(_: &Golden, _: u32) -> Result<(bool, String)> {
    // The A1 divisor is min(ell, 2) = 2 for every ell, so one envelope serves.
    let env = roots::a1_envelope(2, 2, 2)?;
    let mut failing = Vec::new();
    let mut min_seen = f64::INFINITY;
    for ell in 2..=9 {
        let sums = streamed_sums(ell, ASYMPTOTIC_N)?;
        let mut ok = true;
        for n in 50..=ASYMPTOTIC_N {
            let x = normalize_a1(&sums.modular.values[n], n);
            min_seen = min_seen.min(x / env.upper_const);
            ok &= env.contains(x);
        }
        if !ok {
            failing.push(ell);
        }
    }
    Ok((
        failing.is_empty(),
        format!(
            "[{:.6}, {:.6}] on n in [50, {ASYMPTOTIC_N}], min ratio to upper {min_seen:.6}, outside at ell = {failing:?}",
            env.lower_const, env.upper_const
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_profile_passes() {
        let results = run(Profile::Quick, &Golden::embedded(), 32);
        for r in &results {
            assert!(r.pass, "{r}");
        }
        assert_eq!(results.len(), QUICK.len());
    }

    #[test]
    fn corrupted_fixture_is_named() {
        let mut g = Golden::embedded();
        g.classical = g.classical.replacen("2,0,3", "2,0,4", 1);
        let results = run(Profile::Quick, &g, 32);
        let failed: Vec<_> = results.iter().filter(|r| !r.pass).map(|r| r.name).collect();
        assert_eq!(failed, vec!["golden-classical"]);
    }
}
