//! Acceptance suite: one verdict line per criterion.
//!
//! Criteria that cannot hold as stated are still evaluated literally and
//! print FAIL. They are listed in `KNOWN_FAILURES`; the run as a whole
//! fails on any other FAIL, and also if a known failure starts passing.

use std::process::ExitCode;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use tiltwalk_core::asymptotics::{
    error_envelope, normalize_a1, normalize_exact, rational_f64, spectral_an, w_ratio_limit,
    Approximant, Parity, DEFAULT_DIGITS,
};
use tiltwalk_core::io::{parse_csv_matrix, table_matrix, table_to_csv};
use tiltwalk_core::roots::{self, RootType};
use tiltwalk_core::series::{
    gf_b, mixed_factor_limit, mixed_factor_parts, mixed_factor_series, wall_series,
    RationalSeries,
};
use tiltwalk_core::tilting::{
    bounds_check, count_summands, count_weyl, dim_tilting, tensor_power, wall_summands,
    DeltaMultiset, TensorPowers, TiltingDecomposition, Weight,
};
use tiltwalk_core::walks::{
    ballot_formula, classical_table, modular_table, row_sum, streamed_sums, wall_count,
    StreamedSums,
};

const CLASSICAL_15: &str = include_str!("../golden/classical_15.csv");
const PRINTED_15: &str = include_str!("../golden/printed_b_table_15.csv");
const FIRST_ELEVEN: &str = include_str!("../golden/b_first_eleven.csv");

/// `|b_n / b_approx - 1|` allowed at `n = ASYMPTOTIC_N`.
const RATIO_TOL: f64 = 0.01;
/// `|w_n / b_n - limit|` allowed at `n = ASYMPTOTIC_N, ASYMPTOTIC_N + 1`.
const WALL_RATIO_TOL: f64 = 0.02;
/// Relative error allowed for the spectral integral.
const QUADRATURE_TOL: f64 = 1e-9;
const ASYMPTOTIC_N: usize = 2000;
const TREND_WINDOW: (usize, usize) = (200, 2000);
const ENVELOPE_WINDOW: (usize, usize) = (50, 2000);
const MODULI: std::ops::RangeInclusive<u64> = 2..=9;

const KNOWN_FAILURES: &[&str] = &["01b", "06b", "14"];

struct Criterion {
    id: &'static str,
    title: &'static str,
    budget: Option<Duration>,
    run: fn() -> (bool, String),
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

/// Row sums up to `ASYMPTOTIC_N + 1` for every modulus, computed once.
fn long_sums() -> &'static Vec<StreamedSums> {
    static SUMS: OnceLock<Vec<StreamedSums>> = OnceLock::new();
    SUMS.get_or_init(|| {
        MODULI
            .map(|ell| streamed_sums(ell, ASYMPTOTIC_N + 1).unwrap())
            .collect()
    })
}

fn sums_for(ell: u64) -> &'static StreamedSums {
    &long_sums()[(ell - 2) as usize]
}

fn c01a_classical_table() -> (bool, String) {
    let ok = table_to_csv(&classical_table(15)) == CLASSICAL_15;
    (ok, "classical_table(15) byte-compared with the printed left matrix".into())
}

fn c01b_modular_table_ell4() -> (bool, String) {
    let got = table_to_csv(&modular_table(4, 15).unwrap());
    let printed = parse_csv_matrix(PRINTED_15).unwrap();
    let first_diff = parse_csv_matrix(&got)
        .unwrap()
        .iter()
        .zip(&printed)
        .position(|(a, b)| a != b);
    let as_ell3 = table_matrix(&modular_table(3, 15).unwrap()) == printed;
    (
        got == PRINTED_15,
        format!(
            "modular_table(4, 15) vs printed right matrix: first differing row {first_diff:?}; \
             printed matrix equals modular_table(3, 15): {as_ell3}"
        ),
    )
}

fn c02_first_values() -> (bool, String) {
    let mut bad = Vec::new();
    let rows = parse_csv_matrix(FIRST_ELEVEN).unwrap();
    for row in &rows {
        let ell: u64 = row[0].to_string().parse().unwrap();
        let t = modular_table(ell, 10).unwrap();
        let got: Vec<BigUint> = (0..=10).map(|n| row_sum(&t, n).unwrap()).collect();
        if got != row[1..] {
            bad.push(ell);
        }
    }
    (bad.is_empty() && rows.len() == 4, format!("ell = 2, 3, 4, 5; n = 0..10; mismatches {bad:?}"))
}

fn c03_generating_function() -> (bool, String) {
    const N: usize = 200;
    let mut bad = Vec::new();
    for ell in 3..=9 {
        let t = modular_table(ell, N).unwrap();
        let sums: Vec<BigUint> = (0..=N).map(|n| row_sum(&t, n).unwrap()).collect();
        let f = gf_b(ell, N, &wall_series(ell, N).unwrap()).unwrap();
        if f.to_naturals().unwrap() != sums {
            bad.push(ell);
        }
    }
    let t2 = modular_table(2, N).unwrap();
    let a = classical_table(N);
    let ell2 = (1..=N).all(|n| {
        let b = row_sum(&t2, n).unwrap();
        let src = if n % 2 == 1 { n } else { n - 1 };
        b == row_sum(&a, src).unwrap()
    });
    if !ell2 {
        bad.push(2);
    }
    (bad.is_empty(), format!("n <= {N}, ell = 3..9 via gf_b, ell = 2 via reduction; mismatches {bad:?}"))
}

fn c04_ballot() -> (bool, String) {
    const N: usize = 200;
    let t = classical_table(N);
    let mut bad = 0usize;
    for n in 0..=N {
        for m in 0..=N {
            let entry = t.row(n).unwrap().get(m).cloned().unwrap_or_default();
            if entry != ballot_formula(n as u64, m as u64) {
                bad += 1;
            }
        }
    }
    (bad == 0, format!("{} entries, {bad} mismatches", (N + 1) * (N + 1)))
}

fn c05_tilting_vs_walks() -> (bool, String) {
    const N: usize = 500;
    let mut bad = Vec::new();
    for ell in MODULI {
        let mut stream = tiltwalk_core::walks::WalkStream::new(Some(ell)).unwrap();
        for step in TensorPowers::new(Weight(1), ell).unwrap().take(N + 1) {
            if step.n > 0 {
                stream.step();
            }
            let row = stream.modular_row();
            let per_weight = (0..row.len()).all(|m| step.tilting.get(Weight(m as u64)) == row[m])
                && step.tilting.len() == row.iter().filter(|v| !v.is_zero()).count();
            if !per_weight || count_summands(&step.tilting) != stream.b_n().unwrap() {
                bad.push((ell, step.n));
                break;
            }
        }
    }
    (bad.is_empty(), format!("n <= {N}, ell = 2..9; first mismatch per ell {bad:?}"))
}

fn printed_worked_example() -> TiltingDecomposition {
    TiltingDecomposition::from_summands(
        3,
        [(6, 1u32), (4, 3), (2, 1), (0, 2)].map(|(k, m)| (Weight(k), BigUint::from(m))),
    )
    .unwrap()
}

fn c06a_worked_example_weyl() -> (bool, String) {
    let (_, d) = tensor_power(Weight(3), 2, 3).unwrap();
    let expect = DeltaMultiset::from_pairs([(6, 1), (4, 3), (2, 4), (0, 2)]);
    (d == expect, format!("Delta-multiset of T(3)^2 at ell = 3 has {} Weyl factors", count_weyl(&d)))
}

fn c06b_worked_example_tilting() -> (bool, String) {
    let (td, _) = tensor_power(Weight(3), 2, 3).unwrap();
    let printed = printed_worked_example();
    let got: Vec<String> = td.iter().rev().map(|(k, m)| format!("{m}xT({k})")).collect();
    (
        td == printed,
        format!(
            "computed {}; printed form has dimension {} (needs 36) and re-expands to a different multiset: {}",
            got.join(" + "),
            printed.dimension(),
            printed.expand() != tensor_power(Weight(3), 2, 3).unwrap().1
        ),
    )
}

fn c07_dimension_conservation() -> (bool, String) {
    let mut checked = 0usize;
    let mut ok = true;
    for ell in MODULI {
        for step in TensorPowers::new(Weight(1), ell).unwrap().take(501) {
            let target = BigUint::one() << step.n;
            ok &= step.tilting.dimension() == target && step.weyl.dimension() == target;
            ok &= count_weyl(&step.tilting.expand()) == count_weyl(&step.weyl);
            checked += 1;
        }
    }
    let (td, d) = tensor_power(Weight(3), 2, 3).unwrap();
    let dim = dim_tilting(Weight(3), 3);
    ok &= td.dimension() == &dim * &dim && d.dimension() == &dim * &dim;
    checked += 1;
    (ok, format!("{checked} tensor powers, sum mult * dim T = (dim T(k))^n"))
}

fn c08_asymptotics() -> (bool, String) {
    let mut ok = true;
    let mut worst = 0.0f64;
    let mut trend = Vec::new();
    for ell in MODULI {
        let s = sums_for(ell);
        let approx = Approximant::modular(ell).unwrap();
        let n = ASYMPTOTIC_N;
        let x = normalize_exact(&s.modular.values[n], n, approx.tau, approx.beta);
        let err = (x / approx.normalized(n) - 1.0).abs();
        worst = worst.max(err);
        let report = error_envelope(&s.modular, &approx, TREND_WINDOW).unwrap();
        ok &= err <= RATIO_TOL && report.pass;
        trend.push(format!("{:.3}", report.upper_half_max / report.lower_half_max));
    }
    (
        ok,
        format!(
            "max |ratio - 1| at n = {ASYMPTOTIC_N}: {worst:.3e} (tol {RATIO_TOL}); \
             upper/lower half trend per ell: [{}]",
            trend.join(", ")
        ),
    )
}

fn c09_quadrature() -> (bool, String) {
    let t = classical_table(60);
    let mut worst = 0.0f64;
    for n in 0..=60 {
        let exact = row_sum(&t, n).unwrap();
        worst = worst.max(spectral_an(n, DEFAULT_DIGITS).unwrap().relative_error(&exact));
    }
    (worst <= QUADRATURE_TOL, format!("n <= 60, max relative error {worst:.3e} (tol {QUADRATURE_TOL:e})"))
}

fn c10_wall_summands() -> (bool, String) {
    let mut ok = true;
    for ell in MODULI {
        for step in TensorPowers::new(Weight(1), ell).unwrap().take(201) {
            ok &= wall_summands(&step.tilting, ell) == wall_count(ell, step.n).unwrap();
        }
    }
    let mut worst = 0.0f64;
    for ell in MODULI {
        let s = sums_for(ell);
        for n in [ASYMPTOTIC_N, ASYMPTOTIC_N + 1] {
            let ratio = normalize_a1(&s.wall.values[n], n) / normalize_a1(&s.modular.values[n], n);
            let limit = rational_f64(&w_ratio_limit(ell, Parity::of(n)).unwrap());
            worst = worst.max((ratio - limit).abs());
        }
    }
    ok &= worst <= WALL_RATIO_TOL;
    (ok, format!("engines agree for n <= 200; max |w/b - limit| {worst:.3e} (tol {WALL_RATIO_TOL})"))
}

fn c11_bounds() -> (bool, String) {
    let mut bad = Vec::new();
    for k in [3u64, 4, 6] {
        for ell in 3..=5 {
            if !bounds_check(k, ell, 30).unwrap().all_hold() {
                bad.push((k - 1, ell));
            }
        }
    }
    (bad.is_empty(), format!("V in T(2), T(3), T(5); ell = 3..5; n <= 30; failures {bad:?}"))
}

fn c12_constants() -> (bool, String) {
    let mut ok = true;
    let mut seen = Vec::new();
    for (name, improved, plain) in [("A2", 12u64, 27u64), ("B2", 32, 256), ("C2", 32, 256), ("G2", 348, 46656)] {
        let rt: RootType = name.parse().unwrap();
        let st = roots::stats(rt);
        let a = roots::rank2_improved_bound(rt).unwrap();
        let h_pow = BigUint::from(st.coxeter_number).pow(st.num_positive_roots as u32);
        ok &= a == improved && h_pow == BigUint::from(plain);
        seen.push(format!("{name} {a} vs {h_pow}"));
    }
    (ok, seen.join(", "))
}

fn c13_mixed_factor() -> (bool, String) {
    const N: usize = 64;
    let mut bad = Vec::new();
    for p in 2..=7u64 {
        for ell in 2..=7u64 {
            let (num, den) = mixed_factor_parts(p, ell).unwrap();
            let f = mixed_factor_series(p, ell, N).unwrap();
            let identity = f.mul(&RationalSeries::from_poly(&den, N)).unwrap() == RationalSeries::from_poly(&num, N);
            let expect = BigRational::new((ell as i64 - 1).into(), (p as i64 - 1).into());
            if !identity || mixed_factor_limit(p, ell).unwrap() != expect {
                bad.push((p, ell));
            }
        }
    }
    (bad.is_empty(), format!("p, ell = 2..7, truncation {N}; failures {bad:?}"))
}

fn c14_theta_envelope() -> (bool, String) {
    let mut outside = Vec::new();
    let mut detail = Vec::new();
    for ell in MODULI {
        let env = roots::a1_envelope(2, 2, ell).unwrap();
        let s = sums_for(ell);
        let (lo, hi) = ENVELOPE_WINDOW;
        let xs: Vec<f64> = (lo..=hi).map(|n| normalize_a1(&s.modular.values[n], n)).collect();
        let min = xs.iter().copied().fold(f64::INFINITY, f64::min);
        let max = xs.iter().copied().fold(0.0, f64::max);
        if !xs.iter().all(|&x| env.contains(x)) {
            outside.push(ell);
        }
        detail.push(format!("ell={ell}: [{:.4}, {:.4}]", min / env.upper_const, max / env.upper_const));
    }
    (
        outside.is_empty(),
        format!(
            "envelope [1/2, 1] x sqrt(2/pi); observed range / upper: {}; outside for ell {outside:?}",
            detail.join(", ")
        ),
    )
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: "01a", title: "golden classical table", budget: secs(1), run: c01a_classical_table },
        Criterion { id: "01b", title: "golden modular table, ell = 4", budget: secs(1), run: c01b_modular_table_ell4 },
        Criterion { id: "02", title: "first eleven b_n", budget: secs(1), run: c02_first_values },
        Criterion { id: "03", title: "generating-function oracle", budget: secs(10), run: c03_generating_function },
        Criterion { id: "04", title: "ballot formula vs recursion", budget: secs(5), run: c04_ballot },
        Criterion { id: "05", title: "walk/tilting cross-oracle", budget: secs(60), run: c05_tilting_vs_walks },
        Criterion { id: "06a", title: "worked example, Weyl factors", budget: None, run: c06a_worked_example_weyl },
        Criterion { id: "06b", title: "worked example, printed tilting decomposition", budget: None, run: c06b_worked_example_tilting },
        Criterion { id: "07", title: "dimension conservation", budget: None, run: c07_dimension_conservation },
        Criterion { id: "08", title: "sharp A1 asymptotics", budget: secs(120), run: c08_asymptotics },
        Criterion { id: "09", title: "quadrature oracle", budget: secs(30), run: c09_quadrature },
        Criterion { id: "10", title: "wall summands", budget: None, run: c10_wall_summands },
        Criterion { id: "11", title: "general tilting bounds", budget: None, run: c11_bounds },
        Criterion { id: "12", title: "rank-2 constants", budget: None, run: c12_constants },
        Criterion { id: "13", title: "mixed factor", budget: None, run: c13_mixed_factor },
        Criterion { id: "14", title: "A1 growth envelope", budget: None, run: c14_theta_envelope },
    ];

    let mut unexpected = Vec::new();
    for c in &criteria {
        let start = Instant::now();
        let (mut pass, mut detail) = (c.run)();
        let elapsed = start.elapsed();
        if let Some(budget) = c.budget {
            if elapsed > budget {
                pass = false;
                detail.push_str(&format!("; over budget {budget:?}"));
            }
        }
        let known = KNOWN_FAILURES.contains(&c.id);
        let tag = match (pass, known) {
            (true, false) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
            (true, true) => "PASS (unexpected)",
        };
        println!("{tag} {} {} [{:.2?}]: {detail}", c.id, c.title, elapsed);
        if pass == known {
            unexpected.push(c.id);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: all verdicts as recorded ({} known failures)", KNOWN_FAILURES.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected verdicts for {unexpected:?}");
        ExitCode::FAILURE
    }
}
