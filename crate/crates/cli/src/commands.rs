use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde_json::{json, Value};
use tiltwalk_core::asymptotics::{
    error_envelope, normalize_a1, ratio_table, rational_f64, spectral_an, w_ratio_limit,
    Approximant, Parity, DEFAULT_DIGITS, SPECTRAL_MAX_N, TREND_FACTOR,
};
use tiltwalk_core::io::{
    series_to_json, sums_to_csv, sums_to_json, table_to_csv, table_to_json, DecompositionRecord,
};
use tiltwalk_core::roots::{self, RootType};
use tiltwalk_core::series::{
    gf_a_half_line, gf_b, mixed_factor_series, rational_to_string,
    wall_series, RationalSeries,
};
use tiltwalk_core::tilting::{
    char_zero_constant, count_summands, count_weyl, wall_summands, TensorPowers, Weight,
};
use tiltwalk_core::verify::{self, Golden, Profile};
use tiltwalk_core::walks::{classical_table, modular_table, row_sum, streamed_sums, CountTable};

use crate::config::FileConfig;
use crate::{
    AsymptArgs, BoundsArgs, Common, Failure, Format, PlotArgs, SeriesArgs, SeriesKind, TiltArgs,
    VerifyArgs, WalkArgs,
};

pub const PRECISION_ENV: &str = "TILTWALK_PRECISION";

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// Flags merged over the config file.
struct Resolved {
    ell: Option<u64>,
    n: Option<usize>,
    format: Option<Format>,
    output: Option<PathBuf>,
}

impl Resolved {
    fn new(c: &Common, file: &FileConfig) -> Result<Self, Failure> {
        let format = match (&c.format, &file.format) {
            (Some(f), _) => Some(*f),
            (None, Some(s)) => Some(match s.as_str() {
                "csv" => Format::Csv,
                "json" => Format::Json,
                _ => return Err(usage(format!("config: unknown format {s:?}"))),
            }),
            (None, None) => None,
        };
        Ok(Self {
            ell: c.ell.or(file.ell),
            n: c.n.or(file.n),
            format,
            output: c.output.clone().or_else(|| file.output.clone()),
        })
    }

    fn ell(&self) -> Result<u64, Failure> {
        match self.ell {
            None => Err(usage("--ell is required")),
            Some(ell) if ell < 2 => Err(usage(format!("--ell must be at least 2, got {ell}"))),
            Some(ell) => Ok(ell),
        }
    }
}

fn emit(text: &str, output: Option<&Path>) -> Outcome {
    match output {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::Runtime),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .context("writing to stdout")
                .map_err(Failure::Runtime)
        }
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn precision(flag: Option<u32>, file: &FileConfig) -> Result<u32, Failure> {
    if let Some(p) = flag {
        return Ok(p);
    }
    if let Ok(s) = std::env::var(PRECISION_ENV) {
        return s
            .trim()
            .parse()
            .map_err(|_| usage(format!("{PRECISION_ENV} must be a positive integer, got {s:?}")));
    }
    Ok(file.precision.unwrap_or(DEFAULT_DIGITS))
}

pub fn walk(args: WalkArgs, file: &FileConfig) -> Outcome {
    let r = Resolved::new(&args.common, file)?;
    let n = r.n.unwrap_or(15);
    let table: CountTable = if args.classical {
        classical_table(n)
    } else {
        modular_table(r.ell()?, n)?
    };
    let format = r.format.unwrap_or(Format::Csv);
    let text = if args.sums_only {
        let sums = (0..=n).map(|i| row_sum(&table, i)).collect::<Result<Vec<_>, _>>()?;
        let label = if args.classical { "a_n" } else { "b_n" };
        match format {
            Format::Csv => sums_to_csv(label, &sums),
            Format::Json => sums_to_json(&sums) + "\n",
        }
    } else {
        match format {
            Format::Csv => table_to_csv(&table),
            Format::Json => table_to_json(&table) + "\n",
        }
    };
    emit(&text, r.output.as_deref())
}

fn series_csv(s: &RationalSeries) -> String {
    let mut out = String::from("n,coefficient\n");
    for (i, c) in s.coeffs().iter().enumerate() {
        writeln!(out, "{i},{}", rational_to_string(c)).unwrap();
    }
    out
}

pub fn series(args: SeriesArgs, file: &FileConfig) -> Outcome {
    let r = Resolved::new(&args.common, file)?;
    let n = r.n.unwrap_or(20);
    let s = match args.kind {
        SeriesKind::HalfLine => gf_a_half_line(n),
        SeriesKind::B => {
            let ell = r.ell()?;
            if ell < 3 {
                return Err(usage("--kind b needs --ell >= 3; use `walk --sums-only` for ell = 2"));
            }
            gf_b(ell, n, &wall_series(ell, n)?)?
        }
        SeriesKind::Wall => wall_series(r.ell()?, n)?,
        SeriesKind::Mixed => {
            let p = args.p.ok_or_else(|| usage("--kind mixed needs --p"))?;
            mixed_factor_series(p, r.ell()?, n)?
        }
    };
    let text = match r.format.unwrap_or(Format::Json) {
        Format::Json => series_to_json(&s) + "\n",
        Format::Csv => series_csv(&s),
    };
    emit(&text, r.output.as_deref())
}

pub fn asympt(args: AsymptArgs, file: &FileConfig) -> Outcome {
    let r = Resolved::new(&args.common, file)?;
    let ell = r.ell()?;
    let n = r.n.unwrap_or(2000);
    if n < 2 {
        return Err(usage("--n must be at least 2"));
    }
    let lo = args.from.unwrap_or((n / 10).max(1));
    let sums = streamed_sums(ell, n)?;
    let approx = Approximant::modular(ell)?;
    let rows = ratio_table(&sums.modular, &approx, (lo, n))?;
    let format = r.format.unwrap_or(Format::Json);
    if format == Format::Csv {
        let mut out = String::from("n,ratio,n_times_error\n");
        for row in &rows {
            writeln!(out, "{},{},{}", row.n, row.ratio, row.n_times_error).unwrap();
        }
        return emit(&out, r.output.as_deref());
    }
    let report = error_envelope(&sums.modular, &approx, (lo, n))?;
    let mut wall = serde_json::Map::new();
    for m in [n - 1, n] {
        let parity = Parity::of(m);
        let key = if parity == Parity::Even { "even" } else { "odd" };
        let b = normalize_a1(&sums.modular.values[m], m);
        let w = normalize_a1(&sums.wall.values[m], m);
        let limit = w_ratio_limit(ell, parity)?;
        wall.insert(
            key.into(),
            json!({
                "n": m,
                "ratio": w / b,
                "limit": rational_to_string(&limit),
                "limit_value": rational_f64(&limit),
            }),
        );
    }
    let mut out = json!({
        "ell": ell,
        "n": n,
        "window": [lo, n],
        "ratio_at_n": rows.last().map(|row| row.ratio),
        "envelope": {
            "constant": report.constant,
            "lower_half_max": report.lower_half_max,
            "upper_half_max": report.upper_half_max,
            "trend_factor": TREND_FACTOR,
            "pass": report.pass,
        },
        "wall_over_b": wall,
    });
    if let Some(q) = args.quadrature {
        if q > SPECTRAL_MAX_N {
            return Err(usage(format!("--quadrature is limited to n <= {SPECTRAL_MAX_N}")));
        }
        let digits = precision(args.precision, file)?;
        let table = classical_table(q);
        let mut items = Vec::new();
        for m in 0..=q {
            let v = spectral_an(m, digits)?;
            let exact = row_sum(&table, m)?;
            items.push(json!({
                "n": m,
                "exact": exact.to_string(),
                "relative_error": v.relative_error(&exact),
                "panels": v.panels,
            }));
        }
        out["quadrature"] = json!({ "digits": digits, "values": items });
    }
    emit(&json_text(&out), r.output.as_deref())
}

pub fn tilt(args: TiltArgs, file: &FileConfig) -> Outcome {
    let r = Resolved::new(&args.common, file)?;
    let ell = r.ell()?;
    let n = r.n.unwrap_or(10);
    let k = Weight(args.k.or(file.k).unwrap_or(1));
    let format = r.format.unwrap_or(Format::Csv);
    let steps: Vec<_> = TensorPowers::new(k, ell)?.take(n + 1).collect();
    let text = if args.show_decomp {
        let last = steps.last().expect("at least the zeroth power");
        let record = DecompositionRecord::new(&last.tilting, &last.weyl);
        match format {
            Format::Json => record.to_json() + "\n",
            Format::Csv => {
                let mut out = String::from("kind,weight,multiplicity\n");
                for (w, m) in last.tilting.iter() {
                    writeln!(out, "T,{w},{m}").unwrap();
                }
                for (w, m) in last.weyl.iter() {
                    writeln!(out, "Delta,{w},{m}").unwrap();
                }
                out
            }
        }
    } else {
        match format {
            Format::Csv => {
                let mut out = String::from("n,summands,weyl,wall,dimension\n");
                for s in &steps {
                    writeln!(
                        out,
                        "{},{},{},{},{}",
                        s.n,
                        count_summands(&s.tilting),
                        count_weyl(&s.weyl),
                        wall_summands(&s.tilting, ell),
                        s.tilting.dimension()
                    )
                    .unwrap();
                }
                out
            }
            Format::Json => {
                let rows: Vec<Value> = steps
                    .iter()
                    .map(|s| {
                        json!({
                            "n": s.n,
                            "summands": count_summands(&s.tilting).to_string(),
                            "weyl": count_weyl(&s.weyl).to_string(),
                            "wall": wall_summands(&s.tilting, ell).to_string(),
                            "dimension": s.tilting.dimension().to_string(),
                        })
                    })
                    .collect();
                json_text(&Value::Array(rows))
            }
        }
    };
    emit(&text, r.output.as_deref())
}

pub fn bounds(args: BoundsArgs, file: &FileConfig) -> Outcome {
    let rt: RootType = args.root_type.parse()?;
    let ell = args.ell.or(file.ell).ok_or_else(|| usage("--ell is required"))?;
    let st = roots::stats(rt);
    let is_a1 = rt.to_string() == "A1";
    let constant = match args.constant {
        Some(c) => c,
        None if is_a1 => char_zero_constant(args.dim)
            .ok_or_else(|| usage("type A1 needs --dim >= 2 for its built-in constant"))?,
        None => 1.0,
    };
    let env = roots::theta_envelope(&st, args.dim, constant, ell)?;
    let improved = roots::rank2_improved_bound(rt).ok();
    let out = json!({
        "type": rt.to_string(),
        "rank": rt.rank,
        "num_positive_roots": st.num_positive_roots,
        "coxeter_number": st.coxeter_number,
        "rho": st.rho,
        "ell": ell,
        "steinberg_dim": roots::steinberg_dim(&st, ell)?.to_string(),
        "projective_delta_bound": roots::projective_delta_bound(&st, ell)?.to_string(),
        "rank2_improved_bound": improved,
        "rank2_improved_applies": roots::rank2_min_ell(rt).is_some_and(|m| ell >= m),
        "envelope": {
            "tau": env.tau.to_string(),
            "beta": env.beta,
            "upper_const": env.upper_const,
            "lower_const": env.lower_const,
            "divisor": env.divisor.to_string(),
            "constant_is_relative": args.constant.is_none() && !is_a1,
        },
    });
    emit(&json_text(&out), args.output.as_deref().or(file.output.as_deref()))
}

pub fn verify(args: VerifyArgs, file: &FileConfig) -> Outcome {
    let profile: Profile = args
        .profile
        .or_else(|| file.profile.clone())
        .unwrap_or_else(|| "quick".into())
        .parse()
        .map_err(|e: tiltwalk_core::Error| usage(e.to_string()))?;
    let golden = match args.golden_dir.or_else(|| file.golden_dir.clone()) {
        Some(dir) => Golden::from_dir(&dir).map_err(|e| Failure::Runtime(e.into()))?,
        None => Golden::embedded(),
    };
    let digits = precision(args.precision, file)?;
    let results = verify::run(profile, &golden, digits);
    let mut out = String::new();
    for r in &results {
        writeln!(out, "{r}").unwrap();
    }
    let passed = results.iter().filter(|r| r.pass).count();
    writeln!(out, "{passed}/{} checks passed", results.len()).unwrap();
    emit(&out, None)?;
    if passed == results.len() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

pub fn plotdata(args: PlotArgs, file: &FileConfig) -> Outcome {
    let r = Resolved::new(&args.common, file)?;
    let ell = r.ell()?;
    let n = r.n.unwrap_or(100);
    let sums = streamed_sums(ell, n)?;
    let approx = Approximant::modular(ell)?;
    let base = Approximant::classical().normalized(1);
    let rows: Vec<(usize, f64, f64)> = (1..=n)
        .map(|i| {
            let ratio = normalize_a1(&sums.modular.values[i], i) / base;
            (i, ratio, approx.normalized(i) / base)
        })
        .collect();
    let text = match r.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut out = String::from("n,ratio,limit\n");
            for (i, ratio, limit) in rows {
                writeln!(out, "{i},{ratio},{limit}").unwrap();
            }
            out
        }
        Format::Json => json_text(&Value::Array(
            rows.into_iter()
                .map(|(i, ratio, limit)| json!({ "n": i, "ratio": ratio, "limit": limit }))
                .collect(),
        )),
    };
    emit(&text, r.output.as_deref())
}
