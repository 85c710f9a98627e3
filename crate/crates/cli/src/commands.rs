use std::fs;
use std::ops::RangeInclusive;
use std::path::Path;

use multiset_codes::bounds::{exact_max_code_distance, BoundReport, EXACT_MAX_LIMIT};
use multiset_codes::codes::{
    averaging_bound, best_syndrome_class, enumerate_code, redundancy, CodeFile,
    CodeInstance, CodeParams, Decoder, DeletionChannel, RNG_ALGORITHM,
};
use multiset_codes::combinatorics::simplex_size;
use multiset_codes::geometry::{
    ball_brute, ball_size_gf, ideal_set, ideal_set_size, ideal_set_size_from_coeffs, pair_count,
    pair_distribution_brute,
};
use multiset_codes::gf::{prime_power, FieldSpec, Gf};
use multiset_codes::poly::Poly;
use multiset_codes::ring::Variant;
use multiset_codes::verify::{self, Limits, Suite};
use multiset_codes::{Error, Multiset, Simplex};
use serde_json::Value;

use crate::output::{Output, Record};
use crate::{
    Cli, CliError, ConstructArgs, DecodeArgs, FieldArgs, Outcome, SimulateArgs, SuiteArg,
    TableKind, TablesArgs, VariantArg, VerifyArgs,
};

type Result<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_list(text: &str) -> Result<Vec<u32>> {
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u32>().map_err(|_| usage(format!("not a number: {t:?} in {text:?}"))))
        .collect()
}

/// `a`, `a..b` or `a..=b`, both ends inclusive.
fn parse_range(text: &str) -> Result<RangeInclusive<u64>> {
    let num = |t: &str| {
        t.trim()
            .parse::<u64>()
            .map_err(|_| usage(format!("bad range {text:?}")))
    };
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let v = num(text)?;
            (v, v)
        }
    };
    if lo > hi {
        return Err(usage(format!("empty range {text:?}")));
    }
    Ok(lo..=hi)
}

fn field(args: &FieldArgs) -> Result<Gf> {
    let (p, k) = prime_power(args.s).ok_or_else(|| usage(format!("s={} is not a prime power", args.s)))?;
    let modulus = args.field_modulus.as_deref().map(parse_list).transpose()?;
    Ok(Gf::new(FieldSpec::new(p, k, modulus)?))
}

fn load_code(path: &Path) -> Result<CodeInstance> {
    let text = fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(CodeFile::from_json(&text)?.to_instance()?)
}

fn words(code: &CodeInstance) -> Value {
    let p = code.params();
    Value::Array(
        code.codewords()
            .iter()
            .map(|m| Value::String(p.format_multiset(m)))
            .collect(),
    )
}

pub fn construct(cli: &Cli, a: &ConstructArgs) -> Result<Outcome> {
    let variant = match a.variant {
        VariantArg::Projective => Variant::Projective,
        VariantArg::Affine => Variant::Affine,
    };
    let field = field(&a.field)?;
    let params = match &a.f {
        Some(f) => {
            let f = Poly::from_labels(&field, parse_list(f)?)?;
            CodeParams::new(variant, field, f, a.n, a.t)?
        }
        None => CodeParams::with_auto_modulus(variant, field, a.n, a.t)?,
    };
    let code = match &a.syndrome {
        Some(text) => {
            let c = params.group().parse_element(text)?;
            enumerate_code(&params, &c)?
        }
        None => best_syndrome_class(&params)?.1,
    };
    if let Some(path) = &a.code {
        fs::write(path, CodeFile::from_instance(&code).to_json() + "\n")?;
    }
    let red = redundancy(&params)?;
    let avg = averaging_bound(&params)?;
    let mut rec = Record::new()
        .with("variant", params.variant().to_string())
        .with("s", params.s())
        .with("f", params.modulus().to_string())
        .with("n", params.n())
        .with("t", params.t())
        .with("q", params.q())
        .with("syndrome", code.syndrome().to_string())
        .with("size", code.len())
        .with("group_order", red.group_order.to_string())
        .with("redundancy", format!("log_{}({})", red.q, red.group_order));
    if cli.approx {
        rec.push("redundancy_approx", red.value);
    }
    rec = rec
        .rational("averaging_bound", &avg, cli.approx)
        .with("min_distance", code.min_distance().map_or(Value::Null, Value::from))
        .with("codewords", words(&code));
    Ok(Outcome {
        output: Output::Record(rec),
        passed: true,
    })
}

pub fn decode(a: &DecodeArgs) -> Result<Outcome> {
    let code = load_code(&a.code)?;
    let p = code.params().clone();
    let received = p.parse_multiset(&a.received)?;
    let decoder = Decoder::new(code)?;
    let d = decoder.decode(&received)?;
    let rec = Record::new()
        .with("received", p.format_multiset(&received))
        .with("deletions", d.error.n())
        .with("codeword", p.format_multiset(&d.codeword))
        .with("error", p.format_multiset(&d.error));
    Ok(Outcome {
        output: Output::Record(rec),
        passed: true,
    })
}

pub fn simulate(cli: &Cli, a: &SimulateArgs) -> Result<Outcome> {
    let code = load_code(&a.code)?;
    let t = code.params().t() as u64;
    if a.r > t {
        return Err(usage(format!("r={} exceeds the correction radius t={t}", a.r)));
    }
    if code.is_empty() {
        return Err(usage("the code has no codewords"));
    }
    let decoder = Decoder::new(code)?;
    let mut channel = DeletionChannel::new(cli.seed);
    let mut successes = 0u64;
    for _ in 0..a.trials {
        let idx = channel.pick(decoder.code().len());
        let word = &decoder.code().codewords()[idx];
        let received = channel.delete(word, a.r.min(word.n()))?;
        match decoder.decode(&received) {
            Ok(d) if &d.codeword == word => successes += 1,
            Ok(_) | Err(Error::Uncorrectable(_)) => {}
            Err(e) => return Err(e.into()),
        }
    }
    let rec = Record::new()
        .with("trials", a.trials)
        .with("r", a.r)
        .with("successes", successes)
        .with("failures", a.trials - successes)
        .with("seed", cli.seed)
        .with("rng", RNG_ALGORITHM);
    Ok(Outcome {
        output: Output::Record(rec),
        passed: successes == a.trials,
    })
}

pub fn tables(cli: &Cli, a: &TablesArgs) -> Result<Outcome> {
    let (rows, passed) = match &a.kind {
        TableKind::Balls {
            n,
            q,
            centers,
            r,
            with_oracle,
        } => balls(*n, *q, centers, r.as_deref(), *with_oracle)?,
        TableKind::Pairs { n, q, with_oracle } => pairs(&parse_range(n)?, &parse_range(q)?, *with_oracle)?,
        TableKind::Bounds {
            n,
            q,
            t,
            d,
            with_oracle,
        } => {
            let (spec, by_distance) = match (t, d) {
                (_, Some(d)) => (d.as_str(), true),
                (Some(t), None) => (t.as_str(), false),
                (None, None) => return Err(usage("tables bounds needs --t or --d")),
            };
            bounds(
                &parse_range(n)?,
                &parse_range(q)?,
                &parse_range(spec)?,
                by_distance,
                *with_oracle,
                cli.approx,
            )?
        }
        TableKind::Ideal {
            q,
            r,
            r_minus,
            with_oracle,
        } => {
            let minus = r_minus.as_deref().map(parse_range).transpose()?;
            ideal(&parse_range(q)?, &parse_range(r)?, minus.as_ref(), *with_oracle)?
        }
    };
    Ok(Outcome {
        output: Output::Table(rows),
        passed,
    })
}

fn guard_cell<T: Into<Value>>(r: std::result::Result<T, Error>) -> Result<Value> {
    match r {
        Ok(v) => Ok(v.into()),
        Err(e @ Error::GuardExceeded { .. }) => Ok(Value::String(format!("guard: {e}"))),
        Err(e) => Err(e.into()),
    }
}

fn balls(
    n: u32,
    q: usize,
    centers: &[String],
    radii: Option<&str>,
    with_oracle: bool,
) -> Result<(Vec<Record>, bool)> {
    let centers: Vec<Multiset> = if centers.is_empty() {
        Simplex::new(n, q).collect()
    } else {
        centers
            .iter()
            .map(|c| {
                let m = Multiset::new(parse_list(c)?);
                if m.q() != q || m.n() != n as u64 {
                    return Err(usage(format!("center {c} is not in S_{{{n},{q}}}")));
                }
                Ok(m)
            })
            .collect::<Result<_>>()?
    };
    let radii = match radii {
        Some(r) => parse_range(r)?,
        None => 0..=n as u64,
    };
    let mut rows = Vec::new();
    let mut passed = true;
    for r in radii {
        let mut rec = Record::new().with("r", r);
        let mut agree = true;
        for c in &centers {
            let size = ball_size_gf(c, r)?;
            rec.push(&c.to_string(), size.to_string());
            if with_oracle {
                let brute = guard_cell(ball_brute(c, r).map(|b| b.to_string()))?;
                agree &= brute == Value::String(size.to_string());
                rec.push(&format!("{c} brute"), brute);
            }
        }
        if with_oracle {
            rec.push("agree", agree);
            passed &= agree;
        }
        rows.push(rec);
    }
    Ok((rows, passed))
}

fn pairs(ns: &RangeInclusive<u64>, qs: &RangeInclusive<u64>, with_oracle: bool) -> Result<(Vec<Record>, bool)> {
    let mut rows = Vec::new();
    let mut passed = true;
    for q in qs.clone() {
        for n in ns.clone() {
            let brute = if with_oracle {
                match pair_distribution_brute(n, q) {
                    Ok(v) => Some(Ok(v)),
                    Err(e @ Error::GuardExceeded { .. }) => Some(Err(e.to_string())),
                    Err(e) => return Err(e.into()),
                }
            } else {
                None
            };
            for m in 0..=n {
                let count = pair_count(n, q, m)?;
                let mut rec = Record::new()
                    .with("n", n)
                    .with("q", q)
                    .with("m", m)
                    .with("pairs", count.to_string());
                match &brute {
                    Some(Ok(v)) => {
                        let ok = v[m as usize] == count;
                        passed &= ok;
                        rec.push("brute", v[m as usize].to_string());
                        rec.push("agree", ok);
                    }
                    Some(Err(msg)) => {
                        rec.push("brute", format!("guard: {msg}"));
                        rec.push("agree", Value::Null);
                    }
                    None => {}
                }
                rows.push(rec);
            }
        }
    }
    Ok((rows, passed))
}

fn bounds(
    ns: &RangeInclusive<u64>,
    qs: &RangeInclusive<u64>,
    params: &RangeInclusive<u64>,
    by_distance: bool,
    with_oracle: bool,
    approx: bool,
) -> Result<(Vec<Record>, bool)> {
    let mut rows = Vec::new();
    let mut passed = true;
    for q in qs.clone() {
        for n in ns.clone() {
            for x in params.clone() {
                let r = if by_distance {
                    BoundReport::for_distance(n, q, x)?
                } else {
                    BoundReport::compute(n, q, x)?
                };
                let mut rec = Record::new()
                    .with("n", n)
                    .with("q", q)
                    .with("t", r.t)
                    .with("d", r.d)
                    .with("space", r.space.to_string())
                    .rational("sphere_packing", &r.sphere_packing, approx)
                    .with("sp_floor", r.sphere_packing_floor.to_string())
                    .with("sp_vacuous", r.sphere_packing_vacuous);
                rec = match &r.kt_anticode {
                    Some(kt) => rec.rational("kt_anticode", kt, approx),
                    None => rec.with("kt_anticode", Value::Null),
                };
                rec = rec
                    .with("kt_floor", r.kt_anticode_floor.as_ref().map_or(Value::Null, |f| f.to_string().into()))
                    .with("kt_vacuous", r.kt_anticode_vacuous)
                    .rational("gv_lower", &r.gv_lower, approx)
                    .with("gv_ceil", r.gv_lower_ceil.to_string());
                let consistent = r.is_consistent();
                passed &= consistent;
                if with_oracle {
                    if r.space <= EXACT_MAX_LIMIT {
                        let exact = exact_max_code_distance(n, q, r.d)?;
                        let ok = r.gv_lower_ceil <= exact.into() && r.best_upper_floor() >= exact.into();
                        passed &= ok;
                        rec.push("exact_max", exact);
                        rec.push("agree", ok && consistent);
                    } else {
                        rec.push(
                            "exact_max",
                            format!("guard: space {} exceeds {EXACT_MAX_LIMIT}", r.space),
                        );
                        rec.push("agree", consistent);
                    }
                }
                rows.push(rec);
            }
        }
    }
    Ok((rows, passed))
}

fn ideal(
    qs: &RangeInclusive<u64>,
    rs: &RangeInclusive<u64>,
    minus: Option<&RangeInclusive<u64>>,
    with_oracle: bool,
) -> Result<(Vec<Record>, bool)> {
    let mut rows = Vec::new();
    let mut passed = true;
    for q in qs.clone() {
        for r_plus in rs.clone() {
            let minus_values: Vec<u64> = match minus {
                Some(m) => m.clone().collect(),
                None => vec![r_plus],
            };
            for r_minus in minus_values {
                let size = ideal_set_size(q, r_plus, r_minus)?;
                let mut rec = Record::new()
                    .with("q", q)
                    .with("r_plus", r_plus)
                    .with("r_minus", r_minus)
                    .with("size", size.to_string());
                if with_oracle {
                    if r_plus == r_minus {
                        let series = ideal_set_size_from_coeffs(q, r_plus)?;
                        let listed = guard_cell(enumerate_ideal(q, r_plus))?;
                        let ok = series == size && listed == Value::String(size.to_string());
                        passed &= ok;
                        rec.push("series", series.to_string());
                        rec.push("enumerated", listed);
                        rec.push("agree", ok);
                    } else {
                        rec.push("series", Value::Null);
                        rec.push("enumerated", Value::Null);
                        rec.push("agree", Value::Null);
                    }
                }
                rows.push(rec);
            }
        }
    }
    Ok((rows, passed))
}

/// Explicit enumeration of `S_{q-1}(r,r)`, refused past a few million points.
fn enumerate_ideal(q: u64, r: u64) -> std::result::Result<String, Error> {
    const LIMIT: u128 = 5_000_000;
    let size = simplex_size(r, q)?.saturating_mul(simplex_size(r, q)?);
    if size > LIMIT {
        return Err(Error::GuardExceeded {
            what: "ideal set enumeration",
            size,
            limit: LIMIT,
        });
    }
    Ok(ideal_set(q as usize, r).len().to_string())
}

pub fn verify(a: &VerifyArgs) -> Result<Outcome> {
    let limits = Limits {
        max_n: a.max_n,
        max_q: a.max_q,
        tiny: a.tiny,
    };
    let suites: Vec<Suite> = match a.suite {
        SuiteArg::All => Suite::ALL.to_vec(),
        SuiteArg::Geometry => vec![Suite::Geometry],
        SuiteArg::Codes => vec![Suite::Codes],
        SuiteArg::Bounds => vec![Suite::Bounds],
    };
    let mut summary = Vec::new();
    let mut failures = Vec::new();
    for suite in suites {
        let report = verify::run(suite, &limits);
        summary.push(
            Record::new()
                .with("suite", suite.as_str())
                .with("status", if report.passed() { "pass" } else { "fail" })
                .with("checks", report.checks)
                .with("failures", report.failures.len()),
        );
        for f in report.failures {
            failures.push(
                Record::new()
                    .with("suite", suite.as_str())
                    .with("check", f.check)
                    .with("instance", f.instance)
                    .with("detail", f.detail),
            );
        }
    }
    let passed = failures.is_empty();
    Ok(Outcome {
        output: Output::Table(if passed { summary } else { failures }),
        passed,
    })
}
