//! Invariant suites over bounded parameter ranges. Each check records the
//! offending instance instead of stopping at the first failure.

use serde::Serialize;

use crate::bounds::{self, BoundReport};
use crate::codes::{self, CodeParams};
use crate::combinatorics::{binomial, format_rational, rational, rational_int, simplex_size, Rational};
use crate::error::Result;
use crate::geometry::{
    avg_ball, ball_brute, ball_size_gf, c_coeff, ideal_set, ideal_set_size,
    ideal_set_size_from_coeffs, is_extreme, is_most_balanced, pair_count,
    pair_distribution_brute,
};
use crate::gf::Gf;
use crate::multiset::{submultisets_of_size, Multiset, Simplex};
use crate::ring::Variant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Geometry,
    Codes,
    Bounds,
}

impl Suite {
    pub const ALL: [Suite; 3] = [Suite::Geometry, Suite::Codes, Suite::Bounds];

    pub fn as_str(&self) -> &'static str {
        match self {
            Suite::Geometry => "geometry",
            Suite::Codes => "codes",
            Suite::Bounds => "bounds",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_n: u32,
    pub max_q: usize,
    /// Bounds suite: only the exact-search sandwich and the worked example.
    pub tiny: bool,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_n: 8,
            max_q: 4,
            tiny: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: String,
    pub instance: String,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: u64,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, check: &str, instance: impl FnOnce() -> String, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(Failure {
                check: check.to_string(),
                instance: instance(),
                detail: detail(),
            });
        }
    }

    fn error(&mut self, check: &str, instance: String, err: crate::Error) {
        self.checks += 1;
        self.failures.push(Failure {
            check: check.to_string(),
            instance,
            detail: err.to_string(),
        });
    }

    fn merge(&mut self, other: Report) {
        self.checks += other.checks;
        self.failures.extend(other.failures);
    }
}

pub fn run(suite: Suite, limits: &Limits) -> Report {
    match suite {
        Suite::Geometry => geometry_suite(limits),
        Suite::Codes => codes_suite(limits),
        Suite::Bounds => bounds_suite(limits),
    }
}

macro_rules! attempt {
    ($report:expr, $check:expr, $inst:expr, $e:expr) => {
        match $e {
            Ok(v) => v,
            Err(err) => {
                $report.error($check, $inst, err);
                return $report;
            }
        }
    };
}

pub fn geometry_suite(limits: &Limits) -> Report {
    let mut report = Report::default();
    for q in 2..=limits.max_q {
        for n in 0..=limits.max_n {
            report.merge(ball_oracle(n, q));
            report.merge(pair_enumerator(n, q));
            report.merge(extremal_centers(n, q));
        }
        report.merge(ideal_enumeration(q, 4.min(limits.max_n as u64)));
    }
    report.merge(ideal_closed_forms(20));
    report
}

/// Generating-function ball sizes against the scan, every center and radius.
pub fn ball_oracle(n: u32, q: usize) -> Report {
    let mut report = Report::default();
    for center in Simplex::new(n, q) {
        for r in 0..=n as u64 {
            let inst = || format!("center={center} r={r}");
            let gf = attempt!(report, "ball_size_gf", inst(), ball_size_gf(&center, r));
            let brute = attempt!(report, "ball_brute", inst(), ball_brute(&center, r));
            report.check(gf == brute, "ball oracle", inst, || format!("gf={gf} brute={brute}"));
        }
    }
    report
}

/// Pair counts against double enumeration, and the row-sum identity.
pub fn pair_enumerator(n: u32, q: usize) -> Report {
    let mut report = Report::default();
    let (n, q) = (n as u64, q as u64);
    let inst = || format!("n={n} q={q}");
    let brute = attempt!(report, "pair_distribution_brute", inst(), pair_distribution_brute(n, q));
    let mut total = 0u128;
    for m in 0..=n {
        let count = attempt!(report, "pair_count", inst(), pair_count(n, q, m));
        total += count;
        report.check(
            count == brute[m as usize],
            "pair enumerator",
            || format!("n={n} q={q} m={m}"),
            || format!("formula={count} brute={}", brute[m as usize]),
        );
    }
    let space = attempt!(report, "space", inst(), simplex_size(n, q));
    report.check(total == space * space, "pair row sum", inst, || {
        format!("sum={total} space^2={}", space * space)
    });
    report
}

/// Minimal balls at extreme centers, maximal balls at most balanced centers,
/// and monotonicity along single balancing steps.
pub fn extremal_centers(n: u32, q: usize) -> Report {
    let mut report = Report::default();
    let centers: Vec<Multiset> = Simplex::new(n, q).collect();
    for r in 0..n as u64 {
        let inst = || format!("n={n} q={q} r={r}");
        let mut sizes = Vec::with_capacity(centers.len());
        for c in &centers {
            sizes.push(attempt!(report, "ball_size_gf", inst(), ball_size_gf(c, r)));
        }
        let min = *sizes.iter().min().expect("nonempty simplex");
        let max = *sizes.iter().max().expect("nonempty simplex");
        let want = attempt!(report, "binomial", inst(), binomial(r + q as u64 - 1, q as u64 - 1));
        report.check(min == want, "min ball value", inst, || format!("min={min} expected={want}"));
        for (c, &size) in centers.iter().zip(&sizes) {
            if is_extreme(c) {
                report.check(size == min, "min ball at extreme center", || format!("center={c} r={r}"), || {
                    format!("size={size} min={min}")
                });
            }
            if is_most_balanced(c) {
                report.check(size == max, "max ball at balanced center", || format!("center={c} r={r}"), || {
                    format!("size={size} max={max}")
                });
            }
        }
        // moving one unit from a larger to a smaller coordinate (difference
        // at least 2) never shrinks the ball
        let index: std::collections::HashMap<&Multiset, u128> =
            centers.iter().zip(sizes.iter().copied()).collect();
        for c in &centers {
            for i in 0..q {
                for j in 0..q {
                    let (xi, xj) = (c.counts()[i], c.counts()[j]);
                    if i == j || xi < xj + 2 {
                        continue;
                    }
                    let mut v = c.counts().to_vec();
                    v[i] -= 1;
                    v[j] += 1;
                    let moved = Multiset::new(v);
                    let (a, b) = (index[c], index[&moved]);
                    report.check(b >= a, "balancing step", || format!("{c} -> {moved} r={r}"), || {
                        format!("{a} -> {b}")
                    });
                }
            }
        }
    }
    report
}

/// `|S_{q-1}(r,r)|` by enumeration.
pub fn ideal_enumeration(q: usize, max_r: u64) -> Report {
    let mut report = Report::default();
    for r in 0..=max_r {
        let inst = || format!("q={q} r={r}");
        let size = attempt!(report, "ideal_set_size", inst(), ideal_set_size(q as u64, r, r));
        let listed = ideal_set(q, r).len() as u128;
        report.check(size == listed, "ideal set enumeration", inst, || {
            format!("formula={size} enumerated={listed}")
        });
    }
    report
}

/// `2r+1`, `3r²+3r+1`, `(10r³+15r²+11r+3)/3` via the ideal-set formula and
/// via prefix sums of `c_{q,m}`.
pub fn ideal_closed_forms(max_r: u64) -> Report {
    let mut report = Report::default();
    for r in 0..=max_r {
        let r128 = r as u128;
        let closed = [
            (2, 2 * r128 + 1),
            (3, 3 * r128 * r128 + 3 * r128 + 1),
            (4, (10 * r128.pow(3) + 15 * r128 * r128 + 11 * r128 + 3) / 3),
        ];
        for (q, want) in closed {
            let inst = || format!("q={q} r={r}");
            let a = attempt!(report, "ideal_set_size", inst(), ideal_set_size(q, r, r));
            let b = attempt!(report, "c_coeff prefix", inst(), ideal_set_size_from_coeffs(q, r));
            report.check(a == want && b == want, "ideal closed form", inst, || {
                format!("formula={a} series={b} closed={want}")
            });
        }
    }
    report
}

/// `(q-1) Σ_{m<=t} m c_{q,m}`, the limit of `n (|S_{q-1}(t,t)| - B̄_t(n,q))`.
pub fn avg_gap_constant(q: u64, t: u64) -> Result<u128> {
    let mut k = 0u128;
    for m in 1..=t {
        k += m as u128 * c_coeff(q, m)?;
    }
    Ok(k * (q as u128 - 1))
}

/// `|S_{q-1}(t,t)| - B̄_t(n,q)` for each `n`.
pub fn avg_gap_profile(q: u64, t: u64, ns: impl IntoIterator<Item = u64>) -> Result<Vec<(u64, Rational)>> {
    let ideal = rational_int(ideal_set_size(q, t, t)?);
    ns.into_iter()
        .map(|n| Ok((n, ideal.clone() - avg_ball(n, q, t)?)))
        .collect()
}

/// The gap is positive and decreasing, and `n · gap` increases while staying
/// below [`avg_gap_constant`].
pub fn avg_gap_check(q: u64, t: u64, ns: std::ops::RangeInclusive<u64>) -> Report {
    let mut report = Report::default();
    let inst = || format!("q={q} t={t}");
    let profile = attempt!(report, "avg_gap_profile", inst(), avg_gap_profile(q, t, ns));
    let k = rational_int(attempt!(report, "avg_gap_constant", inst(), avg_gap_constant(q, t)));
    let zero = rational_int(0);
    for (i, (n, gap)) in profile.iter().enumerate() {
        let scaled = gap * rational_int(*n as u128);
        let here = || format!("q={q} t={t} n={n}");
        report.check(*gap > zero, "gap positive", here, || format_rational(gap));
        report.check(scaled < k, "n*gap below constant", here, || {
            format!("{} >= {}", format_rational(&scaled), format_rational(&k))
        });
        if let Some((m, prev)) = i.checked_sub(1).map(|j| &profile[j]) {
            let prev_scaled = prev * rational_int(*m as u128);
            report.check(gap < prev, "gap decreasing", here, || {
                format!("{} then {}", format_rational(prev), format_rational(gap))
            });
            report.check(scaled > prev_scaled, "n*gap increasing", here, || {
                format!("{} then {}", format_rational(&prev_scaled), format_rational(&scaled))
            });
        }
    }
    report
}

/// Instances exercised by the codes suite.
pub fn code_instances() -> Vec<(Variant, u32, u32)> {
    vec![
        (Variant::Projective, 2, 1),
        (Variant::Projective, 3, 1),
        (Variant::Projective, 3, 2),
        (Variant::Projective, 4, 2),
        (Variant::Affine, 3, 2),
        (Variant::Affine, 4, 2),
        (Variant::Affine, 4, 3),
        (Variant::Affine, 5, 2),
    ]
}

pub fn codes_suite(limits: &Limits) -> Report {
    let mut report = Report::default();
    for (variant, s, t) in code_instances() {
        let q = match variant {
            Variant::Projective => s as usize + 1,
            Variant::Affine => s as usize,
        };
        if q > limits.max_q.max(4) + 1 {
            continue;
        }
        let inst = || format!("{variant} s={s} t={t}");
        let field = attempt!(report, "field", inst(), Gf::from_order(s));
        let base = attempt!(report, "params", inst(), CodeParams::with_auto_modulus(variant, field, 0, t));
        report.merge(redundancy_check(&base));
        for n in 0..=limits.max_n {
            report.merge(decode_round_trip(&base.with_n(n)));
            report.merge(class_partition(&base.with_n(n)));
        }
    }
    report
}

/// Every multiset under every pattern of at most `t` deletions decodes back
/// within its own syndrome class.
pub fn decode_round_trip(params: &CodeParams) -> Report {
    let mut report = Report::default();
    let inst = || {
        format!(
            "{} s={} t={} n={} f={}",
            params.variant(),
            params.s(),
            params.t(),
            params.n(),
            params.modulus()
        )
    };
    let tables = attempt!(report, "build_tables", inst(), codes::build_tables(params));
    for word in Simplex::new(params.n(), params.q()) {
        let c = attempt!(report, "syndrome", inst(), codes::syndrome(params, &word));
        for r in 0..=(params.t() as u64).min(word.n()) {
            for e in submultisets_of_size(&word, r) {
                let received = word.difference(&e).expect("submultiset");
                let here = || format!("{} word={} received={}", inst(), word, received);
                match codes::decode(params, &c, &tables, &received) {
                    Ok(d) => report.check(d.codeword == word && d.error == e, "decode round trip", here, || {
                        format!("decoded {} with E={}", d.codeword, d.error)
                    }),
                    Err(err) => report.error("decode round trip", here(), err),
                }
            }
        }
    }
    report
}

/// Class sizes add up to the space; the chosen class meets the average and
/// the radius-`t/2` packing bound; codes have distance at least `t + 1`.
pub fn class_partition(params: &CodeParams) -> Report {
    let mut report = Report::default();
    let inst = || format!("{} s={} t={} n={}", params.variant(), params.s(), params.t(), params.n());
    let (n, q, t) = (params.n() as u64, params.q() as u64, params.t() as u64);
    let sizes = attempt!(report, "class_sizes", inst(), codes::class_sizes(params));
    let space = attempt!(report, "space", inst(), simplex_size(n, q));
    let total: u128 = sizes.values().sum();
    report.check(total == space, "class partition", inst, || format!("sum={total} space={space}"));
    let (_, best) = attempt!(report, "best_syndrome_class", inst(), codes::best_syndrome_class(params));
    let avg = attempt!(report, "averaging_bound", inst(), codes::averaging_bound(params));
    let size = best.len() as u128;
    report.check(rational_int(size) >= avg, "averaging bound", inst, || {
        format!("size={size} average={}", format_rational(&avg))
    });
    let sp = attempt!(report, "sphere_packing", inst(), bounds::sphere_packing(n, q, t / 2));
    report.check(rational_int(size) <= sp, "packing bound", inst, || {
        format!("size={size} bound={}", format_rational(&sp))
    });
    if let Some(d) = best.min_distance() {
        report.check(d > t, "minimum distance", inst, || format!("d={d}"));
    }
    report
}

/// Group order formulas and the redundancy bound.
pub fn redundancy_check(params: &CodeParams) -> Report {
    let mut report = Report::default();
    let inst = || format!("{} s={} t={} f={}", params.variant(), params.s(), params.t(), params.modulus());
    let red = attempt!(report, "redundancy", inst(), codes::redundancy(params));
    let s = params.s() as u128;
    let t = params.t();
    let expected = match params.variant() {
        Variant::Affine => s.pow(t) - 1,
        Variant::Projective => (s.pow(t + 1) - 1) / (s - 1),
    };
    report.check(red.group_order == expected, "group order", inst, || {
        format!("|G|={} expected={expected}", red.group_order)
    });
    report.check(red.within_bound(params), "redundancy bound", inst, || format!("|G|={}", red.group_order));
    let counted = attempt!(report, "count_units", inst(), params.group().count_units());
    let counted = match params.variant() {
        Variant::Affine => counted,
        Variant::Projective => counted / (s - 1),
    };
    report.check(counted == red.group_order, "group order by counting", inst, || {
        format!("counted={counted} formula={}", red.group_order)
    });
    report
}

pub fn bounds_suite(limits: &Limits) -> Report {
    let mut report = Report::default();
    report.merge(worked_bounds());
    report.merge(tiny_sandwich());
    if limits.tiny {
        return report;
    }
    for q in 2..=limits.max_q as u64 {
        for n in 0..=limits.max_n as u64 {
            for d in 0..=n + 1 {
                let inst = || format!("n={n} q={q} d={d}");
                let r = attempt!(report, "bound report", inst(), BoundReport::for_distance(n, q, d));
                report.check(r.is_consistent(), "report consistency", inst, || {
                    format!("gv ceil {} > upper {}", r.gv_lower_ceil, r.best_upper_floor())
                });
            }
        }
    }
    report.merge(gv_binary_closed_form(50, 10));
    report
}

/// Values from the `n = 6, q = 3, t = 2` instance.
pub fn worked_bounds() -> Report {
    let mut report = Report::default();
    let inst = || "n=6 q=3 t=2".to_string();
    let sp = attempt!(report, "sphere_packing", inst(), bounds::sphere_packing(6, 3, 2));
    report.check(sp == rational(28, 6), "sphere packing value", inst, || format_rational(&sp));
    let kt = attempt!(report, "kt_anticode", inst(), bounds::kt_anticode(6, 3, 2));
    report.check(kt == rational(3106, 19), "anticode value", inst, || format_rational(&kt));
    let vac = attempt!(report, "vacuity", inst(), bounds::is_vacuous(&kt, 6, 3));
    report.check(vac, "anticode vacuous", inst, String::new);
    let exact = attempt!(report, "exact_max_code", inst(), bounds::exact_max_code_distance(6, 3, 5));
    report.check((3..=4).contains(&exact), "distance-5 code size", inst, || exact.to_string());
    report
}

pub fn tiny_sandwich() -> Report {
    let mut report = Report::default();
    for (n, q, t) in bounds::tiny_instances() {
        let inst = || format!("n={n} q={q} t={t}");
        let s = attempt!(report, "sandwich", inst(), bounds::sandwich(n, q, t));
        report.check(s.holds(), "sandwich", inst, || {
            format!("gv={} exact={} upper={}", s.gv_ceil, s.exact, s.upper_floor)
        });
    }
    report
}

/// `gv_lower(n, 2, t) = (n+1) / ((2t+1) - t(t+1)/(n+1))`.
pub fn gv_binary_closed_form(max_n: u64, max_t: u64) -> Report {
    let mut report = Report::default();
    for n in 0..=max_n {
        for t in 0..=max_t.min(n) {
            let inst = || format!("n={n} t={t}");
            let gv = attempt!(report, "gv_lower", inst(), bounds::gv_lower(n, 2, t));
            let (n1, t1) = (n as u128 + 1, t as u128);
            let avg = rational_int(2 * t1 + 1) - rational(t1 * (t1 + 1), n1);
            let want = rational_int(n1) / avg;
            report.check(gv == want, "binary gv closed form", inst, || {
                format!("{} vs {}", format_rational(&gv), format_rational(&want))
            });
        }
    }
    report
}
