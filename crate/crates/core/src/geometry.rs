//! Geometry of the multiset space `S_{n,q}` under the deletion distance.
//!
//! A ball around `S` is counted through its difference vectors
//! `z = x_T - x_S`: coordinate `i` contributes `s^k` for a gain of `k` and
//! `τ^k` for a loss of `k <= x_i`, and the ball size is the sum of the
//! diagonal coefficients `[s^u τ^u]` of the product for `u <= r`.
//! Averages come from the pair enumerator
//! `A_{n,q}(m) = c_{q,m} C(n-m+q-1, q-1)`, where `c_{q,m}` are the series
//! coefficients of `P_{q-1}(x) / (1-x)^{q-1}` with
//! `P_{q-1}(x) = Σ_j C(q-1,j)^2 x^j`.
//!
//! The brute-force counters here enumerate the simplex directly and are kept
//! independent of the generating-function paths they are checked against.

use serde::{Deserialize, Serialize};

use crate::combinatorics::{
    binomial, checked_add, checked_mul, rational, simplex_size, Rational,
};
use crate::error::{Error, Result};
use crate::multiset::{Multiset, Simplex};

/// Largest simplex enumerated by the brute-force ball oracle.
pub const BALL_BRUTE_LIMIT: u128 = 10_000_000;
/// Largest number of ordered pairs enumerated by the pair oracle.
pub const PAIR_BRUTE_LIMIT: u128 = 100_000_000;

/// Deletion distance `n - |S ∩ T|`, i.e. half the l1 distance.
pub fn distance(s: &Multiset, t: &Multiset) -> Result<u64> {
    if s.q() != t.q() {
        return Err(Error::InvalidMultiset(format!(
            "alphabet sizes differ: {} vs {}",
            s.q(),
            t.q()
        )));
    }
    if s.n() != t.n() {
        return Err(Error::InvalidMultiset(format!(
            "cardinalities differ: {} vs {}",
            s.n(),
            t.n()
        )));
    }
    Ok(s.n() - s.intersection_size(t))
}

/// `z = x_T - x_S`, a zero-sum integer vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DiffVector {
    z: Vec<i64>,
}

impl DiffVector {
    pub fn new(z: Vec<i64>) -> Result<Self> {
        if z.iter().sum::<i64>() != 0 {
            return Err(Error::InvalidMultiset(
                "difference vectors must sum to zero".into(),
            ));
        }
        Ok(DiffVector { z })
    }

    pub fn between(s: &Multiset, t: &Multiset) -> Result<Self> {
        distance(s, t)?;
        Ok(DiffVector {
            z: s
                .counts()
                .iter()
                .zip(t.counts())
                .map(|(&a, &b)| b as i64 - a as i64)
                .collect(),
        })
    }

    pub fn coords(&self) -> &[i64] {
        &self.z
    }

    pub fn positive(&self) -> Vec<u64> {
        self.z.iter().map(|&v| v.max(0) as u64).collect()
    }

    pub fn negative(&self) -> Vec<u64> {
        self.z.iter().map(|&v| (-v).max(0) as u64).collect()
    }

    /// `Σ z⁺ = Σ z⁻`, the distance it realizes.
    pub fn weight(&self) -> u64 {
        self.positive().iter().sum()
    }
}

/// Dense `(r+1) x (r+1)` bivariate polynomial in `(s, τ)`, truncated in each
/// variable at degree `r`.
struct Bivariate {
    r: usize,
    c: Vec<u128>,
}

impl Bivariate {
    fn one(r: usize) -> Self {
        let mut c = vec![0; (r + 1) * (r + 1)];
        c[0] = 1;
        Bivariate { r, c }
    }

    /// `1 + Σ_{k>=1} s^k + Σ_{k=1}^{x} τ^k`, truncated.
    fn coordinate(r: usize, x: u32) -> Self {
        let mut f = Bivariate::one(r);
        for k in 1..=r {
            f.c[k * (r + 1)] = 1;
        }
        for k in 1..=r.min(x as usize) {
            f.c[k] = 1;
        }
        f
    }

    fn get(&self, a: usize, b: usize) -> u128 {
        self.c[a * (self.r + 1) + b]
    }

    fn mul(&self, other: &Bivariate) -> Result<Bivariate> {
        let r = self.r;
        let mut out = vec![0u128; (r + 1) * (r + 1)];
        for a1 in 0..=r {
            for b1 in 0..=r {
                let x = self.get(a1, b1);
                if x == 0 {
                    continue;
                }
                for a2 in 0..=r - a1 {
                    for b2 in 0..=r - b1 {
                        let y = other.get(a2, b2);
                        if y == 0 {
                            continue;
                        }
                        let idx = (a1 + a2) * (r + 1) + b1 + b2;
                        out[idx] = checked_add(out[idx], checked_mul(x, y, "ball series")?, "ball series")?;
                    }
                }
            }
        }
        Ok(Bivariate { r, c: out })
    }
}

/// Ball size from the generating function, exact.
pub fn ball_size_gf(center: &Multiset, r: u64) -> Result<u128> {
    // Radii past n reach every point, and the series needs no more than n.
    let r = r.min(center.n()) as usize;
    let mut acc = Bivariate::one(r);
    for &x in center.counts() {
        acc = acc.mul(&Bivariate::coordinate(r, x))?;
    }
    (0..=r).try_fold(0u128, |sum, u| checked_add(sum, acc.get(u, u), "ball size"))
}

fn guard(what: &'static str, size: u128, limit: u128) -> Result<()> {
    if size > limit {
        Err(Error::GuardExceeded { what, size, limit })
    } else {
        Ok(())
    }
}

/// Ball size by scanning the whole simplex.
pub fn ball_brute(center: &Multiset, r: u64) -> Result<u128> {
    let (n, q) = (center.n(), center.q());
    guard("ball enumeration", simplex_size(n, q as u64)?, BALL_BRUTE_LIMIT)?;
    let mut count = 0u128;
    for t in Simplex::new(n as u32, q) {
        if n - center.intersection_size(&t) <= r {
            count += 1;
        }
    }
    Ok(count)
}

/// `(n, 0, ..., 0)`.
pub fn extreme_center(n: u32, q: usize) -> Multiset {
    let mut v = vec![0u32; q];
    if let Some(first) = v.first_mut() {
        *first = n;
    }
    Multiset::new(v)
}

/// `⌈n/q⌉` repeated `n mod q` times, then `⌊n/q⌋`.
pub fn most_balanced_center(n: u32, q: usize) -> Multiset {
    let base = n / q as u32;
    let extra = (n % q as u32) as usize;
    Multiset::new(
        (0..q)
            .map(|i| if i < extra { base + 1 } else { base })
            .collect(),
    )
}

pub fn is_most_balanced(center: &Multiset) -> bool {
    let max = center.counts().iter().max().copied().unwrap_or(0);
    let min = center.counts().iter().min().copied().unwrap_or(0);
    max - min <= 1
}

pub fn is_extreme(center: &Multiset) -> bool {
    center.counts().iter().filter(|&&c| c > 0).count() <= 1
}

/// Smallest ball size, `C(r+q-1, q-1)`, attained at extreme centers.
pub fn min_ball(n: u64, q: u64, r: u64) -> Result<u128> {
    if q == 0 {
        return Err(Error::UnsupportedParameters("empty alphabet".into()));
    }
    if r >= n {
        return Err(Error::UnsupportedParameters(format!(
            "minimal ball needs r < n (got r={r}, n={n}); larger radii cover the whole space"
        )));
    }
    binomial(r + q - 1, q - 1)
}

/// Largest ball size, evaluated at the most balanced center.
pub fn max_ball(n: u32, q: usize, r: u64) -> Result<u128> {
    ball_size_gf(&most_balanced_center(n, q), r)
}

/// `|S_{q-1}(r⁺, r⁻)| = Σ_j C(q-1,j) C(r⁺,j) C(r⁻+q-1-j, q-1-j)`.
pub fn ideal_set_size(q: u64, r_plus: u64, r_minus: u64) -> Result<u128> {
    if q < 2 {
        return Err(Error::UnsupportedParameters("ideal set needs q >= 2".into()));
    }
    let mut sum = 0u128;
    for j in 0..=r_plus.min(q - 1) {
        let term = checked_mul(
            checked_mul(binomial(q - 1, j)?, binomial(r_plus, j)?, "ideal set")?,
            binomial(r_minus + q - 1 - j, q - 1 - j)?,
            "ideal set",
        )?;
        sum = checked_add(sum, term, "ideal set")?;
    }
    Ok(sum)
}

/// `c_{q,m} = Σ_j C(q-1,j)^2 C(m-j+q-2, q-2)`.
pub fn c_coeff(q: u64, m: u64) -> Result<u128> {
    if q < 2 {
        return Err(Error::UnsupportedParameters("c_{q,m} needs q >= 2".into()));
    }
    let mut sum = 0u128;
    for j in 0..=m.min(q - 1) {
        let b = binomial(q - 1, j)?;
        let term = checked_mul(
            checked_mul(b, b, "c coefficient")?,
            binomial(m - j + q - 2, q - 2)?,
            "c coefficient",
        )?;
        sum = checked_add(sum, term, "c coefficient")?;
    }
    Ok(sum)
}

/// `c_{q,0..=max_m}` by expanding `P_{q-1}(x) / (1-x)^{q-1}` as a power
/// series: division by `(1-x)` is a running prefix sum, applied `q-1` times.
pub fn c_coeff_series(q: u64, max_m: usize) -> Result<Vec<u128>> {
    if q < 2 {
        return Err(Error::UnsupportedParameters("c_{q,m} needs q >= 2".into()));
    }
    let mut series = vec![0u128; max_m + 1];
    for (j, slot) in series.iter_mut().enumerate().take(q as usize) {
        let b = binomial(q - 1, j as u64)?;
        *slot = checked_mul(b, b, "P polynomial")?;
    }
    for _ in 0..q - 1 {
        for m in 1..=max_m {
            series[m] = checked_add(series[m], series[m - 1], "series expansion")?;
        }
    }
    Ok(series)
}

/// `c_{q,m}` for `m = 0..=max_m`, computed both ways and cross-checked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoeffTable {
    q: u64,
    coeffs: Vec<u128>,
}

impl CoeffTable {
    pub fn new(q: u64, max_m: usize) -> Result<Self> {
        let series = c_coeff_series(q, max_m)?;
        for (m, &v) in series.iter().enumerate() {
            let closed = c_coeff(q, m as u64)?;
            if closed != v {
                return Err(Error::Inconsistent(format!(
                    "c_{{{q},{m}}}: closed form {closed}, series {v}"
                )));
            }
        }
        Ok(CoeffTable { q, coeffs: series })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn coeffs(&self) -> &[u128] {
        &self.coeffs
    }

    /// `P_{q-1}` coefficients, constant term first.
    pub fn defining_polynomial(&self) -> Result<Vec<u128>> {
        (0..self.q)
            .map(|j| {
                let b = binomial(self.q - 1, j)?;
                checked_mul(b, b, "P polynomial")
            })
            .collect()
    }

    /// `Σ_{m<=r} c_{q,m}`, which equals `|S_{q-1}(r,r)|`.
    pub fn prefix_sum(&self, r: usize) -> Result<u128> {
        self.coeffs[..=r.min(self.coeffs.len() - 1)]
            .iter()
            .try_fold(0u128, |a, &b| checked_add(a, b, "prefix sum"))
    }
}

/// `|S_{q-1}(r,r)|` through the coefficient route `Σ_{m<=r} c_{q,m}`.
pub fn ideal_set_size_from_coeffs(q: u64, r: u64) -> Result<u128> {
    c_coeff_series(q, r as usize)?
        .into_iter()
        .try_fold(0u128, |a, b| checked_add(a, b, "prefix sum"))
}

/// Ordered pairs at distance exactly `m`: `c_{q,m} C(n-m+q-1, q-1)`.
pub fn pair_count(n: u64, q: u64, m: u64) -> Result<u128> {
    if m > n {
        return Err(Error::UnsupportedParameters(format!(
            "distance {m} exceeds blocklength {n}"
        )));
    }
    checked_mul(c_coeff(q, m)?, binomial(n - m + q - 1, q - 1)?, "pair count")
}

/// Distance distribution of all ordered pairs by double enumeration.
pub fn pair_distribution_brute(n: u64, q: u64) -> Result<Vec<u128>> {
    let size = simplex_size(n, q)?;
    guard(
        "pair enumeration",
        size.saturating_mul(size),
        PAIR_BRUTE_LIMIT,
    )?;
    let points: Vec<Multiset> = Simplex::new(n as u32, q as usize).collect();
    let mut dist = vec![0u128; n as usize + 1];
    for s in &points {
        for t in &points {
            dist[(n - s.intersection_size(t)) as usize] += 1;
        }
    }
    Ok(dist)
}

pub fn pair_count_brute(n: u64, q: u64, m: u64) -> Result<u128> {
    if m > n {
        return Err(Error::UnsupportedParameters(format!(
            "distance {m} exceeds blocklength {n}"
        )));
    }
    Ok(pair_distribution_brute(n, q)?[m as usize])
}

/// Average radius-`r` ball size, exact. Radii beyond `n` are clamped.
pub fn avg_ball(n: u64, q: u64, r: u64) -> Result<Rational> {
    let mut total = 0u128;
    for m in 0..=r.min(n) {
        total = checked_add(total, pair_count(n, q, m)?, "average ball")?;
    }
    Ok(rational(total, simplex_size(n, q)?))
}

/// Binary ball size at weight `w`: `min(n, w+r) - max(0, w-r) + 1`.
pub fn binary_ball_size(n: u64, w: u64, r: u64) -> u128 {
    ((n.min(w + r)) - w.saturating_sub(r) + 1) as u128
}

/// All feasible difference vectors of radius at most `r` around `center`.
pub fn delta_set(center: &Multiset, r: u64) -> Result<Vec<DiffVector>> {
    let (n, q) = (center.n(), center.q());
    guard("ball enumeration", simplex_size(n, q as u64)?, BALL_BRUTE_LIMIT)?;
    let mut out = Vec::new();
    for t in Simplex::new(n as u32, q) {
        if n - center.intersection_size(&t) <= r {
            out.push(DiffVector::between(center, &t)?);
        }
    }
    Ok(out)
}

/// `S_{q-1}(r,r)` as zero-sum vectors in `Z^q` with `Σz⁺ = Σz⁻ <= r`.
pub fn ideal_set(q: usize, r: u64) -> Vec<DiffVector> {
    fn rec(i: usize, plus: u64, minus: u64, r: u64, cur: &mut Vec<i64>, out: &mut Vec<DiffVector>) {
        let q = cur.capacity();
        if i == q {
            if plus == minus {
                out.push(DiffVector { z: cur.clone() });
            }
            return;
        }
        for v in -((r - minus) as i64)..=((r - plus) as i64) {
            cur.push(v);
            let (p, m) = if v >= 0 {
                (plus + v as u64, minus)
            } else {
                (plus, minus + v.unsigned_abs())
            };
            rec(i + 1, p, m, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, 0, 0, r, &mut Vec::with_capacity(q), &mut out);
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BallMethod {
    GeneratingFunction,
    ClosedForm,
    BruteForce,
}

impl BallMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            BallMethod::GeneratingFunction => "generating-function",
            BallMethod::ClosedForm => "closed-form",
            BallMethod::BruteForce => "brute-force",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallReport {
    pub center: Multiset,
    pub radius: u64,
    pub size: u128,
    pub method: BallMethod,
}

impl BallReport {
    /// Computes the ball size with the requested method. The closed form is
    /// available for binary alphabets, extreme centers and interior centers
    /// (`min_i x_i >= r`).
    pub fn compute(center: &Multiset, radius: u64, method: BallMethod) -> Result<Self> {
        let size = match method {
            BallMethod::GeneratingFunction => ball_size_gf(center, radius)?,
            BallMethod::BruteForce => ball_brute(center, radius)?,
            BallMethod::ClosedForm => closed_form_ball(center, radius)?,
        };
        let report = BallReport {
            center: center.clone(),
            radius,
            size,
            method,
        };
        report.check_bounds()?;
        Ok(report)
    }

    /// `C(r+q-1, q-1) <= size <= min(|S_{q-1}(r,r)|, |S_{n,q}|)`, with the lower
    /// end taken as the whole space once `r >= n`.
    pub fn check_bounds(&self) -> Result<()> {
        let (n, q, r) = (self.center.n(), self.center.q() as u64, self.radius);
        let space = simplex_size(n, q)?;
        let lower = if r >= n { space } else { binomial(r + q - 1, q - 1)? };
        let upper = ideal_set_size(q, r, r)?.min(space);
        if self.size < lower || self.size > upper {
            return Err(Error::Inconsistent(format!(
                "ball size {} at {} radius {r} outside [{lower}, {upper}]",
                self.size, self.center
            )));
        }
        Ok(())
    }
}

fn closed_form_ball(center: &Multiset, r: u64) -> Result<u128> {
    let (n, q) = (center.n(), center.q() as u64);
    if r >= n {
        return simplex_size(n, q);
    }
    if q == 2 {
        return Ok(binary_ball_size(n, center.counts()[1] as u64, r));
    }
    if is_extreme(center) {
        return min_ball(n, q, r);
    }
    if center.counts().iter().all(|&x| x as u64 >= r) {
        return ideal_set_size(q, r, r);
    }
    Err(Error::UnsupportedParameters(format!(
        "no closed form for center {center} at radius {r}"
    )))
}

/// `C(r+q-1, q-1)` for a radius that reaches the whole space is the space
/// itself; used by callers that want `min_ball` without the `r < n` gate.
pub fn min_ball_clamped(n: u64, q: u64, r: u64) -> Result<u128> {
    if r >= n {
        simplex_size(n, q)
    } else {
        min_ball(n, q, r)
    }
}
