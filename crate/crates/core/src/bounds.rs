//! Volume bounds on the largest multiset code, as exact rationals.
//!
//! Two distance conventions appear. A code corrects `t` deletions when its
//! minimum distance is at least `t + 1`; the packing bounds are stated for a
//! radius `r` and hold for codes of minimum distance at least `2r + 1`. The
//! `*_distance` variants take the minimum distance `d` and use
//! `r = (d - 1) / 2`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::combinatorics::{
    binomial_signed, ceil, floor, format_rational, rational, rational_int, simplex_size, Rational,
};
use crate::error::{Error, Result};
use crate::geometry::{avg_ball, distance, ideal_set_size, min_ball_clamped};
use crate::multiset::{Multiset, Simplex};

/// Largest space searched by [`exact_max_code`].
pub const EXACT_MAX_LIMIT: u128 = 30;

fn space(n: u64, q: u64) -> Result<u128> {
    simplex_size(n, q)
}

/// `C(n+q-1,q-1) / C(t+q-1,q-1)`: radius-`t` balls around codewords of a
/// distance-`2t+1` code are disjoint and each holds at least the minimal ball.
/// For `t >= n` every ball is the whole space and the bound is 1.
pub fn sphere_packing(n: u64, q: u64, t: u64) -> Result<Rational> {
    Ok(rational(space(n, q)?, min_ball_clamped(n, q, t)?))
}

pub fn sphere_packing_distance(n: u64, q: u64, d: u64) -> Result<Rational> {
    sphere_packing(n, q, d.saturating_sub(1) / 2)
}

/// Anticode bound `space/β(t,q) + q t Σ_{j=1}^{qt} C(n+q-1-j, q-2)` with
/// `β(t,q) = |S_{q-1}(t,t)|`.
pub fn kt_anticode(n: u64, q: u64, t: u64) -> Result<Rational> {
    if q < 2 {
        return Err(Error::UnsupportedParameters("anticode bound needs q >= 2".into()));
    }
    let beta = ideal_set_size(q, t, t)?;
    let mut boundary = BigInt::from(0u8);
    for j in 1..=q * t {
        let top = n as i64 + q as i64 - 1 - j as i64;
        boundary += BigInt::from(binomial_signed(top, q as i64 - 2)?);
    }
    boundary *= BigInt::from(q) * BigInt::from(t);
    let main = Rational::new(BigInt::from(space(n, q)?), BigInt::from(beta));
    Ok(main + Rational::from_integer(boundary))
}

pub fn kt_anticode_distance(n: u64, q: u64, d: u64) -> Result<Rational> {
    kt_anticode(n, q, d.saturating_sub(1) / 2)
}

/// `space / B̄_t = space² / Σ_{m<=t} A_{n,q}(m)`, a lower bound on the largest
/// code of minimum distance `t + 1`. Radii beyond `n` are clamped.
pub fn gv_lower(n: u64, q: u64, t: u64) -> Result<Rational> {
    let s = rational_int(space(n, q)?);
    Ok(s / avg_ball(n, q, t.min(n))?)
}

pub fn gv_lower_distance(n: u64, q: u64, d: u64) -> Result<Rational> {
    gv_lower(n, q, d.saturating_sub(1))
}

/// Whether an upper bound is no better than the space size.
pub fn is_vacuous(bound: &Rational, n: u64, q: u64) -> Result<bool> {
    Ok(*bound > rational_int(space(n, q)?))
}

/// Exact maximum size of a code with minimum distance `d`, by exhaustive
/// maximum-independent-set search on the conflict graph.
pub fn exact_max_code_distance(n: u64, q: u64, d: u64) -> Result<u64> {
    let size = space(n, q)?;
    if size > EXACT_MAX_LIMIT {
        return Err(Error::GuardExceeded {
            what: "exact maximum code search",
            size,
            limit: EXACT_MAX_LIMIT,
        });
    }
    let words: Vec<Multiset> = Simplex::new(n as u32, q as usize).collect();
    let mut adj = vec![0u32; words.len()];
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            if distance(&words[i], &words[j])? < d {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    let all = if words.len() == 32 { u32::MAX } else { (1u32 << words.len()) - 1 };
    Ok(max_independent(&adj, all) as u64)
}

/// Largest code correcting `t` deletions (minimum distance `t + 1`).
pub fn exact_max_code(n: u64, q: u64, t: u64) -> Result<u64> {
    exact_max_code_distance(n, q, t + 1)
}

fn max_independent(adj: &[u32], cand: u32) -> u32 {
    if cand == 0 {
        return 0;
    }
    let mut best_v = 0usize;
    let mut best_deg = 0u32;
    let mut rest = cand;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let deg = (adj[v] & cand).count_ones();
        if deg <= 1 {
            // a vertex of degree at most one belongs to some maximum set
            return 1 + max_independent(adj, cand & !(adj[v] | 1 << v));
        }
        if deg > best_deg {
            best_deg = deg;
            best_v = v;
        }
    }
    let v = best_v;
    let with = 1 + max_independent(adj, cand & !(adj[v] | 1 << v));
    if with as u64 >= cand.count_ones() as u64 - 1 {
        return with;
    }
    with.max(max_independent(adj, cand & !(1 << v)))
}

/// All three bounds for codes of minimum distance `d`: the packing bounds at
/// radius `t = (d - 1) / 2`, the GV bound at distance `d`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: u64,
    pub q: u64,
    pub t: u64,
    pub d: u64,
    pub space: u128,
    #[serde(serialize_with = "ser_rational")]
    pub sphere_packing: Rational,
    #[serde(serialize_with = "ser_bigint")]
    pub sphere_packing_floor: BigInt,
    pub sphere_packing_vacuous: bool,
    #[serde(serialize_with = "ser_opt_rational")]
    pub kt_anticode: Option<Rational>,
    #[serde(serialize_with = "ser_opt_bigint")]
    pub kt_anticode_floor: Option<BigInt>,
    pub kt_anticode_vacuous: bool,
    #[serde(serialize_with = "ser_rational")]
    pub gv_lower: Rational,
    #[serde(serialize_with = "ser_bigint")]
    pub gv_lower_ceil: BigInt,
}

fn ser_rational<S: serde::Serializer>(x: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(x))
}

fn ser_bigint<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn ser_opt_rational<S: serde::Serializer>(
    x: &Option<Rational>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => ser_rational(x, s),
        None => s.serialize_none(),
    }
}

fn ser_opt_bigint<S: serde::Serializer>(
    x: &Option<BigInt>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => ser_bigint(x, s),
        None => s.serialize_none(),
    }
}

impl BoundReport {
    /// Radius-`t` report, i.e. the distance `2t + 1` family.
    pub fn compute(n: u64, q: u64, t: u64) -> Result<Self> {
        Self::for_distance(n, q, 2 * t + 1)
    }

    pub fn for_distance(n: u64, q: u64, d: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::UnsupportedParameters("bounds need q >= 2".into()));
        }
        let t = d.saturating_sub(1) / 2;
        let sp = sphere_packing(n, q, t)?;
        let kt = if t >= 1 { Some(kt_anticode(n, q, t)?) } else { None };
        let gv = gv_lower_distance(n, q, d)?;
        Ok(BoundReport {
            n,
            q,
            t,
            d,
            space: space(n, q)?,
            sphere_packing_floor: floor(&sp),
            sphere_packing_vacuous: is_vacuous(&sp, n, q)?,
            kt_anticode_floor: kt.as_ref().map(floor),
            kt_anticode_vacuous: match &kt {
                Some(kt) => is_vacuous(kt, n, q)?,
                None => false,
            },
            gv_lower_ceil: ceil(&gv),
            sphere_packing: sp,
            kt_anticode: kt,
            gv_lower: gv,
        })
    }

    /// Smallest upper bound, capped by the space size.
    pub fn best_upper_floor(&self) -> BigInt {
        let mut best = BigInt::from(self.space).min(self.sphere_packing_floor.clone());
        if let Some(kt) = &self.kt_anticode_floor {
            best = best.min(kt.clone());
        }
        best
    }

    /// `⌈gv⌉ <= min(⌊sp⌋, ⌊kt⌋, space)`.
    pub fn is_consistent(&self) -> bool {
        self.gv_lower_ceil <= self.best_upper_floor()
    }
}

/// Outcome of the exact-search sandwich on one tiny instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sandwich {
    pub n: u64,
    pub q: u64,
    pub t: u64,
    pub gv_ceil: u64,
    pub exact: u64,
    pub upper_floor: u64,
}

impl Sandwich {
    pub fn holds(&self) -> bool {
        self.gv_ceil <= self.exact && self.exact <= self.upper_floor
    }
}

/// `⌈gv(t)⌉ <= S_q(n,t) <= ⌊min(sp, kt, space)⌋` for the distance-`t+1`
/// family. The packing bounds are taken at radius `t/2`, the largest radius
/// whose balls are disjoint around such a code.
pub fn sandwich(n: u64, q: u64, t: u64) -> Result<Sandwich> {
    let report = BoundReport::for_distance(n, q, t + 1)?;
    let small = |x: BigInt| x.to_u64().ok_or(Error::Overflow("sandwich bound"));
    Ok(Sandwich {
        n,
        q,
        t,
        gv_ceil: small(report.gv_lower_ceil.clone())?,
        exact: exact_max_code(n, q, t)?,
        upper_floor: small(report.best_upper_floor())?,
    })
}

/// Every `(n, q, t)` with `q >= 2`, `t <= n` and space size at most
/// [`EXACT_MAX_LIMIT`].
pub fn tiny_instances() -> Vec<(u64, u64, u64)> {
    let mut out = Vec::new();
    for q in 2..=EXACT_MAX_LIMIT as u64 {
        for n in 0.. {
            if simplex_size(n, q).map_or(true, |s| s > EXACT_MAX_LIMIT) {
                break;
            }
            for t in 0..=n {
                out.push((n, q, t));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::binomial;

    #[test]
    fn worked_instance() {
        assert_eq!(sphere_packing(6, 3, 2).unwrap(), rational(28, 6));
        assert_eq!(floor(&sphere_packing(6, 3, 2).unwrap()), BigInt::from(4));
        let kt = kt_anticode(6, 3, 2).unwrap();
        assert_eq!(kt, rational(3106, 19));
        assert_eq!(kt, rational(28, 19) + rational_int(6 * 27));
        assert!(is_vacuous(&kt, 6, 3).unwrap());
        assert!(exact_max_code_distance(6, 3, 5).unwrap() >= 3);
        assert_eq!(sphere_packing_distance(6, 3, 5).unwrap(), rational(28, 6));
    }

    #[test]
    fn binary_forms() {
        for n in 0..30u64 {
            assert_eq!(sphere_packing(n, 2, 0).unwrap(), rational_int(n as u128 + 1));
            assert_eq!(sphere_packing(n, 2, n + 3).unwrap(), rational_int(1));
            for t in 0..n {
                assert_eq!(
                    sphere_packing(n, 2, t).unwrap(),
                    rational(n as u128 + 1, t as u128 + 1)
                );
            }
        }
        assert_eq!(kt_anticode(10, 2, 1).unwrap(), rational(11, 3) + rational_int(4));
    }

    #[test]
    fn gv_matches_pair_enumerator() {
        use crate::geometry::pair_count;
        for (n, q, t) in [(6u64, 3u64, 2u64), (8, 4, 3), (5, 2, 1), (7, 3, 0)] {
            let s = space(n, q).unwrap();
            let denom: u128 = (0..=t).map(|m| pair_count(n, q, m).unwrap()).sum();
            assert_eq!(gv_lower(n, q, t).unwrap(), rational(s * s, denom));
        }
        assert_eq!(gv_lower(9, 3, 0).unwrap(), rational_int(binomial(11, 2).unwrap()));
    }

    /// Brute force over all subsets for spaces up to 16 points.
    fn max_code_brute(n: u64, q: u64, d: u64) -> u64 {
        let words: Vec<Multiset> = Simplex::new(n as u32, q as usize).collect();
        let k = words.len();
        assert!(k <= 16);
        let mut best = 0;
        for mask in 0u32..(1 << k) {
            let members: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
            let ok = members.iter().enumerate().all(|(a, &i)| {
                members[a + 1..]
                    .iter()
                    .all(|&j| distance(&words[i], &words[j]).unwrap() >= d)
            });
            if ok {
                best = best.max(members.len() as u64);
            }
        }
        best
    }

    #[test]
    fn exact_search_matches_subset_brute_force() {
        for q in 2..=4u64 {
            for n in 0..=5u64 {
                if space(n, q).unwrap() > 16 {
                    continue;
                }
                for d in 0..=n + 1 {
                    assert_eq!(
                        exact_max_code_distance(n, q, d).unwrap(),
                        max_code_brute(n, q, d),
                        "n={n} q={q} d={d}"
                    );
                }
            }
        }
    }

    #[test]
    fn exact_search_trivial_cases() {
        assert_eq!(exact_max_code(6, 3, 0).unwrap(), 28);
        assert_eq!(exact_max_code(6, 3, 6).unwrap(), 1);
        assert_eq!(exact_max_code(29, 2, 0).unwrap(), 30);
        assert!(matches!(
            exact_max_code(7, 3, 1),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn sandwich_on_tiny_instances() {
        let cases = tiny_instances();
        assert!(cases.contains(&(6, 3, 2)));
        for (n, q, t) in cases {
            let s = sandwich(n, q, t).unwrap();
            assert!(s.holds(), "{s:?}");
        }
    }

    #[test]
    fn report_fields() {
        let r = BoundReport::compute(6, 3, 2).unwrap();
        assert_eq!(r.space, 28);
        assert!(r.kt_anticode_vacuous && !r.sphere_packing_vacuous);
        assert_eq!(r.best_upper_floor(), BigInt::from(4));
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["kt_anticode"], "3106/19");
        assert_eq!(json["sphere_packing"], "14/3");
        assert_eq!(r.d, 5);
        assert_eq!(r.gv_lower, gv_lower(6, 3, 4).unwrap());
        assert!(r.is_consistent());
        assert!(BoundReport::compute(3, 3, 0).unwrap().kt_anticode.is_none());
        let even = BoundReport::for_distance(6, 3, 4).unwrap();
        assert_eq!((even.t, even.gv_lower.clone()), (1, gv_lower(6, 3, 3).unwrap()));
    }

    #[test]
    fn reports_consistent() {
        for q in 2..=6u64 {
            for n in 0..=30u64 {
                for d in 0..=n + 1 {
                    let r = BoundReport::for_distance(n, q, d).unwrap();
                    assert!(r.is_consistent(), "{r:?}");
                }
            }
        }
    }
}
