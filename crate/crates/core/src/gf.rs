//! Arithmetic in `F_s` for prime powers `s = p^k <= 2^16`.
//!
//! Elements are stored as integer labels in `[0, s)`: the coefficient vector
//! `(c_0, ..., c_{k-1})` of the polynomial representative (constant term
//! first) is read as the base-`p` digits of the label, `c_0` least
//! significant. For `k = 1` the label is the residue itself.
//! Multiplication goes through discrete log tables built from a primitive
//! element found at construction time.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
    k: u32,
    /// Monic, length `k + 1`, constant term first. `X` when `k = 1`.
    modulus: Vec<u32>,
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `s` as `p^k`, or `None` if it is not a prime power.
pub fn prime_power(s: u32) -> Option<(u32, u32)> {
    if s < 2 {
        return None;
    }
    let p = (2..=s).find(|d| s.is_multiple_of(*d))?;
    let (mut rest, mut k) = (s, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

// Dense polynomial helpers over the prime field F_p, only used to set up
// extension fields. Vectors are constant term first, possibly with trailing
// zeros.

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn prime_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let m = trim(m.to_vec());
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let lead_inv = prime_inv(m[dm], p);
    while r.len() > dm {
        let dr = r.len() - 1;
        let c = (r[dr] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &mi) in m.iter().enumerate() {
            let idx = dr - dm + i;
            let sub = (c as u64 * mi as u64 % p as u64) as u32;
            r[idx] = (r[idx] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

fn prime_inv(a: u32, p: u32) -> u32 {
    // Fermat; p is prime
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}

fn prime_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = ((prod[i + j] as u64 + ai as u64 * bj as u64) % p as u64) as u32;
        }
    }
    prime_rem(&prod, m, p)
}

/// Exhaustive check that a monic `f` over `F_p` has no monic factor of
/// degree `1..=deg(f)/2`.
pub(crate) fn prime_irreducible(f: &[u32], p: u32) -> bool {
    let f = trim(f.to_vec());
    let deg = f.len().saturating_sub(1);
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let mut g = Vec::with_capacity(d + 1);
            let mut x = idx;
            for _ in 0..d {
                g.push((x % p as u64) as u32);
                x /= p as u64;
            }
            g.push(1);
            if prime_rem(&f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl FieldSpec {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// `F_{p^k}` with an explicit modulus, or the lexicographically smallest
    /// monic irreducible of degree `k` when `modulus` is `None`.
    pub fn new(p: u32, k: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if k == 0 {
            return Err(Error::InvalidField("extension degree must be positive".into()));
        }
        let order = (p as u64).checked_pow(k).filter(|&s| s <= MAX_ORDER as u64);
        if order.is_none() {
            return Err(Error::InvalidField(format!(
                "order {p}^{k} exceeds the supported maximum {MAX_ORDER}"
            )));
        }
        let modulus = match (k, modulus) {
            (1, None) => vec![0, 1],
            (1, Some(m)) => {
                let m = trim(m);
                if m != [0, 1] {
                    return Err(Error::InvalidField(
                        "prime fields take no modulus other than X".into(),
                    ));
                }
                m
            }
            (_, Some(m)) => {
                let m = trim(m);
                if m.len() != k as usize + 1 || m[k as usize] != 1 {
                    return Err(Error::InvalidField(format!(
                        "modulus must be monic of degree {k}"
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidField(format!(
                        "modulus coefficients must lie in [0, {p})"
                    )));
                }
                if !prime_irreducible(&m, p) {
                    return Err(Error::InvalidField(format!(
                        "modulus {m:?} is reducible over F_{p}"
                    )));
                }
                m
            }
            (_, None) => smallest_prime_irreducible(p, k),
        };
        Ok(FieldSpec { p, k, modulus })
    }

    /// Field of order `s`, with automatic modulus selection.
    pub fn from_order(s: u32) -> Result<Self> {
        let (p, k) = prime_power(s)
            .ok_or_else(|| Error::InvalidField(format!("{s} is not a prime power")))?;
        Self::new(p, k, None)
    }

    /// Parses `p^k`, `s`, optionally followed by `mod=c0,c1,...`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("field spec {text:?}: {msg}"));
        let mut parts = text.split_whitespace();
        let head = parts.next().ok_or_else(|| bad("empty"))?;
        let mut modulus = None;
        for part in parts {
            let coeffs = part
                .strip_prefix("mod=")
                .ok_or_else(|| bad("expected mod=<coefficients>"))?;
            modulus = Some(parse_u32_list(coeffs).map_err(|_| bad("bad modulus"))?);
        }
        let (p, k) = match head.split_once('^') {
            Some((p, k)) => (
                p.parse().map_err(|_| bad("bad characteristic"))?,
                k.parse().map_err(|_| bad("bad degree"))?,
            ),
            None => {
                let s: u32 = head.parse().map_err(|_| bad("bad order"))?;
                prime_power(s).ok_or_else(|| bad("order is not a prime power"))?
            }
        };
        Self::new(p, k, modulus)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.p.pow(self.k)
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "{}", self.p)
        } else {
            let m: Vec<String> = self.modulus.iter().map(u32::to_string).collect();
            write!(f, "{}^{} mod={}", self.p, self.k, m.join(","))
        }
    }
}

pub(crate) fn parse_u32_list(s: &str) -> std::result::Result<Vec<u32>, std::num::ParseIntError> {
    s.split(',').map(|c| c.trim().parse()).collect()
}

fn smallest_prime_irreducible(p: u32, k: u32) -> Vec<u32> {
    // Constant term is the most significant digit of the search order.
    let count = (p as u64).pow(k);
    for idx in 0..count {
        let mut coeffs = vec![0u32; k as usize];
        let mut x = idx;
        for c in coeffs.iter_mut().rev() {
            *c = (x % p as u64) as u32;
            x /= p as u64;
        }
        coeffs.push(1);
        if prime_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

#[derive(Debug)]
struct Tables {
    spec: FieldSpec,
    order: u32,
    /// `exp[i] = g^i` for `i < 2(s-1)`.
    exp: Vec<u32>,
    /// `log[a]` for `a != 0`.
    log: Vec<u32>,
}

/// A finite field with precomputed log tables. Cheap to clone.
#[derive(Clone)]
pub struct Gf(Arc<Tables>);

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf({})", self.0.spec)
    }
}

impl PartialEq for Gf {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Gf {}

impl Gf {
    pub fn new(spec: FieldSpec) -> Self {
        let order = spec.order();
        let p = spec.p;
        let k = spec.k as usize;
        let to_digits = |mut v: u32| {
            let mut d = vec![0u32; k];
            for c in d.iter_mut() {
                *c = v % p;
                v /= p;
            }
            d
        };
        let from_digits = |d: &[u32]| d.iter().rev().fold(0u32, |acc, &c| acc * p + c);
        let raw_mul = |a: u32, b: u32| -> u32 {
            if k == 1 {
                (a as u64 * b as u64 % p as u64) as u32
            } else {
                from_digits(&prime_mulmod(&to_digits(a), &to_digits(b), &spec.modulus, p))
            }
        };

        let group = (order - 1) as usize;
        let mut exp = Vec::with_capacity(2 * group.max(1));
        for g in 1..order {
            exp.clear();
            let mut x = 1u32;
            loop {
                exp.push(x);
                x = raw_mul(x, g);
                if x == 1 {
                    break;
                }
            }
            if exp.len() == group {
                break;
            }
        }
        debug_assert_eq!(exp.len(), group);
        let mut log = vec![u32::MAX; order as usize];
        for (i, &x) in exp.iter().enumerate() {
            log[x as usize] = i as u32;
        }
        let doubled: Vec<u32> = exp.iter().chain(exp.iter()).copied().collect();
        Gf(Arc::new(Tables {
            spec,
            order,
            exp: doubled,
            log,
        }))
    }

    pub fn from_order(s: u32) -> Result<Self> {
        Ok(Self::new(FieldSpec::from_order(s)?))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }

    pub fn order(&self) -> u32 {
        self.0.order
    }

    pub fn characteristic(&self) -> u32 {
        self.0.spec.p
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.0.spec.p;
        if self.0.spec.k == 1 {
            return (a + b) % p;
        }
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b, mut place, mut out) = (a, b, 1u32, 0u32);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        let p = self.0.spec.p;
        if self.0.spec.k == 1 {
            return (p - a) % p;
        }
        if p == 2 {
            return a;
        }
        let (mut a, mut place, mut out) = (a, 1u32, 0u32);
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &self.0;
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::NotInvertible);
        }
        let t = &self.0;
        let group = t.order - 1;
        Ok(t.exp[((group - t.log[a as usize]) % group) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let t = &self.0;
        let group = (t.order - 1) as u64;
        t.exp[(t.log[a as usize] as u64 * (e % group) % group) as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.order()
    }

    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if value >= self.order() {
            return Err(Error::InvalidField(format!(
                "{value} is not an element label of a field of order {}",
                self.order()
            )));
        }
        Ok(FieldElement {
            field: self.clone(),
            value,
        })
    }
}

/// An element tagged with its field, for checked arithmetic across fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Gf,
    value: u32,
}

impl FieldElement {
    pub fn value(&self) -> u32 {
        self.value
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::Mismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(self.with(self.field.inv(self.value)?))
    }

    fn with(&self, value: u32) -> Self {
        FieldElement {
            field: self.field.clone(),
            value,
        }
    }
}
