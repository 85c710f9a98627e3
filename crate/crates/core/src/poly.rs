//! Dense univariate polynomials over `F_s`, constant term first.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{parse_u32_list, Gf};

/// Normalized polynomial: no trailing zero coefficients, so the zero
/// polynomial is the empty vector and has no degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<u32>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1] }
    }

    /// `X - a` over `field`.
    pub fn linear(field: &Gf, a: u32) -> Self {
        Poly::new(vec![field.neg(a), 1])
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Parses `c0,c1,...` and checks every coefficient is a label of `field`.
    pub fn parse(field: &Gf, text: &str) -> Result<Self> {
        let coeffs = parse_u32_list(text)
            .map_err(|_| Error::Parse(format!("polynomial {text:?}")))?;
        Self::from_labels(field, coeffs)
    }

    pub fn from_labels(field: &Gf, coeffs: Vec<u32>) -> Result<Self> {
        if let Some(c) = coeffs.iter().find(|&&c| c >= field.order()) {
            return Err(Error::Parse(format!(
                "coefficient {c} is not an element of F_{}",
                field.order()
            )));
        }
        Ok(Poly::new(coeffs))
    }

    pub fn eval(&self, field: &Gf, x: u32) -> u32 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| field.add(field.mul(acc, x), c))
    }

    pub fn has_root(&self, field: &Gf) -> bool {
        field.elements().any(|a| self.eval(field, a) == 0)
    }

    pub fn add(&self, field: &Gf, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        let get = |v: &[u32], i: usize| v.get(i).copied().unwrap_or(0);
        Poly::new(
            (0..len)
                .map(|i| field.add(get(&self.coeffs, i), get(&other.coeffs, i)))
                .collect(),
        )
    }

    pub fn sub(&self, field: &Gf, other: &Poly) -> Poly {
        self.add(field, &other.scale(field, field.neg(1)))
    }

    pub fn scale(&self, field: &Gf, c: u32) -> Poly {
        Poly::new(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    pub fn mul(&self, field: &Gf, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![0u32; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Poly::new(out)
    }

    /// Quotient and remainder. Fails when dividing by zero.
    pub fn div_rem(&self, field: &Gf, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::NotInvertible)?;
        let lead_inv = field.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = field.mul(rem[top], lead_inv);
            if c == 0 {
                continue;
            }
            quot[top - dd] = c;
            for (i, &m) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                rem[idx] = field.sub(rem[idx], field.mul(c, m));
            }
        }
        Ok((Poly::new(quot), Poly::new(rem)))
    }

    pub fn rem(&self, field: &Gf, divisor: &Poly) -> Result<Poly> {
        Ok(self.div_rem(field, divisor)?.1)
    }

    pub fn make_monic(&self, field: &Gf) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = field.inv(self.leading()).expect("nonzero leading coefficient");
        self.scale(field, inv)
    }

    /// Monic gcd.
    pub fn gcd(&self, field: &Gf, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(field, &b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.make_monic(field)
    }

    /// Returns `(g, u, v)` with `u*self + v*other = g`, `g` monic.
    pub fn ext_gcd(&self, field: &Gf, other: &Poly) -> (Poly, Poly, Poly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (Poly::one(), Poly::zero());
        let (mut v0, mut v1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(field, &r1).expect("nonzero divisor");
            let u = u0.sub(field, &q.mul(field, &u1));
            let v = v0.sub(field, &q.mul(field, &v1));
            r0 = std::mem::replace(&mut r1, r);
            u0 = std::mem::replace(&mut u1, u);
            v0 = std::mem::replace(&mut v1, v);
        }
        if r0.is_zero() {
            return (r0, u0, v0);
        }
        let inv = field.inv(r0.leading()).expect("nonzero");
        (
            r0.scale(field, inv),
            u0.scale(field, inv),
            v0.scale(field, inv),
        )
    }

    pub fn mul_mod(&self, field: &Gf, other: &Poly, modulus: &Poly) -> Result<Poly> {
        self.mul(field, other).rem(field, modulus)
    }

    /// `self^e mod modulus` by square-and-multiply; `e` may be large.
    pub fn pow_mod(&self, field: &Gf, e: u128, modulus: &Poly) -> Result<Poly> {
        let mut base = self.rem(field, modulus)?;
        let mut acc = Poly::one().rem(field, modulus)?;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(field, &base, modulus)?;
            }
            base = base.mul_mod(field, &base, modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Irreducibility over `field` via distinct-degree factorization:
    /// `f` of degree `d` is irreducible iff `gcd(X^{s^i} - X, f) = 1` for all
    /// `1 <= i <= d/2`.
    pub fn is_irreducible(&self, field: &Gf) -> bool {
        let Some(d) = self.degree() else {
            return false;
        };
        if d == 0 {
            return false;
        }
        let x = Poly::new(vec![0, 1]);
        let s = field.order() as u128;
        let mut power = x.clone();
        for _ in 1..=d / 2 {
            // X^{s^i} = (X^{s^{i-1}})^s
            power = power.pow_mod(field, s, self).expect("nonzero modulus");
            let g = power.sub(field, &x).gcd(field, self);
            if g.degree() != Some(0) {
                return false;
            }
        }
        true
    }

    /// Every monic polynomial of the given degree, in lexicographic order of
    /// the coefficient vector with the constant term compared first.
    pub fn monic_of_degree(field: &Gf, degree: usize) -> impl Iterator<Item = Poly> + '_ {
        let s = field.order() as u128;
        let count = s.pow(degree as u32);
        (0..count).map(move |idx| {
            let mut coeffs = vec![0u32; degree + 1];
            let mut x = idx;
            for c in coeffs[..degree].iter_mut().rev() {
                *c = (x % s) as u32;
                x /= s;
            }
            coeffs[degree] = 1;
            Poly::new(coeffs)
        })
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}
