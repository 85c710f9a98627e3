//! The quotient ring `R_f = F_s[X]/(f)`, its unit group, and the projective
//! quotient `R_f* / F_s*`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::Gf;
use crate::poly::Poly;

/// Largest ring enumerated element-by-element when the modulus is reducible.
pub const RING_ENUMERATION_LIMIT: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Affine,
    Projective,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Affine => write!(f, "affine"),
            Variant::Projective => write!(f, "projective"),
        }
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "affine" | "aff" => Ok(Variant::Affine),
            "projective" | "proj" => Ok(Variant::Projective),
            _ => Err(Error::Parse(format!("unknown variant {s:?}"))),
        }
    }
}

/// Lexicographically smallest monic irreducible of the given degree, with
/// the constant term compared first. Degree 0 and 1 are rejected: a monic
/// linear polynomial always has a root.
pub fn select_modulus(field: &Gf, degree: usize) -> Result<Poly> {
    if degree <= 1 {
        return Err(Error::UnsupportedParameters(format!(
            "no rootless monic polynomial of degree {degree} exists"
        )));
    }
    Poly::monic_of_degree(field, degree)
        .find(|p| p.is_irreducible(field))
        .ok_or_else(|| Error::UnsupportedParameters("no irreducible polynomial found".into()))
}

#[derive(Debug)]
struct RingInner {
    field: Gf,
    modulus: Poly,
    irreducible: bool,
}

/// `F_s[X]/(f)` for a monic `f` of positive degree. Cheap to clone.
#[derive(Clone)]
pub struct QuotientRing(Arc<RingInner>);

impl fmt::Debug for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuotientRing({:?}, f={})", self.0.field, self.0.modulus)
    }
}

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field && self.0.modulus == other.0.modulus)
    }
}

impl Eq for QuotientRing {}

impl QuotientRing {
    pub fn new(field: Gf, modulus: Poly) -> Result<Self> {
        match modulus.degree() {
            None | Some(0) => {
                return Err(Error::UnsupportedParameters(
                    "modulus must have positive degree".into(),
                ))
            }
            Some(_) => {}
        }
        if !modulus.is_monic() {
            return Err(Error::UnsupportedParameters("modulus must be monic".into()));
        }
        let irreducible = modulus.is_irreducible(&field);
        Ok(QuotientRing(Arc::new(RingInner {
            field,
            modulus,
            irreducible,
        })))
    }

    pub fn field(&self) -> &Gf {
        &self.0.field
    }

    pub fn modulus(&self) -> &Poly {
        &self.0.modulus
    }

    pub fn degree(&self) -> usize {
        self.0.modulus.degree().expect("positive degree")
    }

    pub fn is_field(&self) -> bool {
        self.0.irreducible
    }

    /// `s^deg(f)`.
    pub fn size(&self) -> u128 {
        (self.field().order() as u128).pow(self.degree() as u32)
    }

    pub fn element(&self, coeffs: &[u32]) -> Result<RingElement> {
        let p = Poly::from_labels(self.field(), coeffs.to_vec())?;
        Ok(self.reduce(&p))
    }

    pub fn reduce(&self, p: &Poly) -> RingElement {
        let r = p.rem(self.field(), self.modulus()).expect("nonzero modulus");
        self.wrap_reduced(r)
    }

    fn wrap_reduced(&self, r: Poly) -> RingElement {
        let mut coeffs = r.coeffs().to_vec();
        coeffs.resize(self.degree(), 0);
        RingElement {
            ring: self.clone(),
            coeffs,
        }
    }

    pub fn zero(&self) -> RingElement {
        self.wrap_reduced(Poly::zero())
    }

    pub fn one(&self) -> RingElement {
        self.reduce(&Poly::one())
    }

    /// The image of `X`.
    pub fn xi(&self) -> RingElement {
        self.reduce(&Poly::new(vec![0, 1]))
    }

    fn check(&self, a: &RingElement) -> Result<()> {
        if &a.ring == self {
            Ok(())
        } else {
            Err(Error::Mismatch)
        }
    }

    pub fn add(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.wrap_reduced(a.to_poly().add(self.field(), &b.to_poly())))
    }

    pub fn mul(&self, a: &RingElement, b: &RingElement) -> Result<RingElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_unchecked(a, b))
    }

    pub(crate) fn mul_unchecked(&self, a: &RingElement, b: &RingElement) -> RingElement {
        let prod = a.to_poly().mul(self.field(), &b.to_poly());
        self.reduce(&prod)
    }

    pub fn scale(&self, a: &RingElement, c: u32) -> RingElement {
        self.wrap_reduced(a.to_poly().scale(self.field(), c))
    }

    pub fn is_unit(&self, a: &RingElement) -> bool {
        !a.is_zero() && a.to_poly().gcd(self.field(), self.modulus()) == Poly::one()
    }

    /// Inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: &RingElement) -> Result<RingElement> {
        self.check(a)?;
        let (g, u, _) = a.to_poly().ext_gcd(self.field(), self.modulus());
        if g != Poly::one() {
            return Err(Error::NotInvertible);
        }
        Ok(self.reduce(&u))
    }

    pub fn pow(&self, a: &RingElement, e: u64) -> RingElement {
        let p = a
            .to_poly()
            .pow_mod(self.field(), e as u128, self.modulus())
            .expect("nonzero modulus");
        self.wrap_reduced(p)
    }

    /// All `s^deg(f)` residues, in lexicographic coefficient order.
    pub fn elements(&self) -> impl Iterator<Item = RingElement> + '_ {
        let s = self.field().order() as u128;
        let d = self.degree();
        (0..self.size()).map(move |idx| {
            let mut coeffs = vec![0u32; d];
            let mut x = idx;
            for c in coeffs.iter_mut().rev() {
                *c = (x % s) as u32;
                x /= s;
            }
            RingElement {
                ring: self.clone(),
                coeffs,
            }
        })
    }
}

/// A residue class, stored as its reduced coefficient vector of length
/// `deg(f)`.
#[derive(Clone)]
pub struct RingElement {
    ring: QuotientRing,
    coeffs: Vec<u32>,
}

impl RingElement {
    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coeffs.clone())
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

impl PartialEq for RingElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.ring == other.ring
    }
}

impl Eq for RingElement {}

/// The syndrome group: `R_f*` (affine) or `R_f*/F_s*` (projective).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitGroup {
    ring: QuotientRing,
    variant: Variant,
}

/// A group element in canonical form. In projective mode the highest-index
/// nonzero coefficient is 1.
#[derive(Clone)]
pub struct GroupElement {
    variant: Variant,
    elem: RingElement,
}

impl GroupElement {
    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn coeffs(&self) -> &[u32] {
        self.elem.coeffs()
    }

    pub fn as_ring_element(&self) -> &RingElement {
        &self.elem
    }

    /// Fixed-width key: two big-endian bytes per coefficient.
    pub fn key(&self) -> Vec<u8> {
        self.coeffs()
            .iter()
            .flat_map(|&c| (c as u16).to_be_bytes())
            .collect()
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.variant {
            Variant::Affine => write!(f, "{:?}", self.coeffs()),
            Variant::Projective => write!(f, "[{:?}]", self.coeffs()),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs().iter().map(u32::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.variant == other.variant && self.elem == other.elem
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.variant.hash(state);
        self.elem.coeffs.hash(state);
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs()
            .cmp(other.coeffs())
            .then(self.variant.cmp(&other.variant))
    }
}

impl UnitGroup {
    pub fn new(ring: QuotientRing, variant: Variant) -> Self {
        UnitGroup { ring, variant }
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn canonicalize(&self, g: &RingElement) -> Result<GroupElement> {
        self.ring.check(g)?;
        if !self.ring.is_unit(g) {
            return Err(Error::NotInvertible);
        }
        Ok(self.canonicalize_unit(g))
    }

    /// Canonical form of a known unit.
    pub(crate) fn canonicalize_unit(&self, g: &RingElement) -> GroupElement {
        let elem = match self.variant {
            Variant::Affine => g.clone(),
            Variant::Projective => {
                let top = *g
                    .coeffs
                    .iter()
                    .rev()
                    .find(|&&c| c != 0)
                    .expect("units are nonzero");
                let inv = self.ring.field().inv(top).expect("nonzero");
                self.ring.scale(g, inv)
            }
        };
        GroupElement {
            variant: self.variant,
            elem,
        }
    }

    /// Parses a canonical coefficient vector `c0,c1,...`. The vector is
    /// padded with zeros to `deg(f)` and must be a unit; in projective mode it
    /// must already be canonical.
    pub fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let coeffs = crate::gf::parse_u32_list(text)
            .map_err(|_| Error::Parse(format!("group element {text:?}")))?;
        self.element_from_coeffs(&coeffs)
    }

    pub fn element_from_coeffs(&self, coeffs: &[u32]) -> Result<GroupElement> {
        if coeffs.len() > self.ring.degree() {
            return Err(Error::Parse(format!(
                "group element has {} coefficients, ring degree is {}",
                coeffs.len(),
                self.ring.degree()
            )));
        }
        let elem = self.ring.element(coeffs)?;
        let g = self.canonicalize(&elem)?;
        if g.elem != elem {
            return Err(Error::Parse(format!(
                "{coeffs:?} is not a canonical class representative (expected {g})"
            )));
        }
        Ok(g)
    }

    pub fn identity(&self) -> GroupElement {
        self.canonicalize_unit(&self.ring.one())
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.canonicalize_unit(&self.ring.mul_unchecked(&a.elem, &b.elem))
    }

    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        let inv = self.ring.inv(&a.elem).expect("group elements are units");
        self.canonicalize_unit(&inv)
    }

    pub fn pow(&self, a: &GroupElement, e: u64) -> GroupElement {
        self.canonicalize_unit(&self.ring.pow(&a.elem, e))
    }

    /// Exact group order. Uses `s^d - 1` (divided by `s - 1` in projective
    /// mode) for an irreducible modulus and counts units otherwise.
    pub fn order(&self) -> Result<u128> {
        let units = if self.ring.is_field() {
            self.ring.size() - 1
        } else {
            self.count_units()?
        };
        Ok(match self.variant {
            Variant::Affine => units,
            Variant::Projective => units / (self.ring.field().order() as u128 - 1),
        })
    }

    /// Units counted by enumerating the ring.
    pub fn count_units(&self) -> Result<u128> {
        let size = self.ring.size();
        if size > RING_ENUMERATION_LIMIT {
            return Err(Error::GuardExceeded {
                what: "unit enumeration",
                size,
                limit: RING_ENUMERATION_LIMIT,
            });
        }
        Ok(self.ring.elements().filter(|e| self.ring.is_unit(e)).count() as u128)
    }

    /// Every group element, sorted.
    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        let size = self.ring.size();
        if size > RING_ENUMERATION_LIMIT {
            return Err(Error::GuardExceeded {
                what: "group enumeration",
                size,
                limit: RING_ENUMERATION_LIMIT,
            });
        }
        let mut out: Vec<GroupElement> = self
            .ring
            .elements()
            .filter(|e| self.ring.is_unit(e))
            .map(|e| self.canonicalize_unit(&e))
            .collect();
        out.sort();
        out.dedup();
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn example_ring() -> QuotientRing {
        let f3 = Gf::from_order(3).unwrap();
        QuotientRing::new(f3.clone(), Poly::new(vec![1, 0, 1])).unwrap()
    }

    #[test]
    fn select_modulus_examples() {
        let f3 = Gf::from_order(3).unwrap();
        assert_eq!(select_modulus(&f3, 2).unwrap(), Poly::new(vec![1, 0, 1]));
        let f2 = Gf::from_order(2).unwrap();
        assert_eq!(select_modulus(&f2, 2).unwrap(), Poly::new(vec![1, 1, 1]));
        // constant term 1: X^3 + 1 has root 2, X^3 + X^2 + 1 has root 1,
        // X^3 + 2X^2 + 1 has no root and is therefore irreducible.
        assert_eq!(select_modulus(&f3, 3).unwrap(), Poly::new(vec![1, 0, 2, 1]));
        assert!(matches!(
            select_modulus(&f3, 1),
            Err(Error::UnsupportedParameters(_))
        ));
    }

    #[test]
    fn worked_example_arithmetic() {
        let r = example_ring();
        let alpha = r.xi();
        assert_eq!(r.mul(&alpha, &alpha).unwrap().coeffs(), &[2, 0]);
        let am1 = r.element(&[2, 1]).unwrap(); // alpha - 1
        assert_eq!(r.mul(&am1, &am1).unwrap(), alpha);
        assert_eq!(r.inv(&alpha).unwrap().coeffs(), &[0, 2]);
        assert_eq!(r.inv(&r.one()).unwrap(), r.one());
        assert_eq!(r.inv(&r.zero()), Err(Error::NotInvertible));
        let x = r.element(&[2, 1]).unwrap();
        assert_eq!(r.mul(&x, &r.one()).unwrap(), x);
    }

    #[test]
    fn ring_mismatch_is_reported() {
        let r = example_ring();
        let f3 = Gf::from_order(3).unwrap();
        let other = QuotientRing::new(f3, Poly::new(vec![2, 2, 1])).unwrap();
        assert_eq!(r.mul(&r.one(), &other.one()), Err(Error::Mismatch));
    }

    #[test]
    fn projective_canonical_forms() {
        let r = example_ring();
        let g = UnitGroup::new(r.clone(), Variant::Projective);
        let two_two = r.element(&[2, 2]).unwrap();
        assert_eq!(g.canonicalize(&two_two).unwrap().coeffs(), &[1, 1]);
        let two = r.element(&[2]).unwrap();
        assert_eq!(g.canonicalize(&two).unwrap(), g.identity());
        let aff = UnitGroup::new(r.clone(), Variant::Affine);
        assert_eq!(aff.canonicalize(&two_two).unwrap().coeffs(), &[2, 2]);
        assert!(g.canonicalize(&r.zero()).is_err());
    }

    #[test]
    fn worked_example_group() {
        let r = example_ring();
        let proj = UnitGroup::new(r.clone(), Variant::Projective);
        let elems: Vec<Vec<u32>> = proj
            .elements()
            .unwrap()
            .iter()
            .map(|e| e.coeffs().to_vec())
            .collect();
        
        // [1+2α] = {1+2α, 2+α} is represented by 2+α, whose top coefficient is 1
        assert_eq!(elems, vec![vec![0, 1], vec![1, 0], vec![1, 1], vec![2, 1]]);
        assert_eq!(proj.order().unwrap(), 4);
        let aff = UnitGroup::new(r, Variant::Affine);
        assert_eq!(aff.order().unwrap(), 8);
    }

    #[test]
    fn cubic_affine_order() {
        let f3 = Gf::from_order(3).unwrap();
        let f = select_modulus(&f3, 3).unwrap();
        let g = UnitGroup::new(QuotientRing::new(f3, f).unwrap(), Variant::Affine);
        assert_eq!(g.order().unwrap(), 26);
    }

    #[test]
    fn canonicalize_is_constant_on_scalar_orbits() {
        let r = example_ring();
        let g = UnitGroup::new(r.clone(), Variant::Projective);
        for u in r.elements().filter(|e| r.is_unit(e)) {
            let c = g.canonicalize(&u).unwrap();
            assert_eq!(g.canonicalize(c.as_ring_element()).unwrap(), c);
            for lambda in 1..3 {
                assert_eq!(g.canonicalize(&r.scale(&u, lambda)).unwrap(), c);
            }
        }
    }

    fn rings_up_to(max_s: u32, max_deg: usize) -> Vec<QuotientRing> {
        let mut out = Vec::new();
        for s in [2u32, 3, 4, 5, 7, 8, 9] {
            if s > max_s {
                continue;
            }
            let field = Gf::from_order(s).unwrap();
            for d in 1..=max_deg {
                for f in Poly::monic_of_degree(&field, d) {
                    if (s as u128).pow(d as u32) <= 10_000 {
                        out.push(QuotientRing::new(field.clone(), f).unwrap());
                    }
                }
            }
        }
        out
    }

    #[test]
    fn class_multiplication_is_well_defined() {
        for ring in rings_up_to(4, 2) {
            let g = UnitGroup::new(ring.clone(), Variant::Projective);
            let units: Vec<RingElement> = ring.elements().filter(|e| ring.is_unit(e)).collect();
            for a in &units {
                for b in &units {
                    let direct = g.canonicalize(&ring.mul(a, b).unwrap()).unwrap();
                    let via = g.mul(&g.canonicalize(a).unwrap(), &g.canonicalize(b).unwrap());
                    assert_eq!(direct, via, "{ring:?}");
                }
            }
        }
    }

    #[test]
    fn inverses_for_every_unit() {
        for ring in rings_up_to(9, 3) {
            let one = ring.one();
            for u in ring.elements() {
                match ring.inv(&u) {
                    Ok(v) => assert_eq!(ring.mul(&u, &v).unwrap(), one),
                    Err(_) => assert!(!ring.is_unit(&u)),
                }
            }
        }
    }

    #[test]
    fn group_order_matches_enumeration() {
        for ring in rings_up_to(5, 3) {
            if ring.modulus().has_root(ring.field()) {
                continue;
            }
            for variant in [Variant::Affine, Variant::Projective] {
                let g = UnitGroup::new(ring.clone(), variant);
                let distinct: HashSet<GroupElement> = g.elements().unwrap().into_iter().collect();
                assert_eq!(g.order().unwrap(), distinct.len() as u128, "{ring:?} {variant}");
                if variant == Variant::Affine {
                    assert_eq!(g.order().unwrap(), g.count_units().unwrap());
                }
            }
        }
    }

    #[test]
    fn parse_requires_canonical_units() {
        let g = UnitGroup::new(example_ring(), Variant::Projective);
        assert_eq!(g.parse_element("1,0").unwrap(), g.identity());
        assert_eq!(g.parse_element("1").unwrap(), g.identity());
        assert!(g.parse_element("2,2").is_err());
        assert!(g.parse_element("0,0").is_err());
        assert!(g.parse_element("1,0,0").is_err());
    }
}
