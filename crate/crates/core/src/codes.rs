//! Polynomial syndrome codes over the multiset space.
//!
//! Symbols map into a finite abelian group built from `R_f = F_s[X]/(f)`:
//!
//! * projective: alphabet `F_s ∪ {∞}` (`q = s + 1`, `∞` at index `s`),
//!   `deg f = t + 1`, group `R_f*/F_s*`, `ψ(a) = [ξ - a]`, `ψ(∞) = [1]`;
//! * affine: alphabet `F_s` (`q = s`), `deg f = t`, group `R_f*`,
//!   `ψ(a) = ξ - a`.
//!
//! A multiset `S` has syndrome `Ψ(S) = Π ψ(a)^{S(a)}` and a code is one fiber
//! `Ψ⁻¹(c)`. Two error multisets of equal size at most `t` never share a
//! syndrome, so decoding after `r <= t` deletions looks up the unique `E` of
//! size `r` with `Ψ(E) = c Ψ(R)⁻¹` and returns `R ⊎ E`.

use std::collections::{BTreeMap, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{rational, simplex_size, Rational};
use crate::error::{Error, Result};
use crate::geometry::distance;
use crate::gf::{FieldSpec, Gf};
use crate::multiset::Multiset;
use crate::poly::Poly;
use crate::ring::{select_modulus, GroupElement, QuotientRing, RingElement, UnitGroup, Variant};

/// Identifier of the pseudorandom generator behind [`DeletionChannel`].
pub const RNG_ALGORITHM: &str = "chacha8/seed_from_u64";

/// Largest simplex `|S_{n,q}|` walked by enumeration.
pub const ENUMERATION_LIMIT: u128 = 100_000_000;

fn check_enumeration(params: &CodeParams) -> Result<()> {
    let size = simplex_size(params.n as u64, params.q() as u64)?;
    if size > ENUMERATION_LIMIT {
        return Err(Error::GuardExceeded {
            what: "multiset enumeration",
            size,
            limit: ENUMERATION_LIMIT,
        });
    }
    Ok(())
}

/// Symbol images `ψ(a)` in canonical form, indexed by alphabet position.
#[derive(Debug, Clone)]
pub struct SymbolMap {
    images: Vec<GroupElement>,
}

impl SymbolMap {
    fn new(group: &UnitGroup) -> Result<Self> {
        let ring = group.ring();
        let field = ring.field();
        let xi = ring.xi();
        let mut images = Vec::new();
        for a in field.elements() {
            let shifted = ring.add(&xi, &ring.element(&[field.neg(a)])?)?;
            images.push(group.canonicalize(&shifted)?);
        }
        if group.variant() == Variant::Projective {
            images.push(group.identity());
        }
        Ok(SymbolMap { images })
    }

    pub fn image(&self, symbol: usize) -> Option<&GroupElement> {
        self.images.get(symbol)
    }

    pub fn images(&self) -> &[GroupElement] {
        &self.images
    }
}

#[derive(Debug, Clone)]
pub struct CodeParams {
    variant: Variant,
    group: UnitGroup,
    n: u32,
    t: u32,
    symbols: SymbolMap,
}

impl CodeParams {
    pub fn new(variant: Variant, field: Gf, modulus: Poly, n: u32, t: u32) -> Result<Self> {
        let s = field.order() as u64;
        let q = match variant {
            Variant::Projective => s + 1,
            Variant::Affine => s,
        };
        if t == 0 {
            return Err(Error::UnsupportedParameters("deletion radius t must be at least 1".into()));
        }
        if t as u64 >= q {
            return Err(Error::UnsupportedParameters(format!(
                "the construction requires t < q (t={t}, q={q})"
            )));
        }
        let want = match variant {
            Variant::Projective => t as usize + 1,
            Variant::Affine => t as usize,
        };
        if modulus.degree() != Some(want) {
            return Err(Error::UnsupportedParameters(format!(
                "{variant} construction with t={t} needs deg(f)={want}, got f={modulus}"
            )));
        }
        if modulus.has_root(&field) {
            return Err(Error::UnsupportedParameters(format!(
                "f={modulus} has a root in F_{s}"
            )));
        }
        let ring = QuotientRing::new(field, modulus)?;
        let group = UnitGroup::new(ring, variant);
        let symbols = SymbolMap::new(&group)?;
        Ok(CodeParams {
            variant,
            group,
            n,
            t,
            symbols,
        })
    }

    /// Uses the lexicographically smallest irreducible modulus of the right
    /// degree.
    pub fn with_auto_modulus(variant: Variant, field: Gf, n: u32, t: u32) -> Result<Self> {
        let degree = match variant {
            Variant::Projective => t as usize + 1,
            Variant::Affine => t as usize,
        };
        if t == 0 {
            return Err(Error::UnsupportedParameters("deletion radius t must be at least 1".into()));
        }
        let f = select_modulus(&field, degree)?;
        Self::new(variant, field, f, n, t)
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn field(&self) -> &Gf {
        self.group.ring().field()
    }

    pub fn modulus(&self) -> &Poly {
        self.group.ring().modulus()
    }

    pub fn group(&self) -> &UnitGroup {
        &self.group
    }

    pub fn symbols(&self) -> &SymbolMap {
        &self.symbols
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn s(&self) -> u32 {
        self.field().order()
    }

    /// Alphabet size.
    pub fn q(&self) -> usize {
        self.symbols.images.len()
    }

    pub fn with_n(&self, n: u32) -> Self {
        CodeParams { n, ..self.clone() }
    }

    pub fn symbol_label(&self, symbol: usize) -> String {
        if self.variant == Variant::Projective && symbol == self.s() as usize {
            "inf".to_string()
        } else {
            symbol.to_string()
        }
    }

    /// `{0,1,inf}` style rendering.
    pub fn format_multiset(&self, m: &Multiset) -> String {
        let parts: Vec<String> = m.symbols().into_iter().map(|a| self.symbol_label(a)).collect();
        format!("{{{}}}", parts.join(","))
    }

    /// Accepts a symbol list (`0,1,1`, `{0,1,inf}`, or empty) or a
    /// multiplicity vector in brackets (`[1,2,0,0]`).
    pub fn parse_multiset(&self, text: &str) -> Result<Multiset> {
        let text = text.trim();
        let q = self.q();
        if let Some(inner) = text.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            let counts: Vec<u32> = inner
                .split(',')
                .map(|c| c.trim())
                .filter(|c| !c.is_empty())
                .map(|c| c.parse::<u32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Parse(format!("multiplicity vector {text:?}")))?;
            if counts.len() != q {
                return Err(Error::Parse(format!(
                    "multiplicity vector {text:?} has length {}, alphabet size is {q}",
                    counts.len()
                )));
            }
            return Ok(Multiset::new(counts));
        }
        let inner = text
            .strip_prefix('{')
            .and_then(|t| t.strip_suffix('}'))
            .unwrap_or(text);
        let mut symbols = Vec::new();
        for tok in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let a = match tok {
                "inf" | "∞" | "infinity" if self.variant == Variant::Projective => self.s() as usize,
                _ => {
                    let a = tok
                        .parse::<usize>()
                        .map_err(|_| Error::Parse(format!("unknown symbol {tok:?}")))?;
                    if a >= self.s() as usize {
                        return Err(Error::Parse(format!(
                            "symbol {tok:?} is not a label of F_{}",
                            self.s()
                        )));
                    }
                    a
                }
            };
            symbols.push(a);
        }
        Multiset::from_symbols(q, &symbols)
    }

    fn check_multiset(&self, m: &Multiset) -> Result<()> {
        if m.q() != self.q() {
            return Err(Error::InvalidMultiset(format!(
                "multiplicity vector has length {}, alphabet size is {}",
                m.q(),
                self.q()
            )));
        }
        Ok(())
    }

    /// Group order `|G|`.
    pub fn group_order(&self) -> Result<u128> {
        self.group.order()
    }
}

/// `Ψ(S) = Π_a ψ(a)^{S(a)}`, canonicalized.
pub fn syndrome(params: &CodeParams, s: &Multiset) -> Result<GroupElement> {
    params.check_multiset(s)?;
    let group = params.group();
    let ring = group.ring();
    let mut acc = ring.one();
    for (a, &k) in s.counts().iter().enumerate() {
        if k > 0 {
            let img = params.symbols.images[a].as_ring_element();
            acc = ring.mul(&acc, &ring.pow(img, k as u64))?;
        }
    }
    group.canonicalize(&acc)
}

#[derive(Debug, Clone)]
pub struct CodeInstance {
    params: CodeParams,
    syndrome: GroupElement,
    codewords: Vec<Multiset>,
}

impl CodeInstance {
    pub fn params(&self) -> &CodeParams {
        &self.params
    }

    pub fn syndrome(&self) -> &GroupElement {
        &self.syndrome
    }

    /// Codewords in descending lexicographic order of multiplicity vectors.
    pub fn codewords(&self) -> &[Multiset] {
        &self.codewords
    }

    pub fn len(&self) -> usize {
        self.codewords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codewords.is_empty()
    }

    /// Enumerative encoder: message index to codeword.
    pub fn encode(&self, index: usize) -> Option<&Multiset> {
        self.codewords.get(index)
    }

    /// Inverse of [`CodeInstance::encode`].
    pub fn index_of(&self, word: &Multiset) -> Option<usize> {
        self.codewords.binary_search_by(|c| word.cmp(c)).ok()
    }

    /// Smallest pairwise deletion distance, `None` for fewer than two words.
    pub fn min_distance(&self) -> Option<u64> {
        let mut best: Option<u64> = None;
        for (i, a) in self.codewords.iter().enumerate() {
            for b in &self.codewords[i + 1..] {
                let d = distance(a, b).expect("codewords share n and q");
                best = Some(best.map_or(d, |x| x.min(d)));
            }
        }
        best
    }
}

/// Powers `ψ(a)^k` for `k <= n`, per symbol.
fn power_table(params: &CodeParams) -> Vec<Vec<RingElement>> {
    let ring = params.group().ring();
    params
        .symbols
        .images
        .iter()
        .map(|img| {
            let base = img.as_ring_element();
            let mut row = vec![ring.one()];
            for _ in 0..params.n {
                let next = ring.mul_unchecked(row.last().expect("nonempty"), base);
                row.push(next);
            }
            row
        })
        .collect()
}

/// Walks the simplex in descending lexicographic order, calling `visit` with
/// each multiset and its syndrome.
fn for_each_syndrome(params: &CodeParams, mut visit: impl FnMut(&[u32], GroupElement)) {
    let powers = power_table(params);
    let group = params.group();
    let ring = group.ring();
    let q = params.q();

    #[allow(clippy::too_many_arguments)]
    fn rec(
        i: usize,
        left: u32,
        acc: &RingElement,
        counts: &mut Vec<u32>,
        q: usize,
        powers: &[Vec<RingElement>],
        ring: &QuotientRing,
        group: &UnitGroup,
        visit: &mut dyn FnMut(&[u32], GroupElement),
    ) {
        if i == q - 1 {
            counts.push(left);
            let prod = ring.mul_unchecked(acc, &powers[i][left as usize]);
            visit(counts, group.canonicalize_unit(&prod));
            counts.pop();
            return;
        }
        for k in (0..=left).rev() {
            counts.push(k);
            let prod = ring.mul_unchecked(acc, &powers[i][k as usize]);
            rec(i + 1, left - k, &prod, counts, q, powers, ring, group, visit);
            counts.pop();
        }
    }

    rec(
        0,
        params.n,
        &ring.one(),
        &mut Vec::with_capacity(q),
        q,
        &powers,
        ring,
        group,
        &mut visit,
    );
}

/// All size-`n` multisets with syndrome `c`.
pub fn enumerate_code(params: &CodeParams, c: &GroupElement) -> Result<CodeInstance> {
    if c.variant() != params.variant() || c.as_ring_element().ring() != params.group().ring() {
        return Err(Error::Mismatch);
    }
    check_enumeration(params)?;
    let mut codewords = Vec::new();
    for_each_syndrome(params, |counts, g| {
        if &g == c {
            codewords.push(Multiset::new(counts.to_vec()));
        }
    });
    Ok(CodeInstance {
        params: params.clone(),
        syndrome: c.clone(),
        codewords,
    })
}

/// Sizes of every nonempty syndrome class, keyed by canonical element.
pub fn class_sizes(params: &CodeParams) -> Result<BTreeMap<GroupElement, u128>> {
    check_enumeration(params)?;
    let mut sizes = BTreeMap::new();
    for_each_syndrome(params, |_, g| *sizes.entry(g).or_insert(0u128) += 1);
    Ok(sizes)
}

/// The largest class, ties broken by the smallest canonical element.
pub fn best_syndrome_class(params: &CodeParams) -> Result<(GroupElement, CodeInstance)> {
    let sizes = class_sizes(params)?;
    let mut best: Option<(&GroupElement, u128)> = None;
    for (g, &size) in &sizes {
        if best.is_none_or(|(_, b)| size > b) {
            best = Some((g, size));
        }
    }
    let c = best
        .map(|(g, _)| g.clone())
        .unwrap_or_else(|| params.group().identity());
    let code = enumerate_code(params, &c)?;
    Ok((c, code))
}

/// `|S_{n,q}| / |G|`, the size some class is guaranteed to reach.
pub fn averaging_bound(params: &CodeParams) -> Result<Rational> {
    Ok(rational(
        simplex_size(params.n as u64, params.q() as u64)?,
        params.group_order()?,
    ))
}

/// Lookup tables `syndrome -> E` for every error size `r = 0..=t`.
#[derive(Debug, Clone)]
pub struct SyndromeTable {
    tables: Vec<HashMap<Vec<u8>, Multiset>>,
}

impl SyndromeTable {
    pub fn lookup(&self, r: usize, key: &GroupElement) -> Option<&Multiset> {
        self.tables.get(r)?.get(&key.key())
    }

    pub fn len(&self, r: usize) -> usize {
        self.tables.get(r).map_or(0, HashMap::len)
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }

    pub fn radius(&self) -> usize {
        self.tables.len().saturating_sub(1)
    }
}

pub fn build_tables(params: &CodeParams) -> Result<SyndromeTable> {
    let mut tables = Vec::with_capacity(params.t as usize + 1);
    for r in 0..=params.t {
        let mut table = HashMap::new();
        let sub = params.with_n(r);
        check_enumeration(&sub)?;
        let mut collision = false;
        for_each_syndrome(&sub, |counts, g| {
            if table.insert(g.key(), Multiset::new(counts.to_vec())).is_some() {
                collision = true;
            }
        });
        if collision {
            return Err(Error::ConstructionUnsound(r));
        }
        tables.push(table);
    }
    Ok(SyndromeTable { tables })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decoded {
    pub codeword: Multiset,
    pub error: Multiset,
}

/// Recovers the codeword from a received multiset with `r <= t` deletions.
pub fn decode(
    params: &CodeParams,
    c: &GroupElement,
    tables: &SyndromeTable,
    received: &Multiset,
) -> Result<Decoded> {
    params.check_multiset(received)?;
    let (n, t, len) = (params.n as u64, params.t as u64, received.n());
    if len > n || len + t < n {
        return Err(Error::DeletionsOutOfRange {
            received: len,
            n,
            t,
        });
    }
    let r = (n - len) as usize;
    let group = params.group();
    let sigma = group.mul(c, &group.inv(&syndrome(params, received)?));
    let error = tables.lookup(r, &sigma).ok_or(Error::Uncorrectable(t))?.clone();
    let codeword = received.union(&error)?;
    Ok(Decoded { codeword, error })
}

/// A code together with its decoding tables.
#[derive(Debug, Clone)]
pub struct Decoder {
    code: CodeInstance,
    tables: SyndromeTable,
}

impl Decoder {
    pub fn new(code: CodeInstance) -> Result<Self> {
        let tables = build_tables(code.params())?;
        Ok(Decoder { code, tables })
    }

    pub fn code(&self) -> &CodeInstance {
        &self.code
    }

    pub fn tables(&self) -> &SyndromeTable {
        &self.tables
    }

    pub fn decode(&self, received: &Multiset) -> Result<Decoded> {
        decode(self.code.params(), self.code.syndrome(), &self.tables, received)
    }
}

/// Seeded channel that deletes symbol occurrences uniformly without
/// replacement.
#[derive(Debug, Clone)]
pub struct DeletionChannel {
    rng: ChaCha8Rng,
}

impl DeletionChannel {
    pub fn new(seed: u64) -> Self {
        DeletionChannel {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn delete(&mut self, s: &Multiset, r: u64) -> Result<Multiset> {
        if r > s.n() {
            return Err(Error::InvalidMultiset(format!(
                "cannot delete {r} symbols from a multiset of size {}",
                s.n()
            )));
        }
        let mut counts = s.counts().to_vec();
        let mut size = s.n();
        for _ in 0..r {
            let mut pick = self.rng.random_range(0..size);
            for c in counts.iter_mut() {
                if pick < *c as u64 {
                    *c -= 1;
                    break;
                }
                pick -= *c as u64;
            }
            size -= 1;
        }
        Ok(Multiset::new(counts))
    }

    /// Uniform index in `0..len`.
    pub fn pick(&mut self, len: usize) -> usize {
        self.rng.random_range(0..len)
    }
}

/// Removes `r` uniformly chosen symbol occurrences, deterministic in `seed`.
pub fn delete_channel(s: &Multiset, r: u64, seed: u64) -> Result<Multiset> {
    DeletionChannel::new(seed).delete(s, r)
}

/// `log_q |G|`, kept as the exact pair `(|G|, q)` with a float evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Redundancy {
    pub group_order: u128,
    pub q: u64,
    pub value: f64,
}

impl Redundancy {
    /// `(t+1) log_q s - log_q (s-1)` for projective codes, `t` for affine.
    pub fn upper_bound(params: &CodeParams) -> f64 {
        let (s, t, q) = (params.s() as f64, params.t as f64, params.q() as f64);
        match params.variant {
            Variant::Affine => t,
            Variant::Projective => (t + 1.0) * s.ln() / q.ln() - (s - 1.0).ln() / q.ln(),
        }
    }

    /// Exact check of `|G| <= q^t` (affine) or `|G| (s-1) <= s^{t+1}` (projective),
    /// the integer forms of the redundancy bounds.
    pub fn within_bound(&self, params: &CodeParams) -> bool {
        let s = params.s() as u128;
        let t = params.t;
        match params.variant {
            Variant::Affine => s.checked_pow(t).is_none_or(|b| self.group_order <= b),
            Variant::Projective => s
                .checked_pow(t + 1)
                .is_none_or(|b| self.group_order * (s - 1) <= b),
        }
    }
}

pub fn redundancy(params: &CodeParams) -> Result<Redundancy> {
    let g = params.group_order()?;
    let q = params.q() as u64;
    Ok(Redundancy {
        group_order: g,
        q,
        value: (g as f64).ln() / (q as f64).ln(),
    })
}

/// On-disk form of a code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFile {
    pub variant: Variant,
    pub s: u32,
    pub field_modulus: Vec<u32>,
    pub f: Vec<u32>,
    pub n: u32,
    pub t: u32,
    pub syndrome: Vec<u32>,
    pub codewords: Vec<Vec<u32>>,
}

impl CodeFile {
    pub fn from_instance(code: &CodeInstance) -> Self {
        let p = code.params();
        CodeFile {
            variant: p.variant(),
            s: p.s(),
            field_modulus: p.field().spec().modulus().to_vec(),
            f: p.modulus().coeffs().to_vec(),
            n: p.n(),
            t: p.t(),
            syndrome: code.syndrome().coeffs().to_vec(),
            codewords: code.codewords().iter().map(|m| m.counts().to_vec()).collect(),
        }
    }

    /// Rebuilds the instance, checking every codeword against the syndrome.
    pub fn to_instance(&self) -> Result<CodeInstance> {
        let bad = |m: String| Error::CodeFile(m);
        let (p, k) = crate::gf::prime_power(self.s)
            .ok_or_else(|| bad(format!("s={} is not a prime power", self.s)))?;
        let spec = FieldSpec::new(p, k, Some(self.field_modulus.clone()))?;
        let field = Gf::new(spec);
        let f = Poly::from_labels(&field, self.f.clone())?;
        let params = CodeParams::new(self.variant, field, f, self.n, self.t)?;
        let c = params.group().element_from_coeffs(&self.syndrome)?;
        let mut codewords = Vec::with_capacity(self.codewords.len());
        for w in &self.codewords {
            let m = Multiset::new(w.clone());
            if m.q() != params.q() || m.n() != self.n as u64 {
                return Err(bad(format!("codeword {w:?} is not in S_{{{},{}}}", self.n, params.q())));
            }
            if syndrome(&params, &m)? != c {
                return Err(bad(format!("codeword {w:?} has the wrong syndrome")));
            }
            codewords.push(m);
        }
        codewords.sort_by(|a, b| b.cmp(a));
        codewords.dedup();
        Ok(CodeInstance {
            params,
            syndrome: c,
            codewords,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::CodeFile(e.to_string()))
    }
}
