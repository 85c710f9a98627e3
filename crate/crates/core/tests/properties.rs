use multiset_codes::bounds::{gv_lower, sphere_packing};
use multiset_codes::codes::{
    build_tables, decode, delete_channel, syndrome, CodeFile, CodeParams, DeletionChannel,
};
use multiset_codes::combinatorics::{format_rational, parse_rational, rational};
use multiset_codes::geometry::{ball_brute, ball_size_gf, distance, max_ball, min_ball_clamped};
use multiset_codes::gf::Gf;
use multiset_codes::poly::Poly;
use multiset_codes::ring::Variant;
use multiset_codes::Multiset;
use proptest::prelude::*;

fn multiset(q: usize, max_n: u32) -> impl Strategy<Value = Multiset> {
    prop::collection::vec(0..=max_n, q).prop_map(Multiset::new)
}

fn same_size_pair(q: usize, n: u32) -> impl Strategy<Value = (Multiset, Multiset)> {
    let point = move || {
        prop::collection::vec(0.0f64..1.0, q).prop_map(move |w| {
            // spread n units proportionally, remainder to the first coordinate
            let total: f64 = w.iter().sum::<f64>().max(1e-9);
            let mut v: Vec<u32> = w.iter().map(|x| (x / total * n as f64).floor() as u32).collect();
            let used: u32 = v.iter().sum();
            v[0] += n - used.min(n);
            Multiset::new(v)
        })
    };
    (point(), point())
}

/// Syndrome from polynomial arithmetic: `Π (X - a)^{S(a)} mod f`, then the
/// projective class representative with top coefficient 1.
fn syndrome_by_polys(field: &Gf, f: &Poly, variant: Variant, s: &Multiset) -> Vec<u32> {
    let mut acc = Poly::one();
    for (a, &k) in s.counts().iter().enumerate() {
        if a as u32 == field.order() {
            continue;
        }
        for _ in 0..k {
            acc = acc.mul_mod(field, &Poly::linear(field, a as u32), f).unwrap();
        }
    }
    if variant == Variant::Projective {
        acc = acc.make_monic(field);
    }
    let mut v = acc.coeffs().to_vec();
    v.resize(f.degree().unwrap(), 0);
    v
}

fn instance(choice: usize) -> CodeParams {
    let (variant, s, t) = [
        (Variant::Projective, 3, 1),
        (Variant::Projective, 4, 2),
        (Variant::Projective, 5, 2),
        (Variant::Affine, 4, 2),
        (Variant::Affine, 5, 3),
        (Variant::Affine, 9, 2),
    ][choice];
    CodeParams::with_auto_modulus(variant, Gf::from_order(s).unwrap(), 0, t).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn syndrome_matches_polynomial_product(choice in 0usize..6, counts in prop::collection::vec(0u32..6, 10)) {
        let p = instance(choice);
        let m = Multiset::new(counts[..p.q()].to_vec());
        let p = p.with_n(m.n() as u32);
        let want = syndrome_by_polys(p.field(), p.modulus(), p.variant(), &m);
        let got = syndrome(&p, &m).unwrap();
        prop_assert_eq!(got.coeffs(), &want[..]);
    }

    #[test]
    fn syndrome_is_multiplicative(choice in 0usize..6, a in prop::collection::vec(0u32..5, 10), b in prop::collection::vec(0u32..5, 10)) {
        let p = instance(choice);
        let q = p.q();
        let (a, b) = (Multiset::new(a[..q].to_vec()), Multiset::new(b[..q].to_vec()));
        let g = p.group();
        let joint = syndrome(&p, &a.union(&b).unwrap()).unwrap();
        prop_assert_eq!(joint, g.mul(&syndrome(&p, &a).unwrap(), &syndrome(&p, &b).unwrap()));
    }

    #[test]
    fn random_deletions_decode(choice in 0usize..6, counts in prop::collection::vec(0u32..5, 10), seed: u64, r_frac in 0.0f64..=1.0) {
        let base = instance(choice);
        let word = Multiset::new(counts[..base.q()].to_vec());
        let p = base.with_n(word.n() as u32);
        let r = ((p.t() as f64 * r_frac).round() as u64).min(word.n());
        let received = delete_channel(&word, r, seed).unwrap();
        prop_assert!(received.is_submultiset_of(&word));
        prop_assert_eq!(received.n(), word.n() - r);
        let c = syndrome(&p, &word).unwrap();
        let tables = build_tables(&p).unwrap();
        let d = decode(&p, &c, &tables, &received).unwrap();
        prop_assert_eq!(&d.codeword, &word);
        prop_assert_eq!(received.union(&d.error).unwrap(), word);
    }

    #[test]
    fn distance_is_a_metric((a, b) in same_size_pair(4, 9), (c, _) in same_size_pair(4, 9)) {
        let d = |x: &Multiset, y: &Multiset| distance(x, y).unwrap();
        prop_assert_eq!(d(&a, &a), 0);
        prop_assert_eq!(d(&a, &b), d(&b, &a));
        prop_assert!(d(&a, &c) <= d(&a, &b) + d(&b, &c));
        let l1: u64 = a.counts().iter().zip(b.counts()).map(|(&x, &y)| (x as i64 - y as i64).unsigned_abs()).sum();
        prop_assert_eq!(2 * d(&a, &b), l1);
    }

    #[test]
    fn ball_gf_matches_scan(center in multiset(5, 3), r in 0u64..8) {
        prop_assert_eq!(ball_size_gf(&center, r).unwrap(), ball_brute(&center, r).unwrap());
    }

    #[test]
    fn ball_between_extremes(center in multiset(4, 4), r in 0u64..10) {
        let (n, q) = (center.n(), center.q());
        let size = ball_size_gf(&center, r).unwrap();
        prop_assert!(min_ball_clamped(n, q as u64, r).unwrap() <= size);
        prop_assert!(size <= max_ball(n as u32, q, r).unwrap());
    }

    #[test]
    fn gv_below_half_radius_packing(n in 0u64..40, q in 2u64..6, t in 0u64..12) {
        let t = t.min(n);
        prop_assert!(gv_lower(n, q, t).unwrap() <= sphere_packing(n, q, t / 2).unwrap());
    }

    #[test]
    fn rationals_round_trip(num in 0u128..1_000_000, den in 1u128..1_000_000) {
        let x = rational(num, den);
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }

    #[test]
    fn field_axioms(s_idx in 0usize..6, a: u32, b: u32, c: u32) {
        let s = [4u32, 8, 9, 16, 25, 27][s_idx];
        let f = Gf::from_order(s).unwrap();
        let (a, b, c) = (a % s, b % s, c % s);
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        prop_assert_eq!(f.pow(a, s as u64), a);
    }

    #[test]
    fn channel_is_seed_deterministic(counts in prop::collection::vec(0u32..6, 5), seed: u64) {
        let m = Multiset::new(counts);
        let r = m.n() / 2;
        let mut a = DeletionChannel::new(seed);
        let mut b = DeletionChannel::new(seed);
        prop_assert_eq!(a.delete(&m, r).unwrap(), b.delete(&m, r).unwrap());
    }
}

#[test]
fn code_file_survives_json() {
    for choice in 0..6 {
        let p = instance(choice).with_n(4);
        let (_, code) = multiset_codes::codes::best_syndrome_class(&p).unwrap();
        let file = CodeFile::from_instance(&code);
        let back = CodeFile::from_json(&file.to_json()).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.to_instance().unwrap().codewords(), code.codewords());
    }
}
