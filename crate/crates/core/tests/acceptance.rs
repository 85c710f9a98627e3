//! Acceptance criteria. Run with
//! `cargo test -p multiset-codes --test acceptance -- --nocapture`
//! to see one line per criterion.

use std::time::{Duration, Instant};

use multiset_codes::bounds::{exact_max_code_distance, is_vacuous, kt_anticode, sphere_packing};
use multiset_codes::codes::{build_tables, decode, enumerate_code, redundancy, CodeParams};
use multiset_codes::combinatorics::rational;
use multiset_codes::geometry::{ball_size_gf, distance};
use multiset_codes::gf::Gf;
use multiset_codes::poly::Poly;
use multiset_codes::ring::Variant;
use multiset_codes::verify::{self, Report};
use multiset_codes::Multiset;

type Outcome = Result<(), String>;

fn from_report(r: Report) -> Outcome {
    if r.passed() {
        Ok(())
    } else {
        let shown: Vec<String> = r
            .failures
            .iter()
            .take(5)
            .map(|f| format!("{} [{}]: {}", f.check, f.instance, f.detail))
            .collect();
        Err(format!("{} of {} checks failed: {}", r.failures.len(), r.checks, shown.join("; ")))
    }
}

fn example_params(n: u32) -> CodeParams {
    let f3 = Gf::from_order(3).unwrap();
    CodeParams::new(Variant::Projective, f3, Poly::new(vec![1, 0, 1]), n, 1).unwrap()
}

fn worked_construction() -> Outcome {
    let p = example_params(3);
    let c = p.group().parse_element("1,0").map_err(|e| e.to_string())?;
    let code = enumerate_code(&p, &c).map_err(|e| e.to_string())?;
    let got: Vec<String> = code.codewords().iter().map(|m| p.format_multiset(m)).collect();
    let want = ["{0,0,inf}", "{0,1,1}", "{0,2,2}", "{1,2,inf}", "{inf,inf,inf}"];
    if got == want {
        Ok(())
    } else {
        Err(format!("got {got:?}"))
    }
}

fn worked_decode() -> Outcome {
    let p = example_params(3);
    let c = p.group().identity();
    let tables = build_tables(&p).map_err(|e| e.to_string())?;
    let received = p.parse_multiset("0,1").map_err(|e| e.to_string())?;
    let d = decode(&p, &c, &tables, &received).map_err(|e| e.to_string())?;
    let (w, e) = (p.format_multiset(&d.codeword), p.format_multiset(&d.error));
    if w == "{0,1,1}" && e == "{1}" {
        Ok(())
    } else {
        Err(format!("decoded {w} with E={e}"))
    }
}

fn ball_table() -> Outcome {
    let rows: [([u32; 3], [u128; 5]); 3] = [
        ([6, 0, 0], [1, 3, 6, 10, 15]),
        ([3, 2, 1], [1, 7, 16, 24, 27]),
        ([2, 2, 2], [1, 7, 19, 25, 28]),
    ];
    for (center, want) in rows {
        let m = Multiset::new(center.to_vec());
        for (r, &w) in want.iter().enumerate() {
            let got = ball_size_gf(&m, r as u64).map_err(|e| e.to_string())?;
            if got != w {
                return Err(format!("center {m} r={r}: {got} != {w}"));
            }
        }
    }
    Ok(())
}

fn sweep(f: impl Fn(u32, usize) -> Report) -> Outcome {
    let mut all = Report::default();
    for q in 2..=4usize {
        for n in 0..=8u32 {
            let r = f(n, q);
            all.checks += r.checks;
            all.failures.extend(r.failures);
        }
    }
    from_report(all)
}

fn oracle_equivalence() -> Outcome {
    sweep(verify::ball_oracle)
}

fn pair_enumerator() -> Outcome {
    sweep(verify::pair_enumerator)
}

fn closed_forms() -> Outcome {
    from_report(verify::ideal_closed_forms(20))
}

fn extremal_centers() -> Outcome {
    sweep(verify::extremal_centers)
}

fn decode_round_trips() -> Outcome {
    for n in 0..=5 {
        from_report(verify::decode_round_trip(&example_params(n)))?;
    }
    let f3 = Gf::from_order(3).unwrap();
    let affine = CodeParams::new(Variant::Affine, f3, Poly::new(vec![1, 0, 1]), 0, 2)
        .map_err(|e| e.to_string())?;
    for n in 0..=6 {
        from_report(verify::decode_round_trip(&affine.with_n(n)))?;
    }
    Ok(())
}

fn bounds_example() -> Outcome {
    let sp = sphere_packing(6, 3, 2).map_err(|e| e.to_string())?;
    if sp != rational(28, 6) {
        return Err(format!("sphere packing {sp}"));
    }
    let kt = kt_anticode(6, 3, 2).map_err(|e| e.to_string())?;
    if kt != rational(3106, 19) || !is_vacuous(&kt, 6, 3).map_err(|e| e.to_string())? {
        return Err(format!("anticode {kt}"));
    }
    let corners = [vec![0, 0, 6], vec![0, 6, 0], vec![6, 0, 0]].map(Multiset::new);
    for i in 0..3 {
        for j in i + 1..3 {
            if distance(&corners[i], &corners[j]).unwrap() < 5 {
                return Err("corner code has distance below 5".into());
            }
        }
    }
    let exact = exact_max_code_distance(6, 3, 5).map_err(|e| e.to_string())?;
    if exact < 3 {
        return Err(format!("exact maximum {exact}"));
    }
    Ok(())
}

fn gv_exactness() -> Outcome {
    from_report(verify::gv_binary_closed_form(50, 10))?;
    from_report(verify::avg_gap_check(3, 2, 10..=100))
}

fn redundancy_values() -> Outcome {
    for s in [2u32, 3, 4, 5, 7, 8, 9] {
        let field = Gf::from_order(s).unwrap();
        // degree-1 moduli always have a root, so affine codes start at t = 2
        for t in 2..s.min(5) {
            let p = CodeParams::with_auto_modulus(Variant::Affine, field.clone(), 4, t)
                .map_err(|e| e.to_string())?;
            if !p.modulus().is_irreducible(&field) {
                return Err(format!("modulus {} not irreducible", p.modulus()));
            }
            let red = redundancy(&p).map_err(|e| e.to_string())?;
            let bound = (s as u128).pow(t);
            if red.group_order != bound - 1 || red.group_order > bound {
                return Err(format!("s={s} t={t}: |G|={}", red.group_order));
            }
            if red.value > t as f64 {
                return Err(format!("s={s} t={t}: log_s|G|={}", red.value));
            }
        }
    }
    let red = redundancy(&example_params(3)).map_err(|e| e.to_string())?;
    if red.group_order != 4 {
        return Err(format!("projective |G|={}", red.group_order));
    }
    // |G| = (s^{t+1}-1)/(s-1) for the projective quotient
    if red.group_order != (3u128.pow(2) - 1) / 2 {
        return Err("projective order formula".into());
    }
    Ok(())
}

#[test]
fn acceptance_criteria() {
    type Criterion = (u32, &'static str, u64, fn() -> Outcome);
    let criteria: [Criterion; 11] = [
        (1, "worked construction", 1, worked_construction),
        (2, "worked decode", 1, worked_decode),
        (3, "ball table reproduction", 1, ball_table),
        (4, "ball oracle equivalence", 60, oracle_equivalence),
        (5, "pair enumerator", 120, pair_enumerator),
        (6, "ideal set closed forms", 1, closed_forms),
        (7, "extremal centers", 120, extremal_centers),
        (8, "decode round trips", 60, decode_round_trips),
        (9, "bounds worked example", 30, bounds_example),
        (10, "gv exactness and average gap", 10, gv_exactness),
        (11, "redundancy", 1, redundancy_values),
    ];
    let mut failed = Vec::new();
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if outcome.is_ok() && elapsed > Duration::from_secs(budget) {
            outcome = Err(format!("took {elapsed:?}, budget {budget}s"));
        }
        match &outcome {
            Ok(()) => println!("criterion {id:>2} PASS  {name} ({:.3}s)", elapsed.as_secs_f64()),
            Err(why) => {
                println!("criterion {id:>2} FAIL  {name} ({:.3}s): {why}", elapsed.as_secs_f64());
                failed.push(id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
