//! Acceptance criteria. Runs without the libtest harness so every criterion
//! prints one PASS/FAIL line; exits nonzero if any fails.

use std::cmp::Ordering;
use std::path::PathBuf;
use std::process::ExitCode;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use symtau_cli::SpecDocument;
use symtau_core::class_algebra::{intersect, NS2Class, ResidueSpace};
use symtau_core::cycle_tables::{b_cycle, cover_cycle, diagonal_class_cd, ramification_degree, CoverDatum};
use symtau_core::decomposition::feasible_tau;
use symtau_core::scalar::{floor_sqrt, ExactScalar};
use symtau_core::tau_engine::{gonality_bound, solve, TauResult};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn run_json(text: &str) -> Result<TauResult, String> {
    let doc = SpecDocument::parse(text).map_err(|e| e.to_string())?;
    let spec = doc.to_curve_spec().map_err(|e| e.to_string())?;
    solve(&spec).map_err(|e| e.to_string())
}

fn expect_exact(text: &str, g: i64, expected: BigRational) -> Check {
    let result = run_json(text)?;
    let want = ExactScalar::from_rational(expected, g as u64).unwrap();
    match result.value() {
        Some(v) if *v == want => Ok(()),
        Some(v) => Err(format!("{text}: got {v}, want {want}")),
        None => Err(format!("{text}: got [{}, {}], want {want}", result.lo, result.hi)),
    }
}

fn hyperelliptic_exactness() -> Check {
    for g in 2..=50 {
        expect_exact(&format!(r#"{{"genus": {g}, "hyperelliptic": "yes"}}"#), g, q(g, 1))?;
    }
    Ok(())
}

fn small_genus() -> Check {
    expect_exact(r#"{"genus": 3, "hyperelliptic": "no"}"#, 3, q(9, 5))?;
    expect_exact(r#"{"genus": 4, "hyperelliptic": "no"}"#, 4, q(2, 1))
}

fn bielliptic() -> Check {
    for g in 5..=50 {
        expect_exact(&format!(r#"{{"genus": {g}, "hyperelliptic": "no", "bielliptic": "yes"}}"#), g, q(g - 2, 1))?;
        let text = format!(r#"{{"genus": {g}, "hyperelliptic": "no", "bielliptic": "no"}}"#);
        let result = run_json(&text)?;
        let bound = ExactScalar::from_integer(g - 2, g as u64).unwrap();
        if result.exact || result.hi != bound {
            return Err(format!("{text}: got [{}, {}], exact={}", result.lo, result.hi, result.exact));
        }
    }
    Ok(())
}

fn trigonal() -> Check {
    for g in 4..=50 {
        let text = format!(r#"{{"genus": {g}, "pencils": [{{"degree": 3}}], "hyperelliptic": "no"}}"#);
        expect_exact(&text, g, q(g, 2))?;
    }
    Ok(())
}

fn double_cover() -> Check {
    for g in 6..=100 {
        for h in 0..=(g - 1) / 8 {
            let text = format!(r#"{{"genus": {g}, "covers": [{{"degree": 2, "target_genus": {h}}}]}}"#);
            expect_exact(&text, g, q(g - 2 * h, 1))?;
        }
    }
    Ok(())
}

fn triple_cover() -> Check {
    for g in 26..=60 {
        let text = format!(
            r#"{{"genus": {g}, "covers": [{{"degree": 3, "target_genus": 1, "target_has_g12": true}}]}}"#
        );
        expect_exact(&text, g, q(g - 3, 2))?;
    }
    Ok(())
}

fn five_gonal() -> Check {
    let result = run_json(r#"{"genus": 16, "pencils": [{"degree": 5}], "hyperelliptic": "no"}"#)?;
    let (lo, hi) = (ExactScalar::from_integer(4, 16).unwrap(), ExactScalar::from_integer(9, 16).unwrap());
    if result.exact || result.lo != lo || result.hi != hi {
        return Err(format!("got [{}, {}]", result.lo, result.hi));
    }
    Ok(())
}

fn kouvidakis() -> Check {
    for g in 2..=100i64 {
        let top = 1 + floor_sqrt(g as u64) as i64;
        for d in 2..=top {
            let text = format!(
                r#"{{"genus": {g}, "pencils": [{{"degree": {d}, "gamma_irreducible": "yes"}}]}}"#
            );
            expect_exact(&text, g, q(g, d - 1))?;
        }
    }
    let result = run_json(r#"{"genus": 9, "pencils": [{"degree": 4, "gamma_irreducible": "yes"}]}"#)?;
    let sqrt9 = ExactScalar::sqrt_of(9).unwrap();
    match result.value() {
        Some(v) if *v == sqrt9 && v.to_string() == "3" => Ok(()),
        other => Err(format!("g=9, d=4: got {other:?}")),
    }
}

fn tetragonal_scenarios() -> Check {
    let result = feasible_tau(4, 9, &[]).map_err(|e| e.to_string())?;
    let labels: Vec<String> = result
        .feasible
        .iter()
        .map(|f| f.scenario.parts.iter().map(i64::to_string).collect::<Vec<_>>().join("+"))
        .collect();
    if labels != ["3", "2+1", "1+1+1"] {
        return Err(format!("cases {labels:?}"));
    }
    let formulas: Vec<String> = result.feasible.iter().map(|f| f.tau.render(&f.scenario.param_names())).collect();
    if formulas[1] != "max{h, g - 2h}" || formulas[2] != "max{g - 2h1, g - 2h2, g - 2h3}" {
        return Err(format!("formulas {formulas:?}"));
    }
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests");
    let fixture = dir.join("fixtures/tetragonal.json").display().to_string();
    let golden = std::fs::read_to_string(dir.join("golden/decompose_tetragonal.txt")).map_err(|e| e.to_string())?;
    let out = symtau_cli::run(["symtau", "decompose", "--pencil", "4", "--verbose", &fixture], &mut std::io::empty());
    if out.code != 0 || out.stdout != golden {
        return Err(format!("golden mismatch (exit {}):\n{}{}", out.code, out.stdout, out.stderr));
    }
    Ok(())
}

fn table_identities() -> Check {
    for n in 2..=12 {
        for h in 0..=6 {
            for g in 2..=100 {
                let c = CoverDatum::new(n, h).unwrap();
                let b = b_cycle(c, 2, g).map_err(|e| e.to_string())?;
                if b.x_deg != n - 1 || b.delta_deg != 2 * (g - 1) - 2 * n * (h - 1) {
                    return Err(format!("B_(n-2)(H) for n={n} h={h} g={g}: {b:?}"));
                }
                for d in 2..=n {
                    let b = b_cycle(c, d, g).map_err(|e| e.to_string())?;
                    let (cx, ct) = diagonal_class_cd(d, g);
                    if b.delta_deg != cx * b.x_deg + ct * b.theta_deg {
                        return Err(format!("diagonal pairing n={n} h={h} g={g} d={d}"));
                    }
                }
                if n == 2 && ramification_degree(c, g) >= 0 {
                    let sigma = cover_cycle(c, g).map_err(|e| e.to_string())?;
                    let r = sigma.r_value().map_err(|e| e.to_string())?;
                    if r != q(g - 2 * h, 1) {
                        return Err(format!("R(Sigma) for h={h} g={g}: {r}"));
                    }
                }
            }
        }
    }
    Ok(())
}

fn random_rational(rng: &mut StdRng) -> BigRational {
    let n: i64 = rng.gen_range(-1_000_000..=1_000_000);
    let d: i64 = rng.gen_range(1..=1000);
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `(n, gamma)` is `(n + gamma) x - gamma delta/2`; expand in `x, delta` with
/// `x.x = 1`, `x.delta = 2`, `delta.delta = 4 - 4g`.
fn basis_pairing(n1: &BigRational, c1: &BigRational, n2: &BigRational, c2: &BigRational, g: i64) -> BigRational {
    let half = q(1, 2);
    let (a1, b1) = (n1 + c1, -(c1 * &half));
    let (a2, b2) = (n2 + c2, -(c2 * &half));
    &a1 * &a2 + q(2, 1) * (&a1 * &b2 + &b1 * &a2) + &b1 * &b2 * q(4 - 4 * g, 1)
}

fn pairing_oracle() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed_0011);
    let space = ResidueSpace::empty();
    for i in 0..10_000 {
        let (n1, c1, n2, c2) = (random_rational(&mut rng), random_rational(&mut rng), random_rational(&mut rng), random_rational(&mut rng));
        let g: i64 = rng.gen_range(2..=10_000);
        let d1 = NS2Class::new(n1.clone(), c1.clone());
        let d2 = NS2Class::new(n2.clone(), c2.clone());
        let got = intersect(&d1, &d2, &space, g as u64).map_err(|e| e.to_string())?;
        let want = basis_pairing(&n1, &c1, &n2, &c2, g);
        if got != want {
            return Err(format!("pair {i}: {got} != {want}"));
        }
    }
    Ok(())
}

fn random_spec(rng: &mut StdRng) -> String {
    let family = rng.gen_range(0..7);
    let (g, mut body) = match family {
        0 => {
            let g = rng.gen_range(2..=60);
            (g, r#""hyperelliptic": "yes""#.to_string())
        }
        1 => {
            let g = rng.gen_range(3..=60);
            let b = ["yes", "no", "unknown"][rng.gen_range(0..3)];
            let b = if g < 5 && b == "yes" { "unknown" } else { b };
            (g, format!(r#""hyperelliptic": "no", "bielliptic": "{b}""#))
        }
        2 => {
            let g = rng.gen_range(4..=60);
            (g, r#""hyperelliptic": "no", "pencils": [{"degree": 3}]"#.to_string())
        }
        3 => {
            let g = rng.gen_range(6..=100);
            let h = rng.gen_range(0..=(g - 1) / 8);
            (g, format!(r#""covers": [{{"degree": 2, "target_genus": {h}}}]"#))
        }
        4 => {
            let g = rng.gen_range(26..=60);
            (g, r#""covers": [{"degree": 3, "target_genus": 1, "target_has_g12": true}]"#.to_string())
        }
        5 => {
            let g = rng.gen_range(16..=60);
            (g, r#""hyperelliptic": "no", "pencils": [{"degree": 5}]"#.to_string())
        }
        _ => {
            let g = rng.gen_range(2..=100);
            (g, r#""hyperelliptic": "unknown""#.to_string())
        }
    };
    // pencils of degree at least (g+3)/2 exist on every curve of genus g
    let extra: Vec<String> = (0..rng.gen_range(0..3))
        .map(|_| format!(r#"{{"degree": {}}}"#, rng.gen_range(gonality_bound(g)..=g + 2)))
        .collect();
    if !extra.is_empty() {
        if body.contains("\"pencils\"") {
            body = body.replacen("}]", &format!("}}, {}]", extra.join(", ")), 1);
        } else {
            body.push_str(&format!(r#", "pencils": [{}]"#, extra.join(", ")));
        }
    }
    // so do their pencil curves, of class (d-1, 1)
    let classes = if rng.gen_bool(0.2) {
        format!(r#", "effective_classes": [[{}, 1]]"#, rng.gen_range(gonality_bound(g)..=g + 2) - 1)
    } else {
        String::new()
    };
    format!(r#"{{"genus": {g}, {body}{classes}}}"#)
}

fn soundness_fuzz() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed_0012);
    for _ in 0..1_000 {
        let text = random_spec(&mut rng);
        let result = run_json(&text).map_err(|e| format!("{text}: {e}"))?;
        let g = result.g as u64;
        let sqrt_g = ExactScalar::sqrt_of(g).unwrap();
        let top = ExactScalar::from_integer(result.g, g).unwrap();
        let cmp = |a: &ExactScalar, b: &ExactScalar| a.try_cmp(b).unwrap();
        if cmp(&result.lo, &result.hi) == Ordering::Greater {
            return Err(format!("{text}: lo > hi"));
        }
        if cmp(&result.lo, &sqrt_g) == Ordering::Less || cmp(&result.hi, &top) == Ordering::Greater {
            return Err(format!("{text}: [{}, {}] outside [sqrt g, g]", result.lo, result.hi));
        }
        if let Some(v) = result.value() {
            let square = v.try_mul(v).unwrap();
            if cmp(&square, &top) == Ordering::Less {
                return Err(format!("{text}: {v}^2 < g"));
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("hyperelliptic exactness, g in 2..=50", hyperelliptic_exactness),
        ("non-hyperelliptic genus 3 and 4", small_genus),
        ("bielliptic exactness and upper bound, g in 5..=50", bielliptic),
        ("trigonal, g in 4..=50", trigonal),
        ("double cover exactness, 6 <= g <= 100", double_cover),
        ("triple cover of an elliptic curve, g in 26..=60", triple_cover),
        ("five-gonal interval at g = 16", five_gonal),
        ("irreducible small pencils, g <= 100", kouvidakis),
        ("tetragonal scenarios", tetragonal_scenarios),
        ("cycle table identities", table_identities),
        ("pairing oracle, 10000 pairs", pairing_oracle),
        ("soundness fuzz, 1000 specs", soundness_fuzz),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("PASS {:>2} {name}", i + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {reason}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
