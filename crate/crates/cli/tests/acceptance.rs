//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::process::Command;
use std::time::{Duration, Instant};

use multideal::groebner::{
    buchberger, vanishes_on_torus, GroebnerOptions, PolySystem, TorusVanishing,
};
use multideal::multiplier::{
    jumping_numbers, lct, multiplier_monomial, multiplier_poly, Coefficient, Mode,
};
use multideal::nondeg::classify;
use multideal::toric_oracle::multiplier_via_resolution;
use multideal::{
    parse_polynomial, Error, MonomialIdeal, NewtonPolyhedron, Polynomial, Rational, Verdict,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn q(p: i64, d: i64) -> Rational {
    Rational::new(p.into(), d.into())
}

fn coeff(r: &Rational) -> Coefficient {
    Coefficient::new(r.clone()).expect("positive")
}

fn xy() -> Vec<String> {
    vec!["x".into(), "y".into()]
}

fn ideal(n: usize, gens: &[&[u32]]) -> MonomialIdeal {
    MonomialIdeal::minimalize(n, gens.iter().map(|g| g.to_vec())).unwrap()
}

fn random_ideal(rng: &mut ChaCha8Rng, n: usize, max_e: u32) -> MonomialIdeal {
    let k = rng.gen_range(1..=4);
    let gens: Vec<Vec<u32>> = (0..k)
        .map(|_| (0..n).map(|_| rng.gen_range(0..=max_e)).collect())
        .collect();
    MonomialIdeal::minimalize(n, gens).unwrap()
}

fn random_weight(rng: &mut ChaCha8Rng, max: i64, max_den: i64) -> Rational {
    let d = rng.gen_range(1..=max_den);
    q(rng.gen_range(1..=max * d), d)
}

fn within(limit: Duration, start: Instant, detail: String) -> Outcome {
    let t = start.elapsed();
    if t > limit {
        Err(format!("{detail}; took {t:.2?}, limit {limit:?}"))
    } else {
        Ok(format!("{detail} in {t:.2?}"))
    }
}

const CORPUS: [&str; 4] = [
    "y^2 - y*(x-1)^2",
    "(x*y-1)^9",
    "(x+y)^2 - (x-y)^5",
    "x^2 + y^3",
];

fn corpus_classifications() -> Outcome {
    let start = Instant::now();
    let r: Vec<_> = CORPUS
        .iter()
        .map(|t| classify(&parse_polynomial(t, &xy()).unwrap()).unwrap())
        .collect();
    use Verdict::*;
    let checks = [
        (
            "f",
            r[0].overall == Degenerate && r[0].principal_part == Nondegenerate,
        ),
        (
            "g",
            r[1].overall == Degenerate && r[1].proper_faces() == Nondegenerate,
        ),
        ("h", r[2].principal_part == Degenerate),
        ("x^2+y^3", r[3].overall == Nondegenerate),
    ];
    if let Some((name, _)) = checks.iter().find(|(_, ok)| !ok) {
        return Err(format!("classification of {name} is wrong"));
    }
    within(
        Duration::from_secs(10),
        start,
        "4 polynomials classified".into(),
    )
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut compared = 0;
    for _ in 0..500 {
        let a = random_ideal(&mut rng, 2, 8);
        for _ in 0..3 {
            let r = coeff(&random_weight(&mut rng, 3, 12));
            let ours = multiplier_monomial(&a, &r).map_err(|e| e.to_string())?;
            let theirs = multiplier_via_resolution(&a, &r).map_err(|e| e.to_string())?;
            if ours != theirs {
                return Err(format!(
                    "mismatch for {a:?} at r = {r}: {ours:?} vs {theirs:?}"
                ));
            }
            compared += 1;
        }
    }
    within(
        Duration::from_secs(60),
        start,
        format!("500 ideals, {compared} (ideal, r) pairs agree"),
    )
}

fn closed_forms() -> Outcome {
    let one = coeff(&q(1, 1));
    let cubes2 = ideal(2, &[&[3, 0], &[0, 3]]);
    let cubes3 = ideal(3, &[&[3, 0, 0], &[0, 3, 0], &[0, 0, 3]]);
    let cusp = ideal(2, &[&[2, 0], &[0, 3]]);
    let checks = [
        (
            "J((x^3,y^3),1) = (x,y)^2",
            multiplier_monomial(&cubes2, &one).unwrap() == ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]),
        ),
        (
            "J((x^3,y^3,z^3),1) = (x,y,z)",
            multiplier_monomial(&cubes3, &one).unwrap()
                == ideal(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
        ),
        (
            "lct((x^2,y^3)) = 5/6",
            lct(&cusp).unwrap().to_string() == "5/6",
        ),
        (
            "lct((x^3,y^3,z^3)) = 1",
            lct(&cubes3).unwrap().to_string() == "1",
        ),
    ];
    match checks.iter().find(|(_, ok)| !ok) {
        Some((name, _)) => Err(format!("{name} fails")),
        None => Ok("4 closed forms exact".into()),
    }
}

fn mult(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_mult"))
        .args(args)
        .args(["--format", "json"])
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "mult {args:?} failed: {}",
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn factored_form_through_cli() -> Outcome {
    let cases = [
        ("x^2 + y^3", Mode::Strict, "strict"),
        ("y^2 - y*(x-1)^2", Mode::PrincipalPart, "principal"),
        ("(x*y-1)^9", Mode::PrincipalPart, "principal"),
    ];
    let weights = [q(1, 2), q(5, 6), q(1, 1), q(7, 6), q(2, 1)];
    let mut checked = 0;
    for (text, mode, flag) in cases {
        let f = parse_polynomial(text, &xy()).unwrap();
        let tau = MonomialIdeal::term_ideal(&f).unwrap();
        let tau_text: Vec<String> = tau
            .generators()
            .iter()
            .map(|g| format!("x^{}*y^{}", g[0], g[1]))
            .collect();
        for r in &weights {
            let lib = multiplier_poly(&f, &coeff(r), mode).map_err(|e| e.to_string())?;
            let k: u32 = r.floor().to_integer().try_into().unwrap();
            let frac = r - r.floor();
            let expected = if frac == q(0, 1) {
                MonomialIdeal::unit(2)
            } else {
                multiplier_monomial(&tau, &coeff(&frac)).unwrap()
            };
            if lib.exponent != k || lib.monomial != expected || lib.base != f {
                return Err(format!("library formula fails for {text} at {r}"));
            }

            let poly = mult(&[
                "poly",
                "--vars",
                "x,y",
                "--f",
                text,
                "--r",
                &r.to_string(),
                "--mode",
                flag,
            ])?;
            let base = poly["principal"]["base"].as_str().ok_or("missing base")?;
            if parse_polynomial(base, &xy()).map_err(|e| e.to_string())? != f {
                return Err(format!("CLI base {base} differs from {text}"));
            }
            if poly["principal"]["exponent"].as_u64() != Some(k as u64) {
                return Err(format!("CLI exponent wrong for {text} at {r}"));
            }
            let cli_monomial = if frac == q(0, 1) {
                serde_json::json!([[0, 0]])
            } else {
                mult(&[
                    "monomial",
                    "--vars",
                    "x,y",
                    "--gens",
                    &tau_text.join(","),
                    "--r",
                    &frac.to_string(),
                ])?["generators"]
                    .clone()
            };
            if poly["monomial_generators"] != cli_monomial {
                return Err(format!("CLI monomial part differs for {text} at {r}"));
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} (f, r) cases agree through both CLI paths"
    ))
}

fn monotonicity_and_lct() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x1c7);
    for _ in 0..200 {
        let n = rng.gen_range(1..=3);
        let a = random_ideal(&mut rng, n, 6);
        let threshold = lct(&a).unwrap();
        let mut rs: Vec<Rational> = (0..4).map(|_| random_weight(&mut rng, 4, 12)).collect();
        if let multideal::multiplier::Lct::Finite(c) = &threshold {
            rs.push(c.clone());
        }
        rs.sort();
        let js: Vec<MonomialIdeal> = rs
            .iter()
            .map(|r| multiplier_monomial(&a, &coeff(r)).unwrap())
            .collect();
        for w in js.windows(2) {
            if !w[0].contains_ideal(&w[1]).unwrap() {
                return Err(format!("J not monotone for {a:?}"));
            }
        }
        for (r, j) in rs.iter().zip(&js) {
            if j.is_unit() != threshold.exceeds(r) {
                return Err(format!(
                    "J trivial at {r} disagrees with lct {threshold} for {a:?}"
                ));
            }
        }
    }
    within(
        Duration::from_secs(60),
        start,
        "200 ideals monotone, lct consistent".into(),
    )
}

fn jump_verification() -> Outcome {
    let a = ideal(2, &[&[2, 0], &[0, 3]]);
    let bound = q(3, 2);
    let jumps = jumping_numbers(&a, &bound).map_err(|e| e.to_string())?;
    let eps = q(1, 1000);
    let at = |r: &Rational| multiplier_monomial(&a, &coeff(r)).unwrap();
    let drops = |r: &Rational| {
        let (now, before) = (at(r), at(&(r - &eps)));
        before.contains_ideal(&now).unwrap() && now != before
    };
    for c in &jumps {
        if !drops(c) {
            return Err(format!("emitted {c} has no drop"));
        }
    }
    let mut probes = 0;
    for d in 1..=12 {
        for p in 1..=(3 * d / 2) {
            let s = q(p, d);
            if s > bound || jumps.contains(&s) {
                continue;
            }
            probes += 1;
            if drops(&s) {
                return Err(format!("unlisted drop at {s}"));
            }
        }
    }
    let listed: Vec<String> = jumps.iter().map(|j| j.to_string()).collect();
    Ok(format!(
        "jumps [{}] verified, {probes} other rationals show no drop",
        listed.join(", ")
    ))
}

fn origin_implies_compact() -> Outcome {
    let mut ideals: Vec<MonomialIdeal> = CORPUS
        .iter()
        .map(|t| MonomialIdeal::term_ideal(&parse_polynomial(t, &xy()).unwrap()).unwrap())
        .collect();
    ideals.push(ideal(2, &[&[3, 0], &[0, 3]]));
    ideals.push(ideal(3, &[&[3, 0, 0], &[0, 3, 0], &[0, 0, 3]]));
    ideals.push(ideal(2, &[&[2, 0], &[0, 5]]));
    let mut faces = 0;
    for a in &ideals {
        for face in NewtonPolyhedron::new(a).unwrap().faces().unwrap() {
            faces += 1;
            if face.locus().is_empty() && !face.compact {
                return Err(format!(
                    "face {:?} of {a:?} has empty locus but is unbounded",
                    face.active
                ));
            }
        }
    }
    Ok(format!("{faces} faces over {} polyhedra", ideals.len()))
}

// Independent reduction for the Gröbner check: term maps, grevlex by hand.

type TermMap = BTreeMap<Vec<u32>, Rational>;

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
    da.cmp(&db).then_with(|| {
        (0..a.len())
            .rev()
            .find(|&i| a[i] != b[i])
            .map_or(Ordering::Equal, |i| b[i].cmp(&a[i]))
    })
}

fn leading(p: &TermMap) -> Option<(Vec<u32>, Rational)> {
    p.iter()
        .max_by(|x, y| grevlex(x.0, y.0))
        .map(|(e, c)| (e.clone(), c.clone()))
}

fn axpy(p: &mut TermMap, g: &TermMap, shift: &[u32], c: &Rational) {
    for (e, d) in g {
        let e: Vec<u32> = e.iter().zip(shift).map(|(a, b)| a + b).collect();
        let v = p.remove(&e).unwrap_or_else(|| q(0, 1)) - c * d;
        if v != q(0, 1) {
            p.insert(e, v);
        }
    }
}

fn reduces_to_zero(mut p: TermMap, basis: &[TermMap]) -> bool {
    while let Some((e, c)) = leading(&p) {
        let hit = basis.iter().find_map(|g| {
            let (ge, gc) = leading(g)?;
            ge.iter()
                .zip(&e)
                .all(|(a, b)| a <= b)
                .then_some((g, ge, gc))
        });
        let Some((g, ge, gc)) = hit else { return false };
        let shift: Vec<u32> = e.iter().zip(&ge).map(|(a, b)| a - b).collect();
        axpy(&mut p, g, &shift, &(&c / &gc));
    }
    true
}

fn s_polynomial(f: &TermMap, g: &TermMap) -> TermMap {
    let ((fe, fc), (ge, gc)) = (leading(f).unwrap(), leading(g).unwrap());
    let l: Vec<u32> = fe.iter().zip(&ge).map(|(a, b)| *a.max(b)).collect();
    let mut s = TermMap::new();
    let shift = |m: &[u32]| l.iter().zip(m).map(|(a, b)| a - b).collect::<Vec<u32>>();
    axpy(&mut s, f, &shift(&fe), &-(q(1, 1) / fc));
    axpy(&mut s, g, &shift(&ge), &(q(1, 1) / gc));
    s
}

fn sample_values(count: usize) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::new();
    let mut h = 1;
    while out.len() < count {
        for p in 1..=h {
            for d in 1..=h {
                for v in [q(p, d), q(-p, d)] {
                    if !out.contains(&v) && out.len() < count {
                        out.push(v);
                    }
                }
            }
        }
        h += 1;
    }
    out
}

fn grid(n: usize) -> Vec<Vec<Rational>> {
    let per = match n {
        1 => 10_000,
        2 => 100,
        _ => 22,
    };
    let values = sample_values(per);
    let mut pts: Vec<Vec<Rational>> = vec![vec![]];
    for _ in 0..n {
        pts = pts
            .into_iter()
            .flat_map(|p| {
                values
                    .iter()
                    .map(move |v| [p.clone(), vec![v.clone()]].concat())
            })
            .collect();
    }
    pts
}

fn random_system(rng: &mut ChaCha8Rng, n: usize, plant: Option<&[Rational]>) -> PolySystem {
    let vars: Vec<String> = ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect();
    let polys = (0..rng.gen_range(1..=3))
        .map(|_| {
            let terms: Vec<(Vec<u32>, Rational)> = (0..rng.gen_range(1..=4))
                .map(|_| {
                    let mut e = vec![0u32; n];
                    let deg = rng.gen_range(0..=4);
                    for _ in 0..deg {
                        e[rng.gen_range(0..n)] += 1;
                    }
                    (e, q(rng.gen_range(-5..=5), 1))
                })
                .collect();
            let p = Polynomial::from_terms(vars.clone(), terms).unwrap();
            match plant {
                Some(z) => &p - &Polynomial::constant(vars.clone(), p.evaluate(z)),
                None => p,
            }
        })
        .collect();
    PolySystem::new(vars, polys).unwrap()
}

fn groebner_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6b);
    let grids: Vec<Vec<Vec<Rational>>> = (1..=3).map(grid).collect();
    let (mut bases, mut inconclusive, mut witnessed) = (0, 0, 0);
    for k in 0..100 {
        let n = rng.gen_range(1..=3);
        let pts = &grids[n - 1];
        let planted = (k % 2 == 0).then(|| pts[rng.gen_range(0..pts.len())].clone());
        let sys = random_system(&mut rng, n, planted.as_deref());

        match buchberger(&sys, &GroebnerOptions::default()) {
            Ok(gb) => {
                bases += 1;
                let maps: Vec<TermMap> = gb.polys.iter().map(|p| p.terms().clone()).collect();
                for i in 0..maps.len() {
                    for j in i + 1..maps.len() {
                        if !reduces_to_zero(s_polynomial(&maps[i], &maps[j]), &maps) {
                            return Err(format!(
                                "S-polynomial ({i},{j}) of system {k} does not reduce to zero"
                            ));
                        }
                    }
                }
                if sys
                    .polys
                    .iter()
                    .any(|p| !reduces_to_zero(p.terms().clone(), &maps))
                {
                    return Err(format!("system {k} is not in the ideal of its basis"));
                }
            }
            Err(Error::Inconclusive(_)) => inconclusive += 1,
            Err(e) => return Err(e.to_string()),
        }

        let zero_found = pts
            .iter()
            .any(|z| sys.polys.iter().all(|p| p.evaluate(z) == q(0, 1)));
        if zero_found {
            witnessed += 1;
            match vanishes_on_torus(&sys, &GroebnerOptions::default()) {
                Ok(TorusVanishing::Nowhere) => {
                    return Err(format!(
                        "system {k} has a sampled torus zero but engine says nowhere"
                    ))
                }
                Ok(TorusVanishing::YesSomewhere) | Err(Error::Inconclusive(_)) => {}
                Err(e) => return Err(e.to_string()),
            }
        }
    }
    Ok(format!("{bases} bases closed under S-pairs ({inconclusive} inconclusive), {witnessed} sampled torus zeros all confirmed"))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("corpus classifications", corpus_classifications),
        ("resolution oracle equivalence", oracle_equivalence),
        ("closed forms", closed_forms),
        (
            "nondegenerate multiplier structure via CLI",
            factored_form_through_cli,
        ),
        ("monotonicity and lct", monotonicity_and_lct),
        ("jumping numbers of (x^2,y^3)", jump_verification),
        ("empty locus implies compact", origin_implies_compact),
        ("Groebner soundness", groebner_soundness),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS [{}] {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL [{}] {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
