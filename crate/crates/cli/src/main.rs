//! `mult`: multiplier ideals, thresholds and jumping numbers from the command line.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 degenerate input,
//! 3 inconclusive nondegeneracy check.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use multideal::exprparse::{infer_variables, parse_rational, parse_variable_list};
use multideal::multiplier::{
    jumping_numbers, lct, multiplier_monomial, Coefficient, Mode, PolyMultiplier,
};
use multideal::nondeg::{classify, NondegReport};
use multideal::toric_oracle::{
    divisor_data, fan_to_json, multiplier_via_resolution, smooth_subdivision,
};
use multideal::{parse_polynomial, Error, MonomialIdeal, Polynomial, Rational, Verdict};

#[derive(Parser)]
#[command(
    name = "mult",
    version,
    about = "Multiplier ideals of monomial ideals and nondegenerate polynomials"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Every face of the Newton polyhedron must be nondegenerate.
    Strict,
    /// Only compact faces must be nondegenerate; results hold near the origin.
    Principal,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Strict => Mode::Strict,
            ModeArg::Principal => Mode::PrincipalPart,
        }
    }
}

#[derive(Args)]
struct Vars {
    /// Comma-separated variable names; inferred from the input when omitted.
    #[arg(long)]
    vars: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// J(r·a) for a monomial ideal a.
    Monomial {
        #[command(flatten)]
        vars: Vars,
        /// Comma-separated monomial generators, e.g. "x^3,y^3".
        #[arg(long)]
        gens: String,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
    },
    /// J(r·f) for a polynomial f nondegenerate with respect to its Newton polyhedron.
    Poly {
        #[command(flatten)]
        vars: Vars,
        #[arg(long)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Strict)]
        mode: ModeArg,
    },
    /// Face-by-face nondegeneracy report.
    Classify {
        #[command(flatten)]
        vars: Vars,
        #[arg(long)]
        f: String,
    },
    /// Log canonical threshold of a monomial ideal or a nondegenerate polynomial.
    Lct {
        #[command(flatten)]
        vars: Vars,
        #[arg(long, conflicts_with = "f", required_unless_present = "f")]
        gens: Option<String>,
        #[arg(long)]
        f: Option<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Strict)]
        mode: ModeArg,
    },
    /// Jumping numbers in (0, bound].
    Jumps {
        #[command(flatten)]
        vars: Vars,
        #[arg(long, conflicts_with = "f", required_unless_present = "f")]
        gens: Option<String>,
        #[arg(long)]
        f: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        bound: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Strict)]
        mode: ModeArg,
    },
    /// Smooth toric resolution data of a two-variable monomial ideal.
    Oracle {
        #[command(flatten)]
        vars: Vars,
        #[arg(long)]
        gens: String,
        /// Also push forward to J(r·a).
        #[arg(long, allow_hyphen_values = true)]
        r: Option<String>,
    },
    /// Re-run the worked examples and report each check.
    Selftest,
}

/// Rendered result: text for humans, JSON for machines.
struct Output {
    text: String,
    json: Value,
}

fn variables(vars: &Vars, text: &str) -> Result<Vec<String>, Error> {
    Ok(match &vars.vars {
        Some(decl) => parse_variable_list(decl)?,
        None => infer_variables(text)?,
    })
}

fn coefficient(text: &str) -> Result<Coefficient, Error> {
    Coefficient::new(parse_rational(text)?)
}

fn positive(text: &str) -> Result<Rational, Error> {
    Ok(coefficient(text)?.value().clone())
}

fn generators(vars: &Vars, text: &str) -> Result<(Vec<String>, MonomialIdeal), Error> {
    let names = match &vars.vars {
        Some(decl) => parse_variable_list(decl)?,
        None => {
            let mut names: Vec<String> = Vec::new();
            for piece in text.split(',') {
                for v in infer_variables(piece)? {
                    if !names.contains(&v) {
                        names.push(v);
                    }
                }
            }
            names
        }
    };
    if names.is_empty() {
        return Err(Error::EmptyDimension);
    }
    let mut gens = Vec::new();
    for piece in text.split(',') {
        let p = parse_polynomial(piece, &names)?;
        if !p.is_monomial() {
            return Err(Error::NotMonomial(piece.trim().to_string()));
        }
        gens.push(p.terms().keys().next().expect("one term").clone());
    }
    Ok((names.clone(), MonomialIdeal::minimalize(names.len(), gens)?))
}

fn polynomial(vars: &Vars, text: &str) -> Result<Polynomial, Error> {
    let names = variables(vars, text)?;
    if names.is_empty() {
        return Err(Error::EmptyDimension);
    }
    let f = parse_polynomial(text, &names)?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(f)
}

fn report_output(r: &NondegReport) -> Output {
    let mut text = format!(
        "overall: {}\nprincipal_part: {}\n",
        r.overall.as_str(),
        r.principal_part.as_str()
    );
    for w in &r.witnesses {
        let kind = if w.compact { "compact" } else { "unbounded" };
        text.push_str(&format!(
            "degenerate face {:?} (dim {}, {kind}): {}\n",
            w.active, w.dim, w.face_polynomial
        ));
    }
    Output {
        text: text.trim_end().to_string(),
        json: r.to_json(),
    }
}

fn rationals(values: &[Rational]) -> Output {
    let strings: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    Output {
        text: strings.join("\n"),
        json: json!({ "jumps": strings }),
    }
}

fn run(command: Command) -> Result<Output, Error> {
    match command {
        Command::Monomial { vars, gens, r } => {
            let (names, a) = generators(&vars, &gens)?;
            let j = multiplier_monomial(&a, &coefficient(&r)?)?;
            Ok(Output {
                text: j.render(&names),
                json: j.to_json(),
            })
        }
        Command::Poly { vars, f, r, mode } => {
            let f = polynomial(&vars, &f)?;
            let j = PolyMultiplier::new(&f, mode.into())?.at(&coefficient(&r)?)?;
            Ok(Output {
                text: j.to_string(),
                json: j.to_json(),
            })
        }
        Command::Classify { vars, f } => {
            let f = polynomial(&vars, &f)?;
            Ok(report_output(&classify(&f)?))
        }
        Command::Lct {
            vars,
            gens,
            f,
            mode,
        } => {
            let value = match (gens, f) {
                (Some(g), _) => lct(&generators(&vars, &g)?.1)?.to_string(),
                (None, Some(f)) => PolyMultiplier::new(&polynomial(&vars, &f)?, mode.into())?
                    .lct()
                    .to_string(),
                (None, None) => unreachable!("clap requires one input"),
            };
            Ok(Output {
                text: value.clone(),
                json: json!({ "lct": value }),
            })
        }
        Command::Jumps {
            vars,
            gens,
            f,
            bound,
            mode,
        } => {
            let bound = positive(&bound)?;
            let jumps = match (gens, f) {
                (Some(g), _) => jumping_numbers(&generators(&vars, &g)?.1, &bound)?,
                (None, Some(f)) => PolyMultiplier::new(&polynomial(&vars, &f)?, mode.into())?
                    .jumping_numbers(&bound)?,
                (None, None) => unreachable!("clap requires one input"),
            };
            Ok(rationals(&jumps))
        }
        Command::Oracle { vars, gens, r } => {
            let (names, a) = generators(&vars, &gens)?;
            let fan = smooth_subdivision(&a)?;
            let data = divisor_data(&a, &fan)?;
            let mut json = fan_to_json(&fan, &data);
            let mut text = String::from("ray      ord  k_rel\n");
            for d in &data {
                text.push_str(&format!(
                    "{:<8} {:<4} {}\n",
                    format!("({},{})", d.ray[0], d.ray[1]),
                    d.ord,
                    d.k_rel
                ));
            }
            if let Some(r) = r {
                let j = multiplier_via_resolution(&a, &coefficient(&r)?)?;
                text.push_str(&format!("J = {}\n", j.render(&names)));
                json["multiplier"] = j.to_json();
            }
            Ok(Output {
                text: text.trim_end().to_string(),
                json,
            })
        }
        Command::Selftest => selftest(),
    }
}

fn selftest() -> Result<Output, Error> {
    let xy = vec!["x".to_string(), "y".to_string()];
    let classify_text =
        |t: &str| -> Result<NondegReport, Error> { classify(&parse_polynomial(t, &xy)?) };
    let ideal =
        |n: usize, gens: &[&[u32]]| MonomialIdeal::minimalize(n, gens.iter().map(|g| g.to_vec()));
    let q = |p: i64, d: i64| Rational::new(p.into(), d.into());
    use Verdict::*;

    let mut checks: Vec<(&str, bool)> = Vec::new();
    let f = classify_text("y^2 - y*(x-1)^2")?;
    checks.push((
        "f degenerate, principal part nondegenerate",
        f.overall == Degenerate && f.principal_part == Nondegenerate,
    ));
    let g = classify_text("(x*y-1)^9")?;
    checks.push((
        "g degenerate only on the whole polyhedron",
        g.overall == Degenerate && g.proper_faces() == Nondegenerate,
    ));
    let h = classify_text("(x+y)^2 - (x-y)^5")?;
    checks.push((
        "h has degenerate principal part",
        h.principal_part == Degenerate,
    ));
    let d = classify_text("x^2 + y^3")?;
    checks.push(("x^2 + y^3 nondegenerate", d.overall == Nondegenerate));

    let one = Coefficient::new(q(1, 1))?;
    let cubes2 = ideal(2, &[&[3, 0], &[0, 3]])?;
    checks.push((
        "J((x^3,y^3), 1) = (x,y)^2",
        multiplier_monomial(&cubes2, &one)? == ideal(2, &[&[2, 0], &[1, 1], &[0, 2]])?,
    ));
    let cubes3 = ideal(3, &[&[3, 0, 0], &[0, 3, 0], &[0, 0, 3]])?;
    checks.push((
        "J((x^3,y^3,z^3), 1) = (x,y,z)",
        multiplier_monomial(&cubes3, &one)? == ideal(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])?,
    ));
    let cusp = ideal(2, &[&[2, 0], &[0, 3]])?;
    checks.push(("lct((x^2,y^3)) = 5/6", lct(&cusp)?.to_string() == "5/6"));
    checks.push(("lct((x^3,y^3,z^3)) = 1", lct(&cubes3)?.to_string() == "1"));
    checks.push((
        "jumps of (x^2,y^3) up to 3/2",
        jumping_numbers(&cusp, &q(3, 2))? == vec![q(5, 6), q(7, 6), q(4, 3), q(3, 2)],
    ));
    let two_five = ideal(2, &[&[2, 0], &[0, 5]])?;
    let r = Coefficient::new(q(9, 10))?;
    checks.push((
        "resolution agrees on (x^2,y^5) at 9/10",
        multiplier_via_resolution(&two_five, &r)? == multiplier_monomial(&two_five, &r)?,
    ));

    let passed = checks.iter().all(|(_, ok)| *ok);
    let text = checks
        .iter()
        .map(|(name, ok)| format!("{} {name}", if *ok { "ok  " } else { "FAIL" }))
        .collect::<Vec<_>>()
        .join("\n");
    let json = json!({
        "passed": passed,
        "checks": checks.iter().map(|(name, ok)| json!({ "name": name, "pass": ok })).collect::<Vec<_>>(),
    });
    if !passed {
        eprintln!("{text}");
        return Err(Error::Inconclusive("selftest failed".into()));
    }
    Ok(Output { text, json })
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Degenerate { .. } => 2,
        Error::Inconclusive(_) => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let format = cli.format;
    match run(cli.command) {
        Ok(out) => {
            let body = match format {
                Format::Text => out.text,
                Format::Json => serde_json::to_string_pretty(&out.json).expect("json"),
            };
            // a closed pipe is not an error worth reporting
            let _ = writeln!(std::io::stdout().lock(), "{body}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            match format {
                Format::Text => {
                    eprintln!("error[{}]: {e}", e.code());
                    if let Error::Degenerate { witnesses } = &e {
                        for w in witnesses {
                            eprintln!(
                                "  face {:?} (dim {}): {}",
                                w.active, w.dim, w.face_polynomial
                            );
                        }
                    }
                }
                Format::Json => {
                    let mut body = json!({ "error": e.code(), "message": e.to_string() });
                    if let Error::Degenerate { witnesses } = &e {
                        body["degenerate_faces"] = witnesses.iter().map(|w| w.to_json()).collect();
                    }
                    eprintln!("{body}");
                }
            }
            ExitCode::from(exit_code(&e))
        }
    }
}
