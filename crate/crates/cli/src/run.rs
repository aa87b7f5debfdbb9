use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use perfect_forge::components::{i_components_explicit, i_sigma_components_explicit};
use perfect_forge::constructions::{
    doubling, fullrank_code, generalized_ls, lindstrom_schonheim, read_switched, switch_family_explicit, vasiliev,
    write_switched, CosetPartition, ImplicitSwitchedCode, SwitchPart, SWITCHED_MAGIC,
};
use perfect_forge::fqla::io::{read_code, write_code, write_matrix};
use perfect_forge::fqla::ExplicitCode;
use perfect_forge::gf::Field;
use perfect_forge::hamming::HammingCode;
use perfect_forge::verify::{
    lower_bound_count, rank_certificate_explicit, rank_certificate_implicit, sampled_perfect_check, verify_perfect,
    VerificationReport,
};
use serde_json::{json, Value};

use crate::args::{Cli, Command, OutputArgs, VerifyMode};
use crate::fail::{Failure, Outcome};
use crate::parse;

/// What a command reports back.
pub struct Summary {
    pub text: String,
    pub json: Value,
    /// `Some(false)` when a verification ran and failed.
    pub verified: Option<bool>,
}

impl Summary {
    fn new(text: String, json: Value) -> Summary {
        Summary {
            text,
            json,
            verified: None,
        }
    }
}

/// Writes through a temporary file in the target directory and renames it
/// into place.
pub fn write_atomic(path: &Path, contents: &str) -> Outcome<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| Failure::other(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    log::info!("wrote {}", path.display());
    Ok(())
}

fn require_seed(seed: Option<u64>, what: &str) -> Outcome<u64> {
    seed.ok_or_else(|| Failure::usage(format!("{what} needs an explicit --seed")))
}

enum Loaded {
    Explicit(ExplicitCode),
    Switched(ImplicitSwitchedCode),
}

fn load(path: &Path) -> Outcome<Loaded> {
    let text = parse::read_file(path)?;
    if text.lines().next().map(str::trim) == Some(SWITCHED_MAGIC) {
        Ok(Loaded::Switched(read_switched(&text)?))
    } else {
        Ok(Loaded::Explicit(read_code(&text)?))
    }
}

fn code_json(code: &ExplicitCode) -> Value {
    json!({ "q": code.q(), "n": code.n(), "words": code.len() })
}

fn report_text(report: &VerificationReport) -> String {
    format!("{report}\n{}\n", report.summary_line())
}

/// Verifies and writes an explicit construction output.
fn finish_explicit(name: &str, code: ExplicitCode, out: &OutputArgs) -> Outcome<Summary> {
    let mut text = format!(
        "{name}: length {} over GF({}), {} words\n",
        code.n(),
        code.q(),
        code.len()
    );
    let mut js = json!({ "command": name, "code": code_json(&code) });
    let mut verified = None;
    match out.verify {
        Some(VerifyMode::Exact) => {
            let report = verify_perfect(&code)?;
            let rank = rank_certificate_explicit(&code).rank;
            text.push_str(&report_text(&report));
            writeln!(text, "rank {rank}").unwrap();
            js["report"] = serde_json::to_value(&report).unwrap();
            js["rank"] = json!(rank);
            verified = Some(report.passed());
        }
        Some(VerifyMode::Sampled) => {
            return Err(Failure::usage(
                "sampled verification applies to switched-code descriptions",
            ));
        }
        None => {}
    }
    if let Some(path) = &out.out {
        write_atomic(path, &write_code(&code))?;
    }
    Ok(Summary {
        text,
        json: js,
        verified,
    })
}

fn verify_switched(
    code: &ImplicitSwitchedCode,
    mode: VerifyMode,
    trials: u64,
    seed: Option<u64>,
    cap: u128,
) -> Outcome<(VerificationReport, usize)> {
    match mode {
        VerifyMode::Exact => {
            let listed = code.enumerate(cap)?;
            Ok((verify_perfect(&listed)?, rank_certificate_explicit(&listed).rank))
        }
        VerifyMode::Sampled => {
            let seed = require_seed(seed, "sampled verification")?;
            let report = sampled_perfect_check(code, trials, seed);
            Ok((report, rank_certificate_implicit(code, seed)?.rank))
        }
    }
}

pub fn run(cli: &Cli) -> Outcome<Summary> {
    let cap = cli.cap;
    match &cli.command {
        Command::FieldTable { q, modulus } => field_table(*q, modulus.as_deref()),
        Command::Hamming { q, m, parity, out } => {
            let h = HammingCode::build(*q, *m)?;
            let text = if *parity {
                write_matrix(h.parity_check())
            } else {
                write_code(&h.codewords(cap)?)
            };
            if let Some(path) = out {
                write_atomic(path, &text)?;
            }
            Ok(Summary::new(
                format!("H_{{{q},{m}}}: length {}, dimension {}\n", h.n(), h.dimension()),
                json!({ "command": "hamming", "q": q, "m": m, "n": h.n(), "dimension": h.dimension() }),
            ))
        }
        Command::Components {
            input,
            i,
            sigma,
            out_dir,
        } => {
            let code = read_code(&parse::read_file(input)?)?;
            let partition = match sigma {
                Some(s) => i_sigma_components_explicit(&code, *i, &parse::sigma(s, code.q())?)?,
                None => i_components_explicit(&code, *i)?,
            };
            let mut text = format!("{} blocks at coordinate {i}\n", partition.len());
            for (b, size) in partition.sizes().iter().enumerate() {
                writeln!(text, "  block {}: {size} words", b + 1).unwrap();
            }
            if let Some(dir) = out_dir {
                std::fs::create_dir_all(dir).map_err(|e| Failure::other(format!("{}: {e}", dir.display())))?;
                for b in 0..partition.len() {
                    let path = dir.join(format!("block-{}.code", b + 1));
                    write_atomic(&path, &write_code(&partition.block_code(&code, b)))?;
                }
            }
            Ok(Summary::new(
                text,
                json!({ "command": "components", "i": i, "sigma": sigma, "sizes": partition.sizes() }),
            ))
        }
        Command::Vasiliev { base, lambda, output } => {
            let c1 = parse::base(base, cap)?;
            finish_explicit("vasiliev", vasiliev(&c1, &parse::lambda(lambda)?, cap)?, output)
        }
        Command::Doubling { m, pi, output } => {
            let p = CosetPartition::new(*m)?;
            let pi = parse::pi(pi, p.n())?;
            finish_explicit("doubling", doubling(&p, &p, &pi, cap)?, output)
        }
        Command::Ls {
            q,
            base,
            lambda,
            output,
        } => {
            let c1 = parse::base(base, cap)?;
            if let Some(q) = q {
                if *q != c1.q() {
                    return Err(Failure::usage(format!(
                        "--q {q} but the base code is over GF({})",
                        c1.q()
                    )));
                }
            }
            finish_explicit("ls", lindstrom_schonheim(&c1, &parse::lambda(lambda)?, cap)?, output)
        }
        Command::Gls { base, i, sigma, output } => {
            let c1 = parse::base(base, cap)?;
            let map = parse::sigma_map(sigma, c1.q())?;
            finish_explicit("gls", generalized_ls(&c1, *i, &map, cap)?, output)
        }
        Command::Switch { input, parts, output } => {
            let code = read_code(&parse::read_file(input)?)?;
            let parts = parts
                .iter()
                .map(|p| {
                    let (i, sigma, block) = parse::part(p, code.q())?;
                    Ok(SwitchPart { block, i, sigma })
                })
                .collect::<Outcome<Vec<_>>>()?;
            finish_explicit("switch", switch_family_explicit(&code, &parts)?, output)
        }
        Command::Fullrank {
            q,
            m,
            sigmas,
            implicit,
            output,
        } => {
            let sigmas = match sigmas.len() {
                1 => vec![parse::sigma(&sigmas[0], *q)?; *m],
                _ => sigmas.iter().map(|s| parse::sigma(s, *q)).collect::<Outcome<_>>()?,
            };
            let code = fullrank_code(*q, *m, &sigmas)?;
            if !*implicit {
                return finish_explicit("fullrank", code.enumerate(cap)?, output);
            }
            let mut text = format!(
                "fullrank: switched H_{{{q},{m}}}, length {}, {} switched cosets\n",
                code.n(),
                code.parts().len()
            );
            let mut js = json!({ "command": "fullrank", "q": q, "m": m, "n": code.n() });
            let mut verified = None;
            if let Some(mode) = output.verify {
                let (report, rank) = verify_switched(&code, mode, output.trials, output.seed, cap)?;
                text.push_str(&report_text(&report));
                writeln!(text, "rank {rank}").unwrap();
                js["report"] = serde_json::to_value(&report).unwrap();
                js["rank"] = json!(rank);
                verified = Some(report.passed());
            }
            if let Some(path) = &output.out {
                write_atomic(path, &write_switched(&code))?;
            }
            Ok(Summary {
                text,
                json: js,
                verified,
            })
        }
        Command::Verify {
            input,
            exact: _,
            sampled,
            seed,
        } => {
            let report = match (load(input)?, sampled) {
                (Loaded::Explicit(code), None) => verify_perfect(&code)?,
                (Loaded::Explicit(_), Some(_)) => {
                    return Err(Failure::usage(
                        "sampled verification applies to switched-code descriptions",
                    ))
                }
                (Loaded::Switched(code), None) => verify_perfect(&code.enumerate(cap)?)?,
                (Loaded::Switched(code), Some(trials)) => {
                    sampled_perfect_check(&code, *trials, require_seed(*seed, "sampled verification")?)
                }
            };
            Ok(Summary {
                text: report_text(&report),
                json: json!({ "command": "verify", "report": report }),
                verified: Some(report.passed()),
            })
        }
        Command::Rank { input, seed } => {
            let (n, cert) = match load(input)? {
                Loaded::Explicit(code) => (code.n(), rank_certificate_explicit(&code)),
                Loaded::Switched(code) => (
                    code.n(),
                    rank_certificate_implicit(&code, require_seed(*seed, "rank of a switched code")?)?,
                ),
            };
            let full = if cert.is_full(n) { " (full rank)" } else { "" };
            Ok(Summary::new(
                format!("rank {} of length {n}{full}\n", cert.rank),
                json!({ "command": "rank", "n": n, "rank": cert.rank, "proofs": cert.proofs }),
            ))
        }
        Command::Bound { q, n } => {
            let b = lower_bound_count(*q, *n)?;
            let text = if b.vacuous() {
                format!("bound is vacuous at length {n}: exponent {} < 0\n", b.exponent)
            } else {
                let value = b.decimal.clone().unwrap_or_else(|| "(too large to print)".into());
                format!("N({q},{n}) >= {}^({q}^{}) = {value}\n", b.base, b.exponent)
            };
            Ok(Summary::new(text, json!({ "command": "bound", "bound": b })))
        }
    }
}

fn field_table(q: u32, modulus: Option<&str>) -> Outcome<Summary> {
    let mut field = Field::with_order(q)?;
    if let Some(m) = modulus {
        let coeffs: Vec<u32> = m
            .split(',')
            .map(|c| {
                c.trim()
                    .parse()
                    .map_err(|_| Failure::usage(format!("bad modulus coefficient {c:?}")))
            })
            .collect::<Outcome<_>>()?;
        field = Field::new(field.p(), field.k(), Some(&coeffs))?;
    }
    let table = |op: &dyn Fn(u8, u8) -> u8| -> Vec<Vec<u8>> {
        (0..q as u8).map(|a| (0..q as u8).map(|b| op(a, b)).collect()).collect()
    };
    let add = table(&|a, b| field.add(a, b));
    let mul = table(&|a, b| field.mul(a, b));
    let mut text = format!(
        "GF({q}) = GF({}^{}), modulus {:?}\n",
        field.p(),
        field.k(),
        field.modulus()
    );
    for (name, t) in [("+", &add), ("*", &mul)] {
        writeln!(
            text,
            "{name:>3} |{}",
            (0..q).map(|b| format!("{b:>3}")).collect::<String>()
        )
        .unwrap();
        for (a, row) in t.iter().enumerate() {
            writeln!(
                text,
                "{a:>3} |{}",
                row.iter().map(|v| format!("{v:>3}")).collect::<String>()
            )
            .unwrap();
        }
    }
    Ok(Summary::new(
        text,
        json!({ "command": "field-table", "q": q, "p": field.p(), "k": field.k(), "modulus": field.modulus(), "add": add, "mul": mul }),
    ))
}
