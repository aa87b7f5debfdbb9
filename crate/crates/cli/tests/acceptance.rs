//! Acceptance criteria, one PASS/FAIL line each.

use std::fmt::Write as _;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use perfect_forge::components::{
    admissible_check, principal_basis, structural_predicate, Admissibility, StructuralMode,
};
use perfect_forge::constructions::{
    doubling, fullrank_code, generalized_ls, lindstrom_schonheim, vasiliev, CosetPartition, LambdaFunction, SigmaMap,
};
use perfect_forge::fqla::{FqMatrix, FqVector};
use perfect_forge::gf::FieldPermutation;
use perfect_forge::hamming::HammingCode;
use perfect_forge::rng::SplitMix64;
use perfect_forge::verify::{
    lemma1_check, linearity_check, lower_bound_count, rank_certificate_explicit, rank_certificate_implicit,
    sampled_perfect_check, verify_perfect,
};

type Outcome = Result<String, String>;

/// Name, check and time budget in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

const CAP: u128 = 1 << 26;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn word_line(w: &[u8]) -> String {
    w.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" ")
}

fn code_file(n: usize, words: &[[u8; 7]]) -> String {
    let mut s = format!("# perfect-forge code v1\nq=2 p=2 k=1 n={n} count={}\n", words.len());
    for w in words {
        writeln!(s, "{}", word_line(w)).unwrap();
    }
    s
}

const R7: [[u8; 7]; 8] = [
    [0, 0, 0, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 1, 1],
    [0, 1, 0, 0, 1, 0, 1],
    [0, 1, 1, 0, 1, 1, 0],
    [1, 0, 0, 1, 0, 0, 1],
    [1, 0, 1, 1, 0, 1, 0],
    [1, 1, 0, 1, 1, 0, 0],
    [1, 1, 1, 1, 1, 1, 1],
];

const R7_SHIFTED: [[u8; 7]; 8] = [
    [0, 0, 0, 1, 1, 1, 0],
    [0, 0, 1, 1, 1, 0, 1],
    [0, 1, 0, 1, 0, 1, 1],
    [0, 1, 1, 1, 0, 0, 0],
    [1, 0, 0, 0, 1, 1, 1],
    [1, 0, 1, 0, 1, 0, 0],
    [1, 1, 0, 0, 0, 1, 0],
    [1, 1, 1, 0, 0, 0, 1],
];

fn criterion_1() -> Outcome {
    // (u | u+v | p(u)) with v in {000, 111}, listed in sorted order.
    let mut words = Vec::new();
    for u in 0..8u8 {
        let u = [(u >> 2) & 1, (u >> 1) & 1, u & 1];
        for v in [0u8, 1] {
            let p = u[0] ^ u[1] ^ u[2];
            words.push([u[0], u[1], u[2], u[0] ^ v, u[1] ^ v, u[2] ^ v, p]);
        }
    }
    words.sort();
    let dir = tempfile::tempdir().map_err(err)?;
    let input = dir.path().join("h7.code");
    std::fs::write(&input, code_file(7, &words)).map_err(err)?;
    let out = dir.path().join("blocks");
    let status = Command::new(env!("CARGO_BIN_EXE_perfect-forge"))
        .args(["components", "--i", "7", "--input"])
        .arg(&input)
        .arg("--out-dir")
        .arg(&out)
        .env("RUST_LOG", "off")
        .output()
        .map_err(err)?;
    ensure(status.status.success(), || {
        format!("components exited with {}", status.status)
    })?;
    let mut blocks: Vec<_> = std::fs::read_dir(&out)
        .map_err(err)?
        .map(|e| e.unwrap().file_name())
        .collect();
    blocks.sort();
    ensure(blocks == ["block-1.code", "block-2.code"], || {
        format!("block files {blocks:?}")
    })?;
    for (name, expected) in [("block-1.code", &R7), ("block-2.code", &R7_SHIFTED)] {
        let got = std::fs::read_to_string(out.join(name)).map_err(err)?;
        ensure(got == code_file(7, expected), || format!("{name} differs:\n{got}"))?;
    }
    Ok("2 blocks of 8, both byte-identical to the listed vectors".into())
}

fn criterion_2() -> Outcome {
    let mut checked = 0;
    for (q, m) in [(2u32, 3usize), (2, 4), (2, 5), (3, 2), (3, 3), (4, 2), (4, 3)] {
        let h = Arc::new(HammingCode::build(q, m).map_err(err)?);
        let expected = (q as usize).pow(m as u32 - 1) - 1;
        for i in 1..=h.n() {
            let r = principal_basis(&h, i).map_err(err)?;
            let rank = r.basis().rank();
            ensure(rank == expected, || {
                format!("(q,m)=({q},{m}) i={i}: rank {rank}, expected {expected}")
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} coordinates, every rank equals q^(m-1) - 1"))
}

fn criterion_3() -> Outcome {
    let mut codes = Vec::new();
    for (q, m) in [(2u32, 3usize), (2, 4), (3, 2), (3, 3)] {
        codes.push((
            format!("H({q},{m})"),
            HammingCode::build(q, m).map_err(err)?.codewords(CAP).map_err(err)?,
        ));
    }
    let h23 = HammingCode::build(2, 3).map_err(err)?.codewords(CAP).map_err(err)?;
    let h32 = HammingCode::build(3, 2).map_err(err)?.codewords(CAP).map_err(err)?;
    codes.push((
        "vasiliev zero".into(),
        vasiliev(&h23, &LambdaFunction::Zero, CAP).map_err(err)?,
    ));
    codes.push((
        "vasiliev seeded".into(),
        vasiliev(&h23, &LambdaFunction::Seeded(1), CAP).map_err(err)?,
    ));
    let p = CosetPartition::new(3).map_err(err)?;
    let pis: [Vec<usize>; 3] = [
        (0..8).collect(),
        (0..8).rev().collect(),
        (0..8).map(|k| (k + 3) % 8).collect(),
    ];
    for pi in &pis {
        codes.push((format!("doubling pi={pi:?}"), doubling(&p, &p, pi, CAP).map_err(err)?));
    }
    codes.push((
        "ls H(3,2)".into(),
        lindstrom_schonheim(&h32, &LambdaFunction::Zero, CAP).map_err(err)?,
    ));
    codes.push((
        "gls H(2,3)".into(),
        generalized_ls(&h23, 1, &SigmaMap::Uniform(FieldPermutation::swap(2)), CAP).map_err(err)?,
    ));
    for (name, code) in &codes {
        let report = verify_perfect(code).map_err(err)?;
        ensure(report.passed(), || format!("{name}: {}", report.summary_line()))?;
    }
    Ok(format!("{} codes tile their ambient space", codes.len()))
}

fn criterion_4() -> Outcome {
    let code = fullrank_code(2, 4, &vec![FieldPermutation::swap(2); 4]).map_err(err)?;
    let listed = code.enumerate(CAP).map_err(err)?;
    ensure(listed.len() == 2048, || format!("{} words", listed.len()))?;
    let report = verify_perfect(&listed).map_err(err)?;
    ensure(report.passed(), || report.summary_line())?;
    let rank = rank_certificate_explicit(&listed).rank;
    let hamming = HammingCode::build(2, 4).map_err(err)?.codewords(CAP).map_err(err)?;
    let base_rank = rank_certificate_explicit(&hamming).rank;
    ensure(rank == 15 && base_rank == 11, || {
        format!("rank {rank}, Hamming rank {base_rank}")
    })?;
    Ok(format!("2048 words, perfect, rank {rank} against {base_rank}"))
}

fn criterion_5() -> Outcome {
    let code = fullrank_code(3, 4, &vec![FieldPermutation::cycle(3); 4]).map_err(err)?;
    let family: Vec<_> = code.parts().iter().map(|p| p.component.clone()).collect();
    let adm = admissible_check(&family).map_err(err)?;
    ensure(adm == Admissibility::Admissible, || format!("{adm:?}"))?;
    let report = sampled_perfect_check(&code, 10_000, 2024);
    ensure(report.passed(), || report.to_string())?;
    let cert = rank_certificate_implicit(&code, 2024).map_err(err)?;
    ensure(cert.rank == 40, || format!("rank {}", cert.rank))?;
    let recomputed = cert.recompute_rank(code.base().field(), code.n()).map_err(err)?;
    ensure(recomputed == 40, || format!("certificate rows have rank {recomputed}"))?;
    Ok("admissible, 10000 probes without a miss, rank 40".into())
}

fn criterion_6() -> Outcome {
    let h23 = HammingCode::build(2, 3).map_err(err)?.codewords(CAP).map_err(err)?;
    let zero = linearity_check(&vasiliev(&h23, &LambdaFunction::Zero, CAP).map_err(err)?).map_err(err)?;
    ensure(zero.is_linear(), || format!("lambda = zero gave {zero:?}"))?;
    for seed in [1u64, 2, 3, 4] {
        let lin = linearity_check(&vasiliev(&h23, &LambdaFunction::Seeded(seed), CAP).map_err(err)?).map_err(err)?;
        ensure(!lin.is_linear(), || format!("seed {seed} gave a linear code"))?;
    }
    Ok("zero lambda linear, seeds 1..=4 each have a witness".into())
}

/// All vectors of the row space of `basis`, or `trials` random ones.
fn span_words(basis: &FqMatrix, q: u32, trials: Option<(u64, &mut SplitMix64)>) -> Vec<FqVector> {
    let k = basis.rows();
    match trials {
        None => (0..(q as u64).pow(k as u32))
            .map(|idx| basis.combine(&FqVector::from_rank_index(idx, q, k).symbols()))
            .collect(),
        Some((t, rng)) => (0..t)
            .map(|_| {
                let c: Vec<u8> = (0..k).map(|_| rng.below(q as u64) as u8).collect();
                basis.combine(&c)
            })
            .collect(),
    }
}

fn structural_suite(q: u32, m: usize, trials: Option<u64>) -> Result<usize, String> {
    let h = Arc::new(HammingCode::build(q, m).map_err(err)?);
    let mut rng = SplitMix64::new(77);
    let mut checked = 0;
    let pairs: Vec<(usize, usize)> = match trials {
        None => (1..=h.n()).flat_map(|i| (1..=h.n()).map(move |j| (i, j))).collect(),
        Some(_) => (0..3).map(|k| (1 + k, h.n() - k)).collect(),
    };
    for &(i, j) in &pairs {
        let ri = principal_basis(&h, i).map_err(err)?;
        if i == j {
            for u in span_words(ri.basis(), q, trials.map(|t| (t, &mut rng))) {
                let ok = structural_predicate(&h, &u, StructuralMode::Line { i }).map_err(err)?;
                ensure(ok, || format!("line property fails at i={i} for {u}"))?;
                checked += 1;
            }
            continue;
        }
        let rj = principal_basis(&h, j).map_err(err)?;
        let rows: Vec<FqVector> = (0..ri.basis().rows())
            .map(|r| ri.basis().row(r))
            .chain((0..rj.basis().rows()).map(|r| rj.basis().row(r)))
            .collect();
        let both = FqMatrix::from_rows(h.field().clone(), h.n(), &rows).map_err(err)?;
        for u in span_words(&both, q, trials.map(|t| (t, &mut rng))) {
            let ok = structural_predicate(&h, &u, StructuralMode::Plane { i, j }).map_err(err)?;
            ensure(ok, || format!("plane property fails at i={i}, j={j} for {u}"))?;
            checked += 1;
        }
    }
    if trials.is_some() {
        for i in [1, h.n()] {
            let ri = principal_basis(&h, i).map_err(err)?;
            for u in span_words(ri.basis(), q, trials.map(|t| (t, &mut rng))) {
                let ok = structural_predicate(&h, &u, StructuralMode::Line { i }).map_err(err)?;
                ensure(ok, || format!("line property fails at i={i} for {u}"))?;
                checked += 1;
            }
        }
    }
    Ok(checked)
}

fn hyperplane_suite(q: u32, m: usize, trials: u64) -> Result<usize, String> {
    let h = Arc::new(HammingCode::build(q, m).map_err(err)?);
    let mut runs = 0;
    // Every functional up to scale: leading nonzero entry equal to 1.
    for idx in 1..(q as u64).pow(m as u32) {
        let w = FqVector::from_rank_index(idx, q, m).symbols();
        if w.iter().find(|&&s| s != 0) != Some(&1) {
            continue;
        }
        let plane = h.order().hyperplane_points(&w).map_err(err)?;
        let off: Vec<usize> = (1..=h.n()).filter(|i| !plane.contains(i)).collect();
        let picks = if trials == 0 {
            off
        } else {
            off.into_iter().take(1).collect()
        };
        for i in picks {
            let report = lemma1_check(&h, i, &w, trials, idx).map_err(err)?;
            ensure(report.passed(), || report.to_string())?;
            runs += 1;
        }
        if trials > 0 && runs >= 3 {
            break;
        }
    }
    Ok(runs)
}

fn criterion_7() -> Outcome {
    let mut text = Vec::new();
    for (q, m) in [(2, 3), (3, 2)] {
        let runs = hyperplane_suite(q, m, 0)?;
        let words = structural_suite(q, m, None)?;
        text.push(format!("({q},{m}) exhaustive: {runs} hyperplane runs, {words} vectors"));
    }
    for (q, m) in [(2, 4), (3, 3)] {
        let runs = hyperplane_suite(q, m, 1000)?;
        let words = structural_suite(q, m, Some(1000))?;
        text.push(format!("({q},{m}) 1000 trials: {runs} hyperplane runs, {words} vectors"));
    }
    Ok(text.join("; "))
}

fn criterion_8() -> Outcome {
    for (q, n, base, exponent, value) in [(2u32, 15usize, 2u64, 3i64, "256"), (3, 13, 6, 1, "216")] {
        let b = lower_bound_count(q, n).map_err(err)?;
        // (q!)^(q^e) evaluated directly.
        let fact: u64 = (1..=q as u64).product();
        let direct = fact.pow(q.pow(exponent as u32)).to_string();
        ensure(
            b.base == base && b.exponent == exponent && b.decimal.as_deref() == Some(value) && direct == value,
            || format!("({q},{n}): {b:?}"),
        )?;
    }
    Ok("N(2,15) >= 256, N(3,13) >= 216".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("components of the length-7 example", criterion_1, 1),
        ("principal-component dimension", criterion_2, 5),
        ("sphere-packing equality", criterion_3, 60),
        ("full rank, characteristic 2", criterion_4, 5),
        ("full rank, odd characteristic", criterion_5, 120),
        ("nonlinearity", criterion_6, 10),
        ("hyperplane and incidence suites", criterion_7, 30),
        ("counting bound", criterion_8, 5),
    ];
    let mut failed = 0;
    for (k, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|msg| {
            if elapsed > Duration::from_secs(*budget) {
                Err(format!("took {elapsed:.2?}, budget {budget} s"))
            } else {
                Ok(msg)
            }
        });
        match outcome {
            Ok(msg) => println!("criterion {}: PASS {name} ({elapsed:.2?}): {msg}", k + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: FAIL {name} ({elapsed:.2?}): {msg}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
