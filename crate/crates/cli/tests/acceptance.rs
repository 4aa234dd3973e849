//! Acceptance suite: one check per criterion, each printing a PASS/FAIL line.
//! Runs as a plain binary (`harness = false`) so the lines are always shown.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use numrad_core::bounds::{
    bound_classical, bound_th2, bound_th3, bound_th4, bound_th5, coefficients, optimize_lambda,
    optimize_lambda_numeric, refinement_chain, BoundInputs, Boundary, SingleOperator,
};
use numrad_core::calculus::operator_norm;
use numrad_core::eigen::hermitian_eigen;
use numrad_core::harness::{generate_ensemble, parse_report_json, Ensemble, EnsembleConfig};
use numrad_core::lemmas::{
    convex_norm_check, jensen_operator_check, mccarthy_check, mixed_schwarz_check, JENSEN_FUNCTIONS,
};
use numrad_core::radius::{numerical_radius, numerical_radius_oracle, DEFAULT_TOL};
use numrad_core::scalar::{
    buzano, buzano_power, buzano_refined, buzano_refined_two, cs_refinement_gen, cs_refinement_two, young_amgm,
    InequalityRecord,
};
use numrad_core::{BoundId, BoundMode, BoundParams, ChainId, Complex64, ComplexMatrix, ComplexVector};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn rand_vector(rng: &mut impl Rng, dim: usize) -> ComplexVector {
    let v = (0..dim)
        .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
        .collect();
    ComplexVector::new(v).unwrap()
}

fn rand_unit(rng: &mut impl Rng, dim: usize) -> ComplexVector {
    loop {
        if let Some(u) = rand_vector(rng, dim).normalized() {
            return u;
        }
    }
}

fn rand_matrix(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim, |_, _| {
        Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    })
}

fn rand_psd(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    let a = rand_matrix(rng, dim);
    &a.adjoint() * &a
}

fn rand_hermitian(rng: &mut impl Rng, dim: usize) -> ComplexMatrix {
    rand_matrix(rng, dim).hermitian_part()
}

fn ginibre(dim: usize, trials: usize, seed: u64) -> Vec<ComplexMatrix> {
    generate_ensemble(&EnsembleConfig::new(Ensemble::Ginibre, dim, trials, seed).unwrap()).unwrap()
}

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_numrad")
}

fn run_verify(args: &[&str], out: &Path) -> Result<std::process::Output, String> {
    Command::new(binary())
        .arg("verify")
        .args(args)
        .arg("--out")
        .arg(out)
        .args(["--format", "json"])
        .output()
        .map_err(|e| format!("spawning numrad: {e}"))
}

fn engine_correctness() -> Outcome {
    let start = Instant::now();
    let w = numerical_radius(&ComplexMatrix::shift(2), DEFAULT_TOL).unwrap();
    ensure((w - 0.5).abs() <= 1e-8, || format!("w(J) = {w}"))?;

    let mut worst_gue = 0.0f64;
    for k in 0..50 {
        let dim = 2 + k % 7;
        let h = EnsembleConfig::new(Ensemble::Gue, dim, 1, 1000 + k as u64)
            .unwrap()
            .sample(0)
            .unwrap();
        let spectral = hermitian_eigen(&h).unwrap().spectral_radius();
        let scale = operator_norm(&h).unwrap().max(1.0);
        // the plain matrix and a phase rotation, which is normal but not
        // Hermitian and so goes through the full theta sweep
        let rotated = h.scale(Complex64::from_polar(1.0, 0.7 + k as f64));
        for m in [&h, &rotated] {
            let w = numerical_radius(m, DEFAULT_TOL).unwrap();
            worst_gue = worst_gue.max((w - spectral).abs() / scale);
        }
    }
    ensure(worst_gue <= 1e-8, || format!("GUE deviation {worst_gue:e}"))?;

    let mut worst_lower = f64::INFINITY;
    let mut worst_oracle = f64::NEG_INFINITY;
    for (k, t) in ginibre(5, 200, 7).iter().enumerate() {
        let w = numerical_radius(t, DEFAULT_TOL).unwrap();
        let norm = operator_norm(t).unwrap();
        let scale = norm.max(1.0);
        ensure(w >= norm / 2.0 - 1e-8 * scale && w <= norm + 1e-8 * scale, || {
            format!("trial {k}: w = {w}, ||T|| = {norm}")
        })?;
        worst_lower = worst_lower.min(w / norm);
        let oracle = numerical_radius_oracle(t, 8, k as u64);
        worst_oracle = worst_oracle.max((oracle - w) / scale);
    }
    ensure(worst_oracle <= 1e-8, || {
        format!("oracle exceeds engine by {worst_oracle:e}")
    })?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "GUE max dev {worst_gue:.1e}, min w/||T|| {worst_lower:.3}, max oracle-engine {worst_oracle:.1e}, {elapsed:.1?}"
    ))
}

fn scalar_fuzz() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0usize;
    for i in 0..100_000 {
        let dim = rng.random_range(2..=6);
        let x = rand_vector(&mut rng, dim);
        // every tenth tuple sits on an equality configuration
        let y = if i % 10 == 0 {
            x.scale(Complex64::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0)))
        } else {
            rand_vector(&mut rng, dim)
        };
        let e = if i % 10 == 5 {
            x.normalized().unwrap_or_else(|| rand_unit(&mut rng, dim))
        } else {
            rand_unit(&mut rng, dim)
        };
        let lambda = 10f64.powf(rng.random_range(-3.0..3.0));
        let n = rng.random_range(1..=3);
        let (a, b, t) = (
            rng.random_range(0.0..10.0),
            rng.random_range(0.0..10.0),
            rng.random_range(0.0..=1.0),
        );
        let records: [InequalityRecord; 7] = [
            cs_refinement_gen(&x, &y, lambda).unwrap(),
            cs_refinement_two(&x, &y, lambda).unwrap(),
            buzano(&x, &y, &e).unwrap(),
            buzano_refined(&x, &y, &e, lambda).unwrap(),
            buzano_refined_two(&x, &y, &e, lambda).unwrap(),
            buzano_power(&x, &y, &e, lambda, n).unwrap(),
            young_amgm(a, b, t).unwrap(),
        ];
        for r in &records {
            ensure(r.holds && r.outer_holds(), || format!("tuple {i}: {r:?}"))?;
            checked += 1;
        }
    }
    let x = ComplexVector::from_real(&[1.0, 0.0]);
    let y = ComplexVector::from_real(&[0.0, 1.0]);
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let eq = buzano(&x, &y, &ComplexVector::from_real(&[h, h])).unwrap();
    ensure(eq.slack.abs() <= 1e-12, || {
        format!("Buzano equality slack {}", eq.slack)
    })?;
    Ok(format!("{checked} records hold, equality slack {:.1e}", eq.slack))
}

fn lemma_fuzz() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for i in 0..10_000 {
        let dim = rng.random_range(2..=6);
        let r = rng.random_range(1.0..=4.0);
        let alpha = rng.random_range(0.05..0.95);
        let x = rand_unit(&mut rng, dim);
        let y = rand_vector(&mut rng, dim);
        let a = rand_psd(&mut rng, dim);
        let b = rand_psd(&mut rng, dim);
        let t = rand_matrix(&mut rng, dim);
        let h = rand_hermitian(&mut rng, dim);
        let f = JENSEN_FUNCTIONS[i % JENSEN_FUNCTIONS.len()];
        let records = [
            mccarthy_check(&a, &x, r).map_err(|e| e.to_string())?,
            convex_norm_check(&a, &b, r).map_err(|e| e.to_string())?,
            mixed_schwarz_check(&t, &x, &y, alpha).map_err(|e| e.to_string())?,
            jensen_operator_check(&h, &x, f).map_err(|e| e.to_string())?,
        ];
        for rec in &records {
            ensure(rec.holds, || format!("instance {i}: {rec:?}"))?;
        }
    }
    Ok("4 x 10000 instances, zero violations".into())
}

fn soundness_sweep(dir: &Path) -> Outcome {
    let start = Instant::now();
    let mut rows = 0;
    for e in Ensemble::ALL {
        for dim in [2, 3, 5, 8] {
            let out = dir.join(format!("sweep_{e}_{dim}.json"));
            let dim_s = dim.to_string();
            let res = run_verify(
                &[
                    "--ensemble",
                    e.as_str(),
                    "--dim",
                    &dim_s,
                    "--trials",
                    "50",
                    "--seed",
                    "42",
                ],
                &out,
            )?;
            let report = parse_report_json(&std::fs::read_to_string(&out).map_err(|err| err.to_string())?)
                .map_err(|err| err.to_string())?;
            ensure(report.violations == 0 && res.status.code() == Some(0), || {
                let bad: Vec<_> = report.bound_rows.iter().filter(|r| !r.holds).take(3).collect();
                format!(
                    "{e} dim {dim}: {} violations, exit {:?}, e.g. {bad:?}",
                    report.violations,
                    res.status.code()
                )
            })?;
            let modes = report
                .bound_rows
                .iter()
                .filter(|r| r.mode == BoundMode::InequalityCheck)
                .count();
            ensure(modes > 0, || "no inequality-check rows".into())?;
            rows += report.bound_rows.len() + report.chain_rows.len();
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(60), || format!("took {elapsed:?}"))?;
    Ok(format!("24 configurations, {rows} rows, 0 violations, {elapsed:.1?}"))
}

fn chains() -> Outcome {
    let ms = ginibre(4, 101, 5);
    let mut evaluated = 0;
    for id in ChainId::ALL {
        for k in 0..100 {
            for lambda in [0.01, 0.5, 1.0, 2.0, 100.0] {
                let params = BoundParams::default().with_lambda(lambda);
                let c = refinement_chain(&ms[k], Some(&ms[k + 1]), id.as_str(), &params).unwrap();
                ensure(c.holds, || format!("{id} instance {k} lambda {lambda}: {:?}", c.links))?;
                evaluated += 1;
            }
        }
    }
    Ok(format!("{evaluated} chain evaluations hold"))
}

fn equality_regressions() -> Outcome {
    let i2 = ComplexMatrix::identity(2);
    let j = ComplexMatrix::shift(2);
    let near = |what: &str, v: f64, target: f64, tol: f64| {
        ensure((v - target).abs() <= tol, || format!("{what}: {v} vs {target}"))
    };
    for lambda in [0.01, 1.0, 100.0] {
        near(
            "th2(I)",
            bound_th2(&i2, &i2, 1.0, lambda).unwrap()[0].rhs_value,
            1.0,
            1e-10,
        )?;
        near("th3(I)", bound_th3(&i2, 0.5, lambda).unwrap()[0].rhs_value, 1.0, 1e-10)?;
        near("th4(I)", bound_th4(&i2, lambda).unwrap().rhs_value, 1.0, 1e-10)?;
        near("th5(I)", bound_th5(&i2, lambda).unwrap()[0].rhs_value, 1.0, 1e-10)?;
    }
    let k = bound_classical(&j, "kittaneh", 1.0).unwrap();
    near("kittaneh(J)", k.rhs_value, 0.5, 1e-10)?;
    near("kittaneh(J) slack", k.slack, 0.0, 1e-8)?;
    let a = bound_classical(&j, "abu_omar", 1.0).unwrap();
    near("abu_omar(J)", a.rhs_value, 0.25, 1e-10)?;
    near("abu_omar(J) slack", a.slack, 0.0, 1e-8)?;
    let t3 = &bound_th3(&j, 0.5, 0.5).unwrap()[0];
    near("th3(J)", t3.rhs_value, 0.25, 1e-10)?;
    near("th3(J) slack", t3.slack, 0.0, 1e-8)?;
    let t5 = &bound_th5(&j, 1.0).unwrap()[0];
    near("th5(J)", t5.rhs_value, 1.0 / 16.0, 1e-10)?;
    near("th5(J) slack", t5.slack, 0.0, 1e-8)?;
    let t4 = bound_th4(&j, 1e-9).unwrap();
    near("th4(J, lambda -> 0)", t4.rhs_value, 1.0 / 16.0, 1e-6)?;
    Ok("identity saturates th2-th5, Jordan saturates kittaneh, abu_omar, th3, th5; th4 -> 1/16".into())
}

fn coefficient_specializations() -> Outcome {
    let at = |id: BoundId, params: BoundParams| -> Vec<f64> {
        coefficients(id, &params)
            .unwrap()
            .iter()
            .map(|t| t.coefficient(params.lambda))
            .collect()
    };
    let close = |got: &[f64], want: &[f64], what: &str| {
        ensure(
            got.len() == want.len() && got.iter().zip(want).all(|(a, b)| (a - b).abs() <= 1e-12),
            || format!("{what}: {got:?} vs {want:?}"),
        )
    };
    // linear term first, then the two fixed terms
    let th3 = at(
        BoundId::MixedSchwarzRefinement,
        BoundParams::default().with_alpha(0.5).with_lambda(0.5),
    );
    close(&[th3[1], th3[2], th3[0]], &[1.0 / 12.0, 1.0 / 6.0, 1.0 / 3.0], "th3")?;
    close(
        &at(BoundId::BinomialFirstOrder, BoundParams::default()),
        &[3.0 / 16.0, 5.0 / 16.0],
        "cor_bomi",
    )?;
    for t in [0.25, 0.5, 0.75] {
        let got = at(
            BoundId::ProductRefinement,
            BoundParams::default().with_r(1.0).with_lambda(t),
        );
        let want = [1.0 / (2.0 * (t + 1.0)), t / (4.0 * (t + 1.0)), t / (2.0 * (t + 1.0))];
        close(&got, &want, &format!("th2 at t = {t}"))?;
    }
    // absorbing w(|S|^2|T|^2) <= ||(|T|^4 + |S|^4)|| / 2 at lambda = 1/2
    let th2 = at(
        BoundId::ProductRefinement,
        BoundParams::default().with_r(1.0).with_lambda(0.5),
    );
    close(
        &[th2[0], th2[1] + 0.5 * th2[2]],
        &[1.0 / 3.0, 1.0 / 6.0],
        "th2 absorbed",
    )?;
    Ok("th3 (1/12, 1/6, 1/3), cor_bomi (3/16, 5/16), th2 termwise and absorbed (1/3, 1/6)".into())
}

fn optimizer_cross_validation() -> Outcome {
    let mut worst = 0.0f64;
    for t in ginibre(4, 50, 9) {
        let op = SingleOperator::new(t).unwrap();
        let inputs = BoundInputs::single(&op);
        for id in [
            BoundId::BuzanoRefinement,
            BoundId::BinomialRefinement,
            BoundId::BinomialFirstOrder,
        ] {
            let form = inputs.form(id, &BoundParams::default()).unwrap();
            let closed = optimize_lambda(&form, BoundMode::ExplicitCertificate).unwrap();
            let numeric = optimize_lambda_numeric(&form, BoundMode::ExplicitCertificate).unwrap();
            let gap = (closed.infimum - numeric.infimum).abs() / closed.infimum.abs().max(1.0);
            worst = worst.max(gap);
            ensure(gap <= 1e-6, || {
                format!("{id}: closed {} numeric {}", closed.infimum, numeric.infimum)
            })?;
        }
    }
    let j = SingleOperator::new(ComplexMatrix::shift(2)).unwrap();
    let form = BoundInputs::single(&j)
        .form(BoundId::BuzanoRefinement, &BoundParams::default())
        .unwrap();
    let opt = optimize_lambda(&form, BoundMode::ExplicitCertificate).unwrap();
    ensure(
        opt.boundary == Boundary::ToZero && (opt.infimum - 1.0 / 16.0).abs() <= 1e-12,
        || format!("J/th4: {opt:?}"),
    )?;
    Ok(format!(
        "max relative gap {worst:.1e}; J/th4 infimum 1/16 at lambda -> 0"
    ))
}

fn determinism(dir: &Path) -> Outcome {
    let args = ["--ensemble", "ginibre", "--dim", "4", "--trials", "12", "--seed", "42"];
    let (a, b, c) = (dir.join("a.json"), dir.join("b.json"), dir.join("c.json"));
    run_verify(&args, &a)?;
    run_verify(&args, &b)?;
    let mut parallel = args.to_vec();
    parallel.push("--parallel");
    run_verify(&parallel, &c)?;
    let read = |p: &Path| std::fs::read(p).map_err(|e| e.to_string());
    let (ra, rb, rc) = (read(&a)?, read(&b)?, read(&c)?);
    ensure(!ra.is_empty() && ra == rb, || "serial runs differ".into())?;
    ensure(ra == rc, || "parallel run differs from serial".into())?;
    Ok(format!(
        "{} bytes identical across two serial runs and one parallel run",
        ra.len()
    ))
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let criteria: Vec<Criterion> = vec![
        ("1 engine correctness", Box::new(engine_correctness)),
        ("2 scalar fuzz", Box::new(scalar_fuzz)),
        ("3 operator-lemma fuzz", Box::new(lemma_fuzz)),
        ("4 bound soundness sweep", Box::new(|| soundness_sweep(dir.path()))),
        ("5 refinement chains", Box::new(chains)),
        ("6 equality regressions", Box::new(equality_regressions)),
        ("7 coefficient specializations", Box::new(coefficient_specializations)),
        ("8 optimizer cross-validation", Box::new(optimizer_cross_validation)),
        ("9 determinism", Box::new(|| determinism(dir.path()))),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        match check() {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(detail) => {
                failed += 1;
                println!("criterion {name}: FAIL ({detail})");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
