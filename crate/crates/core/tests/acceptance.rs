//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::time::{Duration, Instant};

use common::{oracle_corpus, example_t, qm, semisimple_sample, OracleSample, CORPUS_MAX_N, CORPUS_SEED, CORPUS_SIZE};
use jordan_core::decompose::{
    additive_jordan_exact, multiplicative_jordan_exact, DecomposeOptions, verify_additive, verify_multiplicative,
};
use jordan_core::error::JordanError;
use jordan_core::lie::{ad_group_spectrum_check, ad_spectrum_check, closure_check_algebra, closure_check_group, LieStructure};
use jordan_core::matrix::{minimal_polynomial, Matrix};
use jordan_core::poly::Poly;
use jordan_core::projectors::{build_projectors, verify_projector_identities};
use jordan_core::report::VerificationReport;
use jordan_core::sampling::{algebra_element, group_element, rng_for, run_indexed};
use jordan_core::scalar::{rat, Field, GaussianRadical, Radical, Rational};
use jordan_core::spectral::{factor_exact, Mode};
use num_complex::Complex;

const VERIFY_TOL: f64 = 1e-9;

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Outcome { passed, detail: detail.into() }
    }
}

fn within(limit: Duration, elapsed: Duration) -> (bool, String) {
    (elapsed < limit, format!("{:.2}s of {}s", elapsed.as_secs_f64(), limit.as_secs()))
}

fn failures_detail(label: &str, failed: &[String], total: usize) -> String {
    let shown: Vec<&String> = failed.iter().take(5).collect();
    if failed.is_empty() {
        format!("{total} {label}, 0 failures")
    } else {
        format!("{total} {label}, {} failures: {shown:?}", failed.len())
    }
}

fn qp(c: &[(i64, i64)]) -> Poly<Rational> {
    Poly::new(c.iter().map(|&(n, d)| rat(n, d)).collect())
}

fn radical_poly(c: &[(i64, i64)]) -> Poly<Radical> {
    qp(c).map(|q| Radical::from_rational(q.clone()))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let t = example_t();
    let mut bad = Vec::new();
    let pt = minimal_polynomial(&t);
    if pt != qp(&[(8, 1), (-16, 1), (14, 1), (-6, 1), (1, 1)]) {
        bad.push("p_T");
    }
    let ps = build_projectors(&factor_exact(&pt).unwrap()).unwrap();
    let g = |re: i64, im: i64| GaussianRadical::new(Radical::from_rational(rat(re, 1)), Radical::from_rational(rat(im, 1)));
    let lin = |c: GaussianRadical| Poly::linear(&c);
    let pi1 = (&lin(g(1, -1)) * &lin(g(2, 0)).pow(2)).scale(&GaussianRadical::from_rational(&rat(1, 4)));
    if ps.pair_projectors != vec![pi1] {
        bad.push("pi_1");
    }
    let pi2 = (&qp(&[(-3, 1), (1, 1)]) * &qp(&[(2, 1), (-2, 1), (1, 1)])).scale(&rat(-1, 2));
    if ps.real_projectors != vec![pi2.map(|q| Radical::from_rational(q.clone()))] {
        bad.push("pi_2");
    }
    let add = additive_jordan_exact(&t).unwrap();
    if add.witness_e != radical_poly(&[(-2, 1), (2, 1), (-1, 2)]) {
        bad.push("E(x)");
    }
    if add.witness_h != radical_poly(&[(4, 1), (-4, 1), (5, 2), (-1, 2)]) {
        bad.push("H(x)");
    }
    let mul = multiplicative_jordan_exact(&t).unwrap();
    if mul.witness_u != radical_poly(&[(0, 1), (3, 2), (-1, 1), (1, 4)]) {
        bad.push("u(x)");
    }
    let s2 = Radical::sqrt_rational(&rat(2, 1)).unwrap();
    let c = |a: i64, b: i64| Radical::from_rational(rat(a, 1)) + s2.scale(&rat(b, 1));
    let lead = c(-2, 1);
    let e_want = Poly::new(vec![c(-4, 2), c(4, -4), c(-4, 1), c(1, 0)]).scale(&(lead.clone() * Radical::from_rational(rat(1, 4))));
    let h_want = Poly::new(vec![c(-8, -2), c(8, 0), c(-5, 0), c(1, 0)]).scale(&(lead * Radical::from_rational(rat(1, 2))));
    if mul.witness_e != e_want {
        bad.push("e(x)");
    }
    if mul.witness_h != h_want {
        bad.push("h(x)");
    }
    // numeric rendering of the √2 forms, coefficientwise
    let close = |a: &Poly<Radical>, b: &Poly<Radical>| (0..4).all(|k| (a.coeff(k).to_f64() - b.coeff(k).to_f64()).abs() <= 1e-12);
    if !close(&mul.witness_e, &e_want) || !close(&mul.witness_h, &h_want) {
        bad.push("numeric rendering");
    }
    let (fast, timing) = within(Duration::from_secs(1), start.elapsed());
    Outcome::new(bad.is_empty() && fast, format!("mismatches {bad:?}; {timing}"))
}

fn corpus() -> Vec<OracleSample> {
    oracle_corpus(CORPUS_SEED, CORPUS_SIZE, CORPUS_MAX_N)
}

fn label(s: &OracleSample) -> String {
    format!("#{} seed {} n={}", s.index, s.seed, s.t.n())
}

fn criterion_2(corpus: &[OracleSample]) -> Outcome {
    let start = Instant::now();
    let results = run_indexed(0, corpus.len(), |i, _| {
        let s = &corpus[i];
        let ok = factor_exact(&minimal_polynomial(&s.t))
            .and_then(|spec| build_projectors(&spec))
            .and_then(|ps| verify_projector_identities(&ps, &s.t, 0.0))
            .map(|r| r.passed());
        match ok {
            Ok(true) => None,
            Ok(false) => Some(label(s)),
            Err(e) => Some(format!("{} error {e}", label(s))),
        }
    });
    let failed: Vec<String> = results.into_iter().flatten().collect();
    let (fast, timing) = within(Duration::from_secs(60), start.elapsed());
    Outcome::new(failed.is_empty() && fast, format!("{}; {timing}", failures_detail("matrices", &failed, corpus.len())))
}

fn criterion_3(corpus: &[OracleSample]) -> Outcome {
    let results = run_indexed(0, corpus.len(), |i, _| {
        let s = &corpus[i];
        match additive_jordan_exact(&s.t) {
            Ok(d) if d.e == s.e.lift() && d.h == s.h.lift() && d.n == s.n.lift() => None,
            Ok(_) => Some(label(s)),
            Err(e) => Some(format!("{} error {e}", label(s))),
        }
    });
    let failed: Vec<String> = results.into_iter().flatten().collect();
    Outcome::new(failed.is_empty(), failures_detail("matrices", &failed, corpus.len()))
}

fn unique_checks_pass(r: &VerificationReport) -> bool {
    let probes: Vec<_> = r.checks.iter().filter(|c| c.name.starts_with("unique.")).collect();
    !probes.is_empty() && probes.iter().all(|c| c.passed)
}

/// Re-decomposing a rational component must return it with trivial complements.
fn redecompose_additive(s: &OracleSample) -> bool {
    let zero = Matrix::<Radical>::zeros(s.t.n());
    let ok = |m: &Matrix<Rational>, slot: usize| {
        let Ok(d) = additive_jordan_exact(m) else { return false };
        let parts = [&d.e, &d.h, &d.n];
        (0..3).all(|k| if k == slot { *parts[k] == m.lift() } else { *parts[k] == zero })
    };
    ok(&s.e, 0) && ok(&s.h, 1) && ok(&s.n, 2)
}

fn criterion_4(corpus: &[OracleSample]) -> Outcome {
    let results = run_indexed(0, corpus.len(), |i, _| {
        let s = &corpus[i];
        let add = additive_jordan_exact(&s.t).and_then(|d| verify_additive(&s.t, &d, VERIFY_TOL));
        let add_ok = matches!(&add, Ok(r) if unique_checks_pass(r)) && redecompose_additive(s);
        let mul_ok = !s.invertible
            || matches!(
                multiplicative_jordan_exact(&s.t).and_then(|d| verify_multiplicative(&s.t, &d, VERIFY_TOL)),
                Ok(r) if unique_checks_pass(&r)
            );
        (!(add_ok && mul_ok)).then(|| format!("{} additive {add_ok} multiplicative {mul_ok}", label(s)))
    });
    let failed: Vec<String> = results.into_iter().flatten().collect();
    Outcome::new(failed.is_empty(), failures_detail("matrices", &failed, corpus.len()))
}

fn criterion_5(corpus: &[OracleSample]) -> Outcome {
    let invertible: Vec<&OracleSample> = corpus.iter().filter(|s| s.invertible).collect();
    let results = run_indexed(0, invertible.len(), |i, _| {
        let s = invertible[i];
        let n = s.t.n();
        match multiplicative_jordan_exact(&s.t) {
            Ok(d) => {
                let exact = &(&d.e * &d.h) * &d.u == s.t.lift();
                let gap = (d.h.to_nalgebra_real() - d.log_h.exp_numeric(n)).norm();
                let ok = exact && gap <= 1e-9 * n as f64;
                (!ok).then(|| format!("{} reconstruction {exact} exp gap {gap:.3e}", label(s)))
            }
            Err(e) => Some(format!("{} error {e}", label(s))),
        }
    });
    let failed: Vec<String> = results.into_iter().flatten().collect();
    Outcome::new(failed.is_empty(), failures_detail("invertible matrices", &failed, invertible.len()))
}

const SPECTRUM_SEED: u64 = 6_000;
const SPECTRUM_SAMPLES: usize = 50;

fn criterion_6() -> Outcome {
    let results = run_indexed(SPECTRUM_SEED, SPECTRUM_SAMPLES, |i, seed| {
        let s = semisimple_sample(seed, 4);
        let ad = ad_spectrum_check(&s, 1e-8);
        let big = ad_group_spectrum_check(&s, 1e-8);
        let ok = matches!(&ad, Ok(r) if r.report.passed()) && matches!(&big, Ok(r) if r.report.passed());
        let exact = matches!((&ad, &big), (Ok(a), Ok(b)) if a.mode == Mode::Exact && b.mode == Mode::Exact);
        ((!ok).then(|| format!("#{i} seed {seed}: ad {:?} Ad {:?}", ad.map(|r| r.report.passed()), big.map(|r| r.report.passed()))), exact)
    });
    let exact = results.iter().filter(|r| r.1).count();
    let failed: Vec<String> = results.into_iter().filter_map(|r| r.0).collect();
    Outcome::new(
        failed.is_empty(),
        format!("{}; {exact} compared exactly", failures_detail("semisimple matrices", &failed, SPECTRUM_SAMPLES)),
    )
}

const CLOSURE_SEED: u64 = 7_000;
const CLOSURE_SAMPLES: usize = 100;

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut failed = Vec::new();
    for l in [LieStructure::sl(3), LieStructure::so(2, 1), LieStructure::sp(4)].map(Result::unwrap) {
        let results = run_indexed(CLOSURE_SEED, CLOSURE_SAMPLES, |i, seed| {
            let x = algebra_element(&l, &mut rng_for(seed));
            match closure_check_algebra(&x, &l, &DecomposeOptions::default(), VERIFY_TOL) {
                Ok(r) if r.mode == Mode::Exact && r.report.passed() => None,
                Ok(r) => Some(format!("{l} #{i} seed {seed} mode {:?} failures {:?}", r.mode, r.report.failures().map(|c| &c.name).collect::<Vec<_>>())),
                Err(e) => Some(format!("{l} #{i} seed {seed} error {e}")),
            }
        });
        failed.extend(results.into_iter().flatten());
    }
    let (fast, timing) = within(Duration::from_secs(120), start.elapsed());
    Outcome::new(failed.is_empty() && fast, format!("{}; {timing}", failures_detail("algebra elements", &failed, 3 * CLOSURE_SAMPLES)))
}

fn criterion_8() -> Outcome {
    let mut failed = Vec::new();
    let mut numeric = 0;
    let mut worst: f64 = 0.0;
    for l in [LieStructure::sl(2), LieStructure::sp(4), LieStructure::so(2, 1)].map(Result::unwrap) {
        let results = run_indexed(CLOSURE_SEED, CLOSURE_SAMPLES, |i, seed| {
            let g = group_element(&l, &mut rng_for(seed), 3);
            match closure_check_group(&g, &l, &DecomposeOptions::default(), VERIFY_TOL) {
                Ok(r) => {
                    let note = (!r.report.passed()).then(|| {
                        format!("{l} #{i} seed {seed} failures {:?}", r.report.failures().map(|c| &c.name).collect::<Vec<_>>())
                    });
                    (note, r.mode == Mode::Numeric, r.report.max_residual())
                }
                Err(e) => (Some(format!("{l} #{i} seed {seed} error {e}")), false, 0.0),
            }
        });
        for (note, num, res) in results {
            failed.extend(note);
            numeric += num as usize;
            worst = worst.max(res);
        }
    }
    Outcome::new(
        failed.is_empty(),
        format!(
            "{}; {numeric} numeric, max residual {worst:.2e}",
            failures_detail("group elements", &failed, 3 * CLOSURE_SAMPLES)
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut bad = Vec::new();
    let t = example_t();
    // scaled projector
    let mut ps = build_projectors(&factor_exact(&minimal_polynomial(&t)).unwrap()).unwrap();
    ps.pair_projectors[0] = ps.pair_projectors[0].scale(&Complex::new(Radical::from_rational(rat(2, 1)), Radical::from_rational(rat(0, 1))));
    let r = verify_projector_identities(&ps, &t, 0.0).unwrap();
    if r.get("idempotence").unwrap().passed || r.passed() {
        bad.push("scaled projector accepted");
    }
    // swapped E/H
    let x = Matrix::block_diag(&[qm(&[&[0, 1], &[-1, 0]]), qm(&[&[1]])]);
    let mut d = additive_jordan_exact(&x).unwrap();
    std::mem::swap(&mut d.e, &mut d.h);
    let r = verify_additive(&x, &d, VERIFY_TOL).unwrap();
    if r.get("class.e_elliptic").unwrap().passed || r.get("class.h_hyperbolic").unwrap().passed {
        bad.push("swapped components accepted");
    }
    // singular multiplicative request
    match multiplicative_jordan_exact(&Matrix::zeros(2)) {
        Err(e @ JordanError::NotInvertible) if e.exit_code() == 3 => {}
        other => {
            bad.push("singular input not rejected with exit code 3");
            eprintln!("singular control: {other:?}");
        }
    }
    Outcome::new(bad.is_empty(), format!("controls not triggered: {bad:?}"))
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let corpus = corpus();
    let criteria: Vec<Criterion> = vec![
        ("worked example golden witnesses", Box::new(criterion_1)),
        ("projector identities on the block corpus", Box::new(|| criterion_2(&corpus))),
        ("additive components equal the block oracle", Box::new(|| criterion_3(&corpus))),
        ("uniqueness probes", Box::new(|| criterion_4(&corpus))),
        ("multiplicative reconstruction and exp(log h)", Box::new(|| criterion_5(&corpus))),
        ("ad/Ad eigenvalue relations", Box::new(criterion_6)),
        ("algebra closure sl(3), so(2,1), sp(4)", Box::new(criterion_7)),
        ("group closure SL(2), Sp(4), SO(2,1)+", Box::new(criterion_8)),
        ("negative controls", Box::new(criterion_9)),
    ];
    let mut all = true;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        all &= out.passed;
        println!(
            "{} criterion {}: {name} ({}; {:.2}s)",
            if out.passed { "PASS" } else { "FAIL" },
            k + 1,
            out.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if !all {
        std::process::exit(1);
    }
}
