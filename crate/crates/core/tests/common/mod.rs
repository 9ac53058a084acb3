//! Randomized corpora with independently known Jordan components.
//!
//! Each sample is `T = P·B·P⁻¹` with `B` in real block form and `P` integer
//! unimodular. The components of `B` are read off its blocks, so the oracle
//! never touches witness polynomials.

#![allow(dead_code)]

use jordan_core::matrix::Matrix;
use jordan_core::sampling::{nonzero_small_rational, rng_for, run_indexed, small_rational, unimodular};
use jordan_core::scalar::{rat, Rational};
use rand::Rng;

pub fn qm(rows: &[&[i64]]) -> Matrix<Rational> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&k| rat(k, 1)).collect()).collect()).unwrap()
}

pub fn example_t() -> Matrix<Rational> {
    qm(&[&[1, 1, 0, 0], &[-1, 1, 0, 0], &[0, 0, 2, 1], &[0, 0, 0, 2]])
}

/// Block form with its additive parts: imaginary, real and nilpotent.
#[derive(Debug, Clone)]
pub struct BlockForm {
    pub b: Matrix<Rational>,
    pub e: Matrix<Rational>,
    pub h: Matrix<Rational>,
    pub n: Matrix<Rational>,
}

#[derive(Debug, Clone)]
pub struct OracleSample {
    pub index: usize,
    pub seed: u64,
    pub t: Matrix<Rational>,
    pub e: Matrix<Rational>,
    pub h: Matrix<Rational>,
    pub n: Matrix<Rational>,
    /// Whether every eigenvalue is nonzero.
    pub invertible: bool,
}

fn put(m: &mut Matrix<Rational>, at: usize, block: &Matrix<Rational>) {
    for r in 0..block.n() {
        for c in 0..block.n() {
            m.set(at + r, at + c, block.get(r, c).clone());
        }
    }
}

/// Square-free integers used as radicands of irrational eigenvalues.
const RADICANDS: [i64; 5] = [2, 3, 5, 6, 7];

/// `2×2` block `K` with `K² = c·I` and whether `c < 0`.
fn quadratic_block(rng: &mut impl Rng) -> (Matrix<Rational>, bool) {
    let q = rat(rng.gen_range(1..=3), rng.gen_range(1..=2));
    match rng.gen_range(0..3) {
        // ±b·i with rational b
        0 => {
            let b = nonzero_small_rational(rng);
            let k = Matrix::from_rows(vec![vec![rat(0, 1), b.clone()], vec![-b, rat(0, 1)]]).unwrap();
            (k, true)
        }
        // ±i·q√d
        1 => {
            let d = rat(RADICANDS[rng.gen_range(0..RADICANDS.len())], 1);
            let k = Matrix::from_rows(vec![vec![rat(0, 1), -(d * q.clone() * q.clone())], vec![rat(1, 1), rat(0, 1)]]).unwrap();
            (k, true)
        }
        // ±q√d
        _ => {
            let d = rat(RADICANDS[rng.gen_range(0..RADICANDS.len())], 1);
            let k = Matrix::from_rows(vec![vec![rat(0, 1), d * q.clone() * q.clone()], vec![rat(1, 1), rat(0, 1)]]).unwrap();
            (k, false)
        }
    }
}

/// Random block form of dimension `n`. With `semisimple`, every Jordan chain
/// has length one; with `invertible`, no eigenvalue is zero.
pub fn block_form(rng: &mut impl Rng, n: usize, semisimple: bool, invertible: bool) -> BlockForm {
    let zero = || Matrix::<Rational>::zeros(n);
    let (mut b, mut e, mut h, mut nil) = (zero(), zero(), zero(), zero());
    let mut at = 0;
    while at < n {
        let room = n - at;
        let pair = room >= 2 && rng.gen_bool(0.5);
        if pair {
            let max_chain = if semisimple { 1 } else { room / 2 };
            let k = rng.gen_range(1..=max_chain);
            let (kb, imaginary) = quadratic_block(rng);
            let a = small_rational(rng);
            let ai = Matrix::scalar(2, a);
            for j in 0..k {
                let pos = at + 2 * j;
                put(&mut b, pos, &(&ai + &kb));
                if imaginary {
                    put(&mut e, pos, &kb);
                    put(&mut h, pos, &ai);
                } else {
                    put(&mut h, pos, &(&ai + &kb));
                }
                if j + 1 < k {
                    for d in 0..2 {
                        b.set(pos + d, pos + 2 + d, rat(1, 1));
                        nil.set(pos + d, pos + 2 + d, rat(1, 1));
                    }
                }
            }
            at += 2 * k;
        } else {
            let max_chain = if semisimple { 1 } else { room };
            let k = rng.gen_range(1..=max_chain);
            let lambda = if invertible { nonzero_small_rational(rng) } else { small_rational(rng) };
            for j in 0..k {
                b.set(at + j, at + j, lambda.clone());
                h.set(at + j, at + j, lambda.clone());
                if j + 1 < k {
                    b.set(at + j, at + j + 1, rat(1, 1));
                    nil.set(at + j, at + j + 1, rat(1, 1));
                }
            }
            at += k;
        }
    }
    BlockForm { b, e, h, n: nil }
}

fn has_zero_eigenvalue(f: &BlockForm) -> bool {
    f.b.det() == rat(0, 1)
}

/// `P·B·P⁻¹` for a random unimodular `P`.
pub fn conjugated(rng: &mut impl Rng, f: &BlockForm) -> [Matrix<Rational>; 4] {
    let n = f.b.n();
    let p = unimodular(rng, n, 2 * n);
    let inv = p.inverse().unwrap();
    let c = |m: &Matrix<Rational>| &(&p * m) * &inv;
    [c(&f.b), c(&f.e), c(&f.h), c(&f.n)]
}

pub fn oracle_sample(index: usize, seed: u64, max_n: usize) -> OracleSample {
    let mut rng = rng_for(seed);
    let n = rng.gen_range(1..=max_n);
    let form = block_form(&mut rng, n, false, false);
    let invertible = !has_zero_eigenvalue(&form);
    let [t, e, h, nil] = conjugated(&mut rng, &form);
    OracleSample { index, seed, t, e, h, n: nil, invertible }
}

pub fn oracle_corpus(base: u64, count: usize, max_n: usize) -> Vec<OracleSample> {
    run_indexed(base, count, |i, seed| oracle_sample(i, seed, max_n))
}

/// Invertible semisimple `P·S·P⁻¹` with `n ≤ max_n`.
pub fn semisimple_sample(seed: u64, max_n: usize) -> Matrix<Rational> {
    let mut rng = rng_for(seed);
    let n = rng.gen_range(1..=max_n);
    let form = block_form(&mut rng, n, true, true);
    let [t, ..] = conjugated(&mut rng, &form);
    t
}

pub const CORPUS_SEED: u64 = 20_240_601;
pub const CORPUS_SIZE: usize = 200;
pub const CORPUS_MAX_N: usize = 6;
