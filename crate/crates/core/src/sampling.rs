//! Seeded generators for randomized corpora.
//!
//! Sample `i` of a run with base seed `b` is drawn from `ChaCha8Rng` seeded
//! with `b + i`, so any sample can be replayed on its own.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::lie::{Family, LieStructure};
use crate::matrix::Matrix;
use crate::scalar::{rat, Rational};

pub fn sample_seed(base: u64, index: usize) -> u64 {
    base.wrapping_add(index as u64)
}

pub fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Evaluate `f(index, seed)` for every sample in parallel, returned in index order.
pub fn run_indexed<T: Send>(base: u64, count: usize, f: impl Fn(usize, u64) -> T + Sync) -> Vec<T> {
    (0..count)
        .into_par_iter()
        .map(|i| f(i, sample_seed(base, i)))
        .collect()
}

/// `k/d` with `|k| ≤ 4`, `d ∈ {1, 2, 3}`.
pub fn small_rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

pub fn nonzero_small_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let q = small_rational(rng);
        if q != rat(0, 1) {
            return q;
        }
    }
}

/// `I + c·E_ij`, `i ≠ j`.
pub fn transvection(n: usize, i: usize, j: usize, c: Rational) -> Matrix<Rational> {
    let mut m = Matrix::identity(n);
    m.set(i, j, c);
    m
}

fn random_pair(rng: &mut impl Rng, n: usize) -> (usize, usize) {
    let i = rng.gen_range(0..n);
    let mut j = rng.gen_range(0..n - 1);
    if j >= i {
        j += 1;
    }
    (i, j)
}

/// Product of `factors` random integer transvections and a signed
/// permutation: an integer matrix with determinant ±1.
pub fn unimodular(rng: &mut impl Rng, n: usize, factors: usize) -> Matrix<Rational> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut m = Matrix::zeros(n);
    for (r, &c) in perm.iter().enumerate() {
        m.set(r, c, rat(if rng.gen_bool(0.5) { 1 } else { -1 }, 1));
    }
    if n == 1 {
        return m;
    }
    for _ in 0..factors {
        let (i, j) = random_pair(rng, n);
        let c = rat(rng.gen_range(-2..=2), 1);
        m = &m * &transvection(n, i, j, c);
    }
    m
}

/// Block upper-triangular matrix whose diagonal blocks have size at most two,
/// so every eigenvalue is at worst quadratic over ℚ.
fn quadratic_triangular(rng: &mut impl Rng, n: usize) -> Matrix<Rational> {
    let mut m = Matrix::zeros(n);
    let mut i = 0;
    while i < n {
        let size = if i + 1 < n && rng.gen_bool(0.5) { 2 } else { 1 };
        for r in i..i + size {
            for c in i..i + size {
                m.set(r, c, small_rational(rng));
            }
        }
        for r in i..i + size {
            for c in i + size..n {
                if rng.gen_bool(0.5) {
                    m.set(r, c, small_rational(rng));
                }
            }
        }
        i += size;
    }
    m
}

fn conjugate(p: &Matrix<Rational>, x: &Matrix<Rational>) -> Matrix<Rational> {
    let inv = p.inverse().expect("group elements are invertible");
    &(p * x) * &inv
}

/// Rotation in the `(i, j)` plane with the Pythagorean cosine `(m² − k²)/(m² + k²)`.
pub fn givens(n: usize, i: usize, j: usize, m: i64, k: i64) -> Matrix<Rational> {
    let d = m * m + k * k;
    let (c, s) = (rat(m * m - k * k, d), rat(2 * m * k, d));
    let mut g = Matrix::identity(n);
    g.set(i, i, c.clone());
    g.set(j, j, c);
    g.set(i, j, -s.clone());
    g.set(j, i, s);
    g
}

/// Hyperbolic rotation in the `(i, j)` plane: `cosh = (t + 1/t)/2`, `sinh = (t − 1/t)/2`, `t > 0`.
pub fn boost(n: usize, i: usize, j: usize, t: Rational) -> Matrix<Rational> {
    let half = rat(1, 2);
    let inv = rat(1, 1) / t.clone();
    let ch = (t.clone() + inv.clone()) * half.clone();
    let sh = (t - inv) * half;
    let mut g = Matrix::identity(n);
    g.set(i, i, ch.clone());
    g.set(j, j, ch);
    g.set(i, j, sh.clone());
    g.set(j, i, sh);
    g
}

fn positive_small_rational(rng: &mut impl Rng) -> Rational {
    rat(rng.gen_range(1..=4), rng.gen_range(1..=3))
}

/// Random element of the identity component of the group of `l`, as a
/// product of `factors` rational one-parameter generators.
pub fn group_element(l: &LieStructure, rng: &mut impl Rng, factors: usize) -> Matrix<Rational> {
    let n = l.n();
    let mut g = Matrix::identity(n);
    for _ in 0..factors {
        let f = match l.family() {
            Family::Sl => {
                let (i, j) = random_pair(rng, n);
                transvection(n, i, j, nonzero_small_rational(rng))
            }
            Family::Sp => symplectic_generator(rng, n),
            Family::So => {
                let p = l.signature().map_or(n, |s| s.0);
                let (i, j) = random_pair(rng, n);
                let (i, j) = (i.min(j), i.max(j));
                if (i < p) == (j < p) {
                    let m = rng.gen_range(1..=4);
                    let k = rng.gen_range(1..=4);
                    givens(n, i, j, m, k)
                } else {
                    boost(n, i, j, positive_small_rational(rng))
                }
            }
        };
        g = &g * &f;
    }
    g
}

/// `[[I, S], [0, I]]`, `[[I, 0], [S, I]]` with `S` symmetric, or
/// `[[A, 0], [0, A⁻ᵀ]]` with `A` a transvection.
fn symplectic_generator(rng: &mut impl Rng, n: usize) -> Matrix<Rational> {
    let m = n / 2;
    let mut g = Matrix::identity(n);
    match rng.gen_range(0..3) {
        kind @ (0 | 1) => {
            let (r0, c0) = if kind == 0 { (0, m) } else { (m, 0) };
            for r in 0..m {
                for c in r..m {
                    if r == c || rng.gen_bool(0.5) {
                        let v = small_rational(rng);
                        g.set(r0 + r, c0 + c, v.clone());
                        g.set(r0 + c, c0 + r, v);
                    }
                }
            }
        }
        _ if m >= 2 => {
            let (i, j) = random_pair(rng, m);
            let c = nonzero_small_rational(rng);
            g.set(i, j, c.clone());
            g.set(m + j, m + i, -c);
        }
        _ => {
            let a = positive_small_rational(rng);
            g.set(0, 0, a.clone());
            g.set(1, 1, rat(1, 1) / a);
        }
    }
    g
}

/// Random element of the Lie algebra of `l` whose spectrum is at worst
/// quadratic over ℚ, conjugated by a random group element.
pub fn algebra_element(l: &LieStructure, rng: &mut impl Rng) -> Matrix<Rational> {
    let n = l.n();
    let x0 = match l.family() {
        Family::Sl => {
            let mut m = quadratic_triangular(rng, n);
            let tr = m.trace();
            let v = m.get(n - 1, n - 1).clone() - tr;
            m.set(n - 1, n - 1, v);
            m
        }
        Family::Sp => {
            let m = n / 2;
            let a = quadratic_triangular(rng, m);
            let mut x = Matrix::zeros(n);
            for r in 0..m {
                for c in 0..m {
                    x.set(r, c, a.get(r, c).clone());
                    x.set(m + c, m + r, -a.get(r, c).clone());
                }
                for c in r..m {
                    if rng.gen_bool(0.5) {
                        let v = small_rational(rng);
                        x.set(r, m + c, v.clone());
                        x.set(c, m + r, v);
                    }
                }
            }
            x
        }
        Family::So => orthogonal_blocks(l, rng),
    };
    conjugate(&group_element(l, rng, 2), &x0)
}

/// Sum of random elements of `so` on disjoint coordinate blocks of size two
/// or three; each block's characteristic polynomial is `x^k(x² + c)`.
fn orthogonal_blocks(l: &LieStructure, rng: &mut impl Rng) -> Matrix<Rational> {
    let n = l.n();
    let j = l.form().expect("so carries a form");
    let mut coords: Vec<usize> = (0..n).collect();
    coords.shuffle(rng);
    let mut x = Matrix::zeros(n);
    let mut rest = coords.as_slice();
    while rest.len() >= 2 {
        let size = if rest.len() >= 3 && rng.gen_bool(0.5) { 3 } else { 2 };
        let (block, tail) = rest.split_at(size);
        rest = tail;
        // J·A with A antisymmetric on the block
        let nilpotent = size == 3 && rng.gen_bool(0.3);
        let coeffs: Vec<Rational> = if nilpotent {
            pythagorean_null(rng, block.iter().map(|&c| j.get(c, c).clone()).collect())
        } else {
            (0..size * (size - 1) / 2).map(|_| small_rational(rng)).collect()
        };
        let mut k = 0;
        for a in 0..size {
            for b in a + 1..size {
                let (r, c) = (block[a], block[b]);
                let v = coeffs[k].clone();
                x.set(r, c, j.get(r, r).clone() * v.clone());
                x.set(c, r, -(j.get(c, c).clone() * v));
                k += 1;
            }
        }
    }
    x
}

/// Coefficients `(a, b, c)` of `J·A` on a three-dimensional block that make it
/// nilpotent: with `A = [[0,a,b],[−a,0,c],[−b,−c,0]]` and signs `s`, the
/// characteristic polynomial is `x³ + (s₀s₁a² + s₀s₂b² + s₁s₂c²)x`. All zero
/// when the signs agree.
fn pythagorean_null(rng: &mut impl Rng, signs: Vec<Rational>) -> Vec<Rational> {
    let w = [
        signs[0].clone() * signs[1].clone(),
        signs[0].clone() * signs[2].clone(),
        signs[1].clone() * signs[2].clone(),
    ];
    if w.iter().all(|s| *s > rat(0, 1)) {
        return vec![rat(0, 1); 3];
    }
    // mixed signs: one positive weight takes the hypotenuse of (3, 4, 5)
    let hyp = w.iter().position(|s| *s > rat(0, 1)).expect("mixed signs leave one positive weight");
    let scale = nonzero_small_rational(rng);
    let mut legs = [rat(3, 1), rat(4, 1)].into_iter();
    (0..3)
        .map(|k| if k == hyp { rat(5, 1) * scale.clone() } else { legs.next().unwrap() * scale.clone() })
        .collect()
}
