//! Simultaneous polynomial root finding (Aberth–Ehrlich) with Newton polish.

use num_complex::Complex;
use num_traits::Float;

use crate::error::{JordanError, Result};

const MAX_ITER: usize = 500;

fn horner<R: Float>(coeffs: &[Complex<R>], z: Complex<R>) -> (Complex<R>, Complex<R>) {
    let mut p = Complex::new(R::zero(), R::zero());
    let mut dp = p;
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn cast<R: Float>(x: f64) -> R {
    R::from(x).expect("float conversion")
}

/// All complex roots of `Σ coeffs[k] x^k`, with multiplicity.
///
/// The leading coefficient must be nonzero. Intended for squarefree inputs;
/// repeated roots converge only linearly and may trigger `NoConvergence`.
pub fn aberth<R: Float>(coeffs: &[Complex<R>]) -> Result<Vec<Complex<R>>> {
    let n = coeffs.len().saturating_sub(1);
    let lead = *coeffs
        .last()
        .ok_or_else(|| JordanError::DegenerateInput("root finding on the zero polynomial".into()))?;
    if lead.norm() == R::zero() {
        return Err(JordanError::DegenerateInput("leading coefficient is zero".into()));
    }
    match n {
        0 => return Ok(Vec::new()),
        1 => return Ok(vec![-coeffs[0] / coeffs[1]]),
        _ => {}
    }
    let monic: Vec<Complex<R>> = coeffs.iter().map(|&c| c / lead).collect();
    let nf = cast::<R>(n as f64);
    let center = -monic[n - 1] / nf;
    // Fujiwara bound on the root moduli
    let mut radius = R::zero();
    for k in 1..=n {
        let a = monic[n - k].norm();
        let r = if k == n { (a / cast(2.0)).powf(R::one() / nf) } else { a.powf(R::one() / cast(k as f64)) };
        radius = radius.max(r);
    }
    radius = (radius * cast(2.0)).max(cast(1e-3));
    let two_pi = cast::<R>(std::f64::consts::TAU);
    let mut z: Vec<Complex<R>> = (0..n)
        .map(|k| {
            let theta = two_pi * cast(k as f64) / nf + cast(0.4);
            center + Complex::from_polar(radius * cast(0.5), theta)
        })
        .collect();

    let eps = R::epsilon() * cast(4.0);
    let mut done = vec![false; n];
    for _ in 0..MAX_ITER {
        let mut all = true;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (p, dp) = horner(&monic, z[k]);
            if p.norm() <= rounding_bound(&monic, z[k]) {
                done[k] = true;
                continue;
            }
            let ratio = p / dp;
            let mut sum = Complex::new(R::zero(), R::zero());
            for j in 0..n {
                if j != k {
                    let d = z[k] - z[j];
                    if d.norm() > R::zero() {
                        sum = sum + d.inv();
                    }
                }
            }
            let w = ratio / (Complex::new(R::one(), R::zero()) - ratio * sum);
            z[k] = z[k] - w;
            if w.norm() <= eps * z[k].norm().max(R::one()) {
                done[k] = true;
            } else {
                all = false;
            }
        }
        if all {
            for zk in z.iter_mut() {
                *zk = newton_polish(&monic, *zk);
            }
            return Ok(z);
        }
    }
    Err(JordanError::NoConvergence(format!(
        "Aberth iteration on a degree {n} polynomial"
    )))
}

/// Error bound of Horner evaluation at `z`: `2nε·Σ|a_k||z|^k`.
fn rounding_bound<R: Float>(coeffs: &[Complex<R>], z: Complex<R>) -> R {
    let n = coeffs.len().saturating_sub(1);
    let mut abs_sum = R::zero();
    let mut zk = R::one();
    for c in coeffs {
        abs_sum = abs_sum + c.norm() * zk;
        zk = zk * z.norm();
    }
    cast::<R>(2.0 * n as f64) * R::epsilon() * abs_sum
}

fn newton_polish<R: Float>(coeffs: &[Complex<R>], mut z: Complex<R>) -> Complex<R> {
    for _ in 0..3 {
        let (p, dp) = horner(coeffs, z);
        if p.norm() == R::zero() || dp.norm() == R::zero() {
            break;
        }
        let step = p / dp;
        if !step.re.is_finite() || !step.im.is_finite() {
            break;
        }
        let next = z - step;
        if horner(coeffs, next).0.norm() >= p.norm() {
            break;
        }
        z = next;
    }
    z
}

/// Radius of a disk around `z` that contains a root of `p`:
/// `n·(|p(z)| + rounding bound)/|p'(z)|`.
pub fn inclusion_radius<R: Float>(coeffs: &[Complex<R>], z: Complex<R>) -> R {
    let nf = cast::<R>(coeffs.len().saturating_sub(1) as f64);
    let (p, dp) = horner(coeffs, z);
    let bound = p.norm() + rounding_bound(coeffs, z);
    if dp.norm() == R::zero() {
        return R::infinity();
    }
    nf * bound / dp.norm()
}

/// `|p(z)|` for a complex coefficient list.
pub fn residual<R: Float>(coeffs: &[Complex<R>], z: Complex<R>) -> R {
    horner(coeffs, z).0.norm()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex<f64> {
        Complex::new(x, 0.0)
    }

    #[test]
    fn cube_roots_of_two() {
        let roots = aberth(&[c(-2.0), c(0.0), c(0.0), c(1.0)]).unwrap();
        assert_eq!(roots.len(), 3);
        let real = roots.iter().find(|z| z.im.abs() < 1e-12).unwrap();
        assert!((real.re - 2f64.cbrt()).abs() < 1e-14);
        for z in &roots {
            assert!((z * z * z - c(2.0)).norm() < 1e-13);
        }
    }

    #[test]
    fn quartic_with_known_roots() {
        // (x^2+1)(x-3)(x+0.5)
        let p = [c(-1.5), c(-2.5), c(-0.5), c(-2.5), c(1.0)];
        let mut roots = aberth(&p).unwrap();
        roots.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        let want = [(-0.5, 0.0), (0.0, -1.0), (0.0, 1.0), (3.0, 0.0)];
        for (z, (re, im)) in roots.iter().zip(want) {
            assert!((z - Complex::new(re, im)).norm() < 1e-12, "{z}");
        }
    }

    #[test]
    fn rounding_level_oscillation_terminates() {
        // (x − 1)(x − 3/2)(x − 2/3)
        let p = [c(-1.0), c(19.0 / 6.0), c(-19.0 / 6.0), c(1.0)];
        let mut roots: Vec<f64> = aberth(&p).unwrap().iter().map(|z| z.re).collect();
        roots.sort_by(f64::total_cmp);
        for (z, want) in roots.iter().zip([2.0 / 3.0, 1.0, 1.5]) {
            assert!((z - want).abs() < 1e-14);
        }
    }

    #[test]
    fn single_precision_converges() {
        let p = [Complex::new(-2.0f32, 0.0), Complex::new(0.0, 0.0), Complex::new(1.0, 0.0)];
        let roots = aberth(&p).unwrap();
        for z in roots {
            assert!((z.norm() - 2f32.sqrt()).abs() < 1e-5);
        }
    }
}
