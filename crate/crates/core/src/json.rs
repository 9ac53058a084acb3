//! JSON wire forms. Scalars are strings in the forms of [`crate::scalar::text`];
//! every polynomial and matrix carries the ring tag of its widest entry.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::decompose::{AdditiveDecomposition, MultiplicativeDecomposition, SpectralLog};
use crate::error::{JordanError, Result};
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::projectors::ProjectorSet;
use crate::scalar::{render_uniform, Rational, RealField, Ring, Scalar, ToScalar};
use crate::spectral::{Mode, SpectralData};

/// Field types with a tagged string form for themselves and their complexification.
pub trait Renderable: RealField + ToScalar
where
    Complex<Self>: ToScalar,
{
}

impl<R: RealField + ToScalar> Renderable for R where Complex<R>: ToScalar {}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<Ring>,
    pub entries: Vec<Vec<String>>,
}

impl MatrixJson {
    pub fn from_matrix<F: ToScalar + crate::scalar::Field>(m: &Matrix<F>) -> Self {
        let (ring, flat) = render_uniform(m.data());
        let n = m.n();
        let entries = flat.chunks(n.max(1)).map(<[String]>::to_vec).collect();
        MatrixJson { n, ring: Some(ring), entries }
    }

    /// Exact rational matrix; decimal strings convert exactly, anything
    /// irrational or complex is rejected.
    pub fn to_rational(&self) -> Result<Matrix<Rational>> {
        let n = self.n;
        if n == 0 {
            return Err(JordanError::InvalidInput("matrix dimension must be at least 1".into()));
        }
        if self.entries.len() != n || self.entries.iter().any(|r| r.len() != n) {
            return Err(JordanError::InvalidInput(format!("matrix is declared {n}x{n} but entries have another shape")));
        }
        let mut data = Vec::with_capacity(n * n);
        for (r, row) in self.entries.iter().enumerate() {
            for (c, s) in row.iter().enumerate() {
                let q = Scalar::parse(s)?.as_rational().ok_or_else(|| {
                    JordanError::InvalidInput(format!("entry ({r}, {c}) = {s:?} is not rational"))
                })?;
                data.push(q);
            }
        }
        Matrix::new(n, data)
    }
}

/// Coefficients lowest degree first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyJson {
    pub ring: Ring,
    pub coeffs: Vec<String>,
}

impl PolyJson {
    pub fn from_poly<F: ToScalar + crate::scalar::Field>(p: &Poly<F>) -> Self {
        let (ring, coeffs) = render_uniform(p.coeffs());
        PolyJson { ring, coeffs }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RootJson {
    pub value: String,
    pub multiplicity: usize,
    /// `|λ|²`.
    pub modulus_sq: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralJson {
    pub mode: Mode,
    pub min_poly: PolyJson,
    /// One representative `λ = u + iv` with `v > 0` per conjugate pair.
    pub complex_pairs: Vec<RootJson>,
    pub real_roots: Vec<RootJson>,
    pub precision_bits: Option<u32>,
    pub tolerance: f64,
}

impl SpectralJson {
    pub fn from_spectral<R: Renderable>(s: &SpectralData<R>) -> Self
    where
        Complex<R>: ToScalar,
    {
        SpectralJson {
            mode: s.mode,
            min_poly: PolyJson::from_poly(&s.min_poly),
            complex_pairs: s
                .complex_pairs
                .iter()
                .map(|p| RootJson {
                    value: p.lambda.to_scalar().render(),
                    multiplicity: p.multiplicity,
                    modulus_sq: p.modulus_sq.to_scalar().render(),
                })
                .collect(),
            real_roots: s
                .real_roots
                .iter()
                .map(|r| RootJson {
                    value: r.value.to_scalar().render(),
                    multiplicity: r.multiplicity,
                    modulus_sq: r.modulus_sq.to_scalar().render(),
                })
                .collect(),
            precision_bits: s.precision_bits,
            tolerance: s.tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProjectorJson {
    pub eigenvalue: String,
    pub multiplicity: usize,
    pub polynomial: PolyJson,
}

/// Projector polynomials in root order: `π, π̄` per pair, then real roots.
pub fn projectors_json<R: Renderable>(ps: &ProjectorSet<R>) -> Vec<ProjectorJson>
where
    Complex<R>: ToScalar,
{
    ps.spectral
        .roots()
        .iter()
        .zip(ps.all_polys())
        .map(|((lambda, m), p)| ProjectorJson {
            eigenvalue: lambda.to_scalar().render(),
            multiplicity: *m,
            polynomial: PolyJson::from_poly(&p),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Triple<T> {
    #[serde(rename = "E")]
    pub e: T,
    #[serde(rename = "H")]
    pub h: T,
    #[serde(rename = "N")]
    pub n: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultTriple<T> {
    pub e: T,
    pub h: T,
    pub u: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdditiveJson {
    pub mode: Mode,
    pub components: Triple<MatrixJson>,
    pub witnesses: Triple<PolyJson>,
    pub spectral: SpectralJson,
    pub projectors: Vec<ProjectorJson>,
}

impl AdditiveJson {
    pub fn new<R: Renderable>(d: &AdditiveDecomposition<R>, ps: &ProjectorSet<R>) -> Self
    where
        Complex<R>: ToScalar,
    {
        AdditiveJson {
            mode: d.mode(),
            components: Triple {
                e: MatrixJson::from_matrix(&d.e),
                h: MatrixJson::from_matrix(&d.h),
                n: MatrixJson::from_matrix(&d.n),
            },
            witnesses: Triple {
                e: PolyJson::from_poly(&d.witness_e),
                h: PolyJson::from_poly(&d.witness_h),
                n: PolyJson::from_poly(&d.witness_n),
            },
            spectral: SpectralJson::from_spectral(&d.spectral),
            projectors: projectors_json(ps),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LogTermJson {
    /// `m` in `½·ln(m)·P`.
    pub modulus_sq: String,
    pub projector: MatrixJson,
}

pub fn spectral_log_json<R: Renderable>(log: &SpectralLog<R>) -> Vec<LogTermJson>
where
    Complex<R>: ToScalar,
{
    log.terms
        .iter()
        .map(|t| LogTermJson {
            modulus_sq: t.modulus_sq.to_scalar().render(),
            projector: MatrixJson::from_matrix(&t.projector),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiplicativeJson {
    pub mode: Mode,
    pub components: MultTriple<MatrixJson>,
    pub witnesses: MultTriple<PolyJson>,
    pub log_h: Vec<LogTermJson>,
    pub spectral: SpectralJson,
    pub projectors: Vec<ProjectorJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fallback: Option<String>,
}

impl MultiplicativeJson {
    pub fn new<R: Renderable>(d: &MultiplicativeDecomposition<R>, ps: &ProjectorSet<R>) -> Self
    where
        Complex<R>: ToScalar,
    {
        MultiplicativeJson {
            mode: d.mode(),
            components: MultTriple {
                e: MatrixJson::from_matrix(&d.e),
                h: MatrixJson::from_matrix(&d.h),
                u: MatrixJson::from_matrix(&d.u),
            },
            witnesses: MultTriple {
                e: PolyJson::from_poly(&d.witness_e),
                h: PolyJson::from_poly(&d.witness_h),
                u: PolyJson::from_poly(&d.witness_u),
            },
            log_h: spectral_log_json(&d.log_h),
            spectral: SpectralJson::from_spectral(&d.spectral),
            projectors: projectors_json(ps),
            fallback: d.fallback.clone(),
        }
    }
}
