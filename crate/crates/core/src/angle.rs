//! Fourier–Galerkin solution of the angle-variable Hamiltonian
//! `H = −½ d/dφ (1/M(φ)) d/dφ + V(φ)`.
//!
//! In the plane-wave basis `e^{inφ}` (orthonormal under dφ/2π) one
//! integration by parts gives `H(m, n) = ½ m n I_{m−n} + V_{m−n}`, where
//! `I_k` and `V_k` are the Fourier components of the inverse mass and the
//! potential. Both are trigonometric polynomials of degree two, so the
//! matrix has bandwidth two and is real symmetric.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{ClusterParams, EffectiveCoefficients};
use crate::numerics::{eig_symmetric, SymmetricMatrix};
use crate::spectrum::{solve_blocks, BlockBasis, BlockTag, Method, Parity, Spectrum};

/// Plane-wave cutoff: the basis is `e^{inφ}` for `|n| <= n_max`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FourierBasisSpec {
    n_max: usize,
}

impl FourierBasisSpec {
    pub const MIN_N_MAX: usize = 4;

    pub fn new(n_max: usize) -> Result<Self> {
        if n_max < Self::MIN_N_MAX {
            return Err(Error::InvalidInput(format!(
                "n_max must be at least {}, got {n_max}",
                Self::MIN_N_MAX
            )));
        }
        Ok(Self { n_max })
    }

    /// Cutoff of three times the spin-space dimension, `3·2S`.
    pub fn default_for(params: &ClusterParams) -> Self {
        Self {
            n_max: (3 * params.two_s() as usize).max(Self::MIN_N_MAX),
        }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        2 * self.n_max + 1
    }

    fn index(&self, n: i64) -> usize {
        (n + self.n_max as i64) as usize
    }

    fn check(&self, params: &ClusterParams) -> Result<()> {
        if self.n_max < params.two_s() as usize {
            return Err(Error::InvalidInput(format!(
                "n_max = {} is below 2S = {}",
                self.n_max,
                params.two_s()
            )));
        }
        Ok(())
    }
}

/// Fourier components `(c_0, c_1, c_2)` of `a cos²φ + b H cosφ + c`;
/// `c_{−k} = c_k`.
fn components(cos2: f64, cos1: f64, constant: f64) -> [f64; 3] {
    [0.5 * cos2 + constant, 0.5 * cos1, 0.25 * cos2]
}

pub fn build_angle_hamiltonian(c: &EffectiveCoefficients, field: f64, spec: &FourierBasisSpec) -> SymmetricMatrix {
    let inv_mass = components(c.m1, c.m2 * field, c.m3);
    let pot = components(c.v1, c.v2 * field, c.v3);
    let n_max = spec.n_max as i64;
    SymmetricMatrix::from_lower(spec.dim(), |i, j| {
        let (m, n) = (i as i64 - n_max, j as i64 - n_max);
        let k = (m - n).unsigned_abs() as usize;
        if k > 2 {
            return 0.0;
        }
        0.5 * (m * n) as f64 * inv_mass[k] + pot[k]
    })
}

/// Symmetry-adapted bases of the plane-wave space.
///
/// φ → −φ (cos/sin sectors) is a symmetry at any field; φ → φ + π (parity of
/// n) only at zero field, where the coupling has no odd harmonics.
pub fn symmetry_blocks(spec: &FourierBasisSpec, field: f64) -> Vec<BlockBasis> {
    let n_max = spec.n_max as i64;
    let exchanges: Vec<Option<Parity>> = if field == 0.0 {
        vec![Some(Parity::Even), Some(Parity::Odd)]
    } else {
        vec![None]
    };
    let mut blocks = Vec::new();
    for exchange in exchanges {
        let keep = |n: i64| exchange.is_none_or(|p| Parity::of(n) == p);
        let cos = (0..=n_max)
            .filter(|&n| keep(n))
            .map(|n| {
                if n == 0 {
                    vec![(spec.index(0), 1.0)]
                } else {
                    vec![(spec.index(n), FRAC_1_SQRT_2), (spec.index(-n), FRAC_1_SQRT_2)]
                }
            })
            .collect();
        let sin = (1..=n_max)
            .filter(|&n| keep(n))
            .map(|n| vec![(spec.index(n), FRAC_1_SQRT_2), (spec.index(-n), -FRAC_1_SQRT_2)])
            .collect();
        blocks.push((
            BlockTag {
                exchange,
                local: Some(Parity::Even),
            },
            cos,
        ));
        blocks.push((
            BlockTag {
                exchange,
                local: Some(Parity::Odd),
            },
            sin,
        ));
    }
    blocks
}

/// All `2 n_max + 1` eigenvalues of the discretized angle Hamiltonian.
pub fn angle_spectrum(params: &ClusterParams, field: f64, spec: &FourierBasisSpec) -> Result<Spectrum> {
    spec.check(params)?;
    let h = build_angle_hamiltonian(&params.coefficients(), field, spec);
    let blocks = solve_blocks(&h, &symmetry_blocks(spec, field))?;
    Ok(Spectrum::from_blocks(Method::AngleSpectral, *params, field, blocks))
}

/// `h_b = −E·S(S+1) − ℰ_gs`: ground-state energy below the barrier top.
pub fn barrier_height(spectrum: &Spectrum, c: &EffectiveCoefficients) -> Result<f64> {
    if spectrum.field != 0.0 {
        return Err(Error::SymmetryBroken { field: spectrum.field });
    }
    let ground = spectrum
        .levels
        .first()
        .ok_or_else(|| Error::InvalidInput("empty spectrum".into()))?;
    Ok(c.v3 - ground.energy)
}

/// An eigenfunction `ψ(φ) = (2π)^{−1/2} Σ c_n e^{inφ}`.
///
/// The coefficients are real because the Hamiltonian is real symmetric in
/// the plane-wave basis, and `Σ c_n² = 1`, so `∫₀^{2π} |ψ|² dφ = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct AngleWavefunction {
    pub energy: f64,
    pub tag: BlockTag,
    n_max: usize,
    coefficients: Vec<f64>,
}

impl AngleWavefunction {
    pub fn from_coefficients(energy: f64, tag: BlockTag, coefficients: Vec<f64>) -> Result<Self> {
        if coefficients.len().is_multiple_of(2) {
            return Err(Error::InvalidInput(
                "coefficient vector must have odd length 2 n_max + 1".into(),
            ));
        }
        Ok(Self {
            energy,
            tag,
            n_max: coefficients.len() / 2,
            coefficients,
        })
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    /// Coefficient of `e^{inφ}`; zero outside the cutoff.
    pub fn coefficient(&self, n: i64) -> f64 {
        if n.unsigned_abs() as usize > self.n_max {
            return 0.0;
        }
        self.coefficients[(n + self.n_max as i64) as usize]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.coefficients.iter().map(|c| c * c).sum()
    }

    /// Largest coefficient magnitude at `|n| = n_max`.
    pub fn edge_magnitude(&self) -> f64 {
        let n = self.n_max as i64;
        self.coefficient(n).abs().max(self.coefficient(-n).abs())
    }

    /// Probability of finding φ in the well around 0 (|φ| < π/2) and around π.
    pub fn well_populations(&self) -> (f64, f64) {
        let n_max = self.n_max as i64;
        let mut near_zero = 0.0;
        for m in -n_max..=n_max {
            let cm = self.coefficient(m);
            if cm == 0.0 {
                continue;
            }
            for n in -n_max..=n_max {
                let k = n - m;
                // (1/2π) ∫_{−π/2}^{π/2} e^{ikφ} dφ
                let overlap = if k == 0 {
                    0.5
                } else {
                    (k as f64 * PI / 2.0).sin() / (k as f64 * PI)
                };
                near_zero += cm * self.coefficient(n) * overlap;
            }
        }
        (near_zero, self.norm_sqr() - near_zero)
    }
}

pub fn evaluate_wavefunction(w: &AngleWavefunction, phi: f64) -> Complex64 {
    let n_max = w.n_max as i64;
    let sum: Complex64 = (-n_max..=n_max)
        .map(|n| w.coefficient(n) * Complex64::from_polar(1.0, n as f64 * phi))
        .sum();
    sum / (2.0 * PI).sqrt()
}

/// The lowest `count` eigenfunctions, each from a definite symmetry block.
pub fn angle_states(
    params: &ClusterParams,
    field: f64,
    spec: &FourierBasisSpec,
    count: usize,
) -> Result<Vec<AngleWavefunction>> {
    spec.check(params)?;
    let h = build_angle_hamiltonian(&params.coefficients(), field, spec);
    let mut states = Vec::new();
    for (tag, basis) in symmetry_blocks(spec, field) {
        if basis.is_empty() {
            continue;
        }
        let eig = eig_symmetric(&h.project(&basis), true)?;
        for (k, &energy) in eig.values.iter().enumerate() {
            let v = eig.vector(k).expect("vectors requested");
            let mut coefficients = vec![0.0; spec.dim()];
            for (amp, vector) in v.iter().zip(&basis) {
                for &(idx, c) in vector {
                    coefficients[idx] += amp * c;
                }
            }
            states.push(AngleWavefunction {
                energy,
                tag,
                n_max: spec.n_max,
                coefficients,
            });
        }
    }
    states.sort_by(|a, b| a.energy.total_cmp(&b.energy).then(a.tag.cmp(&b.tag)));
    states.truncate(count);
    Ok(states)
}

/// Lowest `count` eigenvalues for each cutoff in `cutoffs`.
pub fn convergence_sweep(
    params: &ClusterParams,
    field: f64,
    cutoffs: &[usize],
    count: usize,
) -> Result<Vec<(usize, Vec<f64>)>> {
    cutoffs
        .iter()
        .map(|&n_max| {
            let spec = FourierBasisSpec::new(n_max)?;
            let s = angle_spectrum(params, field, &spec)?;
            Ok((n_max, s.truncated(count).energies()))
        })
        .collect()
}
