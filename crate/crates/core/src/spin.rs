//! Spin Hamiltonian `A H Jz − D Jz² + (E/2)(J₊² + J₋²)` in the |S, m⟩ basis.
//!
//! Its eigenvalues are the reference against which the angle model and the
//! semiclassical estimates are compared. Splittings at zero field are always
//! differences between eigenvalues of the spin-flip-even and spin-flip-odd
//! blocks, each solved on its own, so that a 1e-10 K splitting survives
//! next to 30 K level energies.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::model::ClusterParams;
use crate::numerics::{SparseVector, SymmetricMatrix};
use crate::spectrum::{solve_blocks, BlockBasis, BlockTag, Method, Parity, Spectrum};

/// Magnetic quantum number, stored doubled so half-integer spins are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinBasisLabel {
    two_m: i32,
}

impl SpinBasisLabel {
    /// Label of basis index `index` (0 ↔ m = −S).
    pub fn from_index(params: &ClusterParams, index: usize) -> Self {
        assert!(index < params.dim(), "basis index {index} out of range");
        Self {
            two_m: 2 * index as i32 - params.two_s() as i32,
        }
    }

    pub fn m(&self) -> f64 {
        f64::from(self.two_m) / 2.0
    }

    pub fn index(&self, params: &ClusterParams) -> usize {
        ((self.two_m + params.two_s() as i32) / 2) as usize
    }
}

/// `⟨m+2| J₊² |m⟩`.
fn raise_twice(s: f64, m: f64) -> f64 {
    ((s - m) * (s + m + 1.0) * (s - m - 1.0) * (s + m + 2.0))
        .max(0.0)
        .sqrt()
}

pub fn build_spin_hamiltonian(params: &ClusterParams, field: f64) -> SymmetricMatrix {
    let n = params.dim();
    let s = params.spin();
    let (a, d, e) = (params.zeeman(), params.d(), params.e());
    let mut h = SymmetricMatrix::zeros(n);
    for i in 0..n {
        let m = SpinBasisLabel::from_index(params, i).m();
        h.set(i, i, a * field * m - d * m * m);
        if i + 2 < n {
            h.set(i + 2, i, 0.5 * e * raise_twice(s, m));
        }
    }
    h
}

/// Symmetry-adapted bases of the spin Hamiltonian.
///
/// `J₊²`, `J₋²` and `Jz` all preserve the parity of `m + S`, so that splits
/// the space at any field. At zero field the spin flip m → −m is a symmetry
/// too; for integer S it commutes with the `m + S` parity and both are used,
/// for half-integer S it exchanges the two parities and only the flip is used.
pub fn symmetry_blocks(params: &ClusterParams, field: f64) -> Vec<BlockBasis> {
    let n = params.dim();
    let two_s = params.two_s() as usize;
    if field != 0.0 {
        return [Parity::Even, Parity::Odd]
            .into_iter()
            .map(|p| {
                let basis = (0..n)
                    .filter(|&i| Parity::of(i as i64) == p)
                    .map(|i| vec![(i, 1.0)])
                    .collect();
                (
                    BlockTag {
                        exchange: None,
                        local: Some(p),
                    },
                    basis,
                )
            })
            .collect();
    }

    let flip_basis = |indices: &mut dyn Iterator<Item = usize>, flip: Parity| -> Vec<SparseVector> {
        indices
            .filter_map(|i| {
                let j = two_s - i;
                match (i.cmp(&j), flip) {
                    (std::cmp::Ordering::Equal, Parity::Even) => Some(vec![(i, 1.0)]),
                    (std::cmp::Ordering::Greater, Parity::Even) => Some(vec![(i, FRAC_1_SQRT_2), (j, FRAC_1_SQRT_2)]),
                    (std::cmp::Ordering::Greater, Parity::Odd) => Some(vec![(i, FRAC_1_SQRT_2), (j, -FRAC_1_SQRT_2)]),
                    _ => None,
                }
            })
            .collect()
    };

    let mut blocks = Vec::new();
    for flip in [Parity::Even, Parity::Odd] {
        if two_s.is_multiple_of(2) {
            for local in [Parity::Even, Parity::Odd] {
                let mut it = (0..n).filter(|&i| Parity::of(i as i64) == local);
                blocks.push((
                    BlockTag {
                        exchange: Some(flip),
                        local: Some(local),
                    },
                    flip_basis(&mut it, flip),
                ));
            }
        } else {
            blocks.push((
                BlockTag {
                    exchange: Some(flip),
                    local: None,
                },
                flip_basis(&mut (0..n), flip),
            ));
        }
    }
    blocks
}

/// The spin-flip-even and spin-flip-odd blocks of a zero-field Hamiltonian.
///
/// Each returned matrix is itself block diagonal in the parity of `m + S`
/// (even parity first) when S is an integer.
pub fn split_parity_blocks(
    h: &SymmetricMatrix,
    params: &ClusterParams,
    field: f64,
) -> Result<(SymmetricMatrix, SymmetricMatrix)> {
    if field != 0.0 {
        return Err(Error::SymmetryBroken { field });
    }
    if h.dim() != params.dim() {
        return Err(Error::InvalidInput(format!(
            "matrix dimension {} does not match 2S+1 = {}",
            h.dim(),
            params.dim()
        )));
    }
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for (tag, basis) in symmetry_blocks(params, 0.0) {
        match tag.exchange {
            Some(Parity::Even) => even.extend(basis),
            _ => odd.extend(basis),
        }
    }
    Ok((h.project(&even), h.project(&odd)))
}

/// Reference spectrum, solved block by block.
pub fn reference_spectrum(params: &ClusterParams, field: f64) -> Result<Spectrum> {
    let h = build_spin_hamiltonian(params, field);
    let blocks = solve_blocks(&h, &symmetry_blocks(params, field))?;
    Ok(Spectrum::from_blocks(Method::SpinExact, *params, field, blocks))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapPoint {
    pub field: f64,
    pub gap: f64,
}

/// Lowest-level gap of the reference spectrum over a field scan.
#[derive(Debug, Clone, PartialEq)]
pub struct GapScan {
    pub points: Vec<GapPoint>,
}

impl GapScan {
    /// Least-squares slope and intercept of gap against field.
    pub fn linear_fit(&self) -> Result<(f64, f64)> {
        let n = self.points.len() as f64;
        if self.points.len() < 2 {
            return Err(Error::DegenerateFit("slope needs at least two fields".into()));
        }
        if self.points.iter().all(|p| p.field == self.points[0].field) {
            return Err(Error::DegenerateFit("all fields are equal".into()));
        }
        let mean_h = self.points.iter().map(|p| p.field).sum::<f64>() / n;
        let mean_g = self.points.iter().map(|p| p.gap).sum::<f64>() / n;
        let sxx: f64 = self.points.iter().map(|p| (p.field - mean_h).powi(2)).sum();
        let sxy: f64 = self.points.iter().map(|p| (p.field - mean_h) * (p.gap - mean_g)).sum();
        let slope = sxy / sxx;
        Ok((slope, mean_g - slope * mean_h))
    }

    pub fn slope(&self) -> Result<f64> {
        self.linear_fit().map(|(slope, _)| slope)
    }
}

/// Gap between the two lowest reference levels at each field.
///
/// Below the first matching field these are the ground states of the two
/// wells; at zero field the gap is the tunneling splitting.
pub fn gap_vs_field_scan(params: &ClusterParams, fields: &[f64]) -> Result<GapScan> {
    if params.dim() < 2 {
        return Err(Error::InvalidInput("a gap needs at least two levels".into()));
    }
    let points = fields
        .iter()
        .map(|&field| {
            let s = reference_spectrum(params, field)?;
            Ok(GapPoint {
                field,
                gap: s.levels[1].energy - s.levels[0].energy,
            })
        })
        .collect::<Result<_>>()?;
    Ok(GapScan { points })
}
