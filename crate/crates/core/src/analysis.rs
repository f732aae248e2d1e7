//! Side-by-side comparison of the reference spectrum, the angle model and
//! the semiclassical splitting estimates.

use crate::angle::{angle_spectrum, FourierBasisSpec};
use crate::error::Result;
use crate::model::ClusterParams;
use crate::semiclassics::{
    applicable_methods, field_formulas, harmonic_well, khw_mg_splitting, parabolic_splitting, wkb_splitting,
    FieldFormulaReport, HarmonicWellReport, SplitMethod, SplittingEstimate,
};
use crate::spectrum::{pair_doublets, DoubletRow, DoubletTable, Spectrum};
use crate::spin::reference_spectrum;

/// `|x − reference| / |reference| × 100`.
pub fn percent_deviation(x: f64, reference: f64) -> f64 {
    (x - reference).abs() / reference.abs() * 100.0
}

/// Level energy fed to the semiclassical formulas for a doublet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EnergyPolicy {
    /// Mean of the reference (spin-matrix) doublet.
    #[default]
    ReferenceMean,
    /// Mean of the angle-model doublet with the same index.
    AngleMean,
}

/// Zero-field spectra of both models and their doublet tables.
#[derive(Debug, Clone)]
pub struct ZeroFieldSpectra {
    pub reference: Spectrum,
    /// Angle-model levels, truncated to the 2S+1 lowest.
    pub angle: Spectrum,
    pub reference_doublets: DoubletTable,
    pub angle_doublets: DoubletTable,
}

pub fn zero_field_spectra(params: &ClusterParams, spec: &FourierBasisSpec) -> Result<ZeroFieldSpectra> {
    let reference = reference_spectrum(params, 0.0)?;
    let angle = angle_spectrum(params, 0.0, spec)?.truncated(params.dim());
    let reference_doublets = pair_doublets(&reference)?;
    let angle_doublets = pair_doublets(&angle)?;
    Ok(ZeroFieldSpectra {
        reference,
        angle,
        reference_doublets,
        angle_doublets,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DoubletComparison {
    pub index: usize,
    pub reference: DoubletRow,
    pub angle: Option<DoubletRow>,
    /// Energy the semiclassical estimates were evaluated at, K.
    pub energy: f64,
    /// Estimates whose validity band contains `energy`.
    pub estimates: Vec<SplittingEstimate>,
}

impl DoubletComparison {
    pub fn angle_deviation(&self) -> Option<f64> {
        self.angle
            .map(|a| percent_deviation(a.splitting(), self.reference.splitting()))
    }

    pub fn estimate(&self, method: SplitMethod) -> Option<&SplittingEstimate> {
        self.estimates.iter().find(|e| e.method == method)
    }

    pub fn deviation(&self, method: SplitMethod) -> Option<f64> {
        self.estimate(method)
            .map(|e| percent_deviation(e.splitting, self.reference.splitting()))
    }
}

/// All zero-field estimates applicable at `energy`.
pub fn estimates_at(energy: f64, params: &ClusterParams) -> Result<Vec<SplittingEstimate>> {
    applicable_methods(energy, params)
        .into_iter()
        .map(|m| match m {
            SplitMethod::Wkb | SplitMethod::AsymmetricWkb => wkb_splitting(energy, params),
            SplitMethod::KhwMg => khw_mg_splitting(energy, params),
            SplitMethod::Parabolic => parabolic_splitting(energy, params),
        })
        .collect()
}

/// One row per reference doublet, with the matching angle-model doublet and
/// every applicable semiclassical estimate.
pub fn compare_doublets(spectra: &ZeroFieldSpectra, policy: EnergyPolicy) -> Result<Vec<DoubletComparison>> {
    let params = &spectra.reference.params;
    spectra
        .reference_doublets
        .rows
        .iter()
        .map(|reference| {
            let angle = spectra.angle_doublets.rows.get(reference.index).copied();
            let energy = match (policy, angle) {
                (EnergyPolicy::AngleMean, Some(a)) => a.mean(),
                _ => reference.mean(),
            };
            Ok(DoubletComparison {
                index: reference.index,
                reference: *reference,
                angle,
                energy,
                estimates: estimates_at(energy, params)?,
            })
        })
        .collect()
}

/// Closed-form quantities for one parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct SemiclassicalReport {
    pub params: ClusterParams,
    pub harmonic: HarmonicWellReport,
    pub field: FieldFormulaReport,
}

impl SemiclassicalReport {
    pub fn compute(params: &ClusterParams) -> Result<Self> {
        Ok(Self {
            params: *params,
            harmonic: harmonic_well(params),
            field: field_formulas(params)?,
        })
    }
}
