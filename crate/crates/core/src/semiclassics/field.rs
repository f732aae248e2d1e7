use crate::error::{Error, Result};
use crate::model::ClusterParams;

use super::harmonic::harmonic_well;
use super::splitting::action_integral;

/// `√(−2 V1 (M1 + M3))` and `V2/(4 V1) + M2/(2(M1 + M3))`: the zero-field
/// well frequency and its relative first-order change per Tesla.
fn harmonic_shift_terms(params: &ClusterParams) -> (f64, f64) {
    let c = params.coefficients();
    let inv_mass = c.m1 + c.m3;
    let omega = (-2.0 * c.v1 * inv_mass).sqrt();
    let rate = c.v2 / (4.0 * c.v1) + c.m2 / (2.0 * inv_mass);
    (omega, rate)
}

/// Signed first-order shift of a harmonic ground level per Tesla,
/// `V2 + ½ ω [V2/(4V1) + M2/(2(M1+M3))]`.
fn per_well_slope(params: &ClusterParams) -> f64 {
    let (omega, rate) = harmonic_shift_terms(params);
    params.coefficients().v2 + 0.5 * omega * rate
}

/// Harmonic ground-level energies in the deeper and shallower well at a weak
/// longitudinal field, K.
pub fn ground_state_vs_field(params: &ClusterParams, field: f64) -> (f64, f64) {
    let e_gs = harmonic_well(params).e_gs;
    let shift = (per_well_slope(params) * field).abs();
    (e_gs - shift, e_gs + shift)
}

/// Magnitude of the linear coefficient of the ground-doublet gap, K/T:
/// `|2V2 + ω [V2/(4V1) + M2/(2(M1+M3))]|`.
pub fn gap_linear_coefficient(params: &ClusterParams) -> f64 {
    let (omega, rate) = harmonic_shift_terms(params);
    (2.0 * params.coefficients().v2 + omega * rate).abs()
}

/// Field at which the first excited harmonic level of the deeper well meets
/// the ground level of the shallower one, T.
pub fn matching_field_harmonic(params: &ClusterParams) -> f64 {
    let (omega, rate) = harmonic_shift_terms(params);
    -omega / (2.0 * (omega * rate + params.coefficients().v2))
}

/// Saturation field, where the inverse mass first touches zero, and the
/// level-matching field obtained as saturation / 2S, both in T.
///
/// `H_lim = 4S √(2E(D − E)) / (g μ_B/k_B)`, equivalently `2√(M1 M3)/M2`.
pub fn saturation_and_matching_mass_route(params: &ClusterParams) -> Result<(f64, f64)> {
    let (d, e) = (params.d(), params.e());
    if e == 0.0 {
        return Err(Error::ZeroTransverse);
    }
    let two_s = f64::from(params.two_s());
    let saturation = 2.0 * two_s / params.zeeman() * (2.0 * e * (d - e)).sqrt();
    Ok((saturation, saturation / two_s))
}

/// Least-squares fit of `exponent(H)/exponent(0) = 1 + χH²` at fixed level
/// energy.
#[derive(Debug, Clone, PartialEq)]
pub struct ChiFit {
    pub energy: f64,
    /// χ, 1/T².
    pub chi: f64,
    /// Root-mean-square deviation of the ratios from the fitted curve.
    pub residual: f64,
    /// `(H, exponent(H)/exponent(0))` per field.
    pub ratios: Vec<(f64, f64)>,
}

pub fn extract_suppression_chi(params: &ClusterParams, energy: f64, fields: &[f64]) -> Result<ChiFit> {
    if fields.len() < 3 {
        return Err(Error::DegenerateFit(format!(
            "need at least three fields, got {}",
            fields.len()
        )));
    }
    let (lo, hi) = fields.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &h| {
        (lo.min(h), hi.max(h))
    });
    if lo == hi {
        return Err(Error::DegenerateFit("all fields are equal".into()));
    }
    let c = params.coefficients();
    let base = action_integral(energy, 0.0, &c)?.exponent;
    let ratios = fields
        .iter()
        .map(|&h| Ok((h, action_integral(energy, h, &c)?.exponent / base)))
        .collect::<Result<Vec<_>>>()?;
    let sxx: f64 = ratios.iter().map(|(h, _)| h.powi(4)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit("all fields are zero".into()));
    }
    let sxy: f64 = ratios.iter().map(|(h, r)| h * h * (r - 1.0)).sum();
    let chi = sxy / sxx;
    let residual =
        (ratios.iter().map(|(h, r)| (r - 1.0 - chi * h * h).powi(2)).sum::<f64>() / ratios.len() as f64).sqrt();
    Ok(ChiFit {
        energy,
        chi,
        residual,
        ratios,
    })
}

/// Every closed-form longitudinal-field quantity for one parameter set.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldFormulaReport {
    /// Ground-doublet gap per Tesla, K/T.
    pub gap_coefficient: f64,
    /// Signed shift of the deeper-well ground level per Tesla, K/T.
    pub per_well_slope: f64,
    pub matching_harmonic: f64,
    pub matching_mass_route: f64,
    pub saturation: f64,
    pub chi: Option<ChiFit>,
}

pub fn field_formulas(params: &ClusterParams) -> Result<FieldFormulaReport> {
    let (saturation, matching_mass_route) = saturation_and_matching_mass_route(params)?;
    Ok(FieldFormulaReport {
        gap_coefficient: gap_linear_coefficient(params),
        per_well_slope: -per_well_slope(params).abs(),
        matching_harmonic: matching_field_harmonic(params),
        matching_mass_route,
        saturation,
        chi: None,
    })
}
