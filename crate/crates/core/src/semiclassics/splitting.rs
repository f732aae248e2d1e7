use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use crate::error::{Error, Result};
use crate::model::{inverse_mass, potential, saturation_field, ClusterParams, EffectiveCoefficients};
use crate::numerics::{find_root_bracketed, integrate_adaptive, integrate_sqrt_barrier, DEFAULT_QUAD_TOL};

/// Distance kept from the well bottoms when bracketing turning points, rad.
const BRACKET_GUARD: f64 = 1e-6;
const ROOT_TOL: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SplitMethod {
    Wkb,
    KhwMg,
    Parabolic,
    AsymmetricWkb,
}

impl fmt::Display for SplitMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SplitMethod::Wkb => "WKB",
            SplitMethod::KhwMg => "KHW_MG",
            SplitMethod::Parabolic => "parabolic",
            SplitMethod::AsymmetricWkb => "asymmetric_WKB",
        })
    }
}

/// A tunneling-splitting estimate with the intermediate quantities that
/// produced it. Fields a method does not use are `None`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplittingEstimate {
    pub method: SplitMethod,
    /// Level energy fed to the formula, K.
    pub energy: f64,
    /// ΔE, K.
    pub splitting: f64,
    /// Potential at the barrier top, K.
    pub barrier_top: f64,
    pub turning_points: Option<(f64, f64)>,
    /// Averaged mass 𝓜, 1/K.
    pub averaged_mass: Option<f64>,
    /// `√(2𝓜) ∫ √(V − ℰ) dφ`.
    pub action: Option<f64>,
    pub omega_b: Option<f64>,
    pub omega_t: Option<f64>,
    pub omega_1: Option<f64>,
    pub omega_2: Option<f64>,
    /// Depth `h_p = V(π/2) − V(0)`, K.
    pub barrier_depth: Option<f64>,
    pub penetrability: Option<f64>,
}

impl SplittingEstimate {
    fn new(method: SplitMethod, energy: f64, splitting: f64, barrier_top: f64) -> Self {
        Self {
            method,
            energy,
            splitting,
            barrier_top,
            turning_points: None,
            averaged_mass: None,
            action: None,
            omega_b: None,
            omega_t: None,
            omega_1: None,
            omega_2: None,
            barrier_depth: None,
            penetrability: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarrierTop {
    pub phi: f64,
    pub energy: f64,
}

/// Maximum of `V` between the wells at φ = 0 and φ = π.
///
/// `V'(φ) = −sinφ (2 V1 cosφ + V2 H)` vanishes at `cos φ* = −V2 H / (2 V1)`;
/// at zero field φ* = π/2.
pub fn barrier_top(field: f64, c: &EffectiveCoefficients) -> Result<BarrierTop> {
    let x = -c.v2 * field / (2.0 * c.v1);
    if x.is_nan() || x.abs() >= 1.0 {
        return Err(Error::InvalidInput(format!(
            "no barrier between the wells at H = {field} T (the shallower well has vanished)"
        )));
    }
    let phi = x.acos();
    Ok(BarrierTop {
        phi,
        energy: potential(phi, field, c),
    })
}

/// Classical turning points `φ_i < φ* < φ_s` where `V(φ) = ℰ`.
pub fn turning_points(energy: f64, field: f64, c: &EffectiveCoefficients) -> Result<(f64, f64)> {
    let top = barrier_top(field, c)?;
    if energy >= top.energy {
        return Err(Error::AboveBarrier {
            energy,
            top: top.energy,
        });
    }
    let bottom = potential(0.0, field, c).max(potential(PI, field, c));
    if energy <= bottom {
        return Err(Error::BelowWell { energy, bottom });
    }
    let f = |phi: f64| potential(phi, field, c) - energy;
    let lo = if f(BRACKET_GUARD) < 0.0 { BRACKET_GUARD } else { 0.0 };
    let hi = if f(PI - BRACKET_GUARD) < 0.0 {
        PI - BRACKET_GUARD
    } else {
        PI
    };
    let phi_i = find_root_bracketed(f, lo, top.phi, ROOT_TOL)?;
    let phi_s = find_root_bracketed(f, top.phi, hi, ROOT_TOL)?;
    Ok((phi_i, phi_s))
}

/// Smallest inverse mass on `[phi_i, phi_s]` (closed form in cos φ) and
/// where it occurs.
fn min_inverse_mass(phi_i: f64, phi_s: f64, field: f64, c: &EffectiveCoefficients) -> (f64, f64) {
    let mut best = (inverse_mass(phi_i, field, c), phi_i);
    let end = (inverse_mass(phi_s, field, c), phi_s);
    if end.0 < best.0 {
        best = end;
    }
    if c.m1 > 0.0 {
        let x = -c.m2 * field / (2.0 * c.m1);
        let (x_lo, x_hi) = (phi_s.cos(), phi_i.cos());
        if x > x_lo && x < x_hi {
            let phi = x.acos();
            let v = inverse_mass(phi, field, c);
            if v < best.0 {
                best = (v, phi);
            }
        }
    }
    best
}

fn averaged_mass_between(phi_i: f64, phi_s: f64, field: f64, c: &EffectiveCoefficients) -> Result<f64> {
    let (min, at) = min_inverse_mass(phi_i, phi_s, field, c);
    if min <= 0.0 {
        return Err(Error::TunnelingBlocked {
            phi: at,
            saturation: saturation_field(c),
        });
    }
    let width = phi_s - phi_i;
    if width <= 1e-12 {
        return Ok(1.0 / inverse_mass(0.5 * (phi_i + phi_s), field, c));
    }
    let total = integrate_adaptive(
        |phi| Ok(1.0 / inverse_mass(phi, field, c)),
        phi_i,
        phi_s,
        DEFAULT_QUAD_TOL,
    )?;
    Ok(total / width)
}

/// Mean of `M(φ)` over the classically forbidden interval at energy ℰ, 1/K.
pub fn averaged_mass(energy: f64, field: f64, c: &EffectiveCoefficients) -> Result<f64> {
    let (phi_i, phi_s) = turning_points(energy, field, c)?;
    averaged_mass_between(phi_i, phi_s, field, c)
}

/// The barrier-penetration exponent and its ingredients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ActionIntegral {
    pub phi_i: f64,
    pub phi_s: f64,
    pub averaged_mass: f64,
    /// `∫ √(V − ℰ) dφ` between the turning points.
    pub integral: f64,
    /// `√(2𝓜)` times the integral.
    pub exponent: f64,
}

pub fn action_integral(energy: f64, field: f64, c: &EffectiveCoefficients) -> Result<ActionIntegral> {
    let (phi_i, phi_s) = turning_points(energy, field, c)?;
    let mass = averaged_mass_between(phi_i, phi_s, field, c)?;
    let integral = integrate_sqrt_barrier(|phi| potential(phi, field, c) - energy, phi_i, phi_s, DEFAULT_QUAD_TOL)?;
    Ok(ActionIntegral {
        phi_i,
        phi_s,
        averaged_mass: mass,
        integral,
        exponent: (2.0 * mass).sqrt() * integral,
    })
}

/// Well frequency `2√((D² − E²) S(S+1))`.
fn omega_well(params: &ClusterParams) -> f64 {
    let (d, e) = (params.d(), params.e());
    2.0 * ((d * d - e * e) * params.spin_casimir()).sqrt()
}

/// Barrier-top frequency `2√(2E(D − E) S(S+1))`.
fn omega_top(params: &ClusterParams) -> Result<f64> {
    let (d, e) = (params.d(), params.e());
    if e == 0.0 {
        return Err(Error::ZeroTransverse);
    }
    Ok(2.0 * (2.0 * e * (d - e) * params.spin_casimir()).sqrt())
}

/// Symmetric-well WKB splitting `(ω_b/π) exp(−√(2𝓜) ∫ √(V − ℰ) dφ)` at zero
/// field. Meant for levels far below the barrier top.
pub fn wkb_splitting(energy: f64, params: &ClusterParams) -> Result<SplittingEstimate> {
    let c = params.coefficients();
    let top = potential(FRAC_PI_2, 0.0, &c);
    let act = action_integral(energy, 0.0, &c)?;
    let omega_b = omega_well(params);
    let mut est = SplittingEstimate::new(SplitMethod::Wkb, energy, omega_b / PI * (-act.exponent).exp(), top);
    est.turning_points = Some((act.phi_i, act.phi_s));
    est.averaged_mass = Some(act.averaged_mass);
    est.action = Some(act.exponent);
    est.omega_b = Some(omega_b);
    Ok(est)
}

/// WKB splitting for the field-tilted double well, with the geometric mean
/// of the two harmonic well frequencies as prefactor:
/// `ω₁² = (M1 + M2 H + M3)(−2V1 − V2 H)` at φ = 0 and
/// `ω₂² = (M1 − M2 H + M3)(−2V1 + V2 H)` at φ = π.
pub fn asymmetric_wkb_splitting(energy: f64, field: f64, params: &ClusterParams) -> Result<SplittingEstimate> {
    let c = params.coefficients();
    let top = barrier_top(field, &c)?;
    let act = action_integral(energy, field, &c)?;
    let w1_sq = (c.m1 + c.m2 * field + c.m3) * (-2.0 * c.v1 - c.v2 * field);
    let w2_sq = (c.m1 - c.m2 * field + c.m3) * (-2.0 * c.v1 + c.v2 * field);
    if w1_sq <= 0.0 || w2_sq <= 0.0 {
        return Err(Error::TunnelingBlocked {
            phi: if w1_sq <= 0.0 { 0.0 } else { PI },
            saturation: saturation_field(&c),
        });
    }
    let (w1, w2) = (w1_sq.sqrt(), w2_sq.sqrt());
    let splitting = (w1 * w2).sqrt() / PI * (-act.exponent).exp();
    let mut est = SplittingEstimate::new(SplitMethod::AsymmetricWkb, energy, splitting, top.energy);
    est.turning_points = Some((act.phi_i, act.phi_s));
    est.averaged_mass = Some(act.averaged_mass);
    est.action = Some(act.exponent);
    est.omega_1 = Some(w1);
    est.omega_2 = Some(w2);
    Ok(est)
}

/// KHW/MG barrier penetrability `1 / (1 + exp(2π(V0 − ℰ)/ω_t))`.
///
/// Equal to 1/2 at the barrier top.
pub fn penetrability(energy: f64, params: &ClusterParams) -> Result<f64> {
    let omega_t = omega_top(params)?;
    let v0 = params.coefficients().v3;
    Ok(1.0 / (1.0 + (2.0 * PI * (v0 - energy) / omega_t).exp()))
}

/// Splitting of a level at the barrier top: `(ω_b/π) P(ℰ)`.
///
/// For a bound level (ℰ < 0) the exponent `2π(V0 − ℰ)/ω_t` equals
/// `π(|ℰ| − E S(S+1)) / √(2E(D − E) S(S+1))`.
pub fn khw_mg_splitting(energy: f64, params: &ClusterParams) -> Result<SplittingEstimate> {
    let omega_t = omega_top(params)?;
    let omega_b = omega_well(params);
    let p = penetrability(energy, params)?;
    let mut est = SplittingEstimate::new(SplitMethod::KhwMg, energy, omega_b / PI * p, params.coefficients().v3);
    est.omega_b = Some(omega_b);
    est.omega_t = Some(omega_t);
    est.penetrability = Some(p);
    Ok(est)
}

/// Parabolic-barrier splitting for levels just below the top:
/// `(ω_b/π) exp(−π(V0 − ℰ) / (2√(2E h_p)))` with `h_p = (D − E) S(S+1)`.
///
/// `V0 − ℰ` is the `|ℰ| − |V0|` distance below the top for bound levels.
pub fn parabolic_splitting(energy: f64, params: &ClusterParams) -> Result<SplittingEstimate> {
    let omega_t = omega_top(params)?;
    let c = params.coefficients();
    let depth = potential(FRAC_PI_2, 0.0, &c) - potential(0.0, 0.0, &c);
    let omega_b = omega_well(params);
    let splitting = omega_b / PI * (-PI * (c.v3 - energy) / (2.0 * (2.0 * params.e() * depth).sqrt())).exp();
    let mut est = SplittingEstimate::new(SplitMethod::Parabolic, energy, splitting, c.v3);
    est.omega_b = Some(omega_b);
    est.omega_t = Some(omega_t);
    est.barrier_depth = Some(depth);
    Ok(est)
}

/// Zero-field estimates considered valid at ℰ: WKB more than `2ω_t` below
/// the top, parabolic within `2ω_t` below it, KHW/MG within `ω_t/2` on
/// either side.
pub fn applicable_methods(energy: f64, params: &ClusterParams) -> Vec<SplitMethod> {
    let below = params.coefficients().v3 - energy;
    let Ok(omega_t) = omega_top(params) else {
        return if below > 0.0 { vec![SplitMethod::Wkb] } else { vec![] };
    };
    let mut out = Vec::new();
    if below > 2.0 * omega_t {
        out.push(SplitMethod::Wkb);
    }
    if below > 0.0 && below <= 2.0 * omega_t {
        out.push(SplitMethod::Parabolic);
    }
    if below.abs() <= 0.5 * omega_t {
        out.push(SplitMethod::KhwMg);
    }
    out
}
