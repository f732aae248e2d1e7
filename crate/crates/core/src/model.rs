//! Physical parameters of the cluster and the angle-model functions derived
//! from them.
//!
//! Energies are in Kelvin (energy divided by k_B) and fields in Tesla, with
//! ħ = k_B = 1 throughout.

use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// Bohr magneton over Boltzmann constant used unless overridden, K/T.
///
/// Chosen so that the saturation and matching fields of the Fe8 cluster come
/// out as 4.32 T and 0.216 T; the CODATA value is 0.67171 K/T.
pub const DEFAULT_MU_B_OVER_KB: f64 = 0.6717;

const KEY_D: &str = "D_K";
const KEY_E: &str = "E_K";
const KEY_TWO_S: &str = "two_S";
const KEY_G: &str = "g";
const KEY_MU_B: &str = "mu_B_over_kB_K_per_T";

/// Physical inputs of a cluster: anisotropy constants, spin and g-factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClusterParams {
    d: f64,
    e: f64,
    two_s: u32,
    g: f64,
    mu_b_over_kb: f64,
}

fn invalid(key: &str, reason: impl Into<String>) -> Error {
    Error::InvalidParams {
        key: key.to_string(),
        reason: reason.into(),
    }
}

impl ClusterParams {
    /// Builds a parameter set with the default μ_B/k_B.
    pub fn new(d: f64, e: f64, two_s: u32, g: f64) -> Result<Self> {
        Self::with_mu_b(d, e, two_s, g, DEFAULT_MU_B_OVER_KB)
    }

    pub fn with_mu_b(d: f64, e: f64, two_s: u32, g: f64, mu_b_over_kb: f64) -> Result<Self> {
        if !d.is_finite() || d <= 0.0 {
            return Err(invalid(KEY_D, format!("must be positive, got {d}")));
        }
        if !e.is_finite() || e < 0.0 {
            return Err(invalid(KEY_E, format!("must be non-negative, got {e}")));
        }
        if d <= e {
            return Err(invalid(
                KEY_E,
                format!("easy-axis regime requires D > E, got D = {d}, E = {e}"),
            ));
        }
        if two_s == 0 {
            return Err(invalid(KEY_TWO_S, "spin must be at least 1/2 (two_S >= 1)"));
        }
        if !g.is_finite() {
            return Err(invalid(KEY_G, format!("must be finite, got {g}")));
        }
        if !mu_b_over_kb.is_finite() || mu_b_over_kb <= 0.0 {
            return Err(invalid(KEY_MU_B, format!("must be positive, got {mu_b_over_kb}")));
        }
        Ok(Self {
            d,
            e,
            two_s,
            g,
            mu_b_over_kb,
        })
    }

    /// The Fe8 cluster: D = 0.275 K, E = 0.046 K, S = 10, g = 2.
    pub fn fe8() -> Self {
        Self::new(0.275, 0.046, 20, 2.0).expect("Fe8 parameters are valid")
    }

    pub fn d(&self) -> f64 {
        self.d
    }

    pub fn e(&self) -> f64 {
        self.e
    }

    pub fn two_s(&self) -> u32 {
        self.two_s
    }

    /// Total spin S.
    pub fn spin(&self) -> f64 {
        f64::from(self.two_s) / 2.0
    }

    /// S(S+1).
    pub fn spin_casimir(&self) -> f64 {
        let s = self.spin();
        s * (s + 1.0)
    }

    /// Hilbert-space dimension 2S+1.
    pub fn dim(&self) -> usize {
        self.two_s as usize + 1
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    pub fn mu_b_over_kb(&self) -> f64 {
        self.mu_b_over_kb
    }

    /// Zeeman coupling A = g μ_B / k_B, K/T.
    pub fn zeeman(&self) -> f64 {
        self.g * self.mu_b_over_kb
    }

    /// Parses the JSON parameter file format.
    ///
    /// ```text
    /// {"D_K": 0.275, "E_K": 0.046, "two_S": 20, "g": 2.0, "mu_B_over_kB_K_per_T": 0.6717}
    /// ```
    ///
    /// The last key is optional. Unknown keys are rejected.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let value: Value =
            serde_json::from_str(text).map_err(|err| invalid("<document>", format!("malformed JSON: {err}")))?;
        Self::from_json_value(&value)
    }

    pub fn from_json_value(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| invalid("<document>", "expected a JSON object"))?;
        for key in obj.keys() {
            if ![KEY_D, KEY_E, KEY_TWO_S, KEY_G, KEY_MU_B].contains(&key.as_str()) {
                return Err(invalid(key, "unknown key"));
            }
        }
        let d = number(obj, KEY_D)?;
        let e = number(obj, KEY_E)?;
        let two_s = match obj.get(KEY_TWO_S) {
            None => return Err(invalid(KEY_TWO_S, "missing")),
            Some(v) => v
                .as_u64()
                .and_then(|n| u32::try_from(n).ok())
                .ok_or_else(|| invalid(KEY_TWO_S, format!("expected a non-negative integer, got {v}")))?,
        };
        let g = number(obj, KEY_G)?;
        let mu = match obj.get(KEY_MU_B) {
            None => DEFAULT_MU_B_OVER_KB,
            Some(_) => number(obj, KEY_MU_B)?,
        };
        Self::with_mu_b(d, e, two_s, g, mu)
    }

    pub fn to_json_value(&self) -> Value {
        serde_json::json!({
            KEY_D: self.d,
            KEY_E: self.e,
            KEY_TWO_S: self.two_s,
            KEY_G: self.g,
            KEY_MU_B: self.mu_b_over_kb,
        })
    }

    pub fn coefficients(&self) -> EffectiveCoefficients {
        derive_coefficients(self)
    }
}

fn number(obj: &Map<String, Value>, key: &str) -> Result<f64> {
    match obj.get(key) {
        None => Err(invalid(key, "missing")),
        Some(v) => v
            .as_f64()
            .ok_or_else(|| invalid(key, format!("expected a number, got {v}"))),
    }
}

/// Coefficients of the angle-model potential
/// `V(φ) = v1 cos²φ + v2 H cosφ + v3` and inverse mass
/// `1/M(φ) = m1 cos²φ + m2 H cosφ + m3`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveCoefficients {
    pub v1: f64,
    pub v2: f64,
    pub v3: f64,
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
}

pub fn derive_coefficients(params: &ClusterParams) -> EffectiveCoefficients {
    let (d, e) = (params.d, params.e);
    let ss = params.spin_casimir();
    let a = params.zeeman();
    EffectiveCoefficients {
        v1: -(d - e) * ss,
        v2: -a * ss.sqrt(),
        v3: -e * ss,
        m1: 2.0 * (d - e),
        m2: a / params.spin(),
        m3: 4.0 * e,
    }
}

/// Angle-model potential energy, K.
pub fn potential(phi: f64, field: f64, c: &EffectiveCoefficients) -> f64 {
    let x = phi.cos();
    c.v1 * x * x + c.v2 * field * x + c.v3
}

/// Reciprocal effective mass 1/M(φ), K.
pub fn inverse_mass(phi: f64, field: f64, c: &EffectiveCoefficients) -> f64 {
    let x = phi.cos();
    c.m1 * x * x + c.m2 * field * x + c.m3
}

/// Effective mass M(φ), 1/K. Fails where the inverse mass is not positive.
pub fn mass(phi: f64, field: f64, c: &EffectiveCoefficients) -> Result<f64> {
    let inv = inverse_mass(phi, field, c);
    if inv <= 0.0 {
        return Err(Error::TunnelingBlocked {
            phi,
            saturation: saturation_field(c),
        });
    }
    Ok(1.0 / inv)
}

/// Field at which the minimum of the inverse mass over φ first reaches zero.
pub(crate) fn saturation_field(c: &EffectiveCoefficients) -> f64 {
    2.0 * (c.m1 * c.m3).sqrt() / c.m2
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn fe8_coefficients() {
        let c = ClusterParams::fe8().coefficients();
        assert!((c.v3 - -5.06).abs() < 1e-12);
        assert!((c.v1 - -25.19).abs() < 1e-12);
        assert!((c.m1 - 0.458).abs() < 1e-12);
        assert!((c.m3 - 0.184).abs() < 1e-12);
        let ss = 110.0;
        assert!((c.v1 + c.m1 * ss / 2.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_anisotropy_zeroes_formulas() {
        // Bypasses the constructor, which rejects D = E.
        let p = ClusterParams {
            d: 0.1,
            e: 0.1,
            two_s: 20,
            g: 2.0,
            mu_b_over_kb: DEFAULT_MU_B_OVER_KB,
        };
        let c = derive_coefficients(&p);
        assert_eq!(c.v1, 0.0);
        assert_eq!(c.m1, 0.0);
        assert!(ClusterParams::new(0.1, 0.1, 20, 2.0).is_err());
    }

    #[test]
    fn potential_reference_points() {
        let c = ClusterParams::fe8().coefficients();
        assert!((potential(0.0, 0.0, &c) - -30.25).abs() < 1e-12);
        for h in [0.0, 0.3, -2.0] {
            assert!((potential(FRAC_PI_2, h, &c) - -5.06).abs() < 1e-12);
            assert!((inverse_mass(FRAC_PI_2, h, &c) - 0.184).abs() < 1e-12);
        }
        assert!((inverse_mass(0.0, 0.0, &c) - 0.642).abs() < 1e-12);
        assert!((mass(FRAC_PI_2, 0.0, &c).unwrap() - 1.0 / (4.0 * 0.046)).abs() < 1e-12);
    }

    #[test]
    fn inverse_mass_touches_zero_at_saturation() {
        let c = ClusterParams::fe8().coefficients();
        let h = saturation_field(&c);
        assert!((h - 4.32).abs() < 5e-3);
        let x = -(c.m3 / c.m1).sqrt();
        assert!((x - -0.634).abs() < 1e-3);
        let phi = x.acos();
        assert!(inverse_mass(phi, h, &c).abs() < 1e-14);
        // Double root: the minimum over a fine grid is zero to rounding.
        let min = (0..20000)
            .map(|i| inverse_mass(2.0 * PI * i as f64 / 20000.0, h, &c))
            .fold(f64::INFINITY, f64::min);
        assert!(min > -1e-12 && min < 1e-6);
        assert!(matches!(mass(phi, h * 1.01, &c), Err(Error::TunnelingBlocked { .. })));
    }

    #[test]
    fn stationary_at_zero_and_pi() {
        let c = ClusterParams::fe8().coefficients();
        let step = 1e-5;
        for h in [0.0, 0.2, 1.5] {
            for phi in [0.0, PI] {
                let dv = (potential(phi + step, h, &c) - potential(phi - step, h, &c)) / (2.0 * step);
                assert!(dv.abs() < 1e-12, "dV/dphi = {dv} at phi = {phi}, H = {h}");
            }
        }
    }

    #[test]
    fn rejects_invalid_params() {
        assert!(ClusterParams::new(-1.0, 0.0, 20, 2.0).is_err());
        assert!(ClusterParams::new(0.3, -0.1, 20, 2.0).is_err());
        assert!(ClusterParams::new(0.3, 0.1, 0, 2.0).is_err());
        assert!(ClusterParams::with_mu_b(0.3, 0.1, 20, 2.0, 0.0).is_err());
        assert!(ClusterParams::new(0.3, 0.0, 1, 2.0).is_ok());
    }

    #[test]
    fn json_round_trip_and_key_errors() {
        let p = ClusterParams::from_json_str(r#"{"D_K": 0.275, "E_K": 0.046, "two_S": 20, "g": 2}"#).unwrap();
        assert_eq!(p, ClusterParams::fe8());
        let back = ClusterParams::from_json_value(&p.to_json_value()).unwrap();
        assert_eq!(back, p);

        let err = ClusterParams::from_json_str(r#"{"D_K": 0.275, "E_K": "x", "two_S": 20, "g": 2}"#).unwrap_err();
        assert!(err.to_string().contains("E_K"), "{err}");
        let err = ClusterParams::from_json_str(r#"{"D_K": 0.275, "E_K": 0.046, "two_S": 20.5, "g": 2}"#).unwrap_err();
        assert!(err.to_string().contains("two_S"), "{err}");
        let err =
            ClusterParams::from_json_str(r#"{"D_K": 0.275, "E_K": 0.046, "two_S": 20, "g": 2, "B": 1}"#).unwrap_err();
        assert!(err.to_string().contains("`B`"), "{err}");
        let err = ClusterParams::from_json_str(r#"{"E_K": 0.046, "two_S": 20, "g": 2}"#).unwrap_err();
        assert!(err.to_string().contains("D_K"), "{err}");
    }
}
