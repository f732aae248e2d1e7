//! Reproduction table: every published Fe8 number recomputed and compared
//! at a fixed tolerance.

use std::f64::consts::PI;

use crate::analysis::{compare_doublets, zero_field_spectra, EnergyPolicy};
use crate::angle::{angle_spectrum, barrier_height, build_angle_hamiltonian, FourierBasisSpec};
use crate::error::Result;
use crate::model::{inverse_mass, potential, ClusterParams, EffectiveCoefficients};
use crate::numerics::{eig_symmetric, integrate_adaptive};
use crate::semiclassics::{
    asymmetric_wkb_splitting, field_formulas, harmonic_well, khw_mg_splitting, parabolic_splitting, penetrability,
    turning_points, wkb_splitting, SplitMethod,
};
use crate::spin::{build_spin_hamiltonian, gap_vs_field_scan, reference_spectrum};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    /// Criterion number and sub-item, e.g. `5b`.
    pub id: String,
    pub quantity: String,
    pub value: f64,
    pub target: f64,
    pub tolerance: f64,
    pub passed: bool,
}

fn outcome(id: &str, quantity: &str, value: f64, target: f64, tolerance: f64) -> CheckOutcome {
    CheckOutcome {
        id: id.to_string(),
        quantity: quantity.to_string(),
        value,
        target,
        tolerance,
        passed: (value - target).abs() <= tolerance,
    }
}

/// Scan used for the reference gap slope: 0 to 0.05 T in 5 mT steps.
pub fn slope_fields() -> Vec<f64> {
    (0..=10).map(|i| i as f64 * 0.005).collect()
}

/// Runs every check for the Fe8 parameter set.
pub fn run_checks() -> Result<Vec<CheckOutcome>> {
    let p = ClusterParams::fe8();
    let c = p.coefficients();
    let spec = FourierBasisSpec::default_for(&p);
    let mut out = Vec::new();

    let angle = angle_spectrum(&p, 0.0, &spec)?;
    out.push(outcome(
        "1",
        "angle-model ground energy [K]",
        angle.ground_energy(),
        -27.6447,
        0.002,
    ));
    out.push(outcome(
        "2",
        "numeric barrier h_b [K]",
        barrier_height(&angle, &c)?,
        22.58,
        0.005,
    ));

    let hw = harmonic_well(&p);
    out.push(outcome("3a", "harmonic E_min [K]", hw.e_min, -30.25, 1e-12));
    out.push(outcome("3b", "harmonic E_gs [K]", hw.e_gs, -27.41, 0.01));
    out.push(outcome("3c", "harmonic h_b [K]", hw.barrier, 22.35, 0.01));

    let spectra = zero_field_spectra(&p, &spec)?;
    let rows = compare_doublets(&spectra, EnergyPolicy::default())?;
    let ref0 = rows[0].reference.splitting();
    out.push(outcome(
        "4",
        "reference lowest splitting [K]",
        ref0,
        6.8e-10,
        0.15 * 6.8e-10,
    ));

    let wkb0 = rows[0].estimate(SplitMethod::Wkb).map_or(f64::NAN, |e| e.splitting);
    out.push(outcome("5a", "WKB lowest splitting [K]", wkb0, 8.9e-10, 0.20 * 8.9e-10));
    for (k, target) in [(0usize, 14.7), (1, 9.0), (2, 8.0)] {
        let dev = rows[k].deviation(SplitMethod::Wkb).unwrap_or(f64::NAN);
        let id = format!("5{}", ['b', 'c', 'd'][k]);
        out.push(outcome(
            &id,
            &format!("WKB deviation, doublet {} [%]", k + 1),
            dev,
            target,
            3.0,
        ));
    }
    for (k, target) in [(0usize, 31.0), (1, 8.0), (2, 5.0)] {
        let dev = rows[k].angle_deviation().unwrap_or(f64::NAN);
        let id = format!("6{}", ['a', 'b', 'c'][k]);
        out.push(outcome(
            &id,
            &format!("angle-model deviation, doublet {} [%]", k + 1),
            dev,
            target,
            5.0,
        ));
    }

    let khw = khw_mg_splitting(-5.34, &p)?;
    let near_top = spectra
        .reference_doublets
        .nearest(-5.34)
        .map_or(f64::NAN, |r| r.splitting());
    out.push(outcome(
        "7a",
        "KHW/MG splitting at |E| = 5.34 K [K]",
        khw.splitting,
        0.65,
        0.02,
    ));
    out.push(outcome(
        "7b",
        "reference splitting near |E| = 5.34 K [K]",
        near_top,
        0.72,
        0.02,
    ));
    out.push(outcome(
        "7c",
        "penetrability at the barrier top",
        penetrability(c.v3, &p)?,
        0.5,
        0.0,
    ));

    let par = parabolic_splitting(-7.5, &p)?;
    let near_par = spectra
        .reference_doublets
        .nearest(-7.5)
        .map_or(f64::NAN, |r| r.splitting());
    out.push(outcome(
        "8a",
        "parabolic splitting at |E| = 7.5 K [K]",
        par.splitting,
        0.14,
        0.01,
    ));
    out.push(outcome(
        "8b",
        "reference splitting near |E| = 7.5 K [K]",
        near_par,
        0.13,
        0.01,
    ));

    let ff = field_formulas(&p)?;
    out.push(outcome(
        "9a",
        "gap linear coefficient [K/T]",
        ff.gap_coefficient,
        26.79,
        0.01,
    ));
    out.push(outcome(
        "9b",
        "matching field, harmonic [T]",
        ff.matching_harmonic,
        0.2239,
        0.0005,
    ));
    out.push(outcome(
        "9c",
        "matching field, mass route [T]",
        ff.matching_mass_route,
        0.216,
        0.001,
    ));
    out.push(outcome("9d", "saturation field [T]", ff.saturation, 4.32, 0.005));

    let slope = gap_vs_field_scan(&p, &slope_fields())?.slope()?;
    out.push(outcome(
        "10",
        "reference gap slope over 0-0.05 T [K/T]",
        slope,
        26.85,
        0.1,
    ));

    out.extend(property_checks(&p, &c)?);
    Ok(out)
}

fn property_checks(p: &ClusterParams, c: &EffectiveCoefficients) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();

    let mut block_err: f64 = 0.0;
    for two_s in [4, 10, 20] {
        let q = ClusterParams::new(p.d(), p.e(), two_s, p.g())?;
        let full = eig_symmetric(&build_spin_hamiltonian(&q, 0.0), false)?.values;
        let blocks = reference_spectrum(&q, 0.0)?.energies();
        for (a, b) in full.iter().zip(&blocks) {
            block_err = block_err.max((a - b).abs());
        }
    }
    out.push(outcome(
        "11a",
        "block union vs full spectrum, S = 2, 5, 10 [K]",
        block_err,
        0.0,
        1e-12,
    ));

    let rotor = EffectiveCoefficients {
        v1: 0.0,
        v2: 0.0,
        m1: 0.0,
        m2: 0.0,
        ..*c
    };
    let spec = FourierBasisSpec::new(20)?;
    let values = eig_symmetric(&build_angle_hamiltonian(&rotor, 0.0, &spec), false)?.values;
    let mut expected: Vec<f64> = (-20i32..=20)
        .map(|n| 0.5 * rotor.m3 * f64::from(n * n) + rotor.v3)
        .collect();
    expected.sort_by(f64::total_cmp);
    let rotor_err = values
        .iter()
        .zip(&expected)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    out.push(outcome("11b", "free-rotor eigenvalues [K]", rotor_err, 0.0, 1e-12));

    let sym = wkb_splitting(-27.54, p)?.splitting;
    let asym = asymmetric_wkb_splitting(-27.54, 0.0, p)?.splitting;
    out.push(outcome(
        "11c",
        "asymmetric vs symmetric WKB at H = 0 (relative)",
        (asym - sym).abs() / sym,
        0.0,
        1e-14,
    ));

    let (phi_i, phi_s) = turning_points(-20.0, 0.0, c)?;
    let f = |x: f64| 1.0 / inverse_mass(x, 0.0, c);
    let quad = integrate_adaptive(|x| Ok(f(x)), phi_i, phi_s, 1e-12)?;
    let n = 1_000_000;
    let h = (phi_s - phi_i) / n as f64;
    let riemann = (0..n).map(|i| f(phi_i + (i as f64 + 0.5) * h)).sum::<f64>() * h;
    out.push(outcome(
        "11d",
        "quadrature vs midpoint oracle (relative)",
        (quad - riemann).abs() / riemann,
        0.0,
        1e-8,
    ));

    let ff = field_formulas(p)?;
    let identity = ff.saturation / f64::from(p.two_s()) - ff.matching_mass_route;
    out.push(outcome(
        "11e",
        "saturation / 2S - matching field [T]",
        identity,
        0.0,
        0.0,
    ));

    let khw_top = khw_mg_splitting(c.v3, p)?;
    out.push(outcome(
        "11f",
        "KHW/MG penetrability at V0",
        khw_top.penetrability.unwrap_or(f64::NAN),
        0.5,
        0.0,
    ));

    let sym_err = (0..360)
        .map(|i| {
            let phi = 2.0 * PI * i as f64 / 360.0;
            let dv = (potential(phi, 0.0, c) - potential(2.0 * PI - phi, 0.0, c)).abs();
            let dm = (inverse_mass(phi, 0.0, c) - inverse_mass(phi + PI, 0.0, c)).abs();
            dv.max(dm)
        })
        .fold(0.0, f64::max);
    out.push(outcome(
        "11g",
        "zero-field figure symmetry (max asymmetry) [K]",
        sym_err,
        0.0,
        1e-12,
    ));
    Ok(out)
}
