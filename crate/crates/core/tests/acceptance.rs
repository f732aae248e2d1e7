//! Acceptance criteria for the Fe8 reproduction. Each test prints one
//! PASS/FAIL line per item; run with `--nocapture` to see them.

use std::f64::consts::PI;

use spintun_core::analysis::{compare_doublets, zero_field_spectra, EnergyPolicy, ZeroFieldSpectra};
use spintun_core::angle::{angle_spectrum, barrier_height, build_angle_hamiltonian, FourierBasisSpec};
use spintun_core::numerics::{eig_symmetric, integrate_adaptive};
use spintun_core::semiclassics::{
    asymmetric_wkb_splitting, harmonic_well, khw_mg_splitting, matching_field_harmonic, parabolic_splitting,
    penetrability, saturation_and_matching_mass_route, turning_points, wkb_splitting, SplitMethod,
};
use spintun_core::spin::{build_spin_hamiltonian, gap_vs_field_scan, reference_spectrum};
use spintun_core::{inverse_mass, potential, ClusterParams, EffectiveCoefficients};

fn check(id: &str, what: &str, value: f64, target: f64, tol: f64) -> bool {
    let ok = (value - target).abs() <= tol;
    println!(
        "[{}] criterion {id}: {what} = {value:.6e} (target {target:e} ± {tol:e})",
        if ok { "PASS" } else { "FAIL" }
    );
    ok
}

fn fe8() -> ClusterParams {
    ClusterParams::fe8()
}

fn spectra() -> ZeroFieldSpectra {
    let p = fe8();
    zero_field_spectra(&p, &FourierBasisSpec::default_for(&p)).unwrap()
}

#[test]
fn criterion_01_angle_ground_state() {
    let p = fe8();
    let s = angle_spectrum(&p, 0.0, &FourierBasisSpec::default_for(&p)).unwrap();
    assert!(check(
        "1",
        "angle-model ground energy [K]",
        s.ground_energy(),
        -27.6447,
        0.002
    ));
}

#[test]
fn criterion_02_numeric_barrier() {
    let p = fe8();
    let s = angle_spectrum(&p, 0.0, &FourierBasisSpec::default_for(&p)).unwrap();
    let hb = barrier_height(&s, &p.coefficients()).unwrap();
    assert!(check("2", "numeric barrier h_b [K]", hb, 22.58, 0.005));
}

#[test]
fn criterion_03_harmonic_analytics() {
    let r = harmonic_well(&fe8());
    let results = [
        check("3a", "E_min [K]", r.e_min, -30.25, 1e-12),
        check("3b", "harmonic E_gs [K]", r.e_gs, -27.41, 0.01),
        check("3c", "harmonic h_b [K]", r.barrier, 22.35, 0.01),
    ];
    assert!(results.iter().all(|&ok| ok));
}

#[test]
fn criterion_04_reference_lowest_splitting() {
    let s = spectra();
    let first = s.reference_doublets.rows[0];
    assert_ne!(
        first.lower.tag.exchange, first.upper.tag.exchange,
        "partners must come from different blocks"
    );
    assert!(check(
        "4",
        "reference ΔE_ref [K]",
        first.splitting(),
        6.8e-10,
        0.15 * 6.8e-10
    ));
}

#[test]
fn criterion_05_wkb_splittings() {
    let rows = compare_doublets(&spectra(), EnergyPolicy::default()).unwrap();
    let wkb = rows[0]
        .estimate(SplitMethod::Wkb)
        .expect("WKB applies to the lowest doublet");
    let mut results = vec![check(
        "5a",
        "WKB ΔE, lowest doublet [K]",
        wkb.splitting,
        8.9e-10,
        0.20 * 8.9e-10,
    )];
    for (k, target) in [(0, 14.7), (1, 9.0), (2, 8.0)] {
        let dev = rows[k].deviation(SplitMethod::Wkb).expect("WKB applies");
        results.push(check(
            &format!("5{}", ['b', 'c', 'd'][k]),
            &format!("WKB vs reference deviation, doublet {} [%]", k + 1),
            dev,
            target,
            3.0,
        ));
    }
    assert!(results.iter().all(|&ok| ok), "criterion 5: {results:?}");
}

#[test]
fn criterion_06_angle_model_deviations() {
    let rows = compare_doublets(&spectra(), EnergyPolicy::default()).unwrap();
    let mut results = Vec::new();
    for (k, target) in [(0, 31.0), (1, 8.0), (2, 5.0)] {
        let dev = rows[k].angle_deviation().expect("angle doublet exists");
        results.push(check(
            &format!("6{}", ['a', 'b', 'c'][k]),
            &format!("angle vs reference deviation, doublet {} [%]", k + 1),
            dev,
            target,
            5.0,
        ));
    }
    assert!(results.iter().all(|&ok| ok), "criterion 6: {results:?}");
}

#[test]
fn criterion_07_khw_mg_at_barrier_top() {
    let p = fe8();
    let s = spectra();
    let khw = khw_mg_splitting(-5.34, &p).unwrap();
    let reference = s.reference_doublets.nearest(-5.34).unwrap();
    let results = [
        check("7a", "KHW/MG ΔE at |E| = 5.34 K [K]", khw.splitting, 0.65, 0.02),
        check(
            "7b",
            "reference ΔE near |E| = 5.34 K [K]",
            reference.splitting(),
            0.72,
            0.02,
        ),
        check("7c", "P(V0)", penetrability(p.coefficients().v3, &p).unwrap(), 0.5, 0.0),
    ];
    assert!(results.iter().all(|&ok| ok));
}

#[test]
fn criterion_08_parabolic_near_top() {
    let p = fe8();
    let s = spectra();
    let par = parabolic_splitting(-7.5, &p).unwrap();
    let reference = s.reference_doublets.nearest(-7.5).unwrap();
    let results = [
        check("8a", "parabolic ΔE at |E| = 7.5 K [K]", par.splitting, 0.14, 0.01),
        check(
            "8b",
            "reference ΔE near |E| = 7.5 K [K]",
            reference.splitting(),
            0.13,
            0.01,
        ),
    ];
    assert!(results.iter().all(|&ok| ok));
}

#[test]
fn criterion_09_field_formulas() {
    let p = fe8();
    let (saturation, matching) = saturation_and_matching_mass_route(&p).unwrap();
    let results = [
        check(
            "9a",
            "gap linear coefficient [K/T]",
            spintun_core::semiclassics::gap_linear_coefficient(&p),
            26.79,
            0.01,
        ),
        check(
            "9b",
            "harmonic matching field [T]",
            matching_field_harmonic(&p),
            0.2239,
            0.0005,
        ),
        check("9c", "mass-route matching field [T]", matching, 0.216, 0.001),
        check("9d", "saturation field [T]", saturation, 4.32, 0.005),
    ];
    assert!(results.iter().all(|&ok| ok));
}

#[test]
fn criterion_10_reference_gap_slope() {
    let fields: Vec<f64> = (0..=10).map(|i| i as f64 * 0.005).collect();
    let scan = gap_vs_field_scan(&fe8(), &fields).unwrap();
    assert!(check(
        "10",
        "reference gap slope [K/T]",
        scan.slope().unwrap(),
        26.85,
        0.1
    ));
}

fn midpoint(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    (0..n).map(|i| f(a + (i as f64 + 0.5) * h)).sum::<f64>() * h
}

#[test]
fn criterion_11_property_suite() {
    let p = fe8();
    let c = p.coefficients();
    let mut results = Vec::new();

    for two_s in [4u32, 10, 20] {
        let q = ClusterParams::new(0.275, 0.046, two_s, 2.0).unwrap();
        let full = eig_symmetric(&build_spin_hamiltonian(&q, 0.0), false).unwrap().values;
        let blocks = reference_spectrum(&q, 0.0).unwrap().energies();
        assert_eq!(full.len(), blocks.len());
        let err = full.iter().zip(&blocks).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        results.push(check(
            "11a",
            &format!("block union vs full spectrum, S = {} [K]", two_s / 2),
            err,
            0.0,
            1e-12,
        ));
    }

    let rotor = EffectiveCoefficients {
        v1: 0.0,
        v2: 0.0,
        m1: 0.0,
        m2: 0.0,
        ..c
    };
    let values = eig_symmetric(
        &build_angle_hamiltonian(&rotor, 0.0, &FourierBasisSpec::new(16).unwrap()),
        false,
    )
    .unwrap()
    .values;
    let mut exact: Vec<f64> = (-16i32..=16).map(|n| 0.5 * c.m3 * f64::from(n * n) + c.v3).collect();
    exact.sort_by(f64::total_cmp);
    let err = values
        .iter()
        .zip(&exact)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    results.push(check("11b", "free-rotor eigenvalues [K]", err, 0.0, 1e-12));

    for energy in [-27.54, -22.4] {
        let sym = wkb_splitting(energy, &p).unwrap().splitting;
        let asym = asymmetric_wkb_splitting(energy, 0.0, &p).unwrap().splitting;
        results.push(check(
            "11c",
            "asymmetric/symmetric WKB at H = 0, relative",
            (asym - sym).abs() / sym,
            0.0,
            1e-14,
        ));
    }

    for energy in [-25.0, -12.0] {
        let (phi_i, phi_s) = turning_points(energy, 0.0, &c).unwrap();
        let f = |x: f64| 1.0 / inverse_mass(x, 0.0, &c) + potential(x, 0.0, &c).abs();
        let quad = integrate_adaptive(|x| Ok(f(x)), phi_i, phi_s, 1e-12).unwrap();
        let oracle = midpoint(f, phi_i, phi_s, 1_000_000);
        results.push(check(
            "11d",
            "quadrature vs midpoint oracle, relative",
            (quad - oracle).abs() / oracle,
            0.0,
            1e-8,
        ));
    }

    let (saturation, matching) = saturation_and_matching_mass_route(&p).unwrap();
    results.push(check(
        "11e",
        "saturation/2S - matching [T]",
        saturation / 20.0 - matching,
        0.0,
        0.0,
    ));

    let khw = khw_mg_splitting(c.v3, &p).unwrap();
    results.push(check(
        "11f",
        "KHW/MG penetrability at V0",
        khw.penetrability.unwrap(),
        0.5,
        0.0,
    ));
    let mut last = khw.splitting;
    let mut monotone = true;
    for k in 1..20 {
        let s = khw_mg_splitting(c.v3 - k as f64, &p).unwrap().splitting;
        monotone &= s < last;
        last = s;
    }
    results.push(check(
        "11f",
        "KHW/MG decreasing below the top (1 = yes)",
        f64::from(u8::from(monotone)),
        1.0,
        0.0,
    ));

    let asym = (0..720)
        .map(|i| {
            let phi = 2.0 * PI * i as f64 / 720.0;
            let even = (potential(phi, 0.0, &c) - potential(-phi, 0.0, &c)).abs();
            let shift = (inverse_mass(phi, 0.0, &c) - inverse_mass(phi + PI, 0.0, &c)).abs();
            even.max(shift)
        })
        .fold(0.0, f64::max);
    results.push(check("11g", "zero-field V and 1/M symmetry [K]", asym, 0.0, 1e-12));

    assert!(results.iter().all(|&ok| ok), "criterion 11: {results:?}");
}
