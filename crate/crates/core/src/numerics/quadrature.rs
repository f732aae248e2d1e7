use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Default relative tolerance for the action and averaged-mass integrals.
pub const DEFAULT_QUAD_TOL: f64 = 1e-10;

const MAX_INTERVALS: usize = 4000;

// Kronrod 15-point abscissae (non-negative half) and weights; the odd-indexed
// abscissae carry the embedded 7-point Gauss rule.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn kronrod<F>(f: &mut F, a: f64, b: f64) -> Result<Panel>
where
    F: FnMut(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (k, (&x, &w)) in XGK.iter().zip(&WGK).take(7).enumerate() {
        let dx = half * x;
        let pair = f(center - dx)? + f(center + dx)?;
        kron += w * pair;
        if k % 2 == 1 {
            gauss += WG[k / 2] * pair;
        }
    }
    Ok(Panel {
        a,
        b,
        value: kron * half,
        error: ((kron - gauss) * half).abs(),
    })
}

/// Globally adaptive Gauss–Kronrod (7/15) quadrature of a smooth integrand.
///
/// Bisects the panel with the largest error estimate until the summed
/// estimate drops below `tol` relative to the integral.
pub fn integrate_adaptive<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidInput(format!(
            "quadrature tolerance must be positive, got {tol}"
        )));
    }
    if a == b {
        return Ok(0.0);
    }
    let mut panels = vec![kronrod(&mut f, a, b)?];
    loop {
        let total: f64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.error).sum();
        // Absolute floor at a few ulps of the result; below it the estimate is
        // rounding noise.
        if err <= tol * total.abs() || err <= 64.0 * f64::EPSILON * total.abs() || err == 0.0 {
            return Ok(total);
        }
        if panels.len() >= MAX_INTERVALS {
            return Err(Error::QuadratureTolerance {
                tol,
                estimate: err / total.abs(),
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|(i, p), (j, q)| p.error.total_cmp(&q.error).then(j.cmp(i)))
            .map(|(i, _)| i)
            .expect("at least one panel");
        let p = panels.swap_remove(worst);
        let mid = 0.5 * (p.a + p.b);
        panels.push(kronrod(&mut f, p.a, mid)?);
        panels.push(kronrod(&mut f, mid, p.b)?);
    }
}

/// `∫ √f(φ) dφ` over `[phi_i, phi_s]` where `f` has simple zeros at both
/// endpoints, as in a tunneling action between turning points.
///
/// The substitution `φ = φ_i + (φ_s − φ_i)(1 − cos θ)/2` turns the
/// square-root endpoint behaviour into an integrand analytic in
/// `θ ∈ [0, π]`, which Gauss–Kronrod then converges on exponentially.
/// Values of `f` that are negative beyond rounding strictly inside the
/// interval are reported as an error.
pub fn integrate_sqrt_barrier<F>(mut f: F, phi_i: f64, phi_s: f64, tol: f64) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    if phi_i.is_nan() || phi_s.is_nan() || phi_i >= phi_s {
        return Err(Error::InvalidInput(format!(
            "integration limits must satisfy phi_i < phi_s, got [{phi_i}, {phi_s}]"
        )));
    }
    let width = phi_s - phi_i;
    let scale = f(0.5 * (phi_i + phi_s)).abs().max(f64::MIN_POSITIVE);
    let floor = -1e-9 * scale;
    let integrand = |theta: f64| -> Result<f64> {
        let phi = phi_i + 0.5 * width * (1.0 - theta.cos());
        let value = f(phi);
        if value < floor && phi > phi_i && phi < phi_s {
            return Err(Error::NegativeIntegrand { at: phi, value });
        }
        Ok(value.max(0.0).sqrt() * 0.5 * width * theta.sin())
    };
    integrate_adaptive(integrand, 0.0, PI, tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_integrand() {
        let v = integrate_sqrt_barrier(|_| 1.0, 0.0, 1.0, 1e-12).unwrap();
        assert!((v - 1.0).abs() < 1e-13);
    }

    #[test]
    fn abs_sine() {
        let v = integrate_sqrt_barrier(|x: f64| x.sin().powi(2), 0.0, PI, 1e-12).unwrap();
        assert!((v - 2.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn half_disk_area() {
        // ∫ √(1 - x²) dx over [-1, 1] = π/2, simple zeros at both ends.
        let v = integrate_sqrt_barrier(|x| 1.0 - x * x, -1.0, 1.0, 1e-12).unwrap();
        assert!((v - PI / 2.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn negative_interior_is_an_error() {
        let err = integrate_sqrt_barrier(|x: f64| (x - 0.5).powi(2) - 0.01, 0.0, 1.0, 1e-10).unwrap_err();
        assert!(matches!(err, Error::NegativeIntegrand { .. }), "{err}");
    }

    #[test]
    fn rejects_reversed_limits() {
        assert!(integrate_sqrt_barrier(|_| 1.0, 1.0, 0.0, 1e-10).is_err());
        assert!(integrate_adaptive(|_| Ok(1.0), 0.0, 1.0, 0.0).is_err());
    }

    #[test]
    fn smooth_polynomial_exact() {
        let v = integrate_adaptive(|x| Ok(x.powi(6) - 2.0 * x), 0.0, 2.0, 1e-14).unwrap();
        assert!((v - (128.0 / 7.0 - 4.0)).abs() < 1e-12);
    }
}
