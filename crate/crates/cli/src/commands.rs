use std::f64::consts::PI;

use spintun_core::analysis::{compare_doublets, estimates_at, percent_deviation, zero_field_spectra, EnergyPolicy};
use spintun_core::angle::{angle_spectrum, FourierBasisSpec};
use spintun_core::check::run_checks;
use spintun_core::model::{mass, potential};
use spintun_core::semiclassics::{
    asymmetric_wkb_splitting, extract_suppression_chi, field_formulas, SplitMethod, SplittingEstimate,
};
use spintun_core::spin::{gap_vs_field_scan, reference_spectrum};
use spintun_core::{pair_doublets, ClusterParams, Error, Spectrum};

use crate::table::{Cell, OutputTable};
use crate::CliError;

pub fn basis(params: &ClusterParams, n_max: Option<u32>) -> Result<FourierBasisSpec, CliError> {
    let Some(n) = n_max else {
        return Ok(FourierBasisSpec::default_for(params));
    };
    if n < params.two_s() {
        return Err(CliError::Config(format!(
            "--n-max {n} is below two_S = {}; the angle model needs n_max >= 2S",
            params.two_s()
        )));
    }
    FourierBasisSpec::new(n as usize).map_err(|e| CliError::Config(format!("--n-max: {e}")))
}

pub fn spectrum(params: &ClusterParams, spec: &FourierBasisSpec, fields: &[f64]) -> Result<OutputTable, CliError> {
    let mut t = OutputTable::new(vec![
        "field_T",
        "index",
        "reference_K",
        "reference_block",
        "angle_K",
        "angle_block",
        "deviation_percent",
    ]);
    for &h in fields {
        let reference = reference_spectrum(params, h)?;
        let angle = angle_spectrum(params, h, spec)?.truncated(reference.len());
        for (k, (r, a)) in reference.levels.iter().zip(&angle.levels).enumerate() {
            t.push(vec![
                h.into(),
                k.into(),
                r.energy.into(),
                r.tag.to_string().into(),
                a.energy.into(),
                a.tag.to_string().into(),
                percent_deviation(a.energy, r.energy).into(),
            ]);
        }
        if h == fields[0] {
            t.summarize("reference_ground_K", reference.ground_energy());
            t.summarize("angle_ground_K", angle.ground_energy());
            t.summarize(
                "ground_deviation_percent",
                percent_deviation(angle.ground_energy(), reference.ground_energy()),
            );
        }
    }
    Ok(t)
}

fn method_cells(estimates: &[SplittingEstimate], method: SplitMethod, reference: f64) -> [Cell; 2] {
    match estimates.iter().find(|e| e.method == method) {
        Some(e) => [e.splitting.into(), percent_deviation(e.splitting, reference).into()],
        None => [Cell::Null, Cell::Null],
    }
}

pub fn splittings(
    params: &ClusterParams,
    spec: &FourierBasisSpec,
    energies: Option<&[f64]>,
    policy: EnergyPolicy,
) -> Result<OutputTable, CliError> {
    let spectra = zero_field_spectra(params, spec)?;
    let mut t = OutputTable::new(vec![
        "doublet",
        "reference_mean_K",
        "reference_splitting_K",
        "angle_mean_K",
        "angle_splitting_K",
        "angle_deviation_percent",
        "estimate_energy_K",
        "wkb_K",
        "wkb_deviation_percent",
        "khw_mg_K",
        "khw_mg_deviation_percent",
        "parabolic_K",
        "parabolic_deviation_percent",
    ]);
    let rows: Vec<_> = match energies {
        None => compare_doublets(&spectra, policy)?
            .into_iter()
            .map(|c| (c.reference, c.energy, c.estimates))
            .collect(),
        Some(list) => list
            .iter()
            .map(|&energy| {
                let reference = *spectra
                    .reference_doublets
                    .nearest(energy)
                    .ok_or_else(|| CliError::Compute(Error::InvalidInput("no reference doublets".into())))?;
                Ok((reference, energy, estimates_at(energy, params)?))
            })
            .collect::<Result<_, CliError>>()?,
    };
    for (reference, energy, estimates) in rows {
        let angle = spectra.angle_doublets.rows.get(reference.index);
        let mut row: Vec<Cell> = vec![
            reference.index.into(),
            reference.mean().into(),
            reference.splitting().into(),
            angle.map(|a| a.mean()).into(),
            angle.map(|a| a.splitting()).into(),
            angle
                .map(|a| percent_deviation(a.splitting(), reference.splitting()))
                .into(),
            energy.into(),
        ];
        for method in [SplitMethod::Wkb, SplitMethod::KhwMg, SplitMethod::Parabolic] {
            row.extend(method_cells(&estimates, method, reference.splitting()));
        }
        t.push(row);
    }
    let c = params.coefficients();
    t.summarize("barrier_top_K", c.v3);
    t.summarize(
        "energy_policy",
        match policy {
            EnergyPolicy::ReferenceMean => "reference",
            EnergyPolicy::AngleMean => "angle",
        },
    );
    t.summarize("unpaired_reference_levels", spectra.reference_doublets.unpaired.len());
    Ok(t)
}

/// Errors that mean "this estimate does not apply here" rather than a failed run.
fn out_of_domain(e: &Error) -> bool {
    matches!(
        e,
        Error::AboveBarrier { .. } | Error::BelowWell { .. } | Error::TunnelingBlocked { .. }
    )
}

fn ground_pair(s: &Spectrum) -> (f64, f64) {
    (s.levels[0].energy, s.levels[1].energy)
}

pub fn field_scan(params: &ClusterParams, fields: &[f64]) -> Result<OutputTable, CliError> {
    let report = field_formulas(params)?;
    if let Some(&h) = fields.iter().find(|h| h.abs() >= report.saturation) {
        return Err(CliError::Config(format!(
            "--fields: {h} T is at or beyond the saturation field {:.4} T, where tunneling is blocked",
            report.saturation
        )));
    }
    let scan = gap_vs_field_scan(params, fields)?;
    let mut t = OutputTable::new(vec![
        "field_T",
        "reference_gap_K",
        "estimate_energy_K",
        "asymmetric_wkb_K",
    ]);
    for (point, &h) in scan.points.iter().zip(fields) {
        let (lo, hi) = ground_pair(&reference_spectrum(params, h)?);
        let energy = 0.5 * (lo + hi);
        let wkb = match asymmetric_wkb_splitting(energy, h, params) {
            Ok(e) => Some(e.splitting),
            Err(e) if out_of_domain(&e) => None,
            Err(e) => return Err(e.into()),
        };
        t.push(vec![point.field.into(), point.gap.into(), energy.into(), wkb.into()]);
    }

    let (slope, intercept) = match scan.linear_fit() {
        Ok((s, i)) => (Some(s), Some(i)),
        Err(Error::DegenerateFit(_)) => (None, None),
        Err(e) => return Err(e.into()),
    };
    let nonzero: Vec<f64> = fields.iter().copied().filter(|&h| h != 0.0).collect();
    let zero_field = pair_doublets(&reference_spectrum(params, 0.0)?)?;
    let chi = match zero_field.rows.first() {
        Some(ground) => match extract_suppression_chi(params, ground.mean(), &nonzero) {
            Ok(fit) => Some(fit),
            Err(Error::DegenerateFit(_)) => None,
            Err(e) if out_of_domain(&e) => None,
            Err(e) => return Err(e.into()),
        },
        None => None,
    };
    t.summarize("reference_slope_K_per_T", slope);
    t.summarize("reference_intercept_K", intercept);
    t.summarize("analytic_gap_coefficient_K_per_T", report.gap_coefficient);
    t.summarize("chi_per_T2", chi.as_ref().map(|f| f.chi));
    t.summarize("chi_residual", chi.as_ref().map(|f| f.residual));
    t.summarize("chi_energy_K", chi.as_ref().map(|f| f.energy));
    t.summarize("matching_field_harmonic_T", report.matching_harmonic);
    t.summarize("matching_field_mass_route_T", report.matching_mass_route);
    t.summarize("saturation_field_T", report.saturation);
    Ok(t)
}

pub fn figure_data(params: &ClusterParams, fields: Option<Vec<f64>>, points: usize) -> Result<OutputTable, CliError> {
    let fields = match fields {
        Some(f) => f,
        None => {
            let report = field_formulas(params)?;
            vec![0.0, report.matching_mass_route, 0.95 * report.saturation]
        }
    };
    let c = params.coefficients();
    let mut t = OutputTable::new(vec!["field_T", "phi_rad", "potential_K", "mass_per_K"]);
    for &h in &fields {
        for i in 0..points {
            let phi = 2.0 * PI * i as f64 / points as f64;
            t.push(vec![
                h.into(),
                phi.into(),
                potential(phi, h, &c).into(),
                mass(phi, h, &c).ok().into(),
            ]);
        }
    }
    t.summarize("points_per_field", points);
    Ok(t)
}

pub fn check() -> Result<OutputTable, CliError> {
    let outcomes = run_checks()?;
    let mut t = OutputTable::new(vec!["id", "quantity", "value", "target", "tolerance", "status"]);
    for o in &outcomes {
        t.push(vec![
            o.id.as_str().into(),
            o.quantity.as_str().into(),
            o.value.into(),
            o.target.into(),
            o.tolerance.into(),
            if o.passed { "PASS" } else { "FAIL" }.into(),
        ]);
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    t.summarize("passed", passed);
    t.summarize("failed", outcomes.len() - passed);
    Ok(t)
}
