use crate::model::ClusterParams;

/// Harmonic approximation around the well at φ = 0 at zero field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicWellReport {
    /// Well bottom `V(0) = −D·S(S+1)`, K.
    pub e_min: f64,
    /// Level spacing, K.
    pub omega: f64,
    /// `e_min + omega/2`, K.
    pub e_gs: f64,
    /// Ground state below the barrier top `−E·S(S+1)`, K.
    pub barrier: f64,
    /// Well location, rad.
    pub phi_min: f64,
}

/// `ω` follows from `M(0) ω² = V''(0)` with `M(0) = 1/(M1 + M3)` and
/// `V''(0) = −2 V1`, giving `ω = 2√((D² − E²) S(S+1))`.
pub fn harmonic_well(params: &ClusterParams) -> HarmonicWellReport {
    let (d, e) = (params.d(), params.e());
    let ss = params.spin_casimir();
    let e_min = -d * ss;
    let root = ((d * d - e * e) * ss).sqrt();
    let omega = 2.0 * root;
    HarmonicWellReport {
        e_min,
        omega,
        e_gs: e_min + root,
        barrier: (d - e) * ss - root,
        phi_min: 0.0,
    }
}
