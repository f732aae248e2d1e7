//! Symmetry-tagged spectra and doublet pairing shared by both solution
//! routes.

use std::fmt;

use crate::error::{Error, Result};
use crate::model::ClusterParams;
use crate::numerics::{eig_symmetric, SparseVector, SymmetricMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(k: i64) -> Self {
        if k.rem_euclid(2) == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    fn symbol(self) -> char {
        match self {
            Parity::Even => '+',
            Parity::Odd => '-',
        }
    }
}

/// Symmetry sector a level was computed in.
///
/// `exchange` is the parity under the operation swapping the two wells (spin
/// flip m → −m, or φ → φ + π); doublet partners differ in it. `local` is the
/// parity under an operation mapping each well onto itself (m mod 2, or
/// φ → −φ). A `None` entry means that symmetry was not used, either because
/// a field breaks it or because it does not commute with the other one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockTag {
    pub exchange: Option<Parity>,
    pub local: Option<Parity>,
}

impl fmt::Display for BlockTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = |p: Option<Parity>| p.map_or('*', Parity::symbol);
        write!(f, "x{}l{}", sym(self.exchange), sym(self.local))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Diagonalization of the spin Hamiltonian in the |S, m⟩ basis.
    SpinExact,
    /// Fourier–Galerkin solution of the angle-variable Hamiltonian.
    AngleSpectral,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::SpinExact => "spin-exact",
            Method::AngleSpectral => "angle-spectral",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub energy: f64,
    pub tag: BlockTag,
}

/// Eigenvalues of one model at one field, sorted ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub method: Method,
    pub params: ClusterParams,
    pub field: f64,
    pub levels: Vec<Level>,
}

impl Spectrum {
    /// Collects per-block eigenvalues into one sorted spectrum.
    pub fn from_blocks(
        method: Method,
        params: ClusterParams,
        field: f64,
        blocks: impl IntoIterator<Item = (BlockTag, Vec<f64>)>,
    ) -> Self {
        let mut levels: Vec<Level> = blocks
            .into_iter()
            .flat_map(|(tag, values)| values.into_iter().map(move |energy| Level { energy, tag }))
            .collect();
        levels.sort_by(|a, b| a.energy.total_cmp(&b.energy).then(a.tag.cmp(&b.tag)));
        Self {
            method,
            params,
            field,
            levels,
        }
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn energies(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.energy).collect()
    }

    pub fn ground_energy(&self) -> f64 {
        self.levels[0].energy
    }

    /// Energies of the levels in one block, ascending.
    pub fn block(&self, tag: BlockTag) -> Vec<f64> {
        self.levels.iter().filter(|l| l.tag == tag).map(|l| l.energy).collect()
    }

    /// The lowest `count` levels.
    pub fn truncated(&self, count: usize) -> Self {
        Self {
            levels: self.levels.iter().take(count).copied().collect(),
            ..self.clone()
        }
    }
}

/// Symmetry-adapted basis for one block.
pub type BlockBasis = (BlockTag, Vec<SparseVector>);

/// Diagonalizes `h` restricted to each block basis. Empty blocks are skipped.
pub fn solve_blocks(h: &SymmetricMatrix, blocks: &[BlockBasis]) -> Result<Vec<(BlockTag, Vec<f64>)>> {
    blocks
        .iter()
        .filter(|(_, basis)| !basis.is_empty())
        .map(|(tag, basis)| Ok((*tag, eig_symmetric(&h.project(basis), false)?.values)))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DoubletRow {
    pub index: usize,
    pub lower: Level,
    pub upper: Level,
}

impl DoubletRow {
    pub fn mean(&self) -> f64 {
        0.5 * (self.lower.energy + self.upper.energy)
    }

    pub fn splitting(&self) -> f64 {
        self.upper.energy - self.lower.energy
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DoubletTable {
    pub method: Method,
    pub rows: Vec<DoubletRow>,
    /// Levels that found no partner in the opposite exchange block.
    pub unpaired: Vec<Level>,
}

impl DoubletTable {
    /// Row whose mean energy is closest to `energy`.
    pub fn nearest(&self, energy: f64) -> Option<&DoubletRow> {
        self.rows
            .iter()
            .min_by(|a, b| (a.mean() - energy).abs().total_cmp(&(b.mean() - energy).abs()))
    }
}

/// Groups a zero-field spectrum into tunneling doublets.
///
/// Below the barrier top `−E·S(S+1)` consecutive levels are paired only if
/// they come from opposite exchange blocks; a level with no such partner is
/// recorded as unpaired. A pair whose lower member lies at or above the top
/// is formed by adjacency alone.
pub fn pair_doublets(spectrum: &Spectrum) -> Result<DoubletTable> {
    if spectrum.field != 0.0 {
        return Err(Error::SymmetryBroken { field: spectrum.field });
    }
    let top = -spectrum.params.e() * spectrum.params.spin_casimir();
    let levels = &spectrum.levels;
    let mut rows = Vec::new();
    let mut unpaired = Vec::new();
    let mut i = 0;
    while i + 1 < levels.len() {
        let (lo, hi) = (levels[i], levels[i + 1]);
        let opposite = matches!(
            (lo.tag.exchange, hi.tag.exchange),
            (Some(a), Some(b)) if a != b
        );
        if lo.energy >= top || opposite {
            rows.push(DoubletRow {
                index: rows.len(),
                lower: lo,
                upper: hi,
            });
            i += 2;
        } else {
            unpaired.push(lo);
            i += 1;
        }
    }
    unpaired.extend(levels.get(i).copied());
    Ok(DoubletTable {
        method: spectrum.method,
        rows,
        unpaired,
    })
}
