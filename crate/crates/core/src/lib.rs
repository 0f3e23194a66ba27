//! Spectral interpolation, quadrature and node generation on the unit
//! disk, built on the sampling points of rhodonea (rose) curves and a
//! parity-constrained Chebyshev-Fourier basis.
//!
//! The pipeline is:
//!
//! 1. [`curve`] — rhodonea curves and their equidistant parameter samples;
//! 2. [`nodes`] — the nodal index set, node coordinates and weights;
//! 3. [`variety`] — the algebraic variety carrying all the nodes;
//! 4. [`spectral`] — spectral index sets and the discrete orthogonal bases;
//! 5. [`transform`] — FFT-accelerated forward/inverse coefficient transforms;
//! 6. [`interpolation`] — evaluating the interpolant anywhere on the disk;
//! 7. [`quadrature`] — Clenshaw-Curtis-type quadrature on the nodes;
//! 8. [`analysis`] — Lebesgue constants, convergence studies, test function.

pub mod analysis;
pub mod curve;
pub mod error;
pub mod interpolation;
pub mod nodes;
pub mod quadrature;
pub mod spectral;
pub mod transform;
pub mod variety;

pub use curve::{FrequencyPair, RhodoneaCurve};
pub use error::{Error, Result};
pub use nodes::{NodalIndexSet, NodeIndex};
pub use spectral::{SpectralIndex, SpectralIndexSet, SpectralKind};
pub use transform::{CoefficientSet, DataGrid, RealCoefficientSet};
