//! The ħ = 0 layer: root data, representations, classical r-matrices, the
//! Lie bialgebra g_r, the double D(b⁺) and the comparison map Φ_r.

pub mod gr;
pub mod lie;
pub mod rep;
pub mod rootdata;

pub use gr::{ClassicalError, Double, Gr, PhiMap, RecoveredG};
pub use lie::{Cobracket, LieAlgebra, Tensor2};
pub use rep::{Block, RepData, RepJson};
pub use rootdata::RootData;
