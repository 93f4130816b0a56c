//! Construction and exhaustive verification of optimal two-dimensional
//! Z-complementary array code sets (2D-ZCACS), their complete complementary
//! special case (2D-CCC) and their single-row reductions (1D-ZCCS).
//!
//! * [`mixed_radix`] maps flat array indices to block-structured digit vectors.
//! * [`generator`] evaluates the phase functions and assembles [`CodeSet`]s.
//! * [`correlation`] computes aperiodic correlations independently of the
//!   generator and certifies zone, peak and optimality claims.
//! * [`cli`] reads configuration documents, writes code-set files and reports,
//!   and backs the `zcacs` binary.
//!
//! ```
//! use zcacs::{correlation, generator, ConfigDocument};
//!
//! let doc = ConfigDocument::from_toml_str(r#"
//!     row_blocks = [[2, 1, 1]]
//!     col_blocks = [[3, 1, 1]]
//! "#).unwrap();
//! let cfg = doc.to_config().unwrap();
//! let ccc = generator::build_ccc(&cfg).unwrap();
//! let report = correlation::verify_ccc(&ccc, &Default::default());
//! assert!(report.pass);
//! ```

pub mod cli;
pub mod codeset;
pub mod correlation;
mod error;
pub mod generator;
pub mod mixed_radix;

pub use cli::ConfigDocument;
pub use codeset::{CodeKind, CodeSet, CodeSetParams, PhaseArray};
pub use error::{Error, Result};
pub use generator::{ConstructionParams, GeneratorConfig};
