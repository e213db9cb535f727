//! Sublinear compressive sensing with generalized-LDPC measurement matrices.
//!
//! A `k`-sparse `x` in `R^n` is observed through `y = (H ⊙ G) x + z`, where
//! `H` hashes each index into `d` of `b` bins and column `g_i` of `G` carries
//! a coded copy of the binary index of `i`. The peeling decoder recovers `x`
//! with work proportional to `k` and the column length, independent of `n`.
//!
//! Module map:
//!
//! * [`scheme`]: parameters, the sparse signal type and scalar helpers.
//! * [`graph`]: the bin hasher and component census of the support graph.
//! * [`subcode`]: repetition and regular LDPC index codes.
//! * [`columns`]: column generation and the measurement operator.
//! * [`decoder`]: singleton test and peeling recovery.
//! * [`errorprop`]: tracking of residual estimation error through peeling.
//! * [`instance`]: a ready-to-use bundle of the above for one parameter set.
//! * [`harness`]: Monte-Carlo experiments, config files and CSV output.

pub mod columns;
pub mod decoder;
pub mod error;
pub mod errorprop;
pub mod graph;
pub mod harness;
pub mod instance;
pub mod prf;
pub mod scheme;
pub mod subcode;

pub use columns::{measure, BinMeasurement, ColumnGenerator, MeasurementSet, NoiseModel};
pub use decoder::{peel_decode, singleton_test, DecodeResult, SingletonTestResult};
pub use error::{Error, Result};
pub use instance::Instance;
pub use graph::{component_census, BinHasher, ComponentClass, ComponentReport, SupportGraph};
pub use scheme::{Alphabet, CodeKind, SchemeParams, Seeds, SparseSignal};
pub use subcode::IndexCodec;
