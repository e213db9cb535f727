//! A fully constructed scheme: parameters, hashing and column generation.

use crate::columns::{measure, ColumnGenerator, MeasurementSet, NoiseModel};
use crate::decoder::{peel_decode, DecodeResult};
use crate::error::Result;
use crate::graph::BinHasher;
use crate::scheme::{SchemeParams, SparseSignal};
use crate::subcode::IndexCodec;

#[derive(Debug, Clone)]
pub struct Instance {
    pub params: SchemeParams,
    pub hasher: BinHasher,
    pub generator: ColumnGenerator,
}

impl Instance {
    pub fn new(params: SchemeParams) -> Result<Self> {
        params.validate()?;
        let codec = IndexCodec::new(params.n, params.c0, params.code_kind, params.seeds.code, params.max_iters)?;
        Ok(Self::with_codec(params, codec))
    }

    /// Reuses an already constructed index code.
    pub fn with_codec(params: SchemeParams, codec: IndexCodec) -> Self {
        let hasher = BinHasher::new(params.b, params.d, params.seeds.graph);
        let generator = ColumnGenerator::new(codec, params.c1, params.c2, params.seeds.column);
        Instance { params, hasher, generator }
    }

    pub fn noise(&self) -> NoiseModel {
        NoiseModel::new(self.params.seeds.noise, self.params.sigma2)
    }

    pub fn measure(&self, x: &SparseSignal) -> Result<MeasurementSet> {
        measure(x, &self.hasher, &self.generator, &self.noise())
    }

    pub fn decode(&self, meas: &MeasurementSet) -> Result<DecodeResult> {
        peel_decode(meas, &self.params, &self.generator, &self.hasher)
    }
}
