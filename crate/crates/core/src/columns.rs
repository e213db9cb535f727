//! Measurement columns and the bin-wise measurement operator.
//!
//! Column `i` of `G` is `[g~_i; g-_i; g._i]`: the index codeword (`c0`), an
//! all-ones sign block (`c1`) and a Rademacher verification block (`c2`).
//! Bin `j` observes `y_j = sum_i H[j][i] x_i g_i + z_j`, so measuring touches
//! only the `d` bins of each support index and never materializes `A`.

use rand::{Rng, RngCore};
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::graph::BinHasher;
use crate::prf::{keyed_rng, Domain};
use crate::scheme::SparseSignal;
use crate::subcode::IndexCodec;

/// Largest `m * n` that [`dense_matrix`] will materialize.
pub const DENSE_LIMIT: u64 = 100_000_000;

#[derive(Debug, Clone)]
pub struct ColumnGenerator {
    codec: IndexCodec,
    c1: usize,
    c2: usize,
    seed: u64,
}

impl ColumnGenerator {
    pub fn new(codec: IndexCodec, c1: usize, c2: usize, column_seed: u64) -> Self {
        ColumnGenerator { codec, c1, c2, seed: column_seed }
    }

    pub fn codec(&self) -> &IndexCodec {
        &self.codec
    }

    pub fn c0(&self) -> usize {
        self.codec.c0()
    }

    pub fn c1(&self) -> usize {
        self.c1
    }

    pub fn c2(&self) -> usize {
        self.c2
    }

    /// Full column length.
    pub fn c(&self) -> usize {
        self.codec.c0() + self.c1 + self.c2
    }

    pub fn column(&self, i: u64) -> Result<Vec<f64>> {
        let mut col = self.codec.encode(i)?;
        col.reserve(self.c1 + self.c2);
        col.extend(std::iter::repeat_n(1.0, self.c1));
        col.extend(self.rademacher(i));
        Ok(col)
    }

    /// Verification block `g._i`.
    pub fn rademacher(&self, i: u64) -> Vec<f64> {
        let mut rng = keyed_rng(self.seed, Domain::Rademacher, i);
        let mut out = Vec::with_capacity(self.c2);
        while out.len() < self.c2 {
            let word = rng.next_u32();
            let take = (self.c2 - out.len()).min(32);
            out.extend((0..take).map(|b| if word >> b & 1 == 1 { -1.0 } else { 1.0 }));
        }
        out
    }

    /// Single entry of the verification block, without generating the rest.
    pub fn rademacher_entry(&self, i: u64, pos: usize) -> f64 {
        let mut rng = keyed_rng(self.seed, Domain::Rademacher, i);
        rng.set_word_pos((pos / 32) as u128);
        if rng.next_u32() >> (pos % 32) & 1 == 1 {
            -1.0
        } else {
            1.0
        }
    }
}

/// One bin's `c` measurements.
#[derive(Debug, Clone, PartialEq)]
pub struct BinMeasurement {
    y: Vec<f64>,
    c0: usize,
    c1: usize,
}

impl BinMeasurement {
    pub fn zeros(c0: usize, c1: usize, c2: usize) -> Self {
        BinMeasurement { y: vec![0.0; c0 + c1 + c2], c0, c1 }
    }

    pub fn from_vec(y: Vec<f64>, c0: usize, c1: usize) -> Self {
        assert!(c0 + c1 <= y.len());
        BinMeasurement { y, c0, c1 }
    }

    pub fn values(&self) -> &[f64] {
        &self.y
    }

    /// Index block `y~`.
    pub fn tilde(&self) -> &[f64] {
        &self.y[..self.c0]
    }

    /// Sign block `y-`.
    pub fn bar(&self) -> &[f64] {
        &self.y[self.c0..self.c0 + self.c1]
    }

    /// Verification block `y.`.
    pub fn dot(&self) -> &[f64] {
        &self.y[self.c0 + self.c1..]
    }

    /// `y += value * column`.
    pub fn add_scaled(&mut self, value: f64, column: &[f64]) {
        assert_eq!(column.len(), self.y.len());
        for (y, g) in self.y.iter_mut().zip(column) {
            *y += value * g;
        }
    }

    /// `y -= value * column`.
    pub fn subtract_scaled(&mut self, value: f64, column: &[f64]) {
        assert_eq!(column.len(), self.y.len());
        for (y, g) in self.y.iter_mut().zip(column) {
            *y -= value * g;
        }
    }

    pub fn add_noise(&mut self, noise: &[f64]) {
        for (y, z) in self.y.iter_mut().zip(noise) {
            *y += z;
        }
    }
}

/// `y_j - value * g_i`.
pub fn subtract_contribution(bin: &BinMeasurement, value: f64, i: u64, gen: &ColumnGenerator) -> Result<BinMeasurement> {
    let mut out = bin.clone();
    out.subtract_scaled(value, &gen.column(i)?);
    Ok(out)
}

/// I.i.d. Gaussian measurement noise, regenerable per bin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseModel {
    pub seed: u64,
    pub sigma2: f64,
}

impl NoiseModel {
    pub fn new(seed: u64, sigma2: f64) -> Self {
        NoiseModel { seed, sigma2 }
    }

    /// `z_j`, the noise realization of bin `j`.
    pub fn bin_noise(&self, j: usize, c: usize) -> Vec<f64> {
        if self.sigma2 == 0.0 {
            return vec![0.0; c];
        }
        let sigma = self.sigma2.sqrt();
        let mut rng = keyed_rng(self.seed, Domain::Noise, j as u64);
        (0..c).map(|_| sigma * rng.sample::<f64, _>(StandardNormal)).collect()
    }
}

/// All `b` bins of one measurement.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasurementSet {
    pub bins: Vec<BinMeasurement>,
}

impl MeasurementSet {
    pub fn len(&self) -> usize {
        self.bins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bins.is_empty()
    }

    /// The measurement vector `y` in bin-major order.
    pub fn flatten(&self) -> Vec<f64> {
        self.bins.iter().flat_map(|b| b.values().iter().copied()).collect()
    }
}

/// `y = (H ⊙ G) x + z`, computed bin-wise in `O(|supp x| d c + b c)`.
pub fn measure(x: &SparseSignal, hasher: &BinHasher, gen: &ColumnGenerator, noise: &NoiseModel) -> Result<MeasurementSet> {
    let mut bins: Vec<BinMeasurement> =
        (0..hasher.b()).map(|_| BinMeasurement::zeros(gen.c0(), gen.c1(), gen.c2())).collect();
    for (i, value) in x.iter() {
        let col = gen.column(i)?;
        for j in hasher.bins_of(i) {
            bins[j].add_scaled(value, &col);
        }
    }
    if noise.sigma2 > 0.0 {
        for (j, bin) in bins.iter_mut().enumerate() {
            bin.add_noise(&noise.bin_noise(j, gen.c()));
        }
    }
    Ok(MeasurementSet { bins })
}

/// Row-major dense matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl DenseMatrix {
    pub fn get(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// `A x`, accumulating each row left to right.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(x).fold(0.0, |acc, (a, v)| acc + a * v))
            .collect()
    }
}

/// `H ⊙ G`: block row `j`, column `i` is `H[j][i] * g_i`.
pub fn odot(h: &[Vec<bool>], g: &[Vec<f64>]) -> DenseMatrix {
    let n = g.len();
    let c = g.first().map_or(0, Vec::len);
    let rows = h.len() * c;
    let mut data = vec![0.0; rows * n];
    for (j, h_row) in h.iter().enumerate() {
        assert_eq!(h_row.len(), n);
        for (i, col) in g.iter().enumerate() {
            if h_row[i] {
                for (p, &v) in col.iter().enumerate() {
                    data[(j * c + p) * n + i] = v;
                }
            }
        }
    }
    DenseMatrix { rows, cols: n, data }
}

/// Explicit `m x n` measurement matrix, for small `n` only.
pub fn dense_matrix(hasher: &BinHasher, gen: &ColumnGenerator, n: u64) -> Result<DenseMatrix> {
    let rows = hasher.b() * gen.c();
    if (rows as u64).saturating_mul(n) > DENSE_LIMIT {
        return Err(Error::DenseTooLarge { rows, cols: n });
    }
    let mut h = vec![vec![false; n as usize]; hasher.b()];
    let mut g = Vec::with_capacity(n as usize);
    for i in 0..n {
        for j in hasher.bins_of(i) {
            h[j][i as usize] = true;
        }
        g.push(gen.column(i)?);
    }
    Ok(odot(&h, &g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scheme::CodeKind;

    fn generator(n: u64, c2: usize) -> ColumnGenerator {
        let nbits = crate::scheme::info_bits(n);
        let codec = IndexCodec::new(n, 2 * nbits, CodeKind::RegularLdpc, 3, 50).unwrap();
        ColumnGenerator::new(codec, nbits, c2, 77)
    }

    #[test]
    fn column_layout() {
        let gen = generator(1024, 20);
        for i in [0, 5, 1023] {
            let col = gen.column(i).unwrap();
            assert_eq!(col.len(), 20 + 10 + 20);
            assert_eq!(&col[..20], &gen.codec().encode(i).unwrap()[..]);
            assert!(col[20..30].iter().all(|&v| v == 1.0));
            assert_eq!(&col[30..], &gen.rademacher(i)[..]);
            assert_eq!(col.iter().map(|v| v * v).sum::<f64>(), 50.0);
        }
        assert!(gen.column(1024).is_err());
    }

    #[test]
    fn rademacher_entries_match_block() {
        let gen = generator(64, 100);
        let block = gen.rademacher(9);
        for (pos, &v) in block.iter().enumerate() {
            assert_eq!(gen.rademacher_entry(9, pos), v);
        }
    }

    #[test]
    fn rademacher_blocks_are_nearly_orthogonal() {
        let gen = generator(1 << 20, 1024);
        for pair in 0..100u64 {
            let (a, b) = (gen.rademacher(2 * pair), gen.rademacher(2 * pair + 1));
            let corr: f64 = a.iter().zip(&b).map(|(x, y)| x * y).sum::<f64>() / 1024.0;
            assert!(corr.abs() < 0.15, "pair {pair}: {corr}");
        }
    }

    #[test]
    fn zero_signal_noiseless_gives_zero_bins() {
        let gen = generator(64, 8);
        let meas = measure(&SparseSignal::new(64), &BinHasher::new(10, 3, 1), &gen, &NoiseModel::new(0, 0.0)).unwrap();
        assert!(meas.flatten().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn single_entry_fills_its_bins() {
        let gen = generator(64, 8);
        let hasher = BinHasher::new(10, 3, 1);
        let x = SparseSignal::from_entries(64, [(17, 5.0)]).unwrap();
        let meas = measure(&x, &hasher, &gen, &NoiseModel::new(0, 0.0)).unwrap();
        let bins = hasher.bins_of(17);
        let expected: Vec<f64> = gen.column(17).unwrap().iter().map(|g| 5.0 * g).collect();
        for (j, bin) in meas.bins.iter().enumerate() {
            if bins.contains(&j) {
                assert_eq!(bin.values(), &expected[..]);
            } else {
                assert!(bin.values().iter().all(|&v| v == 0.0));
            }
        }
    }

    #[test]
    fn odot_block_layout() {
        let g: Vec<Vec<f64>> = vec![vec![1.0, -1.0], vec![-1.0, -1.0], vec![1.0, 1.0]];
        let h = vec![vec![true, false, true], vec![false, true, true]];
        let a = odot(&h, &g);
        assert_eq!((a.rows, a.cols), (4, 3));
        // [[g0, 0, g2], [0, g1, g2]]
        assert_eq!(a.row(0), &[1.0, 0.0, 1.0]);
        assert_eq!(a.row(1), &[-1.0, 0.0, 1.0]);
        assert_eq!(a.row(2), &[0.0, -1.0, 1.0]);
        assert_eq!(a.row(3), &[0.0, -1.0, 1.0]);

        let zero_row = odot(&[vec![false, false, false]], &g);
        assert!(zero_row.data.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn dense_guard() {
        let gen = generator(1 << 30, 8);
        let hasher = BinHasher::new(300, 3, 0);
        assert!(matches!(dense_matrix(&hasher, &gen, 1 << 30), Err(Error::DenseTooLarge { .. })));
    }

    #[test]
    fn subtract_contribution_examples() {
        let gen = generator(64, 8);
        let col = gen.column(3).unwrap();
        let mut bin = BinMeasurement::zeros(gen.c0(), gen.c1(), gen.c2());
        bin.add_scaled(3.0, &col);

        assert_eq!(subtract_contribution(&bin, 0.0, 3, &gen).unwrap(), bin);
        let cleared = subtract_contribution(&bin, 3.0, 3, &gen).unwrap();
        assert!(cleared.values().iter().all(|&v| v == 0.0));

        let mut other = bin.clone();
        other.add_scaled(-7.0, &gen.column(11).unwrap());
        let mut round = subtract_contribution(&other, 2.5, 5, &gen).unwrap();
        round.add_scaled(2.5, &gen.column(5).unwrap());
        assert_eq!(round, other);
    }
}
