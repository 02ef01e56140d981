//! Linear systems whose unknowns come in named blocks (typically the
//! coordinates of several unknown morphisms).

use num_traits::Zero;

use super::field::{FieldSpec, Scalar};
use super::mat::Mat;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct LinearSystem {
    field: FieldSpec,
    offsets: Vec<usize>,
    dims: Vec<usize>,
    rows: Vec<Vec<Scalar>>,
    rhs: Vec<Scalar>,
}

impl LinearSystem {
    pub fn new(field: FieldSpec, block_dims: &[usize]) -> Self {
        let mut offsets = Vec::with_capacity(block_dims.len());
        let mut acc = 0;
        for &d in block_dims {
            offsets.push(acc);
            acc += d;
        }
        LinearSystem { field, offsets, dims: block_dims.to_vec(), rows: Vec::new(), rhs: Vec::new() }
    }

    pub fn num_unknowns(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Adds the vector equation `Σ terms[i].1 · x_{terms[i].0} = rhs`.
    pub fn add_equation(&mut self, terms: &[(usize, &Mat)], rhs: &[Scalar]) -> Result<()> {
        let n = self.num_unknowns();
        let f = self.field;
        let mut new_rows = vec![vec![Scalar::zero(); n]; rhs.len()];
        for (block, m) in terms {
            if m.cols() != self.dims[*block] || m.rows() != rhs.len() {
                return Err(Error::DimensionMismatch(format!(
                    "term of shape {}x{} for block {block} of size {} with {} equations",
                    m.rows(),
                    m.cols(),
                    self.dims[*block],
                    rhs.len()
                )));
            }
            let off = self.offsets[*block];
            for (i, row) in new_rows.iter_mut().enumerate() {
                for j in 0..m.cols() {
                    let x = m.get(i, j);
                    if !x.is_zero() {
                        row[off + j] = f.add(&row[off + j], x);
                    }
                }
            }
        }
        self.rows.extend(new_rows);
        self.rhs.extend(rhs.iter().cloned());
        Ok(())
    }

    fn matrix(&self) -> Mat {
        let n = self.num_unknowns();
        Mat::from_rows(self.field, self.rows.len(), n, self.rows.concat()).expect("rows have uniform length")
    }

    fn split(&self, x: &[Scalar]) -> Vec<Vec<Scalar>> {
        self.offsets.iter().zip(&self.dims).map(|(&o, &d)| x[o..o + d].to_vec()).collect()
    }

    /// Canonical particular solution, split per block.
    pub fn solve(&self) -> Result<Option<Vec<Vec<Scalar>>>> {
        let n = self.num_unknowns();
        if self.rows.is_empty() {
            return Ok(Some(self.split(&vec![Scalar::zero(); n])));
        }
        Ok(self.matrix().solve_vec(&self.rhs)?.map(|x| self.split(&x)))
    }

    /// Basis of the homogeneous solution space, split per block.
    pub fn homogeneous_basis(&self) -> Vec<Vec<Vec<Scalar>>> {
        let n = self.num_unknowns();
        if self.rows.is_empty() {
            return (0..n)
                .map(|j| {
                    let mut e = vec![Scalar::zero(); n];
                    e[j] = self.field.one();
                    self.split(&e)
                })
                .collect();
        }
        self.matrix().nullspace().into_iter().map(|v| self.split(&v)).collect()
    }
}

/// Deterministic sequence of candidate points in the span of `basis`: the sum
/// of all basis vectors, each basis vector, then seeded pseudo-random combinations.
/// Used wherever a generic element of a solution space is needed.
pub fn generic_combinations(field: FieldSpec, basis: &[Vec<Scalar>], tries: usize) -> Vec<Vec<Scalar>> {
    use rand::{Rng, SeedableRng};
    let Some(first) = basis.first() else {
        return Vec::new();
    };
    let dim = first.len();
    let combine = |coeffs: &[Scalar]| -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); dim];
        for (c, b) in coeffs.iter().zip(basis) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in v.iter_mut().zip(b) {
                *o = field.add(o, &field.mul(c, x));
            }
        }
        v
    };
    let mut out = Vec::with_capacity(tries + basis.len() + 1);
    out.push(combine(&vec![field.one(); basis.len()]));
    out.extend(basis.iter().cloned());
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed_0001);
    for _ in 0..tries {
        let coeffs: Vec<Scalar> = (0..basis.len()).map(|_| field.from_int(rng.gen_range(-7..=7))).collect();
        out.push(combine(&coeffs));
    }
    out
}
