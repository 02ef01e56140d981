//! Subspaces of `k^n` stored in canonical reduced echelon form.

use num_traits::Zero;

use super::field::{FieldSpec, Scalar};
use super::mat::Mat;
use crate::error::{Error, Result};

/// A subspace of `k^ambient`. The basis is the nonzero rows of the reduced row
/// echelon form of any spanning set, so equal subspaces compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubspaceBasis {
    field: FieldSpec,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        SubspaceBasis { field, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        let id = Mat::identity(field, ambient);
        Self::span(field, ambient, (0..ambient).map(|i| id.row(i).to_vec()))
    }

    pub fn span<I>(field: FieldSpec, ambient: usize, vectors: I) -> Self
    where
        I: IntoIterator<Item = Vec<Scalar>>,
    {
        let mut data = Vec::new();
        let mut rows = 0;
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector outside the ambient space");
            data.extend(v);
            rows += 1;
        }
        let m = Mat::from_rows(field, rows, ambient, data).expect("shape checked above");
        let rref = m.rref();
        let basis = (0..rref.pivots.len()).map(|i| rref.mat.row(i).to_vec()).collect();
        SubspaceBasis { field, ambient, basis, pivots: rref.pivots }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns that are not pivots; the standard vectors at these positions
    /// span the canonical complement.
    pub fn complement_columns(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    fn check(&self, other: &SubspaceBasis) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of k^{} and k^{}",
                self.ambient, other.ambient
            )));
        }
        Ok(())
    }

    pub fn sum(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.check(other)?;
        Ok(Self::span(
            self.field,
            self.ambient,
            self.basis.iter().chain(other.basis.iter()).cloned(),
        ))
    }

    pub fn intersection(&self, other: &SubspaceBasis) -> Result<SubspaceBasis> {
        self.check(other)?;
        let f = self.field;
        // a·U = b·V  <=>  [U; -V]^T (a, b) = 0
        let mut cols: Vec<Vec<Scalar>> = self.basis.clone();
        cols.extend(other.basis.iter().map(|v| v.iter().map(|x| f.neg(x)).collect()));
        if cols.is_empty() {
            return Ok(Self::zero(f, self.ambient));
        }
        let m = Mat::from_columns(f, self.ambient, &cols);
        let vectors = m.nullspace().into_iter().map(|coeffs| {
            let mut v = vec![Scalar::zero(); self.ambient];
            for (c, u) in coeffs.iter().zip(&self.basis) {
                for (acc, x) in v.iter_mut().zip(u) {
                    *acc = f.add(acc, &f.mul(c, x));
                }
            }
            v
        });
        Ok(Self::span(f, self.ambient, vectors.collect::<Vec<_>>()))
    }

    /// Reduces `v` modulo this subspace: the result vanishes on every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient, "vector outside the ambient space");
        let f = self.field;
        let mut out = v.to_vec();
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let c = out[p].clone();
            for (o, x) in out.iter_mut().zip(row) {
                if !x.is_zero() {
                    *o = f.sub(o, &f.mul(&c, x));
                }
            }
        }
        out
    }

    pub fn contains_vector(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Tests `other ⊆ self`.
    pub fn contains(&self, other: &SubspaceBasis) -> Result<bool> {
        self.check(other)?;
        Ok(other.basis.iter().all(|v| self.contains_vector(v)))
    }

    pub fn quotient_dim(&self) -> usize {
        self.ambient - self.dim()
    }
}

/// All four derived quantities of a pair of subspaces at once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceOps {
    pub sum: SubspaceBasis,
    pub intersection: SubspaceBasis,
    /// Whether `v ⊆ u`.
    pub contains: bool,
    pub quotient_dim: usize,
}

pub fn subspace_ops(u: &SubspaceBasis, v: &SubspaceBasis) -> Result<SubspaceOps> {
    Ok(SubspaceOps {
        sum: u.sum(v)?,
        intersection: u.intersection(v)?,
        contains: u.contains(v)?,
        quotient_dim: u.quotient_dim(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn v(xs: &[i64]) -> Vec<Scalar> {
        xs.iter().map(|&x| Q.from_int(x)).collect()
    }

    #[test]
    fn full_contains_everything() {
        let u = SubspaceBasis::full(Q, 3);
        let w = SubspaceBasis::span(Q, 3, [v(&[1, 2, 3])]);
        assert!(subspace_ops(&u, &w).unwrap().contains);
    }

    #[test]
    fn coordinate_axes() {
        let u = SubspaceBasis::span(Q, 2, [v(&[1, 0])]);
        let w = SubspaceBasis::span(Q, 2, [v(&[0, 1])]);
        let ops = subspace_ops(&u, &w).unwrap();
        assert_eq!(ops.sum, SubspaceBasis::full(Q, 2));
        assert_eq!(ops.intersection.dim(), 0);
        assert_eq!(ops.quotient_dim, 1);
    }

    #[test]
    fn echelon_comparison() {
        let u = SubspaceBasis::span(Q, 3, [v(&[1, 1, 0])]);
        let w = SubspaceBasis::span(Q, 3, [v(&[1, 1, 0]), v(&[0, 0, 1])]);
        assert!(w.contains(&u).unwrap());
        assert!(!u.contains(&w).unwrap());
        assert_eq!(u.intersection(&w).unwrap(), u);
    }

    #[test]
    fn ambient_mismatch() {
        let u = SubspaceBasis::zero(Q, 2);
        let w = SubspaceBasis::zero(Q, 3);
        assert!(subspace_ops(&u, &w).is_err());
    }

    #[test]
    fn reduce_lands_in_complement() {
        let u = SubspaceBasis::span(Q, 3, [v(&[1, 2, 0])]);
        let r = u.reduce(&v(&[3, 1, 5]));
        assert!(r[0].is_zero());
        assert!(u.contains_vector(&v(&[2, 4, 0])));
    }
}
