//! Exact linear algebra over `Q` and `F_p`.

mod field;
mod mat;
mod subspace;
mod system;

pub use field::{small_int, FieldSpec, Scalar};
pub use mat::{Mat, Rref};
pub use subspace::{subspace_ops, SubspaceBasis, SubspaceOps};
pub use system::{generic_combinations, LinearSystem};

/// Matrix of a linear map `k^dim_in -> k^dim_out`, from its action on basis vectors.
pub fn matrix_of<F>(field: FieldSpec, dim_in: usize, dim_out: usize, mut map: F) -> Mat
where
    F: FnMut(&[Scalar]) -> Vec<Scalar>,
{
    let cols: Vec<Vec<Scalar>> = (0..dim_in)
        .map(|j| {
            let mut e = vec![field.zero(); dim_in];
            e[j] = field.one();
            let out = map(&e);
            assert_eq!(out.len(), dim_out, "linear map produced wrong dimension");
            out
        })
        .collect();
    Mat::from_columns(field, dim_out, &cols)
}
