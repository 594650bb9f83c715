use super::{left_nullspace, Matrix, SparseMatrix};
use crate::error::{Error, Result};
use crate::ring::Field;

/// Basis of `{X : X·M = M·X for every M in mats}`, all matrices `m × m`.
///
/// Unknowns are the entries of `X` in row-major order; the equations are
/// assembled sparsely and solved as one left null space.
pub fn commutant<F: Field>(field: &F, mats: &[Matrix<F>], m: usize) -> Result<Vec<Matrix<F>>> {
    if let Some(bad) = mats.iter().find(|a| a.nrows() != m || a.ncols() != m) {
        return Err(Error::Mismatch(format!(
            "commutant of {m}x{m} matrices given a {}x{} matrix",
            bad.nrows(),
            bad.ncols()
        )));
    }
    let unknowns = m * m;
    let mut system = SparseMatrix::new(field, (mats.len() * unknowns).max(1));
    for i in 0..m {
        for j in 0..m {
            // Contribution of X[i][j] to (XM - MX)[a][b] for each generator.
            let mut entries = Vec::new();
            for (g, a) in mats.iter().enumerate() {
                let base = g * unknowns;
                // (XM)[i][k] += X[i][j] M[j][k]
                for (k, v) in a.row(j).iter().enumerate() {
                    if !field.is_zero(v) {
                        entries.push((base + i * m + k, v.clone()));
                    }
                }
                // (MX)[p][j] += M[p][i] X[i][j]
                for p in 0..m {
                    let v = a.get(p, i);
                    if !field.is_zero(v) {
                        entries.push((base + p * m + j, field.neg(v)));
                    }
                }
            }
            system.push_row(entries);
        }
    }
    let kernel = left_nullspace(&system.compress_columns());
    Ok(kernel
        .basis()
        .rows()
        .iter()
        .map(|v| {
            let rows = v.chunks(m).map(<[F::Elem]>::to_vec).collect();
            Matrix::from_rows(field, m, rows).expect("m columns")
        })
        .collect())
}
