use super::{hnf, Matrix};
use crate::error::{Error, Result};
use crate::ring::{Integers, Ring};

/// A row space over a field, or a row lattice over ℤ, held in canonical
/// echelon form so that equality of spaces is equality of bases.
#[derive(Clone, Debug, PartialEq)]
pub struct RowSpace<R: Ring> {
    basis: Matrix<R>,
}

impl<R: Ring> RowSpace<R> {
    /// The span (lattice) of the rows of `m`.
    pub fn of(m: &Matrix<R>) -> Self {
        let ring = m.ring().clone();
        RowSpace { basis: ring.echelon(m.clone(), false).basis() }
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.basis.ncols()
    }

    pub fn rank(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &Matrix<R> {
        &self.basis
    }

    pub fn contains(&self, v: &[R::Elem]) -> Result<bool> {
        if v.len() != self.dim() {
            return Err(Error::Mismatch(format!("vector of length {} vs ambient {}", v.len(), self.dim())));
        }
        Ok(solve_left(&self.basis, v)?.is_some())
    }
}

/// `{x : x·M = 0}`. Over ℤ this is the full (saturated) kernel lattice: the
/// rows of the unimodular Hermite transform that land on zero rows.
pub fn left_nullspace<R: Ring>(m: &Matrix<R>) -> RowSpace<R> {
    let ring = m.ring().clone();
    let nrows = m.nrows();
    let e = ring.echelon(m.clone(), true);
    let u = e.transform.expect("transform requested");
    let kernel_rows = u.rows()[e.rank..].to_vec();
    let k = Matrix::from_rows(&ring, nrows, kernel_rows).expect("square transform");
    RowSpace::of(&k)
}

/// Equality of spans over a field, of lattices over ℤ.
pub fn row_space_equal<R: Ring>(a: &Matrix<R>, b: &Matrix<R>) -> Result<bool> {
    if a.ring() != b.ring() {
        return Err(Error::Mismatch(format!("rings {} and {}", a.ring().spec(), b.ring().spec())));
    }
    if a.ncols() != b.ncols() {
        return Err(Error::Mismatch(format!("{} vs {} columns", a.ncols(), b.ncols())));
    }
    Ok(RowSpace::of(a) == RowSpace::of(b))
}

/// Some `x` over the ring with `x·M = b`, or `None` if there is none.
pub fn solve_left<R: Ring>(m: &Matrix<R>, b: &[R::Elem]) -> Result<Option<Vec<R::Elem>>> {
    if b.len() != m.ncols() {
        return Err(Error::Mismatch(format!("right side of length {} vs {} columns", b.len(), m.ncols())));
    }
    let ring = m.ring().clone();
    let e = ring.echelon(m.clone(), true);
    let mut y: Vec<R::Elem> = Vec::with_capacity(e.rank);
    for (k, &p) in e.pivots.iter().enumerate() {
        let mut val = b[p].clone();
        for (j, yj) in y.iter().enumerate() {
            ring.sub_mul_assign(&mut val, yj, e.form.get(j, p));
        }
        match ring.divide(&val, e.form.get(k, p)) {
            Some(q) => y.push(q),
            None => return Ok(None),
        }
    }
    // y · form must reproduce b in every column, not just the pivots.
    let mut check = vec![ring.zero(); m.ncols()];
    for (j, yj) in y.iter().enumerate() {
        for (c, v) in e.form.row(j).iter().enumerate() {
            if !ring.is_zero(v) {
                ring.add_assign(&mut check[c], &ring.mul(yj, v));
            }
        }
    }
    if check.as_slice() != b {
        return Ok(None);
    }
    let u = e.transform.expect("transform requested");
    let mut x = vec![ring.zero(); m.nrows()];
    for (j, yj) in y.iter().enumerate() {
        if ring.is_zero(yj) {
            continue;
        }
        for (c, v) in u.row(j).iter().enumerate() {
            if !ring.is_zero(v) {
                ring.add_assign(&mut x[c], &ring.mul(yj, v));
            }
        }
    }
    Ok(Some(x))
}

/// Whether the row lattice of `b` is a pure sublattice of ℤ^cols, i.e. the
/// quotient is torsion-free (all elementary divisors are 1).
pub fn is_saturated(b: &Matrix<Integers>) -> bool {
    let basis = RowSpace::of(b).basis;
    let k = basis.nrows();
    if k == 0 {
        return true;
    }
    // Columns of a full-rank basis generate ℤ^k exactly when it is saturated.
    let h = hnf(&basis.transpose());
    (0..h.nrows()).all(|i| {
        (0..k).all(|j| {
            let v = h.get(i, j);
            let want: i64 = if i == j { 1 } else { 0 };
            *v == num_bigint::BigInt::from(want)
        })
    })
}
