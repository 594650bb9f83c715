use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::Matrix;
use crate::error::{Error, Result};
use crate::ring::{Field, Integers, Ring};

/// Result of an echelon reduction `form = transform · input`.
///
/// `form` keeps every row of the input; the first `rank` rows are nonzero
/// with pivots in `pivots`, the rest are zero. `transform` is invertible over
/// the ring (unimodular over ℤ) when it was requested.
#[derive(Clone, Debug)]
pub struct Echelon<R: Ring> {
    pub form: Matrix<R>,
    pub rank: usize,
    pub pivots: Vec<usize>,
    pub transform: Option<Matrix<R>>,
}

impl<R: Ring> Echelon<R> {
    /// The nonzero rows only.
    pub fn basis(&self) -> Matrix<R> {
        let rows = self.form.rows()[..self.rank].to_vec();
        Matrix::from_rows(self.form.ring(), self.form.ncols(), rows).expect("widths agree")
    }
}

/// Reduced row echelon form over a field.
pub fn rref<F: Field>(m: &Matrix<F>) -> Result<(Matrix<F>, usize)> {
    let e = rref_with_transform(m.clone(), false);
    Ok((e.form, e.rank))
}

/// Row-style Hermite normal form over ℤ: positive pivots, entries above each
/// pivot reduced into `[0, pivot)`, zero rows last.
pub fn hnf(m: &Matrix<Integers>) -> Matrix<Integers> {
    hnf_with_transform(m.clone(), false).form
}

fn nonzero_entries<R: Ring>(ring: &R, row: &[R::Elem], from: usize) -> Vec<(usize, R::Elem)> {
    row.iter().enumerate().skip(from).filter(|(_, v)| !ring.is_zero(v)).map(|(j, v)| (j, v.clone())).collect()
}

/// `target -= factor * source` restricted to the listed nonzero entries of `source`.
fn axpy<R: Ring>(ring: &R, target: &mut [R::Elem], factor: &R::Elem, source: &[(usize, R::Elem)]) {
    for (j, v) in source {
        ring.sub_mul_assign(&mut target[*j], factor, v);
    }
}

pub fn rref_with_transform<F: Field>(m: Matrix<F>, track_transform: bool) -> Echelon<F> {
    let ring = m.ring().clone();
    let ncols = m.ncols();
    let nrows = m.nrows();
    let mut a = m.into_rows();
    let mut u = track_transform.then(|| Matrix::identity(&ring, nrows).into_rows());
    let mut rank = 0;
    let mut pivots = Vec::new();

    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&i| !ring.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(rank, p);
        if let Some(u) = u.as_mut() {
            u.swap(rank, p);
        }
        let inv = ring.inv(&a[rank][c]);
        if !ring.is_one(&inv) {
            for v in a[rank].iter_mut().skip(c) {
                *v = ring.mul(v, &inv);
            }
            if let Some(u) = u.as_mut() {
                for v in u[rank].iter_mut() {
                    *v = ring.mul(v, &inv);
                }
            }
        }
        let piv_row = nonzero_entries(&ring, &a[rank], c);
        let piv_u = u.as_ref().map(|u| nonzero_entries(&ring, &u[rank], 0));
        for i in 0..nrows {
            if i == rank || ring.is_zero(&a[i][c]) {
                continue;
            }
            let f = a[i][c].clone();
            axpy(&ring, &mut a[i], &f, &piv_row);
            if let (Some(u), Some(pu)) = (u.as_mut(), piv_u.as_ref()) {
                axpy(&ring, &mut u[i], &f, pu);
            }
        }
        pivots.push(c);
        rank += 1;
    }

    Echelon {
        form: Matrix::from_rows(&ring, ncols, a).expect("widths preserved"),
        rank,
        pivots,
        transform: u.map(|u| Matrix::from_rows(&ring, nrows, u).expect("square")),
    }
}

pub fn hnf_with_transform(m: Matrix<Integers>, track_transform: bool) -> Echelon<Integers> {
    let ring = Integers;
    let ncols = m.ncols();
    let nrows = m.nrows();
    let mut a = m.into_rows();
    let mut u = track_transform.then(|| Matrix::identity(&ring, nrows).into_rows());
    let mut rank = 0;
    let mut pivots = Vec::new();

    let swap = |a: &mut Vec<Vec<BigInt>>, u: &mut Option<Vec<Vec<BigInt>>>, i: usize, j: usize| {
        a.swap(i, j);
        if let Some(u) = u.as_mut() {
            u.swap(i, j);
        }
    };

    for c in 0..ncols {
        if rank == nrows {
            break;
        }
        // Euclid on column c among rows rank.. until one nonzero entry is left.
        let mut found = false;
        loop {
            let best = (rank..nrows)
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].magnitude().cmp(a[j][c].magnitude()));
            let Some(best) = best else { break };
            found = true;
            swap(&mut a, &mut u, rank, best);
            let piv_row = nonzero_entries(&ring, &a[rank], c);
            let piv_u = u.as_ref().map(|u| nonzero_entries(&ring, &u[rank], 0));
            let piv = a[rank][c].clone();
            let mut remaining = false;
            for i in rank + 1..nrows {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&piv);
                if !q.is_zero() {
                    axpy(&ring, &mut a[i], &q, &piv_row);
                    if let (Some(u), Some(pu)) = (u.as_mut(), piv_u.as_ref()) {
                        axpy(&ring, &mut u[i], &q, pu);
                    }
                }
                if !a[i][c].is_zero() {
                    remaining = true;
                }
            }
            if !remaining {
                break;
            }
        }
        if !found {
            continue;
        }
        if a[rank][c].is_negative() {
            for v in a[rank].iter_mut() {
                *v = -&*v;
            }
            if let Some(u) = u.as_mut() {
                for v in u[rank].iter_mut() {
                    *v = -&*v;
                }
            }
        }
        let piv = a[rank][c].clone();
        let piv_row = nonzero_entries(&ring, &a[rank], c);
        let piv_u = u.as_ref().map(|u| nonzero_entries(&ring, &u[rank], 0));
        for i in 0..rank {
            let q = a[i][c].div_floor(&piv);
            if !q.is_zero() {
                axpy(&ring, &mut a[i], &q, &piv_row);
                if let (Some(u), Some(pu)) = (u.as_mut(), piv_u.as_ref()) {
                    axpy(&ring, &mut u[i], &q, pu);
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }

    Echelon {
        form: Matrix::from_rows(&ring, ncols, a).expect("widths preserved"),
        rank,
        pivots,
        transform: u.map(|u| Matrix::from_rows(&ring, nrows, u).expect("square")),
    }
}

/// Determinant of a square integer matrix via its Hermite form (the
/// transform is unimodular, so only the sign needs tracking).
pub fn integer_determinant_abs(m: &Matrix<Integers>) -> Result<BigInt> {
    if m.nrows() != m.ncols() {
        return Err(Error::Mismatch(format!("determinant of a {}x{} matrix", m.nrows(), m.ncols())));
    }
    let e = hnf_with_transform(m.clone(), false);
    if e.rank < m.nrows() {
        return Ok(BigInt::zero());
    }
    Ok((0..e.rank).map(|i| e.form.get(i, i).abs()).product())
}
