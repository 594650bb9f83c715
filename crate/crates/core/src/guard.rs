//! Limits on how large an object we are willing to materialize.
//!
//! Full group enumeration grows like `d!`, tensor space like `n^r`; every
//! constructor that enumerates one of these consults a [`SizeGuard`] first.

use crate::error::{Error, Result};

/// Environment variable overriding [`SizeGuard::max_degree`].
pub const MAX_D_ENV: &str = "CELLKERNEL_MAX_D";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeGuard {
    /// Largest `d` for which all of `Sym_d` may be listed (default 8).
    pub max_degree: usize,
    /// Largest group order allowed for the rows of an action matrix (default 720).
    pub max_action_rows: u128,
    /// Largest tensor-space dimension `n^r` for action matrices (default 1296).
    pub max_tensor_dim: u128,
}

impl Default for SizeGuard {
    fn default() -> Self {
        SizeGuard { max_degree: 8, max_action_rows: 720, max_tensor_dim: 1296 }
    }
}

impl SizeGuard {
    /// Defaults, with `max_degree` taken from `CELLKERNEL_MAX_D` when set.
    pub fn from_env() -> Result<Self> {
        let mut guard = SizeGuard::default();
        if let Ok(v) = std::env::var(MAX_D_ENV) {
            guard.max_degree =
                v.trim().parse().map_err(|_| Error::InvalidArgument(format!("{MAX_D_ENV}={v:?} is not an integer")))?;
        }
        Ok(guard)
    }

    pub fn with_max_degree(mut self, d: usize) -> Self {
        self.max_degree = d;
        self
    }

    pub fn max_group_order(&self) -> u128 {
        factorial(self.max_degree)
    }

    pub fn check_group_order(&self, order: u128, what: &str) -> Result<()> {
        if order > self.max_group_order() {
            return Err(Error::SizeGuard(format!(
                "{what} has {order} elements, above the limit {} (= {}!); raise {MAX_D_ENV} to allow it",
                self.max_group_order(),
                self.max_degree
            )));
        }
        Ok(())
    }

    pub fn check_degree(&self, d: usize) -> Result<()> {
        if d > self.max_degree {
            return Err(Error::SizeGuard(format!(
                "degree {d} exceeds the limit {}; raise {MAX_D_ENV} to allow it",
                self.max_degree
            )));
        }
        Ok(())
    }

    pub fn check_action(&self, d: usize, n: usize, r: usize) -> Result<()> {
        self.check_degree(d)?;
        let rows = factorial(d);
        if rows > self.max_action_rows {
            return Err(Error::SizeGuard(format!(
                "action matrix would have {d}! = {rows} rows, limit is {}",
                self.max_action_rows
            )));
        }
        let dim = (n as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
        if dim > self.max_tensor_dim {
            return Err(Error::SizeGuard(format!(
                "tensor space has dimension {n}^{r} = {dim}, limit is {}",
                self.max_tensor_dim
            )));
        }
        Ok(())
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

pub fn falling_factorial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    ((n - k + 1)..=n).map(|x| x as u128).product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), 1);
        assert_eq!(factorial(6), 720);
        assert_eq!(falling_factorial(5, 2), 20);
        assert_eq!(falling_factorial(3, 4), 0);
        assert_eq!(falling_factorial(3, 0), 1);
    }

    #[test]
    fn guard_limits() {
        let g = SizeGuard::default();
        assert!(g.check_group_order(40320, "Sym_8").is_ok());
        assert!(g.check_group_order(40321, "x").is_err());
        assert!(g.check_action(6, 6, 4).is_ok());
        assert!(g.check_action(7, 7, 1).is_err());
        assert!(g.check_action(3, 3, 7).is_err());
    }
}
