//! Executable checks of the structural statements about `Φ`, its kernel and
//! the surrounding combinatorics, each on one finite instance.
//!
//! Every check returns a [`CheckReport`]; a failing report always carries a
//! witness from which the failure can be reproduced.

mod algebra;
mod grid;
mod kernel;
mod tensor_checks;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::combinatorics::{partitions_of, standard_tableaux, Partition};
use crate::error::{invalid, Result};
use crate::guard::SizeGuard;
use crate::linalg::{left_nullspace, RowSpace};
use crate::ring::Ring;
use crate::symgroup::GroupAlgElem;
use crate::tensor::{phi_matrix, Instance};

pub use algebra::{check_cell_ideal_two_sided, check_hook_embedding, check_murphy_unimodular, check_schur_weyl};
pub use grid::{default_grid, plan, run_checks, run_task, GridOptions, Task, CHECK_NAMES};
pub use kernel::{
    check_annihilator_transfer, check_char0_semisimple, check_faithful, check_general_annihilator,
    check_kernel_cell_ideal, check_kernel_contains_cell_ideal, check_rank_independence,
};
pub use tensor_checks::{check_decomposition, check_h_module_isos, check_when_zero, check_when_zero_all};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub instance: Value,
    pub pass: bool,
    pub ranks: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl CheckReport {
    fn new(check: &str, instance: Value) -> Self {
        CheckReport { check: check.to_string(), instance, pass: true, ranks: BTreeMap::new(), witness: None }
    }

    fn rank(mut self, key: &str, value: usize) -> Self {
        self.ranks.insert(key.to_string(), value as u64);
        self
    }

    /// Record a failure unless one is already recorded.
    fn fail(&mut self, witness: Value) {
        if self.pass {
            self.pass = false;
            self.witness = Some(witness);
        }
    }

    fn require(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        if !ok {
            self.fail(witness());
        }
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}

fn instance_json(inst: &Instance) -> Value {
    serde_json::to_value(inst).expect("instances serialize")
}

fn require_hook_range(inst: &Instance) -> Result<()> {
    if inst.d() <= inst.r + 1 {
        return Err(invalid!("this check needs d > r + 1, got d={} r={} ({inst})", inst.d(), inst.r));
    }
    Ok(())
}

/// Number of standard tableaux of each shape.
fn f_lambda(lambda: &Partition) -> usize {
    standard_tableaux(lambda).len()
}

/// `Σ f_λ²` over the shapes `λ ⊢ d` with fewer than `d − r` rows.
pub fn expected_kernel_rank(d: usize, r: usize) -> usize {
    partitions_of(d).iter().filter(|l| l.rows() + r < d).map(|l| f_lambda(l).pow(2)).sum()
}

/// `ker Φ` as a row space (lattice over ℤ) in `R·Sym_d`, coordinates by
/// lexicographic position of permutations.
pub fn kernel<R: Ring>(ring: &R, inst: &Instance, guard: &SizeGuard) -> Result<RowSpace<R>> {
    let phi = phi_matrix(ring, inst, guard)?;
    Ok(left_nullspace(&phi.compress_columns()))
}

/// The rows of a row space as group algebra elements.
pub fn basis_elements<R: Ring>(ring: &R, d: usize, space: &RowSpace<R>) -> Result<Vec<GroupAlgElem<R>>> {
    space.basis().rows().iter().map(|v| GroupAlgElem::from_vector(ring, d, v)).collect()
}

fn vector_json<R: Ring>(ring: &R, d: usize, v: &[R::Elem]) -> Value {
    match GroupAlgElem::from_vector(ring, d, v) {
        Ok(e) => e.to_json(),
        Err(e) => Value::String(e.to_string()),
    }
}

/// First basis row of `a` outside `b`, then of `b` outside `a`.
fn span_difference<R: Ring>(ring: &R, d: usize, a: &RowSpace<R>, b: &RowSpace<R>) -> Result<Value> {
    for (name, x, y) in [("in_first_not_second", a, b), ("in_second_not_first", b, a)] {
        for row in x.basis().rows() {
            if !y.contains(row)? {
                return Ok(serde_json::json!({ name: vector_json(ring, d, row) }));
            }
        }
    }
    Ok(serde_json::json!({ "note": "spans agree but ranks differ from the formula" }))
}
