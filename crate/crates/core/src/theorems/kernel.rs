use serde_json::json;

use super::{
    expected_kernel_rank, f_lambda, instance_json, kernel, require_hook_range, span_difference, vector_json,
    CheckReport,
};
use crate::combinatorics::{alpha, dominates, partitions_of, Partition};
use crate::error::{invalid, Error, Result};
use crate::guard::{factorial, SizeGuard};
use crate::linalg::{left_nullspace, Matrix, RowSpace};
use crate::ring::{Integers, PrimeField, Rationals, Ring, RingSpec};
use crate::symgroup::{cell_ideal_y, coefficient_matrix};
use crate::tensor::{perm_module_matrix, phi_matrix, Instance};
use crate::with_ring;

/// `ker Φ` equals the span (lattice over ℤ) of the `y_st` whose shape has
/// fewer than `d − r` rows, and has rank `Σ f_λ²` over those shapes.
pub fn check_kernel_cell_ideal(inst: &Instance, guard: &SizeGuard) -> Result<CheckReport> {
    require_hook_range(inst)?;
    with_ring!(inst.ring, |ring| kernel_cell_ideal_in(&ring, inst, guard))
}

fn kernel_cell_ideal_in<R: Ring>(ring: &R, inst: &Instance, guard: &SizeGuard) -> Result<CheckReport> {
    let (d, r) = (inst.d(), inst.r);
    let k = kernel(ring, inst, guard)?;
    let ideal = cell_ideal_y(d, |l: &Partition| l.rows() + r < d, ring, guard)?;
    let c = RowSpace::of(&coefficient_matrix(ring, d, &ideal));
    let expected = expected_kernel_rank(d, r);
    let mut report = CheckReport::new("kernel_cell_ideal", instance_json(inst))
        .rank("kernel", k.rank())
        .rank("cell_ideal", c.rank())
        .rank("expected", expected);
    if k != c || k.rank() != expected {
        report.fail(span_difference(ring, d, &k, &c)?);
    }
    Ok(report)
}

/// Every `y_st` with fewer than `d − r` rows acts as zero on tensor space.
pub fn check_kernel_contains_cell_ideal(inst: &Instance, guard: &SizeGuard) -> Result<CheckReport> {
    require_hook_range(inst)?;
    with_ring!(inst.ring, |ring| contains_in(&ring, inst, guard))
}

fn contains_in<R: Ring>(ring: &R, inst: &Instance, guard: &SizeGuard) -> Result<CheckReport> {
    let (d, r) = (inst.d(), inst.r);
    let phi = phi_matrix(ring, inst, guard)?;
    let ideal = cell_ideal_y(d, |l: &Partition| l.rows() + r < d, ring, guard)?;
    let mut report =
        CheckReport::new("kernel_contains_cell_ideal", instance_json(inst)).rank("cell_ideal", ideal.len());
    for y in &ideal {
        if !phi.vec_mul(&y.to_vector())?.is_empty() {
            report.fail(json!({ "acts_nonzero": y.to_json() }));
            break;
        }
    }
    Ok(report)
}

/// `ker Φ = ann M^{α(d,r)}`.
pub fn check_annihilator_transfer(inst: &Instance, guard: &SizeGuard) -> Result<CheckReport> {
    require_hook_range(inst)?;
    with_ring!(inst.ring, |ring| annihilator_in(&ring, inst, guard))
}

fn annihilator_in<R: Ring>(ring: &R, inst: &Instance, guard: &SizeGuard) -> Result<CheckReport> {
    let (d, r) = (inst.d(), inst.r);
    let k = kernel(ring, inst, guard)?;
    let a = alpha(d, r)?;
    let m = perm_module_matrix(&a.as_composition(), d, ring, guard)?;
    let ann = left_nullspace(&m.compress_columns());
    let mut report = CheckReport::new("annihilator_transfer", instance_json(inst))
        .rank("kernel", k.rank())
        .rank("annihilator", ann.rank());
    if k != ann {
        report.fail(span_difference(ring, d, &k, &ann)?);
    }
    Ok(report)
}

/// The kernel rank is the same over ℤ, ℚ, 𝔽₂, 𝔽₃, 𝔽₅, and the integral
/// kernel reduced mod `p` is the kernel over `𝔽_p`.
pub fn check_rank_independence(inst: &Instance, guard: &SizeGuard) -> Result<CheckReport> {
    require_hook_range(inst)?;
    let (d, r) = (inst.d(), inst.r);
    let expected = expected_kernel_rank(d, r);
    let kz = kernel(&Integers, &inst.with_ring(RingSpec::Integers), guard)?;
    let kq = kernel(&Rationals, &inst.with_ring(RingSpec::Rationals), guard)?;
    let mut report = CheckReport::new("rank_independence", instance_json(&inst.with_ring(RingSpec::Integers)))
        .rank("expected", expected)
        .rank("Z", kz.rank())
        .rank("Q", kq.rank());
    let mut ranks = vec![("Z".to_string(), kz.rank()), ("Q".to_string(), kq.rank())];
    for p in [2, 3, 5] {
        let f = PrimeField::new(p)?;
        let kp = kernel(&f, &inst.with_ring(RingSpec::PrimeField(p)), guard)?;
        report = report.rank(&format!("F{p}"), kp.rank());
        ranks.push((format!("F{p}"), kp.rank()));
        let reduced = RowSpace::of(&Matrix::from_integer_matrix(&f, kz.basis()));
        report.require(
            reduced == kp,
            || json!({ "field": format!("F{p}"), "reduced_integral_rank": reduced.rank(), "field_rank": kp.rank() }),
        );
    }
    report.require(ranks.iter().all(|(_, k)| *k == expected), || json!({ "ranks": ranks }));
    Ok(report)
}

/// Over ℚ the kernel has rank `Σ f_λ²` over `λ ⋭ α(d,r)` and the image the
/// complementary rank; the transpose identity matches the row-count form.
pub fn check_char0_semisimple(inst: &Instance, guard: &SizeGuard) -> Result<CheckReport> {
    require_hook_range(inst)?;
    if inst.ring != RingSpec::Rationals {
        return Err(Error::Ring(format!("char0_semisimple runs over Q, not {}", inst.ring)));
    }
    let (d, r) = (inst.d(), inst.r);
    let a = alpha(d, r)?;
    let shapes = partitions_of(d);
    let mut not_above = 0;
    for l in &shapes {
        if !dominates(l, &a)? {
            not_above += f_lambda(l).pow(2);
        }
    }
    let mut not_below_transpose = 0;
    for l in &shapes {
        if !dominates(&a.transpose(), l)? {
            not_below_transpose += f_lambda(&l.transpose()).pow(2);
        }
    }
    let q = Rationals;
    let phi = phi_matrix(&q, inst, guard)?.compress_columns();
    let image = RowSpace::of(&phi).rank();
    let k = left_nullspace(&phi).rank();
    let order = factorial(d) as usize;
    let mut report = CheckReport::new("char0_semisimple", instance_json(inst))
        .rank("kernel", k)
        .rank("image", image)
        .rank("semisimple_formula", not_above)
        .rank("transpose_formula", not_below_transpose)
        .rank("row_formula", expected_kernel_rank(d, r));
    let ok = k == not_above
        && image + not_above == order
        && not_above == not_below_transpose
        && not_above == expected_kernel_rank(d, r);
    report.require(ok, || json!({ "kernel": k, "image": image, "formula": not_above, "group_order": order }));
    Ok(report)
}

/// `Φ` is faithful exactly when `d ≤ r + 1`.
pub fn check_faithful(inst: &Instance, guard: &SizeGuard) -> Result<CheckReport> {
    with_ring!(inst.ring, |ring| {
        let k = kernel(&ring, inst, guard)?;
        let predicted = inst.d() <= inst.r + 1;
        let mut report = CheckReport::new("faithful", instance_json(inst)).rank("kernel", k.rank());
        if (k.rank() == 0) != predicted {
            let witness = match k.basis().rows().first() {
                Some(row) => {
                    json!({ "kernel_element": vector_json(&ring, inst.d(), row), "predicted_faithful": predicted })
                }
                None => json!({ "kernel_rank": 0, "predicted_faithful": predicted }),
            };
            report.fail(witness);
        }
        Ok(report)
    })
}

/// For any `μ ⊢ d`, `⋂_{λ ⊵ μ} ann M^λ` is spanned by the `y_st` whose shape
/// is not dominated by `μᵗ`.
pub fn check_general_annihilator(mu: &Partition, ring: RingSpec, guard: &SizeGuard) -> Result<CheckReport> {
    let d = mu.size();
    if d == 0 {
        return Err(invalid!("general_annihilator needs d >= 1"));
    }
    with_ring!(ring, |ring| general_annihilator_in(&ring, mu, guard))
}

fn general_annihilator_in<R: Ring>(ring: &R, mu: &Partition, guard: &SizeGuard) -> Result<CheckReport> {
    let d = mu.size();
    let instance = json!({ "d": d, "mu": mu.to_string(), "ring": ring.spec().to_string() });
    let mut stacked: Option<Matrix<R>> = None;
    let mut modules = 0;
    for lambda in partitions_of(d) {
        if !dominates(&lambda, mu)? {
            continue;
        }
        modules += 1;
        let m = perm_module_matrix(&lambda.as_composition(), d, ring, guard)?.compress_columns();
        stacked = Some(match stacked {
            None => m,
            Some(s) => s.hstack(&m)?,
        });
    }
    let stacked = stacked.expect("μ dominates itself");
    let ann = left_nullspace(&stacked);
    let mu_t = mu.transpose();
    let ideal = cell_ideal_y(d, |l: &Partition| !mu_t.dominates(l).expect("same size"), ring, guard)?;
    let c = RowSpace::of(&coefficient_matrix(ring, d, &ideal));
    let mut report = CheckReport::new("general_annihilator", instance)
        .rank("modules", modules)
        .rank("annihilator", ann.rank())
        .rank("cell_ideal", c.rank());
    if ann != c {
        report.fail(span_difference(ring, d, &ann, &c)?);
    }
    Ok(report)
}
