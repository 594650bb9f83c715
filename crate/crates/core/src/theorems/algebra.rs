use num_traits::One;
use serde_json::json;

use super::{instance_json, CheckReport};
use crate::combinatorics::{alpha, dominates, partitions_of, Partition, Permutation};
use crate::error::{invalid, Result};
use crate::guard::{factorial, SizeGuard};
use crate::linalg::{commutant, hnf, integer_determinant_abs, solve_left, Matrix, RowSpace};
use crate::ring::{Field, Integers, Ring, RingSpec};
use crate::symgroup::{
    cell_ideal_y, coefficient_matrix, is_upward_closed, murphy_transition_matrix, x_element, GroupAlgElem, MurphyKind,
};
use crate::tensor::{acting_diagrams, diagram_matrix, phi_matrix, Instance};
use crate::{with_field, with_ring};

/// `x_λ ∈ R·Sym_d · x_{α(d,r)}` whenever `λ ⊵ α(d,r)`: solves
/// `z · x_α = x_λ` and reports `z`.
pub fn check_hook_embedding(
    d: usize,
    r: usize,
    lambda: &Partition,
    ring: RingSpec,
    guard: &SizeGuard,
) -> Result<CheckReport> {
    let a = alpha(d, r)?;
    if lambda.size() != d || !dominates(lambda, &a)? {
        return Err(invalid!("hook_embedding needs λ ⊵ α({d},{r}) = ({a}), got ({lambda})"));
    }
    with_ring!(ring, |ring| hook_embedding_in(&ring, d, r, lambda, &a, guard))
}

fn hook_embedding_in<R: Ring>(
    ring: &R,
    d: usize,
    r: usize,
    lambda: &Partition,
    a: &Partition,
    guard: &SizeGuard,
) -> Result<CheckReport> {
    let x_alpha = x_element(&a.as_composition(), d, ring, guard)?;
    let x_lambda = x_element(&lambda.as_composition(), d, ring, guard)?;
    // row w is w · x_α
    let rows: Vec<Vec<R::Elem>> = Permutation::all(d)
        .into_iter()
        .map(|w| GroupAlgElem::from_perm(ring, w).multiply(&x_alpha).map(|e| e.to_vector()))
        .collect::<Result<_>>()?;
    let m = Matrix::from_rows(ring, factorial(d) as usize, rows)?;
    let instance = json!({ "d": d, "r": r, "lambda": lambda.to_string(), "ring": ring.spec().to_string() });
    let mut report = CheckReport::new("hook_embedding", instance);
    match solve_left(&m, &x_lambda.to_vector())? {
        Some(z) => {
            let z = GroupAlgElem::from_vector(ring, d, &z)?;
            let ok = z.multiply(&x_alpha)? == x_lambda;
            report.require(ok, || json!({ "bad_solution": z.to_json() }));
            report = report.rank("solution_terms", z.len());
            if report.pass {
                report.witness = Some(json!({ "z": z.to_json() }));
            }
        }
        None => report.fail(json!({ "unsolvable": x_lambda.to_json() })),
    }
    Ok(report)
}

/// Both Murphy bases of `ℤ·Sym_d` are ℤ-bases: the transition matrix to the
/// permutation basis has Hermite form `I`, i.e. determinant `±1`.
pub fn check_murphy_unimodular(d: usize, guard: &SizeGuard) -> Result<CheckReport> {
    let mut report = CheckReport::new("murphy_unimodular", json!({ "d": d })).rank("size", factorial(d) as usize);
    for kind in [MurphyKind::X, MurphyKind::Y] {
        let m = murphy_transition_matrix(d, kind, guard)?;
        let det = integer_determinant_abs(&m)?;
        let name = if kind == MurphyKind::X { "x" } else { "y" };
        report.require(
            det.is_one() && hnf(&m) == Matrix::identity(&Integers, m.nrows()),
            || json!({ "basis": name, "abs_determinant": det.to_string() }),
        );
    }
    Ok(report)
}

/// Upward-closed shape sets of `d` that are of the form `{λ : λ ⋬ μ}`, one per `μ`,
/// plus the full set.
fn cell_ideal_shape_sets(d: usize) -> Vec<(String, Vec<Partition>)> {
    let all = partitions_of(d);
    let mut out = vec![("all".to_string(), all.clone())];
    for mu in &all {
        let set: Vec<Partition> = all.iter().filter(|l| !dominates(mu, l).expect("same size")).cloned().collect();
        out.push((format!("not_below_{mu}"), set));
    }
    out
}

/// Each cell ideal `A^y[Ω]` is closed under multiplication by the Coxeter
/// generators on both sides (so it is a two-sided ideal).
pub fn check_cell_ideal_two_sided(d: usize, ring: RingSpec, guard: &SizeGuard) -> Result<CheckReport> {
    if d == 0 {
        return Err(invalid!("cell_ideal_two_sided needs d >= 1"));
    }
    with_ring!(ring, |ring| two_sided_in(&ring, d, guard))
}

fn two_sided_in<R: Ring>(ring: &R, d: usize, guard: &SizeGuard) -> Result<CheckReport> {
    let instance = json!({ "d": d, "ring": ring.spec().to_string() });
    let mut report = CheckReport::new("cell_ideal_two_sided", instance);
    let gens: Vec<GroupAlgElem<R>> = (1..d)
        .map(|i| Permutation::transposition(d, i, i + 1).map(|s| GroupAlgElem::from_perm(ring, s)))
        .collect::<Result<_>>()?;
    let mut sets = 0;
    for (name, set) in cell_ideal_shape_sets(d) {
        if !is_upward_closed(d, |l| set.contains(l)) {
            report.fail(json!({ "not_upward_closed": name }));
            continue;
        }
        sets += 1;
        let ideal = cell_ideal_y(d, |l: &Partition| set.contains(l), ring, guard)?;
        let base = coefficient_matrix(ring, d, &ideal);
        let span = RowSpace::of(&base);
        let mut products = Vec::with_capacity(ideal.len() * gens.len() * 2);
        for y in &ideal {
            for g in &gens {
                products.push(g.multiply(y)?);
                products.push(y.multiply(g)?);
            }
        }
        let grown = RowSpace::of(&base.vstack(&coefficient_matrix(ring, d, &products))?);
        report.require(
            grown == span,
            || json!({ "shape_set": name, "ideal_rank": span.rank(), "with_products": grown.rank() }),
        );
    }
    Ok(report.rank("shape_sets", sets))
}

/// The image of `Φ` is exactly the commutant of the diagram action.
pub fn check_schur_weyl(inst: &Instance, guard: &SizeGuard) -> Result<CheckReport> {
    with_field!(inst.ring, |field| schur_weyl_in(&field, inst, guard))
}

fn schur_weyl_in<F: Field>(field: &F, inst: &Instance, guard: &SizeGuard) -> Result<CheckReport> {
    let dim = inst.dim();
    let image = RowSpace::of(&phi_matrix(field, inst, guard)?.to_dense());
    let mats: Vec<Matrix<F>> =
        acting_diagrams(inst).iter().map(|x| diagram_matrix(field, x, inst)).collect::<Result<_>>()?;
    let comm = commutant(field, &mats, dim)?;
    let flat: Vec<Vec<F::Elem>> = comm.into_iter().map(|m| m.into_rows().concat()).collect();
    let comm_space = RowSpace::of(&Matrix::from_rows(field, dim * dim, flat)?);
    let mut report = CheckReport::new("schur_weyl", instance_json(inst))
        .rank("image", image.rank())
        .rank("commutant", comm_space.rank())
        .rank("diagrams", mats.len());
    if image != comm_space {
        let witness = comm_space
            .basis()
            .rows()
            .iter()
            .find(|row| !image.contains(row).unwrap_or(false))
            .map(|row| json!({ "commuting_operator_outside_image": row.iter().map(|c| field.format(c)).collect::<Vec<_>>() }))
            .unwrap_or_else(|| json!({ "image_rank": image.rank(), "commutant_rank": comm_space.rank() }));
        report.fail(witness);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::Eps;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn hook_embedding_examples() {
        let g = SizeGuard::default();
        let rep = check_hook_embedding(3, 1, &p("3"), RingSpec::Integers, &g).unwrap();
        assert!(rep.pass, "{rep:?}");
        let rep = check_hook_embedding(4, 2, &p("2,2"), RingSpec::Integers, &g).unwrap();
        assert!(rep.pass, "{rep:?}");
        let rep = check_hook_embedding(4, 2, &p("2,1,1"), RingSpec::Integers, &g).unwrap();
        assert!(rep.pass);
        assert!(check_hook_embedding(4, 2, &p("1,1,1,1"), RingSpec::Integers, &g).is_err());
    }

    #[test]
    fn hook_embedding_known_solution() {
        // z = e + (1 3) + (2 3) works for x_(3) = z · x_(2,1)
        let z = Integers;
        let g = SizeGuard::default();
        let sol = GroupAlgElem::from_terms(
            &z,
            3,
            ["[1,2,3]", "[3,2,1]", "[1,3,2]"].iter().map(|s| (s.parse().unwrap(), z.one())),
        )
        .unwrap();
        let x21 = x_element(&p("2,1").as_composition(), 3, &z, &g).unwrap();
        let x3 = x_element(&p("3").as_composition(), 3, &z, &g).unwrap();
        assert_eq!(sol.multiply(&x21).unwrap(), x3);
    }

    #[test]
    fn murphy_small() {
        let g = SizeGuard::default();
        for d in 1..=4 {
            assert!(check_murphy_unimodular(d, &g).unwrap().pass);
        }
    }

    #[test]
    fn two_sided_small() {
        let g = SizeGuard::default();
        for d in 1..=4 {
            let rep = check_cell_ideal_two_sided(d, RingSpec::Integers, &g).unwrap();
            assert!(rep.pass, "{rep:?}");
        }
    }

    #[test]
    fn schur_weyl_examples() {
        let g = SizeGuard::default();
        let rep = check_schur_weyl(&Instance::new(2, 2, Eps::Zero, RingSpec::Rationals).unwrap(), &g).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.ranks["image"], 2);
        let rep = check_schur_weyl(&Instance::new(3, 1, Eps::Zero, RingSpec::Rationals).unwrap(), &g).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.ranks["image"], 5);
        assert!(check_schur_weyl(&Instance::new(3, 1, Eps::Zero, RingSpec::Integers).unwrap(), &g).is_err());
    }
}
