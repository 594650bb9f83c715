use std::collections::BTreeSet;

use serde_json::json;

use super::{instance_json, CheckReport};
use crate::combinatorics::{
    partitions_of, row_standard_tableaux, stirling2, young_subgroup, Partition, Permutation, WeakComposition,
};
use crate::error::{invalid, Result};
use crate::guard::{factorial, falling_factorial, SizeGuard};
use crate::ring::{Integers, Ring, RingSpec};
use crate::symgroup::{y_element, GroupAlgElem};
use crate::tensor::{act_group_elem, orbit_basis, weyl_act, Eps, Instance, TensorIndex, TensorVec, ValueType};

/// Value-type orbits decompose `I(n, r)`: the number of types with `l`
/// blocks is `S(r+2ε, l)`, orbit sizes are falling factorials (divided by
/// `n` in the half case), the orbits are `W_d`-orbits, and the sizes sum
/// to `n^r`.
pub fn check_decomposition(inst: &Instance, guard: &SizeGuard) -> Result<CheckReport> {
    guard.check_action(inst.d(), inst.n, inst.r)?;
    let (n, r) = (inst.n, inst.r);
    let half = inst.eps == Eps::Half;
    let places = if half { r + 1 } else { r };
    let types = ValueType::all(places);
    let group = Permutation::all(inst.d());
    let mut report = CheckReport::new("decomposition", instance_json(inst)).rank("dimension", inst.dim());

    for l in 0..=places {
        let count = types.iter().filter(|t| t.len() == l).count();
        report.require(count as u128 == stirling2(places, l), || json!({ "blocks": l, "types": count }));
    }
    let stirling_total: u128 = (0..=r).map(|l| stirling2(r, l) * falling_factorial(n, l)).sum();
    report.require(stirling_total == inst.dim() as u128, || json!({ "stirling_sum": stirling_total.to_string() }));

    let mut seen = BTreeSet::new();
    let mut nonempty = 0;
    for t in &types {
        let orbit = orbit_basis(t, inst, half)?;
        let full = falling_factorial(n, t.len());
        let want = if half { full / n as u128 } else { full };
        report
            .require(orbit.len() as u128 == want, || json!({ "value_type": t.to_string(), "orbit_size": orbit.len() }));
        if half {
            // same type counted in V^{⊗(r+1)}: n times as many
            let plain = orbit_basis(t, &Instance { r: places, eps: Eps::Zero, ..*inst }, false)?;
            report.require(
                plain.len() == n * orbit.len(),
                || json!({ "value_type": t.to_string(), "plain": plain.len(), "half": orbit.len() }),
            );
        }
        if let Some(first) = orbit.first() {
            nonempty += 1;
            let reached: BTreeSet<TensorIndex> =
                group.iter().map(|w| weyl_act(w, first, inst)).collect::<Result<_>>()?;
            let members: BTreeSet<TensorIndex> = orbit.iter().cloned().collect();
            report.require(
                reached == members,
                || json!({ "value_type": t.to_string(), "not_transitive": first.to_string() }),
            );
        }
        for idx in orbit {
            if !seen.insert(idx.clone()) {
                report.fail(json!({ "index_in_two_orbits": idx.to_string() }));
            }
        }
    }
    report.require(seen.len() == inst.dim(), || json!({ "covered": seen.len() }));
    Ok(report.rank("orbits", nonempty))
}

/// The orbit of `v_{n−l+1} ⊗ … ⊗ v_n` under `Sym_n` has stabilizer
/// `W_{(n−l, 1^l)}`, so it is a copy of `M^{(n−l,1^l)}`; for `l ≥ n − 1`
/// the stabilizer is trivial and the orbit is regular.
pub fn check_h_module_isos(n: usize, guard: &SizeGuard) -> Result<CheckReport> {
    if n == 0 {
        return Err(invalid!("h_module_isos needs n >= 1"));
    }
    guard.check_degree(n)?;
    let group = Permutation::all(n);
    let mut report = CheckReport::new("h_module_isos", json!({ "n": n }));
    for l in 0..=n {
        let inst = Instance::new(n, l.max(1), Eps::Zero, RingSpec::Integers)?;
        let values: Vec<usize> = (n - l + 1..=n).collect();
        let v = TensorIndex::new(&values, n)?;
        let mut stabilizer = Vec::new();
        let mut orbit = BTreeSet::new();
        for w in &group {
            // an empty index has a one-point orbit
            let image = if l == 0 { v.clone() } else { weyl_act(w, &v, &inst)? };
            if image == v {
                stabilizer.push(w.clone());
            }
            orbit.insert(image);
        }
        let mut shape = vec![n - l];
        shape.extend(std::iter::repeat_n(1, l));
        let composition = WeakComposition::new(shape);
        let young = young_subgroup(&composition, n, guard)?;
        let tabloids = row_standard_tableaux(&composition).len();
        let size = factorial(n) / factorial(n - l);
        report.require(stabilizer == young, || json!({ "l": l, "stabilizer_order": stabilizer.len() }));
        report.require(
            orbit.len() as u128 == size && tabloids as u128 == size,
            || json!({ "l": l, "orbit": orbit.len(), "tabloids": tabloids }),
        );
        if l + 1 >= n {
            report.require(stabilizer.len() == 1, || json!({ "l": l, "stabilizer_order": stabilizer.len() }));
        }
        report = report.rank(&format!("orbit_l{l}"), orbit.len());
    }
    Ok(report)
}

/// For `v` a simple tensor with distinct values, `S = W_λ ∩ W_B` (`B` the
/// values not used by `v`) decides whether `y_λ · v` vanishes, and
/// `y_λ · v = F_S · Σ_i sgn(w_i) w_i · v` over left coset representatives of
/// `S` in `W_λ`, with `F_S = Σ_{s ∈ S} sgn(s) ∈ {0, 1}`.
pub fn check_when_zero(d: usize, lambda: &Partition, v: &TensorIndex, guard: &SizeGuard) -> Result<CheckReport> {
    let z = Integers;
    let y = y_element(&lambda.as_composition(), d, &z, guard)?;
    let w_lambda = young_subgroup(&lambda.as_composition(), d, guard)?;
    let mut report =
        CheckReport::new("when_zero", json!({ "d": d, "lambda": lambda.to_string(), "index": v.to_string() }));
    when_zero_one(&z, d, &y, &w_lambda, v, &mut report)?;
    Ok(report)
}

fn when_zero_one(
    z: &Integers,
    d: usize,
    y: &GroupAlgElem<Integers>,
    w_lambda: &[Permutation],
    v: &TensorIndex,
    report: &mut CheckReport,
) -> Result<bool> {
    let values = v.entries();
    let distinct: BTreeSet<usize> = values.iter().copied().collect();
    if distinct.len() != values.len() || values.iter().any(|&i| i > d) {
        return Err(invalid!("{v} must have distinct values in 1..{d}"));
    }
    let l = values.len();
    if l == 0 {
        return Err(invalid!("the tensor must have at least one factor"));
    }
    let inst = Instance::new(d, l, Eps::Zero, RingSpec::Integers)?;
    let vec = TensorVec::basis(z, d, v.clone());
    // W_B: permutations fixing every used value
    let subgroup: Vec<&Permutation> = w_lambda.iter().filter(|w| values.iter().all(|&i| w.apply(i) == i)).collect();
    let f_s: i64 = subgroup.iter().map(|s| s.sign()).sum();
    let action = act_group_elem(y, &vec, &inst)?;

    // left coset representatives of S in W_λ: one per image w·v
    let mut reps: Vec<&Permutation> = Vec::new();
    let mut images = BTreeSet::new();
    for w in w_lambda {
        if images.insert(weyl_act(w, v, &inst)?) {
            reps.push(w);
        }
    }
    let mut predicted = TensorVec::zero(z, d, l);
    for w in &reps {
        predicted.add_term(weyl_act(w, v, &inst)?, &z.from_i64(w.sign() * f_s));
    }
    let trivial = subgroup.len() == 1;
    let ok = (f_s == 0 || f_s == 1)
        && (f_s == 1) == trivial
        && action == predicted
        && action.is_zero() != trivial
        && reps.len() * subgroup.len() == w_lambda.len();
    report.require(ok, || {
        json!({
            "index": v.to_string(),
            "stabilizer_order": subgroup.len(),
            "F_S": f_s,
            "action_terms": action.terms().len(),
        })
    });
    Ok(action.is_zero())
}

/// [`check_when_zero`] over every simple tensor with distinct values of
/// every length `1..=d`, for one shape.
pub fn check_when_zero_all(d: usize, lambda: &Partition, guard: &SizeGuard) -> Result<CheckReport> {
    if lambda.size() != d {
        return Err(invalid!("{lambda} is not a partition of {d}"));
    }
    let z = Integers;
    let y = y_element(&lambda.as_composition(), d, &z, guard)?;
    let w_lambda = young_subgroup(&lambda.as_composition(), d, guard)?;
    let mut report = CheckReport::new("when_zero", json!({ "d": d, "lambda": lambda.to_string() }));
    let (mut total, mut zero) = (0, 0);
    for l in 1..=d {
        for idx in TensorIndex::all(d, l) {
            let e = idx.entries();
            if e.iter().collect::<BTreeSet<_>>().len() != l {
                continue;
            }
            total += 1;
            if when_zero_one(&z, d, &y, &w_lambda, &idx, &mut report)? {
                zero += 1;
            }
        }
    }
    Ok(report.rank("tensors", total).rank("annihilated", zero))
}

/// Every shape of `d`, in the order used by the grid.
pub(super) fn shapes(d: usize) -> Vec<Partition> {
    partitions_of(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn idx(s: &str) -> TensorIndex {
        s.parse().unwrap()
    }

    #[test]
    fn when_zero_examples() {
        let g = SizeGuard::default();
        let rep = check_when_zero(3, &p("3"), &idx("(1)"), &g).unwrap();
        assert!(rep.pass, "{rep:?}");
        let rep = check_when_zero(3, &p("1,1,1"), &idx("(2)"), &g).unwrap();
        assert!(rep.pass, "{rep:?}");
        let rep = check_when_zero(4, &p("2,2"), &idx("(1,2)"), &g).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert!(check_when_zero(4, &p("2,2"), &idx("(1,1)"), &g).is_err());
    }

    #[test]
    fn when_zero_exhaustive_small() {
        let g = SizeGuard::default();
        for d in 1..=4 {
            for l in shapes(d) {
                let rep = check_when_zero_all(d, &l, &g).unwrap();
                assert!(rep.pass, "{rep:?}");
            }
        }
        // y_(3) kills v_i for every i, but not v_1 ⊗ v_2
        let rep = check_when_zero_all(3, &p("3"), &g).unwrap();
        assert_eq!(rep.ranks["tensors"], 3 + 6 + 6);
        assert_eq!(rep.ranks["annihilated"], 3);
    }

    #[test]
    fn decomposition_examples() {
        let g = SizeGuard::default();
        for (n, r, eps) in [(3, 2, Eps::Zero), (3, 2, Eps::Half), (2, 3, Eps::Zero), (1, 2, Eps::Zero)] {
            let inst = Instance::new(n, r, eps, RingSpec::Integers).unwrap();
            let rep = check_decomposition(&inst, &g).unwrap();
            assert!(rep.pass, "{rep:?}");
        }
    }

    #[test]
    fn h_modules() {
        let g = SizeGuard::default();
        let rep = check_h_module_isos(4, &g).unwrap();
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.ranks["orbit_l2"], 12);
        assert_eq!(rep.ranks["orbit_l3"], 24);
        assert_eq!(rep.ranks["orbit_l4"], 24);
    }
}
