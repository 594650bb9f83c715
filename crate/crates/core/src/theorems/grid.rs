use rayon::prelude::*;

use super::algebra::{check_cell_ideal_two_sided, check_hook_embedding, check_murphy_unimodular, check_schur_weyl};
use super::kernel::{
    check_annihilator_transfer, check_char0_semisimple, check_faithful, check_general_annihilator,
    check_kernel_cell_ideal, check_kernel_contains_cell_ideal, check_rank_independence,
};
use super::tensor_checks::{check_decomposition, check_h_module_isos, check_when_zero_all, shapes};
use super::CheckReport;
use crate::combinatorics::{alpha, dominates, Partition};
use crate::error::{invalid, Error, Result};
use crate::guard::SizeGuard;
use crate::ring::RingSpec;
use crate::tensor::{Eps, Instance};

pub const CHECK_NAMES: &[&str] = &[
    "kernel_cell_ideal",
    "kernel_contains_cell_ideal",
    "annihilator_transfer",
    "rank_independence",
    "char0_semisimple",
    "decomposition",
    "faithful",
    "schur_weyl",
    "when_zero",
    "hook_embedding",
    "h_module_isos",
    "murphy_unimodular",
    "cell_ideal_two_sided",
    "general_annihilator",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridOptions {
    /// Largest group degree `d` to include.
    pub max_d: usize,
    /// Restrict ring-parameterized checks to this ring.
    pub ring: Option<RingSpec>,
    pub guard: SizeGuard,
}

impl Default for GridOptions {
    fn default() -> Self {
        GridOptions { max_d: 5, ring: None, guard: SizeGuard::default() }
    }
}

/// One unit of verification work.
#[derive(Debug, Clone, PartialEq)]
pub enum Task {
    Instance { check: &'static str, inst: Instance },
    WhenZero { d: usize, lambda: Partition },
    HookEmbedding { d: usize, r: usize, lambda: Partition, ring: RingSpec },
    HModules { n: usize },
    Murphy { d: usize },
    TwoSided { d: usize, ring: RingSpec },
    GeneralAnnihilator { mu: Partition, ring: RingSpec },
}

impl Task {
    pub fn check(&self) -> &'static str {
        match self {
            Task::Instance { check, .. } => check,
            Task::WhenZero { .. } => "when_zero",
            Task::HookEmbedding { .. } => "hook_embedding",
            Task::HModules { .. } => "h_module_isos",
            Task::Murphy { .. } => "murphy_unimodular",
            Task::TwoSided { .. } => "cell_ideal_two_sided",
            Task::GeneralAnnihilator { .. } => "general_annihilator",
        }
    }
}

/// `(n, r, ε)` with `ε ∈ {0, ½}`, `d ∈ {3, 4, 5}` (capped by `max_d`),
/// `r ∈ {1, 2, 3}`, `d > r + 1`, and `n = d + 2ε`.
pub fn default_grid(max_d: usize) -> Vec<(usize, usize, Eps)> {
    let mut out = Vec::new();
    for eps in [Eps::Zero, Eps::Half] {
        for d in 3..=max_d.min(5) {
            for r in 1..=3 {
                if d > r + 1 {
                    out.push((if eps == Eps::Half { d + 1 } else { d }, r, eps));
                }
            }
        }
    }
    out
}

fn rings(opts: &GridOptions, default: &[RingSpec]) -> Vec<RingSpec> {
    match opts.ring {
        Some(r) => vec![r],
        None => default.to_vec(),
    }
}

fn instance_tasks(check: &'static str, triples: &[(usize, usize, Eps)], rings: &[RingSpec]) -> Result<Vec<Task>> {
    let mut out = Vec::new();
    for &(n, r, eps) in triples {
        for &ring in rings {
            out.push(Task::Instance { check, inst: Instance::new(n, r, eps, ring)? });
        }
    }
    Ok(out)
}

const Z: RingSpec = RingSpec::Integers;
const Q: RingSpec = RingSpec::Rationals;
const F2: RingSpec = RingSpec::PrimeField(2);
const F3: RingSpec = RingSpec::PrimeField(3);

/// The tasks `check` runs under `opts`, in output order.
pub fn plan(check: &str, opts: &GridOptions) -> Result<Vec<Task>> {
    let check: &'static str = CHECK_NAMES
        .iter()
        .find(|&&c| c == check)
        .ok_or_else(|| invalid!("unknown check {check:?}; known checks: {}", CHECK_NAMES.join(", ")))?;
    let grid = default_grid(opts.max_d);
    let fields_only = |list: Vec<RingSpec>| list.into_iter().filter(RingSpec::is_field).collect::<Vec<_>>();
    let small = |cap: usize| 1..=opts.max_d.min(cap);
    match check {
        "kernel_cell_ideal" | "kernel_contains_cell_ideal" => {
            instance_tasks(check, &grid, &rings(opts, &[Z, Q, F2, F3]))
        }
        "annihilator_transfer" => instance_tasks(check, &grid, &rings(opts, &[Q, Z])),
        "rank_independence" => instance_tasks(check, &grid, &[Z]),
        "char0_semisimple" => {
            let only_q = opts.ring.is_none_or(|r| r == Q);
            instance_tasks(check, if only_q { &grid } else { &[] }, &[Q])
        }
        "schur_weyl" => {
            let list: Vec<_> =
                [(2, 2, Eps::Zero), (3, 1, Eps::Zero), (3, 2, Eps::Zero), (3, 1, Eps::Half), (4, 1, Eps::Half)]
                    .into_iter()
                    .filter(|&(n, _, eps)| if eps == Eps::Half { n - 1 } else { n } <= opts.max_d)
                    .collect();
            instance_tasks(check, &list, &fields_only(rings(opts, &[Q, F2])))
        }
        "decomposition" => instance_tasks(check, &tensor_grid(4, 4, opts.max_d), &[Z]),
        "faithful" => instance_tasks(check, &tensor_grid(5, 4, opts.max_d), &rings(opts, &[Q])),
        "when_zero" => {
            Ok(small(5).flat_map(|d| shapes(d).into_iter().map(move |lambda| Task::WhenZero { d, lambda })).collect())
        }
        "hook_embedding" => {
            let mut out = Vec::new();
            for ring in rings(opts, &[Z]) {
                for d in 3..=opts.max_d.min(5) {
                    for r in 1..d - 1 {
                        let a = alpha(d, r)?;
                        for lambda in shapes(d) {
                            if dominates(&lambda, &a)? {
                                out.push(Task::HookEmbedding { d, r, lambda, ring });
                            }
                        }
                    }
                }
            }
            Ok(out)
        }
        "h_module_isos" => Ok(small(5).map(|n| Task::HModules { n }).collect()),
        "murphy_unimodular" => Ok(small(6).map(|d| Task::Murphy { d }).collect()),
        "cell_ideal_two_sided" => Ok(rings(opts, &[Z])
            .into_iter()
            .flat_map(|ring| small(5).map(move |d| Task::TwoSided { d, ring }))
            .collect()),
        "general_annihilator" => {
            let mut out = Vec::new();
            for ring in rings(opts, &[Q, F2]) {
                for d in small(4) {
                    out.extend(shapes(d).into_iter().map(|mu| Task::GeneralAnnihilator { mu, ring }));
                }
            }
            Ok(out)
        }
        _ => unreachable!("every name in CHECK_NAMES is planned"),
    }
}

/// All `(n, r, ε)` with `n ≤ max_n`, `r ≤ max_r`, `1 ≤ d ≤ max_d`.
fn tensor_grid(max_n: usize, max_r: usize, max_d: usize) -> Vec<(usize, usize, Eps)> {
    let mut out = Vec::new();
    for eps in [Eps::Zero, Eps::Half] {
        for n in 1..=max_n {
            let d = if eps == Eps::Half { n.wrapping_sub(1) } else { n };
            if d == 0 || d > max_n || d > max_d {
                continue;
            }
            for r in 1..=max_r {
                out.push((n, r, eps));
            }
        }
    }
    out
}

pub fn run_task(task: &Task, guard: &SizeGuard) -> Result<CheckReport> {
    match task {
        Task::Instance { check, inst } => match *check {
            "kernel_cell_ideal" => check_kernel_cell_ideal(inst, guard),
            "kernel_contains_cell_ideal" => check_kernel_contains_cell_ideal(inst, guard),
            "annihilator_transfer" => check_annihilator_transfer(inst, guard),
            "rank_independence" => check_rank_independence(inst, guard),
            "char0_semisimple" => check_char0_semisimple(inst, guard),
            "decomposition" => check_decomposition(inst, guard),
            "faithful" => check_faithful(inst, guard),
            "schur_weyl" => check_schur_weyl(inst, guard),
            other => Err(Error::InvalidArgument(format!("{other} does not run on tensor instances"))),
        },
        Task::WhenZero { d, lambda } => check_when_zero_all(*d, lambda, guard),
        Task::HookEmbedding { d, r, lambda, ring } => check_hook_embedding(*d, *r, lambda, *ring, guard),
        Task::HModules { n } => check_h_module_isos(*n, guard),
        Task::Murphy { d } => check_murphy_unimodular(*d, guard),
        Task::TwoSided { d, ring } => check_cell_ideal_two_sided(*d, *ring, guard),
        Task::GeneralAnnihilator { mu, ring } => check_general_annihilator(mu, *ring, guard),
    }
}

/// Runs the named checks over their grids on `jobs` worker threads (0 for
/// the rayon default). Reports come back in plan order regardless of
/// which finished first.
pub fn run_checks(names: &[&str], opts: &GridOptions, jobs: usize) -> Result<Vec<CheckReport>> {
    let mut tasks = Vec::new();
    for name in names {
        tasks.extend(plan(name, opts)?);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("cannot start worker pool: {e}")))?;
    pool.install(|| tasks.par_iter().map(|t| run_task(t, &opts.guard)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_contents() {
        let g = default_grid(5);
        assert_eq!(g.len(), 12);
        assert!(g.contains(&(5, 2, Eps::Zero)));
        assert!(g.contains(&(6, 3, Eps::Half)));
        assert_eq!(default_grid(3), vec![(3, 1, Eps::Zero), (4, 1, Eps::Half)]);
    }

    #[test]
    fn plans() {
        let opts = GridOptions::default();
        assert_eq!(plan("kernel_cell_ideal", &opts).unwrap().len(), 48);
        assert!(plan("nonsense", &opts).is_err());
        let q_only = GridOptions { ring: Some(Q), ..opts };
        assert_eq!(plan("kernel_cell_ideal", &q_only).unwrap().len(), 12);
        let z_only = GridOptions { ring: Some(Z), ..opts };
        assert!(plan("schur_weyl", &z_only).unwrap().is_empty());
        assert!(plan("char0_semisimple", &z_only).unwrap().is_empty());
        for name in CHECK_NAMES {
            assert!(!plan(name, &opts).unwrap().is_empty(), "{name}");
        }
    }

    #[test]
    fn small_run_is_ordered() {
        let opts = GridOptions { max_d: 3, ..GridOptions::default() };
        let a = run_checks(&["kernel_cell_ideal", "h_module_isos"], &opts, 4).unwrap();
        let b = run_checks(&["kernel_cell_ideal", "h_module_isos"], &opts, 1).unwrap();
        assert_eq!(a, b);
        assert!(a.iter().all(|r| r.pass));
        assert_eq!(a[0].check, "kernel_cell_ideal");
        assert_eq!(a.last().unwrap().check, "h_module_isos");
    }
}
