//! Partitions, tableaux, permutations and the hook machinery.

mod partition;
mod permutation;
mod tableau;

pub use partition::{alpha, hook_set, partitions_of, stirling2, Partition, WeakComposition};
pub use permutation::Permutation;
pub use tableau::{d_of, row_reading_tableau, row_standard_tableaux, standard_tableaux, young_subgroup, Tableau};

/// Every set partition of an `len`-element set, as block labels numbered
/// by first appearance (restricted growth strings), in lexicographic order.
pub fn set_partition_labels(len: usize) -> Vec<Vec<u8>> {
    fn go(len: usize, next: u8, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for b in 0..=next {
            cur.push(b);
            go(len, if b == next { next + 1 } else { next }, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(len, 0, &mut Vec::with_capacity(len), &mut out);
    out
}

/// `λ ⊵ μ`. Every other dominance question in the crate goes through here.
pub fn dominates(lambda: &Partition, mu: &Partition) -> crate::Result<bool> {
    lambda.dominates(mu)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn below_alpha_t(l: &Partition, d: usize, r: usize) -> bool {
        dominates(&alpha(d, r).unwrap().transpose(), l).unwrap()
    }

    #[test]
    fn set_partition_counts() {
        for len in 0..=7 {
            let all = set_partition_labels(len);
            for l in 0..=len {
                let count = all.iter().filter(|s| s.iter().max().map_or(0, |&m| m as usize + 1) == l).count();
                assert_eq!(count as u128, stirling2(len, l));
            }
        }
    }

    #[test]
    fn sum_of_squares_is_factorial() {
        for d in 1..=7 {
            let total: usize = partitions_of(d).iter().map(|l| standard_tableaux(l).len().pow(2)).sum();
            assert_eq!(total as u128, crate::guard::factorial(d));
        }
    }

    #[test]
    fn transpose_symmetry_of_standard_counts() {
        for d in 1..=7 {
            for l in partitions_of(d) {
                assert_eq!(standard_tableaux(&l).len(), standard_tableaux(&l.transpose()).len());
            }
        }
    }

    #[test]
    fn hook_dominance_characterizations() {
        for d in 3..=8 {
            for r in 1..d - 1 {
                let a = alpha(d, r).unwrap();
                for l in partitions_of(d) {
                    assert_eq!(dominates(&l, &a).unwrap(), l.cols() >= d - r, "(a) d={d} r={r} {l}");
                    assert_eq!(below_alpha_t(&l, d, r), l.rows() >= d - r, "(b) d={d} r={r} {l}");
                }
            }
        }
    }

    #[test]
    fn few_rows_is_upward_closed() {
        for d in 3..=8 {
            for r in 1..d - 1 {
                let all = partitions_of(d);
                for l in all.iter().filter(|l| l.rows() < d - r) {
                    for m in &all {
                        if dominates(m, l).unwrap() {
                            assert!(m.rows() < d - r);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dominance_is_a_partial_order() {
        for d in 1..=8 {
            let all = partitions_of(d);
            for a in &all {
                assert!(dominates(a, a).unwrap());
                for b in &all {
                    let ab = dominates(a, b).unwrap();
                    if ab && dominates(b, a).unwrap() {
                        assert_eq!(a, b);
                    }
                    if ab {
                        for c in &all {
                            if dominates(b, c).unwrap() {
                                assert!(dominates(a, c).unwrap());
                            }
                        }
                    }
                }
            }
        }
    }
}
