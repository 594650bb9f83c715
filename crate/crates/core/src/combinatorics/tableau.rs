use std::fmt;
use std::str::FromStr;

use super::{Partition, Permutation, WeakComposition};
use crate::error::{invalid, Error, Result};
use crate::guard::{factorial, SizeGuard};

/// A filling of a (weak composition) shape by `1..d`, each used once.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
}

impl Tableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        let d: usize = rows.iter().map(Vec::len).sum();
        let mut seen = vec![false; d];
        for &v in rows.iter().flatten() {
            if v == 0 || v > d || seen[v - 1] {
                return Err(invalid!("tableau {rows:?} is not filled by 1..{d}"));
            }
            seen[v - 1] = true;
        }
        let mut rows = rows;
        while rows.last().is_some_and(Vec::is_empty) {
            rows.pop();
        }
        Ok(Tableau { rows })
    }

    /// Entries `1..d` written left to right along the rows.
    pub fn row_reading(shape: &WeakComposition) -> Tableau {
        let mut next = 1;
        let rows = shape
            .parts()
            .iter()
            .map(|&len| {
                let row: Vec<usize> = (next..next + len).collect();
                next += len;
                row
            })
            .collect();
        Tableau { rows }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn shape(&self) -> WeakComposition {
        WeakComposition::new(self.rows.iter().map(Vec::len).collect())
    }

    /// The shape, if it is a partition.
    pub fn partition_shape(&self) -> Option<Partition> {
        Partition::new(self.rows.iter().map(Vec::len).collect()).ok()
    }

    pub fn is_row_standard(&self) -> bool {
        self.rows.iter().all(|r| r.windows(2).all(|w| w[0] < w[1]))
    }

    pub fn is_standard(&self) -> bool {
        self.is_row_standard()
            && self.rows.windows(2).all(|pair| {
                let (above, below) = (&pair[0], &pair[1]);
                below.len() <= above.len() && below.iter().zip(above).all(|(b, a)| a < b)
            })
    }

    /// Apply `w` to every entry.
    pub fn permuted_by(&self, w: &Permutation) -> Tableau {
        let rows = self.rows.iter().map(|r| r.iter().map(|&v| w.apply(v)).collect()).collect();
        Tableau { rows }
    }

    /// Sort each row, giving the row-standard representative of the tabloid.
    pub fn row_sorted(mut self) -> Tableau {
        for r in &mut self.rows {
            r.sort_unstable();
        }
        self
    }

    /// Row index holding each entry `1..d`.
    pub fn row_index_sequence(&self) -> Vec<usize> {
        let mut seq = vec![0; self.size()];
        for (i, r) in self.rows.iter().enumerate() {
            for &v in r {
                seq[v - 1] = i;
            }
        }
        seq
    }
}

impl fmt::Display for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            let s: Vec<String> = r.iter().map(ToString::to_string).collect();
            write!(f, "[{}]", s.join(","))?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Tableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Tableau {
    type Err = Error;

    /// Row lists such as `[[1,2],[3]]`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("tableau {s:?} must look like [[1,2],[3]]"));
        let body: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = body.strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(bad)?;
        let mut rows = Vec::new();
        let mut rest = inner;
        while !rest.is_empty() {
            let open = rest.strip_prefix('[').ok_or_else(bad)?;
            let close = open.find(']').ok_or_else(bad)?;
            let row_text = &open[..close];
            let row = if row_text.is_empty() {
                Vec::new()
            } else {
                row_text.split(',').map(|t| t.parse::<usize>().map_err(|_| bad())).collect::<Result<Vec<_>>>()?
            };
            rows.push(row);
            rest = &open[close + 1..];
            rest = rest.strip_prefix(',').unwrap_or(rest);
        }
        Tableau::new(rows)
    }
}

/// `t^λ`.
pub fn row_reading_tableau(shape: &Partition) -> Tableau {
    Tableau::row_reading(&shape.as_composition())
}

fn fillings(shape: &[usize], standard: bool) -> Vec<Tableau> {
    fn go(k: usize, d: usize, shape: &[usize], standard: bool, rows: &mut Vec<Vec<usize>>, out: &mut Vec<Tableau>) {
        if k > d {
            out.push(Tableau { rows: rows.clone() });
            return;
        }
        for i in 0..shape.len() {
            let len = rows[i].len();
            if len == shape[i] {
                continue;
            }
            if standard && i > 0 && rows[i - 1].len() <= len {
                continue;
            }
            rows[i].push(k);
            go(k + 1, d, shape, standard, rows, out);
            rows[i].pop();
        }
    }
    let d = shape.iter().sum();
    let mut rows = vec![Vec::new(); shape.len()];
    let mut out = Vec::new();
    go(1, d, shape, standard, &mut rows, &mut out);
    out
}

/// All standard tableaux of shape `λ`, ordered lexicographically by the
/// row-index sequence of `1, 2, …, d`; the first is `t^λ`.
pub fn standard_tableaux(shape: &Partition) -> Vec<Tableau> {
    fillings(shape.parts(), true)
}

/// All row-standard tableaux of a weak composition shape (tabloid
/// representatives), in the same order convention.
pub fn row_standard_tableaux(shape: &WeakComposition) -> Vec<Tableau> {
    fillings(shape.parts(), false)
        .into_iter()
        .map(|mut t| {
            while t.rows.last().is_some_and(Vec::is_empty) {
                t.rows.pop();
            }
            t
        })
        .collect()
}

/// `d(t)`: the permutation with `d(t)·t^λ = t` (applied entrywise).
pub fn d_of(t: &Tableau) -> Result<Permutation> {
    if !t.is_row_standard() {
        return Err(invalid!("d(t) needs a row-standard tableau, got {t}"));
    }
    let images: Vec<usize> = t.rows.iter().flatten().copied().collect();
    Permutation::from_one_line(&images)
}

/// Every element of the Young subgroup `W_λ ⊂ Sym_d` (row stabilizer of
/// `t^λ`), sorted in lexicographic one-line order.
pub fn young_subgroup(shape: &WeakComposition, d: usize, guard: &SizeGuard) -> Result<Vec<Permutation>> {
    if shape.size() != d {
        return Err(invalid!("composition {shape} does not sum to {d}"));
    }
    let order: u128 = shape.parts().iter().map(|&p| factorial(p)).product();
    guard.check_group_order(order, &format!("Young subgroup W_({shape})"))?;

    let mut elems: Vec<Vec<u8>> = vec![(0..d as u8).collect()];
    let mut offset = 0;
    for &len in shape.parts() {
        if len > 1 {
            let local = Permutation::all(len);
            let mut next = Vec::with_capacity(elems.len() * local.len());
            for e in &elems {
                for q in &local {
                    let mut img = e.clone();
                    for i in 0..len {
                        img[offset + i] = (offset + q.apply0(i)) as u8;
                    }
                    next.push(img);
                }
            }
            elems = next;
        }
        offset += len;
    }
    let mut out: Vec<Permutation> = elems.into_iter().map(Permutation::from_zero_based).collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::partitions_of;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    /// Oracle: try every filling of the shape and keep the standard ones.
    fn brute_force_standard(shape: &Partition) -> Vec<Tableau> {
        let d = shape.size();
        let mut out: Vec<Tableau> = Permutation::all(d)
            .into_iter()
            .map(|w| row_reading_tableau(shape).permuted_by(&w))
            .filter(Tableau::is_standard)
            .collect();
        out.sort_by_key(Tableau::row_index_sequence);
        out
    }

    #[test]
    fn row_reading_examples() {
        assert_eq!(row_reading_tableau(&p("2,1")).to_string(), "[[1,2],[3]]");
        assert_eq!(row_reading_tableau(&p("1,1,1")).to_string(), "[[1],[2],[3]]");
        assert_eq!(row_reading_tableau(&p("3,2")).to_string(), "[[1,2,3],[4,5]]");
        assert!(row_reading_tableau(&p("3,2")).is_standard());
    }

    #[test]
    fn standard_tableaux_match_brute_force() {
        let got: Vec<String> = standard_tableaux(&p("2,1")).iter().map(ToString::to_string).collect();
        assert_eq!(got, ["[[1,2],[3]]", "[[1,3],[2]]"]);
        assert_eq!(standard_tableaux(&p("5")).len(), 1);
        assert_eq!(standard_tableaux(&p("3,2")).len(), 5);
        for d in 1..=6 {
            for l in partitions_of(d) {
                assert_eq!(standard_tableaux(&l), brute_force_standard(&l), "shape {l}");
                assert_eq!(standard_tableaux(&l)[0], row_reading_tableau(&l));
            }
        }
    }

    #[test]
    fn d_of_examples() {
        let t: Tableau = "[[1,3],[2]]".parse().unwrap();
        assert_eq!(d_of(&t).unwrap().to_string(), "[1,3,2]");
        let l = p("3,2,1");
        assert!(d_of(&row_reading_tableau(&l)).unwrap().is_identity());
        for t in standard_tableaux(&l) {
            let w = d_of(&t).unwrap();
            assert_eq!(row_reading_tableau(&l).permuted_by(&w), t);
        }
        let bad: Tableau = "[[2,1],[3]]".parse().unwrap();
        assert!(d_of(&bad).is_err());
    }

    #[test]
    fn young_subgroup_examples() {
        let g = SizeGuard::default();
        let w = young_subgroup(&WeakComposition::new(vec![2, 1]), 3, &g).unwrap();
        assert_eq!(w.len(), 2);
        assert!(w[0].is_identity());
        assert_eq!(w[1], Permutation::transposition(3, 1, 2).unwrap());
        let trivial = young_subgroup(&WeakComposition::new(vec![1; 4]), 4, &g).unwrap();
        assert_eq!(trivial, vec![Permutation::identity(4)]);
        assert_eq!(young_subgroup(&WeakComposition::new(vec![4]), 4, &g).unwrap(), Permutation::all(4));
        assert!(young_subgroup(&WeakComposition::new(vec![9]), 9, &g).is_err());
        assert!(young_subgroup(&WeakComposition::new(vec![2]), 3, &g).is_err());
    }

    #[test]
    fn young_subgroup_stabilizes_rows() {
        let g = SizeGuard::default();
        let shape = WeakComposition::new(vec![2, 0, 3]);
        let t = Tableau::row_reading(&shape);
        let w = young_subgroup(&shape, 5, &g).unwrap();
        assert_eq!(w.len(), 12);
        let stab: Vec<Permutation> =
            Permutation::all(5).into_iter().filter(|x| t.permuted_by(x).row_sorted() == t).collect();
        assert_eq!(w, stab);
    }

    #[test]
    fn row_standard_count() {
        let shape = WeakComposition::new(vec![3, 1, 1]);
        assert_eq!(row_standard_tableaux(&shape).len(), 20);
        assert!(row_standard_tableaux(&shape).iter().all(Tableau::is_row_standard));
    }

    #[test]
    fn tableau_parse() {
        let t: Tableau = "[[1, 2], [3]]".parse().unwrap();
        assert_eq!(t.to_string(), "[[1,2],[3]]");
        assert!("[[1,1],[3]]".parse::<Tableau>().is_err());
    }
}
