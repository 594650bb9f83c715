use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

/// A partition of `d`: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(invalid!("partition {parts:?} has a zero part"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(invalid!("partition {parts:?} is not weakly decreasing"));
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of rows of the Young diagram.
    pub fn rows(&self) -> usize {
        self.parts.len()
    }

    /// Number of columns of the Young diagram (the first part).
    pub fn cols(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn transpose(&self) -> Partition {
        let cols = self.cols();
        let parts = (0..cols).map(|j| self.parts.iter().filter(|&&p| p > j).count()).collect();
        Partition { parts }
    }

    /// `λ ⊵ μ`: every partial sum of `self` is at least that of `other`.
    pub fn dominates(&self, other: &Partition) -> Result<bool> {
        if self.size() != other.size() {
            return Err(invalid!("dominance between partitions of {} and {}", self.size(), other.size()));
        }
        let len = self.rows().max(other.rows());
        let (mut a, mut b) = (0, 0);
        for i in 0..len {
            a += self.parts.get(i).copied().unwrap_or(0);
            b += other.parts.get(i).copied().unwrap_or(0);
            if a < b {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn as_composition(&self) -> WeakComposition {
        WeakComposition::new(self.parts.clone())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        f.write_str(&s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Comma-joined parts, e.g. `3,1,1`; the empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad part {t:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

/// A weak composition: a finitely supported sequence of non-negative parts.
/// Trailing zeros are trimmed so equality ignores them.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct WeakComposition {
    parts: Vec<usize>,
}

impl WeakComposition {
    pub fn new(mut parts: Vec<usize>) -> Self {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        WeakComposition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Index of the last nonzero part.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl From<&Partition> for WeakComposition {
    fn from(p: &Partition) -> Self {
        p.as_composition()
    }
}

impl fmt::Display for WeakComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(ToString::to_string).collect();
        f.write_str(&s.join(","))
    }
}

/// All partitions of `d`, reverse-lexicographic, starting with `(d)`.
pub fn partitions_of(d: usize) -> Vec<Partition> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for first in (1..=rest.min(max)).rev() {
            cur.push(first);
            go(rest - first, first, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, &mut Vec::new(), &mut out);
    out
}

/// `α(d, r) = (d−r, 1^r)`, the dominance-least hook of [`hook_set`].
pub fn alpha(d: usize, r: usize) -> Result<Partition> {
    if r < 1 || d <= r {
        return Err(invalid!("alpha(d, r) needs d > r >= 1, got d={d}, r={r}"));
    }
    let mut parts = vec![d - r];
    parts.extend(std::iter::repeat_n(1, r));
    Ok(Partition { parts })
}

/// The hooks `(d−l, 1^l)` for `l = 1..r`, a dominance chain ending at `α(d, r)`.
pub fn hook_set(d: usize, r: usize) -> Result<Vec<Partition>> {
    if r < 1 || d <= r + 1 {
        return Err(invalid!("hook_set(d, r) needs d > r + 1 and r >= 1, got d={d}, r={r}"));
    }
    (1..=r).map(|l| alpha(d, l)).collect()
}

/// Stirling number of the second kind: set partitions of an `r`-set into `l` blocks.
pub fn stirling2(r: usize, l: usize) -> u128 {
    let mut row = vec![0u128; l + 1];
    row[0] = 1; // S(0, 0)
    for _ in 0..r {
        for k in (1..=l).rev() {
            row[k] = k as u128 * row[k] + row[k - 1];
        }
        row[0] = 0;
    }
    row[l]
}
