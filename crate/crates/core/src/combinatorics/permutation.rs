use std::fmt;
use std::str::FromStr;

use crate::error::{invalid, Error, Result};

/// A permutation of `{1..d}` in one-line notation.
///
/// Stored 0-based; displayed 1-based as `[2,1,3]`. Products follow the
/// maps-on-the-left convention `(v·w)(k) = v(w(k))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u8>,
}

impl Permutation {
    pub fn identity(d: usize) -> Self {
        Permutation { images: (0..d as u8).collect() }
    }

    /// From 1-based one-line notation.
    pub fn from_one_line(images: &[usize]) -> Result<Self> {
        let d = images.len();
        if d > u8::MAX as usize {
            return Err(invalid!("degree {d} too large"));
        }
        let mut seen = vec![false; d];
        for &v in images {
            if v == 0 || v > d || seen[v - 1] {
                return Err(invalid!("{images:?} is not a permutation of 1..{d}"));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images: images.iter().map(|&v| (v - 1) as u8).collect() })
    }

    pub(crate) fn from_zero_based(images: Vec<u8>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &v)| i == v as usize)
        });
        Permutation { images }
    }

    /// The transposition swapping `a` and `b` (1-based) in `Sym_d`.
    pub fn transposition(d: usize, a: usize, b: usize) -> Result<Self> {
        if a == 0 || b == 0 || a > d || b > d || a == b {
            return Err(invalid!("bad transposition ({a} {b}) in degree {d}"));
        }
        let mut p = Self::identity(d);
        p.images.swap(a - 1, b - 1);
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `w(k)` for 1-based `k`.
    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1] as usize + 1
    }

    #[inline]
    pub(crate) fn apply0(&self, k: usize) -> usize {
        self.images[k] as usize
    }

    pub fn one_line(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize + 1).collect()
    }

    /// `self · other`, i.e. `k ↦ self(other(k))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "composing permutations of different degree");
        Permutation { images: other.images.iter().map(|&k| self.images[k as usize]).collect() }
    }

    /// Apply `self` first, then `next` (left-to-right composition).
    pub fn then(&self, next: &Permutation) -> Permutation {
        next.compose(self)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.degree()];
        for (i, &v) in self.images.iter().enumerate() {
            inv[v as usize] = i as u8;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// +1 or -1.
    pub fn sign(&self) -> i64 {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut transpositions = 0;
        for start in 0..d {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut k = start;
            while !seen[k] {
                seen[k] = true;
                k = self.images[k] as usize;
                len += 1;
            }
            transpositions += len - 1;
        }
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Same permutation on `{1..d+extra}`, fixing the new points.
    pub fn extend(&self, extra: usize) -> Permutation {
        let d = self.degree();
        let mut images = self.images.clone();
        images.extend((d..d + extra).map(|v| v as u8));
        Permutation { images }
    }

    /// Position in the lexicographic listing of `Sym_d` (Lehmer code).
    pub fn lex_rank(&self) -> usize {
        let d = self.degree();
        let mut rank = 0usize;
        for i in 0..d {
            let smaller_later = self.images[i + 1..].iter().filter(|&&v| v < self.images[i]).count();
            rank = rank * (d - i) + smaller_later;
        }
        rank
    }

    /// All of `Sym_d` in lexicographic order of one-line notation.
    pub fn all(d: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (0..d as u8).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            if !next_permutation(&mut cur) {
                break;
            }
        }
        out
    }
}

/// Advance to the next permutation in lexicographic order.
pub(crate) fn next_permutation(a: &mut [u8]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", *v as usize + 1)?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("permutation {s:?} must look like [2,1,3]")))?;
        let images = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad entry {t:?} in {s:?}"))))
                .collect::<Result<Vec<_>>>()?
        };
        Permutation::from_one_line(&images)
    }
}
