//! Tensor space `V^{⊗r}` with `V` free of rank `n`: the value-permuting left
//! action of `W_d`, the right action of diagrams, value-types, and the
//! matrices of the representation `Φ`.
//!
//! Operators on tensor space are stored as matrices acting on row vectors:
//! the matrix of an operator `f` has `f(e_i)` as its row `i`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::combinatorics::{row_standard_tableaux, set_partition_labels, Permutation, WeakComposition};
use crate::diagram::Diagram;
use crate::error::{invalid, Error, Result};
use crate::guard::{factorial, SizeGuard};
use crate::linalg::{Matrix, SparseMatrix};
use crate::ring::{Ring, RingSpec};
use crate::symgroup::GroupAlgElem;

/// `ε`: whether the representation is of `P_r(n)` or of the half algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Eps {
    Zero,
    Half,
}

impl fmt::Display for Eps {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Eps::Zero => "0",
            Eps::Half => "1/2",
        })
    }
}

impl FromStr for Eps {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "0" => Ok(Eps::Zero),
            "half" | "1/2" | "0.5" => Ok(Eps::Half),
            _ => Err(Error::Parse(format!("eps {s:?} (expected 0 or half)"))),
        }
    }
}

impl Serialize for Eps {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Eps {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

/// One representation `Φ_{n, r+ε}` of `W_d` on `V^{⊗r}`, `d = n − 2ε`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Instance {
    pub n: usize,
    pub r: usize,
    pub eps: Eps,
    pub ring: RingSpec,
}

impl Instance {
    pub fn new(n: usize, r: usize, eps: Eps, ring: RingSpec) -> Result<Self> {
        if r < 1 {
            return Err(invalid!("r must be at least 1"));
        }
        let min_n = if eps == Eps::Half { 2 } else { 1 };
        if n < min_n {
            return Err(invalid!("n = {n} too small for eps = {eps}"));
        }
        if n > 250 {
            return Err(invalid!("n = {n} too large"));
        }
        Ok(Instance { n, r, eps, ring })
    }

    /// Degree of the acting symmetric group.
    pub fn d(&self) -> usize {
        match self.eps {
            Eps::Zero => self.n,
            Eps::Half => self.n - 1,
        }
    }

    pub fn dim(&self) -> usize {
        self.n.pow(self.r as u32)
    }

    pub fn with_ring(&self, ring: RingSpec) -> Instance {
        Instance { ring, ..*self }
    }

    fn check_ring<R: Ring>(&self, ring: &R) -> Result<()> {
        if ring.spec() != self.ring {
            return Err(Error::Mismatch(format!("instance over {} used with ring {}", self.ring, ring.spec())));
        }
        Ok(())
    }
}

impl fmt::Display for Instance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} r={} eps={} ring={}", self.n, self.r, self.eps, self.ring)
    }
}

/// A multi-index `(i_1, …, i_r)` with entries in `1..n`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TensorIndex {
    entries: Vec<u8>,
}

impl TensorIndex {
    pub fn new(entries: &[usize], n: usize) -> Result<Self> {
        if let Some(&bad) = entries.iter().find(|&&i| i == 0 || i > n) {
            return Err(invalid!("index entry {bad} outside 1..{n}"));
        }
        if n > u8::MAX as usize {
            return Err(invalid!("n = {n} too large"));
        }
        Ok(TensorIndex { entries: entries.iter().map(|&i| i as u8).collect() })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> Vec<usize> {
        self.entries.iter().map(|&i| i as usize).collect()
    }

    pub fn get(&self, place: usize) -> usize {
        self.entries[place - 1] as usize
    }

    /// Row-major position, leftmost slot most significant.
    pub fn flat(&self, n: usize) -> usize {
        self.entries.iter().fold(0, |acc, &i| acc * n + (i as usize - 1))
    }

    pub fn from_flat(mut flat: usize, n: usize, r: usize) -> TensorIndex {
        let mut entries = vec![0u8; r];
        for slot in entries.iter_mut().rev() {
            *slot = (flat % n) as u8 + 1;
            flat /= n;
        }
        TensorIndex { entries }
    }

    /// All of `I(n, r)` in flat order.
    pub fn all(n: usize, r: usize) -> Vec<TensorIndex> {
        (0..n.pow(r as u32)).map(|f| TensorIndex::from_flat(f, n, r)).collect()
    }

    fn push(&self, v: usize) -> TensorIndex {
        let mut entries = self.entries.clone();
        entries.push(v as u8);
        TensorIndex { entries }
    }
}

impl fmt::Display for TensorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.entries.iter().map(ToString::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl fmt::Debug for TensorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for TensorIndex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("tensor index {s:?} must look like (1,3,2)"));
        let inner = s.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
        let entries: Vec<usize> = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner.split(',').map(|t| t.trim().parse().map_err(|_| bad())).collect::<Result<_>>()?
        };
        let n = entries.iter().copied().max().unwrap_or(1);
        TensorIndex::new(&entries, n)
    }
}

/// A vector of `V^{⊗r}` in the basis of simple tensors.
#[derive(Clone, PartialEq)]
pub struct TensorVec<R: Ring> {
    n: usize,
    r: usize,
    ring: R,
    terms: BTreeMap<TensorIndex, R::Elem>,
}

impl<R: Ring> TensorVec<R> {
    pub fn zero(ring: &R, n: usize, r: usize) -> Self {
        TensorVec { n, r, ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn basis(ring: &R, n: usize, idx: TensorIndex) -> Self {
        let mut v = Self::zero(ring, n, idx.len());
        v.add_term(idx, &ring.one());
        v
    }

    pub fn add_term(&mut self, idx: TensorIndex, c: &R::Elem) {
        debug_assert_eq!(idx.len(), self.r);
        if self.ring.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&idx) {
            Some(v) => {
                self.ring.add_assign(v, c);
                if self.ring.is_zero(v) {
                    self.terms.remove(&idx);
                }
            }
            None => {
                self.terms.insert(idx, c.clone());
            }
        }
    }

    pub fn terms(&self) -> &BTreeMap<TensorIndex, R::Elem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Dense coefficients in flat order.
    pub fn to_dense(&self) -> Vec<R::Elem> {
        let mut out = vec![self.ring.zero(); self.n.pow(self.r as u32)];
        for (idx, c) in &self.terms {
            out[idx.flat(self.n)] = c.clone();
        }
        out
    }
}

impl<R: Ring> fmt::Debug for TensorVec<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(i, c)| format!("{}*v{i}", self.ring.format(c))).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// The set partition of places `1..r` by equal values.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ValueType {
    blocks: Vec<Vec<usize>>,
}

impl ValueType {
    /// From blocks of 1-based places; they must partition `1..r` for some `r`.
    pub fn new(blocks: Vec<Vec<usize>>) -> Result<Self> {
        let r: usize = blocks.iter().map(Vec::len).sum();
        let mut labels = vec![usize::MAX; r];
        for (b, block) in blocks.iter().enumerate() {
            for &p in block {
                if p == 0 || p > r || labels[p - 1] != usize::MAX {
                    return Err(invalid!("{blocks:?} is not a set partition of 1..{r}"));
                }
                labels[p - 1] = b;
            }
        }
        Ok(Self::from_labels(&labels))
    }

    fn from_labels<T: Copy + Into<usize>>(labels: &[T]) -> Self {
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut seen: Vec<usize> = Vec::new();
        for (p, &l) in labels.iter().enumerate() {
            let l: usize = l.into();
            match seen.iter().position(|&s| s == l) {
                Some(b) => blocks[b].push(p + 1),
                None => {
                    seen.push(l);
                    blocks.push(vec![p + 1]);
                }
            }
        }
        ValueType { blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// `ℓ(Λ)`, the number of blocks.
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn places(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// Every set partition of `1..r`.
    pub fn all(r: usize) -> Vec<ValueType> {
        set_partition_labels(r).iter().map(|l| Self::from_labels(l)).collect()
    }
}

impl fmt::Display for ValueType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self
            .blocks
            .iter()
            .map(|b| format!("{{{}}}", b.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        write!(f, "{{{}}}", blocks.join(","))
    }
}

impl fmt::Debug for ValueType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub fn value_type(idx: &TensorIndex) -> ValueType {
    ValueType::from_labels(&idx.entries)
}

/// The acting group of an instance: `Sym_d` in lexicographic order, as
/// permutations of `1..d` (fixing `n` implicitly when `d = n − 1`).
pub fn group_elements(inst: &Instance, guard: &SizeGuard) -> Result<Vec<Permutation>> {
    guard.check_degree(inst.d())?;
    Ok(Permutation::all(inst.d()))
}

/// `w · (v_{i_1} ⊗ … ⊗ v_{i_r}) = v_{w(i_1)} ⊗ … ⊗ v_{w(i_r)}`.
///
/// `w` may have degree `n`, or degree `n − 1` in the half case (it then
/// fixes `n`).
pub fn weyl_act(w: &Permutation, idx: &TensorIndex, inst: &Instance) -> Result<TensorIndex> {
    let n = inst.n;
    match (inst.eps, w.degree()) {
        (_, k) if k == n => {
            if inst.eps == Eps::Half && w.apply(n) != n {
                return Err(invalid!("{w} does not fix {n}, so it is not in W_{}", n - 1));
            }
        }
        (Eps::Half, k) if k + 1 == n => {}
        (_, k) => return Err(Error::Mismatch(format!("permutation of degree {k} acting on values 1..{n}"))),
    }
    Ok(weyl_act_unchecked(w, idx))
}

fn weyl_act_unchecked(w: &Permutation, idx: &TensorIndex) -> TensorIndex {
    let d = w.degree();
    let entries =
        idx.entries.iter().map(|&i| if (i as usize) <= d { w.apply0(i as usize - 1) as u8 + 1 } else { i }).collect();
    TensorIndex { entries }
}

/// Right place permutation: slot `α` of the result holds `i_{σ⁻¹(α)}`.
pub fn place_permute(idx: &TensorIndex, sigma: &Permutation) -> Result<TensorIndex> {
    if sigma.degree() != idx.len() {
        return Err(Error::Mismatch(format!(
            "permutation of degree {} on an index of length {}",
            sigma.degree(),
            idx.len()
        )));
    }
    let mut entries = vec![0u8; idx.len()];
    for (a, &v) in idx.entries.iter().enumerate() {
        entries[sigma.apply0(a)] = v;
    }
    Ok(TensorIndex { entries })
}

/// `1` iff values `in_idx` on the north nodes and `out_idx` on the south
/// nodes are constant on every block of `x`.
pub fn kron_delta(x: &Diagram, in_idx: &TensorIndex, out_idx: &TensorIndex) -> bool {
    let r = x.strands();
    assert!(in_idx.len() == r && out_idx.len() == r, "index lengths must match the diagram");
    let mut value = vec![0u8; x.num_blocks()];
    let nodes = in_idx.entries.iter().chain(&out_idx.entries);
    for (&b, &v) in x.labels().iter().zip(nodes) {
        let slot = &mut value[b as usize];
        if *slot == 0 {
            *slot = v;
        } else if *slot != v {
            return false;
        }
    }
    true
}

/// The output indices `j` with `kron_delta(x, idx, j) = 1`.
fn delta_targets(x: &Diagram, idx: &TensorIndex, n: usize) -> Vec<TensorIndex> {
    let r = x.strands();
    let labels = x.labels();
    let mut value = vec![0u8; x.num_blocks()];
    for (a, &v) in idx.entries.iter().enumerate() {
        let slot = &mut value[labels[a] as usize];
        if *slot == 0 {
            *slot = v;
        } else if *slot != v {
            return Vec::new();
        }
    }
    let free: Vec<usize> = (0..value.len()).filter(|&b| value[b] == 0).collect();
    let mut out = Vec::with_capacity(n.pow(free.len() as u32));
    let mut choice = vec![1u8; free.len()];
    loop {
        for (&b, &c) in free.iter().zip(&choice) {
            value[b] = c;
        }
        let entries = (0..r).map(|a| value[labels[r + a] as usize]).collect();
        out.push(TensorIndex { entries });
        // advance the odometer over free blocks
        let mut k = free.len();
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if (choice[k] as usize) < n {
                choice[k] += 1;
                break;
            }
            choice[k] = 1;
        }
    }
}

fn check_vec<R: Ring>(v: &TensorVec<R>, inst: &Instance) -> Result<()> {
    if v.n != inst.n || v.r != inst.r {
        return Err(Error::Mismatch(format!("vector in V^⊗{} with n={} for instance {inst}", v.r, v.n)));
    }
    Ok(())
}

/// `v^x = Σ_j (x)^{i}_{j} v_j` extended linearly.
pub fn right_act_diagram<R: Ring>(v: &TensorVec<R>, x: &Diagram, inst: &Instance) -> Result<TensorVec<R>> {
    check_vec(v, inst)?;
    if x.strands() != v.r {
        return Err(Error::Mismatch(format!("diagram on {} strands acting on V^⊗{}", x.strands(), v.r)));
    }
    let mut out = TensorVec::zero(&v.ring, v.n, v.r);
    for (idx, c) in &v.terms {
        for j in delta_targets(x, idx, v.n) {
            out.add_term(j, c);
        }
    }
    Ok(out)
}

/// Action of a half diagram (on `r + 1` strands) on `V^{⊗r}`, identified
/// with `V^{⊗r} ⊗ v_n ⊂ V^{⊗(r+1)}`.
pub fn right_act_half<R: Ring>(v: &TensorVec<R>, x: &Diagram, inst: &Instance) -> Result<TensorVec<R>> {
    check_vec(v, inst)?;
    if inst.eps != Eps::Half {
        return Err(invalid!("half diagrams act only when eps = 1/2"));
    }
    if x.strands() != v.r + 1 || !x.is_half() {
        return Err(invalid!("{x} is not a half diagram on {} strands", v.r + 1));
    }
    let n = v.n;
    let mut out = TensorVec::zero(&v.ring, n, v.r);
    for (idx, c) in &v.terms {
        for j in delta_targets(x, &idx.push(n), n) {
            if j.entries[v.r] as usize != n {
                return Err(Error::Assertion(format!("{x} moves {idx}⊗v_{n} out of V^⊗{}⊗v_{n}", v.r)));
            }
            let mut e = j.entries;
            e.pop();
            out.add_term(TensorIndex { entries: e }, c);
        }
    }
    Ok(out)
}

/// `a · v` for `a` in the group algebra of the instance's group.
pub fn act_group_elem<R: Ring>(a: &GroupAlgElem<R>, v: &TensorVec<R>, inst: &Instance) -> Result<TensorVec<R>> {
    check_vec(v, inst)?;
    if a.degree() != inst.d() {
        return Err(Error::Mismatch(format!("element of Sym_{} acting for {inst}", a.degree())));
    }
    let ring = a.ring();
    let mut out = TensorVec::zero(ring, v.n, v.r);
    for (w, c) in a.terms() {
        for (idx, b) in &v.terms {
            out.add_term(weyl_act_unchecked(w, idx), &ring.mul(c, b));
        }
    }
    Ok(out)
}

/// Injective assignments of values from `pool` to `k` blocks, lexicographic.
fn injections(k: usize, pool: &[usize]) -> Vec<Vec<usize>> {
    fn go(k: usize, pool: &[usize], used: &mut Vec<bool>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for (i, &v) in pool.iter().enumerate() {
            if !used[i] {
                used[i] = true;
                cur.push(v);
                go(k, pool, used, cur, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(k, pool, &mut vec![false; pool.len()], &mut Vec::new(), &mut out);
    out
}

/// The simple tensors of value-type `lambda`, sorted.
///
/// With `half`, `lambda` partitions `1..r+1` and the result lists the
/// indices `(i_1..i_r)` such that `(i_1..i_r, n)` has value-type `lambda`.
pub fn orbit_basis(lambda: &ValueType, inst: &Instance, half: bool) -> Result<Vec<TensorIndex>> {
    let n = inst.n;
    let places = lambda.places();
    let expected = if half { inst.r + 1 } else { inst.r };
    if places != expected {
        return Err(Error::Mismatch(format!("value-type on {places} places, expected {expected}")));
    }
    let mut out = Vec::new();
    let pinned = if half { lambda.blocks.iter().position(|b| b.contains(&places)) } else { None };
    let pool: Vec<usize> = if half { (1..n).collect() } else { (1..=n).collect() };
    let free_blocks = lambda.len() - pinned.is_some() as usize;
    for assignment in injections(free_blocks, &pool) {
        let mut entries = vec![0usize; places];
        let mut values = assignment.into_iter();
        for (b, block) in lambda.blocks.iter().enumerate() {
            let v = if Some(b) == pinned { n } else { values.next().expect("one value per block") };
            for &p in block {
                entries[p - 1] = v;
            }
        }
        if half {
            entries.pop();
        }
        out.push(TensorIndex::new(&entries, n)?);
    }
    out.sort();
    Ok(out)
}

/// The matrix of `Φ`: one row per group element (lexicographic order), the
/// operator `w` flattened with column `flat(i)·n^r + flat(w·i)`.
pub fn phi_matrix<R: Ring>(ring: &R, inst: &Instance, guard: &SizeGuard) -> Result<SparseMatrix<R>> {
    inst.check_ring(ring)?;
    guard.check_action(inst.d(), inst.n, inst.r)?;
    let n = inst.n;
    let dim = inst.dim();
    let indices = TensorIndex::all(n, inst.r);
    let mut m = SparseMatrix::new(ring, dim * dim);
    for w in Permutation::all(inst.d()) {
        m.push_row(
            indices.iter().enumerate().map(|(f, idx)| (f * dim + weyl_act_unchecked(&w, idx).flat(n), ring.one())),
        );
    }
    Ok(m)
}

/// The left action of `Sym_d` on the permutation module `M^λ`, in the
/// tabloid basis (row-standard tableaux of shape `λ`), laid out like
/// [`phi_matrix`]: one row per group element, column `in·dim + out`.
pub fn perm_module_matrix<R: Ring>(
    lambda: &WeakComposition,
    d: usize,
    ring: &R,
    guard: &SizeGuard,
) -> Result<SparseMatrix<R>> {
    if lambda.size() != d {
        return Err(invalid!("composition {lambda} does not sum to {d}"));
    }
    guard.check_degree(d)?;
    let index_bound = factorial(d) / lambda.parts().iter().map(|&p| factorial(p)).product::<u128>();
    if index_bound > guard.max_tensor_dim {
        return Err(Error::SizeGuard(format!(
            "M^({lambda}) has dimension {index_bound}, limit is {}",
            guard.max_tensor_dim
        )));
    }
    let tabloids = row_standard_tableaux(lambda);
    let dim = tabloids.len();
    let position: BTreeMap<_, usize> = tabloids.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
    let mut m = SparseMatrix::new(ring, dim * dim);
    for w in Permutation::all(d) {
        m.push_row(
            tabloids.iter().enumerate().map(|(i, t)| (i * dim + position[&t.permuted_by(&w).row_sorted()], ring.one())),
        );
    }
    Ok(m)
}

/// `n^r × n^r` matrix of `w` acting on tensor space.
pub fn weyl_matrix<R: Ring>(ring: &R, w: &Permutation, inst: &Instance) -> Result<Matrix<R>> {
    let n = inst.n;
    let dim = inst.dim();
    let mut m = Matrix::zeros(ring, dim, dim);
    for (f, idx) in TensorIndex::all(n, inst.r).iter().enumerate() {
        m.set(f, weyl_act(w, idx, inst)?.flat(n), ring.one());
    }
    Ok(m)
}

/// `n^r × n^r` matrix of a diagram (a half diagram on `r + 1` strands when
/// `eps = 1/2`) acting on tensor space on the right.
pub fn diagram_matrix<R: Ring>(ring: &R, x: &Diagram, inst: &Instance) -> Result<Matrix<R>> {
    let n = inst.n;
    let dim = inst.dim();
    let mut m = Matrix::zeros(ring, dim, dim);
    for (f, idx) in TensorIndex::all(n, inst.r).into_iter().enumerate() {
        let e = TensorVec::basis(ring, n, idx);
        let image = match inst.eps {
            Eps::Zero => right_act_diagram(&e, x, inst)?,
            Eps::Half => right_act_half(&e, x, inst)?,
        };
        for (j, c) in image.terms() {
            m.set(f, j.flat(n), c.clone());
        }
    }
    Ok(m)
}

/// The diagrams acting on the instance: all of `P_r`, or the half diagrams.
pub fn acting_diagrams(inst: &Instance) -> Vec<Diagram> {
    match inst.eps {
        Eps::Zero => Diagram::all(inst.r),
        Eps::Half => Diagram::all_half(inst.r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{multiply_diagrams, DiagramAlgElem};
    use crate::guard::falling_factorial;
    use crate::linalg::left_nullspace;
    use crate::ring::{Integers, Rationals};

    fn inst(n: usize, r: usize, eps: Eps) -> Instance {
        Instance::new(n, r, eps, RingSpec::Integers).unwrap()
    }

    fn idx(s: &str) -> TensorIndex {
        s.parse().unwrap()
    }

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn index_flattening() {
        for (f, i) in TensorIndex::all(3, 2).iter().enumerate() {
            assert_eq!(i.flat(3), f);
        }
        assert_eq!(TensorIndex::from_flat(5, 3, 2).to_string(), "(2,3)");
        assert!(TensorIndex::new(&[1, 4], 3).is_err());
    }

    #[test]
    fn weyl_action() {
        let i3 = inst(3, 3, Eps::Zero);
        assert_eq!(weyl_act(&perm("[2,1,3]"), &idx("(1,3,2)"), &i3).unwrap(), idx("(2,3,1)"));
        assert_eq!(weyl_act(&Permutation::identity(3), &idx("(1,3,2)"), &i3).unwrap(), idx("(1,3,2)"));
        let half = inst(3, 2, Eps::Half);
        assert_eq!(weyl_act(&perm("[2,1]"), &idx("(1,3)"), &half).unwrap(), idx("(2,3)"));
        assert!(weyl_act(&perm("[1,3,2]"), &idx("(1,3)"), &half).is_err());
        assert_eq!(weyl_act(&perm("[2,1,3]"), &idx("(1,3)"), &half).unwrap(), idx("(2,3)"));
    }

    #[test]
    fn weyl_action_preserves_value_type() {
        let i = inst(3, 2, Eps::Zero);
        for w in Permutation::all(3) {
            for t in TensorIndex::all(3, 2) {
                assert_eq!(value_type(&weyl_act(&w, &t, &i).unwrap()), value_type(&t));
            }
        }
    }

    #[test]
    fn place_permutation() {
        let cycle = perm("[2,3,1]");
        assert_eq!(place_permute(&idx("(5,6,7)"), &cycle).unwrap(), idx("(7,5,6)"));
        assert_eq!(place_permute(&idx("(5,6,7)"), &Permutation::identity(3)).unwrap(), idx("(5,6,7)"));
        for s in Permutation::all(3) {
            for t in Permutation::all(3) {
                let i = idx("(1,2,3)");
                let twice = place_permute(&place_permute(&i, &s).unwrap(), &t).unwrap();
                assert_eq!(twice, place_permute(&i, &s.then(&t)).unwrap());
            }
        }
    }

    #[test]
    fn permutation_diagrams_act_by_place_permutation() {
        let i = inst(2, 3, Eps::Zero);
        let z = Integers;
        for s in Permutation::all(3) {
            let x = Diagram::from_permutation(&s);
            for t in TensorIndex::all(2, 3) {
                let got = right_act_diagram(&TensorVec::basis(&z, 2, t.clone()), &x, &i).unwrap();
                assert_eq!(got, TensorVec::basis(&z, 2, place_permute(&t, &s).unwrap()));
            }
        }
    }

    #[test]
    fn delta_examples() {
        let x: Diagram = "1,2,1'|2'".parse().unwrap();
        assert!(kron_delta(&x, &idx("(3,3)"), &idx("(3,1)")));
        assert!(!kron_delta(&x, &idx("(2,3)"), &idx("(2,1)")));
        let singletons: Diagram = "1|2|1'|2'".parse().unwrap();
        for a in TensorIndex::all(2, 2) {
            for b in TensorIndex::all(2, 2) {
                assert!(kron_delta(&singletons, &a, &b));
            }
        }
    }

    #[test]
    fn delta_targets_match_brute_force() {
        let n = 3;
        for x in Diagram::all(2) {
            for a in TensorIndex::all(n, 2) {
                let brute: Vec<TensorIndex> =
                    TensorIndex::all(n, 2).into_iter().filter(|b| kron_delta(&x, &a, b)).collect();
                let mut got = delta_targets(&x, &a, n);
                got.sort();
                assert_eq!(got, brute, "{x} {a}");
            }
        }
    }

    #[test]
    fn small_diagram_actions() {
        let z = Integers;
        let i = inst(3, 1, Eps::Zero);
        let split: Diagram = "1|1'".parse().unwrap();
        let v = right_act_diagram(&TensorVec::basis(&z, 3, idx("(2)")), &split, &i).unwrap();
        assert_eq!(format!("{v:?}"), "1*v(1) + 1*v(2) + 1*v(3)");
        let e = TensorVec::basis(&z, 3, idx("(2)"));
        assert_eq!(right_act_diagram(&e, &Diagram::identity(1), &i).unwrap(), e);
    }

    #[test]
    fn diagram_action_is_a_representation() {
        let z = Integers;
        let i = inst(2, 2, Eps::Zero);
        let all = Diagram::all(2);
        for x in &all {
            let mx = diagram_matrix(&z, x, &i).unwrap();
            for y in &all {
                let (m, xy) = multiply_diagrams(x, y).unwrap();
                let prod = mx.mul(&diagram_matrix(&z, y, &i).unwrap()).unwrap();
                let scale = z.from_i64(2i64.pow(m as u32));
                let expect = diagram_matrix(&z, &xy, &i).unwrap();
                let scaled: Vec<Vec<_>> =
                    expect.rows().iter().map(|r| r.iter().map(|c| z.mul(c, &scale)).collect()).collect();
                assert_eq!(prod.rows(), &scaled[..], "{x} * {y}");
            }
        }
        // the same statement through the algebra product
        let q = Rationals;
        let iq = i.with_ring(RingSpec::Rationals);
        let a = DiagramAlgElem::from_diagram(&q, 2, "1|2|1',2'".parse().unwrap());
        let aa = a.multiply(&a).unwrap();
        let e = TensorVec::basis(&q, 2, idx("(1,2)"));
        let mut twice = TensorVec::zero(&q, 2, 2);
        for x in a.terms().keys() {
            let once = right_act_diagram(&e, x, &iq).unwrap();
            twice = right_act_diagram(&once, x, &iq).unwrap();
        }
        let mut via = TensorVec::zero(&q, 2, 2);
        for (x, c) in aa.terms() {
            for (j, b) in right_act_diagram(&e, x, &iq).unwrap().terms() {
                via.add_term(j.clone(), &q.mul(c, b));
            }
        }
        assert_eq!(twice, via);
    }

    #[test]
    fn weyl_and_diagram_actions_commute() {
        let z = Integers;
        for n in [2, 3] {
            let i = inst(n, 2, Eps::Zero);
            let ds: Vec<Matrix<Integers>> =
                Diagram::all(2).iter().map(|x| diagram_matrix(&z, x, &i).unwrap()).collect();
            for w in Permutation::all(n) {
                let p = weyl_matrix(&z, &w, &i).unwrap();
                for d in &ds {
                    assert_eq!(p.mul(d).unwrap(), d.mul(&p).unwrap());
                }
            }
        }
    }

    #[test]
    fn half_action_is_stable_and_commutes() {
        let z = Integers;
        let i = inst(2, 1, Eps::Half);
        for x in Diagram::all_half(1) {
            for t in TensorIndex::all(2, 1) {
                right_act_half(&TensorVec::basis(&z, 2, t), &x, &i).unwrap();
            }
        }
        let i = inst(3, 1, Eps::Half);
        for x in Diagram::all_half(1) {
            let dx = diagram_matrix(&z, &x, &i).unwrap();
            for w in Permutation::all(2) {
                let p = weyl_matrix(&z, &w, &i).unwrap();
                assert_eq!(p.mul(&dx).unwrap(), dx.mul(&p).unwrap());
            }
        }
        let e = TensorVec::basis(&z, 3, idx("(2)"));
        assert_eq!(right_act_half(&e, &Diagram::identity(2), &i).unwrap(), e);
        assert!(right_act_half(&e, &"1,1'|2|2'".parse().unwrap(), &i).is_err());
    }

    #[test]
    fn value_types() {
        assert_eq!(value_type(&idx("(9,8,8,1,9,8,1)")).to_string(), "{{1,5},{2,3,6},{4,7}}");
        assert_eq!(value_type(&idx("(2,2,2)")).len(), 1);
        assert_eq!(value_type(&idx("(3,1,2)")).len(), 3);
        assert_eq!(ValueType::new(vec![vec![2, 3], vec![1]]).unwrap().to_string(), "{{1},{2,3}}");
        assert!(ValueType::new(vec![vec![1, 1]]).is_err());
    }

    #[test]
    fn orbits() {
        let i = inst(3, 2, Eps::Zero);
        let diag = ValueType::new(vec![vec![1, 2]]).unwrap();
        let got: Vec<String> = orbit_basis(&diag, &i, false).unwrap().iter().map(ToString::to_string).collect();
        assert_eq!(got, ["(1,1)", "(2,2)", "(3,3)"]);
        let i2 = inst(2, 3, Eps::Zero);
        let spread = ValueType::new(vec![vec![1], vec![2], vec![3]]).unwrap();
        assert!(orbit_basis(&spread, &i2, false).unwrap().is_empty());
        let i3 = inst(3, 3, Eps::Zero);
        for lambda in ValueType::all(3) {
            let plain = orbit_basis(&lambda, &i3, false).unwrap();
            let half = orbit_basis(&lambda, &i, true).unwrap();
            assert_eq!(plain.len(), 3 * half.len());
            assert_eq!(plain.len() as u128, falling_factorial(3, lambda.len()));
            for t in &half {
                assert_eq!(value_type(&t.push(3)), lambda);
            }
        }
    }

    #[test]
    fn orbits_partition_tensor_space() {
        for n in 1..=4 {
            for r in 1..=4 {
                let i = inst(n, r, Eps::Zero);
                let mut all: Vec<TensorIndex> =
                    ValueType::all(r).iter().flat_map(|l| orbit_basis(l, &i, false).unwrap()).collect();
                all.sort();
                assert_eq!(all, TensorIndex::all(n, r));
            }
        }
    }

    #[test]
    fn phi_shape_and_kernel() {
        let z = Integers;
        let i = inst(3, 1, Eps::Zero);
        let phi = phi_matrix(&z, &i, &SizeGuard::default()).unwrap();
        assert_eq!((phi.nrows(), phi.ncols()), (6, 9));
        assert!((0..6).all(|k| phi.row(k).len() == 3));
        let k = left_nullspace(&phi.compress_columns());
        assert_eq!(k.rank(), 1);
        let signs: Vec<_> = Permutation::all(3).iter().map(|w| z.from_i64(w.sign())).collect();
        let row = k.basis().row(0).to_vec();
        assert!(row == signs || row == signs.iter().map(|c| z.neg(c)).collect::<Vec<_>>());
        assert!(phi_matrix(&Rationals, &i, &SizeGuard::default()).is_err());
    }

    #[test]
    fn perm_module_examples() {
        let q = Rationals;
        let g = SizeGuard::default();
        let trivial = perm_module_matrix(&WeakComposition::new(vec![4]), 4, &q, &g).unwrap();
        assert_eq!(trivial.ncols(), 1);
        assert_eq!(left_nullspace(&trivial.compress_columns()).rank(), 23);
        let regular = perm_module_matrix(&WeakComposition::new(vec![1, 1, 1]), 3, &q, &g).unwrap();
        assert_eq!(left_nullspace(&regular.compress_columns()).rank(), 0);
        let hook = perm_module_matrix(&WeakComposition::new(vec![3, 1, 1]), 5, &q, &g).unwrap();
        assert_eq!(hook.ncols(), 20 * 20);
    }

    #[test]
    fn group_algebra_action() {
        let z = Integers;
        let i = inst(3, 1, Eps::Zero);
        let y = crate::symgroup::y_element(&WeakComposition::new(vec![3]), 3, &z, &SizeGuard::default()).unwrap();
        let v = TensorVec::basis(&z, 3, idx("(1)"));
        assert!(act_group_elem(&y, &v, &i).unwrap().is_zero());
    }
}
