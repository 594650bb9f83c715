//! The group algebra `R·Sym_d`, Murphy's elements `x_λ`, `y_λ`, `x_st`,
//! `y_st`, the two involutions, and cell ideals spanned by the `y`-basis.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::combinatorics::{
    d_of, partitions_of, standard_tableaux, young_subgroup, Partition, Permutation, Tableau, WeakComposition,
};
use crate::error::{invalid, Error, Result};
use crate::guard::{factorial, SizeGuard};
use crate::linalg::Matrix;
use crate::ring::{Integers, Ring, RingSpec};

/// A finite linear combination of permutations of `{1..d}`.
#[derive(Clone, PartialEq)]
pub struct GroupAlgElem<R: Ring> {
    d: usize,
    ring: R,
    terms: BTreeMap<Permutation, R::Elem>,
}

impl<R: Ring> GroupAlgElem<R> {
    pub fn zero(ring: &R, d: usize) -> Self {
        GroupAlgElem { d, ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn identity(ring: &R, d: usize) -> Self {
        Self::from_perm(ring, Permutation::identity(d))
    }

    pub fn from_perm(ring: &R, w: Permutation) -> Self {
        let d = w.degree();
        let mut terms = BTreeMap::new();
        if !ring.is_zero(&ring.one()) {
            terms.insert(w, ring.one());
        }
        GroupAlgElem { d, ring: ring.clone(), terms }
    }

    /// Sum of `coeff · w` over the given pairs; repeated permutations add up.
    pub fn from_terms(ring: &R, d: usize, terms: impl IntoIterator<Item = (Permutation, R::Elem)>) -> Result<Self> {
        let mut out = Self::zero(ring, d);
        for (w, c) in terms {
            if w.degree() != d {
                return Err(Error::Mismatch(format!("permutation {w} in an element of degree {d}")));
            }
            out.add_term(w, &c);
        }
        Ok(out)
    }

    fn add_term(&mut self, w: Permutation, c: &R::Elem) {
        if self.ring.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&w) {
            Some(v) => {
                self.ring.add_assign(v, c);
                if self.ring.is_zero(v) {
                    self.terms.remove(&w);
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Permutation, R::Elem> {
        &self.terms
    }

    pub fn coeff(&self, w: &Permutation) -> R::Elem {
        self.terms.get(w).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::Mismatch(format!("degrees {} and {}", self.d, other.d)));
        }
        if self.ring != other.ring {
            return Err(Error::Mismatch(format!("rings {} and {}", self.ring.spec(), other.ring.spec())));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        self.map_terms(|w, c| (w.clone(), self.ring.neg(c)))
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let mut out = Self::zero(&self.ring, self.d);
        for (w, v) in &self.terms {
            out.add_term(w.clone(), &self.ring.mul(c, v));
        }
        out
    }

    fn map_terms(&self, f: impl Fn(&Permutation, &R::Elem) -> (Permutation, R::Elem)) -> Self {
        let mut out = Self::zero(&self.ring, self.d);
        for (w, c) in &self.terms {
            let (w2, c2) = f(w, c);
            out.add_term(w2, &c2);
        }
        out
    }

    /// Convolution product, bilinear in `(v·w)(k) = v(w(k))`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(&self.ring, self.d);
        for (v, a) in &self.terms {
            for (w, b) in &other.terms {
                out.add_term(v.compose(w), &self.ring.mul(a, b));
            }
        }
        Ok(out)
    }

    /// `u · self · v` for group elements `u`, `v`.
    pub fn sandwich(&self, u: &Permutation, v: &Permutation) -> Self {
        self.map_terms(|w, c| (u.compose(w).compose(v), c.clone()))
    }

    /// The anti-involution `w ↦ w⁻¹`.
    pub fn star(&self) -> Self {
        self.map_terms(|w, c| (w.inverse(), c.clone()))
    }

    /// The ring involution `w ↦ sgn(w)·w`.
    pub fn sign_twist(&self) -> Self {
        self.map_terms(|w, c| {
            let c = if w.sign() < 0 { self.ring.neg(c) } else { c.clone() };
            (w.clone(), c)
        })
    }

    /// Coefficients indexed by the lexicographic position of each permutation.
    pub fn to_vector(&self) -> Vec<R::Elem> {
        let mut v = vec![self.ring.zero(); factorial(self.d) as usize];
        for (w, c) in &self.terms {
            v[w.lex_rank()] = c.clone();
        }
        v
    }

    pub fn from_vector(ring: &R, d: usize, v: &[R::Elem]) -> Result<Self> {
        let all = Permutation::all(d);
        if v.len() != all.len() {
            return Err(Error::Mismatch(format!("vector of length {} for Sym_{d}", v.len())));
        }
        Self::from_terms(ring, d, all.into_iter().zip(v.iter().cloned()))
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> =
            self.terms.iter().map(|(w, c)| json!({ "perm": w.to_string(), "coeff": self.ring.format(c) })).collect();
        json!({ "ring": self.ring.spec().to_string(), "d": self.d, "terms": terms })
    }

    pub fn from_json(ring: &R, value: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("group algebra element JSON: {what}"));
        let spec: RingSpec = value.get("ring").and_then(Value::as_str).ok_or_else(|| bad("missing ring"))?.parse()?;
        if spec != ring.spec() {
            return Err(Error::Mismatch(format!("element over {spec}, expected {}", ring.spec())));
        }
        let d = value.get("d").and_then(Value::as_u64).ok_or_else(|| bad("missing d"))? as usize;
        let terms = value.get("terms").and_then(Value::as_array).ok_or_else(|| bad("missing terms"))?;
        let mut pairs = Vec::with_capacity(terms.len());
        for t in terms {
            let perm: Permutation = t.get("perm").and_then(Value::as_str).ok_or_else(|| bad("term perm"))?.parse()?;
            let coeff = match t.get("coeff") {
                Some(Value::String(s)) => ring.parse(s)?,
                Some(Value::Number(n)) => ring.parse(&n.to_string())?,
                _ => return Err(bad("term coeff")),
            };
            pairs.push((perm, coeff));
        }
        Self::from_terms(ring, d, pairs)
    }
}

impl<R: Ring> fmt::Display for GroupAlgElem<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("{}*{w}", self.ring.format(c))).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<R: Ring> fmt::Debug for GroupAlgElem<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MurphyKind {
    X,
    Y,
}

impl std::str::FromStr for MurphyKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "x" | "X" => Ok(MurphyKind::X),
            "y" | "Y" => Ok(MurphyKind::Y),
            _ => Err(Error::Parse(format!("basis kind {s:?} (expected x or y)"))),
        }
    }
}

fn young_sum<R: Ring>(
    kind: MurphyKind,
    shape: &WeakComposition,
    d: usize,
    ring: &R,
    guard: &SizeGuard,
) -> Result<GroupAlgElem<R>> {
    let group = young_subgroup(shape, d, guard)?;
    let one = ring.one();
    let minus = ring.neg(&one);
    GroupAlgElem::from_terms(
        ring,
        d,
        group.into_iter().map(|w| {
            let c = if kind == MurphyKind::Y && w.sign() < 0 { minus.clone() } else { one.clone() };
            (w, c)
        }),
    )
}

/// `x_λ = Σ_{w ∈ W_λ} w`.
pub fn x_element<R: Ring>(shape: &WeakComposition, d: usize, ring: &R, guard: &SizeGuard) -> Result<GroupAlgElem<R>> {
    young_sum(MurphyKind::X, shape, d, ring, guard)
}

/// `y_λ = Σ_{w ∈ W_λ} sgn(w)·w`.
pub fn y_element<R: Ring>(shape: &WeakComposition, d: usize, ring: &R, guard: &SizeGuard) -> Result<GroupAlgElem<R>> {
    young_sum(MurphyKind::Y, shape, d, ring, guard)
}

/// `x_st = d(s) · x_λ · d(t)⁻¹` (or with `y_λ`) for row-standard `s`, `t`
/// of shape `λ`, where `d(t)` sends `t^λ` to `t` entrywise.
///
/// With maps on the left, `d(t)·W_λ` is the set of permutations taking
/// `t^λ` into the row class of `t`, which is what makes these a basis.
pub fn murphy_element<R: Ring>(
    kind: MurphyKind,
    s: &Tableau,
    t: &Tableau,
    ring: &R,
    guard: &SizeGuard,
) -> Result<GroupAlgElem<R>> {
    if s.shape() != t.shape() {
        return Err(invalid!("tableaux {s} and {t} have different shapes"));
    }
    let base = young_sum(kind, &s.shape(), s.size(), ring, guard)?;
    Ok(base.sandwich(&d_of(s)?, &d_of(t)?.inverse()))
}

#[derive(Clone, Debug)]
pub struct MurphyBasisElement<R: Ring> {
    pub shape: Partition,
    pub s: Tableau,
    pub t: Tableau,
    pub elem: GroupAlgElem<R>,
}

/// The Murphy basis of `R·Sym_d`: partitions in reverse-lexicographic order,
/// then pairs `(s, t)` of standard tableaux lexicographically.
pub fn murphy_basis<R: Ring>(
    d: usize,
    kind: MurphyKind,
    ring: &R,
    guard: &SizeGuard,
) -> Result<Vec<MurphyBasisElement<R>>> {
    if d == 0 {
        return Err(invalid!("murphy_basis needs d >= 1"));
    }
    guard.check_degree(d)?;
    murphy_basis_filtered(d, kind, ring, guard, |_| true)
}

fn murphy_basis_filtered<R: Ring>(
    d: usize,
    kind: MurphyKind,
    ring: &R,
    guard: &SizeGuard,
    keep: impl Fn(&Partition) -> bool,
) -> Result<Vec<MurphyBasisElement<R>>> {
    let mut out = Vec::new();
    for shape in partitions_of(d).into_iter().filter(|l| keep(l)) {
        let base = young_sum(kind, &shape.as_composition(), d, ring, guard)?;
        let tabs = standard_tableaux(&shape);
        let ds: Vec<Permutation> = tabs.iter().map(d_of).collect::<Result<_>>()?;
        let dinv: Vec<Permutation> = ds.iter().map(Permutation::inverse).collect();
        for (s, ds_) in tabs.iter().zip(&ds) {
            for (t, dt_inv) in tabs.iter().zip(&dinv) {
                out.push(MurphyBasisElement {
                    shape: shape.clone(),
                    s: s.clone(),
                    t: t.clone(),
                    elem: base.sandwich(ds_, dt_inv),
                });
            }
        }
    }
    Ok(out)
}

/// Rows are the Murphy basis elements expanded in the permutation basis.
pub fn murphy_transition_matrix(d: usize, kind: MurphyKind, guard: &SizeGuard) -> Result<Matrix<Integers>> {
    let basis = murphy_basis(d, kind, &Integers, guard)?;
    let ncols = factorial(d) as usize;
    Matrix::from_rows(&Integers, ncols, basis.iter().map(|b| b.elem.to_vector()).collect())
}

/// Whether `Ω = {λ ⊢ d : in_omega(λ)}` is closed under going up in dominance.
pub fn is_upward_closed(d: usize, in_omega: impl Fn(&Partition) -> bool) -> bool {
    let all = partitions_of(d);
    all.iter().filter(|l| in_omega(l)).all(|l| all.iter().filter(|m| m.dominates(l).expect("same size")).all(&in_omega))
}

/// `A^y[Ω]`: all `y_st` with `[s] = [t] ∈ Ω`, in Murphy basis order.
/// Fails unless `Ω` is upward-closed.
pub fn cell_ideal_y<R: Ring>(
    d: usize,
    in_omega: impl Fn(&Partition) -> bool + Copy,
    ring: &R,
    guard: &SizeGuard,
) -> Result<Vec<GroupAlgElem<R>>> {
    Ok(cell_ideal_basis(d, in_omega, ring, guard)?.into_iter().map(|b| b.elem).collect())
}

pub fn cell_ideal_basis<R: Ring>(
    d: usize,
    in_omega: impl Fn(&Partition) -> bool + Copy,
    ring: &R,
    guard: &SizeGuard,
) -> Result<Vec<MurphyBasisElement<R>>> {
    guard.check_degree(d)?;
    if !is_upward_closed(d, in_omega) {
        return Err(invalid!("the shape set is not upward-closed in the dominance order"));
    }
    murphy_basis_filtered(d, MurphyKind::Y, ring, guard, in_omega)
}

/// Coefficient matrix (one row per element) in the permutation basis.
pub fn coefficient_matrix<R: Ring>(ring: &R, d: usize, elems: &[GroupAlgElem<R>]) -> Matrix<R> {
    let rows = elems.iter().map(GroupAlgElem::to_vector).collect();
    Matrix::from_rows(ring, factorial(d) as usize, rows).expect("vectors have length d!")
}
