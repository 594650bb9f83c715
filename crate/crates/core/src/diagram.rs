//! Set-partition diagrams, their stacking product, and linear combinations
//! of diagrams (the partition algebra with `δ` specialized to an integer).
//!
//! A diagram on `r` strands is a set partition of the `2r` nodes
//! `1..r` (north) and `1'..r'` (south). Nodes are indexed `0..r` for the
//! north row and `r..2r` for the south row; blocks are numbered by first
//! appearance in that order, so equal diagrams have equal labels.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::combinatorics::{set_partition_labels, Permutation};
use crate::error::{invalid, Error, Result};
use crate::ring::Ring;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    North(usize),
    South(usize),
}

impl Node {
    fn index(self, r: usize) -> Result<usize> {
        match self {
            Node::North(k) if (1..=r).contains(&k) => Ok(k - 1),
            Node::South(k) if (1..=r).contains(&k) => Ok(r + k - 1),
            _ => Err(invalid!("node {self} out of range for {r} strands")),
        }
    }

    fn from_index(i: usize, r: usize) -> Node {
        if i < r {
            Node::North(i + 1)
        } else {
            Node::South(i - r + 1)
        }
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::North(k) => write!(f, "{k}"),
            Node::South(k) => write!(f, "{k}'"),
        }
    }
}

impl FromStr for Node {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (digits, south) = match s.strip_suffix('\'') {
            Some(d) => (d, true),
            None => (s, false),
        };
        let k: usize = digits.parse().map_err(|_| Error::Parse(format!("bad diagram node {s:?}")))?;
        if k == 0 {
            return Err(Error::Parse(format!("diagram nodes start at 1, got {s:?}")));
        }
        Ok(if south { Node::South(k) } else { Node::North(k) })
    }
}

/// A set partition of `{1..r} ∪ {1'..r'}` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    r: usize,
    labels: Vec<u8>,
}

/// Renumber arbitrary block ids by first appearance.
fn canonical_labels(raw: impl IntoIterator<Item = usize>) -> Vec<u8> {
    let mut map: Vec<(usize, u8)> = Vec::new();
    raw.into_iter()
        .map(|b| match map.iter().find(|(k, _)| *k == b) {
            Some(&(_, v)) => v,
            None => {
                let v = map.len() as u8;
                map.push((b, v));
                v
            }
        })
        .collect()
}

impl Diagram {
    /// From blocks of nodes; every node of the `r` strands must appear exactly once.
    pub fn from_blocks(r: usize, blocks: &[Vec<Node>]) -> Result<Self> {
        if r > 120 {
            return Err(invalid!("{r} strands is too many"));
        }
        let mut raw = vec![usize::MAX; 2 * r];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(invalid!("empty block in diagram"));
            }
            for node in block {
                let i = node.index(r)?;
                if raw[i] != usize::MAX {
                    return Err(invalid!("node {node} appears twice"));
                }
                raw[i] = b;
            }
        }
        if let Some(i) = raw.iter().position(|&b| b == usize::MAX) {
            return Err(invalid!("node {} is in no block", Node::from_index(i, r)));
        }
        Ok(Diagram { r, labels: canonical_labels(raw) })
    }

    /// From a block id for each node `1..r, 1'..r'` (ids need not be canonical).
    pub fn from_node_labels(labels: &[usize]) -> Result<Self> {
        if !labels.len().is_multiple_of(2) {
            return Err(invalid!("a diagram has an even number of nodes, got {}", labels.len()));
        }
        Ok(Diagram { r: labels.len() / 2, labels: canonical_labels(labels.iter().copied()) })
    }

    pub fn identity(r: usize) -> Self {
        Diagram { r, labels: (0..2 * r).map(|i| (i % r.max(1)) as u8).collect() }
    }

    /// The diagram with blocks `{α, σ(α)'}`: the place permutation `σ`.
    pub fn from_permutation(sigma: &Permutation) -> Self {
        let r = sigma.degree();
        let mut raw = vec![0; 2 * r];
        for a in 0..r {
            raw[a] = a;
            raw[r + sigma.apply0(a)] = a;
        }
        Diagram { r, labels: canonical_labels(raw) }
    }

    pub fn strands(&self) -> usize {
        self.r
    }

    /// Canonical block id of each node, north row first.
    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn num_blocks(&self) -> usize {
        self.labels.iter().max().map_or(0, |&m| m as usize + 1)
    }

    /// Blocks in canonical order, each listing north nodes then south nodes.
    pub fn blocks(&self) -> Vec<Vec<Node>> {
        let mut out = vec![Vec::new(); self.num_blocks()];
        for (i, &b) in self.labels.iter().enumerate() {
            out[b as usize].push(Node::from_index(i, self.r));
        }
        out
    }

    /// Whether `r'` and `r` lie in one block, i.e. this diagram of `P_r`
    /// belongs to the half algebra `P_{r-1/2}`.
    pub fn is_half(&self) -> bool {
        self.r >= 1 && self.labels[self.r - 1] == self.labels[2 * self.r - 1]
    }

    /// The permutation this diagram represents, if it is one.
    pub fn as_permutation(&self) -> Option<Permutation> {
        let r = self.r;
        if self.num_blocks() != r {
            return None;
        }
        let mut images = vec![0usize; r];
        for (a, img) in images.iter_mut().enumerate() {
            let b = self.labels[a];
            *img = (r..2 * r).find(|&j| self.labels[j] == b)? - r + 1;
        }
        Permutation::from_one_line(&images).ok()
    }

    /// Every diagram on `r` strands, in lexicographic order of labels.
    pub fn all(r: usize) -> Vec<Diagram> {
        set_partition_labels(2 * r).into_iter().map(|labels| Diagram { r, labels }).collect()
    }

    /// Every diagram on `r + 1` strands joining `r+1` and `(r+1)'`.
    pub fn all_half(r: usize) -> Vec<Diagram> {
        Self::all(r + 1).into_iter().filter(Diagram::is_half).collect()
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> =
            self.blocks().iter().map(|b| b.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")).collect();
        f.write_str(&blocks.join("|"))
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram({self})")
    }
}

impl FromStr for Diagram {
    type Err = Error;

    /// Blocks separated by `|`, nodes by `,`, south nodes primed:
    /// `1,2'|2,1'`. The number of strands is the largest node label.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(Diagram::identity(0));
        }
        let blocks: Vec<Vec<Node>> = s
            .split('|')
            .map(|b| b.split(',').filter(|t| !t.trim().is_empty()).map(str::parse).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let r = blocks
            .iter()
            .flatten()
            .map(|n| match n {
                Node::North(k) | Node::South(k) => *k,
            })
            .max()
            .unwrap_or(0);
        Diagram::from_blocks(r, &blocks).map_err(|e| Error::Parse(format!("diagram {s:?}: {e}")))
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Stack `x` on top of `y` (south row of `x` glued to north row of `y`).
/// Returns the number `m` of components made only of middle nodes and
/// the diagram induced on the outer rows; the product is `δ^m` times it.
pub fn multiply_diagrams(x: &Diagram, y: &Diagram) -> Result<(usize, Diagram)> {
    if x.r != y.r {
        return Err(Error::Mismatch(format!("diagrams on {} and {} strands", x.r, y.r)));
    }
    let r = x.r;
    // top 0..r, middle r..2r, bottom 2r..3r
    let mut uf = UnionFind::new(3 * r);
    let mut first = vec![usize::MAX; x.num_blocks()];
    for (i, &b) in x.labels.iter().enumerate() {
        let f = &mut first[b as usize];
        if *f == usize::MAX {
            *f = i;
        } else {
            uf.union(*f, i);
        }
    }
    let mut first = vec![usize::MAX; y.num_blocks()];
    for (i, &b) in y.labels.iter().enumerate() {
        let node = r + i;
        let f = &mut first[b as usize];
        if *f == usize::MAX {
            *f = node;
        } else {
            uf.union(*f, node);
        }
    }
    let outer: Vec<usize> = (0..r).chain(2 * r..3 * r).map(|i| uf.find(i)).collect();
    let mut middle_roots: Vec<usize> = (r..2 * r).map(|i| uf.find(i)).filter(|c| !outer.contains(c)).collect();
    middle_roots.sort_unstable();
    middle_roots.dedup();
    Ok((middle_roots.len(), Diagram { r, labels: canonical_labels(outer) }))
}

/// A linear combination of diagrams on `r` strands in `P_r(δ)`.
#[derive(Clone, PartialEq)]
pub struct DiagramAlgElem<R: Ring> {
    r: usize,
    delta: i64,
    ring: R,
    terms: BTreeMap<Diagram, R::Elem>,
}

impl<R: Ring> DiagramAlgElem<R> {
    pub fn zero(ring: &R, r: usize, delta: i64) -> Self {
        DiagramAlgElem { r, delta, ring: ring.clone(), terms: BTreeMap::new() }
    }

    pub fn from_diagram(ring: &R, delta: i64, x: Diagram) -> Self {
        let mut out = Self::zero(ring, x.r, delta);
        out.add_term(x, &ring.one());
        out
    }

    pub fn identity(ring: &R, r: usize, delta: i64) -> Self {
        Self::from_diagram(ring, delta, Diagram::identity(r))
    }

    pub fn from_terms(
        ring: &R,
        r: usize,
        delta: i64,
        terms: impl IntoIterator<Item = (Diagram, R::Elem)>,
    ) -> Result<Self> {
        let mut out = Self::zero(ring, r, delta);
        for (x, c) in terms {
            if x.r != r {
                return Err(Error::Mismatch(format!("diagram {x} in an element on {r} strands")));
            }
            out.add_term(x, &c);
        }
        Ok(out)
    }

    fn add_term(&mut self, x: Diagram, c: &R::Elem) {
        if self.ring.is_zero(c) {
            return;
        }
        match self.terms.get_mut(&x) {
            Some(v) => {
                self.ring.add_assign(v, c);
                if self.ring.is_zero(v) {
                    self.terms.remove(&x);
                }
            }
            None => {
                self.terms.insert(x, c.clone());
            }
        }
    }

    pub fn strands(&self) -> usize {
        self.r
    }

    pub fn delta(&self) -> i64 {
        self.delta
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn terms(&self) -> &BTreeMap<Diagram, R::Elem> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.r != other.r || self.delta != other.delta || self.ring != other.ring {
            return Err(Error::Mismatch(format!(
                "P_{}({}) over {} vs P_{}({}) over {}",
                self.r,
                self.delta,
                self.ring.spec(),
                other.r,
                other.delta,
                other.ring.spec()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (x, c) in &other.terms {
            out.add_term(x.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &R::Elem) -> Self {
        let mut out = Self::zero(&self.ring, self.r, self.delta);
        for (x, v) in &self.terms {
            out.add_term(x.clone(), &self.ring.mul(c, v));
        }
        out
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let ring = &self.ring;
        let delta = ring.from_i64(self.delta);
        let mut powers = vec![ring.one()];
        let mut out = Self::zero(ring, self.r, self.delta);
        for (x, a) in &self.terms {
            for (y, b) in &other.terms {
                let (m, z) = multiply_diagrams(x, y)?;
                while powers.len() <= m {
                    let next = ring.mul(powers.last().expect("nonempty"), &delta);
                    powers.push(next);
                }
                out.add_term(z, &ring.mul(&ring.mul(a, b), &powers[m]));
            }
        }
        Ok(out)
    }
}

impl<R: Ring> fmt::Display for DiagramAlgElem<R> {
    /// Terms as `coeff * diagram`, joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(x, c)| format!("{} * {x}", self.ring.format(c))).collect();
        f.write_str(&parts.join(" + "))
    }
}

impl<R: Ring> fmt::Debug for DiagramAlgElem<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, Rationals};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn dg(s: &str) -> Diagram {
        s.parse().unwrap()
    }

    /// Bell numbers from the triangle recurrence.
    fn bell(n: usize) -> usize {
        let mut row = vec![1usize];
        for _ in 0..n {
            let mut next = vec![*row.last().unwrap()];
            for v in &row {
                let last = *next.last().unwrap();
                next.push(last + v);
            }
            row = next;
        }
        row[0]
    }

    #[test]
    fn parse_and_display() {
        let s = "1,2,4,2',5'|3|5,6,7,3',4',6',7'|8,8'|1'";
        let x = dg(s);
        assert_eq!(x.strands(), 8);
        assert_eq!(x.num_blocks(), 5);
        assert_eq!(x.to_string(), s);
        // block and node order in the input do not matter
        assert_eq!(dg("1'|8',8|3|7',6',4',3',7,6,5|5',2',4,2,1"), x);
        assert!("1,1'|1".parse::<Diagram>().is_err());
        assert!("1|2'".parse::<Diagram>().is_err());
        assert!("0,1'".parse::<Diagram>().is_err());
    }

    #[test]
    fn canonical_form_is_stable() {
        for r in 0..=3 {
            for x in Diagram::all(r) {
                assert_eq!(dg(&x.to_string()), x);
                assert_eq!(
                    Diagram::from_node_labels(&x.labels.iter().map(|&b| b as usize).collect::<Vec<_>>()).unwrap(),
                    x
                );
                assert_eq!(Diagram::from_blocks(r, &x.blocks()).unwrap(), x);
            }
        }
    }

    #[test]
    fn counts_are_bell_numbers() {
        assert_eq!(bell(4), 15);
        for r in 0..=3 {
            assert_eq!(Diagram::all(r).len(), bell(2 * r), "r={r}");
            assert_eq!(Diagram::all_half(r).len(), bell(2 * r + 1), "r={r}");
        }
    }

    #[test]
    fn small_products() {
        let id = Diagram::identity(3);
        assert_eq!(id.to_string(), "1,1'|2,2'|3,3'");
        assert_eq!(multiply_diagrams(&id, &id).unwrap(), (0, id.clone()));
        let a = dg("1|1'");
        assert_eq!(multiply_diagrams(&a, &a).unwrap(), (1, a.clone()));
        assert!(multiply_diagrams(&a, &id).is_err());
    }

    #[test]
    fn two_diagram_product_with_one_closed_loop() {
        let x = dg("1|2,3,3'|4,1'|5,5'|2'|4'");
        let y = dg("1,3,3',4'|2,1'|5,2',5'|4");
        let (m, z) = multiply_diagrams(&x, &y).unwrap();
        assert_eq!(m, 1);
        assert_eq!(z, dg("1|2,3,4,3',4'|5,2',5'|1'"));
    }

    #[test]
    fn permutation_diagrams() {
        assert_eq!(Diagram::from_permutation(&Permutation::identity(4)), Diagram::identity(4));
        let s = Permutation::transposition(2, 1, 2).unwrap();
        assert_eq!(Diagram::from_permutation(&s), dg("1,2'|2,1'"));
        for sigma in Permutation::all(3) {
            let x = Diagram::from_permutation(&sigma);
            assert_eq!(x.as_permutation(), Some(sigma.clone()));
            for tau in Permutation::all(3) {
                let y = Diagram::from_permutation(&tau);
                assert_eq!(multiply_diagrams(&x, &y).unwrap(), (0, Diagram::from_permutation(&sigma.then(&tau))));
            }
        }
        assert_eq!(dg("1|1'").as_permutation(), None);
    }

    #[test]
    fn half_diagrams() {
        assert!(Diagram::identity(3).is_half());
        assert!(dg("1,2'|2,1'|3,3'").is_half());
        assert!(!dg("1,1'|2|2'").is_half());
        for r in 0..=2 {
            let half = Diagram::all_half(r);
            for x in &half {
                for y in &half {
                    let (m, z) = multiply_diagrams(x, y).unwrap();
                    assert!(z.is_half());
                    assert!(m <= r + 1);
                }
            }
        }
    }

    fn random_diagram(rng: &mut ChaCha8Rng, r: usize) -> Diagram {
        let labels: Vec<usize> = (0..2 * r).map(|_| rng.gen_range(0..2 * r)).collect();
        Diagram::from_node_labels(&labels).unwrap()
    }

    #[test]
    fn associativity_on_random_elements() {
        let z = Integers;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for r in 1..=3 {
            for _ in 0..20 {
                let mut elem = || {
                    let terms: Vec<(Diagram, _)> =
                        (0..3).map(|_| (random_diagram(&mut rng, r), z.from_i64(rng.gen_range(-3..=3)))).collect();
                    DiagramAlgElem::from_terms(&z, r, 3, terms).unwrap()
                };
                let (a, b, c) = (elem(), elem(), elem());
                let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
                let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
                assert_eq!(left, right);
                let distributed = a.multiply(&c).unwrap().add(&b.multiply(&c).unwrap()).unwrap();
                assert_eq!(a.add(&b).unwrap().multiply(&c).unwrap(), distributed);
            }
        }
    }

    #[test]
    fn algebra_unit_and_display() {
        let q = Rationals;
        let a = DiagramAlgElem::from_diagram(&q, 4, dg("1|1'"));
        let one = DiagramAlgElem::identity(&q, 1, 4);
        assert_eq!(one.multiply(&a).unwrap(), a);
        assert_eq!(a.multiply(&one).unwrap(), a);
        assert_eq!(a.multiply(&a).unwrap().to_string(), "4 * 1|1'");
        assert!(a.multiply(&DiagramAlgElem::identity(&q, 1, 3)).is_err());
    }
}
