//! Rooted binary trees with interval labels and the election processes they encode.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::combinat::{binomial, catalan_number};
use crate::error::{Error, Result};
use crate::maps::{Check, VerificationReport};

/// A rooted full binary tree whose leaves are numbered `1..=k` from left to right.
///
/// Each vertex carries the interval `[lo, hi]` of leaves below it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryTree {
    lo: usize,
    hi: usize,
    children: Option<Box<(BinaryTree, BinaryTree)>>,
}

impl BinaryTree {
    pub fn leaf(i: usize) -> BinaryTree {
        BinaryTree { lo: i, hi: i, children: None }
    }

    /// Joins two trees whose leaf ranges are adjacent.
    pub fn join(left: BinaryTree, right: BinaryTree) -> Result<BinaryTree> {
        if left.hi + 1 != right.lo {
            return Err(Error::InvalidParameters(format!(
                "cannot join {} and {}",
                left.interval_label(),
                right.interval_label()
            )));
        }
        Ok(BinaryTree { lo: left.lo, hi: right.hi, children: Some(Box::new((left, right))) })
    }

    pub fn interval(&self) -> (usize, usize) {
        (self.lo, self.hi)
    }

    pub fn interval_label(&self) -> String {
        format!("[{},{}]", self.lo, self.hi)
    }

    pub fn is_leaf(&self) -> bool {
        self.children.is_none()
    }

    pub fn children(&self) -> Option<(&BinaryTree, &BinaryTree)> {
        self.children.as_deref().map(|(l, r)| (l, r))
    }

    pub fn leaves(&self) -> usize {
        self.hi - self.lo + 1
    }

    /// All vertex intervals in preorder.
    pub fn vertices(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        self.walk(&mut |t| out.push(t.interval()));
        out
    }

    /// Intervals of the internal vertices in preorder.
    pub fn internal_vertices(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        self.walk(&mut |t| {
            if !t.is_leaf() {
                out.push(t.interval())
            }
        });
        out
    }

    fn walk<'a>(&'a self, f: &mut impl FnMut(&'a BinaryTree)) {
        f(self);
        if let Some((l, r)) = self.children() {
            l.walk(f);
            r.walk(f);
        }
    }

    fn find(&self, at: (usize, usize)) -> Option<&BinaryTree> {
        if self.interval() == at {
            return Some(self);
        }
        let (l, r) = self.children()?;
        if at.1 <= l.hi {
            l.find(at)
        } else {
            r.find(at)
        }
    }

    /// Graphviz text: one node per vertex labelled by its interval, one edge per child.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph tree {\n");
        for (i, j) in self.vertices() {
            let shape = if i == j { "circle" } else { "point" };
            out.push_str(&format!("  \"{i},{j}\" [label=\"[{i},{j}]\", shape={shape}];\n"));
        }
        self.walk(&mut |t| {
            if let Some((l, r)) = t.children() {
                for c in [l, r] {
                    out.push_str(&format!("  \"{},{}\" -> \"{},{}\";\n", t.lo, t.hi, c.lo, c.hi));
                }
            }
        });
        out.push_str("}\n");
        out
    }
}

/// Bracket notation: leaves are numbers, internal vertices `(left right)`.
impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.children() {
            None => write!(f, "{}", self.lo),
            Some((l, r)) => write!(f, "({l} {r})"),
        }
    }
}

fn trees_on(lo: usize, hi: usize) -> Vec<BinaryTree> {
    if lo == hi {
        return vec![BinaryTree::leaf(lo)];
    }
    let mut out = Vec::new();
    for split in lo..hi {
        let left = trees_on(lo, split);
        let right = trees_on(split + 1, hi);
        for l in &left {
            for r in &right {
                out.push(BinaryTree::join(l.clone(), r.clone()).expect("adjacent"));
            }
        }
    }
    out
}

/// Every rooted binary tree with `k ≥ 1` leaves, ordered by the size of the root's left subtree.
pub fn enumerate_trees(k: usize) -> Vec<BinaryTree> {
    assert!(k >= 1, "a tree needs at least one leaf");
    if k == 1 {
        return vec![BinaryTree::leaf(1)];
    }
    (1..k)
        .into_par_iter()
        .map(|split| {
            let left = trees_on(1, split);
            let right = trees_on(split + 1, k);
            let mut out = Vec::with_capacity(left.len() * right.len());
            for l in &left {
                for r in &right {
                    out.push(BinaryTree::join(l.clone(), r.clone()).expect("adjacent"));
                }
            }
            out
        })
        .flatten()
        .collect()
}

/// The tree whose internal vertices are `[1,2], [1,3], ..., [1,k]`.
pub fn left_comb(k: usize) -> BinaryTree {
    assert!(k >= 1, "a tree needs at least one leaf");
    let mut t = BinaryTree::leaf(1);
    for i in 2..=k {
        t = BinaryTree::join(t, BinaryTree::leaf(i)).expect("adjacent");
    }
    t
}

/// Right rotation at the vertex `[i,j]`: `(([i,p-1] [p,m]) [m+1,j])` becomes
/// `([i,p-1] ([p,m] [m+1,j]))`. The vertex must be internal with an internal left child.
pub fn right_rotation(t: &BinaryTree, at: (usize, usize)) -> Result<BinaryTree> {
    let not = || Error::NotRotatable(format!("[{},{}]", at.0, at.1));
    if t.find(at).is_none() {
        return Err(not());
    }
    rotate(t, at).ok_or_else(not)
}

fn rotate(t: &BinaryTree, at: (usize, usize)) -> Option<BinaryTree> {
    let (l, r) = t.children()?;
    if t.interval() == at {
        let (a, b) = l.children()?;
        let inner = BinaryTree::join(b.clone(), r.clone()).ok()?;
        return BinaryTree::join(a.clone(), inner).ok();
    }
    if at.1 <= l.hi {
        BinaryTree::join(rotate(l, at)?, r.clone()).ok()
    } else {
        BinaryTree::join(l.clone(), rotate(r, at)?).ok()
    }
}

/// Vertices at which [`right_rotation`] applies.
pub fn rotatable_vertices(t: &BinaryTree) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    t.walk(&mut |v| {
        if let Some((l, _)) = v.children() {
            if !l.is_leaf() {
                out.push(v.interval());
            }
        }
    });
    out
}

/// Team sizes `0 = N_0 < N_1 < ... < N_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SizeVector(Vec<u64>);

impl SizeVector {
    /// `sizes` lists `N_1, ..., N_k`; it must be strictly increasing and positive.
    pub fn new(sizes: Vec<u64>) -> Result<SizeVector> {
        let mut prev = 0;
        for &n in &sizes {
            if n <= prev {
                return Err(Error::InvalidParameters(format!("sizes must increase strictly from 0: {sizes:?}")));
            }
            prev = n;
        }
        let mut v = vec![0];
        v.extend(sizes);
        Ok(SizeVector(v))
    }

    /// `N_i = 2^i - 1`.
    pub fn powers_of_two(k: usize) -> SizeVector {
        assert!(k < 64);
        SizeVector((0..=k).map(|i| (1u64 << i) - 1).collect())
    }

    pub fn k(&self) -> usize {
        self.0.len() - 1
    }

    /// `N_i` for `0 ≤ i ≤ k`.
    pub fn get(&self, i: usize) -> u64 {
        self.0[i]
    }

    pub fn sizes(&self) -> &[u64] {
        &self.0[1..]
    }

    /// Number of unordered pairs of distinct index pairs `j > i ≥ 0` sharing the difference `N_j - N_i`.
    pub fn difference_collisions(&self) -> usize {
        let mut seen: BTreeMap<u64, usize> = BTreeMap::new();
        for j in 0..self.0.len() {
            for i in 0..j {
                *seen.entry(self.0[j] - self.0[i]).or_default() += 1;
            }
        }
        seen.values().map(|&c| c * (c - 1) / 2).sum()
    }

    pub fn is_generic(&self) -> bool {
        self.difference_collisions() == 0
    }
}

impl fmt::Display for SizeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.sizes().iter().map(|n| n.to_string()).collect();
        write!(f, "({})", s.join(","))
    }
}

/// The binomial `C(N_top.0 - N_top.1, N_bottom.0 - N_bottom.1)` written in indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexBinomial {
    pub top: (usize, usize),
    pub bottom: (usize, usize),
}

impl IndexBinomial {
    pub fn evaluate(&self, s: &SizeVector) -> (u64, u64) {
        (s.get(self.top.0) - s.get(self.top.1), s.get(self.bottom.0) - s.get(self.bottom.1))
    }
}

impl fmt::Display for IndexBinomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |(a, b): (usize, usize)| if b == 0 { format!("N{a}") } else { format!("N{a}-N{b}") };
        write!(f, "C({}, {})", part(self.top), part(self.bottom))
    }
}

/// The binomial attached to each internal vertex `[i,j]`: with `ℓ` the largest index
/// `i ≤ ℓ < j` such that `[i,ℓ]` is a vertex, it is `C(N_j - N_{i-1}, N_ℓ - N_{i-1})`.
/// Listed in preorder.
pub fn tree_to_indices(t: &BinaryTree) -> Vec<IndexBinomial> {
    let verts: BTreeSet<(usize, usize)> = t.vertices().into_iter().collect();
    t.internal_vertices()
        .into_iter()
        .map(|(i, j)| {
            let l = (i..j).rev().find(|&l| verts.contains(&(i, l))).expect("the left child starts at i");
            IndexBinomial { top: (j, i - 1), bottom: (l, i - 1) }
        })
        .collect()
}

/// A product of binomials `C(top, bottom)`, compared as a multiset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElectionProcess(Vec<(u64, u64)>);

impl ElectionProcess {
    pub fn new(mut symbols: Vec<(u64, u64)>) -> Result<ElectionProcess> {
        if let Some(&(t, b)) = symbols.iter().find(|(t, b)| b > t) {
            return Err(Error::InvalidParameters(format!("C({t}, {b}) has bottom above top")));
        }
        symbols.sort_unstable_by(|a, b| b.cmp(a));
        Ok(ElectionProcess(symbols))
    }

    /// Symbols sorted in decreasing order.
    pub fn symbols(&self) -> &[(u64, u64)] {
        &self.0
    }

    pub fn product(&self) -> BigUint {
        self.0.iter().map(|&(t, b)| binomial(t, b)).product()
    }
}

impl fmt::Display for ElectionProcess {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let s: Vec<String> = self.0.iter().map(|(t, b)| format!("C({t},{b})")).collect();
        write!(f, "{}", s.join("·"))
    }
}

/// The process attached to `t` when the layers have sizes `s`.
pub fn tree_to_process(t: &BinaryTree, s: &SizeVector) -> Result<ElectionProcess> {
    if !s.is_generic() {
        return Err(Error::NotGeneric);
    }
    process_unchecked(t, s)
}

fn process_unchecked(t: &BinaryTree, s: &SizeVector) -> Result<ElectionProcess> {
    if t.interval() != (1, s.k()) {
        return Err(Error::InvalidParameters(format!("tree has {} leaves but there are {} sizes", t.leaves(), s.k())));
    }
    ElectionProcess::new(tree_to_indices(t).iter().map(|b| b.evaluate(s)).collect())
}

/// Trees minus distinct processes: zero exactly when the map is injective.
/// Works for any size vector, generic or not.
pub fn collision_count(k: usize, s: &SizeVector) -> Result<usize> {
    let trees = enumerate_trees(k);
    let procs = trees.par_iter().map(|t| process_unchecked(t, s)).collect::<Result<BTreeSet<_>>>()?;
    Ok(trees.len() - procs.len())
}

/// Every rotation `t → t'` with the vertex it was applied at.
pub fn rotation_edges(trees: &[BinaryTree]) -> Vec<(usize, (usize, usize), BinaryTree)> {
    trees
        .iter()
        .enumerate()
        .flat_map(|(n, t)| {
            rotatable_vertices(t).into_iter().map(move |at| (n, at, right_rotation(t, at).expect("rotatable")))
        })
        .collect()
}

/// Removed and added index binomials of a rotation, checked against
/// `C(N_j-N_{i-1}, N_m-N_{i-1}) C(N_m-N_{i-1}, N_{p-1}-N_{i-1})
///  → C(N_j-N_{i-1}, N_{p-1}-N_{i-1}) C(N_j-N_{p-1}, N_m-N_{p-1})` with `j > m ≥ p > i ≥ 1`.
fn flip_matches(before: &BinaryTree, after: &BinaryTree) -> bool {
    let b: BTreeSet<IndexBinomial> = tree_to_indices(before).into_iter().collect();
    let a: BTreeSet<IndexBinomial> = tree_to_indices(after).into_iter().collect();
    let gone: Vec<IndexBinomial> = b.difference(&a).copied().collect();
    let new: Vec<IndexBinomial> = a.difference(&b).copied().collect();
    if gone.len() != 2 || new.len() != 2 {
        return false;
    }
    let outer = gone.iter().find(|x| gone.iter().any(|y| y.top == x.bottom));
    let Some(outer) = outer else { return false };
    let (j, i1) = outer.top;
    let m = outer.bottom.0;
    let inner = *gone.iter().find(|x| *x != outer).expect("two symbols");
    let p1 = inner.bottom.0;
    let (i, p) = (i1 + 1, p1 + 1);
    let shape = j > m && m >= p && p > i && i >= 1 && inner.top == (m, i1) && inner.bottom == (p1, i1);
    let want: BTreeSet<IndexBinomial> = [
        IndexBinomial { top: (j, i1), bottom: (p1, i1) },
        IndexBinomial { top: (j, p1), bottom: (m, p1) },
    ]
    .into_iter()
    .collect();
    shape && new.into_iter().collect::<BTreeSet<_>>() == want
}

/// The correspondence between trees with `k` leaves and election processes on `k` layers.
pub fn verify_catalan(k: usize, s: &SizeVector) -> Result<VerificationReport> {
    let t0 = Instant::now();
    if k == 0 || s.k() != k {
        return Err(Error::InvalidParameters(format!("need k >= 1 sizes, got k={k} and {} sizes", s.k())));
    }
    if !s.is_generic() {
        return Err(Error::NotGeneric);
    }
    let mut report = VerificationReport {
        kind: "catalan".into(),
        params: [("k".to_string(), k as u32)].into_iter().collect(),
        field: "Z".into(),
        checks: Vec::new(),
        elapsed_ms: None,
    };
    report.push(Check::new("generic_position", true).param("sizes", s));

    let trees = enumerate_trees(k);
    let procs = trees.par_iter().map(|t| process_unchecked(t, s)).collect::<Result<Vec<_>>>()?;
    let distinct: BTreeSet<&ElectionProcess> = procs.iter().collect();
    report.push(
        Check::new("injective", distinct.len() == trees.len())
            .detail(format!("{} trees, {} distinct processes", trees.len(), distinct.len())),
    );
    let cat = catalan_number(k as u64 - 1);
    report.push(
        Check::new("count", BigUint::from(distinct.len()) == cat).detail(format!("{} processes, C_{} = {cat}", distinct.len(), k - 1)),
    );

    let index: BTreeMap<&BinaryTree, usize> = trees.iter().enumerate().map(|(n, t)| (t, n)).collect();
    let edges = rotation_edges(&trees);
    let mut closed = true;
    let mut product_bad = None;
    let mut pattern_bad = None;
    for (n, at, t2) in &edges {
        let Some(&n2) = index.get(t2) else {
            closed = false;
            continue;
        };
        if procs[*n].product() != procs[n2].product() && product_bad.is_none() {
            product_bad = Some(format!("{} at [{},{}]: {} vs {}", trees[*n], at.0, at.1, procs[*n], procs[n2]));
        }
        if !flip_matches(&trees[*n], t2) && pattern_bad.is_none() {
            pattern_bad = Some(format!("{} at [{},{}]", trees[*n], at.0, at.1));
        }
    }
    let mut c = Check::new("rotation_products", product_bad.is_none() && closed)
        .detail(product_bad.unwrap_or(format!("{} rotation edges", edges.len())));
    if !closed {
        c = c.detail("a rotation left the enumerated set");
    }
    report.push(c);
    let mut c = Check::new("flip_pattern", pattern_bad.is_none());
    if let Some(bad) = pattern_bad {
        c = c.detail(bad);
    }
    report.push(c);

    // Every tree is reachable from the left comb.
    let mut seen = vec![false; trees.len()];
    let mut queue = VecDeque::new();
    if let Some(&c0) = index.get(&left_comb(k)) {
        seen[c0] = true;
        queue.push_back(c0);
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); trees.len()];
    for (n, _, t2) in &edges {
        if let Some(&n2) = index.get(t2) {
            adj[*n].push(n2);
        }
    }
    while let Some(v) = queue.pop_front() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    let reached = seen.iter().filter(|&&b| b).count();
    report.push(Check::new("reachable_from_comb", reached == trees.len()).detail(format!("{reached} of {}", trees.len())));
    report.elapsed_ms = Some(t0.elapsed().as_millis());
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn catalan_rec(n: usize) -> usize {
        let mut c = vec![1usize];
        for i in 1..=n {
            c.push((0..i).map(|j| c[j] * c[i - 1 - j]).sum());
        }
        c[n]
    }

    #[test]
    fn counts() {
        assert_eq!(enumerate_trees(1), vec![BinaryTree::leaf(1)]);
        assert_eq!(enumerate_trees(4).len(), 5);
        for k in 1..=9 {
            assert_eq!(enumerate_trees(k).len(), catalan_rec(k - 1));
        }
        assert_eq!(enumerate_trees(6).len(), 42);
        let t = enumerate_trees(7);
        assert_eq!(t.iter().collect::<BTreeSet<_>>().len(), t.len());
    }

    #[test]
    fn comb_and_rotation() {
        let c = left_comb(4);
        assert_eq!(c.to_string(), "(((1 2) 3) 4)");
        assert_eq!(c.internal_vertices(), vec![(1, 4), (1, 3), (1, 2)]);
        let r = right_rotation(&left_comb(3), (1, 3)).unwrap();
        assert_eq!(r.to_string(), "(1 (2 3))");
        assert_eq!(right_rotation(&r, (1, 3)), Err(Error::NotRotatable("[1,3]".into())));
        assert!(right_rotation(&r, (2, 3)).is_err());
        assert!(right_rotation(&r, (1, 2)).is_err());
        assert_eq!(right_rotation(&c, (1, 3)).unwrap().to_string(), "((1 (2 3)) 4)");
        assert!(c.to_dot().contains("\"1,4\" -> \"1,3\""));
    }

    #[test]
    fn binomial_assignment() {
        let s = SizeVector::powers_of_two(4);
        let p = tree_to_process(&left_comb(4), &s).unwrap();
        assert_eq!(p.symbols(), &[(15, 7), (7, 3), (3, 1)]);
        let two = tree_to_process(&left_comb(2), &SizeVector::powers_of_two(2)).unwrap();
        assert_eq!(two.symbols(), &[(3, 1)]);
        // ((1 ((2 3) (4 5)))
        let t = BinaryTree::join(
            BinaryTree::leaf(1),
            BinaryTree::join(
                BinaryTree::join(BinaryTree::leaf(2), BinaryTree::leaf(3)).unwrap(),
                BinaryTree::join(BinaryTree::leaf(4), BinaryTree::leaf(5)).unwrap(),
            )
            .unwrap(),
        )
        .unwrap();
        let idx: Vec<String> = tree_to_indices(&t).iter().map(|b| b.to_string()).collect();
        assert_eq!(idx, ["C(N5, N1)", "C(N5-N1, N3-N1)", "C(N3-N1, N2-N1)", "C(N5-N3, N4-N3)"]);
        // The left-child rule gives the same bottoms.
        for tree in enumerate_trees(6) {
            let mut via_child = Vec::new();
            tree.walk(&mut |v| {
                if let Some((l, _)) = v.children() {
                    via_child.push(l.hi);
                }
            });
            let lit: Vec<usize> = tree_to_indices(&tree).iter().map(|b| b.bottom.0).collect();
            assert_eq!(lit, via_child);
        }
    }

    #[test]
    fn genericity() {
        assert!(SizeVector::powers_of_two(10).is_generic());
        let bad = SizeVector::new(vec![1, 2, 3]).unwrap();
        assert!(!bad.is_generic());
        assert_eq!(tree_to_process(&left_comb(3), &bad), Err(Error::NotGeneric));
        assert!(matches!(verify_catalan(3, &bad), Err(Error::NotGeneric)));
        assert!(SizeVector::new(vec![2, 2]).is_err());
        // Literal symbols only start to collide at six layers.
        assert_eq!(collision_count(4, &SizeVector::new(vec![1, 2, 3, 4]).unwrap()).unwrap(), 0);
        assert_eq!(collision_count(6, &SizeVector::new(vec![1, 2, 3, 4, 5, 6]).unwrap()).unwrap(), 1);
        assert_eq!(collision_count(5, &SizeVector::powers_of_two(5)).unwrap(), 0);
    }

    #[test]
    fn verify_small() {
        for k in 1..=7 {
            let r = verify_catalan(k, &SizeVector::powers_of_two(k)).unwrap();
            assert!(r.passed(), "{}", r.render_text());
        }
    }
}
