//! Labeled plane `(m+1)`-ary trees, cadet chains, boxed trees, and the tree
//! families attached to an arrangement.
//!
//! Nodes carry distinct labels `1..=n` identifying the canonical vertices of
//! a [`DeformationSpec`]; leaves are unlabeled. The cadet of a node is its
//! rightmost child that is itself a node, and a boxed tree partitions the
//! nodes into chains of consecutive cadets.

use std::fmt;

use num::BigInt;
use rand::Rng;

use crate::error::{Error, Result};
use crate::spec::DeformationSpec;

#[derive(Clone, PartialEq, Eq)]
pub enum Vert {
    Node { label: u32, children: Vec<usize> },
    Leaf,
}

/// A rooted plane tree in which every node has exactly `arity` ordered
/// children; both nodes and leaves are arena vertices. Equality compares the
/// shape and labels, not the arena layout.
#[derive(Clone)]
pub struct PlaneTree {
    verts: Vec<Vert>,
    root: usize,
    arity: usize,
}

impl PartialEq for PlaneTree {
    fn eq(&self, other: &Self) -> bool {
        fn rec(a: &PlaneTree, va: usize, b: &PlaneTree, vb: usize) -> bool {
            match (&a.verts[va], &b.verts[vb]) {
                (Vert::Leaf, Vert::Leaf) => true,
                (
                    Vert::Node {
                        label: la,
                        children: ca,
                    },
                    Vert::Node {
                        label: lb,
                        children: cb,
                    },
                ) => {
                    la == lb
                        && ca.len() == cb.len()
                        && ca.iter().zip(cb).all(|(&x, &y)| rec(a, x, b, y))
                }
                _ => false,
            }
        }
        self.arity == other.arity && rec(self, self.root, other, other.root)
    }
}

impl Eq for PlaneTree {}

impl PlaneTree {
    /// The tree with no nodes (a single leaf).
    pub fn empty(arity: usize) -> Self {
        PlaneTree {
            verts: vec![Vert::Leaf],
            root: 0,
            arity,
        }
    }

    pub(crate) fn from_parts(verts: Vec<Vert>, root: usize, arity: usize) -> Self {
        PlaneTree { verts, root, arity }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn vert(&self, id: usize) -> &Vert {
        &self.verts[id]
    }

    pub fn vert_count(&self) -> usize {
        self.verts.len()
    }

    pub fn is_node(&self, id: usize) -> bool {
        matches!(self.verts[id], Vert::Node { .. })
    }

    pub fn label(&self, id: usize) -> Option<u32> {
        match &self.verts[id] {
            Vert::Node { label, .. } => Some(*label),
            Vert::Leaf => None,
        }
    }

    pub fn children(&self, id: usize) -> &[usize] {
        match &self.verts[id] {
            Vert::Node { children, .. } => children,
            Vert::Leaf => &[],
        }
    }

    pub fn node_ids(&self) -> Vec<usize> {
        (0..self.verts.len()).filter(|&i| self.is_node(i)).collect()
    }

    pub fn node_count(&self) -> usize {
        self.verts
            .iter()
            .filter(|v| matches!(v, Vert::Node { .. }))
            .count()
    }

    pub fn leaf_count(&self) -> usize {
        self.verts.len() - self.node_count()
    }

    /// Sorted node labels.
    pub fn labels(&self) -> Vec<u32> {
        let mut out: Vec<u32> = (0..self.verts.len())
            .filter_map(|i| self.label(i))
            .collect();
        out.sort_unstable();
        out
    }

    pub fn node_by_label(&self, label: u32) -> Option<usize> {
        (0..self.verts.len()).find(|&i| self.label(i) == Some(label))
    }

    /// `(parent, position)` for every vertex except the root.
    pub fn parents(&self) -> Vec<Option<(usize, usize)>> {
        let mut out = vec![None; self.verts.len()];
        for id in 0..self.verts.len() {
            for (pos, &c) in self.children(id).iter().enumerate() {
                out[c] = Some((id, pos));
            }
        }
        out
    }

    /// Number of left siblings (including leaves), i.e. the child position.
    pub fn ls(&self, id: usize) -> usize {
        self.parents()[id].map(|(_, pos)| pos).unwrap_or(0)
    }

    /// The rightmost child of `id` that is a node, if any.
    pub fn cadet(&self, id: usize) -> Option<usize> {
        self.children(id)
            .iter()
            .rev()
            .copied()
            .find(|&c| self.is_node(c))
    }

    pub fn ls_of_label(&self, label: u32) -> Result<usize> {
        let id = self
            .node_by_label(label)
            .ok_or(Error::UnknownVertex(label as usize))?;
        Ok(self.ls(id))
    }

    pub fn cadet_of_label(&self, label: u32) -> Result<Option<u32>> {
        let id = self
            .node_by_label(label)
            .ok_or(Error::UnknownVertex(label as usize))?;
        Ok(self.cadet(id).and_then(|c| self.label(c)))
    }

    /// Whether a label sequence follows consecutive cadet edges.
    pub fn is_cadet_sequence(&self, labels: &[u32]) -> Result<bool> {
        if labels.is_empty() {
            return Ok(false);
        }
        let mut ids = Vec::with_capacity(labels.len());
        for &l in labels {
            ids.push(
                self.node_by_label(l)
                    .ok_or(Error::UnknownVertex(l as usize))?,
            );
        }
        Ok(ids.windows(2).all(|w| self.cadet(w[0]) == Some(w[1])))
    }

    /// Copies the subtree rooted at a vertex into a standalone tree.
    pub fn subtree(&self, id: usize) -> PlaneTree {
        let mut out = PlaneTree {
            verts: Vec::new(),
            root: 0,
            arity: self.arity,
        };
        out.root = self.copy_into(id, &mut out.verts);
        out
    }

    fn copy_into(&self, id: usize, verts: &mut Vec<Vert>) -> usize {
        match &self.verts[id] {
            Vert::Leaf => {
                verts.push(Vert::Leaf);
                verts.len() - 1
            }
            Vert::Node { label, children } => {
                let kids: Vec<usize> = children.iter().map(|&c| self.copy_into(c, verts)).collect();
                verts.push(Vert::Node {
                    label: *label,
                    children: kids,
                });
                verts.len() - 1
            }
        }
    }

    /// Checks arity and label distinctness.
    pub fn validate(&self) -> Result<()> {
        let mut labels = Vec::new();
        for id in 0..self.verts.len() {
            if let Vert::Node { label, children } = &self.verts[id] {
                if children.len() != self.arity {
                    return Err(Error::Parse(format!(
                        "node {label} has {} children, expected {}",
                        children.len(),
                        self.arity
                    )));
                }
                labels.push(*label);
            }
        }
        labels.sort_unstable();
        let len = labels.len();
        labels.dedup();
        if labels.len() != len {
            return Err(Error::Parse("duplicate node label".into()));
        }
        Ok(())
    }

    fn fmt_vertex(&self, id: usize, out: &mut String) {
        match &self.verts[id] {
            Vert::Leaf => out.push('.'),
            Vert::Node { label, children } => {
                out.push('(');
                out.push_str(&label.to_string());
                for &c in children {
                    out.push(' ');
                    self.fmt_vertex(c, out);
                }
                out.push(')');
            }
        }
    }

    /// Parses the parenthesized format, e.g. `(1 (2 . .) .)`.
    pub fn parse(text: &str) -> Result<PlaneTree> {
        let tokens = tokenize(text)?;
        let mut pos = 0;
        let mut verts = Vec::new();
        let root = parse_vertex(&tokens, &mut pos, &mut verts)?;
        if pos != tokens.len() {
            return Err(Error::Parse("trailing input after tree".into()));
        }
        let arity = verts
            .iter()
            .find_map(|v| match v {
                Vert::Node { children, .. } => Some(children.len()),
                Vert::Leaf => None,
            })
            .unwrap_or(1);
        let tree = PlaneTree { verts, root, arity };
        tree.validate()?;
        Ok(tree)
    }
}

impl fmt::Display for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.fmt_vertex(self.root, &mut s);
        write!(f, "{s}")
    }
}

impl fmt::Debug for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, PartialEq)]
enum Token {
    Open,
    Close,
    Dot,
    Label(u32),
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            '(' => {
                chars.next();
                out.push(Token::Open);
            }
            ')' => {
                chars.next();
                out.push(Token::Close);
            }
            '.' => {
                chars.next();
                out.push(Token::Dot);
            }
            c if c.is_whitespace() => {
                chars.next();
            }
            c if c.is_ascii_digit() => {
                let mut num = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        num.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                out.push(Token::Label(
                    num.parse().map_err(|_| Error::Parse("bad label".into()))?,
                ));
            }
            other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
        }
    }
    Ok(out)
}

fn parse_vertex(tokens: &[Token], pos: &mut usize, verts: &mut Vec<Vert>) -> Result<usize> {
    match tokens.get(*pos) {
        Some(Token::Dot) => {
            *pos += 1;
            verts.push(Vert::Leaf);
            Ok(verts.len() - 1)
        }
        Some(Token::Open) => {
            *pos += 1;
            let label = match tokens.get(*pos) {
                Some(Token::Label(l)) => *l,
                _ => return Err(Error::Parse("expected node label".into())),
            };
            *pos += 1;
            let mut children = Vec::new();
            while tokens.get(*pos) != Some(&Token::Close) {
                if *pos >= tokens.len() {
                    return Err(Error::Parse("unclosed parenthesis".into()));
                }
                children.push(parse_vertex(tokens, pos, verts)?);
            }
            *pos += 1;
            verts.push(Vert::Node { label, children });
            Ok(verts.len() - 1)
        }
        _ => Err(Error::Parse("expected '(' or '.'".into())),
    }
}

#[derive(Clone)]
enum Sub {
    Leaf,
    Node(u32, Vec<Sub>),
}

fn sub_into(sub: &Sub, verts: &mut Vec<Vert>) -> usize {
    match sub {
        Sub::Leaf => {
            verts.push(Vert::Leaf);
            verts.len() - 1
        }
        Sub::Node(label, kids) => {
            let children: Vec<usize> = kids.iter().map(|k| sub_into(k, verts)).collect();
            verts.push(Vert::Node {
                label: *label,
                children,
            });
            verts.len() - 1
        }
    }
}

fn gen_subtrees(arity: usize, labels: &[u32]) -> Vec<Sub> {
    if labels.is_empty() {
        return vec![Sub::Leaf];
    }
    let mut out = Vec::new();
    for (ri, &root) in labels.iter().enumerate() {
        let rest: Vec<u32> = labels
            .iter()
            .enumerate()
            .filter_map(|(i, &l)| (i != ri).then_some(l))
            .collect();
        let mut assign = vec![0usize; rest.len()];
        loop {
            let mut slots: Vec<Vec<u32>> = vec![Vec::new(); arity];
            for (i, &lab) in rest.iter().enumerate() {
                slots[assign[i]].push(lab);
            }
            let options: Vec<Vec<Sub>> = slots.iter().map(|s| gen_subtrees(arity, s)).collect();
            let mut idx = vec![0usize; arity];
            loop {
                let children: Vec<Sub> = (0..arity).map(|k| options[k][idx[k]].clone()).collect();
                out.push(Sub::Node(root, children));
                // odometer over the cartesian product, rightmost fastest
                let mut k = arity;
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    idx[k] += 1;
                    if idx[k] < options[k].len() {
                        break;
                    }
                    idx[k] = 0;
                    if k == 0 {
                        k = usize::MAX;
                        break;
                    }
                }
                if k == usize::MAX {
                    break;
                }
            }
            // advance the slot assignment, rightmost fastest
            let mut i = rest.len();
            loop {
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
                i -= 1;
                assign[i] += 1;
                if assign[i] < arity {
                    break;
                }
                assign[i] = 0;
                if i == 0 {
                    i = usize::MAX;
                    break;
                }
            }
            if i == usize::MAX {
                break;
            }
        }
    }
    out
}

/// Visits every `(arity)`-ary plane tree with the given node labels exactly
/// once, in a deterministic order.
pub fn for_each_tree<F: FnMut(PlaneTree)>(arity: usize, labels: &[u32], mut f: F) {
    assert!(arity >= 1, "arity must be at least one");
    for sub in gen_subtrees(arity, labels) {
        let mut verts = Vec::new();
        let root = sub_into(&sub, &mut verts);
        f(PlaneTree { verts, root, arity });
    }
}

pub fn enumerate_trees(arity: usize, labels: &[u32]) -> Vec<PlaneTree> {
    let mut out = Vec::new();
    for_each_tree(arity, labels, |t| out.push(t));
    out
}

/// `((m+1)n)! / (mn+1)!` with `arity = m + 1`.
pub fn count_trees(arity: usize, n: usize) -> BigInt {
    let m = arity - 1;
    let mut out = BigInt::from(1);
    for k in (m * n + 2)..=(arity * n) {
        out *= BigInt::from(k as u64);
    }
    out
}

/// A uniformly-structured random tree (each root choice and slot assignment
/// drawn independently; not uniform over trees, used for fixtures only).
pub fn random_tree<R: Rng>(arity: usize, labels: &[u32], rng: &mut R) -> PlaneTree {
    fn build<R: Rng>(arity: usize, labels: &[u32], rng: &mut R) -> Sub {
        if labels.is_empty() {
            return Sub::Leaf;
        }
        let ri = rng.gen_range(0..labels.len());
        let root = labels[ri];
        let mut slots: Vec<Vec<u32>> = vec![Vec::new(); arity];
        for (i, &l) in labels.iter().enumerate() {
            if i != ri {
                slots[rng.gen_range(0..arity)].push(l);
            }
        }
        Sub::Node(root, slots.iter().map(|s| build(arity, s, rng)).collect())
    }
    let sub = build(arity, labels, rng);
    let mut verts = Vec::new();
    let root = sub_into(&sub, &mut verts);
    if labels.is_empty() {
        return PlaneTree::empty(arity);
    }
    PlaneTree { verts, root, arity }
}

/// A maximal-or-not sequence of nodes along consecutive cadet edges,
/// identified by labels.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CadetChain(pub Vec<u32>);

/// A tree plus a partition of its nodes into cadet chains.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoxedTree {
    pub tree: PlaneTree,
    pub boxes: Vec<CadetChain>,
}

impl BoxedTree {
    pub fn box_count(&self) -> usize {
        self.boxes.len()
    }
}

/// The cadet edges `(u, v)` of a tree as vertex ids, ordered by the label of
/// the upper endpoint.
pub fn cadet_edges(tree: &PlaneTree) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = tree
        .node_ids()
        .into_iter()
        .filter_map(|u| tree.cadet(u).map(|v| (u, v)))
        .collect();
    edges.sort_by_key(|&(u, _)| tree.label(u));
    edges
}

/// Splits the nodes into chains according to a subset of cadet edges
/// (bit `k` of `mask` merges edge `k`).
pub fn chains_for_mask(tree: &PlaneTree, edges: &[(usize, usize)], mask: u64) -> Vec<Vec<usize>> {
    let mut merged_next: Vec<Option<usize>> = vec![None; tree.vert_count()];
    let mut has_merged_prev = vec![false; tree.vert_count()];
    for (k, &(u, v)) in edges.iter().enumerate() {
        if mask & (1 << k) != 0 {
            merged_next[u] = Some(v);
            has_merged_prev[v] = true;
        }
    }
    let mut chains = Vec::new();
    for id in tree.node_ids() {
        if has_merged_prev[id] {
            continue;
        }
        let mut chain = vec![id];
        let mut cur = id;
        while let Some(next) = merged_next[cur] {
            chain.push(next);
            cur = next;
        }
        chains.push(chain);
    }
    chains.sort_by_key(|c| tree.label(c[0]));
    chains
}

fn chain_sums(tree: &PlaneTree, chain: &[usize]) -> Vec<usize> {
    chain.iter().map(|&id| tree.ls(id)).collect()
}

/// Whether a cadet chain may form a box: no pair `(i, j)` has its left-sibling
/// sum inside the oriented offset set of the pair of endpoints.
pub fn chain_is_box(spec: &DeformationSpec, tree: &PlaneTree, chain: &[usize]) -> bool {
    let ls = chain_sums(tree, chain);
    for i in 0..chain.len() {
        let mut sum = 0i64;
        for j in (i + 1)..chain.len() {
            sum += ls[j] as i64;
            let iu = tree.label(chain[i]).unwrap() as usize - 1;
            let iv = tree.label(chain[j]).unwrap() as usize - 1;
            if spec.in_s_minus(iu, iv, sum) {
                return false;
            }
        }
    }
    true
}

/// Checks a label chain against the pairwise box condition.
/// Single-node chains are always valid.
pub fn is_valid_chain(
    spec: &DeformationSpec,
    tree: &PlaneTree,
    chain: &CadetChain,
) -> Result<bool> {
    if !tree.is_cadet_sequence(&chain.0)? {
        return Err(Error::PreconditionViolated("not a cadet sequence".into()));
    }
    let ids: Vec<usize> = chain
        .0
        .iter()
        .map(|&l| tree.node_by_label(l).unwrap())
        .collect();
    Ok(chain_is_box(spec, tree, &ids))
}

/// A chain is admissible when consecutive nodes with left-sibling count zero
/// increase.
pub fn chain_is_admissible(tree: &PlaneTree, chain: &[usize]) -> bool {
    chain
        .windows(2)
        .all(|w| tree.ls(w[1]) != 0 || tree.label(w[0]) < tree.label(w[1]))
}

/// Number of pairs `(i, j)` of a chain whose left-sibling sum lies in the
/// oriented offset set of the endpoints.
pub fn chain_energy(spec: &DeformationSpec, tree: &PlaneTree, chain: &[usize]) -> usize {
    let ls = chain_sums(tree, chain);
    let mut energy = 0;
    for i in 0..chain.len() {
        let mut sum = 0i64;
        for j in (i + 1)..chain.len() {
            sum += ls[j] as i64;
            let iu = tree.label(chain[i]).unwrap() as usize - 1;
            let iv = tree.label(chain[j]).unwrap() as usize - 1;
            if spec.in_s_minus(iu, iv, sum) {
                energy += 1;
            }
        }
    }
    energy
}

/// All partitions of the nodes into valid boxes, including the all-singleton
/// partition when valid.
pub fn enumerate_boxed_trees(spec: &DeformationSpec, tree: &PlaneTree) -> Vec<BoxedTree> {
    let edges = cadet_edges(tree);
    let mut out = Vec::new();
    for mask in 0..(1u64 << edges.len()) {
        let chains = chains_for_mask(tree, &edges, mask);
        if chains.iter().all(|c| chain_is_box(spec, tree, c)) {
            let boxes = chains
                .iter()
                .map(|c| CadetChain(c.iter().map(|&id| tree.label(id).unwrap()).collect()))
                .collect();
            out.push(BoxedTree {
                tree: tree.clone(),
                boxes,
            });
        }
    }
    out
}

/// Total energy of a boxed tree.
pub fn boxed_energy(spec: &DeformationSpec, boxed: &BoxedTree) -> usize {
    boxed
        .boxes
        .iter()
        .map(|b| {
            let ids: Vec<usize> =
                b.0.iter()
                    .map(|&l| boxed.tree.node_by_label(l).unwrap())
                    .collect();
            chain_energy(spec, &boxed.tree, &ids)
        })
        .sum()
}

/// Whether all boxes satisfy the admissibility rule.
pub fn is_admissible(boxed: &BoxedTree) -> bool {
    boxed.boxes.iter().all(|b| {
        let ids: Vec<usize> =
            b.0.iter()
                .map(|&l| boxed.tree.node_by_label(l).unwrap())
                .collect();
        chain_is_admissible(&boxed.tree, &ids)
    })
}

/// Membership of a tree in the family attached to the arrangement: every
/// cadet edge `(u, v)` must have `ls(v)` inside the oriented offset set.
pub fn tree_in_family(spec: &DeformationSpec, tree: &PlaneTree) -> bool {
    for u in tree.node_ids() {
        if let Some(v) = tree.cadet(u) {
            let iu = tree.label(u).unwrap() as usize - 1;
            let iv = tree.label(v).unwrap() as usize - 1;
            if !spec.in_s_minus(iu, iv, tree.ls(v) as i64) {
                return false;
            }
        }
    }
    true
}

/// Enumerates the family members among all trees on the spec's vertices.
pub fn enumerate_family(spec: &DeformationSpec) -> Vec<PlaneTree> {
    let arity = spec.max_offset() as usize + 1;
    let labels: Vec<u32> = (1..=spec.nv() as u32).collect();
    let mut out = Vec::new();
    for_each_tree(arity, &labels, |t| {
        if tree_in_family(spec, &t) {
            out.push(t);
        }
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_trees(2, &[1, 2, 3]).len(), 30);
        assert_eq!(enumerate_trees(3, &[1, 2, 3]).len(), 72);
        assert_eq!(enumerate_trees(1, &[1, 2, 3]).len(), 6);
        assert_eq!(count_trees(2, 3), BigInt::from(30));
        assert_eq!(count_trees(3, 3), BigInt::from(72));
        assert_eq!(count_trees(1, 3), BigInt::from(6));
    }

    #[test]
    fn enumeration_is_duplicate_free() {
        let trees = enumerate_trees(2, &[1, 2, 3]);
        let mut seen: Vec<String> = trees.iter().map(|t| t.to_string()).collect();
        seen.sort();
        let len = seen.len();
        seen.dedup();
        assert_eq!(seen.len(), len);
    }

    #[test]
    fn cadet_and_ls() {
        // node 1 with children (leaf, node 2, leaf): cadet(1) = 2, ls(2) = 1
        let t = PlaneTree::parse("(1 . (2 . . .) .)").unwrap();
        assert_eq!(t.cadet_of_label(1).unwrap(), Some(2));
        assert_eq!(t.ls_of_label(2).unwrap(), 1);
        // all-leaf children have no cadet
        assert_eq!(t.cadet_of_label(2).unwrap(), None);
        assert!(t.is_cadet_sequence(&[1, 2]).unwrap());
        assert!(!t.is_cadet_sequence(&[2, 1]).unwrap());
        assert!(t.cadet_of_label(7).is_err());
    }

    #[test]
    fn cadet_chain_three() {
        let t = PlaneTree::parse("(1 . (2 (3 . . .) . .) .)").unwrap();
        // cadet(1) = 2 (rightmost node child), cadet(2) = 3
        assert!(t.is_cadet_sequence(&[1, 2, 3]).unwrap());
    }

    #[test]
    fn chain_validity_full_interval() {
        // S = [-1..1]: only singleton chains are valid.
        let spec = DeformationSpec::uniform(&[-1, 0, 1], 3);
        for t in enumerate_trees(2, &[1, 2, 3]) {
            for u in t.node_ids() {
                if let Some(v) = t.cadet(u) {
                    let chain = CadetChain(vec![t.label(u).unwrap(), t.label(v).unwrap()]);
                    assert!(!is_valid_chain(&spec, &t, &chain).unwrap());
                }
            }
        }
        // hence exactly one boxed tree per tree
        for t in enumerate_trees(2, &[1, 2, 3]) {
            assert_eq!(enumerate_boxed_trees(&spec, &t).len(), 1);
        }
    }

    #[test]
    fn chain_validity_sparse_set() {
        // S = {-2, 0, 1, 2}: valid chains have size at most 2, and the pairs
        // (v1, v2) require ls(v2) = 1 and v1 < v2.
        let spec = DeformationSpec::uniform(&[-2, 0, 1, 2], 4);
        let labels = [1u32, 2, 3, 4];
        let mut saw_valid_pair = false;
        for t in enumerate_trees(3, &labels) {
            for u in t.node_ids() {
                let mut chain_ids = vec![u];
                let mut cur = u;
                while let Some(v) = t.cadet(cur) {
                    chain_ids.push(v);
                    cur = v;
                }
                for len in 2..=chain_ids.len() {
                    let ids = &chain_ids[..len];
                    let valid = chain_is_box(&spec, &t, ids);
                    if len > 2 {
                        assert!(!valid);
                    } else {
                        let expected = t.ls(ids[1]) == 1 && t.label(ids[0]) < t.label(ids[1]);
                        assert_eq!(valid, expected);
                        saw_valid_pair |= valid;
                    }
                }
            }
        }
        assert!(saw_valid_pair);
    }

    #[test]
    fn chain_validity_interval_characterization() {
        // S = [-l..m]: a chain is valid iff its labels increase and every
        // later node has ls in [l+1..m].
        let m = 2i64;
        for l in 0..=m {
            let s: Vec<i64> = (-l..=m).collect();
            let spec = DeformationSpec::uniform(&s, 4);
            for t in enumerate_trees((m + 1) as usize, &[1, 2, 3, 4]) {
                for u in t.node_ids() {
                    let mut ids = vec![u];
                    let mut cur = u;
                    while let Some(v) = t.cadet(cur) {
                        ids.push(v);
                        cur = v;
                    }
                    for len in 1..=ids.len() {
                        let chain = &ids[..len];
                        let expected = chain.windows(2).all(|w| t.label(w[0]) < t.label(w[1]))
                            && chain[1..]
                                .iter()
                                .all(|&v| (t.ls(v) as i64) > l && (t.ls(v) as i64) <= m);
                        assert_eq!(chain_is_box(&spec, &t, chain), expected);
                    }
                }
            }
        }
    }

    #[test]
    fn boxed_tree_examples() {
        // no cadet edge: exactly one boxed tree
        let spec = DeformationSpec::uniform(&[0, 1], 2);
        let t = PlaneTree::parse("(1 (2 . .) .)").unwrap();
        assert!(t.cadet(t.root()).is_some());
        let t_no_cadet = PlaneTree::parse("(1 . .)").unwrap();
        assert_eq!(enumerate_boxed_trees(&spec, &t_no_cadet).len(), 1);

        // for S = {0} neither orientation of a braid chain can merge: the sum
        // 0 lies in the oriented set for both label orders
        let spec = DeformationSpec::uniform(&[0], 2);
        for text in ["(1 (2 .))", "(2 (1 .))"] {
            let chain = PlaneTree::parse(text).unwrap();
            assert_eq!(enumerate_boxed_trees(&spec, &chain).len(), 1);
        }

        // with no offsets at all, an increasing chain can merge
        let spec = DeformationSpec::uniform(&[], 2);
        let chain = PlaneTree::parse("(1 (2 .))").unwrap();
        assert_eq!(enumerate_boxed_trees(&spec, &chain).len(), 2);
        let chain = PlaneTree::parse("(2 (1 .))").unwrap();
        assert_eq!(enumerate_boxed_trees(&spec, &chain).len(), 1);
    }

    #[test]
    fn family_membership() {
        // Shi: right node children must be smaller than their parent.
        let shi = DeformationSpec::uniform(&[0, 1], 2);
        assert!(tree_in_family(
            &shi,
            &PlaneTree::parse("(2 . (1 . .))").unwrap()
        ));
        assert!(!tree_in_family(
            &shi,
            &PlaneTree::parse("(1 . (2 . .))").unwrap()
        ));
        assert!(tree_in_family(
            &shi,
            &PlaneTree::parse("(1 (2 . .) .)").unwrap()
        ));

        // Linial: the cadet must always be smaller than its parent.
        let linial = DeformationSpec::uniform(&[1], 2);
        assert!(tree_in_family(
            &linial,
            &PlaneTree::parse("(2 (1 . .) .)").unwrap()
        ));
        assert!(!tree_in_family(
            &linial,
            &PlaneTree::parse("(1 (2 . .) .)").unwrap()
        ));

        // full interval: every tree belongs
        let catalan = DeformationSpec::uniform(&[-1, 0, 1], 3);
        for t in enumerate_trees(2, &[1, 2, 3]) {
            assert!(tree_in_family(&catalan, &t));
        }
    }

    #[test]
    fn shi_family_count_is_cayley() {
        for n in 1..=4usize {
            let spec = DeformationSpec::uniform(&[0, 1], n);
            let count = enumerate_family(&spec).len();
            assert_eq!(count, (n + 1).pow(n as u32 - 1));
        }
    }

    #[test]
    fn family_intersection() {
        // families intersect like their offset sets
        let sets: [&[i64]; 4] = [&[0, 1], &[-1, 1], &[1], &[-1, 0, 1]];
        for &s1 in &sets {
            for &s2 in &sets {
                let inter: Vec<i64> = s1.iter().copied().filter(|v| s2.contains(v)).collect();
                for n in 1..=3usize {
                    let a = DeformationSpec::uniform(s1, n);
                    let b = DeformationSpec::uniform(s2, n);
                    let c = DeformationSpec::uniform(&inter, n);
                    let m = a.max_offset().max(b.max_offset());
                    assert_eq!(c.max_offset(), m, "m must agree for this test");
                    let labels: Vec<u32> = (1..=n as u32).collect();
                    for t in enumerate_trees((m + 1) as usize, &labels) {
                        assert_eq!(
                            tree_in_family(&a, &t) && tree_in_family(&b, &t),
                            tree_in_family(&c, &t)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn energy_examples() {
        // all-singleton partition has zero energy
        let spec = DeformationSpec::uniform(&[0, 1], 2);
        let t = PlaneTree::parse("(1 (2 . .) .)").unwrap();
        let boxed = BoxedTree {
            tree: t.clone(),
            boxes: vec![CadetChain(vec![1]), CadetChain(vec![2])],
        };
        assert_eq!(boxed_energy(&spec, &boxed), 0);
        assert!(is_admissible(&boxed));

        // merging u < v with ls(v) = 0 and 0 in S contributes energy 1
        let merged = BoxedTree {
            tree: t,
            boxes: vec![CadetChain(vec![1, 2])],
        };
        assert_eq!(boxed_energy(&spec, &merged), 1);
        assert!(is_admissible(&merged));
    }

    #[test]
    fn parse_round_trip() {
        for text in ["(1 (2 . .) .)", "(3 . (1 . (2 . .)))", "(1 . . .)", "."] {
            let t = PlaneTree::parse(text).unwrap();
            assert_eq!(t.to_string(), text);
        }
        assert!(PlaneTree::parse("(1 (1 . .) .)").is_err());
        assert!(PlaneTree::parse("(1 . ").is_err());
    }
}
