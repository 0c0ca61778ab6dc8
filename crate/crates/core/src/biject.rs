//! Bijections between labeled plane trees, annotated sketches, regions, and
//! parking functions.
//!
//! Vertices of a tree are ordered by drift (the sum of left-sibling counts
//! along the root path) with ties broken by the contour order that visits a
//! vertex before its subtrees and recurses through children from rightmost to
//! leftmost. Reading the vertices in this order yields the sketch of the
//! tree; the inverse substitutes buds from a single seed. Restricting the
//! sketch inequalities to a subarrangement maps tree families onto regions.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num::BigRational;

use crate::arrangement::{expand_spec, sign_vector, Region, Sign};
use crate::error::{Error, Result};
use crate::sketch::{self, AnnotatedSketch, Letter};
use crate::spec::{DeformationSpec, Dsu};
use crate::tree::{self, PlaneTree, Vert};

/// Drift of every vertex: the sum of child positions along the path from the
/// root.
pub fn drifts(tree: &PlaneTree) -> Vec<usize> {
    let mut out = vec![0usize; tree.vert_count()];
    let mut stack = vec![tree.root()];
    while let Some(v) = stack.pop() {
        for (pos, &c) in tree.children(v).iter().enumerate() {
            out[c] = out[v] + pos;
            stack.push(c);
        }
    }
    out
}

fn contour_indices(tree: &PlaneTree) -> Vec<usize> {
    let mut out = vec![0usize; tree.vert_count()];
    let mut counter = 0usize;
    let mut stack = vec![tree.root()];
    while let Some(v) = stack.pop() {
        out[v] = counter;
        counter += 1;
        // children pushed left to right pop rightmost first
        for &c in tree.children(v) {
            stack.push(c);
        }
    }
    out
}

/// All vertices sorted by drift, ties broken by the contour order.
pub fn prec_order(tree: &PlaneTree) -> Vec<usize> {
    let d = drifts(tree);
    let c = contour_indices(tree);
    let mut ids: Vec<usize> = (0..tree.vert_count()).collect();
    ids.sort_by_key(|&v| (d[v], c[v]));
    ids
}

/// Rank of every vertex in the order above.
pub fn prec_ranks(tree: &PlaneTree) -> Vec<usize> {
    let order = prec_order(tree);
    let mut ranks = vec![0usize; order.len()];
    for (r, &v) in order.iter().enumerate() {
        ranks[v] = r;
    }
    ranks
}

pub fn drift_of_label(tree: &PlaneTree, label: u32) -> Result<usize> {
    let id = tree
        .node_by_label(label)
        .ok_or(Error::UnknownVertex(label as usize))?;
    Ok(drifts(tree)[id])
}

/// Reads the vertices of a tree in drift order (skipping the root) and emits
/// one letter per vertex: a vertex in child slot `s` of node `i` becomes
/// `a_i^s`.
pub fn psi(tree: &PlaneTree) -> Result<AnnotatedSketch> {
    let m = tree.arity() - 1;
    let n = tree.node_count();
    let order = prec_order(tree);
    if n == 0 {
        return AnnotatedSketch::new(m, 0, Vec::new());
    }
    if order[0] != tree.root() {
        return Err(Error::InvalidSketch(
            "root is not minimal in the vertex order".into(),
        ));
    }
    let parents = tree.parents();
    let mut letters = Vec::with_capacity((m + 1) * n);
    for &v in &order[1..] {
        let (p, pos) = parents[v]
            .ok_or_else(|| Error::InvalidSketch("non-root vertex without parent".into()))?;
        let label = tree
            .label(p)
            .ok_or_else(|| Error::InvalidSketch("parent is not a node".into()))?;
        letters.push(Letter {
            label,
            level: pos as u32,
        });
    }
    AnnotatedSketch::new(m, n, letters)
}

#[derive(Clone)]
enum BVert {
    Bud,
    Leaf,
    Node { label: u32, children: Vec<usize> },
}

struct Builder {
    verts: Vec<BVert>,
    root: usize,
}

impl Builder {
    fn children(&self, v: usize) -> &[usize] {
        match &self.verts[v] {
            BVert::Node { children, .. } => children,
            _ => &[],
        }
    }

    /// The bud minimal for (drift, contour), if any.
    fn first_bud(&self) -> Option<usize> {
        let n = self.verts.len();
        let mut drift = vec![0usize; n];
        let mut contour = vec![0usize; n];
        let mut counter = 0usize;
        let mut best: Option<(usize, usize, usize)> = None;
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            contour[v] = counter;
            counter += 1;
            if matches!(self.verts[v], BVert::Bud) {
                let key = (drift[v], contour[v], v);
                if best.is_none_or(|b| (key.0, key.1) < (b.0, b.1)) {
                    best = Some(key);
                }
            }
            for (pos, &c) in self.children(v).iter().enumerate() {
                drift[c] = drift[v] + pos;
            }
            for &c in self.children(v) {
                stack.push(c);
            }
        }
        best.map(|(_, _, v)| v)
    }
}

/// The inverse of [`psi`]: grows a tree by substituting the first bud, one
/// letter at a time. A level-zero letter plants the labeled node with a full
/// row of buds; any other letter closes the bud into a leaf.
pub fn phi(sketch: &AnnotatedSketch) -> Result<PlaneTree> {
    let m = sketch.m();
    let arity = m + 1;
    let mut b = Builder {
        verts: vec![BVert::Bud],
        root: 0,
    };
    for l in sketch.letters() {
        let bud = b
            .first_bud()
            .ok_or_else(|| Error::InvalidSketch("ran out of buds".into()))?;
        if l.level == 0 {
            let mut children = Vec::with_capacity(arity);
            for _ in 0..arity {
                b.verts.push(BVert::Bud);
                children.push(b.verts.len() - 1);
            }
            b.verts[bud] = BVert::Node {
                label: l.label,
                children,
            };
        } else {
            b.verts[bud] = BVert::Leaf;
        }
    }
    let last = b
        .first_bud()
        .ok_or_else(|| Error::InvalidSketch("final bud missing".into()))?;
    b.verts[last] = BVert::Leaf;
    let verts: Vec<Vert> = b
        .verts
        .into_iter()
        .map(|v| match v {
            BVert::Bud => unreachable!("all buds are closed"),
            BVert::Leaf => Vert::Leaf,
            BVert::Node { label, children } => Vert::Node { label, children },
        })
        .collect();
    let tree = PlaneTree::from_parts(verts, b.root, arity);
    tree.validate()?;
    Ok(tree)
}

/// An independent reconstruction from the consecutive-letter rule: the letter
/// following `a_i^s` names the occupant of child slot `s` of node `i` (a node
/// when its level is zero, a leaf otherwise).
pub fn phi_local(sketch: &AnnotatedSketch) -> Result<PlaneTree> {
    let m = sketch.m();
    let letters = sketch.letters();
    if letters.is_empty() {
        return Ok(PlaneTree::empty(m + 1));
    }
    if letters[0].level != 0 {
        return Err(Error::InvalidSketch(
            "word must open with a level-zero letter".into(),
        ));
    }
    let mut slots: HashMap<(u32, u32), Option<u32>> = HashMap::new();
    for (p, l) in letters.iter().enumerate() {
        let occupant = match letters.get(p + 1) {
            Some(next) if next.level == 0 => Some(next.label),
            _ => None,
        };
        slots.insert((l.label, l.level), occupant);
    }
    fn build(
        label: u32,
        m: usize,
        slots: &HashMap<(u32, u32), Option<u32>>,
        verts: &mut Vec<Vert>,
        depth: usize,
    ) -> Result<usize> {
        if depth > slots.len() {
            return Err(Error::InvalidSketch("cyclic slot structure".into()));
        }
        let mut children = Vec::with_capacity(m + 1);
        for s in 0..=m as u32 {
            let occ = slots
                .get(&(label, s))
                .ok_or_else(|| Error::InvalidSketch(format!("missing letter a{label}^{s}")))?;
            match occ {
                Some(child) => children.push(build(*child, m, slots, verts, depth + 1)?),
                None => {
                    verts.push(Vert::Leaf);
                    children.push(verts.len() - 1);
                }
            }
        }
        verts.push(Vert::Node { label, children });
        Ok(verts.len() - 1)
    }
    let mut verts = Vec::new();
    let root = build(letters[0].label, m, &slots, &mut verts, 0)?;
    let tree = PlaneTree::from_parts(verts, root, m + 1);
    tree.validate()?;
    Ok(tree)
}

/// The region carried by a tree: for each hyperplane of the arrangement, the
/// side is read off by comparing the node of the smaller coordinate with a
/// child of the other node in the vertex order.
pub fn region_of_tree(spec: &DeformationSpec, tree: &PlaneTree) -> Result<Region> {
    let n = spec.nv();
    let expected: Vec<u32> = (1..=n as u32).collect();
    if tree.labels() != expected || tree.arity() != spec.max_offset() as usize + 1 {
        return Err(Error::LabelMismatch);
    }
    let ranks = prec_ranks(tree);
    let node_id: Vec<usize> = (1..=n as u32)
        .map(|l| tree.node_by_label(l).unwrap())
        .collect();
    let mut signs = BTreeMap::new();
    for h in expand_spec(spec) {
        let sign = if h.s >= 0 {
            let child = tree.children(node_id[h.v])[h.s as usize];
            if ranks[node_id[h.u]] < ranks[child] {
                Sign::Minus
            } else {
                Sign::Plus
            }
        } else {
            let child = tree.children(node_id[h.u])[(-h.s) as usize];
            if ranks[node_id[h.v]] < ranks[child] {
                Sign::Plus
            } else {
                Sign::Minus
            }
        };
        signs.insert(h, sign);
    }
    Ok(Region { signs })
}

/// Sketch-level local maximality through the tree: no available move
/// increases the sketch iff its tree lies in the family.
pub fn is_locally_maximal_tree(spec: &DeformationSpec, sketch: &AnnotatedSketch) -> Result<bool> {
    Ok(tree::tree_in_family(spec, &phi(sketch)?))
}

fn ensure_shi_tree(tree: &PlaneTree) -> Result<()> {
    let n = tree.node_count();
    let shi = DeformationSpec::uniform(&[0, 1], n);
    if tree.arity() != 2 || !tree::tree_in_family(&shi, tree) {
        return Err(Error::NotShiTree);
    }
    Ok(())
}

/// The parking function labeling a Shi-family tree through the vertex order:
/// `p_i` counts smaller-labeled nodes before `i` plus larger-labeled nodes
/// whose right child does not come after `i`.
pub fn pak_stanley(tree: &PlaneTree) -> Result<Vec<u32>> {
    ensure_shi_tree(tree)?;
    let n = tree.node_count();
    let ranks = prec_ranks(tree);
    let node_id: Vec<usize> = (1..=n as u32)
        .map(|l| tree.node_by_label(l).unwrap())
        .collect();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut p = 0u32;
        for k in 0..i {
            if ranks[node_id[k]] < ranks[node_id[i]] {
                p += 1;
            }
        }
        for k in (i + 1)..n {
            let rc = tree.children(node_id[k])[1];
            if ranks[rc] <= ranks[node_id[i]] {
                p += 1;
            }
        }
        out.push(p);
    }
    Ok(out)
}

/// The same labeling computed from any interior point of the region:
/// `p_i = #{k < i | x_k < x_i} + #{k > i | x_k + 1 < x_i}`.
pub fn pak_stanley_from_point(point: &[BigRational]) -> Vec<u32> {
    let n = point.len();
    let one = BigRational::from_integer(1.into());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut p = 0u32;
        for k in 0..i {
            if point[k] < point[i] {
                p += 1;
            }
        }
        for k in (i + 1)..n {
            if &point[k] + &one < point[i] {
                p += 1;
            }
        }
        out.push(p);
    }
    out
}

/// The rightmost-path labeling of a Shi-family tree: follow right children
/// from node `i` down to a leaf and count the leaves beyond it in the vertex
/// order.
pub fn athanasiadis_linusson(tree: &PlaneTree) -> Result<Vec<u32>> {
    ensure_shi_tree(tree)?;
    let n = tree.node_count();
    let ranks = prec_ranks(tree);
    let leaf_ranks: Vec<usize> = (0..tree.vert_count())
        .filter(|&v| !tree.is_node(v))
        .map(|v| ranks[v])
        .collect();
    let mut out = Vec::with_capacity(n);
    for i in 1..=n as u32 {
        let mut v = tree.node_by_label(i).unwrap();
        while tree.is_node(v) {
            v = tree.children(v)[1];
        }
        let p = leaf_ranks.iter().filter(|&&r| r > ranks[v]).count();
        out.push(p as u32);
    }
    Ok(out)
}

/// The parking condition: at least `k` entries below `k` for every `k`.
pub fn is_parking_function(p: &[u32]) -> bool {
    let n = p.len();
    (1..=n).all(|k| p.iter().filter(|&&v| (v as usize) < k).count() >= k)
}

fn ensure_linial_tree(tree: &PlaneTree) -> Result<()> {
    if tree.arity() != 2 {
        return Err(Error::NotLinialTree);
    }
    for u in tree.node_ids() {
        if let Some(v) = tree.cadet(u) {
            if tree.label(u) < tree.label(v) {
                return Err(Error::NotLinialTree);
            }
        }
    }
    Ok(())
}

/// Recursive bijection from the Linial tree family onto binary trees whose
/// left children are smaller and right children larger than their parents.
///
/// The cadet spine of the root is split by whether the sibling subtree image
/// must hang to the right (its root exceeds the spine node, or it is a leaf
/// sitting on the left) or to the left; the two groups become the left and
/// right chains of the image.
pub fn theta(tree: &PlaneTree) -> Result<PlaneTree> {
    ensure_linial_tree(tree)?;
    let mut cache: HashMap<String, PlaneTree> = HashMap::new();
    Ok(theta_rec(tree, &mut cache))
}

fn theta_rec(tree: &PlaneTree, cache: &mut HashMap<String, PlaneTree>) -> PlaneTree {
    if tree.node_count() == 0 {
        return PlaneTree::empty(2);
    }
    let key = tree.to_string();
    if let Some(hit) = cache.get(&key) {
        return hit.clone();
    }
    // spine of cadets from the root
    let mut spine = vec![tree.root()];
    while let Some(c) = tree.cadet(*spine.last().unwrap()) {
        spine.push(c);
    }
    let k = spine.len() - 1;
    // sibling subtree of each spine edge, with its side
    let mut subs: Vec<(PlaneTree, bool)> = Vec::with_capacity(k); // (theta image source, is_left)
    for i in 0..k {
        let children = tree.children(spine[i]);
        let side = if children[1] == spine[i + 1] { 0 } else { 1 };
        subs.push((tree.subtree(children[side]), side == 0));
    }
    let mut in_i = vec![false; k];
    let mut images: Vec<PlaneTree> = Vec::with_capacity(k);
    for (idx, (sub, is_left)) in subs.iter().enumerate() {
        let image = theta_rec(sub, cache);
        let spine_label = tree.label(spine[idx]).unwrap();
        let root_label = image.label(image.root());
        in_i[idx] = match root_label {
            None => *is_left,
            Some(l) => l > spine_label,
        };
        images.push(image);
    }
    let leaf = PlaneTree::empty(2);
    // left chain: members of I in increasing spine position, ending at the
    // lowest spine node; each carries its image on the right
    let mut lefts: Vec<usize> = (0..k).filter(|&i| in_i[i]).collect();
    lefts.push(k);
    // right chain grows upward from the lowest spine node through the
    // remaining positions; each carries its image on the left
    let rights: Vec<usize> = (0..=k).rev().filter(|&i| i == k || !in_i[i]).collect();

    let mut current = leaf.clone();
    for &idx in rights.iter().rev() {
        let left_sub = if idx == k {
            leaf.clone()
        } else {
            images[idx].clone()
        };
        current = join(tree.label(spine[idx]).unwrap(), &left_sub, &current);
    }
    // the left chain hangs above the junction node spine[k]
    for &idx in lefts.iter().rev().skip(1) {
        current = join(tree.label(spine[idx]).unwrap(), &current, &images[idx]);
    }
    cache.insert(key, current.clone());
    current
}

fn join(label: u32, left: &PlaneTree, right: &PlaneTree) -> PlaneTree {
    let text = format!("({label} {left} {right})");
    PlaneTree::parse(&text).expect("well-formed join")
}

/// Condition for the image family of [`theta`]: left children smaller, right
/// children larger than their parent.
pub fn is_local_search_tree(tree: &PlaneTree) -> bool {
    if tree.arity() != 2 {
        return false;
    }
    for u in tree.node_ids() {
        let lu = tree.label(u).unwrap();
        let ch = tree.children(u);
        if let Some(lv) = tree.label(ch[0]) {
            if lv > lu {
                return false;
            }
        }
        if let Some(lv) = tree.label(ch[1]) {
            if lv < lu {
                return false;
            }
        }
    }
    true
}

/// Statistics of the move classes of all sketches of an arrangement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub sketches: usize,
    pub classes: usize,
    pub regions: usize,
    pub locally_maximal: usize,
    pub family_size: usize,
    pub classes_match_regions: bool,
    pub maxima_locally_maximal: bool,
    pub locally_maximal_equals_maximal: bool,
    pub locally_maximal_matches_family: bool,
}

/// Explores the move classes of every sketch: classes must biject with
/// regions, each class maximum must be locally maximal, and for transitive
/// arrangements the locally maximal sketches are exactly the class maxima.
pub fn maximality_audit(spec: &DeformationSpec) -> Result<AuditReport> {
    let n = spec.nv();
    let m = spec.max_offset() as usize;
    let cap = if std::env::var("BRAIDDEFORM_GUARD").is_ok() {
        crate::enumeration_guard()
    } else {
        1_000_000
    };
    let total = tree::count_trees(m + 1, n);
    if total > num::BigInt::from(cap) {
        return Err(Error::TooLarge {
            size: u128::MAX,
            guard: cap,
        });
    }
    let sketches = sketch::enumerate_sketches(m, n);
    let index: BTreeMap<Vec<Letter>, usize> = sketches
        .iter()
        .enumerate()
        .map(|(i, w)| (w.letters().to_vec(), i))
        .collect();
    let moves = sketch::spec_moves(spec);
    let mut dsu = Dsu::new(sketches.len());
    for (i, w) in sketches.iter().enumerate() {
        for mv in &moves {
            if let Ok(next) = sketch::apply_move(w, mv) {
                dsu.union(i, index[&next.letters().to_vec()]);
            }
        }
    }
    let hyperplanes = expand_spec(spec);
    let mut class_members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..sketches.len() {
        class_members.entry(dsu.find(i)).or_default().push(i);
    }
    let region_of = |i: usize| -> Region {
        let x = sketch::representative_point(&sketches[i]).expect("valid sketch");
        sign_vector(spec, &x)
            .expect("representative avoids hyperplanes")
            .restrict(&hyperplanes)
            .expect("full sign data")
    };
    let mut regions: BTreeSet<Region> = BTreeSet::new();
    let mut classes_match_regions = true;
    let mut maxima: BTreeSet<usize> = BTreeSet::new();
    for members in class_members.values() {
        let r0 = region_of(members[0]);
        for &i in &members[1..] {
            if region_of(i) != r0 {
                classes_match_regions = false;
            }
        }
        if !regions.insert(r0) {
            classes_match_regions = false;
        }
        let max = *members
            .iter()
            .max_by(|&&a, &&b| sketch::precedence_cmp(&sketches[a], &sketches[b]))
            .unwrap();
        maxima.insert(max);
    }
    let locally_maximal: BTreeSet<usize> = (0..sketches.len())
        .filter(|&i| sketch::is_locally_maximal(spec, &sketches[i]))
        .collect();
    let family_size = tree::enumerate_family(spec).len();
    Ok(AuditReport {
        sketches: sketches.len(),
        classes: class_members.len(),
        regions: regions.len(),
        locally_maximal: locally_maximal.len(),
        family_size,
        classes_match_regions,
        maxima_locally_maximal: maxima.iter().all(|i| locally_maximal.contains(i)),
        locally_maximal_equals_maximal: maxima == locally_maximal,
        locally_maximal_matches_family: locally_maximal.len() == family_size,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyrat::rat;

    #[test]
    fn prec_order_examples() {
        // a single node: root, left leaf, right leaf
        let t = PlaneTree::parse("(1 . .)").unwrap();
        assert_eq!(psi(&t).unwrap().to_string(), "a1^0 a1^1");

        // root 1 with node child 2 in first position
        let t = PlaneTree::parse("(1 (2 . .) .)").unwrap();
        assert_eq!(psi(&t).unwrap().to_string(), "a1^0 a2^0 a1^1 a2^1");

        // the root is always minimal
        for t in tree::enumerate_trees(2, &[1, 2, 3]) {
            assert_eq!(prec_order(&t)[0], t.root());
            assert_eq!(drifts(&t)[t.root()], 0);
        }
    }

    #[test]
    fn phi_psi_round_trip() {
        for t in tree::enumerate_trees(2, &[1, 2, 3]) {
            let w = psi(&t).unwrap();
            assert_eq!(phi(&w).unwrap(), t);
            assert_eq!(phi_local(&w).unwrap(), t);
        }
        for w in sketch::enumerate_sketches(1, 3) {
            assert_eq!(psi(&phi(&w).unwrap()).unwrap(), w);
        }
    }

    #[test]
    fn phi_of_reference_word() {
        let w =
            AnnotatedSketch::parse("a3^0 a1^0 a3^1 a5^0 a4^0 a1^1 a5^1 a4^1 a2^0 a2^1").unwrap();
        let t = phi(&w).unwrap();
        assert_eq!(t.label(t.root()), Some(3));
        // the letter after a3^0 is a1^0, so the first child of node 3 is node 1
        assert_eq!(t.label(t.children(t.root())[0]), Some(1));
        assert_eq!(phi_local(&w).unwrap(), t);
        assert_eq!(psi(&t).unwrap(), w);
    }

    #[test]
    fn region_of_tree_matches_sketch_route_for_full_interval() {
        let spec = DeformationSpec::uniform(&[-1, 0, 1], 3);
        let hyperplanes = expand_spec(&spec);
        for t in tree::enumerate_trees(2, &[1, 2, 3]) {
            let via_tree = region_of_tree(&spec, &t).unwrap();
            let w = psi(&t).unwrap();
            let x = sketch::representative_point(&w).unwrap();
            let via_point = sign_vector(&spec, &x)
                .unwrap()
                .restrict(&hyperplanes)
                .unwrap();
            assert_eq!(via_tree, via_point);
        }
    }

    #[test]
    fn shi_region_description() {
        // for the Shi offsets the zero hyperplane side compares the two nodes
        let spec = DeformationSpec::uniform(&[0, 1], 3);
        for t in tree::enumerate_trees(2, &[1, 2, 3]) {
            if !tree::tree_in_family(&spec, &t) {
                continue;
            }
            let region = region_of_tree(&spec, &t).unwrap();
            let ranks = prec_ranks(&t);
            for (h, sign) in &region.signs {
                let ni = t.node_by_label(h.u as u32 + 1).unwrap();
                let nj = t.node_by_label(h.v as u32 + 1).unwrap();
                if h.s == 0 {
                    let expected = if ranks[ni] < ranks[nj] {
                        Sign::Minus
                    } else {
                        Sign::Plus
                    };
                    assert_eq!(*sign, expected);
                }
            }
        }
    }

    #[test]
    fn linial_drift_description() {
        // the unit hyperplane side is determined by drifts with a contour
        // tie-break one step up
        let spec = DeformationSpec::uniform(&[1], 3);
        for t in tree::enumerate_trees(2, &[1, 2, 3]) {
            let region = region_of_tree(&spec, &t).unwrap();
            let d = drifts(&t);
            let c = contour_indices(&t);
            for (h, sign) in &region.signs {
                let ni = t.node_by_label(h.u as u32 + 1).unwrap();
                let nj = t.node_by_label(h.v as u32 + 1).unwrap();
                let minus = d[ni] <= d[nj] || (d[ni] == d[nj] + 1 && c[ni] < c[nj]);
                assert_eq!(*sign, if minus { Sign::Minus } else { Sign::Plus });
            }
        }
    }

    #[test]
    fn region_of_tree_rejects_foreign_labels() {
        let spec = DeformationSpec::uniform(&[0, 1], 2);
        // wrong label set
        let t = PlaneTree::parse("(1 (3 . .) .)").unwrap();
        assert_eq!(region_of_tree(&spec, &t), Err(Error::LabelMismatch));
        // wrong arity
        let t = PlaneTree::parse("(1 (2 . . .) . .)").unwrap();
        assert_eq!(region_of_tree(&spec, &t), Err(Error::LabelMismatch));
    }

    #[test]
    fn pak_stanley_small() {
        let t = PlaneTree::parse("(1 . .)").unwrap();
        assert_eq!(pak_stanley(&t).unwrap(), vec![0]);

        let mut seen = BTreeSet::new();
        let spec = DeformationSpec::uniform(&[0, 1], 2);
        for t in tree::enumerate_trees(2, &[1, 2]) {
            if tree::tree_in_family(&spec, &t) {
                seen.insert(pak_stanley(&t).unwrap());
            }
        }
        let expected: BTreeSet<Vec<u32>> =
            [vec![0, 0], vec![0, 1], vec![1, 0]].into_iter().collect();
        assert_eq!(seen, expected);

        // rejected outside the family
        let outside = PlaneTree::parse("(1 . (2 . .))").unwrap();
        assert_eq!(pak_stanley(&outside), Err(Error::NotShiTree));
    }

    #[test]
    fn pak_stanley_point_agrees() {
        let spec = DeformationSpec::uniform(&[0, 1], 3);
        for t in tree::enumerate_trees(2, &[1, 2, 3]) {
            if !tree::tree_in_family(&spec, &t) {
                continue;
            }
            let from_tree = pak_stanley(&t).unwrap();
            let x = sketch::representative_point(&psi(&t).unwrap()).unwrap();
            assert_eq!(from_tree, pak_stanley_from_point(&x));
        }
    }

    #[test]
    fn athanasiadis_linusson_small() {
        let mut seen = BTreeSet::new();
        let spec = DeformationSpec::uniform(&[0, 1], 2);
        for t in tree::enumerate_trees(2, &[1, 2]) {
            if tree::tree_in_family(&spec, &t) {
                seen.insert(athanasiadis_linusson(&t).unwrap());
            }
        }
        let expected: BTreeSet<Vec<u32>> =
            [vec![0, 0], vec![0, 1], vec![1, 0]].into_iter().collect();
        assert_eq!(seen, expected);
    }

    #[test]
    fn theta_small() {
        let t = PlaneTree::parse("(1 . .)").unwrap();
        assert_eq!(theta(&t).unwrap(), t);

        // the two Linial trees of size two map onto the two search trees
        let a = PlaneTree::parse("(2 (1 . .) .)").unwrap();
        let b = PlaneTree::parse("(2 . (1 . .))").unwrap();
        assert_eq!(theta(&a).unwrap().to_string(), "(1 . (2 . .))");
        assert_eq!(theta(&b).unwrap().to_string(), "(2 (1 . .) .)");

        assert_eq!(
            theta(&PlaneTree::parse("(1 (2 . .) .)").unwrap()),
            Err(Error::NotLinialTree)
        );
    }

    #[test]
    fn theta_bijects_for_three() {
        let spec = DeformationSpec::uniform(&[1], 3);
        let mut images = BTreeSet::new();
        let mut domain = 0;
        for t in tree::enumerate_trees(2, &[1, 2, 3]) {
            if !tree::tree_in_family(&spec, &t) {
                continue;
            }
            domain += 1;
            let img = theta(&t).unwrap();
            assert!(is_local_search_tree(&img), "{t} -> {img}");
            images.insert(img.to_string());
        }
        assert_eq!(domain, 7);
        assert_eq!(images.len(), 7);
        let targets = tree::enumerate_trees(2, &[1, 2, 3])
            .into_iter()
            .filter(is_local_search_tree)
            .count();
        assert_eq!(targets, 7);
    }

    #[test]
    fn audit_linial_three() {
        let spec = DeformationSpec::uniform(&[1], 3);
        let report = maximality_audit(&spec).unwrap();
        assert_eq!(report.sketches, 30);
        assert_eq!(report.classes, 7);
        assert_eq!(report.regions, 7);
        assert!(report.classes_match_regions);
        assert!(report.maxima_locally_maximal);
        assert!(report.locally_maximal_equals_maximal);
        assert!(report.locally_maximal_matches_family);
    }

    #[test]
    fn audit_non_transitive() {
        let spec = DeformationSpec::uniform(&[-2, 0, 2], 3);
        let report = maximality_audit(&spec).unwrap();
        // a dilated full interval: the regions are the 30 catalan regions
        assert_eq!(report.classes, 30);
        assert_eq!(report.regions, 30);
        assert!(report.classes_match_regions);
        assert!(report.maxima_locally_maximal);
        // strictly more locally maximal sketches than classes
        assert!(report.locally_maximal > report.classes);
        assert!(!report.locally_maximal_equals_maximal);
        assert!(report.locally_maximal_matches_family);
    }

    #[test]
    fn tree_route_matches_move_route() {
        for s in [vec![0i64, 1], vec![1], vec![-2, 0, 2]] {
            let spec = DeformationSpec::uniform(&s, 3);
            let m = spec.max_offset() as usize;
            for w in sketch::enumerate_sketches(m, 3) {
                assert_eq!(
                    sketch::is_locally_maximal(&spec, &w),
                    is_locally_maximal_tree(&spec, &w).unwrap(),
                    "S = {s:?}, w = {w}"
                );
            }
        }
    }

    #[test]
    fn representative_point_feasible_regions() {
        let spec = DeformationSpec::uniform(&[0, 1], 3);
        for t in tree::enumerate_trees(2, &[1, 2, 3]) {
            if !tree::tree_in_family(&spec, &t) {
                continue;
            }
            let region = region_of_tree(&spec, &t).unwrap();
            assert_eq!(crate::arrangement::is_feasible(&spec, &region), Ok(true));
        }
        let _ = rat(1, 2);
    }
}
