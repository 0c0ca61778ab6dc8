//! Hyperplanes, regions as sign vectors, and exact feasibility of strict
//! difference-constraint systems.

use std::collections::BTreeMap;
use std::fmt;

use num::BigRational;

use crate::error::{Error, Result};
use crate::spec::DeformationSpec;

/// The hyperplane `x_u - x_v = s`, with `u < v` as canonical vertex positions.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane {
    pub u: usize,
    pub v: usize,
    pub s: i64,
}

impl fmt::Debug for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H({},{},{})", self.u, self.v, self.s)
    }
}

/// Which side of a hyperplane a region lies on; `Plus` means `x_u - x_v > s`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Minus,
    Plus,
}

/// A region encoded by one sign per hyperplane of the arrangement.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Region {
    pub signs: BTreeMap<Hyperplane, Sign>,
}

impl fmt::Debug for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .signs
            .iter()
            .map(|(h, s)| format!("{h:?}{}", if *s == Sign::Plus { "+" } else { "-" }))
            .collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

impl Region {
    /// Restricts the sign data to another hyperplane list (all of which must
    /// be signed here).
    pub fn restrict(&self, hyperplanes: &[Hyperplane]) -> Result<Region> {
        let mut signs = BTreeMap::new();
        for h in hyperplanes {
            match self.signs.get(h) {
                Some(s) => {
                    signs.insert(*h, *s);
                }
                None => return Err(Error::IncompleteRegion(1)),
            }
        }
        Ok(Region { signs })
    }
}

/// All hyperplanes of the arrangement, canonically sorted by `(u, v, s)`.
///
/// An arrangement whose offset sets are all empty, or with fewer than two
/// vertices, has no hyperplanes.
pub fn expand_spec(spec: &DeformationSpec) -> Vec<Hyperplane> {
    let n = spec.nv();
    let mut out = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            for &s in spec.offsets_by_vertex(u, v) {
                out.push(Hyperplane { u, v, s });
            }
        }
    }
    out.sort_unstable();
    out
}

/// The sign vector of a point given by exact rational coordinates in canonical
/// vertex order. Errors if the point lies on some hyperplane.
pub fn sign_vector(spec: &DeformationSpec, point: &[BigRational]) -> Result<Region> {
    assert_eq!(point.len(), spec.nv(), "point dimension mismatch");
    let mut signs = BTreeMap::new();
    for h in expand_spec(spec) {
        let diff = &point[h.u] - &point[h.v];
        let s = BigRational::from_integer(h.s.into());
        let sign = match diff.cmp(&s) {
            std::cmp::Ordering::Greater => Sign::Plus,
            std::cmp::Ordering::Less => Sign::Minus,
            std::cmp::Ordering::Equal => {
                return Err(Error::OnHyperplane {
                    u: h.u,
                    v: h.v,
                    s: h.s,
                })
            }
        };
        signs.insert(h, sign);
    }
    Ok(Region { signs })
}

/// Weight in the ordered group Z + Z*eps, compared lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
struct EpsWeight {
    int: i64,
    eps: i64,
}

impl EpsWeight {
    fn add(self, other: EpsWeight) -> EpsWeight {
        EpsWeight {
            int: self.int + other.int,
            eps: self.eps + other.eps,
        }
    }
}

/// Decides whether the strict system encoded by a region has a solution.
///
/// Each strict inequality `x_u - x_v < s` is relaxed to
/// `x_u - x_v <= s - eps` with a symbolic positive infinitesimal `eps`, and
/// infeasibility is exactly the existence of a negative cycle in the
/// difference-constraint graph with weights in `Z + Z*eps`.
pub fn is_feasible(spec: &DeformationSpec, region: &Region) -> Result<bool> {
    let hyperplanes = expand_spec(spec);
    let missing = hyperplanes
        .iter()
        .filter(|h| !region.signs.contains_key(h))
        .count();
    if missing > 0 {
        return Err(Error::IncompleteRegion(missing));
    }
    let n = spec.nv();
    // Constraint x_a - x_b <= w becomes edge b -> a with weight w.
    let mut edges: Vec<(usize, usize, EpsWeight)> = Vec::new();
    for (h, sign) in &region.signs {
        match sign {
            // x_u - x_v > s, i.e. x_v - x_u <= -s - eps
            Sign::Plus => edges.push((h.u, h.v, EpsWeight { int: -h.s, eps: -1 })),
            // x_u - x_v < s, i.e. x_u - x_v <= s - eps
            Sign::Minus => edges.push((h.v, h.u, EpsWeight { int: h.s, eps: -1 })),
        }
    }
    // Bellman-Ford from a virtual source connected to every vertex with
    // weight zero: start with all distances zero.
    let mut dist = vec![EpsWeight { int: 0, eps: 0 }; n];
    for _ in 0..n {
        let mut changed = false;
        for &(from, to, w) in &edges {
            let cand = dist[from].add(w);
            if cand < dist[to] {
                dist[to] = cand;
                changed = true;
            }
        }
        if !changed {
            return Ok(true);
        }
    }
    for &(from, to, w) in &edges {
        if dist[from].add(w) < dist[to] {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyrat::rat;

    fn pt(coords: &[(i64, i64)]) -> Vec<BigRational> {
        coords.iter().map(|&(n, d)| rat(n, d)).collect()
    }

    #[test]
    fn expand_braid() {
        let spec = DeformationSpec::uniform(&[0], 3);
        let hs = expand_spec(&spec);
        assert_eq!(
            hs,
            vec![
                Hyperplane { u: 0, v: 1, s: 0 },
                Hyperplane { u: 0, v: 2, s: 0 },
                Hyperplane { u: 1, v: 2, s: 0 },
            ]
        );
    }

    #[test]
    fn expand_sorted_and_duplicate_free() {
        let spec = DeformationSpec::uniform(&[1, -1, 0], 3);
        let hs = expand_spec(&spec);
        let mut sorted = hs.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(hs, sorted);
        assert_eq!(hs.len(), 9);
    }

    #[test]
    fn expand_degenerate() {
        assert!(expand_spec(&DeformationSpec::uniform(&[], 4)).is_empty());
        assert!(expand_spec(&DeformationSpec::uniform(&[0, 1], 1)).is_empty());
    }

    #[test]
    fn graded_tuple_matches_flat_arrangement() {
        // n = (n1, 0, ..., 0) gives the uniform arrangement of S_{1,1}.
        let graded = DeformationSpec::new(
            3,
            std::collections::BTreeMap::from([
                ((1, 1), vec![0, 1]),
                ((1, 2), vec![-1]),
                ((2, 3), vec![2]),
            ]),
            vec![3, 0, 0],
        )
        .unwrap();
        let uniform = DeformationSpec::uniform(&[0, 1], 3);
        assert_eq!(expand_spec(&graded), expand_spec(&uniform));
    }

    #[test]
    fn sign_vector_examples() {
        let spec = DeformationSpec::uniform(&[0], 2);
        let region = sign_vector(&spec, &pt(&[(1, 3), (2, 3)])).unwrap();
        assert_eq!(region.signs[&Hyperplane { u: 0, v: 1, s: 0 }], Sign::Minus);

        let spec = DeformationSpec::uniform(&[-1, 0, 1], 2);
        let region = sign_vector(&spec, &pt(&[(0, 1), (1, 2)])).unwrap();
        let signs: Vec<Sign> = region.signs.values().copied().collect();
        assert_eq!(signs, vec![Sign::Plus, Sign::Minus, Sign::Minus]);

        let spec = DeformationSpec::uniform(&[0], 2);
        assert_eq!(
            sign_vector(&spec, &pt(&[(1, 2), (1, 2)])),
            Err(Error::OnHyperplane { u: 0, v: 1, s: 0 })
        );
    }

    #[test]
    fn feasibility() {
        // x1 - x2 > 1 and x1 - x2 < -1 is contradictory.
        let spec = DeformationSpec::uniform(&[-1, 1], 2);
        let mut signs = BTreeMap::new();
        signs.insert(Hyperplane { u: 0, v: 1, s: -1 }, Sign::Minus);
        signs.insert(Hyperplane { u: 0, v: 1, s: 1 }, Sign::Plus);
        assert_eq!(is_feasible(&spec, &Region { signs }), Ok(false));

        // 0 < x1 - x2 < 1 has a witness.
        let spec = DeformationSpec::uniform(&[0, 1], 2);
        let mut signs = BTreeMap::new();
        signs.insert(Hyperplane { u: 0, v: 1, s: 0 }, Sign::Plus);
        signs.insert(Hyperplane { u: 0, v: 1, s: 1 }, Sign::Minus);
        assert_eq!(is_feasible(&spec, &Region { signs }), Ok(true));

        // Incomplete regions are rejected.
        assert!(matches!(
            is_feasible(&spec, &Region::default()),
            Err(Error::IncompleteRegion(2))
        ));
    }

    #[test]
    fn sign_vectors_are_feasible() {
        let spec = DeformationSpec::uniform(&[-1, 1], 3);
        let region = sign_vector(&spec, &pt(&[(1, 3), (5, 2), (9, 4)])).unwrap();
        assert_eq!(is_feasible(&spec, &region), Ok(true));
    }
}
