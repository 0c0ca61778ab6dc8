//! Arrangement specifications.
//!
//! A [`DeformationSpec`] is the single source of truth for an arrangement:
//! `N` vertex types, a finite sorted offset set `S_{a,b}` per unordered type
//! pair, and a multiplicity vector `n`. Vertices are the pairs `(a, i)` with
//! `a` a type and `i` a copy index, ordered lexicographically.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{Map, Value};

use crate::error::{Error, Result};

/// A vertex `(a, i)`: copy `i` of type `a`, both 1-based.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub type_index: usize,
    pub copy_index: usize,
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.type_index, self.copy_index)
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.type_index, self.copy_index)
    }
}

/// A graded tuple of integer offset sets plus a multiplicity vector.
#[derive(Clone, PartialEq, Eq)]
pub struct DeformationSpec {
    n_types: usize,
    /// Offset sets keyed by type pairs `(a, b)` with `a <= b`; sorted,
    /// duplicate-free, empty sets omitted.
    sets: BTreeMap<(usize, usize), Vec<i64>>,
    mults: Vec<usize>,
    /// Type of each vertex in canonical order (derived from `mults`).
    vtypes: Vec<usize>,
}

impl DeformationSpec {
    pub fn new(
        n_types: usize,
        sets: BTreeMap<(usize, usize), Vec<i64>>,
        mults: Vec<usize>,
    ) -> Result<Self> {
        if n_types == 0 {
            return Err(Error::Parse("N must be positive".into()));
        }
        if mults.len() != n_types {
            return Err(Error::Parse(
                "multiplicity vector must have N entries".into(),
            ));
        }
        let mut clean = BTreeMap::new();
        for ((a, b), mut s) in sets {
            if a == 0 || b == 0 || a > b || b > n_types {
                return Err(Error::Parse(format!("bad type pair ({a},{b})")));
            }
            s.sort_unstable();
            s.dedup();
            if !s.is_empty() {
                clean.insert((a, b), s);
            }
        }
        let mut vtypes = Vec::with_capacity(mults.iter().sum());
        for (a, &na) in mults.iter().enumerate() {
            vtypes.extend(std::iter::repeat_n(a + 1, na));
        }
        Ok(DeformationSpec {
            n_types,
            sets: clean,
            mults,
            vtypes,
        })
    }

    /// One vertex type with offset set `s` and multiplicity `n`.
    pub fn uniform(s: &[i64], n: usize) -> Self {
        let mut sets = BTreeMap::new();
        sets.insert((1, 1), s.to_vec());
        DeformationSpec::new(1, sets, vec![n]).expect("uniform spec")
    }

    /// A tuple arrangement: multiplicity one for each of the `n_types` types.
    pub fn tuple(n_types: usize, sets: BTreeMap<(usize, usize), Vec<i64>>) -> Result<Self> {
        DeformationSpec::new(n_types, sets, vec![1; n_types])
    }

    /// The tuple `G(S, S')` of a graph: offsets `s_edge` on edges and
    /// `s_other` elsewhere (including nothing on the diagonal).
    pub fn graph_tuple(
        n_types: usize,
        edges: &[(usize, usize)],
        s_edge: &[i64],
        s_other: &[i64],
    ) -> Result<Self> {
        let mut sets = BTreeMap::new();
        for a in 1..=n_types {
            for b in (a + 1)..=n_types {
                let on_edge = edges
                    .iter()
                    .any(|&(u, v)| (u, v) == (a, b) || (v, u) == (a, b));
                sets.insert(
                    (a, b),
                    if on_edge {
                        s_edge.to_vec()
                    } else {
                        s_other.to_vec()
                    },
                );
            }
        }
        DeformationSpec::tuple(n_types, sets)
    }

    /// Same type data, different multiplicities.
    pub fn with_mults(&self, mults: Vec<usize>) -> Result<Self> {
        DeformationSpec::new(self.n_types, self.sets.clone(), mults)
    }

    pub fn n_types(&self) -> usize {
        self.n_types
    }

    pub fn mults(&self) -> &[usize] {
        &self.mults
    }

    /// Total number of vertices `|n|`.
    pub fn nv(&self) -> usize {
        self.mults.iter().sum()
    }

    /// The offset set for a type pair (empty slice when unset).
    pub fn offsets(&self, a: usize, b: usize) -> &[i64] {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.sets.get(&key).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn set_pairs(&self) -> impl Iterator<Item = (&(usize, usize), &Vec<i64>)> {
        self.sets.iter()
    }

    /// `m = max |s|` over the union of all offset sets (0 when all are empty).
    pub fn max_offset(&self) -> i64 {
        self.sets
            .values()
            .flat_map(|s| s.iter().map(|v| v.abs()))
            .max()
            .unwrap_or(0)
    }

    /// All vertices in lexicographic order.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out = Vec::with_capacity(self.nv());
        for (a, &na) in self.mults.iter().enumerate() {
            for i in 1..=na {
                out.push(Vertex {
                    type_index: a + 1,
                    copy_index: i,
                });
            }
        }
        out
    }

    /// The offset set attached to a pair of vertex indices (0-based canonical
    /// positions in [`Self::vertices`]).
    pub fn offsets_by_vertex(&self, iu: usize, iv: usize) -> &[i64] {
        self.offsets(self.vtypes[iu], self.vtypes[iv])
    }

    /// Type of the vertex at a canonical position.
    pub fn vertex_type(&self, i: usize) -> usize {
        self.vtypes[i]
    }

    /// Membership of `s >= 0` in the oriented set `S^-_{u,v}` for vertex
    /// indices `iu != iv`: for `u < v` this is `{s >= 0 | -s in S}`, and for
    /// `u > v` it is `{s > 0 | s in S} + {0}`.
    pub fn in_s_minus(&self, iu: usize, iv: usize, s: i64) -> bool {
        debug_assert!(s >= 0 && iu != iv);
        let set = self.offsets_by_vertex(iu, iv);
        if iu < iv {
            set.contains(&(-s))
        } else {
            s == 0 || set.contains(&s)
        }
    }

    /// Rank: `|n|` minus the number of connected components of the support
    /// graph (vertices joined whenever their type pair carries offsets).
    pub fn rank(&self) -> usize {
        let n = self.nv();
        let mut dsu = Dsu::new(n);
        for i in 0..n {
            for j in (i + 1)..n {
                if !self.offsets_by_vertex(i, j).is_empty() {
                    dsu.union(i, j);
                }
            }
        }
        n - dsu.component_count()
    }

    pub fn to_json(&self) -> Value {
        let mut sets = Map::new();
        for ((a, b), s) in &self.sets {
            sets.insert(
                format!("{a},{b}"),
                Value::Array(s.iter().map(|&v| Value::from(v)).collect()),
            );
        }
        let mut obj = Map::new();
        obj.insert("N".into(), Value::from(self.n_types as u64));
        obj.insert("sets".into(), Value::Object(sets));
        obj.insert(
            "n".into(),
            Value::Array(self.mults.iter().map(|&v| Value::from(v as u64)).collect()),
        );
        Value::Object(obj)
    }

    /// Parses either the graded shape
    /// `{"N":2,"sets":{"1,1":[-1,0,1],"1,2":[0,1],"2,2":[0]},"n":[3,2]}`
    /// or the uniform shorthand `{"S":[-1,1],"n":4}`.
    pub fn from_json(value: &Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Parse("spec JSON must be an object".into()))?;
        if let Some(s) = obj.get("S") {
            let offsets = parse_int_array(s)?;
            let n = obj
                .get("n")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse("uniform spec needs a scalar \"n\"".into()))?;
            return Ok(DeformationSpec::uniform(&offsets, n as usize));
        }
        let n_types = obj
            .get("N")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("graded spec needs \"N\"".into()))?
            as usize;
        let mut sets = BTreeMap::new();
        if let Some(raw) = obj.get("sets") {
            let raw = raw
                .as_object()
                .ok_or_else(|| Error::Parse("\"sets\" must be an object".into()))?;
            for (key, val) in raw {
                let (a, b) = key
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("bad pair key {key}")))?;
                let a: usize = a
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad pair key {key}")))?;
                let b: usize = b
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad pair key {key}")))?;
                sets.insert((a, b), parse_int_array(val)?);
            }
        }
        let mults = obj
            .get("n")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("graded spec needs an array \"n\"".into()))?
            .iter()
            .map(|v| v.as_u64().map(|x| x as usize))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Parse("bad multiplicity".into()))?;
        DeformationSpec::new(n_types, sets, mults)
    }
}

fn parse_int_array(value: &Value) -> Result<Vec<i64>> {
    value
        .as_array()
        .ok_or_else(|| Error::Parse("offset set must be an array".into()))?
        .iter()
        .map(|v| {
            v.as_i64()
                .ok_or_else(|| Error::Parse("offset must be an integer".into()))
        })
        .collect()
}

impl Serialize for DeformationSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DeformationSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let value = Value::deserialize(deserializer)?;
        DeformationSpec::from_json(&value).map_err(D::Error::custom)
    }
}

impl fmt::Debug for DeformationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_json())
    }
}

pub(crate) struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    pub fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    pub fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    pub fn component_count(&mut self) -> usize {
        (0..self.parent.len())
            .filter(|&i| self.find(i) == i)
            .count()
    }
}
