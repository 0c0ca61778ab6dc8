//! Independent brute-force ground truth: the Whitney sum over graphs with
//! integer potential counts, sketch-based region enumeration, and the Potts /
//! acyclic-orientation checks for offset-zero arrangements.

use std::collections::BTreeSet;

use num::{BigInt, BigRational, One, Zero};
use rayon::prelude::*;

use crate::arrangement::{expand_spec, sign_vector, Region};
use crate::error::{Error, Result};
use crate::poly::BivarPoly;
use crate::sketch;
use crate::spec::{DeformationSpec, Dsu};

/// Number of integer potentials on a graph over the spec's vertices:
/// `x_u - x_v` must lie in the offset set of every edge `u < v`, and the
/// smallest vertex of every component is pinned to zero.
pub fn count_potentials(spec: &DeformationSpec, edges: &[(usize, usize)]) -> BigInt {
    enumerate_potentials(spec, edges).len().into()
}

/// The potential tuples themselves (used by tests; counting suffices for the
/// Whitney sum).
pub fn enumerate_potentials(spec: &DeformationSpec, edges: &[(usize, usize)]) -> Vec<Vec<i64>> {
    let n = spec.nv();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    // components, each explored from its smallest vertex
    let mut dsu = Dsu::new(n);
    for &(u, v) in edges {
        dsu.union(u, v);
    }
    let mut order: Vec<usize> = Vec::new();
    let mut seen = vec![false; n];
    for root in 0..n {
        if seen[root] {
            continue;
        }
        // BFS keeps every non-root vertex adjacent to an earlier one
        let mut queue = std::collections::VecDeque::from([root]);
        seen[root] = true;
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let root_of: Vec<bool> = {
        let mut mins = vec![usize::MAX; n];
        let mut dsu2 = Dsu::new(n);
        for &(u, v) in edges {
            dsu2.union(u, v);
        }
        for v in 0..n {
            let r = dsu2.find(v);
            mins[r] = mins[r].min(v);
        }
        (0..n).map(|v| mins[dsu2.find(v)] == v).collect()
    };
    let bound = spec.max_offset() * (n as i64 - 1).max(0);
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    #[allow(clippy::too_many_arguments)]
    fn rec(
        spec: &DeformationSpec,
        adj: &[Vec<usize>],
        order: &[usize],
        root_of: &[bool],
        bound: i64,
        pos: usize,
        x: &mut Vec<i64>,
        assigned: &mut Vec<bool>,
        out: &mut Vec<Vec<i64>>,
    ) {
        if pos == order.len() {
            out.push(x.clone());
            return;
        }
        let v = order[pos];
        let candidates: Vec<i64> = if root_of[v] {
            vec![0]
        } else {
            // derive candidates from one already-assigned neighbour
            let u = *adj[v]
                .iter()
                .find(|&&u| assigned[u])
                .expect("BFS order keeps a previous neighbour");
            let set = spec.offsets_by_vertex(u.min(v), u.max(v));
            if u < v {
                set.iter().map(|&s| x[u] - s).collect()
            } else {
                set.iter().map(|&s| x[u] + s).collect()
            }
        };
        'cand: for c in candidates {
            if c.abs() > bound {
                continue;
            }
            for &w in &adj[v] {
                if assigned[w] {
                    let (a, b) = (w.min(v), w.max(v));
                    let diff = if a == w { x[w] - c } else { c - x[w] };
                    if !spec.offsets_by_vertex(a, b).contains(&diff) {
                        continue 'cand;
                    }
                }
            }
            x[v] = c;
            assigned[v] = true;
            rec(spec, adj, order, root_of, bound, pos + 1, x, assigned, out);
            assigned[v] = false;
        }
    }
    let mut assigned = vec![false; n];
    rec(
        spec,
        &adj,
        &order,
        &root_of,
        bound,
        0,
        &mut x,
        &mut assigned,
        &mut out,
    );
    out.sort_unstable();
    out
}

/// The coboundary polynomial as the Whitney sum
/// `sum_G (y-1)^{e(G)} q^{comp(G)} #potentials(G)` over all graphs on the
/// spec's vertices.
pub fn whitney_coboundary(spec: &DeformationSpec) -> Result<BivarPoly> {
    let n = spec.nv();
    if n > 6 {
        return Err(Error::TooLarge {
            size: 1u128 << (n * (n - 1) / 2),
            guard: 1 << 15,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    let masks: Vec<u64> = (0..(1u64 << pairs.len())).collect();
    let poly = masks
        .par_iter()
        .map(|&mask| {
            let edges: Vec<(usize, usize)> = pairs
                .iter()
                .enumerate()
                .filter_map(|(k, &e)| (mask & (1 << k) != 0).then_some(e))
                .collect();
            let w = count_potentials(spec, &edges);
            if w.is_zero() {
                return BivarPoly::zero();
            }
            let mut dsu = Dsu::new(n);
            for &(u, v) in &edges {
                dsu.union(u, v);
            }
            let comp = dsu.component_count() as u32;
            // (y-1)^e q^comp w
            let y = BivarPoly::var_b();
            let ym1 = &y - &BivarPoly::one();
            let mut term = ym1.pow(edges.len() as u32);
            term = &term * &BivarPoly::monomial(comp, 0, w);
            term
        })
        .reduce(BivarPoly::zero, |a, b| &a + &b);
    Ok(poly)
}

/// The characteristic polynomial, i.e. the Whitney sum at `y = 0`.
pub fn whitney_characteristic(spec: &DeformationSpec) -> Result<BivarPoly> {
    let p = whitney_coboundary(spec)?;
    let mut out = BivarPoly::zero();
    for (&(ea, eb), c) in p.terms() {
        if eb == 0 {
            out.insert_term((ea, 0), c.clone());
        }
    }
    Ok(out)
}

/// Region count through Zaslavsky's evaluation of the Whitney characteristic
/// polynomial.
pub fn whitney_region_count(spec: &DeformationSpec) -> Result<BigInt> {
    let chi = whitney_characteristic(spec)?;
    let (regions, _) = crate::poly::zaslavsky(&chi, spec.nv(), spec.rank())?;
    Ok(regions)
}

/// Enumerates the regions by scanning all annotated sketches: every region of
/// the full `[-m..m]` arrangement has a rational representative point whose
/// sign vector is restricted to the spec's hyperplanes and deduplicated.
pub fn regions_by_sketch_enumeration(spec: &DeformationSpec) -> Result<(BigInt, BTreeSet<Region>)> {
    let n = spec.nv();
    let m = spec.max_offset() as usize;
    let total = crate::tree::count_trees(m + 1, n);
    let guard = crate::enumeration_guard();
    if total > BigInt::from(guard) {
        return Err(Error::TooLarge {
            size: u128::MAX,
            guard,
        });
    }
    let hyperplanes = expand_spec(spec);
    let sketches = sketch::enumerate_sketches(m, n);
    let regions = sketches
        .par_iter()
        .map(|w| {
            let point = sketch::representative_point(w).expect("valid sketch");
            let full = sign_vector(spec, &point).expect("representative avoids hyperplanes");
            full.restrict(&hyperplanes).expect("full sign data")
        })
        .fold(BTreeSet::new, |mut acc: BTreeSet<Region>, r| {
            acc.insert(r);
            acc
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok((BigInt::from(regions.len() as u64), regions))
}

/// Potts partition sum `P_G(q, y) = sum_{f: V -> [q]} y^{mono(f)}`, recovered
/// as a polynomial in `q` by interpolation at `q = 0 .. |V|`.
pub fn potts_partition(n_vertices: usize, edges: &[(usize, usize)]) -> Result<BivarPoly> {
    if n_vertices > 8 {
        return Err(Error::TooLarge {
            size: n_vertices as u128,
            guard: 8,
        });
    }
    // values[k] = P(k, y) as a y-polynomial
    let mut values: Vec<Vec<BigInt>> = Vec::new();
    for q in 0..=n_vertices {
        let mut by_mono = vec![BigInt::zero(); edges.len() + 1];
        if q == 0 && n_vertices > 0 {
            values.push(by_mono);
            continue;
        }
        let mut f = vec![0usize; n_vertices];
        let mut done = false;
        while !done {
            let mono = edges.iter().filter(|&&(u, v)| f[u] == f[v]).count();
            by_mono[mono] += 1;
            let mut i = 0;
            loop {
                if i == n_vertices {
                    done = true;
                    break;
                }
                f[i] += 1;
                if f[i] < q {
                    break;
                }
                f[i] = 0;
                i += 1;
            }
        }
        values.push(by_mono);
    }
    // Lagrange interpolation in q, coefficientwise in y
    let mut out = BivarPoly::zero();
    for mono in 0..=edges.len() {
        let pts: Vec<BigRational> = values
            .iter()
            .map(|v| BigRational::from_integer(v.get(mono).cloned().unwrap_or_else(BigInt::zero)))
            .collect();
        let coeffs = interpolate(&pts)?;
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                if !c.denom().is_one() {
                    return Err(Error::InexactDivision);
                }
                out.insert_term((k as u32, mono as u32), c.numer().clone());
            }
        }
    }
    Ok(out)
}

/// Coefficients of the unique polynomial of degree below `pts.len()` taking
/// value `pts[i]` at `i`.
fn interpolate(pts: &[BigRational]) -> Result<Vec<BigRational>> {
    let n = pts.len();
    // Newton forward differences; binomial basis expanded to monomials
    let mut diffs: Vec<Vec<BigRational>> = vec![pts.to_vec()];
    for k in 1..n {
        let prev = &diffs[k - 1];
        diffs.push((0..n - k).map(|i| &prev[i + 1] - &prev[i]).collect());
    }
    // p(q) = sum_k diff_k * q (q-1) ... (q-k+1) / k!
    let mut out = vec![BigRational::zero(); n];
    let mut falling = vec![BigRational::one()]; // coefficients of prod (q - j)
    for (k, diff) in diffs.iter().enumerate() {
        let lead = &diff[0];
        if !lead.is_zero() {
            let kfact = BigRational::from_integer(crate::series::factorial(k as u64));
            for (j, c) in falling.iter().enumerate() {
                out[j] += lead * c / &kfact;
            }
        }
        // falling *= (q - k)
        let mut next = vec![BigRational::zero(); falling.len() + 1];
        for (j, c) in falling.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * BigRational::from_integer(BigInt::from(k as i64));
        }
        falling = next;
    }
    Ok(out)
}

/// Number of acyclic orientations of a graph, by brute force over all edge
/// orientations.
pub fn acyclic_orientations(n_vertices: usize, edges: &[(usize, usize)]) -> Result<BigInt> {
    if edges.len() > 20 {
        return Err(Error::TooLarge {
            size: 1u128 << edges.len(),
            guard: 1 << 20,
        });
    }
    let mut count = BigInt::zero();
    for mask in 0..(1u64 << edges.len()) {
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n_vertices];
        for (k, &(u, v)) in edges.iter().enumerate() {
            if mask & (1 << k) != 0 {
                adj[u].push(v);
            } else {
                adj[v].push(u);
            }
        }
        if is_acyclic(&adj) {
            count += 1;
        }
    }
    Ok(count)
}

fn is_acyclic(adj: &[Vec<usize>]) -> bool {
    let n = adj.len();
    let mut indeg = vec![0usize; n];
    for out in adj {
        for &v in out {
            indeg[v] += 1;
        }
    }
    let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut removed = 0;
    while let Some(v) = queue.pop() {
        removed += 1;
        for &w in &adj[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                queue.push(w);
            }
        }
    }
    removed == n
}
