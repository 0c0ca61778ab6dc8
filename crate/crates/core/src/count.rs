//! Counting routes for regions: transitivity predicates, signed boxed-tree
//! counts, unsigned counts over the tree family, coboundary polynomials built
//! from admissible boxed trees, and the finite-window tuple identity.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::BivarPoly;
use crate::polyrat::{rat_int, PolyRat, Var};
use crate::series::ExpSeries;
use crate::spec::DeformationSpec;
use crate::tree;

/// First violation of the closure conditions of a transitive offset set, if
/// any: for `s, t` outside `S` of the same sign, `s + t` must stay outside,
/// and for `s > 0 >= t` both outside, `s - t` and `t - s` must stay outside.
pub fn transitive_set_witness(s: &[i64]) -> Option<(i64, i64, i64)> {
    let m = s.iter().map(|v| v.abs()).max().unwrap_or(0);
    // sums landing outside [-m..m] are never in S, so this window is complete
    let in_s = |v: i64| s.contains(&v);
    for a in -2 * m..=2 * m {
        if in_s(a) {
            continue;
        }
        for b in -2 * m..=2 * m {
            if in_s(b) {
                continue;
            }
            if a * b > 0 && in_s(a + b) {
                return Some((a, b, a + b));
            }
            if a > 0 && b <= 0 {
                if in_s(a - b) {
                    return Some((a, b, a - b));
                }
                if in_s(b - a) {
                    return Some((a, b, b - a));
                }
            }
        }
    }
    None
}

pub fn is_transitive_set(s: &[i64]) -> bool {
    transitive_set_witness(s).is_none()
}

/// First violation of tuple transitivity over the spec's own vertices: for
/// distinct vertices `a, b, c` and `s` outside `S^-_{a,b}`, `t` outside
/// `S^-_{b,c}`, the sum must stay outside `S^-_{a,c}`.
pub fn expanded_transitive_witness(spec: &DeformationSpec) -> Option<(i64, i64, i64)> {
    let n = spec.nv();
    let m = spec.max_offset();
    for a in 0..n {
        for b in 0..n {
            if b == a {
                continue;
            }
            for c in 0..n {
                if c == a || c == b {
                    continue;
                }
                // sums beyond m are outside every oriented set
                for s in 0..=m {
                    if spec.in_s_minus(a, b, s) {
                        continue;
                    }
                    for t in 0..=(m - s) {
                        if spec.in_s_minus(b, c, t) {
                            continue;
                        }
                        if spec.in_s_minus(a, c, s + t) {
                            return Some((s, t, s + t));
                        }
                    }
                }
            }
        }
    }
    None
}

/// Tuple transitivity for a spec with multiplicity one per type.
pub fn is_transitive_tuple(spec: &DeformationSpec) -> Result<bool> {
    if spec.mults().iter().any(|&x| x != 1) {
        return Err(Error::PreconditionViolated(
            "tuple transitivity requires multiplicity one per type".into(),
        ));
    }
    Ok(expanded_transitive_witness(spec).is_none())
}

/// Checks that every multiplicity vector with `|n| <= bound` yields a
/// transitive expanded tuple.
pub fn check_multi_transitive(spec: &DeformationSpec, bound: usize) -> bool {
    multi_transitive_witness(spec, bound).is_none()
}

pub fn multi_transitive_witness(
    spec: &DeformationSpec,
    bound: usize,
) -> Option<(Vec<usize>, (i64, i64, i64))> {
    let ntypes = spec.n_types();
    let mut mults = vec![0usize; ntypes];
    loop {
        let total: usize = mults.iter().sum();
        if total <= bound && total >= 3 {
            let sub = spec.with_mults(mults.clone()).expect("valid mults");
            if let Some(w) = expanded_transitive_witness(&sub) {
                return Some((mults, w));
            }
        }
        // odometer with sum cap
        let mut i = 0;
        loop {
            if i == ntypes {
                return None;
            }
            mults[i] += 1;
            if mults.iter().sum::<usize>() <= bound {
                break;
            }
            mults[i] = 0;
            i += 1;
        }
    }
}

/// Sufficient criteria for multi-transitivity that avoid the bounded search:
/// either every set contains the half interval `[-m/2..m/2]`, or the diagonal
/// sets are transitive and every off-diagonal set is the full `[-m..m]`.
pub fn multi_transitive_sufficient(spec: &DeformationSpec) -> bool {
    let m = spec.max_offset();
    let half = m / 2;
    let n = spec.n_types();
    let half_contained = (1..=n).all(|a| {
        (a..=n).all(|b| {
            let s = spec.offsets(a, b);
            (-half..=half).all(|v| s.contains(&v))
        })
    });
    if half_contained {
        return true;
    }
    let full: Vec<i64> = (-m..=m).collect();
    (1..=n).all(|a| is_transitive_set(spec.offsets(a, a)))
        && (1..=n).all(|a| ((a + 1)..=n).all(|b| spec.offsets(a, b) == full.as_slice()))
}

/// Errs with a witness when the applicable transitivity predicate fails: the
/// plain set condition for one type, the expanded tuple condition otherwise.
pub fn ensure_transitive(spec: &DeformationSpec) -> Result<()> {
    if spec.n_types() == 1 {
        if let Some((s, t, sum)) = transitive_set_witness(spec.offsets(1, 1)) {
            return Err(Error::NotTransitive { s, t, sum });
        }
    } else if let Some((s, t, sum)) = expanded_transitive_witness(spec) {
        return Err(Error::NotTransitive { s, t, sum });
    }
    Ok(())
}

/// The signed count `sum (-1)^{n - |B|}` over all boxed trees whose chains
/// avoid the oriented offset sets; equals the number of regions.
pub fn signed_region_count(spec: &DeformationSpec) -> BigInt {
    let n = spec.nv();
    let arity = spec.max_offset() as usize + 1;
    let labels: Vec<u32> = (1..=n as u32).collect();
    let trees = tree::enumerate_trees(arity, &labels);
    trees
        .par_iter()
        .map(|t| {
            let edges = tree::cadet_edges(t);
            let mut acc = BigInt::zero();
            for mask in 0..(1u64 << edges.len()) {
                let chains = tree::chains_for_mask(t, &edges, mask);
                if chains.iter().all(|c| tree::chain_is_box(spec, t, c)) {
                    if (n - chains.len()).is_multiple_of(2) {
                        acc += 1;
                    } else {
                        acc -= 1;
                    }
                }
            }
            acc
        })
        .reduce(BigInt::zero, |a, b| a + b)
}

/// The unsigned count: the size of the tree family, valid when the applicable
/// transitivity predicate holds.
pub fn unsigned_region_count(spec: &DeformationSpec) -> Result<BigInt> {
    ensure_transitive(spec)?;
    Ok(BigInt::from(tree::enumerate_family(spec).len() as u64))
}

/// The boxed-tree series `U(y, t)` over admissible boxed trees weighted
/// `(-1)^{|B|} y^{energy}`, together with the pointed variant weighted by the
/// vertex count of the contracted tree: `|B|` plus the leaves that survive
/// after each box collapses to one node (box members past the first lose
/// their right siblings). Both are exponential series in `t_1 .. t_N`.
pub fn boxed_tree_series(spec: &DeformationSpec, budget: usize) -> (ExpSeries, ExpSeries) {
    let ntypes = spec.n_types();
    let m = spec.max_offset();
    let arity = m as usize + 1;
    let mut u = ExpSeries::zero(ntypes, budget as u32);
    let mut udot = ExpSeries::zero(ntypes, budget as u32);
    let mut mults = vec![0usize; ntypes];
    let y = PolyRat::var(Var::Y);
    loop {
        let total: usize = mults.iter().sum();
        if total <= budget {
            let sub = spec.with_mults(mults.clone()).expect("valid mults");
            let labels: Vec<u32> = (1..=total as u32).collect();
            let leaves = m as usize * total + 1;
            let mut coeff = PolyRat::zero();
            let mut coeff_dot = PolyRat::zero();
            tree::for_each_tree(arity, &labels, |t| {
                let edges = tree::cadet_edges(&t);
                for mask in 0..(1u64 << edges.len()) {
                    let chains = tree::chains_for_mask(&t, &edges, mask);
                    if !chains.iter().all(|c| tree::chain_is_admissible(&t, c)) {
                        continue;
                    }
                    let energy: usize =
                        chains.iter().map(|c| tree::chain_energy(&sub, &t, c)).sum();
                    // right siblings of non-initial box members vanish when
                    // the box contracts
                    let dropped: usize = chains
                        .iter()
                        .flat_map(|c| c[1..].iter().map(|&v| m as usize - t.ls(v)))
                        .sum();
                    let sign = if chains.len().is_multiple_of(2) {
                        1
                    } else {
                        -1
                    };
                    let term = y.pow(energy as u32).scale(&rat_int(sign));
                    coeff = &coeff + &term;
                    coeff_dot = &coeff_dot
                        + &term.scale(&rat_int((chains.len() + leaves - dropped) as i64));
                }
            });
            let fact = BigRational::from_integer(
                mults
                    .iter()
                    .map(|&e| crate::series::factorial(e as u64))
                    .product::<BigInt>(),
            );
            let expo: Vec<u32> = mults.iter().map(|&e| e as u32).collect();
            u.add_term(expo.clone(), coeff.scale(&(BigRational::one() / &fact)));
            udot.add_term(expo, coeff_dot.scale(&(BigRational::one() / fact)));
        }
        let mut i = 0;
        loop {
            if i == ntypes {
                return (u, udot);
            }
            mults[i] += 1;
            if mults.iter().sum::<usize>() <= budget {
                break;
            }
            mults[i] = 0;
            i += 1;
        }
    }
}

/// Coboundary polynomials `P(q, y)` for every multiplicity vector with
/// `|n| <= budget`, obtained by raising the boxed-tree series to the formal
/// exponent `-q` and extracting exponential coefficients.
pub fn coboundary_from_trees(
    spec: &DeformationSpec,
    label_budget: usize,
) -> Result<BTreeMap<Vec<usize>, BivarPoly>> {
    let arity = spec.max_offset() as usize + 1;
    let guard = crate::enumeration_guard();
    let work = tree::count_trees(arity, label_budget);
    if work > BigInt::from(guard) {
        return Err(Error::BudgetExceeded {
            budget: label_budget,
            requested: label_budget,
        });
    }
    let (u, _) = boxed_tree_series(spec, label_budget);
    let q = PolyRat::var(Var::Q);
    let p = u.pow_coeff(&-&q)?;
    let mut out = BTreeMap::new();
    for (expo, _) in p.terms() {
        let poly = p.egf_coeff(expo);
        let mults: Vec<usize> = expo.iter().map(|&e| e as usize).collect();
        out.insert(mults, BivarPoly::from_polyrat(&poly, Var::Q, Var::Y)?);
    }
    Ok(out)
}

/// Brute-force sum of `y^{energy}` over all integer tuples in `[delta]^{|n|}`,
/// where the energy counts ordered pairs `u < v` with `x_u - x_v` in the
/// offset set of the pair.
pub fn z_bruteforce(spec: &DeformationSpec, delta: i64) -> Result<PolyRat> {
    if delta < 1 {
        return Err(Error::PreconditionViolated("delta must be positive".into()));
    }
    let n = spec.nv();
    let guard = crate::enumeration_guard();
    let size = (delta as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if size > guard {
        return Err(Error::TooLarge { size, guard });
    }
    let mut counts: BTreeMap<usize, BigInt> = BTreeMap::new();
    let mut x = vec![1i64; n];
    loop {
        let mut energy = 0usize;
        for u in 0..n {
            for v in (u + 1)..n {
                if spec.offsets_by_vertex(u, v).contains(&(x[u] - x[v])) {
                    energy += 1;
                }
            }
        }
        *counts.entry(energy).or_insert_with(BigInt::zero) += 1;
        let mut i = 0;
        loop {
            if i == n {
                let y = PolyRat::var(Var::Y);
                let mut out = PolyRat::zero();
                for (e, c) in counts {
                    out = &out + &y.pow(e as u32).scale(&BigRational::from_integer(c));
                }
                return Ok(out);
            }
            x[i] += 1;
            if x[i] <= delta {
                break;
            }
            x[i] = 1;
            i += 1;
        }
    }
}

/// Verifies the finite-window identity at `delta = m |n| + 1`: the brute-force
/// tuple sum equals `n! [t^n] U^{-delta-m-2} U_dot`.
pub fn z_identity_check(spec: &DeformationSpec) -> Result<bool> {
    let m = spec.max_offset();
    let n = spec.nv() as i64;
    let delta = m * n + 1;
    let lhs = z_bruteforce(spec, delta)?;
    let (u, udot) = boxed_tree_series(spec, spec.nv());
    let rhs_series = u.pow_int(-delta - m - 2)?.mul(&udot);
    let expo: Vec<u32> = spec.mults().iter().map(|&e| e as u32).collect();
    let rhs = rhs_series.egf_coeff(&expo);
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transitive_sets() {
        assert!(is_transitive_set(&[0, 1]));
        assert!(!is_transitive_set(&[-2, 0, 2]));
        assert!(is_transitive_set(&[1, 2, 3]));
        assert!(is_transitive_set(&[]));
        // subsets of [-1..1]: all pass except the bare {-1}, whose family
        // overcounts the regions (9 vs 7 at three coordinates); its mirror
        // image {1} is the transitive representative
        for mask in 0..8 {
            let mut s = Vec::new();
            for (bit, v) in [(1, -1i64), (2, 0), (4, 1)] {
                if mask & bit != 0 {
                    s.push(v);
                }
            }
            assert_eq!(is_transitive_set(&s), s != vec![-1], "subset {s:?}");
        }
        // intervals containing 1
        assert!(is_transitive_set(&[-1, 0, 1, 2]));
        assert!(is_transitive_set(&[1, 2]));
        let w = transitive_set_witness(&[-2, 0, 2]).unwrap();
        assert_eq!(w.2.abs() % 2, 0);
    }

    #[test]
    fn transitive_tuples() {
        // half-interval containment
        let spec = DeformationSpec::graph_tuple(3, &[(1, 2)], &[-1, 0, 1], &[-1, 0]).unwrap();
        assert!(is_transitive_tuple(&spec).unwrap());

        // constant tuple agrees with the set condition (three or more types)
        for s in [vec![0i64, 1], vec![-2, 0, 2], vec![1], vec![-1, 1]] {
            let sets: BTreeMap<(usize, usize), Vec<i64>> = (1..=3usize)
                .flat_map(|a| {
                    (a..=3).map({
                        let s = s.clone();
                        move |b| ((a, b), s.clone())
                    })
                })
                .collect();
            let spec = DeformationSpec::tuple(3, sets).unwrap();
            assert_eq!(is_transitive_tuple(&spec).unwrap(), is_transitive_set(&s));
        }

        // the graph-Shi tuple is transitive for any graph
        for edges in [
            vec![],
            vec![(1, 2)],
            vec![(1, 2), (1, 3)],
            vec![(1, 2), (1, 3), (2, 3)],
        ] {
            let spec = DeformationSpec::graph_tuple(3, &edges, &[-1, 0, 1], &[0, 1]).unwrap();
            assert!(is_transitive_tuple(&spec).unwrap(), "edges {edges:?}");
        }
    }

    #[test]
    fn multi_transitivity() {
        // full interval everywhere
        let sets = BTreeMap::from([
            ((1, 1), vec![-1, 0, 1]),
            ((1, 2), vec![-1, 0, 1]),
            ((2, 2), vec![-1, 0, 1]),
        ]);
        let spec = DeformationSpec::new(2, sets, vec![1, 1]).unwrap();
        assert!(check_multi_transitive(&spec, 5));
        assert!(multi_transitive_sufficient(&spec));

        // one type reduces to the set condition
        assert!(check_multi_transitive(
            &DeformationSpec::uniform(&[0, 1], 1),
            5
        ));
        assert!(!check_multi_transitive(
            &DeformationSpec::uniform(&[-2, 0, 2], 1),
            5
        ));

        // two non-interacting Shi blocks: recorded by direct exhaustive check
        // of the definition, the expanded tuple at multiplicities (2,1) fails
        // through a mixed triple
        let sets = BTreeMap::from([((1, 1), vec![0, 1]), ((2, 2), vec![0, 1])]);
        let spec = DeformationSpec::new(2, sets, vec![1, 1]).unwrap();
        assert!(!check_multi_transitive(&spec, 4));
        let (mults, _) = multi_transitive_witness(&spec, 4).unwrap();
        assert_eq!(mults.iter().sum::<usize>(), 3);
    }

    #[test]
    fn signed_counts() {
        assert_eq!(
            signed_region_count(&DeformationSpec::uniform(&[0], 3)),
            BigInt::from(6)
        );
        assert_eq!(
            signed_region_count(&DeformationSpec::uniform(&[-1, 0, 1], 3)),
            BigInt::from(30)
        );
        assert_eq!(
            signed_region_count(&DeformationSpec::uniform(&[1], 3)),
            BigInt::from(7)
        );
    }

    #[test]
    fn unsigned_counts() {
        assert_eq!(
            unsigned_region_count(&DeformationSpec::uniform(&[0, 1], 4)).unwrap(),
            BigInt::from(125)
        );
        assert_eq!(
            unsigned_region_count(&DeformationSpec::uniform(&[-2, -1, 0, 1], 2)).unwrap(),
            BigInt::from(5)
        );
        assert!(matches!(
            unsigned_region_count(&DeformationSpec::uniform(&[-2, 0, 2], 3)),
            Err(Error::NotTransitive { .. })
        ));
    }

    #[test]
    fn coboundary_matches_potts_for_braid_two() {
        let spec = DeformationSpec::uniform(&[0], 2);
        let map = coboundary_from_trees(&spec, 2).unwrap();
        // P_{K_2}(q, y) = q^2 + (y-1) q
        let q = BivarPoly::var_a();
        let y = BivarPoly::var_b();
        let expected = &(&q * &q) + &(&(&y - &BivarPoly::one()) * &q);
        assert_eq!(map[&vec![2usize]], expected);
        assert_eq!(map[&vec![1usize]], q);
        assert_eq!(map[&vec![0usize]], BivarPoly::one());
    }

    #[test]
    fn coboundary_specializes_to_signed_count() {
        for s in [vec![0i64], vec![0, 1], vec![1], vec![-1, 1], vec![-1, 0, 1]] {
            let spec = DeformationSpec::uniform(&s, 3);
            let map = coboundary_from_trees(&spec, 3).unwrap();
            for n in 0..=3usize {
                let chi_at = map[&vec![n]].eval_rational(&rat_int(-1), &BigRational::zero());
                let signed = signed_region_count(&DeformationSpec::uniform(&s, n));
                let sign = rat_int(if n % 2 == 0 { 1 } else { -1 });
                assert_eq!(
                    chi_at * sign,
                    BigRational::from_integer(signed),
                    "S = {s:?}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn bipartite_coboundary_display() {
        // two types joined by offset {0}: the P-series equals the bipartite
        // double sum raised to the exponent q
        let sets = BTreeMap::from([((1, 2), vec![0])]);
        let spec = DeformationSpec::tuple(2, sets).unwrap();
        let budget = 4usize;
        let (u, _) = boxed_tree_series(&spec, budget);
        let q = PolyRat::var(Var::Q);
        let p = u.pow_coeff(&-&q).unwrap();

        let mut inner = ExpSeries::zero(2, budget as u32);
        let y = PolyRat::var(Var::Y);
        for k1 in 0..=budget as u32 {
            for k2 in 0..=(budget as u32 - k1) {
                let fact = BigRational::from_integer(
                    crate::series::factorial(k1 as u64) * crate::series::factorial(k2 as u64),
                );
                inner.add_term(
                    vec![k1, k2],
                    y.pow(k1 * k2).scale(&(BigRational::one() / fact)),
                );
            }
        }
        let expected = inner.pow_coeff(&q).unwrap();
        assert_eq!(p, expected);
    }

    #[test]
    fn guards() {
        // a label budget far past the enumeration guard is rejected
        assert!(matches!(
            coboundary_from_trees(&DeformationSpec::uniform(&[0, 1], 1), 30),
            Err(Error::BudgetExceeded { .. })
        ));
        // tuple enumeration is capped as well
        assert!(matches!(
            z_bruteforce(&DeformationSpec::uniform(&[0], 9), 10_000),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn z_values() {
        // a single coordinate has no pairs
        let spec = DeformationSpec::uniform(&[0], 1);
        assert_eq!(z_bruteforce(&spec, 5).unwrap(), PolyRat::from_int(5));

        // two coordinates, offsets {0}, delta 3: 6 + 3y
        let spec = DeformationSpec::uniform(&[0], 2);
        let z = z_bruteforce(&spec, 3).unwrap();
        let expected = &PolyRat::from_int(6) + &PolyRat::var(Var::Y).scale(&rat_int(3));
        assert_eq!(z, expected);
    }

    #[test]
    fn z_identity_small() {
        for s in [
            vec![],
            vec![0i64],
            vec![0, 1],
            vec![-1, 1],
            vec![1],
            vec![-1, 0, 1],
        ] {
            for n in 1..=3usize {
                let spec = DeformationSpec::uniform(&s, n);
                assert!(z_identity_check(&spec).unwrap(), "S = {s:?}, n = {n}");
            }
        }
    }

    #[test]
    fn involution_cancels_outside_family() {
        // for a transitive spec the boxed structures of a tree outside the
        // family cancel in pairs
        for s in [vec![0i64, 1], vec![1], vec![-1, 1]] {
            let spec = DeformationSpec::uniform(&s, 3);
            let arity = spec.max_offset() as usize + 1;
            for t in tree::enumerate_trees(arity, &[1, 2, 3]) {
                if tree::tree_in_family(&spec, &t) {
                    continue;
                }
                let edges = tree::cadet_edges(&t);
                let mut total = 0i64;
                for mask in 0..(1u64 << edges.len()) {
                    let chains = tree::chains_for_mask(&t, &edges, mask);
                    if chains.iter().all(|c| tree::chain_is_box(&spec, &t, c)) {
                        total += if (3 - chains.len()).is_multiple_of(2) {
                            1
                        } else {
                            -1
                        };
                    }
                }
                assert_eq!(total, 0);
            }
        }
    }
}
