//! Exhaustive searches used as independent ground truth on small inputs.
//!
//! None of these share code paths with the constructive pipeline beyond the
//! plain data types. Guards are hard limits: inputs beyond them are errors.

use thiserror::Error;

use crate::blocks::{binomial, target_system, ParallelClass, Partition, Point};
use crate::circulation::{check_conservation, FlowNetwork, IntegralCirculation};
use crate::equations::{SystemSolution, Triple};

pub const MAX_SYSTEM_ORDER: usize = 6;
pub const MAX_PARTITION_ORDER: usize = 4;
pub const MAX_FRACTIONAL_EDGES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("order {order} is outside the search guard 1..={limit}")]
    Guard { order: usize, limit: usize },
    #[error("network has {got} fractional edges, enumeration is limited to {limit}")]
    TooManyFractional { got: usize, limit: usize },
}

fn guard(order: usize, limit: usize) -> Result<(), OracleError> {
    if order == 0 || order > limit {
        Err(OracleError::Guard { order, limit })
    } else {
        Ok(())
    }
}

/// All solutions of the integer system up to index permutation, each with
/// its triples sorted ascending, at most `cap` of them.
pub fn brute_system(n: usize, cap: usize) -> Result<Vec<SystemSolution>, OracleError> {
    guard(n, MAX_SYSTEM_ORDER)?;
    let m = n as u64;
    let mut kinds = Vec::new();
    for c in 0..=m / 3 {
        for b in 0..=(m - 3 * c) / 2 {
            kinds.push(Triple::new(m - 3 * c - 2 * b, b, c));
        }
    }
    kinds.sort();
    let target = [m as u128, 3 * binomial(m, 2), 2 * binomial(m, 3)];
    let mut counts = vec![0u64; kinds.len()];
    let mut found = Vec::new();
    search_system(&kinds, 0, (m * m) as u128, target, &mut counts, cap, &mut found);
    Ok(found
        .into_iter()
        .map(|counts: Vec<u64>| {
            let triples =
                kinds.iter().zip(&counts).flat_map(|(&t, &k)| std::iter::repeat_n(t, k as usize)).collect();
            SystemSolution::new(n, triples)
        })
        .collect())
}

fn search_system(
    kinds: &[Triple],
    at: usize,
    slots: u128,
    left: [u128; 3],
    counts: &mut Vec<u64>,
    cap: usize,
    found: &mut Vec<Vec<u64>>,
) {
    if found.len() >= cap {
        return;
    }
    if at == kinds.len() {
        if slots == 0 && left == [0, 0, 0] {
            found.push(counts.clone());
        }
        return;
    }
    let t = kinds[at];
    let parts = [u128::from(t.a), u128::from(t.b), u128::from(t.c)];
    let mut max = slots;
    for (p, l) in parts.iter().zip(left) {
        if *p > 0 {
            max = max.min(l / p);
        }
    }
    for k in 0..=max {
        counts[at] = k as u64;
        let next = [left[0] - k * parts[0], left[1] - k * parts[1], left[2] - k * parts[2]];
        search_system(kinds, at + 1, slots - k, next, counts, cap, found);
    }
    counts[at] = 0;
}

/// Set partitions of `{1..n}` into blocks of size at most 3.
fn parallel_class_types(n: usize) -> Vec<Vec<Vec<Point>>> {
    fn go(p: Point, n: Point, cur: &mut Vec<Vec<Point>>, out: &mut Vec<Vec<Vec<Point>>>) {
        if p > n {
            out.push(cur.clone());
            return;
        }
        for k in 0..cur.len() {
            if cur[k].len() < 3 {
                cur[k].push(p);
                go(p + 1, n, cur, out);
                cur[k].pop();
            }
        }
        cur.push(vec![p]);
        go(p + 1, n, cur, out);
        cur.pop();
    }
    let mut out = Vec::new();
    go(1, n as Point, &mut Vec::new(), &mut out);
    out
}

/// A partition of the target block system into parallel classes, if one
/// exists, found by exhaustive search over class multiplicities.
pub fn brute_partition(n: usize) -> Result<Option<Partition>, OracleError> {
    guard(n, MAX_PARTITION_ORDER)?;
    let system = target_system(n);
    let index = |set: &[Point]| system.iter().position(|(s, _)| s.as_slice() == set).unwrap();
    let types = parallel_class_types(n);
    let members: Vec<Vec<usize>> = types.iter().map(|t| t.iter().map(|b| index(b)).collect()).collect();
    // last type index covering each block, for pruning
    let mut last = vec![None; system.len()];
    for (t, m) in members.iter().enumerate() {
        for &blk in m {
            last[blk] = Some(t);
        }
    }
    let mut demand: Vec<u32> = system.iter().map(|(_, m)| *m).collect();
    let mut counts = vec![0u32; types.len()];
    if !search_partition(&members, &last, 0, &mut demand, &mut counts) {
        return Ok(None);
    }
    let mut classes = Vec::new();
    for (t, &k) in counts.iter().enumerate() {
        for _ in 0..k {
            classes.push(ParallelClass::new(types[t].clone()));
        }
    }
    Ok(Some(Partition::new(n, classes)))
}

fn search_partition(
    members: &[Vec<usize>],
    last: &[Option<usize>],
    at: usize,
    demand: &mut [u32],
    counts: &mut [u32],
) -> bool {
    if at == members.len() {
        return demand.iter().all(|&d| d == 0);
    }
    let max = members[at].iter().map(|&b| demand[b]).min().unwrap_or(0);
    for k in (0..=max).rev() {
        for &b in &members[at] {
            demand[b] -= k;
        }
        // blocks whose last covering type is this one must now be exhausted
        let viable = members[at].iter().all(|&b| last[b] != Some(at) || demand[b] == 0);
        if viable {
            counts[at] = k;
            if search_partition(members, last, at + 1, demand, counts) {
                for &b in &members[at] {
                    demand[b] += k;
                }
                return true;
            }
        }
        for &b in &members[at] {
            demand[b] += k;
        }
    }
    counts[at] = 0;
    false
}

pub fn brute_partition_exists(n: usize) -> Result<bool, OracleError> {
    Ok(brute_partition(n)?.is_some())
}

/// Every integer circulation inside the floor/ceil band of `net`, in
/// lexicographic order of the fractional-edge choices, at most `cap`.
pub fn enumerate_roundings(net: &FlowNetwork, cap: usize) -> Result<Vec<IntegralCirculation>, OracleError> {
    let fractional: Vec<usize> = (0..net.edges().len()).filter(|&e| !net.is_integral(e)).collect();
    if fractional.len() > MAX_FRACTIONAL_EDGES {
        return Err(OracleError::TooManyFractional { got: fractional.len(), limit: MAX_FRACTIONAL_EDGES });
    }
    let mut values: Vec<u64> = (0..net.edges().len()).map(|e| net.floor(e)).collect();
    let mut balance = vec![0i128; net.vertex_count()];
    for (e, edge) in net.edges().iter().enumerate() {
        balance[edge.head] += i128::from(values[e]);
        balance[edge.tail] -= i128::from(values[e]);
    }
    // position in `fractional` after which a vertex is never touched again
    let mut settle = vec![None; net.vertex_count()];
    for (k, &e) in fractional.iter().enumerate() {
        let edge = net.edge(e);
        settle[edge.tail] = Some(k);
        settle[edge.head] = Some(k);
    }
    let mut settled_at: Vec<Vec<usize>> = vec![Vec::new(); fractional.len()];
    for (v, s) in settle.iter().enumerate() {
        match s {
            Some(k) => settled_at[*k].push(v),
            None if balance[v] != 0 => return Ok(Vec::new()),
            None => {}
        }
    }
    let mut out = Vec::new();
    let mut st = Enum { net, fractional: &fractional, settled_at: &settled_at, cap };
    st.go(0, &mut values, &mut balance, &mut out);
    debug_assert!(out.iter().all(|g| check_conservation(&net.with_integral_values(g)).passed()));
    Ok(out)
}

struct Enum<'a> {
    net: &'a FlowNetwork,
    fractional: &'a [usize],
    settled_at: &'a [Vec<usize>],
    cap: usize,
}

impl Enum<'_> {
    fn go(&mut self, k: usize, values: &mut [u64], balance: &mut [i128], out: &mut Vec<IntegralCirculation>) {
        if out.len() >= self.cap {
            return;
        }
        if k == self.fractional.len() {
            out.push(IntegralCirculation::new(values.to_vec()));
            return;
        }
        let e = self.fractional[k];
        let edge = self.net.edge(e);
        for bump in [0u64, 1] {
            values[e] += bump;
            balance[edge.head] += i128::from(bump);
            balance[edge.tail] -= i128::from(bump);
            if self.settled_at[k].iter().all(|&v| balance[v] == 0) {
                self.go(k + 1, values, balance, out);
            }
            values[e] -= bump;
            balance[edge.head] -= i128::from(bump);
            balance[edge.tail] += i128::from(bump);
        }
    }
}
