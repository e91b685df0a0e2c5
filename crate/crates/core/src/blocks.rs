//! Points, blocks, splits and parallel classes.
//!
//! Points are 1-based. A [`Block`] is a small multiset over `{1..n}` in which
//! only point 1 may repeat: it is stored canonically as the multiplicity `r`
//! of point 1 together with the sorted set `S` of the remaining points.
//! Splits and families keep integer multiplicities keyed by canonical block;
//! nothing is stored by repetition.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

/// A point of the ground set `{1..n}`.
pub type Point = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BlockError {
    #[error("block size {size} exceeds 3")]
    TooLarge { size: usize },
    #[error("empty blocks are not stored")]
    Empty,
    #[error("point {0} is not allowed in the set part of a block")]
    BadPoint(Point),
    #[error("point {0} is repeated")]
    Repeated(Point),
    #[error("coefficient requested for r={r}, |S|={s_size} with r+|S| > 3")]
    Domain { r: u8, s_size: usize },
}

/// `{1^r} ∪ S` with `S ⊆ {2..}` and `1 ≤ r + |S| ≤ 3`.
///
/// The derived ordering is lexicographic in `(r, S)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Block {
    ones: u8,
    others: Vec<Point>,
}

impl Block {
    pub fn new(ones: u8, others: impl IntoIterator<Item = Point>) -> Result<Self, BlockError> {
        let mut others: Vec<Point> = others.into_iter().collect();
        others.sort_unstable();
        if let Some(&p) = others.iter().find(|&&p| p < 2) {
            return Err(BlockError::BadPoint(p));
        }
        if let Some(w) = others.windows(2).find(|w| w[0] == w[1]) {
            return Err(BlockError::Repeated(w[0]));
        }
        let size = usize::from(ones) + others.len();
        if size > 3 {
            return Err(BlockError::TooLarge { size });
        }
        if size == 0 {
            return Err(BlockError::Empty);
        }
        Ok(Self { ones, others })
    }

    /// `{1^r}` with no other points.
    pub fn ones_only(r: u8) -> Result<Self, BlockError> {
        Self::new(r, [])
    }

    /// Multiplicity of point 1, `μ_A(1)`.
    pub fn ones(&self) -> u8 {
        self.ones
    }

    /// The points other than 1, ascending.
    pub fn others(&self) -> &[Point] {
        &self.others
    }

    pub fn size(&self) -> usize {
        usize::from(self.ones) + self.others.len()
    }

    /// Multiplicity of `point` in this block.
    pub fn multiplicity(&self, point: Point) -> u32 {
        if point == 1 {
            u32::from(self.ones)
        } else {
            u32::from(self.others.binary_search(&point).is_ok())
        }
    }

    /// Largest point occurring in the block.
    pub fn max_point(&self) -> Point {
        self.others.last().copied().unwrap_or(if self.ones > 0 { 1 } else { 0 })
    }

    /// Replaces one copy of point 1 by `new_point`, which must exceed every
    /// point already present.
    pub fn promote(&self, new_point: Point) -> Option<Self> {
        if self.ones == 0 || new_point <= self.max_point() || new_point < 2 {
            return None;
        }
        let mut others = self.others.clone();
        others.push(new_point);
        Some(Self { ones: self.ones - 1, others })
    }

    /// The block as a plain set of points, if point 1 occurs at most once.
    pub fn to_set(&self) -> Option<Vec<Point>> {
        match self.ones {
            0 => Some(self.others.clone()),
            1 => {
                let mut set = Vec::with_capacity(self.others.len() + 1);
                set.push(1);
                set.extend_from_slice(&self.others);
                Some(set)
            }
            _ => None,
        }
    }

    /// Inverse of [`Block::to_set`].
    pub fn from_set(set: &[Point]) -> Result<Self, BlockError> {
        let ones = u8::from(set.contains(&1));
        if set.iter().filter(|&&p| p == 1).count() > 1 {
            return Err(BlockError::Repeated(1));
        }
        Self::new(ones, set.iter().copied().filter(|&p| p != 1))
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        let mut first = true;
        if self.ones > 0 {
            if self.ones == 1 {
                f.write_str("1")?;
            } else {
                write!(f, "1^{}", self.ones)?;
            }
            first = false;
        }
        for p in &self.others {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
            first = false;
        }
        f.write_str("}")
    }
}

/// Target multiplicity coefficient `a_S^r`, keyed by `r + |S|`: 0, 1, 3, 2.
pub fn a_coeff(r: u8, s_size: usize) -> Result<u64, BlockError> {
    match usize::from(r) + s_size {
        0 => Ok(0),
        1 => Ok(1),
        2 => Ok(3),
        3 => Ok(2),
        _ => Err(BlockError::Domain { r, s_size }),
    }
}

/// Binomial coefficient with `C(n, k) = 0` for `k > n`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for t in 0..k {
        acc = acc * u128::from(n - t) / u128::from(t + 1);
    }
    acc
}

/// A multiset of blocks.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Split {
    counts: BTreeMap<Block, u32>,
}

impl Split {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, block: Block, count: u32) {
        if count > 0 {
            *self.counts.entry(block).or_insert(0) += count;
        }
    }

    /// Removes one occurrence; returns `false` if the block was absent.
    pub fn remove_one(&mut self, block: &Block) -> bool {
        match self.counts.get_mut(block) {
            Some(c) if *c > 1 => {
                *c -= 1;
                true
            }
            Some(_) => {
                self.counts.remove(block);
                true
            }
            None => false,
        }
    }

    /// `μ_F(A)`.
    pub fn count(&self, block: &Block) -> u32 {
        self.counts.get(block).copied().unwrap_or(0)
    }

    /// Distinct blocks with their multiplicities, in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&Block, u32)> {
        self.counts.iter().map(|(b, &c)| (b, c))
    }

    /// Multiset union: multiplicities add.
    pub fn union(&self, other: &Split) -> Split {
        let mut out = self.clone();
        for (b, c) in other.iter() {
            out.insert(b.clone(), c);
        }
        out
    }

    /// `Σ_{A∈F} μ_A(j)`.
    pub fn point_count(&self, point: Point) -> u64 {
        self.iter().map(|(b, c)| u64::from(b.multiplicity(point)) * u64::from(c)).sum()
    }

    /// Total number of block occurrences.
    pub fn len(&self) -> u64 {
        self.counts.values().map(|&c| u64::from(c)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `Σ_A |A| · μ_F(A)`.
    pub fn mass(&self) -> u64 {
        self.iter().map(|(b, c)| b.size() as u64 * u64::from(c)).sum()
    }
}

impl FromIterator<(Block, u32)> for Split {
    fn from_iter<I: IntoIterator<Item = (Block, u32)>>(iter: I) -> Self {
        let mut s = Split::new();
        for (b, c) in iter {
            s.insert(b, c);
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("family of order {order} needs {expected} splits, got {got}")]
    WrongLength { order: usize, expected: usize, got: usize },
    #[error("ground size {ell} outside 1..={order}")]
    BadGround { ell: usize, order: usize },
}

/// The indexed family `F_1..F_{n²}` of splits over `{1..ℓ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitFamily {
    order: usize,
    ground: usize,
    splits: Vec<Split>,
}

impl SplitFamily {
    pub fn new(order: usize, ground: usize, splits: Vec<Split>) -> Result<Self, FamilyError> {
        if ground == 0 || ground > order {
            return Err(FamilyError::BadGround { ell: ground, order });
        }
        if splits.len() != order * order {
            return Err(FamilyError::WrongLength { order, expected: order * order, got: splits.len() });
        }
        Ok(Self { order, ground, splits })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// `ℓ`: blocks live over `{1..ℓ}`.
    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn splits(&self) -> &[Split] {
        &self.splits
    }

    /// Split `F_i`, 1-based.
    pub fn split(&self, i: usize) -> &Split {
        &self.splits[i - 1]
    }

    pub fn into_splits(self) -> Vec<Split> {
        self.splits
    }

    /// `μ_i^j`, 1-based split index.
    pub fn mu_point(&self, i: usize, j: Point) -> u64 {
        self.splits[i - 1].point_count(j)
    }

    /// `μ_S^r`.
    pub fn mu_block(&self, block: &Block) -> u64 {
        self.splits.iter().map(|s| u64::from(s.count(block))).sum()
    }

    /// Block counts summed over all splits.
    pub fn block_totals(&self) -> BTreeMap<Block, u64> {
        let mut totals = BTreeMap::new();
        for s in &self.splits {
            for (b, c) in s.iter() {
                *totals.entry(b.clone()).or_insert(0) += u64::from(c);
            }
        }
        totals
    }

    pub fn mass(&self) -> u64 {
        self.splits.iter().map(Split::mass).sum()
    }
}

/// Every block `S ∪ {1^r}` with `S ⊆ {2..ell}`, `|S| ≤ 3 − r`, `r` in
/// `ones`, in canonical order.
pub fn blocks_over(ell: usize, ones: impl IntoIterator<Item = u8>) -> Vec<Block> {
    let top = ell as Point;
    let mut out = Vec::new();
    for r in ones {
        let room = 3usize.saturating_sub(usize::from(r));
        for set in subsets_up_to(2, top, room) {
            if let Ok(b) = Block::new(r, set) {
                out.push(b);
            }
        }
    }
    out.sort();
    out
}

/// All subsets of `{lo..=hi}` of size at most `max_size`.
fn subsets_up_to(lo: Point, hi: Point, max_size: usize) -> Vec<Vec<Point>> {
    let mut out = vec![Vec::new()];
    let mut frontier: Vec<Vec<Point>> = vec![Vec::new()];
    for _ in 0..max_size {
        let mut next = Vec::new();
        for set in &frontier {
            let start = set.last().map_or(lo, |&p| p + 1);
            for p in start..=hi {
                let mut s = set.clone();
                s.push(p);
                next.push(s);
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProfileViolation {
    PointOne { split: usize, got: u64, want: u64 },
    Point { split: usize, point: Point, got: u64 },
    BlockCount { block: Block, got: u64, want: u128 },
    StrayBlock { block: Block, count: u64 },
    Shape(String),
}

impl fmt::Display for ProfileViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::PointOne { split, got, want } => {
                write!(f, "split {split}: point 1 occurs {got} times, expected {want}")
            }
            Self::Point { split, point, got } => {
                write!(f, "split {split}: point {point} occurs {got} times, expected 1")
            }
            Self::BlockCount { block, got, want } => {
                write!(f, "block {block} occurs {got} times, expected {want}")
            }
            Self::StrayBlock { block, count } => {
                write!(f, "block {block} ({count} copies) is not allowed at this stage")
            }
            Self::Shape(msg) => f.write_str(msg),
        }
    }
}

/// Outcome of [`check_family_profile`]; lists every violated condition.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ProfileReport {
    pub stage: usize,
    pub violations: Vec<ProfileViolation>,
}

impl ProfileReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ProfileReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "profile at stage {}: ok", self.stage);
        }
        writeln!(f, "profile at stage {}: {} violation(s)", self.stage, self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// Checks the inductive profile of a family at stage `ell`:
///
/// * `μ_i^1 = n − ℓ + 1` for every split,
/// * `μ_i^j = 1` for `2 ≤ j ≤ ℓ`,
/// * `μ_S^r = a_S^r · C(n − ℓ + 1, r)` for every admissible `(r, S)`,
///
/// and that no block mentions a point above `ℓ`.
pub fn check_family_profile(family: &SplitFamily, ell: usize) -> ProfileReport {
    let n = family.order();
    let mut report = ProfileReport { stage: ell, violations: Vec::new() };
    if ell == 0 || ell > n {
        report.violations.push(ProfileViolation::Shape(format!("stage {ell} outside 1..={n}")));
        return report;
    }
    if family.ground() != ell {
        report.violations.push(ProfileViolation::Shape(format!(
            "family is over {{1..{}}}, checked at stage {ell}",
            family.ground()
        )));
    }
    let rest = (n - ell + 1) as u64;
    let top = family.splits().iter().flat_map(Split::iter).map(|(b, _)| b.max_point()).max();
    let mut counts = vec![0u64; ell.max(top.unwrap_or(0) as usize) + 1];
    for (idx, split) in family.splits().iter().enumerate() {
        let i = idx + 1;
        counts.fill(0);
        for (b, c) in split.iter() {
            counts[1] += u64::from(b.ones()) * u64::from(c);
            for &p in b.others() {
                counts[p as usize] += u64::from(c);
            }
        }
        if counts[1] != rest {
            report.violations.push(ProfileViolation::PointOne { split: i, got: counts[1], want: rest });
        }
        for (j, &got) in counts.iter().enumerate().take(ell + 1).skip(2) {
            if got != 1 {
                report.violations.push(ProfileViolation::Point { split: i, point: j as Point, got });
            }
        }
    }
    let mut totals = family.block_totals();
    for block in blocks_over(ell, 0..=3) {
        let got = totals.remove(&block).unwrap_or(0);
        let coeff = a_coeff(block.ones(), block.others().len()).expect("admissible block");
        let want = u128::from(coeff) * binomial(rest, u64::from(block.ones()));
        if u128::from(got) != want {
            report.violations.push(ProfileViolation::BlockCount { block, got, want });
        }
    }
    for (block, count) in totals {
        report.violations.push(ProfileViolation::StrayBlock { block, count });
    }
    report
}

/// The block system `C(X,1) ∪ 3·C(X,2) ∪ 2·C(X,3)` on `X = {1..n}` as
/// `(set, multiplicity)` pairs, singletons first then pairs then triples,
/// each group lexicographic.
pub fn target_system(n: usize) -> Vec<(Vec<Point>, u32)> {
    let n = n as Point;
    let mut out = Vec::new();
    for i in 1..=n {
        out.push((vec![i], 1));
    }
    for i in 1..=n {
        for j in i + 1..=n {
            out.push((vec![i, j], 3));
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                out.push((vec![i, j, k], 2));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("expected {expected} classes, got {got}")]
    ClassCount { expected: usize, got: usize },
    #[error("class {class}: {reason}")]
    NotParallel { class: usize, reason: String },
    #[error("block {block:?} occurs {got} times, expected {want}")]
    Multiplicity { block: Vec<Point>, got: u32, want: u32 },
}

/// A set of pairwise disjoint blocks of size 1..=3 covering `{1..n}`.
///
/// Blocks are kept sorted internally and the block list is sorted, so two
/// classes with the same blocks compare equal.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParallelClass {
    blocks: Vec<Vec<Point>>,
}

impl ParallelClass {
    /// Canonicalizes without checking the parallel property.
    pub fn new(blocks: impl IntoIterator<Item = Vec<Point>>) -> Self {
        let mut blocks: Vec<Vec<Point>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        blocks.sort();
        Self { blocks }
    }

    pub fn blocks(&self) -> &[Vec<Point>] {
        &self.blocks
    }

    /// Checks that the blocks are true sets of size 1..=3 partitioning `{1..n}`.
    pub fn check(&self, n: usize) -> Result<(), String> {
        let mut seen = vec![false; n + 1];
        for b in &self.blocks {
            if b.is_empty() || b.len() > 3 {
                return Err(format!("block {b:?} has size {}", b.len()));
            }
            for &p in b {
                let idx = p as usize;
                if idx == 0 || idx > n {
                    return Err(format!("point {p} outside 1..={n}"));
                }
                if seen[idx] {
                    return Err(format!("point {p} covered twice"));
                }
                seen[idx] = true;
            }
        }
        if let Some(p) = (1..=n).find(|&p| !seen[p]) {
            return Err(format!("point {p} not covered"));
        }
        Ok(())
    }
}

impl fmt::Display for ParallelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            for p in b {
                write!(f, "{p}")?;
            }
        }
        f.write_str("}")
    }
}

/// `n²` parallel classes; class `k` (0-based) carries symbol `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    order: usize,
    classes: Vec<ParallelClass>,
}

impl Partition {
    /// Wraps classes without validation; see [`Partition::validate`].
    pub fn new(order: usize, classes: Vec<ParallelClass>) -> Self {
        Self { order, classes }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn classes(&self) -> &[ParallelClass] {
        &self.classes
    }

    /// The classes sorted, for comparison as an unordered multiset.
    pub fn sorted_classes(&self) -> Vec<ParallelClass> {
        let mut v = self.classes.clone();
        v.sort();
        v
    }

    pub fn same_multiset(&self, other: &Partition) -> bool {
        self.order == other.order && self.sorted_classes() == other.sorted_classes()
    }

    /// Checks the class count, that every class is parallel, and that the
    /// union of all classes is exactly the target block system.
    pub fn validate(&self) -> Result<(), PartitionError> {
        let n = self.order;
        if self.classes.len() != n * n {
            return Err(PartitionError::ClassCount { expected: n * n, got: self.classes.len() });
        }
        let mut counts: BTreeMap<&[Point], u32> = BTreeMap::new();
        for (k, class) in self.classes.iter().enumerate() {
            class.check(n).map_err(|reason| PartitionError::NotParallel { class: k + 1, reason })?;
            for b in class.blocks() {
                *counts.entry(b.as_slice()).or_insert(0) += 1;
            }
        }
        for (set, want) in target_system(n) {
            let got = counts.remove(set.as_slice()).unwrap_or(0);
            if got != want {
                return Err(PartitionError::Multiplicity { block: set, got, want });
            }
        }
        // Any leftover key has size 1..=3 and lies in {1..n}, so it would
        // already be in the target system.
        debug_assert!(counts.is_empty());
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn b(r: u8, s: &[Point]) -> Block {
        Block::new(r, s.iter().copied()).unwrap()
    }

    #[test]
    fn a_coeff_values() {
        assert_eq!(a_coeff(0, 0), Ok(0));
        assert_eq!(a_coeff(1, 0), Ok(1));
        assert_eq!(a_coeff(1, 1), Ok(3));
        assert_eq!(a_coeff(0, 2), Ok(3));
        assert_eq!(a_coeff(3, 0), Ok(2));
        assert_eq!(a_coeff(1, 2), Ok(2));
        assert!(matches!(a_coeff(2, 2), Err(BlockError::Domain { .. })));
    }

    #[test]
    fn block_validation() {
        assert_eq!(Block::new(0, []), Err(BlockError::Empty));
        assert_eq!(Block::new(2, [2, 3]), Err(BlockError::TooLarge { size: 4 }));
        assert_eq!(Block::new(1, [1]), Err(BlockError::BadPoint(1)));
        assert_eq!(Block::new(0, [4, 4]), Err(BlockError::Repeated(4)));
        let blk = b(1, &[5, 3]);
        assert_eq!(blk.others(), &[3, 5]);
        assert_eq!(blk.to_string(), "{1,3,5}");
        assert_eq!(b(3, &[]).to_string(), "{1^3}");
    }

    #[test]
    fn promote_replaces_a_one() {
        let blk = b(3, &[]);
        let p = blk.promote(2).unwrap();
        assert_eq!(p, b(2, &[2]));
        assert_eq!(p.size(), 3);
        assert!(b(0, &[2]).promote(3).is_none());
        assert!(b(1, &[4]).promote(3).is_none());
    }

    #[test]
    fn set_conversion() {
        assert_eq!(b(1, &[2, 4]).to_set(), Some(vec![1, 2, 4]));
        assert_eq!(b(0, &[2, 4]).to_set(), Some(vec![2, 4]));
        assert_eq!(b(2, &[4]).to_set(), None);
        assert_eq!(Block::from_set(&[1, 3]).unwrap(), b(1, &[3]));
    }

    #[test]
    fn split_counts_and_union() {
        // {{1,2,3}, {1}, {1^2}, {1,4}, {1^2,5}} over {1..5}
        let f: Split = [(b(1, &[2, 3]), 1), (b(1, &[]), 1), (b(2, &[]), 1), (b(1, &[4]), 1), (b(2, &[5]), 1)]
            .into_iter()
            .collect();
        assert_eq!(f.point_count(1), 7);
        assert_eq!(f.point_count(5), 1);
        assert_eq!(f.len(), 5);
        let g: Split = [(b(1, &[]), 2)].into_iter().collect();
        let u = f.union(&g);
        assert_eq!(u.count(&b(1, &[])), 3);
        assert_eq!(u.len(), 7);
    }

    #[test]
    fn target_system_counts() {
        let t1 = target_system(1);
        assert_eq!(t1, vec![(vec![1], 1)]);
        let mass =
            |t: &[(Vec<Point>, u32)]| -> u64 { t.iter().map(|(s, m)| s.len() as u64 * u64::from(*m)).sum() };
        let t2 = target_system(2);
        assert_eq!(t2.len(), 3);
        assert_eq!(mass(&t2), 8);
        let t5 = target_system(5);
        assert_eq!(t5.iter().filter(|(s, _)| s.len() == 1).count(), 5);
        assert_eq!(t5.iter().filter(|(s, m)| s.len() == 2 && *m == 3).count(), 10);
        assert_eq!(t5.iter().filter(|(s, m)| s.len() == 3 && *m == 2).count(), 10);
        assert_eq!(mass(&t5), 125);
        for n in 1..12 {
            assert_eq!(mass(&target_system(n)), (n as u64).pow(3));
        }
    }

    fn order_two_seed() -> SplitFamily {
        let s1: Split = [(b(1, &[]), 2)].into_iter().collect();
        let s2: Split = [(b(2, &[]), 1)].into_iter().collect();
        SplitFamily::new(2, 1, vec![s1, s2.clone(), s2.clone(), s2]).unwrap()
    }

    #[test]
    fn profile_order_two_seed_passes() {
        let fam = order_two_seed();
        let rep = check_family_profile(&fam, 1);
        assert!(rep.passed(), "{rep}");
        assert_eq!(fam.mu_block(&b(1, &[])), 2);
        assert_eq!(fam.mu_block(&b(2, &[])), 3);
    }

    #[test]
    fn profile_extra_block_fails() {
        let mut splits = order_two_seed().into_splits();
        splits[3].insert(b(1, &[]), 1);
        let fam = SplitFamily::new(2, 1, splits).unwrap();
        let rep = check_family_profile(&fam, 1);
        assert!(!rep.passed());
        assert!(rep
            .violations
            .iter()
            .any(|v| matches!(v, ProfileViolation::PointOne { split: 4, got: 3, want: 2 })));
        assert!(rep
            .violations
            .iter()
            .any(|v| matches!(v, ProfileViolation::BlockCount { got: 3, want: 2, .. })));
    }

    #[test]
    fn profile_stray_block_is_named() {
        let mut splits = order_two_seed().into_splits();
        splits[0] = [(b(1, &[]), 1), (b(0, &[2]), 1)].into_iter().collect();
        let fam = SplitFamily::new(2, 1, splits).unwrap();
        let rep = check_family_profile(&fam, 1);
        assert!(rep.violations.iter().any(|v| matches!(v, ProfileViolation::StrayBlock { count: 1, .. })));
    }

    #[test]
    fn blocks_over_counts() {
        // r=0: 1 + 3 + 3 nonempty subsets of {2,3,4} with size ≤ 3, plus {2,3,4}
        let all = blocks_over(4, 0..=3);
        let zero = all.iter().filter(|b| b.ones() == 0).count();
        assert_eq!(zero, 3 + 3 + 1);
        let one = all.iter().filter(|b| b.ones() == 1).count();
        assert_eq!(one, 1 + 3 + 3);
        assert_eq!(all.iter().filter(|b| b.ones() == 3).count(), 1);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn binomial_small() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(1, 2), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial(1 << 20, 3), (1u128 << 20) * ((1 << 20) - 1) * ((1 << 20) - 2) / 6);
    }

    #[test]
    fn partition_validation_errors() {
        let ok = Partition::new(
            2,
            vec![
                ParallelClass::new([vec![1], vec![2]]),
                ParallelClass::new([vec![1, 2]]),
                ParallelClass::new([vec![2, 1]]),
                ParallelClass::new([vec![1, 2]]),
            ],
        );
        assert_eq!(ok.validate(), Ok(()));
        let short = Partition::new(2, ok.classes()[..3].to_vec());
        assert!(matches!(short.validate(), Err(PartitionError::ClassCount { .. })));
        let mut bad = ok.classes().to_vec();
        bad[0] = ParallelClass::new([vec![1]]);
        assert!(matches!(
            Partition::new(2, bad).validate(),
            Err(PartitionError::NotParallel { class: 1, .. })
        ));
        let mut wrong = ok.classes().to_vec();
        wrong[1] = ParallelClass::new([vec![1], vec![2]]);
        assert!(matches!(Partition::new(2, wrong).validate(), Err(PartitionError::Multiplicity { .. })));
    }

    proptest! {
        #[test]
        fn canonical_form_is_order_independent(
            r in 0u8..=3,
            pts in proptest::collection::btree_set(2u32..20, 0..=3),
        ) {
            let mut v: Vec<Point> = pts.into_iter().collect();
            let forward = Block::new(r, v.clone());
            v.reverse();
            let backward = Block::new(r, v.clone());
            prop_assert_eq!(&forward, &backward);
            if let Ok(blk) = forward {
                prop_assert!(blk.size() >= 1 && blk.size() <= 3);
                prop_assert!(blk.others().windows(2).all(|w| w[0] < w[1]));
                prop_assert_eq!(blk.multiplicity(1), u32::from(r));
            } else {
                prop_assert!(usize::from(r) + v.len() > 3 || usize::from(r) + v.len() == 0);
            }
        }
    }
}
