//! Inductive construction of the parallel-class partition.
//!
//! Stage `ℓ` holds `n²` splits over `{1..ℓ}` in which point 1 stands in for
//! the `n − ℓ + 1` points not yet placed. Each stage builds a circulation
//! whose values are multiples of `1 / (n − ℓ + 1)`, rounds it, and in every
//! split replaces one copy of point 1 by the new point `ℓ + 1` inside the
//! block the rounding selects. At `ℓ = n` every split is a parallel class.
//!
//! The profile of the family is rechecked eagerly after every stage.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::blocks::{
    a_coeff, binomial, blocks_over, check_family_profile, Block, FamilyError, ParallelClass, Partition,
    Point, ProfileReport, Split, SplitFamily,
};
use crate::circulation::{
    check_conservation, round_integral, CirculationError, ConservationReport, EdgeId, FlowNetwork,
    IntegralCirculation, VertexId, VertexRole,
};
use crate::convert::{partition_to_cube, ConvertError};
use crate::cube::LatinCube;
use crate::equations::{solve_system, validate_solution, EquationsError, SolutionViolation, SystemSolution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LiftError {
    #[error(transparent)]
    Equations(#[from] EquationsError),
    #[error("system solution is invalid: {0:?}")]
    BadSolution(Vec<SolutionViolation>),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("stage {stage} must satisfy 1 <= stage < {order}")]
    StageOutOfRange { stage: usize, order: usize },
    #[error("family profile violated:\n{0}")]
    Profile(ProfileReport),
    #[error("lift network at stage {stage} is not a circulation:\n{report}")]
    Conservation { stage: usize, report: ConservationReport },
    #[error("stage {stage}: sink inflow {got}/{denominator}, expected {want}")]
    SinkInflow { stage: usize, got: u128, want: u128, denominator: u64 },
    #[error(transparent)]
    Circulation(#[from] CirculationError),
    #[error("rounding sends {total} units out of split {split}, expected exactly 1")]
    MalformedRounding { split: usize, total: u64 },
    #[error("split {split} has no block {block} with a copy of point 1 to promote")]
    BadChoice { split: usize, block: Block },
    #[error("stage {stage}: block {block} promoted {got} times, quota {want}")]
    Quota { stage: usize, block: Block, got: u64, want: u128 },
    #[error("final split {split} is not a parallel class: block {block}")]
    FinalBlock { split: usize, block: Block },
    #[error(transparent)]
    Convert(#[from] ConvertError),
}

/// How block occurrences appear in the lift network.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum NetworkModel {
    /// One edge `v_i → v_S^r` per distinct block, carrying `mult · r / D`.
    #[default]
    Contracted,
    /// One node `v_i^A` per occurrence, with edges `v_i → v_i^A → v_S^r`.
    Expanded,
}

/// The seed family: `F_i = {1}^{a_i} ∪ {1²}^{b_i} ∪ {1³}^{c_i}`.
pub fn initial_family(sol: &SystemSolution) -> Result<SplitFamily, LiftError> {
    let violations = validate_solution(sol);
    if !violations.is_empty() {
        return Err(LiftError::BadSolution(violations));
    }
    let splits = sol
        .triples()
        .iter()
        .map(|t| {
            let mut s = Split::new();
            for (r, count) in [(1u8, t.a), (2, t.b), (3, t.c)] {
                let count = u32::try_from(count).expect("multiplicity fits in u32");
                s.insert(Block::ones_only(r).expect("1 <= r <= 3"), count);
            }
            s
        })
        .collect();
    Ok(SplitFamily::new(sol.order(), 1, splits)?)
}

/// A stage network together with the bookkeeping needed to read a rounding.
#[derive(Debug, Clone)]
pub struct LiftNetwork {
    stage: usize,
    order: usize,
    model: NetworkModel,
    network: FlowNetwork,
    source: VertexId,
    sink: VertexId,
    /// Per split: the edges leaving `v_i`, each with the block it promotes.
    selectors: Vec<Vec<(EdgeId, Block)>>,
    /// `v_S^r → τ` edges.
    class_edges: Vec<(Block, EdgeId)>,
}

impl LiftNetwork {
    pub fn stage(&self) -> usize {
        self.stage
    }

    pub fn model(&self) -> NetworkModel {
        self.model
    }

    pub fn network(&self) -> &FlowNetwork {
        &self.network
    }

    pub fn source(&self) -> VertexId {
        self.source
    }

    pub fn sink(&self) -> VertexId {
        self.sink
    }

    pub fn selectors(&self, split: usize) -> &[(EdgeId, Block)] {
        &self.selectors[split - 1]
    }

    pub fn class_edges(&self) -> &[(Block, EdgeId)] {
        &self.class_edges
    }

    /// Numerator of the flow entering `τ`; the value is this over `D`.
    pub fn sink_inflow(&self) -> u128 {
        self.network.in_numerator(self.sink)
    }

    /// `n² · D`, the numerator the sink inflow must equal.
    pub fn expected_sink_inflow(&self) -> u128 {
        let n = self.order as u128;
        n * n * u128::from(self.network.denominator())
    }
}

/// The per-occurrence network of record.
pub fn build_lift_network(family: &SplitFamily, stage: usize) -> Result<LiftNetwork, LiftError> {
    build_network(family, stage, NetworkModel::Expanded)
}

/// The network with occurrences of equal blocks merged into one edge.
pub fn build_contracted_network(family: &SplitFamily, stage: usize) -> Result<LiftNetwork, LiftError> {
    build_network(family, stage, NetworkModel::Contracted)
}

pub fn build_network(
    family: &SplitFamily,
    stage: usize,
    model: NetworkModel,
) -> Result<LiftNetwork, LiftError> {
    let n = family.order();
    if stage == 0 || stage >= n {
        return Err(LiftError::StageOutOfRange { stage, order: n });
    }
    let profile = check_family_profile(family, stage);
    if !profile.passed() {
        return Err(LiftError::Profile(profile));
    }
    let denom = (n - stage + 1) as u64;
    let remaining = (n - stage) as u64;
    let mut net = FlowNetwork::new(denom)?;
    let source = net.add_vertex(VertexRole::Source);
    let sink = net.add_vertex(VertexRole::Sink);

    let mut class_nodes = BTreeMap::new();
    for block in blocks_over(stage, 1..=3) {
        let v = net.add_vertex(VertexRole::ClassNode(block.clone()));
        class_nodes.insert(block, v);
    }

    let mut selectors = Vec::with_capacity(family.splits().len());
    for (idx, split) in family.splits().iter().enumerate() {
        let i = idx + 1;
        let vi = net.add_vertex(VertexRole::SplitNode(i));
        net.add_edge(source, vi, denom)?;
        let mut sel = Vec::new();
        for (block, count) in split.iter().filter(|(b, _)| b.ones() > 0) {
            let r = u64::from(block.ones());
            let class = class_nodes[block];
            match model {
                NetworkModel::Contracted => {
                    let e = net.add_edge(vi, class, u64::from(count) * r)?;
                    sel.push((e, block.clone()));
                }
                NetworkModel::Expanded => {
                    for _ in 0..count {
                        let va = net.add_vertex(VertexRole::BlockNode { split: i, block: block.clone() });
                        let e = net.add_edge(vi, va, r)?;
                        net.add_edge(va, class, r)?;
                        sel.push((e, block.clone()));
                    }
                }
            }
        }
        selectors.push(sel);
    }

    let mut class_edges = Vec::with_capacity(class_nodes.len());
    for (block, &v) in &class_nodes {
        let r = block.ones();
        let coeff = a_coeff(r, block.others().len()).expect("admissible block");
        let quota = u128::from(coeff) * binomial(remaining, u64::from(r) - 1);
        let numer = u64::try_from(quota * u128::from(denom)).expect("edge value fits in u64");
        let e = net.add_edge(v, sink, numer)?;
        class_edges.push((block.clone(), e));
    }
    let total = (n * n) as u64 * denom;
    net.add_edge(sink, source, total)?;

    Ok(LiftNetwork { stage, order: n, model, network: net, source, sink, selectors, class_edges })
}

/// For each split, the block whose copy of point 1 is promoted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftChoice {
    blocks: Vec<Block>,
}

impl LiftChoice {
    pub fn new(blocks: Vec<Block>) -> Self {
        Self { blocks }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }
}

/// Reads the unit leaving each `v_i` in `g`.
pub fn extract_choice(net: &LiftNetwork, g: &IntegralCirculation) -> Result<LiftChoice, LiftError> {
    let mut blocks = Vec::with_capacity(net.selectors.len());
    for (idx, sel) in net.selectors.iter().enumerate() {
        let total: u64 = sel.iter().map(|&(e, _)| g.get(e)).sum();
        let chosen = sel.iter().find(|&&(e, _)| g.get(e) > 0);
        match chosen {
            Some((_, block)) if total == 1 => blocks.push(block.clone()),
            _ => return Err(LiftError::MalformedRounding { split: idx + 1, total }),
        }
    }
    Ok(LiftChoice { blocks })
}

/// Number of promotions of each block, keyed like the class nodes.
pub fn promotion_counts(choice: &LiftChoice) -> BTreeMap<Block, u64> {
    let mut counts = BTreeMap::new();
    for b in &choice.blocks {
        *counts.entry(b.clone()).or_insert(0) += 1;
    }
    counts
}

/// Replaces, in every split, one copy of point 1 in the chosen block by
/// `ℓ + 1`.
pub fn apply_lift(family: &SplitFamily, choice: &LiftChoice) -> Result<SplitFamily, LiftError> {
    let stage = family.ground();
    let new_point = (stage + 1) as Point;
    if choice.blocks.len() != family.splits().len() {
        return Err(LiftError::Family(FamilyError::WrongLength {
            order: family.order(),
            expected: family.splits().len(),
            got: choice.blocks.len(),
        }));
    }
    let mut splits = Vec::with_capacity(family.splits().len());
    for (idx, (split, block)) in family.splits().iter().zip(&choice.blocks).enumerate() {
        let bad = || LiftError::BadChoice { split: idx + 1, block: block.clone() };
        let promoted = block.promote(new_point).ok_or_else(bad)?;
        let mut next = split.clone();
        if !next.remove_one(block) {
            return Err(bad());
        }
        next.insert(promoted, 1);
        splits.push(next);
    }
    Ok(SplitFamily::new(family.order(), stage + 1, splits)?)
}

/// Rounds the stage network and applies the resulting choice, checking the
/// class-node quotas along the way.
pub fn lift_once(net: &LiftNetwork, family: &SplitFamily) -> Result<SplitFamily, LiftError> {
    let g = round_integral(net.network())?;
    lift_with(net, family, &g)
}

/// As [`lift_once`] with a given rounding of `net`.
pub fn lift_with(
    net: &LiftNetwork,
    family: &SplitFamily,
    g: &IntegralCirculation,
) -> Result<SplitFamily, LiftError> {
    let choice = extract_choice(net, g)?;
    let counts = promotion_counts(&choice);
    let d = net.network().denominator();
    for (block, e) in net.class_edges() {
        let got = counts.get(block).copied().unwrap_or(0);
        let want = u128::from(net.network().edge(*e).numerator / d);
        if u128::from(got) != want {
            return Err(LiftError::Quota { stage: net.stage(), block: block.clone(), got, want });
        }
    }
    apply_lift(family, &choice)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ConstructOptions {
    /// Nonzero seeds shuffle the split order before every stage.
    pub seed: u64,
    pub model: NetworkModel,
    /// Keep the family of every stage in the returned [`Construction`].
    pub keep_families: bool,
}

/// Diagnostics for one lift stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageRecord {
    pub stage: usize,
    pub vertices: usize,
    pub edges: usize,
    pub conservation: ConservationReport,
    pub sink_inflow: u128,
    pub expected_sink_inflow: u128,
    pub denominator: u64,
}

#[derive(Debug, Clone)]
pub struct Construction {
    pub partition: Partition,
    pub stages: Vec<StageRecord>,
    /// Profile report of the family at every `ℓ = 1..=n`.
    pub profiles: Vec<ProfileReport>,
    /// Families at `ℓ = 1..=n`, when requested.
    pub families: Vec<SplitFamily>,
}

pub fn construct_partition(n: usize) -> Result<Partition, LiftError> {
    Ok(construct_partition_with(n, &ConstructOptions::default())?.partition)
}

pub fn construct_partition_with(n: usize, opts: &ConstructOptions) -> Result<Construction, LiftError> {
    let sol = solve_system(n)?;
    let mut family = initial_family(&sol)?;
    let mut rng = (opts.seed != 0).then(|| ChaCha8Rng::seed_from_u64(opts.seed));
    let mut stages = Vec::with_capacity(n.saturating_sub(1));
    let mut profiles = Vec::with_capacity(n);
    let mut families = Vec::new();

    for stage in 1..n {
        let profile = check_family_profile(&family, stage);
        if !profile.passed() {
            return Err(LiftError::Profile(profile));
        }
        profiles.push(profile);
        if let Some(rng) = rng.as_mut() {
            let mut splits = family.into_splits();
            splits.shuffle(rng);
            family = SplitFamily::new(n, stage, splits)?;
        }
        if opts.keep_families {
            families.push(family.clone());
        }
        let net = build_network(&family, stage, opts.model)?;
        let conservation = check_conservation(net.network());
        if !conservation.passed() {
            return Err(LiftError::Conservation { stage, report: conservation });
        }
        let (got, want) = (net.sink_inflow(), net.expected_sink_inflow());
        if got != want {
            return Err(LiftError::SinkInflow { stage, got, want, denominator: net.network().denominator() });
        }
        stages.push(StageRecord {
            stage,
            vertices: net.network().vertex_count(),
            edges: net.network().edges().len(),
            conservation,
            sink_inflow: got,
            expected_sink_inflow: want,
            denominator: net.network().denominator(),
        });
        family = lift_once(&net, &family)?;
    }

    let profile = check_family_profile(&family, n);
    if !profile.passed() {
        return Err(LiftError::Profile(profile));
    }
    profiles.push(profile);
    if opts.keep_families {
        families.push(family.clone());
    }
    let partition = read_partition(&family)?;
    Ok(Construction { partition, stages, profiles, families })
}

/// Turns a family at `ℓ = n` into parallel classes: `(1, S) → S ∪ {1}`,
/// `(0, S) → S`.
pub fn read_partition(family: &SplitFamily) -> Result<Partition, LiftError> {
    let n = family.order();
    let mut classes = Vec::with_capacity(family.splits().len());
    for (idx, split) in family.splits().iter().enumerate() {
        let mut blocks = Vec::new();
        for (block, count) in split.iter() {
            let set = block
                .to_set()
                .filter(|_| count == 1)
                .ok_or_else(|| LiftError::FinalBlock { split: idx + 1, block: block.clone() })?;
            blocks.push(set);
        }
        classes.push(ParallelClass::new(blocks));
    }
    let partition = Partition::new(n, classes);
    partition.validate().map_err(ConvertError::from)?;
    Ok(partition)
}

pub fn construct_cube(n: usize) -> Result<LatinCube, LiftError> {
    construct_cube_with(n, &ConstructOptions::default())
}

pub fn construct_cube_with(n: usize, opts: &ConstructOptions) -> Result<LatinCube, LiftError> {
    let built = construct_partition_with(n, opts)?;
    Ok(partition_to_cube(&built.partition)?)
}
