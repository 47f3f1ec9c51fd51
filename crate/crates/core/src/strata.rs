//! Stratified bases: staged covers of a space by discrete families of
//! clopen blocks.
//!
//! A stage is a finite cover by pairwise disjoint blocks where every point
//! has a neighborhood meeting only its own block. A basis is a sequence of
//! stages, stored explicitly or produced on demand, that eventually puts any
//! two distinct points into different blocks. Validation spot-checks the
//! stage properties on a deterministic sample; the separating stage of a
//! pair is what the order engine consumes.

use std::fmt;
use std::sync::Arc;

use crate::space::{PiecewiseSet, Point, Space};

/// Index of a block within one stage's cover.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BlockId(pub usize);

impl fmt::Display for BlockId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A block of a cover: a piecewise set of ordinals, or a box with one
/// factor block per coordinate for product spaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockSet {
    Piecewise(PiecewiseSet),
    Rect(Vec<BlockSet>),
}

impl From<PiecewiseSet> for BlockSet {
    fn from(s: PiecewiseSet) -> Self {
        BlockSet::Piecewise(s)
    }
}

impl BlockSet {
    pub fn contains(&self, p: &Point) -> bool {
        match (self, p) {
            (BlockSet::Piecewise(s), Point::Ord(o)) => s.member(o),
            (BlockSet::Rect(bs), Point::Tuple(t)) => {
                bs.len() == t.len() && bs.iter().zip(t).all(|(b, q)| b.contains(q))
            }
            _ => false,
        }
    }

    pub fn as_piecewise(&self) -> Option<&PiecewiseSet> {
        match self {
            BlockSet::Piecewise(s) => Some(s),
            BlockSet::Rect(_) => None,
        }
    }

    pub fn is_subset_of(&self, other: &BlockSet) -> bool {
        match (self, other) {
            (BlockSet::Piecewise(a), BlockSet::Piecewise(b)) => a.is_subset_of(b),
            (BlockSet::Rect(a), BlockSet::Rect(b)) => {
                a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x.is_subset_of(y))
            }
            _ => false,
        }
    }

    /// True when `p` has a neighborhood inside this block, so the block is
    /// open at `p` and meets no other block of a disjoint cover near it.
    /// Boxes reduce to the factors coordinatewise.
    pub(crate) fn is_open_at(&self, space: &Space, p: &Point) -> bool {
        match (self, space, p) {
            (BlockSet::Piecewise(b), Space::Ordinal(x), Point::Ord(o)) => {
                !x.carrier().difference(b).accumulates_below(o)
            }
            (BlockSet::Rect(bs), Space::Product(xs), Point::Tuple(t)) => {
                bs.len() == t.len()
                    && bs.len() == xs.factor_count()
                    && bs.iter().zip(t).enumerate().all(|(i, (b, q))| match (b, q) {
                        (BlockSet::Piecewise(bp), Point::Ord(o)) => !xs
                            .factor(i)
                            .carrier()
                            .difference(bp)
                            .accumulates_below(o),
                        _ => false,
                    })
            }
            _ => false,
        }
    }
}

impl fmt::Display for BlockSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockSet::Piecewise(s) => write!(f, "{s}"),
            BlockSet::Rect(bs) => {
                for (i, b) in bs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " x ")?;
                    }
                    write!(f, "{b}")?;
                }
                Ok(())
            }
        }
    }
}

/// One stage of a basis: a finite family of blocks intended to cover the
/// space disjointly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscreteCover {
    pub stage: usize,
    pub blocks: Vec<BlockSet>,
}

impl DiscreteCover {
    /// First block containing `p`.
    pub fn block_index(&self, p: &Point) -> Option<BlockId> {
        self.blocks.iter().position(|b| b.contains(p)).map(BlockId)
    }

    pub fn blocks_containing(&self, p: &Point) -> Vec<BlockId> {
        self.blocks
            .iter()
            .enumerate()
            .filter(|(_, b)| b.contains(p))
            .map(|(i, _)| BlockId(i))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StrataError {
    #[error("stage {0} is not available in this basis")]
    StageUnavailable(usize),
    #[error("the basis has no stages")]
    Empty,
    #[error("line {line}: {message}")]
    BasisFile { line: usize, message: String },
}

/// Produces covers on demand; implementations memoize internally.
pub trait CoverSource: Send + Sync {
    fn cover(&self, stage: usize) -> Result<Arc<DiscreteCover>, StrataError>;

    /// Whether every stage refines the previous one blockwise.
    fn chain_refining(&self) -> bool;
}

/// How to treat stages whose blocks do not exhaust the space when loading:
/// `Strict` keeps them as written, `Permissive` appends the uncovered
/// remainder as a trailing block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoverMode {
    #[default]
    Strict,
    Permissive,
}

/// A staged basis, either a finite explicit list of covers or a lazy
/// generator.
#[derive(Clone)]
pub enum StratifiedBasis {
    Explicit(Vec<Arc<DiscreteCover>>),
    Lazy(Arc<dyn CoverSource>),
}

impl fmt::Debug for StratifiedBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StratifiedBasis::Explicit(cs) => write!(f, "StratifiedBasis::Explicit({} stages)", cs.len()),
            StratifiedBasis::Lazy(_) => write!(f, "StratifiedBasis::Lazy"),
        }
    }
}

impl StratifiedBasis {
    pub fn explicit(covers: Vec<DiscreteCover>) -> Self {
        let covers = covers
            .into_iter()
            .enumerate()
            .map(|(i, mut c)| {
                c.stage = i;
                Arc::new(c)
            })
            .collect();
        StratifiedBasis::Explicit(covers)
    }

    pub fn lazy<S: CoverSource + 'static>(source: S) -> Self {
        StratifiedBasis::Lazy(Arc::new(source))
    }

    /// Number of stages when finite.
    pub fn stage_limit(&self) -> Option<usize> {
        match self {
            StratifiedBasis::Explicit(cs) => Some(cs.len()),
            StratifiedBasis::Lazy(_) => None,
        }
    }

    pub fn chain_refining(&self) -> bool {
        match self {
            StratifiedBasis::Explicit(_) => false,
            StratifiedBasis::Lazy(src) => src.chain_refining(),
        }
    }

    pub fn cover(&self, stage: usize) -> Result<Arc<DiscreteCover>, StrataError> {
        match self {
            StratifiedBasis::Explicit(cs) if cs.is_empty() => Err(StrataError::Empty),
            StratifiedBasis::Explicit(cs) => cs
                .get(stage)
                .cloned()
                .ok_or(StrataError::StageUnavailable(stage)),
            StratifiedBasis::Lazy(src) => src.cover(stage),
        }
    }

    pub fn block_index(&self, stage: usize, p: &Point) -> Result<Option<BlockId>, StrataError> {
        Ok(self.cover(stage)?.block_index(p))
    }

    /// First stage at or below `cap` whose cover puts `x` and `y` into
    /// different blocks. `None` when no checked stage separates them.
    pub fn separation_stage(
        &self,
        x: &Point,
        y: &Point,
        cap: usize,
    ) -> Result<Option<(usize, BlockId, BlockId)>, StrataError> {
        let last = match self.stage_limit() {
            Some(n) => cap.min(n.saturating_sub(1)),
            None => cap,
        };
        for stage in 0..=last {
            let cover = self.cover(stage)?;
            if let (Some(bx), Some(by)) = (cover.block_index(x), cover.block_index(y)) {
                if bx != by {
                    return Ok(Some((stage, bx, by)));
                }
            }
        }
        Ok(None)
    }

    /// Block path of a point through stages `0..stages`.
    pub fn trace(&self, p: &Point, stages: usize) -> Result<PartitionTrace, StrataError> {
        let mut path = Vec::with_capacity(stages);
        for stage in 0..stages {
            path.push(self.cover(stage)?.block_index(p));
        }
        Ok(PartitionTrace { point: p.clone(), path })
    }

    /// Groups `points` by their block paths through stages `0..=stage`,
    /// cells in order of first appearance, members as indices into `points`.
    pub fn refinement_cells(
        &self,
        points: &[Point],
        stage: usize,
    ) -> Result<Vec<RefinementCell>, StrataError> {
        let mut cells: Vec<RefinementCell> = Vec::new();
        for (i, p) in points.iter().enumerate() {
            let key = self.trace(p, stage + 1)?.path;
            match cells.iter_mut().find(|c| c.key == key) {
                Some(c) => c.member_indices.push(i),
                None => cells.push(RefinementCell {
                    stage,
                    key,
                    member_indices: vec![i],
                }),
            }
        }
        Ok(cells)
    }

    /// Spot-checks stages `0..stages` on a sampled set of points: every
    /// point in exactly one block, each block open at each of its sampled
    /// points, and blockwise refinement when the basis claims it or
    /// `require_refining` asks for it.
    pub fn validate(
        &self,
        space: &Space,
        stages: usize,
        budget: usize,
        depth: u64,
        require_refining: bool,
    ) -> Result<ValidationReport, StrataError> {
        let stages_checked = match self.stage_limit() {
            Some(n) => stages.min(n),
            None => stages,
        };
        let points = space.sample(budget, depth);
        let refining = require_refining || self.chain_refining();
        let mut violations: Vec<ValidationViolation> = Vec::new();

        for stage in 0..stages_checked {
            let cover = self.cover(stage)?;
            let prev = if stage > 0 && refining {
                Some(self.cover(stage - 1)?)
            } else {
                None
            };
            for p in &points {
                let hits = cover.blocks_containing(p);
                match hits.as_slice() {
                    [] => violations.push(ValidationViolation::Uncovered {
                        stage,
                        witness: p.clone(),
                    }),
                    [only] => {
                        let block = &cover.blocks[only.0];
                        if !block.is_open_at(space, p) {
                            let v = ValidationViolation::NotClopen {
                                stage,
                                block: *only,
                                witness: p.clone(),
                            };
                            push_once(&mut violations, v);
                        }
                        if let Some(prev) = &prev {
                            if let Some(pb) = prev.block_index(p) {
                                if !block.is_subset_of(&prev.blocks[pb.0]) {
                                    let v = ValidationViolation::NotRefining {
                                        stage,
                                        block: *only,
                                        witness: p.clone(),
                                    };
                                    push_once(&mut violations, v);
                                }
                            }
                        }
                    }
                    [first, second, ..] => {
                        let v = ValidationViolation::Overlap {
                            stage,
                            first: *first,
                            second: *second,
                            witness: p.clone(),
                        };
                        push_once(&mut violations, v);
                    }
                }
            }
        }

        Ok(ValidationReport {
            stages_checked,
            points_checked: points.len(),
            violations,
        })
    }
}

/// Keeps one witness per violation identity.
fn push_once(violations: &mut Vec<ValidationViolation>, v: ValidationViolation) {
    let dup = violations.iter().any(|w| match (w, &v) {
        (
            ValidationViolation::Overlap { stage: s1, first: f1, second: g1, .. },
            ValidationViolation::Overlap { stage: s2, first: f2, second: g2, .. },
        ) => s1 == s2 && f1 == f2 && g1 == g2,
        (
            ValidationViolation::NotClopen { stage: s1, block: b1, .. },
            ValidationViolation::NotClopen { stage: s2, block: b2, .. },
        ) => s1 == s2 && b1 == b2,
        (
            ValidationViolation::NotRefining { stage: s1, block: b1, .. },
            ValidationViolation::NotRefining { stage: s2, block: b2, .. },
        ) => s1 == s2 && b1 == b2,
        _ => false,
    });
    if !dup {
        violations.push(v);
    }
}

/// The block path of one point through consecutive stages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionTrace {
    pub point: Point,
    pub path: Vec<Option<BlockId>>,
}

impl fmt::Display for PartitionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, b) in self.path.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            match b {
                Some(id) => write!(f, "{id}")?,
                None => write!(f, "-")?,
            }
        }
        Ok(())
    }
}

/// A cell of the common refinement of stages `0..=stage` over a point list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefinementCell {
    pub stage: usize,
    pub key: Vec<Option<BlockId>>,
    pub member_indices: Vec<usize>,
}

impl RefinementCell {
    pub fn key_string(&self) -> String {
        let parts: Vec<String> = self
            .key
            .iter()
            .map(|b| match b {
                Some(id) => id.to_string(),
                None => "-".to_string(),
            })
            .collect();
        parts.join(".")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationViolation {
    Overlap {
        stage: usize,
        first: BlockId,
        second: BlockId,
        witness: Point,
    },
    Uncovered {
        stage: usize,
        witness: Point,
    },
    NotClopen {
        stage: usize,
        block: BlockId,
        witness: Point,
    },
    NotRefining {
        stage: usize,
        block: BlockId,
        witness: Point,
    },
}

impl fmt::Display for ValidationViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationViolation::Overlap { stage, first, second, witness } => {
                write!(f, "stage {stage}: blocks {first} and {second} overlap at {witness}")
            }
            ValidationViolation::Uncovered { stage, witness } => {
                write!(f, "stage {stage}: point {witness} is uncovered")
            }
            ValidationViolation::NotClopen { stage, block, witness } => {
                write!(f, "stage {stage}: block {block} is not clopen at {witness}")
            }
            ValidationViolation::NotRefining { stage, block, witness } => {
                write!(
                    f,
                    "stage {stage}: block {block} does not refine the previous stage at {witness}"
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub stages_checked: usize,
    pub points_checked: usize,
    pub violations: Vec<ValidationViolation>,
}

impl ValidationReport {
    pub fn clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "checked {} stages on {} points: {} violations",
            self.stages_checked,
            self.points_checked,
            self.violations.len()
        )?;
        for v in &self.violations {
            write!(f, "\n{v}")?;
        }
        Ok(())
    }
}

/// Parses a staged basis from text: one stage per line, blocks separated by
/// `;`, each block a set expression. Blank lines and `#` comments are
/// skipped. The first stage must be a single block, which defines the
/// space. In permissive mode each stage gains the uncovered remainder as a
/// trailing block.
pub fn parse_basis(
    text: &str,
    mode: CoverMode,
) -> Result<(crate::space::OrdinalSubspace, StratifiedBasis), StrataError> {
    let mut covers: Vec<DiscreteCover> = Vec::new();
    let mut carrier: Option<PiecewiseSet> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut blocks = Vec::new();
        for part in line.split(';') {
            let set: PiecewiseSet = part.trim().parse().map_err(|e| StrataError::BasisFile {
                line: lineno + 1,
                message: format!("{e}"),
            })?;
            blocks.push(set);
        }
        match &carrier {
            None => {
                if blocks.len() != 1 {
                    return Err(StrataError::BasisFile {
                        line: lineno + 1,
                        message: "the first stage must be a single block".to_string(),
                    });
                }
                carrier = Some(blocks[0].clone());
            }
            Some(whole) => {
                if mode == CoverMode::Permissive {
                    let mut rest = whole.clone();
                    for b in &blocks {
                        rest = rest.difference(b);
                    }
                    if !rest.is_empty() {
                        blocks.push(rest);
                    }
                }
            }
        }
        covers.push(DiscreteCover {
            stage: covers.len(),
            blocks: blocks.into_iter().map(BlockSet::Piecewise).collect(),
        });
    }
    let carrier = carrier.ok_or(StrataError::Empty)?;
    let space = crate::space::OrdinalSubspace::new(carrier).map_err(|e| StrataError::BasisFile {
        line: 1,
        message: e.to_string(),
    })?;
    Ok((space, StratifiedBasis::explicit(covers)))
}
