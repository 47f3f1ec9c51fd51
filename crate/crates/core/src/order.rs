//! The linear order induced by a stratified basis.
//!
//! Two distinct points are compared at the first stage whose cover puts
//! them into different blocks; the block ranks there, after an optional
//! per-stage permutation, decide the direction. The checks in this module
//! confirm on sampled points that the comparator is a linear order, that
//! it is coherent across stages, and that refinement cells are convex. The
//! brute-force relation builder reproduces the order on tiny systems by a
//! separate route, through containment masks and maximal families with
//! nonempty intersection, and serves as the oracle the comparator is
//! tested against.

use std::cmp::Ordering;
use std::fmt;

use crate::space::{PiecewiseSet, Point};
use crate::strata::{BlockId, PartitionTrace, StrataError, StratifiedBasis};

/// How block indices translate to ranks at each stage. `Permuted` carries
/// one permutation per stage, identity beyond the listed ones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockOrderPolicy {
    Canonical,
    Permuted(Vec<Vec<usize>>),
}

impl BlockOrderPolicy {
    pub fn validate(&self) -> Result<(), OrderError> {
        if let BlockOrderPolicy::Permuted(perms) = self {
            for (stage, perm) in perms.iter().enumerate() {
                let mut seen = vec![false; perm.len()];
                for &r in perm {
                    if r >= perm.len() || seen[r] {
                        return Err(OrderError::InvalidPolicy { stage });
                    }
                    seen[r] = true;
                }
            }
        }
        Ok(())
    }

    fn rank(&self, stage: usize, block: BlockId) -> Result<usize, OrderError> {
        match self {
            BlockOrderPolicy::Canonical => Ok(block.0),
            BlockOrderPolicy::Permuted(perms) => match perms.get(stage) {
                None => Ok(block.0),
                Some(perm) => perm
                    .get(block.0)
                    .copied()
                    .ok_or(OrderError::InvalidPolicy { stage }),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrderError {
    #[error("stage {stage}: the block permutation is not a bijection onto the cover")]
    InvalidPolicy { stage: usize },
    #[error("the system is too large for the brute-force relation builder")]
    TooLarge,
    #[error("points {x} and {y} are not separated within {stages_tried} stages")]
    Unresolved {
        x: Point,
        y: Point,
        stages_tried: usize,
    },
    #[error("stage {stage}: point {point} is not in exactly one block")]
    NotAPartition { stage: usize, point: Point },
    #[error(transparent)]
    Strata(#[from] StrataError),
}

/// Where and how a comparison was decided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderDiagnostics {
    pub stage: usize,
    pub x_block: BlockId,
    pub y_block: BlockId,
    pub x_rank: usize,
    pub y_rank: usize,
    pub x_path: PartitionTrace,
    pub y_path: PartitionTrace,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    Less(OrderDiagnostics),
    Greater(OrderDiagnostics),
    Unresolved { stages_tried: usize },
}

impl Comparison {
    pub fn as_ordering(&self) -> Option<Ordering> {
        match self {
            Comparison::Equal => Some(Ordering::Equal),
            Comparison::Less(_) => Some(Ordering::Less),
            Comparison::Greater(_) => Some(Ordering::Greater),
            Comparison::Unresolved { .. } => None,
        }
    }

    pub fn diagnostics(&self) -> Option<&OrderDiagnostics> {
        match self {
            Comparison::Less(d) | Comparison::Greater(d) => Some(d),
            _ => None,
        }
    }
}

/// A basis with a rank policy and a stage cap: everything needed to
/// compare points.
#[derive(Debug, Clone)]
pub struct OrderWitness {
    basis: StratifiedBasis,
    policy: BlockOrderPolicy,
    stage_cap: usize,
}

impl OrderWitness {
    pub fn new(
        basis: StratifiedBasis,
        policy: BlockOrderPolicy,
        stage_cap: usize,
    ) -> Result<Self, OrderError> {
        policy.validate()?;
        Ok(OrderWitness { basis, policy, stage_cap })
    }

    pub fn basis(&self) -> &StratifiedBasis {
        &self.basis
    }

    pub fn stage_cap(&self) -> usize {
        self.stage_cap
    }

    /// Stages the comparator actually examines.
    fn stages_effective(&self) -> usize {
        match self.basis.stage_limit() {
            Some(n) => n.min(self.stage_cap + 1),
            None => self.stage_cap + 1,
        }
    }

    /// Compares two points. Identical points are equal; distinct points are
    /// decided at their first separating stage, or reported unresolved when
    /// no stage up to the cap separates them.
    pub fn compare(&self, x: &Point, y: &Point) -> Result<Comparison, OrderError> {
        if x == y {
            return Ok(Comparison::Equal);
        }
        match self.basis.separation_stage(x, y, self.stage_cap)? {
            None => Ok(Comparison::Unresolved {
                stages_tried: self.stages_effective(),
            }),
            Some((stage, bx, by)) => {
                let x_rank = self.policy.rank(stage, bx)?;
                let y_rank = self.policy.rank(stage, by)?;
                if x_rank == y_rank {
                    return Err(OrderError::InvalidPolicy { stage });
                }
                let diag = OrderDiagnostics {
                    stage,
                    x_block: bx,
                    y_block: by,
                    x_rank,
                    y_rank,
                    x_path: self.basis.trace(x, stage + 1)?,
                    y_path: self.basis.trace(y, stage + 1)?,
                };
                Ok(if x_rank < y_rank {
                    Comparison::Less(diag)
                } else {
                    Comparison::Greater(diag)
                })
            }
        }
    }

    /// Sorts points ascending; duplicates stay adjacent. Errors out on the
    /// first pair the basis cannot separate within the cap.
    pub fn sort_points(&self, points: &[Point]) -> Result<Vec<Point>, OrderError> {
        let mut out: Vec<Point> = Vec::with_capacity(points.len());
        for p in points {
            let mut idx = out.len();
            for (i, q) in out.iter().enumerate() {
                match self.compare(p, q)? {
                    Comparison::Less(_) => {
                        idx = i;
                        break;
                    }
                    Comparison::Equal => {
                        idx = i + 1;
                        break;
                    }
                    Comparison::Greater(_) => {}
                    Comparison::Unresolved { stages_tried } => {
                        return Err(OrderError::Unresolved {
                            x: p.clone(),
                            y: q.clone(),
                            stages_tried,
                        });
                    }
                }
            }
            out.insert(idx, p.clone());
        }
        Ok(out)
    }

    /// Checks the order axioms on all pairs and triples of `points`:
    /// reflexive comparisons are equal (A1), swapping arguments flips the
    /// result (A2), strict comparisons chain transitively (A3), distinct
    /// points are always decided (A4), and a pair separated earlier than
    /// another pair through a common point is decided at that earlier stage
    /// with the same direction (A5).
    pub fn check_axioms(&self, points: &[Point]) -> Result<AxiomReport, OrderError> {
        #[derive(Clone, Copy, PartialEq)]
        enum Rel {
            Eq,
            Lt(usize),
            Gt(usize),
            Un,
        }
        impl Rel {
            fn stage(self) -> Option<usize> {
                match self {
                    Rel::Lt(s) | Rel::Gt(s) => Some(s),
                    _ => None,
                }
            }
        }

        let n = points.len();
        let stages = self.stages_effective();
        let mut sigs: Vec<Vec<Option<BlockId>>> = Vec::with_capacity(n);
        for p in points {
            sigs.push(self.basis.trace(p, stages)?.path);
        }

        let mut rel = vec![vec![Rel::Eq; n]; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let mut r = Rel::Un;
                if points[i] == points[j] {
                    r = Rel::Eq;
                } else {
                    for (s, pair) in sigs[i].iter().zip(&sigs[j]).enumerate() {
                        if let (Some(bi), Some(bj)) = pair {
                            if bi != bj {
                                let ri = self.policy.rank(s, *bi)?;
                                let rj = self.policy.rank(s, *bj)?;
                                r = if ri < rj { Rel::Lt(s) } else { Rel::Gt(s) };
                                break;
                            }
                        }
                    }
                }
                rel[i][j] = r;
                rel[j][i] = match r {
                    Rel::Lt(s) => Rel::Gt(s),
                    Rel::Gt(s) => Rel::Lt(s),
                    other => other,
                };
            }
        }

        let mut violations: Vec<AxiomViolation> = Vec::new();

        for p in points {
            if self.compare(p, p)? != Comparison::Equal {
                violations.push(AxiomViolation {
                    axiom: 1,
                    witnesses: vec![p.clone()],
                    detail: "a point does not compare equal to itself".to_string(),
                });
            }
        }

        // A2 doubles as a cross-check of the comparator against the
        // signature table built above.
        let mut pairs_checked = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                pairs_checked += 1;
                let fwd = self.compare(&points[i], &points[j])?;
                let bwd = self.compare(&points[j], &points[i])?;
                let mirrored = matches!(
                    (&fwd, &bwd),
                    (Comparison::Equal, Comparison::Equal)
                        | (Comparison::Less(_), Comparison::Greater(_))
                        | (Comparison::Greater(_), Comparison::Less(_))
                        | (Comparison::Unresolved { .. }, Comparison::Unresolved { .. })
                );
                let matches_table = match (&fwd, rel[i][j]) {
                    (Comparison::Equal, Rel::Eq) => true,
                    (Comparison::Less(d), Rel::Lt(s)) => d.stage == s,
                    (Comparison::Greater(d), Rel::Gt(s)) => d.stage == s,
                    (Comparison::Unresolved { .. }, Rel::Un) => true,
                    _ => false,
                };
                if !mirrored || !matches_table {
                    violations.push(AxiomViolation {
                        axiom: 2,
                        witnesses: vec![points[i].clone(), points[j].clone()],
                        detail: "swapped comparison does not mirror".to_string(),
                    });
                }
                if points[i] != points[j] && rel[i][j] == Rel::Un {
                    violations.push(AxiomViolation {
                        axiom: 4,
                        witnesses: vec![points[i].clone(), points[j].clone()],
                        detail: format!("distinct points undecided within {stages} stages"),
                    });
                }
            }
        }

        let mut triples_checked = 0;
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    triples_checked += 1;
                    if matches!(rel[i][j], Rel::Lt(_))
                        && matches!(rel[j][k], Rel::Lt(_))
                        && !matches!(rel[i][k], Rel::Lt(_))
                    {
                        violations.push(AxiomViolation {
                            axiom: 3,
                            witnesses: vec![
                                points[i].clone(),
                                points[j].clone(),
                                points[k].clone(),
                            ],
                            detail: "strict comparisons fail to chain".to_string(),
                        });
                    }
                    // z = i, x = j, y = k.
                    if let (Some(szx), Some(sxy)) = (rel[i][j].stage(), rel[j][k].stage()) {
                        if szx < sxy {
                            let coherent = match (rel[i][j], rel[i][k]) {
                                (Rel::Lt(s1), Rel::Lt(s2)) | (Rel::Gt(s1), Rel::Gt(s2)) => {
                                    s1 == s2
                                }
                                _ => false,
                            };
                            if !coherent {
                                violations.push(AxiomViolation {
                                    axiom: 5,
                                    witnesses: vec![
                                        points[i].clone(),
                                        points[j].clone(),
                                        points[k].clone(),
                                    ],
                                    detail: "early separation does not carry over".to_string(),
                                });
                            }
                        }
                    }
                }
            }
        }

        Ok(AxiomReport {
            points_checked: n,
            pairs_checked,
            triples_checked,
            violations,
        })
    }

    /// Sorts the points, then checks that every refinement cell through
    /// each stage occupies a contiguous run. With `block_level` set, the
    /// blocks of each stage are checked the same way on their own, which
    /// only chain-refining bases promise.
    pub fn check_convexity(
        &self,
        points: &[Point],
        stages: usize,
        block_level: bool,
    ) -> Result<ConvexityReport, OrderError> {
        let sorted = self.sort_points(points)?;
        let stages = stages.min(self.stages_effective());
        let mut checks_performed = 0usize;
        let mut violations: Vec<ConvexityViolation> = Vec::new();

        let record = |scope: ConvexityScope,
                          stage: usize,
                          key: String,
                          indices: &[usize],
                          checks: &mut usize,
                          violations: &mut Vec<ConvexityViolation>| {
            *checks += indices.len();
            if let Some(gap) = indices.windows(2).find(|w| w[1] != w[0] + 1) {
                violations.push(ConvexityViolation {
                    stage,
                    scope,
                    key,
                    witness: sorted[gap[0] + 1].clone(),
                });
            }
        };

        for s in 0..stages {
            for cell in self.basis.refinement_cells(&sorted, s)? {
                record(
                    ConvexityScope::Cell,
                    s,
                    cell.key_string(),
                    &cell.member_indices,
                    &mut checks_performed,
                    &mut violations,
                );
            }
            if block_level {
                let cover = self.basis.cover(s)?;
                let mut by_block: Vec<(BlockId, Vec<usize>)> = Vec::new();
                for (i, p) in sorted.iter().enumerate() {
                    if let Some(b) = cover.block_index(p) {
                        match by_block.iter_mut().find(|(id, _)| *id == b) {
                            Some((_, v)) => v.push(i),
                            None => by_block.push((b, vec![i])),
                        }
                    }
                }
                for (b, indices) in by_block {
                    record(
                        ConvexityScope::Block,
                        s,
                        b.to_string(),
                        &indices,
                        &mut checks_performed,
                        &mut violations,
                    );
                }
            }
        }

        Ok(ConvexityReport {
            stages_checked: stages,
            points_checked: sorted.len(),
            checks_performed,
            violations,
        })
    }

    /// For each case, looks for a stage whose block around the point fits
    /// inside the given neighborhood. Succeeding on every case over a rich
    /// family of neighborhoods is what makes the stages a basis rather than
    /// a mere separating family.
    pub fn check_basis_property(
        &self,
        cases: &[(Point, PiecewiseSet)],
    ) -> Result<BasisPropertyReport, OrderError> {
        let stages = self.stages_effective();
        let mut deepest_stage = 0;
        let mut failures = Vec::new();
        for (p, nbhd) in cases {
            let mut found = false;
            for s in 0..stages {
                let cover = self.basis.cover(s)?;
                let Some(b) = cover.block_index(p) else {
                    continue;
                };
                if let Some(set) = cover.blocks[b.0].as_piecewise() {
                    if set.is_subset_of(nbhd) {
                        deepest_stage = deepest_stage.max(s);
                        found = true;
                        break;
                    }
                }
            }
            if !found {
                failures.push(p.clone());
            }
        }
        Ok(BasisPropertyReport {
            cases_checked: cases.len(),
            deepest_stage,
            failures,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomViolation {
    pub axiom: usize,
    pub witnesses: Vec<Point>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub points_checked: usize,
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A1..A5: {} violations", self.violations.len())?;
        for v in &self.violations {
            let pts: Vec<String> = v.witnesses.iter().map(|p| p.to_string()).collect();
            write!(f, "\nA{} at {}: {}", v.axiom, pts.join(", "), v.detail)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvexityScope {
    Cell,
    Block,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexityViolation {
    pub stage: usize,
    pub scope: ConvexityScope,
    pub key: String,
    pub witness: Point,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexityReport {
    pub stages_checked: usize,
    pub points_checked: usize,
    pub checks_performed: usize,
    pub violations: Vec<ConvexityViolation>,
}

impl ConvexityReport {
    pub fn clean(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ConvexityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "convexity: {} checks over {} stages on {} points, {} violations",
            self.checks_performed,
            self.stages_checked,
            self.points_checked,
            self.violations.len()
        )?;
        for v in &self.violations {
            let scope = match v.scope {
                ConvexityScope::Cell => "cell",
                ConvexityScope::Block => "block",
            };
            write!(
                f,
                "\nstage {}: {} {} is split around {}",
                v.stage, scope, v.key, v.witness
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisPropertyReport {
    pub cases_checked: usize,
    pub deepest_stage: usize,
    pub failures: Vec<Point>,
}

impl BasisPropertyReport {
    pub fn clean(&self) -> bool {
        self.failures.is_empty()
    }
}

/// The full order relation on a fixed point list, as index pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationSet {
    pub points: Vec<Point>,
    pub less: Vec<(usize, usize)>,
    pub unresolved: Vec<(usize, usize)>,
}

impl RelationSet {
    pub fn ordering(&self, i: usize, j: usize) -> Option<Ordering> {
        if self.points[i] == self.points[j] {
            return Some(Ordering::Equal);
        }
        if self.less.contains(&(i, j)) {
            return Some(Ordering::Less);
        }
        if self.less.contains(&(j, i)) {
            return Some(Ordering::Greater);
        }
        None
    }
}

/// Builds the relation on a small point list without the comparator. Every
/// block of every stage within the cap becomes one bit of a containment
/// mask per point; the maximal subfamilies with a common point are exactly
/// the maximal masks, so points share a cell at a stage exactly when their
/// masks agree through it, and the first disagreeing stage decides each
/// pair by block rank. Requires at most 8 points, 20 blocks in total, and
/// one block per point per stage.
pub fn brute_force_relations(
    points: &[Point],
    basis: &StratifiedBasis,
    policy: &BlockOrderPolicy,
    cap: usize,
) -> Result<RelationSet, OrderError> {
    policy.validate()?;
    if points.len() > 8 {
        return Err(OrderError::TooLarge);
    }
    let stages = match basis.stage_limit() {
        Some(n) => n.min(cap + 1),
        None => cap + 1,
    };
    let mut layout: Vec<(usize, usize)> = Vec::new();
    let mut covers = Vec::new();
    let mut offset = 0usize;
    for s in 0..stages {
        let cover = basis.cover(s)?;
        layout.push((offset, cover.blocks.len()));
        offset += cover.blocks.len();
        covers.push(cover);
    }
    if offset > 20 {
        return Err(OrderError::TooLarge);
    }

    let mut masks = vec![0u32; points.len()];
    for (pi, p) in points.iter().enumerate() {
        for (s, cover) in covers.iter().enumerate() {
            let (off, _) = layout[s];
            for (bi, b) in cover.blocks.iter().enumerate() {
                if b.contains(p) {
                    masks[pi] |= 1 << (off + bi);
                }
            }
        }
    }

    // Partition sanity, and with it maximality of every point's own mask.
    for (pi, p) in points.iter().enumerate() {
        for (s, &(off, len)) in layout.iter().enumerate() {
            let slice = (masks[pi] >> off) & ((1u32 << len) - 1);
            if slice.count_ones() != 1 {
                return Err(OrderError::NotAPartition {
                    stage: s,
                    point: p.clone(),
                });
            }
        }
    }
    debug_assert!(masks
        .iter()
        .all(|m| !masks.iter().any(|q| q != m && q & m == *m)));

    let block_at = |pi: usize, s: usize| -> BlockId {
        let (off, len) = layout[s];
        let slice = (masks[pi] >> off) & ((1u32 << len) - 1);
        BlockId(slice.trailing_zeros() as usize)
    };

    let mut less = Vec::new();
    let mut unresolved = Vec::new();
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if points[i] == points[j] {
                continue;
            }
            let mut decided = false;
            for (s, &(off, len)) in layout.iter().enumerate() {
                let window = ((1u32 << len) - 1) << off;
                if masks[i] & window != masks[j] & window {
                    let ri = policy.rank(s, block_at(i, s))?;
                    let rj = policy.rank(s, block_at(j, s))?;
                    if ri == rj {
                        return Err(OrderError::InvalidPolicy { stage: s });
                    }
                    if ri < rj {
                        less.push((i, j));
                    } else {
                        less.push((j, i));
                    }
                    decided = true;
                    break;
                }
            }
            if !decided {
                unresolved.push((i, j));
            }
        }
    }

    Ok(RelationSet {
        points: points.to_vec(),
        less,
        unresolved,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordinal::Ordinal;
    use crate::space::{OrdinalSubspace, PiecewiseSet};
    use crate::strata::{BlockSet, DiscreteCover};

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn pt(s: &str) -> Point {
        Point::Ord(o(s))
    }

    fn set(s: &str) -> PiecewiseSet {
        s.parse().unwrap()
    }

    fn peel_basis(stages: usize, top: &str) -> StratifiedBasis {
        let hi = o(top);
        let mut covers = Vec::new();
        for k in 0..stages {
            let mut blocks: Vec<BlockSet> = (0..k)
                .map(|i| BlockSet::Piecewise(PiecewiseSet::singleton(Ordinal::nat(i as u64))))
                .collect();
            let lo = if k == 0 { None } else { Some(Ordinal::nat(k as u64 - 1)) };
            blocks.push(BlockSet::Piecewise(PiecewiseSet::interval(lo, hi.clone())));
            covers.push(DiscreteCover { stage: k, blocks });
        }
        StratifiedBasis::explicit(covers)
    }

    #[test]
    fn comparing_follows_the_first_separating_stage() {
        let w = OrderWitness::new(peel_basis(10, "w"), BlockOrderPolicy::Canonical, 16).unwrap();
        match w.compare(&pt("2"), &pt("5")).unwrap() {
            Comparison::Less(d) => {
                assert_eq!(d.stage, 3);
                assert_eq!(d.x_block, BlockId(2));
                assert_eq!(d.y_block, BlockId(3));
                assert_eq!(d.x_path.to_string(), "0.1.2.2");
            }
            other => panic!("expected less, got {other:?}"),
        }
        assert!(matches!(w.compare(&pt("w"), &pt("5")).unwrap(), Comparison::Greater(_)));
        assert_eq!(w.compare(&pt("4"), &pt("4")).unwrap(), Comparison::Equal);
    }

    #[test]
    fn unresolved_pairs_report_the_stages_tried() {
        let w = OrderWitness::new(peel_basis(10, "w"), BlockOrderPolicy::Canonical, 4).unwrap();
        assert_eq!(
            w.compare(&pt("5"), &pt("w")).unwrap(),
            Comparison::Unresolved { stages_tried: 5 }
        );
        let err = w.sort_points(&[pt("5"), pt("w")]).unwrap_err();
        assert!(matches!(err, OrderError::Unresolved { stages_tried: 5, .. }));
    }

    #[test]
    fn canonical_peel_order_is_the_natural_order() {
        let w = OrderWitness::new(peel_basis(12, "w"), BlockOrderPolicy::Canonical, 16).unwrap();
        let space = OrdinalSubspace::new(set("[0,w]")).unwrap();
        let sample: Vec<Point> = space.sample(10, 2).into_iter().map(Point::Ord).collect();
        let mut shuffled = sample.clone();
        shuffled.reverse();
        assert_eq!(w.sort_points(&shuffled).unwrap(), sample);
    }

    #[test]
    fn permutations_rearrange_exactly_the_permuted_stage() {
        let policy = BlockOrderPolicy::Permuted(vec![vec![0], vec![1, 0]]);
        let w = OrderWitness::new(peel_basis(10, "w"), policy, 16).unwrap();
        // Stage 1 ranks are swapped, so 0 now sorts above everything that
        // stays in the tail there.
        assert!(matches!(w.compare(&pt("0"), &pt("5")).unwrap(), Comparison::Greater(_)));
        // Pairs separated later keep the canonical direction.
        assert!(matches!(w.compare(&pt("2"), &pt("5")).unwrap(), Comparison::Less(_)));
    }

    #[test]
    fn bad_policies_are_rejected() {
        assert_eq!(
            BlockOrderPolicy::Permuted(vec![vec![0, 0]]).validate(),
            Err(OrderError::InvalidPolicy { stage: 0 })
        );
        assert_eq!(
            BlockOrderPolicy::Permuted(vec![vec![1, 2, 0], vec![2, 1]]).validate(),
            Err(OrderError::InvalidPolicy { stage: 1 })
        );
        // A permutation shorter than the cover it ranks.
        let policy = BlockOrderPolicy::Permuted(vec![vec![0], vec![0]]);
        let w = OrderWitness::new(peel_basis(10, "w"), policy, 16).unwrap();
        assert_eq!(
            w.compare(&pt("0"), &pt("5")),
            Err(OrderError::InvalidPolicy { stage: 1 })
        );
    }

    #[test]
    fn axioms_hold_on_the_peel_chain() {
        let w = OrderWitness::new(peel_basis(16, "w"), BlockOrderPolicy::Canonical, 16).unwrap();
        let space = OrdinalSubspace::new(set("[0,w]")).unwrap();
        let points: Vec<Point> = space.sample(12, 2).into_iter().map(Point::Ord).collect();
        let report = w.check_axioms(&points).unwrap();
        assert!(report.clean(), "{report}");
        assert_eq!(report.to_string(), "A1..A5: 0 violations");
        assert!(report.triples_checked > 0);
    }

    /// Non-refining stages whose blocks interleave: the order is still
    /// linear and cells are still convex, but a stage-2 block is split.
    fn interleaved_basis() -> StratifiedBasis {
        StratifiedBasis::explicit(vec![
            DiscreteCover { stage: 0, blocks: vec![set("[0,2]").into()] },
            DiscreteCover {
                stage: 1,
                blocks: vec![set("[0,0]|(1,2]").into(), set("{1}").into()],
            },
            DiscreteCover {
                stage: 2,
                blocks: vec![set("[0,1]").into(), set("{2}").into()],
            },
        ])
    }

    #[test]
    fn cells_stay_convex_even_when_blocks_do_not() {
        let w = OrderWitness::new(interleaved_basis(), BlockOrderPolicy::Canonical, 8).unwrap();
        let points = vec![pt("0"), pt("1"), pt("2")];
        let sorted = w.sort_points(&points).unwrap();
        assert_eq!(sorted, vec![pt("0"), pt("2"), pt("1")]);

        let report = w.check_axioms(&points).unwrap();
        assert!(report.clean(), "{report}");

        let cells_only = w.check_convexity(&points, 3, false).unwrap();
        assert!(cells_only.clean(), "{cells_only}");

        let with_blocks = w.check_convexity(&points, 3, true).unwrap();
        assert_eq!(with_blocks.violations.len(), 1);
        let v = &with_blocks.violations[0];
        assert_eq!(v.stage, 2);
        assert_eq!(v.scope, ConvexityScope::Block);
        assert_eq!(v.witness, pt("2"));
    }

    #[test]
    fn brute_force_agrees_with_the_comparator() {
        let basis = peel_basis(4, "5");
        let policies = [
            BlockOrderPolicy::Canonical,
            BlockOrderPolicy::Permuted(vec![vec![0], vec![1, 0], vec![2, 0, 1]]),
        ];
        let points: Vec<Point> = (0..6).map(|n| Point::Ord(Ordinal::nat(n))).collect();
        for policy in policies {
            let oracle = brute_force_relations(&points, &basis, &policy, 3).unwrap();
            let w = OrderWitness::new(basis.clone(), policy, 3).unwrap();
            for i in 0..points.len() {
                for j in 0..points.len() {
                    let got = w.compare(&points[i], &points[j]).unwrap().as_ordering();
                    assert_eq!(got, oracle.ordering(i, j), "pair {i},{j}");
                }
            }
            // 4 and 5 share the tail through stage 3.
            assert!(oracle.unresolved.contains(&(4, 5)));
        }
    }

    #[test]
    fn brute_force_guards_its_input() {
        let basis = peel_basis(4, "w");
        let many: Vec<Point> = (0..9).map(|n| Point::Ord(Ordinal::nat(n))).collect();
        assert_eq!(
            brute_force_relations(&many, &basis, &BlockOrderPolicy::Canonical, 3),
            Err(OrderError::TooLarge)
        );
        let few: Vec<Point> = (0..3).map(|n| Point::Ord(Ordinal::nat(n))).collect();
        assert_eq!(
            brute_force_relations(&few, &peel_basis(7, "w"), &BlockOrderPolicy::Canonical, 6),
            Err(OrderError::TooLarge)
        );
        let overlapping = StratifiedBasis::explicit(vec![
            DiscreteCover { stage: 0, blocks: vec![set("[0,2]").into()] },
            DiscreteCover {
                stage: 1,
                blocks: vec![set("[0,1]").into(), set("[0,0]|(1,2]").into()],
            },
        ]);
        assert!(matches!(
            brute_force_relations(&few, &overlapping, &BlockOrderPolicy::Canonical, 1),
            Err(OrderError::NotAPartition { stage: 1, .. })
        ));
    }

    #[test]
    fn blocks_shrink_into_arbitrary_neighborhoods() {
        let w = OrderWitness::new(peel_basis(12, "w"), BlockOrderPolicy::Canonical, 11).unwrap();
        let cases = vec![
            (pt("3"), set("(2,4]")),
            (pt("w"), set("(5,w]")),
            (pt("0"), set("[0,0]")),
        ];
        let report = w.check_basis_property(&cases).unwrap();
        assert!(report.clean());
        assert_eq!(report.deepest_stage, 6);

        let capped = OrderWitness::new(peel_basis(12, "w"), BlockOrderPolicy::Canonical, 4).unwrap();
        let report = capped.check_basis_property(&cases).unwrap();
        assert_eq!(report.failures, vec![pt("w")]);
    }
}
