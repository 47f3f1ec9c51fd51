//! Basis synthesis for subspaces of ordinals.
//!
//! Every nonempty piecewise set falls into one of five shapes: a single
//! point, a finite set, a set with an isolated maximum, a set whose maximum
//! is approached from below, and a set with no maximum at all. Each shape
//! splits into clopen pieces along a cut below the supremum, chosen from
//! the supremum's fundamental sequence. Splitting every non-singleton block
//! once per round turns the recursion into a chain of refining covers, and
//! the cuts are cofinal in each supremum, so any two points end up in
//! different blocks after finitely many rounds.

use std::fmt;
use std::sync::{Arc, Mutex};

use crate::ordinal::{CardinalValue, Ordinal};
use crate::space::{OrdinalInterval, OrdinalSubspace, PiecewiseSet};
use crate::strata::{BlockSet, CoverSource, DiscreteCover, StrataError, StratifiedBasis};

/// How one block splits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecompositionKind {
    /// A single point; never splits again.
    Leaf,
    /// A finite set, split into its singletons in one round.
    FreeSum { cuts: Vec<Ordinal> },
    /// No maximum: peel the part up to the cut, keep the rest.
    FreeSumPeel { cut: Ordinal },
    /// The maximum is approached from below: peel below the cut, keep the
    /// tail that still reaches the maximum.
    TailPeel { cut: Ordinal },
    /// The maximum is isolated: split it off.
    TopPoint { max: Ordinal },
}

impl fmt::Display for DecompositionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecompositionKind::Leaf => write!(f, "Leaf"),
            DecompositionKind::FreeSum { cuts } => {
                let parts: Vec<String> = cuts.iter().map(|c| c.to_string()).collect();
                write!(f, "FreeSum cuts={}", parts.join(","))
            }
            DecompositionKind::FreeSumPeel { cut } => write!(f, "FreeSumPeel cut={cut}"),
            DecompositionKind::TailPeel { cut } => write!(f, "TailPeel cut={cut}"),
            DecompositionKind::TopPoint { max } => write!(f, "TopPoint max={max}"),
        }
    }
}

/// A block with its split kind and, down to the requested depth, the
/// sub-blocks the split produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompositionNode {
    pub block: PiecewiseSet,
    pub kind: DecompositionKind,
    pub children: Vec<DecompositionNode>,
}

impl DecompositionNode {
    fn fmt_indented(&self, f: &mut fmt::Formatter<'_>, indent: usize) -> fmt::Result {
        if indent > 0 {
            write!(f, "\n{:width$}", "", width = indent * 2)?;
        }
        write!(f, "{} {}", self.block, self.kind)?;
        for child in &self.children {
            child.fmt_indented(f, indent + 1)?;
        }
        Ok(())
    }
}

impl fmt::Display for DecompositionNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_indented(f, 0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SynthError {
    #[error("the space fails a construction condition: {0}")]
    ConditionsNotMet(String),
}

/// Moves a cut candidate off a limit the block climbs to: cutting exactly
/// at such a point would strand it at the top of the lower piece while its
/// approach keeps the boundary busy, so the cut steps past it instead.
fn adjust_cut(block: &PiecewiseSet, gamma: Ordinal) -> Ordinal {
    if gamma.is_limit() && block.member(&gamma) && block.accumulates_below(&gamma) {
        gamma.succ()
    } else {
        gamma
    }
}

/// The cut for an infinite block with supremum `m`: the first candidate,
/// after adjustment, that leaves something below it. Candidates are the
/// supremum with one subtracted from its last coefficient, then its
/// fundamental sequence; both stay strictly below `m`.
fn choose_cut(block: &PiecewiseSet, m: &Ordinal) -> Ordinal {
    let min = block.min_member().expect("blocks are nonempty");
    let base = adjust_cut(block, m.limit_base());
    if base >= min {
        return base;
    }
    let value = |n: u64| {
        let raw = m
            .fundamental_sequence(n)
            .expect("the supremum of an infinite block is a limit");
        adjust_cut(block, raw)
    };
    // Adjusted values are monotone in n, so the least index whose value
    // reaches the minimum member is found by doubling and then bisecting.
    let mut hi = 1u64;
    while value(hi) < min {
        hi = hi.checked_mul(2).expect("cut index overflow");
    }
    let mut lo = 1u64;
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if value(mid) < min {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    value(lo)
}

/// Splits a block once. Leaves produce no children; every other kind
/// produces nonempty blocks in ascending order.
pub fn decompose(block: &PiecewiseSet) -> (DecompositionKind, Vec<PiecewiseSet>) {
    match block.size() {
        CardinalValue::Finite(0) => {
            debug_assert!(false, "empty blocks never enter the tree");
            (DecompositionKind::Leaf, Vec::new())
        }
        CardinalValue::Finite(1) => (DecompositionKind::Leaf, Vec::new()),
        CardinalValue::Finite(_) => {
            let members = block.members();
            let children = members
                .iter()
                .map(|m| PiecewiseSet::singleton(m.clone()))
                .collect();
            (DecompositionKind::FreeSum { cuts: members }, children)
        }
        CardinalValue::AlephNought => {
            let (m, attained) = block.sup().expect("infinite blocks are nonempty");
            if attained && !block.accumulates_below(&m) {
                let rest = block.difference(&PiecewiseSet::singleton(m.clone()));
                let children = vec![rest, PiecewiseSet::singleton(m.clone())];
                (DecompositionKind::TopPoint { max: m }, children)
            } else {
                let cut = choose_cut(block, &m);
                let lower = block.trace(None, &cut);
                let upper = block.trace(Some(&cut), &m);
                debug_assert!(!lower.is_empty() && !upper.is_empty());
                let kind = if attained {
                    DecompositionKind::TailPeel { cut }
                } else {
                    DecompositionKind::FreeSumPeel { cut }
                };
                (kind, vec![lower, upper])
            }
        }
    }
}

/// The decomposition tree of a space, expanded `depth` rounds; kinds are
/// reported one level past the last expanded children.
pub fn decomposition_dump(space: &OrdinalSubspace, depth: usize) -> DecompositionNode {
    fn build(block: PiecewiseSet, depth: usize) -> DecompositionNode {
        let (kind, children) = decompose(&block);
        let children = if depth == 0 {
            Vec::new()
        } else {
            children.into_iter().map(|c| build(c, depth - 1)).collect()
        };
        DecompositionNode { block, kind, children }
    }
    build(space.carrier().clone(), depth)
}

struct TreeState {
    frontier: Vec<PiecewiseSet>,
    covers: Vec<Arc<DiscreteCover>>,
}

/// Generates stage covers by expanding the decomposition tree one round
/// per stage: stage d is the frontier after d rounds, leaves passing
/// through unchanged.
struct TreeCoverSource {
    state: Mutex<TreeState>,
}

impl TreeCoverSource {
    fn new(root: PiecewiseSet) -> Self {
        TreeCoverSource {
            state: Mutex::new(TreeState {
                frontier: vec![root],
                covers: Vec::new(),
            }),
        }
    }
}

impl CoverSource for TreeCoverSource {
    fn cover(&self, stage: usize) -> Result<Arc<DiscreteCover>, StrataError> {
        let mut st = self.state.lock().unwrap();
        while st.covers.len() <= stage {
            let k = st.covers.len();
            let cover = Arc::new(DiscreteCover {
                stage: k,
                blocks: st
                    .frontier
                    .iter()
                    .cloned()
                    .map(BlockSet::Piecewise)
                    .collect(),
            });
            st.covers.push(cover);
            let mut next = Vec::with_capacity(st.frontier.len() + 1);
            for block in &st.frontier {
                let (kind, children) = decompose(block);
                if matches!(kind, DecompositionKind::Leaf) {
                    next.push(block.clone());
                } else {
                    next.extend(children);
                }
            }
            st.frontier = next;
        }
        Ok(Arc::clone(&st.covers[stage]))
    }

    fn chain_refining(&self) -> bool {
        true
    }
}

/// Builds the staged basis of a space from its decomposition tree after
/// checking the construction conditions.
pub fn synthesize_basis(space: &OrdinalSubspace) -> Result<StratifiedBasis, SynthError> {
    let report = check_conditions(space);
    if let Some(check) = report.first_failure() {
        return Err(SynthError::ConditionsNotMet(format!(
            "{}: {}",
            check.name, check.detail
        )));
    }
    Ok(StratifiedBasis::lazy(TreeCoverSource::new(
        space.carrier().clone(),
    )))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub checks: Vec<ConditionCheck>,
}

impl ConditionReport {
    pub fn clean(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&ConditionCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.checks.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            if c.passed {
                write!(f, "{}: ok", c.name)?;
            } else {
                write!(f, "{}: FAIL ({})", c.name, c.detail)?;
            }
        }
        Ok(())
    }
}

/// Checks the construction conditions on the raw pieces of a carrier, so
/// inputs that bypass normalization can be diagnosed.
pub fn check_conditions_parts(
    bound: Option<&Ordinal>,
    intervals: &[OrdinalInterval],
    plus: &[Ordinal],
    minus: &[Ordinal],
) -> ConditionReport {
    let mut checks = Vec::new();
    let mut push = |name: &'static str, failure: Option<String>| {
        checks.push(ConditionCheck {
            name,
            passed: failure.is_none(),
            detail: failure.unwrap_or_default(),
        });
    };

    push(
        "carrier is nonempty",
        if intervals.is_empty() && plus.is_empty() {
            Some("no intervals and no added points".to_string())
        } else {
            None
        },
    );

    let mut interval_failure = None;
    for iv in intervals {
        if iv.lo.as_ref().is_some_and(|l| *l >= iv.hi) {
            interval_failure = Some(format!("interval with lower edge at or past {}", iv.hi));
            break;
        }
    }
    if interval_failure.is_none() {
        for w in intervals.windows(2) {
            if !w[1].lo.as_ref().is_some_and(|l| *l > w[0].hi) {
                interval_failure = Some(format!("intervals touch around {}", w[0].hi));
                break;
            }
        }
    }
    push("intervals are nonempty, ordered and separated", interval_failure);

    let plus_failure = plus.iter().find_map(|p| {
        if !p.is_limit() {
            Some(format!("{p} is not a limit"))
        } else if intervals.iter().any(|iv| iv.contains(p)) {
            Some(format!("{p} already lies in an interval"))
        } else {
            None
        }
    });
    push("added points are limits outside the intervals", plus_failure);

    let minus_failure = minus.iter().find_map(|m| {
        if !m.is_limit() {
            Some(format!("{m} is not a limit"))
        } else if !intervals.iter().any(|iv| iv.contains(m)) {
            Some(format!("{m} lies in no interval"))
        } else {
            None
        }
    });
    push("removed points are limits inside the intervals", minus_failure);

    if let Some(bound) = bound {
        let sup = intervals
            .last()
            .map(|iv| iv.hi.clone())
            .into_iter()
            .chain(plus.last().cloned())
            .max();
        push(
            "the bound is the supremum of the carrier",
            match sup {
                Some(s) if s == *bound => None,
                Some(s) => Some(format!("supremum is {s}, bound is {bound}")),
                None => Some("the carrier has no supremum".to_string()),
            },
        );
    }

    ConditionReport { checks }
}

pub fn check_conditions(space: &OrdinalSubspace) -> ConditionReport {
    let carrier = space.carrier();
    check_conditions_parts(
        Some(space.bound()),
        carrier.intervals(),
        carrier.plus_points(),
        carrier.minus_points(),
    )
}
