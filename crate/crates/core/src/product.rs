//! Finite products of ordinal subspaces.
//!
//! A product stage is assigned a tuple of factor stages by a pairing, and
//! its cover is the box product of the factor covers at those stages. Two
//! points of the product are separated once some product stage looks at a
//! coordinate whose factor stage separates them, so enumerating all tuples
//! keeps the separation property without any refinement between stages.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::ordinal::{CardinalValue, Ordinal};
use crate::space::{OrdinalSubspace, Point, Space, SpaceError};
use crate::strata::{BlockSet, CoverSource, DiscreteCover, StrataError, StratifiedBasis};

/// Bijection between product stages and tuples of factor stages. Tuples are
/// grouped by their maximum coordinate, so the tuple for stage `s` never
/// has a coordinate beyond `s`, and `(0, ..., 0)` is stage 0. Within a
/// group, `Diagonal` orders tuples lexicographically and `DiagonalRevLex`
/// compares the last coordinate first.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StagePairing {
    Diagonal,
    DiagonalRevLex,
}

impl StagePairing {
    /// All tuples over `{0..=m}^n` whose maximum is exactly `m`, in this
    /// pairing's order.
    fn shell(self, m: usize, n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut t = vec![0usize; n];
        'odometer: loop {
            if t.contains(&m) {
                out.push(t.clone());
            }
            let mut i = n;
            while i > 0 {
                i -= 1;
                if t[i] < m {
                    t[i] += 1;
                    t[i + 1..].fill(0);
                    continue 'odometer;
                }
            }
            break;
        }
        if self == StagePairing::DiagonalRevLex {
            out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
        }
        out
    }

    /// The factor stages assigned to product stage `stage` for `n` factors.
    pub fn tuple_at(self, stage: usize, n: usize) -> Vec<usize> {
        assert!(n >= 1, "a pairing needs at least one coordinate");
        let mut m = 0usize;
        let mut cum = 0usize;
        loop {
            let size = (m + 1).pow(n as u32) - m.pow(n as u32);
            if stage < cum + size {
                return self.shell(m, n).swap_remove(stage - cum);
            }
            cum += size;
            m += 1;
        }
    }

    /// Inverse of `tuple_at`.
    pub fn stage_of(self, tuple: &[usize]) -> usize {
        let n = tuple.len();
        let m = *tuple.iter().max().expect("tuple is nonempty");
        let below = m.pow(n as u32);
        below
            + self
                .shell(m, n)
                .iter()
                .position(|t| t == tuple)
                .expect("tuple belongs to its own shell")
    }
}

/// A finite product of nonempty ordinal subspaces; points are tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductSpace {
    factors: Vec<OrdinalSubspace>,
}

impl ProductSpace {
    pub fn new(factors: Vec<OrdinalSubspace>) -> Result<Self, SpaceError> {
        if factors.is_empty() {
            return Err(SpaceError::NoFactors);
        }
        Ok(ProductSpace { factors })
    }

    pub fn factor_count(&self) -> usize {
        self.factors.len()
    }

    pub fn factor(&self, i: usize) -> &OrdinalSubspace {
        &self.factors[i]
    }

    pub fn factors(&self) -> &[OrdinalSubspace] {
        &self.factors
    }

    pub fn member_tuple(&self, t: &[Point]) -> bool {
        t.len() == self.factors.len()
            && t.iter().zip(&self.factors).all(|(p, f)| match p {
                Point::Ord(o) => f.member(o),
                Point::Tuple(_) => false,
            })
    }

    /// A tuple is isolated exactly when every coordinate is isolated in its
    /// factor.
    pub fn is_isolated_tuple(&self, t: &[Point]) -> Result<bool, SpaceError> {
        if t.len() != self.factors.len() {
            return Err(SpaceError::NotAMember);
        }
        let mut all = true;
        for (p, f) in t.iter().zip(&self.factors) {
            let o = p.ordinal().ok_or(SpaceError::NotAMember)?;
            all &= f.is_isolated(o)?;
        }
        Ok(all)
    }

    pub fn character_at_tuple(&self, t: &[Point]) -> Result<CardinalValue, SpaceError> {
        Ok(if self.is_isolated_tuple(t)? {
            CardinalValue::Finite(1)
        } else {
            CardinalValue::AlephNought
        })
    }

    pub fn p_number(&self) -> CardinalValue {
        product_p_number(&self.factors)
    }

    /// Box product of factor samples, ascending in coordinate order,
    /// truncated at `budget`. Each factor is sampled with the smallest
    /// per-factor budget whose power reaches `budget`.
    pub fn sample(&self, budget: usize, depth: u64) -> Vec<Point> {
        if budget == 0 {
            return Vec::new();
        }
        let n = self.factors.len() as u32;
        let mut k = 1usize;
        while k.pow(n) < budget {
            k += 1;
        }
        let factor_samples: Vec<Vec<Ordinal>> =
            self.factors.iter().map(|f| f.sample(k, depth)).collect();
        let mut tuples: Vec<Vec<Point>> = vec![Vec::new()];
        for fs in &factor_samples {
            let mut next = Vec::with_capacity(tuples.len() * fs.len());
            for partial in &tuples {
                for o in fs {
                    let mut v = partial.clone();
                    v.push(Point::Ord(o.clone()));
                    next.push(v);
                }
            }
            next.truncate(budget);
            tuples = next;
        }
        tuples.into_iter().map(Point::Tuple).collect()
    }
}

/// Cardinality when every factor is finite and discrete, aleph-0 otherwise:
/// an infinite or non-discrete factor forces a point of infinite character
/// or an infinite discrete product either way.
pub fn product_p_number(factors: &[OrdinalSubspace]) -> CardinalValue {
    let mut total: u64 = 1;
    for f in factors {
        if !f.carrier().is_discrete() {
            return CardinalValue::AlephNought;
        }
        match f.carrier().size() {
            CardinalValue::Finite(n) => {
                total = total.checked_mul(n).expect("cardinality overflow")
            }
            CardinalValue::AlephNought => return CardinalValue::AlephNought,
        }
    }
    CardinalValue::Finite(total)
}

struct ProductCoverSource {
    bases: Vec<StratifiedBasis>,
    pairing: StagePairing,
    memo: Mutex<HashMap<usize, Arc<DiscreteCover>>>,
}

impl CoverSource for ProductCoverSource {
    fn cover(&self, stage: usize) -> Result<Arc<DiscreteCover>, StrataError> {
        if let Some(c) = self.memo.lock().unwrap().get(&stage) {
            return Ok(Arc::clone(c));
        }
        let coords = self.pairing.tuple_at(stage, self.bases.len());
        let mut factor_covers = Vec::with_capacity(coords.len());
        for (basis, s) in self.bases.iter().zip(&coords) {
            factor_covers.push(basis.cover(*s)?);
        }
        // Boxes in coordinate-major order, first factor most significant.
        let mut combos: Vec<Vec<BlockSet>> = vec![Vec::new()];
        for fc in &factor_covers {
            let mut next = Vec::with_capacity(combos.len() * fc.blocks.len());
            for partial in &combos {
                for b in &fc.blocks {
                    let mut v = partial.clone();
                    v.push(b.clone());
                    next.push(v);
                }
            }
            combos = next;
        }
        let cover = Arc::new(DiscreteCover {
            stage,
            blocks: combos.into_iter().map(BlockSet::Rect).collect(),
        });
        self.memo.lock().unwrap().insert(stage, Arc::clone(&cover));
        Ok(cover)
    }

    fn chain_refining(&self) -> bool {
        false
    }
}

/// Builds the product of the given factors together with its staged basis.
pub fn product_basis(
    factors: Vec<(OrdinalSubspace, StratifiedBasis)>,
    pairing: StagePairing,
) -> Result<(ProductSpace, StratifiedBasis), SpaceError> {
    let (spaces, bases): (Vec<_>, Vec<_>) = factors.into_iter().unzip();
    let space = ProductSpace::new(spaces)?;
    let source = ProductCoverSource {
        bases,
        pairing,
        memo: Mutex::new(HashMap::new()),
    };
    Ok((space, StratifiedBasis::lazy(source)))
}

/// The n-th power of a space with its basis; the first power is the space
/// itself, unchanged.
pub fn power_space(
    x: &OrdinalSubspace,
    basis: &StratifiedBasis,
    n: usize,
    pairing: StagePairing,
) -> Result<(Space, StratifiedBasis), SpaceError> {
    match n {
        0 => Err(SpaceError::NoFactors),
        1 => Ok((Space::Ordinal(x.clone()), basis.clone())),
        _ => {
            let factors = vec![(x.clone(), basis.clone()); n];
            let (space, b) = product_basis(factors, pairing)?;
            Ok((Space::Product(space), b))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::PiecewiseSet;
    use crate::strata::BlockId;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    fn sub(s: &str) -> OrdinalSubspace {
        s.parse().unwrap()
    }

    fn pair(a: &str, b: &str) -> Point {
        Point::Tuple(vec![Point::Ord(o(a)), Point::Ord(o(b))])
    }

    fn peel_basis(stages: usize) -> StratifiedBasis {
        let mut covers = Vec::new();
        for k in 0..stages {
            let mut blocks: Vec<BlockSet> = (0..k)
                .map(|i| BlockSet::Piecewise(PiecewiseSet::singleton(Ordinal::nat(i as u64))))
                .collect();
            let lo = if k == 0 { None } else { Some(Ordinal::nat(k as u64 - 1)) };
            blocks.push(BlockSet::Piecewise(PiecewiseSet::interval(lo, Ordinal::omega())));
            covers.push(DiscreteCover { stage: k, blocks });
        }
        StratifiedBasis::explicit(covers)
    }

    #[test]
    fn pairings_are_bijective() {
        for pairing in [StagePairing::Diagonal, StagePairing::DiagonalRevLex] {
            for n in 1..=3 {
                let mut seen = Vec::new();
                for stage in 0..100 {
                    let t = pairing.tuple_at(stage, n);
                    assert_eq!(t.len(), n);
                    assert_eq!(pairing.stage_of(&t), stage);
                    assert!(!seen.contains(&t), "{pairing:?} repeats {t:?}");
                    seen.push(t);
                }
            }
        }
    }

    #[test]
    fn pairings_start_at_the_origin_and_grow_by_maximum() {
        for pairing in [StagePairing::Diagonal, StagePairing::DiagonalRevLex] {
            assert_eq!(pairing.tuple_at(0, 3), vec![0, 0, 0]);
            for stage in 1..50 {
                let t = pairing.tuple_at(stage, 2);
                let m = *t.iter().max().unwrap();
                assert!(m.pow(2) <= stage && stage < (m + 1).pow(2));
            }
        }
    }

    #[test]
    fn the_two_pairings_differ_within_a_shell() {
        assert_eq!(StagePairing::Diagonal.tuple_at(1, 2), vec![0, 1]);
        assert_eq!(StagePairing::DiagonalRevLex.tuple_at(1, 2), vec![1, 0]);
        assert_eq!(StagePairing::Diagonal.tuple_at(3, 2), vec![1, 1]);
        assert_eq!(StagePairing::DiagonalRevLex.tuple_at(3, 2), vec![1, 1]);
    }

    #[test]
    fn product_covers_are_boxes_of_factor_covers() {
        let x = sub("[0,w]");
        let (space, basis) =
            product_basis(vec![(x.clone(), peel_basis(8)), (x, peel_basis(8))], StagePairing::Diagonal)
                .unwrap();
        // Stage 1 pairs factor stages (0, 1): one block times two blocks.
        let cover = basis.cover(1).unwrap();
        assert_eq!(cover.blocks.len(), 2);
        assert!(cover.blocks[0].contains(&pair("3", "0")));
        assert!(cover.blocks[1].contains(&pair("3", "1")));
        assert!(space.member_tuple(&[Point::Ord(o("w")), Point::Ord(o("2"))]));
        assert!(!space.member_tuple(&[Point::Ord(o("w+1")), Point::Ord(o("2"))]));
    }

    #[test]
    fn separation_happens_at_the_first_stage_watching_the_coordinate() {
        let x = sub("[0,w]");
        let (_, basis) =
            product_basis(vec![(x.clone(), peel_basis(16)), (x, peel_basis(16))], StagePairing::Diagonal)
                .unwrap();
        // 5 and 7 split at factor stage 6; the first product stage whose
        // tuple reaches (_, 6) is 36 = 6^2, tuple (0, 6).
        let sep = basis
            .separation_stage(&pair("2", "5"), &pair("2", "7"), 64)
            .unwrap();
        assert_eq!(sep, Some((36, BlockId(5), BlockId(6))));
    }

    #[test]
    fn product_validation_is_clean_for_clean_factors() {
        let x = sub("[0,w]");
        let (space, basis) =
            product_basis(vec![(x.clone(), peel_basis(16)), (x, peel_basis(16))], StagePairing::Diagonal)
                .unwrap();
        let report = basis
            .validate(&Space::Product(space), 9, 12, 1, false)
            .unwrap();
        assert!(report.clean(), "{report}");
    }

    #[test]
    fn isolation_is_coordinatewise() {
        let space = ProductSpace::new(vec![sub("[0,w]"), sub("[0,w]")]).unwrap();
        assert_eq!(
            space.is_isolated_tuple(&[Point::Ord(o("3")), Point::Ord(o("5"))]),
            Ok(true)
        );
        assert_eq!(
            space.is_isolated_tuple(&[Point::Ord(o("3")), Point::Ord(o("w"))]),
            Ok(false)
        );
        assert_eq!(
            space.is_isolated_tuple(&[Point::Ord(o("w+1")), Point::Ord(o("0"))]),
            Err(SpaceError::NotAMember)
        );
        assert_eq!(
            space.character_at_tuple(&[Point::Ord(o("w")), Point::Ord(o("0"))]),
            Ok(CardinalValue::AlephNought)
        );
    }

    #[test]
    fn p_numbers_multiply_for_finite_discrete_factors() {
        assert_eq!(
            product_p_number(&[sub("{1,3,5}"), sub("[0,1]")]),
            CardinalValue::Finite(6)
        );
        assert_eq!(
            product_p_number(&[sub("{1,3,5}"), sub("[0,w]")]),
            CardinalValue::AlephNought
        );
        assert_eq!(
            product_p_number(&[sub("[0,w]\\{w}"), sub("[0,1]")]),
            CardinalValue::AlephNought
        );
        let space = ProductSpace::new(vec![sub("[0,w]"), sub("[0,w]")]).unwrap();
        assert_eq!(space.p_number(), CardinalValue::AlephNought);
    }

    #[test]
    fn first_power_is_the_space_itself() {
        let x = sub("[0,w]");
        let basis = peel_basis(4);
        let (space, b) = power_space(&x, &basis, 1, StagePairing::Diagonal).unwrap();
        assert_eq!(space, Space::Ordinal(x));
        assert_eq!(b.stage_limit(), Some(4));
        assert!(power_space(&sub("[0,w]"), &basis, 0, StagePairing::Diagonal).is_err());
    }

    #[test]
    fn product_sampling_is_deterministic_and_sorted() {
        let space = ProductSpace::new(vec![sub("[0,w]"), sub("[0,w]")]).unwrap();
        let s = space.sample(10, 1);
        assert_eq!(s.len(), 10);
        assert!(s.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(s[0], pair("0", "0"));
        assert_eq!(s[3], pair("0", "w"));
        assert_eq!(s[9], pair("2", "1"));
        assert!(s.iter().all(|p| match p {
            Point::Tuple(t) => space.member_tuple(t),
            _ => false,
        }));
        assert_eq!(s, space.sample(10, 1));
    }
}
