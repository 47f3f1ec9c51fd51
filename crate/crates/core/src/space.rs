//! Subspaces of ordinals as finite interval unions with point corrections.
//!
//! A `PiecewiseSet` is a normalized union of lower-exclusive, upper-inclusive
//! intervals `(lo, hi]` together with finitely many added points (outside the
//! intervals) and removed points (inside them). Membership, traces, boolean
//! operations, isolation and accumulation questions are all decidable on this
//! form.

use std::fmt;
use std::str::FromStr;

use crate::ordinal::{parse_ordinal_prefix, CardinalValue, Ordinal};

/// The interval `(lo, hi]`; `lo = None` means the interval starts at 0
/// inclusively, written `[0, hi]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrdinalInterval {
    pub lo: Option<Ordinal>,
    pub hi: Ordinal,
}

impl OrdinalInterval {
    pub fn new(lo: Option<Ordinal>, hi: Ordinal) -> Self {
        OrdinalInterval { lo, hi }
    }

    pub fn contains(&self, x: &Ordinal) -> bool {
        *x <= self.hi && self.lo.as_ref().is_none_or(|l| l < x)
    }

    fn is_empty(&self) -> bool {
        self.lo.as_ref().is_some_and(|l| *l >= self.hi)
    }

    /// Least element: `lo + 1`, or 0 for a bottom interval.
    fn min_member(&self) -> Ordinal {
        match &self.lo {
            None => Ordinal::zero(),
            Some(l) => l.succ(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum SpaceError {
    #[error("the space has no points")]
    EmptySpace,
    #[error("the point is not a member of the space")]
    NotAMember,
    #[error("a product needs at least one factor")]
    NoFactors,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at byte {position}: {message}")]
pub struct SetParseError {
    pub position: usize,
    pub message: String,
}

/// Normalized piecewise set of ordinals.
///
/// Invariants: intervals are nonempty, sorted, pairwise disjoint and
/// non-adjacent; `plus` holds limit ordinals outside every interval; `minus`
/// holds limit ordinals inside some interval. Two equal sets have identical
/// normal forms, so derived equality is set equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct PiecewiseSet {
    intervals: Vec<OrdinalInterval>,
    plus: Vec<Ordinal>,
    minus: Vec<Ordinal>,
}

impl PiecewiseSet {
    pub fn empty() -> Self {
        PiecewiseSet::default()
    }

    pub fn singleton(x: Ordinal) -> Self {
        PiecewiseSet::normalize(Vec::new(), vec![x], Vec::new())
    }

    pub fn interval(lo: Option<Ordinal>, hi: Ordinal) -> Self {
        PiecewiseSet::normalize(vec![OrdinalInterval::new(lo, hi)], Vec::new(), Vec::new())
    }

    pub fn intervals(&self) -> &[OrdinalInterval] {
        &self.intervals
    }

    pub fn plus_points(&self) -> &[Ordinal] {
        &self.plus
    }

    pub fn minus_points(&self) -> &[Ordinal] {
        &self.minus
    }

    /// Builds the normal form of `(union of intervals + plus) - minus`.
    pub fn normalize(
        intervals: Vec<OrdinalInterval>,
        plus: Vec<Ordinal>,
        minus: Vec<Ordinal>,
    ) -> Self {
        // Successor and zero points become one-point intervals so adjacency
        // merging sees them; limits stay as explicit points.
        let mut ivs: Vec<OrdinalInterval> = Vec::new();
        let mut limit_plus: Vec<Ordinal> = Vec::new();
        for iv in intervals {
            if !iv.is_empty() {
                ivs.push(iv);
            }
        }
        for p in plus {
            if p.is_limit() {
                limit_plus.push(p);
            } else {
                ivs.push(OrdinalInterval::new(p.pred(), p));
            }
        }
        ivs.sort();
        let mut merged: Vec<OrdinalInterval> = Vec::new();
        for iv in ivs {
            match merged.last_mut() {
                Some(last) if iv.lo.as_ref().is_none_or(|l| *l <= last.hi) => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => merged.push(iv),
            }
        }
        limit_plus.sort();
        limit_plus.dedup();
        limit_plus.retain(|p| !merged.iter().any(|iv| iv.contains(p)));

        let mut out = PiecewiseSet { intervals: merged, plus: limit_plus, minus: Vec::new() };
        let mut removals = minus;
        removals.sort();
        removals.dedup();
        for m in removals {
            out.remove_point(&m);
        }
        out
    }

    /// Removes one point, keeping the normal form.
    fn remove_point(&mut self, m: &Ordinal) {
        if let Ok(i) = self.plus.binary_search(m) {
            self.plus.remove(i);
            return;
        }
        let Some(idx) = self.intervals.iter().position(|iv| iv.contains(m)) else {
            return;
        };
        if m.is_limit() {
            match self.minus.binary_search(m) {
                Ok(_) => {}
                Err(i) => self.minus.insert(i, m.clone()),
            }
            return;
        }
        let iv = self.intervals.remove(idx);
        let mut replace = Vec::new();
        let lower = OrdinalInterval::new(iv.lo.clone(), m.pred().unwrap_or_else(Ordinal::zero));
        if m.pred().is_some() && !lower.is_empty() {
            replace.push(lower);
        }
        let upper = OrdinalInterval::new(Some(m.clone()), iv.hi.clone());
        if !upper.is_empty() {
            replace.push(upper);
        }
        self.intervals.splice(idx..idx, replace);
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty() && self.plus.is_empty()
    }

    pub fn member(&self, x: &Ordinal) -> bool {
        if self.minus.binary_search(x).is_ok() {
            return false;
        }
        if self.plus.binary_search(x).is_ok() {
            return true;
        }
        self.intervals.iter().any(|iv| iv.contains(x))
    }

    /// Intersection with the ambient interval `(lo, hi]`.
    pub fn trace(&self, lo: Option<&Ordinal>, hi: &Ordinal) -> PiecewiseSet {
        let mut ivs = Vec::new();
        for iv in &self.intervals {
            let new_lo = match (&iv.lo, lo) {
                (None, None) => None,
                (Some(a), None) => Some(a.clone()),
                (None, Some(b)) => Some(b.clone()),
                (Some(a), Some(b)) => Some(a.max(b).clone()),
            };
            let new_hi = iv.hi.clone().min(hi.clone());
            ivs.push(OrdinalInterval::new(new_lo, new_hi));
        }
        let plus = self
            .plus
            .iter()
            .filter(|p| *p <= hi && lo.is_none_or(|l| l < *p))
            .cloned()
            .collect();
        PiecewiseSet::normalize(ivs, plus, self.minus.clone())
    }

    /// Set difference.
    pub fn difference(&self, other: &PiecewiseSet) -> PiecewiseSet {
        let mut ivs = self.intervals.clone();
        for cut in &other.intervals {
            let mut next = Vec::new();
            for iv in ivs {
                // Part of iv at or below the cut's lower edge.
                if let Some(cl) = &cut.lo {
                    let lower = OrdinalInterval::new(iv.lo.clone(), iv.hi.clone().min(cl.clone()));
                    if !lower.is_empty() {
                        next.push(lower);
                    }
                }
                // Part of iv strictly above the cut's upper edge.
                if cut.hi < iv.hi {
                    let lo = match &iv.lo {
                        Some(l) => Some(l.max(&cut.hi).clone()),
                        None => Some(cut.hi.clone()),
                    };
                    let upper = OrdinalInterval::new(lo, iv.hi.clone());
                    if !upper.is_empty() {
                        next.push(upper);
                    }
                }
            }
            ivs = next;
        }
        let mut plus: Vec<Ordinal> = self
            .plus
            .iter()
            .filter(|p| !other.intervals.iter().any(|iv| iv.contains(p)))
            .cloned()
            .collect();
        plus.extend(other.minus.iter().filter(|m| self.member(m)).cloned());
        let mut minus = self.minus.clone();
        minus.extend(other.plus.iter().cloned());
        PiecewiseSet::normalize(ivs, plus, minus)
    }

    pub fn intersection(&self, other: &PiecewiseSet) -> PiecewiseSet {
        self.difference(&self.difference(other))
    }

    pub fn union(&self, other: &PiecewiseSet) -> PiecewiseSet {
        let mut ivs = self.intervals.clone();
        ivs.extend(other.intervals.iter().cloned());
        let mut plus = self.plus.clone();
        plus.extend(other.plus.iter().cloned());
        let mut minus: Vec<Ordinal> = self
            .minus
            .iter()
            .filter(|m| !other.member(m))
            .cloned()
            .collect();
        minus.extend(other.minus.iter().filter(|m| !self.member(m)).cloned());
        PiecewiseSet::normalize(ivs, plus, minus)
    }

    pub fn is_subset_of(&self, other: &PiecewiseSet) -> bool {
        self.difference(other).is_empty()
    }

    /// True when members of the set are cofinal strictly below `x`, which
    /// requires `x` to be a limit. Finitely many removed points cannot stop
    /// an interval from accumulating.
    pub fn accumulates_below(&self, x: &Ordinal) -> bool {
        x.is_limit()
            && self
                .intervals
                .iter()
                .any(|iv| iv.hi >= *x && iv.lo.as_ref().is_none_or(|l| l < x))
    }

    pub fn size(&self) -> CardinalValue {
        let mut total: u64 = 0;
        for iv in &self.intervals {
            let count = match &iv.lo {
                None => iv.hi.nat_value().map(|n| n + 1),
                Some(l) => l
                    .left_diff(&iv.hi)
                    .expect("interval is nonempty")
                    .nat_value(),
            };
            match count {
                Some(n) => total += n,
                None => return CardinalValue::AlephNought,
            }
        }
        CardinalValue::Finite(total + self.plus.len() as u64 - self.minus.len() as u64)
    }

    pub fn min_member(&self) -> Option<Ordinal> {
        let from_interval = self.intervals.first().map(|iv| iv.min_member());
        let from_plus = self.plus.first().cloned();
        match (from_interval, from_plus) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// The supremum and whether it is attained by a member.
    pub fn sup(&self) -> Option<(Ordinal, bool)> {
        let from_interval = self
            .intervals
            .last()
            .map(|iv| (iv.hi.clone(), self.minus.binary_search(&iv.hi).is_err()));
        let from_plus = self.plus.last().map(|p| (p.clone(), true));
        match (from_interval, from_plus) {
            (Some(a), Some(b)) => Some(if a.0 > b.0 { a } else { b }),
            (a, b) => a.or(b),
        }
    }

    pub fn max_member(&self) -> Option<Ordinal> {
        match self.sup() {
            Some((s, true)) => Some(s),
            _ => None,
        }
    }

    /// The least member strictly above `x`, if any.
    pub fn first_member_above(&self, x: &Ordinal) -> Option<Ordinal> {
        let mut best: Option<Ordinal> = None;
        for iv in &self.intervals {
            if iv.hi <= *x {
                continue;
            }
            let mut candidate = iv.min_member().max(x.succ());
            while candidate <= iv.hi {
                if self.minus.binary_search(&candidate).is_err() {
                    break;
                }
                candidate = candidate.succ();
            }
            if candidate <= iv.hi {
                best = Some(match best {
                    Some(b) => b.min(candidate),
                    None => candidate,
                });
                break;
            }
        }
        if let Some(p) = self.plus.iter().find(|p| *p > x) {
            best = Some(match best {
                Some(b) => b.min(p.clone()),
                None => p.clone(),
            });
        }
        best
    }

    /// All members in ascending order; the set must be finite.
    pub fn members(&self) -> Vec<Ordinal> {
        debug_assert!(matches!(self.size(), CardinalValue::Finite(_)));
        let mut out = Vec::new();
        for iv in &self.intervals {
            let mut x = iv.min_member();
            while x <= iv.hi {
                if self.minus.binary_search(&x).is_err() {
                    out.push(x.clone());
                }
                x = x.succ();
            }
        }
        out.extend(self.plus.iter().cloned());
        out.sort();
        out
    }

    /// True when every member is isolated in the set. Only limit members of
    /// an interval can be accumulation points; plus points never are.
    pub fn is_discrete(&self) -> bool {
        for iv in &self.intervals {
            let start = match &iv.lo {
                None => Ordinal::zero(),
                Some(l) => l.clone(),
            };
            let mut lambda = start.next_limit_above();
            while lambda <= iv.hi {
                if self.minus.binary_search(&lambda).is_err() {
                    return false;
                }
                lambda = lambda.plus(&Ordinal::omega());
            }
        }
        true
    }
}

impl fmt::Display for PiecewiseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "(0,0]");
        }
        let mut first = true;
        for iv in &self.intervals {
            if !first {
                write!(f, "|")?;
            }
            first = false;
            match &iv.lo {
                None => write!(f, "[0,{}]", iv.hi)?,
                Some(l) => write!(f, "({},{}]", l, iv.hi)?,
            }
        }
        if !self.plus.is_empty() {
            if !first {
                write!(f, "|")?;
            }
            first = false;
            write!(f, "{{")?;
            for (i, p) in self.plus.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{p}")?;
            }
            write!(f, "}}")?;
        }
        let _ = first;
        if !self.minus.is_empty() {
            write!(f, "\\{{")?;
            for (i, m) in self.minus.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{m}")?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

impl FromStr for PiecewiseSet {
    type Err = SetParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_set(s)
    }
}

/// Set expression grammar:
///
/// ```text
/// set  := atom (("|" | "\") atom)*
/// atom := "(" ord "," ord "]" | "[0," ord "]" | "{" ord ("," ord)* "}"
/// ```
///
/// `|` is union and `\` is difference, evaluated left to right.
fn parse_set(s: &str) -> Result<PiecewiseSet, SetParseError> {
    let input = s.as_bytes();
    let mut pos = 0usize;
    let mut acc = parse_atom(input, &mut pos)?;
    loop {
        skip_ws(input, &mut pos);
        match input.get(pos) {
            Some(b'|') => {
                pos += 1;
                let atom = parse_atom(input, &mut pos)?;
                acc = acc.union(&atom);
            }
            Some(b'\\') => {
                pos += 1;
                let atom = parse_atom(input, &mut pos)?;
                acc = acc.difference(&atom);
            }
            None => return Ok(acc),
            _ => {
                return Err(SetParseError {
                    position: pos,
                    message: "expected '|', '\\' or end of input".to_string(),
                })
            }
        }
    }
}

fn skip_ws(input: &[u8], pos: &mut usize) {
    while input.get(*pos).is_some_and(|b| b.is_ascii_whitespace()) {
        *pos += 1;
    }
}

fn expect(input: &[u8], pos: &mut usize, b: u8) -> Result<(), SetParseError> {
    skip_ws(input, pos);
    if input.get(*pos) == Some(&b) {
        *pos += 1;
        Ok(())
    } else {
        Err(SetParseError {
            position: *pos,
            message: format!("expected '{}'", b as char),
        })
    }
}

fn parse_ord_at(input: &[u8], pos: &mut usize) -> Result<Ordinal, SetParseError> {
    skip_ws(input, pos);
    let (ord, next) = parse_ordinal_prefix(input, *pos)
        .map_err(|e| SetParseError { position: e.position, message: e.message })?;
    *pos = next;
    Ok(ord)
}

fn parse_atom(input: &[u8], pos: &mut usize) -> Result<PiecewiseSet, SetParseError> {
    skip_ws(input, pos);
    match input.get(*pos) {
        Some(b'(') => {
            *pos += 1;
            let lo = parse_ord_at(input, pos)?;
            expect(input, pos, b',')?;
            let hi = parse_ord_at(input, pos)?;
            expect(input, pos, b']')?;
            Ok(PiecewiseSet::interval(Some(lo), hi))
        }
        Some(b'[') => {
            *pos += 1;
            expect(input, pos, b'0')?;
            expect(input, pos, b',')?;
            let hi = parse_ord_at(input, pos)?;
            expect(input, pos, b']')?;
            Ok(PiecewiseSet::interval(None, hi))
        }
        Some(b'{') => {
            *pos += 1;
            let mut points = vec![parse_ord_at(input, pos)?];
            loop {
                skip_ws(input, pos);
                if input.get(*pos) == Some(&b',') {
                    *pos += 1;
                    points.push(parse_ord_at(input, pos)?);
                } else {
                    break;
                }
            }
            expect(input, pos, b'}')?;
            Ok(PiecewiseSet::normalize(Vec::new(), points, Vec::new()))
        }
        _ => Err(SetParseError {
            position: *pos,
            message: "expected '(', '[0,' or '{'".to_string(),
        }),
    }
}

/// A nonempty subspace of an ordinal `[0, bound]` with the order topology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrdinalSubspace {
    bound: Ordinal,
    carrier: PiecewiseSet,
}

impl OrdinalSubspace {
    pub fn new(carrier: PiecewiseSet) -> Result<Self, SpaceError> {
        let (bound, _) = carrier.sup().ok_or(SpaceError::EmptySpace)?;
        Ok(OrdinalSubspace { bound, carrier })
    }

    pub fn bound(&self) -> &Ordinal {
        &self.bound
    }

    pub fn carrier(&self) -> &PiecewiseSet {
        &self.carrier
    }

    pub fn member(&self, x: &Ordinal) -> bool {
        self.carrier.member(x)
    }

    /// True when some punctured neighborhood `(g, x)` misses the space.
    /// Zero and successor members are always isolated; a limit member is
    /// isolated exactly when members do not accumulate at it from below.
    pub fn is_isolated(&self, x: &Ordinal) -> Result<bool, SpaceError> {
        if !self.member(x) {
            return Err(SpaceError::NotAMember);
        }
        Ok(!self.carrier.accumulates_below(x))
    }

    /// Character of a point: 1 for isolated points, aleph-0 otherwise.
    pub fn character_at(&self, x: &Ordinal) -> Result<CardinalValue, SpaceError> {
        Ok(if self.is_isolated(x)? {
            CardinalValue::Finite(1)
        } else {
            CardinalValue::AlephNought
        })
    }

    /// Cardinality when discrete, otherwise the least character over the
    /// non-isolated points (aleph-0 in countable scope).
    pub fn p_number(&self) -> CardinalValue {
        if self.carrier.is_discrete() {
            self.carrier.size()
        } else {
            CardinalValue::AlephNought
        }
    }

    /// The trace `X n (lo, hi]`.
    pub fn trace_interval(&self, lo: Option<&Ordinal>, hi: &Ordinal) -> PiecewiseSet {
        self.carrier.trace(lo, hi)
    }

    /// Deterministic sample of members, in three passes with a fixed
    /// priority: interval endpoints and plus points ascending, then
    /// fundamental-sequence descents of limit members (snapped to the next
    /// member when the raw value is absent, recursion level shrinking with
    /// depth), then successor offsets closed under repetition. Truncated at
    /// `budget`, returned ascending.
    pub fn sample(&self, budget: usize, depth: u64) -> Vec<Ordinal> {
        let mut out: Vec<Ordinal> = Vec::new();
        let push = |out: &mut Vec<Ordinal>, x: Ordinal| -> bool {
            if out.len() < budget && !out.contains(&x) {
                debug_assert!(self.carrier.member(&x));
                out.push(x);
                true
            } else {
                false
            }
        };

        let mut endpoints = Vec::new();
        for iv in self.carrier.intervals() {
            endpoints.push(iv.min_member());
            if self.carrier.member(&iv.hi) {
                endpoints.push(iv.hi.clone());
            }
        }
        endpoints.extend(self.carrier.plus_points().iter().cloned());
        endpoints.sort();
        endpoints.dedup();
        for e in endpoints {
            push(&mut out, e);
        }

        let mut queue: Vec<(Ordinal, u64)> = out
            .iter()
            .filter(|x| x.is_limit())
            .map(|x| (x.clone(), depth))
            .collect();
        let mut qi = 0;
        while qi < queue.len() && out.len() < budget {
            let (m, lvl) = queue[qi].clone();
            qi += 1;
            if lvl == 0 {
                continue;
            }
            for i in 1..=lvl {
                let raw = m.fundamental_sequence(i).expect("queued point is a limit");
                let snapped = if self.carrier.member(&raw) {
                    Some(raw)
                } else {
                    self.carrier.first_member_above(&raw).filter(|w| w < &m)
                };
                if let Some(v) = snapped {
                    let is_new_limit = v.is_limit();
                    if push(&mut out, v.clone()) && is_new_limit {
                        queue.push((v, lvl - 1));
                    }
                }
            }
        }

        let mut oi = 0;
        while oi < out.len() && out.len() < budget {
            let s = out[oi].succ();
            if self.carrier.member(&s) {
                push(&mut out, s);
            }
            oi += 1;
        }

        out.sort();
        out
    }
}

impl FromStr for OrdinalSubspace {
    type Err = SetParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let carrier: PiecewiseSet = s.parse()?;
        OrdinalSubspace::new(carrier).map_err(|e| SetParseError {
            position: 0,
            message: e.to_string(),
        })
    }
}

/// A point of a space: an ordinal, or a tuple for product spaces.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Point {
    Ord(Ordinal),
    Tuple(Vec<Point>),
}

impl Point {
    pub fn ordinal(&self) -> Option<&Ordinal> {
        match self {
            Point::Ord(o) => Some(o),
            Point::Tuple(_) => None,
        }
    }
}

impl From<Ordinal> for Point {
    fn from(o: Ordinal) -> Self {
        Point::Ord(o)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Ord(o) => write!(f, "{o}"),
            Point::Tuple(ps) => {
                write!(f, "(")?;
                for (i, p) in ps.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{p}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// A space the engine can stratify: an ordinal subspace or a finite product.
/// Finite explicit point sets are finite ordinal subspaces (finite spaces
/// are discrete either way).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Space {
    Ordinal(OrdinalSubspace),
    Product(crate::product::ProductSpace),
}

impl Space {
    pub fn member(&self, p: &Point) -> bool {
        match (self, p) {
            (Space::Ordinal(x), Point::Ord(o)) => x.member(o),
            (Space::Product(x), Point::Tuple(t)) => x.member_tuple(t),
            _ => false,
        }
    }

    pub fn is_isolated(&self, p: &Point) -> Result<bool, SpaceError> {
        match (self, p) {
            (Space::Ordinal(x), Point::Ord(o)) => x.is_isolated(o),
            (Space::Product(x), Point::Tuple(t)) => x.is_isolated_tuple(t),
            _ => Err(SpaceError::NotAMember),
        }
    }

    pub fn character_at(&self, p: &Point) -> Result<CardinalValue, SpaceError> {
        match (self, p) {
            (Space::Ordinal(x), Point::Ord(o)) => x.character_at(o),
            (Space::Product(x), Point::Tuple(t)) => x.character_at_tuple(t),
            _ => Err(SpaceError::NotAMember),
        }
    }

    pub fn p_number(&self) -> CardinalValue {
        match self {
            Space::Ordinal(x) => x.p_number(),
            Space::Product(x) => x.p_number(),
        }
    }

    pub fn sample(&self, budget: usize, depth: u64) -> Vec<Point> {
        match self {
            Space::Ordinal(x) => x.sample(budget, depth).into_iter().map(Point::Ord).collect(),
            Space::Product(x) => x.sample(budget, depth),
        }
    }
}

impl FromStr for Space {
    type Err = SetParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Space::Ordinal(s.parse()?))
    }
}
