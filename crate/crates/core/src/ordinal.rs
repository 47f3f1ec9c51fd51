//! Ordinals below epsilon-0 in Cantor normal form.
//!
//! An ordinal is a strictly decreasing sequence of `(exponent, coefficient)`
//! terms denoting `w^e1*c1 + w^e2*c2 + ...`; exponents are themselves
//! ordinals, coefficients are positive. The empty sequence is 0.

use std::fmt;
use std::str::FromStr;

/// One CNF term `w^exponent * coeff`, coeff >= 1.
///
/// Field order matters: the derived ordering (exponent first, then
/// coefficient) is exactly CNF term comparison.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CnfTerm {
    pub exponent: Ordinal,
    pub coeff: u64,
}

/// An ordinal below epsilon-0.
///
/// The derived lexicographic ordering on the term list is CNF comparison:
/// a strict prefix is smaller, and terms compare by (exponent, coefficient).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Ordinal {
    terms: Vec<CnfTerm>,
}

/// Classification of an ordinal by its last CNF term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrdinalKind {
    Zero,
    Successor,
    Limit,
}

/// Cardinal answers in countable scope: a natural number or aleph-0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CardinalValue {
    Finite(u64),
    AlephNought,
}

impl fmt::Display for CardinalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CardinalValue::Finite(n) => write!(f, "{n}"),
            CardinalValue::AlephNought => write!(f, "aleph0"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at byte {position}: {message}")]
pub struct OrdinalParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum FundSeqError {
    #[error("fundamental sequences are defined for limit ordinals only")]
    NotALimit,
    #[error("fundamental sequence index must be at least 1")]
    IndexZero,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Self::zero()
        } else {
            Ordinal {
                terms: vec![CnfTerm { exponent: Self::zero(), coeff: n }],
            }
        }
    }

    pub fn omega() -> Self {
        Self::omega_pow(Self::nat(1))
    }

    /// `w^exp`.
    pub fn omega_pow(exp: Ordinal) -> Self {
        Ordinal {
            terms: vec![CnfTerm { exponent: exp, coeff: 1 }],
        }
    }

    /// `w^exp * coeff`; zero when `coeff == 0`.
    pub fn omega_pow_mul(exp: Ordinal, coeff: u64) -> Self {
        if coeff == 0 {
            Self::zero()
        } else {
            Ordinal {
                terms: vec![CnfTerm { exponent: exp, coeff }],
            }
        }
    }

    /// Builds from a term list that must already be in strictly decreasing
    /// exponent order with positive coefficients.
    fn from_terms(terms: Vec<CnfTerm>) -> Self {
        debug_assert!(terms.iter().all(|t| t.coeff > 0));
        debug_assert!(terms.windows(2).all(|w| w[0].exponent > w[1].exponent));
        Ordinal { terms }
    }

    pub fn terms(&self) -> &[CnfTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value as a natural number, if below omega.
    pub fn nat_value(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [t] if t.exponent.is_zero() => Some(t.coeff),
            _ => None,
        }
    }

    pub fn classify(&self) -> OrdinalKind {
        match self.terms.last() {
            None => OrdinalKind::Zero,
            Some(t) if t.exponent.is_zero() => OrdinalKind::Successor,
            Some(_) => OrdinalKind::Limit,
        }
    }

    pub fn is_limit(&self) -> bool {
        self.classify() == OrdinalKind::Limit
    }

    pub fn is_successor(&self) -> bool {
        self.classify() == OrdinalKind::Successor
    }

    /// Predecessor of a successor ordinal.
    pub fn pred(&self) -> Option<Ordinal> {
        match self.classify() {
            OrdinalKind::Successor => {
                let mut terms = self.terms.clone();
                let last = terms.last_mut().expect("successor has a last term");
                if last.coeff > 1 {
                    last.coeff -= 1;
                } else {
                    terms.pop();
                }
                Some(Ordinal::from_terms(terms))
            }
            _ => None,
        }
    }

    pub fn succ(&self) -> Ordinal {
        self.plus(&Ordinal::nat(1))
    }

    /// Ordinal addition. Not commutative: the left argument's terms with
    /// exponents below the right argument's leading exponent are absorbed.
    pub fn plus(&self, other: &Ordinal) -> Ordinal {
        let Some(lead) = other.terms.first() else {
            return self.clone();
        };
        let keep = self
            .terms
            .iter()
            .take_while(|t| t.exponent > lead.exponent)
            .count();
        let mut terms: Vec<CnfTerm> = self.terms[..keep].to_vec();
        if self.terms.get(keep).map(|t| &t.exponent) == Some(&lead.exponent) {
            terms.push(CnfTerm {
                exponent: lead.exponent.clone(),
                coeff: self.terms[keep]
                    .coeff
                    .checked_add(lead.coeff)
                    .expect("coefficient overflow"),
            });
        } else {
            terms.push(lead.clone());
        }
        terms.extend(other.terms[1..].iter().cloned());
        Ordinal::from_terms(terms)
    }

    /// Cofinality: 0 for zero, 1 for successors, aleph-0 for countable limits.
    pub fn cofinality(&self) -> CardinalValue {
        match self.classify() {
            OrdinalKind::Zero => CardinalValue::Finite(0),
            OrdinalKind::Successor => CardinalValue::Finite(1),
            OrdinalKind::Limit => CardinalValue::AlephNought,
        }
    }

    /// The ordinal with the last term's coefficient decremented: for
    /// `a = d + w^x*c` this is `d + w^x*(c-1)`. Identity on zero.
    pub(crate) fn limit_base(&self) -> Ordinal {
        let mut terms = self.terms.clone();
        match terms.last_mut() {
            None => self.clone(),
            Some(last) => {
                if last.coeff > 1 {
                    last.coeff -= 1;
                } else {
                    terms.pop();
                }
                Ordinal::from_terms(terms)
            }
        }
    }

    /// The unique `d` with `self + d == larger`, or None when `self > larger`.
    pub(crate) fn left_diff(&self, larger: &Ordinal) -> Option<Ordinal> {
        if self > larger {
            return None;
        }
        let mut i = 0;
        while i < self.terms.len() && i < larger.terms.len() && self.terms[i] == larger.terms[i] {
            i += 1;
        }
        if i == self.terms.len() {
            return Some(Ordinal::from_terms(larger.terms[i..].to_vec()));
        }
        debug_assert!(i < larger.terms.len(), "self <= larger with equal prefix");
        let (s, l) = (&self.terms[i], &larger.terms[i]);
        if s.exponent == l.exponent {
            let mut terms = vec![CnfTerm {
                exponent: l.exponent.clone(),
                coeff: l.coeff - s.coeff,
            }];
            terms.extend(larger.terms[i + 1..].iter().cloned());
            Some(Ordinal::from_terms(terms))
        } else {
            Some(Ordinal::from_terms(larger.terms[i..].to_vec()))
        }
    }

    /// The least limit ordinal strictly above `self`.
    pub(crate) fn next_limit_above(&self) -> Ordinal {
        let mut terms = self.terms.clone();
        if terms.last().is_some_and(|t| t.exponent.is_zero()) {
            terms.pop();
        }
        Ordinal::from_terms(terms).plus(&Ordinal::omega())
    }

    /// The n-th element (n >= 1) of the canonical fundamental sequence of a
    /// limit ordinal: writing `a = d + w^x*c` and `d' = d + w^x*(c-1)`,
    /// `a[n] = d' + w^{x'}*n` when `x = x'+1`, and `a[n] = d' + w^{x[n]}`
    /// when `x` is a limit.
    pub fn fundamental_sequence(&self, n: u64) -> Result<Ordinal, FundSeqError> {
        if !self.is_limit() {
            return Err(FundSeqError::NotALimit);
        }
        if n == 0 {
            return Err(FundSeqError::IndexZero);
        }
        let last = self.terms.last().expect("limit ordinal is nonzero");
        let base = self.limit_base();
        let xi = &last.exponent;
        let step = match xi.classify() {
            OrdinalKind::Successor => {
                Ordinal::omega_pow_mul(xi.pred().expect("successor exponent"), n)
            }
            OrdinalKind::Limit => Ordinal::omega_pow(
                xi.fundamental_sequence(n)
                    .expect("limit exponent has a fundamental sequence"),
            ),
            OrdinalKind::Zero => unreachable!("limit ordinal has positive last exponent"),
        };
        Ok(base.plus(&step))
    }
}

impl FromStr for Ordinal {
    type Err = OrdinalParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser { input: s.as_bytes(), pos: 0 };
        let ord = p.parse_ord()?;
        p.skip_ws();
        if p.pos < p.input.len() {
            return Err(p.err("unexpected trailing input"));
        }
        Ok(ord)
    }
}

/// Parses one ordinal expression starting at `pos`, returning the value and
/// the position just past it. Used by the set expression parser.
pub(crate) fn parse_ordinal_prefix(
    input: &[u8],
    pos: usize,
) -> Result<(Ordinal, usize), OrdinalParseError> {
    let mut p = Parser { input, pos };
    let ord = p.parse_ord()?;
    Ok((ord, p.pos))
}

/// Grammar:
///
/// ```text
/// ord  := term ("+" term)*
/// term := "w" ("^" pexp)? ("*" nat)? | nat
/// pexp := "(" ord ")" | "w" ("^" pexp)? | nat
/// ```
///
/// Sums are normalized by ordinal addition, so non-canonical input such as
/// `w + w^2` parses to `w^2`.
struct Parser<'a> {
    input: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, message: &str) -> OrdinalParseError {
        OrdinalParseError { position: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.input.get(self.pos).is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.input.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn parse_nat(&mut self) -> Result<u64, OrdinalParseError> {
        self.skip_ws();
        let start = self.pos;
        while self.input.get(self.pos).is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected a natural number"));
        }
        std::str::from_utf8(&self.input[start..self.pos])
            .expect("digits are utf8")
            .parse()
            .map_err(|_| OrdinalParseError {
                position: start,
                message: "natural number out of range".to_string(),
            })
    }

    fn parse_ord(&mut self) -> Result<Ordinal, OrdinalParseError> {
        let mut acc = self.parse_term()?;
        while self.eat(b'+') {
            let t = self.parse_term()?;
            acc = acc.plus(&t);
        }
        Ok(acc)
    }

    fn parse_term(&mut self) -> Result<Ordinal, OrdinalParseError> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                let exp = if self.eat(b'^') { self.parse_pexp()? } else { Ordinal::nat(1) };
                let coeff = if self.eat(b'*') { self.parse_nat()? } else { 1 };
                Ok(Ordinal::omega_pow_mul(exp, coeff))
            }
            Some(b) if b.is_ascii_digit() => Ok(Ordinal::nat(self.parse_nat()?)),
            _ => Err(self.err("expected 'w' or a natural number")),
        }
    }

    fn parse_pexp(&mut self) -> Result<Ordinal, OrdinalParseError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let ord = self.parse_ord()?;
                if !self.eat(b')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(ord)
            }
            Some(b'w') => {
                self.pos += 1;
                let exp = if self.eat(b'^') { self.parse_pexp()? } else { Ordinal::nat(1) };
                Ok(Ordinal::omega_pow(exp))
            }
            Some(b) if b.is_ascii_digit() => Ok(Ordinal::nat(self.parse_nat()?)),
            _ => Err(self.err("expected '(', 'w' or a natural number")),
        }
    }
}

/// True when the ordinal can stand bare after `^` (a nat or a pure tower
/// `w^w^...`); anything else is parenthesized on output.
fn bare_exponent(x: &Ordinal) -> bool {
    if x.nat_value().is_some() {
        return true;
    }
    match x.terms.as_slice() {
        [t] if t.coeff == 1 => bare_exponent(&t.exponent),
        _ => false,
    }
}

fn fmt_exponent(x: &Ordinal, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if bare_exponent(x) {
        write!(f, "{x}")
    } else {
        write!(f, "({x})")
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if t.exponent.is_zero() {
                write!(f, "{}", t.coeff)?;
                continue;
            }
            if t.exponent.nat_value() == Some(1) {
                write!(f, "w")?;
            } else {
                write!(f, "w^")?;
                fmt_exponent(&t.exponent, f)?;
            }
            if t.coeff != 1 {
                write!(f, "*{}", t.coeff)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ord(s: &str) -> Ordinal {
        s.parse().expect("test ordinal parses")
    }

    #[test]
    fn compares_by_cnf() {
        assert!(ord("w*2+3") < ord("w^2"));
        assert!(ord("w^2*2") > ord("w^2+w*5"));
        assert!(ord("w^2") < ord("w^2+1"));
        assert!(ord("3") < ord("w"));
        assert_eq!(ord("w+0"), ord("w"));
    }

    #[test]
    fn addition_absorbs_on_the_left() {
        assert_eq!(ord("w+3").plus(&ord("w*2")), ord("w*3"));
        assert_eq!(ord("w^2+w").plus(&ord("1")), ord("w^2+w+1"));
        assert_eq!(ord("5").plus(&ord("w")), ord("w"));
        assert_eq!(ord("w").plus(&ord("0")), ord("w"));
        assert_eq!(ord("0").plus(&ord("w")), ord("w"));
    }

    #[test]
    fn parser_normalizes_sums() {
        assert_eq!(ord("w + w^2"), ord("w^2"));
        assert_eq!(ord("1 + w"), ord("w"));
        assert_eq!(ord("w*0"), ord("0"));
        assert_eq!(ord("w^2*3 + w + 4").to_string(), "w^2*3+w+4");
    }

    #[test]
    fn parser_reports_position() {
        let e = "w^".parse::<Ordinal>().unwrap_err();
        assert_eq!(e.position, 2);
        assert!("w**2".parse::<Ordinal>().is_err());
        assert!("".parse::<Ordinal>().is_err());
        assert!("w+".parse::<Ordinal>().is_err());
        assert!("w 2".parse::<Ordinal>().is_err());
        assert!("99999999999999999999999".parse::<Ordinal>().is_err());
    }

    #[test]
    fn parenthesized_exponents() {
        assert_eq!(ord("w^(w+1)").to_string(), "w^(w+1)");
        assert_eq!(ord("w^w+1").to_string(), "w^w+1");
        assert_eq!(ord("w^w^2").to_string(), "w^w^2");
        assert_eq!(ord("w^(w*2)").to_string(), "w^(w*2)");
        assert!(ord("w^(w+1)") > ord("w^w+1"));
    }

    #[test]
    fn classification() {
        assert_eq!(ord("0").classify(), OrdinalKind::Zero);
        assert_eq!(ord("w+3").classify(), OrdinalKind::Successor);
        assert_eq!(ord("w^2+w").classify(), OrdinalKind::Limit);
        assert_eq!(ord("w+3").pred(), Some(ord("w+2")));
        assert_eq!(ord("w+1").pred(), Some(ord("w")));
        assert_eq!(ord("w").pred(), None);
    }

    #[test]
    fn cofinality_by_kind() {
        assert_eq!(ord("0").cofinality(), CardinalValue::Finite(0));
        assert_eq!(ord("17").cofinality(), CardinalValue::Finite(1));
        assert_eq!(ord("w").cofinality(), CardinalValue::AlephNought);
        assert_eq!(ord("w^w*5+w^2").cofinality(), CardinalValue::AlephNought);
    }

    #[test]
    fn fundamental_sequence_examples() {
        assert_eq!(ord("w").fundamental_sequence(3).unwrap(), ord("3"));
        assert_eq!(ord("w^2").fundamental_sequence(3).unwrap(), ord("w*3"));
        assert_eq!(ord("w^w").fundamental_sequence(2).unwrap(), ord("w^2"));
        assert_eq!(ord("w*2").fundamental_sequence(4).unwrap(), ord("w+4"));
        assert_eq!(ord("w^2+w").fundamental_sequence(5).unwrap(), ord("w^2+5"));
        assert_eq!(
            ord("w^(w+1)").fundamental_sequence(2).unwrap(),
            ord("w^w*2")
        );
        assert_eq!(ord("5").fundamental_sequence(1), Err(FundSeqError::NotALimit));
        assert_eq!(ord("w").fundamental_sequence(0), Err(FundSeqError::IndexZero));
    }

    #[test]
    fn fundamental_sequence_is_monotone_and_below() {
        for s in ["w", "w*4", "w^2", "w^2*2+w*3", "w^w", "w^(w^2+w)*2", "w^w^w"] {
            let a = ord(s);
            let mut prev = Ordinal::zero();
            for n in 1..=30 {
                let v = a.fundamental_sequence(n).unwrap();
                assert!(v < a, "fs({s},{n}) below");
                assert!(v > prev || (n == 1 && v >= prev), "fs({s},{n}) increasing");
                prev = v;
            }
        }
    }

    #[test]
    fn limit_base_drops_one_from_the_last_coefficient() {
        assert_eq!(ord("w").limit_base(), ord("0"));
        assert_eq!(ord("w*2").limit_base(), ord("w"));
        assert_eq!(ord("w^2*3+w").limit_base(), ord("w^2*3"));
    }

    #[test]
    fn left_diff_inverts_addition() {
        assert_eq!(ord("w+3").left_diff(&ord("w*2")), Some(ord("w")));
        assert_eq!(ord("2").left_diff(&ord("7")), Some(ord("5")));
        assert_eq!(ord("w").left_diff(&ord("w+4")), Some(ord("4")));
        assert_eq!(ord("w*2").left_diff(&ord("w")), None);
        assert_eq!(ord("w^2").left_diff(&ord("w^2")), Some(ord("0")));
    }

    #[test]
    fn next_limit_above_steps_to_the_following_limit() {
        assert_eq!(ord("0").next_limit_above(), ord("w"));
        assert_eq!(ord("5").next_limit_above(), ord("w"));
        assert_eq!(ord("w").next_limit_above(), ord("w*2"));
        assert_eq!(ord("w+3").next_limit_above(), ord("w*2"));
        assert_eq!(ord("w^2").next_limit_above(), ord("w^2+w"));
    }

    mod oracle {
        use super::*;

        /// Independent encoding of ordinals below w^3 as lexicographic
        /// triples (a, b, c) standing for w^2*a + w*b + c.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
        pub struct Trip(pub u64, pub u64, pub u64);

        impl Trip {
            pub fn add(self, o: Trip) -> Trip {
                if o.0 > 0 {
                    Trip(self.0 + o.0, o.1, o.2)
                } else if o.1 > 0 {
                    Trip(self.0, self.1 + o.1, o.2)
                } else {
                    Trip(self.0, self.1, self.2 + o.2)
                }
            }

            pub fn to_ordinal(self) -> Ordinal {
                Ordinal::omega_pow_mul(Ordinal::nat(2), self.0)
                    .plus(&Ordinal::omega_pow_mul(Ordinal::nat(1), self.1))
                    .plus(&Ordinal::nat(self.2))
            }
        }

        #[test]
        fn cnf_matches_triple_oracle_on_a_grid() {
            let mut trips = Vec::new();
            for a in 0..4 {
                for b in 0..4 {
                    for c in 0..4 {
                        trips.push(Trip(a, b, c));
                    }
                }
            }
            for &s in &trips {
                for &t in &trips {
                    let (x, y) = (s.to_ordinal(), t.to_ordinal());
                    assert_eq!(x.cmp(&y), s.cmp(&t), "cmp {s:?} {t:?}");
                    assert_eq!(x.plus(&y), s.add(t).to_ordinal(), "add {s:?} {t:?}");
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_ordinal() -> impl Strategy<Value = Ordinal> {
            // Depth-2 towers with small coefficients; enough to cross w^w.
            let leaf = (0u64..4).prop_map(Ordinal::nat);
            let level1 = proptest::collection::vec((leaf, 1u64..4), 0..3).prop_map(build);
            proptest::collection::vec((level1, 1u64..4), 0..4).prop_map(build)
        }

        fn build(pairs: Vec<(Ordinal, u64)>) -> Ordinal {
            pairs
                .into_iter()
                .fold(Ordinal::zero(), |acc, (e, c)| acc.plus(&Ordinal::omega_pow_mul(e, c)))
        }

        proptest! {
            #[test]
            fn round_trip(a in arb_ordinal()) {
                let s = a.to_string();
                let back: Ordinal = s.parse().expect("canonical text parses");
                prop_assert_eq!(back, a);
            }

            #[test]
            fn order_is_total_and_transitive(
                a in arb_ordinal(), b in arb_ordinal(), c in arb_ordinal()
            ) {
                prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
                if a <= b && b <= c {
                    prop_assert!(a <= c);
                }
            }

            #[test]
            fn addition_is_associative_and_right_monotone(
                a in arb_ordinal(), b in arb_ordinal(), c in arb_ordinal()
            ) {
                prop_assert_eq!(a.plus(&b).plus(&c), a.plus(&b.plus(&c)));
                if b < c {
                    prop_assert!(a.plus(&b) < a.plus(&c));
                }
                prop_assert!(a.plus(&b) >= a.clone());
                prop_assert!(a.plus(&b) >= b.clone());
                prop_assert_eq!(a.left_diff(&a.plus(&b)), Some(b.clone()));
            }

            #[test]
            fn successor_round_trip(a in arb_ordinal()) {
                prop_assert_eq!(a.succ().pred().expect("successor has pred"), a);
            }

            #[test]
            fn fundamental_sequence_stays_below(a in arb_ordinal(), n in 1u64..20) {
                if a.is_limit() {
                    let v = a.fundamental_sequence(n).unwrap();
                    prop_assert!(v < a);
                    let w = a.fundamental_sequence(n + 1).unwrap();
                    prop_assert!(v < w);
                }
            }
        }
    }
}
