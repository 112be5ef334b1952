//! Cantor normal form terms over a pluggable exponent order.
//!
//! A term `w^{e_n}*k_n + ... + w^{e_1}*k_1 + k_0` is a strictly decreasing
//! list of `(exponent, coefficient)` pairs; the constant `k_0` is the term
//! whose exponent is the order's zero. Each exponent order designates a
//! downward-closed standard part. [`split`] separates a term into its
//! non-standard head and standard tail, and [`dense_between`] exhibits the
//! density of pure (tail-free) terms when the non-standard part is dense
//! without a least element.
//!
//! Two exponent orders ship with the crate:
//! - [`StdExp`]: exponents are themselves standard terms, so terms denote
//!   genuine ordinals below epsilon-zero. Everything is standard.
//! - [`CutExp`]: naturals (standard) followed by a copy of the rationals
//!   (non-standard), a toy model of the ordinals of an ill-founded model.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;

use thiserror::Error;

use crate::rational::Rational;

/// Default bound on `w^{...}` nesting for [`StdExp`] terms.
pub const DEFAULT_MAX_DEPTH: usize = 3;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum OrdError {
    #[error("exponents must strictly decrease and coefficients be positive")]
    NotCanonical,
    #[error("cannot subtract: {0} is larger than {1}")]
    SubtrahendTooLarge(String, String),
    #[error("{0} has a nonzero standard part")]
    NotPure(String),
    #[error("{0} is not below {1}")]
    NotLess(String, String),
    #[error("exponent order has no non-standard element below {0}")]
    NoDensity(String),
    #[error("terms use different exponent orders")]
    MixedOrders,
    #[error("exponent nesting depth {depth} exceeds the limit {max}")]
    TooDeep { depth: usize, max: usize },
    #[error("parse error at byte {pos} of {text:?}: {reason}")]
    Parse {
        text: String,
        pos: usize,
        reason: String,
    },
}

/// A linearly ordered set of exponents with a designated standard cut.
pub trait ExponentOrder: Clone + Ord + Hash + fmt::Debug + fmt::Display + Sized {
    /// Least element; always standard.
    fn zero() -> Self;

    fn is_standard(&self) -> bool;

    /// An element strictly between `self` and `upper`, where the order is
    /// dense there.
    fn between(&self, _upper: &Self) -> Option<Self> {
        None
    }

    /// A non-standard element strictly below a non-standard `self`.
    fn below_nonstandard(&self) -> Option<Self> {
        None
    }

    /// Reads one exponent (the text inside `w^{...}`).
    fn parse_exponent(p: &mut TermParser<'_>) -> Result<Self, OrdError>;
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term<E> {
    pub exp: E,
    pub coeff: u64,
}

/// A term in Cantor normal form; the empty list is 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrdTerm<E> {
    terms: Vec<Term<E>>,
}

impl<E: ExponentOrder> OrdTerm<E> {
    pub fn zero() -> Self {
        OrdTerm { terms: Vec::new() }
    }

    pub fn natural(n: u64) -> Self {
        Self::monomial(E::zero(), n)
    }

    /// `w^exp * coeff` (0 when `coeff` is 0).
    pub fn monomial(exp: E, coeff: u64) -> Self {
        if coeff == 0 {
            return Self::zero();
        }
        OrdTerm {
            terms: vec![Term { exp, coeff }],
        }
    }

    pub fn new(terms: Vec<Term<E>>) -> Result<Self, OrdError> {
        let decreasing = terms.windows(2).all(|w| w[0].exp > w[1].exp);
        if !decreasing || terms.iter().any(|t| t.coeff == 0) {
            return Err(OrdError::NotCanonical);
        }
        Ok(OrdTerm { terms })
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (E, u64)>) -> Result<Self, OrdError> {
        Self::new(
            pairs
                .into_iter()
                .map(|(exp, coeff)| Term { exp, coeff })
                .collect(),
        )
    }

    pub fn terms(&self) -> &[Term<E>] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_exponent(&self) -> Option<&E> {
        self.terms.first().map(|t| &t.exp)
    }

    pub fn last_exponent(&self) -> Option<&E> {
        self.terms.last().map(|t| &t.exp)
    }

    /// No term with a standard exponent.
    pub fn is_pure(&self) -> bool {
        self.terms.iter().all(|t| !t.exp.is_standard())
    }

    /// Nonzero with a nonzero constant part.
    pub fn is_successor(&self) -> bool {
        self.last_exponent() == Some(&E::zero())
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && !self.is_successor()
    }

    /// `alpha - 1` for a successor.
    pub fn predecessor(&self) -> Option<Self> {
        if !self.is_successor() {
            return None;
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().expect("successor is nonzero");
        last.coeff -= 1;
        if last.coeff == 0 {
            terms.pop();
        }
        Some(OrdTerm { terms })
    }

    pub fn succ(&self) -> Self {
        ord_add(self, &Self::natural(1))
    }

    /// Parses the textual syntax, e.g. `w^{3/2'}*2 + w^{4} + 5`.
    pub fn parse(text: &str) -> Result<Self, OrdError> {
        let mut p = TermParser::new(text);
        let t = p.term::<E>()?;
        p.finish()?;
        Ok(t)
    }
}

impl<E: ExponentOrder> PartialOrd for OrdTerm<E> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<E: ExponentOrder> Ord for OrdTerm<E> {
    fn cmp(&self, other: &Self) -> Ordering {
        ord_cmp(self, other)
    }
}

impl<E: ExponentOrder> fmt::Display for OrdTerm<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if t.exp == E::zero() {
                write!(f, "{}", t.coeff)?;
            } else {
                write!(f, "w^{{{}}}", t.exp)?;
                if t.coeff > 1 {
                    write!(f, "*{}", t.coeff)?;
                }
            }
        }
        Ok(())
    }
}

/// Lexicographic on `(exponent, coefficient)` pairs; a proper prefix is smaller.
pub fn ord_cmp<E: ExponentOrder>(a: &OrdTerm<E>, b: &OrdTerm<E>) -> Ordering {
    for (x, y) in a.terms.iter().zip(&b.terms) {
        let c = x.exp.cmp(&y.exp).then(x.coeff.cmp(&y.coeff));
        if c != Ordering::Equal {
            return c;
        }
    }
    a.terms.len().cmp(&b.terms.len())
}

/// Ordinal sum. Terms of `a` below the leading exponent of `b` are absorbed.
///
/// Panics if a coefficient overflows `u64`.
pub fn ord_add<E: ExponentOrder>(a: &OrdTerm<E>, b: &OrdTerm<E>) -> OrdTerm<E> {
    let Some(lead) = b.terms.first() else {
        return a.clone();
    };
    let mut terms: Vec<Term<E>> = a
        .terms
        .iter()
        .take_while(|t| t.exp >= lead.exp)
        .cloned()
        .collect();
    let mut rest = b.terms.iter();
    match terms.last_mut() {
        Some(t) if t.exp == lead.exp => {
            t.coeff = t
                .coeff
                .checked_add(lead.coeff)
                .expect("coefficient overflow");
            rest.next();
        }
        _ => {}
    }
    terms.extend(rest.cloned());
    OrdTerm { terms }
}

/// The unique `d` with `a + d = b`, for `a <= b`.
pub fn ord_sub<E: ExponentOrder>(a: &OrdTerm<E>, b: &OrdTerm<E>) -> Result<OrdTerm<E>, OrdError> {
    if a > b {
        return Err(OrdError::SubtrahendTooLarge(a.to_string(), b.to_string()));
    }
    let i = a
        .terms
        .iter()
        .zip(&b.terms)
        .take_while(|(x, y)| x == y)
        .count();
    let Some(bi) = b.terms.get(i) else {
        return Ok(OrdTerm::zero());
    };
    let mut terms = Vec::with_capacity(b.terms.len() - i);
    match a.terms.get(i) {
        Some(ai) if ai.exp == bi.exp => terms.push(Term {
            exp: bi.exp.clone(),
            coeff: bi.coeff - ai.coeff,
        }),
        _ => terms.push(bi.clone()),
    }
    terms.extend(b.terms[i + 1..].iter().cloned());
    Ok(OrdTerm { terms })
}

/// Non-standard head and standard tail, `a = i + w`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Split<E> {
    pub ill_founded: OrdTerm<E>,
    pub well_founded: OrdTerm<E>,
}

pub fn split<E: ExponentOrder>(a: &OrdTerm<E>) -> Split<E> {
    let cut = a.terms.iter().take_while(|t| !t.exp.is_standard()).count();
    Split {
        ill_founded: OrdTerm {
            terms: a.terms[..cut].to_vec(),
        },
        well_founded: OrdTerm {
            terms: a.terms[cut..].to_vec(),
        },
    }
}

/// A pure term strictly between pure terms `a < b`: `a + w^q` for a
/// non-standard exponent `q` below the leading exponent of `b - a`.
pub fn dense_between<E: ExponentOrder>(
    a: &OrdTerm<E>,
    b: &OrdTerm<E>,
) -> Result<OrdTerm<E>, OrdError> {
    for t in [a, b] {
        if !t.is_pure() {
            return Err(OrdError::NotPure(t.to_string()));
        }
    }
    if a >= b {
        return Err(OrdError::NotLess(a.to_string(), b.to_string()));
    }
    let d = ord_sub(a, b)?;
    let e = d.leading_exponent().expect("b - a is nonzero");
    let q = match a.last_exponent() {
        Some(last) if !last.is_standard() && last < e => last.between(e),
        _ => e.below_nonstandard(),
    }
    .filter(|q| !q.is_standard() && q < e)
    .ok_or_else(|| OrdError::NoDensity(e.to_string()))?;
    Ok(ord_add(a, &OrdTerm::monomial(q, 1)))
}

// ---------------------------------------------------------------------------
// Exponent orders

/// Exponents that are themselves standard terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StdExp(Box<OrdTerm<StdExp>>);

impl StdExp {
    pub fn new(term: OrdTerm<StdExp>) -> Self {
        StdExp(Box::new(term))
    }

    pub fn natural(n: u64) -> Self {
        StdExp::new(OrdTerm::natural(n))
    }

    pub fn term(&self) -> &OrdTerm<StdExp> {
        &self.0
    }
}

impl PartialOrd for StdExp {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for StdExp {
    fn cmp(&self, other: &Self) -> Ordering {
        ord_cmp(&self.0, &other.0)
    }
}

impl fmt::Display for StdExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl ExponentOrder for StdExp {
    fn zero() -> Self {
        StdExp::new(OrdTerm::zero())
    }

    fn is_standard(&self) -> bool {
        true
    }

    fn parse_exponent(p: &mut TermParser<'_>) -> Result<Self, OrdError> {
        p.term::<StdExp>().map(StdExp::new)
    }
}

/// Standard ordinal terms below epsilon-zero.
pub type StdOrd = OrdTerm<StdExp>;

impl OrdTerm<StdExp> {
    /// Number of nested `w^{...}` levels; naturals have depth 0.
    pub fn depth(&self) -> usize {
        self.terms
            .iter()
            .filter(|t| !t.exp.0.is_zero())
            .map(|t| 1 + t.exp.0.depth())
            .max()
            .unwrap_or(0)
    }

    pub fn check_depth(&self, max: usize) -> Result<(), OrdError> {
        let depth = self.depth();
        if depth > max {
            return Err(OrdError::TooDeep { depth, max });
        }
        Ok(())
    }

    /// `w^{n}` with a natural exponent.
    pub fn omega_pow(n: u64) -> Self {
        OrdTerm::monomial(StdExp::natural(n), 1)
    }

    /// The `k`-th member of the standard fundamental sequence of a limit:
    /// `(g + w^{e+1})[k] = g + w^e * k` and `(g + w^l)[k] = g + w^{l[k]}`.
    pub fn fundamental(&self, k: u64) -> Option<Self> {
        if !self.is_limit() {
            return None;
        }
        let (last, init) = self.terms.split_last().expect("limit is nonzero");
        let mut base = OrdTerm {
            terms: init.to_vec(),
        };
        if last.coeff > 1 {
            base.terms.push(Term {
                exp: last.exp.clone(),
                coeff: last.coeff - 1,
            });
        }
        let e = last.exp.term();
        let step = match e.predecessor() {
            Some(prev) => OrdTerm::monomial(StdExp::new(prev), k),
            None => OrdTerm::monomial(StdExp::new(e.fundamental(k)?), 1),
        };
        Some(ord_add(&base, &step))
    }
}

/// Naturals, then a dense copy of the rationals above all of them.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CutExp {
    Nat(u64),
    NonStd(Rational),
}

impl CutExp {
    pub fn nonstd(n: i64, d: i64) -> Self {
        CutExp::NonStd(Rational::new(n, d))
    }
}

impl fmt::Display for CutExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CutExp::Nat(n) => write!(f, "{n}"),
            CutExp::NonStd(q) => write!(f, "{q}'"),
        }
    }
}

impl ExponentOrder for CutExp {
    fn zero() -> Self {
        CutExp::Nat(0)
    }

    fn is_standard(&self) -> bool {
        matches!(self, CutExp::Nat(_))
    }

    fn between(&self, upper: &Self) -> Option<Self> {
        match (self, upper) {
            (CutExp::NonStd(a), CutExp::NonStd(b)) if a < b => Some(CutExp::NonStd(a.midpoint(b))),
            _ => None,
        }
    }

    fn below_nonstandard(&self) -> Option<Self> {
        match self {
            CutExp::NonStd(q) => Some(CutExp::NonStd(q - &Rational::one())),
            CutExp::Nat(_) => None,
        }
    }

    fn parse_exponent(p: &mut TermParser<'_>) -> Result<Self, OrdError> {
        p.skip_ws();
        if p.peek() == Some(b'w') {
            return Err(OrdError::MixedOrders);
        }
        let start = p.pos;
        while matches!(p.peek(), Some(b'-' | b'/' | b'0'..=b'9')) {
            p.pos += 1;
        }
        let token = &p.text[start..p.pos];
        if p.eat(b'\'') {
            let q = token
                .parse::<Rational>()
                .map_err(|e| p.error_at(start, &e.to_string()))?;
            Ok(CutExp::NonStd(q))
        } else {
            token
                .parse::<u64>()
                .map(CutExp::Nat)
                .map_err(|_| p.error_at(start, "expected a natural or a primed rational"))
        }
    }
}

pub type CutOrd = OrdTerm<CutExp>;

// ---------------------------------------------------------------------------
// Parsing

/// Recursive-descent reader for the term syntax.
pub struct TermParser<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> TermParser<'a> {
    pub fn new(text: &'a str) -> Self {
        TermParser { text, pos: 0 }
    }

    fn peek(&self) -> Option<u8> {
        self.text.as_bytes().get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, b: u8) -> Result<(), OrdError> {
        self.skip_ws();
        if self.eat(b) {
            Ok(())
        } else {
            Err(self.error_at(self.pos, &format!("expected `{}`", b as char)))
        }
    }

    fn error_at(&self, pos: usize, reason: &str) -> OrdError {
        OrdError::Parse {
            text: self.text.to_string(),
            pos,
            reason: reason.to_string(),
        }
    }

    fn natural(&mut self) -> Result<u64, OrdError> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        self.text[start..self.pos]
            .parse()
            .map_err(|_| self.error_at(start, "expected a natural number"))
    }

    fn summand<E: ExponentOrder>(&mut self) -> Result<Term<E>, OrdError> {
        self.skip_ws();
        if self.eat(b'w') {
            let exp = if self.peek() == Some(b'^') {
                self.pos += 1;
                self.expect(b'{')?;
                let e = E::parse_exponent(self)?;
                self.expect(b'}')?;
                e
            } else {
                E::parse_exponent(&mut TermParser::new("1"))?
            };
            self.skip_ws();
            let coeff = if self.eat(b'*') { self.natural()? } else { 1 };
            Ok(Term { exp, coeff })
        } else {
            Ok(Term {
                exp: E::zero(),
                coeff: self.natural()?,
            })
        }
    }

    /// A full term; a lone `0` denotes zero.
    pub fn term<E: ExponentOrder>(&mut self) -> Result<OrdTerm<E>, OrdError> {
        let mut terms = vec![self.summand::<E>()?];
        loop {
            self.skip_ws();
            if !self.eat(b'+') {
                break;
            }
            terms.push(self.summand::<E>()?);
        }
        if let [Term { exp, coeff: 0 }] = terms.as_slice() {
            if *exp == E::zero() {
                return Ok(OrdTerm::zero());
            }
        }
        OrdTerm::new(terms)
    }

    pub fn finish(&mut self) -> Result<(), OrdError> {
        self.skip_ws();
        if self.pos == self.text.len() {
            Ok(())
        } else {
            Err(self.error_at(self.pos, "trailing input"))
        }
    }
}

/// A term over either shipped exponent order, as read from text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyOrd {
    Std(StdOrd),
    Cut(CutOrd),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OrderChoice {
    Standard,
    Cut,
}

impl OrderChoice {
    /// Primed exponents select the cut order, otherwise standard.
    pub fn detect<'a>(texts: impl IntoIterator<Item = &'a str>) -> Self {
        if texts.into_iter().any(|t| t.contains('\'')) {
            OrderChoice::Cut
        } else {
            OrderChoice::Standard
        }
    }
}

impl AnyOrd {
    pub fn parse(text: &str, order: OrderChoice, max_depth: usize) -> Result<Self, OrdError> {
        match order {
            OrderChoice::Cut => OrdTerm::parse(text).map(AnyOrd::Cut),
            OrderChoice::Standard => {
                let t = StdOrd::parse(text)?;
                t.check_depth(max_depth)?;
                Ok(AnyOrd::Std(t))
            }
        }
    }
}

impl fmt::Display for AnyOrd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyOrd::Std(t) => t.fmt(f),
            AnyOrd::Cut(t) => t.fmt(f),
        }
    }
}

macro_rules! dispatch_pair {
    ($a:expr, $b:expr, |$x:ident, $y:ident| $body:expr) => {
        match ($a, $b) {
            (AnyOrd::Std($x), AnyOrd::Std($y)) => Ok($body),
            (AnyOrd::Cut($x), AnyOrd::Cut($y)) => Ok($body),
            _ => Err(OrdError::MixedOrders),
        }
    };
}

impl AnyOrd {
    pub fn cmp_checked(&self, other: &AnyOrd) -> Result<Ordering, OrdError> {
        dispatch_pair!(self, other, |x, y| ord_cmp(x, y))
    }

    pub fn add(&self, other: &AnyOrd) -> Result<AnyOrd, OrdError> {
        match (self, other) {
            (AnyOrd::Std(x), AnyOrd::Std(y)) => Ok(AnyOrd::Std(ord_add(x, y))),
            (AnyOrd::Cut(x), AnyOrd::Cut(y)) => Ok(AnyOrd::Cut(ord_add(x, y))),
            _ => Err(OrdError::MixedOrders),
        }
    }

    pub fn sub(&self, other: &AnyOrd) -> Result<AnyOrd, OrdError> {
        match (self, other) {
            (AnyOrd::Std(x), AnyOrd::Std(y)) => ord_sub(x, y).map(AnyOrd::Std),
            (AnyOrd::Cut(x), AnyOrd::Cut(y)) => ord_sub(x, y).map(AnyOrd::Cut),
            _ => Err(OrdError::MixedOrders),
        }
    }

    pub fn dense_between(&self, other: &AnyOrd) -> Result<AnyOrd, OrdError> {
        match (self, other) {
            (AnyOrd::Std(x), AnyOrd::Std(y)) => dense_between(x, y).map(AnyOrd::Std),
            (AnyOrd::Cut(x), AnyOrd::Cut(y)) => dense_between(x, y).map(AnyOrd::Cut),
            _ => Err(OrdError::MixedOrders),
        }
    }

    pub fn split(&self) -> (AnyOrd, AnyOrd) {
        match self {
            AnyOrd::Std(t) => {
                let s = split(t);
                (AnyOrd::Std(s.ill_founded), AnyOrd::Std(s.well_founded))
            }
            AnyOrd::Cut(t) => {
                let s = split(t);
                (AnyOrd::Cut(s.ill_founded), AnyOrd::Cut(s.well_founded))
            }
        }
    }
}
