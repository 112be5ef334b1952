//! The universal countable pseudotree over the rationals.
//!
//! Elements are finite-step functions from an initial segment `(-inf, q]` of
//! the rationals to the naturals, ordered by extension. An element is stored
//! as its list of pieces `(right_endpoint, value)`: the function takes
//! `pieces[i].value` on `(q_i, q_{i+1}]`, where `q_0 = -inf` and the remaining
//! boundaries are the right endpoints. The empty list is the root.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::rational::{Rational, RationalParseError};
use crate::structure::{Dpm, Enumerated, Pm};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Piece {
    pub end: Rational,
    pub value: u64,
}

impl Piece {
    pub fn new(end: Rational, value: u64) -> Self {
        Piece { end, value }
    }
}

/// A canonical element: strictly increasing endpoints, adjacent values distinct.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TqElement {
    pieces: Vec<Piece>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TqError {
    #[error("endpoints not strictly increasing at piece {0}")]
    EndpointsNotIncreasing(usize),
    #[error("pieces {0} and {} carry the same value", .0 + 1)]
    UnmergedPieces(usize),
    #[error("density needs g < f: {g} is not strictly below {f}")]
    NotStrictlyBelow { g: String, f: String },
    #[error("splitting family member {index} ({f}) is not strictly above {g}")]
    SplitNotAbove { index: usize, f: String, g: String },
    #[error("splitting family members {0} and {1} do not meet at the base element")]
    SplitBadMeet(usize, usize),
    #[error("malformed element text {text:?}: {reason}")]
    Parse { text: String, reason: String },
    #[error(transparent)]
    Rational(#[from] RationalParseError),
}

impl TqElement {
    pub fn root() -> Self {
        TqElement { pieces: Vec::new() }
    }

    /// Validates canonical form.
    pub fn new(pieces: Vec<Piece>) -> Result<Self, TqError> {
        for i in 1..pieces.len() {
            if pieces[i - 1].end >= pieces[i].end {
                return Err(TqError::EndpointsNotIncreasing(i));
            }
            if pieces[i - 1].value == pieces[i].value {
                return Err(TqError::UnmergedPieces(i - 1));
            }
        }
        Ok(TqElement { pieces })
    }

    /// Like [`TqElement::new`] but merges equal adjacent values instead of
    /// rejecting them. Endpoints must still increase.
    pub fn merged(pieces: Vec<Piece>) -> Result<Self, TqError> {
        let mut out: Vec<Piece> = Vec::with_capacity(pieces.len());
        for (i, p) in pieces.into_iter().enumerate() {
            if let Some(last) = out.last_mut() {
                if last.end >= p.end {
                    return Err(TqError::EndpointsNotIncreasing(i));
                }
                if last.value == p.value {
                    last.end = p.end;
                    continue;
                }
            }
            out.push(p);
        }
        Ok(TqElement { pieces: out })
    }

    /// Convenience constructor from `((num, den), value)` triples.
    pub fn from_triples(triples: &[((i64, i64), u64)]) -> Result<Self, TqError> {
        TqElement::new(
            triples
                .iter()
                .map(|&((n, d), v)| Piece::new(Rational::new(n, d), v))
                .collect(),
        )
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn is_root(&self) -> bool {
        self.pieces.is_empty()
    }

    /// `max(dom f)`; the root has no maximum.
    pub fn max_dom(&self) -> Option<&Rational> {
        self.pieces.last().map(|p| &p.end)
    }

    /// Value at a rational point, `None` outside the domain.
    pub fn value_at(&self, x: &Rational) -> Option<u64> {
        self.pieces.iter().find(|p| &p.end >= x).map(|p| p.value)
    }

    /// Restriction to `(-inf, cut]`. Requires `cut <= max_dom`.
    fn truncate(&self, cut: &Rational) -> TqElement {
        let mut pieces = Vec::new();
        for p in &self.pieces {
            if &p.end < cut {
                pieces.push(p.clone());
            } else {
                pieces.push(Piece::new(cut.clone(), p.value));
                break;
            }
        }
        TqElement { pieces }
    }

    /// Value taken immediately to the right of `max_dom(base)`.
    fn value_just_past(&self, base: &TqElement) -> Option<u64> {
        match base.max_dom() {
            None => self.pieces.first().map(|p| p.value),
            Some(m) => self.pieces.iter().find(|p| &p.end > m).map(|p| p.value),
        }
    }

    /// Image under the order automorphism `q -> factor * q` of the rationals.
    pub fn scaled(&self, factor: &Rational) -> TqElement {
        assert!(factor.is_positive(), "scale factor must be positive");
        TqElement {
            pieces: self
                .pieces
                .iter()
                .map(|p| Piece::new(p.end.scale(factor), p.value))
                .collect(),
        }
    }
}

/// `f <= g` iff `f` is the restriction of `g` to `dom f`.
pub fn tq_leq(f: &TqElement, g: &TqElement) -> bool {
    match (f.max_dom(), g.max_dom()) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(mf), Some(mg)) => mf <= mg && g.truncate(mf) == *f,
    }
}

pub fn tq_lt(f: &TqElement, g: &TqElement) -> bool {
    f != g && tq_leq(f, g)
}

/// Longest common restriction.
pub fn tq_meet(f: &TqElement, g: &TqElement) -> TqElement {
    let (a, b) = (&f.pieces, &g.pieces);
    let (mut i, mut j) = (0, 0);
    let mut agreed: Option<&Rational> = None;
    while i < a.len() && j < b.len() && a[i].value == b[j].value {
        let end = std::cmp::min(&a[i].end, &b[j].end);
        agreed = Some(end);
        if a[i].end == *end {
            i += 1;
        }
        if b[j].end == *end {
            j += 1;
        }
    }
    match agreed {
        None => TqElement::root(),
        Some(cut) => f.truncate(cut),
    }
}

/// Density witness: `f` cut inside the first piece of `f` beyond `g`.
///
/// For `g` nonempty the cut is the midpoint of `max dom g` and the first
/// endpoint of `f` above it; for the root the cut is `max dom f - 1`.
pub fn tq_between(g: &TqElement, f: &TqElement) -> Result<TqElement, TqError> {
    if !tq_lt(g, f) {
        return Err(TqError::NotStrictlyBelow {
            g: g.to_string(),
            f: f.to_string(),
        });
    }
    let top = f.max_dom().expect("f is above g, hence nonempty");
    let cut = match g.max_dom() {
        None => top - &Rational::one(),
        Some(m) => {
            let next = f
                .pieces
                .iter()
                .map(|p| &p.end)
                .find(|e| *e > m)
                .expect("f extends g past max dom g");
            m.midpoint(next)
        }
    };
    Ok(f.truncate(&cut))
}

/// Splitting witness: `g` extended by one unit with the least value not used
/// by any `fs[i]` immediately past `max dom g`. The root is treated as having
/// `max dom = -1`.
pub fn tq_split(g: &TqElement, fs: &[TqElement]) -> Result<TqElement, TqError> {
    for (i, f) in fs.iter().enumerate() {
        if !tq_lt(g, f) {
            return Err(TqError::SplitNotAbove {
                index: i,
                f: f.to_string(),
                g: g.to_string(),
            });
        }
    }
    for i in 0..fs.len() {
        for j in i + 1..fs.len() {
            if tq_meet(&fs[i], &fs[j]) != *g {
                return Err(TqError::SplitBadMeet(i, j));
            }
        }
    }
    let used: Vec<u64> = fs.iter().filter_map(|f| f.value_just_past(g)).collect();
    let value = (0u64..)
        .find(|v| !used.contains(v))
        .expect("finitely many values are used");
    let end = match g.max_dom() {
        None => Rational::zero(),
        Some(m) => m + &Rational::one(),
    };
    let mut pieces = g.pieces.clone();
    pieces.push(Piece::new(end, value));
    Ok(TqElement::merged(pieces).expect("new endpoint exceeds max dom g"))
}

/// `[]` or `[(num/den:val),...]`.
impl fmt::Display for TqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, p) in self.pieces.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "({}:{})", p.end.to_fraction_string(), p.value)?;
        }
        f.write_str("]")
    }
}

impl FromStr for TqElement {
    type Err = TqError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |reason: &str| TqError::Parse {
            text: s.to_string(),
            reason: reason.to_string(),
        };
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| err("expected surrounding brackets"))?;
        if body.is_empty() {
            return Ok(TqElement::root());
        }
        let mut pieces = Vec::new();
        for item in body.split("),") {
            let item = item.strip_prefix('(').ok_or_else(|| err("expected `(`"))?;
            let item = item.strip_suffix(')').unwrap_or(item);
            let (end, value) = item
                .split_once(':')
                .ok_or_else(|| err("expected `num/den:value`"))?;
            let end = Rational::parse_fraction(end)?;
            let value = value.parse::<u64>().map_err(|_| err("bad value"))?;
            pieces.push(Piece::new(end, value));
        }
        if !compact.ends_with(")]") {
            return Err(err("expected `)` before `]`"));
        }
        TqElement::new(pieces)
    }
}

// ---------------------------------------------------------------------------
// Enumeration: a bijection between the naturals and canonical elements, built
// from Cantor pairing, the Calkin-Wilf enumeration of positive rationals and
// the cons-encoding of finite sequences.

fn pair(x: &BigUint, y: &BigUint) -> BigUint {
    let s = x + y;
    (&s * (&s + 1u32)) / 2u32 + y
}

fn unpair(z: &BigUint) -> (BigUint, BigUint) {
    let w = ((z * 8u32 + 1u32).sqrt() - 1u32) / 2u32;
    let t = (&w * (&w + 1u32)) / 2u32;
    let y = z - t;
    let x = w - &y;
    (x, y)
}

/// Calkin-Wilf: index `n >= 1` to a positive rational.
fn cw_rational(n: &BigUint) -> Rational {
    let (mut a, mut b) = (BigUint::one(), BigUint::one());
    let bits = n.bits();
    for k in (0..bits - 1).rev() {
        if n.bit(k) {
            a = &a + &b;
        } else {
            b = &a + &b;
        }
    }
    Rational::new(a, b)
}

/// Inverse of [`cw_rational`]; `r` must be positive.
fn cw_index(r: &Rational) -> BigUint {
    let mut a = r.numer().magnitude().clone();
    let mut b = r.denom().magnitude().clone();
    let mut low = BigUint::zero();
    let mut len: u64 = 0;
    // Peel runs of identical steps from the end of the Calkin-Wilf path.
    while !(a.is_one() && b.is_one()) {
        if a > b {
            let k = (&a - 1u32) / &b;
            a -= &k * &b;
            let k = k.to_u64().expect("run length fits in u64");
            low |= ((BigUint::one() << k) - 1u32) << len;
            len += k;
        } else {
            let k = (&b - 1u32) / &a;
            b -= &k * &a;
            len += k.to_u64().expect("run length fits in u64");
        }
    }
    (BigUint::one() << len) | low
}

fn rational_from_code(n: &BigUint) -> Rational {
    if n.is_zero() {
        return Rational::zero();
    }
    let k = (n + 1u32) / 2u32;
    let q = cw_rational(&k);
    if n.bit(0) {
        q
    } else {
        &Rational::zero() - &q
    }
}

fn rational_code(r: &Rational) -> BigUint {
    if r.numer().is_zero() {
        BigUint::zero()
    } else if r.is_positive() {
        cw_index(r) * 2u32 - 1u32
    } else {
        cw_index(&(&Rational::zero() - r)) * 2u32
    }
}

fn to_u64(n: &BigUint) -> u64 {
    n.to_u64().expect("piece value exceeds u64")
}

/// The `n`-th element; `tq_enumerate(0)` is the root.
pub fn tq_enumerate(n: &BigUint) -> TqElement {
    if n.is_zero() {
        return TqElement::root();
    }
    let (first, mut rest) = unpair(&(n - 1u32));
    let (q_code, v_code) = unpair(&first);
    let mut end = rational_from_code(&q_code);
    let mut value = to_u64(&v_code);
    let mut pieces = vec![Piece::new(end.clone(), value)];
    while !rest.is_zero() {
        let (head, tail) = unpair(&(&rest - 1u32));
        let (d_code, u_code) = unpair(&head);
        end = &end + &cw_rational(&(d_code + 1u32));
        let u = to_u64(&u_code);
        value = if u < value { u } else { u + 1 };
        pieces.push(Piece::new(end.clone(), value));
        rest = tail;
    }
    TqElement { pieces }
}

/// Inverse of [`tq_enumerate`].
pub fn tq_index(f: &TqElement) -> BigUint {
    let Some((first, rest)) = f.pieces.split_first() else {
        return BigUint::zero();
    };
    let mut steps = Vec::with_capacity(rest.len());
    let (mut prev_end, mut prev_value) = (&first.end, first.value);
    for p in rest {
        let d = &p.end - prev_end;
        let u = if p.value < prev_value {
            p.value
        } else {
            p.value - 1
        };
        steps.push(pair(&(cw_index(&d) - 1u32), &BigUint::from(u)));
        prev_end = &p.end;
        prev_value = p.value;
    }
    let mut tail = BigUint::zero();
    for head in steps.iter().rev() {
        tail = pair(head, &tail) + 1u32;
    }
    let head = pair(&rational_code(&first.end), &BigUint::from(first.value));
    pair(&head, &tail) + 1u32
}

/// How a [`TqStructure`] lists its elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TqEnumeration {
    /// `tq_enumerate` as is.
    Canonical,
    /// Canonical enumeration pushed through `q -> factor * q`, `factor > 0`.
    Scaled(Rational),
    /// Canonical enumeration with indices `2k-1` and `2k` swapped for `k >= 1`.
    SwappedPairs,
}

/// T_Q presented as an enumerated DPM structure with its canonical witnesses.
#[derive(Clone, Debug)]
pub struct TqStructure {
    enumeration: TqEnumeration,
}

impl TqStructure {
    pub fn new(enumeration: TqEnumeration) -> Self {
        if let TqEnumeration::Scaled(f) = &enumeration {
            assert!(f.is_positive(), "scale factor must be positive");
        }
        TqStructure { enumeration }
    }

    pub fn canonical() -> Self {
        Self::new(TqEnumeration::Canonical)
    }
}

impl Pm for TqStructure {
    type Elem = TqElement;

    fn root(&self) -> TqElement {
        TqElement::root()
    }

    fn meet(&self, a: &TqElement, b: &TqElement) -> TqElement {
        tq_meet(a, b)
    }

    fn leq(&self, a: &TqElement, b: &TqElement) -> bool {
        tq_leq(a, b)
    }
}

impl Enumerated for TqStructure {
    fn element_at(&self, index: u64) -> Option<TqElement> {
        let elem = match &self.enumeration {
            TqEnumeration::Canonical => tq_enumerate(&BigUint::from(index)),
            TqEnumeration::Scaled(f) => tq_enumerate(&BigUint::from(index)).scaled(f),
            TqEnumeration::SwappedPairs => {
                let swapped = match index {
                    0 => 0,
                    i if i % 2 == 1 => i + 1,
                    i => i - 1,
                };
                tq_enumerate(&BigUint::from(swapped))
            }
        };
        Some(elem)
    }

    fn render(&self, elem: &TqElement) -> String {
        elem.to_string()
    }
}

impl Dpm for TqStructure {
    fn density(&self, g: &TqElement, f: &TqElement) -> Option<TqElement> {
        tq_between(g, f).ok()
    }

    fn splitting(&self, g: &TqElement, fs: &[TqElement]) -> Option<TqElement> {
        tq_split(g, fs).ok()
    }
}
