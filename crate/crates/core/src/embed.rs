//! One-point extension of finite embeddings into DPM structures, and the
//! forth / back-and-forth constructions built on top of it.
//!
//! Domains are always finite meet-closed substructures containing the root.
//! Because the order of a PM structure is definable from its meet, an
//! injective root- and meet-preserving map is already an order embedding.

use std::collections::HashMap;
use std::hash::Hash;

use thiserror::Error;

use crate::structure::{Dpm, Enumerated, Pm};

/// A finite injective map, remembering insertion order.
#[derive(Clone, Debug)]
pub struct PartialEmbedding<D, C> {
    pairs: Vec<(D, C)>,
    forward: HashMap<D, C>,
    backward: HashMap<C, D>,
}

impl<D, C> PartialEmbedding<D, C>
where
    D: Clone + Eq + Hash,
    C: Clone + Eq + Hash,
{
    pub fn new() -> Self {
        PartialEmbedding {
            pairs: Vec::new(),
            forward: HashMap::new(),
            backward: HashMap::new(),
        }
    }

    /// The map `{root -> root}`.
    pub fn roots<T, Q>(domain: &T, codomain: &Q) -> Self
    where
        T: Pm<Elem = D>,
        Q: Pm<Elem = C>,
    {
        let mut pi = Self::new();
        let inserted = pi.insert(domain.root(), codomain.root());
        debug_assert!(inserted.is_ok(), "empty map accepts any pair");
        pi
    }

    /// Fails, leaving the map untouched, if either side is already used.
    pub fn insert(&mut self, d: D, c: C) -> Result<(), (D, C)> {
        if self.forward.contains_key(&d) || self.backward.contains_key(&c) {
            return Err((d, c));
        }
        self.forward.insert(d.clone(), c.clone());
        self.backward.insert(c.clone(), d.clone());
        self.pairs.push((d, c));
        Ok(())
    }

    pub fn get(&self, d: &D) -> Option<&C> {
        self.forward.get(d)
    }

    pub fn preimage(&self, c: &C) -> Option<&D> {
        self.backward.get(c)
    }

    pub fn contains(&self, d: &D) -> bool {
        self.forward.contains_key(d)
    }

    pub fn contains_image(&self, c: &C) -> bool {
        self.backward.contains_key(c)
    }

    pub fn pairs(&self) -> &[(D, C)] {
        &self.pairs
    }

    pub fn domain(&self) -> impl Iterator<Item = &D> {
        self.pairs.iter().map(|(d, _)| d)
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn inverse(&self) -> PartialEmbedding<C, D> {
        PartialEmbedding {
            pairs: self
                .pairs
                .iter()
                .map(|(d, c)| (c.clone(), d.clone()))
                .collect(),
            forward: self.backward.clone(),
            backward: self.forward.clone(),
        }
    }

    /// Whether every pair of `smaller` also belongs to `self`.
    pub fn extends(&self, smaller: &PartialEmbedding<D, C>) -> bool {
        smaller
            .pairs
            .iter()
            .all(|(d, c)| self.forward.get(d) == Some(c))
    }

    /// Renders as `[[domain, codomain], ...]` in insertion order.
    pub fn render_pairs<T, Q>(&self, domain: &T, codomain: &Q) -> Vec<(String, String)>
    where
        T: Enumerated<Elem = D>,
        Q: Enumerated<Elem = C>,
    {
        self.pairs
            .iter()
            .map(|(d, c)| (domain.render(d), codomain.render(c)))
            .collect()
    }
}

impl<D, C> Default for PartialEmbedding<D, C>
where
    D: Clone + Eq + Hash,
    C: Clone + Eq + Hash,
{
    fn default() -> Self {
        Self::new()
    }
}

impl<D: PartialEq, C: PartialEq> PartialEq for PartialEmbedding<D, C> {
    fn eq(&self, other: &Self) -> bool {
        self.pairs == other.pairs
    }
}

/// Why a map fails to be a partial embedding. Elements are rendered.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EmbeddingViolation {
    #[error("root {0} is not in the domain")]
    RootMissing(String),
    #[error("root maps to {0}, not to the codomain root")]
    RootNotPreserved(String),
    #[error("domain is not meet-closed: {0} ^ {1} = {2} is missing")]
    NotMeetClosed(String, String, String),
    #[error("meet not preserved at {0}, {1}")]
    MeetNotPreserved(String, String),
    #[error("order not preserved or reflected at {0}, {1}")]
    OrderMismatch(String, String),
}

/// Checks injectivity (by construction), root preservation, meet-closure of
/// the domain, and `pi(x ^ y) = pi(x) ^ pi(y)` together with
/// `x <= y iff pi(x) <= pi(y)` on all domain pairs.
pub fn validate_embedding<T, Q>(
    domain: &T,
    codomain: &Q,
    pi: &PartialEmbedding<T::Elem, Q::Elem>,
) -> Result<(), EmbeddingViolation>
where
    T: Enumerated,
    Q: Enumerated,
{
    let root = domain.root();
    match pi.get(&root) {
        None => return Err(EmbeddingViolation::RootMissing(domain.render(&root))),
        Some(r) if *r != codomain.root() => {
            return Err(EmbeddingViolation::RootNotPreserved(codomain.render(r)))
        }
        Some(_) => {}
    }
    let show = |e: &T::Elem| domain.render(e);
    for (x, px) in pi.pairs() {
        for (y, py) in pi.pairs() {
            let m = domain.meet(x, y);
            let Some(pm) = pi.get(&m) else {
                return Err(EmbeddingViolation::NotMeetClosed(
                    show(x),
                    show(y),
                    show(&m),
                ));
            };
            if *pm != codomain.meet(px, py) {
                return Err(EmbeddingViolation::MeetNotPreserved(show(x), show(y)));
            }
            if domain.leq(x, y) != codomain.leq(px, py) {
                return Err(EmbeddingViolation::OrderMismatch(show(x), show(y)));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    Density,
    Splitting,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EmbedError {
    #[error("input map is not a partial embedding: {0}")]
    InvalidEmbedding(#[from] EmbeddingViolation),
    #[error("{kind:?} witness broke its contract on inputs {inputs:?}, returned {output:?}")]
    WitnessViolation {
        kind: WitnessKind,
        inputs: Vec<String>,
        output: Option<String>,
    },
    #[error("PM law fails in the domain structure: {law} at {witnesses:?}")]
    PmLaw {
        law: &'static str,
        witnesses: Vec<String>,
    },
}

/// Extends `pi` to a finite meet-closed domain containing `a`.
///
/// With `S = dom(pi)`: let `b` be the largest of `a ^ s` over `s` in `S`. If
/// `b` is new, it is sent strictly between the images of `s1`, the largest
/// element of `S` below `b`, and `s0`, the meet of all elements of `S` above
/// `b`. Then, if `a` is above `b`, it is sent to a splitting witness over the
/// image of `b` against the images of the minimal elements above `b`.
pub fn extend_embedding<T, Q>(
    domain: &T,
    codomain: &Q,
    pi: &PartialEmbedding<T::Elem, Q::Elem>,
    a: &T::Elem,
) -> Result<PartialEmbedding<T::Elem, Q::Elem>, EmbedError>
where
    T: Enumerated,
    Q: Enumerated + Dpm,
{
    validate_embedding(domain, codomain, pi)?;
    extend_unchecked(domain, codomain, pi, a)
}

fn max_by_leq<'a, T: Pm>(s: &T, items: impl Iterator<Item = &'a T::Elem>) -> Option<&'a T::Elem>
where
    T::Elem: 'a,
{
    items.reduce(|best, x| if s.leq(best, x) { x } else { best })
}

fn extend_unchecked<T, Q>(
    domain: &T,
    codomain: &Q,
    pi: &PartialEmbedding<T::Elem, Q::Elem>,
    a: &T::Elem,
) -> Result<PartialEmbedding<T::Elem, Q::Elem>, EmbedError>
where
    T: Enumerated,
    Q: Enumerated + Dpm,
{
    if pi.contains(a) {
        return Ok(pi.clone());
    }
    let shown = |es: &[&Q::Elem]| es.iter().map(|e| codomain.render(e)).collect::<Vec<_>>();
    let meets: Vec<T::Elem> = pi.domain().map(|s| domain.meet(a, s)).collect();
    let b = max_by_leq(domain, meets.iter())
        .expect("domain contains the root")
        .clone();
    let mut next = pi.clone();

    let b_image = match pi.get(&b) {
        Some(img) => img.clone(),
        None => {
            let s0 = pi
                .domain()
                .filter(|s| domain.leq(&b, s))
                .cloned()
                .reduce(|acc, s| domain.meet(&acc, &s))
                .expect("b lies below some a ^ s <= s");
            let s1 = max_by_leq(domain, pi.domain().filter(|s| domain.lt(s, &b)))
                .expect("the root lies below b");
            let lo = pi.get(s1).expect("s1 is in the domain").clone();
            let hi = pi.get(&s0).ok_or_else(|| EmbedError::PmLaw {
                law: "meet-closure of the domain",
                witnesses: vec![domain.render(&s0)],
            })?;
            let h = codomain.density(&lo, hi);
            let ok = h
                .as_ref()
                .is_some_and(|h| codomain.lt(&lo, h) && codomain.lt(h, hi));
            let bad = || EmbedError::WitnessViolation {
                kind: WitnessKind::Density,
                inputs: shown(&[&lo, hi]),
                output: h.as_ref().map(|h| codomain.render(h)),
            };
            if !ok {
                return Err(bad());
            }
            let h = h.clone().expect("checked");
            next.insert(b.clone(), h.clone()).map_err(|_| bad())?;
            h
        }
    };

    if *a != b {
        let above: Vec<&T::Elem> = next.domain().filter(|s| domain.lt(&b, s)).collect();
        let family: Vec<Q::Elem> = above
            .iter()
            .filter(|s| !above.iter().any(|t| domain.lt(t, s)))
            .map(|s| next.get(s).expect("in domain").clone())
            .collect();
        let w = codomain.splitting(&b_image, &family);
        let ok = w.as_ref().is_some_and(|w| {
            codomain.lt(&b_image, w) && family.iter().all(|f| codomain.meet(f, w) == b_image)
        });
        let bad = || {
            let mut inputs = shown(&[&b_image]);
            inputs.extend(family.iter().map(|f| codomain.render(f)));
            EmbedError::WitnessViolation {
                kind: WitnessKind::Splitting,
                inputs,
                output: w.as_ref().map(|w| codomain.render(w)),
            }
        };
        if !ok {
            return Err(bad());
        }
        next.insert(a.clone(), w.clone().expect("checked"))
            .map_err(|_| bad())?;
    }
    Ok(next)
}

/// Checks the PM laws on pairs involving the elements of `dom(pi)` from
/// position `fresh_from` on.
fn check_new_pm_laws<T: Enumerated, C>(
    s: &T,
    pi: &PartialEmbedding<T::Elem, C>,
    fresh_from: usize,
) -> Result<(), EmbedError>
where
    C: Clone + Eq + Hash,
{
    let dom: Vec<&T::Elem> = pi.domain().collect();
    let root = s.root();
    let fail = |law: &'static str, es: &[&T::Elem]| EmbedError::PmLaw {
        law,
        witnesses: es.iter().map(|e| s.render(e)).collect(),
    };
    for &x in &dom[fresh_from..] {
        if !s.leq(&root, x) {
            return Err(fail("root is least", &[&root, x]));
        }
        for &y in &dom {
            let m = s.meet(x, y);
            if m != s.meet(y, x) {
                return Err(fail("meet is commutative", &[x, y]));
            }
            if !s.leq(&m, x) || !s.leq(&m, y) {
                return Err(fail("meet is a lower bound", &[x, y, &m]));
            }
            if s.leq(x, y) != (m == *x) {
                return Err(fail("p <= q iff p ^ q = p", &[x, y]));
            }
            if let Some(&z) = dom
                .iter()
                .find(|z| s.leq(z, x) && s.leq(z, y) && !s.leq(z, &m))
            {
                return Err(fail("meet is the greatest lower bound", &[x, y, z]));
            }
        }
    }
    Ok(())
}

/// Forth-only construction of an embedding of a countable PM structure into
/// a DPM structure, one enumerated element at a time.
pub struct CountableEmbedding<'a, P: Pm, Q: Pm> {
    source: &'a P,
    target: &'a Q,
    current: PartialEmbedding<P::Elem, Q::Elem>,
    next_index: u64,
    exhausted: bool,
}

impl<'a, P, Q> CountableEmbedding<'a, P, Q>
where
    P: Enumerated,
    Q: Enumerated + Dpm,
{
    pub fn new(source: &'a P, target: &'a Q) -> Self {
        CountableEmbedding {
            source,
            target,
            current: PartialEmbedding::roots(source, target),
            next_index: 0,
            exhausted: false,
        }
    }

    /// The embedding once `element_at(0..n)` are in the domain, or all
    /// elements if the source has fewer.
    pub fn prefix(&mut self, n: u64) -> Result<&PartialEmbedding<P::Elem, Q::Elem>, EmbedError> {
        while self.next_index < n && !self.exhausted {
            match self.source.element_at(self.next_index) {
                None => self.exhausted = true,
                Some(a) => {
                    let before = self.current.len();
                    let next = extend_unchecked(self.source, self.target, &self.current, &a)?;
                    check_new_pm_laws(self.source, &next, before)?;
                    self.current = next;
                    self.next_index += 1;
                }
            }
        }
        Ok(&self.current)
    }

    pub fn current(&self) -> &PartialEmbedding<P::Elem, Q::Elem> {
        &self.current
    }
}

/// The `n`-th stage of [`CountableEmbedding`].
pub fn embed_countable<P, Q>(
    source: &P,
    target: &Q,
    n: u64,
) -> Result<PartialEmbedding<P::Elem, Q::Elem>, EmbedError>
where
    P: Enumerated,
    Q: Enumerated + Dpm,
{
    let mut emb = CountableEmbedding::new(source, target);
    emb.prefix(n).cloned()
}

/// Back-and-forth between two enumerated DPM structures. Even steps add the
/// least-indexed element of `A` missing from the domain, odd steps the
/// least-indexed element of `B` missing from the range.
pub struct BackAndForth<'a, A: Pm, B: Pm> {
    a: &'a A,
    b: &'a B,
    pi: PartialEmbedding<A::Elem, B::Elem>,
    step: u64,
    next_a: u64,
    next_b: u64,
}

impl<'a, A, B> BackAndForth<'a, A, B>
where
    A: Enumerated + Dpm,
    B: Enumerated + Dpm,
{
    pub fn new(a: &'a A, b: &'a B) -> Self {
        BackAndForth {
            a,
            b,
            pi: PartialEmbedding::roots(a, b),
            step: 0,
            next_a: 0,
            next_b: 0,
        }
    }

    fn skip_covered(&mut self) {
        while let Some(x) = self.a.element_at(self.next_a) {
            if !self.pi.contains(&x) {
                break;
            }
            self.next_a += 1;
        }
        while let Some(y) = self.b.element_at(self.next_b) {
            if !self.pi.contains_image(&y) {
                break;
            }
            self.next_b += 1;
        }
    }

    fn a_covered(&self, n: u64) -> bool {
        self.next_a >= n || self.a.element_at(self.next_a).is_none()
    }

    fn b_covered(&self, n: u64) -> bool {
        self.next_b >= n || self.b.element_at(self.next_b).is_none()
    }

    /// Runs until the first `n` elements of both sides are matched.
    pub fn advance_to(&mut self, n: u64) -> Result<(), EmbedError> {
        loop {
            self.skip_covered();
            if self.a_covered(n) && self.b_covered(n) {
                return Ok(());
            }
            if self.step.is_multiple_of(2) {
                if let Some(x) = self.a.element_at(self.next_a) {
                    self.pi = extend_unchecked(self.a, self.b, &self.pi, &x)?;
                }
            } else if let Some(y) = self.b.element_at(self.next_b) {
                let sigma = extend_unchecked(self.b, self.a, &self.pi.inverse(), &y)?;
                self.pi = sigma.inverse();
            }
            self.step += 1;
        }
    }

    pub fn forward(&self) -> &PartialEmbedding<A::Elem, B::Elem> {
        &self.pi
    }
}

/// Mutually inverse partial embeddings covering the first `n` elements of
/// each structure.
#[allow(clippy::type_complexity)]
pub fn isomorphism_prefix<A, B>(
    a: &A,
    b: &B,
    n: u64,
) -> Result<
    (
        PartialEmbedding<A::Elem, B::Elem>,
        PartialEmbedding<B::Elem, A::Elem>,
    ),
    EmbedError,
>
where
    A: Enumerated + Dpm,
    B: Enumerated + Dpm,
{
    let mut bf = BackAndForth::new(a, b);
    bf.advance_to(n)?;
    let pi = bf.forward().clone();
    let sigma = pi.inverse();
    Ok((pi, sigma))
}
