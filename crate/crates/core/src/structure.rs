//! Abstract presentations of pseudotrees with meets.
//!
//! A [`Pm`] structure is given by its root and a binary meet; the order is
//! recovered as `p <= q` iff `p ^ q = p`. [`Enumerated`] adds an element
//! enumeration with the root at index 0, and [`Dpm`] adds the density and
//! splitting witnesses that the embedding engine consumes.

use std::fmt::Debug;
use std::hash::Hash;

pub trait Pm {
    type Elem: Clone + Eq + Hash + Debug;

    fn root(&self) -> Self::Elem;

    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.meet(a, b) == *a
    }

    fn lt(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a != b && self.leq(a, b)
    }
}

/// A structure whose elements are listed by index. Finite structures return
/// `None` past their size; `element_at(0)` is the root.
pub trait Enumerated: Pm {
    fn element_at(&self, index: u64) -> Option<Self::Elem>;

    /// Textual form used when reporting embeddings.
    fn render(&self, elem: &Self::Elem) -> String;
}

/// Witness oracles for the density and splitting axioms.
///
/// Implementations may decline (return `None`) when the caller breaks the
/// hypothesis; callers are expected to check every returned witness against
/// its contract rather than trust it.
pub trait Dpm: Pm {
    /// Some `h` with `g < h < f`.
    fn density(&self, g: &Self::Elem, f: &Self::Elem) -> Option<Self::Elem>;

    /// Some `h > g` with `fs[i] ^ h = g` for every supplied `fs[i]`.
    fn splitting(&self, g: &Self::Elem, fs: &[Self::Elem]) -> Option<Self::Elem>;
}

impl<S: Pm + ?Sized> Pm for &S {
    type Elem = S::Elem;

    fn root(&self) -> Self::Elem {
        (**self).root()
    }

    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        (**self).meet(a, b)
    }

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        (**self).leq(a, b)
    }
}

impl<S: Enumerated + ?Sized> Enumerated for &S {
    fn element_at(&self, index: u64) -> Option<Self::Elem> {
        (**self).element_at(index)
    }

    fn render(&self, elem: &Self::Elem) -> String {
        (**self).render(elem)
    }
}

impl<S: Dpm + ?Sized> Dpm for &S {
    fn density(&self, g: &Self::Elem, f: &Self::Elem) -> Option<Self::Elem> {
        (**self).density(g, f)
    }

    fn splitting(&self, g: &Self::Elem, fs: &[Self::Elem]) -> Option<Self::Elem> {
        (**self).splitting(g, fs)
    }
}
