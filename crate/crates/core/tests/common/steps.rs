//! Step functions on initial segments of Q, with small fractions in `i128`.
//!
//! Elements are compared by evaluating both functions at every breakpoint,
//! between consecutive breakpoints and below all of them. Both sides are
//! constant on the gaps, so those probes decide extension exactly.

use std::cmp::Ordering;

use pseudotree::tq::Piece;
use pseudotree::{Rational, TqElement};
use rand::Rng;

#[derive(Clone, Copy, Debug)]
pub struct Frac {
    pub num: i128,
    pub den: i128,
}

impl Frac {
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den > 0);
        Frac { num, den }
    }

    fn mid(self, o: Frac) -> Frac {
        Frac::new(self.num * o.den + o.num * self.den, 2 * self.den * o.den)
    }

    fn minus_one(self) -> Frac {
        Frac::new(self.num - self.den, self.den)
    }

    pub fn to_rational(self) -> Rational {
        Rational::new(self.num as i64, self.den as i64)
    }
}

impl PartialEq for Frac {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Frac {}
impl PartialOrd for Frac {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Frac {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.num * o.den).cmp(&(o.num * self.den))
    }
}

/// `(right endpoint, value)` pieces; the first piece is unbounded below.
pub type Step = Vec<(Frac, u64)>;

pub fn from_element(f: &TqElement) -> Step {
    f.pieces()
        .iter()
        .map(|p| {
            let num: i128 = p.end.numer().to_string().parse().expect("small numerator");
            let den: i128 = p
                .end
                .denom()
                .to_string()
                .parse()
                .expect("small denominator");
            (Frac::new(num, den), p.value)
        })
        .collect()
}

pub fn to_element(s: &Step) -> TqElement {
    TqElement::merged(
        s.iter()
            .map(|(e, v)| Piece::new(e.to_rational(), *v))
            .collect(),
    )
    .expect("increasing endpoints")
}

pub fn eval(f: &Step, x: Frac) -> Option<u64> {
    f.iter().find(|(e, _)| x <= *e).map(|(_, v)| *v)
}

fn probes(f: &Step, g: &Step) -> Vec<Frac> {
    let mut pts: Vec<Frac> = f.iter().chain(g.iter()).map(|(e, _)| *e).collect();
    pts.sort();
    pts.dedup();
    let mut out = Vec::with_capacity(2 * pts.len() + 1);
    if let Some(&first) = pts.first() {
        out.push(first.minus_one());
    }
    for (i, &p) in pts.iter().enumerate() {
        out.push(p);
        if let Some(&q) = pts.get(i + 1) {
            out.push(p.mid(q));
        }
    }
    out
}

/// `f` is a restriction of `g`.
pub fn extends(f: &Step, g: &Step) -> bool {
    let Some(&(m, _)) = f.last() else {
        return true;
    };
    probes(f, g)
        .into_iter()
        .filter(|&x| x <= m)
        .all(|x| eval(g, x).is_some() && eval(g, x) == eval(f, x))
}

pub fn strictly_extends(f: &Step, g: &Step) -> bool {
    extends(f, g) && !extends(g, f)
}

/// `m` is the greatest common restriction of `f` and `g`: it restricts both,
/// and `f`, `g` disagree (or one stops) immediately past the end of `m`.
pub fn is_glb(f: &Step, g: &Step, m: &Step) -> bool {
    if !extends(m, f) || !extends(m, g) {
        return false;
    }
    let pts = probes(f, g);
    let past = match m.last() {
        None => pts.first().copied(),
        Some(&(e, _)) => {
            let mut all: Vec<Frac> = f.iter().chain(g.iter()).map(|(x, _)| *x).collect();
            all.sort();
            all.into_iter().find(|&x| x > e).map(|next| e.mid(next))
        }
    };
    match past {
        None => true,
        Some(y) => match (eval(f, y), eval(g, y)) {
            (Some(a), Some(b)) => a != b,
            _ => true,
        },
    }
}

/// The bounded search space: endpoints `p/q` with `|p| <= 4`, `1 <= q <= 4`,
/// at most four pieces, values below four.
#[derive(Clone, Debug)]
pub struct Bounded {
    pub endpoints: Vec<Frac>,
    pub max_pieces: usize,
    pub max_value: u64,
}

impl Default for Bounded {
    fn default() -> Self {
        let mut endpoints = Vec::new();
        for den in 1..=4i128 {
            for num in -4..=4i128 {
                if gcd(num.abs(), den) == 1 {
                    endpoints.push(Frac::new(num, den));
                }
            }
        }
        endpoints.sort();
        Bounded {
            endpoints,
            max_pieces: 4,
            max_value: 4,
        }
    }
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Bounded {
    /// Every element of the space that restricts all of `uppers`.
    pub fn lower_bounds(&self, uppers: &[&Step]) -> Vec<Step> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        self.dfs(uppers, &mut cur, 0, &mut out);
        out
    }

    fn dfs(&self, uppers: &[&Step], cur: &mut Step, start: usize, out: &mut Vec<Step>) {
        if !uppers.iter().all(|u| extends(cur, u)) {
            return;
        }
        out.push(cur.clone());
        if cur.len() == self.max_pieces {
            return;
        }
        let prev = cur.last().map(|&(_, v)| v);
        for ei in start..self.endpoints.len() {
            for v in 0..self.max_value {
                if Some(v) == prev {
                    continue;
                }
                cur.push((self.endpoints[ei], v));
                self.dfs(uppers, cur, ei + 1, out);
                cur.pop();
            }
        }
    }

    pub fn random(&self, rng: &mut impl Rng) -> Step {
        let n = rng.gen_range(0..=self.max_pieces);
        self.grow(rng, Vec::new(), n)
    }

    /// A random element sharing a random initial part with `base`, so that
    /// meets are often nontrivial.
    pub fn near(&self, rng: &mut impl Rng, base: &Step) -> Step {
        let keep = rng.gen_range(0..=base.len());
        let mut s: Step = base[..keep].to_vec();
        if keep < base.len() && rng.gen_bool(0.5) {
            // cut the next piece short, keeping its value
            let lo = s.last().map(|&(e, _)| e);
            let (hi, v) = base[keep];
            let inside: Vec<Frac> = self
                .endpoints
                .iter()
                .copied()
                .filter(|&x| lo.is_none_or(|l| x > l) && x < hi)
                .collect();
            if !inside.is_empty() {
                s.push((inside[rng.gen_range(0..inside.len())], v));
            }
        }
        let extra = rng.gen_range(0..=self.max_pieces - s.len());
        self.grow(rng, s, extra)
    }

    fn grow(&self, rng: &mut impl Rng, mut s: Step, extra: usize) -> Step {
        for _ in 0..extra {
            let lo = s.last().map(|&(e, _)| e);
            let room: Vec<Frac> = self
                .endpoints
                .iter()
                .copied()
                .filter(|&x| lo.is_none_or(|l| x > l))
                .collect();
            if room.is_empty() {
                break;
            }
            let prev = s.last().map(|&(_, v)| v);
            let values: Vec<u64> = (0..self.max_value).filter(|&v| Some(v) != prev).collect();
            let e = room[rng.gen_range(0..room.len().min(6))];
            s.push((e, values[rng.gen_range(0..values.len())]));
        }
        s
    }
}
