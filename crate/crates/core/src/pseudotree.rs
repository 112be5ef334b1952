//! Finite pseudotrees: partial orders whose down-sets are chains.
//!
//! Nodes carry opaque string ids and are kept in lexicographic id order, which
//! is the canonical order used for node indices and for the order in which
//! violations are reported.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use rand::Rng as _;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rng::{seeded, Rng};
use crate::structure::{Dpm, Enumerated, Pm};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePseudotree {
    ids: Vec<String>,
    leq: Vec<Vec<bool>>,
    root: Option<usize>,
    meet: Option<Vec<Vec<usize>>>,
}

/// Wire form: `{"nodes":[ids], "leq":[[a,b],...], "root": id|null}`.
///
/// Reflexive pairs may be listed or omitted; they are always implied.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PseudotreeJson {
    pub nodes: Vec<String>,
    pub leq: Vec<(String, String)>,
    #[serde(default)]
    pub root: Option<String>,
}

/// Malformed input that cannot even be read as a relation.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SchemaError {
    #[error("duplicate node id {0:?}")]
    DuplicateNode(String),
    #[error("relation mentions unknown node {0:?}")]
    UnknownNode(String),
    #[error("meet table has wrong shape or out-of-range entries")]
    BadMeetTable,
    #[error("invalid JSON: {0}")]
    Json(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    NotAntisymmetric,
    NotTransitive,
    DownSetNotLinear,
    RootNotLeast,
    NoLeastElement,
    NoInfimum,
    MeetNotLowerBound,
    MeetNotGreatest,
    MeetOrderMismatch,
    DensityWitness,
    SplittingWitness,
}

/// One failed law, with the elements that witness the failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub witnesses: Vec<String>,
}

impl Violation {
    pub fn new(kind: ViolationKind, witnesses: Vec<String>) -> Self {
        Violation { kind, witnesses }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub valid: bool,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    fn from_violations(violations: Vec<Violation>) -> Self {
        CheckReport {
            valid: violations.is_empty(),
            violations,
        }
    }

    pub fn kinds(&self) -> Vec<ViolationKind> {
        self.violations.iter().map(|v| v.kind).collect()
    }
}

impl FinitePseudotree {
    /// Builds the relation; order-theoretic defects are left for the checkers.
    pub fn from_relation<I, P>(nodes: I, pairs: P, root: Option<&str>) -> Result<Self, SchemaError>
    where
        I: IntoIterator,
        I::Item: Into<String>,
        P: IntoIterator<Item = (String, String)>,
    {
        let mut ids: Vec<String> = nodes.into_iter().map(Into::into).collect();
        ids.sort();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(SchemaError::DuplicateNode(w[0].clone()));
        }
        let index: HashMap<&str, usize> = ids
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| SchemaError::UnknownNode(s.to_string()))
        };
        let n = ids.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in pairs {
            let (a, b) = (lookup(&a)?, lookup(&b)?);
            leq[a][b] = true;
        }
        let root = root.map(lookup).transpose()?;
        Ok(FinitePseudotree {
            ids,
            leq,
            root,
            meet: None,
        })
    }

    /// Node indices follow `ids`, which must already be sorted and distinct.
    fn from_parts(ids: Vec<String>, leq: Vec<Vec<bool>>, root: Option<usize>) -> Self {
        debug_assert!(ids.windows(2).all(|w| w[0] < w[1]));
        FinitePseudotree {
            ids,
            leq,
            root,
            meet: None,
        }
    }

    pub fn from_json(json: PseudotreeJson) -> Result<Self, SchemaError> {
        FinitePseudotree::from_relation(json.nodes, json.leq, json.root.as_deref())
    }

    pub fn from_json_str(s: &str) -> Result<Self, SchemaError> {
        let json: PseudotreeJson =
            serde_json::from_str(s).map_err(|e| SchemaError::Json(e.to_string()))?;
        FinitePseudotree::from_json(json)
    }

    /// Strict pairs only, in canonical order.
    pub fn to_json(&self) -> PseudotreeJson {
        let mut leq = Vec::new();
        for a in 0..self.len() {
            for b in 0..self.len() {
                if a != b && self.leq[a][b] {
                    leq.push((self.ids[a].clone(), self.ids[b].clone()));
                }
            }
        }
        PseudotreeJson {
            nodes: self.ids.clone(),
            leq,
            root: self.root.map(|r| self.ids[r].clone()),
        }
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("plain data serializes")
    }

    /// Attaches a meet table indexed by canonical node order.
    pub fn with_meet(mut self, table: Vec<Vec<usize>>) -> Result<Self, SchemaError> {
        let n = self.len();
        if table.len() != n
            || table
                .iter()
                .any(|r| r.len() != n || r.iter().any(|&m| m >= n))
        {
            return Err(SchemaError::BadMeetTable);
        }
        self.meet = Some(table);
        Ok(self)
    }

    pub fn with_root(mut self, root: Option<usize>) -> Self {
        self.root = root;
        self
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.binary_search_by(|s| s.as_str().cmp(id)).ok()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    pub fn meet_table(&self) -> Option<&Vec<Vec<usize>>> {
        self.meet.as_ref()
    }

    pub fn meet(&self, a: usize, b: usize) -> Option<usize> {
        self.meet.as_ref().map(|m| m[a][b])
    }

    /// The element below every node, if any.
    pub fn least(&self) -> Option<usize> {
        (0..self.len()).find(|&r| (0..self.len()).all(|x| self.leq[r][x]))
    }

    /// `{x : x <= t}` as sorted indices.
    pub fn down_set(&self, t: usize) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.leq[x][t]).collect()
    }

    /// Greatest common lower bound computed from the order alone.
    pub fn infimum(&self, a: usize, b: usize) -> Option<usize> {
        let lower: Vec<usize> = (0..self.len())
            .filter(|&l| self.leq[l][a] && self.leq[l][b])
            .collect();
        lower
            .iter()
            .copied()
            .find(|&m| lower.iter().all(|&l| self.leq[l][m]))
    }

    /// Meet table derived from the order, when every pair has an infimum.
    pub fn infimum_table(&self) -> Option<Vec<Vec<usize>>> {
        (0..self.len())
            .map(|a| (0..self.len()).map(|b| self.infimum(a, b)).collect())
            .collect()
    }

    /// Covering pairs `(a, b)`: `a < b` with nothing strictly between.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let lt = |a: usize, b: usize| a != b && self.leq[a][b];
        let mut edges = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if lt(a, b) && !(0..n).any(|c| lt(a, c) && lt(c, b)) {
                    edges.push((a, b));
                }
            }
        }
        edges
    }

    /// Graphviz rendering of the Hasse diagram, least elements at the bottom.
    pub fn to_dot(&self) -> String {
        let quote = |s: &str| format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""));
        let mut out = String::from("digraph pseudotree {\n  rankdir=BT;\n");
        for (i, id) in self.ids.iter().enumerate() {
            if Some(i) == self.root {
                let _ = writeln!(out, "  {} [shape=box];", quote(id));
            } else {
                let _ = writeln!(out, "  {};", quote(id));
            }
        }
        for (a, b) in self.hasse_edges() {
            let _ = writeln!(out, "  {} -> {};", quote(&self.ids[a]), quote(&self.ids[b]));
        }
        out.push_str("}\n");
        out
    }

    fn names(&self, idx: &[usize]) -> Vec<String> {
        idx.iter().map(|&i| self.ids[i].clone()).collect()
    }
}

/// Checks the partial-order laws, linearity of down-sets and leastness of a
/// declared root.
pub fn check_pseudotree(p: &FinitePseudotree) -> CheckReport {
    let n = p.len();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if p.leq(a, b) && p.leq(b, a) {
                out.push(Violation::new(
                    ViolationKind::NotAntisymmetric,
                    p.names(&[a, b]),
                ));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if a == b || !p.leq(a, b) {
                continue;
            }
            for c in 0..n {
                if p.leq(b, c) && !p.leq(a, c) {
                    out.push(Violation::new(
                        ViolationKind::NotTransitive,
                        p.names(&[a, b, c]),
                    ));
                }
            }
        }
    }
    for t in 0..n {
        let down = p.down_set(t);
        for (i, &x) in down.iter().enumerate() {
            for &y in &down[i + 1..] {
                if !p.leq(x, y) && !p.leq(y, x) {
                    out.push(Violation::new(
                        ViolationKind::DownSetNotLinear,
                        p.names(&[x, y, t]),
                    ));
                }
            }
        }
    }
    if let Some(r) = p.root() {
        for x in 0..n {
            if !p.leq(r, x) {
                out.push(Violation::new(
                    ViolationKind::RootNotLeast,
                    p.names(&[r, x]),
                ));
            }
        }
    }
    CheckReport::from_violations(out)
}

/// Checks the PM axioms: a least element and a greatest lower bound for every
/// pair. A supplied meet table is verified against the order, including the
/// identity `p <= q iff p ^ q = p`; without one, infima are searched for.
#[allow(clippy::needless_range_loop)]
pub fn check_pm(p: &FinitePseudotree) -> CheckReport {
    let base = check_pseudotree(p);
    if !base.valid {
        return base;
    }
    let n = p.len();
    let mut out = Vec::new();
    if p.root().is_none() && p.least().is_none() {
        out.push(Violation::new(ViolationKind::NoLeastElement, Vec::new()));
    }
    let table = match p.meet_table() {
        Some(t) => t.clone(),
        None => {
            let mut t = vec![vec![usize::MAX; n]; n];
            for a in 0..n {
                for b in 0..n {
                    match p.infimum(a, b) {
                        Some(m) => t[a][b] = m,
                        None if a < b => {
                            out.push(Violation::new(ViolationKind::NoInfimum, p.names(&[a, b])))
                        }
                        None => {}
                    }
                }
            }
            if !out.is_empty() {
                return CheckReport::from_violations(out);
            }
            t
        }
    };
    for a in 0..n {
        for b in 0..n {
            let m = table[a][b];
            if !p.leq(m, a) || !p.leq(m, b) {
                out.push(Violation::new(
                    ViolationKind::MeetNotLowerBound,
                    p.names(&[a, b, m]),
                ));
                continue;
            }
            if let Some(l) = (0..n).find(|&l| p.leq(l, a) && p.leq(l, b) && !p.leq(l, m)) {
                out.push(Violation::new(
                    ViolationKind::MeetNotGreatest,
                    p.names(&[a, b, m, l]),
                ));
            }
            if p.leq(a, b) != (m == a) {
                out.push(Violation::new(
                    ViolationKind::MeetOrderMismatch,
                    p.names(&[a, b]),
                ));
            }
        }
    }
    CheckReport::from_violations(out)
}

#[derive(Debug, Error)]
#[error("input is not a pseudotree: {} violation(s), first {:?}", .0.violations.len(), .0.violations.first())]
pub struct NotAPseudotree(pub CheckReport);

/// A PM structure containing a copy of the input, with the copying map.
#[derive(Clone, Debug)]
pub struct Completion {
    pub structure: FinitePseudotree,
    /// `embedding[t]` is the node of `structure` representing node `t`.
    pub embedding: Vec<usize>,
}

impl Completion {
    /// `(original id, completion id)` for every original node.
    pub fn embedding_pairs(&self, original: &FinitePseudotree) -> Vec<(String, String)> {
        self.embedding
            .iter()
            .enumerate()
            .map(|(t, &s)| (original.id(t).to_string(), self.structure.id(s).to_string()))
            .collect()
    }
}

fn set_id(tree: &FinitePseudotree, members: &[usize]) -> String {
    let mut s = String::from("{");
    for (i, &m) in members.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(tree.id(m));
    }
    s.push('}');
    s
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter()
        .copied()
        .filter(|x| b.binary_search(x).is_ok())
        .collect()
}

/// Down-set completion: the sets `S_t = {x <= t}`, their pairwise
/// intersections, and the empty set unless the input has a least element,
/// ordered by inclusion.
pub fn complete_to_pm(t: &FinitePseudotree) -> Result<Completion, NotAPseudotree> {
    let report = check_pseudotree(t);
    if !report.valid {
        return Err(NotAPseudotree(report));
    }
    let n = t.len();
    let down: Vec<Vec<usize>> = (0..n).map(|x| t.down_set(x)).collect();
    let mut sets: BTreeSet<Vec<usize>> = down.iter().cloned().collect();
    for a in 0..n {
        for b in a + 1..n {
            sets.insert(intersect(&down[a], &down[b]));
        }
    }
    if t.least().is_none() {
        sets.insert(Vec::new());
    }
    let mut named: Vec<(String, Vec<usize>)> =
        sets.into_iter().map(|s| (set_id(t, &s), s)).collect();
    named.sort();
    let position: HashMap<&[usize], usize> = named
        .iter()
        .enumerate()
        .map(|(i, (_, s))| (s.as_slice(), i))
        .collect();
    let m = named.len();
    let subset = |a: &[usize], b: &[usize]| a.iter().all(|x| b.binary_search(x).is_ok());
    let leq: Vec<Vec<bool>> = (0..m)
        .map(|i| (0..m).map(|j| subset(&named[i].1, &named[j].1)).collect())
        .collect();
    let meet: Vec<Vec<usize>> = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| position[intersect(&named[i].1, &named[j].1).as_slice()])
                .collect()
        })
        .collect();
    let root = (0..m).min_by_key(|&i| named[i].1.len());
    let embedding = down.iter().map(|s| position[s.as_slice()]).collect();
    let ids = named.iter().map(|(id, _)| id.clone()).collect();
    let structure = FinitePseudotree::from_parts(ids, leq, root)
        .with_meet(meet)
        .expect("intersections stay inside the completion");
    Ok(Completion {
        structure,
        embedding,
    })
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("pseudotree size must be at least 1")]
pub struct ZeroSize;

/// Seeded random forest order: node `i` sits above a uniformly chosen earlier
/// node, or starts a new minimal node, with equal probability among the
/// `i + 1` choices.
pub fn random_pseudotree(seed: u64, size: usize) -> Result<FinitePseudotree, ZeroSize> {
    if size == 0 {
        return Err(ZeroSize);
    }
    let mut rng = seeded(seed);
    let width = (size - 1).to_string().len();
    let ids: Vec<String> = (0..size).map(|i| format!("n{i:0width$}")).collect();
    let mut down: Vec<Vec<usize>> = Vec::with_capacity(size);
    for i in 0..size {
        let choice = rng.gen_range(0..=i);
        let mut d = if choice < i {
            down[choice].clone()
        } else {
            Vec::new()
        };
        d.push(i);
        down.push(d);
    }
    let mut leq = vec![vec![false; size]; size];
    for (t, d) in down.iter().enumerate() {
        for &x in d {
            leq[x][t] = true;
        }
    }
    Ok(FinitePseudotree::from_parts(ids, leq, None))
}

/// A finite PM structure presented by node indices, enumerated root first.
#[derive(Clone, Debug)]
pub struct FinitePm {
    tree: FinitePseudotree,
    table: Vec<Vec<usize>>,
    root: usize,
    order: Vec<usize>,
}

#[derive(Debug, Error)]
pub enum FinitePmError {
    #[error("structure fails the PM axioms")]
    NotPm(CheckReport),
    #[error("enumeration order must be a permutation of the nodes starting with the root")]
    BadOrder,
}

impl FinitePm {
    /// Uses the attached meet table if present, else derives infima.
    pub fn new(tree: FinitePseudotree) -> Result<Self, FinitePmError> {
        let report = check_pm(&tree);
        if !report.valid {
            return Err(FinitePmError::NotPm(report));
        }
        let table = match tree.meet_table() {
            Some(t) => t.clone(),
            None => tree.infimum_table().expect("PM structures have all infima"),
        };
        let root = tree
            .root()
            .or_else(|| tree.least())
            .expect("PM has a least element");
        let mut order = vec![root];
        order.extend((0..tree.len()).filter(|&i| i != root));
        Ok(FinitePm {
            tree,
            table,
            root,
            order,
        })
    }

    /// Replaces the enumeration order.
    pub fn with_order(mut self, order: Vec<usize>) -> Result<Self, FinitePmError> {
        let mut seen = vec![false; self.tree.len()];
        for &i in &order {
            if i >= seen.len() || std::mem::replace(&mut seen[i], true) {
                return Err(FinitePmError::BadOrder);
            }
        }
        if order.len() != seen.len() || order.first() != Some(&self.root) {
            return Err(FinitePmError::BadOrder);
        }
        self.order = order;
        Ok(self)
    }

    /// Root first, remaining nodes in a seeded uniform order.
    pub fn shuffled(self, seed: u64) -> Self {
        use rand::seq::SliceRandom;
        let mut rng = seeded(seed);
        let mut rest: Vec<usize> = (0..self.tree.len()).filter(|&i| i != self.root).collect();
        rest.shuffle(&mut rng);
        let mut order = vec![self.root];
        order.extend(rest);
        self.with_order(order).expect("permutation with root first")
    }

    pub fn tree(&self) -> &FinitePseudotree {
        &self.tree
    }

    pub fn len(&self) -> usize {
        self.tree.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tree.is_empty()
    }
}

impl Pm for FinitePm {
    type Elem = usize;

    fn root(&self) -> usize {
        self.root
    }

    fn meet(&self, a: &usize, b: &usize) -> usize {
        self.table[*a][*b]
    }

    fn leq(&self, a: &usize, b: &usize) -> bool {
        self.tree.leq(*a, *b)
    }
}

impl Enumerated for FinitePm {
    fn element_at(&self, index: u64) -> Option<usize> {
        usize::try_from(index)
            .ok()
            .and_then(|i| self.order.get(i).copied())
    }

    fn render(&self, elem: &usize) -> String {
        self.tree.id(*elem).to_string()
    }
}

/// How many samples [`check_dpm_sampled`] draws and how large splitting
/// families may grow.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleSpec {
    pub seed: u64,
    pub samples: usize,
    pub max_family: usize,
}

impl Default for SampleSpec {
    fn default() -> Self {
        SampleSpec {
            seed: 0,
            samples: 1000,
            max_family: 3,
        }
    }
}

/// Spot-checks the density and splitting witnesses of a structure.
///
/// Each sample draws `x, y`, sets `g = x ^ y`, asks for a density witness
/// between `g` and each of `x, y` lying strictly above it, then grows a
/// splitting family over `g` from further draws that meet the family at `g`,
/// interleaved with the witness's own outputs, asking for a splitting witness
/// at each size from the empty family up.
pub fn check_dpm_sampled<S, D>(structure: &S, spec: SampleSpec, mut draw: D) -> CheckReport
where
    S: Dpm + Enumerated,
    D: FnMut(&mut Rng) -> S::Elem,
{
    let mut rng = seeded(spec.seed);
    let mut out = Vec::new();
    let show = |e: &S::Elem| structure.render(e);
    for _ in 0..spec.samples {
        let x = draw(&mut rng);
        let y = draw(&mut rng);
        let g = structure.meet(&x, &y);
        for f in [&x, &y] {
            if !structure.lt(&g, f) {
                continue;
            }
            match structure.density(&g, f) {
                Some(h) if structure.lt(&g, &h) && structure.lt(&h, f) => {}
                other => out.push(Violation::new(
                    ViolationKind::DensityWitness,
                    vec![
                        show(&g),
                        show(f),
                        other.as_ref().map_or("none".into(), show),
                    ],
                )),
            }
        }
        let mut family: Vec<S::Elem> = Vec::new();
        for round in 0..=spec.max_family {
            let witness = structure.splitting(&g, &family);
            let ok = witness.as_ref().is_some_and(|h| {
                structure.lt(&g, h) && family.iter().all(|f| structure.meet(f, h) == g)
            });
            if !ok {
                let mut w = vec![show(&g)];
                w.extend(family.iter().map(show));
                w.push(witness.as_ref().map_or("none".into(), show));
                out.push(Violation::new(ViolationKind::SplittingWitness, w));
                break;
            }
            if round == spec.max_family {
                break;
            }
            let candidate = draw(&mut rng);
            let fits = structure.lt(&g, &candidate)
                && family.iter().all(|f| structure.meet(f, &candidate) == g);
            family.push(if fits {
                candidate
            } else {
                witness.expect("checked above")
            });
        }
    }
    CheckReport::from_violations(out)
}
