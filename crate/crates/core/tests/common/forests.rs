//! Finite pseudotrees from parent arrays.
//!
//! Every finite pseudotree is a forest under its cover relation, so parent
//! arrays with `parent[i] < i` reach every isomorphism type.

use pseudotree::FinitePseudotree;

pub fn from_parents(parents: &[Option<usize>]) -> FinitePseudotree {
    let ids: Vec<String> = (0..parents.len()).map(|i| format!("v{i}")).collect();
    let mut pairs = Vec::new();
    for i in 0..parents.len() {
        let mut p = parents[i];
        while let Some(a) = p {
            pairs.push((ids[a].clone(), ids[i].clone()));
            p = parents[a];
        }
    }
    FinitePseudotree::from_relation(ids.clone(), pairs, None).expect("well-formed relation")
}

/// All parent arrays on exactly `n` nodes.
pub fn parent_arrays(n: usize) -> Vec<Vec<Option<usize>>> {
    let mut out = vec![Vec::new()];
    for i in 0..n {
        let mut next = Vec::new();
        for prefix in &out {
            for choice in 0..=i {
                let mut p: Vec<Option<usize>> = prefix.clone();
                p.push(if choice == i { None } else { Some(choice) });
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Transitive reflexive order of a pseudotree, recomputed from `leq`.
pub fn order_matrix(t: &FinitePseudotree) -> Vec<Vec<bool>> {
    let n = t.len();
    (0..n)
        .map(|a| (0..n).map(|b| t.leq(a, b)).collect())
        .collect()
}

/// Greatest lower bound by exhaustive search over all nodes.
pub fn brute_glb(t: &FinitePseudotree, a: usize, b: usize) -> Option<usize> {
    let lower: Vec<usize> = (0..t.len())
        .filter(|&x| t.leq(x, a) && t.leq(x, b))
        .collect();
    lower
        .iter()
        .copied()
        .find(|&m| lower.iter().all(|&x| t.leq(x, m)))
}
