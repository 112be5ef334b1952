//! Ranks by direct recursion over all strict extensions.

use std::collections::{BTreeSet, HashMap};

use rand::Rng;

pub fn rank_oracle(nodes: &BTreeSet<Vec<u64>>) -> HashMap<Vec<u64>, u64> {
    fn go(p: &[u64], nodes: &BTreeSet<Vec<u64>>, memo: &mut HashMap<Vec<u64>, u64>) -> u64 {
        if let Some(&r) = memo.get(p) {
            return r;
        }
        let above: Vec<Vec<u64>> = nodes
            .iter()
            .filter(|q| q.len() > p.len() && q.starts_with(p))
            .cloned()
            .collect();
        let r = above
            .iter()
            .map(|q| go(q, nodes, memo) + 1)
            .max()
            .unwrap_or(0);
        memo.insert(p.to_vec(), r);
        r
    }
    let mut memo = HashMap::new();
    for p in nodes {
        go(p, nodes, &mut memo);
    }
    memo
}

/// Calls `f` once for each prefix-closed tree on at most `max_nodes` nodes
/// whose labels lie in `0..alphabet`.
pub fn for_each_tree(max_nodes: usize, alphabet: u64, f: &mut impl FnMut(&[Vec<u64>])) {
    fn go(
        nodes: &mut Vec<Vec<u64>>,
        i: usize,
        max: usize,
        alphabet: u64,
        f: &mut impl FnMut(&[Vec<u64>]),
    ) {
        if i == nodes.len() {
            f(nodes);
            return;
        }
        let room = max - nodes.len();
        for mask in 0u32..(1 << alphabet) {
            if mask.count_ones() as usize > room {
                continue;
            }
            let len = nodes.len();
            for c in 0..alphabet {
                if mask & (1 << c) != 0 {
                    let mut child = nodes[i].clone();
                    child.push(c);
                    nodes.push(child);
                }
            }
            go(nodes, i + 1, max, alphabet, f);
            nodes.truncate(len);
        }
    }
    let mut nodes = vec![Vec::new()];
    go(&mut nodes, 0, max_nodes, alphabet, f);
}

/// A random prefix-closed tree on at most `max_nodes` nodes, biased toward
/// growing recent nodes so deep chains show up.
pub fn random_tree(rng: &mut impl Rng, max_nodes: usize) -> BTreeSet<Vec<u64>> {
    let target = rng.gen_range(1..=max_nodes);
    let mut order: Vec<Vec<u64>> = vec![Vec::new()];
    let mut set: BTreeSet<Vec<u64>> = order.iter().cloned().collect();
    let mut attempts = 0;
    while set.len() < target && attempts < 20 * max_nodes {
        attempts += 1;
        let parent = if rng.gen_bool(0.5) {
            order[order.len() - 1 - rng.gen_range(0..order.len().min(3))].clone()
        } else {
            order[rng.gen_range(0..order.len())].clone()
        };
        let mut child = parent;
        child.push(rng.gen_range(0..4));
        if set.insert(child.clone()) {
            order.push(child);
        }
    }
    set
}
