//! Exact clique and chromatic numbers by exhaustive search. Both are
//! exponential and guarded by hard size caps.

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const MAX_CHROMATIC_ORACLE_N: usize = 14;
pub const MAX_CLIQUE_ORACLE_N: usize = 20;

fn neighbor_masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| g.neighbors(v).fold(0u32, |acc, w| acc | 1 << w))
        .collect()
}

/// Exact chromatic number by branch and bound over colour assignments.
pub fn brute_force_chromatic(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > MAX_CHROMATIC_ORACLE_N {
        return Err(Error::SizeLimitExceeded {
            what: "chromatic oracle vertex count",
            actual: n,
            limit: MAX_CHROMATIC_ORACLE_N,
        });
    }
    let masks = neighbor_masks(g);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(masks[v].count_ones()));

    // greedy colouring gives the initial incumbent
    let mut colour = vec![usize::MAX; n];
    let mut best = 0;
    for &v in &order {
        let c = (0..)
            .find(|&c| (0..n).all(|w| masks[v] >> w & 1 == 0 || colour[w] != c))
            .unwrap();
        colour[v] = c;
        best = best.max(c + 1);
    }

    // a clique is a lower bound; stop early once the incumbent meets it
    let lower = brute_force_clique_masks(&masks);
    if best > lower {
        let mut class_masks = Vec::with_capacity(n);
        search_colouring(&order, &masks, 0, &mut class_masks, &mut best, lower);
    }
    Ok(best)
}

fn search_colouring(
    order: &[usize],
    masks: &[u32],
    depth: usize,
    classes: &mut Vec<u32>,
    best: &mut usize,
    lower: usize,
) {
    if *best == lower {
        return;
    }
    if depth == order.len() {
        *best = classes.len();
        return;
    }
    let v = order[depth];
    for c in 0..classes.len() {
        if classes[c] & masks[v] == 0 {
            classes[c] |= 1 << v;
            search_colouring(order, masks, depth + 1, classes, best, lower);
            classes[c] &= !(1 << v);
        }
    }
    // opening a new class only helps if it stays below the incumbent
    if classes.len() + 1 < *best {
        classes.push(1 << v);
        search_colouring(order, masks, depth + 1, classes, best, lower);
        classes.pop();
    }
}

/// Exact clique number by Bron–Kerbosch with pivoting.
pub fn brute_force_clique(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > MAX_CLIQUE_ORACLE_N {
        return Err(Error::SizeLimitExceeded {
            what: "clique oracle vertex count",
            actual: n,
            limit: MAX_CLIQUE_ORACLE_N,
        });
    }
    Ok(brute_force_clique_masks(&neighbor_masks(g)))
}

fn brute_force_clique_masks(masks: &[u32]) -> usize {
    let all = if masks.len() == 32 { u32::MAX } else { (1u32 << masks.len()) - 1 };
    let mut best = 0;
    bron_kerbosch(masks, 0, all, 0, &mut best);
    best
}

fn bron_kerbosch(masks: &[u32], size: usize, mut candidates: u32, mut excluded: u32, best: &mut usize) {
    if candidates == 0 {
        if excluded == 0 {
            *best = (*best).max(size);
        }
        return;
    }
    if size + candidates.count_ones() as usize <= *best {
        return;
    }
    let pivot_pool = candidates | excluded;
    let pivot = (0..masks.len())
        .filter(|&u| pivot_pool >> u & 1 == 1)
        .max_by_key(|&u| (masks[u] & candidates).count_ones())
        .unwrap();
    let mut branch = candidates & !masks[pivot];
    while branch != 0 {
        let v = branch.trailing_zeros() as usize;
        branch &= branch - 1;
        bron_kerbosch(masks, size + 1, candidates & masks[v], excluded & masks[v], best);
        candidates &= !(1 << v);
        excluded |= 1 << v;
    }
}
