//! Named graph families.
//!
//! Vertices of the set-valued families (Kneser, Clebsch, orthogonality) are
//! numbered by the lexicographic rank of the object they stand for, so ids
//! are stable across runs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest dimension accepted by [`orthogonality`]; `Ω(8)` already has 256
/// vertices.
pub const MAX_ORTHOGONALITY_DIM: usize = 8;

/// The cycle `C_n`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
    }
    Ok(Graph::from_fn(n, |i, j| j - i == 1 || (i == 0 && j == n - 1)))
}

/// The complete graph `K_n`.
pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("complete graph needs n >= 1".into()));
    }
    Ok(Graph::complete(n))
}

/// The circulant graph `C_n(S)`: `i ~ j` iff `(i - j) mod n` or `(j - i) mod n`
/// lies in `offsets`. Every offset must be in `1..=n/2`.
pub fn circulant(n: usize, offsets: &[usize]) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("circulant needs n >= 2, got {n}")));
    }
    if offsets.is_empty() {
        return Err(Error::InvalidParameter("circulant needs a non-empty connection set".into()));
    }
    if let Some(&d) = offsets.iter().find(|&&d| d == 0 || d > n / 2) {
        return Err(Error::InvalidParameter(format!(
            "circulant offset {d} outside 1..={}",
            n / 2
        )));
    }
    let mut in_set = vec![false; n];
    for &d in offsets {
        in_set[d] = true;
        in_set[n - d] = true;
    }
    Ok(Graph::from_fn(n, |i, j| in_set[j - i]))
}

/// The Kneser graph `K(p, k)`: `k`-subsets of a `p`-set, adjacent when
/// disjoint. Vertices are the subsets in lexicographic order. For `p < 2k`
/// the graph is edgeless.
pub fn kneser(p: usize, k: usize) -> Result<Graph> {
    if p == 0 || k == 0 {
        return Err(Error::InvalidParameter("kneser needs p, k >= 1".into()));
    }
    if p < k {
        return Err(Error::InvalidParameter(format!("kneser needs p >= k, got p={p}, k={k}")));
    }
    let subsets = k_subsets(p, k);
    if subsets.len() > 1 << 16 {
        return Err(Error::SizeLimitExceeded {
            what: "kneser vertex count",
            actual: subsets.len(),
            limit: 1 << 16,
        });
    }
    Ok(Graph::from_fn(subsets.len(), |i, j| subsets[i] & subsets[j] == 0))
}

/// `k`-subsets of `{0..p}` as bitmasks, in lexicographic order of their
/// sorted element lists.
fn k_subsets(p: usize, k: usize) -> Vec<u64> {
    assert!(p <= 64);
    let mut out = Vec::new();
    let mut combo: Vec<usize> = (0..k).collect();
    loop {
        out.push(combo.iter().fold(0u64, |acc, &e| acc | 1 << e));
        // advance to the next combination
        let Some(pos) = (0..k).rev().find(|&i| combo[i] < p - k + i) else {
            return out;
        };
        combo[pos] += 1;
        for i in pos + 1..k {
            combo[i] = combo[i - 1] + 1;
        }
    }
}

/// The Petersen graph, built as `K(5, 2)`.
pub fn petersen() -> Graph {
    kneser(5, 2).expect("valid parameters")
}

/// The (folded 5-cube) Clebsch graph: 4-bit strings, adjacent at Hamming
/// distance 1 or 4. Vertex `v` is the bit string with value `v`.
pub fn clebsch() -> Graph {
    Graph::from_fn(16, |i, j| matches!((i ^ j).count_ones(), 1 | 4))
}

/// The orthogonality graph `Ω(n)` on all `±1` vectors of length `n`,
/// adjacent when orthogonal.
///
/// Vertex `v` is the vector whose coordinate `t` is `-1` exactly when bit
/// `n - 1 - t` of `v` is set, which makes vertex order lexicographic with
/// `+1 < -1`. Two vectors are orthogonal iff they differ in `n/2` places.
pub fn orthogonality(n: usize) -> Result<Graph> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::InvalidParameter(format!(
            "orthogonality graph needs a positive even dimension, got {n}"
        )));
    }
    if n > MAX_ORTHOGONALITY_DIM {
        return Err(Error::SizeLimitExceeded {
            what: "orthogonality dimension",
            actual: n,
            limit: MAX_ORTHOGONALITY_DIM,
        });
    }
    Ok(Graph::from_fn(1 << n, |i, j| (i ^ j).count_ones() as usize == n / 2))
}

/// The `±1` vector represented by vertex `v` of `Ω(n)`.
pub fn orthogonality_vector(n: usize, v: usize) -> Vec<i8> {
    (0..n).map(|t| if v >> (n - 1 - t) & 1 == 1 { -1 } else { 1 }).collect()
}

/// Erdős–Rényi `G(n, p)` from a seeded ChaCha8 stream. The same `(n, p,
/// seed)` always gives the same graph.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if n == 0 || !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("random_graph needs n >= 1 and p in [0, 1], got n = {n}, p = {p}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(Graph::from_fn(n, |_, _| rng.random_bool(p)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn girth(g: &Graph) -> Option<usize> {
        // shortest cycle through BFS from every vertex
        let n = g.n();
        let mut best: Option<usize> = None;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            let mut parent = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = std::collections::VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for w in g.neighbors(v) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        let len = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    #[test]
    fn cycles() {
        let c5 = cycle(5).unwrap();
        assert_eq!(c5.edge_count(), 5);
        assert!(c5.is_connected());
        assert_eq!(c5.degrees().degrees, vec![2; 5]);
        assert!(cycle(4).unwrap().is_bipartite());
        assert_eq!(cycle(3).unwrap(), Graph::complete(3));
        assert!(cycle(2).is_err());
    }

    #[test]
    fn circulants() {
        assert_eq!(circulant(5, &[1]).unwrap(), cycle(5).unwrap());
        for n in 2..10 {
            let all: Vec<usize> = (1..=n / 2).collect();
            assert_eq!(circulant(n, &all).unwrap(), Graph::complete(n));
        }
        assert_eq!(circulant(6, &[2, 3]).unwrap().degrees().degrees, vec![3; 6]);
        assert!(circulant(6, &[4]).is_err());
        assert!(circulant(6, &[0]).is_err());
        assert!(circulant(6, &[]).is_err());
    }

    #[test]
    fn circulant_degree_formula() {
        for n in 2..14 {
            let half = n / 2;
            for mask in 1u32..(1 << half) {
                let s: Vec<usize> = (1..=half).filter(|d| mask >> (d - 1) & 1 == 1).collect();
                let g = circulant(n, &s).unwrap();
                let expected = 2 * s.len() - usize::from(n % 2 == 0 && s.contains(&(n / 2)));
                assert_eq!(g.degrees().degrees, vec![expected; n], "n={n} s={s:?}");
            }
        }
    }

    #[test]
    fn kneser_graphs() {
        let pet = kneser(5, 2).unwrap();
        assert_eq!(pet.n(), 10);
        assert_eq!(pet.edge_count(), 15);
        assert_eq!(pet.degrees().degrees, vec![3; 10]);
        assert_eq!(girth(&pet), Some(5));
        assert_eq!(kneser(3, 1).unwrap(), Graph::complete(3));
        let matching = kneser(4, 2).unwrap();
        assert_eq!(matching.edge_count(), 3);
        assert_eq!(matching.degrees().degrees, vec![1; 6]);
        assert!(kneser(2, 3).is_err());
        assert_eq!(kneser(3, 2).unwrap().edge_count(), 0);
        for (p, k) in [(6, 2), (7, 3), (7, 2)] {
            let g = kneser(p, k).unwrap();
            assert_eq!(g.n(), binomial(p, k));
            assert_eq!(g.degrees().degrees, vec![binomial(p - k, k); g.n()]);
        }
    }

    #[test]
    fn kneser_vertex_order_is_lexicographic() {
        assert_eq!(k_subsets(4, 2), vec![0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]);
    }

    #[test]
    fn clebsch_graph() {
        let g = clebsch();
        let n0: Vec<usize> = g.neighbors(0).collect();
        assert_eq!(n0, vec![0b0001, 0b0010, 0b0100, 0b1000, 0b1111]);
        assert_eq!(g.degrees().degrees, vec![5; 16]);
        assert_eq!(g.edge_count(), 40);
        assert_eq!(girth(&g), Some(4));
    }

    #[test]
    fn orthogonality_graphs() {
        let g = orthogonality(4).unwrap();
        assert_eq!(g.n(), 16);
        assert_eq!(g.degrees().degrees, vec![6; 16]);
        // (1,1,1,1) ~ (1,1,-1,-1)
        assert_eq!(orthogonality_vector(4, 0b0011), vec![1, 1, -1, -1]);
        assert!(g.has_edge(0, 0b0011));
        for (i, j) in g.edges() {
            let (u, v) = (orthogonality_vector(4, i), orthogonality_vector(4, j));
            assert_eq!(u.iter().zip(&v).map(|(a, b)| (a * b) as i32).sum::<i32>(), 0);
        }
        let o2 = orthogonality(2).unwrap();
        assert_eq!(o2.degrees().degrees, vec![2; 4]);
        assert!(orthogonality(3).is_err());
        assert!(orthogonality(10).is_err());
    }

    #[test]
    fn random_graph_is_seeded() {
        let a = random_graph(9, 0.5, 11).unwrap();
        assert_eq!(a, random_graph(9, 0.5, 11).unwrap());
        assert_eq!(random_graph(7, 0.0, 1).unwrap().edge_count(), 0);
        assert_eq!(random_graph(7, 1.0, 1).unwrap().edge_count(), 21);
        assert!(random_graph(0, 0.5, 1).is_err());
        assert!(random_graph(4, 1.5, 1).is_err());
    }
}
