//! Directed trivalent trees with labeled in- and out-ends: the genus-0
//! combinatorial backbone of the chamber decomposition.
//!
//! A shape is a 3-valent tree with k in-ends and l out-ends, every internal
//! edge directed, and no source or sink vertices. Shapes are identified by
//! their set of directed splits (the ends on the source side of each
//! internal edge), which pins down the topology, the end attachment, and
//! the orientation at once. The full combinatorial count multiplies each
//! shape by its number of edge-compatible total vertex orders.

use crate::poly::LinearForm;
use crate::{Error, Result};
use std::collections::VecDeque;

/// End code: in-end i is i, out-end j is k + j (0-based labels).
type EndCode = u32;

/// Canonical identity of a shape: sorted source-side end sets, one per
/// internal edge.
pub type TreeKey = Vec<Vec<EndCode>>;

#[derive(Clone, Debug)]
pub struct DirectedTree {
    k: usize,
    l: usize,
    edges: Vec<(usize, usize)>,
    in_ends: Vec<usize>,
    out_ends: Vec<usize>,
    key: TreeKey,
}

impl PartialEq for DirectedTree {
    fn eq(&self, other: &Self) -> bool {
        self.k == other.k && self.l == other.l && self.key == other.key
    }
}
impl Eq for DirectedTree {}

impl DirectedTree {
    /// Validating constructor; rejects anything that is not a connected
    /// 3-valent directed tree free of sources and sinks.
    pub fn from_parts(
        k: usize,
        l: usize,
        edges: Vec<(usize, usize)>,
        in_ends: Vec<usize>,
        out_ends: Vec<usize>,
    ) -> Result<Self> {
        let m = k + l;
        if m < 3 {
            return Err(Error::TooFewEnds(m));
        }
        if in_ends.len() != k || out_ends.len() != l {
            return Err(Error::Invalid("end label count mismatch".into()));
        }
        let n = m - 2;
        if edges.len() != m - 3 {
            return Err(Error::Invalid("a tree on m ends has m-3 internal edges".into()));
        }
        let mut in_flags = vec![0u32; n];
        let mut out_flags = vec![0u32; n];
        for &v in &in_ends {
            if v >= n {
                return Err(Error::Invalid("end vertex out of range".into()));
            }
            in_flags[v] += 1;
        }
        for &v in &out_ends {
            if v >= n {
                return Err(Error::Invalid("end vertex out of range".into()));
            }
            out_flags[v] += 1;
        }
        for &(a, b) in &edges {
            if a >= n || b >= n || a == b {
                return Err(Error::Invalid("bad internal edge".into()));
            }
            out_flags[a] += 1;
            in_flags[b] += 1;
        }
        for v in 0..n {
            if in_flags[v] + out_flags[v] != 3 {
                return Err(Error::Invalid(format!("vertex {v} is not 3-valent")));
            }
            if in_flags[v] == 0 {
                return Err(Error::Invalid(format!("vertex {v} is a source")));
            }
            if out_flags[v] == 0 {
                return Err(Error::Invalid(format!("vertex {v} is a sink")));
            }
        }
        // n - 1 edges and connectivity make it a tree.
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(v) = queue.pop_front() {
            for &(a, b) in &edges {
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::Invalid("internal edges do not connect the tree".into()));
        }
        let mut tree = DirectedTree {
            k,
            l,
            edges,
            in_ends,
            out_ends,
            key: Vec::new(),
        };
        tree.key = (0..tree.edges.len())
            .map(|e| {
                let (i_set, j_set) = tree.source_side_ends(e);
                let mut codes: Vec<EndCode> = i_set.iter().map(|&i| i as EndCode).collect();
                codes.extend(j_set.iter().map(|&j| (k + j) as EndCode));
                codes.sort_unstable();
                codes
            })
            .collect();
        tree.key.sort();
        Ok(tree)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn num_vertices(&self) -> usize {
        self.k + self.l - 2
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn in_end_vertex(&self, i: usize) -> usize {
        self.in_ends[i]
    }

    pub fn out_end_vertex(&self, j: usize) -> usize {
        self.out_ends[j]
    }

    pub fn key(&self) -> &TreeKey {
        &self.key
    }

    /// In-end and out-end labels (0-based, sorted) in the component of the
    /// edge's source vertex after cutting that edge.
    pub fn source_side_ends(&self, edge_idx: usize) -> (Vec<usize>, Vec<usize>) {
        let n = self.num_vertices();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([self.edges[edge_idx].0]);
        seen[self.edges[edge_idx].0] = true;
        while let Some(v) = queue.pop_front() {
            for (e, &(a, b)) in self.edges.iter().enumerate() {
                if e == edge_idx {
                    continue;
                }
                for (x, y) in [(a, b), (b, a)] {
                    if x == v && !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        let i_set = (0..self.k).filter(|&i| seen[self.in_ends[i]]).collect();
        let j_set = (0..self.l).filter(|&j| seen[self.out_ends[j]]).collect();
        (i_set, j_set)
    }

    /// Internal edge weights as linear forms: inflow minus outflow of the
    /// source-side component.
    pub fn internal_weights(&self) -> Vec<LinearForm> {
        (0..self.edges.len())
            .map(|e| {
                let (i_set, j_set) = self.source_side_ends(e);
                LinearForm::wall_form(&i_set, &j_set)
            })
            .collect()
    }

    /// Direct predecessor masks for the vertex order induced by the edges.
    pub fn predecessor_masks(&self) -> Vec<u64> {
        let n = self.num_vertices();
        assert!(n <= 20, "order counting limited to 20 vertices");
        let mut preds = vec![0u64; n];
        for &(a, b) in &self.edges {
            preds[b] |= 1 << a;
        }
        preds
    }

    /// Number of total vertex orders compatible with the edge directions.
    pub fn order_count(&self) -> u64 {
        crate::tropical::count_extensions(&self.predecessor_masks())
    }

    /// All compatible orders, each as rank-per-vertex.
    pub fn all_orders(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let preds = self.predecessor_masks();
        let mut out = Vec::new();
        let mut rank = vec![usize::MAX; n];
        fn rec(
            preds: &[u64],
            placed: u64,
            next: usize,
            rank: &mut Vec<usize>,
            out: &mut Vec<Vec<usize>>,
        ) {
            let n = preds.len();
            if next == n {
                out.push(rank.clone());
                return;
            }
            for v in 0..n {
                let bit = 1u64 << v;
                if placed & bit == 0 && preds[v] & !placed == 0 {
                    rank[v] = next;
                    rec(preds, placed | bit, next + 1, rank, out);
                    rank[v] = usize::MAX;
                }
            }
        }
        rec(&preds, 0, 0, &mut rank, &mut out);
        out
    }

    /// Numbering-independent identity of (shape, total order): vertices
    /// relabeled by rank.
    pub fn ordered_key(&self, order: &[usize]) -> (Vec<(usize, usize)>, Vec<usize>, Vec<usize>) {
        let mut edges: Vec<(usize, usize)> = self
            .edges
            .iter()
            .map(|&(a, b)| (order[a], order[b]))
            .collect();
        edges.sort_unstable();
        let ins = self.in_ends.iter().map(|&v| order[v]).collect();
        let outs = self.out_ends.iter().map(|&v| order[v]).collect();
        (edges, ins, outs)
    }
}

/// All shapes with k labeled in-ends and l labeled out-ends, sorted by key.
/// Topologies come from inserting one end at a time onto any existing edge;
/// every labeled topology arises exactly once, and each is then combined
/// with every source/sink-free orientation of its internal edges.
pub fn enumerate_trees(k: usize, l: usize) -> Result<Vec<DirectedTree>> {
    let m = k + l;
    if m < 3 {
        return Err(Error::TooFewEnds(m));
    }
    struct Topology {
        num_vertices: usize,
        edges: Vec<(usize, usize)>,
        end_vertex: Vec<usize>,
    }
    let mut topologies = vec![Topology {
        num_vertices: 1,
        edges: Vec::new(),
        end_vertex: vec![0, 0, 0],
    }];
    for t in 3..m {
        let mut next = Vec::new();
        for topo in &topologies {
            // Split an end off its vertex.
            for x in 0..t {
                let u = topo.end_vertex[x];
                let w = topo.num_vertices;
                let mut end_vertex = topo.end_vertex.clone();
                end_vertex[x] = w;
                end_vertex.push(w);
                let mut edges = topo.edges.clone();
                edges.push((u, w));
                next.push(Topology {
                    num_vertices: w + 1,
                    edges,
                    end_vertex,
                });
            }
            // Subdivide an internal edge.
            for e in 0..topo.edges.len() {
                let (a, b) = topo.edges[e];
                let w = topo.num_vertices;
                let mut edges = topo.edges.clone();
                edges[e] = (a, w);
                edges.push((w, b));
                let mut end_vertex = topo.end_vertex.clone();
                end_vertex.push(w);
                next.push(Topology {
                    num_vertices: w + 1,
                    edges,
                    end_vertex,
                });
            }
        }
        topologies = next;
    }
    let mut shapes = Vec::new();
    for topo in &topologies {
        let num_internal = topo.edges.len();
        for mask in 0u32..(1 << num_internal) {
            let edges: Vec<(usize, usize)> = topo
                .edges
                .iter()
                .enumerate()
                .map(|(e, &(a, b))| if mask >> e & 1 == 0 { (a, b) } else { (b, a) })
                .collect();
            let in_ends: Vec<usize> = (0..k).map(|i| topo.end_vertex[i]).collect();
            let out_ends: Vec<usize> = (0..l).map(|j| topo.end_vertex[k + j]).collect();
            if let Ok(tree) = DirectedTree::from_parts(k, l, edges, in_ends, out_ends) {
                shapes.push(tree);
            }
        }
    }
    shapes.sort_by(|a, b| a.key.cmp(&b.key));
    debug_assert!(shapes.windows(2).all(|w| w[0].key != w[1].key));
    Ok(shapes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counts(k: usize, l: usize) -> (usize, u64) {
        let shapes = enumerate_trees(k, l).unwrap();
        let orders = shapes.iter().map(|t| t.order_count()).sum();
        (shapes.len(), orders)
    }

    #[test]
    fn shape_and_order_counts() {
        assert_eq!(counts(2, 1), (1, 1));
        assert_eq!(counts(1, 2), (1, 1));
        assert_eq!(counts(3, 1), (3, 3));
        // The join-split shape orients one way; both pairings orient both
        // ways. Five directed shapes, each with a forced vertex order.
        assert_eq!(counts(2, 2), (5, 5));
        assert_eq!(counts(4, 1), (15, 18));
        assert_eq!(counts(3, 2), (33, 45));
    }

    #[test]
    fn mirror_symmetry() {
        for (k, l) in [(2, 2), (3, 1), (3, 2), (4, 1)] {
            assert_eq!(counts(k, l).0, counts(l, k).0);
            assert_eq!(counts(k, l).1, counts(l, k).1);
        }
    }

    #[test]
    fn too_few_ends_rejected() {
        assert!(matches!(enumerate_trees(1, 1), Err(Error::TooFewEnds(2))));
        assert!(matches!(enumerate_trees(2, 0), Err(Error::TooFewEnds(2))));
    }

    #[test]
    fn structure_of_shapes() {
        for (k, l) in [(2, 2), (3, 2), (4, 1)] {
            for tree in enumerate_trees(k, l).unwrap() {
                assert_eq!(tree.num_vertices(), k + l - 2);
                assert_eq!(tree.edges().len(), k + l - 3);
                assert_eq!(tree.internal_weights().len(), tree.edges().len());
                assert!(tree.order_count() >= 1);
                // Source and target sides of each edge partition the ends.
                for e in 0..tree.edges().len() {
                    let (i_set, j_set) = tree.source_side_ends(e);
                    assert!(i_set.len() + j_set.len() >= 2);
                    assert!(i_set.len() + j_set.len() <= k + l - 2);
                }
            }
        }
    }

    #[test]
    fn single_join_vertex() {
        let shapes = enumerate_trees(2, 1).unwrap();
        assert!(shapes[0].internal_weights().is_empty());
        assert_eq!(shapes[0].order_count(), 1);
    }

    #[test]
    fn pairing_tree_weight_changes_sign_with_direction() {
        // Among the (2,2) shapes sit both orientations of the pairing
        // (m1, n1 | m2, n2). Weights read off the source side raw, so the
        // reversed orientation shows m2 - n2; on the balance hyperplane the
        // two expressions are negatives of each other.
        let shapes = enumerate_trees(2, 2).unwrap();
        let weights: Vec<String> = shapes
            .iter()
            .filter(|t| !t.internal_weights().is_empty())
            .map(|t| t.internal_weights()[0].to_string())
            .collect();
        assert!(weights.contains(&"m1 - n1".to_string()));
        assert!(weights.contains(&"m2 - n2".to_string()));
        assert!(weights.contains(&"m1 + m2".to_string()));
    }

    #[test]
    fn all_orders_are_compatible_and_complete() {
        for tree in enumerate_trees(3, 2).unwrap() {
            let orders = tree.all_orders();
            assert_eq!(orders.len() as u64, tree.order_count());
            for order in &orders {
                for &(a, b) in tree.edges() {
                    assert!(order[a] < order[b]);
                }
            }
        }
    }

    #[test]
    fn from_parts_validates() {
        // Two in-ends plus an incoming edge make vertex 0 a sink.
        assert!(DirectedTree::from_parts(3, 1, vec![(1, 0)], vec![0, 0, 1], vec![1]).is_err());
        // Two out-ends plus an outgoing edge make vertex 0 a source.
        assert!(DirectedTree::from_parts(1, 3, vec![(0, 1)], vec![1], vec![0, 0, 1]).is_err());
        // Same data with the edge turned around is the valid join shape.
        assert!(DirectedTree::from_parts(3, 1, vec![(0, 1)], vec![0, 0, 1], vec![1]).is_ok());
        // Valence must be exactly three.
        assert!(DirectedTree::from_parts(2, 2, vec![(0, 1)], vec![0, 0], vec![0, 1]).is_err());
    }

    #[test]
    fn keys_identify_shapes() {
        let shapes = enumerate_trees(2, 2).unwrap();
        for a in &shapes {
            for b in &shapes {
                assert_eq!(a == b, a.key() == b.key());
            }
        }
    }
}
