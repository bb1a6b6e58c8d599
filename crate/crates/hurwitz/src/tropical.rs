//! Tropical covers of the line: combinatorial types, their cycle and
//! position-system matrices, and the degree of the branch map.
//!
//! A combinatorial type is a connected directed multigraph with weighted
//! bounded edges and directed ends; vertices map to points of the line and
//! edge directions record slopes. Forgetting the level order of a monodromy
//! graph while keeping edge directions yields exactly these types, so the
//! enumeration reuses the monodromy engine and groups graphs into unlabeled
//! classes. Each class contributes (number of linear extensions of the
//! vertex order) x (1/2 per symmetric vertex or wiener) x (product of
//! bounded edge weights) to the branch-map degree, which equals the Hurwitz
//! number.

use crate::matrix::{determinant, kernel_basis, lattice_index, mat_mul, rank};
use crate::monodromy::{enumerate_monodromy_graphs, MonodromyGraph};
use crate::partition::{HurwitzInput, Partition};
use crate::{ratio, BigInt, Error, Rational, Result};
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};

/// Bounded edge directed from `from` to `to` (images increase that way)
/// with integer weight. Weight 0 is legal only in degenerate diagnostic
/// types, never in top-dimensional ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundedEdge {
    pub from: usize,
    pub to: usize,
    pub weight: u32,
}

/// Unbounded end attached to a vertex; `direction` is the signed outgoing
/// slope (negative: arriving from the far left, positive: leaving right).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct End {
    pub vertex: usize,
    pub direction: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CombinatorialType {
    num_vertices: usize,
    edges: Vec<BoundedEdge>,
    ends: Vec<End>,
}

impl CombinatorialType {
    pub fn new(num_vertices: usize, edges: Vec<BoundedEdge>, ends: Vec<End>) -> Result<Self> {
        let t = CombinatorialType {
            num_vertices,
            edges,
            ends,
        };
        t.validate()?;
        Ok(t)
    }

    fn validate(&self) -> Result<()> {
        let n = self.num_vertices;
        if n == 0 {
            return Err(Error::InvalidType("no vertices".into()));
        }
        for e in &self.edges {
            if e.from >= n || e.to >= n {
                return Err(Error::InvalidType("edge endpoint out of range".into()));
            }
            if e.from == e.to {
                return Err(Error::InvalidType("self-loop".into()));
            }
        }
        for end in &self.ends {
            if end.vertex >= n {
                return Err(Error::InvalidType("end vertex out of range".into()));
            }
            if end.direction == 0 {
                return Err(Error::InvalidType("zero end direction".into()));
            }
        }
        // Balancing: flags at a vertex sum to zero.
        for v in 0..n {
            let mut sum: i64 = 0;
            for e in &self.edges {
                if e.from == v {
                    sum += e.weight as i64;
                }
                if e.to == v {
                    sum -= e.weight as i64;
                }
            }
            for end in &self.ends {
                if end.vertex == v {
                    sum += end.direction;
                }
            }
            if sum != 0 {
                return Err(Error::InvalidType(format!(
                    "balancing fails at vertex {v}"
                )));
            }
        }
        // Connectivity over bounded edges.
        let mut seen = vec![false; n];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for e in &self.edges {
                for u in [e.from, e.to] {
                    let w = e.from + e.to - u;
                    if u == v && !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::InvalidType("disconnected".into()));
        }
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[BoundedEdge] {
        &self.edges
    }

    pub fn ends(&self) -> &[End] {
        &self.ends
    }

    /// Degree multiset: sorted end directions.
    pub fn degree_multiset(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.ends.iter().map(|e| e.direction).collect();
        d.sort_unstable();
        d
    }

    /// First Betti number.
    pub fn genus(&self) -> u32 {
        (self.edges.len() + 1 - self.num_vertices) as u32
    }

    fn valence(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|e| e.from == v || e.to == v)
            .count()
            + self.ends.iter().filter(|e| e.vertex == v).count()
    }

    /// All vertices trivalent and all bounded weights positive.
    pub fn is_top_dimensional(&self) -> bool {
        (0..self.num_vertices).all(|v| self.valence(v) == 3)
            && self.edges.iter().all(|e| e.weight > 0)
    }

    pub fn artifact(&self) -> TypeArtifact {
        TypeArtifact {
            vertices: self.num_vertices,
            genus: self.genus(),
            edges: self
                .edges
                .iter()
                .map(|e| TypeEdgeArtifact {
                    u: e.from,
                    v: e.to,
                    weight: e.weight,
                    direction: e.weight as i64,
                })
                .collect(),
            ends: self
                .ends
                .iter()
                .map(|e| TypeEndArtifact {
                    vertex: e.vertex,
                    direction: e.direction,
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TypeArtifact {
    pub vertices: usize,
    pub genus: u32,
    pub edges: Vec<TypeEdgeArtifact>,
    pub ends: Vec<TypeEndArtifact>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TypeEdgeArtifact {
    pub u: usize,
    pub v: usize,
    pub weight: u32,
    pub direction: i64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TypeEndArtifact {
    pub vertex: usize,
    pub direction: i64,
}

/// The combinatorial type underlying a monodromy graph: event levels become
/// vertices, interior strands become bounded edges, boundary strands become
/// ends. Requires at least one level.
pub fn type_of_graph(graph: &MonodromyGraph) -> CombinatorialType {
    assert!(
        graph.num_levels() >= 1,
        "the zero-level cover has no vertices"
    );
    let mut edges = Vec::new();
    let mut ends = Vec::new();
    for strand in graph.strands() {
        match (strand.birth, strand.death) {
            (0, Some(t)) => ends.push(End {
                vertex: t as usize - 1,
                direction: -(strand.weight as i64),
            }),
            (0, None) => unreachable!("untouched strand in a leveled graph"),
            (b, Some(t)) => edges.push(BoundedEdge {
                from: b as usize - 1,
                to: t as usize - 1,
                weight: strand.weight,
            }),
            (b, None) => ends.push(End {
                vertex: b as usize - 1,
                direction: strand.weight as i64,
            }),
        }
    }
    CombinatorialType::new(graph.num_levels() as usize, edges, ends)
        .expect("graphs yield valid types")
}

/// Spanning tree chosen greedily by edge index: membership flag per edge
/// plus the tree-only adjacency as (edge index, far endpoint).
fn spanning_tree(t: &CombinatorialType) -> (Vec<bool>, Vec<Vec<(usize, usize)>>) {
    let n = t.num_vertices();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    let mut tree = vec![false; t.edges().len()];
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, e) in t.edges().iter().enumerate() {
        let (ra, rb) = (find(&mut parent, e.from), find(&mut parent, e.to));
        if ra != rb {
            parent[ra] = rb;
            tree[i] = true;
            adj[e.from].push((i, e.to));
            adj[e.to].push((i, e.from));
        }
    }
    (tree, adj)
}

/// Loop equations: one row per independent cycle, columns are the root
/// position followed by one length per bounded edge (the root column is
/// always zero). Each row is oriented so its lowest-index nonzero edge
/// coefficient is positive.
pub fn build_cycle_matrix(t: &CombinatorialType) -> Vec<Vec<BigInt>> {
    let n = t.num_vertices();
    let cols = 1 + t.edges().len();
    let (tree, adj) = spanning_tree(t);
    let mut rows = Vec::new();
    for (i, e) in t.edges().iter().enumerate() {
        if tree[i] {
            continue;
        }
        // Tree path from e.to back to e.from.
        let path = tree_path(&adj, e.to, e.from, n);
        let mut row = vec![BigInt::zero(); cols];
        row[1 + i] += BigInt::from(e.weight);
        let mut at = e.to;
        for &(edge_idx, next) in &path {
            let te = &t.edges()[edge_idx];
            let w = BigInt::from(te.weight);
            if te.from == at {
                row[1 + edge_idx] += w;
            } else {
                row[1 + edge_idx] -= w;
            }
            at = next;
        }
        debug_assert_eq!(at, e.from);
        if let Some(first) = row[1..].iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                for x in row.iter_mut() {
                    *x = -std::mem::take(x);
                }
            }
        }
        rows.push(row);
    }
    debug_assert_eq!(rows.len(), t.genus() as usize);
    rows
}

/// Edge path (edge index, endpoint reached) from `from` to `to` along the
/// tree adjacency.
fn tree_path(
    adj: &[Vec<(usize, usize)>],
    from: usize,
    to: usize,
    n: usize,
) -> Vec<(usize, usize)> {
    let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    seen[from] = true;
    queue.push_back(from);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for &(ei, u) in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                prev[u] = Some((v, ei));
                queue.push_back(u);
            }
        }
    }
    let mut path = Vec::new();
    let mut at = to;
    while at != from {
        let (p, ei) = prev[at].expect("tree connects all vertices");
        path.push((ei, at));
        at = p;
    }
    path.reverse();
    path
}

/// Index of the image lattice of the cycle matrix in Z^g; errors when the
/// matrix is rank-deficient (a non-regular type).
pub fn cycle_lattice_index(t: &CombinatorialType) -> Result<BigInt> {
    let m = build_cycle_matrix(t);
    if m.is_empty() {
        return Ok(BigInt::one());
    }
    if rank(&m) < m.len() {
        return Err(Error::InvalidType("non-regular type: cycle rank deficient".into()));
    }
    Ok(lattice_index(&m))
}

/// Square position system: one row per vertex expressing its image from the
/// root position along a spanning-tree chain, followed by the cycle rows.
pub fn position_system_matrix(t: &CombinatorialType) -> Vec<Vec<BigInt>> {
    let n = t.num_vertices();
    let cols = 1 + t.edges().len();
    // Chains run along the same greedy spanning tree as the cycle rows.
    let (_, adj) = spanning_tree(t);
    let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(); n];
    let mut root_row = vec![BigInt::zero(); cols];
    root_row[0] = BigInt::one();
    rows[0] = root_row;
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for &(ei, u) in &adj[v] {
            if seen[u] {
                continue;
            }
            seen[u] = true;
            let e = &t.edges()[ei];
            let mut row = rows[v].clone();
            if e.from == v {
                row[1 + ei] += BigInt::from(e.weight);
            } else {
                row[1 + ei] -= BigInt::from(e.weight);
            }
            rows[u] = row;
            queue.push_back(u);
        }
    }
    rows.extend(build_cycle_matrix(t));
    rows
}

/// |det| of the position system; defined for top-dimensional types, where
/// the system is square. Always equals the product of bounded edge weights.
pub fn position_system_determinant(t: &CombinatorialType) -> BigInt {
    assert!(t.is_top_dimensional(), "position system needs a trivalent type");
    let m = position_system_matrix(t);
    debug_assert_eq!(m.len(), 1 + t.edges().len());
    determinant(&m).abs()
}

/// |det| of the branch map restricted to the cell cut out by the loop
/// equations, computed on a saturated integer basis of that cell.
pub fn restricted_branch_determinant(t: &CombinatorialType) -> BigInt {
    let a = build_cycle_matrix(t);
    let cols = 1 + t.edges().len();
    let cell_basis: Vec<Vec<BigInt>> = if a.is_empty() {
        (0..cols)
            .map(|i| {
                (0..cols)
                    .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                    .collect()
            })
            .collect()
    } else {
        kernel_basis(&a)
    };
    // Vertex-position rows of the position system.
    let b: Vec<Vec<BigInt>> = position_system_matrix(t)
        .into_iter()
        .take(t.num_vertices())
        .collect();
    let basis_cols: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| cell_basis.iter().map(|row| row[i].clone()).collect())
        .collect();
    determinant(&mat_mul(&b, &basis_cols)).abs()
}

/// Count of unordered pairs of parallel same-direction equal-weight edges.
pub fn wiener_pair_count(t: &CombinatorialType) -> u32 {
    let mut groups: HashMap<(usize, usize, u32), u32> = HashMap::new();
    for e in t.edges() {
        *groups.entry((e.from, e.to, e.weight)).or_insert(0) += 1;
    }
    groups.values().map(|&m| m * (m - 1) / 2).sum()
}

/// Vertices whose removal leaves two identical pieces, pieces compared as
/// directed weighted graphs with the severed attachment flags marked.
pub fn symmetric_vertex_count(t: &CombinatorialType) -> u32 {
    let n = t.num_vertices();
    let mut count = 0;
    for v in 0..n {
        let mut pieces: Vec<Vec<i64>> = Vec::new();
        // Bare pieces: the ends attached at v itself.
        for end in t.ends().iter().filter(|e| e.vertex == v) {
            pieces.push(vec![i64::MIN, end.direction]);
        }
        // Vertex components of the remaining graph.
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        for e in t.edges() {
            if e.from == v || e.to == v {
                continue;
            }
            let (ra, rb) = (find(&mut parent, e.from), find(&mut parent, e.to));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        let mut comp_vertices: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for u in 0..n {
            if u == v {
                continue;
            }
            let r = find(&mut parent, u);
            comp_vertices.entry(r).or_default().push(u);
        }
        for verts in comp_vertices.values() {
            let local: HashMap<usize, usize> =
                verts.iter().enumerate().map(|(i, &u)| (u, i)).collect();
            let mut edges = Vec::new();
            let mut marks: Vec<Vec<(i64, bool)>> = vec![Vec::new(); verts.len()];
            for e in t.edges() {
                match (local.get(&e.from), local.get(&e.to)) {
                    (Some(&a), Some(&b)) => edges.push((a, b, e.weight)),
                    (Some(&a), None) if e.to == v => marks[a].push((e.weight as i64, true)),
                    (None, Some(&b)) if e.from == v => marks[b].push((-(e.weight as i64), true)),
                    _ => {}
                }
            }
            for end in t.ends() {
                if let Some(&a) = local.get(&end.vertex) {
                    marks[a].push((end.direction, false));
                }
            }
            for m in marks.iter_mut() {
                m.sort_unstable();
            }
            pieces.push(canonical_encoding(&CanonGraph {
                n: verts.len(),
                edges,
                marks,
            }));
        }
        pieces.sort();
        if pieces.windows(2).any(|w| w[0] == w[1]) {
            count += 1;
        }
    }
    count
}

/// (1/2)^{symmetric vertices} * lattice index * (1/2)^{wiener pairs}.
pub fn type_weight(t: &CombinatorialType) -> Result<Rational> {
    let halves = symmetric_vertex_count(t) + wiener_pair_count(t);
    let index = cycle_lattice_index(t)?;
    Ok(Rational::from(index) * ratio(1, 1u64 << halves))
}

/// Direct predecessor masks of the vertex order (u precedes v when a
/// bounded edge runs u to v); errors on a directed cycle.
fn predecessor_masks(t: &CombinatorialType) -> Result<Vec<u64>> {
    let n = t.num_vertices();
    assert!(n <= 20, "bitmask order count limited to 20 vertices");
    let mut preds = vec![0u64; n];
    for e in t.edges() {
        if e.weight > 0 {
            preds[e.to] |= 1 << e.from;
        }
    }
    // Topological check.
    let mut indeg: Vec<u32> = (0..n).map(|v| preds[v].count_ones()).collect();
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut removed = 0;
    let mut gone = 0u64;
    while let Some(v) = stack.pop() {
        removed += 1;
        gone |= 1 << v;
        for u in 0..n {
            if preds[u] & (1 << v) != 0 {
                indeg[u] -= 1;
                if indeg[u] == 0 && gone & (1 << u) == 0 {
                    stack.push(u);
                }
            }
        }
    }
    if removed != n {
        return Err(Error::InvalidType("directed cycle in vertex order".into()));
    }
    Ok(preds)
}

/// Linear extensions of the partial order given by direct predecessor
/// masks, by subset dynamic programming.
pub fn count_extensions(preds: &[u64]) -> u64 {
    let n = preds.len();
    assert!(n <= 20, "bitmask order count limited to 20 vertices");
    let mut dp = vec![0u64; 1 << n];
    dp[0] = 1;
    for mask in 0..(1u64 << n) {
        if dp[mask as usize] == 0 {
            continue;
        }
        for (v, &pred) in preds.iter().enumerate() {
            let bit = 1u64 << v;
            if mask & bit == 0 && pred & !mask == 0 {
                dp[(mask | bit) as usize] += dp[mask as usize];
            }
        }
    }
    dp[(1u64 << n) as usize - 1]
}

/// Number of linear extensions of the vertex partial order.
pub fn linear_extension_count(t: &CombinatorialType) -> Result<BigInt> {
    let preds = predecessor_masks(t)?;
    Ok(BigInt::from(count_extensions(&preds)))
}

/// Cell dimension of the type and whether it matches the expected dimension
/// of a nicely-behaved type with the same discrete data.
pub fn regularity_check(t: &CombinatorialType) -> (i64, bool) {
    let a = build_cycle_matrix(t);
    let actual = 1 + t.edges().len() as i64 - rank(&a) as i64;
    (actual, actual == expected_dimension(t))
}

pub fn expected_dimension(t: &CombinatorialType) -> i64 {
    let excess: i64 = (0..t.num_vertices())
        .map(|v| t.valence(v) as i64 - 3)
        .sum();
    t.ends().len() as i64 - 2 + 2 * t.genus() as i64 - excess
}

/// One equivalence class of combinatorial types.
#[derive(Clone, Debug)]
pub struct TypeClass {
    pub representative: CombinatorialType,
    /// How many leveled monodromy graph classes collapsed into this class.
    pub leveled_classes: u64,
}

/// Automorphisms of the decorated graph: weight- and direction-preserving
/// vertex permutations, times the flag swaps fixing every vertex (one
/// factor 2 per wiener pair and per vertex carrying two equal ends).
pub fn automorphism_count(t: &CombinatorialType) -> u64 {
    let g = canon_graph_of_type(t);
    let vertex_perms = vertex_automorphism_count(&g);
    let mut fixed_swaps = wiener_pair_count(t);
    for v in 0..t.num_vertices() {
        let mut dirs: Vec<i64> = t
            .ends()
            .iter()
            .filter(|e| e.vertex == v)
            .map(|e| e.direction)
            .collect();
        dirs.sort_unstable();
        fixed_swaps += dirs.windows(2).filter(|w| w[0] == w[1]).count() as u32;
    }
    vertex_perms * (1u64 << fixed_swaps)
}

/// n([α]) · ∏ bounded weights / |Aut(α)|.
///
/// Orderings of the vertices are counted without quotienting, so the
/// vertex-moving part of the automorphism group acts freely on them and
/// dividing by the full group size also merges orderings that present
/// the same curve.
pub fn class_contribution(class: &TypeClass) -> Result<Rational> {
    let t = &class.representative;
    let n = linear_extension_count(t)?;
    let edge_product: BigInt = t.edges().iter().map(|e| BigInt::from(e.weight)).product();
    Ok(Rational::new(
        n * edge_product,
        BigInt::from(automorphism_count(t)),
    ))
}

/// Label-invariant grouping key of a combinatorial type.
pub fn class_key_of_type(t: &CombinatorialType) -> Vec<i64> {
    canonical_encoding(&canon_graph_of_type(t))
}

/// Groups monodromy graphs by unlabeled type, deterministically ordered.
pub fn group_into_classes(graphs: &[MonodromyGraph]) -> Vec<TypeClass> {
    let mut by_key: BTreeMap<Vec<i64>, TypeClass> = BTreeMap::new();
    for g in graphs {
        let t = type_of_graph(g);
        let key = canonical_encoding(&canon_graph_of_type(&t));
        by_key
            .entry(key)
            .and_modify(|c| c.leveled_classes += 1)
            .or_insert(TypeClass {
                representative: t,
                leveled_classes: 1,
            });
    }
    by_key.into_values().collect()
}

/// Degree of the tropical branch map for degree multiset `delta` and the
/// given genus; equals the double Hurwitz number with η the negative part
/// and ν the positive part of delta.
pub fn tropical_degree(genus: u32, delta: &[i64]) -> Result<Rational> {
    if delta.len() < 2 {
        return Err(Error::TooFewEnds(delta.len()));
    }
    if delta.contains(&0) {
        return Err(Error::InvalidType("zero entry in degree multiset".into()));
    }
    if delta.iter().sum::<i64>() != 0 {
        return Err(Error::InvalidType("degree multiset must sum to zero".into()));
    }
    let eta = Partition::new(
        delta
            .iter()
            .filter(|&&z| z < 0)
            .map(|&z| (-z) as u32)
            .collect(),
    )?;
    let nu = Partition::new(
        delta
            .iter()
            .filter(|&&z| z > 0)
            .map(|&z| z as u32)
            .collect(),
    )?;
    let input = HurwitzInput::new(genus, eta, nu)?;
    if input.s == 0 {
        // A single infinite edge of weight d; the map has degree 1/d.
        return Ok(ratio(1, input.degree()));
    }
    let graphs = enumerate_monodromy_graphs(&input);
    let mut total = Rational::zero();
    for class in group_into_classes(&graphs) {
        debug_assert!(class.representative.is_top_dimensional());
        debug_assert!(regularity_check(&class.representative).1);
        total += class_contribution(&class)?;
    }
    Ok(total)
}

/// A concrete curve: a type plus root image and positive bounded lengths
/// satisfying every loop equation.
#[derive(Clone, Debug)]
pub struct TropicalCurveInstance {
    ctype: CombinatorialType,
    root: Rational,
    lengths: Vec<Rational>,
}

impl TropicalCurveInstance {
    pub fn new(
        ctype: CombinatorialType,
        root: Rational,
        lengths: Vec<Rational>,
    ) -> Result<Self> {
        if lengths.len() != ctype.edges().len() {
            return Err(Error::Invalid("one length per bounded edge".into()));
        }
        if lengths.iter().any(|l| !l.is_positive()) {
            return Err(Error::Invalid("lengths must be positive".into()));
        }
        for row in build_cycle_matrix(&ctype) {
            let sum: Rational = row[1..]
                .iter()
                .zip(&lengths)
                .map(|(c, l)| Rational::from(c.clone()) * l)
                .sum();
            if !sum.is_zero() {
                return Err(Error::Invalid("loop equations violated".into()));
            }
        }
        Ok(TropicalCurveInstance {
            ctype,
            root,
            lengths,
        })
    }

    pub fn ctype(&self) -> &CombinatorialType {
        &self.ctype
    }
}

/// Vertex images (h(V_1), .., h(V_n)): the root image plus weighted length
/// sums along chains; chain independence is the loop equations.
pub fn branch_image(curve: &TropicalCurveInstance) -> Vec<Rational> {
    let t = &curve.ctype;
    let n = t.num_vertices();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (i, e) in t.edges().iter().enumerate() {
        adj[e.from].push((i, e.to));
        adj[e.to].push((i, e.from));
    }
    let mut h: Vec<Option<Rational>> = vec![None; n];
    h[0] = Some(curve.root.clone());
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for &(ei, u) in &adj[v] {
            if h[u].is_some() {
                continue;
            }
            let e = &t.edges()[ei];
            let step = Rational::from(BigInt::from(e.weight)) * &curve.lengths[ei];
            let base = h[v].clone().expect("visited");
            h[u] = Some(if e.from == v { base + step } else { base - step });
            queue.push_back(u);
        }
    }
    h.into_iter().map(|x| x.expect("connected")).collect()
}

/// Number of vertex labelings of the class representative making all edges
/// increase toward the given branch point coordinates; by genericity this
/// is the linear extension count, independent of p.
pub fn fiber_over_point(class: &TypeClass, p: &[Rational]) -> Result<BigInt> {
    let t = &class.representative;
    assert!(t.is_top_dimensional(), "fibers need a trivalent type");
    let n = t.num_vertices();
    if p.len() != n {
        return Err(Error::Invalid(format!(
            "point has {} coordinates, type has {} vertices",
            p.len(),
            n
        )));
    }
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] == p[j] {
                return Err(Error::Invalid(
                    "branch point not in general position: repeated coordinate".into(),
                ));
            }
        }
    }
    let preds = predecessor_masks(t)?;
    // Assign vertices to coordinates in increasing order; each next slot may
    // take any vertex whose predecessors are all placed.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| p[a].cmp(&p[b]));
    fn rec(preds: &[u64], placed: u64, n: usize, count: &mut BigInt) {
        if placed == (1u64 << n) - 1 {
            *count += 1;
            return;
        }
        for v in 0..n {
            let bit = 1u64 << v;
            if placed & bit == 0 && preds[v] & !placed == 0 {
                rec(preds, placed | bit, n, count);
            }
        }
    }
    let mut count = BigInt::zero();
    rec(&preds, 0, n, &mut count);
    Ok(count)
}

// Canonical forms of directed weighted multigraphs with decorated vertices,
// by iterated refinement plus individualization on the first ambiguous
// color class. Small graphs only.

struct CanonGraph {
    n: usize,
    edges: Vec<(usize, usize, u32)>,
    /// Per-vertex sorted decoration tokens (direction, is_stub).
    marks: Vec<Vec<(i64, bool)>>,
}

fn canon_graph_of_type(t: &CombinatorialType) -> CanonGraph {
    let mut marks: Vec<Vec<(i64, bool)>> = vec![Vec::new(); t.num_vertices()];
    for end in t.ends() {
        marks[end.vertex].push((end.direction, false));
    }
    for m in marks.iter_mut() {
        m.sort_unstable();
    }
    CanonGraph {
        n: t.num_vertices(),
        edges: t.edges().iter().map(|e| (e.from, e.to, e.weight)).collect(),
        marks,
    }
}

/// Per-vertex refinement signature: color, decoration tokens, and the sorted
/// incident (direction, weight, neighbor color) triples.
type VertexSig<'a> = (usize, &'a Vec<(i64, bool)>, Vec<(i8, u32, usize)>);

fn refine(g: &CanonGraph, mut colors: Vec<usize>) -> Vec<usize> {
    for _ in 0..=g.n {
        let mut sigs: Vec<VertexSig> = Vec::with_capacity(g.n);
        for v in 0..g.n {
            let mut nbrs: Vec<(i8, u32, usize)> = Vec::new();
            for &(a, b, w) in &g.edges {
                if a == v {
                    nbrs.push((1, w, colors[b]));
                }
                if b == v {
                    nbrs.push((-1, w, colors[a]));
                }
            }
            nbrs.sort_unstable();
            sigs.push((colors[v], &g.marks[v], nbrs));
        }
        let mut sorted: Vec<&VertexSig> = sigs.iter().collect();
        sorted.sort();
        sorted.dedup();
        let next: Vec<usize> = (0..g.n)
            .map(|v| sorted.binary_search(&&sigs[v]).unwrap())
            .collect();
        if next == colors {
            break;
        }
        colors = next;
    }
    colors
}

fn encode(g: &CanonGraph, colors: &[usize]) -> Vec<i64> {
    let mut out = vec![g.n as i64];
    let mut triples: Vec<(usize, usize, u32)> = g
        .edges
        .iter()
        .map(|&(a, b, w)| (colors[a], colors[b], w))
        .collect();
    triples.sort_unstable();
    out.push(triples.len() as i64);
    for (a, b, w) in triples {
        out.extend([a as i64, b as i64, w as i64]);
    }
    let mut rank_of = vec![usize::MAX; g.n];
    for v in 0..g.n {
        rank_of[colors[v]] = v;
    }
    for &v in &rank_of {
        out.push(g.marks[v].len() as i64);
        for &(d, stub) in &g.marks[v] {
            out.extend([d, stub as i64]);
        }
    }
    out
}

fn canon_rec(g: &CanonGraph, colors: Vec<usize>) -> Vec<i64> {
    let colors = refine(g, colors);
    let classes = colors.iter().max().map_or(0, |&m| m + 1);
    if classes == g.n {
        return encode(g, &colors);
    }
    // First color value held by more than one vertex.
    let mut counts = vec![0usize; classes];
    for &c in &colors {
        counts[c] += 1;
    }
    let target = counts.iter().position(|&c| c > 1).expect("non-discrete");
    let mut best: Option<Vec<i64>> = None;
    for v in 0..g.n {
        if colors[v] != target {
            continue;
        }
        let mut split = colors.clone();
        split[v] = classes;
        let enc = canon_rec(g, split);
        if best.as_ref().is_none_or(|b| enc < *b) {
            best = Some(enc);
        }
    }
    best.expect("nonempty class")
}

fn canonical_encoding(g: &CanonGraph) -> Vec<i64> {
    if g.n == 0 {
        return vec![0];
    }
    canon_rec(g, vec![0; g.n])
}

/// Permutations of the vertices preserving marks and the directed
/// weighted edge multisets, counted by backtracking inside the color
/// classes of the stable refinement.
fn vertex_automorphism_count(g: &CanonGraph) -> u64 {
    if g.n == 0 {
        return 1;
    }
    let colors = refine(g, vec![0; g.n]);
    let mut pair_edges: BTreeMap<(usize, usize), Vec<u32>> = BTreeMap::new();
    for &(a, b, w) in &g.edges {
        pair_edges.entry((a, b)).or_default().push(w);
    }
    for v in pair_edges.values_mut() {
        v.sort_unstable();
    }
    fn between(pe: &BTreeMap<(usize, usize), Vec<u32>>, a: usize, b: usize) -> &[u32] {
        pe.get(&(a, b)).map_or(&[][..], |v| &v[..])
    }
    fn assign(
        v: usize,
        g: &CanonGraph,
        colors: &[usize],
        pe: &BTreeMap<(usize, usize), Vec<u32>>,
        image: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> u64 {
        if v == g.n {
            return 1;
        }
        let mut total = 0;
        for u in 0..g.n {
            if used[u] || colors[u] != colors[v] || g.marks[u] != g.marks[v] {
                continue;
            }
            let consistent = (0..v).all(|w| {
                between(pe, v, w) == between(pe, u, image[w])
                    && between(pe, w, v) == between(pe, image[w], u)
            });
            if !consistent {
                continue;
            }
            image.push(u);
            used[u] = true;
            total += assign(v + 1, g, colors, pe, image, used);
            used[u] = false;
            image.pop();
        }
        total
    }
    let mut image = Vec::with_capacity(g.n);
    let mut used = vec![false; g.n];
    assign(0, g, &colors, &pair_edges, &mut image, &mut used)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{hurwitz_bruteforce, OracleConfig};
    use crate::partition::partitions_of;
    use crate::rat;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn input(g: u32, eta: Vec<u32>, nu: Vec<u32>) -> HurwitzInput {
        HurwitzInput::new(
            g,
            Partition::new(eta).unwrap(),
            Partition::new(nu).unwrap(),
        )
        .unwrap()
    }

    fn edge(from: usize, to: usize, weight: u32) -> BoundedEdge {
        BoundedEdge { from, to, weight }
    }

    fn end(vertex: usize, direction: i64) -> End {
        End { vertex, direction }
    }

    /// Genus-1 type with a weight-2 wiener between the middle vertices; the
    /// wiener pair occupies the first two edge columns.
    fn wiener_chain_type() -> CombinatorialType {
        CombinatorialType::new(
            5,
            vec![
                edge(2, 3, 2),
                edge(2, 3, 2),
                edge(0, 1, 2),
                edge(1, 2, 4),
                edge(3, 4, 4),
            ],
            vec![end(0, -1), end(0, -1), end(1, -2), end(4, 1), end(4, 3)],
        )
        .unwrap()
    }

    /// Genus-1 triangle with ends -3, +1, +2; position system determinant 2.
    fn triangle_type() -> CombinatorialType {
        CombinatorialType::new(
            3,
            vec![edge(0, 1, 2), edge(1, 2, 1), edge(0, 2, 1)],
            vec![end(0, -3), end(1, 1), end(2, 2)],
        )
        .unwrap()
    }

    /// Genus-0 double-cut tree whose vertex order has 3 linear extensions.
    fn three_extension_type() -> CombinatorialType {
        CombinatorialType::new(
            4,
            vec![edge(0, 1, 2), edge(0, 2, 1), edge(2, 3, 2)],
            vec![
                end(0, -3),
                end(1, 1),
                end(1, 1),
                end(2, -1),
                end(3, 1),
                end(3, 1),
            ],
        )
        .unwrap()
    }

    /// Two 4-valent vertices joined by a pair of weight-0 edges: dimension
    /// jumps above the expected value.
    fn contracted_loop_type() -> CombinatorialType {
        CombinatorialType::new(
            2,
            vec![edge(0, 1, 0), edge(0, 1, 0)],
            vec![end(0, -2), end(0, 2), end(1, -3), end(1, 3)],
        )
        .unwrap()
    }

    #[test]
    fn cycle_matrix_of_wiener_chain() {
        let t = wiener_chain_type();
        let m = build_cycle_matrix(&t);
        assert_eq!(m.len(), 1);
        let expect: Vec<BigInt> = [0, 2, -2, 0, 0, 0].iter().map(|&x| BigInt::from(x)).collect();
        assert_eq!(m[0], expect);
        assert_eq!(cycle_lattice_index(&t).unwrap(), BigInt::from(2));
    }

    #[test]
    fn cycle_matrix_genus_zero_is_empty() {
        let t = three_extension_type();
        assert!(build_cycle_matrix(&t).is_empty());
        assert_eq!(cycle_lattice_index(&t).unwrap(), BigInt::one());
    }

    #[test]
    fn wiener_loop_row_shape() {
        for n in 1..=4u32 {
            let t = CombinatorialType::new(
                2,
                vec![edge(0, 1, n), edge(0, 1, n)],
                vec![end(0, -(2 * n as i64)), end(1, 2 * n as i64)],
            )
            .unwrap();
            let m = build_cycle_matrix(&t);
            let expect: Vec<BigInt> = [0, n as i64, -(n as i64)]
                .iter()
                .map(|&x| BigInt::from(x))
                .collect();
            assert_eq!(m, vec![expect]);
            assert_eq!(cycle_lattice_index(&t).unwrap(), BigInt::from(n));
        }
    }

    #[test]
    fn triangle_position_system() {
        let t = triangle_type();
        let m = position_system_matrix(&t);
        let expect: Vec<Vec<BigInt>> = [
            [1, 0, 0, 0],
            [1, 2, 0, 0],
            [1, 2, 1, 0],
            [0, 2, 1, -1],
        ]
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
        assert_eq!(m, expect);
        assert_eq!(position_system_determinant(&t), BigInt::from(2));
    }

    #[test]
    fn position_determinant_is_edge_weight_product() {
        for (g, eta, nu) in [
            (1u32, vec![4], vec![2, 2]),
            (0, vec![2, 1], vec![1, 1, 1]),
            (2, vec![2], vec![2]),
            (1, vec![3, 1], vec![2, 2]),
        ] {
            let inp = input(g, eta, nu);
            for graph in enumerate_monodromy_graphs(&inp) {
                let t = type_of_graph(&graph);
                let product: BigInt =
                    t.edges().iter().map(|e| BigInt::from(e.weight)).product();
                assert_eq!(position_system_determinant(&t), product);
            }
        }
    }

    #[test]
    fn index_times_restricted_branch_equals_position_det() {
        for (g, eta, nu) in [
            (1u32, vec![4], vec![2, 2]),
            (2, vec![2], vec![2]),
            (1, vec![2, 2], vec![3, 1]),
            (0, vec![3, 1], vec![2, 2]),
        ] {
            let inp = input(g, eta, nu);
            for graph in enumerate_monodromy_graphs(&inp) {
                let t = type_of_graph(&graph);
                let lhs = cycle_lattice_index(&t).unwrap() * restricted_branch_determinant(&t);
                assert_eq!(lhs, position_system_determinant(&t));
            }
        }
    }

    #[test]
    fn wiener_chain_weight_factors() {
        let t = wiener_chain_type();
        assert_eq!(symmetric_vertex_count(&t), 1);
        assert_eq!(wiener_pair_count(&t), 1);
        assert_eq!(type_weight(&t).unwrap(), ratio(1, 2));
    }

    #[test]
    fn plain_wiener_weight() {
        let t = CombinatorialType::new(
            2,
            vec![edge(0, 1, 2), edge(0, 1, 2)],
            vec![end(0, -4), end(1, 4)],
        )
        .unwrap();
        assert_eq!(symmetric_vertex_count(&t), 0);
        assert_eq!(wiener_pair_count(&t), 1);
        assert_eq!(cycle_lattice_index(&t).unwrap(), BigInt::from(2));
        assert_eq!(type_weight(&t).unwrap(), rat(1));
    }

    #[test]
    fn symmetric_split_counts() {
        // A 4-cycle cut into two 2-strands, each ending in two unit ends:
        // all three vertices admit the half-swap.
        let t = CombinatorialType::new(
            3,
            vec![edge(0, 1, 2), edge(0, 2, 2)],
            vec![
                end(0, -4),
                end(1, 1),
                end(1, 1),
                end(2, 1),
                end(2, 1),
            ],
        )
        .unwrap();
        assert_eq!(symmetric_vertex_count(&t), 3);
        assert_eq!(linear_extension_count(&t).unwrap(), BigInt::from(2));
    }

    #[test]
    fn extension_counts() {
        assert_eq!(
            linear_extension_count(&three_extension_type()).unwrap(),
            BigInt::from(3)
        );
        assert_eq!(
            linear_extension_count(&triangle_type()).unwrap(),
            BigInt::one()
        );
        let two_incomparable = CombinatorialType::new(
            3,
            vec![edge(0, 1, 1), edge(0, 2, 1)],
            vec![end(0, -2), end(1, 1), end(2, 1)],
        )
        .unwrap();
        assert_eq!(
            linear_extension_count(&two_incomparable).unwrap(),
            BigInt::from(2)
        );
    }

    #[test]
    fn regularity_of_contracted_loop() {
        let t = contracted_loop_type();
        assert_eq!(t.genus(), 1);
        let (dim, regular) = regularity_check(&t);
        assert_eq!(dim, 3);
        assert_eq!(expected_dimension(&t), 2);
        assert!(!regular);
        assert!(matches!(cycle_lattice_index(&t), Err(Error::InvalidType(_))));
    }

    #[test]
    fn regular_types_from_graphs() {
        let inp = input(1, vec![4], vec![2, 2]);
        for graph in enumerate_monodromy_graphs(&inp) {
            let t = type_of_graph(&graph);
            let (dim, regular) = regularity_check(&t);
            assert!(regular);
            assert_eq!(dim, expected_dimension(&t));
            assert!(t.is_top_dimensional());
        }
    }

    #[test]
    fn degree_values() {
        assert_eq!(tropical_degree(1, &[-4, 2, 2]).unwrap(), rat(14));
        assert_eq!(tropical_degree(0, &[-1, -1, 1, 1]).unwrap(), ratio(1, 2));
        assert_eq!(tropical_degree(0, &[-2, 1, 1]).unwrap(), ratio(1, 2));
        assert_eq!(tropical_degree(0, &[-3, 3]).unwrap(), ratio(1, 3));
        assert_eq!(
            tropical_degree(0, &[-1, -2, -3, 6]).unwrap(),
            rat(12)
        );
    }

    #[test]
    fn degree_rejects_bad_multisets() {
        assert!(matches!(tropical_degree(0, &[-2]), Err(Error::TooFewEnds(1))));
        assert!(tropical_degree(0, &[-2, 1]).is_err());
        assert!(tropical_degree(0, &[-2, 0, 2]).is_err());
    }

    #[test]
    fn degree_matches_bruteforce_small() {
        let cfg = OracleConfig::default();
        for d in 1..=4u32 {
            for g in 0..=1u32 {
                for eta in partitions_of(d) {
                    for nu in partitions_of(d) {
                        let inp = HurwitzInput::new(g, eta.clone(), nu.clone()).unwrap();
                        let mut delta: Vec<i64> =
                            eta.parts().iter().map(|&x| -(x as i64)).collect();
                        delta.extend(nu.parts().iter().map(|&x| x as i64));
                        let trop = tropical_degree(g, &delta).unwrap();
                        let bf = hurwitz_bruteforce(&inp, &cfg).unwrap();
                        assert_eq!(trop, bf, "{:?}", inp);
                    }
                }
            }
        }
    }

    #[test]
    fn branch_image_of_chain() {
        let t = CombinatorialType::new(
            2,
            vec![edge(0, 1, 2)],
            vec![end(0, -2), end(1, 2)],
        )
        .unwrap();
        let curve =
            TropicalCurveInstance::new(t, Rational::zero(), vec![Rational::one()]).unwrap();
        assert_eq!(branch_image(&curve), vec![rat(0), rat(2)]);
    }

    #[test]
    fn branch_image_chain_independent() {
        // Both chains around the wiener loop give the same images.
        let t = wiener_chain_type();
        let lengths: Vec<Rational> =
            [3, 3, 1, 2, 5].iter().map(|&x| rat(x as u64)).collect();
        let curve = TropicalCurveInstance::new(t.clone(), rat(7), lengths.clone()).unwrap();
        let h = branch_image(&curve);
        for (i, e) in t.edges().iter().enumerate() {
            let step = Rational::from(BigInt::from(e.weight)) * &lengths[i];
            assert_eq!(&h[e.from] + step, h[e.to].clone(), "edge {i}");
        }
    }

    #[test]
    fn instance_rejects_broken_loops() {
        let t = wiener_chain_type();
        let lengths: Vec<Rational> =
            [3, 4, 1, 2, 5].iter().map(|&x| rat(x as u64)).collect();
        assert!(TropicalCurveInstance::new(t, rat(0), lengths).is_err());
    }

    #[test]
    fn fiber_counts_match_extensions() {
        let inp = input(1, vec![4], vec![2, 2]);
        let graphs = enumerate_monodromy_graphs(&inp);
        let classes = group_into_classes(&graphs);
        let mut rng = StdRng::seed_from_u64(23);
        for class in &classes {
            let n_ext = linear_extension_count(&class.representative).unwrap();
            let nv = class.representative.num_vertices();
            for _ in 0..3 {
                let mut coords: Vec<Rational> = Vec::new();
                while coords.len() < nv {
                    let c = Rational::new(
                        BigInt::from(rng.gen_range(-1000i64..=1000)),
                        BigInt::from(rng.gen_range(1i64..=7)),
                    );
                    if !coords.contains(&c) {
                        coords.push(c);
                    }
                }
                assert_eq!(fiber_over_point(class, &coords).unwrap(), n_ext);
            }
        }
    }

    #[test]
    fn fiber_rejects_degenerate_points() {
        let inp = input(1, vec![4], vec![2, 2]);
        let classes = group_into_classes(&enumerate_monodromy_graphs(&inp));
        let class = &classes[0];
        let nv = class.representative.num_vertices();
        let coords = vec![rat(1); nv];
        assert!(fiber_over_point(class, &coords).is_err());
        let short = vec![rat(1)];
        assert!(fiber_over_point(class, &short).is_err());
    }

    #[test]
    fn grouping_is_label_invariant() {
        // Classes of the worked example: 4 leveled graphs collapse to 4
        // classes here (no two differ only by level order).
        let inp = input(1, vec![4], vec![2, 2]);
        let graphs = enumerate_monodromy_graphs(&inp);
        let classes = group_into_classes(&graphs);
        assert_eq!(classes.len(), 4);
        let total: u64 = classes.iter().map(|c| c.leveled_classes).sum();
        assert_eq!(total, graphs.len() as u64);
        // Full cycle into units: the symmetric double split has a single
        // leveled class but two linear extensions, so extension counts and
        // leveled class counts genuinely differ.
        let inp = input(0, vec![4], vec![1, 1, 1, 1]);
        let graphs = enumerate_monodromy_graphs(&inp);
        assert_eq!(graphs.len(), 2);
        let classes = group_into_classes(&graphs);
        assert_eq!(classes.len(), 2);
        let mut stats: Vec<(u64, BigInt)> = classes
            .iter()
            .map(|c| {
                (
                    c.leveled_classes,
                    linear_extension_count(&c.representative).unwrap(),
                )
            })
            .collect();
        stats.sort();
        assert_eq!(
            stats,
            vec![(1, BigInt::one()), (1, BigInt::from(2))]
        );
        let contributions: Rational = classes
            .iter()
            .map(|c| class_contribution(c).unwrap())
            .sum();
        assert_eq!(contributions, rat(4));
    }

    #[test]
    fn artifact_round_trip() {
        let t = triangle_type();
        let a = t.artifact();
        assert_eq!(a.vertices, 3);
        assert_eq!(a.genus, 1);
        assert_eq!(a.edges.len(), 3);
        assert_eq!(a.ends.len(), 3);
        let json = serde_json::to_string(&a).unwrap();
        let back: TypeArtifact = serde_json::from_str(&json).unwrap();
        assert_eq!(back.edges.len(), 3);
    }

    #[test]
    fn validation_rejects_malformed_types() {
        assert!(CombinatorialType::new(0, vec![], vec![]).is_err());
        // Unbalanced vertex.
        assert!(CombinatorialType::new(
            1,
            vec![],
            vec![end(0, -2), end(0, 1)]
        )
        .is_err());
        // Disconnected.
        assert!(CombinatorialType::new(
            2,
            vec![],
            vec![end(0, -1), end(0, 1), end(1, -1), end(1, 1)]
        )
        .is_err());
        // Self-loop.
        assert!(CombinatorialType::new(
            1,
            vec![edge(0, 0, 1)],
            vec![end(0, -1), end(0, 1)]
        )
        .is_err());
    }
}
