//! Monodromy graphs: leveled weighted graphs recording how the cycle type of
//! the running product evolves across the s simple branch points.
//!
//! Strands are edges, events (one per level) are trivalent vertices: a join
//! merges two strands into one, a cut splits one strand in two. The Hurwitz
//! number is a weighted sum over isomorphism classes of connected graphs
//! whose final strand weights realize ν.
//!
//! Isomorphism deduplication never calls a graph-isomorphism routine.
//! Instead every strand carries an interned certificate describing its full
//! ancestry (birth kind, level, constituent certificates); the sorted
//! multiset of live certificates is a complete invariant of the leveled
//! graph built so far, because each level holds exactly one event and every
//! event is recoverable by unfolding the certificates. Breadth-first search
//! over levels deduplicates on that key.

use crate::partition::{HurwitzInput, Partition};
use crate::{factorial, BigInt, Rational, Result};
use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::rc::Rc;

/// One strand: an edge of the graph. Levels run 0 (over η) to s+1 (over ν);
/// `death` is the level of the event consuming the strand, `None` if it
/// survives to the end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrandInfo {
    pub weight: u32,
    pub birth: u32,
    pub death: Option<u32>,
}

/// The event at one level, referencing strand indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphEvent {
    Join {
        left: usize,
        right: usize,
        result: usize,
    },
    /// `upper` carries the larger (or equal) piece.
    Cut {
        parent: usize,
        upper: usize,
        lower: usize,
    },
}

#[derive(Clone, Debug)]
pub struct MonodromyGraph {
    eta: Partition,
    nu: Partition,
    s: u32,
    strands: Vec<StrandInfo>,
    /// `events[t]` happens at level t+1.
    events: Vec<GraphEvent>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphWeighting {
    /// Class sizes times per-vertex incoming-edge factors and the
    /// half-factors for balanced forks and wieners.
    VertexFactors,
    /// Interior edge product over the graph automorphism count.
    EdgeProduct,
}

impl MonodromyGraph {
    pub fn eta(&self) -> &Partition {
        &self.eta
    }

    pub fn nu(&self) -> &Partition {
        &self.nu
    }

    pub fn num_levels(&self) -> u32 {
        self.s
    }

    pub fn strands(&self) -> &[StrandInfo] {
        &self.strands
    }

    pub fn events(&self) -> &[GraphEvent] {
        &self.events
    }

    fn join_count(&self) -> usize {
        self.events
            .iter()
            .filter(|e| matches!(e, GraphEvent::Join { .. }))
            .count()
    }

    /// First Betti number; equals the input genus for every enumerated graph.
    pub fn genus(&self) -> u32 {
        (self.join_count() + 1 - self.eta.len()) as u32
    }

    pub fn is_connected(&self) -> bool {
        let n = self.strands.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut Vec<usize>, x: usize) -> usize {
            if parent[x] != x {
                let r = find(parent, parent[x]);
                parent[x] = r;
            }
            parent[x]
        }
        let union = |parent: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(parent, a), find(parent, b));
            if ra != rb {
                parent[ra] = rb;
            }
        };
        for e in &self.events {
            match *e {
                GraphEvent::Join {
                    left,
                    right,
                    result,
                } => {
                    union(&mut parent, left, right);
                    union(&mut parent, left, result);
                }
                GraphEvent::Cut {
                    parent: p,
                    upper,
                    lower,
                } => {
                    union(&mut parent, p, upper);
                    union(&mut parent, p, lower);
                }
            }
        }
        (0..n).filter(|&x| find(&mut parent, x) == x).count() == 1
    }

    /// Balanced forks: a join of two level-0 strands of equal weight, or a
    /// cut into equal halves both surviving to level s+1.
    pub fn balanced_fork_count(&self) -> u32 {
        let mut count = 0;
        for e in &self.events {
            match *e {
                GraphEvent::Join { left, right, .. } => {
                    let (l, r) = (&self.strands[left], &self.strands[right]);
                    if l.birth == 0 && r.birth == 0 && l.weight == r.weight {
                        count += 1;
                    }
                }
                GraphEvent::Cut { upper, lower, .. } => {
                    let (u, l) = (&self.strands[upper], &self.strands[lower]);
                    if u.weight == l.weight && u.death.is_none() && l.death.is_none() {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    /// Wieners: a cut into equal halves that rejoin each other. Both halves
    /// dying at the same level forces a join of exactly those two strands.
    pub fn wiener_count(&self) -> u32 {
        let mut count = 0;
        for e in &self.events {
            if let GraphEvent::Cut { upper, lower, .. } = *e {
                let (u, l) = (&self.strands[upper], &self.strands[lower]);
                if u.weight == l.weight && u.death.is_some() && u.death == l.death {
                    count += 1;
                }
            }
        }
        count
    }

    /// Product over all vertices of the weights of edges entering from the
    /// left; equivalently the product of every consumed strand's weight.
    pub fn vertex_in_products(&self) -> BigInt {
        self.strands
            .iter()
            .filter(|s| s.death.is_some())
            .map(|s| BigInt::from(s.weight))
            .product()
    }

    /// Product over interior edges (born at an event and consumed by one).
    pub fn interior_edge_product(&self) -> BigInt {
        self.strands
            .iter()
            .filter(|s| s.birth > 0 && s.death.is_some())
            .map(|s| BigInt::from(s.weight))
            .product()
    }

    /// Product over strands spanning the whole graph untouched; nontrivial
    /// only for the single-strand s = 0 graph.
    pub fn untouched_edge_product(&self) -> BigInt {
        self.strands
            .iter()
            .filter(|s| s.birth == 0 && s.death.is_none())
            .map(|s| BigInt::from(s.weight))
            .product()
    }

    /// 2^{#balanced forks + #wieners}.
    pub fn automorphism_size(&self) -> BigInt {
        BigInt::one() << (self.balanced_fork_count() + self.wiener_count())
    }

    /// ε(η) · |Aut(η)| · ∏ vertex factors · (1/2)^{forks+wieners} · 1/d!.
    pub fn weight_vertex_factors(&self) -> Rational {
        let numer = self.eta.cycle_type_count() * self.eta.aut_count() * self.vertex_in_products();
        let denom = self.automorphism_size() * factorial(self.eta.degree());
        Rational::new(numer, denom)
    }

    /// ∏ interior edge weights / |Aut(Γ)|, corrected by the weights of
    /// untouched spanning strands so the s = 0 cover gets its 1/d.
    pub fn weight_edge_product(&self) -> Rational {
        Rational::new(
            self.interior_edge_product(),
            self.automorphism_size() * self.untouched_edge_product(),
        )
    }

    pub fn weight(&self, rule: GraphWeighting) -> Rational {
        match rule {
            GraphWeighting::VertexFactors => self.weight_vertex_factors(),
            GraphWeighting::EdgeProduct => self.weight_edge_product(),
        }
    }

    /// Canonical certificate of the leveled isomorphism class.
    pub fn class_key(&self) -> String {
        let mut certs: Vec<String> = self
            .strands
            .iter()
            .take(self.eta.len())
            .map(|s| format!("L{}", s.weight))
            .collect();
        for (idx, e) in self.events.iter().enumerate() {
            let level = idx + 1;
            match *e {
                GraphEvent::Join {
                    left,
                    right,
                    result,
                } => {
                    let (a, b) = if certs[left] <= certs[right] {
                        (&certs[left], &certs[right])
                    } else {
                        (&certs[right], &certs[left])
                    };
                    let c = format!("J{level}({a},{b})");
                    debug_assert_eq!(result, certs.len());
                    certs.push(c);
                }
                GraphEvent::Cut {
                    parent,
                    upper,
                    lower,
                } => {
                    let p = certs[parent].clone();
                    let (wu, wl) = (self.strands[upper].weight, self.strands[lower].weight);
                    debug_assert_eq!(upper, certs.len());
                    certs.push(format!("C{level}({p}|{wu})"));
                    certs.push(format!("C{level}({p}|{wl})"));
                }
            }
        }
        let mut alive: Vec<&String> = self
            .strands
            .iter()
            .enumerate()
            .filter(|(_, s)| s.death.is_none())
            .map(|(i, _)| &certs[i])
            .collect();
        alive.sort();
        alive
            .into_iter()
            .map(|s| s.as_str())
            .collect::<Vec<_>>()
            .join(";")
    }

    pub fn artifact(&self) -> GraphArtifact {
        let events = self
            .events
            .iter()
            .enumerate()
            .map(|(idx, e)| {
                let level = idx as u32 + 1;
                match *e {
                    GraphEvent::Join {
                        left,
                        right,
                        result,
                    } => EventArtifact {
                        level,
                        kind: "join".into(),
                        incoming: vec![self.strands[left].weight, self.strands[right].weight],
                        outgoing: vec![self.strands[result].weight],
                    },
                    GraphEvent::Cut {
                        parent,
                        upper,
                        lower,
                    } => EventArtifact {
                        level,
                        kind: "cut".into(),
                        incoming: vec![self.strands[parent].weight],
                        outgoing: vec![self.strands[upper].weight, self.strands[lower].weight],
                    },
                }
            })
            .collect();
        let edges = self
            .strands
            .iter()
            .map(|s| EdgeArtifact {
                from_level: s.birth,
                to_level: s.death.unwrap_or(self.s + 1),
                weight: s.weight,
            })
            .collect();
        GraphArtifact {
            levels: self.s,
            genus: self.genus(),
            forks: self.balanced_fork_count(),
            wieners: self.wiener_count(),
            events,
            edges,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GraphArtifact {
    pub levels: u32,
    pub genus: u32,
    pub forks: u32,
    pub wieners: u32,
    pub events: Vec<EventArtifact>,
    pub edges: Vec<EdgeArtifact>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EventArtifact {
    pub level: u32,
    pub kind: String,
    pub incoming: Vec<u32>,
    pub outgoing: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EdgeArtifact {
    pub from_level: u32,
    pub to_level: u32,
    pub weight: u32,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum CertNode {
    Leaf { weight: u32 },
    /// Child certificate ids with a <= b.
    Join { level: u32, a: u32, b: u32 },
    Cut { level: u32, parent: u32, weight: u32 },
}

struct Interner {
    ids: HashMap<CertNode, u32>,
    weights: Vec<u32>,
}

impl Interner {
    fn new() -> Self {
        Interner {
            ids: HashMap::new(),
            weights: Vec::new(),
        }
    }

    fn intern(&mut self, node: CertNode, weight: u32) -> u32 {
        if let Some(&id) = self.ids.get(&node) {
            return id;
        }
        let id = self.weights.len() as u32;
        self.ids.insert(node, id);
        self.weights.push(weight);
        id
    }

    fn weight(&self, id: u32) -> u32 {
        self.weights[id as usize]
    }
}

/// History chain entry in certificate terms; the level is the depth in the
/// chain. Any replay choosing concrete strands with matching certificates
/// yields a representative of the same isomorphism class.
enum HistEvent {
    Join { a: u32, b: u32 },
    Cut { parent: u32, upper: u32 },
}

struct HistNode {
    event: HistEvent,
    prev: Option<Rc<HistNode>>,
}

/// All monodromy graphs for the input, one representative per isomorphism
/// class, in deterministic order.
pub fn enumerate_monodromy_graphs(input: &HurwitzInput) -> Vec<MonodromyGraph> {
    let s = input.s;
    let target_len = input.nu.len() as i64;
    let mut interner = Interner::new();
    let mut init: Vec<u32> = input
        .eta
        .parts()
        .iter()
        .map(|&w| interner.intern(CertNode::Leaf { weight: w }, w))
        .collect();
    init.sort_unstable();

    let mut states: BTreeMap<Vec<u32>, Option<Rc<HistNode>>> = BTreeMap::new();
    states.insert(init, None);

    let reachable = |count: i64, remaining: i64, target: i64| {
        let gap = (count - target).abs();
        gap <= remaining && (remaining - gap) % 2 == 0
    };

    for level in 1..=s {
        let remaining = (s - level) as i64;
        let mut next: BTreeMap<Vec<u32>, Option<Rc<HistNode>>> = BTreeMap::new();
        for (key, hist) in &states {
            let n = key.len();
            if n >= 2 && reachable(n as i64 - 1, remaining, target_len) {
                let mut tried: HashSet<(u32, u32)> = HashSet::new();
                for i in 0..n {
                    for j in i + 1..n {
                        let (a, b) = (key[i], key[j]);
                        if !tried.insert((a, b)) {
                            continue;
                        }
                        let w = interner.weight(a) + interner.weight(b);
                        let c = interner.intern(CertNode::Join { level, a, b }, w);
                        let mut k2: Vec<u32> = Vec::with_capacity(n - 1);
                        k2.extend(key.iter().enumerate().filter(|&(p, _)| p != i && p != j).map(|(_, &x)| x));
                        let pos = k2.partition_point(|&x| x < c);
                        k2.insert(pos, c);
                        next.entry(k2).or_insert_with(|| {
                            Some(Rc::new(HistNode {
                                event: HistEvent::Join { a, b },
                                prev: hist.clone(),
                            }))
                        });
                    }
                }
            }
            if reachable(n as i64 + 1, remaining, target_len) {
                let mut tried: HashSet<u32> = HashSet::new();
                for i in 0..n {
                    let parent = key[i];
                    if !tried.insert(parent) {
                        continue;
                    }
                    let w = interner.weight(parent);
                    if w < 2 {
                        continue;
                    }
                    for m2 in 1..=w / 2 {
                        let m1 = w - m2;
                        let c1 = interner.intern(
                            CertNode::Cut {
                                level,
                                parent,
                                weight: m1,
                            },
                            m1,
                        );
                        let c2 = interner.intern(
                            CertNode::Cut {
                                level,
                                parent,
                                weight: m2,
                            },
                            m2,
                        );
                        let mut k2: Vec<u32> = Vec::with_capacity(n + 1);
                        k2.extend(key.iter().enumerate().filter(|&(p, _)| p != i).map(|(_, &x)| x));
                        for c in [c1, c2] {
                            let pos = k2.partition_point(|&x| x < c);
                            k2.insert(pos, c);
                        }
                        next.entry(k2).or_insert_with(|| {
                            Some(Rc::new(HistNode {
                                event: HistEvent::Cut { parent, upper: m1 },
                                prev: hist.clone(),
                            }))
                        });
                    }
                }
            }
        }
        states = next;
    }

    let mut out = Vec::new();
    for (key, hist) in &states {
        let mut weights: Vec<u32> = key.iter().map(|&c| interner.weight(c)).collect();
        weights.sort_unstable_by(|a, b| b.cmp(a));
        if weights != input.nu.parts() {
            continue;
        }
        let graph = replay(input, &mut interner, hist);
        if !graph.is_connected() {
            continue;
        }
        debug_assert_eq!(graph.genus(), input.genus);
        out.push(graph);
    }
    out
}

fn replay(
    input: &HurwitzInput,
    interner: &mut Interner,
    hist: &Option<Rc<HistNode>>,
) -> MonodromyGraph {
    let mut chain: Vec<&HistNode> = Vec::new();
    let mut cur = hist;
    while let Some(node) = cur {
        chain.push(node);
        cur = &node.prev;
    }
    chain.reverse();

    let mut strands: Vec<StrandInfo> = input
        .eta
        .parts()
        .iter()
        .map(|&w| StrandInfo {
            weight: w,
            birth: 0,
            death: None,
        })
        .collect();
    let mut alive: Vec<(usize, u32)> = strands
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let c = interner.intern(CertNode::Leaf { weight: s.weight }, s.weight);
            (i, c)
        })
        .collect();
    let mut events = Vec::with_capacity(chain.len());

    for (idx, node) in chain.iter().enumerate() {
        let level = idx as u32 + 1;
        match node.event {
            HistEvent::Join { a, b } => {
                let i = alive
                    .iter()
                    .position(|&(_, c)| c == a)
                    .expect("cert present in replay");
                let j = alive
                    .iter()
                    .enumerate()
                    .position(|(p, &(_, c))| c == b && p != i)
                    .expect("second cert present in replay");
                let (si, sj) = (alive[i].0, alive[j].0);
                let w = strands[si].weight + strands[sj].weight;
                let result = strands.len();
                strands[si].death = Some(level);
                strands[sj].death = Some(level);
                strands.push(StrandInfo {
                    weight: w,
                    birth: level,
                    death: None,
                });
                events.push(GraphEvent::Join {
                    left: si,
                    right: sj,
                    result,
                });
                let c = interner.intern(CertNode::Join { level, a, b }, w);
                let (hi, lo) = (i.max(j), i.min(j));
                alive.remove(hi);
                alive.remove(lo);
                alive.push((result, c));
            }
            HistEvent::Cut { parent, upper } => {
                let i = alive
                    .iter()
                    .position(|&(_, c)| c == parent)
                    .expect("cert present in replay");
                let sp = alive[i].0;
                let w = strands[sp].weight;
                let (m1, m2) = (upper, w - upper);
                strands[sp].death = Some(level);
                let up = strands.len();
                strands.push(StrandInfo {
                    weight: m1,
                    birth: level,
                    death: None,
                });
                let low = strands.len();
                strands.push(StrandInfo {
                    weight: m2,
                    birth: level,
                    death: None,
                });
                events.push(GraphEvent::Cut {
                    parent: sp,
                    upper: up,
                    lower: low,
                });
                let c1 = interner.intern(
                    CertNode::Cut {
                        level,
                        parent,
                        weight: m1,
                    },
                    m1,
                );
                let c2 = interner.intern(
                    CertNode::Cut {
                        level,
                        parent,
                        weight: m2,
                    },
                    m2,
                );
                alive.remove(i);
                alive.push((up, c1));
                alive.push((low, c2));
            }
        }
    }

    MonodromyGraph {
        eta: input.eta.clone(),
        nu: input.nu.clone(),
        s: input.s,
        strands,
        events,
    }
}

/// Hurwitz number as the weighted sum over graph classes.
pub fn hurwitz_graphsum(input: &HurwitzInput, rule: GraphWeighting) -> Result<Rational> {
    let mut total = Rational::zero();
    for g in enumerate_monodromy_graphs(input) {
        total += g.weight(rule);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{hurwitz_bruteforce, OracleConfig};
    use crate::partition::partitions_of;
    use crate::{rat, ratio};

    fn input(g: u32, eta: Vec<u32>, nu: Vec<u32>) -> HurwitzInput {
        HurwitzInput::new(
            g,
            Partition::new(eta).unwrap(),
            Partition::new(nu).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn single_join() {
        let graphs = enumerate_monodromy_graphs(&input(0, vec![1, 1], vec![2]));
        assert_eq!(graphs.len(), 1);
        let g = &graphs[0];
        assert_eq!(g.balanced_fork_count(), 1);
        assert_eq!(g.wiener_count(), 0);
        assert_eq!(g.weight_vertex_factors(), ratio(1, 2));
        assert_eq!(g.weight_edge_product(), ratio(1, 2));
    }

    #[test]
    fn spanning_strand() {
        for d in 2..=5u32 {
            let graphs = enumerate_monodromy_graphs(&input(0, vec![d], vec![d]));
            assert_eq!(graphs.len(), 1);
            assert_eq!(graphs[0].weight_vertex_factors(), ratio(1, d));
            assert_eq!(graphs[0].weight_edge_product(), ratio(1, d));
        }
    }

    #[test]
    fn worked_degree_four_classes() {
        let graphs = enumerate_monodromy_graphs(&input(1, vec![4], vec![2, 2]));
        assert_eq!(graphs.len(), 4);
        let mut vertex_products: Vec<BigInt> =
            graphs.iter().map(|g| g.vertex_in_products()).collect();
        vertex_products.sort();
        assert_eq!(
            vertex_products,
            vec![8, 12, 48, 64].into_iter().map(BigInt::from).collect::<Vec<_>>()
        );
        let mut totals: Vec<Rational> =
            graphs.iter().map(|g| g.weight_vertex_factors()).collect();
        totals.sort();
        assert_eq!(totals, vec![rat(1), rat(3), rat(4), rat(6)]);
        for g in &graphs {
            assert_eq!(g.weight_vertex_factors(), g.weight_edge_product());
            assert_eq!(g.genus(), 1);
        }
        let total: Rational = graphs.iter().map(|g| g.weight_vertex_factors()).sum();
        assert_eq!(total, rat(14));
    }

    #[test]
    fn three_part_to_full_cycle() {
        let graphs = enumerate_monodromy_graphs(&input(0, vec![1, 2, 3], vec![6]));
        assert_eq!(graphs.len(), 3);
        let total: Rational = graphs.iter().map(|g| g.weight_vertex_factors()).sum();
        assert_eq!(total, rat(12));
    }

    #[test]
    fn full_cycle_to_units() {
        let graphs = enumerate_monodromy_graphs(&input(0, vec![4], vec![1, 1, 1, 1]));
        assert_eq!(graphs.len(), 2);
        let total: Rational = graphs.iter().map(|g| g.weight_vertex_factors()).sum();
        assert_eq!(total, rat(4));
    }

    #[test]
    fn connectivity_filter() {
        // Both sheets must interact; the untouched parallel pair is dropped.
        let graphs = enumerate_monodromy_graphs(&input(0, vec![1, 1], vec![1, 1]));
        assert_eq!(graphs.len(), 1);
        assert_eq!(graphs[0].weight_vertex_factors(), ratio(1, 2));
    }

    #[test]
    fn structural_invariants() {
        for (g, eta, nu) in [
            (1u32, vec![4], vec![2, 2]),
            (0, vec![2, 1], vec![1, 1, 1]),
            (2, vec![2], vec![2]),
        ] {
            let inp = input(g, eta, nu);
            for graph in enumerate_monodromy_graphs(&inp) {
                assert_eq!(graph.genus(), g);
                assert!(graph.is_connected());
                let mut finals: Vec<u32> = graph
                    .strands()
                    .iter()
                    .filter(|s| s.death.is_none())
                    .map(|s| s.weight)
                    .collect();
                finals.sort_unstable_by(|a, b| b.cmp(a));
                assert_eq!(finals, inp.nu.parts());
                // One event per level.
                assert_eq!(graph.events().len(), inp.s as usize);
            }
        }
    }

    #[test]
    fn class_keys_distinct() {
        for (g, eta, nu) in [
            (1u32, vec![4], vec![2, 2]),
            (0, vec![1, 2, 3], vec![6]),
            (1, vec![2, 2], vec![3, 1]),
        ] {
            let graphs = enumerate_monodromy_graphs(&input(g, eta, nu));
            let keys: HashSet<String> = graphs.iter().map(|gr| gr.class_key()).collect();
            assert_eq!(keys.len(), graphs.len());
        }
    }

    #[test]
    fn agrees_with_bruteforce_small() {
        let cfg = OracleConfig::default();
        for d in 1..=4u32 {
            for g in 0..=1u32 {
                for eta in partitions_of(d) {
                    for nu in partitions_of(d) {
                        let inp = HurwitzInput::new(g, eta.clone(), nu).unwrap();
                        let bf = hurwitz_bruteforce(&inp, &cfg).unwrap();
                        let vf = hurwitz_graphsum(&inp, GraphWeighting::VertexFactors).unwrap();
                        let ep = hurwitz_graphsum(&inp, GraphWeighting::EdgeProduct).unwrap();
                        assert_eq!(vf, bf, "{:?}", inp);
                        assert_eq!(ep, bf, "{:?}", inp);
                    }
                }
            }
        }
    }

    #[test]
    fn swap_symmetry() {
        for (g, eta, nu) in [
            (0u32, vec![3, 1], vec![2, 2]),
            (1, vec![4], vec![2, 2]),
            (0, vec![2, 2, 1], vec![3, 2]),
        ] {
            let a = hurwitz_graphsum(&input(g, eta.clone(), nu.clone()), GraphWeighting::VertexFactors)
                .unwrap();
            let b = hurwitz_graphsum(&input(g, nu, eta), GraphWeighting::VertexFactors).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn per_graph_weights_match_after_class_identity() {
        for d in 2..=5u32 {
            for g in 0..=1u32 {
                for eta in partitions_of(d) {
                    for nu in partitions_of(d) {
                        let inp = HurwitzInput::new(g, eta.clone(), nu).unwrap();
                        for graph in enumerate_monodromy_graphs(&inp) {
                            assert_eq!(
                                graph.weight_vertex_factors(),
                                graph.weight_edge_product(),
                                "{:?}",
                                inp
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn artifact_shape() {
        let graphs = enumerate_monodromy_graphs(&input(1, vec![4], vec![2, 2]));
        for g in &graphs {
            let a = g.artifact();
            assert_eq!(a.levels, 3);
            assert_eq!(a.genus, 1);
            assert_eq!(a.events.len(), 3);
            assert_eq!(a.edges.len(), g.strands().len());
            for e in &a.edges {
                assert!(e.from_level < e.to_level);
                assert!(e.to_level <= a.levels + 1);
            }
            let json = serde_json::to_string(&a).unwrap();
            let back: GraphArtifact = serde_json::from_str(&json).unwrap();
            assert_eq!(back.edges.len(), a.edges.len());
        }
    }
}
