//! Ground-truth double Hurwitz numbers from monodromy tuples in S_d.
//!
//! A cover is encoded by a tuple (σ_η, τ_1, .., τ_s, σ_ν) with
//! σ_ν τ_s ⋯ τ_1 σ_η = id, prescribed cycle types for σ_η and σ_ν, each τ_i a
//! transposition, and the generated subgroup transitive. The Hurwitz number is
//! the tuple count divided by d!.
//!
//! Three equivalent counting routes, cross-checked in tests:
//! * definitional enumeration of whole tuples (tiny inputs only),
//! * depth-first search over transposition slots with cycle-count pruning and
//!   a union-find transitivity check at each leaf,
//! * an aggregated exact count over states (running product, orbit partition
//!   of the generated subgroup), which shares common prefixes and is the only
//!   route that survives large s.
//!
//! All routes fix one representative for σ_η and multiply by the class size:
//! conjugating a tuple is a bijection of the solution set, so the count per
//! class member is constant.

use crate::partition::{HurwitzInput, Partition};
use crate::perm::{transpositions, Perm};
use crate::{factorial, BigInt, Error, Rational, Result};
use num::{One, Zero};
use std::collections::HashMap;

/// Guards and strategy selection for the oracle.
#[derive(Clone, Debug)]
pub struct OracleConfig {
    /// Inputs with degree above this are refused.
    pub max_degree: u64,
    pub strategy: Strategy,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Depth-first search when the slot tree is small, state count otherwise.
    Auto,
    Dfs,
    StateCount,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_degree: 7,
            strategy: Strategy::Auto,
        }
    }
}

/// One explicit monodromy tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonodromyTuple {
    pub sigma_eta: Perm,
    pub taus: Vec<Perm>,
    pub sigma_nu: Perm,
}

impl MonodromyTuple {
    /// Product σ_ν τ_s ⋯ τ_1 σ_η as a permutation (should be the identity).
    pub fn product(&self) -> Perm {
        let mut acc = self.sigma_eta.clone();
        for t in &self.taus {
            acc = acc.then(t);
        }
        acc.then(&self.sigma_nu)
    }

    pub fn is_factorization(&self, input: &HurwitzInput) -> bool {
        self.sigma_eta.cycle_type() == input.eta
            && self.sigma_nu.cycle_type() == input.nu
            && self.taus.len() == input.s as usize
            && self
                .taus
                .iter()
                .all(|t| t.cycle_type().parts().first() == Some(&2) && t.cycle_count() == t.degree() - 1)
            && self.product() == Perm::identity(self.sigma_eta.degree())
    }

    /// Whether the subgroup generated by all entries acts transitively.
    pub fn is_transitive(&self) -> bool {
        let d = self.sigma_eta.degree();
        let mut dsu = Dsu::new(d);
        for p in std::iter::once(&self.sigma_eta)
            .chain(self.taus.iter())
            .chain(std::iter::once(&self.sigma_nu))
        {
            for x in 0..d {
                dsu.union(x, p.apply(x));
            }
        }
        dsu.components() == 1
    }
}

struct Dsu {
    parent: Vec<usize>,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    fn components(&mut self) -> usize {
        let n = self.parent.len();
        (0..n).filter(|&x| self.find(x) == x).count()
    }
}

/// Definitional enumeration of all monodromy tuples. Exponential in every
/// direction; reserved for cross-checks on tiny inputs.
pub fn enumerate_tuples(input: &HurwitzInput, transitive_only: bool) -> Vec<MonodromyTuple> {
    let d = input.degree() as usize;
    let s = input.s as usize;
    let taus: Vec<Perm> = transpositions(d)
        .into_iter()
        .map(|(a, b)| Perm::transposition(d, a as usize, b as usize))
        .collect();
    if s > 0 && taus.is_empty() {
        return Vec::new();
    }
    let combos = taus.len().max(1).pow(s as u32);
    let mut out = Vec::new();
    for sigma_eta in Perm::class_members(&input.eta) {
        for combo in 0..combos {
            let mut chosen = Vec::with_capacity(s);
            let mut rest = combo;
            for _ in 0..s {
                chosen.push(rest % taus.len());
                rest /= taus.len();
            }
            let mut acc = sigma_eta.clone();
            for &i in &chosen {
                acc = acc.then(&taus[i]);
            }
            let sigma_nu = acc.inverse();
            if sigma_nu.cycle_type() != input.nu {
                continue;
            }
            let t = MonodromyTuple {
                sigma_eta: sigma_eta.clone(),
                taus: chosen.iter().map(|&i| taus[i].clone()).collect(),
                sigma_nu,
            };
            if !transitive_only || t.is_transitive() {
                out.push(t);
            }
        }
    }
    out
}

/// Number of monodromy tuples for the input, with or without the
/// transitivity requirement.
pub fn tuple_count(
    input: &HurwitzInput,
    transitive_only: bool,
    cfg: &OracleConfig,
) -> Result<BigInt> {
    let d = input.degree();
    if d > cfg.max_degree {
        return Err(Error::GuardExceeded {
            d,
            limit: cfg.max_degree,
        });
    }
    let per_rep = match cfg.strategy {
        Strategy::Dfs => dfs_count(input, transitive_only),
        Strategy::StateCount => state_count(input, transitive_only),
        Strategy::Auto => {
            let t = (d * d.saturating_sub(1) / 2) as f64;
            if t.powi(input.s as i32) <= 4e6 {
                dfs_count(input, transitive_only)
            } else {
                state_count(input, transitive_only)
            }
        }
    };
    Ok(per_rep * input.eta.cycle_type_count())
}

/// The double Hurwitz number: transitive tuple count over d!.
pub fn hurwitz_bruteforce(input: &HurwitzInput, cfg: &OracleConfig) -> Result<Rational> {
    let count = tuple_count(input, true, cfg)?;
    Ok(Rational::new(count, factorial(input.degree())))
}

/// Hurwitz number without the connectedness requirement.
pub fn hurwitz_bruteforce_disconnected(
    input: &HurwitzInput,
    cfg: &OracleConfig,
) -> Result<Rational> {
    let count = tuple_count(input, false, cfg)?;
    Ok(Rational::new(count, factorial(input.degree())))
}

/// Depth-first search over transposition slots with the representative σ_η
/// fixed. Prunes when the cycle count of the partial product cannot reach
/// ℓ(ν) with one merge or split per remaining slot.
fn dfs_count(input: &HurwitzInput, transitive_only: bool) -> BigInt {
    let d = input.degree() as usize;
    let sigma = Perm::class_representative(&input.eta);
    let taus = transpositions(d);
    let target_len = input.nu.len() as i64;

    fn in_same_cycle(p: &Perm, a: u8, b: u8) -> bool {
        let mut x = p.apply(a as usize);
        while x != a as usize {
            if x == b as usize {
                return true;
            }
            x = p.apply(x);
        }
        false
    }

    struct Search<'a> {
        taus: &'a [(u8, u8)],
        sigma: &'a Perm,
        input: &'a HurwitzInput,
        target_len: i64,
        transitive_only: bool,
        product: Perm,
        used: Vec<(u8, u8)>,
        count: BigInt,
    }

    impl Search<'_> {
        fn rec(&mut self, remaining: u32, cycles: i64) {
            if remaining == 0 {
                if self.product.cycle_type() != self.input.nu {
                    return;
                }
                if self.transitive_only {
                    let d = self.product.degree();
                    let mut dsu = Dsu::new(d);
                    for x in 0..d {
                        dsu.union(x, self.sigma.apply(x));
                    }
                    for &(a, b) in self.used.iter() {
                        dsu.union(a as usize, b as usize);
                    }
                    if dsu.components() != 1 {
                        return;
                    }
                }
                self.count += 1;
                return;
            }
            let taus = self.taus;
            for &(a, b) in taus {
                let delta = if in_same_cycle(&self.product, a, b) { 1 } else { -1 };
                let next_cycles = cycles + delta;
                if (next_cycles - self.target_len).abs() > (remaining - 1) as i64 {
                    continue;
                }
                self.product.swap_values(a, b);
                self.used.push((a, b));
                self.rec(remaining - 1, next_cycles);
                self.used.pop();
                self.product.swap_values(a, b);
            }
        }
    }

    let start_cycles = sigma.cycle_count() as i64;
    if (start_cycles - target_len).abs() > input.s as i64 {
        return BigInt::zero();
    }
    let mut search = Search {
        taus: &taus,
        sigma: &sigma,
        input,
        target_len,
        transitive_only,
        product: sigma.clone(),
        used: Vec::new(),
        count: BigInt::zero(),
    };
    search.rec(input.s, start_cycles);
    search.count
}

// State keys: the running product packed 4 bits per point, and the orbit
// partition of the generated subgroup as a restricted-growth string packed
// 4 bits per point. Requires d <= 16, far above any workable degree.

fn pack_perm(p: &[u8]) -> u64 {
    p.iter()
        .enumerate()
        .fold(0u64, |acc, (i, &x)| acc | ((x as u64) << (4 * i)))
}

fn unpack_perm(key: u64, d: usize) -> Perm {
    Perm((0..d).map(|i| ((key >> (4 * i)) & 0xf) as u8).collect())
}

fn pack_rgs(labels: &[u8]) -> u64 {
    labels
        .iter()
        .enumerate()
        .fold(0u64, |acc, (i, &x)| acc | ((x as u64) << (4 * i)))
}

/// Renames partition labels in first-occurrence order.
fn normalize_rgs(labels: &mut [u8]) {
    let mut map = [u8::MAX; 16];
    let mut next = 0u8;
    for x in labels.iter_mut() {
        if map[*x as usize] == u8::MAX {
            map[*x as usize] = next;
            next += 1;
        }
        *x = map[*x as usize];
    }
}

fn unpack_rgs(key: u64, d: usize) -> Vec<u8> {
    (0..d).map(|i| ((key >> (4 * i)) & 0xf) as u8).collect()
}

fn merge_rgs(key: u64, d: usize, a: usize, b: usize) -> u64 {
    let mut labels = unpack_rgs(key, d);
    let (la, lb) = (labels[a], labels[b]);
    if la != lb {
        for x in labels.iter_mut() {
            if *x == lb {
                *x = la;
            }
        }
        normalize_rgs(&mut labels);
    }
    pack_rgs(&labels)
}

fn orbit_key_of_cycles(p: &Perm) -> u64 {
    let d = p.degree();
    let mut labels = vec![0u8; d];
    let mut seen = vec![false; d];
    let mut next = 0u8;
    for start in 0..d {
        if seen[start] {
            continue;
        }
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            labels[x] = next;
            x = p.apply(x);
        }
        next += 1;
    }
    normalize_rgs(&mut labels);
    pack_rgs(&labels)
}

/// Exact aggregated count: forward distribution over (product, orbit
/// partition) states under left-multiplication by each transposition slot.
fn state_count(input: &HurwitzInput, transitive_only: bool) -> BigInt {
    let d = input.degree() as usize;
    assert!(d <= 16);
    let sigma = Perm::class_representative(&input.eta);
    let taus = transpositions(d);
    let target_len = input.nu.len() as i64;

    let mut states: HashMap<(u64, u64), BigInt> = HashMap::new();
    states.insert(
        (pack_perm(&sigma.0), orbit_key_of_cycles(&sigma)),
        BigInt::one(),
    );

    for step in 0..input.s {
        let remaining = (input.s - step - 1) as i64;
        let mut next: HashMap<(u64, u64), BigInt> = HashMap::new();
        for ((perm_key, part_key), weight) in &states {
            let perm = unpack_perm(*perm_key, d);
            for &(a, b) in &taus {
                let mut p2 = perm.clone();
                p2.swap_values(a, b);
                let cycles = p2.cycle_count() as i64;
                if (cycles - target_len).abs() > remaining {
                    continue;
                }
                let key = (
                    pack_perm(&p2.0),
                    merge_rgs(*part_key, d, a as usize, b as usize),
                );
                *next.entry(key).or_insert_with(BigInt::zero) += weight;
            }
        }
        states = next;
    }

    let mut total = BigInt::zero();
    for ((perm_key, part_key), weight) in &states {
        if transitive_only && *part_key != 0 {
            continue;
        }
        if unpack_perm(*perm_key, d).cycle_type() == input.nu {
            total += weight;
        }
    }
    total
}

/// Connected Hurwitz number with any number of prescribed profiles plus s
/// simple branch points, s read off from Riemann–Hurwitz:
/// s = 2g − 2 + Σ ℓ(η_i) − d(r − 2).
pub fn hurwitz_general(
    d: u64,
    profiles: &[Partition],
    genus: u32,
    cfg: &OracleConfig,
) -> Result<Rational> {
    if d == 0 {
        return Err(Error::Invalid("degree must be positive".into()));
    }
    if d > cfg.max_degree {
        return Err(Error::GuardExceeded {
            d,
            limit: cfg.max_degree,
        });
    }
    for p in profiles {
        if p.degree() != d {
            return Err(Error::DegreeMismatch(p.degree(), d));
        }
    }
    let r = profiles.len() as i64;
    let total_lengths: i64 = profiles.iter().map(|p| p.len() as i64).sum();
    let s = 2 * genus as i64 - 2 + total_lengths - d as i64 * (r - 2);
    if s < 0 {
        return Err(Error::NegativeBranchCount(s));
    }
    let s = s as u32;
    let dd = d as usize;
    assert!(dd <= 16);

    // Seed with the first profile's representative (times its class size at
    // the end), or the identity when there are no profiles at all.
    let (seed, multiplier) = match profiles.first() {
        Some(p) => (
            Perm::class_representative(p),
            p.cycle_type_count(),
        ),
        None => (Perm::identity(dd), BigInt::one()),
    };
    let mut states: HashMap<(u64, u64), BigInt> = HashMap::new();
    states.insert(
        (pack_perm(&seed.0), orbit_key_of_cycles(&seed)),
        BigInt::one(),
    );

    // Convolve the remaining profile classes.
    for p in profiles.iter().skip(1) {
        let members = Perm::class_members(p);
        let merges: Vec<(Perm, Vec<(usize, usize)>)> = members
            .into_iter()
            .map(|m| {
                let pairs: Vec<(usize, usize)> =
                    (0..dd).map(|x| (x, m.apply(x))).collect();
                (m, pairs)
            })
            .collect();
        let mut next: HashMap<(u64, u64), BigInt> = HashMap::new();
        for ((perm_key, part_key), weight) in &states {
            let perm = unpack_perm(*perm_key, dd);
            for (m, pairs) in &merges {
                let product = perm.then(m);
                let mut part = *part_key;
                for &(x, y) in pairs {
                    part = merge_rgs(part, dd, x, y);
                }
                let key = (pack_perm(&product.0), part);
                *next.entry(key).or_insert_with(BigInt::zero) += weight;
            }
        }
        states = next;
    }

    // Then the transposition slots; target is the identity, one orbit.
    let taus = transpositions(dd);
    for step in 0..s {
        let remaining = (s - step - 1) as i64;
        let mut next: HashMap<(u64, u64), BigInt> = HashMap::new();
        for ((perm_key, part_key), weight) in &states {
            let perm = unpack_perm(*perm_key, dd);
            for &(a, b) in &taus {
                let mut p2 = perm.clone();
                p2.swap_values(a, b);
                // The remaining slots must bring the product back to d cycles.
                if (p2.cycle_count() as i64 - dd as i64).abs() > remaining {
                    continue;
                }
                let key = (
                    pack_perm(&p2.0),
                    merge_rgs(*part_key, dd, a as usize, b as usize),
                );
                *next.entry(key).or_insert_with(BigInt::zero) += weight;
            }
        }
        states = next;
    }

    let identity_key = pack_perm(&Perm::identity(dd).0);
    let mut total = BigInt::zero();
    for ((perm_key, part_key), weight) in &states {
        if *perm_key == identity_key && *part_key == 0 {
            total += weight;
        }
    }
    Ok(Rational::new(total * multiplier, factorial(d)))
}
