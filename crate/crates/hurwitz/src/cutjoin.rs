//! Cut-and-join dynamic programming over cycle-type distributions.
//!
//! Multiplying a permutation by a transposition either joins two cycles or
//! cuts one cycle in two, and the number of transpositions realizing each
//! outcome depends only on the cycle type. Iterating this rule on a
//! distribution over cycle types counts monodromy tuples without the
//! transitivity condition; a first-point recursion then extracts the
//! connected count, giving an oracle fully independent of direct search.

use crate::partition::{HurwitzInput, Partition};
use crate::{binomial, factorial, BigInt, Rational, Result};
use num::{One, Zero};
use std::collections::{BTreeMap, HashMap};

/// Exact weights on the cycle types of a fixed degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleTypeDistribution {
    degree: u64,
    weights: BTreeMap<Partition, Rational>,
}

impl CycleTypeDistribution {
    pub fn point_mass(ct: Partition, weight: Rational) -> Self {
        let degree = ct.degree();
        let mut weights = BTreeMap::new();
        if !weight.is_zero() {
            weights.insert(ct, weight);
        }
        CycleTypeDistribution { degree, weights }
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn weight(&self, ct: &Partition) -> Rational {
        self.weights.get(ct).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn total_mass(&self) -> Rational {
        self.weights.values().sum()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.weights.iter()
    }

    fn add(&mut self, ct: Partition, w: Rational) {
        debug_assert_eq!(ct.degree(), self.degree);
        if w.is_zero() {
            return;
        }
        let new = match self.weights.get(&ct) {
            Some(old) => old + w,
            None => w,
        };
        if new.is_zero() {
            self.weights.remove(&ct);
        } else {
            self.weights.insert(ct, new);
        }
    }
}

/// Where one transposition can take a permutation of the given cycle type,
/// with multiplicities: joining cycles of lengths a and b admits a·b
/// transpositions, cutting a length-n cycle into m′ + m″ admits n
/// transpositions, or n/2 when m′ = m″. Multiplicities sum to d(d−1)/2.
pub fn transition_counts(ct: &Partition) -> Vec<(Partition, BigInt)> {
    let parts = ct.parts();
    let mut acc: BTreeMap<Partition, BigInt> = BTreeMap::new();
    let mut bump = |result: Vec<u32>, mult: BigInt| {
        let p = Partition::new(result).expect("parts stay positive");
        *acc.entry(p).or_insert_with(BigInt::zero) += mult;
    };
    // Joins of two distinct cycle positions.
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let mut rest: Vec<u32> = Vec::with_capacity(parts.len() - 1);
            for (k, &p) in parts.iter().enumerate() {
                if k != i && k != j {
                    rest.push(p);
                }
            }
            rest.push(parts[i] + parts[j]);
            bump(rest, BigInt::from(parts[i]) * BigInt::from(parts[j]));
        }
    }
    // Cuts of one cycle into an unordered pair of positive pieces.
    for (i, &n) in parts.iter().enumerate() {
        if n < 2 {
            continue;
        }
        for m1 in 1..=n / 2 {
            let m2 = n - m1;
            let mult = if m1 == m2 { n / 2 } else { n };
            let mut rest: Vec<u32> = Vec::with_capacity(parts.len() + 1);
            for (k, &p) in parts.iter().enumerate() {
                if k != i {
                    rest.push(p);
                }
            }
            rest.push(m1);
            rest.push(m2);
            bump(rest, BigInt::from(mult));
        }
    }
    acc.into_iter().collect()
}

/// One application of the cut-and-join rule to a distribution.
pub fn cutjoin_step(state: &CycleTypeDistribution) -> CycleTypeDistribution {
    let mut next = CycleTypeDistribution {
        degree: state.degree,
        weights: BTreeMap::new(),
    };
    for (ct, w) in state.entries() {
        for (target, mult) in transition_counts(ct) {
            next.add(target, w * Rational::from(mult));
        }
    }
    next
}

/// Number of (σ_η, τ_1..τ_s) tuples, σ_η of type η, whose running product
/// has type ν. No transitivity requirement.
fn disconnected_tuple_count(eta: &Partition, nu: &Partition, s: u32) -> BigInt {
    let mut state =
        CycleTypeDistribution::point_mass(eta.clone(), Rational::from(eta.cycle_type_count()));
    for _ in 0..s {
        state = cutjoin_step(&state);
    }
    let w = state.weight(nu);
    debug_assert!(w.is_integer());
    w.to_integer()
}

/// Hurwitz number over possibly disconnected covers: the distribution is
/// seeded with ε(η)/d! at η, stepped s times, and read off at ν.
pub fn hurwitz_cutjoin_disconnected(input: &HurwitzInput) -> Result<Rational> {
    Ok(Rational::new(
        disconnected_tuple_count(&input.eta, &input.nu, input.s),
        factorial(input.degree()),
    ))
}

/// Memoizes both the disconnected counts and the connected extraction.
#[derive(Default)]
pub struct CutJoinSolver {
    disconnected: HashMap<(Partition, Partition, u32), BigInt>,
    connected: HashMap<(Partition, Partition, u32), BigInt>,
}

impl CutJoinSolver {
    pub fn new() -> Self {
        Self::default()
    }

    fn disconnected_count(&mut self, eta: &Partition, nu: &Partition, s: u32) -> BigInt {
        if eta.degree() != nu.degree() {
            return BigInt::zero();
        }
        if eta.degree() == 0 {
            // Empty ground set: only the empty tuple.
            return if s == 0 { BigInt::one() } else { BigInt::zero() };
        }
        let key = (eta.clone(), nu.clone(), s);
        if let Some(v) = self.disconnected.get(&key) {
            return v.clone();
        }
        let v = disconnected_tuple_count(eta, nu, s);
        self.disconnected.insert(key, v.clone());
        v
    }

    /// Connected tuples via the component of the first sheet: a disconnected
    /// tuple splits as (connected piece on a point set containing sheet 1)
    /// times (arbitrary tuple on the rest), with the transposition slots
    /// shuffled in C(s, s′) ways.
    fn connected_count(&mut self, eta: &Partition, nu: &Partition, s: u32) -> BigInt {
        let d = eta.degree();
        if d != nu.degree() || d == 0 {
            return BigInt::zero();
        }
        let key = (eta.clone(), nu.clone(), s);
        if let Some(v) = self.connected.get(&key) {
            return v.clone();
        }
        let mut total = self.disconnected_count(eta, nu, s);
        for (eta_sub, eta_rest) in eta.sub_multisets() {
            let d_sub = eta_sub.degree();
            if d_sub == 0 || d_sub == d {
                continue;
            }
            let sheets = binomial(d - 1, d_sub - 1);
            for (nu_sub, nu_rest) in nu.sub_multisets() {
                if nu_sub.degree() != d_sub {
                    continue;
                }
                for s_sub in 0..=s {
                    let conn = self.connected_count(&eta_sub, &nu_sub, s_sub);
                    if conn.is_zero() {
                        continue;
                    }
                    let rest = self.disconnected_count(&eta_rest, &nu_rest, s - s_sub);
                    if rest.is_zero() {
                        continue;
                    }
                    total -= &sheets * binomial(s as u64, s_sub as u64) * conn * rest;
                }
            }
        }
        self.connected.insert(key, total.clone());
        total
    }

    pub fn hurwitz(&mut self, input: &HurwitzInput) -> Result<Rational> {
        Ok(Rational::new(
            self.connected_count(&input.eta, &input.nu, input.s),
            factorial(input.degree()),
        ))
    }
}

/// The connected double Hurwitz number by cut-and-join.
pub fn hurwitz_cutjoin(input: &HurwitzInput) -> Result<Rational> {
    CutJoinSolver::new().hurwitz(input)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{hurwitz_bruteforce, hurwitz_bruteforce_disconnected, OracleConfig};
    use crate::partition::partitions_of;
    use crate::perm::{transpositions, Perm};
    use crate::{rat, ratio};

    fn p(v: Vec<u32>) -> Partition {
        Partition::new(v).unwrap()
    }

    fn input(g: u32, eta: Vec<u32>, nu: Vec<u32>) -> HurwitzInput {
        HurwitzInput::new(g, p(eta), p(nu)).unwrap()
    }

    #[test]
    fn step_from_two_two() {
        let state = CycleTypeDistribution::point_mass(p(vec![2, 2]), Rational::one());
        let next = cutjoin_step(&state);
        assert_eq!(next.weight(&p(vec![2, 1, 1])), rat(2));
        assert_eq!(next.weight(&p(vec![4])), rat(4));
        assert_eq!(next.total_mass(), rat(6));
    }

    #[test]
    fn step_from_identity_type() {
        for d in 2..=6u64 {
            let ones = p(vec![1; d as usize]);
            let next = cutjoin_step(&CycleTypeDistribution::point_mass(ones, Rational::one()));
            let mut target = vec![1u32; d as usize - 2];
            target.push(2);
            assert_eq!(next.weight(&p(target)), rat(d * (d - 1) / 2));
        }
    }

    #[test]
    fn step_from_four_cycle() {
        let next = cutjoin_step(&CycleTypeDistribution::point_mass(
            p(vec![4]),
            Rational::one(),
        ));
        assert_eq!(next.weight(&p(vec![3, 1])), rat(4));
        assert_eq!(next.weight(&p(vec![2, 2])), rat(2));
    }

    #[test]
    fn mass_conservation() {
        for d in 1..=8u32 {
            for ct in partitions_of(d) {
                let state = CycleTypeDistribution::point_mass(ct, Rational::one());
                assert_eq!(
                    cutjoin_step(&state).total_mass(),
                    rat(d as u64 * (d as u64 - 1) / 2)
                );
            }
        }
    }

    // The aggregated rule matches literal multiplication by every
    // transposition against a class representative.
    #[test]
    fn transitions_match_explicit_multiplication() {
        for d in 2..=6u32 {
            for ct in partitions_of(d) {
                let rep = Perm::class_representative(&ct);
                let mut explicit: BTreeMap<Partition, BigInt> = BTreeMap::new();
                for (a, b) in transpositions(d as usize) {
                    let mut q = rep.clone();
                    q.swap_values(a, b);
                    *explicit.entry(q.cycle_type()).or_insert_with(BigInt::zero) +=
                        BigInt::one();
                }
                let aggregated: BTreeMap<Partition, BigInt> =
                    transition_counts(&ct).into_iter().collect();
                assert_eq!(explicit, aggregated, "type {ct}");
            }
        }
    }

    #[test]
    fn disconnected_values() {
        // A tuple containing a 4-cycle is automatically transitive, so the
        // disconnected count agrees with the connected one here.
        assert_eq!(
            hurwitz_cutjoin_disconnected(&input(1, vec![4], vec![2, 2])).unwrap(),
            rat(14)
        );
        // No branching at all on two sheets: just the identity tuple, which
        // is not transitive, so only the disconnected count sees it.
        assert_eq!(
            disconnected_tuple_count(&p(vec![1, 1]), &p(vec![1, 1]), 0),
            BigInt::one()
        );
        // Two simple points on two sheets force τ1 = τ2 = (12).
        let two_steps = input(0, vec![1, 1], vec![1, 1]);
        assert_eq!(two_steps.s, 2);
        assert_eq!(
            hurwitz_cutjoin_disconnected(&two_steps).unwrap(),
            ratio(1, 2)
        );
    }

    #[test]
    fn connected_values() {
        assert_eq!(hurwitz_cutjoin(&input(1, vec![4], vec![2, 2])).unwrap(), rat(14));
        assert_eq!(
            hurwitz_cutjoin(&input(0, vec![1, 1], vec![1, 1])).unwrap(),
            ratio(1, 2)
        );
        assert_eq!(
            hurwitz_cutjoin(&input(0, vec![1, 1], vec![2])).unwrap(),
            ratio(1, 2)
        );
        assert_eq!(hurwitz_cutjoin(&input(0, vec![3, 1], vec![2, 2])).unwrap(), rat(3));
    }

    // The full d <= 5, g <= 2 sweep lives in the acceptance suite; this
    // keeps a faster grid under unit-test turnaround.
    #[test]
    fn agrees_with_bruteforce() {
        let cfg = OracleConfig::default();
        let mut solver = CutJoinSolver::new();
        for d in 1..=4u32 {
            for g in 0..=2u32 {
                for eta in partitions_of(d) {
                    for nu in partitions_of(d) {
                        let inp = HurwitzInput::new(g, eta.clone(), nu).unwrap();
                        let cj = solver.hurwitz(&inp).unwrap();
                        let bf = hurwitz_bruteforce(&inp, &cfg).unwrap();
                        assert_eq!(cj, bf, "{:?}", inp);
                        let cj_disc = hurwitz_cutjoin_disconnected(&inp).unwrap();
                        let bf_disc = hurwitz_bruteforce_disconnected(&inp, &cfg).unwrap();
                        assert_eq!(cj_disc, bf_disc, "{:?}", inp);
                    }
                }
            }
        }
    }

    #[test]
    fn connected_at_most_disconnected() {
        for d in 2..=6u32 {
            for eta in partitions_of(d) {
                for nu in partitions_of(d) {
                    for g in 0..=1u32 {
                        let inp = HurwitzInput::new(g, eta.clone(), nu.clone()).unwrap();
                        let conn = hurwitz_cutjoin(&inp).unwrap();
                        let disc = hurwitz_cutjoin_disconnected(&inp).unwrap();
                        assert!(conn <= disc, "{:?}", inp);
                    }
                }
            }
        }
    }
}
