//! Integer partitions as ramification profiles, and validated Hurwitz inputs.

use crate::{factorial, BigInt, Error, Result};
use num::One;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Partition of a positive integer; parts stored weakly decreasing, all >= 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition from arbitrary part order; rejects zero parts.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::ZeroPart);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition(parts))
    }

    /// Parts in weakly decreasing order.
    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Sum of parts.
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&p| p as u64).sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Order of the part-permuting symmetry group: the product of m! over
    /// the multiplicity m of each distinct part value.
    pub fn aut_count(&self) -> BigInt {
        let mut acc = BigInt::one();
        let mut i = 0;
        while i < self.0.len() {
            let mut j = i;
            while j < self.0.len() && self.0[j] == self.0[i] {
                j += 1;
            }
            acc *= factorial((j - i) as u64);
            i = j;
        }
        acc
    }

    /// Number of permutations in S_d with this cycle type:
    /// d! / (aut_count * product of parts).
    pub fn cycle_type_count(&self) -> BigInt {
        let prod: BigInt = self.0.iter().map(|&p| BigInt::from(p)).product();
        factorial(self.degree()) / (self.aut_count() * prod)
    }

    /// Distinct sub-multisets, each as (sub, complement); includes the empty
    /// and the full sub-multiset.
    pub fn sub_multisets(&self) -> Vec<(Partition, Partition)> {
        // Distinct part values with multiplicities.
        let mut vals: Vec<(u32, usize)> = Vec::new();
        for &p in &self.0 {
            match vals.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => vals.push((p, 1)),
            }
        }
        let mut out = Vec::new();
        let mut take = vec![0usize; vals.len()];
        loop {
            let mut sub = Vec::new();
            let mut rest = Vec::new();
            for (idx, &(v, m)) in vals.iter().enumerate() {
                sub.extend(std::iter::repeat_n(v, take[idx]));
                rest.extend(std::iter::repeat_n(v, m - take[idx]));
            }
            out.push((Partition(sub), Partition(rest)));
            // Odometer over per-value counts.
            let mut idx = 0;
            loop {
                if idx == vals.len() {
                    return out;
                }
                if take[idx] < vals[idx].1 {
                    take[idx] += 1;
                    break;
                }
                take[idx] = 0;
                idx += 1;
            }
        }
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    /// Parses "4" or "2,2" or "3,1,1".
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Invalid(format!("bad partition part {t:?}")))
            })
            .collect::<Result<Vec<u32>>>()?;
        if parts.is_empty() {
            return Err(Error::Invalid("empty partition".into()));
        }
        Partition::new(parts)
    }
}

/// All partitions of d, in descending lexicographic order of part lists.
pub fn partitions_of(d: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(remaining: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if remaining == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        let mut p = max.min(remaining);
        while p >= 1 {
            cur.push(p);
            rec(remaining - p, p, cur, out);
            cur.pop();
            p -= 1;
        }
    }
    rec(d, d, &mut cur, &mut out);
    out
}

/// Number of simple branch points forced by Riemann–Hurwitz for a connected
/// genus-g cover with profiles eta and nu: 2g − 2 + ℓ(η) + ℓ(ν).
pub fn riemann_hurwitz_s(genus: u32, eta: &Partition, nu: &Partition) -> Result<u32> {
    if eta.degree() != nu.degree() {
        return Err(Error::DegreeMismatch(eta.degree(), nu.degree()));
    }
    let s = 2 * genus as i64 - 2 + eta.len() as i64 + nu.len() as i64;
    if s < 0 {
        return Err(Error::NegativeBranchCount(s));
    }
    Ok(s as u32)
}

/// Validated input for a double Hurwitz number.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HurwitzInput {
    pub genus: u32,
    pub eta: Partition,
    pub nu: Partition,
    /// Number of simple branch points, 2g − 2 + ℓ(η) + ℓ(ν).
    pub s: u32,
}

impl HurwitzInput {
    pub fn new(genus: u32, eta: Partition, nu: Partition) -> Result<Self> {
        let s = riemann_hurwitz_s(genus, &eta, &nu)?;
        Ok(HurwitzInput { genus, eta, nu, s })
    }

    pub fn degree(&self) -> u64 {
        self.eta.degree()
    }

    /// Same cover read with the two special fibers exchanged.
    pub fn swapped(&self) -> Self {
        HurwitzInput {
            genus: self.genus,
            eta: self.nu.clone(),
            nu: self.eta.clone(),
            s: self.s,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorial;
    use num::Zero;

    #[test]
    fn aut_counts() {
        let p = |v: Vec<u32>| Partition::new(v).unwrap();
        assert_eq!(p(vec![4]).aut_count(), BigInt::from(1));
        assert_eq!(p(vec![2, 2]).aut_count(), BigInt::from(2));
        assert_eq!(p(vec![3, 1, 1, 1]).aut_count(), BigInt::from(6));
        assert_eq!(p(vec![2, 2, 1, 1]).aut_count(), BigInt::from(4));
    }

    #[test]
    fn cycle_type_counts() {
        let p = |v: Vec<u32>| Partition::new(v).unwrap();
        assert_eq!(p(vec![4]).cycle_type_count(), BigInt::from(6));
        assert_eq!(p(vec![2, 2]).cycle_type_count(), BigInt::from(3));
        assert_eq!(p(vec![1, 1, 1, 1, 1]).cycle_type_count(), BigInt::from(1));
        assert_eq!(p(vec![3]).cycle_type_count(), BigInt::from(2));
    }

    // Independent oracle for cycle_type_count at d = 4: enumerate all 24
    // permutations of S_4 and classify by cycle type.
    #[test]
    fn cycle_type_count_matches_s4_enumeration() {
        use crate::perm::Perm;
        let mut counts = std::collections::HashMap::new();
        for p in Perm::all(4) {
            *counts.entry(p.cycle_type()).or_insert(0u32) += 1;
        }
        for (ct, n) in counts {
            assert_eq!(ct.cycle_type_count(), BigInt::from(n), "type {ct}");
        }
    }

    // epsilon(p) * |Aut(p)| * prod(parts) = d! for every partition, d <= 9.
    #[test]
    fn class_size_identity() {
        for d in 1..=9u32 {
            for p in partitions_of(d) {
                let prod: BigInt = p.parts().iter().map(|&x| BigInt::from(x)).product();
                assert_eq!(
                    p.cycle_type_count() * p.aut_count() * prod,
                    factorial(d as u64),
                    "partition {p}"
                );
            }
        }
    }

    // Class sizes add up to the group order.
    #[test]
    fn class_sizes_sum_to_group_order() {
        for d in 1..=9u32 {
            let total: BigInt = partitions_of(d).iter().map(|p| p.cycle_type_count()).sum();
            assert_eq!(total, factorial(d as u64));
        }
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions_of(1).len(), 1);
        assert_eq!(partitions_of(5).len(), 7);
        assert_eq!(partitions_of(9).len(), 30);
        // Weakly decreasing and correct degree everywhere.
        for p in partitions_of(7) {
            assert!(p.parts().windows(2).all(|w| w[0] >= w[1]));
            assert_eq!(p.degree(), 7);
        }
    }

    #[test]
    fn sub_multisets_of_2211() {
        let p = Partition::new(vec![2, 2, 1, 1]).unwrap();
        let subs = p.sub_multisets();
        // (mult 2 + 1) * (mult 2 + 1) = 9 distinct sub-multisets.
        assert_eq!(subs.len(), 9);
        for (sub, rest) in &subs {
            assert_eq!(sub.degree() + rest.degree(), 6);
        }
    }

    #[test]
    fn riemann_hurwitz_values() {
        let p = |v: Vec<u32>| Partition::new(v).unwrap();
        // Torus cover of degree 4 with profiles (4) and (2,2): three simple points.
        assert_eq!(riemann_hurwitz_s(1, &p(vec![4]), &p(vec![2, 2])).unwrap(), 3);
        // Full ramification both ends, genus 0: none.
        assert_eq!(riemann_hurwitz_s(0, &p(vec![5]), &p(vec![5])).unwrap(), 0);
        // Identity cover of degree 1.
        assert_eq!(riemann_hurwitz_s(0, &p(vec![1]), &p(vec![1])).unwrap(), 0);
        assert_eq!(
            riemann_hurwitz_s(0, &p(vec![3]), &p(vec![2, 2])),
            Err(Error::DegreeMismatch(3, 4))
        );
    }

    #[test]
    fn parse_and_display() {
        let p: Partition = "3,1,2".parse().unwrap();
        assert_eq!(p.parts(), &[3, 2, 1]);
        assert_eq!(p.to_string(), "3,2,1");
        assert!("0,1".parse::<Partition>().is_err());
        assert!("".parse::<Partition>().is_err());
        assert!("x".parse::<Partition>().is_err());
    }

    #[test]
    fn zero_parts_rejected() {
        assert_eq!(Partition::new(vec![2, 0]), Err(Error::ZeroPart));
        assert!(!BigInt::zero().is_one());
    }
}
