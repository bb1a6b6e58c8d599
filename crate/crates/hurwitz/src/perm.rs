//! Permutations of {0..d-1} in one-line notation.

use crate::partition::Partition;

/// Permutation; entry i is the image of i.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Perm(pub Vec<u8>);

impl Perm {
    pub fn identity(d: usize) -> Self {
        Perm((0..d as u8).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    /// Composition acting left-to-right as functions: (self * other)(x) = other(self(x)).
    /// Used as "then": first self, then other.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Perm(inv)
    }

    /// The transposition (a b) in S_d.
    pub fn transposition(d: usize, a: usize, b: usize) -> Perm {
        let mut p = Perm::identity(d);
        p.0.swap(a, b);
        p
    }

    /// Multiplies by the transposition (a b) on the left in place:
    /// self becomes (a b) ∘ self (apply self first, then swap a and b).
    pub fn swap_values(&mut self, a: u8, b: u8) {
        for x in self.0.iter_mut() {
            if *x == a {
                *x = b;
            } else if *x == b {
                *x = a;
            }
        }
    }

    pub fn cycle_type(&self) -> Partition {
        let mut seen = vec![false; self.0.len()];
        let mut parts = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0u32;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            parts.push(len);
        }
        Partition::new(parts).expect("cycle lengths are positive")
    }

    /// Number of cycles, including fixed points.
    pub fn cycle_count(&self) -> usize {
        let mut seen = vec![false; self.0.len()];
        let mut n = 0;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            n += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
            }
        }
        n
    }

    /// All d! permutations of degree d (Heap's algorithm); d kept small by callers.
    pub fn all(d: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut arr: Vec<u8> = (0..d as u8).collect();
        fn heap(k: usize, arr: &mut Vec<u8>, out: &mut Vec<Perm>) {
            if k <= 1 {
                out.push(Perm(arr.clone()));
                return;
            }
            for i in 0..k {
                heap(k - 1, arr, out);
                if k.is_multiple_of(2) {
                    arr.swap(i, k - 1);
                } else {
                    arr.swap(0, k - 1);
                }
            }
        }
        heap(d, &mut arr, &mut out);
        out
    }

    /// One canonical representative of the conjugacy class with the given
    /// cycle type: consecutive cycles (0 1 .. n1-1)(n1 ..) ...
    pub fn class_representative(ct: &Partition) -> Perm {
        let d = ct.degree() as usize;
        let mut p = vec![0u8; d];
        let mut base = 0usize;
        for &part in ct.parts() {
            let part = part as usize;
            for i in 0..part {
                p[base + i] = (base + (i + 1) % part) as u8;
            }
            base += part;
        }
        Perm(p)
    }

    /// All members of the conjugacy class with the given cycle type.
    pub fn class_members(ct: &Partition) -> Vec<Perm> {
        let d = ct.degree() as usize;
        let mut out = Vec::new();
        let mut assigned = vec![false; d];
        let mut image = vec![0u8; d];
        // Remaining multiset of cycle lengths, as sorted list we consume from.
        let mut lengths: Vec<u32> = ct.parts().to_vec();
        fn rec(
            assigned: &mut Vec<bool>,
            image: &mut Vec<u8>,
            lengths: &mut Vec<u32>,
            out: &mut Vec<Perm>,
        ) {
            let start = match assigned.iter().position(|&a| !a) {
                None => {
                    out.push(Perm(image.clone()));
                    return;
                }
                Some(s) => s,
            };
            // The smallest unassigned element opens a cycle of each distinct
            // remaining length; the rest of the cycle is any ordered choice.
            let mut tried = Vec::new();
            for li in 0..lengths.len() {
                let len = lengths[li];
                if tried.contains(&len) {
                    continue;
                }
                tried.push(len);
                lengths.swap_remove(li);
                assigned[start] = true;
                let mut cycle = vec![start];
                fn fill(
                    cycle: &mut Vec<usize>,
                    len: usize,
                    start: usize,
                    assigned: &mut Vec<bool>,
                    image: &mut Vec<u8>,
                    lengths: &mut Vec<u32>,
                    out: &mut Vec<Perm>,
                ) {
                    if cycle.len() == len {
                        for w in 0..len {
                            image[cycle[w]] = cycle[(w + 1) % len] as u8;
                        }
                        rec(assigned, image, lengths, out);
                        return;
                    }
                    for next in start + 1..assigned.len() {
                        if !assigned[next] {
                            assigned[next] = true;
                            cycle.push(next);
                            fill(cycle, len, start, assigned, image, lengths, out);
                            cycle.pop();
                            assigned[next] = false;
                        }
                    }
                }
                fill(
                    &mut cycle,
                    len as usize,
                    start,
                    assigned,
                    image,
                    lengths,
                    out,
                );
                assigned[start] = false;
                lengths.push(len);
                let li2 = lengths.len() - 1;
                lengths.swap(li, li2);
            }
        }
        rec(&mut assigned, &mut image, &mut lengths, &mut out);
        out
    }
}

/// All transpositions (a b), a < b, of S_d.
pub fn transpositions(d: usize) -> Vec<(u8, u8)> {
    let mut out = Vec::new();
    for a in 0..d as u8 {
        for b in a + 1..d as u8 {
            out.push((a, b));
        }
    }
    out
}
