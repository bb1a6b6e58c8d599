//! Exact integer linear algebra for small dense matrices: determinants,
//! rank, Smith normal form, and saturated kernel bases. Everything works on
//! `Vec<Vec<BigInt>>` rows; the matrices in this crate stay tiny.

use crate::BigInt;
use num::{One, Signed, Zero};

/// Fraction-free Bareiss determinant of a square matrix.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    for row in m {
        assert_eq!(row.len(), n, "determinant needs a square matrix");
    }
    if n == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = num / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Smith normal form data. `divisors` are the nonzero diagonal entries
/// d_1 | d_2 | .., all positive; `right` is the unimodular column transform
/// V with A·V in Smith form, stored as rows of an n×n matrix.
pub struct SmithForm {
    pub divisors: Vec<BigInt>,
    pub right: Vec<Vec<BigInt>>,
}

pub fn smith_form(m: &[Vec<BigInt>]) -> SmithForm {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    for row in m {
        assert_eq!(row.len(), cols, "ragged matrix");
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut v: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| {
            (0..cols)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect();

    let swap_cols = |a: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, c1: usize, c2: usize| {
        for row in a.iter_mut() {
            row.swap(c1, c2);
        }
        for row in v.iter_mut() {
            row.swap(c1, c2);
        }
    };
    // col[c2] += q * col[c1]
    let add_col = |a: &mut Vec<Vec<BigInt>>, v: &mut Vec<Vec<BigInt>>, c1: usize, c2: usize, q: &BigInt| {
        for row in a.iter_mut() {
            let t = &row[c1] * q;
            row[c2] += t;
        }
        for row in v.iter_mut() {
            let t = &row[c1] * q;
            row[c2] += t;
        }
    };
    // row[r2] += q * row[r1], requires r1 < r2
    let add_row = |a: &mut Vec<Vec<BigInt>>, r1: usize, r2: usize, q: &BigInt| {
        let (lo, hi) = a.split_at_mut(r2);
        for (dst, src) in hi[0].iter_mut().zip(&lo[r1]) {
            let t = src * q;
            *dst += t;
        }
    };

    let mut t = 0;
    while t < rows.min(cols) {
        // Find a pivot in the remaining block.
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero());
        let (pi, pj) = match pivot {
            Some(p) => p,
            None => break,
        };
        a.swap(t, pi);
        if pj != t {
            swap_cols(&mut a, &mut v, t, pj);
        }
        loop {
            // Clear the pivot row with column operations.
            let mut dirty = false;
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = -(&a[t][j] / &a[t][t]);
                if !q.is_zero() {
                    add_col(&mut a, &mut v, t, j, &q);
                }
                if !a[t][j].is_zero() {
                    // Remainder smaller than the pivot: swap it in.
                    swap_cols(&mut a, &mut v, t, j);
                    dirty = true;
                }
            }
            // Clear the pivot column with row operations.
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = -(&a[i][t] / &a[t][t]);
                if !q.is_zero() {
                    add_row(&mut a, t, i, &q);
                }
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
        }
        t += 1;
    }

    // Enforce the divisibility chain d_i | d_{i+1}.
    let r = t;
    loop {
        let mut changed = false;
        for i in 0..r.saturating_sub(1) {
            let (di, dj) = (a[i][i].clone(), a[i + 1][i + 1].clone());
            if (&dj % &di).is_zero() {
                continue;
            }
            // Fold column i+1 into column i, then re-reduce the 2x2 block.
            add_col(&mut a, &mut v, i + 1, i, &BigInt::one());
            loop {
                if a[i + 1][i].is_zero() && a[i][i + 1].is_zero() {
                    break;
                }
                if !a[i + 1][i].is_zero() {
                    if a[i][i].is_zero()
                        || a[i + 1][i].magnitude() < a[i][i].magnitude()
                    {
                        a.swap(i, i + 1);
                    }
                    let q = -(&a[i + 1][i] / &a[i][i]);
                    add_row(&mut a, i, i + 1, &q);
                }
                if !a[i][i + 1].is_zero() {
                    let q = -(&a[i][i + 1] / &a[i][i]);
                    add_col(&mut a, &mut v, i, i + 1, &q);
                    if !a[i][i + 1].is_zero() {
                        swap_cols(&mut a, &mut v, i, i + 1);
                    }
                }
            }
            changed = true;
        }
        if !changed {
            break;
        }
    }

    let divisors = a.iter().take(r).enumerate().map(|(i, row)| row[i].abs()).collect();
    SmithForm { divisors, right: v }
}

pub fn rank(m: &[Vec<BigInt>]) -> usize {
    smith_form(m).divisors.len()
}

/// Basis of the integer kernel of A, saturated (any integer kernel vector is
/// an integer combination of the basis). Vectors are returned as rows.
pub fn kernel_basis(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let snf = smith_form(m);
    let r = snf.divisors.len();
    (r..cols)
        .map(|j| snf.right.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Index of the image lattice A(Z^n) inside Z^rows; requires full row rank.
pub fn lattice_index(m: &[Vec<BigInt>]) -> BigInt {
    let snf = smith_form(m);
    assert_eq!(
        snf.divisors.len(),
        m.len(),
        "lattice index needs full row rank"
    );
    snf.divisors.into_iter().product()
}

/// Matrix product of row-major matrices.
pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = if a.is_empty() { 0 } else { a[0].len() };
    assert_eq!(b.len(), inner, "dimension mismatch");
    let bcols = if b.is_empty() { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..bcols)
                .map(|j| (0..inner).map(|k| &row[k] * &b[k][j]).sum())
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn mat(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    #[test]
    fn determinant_basics() {
        assert_eq!(determinant(&mat(&[])), BigInt::one());
        assert_eq!(determinant(&mat(&[&[5]])), BigInt::from(5));
        assert_eq!(determinant(&mat(&[&[1, 2], &[3, 4]])), BigInt::from(-2));
        assert_eq!(determinant(&mat(&[&[1, 2], &[2, 4]])), BigInt::zero());
        assert_eq!(
            determinant(&mat(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])),
            BigInt::from(-1)
        );
        assert_eq!(
            determinant(&mat(&[&[2, 0, 1], &[1, 3, 2], &[0, 1, 4]])),
            BigInt::from(21)
        );
    }

    #[test]
    fn determinant_is_multiplicative() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..50 {
            let a: Vec<Vec<BigInt>> = (0..3)
                .map(|_| (0..3).map(|_| BigInt::from(rng.gen_range(-5i64..=5))).collect())
                .collect();
            let b: Vec<Vec<BigInt>> = (0..3)
                .map(|_| (0..3).map(|_| BigInt::from(rng.gen_range(-5i64..=5))).collect())
                .collect();
            assert_eq!(
                determinant(&mat_mul(&a, &b)),
                determinant(&a) * determinant(&b)
            );
        }
    }

    #[test]
    fn smith_divisors() {
        let s = smith_form(&mat(&[&[2, 4], &[6, 8]]));
        assert_eq!(s.divisors, vec![BigInt::from(2), BigInt::from(4)]);
        let s = smith_form(&mat(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.divisors, vec![BigInt::one(), BigInt::from(6)]);
        let s = smith_form(&mat(&[&[0, 0], &[0, 0]]));
        assert!(s.divisors.is_empty());
    }

    #[test]
    fn smith_right_transform_is_unimodular() {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
                if cur.len() == k {
                    out.push(cur.clone());
                    return;
                }
                for i in start..n {
                    cur.push(i);
                    rec(i + 1, n, k, cur, out);
                    cur.pop();
                }
            }
            let mut out = Vec::new();
            rec(0, n, k, &mut Vec::new(), &mut out);
            out
        }
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..60 {
            let rows = rng.gen_range(1..=3);
            let cols = rng.gen_range(1..=4);
            let a: Vec<Vec<BigInt>> = (0..rows)
                .map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(-6i64..=6))).collect())
                .collect();
            let s = smith_form(&a);
            let det_v = determinant(&s.right);
            assert!(det_v == BigInt::one() || det_v == BigInt::from(-1));
            // Columns of A·V past the rank are zero: only row operations are
            // missing from a full diagonalization.
            let av = mat_mul(&a, &s.right);
            for j in s.divisors.len()..cols {
                assert!(av.iter().all(|row| row[j].is_zero()), "A*V: {av:?}");
            }
            for w in s.divisors.windows(2) {
                assert!((&w[1] % &w[0]).is_zero(), "chain broken: {:?}", s.divisors);
            }
            // Independent oracle: d_i = D_i / D_{i-1} with D_i the gcd of all
            // i-by-i minors and D_0 = 1.
            let mut prev = BigInt::one();
            for i in 1..=rows.min(cols) {
                let mut g = BigInt::zero();
                for rs in subsets(rows, i) {
                    for cs in subsets(cols, i) {
                        let sub: Vec<Vec<BigInt>> = rs
                            .iter()
                            .map(|&ri| cs.iter().map(|&ci| a[ri][ci].clone()).collect())
                            .collect();
                        g = num::Integer::gcd(&g, &determinant(&sub).abs());
                    }
                }
                if i <= s.divisors.len() {
                    assert_eq!(&g / &prev, s.divisors[i - 1]);
                    prev = g;
                } else {
                    assert!(g.is_zero(), "minors past the rank must vanish");
                }
            }
        }
    }

    #[test]
    fn kernel_saturation() {
        let k = kernel_basis(&mat(&[&[1, 2]]));
        assert_eq!(k.len(), 1);
        let g = num::Integer::gcd(&k[0][0], &k[0][1]);
        assert_eq!(g, BigInt::one());
        // Same kernel even when the row has content 2.
        let k = kernel_basis(&mat(&[&[2, 4]]));
        assert_eq!(k.len(), 1);
        let g = num::Integer::gcd(&k[0][0], &k[0][1]);
        assert_eq!(g, BigInt::one());
    }

    #[test]
    fn kernel_annihilates() {
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..60 {
            let rows = rng.gen_range(1..=3);
            let cols = rng.gen_range(1..=5);
            let a: Vec<Vec<BigInt>> = (0..rows)
                .map(|_| (0..cols).map(|_| BigInt::from(rng.gen_range(-6i64..=6))).collect())
                .collect();
            let kb = kernel_basis(&a);
            assert_eq!(rank(&a) + kb.len(), cols);
            for v in &kb {
                for row in &a {
                    let dot: BigInt = row.iter().zip(v).map(|(x, y)| x * y).sum();
                    assert!(dot.is_zero());
                }
            }
        }
    }

    #[test]
    fn index_of_image_lattice() {
        assert_eq!(lattice_index(&mat(&[&[2]])), BigInt::from(2));
        assert_eq!(lattice_index(&mat(&[&[2, 3]])), BigInt::one());
        assert_eq!(
            lattice_index(&mat(&[&[2, 0], &[0, 2]])),
            BigInt::from(4)
        );
    }

    #[test]
    #[should_panic(expected = "full row rank")]
    fn index_rejects_rank_deficiency() {
        lattice_index(&mat(&[&[1, 1], &[1, 1]]));
    }

    #[test]
    fn product_of_divisors_matches_determinant() {
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..40 {
            let n = rng.gen_range(1..=3);
            let a: Vec<Vec<BigInt>> = (0..n)
                .map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-5i64..=5))).collect())
                .collect();
            let det = determinant(&a).abs();
            if det.is_zero() {
                continue;
            }
            let prod: BigInt = smith_form(&a).divisors.into_iter().product();
            assert_eq!(prod, det);
        }
    }
}
