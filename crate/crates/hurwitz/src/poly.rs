//! Linear forms and multivariate polynomials over the chamber variables
//! m1..mk (in-ends) and n1..nl (out-ends), with exact rational coefficients.

use crate::{rat, rational_string, BigInt, Error, Rational, Result};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Variable id; Mu(i) is m{i+1}, Nu(j) is n{j+1}. All Mu sort before all Nu.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Var {
    Mu(usize),
    Nu(usize),
}

impl Var {
    /// Position in an exponent vector for k in-variables and l out-variables.
    pub fn index(self, k: usize) -> usize {
        match self {
            Var::Mu(i) => i,
            Var::Nu(j) => k + j,
        }
    }

    pub fn from_index(idx: usize, k: usize) -> Var {
        if idx < k {
            Var::Mu(idx)
        } else {
            Var::Nu(idx - k)
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::Mu(i) => write!(f, "m{}", i + 1),
            Var::Nu(j) => write!(f, "n{}", j + 1),
        }
    }
}

/// Integer linear form with no constant term.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LinearForm {
    coeffs: BTreeMap<Var, BigInt>,
}

impl LinearForm {
    pub fn zero() -> Self {
        LinearForm::default()
    }

    pub fn variable(v: Var) -> Self {
        let mut f = LinearForm::zero();
        f.add_term(v, BigInt::one());
        f
    }

    pub fn add_term(&mut self, v: Var, c: impl Into<BigInt>) {
        let c = c.into();
        let entry = self.coeffs.entry(v).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&v);
        }
    }

    pub fn coeff(&self, v: Var) -> BigInt {
        self.coeffs.get(&v).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Var, &BigInt)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &LinearForm) -> LinearForm {
        let mut out = self.clone();
        for (v, c) in &other.coeffs {
            out.add_term(*v, c.clone());
        }
        out
    }

    pub fn neg(&self) -> LinearForm {
        let mut out = LinearForm::zero();
        for (v, c) in &self.coeffs {
            out.add_term(*v, -c.clone());
        }
        out
    }

    pub fn sub(&self, other: &LinearForm) -> LinearForm {
        self.add(&other.neg())
    }

    /// Value at a rational point given as (mu values, nu values).
    pub fn evaluate(&self, mu: &[Rational], nu: &[Rational]) -> Rational {
        let mut acc = Rational::zero();
        for (v, c) in &self.coeffs {
            let x = match v {
                Var::Mu(i) => &mu[*i],
                Var::Nu(j) => &nu[*j],
            };
            acc += Rational::from_integer(c.clone()) * x;
        }
        acc
    }

    /// Sum of mu over I minus sum of nu over J (0-based index sets).
    pub fn wall_form(i_set: &[usize], j_set: &[usize]) -> LinearForm {
        let mut f = LinearForm::zero();
        for &i in i_set {
            f.add_term(Var::Mu(i), 1);
        }
        for &j in j_set {
            f.add_term(Var::Nu(j), -1);
        }
        f
    }

    pub fn to_poly(&self, k: usize, l: usize) -> Poly {
        let mut p = Poly::zero(k, l);
        for (v, c) in &self.coeffs {
            let mut exp = vec![0u32; k + l];
            exp[v.index(k)] = 1;
            p.add_assign_term(Monomial(exp), rat(c.clone()));
        }
        p
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, c) in &self.coeffs {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if mag.is_one() {
                write!(f, "{v}")?;
            } else {
                write!(f, "{mag}*{v}")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Exponent vector; ordered by total degree, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse multivariate polynomial in k + l variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    k: usize,
    l: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Poly {
    pub fn zero(k: usize, l: usize) -> Self {
        Poly {
            k,
            l,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(k: usize, l: usize, c: Rational) -> Self {
        let mut p = Poly::zero(k, l);
        p.add_assign_term(Monomial(vec![0; k + l]), c);
        p
    }

    pub fn one(k: usize, l: usize) -> Self {
        Poly::constant(k, l, Rational::one())
    }

    pub fn var(k: usize, l: usize, v: Var) -> Self {
        LinearForm::variable(v).to_poly(k, l)
    }

    pub fn vars(&self) -> (usize, usize) {
        (self.k, self.l)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub(crate) fn add_assign_term(&mut self, m: Monomial, c: Rational) {
        debug_assert_eq!(m.0.len(), self.k + self.l);
        if c.is_zero() {
            return;
        }
        let new = match self.terms.get(&m) {
            Some(old) => old + c,
            None => c,
        };
        if new.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, new);
        }
    }

    fn assert_same_vars(&self, other: &Poly) {
        assert!(
            self.k == other.k && self.l == other.l,
            "polynomial variable sets differ: ({},{}) vs ({},{})",
            self.k,
            self.l,
            other.k,
            other.l
        );
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.assert_same_vars(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_assign_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        let mut out = Poly::zero(self.k, self.l);
        for (m, c) in &self.terms {
            out.add_assign_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        let mut out = Poly::zero(self.k, self.l);
        if c.is_zero() {
            return out;
        }
        for (m, coeff) in &self.terms {
            out.add_assign_term(m.clone(), coeff * c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        self.assert_same_vars(other);
        let mut out = Poly::zero(self.k, self.l);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let exp: Vec<u32> = m1.0.iter().zip(&m2.0).map(|(a, b)| a + b).collect();
                out.add_assign_term(Monomial(exp), c1 * c2);
            }
        }
        out
    }

    /// Value at a rational point given as (mu values, nu values).
    pub fn evaluate(&self, mu: &[Rational], nu: &[Rational]) -> Rational {
        assert_eq!(mu.len(), self.k);
        assert_eq!(nu.len(), self.l);
        let point: Vec<&Rational> = mu.iter().chain(nu.iter()).collect();
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (idx, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term *= point[idx];
                }
            }
            acc += term;
        }
        acc
    }

    pub fn evaluate_ints(&self, mu: &[u32], nu: &[u32]) -> Rational {
        let mu: Vec<Rational> = mu.iter().map(|&x| rat(x)).collect();
        let nu: Vec<Rational> = nu.iter().map(|&x| rat(x)).collect();
        self.evaluate(&mu, &nu)
    }

    /// Ring map into the (k, l) target space: variable at position i is
    /// replaced by images[i]. Rejected unless every variable has an image.
    pub fn substitute(&self, target_k: usize, target_l: usize, images: &[LinearForm]) -> Result<Poly> {
        if images.len() != self.k + self.l {
            return Err(Error::SubstitutionArity {
                expected: self.k + self.l,
                got: images.len(),
            });
        }
        let image_polys: Vec<Poly> = images
            .iter()
            .map(|f| f.to_poly(target_k, target_l))
            .collect();
        let mut out = Poly::zero(target_k, target_l);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(target_k, target_l, c.clone());
            for (idx, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&image_polys[idx]);
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Eliminates the last out-variable using the balance relation
    /// n_l := m_1 + .. + m_k − n_1 − .. − n_{l−1}. Canonical form for
    /// polynomial identities that hold on the balance hyperplane.
    pub fn reduce_balance(&self) -> Poly {
        assert!(self.l >= 1, "no out-variable to eliminate");
        let mut images: Vec<LinearForm> = (0..self.k + self.l)
            .map(|idx| LinearForm::variable(Var::from_index(idx, self.k)))
            .collect();
        let mut last = LinearForm::zero();
        for i in 0..self.k {
            last.add_term(Var::Mu(i), 1);
        }
        for j in 0..self.l - 1 {
            last.add_term(Var::Nu(j), -1);
        }
        images[self.k + self.l - 1] = last;
        self.substitute(self.k, self.l, &images)
            .expect("arity matches by construction")
    }

    /// Common total degree of all terms, if the polynomial is homogeneous
    /// and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = m.total_degree();
            match deg {
                None => deg = Some(d),
                Some(e) if e != d => return None,
                _ => {}
            }
        }
        deg
    }
}

impl fmt::Display for Poly {
    /// Canonical text: terms in descending graded-lex order, e.g.
    /// "2*m1 - 2*n1" or "m1^2 - 2*m1*n1 + n1^2" or "0".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            for (idx, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = Var::from_index(idx, self.k);
                if e == 1 {
                    factors.push(format!("{v}"));
                } else {
                    factors.push(format!("{v}^{e}"));
                }
            }
            if factors.is_empty() {
                write!(f, "{}", rational_string(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", rational_string(&mag), factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio;

    fn mu(i: usize) -> Var {
        Var::Mu(i)
    }
    fn nu(j: usize) -> Var {
        Var::Nu(j)
    }

    #[test]
    fn linear_form_algebra() {
        let f = LinearForm::wall_form(&[0], &[0]); // m1 - n1
        let g = LinearForm::wall_form(&[1], &[1]); // m2 - n2
        let h = f.add(&g);
        assert_eq!(h.coeff(mu(0)), BigInt::one());
        assert_eq!(h.coeff(nu(1)), BigInt::from(-1));
        assert!(f.sub(&f).is_zero());
        let val = f.evaluate(&[rat(3), rat(1)], &[rat(2), rat(2)]);
        assert_eq!(val, rat(1));
    }

    #[test]
    fn display_forms() {
        let f = LinearForm::wall_form(&[0], &[0]);
        assert_eq!(f.to_string(), "m1 - n1");
        let mut g = LinearForm::zero();
        g.add_term(mu(0), 2);
        g.add_term(nu(0), -2);
        assert_eq!(g.to_string(), "2*m1 - 2*n1");
        assert_eq!(LinearForm::zero().to_string(), "0");
    }

    #[test]
    fn poly_display_canonical() {
        // 2*m1 - 2*n1 in (k,l) = (2,2).
        let mut f = LinearForm::zero();
        f.add_term(mu(0), 2);
        f.add_term(nu(0), -2);
        assert_eq!(f.to_poly(2, 2).to_string(), "2*m1 - 2*n1");

        // (m1 - n1)^2 = m1^2 - 2*m1*n1 + n1^2 in (1,1).
        let d = LinearForm::wall_form(&[0], &[0]).to_poly(1, 1);
        assert_eq!(d.mul(&d).to_string(), "m1^2 - 2*m1*n1 + n1^2");

        assert_eq!(Poly::zero(1, 1).to_string(), "0");
        assert_eq!(
            Poly::constant(1, 1, ratio(1, 2)).to_string(),
            "1/2"
        );
        // Graded order: degree-2 term prints before degree-1 term.
        let p = d.mul(&d).add(&d.scale(&rat(3)));
        assert_eq!(
            p.to_string(),
            "m1^2 - 2*m1*n1 + n1^2 + 3*m1 - 3*n1"
        );
    }

    #[test]
    fn mul_matches_evaluation() {
        let f = LinearForm::wall_form(&[0, 1], &[0]).to_poly(2, 2);
        let g = LinearForm::wall_form(&[0], &[1]).to_poly(2, 2);
        let prod = f.mul(&g);
        let mu_pt = [rat(5), rat(2)];
        let nu_pt = [rat(3), rat(4)];
        assert_eq!(
            prod.evaluate(&mu_pt, &nu_pt),
            f.evaluate(&mu_pt, &nu_pt) * g.evaluate(&mu_pt, &nu_pt)
        );
    }

    #[test]
    fn substitute_delta_square() {
        // delta := m1 - n1 substituted into x^2, where x is the single
        // nu-variable of a (0,1) polynomial space... use (1,1): substitute
        // the nu variable by m1 - n1 into n1^2.
        let p = Poly::var(1, 1, nu(0)).mul(&Poly::var(1, 1, nu(0)));
        let images = vec![
            LinearForm::variable(mu(0)),
            LinearForm::wall_form(&[0], &[0]),
        ];
        let q = p.substitute(1, 1, &images).unwrap();
        assert_eq!(q.to_string(), "m1^2 - 2*m1*n1 + n1^2");
        // Mismatched arity rejected.
        assert!(p.substitute(1, 1, &images[..1]).is_err());
    }

    #[test]
    fn substitution_commutes_with_evaluation() {
        // Substitute, then evaluate == evaluate images, then evaluate original.
        let p = {
            let a = LinearForm::wall_form(&[0], &[0]).to_poly(1, 2);
            let b = LinearForm::wall_form(&[0], &[1]).to_poly(1, 2);
            a.mul(&b).add(&a.scale(&ratio(7, 3)))
        };
        let images = vec![
            LinearForm::wall_form(&[0, 1], &[]),
            LinearForm::wall_form(&[1], &[0]),
            LinearForm::variable(nu(1)),
        ];
        let q = p.substitute(2, 2, &images).unwrap();
        let mu_pt = [rat(4), rat(9)];
        let nu_pt = [rat(2), rat(11)];
        let img_mu = [images[0].evaluate(&mu_pt, &nu_pt)];
        let img_nu = [
            images[1].evaluate(&mu_pt, &nu_pt),
            images[2].evaluate(&mu_pt, &nu_pt),
        ];
        assert_eq!(q.evaluate(&mu_pt, &nu_pt), p.evaluate(&img_mu, &img_nu));
    }

    #[test]
    fn balance_reduction() {
        // m1 - m2 - n1 + n2 reduces to 2*m1 - 2*n1 modulo n2 = m1 + m2 - n1.
        let mut f = LinearForm::zero();
        f.add_term(mu(0), 1);
        f.add_term(mu(1), -1);
        f.add_term(nu(0), -1);
        f.add_term(nu(1), 1);
        let p = f.to_poly(2, 2).reduce_balance();
        assert_eq!(p.to_string(), "2*m1 - 2*n1");
        // Reduction is idempotent.
        assert_eq!(p.reduce_balance(), p);
    }

    #[test]
    fn homogeneity() {
        let a = LinearForm::wall_form(&[0], &[0]).to_poly(1, 1);
        assert_eq!(a.homogeneous_degree(), Some(1));
        assert_eq!(a.mul(&a).homogeneous_degree(), Some(2));
        assert_eq!(a.add(&Poly::one(1, 1)).homogeneous_degree(), None);
        assert_eq!(Poly::zero(1, 1).homogeneous_degree(), None);
        assert_eq!(Poly::one(1, 1).homogeneous_degree(), Some(0));
    }

    #[test]
    fn graded_lex_order() {
        let m = |v: Vec<u32>| Monomial(v);
        assert!(m(vec![0, 1]) < m(vec![1, 0])); // same degree, lex
        assert!(m(vec![1, 0]) < m(vec![0, 2])); // degree dominates
        assert!(m(vec![2, 0]) > m(vec![1, 1]));
    }

    use proptest::prelude::{proptest, Strategy};

    /// Product of up to three small linear forms in the (2, 2) variables.
    fn random_poly() -> impl Strategy<Value = Poly> {
        let form = proptest::collection::vec((0usize..4, -5i64..=5), 1..4).prop_map(|terms| {
            let mut f = LinearForm::zero();
            for (idx, c) in terms {
                f.add_term(Var::from_index(idx, 2), c);
            }
            f
        });
        proptest::collection::vec(form, 1..4).prop_map(|fs| {
            fs.iter().fold(Poly::one(2, 2), |acc, f| acc.mul(&f.to_poly(2, 2)))
        })
    }

    proptest! {
        #[test]
        fn evaluation_is_a_ring_map(
            p in random_poly(),
            q in random_poly(),
            point in proptest::collection::vec(-7i64..=7, 4),
        ) {
            let mu: Vec<Rational> = point[..2].iter().map(|&x| rat(x)).collect();
            let nu: Vec<Rational> = point[2..].iter().map(|&x| rat(x)).collect();
            proptest::prop_assert_eq!(
                p.add(&q).evaluate(&mu, &nu),
                p.evaluate(&mu, &nu) + q.evaluate(&mu, &nu)
            );
            proptest::prop_assert_eq!(
                p.mul(&q).evaluate(&mu, &nu),
                p.evaluate(&mu, &nu) * q.evaluate(&mu, &nu)
            );
        }

        #[test]
        fn balance_reduction_is_exact_on_the_hyperplane(
            p in random_poly(),
            point in proptest::collection::vec(-7i64..=7, 3),
        ) {
            // Any point with equal totals; positivity is irrelevant here.
            let mu = vec![rat(point[0]), rat(point[1])];
            let nu = vec![rat(point[2]), rat(point[0] + point[1] - point[2])];
            let reduced = p.reduce_balance();
            proptest::prop_assert_eq!(reduced.evaluate(&mu, &nu), p.evaluate(&mu, &nu));
            // The eliminated variable is gone from every term.
            proptest::prop_assert!(reduced.terms().all(|(m, _)| m.0[3] == 0));
        }
    }
}
