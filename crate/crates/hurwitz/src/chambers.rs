//! Chamber structure of genus-0 double Hurwitz numbers with marked
//! ramification points: walls, chambers with rational witnesses,
//! per-chamber polynomials, and wall crossings computed three independent
//! ways.
//!
//! Points live on the positive part of the balance hyperplane
//! sum(mu) = sum(nu). Walls are the hyperplanes
//! sum_{i in I} mu_i = sum_{j in J} nu_j for proper nonempty index sets;
//! inside a chamber the marked count is the fixed polynomial
//! sum over positively-weighted tree shapes of (order count) x (product of
//! internal edge forms).

use crate::poly::{LinearForm, Poly, Var};
use crate::trees::{enumerate_trees, DirectedTree};
use crate::{binomial, rational_string, Error, Rational, Result};
use num::{BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;

/// A wall: index sets I (in-ends) and J (out-ends), both proper and
/// nonempty, 0-based and sorted. Stored canonically: of the pair and its
/// complement (which cut out the same hyperplane on the balance plane),
/// the lexicographically smaller one.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Wall {
    i_set: Vec<usize>,
    j_set: Vec<usize>,
}

impl Wall {
    fn canonical(i_set: Vec<usize>, j_set: Vec<usize>, k: usize, l: usize) -> Wall {
        let ic: Vec<usize> = (0..k).filter(|i| !i_set.contains(i)).collect();
        let jc: Vec<usize> = (0..l).filter(|j| !j_set.contains(j)).collect();
        if (&ic, &jc) < (&i_set, &j_set) {
            Wall {
                i_set: ic,
                j_set: jc,
            }
        } else {
            Wall { i_set, j_set }
        }
    }

    pub fn i_set(&self) -> &[usize] {
        &self.i_set
    }

    pub fn j_set(&self) -> &[usize] {
        &self.j_set
    }

    pub fn delta(&self) -> LinearForm {
        LinearForm::wall_form(&self.i_set, &self.j_set)
    }
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 0", self.delta())
    }
}

/// All canonical walls of the (k, l) arrangement, sorted.
pub fn enumerate_walls(k: usize, l: usize) -> Vec<Wall> {
    let mut set = BTreeSet::new();
    for imask in 1..(1u32 << k) - 1 {
        for jmask in 1..(1u32 << l) - 1 {
            let i_set: Vec<usize> = (0..k).filter(|&i| imask >> i & 1 == 1).collect();
            let j_set: Vec<usize> = (0..l).filter(|&j| jmask >> j & 1 == 1).collect();
            set.insert(Wall::canonical(i_set, j_set, k, l));
        }
    }
    set.into_iter().collect()
}

/// A realizable strict sign assignment to every wall, with one interior
/// rational point as witness.
#[derive(Clone, Debug)]
pub struct Chamber {
    signs: Vec<bool>,
    witness_mu: Vec<Rational>,
    witness_nu: Vec<Rational>,
}

impl PartialEq for Chamber {
    fn eq(&self, other: &Self) -> bool {
        self.signs == other.signs
    }
}
impl Eq for Chamber {}

impl Chamber {
    /// Sign of the given wall's form: true means positive.
    pub fn sign(&self, wall_idx: usize) -> bool {
        self.signs[wall_idx]
    }

    pub fn signs(&self) -> &[bool] {
        &self.signs
    }

    pub fn witness(&self) -> (&[Rational], &[Rational]) {
        (&self.witness_mu, &self.witness_nu)
    }
}

/// Sign behaviour of an internal edge form over the whole arrangement.
#[derive(Clone, Copy, Debug)]
enum FormSign {
    /// Positive at every positive balanced point.
    Positive,
    Negative,
    /// Agrees with the wall's sign, or its negation when flipped.
    OnWall { idx: usize, flipped: bool },
}

/// The full (k, l) arrangement: trees, walls, chambers, and the sign
/// classification of every tree edge.
pub struct ChamberAtlas {
    k: usize,
    l: usize,
    walls: Vec<Wall>,
    trees: Vec<DirectedTree>,
    chambers: Vec<Chamber>,
    edge_signs: Vec<Vec<FormSign>>,
}

pub struct WallCrossingResult {
    pub wall: Wall,
    pub p1: Poly,
    pub p2: Poly,
    /// Route one: P1 - P2.
    pub difference: Poly,
    /// Route two: delta times the sum over sign-changing shapes of the
    /// product of the remaining edge forms.
    pub graph_sum: Poly,
    /// Route three: multinomial x delta x the two sub-chamber polynomials
    /// pulled back along the cut.
    pub product_formula: Poly,
    pub r: usize,
    pub r1: usize,
    pub r2: usize,
}

impl WallCrossingResult {
    pub fn consistent(&self) -> bool {
        self.difference == self.graph_sum && self.graph_sum == self.product_formula
    }
}

pub struct CutGlueReport {
    /// Ordered trees changing sign at the wall.
    pub ordered_difference_count: u64,
    pub multinomial: crate::BigInt,
    pub ordered_sub1: u64,
    pub ordered_sub2: u64,
    /// Ordered trees that survived cut-then-glue unchanged.
    pub roundtrips: usize,
}

impl CutGlueReport {
    pub fn counts_match(&self) -> bool {
        crate::BigInt::from(self.ordered_difference_count)
            == &self.multinomial
                * crate::BigInt::from(self.ordered_sub1)
                * crate::BigInt::from(self.ordered_sub2)
    }
}

impl ChamberAtlas {
    pub fn new(k: usize, l: usize) -> Result<Self> {
        let trees = enumerate_trees(k, l)?;
        let walls = enumerate_walls(k, l);
        let edge_signs = trees
            .iter()
            .map(|t| {
                (0..t.edges().len())
                    .map(|e| {
                        let (i_set, j_set) = t.source_side_ends(e);
                        classify_form(&i_set, &j_set, k, l, &walls)
                    })
                    .collect()
            })
            .collect();
        let mut chambers = Vec::new();
        for mask in 0u64..1 << walls.len() {
            let signs: Vec<bool> = (0..walls.len()).map(|w| mask >> w & 1 == 1).collect();
            let mut rows = positivity_rows(k, l);
            for (w, wall) in walls.iter().enumerate() {
                let mut row = form_vector(&wall.delta(), k, l);
                if !signs[w] {
                    row.iter_mut().for_each(|c| *c = -std::mem::take(c));
                }
                rows.push(row);
            }
            if let Some(x) = feasible_strict(rows, k + l - 1) {
                let (witness_mu, witness_nu) = unfold_point(&x, k);
                chambers.push(Chamber {
                    signs,
                    witness_mu,
                    witness_nu,
                });
            }
        }
        Ok(ChamberAtlas {
            k,
            l,
            walls,
            trees,
            chambers,
            edge_signs,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn walls(&self) -> &[Wall] {
        &self.walls
    }

    pub fn trees(&self) -> &[DirectedTree] {
        &self.trees
    }

    pub fn chambers(&self) -> &[Chamber] {
        &self.chambers
    }

    /// Index of the wall cut out by the given 0-based index sets, which
    /// may be either the stored pair or its complement.
    pub fn find_wall(&self, i_set: &[usize], j_set: &[usize]) -> Option<usize> {
        if i_set.is_empty() || j_set.is_empty() {
            return None;
        }
        if i_set.iter().any(|&i| i >= self.k) || j_set.iter().any(|&j| j >= self.l) {
            return None;
        }
        let mut i_sorted = i_set.to_vec();
        let mut j_sorted = j_set.to_vec();
        i_sorted.sort_unstable();
        j_sorted.sort_unstable();
        if i_sorted.len() == self.k && j_sorted.len() == self.l {
            return None;
        }
        let canonical = Wall::canonical(i_sorted, j_sorted, self.k, self.l);
        self.walls.binary_search(&canonical).ok()
    }

    /// The chamber containing the given positive balanced integer point.
    pub fn chamber_of(&self, mu: &[u32], nu: &[u32]) -> Result<Chamber> {
        if mu.len() != self.k || nu.len() != self.l {
            return Err(Error::Invalid(format!(
                "expected {} in-entries and {} out-entries",
                self.k, self.l
            )));
        }
        if mu.iter().chain(nu.iter()).any(|&x| x == 0) {
            return Err(Error::ZeroPart);
        }
        if mu.iter().map(|&x| x as u64).sum::<u64>() != nu.iter().map(|&x| x as u64).sum::<u64>() {
            return Err(Error::NotOnSimplex);
        }
        let mu_r: Vec<Rational> = mu.iter().map(|&x| crate::rat(x)).collect();
        let nu_r: Vec<Rational> = nu.iter().map(|&x| crate::rat(x)).collect();
        let mut signs = Vec::with_capacity(self.walls.len());
        for wall in &self.walls {
            let val = wall.delta().evaluate(&mu_r, &nu_r);
            if val.is_zero() {
                return Err(Error::OnWall(wall.to_string()));
            }
            signs.push(val.is_positive());
        }
        Ok(Chamber {
            signs,
            witness_mu: mu_r,
            witness_nu: nu_r,
        })
    }

    fn edge_positive(&self, sign: FormSign, chamber: &Chamber) -> bool {
        match sign {
            FormSign::Positive => true,
            FormSign::Negative => false,
            FormSign::OnWall { idx, flipped } => chamber.sign(idx) ^ flipped,
        }
    }

    fn positive_tree_indices(&self, chamber: &Chamber) -> Vec<usize> {
        (0..self.trees.len())
            .filter(|&t| {
                self.edge_signs[t]
                    .iter()
                    .all(|&s| self.edge_positive(s, chamber))
            })
            .collect()
    }

    /// Shapes whose every internal weight is positive throughout the
    /// chamber.
    pub fn positive_trees(&self, chamber: &Chamber) -> Vec<&DirectedTree> {
        self.positive_tree_indices(chamber)
            .into_iter()
            .map(|t| &self.trees[t])
            .collect()
    }

    /// Sum over positive shapes of (order count) x (product of edge
    /// forms), reduced modulo the balance relation.
    pub fn chamber_polynomial(&self, chamber: &Chamber) -> Poly {
        let mut total = Poly::zero(self.k, self.l);
        for t in self.positive_tree_indices(chamber) {
            let tree = &self.trees[t];
            let mut phi = Poly::constant(self.k, self.l, crate::rat(tree.order_count()));
            for form in tree.internal_weights() {
                phi = phi.mul(&form.to_poly(self.k, self.l));
            }
            total = total.add(&phi);
        }
        total.reduce_balance()
    }

    /// Marked count at an off-wall lattice point: the chamber polynomial
    /// evaluated there.
    pub fn marked_h0(&self, mu: &[u32], nu: &[u32]) -> Result<Rational> {
        let chamber = self.chamber_of(mu, nu)?;
        Ok(self.chamber_polynomial(&chamber).evaluate_ints(mu, nu))
    }

    fn chamber_rows(&self, chamber: &Chamber) -> Vec<Vec<Rational>> {
        let mut rows = positivity_rows(self.k, self.l);
        for (w, wall) in self.walls.iter().enumerate() {
            let mut row = form_vector(&wall.delta(), self.k, self.l);
            if !chamber.sign(w) {
                row.iter_mut().for_each(|c| *c = -std::mem::take(c));
            }
            rows.push(row);
        }
        rows
    }

    /// Definite sign of a linear form over a chamber.
    fn sign_on(&self, chamber: &Chamber, form: &LinearForm) -> Result<bool> {
        let vec = form_vector(form, self.k, self.l);
        let neg: Vec<Rational> = vec.iter().map(|c| -c.clone()).collect();
        let mut rows = self.chamber_rows(chamber);
        rows.push(neg);
        let can_be_negative = feasible_strict(rows, self.k + self.l - 1).is_some();
        let mut rows = self.chamber_rows(chamber);
        rows.push(vec);
        let can_be_positive = feasible_strict(rows, self.k + self.l - 1).is_some();
        match (can_be_positive, can_be_negative) {
            (true, false) => Ok(true),
            (false, true) => Ok(false),
            _ => Err(Error::Invalid(format!(
                "form {form} has no definite sign on the chamber"
            ))),
        }
    }

    /// Checks that c1 and c2 share all wall signs except this wall, that
    /// c1 is on its positive side, and that they meet in codimension one.
    fn check_adjacent(&self, wall_idx: usize, c1: &Chamber, c2: &Chamber) -> Result<()> {
        let differ_exactly = (0..self.walls.len())
            .all(|w| (c1.sign(w) == c2.sign(w)) == (w != wall_idx));
        if !differ_exactly || !c1.sign(wall_idx) {
            return Err(Error::NotAWallPair);
        }
        // Shared strict inequalities plus the wall as an equality.
        let delta_vec = form_vector(&self.walls[wall_idx].delta(), self.k, self.l);
        let pivot = delta_vec
            .iter()
            .position(|c| !c.is_zero())
            .expect("wall form is nonzero");
        let mut rows = Vec::new();
        for (w, wall) in self.walls.iter().enumerate() {
            if w == wall_idx {
                continue;
            }
            let mut row = form_vector(&wall.delta(), self.k, self.l);
            if !c1.sign(w) {
                row.iter_mut().for_each(|c| *c = -std::mem::take(c));
            }
            rows.push(row);
        }
        rows.extend(positivity_rows(self.k, self.l));
        let reduced: Vec<Vec<Rational>> = rows
            .into_iter()
            .map(|row| {
                let factor = &row[pivot] / &delta_vec[pivot];
                let mut out = Vec::with_capacity(row.len() - 1);
                for (i, c) in row.iter().enumerate() {
                    if i == pivot {
                        continue;
                    }
                    out.push(c - &factor * &delta_vec[i]);
                }
                out
            })
            .collect();
        if feasible_strict(reduced, self.k + self.l - 2).is_none() {
            return Err(Error::NotAdjacent);
        }
        Ok(())
    }

    /// Chamber index pairs (positive side first) meeting across the wall.
    pub fn adjacent_pairs(&self, wall_idx: usize) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for a in 0..self.chambers.len() {
            for b in 0..self.chambers.len() {
                if a == b || !self.chambers[a].sign(wall_idx) {
                    continue;
                }
                if self
                    .check_adjacent(wall_idx, &self.chambers[a], &self.chambers[b])
                    .is_ok()
                {
                    pairs.push((a, b));
                }
            }
        }
        pairs
    }

    /// Trees in exactly one of the two positive sets, with the index of
    /// their unique wall edge.
    fn sign_changing_trees(
        &self,
        wall_idx: usize,
        c1: &Chamber,
        c2: &Chamber,
    ) -> Vec<(usize, usize)> {
        let pos1 = self.positive_tree_indices(c1);
        let pos2 = self.positive_tree_indices(c2);
        let set1: BTreeSet<usize> = pos1.iter().copied().collect();
        let set2: BTreeSet<usize> = pos2.iter().copied().collect();
        set1.symmetric_difference(&set2)
            .map(|&t| {
                let wall_edges: Vec<usize> = self.edge_signs[t]
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| matches!(s, FormSign::OnWall { idx, .. } if *idx == wall_idx))
                    .map(|(e, _)| e)
                    .collect();
                assert_eq!(
                    wall_edges.len(),
                    1,
                    "a sign-changing tree has exactly one wall edge"
                );
                (t, wall_edges[0])
            })
            .collect()
    }

    /// The two sub-arrangements obtained by cutting at the wall, with the
    /// chambers induced by c1. Factor one keeps (I, J) plus a new out-end
    /// for the wall form; factor two gets the complements plus a new
    /// in-end. The new end is the last label on its side.
    fn induced_subproblems(
        &self,
        wall_idx: usize,
        c1: &Chamber,
    ) -> Result<(ChamberAtlas, Chamber, ChamberAtlas, Chamber)> {
        let wall = &self.walls[wall_idx];
        let delta = wall.delta();
        let (i_set, j_set) = (wall.i_set(), wall.j_set());
        let ic: Vec<usize> = (0..self.k).filter(|i| !i_set.contains(i)).collect();
        let jc: Vec<usize> = (0..self.l).filter(|j| !j_set.contains(j)).collect();

        let images1: Vec<LinearForm> = i_set
            .iter()
            .map(|&i| LinearForm::variable(Var::Mu(i)))
            .chain(j_set.iter().map(|&j| LinearForm::variable(Var::Nu(j))))
            .chain([delta.clone()])
            .collect();
        let images2: Vec<LinearForm> = ic
            .iter()
            .map(|&i| LinearForm::variable(Var::Mu(i)))
            .chain([delta.clone()])
            .chain(jc.iter().map(|&j| LinearForm::variable(Var::Nu(j))))
            .collect();

        let sub1 = ChamberAtlas::new(i_set.len(), j_set.len() + 1)?;
        let sub2 = ChamberAtlas::new(ic.len() + 1, jc.len())?;
        let sc1 = self.induced_chamber(&sub1, &images1, c1)?;
        let sc2 = self.induced_chamber(&sub2, &images2, c1)?;
        Ok((sub1, sc1, sub2, sc2))
    }

    /// Finds the sub-arrangement chamber whose wall signs match the signs
    /// the parent chamber forces through the variable images.
    fn induced_chamber(
        &self,
        sub: &ChamberAtlas,
        images: &[LinearForm],
        c1: &Chamber,
    ) -> Result<Chamber> {
        let mut signs = Vec::with_capacity(sub.walls.len());
        for wall in &sub.walls {
            let pulled = translate_form(&wall.delta(), images, sub.k);
            signs.push(self.sign_on(c1, &pulled)?);
        }
        sub.chambers
            .iter()
            .find(|c| c.signs == signs)
            .cloned()
            .ok_or_else(|| Error::Invalid("induced sign vector is not a chamber".into()))
    }

    /// Wall crossing between two adjacent chambers, by all three routes.
    pub fn wall_crossing(
        &self,
        wall_idx: usize,
        c1: &Chamber,
        c2: &Chamber,
    ) -> Result<WallCrossingResult> {
        self.check_adjacent(wall_idx, c1, c2)?;
        let wall = &self.walls[wall_idx];
        let delta_poly = wall.delta().to_poly(self.k, self.l);
        let p1 = self.chamber_polynomial(c1);
        let p2 = self.chamber_polynomial(c2);
        let difference = p1.sub(&p2);

        let mut sum = Poly::zero(self.k, self.l);
        for (t, wall_edge) in self.sign_changing_trees(wall_idx, c1, c2) {
            let tree = &self.trees[t];
            let mut phi = Poly::constant(self.k, self.l, crate::rat(tree.order_count()));
            for (e, form) in tree.internal_weights().into_iter().enumerate() {
                if e != wall_edge {
                    phi = phi.mul(&form.to_poly(self.k, self.l));
                }
            }
            sum = sum.add(&phi);
        }
        let graph_sum = delta_poly.mul(&sum).reduce_balance();

        let (sub1, sc1, sub2, sc2) = self.induced_subproblems(wall_idx, c1)?;
        let (i_len, j_len) = (wall.i_set().len(), wall.j_set().len());
        let r = self.k + self.l - 2;
        let r1 = i_len + j_len - 1;
        let r2 = r - r1;
        let images1: Vec<LinearForm> = wall
            .i_set()
            .iter()
            .map(|&i| LinearForm::variable(Var::Mu(i)))
            .chain(wall.j_set().iter().map(|&j| LinearForm::variable(Var::Nu(j))))
            .chain([wall.delta()])
            .collect();
        let ic: Vec<usize> = (0..self.k).filter(|i| !wall.i_set().contains(i)).collect();
        let jc: Vec<usize> = (0..self.l).filter(|j| !wall.j_set().contains(j)).collect();
        let images2: Vec<LinearForm> = ic
            .iter()
            .map(|&i| LinearForm::variable(Var::Mu(i)))
            .chain([wall.delta()])
            .chain(jc.iter().map(|&j| LinearForm::variable(Var::Nu(j))))
            .collect();
        let f1 = sub1
            .chamber_polynomial(&sc1)
            .substitute(self.k, self.l, &images1)?;
        let f2 = sub2
            .chamber_polynomial(&sc2)
            .substitute(self.k, self.l, &images2)?;
        let coeff = Rational::from(binomial(r as u64, r1 as u64));
        let product_formula = delta_poly
            .mul(&f1)
            .mul(&f2)
            .scale(&coeff)
            .reduce_balance();

        let result = WallCrossingResult {
            wall: wall.clone(),
            p1,
            p2,
            difference,
            graph_sum,
            product_formula,
            r,
            r1,
            r2,
        };
        debug_assert!(result.consistent());
        Ok(result)
    }

    /// Ordered-count identity behind the product formula, plus a full
    /// cut-then-glue round trip over every ordered sign-changing tree.
    pub fn cut_glue_check(
        &self,
        wall_idx: usize,
        c1: &Chamber,
        c2: &Chamber,
    ) -> Result<CutGlueReport> {
        self.check_adjacent(wall_idx, c1, c2)?;
        let wall = &self.walls[wall_idx];
        let changing = self.sign_changing_trees(wall_idx, c1, c2);
        let ordered_difference_count: u64 = changing
            .iter()
            .map(|&(t, _)| self.trees[t].order_count())
            .sum();
        let (sub1, sc1, sub2, sc2) = self.induced_subproblems(wall_idx, c1)?;
        let ordered_sub1: u64 = sub1
            .positive_trees(&sc1)
            .iter()
            .map(|t| t.order_count())
            .sum();
        let ordered_sub2: u64 = sub2
            .positive_trees(&sc2)
            .iter()
            .map(|t| t.order_count())
            .sum();
        let r = self.k + self.l - 2;
        let r1 = wall.i_set().len() + wall.j_set().len() - 1;
        let multinomial = binomial(r as u64, r1 as u64);

        let mut roundtrips = 0;
        for &(t, wall_edge) in &changing {
            let tree = &self.trees[t];
            for order in tree.all_orders() {
                let piece = cut_ordered(tree, &order, wall, wall_edge)?;
                // The halves must contribute to the induced chambers.
                if !sub1.positive_trees(&sc1).iter().any(|s| **s == piece.g1) {
                    return Err(Error::Invalid("cut half misses its chamber".into()));
                }
                if !sub2.positive_trees(&sc2).iter().any(|s| **s == piece.g2) {
                    return Err(Error::Invalid("cut half misses its chamber".into()));
                }
                let (glued, glued_order) = glue_ordered(&piece, self.k, self.l, wall)?;
                if glued.ordered_key(&glued_order) != tree.ordered_key(&order) {
                    return Err(Error::Invalid("cut then glue changed the tree".into()));
                }
                roundtrips += 1;
            }
        }
        Ok(CutGlueReport {
            ordered_difference_count,
            multinomial,
            ordered_sub1,
            ordered_sub2,
            roundtrips,
        })
    }

    pub fn artifact(&self) -> AtlasArtifact {
        let chambers = self
            .chambers
            .iter()
            .map(|c| ChamberArtifact {
                signs: c
                    .signs
                    .iter()
                    .map(|&s| if s { '+' } else { '-' })
                    .collect(),
                witness_point: WitnessArtifact {
                    mu: c.witness_mu.iter().map(rational_string).collect(),
                    nu: c.witness_nu.iter().map(rational_string).collect(),
                },
                polynomial_text: self.chamber_polynomial(c).to_string(),
            })
            .collect();
        let mut wall_crossings = Vec::new();
        for w in 0..self.walls.len() {
            for (a, b) in self.adjacent_pairs(w) {
                let wc = self
                    .wall_crossing(w, &self.chambers[a], &self.chambers[b])
                    .expect("adjacent pairs cross");
                wall_crossings.push(WallCrossingArtifact {
                    wall: w,
                    c1: a,
                    c2: b,
                    polynomial_text: wc.difference.to_string(),
                });
            }
        }
        AtlasArtifact {
            k: self.k,
            l: self.l,
            walls: self
                .walls
                .iter()
                .map(|w| WallArtifact {
                    i: w.i_set.iter().map(|&i| i + 1).collect(),
                    j: w.j_set.iter().map(|&j| j + 1).collect(),
                })
                .collect(),
            chambers,
            wall_crossings,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AtlasArtifact {
    pub k: usize,
    pub l: usize,
    pub walls: Vec<WallArtifact>,
    pub chambers: Vec<ChamberArtifact>,
    pub wall_crossings: Vec<WallCrossingArtifact>,
}

/// 1-based index sets.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WallArtifact {
    #[serde(rename = "I")]
    pub i: Vec<usize>,
    #[serde(rename = "J")]
    pub j: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChamberArtifact {
    pub signs: String,
    pub witness_point: WitnessArtifact,
    pub polynomial_text: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WitnessArtifact {
    pub mu: Vec<String>,
    pub nu: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WallCrossingArtifact {
    pub wall: usize,
    pub c1: usize,
    pub c2: usize,
    pub polynomial_text: String,
}

/// One cut ordered tree: the two halves with their own orders, and which
/// global ranks belong to the first half.
struct CutPieces {
    g1: DirectedTree,
    o1: Vec<usize>,
    g2: DirectedTree,
    o2: Vec<usize>,
    slots: Vec<bool>,
}

/// Cuts the wall edge. The half carrying the wall's own (I, J) ends
/// becomes factor one with a new last out-end; the other half becomes
/// factor two with a new last in-end. For a tree on the negative side the
/// new ends face the wrong way and are flipped, which is exactly reusing
/// the stored edge endpoints: factor one is always the component whose
/// ends are I and J.
fn cut_ordered(
    tree: &DirectedTree,
    order: &[usize],
    wall: &Wall,
    wall_edge: usize,
) -> Result<CutPieces> {
    let (i_set, j_set) = tree.source_side_ends(wall_edge);
    let (u, v) = tree.edges()[wall_edge];
    let on_positive_side = (i_set.as_slice(), j_set.as_slice()) == (wall.i_set(), wall.j_set());
    // Vertex where the new wall end of factor one attaches.
    let delta1_vertex = if on_positive_side { u } else { v };
    let delta2_vertex = if on_positive_side { v } else { u };
    let n = tree.num_vertices();
    let mut side1 = vec![false; n];
    side1[delta1_vertex] = true;
    let mut stack = vec![delta1_vertex];
    while let Some(x) = stack.pop() {
        for (e, &(a, b)) in tree.edges().iter().enumerate() {
            if e == wall_edge {
                continue;
            }
            for (p, q) in [(a, b), (b, a)] {
                if p == x && !side1[q] {
                    side1[q] = true;
                    stack.push(q);
                }
            }
        }
    }

    let build = |in_labels: &[usize],
                 out_labels: &[usize],
                 extra_in: Option<usize>,
                 extra_out: Option<usize>,
                 side: bool|
     -> Result<(DirectedTree, Vec<usize>)> {
        let verts: Vec<usize> = (0..n).filter(|&x| side1[x] == side).collect();
        let local = |x: usize| verts.iter().position(|&y| y == x).expect("vertex on side");
        let edges: Vec<(usize, usize)> = tree
            .edges()
            .iter()
            .enumerate()
            .filter(|&(e, &(a, _))| e != wall_edge && side1[a] == side)
            .map(|(_, &(a, b))| (local(a), local(b)))
            .collect();
        let mut ins: Vec<usize> = in_labels
            .iter()
            .map(|&i| local(tree.in_end_vertex(i)))
            .collect();
        if let Some(x) = extra_in {
            ins.push(local(x));
        }
        let mut outs: Vec<usize> = out_labels
            .iter()
            .map(|&j| local(tree.out_end_vertex(j)))
            .collect();
        if let Some(x) = extra_out {
            outs.push(local(x));
        }
        let sub = DirectedTree::from_parts(ins.len(), outs.len(), edges, ins, outs)?;
        // Ranks of this side's vertices, compressed.
        let mut ranked: Vec<(usize, usize)> =
            verts.iter().map(|&x| (order[x], local(x))).collect();
        ranked.sort_unstable();
        let mut sub_order = vec![0; verts.len()];
        for (rank, &(_, loc)) in ranked.iter().enumerate() {
            sub_order[loc] = rank;
        }
        Ok((sub, sub_order))
    };

    let ic: Vec<usize> = (0..tree.k()).filter(|i| !wall.i_set().contains(i)).collect();
    let jc: Vec<usize> = (0..tree.l()).filter(|j| !wall.j_set().contains(j)).collect();
    let (g1, o1) = build(wall.i_set(), wall.j_set(), None, Some(delta1_vertex), true)?;
    let (g2, o2) = build(&ic, &jc, Some(delta2_vertex), None, false)?;
    let mut slots = vec![false; n];
    for x in 0..n {
        if side1[x] {
            slots[order[x]] = true;
        }
    }
    Ok(CutPieces {
        g1,
        o1,
        g2,
        o2,
        slots,
    })
}

/// Reassembles a cut tree: vertices interleave by the slot pattern, and
/// the wall edge's direction comes from the relative order of its two
/// endpoints.
fn glue_ordered(
    pieces: &CutPieces,
    k: usize,
    l: usize,
    wall: &Wall,
) -> Result<(DirectedTree, Vec<usize>)> {
    let n1 = pieces.g1.num_vertices();
    let n = pieces.slots.len();
    let rank_list_1: Vec<usize> = (0..n).filter(|&p| pieces.slots[p]).collect();
    let rank_list_2: Vec<usize> = (0..n).filter(|&p| !pieces.slots[p]).collect();
    // Global vertex ids: factor one keeps its ids, factor two shifts by n1.
    let mut order = vec![0; n];
    for v in 0..n1 {
        order[v] = rank_list_1[pieces.o1[v]];
    }
    for v in 0..pieces.g2.num_vertices() {
        order[n1 + v] = rank_list_2[pieces.o2[v]];
    }
    let w1 = pieces.g1.out_end_vertex(pieces.g1.l() - 1);
    let w2 = pieces.g2.in_end_vertex(pieces.g2.k() - 1) + n1;
    let wall_edge = if order[w1] < order[w2] {
        (w1, w2)
    } else {
        (w2, w1)
    };
    let mut edges: Vec<(usize, usize)> = pieces.g1.edges().to_vec();
    edges.extend(pieces.g2.edges().iter().map(|&(a, b)| (a + n1, b + n1)));
    edges.push(wall_edge);
    let ic: Vec<usize> = (0..k).filter(|i| !wall.i_set().contains(i)).collect();
    let jc: Vec<usize> = (0..l).filter(|j| !wall.j_set().contains(j)).collect();
    let mut ins = vec![usize::MAX; k];
    for (a, &i) in wall.i_set().iter().enumerate() {
        ins[i] = pieces.g1.in_end_vertex(a);
    }
    for (a, &i) in ic.iter().enumerate() {
        ins[i] = pieces.g2.in_end_vertex(a) + n1;
    }
    let mut outs = vec![usize::MAX; l];
    for (b, &j) in wall.j_set().iter().enumerate() {
        outs[j] = pieces.g1.out_end_vertex(b);
    }
    for (b, &j) in jc.iter().enumerate() {
        outs[j] = pieces.g2.out_end_vertex(b) + n1;
    }
    // Rejects glued graphs with a source or sink, which adjacency of the
    // chambers is supposed to rule out.
    let tree = DirectedTree::from_parts(k, l, edges, ins, outs)?;
    Ok((tree, order))
}

/// Sign classification of the form given by an edge cut (I, J): constant
/// on the whole positive balance region, or tied to a wall.
fn classify_form(
    i_set: &[usize],
    j_set: &[usize],
    k: usize,
    l: usize,
    walls: &[Wall],
) -> FormSign {
    let i_full = i_set.len() == k;
    let j_full = j_set.len() == l;
    if j_set.is_empty() {
        return FormSign::Positive;
    }
    if i_set.is_empty() {
        return FormSign::Negative;
    }
    if i_full && j_full {
        unreachable!("a cut component never captures every end");
    }
    if i_full {
        return FormSign::Positive;
    }
    if j_full {
        return FormSign::Negative;
    }
    let canonical = Wall::canonical(i_set.to_vec(), j_set.to_vec(), k, l);
    let flipped = canonical.i_set() != i_set;
    let idx = walls
        .binary_search(&canonical)
        .expect("every proper cut is a wall");
    FormSign::OnWall { idx, flipped }
}

/// Rewrites a form in sub-arrangement variables through the given images
/// of those variables, listed in variable-index order.
fn translate_form(form: &LinearForm, images: &[LinearForm], sub_k: usize) -> LinearForm {
    let mut out = LinearForm::zero();
    for (v, c) in form.terms() {
        for (w, d) in images[v.index(sub_k)].terms() {
            out.add_term(*w, c * d);
        }
    }
    out
}

/// Coefficient vector of a form over the independent coordinates
/// mu_1..mu_k, nu_1..nu_{l-1}, with the last out-coordinate eliminated by
/// the balance relation.
fn form_vector(f: &LinearForm, k: usize, l: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); k + l - 1];
    let last = f.coeff(Var::Nu(l - 1));
    for (v, c) in f.terms() {
        match *v {
            Var::Mu(i) => out[i] += Rational::from_integer(c.clone()),
            Var::Nu(j) if j < l - 1 => out[k + j] += Rational::from_integer(c.clone()),
            Var::Nu(_) => {}
        }
    }
    if !last.is_zero() {
        let last = Rational::from_integer(last);
        for o in out.iter_mut().take(k) {
            *o += &last;
        }
        for j in 0..l - 1 {
            out[k + j] -= &last;
        }
    }
    out
}

/// Strict positivity of every coordinate, including the eliminated one.
fn positivity_rows(k: usize, l: usize) -> Vec<Vec<Rational>> {
    let mut rows = Vec::new();
    for idx in 0..k + l {
        rows.push(form_vector(
            &LinearForm::variable(Var::from_index(idx, k)),
            k,
            l,
        ));
    }
    rows
}

fn unfold_point(x: &[Rational], k: usize) -> (Vec<Rational>, Vec<Rational>) {
    let mu: Vec<Rational> = x[..k].to_vec();
    let mut nu: Vec<Rational> = x[k..].to_vec();
    let rest: Rational = nu.iter().sum();
    let total: Rational = mu.iter().sum();
    nu.push(total - rest);
    (mu, nu)
}

/// Fourier-Motzkin feasibility for a homogeneous strict system
/// (row . x > 0 for every row); returns a solution when one exists.
fn feasible_strict(rows: Vec<Vec<Rational>>, nvars: usize) -> Option<Vec<Rational>> {
    debug_assert!(rows.iter().all(|r| r.len() == nvars));
    if nvars == 0 {
        // Remaining rows are empty sums, i.e. 0 > 0.
        return if rows.is_empty() { Some(Vec::new()) } else { None };
    }
    let mut lowers: Vec<(Rational, Vec<Rational>)> = Vec::new(); // x_v > rest/c
    let mut uppers: Vec<(Rational, Vec<Rational>)> = Vec::new(); // x_v < rest/c
    let mut passed: Vec<Vec<Rational>> = Vec::new();
    for mut row in rows {
        let c = row.pop().expect("row has the eliminated coordinate");
        if c.is_zero() {
            if row.iter().all(|x| x.is_zero()) {
                return None;
            }
            passed.push(row);
        } else if c.is_positive() {
            // c x_v + r > 0  <=>  x_v > -r/c.
            let bound: Vec<Rational> = row.iter().map(|x| -(x / &c)).collect();
            lowers.push((c, bound));
        } else {
            // c x_v + r > 0  <=>  x_v < r/(-c).
            let nc = -c;
            let bound: Vec<Rational> = row.iter().map(|x| x / &nc).collect();
            uppers.push((nc, bound));
        }
    }
    for (_, lo) in &lowers {
        for (_, hi) in &uppers {
            // hi - lo > 0.
            let row: Vec<Rational> = hi.iter().zip(lo).map(|(h, a)| h - a).collect();
            if row.iter().all(|x| x.is_zero()) {
                return None;
            }
            passed.push(row);
        }
    }
    let x = feasible_strict(passed, nvars - 1)?;
    let eval = |bound: &[Rational]| -> Rational {
        bound
            .iter()
            .zip(&x)
            .map(|(c, xi)| c * xi)
            .sum()
    };
    let lo = lowers.iter().map(|(_, b)| eval(b)).max();
    let hi = uppers.iter().map(|(_, b)| eval(b)).min();
    let value = match (lo, hi) {
        (Some(lo), Some(hi)) => {
            debug_assert!(lo < hi);
            (lo + hi) / BigRational::from_integer(2.into())
        }
        (Some(lo), None) => lo + BigRational::one(),
        (None, Some(hi)) => hi - BigRational::one(),
        (None, None) => Rational::zero(),
    };
    let mut x = x;
    x.push(value);
    Some(x)
}
