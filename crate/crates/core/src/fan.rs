//! Rational polyhedral cones and pure weighted fans.
//!
//! A fan is given extensionally: maximal cones (rays plus a common lineality
//! space) with positive integer weights.  Ridges — the codimension-1 faces
//! where balancing is checked — are enumerated from the generating
//! description by dropping one ray at a time, which requires each maximal
//! cone to be simplicial modulo its lineality (rays that come in opposite
//! pairs count as lineality).  Chain-of-flats fans have exactly this shape;
//! fans that don't are rejected with an explicit error rather than answered
//! approximately.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::Error;
use crate::linalg::{self, IntegerVector, OrthogonalComplement, Rational, RationalMatrix};
use crate::matroid::{IndependenceFamily, Subset};

/// Polyhedral cone `{Σ λᵢ·rayᵢ + Σ μⱼ·linⱼ : λᵢ ≥ 0}` in `Qⁿ`.
#[derive(Clone, PartialEq, Eq)]
pub struct Cone {
    n: usize,
    rays: Vec<Vec<Rational>>,
    lineality: Vec<Vec<Rational>>,
}

impl Cone {
    /// Generators may be redundant or zero (projections produce both);
    /// only the vector lengths are validated.
    pub fn new(
        n: usize,
        rays: Vec<Vec<Rational>>,
        lineality: Vec<Vec<Rational>>,
    ) -> Result<Cone, Error> {
        for v in rays.iter().chain(&lineality) {
            if v.len() != n {
                return Err(Error::Shape(format!(
                    "generator of length {} in ambient dimension {n}",
                    v.len()
                )));
            }
        }
        Ok(Cone { n, rays, lineality })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rays(&self) -> &[Vec<Rational>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<Rational>] {
        &self.lineality
    }

    fn generator_rows(&self) -> Vec<Vec<Rational>> {
        self.rays.iter().chain(&self.lineality).cloned().collect()
    }
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Cone(n={}, {} rays, {} lineality)",
            self.n,
            self.rays.len(),
            self.lineality.len()
        )
    }
}

/// Maximal cone of a fan: its rays, weight, and a human-readable label.
/// The lineality part lives on the fan, shared by all cones.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightedCone {
    pub rays: Vec<Vec<Rational>>,
    pub weight: i64,
    pub label: String,
}

/// Pure weighted fan: maximal cones over a common lineality space.
#[derive(Clone, PartialEq, Eq)]
pub struct WeightedFan {
    n: usize,
    lineality: Vec<Vec<Rational>>,
    cones: Vec<WeightedCone>,
}

impl WeightedFan {
    pub fn new(
        n: usize,
        lineality: Vec<Vec<Rational>>,
        cones: Vec<WeightedCone>,
    ) -> Result<WeightedFan, Error> {
        for v in &lineality {
            if v.len() != n {
                return Err(Error::Shape(format!(
                    "lineality vector of length {} in ambient dimension {n}",
                    v.len()
                )));
            }
            if linalg::is_zero_vec(v) {
                return Err(Error::InvalidInput(
                    "zero vector listed as a lineality generator".into(),
                ));
            }
        }
        for (i, c) in cones.iter().enumerate() {
            if c.weight < 1 {
                return Err(Error::InvalidInput(format!(
                    "cone {i} has weight {}; weights must be positive",
                    c.weight
                )));
            }
            for v in &c.rays {
                if v.len() != n {
                    return Err(Error::Shape(format!(
                        "ray of length {} in ambient dimension {n}",
                        v.len()
                    )));
                }
                if linalg::is_zero_vec(v) {
                    return Err(Error::InvalidInput(format!("cone {i} lists a zero ray")));
                }
            }
        }
        Ok(WeightedFan {
            n,
            lineality,
            cones,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn lineality(&self) -> &[Vec<Rational>] {
        &self.lineality
    }

    pub fn cones(&self) -> &[WeightedCone] {
        &self.cones
    }

    /// The `i`-th maximal cone with the fan's lineality attached.
    pub fn maximal_cone(&self, i: usize) -> Cone {
        Cone {
            n: self.n,
            rays: self.cones[i].rays.clone(),
            lineality: self.lineality.clone(),
        }
    }

    /// Same fan with the given weights.
    pub fn with_weights(&self, weights: &[i64]) -> Result<WeightedFan, Error> {
        if weights.len() != self.cones.len() {
            return Err(Error::Shape(format!(
                "{} weights for {} cones",
                weights.len(),
                self.cones.len()
            )));
        }
        let cones = self
            .cones
            .iter()
            .zip(weights)
            .map(|(c, &w)| WeightedCone {
                rays: c.rays.clone(),
                weight: w,
                label: c.label.clone(),
            })
            .collect();
        WeightedFan::new(self.n, self.lineality.clone(), cones)
    }

    /// Common dimension of the maximal cones; errors if the fan isn't pure.
    /// The empty fan has dimension 0.
    pub fn dimension(&self) -> Result<usize, Error> {
        let mut dim = None;
        for i in 0..self.cones.len() {
            let d = cone_dim(&self.maximal_cone(i));
            match dim {
                None => dim = Some(d),
                Some(d0) if d0 != d => return Err(Error::NotPure(d0, d)),
                _ => {}
            }
        }
        Ok(dim.unwrap_or(0))
    }
}

impl fmt::Debug for WeightedFan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "WeightedFan(n={}, {} cones, lineality rank {})",
            self.n,
            self.cones.len(),
            linalg::rank_of_rows(&self.lineality)
        )
    }
}

/// Dimension of a cone: the rank of its combined generator matrix.
pub fn cone_dim(c: &Cone) -> usize {
    linalg::rank_of_rows(&c.generator_rows())
}

fn restrict(v: &[Rational], s: Subset) -> Vec<Rational> {
    s.elements().iter().map(|&e| v[e - 1].clone()).collect()
}

/// Coordinatewise restriction of every generator to the coordinates in `s`
/// (ascending), i.e. the image of the cone under the projection to `Q^S`.
/// Restricted generators are kept verbatim, zeros and redundancies included.
pub fn project_cone(c: &Cone, s: Subset) -> Result<Cone, Error> {
    if s.is_empty() {
        return Err(Error::InvalidInput(
            "cannot project to an empty coordinate set".into(),
        ));
    }
    if !s.is_subset_of(Subset::full(c.n)) {
        return Err(Error::InvalidInput(format!(
            "coordinates {s} out of range for ambient dimension {}",
            c.n
        )));
    }
    Ok(Cone {
        n: s.len(),
        rays: c.rays.iter().map(|v| restrict(v, s)).collect(),
        lineality: c.lineality.iter().map(|v| restrict(v, s)).collect(),
    })
}

fn projection_is_full_dim(f: &WeightedFan, s: Subset) -> bool {
    let target = s.len();
    f.cones.iter().any(|c| {
        let rows: Vec<Vec<Rational>> = c
            .rays
            .iter()
            .chain(&f.lineality)
            .map(|v| restrict(v, s))
            .collect();
        linalg::rank_of_rows(&rows) == target
    })
}

/// Coordinate subsets `S` whose projection of the fan is full-dimensional
/// (the fan's image is a finite union of projected cones, so its dimension
/// is the maximum over maximal cones).  `∅` is always a member.
///
/// Membership is downward closed, so subsets are tested level by level and
/// a level's candidates must have all their children in the family already.
pub fn fan_independence_complex(f: &WeightedFan) -> IndependenceFamily {
    let n = f.n;
    let mut members: BTreeSet<Subset> = BTreeSet::new();
    members.insert(Subset::EMPTY);
    let mut level = vec![Subset::EMPTY];
    while !level.is_empty() {
        let mut candidates: BTreeSet<Subset> = BTreeSet::new();
        for m in &level {
            for e in 1..=n {
                if !m.contains(e) {
                    candidates.insert(m.with(e));
                }
            }
        }
        let candidates: Vec<Subset> = candidates
            .into_iter()
            .filter(|s| {
                s.elements()
                    .iter()
                    .all(|&e| members.contains(&s.without(e)))
            })
            .collect();
        let verdicts: Vec<bool> = candidates
            .par_iter()
            .map(|&s| projection_is_full_dim(f, s))
            .collect();
        level = candidates
            .into_iter()
            .zip(verdicts)
            .filter(|&(_, ok)| ok)
            .map(|(s, _)| s)
            .collect();
        members.extend(level.iter().copied());
    }
    let members: Vec<Subset> = members.into_iter().collect();
    IndependenceFamily::from_members(n, &members)
}

/// Codimension-1 face shared structure: the ridge cone and, per incident
/// maximal cone, the primitive generator of the quotient lattice pointing
/// from the ridge into that cone.
#[derive(Clone, Debug)]
pub struct RidgeIncidence {
    pub ridge: Cone,
    pub incident_facets: Vec<(usize, IntegerVector)>,
}

/// Per-cone split of generators into lineality (fan lineality plus rays
/// occurring in opposite pairs) and the remaining "residual" rays, which
/// must be independent modulo the lineality.
struct SimplicialSplit {
    lineality: Vec<Vec<Rational>>,
    residual: Vec<Vec<Rational>>,
}

fn simplicial_split(f: &WeightedFan, i: usize) -> Result<SimplicialSplit, Error> {
    let c = &f.cones[i];
    let prim: Vec<IntegerVector> = c
        .rays
        .iter()
        .map(|v| linalg::primitive_vector(v))
        .collect::<Result<_, _>>()?;
    let mut paired = vec![false; c.rays.len()];
    for a in 0..c.rays.len() {
        for b in a + 1..c.rays.len() {
            if prim[a] == prim[b].negated() {
                paired[a] = true;
                paired[b] = true;
            }
        }
    }
    let mut lineality = f.lineality.clone();
    let mut residual = Vec::new();
    for (k, ray) in c.rays.iter().enumerate() {
        if paired[k] {
            lineality.push(ray.clone());
        } else {
            residual.push(ray.clone());
        }
    }
    let lin_rank = linalg::rank_of_rows(&lineality);
    let all: Vec<Vec<Rational>> = lineality.iter().chain(&residual).cloned().collect();
    if linalg::rank_of_rows(&all) != lin_rank + residual.len() {
        return Err(Error::NotSimplicial(i));
    }
    Ok(SimplicialSplit {
        lineality,
        residual,
    })
}

/// Canonical identity of a face cone: a reduced-echelon primitive basis of
/// its lineality span plus the sorted primitive projections of its residual
/// rays modulo that span.  Equal cones get equal keys no matter which
/// maximal cone they were read off from.
fn face_key(
    lineality: &[Vec<Rational>],
    residual_rays: &[Vec<Rational>],
) -> Result<(Vec<IntegerVector>, Vec<IntegerVector>), Error> {
    let mut span_part = Vec::new();
    if !lineality.is_empty() {
        let m = RationalMatrix::from_rows(lineality.to_vec())?;
        let (r, pivots) = linalg::rref(&m);
        for &(row, _) in &pivots {
            span_part.push(linalg::primitive_vector(r.row(row))?);
        }
    }
    let oc = OrthogonalComplement::new(lineality);
    let mut ray_part = Vec::new();
    for ray in residual_rays {
        ray_part.push(linalg::primitive_vector(&oc.project(ray))?);
    }
    ray_part.sort();
    Ok((span_part, ray_part))
}

/// All ridges of a pure fan, each with its incident maximal cones and their
/// primitive quotient generators.
///
/// Ridges are faces obtained by dropping a single residual ray of a maximal
/// cone; candidates from different cones are identified through their
/// canonical face keys.  Requires every maximal cone to be simplicial modulo
/// lineality.
pub fn ridge_incidences(f: &WeightedFan) -> Result<Vec<RidgeIncidence>, Error> {
    f.dimension()?; // purity check
    struct Group {
        ridge: Cone,
        facets: Vec<(usize, IntegerVector)>,
    }
    let mut groups: BTreeMap<(Vec<IntegerVector>, Vec<IntegerVector>), Group> = BTreeMap::new();
    for i in 0..f.cones.len() {
        let split = simplicial_split(f, i)?;
        let facet_rows: Vec<Vec<Rational>> = f.cones[i]
            .rays
            .iter()
            .chain(&f.lineality)
            .cloned()
            .collect();
        for drop in 0..split.residual.len() {
            let kept: Vec<Vec<Rational>> = split
                .residual
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != drop)
                .map(|(_, v)| v.clone())
                .collect();
            let mut ridge_rows = split.lineality.clone();
            ridge_rows.extend(kept.iter().cloned());
            let u = linalg::quotient_primitive_generator(&facet_rows, &ridge_rows)?;
            let key = face_key(&split.lineality, &kept)?;
            groups
                .entry(key)
                .or_insert_with(|| Group {
                    ridge: Cone {
                        n: f.n,
                        rays: kept,
                        lineality: split.lineality.clone(),
                    },
                    facets: Vec::new(),
                })
                .facets
                .push((i, u));
        }
    }
    Ok(groups
        .into_values()
        .map(|g| RidgeIncidence {
            ridge: g.ridge,
            incident_facets: g.facets,
        })
        .collect())
}

/// Verdict of the balancing check, with a certificate on failure.
#[derive(Clone, Debug)]
pub struct BalanceReport {
    pub balanced: bool,
    pub violation: Option<BalanceViolation>,
}

/// The first ridge (in canonical order) where the weighted sum of quotient
/// generators leaves the ridge's span, and the offending orthogonal residual.
#[derive(Clone, Debug)]
pub struct BalanceViolation {
    pub ridge: Cone,
    pub residual: Vec<Rational>,
}

/// Check the balancing condition: at every ridge, the weighted sum of the
/// primitive quotient generators must lie in the ridge's linear span.
pub fn is_balanced(f: &WeightedFan) -> Result<BalanceReport, Error> {
    for inc in ridge_incidences(f)? {
        let oc = OrthogonalComplement::new(&inc.ridge.generator_rows());
        let mut sum = vec![Rational::zero(); f.n];
        for &(i, ref u) in &inc.incident_facets {
            let w = Rational::from_integer(BigInt::from(f.cones[i].weight));
            for (acc, x) in sum.iter_mut().zip(u.to_rationals()) {
                *acc += &w * x;
            }
        }
        let residual = oc.project(&sum);
        if !linalg::is_zero_vec(&residual) {
            return Ok(BalanceReport {
                balanced: false,
                violation: Some(BalanceViolation {
                    ridge: inc.ridge,
                    residual,
                }),
            });
        }
    }
    Ok(BalanceReport {
        balanced: true,
        violation: None,
    })
}

/// The space of balancing weights: dimension and a basis.
#[derive(Clone, Debug)]
pub struct WeightSpace {
    pub dimension: usize,
    pub basis: Vec<Vec<Rational>>,
}

/// Union-find over cone indices carrying a multiplier: `w_x = coeff[x] ·
/// w_root(x)`.  Two-facet ridges force exact proportionality between their
/// cones' weights, which collapses most of the system before any matrix
/// elimination.
struct RatioClasses {
    parent: Vec<usize>,
    coeff: Vec<Rational>,
}

impl RatioClasses {
    fn new(m: usize) -> RatioClasses {
        RatioClasses {
            parent: (0..m).collect(),
            coeff: vec![Rational::one(); m],
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] == x {
            return x;
        }
        let p = self.parent[x];
        let root = self.find(p);
        if p != root {
            let c = &self.coeff[x] * &self.coeff[p];
            self.coeff[x] = c;
            self.parent[x] = root;
        }
        root
    }

    /// Multiplier of `x` relative to its root.
    fn multiplier(&mut self, x: usize) -> Rational {
        self.find(x);
        self.coeff[x].clone()
    }

    /// Impose `w_i = lambda · w_j`.  Returns false when the classes were
    /// already linked with a different ratio (forcing both to zero).
    fn unite(&mut self, i: usize, j: usize, lambda: &Rational) -> bool {
        let ri = self.find(i);
        let rj = self.find(j);
        let a = self.coeff[i].clone(); // w_i = a·w_ri
        let b = self.coeff[j].clone(); // w_j = b·w_rj
        if ri == rj {
            return a == lambda * &b;
        }
        self.parent[ri] = rj;
        self.coeff[ri] = lambda * &b / &a;
        true
    }
}

/// Weight assignments (one rational per maximal cone, sign-unrestricted)
/// that satisfy every ridge's balancing condition, as dimension plus basis.
/// The supplied weights are ignored; only the geometry matters.
pub fn balancing_weight_space(f: &WeightedFan) -> Result<WeightSpace, Error> {
    let m = f.cones.len();
    let incidences = ridge_incidences(f)?;

    // projections of the quotient generators orthogonal to each ridge
    let mut projected: Vec<(Vec<usize>, Vec<Vec<Rational>>)> = Vec::new();
    for inc in &incidences {
        let oc = OrthogonalComplement::new(&inc.ridge.generator_rows());
        let cones: Vec<usize> = inc.incident_facets.iter().map(|&(i, _)| i).collect();
        let projs: Vec<Vec<Rational>> = inc
            .incident_facets
            .iter()
            .map(|(_, u)| oc.project(&u.to_rationals()))
            .collect();
        projected.push((cones, projs));
    }

    // pass 1: two-facet ridges force w_i = λ·w_j whenever the projections
    // are parallel (they always are for ridges a balanced structure admits)
    let mut classes = RatioClasses::new(m);
    let mut forced_zero: BTreeSet<usize> = BTreeSet::new();
    for (cones, projs) in &projected {
        if cones.len() != 2 {
            continue;
        }
        let (pi, pj) = (&projs[0], &projs[1]);
        let k = pi
            .iter()
            .position(|x| !x.is_zero())
            .expect("quotient generator projects to nonzero");
        let lambda = -&pj[k] / &pi[k];
        let parallel = pi
            .iter()
            .zip(pj)
            .all(|(a, b)| b + &lambda * a == Rational::zero());
        if parallel {
            if !classes.unite(cones[0], cones[1], &lambda) {
                forced_zero.insert(classes.find(cones[0]));
            }
        } else {
            forced_zero.insert(classes.find(cones[0]));
            forced_zero.insert(classes.find(cones[1]));
        }
    }

    // pass 2: remaining ridges become linear rows over the class variables
    let roots: Vec<usize> = (0..m).filter(|&x| classes.find(x) == x).collect();
    let col_of = |root: usize, roots: &[usize]| roots.binary_search(&root).unwrap();
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for z in &forced_zero {
        let mut row = vec![Rational::zero(); roots.len()];
        row[col_of(*z, &roots)] = Rational::one();
        rows.push(row);
    }
    for (cones, projs) in &projected {
        if cones.len() == 2 {
            continue;
        }
        let mut coord_rows = vec![vec![Rational::zero(); roots.len()]; f.n];
        for (idx, &ci) in cones.iter().enumerate() {
            let root = classes.find(ci);
            let mult = classes.multiplier(ci);
            let col = col_of(root, &roots);
            for (row, v) in coord_rows.iter_mut().zip(&projs[idx]) {
                row[col] += &mult * v;
            }
        }
        for row in coord_rows {
            if !linalg::is_zero_vec(&row) {
                rows.push(row);
            }
        }
    }

    // kernel over the class variables, expanded back to one weight per cone
    let class_basis: Vec<Vec<Rational>> = if rows.is_empty() {
        (0..roots.len())
            .map(|i| {
                let mut v = vec![Rational::zero(); roots.len()];
                v[i] = Rational::one();
                v
            })
            .collect()
    } else {
        linalg::kernel_basis(&RationalMatrix::from_rows(rows)?)
    };
    let mut basis = Vec::new();
    for cv in class_basis {
        let mut w = vec![Rational::zero(); m];
        for (x, slot) in w.iter_mut().enumerate() {
            let root = classes.find(x);
            let mult = classes.multiplier(x);
            *slot = &mult * &cv[col_of(root, &roots)];
        }
        basis.push(w);
    }
    Ok(WeightSpace {
        dimension: basis.len(),
        basis,
    })
}
