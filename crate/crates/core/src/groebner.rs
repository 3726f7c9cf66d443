//! Multivariate polynomials over `Q`, Buchberger's algorithm, and the
//! algebraic matroid of an ideal.
//!
//! A subset `S` of the variables is independent for an ideal `P` exactly when
//! the elimination ideal `P ∩ Q[x_s : s ∈ S]` is zero.  That intersection is
//! read off a Gröbner basis under a block order ranking the variables outside
//! `S` above those inside, so everything here reduces to [`buchberger`].
//!
//! Buchberger's algorithm can blow up, so every run carries a [`Budget`]
//! (S-pair count and total-degree caps).  Exceeding the budget is reported as
//! an explicit inconclusive outcome — never silently converted into an
//! answer.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::linalg::{self, Rational, RationalMatrix};
use crate::matroid::{all_subsets, IndependenceFamily, Subset};

/// Exponent vector; the variable count is fixed by the ring context.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Monomial {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exponents: Vec<u32>) -> Monomial {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Quotient `self / other`; caller guarantees divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        debug_assert!(other.divides(self));
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime_to(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Variables with positive exponent, as a 1-indexed subset.
    pub fn support(&self) -> Subset {
        let mut s = Subset::EMPTY;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                s = s.with(i + 1);
            }
        }
        s
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    format!("x{}", i + 1)
                } else {
                    format!("x{}^{}", i + 1, e)
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Total order on monomials of a fixed ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    /// Lexicographic with `x1 > x2 > … > xn`.
    Lex,
    /// Graded reverse lexicographic with `x1 > … > xn`.
    GrevLex,
    /// Block (elimination) order: the variables in `eliminate` rank strictly
    /// above all others; grevlex inside each block.  A Gröbner basis under
    /// this order, restricted to the elements free of the `eliminate`
    /// variables, generates the elimination ideal.
    Elimination { eliminate: Subset },
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            // the monomial with the smaller trailing exponent is larger
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars(), b.nvars());
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::GrevLex => grevlex(&a.0, &b.0),
            MonomialOrder::Elimination { eliminate } => {
                let pick = |m: &Monomial, inside: bool| -> Vec<u32> {
                    m.0.iter()
                        .enumerate()
                        .filter(|(i, _)| eliminate.contains(i + 1) == inside)
                        .map(|(_, &e)| e)
                        .collect()
                };
                grevlex(&pick(a, true), &pick(b, true))
                    .then_with(|| grevlex(&pick(a, false), &pick(b, false)))
            }
        }
    }
}

/// Polynomial with rational coefficients; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Polynomial {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Polynomial {
        let mut p = Polynomial::zero(nvars);
        p.insert_add(Monomial::one(nvars), c);
        p
    }

    /// The variable `x_i`, 1-indexed.
    pub fn var(nvars: usize, i: usize) -> Polynomial {
        assert!(i >= 1 && i <= nvars, "variable index out of range");
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        let mut p = Polynomial::zero(nvars);
        p.insert_add(Monomial(e), Rational::one());
        p
    }

    /// Build from (coefficient, exponent vector) pairs; like terms merge.
    pub fn from_terms(nvars: usize, terms: Vec<(Rational, Vec<u32>)>) -> Result<Polynomial, Error> {
        let mut p = Polynomial::zero(nvars);
        for (c, e) in terms {
            if e.len() != nvars {
                return Err(Error::Shape(format!(
                    "exponent vector of length {} in a ring with {} variables",
                    e.len(),
                    nvars
                )));
            }
            p.insert_add(Monomial(e), c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// True when the polynomial is a single term (a scaled monomial).
    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// True for nonzero constants.
    pub fn is_unit_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one()
    }

    fn insert_add(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "mixed rings");
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    /// Multiply by the single term `c·m`.
    pub fn mul_term(&self, c: &Rational, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), tc * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "mixed rings");
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &other.terms {
            for (tm, tc) in &self.terms {
                out.insert_add(tm.mul(m), tc * c);
            }
        }
        out
    }

    /// Leading (monomial, coefficient) under `ord`; `None` for zero.
    pub fn leading(&self, ord: &MonomialOrder) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().max_by(|(a, _), (b, _)| ord.cmp(a, b))
    }

    pub fn make_monic(&self, ord: &MonomialOrder) -> Polynomial {
        match self.leading(ord) {
            None => self.clone(),
            Some((_, lc)) => {
                let inv = Rational::one() / lc;
                Polynomial {
                    nvars: self.nvars,
                    terms: self
                        .terms
                        .iter()
                        .map(|(m, c)| (m.clone(), c * &inv))
                        .collect(),
                }
            }
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    /// Variables occurring in some term, as a 1-indexed subset.
    pub fn support(&self) -> Subset {
        let mut s = Subset::EMPTY;
        for m in self.terms.keys() {
            s = s.union(m.support());
        }
        s
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // descending lexicographic storage order for a stable rendering
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Ideal given by a finite generating set.
#[derive(Clone, PartialEq, Eq)]
pub struct Ideal {
    nvars: usize,
    generators: Vec<Polynomial>,
}

impl Ideal {
    /// Zero generators are dropped; all generators must share the ring.
    pub fn new(nvars: usize, generators: Vec<Polynomial>) -> Result<Ideal, Error> {
        for g in &generators {
            if g.nvars() != nvars {
                return Err(Error::Shape(format!(
                    "generator over {} variables in a ring with {nvars}",
                    g.nvars()
                )));
            }
        }
        Ok(Ideal {
            nvars,
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "Ideal(nvars={}; {})", self.nvars, parts.join(", "))
    }
}

/// Caps on a Buchberger run: S-pairs actually reduced, and the total degree
/// any reduced remainder may reach.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_pairs: usize,
    pub max_degree: u32,
}

impl Default for Budget {
    fn default() -> Budget {
        Budget {
            max_pairs: 10_000,
            max_degree: 40,
        }
    }
}

/// Remainder of multivariate division of `f` by `basis` under `ord`.
///
/// No term of the result is divisible by the leading term of any divisor,
/// and `f − result` lies in the ideal generated by `basis`.
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], ord: &MonomialOrder) -> Polynomial {
    let divisors: Vec<(&Monomial, &Rational, &Polynomial)> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            let (m, c) = g.leading(ord).expect("nonzero");
            (m, c, g)
        })
        .collect();
    let mut work = f.clone();
    let mut rem = Polynomial::zero(f.nvars());
    while !work.is_zero() {
        let (lm, lc) = {
            let (m, c) = work.leading(ord).expect("nonzero");
            (m.clone(), c.clone())
        };
        match divisors.iter().find(|(gm, _, _)| gm.divides(&lm)) {
            Some((gm, gc, g)) => {
                let q = &lc / *gc;
                let qm = lm.div(gm);
                work = work.sub(&g.mul_term(&q, &qm));
            }
            None => {
                work.terms.remove(&lm);
                rem.insert_add(lm, lc);
            }
        }
    }
    rem
}

fn s_polynomial(f: &Polynomial, g: &Polynomial, ord: &MonomialOrder) -> Polynomial {
    let (fm, fc) = f.leading(ord).expect("nonzero");
    let (gm, gc) = g.leading(ord).expect("nonzero");
    let l = fm.lcm(gm);
    let a = f.mul_term(&(Rational::one() / fc), &l.div(fm));
    let b = g.mul_term(&(Rational::one() / gc), &l.div(gm));
    a.sub(&b)
}

/// Reduced Gröbner basis of `ideal` under `ord`.
///
/// Pair selection follows the normal strategy — lowest lcm total degree,
/// ties by index — so the run is deterministic.  Pairs with coprime leading
/// terms are discarded for free (their S-polynomials always reduce to zero);
/// every other pair charges the budget.  The result is minimized,
/// inter-reduced, made monic, and sorted ascending by leading term, which
/// makes it the unique reduced basis for the ideal and order.
pub fn buchberger(
    ideal: &Ideal,
    ord: &MonomialOrder,
    budget: Budget,
) -> Result<Vec<Polynomial>, Error> {
    let mut basis: Vec<Polynomial> = ideal
        .generators()
        .iter()
        .map(|g| g.make_monic(ord))
        .collect();
    if basis.is_empty() {
        return Ok(Vec::new());
    }

    let lcm_degree = |basis: &[Polynomial], i: usize, j: usize| -> u32 {
        let (mi, _) = basis[i].leading(ord).expect("nonzero");
        let (mj, _) = basis[j].leading(ord).expect("nonzero");
        mi.lcm(mj).degree()
    };

    let mut queue: BTreeSet<(u32, usize, usize)> = BTreeSet::new();
    for j in 1..basis.len() {
        for i in 0..j {
            queue.insert((lcm_degree(&basis, i, j), i, j));
        }
    }

    let mut reduced = 0usize;
    while let Some(&(d, i, j)) = queue.iter().next() {
        queue.remove(&(d, i, j));
        {
            let (mi, _) = basis[i].leading(ord).expect("nonzero");
            let (mj, _) = basis[j].leading(ord).expect("nonzero");
            if mi.is_coprime_to(mj) {
                continue;
            }
        }
        if reduced == budget.max_pairs {
            return Err(Error::Budget {
                pairs: reduced,
                max_pairs: budget.max_pairs,
                max_degree: budget.max_degree,
                partial: basis,
            });
        }
        reduced += 1;
        let s = s_polynomial(&basis[i], &basis[j], ord);
        let r = normal_form(&s, &basis, ord);
        if r.is_zero() {
            continue;
        }
        if r.total_degree() > budget.max_degree {
            return Err(Error::Budget {
                pairs: reduced,
                max_pairs: budget.max_pairs,
                max_degree: budget.max_degree,
                partial: basis,
            });
        }
        let r = r.make_monic(ord);
        let k = basis.len();
        basis.push(r);
        for i in 0..k {
            queue.insert((lcm_degree(&basis, i, k), i, k));
        }
    }

    Ok(reduce_basis(basis, ord))
}

/// Minimize (drop elements whose leading term another element's divides),
/// inter-reduce, and canonically sort a Gröbner basis.
fn reduce_basis(basis: Vec<Polynomial>, ord: &MonomialOrder) -> Vec<Polynomial> {
    // ascending by leading term: divisors sort before multiples
    let mut sorted = basis;
    sorted.sort_by(|f, g| {
        let (fm, _) = f.leading(ord).expect("nonzero");
        let (gm, _) = g.leading(ord).expect("nonzero");
        ord.cmp(fm, gm)
    });
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in sorted {
        let (gm, _) = g.leading(ord).expect("nonzero");
        let dominated = minimal
            .iter()
            .any(|h| h.leading(ord).expect("nonzero").0.divides(gm));
        if !dominated {
            minimal.push(g);
        }
    }
    // one full inter-reduction pass: leading terms are pairwise non-dividing,
    // so only tails change and the pass reaches the reduced basis
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, h)| h.clone())
            .collect();
        minimal[i] = normal_form(&minimal[i], &others, ord).make_monic(ord);
    }
    minimal
}

/// Decide whether the coordinates in `s` are algebraically independent
/// modulo `p`: true iff the elimination ideal `p ∩ Q[x_s : s ∈ S]` is zero.
pub fn is_coordinate_independent(p: &Ideal, s: Subset, budget: Budget) -> Result<bool, Error> {
    let full = Subset::full(p.nvars());
    if !s.is_subset_of(full) {
        return Err(Error::InvalidInput(format!(
            "subset {s} not within the {} ring variables",
            p.nvars()
        )));
    }
    if p.is_zero_ideal() {
        return Ok(true);
    }
    let ord = MonomialOrder::Elimination {
        eliminate: full.minus(s),
    };
    let gb = buchberger(p, &ord, budget)?;
    Ok(!gb.iter().any(|g| g.support().is_subset_of(s)))
}

/// Outcome of [`algebraic_matroid`]: the independent family, the loops
/// (dependent singletons), and any subsets left undecided by the budget.
#[derive(Clone, Debug)]
pub struct AlgebraicMatroidReport {
    pub family: IndependenceFamily,
    pub loops: Vec<usize>,
    pub inconclusive: Vec<Subset>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Independent,
    Dependent,
    Inconclusive,
}

/// The algebraic matroid of `p` over all coordinate subsets.
///
/// Subsets are visited by increasing cardinality.  A superset of a dependent
/// set is dependent without computation; a superset of an undecided set is
/// marked undecided rather than guessed at.  The ideal is expected to be
/// prime — that is not verified here, but a non-matroidal answer downstream
/// (via `is_matroid`) flags the assumption.
pub fn algebraic_matroid(p: &Ideal, budget: Budget) -> AlgebraicMatroidReport {
    let n = p.nvars();
    let mut order: Vec<Subset> = all_subsets(n).collect();
    order.sort_by(|a, b| a.canonical_cmp(*b));

    let mut status: HashMap<Subset, Status> = HashMap::new();
    for &s in &order {
        let mut verdict = None;
        for e in s.elements() {
            match status.get(&s.without(e)) {
                Some(Status::Dependent) => {
                    verdict = Some(Status::Dependent);
                    break;
                }
                Some(Status::Inconclusive) => verdict = Some(Status::Inconclusive),
                _ => {}
            }
        }
        let v = match verdict {
            Some(v) => v,
            None => match is_coordinate_independent(p, s, budget) {
                Ok(true) => Status::Independent,
                Ok(false) => Status::Dependent,
                Err(_) => Status::Inconclusive,
            },
        };
        status.insert(s, v);
    }

    let independent: Vec<Subset> = order
        .iter()
        .copied()
        .filter(|s| status[s] == Status::Independent)
        .collect();
    let loops: Vec<usize> = (1..=n)
        .filter(|&e| status[&Subset::singleton(e)] == Status::Dependent)
        .collect();
    let inconclusive: Vec<Subset> = order
        .iter()
        .copied()
        .filter(|s| status[s] == Status::Inconclusive)
        .collect();
    AlgebraicMatroidReport {
        family: IndependenceFamily::from_members(n, &independent),
        loops,
        inconclusive,
    }
}

/// The ideal of linear relations among the columns of `a`.
///
/// Generators come from a kernel basis of `a`, scaled to coprime integer
/// coefficients with the earliest nonzero coefficient positive; full column
/// rank gives the zero ideal.
pub fn linear_ideal_from_matrix(a: &RationalMatrix) -> Result<Ideal, Error> {
    let n = a.cols();
    let mut generators = Vec::new();
    for v in linalg::kernel_basis(a) {
        let prim = linalg::primitive_vector(&v)?;
        let flip = prim
            .0
            .iter()
            .find(|c| !c.is_zero())
            .is_some_and(|c| c.is_negative());
        let prim = if flip { prim.negated() } else { prim };
        let terms: Vec<(Rational, Vec<u32>)> = prim
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let mut e = vec![0; n];
                e[i] = 1;
                (Rational::from_integer(c.clone()), e)
            })
            .collect();
        generators.push(Polynomial::from_terms(n, terms)?);
    }
    Ideal::new(n, generators)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q(x: i64) -> Rational {
        Rational::from_integer(BigInt::from(x))
    }

    /// x1^a * x2^b * x3^c in a 3-variable ring, with coefficient.
    fn t3(c: i64, a: u32, b: u32, cc: u32) -> (Rational, Vec<u32>) {
        (q(c), vec![a, b, cc])
    }

    fn poly3(terms: Vec<(Rational, Vec<u32>)>) -> Polynomial {
        Polynomial::from_terms(3, terms).unwrap()
    }

    fn sub(n: usize, elems: &[usize]) -> Subset {
        Subset::from_elements(n, elems).unwrap()
    }

    #[test]
    fn monomial_orders() {
        let lex = MonomialOrder::Lex;
        let grevlex = MonomialOrder::GrevLex;
        let x1 = Monomial::from_exponents(vec![1, 0, 0]);
        let x2 = Monomial::from_exponents(vec![0, 1, 0]);
        let x2cubed = Monomial::from_exponents(vec![0, 3, 0]);
        let x1x2 = Monomial::from_exponents(vec![1, 1, 0]);
        let x3sq = Monomial::from_exponents(vec![0, 0, 2]);
        assert_eq!(lex.cmp(&x1, &x2), Ordering::Greater);
        assert_eq!(lex.cmp(&x1, &x2cubed), Ordering::Greater);
        assert_eq!(grevlex.cmp(&x1, &x2), Ordering::Greater);
        assert_eq!(grevlex.cmp(&x2cubed, &x1), Ordering::Greater);
        assert_eq!(grevlex.cmp(&x1x2, &x3sq), Ordering::Greater);
        // eliminating {3} makes any power of x3 dominate x1, x2
        let elim = MonomialOrder::Elimination {
            eliminate: sub(3, &[3]),
        };
        let x3 = Monomial::from_exponents(vec![0, 0, 1]);
        let x1sq_x2 = Monomial::from_exponents(vec![2, 1, 0]);
        assert_eq!(elim.cmp(&x3, &x1sq_x2), Ordering::Greater);
        assert_eq!(elim.cmp(&x1sq_x2, &x2), Ordering::Greater);
    }

    #[test]
    fn polynomial_display() {
        let p = poly3(vec![t3(1, 2, 0, 0), t3(-2, 0, 1, 0), t3(1, 0, 0, 0)]);
        assert_eq!(p.to_string(), "x1^2 - 2*x2 + 1");
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        let p = Polynomial::from_terms(2, vec![(half, vec![0, 1])]).unwrap();
        assert_eq!(p.to_string(), "1/2*x2");
        assert_eq!(Polynomial::zero(2).to_string(), "0");
    }

    #[test]
    fn arithmetic_basics() {
        let x1 = Polynomial::var(3, 1);
        let x2 = Polynomial::var(3, 2);
        let s = x1.add(&x2);
        let diff = s.sub(&x1);
        assert_eq!(diff, x2);
        let prod = s.mul(&s);
        // (x1+x2)^2 = x1^2 + 2 x1 x2 + x2^2
        assert_eq!(
            prod,
            poly3(vec![t3(1, 2, 0, 0), t3(2, 1, 1, 0), t3(1, 0, 2, 0)])
        );
        assert!(x1.sub(&x1).is_zero());
    }

    #[test]
    fn normal_form_examples() {
        // In a ring ordered x1 > x2, dividing x2^2*x1 by x1 - x2^2
        // substitutes x1 -> x2^2, leaving x2^4.
        let f = Polynomial::from_terms(2, vec![(q(1), vec![1, 2])]).unwrap();
        let g = Polynomial::from_terms(2, vec![(q(1), vec![1, 0]), (q(-1), vec![0, 2])]).unwrap();
        let r = normal_form(&f, std::slice::from_ref(&g), &MonomialOrder::Lex);
        assert_eq!(
            r,
            Polynomial::from_terms(2, vec![(q(1), vec![0, 4])]).unwrap()
        );
        // a generator reduces to zero
        assert!(normal_form(&g, std::slice::from_ref(&g), &MonomialOrder::Lex).is_zero());
        // nothing applies
        let x1 = Polynomial::var(2, 1);
        let x2 = Polynomial::var(2, 2);
        assert_eq!(normal_form(&x1, &[x2], &MonomialOrder::Lex), x1);
    }

    fn twisted_cubic() -> Ideal {
        // x2 - x1^2, x3 - x1^3
        Ideal::new(
            3,
            vec![
                poly3(vec![t3(1, 0, 1, 0), t3(-1, 2, 0, 0)]),
                poly3(vec![t3(1, 0, 0, 1), t3(-1, 3, 0, 0)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn buchberger_principal_and_unit() {
        let p = Ideal::new(
            3,
            vec![poly3(vec![t3(2, 1, 0, 0), t3(2, 0, 1, 0), t3(-2, 0, 0, 1)])],
        )
        .unwrap();
        let gb = buchberger(&p, &MonomialOrder::GrevLex, Budget::default()).unwrap();
        assert_eq!(
            gb,
            vec![poly3(vec![t3(1, 1, 0, 0), t3(1, 0, 1, 0), t3(-1, 0, 0, 1)])]
        );
        // <x1, x1 + 1> is the unit ideal
        let unit = Ideal::new(
            1,
            vec![
                Polynomial::var(1, 1),
                Polynomial::var(1, 1).add(&Polynomial::constant(1, q(1))),
            ],
        )
        .unwrap();
        let gb = buchberger(&unit, &MonomialOrder::Lex, Budget::default()).unwrap();
        assert_eq!(gb, vec![Polynomial::constant(1, q(1))]);
    }

    #[test]
    fn buchberger_coprime_leading_terms_finish_immediately() {
        // x1 - x3^3 and x2 - x3^2 have coprime leading terms under lex
        let p = Ideal::new(
            3,
            vec![
                poly3(vec![t3(1, 1, 0, 0), t3(-1, 0, 0, 3)]),
                poly3(vec![t3(1, 0, 1, 0), t3(-1, 0, 0, 2)]),
            ],
        )
        .unwrap();
        let gb = buchberger(&p, &MonomialOrder::Lex, Budget::default()).unwrap();
        assert_eq!(
            gb,
            vec![
                poly3(vec![t3(1, 0, 1, 0), t3(-1, 0, 0, 2)]),
                poly3(vec![t3(1, 1, 0, 0), t3(-1, 0, 0, 3)]),
            ]
        );
    }

    #[test]
    fn twisted_cubic_lex_basis_is_the_recorded_one() {
        // frozen fixture: the reduced lex basis of the twisted cubic ideal
        let gb = buchberger(&twisted_cubic(), &MonomialOrder::Lex, Budget::default()).unwrap();
        let expected = vec![
            poly3(vec![t3(1, 0, 3, 0), t3(-1, 0, 0, 2)]), // x2^3 - x3^2
            poly3(vec![t3(1, 1, 0, 1), t3(-1, 0, 2, 0)]), // x1*x3 - x2^2
            poly3(vec![t3(1, 1, 1, 0), t3(-1, 0, 0, 1)]), // x1*x2 - x3
            poly3(vec![t3(1, 2, 0, 0), t3(-1, 0, 1, 0)]), // x1^2 - x2
        ];
        assert_eq!(gb, expected);
    }

    #[test]
    fn buchberger_is_a_fixed_point_on_its_output() {
        let gb = buchberger(&twisted_cubic(), &MonomialOrder::Lex, Budget::default()).unwrap();
        let again = buchberger(
            &Ideal::new(3, gb.clone()).unwrap(),
            &MonomialOrder::Lex,
            Budget::default(),
        )
        .unwrap();
        assert_eq!(gb, again);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let tiny = Budget {
            max_pairs: 0,
            max_degree: 40,
        };
        let err = buchberger(&twisted_cubic(), &MonomialOrder::Lex, tiny).unwrap_err();
        assert!(err.is_budget());
        let low_degree = Budget {
            max_pairs: 10_000,
            max_degree: 1,
        };
        let err = buchberger(&twisted_cubic(), &MonomialOrder::Lex, low_degree).unwrap_err();
        assert!(err.is_budget());
    }

    #[test]
    fn coordinate_independence_of_the_twisted_cubic() {
        let p = twisted_cubic();
        let b = Budget::default();
        assert!(is_coordinate_independent(&p, sub(3, &[1]), b).unwrap());
        assert!(is_coordinate_independent(&p, sub(3, &[2]), b).unwrap());
        assert!(is_coordinate_independent(&p, sub(3, &[3]), b).unwrap());
        assert!(is_coordinate_independent(&p, Subset::EMPTY, b).unwrap());
        assert!(!is_coordinate_independent(&p, sub(3, &[1, 2]), b).unwrap());
        assert!(!is_coordinate_independent(&p, sub(3, &[1, 3]), b).unwrap());
        assert!(!is_coordinate_independent(&p, sub(3, &[2, 3]), b).unwrap());
        assert!(!is_coordinate_independent(&p, Subset::full(3), b).unwrap());
    }

    #[test]
    fn algebraic_matroid_of_plane_and_cubic() {
        let plane = Ideal::new(
            3,
            vec![poly3(vec![t3(1, 1, 0, 0), t3(1, 0, 1, 0), t3(-1, 0, 0, 1)])],
        )
        .unwrap();
        let rep = algebraic_matroid(&plane, Budget::default());
        assert!(rep.loops.is_empty());
        assert!(rep.inconclusive.is_empty());
        assert_eq!(
            rep.family.maximal_members(),
            &[sub(3, &[1, 2]), sub(3, &[1, 3]), sub(3, &[2, 3])]
        );

        let rep = algebraic_matroid(&twisted_cubic(), Budget::default());
        assert!(rep.loops.is_empty());
        assert!(rep.inconclusive.is_empty());
        assert_eq!(
            rep.family.maximal_members(),
            &[sub(3, &[1]), sub(3, &[2]), sub(3, &[3])]
        );
        assert!(crate::matroid::is_matroid(&rep.family).is_ok());
    }

    #[test]
    fn algebraic_matroid_sees_loops() {
        let p = Ideal::new(3, vec![Polynomial::var(3, 1)]).unwrap();
        let rep = algebraic_matroid(&p, Budget::default());
        assert_eq!(rep.loops, vec![1]);
        assert_eq!(rep.family.maximal_members(), &[sub(3, &[2, 3])]);
    }

    #[test]
    fn algebraic_matroid_reports_inconclusive_under_tiny_budget() {
        let tiny = Budget {
            max_pairs: 0,
            max_degree: 40,
        };
        let rep = algebraic_matroid(&twisted_cubic(), tiny);
        assert!(!rep.inconclusive.is_empty());
    }

    #[test]
    fn linear_ideal_examples() {
        let a = RationalMatrix::from_rows(vec![vec![q(1), q(0), q(1)], vec![q(0), q(1), q(1)]])
            .unwrap();
        let p = linear_ideal_from_matrix(&a).unwrap();
        assert_eq!(
            p.generators(),
            &[poly3(vec![t3(1, 1, 0, 0), t3(1, 0, 1, 0), t3(-1, 0, 0, 1)])]
        );
        // identity columns: zero ideal
        let id = RationalMatrix::identity(3);
        assert!(linear_ideal_from_matrix(&id).unwrap().is_zero_ideal());
        // all-ones row: two independent differences
        let ones = RationalMatrix::from_rows(vec![vec![q(1), q(1), q(1)]]).unwrap();
        let p = linear_ideal_from_matrix(&ones).unwrap();
        assert_eq!(
            p.generators(),
            &[
                poly3(vec![t3(1, 1, 0, 0), t3(-1, 0, 1, 0)]),
                poly3(vec![t3(1, 1, 0, 0), t3(-1, 0, 0, 1)]),
            ]
        );
    }

    #[test]
    fn membership_probes_reduce_to_zero() {
        let p = twisted_cubic();
        let gb = buchberger(&p, &MonomialOrder::Lex, Budget::default()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..25 {
            // f = sum of random small-multiplier multiples of the generators
            let mut f = Polynomial::zero(3);
            for g in p.generators() {
                let c = q(rng.random_range(-3..=3));
                let e: Vec<u32> = (0..3).map(|_| rng.random_range(0..=2)).collect();
                let m = Polynomial::from_terms(3, vec![(c, e)]).unwrap();
                f = f.add(&m.mul(g));
            }
            assert!(normal_form(&f, &gb, &MonomialOrder::Lex).is_zero());
        }
    }

    #[test]
    fn independence_is_permutation_invariant() {
        // swap x1 <-> x3 in the twisted cubic and check the permuted subsets
        let p = twisted_cubic();
        let swapped = Ideal::new(
            3,
            vec![
                poly3(vec![t3(1, 0, 1, 0), t3(-1, 0, 0, 2)]), // x2 - x3^2
                poly3(vec![t3(1, 1, 0, 0), t3(-1, 0, 0, 3)]), // x1 - x3^3
            ],
        )
        .unwrap();
        let b = Budget::default();
        for s in all_subsets(3) {
            let swapped_s = Subset::from_elements(
                3,
                &s.elements()
                    .iter()
                    .map(|&e| match e {
                        1 => 3,
                        3 => 1,
                        other => other,
                    })
                    .collect::<Vec<_>>(),
            )
            .unwrap();
            assert_eq!(
                is_coordinate_independent(&p, s, b).unwrap(),
                is_coordinate_independent(&swapped, swapped_s, b).unwrap()
            );
        }
    }
}
