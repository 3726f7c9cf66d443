//! Exact linear algebra over the rationals and integer lattice routines.
//!
//! Matrices hold arbitrary-precision rationals and elimination always picks
//! the nonzero pivot of smallest absolute value (lowest row index on ties),
//! so every run of every operation is bit-for-bit reproducible.
//!
//! The lattice half works with row lattices of integer matrices through a
//! Smith-style diagonalization that tracks the inverse of the column
//! transform: if `U·A·V = D` with `U`, `V` unimodular and `D` diagonal, the
//! saturation of the row space of `A` in `Z^n` is spanned by the rows of
//! `V⁻¹` that pair with nonzero diagonal entries.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational number (always reduced, positive denominator).
pub type Rational = BigRational;

/// Dense row-major matrix of rationals.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    /// The `rows × cols` zero matrix.
    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Build from row vectors; all rows must have equal length.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, Error> {
        let ncols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::Shape(format!(
                "ragged rows: expected {} columns, found {}",
                ncols,
                bad.len()
            )));
        }
        Ok(RationalMatrix {
            rows: rows.len(),
            cols: ncols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.at(r, c).clone());
            }
        }
        t
    }

    /// Matrix formed by the given columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        let mut m = Self::zero(self.rows, cols.len());
        for r in 0..self.rows {
            for (i, &c) in cols.iter().enumerate() {
                m.set(r, i, self.at(r, c).clone());
            }
        }
        m
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// row[target] -= q * row[src]
    fn row_sub(&mut self, target: usize, src: usize, q: &Rational) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.at(target, c) - q * self.at(src, c);
            self.set(target, c, v);
        }
    }

    fn scale_row(&mut self, r: usize, q: &Rational) {
        for c in 0..self.cols {
            let v = self.at(r, c) * q;
            self.set(r, c, v);
        }
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Reduced row echelon form together with the pivot (row, column) pairs.
///
/// Pivot selection: within the current column, the nonzero candidate of
/// smallest absolute value, lowest row index on ties.
pub fn rref(m: &RationalMatrix) -> (RationalMatrix, Vec<(usize, usize)>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..a.cols {
        if next == a.rows {
            break;
        }
        let mut best: Option<usize> = None;
        for r in next..a.rows {
            if a.at(r, col).is_zero() {
                continue;
            }
            best = match best {
                Some(b) if a.at(r, col).abs() >= a.at(b, col).abs() => Some(b),
                _ => Some(r),
            };
        }
        let Some(p) = best else { continue };
        a.swap_rows(next, p);
        let inv = a.at(next, col).recip();
        a.scale_row(next, &inv);
        for r in 0..a.rows {
            if r != next && !a.at(r, col).is_zero() {
                let q = a.at(r, col).clone();
                a.row_sub(r, next, &q);
            }
        }
        pivots.push((next, col));
        next += 1;
    }
    (a, pivots)
}

/// Rank via exact elimination.
pub fn rank(m: &RationalMatrix) -> usize {
    rref(m).1.len()
}

/// Rank of the span of a list of row vectors.
pub fn rank_of_rows(rows: &[Vec<Rational>]) -> usize {
    match RationalMatrix::from_rows(rows.to_vec()) {
        Ok(m) => rank(&m),
        Err(_) => 0,
    }
}

/// Canonical basis of the right kernel `{ v : m·v = 0 }`.
///
/// One basis vector per free column, in ascending column order, each with a 1
/// in its free position — the standard parametrization read off the reduced
/// echelon form.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let (r, pivots) = rref(m);
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    let mut basis = Vec::new();
    for free in 0..m.cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![Rational::zero(); m.cols];
        v[free] = Rational::one();
        for &(prow, pcol) in &pivots {
            v[pcol] = -r.at(prow, free).clone();
        }
        basis.push(v);
    }
    basis
}

/// One solution of `a·x = b` (free variables set to zero), or `None` if the
/// system is inconsistent.
pub fn solve(a: &RationalMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    assert_eq!(a.rows(), b.len(), "solve: right-hand side length mismatch");
    let mut aug = RationalMatrix::zero(a.rows, a.cols + 1);
    for (r, rhs) in b.iter().enumerate() {
        for c in 0..a.cols {
            aug.set(r, c, a.at(r, c).clone());
        }
        aug.set(r, a.cols, rhs.clone());
    }
    let (r, pivots) = rref(&aug);
    if pivots.iter().any(|&(_, c)| c == a.cols) {
        return None; // pivot in the augmented column: inconsistent
    }
    let mut x = vec![Rational::zero(); a.cols];
    for &(prow, pcol) in &pivots {
        x[pcol] = r.at(prow, a.cols).clone();
    }
    Some(x)
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    assert_eq!(a.len(), b.len(), "dot: length mismatch");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// Orthogonalized spanning set of a subspace, used to project vectors onto
/// the orthogonal complement of that subspace (all over `Q`, no square roots).
pub struct OrthogonalComplement {
    basis: Vec<Vec<Rational>>,
}

impl OrthogonalComplement {
    pub fn new(span_rows: &[Vec<Rational>]) -> Self {
        let mut basis: Vec<Vec<Rational>> = Vec::new();
        for row in span_rows {
            let v = project_out(&basis, row);
            if !is_zero_vec(&v) {
                basis.push(v);
            }
        }
        OrthogonalComplement { basis }
    }

    /// Component of `v` orthogonal to the subspace.
    pub fn project(&self, v: &[Rational]) -> Vec<Rational> {
        project_out(&self.basis, v)
    }

    pub fn in_span(&self, v: &[Rational]) -> bool {
        is_zero_vec(&self.project(v))
    }
}

fn project_out(orthogonal: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    let mut out = v.to_vec();
    for b in orthogonal {
        let c = dot(&out, b) / dot(b, b);
        if !c.is_zero() {
            for (o, bi) in out.iter_mut().zip(b) {
                *o -= &c * bi;
            }
        }
    }
    out
}

/// Integer vector; primitive lattice data is carried in this form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntegerVector(pub Vec<BigInt>);

impl IntegerVector {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn to_rationals(&self) -> Vec<Rational> {
        self.0
            .iter()
            .map(|x| Rational::from_integer(x.clone()))
            .collect()
    }

    pub fn negated(&self) -> Self {
        IntegerVector(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Display for IntegerVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl fmt::Debug for IntegerVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The unique integer vector parallel to `v`, pointing the same way, with
/// coprime entries.  Errors on the zero vector.
pub fn primitive_vector(v: &[Rational]) -> Result<IntegerVector, Error> {
    if is_zero_vec(v) {
        return Err(Error::ZeroVector);
    }
    let mut scale = BigInt::one();
    for x in v {
        scale = scale.lcm(x.denom());
    }
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(scale.clone())).to_integer())
        .collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    Ok(IntegerVector(ints.into_iter().map(|x| x / &g).collect()))
}

/// Dense row-major integer matrix used by the lattice routines.
#[derive(Clone, PartialEq, Eq)]
struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        IntMatrix {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    fn row(&self, r: usize) -> Vec<BigInt> {
        self.entries[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[target] -= q * row[src]
    fn row_sub(&mut self, target: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.at(target, c) - q * self.at(src, c);
            self.entries[target * self.cols + c] = v;
        }
    }

    /// col[target] -= q * col[src]
    fn col_sub(&mut self, target: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = self.at(r, target) - q * self.at(r, src);
            self.entries[r * self.cols + target] = v;
        }
    }

    /// row[target] += q * row[src]
    fn row_add(&mut self, target: usize, src: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = self.at(target, c) + q * self.at(src, c);
            self.entries[target * self.cols + c] = v;
        }
    }
}

/// Diagonalize an integer matrix by unimodular row and column operations,
/// returning the diagonal and `V⁻¹` where column operations accumulate into
/// `V` (so `U·A·V` is diagonal for some unimodular `U`).
///
/// The diagonal is not normalized to the divisibility chain; callers here
/// only need which entries are nonzero (saturations) or that all are units
/// (free quotients).
fn diagonalize(mut a: IntMatrix) -> (Vec<BigInt>, IntMatrix) {
    let n = a.cols;
    let mut vinv = IntMatrix::identity(n);
    let steps = a.rows.min(a.cols);
    'outer: for k in 0..steps {
        loop {
            // Smallest-magnitude nonzero entry of the trailing block.
            let mut best: Option<(usize, usize)> = None;
            for i in k..a.rows {
                for j in k..a.cols {
                    if a.at(i, j).is_zero() {
                        continue;
                    }
                    best = match best {
                        Some((bi, bj)) if a.at(i, j).abs() >= a.at(bi, bj).abs() => Some((bi, bj)),
                        _ => Some((i, j)),
                    };
                }
            }
            let Some((pi, pj)) = best else { break 'outer };
            a.swap_rows(k, pi);
            if pj != k {
                a.swap_cols(k, pj);
                vinv.swap_rows(k, pj);
            }
            let mut clean = true;
            for i in k + 1..a.rows {
                if a.at(i, k).is_zero() {
                    continue;
                }
                let q = a.at(i, k) / a.at(k, k); // truncating: |remainder| < |pivot|
                a.row_sub(i, k, &q);
                if !a.at(i, k).is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..a.cols {
                if a.at(k, j).is_zero() {
                    continue;
                }
                let q = a.at(k, j) / a.at(k, k);
                a.col_sub(j, k, &q);
                vinv.row_add(k, j, &q);
                if !a.at(k, j).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
    }
    let diag = (0..steps).map(|k| a.at(k, k).clone()).collect();
    (diag, vinv)
}

/// Basis of the saturated lattice `Z^n ∩ span(rows)`.
///
/// The rows may be rational and redundant; the result has one integer basis
/// vector per dimension of the span.
pub fn saturation_basis(rows: &[Vec<Rational>]) -> Result<Vec<IntegerVector>, Error> {
    if rows.is_empty() {
        return Ok(Vec::new());
    }
    let m = RationalMatrix::from_rows(rows.to_vec())?;
    let (r, pivots) = rref(&m);
    let d = pivots.len();
    if d == 0 {
        return Ok(Vec::new());
    }
    let mut int_rows = Vec::with_capacity(d);
    for i in 0..d {
        int_rows.push(primitive_vector(r.row(i))?.0);
    }
    let (diag, vinv) = diagonalize(IntMatrix::from_rows(int_rows));
    debug_assert!(diag.iter().all(|x| !x.is_zero()));
    Ok((0..d).map(|i| IntegerVector(vinv.row(i))).collect())
}

/// Primitive generator of the rank-one lattice quotient determined by a
/// facet cone and one of its ridges.
///
/// Preconditions: `span(ridge) ⊂ span(facet)` with the dimensions differing
/// by exactly one, and the facet generators all lying on one closed side of
/// `span(ridge)` within `span(facet)`.
///
/// The result is an integer vector in `span(facet)` that generates
/// `(Z^n ∩ span(facet)) / (Z^n ∩ span(ridge))` and points into the facet.
/// The representative of the generating coset is canonicalized by a
/// nearest-plane reduction against the computed basis of the ridge lattice:
/// Gram–Schmidt coefficients are rounded with `⌊x + 1/2⌋`, processing the
/// basis in reverse order.  This makes the output reproducible bit for bit.
pub fn quotient_primitive_generator(
    facet: &[Vec<Rational>],
    ridge: &[Vec<Rational>],
) -> Result<IntegerVector, Error> {
    let Some(first) = facet.first() else {
        return Err(Error::Shape(
            "facet must have at least one generator".into(),
        ));
    };
    let n = first.len();
    if facet.iter().chain(ridge).any(|v| v.len() != n) {
        return Err(Error::Shape(format!(
            "facet/ridge generators must all have length {n}"
        )));
    }
    let rf = rank_of_rows(facet);
    let rr = rank_of_rows(ridge);
    let mut stacked = facet.to_vec();
    stacked.extend(ridge.iter().cloned());
    if rank_of_rows(&stacked) != rf {
        return Err(Error::InvalidInput(
            "ridge span is not contained in the facet span".into(),
        ));
    }
    if rf != rr + 1 {
        return Err(Error::InvalidInput(format!(
            "facet span has dimension {rf}, ridge span {rr}; they must differ by exactly 1"
        )));
    }

    let w = saturation_basis(facet)?;
    let mut u: Vec<BigInt> = if rr == 0 {
        w[0].0.clone()
    } else {
        let r_basis = saturation_basis(ridge)?;
        // Coordinates of the ridge lattice basis in terms of the facet one.
        let wt =
            RationalMatrix::from_rows(w.iter().map(|v| v.to_rationals()).collect())?.transpose();
        let mut coord_rows = Vec::with_capacity(rr);
        for rv in &r_basis {
            let x = solve(&wt, &rv.to_rationals()).ok_or_else(|| {
                Error::Internal("ridge lattice vector outside the facet span".into())
            })?;
            let mut int_row = Vec::with_capacity(x.len());
            for c in &x {
                if !c.is_integer() {
                    return Err(Error::Internal(
                        "ridge lattice not contained in the facet lattice".into(),
                    ));
                }
                int_row.push(c.to_integer());
            }
            coord_rows.push(int_row);
        }
        let (diag, vinv) = diagonalize(IntMatrix::from_rows(coord_rows));
        if diag.iter().any(|d| d.abs() != BigInt::one()) {
            return Err(Error::Internal(
                "ridge lattice is not saturated in the facet lattice".into(),
            ));
        }
        let coords = vinv.row(rf - 1);
        let mut acc = vec![BigInt::zero(); n];
        for (c, wv) in coords.iter().zip(&w) {
            for (a, b) in acc.iter_mut().zip(&wv.0) {
                *a += c * b;
            }
        }
        acc
    };

    // Orient the generator into the facet: compare against the sum of the
    // facet generators' components orthogonal to the ridge span.
    let oc = OrthogonalComplement::new(ridge);
    let mut side = vec![Rational::zero(); n];
    for g in facet {
        for (s, p) in side.iter_mut().zip(oc.project(g)) {
            *s += p;
        }
    }
    if is_zero_vec(&side) {
        return Err(Error::InvalidInput(
            "facet generators do not single out a side of the ridge".into(),
        ));
    }
    let u_rat: Vec<Rational> = u
        .iter()
        .map(|x| Rational::from_integer(x.clone()))
        .collect();
    let u_perp = oc.project(&u_rat);
    let orientation = dot(&side, &u_perp);
    if orientation.is_zero() {
        return Err(Error::Internal(
            "quotient generator lies in the ridge span".into(),
        ));
    }
    if orientation.is_negative() {
        for x in &mut u {
            *x = -(x.clone());
        }
    }

    // Canonical representative: nearest-plane reduction against the ridge
    // lattice basis, reverse order, rounding ⌊x + 1/2⌋.
    if rr > 0 {
        let r_basis = saturation_basis(ridge)?;
        let r_rat: Vec<Vec<Rational>> = r_basis.iter().map(|v| v.to_rationals()).collect();
        let mut gs: Vec<Vec<Rational>> = Vec::with_capacity(rr);
        for row in &r_rat {
            gs.push(project_out(&gs, row));
        }
        let half = Rational::new(BigInt::one(), BigInt::from(2));
        for j in (0..rr).rev() {
            let u_rat: Vec<Rational> = u
                .iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect();
            let c = dot(&u_rat, &gs[j]) / dot(&gs[j], &gs[j]);
            let k = (c + &half).floor().to_integer();
            if !k.is_zero() {
                for (a, b) in u.iter_mut().zip(&r_basis[j].0) {
                    *a -= &k * b;
                }
            }
        }
    }
    Ok(IntegerVector(u))
}
