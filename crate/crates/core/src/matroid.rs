//! Matroids presented by their bases.
//!
//! Ground sets are `{1, …, n}`; subsets are bitmasks, so `n` is capped at 63.
//! Rank queries scan the basis list directly, which is the right trade-off at
//! the scales handled here (a few hundred bases at most).  Enumerative
//! operations (flats, chains of flats, independence complexes) additionally
//! cap `n` at 24 since they walk all `2^n` subsets.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::Error;

/// Largest ground set the enumerative operations will walk.
const MAX_ENUMERATION: usize = 24;

/// Subset of `{1, …, n}` stored as a bitmask (element `e` ↔ bit `e−1`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        assert!(n <= 63, "ground set too large for a bitmask subset");
        Subset(if n == 0 { 0 } else { (1u64 << n) - 1 })
    }

    pub fn singleton(e: usize) -> Subset {
        assert!((1..=63).contains(&e), "element out of range");
        Subset(1u64 << (e - 1))
    }

    pub fn from_elements(n: usize, elements: &[usize]) -> Result<Subset, Error> {
        let mut mask = 0u64;
        for &e in elements {
            if e == 0 || e > n {
                return Err(Error::InvalidInput(format!(
                    "element {e} out of range 1..={n}"
                )));
            }
            mask |= 1 << (e - 1);
        }
        Ok(Subset(mask))
    }

    pub(crate) fn from_mask(mask: u64) -> Subset {
        Subset(mask)
    }

    pub(crate) fn mask(self) -> u64 {
        self.0
    }

    pub fn contains(self, e: usize) -> bool {
        (1..=63).contains(&e) && self.0 & (1 << (e - 1)) != 0
    }

    pub fn with(self, e: usize) -> Subset {
        Subset(self.0 | Subset::singleton(e).0)
    }

    pub fn without(self, e: usize) -> Subset {
        Subset(self.0 & !Subset::singleton(e).0)
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersect(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn minus(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Elements in ascending order, 1-indexed.
    pub fn elements(self) -> Vec<usize> {
        (1..=63).filter(|&e| self.contains(e)).collect()
    }

    /// Remove `e` and shift every larger element down by one (relabeling
    /// used by minors).
    pub fn delete_element(self, e: usize) -> Subset {
        let p = e - 1;
        let low = (1u64 << p) - 1;
        let m = self.0 & !(1u64 << p);
        Subset((m & low) | ((m & !low) >> 1))
    }

    /// Order by cardinality, then by the ascending element list.
    pub fn canonical_cmp(self, other: Subset) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.elements().cmp(&other.elements()))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements().iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All subsets of `{1, …, n}` in ascending mask order.
pub fn all_subsets(n: usize) -> impl Iterator<Item = Subset> {
    assert!(n <= MAX_ENUMERATION, "ground set too large to enumerate");
    (0..(1u64 << n)).map(Subset)
}

/// Downward-closed set family on `{1, …, n}`, stored by its maximal members.
#[derive(Clone, PartialEq, Eq)]
pub struct IndependenceFamily {
    n: usize,
    maximal: Vec<Subset>,
}

impl IndependenceFamily {
    /// Build from a list of members; dominated members are dropped.
    pub fn from_maximal(n: usize, members: Vec<Subset>) -> IndependenceFamily {
        let mut maximal: Vec<Subset> = Vec::new();
        for m in &members {
            if members.iter().any(|o| *m != *o && m.is_subset_of(*o)) {
                continue;
            }
            if !maximal.contains(m) {
                maximal.push(*m);
            }
        }
        maximal.sort_by(|a, b| a.canonical_cmp(*b));
        IndependenceFamily { n, maximal }
    }

    /// Build from an arbitrary member list (the downward closure is implied).
    pub fn from_members(n: usize, members: &[Subset]) -> IndependenceFamily {
        Self::from_maximal(n, members.to_vec())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn maximal_members(&self) -> &[Subset] {
        &self.maximal
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.maximal.iter().any(|m| s.is_subset_of(*m))
    }

    /// Every member, expanded from the maximal ones, in canonical order.
    pub fn members(&self) -> Vec<Subset> {
        let mut all: BTreeSet<Subset> = BTreeSet::new();
        for m in &self.maximal {
            // all subsets of m via the standard submask walk
            let mask = m.mask();
            let mut sub = mask;
            loop {
                all.insert(Subset::from_mask(sub));
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & mask;
            }
        }
        let mut v: Vec<Subset> = all.into_iter().collect();
        v.sort_by(|a, b| a.canonical_cmp(*b));
        v
    }
}

impl fmt::Debug for IndependenceFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.maximal.iter().map(Subset::to_string).collect();
        write!(f, "IndependenceFamily(n={}; {})", self.n, parts.join(" "))
    }
}

/// Why a family fails to be a matroid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatroidViolation {
    /// The family has no members at all.
    Empty,
    /// Exchange fails: no element of `larger − smaller` extends `smaller`
    /// inside the family.
    Exchange { smaller: Subset, larger: Subset },
}

impl fmt::Display for MatroidViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatroidViolation::Empty => write!(f, "family is empty"),
            MatroidViolation::Exchange { smaller, larger } => {
                write!(f, "exchange fails for ({smaller}, {larger})")
            }
        }
    }
}

/// Check the independence axioms on a downward-closed family.
///
/// The family is downward closed by construction, so this checks nonemptiness
/// and augmentation: for members `I`, `J` with `|I| < |J|` some `e ∈ J − I`
/// must keep `I + e` in the family.  The first violating pair in canonical
/// order is returned as the certificate.
pub fn is_matroid(family: &IndependenceFamily) -> Result<(), MatroidViolation> {
    let members = family.members();
    if members.is_empty() {
        return Err(MatroidViolation::Empty);
    }
    for &i in &members {
        for &j in &members {
            if i.len() >= j.len() {
                continue;
            }
            let extends = j
                .minus(i)
                .elements()
                .iter()
                .any(|&e| family.contains(i.with(e)));
            if !extends {
                return Err(MatroidViolation::Exchange {
                    smaller: i,
                    larger: j,
                });
            }
        }
    }
    Ok(())
}

/// Strictly increasing chain of proper nonempty flats, one per rank.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FlatChain {
    pub flats: Vec<Subset>,
}

impl fmt::Display for FlatChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.flats.iter().map(Subset::to_string).collect();
        write!(f, "{}", parts.join("<"))
    }
}

impl fmt::Debug for FlatChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Matroid on `{1, …, n}` given by its list of bases.
#[derive(Clone, PartialEq, Eq)]
pub struct Matroid {
    n: usize,
    rank: usize,
    bases: Vec<Subset>,
}

impl Matroid {
    /// Build from explicit bases.  Checks shape only (nonempty, equal
    /// cardinality, elements in range); the exchange axiom is checked by
    /// [`is_matroid`] on the independence complex, not here.
    pub fn from_bases(n: usize, bases: Vec<Subset>) -> Result<Matroid, Error> {
        if n > MAX_ENUMERATION {
            return Err(Error::InvalidInput(format!(
                "ground set of size {n} exceeds the supported maximum {MAX_ENUMERATION}"
            )));
        }
        let Some(first) = bases.first() else {
            return Err(Error::InvalidInput(
                "matroid needs at least one basis".into(),
            ));
        };
        let rank = first.len();
        let full = Subset::full(n);
        for b in &bases {
            if b.len() != rank {
                return Err(Error::InvalidInput(format!(
                    "bases of different sizes: {} and {}",
                    first, b
                )));
            }
            if !b.is_subset_of(full) {
                return Err(Error::InvalidInput(format!(
                    "basis {b} contains elements beyond the ground set {{1,…,{n}}}"
                )));
            }
        }
        let mut bases = bases;
        bases.sort_by(|a, b| a.canonical_cmp(*b));
        bases.dedup();
        Ok(Matroid { n, rank, bases })
    }

    /// Uniform matroid `U_{r,n}`: every `r`-subset is a basis.
    pub fn uniform(r: usize, n: usize) -> Result<Matroid, Error> {
        if r > n {
            return Err(Error::InvalidInput(format!(
                "uniform matroid needs r <= n, got r={r}, n={n}"
            )));
        }
        if n > MAX_ENUMERATION {
            return Err(Error::InvalidInput(format!(
                "ground set of size {n} too large to enumerate"
            )));
        }
        let bases = all_subsets(n).filter(|s| s.len() == r).collect();
        Matroid::from_bases(n, bases)
    }

    /// Column matroid of a rational matrix: element `j` is column `j`, and
    /// bases are the maximal independent column sets.
    pub fn from_matrix(a: &crate::linalg::RationalMatrix) -> Result<Matroid, Error> {
        let n = a.cols();
        if n > MAX_ENUMERATION {
            return Err(Error::InvalidInput(format!(
                "matrix with {n} columns too large to enumerate"
            )));
        }
        let r = crate::linalg::rank(a);
        if r == 0 {
            return Matroid::from_bases(n, vec![Subset::EMPTY]);
        }
        let mut bases = Vec::new();
        for s in all_subsets(n) {
            if s.len() != r {
                continue;
            }
            let cols: Vec<usize> = s.elements().iter().map(|&e| e - 1).collect();
            if crate::linalg::rank(&a.select_columns(&cols)) == r {
                bases.push(s);
            }
        }
        Matroid::from_bases(n, bases)
    }

    /// The rank-4 matroid on 8 elements whose bases are all 4-subsets except
    /// the five pair-unions {1,2,3,4}, {1,2,5,6}, {3,4,5,6}, {1,2,7,8},
    /// {3,4,7,8}.
    pub fn vamos() -> Matroid {
        let n = 8;
        let excluded: Vec<Subset> = [
            [1usize, 2, 3, 4],
            [1, 2, 5, 6],
            [3, 4, 5, 6],
            [1, 2, 7, 8],
            [3, 4, 7, 8],
        ]
        .iter()
        .map(|e| Subset::from_elements(n, e).unwrap())
        .collect();
        let bases = all_subsets(n)
            .filter(|s| s.len() == 4 && !excluded.contains(s))
            .collect();
        Matroid::from_bases(n, bases).expect("fixed construction")
    }

    /// Cycle matroid of a multigraph: element `i` is the `i`-th edge and
    /// bases are the spanning forests.  Self-loops become matroid loops.
    pub fn graphic_from_edges(edges: &[(usize, usize)]) -> Result<Matroid, Error> {
        let m = edges.len();
        if m == 0 || m > MAX_ENUMERATION {
            return Err(Error::InvalidInput(format!(
                "edge count {m} out of the supported range 1..={MAX_ENUMERATION}"
            )));
        }
        let mut vertices: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        vertices.sort_unstable();
        vertices.dedup();
        let vid = |v: usize| vertices.binary_search(&v).unwrap();
        let forest_size = |s: Subset| -> Option<usize> {
            // union-find; None when s contains a cycle
            let mut parent: Vec<usize> = (0..vertices.len()).collect();
            fn find(parent: &mut [usize], mut x: usize) -> usize {
                while parent[x] != x {
                    parent[x] = parent[parent[x]];
                    x = parent[x];
                }
                x
            }
            let mut count = 0;
            for &e in &s.elements() {
                let (u, v) = edges[e - 1];
                let (ru, rv) = (find(&mut parent, vid(u)), find(&mut parent, vid(v)));
                if ru == rv {
                    return None;
                }
                parent[ru] = rv;
                count += 1;
            }
            Some(count)
        };
        let r = all_subsets(m).filter_map(forest_size).max().unwrap_or(0);
        if r == 0 {
            return Matroid::from_bases(m, vec![Subset::EMPTY]);
        }
        let bases = all_subsets(m)
            .filter(|s| s.len() == r && forest_size(*s).is_some())
            .collect();
        Matroid::from_bases(m, bases)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[Subset] {
        &self.bases
    }

    /// Rank of a subset: the largest overlap with any basis.
    pub fn rank_of(&self, s: Subset) -> usize {
        self.bases
            .iter()
            .map(|b| b.intersect(s).len())
            .max()
            .unwrap_or(0)
    }

    /// Smallest flat containing `s`.
    pub fn closure(&self, s: Subset) -> Subset {
        let r = self.rank_of(s);
        let mut out = s;
        for e in 1..=self.n {
            if !s.contains(e) && self.rank_of(s.with(e)) == r {
                out = out.with(e);
            }
        }
        out
    }

    /// All flats, canonically sorted.  Walks every subset, so `n ≤ 24`.
    pub fn flats(&self) -> Vec<Subset> {
        assert!(
            self.n <= MAX_ENUMERATION,
            "ground set too large to enumerate"
        );
        let mut seen = BTreeSet::new();
        for s in all_subsets(self.n) {
            seen.insert(self.closure(s));
        }
        let mut v: Vec<Subset> = seen.into_iter().collect();
        v.sort_by(|a, b| a.canonical_cmp(*b));
        v
    }

    /// Elements contained in no basis.
    pub fn loops(&self) -> Vec<usize> {
        (1..=self.n)
            .filter(|&e| self.bases.iter().all(|b| !b.contains(e)))
            .collect()
    }

    /// Elements contained in every basis.
    pub fn coloops(&self) -> Vec<usize> {
        (1..=self.n)
            .filter(|&e| self.bases.iter().all(|b| b.contains(e)))
            .collect()
    }

    /// Delete all loops, relabeling the remaining elements.  Returns the new
    /// matroid and the deleted elements (original labels, ascending).
    pub fn simplify(&self) -> (Matroid, Vec<usize>) {
        let loops = self.loops();
        let mut m = self.clone();
        for &e in loops.iter().rev() {
            m = m.deletion(e).expect("loop deletion cannot fail");
        }
        (m, loops)
    }

    /// Maximal chains of proper nonempty flats (one flat per rank
    /// `1, …, rank−1`).  Requires a loop-free matroid.
    pub fn maximal_flat_chains(&self) -> Result<Vec<FlatChain>, Error> {
        let loops = self.loops();
        if !loops.is_empty() {
            return Err(Error::Loops(loops));
        }
        if self.rank <= 1 {
            return Ok(vec![FlatChain { flats: Vec::new() }]);
        }
        let flats = self.flats();
        let mut by_rank: Vec<Vec<Subset>> = vec![Vec::new(); self.rank];
        for &f in &flats {
            let r = self.rank_of(f);
            if (1..self.rank).contains(&r) && f != Subset::full(self.n) {
                by_rank[r].push(f);
            }
        }
        let mut chains = Vec::new();
        let mut current = Vec::new();
        fn extend(
            by_rank: &[Vec<Subset>],
            level: usize,
            top: usize,
            current: &mut Vec<Subset>,
            chains: &mut Vec<FlatChain>,
        ) {
            if level > top {
                chains.push(FlatChain {
                    flats: current.clone(),
                });
                return;
            }
            for &f in &by_rank[level] {
                if current.last().is_some_and(|&p| !p.is_subset_of(f)) {
                    continue;
                }
                current.push(f);
                extend(by_rank, level + 1, top, current, chains);
                current.pop();
            }
        }
        extend(&by_rank, 1, self.rank - 1, &mut current, &mut chains);
        Ok(chains)
    }

    /// The independence complex: the downward closure of the bases.
    pub fn independence_complex(&self) -> IndependenceFamily {
        IndependenceFamily::from_maximal(self.n, self.bases.clone())
    }

    /// Delete element `e`, relabeling `{e+1, …, n}` down by one.
    pub fn deletion(&self, e: usize) -> Result<Matroid, Error> {
        self.check_element(e)?;
        if self.n == 1 {
            return Err(Error::InvalidInput(
                "cannot delete the last element of the ground set".into(),
            ));
        }
        let avoiding: Vec<Subset> = self
            .bases
            .iter()
            .filter(|b| !b.contains(e))
            .map(|b| b.delete_element(e))
            .collect();
        let bases = if avoiding.is_empty() {
            // e is a coloop: the independent sets avoiding e are B − e
            self.bases.iter().map(|b| b.delete_element(e)).collect()
        } else {
            avoiding
        };
        Matroid::from_bases(self.n - 1, bases)
    }

    /// Contract element `e`, relabeling.  Contracting a loop is deletion.
    pub fn contraction(&self, e: usize) -> Result<Matroid, Error> {
        self.check_element(e)?;
        if self.n == 1 {
            return Err(Error::InvalidInput(
                "cannot contract the last element of the ground set".into(),
            ));
        }
        let containing: Vec<Subset> = self
            .bases
            .iter()
            .filter(|b| b.contains(e))
            .map(|b| b.delete_element(e))
            .collect();
        if containing.is_empty() {
            return self.deletion(e);
        }
        Matroid::from_bases(self.n - 1, containing)
    }

    /// Dual matroid: bases are the complements of bases.
    pub fn dual(&self) -> Matroid {
        let full = Subset::full(self.n);
        let bases = self.bases.iter().map(|b| full.minus(*b)).collect();
        Matroid::from_bases(self.n, bases).expect("complements are well-formed")
    }

    /// Connected in the matroid sense: no proper nonempty `A` with
    /// `rank(A) + rank(E−A) = rank(E)`.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let full = Subset::full(self.n);
        for s in all_subsets(self.n) {
            if s.is_empty() || s == full {
                continue;
            }
            if self.rank_of(s) + self.rank_of(full.minus(s)) == self.rank {
                return false;
            }
        }
        true
    }

    fn check_element(&self, e: usize) -> Result<(), Error> {
        if e == 0 || e > self.n {
            return Err(Error::InvalidInput(format!(
                "element {e} out of range 1..={}",
                self.n
            )));
        }
        Ok(())
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Matroid(n={}, rank={}, {} bases)",
            self.n,
            self.rank,
            self.bases.len()
        )
    }
}
