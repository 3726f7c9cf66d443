//! Bergman fans of matroids, with the cross-checks connecting the three
//! views of independence: matroid bases, fan projections, and coordinate
//! projections of an ideal's variety.
//!
//! The Bergman fan of a loop-free matroid has one maximal cone per maximal
//! chain of proper nonempty flats — the cone spanned by the chain's
//! indicator vectors plus the all-ones lineality line — and all weights 1.

use std::fmt;

use crate::error::Error;
use crate::fan::{self, WeightedCone, WeightedFan};
use crate::groebner::{algebraic_matroid, Budget, Ideal};
use crate::linalg::Rational;
use crate::matroid::{FlatChain, IndependenceFamily, Matroid, Subset};

use num_traits::{One, Zero};

/// A matroid's Bergman fan along with its provenance: the matroid and, in
/// cone order, the flat chain each maximal cone came from.
#[derive(Clone)]
pub struct BergmanFan {
    pub fan: WeightedFan,
    pub matroid: Matroid,
    pub chains: Vec<FlatChain>,
}

impl fmt::Debug for BergmanFan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "BergmanFan({:?}, {} cones)",
            self.matroid,
            self.chains.len()
        )
    }
}

fn indicator(n: usize, s: Subset) -> Vec<Rational> {
    (1..=n)
        .map(|e| {
            if s.contains(e) {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect()
}

/// Build the Bergman fan of a loop-free matroid of positive rank.
///
/// Cones are labeled by their chains ("{1}<{1,2}"; the empty chain of a
/// rank-1 matroid gives the empty label) and ordered by the canonical chain
/// enumeration, so the output is deterministic.
pub fn bergman_fan(m: &Matroid) -> Result<BergmanFan, Error> {
    let loops = m.loops();
    if !loops.is_empty() {
        return Err(Error::Loops(loops));
    }
    if m.rank() == 0 {
        return Err(Error::InvalidInput(
            "rank-0 matroid has no Bergman fan".into(),
        ));
    }
    let n = m.n();
    let chains = m.maximal_flat_chains()?;
    let cones: Vec<WeightedCone> = chains
        .iter()
        .map(|chain| WeightedCone {
            rays: chain.flats.iter().map(|&f| indicator(n, f)).collect(),
            weight: 1,
            label: chain.to_string(),
        })
        .collect();
    let fan = WeightedFan::new(n, vec![vec![Rational::one(); n]], cones)?;
    Ok(BergmanFan {
        fan,
        matroid: m.clone(),
        chains,
    })
}

/// One independent subset's explicit certificate: the chain of closures of
/// its prefixes, whose cone projects onto all of `Q^S`.
#[derive(Clone, Debug)]
pub struct ChainWitness {
    pub subset: Subset,
    pub chain: FlatChain,
    pub full_dimensional: bool,
}

/// Outcome of the fan-vs-matroid comparison.
#[derive(Clone, Debug)]
pub struct LemmaReport {
    pub equal: bool,
    pub fan_family: IndependenceFamily,
    pub matroid_family: IndependenceFamily,
    /// First subset (in canonical order) on which the families disagree.
    pub witness: Option<Subset>,
    pub chain_witnesses: Vec<ChainWitness>,
}

/// First subset belonging to exactly one of the two families.
pub fn first_family_difference(a: &IndependenceFamily, b: &IndependenceFamily) -> Option<Subset> {
    let av = a.members();
    let bv = b.members();
    let in_b: std::collections::BTreeSet<Subset> = bv.iter().copied().collect();
    let in_a: std::collections::BTreeSet<Subset> = av.iter().copied().collect();
    let mut diff: Vec<Subset> = av
        .iter()
        .filter(|s| !in_b.contains(s))
        .chain(bv.iter().filter(|s| !in_a.contains(s)))
        .copied()
        .collect();
    diff.sort_by(|x, y| x.canonical_cmp(*y));
    diff.first().copied()
}

/// Compare the Bergman fan's independence complex with the matroid's own,
/// and produce for every independent subset the chain-of-flats certificate:
/// closures of the subset's prefixes, giving a cone whose projection to the
/// subset's coordinates is full-dimensional.
pub fn verify_lemma_bergman(m: &Matroid) -> Result<LemmaReport, Error> {
    let bf = bergman_fan(m)?;
    let fan_family = fan::fan_independence_complex(&bf.fan);
    let matroid_family = m.independence_complex();
    let equal = fan_family == matroid_family;
    let witness = if equal {
        None
    } else {
        first_family_difference(&fan_family, &matroid_family)
    };

    let n = m.n();
    let mut chain_witnesses = Vec::new();
    for s in matroid_family.members() {
        let mut flats = Vec::new();
        let mut prefix = Subset::EMPTY;
        for e in s.elements() {
            prefix = prefix.with(e);
            let f = m.closure(prefix);
            if f != Subset::full(n) && flats.last() != Some(&f) {
                flats.push(f);
            }
        }
        let chain = FlatChain { flats };
        let full_dimensional = if s.is_empty() {
            true
        } else {
            let cone = fan::Cone::new(
                n,
                chain.flats.iter().map(|&f| indicator(n, f)).collect(),
                vec![vec![Rational::one(); n]],
            )?;
            fan::cone_dim(&fan::project_cone(&cone, s)?) == s.len()
        };
        chain_witnesses.push(ChainWitness {
            subset: s,
            chain,
            full_dimensional,
        });
    }

    Ok(LemmaReport {
        equal,
        fan_family,
        matroid_family,
        witness,
        chain_witnesses,
    })
}

/// Outcome of checking an ideal as a realization witness for a matroid.
#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub matches: bool,
    /// First subset on which the ideal's matroid and the given matroid differ.
    pub witness: Option<Subset>,
    /// Subsets the Gröbner budget left undecided; nonempty means the
    /// comparison is inconclusive rather than settled.
    pub inconclusive: Vec<Subset>,
}

/// Check whether `p`'s algebraic matroid equals `m`'s independence complex —
/// the matroid-level sanity test a set-theoretic realization must pass.
///
/// Requires a monomial-free presentation: an explicit monomial generator
/// contradicts primeness of a proper ideal containing no coordinate, so the
/// input is rejected rather than analyzed.  (Primality itself is assumed,
/// not verified.)
pub fn realizability_witness_check(
    m: &Matroid,
    p: &Ideal,
    budget: Budget,
) -> Result<WitnessReport, Error> {
    if p.nvars() != m.n() {
        return Err(Error::InvalidInput(format!(
            "ideal in {} variables checked against a matroid on {} elements",
            p.nvars(),
            m.n()
        )));
    }
    if let Some(i) = p.generators().iter().position(|g| g.is_monomial()) {
        return Err(Error::InvalidInput(format!(
            "generator {} is a monomial ({}); witness ideals must be monomial-free",
            i + 1,
            p.generators()[i]
        )));
    }
    let rep = algebraic_matroid(p, budget);
    let target = m.independence_complex();
    let matches = rep.inconclusive.is_empty() && rep.family == target;
    let witness = if matches || !rep.inconclusive.is_empty() {
        None
    } else {
        first_family_difference(&rep.family, &target)
    };
    Ok(WitnessReport {
        matches,
        witness,
        inconclusive: rep.inconclusive,
    })
}
