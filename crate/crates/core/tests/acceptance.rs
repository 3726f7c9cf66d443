//! Acceptance suite: the eight headline guarantees of the toolkit, checked
//! end to end over a fixed corpus.  Each criterion is one test that emits a
//! single `PASS criterion N: …` (or `FAIL …`) line; run with `--nocapture`
//! to see them.
//!
//! The corpus: every uniform matroid U(r,n) with 1 ≤ r ≤ n ≤ 6, the cycle
//! matroid of K4, the vector matroids of twenty seeded random 3×6 integer
//! matrices with entries in [-3,3] (resampled so no column is zero, keeping
//! them loop-free), and the Vámos matroid.

use std::collections::BTreeSet;
use std::panic::AssertUnwindSafe;
use std::sync::OnceLock;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tropmat_core::bergman::{bergman_fan, verify_lemma_bergman};
use tropmat_core::fan::{balancing_weight_space, fan_independence_complex, is_balanced};
use tropmat_core::groebner::{
    algebraic_matroid, buchberger, linear_ideal_from_matrix, normal_form, Budget, Ideal,
    MonomialOrder, Polynomial,
};
use tropmat_core::io::ideal_from_text;
use tropmat_core::matroid::{all_subsets, is_matroid};
use tropmat_core::{IndependenceFamily, Matroid, Rational, RationalMatrix, Subset};

// ---------------------------------------------------------------------------
// corpus

struct Corpus {
    /// Every matroid the suite exercises, with a display name.
    matroids: Vec<(String, Matroid)>,
    /// The random integer matrices together with their vector matroids.
    matrices: Vec<(RationalMatrix, Matroid)>,
}

fn corpus() -> &'static Corpus {
    static CORPUS: OnceLock<Corpus> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut matroids: Vec<(String, Matroid)> = Vec::new();
        for n in 1..=6usize {
            for r in 1..=n {
                matroids.push((format!("U({r},{n})"), Matroid::uniform(r, n).unwrap()));
            }
        }
        let k4 =
            Matroid::graphic_from_edges(&[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]).unwrap();
        matroids.push(("K4".into(), k4));

        let mut matrices: Vec<(RationalMatrix, Matroid)> = Vec::new();
        let mut rng = ChaCha8Rng::seed_from_u64(2026);
        while matrices.len() < 20 {
            let entries: Vec<Vec<i64>> = (0..3)
                .map(|_| (0..6).map(|_| rng.random_range(-3..=3)).collect())
                .collect();
            // a zero column would be a loop, and the fan corpus is loop-free
            if (0..6).any(|j| (0..3).all(|i| entries[i][j] == 0)) {
                continue;
            }
            let rows: Vec<Vec<Rational>> = entries
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|&x| Rational::from_integer(BigInt::from(x)))
                        .collect()
                })
                .collect();
            let a = RationalMatrix::from_rows(rows).unwrap();
            let m = Matroid::from_matrix(&a).unwrap();
            matroids.push((format!("A{}", matrices.len() + 1), m.clone()));
            matrices.push((a, m));
        }

        matroids.push(("Vamos".into(), Matroid::vamos()));
        Corpus { matroids, matrices }
    })
}

/// Run `body` and print exactly one PASS/FAIL line for the criterion.
fn criterion<F: FnOnce()>(number: usize, headline: &str, body: F) {
    match std::panic::catch_unwind(AssertUnwindSafe(body)) {
        Ok(()) => println!("PASS criterion {number}: {headline}"),
        Err(cause) => {
            println!("FAIL criterion {number}: {headline}");
            std::panic::resume_unwind(cause);
        }
    }
}

fn subset(n: usize, elems: &[usize]) -> Subset {
    Subset::from_elements(n, elems).unwrap()
}

// ---------------------------------------------------------------------------
// criteria

/// The fan's coordinate-projection independence data equals the matroid's
/// own, and every independent set carries a full-dimensional chain-of-flats
/// certificate.
#[test]
fn criterion_1_fan_projections_recover_independence() {
    criterion(
        1,
        "Bergman fan projections recover each corpus matroid's independent sets, with chain witnesses",
        || {
            for (name, m) in &corpus().matroids {
                let report = verify_lemma_bergman(m).unwrap();
                assert!(
                    report.equal,
                    "{name}: families differ, witness {:?}",
                    report.witness
                );
                let independents = m.independence_complex().members().len();
                assert_eq!(report.chain_witnesses.len(), independents, "{name}");
                for w in &report.chain_witnesses {
                    assert!(
                        w.full_dimensional,
                        "{name}: chain of {} projects below full dimension",
                        w.subset
                    );
                }
            }
        },
    );
}

/// Every corpus Bergman fan is pure of dimension rank(M) and balanced with
/// its unit weights; a deliberately re-weighted fan fails the check.
#[test]
fn criterion_2_bergman_fans_balance() {
    criterion(
        2,
        "every corpus Bergman fan is pure and balanced with unit weights (and a bad weighting fails)",
        || {
            for (name, m) in &corpus().matroids {
                let bf = bergman_fan(m).unwrap();
                assert_eq!(bf.fan.dimension().unwrap(), m.rank(), "{name}: not pure");
                let report = is_balanced(&bf.fan).unwrap();
                assert!(report.balanced, "{name}: {:?}", report.violation);
            }
            // negative control: the tropical line with weights (1,1,2)
            let line = bergman_fan(&Matroid::uniform(2, 3).unwrap()).unwrap();
            let skewed = line.fan.with_weights(&[1, 1, 2]).unwrap();
            let report = is_balanced(&skewed).unwrap();
            assert!(!report.balanced, "skewed weights must violate balancing");
            assert!(report.violation.is_some());
        },
    );
}

/// For connected corpus matroids the only balancing weights are the constant
/// ones: the weight space is exactly one-dimensional.
#[test]
fn criterion_3_weight_space_is_rigid_for_connected_matroids() {
    criterion(
        3,
        "the balancing weight space of a connected corpus matroid's fan is spanned by the all-ones weighting",
        || {
            let mut connected = 0usize;
            for (name, m) in &corpus().matroids {
                if !m.is_connected() {
                    continue;
                }
                connected += 1;
                let bf = bergman_fan(m).unwrap();
                let ws = balancing_weight_space(&bf.fan).unwrap();
                assert_eq!(ws.dimension, 1, "{name}: weight space dim {}", ws.dimension);
                let basis = &ws.basis[0];
                assert!(!basis[0].eq(&Rational::from_integer(BigInt::from(0))));
                assert!(
                    basis.iter().all(|w| w == &basis[0]),
                    "{name}: basis weighting is not constant: {basis:?}"
                );
            }
            assert!(
                connected >= 18,
                "corpus should contain plenty of connected matroids, found {connected}"
            );
        },
    );
}

/// For a linear ideal the whole chain agrees: the kernel ideal's algebraic
/// matroid, the matrix's vector matroid, and its Bergman fan's independence
/// complex are one and the same family.
#[test]
fn criterion_4_linear_ideals_close_the_loop() {
    criterion(
        4,
        "matrix, kernel ideal, and Bergman fan give the same independence data on all 20 random matrices",
        || {
            for (i, (a, m)) in corpus().matrices.iter().enumerate() {
                let target = m.independence_complex();
                let ideal = linear_ideal_from_matrix(a).unwrap();
                let report = algebraic_matroid(&ideal, Budget::default());
                assert!(report.inconclusive.is_empty(), "matrix {i}: budget hit");
                assert_eq!(report.family, target, "matrix {i}: ideal family differs");
                assert!(report.loops.is_empty(), "matrix {i}: unexpected loops");
                let bf = bergman_fan(m).unwrap();
                assert_eq!(
                    fan_independence_complex(&bf.fan),
                    target,
                    "matrix {i}: fan family differs"
                );
            }
        },
    );
}

/// The twisted cubic's coordinates are algebraically as free as one
/// coordinate: its algebraic matroid is U(1,3).
#[test]
fn criterion_5_twisted_cubic_is_uniform_1_3() {
    criterion(
        5,
        "the twisted cubic's algebraic matroid is U(1,3) and passes the matroid axioms",
        || {
            let parsed = ideal_from_text("vars 3\nx2 - x1^2\nx3 - x1^3\n").unwrap();
            assert!(parsed.warnings.is_empty());
            let report = algebraic_matroid(&parsed.ideal, Budget::default());
            assert!(report.inconclusive.is_empty());
            assert!(report.loops.is_empty());
            let u13 = Matroid::uniform(1, 3).unwrap();
            assert_eq!(report.family, u13.independence_complex());
            assert!(is_matroid(&report.family).is_ok());
        },
    );
}

/// The Vámos matroid: rank 4 on 8 elements with 65 bases, isomorphic to its
/// dual (found by exhaustive search over all 8! bijections), and its Bergman
/// fan passes the fan-side criteria.
#[test]
fn criterion_6_vamos_is_self_dual_and_well_behaved() {
    criterion(
        6,
        "Vámos is rank 4 with 65 bases, self-dual under an explicit bijection, with a balanced rigid fan",
        || {
            let v = Matroid::vamos();
            assert_eq!((v.n(), v.rank(), v.bases().len()), (8, 4, 65));
            assert!(v.loops().is_empty() && v.coloops().is_empty());

            let dual = v.dual();
            let dual_bases: BTreeSet<Subset> = dual.bases().iter().copied().collect();
            let maps_onto_dual = |perm: &[usize]| {
                v.bases().iter().all(|b| {
                    let image: Vec<usize> = b.elements().iter().map(|&e| perm[e - 1]).collect();
                    dual_bases.contains(&subset(8, &image))
                })
            };

            // the pair swap 1↔5, 2↔6, 3↔7, 4↔8 is such an isomorphism…
            assert!(maps_onto_dual(&[5, 6, 7, 8, 1, 2, 3, 4]));

            // …and the exhaustive search over S_8 agrees one exists
            fn search(perm: &mut Vec<usize>, k: usize, pred: &dyn Fn(&[usize]) -> bool) -> bool {
                if k == perm.len() {
                    return pred(perm);
                }
                for i in k..perm.len() {
                    perm.swap(k, i);
                    if search(perm, k + 1, pred) {
                        return true;
                    }
                    perm.swap(k, i);
                }
                false
            }
            let mut perm: Vec<usize> = (1..=8).collect();
            assert!(search(&mut perm, 0, &maps_onto_dual), "no dual isomorphism found");

            // fan-side guarantees, spelled out for this one matroid
            let report = verify_lemma_bergman(&v).unwrap();
            assert!(report.equal);
            let bf = bergman_fan(&v).unwrap();
            assert_eq!(bf.fan.cones().len(), 276);
            assert!(is_balanced(&bf.fan).unwrap().balanced);
            let ws = balancing_weight_space(&bf.fan).unwrap();
            assert_eq!(ws.dimension, 1);
        },
    );
}

/// `is_matroid` agrees with a direct brute-force exchange scan on every
/// downward-closed family with at most 4 elements, and every family this
/// toolkit produces passes it.
#[test]
fn criterion_7_axiom_checker_cross_validated() {
    criterion(
        7,
        "is_matroid matches brute force on all small downward-closed families and accepts every produced family",
        || {
            for n in 0..=4usize {
                let subsets: Vec<Subset> = all_subsets(n).collect();
                let num_subsets = 1usize << n;
                // the iterator yields subsets in bitmask order, so the i-th
                // subset's children sit at indices with one bit cleared
                let mut downward_closed = 0usize;
                for fam_mask in 0u32..(1u32 << num_subsets) {
                    let member = |i: usize| fam_mask >> i & 1 == 1;
                    let mut closed = true;
                    'scan: for (i, s) in subsets.iter().enumerate() {
                        if !member(i) {
                            continue;
                        }
                        for e in s.elements() {
                            if !member(i & !(1usize << (e - 1))) {
                                closed = false;
                                break 'scan;
                            }
                        }
                    }
                    if !closed {
                        continue;
                    }
                    downward_closed += 1;
                    let members: Vec<Subset> = (0..num_subsets)
                        .filter(|&i| member(i))
                        .map(|i| subsets[i])
                        .collect();
                    let set: BTreeSet<Subset> = members.iter().copied().collect();
                    let oracle = !members.is_empty()
                        && members.iter().all(|&i| {
                            members.iter().all(|&j| {
                                i.len() >= j.len()
                                    || j.minus(i)
                                        .elements()
                                        .iter()
                                        .any(|&e| set.contains(&i.with(e)))
                            })
                        });
                    let family = IndependenceFamily::from_members(n, &members);
                    assert_eq!(
                        is_matroid(&family).is_ok(),
                        oracle,
                        "n={n}, members {members:?}"
                    );
                }
                // the number of downward-closed families is the Dedekind number
                let dedekind = [2, 3, 6, 20, 168][n];
                assert_eq!(downward_closed, dedekind, "n={n}");
            }

            // families produced elsewhere in the suite all pass
            for (name, m) in &corpus().matroids {
                assert!(is_matroid(&m.independence_complex()).is_ok(), "{name}");
                assert!(is_matroid(&m.dual().independence_complex()).is_ok(), "{name}*");
            }
            for (a, _) in &corpus().matrices {
                let ideal = linear_ideal_from_matrix(a).unwrap();
                let report = algebraic_matroid(&ideal, Budget::default());
                assert!(is_matroid(&report.family).is_ok());
            }
        },
    );
}

/// Gröbner soundness: random ideal members reduce to zero against the
/// computed basis, and the reduced basis is a fixed point of the algorithm.
#[test]
fn criterion_8_groebner_membership_soundness() {
    criterion(
        8,
        "100 random membership probes per ideal reduce to zero and each reduced basis is a fixed point",
        || {
            let fixtures: Vec<(&str, &str, MonomialOrder)> = vec![
                (
                    "twisted cubic",
                    "vars 3\nx2 - x1^2\nx3 - x1^3\n",
                    MonomialOrder::Lex,
                ),
                ("plane", "vars 3\nx1 + x2 - x3\n", MonomialOrder::GrevLex),
                ("line", "vars 3\nx1 - x2\nx2 - x3\n", MonomialOrder::GrevLex),
                ("circle", "vars 2\nx1^2 + x2^2 - 1\n", MonomialOrder::GrevLex),
                (
                    "coupled quadrics",
                    "vars 3\nx1*x2 - x3\nx2*x3 - x1\n",
                    MonomialOrder::Lex,
                ),
                (
                    "elimination order",
                    "vars 3\nx2 - x1^2\nx3 - x1^3\n",
                    MonomialOrder::Elimination {
                        eliminate: Subset::from_elements(3, &[1]).unwrap(),
                    },
                ),
            ];
            let mut rng = ChaCha8Rng::seed_from_u64(816);
            for (name, text, ord) in &fixtures {
                let p = ideal_from_text(text).unwrap().ideal;
                let nvars = p.nvars();
                let gb = buchberger(&p, ord, Budget::default()).unwrap();
                assert!(!gb.is_empty(), "{name}");

                // fixed point: running the algorithm on its own output
                // returns it verbatim
                let again = buchberger(
                    &Ideal::new(nvars, gb.clone()).unwrap(),
                    ord,
                    Budget::default(),
                )
                .unwrap();
                assert_eq!(again, gb, "{name}: basis is not a fixed point");

                // membership probes: random combinations of the generators
                for probe in 0..100 {
                    let mut f = Polynomial::zero(nvars);
                    for g in p.generators() {
                        let c: i64 = rng.random_range(-3..=3);
                        if c == 0 {
                            continue;
                        }
                        let exps: Vec<u32> =
                            (0..nvars).map(|_| rng.random_range(0..=2)).collect();
                        let factor = Polynomial::from_terms(
                            nvars,
                            vec![(Rational::from_integer(BigInt::from(c)), exps)],
                        )
                        .unwrap();
                        f = f.add(&factor.mul(g));
                    }
                    let rem = normal_form(&f, &gb, ord);
                    assert!(
                        rem.is_zero(),
                        "{name}: probe {probe} left remainder {rem}"
                    );
                }
            }
        },
    );
}
