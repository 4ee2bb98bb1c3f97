//! Acceptance gate: one test per criterion, each printing a single
//! `acceptance N (...): PASS` line on success. Every comparison is exact;
//! nothing here tolerates an off-by-anything.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

use fanok::ak;
use fanok::bundle;
use fanok::chow::CycleClass;
use fanok::ktheory::{self, StructureSheaf};
use fanok::lattice::{
    find_isometries, hnf, hnf_with_transform, invariant_factors, saturated_kernel,
    BilinearLattice, IntMatrix,
};
use fanok::ratio::{frac, int, Rat};
use fanok::registry::{self, FanoDescriptor};
use fanok::sod;

fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64(rows)
}

fn index1(g: i64) -> FanoDescriptor {
    FanoDescriptor::new(1, 2 * g - 2).expect("valid genus")
}

#[test]
fn acceptance_1_complement_isometries() {
    for d in 1..=5i64 {
        let v = sod::verify_rr(d).expect("degree in range");
        let g = 2 * d + 2;
        assert_eq!(v.d as i64, d);
        assert_eq!(v.g as i64, g);
        let chi_b = m(&[&[-1, -1], &[1 - d, -d]]);
        let chi_a = m(&[&[1 - g / 2, -g / 2], &[3 - g, 1 - g]]);
        assert_eq!(v.gram_b, chi_b, "gram on the degree side, d = {d}");
        assert_eq!(v.gram_a, chi_a, "gram on the genus side, d = {d}");
        let witness = sod::distinguished_witness();
        assert!(
            v.witnesses.contains(&witness),
            "bound-3 search misses the distinguished witness at d = {d}"
        );
        assert!(v.witness_found);
        let product = m(&[&[-d, -1 - d], &[1 - 2 * d, -1 - 2 * d]]);
        assert_eq!(v.product, product, "W^T gramB W closed form, d = {d}");
        assert_eq!(v.product, chi_a, "the product must reproduce gramA");
        assert!(v.product_matches);
        assert!(v.span_matches_a && v.span_matches_b);
        assert!(v.passed());
    }
    println!("acceptance 1 (complement Grams, bound-3 witness, product identity; d = 1..5): PASS");
}

#[test]
fn acceptance_2_chern_character_fixtures() {
    for f in registry::all() {
        if f.index() > 2 {
            continue;
        }
        let oh = ktheory::structure_sheaf(f, StructureSheaf::H);
        let ol = ktheory::structure_sheaf(f, StructureSheaf::L);
        let op = ktheory::structure_sheaf(f, StructureSheaf::P);
        match f.index() {
            2 => {
                let d = f.degree() as i64;
                let want_h = CycleClass::new(f, int(0), int(1), frac(-d, 2), frac(d, 6));
                assert_eq!(*oh.ch(), want_h, "ch(O_H) on {}", f.label());
                assert_eq!(*ol.ch(), CycleClass::l(f), "ch(O_L) on {}", f.label());
            }
            1 => {
                let g = f.genus().expect("index 1 has a genus") as i64;
                let want_h = CycleClass::new(f, int(0), int(1), int(1 - g), frac(g - 1, 3));
                assert_eq!(*oh.ch(), want_h, "ch(O_H) on {}", f.label());
                let want_l = CycleClass::new(f, int(0), int(0), int(1), frac(1, 2));
                assert_eq!(*ol.ch(), want_l, "ch(O_L) on {}", f.label());
            }
            _ => unreachable!(),
        }
        assert_eq!(*op.ch(), CycleClass::p(f), "ch(O_P) on {}", f.label());
    }
    for g in [6i64, 8, 10, 12] {
        let f = index1(g);
        let e2 = ktheory::mukai_ch(f, 2, (g / 2) as u32).expect("even genus factors as 2*(g/2)");
        let want = CycleClass::new(f, int(2), int(-1), frac(g - 4, 2), frac(10 - g, 12));
        assert_eq!(*e2.ch(), want, "ch(E_2) closed form at genus {g}");
        assert_eq!(
            ktheory::mukai_rank2_ch(f).expect("even genus"),
            e2,
            "rank-2 shortcut agrees with the (2, g/2) factorization"
        );
    }
    println!("acceptance 2 (structure-sheaf characters on 15 descriptors, ch(E_2) at even genus): PASS");
}

#[test]
fn acceptance_3_chi0_closed_forms() {
    for f in registry::all() {
        let got = ktheory::chi0_coefficients(f);
        let want: [Rat; 4] = match f.index() {
            4 => [int(1), frac(11, 6), int(2), int(1)],
            3 => [int(1), frac(13, 6), frac(3, 2), int(1)],
            2 => {
                let d = f.degree() as i64;
                [int(1), frac(d + 3, 3), int(1), int(1)]
            }
            1 => {
                let g = f.genus().expect("index 1 has a genus") as i64;
                [int(1), frac(g + 11, 6), frac(1, 2), int(1)]
            }
            _ => unreachable!(),
        };
        assert_eq!(got, want, "chi_0 coefficients on {}", f.label());
    }
    println!("acceptance 3 (Todd-derived chi_0 equals the closed forms on all 17 descriptors): PASS");
}

#[test]
fn acceptance_4_numerical_exceptionality() {
    for f in registry::all() {
        let i = f.index() as i64;
        for l in 0..i {
            let a = ktheory::line_bundle(f, l);
            assert_eq!(
                ktheory::euler(&a, &a).expect("same parent"),
                BigInt::one(),
                "chi(O(l), O(l)) on {}",
                f.label()
            );
            for k in 0..l {
                let b = ktheory::line_bundle(f, k);
                assert_eq!(
                    ktheory::euler(&a, &b).expect("same parent"),
                    BigInt::zero(),
                    "chi(O({l}H), O({k}H)) on {}",
                    f.label()
                );
            }
        }
    }
    for g in [6i64, 8, 10, 12] {
        let f = index1(g);
        let e2 = ktheory::mukai_rank2_ch(f).expect("even genus");
        assert_eq!(
            ktheory::euler(&e2, &e2).expect("same parent"),
            BigInt::one(),
            "chi(E_2, E_2) at genus {g}"
        );
        assert_eq!(ktheory::chi0(e2.ch()), int(0), "chi_0(ch E_2) at genus {g}");
        let o = ktheory::line_bundle(f, 0);
        assert_eq!(
            ktheory::euler(&o, &e2).expect("same parent"),
            BigInt::zero(),
            "chi(O, E_2) at genus {g}"
        );
    }
    println!("acceptance 4 (line-bundle semiorthogonality on all 17, E_2 exceptionality at even genus): PASS");
}

#[test]
fn acceptance_5_bundle_numerology() {
    for d in 1..=5i64 {
        for t in 0..=5i64 {
            let n1 = bundle::numerology_index1(d, t).expect("grid in range");
            assert_eq!(n1.chi, d + 3 - t, "chi(F^*) at (d, t) = ({d}, {t})");
            assert_eq!(n1.degree_computed, 2 * d - 2 - 2 * t);
            assert_eq!(n1.degree_closed_form, 2 * d - 2 + 2 * t);
            assert_eq!(n1.discrepancy, t != 0, "discrepancy flag at (d, t) = ({d}, {t})");
        }
        for k in 0..=5i64 {
            let n2 = bundle::numerology_index2(d, k).expect("grid in range");
            assert_eq!(n2.chi, 2 * d - 2 * k + 4, "chi(E^*(1)) at (d, k) = ({d}, {k})");
            assert_eq!(n2.degree, 4 * d - 4 * k, "degree at (d, k) = ({d}, {k})");
        }
        for k in 0..=5i64 {
            for t in 0..=5i64 {
                let r = bundle::coincidence_check(d, k, t).expect("grid in range");
                let cond = d + 1 == 2 * k - t;
                assert_eq!(r.condition_holds, cond);
                assert_eq!(r.dimensions_coincide, cond);
                assert_eq!(r.degrees_coincide, cond);
                assert_eq!(r.dim_index1 == r.dim_index2, cond);
                assert_eq!(r.degree_index1 == r.degree_index2, cond);
            }
        }
    }
    let r = bundle::coincidence_check(5, 4, 2).expect("in range");
    assert!(r.condition_holds && r.dimensions_coincide && r.degrees_coincide);
    assert_eq!((r.dim_index1, r.dim_index2), (6, 6));
    assert_eq!((r.degree_index1, r.degree_index2), (4, 4));
    let n1 = bundle::numerology_index1(5, 2).expect("in range");
    assert!(n1.discrepancy, "(5, 4, 2) must flag the degree-formula discrepancy");
    assert_eq!((n1.degree_computed, n1.degree_closed_form), (4, 12));
    println!("acceptance 5 (dimension and degree formulas on the grid, coincidence at (5, 4, 2)): PASS");
}

fn is_hermite(h: &IntMatrix) -> bool {
    let mut last_pivot: Option<usize> = None;
    let mut seen_zero_row = false;
    for r in 0..h.rows() {
        match (0..h.cols()).find(|&c| !h[(r, c)].is_zero()) {
            None => seen_zero_row = true,
            Some(c) => {
                if seen_zero_row {
                    return false;
                }
                if let Some(prev) = last_pivot {
                    if c <= prev {
                        return false;
                    }
                }
                if h[(r, c)].is_negative() {
                    return false;
                }
                for above in 0..r {
                    if h[(above, c)].is_negative() || h[(above, c)] >= h[(r, c)] {
                        return false;
                    }
                }
                last_pivot = Some(c);
            }
        }
    }
    true
}

fn mat2_mul(a: [[i64; 2]; 2], b: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut c = [[0i64; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

fn brute_isometries(g1: [[i64; 2]; 2], g2: [[i64; 2]; 2], b: i64) -> Vec<[i64; 4]> {
    let mut out = Vec::new();
    for p in -b..=b {
        for q in -b..=b {
            for r in -b..=b {
                for s in -b..=b {
                    let det = p * s - q * r;
                    if det != 1 && det != -1 {
                        continue;
                    }
                    let a = [[p, q], [r, s]];
                    let mut ok = true;
                    for i in 0..2 {
                        for j in 0..2 {
                            let mut acc = 0i64;
                            for k in 0..2 {
                                for l in 0..2 {
                                    acc += a[k][i] * g2[k][l] * a[l][j];
                                }
                            }
                            if acc != g1[i][j] {
                                ok = false;
                            }
                        }
                    }
                    if ok {
                        out.push([p, q, r, s]);
                    }
                }
            }
        }
    }
    out
}

#[test]
fn acceptance_6_lattice_engine_randomized() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x00FA_0035);

    // Hermite form: certificate u * m = h with u unimodular, plus shape.
    for round in 0..120 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=5);
        let a = IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-9i64..=9)));
        let (h, u) = hnf_with_transform(&a);
        assert_eq!(u.mul(&a), h, "transform certificate, round {round}");
        assert!(u.det().abs().is_one(), "unimodular transform, round {round}");
        assert!(is_hermite(&h), "Hermite shape, round {round}");
        assert_eq!(hnf(&a), h);
    }

    // Kernel: annihilates, is saturated (all invariant factors 1), and
    // has the complementary rank.
    for round in 0..120 {
        let rows = rng.gen_range(1..=4);
        let cols = rng.gen_range(1..=5);
        let a = IntMatrix::from_fn(rows, cols, |_, _| BigInt::from(rng.gen_range(-6i64..=6)));
        let k = saturated_kernel(&a);
        let product = a.mul(&k.transpose());
        for i in 0..product.rows() {
            for j in 0..product.cols() {
                assert!(product[(i, j)].is_zero(), "kernel annihilation, round {round}");
            }
        }
        assert!(
            invariant_factors(&k).iter().all(|d| d.is_one()),
            "kernel saturation, round {round}"
        );
        let rank = hnf(&a).without_zero_rows().rows();
        assert_eq!(k.rows(), cols - rank, "kernel rank, round {round}");
    }

    // Rank-2 isometry search against the full (2b+1)^4 enumeration, on a
    // mix of unrelated and congruent Gram pairs.
    let bound = 2i64;
    for round in 0..120 {
        let g1 = [
            [rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3)],
            [rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3)],
        ];
        let g2 = if round % 2 == 0 {
            [
                [rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3)],
                [rng.gen_range(-3i64..=3), rng.gen_range(-3i64..=3)],
            ]
        } else {
            let mut u = [[1i64, 0], [0, 1]];
            for _ in 0..3 {
                let shear = rng.gen_range(-2i64..=2);
                u = if rng.gen_bool(0.5) {
                    mat2_mul(u, [[1, shear], [0, 1]])
                } else {
                    mat2_mul(u, [[1, 0], [shear, 1]])
                };
            }
            let mut g = [[0i64; 2]; 2];
            for i in 0..2 {
                for j in 0..2 {
                    for k in 0..2 {
                        for l in 0..2 {
                            g[i][j] += u[k][i] * g1[k][l] * u[l][j];
                        }
                    }
                }
            }
            g
        };
        let l1 = BilinearLattice::new(m(&[&g1[0], &g1[1]])).expect("2x2 gram");
        let l2 = BilinearLattice::new(m(&[&g2[0], &g2[1]])).expect("2x2 gram");
        let found: Vec<[i64; 4]> = find_isometries(&l1, &l2, bound as u32)
            .iter()
            .map(|w| {
                [
                    w[(0, 0)].to_i64().unwrap(),
                    w[(0, 1)].to_i64().unwrap(),
                    w[(1, 0)].to_i64().unwrap(),
                    w[(1, 1)].to_i64().unwrap(),
                ]
            })
            .collect();
        let brute = brute_isometries(g1, g2, bound);
        assert_eq!(found, brute, "exhaustiveness and order, round {round}");
    }

    println!("acceptance 6 (Hermite certificates, kernel saturation, isometry exhaustiveness; 360 seeded instances): PASS");
}

#[test]
fn acceptance_7_ak_compatibility() {
    for f in registry::all() {
        let data = ak::threefold_pairing_data(f);
        let v = ak::ak_compatible(&data);
        assert!(v.verdict, "threefold data must pass on {}", f.label());
        assert!(
            v.reason.contains("dimension"),
            "threefolds pass by the dimension criterion"
        );
        let gram = ktheory::EulerGram::new(ktheory::structure_sheaf_basis(f).to_vec())
            .expect("basis pairs integrally");
        assert!(
            gram.matrix().det().abs().is_one(),
            "structure-sheaf Euler Gram is unimodular on {}",
            f.label()
        );
    }

    let ranks = vec![1usize, 2, 2, 2, 1];
    let build = |middle: IntMatrix| {
        let mut pairings = BTreeMap::new();
        pairings.insert(0, IntMatrix::identity(1));
        pairings.insert(1, middle.transpose());
        pairings.insert(2, m(&[&[0, 1], &[1, 0]]));
        pairings.insert(3, middle);
        pairings.insert(4, IntMatrix::identity(1));
        ak::PairingData::new(4, ranks.clone(), pairings).expect("well-formed synthetic data")
    };

    let good = build(IntMatrix::identity(2));
    let v = ak::ak_compatible(&good);
    assert!(v.verdict, "unimodular p = 3 pairing passes");
    assert!(v.reason.contains("[3, 3]"), "reason names the checked range");
    assert!(ak::k0_criterion_holds(&good, 3).expect("p in range"));

    let bad = build(m(&[&[3, 0], &[0, 1]]));
    let v = ak::ak_compatible(&bad);
    assert!(!v.verdict, "determinant-3 pairing fails");
    assert_eq!(v.failing_p, Some(3));
    assert!(!ak::k0_criterion_holds(&bad, 3).expect("p in range"));

    println!("acceptance 7 (threefolds pass by dimension, synthetic fourfolds decided by the p = 3 pairing, unimodular Euler Grams): PASS");
}

#[test]
fn acceptance_8_parity_obstruction() {
    for g in [5i64, 6, 7, 8, 9, 10, 12] {
        let f = index1(g);
        let e2 = ktheory::mukai_rank2_ch(f).expect("defined for every valid genus");
        let coords = ktheory::lattice_coordinates(e2.ch());
        if g % 2 == 0 {
            let c = coords.unwrap_or_else(|e| panic!("genus {g} must lie in the lattice: {e}"));
            let rebuilt: Vec<BigInt> = c.to_vec();
            assert_eq!(rebuilt.len(), 4);
            assert_eq!(
                e2,
                ktheory::mukai_ch(f, 2, (g / 2) as u32).expect("even genus factors"),
                "rank-2 character matches the honest factorization at genus {g}"
            );
        } else {
            match coords {
                Err(fanok::ktheory::KError::NotInLattice(_)) => {}
                other => panic!("genus {g} must be obstructed, got {other:?}"),
            }
        }
    }
    println!("acceptance 8 (rank-2 Mukai class lies in the K-lattice exactly for even genus): PASS");
}
