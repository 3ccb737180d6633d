//! Cross-module property suites: algebraic invariants of the form
//! arithmetic, transport equivariance, construction identities and the
//! forging pipeline.

mod common;

use num::bigint::BigInt;
use num::{Signed, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sixfold::chern::{chern_numbers, enumerate_ac_structures, ACStructure};
use sixfold::construct::{
    blow_down, blow_down_candidates, blow_up_point, p1_bundle, SurfaceData,
};
use sixfold::forge::{certify_non_kaehler, forge_family, CertifyConfig};
use sixfold::lattice::{
    change_basis, find_vanishing_hyperplanes, find_vanishing_lines, hyperplane_kernel,
    vanishes_on_span, CubicForm, IntVector, LinearForm,
};
use sixfold::sampling::{
    random_admissible_tuple, random_package, random_spin_tuple, random_surface,
    random_unimodular,
};
use sixfold::wall::{
    find_isomorphism, homotopy_equivalent_identified, is_admissible,
    is_admissible_bruteforce, BettiData,
};

fn form_from_values(rank: usize, values: &[i64]) -> CubicForm {
    let mut form = CubicForm::zero_form(rank);
    let mut idx = 0;
    for i in 0..rank {
        for j in i..rank {
            for k in j..rank {
                form.add_entry(i, j, k, BigInt::from(values[idx % values.len()]))
                    .unwrap();
                idx += 1;
            }
        }
    }
    form
}

proptest! {
    #[test]
    fn trilinear_symmetry(
        rank in 1usize..=3,
        seed_vals in prop::collection::vec(-20i64..=20, 10),
        xs in prop::collection::vec(-15i64..=15, 9),
    ) {
        let f = form_from_values(rank, &seed_vals);
        let x = IntVector::from_i64(&xs[0..rank]);
        let y = IntVector::from_i64(&xs[3..3 + rank]);
        let z = IntVector::from_i64(&xs[6..6 + rank]);
        let base = f.eval(&x, &y, &z).unwrap();
        prop_assert_eq!(&base, &f.eval(&x, &z, &y).unwrap());
        prop_assert_eq!(&base, &f.eval(&y, &x, &z).unwrap());
        prop_assert_eq!(&base, &f.eval(&y, &z, &x).unwrap());
        prop_assert_eq!(&base, &f.eval(&z, &x, &y).unwrap());
        prop_assert_eq!(&base, &f.eval(&z, &y, &x).unwrap());
        prop_assert_eq!(&base, &f.eval_diag(&x.clone()).map(|_| base.clone()).unwrap());
    }

    #[test]
    fn trilinear_multilinearity(
        rank in 1usize..=3,
        seed_vals in prop::collection::vec(-20i64..=20, 10),
        xs in prop::collection::vec(-10i64..=10, 12),
        a in -5i64..=5,
        b in -5i64..=5,
    ) {
        let f = form_from_values(rank, &seed_vals);
        let x = IntVector::from_i64(&xs[0..rank]);
        let xp = IntVector::from_i64(&xs[3..3 + rank]);
        let y = IntVector::from_i64(&xs[6..6 + rank]);
        let z = IntVector::from_i64(&xs[9..9 + rank]);
        let combo = x.scale(&BigInt::from(a)).add(&xp.scale(&BigInt::from(b))).unwrap();
        let lhs = f.eval(&combo, &y, &z).unwrap();
        let rhs = BigInt::from(a) * f.eval(&x, &y, &z).unwrap()
            + BigInt::from(b) * f.eval(&xp, &y, &z).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn diagonal_matches_trilinear(
        rank in 1usize..=4,
        seed_vals in prop::collection::vec(-20i64..=20, 20),
        xs in prop::collection::vec(-15i64..=15, 4),
    ) {
        let f = form_from_values(rank, &seed_vals);
        let w = IntVector::from_i64(&xs[0..rank]);
        prop_assert_eq!(f.eval(&w, &w, &w).unwrap(), f.eval_diag(&w).unwrap());
    }

    #[test]
    fn basis_change_functoriality(
        rank in 1usize..=3,
        seed_vals in prop::collection::vec(-10i64..=10, 10),
        p_vals in prop::collection::vec(-10i64..=10, 3),
        seed in 0u64..1000,
    ) {
        let f = form_from_values(rank, &seed_vals);
        let p = LinearForm::from_i64(&p_vals[0..rank]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m1 = random_unimodular(&mut rng, rank, 6);
        let m2 = random_unimodular(&mut rng, rank, 6);

        let (f1, p1) = change_basis(&f, &p, &m1).unwrap();
        let (f12, p12) = change_basis(&f1, &p1, &m2).unwrap();
        let (f_prod, p_prod) = change_basis(&f, &p, &m1.mul(&m2).unwrap()).unwrap();
        prop_assert_eq!(&f12, &f_prod);
        prop_assert_eq!(&p12, &p_prod);

        let (back_f, back_p) = change_basis(&f1, &p1, &m1.inverse()).unwrap();
        prop_assert_eq!(back_f, f);
        prop_assert_eq!(back_p, p);
    }

    #[test]
    fn vanishing_lines_are_exact(
        seed_vals in prop::collection::vec(-12i64..=12, 4),
    ) {
        let f = form_from_values(2, &seed_vals);
        prop_assume!(!f.is_identically_zero());
        let lines = find_vanishing_lines(&f).unwrap();
        prop_assert!(lines.len() <= 3);
        for v in &lines {
            prop_assert!(v.is_primitive());
            for t in 1i64..=3 {
                let tv = v.scale(&BigInt::from(t));
                prop_assert!(f.eval_diag(&tv).unwrap().is_zero());
            }
        }
        // no vanishing primitive direction in a small window is missed
        for a in -6i64..=6 {
            for b in 0i64..=6 {
                if (a, b) == (0, 0) || num::integer::gcd(a, b) != 1 {
                    continue;
                }
                let v = IntVector::from_i64(&[a, b]).normalize_sign();
                if f.eval_diag(&v).unwrap().is_zero() {
                    prop_assert!(lines.contains(&v), "missed line {v}");
                }
            }
        }
    }

    #[test]
    fn hyperplanes_vanish_on_kernels(
        rank in 2usize..=3,
        seed_vals in prop::collection::vec(-6i64..=6, 10),
    ) {
        let f = form_from_values(rank, &seed_vals);
        prop_assume!(!f.is_identically_zero());
        for phi in find_vanishing_hyperplanes(&f, 4) {
            let kernel = hyperplane_kernel(&phi);
            prop_assert_eq!(kernel.len(), rank - 1);
            prop_assert!(vanishes_on_span(&f, &kernel).unwrap());
        }
    }

    #[test]
    fn admissibility_is_basis_invariant(
        rank in 1usize..=3,
        seed in 0u64..5000,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t = random_spin_tuple(&mut rng, rank, 30);
        let m = random_unimodular(&mut rng, rank, 8);
        let transported = t.change_basis(&m).unwrap();
        prop_assert_eq!(
            is_admissible(&t).unwrap(),
            is_admissible(&transported).unwrap()
        );
    }

    #[test]
    fn chern_numbers_are_transport_invariant(
        rank in 1usize..=3,
        seed in 0u64..5000,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pkg = random_package(&mut rng, rank, 10);
        let m = random_unimodular(&mut rng, rank, 8);
        let t2 = pkg.tuple().change_basis(&m).unwrap();
        let c1_2 = ACStructure::new(m.inverse().apply(pkg.c1().c1()).unwrap());
        let before = pkg.chern();
        let after = chern_numbers(&t2, pkg.betti(), &c1_2).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn p1_defining_relation_roundtrip(
        rank in 1usize..=3,
        seed in 0u64..5000,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pkg = random_package(&mut rng, rank, 12);
        let c = pkg.chern();
        let p1c1 = pkg.tuple().p1().eval(pkg.c1().c1()).unwrap();
        prop_assert_eq!(p1c1, c.c1_cubed - BigInt::from(2) * c.c1c2);
    }

    #[test]
    fn isomorphism_certificates_invert(
        rank in 1usize..=2,
        seed in 0u64..2000,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let t1 = random_admissible_tuple(&mut rng, rank, 6);
        let m = random_unimodular(&mut rng, rank, 4);
        let t2 = t1.change_basis(&m.inverse()).unwrap();
        // t1 = change_basis(t2, m), so a search with a wide enough box
        // must succeed, and the certificate transports back
        let max_entry = (0..rank)
            .flat_map(|j| m.column(j).coords().to_vec())
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(BigInt::zero);
        let bound = u64::try_from(&max_entry).unwrap().max(1);
        let found = find_isomorphism(&t1, &t2, bound).unwrap();
        prop_assert!(found.is_some());
        let found = found.unwrap();
        prop_assert_eq!(t2.change_basis(&found).unwrap(), t1.clone());
        prop_assert_eq!(t1.change_basis(&found.inverse()).unwrap(), t2);
    }

    #[test]
    fn ac_enumeration_shape(
        rank in 1usize..=3,
        radius in 0u64..=2,
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let t = random_admissible_tuple(&mut rng, rank, 5);
        let acs = enumerate_ac_structures(&t, radius).unwrap();
        prop_assert_eq!(acs.len() as u64, (2 * radius + 1).pow(rank as u32));
        for a in &acs {
            prop_assert!(a.is_even());
        }
    }
}

#[test]
fn blow_up_transforms_and_roundtrip() {
    let mut rng = ChaCha8Rng::seed_from_u64(501);
    for _ in 0..200 {
        let rank = rng.random_range(1..=3);
        let pkg = random_package(&mut rng, rank, 8);
        let up = blow_up_point(&pkg);
        let before = pkg.chern();
        let after = up.chern();
        assert_eq!(after.c1_cubed, before.c1_cubed - BigInt::from(8));
        assert_eq!(after.c1c2, before.c1c2);
        assert_eq!(after.c3, before.c3 + BigInt::from(2));

        let e = IntVector::basis(rank + 1, rank);
        assert!(blow_down_candidates(up.tuple(), 2).contains(&e));
        let down = blow_down(&up, &e).unwrap();
        assert!(down.same_invariants(&pkg));
    }
}

#[test]
fn bundle_invariants_against_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(777);
    let mut spin_seen = false;
    for _ in 0..120 {
        let rank = rng.random_range(1..=3);
        let s = random_surface(&mut rng, rank, 4);
        let omega_vals: Vec<i64> = (0..rank).map(|_| rng.random_range(-5..=5)).collect();
        let omega = IntVector::from_i64(&omega_vals);
        let x = p1_bundle(&s, &omega).unwrap();

        let pairing: Vec<Vec<i64>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| {
                        let ei = IntVector::basis(rank, i);
                        let ej = IntVector::basis(rank, j);
                        i64::try_from(&s.pair(&ei, &ej).unwrap()).unwrap()
                    })
                    .collect()
            })
            .collect();
        let c1s_vals: Vec<i64> = s.c1s().coords().iter().map(|c| i64::try_from(c).unwrap()).collect();
        let euler = i64::try_from(s.euler()).unwrap();

        // Chern numbers against the expansion oracle
        let c = x.chern();
        assert_eq!(c.c1_cubed, common::c1_cubed(&pairing, &omega_vals, &c1s_vals));
        assert_eq!(c.c1c2, common::c1c2(&pairing, &omega_vals, &c1s_vals, euler));
        assert_eq!(c.c1c2, BigInt::from(24) * s.chi_o());

        // p1 as a linear form against the oracle, basis vector by basis
        // vector (pullbacks first, then the fiber class)
        for i in 0..rank {
            let mut base = vec![0i64; rank];
            base[i] = 1;
            let w = common::RingClass::new(&base, 0);
            assert_eq!(
                x.tuple().p1().get(i),
                &common::p1_value(&pairing, &omega_vals, &c1s_vals, euler, &w)
            );
            // pullback classes pair to zero with p1
            assert!(x.tuple().p1().get(i).is_zero());
        }
        let y = common::RingClass::new(&vec![0i64; rank], 1);
        assert_eq!(
            x.tuple().p1().get(rank),
            &common::p1_value(&pairing, &omega_vals, &c1s_vals, euler, &y)
        );

        // pushforward of c1^2 is 4 c1(S): extract the fiber coefficient
        // against each pullback basis vector
        let c1x = x.c1().c1();
        for i in 0..rank {
            let mut emb = vec![BigInt::zero(); rank + 1];
            emb[i] = BigInt::from(1);
            let emb = IntVector::new(emb);
            let lhs = x.tuple().form().eval(c1x, c1x, &emb).unwrap();
            let ei = IntVector::basis(rank, i);
            let rhs = s.pair(&s.c1s().scale(&BigInt::from(4)), &ei).unwrap();
            assert_eq!(lhs, rhs);
        }

        // spin flag is the parity of c1(S) + omega
        assert_eq!(x.tuple().spin(), s.c1s().add(&omega).unwrap().is_even());
        spin_seen |= x.tuple().spin();
    }
    assert!(spin_seen, "sampling never produced a spin bundle");
}

#[test]
fn forged_tuples_stay_admissible_and_homotopy_equivalent() {
    let mut rng = ChaCha8Rng::seed_from_u64(901);
    let mut produced = 0;
    while produced < 100 {
        let rank = rng.random_range(1..=3);
        let seed_tuple = random_admissible_tuple(&mut rng, rank, 10);
        let omega = LinearForm::new(
            (0..rank)
                .map(|_| BigInt::from(48 * rng.random_range(-3..=3i64)))
                .collect(),
        );
        let r = BigInt::from(1 + 48 * rng.random_range(0..=5i64));
        let forged = forge_family(&seed_tuple, &omega, &r).unwrap();
        assert!(is_admissible(&forged).unwrap());
        assert!(is_admissible_bruteforce(&forged).unwrap());
        assert!(homotopy_equivalent_identified(&seed_tuple, &forged).unwrap());
        produced += 1;
    }
}

#[test]
fn distinct_twists_have_distinct_p1() {
    let mut rng = ChaCha8Rng::seed_from_u64(902);
    for _ in 0..50 {
        let rank = rng.random_range(1..=3);
        let seed_tuple = random_admissible_tuple(&mut rng, rank, 10);
        let omega = LinearForm::new(
            (0..rank)
                .map(|_| BigInt::from(48 * rng.random_range(-3..=3i64)))
                .collect(),
        );
        if seed_tuple.p1().add(&omega).unwrap().is_zero() {
            continue;
        }
        let f1 = forge_family(&seed_tuple, &omega, &BigInt::from(49)).unwrap();
        let f2 = forge_family(&seed_tuple, &omega, &BigInt::from(97)).unwrap();
        assert_ne!(f1.p1(), f2.p1());
    }
}

#[test]
fn certification_is_monotone_in_bounds_for_rank2() {
    let mut rng = ChaCha8Rng::seed_from_u64(903);
    let b = BettiData::new(2, 0).unwrap();
    let mut certified_seen = 0;
    for _ in 0..40 {
        let seed_tuple = random_admissible_tuple(&mut rng, 2, 8);
        let omega = LinearForm::new(vec![
            BigInt::from(48 * rng.random_range(-40..=40i64)),
            BigInt::from(48 * rng.random_range(-40..=40i64)),
        ]);
        let Ok(forged) = forge_family(&seed_tuple, &omega, &BigInt::from(49)) else {
            continue;
        };
        let configs = [
            CertifyConfig { fano_box: 8, hyperplane_bound: 8, ..Default::default() },
            CertifyConfig { fano_box: 16, hyperplane_bound: 50, ..Default::default() },
            CertifyConfig { fano_box: 32, hyperplane_bound: 120, ..Default::default() },
        ];
        let verdicts: Vec<bool> = configs
            .iter()
            .map(|c| certify_non_kaehler(&forged, &b, c).unwrap().certified())
            .collect();
        // enlarging bounds never turns certified into inconclusive
        for w in verdicts.windows(2) {
            assert!(!w[0] || w[1], "lost certification when bounds grew");
        }
        certified_seen += verdicts[0] as u32;
    }
    assert!(certified_seen > 0, "no forged tuple certified at the small bounds");
}

#[test]
fn bundle_p1_vanishes_on_pullback_lattice() {
    // Lemma-style check on a fixed grid rather than random data: every
    // P^1-bundle over the plane or a Dolgachev model has p1 supported on
    // the fiber coordinate
    for q in [3u64, 5, 7] {
        let x = sixfold::construct::dolgachev_bundle(q).unwrap();
        let p1 = x.tuple().p1();
        assert!(p1.get(0).is_zero());
        assert!(p1.get(1).is_zero());
    }
    let plane = SurfaceData::projective_plane();
    for w in -4i64..=4 {
        let x = p1_bundle(&plane, &IntVector::from_i64(&[w])).unwrap();
        assert!(x.tuple().p1().get(0).is_zero());
    }
}
