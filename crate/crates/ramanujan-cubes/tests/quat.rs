use proptest::prelude::*;
use ramanujan_cubes::quat::*;

fn q(a0: i64, a1: i64, a2: i64, a3: i64) -> Quaternion {
    Quaternion::new(a0, a1, a2, a3)
}

#[test]
fn norm_examples() {
    assert_eq!(norm(q(1, 2, 0, 0)), 5);
    assert_eq!(norm(q(1, 0, 0, 0)), 1);
    assert_eq!(norm(q(3, 2, 0, 0)), 13);
}

#[test]
fn conjugate_examples() {
    assert_eq!(conjugate(q(1, 2, 0, 0)), q(1, -2, 0, 0));
    assert_eq!(conjugate(q(1, 0, 0, 0)), q(1, 0, 0, 0));
    let x = q(3, -2, 2, -2);
    assert_eq!(x * conjugate(x), q(21, 0, 0, 0));
}

#[test]
fn multiply_examples() {
    assert_eq!(multiply(q(0, 1, 0, 0), q(0, 0, 1, 0)), q(0, 0, 0, 1));
    assert_eq!(multiply(q(0, 0, 1, 0), q(0, 0, 0, 1)), q(0, 1, 0, 0));
    assert_eq!(multiply(q(0, 0, 0, 1), q(0, 1, 0, 0)), q(0, 0, 1, 0));
    assert_eq!(multiply(q(0, 0, 1, 0), q(0, 1, 0, 0)), q(0, 0, 0, -1));
    assert_eq!(multiply(Quaternion::ONE, q(4, -3, 2, 7)), q(4, -3, 2, 7));
    assert_eq!(multiply(q(1, 2, 0, 0), q(1, -2, 0, 0)), q(5, 0, 0, 0));
}

#[test]
fn generators_of_five() {
    let g = enumerate_generators(5).unwrap();
    let want = vec![q(1, -2, 0, 0), q(1, 0, -2, 0), q(1, 0, 0, -2), q(1, 0, 0, 2), q(1, 0, 2, 0), q(1, 2, 0, 0)];
    assert_eq!(g, want);
}

#[test]
fn generators_of_thirteen() {
    let g = enumerate_generators(13).unwrap();
    assert_eq!(g.len(), 14);
    assert_eq!(g.iter().filter(|x| x.a0 == 3).count(), 6);
    assert_eq!(g.iter().filter(|x| x.a0 == 1).count(), 8);
    assert!(g.iter().filter(|x| x.a0 == 1).all(|x| x.a1.abs() == 2 && x.a2.abs() == 2 && x.a3.abs() == 2));
}

#[test]
fn generator_counts_and_involution() {
    for p in [5u64, 13, 17, 29, 37, 41] {
        let g = enumerate_generators(p).unwrap();
        assert_eq!(g.len() as u64, p + 1);
        for x in &g {
            assert_eq!(x.norm(), p);
            assert!(g.contains(&x.conjugate()));
        }
    }
}

#[test]
fn generators_reject_bad_primes() {
    assert!(matches!(enumerate_generators(3), Err(ramanujan_cubes::Error::GeneratorCount { found: 0, .. })));
    assert!(matches!(enumerate_generators(7), Err(ramanujan_cubes::Error::GeneratorCount { .. })));
    assert!(enumerate_generators(2).is_err());
    assert!(enumerate_generators(9).is_err());
}

#[test]
fn residue_examples() {
    let r = solve_residue(13).unwrap();
    assert_eq!((r.x, r.y), (5, 0));
    let r = solve_residue(3).unwrap();
    assert_eq!((r.x, r.y), (1, 1));
    for n in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        let r = solve_residue(n).unwrap();
        assert_eq!((r.x * r.x + r.y * r.y + 1) % n, 0);
    }
    assert!(solve_residue(15).is_err());
}

#[test]
fn embed_examples() {
    let r = solve_residue(13).unwrap();
    let m = embed(q(1, 2, 0, 0), &r);
    assert_eq!(m, [11, 0, 0, 4]);
    assert_eq!(mat_det(&m, 13), 5);
    for n in [3u64, 7, 11, 13] {
        let r = solve_residue(n).unwrap();
        let i = embed(q(0, 1, 0, 0), &r);
        assert_eq!(mat_mul(&i, &i, n), [n - 1, 0, 0, n - 1]);
    }
}

#[test]
fn embed_is_homomorphism_on_generator_pairs() {
    let r = solve_residue(17).unwrap();
    let mut all = enumerate_generators(5).unwrap();
    all.extend(enumerate_generators(13).unwrap());
    for &a in &all {
        assert_eq!(mat_det(&embed(a, &r), 17), a.norm() % 17);
        for &b in &all {
            assert_eq!((a * b).norm(), a.norm() * b.norm());
            assert_eq!(embed(a * b, &r), mat_mul(&embed(a, &r), &embed(b, &r), 17));
        }
    }
}

#[test]
fn group_orders() {
    let t = build_group(&[5, 13], 3).unwrap();
    assert_eq!(t.h.len(), 24);
    let t = build_group(&[5], 13).unwrap();
    assert_eq!(t.h.len(), 2184);
    assert_eq!(t.kernel_order(), 1);
    let t = build_group(&[5], 11).unwrap();
    assert_eq!(t.h.len(), 660);
    assert_eq!(t.kernel_order(), 2);
    assert!(build_group(&[5, 13], 13).is_err());
}

#[test]
fn group_order_matches_residue_criterion() {
    for &(primes, n) in &[(&[5u64][..], 3u64), (&[5], 7), (&[5], 11), (&[5], 13), (&[13], 3), (&[13], 17), (&[5, 13], 7), (&[17], 13)] {
        let t = build_group(primes, n).unwrap();
        let sl = (n * (n * n - 1)) as usize;
        let psl = sl / 2;
        let a = cyclic_span(primes, n).len();
        let mut with_neg = primes.to_vec();
        with_neg.push(n - 1);
        let b = cyclic_span(&with_neg, n).len();
        assert_eq!(t.h.len(), sl * a / b, "primes {primes:?} N1 {n}");
        let some_nonsquare = primes.iter().any(|&p| (1..n).all(|x| x * x % n != p % n));
        if some_nonsquare {
            assert_eq!(t.h.len(), 2 * psl);
        } else {
            assert!(t.h.len() == psl || t.h.len() == sl);
        }
        assert!(t.kernel_order() == 1 || t.kernel_order() == 2);
    }
    // all primes squares, yet H is the double cover of PSL2 of order |SL2|
    assert_eq!(build_group(&[13], 17).unwrap().h.len(), 4896);
}

#[test]
fn group_table_laws() {
    let t = build_group(&[5], 7).unwrap();
    let h = &t.h;
    let e = h.identity();
    let n = h.len() as u32;
    for a in (0..n).step_by(7) {
        assert_eq!(h.mul(a, e), a);
        assert_eq!(h.mul(e, a), a);
        assert_eq!(h.mul(a, h.inverse(a)), e);
        for b in (0..n).step_by(11) {
            for c in (0..n).step_by(13) {
                assert_eq!(h.mul(h.mul(a, b), c), h.mul(a, h.mul(b, c)));
            }
        }
    }
    for (hp, &img) in t.quotient.iter().enumerate().step_by(5) {
        for (hq, &jmg) in t.quotient.iter().enumerate().step_by(9) {
            assert_eq!(t.quotient[t.h_prime.mul(hp as u32, hq as u32) as usize], h.mul(img, jmg));
        }
    }
    for (x, &s) in t.section.iter().enumerate() {
        assert_eq!(t.quotient[s as usize], x as u32);
    }
}

#[test]
fn canonical_form_is_least_multiple() {
    let t = build_group(&[5], 13).unwrap();
    for m in t.h.elements.iter().step_by(97) {
        for &s in &t.h.scalars {
            assert!(*m <= mat_scale(m, s, 13));
        }
        let d = mat_det(m, 13);
        assert!(t.det_group.contains(&d));
    }
}

#[test]
fn other_splitting_conjugates() {
    // every valid splitting gives a conjugate embedding, so traces agree
    let n = 13u64;
    let r0 = solve_residue(n).unwrap();
    let g = enumerate_generators(5).unwrap();
    for x in 0..n {
        for y in 0..n {
            if (x * x + y * y + 1) % n != 0 {
                continue;
            }
            let r = ResiduePair { n1: n, x, y };
            for &w in &g {
                let (a, b) = (embed(w, &r0), embed(w, &r));
                assert_eq!((a[0] + a[3]) % n, (b[0] + b[3]) % n);
            }
        }
    }
}

proptest! {
    #[test]
    fn norm_is_multiplicative(a in prop::array::uniform4(-50i64..50), b in prop::array::uniform4(-50i64..50)) {
        let (x, y) = (q(a[0], a[1], a[2], a[3]), q(b[0], b[1], b[2], b[3]));
        prop_assert_eq!((x * y).norm(), x.norm() * y.norm());
        prop_assert_eq!(x * x.conjugate(), q(x.norm() as i64, 0, 0, 0));
        prop_assert_eq!((x * y).conjugate(), y.conjugate() * x.conjugate());
    }

    #[test]
    fn multiplication_is_associative(a in prop::array::uniform4(-20i64..20), b in prop::array::uniform4(-20i64..20), c in prop::array::uniform4(-20i64..20)) {
        let (x, y, z) = (q(a[0], a[1], a[2], a[3]), q(b[0], b[1], b[2], b[3]), q(c[0], c[1], c[2], c[3]));
        prop_assert_eq!((x * y) * z, x * (y * z));
    }

    #[test]
    fn embed_is_ring_homomorphism(a in prop::array::uniform4(-30i64..30), b in prop::array::uniform4(-30i64..30), k in 0usize..8) {
        let n = [3u64, 7, 11, 13, 17, 19, 23, 29][k];
        let r = solve_residue(n).unwrap();
        let (x, y) = (q(a[0], a[1], a[2], a[3]), q(b[0], b[1], b[2], b[3]));
        prop_assert_eq!(embed(x * y, &r), mat_mul(&embed(x, &r), &embed(y, &r), n));
        prop_assert_eq!(mat_det(&embed(x, &r), n), x.norm() % n);
    }
}
