use ramanujan_cubes::arith::*;
use ramanujan_cubes::quat::Quaternion;

#[test]
fn rewrite_is_identity_in_one_direction() {
    let gens = GeneratorSystem::new(&[5]).unwrap();
    for i in 0..6 {
        let r = rewrite(&[0], &[i], &gens).unwrap();
        assert_eq!(r, RewriteResult { indices: vec![i], unit: 1 });
    }
}

#[test]
fn rewrite_all_pairs_five_thirteen() {
    let gens = GeneratorSystem::new(&[5, 13]).unwrap();
    let mut seen = std::collections::HashSet::new();
    for a in 0..14 {
        for b in 0..6 {
            let r = rewrite(&[1, 0], &[a, b], &gens).unwrap();
            let lhs = gens.gens[1][a] * gens.gens[0][b];
            let rhs = gens.gens[0][r.indices[0]] * gens.gens[1][r.indices[1]];
            assert_eq!(lhs.norm(), 65);
            assert_eq!(rhs.norm(), 65);
            let signed = if r.unit == 1 { rhs } else { -rhs };
            assert_eq!(lhs, signed);
            seen.insert(r.indices.clone());
        }
    }
    // the rewrite is a bijection on the 84 index pairs
    assert_eq!(seen.len(), 84);
}

#[test]
fn factor_rejects_non_products() {
    let gens = GeneratorSystem::new(&[5]).unwrap();
    assert!(factor(Quaternion::new(3, 2, 0, 0), &[0], &gens).is_err());
}

#[test]
fn involution_pairing() {
    let gens = GeneratorSystem::new(&[5, 13, 17]).unwrap();
    for j in 0..3 {
        for i in 0..gens.r(j) {
            let k = gens.iota[j][i];
            assert_eq!(gens.iota[j][k], i);
            assert_eq!(gens.gens[j][k], gens.gens[j][i].conjugate());
            assert_ne!(k, i);
        }
    }
}

#[test]
fn lps_graph() {
    let x = build_complex(&ArithComplexConfig::new(vec![5], 13)).unwrap();
    let c = &x.complex;
    assert_eq!(c.vertex_count(), 2184);
    assert_eq!(c.r(), &[6]);
    assert_eq!(c.unoriented_count(1), 2184 * 3);
    let mut deg = vec![0; 2184];
    for &v in &c.table(1).bot[0] {
        deg[v as usize] += 1;
    }
    assert!(deg.iter().all(|&d| d == 6));
    assert!(x.vertices.iter().enumerate().all(|(i, &(h, _))| h as usize == i));
    let rep = irreducibility_report(c).unwrap();
    assert_eq!(rep.len(), 1);
    assert_eq!(rep[0].components, 1);
}

#[test]
fn five_thirteen_auto() {
    let x = search_n1(&[5, 13], 100).unwrap();
    assert_eq!(x.config.n1, 3);
    let c = &x.complex;
    let v = c.vertex_count();
    assert_eq!(c.r(), &[6, 14]);
    assert_eq!(c.unoriented_count(0b11), v * 6 * 14 / 4);
    assert_eq!(c.unoriented_count(0b01), v * 6 / 2);
    assert_eq!(c.unoriented_count(0b10), v * 14 / 2);
    assert!(c.verify_axioms().passed());
    assert!(c.verify_parities().unwrap().holds);
    let rep = irreducibility_report(c).unwrap();
    assert_eq!(rep.len(), 4);
    assert!(rep.iter().all(|e| e.connected), "{rep:?}");
}

#[test]
fn squares_close_in_h() {
    // both ways around a square end at the same vertex
    let x = build_complex(&ArithComplexConfig::new(vec![5, 13], 7)).unwrap();
    let c = &x.complex;
    for s in 0..c.oriented_count(0b11) as u32 {
        let a = c.top(0b01, 0, c.top(0b11, 1, s));
        let b = c.top(0b10, 1, c.top(0b11, 0, s));
        assert_eq!(a, b);
        for j in 0..2 {
            assert_eq!(c.inv(0b11, j, c.inv(0b11, j, s)), s);
        }
    }
}

#[test]
fn cube_counts_in_three_directions() {
    let x = build_complex(&ArithComplexConfig::new(vec![5, 13, 17], 3)).unwrap();
    let c = &x.complex;
    let v = c.vertex_count();
    assert!(c.verify_axioms().passed());
    for dirs in 0..8usize {
        let prod: usize = (0..3).filter(|j| dirs >> j & 1 == 1).map(|j| c.r()[j]).product();
        assert_eq!(c.unoriented_count(dirs), (v * prod) >> dirs.count_ones());
    }
}

#[test]
fn invalid_configs() {
    assert!(build_complex(&ArithComplexConfig::new(vec![5, 5], 13)).is_err());
    assert!(build_complex(&ArithComplexConfig::new(vec![5], 5)).is_err());
    assert!(build_complex(&ArithComplexConfig::new(vec![5], 15)).is_err());
    assert!(build_complex(&ArithComplexConfig::new(vec![7], 13)).is_err());
}

#[test]
fn disjoint_union_is_reported_disconnected() {
    let x = build_complex(&ArithComplexConfig::new(vec![5], 7)).unwrap();
    let u = x.complex.disjoint_union(&x.complex);
    let rep = irreducibility_report(&u).unwrap();
    assert_eq!(rep[0].components, 2);
    assert!(!rep[0].connected);
}

#[test]
fn odd_order_determinants_double_the_vertices() {
    let x = build_complex(&ArithComplexConfig::new(vec![5], 11)).unwrap();
    assert_eq!(x.group.h.len(), 660);
    assert_eq!(x.complex.vertex_count(), 1320);
    assert_eq!(x.group.kernel_order(), 2);
}
