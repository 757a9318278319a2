use proptest::prelude::*;

use super::*;
use crate::oracle;

fn example() -> RingDescriptor {
    RingDescriptor::from_strings("R", 32003, &["x", "y", "z", "w"], None, &["x*w", "y*w", "z*w"]).unwrap()
}

fn poly_ring(vars: &[&str]) -> RingDescriptor {
    RingDescriptor::polynomial_ring("S", 32003, vars).unwrap()
}

fn ideal(r: &RingDescriptor, g: &[&str]) -> Ideal {
    Ideal::parse(r, g).unwrap()
}

#[test]
fn powers() {
    let r = poly_ring(&["x", "y"]);
    let p = ideal_power(&ideal(&r, &["x", "y"]), 2).unwrap();
    assert!(p.same_as(&ideal(&r, &["x^2", "x*y", "y^2"])));
    assert_eq!(p.gens().len(), 3);
    let i = ideal(&r, &["x^2 + y", "y^3"]);
    assert!(ideal_power(&i, 1).unwrap().same_as(&i));
    assert!(ideal_power(&i, 0).is_err());
    let s = poly_ring(&["x", "y", "z", "w"]);
    assert_eq!(ideal_power(&ideal(&s, &["x - w", "y - w", "z - w"]), 2).unwrap().gens().len(), 6);
}

#[test]
fn intersections() {
    let s = poly_ring(&["x", "y", "z", "w"]);
    let c = intersect(&ideal(&s, &["x", "y", "z"]), &ideal(&s, &["w"])).unwrap();
    let expected = ideal(&s, &["x*w", "y*w", "z*w"]);
    // double inclusion
    assert!(c.contains_ideal(&expected).unwrap());
    assert!(expected.contains_ideal(&c).unwrap());
    let i = ideal(&s, &["x^2 - y*z", "w^3"]);
    assert!(intersect(&i, &i).unwrap().same_as(&i));
    let r = poly_ring(&["x", "y"]);
    assert!(intersect(&ideal(&r, &["x"]), &ideal(&r, &["y"])).unwrap().same_as(&ideal(&r, &["x*y"])));
}

#[test]
fn colons() {
    let r = poly_ring(&["x", "y"]);
    let i = ideal(&r, &["x^2"]);
    assert!(colon(&i, &ideal(&r, &["x"])).unwrap().same_as(&ideal(&r, &["x"])));
    assert!(colon(&i, &Ideal::unit(&r)).unwrap().same_as(&i));
    assert!(colon(&i, &Ideal::zero(&r)).unwrap().is_unit());
}

#[test]
fn colon_by_maximal_ideal_on_example() {
    let r = example();
    let q = ideal(&r, &["x - w", "y - w", "z - w"]);
    let qm = colon(&q, &Ideal::maximal(&r)).unwrap();
    assert!(qm.contains_ideal(&q).unwrap());
    assert!(!q.contains_ideal(&qm).unwrap());
    assert_eq!(quotient_length(&q).unwrap().get(), 2);
    assert_eq!(quotient_length(&qm).unwrap().get(), 1);
    // q : m is all of m here
    assert!(qm.same_as(&Ideal::maximal(&r)));
}

#[test]
fn saturations() {
    let r = poly_ring(&["x", "y"]);
    let m = Ideal::maximal(&r);
    assert!(saturate(&ideal(&r, &["x^2", "x*y"]), &m).unwrap().same_as(&ideal(&r, &["x"])));
    let s = poly_ring(&["x", "y", "z", "w"]);
    let j = ideal(&s, &["x*w", "y*w", "z*w"]);
    let ms = Ideal::maximal(&s);
    assert!(colon(&j, &ms).unwrap().same_as(&j));
    assert!(saturate(&j, &ms).unwrap().same_as(&j));
    let p = ideal(&s, &["x*z - y^2"]);
    assert!(saturate(&p, &ideal(&s, &["w"])).unwrap().same_as(&p));
}

#[test]
fn m_primary_tests() {
    let r = example();
    assert!(is_m_primary(&ideal(&r, &["x - w", "y - w", "z - w"])));
    assert!(is_m_primary(&Ideal::maximal(&r)));
    let s = poly_ring(&["x", "y"]);
    assert!(!is_m_primary(&ideal(&s, &["x"])));
    // finite but with a point away from the origin
    assert!(!is_m_primary(&ideal(&s, &["x^2 - x", "y"])));
    assert!(!is_m_primary(&Ideal::unit(&s)));
}

#[test]
fn dimensions() {
    assert_eq!(krull_dimension(&example()).unwrap(), 3);
    assert_eq!(krull_dimension(&poly_ring(&["a", "b", "c", "d", "e"])).unwrap(), 5);
    let h = RingDescriptor::from_strings("H", 32003, &["x", "y", "z"], None, &["x*z - y^2"]).unwrap();
    assert_eq!(krull_dimension(&h).unwrap(), 2);
    let u = RingDescriptor::from_strings("U", 32003, &["x"], None, &["1"]);
    // a constant relation is homogeneous of degree 0 but leaves no ring
    assert!(u.is_err() || krull_dimension(&u.unwrap()).is_err());
}

#[test]
fn lengths() {
    let s = poly_ring(&["x", "y"]);
    assert_eq!(quotient_length(&ideal(&s, &["x^2", "y^2"])).unwrap().get(), 4);
    assert_eq!(quotient_length(&Ideal::maximal(&example())).unwrap().get(), 1);
    assert!(matches!(quotient_length(&ideal(&s, &["x"])), Err(Error::NotMPrimary(_))));
}

#[test]
fn elimination() {
    let s = poly_ring(&["t", "x", "y"]);
    let i = ideal(&s, &["t*x", "y - t*y"]);
    let e = eliminate(&i, &[0]).unwrap();
    assert!(e.same_as(&Ideal::ambient(&s, vec![s.parse("x*y").unwrap()]).unwrap()));
    let j = ideal(&s, &["x^2 - t", "y^2"]);
    assert!(eliminate(&j, &[]).unwrap().same_as(&j));
    let k = ideal(&s, &["x*y", "t^2 + x^2"]);
    assert!(eliminate(&k, &[0, 1, 2]).unwrap().gens().is_empty());
}

/// Lengths of the powers of the parameter ideal on the example ring follow
/// C(n+3,3) + (n+1); the first entries are also checked against the dense oracle.
#[test]
fn example_power_lengths() {
    let r = example();
    let q = ideal(&r, &["x - w", "y - w", "z - w"]);
    let expected = [2u64, 6, 13, 24, 40, 62, 91];
    for (n, &e) in expected.iter().enumerate() {
        let p = ideal_power(&q, n as u32 + 1).unwrap();
        assert_eq!(quotient_length(&p).unwrap().get(), e, "n = {n}");
        let c = (n as u64 + 3) * (n as u64 + 2) * (n as u64 + 1) / 6 + n as u64 + 1;
        assert_eq!(c, e);
        if n <= 2 {
            assert_eq!(oracle::length(&p.lifted_gens(), n as u64 + 3) as u64, e);
        }
    }
}

#[test]
fn module_lengths() {
    // (x)/(x^2, xy) is one-dimensional
    let s = poly_ring(&["x", "y"]);
    let den = ideal(&s, &["x^2", "x*y"]);
    assert_eq!(module_length(&[s.parse("x").unwrap()], &den).unwrap(), Some(1));
    // (x)/(x^2) is not of finite length
    let den = ideal(&s, &["x^2"]);
    assert_eq!(module_length(&[s.parse("x").unwrap()], &den).unwrap(), None);
    // agrees with a difference of colengths when both are finite
    let den = ideal(&s, &["x^3", "y^2"]);
    let num = s.parse_all(&["x^2", "y"]).unwrap();
    let big = den.sum(&Ideal::new(&s, num.clone()).unwrap());
    let diff = quotient_length(&den).unwrap().get() - quotient_length(&big).unwrap().get();
    assert_eq!(module_length(&num, &den).unwrap(), Some(diff));
}

fn arb_poly(ring: RingDescriptor) -> impl Strategy<Value = Polynomial> {
    let n = ring.nvars();
    prop::collection::vec((prop::collection::vec(0u32..3, n), -3i64..4), 1..4).prop_map(move |t| {
        let s = ring.poly_ring();
        Polynomial::from_terms(
            s,
            t.into_iter()
                .map(|(e, c)| (Monomial::new(&e), s.field().from_i64(c)))
                .collect(),
        )
    })
}

/// m-primary ideals: a power of m plus random extras.
fn arb_m_primary(ring: RingDescriptor) -> impl Strategy<Value = Ideal> {
    (2u32..4, prop::collection::vec(arb_poly(ring.clone()), 0..3)).prop_map(move |(k, extra)| {
        let mut gens = ideal_power(&Ideal::maximal(&ring), k).unwrap().gens().to_vec();
        gens.extend(extra);
        Ideal::new(&ring, gens).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn intersection_and_colon_laws(
        a in prop::collection::vec(arb_poly(poly_ring(&["x", "y", "z"])), 1..3),
        b in prop::collection::vec(arb_poly(poly_ring(&["x", "y", "z"])), 1..3),
    ) {
        let r = poly_ring(&["x", "y", "z"]);
        let i = Ideal::new(&r, a).unwrap();
        let k = Ideal::new(&r, b).unwrap();
        let c = intersect(&i, &k).unwrap();
        prop_assert!(i.contains_ideal(&c).unwrap());
        prop_assert!(k.contains_ideal(&c).unwrap());
        // products lie in the intersection
        prop_assert!(c.contains_ideal(&i.product(&k)).unwrap());
        let q = colon(&i, &k).unwrap();
        prop_assert!(q.contains_ideal(&i).unwrap());
        prop_assert!(i.contains_ideal(&q.product(&k)).unwrap());
    }

    #[test]
    fn saturation_is_idempotent(a in prop::collection::vec(arb_poly(poly_ring(&["x", "y", "z"])), 1..3)) {
        let r = poly_ring(&["x", "y", "z"]);
        let i = Ideal::new(&r, a).unwrap();
        let m = Ideal::maximal(&r);
        let s1 = saturate(&i, &m).unwrap();
        let s2 = saturate(&s1, &m).unwrap();
        prop_assert!(s1.same_as(&s2));
    }

    #[test]
    fn lengths_match_oracle_and_are_antitone(i in arb_m_primary(example()), extra in arb_poly(example())) {
        prop_assume!(!i.is_unit());
        let l = quotient_length(&i).unwrap().get();
        prop_assert_eq!(l as usize, oracle::length(&i.lifted_gens(), 5));
        let bigger = i.sum(&i.with_gens(vec![extra]));
        if is_m_primary(&bigger) {
            prop_assert!(quotient_length(&bigger).unwrap().get() <= l);
        }
        let qm = colon(&i, &Ideal::maximal(&i.ring().clone())).unwrap();
        prop_assert!(quotient_length(&qm).unwrap().get() <= l);
    }
}
