use proptest::prelude::*;

use super::*;
use crate::ring::RingDescriptor;

fn ring(vars: &[&str]) -> RingDescriptor {
    RingDescriptor::polynomial_ring("S", 32003, vars).unwrap()
}

fn gb(r: &RingDescriptor, gens: &[&str]) -> GroebnerBasis {
    groebner_basis(r.poly_ring(), &r.parse_all(gens).unwrap(), MonomialOrder::Grevlex).unwrap()
}

#[test]
fn monomial_generators_are_their_own_basis() {
    let r = ring(&["x", "y"]);
    let g = gb(&r, &["x", "y"]);
    assert_eq!(g.generators(), r.parse_all(&["y", "x"]).unwrap());
}

#[test]
fn principal_ideal() {
    let r = ring(&["x", "y", "z"]);
    let g = gb(&r, &["y^2 - x*z"]);
    assert_eq!(g.generators(), r.parse_all(&["y^2 - x*z"]).unwrap());
}

#[test]
fn example_ideal_contains_w_squared() {
    let r = ring(&["x", "y", "z", "w"]);
    let g = gb(&r, &["x*w", "y*w", "z*w", "x - w", "y - w", "z - w"]);
    let w2 = r.parse("w^2").unwrap();
    assert!(g.generators().contains(&w2));
    assert!(g.normal_form(&w2).unwrap().is_zero());
    // explicit certificate: w^2 = x*w - w*(x - w)
    let cert = r.parse("x*w").unwrap() - r.parse("w").unwrap() * r.parse("x - w").unwrap();
    assert_eq!(cert, w2);
}

#[test]
fn normal_form_basics() {
    let r = ring(&["x", "y"]);
    let g = gb(&r, &["x"]);
    assert!(g.normal_form(&r.parse("x^2").unwrap()).unwrap().is_zero());
    let g = gb(&r, &["x", "y"]);
    assert_eq!(g.normal_form(&r.parse("1").unwrap()).unwrap(), r.parse("1").unwrap());
}

#[test]
fn normal_form_rejects_other_rings() {
    let r = ring(&["x", "y"]);
    let g = gb(&r, &["x"]);
    let other = ring(&["x", "y", "z"]);
    assert_eq!(g.normal_form(&other.parse("x").unwrap()), Err(Error::RingMismatch));
    let lex = r.poly_ring().with_order(MonomialOrder::Lex);
    let f = r.parse("x").unwrap().to_ring(&lex);
    assert_eq!(g.normal_form(&f), Err(Error::OrderMismatch));
}

#[test]
fn lex_basis_eliminates() {
    // x - y^2, y^3 - 1: lex basis has a univariate polynomial in y
    let r = ring(&["x", "y"]);
    let g = groebner_basis(r.poly_ring(), &r.parse_all(&["x - y^2", "x*y - 1"]).unwrap(), MonomialOrder::Lex).unwrap();
    let gens = g.generators();
    assert!(gens.iter().any(|p| p.terms().iter().all(|(m, _)| m.exponents()[0] == 0)));
}

#[test]
fn syzygies_of_koszul_pair() {
    let r = ring(&["x", "y"]);
    let g = gb(&r, &["x", "y"]);
    let s = g.syzygies();
    assert_eq!(s.len(), 1);
    assert!(s[0].dot(&g.generators()).is_zero());
    // (x, -y) against (y, x) in basis order
    assert_eq!(s[0].components(), r.parse_all(&["x", "-y"]).unwrap().as_slice());
}

#[test]
fn single_regular_element_has_no_syzygies() {
    let r = ring(&["x", "y"]);
    assert!(gb(&r, &["x^2 + y^2"]).syzygies().is_empty());
    let gens = r.parse_all(&["x^2 + y^2"]).unwrap();
    assert!(ideal_syzygies(r.poly_ring(), &gens).unwrap().is_empty());
}

#[test]
fn syzygies_of_monomials() {
    let r = ring(&["x", "y", "z", "w"]);
    let gens = r.parse_all(&["x*w", "y*w"]).unwrap();
    let s = ideal_syzygies(r.poly_ring(), &gens).unwrap();
    let expected = ModuleElement::new(r.parse_all(&["y", "-x"]).unwrap());
    let neg = ModuleElement::new(r.parse_all(&["-y", "x"]).unwrap());
    assert!(s.contains(&expected) || s.contains(&neg), "{s:?}");
}

/// Koszul complex of a regular sequence of length k: the syzygy module of
/// the k generators needs C(k,2) generators.
#[test]
fn koszul_ranks() {
    let r = ring(&["x", "y", "z", "w"]);
    for k in 2..=4 {
        let names = ["x", "y", "z", "w"];
        let gens = r.parse_all(&names[..k]).unwrap();
        let s = ideal_syzygies(r.poly_ring(), &gens).unwrap();
        assert_eq!(s.len(), k * (k - 1) / 2);
        for v in &s {
            assert!(v.dot(&gens).is_zero());
        }
    }
}

#[test]
fn module_basis_membership() {
    let r = ring(&["x", "y"]);
    let rr = r.poly_ring();
    let v1 = ModuleElement::new(r.parse_all(&["x", "y"]).unwrap());
    let v2 = ModuleElement::new(r.parse_all(&["y", "0"]).unwrap());
    let g = module_groebner_basis(rr, 2, &[v1.clone(), v2.clone()], MonomialOrder::Grevlex, ModuleOrder::pot(2), &[]).unwrap();
    let combo = v1.mul_poly(&r.parse("x + 1").unwrap()).add(&v2.mul_poly(&r.parse("y^3").unwrap()));
    assert!(g.module_normal_form(&combo).unwrap().is_zero());
    let e1 = ModuleElement::unit(rr, 2, 1);
    assert!(!g.module_normal_form(&e1).unwrap().is_zero());
    for s in g.syzygies() {
        assert!(s.apply(&g.module_generators()).is_zero());
    }
}

#[test]
fn pair_cap_is_reported() {
    let r = ring(&["x", "y", "z"]);
    let gens = r.parse_all(&["x^2 - y*z", "x*y - z^2", "y^3 - x*z^2"]).unwrap();
    let opts = GbOptions {
        pair_cap: Some(1),
        truncate: false,
    };
    let e = groebner_basis_with(r.poly_ring(), &gens, MonomialOrder::Grevlex, &opts).unwrap_err();
    assert!(matches!(e, Error::ResourceCap { .. }));
}

#[test]
fn truncation_matches_full_computation() {
    let r = ring(&["x", "y", "z"]);
    let gens = r.parse_all(&["x^2 + y*z", "y^2 - x*z + z^2", "z^3 + x*y*z", "x*y^2"]).unwrap();
    let full = groebner_basis_with(r.poly_ring(), &gens, MonomialOrder::Grevlex, &GbOptions::default()).unwrap();
    let trunc = groebner_basis(r.poly_ring(), &gens, MonomialOrder::Grevlex).unwrap();
    assert_eq!(full, trunc);
}

/// Buchberger's criterion, checked independently of the engine's pair pruning.
fn is_groebner(g: &GroebnerBasis) -> bool {
    let gens = g.generators();
    for i in 0..gens.len() {
        for j in (i + 1)..gens.len() {
            let (mi, _) = gens[i].leading_term().unwrap();
            let (mj, _) = gens[j].leading_term().unwrap();
            let l = mi.lcm(mj);
            let ring = g.ring();
            let a = gens[i].mul_ref(&Polynomial::monomial(ring, mi.quotient_of(&l).unwrap(), 1));
            let b = gens[j].mul_ref(&Polynomial::monomial(ring, mj.quotient_of(&l).unwrap(), 1));
            if !g.normal_form(&(a - b)).unwrap().is_zero() {
                return false;
            }
        }
    }
    true
}

fn small_poly(r: &RingDescriptor) -> impl Strategy<Value = Polynomial> {
    let ring = r.poly_ring().clone();
    let n = ring.nvars();
    prop::collection::vec((prop::collection::vec(0u32..3, n), -3i64..4), 1..4).prop_map(move |terms| {
        let f = *ring.field();
        Polynomial::from_terms(
            &ring,
            terms
                .into_iter()
                .map(|(e, c)| (Monomial::new(&e), f.from_i64(c)))
                .collect(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn basis_is_groebner_and_absorbs_products(
        gens in prop::collection::vec(small_poly(&ring(&["x", "y", "z"])), 1..4),
        mult in small_poly(&ring(&["x", "y", "z"])),
    ) {
        let r = gens[0].ring().clone();
        let g = groebner_basis(&r, &gens, MonomialOrder::Grevlex).unwrap();
        prop_assert!(is_groebner(&g));
        for f in &gens {
            prop_assert!(g.contains(f).unwrap());
            prop_assert!(g.contains(&f.mul_ref(&mult)).unwrap());
        }
        let nf = g.normal_form(&mult).unwrap();
        prop_assert_eq!(g.normal_form(&nf).unwrap(), nf.clone());
        prop_assert!(g.contains(&(mult.clone() - nf)).unwrap());
    }

    #[test]
    fn reduced_basis_ignores_generator_order(
        gens in prop::collection::vec(small_poly(&ring(&["x", "y", "z"])), 2..5),
    ) {
        let r = gens[0].ring().clone();
        let g1 = groebner_basis(&r, &gens, MonomialOrder::Grevlex).unwrap();
        let mut rev = gens.clone();
        rev.reverse();
        // also add a redundant combination
        rev.push(gens[0].add_ref(&gens[1]));
        let g2 = groebner_basis(&r, &rev, MonomialOrder::Grevlex).unwrap();
        prop_assert_eq!(g1, g2);
    }

    #[test]
    fn syzygies_are_sound(
        gens in prop::collection::vec(small_poly(&ring(&["x", "y", "z"])), 1..4),
    ) {
        let r = gens[0].ring().clone();
        let g = groebner_basis(&r, &gens, MonomialOrder::Grevlex).unwrap();
        let basis = g.generators();
        for s in g.syzygies() {
            prop_assert!(s.dot(&basis).is_zero());
        }
        for s in ideal_syzygies(&r, &gens).unwrap() {
            prop_assert!(s.dot(&gens).is_zero());
        }
    }
}
