//! Monomial orders.
//!
//! All orders respect an optional positive weight vector (the grading of the
//! ring). With unit weights they are the textbook orders.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::monomial::Monomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic, `x_1 > x_2 > ... > x_n`.
    #[default]
    Grevlex,
    Lex,
    /// Product of two graded reverse lexicographic orders; the first `block`
    /// variables are eliminated.
    Elimination { block: usize },
}

impl MonomialOrder {
    pub fn compare(&self, a: &Monomial, b: &Monomial, weights: &[u32]) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => grevlex_range(a, b, weights, 0, a.nvars()),
            MonomialOrder::Lex => a.exponents().cmp(b.exponents()),
            MonomialOrder::Elimination { block } => {
                grevlex_range(a, b, weights, 0, block)
                    .then_with(|| grevlex_range(a, b, weights, block, a.nvars()))
            }
        }
    }

    /// Whether every monomial is bounded below by the degree in this order, i.e.
    /// reductions never raise the degree. Required for degree truncation.
    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, MonomialOrder::Grevlex)
    }
}

fn weighted(a: &Monomial, weights: &[u32], lo: usize, hi: usize) -> u64 {
    a.exponents()[lo..hi]
        .iter()
        .zip(&weights[lo..hi])
        .map(|(&e, &w)| e as u64 * w as u64)
        .sum()
}

/// Grevlex with unit weights over all variables.
#[inline]
pub(crate) fn grevlex_unit(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        o => return o,
    }
    let (ea, eb) = (a.exponents(), b.exponents());
    for i in (0..ea.len()).rev() {
        if ea[i] != eb[i] {
            return eb[i].cmp(&ea[i]);
        }
    }
    Ordering::Equal
}

#[inline]
fn grevlex_range(a: &Monomial, b: &Monomial, weights: &[u32], lo: usize, hi: usize) -> Ordering {
    let (da, db) = if lo == 0 && hi == a.nvars() && weights.iter().all(|&w| w == 1) {
        (a.degree(), b.degree())
    } else {
        (weighted(a, weights, lo, hi), weighted(b, weights, lo, hi))
    };
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    let (ea, eb) = (a.exponents(), b.exponents());
    for i in (lo..hi).rev() {
        match ea[i].cmp(&eb[i]) {
            Ordering::Equal => continue,
            // smaller exponent in the last differing variable wins
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e)
    }

    #[test]
    fn textbook_examples() {
        let w = [1, 1, 1];
        // x^2 y vs x y^2
        assert_eq!(MonomialOrder::Lex.compare(&m(&[2, 1, 0]), &m(&[1, 2, 0]), &w), Ordering::Greater);
        assert_eq!(MonomialOrder::Grevlex.compare(&m(&[2, 1, 0]), &m(&[1, 2, 0]), &w), Ordering::Greater);
        // grevlex: x y z^0 ... x z vs y^2: y^2 > x z
        assert_eq!(MonomialOrder::Grevlex.compare(&m(&[0, 2, 0]), &m(&[1, 0, 1]), &w), Ordering::Greater);
        // lex: x z > y^2
        assert_eq!(MonomialOrder::Lex.compare(&m(&[0, 2, 0]), &m(&[1, 0, 1]), &w), Ordering::Less);
        // elimination of the first variable: anything with x beats any x-free monomial
        let e = MonomialOrder::Elimination { block: 1 };
        assert_eq!(e.compare(&m(&[1, 0, 0]), &m(&[0, 5, 5]), &w), Ordering::Greater);
    }

    #[test]
    fn weights_change_degree_comparison() {
        let w = [3, 4, 5];
        // x^3 has weight 9, y z has weight 9 as well; y^2 has weight 8
        assert_eq!(MonomialOrder::Grevlex.compare(&m(&[3, 0, 0]), &m(&[0, 2, 0]), &w), Ordering::Greater);
    }

    fn arb_mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..5, 3).prop_map(|v| Monomial::new(&v))
    }

    fn orders() -> impl Strategy<Value = MonomialOrder> {
        prop_oneof![
            Just(MonomialOrder::Grevlex),
            Just(MonomialOrder::Lex),
            Just(MonomialOrder::Elimination { block: 1 }),
            Just(MonomialOrder::Elimination { block: 2 }),
        ]
    }

    proptest! {
        #[test]
        fn order_laws(o in orders(), a in arb_mono(), b in arb_mono(), c in arb_mono(), weighted in any::<bool>()) {
            let w: &[u32] = if weighted { &[2, 1, 3] } else { &[1, 1, 1] };
            // totality and antisymmetry
            let ab = o.compare(&a, &b, w);
            prop_assert_eq!(ab, o.compare(&b, &a, w).reverse());
            prop_assert_eq!(ab == Ordering::Equal, a == b);
            // transitivity
            if ab != Ordering::Greater && o.compare(&b, &c, w) != Ordering::Greater {
                prop_assert_ne!(o.compare(&a, &c, w), Ordering::Greater);
            }
            // multiplicativity
            prop_assert_eq!(o.compare(&a.mul(&c), &b.mul(&c), w), ab);
            // 1 is minimal
            prop_assert_ne!(o.compare(&a, &Monomial::one(3), w), Ordering::Less);
        }
    }
}
