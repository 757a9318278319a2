//! Standard monomials of monomial ideals: counting, listing, dimension.

use crate::monomial::Monomial;

fn divisible(lts: &[Monomial], exps: &[u32]) -> bool {
    lts.iter()
        .any(|m| m.exponents().iter().zip(exps).all(|(a, b)| a <= b))
}

/// Whether every variable has a pure power among `lts`.
pub(crate) fn is_zero_dimensional(lts: &[Monomial], nvars: usize) -> bool {
    (0..nvars).all(|i| {
        lts.iter()
            .any(|m| m.is_one() || (m.exponents()[i] > 0 && m.support().all(|k| k == i)))
    })
}

/// Visit every standard monomial (exponent vector) of a zero-dimensional
/// monomial ideal. Returns `false` without visiting if the ideal is not
/// zero-dimensional.
fn visit(lts: &[Monomial], nvars: usize, mut f: impl FnMut(&[u32])) -> bool {
    if !is_zero_dimensional(lts, nvars) {
        return false;
    }
    let mut exps = vec![0u32; nvars];
    // depth-first over exponent vectors: raise variable i while the
    // monomial with later variables zeroed stays standard
    fn rec(i: usize, exps: &mut Vec<u32>, lts: &[Monomial], f: &mut dyn FnMut(&[u32])) {
        let n = exps.len();
        loop {
            if divisible(lts, exps) {
                break;
            }
            if i + 1 == n {
                f(exps);
            } else {
                rec(i + 1, exps, lts, f);
            }
            exps[i] += 1;
        }
        exps[i] = 0;
    }
    rec(0, &mut exps, lts, &mut f);
    true
}

/// Number of standard monomials, or `None` if infinitely many.
pub(crate) fn count_standard(lts: &[Monomial], nvars: usize) -> Option<u64> {
    let mut count = 0u64;
    visit(lts, nvars, |_| count += 1).then_some(count)
}

/// Standard monomials, or `None` if infinitely many.
pub(crate) fn standard_monomials(lts: &[Monomial], nvars: usize) -> Option<Vec<Monomial>> {
    let mut out = Vec::new();
    visit(lts, nvars, |e| out.push(Monomial::new(e))).then_some(out)
}

/// Krull dimension of `S/(lts)`: the largest set of variables containing the
/// support of no generator. `None` for the unit ideal.
pub(crate) fn combinatorial_dimension(lts: &[Monomial], nvars: usize) -> Option<usize> {
    if lts.iter().any(|m| m.is_one()) {
        return None;
    }
    assert!(nvars < 32);
    let masks: Vec<u32> = lts
        .iter()
        .map(|m| m.support().fold(0u32, |acc, i| acc | (1 << i)))
        .collect();
    let mut best = 0;
    for sigma in 0u32..(1u32 << nvars) {
        let size = sigma.count_ones() as usize;
        if size > best && masks.iter().all(|&g| g & !sigma != 0) {
            best = size;
        }
    }
    Some(best)
}
