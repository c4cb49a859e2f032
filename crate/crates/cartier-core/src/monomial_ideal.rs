//! Combinatorial fast paths for monomial ideals.
//!
//! A monomial ideal is handled entirely through its exponent vectors:
//! membership is divisibility, colon is division by gcd, intersection is
//! lcm. These routines are exact and independent of the Gröbner engine,
//! which makes them a cross-check as well as a fast path.

use crate::error::Result;
use crate::exponent::ExponentVector;

/// The unique minimal generating set: drop every monomial divisible by
/// another one. Result is sorted (canonical).
pub fn minimal_monomials(mut gens: Vec<ExponentVector>) -> Vec<ExponentVector> {
    gens.sort();
    gens.dedup();
    let mut out: Vec<ExponentVector> = Vec::new();
    'outer: for (i, m) in gens.iter().enumerate() {
        for (j, d) in gens.iter().enumerate() {
            if i != j && d.divides(m) && !(d == m && j > i) {
                continue 'outer;
            }
        }
        out.push(m.clone());
    }
    out
}

/// Membership of a monomial in the ideal generated by `gens`.
pub fn contains_monomial(gens: &[ExponentVector], m: &ExponentVector) -> bool {
    gens.iter().any(|g| g.divides(m))
}

/// (I : x^g) for monomial I, generated by m / gcd(m, g).
pub fn colon_by_monomial(gens: &[ExponentVector], g: &ExponentVector) -> Vec<ExponentVector> {
    let quotients: Vec<ExponentVector> = gens
        .iter()
        .map(|m| m.checked_sub(&m.gcd(g)).expect("gcd divides"))
        .collect();
    minimal_monomials(quotients)
}

/// Intersection of two monomial ideals: pairwise lcms, pruned.
pub fn intersect(a: &[ExponentVector], b: &[ExponentVector]) -> Vec<ExponentVector> {
    let mut prods = Vec::with_capacity(a.len() * b.len());
    for m in a {
        for n in b {
            prods.push(m.lcm(n));
        }
    }
    minimal_monomials(prods)
}

/// (I : J) for monomial I and J: intersection of the per-generator colons.
pub fn colon(gens: &[ExponentVector], by: &[ExponentVector]) -> Vec<ExponentVector> {
    let mut acc: Option<Vec<ExponentVector>> = None;
    for g in by {
        let piece = colon_by_monomial(gens, g);
        acc = Some(match acc {
            None => piece,
            Some(prev) => intersect(&prev, &piece),
        });
    }
    acc.unwrap_or_default()
}

/// Frobenius bracket power: scale every generator exponent by q = p^e.
pub fn bracket_power(gens: &[ExponentVector], q: u64) -> Result<Vec<ExponentVector>> {
    gens.iter().map(|m| m.checked_scale(q)).collect()
}

/// All exponent vectors of total degree exactly `d` in `n` variables, in
/// descending lexicographic order (deterministic).
pub fn monomials_of_degree(n: usize, d: u64) -> Vec<ExponentVector> {
    let mut out = Vec::new();
    let mut current = vec![0u64; n];
    fn rec(n: usize, i: usize, remaining: u64, current: &mut Vec<u64>, out: &mut Vec<ExponentVector>) {
        if i == n - 1 {
            current[i] = remaining;
            out.push(ExponentVector::new(current.clone()));
            return;
        }
        let mut a = remaining;
        loop {
            current[i] = a;
            rec(n, i + 1, remaining - a, current, out);
            if a == 0 {
                break;
            }
            a -= 1;
        }
    }
    rec(n, 0, d, &mut current, &mut out);
    out
}

/// Number of monomials of total degree exactly `d` in the ideal.
pub fn count_members_of_degree(gens: &[ExponentVector], n: usize, d: u64) -> u64 {
    monomials_of_degree(n, d)
        .iter()
        .filter(|m| contains_monomial(gens, m))
        .count() as u64
}

/// Iterates the box 0 <= beta_i <= bound, in ascending lexicographic order.
pub fn monomials_in_box(n: usize, bound: u64) -> impl Iterator<Item = ExponentVector> {
    let mut current = vec![0u64; n];
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let item = ExponentVector::new(current.clone());
        // Odometer increment from the last coordinate.
        let mut i = n;
        loop {
            if i == 0 {
                done = true;
                break;
            }
            i -= 1;
            if current[i] < bound {
                current[i] += 1;
                for c in current.iter_mut().skip(i + 1) {
                    *c = 0;
                }
                break;
            }
        }
        Some(item)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[u64]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    #[test]
    fn minimal_generators_prune_divisible() {
        let gens = vec![ev(&[2, 0]), ev(&[2, 1]), ev(&[0, 3])];
        assert_eq!(minimal_monomials(gens), vec![ev(&[0, 3]), ev(&[2, 0])]);
    }

    #[test]
    fn colon_by_monomial_examples() {
        // (x^2 y^2) : (x y) = (x y)
        assert_eq!(
            colon_by_monomial(&[ev(&[2, 2])], &ev(&[1, 1])),
            vec![ev(&[1, 1])]
        );
        // (x^2, y^2) : x = (x, y^2)
        assert_eq!(
            colon_by_monomial(&[ev(&[2, 0]), ev(&[0, 2])], &ev(&[1, 0])),
            vec![ev(&[0, 2]), ev(&[1, 0])]
        );
    }

    #[test]
    fn colon_by_unit_is_identity() {
        let gens = vec![ev(&[2, 0]), ev(&[0, 2])];
        assert_eq!(colon(&gens, &[ev(&[0, 0])]), minimal_monomials(gens));
    }

    #[test]
    fn box_enumeration_counts() {
        assert_eq!(monomials_in_box(2, 2).count(), 9);
        assert_eq!(monomials_in_box(3, 1).count(), 8);
        let all: Vec<_> = monomials_in_box(1, 3).collect();
        assert_eq!(all, vec![ev(&[0]), ev(&[1]), ev(&[2]), ev(&[3])]);
    }

    #[test]
    fn degree_slice_enumeration() {
        assert_eq!(monomials_of_degree(2, 2).len(), 3);
        assert_eq!(monomials_of_degree(3, 4).len(), 15);
        assert_eq!(monomials_of_degree(1, 5), vec![ev(&[5])]);
    }
}
