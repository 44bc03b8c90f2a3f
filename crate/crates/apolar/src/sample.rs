//! Seeded sampling of forms, substitutions and splitting types.
//!
//! All randomized checks in the crate (the verification suites, the census,
//! the test corpora) draw from these generators so a run is reproducible from
//! a single seed.

use crate::form::{BinaryForm, LinearSubstitution};
use crate::rational::{rat_int, Rational};
use num_traits::One;
use rand::Rng;
pub use rand_chacha::ChaCha8Rng;

/// The stream every seeded computation in this crate draws from.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

/// Nonzero form with rational coefficients: numerators in
/// `[−bound, bound]`, denominators in `[1, bound]`.
pub fn rational_form(rng: &mut ChaCha8Rng, l: usize, bound: i64) -> BinaryForm {
    loop {
        let coeffs: Vec<Rational> = (0..=l)
            .map(|_| {
                Rational::new(
                    rng.random_range(-bound..=bound).into(),
                    rng.random_range(1..=bound).into(),
                )
            })
            .collect();
        if coeffs.iter().any(|c| !num_traits::Zero::is_zero(c)) {
            return BinaryForm::new(l, coeffs).unwrap();
        }
    }
}

/// Invertible substitution with small integer entries.
pub fn invertible_substitution(rng: &mut ChaCha8Rng, bound: i64) -> LinearSubstitution {
    loop {
        let g = LinearSubstitution::new(
            rat_int(rng.random_range(-bound..=bound)),
            rat_int(rng.random_range(-bound..=bound)),
            rat_int(rng.random_range(-bound..=bound)),
            rat_int(rng.random_range(-bound..=bound)),
        );
        if g.is_invertible() {
            return g;
        }
    }
}

/// Nonzero linear form with small integer coefficients.
pub fn linear_form(rng: &mut ChaCha8Rng, bound: i64) -> BinaryForm {
    loop {
        let a = rat_int(rng.random_range(-bound..=bound));
        let b = rat_int(rng.random_range(-bound..=bound));
        if !num_traits::Zero::is_zero(&a) || !num_traits::Zero::is_zero(&b) {
            return BinaryForm::linear(a, b);
        }
    }
}

/// `count` pairwise linearly independent linear forms.
pub fn independent_linear_forms(rng: &mut ChaCha8Rng, count: usize, bound: i64) -> Vec<BinaryForm> {
    let mut out: Vec<BinaryForm> = Vec::with_capacity(count);
    while out.len() < count {
        let cand = linear_form(rng, bound);
        let independent = out.iter().all(|prev| {
            // λ = aX0+bX1 stored as (b, a): independence is a determinant test
            let det = prev.coeff(1) * cand.coeff(0) - prev.coeff(0) * cand.coeff(1);
            !num_traits::Zero::is_zero(&det)
        });
        if independent {
            out.push(cand);
        }
    }
    out
}

/// A deterministic batch of structurally interesting forms of degree `l`:
/// pure powers, monomials, near-powers and a few dense forms. Used as the
/// backbone of test corpora, topped up with random forms.
pub fn canonical_forms(l: usize) -> Vec<BinaryForm> {
    let mut out = Vec::new();
    let x0 = BinaryForm::monomial(1, 1);
    let x1 = BinaryForm::monomial(1, 0);
    for k in 0..=l {
        out.push(BinaryForm::monomial(l, k));
    }
    out.push(x0.add(&x1).pow(l));
    out.push(BinaryForm::new(l, vec![Rational::one(); l + 1]).unwrap());
    if l >= 1 {
        let mut alternating = Vec::with_capacity(l + 1);
        for k in 0..=l {
            alternating.push(if k % 2 == 0 { rat_int(1) } else { rat_int(-1) });
        }
        out.push(BinaryForm::new(l, alternating).unwrap());
    }
    if l >= 2 {
        out.push(x0.pow(l - 1).multiply(&x0.add(&x1))); // X0^(l−1)(X0+X1)
        let mut sum_of_powers = BinaryForm::monomial(l, l).add(&BinaryForm::monomial(l, 0));
        out.push(sum_of_powers.clone()); // X0^l + X1^l
        sum_of_powers = sum_of_powers.add(&x0.add(&x1).pow(l));
        out.push(sum_of_powers); // X0^l + X1^l + (X0+X1)^l
    }
    if l >= 3 {
        out.push(x0.pow(l - 2).multiply(&x1).multiply(&x0.add(&x1))); // X0^(l−2)X1(X0+X1)
    }
    out
}

/// One-variable convenience re-export of the census sampler.
pub use crate::moduli::random_integer_form as integer_form;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samplers_are_deterministic() {
        let mut a = seeded_rng(5);
        let mut b = seeded_rng(5);
        assert_eq!(rational_form(&mut a, 4, 6), rational_form(&mut b, 4, 6));
        assert_eq!(
            invertible_substitution(&mut a, 3),
            invertible_substitution(&mut b, 3)
        );
    }

    #[test]
    fn independent_forms_are_independent() {
        let mut rng = seeded_rng(9);
        let forms = independent_linear_forms(&mut rng, 3, 4);
        for i in 0..3 {
            for j in (i + 1)..3 {
                let det =
                    forms[i].coeff(1) * forms[j].coeff(0) - forms[i].coeff(0) * forms[j].coeff(1);
                assert!(!num_traits::Zero::is_zero(&det));
            }
        }
    }

    #[test]
    fn canonical_batch_is_nonempty_and_nonzero() {
        for l in 1..=8 {
            let batch = canonical_forms(l);
            assert!(batch.len() >= l + 4);
            assert!(batch.iter().all(|p| !p.is_zero() && p.degree() == l));
        }
    }
}
