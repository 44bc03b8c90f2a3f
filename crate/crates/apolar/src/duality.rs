//! The pairing between degree-`l` forms and linear functionals on them, the
//! transpose of multiplication maps, and cokernel dimensions.
//!
//! A [`DualVector`] of degree `l` stores the values of a linear functional on
//! the monomial basis: `values[s] = Φ(X0^s X1^(l−s))`. Identifying a form `p`
//! with the constant-coefficient differential operator `p(∂/∂X0, ∂/∂X1)`
//! gives a functional whose monomial values carry factorial weights; the
//! weights live entirely inside [`BinaryForm::to_dual`] and
//! [`DualVector::to_form`], so the transpose-multiplication rule on stored
//! values is a weight-free index shift.
//!
//! The central executable identity: contracting `p` by `q` and pairing equals
//! multiplying by `q` and transposing. [`duality_holds`] checks it and is
//! expected to return `true` for every input pair.

use crate::apolarity::{catalecticant, ApolarityError};
use crate::form::BinaryForm;
use crate::rational::{factorial, Rational};
use num_traits::Zero;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DualityError {
    #[error("multiplier degree {multiplier} exceeds functional degree {functional}")]
    DegreeTooHigh {
        multiplier: usize,
        functional: usize,
    },
}

/// Linear functional on the degree-`l` forms, stored by its values on the
/// monomial basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualVector {
    degree: usize,
    values: Vec<Rational>,
}

impl DualVector {
    /// Build from monomial values; `values[s] = Φ(X0^s X1^(degree−s))`.
    pub fn new(degree: usize, values: Vec<Rational>) -> Self {
        assert_eq!(
            values.len(),
            degree + 1,
            "a degree-{degree} functional needs {} values",
            degree + 1
        );
        DualVector { degree, values }
    }

    pub fn zero(degree: usize) -> Self {
        DualVector {
            degree,
            values: vec![Rational::zero(); degree + 1],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            self.degree, other.degree,
            "cannot add functionals of different degrees"
        );
        DualVector {
            degree: self.degree,
            values: self
                .values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        DualVector {
            degree: self.degree,
            values: self.values.iter().map(|v| v * c).collect(),
        }
    }

    /// The form whose differential operator induces this functional:
    /// `coeffs[s] = values[s] / (s!(l−s)!)`.
    pub fn to_form(&self) -> BinaryForm {
        let l = self.degree;
        let coeffs = self
            .values
            .iter()
            .enumerate()
            .map(|(s, v)| v / Rational::from_integer(factorial(s) * factorial(l - s)))
            .collect();
        BinaryForm::new(l, coeffs).expect("length preserved")
    }
}

impl BinaryForm {
    /// The functional induced by `p` acting as the differential operator
    /// `p(∂/∂X0, ∂/∂X1)` on degree-`l` forms: `values[s] = s!(l−s)!·coeffs[s]`.
    pub fn to_dual(&self) -> DualVector {
        let l = self.degree();
        let values = self
            .coeffs()
            .iter()
            .enumerate()
            .map(|(s, c)| c * Rational::from_integer(factorial(s) * factorial(l - s)))
            .collect();
        DualVector::new(l, values)
    }
}

/// Transpose of multiplication by `q`: the functional
/// `R ↦ phi(q·R)` on forms of degree `l − deg q`.
///
/// On stored values this is the convolution-shift
/// `out[s] = Σ_k q_k · phi[s+k]`.
pub fn transpose_mult(q: &BinaryForm, phi: &DualVector) -> Result<DualVector, DualityError> {
    let d = q.degree();
    let l = phi.degree();
    if d > l {
        return Err(DualityError::DegreeTooHigh {
            multiplier: d,
            functional: l,
        });
    }
    let values = (0..=l - d)
        .map(|s| {
            let mut acc = Rational::zero();
            for (k, qc) in q.coeffs().iter().enumerate() {
                if !qc.is_zero() {
                    acc += qc * &phi.values[s + k];
                }
            }
            acc
        })
        .collect();
    Ok(DualVector::new(l - d, values))
}

/// Check the duality identity for one pair: transposing multiplication by `q`
/// on the functional of `p` must agree with the functional of the contraction
/// `q • p`. Expected to hold for every pair with `deg q ≤ deg p`.
pub fn duality_holds(p: &BinaryForm, q: &BinaryForm) -> Result<bool, DualityError> {
    if q.degree() > p.degree() {
        return Err(DualityError::DegreeTooHigh {
            multiplier: q.degree(),
            functional: p.degree(),
        });
    }
    let via_transpose = transpose_mult(q, &p.to_dual())?;
    let via_contraction = crate::form::apolar_apply(q, p)
        .expect("degree checked above")
        .to_dual();
    Ok(via_transpose == via_contraction)
}

/// Dimension of the cokernel of `Q ↦ Q • P` from source degree `d`,
/// computed by brute force as `(l−d+1) − rank` of the catalecticant.
///
/// Always equals `l − 2d + dim Ann(P)_d`, and the closed form
/// [`cokernel_dim_from_crank`]; debug builds assert the latter.
pub fn cokernel_dim(p: &BinaryForm, d: usize) -> Result<usize, ApolarityError> {
    let cat = catalecticant(p, d)?;
    let dim = cat.matrix.rows() - cat.matrix.rank();
    #[cfg(debug_assertions)]
    {
        let crank = crate::apolarity::cactus_rank(p)?;
        debug_assert_eq!(dim, cokernel_dim_from_crank(p.degree(), d, crank));
    }
    Ok(dim)
}

/// Closed form: the cokernel dimension depends only on `d` and the cactus rank.
pub fn cokernel_dim_from_crank(l: usize, d: usize, crank: usize) -> usize {
    if d + crank >= l + 2 {
        0
    } else if d >= crank {
        l - d + 1 - crank
    } else {
        l - 2 * d
    }
}

/// Which branch of the closed form applies; used for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CokernelBranch {
    /// `d ≥ l+2−crank`: the fiber vanishes.
    Upper,
    /// `crank ≤ d < l+2−crank`: dimension `l−d+1−crank`.
    Middle,
    /// `d < crank`: dimension `l−2d`, independent of the form.
    Lower,
}

impl CokernelBranch {
    pub fn classify(l: usize, d: usize, crank: usize) -> Self {
        if d + crank >= l + 2 {
            CokernelBranch::Upper
        } else if d >= crank {
            CokernelBranch::Middle
        } else {
            CokernelBranch::Lower
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            CokernelBranch::Upper => "upper",
            CokernelBranch::Middle => "middle",
            CokernelBranch::Lower => "lower",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn dual_of_operator_monomial() {
        // p = δ0^2 as coefficients (0,0,1): values (0, 0, 2!·0!) = (0, 0, 2)
        let p = BinaryForm::monomial(2, 2);
        assert_eq!(p.to_dual().values(), &[rat_int(0), rat_int(0), rat_int(2)]);
        // p = δ0 + δ1: values (1, 1)
        let p = BinaryForm::from_integers(1, &[1, 1]).unwrap();
        assert_eq!(p.to_dual().values(), &[rat_int(1), rat_int(1)]);
        assert!(BinaryForm::zero(3).to_dual().is_zero());
    }

    #[test]
    fn dual_inverse_examples() {
        // unit vector at s = 0, l = 3 gives (1/6)·δ1^3
        let phi = DualVector::new(3, vec![rat_int(1), rat_int(0), rat_int(0), rat_int(0)]);
        let p = phi.to_form();
        assert_eq!(p.coeff(0), &rat(1, 6));
        assert!(p.coeffs()[1..].iter().all(num_traits::Zero::is_zero));
        assert!(DualVector::zero(4).to_form().is_zero());
    }

    #[test]
    fn transpose_mult_shift_rule() {
        // q = 1 leaves the functional unchanged
        let one = BinaryForm::from_integers(0, &[1]).unwrap();
        let phi = DualVector::new(2, vec![rat_int(3), rat_int(-1), rat_int(4)]);
        assert_eq!(transpose_mult(&one, &phi).unwrap(), phi);

        // q = X0 shifts the index: out[s] = phi[s+1]
        let q = BinaryForm::monomial(1, 1);
        let shifted = transpose_mult(&q, &phi).unwrap();
        assert_eq!(shifted.values(), &[rat_int(-1), rat_int(4)]);

        // degree error
        let q = BinaryForm::monomial(3, 1);
        assert!(transpose_mult(&q, &phi).is_err());
    }

    #[test]
    fn duality_rejects_degree_mismatch() {
        let p = BinaryForm::monomial(2, 1);
        let q = BinaryForm::monomial(3, 1);
        assert_eq!(
            duality_holds(&p, &q),
            Err(DualityError::DegreeTooHigh {
                multiplier: 3,
                functional: 2
            })
        );
    }

    #[test]
    fn duality_on_monomial_pairs() {
        for l in 0..=6usize {
            for d in 0..=l {
                for s in 0..=l {
                    for k in 0..=d {
                        let p = BinaryForm::monomial(l, s);
                        let q = BinaryForm::monomial(d, k);
                        assert!(
                            duality_holds(&p, &q).unwrap(),
                            "monomials l={l} d={d} s={s} k={k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn cokernel_dims() {
        // X0^l has cactus rank 1: dimension l−d for every d ≥ 1
        let l = 6;
        let p = BinaryForm::monomial(l, l);
        for d in 1..=l {
            assert_eq!(cokernel_dim(&p, d).unwrap(), l - d);
        }
        assert_eq!(cokernel_dim(&p, 0).unwrap(), l);

        // generic degree-6 form (cactus rank 4): at d = 1 the dimension is l−2d = 4
        let p = BinaryForm::from_integers(6, &[1, 2, -1, 3, 0, 1, 2]).unwrap();
        assert_eq!(crate::apolarity::cactus_rank(&p).unwrap(), 4);
        assert_eq!(cokernel_dim(&p, 1).unwrap(), 4);
        // d = l lands in the vanishing branch for crank ≥ 2
        assert_eq!(cokernel_dim(&p, l).unwrap(), 0);
    }

    #[test]
    fn branch_classification() {
        assert_eq!(CokernelBranch::classify(6, 1, 4), CokernelBranch::Lower);
        assert_eq!(CokernelBranch::classify(6, 4, 4), CokernelBranch::Upper);
        assert_eq!(CokernelBranch::classify(6, 3, 2), CokernelBranch::Middle);
        assert_eq!(CokernelBranch::classify(4, 3, 1), CokernelBranch::Middle);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        prop_compose! {
            fn form(max_degree: usize)
                (degree in 0..=max_degree)
                (coeffs in proptest::collection::vec((-7i64..=7, 1i64..=5), degree + 1), degree in Just(degree))
                -> BinaryForm
            {
                let coeffs = coeffs.into_iter().map(|(n, d)| rat(n, d)).collect();
                BinaryForm::new(degree, coeffs).unwrap()
            }
        }

        proptest! {
            #[test]
            fn duality_identity(p in form(8), q in form(8)) {
                prop_assume!(q.degree() <= p.degree());
                prop_assert!(duality_holds(&p, &q).unwrap());
            }

            #[test]
            fn dual_round_trip(p in form(8)) {
                prop_assert_eq!(p.to_dual().to_form(), p);
            }

            #[test]
            fn transpose_mult_functorial(q1 in form(3), q2 in form(3), p in form(8)) {
                prop_assume!(q1.degree() + q2.degree() <= p.degree());
                let phi = p.to_dual();
                let lhs = transpose_mult(&q1.multiply(&q2), &phi).unwrap();
                let rhs = transpose_mult(&q2, &transpose_mult(&q1, &phi).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn transpose_mult_is_the_adjoint(q in form(4), p in form(8)) {
                // defining relation: (ᵗm_q φ)(R) = φ(q·R) on every monomial R
                prop_assume!(q.degree() <= p.degree());
                let phi = p.to_dual();
                let moved = transpose_mult(&q, &phi).unwrap();
                let out_degree = p.degree() - q.degree();
                for s in 0..=out_degree {
                    let qr = q.multiply(&BinaryForm::monomial(out_degree, s));
                    let direct: Rational =
                        qr.coeffs().iter().zip(phi.values()).map(|(a, b)| a * b).sum();
                    prop_assert_eq!(moved.values()[s].clone(), direct);
                }
            }
        }
    }
}
