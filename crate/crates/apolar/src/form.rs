//! Binary forms: homogeneous polynomials in two variables with exact rational
//! coefficients.
//!
//! The coefficient convention used everywhere in this crate: a form of degree
//! `l` stores `l+1` coefficients and `coeffs[k]` is the coefficient of
//! `X0^k · X1^(l−k)`. The zero form of each degree is representable; its
//! nominal degree is carried explicitly so graded maps can produce zero
//! vectors in the right graded piece.

use crate::rational::{falling_factorial, primitive_normalize, Rational};
use num_traits::{One, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormError {
    #[error("coefficient vector has length {found}, expected {expected}")]
    CoefficientLength { found: usize, expected: usize },
    #[error("the zero form is not allowed here")]
    ZeroForm,
    #[error("operator degree {operator} exceeds form degree {form}")]
    DegreeTooHigh { operator: usize, form: usize },
    #[error("substitution matrix is singular")]
    SingularSubstitution,
}

/// Homogeneous polynomial in `X0`, `X1` of a fixed degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    degree: usize,
    coeffs: Vec<Rational>,
}

impl BinaryForm {
    /// Build a form of the given degree; `coeffs[k]` multiplies `X0^k X1^(degree−k)`.
    pub fn new(degree: usize, coeffs: Vec<Rational>) -> Result<Self, FormError> {
        if coeffs.len() != degree + 1 {
            return Err(FormError::CoefficientLength {
                found: coeffs.len(),
                expected: degree + 1,
            });
        }
        Ok(BinaryForm { degree, coeffs })
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm {
            degree,
            coeffs: vec![Rational::zero(); degree + 1],
        }
    }

    /// The monomial `X0^k X1^(degree−k)`.
    pub fn monomial(degree: usize, k: usize) -> Self {
        assert!(k <= degree, "monomial exponent {k} exceeds degree {degree}");
        let mut f = Self::zero(degree);
        f.coeffs[k] = Rational::one();
        f
    }

    /// The linear form `a·X0 + b·X1`.
    pub fn linear(a: Rational, b: Rational) -> Self {
        BinaryForm {
            degree: 1,
            coeffs: vec![b, a],
        }
    }

    /// Convenience constructor from small integers.
    pub fn from_integers(degree: usize, coeffs: &[i64]) -> Result<Self, FormError> {
        Self::new(
            degree,
            coeffs
                .iter()
                .map(|&c| crate::rational::rat_int(c))
                .collect(),
        )
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `X0^k X1^(degree−k)`.
    pub fn coeff(&self, k: usize) -> &Rational {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        BinaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// Sum of two forms of equal degree. Panics on degree mismatch: forms of
    /// different degrees live in different graded pieces and cannot be added.
    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(
            self.degree, other.degree,
            "cannot add forms of degrees {} and {}",
            self.degree, other.degree
        );
        BinaryForm {
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Product of two forms; degrees add; coefficients are the exact convolution.
    pub fn multiply(&self, other: &Self) -> Self {
        let degree = self.degree + other.degree;
        let mut coeffs = vec![Rational::zero(); degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        BinaryForm { degree, coeffs }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut acc = BinaryForm::new(0, vec![Rational::one()]).unwrap();
        for _ in 0..e {
            acc = acc.multiply(self);
        }
        acc
    }

    /// Integer-primitive representative with positive leading (highest
    /// `X0`-exponent) coefficient. The zero form is unchanged.
    pub fn primitive(&self) -> Self {
        BinaryForm {
            degree: self.degree,
            coeffs: primitive_normalize(&self.coeffs),
        }
    }

    /// Apply an invertible substitution: returns `P(a·X0+b·X1, c·X0+d·X1)`.
    pub fn substitute(&self, g: &LinearSubstitution) -> Result<Self, FormError> {
        if !g.is_invertible() {
            return Err(FormError::SingularSubstitution);
        }
        let u = BinaryForm::linear(g.a.clone(), g.b.clone());
        let v = BinaryForm::linear(g.c.clone(), g.d.clone());
        let mut acc = BinaryForm::zero(self.degree);
        for (k, coeff) in self.coeffs.iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let term = u.pow(k).multiply(&v.pow(self.degree - k));
            acc = acc.add(&term.scale(coeff));
        }
        Ok(acc)
    }

    /// Multiplicity of the `X1` factor, i.e. the order of vanishing at the
    /// point `X1 = 0`. For the zero form this is `degree + 1` by convention.
    pub fn x1_multiplicity(&self) -> usize {
        match self.coeffs.iter().rposition(|c| !c.is_zero()) {
            Some(top) => self.degree - top,
            None => self.degree + 1,
        }
    }

    /// Dehomogenization `p(x, 1)` as dense univariate coefficients
    /// (`out[i]` multiplies `x^i`), with trailing zeros trimmed.
    pub fn dehomogenize(&self) -> Vec<Rational> {
        let mut out = self.coeffs.clone();
        while out.last().is_some_and(Zero::is_zero) {
            out.pop();
        }
        out
    }

    /// True iff the form has no repeated linear factor over the complex
    /// numbers. Decided exactly over the rationals: the root at `X1 = 0` must
    /// be simple or absent, and `gcd(f, f')` must be constant for
    /// `f(x) = p(x, 1)`.
    pub fn is_squarefree(&self) -> Result<bool, FormError> {
        if self.is_zero() {
            return Err(FormError::ZeroForm);
        }
        if self.x1_multiplicity() > 1 {
            return Ok(false);
        }
        let f = self.dehomogenize();
        let df = univariate::derivative(&f);
        Ok(univariate::gcd(&f, &df).len() <= 1)
    }

    /// Number of distinct projective roots, computed by gcd arithmetic only.
    pub fn distinct_root_count(&self) -> Result<usize, FormError> {
        if self.is_zero() {
            return Err(FormError::ZeroForm);
        }
        let at_infinity = usize::from(self.x1_multiplicity() > 0);
        let f = self.dehomogenize();
        if f.len() <= 1 {
            return Ok(at_infinity);
        }
        let g = univariate::gcd(&f, &univariate::derivative(&f));
        // deg(f / gcd(f, f')) = number of distinct finite roots
        Ok(at_infinity + (f.len() - g.len()))
    }
}

/// Contraction of `p` by the degree-`d` operator `q`: each monomial
/// `ξ0^a ξ1^b` of `q` acts as `∂^(a+b)/∂X0^a ∂X1^b`, extended bilinearly.
/// Requires `deg q ≤ deg p`; the result has degree `deg p − deg q`.
pub fn apolar_apply(q: &BinaryForm, p: &BinaryForm) -> Result<BinaryForm, FormError> {
    let d = q.degree;
    let l = p.degree;
    if d > l {
        return Err(FormError::DegreeTooHigh {
            operator: d,
            form: l,
        });
    }
    let mut coeffs = vec![Rational::zero(); l - d + 1];
    for (s, out) in coeffs.iter_mut().enumerate() {
        // contribution to X0^s X1^(l−d−s): operator monomial j hits p-coefficient s+j
        for (j, qc) in q.coeffs.iter().enumerate() {
            if qc.is_zero() {
                continue;
            }
            let pc = &p.coeffs[s + j];
            if pc.is_zero() {
                continue;
            }
            let w = falling_factorial(s + j, j) * falling_factorial(l - s - j, d - j);
            *out += qc * pc * Rational::from_integer(w);
        }
    }
    BinaryForm::new(l - d, coeffs)
}

/// Greatest common divisor of two binary forms, content-normalized
/// (integer-primitive, leading coefficient positive). Degree 0 exactly when
/// the forms share no projective zero. Errors when both forms are zero.
pub fn gcd_forms(p: &BinaryForm, q: &BinaryForm) -> Result<BinaryForm, FormError> {
    if p.is_zero() && q.is_zero() {
        return Err(FormError::ZeroForm);
    }
    if p.is_zero() {
        return Ok(q.primitive());
    }
    if q.is_zero() {
        return Ok(p.primitive());
    }
    let e = p.x1_multiplicity().min(q.x1_multiplicity());
    let h = univariate::gcd(&p.dehomogenize(), &q.dehomogenize());
    // homogenize h to its own degree, then restore the common X1 factor
    let hdeg = h.len() - 1;
    let mut coeffs = vec![Rational::zero(); hdeg + e + 1];
    coeffs[..=hdeg].clone_from_slice(&h);
    Ok(BinaryForm::new(hdeg + e, coeffs)?.primitive())
}

/// Element of GL₂ acting on forms by substitution of variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSubstitution {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
}

impl LinearSubstitution {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        LinearSubstitution { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::new(
            Rational::one(),
            Rational::zero(),
            Rational::zero(),
            Rational::one(),
        )
    }

    pub fn determinant(&self) -> Rational {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn is_invertible(&self) -> bool {
        !self.determinant().is_zero()
    }

    /// Matrix product `self · other`; substitution is a right action, so
    /// `p.substitute(g).substitute(h) == p.substitute(g.compose(h))`.
    pub fn compose(&self, other: &Self) -> Self {
        LinearSubstitution {
            a: &self.a * &other.a + &self.b * &other.c,
            b: &self.a * &other.b + &self.b * &other.d,
            c: &self.c * &other.a + &self.d * &other.c,
            d: &self.c * &other.b + &self.d * &other.d,
        }
    }
}

/// Dense univariate polynomial helpers over the rationals, used for the
/// squarefreeness and gcd computations. Polynomials are coefficient vectors
/// in ascending degree with no trailing zeros (the zero polynomial is empty).
pub(crate) mod univariate {
    use super::Rational;
    use num_traits::Zero;

    pub fn trim(mut f: Vec<Rational>) -> Vec<Rational> {
        while f.last().is_some_and(Zero::is_zero) {
            f.pop();
        }
        f
    }

    pub fn derivative(f: &[Rational]) -> Vec<Rational> {
        let mut out = Vec::with_capacity(f.len().saturating_sub(1));
        for (i, c) in f.iter().enumerate().skip(1) {
            out.push(c * Rational::from_integer(i.into()));
        }
        trim(out)
    }

    fn make_monic(mut f: Vec<Rational>) -> Vec<Rational> {
        if let Some(lead) = f.last().cloned() {
            for c in &mut f {
                *c = &*c / &lead;
            }
        }
        f
    }

    /// Euclidean remainder of `f` by nonzero `g`.
    fn rem(f: &[Rational], g: &[Rational]) -> Vec<Rational> {
        let mut r = f.to_vec();
        let glead = g.last().expect("division by zero polynomial");
        while r.len() >= g.len() && !r.is_empty() {
            let shift = r.len() - g.len();
            let factor = r.last().unwrap() / glead;
            for (i, gc) in g.iter().enumerate() {
                let v = &r[shift + i] - &factor * gc;
                r[shift + i] = v;
            }
            // the leading term cancels exactly, so this strictly shrinks r
            r = trim(r);
        }
        r
    }

    /// Monic gcd; `gcd(f, 0) = monic(f)`. Result length 1 means coprime,
    /// empty means both inputs were zero.
    pub fn gcd(f: &[Rational], g: &[Rational]) -> Vec<Rational> {
        let mut a = trim(f.to_vec());
        let mut b = trim(g.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b);
            a = b;
            b = r;
        }
        make_monic(a)
    }
}

impl fmt::Display for BinaryForm {
    /// Human-readable expression, e.g. `2*X0^2*X1 - 1/3*X1^3`. Parseable back
    /// by the expression parser for nonzero forms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..=self.degree).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let abs = if c < &Rational::zero() {
                -c.clone()
            } else {
                c.clone()
            };
            if first {
                if c < &Rational::zero() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < &Rational::zero() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut parts: Vec<String> = Vec::new();
            let e1 = self.degree - k;
            if !abs.is_one() || (k == 0 && e1 == 0) {
                parts.push(crate::rational::render_rational(&abs));
            }
            if k > 0 {
                parts.push(if k == 1 {
                    "X0".into()
                } else {
                    format!("X0^{k}")
                });
            }
            if e1 > 0 {
                parts.push(if e1 == 1 {
                    "X1".into()
                } else {
                    format!("X1^{e1}")
                });
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}
