//! Apolar ideals of binary forms: catalecticant matrices, graded dimensions
//! of the annihilator, the two coprime generators, and the Waring and cactus
//! ranks.
//!
//! For a nonzero form `P` of degree `l`, the annihilator
//! `Ann(P) = { Q : Q • P = 0 }` is generated by two coprime homogeneous
//! forms `G1`, `G2` with `deg G1 + deg G2 = l + 2` and `deg G1 ≤ deg G2`.
//! Writing `d1 = deg G1`, the cactus rank of `P` equals `d1`, and the Waring
//! rank equals `d1` when the degree-`d1` piece of the ideal contains a
//! squarefree form and `d2` otherwise. All of this is computed here by exact
//! kernel calculations, with the closed dimension formulas cross-checked in
//! debug builds.

use crate::form::{apolar_apply, BinaryForm};
use crate::linalg::RationalMatrix;
use crate::rational::rat_int;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ApolarityError {
    #[error("the zero form has no apolar profile")]
    ZeroForm,
    #[error("degree {degree} out of range for a form of degree {form_degree}")]
    DegreeOutOfRange { degree: usize, form_degree: usize },
}

/// Matrix of the contraction map `Q ↦ Q • P` on a fixed source degree.
///
/// Column `j` holds the coefficients of `(ξ0^j ξ1^(d−j)) • P`; the matrix has
/// shape `(l−d+1) × (d+1)`.
#[derive(Debug, Clone)]
pub struct Catalecticant {
    pub source_degree: usize,
    pub target_degree: usize,
    pub matrix: RationalMatrix,
}

/// The Sylvester data of a form: generator degrees, generators, and ranks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApolarProfile {
    pub d1: usize,
    pub d2: usize,
    /// Generator of minimal degree `d1`, integer-primitive with positive
    /// leading coefficient.
    pub g1: BinaryForm,
    /// Second generator, of degree `d2`, chosen deterministically from the
    /// echelon kernel basis; coprime to `g1`.
    pub g2: BinaryForm,
    pub waring_rank: usize,
    pub cactus_rank: usize,
    /// Set when `d1 == d2` (even degree, two-dimensional minimal piece); the
    /// generator pair is then the echelon basis of a pencil and neither
    /// element is privileged.
    pub equal_degrees: bool,
}

/// Matrix of `Q ↦ Q • P` for any source degree `d ≥ 0`, including `d > l`
/// where the target space is zero and the matrix has no rows.
fn contraction_matrix(p: &BinaryForm, d: usize) -> RationalMatrix {
    let l = p.degree();
    let rows = if d <= l { l - d + 1 } else { 0 };
    let mut m = RationalMatrix::zero(rows, d + 1);
    if rows == 0 {
        return m;
    }
    for j in 0..=d {
        let image = apolar_apply(&BinaryForm::monomial(d, j), p).expect("degree checked");
        for (s, c) in image.coeffs().iter().enumerate() {
            m.set(s, j, c.clone());
        }
    }
    m
}

/// Kernel of the contraction map at source degree `d`, as forms in the dual
/// variables, in echelon order.
fn annihilator_kernel(p: &BinaryForm, d: usize) -> Vec<BinaryForm> {
    contraction_matrix(p, d)
        .kernel_basis()
        .into_iter()
        .map(|v| BinaryForm::new(d, v).expect("kernel vector length d+1"))
        .collect()
}

pub fn catalecticant(p: &BinaryForm, d: usize) -> Result<Catalecticant, ApolarityError> {
    if p.is_zero() {
        return Err(ApolarityError::ZeroForm);
    }
    let l = p.degree();
    if d > l {
        return Err(ApolarityError::DegreeOutOfRange {
            degree: d,
            form_degree: l,
        });
    }
    Ok(Catalecticant {
        source_degree: d,
        target_degree: l - d,
        matrix: contraction_matrix(p, d),
    })
}

/// Dimension of the degree-`d` piece of the annihilator, by kernel count.
///
/// In debug builds the value is cross-checked against the closed form derived
/// from the generator degrees.
pub fn ann_dim(p: &BinaryForm, d: usize) -> Result<usize, ApolarityError> {
    let cat = catalecticant(p, d)?;
    let dim = cat.matrix.cols() - cat.matrix.rank();
    #[cfg(debug_assertions)]
    {
        let profile = sylvester_generators(p)?;
        debug_assert_eq!(
            dim,
            ann_dim_from_degrees(p.degree(), d, profile.d1, profile.d2),
            "kernel dimension disagrees with the closed form"
        );
    }
    Ok(dim)
}

/// Closed form for `dim Ann(P)_d` in terms of the generator degrees.
pub fn ann_dim_from_degrees(l: usize, d: usize, d1: usize, d2: usize) -> usize {
    if d >= d2 && d <= l {
        2 * d - l
    } else if d >= d1 && d < d2 {
        d + 1 - d1
    } else {
        0
    }
}

/// Compute the full Sylvester profile of a nonzero form.
pub fn sylvester_generators(p: &BinaryForm) -> Result<ApolarProfile, ApolarityError> {
    if p.is_zero() {
        return Err(ApolarityError::ZeroForm);
    }
    let l = p.degree();
    let max_d1 = (l + 2) / 2;
    let (d1, kernel) = (1..=max_d1)
        .map(|d| (d, annihilator_kernel(p, d)))
        .find(|(_, k)| !k.is_empty())
        .expect("a nonzero form has an apolar form of degree at most (l+2)/2");
    let d2 = l + 2 - d1;

    let profile = if d1 == d2 {
        assert_eq!(
            kernel.len(),
            2,
            "minimal piece of a balanced ideal is a pencil"
        );
        let g1 = kernel[0].primitive();
        let g2 = kernel[1].primitive();
        // The structure theorem guarantees the pencil contains a squarefree
        // form; locate one to validate the data. The rank is d1 either way.
        let found = squarefree_in_pencil(&g1, &g2);
        assert!(
            found.is_some(),
            "pencil of minimal apolar forms contains no squarefree element"
        );
        ApolarProfile {
            d1,
            d2,
            g1,
            g2,
            waring_rank: d1,
            cactus_rank: d1,
            equal_degrees: true,
        }
    } else {
        assert_eq!(
            kernel.len(),
            1,
            "minimal piece below the balanced degree is a line"
        );
        let g1 = kernel[0].primitive();
        let g2 = second_generator(p, &g1, d2).primitive();
        let waring_rank = if g1.is_squarefree().expect("g1 nonzero") {
            d1
        } else {
            d2
        };
        ApolarProfile {
            d1,
            d2,
            g1,
            g2,
            waring_rank,
            cactus_rank: d1,
            equal_degrees: false,
        }
    };

    #[cfg(debug_assertions)]
    validate_profile(p, &profile);
    Ok(profile)
}

/// First echelon kernel vector at degree `d2` that is independent of the
/// multiples of `g1`. Any such element is automatically coprime to `g1`.
fn second_generator(p: &BinaryForm, g1: &BinaryForm, d2: usize) -> BinaryForm {
    let l = p.degree();
    let basis = if d2 <= l {
        annihilator_kernel(p, d2)
    } else {
        // d2 = l+1: the whole space annihilates, the echelon basis is the
        // monomial basis
        (0..=d2).map(|j| BinaryForm::monomial(d2, j)).collect()
    };
    let shift = d2 - g1.degree();
    let multiples: Vec<Vec<crate::rational::Rational>> = (0..=shift)
        .map(|j| {
            g1.multiply(&BinaryForm::monomial(shift, j))
                .coeffs()
                .to_vec()
        })
        .collect();
    for candidate in &basis {
        let inside = crate::linalg::solve_membership(candidate.coeffs(), &multiples)
            .expect("equal lengths by construction");
        if inside.is_none() {
            return candidate.clone();
        }
    }
    unreachable!("annihilator at degree d2 is strictly larger than the multiples of g1")
}

/// Search the pencil `g1 + t·g2` (plus the two endpoints) for a squarefree
/// member. The scan covers `t = 1, …, d1·d2 + 1`, enough to hit a nonzero of
/// the discriminant polynomial whenever one exists.
fn squarefree_in_pencil(g1: &BinaryForm, g2: &BinaryForm) -> Option<BinaryForm> {
    if g1.is_squarefree().unwrap_or(false) {
        return Some(g1.clone());
    }
    if g2.is_squarefree().unwrap_or(false) {
        return Some(g2.clone());
    }
    let bound = g1.degree() * g2.degree() + 1;
    for t in 1..=bound as i64 {
        let candidate = g1.add(&g2.scale(&rat_int(t)));
        if !candidate.is_zero() && candidate.is_squarefree().unwrap_or(false) {
            return Some(candidate);
        }
    }
    None
}

#[cfg(debug_assertions)]
fn validate_profile(p: &BinaryForm, profile: &ApolarProfile) {
    let l = p.degree();
    debug_assert_eq!(profile.d1 + profile.d2, l + 2);
    debug_assert!(profile.d1 <= profile.d2);
    debug_assert!(apolar_apply(&profile.g1, p)
        .map(|r| r.is_zero())
        .unwrap_or(true));
    debug_assert!(apolar_apply(&profile.g2, p)
        .map(|r| r.is_zero())
        .unwrap_or(true));
    debug_assert_eq!(
        crate::form::gcd_forms(&profile.g1, &profile.g2)
            .expect("nonzero")
            .degree(),
        0
    );
    debug_assert!(profile.cactus_rank >= 1 && profile.cactus_rank <= (l + 2) / 2);
}

/// Minimal number of powers of linear forms summing to `p`.
pub fn waring_rank(p: &BinaryForm) -> Result<usize, ApolarityError> {
    Ok(sylvester_generators(p)?.waring_rank)
}

/// Minimal length of a zero-dimensional subscheme apolar to `p`; equals the
/// minimal degree of a nonzero apolar form.
pub fn cactus_rank(p: &BinaryForm) -> Result<usize, ApolarityError> {
    Ok(sylvester_generators(p)?.cactus_rank)
}

/// True iff `p` is a power of a single linear form (equivalently, some linear
/// form annihilates it).
pub fn is_power(p: &BinaryForm) -> Result<bool, ApolarityError> {
    if p.is_zero() {
        return Err(ApolarityError::ZeroForm);
    }
    if p.degree() == 0 {
        return Ok(true);
    }
    Ok(!annihilator_kernel(p, 1).is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::{gcd_forms, LinearSubstitution};

    fn x0() -> BinaryForm {
        BinaryForm::monomial(1, 1)
    }

    fn x1() -> BinaryForm {
        BinaryForm::monomial(1, 0)
    }

    fn x0m_x1n(m: usize, n: usize) -> BinaryForm {
        BinaryForm::monomial(m + n, m)
    }

    #[test]
    fn catalecticant_hand_expansions() {
        // p = X0^2, d = 1: column 0 is ξ1•X0^2 = 0, column 1 is ξ0•X0^2 = 2X0
        let cat = catalecticant(&BinaryForm::monomial(2, 2), 1).unwrap();
        assert_eq!((cat.matrix.rows(), cat.matrix.cols()), (2, 2));
        assert_eq!(*cat.matrix.entry(1, 1), rat_int(2));
        assert_eq!(*cat.matrix.entry(0, 0), rat_int(0));
        assert_eq!(*cat.matrix.entry(0, 1), rat_int(0));
        assert_eq!(*cat.matrix.entry(1, 0), rat_int(0));

        // p = X0·X1, d = 1: columns X1 and X0, full rank
        let cat = catalecticant(&x0().multiply(&x1()), 1).unwrap();
        assert_eq!(cat.matrix.rank(), 2);

        // d = 0: single column equal to the coefficients of p
        let p = BinaryForm::from_integers(3, &[1, -2, 0, 5]).unwrap();
        let cat = catalecticant(&p, 0).unwrap();
        assert_eq!(cat.matrix.cols(), 1);
        for (s, c) in p.coeffs().iter().enumerate() {
            assert_eq!(cat.matrix.entry(s, 0), c);
        }

        assert!(catalecticant(&BinaryForm::zero(2), 1).is_err());
        assert!(catalecticant(&p, 4).is_err());
    }

    #[test]
    fn ann_dims_of_monomials() {
        let p = x0m_x1n(2, 3);
        assert_eq!(ann_dim(&p, 2).unwrap(), 0);
        assert_eq!(ann_dim(&p, 3).unwrap(), 1);
        // X0^l, d = 1: kernel spanned by ξ1
        let p = BinaryForm::monomial(4, 4);
        assert_eq!(ann_dim(&p, 1).unwrap(), 1);
        let kernel = annihilator_kernel(&p, 1);
        assert_eq!(kernel[0], BinaryForm::monomial(1, 0));
    }

    #[test]
    fn monomial_profiles() {
        let profile = sylvester_generators(&x0m_x1n(2, 3)).unwrap();
        assert_eq!((profile.d1, profile.d2), (3, 4));
        assert_eq!(profile.g1, BinaryForm::monomial(3, 3)); // ξ0^3
        assert_eq!(profile.g2, BinaryForm::monomial(4, 0)); // ξ1^4
        assert_eq!(profile.waring_rank, 4);
        assert_eq!(profile.cactus_rank, 3);
        assert!(!profile.equal_degrees);
    }

    #[test]
    fn balanced_monomial_is_a_pencil() {
        let profile = sylvester_generators(&x0m_x1n(2, 2)).unwrap();
        assert_eq!((profile.d1, profile.d2), (3, 3));
        assert!(profile.equal_degrees);
        let gens = [profile.g1.clone(), profile.g2.clone()];
        assert!(gens.contains(&BinaryForm::monomial(3, 3)));
        assert!(gens.contains(&BinaryForm::monomial(3, 0)));
        assert_eq!(profile.waring_rank, 3);
    }

    #[test]
    fn power_and_near_power_profiles() {
        // X0^l: Ann = (ξ1, ξ0^(l+1)), rank 1
        let profile = sylvester_generators(&BinaryForm::monomial(5, 5)).unwrap();
        assert_eq!((profile.d1, profile.d2), (1, 6));
        assert_eq!(profile.g1, BinaryForm::monomial(1, 0));
        assert_eq!(profile.g2, BinaryForm::monomial(6, 6));
        assert_eq!((profile.waring_rank, profile.cactus_rank), (1, 1));

        // X0^(l−1)·X1 achieves the maximal Waring rank l
        let p = x0m_x1n(4, 1);
        let profile = sylvester_generators(&p).unwrap();
        assert_eq!((profile.waring_rank, profile.cactus_rank), (5, 2));
        assert_eq!(profile.g1, BinaryForm::monomial(2, 0)); // ξ1^2
    }

    #[test]
    fn three_distinct_factors_example() {
        // X0^3·X1·(X0+X1): first generator ξ1^3, rank 4
        let p = BinaryForm::monomial(3, 3)
            .multiply(&x1())
            .multiply(&x0().add(&x1()));
        let profile = sylvester_generators(&p).unwrap();
        assert_eq!((profile.d1, profile.d2), (3, 4));
        assert_eq!(profile.g1, BinaryForm::monomial(3, 0)); // ξ1^3
        assert_eq!(profile.waring_rank, 4);
    }

    #[test]
    fn alternating_generator_family() {
        // X0^m X1^m (X0+X1): G1 = Σ (−1)^k ξ0^(m+1−k) ξ1^k, G2 = ξ1^(m+2)
        for m in 1..=4usize {
            let p = x0m_x1n(m, m).multiply(&x0().add(&x1()));
            let profile = sylvester_generators(&p).unwrap();
            assert_eq!((profile.d1, profile.d2), (m + 1, m + 2));
            let alternating: Vec<i64> = (0..=m + 1)
                .map(|k| if (m + 1 - k) % 2 == 0 { 1 } else { -1 })
                .collect();
            let expected = BinaryForm::from_integers(m + 1, &alternating)
                .unwrap()
                .primitive();
            assert_eq!(profile.g1, expected);
            assert_eq!(profile.g2, BinaryForm::monomial(m + 2, 0)); // ξ1^(m+2)
            assert_eq!(profile.waring_rank, m + 1);
        }
    }

    #[test]
    fn generators_annihilate_and_are_coprime() {
        for p in [
            BinaryForm::from_integers(4, &[3, -1, 0, 2, 1]).unwrap(),
            BinaryForm::from_integers(6, &[1, 1, 1, 1, 1, 1, 1]).unwrap(),
            BinaryForm::from_integers(3, &[0, 0, 1, 2]).unwrap(),
        ] {
            let profile = sylvester_generators(&p).unwrap();
            assert!(apolar_apply(&profile.g1, &p).unwrap().is_zero());
            assert!(apolar_apply(&profile.g2, &p).unwrap().is_zero());
            assert_eq!(gcd_forms(&profile.g1, &profile.g2).unwrap().degree(), 0);
            assert_eq!(profile.d1 + profile.d2, p.degree() + 2);
        }
    }

    #[test]
    fn ideal_generates_every_graded_piece() {
        // span{ m·g1, m'·g2 } = Ann(P)_d in every degree d ≤ l
        let p = BinaryForm::from_integers(5, &[2, 0, -1, 1, 0, 3]).unwrap();
        let profile = sylvester_generators(&p).unwrap();
        for d in 0..=p.degree() {
            let kernel = annihilator_kernel(&p, d);
            let mut generated: Vec<Vec<crate::rational::Rational>> = Vec::new();
            for (g, dg) in [(&profile.g1, profile.d1), (&profile.g2, profile.d2)] {
                if d >= dg {
                    for j in 0..=(d - dg) {
                        generated.push(
                            g.multiply(&BinaryForm::monomial(d - dg, j))
                                .coeffs()
                                .to_vec(),
                        );
                    }
                }
            }
            // every generated element lies in the kernel
            let kernel_vecs: Vec<Vec<crate::rational::Rational>> =
                kernel.iter().map(|f| f.coeffs().to_vec()).collect();
            for v in &generated {
                assert!(crate::linalg::solve_membership(v, &kernel_vecs)
                    .unwrap()
                    .is_some());
            }
            // and spans it
            for v in &kernel_vecs {
                assert!(crate::linalg::solve_membership(v, &generated)
                    .unwrap()
                    .is_some());
            }
        }
    }

    #[test]
    fn near_power_minimal_generator_is_a_square() {
        // forms equivalent to X0^(l−1)·X1 have a degree-2 minimal generator
        // that is the square of a linear form, in every coordinate system
        let mut rng = crate::sample::seeded_rng(13);
        for l in 4..=7usize {
            let p = BinaryForm::monomial(l, l - 1);
            for _ in 0..3 {
                let g = crate::sample::invertible_substitution(&mut rng, 4);
                let profile = sylvester_generators(&p.substitute(&g).unwrap()).unwrap();
                assert_eq!(profile.d1, 2);
                assert_eq!(profile.g1.distinct_root_count().unwrap(), 1);
                assert_eq!(profile.waring_rank, l);
            }
        }
    }

    #[test]
    fn rank_is_substitution_invariant() {
        let p = BinaryForm::from_integers(5, &[1, -2, 0, 0, 1, 3]).unwrap();
        let base = sylvester_generators(&p).unwrap();
        let g = LinearSubstitution::new(rat_int(2), rat_int(1), rat_int(1), rat_int(1));
        let moved = sylvester_generators(&p.substitute(&g).unwrap()).unwrap();
        assert_eq!(base.waring_rank, moved.waring_rank);
        assert_eq!(base.cactus_rank, moved.cactus_rank);
    }

    #[test]
    fn degenerating_family_respects_semicontinuity() {
        // crank(X0^l) = 1 never exceeds the rank along X0^l + t·q
        let l = 6;
        let q = BinaryForm::from_integers(l, &[1, 0, 2, 0, 0, -1, 0]).unwrap();
        let p0 = BinaryForm::monomial(l, l);
        let r0 = cactus_rank(&p0).unwrap();
        for t in [
            crate::rational::rat(1, 5),
            crate::rational::rat(1, 17),
            rat_int(1),
        ] {
            let pt = p0.add(&q.scale(&t));
            assert!(r0 <= cactus_rank(&pt).unwrap());
        }
    }

    #[test]
    fn crank_one_iff_power() {
        assert!(is_power(&BinaryForm::monomial(4, 4)).unwrap());
        let square = BinaryForm::from_integers(2, &[1, 2, 1]).unwrap(); // (X0+X1)^2
        assert!(is_power(&square).unwrap());
        let p = BinaryForm::from_integers(4, &[1, 0, 0, 0, 1]).unwrap();
        assert!(!is_power(&p).unwrap());
        for p in [BinaryForm::monomial(3, 1), square] {
            assert_eq!(is_power(&p).unwrap(), cactus_rank(&p).unwrap() == 1);
        }
    }

    #[test]
    fn rank_and_cactus_rank_relation() {
        // crank = rk when 2·rk ≤ l+2 and l+2−rk otherwise
        for p in [
            BinaryForm::monomial(5, 4), // X0^4 X1
            BinaryForm::monomial(6, 3), // X0^3 X1^3
            BinaryForm::from_integers(4, &[1, 1, 0, 0, 1]).unwrap(),
            BinaryForm::from_integers(7, &[1, 0, 2, 0, 0, -1, 0, 3]).unwrap(),
            BinaryForm::monomial(3, 3), // X0^3
        ] {
            let profile = sylvester_generators(&p).unwrap();
            let l = p.degree();
            let expected = if 2 * profile.waring_rank <= l + 2 {
                profile.waring_rank
            } else {
                l + 2 - profile.waring_rank
            };
            assert_eq!(profile.cactus_rank, expected, "p = {p}");
        }
    }

    #[test]
    fn constants_have_rank_one() {
        let c = BinaryForm::from_integers(0, &[7]).unwrap();
        let profile = sylvester_generators(&c).unwrap();
        assert_eq!((profile.d1, profile.d2), (1, 1));
        assert_eq!((profile.waring_rank, profile.cactus_rank), (1, 1));
        assert!(profile.equal_degrees);
    }

    #[test]
    fn linear_forms() {
        let p = BinaryForm::from_integers(1, &[3, 2]).unwrap(); // 2X0 + 3X1
        let profile = sylvester_generators(&p).unwrap();
        assert_eq!((profile.d1, profile.d2), (1, 2));
        // g1 = 3ξ0 − 2ξ1 up to normalization kills 2X0 + 3X1
        assert!(apolar_apply(&profile.g1, &p).unwrap().is_zero());
        assert_eq!(profile.waring_rank, 1);
    }
}
