//! Moduli data for framed rank-2 affine bundles over the projective line,
//! plus the stratification bookkeeping for spaces of binary forms.
//!
//! A splitting type `⊕ O(n_i)^(s_i)` determines the first-cohomology space
//! `⊕ (dual forms of degree l_i)^(s_i)` with `l_i = −2−n_i`, and an
//! automorphism group of upper-triangular block matrices with polynomial
//! entries acting through transpose multiplication. The fiber of the framed
//! non-degenerate rank-2 moduli space over a point `[P]` is the cokernel of
//! the contraction map, so its dimension is [`cokernel_dim`] at `d = n1−n2`;
//! strata of the projective space of forms are labelled by cactus rank `r`
//! and fiber dimension `s`.

use crate::apolarity::{self, ApolarityError};
use crate::duality::{cokernel_dim, transpose_mult, DualVector};
use crate::form::{BinaryForm, FormError};
use crate::linalg::RationalMatrix;
use crate::rational::{rat_int, Rational};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModuliError {
    #[error("splitting exponents must be strictly decreasing, got {0} before {1}")]
    NotDecreasing(i64, i64),
    #[error("splitting multiplicities must be at least 1")]
    ZeroMultiplicity,
    #[error("empty splitting type")]
    EmptySplitting,
    #[error("block shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("diagonal block {0} is singular")]
    SingularDiagonal(usize),
    #[error("expected n1 > n2 with n1 ≤ −2, got n1={n1}, n2={n2}")]
    InvalidTwist { n1: i64, n2: i64 },
    #[error("form has degree {found}, expected {expected}")]
    WrongDegree { found: usize, expected: usize },
    #[error("census needs at least one sample")]
    NoSamples,
    #[error(transparent)]
    Apolarity(#[from] ApolarityError),
    #[error(transparent)]
    Form(#[from] FormError),
}

// ---------------------------------------------------------------------------
// Splitting types and descriptors
// ---------------------------------------------------------------------------

/// Grothendieck splitting type `⊕ O(n_i)^(s_i)` with `n_1 > n_2 > …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingType {
    pairs: Vec<(i64, usize)>,
}

impl SplittingType {
    pub fn new(pairs: Vec<(i64, usize)>) -> Result<Self, ModuliError> {
        if pairs.is_empty() {
            return Err(ModuliError::EmptySplitting);
        }
        for w in pairs.windows(2) {
            if w[0].0 <= w[1].0 {
                return Err(ModuliError::NotDecreasing(w[0].0, w[1].0));
            }
        }
        if pairs.iter().any(|&(_, s)| s == 0) {
            return Err(ModuliError::ZeroMultiplicity);
        }
        Ok(SplittingType { pairs })
    }

    pub fn pairs(&self) -> &[(i64, usize)] {
        &self.pairs
    }

    pub fn blocks(&self) -> usize {
        self.pairs.len()
    }
}

/// All the derived numerical data of a splitting type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuliDescriptor {
    pub splitting: SplittingType,
    /// Twists `l_i = −2−n_i` of the cohomology summands.
    pub l: Vec<i64>,
    /// `dim H¹ = Σ s_i · max(l_i+1, 0)`.
    pub h1_dim: usize,
    /// Degrees `n_i − n_j` of the endomorphism blocks (negative = absent).
    pub aut_block_degrees: Vec<Vec<i64>>,
    /// `dim Aut = Σ_{i≤j} s_i s_j · max(n_i−n_j+1, 0)`.
    pub aut_dim: usize,
}

/// Fill in every derived field of a splitting type.
pub fn describe(splitting: &SplittingType) -> ModuliDescriptor {
    let pairs = splitting.pairs();
    let m = pairs.len();
    let l: Vec<i64> = pairs.iter().map(|&(n, _)| -2 - n).collect();
    let h1_dim: usize = pairs
        .iter()
        .zip(&l)
        .map(|(&(_, s), &li)| s * (li + 1).max(0) as usize)
        .sum();
    let mut aut_block_degrees = vec![vec![0i64; m]; m];
    let mut aut_dim = 0usize;
    for i in 0..m {
        for j in 0..m {
            let deg = pairs[i].0 - pairs[j].0;
            aut_block_degrees[i][j] = deg;
            if i <= j {
                aut_dim += pairs[i].1 * pairs[j].1 * (deg + 1).max(0) as usize;
            }
        }
    }
    ModuliDescriptor {
        splitting: splitting.clone(),
        l,
        h1_dim,
        aut_block_degrees,
        aut_dim,
    }
}

// ---------------------------------------------------------------------------
// The automorphism action on H¹
// ---------------------------------------------------------------------------

/// Element of `⊕ (dual forms of degree l_i)^(s_i)`. Blocks with `l_i < 0`
/// are zero-dimensional and hold no data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1Element {
    blocks: Vec<Vec<DualVector>>,
}

impl H1Element {
    /// Validate block shapes against a descriptor: block `i` holds `s_i`
    /// functionals of degree `l_i` when `l_i ≥ 0` and must be empty otherwise.
    pub fn new(desc: &ModuliDescriptor, blocks: Vec<Vec<DualVector>>) -> Result<Self, ModuliError> {
        let pairs = desc.splitting.pairs();
        if blocks.len() != pairs.len() {
            return Err(ModuliError::ShapeMismatch(format!(
                "{} blocks for {} summands",
                blocks.len(),
                pairs.len()
            )));
        }
        for (i, block) in blocks.iter().enumerate() {
            let li = desc.l[i];
            let expected = if li >= 0 { pairs[i].1 } else { 0 };
            if block.len() != expected {
                return Err(ModuliError::ShapeMismatch(format!(
                    "block {i} has {} components, expected {expected}",
                    block.len()
                )));
            }
            for phi in block {
                if phi.degree() as i64 != li {
                    return Err(ModuliError::ShapeMismatch(format!(
                        "block {i} component of degree {}, expected {li}",
                        phi.degree()
                    )));
                }
            }
        }
        Ok(H1Element { blocks })
    }

    pub fn zero(desc: &ModuliDescriptor) -> Self {
        let blocks = desc
            .splitting
            .pairs()
            .iter()
            .zip(&desc.l)
            .map(|(&(_, s), &li)| {
                if li >= 0 {
                    vec![DualVector::zero(li as usize); s]
                } else {
                    Vec::new()
                }
            })
            .collect();
        H1Element { blocks }
    }

    pub fn blocks(&self) -> &[Vec<DualVector>] {
        &self.blocks
    }
}

/// Upper-triangular block matrix over forms: `entries[i][j−i]` is the
/// `s_i × s_j` block of forms of degree `n_i − n_j`, for `i ≤ j`. Diagonal
/// blocks are scalar and must be invertible for a group element.
#[derive(Debug, Clone)]
pub struct BlockMatrix {
    desc: ModuliDescriptor,
    entries: Vec<Vec<Vec<Vec<BinaryForm>>>>,
}

impl BlockMatrix {
    /// Validate shapes, entry degrees and diagonal invertibility.
    pub fn new(
        desc: &ModuliDescriptor,
        entries: Vec<Vec<Vec<Vec<BinaryForm>>>>,
    ) -> Result<Self, ModuliError> {
        let pairs = desc.splitting.pairs();
        let m = pairs.len();
        if entries.len() != m {
            return Err(ModuliError::ShapeMismatch(format!(
                "{} block rows for {m} summands",
                entries.len()
            )));
        }
        for i in 0..m {
            if entries[i].len() != m - i {
                return Err(ModuliError::ShapeMismatch(format!(
                    "block row {i} has {} blocks, expected {}",
                    entries[i].len(),
                    m - i
                )));
            }
            for (off, block) in entries[i].iter().enumerate() {
                let j = i + off;
                let (si, sj) = (pairs[i].1, pairs[j].1);
                let deg = (pairs[i].0 - pairs[j].0) as usize;
                if block.len() != si || block.iter().any(|row| row.len() != sj) {
                    return Err(ModuliError::ShapeMismatch(format!(
                        "block ({i},{j}) is not {si}×{sj}"
                    )));
                }
                for row in block {
                    for entry in row {
                        if entry.degree() != deg {
                            return Err(ModuliError::ShapeMismatch(format!(
                                "block ({i},{j}) entry of degree {}, expected {deg}",
                                entry.degree()
                            )));
                        }
                    }
                }
            }
            // diagonal block: scalar matrix, must be invertible
            let diag = &entries[i][0];
            let s = pairs[i].1;
            let mut scalar = RationalMatrix::zero(s, s);
            for (r, row) in diag.iter().enumerate() {
                for (c, entry) in row.iter().enumerate() {
                    scalar.set(r, c, entry.coeff(0).clone());
                }
            }
            if scalar.rank() != s {
                return Err(ModuliError::SingularDiagonal(i));
            }
        }
        Ok(BlockMatrix {
            desc: desc.clone(),
            entries,
        })
    }

    pub fn identity(desc: &ModuliDescriptor) -> Self {
        let pairs = desc.splitting.pairs();
        let m = pairs.len();
        let mut entries = Vec::with_capacity(m);
        for i in 0..m {
            let mut row = Vec::with_capacity(m - i);
            for j in i..m {
                let deg = (pairs[i].0 - pairs[j].0) as usize;
                let block: Vec<Vec<BinaryForm>> = (0..pairs[i].1)
                    .map(|r| {
                        (0..pairs[j].1)
                            .map(|c| {
                                if i == j && r == c {
                                    BinaryForm::from_integers(0, &[1]).unwrap()
                                } else {
                                    BinaryForm::zero(deg)
                                }
                            })
                            .collect()
                    })
                    .collect();
                row.push(block);
            }
            entries.push(row);
        }
        BlockMatrix {
            desc: desc.clone(),
            entries,
        }
    }

    pub fn block(&self, i: usize, j: usize) -> &Vec<Vec<BinaryForm>> {
        assert!(i <= j, "blocks below the diagonal are zero");
        &self.entries[i][j - i]
    }

    /// Matrix product; degrees add correctly because
    /// `(n_i−n_k) + (n_k−n_j) = n_i−n_j`.
    pub fn compose(&self, other: &BlockMatrix) -> Result<BlockMatrix, ModuliError> {
        if self.desc != other.desc {
            return Err(ModuliError::ShapeMismatch("descriptors differ".into()));
        }
        let pairs = self.desc.splitting.pairs();
        let m = pairs.len();
        let mut entries = Vec::with_capacity(m);
        for i in 0..m {
            let mut row = Vec::with_capacity(m - i);
            for j in i..m {
                let deg = (pairs[i].0 - pairs[j].0) as usize;
                let (si, sj) = (pairs[i].1, pairs[j].1);
                let mut block = vec![vec![BinaryForm::zero(deg); sj]; si];
                for (k, &(_, sk)) in pairs.iter().enumerate().take(j + 1).skip(i) {
                    let a = self.block(i, k);
                    let b = other.block(k, j);
                    for (r, block_row) in block.iter_mut().enumerate() {
                        for (c, out) in block_row.iter_mut().enumerate() {
                            for t in 0..sk {
                                *out = out.add(&a[r][t].multiply(&b[t][c]));
                            }
                        }
                    }
                }
                row.push(block);
            }
            entries.push(row);
        }
        BlockMatrix::new(&self.desc, entries)
    }
}

/// Apply a block matrix to an H¹ element: component `i` of the result is
/// `Σ_j ᵗm(A_ij) Φ_j`, summed over the blocks present.
pub fn act(a: &BlockMatrix, phi: &H1Element) -> Result<H1Element, ModuliError> {
    let desc = &a.desc;
    let pairs = desc.splitting.pairs();
    // shape-check phi against the descriptor
    let phi = H1Element::new(desc, phi.blocks.clone())?;
    let mut out = H1Element::zero(desc);
    for i in 0..pairs.len() {
        if desc.l[i] < 0 {
            continue; // target component is zero-dimensional
        }
        for j in i..pairs.len() {
            if desc.l[j] < 0 {
                continue; // source component is zero
            }
            let block = a.block(i, j);
            for (r, out_component) in out.blocks[i].iter_mut().enumerate() {
                for (c, source) in phi.blocks[j].iter().enumerate() {
                    let moved = transpose_mult(&block[r][c], source)
                        .expect("entry degree n_i−n_j ≤ l_j when l_i ≥ 0");
                    *out_component = out_component.add(&moved);
                }
            }
        }
    }
    Ok(out)
}

/// The rank-2 group element `[[u1, q], [0, u2]]` for a splitting
/// `O(n1) ⊕ O(n2)`; `q` must have degree `n1−n2`.
pub fn rank2_element(
    desc: &ModuliDescriptor,
    u1: &Rational,
    u2: &Rational,
    q: &BinaryForm,
) -> Result<BlockMatrix, ModuliError> {
    let scalar = |u: &Rational| BinaryForm::new(0, vec![u.clone()]).unwrap();
    BlockMatrix::new(
        desc,
        vec![
            vec![vec![vec![scalar(u1)]], vec![vec![q.clone()]]],
            vec![vec![vec![scalar(u2)]]],
        ],
    )
}

// ---------------------------------------------------------------------------
// Fiber dimensions and strata
// ---------------------------------------------------------------------------

/// Dimension of the moduli fiber over the point determined by `p` for the
/// splitting `O(n1) ⊕ O(n2)`: the cokernel dimension at `d = n1−n2` for the
/// form of degree `l = −2−n2`.
pub fn fiber_dim(n1: i64, n2: i64, p: &BinaryForm) -> Result<usize, ModuliError> {
    if n1 <= n2 || n1 > -2 {
        return Err(ModuliError::InvalidTwist { n1, n2 });
    }
    if p.is_zero() {
        return Err(ModuliError::Apolarity(ApolarityError::ZeroForm));
    }
    let l = (-2 - n2) as usize;
    if p.degree() != l {
        return Err(ModuliError::WrongDegree {
            found: p.degree(),
            expected: l,
        });
    }
    let d = (n1 - n2) as usize;
    Ok(cokernel_dim(p, d)?)
}

/// Stratum labels: `r` indexes the cactus-rank strata, `(d, s)` the level
/// sets of the fiber-dimension map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StratumLabel {
    Cactus { l: usize, r: usize },
    FiberLevel { l: usize, d: usize, s: usize },
}

impl StratumLabel {
    /// Range check: `1 ≤ r ≤ ⌊(l+2)/2⌋` for rank strata,
    /// `d ≤ l` and `s ≤ l−d+1` for level sets.
    pub fn is_valid(&self) -> bool {
        match *self {
            StratumLabel::Cactus { l, r } => r >= 1 && r <= (l + 2) / 2,
            StratumLabel::FiberLevel { l, d, s } => d <= l && s <= l - d + 1,
        }
    }
}

/// Where a single form sits: its cactus rank and its fiber dimension at `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumMembership {
    pub l: usize,
    pub d: usize,
    pub cactus_rank: usize,
    pub fiber_dim: usize,
}

impl StratumMembership {
    pub fn cactus_label(&self) -> StratumLabel {
        let label = StratumLabel::Cactus {
            l: self.l,
            r: self.cactus_rank,
        };
        debug_assert!(label.is_valid());
        label
    }

    pub fn fiber_label(&self) -> StratumLabel {
        let label = StratumLabel::FiberLevel {
            l: self.l,
            d: self.d,
            s: self.fiber_dim,
        };
        debug_assert!(label.is_valid());
        label
    }
}

pub fn stratum_membership(p: &BinaryForm, d: usize) -> Result<StratumMembership, ModuliError> {
    let r = apolarity::cactus_rank(p)?;
    let s = cokernel_dim(p, d)?;
    let membership = StratumMembership {
        l: p.degree(),
        d,
        cactus_rank: r,
        fiber_dim: s,
    };
    debug_assert!(level_set_consistent(p.degree(), d, r, s));
    Ok(membership)
}

/// Check one (rank, fiber-dimension) pair against the level-set description:
/// `s = l−2d` exactly when `r > d`; positive `s > l−2d` forces
/// `r = l−d+1−s`; and `s = 0` with `l < 2d` forces `r ≥ l−d+1`.
pub fn level_set_consistent(l: usize, d: usize, r: usize, s: usize) -> bool {
    if d > l {
        return false;
    }
    let (l, d, r, s) = (l as i64, d as i64, r as i64, s as i64);
    let generic = s == l - 2 * d;
    if generic != (r > d) {
        return false;
    }
    if generic {
        return true;
    }
    if s > 0 {
        // s > l−2d here, since s ≠ l−2d and the generic value is the minimum
        s <= l - d && r == l - d + 1 - s
    } else {
        l < 2 * d && r > l - d
    }
}

// ---------------------------------------------------------------------------
// Quartic invariants and small-degree strata
// ---------------------------------------------------------------------------

/// The classical invariants of a binary quartic, together with the
/// discriminant `Δ = g2³ − 27·g3²` and `J = g2³/Δ` (absent when `Δ = 0`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuarticInvariants {
    pub g2: Rational,
    pub g3: Rational,
    pub delta: Rational,
    pub j: Option<Rational>,
}

/// Weighted coefficients of a quartic: `a_k` is the coefficient of
/// `X0^(4−k) X1^k` divided by `binomial(4, k)`, matching the normal form
/// `a0·X0^4 + 4a1·X0^3X1 + 6a2·X0^2X1^2 + 4a3·X0X1^3 + a4·X1^4`.
fn weighted_quartic_coeffs(p: &BinaryForm) -> [Rational; 5] {
    let b = [1i64, 4, 6, 4, 1];
    std::array::from_fn(|k| p.coeff(4 - k) / rat_int(b[k]))
}

pub fn quartic_invariants(p: &BinaryForm) -> Result<QuarticInvariants, ModuliError> {
    if p.degree() != 4 {
        return Err(ModuliError::WrongDegree {
            found: p.degree(),
            expected: 4,
        });
    }
    let [a0, a1, a2, a3, a4] = weighted_quartic_coeffs(p);
    let g2 = &a0 * &a4 - rat_int(4) * &a1 * &a3 + rat_int(3) * &a2 * &a2;
    let g3 = &a0 * &a2 * &a4 + rat_int(2) * &a1 * &a2 * &a3
        - &a2 * &a2 * &a2
        - &a0 * &a3 * &a3
        - &a1 * &a1 * &a4;
    let delta = &g2 * &g2 * &g2 - rat_int(27) * &g3 * &g3;
    let j = if delta.is_zero() {
        None
    } else {
        Some(&g2 * &g2 * &g2 / &delta)
    };
    Ok(QuarticInvariants { g2, g3, delta, j })
}

/// Cactus stratum of a quartic read off the geometry: the Veronese locus is
/// rank 1, the rest of the vanishing locus of `g3` is rank 2, the complement
/// is rank 3.
pub fn quartic_stratum(p: &BinaryForm) -> Result<usize, ModuliError> {
    if p.degree() != 4 {
        return Err(ModuliError::WrongDegree {
            found: p.degree(),
            expected: 4,
        });
    }
    if p.is_zero() {
        return Err(ModuliError::Apolarity(ApolarityError::ZeroForm));
    }
    if apolarity::is_power(p)? {
        return Ok(1);
    }
    Ok(if quartic_invariants(p)?.g3.is_zero() {
        2
    } else {
        3
    })
}

/// Cactus stratum for degrees 2 and 3: the discriminant cuts out the rank-1
/// locus of quadratics, and a cubic has rank 1 exactly when it is a perfect
/// cube (one distinct root).
pub fn small_l_strata(p: &BinaryForm) -> Result<usize, ModuliError> {
    if p.is_zero() {
        return Err(ModuliError::Apolarity(ApolarityError::ZeroForm));
    }
    match p.degree() {
        2 => {
            // weighted basis a0·X0^2 + 2a1·X0X1 + a2·X1^2
            let a0 = p.coeff(2).clone();
            let a1 = p.coeff(1) / rat_int(2);
            let a2 = p.coeff(0).clone();
            let disc = &a0 * &a2 - &a1 * &a1;
            Ok(if disc.is_zero() { 1 } else { 2 })
        }
        3 => Ok(if p.distinct_root_count()? == 1 { 1 } else { 2 }),
        other => Err(ModuliError::WrongDegree {
            found: other,
            expected: 2,
        }),
    }
}

// ---------------------------------------------------------------------------
// Census
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusParams {
    pub l: usize,
    pub d: usize,
    pub samples: usize,
    pub seed: u64,
    pub coeff_bound: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRow {
    pub cactus_rank: usize,
    pub fiber_dim: usize,
    pub count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusTable {
    pub params: CensusParams,
    /// Rows sorted by (cactus rank, fiber dimension).
    pub rows: Vec<CensusRow>,
    /// The generic stratum `r = ⌊(l+2)/2⌋` and how many samples landed there.
    pub top_rank: usize,
    pub top_count: usize,
}

impl CensusTable {
    pub fn top_fraction(&self) -> Rational {
        Rational::new(self.top_count.into(), self.params.samples.into())
    }
}

/// Sample integer-coefficient forms uniformly from
/// `[−coeff_bound, coeff_bound]^(l+1) \ {0}` and tabulate
/// (cactus rank, fiber dimension) frequencies. Deterministic in the seed:
/// samples are drawn up front from a seeded stream, and per-sample results
/// are aggregated into an order-insensitive table.
pub fn census(params: &CensusParams) -> Result<CensusTable, ModuliError> {
    if params.samples == 0 {
        return Err(ModuliError::NoSamples);
    }
    if params.d > params.l {
        return Err(ModuliError::WrongDegree {
            found: params.d,
            expected: params.l,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let forms: Vec<BinaryForm> = (0..params.samples)
        .map(|_| random_integer_form(&mut rng, params.l, params.coeff_bound))
        .collect();
    let mut counts: std::collections::BTreeMap<(usize, usize), usize> = Default::default();
    for p in &forms {
        let m = stratum_membership(p, params.d)?;
        *counts.entry((m.cactus_rank, m.fiber_dim)).or_insert(0) += 1;
    }
    let top_rank = (params.l + 2) / 2;
    let top_count = counts
        .iter()
        .filter(|((r, _), _)| *r == top_rank)
        .map(|(_, c)| *c)
        .sum();
    let rows = counts
        .into_iter()
        .map(|((cactus_rank, fiber_dim), count)| CensusRow {
            cactus_rank,
            fiber_dim,
            count,
        })
        .collect();
    Ok(CensusTable {
        params: params.clone(),
        rows,
        top_rank,
        top_count,
    })
}

/// Uniform nonzero integer-coefficient form of the given degree.
pub fn random_integer_form(rng: &mut ChaCha8Rng, l: usize, coeff_bound: i64) -> BinaryForm {
    loop {
        let coeffs: Vec<Rational> = (0..=l)
            .map(|_| rat_int(rng.random_range(-coeff_bound..=coeff_bound)))
            .collect();
        if coeffs.iter().any(|c| !c.is_zero()) {
            return BinaryForm::new(l, coeffs).unwrap();
        }
    }
}
