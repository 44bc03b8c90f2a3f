//! Seeded identity suites behind `apolar verify`.
//!
//! Each suite runs an executable identity over exhaustive small cases plus a
//! seeded random sample, counts checks, and records the first counterexample
//! if any identity ever fails (none is expected to).

use crate::apolarity::{ann_dim_from_degrees, catalecticant, sylvester_generators};
use crate::duality::{cokernel_dim, cokernel_dim_from_crank, duality_holds};
use crate::form::BinaryForm;
use crate::moduli::{
    act, describe, level_set_consistent, quartic_invariants, quartic_stratum, rank2_element,
    BlockMatrix, H1Element, ModuliDescriptor, SplittingType,
};
use crate::rational::{rat, rat_int, Rational};
use crate::sample;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteKind {
    Duality,
    Dims,
    Quartics,
    Action,
}

impl FromStr for SuiteKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "duality" => Ok(SuiteKind::Duality),
            "dims" => Ok(SuiteKind::Dims),
            "quartics" => Ok(SuiteKind::Quartics),
            "action" => Ok(SuiteKind::Action),
            other => Err(format!(
                "unknown suite '{other}' (expected duality|dims|quartics|action)"
            )),
        }
    }
}

impl fmt::Display for SuiteKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            SuiteKind::Duality => "duality",
            SuiteKind::Dims => "dims",
            SuiteKind::Quartics => "quartics",
            SuiteKind::Action => "action",
        };
        write!(f, "{name}")
    }
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: SuiteKind,
    pub seed: u64,
    pub max_degree: usize,
    pub checks: usize,
    pub failures: usize,
    pub first_counterexample: Option<String>,
}

impl SuiteReport {
    fn new(suite: SuiteKind, seed: u64, max_degree: usize) -> Self {
        SuiteReport {
            suite,
            seed,
            max_degree,
            checks: 0,
            failures: 0,
            first_counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.first_counterexample.is_none() {
                self.first_counterexample = Some(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

pub fn run_suite(kind: SuiteKind, seed: u64, max_degree: usize) -> SuiteReport {
    match kind {
        SuiteKind::Duality => duality_suite(seed, max_degree),
        SuiteKind::Dims => dims_suite(seed, max_degree),
        SuiteKind::Quartics => quartics_suite(seed),
        SuiteKind::Action => action_suite(seed),
    }
}

/// The duality identity: exhaustive over monomial pairs up to degree
/// `min(max_degree, 6)`, then 500 random rational pairs up to `max_degree`.
fn duality_suite(seed: u64, max_degree: usize) -> SuiteReport {
    let mut report = SuiteReport::new(SuiteKind::Duality, seed, max_degree);
    for l in 0..=max_degree.min(6) {
        for d in 0..=l {
            for s in 0..=l {
                for k in 0..=d {
                    let p = BinaryForm::monomial(l, s);
                    let q = BinaryForm::monomial(d, k);
                    report.record(duality_holds(&p, &q).unwrap(), || {
                        format!("monomials p = {p}, q = {q}")
                    });
                }
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..500 {
        let l = rng.random_range(0..=max_degree);
        let d = rng.random_range(0..=l);
        let p = sample::rational_form(&mut rng, l, 9);
        let q = sample::rational_form(&mut rng, d, 9);
        report.record(duality_holds(&p, &q).unwrap(), || {
            format!("p = {p}, q = {q}")
        });
    }
    report
}

/// Graded dimensions: the kernel count, the generator-degree closed form, the
/// cokernel identity and the rank-based closed form must all agree, for the
/// canonical corpus plus seeded random forms in every degree up to
/// `max_degree` and every operator degree.
fn dims_suite(seed: u64, max_degree: usize) -> SuiteReport {
    let mut report = SuiteReport::new(SuiteKind::Dims, seed, max_degree.max(1));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for l in 1..=max_degree.max(1) {
        let mut corpus = sample::canonical_forms(l);
        while corpus.len() < 30 {
            corpus.push(sample::integer_form(&mut rng, l, 9));
        }
        for p in &corpus {
            let profile = sylvester_generators(p).expect("nonzero");
            for d in 0..=l {
                let cat = catalecticant(p, d).expect("degree in range");
                let kernel_dim = cat.matrix.cols() - cat.matrix.rank();
                let closed = ann_dim_from_degrees(l, d, profile.d1, profile.d2);
                report.record(kernel_dim == closed, || {
                    format!("ann dim of {p} at degree {d}: kernel {kernel_dim}, closed {closed}")
                });
                let coker = cokernel_dim(p, d).expect("degree in range");
                let via_ann = (l as i64 - 2 * d as i64 + kernel_dim as i64) as usize;
                let via_crank = cokernel_dim_from_crank(l, d, profile.cactus_rank);
                report.record(coker == via_ann && coker == via_crank, || {
                    format!(
                        "cokernel of {p} at degree {d}: brute {coker}, via ann {via_ann}, via rank {via_crank}"
                    )
                });
                report.record(
                    level_set_consistent(l, d, profile.cactus_rank, coker),
                    || format!("level set of {p} at degree {d}"),
                );
            }
        }
    }
    report
}

/// Quartic invariants: the explicit formulas against the determinant route,
/// the discriminant identity against squarefreeness, and the geometric
/// stratum against the rank computation, on canonical quartics plus 100
/// seeded random ones.
fn quartics_suite(seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new(SuiteKind::Quartics, seed, 4);
    let x0 = BinaryForm::monomial(1, 1);
    let x1 = BinaryForm::monomial(1, 0);
    let pencil = |t: Rational| {
        x0.multiply(&x1)
            .multiply(&x0.add(&x1))
            .multiply(&x0.add(&x1.scale(&t)))
    };
    let mut corpus: Vec<BinaryForm> = vec![
        BinaryForm::monomial(4, 4),
        BinaryForm::monomial(4, 3),
        BinaryForm::monomial(4, 2),
        x0.pow(2).multiply(&x1).multiply(&x0.add(&x1)),
    ];
    for t in [
        rat_int(-1),
        rat(1, 2),
        rat_int(2),
        rat_int(3),
        rat_int(-2),
        rat_int(5),
    ] {
        corpus.push(pencil(t));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..100 {
        corpus.push(sample::integer_form(&mut rng, 4, 9));
    }
    for p in &corpus {
        let inv = quartic_invariants(p).expect("degree 4");
        let (g2_det, g3_det) = invariants_via_determinant(p);
        report.record(inv.g2 == g2_det && inv.g3 == g3_det, || {
            format!("determinant route disagrees on {p}")
        });
        let delta_identity =
            inv.delta == &inv.g2 * &inv.g2 * &inv.g2 - rat_int(27) * &inv.g3 * &inv.g3;
        report.record(delta_identity, || {
            format!("discriminant identity fails on {p}")
        });
        let squarefree = p.is_squarefree().expect("nonzero");
        report.record(inv.delta.is_zero() == !squarefree, || {
            format!("Δ = 0 vs multiple roots disagree on {p}")
        });
        let stratum = quartic_stratum(p).expect("degree 4");
        let rank = crate::apolarity::cactus_rank(p).expect("nonzero");
        report.record(stratum == rank, || {
            format!("geometric stratum {stratum} vs cactus rank {rank} on {p}")
        });
    }
    report
}

/// Recover `(g2, g3)` from the cubic
/// `det [[a0, a1, a2+2t], [a1, a2−t, a3], [a2+2t, a3, a4]] = 4t³ − g2·t + g3`
/// by evaluating at `t = 0` and `t = 1`.
fn invariants_via_determinant(p: &BinaryForm) -> (Rational, Rational) {
    let binoms = [1i64, 4, 6, 4, 1];
    let a: Vec<Rational> = (0..=4)
        .map(|k| p.coeff(4 - k) / rat_int(binoms[k]))
        .collect();
    let det = |t: Rational| -> Rational {
        let m = [
            [a[0].clone(), a[1].clone(), &a[2] + rat_int(2) * &t],
            [a[1].clone(), &a[2] - &t, a[3].clone()],
            [&a[2] + rat_int(2) * &t, a[3].clone(), a[4].clone()],
        ];
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    };
    let g3 = det(rat_int(0));
    let g2 = rat_int(4) + &g3 - det(rat_int(1));
    (g2, g3)
}

/// Group-action axioms: identity and composition for the rank-2 action on
/// 100 seeded triples, then for general block matrices on 50 seeded
/// splittings with up to three summands.
fn action_suite(seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new(SuiteKind::Action, seed, 8);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for _ in 0..100 {
        let n2 = rng.random_range(-8..=-4);
        let n1 = rng.random_range(n2 + 1..=-2);
        let desc = describe(&SplittingType::new(vec![(n1, 1), (n2, 1)]).unwrap());
        let phi = random_h1(&mut rng, &desc);
        let a = random_rank2(&mut rng, &desc);
        let b = random_rank2(&mut rng, &desc);
        check_axioms(&mut report, &desc, &a, &b, &phi);
    }

    for _ in 0..50 {
        let desc = random_splitting(&mut rng);
        let phi = random_h1(&mut rng, &desc);
        let a = random_block_matrix(&mut rng, &desc);
        let b = random_block_matrix(&mut rng, &desc);
        check_axioms(&mut report, &desc, &a, &b, &phi);
    }
    report
}

fn check_axioms(
    report: &mut SuiteReport,
    desc: &ModuliDescriptor,
    a: &BlockMatrix,
    b: &BlockMatrix,
    phi: &H1Element,
) {
    let id = BlockMatrix::identity(desc);
    report.record(act(&id, phi).unwrap() == *phi, || {
        "identity action moved a point".into()
    });
    let lhs = act(&a.compose(b).unwrap(), phi).unwrap();
    let rhs = act(a, &act(b, phi).unwrap()).unwrap();
    report.record(lhs == rhs, || "composition law failed".into());
}

fn random_h1(rng: &mut ChaCha8Rng, desc: &ModuliDescriptor) -> H1Element {
    let blocks = desc
        .splitting
        .pairs()
        .iter()
        .zip(&desc.l)
        .map(|(&(_, s), &li)| {
            if li < 0 {
                return Vec::new();
            }
            (0..s)
                .map(|_| {
                    crate::duality::DualVector::new(
                        li as usize,
                        (0..=li)
                            .map(|_| rat_int(rng.random_range(-9..=9)))
                            .collect(),
                    )
                })
                .collect()
        })
        .collect();
    H1Element::new(desc, blocks).expect("shapes by construction")
}

fn random_rank2(rng: &mut ChaCha8Rng, desc: &ModuliDescriptor) -> BlockMatrix {
    let nonzero = |rng: &mut ChaCha8Rng| loop {
        let u = rng.random_range(-6i64..=6);
        if u != 0 {
            return rat_int(u);
        }
    };
    let d = (desc.splitting.pairs()[0].0 - desc.splitting.pairs()[1].0) as usize;
    let q = BinaryForm::new(
        d,
        (0..=d).map(|_| rat_int(rng.random_range(-9..=9))).collect(),
    )
    .unwrap();
    rank2_element(desc, &nonzero(rng), &nonzero(rng), &q).expect("diagonal nonzero")
}

fn random_splitting(rng: &mut ChaCha8Rng) -> ModuliDescriptor {
    let m = rng.random_range(1..=3usize);
    let mut n = Vec::with_capacity(m);
    let mut next = rng.random_range(-4..=-2i64);
    for _ in 0..m {
        n.push(next);
        next -= rng.random_range(1..=2i64);
    }
    let pairs: Vec<(i64, usize)> = n
        .into_iter()
        .map(|ni| (ni, rng.random_range(1..=2usize)))
        .collect();
    describe(&SplittingType::new(pairs).unwrap())
}

fn random_block_matrix(rng: &mut ChaCha8Rng, desc: &ModuliDescriptor) -> BlockMatrix {
    let pairs = desc.splitting.pairs();
    let m = pairs.len();
    loop {
        let mut entries = Vec::with_capacity(m);
        for i in 0..m {
            let mut row = Vec::with_capacity(m - i);
            for j in i..m {
                let deg = (pairs[i].0 - pairs[j].0) as usize;
                let block: Vec<Vec<BinaryForm>> = (0..pairs[i].1)
                    .map(|_| {
                        (0..pairs[j].1)
                            .map(|_| {
                                BinaryForm::new(
                                    deg,
                                    (0..=deg)
                                        .map(|_| rat_int(rng.random_range(-6..=6)))
                                        .collect(),
                                )
                                .unwrap()
                            })
                            .collect()
                    })
                    .collect();
                row.push(block);
            }
            entries.push(row);
        }
        if let Ok(matrix) = BlockMatrix::new(desc, entries) {
            return matrix; // rejected draws had a singular diagonal block
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_suites_pass() {
        for kind in [
            SuiteKind::Duality,
            SuiteKind::Dims,
            SuiteKind::Quartics,
            SuiteKind::Action,
        ] {
            let max_degree = if kind == SuiteKind::Dims { 6 } else { 8 };
            let report = run_suite(kind, 42, max_degree);
            assert!(
                report.passed(),
                "suite {kind} failed: {:?}",
                report.first_counterexample
            );
            assert!(report.checks > 0);
        }
    }

    #[test]
    fn suite_names_parse() {
        assert_eq!("duality".parse::<SuiteKind>().unwrap(), SuiteKind::Duality);
        assert!("nope".parse::<SuiteKind>().is_err());
    }
}
