//! Invariant suites that cross-check the independent routes against each
//! other. Each suite returns one [`CheckOutcome`] per named check; results
//! are collected in a fixed order, so reports do not depend on how many
//! worker threads ran them.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eigenlab::{
    dihedral_legendre_multiplicity, project_and_rank_sphere_with, project_and_rank_torus,
    sphere_idempotence_residual, DEFAULT_TOLERANCE, MAX_TORUS_LAMBDA,
};
use crate::euclidean::{
    self, counting_euclidean, dual_rotation_map, lattice_model, orbifold_multiplicity_with,
    torus_multiplicity, verify_fixed_point_free, AffineRealization,
};
use crate::numtheory::{divisor_count, divisor_count_mod, EisensteinSum, Rational};
use crate::signature::{group_order, TriangleSignature};
use crate::spherical::{
    angle_census, census_from_matrices, dihedral_multiplicity_eisenstein, generate_rotation_group,
    multiplicity_charsum_with, multiplicity_closed, sweep_signatures, weyl_remainder_maxima,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Charsum,
    Lattice,
    Eisenstein,
    Relations,
    Weyl,
    Eigenlab,
}

impl Suite {
    pub const INDIVIDUAL: [Suite; 6] = [
        Suite::Charsum,
        Suite::Lattice,
        Suite::Eisenstein,
        Suite::Relations,
        Suite::Weyl,
        Suite::Eigenlab,
    ];

    /// Sweep bound used when `--max` is not given.
    pub fn default_max(self) -> u64 {
        match self {
            Suite::All => 0,
            Suite::Charsum => 2000,
            Suite::Lattice => 100_000,
            Suite::Eisenstein => 10_000,
            Suite::Relations => 0,
            Suite::Weyl => 5000,
            Suite::Eigenlab => 20,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::All => "all",
            Suite::Charsum => "charsum",
            Suite::Lattice => "lattice",
            Suite::Eisenstein => "eisenstein",
            Suite::Relations => "relations",
            Suite::Weyl => "weyl",
            Suite::Eigenlab => "eigenlab",
        })
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "all" => Suite::All,
            "charsum" => Suite::Charsum,
            "lattice" => Suite::Lattice,
            "eisenstein" => Suite::Eisenstein,
            "relations" => Suite::Relations,
            "weyl" => Suite::Weyl,
            "eigenlab" => Suite::Eigenlab,
            other => return Err(format!("unknown suite {other:?}")),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        CheckOutcome {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    fn from_result(name: impl Into<String>, r: Result<String, String>) -> Self {
        match r {
            Ok(d) => Self::new(name, true, d),
            Err(d) => Self::new(name, false, d),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub max: u64,
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub max: Option<u64>,
    pub seed: u64,
}

/// Runs one suite, or every suite for [`Suite::All`].
pub fn run(suite: Suite, opts: VerifyOptions) -> Vec<SuiteReport> {
    match suite {
        Suite::All => Suite::INDIVIDUAL
            .iter()
            .map(|&s| run_one(s, opts))
            .collect(),
        s => vec![run_one(s, opts)],
    }
}

fn run_one(suite: Suite, opts: VerifyOptions) -> SuiteReport {
    let max = opts.max.unwrap_or(suite.default_max());
    let checks = match suite {
        Suite::Charsum => charsum_suite(max),
        Suite::Lattice => lattice_suite(max, opts.seed),
        Suite::Eisenstein => eisenstein_suite(max),
        Suite::Relations => relations_suite(),
        Suite::Weyl => weyl_suite(max),
        Suite::Eigenlab => eigenlab_suite(max, opts.seed),
        Suite::All => unreachable!(),
    };
    SuiteReport {
        suite,
        max,
        seed: opts.seed,
        checks,
    }
}

const CHARSUM_MAX_N: u64 = 60;
const GROUP_MAX_N: u64 = 200;

fn charsum_suite(max_degree: u64) -> Vec<CheckOutcome> {
    let sigs = sweep_signatures(CHARSUM_MAX_N);
    let mut out: Vec<CheckOutcome> = sigs
        .par_iter()
        .map(|&sig| {
            let name = format!("charsum = closed form for {sig}, l <= {max_degree}");
            let census = match angle_census(sig) {
                Ok(c) => c,
                Err(e) => return CheckOutcome::new(name, false, e.to_string()),
            };
            for l in 0..=max_degree {
                let closed = multiplicity_closed(sig, l).expect("spherical");
                match multiplicity_charsum_with(&census, sig, l) {
                    Ok(v) if v == closed && v <= 2 * l + 1 => {}
                    Ok(v) => {
                        return CheckOutcome::new(
                            name,
                            false,
                            format!("l = {l}: charsum {v}, closed {closed}"),
                        )
                    }
                    Err(e) => return CheckOutcome::new(name, false, e.to_string()),
                }
            }
            CheckOutcome::new(name, true, format!("{} degrees", max_degree + 1))
        })
        .collect();

    let eisenstein: Vec<CheckOutcome> = (2..=CHARSUM_MAX_N)
        .into_par_iter()
        .map(|n| {
            let name = format!("Eisenstein route for Γ(2,2,{n}), l <= {max_degree}");
            let sig = TriangleSignature::dihedral(n).expect("n >= 2");
            for l in 0..=max_degree {
                let via = dihedral_multiplicity_eisenstein(n, l);
                let closed = multiplicity_closed(sig, l).expect("spherical");
                if via != Rational::from_integer(closed as i64) {
                    return CheckOutcome::new(name, false, format!("l = {l}: {via} vs {closed}"));
                }
            }
            CheckOutcome::new(name, true, "exact agreement")
        })
        .collect();
    out.extend(eisenstein);

    let mut group_sigs = sweep_signatures(GROUP_MAX_N);
    group_sigs.retain(|s| s.dihedral_order().is_none_or(|n| n <= 24 || n % 25 == 0 || n == GROUP_MAX_N));
    let groups: Vec<CheckOutcome> = group_sigs
        .par_iter()
        .map(|&sig| {
            let name = format!("generated group {sig}: order and census");
            let r = (|| {
                let g = generate_rotation_group(sig).map_err(|e| e.to_string())?;
                let order = group_order(sig).map_err(|e| e.to_string())?;
                if g.len() as u64 != order {
                    return Err(format!("{} elements, expected {order}", g.len()));
                }
                let found = census_from_matrices(&g).ok_or("angle not rational")?;
                let expected = angle_census(sig).map_err(|e| e.to_string())?;
                if found != expected {
                    return Err(format!("census mismatch: {found:?} vs {expected:?}"));
                }
                Ok(format!("{order} elements, {} angle classes", found.entries.len()))
            })();
            CheckOutcome::from_result(name, r)
        })
        .collect();
    out.extend(groups);
    out
}

fn lattice_suite(max_lambda: u64, seed: u64) -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    for sig in [euclidean::signatures()[0], euclidean::signatures()[1]] {
        let model = lattice_model(sig).expect("euclidean");
        let (a, b, c) = model.dual_form.coefficients();
        let hist = model.dual_form.representation_counts_upto(max_lambda);
        let mismatch = (1..=max_lambda)
            .into_par_iter()
            .find_first(|&l| torus_multiplicity(&model, l) != hist[l as usize]);
        out.push(CheckOutcome::new(
            format!("divisor formula = brute-force count for form ({a},{b},{c}), λ <= {max_lambda}"),
            mismatch.is_none(),
            match mismatch {
                None => "all agree".to_string(),
                Some(l) => format!("λ = {l}: formula {}, brute force {}", torus_multiplicity(&model, l), hist[l as usize]),
            },
        ));
    }

    for sig in euclidean::signatures() {
        let model = lattice_model(sig).expect("euclidean");
        let bad = (1..=max_lambda)
            .into_par_iter()
            .find_first(|&l| !torus_multiplicity(&model, l).is_multiple_of(model.quotient_order));
        out.push(CheckOutcome::new(
            format!("|S| = {} divides μ_T(λ) for {sig}", model.quotient_order),
            bad.is_none(),
            bad.map_or("exact".into(), |l| format!("fails at λ = {l}")),
        ));
        let zero = orbifold_multiplicity_with(&model, 0);
        out.push(CheckOutcome::new(
            format!("μ(0) = 1 for {sig}"),
            zero == Ok(1),
            format!("{zero:?}"),
        ));
    }

    let hex = lattice_model(euclidean::signatures()[0]).expect("euclidean");
    let tri = lattice_model(euclidean::signatures()[2]).expect("euclidean");
    let bad = (1..=max_lambda).into_par_iter().find_first(|&l| {
        orbifold_multiplicity_with(&tri, l).ok()
            != orbifold_multiplicity_with(&hex, l).ok().map(|v| 2 * v)
    });
    out.push(CheckOutcome::new(
        format!("μ_(3,3,3)(λ) = 2 μ_(2,3,6)(λ), λ <= {max_lambda}"),
        bad.is_none(),
        bad.map_or("all agree".into(), |l| format!("fails at λ = {l}")),
    ));

    for s in [3u64, 4] {
        let bad = (1..=max_lambda).into_par_iter().find_first(|&n| {
            let total: u64 = (0..s).map(|r| divisor_count_mod(n, r, s).expect("n >= 1")).sum();
            total != divisor_count(n).expect("n >= 1")
        });
        out.push(CheckOutcome::new(
            format!("Σ_r d_(r,{s})(N) = d(N), N <= {max_lambda}"),
            bad.is_none(),
            bad.map_or("all agree".into(), |n| format!("fails at N = {n}")),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for sig in [euclidean::signatures()[0], euclidean::signatures()[1]] {
        let model = lattice_model(sig).expect("euclidean");
        let tau = model.tau_vector();
        let sigma = model.sigma_vector();
        let mut worst = 0.0f64;
        let mut exact = true;
        for _ in 0..1000 {
            let m = rng.gen_range(-1000..=1000);
            let n = rng.gen_range(-1000..=1000);
            let k = model.wavevector(m, n);
            for v in [tau, sigma] {
                let phase = k[0] * v[0] + k[1] * v[1];
                let z = num_complex::Complex64::from_polar(1.0, phase);
                worst = worst.max((z - 1.0).norm());
            }
            exact &= model.is_periodic(m, n)
                && model.eigenvalue_exact(m, n) == Rational::from_integer(model.dual_form.eval(m, n));
        }
        out.push(CheckOutcome::new(
            format!("plane waves periodic under tau, sigma for {sig} (1000 random indices)"),
            worst < 1e-9 && exact,
            format!("max |e^(ik·v) − 1| = {worst:.3e}, exact phases and |k|² {}", if exact { "ok" } else { "FAIL" }),
        ));
    }

    for sig in euclidean::signatures() {
        let r = (|| {
            let map = dual_rotation_map(sig).map_err(|e| e.to_string())?;
            let report = verify_fixed_point_free(sig).map_err(|e| e.to_string())?;
            Ok(format!(
                "M = {:?}, det(M^i − I) = {:?}",
                map.matrix,
                report.determinants.iter().map(|d| d.1).collect::<Vec<_>>()
            ))
        })();
        out.push(CheckOutcome::from_result(
            format!("dual rotation map of {sig} is fixed-point free"),
            r,
        ));
    }
    out
}

const EISENSTEIN_MAX_N: u64 = 200;

fn eisenstein_suite(max_degree: u64) -> Vec<CheckOutcome> {
    let worst: Vec<(u64, u64, f64)> = (2..=EISENSTEIN_MAX_N)
        .into_par_iter()
        .map(|n| {
            let table = EisensteinSum::new(n);
            (0..=max_degree)
                .map(|l| (n, l, table.residual(l)))
                .fold((n, 0, 0.0), |acc, x| if x.2 > acc.2 { x } else { acc })
        })
        .collect();
    let (n, l, r) = worst
        .iter()
        .copied()
        .fold((0, 0, 0.0), |acc, x| if x.2 > acc.2 { x } else { acc });
    vec![CheckOutcome::new(
        format!("Eisenstein identity residual < 1e-9 for l <= {max_degree}, 2 <= n <= {EISENSTEIN_MAX_N}"),
        r < 1e-9,
        format!("max residual {r:.3e} at l = {l}, n = {n}"),
    )]
}

fn relations_suite() -> Vec<CheckOutcome> {
    let mut out = Vec::new();
    for sig in euclidean::signatures() {
        match AffineRealization::build(sig) {
            Ok(real) => {
                for c in real.checks {
                    out.push(CheckOutcome::new(
                        format!("{sig}: {}", c.name),
                        c.passed,
                        format!("residual {:.3e}", c.residual),
                    ));
                }
            }
            Err(e) => out.push(CheckOutcome::new(format!("{sig}: realization"), false, e.to_string())),
        }
    }
    for sig in sweep_signatures(12) {
        let r = generate_rotation_group(sig)
            .map(|g| g.relation_residual())
            .map_err(|e| e.to_string());
        let passed = matches!(r, Ok(x) if x <= 1e-9);
        out.push(CheckOutcome::new(
            format!("{sig}: A^p = B^q = (AB)^r = I in SO(3)"),
            passed,
            format!("{r:?}"),
        ));
    }
    out
}

const WEYL_SHORT: u64 = 200;

fn weyl_suite(max: u64) -> Vec<CheckOutcome> {
    let mut out: Vec<CheckOutcome> = sweep_signatures(CHARSUM_MAX_N)
        .par_iter()
        .map(|&sig| {
            let name = format!("{sig}: |N(L) − (L+1)²/|Γ|| bounded, L <= {max}");
            match weyl_remainder_maxima(sig, WEYL_SHORT, max) {
                Ok((short, long)) => CheckOutcome::new(
                    name,
                    long <= short + 1.0,
                    format!("max over L <= {WEYL_SHORT}: {short:.4}, over L <= {max}: {long:.4}"),
                ),
                Err(e) => CheckOutcome::new(name, false, e.to_string()),
            }
        })
        .collect();
    let lambda = max.max(1) * 20;
    let euclid: Vec<CheckOutcome> = euclidean::signatures()
        .par_iter()
        .map(|&sig| {
            let name = format!("{sig}: |N(Λ)/Λ − c| < 1% at Λ = {lambda}");
            match counting_euclidean(sig, lambda) {
                Ok(r) => {
                    let rel = (r.ratio() - r.leading_coefficient).abs() / r.leading_coefficient;
                    CheckOutcome::new(
                        name,
                        rel < 0.01,
                        format!(
                            "N = {}, N/Λ = {:.6}, c = {:.6}, relative error {rel:.3e}",
                            r.count,
                            r.ratio(),
                            r.leading_coefficient
                        ),
                    )
                }
                Err(e) => CheckOutcome::new(name, false, e.to_string()),
            }
        })
        .collect();
    out.extend(euclid);
    out
}

const EIGENLAB_MAX_N: u64 = 12;

/// Seed for one `(signature, degree)` case, independent of scheduling.
fn case_seed(seed: u64, sig: TriangleSignature, l: u64) -> u64 {
    let [p, q, r] = sig.orders();
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for v in [p, q, r, l] {
        h = (h ^ v).wrapping_mul(0x1000_0000_01b3).rotate_left(17);
    }
    h
}

fn eigenlab_suite(max_degree: u64, seed: u64) -> Vec<CheckOutcome> {
    let max_degree = max_degree.min(crate::eigenlab::MAX_SPHERE_DEGREE);
    let mut out: Vec<CheckOutcome> = sweep_signatures(EIGENLAB_MAX_N)
        .par_iter()
        .map(|&sig| {
            let name = format!("{sig}: projection rank = multiplicity, l <= {max_degree}");
            let group = match generate_rotation_group(sig) {
                Ok(g) => g,
                Err(e) => return CheckOutcome::new(name, false, e.to_string()),
            };
            let mut min_gap = f64::INFINITY;
            for l in 0..=max_degree {
                let samples = 4 * (2 * l as usize + 1) + 8;
                match project_and_rank_sphere_with(&group, l, samples, DEFAULT_TOLERANCE, case_seed(seed, sig, l)) {
                    Ok(r) if r.is_consistent() => min_gap = min_gap.min(r.gap_ratio),
                    Ok(r) => {
                        return CheckOutcome::new(name, false, format!("l = {l}: rank {} vs {}", r.rank, r.expected))
                    }
                    Err(e) => return CheckOutcome::new(name, false, format!("l = {l}: {e}")),
                }
            }
            let idem = sphere_idempotence_residual(&group, max_degree.min(8), 4, case_seed(seed, sig, 999));
            if idem > 1e-8 {
                return CheckOutcome::new(name, false, format!("idempotence residual {idem:.3e}"));
            }
            CheckOutcome::new(name, true, format!("smallest gap ratio {min_gap:.3e}, idempotence residual {idem:.1e}"))
        })
        .collect();

    let torus: Vec<CheckOutcome> = euclidean::signatures()
        .par_iter()
        .map(|&sig| {
            let name = format!("{sig}: orbit-projection rank = multiplicity, λ <= {MAX_TORUS_LAMBDA}");
            let model = lattice_model(sig).expect("euclidean");
            let mut cases = 0;
            for lambda in 1..=MAX_TORUS_LAMBDA {
                if torus_multiplicity(&model, lambda) == 0 {
                    continue;
                }
                cases += 1;
                match project_and_rank_torus(sig, lambda, DEFAULT_TOLERANCE) {
                    Ok(r) if r.is_consistent() => {}
                    Ok(r) => {
                        return CheckOutcome::new(name, false, format!("λ = {lambda}: rank {} vs {}", r.rank, r.expected))
                    }
                    Err(e) => return CheckOutcome::new(name, false, format!("λ = {lambda}: {e}")),
                }
            }
            CheckOutcome::new(name, true, format!("{cases} representable eigenvalues"))
        })
        .collect();
    out.extend(torus);

    let bad = (2..=30u64).into_par_iter().find_first(|&n| {
        let sig = TriangleSignature::dihedral(n).expect("n >= 2");
        (0..=500).any(|l| dihedral_legendre_multiplicity(n, l) != multiplicity_closed(sig, l).expect("spherical"))
    });
    out.push(CheckOutcome::new(
        "Legendre-basis dihedral count = closed form, n <= 30, l <= 500",
        bad.is_none(),
        bad.map_or("all agree".into(), |n| format!("fails for n = {n}")),
    ));
    out
}
