//! Seeded randomized invariant suites driven by the `check` command.
//!
//! Each suite re-derives its claims through an independent computation
//! path (raw loops over complex arrays, explicit metric insertions) and
//! compares against the library route, recording the worst residual per
//! named check.

use std::collections::BTreeMap;

use krein::{
    apply_metric, big_pi, born, cartan_decompose, check_block_constraints, compose_sequence,
    dyn_matrix, embed, exchange_device, frames, hilbert_inner, indefinite_inner, m_device,
    pi_small, project, pseudo_unitarity_residual, random_dyn_frame_from, random_su22_from,
    sector_inner, unitarity_residual, CartanVector, FrameTransform, Mat2, Mat4, Operator, Row2,
    Sector, SectorOperator, C64, c,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

/// Result of one suite: the worst residual seen for each named check,
/// with the threshold it was held against.
#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub trials: u64,
    pub checks: BTreeMap<String, f64>,
    pub thresholds: BTreeMap<String, f64>,
}

impl SuiteReport {
    fn new(name: &'static str, trials: u64) -> Self {
        SuiteReport {
            name,
            trials,
            checks: BTreeMap::new(),
            thresholds: BTreeMap::new(),
        }
    }

    fn record(&mut self, check: &str, residual: f64, threshold: f64) {
        let entry = self.checks.entry(check.to_string()).or_insert(0.0);
        *entry = entry.max(residual);
        self.thresholds.insert(check.to_string(), threshold);
    }

    pub fn pass(&self) -> bool {
        self.checks
            .iter()
            .all(|(k, r)| r.is_finite() && *r <= self.thresholds[k])
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.values().cloned().fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Value {
        let checks: BTreeMap<&String, Value> = self
            .checks
            .iter()
            .map(|(k, r)| {
                (
                    k,
                    json!({
                        "residual": r,
                        "threshold": self.thresholds[k],
                        "pass": r.is_finite() && *r <= self.thresholds[k],
                    }),
                )
            })
            .collect();
        json!({
            "name": self.name,
            "trials": self.trials,
            "pass": self.pass(),
            "max_residual": self.max_residual(),
            "checks": checks,
        })
    }
}

fn random_c64(rng: &mut ChaCha8Rng) -> C64 {
    c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

fn random_cartan_vector(rng: &mut ChaCha8Rng) -> CartanVector {
    CartanVector::new([
        random_c64(rng),
        random_c64(rng),
        random_c64(rng),
        random_c64(rng),
    ])
    .expect("finite")
}

fn random_operator(rng: &mut ChaCha8Rng) -> Operator {
    let mut m = Mat4::zero();
    for i in 0..4 {
        for j in 0..4 {
            m.0[i][j] = random_c64(rng);
        }
    }
    Operator::from_action(m).expect("finite")
}

fn random_sector_operator(rng: &mut ChaCha8Rng, sector: Sector) -> SectorOperator {
    let mut m = Mat2::zero();
    for i in 0..2 {
        for j in 0..2 {
            m.0[i][j] = random_c64(rng);
        }
    }
    SectorOperator::from_action(sector, sector, m)
}

/// Metric and conjugation identities on random vectors and operators.
pub fn metric_conjugation_suite(seed: u64, trials: u64, tol: f64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x11));
    let mut report = SuiteReport::new("metric-conjugation", trials);
    for _ in 0..trials {
        let x = random_cartan_vector(&mut rng);
        let y = random_cartan_vector(&mut rng);
        // Indefinite product computed through the metric against the
        // positive-definite product.
        let direct = indefinite_inner(&x, &y);
        let routed = hilbert_inner(&apply_metric(&x), &y);
        report.record("g-route-inner", (direct - routed).norm(), tol);
        // Exact two-sector split of any vector.
        let rebuilt = embed(&project(&x, Sector::Plus)).add(&embed(&project(&x, Sector::Minus)));
        report.record(
            "sector-split",
            rebuilt.sub(&x).max_norm(),
            0.0,
        );
        // The indefinite product decomposes over sectors.
        let split = sector_inner(&project(&x, Sector::Plus), &project(&y, Sector::Plus)).unwrap()
            + sector_inner(&project(&x, Sector::Minus), &project(&y, Sector::Minus)).unwrap();
        report.record("sector-inner-sum", (direct - split).norm(), tol);

        let a = random_operator(&mut rng);
        let b = random_operator(&mut rng);
        // The metric-twisted adjoint is an involution.
        report.record(
            "star-involution",
            a.star().star().sub(&a).matrix().max_norm(),
            tol,
        );
        // ...and an antihomomorphism of the operator product.
        let lhs = a.mul(&b).star();
        let rhs = b.star().mul(&a.star());
        report.record(
            "star-antimultiplicative",
            lhs.sub(&rhs).matrix().max_norm(),
            tol,
        );
        // ...and agrees with the metric sandwich of the plain adjoint.
        let sandwich = Operator::metric().mul(&a.dagger()).mul(&Operator::metric());
        report.record(
            "star-dagger-sandwich",
            a.star().sub(&sandwich).matrix().max_norm(),
            tol,
        );
        // The adjoint pairing property: ⟨xA|y⟩_g = ⟨x|yA★⟩_g-style,
        // evaluated through rows.
        let xa = a.apply(&x);
        let lhs = indefinite_inner(&xa, &y);
        // Recover the ket action of A★ as z = conj(M★ᵀ applied to conj(y)).
        let mstar = a.star().matrix();
        let yc = y.components();
        let mut z = [C64::ZERO; 4];
        for i in 0..4 {
            for j in 0..4 {
                z[i] += mstar.0[j][i] * yc[j];
            }
        }
        let rhs = indefinite_inner(&x, &CartanVector::new(z).unwrap());
        report.record("star-adjoint-pairing", (lhs - rhs).norm(), tol);
    }
    report
}

/// Restricted-trace calculus on random sector operators.
pub fn trace_suite(seed: u64, trials: u64, tol: f64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x22));
    let mut report = SuiteReport::new("traces", trials);
    for sector in [Sector::Plus, Sector::Minus] {
        // Tr I± = 2, exactly.
        let t = SectorOperator::identity(sector).sector_trace().unwrap();
        report.record("sector-identity-trace", (t - c(2.0, 0.0)).norm(), 0.0);
        for branch in 0..2 {
            // Canonical branch projectors have unit restricted trace.
            let p = pi_small(sector, branch).realized();
            report.record(
                "projector-trace",
                (p.sector_trace().unwrap() - c(1.0, 0.0)).norm(),
                0.0,
            );
        }
    }
    for _ in 0..trials {
        for sector in [Sector::Plus, Sector::Minus] {
            let a = random_sector_operator(&mut rng, sector);
            let b = random_sector_operator(&mut rng, sector);
            // Conjugate trace: Tr A★ = conj(Tr A).
            let lhs = a.star().sector_trace().unwrap();
            let rhs = a.sector_trace().unwrap().conj();
            report.record("conjugate-trace", (lhs - rhs).norm(), tol);
            // Cyclic invariance.
            let ab = a.compose(&b).unwrap().sector_trace().unwrap();
            let ba = b.compose(&a).unwrap().sector_trace().unwrap();
            report.record("cyclic-trace", (ab - ba).norm(), tol);
            // The restricted trace is the metric-weighted diagonal sum of
            // the stored entries, computed here by a raw loop.
            let e = a.entries();
            let weighted = c(sector.sign(), 0.0) * (e.0[0][0] + e.0[1][1]);
            report.record(
                "g-weighted-diagonal",
                (a.sector_trace().unwrap() - weighted).norm(),
                tol,
            );
            // Tr(A A★) is real and non-negative.
            let aa = a.compose(&a.star()).unwrap().sector_trace().unwrap();
            report.record("star-square-real", aa.im.abs(), tol);
            report.record("star-square-positive", (-aa.re).max(0.0), tol);
        }
        // The full trace of a block-diagonal operator is the sum of its
        // restricted traces.
        let p = random_sector_operator(&mut rng, Sector::Plus);
        let m = random_sector_operator(&mut rng, Sector::Minus);
        let full = Operator::from_action(Mat4::from_blocks(
            p.action(),
            Mat2::zero(),
            Mat2::zero(),
            m.action(),
        ))
        .unwrap();
        let sum = p.sector_trace().unwrap() + m.sector_trace().unwrap();
        report.record("restricted-trace-sum", (full.trace() - sum).norm(), tol);
    }
    report
}

/// Group membership, decomposition, and constructor certificates.
pub fn group_suite(seed: u64, trials: u64, tol: f64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x33));
    let mut report = SuiteReport::new("group", trials);
    let loose = tol.max(1e-9);
    for _ in 0..trials {
        let e = random_su22_from(&mut rng);
        report.record(
            "pseudo-unitarity",
            pseudo_unitarity_residual(&e.matrix()),
            loose,
        );
        report.record("determinant", (e.det() - c(1.0, 0.0)).norm(), loose);
        let factors = cartan_decompose(&e, 1e-12).expect("nonsingular");
        let rebuilt = factors.unitary_part.matrix() * factors.positive_part.matrix();
        report.record(
            "cartan-reconstruction",
            (rebuilt - e.matrix()).max_norm(),
            loose,
        );
        let (eigs, _) = factors.positive_part.matrix().hermitian_eigen();
        let min_eig = eigs.iter().cloned().fold(f64::INFINITY, f64::min);
        report.record(
            "cartan-h-positive",
            if min_eig > 0.0 { 0.0 } else { 1.0 },
            0.0,
        );
        report.record(
            "cartan-u-unitarity",
            unitarity_residual(&factors.unitary_part.matrix()),
            loose,
        );
        let constraints = check_block_constraints(&e);
        report.record("block-constraints", constraints.max(), tol.max(1e-10));

        // Random constructor instances.
        let (poincare, frame) = random_constructors(&mut rng);
        report.record(
            "poincare-pseudo-unitarity",
            pseudo_unitarity_residual(&poincare.matrix()),
            loose,
        );
        report.record("dyn-unitarity", unitarity_residual(&frame.matrix()), loose);
        report.record(
            "dyn-pseudo-unitarity",
            pseudo_unitarity_residual(&frame.matrix()),
            loose,
        );
    }
    report
}

/// Draw a random Poincaré matrix and a random dynamical (unitary) one.
fn random_constructors(
    rng: &mut ChaCha8Rng,
) -> (krein::GroupElement, krein::GroupElement) {
    use krein::{SL2CElement, SU2Element, TranslationMatrix};
    let a = loop {
        let mut m = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                m.0[i][j] = random_c64(rng);
            }
        }
        let d = m.det();
        if d.norm() < 0.1 {
            continue;
        }
        // Rescale onto det = 1.
        let s = d.sqrt().inv();
        break SL2CElement::new(m.scale(s), 1e-9).expect("unimodular by construction");
    };
    let w = TranslationMatrix::normalized_from_params(
        rng.gen_range(-1.0..1.0),
        [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ],
    );
    let poincare = krein::poincare_matrix(&a, &w);
    let beta = SU2Element::from_params(
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
        rng.gen_range(-1.0..1.0),
    );
    let frame = dyn_matrix(&beta, &w).expect("normalized translation");
    (poincare, frame)
}

/// Raw dyadic oracle: metric-convention entries ±conj(u_i)v_j of the
/// branch dyad, written with explicit loops.
fn dyad_entries(sector: Sector, u: Row2, v: Row2) -> Mat2 {
    let mut m = Mat2::zero();
    for i in 0..2 {
        for j in 0..2 {
            m.0[i][j] = c(sector.sign(), 0.0) * u[i].conj() * v[j];
        }
    }
    m
}

/// Raw product of two metric-convention matrices with the explicit
/// metric insertion between them.
fn metric_product(sector: Sector, a: &Mat2, b: &Mat2) -> Mat2 {
    let mut m = Mat2::zero();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                m.0[i][j] += a.0[i][k] * c(sector.sign(), 0.0) * b.0[k][j];
            }
        }
    }
    m
}

/// Raw indefinite pairing ±Σ x conj(y).
fn raw_inner(sector: Sector, x: Row2, y: Row2) -> C64 {
    c(sector.sign(), 0.0) * (x[0] * y[0].conj() + x[1] * y[1].conj())
}

/// Selective-measurement closed forms against the brute-force dyad oracle.
pub fn measurement_suite(seed: u64, trials: u64, tol: f64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x44));
    let mut report = SuiteReport::new("measurement", trials);
    let born_tol = tol.min(1e-12);
    for _ in 0..trials {
        for sector in [Sector::Plus, Sector::Minus] {
            let probe = frames::random_scenario_from(&mut rng, sector);
            let [a, cs, d] = &probe.partners;
            let b = &probe.state;
            report.record("born-sum", (born(b, 0) + born(b, 1) - 1.0).abs(), born_tol);
            for branch in 0..2 {
                // Canonical projector: exactly idempotent with unit trace.
                let p = pi_small(sector, branch).realized();
                let sq = p.compose(&p).unwrap();
                report.record(
                    "pi-idempotent",
                    if sq.entries() == p.entries() { 0.0 } else { 1.0 },
                    0.0,
                );
                report.record(
                    "pi-trace",
                    (p.sector_trace().unwrap() - c(1.0, 0.0)).norm(),
                    0.0,
                );

                let a_mu = a.branch(branch).components();
                let b_mu = b.branch(branch).components();
                let c_mu = cs.branch(branch).components();
                let d_mu = d.branch(branch).components();

                // Sandwich law: Π(B)Π(A)Π(B) = |⟨b|a⟩|² Π(B).
                let lib = compose_sequence(&[
                    big_pi(b, branch),
                    big_pi(a, branch),
                    big_pi(b, branch),
                ])
                .unwrap()
                .0;
                let db = dyad_entries(sector, b_mu, b_mu);
                let da = dyad_entries(sector, a_mu, a_mu);
                let oracle = metric_product(sector, &metric_product(sector, &db, &da), &db);
                let weight = raw_inner(sector, b_mu, a_mu).norm_sqr();
                let closed = db.scale(c(weight, 0.0));
                let r = (lib.entries() - oracle)
                    .max_norm()
                    .max((lib.entries() - closed).max_norm());
                report.record("sandwich-j3", r, tol);

                // Hidden-middle law: Π(B)πΠ(B) = ±⟨b|b⟩ Π(B).
                let lib = compose_sequence(&[
                    big_pi(b, branch),
                    pi_small(sector, branch),
                    big_pi(b, branch),
                ])
                .unwrap()
                .0;
                let mut unit = Mat2::zero();
                unit.0[branch][branch] = c(sector.sign(), 0.0);
                let oracle = metric_product(sector, &metric_product(sector, &db, &unit), &db);
                let closed = db.scale(c(sector.sign(), 0.0) * raw_inner(sector, b_mu, b_mu));
                let r = (lib.entries() - oracle)
                    .max_norm()
                    .max((lib.entries() - closed).max_norm());
                report.record("hidden-middle-j910", r, tol);

                // Triple law: Π(A)Π(B)Π(C) = ⟨a|b⟩⟨b|c⟩ M(a,c).
                let lib = compose_sequence(&[
                    big_pi(a, branch),
                    big_pi(b, branch),
                    big_pi(cs, branch),
                ])
                .unwrap()
                .0;
                let closed = dyad_entries(sector, a_mu, c_mu).scale(
                    raw_inner(sector, a_mu, b_mu) * raw_inner(sector, b_mu, c_mu),
                );
                report.record("triple-j91", (lib.entries() - closed).max_norm(), tol);

                // M-composition: M(a,b)M(c,d) = ±⟨b|c⟩ M(a,d).
                let lib = compose_sequence(&[
                    m_device(a, b, branch).unwrap(),
                    m_device(cs, d, branch).unwrap(),
                ])
                .unwrap()
                .0;
                let oracle = metric_product(
                    sector,
                    &dyad_entries(sector, a_mu, b_mu),
                    &dyad_entries(sector, c_mu, d_mu),
                );
                let closed = dyad_entries(sector, a_mu, d_mu)
                    .scale(c(sector.sign(), 0.0) * raw_inner(sector, b_mu, c_mu));
                let r = (lib.entries() - oracle)
                    .max_norm()
                    .max((lib.entries() - closed).max_norm());
                report.record("m-composition-m52", r, tol);

                // Statistical trace of the composition: ⟨b|c⟩⟨d|a⟩.
                let tr = lib.sector_trace().unwrap();
                let closed_tr =
                    raw_inner(sector, b_mu, c_mu) * raw_inner(sector, d_mu, a_mu);
                report.record("trace-j100", (tr - closed_tr).norm(), tol);

                // Projector-dyad traces: Tr(Π(A)M(c,d)) = ⟨d|a⟩⟨a|c⟩.
                let pm = big_pi(a, branch)
                    .realized()
                    .compose(&m_device(cs, d, branch).unwrap().realized())
                    .unwrap();
                let closed_tr =
                    raw_inner(sector, d_mu, a_mu) * raw_inner(sector, a_mu, c_mu);
                let key = if branch == 0 { "trace-c7" } else { "trace-c9" };
                report.record(key, (pm.sector_trace().unwrap() - closed_tr).norm(), tol);
            }
            // Exchange devices annihilate one branch and reproduce the
            // Born weight of the other.
            let d01 = exchange_device(b, 0, 1, 1e-12).unwrap();
            let moved = d01.apply_bra(&b.branch(0)).unwrap();
            let pairing = sector_inner(&moved, &b.branch(1)).unwrap();
            let expected = c(sector.sign() * born(b, 1), 0.0);
            report.record("exchange-pairing", (pairing - expected).norm(), tol);
        }
    }
    report
}

/// Frame-transport invariance claims over random dynamical frames.
pub fn frame_suite(seed: u64, trials: u64, tol: f64) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x55));
    let mut report = SuiteReport::new("frames", trials);
    let mut min_amplitude_shift = f64::INFINITY;
    let mut min_branch_shift = f64::INFINITY;
    let mut generic_frames = 0u64;
    for _ in 0..trials {
        let (_, map) = random_dyn_frame_from(&mut rng);
        let frame = FrameTransform::new(map, "moving");
        for sector in [Sector::Plus, Sector::Minus] {
            let scenario = frames::random_scenario_from(&mut rng, sector);
            let rep = frames::invariance_report(&scenario, &frame, tol).unwrap();
            report.record("invariance-claims", rep.max_residual(), tol);
            if frame.distance_from_identity() > 100.0 * tol {
                generic_frames += 1;
                min_amplitude_shift =
                    min_amplitude_shift.min(rep.informational()["f19-amplitude-shift"]);
                min_branch_shift =
                    min_branch_shift.min(rep.informational()["fr52-branch-shift"]);
            }
        }
    }
    // Non-invariance: generic frames must visibly move the individual
    // amplitudes and reduced branches.
    if generic_frames > 0 {
        report.record(
            "amplitude-non-invariance",
            (1e-8 - min_amplitude_shift).max(0.0),
            0.0,
        );
        report.record(
            "branch-non-invariance",
            (1e-8 - min_branch_shift).max(0.0),
            0.0,
        );
    }
    report
}

/// Run every suite with seeds derived from one master seed.
pub fn run_all(seed: u64, trials: u64, tol: f64) -> Vec<SuiteReport> {
    vec![
        metric_conjugation_suite(seed, trials, tol),
        trace_suite(seed, trials, tol),
        group_suite(seed, trials, tol),
        measurement_suite(seed, trials, tol),
        frame_suite(seed, trials, tol),
    ]
}
