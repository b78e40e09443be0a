//! Transfer of fuzzy ideals between a Γ-semiring `S` and its operator
//! semirings, and the finite-chain verification harness built on it.

mod maps;
mod report;

pub use maps::{plus, plus_prime, star, star_prime, TransferContext, TransferMap};
pub use report::{ClaimRecord, ClaimStatus, Counterexample, TheoremReport};

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::enumeration::{
    candidate_count, enumerate_with_cap, random_fuzzy_ideal, random_fuzzy_subset, EnumerationError,
    DEFAULT_ENUMERATION_CAP,
};
use crate::fuzzy::{pointwise_leq, Carrier, FuzzySubset, IdealKind, MembershipValue};
use crate::operator::{verify_unity_is_identity, Side};

fn counterexample(ctx: &TransferContext, detail: String, subsets: Vec<FuzzySubset>) -> Counterexample {
    Counterexample {
        detail,
        structure: ctx.g.clone(),
        subsets,
    }
}

/// For every sample that is an ideal of some kind on the source carrier of
/// some map, checks that its image is an ideal of the same kind. Claim ids
/// are `preserve:<map>:<kind>`; each map/kind pair is always present, even
/// when no sample qualified.
pub fn verify_preservation(ctx: &TransferContext, samples: &[FuzzySubset]) -> TheoremReport {
    let mut report = TheoremReport::new();
    for map in TransferMap::ALL {
        for kind in IdealKind::ALL {
            report.claim(&preservation_id(map, kind));
        }
    }
    for sample in samples {
        let source = sample.carrier();
        if sample.len() != ctx.carrier_size(source) {
            continue;
        }
        let input_checker = ctx.checker(source);
        for map in TransferMap::ALL.into_iter().filter(|m| m.source() == source) {
            let image = map.apply(ctx, sample).expect("carrier checked above");
            let output_checker = ctx.checker(map.target());
            for kind in IdealKind::ALL {
                if input_checker.check(sample.values(), kind).is_some() {
                    continue;
                }
                let violation = output_checker.check(image.values(), kind);
                report
                    .claim(&preservation_id(map, kind))
                    .record(violation.is_none(), || {
                        let v = violation.as_ref().expect("failure carries a violation");
                        counterexample(
                            ctx,
                            format!("{} image fails {} {}", map.as_str(), v.condition(), v),
                            vec![sample.clone(), image.clone()],
                        )
                    });
            }
        }
    }
    report
}

fn preservation_id(map: TransferMap, kind: IdealKind) -> String {
    format!("preserve:{}:{}", map.as_str(), kind.as_str())
}

/// Ideal kinds paired with `L` (via `σ ↦ σ⁺′`) and with `R` (via `σ ↦ σ*′`).
pub fn bijection_kinds(side: Side) -> [IdealKind; 6] {
    match side {
        Side::Left => [
            IdealKind::Right,
            IdealKind::TwoSided,
            IdealKind::KTwoSided,
            IdealKind::HTwoSided,
            IdealKind::KRight,
            IdealKind::HRight,
        ],
        Side::Right => [
            IdealKind::Left,
            IdealKind::TwoSided,
            IdealKind::KTwoSided,
            IdealKind::HTwoSided,
            IdealKind::KLeft,
            IdealKind::HLeft,
        ],
    }
}

pub const BIJECTION_CHECKS: [&str; 5] = ["roundtrip-s", "roundtrip-op", "monotone", "onto", "cardinality"];

fn bijection_id(side: Side, kind: IdealKind, check: &str) -> String {
    let tag = match side {
        Side::Left => "L",
        Side::Right => "R",
    };
    format!("bijection:{tag}:{}:{check}", kind.as_str())
}

fn maps_for(side: Side) -> (TransferMap, TransferMap) {
    match side {
        Side::Left => (TransferMap::PlusPrime, TransferMap::Plus),
        Side::Right => (TransferMap::StarPrime, TransferMap::Star),
    }
}

pub fn verify_bijection(ctx: &TransferContext, chain_k: u64) -> Result<TheoremReport, EnumerationError> {
    verify_bijection_with(ctx, chain_k, DEFAULT_ENUMERATION_CAP, false)
}

/// Enumerates the ideals of each paired kind on `S` and on the operator
/// semiring over `C_k` and checks that `σ ↦ σ⁺′` (resp. `σ*′`) is an
/// inclusion-preserving bijection between them with the expected inverse.
///
/// Without both unities every claim is recorded as gated unless
/// `force_ungated` is set.
pub fn verify_bijection_with(
    ctx: &TransferContext,
    chain_k: u64,
    cap: u128,
    force_ungated: bool,
) -> Result<TheoremReport, EnumerationError> {
    let mut report = TheoremReport::new();
    let gated = !ctx.has_both_unities() && !force_ungated;
    for side in [Side::Left, Side::Right] {
        for kind in bijection_kinds(side) {
            if gated {
                for check in BIJECTION_CHECKS {
                    report.gate(&bijection_id(side, kind, check));
                }
                continue;
            }
            bijection_for_kind(ctx, &mut report, side, kind, chain_k, cap)?;
        }
    }
    if gated {
        report.note(format!(
            "{}: bijection claims gated (left-unity={} right-unity={})",
            ctx.name(),
            yes_no(ctx.left_unity.is_some()),
            yes_no(ctx.right_unity.is_some())
        ));
    }
    Ok(report)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn bijection_for_kind(
    ctx: &TransferContext,
    report: &mut TheoremReport,
    side: Side,
    kind: IdealKind,
    chain_k: u64,
    cap: u128,
) -> Result<(), EnumerationError> {
    let (forward, back) = maps_for(side);
    let s_ideals = enumerate_with_cap(ctx.checker(Carrier::S), chain_k, kind, cap)?;
    let op_ideals = enumerate_with_cap(ctx.checker(Carrier::of_side(side)), chain_k, kind, cap)?;
    let id = |check| bijection_id(side, kind, check);

    let images: Vec<FuzzySubset> = s_ideals
        .iter()
        .map(|s| forward.apply(ctx, s).expect("S-carrier subset"))
        .collect();
    for (sigma, image) in s_ideals.iter().zip(&images) {
        let back_again = back.apply(ctx, image).expect("operator-carrier subset");
        report.claim(&id("roundtrip-s")).record(back_again == *sigma, || {
            counterexample(
                ctx,
                format!(
                    "{} then {} does not return the input",
                    forward.as_str(),
                    back.as_str()
                ),
                vec![sigma.clone(), image.clone(), back_again.clone()],
            )
        });
    }

    let pulled: Vec<FuzzySubset> = op_ideals
        .iter()
        .map(|mu| back.apply(ctx, mu).expect("operator-carrier subset"))
        .collect();
    for (mu, down) in op_ideals.iter().zip(&pulled) {
        let up = forward.apply(ctx, down).expect("S-carrier subset");
        report.claim(&id("roundtrip-op")).record(up == *mu, || {
            counterexample(
                ctx,
                format!(
                    "{} then {} does not return the input",
                    back.as_str(),
                    forward.as_str()
                ),
                vec![mu.clone(), down.clone(), up.clone()],
            )
        });
    }

    for (domain, values) in [(&s_ideals, &images), (&op_ideals, &pulled)] {
        for i in 0..domain.len() {
            for j in 0..domain.len() {
                if i == j || !leq(&domain[i], &domain[j]) {
                    continue;
                }
                let ok = leq(&values[i], &values[j]);
                report.claim(&id("monotone")).record(ok, || {
                    counterexample(
                        ctx,
                        "order not preserved".into(),
                        vec![
                            domain[i].clone(),
                            domain[j].clone(),
                            values[i].clone(),
                            values[j].clone(),
                        ],
                    )
                });
            }
        }
    }

    let image_set: HashSet<&FuzzySubset> = images.iter().collect();
    for mu in &op_ideals {
        report.claim(&id("onto")).record(image_set.contains(mu), || {
            counterexample(
                ctx,
                format!("ideal is not the {} image of any ideal of S", forward.as_str()),
                vec![mu.clone()],
            )
        });
    }

    let (ns, nop) = (s_ideals.len(), op_ideals.len());
    report.claim(&id("cardinality")).record(ns == nop, || {
        counterexample(
            ctx,
            format!("{ns} ideals on S, {nop} on {}", Carrier::of_side(side)),
            Vec::new(),
        )
    });
    Ok(())
}

fn leq(a: &FuzzySubset, b: &FuzzySubset) -> bool {
    pointwise_leq(a, b).expect("same carrier")
}

/// A random pair `σ ≤ τ` on `carrier` with values in `C_k`.
pub fn random_ordered_pair<R: Rng>(
    carrier: Carrier,
    n: usize,
    chain_k: u64,
    rng: &mut R,
) -> (FuzzySubset, FuzzySubset) {
    let mut low = Vec::with_capacity(n);
    let mut high = Vec::with_capacity(n);
    for _ in 0..n {
        let a = rng.gen_range(0..=chain_k);
        let b = rng.gen_range(0..=chain_k);
        low.push(a.min(b));
        high.push(a.max(b));
    }
    (
        FuzzySubset::from_chain(carrier, &low, chain_k),
        FuzzySubset::from_chain(carrier, &high, chain_k),
    )
}

/// Checks on `pairs` random pairs `σ ≤ τ` per map that each transfer map
/// preserves the pointwise order. Claim ids are `monotone:<map>`.
pub fn verify_monotonicity(ctx: &TransferContext, chain_k: u64, pairs: usize, seed: u64) -> TheoremReport {
    let mut report = TheoremReport::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for map in TransferMap::ALL {
        let source = map.source();
        let id = format!("monotone:{}", map.as_str());
        report.claim(&id);
        for _ in 0..pairs {
            let (low, high) = random_ordered_pair(source, ctx.carrier_size(source), chain_k, &mut rng);
            let (a, b) = (
                map.apply(ctx, &low).expect("source carrier"),
                map.apply(ctx, &high).expect("source carrier"),
            );
            report.claim(&id).record(leq(&a, &b), || {
                counterexample(
                    ctx,
                    format!("{} breaks order", map.as_str()),
                    vec![low.clone(), high.clone()],
                )
            });
        }
    }
    report
}

/// Checks that `σ⁺′` and `σ*′` computed through each class's witness
/// formal sum agree with the action-table evaluation on `samples`.
pub fn verify_well_definedness(ctx: &TransferContext, samples: &[FuzzySubset]) -> TheoremReport {
    let mut report = TheoremReport::new();
    for (side, map) in [
        (Side::Left, TransferMap::PlusPrime),
        (Side::Right, TransferMap::StarPrime),
    ] {
        let id = format!("well-defined:{}", map.as_str());
        report.claim(&id);
        let sr = ctx.operator(side);
        for sigma in samples
            .iter()
            .filter(|s| s.carrier() == Carrier::S && s.len() == ctx.g.s_size())
        {
            let fast = map.apply(ctx, sigma).expect("S carrier");
            for idx in 0..sr.size() {
                let terms = sr.witness(idx).terms();
                let slow = (0..ctx.g.s_size())
                    .map(|a| {
                        let pairs: Vec<(usize, usize)> = terms.iter().map(|t| (t.elem, t.gamma)).collect();
                        let value = match side {
                            Side::Left => ctx.g.sum_of_products(&pairs, a),
                            Side::Right => ctx.g.sum_of_right_products(
                                &pairs.iter().map(|&(x, g)| (g, x)).collect::<Vec<_>>(),
                                a,
                            ),
                        };
                        sigma.get(value.expect("witnesses are nonempty"))
                    })
                    .min()
                    .expect("S is nonempty");
                report.claim(&id).record(slow == fast.get(idx), || {
                    counterexample(
                        ctx,
                        format!("witness {} disagrees with its class", sr.witness(idx)),
                        vec![sigma.clone()],
                    )
                });
            }
        }
    }
    report
}

/// Checks that every unity found is the identity of its operator semiring.
pub fn verify_unities(ctx: &TransferContext) -> TheoremReport {
    let mut report = TheoremReport::new();
    for (side, unity) in [(Side::Left, &ctx.left_unity), (Side::Right, &ctx.right_unity)] {
        let id = format!("unity-identity:{side}");
        match unity {
            Some(u) => {
                let ok = verify_unity_is_identity(ctx.operator(side), u);
                report.claim(&id).record(ok, || {
                    counterexample(
                        ctx,
                        format!("unity {} is not an identity", u.formal_sum),
                        Vec::new(),
                    )
                });
            }
            None => report.gate(&id),
        }
    }
    report
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteConfig {
    pub chain_k: u64,
    pub samples: usize,
    pub seed: u64,
    pub force_ungated: bool,
    pub enumeration_cap: u128,
    pub monotone_pairs: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            chain_k: 2,
            samples: 200,
            seed: 0,
            force_ungated: false,
            enumeration_cap: DEFAULT_ENUMERATION_CAP,
            monotone_pairs: 1000,
        }
    }
}

/// Fuzzy subsets on `carrier` used as preservation inputs: every map into
/// `C_k` when there are at most `cap` of them, otherwise `samples` random
/// subsets plus `samples` repaired ideals spread over all kinds.
pub fn preservation_samples(
    ctx: &TransferContext,
    carrier: Carrier,
    chain_k: u64,
    samples: usize,
    cap: u128,
    rng: &mut ChaCha8Rng,
) -> Vec<FuzzySubset> {
    let n = ctx.carrier_size(carrier);
    if candidate_count(n, chain_k) <= cap {
        return crate::enumeration::all_fuzzy_subsets(carrier, n, chain_k, cap)
            .expect("count checked")
            .collect();
    }
    let checker = ctx.checker(carrier);
    let mut out: Vec<FuzzySubset> = (0..samples)
        .map(|_| random_fuzzy_subset(carrier, n, chain_k, rng))
        .collect();
    for i in 0..samples {
        let kind = IdealKind::ALL[i % IdealKind::ALL.len()];
        out.extend(random_fuzzy_ideal(checker, chain_k, kind, rng));
    }
    out.push(FuzzySubset::constant(carrier, n, MembershipValue::ONE));
    out.sort();
    out.dedup();
    out
}

/// Runs every check on the context: unities, preservation, well-definedness,
/// bijections and monotonicity. Deterministic for a fixed config.
pub fn run_suite(ctx: &TransferContext, config: &SuiteConfig) -> Result<TheoremReport, EnumerationError> {
    if config.chain_k == 0 {
        return Err(EnumerationError::InvalidSpec("chain_k must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = verify_unities(ctx);

    let mut samples = Vec::new();
    for carrier in [Carrier::S, Carrier::L, Carrier::R] {
        samples.extend(preservation_samples(
            ctx,
            carrier,
            config.chain_k,
            config.samples,
            config.enumeration_cap,
            &mut rng,
        ));
    }
    report.merge(verify_preservation(ctx, &samples));
    report.merge(verify_well_definedness(ctx, &samples));
    report.merge(verify_bijection_with(
        ctx,
        config.chain_k,
        config.enumeration_cap,
        config.force_ungated,
    )?);
    let monotone_seed = rng.gen();
    report.merge(verify_monotonicity(
        ctx,
        config.chain_k,
        config.monotone_pairs,
        monotone_seed,
    ));
    Ok(report)
}
