//! Instance generation and exhaustive fuzzy-ideal enumeration over the
//! membership chains `C_k = {0, 1/k, …, 1}`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

use crate::algebra::{validate_gamma_semiring, GammaSemiring};
use crate::fuzzy::{Carrier, FuzzySubset, IdealChecker, IdealKind, MembershipValue};

/// Default bound on `(k+1)^n` candidate subsets.
pub const DEFAULT_ENUMERATION_CAP: u128 = 100_000;

/// Default bound on the number of product tables the exhaustive family visits.
pub const DEFAULT_TABLE_CAP: u128 = 1_000_000;

/// Sweeps allowed when repairing a random subset into an ideal.
pub const REPAIR_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerationError {
    #[error("{what} needs {needed} candidates, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        needed: u128,
        cap: u128,
    },
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// `aαb := a·α·b` inside a catalog semiring, `Γ` an additively closed subset.
    FromSemiringSubset,
    /// Every product table over catalog additions, filtered by validation.
    ExhaustiveTables,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::FromSemiringSubset => "from_semiring_subset",
            Family::ExhaustiveTables => "exhaustive_tables",
        })
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.replace('-', "_").as_str() {
            "from_semiring_subset" | "catalog" => Ok(Family::FromSemiringSubset),
            "exhaustive_tables" | "exhaustive" => Ok(Family::ExhaustiveTables),
            _ => Err(format!("unknown family `{s}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GeneratorSpec {
    pub s_size: usize,
    pub g_size: usize,
    pub chain_k: u64,
    pub seed: u64,
    pub family: Family,
}

impl GeneratorSpec {
    fn check(&self) -> Result<(), EnumerationError> {
        if self.s_size == 0 || self.g_size == 0 {
            return Err(EnumerationError::InvalidSpec("sizes must be at least 1".into()));
        }
        if self.chain_k == 0 {
            return Err(EnumerationError::InvalidSpec("chain_k must be at least 1".into()));
        }
        Ok(())
    }
}

/// A finite semiring from the built-in catalog.
#[derive(Debug, Clone)]
pub struct CatalogSemiring {
    pub name: String,
    pub size: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
}

impl CatalogSemiring {
    fn from_fn(
        name: String,
        size: usize,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let table =
            |f: &dyn Fn(usize, usize) -> usize| (0..size * size).map(|i| f(i / size, i % size)).collect();
        Self {
            name,
            size,
            add: table(&add),
            mul: table(&mul),
        }
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }

    /// The Γ-semiring on this carrier with `Γ = gamma` (an additively closed
    /// subset, listed in increasing order) and `aαb = a·α·b`.
    pub fn gamma_semiring(&self, gamma: &[usize]) -> Option<GammaSemiring> {
        let position = |v: usize| gamma.iter().position(|&x| x == v);
        let closed = gamma
            .iter()
            .all(|&a| gamma.iter().all(|&b| position(self.add(a, b)).is_some()));
        if gamma.is_empty() || !closed {
            return None;
        }
        let labels: Vec<String> = gamma.iter().map(usize::to_string).collect();
        let name = format!("{}-G{}", self.name, labels.join("."));
        GammaSemiring::from_fn(
            Some(name),
            self.size,
            gamma.len(),
            |a, b| self.add(a, b),
            |i, j| position(self.add(gamma[i], gamma[j])).expect("gamma is closed"),
            |a, i, b| self.mul(self.mul(a, gamma[i]), b),
        )
        .ok()
    }
}

/// Catalog semirings on `{0, …, n-1}`: the Boolean semiring (n = 2), the
/// max-min and min-max chains, `ℤ_n` under `+` and `·`, and the naturals
/// truncated at `n-1`.
pub fn semiring_catalog(n: usize) -> Vec<CatalogSemiring> {
    let mut out = Vec::new();
    if n == 2 {
        out.push(CatalogSemiring::from_fn(
            "bool".into(),
            2,
            |a, b| a | b,
            |a, b| a & b,
        ));
    }
    out.push(CatalogSemiring::from_fn(
        format!("maxmin{n}"),
        n,
        usize::max,
        usize::min,
    ));
    out.push(CatalogSemiring::from_fn(
        format!("minmax{n}"),
        n,
        usize::min,
        usize::max,
    ));
    out.push(CatalogSemiring::from_fn(
        format!("z{n}"),
        n,
        |a, b| (a + b) % n,
        |a, b| (a * b) % n,
    ));
    let top = n - 1;
    out.push(CatalogSemiring::from_fn(
        format!("capped{n}"),
        n,
        |a, b| (a + b).min(top),
        |a, b| (a * b).min(top),
    ));
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Streams Γ-semirings for `spec`. Every emitted structure passes
/// validation and structures with identical tables are emitted once.
pub fn generate_gamma_semirings(
    spec: &GeneratorSpec,
) -> Result<Box<dyn Iterator<Item = GammaSemiring>>, EnumerationError> {
    generate_with_cap(spec, DEFAULT_TABLE_CAP)
}

pub fn generate_with_cap(
    spec: &GeneratorSpec,
    table_cap: u128,
) -> Result<Box<dyn Iterator<Item = GammaSemiring>>, EnumerationError> {
    spec.check()?;
    let (s, m) = (spec.s_size, spec.g_size);
    match spec.family {
        Family::FromSemiringSubset => {
            let mut seen = HashSet::new();
            let iter = semiring_catalog(s)
                .into_iter()
                .flat_map(move |t| {
                    combinations(t.size, m)
                        .into_iter()
                        .filter_map(|gamma| t.gamma_semiring(&gamma))
                        .collect::<Vec<_>>()
                })
                .filter(|g| validate_gamma_semiring(g).ok())
                .filter(move |g| seen.insert(table_key(g)));
            Ok(Box::new(iter))
        }
        Family::ExhaustiveTables => {
            let cells = (m * s * s) as u32;
            let per_pair = (s as u128).checked_pow(cells).unwrap_or(u128::MAX);
            let adds_s = distinct_additions(s);
            let adds_g = distinct_additions(m);
            let needed = per_pair.saturating_mul((adds_s.len() * adds_g.len()) as u128);
            if needed > table_cap {
                return Err(EnumerationError::CapExceeded {
                    what: "exhaustive product tables",
                    needed,
                    cap: table_cap,
                });
            }
            let mut pairs = Vec::new();
            for (sa_name, sa) in &adds_s {
                for (ga_name, ga) in &adds_g {
                    pairs.push((format!("{sa_name}.{ga_name}"), sa.clone(), ga.clone()));
                }
            }
            let iter = pairs.into_iter().flat_map(move |(label, sa, ga)| {
                (0..per_pair as u64).filter_map(move |code| {
                    let mut digits = code;
                    let mut cells = Vec::with_capacity(m * s * s);
                    for _ in 0..m * s * s {
                        cells.push((digits % s as u64) as usize);
                        digits /= s as u64;
                    }
                    // least significant digit last so codes run in table order
                    cells.reverse();
                    let g = GammaSemiring::from_fn(
                        Some(format!("exh-{label}-{code}")),
                        s,
                        m,
                        |a, b| sa[a * s + b],
                        |a, b| ga[a * m + b],
                        |a, alpha, b| cells[(alpha * s + a) * s + b],
                    )
                    .ok()?;
                    validate_gamma_semiring(&g).ok().then_some(g)
                })
            });
            Ok(Box::new(iter))
        }
    }
}

fn distinct_additions(n: usize) -> Vec<(String, Vec<usize>)> {
    let mut out: Vec<(String, Vec<usize>)> = Vec::new();
    for t in semiring_catalog(n) {
        if !out.iter().any(|(_, table)| *table == t.add) {
            out.push((t.name.clone(), t.add.clone()));
        }
    }
    out
}

fn table_key(g: &GammaSemiring) -> GammaSemiring {
    let mut key = g.clone();
    key.clear_name();
    key
}

/// `(k+1)^n`, saturating.
pub fn candidate_count(n: usize, chain_k: u64) -> u128 {
    (chain_k as u128 + 1).checked_pow(n as u32).unwrap_or(u128::MAX)
}

/// Every map `carrier → C_k` in lexicographic order (index 0 most
/// significant, values increasing).
pub fn all_fuzzy_subsets(
    carrier: Carrier,
    n: usize,
    chain_k: u64,
    cap: u128,
) -> Result<impl Iterator<Item = FuzzySubset>, EnumerationError> {
    let needed = candidate_count(n, chain_k);
    if needed > cap {
        return Err(EnumerationError::CapExceeded {
            what: "fuzzy subset enumeration",
            needed,
            cap,
        });
    }
    let chain: Vec<MembershipValue> = (0..=chain_k)
        .map(|i| MembershipValue::chain_point(i, chain_k))
        .collect();
    Ok((0..needed as u64).map(move |code| {
        let mut digits = code;
        let mut values = vec![MembershipValue::ZERO; n];
        for slot in values.iter_mut().rev() {
            *slot = chain[(digits % (chain_k + 1)) as usize];
            digits /= chain_k + 1;
        }
        FuzzySubset::new(carrier, values)
    }))
}

/// All fuzzy ideals of `kind` with values in `C_k`, lexicographically ordered.
pub fn enumerate_fuzzy_ideals(
    checker: &IdealChecker,
    chain_k: u64,
    kind: IdealKind,
) -> Result<Vec<FuzzySubset>, EnumerationError> {
    enumerate_with_cap(checker, chain_k, kind, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_with_cap(
    checker: &IdealChecker,
    chain_k: u64,
    kind: IdealKind,
    cap: u128,
) -> Result<Vec<FuzzySubset>, EnumerationError> {
    if chain_k == 0 {
        return Err(EnumerationError::InvalidSpec("chain_k must be at least 1".into()));
    }
    Ok(
        all_fuzzy_subsets(checker.carrier(), checker.size(), chain_k, cap)?
            .filter(|f| checker.check(f.values(), kind).is_none())
            .collect(),
    )
}

/// A uniformly random map `carrier → C_k`.
pub fn random_fuzzy_subset<R: Rng>(carrier: Carrier, n: usize, chain_k: u64, rng: &mut R) -> FuzzySubset {
    let steps: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=chain_k)).collect();
    FuzzySubset::from_chain(carrier, &steps, chain_k)
}

/// A random subset repaired into an ideal of `kind`, or `None` if the
/// repair does not settle within [`REPAIR_SWEEPS`] sweeps.
pub fn random_fuzzy_ideal<R: Rng>(
    checker: &IdealChecker,
    chain_k: u64,
    kind: IdealKind,
    rng: &mut R,
) -> Option<FuzzySubset> {
    let raw = random_fuzzy_subset(checker.carrier(), checker.size(), chain_k, rng);
    let mut values = raw.values().to_vec();
    checker
        .repair(&mut values, kind, REPAIR_SWEEPS)
        .then(|| FuzzySubset::new(checker.carrier(), values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{boolean, trivial, z2};
    use crate::operator::build_left_operator_semiring;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn spec(s: usize, g: usize, family: Family) -> GeneratorSpec {
        GeneratorSpec {
            s_size: s,
            g_size: g,
            chain_k: 2,
            seed: 0,
            family,
        }
    }

    fn same_tables(a: &GammaSemiring, b: &GammaSemiring) -> bool {
        a.same_tables(b)
    }

    #[test]
    fn catalog_reproduces_the_shipped_examples() {
        let bool_t = semiring_catalog(2)
            .into_iter()
            .find(|t| t.name == "bool")
            .unwrap();
        assert!(same_tables(&bool_t.gamma_semiring(&[1]).unwrap(), &boolean()));
        let z = semiring_catalog(2).into_iter().find(|t| t.name == "z2").unwrap();
        // {1} is not closed under addition mod 2
        assert!(z.gamma_semiring(&[1]).is_none());
        assert!(same_tables(&z.gamma_semiring(&[0, 1]).unwrap(), &z2()));

        let all: Vec<_> = generate_gamma_semirings(&spec(1, 1, Family::FromSemiringSubset))
            .unwrap()
            .collect();
        assert_eq!(all.len(), 1);
        assert!(same_tables(&all[0], &trivial()));
    }

    #[test]
    fn generated_structures_are_valid_and_distinct() {
        for s in 1..=4 {
            for g in 1..=3 {
                let all: Vec<_> = generate_gamma_semirings(&spec(s, g, Family::FromSemiringSubset))
                    .unwrap()
                    .collect();
                let mut keys = HashSet::new();
                for x in &all {
                    assert!(validate_gamma_semiring(x).ok());
                    assert!(keys.insert(table_key(x)), "{:?} duplicated", x.name());
                }
            }
        }
    }

    #[test]
    fn exhaustive_family() {
        let all: Vec<_> = generate_gamma_semirings(&spec(2, 1, Family::ExhaustiveTables))
            .unwrap()
            .collect();
        assert!(!all.is_empty());
        assert!(all.iter().all(|g| validate_gamma_semiring(g).ok()));
        assert!(all.iter().any(|g| same_tables(g, &boolean())));
        assert!(matches!(
            generate_with_cap(&spec(3, 2, Family::ExhaustiveTables), 1000),
            Err(EnumerationError::CapExceeded { .. })
        ));
        assert!(generate_gamma_semirings(&spec(0, 1, Family::ExhaustiveTables)).is_err());
    }

    #[test]
    fn boolean_has_six_two_sided_ideals_over_c2() {
        let ideals =
            enumerate_fuzzy_ideals(&IdealChecker::for_gamma(&boolean()), 2, IdealKind::TwoSided).unwrap();
        assert_eq!(ideals.len(), 6);
        assert!(ideals.iter().all(|f| f.get(0) >= f.get(1)));
        assert!(ideals.windows(2).all(|w| w[0].values() < w[1].values()));
    }

    #[test]
    fn trivial_structure_crisp_case() {
        let ideals =
            enumerate_fuzzy_ideals(&IdealChecker::for_gamma(&trivial()), 1, IdealKind::HTwoSided).unwrap();
        assert_eq!(ideals.len(), 2);
    }

    #[test]
    fn constants_are_always_enumerated() {
        let l = build_left_operator_semiring(&z2()).unwrap();
        let checker = IdealChecker::for_semiring(&l);
        for kind in IdealKind::ALL {
            let ideals = enumerate_fuzzy_ideals(&checker, 3, kind).unwrap();
            for step in 0..=3 {
                let c = FuzzySubset::constant(Carrier::L, l.size(), MembershipValue::chain_point(step, 3));
                assert!(ideals.contains(&c));
            }
        }
    }

    #[test]
    fn enumeration_cap() {
        let checker = IdealChecker::for_gamma(&boolean());
        assert!(matches!(
            enumerate_with_cap(&checker, 2, IdealKind::Left, 8),
            Err(EnumerationError::CapExceeded { needed: 9, .. })
        ));
        assert_eq!(candidate_count(2, 2), 9);
    }

    #[test]
    fn random_ideals_pass_their_predicate() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = generate_gamma_semirings(&spec(3, 2, Family::FromSemiringSubset))
            .unwrap()
            .next()
            .unwrap();
        let checker = IdealChecker::for_gamma(&g);
        for kind in IdealKind::ALL {
            let f = random_fuzzy_ideal(&checker, 4, kind, &mut rng).unwrap();
            assert_eq!(checker.check(f.values(), kind), None);
        }
    }
}
