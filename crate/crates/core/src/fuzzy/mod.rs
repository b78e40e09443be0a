//! Fuzzy subsets with exact rational membership values, and the ideal
//! predicates on Γ-semirings and on operator semirings.

mod ideal;
mod text;

pub use ideal::{check_gamma_ideal, check_semiring_ideal, IdealChecker, IdealViolation};
pub use text::{parse_fuzzy_subset, FuzzyParseError};

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use thiserror::Error;

use crate::operator::Side;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FuzzyError {
    #[error("fuzzy subset lives on {found_carrier} with {found_len} values, expected {expected_carrier} with {expected_len}")]
    CarrierMismatch {
        expected_carrier: Carrier,
        expected_len: usize,
        found_carrier: Carrier,
        found_len: usize,
    },
    #[error("invalid membership value `{0}`")]
    InvalidMembership(String),
}

/// An exact rational in `[0, 1]`, kept in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MembershipValue(Ratio<u64>);

impl MembershipValue {
    pub const ZERO: MembershipValue = MembershipValue(Ratio::new_raw(0, 1));
    pub const ONE: MembershipValue = MembershipValue(Ratio::new_raw(1, 1));

    pub fn new(numer: u64, denom: u64) -> Result<Self, FuzzyError> {
        if denom == 0 || numer > denom {
            return Err(FuzzyError::InvalidMembership(format!("{numer}/{denom}")));
        }
        Ok(Self(Ratio::new(numer, denom)))
    }

    /// The `step`-th point `step/k` of the chain `{0, 1/k, …, 1}`.
    pub fn chain_point(step: u64, k: u64) -> Self {
        Self::new(step, k).expect("chain points lie in [0, 1]")
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }
}

impl fmt::Display for MembershipValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl FromStr for MembershipValue {
    type Err = FuzzyError;

    /// Accepts `p/q` or a bare integer `p`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let invalid = || FuzzyError::InvalidMembership(s.to_string());
        let digits = |t: &str| -> Result<u64, FuzzyError> {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) {
                return Err(invalid());
            }
            t.parse().map_err(|_| invalid())
        };
        let (numer, denom) = match s.split_once('/') {
            Some((p, q)) => (digits(p)?, digits(q)?),
            None => (digits(s)?, 1),
        };
        Self::new(numer, denom).map_err(|_| invalid())
    }
}

/// Which structure a fuzzy subset is defined on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Carrier {
    /// the Γ-semiring `S`
    S,
    /// the left operator semiring
    L,
    /// the right operator semiring
    R,
}

impl Carrier {
    pub fn of_side(side: Side) -> Self {
        match side {
            Side::Left => Carrier::L,
            Side::Right => Carrier::R,
        }
    }
}

impl fmt::Display for Carrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Carrier::S => "S",
            Carrier::L => "L",
            Carrier::R => "R",
        })
    }
}

impl FromStr for Carrier {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "S" | "s" => Ok(Carrier::S),
            "L" | "l" => Ok(Carrier::L),
            "R" | "r" => Ok(Carrier::R),
            other => Err(format!("unknown carrier `{other}` (expected S, L or R)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FuzzySubset {
    carrier: Carrier,
    values: Vec<MembershipValue>,
}

impl FuzzySubset {
    pub fn new(carrier: Carrier, values: Vec<MembershipValue>) -> Self {
        Self { carrier, values }
    }

    pub fn constant(carrier: Carrier, len: usize, value: MembershipValue) -> Self {
        Self::new(carrier, vec![value; len])
    }

    /// Builds a subset from chain steps: `steps[i] / k`.
    pub fn from_chain(carrier: Carrier, steps: &[u64], k: u64) -> Self {
        Self::new(
            carrier,
            steps
                .iter()
                .map(|&s| MembershipValue::chain_point(s, k))
                .collect(),
        )
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn values(&self) -> &[MembershipValue] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, i: usize) -> MembershipValue {
        self.values[i]
    }

    pub(crate) fn expect_on(&self, carrier: Carrier, len: usize) -> Result<(), FuzzyError> {
        if self.carrier != carrier || self.values.len() != len {
            return Err(FuzzyError::CarrierMismatch {
                expected_carrier: carrier,
                expected_len: len,
                found_carrier: self.carrier,
                found_len: self.values.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for FuzzySubset {
    /// One `index p/q` line per element.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.values.iter().enumerate() {
            writeln!(f, "{i} {v}")?;
        }
        Ok(())
    }
}

/// `a(x) ≤ b(x)` for every `x`.
pub fn pointwise_leq(a: &FuzzySubset, b: &FuzzySubset) -> Result<bool, FuzzyError> {
    b.expect_on(a.carrier, a.len())?;
    Ok(a.values.iter().zip(&b.values).all(|(x, y)| x <= y))
}

/// The ideal predicates. `k_*` and `h_*` add their closure condition on top
/// of the corresponding base predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdealKind {
    Left,
    Right,
    TwoSided,
    KLeft,
    KRight,
    KTwoSided,
    HLeft,
    HRight,
    HTwoSided,
}

/// The absorption requirement underneath an [`IdealKind`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Absorption {
    Left,
    Right,
    TwoSided,
}

impl Absorption {
    pub fn left(self) -> bool {
        matches!(self, Absorption::Left | Absorption::TwoSided)
    }

    pub fn right(self) -> bool {
        matches!(self, Absorption::Right | Absorption::TwoSided)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Closure {
    K,
    H,
}

impl IdealKind {
    pub const ALL: [IdealKind; 9] = [
        IdealKind::Left,
        IdealKind::Right,
        IdealKind::TwoSided,
        IdealKind::KLeft,
        IdealKind::KRight,
        IdealKind::KTwoSided,
        IdealKind::HLeft,
        IdealKind::HRight,
        IdealKind::HTwoSided,
    ];

    pub fn absorption(self) -> Absorption {
        match self {
            IdealKind::Left | IdealKind::KLeft | IdealKind::HLeft => Absorption::Left,
            IdealKind::Right | IdealKind::KRight | IdealKind::HRight => Absorption::Right,
            IdealKind::TwoSided | IdealKind::KTwoSided | IdealKind::HTwoSided => Absorption::TwoSided,
        }
    }

    pub fn closure(self) -> Option<Closure> {
        match self {
            IdealKind::Left | IdealKind::Right | IdealKind::TwoSided => None,
            IdealKind::KLeft | IdealKind::KRight | IdealKind::KTwoSided => Some(Closure::K),
            IdealKind::HLeft | IdealKind::HRight | IdealKind::HTwoSided => Some(Closure::H),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            IdealKind::Left => "left",
            IdealKind::Right => "right",
            IdealKind::TwoSided => "two_sided",
            IdealKind::KLeft => "k_left",
            IdealKind::KRight => "k_right",
            IdealKind::KTwoSided => "k_two_sided",
            IdealKind::HLeft => "h_left",
            IdealKind::HRight => "h_right",
            IdealKind::HTwoSided => "h_two_sided",
        }
    }
}

impl fmt::Display for IdealKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IdealKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let normalized = s.replace('-', "_");
        IdealKind::ALL
            .into_iter()
            .find(|k| k.as_str() == normalized)
            .ok_or_else(|| format!("unknown ideal kind `{s}`"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> MembershipValue {
        s.parse().unwrap()
    }

    #[test]
    fn membership_values_are_reduced_and_bounded() {
        assert_eq!(v("2/4"), MembershipValue::new(1, 2).unwrap());
        assert_eq!(v("2/4").to_string(), "1/2");
        assert_eq!(v("3/3").to_string(), "1");
        assert_eq!(v("0/7"), MembershipValue::ZERO);
        assert_eq!(v("1"), MembershipValue::ONE);
        for bad in ["3/2", "1/0", "-1/2", "", "1/", "a/b", "1.5", "+1"] {
            assert!(bad.parse::<MembershipValue>().is_err(), "{bad}");
        }
        assert!(v("1/3") < v("1/2"));
    }

    #[test]
    fn pointwise_leq_examples() {
        let sigma = FuzzySubset::new(Carrier::S, vec![v("0"), v("1/2")]);
        assert!(pointwise_leq(&sigma, &sigma).unwrap());
        let tau = FuzzySubset::new(Carrier::S, vec![v("1"), v("1/2")]);
        assert!(pointwise_leq(&sigma, &tau).unwrap());
        let a = FuzzySubset::new(Carrier::S, vec![v("1"), v("0")]);
        let b = FuzzySubset::new(Carrier::S, vec![v("0"), v("1")]);
        assert!(!pointwise_leq(&a, &b).unwrap());
        let other = FuzzySubset::new(Carrier::L, vec![v("1"), v("0")]);
        assert!(matches!(
            pointwise_leq(&a, &other),
            Err(FuzzyError::CarrierMismatch { .. })
        ));
        let short = FuzzySubset::new(Carrier::S, vec![v("1")]);
        assert!(pointwise_leq(&a, &short).is_err());
    }

    #[test]
    fn ideal_kind_names() {
        for kind in IdealKind::ALL {
            assert_eq!(kind.as_str().parse::<IdealKind>(), Ok(kind));
        }
        assert_eq!("k-two-sided".parse::<IdealKind>(), Ok(IdealKind::KTwoSided));
        assert!("k".parse::<IdealKind>().is_err());
        assert_eq!(IdealKind::HRight.absorption(), Absorption::Right);
        assert_eq!(IdealKind::HRight.closure(), Some(Closure::H));
    }
}
