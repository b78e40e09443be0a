use crate::algebra::GammaSemiring;
use crate::fuzzy::{Carrier, FuzzyError, FuzzySubset, IdealChecker, MembershipValue};
use crate::operator::{
    build_operator_semiring, find_left_unity, find_right_unity, FiniteSemiring, OperatorError, Side,
    UnityWitness, DEFAULT_MAX_ELEMENTS,
};

/// A Γ-semiring together with its operator semirings, their unities, and
/// ideal checkers for all three carriers.
#[derive(Debug, Clone)]
pub struct TransferContext {
    pub g: GammaSemiring,
    pub l: FiniteSemiring,
    pub r: FiniteSemiring,
    pub left_unity: Option<UnityWitness>,
    pub right_unity: Option<UnityWitness>,
    s_checker: IdealChecker,
    l_checker: IdealChecker,
    r_checker: IdealChecker,
}

impl TransferContext {
    pub fn new(g: GammaSemiring) -> Result<Self, OperatorError> {
        Self::with_max_elements(g, DEFAULT_MAX_ELEMENTS)
    }

    pub fn with_max_elements(g: GammaSemiring, max_elements: usize) -> Result<Self, OperatorError> {
        let l = build_operator_semiring(&g, Side::Left, max_elements)?;
        let r = build_operator_semiring(&g, Side::Right, max_elements)?;
        let left_unity = find_left_unity(&g, &l);
        let right_unity = find_right_unity(&g, &r);
        Ok(Self {
            s_checker: IdealChecker::for_gamma(&g),
            l_checker: IdealChecker::for_semiring(&l),
            r_checker: IdealChecker::for_semiring(&r),
            g,
            l,
            r,
            left_unity,
            right_unity,
        })
    }

    pub fn has_both_unities(&self) -> bool {
        self.left_unity.is_some() && self.right_unity.is_some()
    }

    pub fn name(&self) -> &str {
        self.g.name().unwrap_or("unnamed")
    }

    pub fn checker(&self, carrier: Carrier) -> &IdealChecker {
        match carrier {
            Carrier::S => &self.s_checker,
            Carrier::L => &self.l_checker,
            Carrier::R => &self.r_checker,
        }
    }

    pub fn carrier_size(&self, carrier: Carrier) -> usize {
        match carrier {
            Carrier::S => self.g.s_size(),
            Carrier::L => self.l.size(),
            Carrier::R => self.r.size(),
        }
    }

    pub fn operator(&self, side: Side) -> &FiniteSemiring {
        match side {
            Side::Left => &self.l,
            Side::Right => &self.r,
        }
    }
}

fn min_of(values: impl Iterator<Item = MembershipValue>) -> MembershipValue {
    values.min().expect("carriers are nonempty")
}

/// `μ⁺(a) = min over α of μ([a,α])`, for `μ` on the left operator semiring.
pub fn plus(ctx: &TransferContext, mu: &FuzzySubset) -> Result<FuzzySubset, FuzzyError> {
    from_operator(ctx, mu, Side::Left)
}

/// `μ*(a) = min over α of μ([α,a])`, for `μ` on the right operator semiring.
pub fn star(ctx: &TransferContext, mu: &FuzzySubset) -> Result<FuzzySubset, FuzzyError> {
    from_operator(ctx, mu, Side::Right)
}

fn from_operator(ctx: &TransferContext, mu: &FuzzySubset, side: Side) -> Result<FuzzySubset, FuzzyError> {
    let sr = ctx.operator(side);
    mu.expect_on(Carrier::of_side(side), sr.size())?;
    let values = (0..ctx.g.s_size())
        .map(|a| min_of((0..ctx.g.g_size()).map(|alpha| mu.get(sr.generator_class(a, alpha)))))
        .collect();
    Ok(FuzzySubset::new(Carrier::S, values))
}

/// `σ⁺′(f) = min over a of σ(f(a))` for each class `f` of the left
/// operator semiring. Depends only on the class's action, so it is well
/// defined on congruence classes.
pub fn plus_prime(ctx: &TransferContext, sigma: &FuzzySubset) -> Result<FuzzySubset, FuzzyError> {
    to_operator(ctx, sigma, Side::Left)
}

/// `σ*′(f) = min over a of σ(Σ aαᵢxᵢ)` on the right operator semiring.
pub fn star_prime(ctx: &TransferContext, sigma: &FuzzySubset) -> Result<FuzzySubset, FuzzyError> {
    to_operator(ctx, sigma, Side::Right)
}

fn to_operator(ctx: &TransferContext, sigma: &FuzzySubset, side: Side) -> Result<FuzzySubset, FuzzyError> {
    sigma.expect_on(Carrier::S, ctx.g.s_size())?;
    let sr = ctx.operator(side);
    let values = sr
        .elements()
        .iter()
        .map(|f| min_of(f.image().iter().map(|&b| sigma.get(b))))
        .collect();
    Ok(FuzzySubset::new(Carrier::of_side(side), values))
}

/// The four transfer maps, by direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TransferMap {
    Plus,
    PlusPrime,
    Star,
    StarPrime,
}

impl TransferMap {
    pub const ALL: [TransferMap; 4] = [
        TransferMap::Plus,
        TransferMap::PlusPrime,
        TransferMap::Star,
        TransferMap::StarPrime,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TransferMap::Plus => "plus",
            TransferMap::PlusPrime => "plus-prime",
            TransferMap::Star => "star",
            TransferMap::StarPrime => "star-prime",
        }
    }

    pub fn source(self) -> Carrier {
        match self {
            TransferMap::Plus => Carrier::L,
            TransferMap::Star => Carrier::R,
            TransferMap::PlusPrime | TransferMap::StarPrime => Carrier::S,
        }
    }

    pub fn target(self) -> Carrier {
        match self {
            TransferMap::Plus | TransferMap::Star => Carrier::S,
            TransferMap::PlusPrime => Carrier::L,
            TransferMap::StarPrime => Carrier::R,
        }
    }

    pub fn apply(self, ctx: &TransferContext, f: &FuzzySubset) -> Result<FuzzySubset, FuzzyError> {
        match self {
            TransferMap::Plus => plus(ctx, f),
            TransferMap::PlusPrime => plus_prime(ctx, f),
            TransferMap::Star => star(ctx, f),
            TransferMap::StarPrime => star_prime(ctx, f),
        }
    }
}

impl std::str::FromStr for TransferMap {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TransferMap::ALL
            .into_iter()
            .find(|m| m.as_str() == s.replace('_', "-"))
            .ok_or_else(|| format!("unknown map `{s}` (expected plus, plus-prime, star or star-prime)"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{boolean, trivial, z2};
    use crate::operator::ActionTable;

    fn values(f: &FuzzySubset) -> Vec<String> {
        f.values().iter().map(ToString::to_string).collect()
    }

    fn on_classes(ctx: &TransferContext, side: Side, pairs: &[(&[usize], &str)]) -> FuzzySubset {
        let sr = ctx.operator(side);
        let mut v = vec![MembershipValue::ZERO; sr.size()];
        for (image, value) in pairs {
            v[sr.index_of(&ActionTable::new(image.to_vec())).unwrap()] = value.parse().unwrap();
        }
        FuzzySubset::new(Carrier::of_side(side), v)
    }

    #[test]
    fn plus_on_boolean() {
        let ctx = TransferContext::new(boolean()).unwrap();
        let mu = on_classes(&ctx, Side::Left, &[(&[0, 0], "1"), (&[0, 1], "1/3")]);
        assert_eq!(values(&plus(&ctx, &mu).unwrap()), ["1", "1/3"]);
        let mu = on_classes(&ctx, Side::Right, &[(&[0, 0], "1"), (&[0, 1], "1/3")]);
        assert_eq!(values(&star(&ctx, &mu).unwrap()), ["1", "1/3"]);
    }

    #[test]
    fn plus_prime_examples() {
        let ctx = TransferContext::new(boolean()).unwrap();
        let sigma = FuzzySubset::new(Carrier::S, vec![MembershipValue::ONE, "1/2".parse().unwrap()]);
        let image = plus_prime(&ctx, &sigma).unwrap();
        assert_eq!(
            image,
            on_classes(&ctx, Side::Left, &[(&[0, 0], "1"), (&[0, 1], "1/2")])
        );
        let image = star_prime(&ctx, &sigma).unwrap();
        assert_eq!(
            image,
            on_classes(&ctx, Side::Right, &[(&[0, 0], "1"), (&[0, 1], "1/2")])
        );

        let ctx = TransferContext::new(z2()).unwrap();
        let sigma = FuzzySubset::new(Carrier::S, vec![MembershipValue::ONE, MembershipValue::ZERO]);
        let image = plus_prime(&ctx, &sigma).unwrap();
        assert_eq!(
            image,
            on_classes(&ctx, Side::Left, &[(&[0, 0], "1"), (&[0, 1], "0")])
        );
    }

    #[test]
    fn constants_map_to_constants() {
        for g in [trivial(), boolean(), z2()] {
            let ctx = TransferContext::new(g).unwrap();
            let c: MembershipValue = "2/5".parse().unwrap();
            for map in TransferMap::ALL {
                let input = FuzzySubset::constant(map.source(), ctx.carrier_size(map.source()), c);
                let out = map.apply(&ctx, &input).unwrap();
                assert_eq!(
                    out,
                    FuzzySubset::constant(map.target(), ctx.carrier_size(map.target()), c)
                );
            }
        }
    }

    #[test]
    fn trivial_structure_plus_copies_the_single_value() {
        let ctx = TransferContext::new(trivial()).unwrap();
        let mu = FuzzySubset::new(Carrier::L, vec!["3/7".parse().unwrap()]);
        assert_eq!(plus(&ctx, &mu).unwrap().values(), mu.values());
    }

    #[test]
    fn maps_reject_wrong_carriers() {
        let ctx = TransferContext::new(boolean()).unwrap();
        let sigma = FuzzySubset::constant(Carrier::S, 2, MembershipValue::ONE);
        assert!(plus(&ctx, &sigma).is_err());
        assert!(star(&ctx, &sigma).is_err());
        let mu = FuzzySubset::constant(Carrier::L, ctx.l.size(), MembershipValue::ONE);
        assert!(plus_prime(&ctx, &mu).is_err());
        assert!(star(&ctx, &mu).is_err());
    }
}
