use std::collections::BTreeMap;
use std::fmt;

use super::{Carrier, Closure, FuzzyError, FuzzySubset, IdealKind, MembershipValue};
use crate::algebra::GammaSemiring;
use crate::operator::FiniteSemiring;

/// The first failing inequality of an ideal check.
///
/// `alpha` is present for Γ-semirings and absent for ordinary semirings.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IdealViolation {
    /// `μ(a+b) < min(μ(a), μ(b))`
    Additive { a: usize, b: usize },
    /// `μ(aαb) < μ(b)`
    LeftAbsorbing {
        a: usize,
        alpha: Option<usize>,
        b: usize,
    },
    /// `μ(aαb) < μ(a)`
    RightAbsorbing {
        a: usize,
        alpha: Option<usize>,
        b: usize,
    },
    /// `μ(x) < min(μ(x+y), μ(y))`
    KClosure { x: usize, y: usize },
    /// `x+y₁+z = y₂+z` but `μ(x) < min(μ(y₁), μ(y₂))`
    HClosure {
        x: usize,
        z: usize,
        y1: usize,
        y2: usize,
    },
}

impl IdealViolation {
    pub fn condition(&self) -> &'static str {
        match self {
            IdealViolation::Additive { .. } => "additive",
            IdealViolation::LeftAbsorbing { .. } => "left-absorbing",
            IdealViolation::RightAbsorbing { .. } => "right-absorbing",
            IdealViolation::KClosure { .. } => "k-closure",
            IdealViolation::HClosure { .. } => "h-closure",
        }
    }
}

impl fmt::Display for IdealViolation {
    /// The witness tuple, e.g. `a=0 alpha=0 b=1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            IdealViolation::Additive { a, b } => write!(f, "a={a} b={b}"),
            IdealViolation::LeftAbsorbing { a, alpha, b }
            | IdealViolation::RightAbsorbing { a, alpha, b } => match alpha {
                Some(alpha) => write!(f, "a={a} alpha={alpha} b={b}"),
                None => write!(f, "a={a} b={b}"),
            },
            IdealViolation::KClosure { x, y } => write!(f, "x={x} y={y}"),
            IdealViolation::HClosure { x, z, y1, y2 } => write!(f, "x={x} z={z} y1={y1} y2={y2}"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Product {
    a: usize,
    alpha: Option<usize>,
    b: usize,
    value: usize,
}

/// Precomputed tables for deciding every [`IdealKind`] on one structure.
///
/// Building it costs `O(n⁴)` for the h-relation; checks afterwards are
/// cheap enough to run over whole enumerations.
#[derive(Debug, Clone)]
pub struct IdealChecker {
    carrier: Carrier,
    n: usize,
    add: Vec<usize>,
    // in lexicographic order of (a, alpha, b)
    products: Vec<Product>,
    // one (x, z, y1, y2) per related (x, y1, y2) with the smallest z, sorted
    h_quads: Vec<(usize, usize, usize, usize)>,
}

impl IdealChecker {
    pub fn for_gamma(g: &GammaSemiring) -> Self {
        let n = g.s_size();
        let mut products = Vec::with_capacity(n * n * g.g_size());
        for a in 0..n {
            for alpha in 0..g.g_size() {
                for b in 0..n {
                    products.push(Product {
                        a,
                        alpha: Some(alpha),
                        b,
                        value: g.ternary_product(a, alpha, b),
                    });
                }
            }
        }
        Self::build(Carrier::S, n, |a, b| g.add_s(a, b), products)
    }

    pub fn for_semiring(sr: &FiniteSemiring) -> Self {
        let n = sr.size();
        let mut products = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                products.push(Product {
                    a,
                    alpha: None,
                    b,
                    value: sr.mul(a, b),
                });
            }
        }
        Self::build(Carrier::of_side(sr.side()), n, |a, b| sr.add(a, b), products)
    }

    fn build(
        carrier: Carrier,
        n: usize,
        add: impl Fn(usize, usize) -> usize,
        products: Vec<Product>,
    ) -> Self {
        let add: Vec<usize> = (0..n * n).map(|i| add(i / n, i % n)).collect();
        let plus = |a: usize, b: usize| add[a * n + b];
        let mut smallest_z: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
        for x in 0..n {
            for y1 in 0..n {
                let xy1 = plus(x, y1);
                for z in 0..n {
                    let lhs = plus(xy1, z);
                    for y2 in 0..n {
                        if lhs == plus(y2, z) {
                            smallest_z.entry((x, y1, y2)).or_insert(z);
                        }
                    }
                }
            }
        }
        let mut h_quads: Vec<_> = smallest_z
            .into_iter()
            .map(|((x, y1, y2), z)| (x, z, y1, y2))
            .collect();
        h_quads.sort_unstable();
        Self {
            carrier,
            n,
            add,
            products,
            h_quads,
        }
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    fn plus(&self, a: usize, b: usize) -> usize {
        self.add[a * self.n + b]
    }

    /// Returns the first violated inequality, checking the additive
    /// condition, then left absorption, right absorption, and finally the
    /// k- or h-condition. Within each condition the witness is the
    /// lexicographically smallest tuple.
    pub fn check(&self, mu: &[MembershipValue], kind: IdealKind) -> Option<IdealViolation> {
        debug_assert_eq!(mu.len(), self.n);
        for a in 0..self.n {
            for b in 0..self.n {
                if mu[self.plus(a, b)] < mu[a].min(mu[b]) {
                    return Some(IdealViolation::Additive { a, b });
                }
            }
        }
        let absorption = kind.absorption();
        if absorption.left() {
            if let Some(p) = self.products.iter().find(|p| mu[p.value] < mu[p.b]) {
                return Some(IdealViolation::LeftAbsorbing {
                    a: p.a,
                    alpha: p.alpha,
                    b: p.b,
                });
            }
        }
        if absorption.right() {
            if let Some(p) = self.products.iter().find(|p| mu[p.value] < mu[p.a]) {
                return Some(IdealViolation::RightAbsorbing {
                    a: p.a,
                    alpha: p.alpha,
                    b: p.b,
                });
            }
        }
        match kind.closure() {
            None => None,
            Some(Closure::K) => {
                for x in 0..self.n {
                    for y in 0..self.n {
                        if mu[x] < mu[self.plus(x, y)].min(mu[y]) {
                            return Some(IdealViolation::KClosure { x, y });
                        }
                    }
                }
                None
            }
            Some(Closure::H) => self
                .h_quads
                .iter()
                .find(|&&(x, _, y1, y2)| mu[x] < mu[y1].min(mu[y2]))
                .map(|&(x, z, y1, y2)| IdealViolation::HClosure { x, z, y1, y2 }),
        }
    }

    /// Re-evaluates the single inequality named by `v` directly against the
    /// tables; true iff it is violated.
    pub fn violates(&self, mu: &[MembershipValue], v: &IdealViolation) -> bool {
        let product = |a: usize, alpha: Option<usize>, b: usize| {
            self.products
                .iter()
                .find(|p| p.a == a && p.alpha == alpha && p.b == b)
                .map(|p| p.value)
        };
        match *v {
            IdealViolation::Additive { a, b } => mu[self.plus(a, b)] < mu[a].min(mu[b]),
            IdealViolation::LeftAbsorbing { a, alpha, b } => {
                product(a, alpha, b).is_some_and(|p| mu[p] < mu[b])
            }
            IdealViolation::RightAbsorbing { a, alpha, b } => {
                product(a, alpha, b).is_some_and(|p| mu[p] < mu[a])
            }
            IdealViolation::KClosure { x, y } => mu[x] < mu[self.plus(x, y)].min(mu[y]),
            IdealViolation::HClosure { x, z, y1, y2 } => {
                self.plus(self.plus(x, y1), z) == self.plus(y2, z) && mu[x] < mu[y1].min(mu[y2])
            }
        }
    }

    /// Raises values until `mu` satisfies `kind`: each sweep lifts `μ(a+b)`,
    /// `μ(aαb)` and the k/h targets to the bounds their inequalities demand.
    /// Values only ever increase and stay within the set already present, so
    /// the result is the least such subset above the input. Returns false if
    /// `max_sweeps` sweeps do not reach a fixed point.
    pub fn repair(&self, mu: &mut [MembershipValue], kind: IdealKind, max_sweeps: usize) -> bool {
        let absorption = kind.absorption();
        for _ in 0..max_sweeps {
            if self.check(mu, kind).is_none() {
                return true;
            }
            let raise = |mu: &mut [MembershipValue], i: usize, bound: MembershipValue| {
                if mu[i] < bound {
                    mu[i] = bound;
                }
            };
            for a in 0..self.n {
                for b in 0..self.n {
                    let bound = mu[a].min(mu[b]);
                    raise(mu, self.plus(a, b), bound);
                }
            }
            for p in &self.products {
                if absorption.left() {
                    let bound = mu[p.b];
                    raise(mu, p.value, bound);
                }
                if absorption.right() {
                    let bound = mu[p.a];
                    raise(mu, p.value, bound);
                }
            }
            match kind.closure() {
                None => {}
                Some(Closure::K) => {
                    for x in 0..self.n {
                        for y in 0..self.n {
                            let bound = mu[self.plus(x, y)].min(mu[y]);
                            raise(mu, x, bound);
                        }
                    }
                }
                Some(Closure::H) => {
                    for &(x, _, y1, y2) in &self.h_quads {
                        let bound = mu[y1].min(mu[y2]);
                        raise(mu, x, bound);
                    }
                }
            }
        }
        self.check(mu, kind).is_none()
    }
}

/// Decides whether `sigma` is a fuzzy ideal of `kind` of the Γ-semiring.
/// `Ok(None)` means it is; `Ok(Some(v))` carries the first counterexample.
pub fn check_gamma_ideal(
    g: &GammaSemiring,
    sigma: &FuzzySubset,
    kind: IdealKind,
) -> Result<Option<IdealViolation>, FuzzyError> {
    sigma.expect_on(Carrier::S, g.s_size())?;
    Ok(IdealChecker::for_gamma(g).check(sigma.values(), kind))
}

/// Same contract as [`check_gamma_ideal`] on an operator semiring.
pub fn check_semiring_ideal(
    sr: &FiniteSemiring,
    mu: &FuzzySubset,
    kind: IdealKind,
) -> Result<Option<IdealViolation>, FuzzyError> {
    mu.expect_on(Carrier::of_side(sr.side()), sr.size())?;
    Ok(IdealChecker::for_semiring(sr).check(mu.values(), kind))
}
