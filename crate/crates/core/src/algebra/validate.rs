use std::fmt;

use super::GammaSemiring;

/// One checked equation family.
///
/// Witness tuples list element indices in the order the variables appear in
/// the equation, e.g. `(a, α, b, β, c)` for [`Axiom::MixedAssociative`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    AddSCommutative,
    AddSAssociative,
    AddGammaCommutative,
    AddGammaAssociative,
    /// `aα(b+c) = aαb + aαc`
    LeftDistributive,
    /// `(a+b)αc = aαc + bαc`
    RightDistributive,
    /// `a(α+β)c = aαc + aβc`
    GammaDistributive,
    /// `aα(bβc) = (aαb)βc`
    MixedAssociative,
}

impl Axiom {
    pub const ALL: [Axiom; 8] = [
        Axiom::AddSCommutative,
        Axiom::AddSAssociative,
        Axiom::AddGammaCommutative,
        Axiom::AddGammaAssociative,
        Axiom::LeftDistributive,
        Axiom::RightDistributive,
        Axiom::GammaDistributive,
        Axiom::MixedAssociative,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Axiom::AddSCommutative => "addS-commutative",
            Axiom::AddSAssociative => "addS-associative",
            Axiom::AddGammaCommutative => "addGamma-commutative",
            Axiom::AddGammaAssociative => "addGamma-associative",
            Axiom::LeftDistributive => "left-distributive",
            Axiom::RightDistributive => "right-distributive",
            Axiom::GammaDistributive => "gamma-distributive",
            Axiom::MixedAssociative => "mixed-associative",
        }
    }

    /// Variable names of the witness tuple.
    pub fn variables(self) -> &'static [&'static str] {
        match self {
            Axiom::AddSCommutative => &["a", "b"],
            Axiom::AddSAssociative => &["a", "b", "c"],
            Axiom::AddGammaCommutative => &["alpha", "beta"],
            Axiom::AddGammaAssociative => &["alpha", "beta", "gamma"],
            Axiom::LeftDistributive => &["a", "alpha", "b", "c"],
            Axiom::RightDistributive => &["a", "b", "alpha", "c"],
            Axiom::GammaDistributive => &["a", "alpha", "beta", "c"],
            Axiom::MixedAssociative => &["a", "alpha", "b", "beta", "c"],
        }
    }

    fn bounds(self, g: &GammaSemiring) -> Vec<usize> {
        let (s, m) = (g.s_size(), g.g_size());
        match self {
            Axiom::AddSCommutative => vec![s, s],
            Axiom::AddSAssociative => vec![s, s, s],
            Axiom::AddGammaCommutative => vec![m, m],
            Axiom::AddGammaAssociative => vec![m, m, m],
            Axiom::LeftDistributive => vec![s, m, s, s],
            Axiom::RightDistributive => vec![s, s, m, s],
            Axiom::GammaDistributive => vec![s, m, m, s],
            Axiom::MixedAssociative => vec![s, m, s, m, s],
        }
    }

    /// Whether the equation holds at `t` (a tuple in [`Axiom::variables`] order).
    pub fn holds(self, g: &GammaSemiring, t: &[usize]) -> bool {
        let p = |a, alpha, b| g.ternary_product(a, alpha, b);
        let add = |a, b| g.add_s(a, b);
        match self {
            Axiom::AddSCommutative => add(t[0], t[1]) == add(t[1], t[0]),
            Axiom::AddSAssociative => add(t[0], add(t[1], t[2])) == add(add(t[0], t[1]), t[2]),
            Axiom::AddGammaCommutative => g.add_g(t[0], t[1]) == g.add_g(t[1], t[0]),
            Axiom::AddGammaAssociative => {
                g.add_g(t[0], g.add_g(t[1], t[2])) == g.add_g(g.add_g(t[0], t[1]), t[2])
            }
            Axiom::LeftDistributive => {
                let (a, alpha, b, c) = (t[0], t[1], t[2], t[3]);
                p(a, alpha, add(b, c)) == add(p(a, alpha, b), p(a, alpha, c))
            }
            Axiom::RightDistributive => {
                let (a, b, alpha, c) = (t[0], t[1], t[2], t[3]);
                p(add(a, b), alpha, c) == add(p(a, alpha, c), p(b, alpha, c))
            }
            Axiom::GammaDistributive => {
                let (a, alpha, beta, c) = (t[0], t[1], t[2], t[3]);
                p(a, g.add_g(alpha, beta), c) == add(p(a, alpha, c), p(a, beta, c))
            }
            Axiom::MixedAssociative => {
                let (a, alpha, b, beta, c) = (t[0], t[1], t[2], t[3], t[4]);
                p(a, alpha, p(b, beta, c)) == p(p(a, alpha, b), beta, c)
            }
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

/// A violated axiom, its lexicographically smallest witness, and how many
/// tuples violate it in total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
    pub count: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.axiom)?;
        for (name, value) in self.axiom.variables().iter().zip(&self.witness) {
            write!(f, " {name}={value}")?;
        }
        write!(f, " count={}", self.count)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks commutativity and associativity of both additions and the four
/// distributive/associative laws on every tuple.
pub fn validate_gamma_semiring(g: &GammaSemiring) -> ValidationReport {
    let violations = Axiom::ALL
        .iter()
        .filter_map(|&axiom| {
            let mut first: Option<Vec<usize>> = None;
            let mut count = 0;
            for_each_tuple(&axiom.bounds(g), |t| {
                if !axiom.holds(g, t) {
                    count += 1;
                    first.get_or_insert_with(|| t.to_vec());
                }
            });
            first.map(|witness| Violation {
                axiom,
                witness,
                count,
            })
        })
        .collect();
    ValidationReport { violations }
}

/// Visits every tuple in `0..bounds[0] × 0..bounds[1] × …` in lexicographic order.
pub(crate) fn for_each_tuple(bounds: &[usize], mut visit: impl FnMut(&[usize])) {
    if bounds.contains(&0) {
        return;
    }
    let mut t = vec![0; bounds.len()];
    loop {
        visit(&t);
        let mut i = bounds.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < bounds[i] {
                break;
            }
            t[i] = 0;
        }
    }
}
