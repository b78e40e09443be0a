//! Left and right operator semirings of a finite Γ-semiring.
//!
//! An element of the left operator semiring `L` is a congruence class of
//! formal sums `Σ[xᵢ,αᵢ]`, where two sums are identified exactly when they
//! induce the same map `a ↦ Σ xᵢαᵢa` on `S`. Each class is therefore stored
//! as that map ([`ActionTable`]). Class addition is pointwise addition of
//! maps and class multiplication is composition: `Σᵢⱼ xᵢαᵢyⱼβⱼa` equals
//! `Σᵢ xᵢαᵢ(Σⱼ yⱼβⱼa)`. The right operator semiring `R` uses the maps
//! `a ↦ Σ aαᵢxᵢ` and composes in the opposite order.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::algebra::GammaSemiring;

/// Default bound on the number of classes produced by the closure.
pub const DEFAULT_MAX_ELEMENTS: usize = 100_000;

/// Default bound on the number of formal sums the brute-force oracle visits.
pub const DEFAULT_BRUTE_FORCE_CAP: u128 = 5_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OperatorError {
    #[error("operator semiring exceeds {limit} elements")]
    TooManyElements { limit: usize },
    #[error("brute-force enumeration needs {needed} formal sums, cap is {cap}")]
    TooManyFormalSums { needed: u128, cap: u128 },
    #[error("a formal sum needs at least one term")]
    EmptyFormalSum,
    #[error("term [{elem},{gamma}] is out of range for |S|={s_size}, |Gamma|={g_size}")]
    TermOutOfRange {
        elem: usize,
        gamma: usize,
        s_size: usize,
        g_size: usize,
    },
    #[error("max_len must be at least 1")]
    ZeroLength,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// One generator of the free semigroup: `(x, α)` on the left side,
/// `(α, x)` on the right side. Stored side-independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub elem: usize,
    pub gamma: usize,
}

/// A nonempty multiset of generators, i.e. a witness element of the free
/// additive semigroup over `S×Γ` (left) or `Γ×S` (right).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FormalSum {
    side: Side,
    terms: Vec<Term>,
}

impl FormalSum {
    pub fn new(side: Side, terms: Vec<Term>) -> Result<Self, OperatorError> {
        if terms.is_empty() {
            return Err(OperatorError::EmptyFormalSum);
        }
        Ok(Self { side, terms })
    }

    /// `[elem, gamma]` on the left, `[gamma, elem]` on the right.
    pub fn generator(side: Side, elem: usize, gamma: usize) -> Self {
        Self {
            side,
            terms: vec![Term { elem, gamma }],
        }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn concat(&self, other: &FormalSum) -> FormalSum {
        debug_assert_eq!(self.side, other.side);
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        FormalSum {
            side: self.side,
            terms,
        }
    }

    /// Expands `self · other` term by term:
    /// `[xᵢ,αᵢ]·[yⱼ,βⱼ] = [xᵢαᵢyⱼ, βⱼ]` on the left and
    /// `[αᵢ,xᵢ]·[βⱼ,yⱼ] = [αᵢ, xᵢβⱼyⱼ]` on the right.
    fn product(&self, other: &FormalSum, g: &GammaSemiring) -> FormalSum {
        debug_assert_eq!(self.side, other.side);
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for s in &self.terms {
            for o in &other.terms {
                terms.push(match self.side {
                    Side::Left => Term {
                        elem: g.ternary_product(s.elem, s.gamma, o.elem),
                        gamma: o.gamma,
                    },
                    Side::Right => Term {
                        elem: g.ternary_product(s.elem, o.gamma, o.elem),
                        gamma: s.gamma,
                    },
                });
            }
        }
        FormalSum {
            side: self.side,
            terms,
        }
    }

    fn check_range(&self, g: &GammaSemiring) -> Result<(), OperatorError> {
        match self
            .terms
            .iter()
            .find(|t| t.elem >= g.s_size() || t.gamma >= g.g_size())
        {
            Some(t) => Err(OperatorError::TermOutOfRange {
                elem: t.elem,
                gamma: t.gamma,
                s_size: g.s_size(),
                g_size: g.g_size(),
            }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for FormalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            match self.side {
                Side::Left => write!(f, "[{},{}]", t.elem, t.gamma)?,
                Side::Right => write!(f, "[{},{}]", t.gamma, t.elem)?,
            }
        }
        Ok(())
    }
}

/// The map `S → S` induced by a formal sum; the canonical representative of
/// its congruence class.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ActionTable(Vec<usize>);

impl ActionTable {
    pub fn new(image: Vec<usize>) -> Self {
        Self(image)
    }

    pub fn identity(s_size: usize) -> Self {
        Self((0..s_size).collect())
    }

    pub fn image(&self) -> &[usize] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.0[a]
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(a, &v)| a == v)
    }

    fn pointwise_sum(&self, other: &ActionTable, g: &GammaSemiring) -> ActionTable {
        ActionTable(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| g.add_s(a, b))
                .collect(),
        )
    }

    /// `a ↦ self(inner(a))`
    fn after(&self, inner: &ActionTable) -> ActionTable {
        ActionTable(inner.0.iter().map(|&a| self.0[a]).collect())
    }
}

impl fmt::Display for ActionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// Maps a formal sum to its class representative: entry `a` is `Σ xᵢαᵢa`
/// on the left side and `Σ aαᵢxᵢ` on the right side.
pub fn canonical_class(g: &GammaSemiring, f: &FormalSum) -> Result<ActionTable, OperatorError> {
    f.check_range(g)?;
    let image = (0..g.s_size())
        .map(|a| {
            let mut values = f.terms.iter().map(|t| match f.side {
                Side::Left => g.ternary_product(t.elem, t.gamma, a),
                Side::Right => g.ternary_product(a, t.gamma, t.elem),
            });
            let first = values.next().expect("formal sums are nonempty");
            values.fold(first, |acc, v| g.add_s(acc, v))
        })
        .collect();
    Ok(ActionTable(image))
}

/// A finite semiring whose elements are congruence classes of formal sums.
#[derive(Debug, Clone)]
pub struct FiniteSemiring {
    side: Side,
    s_size: usize,
    g_size: usize,
    elements: Vec<ActionTable>,
    witnesses: Vec<FormalSum>,
    index: HashMap<ActionTable, usize>,
    add: Vec<usize>,
    mul: Vec<usize>,
    // class of the generator with elem x and gamma α, at x * g_size + α
    generators: Vec<usize>,
}

impl FiniteSemiring {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[ActionTable] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &ActionTable {
        &self.elements[i]
    }

    /// First formal sum found for element `i` during the closure.
    pub fn witness(&self, i: usize) -> &FormalSum {
        &self.witnesses[i]
    }

    pub fn index_of(&self, action: &ActionTable) -> Option<usize> {
        self.index.get(action).copied()
    }

    #[inline]
    pub fn add(&self, i: usize, j: usize) -> usize {
        self.add[i * self.size() + j]
    }

    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i * self.size() + j]
    }

    /// Index of the class of `[x, α]` (left) or `[α, x]` (right).
    pub fn generator_class(&self, x: usize, alpha: usize) -> usize {
        self.generators[x * self.g_size + alpha]
    }

    /// Size of the underlying `S`.
    pub fn s_size(&self) -> usize {
        self.s_size
    }

    /// Exhaustively checks that `add` is commutative and associative, `mul`
    /// is associative, and `mul` distributes over `add` on both sides.
    /// Returns the name of the first failing law and its witness.
    pub fn check_laws(&self) -> Result<(), (&'static str, Vec<usize>)> {
        let n = self.size();
        for i in 0..n {
            for j in 0..n {
                if self.add(i, j) != self.add(j, i) {
                    return Err(("add-commutative", vec![i, j]));
                }
                for k in 0..n {
                    if self.add(i, self.add(j, k)) != self.add(self.add(i, j), k) {
                        return Err(("add-associative", vec![i, j, k]));
                    }
                    if self.mul(i, self.mul(j, k)) != self.mul(self.mul(i, j), k) {
                        return Err(("mul-associative", vec![i, j, k]));
                    }
                    if self.mul(i, self.add(j, k)) != self.add(self.mul(i, j), self.mul(i, k)) {
                        return Err(("left-distributive", vec![i, j, k]));
                    }
                    if self.mul(self.add(i, j), k) != self.add(self.mul(i, k), self.mul(j, k)) {
                        return Err(("right-distributive", vec![i, j, k]));
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn build_left_operator_semiring(g: &GammaSemiring) -> Result<FiniteSemiring, OperatorError> {
    build_operator_semiring(g, Side::Left, DEFAULT_MAX_ELEMENTS)
}

pub fn build_right_operator_semiring(g: &GammaSemiring) -> Result<FiniteSemiring, OperatorError> {
    build_operator_semiring(g, Side::Right, DEFAULT_MAX_ELEMENTS)
}

/// Closes the generator classes under pointwise sum and composition.
///
/// Elements are numbered in discovery order: generators first (by `x`, then
/// `α`), then the worklist visits each element `i` against every `j ≤ i`.
/// A class keeps the first witness that reached it.
pub fn build_operator_semiring(
    g: &GammaSemiring,
    side: Side,
    max_elements: usize,
) -> Result<FiniteSemiring, OperatorError> {
    let mut elements: Vec<ActionTable> = Vec::new();
    let mut witnesses: Vec<FormalSum> = Vec::new();
    let mut index: HashMap<ActionTable, usize> = HashMap::new();

    let mut insert = |action: ActionTable,
                      witness: &dyn Fn() -> FormalSum,
                      elements: &mut Vec<ActionTable>,
                      witnesses: &mut Vec<FormalSum>|
     -> Result<usize, OperatorError> {
        if let Some(&i) = index.get(&action) {
            return Ok(i);
        }
        if elements.len() >= max_elements {
            return Err(OperatorError::TooManyElements { limit: max_elements });
        }
        let i = elements.len();
        index.insert(action.clone(), i);
        elements.push(action);
        witnesses.push(witness());
        Ok(i)
    };

    let mut generators = Vec::with_capacity(g.s_size() * g.g_size());
    for x in 0..g.s_size() {
        for alpha in 0..g.g_size() {
            let f = FormalSum::generator(side, x, alpha);
            let action = canonical_class(g, &f)?;
            generators.push(insert(action, &|| f.clone(), &mut elements, &mut witnesses)?);
        }
    }

    let compose = |first: &ActionTable, second: &ActionTable| match side {
        Side::Left => first.after(second),
        Side::Right => second.after(first),
    };

    let mut next = 0;
    while next < elements.len() {
        let i = next;
        for j in 0..=i {
            let sum = elements[j].pointwise_sum(&elements[i], g);
            let (wi, wj) = (witnesses[i].clone(), witnesses[j].clone());
            insert(sum, &|| wj.concat(&wi), &mut elements, &mut witnesses)?;
            for (a, b) in [(j, i), (i, j)] {
                let prod = compose(&elements[a], &elements[b]);
                let (wa, wb) = (witnesses[a].clone(), witnesses[b].clone());
                insert(prod, &|| wa.product(&wb, g), &mut elements, &mut witnesses)?;
            }
        }
        next += 1;
    }

    let n = elements.len();
    let lookup = |action: &ActionTable| index[action];
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            add.push(lookup(&elements[i].pointwise_sum(&elements[j], g)));
            mul.push(lookup(&compose(&elements[i], &elements[j])));
        }
    }
    Ok(FiniteSemiring {
        side,
        s_size: g.s_size(),
        g_size: g.g_size(),
        elements,
        witnesses,
        index,
        add,
        mul,
        generators,
    })
}

/// A formal sum acting as the identity on `S`, and its element index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnityWitness {
    pub formal_sum: FormalSum,
    pub element: usize,
}

fn find_unity(g: &GammaSemiring, sr: &FiniteSemiring, side: Side) -> Option<UnityWitness> {
    if sr.side != side || sr.s_size != g.s_size() {
        return None;
    }
    let element = sr.index_of(&ActionTable::identity(g.s_size()))?;
    Some(UnityWitness {
        formal_sum: sr.witness(element).clone(),
        element,
    })
}

/// An element `Σ[eᵢ,δᵢ]` of `L` with `Σ eᵢδᵢa = a` for every `a`.
pub fn find_left_unity(g: &GammaSemiring, l: &FiniteSemiring) -> Option<UnityWitness> {
    find_unity(g, l, Side::Left)
}

/// An element `Σ[γⱼ,fⱼ]` of `R` with `Σ aγⱼfⱼ = a` for every `a`.
pub fn find_right_unity(g: &GammaSemiring, r: &FiniteSemiring) -> Option<UnityWitness> {
    find_unity(g, r, Side::Right)
}

/// True iff the unity's element is a two-sided identity of `sr.mul`.
pub fn verify_unity_is_identity(sr: &FiniteSemiring, u: &UnityWitness) -> bool {
    let e = u.element;
    e < sr.size() && (0..sr.size()).all(|x| sr.mul(e, x) == x && sr.mul(x, e) == x)
}

/// Independent oracle for the closure: visits every multiset of at most
/// `max_len` generator terms and collects the distinct induced maps.
///
/// Products never need to be enumerated: `[x,α]·[y,β] = [xαy,β]` is itself
/// a generator, so the classes are exactly the additive closure.
pub fn brute_force_operator_semiring(
    g: &GammaSemiring,
    side: Side,
    max_len: usize,
) -> Result<BTreeSet<ActionTable>, OperatorError> {
    brute_force_with_cap(g, side, max_len, DEFAULT_BRUTE_FORCE_CAP)
}

pub fn brute_force_with_cap(
    g: &GammaSemiring,
    side: Side,
    max_len: usize,
    cap: u128,
) -> Result<BTreeSet<ActionTable>, OperatorError> {
    if max_len == 0 {
        return Err(OperatorError::ZeroLength);
    }
    let gens: Vec<ActionTable> = (0..g.s_size())
        .flat_map(|x| (0..g.g_size()).map(move |alpha| (x, alpha)))
        .map(|(x, alpha)| {
            let image = (0..g.s_size())
                .map(|a| match side {
                    Side::Left => g.ternary_product(x, alpha, a),
                    Side::Right => g.ternary_product(a, alpha, x),
                })
                .collect();
            ActionTable(image)
        })
        .collect();

    let needed = multiset_count(gens.len(), max_len);
    if needed > cap {
        return Err(OperatorError::TooManyFormalSums { needed, cap });
    }

    let mut found = BTreeSet::new();
    // Depth-first over multisets with nondecreasing generator index; each
    // node carries the pointwise sum of its terms.
    let mut stack: Vec<(usize, usize, ActionTable)> =
        gens.iter().enumerate().map(|(i, a)| (i, 1, a.clone())).collect();
    while let Some((last, len, action)) = stack.pop() {
        if len < max_len {
            for (k, gen) in gens.iter().enumerate().skip(last) {
                stack.push((k, len + 1, action.pointwise_sum(gen, g)));
            }
        }
        found.insert(action);
    }
    Ok(found)
}

/// Number of nonempty multisets of size at most `max_len` over `kinds` types,
/// saturating at `u128::MAX`.
fn multiset_count(kinds: usize, max_len: usize) -> u128 {
    // C(kinds + max_len, max_len) - 1
    let mut acc: u128 = 1;
    for i in 1..=max_len as u128 {
        acc = match acc.checked_mul(kinds as u128 + i) {
            Some(v) => v / i,
            None => return u128::MAX,
        };
    }
    acc - 1
}
