//! Finite Γ-semirings: two commutative additive semigroups `S` and `Γ`
//! together with a ternary product `S × Γ × S → S`.
//!
//! Elements of both carriers are dense 0-based indices and every operation
//! is a table lookup.

mod text;
mod validate;

pub use text::{parse_gamma_semiring, ParseError, ParseErrorKind};
pub use validate::{validate_gamma_semiring, Axiom, ValidationReport, Violation};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("carrier sizes must be positive (got |S|={s_size}, |Gamma|={g_size})")]
    EmptyCarrier { s_size: usize, g_size: usize },
    #[error("table `{table}` has wrong dimensions: expected {expected}, found {found}")]
    DimensionMismatch {
        table: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("table `{table}` holds {value}, outside 0..{bound}")]
    OutOfRange {
        table: &'static str,
        value: usize,
        bound: usize,
    },
    #[error("a formal sum needs at least one term")]
    EmptyFormalSum,
}

/// A finite Γ-semiring given by its Cayley-style tables.
///
/// Construction checks table shapes and index ranges only; the algebraic
/// laws are checked by [`validate_gamma_semiring`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GammaSemiring {
    name: Option<String>,
    s_size: usize,
    g_size: usize,
    add_s: Vec<usize>,
    add_g: Vec<usize>,
    // laid out as [alpha][a][b]
    prod: Vec<usize>,
}

impl GammaSemiring {
    /// Builds a structure from nested tables: `add_s[a][b]`, `add_g[α][β]`
    /// and `prod[α][a][b] = aαb`.
    pub fn new(
        name: Option<String>,
        add_s: Vec<Vec<usize>>,
        add_g: Vec<Vec<usize>>,
        prod: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self, AlgebraError> {
        let s_size = add_s.len();
        let g_size = add_g.len();
        if s_size == 0 || g_size == 0 {
            return Err(AlgebraError::EmptyCarrier { s_size, g_size });
        }
        let add_s = flatten_square("addS", add_s, s_size)?;
        let add_g = flatten_square("addGamma", add_g, g_size)?;
        if prod.len() != g_size {
            return Err(AlgebraError::DimensionMismatch {
                table: "prod",
                expected: g_size,
                found: prod.len(),
            });
        }
        let mut flat = Vec::with_capacity(g_size * s_size * s_size);
        for block in prod {
            flat.extend(flatten_square("prod", block, s_size)?);
        }
        let g = Self {
            name,
            s_size,
            g_size,
            add_s,
            add_g,
            prod: flat,
        };
        g.check_ranges()?;
        Ok(g)
    }

    /// Builds a structure by evaluating closures over every index tuple.
    pub fn from_fn(
        name: Option<String>,
        s_size: usize,
        g_size: usize,
        add_s: impl Fn(usize, usize) -> usize,
        add_g: impl Fn(usize, usize) -> usize,
        prod: impl Fn(usize, usize, usize) -> usize,
    ) -> Result<Self, AlgebraError> {
        if s_size == 0 || g_size == 0 {
            return Err(AlgebraError::EmptyCarrier { s_size, g_size });
        }
        let square = |n: usize, f: &dyn Fn(usize, usize) -> usize| {
            (0..n * n).map(|i| f(i / n, i % n)).collect::<Vec<_>>()
        };
        let mut flat = Vec::with_capacity(g_size * s_size * s_size);
        for alpha in 0..g_size {
            for a in 0..s_size {
                for b in 0..s_size {
                    flat.push(prod(a, alpha, b));
                }
            }
        }
        let g = Self {
            name,
            s_size,
            g_size,
            add_s: square(s_size, &add_s),
            add_g: square(g_size, &add_g),
            prod: flat,
        };
        g.check_ranges()?;
        Ok(g)
    }

    fn check_ranges(&self) -> Result<(), AlgebraError> {
        let tables: [(&'static str, &[usize], usize); 3] = [
            ("addS", &self.add_s, self.s_size),
            ("addGamma", &self.add_g, self.g_size),
            ("prod", &self.prod, self.s_size),
        ];
        for (table, cells, bound) in tables {
            if let Some(&value) = cells.iter().find(|&&v| v >= bound) {
                return Err(AlgebraError::OutOfRange { table, value, bound });
            }
        }
        Ok(())
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub(crate) fn clear_name(&mut self) {
        self.name = None;
    }

    /// Equality of the tables, ignoring the name.
    pub fn same_tables(&self, other: &GammaSemiring) -> bool {
        self.s_size == other.s_size
            && self.g_size == other.g_size
            && self.add_s == other.add_s
            && self.add_g == other.add_g
            && self.prod == other.prod
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    /// `|S|`
    pub fn s_size(&self) -> usize {
        self.s_size
    }

    /// `|Γ|`
    pub fn g_size(&self) -> usize {
        self.g_size
    }

    #[inline]
    pub fn add_s(&self, a: usize, b: usize) -> usize {
        self.add_s[a * self.s_size + b]
    }

    #[inline]
    pub fn add_g(&self, alpha: usize, beta: usize) -> usize {
        self.add_g[alpha * self.g_size + beta]
    }

    /// `aαb`
    #[inline]
    pub fn ternary_product(&self, a: usize, alpha: usize, b: usize) -> usize {
        self.prod[(alpha * self.s_size + a) * self.s_size + b]
    }

    /// Evaluates `Σᵢ xᵢαᵢa` for the terms `(xᵢ, αᵢ)`.
    ///
    /// Addition in `S` is commutative, so the result does not depend on the
    /// order of `terms`.
    pub fn sum_of_products(&self, terms: &[(usize, usize)], a: usize) -> Result<usize, AlgebraError> {
        let mut iter = terms.iter().map(|&(x, alpha)| self.ternary_product(x, alpha, a));
        let first = iter.next().ok_or(AlgebraError::EmptyFormalSum)?;
        Ok(iter.fold(first, |acc, v| self.add_s(acc, v)))
    }

    /// Evaluates `Σᵢ aαᵢxᵢ` for the terms `(αᵢ, xᵢ)`.
    pub fn sum_of_right_products(&self, terms: &[(usize, usize)], a: usize) -> Result<usize, AlgebraError> {
        let mut iter = terms.iter().map(|&(alpha, x)| self.ternary_product(a, alpha, x));
        let first = iter.next().ok_or(AlgebraError::EmptyFormalSum)?;
        Ok(iter.fold(first, |acc, v| self.add_s(acc, v)))
    }

    /// Returns a copy with one product cell replaced. Used to build mutants.
    pub fn with_product(&self, a: usize, alpha: usize, b: usize, value: usize) -> Result<Self, AlgebraError> {
        if value >= self.s_size {
            return Err(AlgebraError::OutOfRange {
                table: "prod",
                value,
                bound: self.s_size,
            });
        }
        let mut g = self.clone();
        g.prod[(alpha * self.s_size + a) * self.s_size + b] = value;
        Ok(g)
    }
}

fn flatten_square(table: &'static str, rows: Vec<Vec<usize>>, n: usize) -> Result<Vec<usize>, AlgebraError> {
    if rows.len() != n {
        return Err(AlgebraError::DimensionMismatch {
            table,
            expected: n,
            found: rows.len(),
        });
    }
    let mut out = Vec::with_capacity(n * n);
    for row in rows {
        if row.len() != n {
            return Err(AlgebraError::DimensionMismatch {
                table,
                expected: n,
                found: row.len(),
            });
        }
        out.extend(row);
    }
    Ok(out)
}

/// The one-element Γ-semiring.
pub fn trivial() -> GammaSemiring {
    GammaSemiring::from_fn(Some("trivial".into()), 1, 1, |_, _| 0, |_, _| 0, |_, _, _| 0)
        .expect("singleton tables are in range")
}

/// `S = {0, 1}` with `+ = OR`, `Γ = {γ}` and `aγb = AND(a, b)`.
pub fn boolean() -> GammaSemiring {
    GammaSemiring::from_fn(Some("B".into()), 2, 1, |a, b| a | b, |_, _| 0, |a, _, b| a & b)
        .expect("boolean tables are in range")
}

/// `S = Γ = ℤ₂` under addition mod 2 with `aαb = a·α·b mod 2`.
pub fn z2() -> GammaSemiring {
    GammaSemiring::from_fn(
        Some("Z2".into()),
        2,
        2,
        |a, b| (a + b) % 2,
        |a, b| (a + b) % 2,
        |a, alpha, b| (a * alpha * b) % 2,
    )
    .expect("z2 tables are in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ternary_product_lookups() {
        let b = boolean();
        assert_eq!(b.ternary_product(1, 0, 1), 1);
        assert_eq!(b.ternary_product(0, 0, 1), 0);
        assert_eq!(z2().ternary_product(1, 1, 1), 1);
    }

    #[test]
    fn sum_of_products_examples() {
        let b = boolean();
        assert_eq!(b.sum_of_products(&[(1, 0)], 1), Ok(1));
        assert_eq!(b.sum_of_products(&[(1, 0), (1, 0)], 1), Ok(1));
        assert_eq!(z2().sum_of_products(&[(1, 1), (1, 1)], 1), Ok(0));
        assert_eq!(b.sum_of_products(&[], 1), Err(AlgebraError::EmptyFormalSum));
    }

    #[test]
    fn boolean_product_table() {
        let b = boolean();
        for a in 0..2 {
            for c in 0..2 {
                let expected = usize::from(a == 1 && c == 1);
                assert_eq!(b.ternary_product(a, 0, c), expected);
            }
        }
    }

    #[test]
    fn constructor_rejects_bad_shapes() {
        let err = GammaSemiring::new(
            None,
            vec![vec![0, 1], vec![1]],
            vec![vec![0]],
            vec![vec![vec![0, 0], vec![0, 0]]],
        );
        assert!(matches!(
            err,
            Err(AlgebraError::DimensionMismatch { table: "addS", .. })
        ));
        let err = GammaSemiring::new(
            None,
            vec![vec![0, 2], vec![1, 1]],
            vec![vec![0]],
            vec![vec![vec![0, 0], vec![0, 0]]],
        );
        assert!(matches!(err, Err(AlgebraError::OutOfRange { value: 2, .. })));
        let err = GammaSemiring::new(None, vec![], vec![vec![0]], vec![]);
        assert!(matches!(err, Err(AlgebraError::EmptyCarrier { .. })));
    }
}
