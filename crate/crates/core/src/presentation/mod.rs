//! *-algebra presentations: generators `a1 … ad`, relations between
//! *-polynomials, and numeric evaluation of relations on matrices.

mod parse;
mod presets;

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{identity, op_norm, zeros, ComplexMatrix, C64, ONE};
use crate::literal::format_coefficient;

pub use parse::{parse_relations, parse_sum};
pub use presets::{preset, Preset};

/// A monomial in the generators and their adjoints. The empty word is the
/// unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct StarWord {
    /// `(generator index, starred)`, zero-based, left to right.
    pub factors: Vec<(usize, bool)>,
}

impl StarWord {
    pub fn unit() -> Self {
        StarWord::default()
    }

    pub fn new(factors: Vec<(usize, bool)>) -> Self {
        StarWord { factors }
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.factors.iter().map(|&(i, _)| i).max()
    }

    /// Evaluates the word on `generators`, with adjoints precomputed in
    /// `adjoints`.
    fn evaluate(
        &self,
        generators: &[ComplexMatrix],
        adjoints: &[ComplexMatrix],
        n: usize,
    ) -> ComplexMatrix {
        let mut factors = self.factors.iter();
        let Some(&(first, star)) = factors.next() else {
            return identity(n);
        };
        let mut acc = if star {
            adjoints[first].clone()
        } else {
            generators[first].clone()
        };
        for &(g, star) in factors {
            acc = if star {
                acc * &adjoints[g]
            } else {
                acc * &generators[g]
            };
        }
        acc
    }
}

impl fmt::Display for StarWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (k, &(g, star)) in self.factors.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "a{}{}", g + 1, if star { "*" } else { "" })?;
        }
        Ok(())
    }
}

/// `coefficient · word`.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub coef: C64,
    pub word: StarWord,
}

impl Term {
    pub fn new(coef: C64, word: StarWord) -> Self {
        Term { coef, word }
    }
}

/// Evaluates `Σ coef · word` on square matrices of size `n`.
pub fn evaluate_sum(terms: &[Term], generators: &[ComplexMatrix], n: usize) -> ComplexMatrix {
    let adjoints: Vec<ComplexMatrix> = generators.iter().map(|g| g.adjoint()).collect();
    evaluate_with(terms, generators, &adjoints, n)
}

fn evaluate_with(
    terms: &[Term],
    generators: &[ComplexMatrix],
    adjoints: &[ComplexMatrix],
    n: usize,
) -> ComplexMatrix {
    let mut acc = zeros(n, n);
    for t in terms {
        acc += t.word.evaluate(generators, adjoints, n) * t.coef;
    }
    acc
}

/// The relation `Σ lhs = Σ rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    pub lhs: Vec<Term>,
    pub rhs: Vec<Term>,
}

impl Relation {
    pub fn new(lhs: Vec<Term>, rhs: Vec<Term>) -> Self {
        let keep = |v: Vec<Term>| {
            v.into_iter()
                .filter(|t| t.coef != C64::new(0.0, 0.0))
                .collect()
        };
        Relation {
            lhs: keep(lhs),
            rhs: keep(rhs),
        }
    }

    fn terms(&self) -> impl Iterator<Item = &Term> {
        self.lhs.iter().chain(self.rhs.iter())
    }

    /// `Σ lhs − Σ rhs` as a single sum.
    pub fn difference(&self) -> Vec<Term> {
        self.lhs
            .iter()
            .cloned()
            .chain(self.rhs.iter().map(|t| Term::new(-t.coef, t.word.clone())))
            .collect()
    }
}

fn write_sum(f: &mut fmt::Formatter<'_>, terms: &[Term]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (k, t) in terms.iter().enumerate() {
        let negative_real = t.coef.im == 0.0 && t.coef.re.is_sign_negative();
        let c = if negative_real { -t.coef } else { t.coef };
        match (k, negative_real) {
            (0, true) => write!(f, "- ")?,
            (0, false) => {}
            (_, true) => write!(f, " - ")?,
            (_, false) => write!(f, " + ")?,
        }
        if t.word.is_unit() {
            write!(f, "{}", format_coefficient(c))?;
        } else if c == ONE {
            write!(f, "{}", t.word)?;
        } else {
            write!(f, "{} {}", format_coefficient(c), t.word)?;
        }
    }
    Ok(())
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, &self.lhs)?;
        write!(f, " = ")?;
        write_sum(f, &self.rhs)
    }
}

/// Generators plus relations.
#[derive(Debug, Clone, PartialEq)]
pub struct Presentation {
    pub name: String,
    pub generator_count: usize,
    pub relations: Vec<Relation>,
    pub params: Vec<(String, C64)>,
}

impl Presentation {
    pub fn new(
        name: impl Into<String>,
        generator_count: usize,
        relations: Vec<Relation>,
    ) -> Result<Self> {
        let p = Presentation {
            name: name.into(),
            generator_count,
            relations,
            params: Vec::new(),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn with_param(mut self, name: &str, value: C64) -> Self {
        self.params.push((name.to_string(), value));
        self
    }

    pub fn param(&self, name: &str) -> Option<C64> {
        self.params.iter().find(|(n, _)| n == name).map(|(_, v)| *v)
    }

    fn validate(&self) -> Result<()> {
        for r in &self.relations {
            if r.lhs.is_empty() && r.rhs.is_empty() {
                return Err(Error::Syntax {
                    line: 0,
                    column: 0,
                    message: "relation has no terms".into(),
                });
            }
            if let Some(index) = r.terms().filter_map(|t| t.word.max_index()).max() {
                if index >= self.generator_count {
                    return Err(Error::UnknownGenerator {
                        index: index + 1,
                        count: self.generator_count,
                        line: 0,
                        column: 0,
                    });
                }
            }
        }
        Ok(())
    }

    /// Renders the relations in the text grammar accepted by
    /// [`parse_relations`], one per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in &self.relations {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }

    /// Per-relation residual norms `‖Σ lhs − Σ rhs‖`.
    pub fn residuals(&self, assignment: &[ComplexMatrix]) -> Result<Vec<f64>> {
        let n = check_assignment(self.generator_count, assignment)?;
        let adjoints: Vec<ComplexMatrix> = assignment.iter().map(|g| g.adjoint()).collect();
        Ok(self
            .relations
            .iter()
            .map(|r| op_norm(&evaluate_with(&r.difference(), assignment, &adjoints, n)))
            .collect())
    }
}

fn check_assignment(generator_count: usize, assignment: &[ComplexMatrix]) -> Result<usize> {
    if assignment.len() != generator_count {
        return Err(Error::ShapeMismatch(format!(
            "expected {generator_count} generator matrices, got {}",
            assignment.len()
        )));
    }
    let Some(first) = assignment.first() else {
        return Err(Error::ShapeMismatch("empty assignment".into()));
    };
    let n = first.nrows();
    for (k, m) in assignment.iter().enumerate() {
        if m.nrows() != n || m.ncols() != n {
            return Err(Error::ShapeMismatch(format!(
                "generator a{} is {}x{}, expected {n}x{n}",
                k + 1,
                m.nrows(),
                m.ncols()
            )));
        }
    }
    Ok(n)
}

/// Largest relation residual of `assignment` (0 for a presentation without
/// relations).
pub fn residual(p: &Presentation, assignment: &[ComplexMatrix]) -> Result<f64> {
    Ok(p.residuals(assignment)?.into_iter().fold(0.0, f64::max))
}
