//! Named order families selected at runtime from strings such as `deglex`,
//! `weight:0,1,3,4` or `matrix:path/to/rows.txt`.

use std::str::FromStr;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::monomial::{Comparator, TermOrderMatrix, WeightVector};

use super::term_order_from_weight;

/// A family of monomial orders, instantiated for `n + 1` variables.
pub trait OrderFamily: Send + Sync {
    fn name(&self) -> &str;

    /// One-line usage hint shown by the command-line tool.
    fn usage(&self) -> &str;

    fn build(&self, arg: Option<&str>, n: usize) -> Result<Comparator>;
}

struct DegLex;
struct RevLex;
struct Weight;
struct MatrixFile;

fn no_arg(name: &str, arg: Option<&str>) -> Result<()> {
    match arg {
        None => Ok(()),
        Some(a) => Err(Error::Parse { pos: name.len() + 1, msg: format!("`{name}` takes no argument, got `{a}`") }),
    }
}

fn parse_rational(tok: &str, pos: usize) -> Result<BigRational> {
    BigRational::from_str(tok.trim()).map_err(|_| Error::Parse { pos, msg: format!("bad number `{}`", tok.trim()) })
}

/// Parse a comma or whitespace separated row of rationals.
pub fn parse_row(text: &str) -> Result<Vec<BigRational>> {
    let mut out = Vec::new();
    let mut pos = 0;
    for tok in text.split(|c: char| c == ',' || c.is_whitespace()) {
        if !tok.is_empty() {
            out.push(parse_rational(tok, pos)?);
        }
        pos += tok.len() + 1;
    }
    if out.is_empty() {
        return Err(Error::Parse { pos: 0, msg: "empty row".into() });
    }
    Ok(out)
}

/// Parse a matrix, one row per non-empty line; `#` starts a comment.
pub fn parse_matrix(text: &str) -> Result<TermOrderMatrix> {
    let rows = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| parse_row(l.trim_matches(|c| c == '[' || c == ']')))
        .collect::<Result<Vec<_>>>()?;
    TermOrderMatrix::new(rows)
}

impl OrderFamily for DegLex {
    fn name(&self) -> &str {
        "deglex"
    }
    fn usage(&self) -> &str {
        "deglex: graded lexicographic order"
    }
    fn build(&self, arg: Option<&str>, n: usize) -> Result<Comparator> {
        no_arg("deglex", arg)?;
        Ok(Comparator::Term(TermOrderMatrix::deglex(n)))
    }
}

impl OrderFamily for RevLex {
    fn name(&self) -> &str {
        "revlex"
    }
    fn usage(&self) -> &str {
        "revlex: graded reverse lexicographic order"
    }
    fn build(&self, arg: Option<&str>, n: usize) -> Result<Comparator> {
        no_arg("revlex", arg)?;
        Ok(Comparator::Term(TermOrderMatrix::revlex(n)))
    }
}

impl OrderFamily for Weight {
    fn name(&self) -> &str {
        "weight"
    }
    fn usage(&self) -> &str {
        "weight:w0,...,wn: weight order (zero entries allowed)"
    }
    fn build(&self, arg: Option<&str>, n: usize) -> Result<Comparator> {
        let arg = arg.ok_or(Error::Parse { pos: 6, msg: "expected `weight:w0,...,wn`".into() })?;
        let w = parse_row(arg)?;
        if w.len() != n + 1 {
            return Err(Error::InvalidWeight(format!("{} entries for {} variables", w.len(), n + 1)));
        }
        Ok(Comparator::Weight(WeightVector::new(w)?))
    }
}

impl OrderFamily for MatrixFile {
    fn name(&self) -> &str {
        "matrix"
    }
    fn usage(&self) -> &str {
        "matrix:PATH: term order matrix, one row per line"
    }
    fn build(&self, arg: Option<&str>, n: usize) -> Result<Comparator> {
        let path = arg.ok_or(Error::Parse { pos: 6, msg: "expected `matrix:PATH`".into() })?;
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
        let m = parse_matrix(&text)?;
        if m.dim() != n + 1 {
            return Err(Error::InvalidMatrix(format!("{} rows for {} variables", m.dim(), n + 1)));
        }
        Ok(Comparator::Term(m))
    }
}

/// Order families keyed by name.
pub struct OrderRegistry {
    families: Vec<Box<dyn OrderFamily>>,
}

impl Default for OrderRegistry {
    fn default() -> Self {
        Self::standard()
    }
}

impl OrderRegistry {
    pub fn empty() -> Self {
        OrderRegistry { families: Vec::new() }
    }

    /// `deglex`, `revlex`, `weight:` and `matrix:`.
    pub fn standard() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(DegLex));
        r.register(Box::new(RevLex));
        r.register(Box::new(Weight));
        r.register(Box::new(MatrixFile));
        r
    }

    /// Add a family; a later registration under the same name wins.
    pub fn register(&mut self, f: Box<dyn OrderFamily>) {
        self.families.retain(|g| g.name() != f.name());
        self.families.push(f);
    }

    pub fn names(&self) -> Vec<&str> {
        self.families.iter().map(|f| f.name()).collect()
    }

    pub fn usages(&self) -> Vec<&str> {
        self.families.iter().map(|f| f.usage()).collect()
    }

    /// Resolve `name` or `name:arg` for `n + 1` variables.
    pub fn resolve(&self, spec: &str, n: usize) -> Result<Comparator> {
        let spec = spec.trim();
        let (name, arg) = match spec.split_once(':') {
            Some((a, b)) => (a, Some(b)),
            None => (spec, None),
        };
        let fam = self
            .families
            .iter()
            .find(|f| f.name().eq_ignore_ascii_case(name))
            .ok_or_else(|| Error::UnknownOrder(name.to_string()))?;
        fam.build(arg, n)
    }

    /// Resolve to a total term order, refining weights by `tiebreak`.
    pub fn resolve_term_order(&self, spec: &str, n: usize, tiebreak: &TermOrderMatrix) -> Result<TermOrderMatrix> {
        match self.resolve(spec, n)? {
            Comparator::Term(m) => Ok(m),
            Comparator::Weight(w) => term_order_from_weight(&w, tiebreak),
        }
    }
}
