use std::fmt;
use std::sync::Arc;

use super::SymError;

/// A single global coordinate chart: an ordered list of distinct coordinate names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ChartSpace {
    names: Vec<String>,
}

/// Returns true if `s` matches `[A-Za-z_][A-Za-z0-9_]*`.
pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl ChartSpace {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Arc<Self>, SymError> {
        if names.is_empty() {
            return Err(SymError::InvalidChart("a chart needs at least one coordinate".into()));
        }
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            if !is_identifier(n) {
                return Err(SymError::InvalidChart(format!("'{n}' is not an identifier")));
            }
            if out.iter().any(|m| m == n) {
                return Err(SymError::InvalidChart(format!("duplicate coordinate '{n}'")));
            }
            out.push(n.to_owned());
        }
        Ok(Arc::new(ChartSpace { names: out }))
    }

    /// Chart with coordinates `prefix1 .. prefixN`.
    pub fn numbered(prefix: &str, dim: usize) -> Result<Arc<Self>, SymError> {
        let names: Vec<String> = (1..=dim).map(|i| format!("{prefix}{i}")).collect();
        Self::new(&names)
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl fmt::Display for ChartSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.names.join(","))
    }
}

/// Charts are compatible when they are the same allocation or carry identical names.
pub fn same_chart(a: &Arc<ChartSpace>, b: &Arc<ChartSpace>) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

pub fn ensure_same(a: &Arc<ChartSpace>, b: &Arc<ChartSpace>) -> Result<(), SymError> {
    if same_chart(a, b) {
        Ok(())
    } else {
        Err(SymError::ChartMismatch {
            left: a.to_string(),
            right: b.to_string(),
        })
    }
}
