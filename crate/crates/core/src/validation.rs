use std::fmt;

/// Outcome of checking an object against its invariants. Violations are
/// data, not errors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport<V> {
    pub violations: Vec<V>,
}

impl<V> ValidationReport<V> {
    pub fn ok() -> Self {
        ValidationReport { violations: Vec::new() }
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl<V> From<Vec<V>> for ValidationReport<V> {
    fn from(violations: Vec<V>) -> Self {
        ValidationReport { violations }
    }
}

impl<V: fmt::Display> ValidationReport<V> {
    pub fn messages(&self) -> Vec<String> {
        self.violations.iter().map(ToString::to_string).collect()
    }

    pub(crate) fn into_result(self) -> crate::Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(crate::Error::Validation(self.messages()))
        }
    }
}

impl<V: fmt::Display> fmt::Display for ValidationReport<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
