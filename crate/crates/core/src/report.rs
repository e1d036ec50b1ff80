//! Outcome of a law check: pass, or a minimal counterexample witness.

use std::fmt;

/// A re-checkable witness for a failed law: the law tag plus the display
/// forms of the objects, arrows and fiber elements involved.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// Tag of the violated inequality or axiom.
    pub law: String,
    /// Display forms of the participating data, in role order.
    pub items: Vec<(String, String)>,
}

impl Counterexample {
    pub fn new(law: impl Into<String>) -> Self {
        Counterexample {
            law: law.into(),
            items: Vec::new(),
        }
    }

    pub fn with(mut self, role: impl Into<String>, value: impl fmt::Display) -> Self {
        self.items.push((role.into(), value.to_string()));
        self
    }
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.law)?;
        for (role, value) in &self.items {
            write!(f, "; {role}={value}")?;
        }
        Ok(())
    }
}

/// Outcome of a structure check. A failing report always carries a
/// counterexample; `checked` counts the instances examined and `window`
/// names the quantification window so that a "pass" is scoped honestly.
#[derive(Debug, Clone)]
pub struct Report {
    pub name: String,
    pub pass: bool,
    pub checked: u64,
    pub window: String,
    pub counterexample: Option<Counterexample>,
}

impl Report {
    pub fn pass(name: impl Into<String>, checked: u64, window: impl Into<String>) -> Self {
        Report {
            name: name.into(),
            pass: true,
            checked,
            window: window.into(),
            counterexample: None,
        }
    }

    pub fn fail(
        name: impl Into<String>,
        checked: u64,
        window: impl Into<String>,
        witness: Counterexample,
    ) -> Self {
        Report {
            name: name.into(),
            pass: false,
            checked,
            window: window.into(),
            counterexample: Some(witness),
        }
    }

    /// Merges a sub-report into an accumulating one: counts add up and the
    /// first failure wins.
    pub fn absorb(&mut self, other: Report) {
        self.checked += other.checked;
        if self.pass && !other.pass {
            self.pass = false;
            self.counterexample = other.counterexample;
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pass {
            write!(
                f,
                "{}: pass ({} instances, window {})",
                self.name, self.checked, self.window
            )
        } else {
            write!(
                f,
                "{}: FAIL ({} instances, window {}): {}",
                self.name,
                self.checked,
                self.window,
                self.counterexample
                    .as_ref()
                    .expect("failed report carries a witness")
            )
        }
    }
}
