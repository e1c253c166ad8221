//! Symbol registry: the fixed, ordered table of indeterminates.
//!
//! The registry order is load-bearing: it defines the graded-lex monomial
//! order used everywhere for canonical forms, so the printed form of every
//! polynomial (and therefore every golden file) depends on it. Create the
//! registry once and share it; all values built on one registry are
//! immutable afterwards.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

/// Index into a [`SymbolRegistry`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Symbol(pub(crate) u16);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Ordered table of symbol names. Names are unique; the order is fixed at
/// creation and defines the monomial order.
#[derive(Debug, PartialEq, Eq)]
pub struct SymbolRegistry {
    names: Vec<String>,
    index: BTreeMap<String, u16>,
}

impl SymbolRegistry {
    pub fn new<I, S>(names: I) -> Arc<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        assert!(names.len() < u16::MAX as usize, "too many symbols");
        let mut index = BTreeMap::new();
        for (i, n) in names.iter().enumerate() {
            let prev = index.insert(n.clone(), i as u16);
            assert!(prev.is_none(), "duplicate symbol name: {n}");
        }
        Arc::new(SymbolRegistry { names, index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.names[s.index()]
    }

    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        self.index.get(name).copied().map(Symbol)
    }

    /// Lookup that panics on a missing name. Use for names known at compile
    /// time; user input goes through [`SymbolRegistry::lookup`].
    pub fn sym(&self, name: &str) -> Symbol {
        self.lookup(name)
            .unwrap_or_else(|| panic!("symbol not registered: {name}"))
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.names.len() as u16).map(Symbol)
    }

    /// The shared registry holding every symbol used by the built-in models:
    /// spectral variable `x`, times `t1`, `t2`, the deformation parameter
    /// `hbar`, model constants, canonical variables, reduction parameters,
    /// second-stage parameters, jet symbols `alpha_d1..alpha_d4` (likewise
    /// for beta/gamma/delta), auxiliary `xi1..xi4`, and scratch unknowns
    /// `u1..u6`, `kappa` used internally by solvers.
    pub fn standard() -> Arc<SymbolRegistry> {
        static REG: OnceLock<Arc<SymbolRegistry>> = OnceLock::new();
        REG.get_or_init(|| {
            let mut names: Vec<String> = vec![
                "x", "hbar", "theta0", "thetainf", "t1", "t2", "q", "p", "q1", "q2", "p1", "p2",
                "alpha", "beta", "gamma", "delta", "b", "c1", "c2", "c3",
            ]
            .into_iter()
            .map(String::from)
            .collect();
            for base in ["alpha", "beta", "gamma", "delta"] {
                for k in 1..=4 {
                    names.push(format!("{base}_d{k}"));
                }
            }
            for k in 1..=4 {
                names.push(format!("xi{k}"));
            }
            for k in 1..=6 {
                names.push(format!("u{k}"));
            }
            names.push("kappa".to_string());
            SymbolRegistry::new(names)
        })
        .clone()
    }
}

impl fmt::Display for SymbolRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.names.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_registry_has_expected_symbols() {
        let reg = SymbolRegistry::standard();
        for name in [
            "x", "hbar", "theta0", "thetainf", "t1", "t2", "q", "p", "q1", "q2", "p1", "p2",
            "alpha", "beta", "gamma", "delta", "b", "c1", "c2", "c3", "alpha_d1", "alpha_d4",
            "delta_d1", "xi4", "u1", "u6", "kappa",
        ] {
            assert!(reg.lookup(name).is_some(), "missing {name}");
        }
        // Order is fixed: x comes first, so it dominates lex ties.
        assert_eq!(reg.name(Symbol(0)), "x");
    }

    #[test]
    #[should_panic(expected = "duplicate symbol")]
    fn duplicate_names_rejected() {
        SymbolRegistry::new(["a", "b", "a"]);
    }
}
