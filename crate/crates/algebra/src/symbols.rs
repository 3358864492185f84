use std::collections::HashMap;

use crate::AlgebraError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SymbolKind {
    Frequency,
    Coefficient,
    Parameter,
}

/// Ordered symbol names. The order fixes the monomial order for every polynomial
/// built over the table.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolTable {
    names: Vec<String>,
    kinds: Vec<SymbolKind>,
    index: HashMap<String, usize>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_names(entries: &[(&str, SymbolKind)]) -> Result<Self, AlgebraError> {
        let mut table = Self::new();
        for (name, kind) in entries {
            table.push(name, *kind)?;
        }
        Ok(table)
    }

    pub fn push(&mut self, name: &str, kind: SymbolKind) -> Result<usize, AlgebraError> {
        if self.index.contains_key(name) {
            return Err(AlgebraError::DuplicateSymbol(name.to_string()));
        }
        let idx = self.names.len();
        self.names.push(name.to_string());
        self.kinds.push(kind);
        self.index.insert(name.to_string(), idx);
        Ok(idx)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn kind(&self, idx: usize) -> SymbolKind {
        self.kinds[idx]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn indices_of_kind(&self, kind: SymbolKind) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.kinds[i] == kind).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_duplicates_and_keeps_order() {
        let mut t = SymbolTable::new();
        t.push("w1", SymbolKind::Frequency).unwrap();
        t.push("a1", SymbolKind::Coefficient).unwrap();
        assert!(t.push("w1", SymbolKind::Parameter).is_err());
        assert_eq!(t.index_of("a1"), Some(1));
        assert_eq!(t.indices_of_kind(SymbolKind::Frequency), vec![0]);
    }
}
