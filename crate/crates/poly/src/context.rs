use std::collections::HashSet;

use crate::monomial::MonomialOrder;
use crate::PolyError;

/// Variable names of a polynomial ring: ambient coordinates, cube coordinates and
/// formal parameters, in that order. Parameters are the smallest variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarContext {
    ambient: Vec<String>,
    cube: Vec<String>,
    params: Vec<String>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl VarContext {
    pub fn new(ambient: Vec<String>, cube: Vec<String>, params: Vec<String>) -> Result<Self, PolyError> {
        let mut seen = HashSet::new();
        for name in ambient.iter().chain(&cube).chain(&params) {
            if !valid_name(name) {
                return Err(PolyError::Parse(format!("invalid variable name `{name}`")));
            }
            if !seen.insert(name.clone()) {
                return Err(PolyError::DuplicateVariable(name.clone()));
            }
        }
        Ok(VarContext { ambient, cube, params })
    }

    /// Context `x1..x_m`, `y1..y_n`, `c1..c_r`.
    pub fn standard(m: usize, n: usize, r: usize) -> Self {
        let names = |p: &str, k: usize| (1..=k).map(|i| format!("{p}{i}")).collect();
        VarContext { ambient: names("x", m), cube: names("y", n), params: names("c", r) }
    }

    /// Context with plain names and no ambient/cube distinction.
    pub fn plain(names: &[&str]) -> Result<Self, PolyError> {
        Self::new(names.iter().map(|s| s.to_string()).collect(), Vec::new(), Vec::new())
    }

    pub fn ambient(&self) -> &[String] {
        &self.ambient
    }

    pub fn cube(&self) -> &[String] {
        &self.cube
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn nvars(&self) -> usize {
        self.ambient.len() + self.cube.len() + self.params.len()
    }

    pub fn nparams(&self) -> usize {
        self.params.len()
    }

    pub fn ambient_index(&self, k: usize) -> usize {
        k
    }

    pub fn cube_index(&self, k: usize) -> usize {
        self.ambient.len() + k
    }

    pub fn param_index(&self, k: usize) -> usize {
        self.ambient.len() + self.cube.len() + k
    }

    pub fn names(&self) -> Vec<String> {
        self.ambient.iter().chain(&self.cube).chain(&self.params).cloned().collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.ambient
            .iter()
            .chain(&self.cube)
            .chain(&self.params)
            .position(|n| n == name)
    }

    pub fn is_param(&self, index: usize) -> bool {
        index >= self.nvars() - self.nparams()
    }

    /// Graded reverse lexicographic order with the parameters as a last, smaller block.
    pub fn default_order(&self) -> MonomialOrder {
        let n = self.nvars();
        let r = self.nparams();
        if r == 0 || r == n {
            MonomialOrder::GrevLex
        } else {
            MonomialOrder::Blocks(vec![(0..n - r).collect(), (n - r..n).collect()])
        }
    }
}
