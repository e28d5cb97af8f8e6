use std::sync::Arc;

use serde::{Deserialize, Serialize};

/// A truncation context: named variables with per-variable degree caps and
/// an optional total-degree cap.  All series sharing a ring agree on both.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SeriesRing {
    vars: Vec<String>,
    var_caps: Vec<u32>,
    total_cap: Option<u32>,
}

impl SeriesRing {
    pub fn new(vars: Vec<String>, var_caps: Vec<u32>, total_cap: Option<u32>) -> Arc<Self> {
        assert_eq!(vars.len(), var_caps.len());
        Arc::new(SeriesRing { vars, var_caps, total_cap })
    }

    /// Single variable, cap = total cap.
    pub fn univariate(var: &str, cap: u32) -> Arc<Self> {
        Self::new(vec![var.to_string()], vec![cap], Some(cap))
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_caps(&self) -> &[u32] {
        &self.var_caps
    }

    pub fn total_cap(&self) -> Option<u32> {
        self.total_cap
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Whether an exponent vector survives truncation.
    pub fn admits(&self, exp: &[u32]) -> bool {
        debug_assert_eq!(exp.len(), self.vars.len());
        if exp.iter().zip(&self.var_caps).any(|(e, cap)| e > cap) {
            return false;
        }
        match self.total_cap {
            Some(t) => exp.iter().sum::<u32>() <= t,
            None => true,
        }
    }

    /// Ring with the cap in `var` (and the total cap) lowered by `k`,
    /// used after differentiating `k` times.
    pub fn lowered(&self, var: usize, k: u32) -> Arc<Self> {
        let mut var_caps = self.var_caps.clone();
        var_caps[var] = var_caps[var].saturating_sub(k);
        SeriesRing::new(
            self.vars.clone(),
            var_caps,
            self.total_cap.map(|t| t.saturating_sub(k)),
        )
    }

    /// Ring with extra variables appended.
    pub fn extended(&self, new_vars: Vec<(String, u32)>) -> Arc<Self> {
        let mut vars = self.vars.clone();
        let mut caps = self.var_caps.clone();
        for (v, c) in new_vars {
            assert!(!vars.contains(&v), "variable {v} already present");
            vars.push(v);
            caps.push(c);
        }
        SeriesRing::new(vars, caps, self.total_cap)
    }

    /// Same caps, different variable names.
    pub fn renamed(&self, vars: Vec<String>) -> Arc<Self> {
        assert_eq!(vars.len(), self.vars.len());
        SeriesRing::new(vars, self.var_caps.clone(), self.total_cap)
    }
}
