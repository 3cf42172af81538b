//! Rendering of results as text or JSON.

use std::time::Duration;

use nlbott_core::{
    bott::DegreeResult,
    formula::{coefficient_strings, render_expanded, render_factored, Comparison},
    UniPoly,
};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DegreeReport {
    pub d: u32,
    /// Decimal string: the values leave the 64-bit range quickly.
    pub degree: String,
    pub spec: [i64; 4],
    pub fixpoint_count: usize,
    /// Wall-clock seconds.
    pub elapsed: f64,
}

impl DegreeReport {
    pub fn new(r: &DegreeResult, elapsed: Duration) -> Self {
        DegreeReport {
            d: r.d,
            degree: r.degree.to_string(),
            spec: r.spec.0,
            fixpoint_count: r.fixpoint_count,
            elapsed: elapsed.as_secs_f64(),
        }
    }

    pub fn text(&self) -> String {
        let [a, b, c, d] = self.spec;
        format!(
            "d = {}\ndegree = {}\nspec = {a},{b},{c},{d}\nfixpoints = {}\nelapsed = {:.3}s\n",
            self.d, self.degree, self.fixpoint_count, self.elapsed
        )
    }
}

pub const MATCH_LINE: &str = "MATCH: closed form reproduced";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FormulaReport {
    pub dmin: u32,
    pub dmax: u32,
    pub nodes: usize,
    pub degree: Option<usize>,
    /// Ascending-degree coefficients as `n` or `n/m`.
    pub coefficients: Vec<String>,
    pub factored: String,
    pub expanded: String,
    #[serde(rename = "match")]
    pub matches: bool,
    pub comparison: String,
    pub spec: [i64; 4],
    pub elapsed: f64,
}

impl FormulaReport {
    pub fn new(
        dmin: u32,
        dmax: u32,
        fitted: &UniPoly,
        cmp: &Comparison,
        spec: [i64; 4],
        elapsed: Duration,
    ) -> Self {
        FormulaReport {
            dmin,
            dmax,
            nodes: (dmax - dmin + 1) as usize,
            degree: fitted.degree(),
            coefficients: coefficient_strings(fitted),
            factored: render_factored(fitted),
            expanded: render_expanded(fitted),
            matches: cmp.is_equal(),
            comparison: cmp.to_string(),
            spec,
            elapsed: elapsed.as_secs_f64(),
        }
    }

    pub fn verdict(&self) -> String {
        if self.matches {
            MATCH_LINE.to_owned()
        } else {
            format!("MISMATCH: {}", self.comparison)
        }
    }

    pub fn text(&self) -> String {
        let degree = self
            .degree
            .map_or_else(|| "-".to_owned(), |d| d.to_string());
        format!(
            "nodes = d={}..{} ({})\ndegree = {degree}\ncoefficients = {}\nfactored = {}\nexpanded = {}\n{}\n",
            self.dmin,
            self.dmax,
            self.nodes,
            serde_json::to_string(&self.coefficients).expect("strings serialize"),
            self.factored,
            self.expanded,
            self.verdict()
        )
    }
}
