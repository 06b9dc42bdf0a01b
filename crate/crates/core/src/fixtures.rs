//! Fixture corpus: cycles, towers, the localization demo with its per-chart hand
//! computation, and the point corpus for the two-open gluing checks.
//!
//! The built-in corpus is compiled in from `fixtures/*.json`; [`Corpus::load`]
//! reads the same four files from another directory.

use std::path::Path;

use cubechow_poly::{parse_polynomial, Polynomial, Rational};
use serde::{Deserialize, Serialize};

use crate::blowup::{Tower, TowerJson};
use crate::cycle::{Cycle, CycleJson};
use crate::error::SuiteError;
use crate::sheaf::OpenSet;

const CYCLES: &str = include_str!("../fixtures/cycles.json");
const TOWERS: &str = include_str!("../fixtures/towers.json");
const DEMO: &str = include_str!("../fixtures/demo.json");
const SHEAF: &str = include_str!("../fixtures/sheaf.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CycleFixture {
    pub id: String,
    pub tags: Vec<String>,
    pub note: String,
    /// Parameter values known to break general position.
    #[serde(default)]
    pub bad_parameters: Vec<String>,
    pub cycle: CycleJson,
}

impl CycleFixture {
    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t == tag)
    }

    pub fn cycle(&self) -> Result<Cycle, SuiteError> {
        Cycle::from_json(&self.cycle).map_err(|e| fixture_error(&self.id, e))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TowerFixture {
    pub id: String,
    pub note: String,
    pub tower: TowerJson,
    /// `(divisors, vertices, edges)` at every level.
    pub counts: Vec<(usize, usize, usize)>,
}

impl TowerFixture {
    pub fn tower(&self) -> Result<Tower, SuiteError> {
        Tower::from_json(&self.tower).map_err(|e| fixture_error(&self.id, e))
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChartOracle {
    pub divisors: Vec<usize>,
    pub sign: i64,
    /// Empty when the chart misses the strict transform.
    pub generators: Vec<String>,
}

/// Hand-computed strict transform of the demo cycle, chart by chart, with the
/// subdivision parameters left symbolic.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DemoFixture {
    pub cycle: String,
    pub tower: String,
    pub open: Vec<String>,
    pub inadmissible_face: Vec<(usize, u8)>,
    pub parameters: Vec<String>,
    pub note: String,
    pub charts: Vec<ChartOracle>,
    pub admissible_after: bool,
}

impl DemoFixture {
    /// Chart generators with the parameters replaced by `values`, as polynomials in
    /// `x1..xm, y1..yn`.
    pub fn chart_generators(
        &self,
        chart: &ChartOracle,
        ambient_dim: usize,
        cube_dim: usize,
        values: &[Rational],
    ) -> Result<Vec<Polynomial>, SuiteError> {
        let mut names: Vec<String> = (1..=ambient_dim).map(|i| format!("x{i}")).collect();
        names.extend((1..=cube_dim).map(|i| format!("y{i}")));
        let nvars = names.len();
        names.extend(self.parameters.iter().cloned());
        let mut assignment = vec![None; nvars];
        assignment.extend(values.iter().cloned().map(Some));
        let removed: Vec<bool> = (0..names.len()).map(|k| k >= nvars).collect();
        chart
            .generators
            .iter()
            .map(|g| {
                let p = parse_polynomial(g, &names).map_err(|e| fixture_error("demo", e))?;
                Ok(p.partial_eval(&assignment).drop_vars(&removed))
            })
            .collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SheafFixture {
    pub ambient_dim: usize,
    pub u: Vec<String>,
    pub v: Vec<String>,
    pub note: String,
    pub corpus: Vec<CycleJson>,
}

impl SheafFixture {
    pub fn opens(&self) -> Result<(OpenSet, OpenSet), SuiteError> {
        let parse = |gens: &[String]| {
            let refs: Vec<&str> = gens.iter().map(String::as_str).collect();
            OpenSet::parse(self.ambient_dim, &refs).map_err(|e| fixture_error("sheaf", e))
        };
        Ok((parse(&self.u)?, parse(&self.v)?))
    }

    pub fn cycles(&self) -> Result<Vec<Cycle>, SuiteError> {
        self.corpus
            .iter()
            .enumerate()
            .map(|(k, j)| Cycle::from_json(j).map_err(|e| fixture_error(&format!("sheaf #{k}"), e)))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub cycles: Vec<CycleFixture>,
    pub towers: Vec<TowerFixture>,
    pub demo: DemoFixture,
    pub sheaf: SheafFixture,
}

impl Corpus {
    pub fn builtin() -> Corpus {
        Corpus::from_texts(CYCLES, TOWERS, DEMO, SHEAF).expect("built-in fixtures parse")
    }

    pub fn load(dir: &Path) -> Result<Corpus, SuiteError> {
        let read = |name: &str| {
            std::fs::read_to_string(dir.join(name)).map_err(|e| SuiteError::Fixture {
                name: name.to_string(),
                detail: e.to_string(),
            })
        };
        Corpus::from_texts(&read("cycles.json")?, &read("towers.json")?, &read("demo.json")?, &read("sheaf.json")?)
    }

    fn from_texts(cycles: &str, towers: &str, demo: &str, sheaf: &str) -> Result<Corpus, SuiteError> {
        let parse = |name: &str, e: serde_json::Error| fixture_error(name, e);
        Ok(Corpus {
            cycles: serde_json::from_str(cycles).map_err(|e| parse("cycles.json", e))?,
            towers: serde_json::from_str(towers).map_err(|e| parse("towers.json", e))?,
            demo: serde_json::from_str(demo).map_err(|e| parse("demo.json", e))?,
            sheaf: serde_json::from_str(sheaf).map_err(|e| parse("sheaf.json", e))?,
        })
    }

    pub fn cycle(&self, id: &str) -> Result<&CycleFixture, SuiteError> {
        self.cycles.iter().find(|f| f.id == id).ok_or_else(|| fixture_error(id, "no such cycle fixture"))
    }

    pub fn tower(&self, id: &str) -> Result<&TowerFixture, SuiteError> {
        self.towers.iter().find(|f| f.id == id).ok_or_else(|| fixture_error(id, "no such tower fixture"))
    }

    pub fn tagged<'a>(&'a self, tag: &'a str) -> impl Iterator<Item = &'a CycleFixture> + 'a {
        self.cycles.iter().filter(move |f| f.has_tag(tag))
    }
}

fn fixture_error(name: &str, e: impl ToString) -> SuiteError {
    SuiteError::Fixture { name: name.to_string(), detail: e.to_string() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_corpus_parses() {
        let corpus = Corpus::builtin();
        for f in &corpus.cycles {
            let z = f.cycle().unwrap();
            assert_eq!(z.is_admissible(), f.has_tag("admissible"), "{}", f.id);
            if f.has_tag("normalized") {
                assert!(z.is_normalized().unwrap(), "{}", f.id);
            }
        }
        for t in &corpus.towers {
            assert_eq!(t.tower().unwrap().spaces().len(), t.counts.len());
        }
        corpus.sheaf.cycles().unwrap();
        corpus.sheaf.opens().unwrap();
    }
}
