//! Connected complete nodal curves with a boundary on the smooth locus.
//!
//! Points are symbolic ids; only their component and multiplicity matter.

mod classify;
mod complement;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

pub use classify::{
    classify, component_degree_data, has_r_complement, ComponentData, CurveClass, CurveTag, RComplement,
};
pub use complement::{find_n_complement, is_n_complement, merge_small_multiplicities, NComplement};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub id: String,
    pub genus: u32,
}

/// A point of the boundary with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryPoint {
    pub component: String,
    pub point: String,
    pub mult: Rational,
}

impl BoundaryPoint {
    pub fn new(component: &str, point: &str, mult: Rational) -> Self {
        BoundaryPoint {
            component: component.to_string(),
            point: point.to_string(),
            mult,
        }
    }
}

#[derive(Deserialize)]
struct RawPair {
    components: Vec<Component>,
    #[serde(default)]
    nodes: Vec<(String, String)>,
    #[serde(default)]
    boundary: Vec<BoundaryPoint>,
}

/// A pair `(C, B)`: components with geometric genus, nodes as (possibly
/// equal) component pairs, and the boundary points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPair")]
pub struct CurvePair {
    components: Vec<Component>,
    nodes: Vec<(String, String)>,
    boundary: Vec<BoundaryPoint>,
}

impl TryFrom<RawPair> for CurvePair {
    type Error = Error;

    fn try_from(raw: RawPair) -> Result<Self> {
        CurvePair::new(raw.components, raw.nodes, raw.boundary)
    }
}

impl CurvePair {
    pub fn new(components: Vec<Component>, nodes: Vec<(String, String)>, boundary: Vec<BoundaryPoint>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidCurve(msg));
        if components.is_empty() {
            return bad("a curve needs at least one component".into());
        }
        let mut ids = BTreeSet::new();
        for c in &components {
            if !ids.insert(c.id.as_str()) {
                return bad(format!("duplicate component id {:?}", c.id));
            }
        }
        for (a, b) in &nodes {
            for end in [a, b] {
                if !ids.contains(end.as_str()) {
                    return bad(format!("node refers to unknown component {end:?}"));
                }
            }
        }
        let mut points = BTreeSet::new();
        for p in &boundary {
            if !ids.contains(p.component.as_str()) {
                return bad(format!(
                    "point {:?} lies on unknown component {:?}",
                    p.point, p.component
                ));
            }
            if !points.insert(p.point.as_str()) {
                return bad(format!("boundary point {:?} appears twice", p.point));
            }
            if p.mult.is_negative() || p.mult > Rational::one() {
                return bad(format!("multiplicity {} of {:?} is outside [0, 1]", p.mult, p.point));
            }
        }
        let pair = CurvePair {
            components,
            nodes,
            boundary,
        };
        if !pair.is_connected() {
            return bad("the dual graph is not connected".into());
        }
        Ok(pair)
    }

    /// Syntax and schema problems are `Malformed`; a well-formed pair that
    /// breaks an invariant is `InvalidCurve`.
    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RawPair = serde_json::from_str(s).map_err(|e| Error::Malformed(e.to_string()))?;
        CurvePair::new(raw.components, raw.nodes, raw.boundary)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn nodes(&self) -> &[(String, String)] {
        &self.nodes
    }

    pub fn boundary(&self) -> &[BoundaryPoint] {
        &self.boundary
    }

    /// Same curve, new boundary (validated again).
    pub fn with_boundary(&self, boundary: Vec<BoundaryPoint>) -> Result<Self> {
        CurvePair::new(self.components.clone(), self.nodes.clone(), boundary)
    }

    fn is_connected(&self) -> bool {
        let mut adj: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
        for (a, b) in &self.nodes {
            adj.entry(a).or_default().push(b);
            adj.entry(b).or_default().push(a);
        }
        let mut seen = BTreeSet::new();
        let mut stack = vec![self.components[0].id.as_str()];
        while let Some(v) = stack.pop() {
            if seen.insert(v) {
                stack.extend(adj.get(v).into_iter().flatten().copied());
            }
        }
        seen.len() == self.components.len()
    }

    /// Multiplicity of the boundary at `point`, zero if absent.
    pub fn mult_at(&self, point: &str) -> Rational {
        self.boundary
            .iter()
            .find(|p| p.point == point)
            .map(|p| p.mult.clone())
            .unwrap_or_else(Rational::zero)
    }

    /// Point ids `F1, F2, …` used neither by the boundary nor by `taken`.
    pub(crate) fn fresh_ids<'a>(&'a self, taken: &'a [BoundaryPoint]) -> impl Iterator<Item = String> + 'a {
        (1..)
            .map(|i| format!("F{i}"))
            .filter(move |id| !self.boundary.iter().chain(taken).any(|p| &p.point == id))
    }
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;

    pub fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    /// Components `C1..Ck` with the given genera, nodes given by index pairs,
    /// boundary given as (component index, multiplicity).
    pub fn pair(genera: &[u32], nodes: &[(usize, usize)], boundary: &[(usize, Rational)]) -> CurvePair {
        let name = |i: usize| format!("C{}", i + 1);
        CurvePair::new(
            genera
                .iter()
                .enumerate()
                .map(|(i, &g)| Component { id: name(i), genus: g })
                .collect(),
            nodes.iter().map(|&(a, b)| (name(a), name(b))).collect(),
            boundary
                .iter()
                .enumerate()
                .map(|(j, (c, m))| BoundaryPoint::new(&name(*c), &format!("P{}", j + 1), m.clone()))
                .collect(),
        )
        .unwrap()
    }
}
