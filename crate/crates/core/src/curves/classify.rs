//! Degree data, the classification of pairs with an ℝ-complement, and
//! ℝ-complement witnesses.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{BoundaryPoint, CurvePair};
use crate::rational::Rational;

/// Per-component data on the normalization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentData {
    pub id: String,
    pub genus: u32,
    /// points of the normalization over nodes: 2 per self-node, 1 per
    /// node with another component
    pub node_preimages: u32,
    pub boundary_degree: Rational,
}

impl ComponentData {
    /// `-deg K_C` on this component, i.e. `2 - 2g - l`.
    pub fn anticanonical_degree(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.node_preimages as i64
    }
}

pub fn component_degree_data(c: &CurvePair) -> Vec<ComponentData> {
    c.components()
        .iter()
        .map(|comp| {
            let node_preimages = c
                .nodes()
                .iter()
                .map(|(a, b)| (a == &comp.id) as u32 + (b == &comp.id) as u32)
                .sum();
            let boundary_degree = c
                .boundary()
                .iter()
                .filter(|p| p.component == comp.id)
                .map(|p| &p.mult)
                .sum();
            ComponentData {
                id: comp.id.clone(),
                genus: comp.genus,
                node_preimages,
                boundary_degree,
            }
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CurveTag {
    SmoothRational,
    SmoothElliptic,
    IrreducibleNodal,
    Cycle,
    Chain,
    NoRComplement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveClass {
    pub tag: CurveTag,
    /// component ids along the chain or cycle
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chain_order: Option<Vec<String>>,
}

impl CurveClass {
    fn plain(tag: CurveTag) -> Self {
        CurveClass { tag, chain_order: None }
    }
}

enum Shape {
    SmoothRational,
    SmoothElliptic,
    IrreducibleNodal,
    Chain(Vec<String>),
    Cycle(Vec<String>),
    Other,
}

fn neighbours(c: &CurvePair) -> BTreeMap<&str, Vec<&str>> {
    let mut adj: BTreeMap<&str, Vec<&str>> = BTreeMap::new();
    for (a, b) in c.nodes() {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    for list in adj.values_mut() {
        list.sort_unstable();
    }
    adj
}

/// Walks a path or cycle from `start`, stepping first to `first`.
fn walk(adj: &BTreeMap<&str, Vec<&str>>, start: &str, first: &str, len: usize) -> Vec<String> {
    let mut order = vec![start.to_string(), first.to_string()];
    let (mut prev, mut cur) = (start, first);
    while order.len() < len {
        let next = adj[cur]
            .iter()
            .copied()
            .find(|&v| v != prev)
            .expect("interior vertex has two neighbours");
        order.push(next.to_string());
        (prev, cur) = (cur, next);
    }
    order
}

fn shape(c: &CurvePair, data: &[ComponentData]) -> Shape {
    if let [d] = data {
        return match (d.genus, d.node_preimages) {
            (0, 0) => Shape::SmoothRational,
            (1, 0) => Shape::SmoothElliptic,
            (0, 2) => Shape::IrreducibleNodal,
            _ => Shape::Other,
        };
    }
    // with two or more components every l_i >= 1, and a self-node forces l_i >= 3
    if data.iter().any(|d| d.genus > 0 || d.node_preimages > 2) {
        return Shape::Other;
    }
    let adj = neighbours(c);
    let ends: Vec<&str> = data
        .iter()
        .filter(|d| d.node_preimages == 1)
        .map(|d| d.id.as_str())
        .collect();
    match ends.as_slice() {
        [] => {
            let start = adj.keys().next().copied().expect("nonempty graph");
            let first = adj[start][0];
            Shape::Cycle(walk(&adj, start, first, data.len()))
        }
        [a, b] => {
            let start = (*a).min(*b);
            Shape::Chain(walk(&adj, start, adj[start][0], data.len()))
        }
        _ => Shape::Other,
    }
}

/// The case of the classification `C` falls in, or `NoRComplement`.
pub fn classify(c: &CurvePair) -> CurveClass {
    let data = component_degree_data(c);
    let zero = c.boundary().iter().all(|p| p.mult.is_zero());
    let degree_of = |id: &str| {
        data.iter()
            .find(|d| d.id == id)
            .map(|d| d.boundary_degree.clone())
            .unwrap_or_else(Rational::zero)
    };
    let none = CurveClass::plain(CurveTag::NoRComplement);
    match shape(c, &data) {
        Shape::SmoothRational if data[0].boundary_degree <= Rational::from_integer(2) => {
            CurveClass::plain(CurveTag::SmoothRational)
        }
        Shape::SmoothElliptic if zero => CurveClass::plain(CurveTag::SmoothElliptic),
        Shape::IrreducibleNodal if zero => CurveClass::plain(CurveTag::IrreducibleNodal),
        Shape::Cycle(order) if zero => CurveClass {
            tag: CurveTag::Cycle,
            chain_order: Some(order),
        },
        Shape::Chain(order) => {
            let last = order.len() - 1;
            let fits = order.iter().enumerate().all(|(i, id)| {
                let deg = degree_of(id);
                if i == 0 || i == last {
                    deg <= Rational::one()
                } else {
                    deg.is_zero()
                }
            });
            if fits {
                CurveClass {
                    tag: CurveTag::Chain,
                    chain_order: Some(order),
                }
            } else {
                none
            }
        }
        _ => none,
    }
}

/// An ℝ-complement `B⁺ >= B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RComplement {
    pub boundary: Vec<BoundaryPoint>,
    /// whether `B⁺` needed points outside the support of `B`
    pub supports_extended: bool,
}

/// Raises `start` (one entry per boundary point of `c`, same order) until
/// each component has boundary degree `2 - 2g - l`: existing points go up
/// toward 1 first, then fresh points of multiplicity at most 1 are added.
pub(crate) fn top_up(c: &CurvePair, mut start: Vec<BoundaryPoint>) -> RComplement {
    let mut fresh = Vec::new();
    for d in component_degree_data(c) {
        let target = Rational::from_integer(d.anticanonical_degree().max(0));
        let mut deficit = target
            - start
                .iter()
                .filter(|p| p.component == d.id)
                .map(|p| &p.mult)
                .sum::<Rational>();
        for p in start.iter_mut().filter(|p| p.component == d.id) {
            if !deficit.is_positive() {
                break;
            }
            let raise = (Rational::one() - &p.mult).min(deficit.clone());
            p.mult += &raise;
            deficit -= raise;
        }
        while deficit.is_positive() {
            let id = c.fresh_ids(&fresh).next().expect("unbounded id supply");
            let m = deficit.clone().min(Rational::one());
            deficit -= &m;
            fresh.push(BoundaryPoint::new(&d.id, &id, m));
        }
    }
    let supports_extended = !fresh.is_empty();
    start.extend(fresh);
    RComplement {
        boundary: start,
        supports_extended,
    }
}

/// An ℝ-complement of `(C, B)` when one exists.
pub fn has_r_complement(c: &CurvePair) -> Option<RComplement> {
    if classify(c).tag == CurveTag::NoRComplement {
        return None;
    }
    Some(top_up(c, c.boundary().to_vec()))
}

#[cfg(test)]
mod tests {
    use super::super::test_support::*;
    use super::*;
    use CurveTag::*;

    fn mults(r: &RComplement) -> Vec<Rational> {
        r.boundary.iter().map(|p| p.mult.clone()).collect()
    }

    #[test]
    fn degree_data_examples() {
        let nodal = pair(&[0], &[(0, 0)], &[]);
        let d = &component_degree_data(&nodal)[0];
        assert_eq!((d.genus, d.node_preimages), (0, 2));
        assert_eq!(d.anticanonical_degree(), 0);
        let two = pair(&[0, 0], &[(0, 1)], &[(1, q(1, 3)), (1, q(1, 2))]);
        let data = component_degree_data(&two);
        assert_eq!(data[0].node_preimages, 1);
        assert_eq!(data[1].node_preimages, 1);
        assert_eq!(data[1].boundary_degree, q(5, 6));
        assert_eq!(component_degree_data(&pair(&[2], &[], &[]))[0].node_preimages, 0);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&pair(&[1], &[], &[])).tag, SmoothElliptic);
        let half = q(1, 2);
        let four = [
            (0, half.clone()),
            (0, half.clone()),
            (0, half.clone()),
            (0, half.clone()),
        ];
        assert_eq!(classify(&pair(&[0], &[], &four)).tag, SmoothRational);
        assert_eq!(
            classify(&pair(&[0, 0, 0], &[(0, 1), (1, 2)], &[(1, half.clone())])).tag,
            NoRComplement
        );
        assert_eq!(classify(&pair(&[0], &[(0, 0)], &[])).tag, IrreducibleNodal);
        assert_eq!(classify(&pair(&[1], &[], &[(0, q(1, 3))])).tag, NoRComplement);
        assert_eq!(
            classify(&pair(&[0], &[], &[(0, q(1, 1)), (0, q(1, 1)), (0, q(1, 100))])).tag,
            NoRComplement
        );
        assert_eq!(classify(&pair(&[0], &[(0, 0), (0, 0)], &[])).tag, NoRComplement);
        assert_eq!(classify(&pair(&[2], &[], &[])).tag, NoRComplement);
    }

    #[test]
    fn chains_and_cycles_report_order() {
        let chain = pair(&[0, 0, 0], &[(2, 1), (1, 0)], &[(0, q(1, 1)), (2, q(1, 2))]);
        let class = classify(&chain);
        assert_eq!(class.tag, Chain);
        assert_eq!(class.chain_order.unwrap(), ["C1", "C2", "C3"]);

        let cycle = pair(&[0, 0, 0, 0], &[(0, 2), (2, 1), (1, 3), (3, 0)], &[]);
        let class = classify(&cycle);
        assert_eq!(class.tag, Cycle);
        assert_eq!(class.chain_order.unwrap(), ["C1", "C3", "C2", "C4"]);

        let two_cycle = pair(&[0, 0], &[(0, 1), (1, 0)], &[]);
        assert_eq!(classify(&two_cycle).tag, Cycle);
        let with_b = pair(&[0, 0], &[(0, 1), (1, 0)], &[(0, q(1, 5))]);
        assert_eq!(classify(&with_b).tag, NoRComplement);

        let star = pair(&[0, 0, 0, 0], &[(0, 1), (0, 2), (0, 3)], &[]);
        assert_eq!(classify(&star).tag, NoRComplement);
        let elliptic_tail = pair(&[1, 0], &[(0, 1)], &[]);
        assert_eq!(classify(&elliptic_tail).tag, NoRComplement);
        let loop_on_chain = pair(&[0, 0], &[(0, 1), (0, 0)], &[]);
        assert_eq!(classify(&loop_on_chain).tag, NoRComplement);
    }

    #[test]
    fn r_complement_examples() {
        let r = has_r_complement(&pair(&[0], &[], &[(0, q(1, 2)), (0, q(1, 2))])).unwrap();
        assert_eq!(mults(&r), [q(1, 1), q(1, 1)]);
        assert!(!r.supports_extended);
        assert!(has_r_complement(&pair(&[1], &[], &[(0, q(1, 3))])).is_none());
        let cycle = has_r_complement(&pair(&[0, 0], &[(0, 1), (0, 1)], &[])).unwrap();
        assert!(cycle.boundary.is_empty());

        let lone = has_r_complement(&pair(&[0], &[], &[(0, q(1, 3))])).unwrap();
        assert_eq!(mults(&lone), [q(1, 1), q(1, 1)]);
        assert!(lone.supports_extended);

        let chain = has_r_complement(&pair(&[0, 0], &[(0, 1)], &[(0, q(1, 3))])).unwrap();
        assert_eq!(chain.boundary.len(), 2);
        assert_eq!(chain.boundary[0].mult, q(1, 1));
        assert_eq!(chain.boundary[1].component, "C2");
        assert_eq!(chain.boundary[1].point, "F1");
    }
}
