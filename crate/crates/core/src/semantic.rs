//! Concept-set similarity and clustering of nodes into virtual organizations.
//!
//! Nodes advertise the concepts behind their shared resources. Similarity
//! between two nodes is the ratio-model overlap of their (ancestor-closed)
//! concept sets, and a greedy single pass groups nodes into virtual
//! organizations whose representative they resemble at least `tau`.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::{Error, NodeId, Result};

/// Default clustering threshold: nodes join a VO when they share at least
/// half their weighted concept overlap with its representative.
pub const DEFAULT_SIMILARITY_THRESHOLD: f64 = 0.5;

/// Plain in-memory taxonomy: a forest of concept ids linked by `parent`.
#[derive(Debug, Clone, Default)]
pub struct Taxonomy {
    parent: BTreeMap<String, Option<String>>,
}

impl Taxonomy {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a taxonomy from `(concept, parent)` pairs and checks that the
    /// parent links form a forest.
    pub fn from_links<I, S>(links: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, Option<S>)>,
        S: Into<String>,
    {
        let mut taxonomy = Self::new();
        for (concept, parent) in links {
            taxonomy
                .parent
                .insert(concept.into(), parent.map(Into::into));
        }
        taxonomy.validate()?;
        Ok(taxonomy)
    }

    fn validate(&self) -> Result<()> {
        for (concept, parent) in &self.parent {
            if let Some(parent) = parent {
                if !self.parent.contains_key(parent) {
                    return Err(Error::UnknownConcept(parent.clone()));
                }
            }
            // Walk to the root; revisiting the start means a cycle.
            let mut hare = concept;
            let mut steps = 0usize;
            while let Some(Some(next)) = self.parent.get(hare) {
                hare = next;
                steps += 1;
                if steps > self.parent.len() {
                    return Err(Error::TaxonomyCycle(concept.clone()));
                }
            }
        }
        Ok(())
    }

    pub fn contains(&self, concept: &str) -> bool {
        self.parent.contains_key(concept)
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// The set plus every ancestor of each member.
    pub fn closure(&self, set: &ConceptSet) -> Result<ConceptSet> {
        let mut closed = BTreeSet::new();
        for concept in set.iter() {
            if !self.contains(concept) {
                return Err(Error::UnknownConcept(concept.to_string()));
            }
            let mut current = concept;
            loop {
                closed.insert(current.to_string());
                match self.parent.get(current) {
                    Some(Some(parent)) => current = parent,
                    _ => break,
                }
            }
        }
        Ok(ConceptSet { members: closed })
    }
}

/// Finite set of concept identifiers.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ConceptSet {
    members: BTreeSet<String>,
}

impl ConceptSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, concept: impl Into<String>) {
        self.members.insert(concept.into());
    }

    pub fn contains(&self, concept: &str) -> bool {
        self.members.contains(concept)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.members.iter().map(String::as_str)
    }

    fn intersection_size(&self, other: &Self) -> usize {
        self.members.intersection(&other.members).count()
    }

    fn difference_size(&self, other: &Self) -> usize {
        self.members.difference(&other.members).count()
    }
}

impl<S: Into<String>> FromIterator<S> for ConceptSet {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Self {
            members: iter.into_iter().map(Into::into).collect(),
        }
    }
}

/// Weights of the two set differences in the ratio model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimilarityParams {
    pub alpha: f64,
    pub beta: f64,
}

impl SimilarityParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let bad = |w: f64| w.is_nan() || w < 0.0;
        if bad(alpha) || bad(beta) {
            return Err(Error::Config(format!(
                "similarity weights must be non-negative, got alpha = {alpha}, beta = {beta}"
            )));
        }
        Ok(Self { alpha, beta })
    }
}

impl Default for SimilarityParams {
    fn default() -> Self {
        // alpha = beta = 1/2 makes the measure symmetric (Dice coefficient).
        Self {
            alpha: 0.5,
            beta: 0.5,
        }
    }
}

/// Ratio-model similarity of two concept sets:
/// `|A∩B| / (|A∩B| + alpha·|A−B| + beta·|B−A|)`.
///
/// Two empty sets are vacuously alike (similarity 1). Callers that want the
/// taxonomy to matter apply [`Taxonomy::closure`] to both sets first.
pub fn similarity(a: &ConceptSet, b: &ConceptSet, params: SimilarityParams) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 1.0;
    }
    let common = a.intersection_size(b) as f64;
    let only_a = a.difference_size(b) as f64;
    let only_b = b.difference_size(a) as f64;
    // The difference terms are summed before the intersection term so that
    // swapping the arguments along with the weights is bit-exact.
    let denominator = common + (params.alpha * only_a + params.beta * only_b);
    if denominator == 0.0 {
        // Possible only with zero weights and disjoint sets.
        return 0.0;
    }
    common / denominator
}

/// Cluster of nodes with one coordinator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VirtualOrganization {
    pub id: u64,
    pub members: BTreeSet<NodeId>,
    pub coordinator: NodeId,
    /// Similarity threshold the VO was formed with.
    pub threshold: f64,
}

/// Smallest node id of the organization, deterministically.
pub fn elect_coordinator(members: &BTreeSet<NodeId>) -> Result<NodeId> {
    members.iter().next().copied().ok_or(Error::EmptyVo)
}

/// Greedy single-pass clustering.
///
/// Nodes are visited in ascending id order. Each node joins the first
/// existing organization whose representative (founding node) is at least
/// `tau`-similar, otherwise it founds a new one. Every node ends up in
/// exactly one organization.
pub fn cluster(
    nodes: &[(NodeId, ConceptSet)],
    tau: f64,
    params: SimilarityParams,
) -> Result<Vec<VirtualOrganization>> {
    if !(0.0..=1.0).contains(&tau) {
        return Err(Error::Domain {
            what: "clustering threshold",
            value: tau,
        });
    }
    let mut ordered: Vec<&(NodeId, ConceptSet)> = nodes.iter().collect();
    ordered.sort_by_key(|(id, _)| *id);

    // (representative id, representative set, members)
    let mut groups: Vec<(NodeId, &ConceptSet, BTreeSet<NodeId>)> = Vec::new();
    for (id, set) in ordered {
        let home = groups
            .iter_mut()
            .find(|(_, representative, _)| similarity(set, representative, params) >= tau);
        match home {
            Some((_, _, members)) => {
                members.insert(*id);
            }
            None => {
                let mut members = BTreeSet::new();
                members.insert(*id);
                groups.push((*id, set, members));
            }
        }
    }

    groups
        .into_iter()
        .enumerate()
        .map(|(ix, (_, _, members))| {
            let coordinator = elect_coordinator(&members)?;
            Ok(VirtualOrganization {
                id: ix as u64,
                members,
                coordinator,
                threshold: tau,
            })
        })
        .collect()
}

/// On-disk description of a semantic overlay: the taxonomy plus each node's
/// advertised concepts.
///
/// ```json
/// {
///   "concepts": [{"id": "resource", "parent": "node"}, {"id": "node", "parent": null}],
///   "nodes": [{"id": 1, "concepts": ["resource"]}]
/// }
/// ```
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OverlaySpec {
    pub concepts: Vec<ConceptDef>,
    pub nodes: Vec<NodeConcepts>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConceptDef {
    pub id: String,
    #[serde(default)]
    pub parent: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NodeConcepts {
    pub id: NodeId,
    pub concepts: Vec<String>,
}

impl OverlaySpec {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn taxonomy(&self) -> Result<Taxonomy> {
        Taxonomy::from_links(
            self.concepts
                .iter()
                .map(|c| (c.id.clone(), c.parent.clone())),
        )
    }

    /// Node concept sets, ancestor-closed unless `apply_closure` is false.
    pub fn node_sets(&self, apply_closure: bool) -> Result<Vec<(NodeId, ConceptSet)>> {
        let taxonomy = self.taxonomy()?;
        self.nodes
            .iter()
            .map(|node| {
                let raw: ConceptSet = node.concepts.iter().cloned().collect();
                for concept in raw.iter() {
                    if !taxonomy.contains(concept) {
                        return Err(Error::UnknownConcept(concept.to_string()));
                    }
                }
                let set = if apply_closure {
                    taxonomy.closure(&raw)?
                } else {
                    raw
                };
                Ok((node.id, set))
            })
            .collect()
    }
}
