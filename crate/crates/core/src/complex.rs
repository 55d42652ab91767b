//! Chromatic simplicial models.
//!
//! A model is stored by its facets only. Vertices are indexed in lexicographic
//! order of their ids, so a [`Face`] is a bitmask over vertex indices and the
//! downward closure of the facet list is derived on demand.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{LocalAtom, Signature};

/// Upper bound on vertices, agents and atoms per model; sets are `u64` masks.
pub const MAX_ELEMENTS: usize = 64;

/// Name of an agent (a color).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AgentId(pub String);

impl AgentId {
    pub fn new(name: impl Into<String>) -> Self {
        AgentId(name.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for AgentId {
    fn from(s: &str) -> Self {
        AgentId(s.to_owned())
    }
}

/// A set of agent indices of one model.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AgentSet(pub u64);

impl AgentSet {
    pub const EMPTY: AgentSet = AgentSet(0);

    pub fn singleton(agent: usize) -> Self {
        AgentSet(1 << agent)
    }

    pub fn contains(self, agent: usize) -> bool {
        self.0 & (1 << agent) != 0
    }

    pub fn is_subset(self, other: AgentSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        bits(self.0)
    }
}

/// A set of atom indices of one model.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomSet(pub u64);

impl AtomSet {
    pub fn contains(self, atom: usize) -> bool {
        self.0 & (1 << atom) != 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        bits(self.0)
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// A nonempty set of vertices of a model, as a mask over vertex indices.
///
/// Faces order by size first, then lexicographically by their sorted vertex ids.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Face(u64);

impl Face {
    pub fn from_mask(mask: u64) -> Self {
        Face(mask)
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        Face(indices.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn dimension(self) -> isize {
        self.len() as isize - 1
    }

    pub fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersection(self, other: Face) -> u64 {
        self.0 & other.0
    }

    pub fn vertices(self) -> impl Iterator<Item = usize> {
        bits(self.0)
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // Vertex indices follow id order, so comparing index lists compares id tuples.
        self.len()
            .cmp(&other.len())
            .then_with(|| self.vertices().cmp(other.vertices()))
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub color: usize,
    pub true_atoms: AtomSet,
}

/// Facet entry in a model file: a bare vertex list or a named one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawFacet {
    Plain(Vec<String>),
    Named(NamedFacet),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedFacet {
    pub name: String,
    pub vertices: Vec<String>,
}

impl RawFacet {
    pub fn vertices(&self) -> &[String] {
        match self {
            RawFacet::Plain(v) => v,
            RawFacet::Named(n) => &n.vertices,
        }
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            RawFacet::Plain(_) => None,
            RawFacet::Named(n) => Some(&n.name),
        }
    }

    fn label(&self) -> String {
        match self.name() {
            Some(name) => name.to_owned(),
            None => format!("{{{}}}", self.vertices().join(",")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawVertex {
    pub id: String,
    pub agent: String,
    #[serde(default)]
    pub true_atoms: Vec<String>,
}

/// A model description as read from JSON, before validation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawModel {
    pub agents: Vec<String>,
    #[serde(default)]
    pub atoms: BTreeMap<String, Vec<String>>,
    pub vertices: Vec<RawVertex>,
    pub facets: Vec<RawFacet>,
}

impl RawModel {
    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("model serialization is infallible")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("malformed model JSON: {0}")]
    Json(String),
    #[error("a model needs at least two agents, found {0}")]
    FewerThanTwoAgents(usize),
    #[error("agent `{0}` is declared twice")]
    DuplicateAgent(String),
    #[error("agent name must be nonempty")]
    EmptyAgentName,
    #[error("unknown agent `{agent}` referenced by {context}")]
    UnknownAgent { agent: String, context: String },
    #[error("atom `{0}` is declared more than once")]
    DuplicateAtom(String),
    #[error("vertex `{0}` is declared twice")]
    DuplicateVertex(String),
    #[error("vertex `{vertex}` lists atom `{atom}` which is not declared")]
    UnknownAtom { vertex: String, atom: String },
    #[error("vertex `{vertex}` of agent `{agent}` lists atom `{atom}` owned by `{owner}`")]
    AtomOwnerMismatch {
        vertex: String,
        agent: String,
        atom: String,
        owner: String,
    },
    #[error("facet {facet} references unknown vertex `{vertex}`")]
    UnknownVertexRef { facet: String, vertex: String },
    #[error("facet {facet} contains two vertices of agent `{agent}`")]
    DuplicateColorInFace { facet: String, agent: String },
    #[error("facet {facet} is contained in facet {by}")]
    SubsumedFacet { facet: String, by: String },
    #[error("facet {0} is empty")]
    EmptyFacet(String),
    #[error("model has no facets")]
    NoFacets,
    #[error("facet name `{0}` is used twice")]
    DuplicateFacetName(String),
    #[error("vertex `{0}` belongs to no facet")]
    OrphanVertex(String),
    #[error("too many {what}: {count} exceeds the limit of {MAX_ELEMENTS}")]
    TooLarge { what: &'static str, count: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FaceError {
    #[error("{0} is not a face of the model")]
    NotAFace(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("no facet named `{0}`")]
    UnknownFacetName(String),
}

/// A validated simplicial model `(C, χ, ℓ)`.
#[derive(Debug)]
pub struct SimplicialModel {
    agents: Vec<AgentId>,
    atoms: Vec<LocalAtom>,
    atom_owner: Vec<usize>,
    vertices: Vec<Vertex>,
    facets: Vec<Face>,
    facet_names: Vec<Option<String>>,
    faces: OnceLock<Vec<Face>>,
}

impl Clone for SimplicialModel {
    fn clone(&self) -> Self {
        SimplicialModel {
            agents: self.agents.clone(),
            atoms: self.atoms.clone(),
            atom_owner: self.atom_owner.clone(),
            vertices: self.vertices.clone(),
            facets: self.facets.clone(),
            facet_names: self.facet_names.clone(),
            faces: OnceLock::new(),
        }
    }
}

impl PartialEq for SimplicialModel {
    fn eq(&self, other: &Self) -> bool {
        self.to_raw() == other.to_raw()
    }
}

impl Eq for SimplicialModel {}

/// Checks a raw description against every model invariant.
pub fn validate_model(raw: &RawModel) -> Result<SimplicialModel, ModelError> {
    let mut agent_names: Vec<String> = Vec::with_capacity(raw.agents.len());
    for a in &raw.agents {
        if a.is_empty() {
            return Err(ModelError::EmptyAgentName);
        }
        if agent_names.contains(a) {
            return Err(ModelError::DuplicateAgent(a.clone()));
        }
        agent_names.push(a.clone());
    }
    if agent_names.len() < 2 {
        return Err(ModelError::FewerThanTwoAgents(agent_names.len()));
    }
    limit("agents", agent_names.len())?;
    agent_names.sort();
    let agents: Vec<AgentId> = agent_names.iter().map(|a| AgentId(a.clone())).collect();
    let agent_index = |name: &str| agent_names.binary_search_by(|a| a.as_str().cmp(name)).ok();

    // Atoms grouped by owner in agent order, declaration order within an agent.
    let mut atoms = Vec::new();
    let mut atom_owner = Vec::new();
    for owner in raw.atoms.keys() {
        if agent_index(owner).is_none() {
            return Err(ModelError::UnknownAgent {
                agent: owner.clone(),
                context: "the atom table".into(),
            });
        }
    }
    for (ai, agent) in agents.iter().enumerate() {
        for name in raw.atoms.get(agent.as_str()).into_iter().flatten() {
            if atoms.iter().any(|a: &LocalAtom| &a.name == name) {
                return Err(ModelError::DuplicateAtom(name.clone()));
            }
            atoms.push(LocalAtom::new(name.clone(), agent.clone()));
            atom_owner.push(ai);
        }
    }
    limit("atoms", atoms.len())?;

    let mut raw_vertices: Vec<&RawVertex> = raw.vertices.iter().collect();
    raw_vertices.sort_by(|a, b| a.id.cmp(&b.id));
    for w in raw_vertices.windows(2) {
        if w[0].id == w[1].id {
            return Err(ModelError::DuplicateVertex(w[0].id.clone()));
        }
    }
    limit("vertices", raw_vertices.len())?;
    let mut vertices = Vec::with_capacity(raw_vertices.len());
    for rv in &raw_vertices {
        let color = agent_index(&rv.agent).ok_or_else(|| ModelError::UnknownAgent {
            agent: rv.agent.clone(),
            context: format!("vertex `{}`", rv.id),
        })?;
        let mut mask = 0u64;
        for atom in &rv.true_atoms {
            let idx = atoms
                .iter()
                .position(|a| &a.name == atom)
                .ok_or_else(|| ModelError::UnknownAtom {
                    vertex: rv.id.clone(),
                    atom: atom.clone(),
                })?;
            if atom_owner[idx] != color {
                return Err(ModelError::AtomOwnerMismatch {
                    vertex: rv.id.clone(),
                    agent: rv.agent.clone(),
                    atom: atom.clone(),
                    owner: atoms[idx].owner.0.clone(),
                });
            }
            mask |= 1 << idx;
        }
        vertices.push(Vertex {
            id: rv.id.clone(),
            color,
            true_atoms: AtomSet(mask),
        });
    }
    let vertex_index = |id: &str| raw_vertices.binary_search_by(|v| v.id.as_str().cmp(id)).ok();

    if raw.facets.is_empty() {
        return Err(ModelError::NoFacets);
    }
    let mut facets = Vec::with_capacity(raw.facets.len());
    for rf in &raw.facets {
        if rf.vertices().is_empty() {
            return Err(ModelError::EmptyFacet(rf.label()));
        }
        let mut mask = 0u64;
        let mut colors = 0u64;
        for vid in rf.vertices() {
            let vi = vertex_index(vid).ok_or_else(|| ModelError::UnknownVertexRef {
                facet: rf.label(),
                vertex: vid.clone(),
            })?;
            let c = vertices[vi].color;
            if colors & (1 << c) != 0 || mask & (1 << vi) != 0 {
                return Err(ModelError::DuplicateColorInFace {
                    facet: rf.label(),
                    agent: agents[c].0.clone(),
                });
            }
            colors |= 1 << c;
            mask |= 1 << vi;
        }
        facets.push(Face(mask));
    }
    for (i, f) in facets.iter().enumerate() {
        for (j, g) in facets.iter().enumerate() {
            if i != j && f.is_subset(*g) && (f != g || i > j) {
                return Err(ModelError::SubsumedFacet {
                    facet: raw.facets[i].label(),
                    by: raw.facets[j].label(),
                });
            }
        }
    }
    let mut seen = BTreeSet::new();
    for rf in &raw.facets {
        if let Some(name) = rf.name() {
            if !seen.insert(name) {
                return Err(ModelError::DuplicateFacetName(name.to_owned()));
            }
        }
    }
    let covered = facets.iter().fold(0u64, |m, f| m | f.0);
    for (i, v) in vertices.iter().enumerate() {
        if covered & (1 << i) == 0 {
            return Err(ModelError::OrphanVertex(v.id.clone()));
        }
    }

    let mut named: Vec<(Face, Option<String>)> = facets
        .into_iter()
        .zip(raw.facets.iter().map(|f| f.name().map(str::to_owned)))
        .collect();
    named.sort_by_key(|entry| entry.0);
    let (facets, facet_names) = named.into_iter().unzip();

    Ok(SimplicialModel {
        agents,
        atoms,
        atom_owner,
        vertices,
        facets,
        facet_names,
        faces: OnceLock::new(),
    })
}

fn limit(what: &'static str, count: usize) -> Result<(), ModelError> {
    if count > MAX_ELEMENTS {
        Err(ModelError::TooLarge { what, count })
    } else {
        Ok(())
    }
}

impl SimplicialModel {
    pub fn from_json(text: &str) -> Result<Self, ModelError> {
        validate_model(&RawModel::from_json(text)?)
    }

    /// Agents in lexicographic order; indices into this slice are agent indices.
    pub fn agents(&self) -> &[AgentId] {
        &self.agents
    }

    pub fn all_agents(&self) -> AgentSet {
        AgentSet((1u64 << self.agents.len()) - 1)
    }

    pub fn agent_index(&self, agent: &AgentId) -> Option<usize> {
        self.agents.binary_search(agent).ok()
    }

    /// Atoms grouped by owner (agent order), declaration order within an owner.
    pub fn atoms(&self) -> &[LocalAtom] {
        &self.atoms
    }

    pub fn atom_index(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a.name == name)
    }

    pub fn atom_owner(&self, atom: usize) -> usize {
        self.atom_owner[atom]
    }

    pub fn signature(&self) -> Signature {
        Signature::new(self.agents.clone(), self.atoms.clone())
            .expect("a validated model has a consistent signature")
    }

    /// Vertices in lexicographic id order.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.id.as_str().cmp(id)).ok()
    }

    /// The facets `F(C)` in canonical face order.
    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn facet_name(&self, facet_position: usize) -> Option<&str> {
        self.facet_names[facet_position].as_deref()
    }

    pub fn facet_by_name(&self, name: &str) -> Result<Face, FaceError> {
        self.facet_names
            .iter()
            .position(|n| n.as_deref() == Some(name))
            .map(|i| self.facets[i])
            .ok_or_else(|| FaceError::UnknownFacetName(name.to_owned()))
    }

    pub fn is_facet(&self, x: Face) -> bool {
        self.facets.contains(&x)
    }

    pub fn is_face(&self, x: Face) -> bool {
        !x.is_empty() && self.facets.iter().any(|f| x.is_subset(*f))
    }

    /// χ(X)
    pub fn colors(&self, x: Face) -> AgentSet {
        AgentSet(
            x.vertices()
                .fold(0, |m, v| m | (1 << self.vertices[v].color)),
        )
    }

    /// χ of a vertex mask that may be empty (an intersection of faces).
    pub fn colors_of_mask(&self, mask: u64) -> AgentSet {
        AgentSet(bits(mask).fold(0, |m, v| m | (1 << self.vertices[v].color)))
    }

    /// ℓ(X)
    pub fn true_atoms(&self, x: Face) -> AtomSet {
        AtomSet(x.vertices().fold(0, |m, v| m | self.vertices[v].true_atoms.0))
    }

    pub fn vertex_ids(&self, x: Face) -> Vec<&str> {
        x.vertices().map(|v| self.vertices[v].id.as_str()).collect()
    }

    pub fn face_label(&self, x: Face) -> String {
        format!("{{{}}}", self.vertex_ids(x).join(","))
    }

    /// Resolves a list of vertex ids to a face of this model.
    pub fn face_from_ids<S: AsRef<str>>(&self, ids: &[S]) -> Result<Face, FaceError> {
        let mut mask = 0u64;
        for id in ids {
            let i = self
                .vertex_index(id.as_ref())
                .ok_or_else(|| FaceError::UnknownVertex(id.as_ref().to_owned()))?;
            mask |= 1 << i;
        }
        let face = Face(mask);
        if self.is_face(face) {
            Ok(face)
        } else {
            let ids: Vec<&str> = ids.iter().map(|s| s.as_ref()).collect();
            Err(FaceError::NotAFace(format!("{{{}}}", ids.join(","))))
        }
    }

    /// Every face of the complex (the downward closure of the facets), in canonical order.
    pub fn all_faces(&self) -> &[Face] {
        self.faces.get_or_init(|| {
            let mut set = BTreeSet::new();
            for f in &self.facets {
                let m = f.0;
                // Enumerate nonempty submasks.
                let mut sub = m;
                while sub != 0 {
                    set.insert(Face(sub));
                    sub = (sub - 1) & m;
                }
            }
            set.into_iter().collect()
        })
    }

    pub fn facets_containing(&self, x: Face) -> Result<Vec<Face>, FaceError> {
        let found: Vec<Face> = self
            .facets
            .iter()
            .copied()
            .filter(|f| x.is_subset(*f))
            .collect();
        if found.is_empty() || x.is_empty() {
            Err(FaceError::NotAFace(format!("{x:?}")))
        } else {
            Ok(found)
        }
    }

    /// Pure iff every facet has a vertex for every agent.
    pub fn is_pure(&self) -> bool {
        let n = self.agents.len();
        self.facets.iter().all(|f| f.len() == n)
    }

    /// Canonical description: sorted vertices, facets in canonical face order.
    pub fn to_raw(&self) -> RawModel {
        let mut atoms = BTreeMap::new();
        for a in &self.agents {
            atoms.insert(a.0.clone(), Vec::new());
        }
        for atom in &self.atoms {
            atoms
                .get_mut(atom.owner.as_str())
                .expect("owner is an agent")
                .push(atom.name.clone());
        }
        atoms.retain(|_, v: &mut Vec<String>| !v.is_empty());
        RawModel {
            agents: self.agents.iter().map(|a| a.0.clone()).collect(),
            atoms,
            vertices: self
                .vertices
                .iter()
                .map(|v| RawVertex {
                    id: v.id.clone(),
                    agent: self.agents[v.color].0.clone(),
                    true_atoms: v
                        .true_atoms
                        .iter()
                        .map(|i| self.atoms[i].name.clone())
                        .collect(),
                })
                .collect(),
            facets: self
                .facets
                .iter()
                .zip(&self.facet_names)
                .map(|(f, name)| {
                    let vertices = self.vertex_ids(*f).into_iter().map(str::to_owned).collect();
                    match name {
                        Some(name) => RawFacet::Named(NamedFacet {
                            name: name.clone(),
                            vertices,
                        }),
                        None => RawFacet::Plain(vertices),
                    }
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("model serialization is infallible")
    }
}
