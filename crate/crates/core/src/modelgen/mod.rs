//! Small simplicial models: exhaustive enumeration up to isomorphism, seeded
//! random sampling, and the named fixtures.
//!
//! Every agent draws from a pool of `vertex_variants` vertices; variant `k`
//! carries valuation `k mod 2^atoms`, so with one atom and two variants the
//! pool holds one vertex per valuation. Vertex ids spell the valuation of the
//! agent's atoms in declaration order, then `_agent`, then one prime per
//! repeated valuation: `0_a`, `1_a`, `0_a'`.

pub mod fixtures;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{validate_model, RawFacet, RawModel, RawVertex, SimplicialModel, MAX_ELEMENTS};
use crate::formula::Signature;

pub const DEFAULT_CAP: u64 = 1_000_000;
/// Environment variable overriding [`DEFAULT_CAP`].
pub const CAP_ENV: &str = "SIMPLICHECK_CAP";

/// The enumeration cap in force: `SIMPLICHECK_CAP` if set and numeric, else [`DEFAULT_CAP`].
pub fn enumeration_cap() -> u64 {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelGenError {
    #[error("model spec out of bounds: {0}")]
    OutOfBounds(String),
    #[error("spec would enumerate up to {projected} candidate models, above the cap of {cap} (set {CAP_ENV} to raise it)")]
    SpecTooLarge { projected: u128, cap: u64 },
    #[error("family part `{0}` lists explicit models and cannot be regenerated")]
    NotRegenerable(String),
}

/// Shape of the models in a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub agents: usize,
    pub atoms_per_agent: usize,
    pub max_facets: usize,
    pub vertex_variants: usize,
}

impl ModelSpec {
    /// A spec with two vertex variants per agent.
    pub fn new(agents: usize, atoms_per_agent: usize, max_facets: usize) -> Self {
        ModelSpec {
            agents,
            atoms_per_agent,
            max_facets,
            vertex_variants: 2,
        }
    }

    pub fn signature(&self) -> Signature {
        Signature::standard(self.agents, self.atoms_per_agent)
    }

    fn check(&self) -> Result<(), ModelGenError> {
        let bad = |msg: String| Err(ModelGenError::OutOfBounds(msg));
        if !(2..=26).contains(&self.agents) {
            return bad(format!("{} agents (need 2 to 26)", self.agents));
        }
        if self.atoms_per_agent > 10 {
            return bad(format!("{} atoms per agent (at most 10)", self.atoms_per_agent));
        }
        if self.max_facets == 0 {
            return bad("max_facets must be at least 1".into());
        }
        if self.vertex_variants == 0 {
            return bad("vertex_variants must be at least 1".into());
        }
        if self.agents * self.vertex_variants > MAX_ELEMENTS
            || self.agents * self.atoms_per_agent > MAX_ELEMENTS
        {
            return bad(format!("more than {MAX_ELEMENTS} vertices or atoms"));
        }
        Ok(())
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} agents, {} atom(s) each, at most {} facet(s), {} variant(s) per agent",
            self.agents, self.atoms_per_agent, self.max_facets, self.vertex_variants
        )
    }
}

/// One source of models in a family.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilyPart {
    Exhaustive { spec: ModelSpec },
    Random { spec: ModelSpec, seed: u64, count: usize },
    Fixtures,
    Listed { name: String, count: usize },
}

/// How a family was built; recorded in every report.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub parts: Vec<FamilyPart>,
}

impl FamilySpec {
    /// Exhaustive two-agent models with one atom each and at most two facets,
    /// plus 500 random three-agent models with at most three facets, seed 42.
    pub fn default_family() -> Self {
        FamilySpec {
            parts: vec![
                FamilyPart::Exhaustive {
                    spec: ModelSpec::new(2, 1, 2),
                },
                FamilyPart::Random {
                    spec: ModelSpec::new(3, 1, 3),
                    seed: 42,
                    count: 500,
                },
            ],
        }
    }

    pub fn exhaustive(spec: ModelSpec) -> Self {
        FamilySpec {
            parts: vec![FamilyPart::Exhaustive { spec }],
        }
    }
}

/// A finite, ordered collection of models.
#[derive(Clone, Debug)]
pub struct ModelFamily {
    spec: FamilySpec,
    models: Vec<SimplicialModel>,
}

impl ModelFamily {
    /// Builds every part of `spec` in order, using [`enumeration_cap`].
    pub fn build(spec: &FamilySpec) -> Result<Self, ModelGenError> {
        Self::build_with_cap(spec, enumeration_cap())
    }

    pub fn build_with_cap(spec: &FamilySpec, cap: u64) -> Result<Self, ModelGenError> {
        let mut models = Vec::new();
        for part in &spec.parts {
            match part {
                FamilyPart::Exhaustive { spec } => models.extend(enumerate_models_with_cap(spec, cap)?),
                FamilyPart::Random { spec, seed, count } => {
                    spec.check()?;
                    let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                    models.extend((0..*count).map(|_| random_model_with(&mut rng, spec)));
                }
                FamilyPart::Fixtures => models.extend(fixtures::all().into_iter().map(|(_, m)| m)),
                FamilyPart::Listed { name, .. } => return Err(ModelGenError::NotRegenerable(name.clone())),
            }
        }
        Ok(ModelFamily {
            spec: spec.clone(),
            models,
        })
    }

    pub fn default_family() -> Self {
        Self::build(&FamilySpec::default_family()).expect("default family is within the default cap")
    }

    /// A family of explicitly given models.
    pub fn from_models(name: impl Into<String>, models: Vec<SimplicialModel>) -> Self {
        ModelFamily {
            spec: FamilySpec {
                parts: vec![FamilyPart::Listed {
                    name: name.into(),
                    count: models.len(),
                }],
            },
            models,
        }
    }

    pub fn spec(&self) -> &FamilySpec {
        &self.spec
    }

    pub fn models(&self) -> &[SimplicialModel] {
        &self.models
    }

    pub fn len(&self) -> usize {
        self.models.len()
    }

    pub fn is_empty(&self) -> bool {
        self.models.is_empty()
    }
}

struct PoolVertex {
    agent: usize,
    valuation: u64,
    id: String,
}

/// The vertex pool of a spec; vertex `agent * variants + k` is variant `k`.
struct Pool {
    spec: ModelSpec,
    sig: Signature,
    vertices: Vec<PoolVertex>,
}

impl Pool {
    fn new(spec: &ModelSpec) -> Self {
        let sig = spec.signature();
        let valuations = 1u64 << spec.atoms_per_agent;
        let mut vertices = Vec::new();
        for (agent, name) in sig.agents().iter().enumerate() {
            for k in 0..spec.vertex_variants as u64 {
                let valuation = k % valuations;
                let bits: String = if spec.atoms_per_agent == 0 {
                    "0".into()
                } else {
                    (0..spec.atoms_per_agent)
                        .map(|i| if valuation >> i & 1 == 1 { '1' } else { '0' })
                        .collect()
                };
                let primes = "'".repeat((k / valuations) as usize);
                vertices.push(PoolVertex {
                    agent,
                    valuation,
                    id: format!("{bits}_{name}{primes}"),
                });
            }
        }
        Pool {
            spec: *spec,
            sig,
            vertices,
        }
    }

    /// Every chromatic nonempty subset of the pool, as a bitmask.
    fn candidate_facets(&self) -> Vec<u64> {
        let v = self.spec.vertex_variants;
        let mut out = Vec::new();
        let mut choice = vec![0usize; self.spec.agents];
        loop {
            let mut mask = 0u64;
            for (agent, &c) in choice.iter().enumerate() {
                if c > 0 {
                    mask |= 1 << (agent * v + c - 1);
                }
            }
            if mask != 0 {
                out.push(mask);
            }
            // Odometer over {absent, variant 0, ..} per agent.
            let mut i = 0;
            loop {
                if i == choice.len() {
                    return out;
                }
                choice[i] += 1;
                if choice[i] <= v {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    /// Permutations of pool indices that fix color and valuation.
    fn automorphisms(&self) -> Vec<Vec<usize>> {
        let mut classes: BTreeMap<(usize, u64), Vec<usize>> = BTreeMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            classes.entry((v.agent, v.valuation)).or_default().push(i);
        }
        let mut perms = vec![(0..self.vertices.len()).collect::<Vec<_>>()];
        for members in classes.values().filter(|m| m.len() > 1) {
            let orders = permutations(members);
            perms = perms
                .into_iter()
                .flat_map(|p| {
                    orders.iter().map(move |order| {
                        let mut q = p.clone();
                        for (from, to) in members.iter().zip(order) {
                            q[*from] = *to;
                        }
                        q
                    })
                })
                .collect();
        }
        perms
    }

    fn model(&self, facets: &[u64]) -> SimplicialModel {
        let used = facets.iter().fold(0u64, |acc, f| acc | f);
        let agent_names = self.sig.agents();
        let mut atoms = BTreeMap::new();
        for atom in self.sig.atoms() {
            atoms
                .entry(atom.owner.0.clone())
                .or_insert_with(Vec::new)
                .push(atom.name.clone());
        }
        let vertices = (0..self.vertices.len())
            .filter(|i| used >> i & 1 == 1)
            .map(|i| {
                let v = &self.vertices[i];
                let agent = &agent_names[v.agent];
                let true_atoms = self
                    .sig
                    .atoms_of(agent)
                    .enumerate()
                    .filter(|(k, _)| v.valuation >> k & 1 == 1)
                    .map(|(_, a)| a.name.clone())
                    .collect();
                RawVertex {
                    id: v.id.clone(),
                    agent: agent.0.clone(),
                    true_atoms,
                }
            })
            .collect();
        let facets = facets
            .iter()
            .map(|&f| {
                RawFacet::Plain(
                    (0..self.vertices.len())
                        .filter(|i| f >> i & 1 == 1)
                        .map(|i| self.vertices[i].id.clone())
                        .collect(),
                )
            })
            .collect();
        let raw = RawModel {
            agents: agent_names.iter().map(|a| a.0.clone()).collect(),
            atoms,
            vertices,
            facets,
        };
        validate_model(&raw).expect("generated models are well formed")
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn apply(perm: &[usize], mask: u64) -> u64 {
    perm.iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .fold(0, |acc, (_, &j)| acc | 1 << j)
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Upper bound on the facet sets an exhaustive enumeration of `spec` inspects.
pub fn projected_count(spec: &ModelSpec) -> u128 {
    let candidates = (spec.vertex_variants as u128 + 1).saturating_pow(spec.agents as u32) - 1;
    (1..=spec.max_facets as u128)
        .take_while(|&k| k <= candidates)
        .fold(0u128, |acc, k| acc.saturating_add(binomial(candidates, k)))
}

/// Sort key of the canonical model order: facet count, then the sorted
/// list of facets, each a sorted list of vertex ids.
pub fn canonical_order_key(model: &SimplicialModel) -> (usize, Vec<Vec<String>>) {
    let mut facets: Vec<Vec<String>> = model
        .facets()
        .iter()
        .map(|&f| {
            let mut ids: Vec<String> = model.vertex_ids(f).into_iter().map(str::to_owned).collect();
            ids.sort();
            ids
        })
        .collect();
    facets.sort();
    (facets.len(), facets)
}

pub fn canonical_order(x: &SimplicialModel, y: &SimplicialModel) -> Ordering {
    canonical_order_key(x).cmp(&canonical_order_key(y))
}

/// One representative per isomorphism class of the models of `spec`, in
/// canonical order.
pub fn enumerate_models(spec: &ModelSpec) -> Result<Vec<SimplicialModel>, ModelGenError> {
    enumerate_models_with_cap(spec, enumeration_cap())
}

pub fn enumerate_models_with_cap(spec: &ModelSpec, cap: u64) -> Result<Vec<SimplicialModel>, ModelGenError> {
    spec.check()?;
    let projected = projected_count(spec);
    if projected > cap as u128 {
        return Err(ModelGenError::SpecTooLarge { projected, cap });
    }
    let pool = Pool::new(spec);
    let candidates = pool.candidate_facets();
    let perms = pool.automorphisms();
    let mut seen = BTreeSet::new();
    let mut chosen = Vec::new();
    antichains(&candidates, 0, spec.max_facets, &mut chosen, &mut |facets| {
        let key = perms
            .iter()
            .map(|p| {
                let mut k: Vec<u64> = facets.iter().map(|&f| apply(p, f)).collect();
                k.sort_unstable();
                k
            })
            .min()
            .expect("identity permutation is present");
        seen.insert(key);
    });
    let mut models: Vec<SimplicialModel> = seen.iter().map(|k| pool.model(k)).collect();
    models.sort_by_cached_key(canonical_order_key);
    Ok(models)
}

fn antichains(
    candidates: &[u64],
    start: usize,
    budget: usize,
    chosen: &mut Vec<u64>,
    visit: &mut impl FnMut(&[u64]),
) {
    for i in start..candidates.len() {
        let c = candidates[i];
        if chosen.iter().any(|&f| f & c == f || f & c == c) {
            continue;
        }
        chosen.push(c);
        visit(chosen);
        if budget > 1 {
            antichains(candidates, i + 1, budget - 1, chosen, visit);
        }
        chosen.pop();
    }
}

/// A random model of `spec`, deterministic in `seed`.
pub fn random_model(seed: u64, spec: &ModelSpec) -> Result<SimplicialModel, ModelGenError> {
    spec.check()?;
    Ok(random_model_with(&mut ChaCha8Rng::seed_from_u64(seed), spec))
}

/// Draws between one and `max_facets` facets: a uniform size, then that many
/// distinct agents, each with a uniform vertex variant. Facets contained in
/// others are dropped.
fn random_model_with<R: Rng + ?Sized>(rng: &mut R, spec: &ModelSpec) -> SimplicialModel {
    let pool = Pool::new(spec);
    let count = rng.gen_range(1..=spec.max_facets);
    let mut agents: Vec<usize> = (0..spec.agents).collect();
    let mut drawn: Vec<u64> = (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=spec.agents);
            agents.shuffle(rng);
            agents[..size].iter().fold(0u64, |acc, &a| {
                acc | 1 << (a * spec.vertex_variants + rng.gen_range(0..spec.vertex_variants))
            })
        })
        .collect();
    drawn.sort_unstable();
    drawn.dedup();
    let maximal: Vec<u64> = drawn
        .iter()
        .copied()
        .filter(|&f| !drawn.iter().any(|&g| g != f && g & f == f))
        .collect();
    pool.model(&maximal)
}

/// Whether some bijection of vertices preserving color and valuation maps
/// the facets of `x` onto those of `y`. Agent and atom names must coincide.
pub fn isomorphic(x: &SimplicialModel, y: &SimplicialModel) -> bool {
    if x.agents() != y.agents() || x.atoms() != y.atoms() || x.facets().len() != y.facets().len() {
        return false;
    }
    let classes = |m: &SimplicialModel| {
        let mut c: BTreeMap<(usize, u64), Vec<usize>> = BTreeMap::new();
        for (i, v) in m.vertices().iter().enumerate() {
            c.entry((v.color, v.true_atoms.0)).or_default().push(i);
        }
        c
    };
    let (cx, cy) = (classes(x), classes(y));
    if cx.len() != cy.len() || cx.iter().zip(&cy).any(|((kx, vx), (ky, vy))| kx != ky || vx.len() != vy.len()) {
        return false;
    }
    let target: BTreeSet<u64> = y.facets().iter().map(|f| f.mask()).collect();
    let groups: Vec<(&Vec<usize>, Vec<Vec<usize>>)> = cx
        .values()
        .zip(cy.values())
        .map(|(from, to)| (from, permutations(to)))
        .collect();
    let mut map = vec![0usize; x.vertices().len()];
    search(&groups, 0, &mut map, &|map| {
        x.facets().iter().all(|f| target.contains(&apply(map, f.mask())))
    })
}

fn search(
    groups: &[(&Vec<usize>, Vec<Vec<usize>>)],
    depth: usize,
    map: &mut Vec<usize>,
    accept: &dyn Fn(&[usize]) -> bool,
) -> bool {
    let Some((from, orders)) = groups.get(depth) else {
        return accept(map);
    };
    orders.iter().any(|order| {
        for (&i, &j) in from.iter().zip(order) {
            map[i] = j;
        }
        search(groups, depth + 1, map, accept)
    })
}
