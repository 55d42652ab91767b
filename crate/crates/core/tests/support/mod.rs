//! Brute-force oracles, written from the definitions and sharing no code
//! with the library beyond the formula AST and the raw model format.
//!
//! Faces are sets of vertex id strings; every clause quantifies over an
//! explicitly materialized list of faces. Nothing is cached.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use simplicheck::formula::{Formula, Group};
use simplicheck::RawModel;

pub type NaiveFace = BTreeSet<String>;

pub struct NaiveModel {
    agent_of: BTreeMap<String, String>,
    true_atoms: BTreeMap<String, BTreeSet<String>>,
    owner_of: BTreeMap<String, String>,
    pub facets: Vec<NaiveFace>,
    pub faces: Vec<NaiveFace>,
}

impl NaiveModel {
    pub fn new(raw: &RawModel) -> Self {
        let facets: Vec<NaiveFace> = raw
            .facets
            .iter()
            .map(|f| f.vertices().iter().cloned().collect())
            .collect();
        let mut faces = BTreeSet::new();
        for facet in &facets {
            let ids: Vec<&String> = facet.iter().collect();
            for mask in 1u32..(1 << ids.len()) {
                let face: NaiveFace = (0..ids.len())
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| ids[i].clone())
                    .collect();
                faces.insert(face);
            }
        }
        NaiveModel {
            agent_of: raw.vertices.iter().map(|v| (v.id.clone(), v.agent.clone())).collect(),
            true_atoms: raw
                .vertices
                .iter()
                .map(|v| (v.id.clone(), v.true_atoms.iter().cloned().collect()))
                .collect(),
            owner_of: raw
                .atoms
                .iter()
                .flat_map(|(agent, atoms)| atoms.iter().map(move |p| (p.clone(), agent.clone())))
                .collect(),
            facets,
            faces: faces.into_iter().collect(),
        }
    }

    pub fn colors(&self, x: &NaiveFace) -> BTreeSet<String> {
        x.iter().map(|v| self.agent_of[v].clone()).collect()
    }

    pub fn is_facet(&self, x: &NaiveFace) -> bool {
        self.facets.contains(x)
    }

    fn holds(&self, x: &NaiveFace, atom: &str) -> bool {
        x.iter().any(|v| self.true_atoms[v].contains(atom))
    }

    fn points(&self, facet_mode: bool) -> &[NaiveFace] {
        if facet_mode {
            &self.facets
        } else {
            &self.faces
        }
    }

    fn witnesses<'a>(&'a self, x: &'a NaiveFace, group: &'a Group, facet_mode: bool) -> impl Iterator<Item = &'a NaiveFace> {
        self.points(facet_mode).iter().filter(move |y| {
            let shared: NaiveFace = x.intersection(y).cloned().collect();
            let colors = self.colors(&shared);
            group.agents().all(|a| colors.contains(a.as_str()))
        })
    }

    /// Three-valued definability.
    pub fn defined(&self, x: &NaiveFace, f: &Formula, facet_mode: bool) -> bool {
        match f {
            Formula::Global(_) => self.is_facet(x),
            Formula::Local(p) => self.colors(x).contains(p.owner.as_str()),
            Formula::Not(g) => self.defined(x, g, facet_mode),
            Formula::And(g, h) => self.defined(x, g, facet_mode) && self.defined(x, h, facet_mode),
            Formula::Diamond(group, g) => self.witnesses(x, group, facet_mode).any(|y| self.defined(y, g, facet_mode)),
        }
    }

    /// Three-valued satisfaction.
    pub fn satisfied(&self, x: &NaiveFace, f: &Formula, facet_mode: bool) -> bool {
        match f {
            Formula::Global(a) => self.is_facet(x) && self.colors(x).contains(a.as_str()),
            Formula::Local(p) => self.holds(x, &p.name),
            Formula::Not(g) => self.defined(x, g, facet_mode) && !self.satisfied(x, g, facet_mode),
            Formula::And(g, h) => self.satisfied(x, g, facet_mode) && self.satisfied(x, h, facet_mode),
            Formula::Diamond(group, g) => self.witnesses(x, group, facet_mode).any(|y| self.satisfied(y, g, facet_mode)),
        }
    }

    /// `None` is undefined.
    pub fn truth3(&self, x: &NaiveFace, f: &Formula, facet_mode: bool) -> Option<bool> {
        self.defined(x, f, facet_mode).then(|| self.satisfied(x, f, facet_mode))
    }

    /// Two-valued truth; a local atom of a dead agent is false.
    pub fn truth2(&self, x: &NaiveFace, f: &Formula, facet_mode: bool) -> bool {
        match f {
            Formula::Global(a) => self.colors(x).contains(a.as_str()),
            Formula::Local(p) => self.holds(x, &p.name),
            Formula::Not(g) => !self.truth2(x, g, facet_mode),
            Formula::And(g, h) => self.truth2(x, g, facet_mode) && self.truth2(x, h, facet_mode),
            Formula::Diamond(group, g) => self.witnesses(x, group, facet_mode).any(|y| self.truth2(y, g, facet_mode)),
        }
    }

    pub fn owner(&self, atom: &str) -> Option<&str> {
        self.owner_of.get(atom).map(String::as_str)
    }
}

/// Every nonempty subset of `agents`, as groups.
pub fn all_groups(agents: &[String]) -> Vec<Group> {
    (1u32..(1 << agents.len()))
        .map(|mask| {
            Group::new(
                (0..agents.len())
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| agents[i].as_str().into()),
            )
            .expect("mask is nonempty")
        })
        .collect()
}

/// Every formula of depth at most `depth` over the agents and atoms of `raw`,
/// with ordered conjunctions.
pub fn all_formulas(raw: &RawModel, depth: usize) -> Vec<Formula> {
    let mut layer: BTreeSet<Formula> = raw.agents.iter().map(|a| Formula::global(a.as_str())).collect();
    for (owner, atoms) in &raw.atoms {
        for p in atoms {
            layer.insert(Formula::local(p.as_str(), owner.as_str()));
        }
    }
    let groups = all_groups(&raw.agents);
    for _ in 0..depth {
        let prev: Vec<Formula> = layer.iter().cloned().collect();
        for f in &prev {
            layer.insert(Formula::not(f.clone()));
            for g in &groups {
                layer.insert(Formula::diamond(g.clone(), f.clone()));
            }
            for g in &prev {
                layer.insert(Formula::and(f.clone(), g.clone()));
            }
        }
    }
    layer.into_iter().collect()
}

/// Number of models up to isomorphism: antichains of at most `max_facets`
/// chromatic vertex sets over a pool with `variants` vertices per agent,
/// variant `k` carrying valuation `k mod 2^atoms`. Isomorphisms permute the
/// pool preserving agent and valuation.
pub fn count_models(agents: usize, atoms: usize, max_facets: usize, variants: usize) -> usize {
    let pool: Vec<(usize, usize)> = (0..agents)
        .flat_map(|a| (0..variants).map(move |k| (a, k % (1 << atoms))))
        .collect();
    let n = pool.len();
    let candidates: Vec<u32> = (1u32..(1 << n))
        .filter(|&s| {
            let colors: Vec<usize> = (0..n).filter(|i| s & (1 << i) != 0).map(|i| pool[i].0).collect();
            colors.iter().collect::<BTreeSet<_>>().len() == colors.len()
        })
        .collect();
    let symmetries: Vec<Vec<usize>> = permutations(n)
        .into_iter()
        .filter(|p| (0..n).all(|i| pool[p[i]] == pool[i]))
        .collect();
    let mut classes = BTreeSet::new();
    for chosen in 1u64..(1 << candidates.len()) {
        if chosen.count_ones() as usize > max_facets {
            continue;
        }
        let facets: Vec<u32> = (0..candidates.len())
            .filter(|i| chosen & (1 << i) != 0)
            .map(|i| candidates[i])
            .collect();
        let antichain = facets
            .iter()
            .all(|&x| facets.iter().all(|&y| x == y || x & y != x));
        if !antichain {
            continue;
        }
        let canonical = symmetries
            .iter()
            .map(|p| {
                let mut image: Vec<u32> = facets
                    .iter()
                    .map(|&x| (0..n).filter(|i| x & (1 << i) != 0).map(|i| 1u32 << p[i]).sum())
                    .collect();
                image.sort_unstable();
                image
            })
            .min()
            .expect("identity is a symmetry");
        classes.insert(canonical);
    }
    classes.len()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for slot in 0..n {
            let mut q = p.clone();
            q.insert(slot, n - 1);
            out.push(q);
        }
    }
    out
}
