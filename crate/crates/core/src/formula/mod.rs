//! Formulas of the epistemic languages over glocal atoms.
//!
//! The core grammar has global atoms `@a` ("agent a is alive"), local atoms
//! `p_a`, negation, conjunction and the distributed-knowledge diamond
//! `<D{B}>`. Every other connective is sugar and is elaborated at parse time.

mod parse;
mod print;
mod random;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::AgentId;

pub use parse::{parse, ParseError};
pub use print::{print, print_sugared};
pub use random::{random_formula, random_formula_with};

/// A local propositional variable together with the agent owning it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LocalAtom {
    pub name: String,
    pub owner: AgentId,
}

impl LocalAtom {
    pub fn new(name: impl Into<String>, owner: AgentId) -> Self {
        LocalAtom {
            name: name.into(),
            owner,
        }
    }
}

/// A nonempty group of agents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Group(BTreeSet<AgentId>);

impl Group {
    pub fn new(agents: impl IntoIterator<Item = AgentId>) -> Option<Self> {
        let set: BTreeSet<AgentId> = agents.into_iter().collect();
        if set.is_empty() {
            None
        } else {
            Some(Group(set))
        }
    }

    pub fn singleton(agent: AgentId) -> Self {
        Group(BTreeSet::from([agent]))
    }

    pub fn agents(&self) -> impl Iterator<Item = &AgentId> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_singleton(&self) -> Option<&AgentId> {
        if self.0.len() == 1 {
            self.0.iter().next()
        } else {
            None
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    /// Global atom: the agent is alive.
    Global(AgentId),
    Local(LocalAtom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    /// `D̂_B φ`: φ holds somewhere the group cannot tell apart from here.
    Diamond(Group, Box<Formula>),
}

impl Formula {
    pub fn global(agent: impl Into<AgentId>) -> Self {
        Formula::Global(agent.into())
    }

    pub fn local(name: impl Into<String>, owner: impl Into<AgentId>) -> Self {
        Formula::Local(LocalAtom::new(name, owner.into()))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(f: Formula, g: Formula) -> Self {
        Formula::And(Box::new(f), Box::new(g))
    }

    pub fn diamond(group: Group, f: Formula) -> Self {
        Formula::Diamond(group, Box::new(f))
    }

    /// `D_B φ := ¬D̂_B¬φ`
    pub fn boxed(group: Group, f: Formula) -> Self {
        Formula::not(Formula::diamond(group, Formula::not(f)))
    }

    /// `K̂_a φ := D̂_{a} φ`
    pub fn possible(agent: impl Into<AgentId>, f: Formula) -> Self {
        Formula::diamond(Group::singleton(agent.into()), f)
    }

    /// `K_a φ := ¬K̂_a¬φ`
    pub fn knows(agent: impl Into<AgentId>, f: Formula) -> Self {
        Formula::boxed(Group::singleton(agent.into()), f)
    }

    /// `φ ∨ ψ := ¬(¬φ ∧ ¬ψ)`
    pub fn or(f: Formula, g: Formula) -> Self {
        Formula::not(Formula::and(Formula::not(f), Formula::not(g)))
    }

    /// `φ → ψ := ¬(φ ∧ ¬ψ)`
    pub fn implies(f: Formula, g: Formula) -> Self {
        Formula::not(Formula::and(f, Formula::not(g)))
    }

    /// `φ ↔ ψ := (φ → ψ) ∧ (ψ → φ)`
    pub fn iff(f: Formula, g: Formula) -> Self {
        Formula::and(Formula::implies(f.clone(), g.clone()), Formula::implies(g, f))
    }

    /// Modal and connective nesting depth; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Global(_) | Formula::Local(_) => 0,
            Formula::Not(f) | Formula::Diamond(_, f) => 1 + f.depth(),
            Formula::And(f, g) => 1 + f.depth().max(g.depth()),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Formula::Global(_) | Formula::Local(_) => 1,
            Formula::Not(f) | Formula::Diamond(_, f) => 1 + f.size(),
            Formula::And(f, g) => 1 + f.size() + g.size(),
        }
    }

    /// Calls `visit` on every subformula, parents before children.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a Formula)) {
        visit(self);
        match self {
            Formula::Global(_) | Formula::Local(_) => {}
            Formula::Not(f) | Formula::Diamond(_, f) => f.walk(visit),
            Formula::And(f, g) => {
                f.walk(visit);
                g.walk(visit);
            }
        }
    }

    pub fn as_or(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Not(inner) => match inner.as_ref() {
                Formula::And(l, r) => match (l.as_ref(), r.as_ref()) {
                    (Formula::Not(f), Formula::Not(g)) => Some((f, g)),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }
    }

    pub fn as_implies(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Not(inner) => match inner.as_ref() {
                Formula::And(f, r) => match r.as_ref() {
                    Formula::Not(g) => Some((f, g)),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }
    }

    pub fn as_iff(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::And(l, r) => {
                let (f, g) = l.as_implies()?;
                let (g2, f2) = r.as_implies()?;
                (f == f2 && g == g2).then_some((f, g))
            }
            _ => None,
        }
    }

    /// Recognizes `¬D̂_B¬φ` as `D_B φ`.
    pub fn as_box(&self) -> Option<(&Group, &Formula)> {
        match self {
            Formula::Not(inner) => match inner.as_ref() {
                Formula::Diamond(group, body) => match body.as_ref() {
                    Formula::Not(f) => Some((group, f)),
                    _ => None,
                },
                _ => None,
            },
            _ => None,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print(self))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KnowledgeKind {
    Individual,
    Distributed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AtomKind {
    Local,
    Glocal,
}

/// One of the four languages: individual or distributed knowledge, local or glocal atoms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LanguageClass {
    pub knowledge: KnowledgeKind,
    pub atoms: AtomKind,
}

impl LanguageClass {
    pub const FULL: LanguageClass = LanguageClass {
        knowledge: KnowledgeKind::Distributed,
        atoms: AtomKind::Glocal,
    };

    pub fn new(knowledge: KnowledgeKind, atoms: AtomKind) -> Self {
        LanguageClass { knowledge, atoms }
    }

    pub fn contains(self, other: LanguageClass) -> bool {
        (self.knowledge == KnowledgeKind::Distributed || other.knowledge == KnowledgeKind::Individual)
            && (self.atoms == AtomKind::Glocal || other.atoms == AtomKind::Local)
    }
}

impl fmt::Display for LanguageClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = match self.knowledge {
            KnowledgeKind::Individual => "K",
            KnowledgeKind::Distributed => "D",
        };
        let a = match self.atoms {
            AtomKind::Local => "loc",
            AtomKind::Glocal => "gloc",
        };
        write!(f, "L_{k}^{a}")
    }
}

/// The least language containing `f`.
pub fn classify(f: &Formula) -> LanguageClass {
    let mut class = LanguageClass::new(KnowledgeKind::Individual, AtomKind::Local);
    f.walk(&mut |g| match g {
        Formula::Global(_) => class.atoms = AtomKind::Glocal,
        Formula::Diamond(group, _) if group.len() > 1 => {
            class.knowledge = KnowledgeKind::Distributed
        }
        _ => {}
    });
    class
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("atom `{atom}` is owned by unknown agent `{owner}`")]
    UnknownOwner { atom: String, owner: String },
    #[error("atom `{0}` is declared twice")]
    DuplicateAtom(String),
    #[error("a signature needs at least one agent")]
    NoAgents,
    #[error("no local atom is available to encode T")]
    NoAtomForTop,
    #[error("T and F are not expressible in local three-valued face semantics")]
    TopNotExpressible,
    #[error("no nullary production: the language admits no atoms over this signature")]
    NoAtoms,
}

/// How the constants `T` and `F` are encoded.
///
/// Three-valued face semantics has no formula defined at every face, so there
/// is no sound encoding there; `F` is always `¬T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TopPolicy {
    /// `@a ∨ ¬@a` for the first agent; a tautology at every facet.
    Glocal,
    /// `p ∨ ¬p` for the first atom of the first agent owning one; two-valued only.
    TwoValuedLocal,
    /// `T`/`F` are rejected.
    Forbidden,
}

/// Agents and local atoms formulas may mention.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    agents: Vec<AgentId>,
    atoms: Vec<LocalAtom>,
}

impl Signature {
    /// Agents are kept sorted; atoms keep their order grouped by owner.
    pub fn new(agents: Vec<AgentId>, atoms: Vec<LocalAtom>) -> Result<Self, FormulaError> {
        let mut agents = agents;
        agents.sort();
        agents.dedup();
        if agents.is_empty() {
            return Err(FormulaError::NoAgents);
        }
        let mut seen = BTreeSet::new();
        for atom in &atoms {
            if agents.binary_search(&atom.owner).is_err() {
                return Err(FormulaError::UnknownOwner {
                    atom: atom.name.clone(),
                    owner: atom.owner.0.clone(),
                });
            }
            if !seen.insert(&atom.name) {
                return Err(FormulaError::DuplicateAtom(atom.name.clone()));
            }
        }
        let mut atoms = atoms;
        atoms.sort_by(|x, y| x.owner.cmp(&y.owner));
        Ok(Signature { agents, atoms })
    }

    /// Agents `a, b, c, …` with atoms `p_a, p_b, …` when `atoms_per_agent` is 1.
    /// Further atoms are named `q_a`, `r_a`, ….
    pub fn standard(agent_count: usize, atoms_per_agent: usize) -> Self {
        let agents: Vec<AgentId> = (0..agent_count)
            .map(|i| AgentId(((b'a' + i as u8) as char).to_string()))
            .collect();
        let mut atoms = Vec::new();
        for a in &agents {
            for k in 0..atoms_per_agent {
                let letter = (b'p' + k as u8) as char;
                atoms.push(LocalAtom::new(format!("{letter}_{a}"), a.clone()));
            }
        }
        Signature::new(agents, atoms).expect("standard signature is well formed")
    }

    pub fn agents(&self) -> &[AgentId] {
        &self.agents
    }

    pub fn atoms(&self) -> &[LocalAtom] {
        &self.atoms
    }

    pub fn has_agent(&self, agent: &AgentId) -> bool {
        self.agents.binary_search(agent).is_ok()
    }

    pub fn atom(&self, name: &str) -> Option<&LocalAtom> {
        self.atoms.iter().find(|a| a.name == name)
    }

    pub fn atoms_of<'a>(&'a self, agent: &'a AgentId) -> impl Iterator<Item = &'a LocalAtom> + 'a {
        self.atoms.iter().filter(move |a| &a.owner == agent)
    }

    /// The formula standing for `T` under `policy`.
    pub fn top(&self, policy: TopPolicy) -> Result<Formula, FormulaError> {
        match policy {
            TopPolicy::Glocal => {
                let a = Formula::Global(self.agents[0].clone());
                Ok(Formula::or(a.clone(), Formula::not(a)))
            }
            TopPolicy::TwoValuedLocal => {
                let p = self.atoms.first().ok_or(FormulaError::NoAtomForTop)?;
                let p = Formula::Local(p.clone());
                Ok(Formula::or(p.clone(), Formula::not(p)))
            }
            TopPolicy::Forbidden => Err(FormulaError::TopNotExpressible),
        }
    }

    /// The two-valued `T`, falling back to the glocal encoding when there are no atoms.
    pub fn two_valued_top(&self) -> Formula {
        self.top(TopPolicy::TwoValuedLocal)
            .or_else(|_| self.top(TopPolicy::Glocal))
            .expect("glocal top always exists")
    }
}
