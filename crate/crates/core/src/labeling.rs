//! Whole-model evaluation: labels every evaluation point at once, bottom-up
//! over subformulas. Agrees with the pointwise evaluators by construction of
//! the same clauses; the checker uses it for throughput.

use crate::complex::{AgentSet, Face, SimplicialModel};
use crate::resolve::Resolved;
use crate::semantics3::{Judgement, SemanticsMode, Truth3};

pub struct Labeler<'m> {
    model: &'m SimplicialModel,
    mode: SemanticsMode,
    points: &'m [Face],
    colors: Vec<AgentSet>,
    is_facet: Vec<bool>,
    atoms: Vec<u64>,
    /// χ(X ∩ Y) for every pair of points, row-major.
    shared: Vec<AgentSet>,
}

impl<'m> Labeler<'m> {
    pub fn new(model: &'m SimplicialModel, mode: SemanticsMode) -> Self {
        let points = mode.points(model);
        let n = points.len();
        let mut shared = Vec::with_capacity(n * n);
        for &x in points {
            for &y in points {
                shared.push(model.colors_of_mask(x.intersection(y)));
            }
        }
        Labeler {
            model,
            mode,
            points,
            colors: points.iter().map(|&x| model.colors(x)).collect(),
            is_facet: points.iter().map(|&x| model.is_facet(x)).collect(),
            atoms: points.iter().map(|&x| model.true_atoms(x).0).collect(),
            shared,
        }
    }

    pub fn model(&self) -> &'m SimplicialModel {
        self.model
    }

    pub fn mode(&self) -> SemanticsMode {
        self.mode
    }

    pub fn points(&self) -> &'m [Face] {
        self.points
    }

    pub fn position(&self, x: Face) -> Option<usize> {
        self.points.iter().position(|&p| p == x)
    }

    fn witnesses(&self, i: usize, group: AgentSet) -> impl Iterator<Item = usize> + '_ {
        let n = self.points.len();
        (0..n).filter(move |&j| group.is_subset(self.shared[i * n + j]))
    }

    /// Three-valued judgement at every point.
    pub fn label3(&self, f: &Resolved) -> Vec<Judgement> {
        let n = self.points.len();
        match f {
            Resolved::Alive(a) => (0..n)
                .map(|i| Judgement {
                    defined: self.is_facet[i],
                    satisfied: self.is_facet[i] && self.colors[i].contains(*a),
                })
                .collect(),
            Resolved::Atom { atom, owner } => (0..n)
                .map(|i| Judgement {
                    defined: self.colors[i].contains(*owner),
                    satisfied: self.atoms[i] & (1 << atom) != 0,
                })
                .collect(),
            Resolved::Not(g) => self
                .label3(g)
                .into_iter()
                .map(|j| Judgement {
                    defined: j.defined,
                    satisfied: j.defined && !j.satisfied,
                })
                .collect(),
            Resolved::And(g, h) => self
                .label3(g)
                .into_iter()
                .zip(self.label3(h))
                .map(|(l, r)| Judgement {
                    defined: l.defined && r.defined,
                    satisfied: l.satisfied && r.satisfied,
                })
                .collect(),
            Resolved::Diamond(group, g) => {
                let inner = self.label3(g);
                (0..n)
                    .map(|i| {
                        let mut out = Judgement::default();
                        for j in self.witnesses(i, *group) {
                            out.defined |= inner[j].defined;
                            out.satisfied |= inner[j].satisfied;
                        }
                        out
                    })
                    .collect()
            }
        }
    }

    /// `D_B φ` by its own clause, given the judgements of `φ` at every point.
    pub fn derived_box3(&self, group: AgentSet, body: &[Judgement]) -> Vec<Truth3> {
        (0..self.points.len())
            .map(|i| {
                let mut defined = false;
                let mut all_true = true;
                for j in self.witnesses(i, group) {
                    if body[j].defined {
                        defined = true;
                        all_true &= body[j].satisfied;
                    }
                }
                match (defined, all_true) {
                    (false, _) => Truth3::Undefined,
                    (true, true) => Truth3::True,
                    (true, false) => Truth3::False,
                }
            })
            .collect()
    }

    /// Two-valued truth at every point.
    pub fn label2(&self, f: &Resolved) -> Vec<bool> {
        let n = self.points.len();
        match f {
            Resolved::Alive(a) => (0..n).map(|i| self.colors[i].contains(*a)).collect(),
            Resolved::Atom { atom, .. } => (0..n).map(|i| self.atoms[i] & (1 << atom) != 0).collect(),
            Resolved::Not(g) => self.label2(g).into_iter().map(|b| !b).collect(),
            Resolved::And(g, h) => self
                .label2(g)
                .into_iter()
                .zip(self.label2(h))
                .map(|(l, r)| l && r)
                .collect(),
            Resolved::Diamond(group, g) => {
                let inner = self.label2(g);
                (0..n)
                    .map(|i| self.witnesses(i, *group).any(|j| inner[j]))
                    .collect()
            }
        }
    }
}
