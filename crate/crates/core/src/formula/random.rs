use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AtomKind, Formula, FormulaError, Group, KnowledgeKind, LanguageClass, Signature};

#[derive(Clone, Copy)]
enum Production {
    Global,
    Local,
    Not,
    And,
    Diamond,
}

/// A random formula of depth at most `depth` in `class`, deterministic in `seed`.
pub fn random_formula(
    seed: u64,
    depth: usize,
    sig: &Signature,
    class: LanguageClass,
) -> Result<Formula, FormulaError> {
    random_formula_with(&mut ChaCha8Rng::seed_from_u64(seed), depth, sig, class)
}

/// As [`random_formula`], drawing from a caller-owned generator.
///
/// Each node picks uniformly among the productions allowed at its depth; at
/// depth 0 only atoms remain.
pub fn random_formula_with<R: Rng + ?Sized>(
    rng: &mut R,
    depth: usize,
    sig: &Signature,
    class: LanguageClass,
) -> Result<Formula, FormulaError> {
    let mut nullary = Vec::new();
    if class.atoms == AtomKind::Glocal {
        nullary.push(Production::Global);
    }
    if !sig.atoms().is_empty() {
        nullary.push(Production::Local);
    }
    if nullary.is_empty() {
        return Err(FormulaError::NoAtoms);
    }
    let mut all = nullary.clone();
    all.extend([Production::Not, Production::And, Production::Diamond]);
    Ok(generate(rng, depth, sig, class, &nullary, &all))
}

fn generate<R: Rng + ?Sized>(
    rng: &mut R,
    depth: usize,
    sig: &Signature,
    class: LanguageClass,
    nullary: &[Production],
    all: &[Production],
) -> Formula {
    let choices = if depth == 0 { nullary } else { all };
    let production = *choices.choose(rng).expect("nonempty production list");
    match production {
        Production::Global => {
            Formula::Global(sig.agents().choose(rng).expect("agents").clone())
        }
        Production::Local => Formula::Local(sig.atoms().choose(rng).expect("atoms").clone()),
        Production::Not => Formula::not(generate(rng, depth - 1, sig, class, nullary, all)),
        Production::And => {
            let l = generate(rng, depth - 1, sig, class, nullary, all);
            let r = generate(rng, depth - 1, sig, class, nullary, all);
            Formula::and(l, r)
        }
        Production::Diamond => {
            let group = random_group(rng, sig, class.knowledge);
            Formula::diamond(group, generate(rng, depth - 1, sig, class, nullary, all))
        }
    }
}

fn random_group<R: Rng + ?Sized>(rng: &mut R, sig: &Signature, kind: KnowledgeKind) -> Group {
    let agents = sig.agents();
    match kind {
        KnowledgeKind::Individual => {
            Group::singleton(agents.choose(rng).expect("agents").clone())
        }
        KnowledgeKind::Distributed => {
            // Uniform over the 2^n - 1 nonempty subsets.
            let n = agents.len();
            let mask = rng.gen_range(1..(1u64 << n));
            Group::new(
                agents
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, a)| a.clone()),
            )
            .expect("mask is nonzero")
        }
    }
}
