//! Translations of three-valued meaning into two-valued facet semantics.
//!
//! `φ^⋈` holds at a facet iff `φ` is defined there, and `φ^♯` iff `φ` is true
//! there. Both outputs mention no global atom, provided `top` does not.
//! Outputs are not simplified: `⊤ ∧ ψ` stays as written.

use crate::formula::{Formula, Group, Signature};

/// `φ^⋈`.
pub fn translate_def(f: &Formula, top: &Formula) -> Formula {
    match f {
        Formula::Global(_) => top.clone(),
        Formula::Local(p) => Formula::diamond(Group::singleton(p.owner.clone()), top.clone()),
        Formula::Not(g) => translate_def(g, top),
        Formula::And(g, h) => Formula::and(translate_def(g, top), translate_def(h, top)),
        Formula::Diamond(b, g) => Formula::diamond(b.clone(), translate_def(g, top)),
    }
}

/// `φ^♯`.
pub fn translate_sharp(f: &Formula, top: &Formula) -> Formula {
    match f {
        Formula::Global(a) => Formula::diamond(Group::singleton(a.clone()), top.clone()),
        Formula::Local(_) => f.clone(),
        Formula::Not(g) => Formula::and(translate_def(g, top), Formula::not(translate_sharp(g, top))),
        Formula::And(g, h) => Formula::and(translate_sharp(g, top), translate_sharp(h, top)),
        Formula::Diamond(b, g) => Formula::diamond(b.clone(), translate_sharp(g, top)),
    }
}

/// `φ^⋈ → φ^♯`: two-valued facet-valid iff `φ` is three-valued valid.
pub fn translate_validity(f: &Formula, top: &Formula) -> Formula {
    Formula::implies(translate_def(f, top), translate_sharp(f, top))
}

/// The `⊤` used inside translations over `sig`: `p ∨ ¬p` on the first local
/// atom, or the glocal tautology when the signature has no atoms.
pub fn translation_top(sig: &Signature) -> Formula {
    sig.two_valued_top()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{classify, parse, print_sugared, random_formula, AtomKind, LanguageClass, TopPolicy};

    fn setup() -> (Signature, Formula) {
        let sig = Signature::standard(3, 1);
        let top = translation_top(&sig);
        (sig, top)
    }

    fn k_hat(agent: &str, f: Formula) -> Formula {
        Formula::possible(agent, f)
    }

    #[test]
    fn knowledge_of_another_agents_atom() {
        let (_, top) = setup();
        let f = Formula::knows("a", Formula::local("p_b", "b"));
        assert_eq!(translate_def(&f, &top), k_hat("a", k_hat("b", top.clone())));
        let expected = Formula::and(
            k_hat("a", k_hat("b", top.clone())),
            Formula::not(k_hat(
                "a",
                Formula::and(k_hat("b", top.clone()), Formula::not(Formula::local("p_b", "b"))),
            )),
        );
        assert_eq!(translate_sharp(&f, &top), expected);
    }

    #[test]
    fn negated_atoms() {
        let (_, top) = setup();
        let not_pa = Formula::not(Formula::local("p_a", "a"));
        assert_eq!(
            translate_sharp(&not_pa, &top),
            Formula::and(k_hat("a", top.clone()), not_pa.clone())
        );
        let not_a = Formula::not(Formula::global("a"));
        assert_eq!(
            translate_sharp(&not_a, &top),
            Formula::and(top.clone(), Formula::not(k_hat("a", top.clone())))
        );
        assert_eq!(translate_def(&Formula::global("a"), &top), top);
    }

    #[test]
    fn sugared_output() {
        let (sig, top) = setup();
        let show = |text: &str, which: fn(&Formula, &Formula) -> Formula| {
            let f = parse(text, &sig, TopPolicy::Glocal).unwrap();
            print_sugared(&which(&f, &top), Some(&top))
        };
        assert_eq!(show("[K a] p_b", translate_def), "<K a> <K b> T");
        assert_eq!(show("@a", translate_sharp), "<K a> T");
        assert_eq!(show("p_a", translate_validity), "(<K a> T) -> p_a");
    }

    #[test]
    fn outputs_are_local() {
        let (sig, top) = setup();
        for seed in 0..500 {
            let f = random_formula(seed, 4, &sig, LanguageClass::FULL).unwrap();
            assert_eq!(classify(&translate_def(&f, &top)).atoms, AtomKind::Local);
            assert_eq!(classify(&translate_sharp(&f, &top)).atoms, AtomKind::Local);
        }
    }
}
