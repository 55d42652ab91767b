use super::{Formula, Group};

/// Prints the core AST. `parse(print(f)) == f` for every formula.
pub fn print(f: &Formula) -> String {
    let mut out = String::new();
    Printer { top: None, sugar: false }.formula(f, &mut out);
    out
}

/// Prints with abbreviations recovered (`[K a]`, `->`, `|`, `<->`, and `T`/`F`
/// when `top` is the encoding of `T` in use). Parsing the output under the
/// same policy yields `f` again.
pub fn print_sugared(f: &Formula, top: Option<&Formula>) -> String {
    let mut out = String::new();
    Printer { top, sugar: true }.formula(f, &mut out);
    out
}

struct Printer<'a> {
    top: Option<&'a Formula>,
    sugar: bool,
}

enum View<'f> {
    Top,
    Bottom,
    Global(&'f str),
    Local(&'f str),
    Not(&'f Formula),
    Diamond(&'f Group, &'f Formula),
    Box(&'f Group, &'f Formula),
    Binary(&'static str, &'f Formula, &'f Formula),
}

impl View<'_> {
    fn is_binary(&self) -> bool {
        matches!(self, View::Binary(..))
    }
}

impl Printer<'_> {
    fn view<'f>(&self, f: &'f Formula) -> View<'f> {
        if self.sugar {
            if let Some(top) = self.top {
                if f == top {
                    return View::Top;
                }
                if let Formula::Not(inner) = f {
                    if inner.as_ref() == top {
                        return View::Bottom;
                    }
                }
            }
            // `~<K a> T` reads better than `[K a] F`.
            if let Some((group, body)) = f.as_box().filter(|_| !self.diamond_of_top(f)) {
                return View::Box(group, body);
            }
            if let Some((l, r)) = f.as_or() {
                // `~(~x & ~y)`: `->` when `~x` has its own sugar, else `|`.
                let (antecedent, _) = f.as_implies().expect("every or is an implication");
                if matches!(self.view(antecedent), View::Not(_)) {
                    return View::Binary("|", l, r);
                }
            }
            if let Some((l, r)) = f.as_iff() {
                return View::Binary("<->", l, r);
            }
            if let Some((l, r)) = f.as_implies() {
                return View::Binary("->", l, r);
            }
        }
        match f {
            Formula::Global(a) => View::Global(a.as_str()),
            Formula::Local(p) => View::Local(&p.name),
            Formula::Not(g) => View::Not(g),
            Formula::And(l, r) => View::Binary("&", l, r),
            Formula::Diamond(group, body) => View::Diamond(group, body),
        }
    }

    fn diamond_of_top(&self, f: &Formula) -> bool {
        match (self.top, f) {
            (Some(top), Formula::Not(inner)) => matches!(inner.as_ref(), Formula::Diamond(_, body) if body.as_ref() == top),
            _ => false,
        }
    }

    /// Atoms, constants, and negations of those need no parentheses anywhere.
    fn is_simple(&self, f: &Formula) -> bool {
        match self.view(f) {
            View::Top | View::Bottom | View::Global(_) | View::Local(_) => true,
            View::Not(g) => self.is_simple(g),
            _ => false,
        }
    }

    fn formula(&self, f: &Formula, out: &mut String) {
        match self.view(f) {
            View::Top => out.push('T'),
            View::Bottom => out.push('F'),
            View::Global(a) => {
                out.push('@');
                out.push_str(a);
            }
            View::Local(p) => out.push_str(p),
            View::Not(g) => {
                out.push('~');
                self.unary_operand(g, out);
            }
            View::Diamond(group, body) => {
                self.modality(group, '<', '>', out);
                self.unary_operand(body, out);
            }
            View::Box(group, body) => {
                self.modality(group, '[', ']', out);
                self.unary_operand(body, out);
            }
            View::Binary(op, l, r) => {
                self.binary_operand(l, out);
                out.push(' ');
                out.push_str(op);
                out.push(' ');
                self.binary_operand(r, out);
            }
        }
    }

    fn modality(&self, group: &Group, open: char, close: char, out: &mut String) {
        out.push(open);
        match group.as_singleton() {
            Some(a) if self.sugar => {
                out.push_str("K ");
                out.push_str(a.as_str());
            }
            _ => {
                out.push_str("D{");
                let names: Vec<&str> = group.agents().map(|a| a.as_str()).collect();
                out.push_str(&names.join(","));
                out.push('}');
            }
        }
        out.push(close);
        out.push(' ');
    }

    fn unary_operand(&self, f: &Formula, out: &mut String) {
        if self.view(f).is_binary() {
            self.parenthesized(f, out);
        } else {
            self.formula(f, out);
        }
    }

    fn binary_operand(&self, f: &Formula, out: &mut String) {
        if self.is_simple(f) {
            self.formula(f, out);
        } else {
            self.parenthesized(f, out);
        }
    }

    fn parenthesized(&self, f: &Formula, out: &mut String) {
        out.push('(');
        self.formula(f, out);
        out.push(')');
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, Signature, TopPolicy};

    #[test]
    fn core_printing() {
        let p = Formula::local("p_a", "a");
        assert_eq!(
            print(&Formula::not(Formula::and(p.clone(), Formula::not(p)))),
            "~(p_a & ~p_a)"
        );
        assert_eq!(
            print(&Formula::possible("a", Formula::local("p_b", "b"))),
            "<D{a}> p_b"
        );
        let sig = Signature::standard(3, 1);
        let f = parse("<D{c,a}> @b", &sig, TopPolicy::Glocal).unwrap();
        assert_eq!(print(&f), "<D{a,c}> @b");
    }

    #[test]
    fn sugared_printing() {
        let sig = Signature::standard(3, 1);
        let top = sig.top(TopPolicy::TwoValuedLocal).unwrap();
        let show = |text: &str| {
            let f = parse(text, &sig, TopPolicy::TwoValuedLocal).unwrap();
            print_sugared(&f, Some(&top))
        };
        assert_eq!(show("[K a] p_b"), "[K a] p_b");
        assert_eq!(show("<K a> T -> p_a"), "(<K a> T) -> p_a");
        assert_eq!(show("<K a> <K b> T"), "<K a> <K b> T");
        assert_eq!(show("p_a | ~p_b"), "p_a | ~p_b");
        assert_eq!(show("p_a <-> p_b"), "p_a <-> p_b");
        assert_eq!(show("[D{a,b}] F"), "[D{a,b}] F");
        assert_eq!(show("~(p_a & p_b) & p_c"), "(~(p_a & p_b)) & p_c");
    }

    #[test]
    fn printing_round_trips() {
        let sig = Signature::standard(3, 1);
        let top = sig.top(TopPolicy::Glocal).unwrap();
        for text in [
            "~(p_a & ~p_a)",
            "<D{a,b}> (p_a -> [K c] ~@c)",
            "(p_a | p_b) <-> ~~p_c",
            "[K a] T & F",
        ] {
            let f = parse(text, &sig, TopPolicy::Glocal).unwrap();
            assert_eq!(parse(&print(&f), &sig, TopPolicy::Glocal).unwrap(), f);
            let s = print_sugared(&f, Some(&top));
            assert_eq!(parse(&s, &sig, TopPolicy::Glocal).unwrap(), f, "{s}");
        }
    }
}
