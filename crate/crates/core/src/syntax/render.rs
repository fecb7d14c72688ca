use super::Formula;

// Binding strength, loosest first.
const IFF: u8 = 1;
const IMP: u8 = 2;
const OR: u8 = 3;
const AND: u8 = 4;
const UNARY: u8 = 5;

/// Canonical text of a formula with minimal parentheses.
///
/// Abbreviation patterns are printed with their derived connective, so
/// `~p | q` comes out as `p -> q`. The output parses back to the same tree.
pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    write(f, &mut out);
    out
}

fn level(f: &Formula) -> u8 {
    if f.as_equivalence().is_some() {
        IFF
    } else if f.as_conjunction().is_some() {
        AND
    } else if f.as_implication().is_some() {
        IMP
    } else if matches!(f, Formula::Or(..)) {
        OR
    } else {
        UNARY
    }
}

fn write(f: &Formula, out: &mut String) {
    if let Some((a, b)) = f.as_equivalence() {
        binary(a, b, " <-> ", IFF, Assoc::Left, out);
    } else if let Some((a, b)) = f.as_conjunction() {
        binary(a, b, " & ", AND, Assoc::Left, out);
    } else if let Some((a, b)) = f.as_implication() {
        binary(a, b, " -> ", IMP, Assoc::Right, out);
    } else {
        match f {
            Formula::Atom(p) => out.push_str(p),
            Formula::Bottom => out.push_str("false"),
            Formula::Or(a, b) => binary(a, b, " | ", OR, Assoc::Left, out),
            Formula::Neg(inner) => match inner.as_ref() {
                Formula::Bottom => out.push_str("true"),
                Formula::Box(g) if matches!(g.as_ref(), Formula::Neg(_)) => {
                    let Formula::Neg(h) = g.as_ref() else {
                        unreachable!()
                    };
                    out.push_str("dia ");
                    operand(h, out);
                }
                Formula::Announce(a, g) if matches!(g.as_ref(), Formula::Neg(_)) => {
                    let Formula::Neg(h) = g.as_ref() else {
                        unreachable!()
                    };
                    out.push('<');
                    write(a, out);
                    out.push('>');
                    spaced_operand(h, out);
                }
                _ => {
                    out.push('~');
                    operand(inner, out);
                }
            },
            Formula::Know(agent, g) => {
                out.push_str("K ");
                out.push_str(agent);
                out.push(' ');
                operand(g, out);
            }
            Formula::Announce(a, g) => {
                out.push('[');
                write(a, out);
                out.push(']');
                spaced_operand(g, out);
            }
            Formula::Box(g) => {
                out.push_str("box ");
                operand(g, out);
            }
        }
    }
}

#[derive(PartialEq)]
enum Assoc {
    Left,
    Right,
}

fn binary(a: &Formula, b: &Formula, op: &str, lvl: u8, assoc: Assoc, out: &mut String) {
    let la = level(a);
    let lb = level(b);
    wrap(a, la < lvl || (la == lvl && assoc == Assoc::Right), out);
    out.push_str(op);
    wrap(b, lb < lvl || (lb == lvl && assoc == Assoc::Left), out);
}

fn wrap(f: &Formula, parens: bool, out: &mut String) {
    if parens {
        out.push('(');
        write(f, out);
        out.push(')');
    } else {
        write(f, out);
    }
}

fn operand(f: &Formula, out: &mut String) {
    wrap(f, level(f) < UNARY, out);
}

// After `]` or `>`: a space unless a parenthesis follows.
fn spaced_operand(f: &Formula, out: &mut String) {
    if level(f) < UNARY {
        wrap(f, true, out);
    } else {
        out.push(' ');
        write(f, out);
    }
}
