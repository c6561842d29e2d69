use std::fmt;

use super::Formula;

const IMP: u8 = 1;
const OR: u8 = 2;
const AND: u8 = 3;
const UNARY: u8 = 4;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Implies(..) => IMP,
        Formula::Or(..) => OR,
        Formula::And(..) => AND,
        _ => UNARY,
    }
}

fn write_at(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let parens = precedence(f) < min;
    if parens {
        out.write_str("(")?;
    }
    match f {
        Formula::Var(name) => out.write_str(name)?,
        Formula::Top => out.write_str("true")?,
        Formula::Bottom => out.write_str("false")?,
        Formula::Not(a) => {
            out.write_str("~")?;
            write_at(a, UNARY, out)?;
        }
        Formula::Box(axis, a) => {
            write!(out, "[{axis}]")?;
            write_at(a, UNARY, out)?;
        }
        Formula::Diamond(axis, a) => {
            write!(out, "<{axis}>")?;
            write_at(a, UNARY, out)?;
        }
        Formula::And(a, b) => {
            write_at(a, AND, out)?;
            out.write_str(" & ")?;
            write_at(b, UNARY, out)?;
        }
        Formula::Or(a, b) => {
            write_at(a, OR, out)?;
            out.write_str(" | ")?;
            write_at(b, AND, out)?;
        }
        Formula::Implies(a, b) => {
            write_at(a, OR, out)?;
            out.write_str(" -> ")?;
            write_at(b, IMP, out)?;
        }
    }
    if parens {
        out.write_str(")")?;
    }
    Ok(())
}

/// Renders with the minimal parenthesisation that parses back to the same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(self, IMP, f)
    }
}
