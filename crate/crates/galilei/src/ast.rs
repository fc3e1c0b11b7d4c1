//! Surface syntax tree and its printer.
//!
//! The printer emits the minimum parentheses needed for the parser to
//! rebuild the same tree, so `parse(print(t)) == t`.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Func {
    Exp,
    Cosh,
    Sinh,
    /// `coshr(r, x) = Σ r^n x^(2n) / (2n)!`.
    CoshR,
    /// `sinhr(r, x) = Σ r^n x^(2n+1) / (2n+1)!`.
    SinhR,
    Antipode,
    Coproduct,
    Counit,
    Star,
}

impl Func {
    pub const ALL: [Func; 9] = [
        Func::Exp,
        Func::Cosh,
        Func::Sinh,
        Func::CoshR,
        Func::SinhR,
        Func::Antipode,
        Func::Coproduct,
        Func::Counit,
        Func::Star,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Exp => "exp",
            Func::Cosh => "cosh",
            Func::Sinh => "sinh",
            Func::CoshR => "coshr",
            Func::SinhR => "sinhr",
            Func::Antipode => "S",
            Func::Coproduct => "Delta",
            Func::Counit => "eps",
            Func::Star => "star",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Func::CoshR | Func::SinhR => 2,
            _ => 1,
        }
    }

    pub fn from_name(s: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Ast {
    /// Non-negative integer literal, kept as its decimal digits.
    Num(String),
    /// Generator, parameter, `i` or the unit `I`; resolved at evaluation.
    Ident(String),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Tensor(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Div(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
    Commutator(Box<Ast>, Box<Ast>),
    Call(Func, Vec<Ast>),
}

// Binding strength; a child printed below its slot's level gets parentheses.
const SUM: u8 = 1;
const TENSOR: u8 = 2;
const PRODUCT: u8 = 3;
const POWER: u8 = 4;
const ATOM: u8 = 5;

impl Ast {
    fn level(&self) -> u8 {
        match self {
            Ast::Neg(_) | Ast::Add(..) | Ast::Sub(..) => SUM,
            Ast::Tensor(..) => TENSOR,
            Ast::Mul(..) | Ast::Div(..) => PRODUCT,
            Ast::Pow(..) => POWER,
            _ => ATOM,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, slot: u8) -> fmt::Result {
        if self.level() < slot {
            write!(f, "(")?;
            self.write_at(f, SUM)?;
            return write!(f, ")");
        }
        match self {
            Ast::Num(n) => write!(f, "{n}"),
            Ast::Ident(s) => write!(f, "{s}"),
            Ast::Neg(x) => {
                write!(f, "-")?;
                x.write_at(f, TENSOR)
            }
            Ast::Add(l, r) | Ast::Sub(l, r) => {
                l.write_at(f, SUM)?;
                write!(f, " {} ", if matches!(self, Ast::Add(..)) { '+' } else { '-' })?;
                r.write_at(f, TENSOR)
            }
            Ast::Tensor(l, r) => {
                l.write_at(f, TENSOR)?;
                write!(f, " (x) ")?;
                r.write_at(f, PRODUCT)
            }
            Ast::Mul(l, r) | Ast::Div(l, r) => {
                l.write_at(f, PRODUCT)?;
                write!(f, "{}", if matches!(self, Ast::Mul(..)) { '*' } else { '/' })?;
                r.write_at(f, POWER)
            }
            Ast::Pow(b, e) => {
                b.write_at(f, ATOM)?;
                write!(f, "^{e}")
            }
            Ast::Commutator(x, y) => {
                write!(f, "[")?;
                x.write_at(f, SUM)?;
                write!(f, ", ")?;
                y.write_at(f, SUM)?;
                write!(f, "]")
            }
            Ast::Call(func, args) => {
                write!(f, "{}(", func.name())?;
                for (k, a) in args.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    a.write_at(f, SUM)?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Display for Ast {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, SUM)
    }
}
