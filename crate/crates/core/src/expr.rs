//! Symbolic algebra elements: sums and products of generators together with
//! exponential and hyperbolic series, expanded on demand to a working grade.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::freealg::{Alphabet, GeneratorId, NCPoly, TensorPoly};
use crate::normalize::Normalizer;
use crate::scalar::{inv_factorial, ParamSymbol, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Scalar(Scalar),
    Gen(GeneratorId),
    Sum(Vec<Expr>),
    Product(Vec<Expr>),
    Pow(Box<Expr>, u32),
    Commutator(Box<Expr>, Box<Expr>),
    Exp(Box<Expr>),
    Cosh(Box<Expr>),
    Sinh(Box<Expr>),
    /// `Σ r^n x^(2n) / (2n)!`, i.e. `cosh(√r x)` with no root symbol.
    CoshRoot(Scalar, Box<Expr>),
    /// `Σ r^n x^(2n+1) / (2n+1)!`, i.e. `sinh(√r x) / √r`.
    SinhRoot(Scalar, Box<Expr>),
}

impl Expr {
    pub fn scalar(s: Scalar) -> Expr {
        Expr::Scalar(s)
    }

    pub fn one() -> Expr {
        Expr::Scalar(Scalar::one())
    }

    pub fn gen(g: GeneratorId) -> Expr {
        Expr::Gen(g)
    }

    pub fn scaled(s: Scalar, e: Expr) -> Expr {
        Expr::Product(alloc::vec![Expr::Scalar(s), e])
    }

    pub fn negated(e: Expr) -> Expr {
        Expr::scaled(-Scalar::one(), e)
    }

    pub fn sum(items: impl IntoIterator<Item = Expr>) -> Expr {
        Expr::Sum(items.into_iter().collect())
    }

    pub fn product(items: impl IntoIterator<Item = Expr>) -> Expr {
        Expr::Product(items.into_iter().collect())
    }

    pub fn exp(e: Expr) -> Expr {
        Expr::Exp(Box::new(e))
    }

    pub fn cosh_root(r: Scalar, e: Expr) -> Expr {
        Expr::CoshRoot(r, Box::new(e))
    }

    pub fn sinh_root(r: Scalar, e: Expr) -> Expr {
        Expr::SinhRoot(r, Box::new(e))
    }

    /// A polynomial as a sum of scaled words.
    pub fn from_poly(x: &NCPoly) -> Expr {
        Expr::Sum(
            x.terms()
                .map(|(w, c)| {
                    let mut f = alloc::vec![Expr::Scalar(c.clone())];
                    f.extend(w.letters().iter().map(|g| Expr::Gen(*g)));
                    Expr::Product(f)
                })
                .collect(),
        )
    }

    /// Substitutes `p = 0` in every scalar leaf.
    pub fn limit(&self, p: &ParamSymbol) -> Expr {
        let l = |e: &Expr| Box::new(e.limit(p));
        match self {
            Expr::Scalar(s) => Expr::Scalar(s.limit(p)),
            Expr::Gen(g) => Expr::Gen(*g),
            Expr::Sum(v) => Expr::Sum(v.iter().map(|e| e.limit(p)).collect()),
            Expr::Product(v) => Expr::Product(v.iter().map(|e| e.limit(p)).collect()),
            Expr::Pow(e, n) => Expr::Pow(l(e), *n),
            Expr::Commutator(a, b) => Expr::Commutator(l(a), l(b)),
            Expr::Exp(e) => Expr::Exp(l(e)),
            Expr::Cosh(e) => Expr::Cosh(l(e)),
            Expr::Sinh(e) => Expr::Sinh(l(e)),
            Expr::CoshRoot(r, e) => Expr::CoshRoot(r.limit(p), l(e)),
            Expr::SinhRoot(r, e) => Expr::SinhRoot(r.limit(p), l(e)),
        }
    }

    /// Value in the free algebra: words are concatenated, never reordered.
    /// Series nodes are rejected.
    pub fn expand_free(&self) -> Result<NCPoly, Error> {
        match self {
            Expr::Scalar(s) => Ok(NCPoly::constant(s.clone())),
            Expr::Gen(g) => Ok(NCPoly::gen(*g)),
            Expr::Sum(v) => v.iter().try_fold(NCPoly::zero(), |acc, e| Ok(acc + e.expand_free()?)),
            Expr::Product(v) => v.iter().try_fold(NCPoly::one(), |acc, e| Ok(acc * e.expand_free()?)),
            Expr::Pow(e, n) => Ok(e.expand_free()?.pow(*n)),
            Expr::Commutator(a, b) => {
                let (x, y) = (a.expand_free()?, b.expand_free()?);
                Ok(&(&x * &y) - &(&y * &x))
            }
            _ => Err(Error::NeedsTruncation),
        }
    }

    /// Normal-ordered value, truncated at the normalizer's grade. Series
    /// nodes need a truncation grade unless their argument vanishes.
    pub fn expand(&self, nz: &mut Normalizer<'_>) -> Result<NCPoly, Error> {
        match self {
            Expr::Scalar(s) => Ok(nz.poly(&NCPoly::constant(s.clone()))),
            Expr::Gen(g) => {
                let rank = nz.presentation().rank();
                if g.index() >= rank {
                    return Err(Error::UniverseMismatch {
                        generator: g.index(),
                        rank,
                    });
                }
                Ok(nz.poly(&NCPoly::gen(*g)))
            }
            Expr::Sum(v) => {
                let mut out = NCPoly::zero();
                for e in v {
                    out += &e.expand(nz)?;
                }
                Ok(out)
            }
            Expr::Product(v) => {
                let mut out = nz.poly(&NCPoly::one());
                for e in v {
                    let x = e.expand(nz)?;
                    out = nz.mul(&out, &x);
                }
                Ok(out)
            }
            Expr::Pow(e, n) => {
                let x = e.expand(nz)?;
                Ok(nz.pow(&x, *n))
            }
            Expr::Commutator(a, b) => {
                let x = a.expand(nz)?;
                let y = b.expand(nz)?;
                Ok(nz.commutator(&x, &y))
            }
            Expr::Exp(e) => series(nz, e, |n| Some((Scalar::one(), n))),
            Expr::Cosh(e) => series(nz, e, |n| (n % 2 == 0).then(|| (Scalar::one(), n))),
            Expr::Sinh(e) => series(nz, e, |n| (n % 2 == 1).then(|| (Scalar::one(), n))),
            Expr::CoshRoot(r, e) => {
                series(nz, e, |n| (n % 2 == 0).then(|| (r.pow(n / 2), n)))
            }
            Expr::SinhRoot(r, e) => {
                series(nz, e, |n| (n % 2 == 1).then(|| (r.pow(n / 2), n)))
            }
        }
    }

    pub fn show<'a>(&'a self, al: &'a Alphabet) -> impl fmt::Display + 'a {
        ShowExpr(al, self)
    }
}

/// `Σ_n coeff(n) x^n / n!`; `coeff` returns `None` for absent orders.
fn series(
    nz: &mut Normalizer<'_>,
    arg: &Expr,
    coeff: impl Fn(u32) -> Option<(Scalar, u32)>,
) -> Result<NCPoly, Error> {
    let x = arg.expand(nz)?;
    if !x.constant_term().is_zero() {
        return Err(Error::NonZeroConstantTerm);
    }
    if nz.truncation().is_none() && !x.is_zero() {
        return Err(Error::NeedsTruncation);
    }
    let mut out = NCPoly::zero();
    let mut power = nz.poly(&NCPoly::one());
    let mut n = 0u32;
    while !power.is_zero() {
        if let Some((c, k)) = coeff(n) {
            out += &power.scale(&c.scale_rational(&inv_factorial(k)));
        }
        n += 1;
        power = nz.mul(&power, &x);
    }
    Ok(out)
}

/// Sum of tensor products of expressions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TensorExpr {
    pub terms: Vec<Vec<Expr>>,
}

impl TensorExpr {
    pub fn new(terms: Vec<Vec<Expr>>) -> Self {
        TensorExpr { terms }
    }

    /// `x ⊗ I + I ⊗ x`.
    pub fn primitive(g: GeneratorId) -> Self {
        TensorExpr::new(alloc::vec![
            alloc::vec![Expr::gen(g), Expr::one()],
            alloc::vec![Expr::one(), Expr::gen(g)],
        ])
    }

    /// Each tensor term becomes one row; the scalar rides on the first leg.
    pub fn from_tensor(t: &TensorPoly) -> TensorExpr {
        TensorExpr::new(
            t.terms()
                .map(|(k, c)| {
                    k.iter()
                        .enumerate()
                        .map(|(leg, w)| {
                            let mut f = Vec::new();
                            if leg == 0 {
                                f.push(Expr::Scalar(c.clone()));
                            }
                            f.extend(w.letters().iter().map(|g| Expr::Gen(*g)));
                            Expr::Product(f)
                        })
                        .collect()
                })
                .collect(),
        )
    }

    pub fn arity(&self) -> Option<usize> {
        self.terms.first().map(Vec::len)
    }

    pub fn limit(&self, p: &ParamSymbol) -> TensorExpr {
        TensorExpr::new(
            self.terms
                .iter()
                .map(|t| t.iter().map(|e| e.limit(p)).collect())
                .collect(),
        )
    }

    pub fn expand(&self, nz: &mut Normalizer<'_>) -> Result<TensorPoly, Error> {
        let arity = self.arity().unwrap_or(2);
        let mut out = TensorPoly::zero(arity);
        for t in &self.terms {
            if t.len() != arity {
                return Err(Error::ArityMismatch {
                    left: arity,
                    right: t.len(),
                });
            }
            let legs = t
                .iter()
                .map(|e| e.expand(nz))
                .collect::<Result<Vec<_>, _>>()?;
            out.add_assign(&TensorPoly::tensor(&legs)?)?;
        }
        Ok(nz.tensor(&out))
    }

    pub fn show<'a>(&'a self, al: &'a Alphabet) -> impl fmt::Display + 'a {
        ShowTensorExpr(al, self)
    }
}

struct ShowExpr<'a>(&'a Alphabet, &'a Expr);

impl ShowExpr<'_> {
    fn sub<'b>(&'b self, e: &'b Expr) -> ShowExpr<'b> {
        ShowExpr(self.0, e)
    }

    fn atomic(e: &Expr) -> bool {
        match e {
            Expr::Scalar(s) => s.single_term().is_some_and(|(m, c)| {
                m.is_one() && c.is_simple() && !c.is_negative_leading()
            }),
            Expr::Sum(v) | Expr::Product(v) => v.len() == 1 && Self::atomic(&v[0]),
            Expr::Pow(..) => false,
            _ => true,
        }
    }
}

impl fmt::Display for ShowExpr<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.1 {
            Expr::Scalar(s) => write!(f, "{s}"),
            Expr::Gen(g) => write!(f, "{}", self.0.name(*g)),
            Expr::Sum(v) => {
                if v.is_empty() {
                    return write!(f, "0");
                }
                for (k, e) in v.iter().enumerate() {
                    if k > 0 {
                        write!(f, " + ")?;
                    }
                    write!(f, "{}", self.sub(e))?;
                }
                Ok(())
            }
            Expr::Product(v) => {
                if v.is_empty() {
                    return write!(f, "1");
                }
                for (k, e) in v.iter().enumerate() {
                    if k > 0 {
                        write!(f, "*")?;
                    }
                    if Self::atomic(e) {
                        write!(f, "{}", self.sub(e))?;
                    } else {
                        write!(f, "({})", self.sub(e))?;
                    }
                }
                Ok(())
            }
            Expr::Pow(e, n) => {
                if Self::atomic(e) {
                    write!(f, "{}^{n}", self.sub(e))
                } else {
                    write!(f, "({})^{n}", self.sub(e))
                }
            }
            Expr::Commutator(a, b) => write!(f, "[{}, {}]", self.sub(a), self.sub(b)),
            Expr::Exp(e) => write!(f, "exp({})", self.sub(e)),
            Expr::Cosh(e) => write!(f, "cosh({})", self.sub(e)),
            Expr::Sinh(e) => write!(f, "sinh({})", self.sub(e)),
            Expr::CoshRoot(r, e) => write!(f, "coshr({r}, {})", self.sub(e)),
            Expr::SinhRoot(r, e) => write!(f, "sinhr({r}, {})", self.sub(e)),
        }
    }
}

struct ShowTensorExpr<'a>(&'a Alphabet, &'a TensorExpr);

impl fmt::Display for ShowTensorExpr<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.1.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            for (l, e) in t.iter().enumerate() {
                if l > 0 {
                    write!(f, " (x) ")?;
                }
                if matches!(e, Expr::Sum(v) if v.len() > 1) {
                    write!(f, "({})", e.show(self.0))?;
                } else if matches!(e, Expr::Scalar(s) if s.is_one()) {
                    write!(f, "I")?;
                } else {
                    write!(f, "{}", e.show(self.0))?;
                }
            }
        }
        Ok(())
    }
}
