//! Evaluation of syntax trees against a loaded algebra.

use galilei_core::hopf::HopfData;
use galilei_core::{
    Alphabet, Expr, GaussRational, GeneratorId, NCPoly, Normalizer, ParamMonomial, ParamSymbol,
    Presentation, Rational, Scalar, TensorExpr, TensorPoly,
};

use crate::ast::{Ast, Func};
use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Scalar(Scalar),
    Poly(NCPoly),
    Tensor(TensorPoly),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Scalar(_) => "a scalar",
            Value::Poly(_) => "an algebra element",
            Value::Tensor(_) => "a tensor",
        }
    }

    fn into_poly(self) -> Result<NCPoly, CliError> {
        match self {
            Value::Scalar(s) => Ok(NCPoly::constant(s)),
            Value::Poly(p) => Ok(p),
            Value::Tensor(_) => Err(CliError::resolve("expected an algebra element, found a tensor")),
        }
    }

    fn into_tensor(self) -> TensorPoly {
        match self {
            Value::Scalar(s) => TensorPoly::from_poly(&NCPoly::constant(s)),
            Value::Poly(p) => TensorPoly::from_poly(&p),
            Value::Tensor(t) => t,
        }
    }
}

/// Names that resolve to inverse parameters when they appear in a divisor.
fn param(name: &str, extra: &[ParamSymbol]) -> Option<ParamSymbol> {
    ParamSymbol::BUILTIN
        .iter()
        .chain(extra)
        .find(|p| p.name() == name)
        .cloned()
}

/// `c * Π p^k` for divisors built from numbers, `i` and parameters.
fn divisor(ast: &Ast, extra: &[ParamSymbol]) -> Option<(GaussRational, ParamMonomial)> {
    match ast {
        Ast::Num(n) => {
            let r: Rational = n.parse().ok()?;
            let c = Scalar::one().scale_rational(&r).as_constant()?;
            Some((c, ParamMonomial::one()))
        }
        Ast::Ident(s) if s == "i" => Some((GaussRational::i(), ParamMonomial::one())),
        Ast::Ident(s) => param(s, extra).map(|p| (GaussRational::one(), ParamMonomial::var(p))),
        Ast::Neg(x) => divisor(x, extra).map(|(c, m)| (-c, m)),
        Ast::Mul(a, b) => {
            let (c1, m1) = divisor(a, extra)?;
            let (c2, m2) = divisor(b, extra)?;
            Some((&c1 * &c2, m1.mul(&m2)))
        }
        Ast::Pow(a, e) => {
            let (c, m) = divisor(a, extra)?;
            let mut mm = ParamMonomial::one();
            for _ in 0..*e {
                mm = mm.mul(&m);
            }
            Some((c.pow(*e), mm))
        }
        _ => None,
    }
}

fn contains_param(ast: &Ast, extra: &[ParamSymbol]) -> bool {
    match ast {
        Ast::Ident(s) => param(s, extra).is_some(),
        Ast::Num(_) => false,
        Ast::Neg(x) | Ast::Pow(x, _) => contains_param(x, extra),
        Ast::Add(a, b)
        | Ast::Sub(a, b)
        | Ast::Tensor(a, b)
        | Ast::Mul(a, b)
        | Ast::Div(a, b)
        | Ast::Commutator(a, b) => contains_param(a, extra) || contains_param(b, extra),
        Ast::Call(_, args) => args.iter().any(|a| contains_param(a, extra)),
    }
}

/// Scalar factor `1 / d`; `d` is either a parameter monomial or numeric.
fn inverse_of(
    d: &Ast,
    extra: &[ParamSymbol],
    numeric: impl FnOnce() -> Result<Value, CliError>,
) -> Result<Scalar, CliError> {
    if let Some((c, m)) = divisor(d, extra) {
        let inv = c.inv().ok_or(galilei_core::Error::DivisionByZero)?;
        return Ok(Scalar::term(inv, m));
    }
    if contains_param(d, extra) {
        return Err(CliError::resolve(format!(
            "divisor `{d}` must be a product of numbers and parameters"
        )));
    }
    match numeric()? {
        Value::Scalar(s) => Ok(Scalar::one().try_div(&s)?),
        v => Err(CliError::resolve(format!("cannot divide by {}", v.kind()))),
    }
}

fn tensor_product(a: &TensorPoly, b: &TensorPoly) -> Result<TensorPoly, CliError> {
    let arity = a.arity() + b.arity();
    if arity > galilei_core::freealg::MAX_ARITY {
        return Err(galilei_core::Error::ArityOverflow(arity).into());
    }
    let mut out = TensorPoly::zero(arity);
    for (k1, c1) in a.terms() {
        for (k2, c2) in b.terms() {
            let mut key = k1.clone();
            key.extend(k2.iter().cloned());
            out.add_term(key, c1 * c2);
        }
    }
    Ok(out)
}

/// Evaluates expressions in one algebra. Products are normal-ordered
/// exactly; series are cut at `series_degree`.
pub struct Evaluator<'a> {
    presentation: &'a Presentation,
    hopf: Option<HopfData<'a>>,
    exact: Normalizer<'a>,
    series: Normalizer<'a>,
    params: Vec<ParamSymbol>,
}

impl<'a> Evaluator<'a> {
    pub fn new(presentation: &'a Presentation, series_degree: u32) -> Self {
        let trunc = presentation.valid_to().map(|v| v.min(series_degree));
        Evaluator {
            presentation,
            hopf: None,
            exact: presentation.normalizer(trunc),
            series: presentation.normalizer(Some(trunc.unwrap_or(series_degree))),
            params: Vec::new(),
        }
    }

    pub fn with_hopf(data: HopfData<'a>, series_degree: u32) -> Self {
        let mut e = Evaluator::new(data.presentation(), series_degree);
        if let Some(d) = data.degree() {
            e.exact = e.presentation.normalizer(Some(d));
        }
        e.hopf = Some(data);
        e
    }

    pub fn with_params(mut self, params: Vec<ParamSymbol>) -> Self {
        self.params = params;
        self
    }

    pub fn presentation(&self) -> &'a Presentation {
        self.presentation
    }

    fn hopf(&mut self, f: Func) -> Result<&mut HopfData<'a>, CliError> {
        self.hopf.as_mut().ok_or_else(|| {
            CliError::resolve(format!("`{}` needs a Hopf structure", f.name()))
        })
    }

    fn ident(&self, s: &str) -> Result<Value, CliError> {
        match s {
            "i" => return Ok(Value::Scalar(Scalar::i())),
            "I" => return Ok(Value::Scalar(Scalar::one())),
            _ => {}
        }
        if let Some(g) = self.presentation.alphabet().id(s) {
            return Ok(Value::Poly(NCPoly::gen(g)));
        }
        if param(s, &self.params).is_some() {
            return Err(CliError::resolve(format!(
                "parameter `{s}` may only appear in a denominator, as in 1/{s}"
            )));
        }
        Err(galilei_core::Error::UnknownGenerator(s.into()).into())
    }

    fn add(&mut self, a: Value, b: Value, negate: bool) -> Result<Value, CliError> {
        let b = if negate { self.neg(b) } else { b };
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x + &y),
            (Value::Tensor(x), y) | (y, Value::Tensor(x)) => {
                let y = y.into_tensor();
                let mut s = x;
                s.add_assign(&y)?;
                Value::Tensor(s)
            }
            (x, y) => Value::Poly(&x.into_poly()? + &y.into_poly()?),
        })
    }

    fn neg(&self, v: Value) -> Value {
        match v {
            Value::Scalar(s) => Value::Scalar(-s),
            Value::Poly(p) => Value::Poly(-p),
            Value::Tensor(t) => Value::Tensor(t.scale(&-Scalar::one())),
        }
    }

    fn mul(&mut self, a: Value, b: Value) -> Result<Value, CliError> {
        Ok(match (a, b) {
            (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x * &y),
            (Value::Scalar(s), Value::Poly(p)) | (Value::Poly(p), Value::Scalar(s)) => {
                Value::Poly(p.scale(&s))
            }
            (Value::Scalar(s), Value::Tensor(t)) | (Value::Tensor(t), Value::Scalar(s)) => {
                Value::Tensor(t.scale(&s))
            }
            (Value::Poly(x), Value::Poly(y)) => Value::Poly(self.exact.mul(&x, &y)),
            (Value::Tensor(x), Value::Tensor(y)) => Value::Tensor(self.exact.tensor_mul(&x, &y)?),
            (x, y) => {
                return Err(CliError::resolve(format!(
                    "cannot multiply {} by {}",
                    x.kind(),
                    y.kind()
                )))
            }
        })
    }

    fn series(&mut self, f: Func, args: &[Ast]) -> Result<Value, CliError> {
        let x = self.eval(args[args.len() - 1].clone())?.into_poly()?;
        let arg = Box::new(Expr::from_poly(&x));
        let e = match f {
            Func::Exp => Expr::Exp(arg),
            Func::Cosh => Expr::Cosh(arg),
            Func::Sinh => Expr::Sinh(arg),
            Func::CoshR | Func::SinhR => {
                let r = match self.eval(args[0].clone())? {
                    Value::Scalar(s) => s,
                    v => {
                        return Err(CliError::resolve(format!(
                            "first argument of `{}` must be a scalar, found {}",
                            f.name(),
                            v.kind()
                        )))
                    }
                };
                if f == Func::CoshR {
                    Expr::CoshRoot(r, arg)
                } else {
                    Expr::SinhRoot(r, arg)
                }
            }
            _ => unreachable!("not a series"),
        };
        let p = e.expand(&mut self.series)?;
        Ok(Value::Poly(self.exact.poly(&p)))
    }

    pub fn eval(&mut self, ast: Ast) -> Result<Value, CliError> {
        match ast {
            Ast::Num(n) => {
                let r: Rational = n
                    .parse()
                    .map_err(|_| CliError::resolve(format!("bad number `{n}`")))?;
                Ok(Value::Scalar(Scalar::one().scale_rational(&r)))
            }
            Ast::Ident(s) => self.ident(&s),
            Ast::Neg(x) => {
                let v = self.eval(*x)?;
                Ok(self.neg(v))
            }
            Ast::Add(a, b) => {
                let (x, y) = (self.eval(*a)?, self.eval(*b)?);
                self.add(x, y, false)
            }
            Ast::Sub(a, b) => {
                let (x, y) = (self.eval(*a)?, self.eval(*b)?);
                self.add(x, y, true)
            }
            Ast::Mul(a, b) => {
                let (x, y) = (self.eval(*a)?, self.eval(*b)?);
                self.mul(x, y)
            }
            Ast::Div(a, b) => {
                let params = self.params.clone();
                let inv = inverse_of(&b, &params, || self.eval((*b).clone()))?;
                let x = self.eval(*a)?;
                self.mul(x, Value::Scalar(inv))
            }
            Ast::Pow(b, e) => {
                let x = self.eval(*b)?;
                let mut acc = match &x {
                    Value::Tensor(t) => Value::Tensor(TensorPoly::one(t.arity())),
                    _ => Value::Scalar(Scalar::one()),
                };
                for _ in 0..e {
                    acc = self.mul(acc, x.clone())?;
                }
                Ok(acc)
            }
            Ast::Tensor(a, b) => {
                let (x, y) = (self.eval(*a)?, self.eval(*b)?);
                Ok(Value::Tensor(tensor_product(&x.into_tensor(), &y.into_tensor())?))
            }
            Ast::Commutator(a, b) => {
                let (x, y) = (self.eval(*a)?, self.eval(*b)?);
                let xy = self.mul(x.clone(), y.clone())?;
                let yx = self.mul(y, x)?;
                self.add(xy, yx, true)
            }
            Ast::Call(f, args) => match f {
                Func::Exp | Func::Cosh | Func::Sinh | Func::CoshR | Func::SinhR => {
                    self.series(f, &args)
                }
                Func::Antipode => {
                    let x = self.eval(args[0].clone())?.into_poly()?;
                    Ok(Value::Poly(self.hopf(f)?.antipode_poly(&x)))
                }
                Func::Coproduct => {
                    let x = self.eval(args[0].clone())?.into_poly()?;
                    Ok(Value::Tensor(self.hopf(f)?.delta(&x)))
                }
                Func::Counit => {
                    let x = self.eval(args[0].clone())?.into_poly()?;
                    Ok(Value::Scalar(self.hopf(f)?.counit(&x)))
                }
                Func::Star => match self.eval(args[0].clone())? {
                    Value::Scalar(s) => Ok(Value::Scalar(s.conj())),
                    Value::Poly(p) => Ok(Value::Poly(self.hopf(f)?.star_poly(&p))),
                    Value::Tensor(t) => Ok(Value::Tensor(self.hopf(f)?.star_tensor(&t))),
                },
            },
        }
    }

    /// Normal-ordered value, with scalars promoted to constant elements.
    pub fn eval_normal(&mut self, ast: Ast) -> Result<Value, CliError> {
        Ok(match self.eval(ast)? {
            Value::Poly(p) => Value::Poly(self.exact.poly(&p)),
            Value::Tensor(t) => Value::Tensor(self.exact.tensor(&t)),
            v => v,
        })
    }

    pub fn show(&self, v: &Value) -> String {
        let al = self.presentation.alphabet();
        match v {
            Value::Scalar(s) => s.to_string(),
            Value::Poly(p) => al.show(p).to_string(),
            Value::Tensor(t) => al.show_tensor(t).to_string(),
        }
    }
}

/// Converts syntax into the engine's symbolic form, keeping series nodes
/// unexpanded so they can be cut at any grade later.
pub struct Symbolic<'a> {
    pub alphabet: &'a Alphabet,
    pub params: &'a [ParamSymbol],
}

impl Symbolic<'_> {
    fn scalar(&self, ast: &Ast) -> Result<Option<Scalar>, CliError> {
        Ok(match ast {
            Ast::Num(n) => Some(Scalar::one().scale_rational(
                &n.parse::<Rational>()
                    .map_err(|_| CliError::resolve(format!("bad number `{n}`")))?,
            )),
            Ast::Ident(s) if s == "i" => Some(Scalar::i()),
            Ast::Neg(x) => self.scalar(x)?.map(|s| -s),
            Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) => {
                match (self.scalar(a)?, self.scalar(b)?) {
                    (Some(x), Some(y)) => Some(match ast {
                        Ast::Add(..) => &x + &y,
                        Ast::Sub(..) => &x - &y,
                        _ => &x * &y,
                    }),
                    _ => None,
                }
            }
            Ast::Div(a, b) => match self.scalar(a)? {
                Some(x) => Some(&x * &self.inverse(b)?),
                None => None,
            },
            Ast::Pow(b, e) => self.scalar(b)?.map(|s| s.pow(*e)),
            _ => None,
        })
    }

    fn inverse(&self, d: &Ast) -> Result<Scalar, CliError> {
        inverse_of(d, self.params, || {
            self.scalar(d)?
                .map(Value::Scalar)
                .ok_or_else(|| CliError::resolve(format!("divisor `{d}` is not a scalar")))
        })
    }

    pub fn expr(&self, ast: &Ast) -> Result<Expr, CliError> {
        if let Some(s) = self.scalar(ast)? {
            return Ok(Expr::Scalar(s));
        }
        Ok(match ast {
            Ast::Ident(s) if s == "I" => Expr::one(),
            Ast::Ident(s) => match self.alphabet.id(s) {
                Some(g) => Expr::Gen(g),
                None if param(s, self.params).is_some() => {
                    return Err(CliError::resolve(format!(
                        "parameter `{s}` may only appear in a denominator"
                    )))
                }
                None => return Err(galilei_core::Error::UnknownGenerator(s.clone()).into()),
            },
            Ast::Neg(x) => Expr::negated(self.expr(x)?),
            Ast::Add(a, b) => Expr::sum([self.expr(a)?, self.expr(b)?]),
            Ast::Sub(a, b) => Expr::sum([self.expr(a)?, Expr::negated(self.expr(b)?)]),
            Ast::Mul(a, b) => Expr::product([self.expr(a)?, self.expr(b)?]),
            Ast::Div(a, b) => Expr::scaled(self.inverse(b)?, self.expr(a)?),
            Ast::Pow(b, e) => Expr::Pow(Box::new(self.expr(b)?), *e),
            Ast::Commutator(a, b) => {
                Expr::Commutator(Box::new(self.expr(a)?), Box::new(self.expr(b)?))
            }
            Ast::Call(f, args) => {
                let last = Box::new(self.expr(&args[args.len() - 1])?);
                match f {
                    Func::Exp => Expr::Exp(last),
                    Func::Cosh => Expr::Cosh(last),
                    Func::Sinh => Expr::Sinh(last),
                    Func::CoshR | Func::SinhR => {
                        let r = self.scalar(&args[0])?.ok_or_else(|| {
                            CliError::resolve(format!(
                                "first argument of `{}` must be a scalar",
                                f.name()
                            ))
                        })?;
                        if *f == Func::CoshR {
                            Expr::CoshRoot(r, last)
                        } else {
                            Expr::SinhRoot(r, last)
                        }
                    }
                    _ => {
                        return Err(CliError::resolve(format!(
                            "`{}` cannot be used in structure data",
                            f.name()
                        )))
                    }
                }
            }
            Ast::Tensor(..) => {
                return Err(CliError::resolve("unexpected tensor sign in an algebra element"))
            }
            Ast::Num(_) => unreachable!("numbers are scalars"),
        })
    }

    fn has_tensor(ast: &Ast) -> bool {
        match ast {
            Ast::Tensor(..) => true,
            Ast::Neg(x) | Ast::Pow(x, _) => Self::has_tensor(x),
            Ast::Add(a, b) | Ast::Sub(a, b) | Ast::Mul(a, b) | Ast::Div(a, b) => {
                Self::has_tensor(a) || Self::has_tensor(b)
            }
            _ => false,
        }
    }

    fn negate(terms: Vec<Vec<Expr>>) -> Vec<Vec<Expr>> {
        Self::scale(terms, Scalar::from_int(-1))
    }

    fn scale(terms: Vec<Vec<Expr>>, s: Scalar) -> Vec<Vec<Expr>> {
        terms
            .into_iter()
            .map(|mut t| {
                t[0] = Expr::scaled(s.clone(), t[0].clone());
                t
            })
            .collect()
    }

    fn tensor_terms(&self, ast: &Ast) -> Result<Vec<Vec<Expr>>, CliError> {
        if !Self::has_tensor(ast) {
            return Ok(vec![vec![self.expr(ast)?]]);
        }
        Ok(match ast {
            Ast::Tensor(a, b) => {
                let (l, r) = (self.tensor_terms(a)?, self.tensor_terms(b)?);
                let mut out = Vec::new();
                for x in &l {
                    for y in &r {
                        out.push(x.iter().chain(y).cloned().collect());
                    }
                }
                out
            }
            Ast::Add(a, b) => {
                let mut l = self.tensor_terms(a)?;
                l.extend(self.tensor_terms(b)?);
                l
            }
            Ast::Sub(a, b) => {
                let mut l = self.tensor_terms(a)?;
                l.extend(Self::negate(self.tensor_terms(b)?));
                l
            }
            Ast::Neg(x) => Self::negate(self.tensor_terms(x)?),
            Ast::Div(a, b) => Self::scale(self.tensor_terms(a)?, self.inverse(b)?),
            Ast::Mul(a, b) => match (Self::has_tensor(a), Self::has_tensor(b)) {
                (false, _) | (_, false) => {
                    let (s, t) = if Self::has_tensor(b) { (a, b) } else { (b, a) };
                    let s = self.scalar(s)?.ok_or_else(|| {
                        CliError::resolve(format!("`{s}` multiplies a tensor but is not a scalar"))
                    })?;
                    Self::scale(self.tensor_terms(t)?, s)
                }
                _ => {
                    let (l, r) = (self.tensor_terms(a)?, self.tensor_terms(b)?);
                    let mut out = Vec::new();
                    for x in &l {
                        for y in &r {
                            if x.len() != y.len() {
                                return Err(galilei_core::Error::ArityMismatch {
                                    left: x.len(),
                                    right: y.len(),
                                }
                                .into());
                            }
                            out.push(
                                x.iter()
                                    .zip(y)
                                    .map(|(p, q)| Expr::product([p.clone(), q.clone()]))
                                    .collect(),
                            );
                        }
                    }
                    out
                }
            },
            _ => return Err(CliError::resolve(format!("unsupported tensor expression `{ast}`"))),
        })
    }

    pub fn tensor_expr(&self, ast: &Ast) -> Result<TensorExpr, CliError> {
        let terms = self.tensor_terms(ast)?;
        if let Some(first) = terms.first() {
            if let Some(bad) = terms.iter().find(|t| t.len() != first.len()) {
                return Err(galilei_core::Error::ArityMismatch {
                    left: first.len(),
                    right: bad.len(),
                }
                .into());
            }
        }
        Ok(TensorExpr::new(terms))
    }
}

/// Generator ids in alphabet order.
pub fn generator_ids(p: &Presentation) -> Vec<GeneratorId> {
    p.alphabet().ids().collect()
}
