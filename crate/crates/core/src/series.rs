//! Formal power series in commuting coordinates with algebra-valued
//! coefficients, truncated at a total coordinate degree.
//!
//! Used for exponential coordinates `e^{mu a} e^{lam_c tau} e^{eta v}`,
//! adjoint conjugation, 2x2 matrix exponentials and the composition law of
//! the exponential coordinates.

use alloc::borrow::Cow;
use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::Error;
use crate::freealg::{GeneratorId, NCPoly, Word};
use crate::normalize::{Normalizer, Presentation};
use crate::scalar::{inv_factorial, GaussRational, ParamSymbol, Scalar};

/// A commuting coordinate. `lam_c` is the coordinate paired with `tau`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoordSymbol(Cow<'static, str>);

impl CoordSymbol {
    pub const MU: CoordSymbol = CoordSymbol(Cow::Borrowed("mu"));
    pub const ETA: CoordSymbol = CoordSymbol(Cow::Borrowed("eta"));
    pub const LAM_C: CoordSymbol = CoordSymbol(Cow::Borrowed("lam_c"));
    pub const MU_P: CoordSymbol = CoordSymbol(Cow::Borrowed("mu'"));
    pub const ETA_P: CoordSymbol = CoordSymbol(Cow::Borrowed("eta'"));
    pub const LAM_C_P: CoordSymbol = CoordSymbol(Cow::Borrowed("lam_c'"));

    /// Identifier optionally followed by primes.
    pub fn new(name: &str) -> Result<Self, Error> {
        let base = name.trim_end_matches('\'');
        let ok = base.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && base.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(Error::InvalidName(name.into()));
        }
        Ok(CoordSymbol(Cow::Owned(name.into())))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    pub fn primed(&self) -> CoordSymbol {
        CoordSymbol(Cow::Owned(format!("{}'", self.0)))
    }
}

impl fmt::Display for CoordSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Product of coordinates, sorted, positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoordMonomial(Vec<(CoordSymbol, u32)>);

impl CoordMonomial {
    pub fn one() -> Self {
        CoordMonomial(Vec::new())
    }

    pub fn var(c: CoordSymbol) -> Self {
        CoordMonomial(vec![(c, 1)])
    }

    pub fn from_factors(f: impl IntoIterator<Item = (CoordSymbol, u32)>) -> Self {
        let mut m = CoordMonomial::one();
        for (c, e) in f {
            if e > 0 {
                m = m.mul(&CoordMonomial(vec![(c, e)]));
            }
        }
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, c: &CoordSymbol) -> u32 {
        self.0.iter().find(|(d, _)| d == c).map_or(0, |(_, e)| *e)
    }

    pub fn mul(&self, o: &CoordMonomial) -> CoordMonomial {
        let mut map: BTreeMap<CoordSymbol, u32> = self.0.iter().cloned().collect();
        for (c, e) in &o.0 {
            *map.entry(c.clone()).or_default() += e;
        }
        CoordMonomial(map.into_iter().collect())
    }

    /// Removes one power of `c`; `None` if absent. The factor is the old exponent.
    fn differentiate(&self, c: &CoordSymbol) -> Option<(u32, CoordMonomial)> {
        let e = self.exponent(c);
        if e == 0 {
            return None;
        }
        let v = self
            .0
            .iter()
            .filter_map(|(d, k)| {
                if d == c {
                    (e > 1).then(|| (d.clone(), e - 1))
                } else {
                    Some((d.clone(), *k))
                }
            })
            .collect();
        Some((e, CoordMonomial(v)))
    }
}

impl fmt::Display for CoordMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (c, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}^{e}")?;
            }
        }
        Ok(())
    }
}

/// `sum_m m * x_m` over coordinate monomials of degree at most `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalSeries {
    order: u32,
    terms: BTreeMap<CoordMonomial, NCPoly>,
}

impl FormalSeries {
    pub fn zero(order: u32) -> Self {
        FormalSeries {
            order,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(x: NCPoly, order: u32) -> Self {
        let mut s = Self::zero(order);
        s.add_term(CoordMonomial::one(), x);
        s
    }

    pub fn one(order: u32) -> Self {
        Self::constant(NCPoly::one(), order)
    }

    /// `c * x`.
    pub fn linear(c: CoordSymbol, x: NCPoly, order: u32) -> Self {
        let mut s = Self::zero(order);
        s.add_term(CoordMonomial::var(c), x);
        s
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn add_term(&mut self, m: CoordMonomial, x: NCPoly) {
        if m.degree() > self.order || x.is_zero() {
            return;
        }
        let slot = self.terms.entry(m.clone()).or_default();
        *slot += &x;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CoordMonomial, &NCPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &CoordMonomial) -> NCPoly {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn same_order(&self, o: &FormalSeries) -> Result<(), Error> {
        if self.order != o.order {
            return Err(Error::Mismatch(format!(
                "series truncated at {} and {}",
                self.order, o.order
            )));
        }
        Ok(())
    }

    pub fn add(&self, o: &FormalSeries) -> Result<FormalSeries, Error> {
        self.same_order(o)?;
        let mut out = self.clone();
        for (m, x) in &o.terms {
            out.add_term(m.clone(), x.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &FormalSeries) -> Result<FormalSeries, Error> {
        self.add(&o.scale(&-Scalar::one()))
    }

    pub fn scale(&self, s: &Scalar) -> FormalSeries {
        let mut out = FormalSeries::zero(self.order);
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x.scale(s));
        }
        out
    }

    /// Truncated product with normal-ordered coefficients.
    pub fn mul(&self, o: &FormalSeries, nz: &mut Normalizer<'_>) -> Result<FormalSeries, Error> {
        self.same_order(o)?;
        let mut out = FormalSeries::zero(self.order);
        for (m1, x1) in &self.terms {
            for (m2, x2) in &o.terms {
                if m1.degree() + m2.degree() > self.order {
                    continue;
                }
                out.add_term(m1.mul(m2), nz.mul(x1, x2));
            }
        }
        Ok(out)
    }

    /// `exp(self)`; the degree-0 coefficient must vanish.
    pub fn exp(&self, nz: &mut Normalizer<'_>) -> Result<FormalSeries, Error> {
        if self.terms.contains_key(&CoordMonomial::one()) {
            return Err(Error::NonZeroConstantTerm);
        }
        let mut out = FormalSeries::one(self.order);
        let mut power = FormalSeries::one(self.order);
        for n in 1..=self.order {
            power = power.mul(self, nz)?;
            if power.is_zero() {
                break;
            }
            out = out.add(&power.scale(&Scalar::constant(GaussRational::new(
                inv_factorial(n),
                Default::default(),
            ))))?;
        }
        Ok(out)
    }

    /// `d/dc`.
    pub fn derivative(&self, c: &CoordSymbol) -> FormalSeries {
        let mut out = FormalSeries::zero(self.order);
        for (m, x) in &self.terms {
            if let Some((e, rest)) = m.differentiate(c) {
                out.add_term(rest, x.scale(&Scalar::from_int(e as i64)));
            }
        }
        out
    }

    /// Substitutes `c = 0`.
    pub fn at_zero(&self, c: &CoordSymbol) -> FormalSeries {
        let mut out = FormalSeries::zero(self.order);
        for (m, x) in &self.terms {
            if m.exponent(c) == 0 {
                out.add_term(m.clone(), x.clone());
            }
        }
        out
    }

    pub fn truncate(&self, order: u32) -> FormalSeries {
        let mut out = FormalSeries::zero(order.min(self.order));
        for (m, x) in &self.terms {
            out.add_term(m.clone(), x.clone());
        }
        out
    }

    /// Scalar-valued view: every coefficient must be a constant.
    pub fn scalar_terms(&self) -> Option<BTreeMap<CoordMonomial, Scalar>> {
        self.terms
            .iter()
            .map(|(m, x)| {
                let c = x.constant_term();
                (x.num_terms() <= 1 && NCPoly::constant(c.clone()) == *x).then(|| (m.clone(), c))
            })
            .collect()
    }

    pub fn show<'a>(&'a self, p: &'a Presentation) -> impl fmt::Display + 'a {
        ShowSeries(p, self)
    }
}

struct ShowSeries<'a>(&'a Presentation, &'a FormalSeries);

impl fmt::Display for ShowSeries<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, x)) in self.1.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let body = self.0.alphabet().show(x).to_string();
            if m.degree() == 0 {
                write!(f, "({body})")?;
            } else {
                write!(f, "{m}*({body})")?;
            }
        }
        Ok(())
    }
}

/// `sum_{n<=order} c^n x^n / n!`.
pub fn exp_series(
    nz: &mut Normalizer<'_>,
    c: CoordSymbol,
    x: &NCPoly,
    order: u32,
) -> Result<FormalSeries, Error> {
    if !x.constant_term().is_zero() {
        return Err(Error::NonZeroConstantTerm);
    }
    FormalSeries::linear(c, x.clone(), order).exp(nz)
}

/// `e^{-c g} x e^{c g} = sum_n c^n/n! [..[x, g], .., g]`.
pub fn ad_conjugate(
    nz: &mut Normalizer<'_>,
    c: CoordSymbol,
    g: GeneratorId,
    x: &NCPoly,
    order: u32,
) -> FormalSeries {
    let gen = NCPoly::gen(g);
    let mut out = FormalSeries::zero(order);
    let mut term = nz.poly(x);
    for n in 0..=order {
        if term.is_zero() {
            break;
        }
        let m = CoordMonomial::from_factors([(c.clone(), n)]);
        out.add_term(m, term.scale(&Scalar::constant(GaussRational::new(
            inv_factorial(n),
            Default::default(),
        ))));
        term = nz.commutator(&term, &gen);
    }
    out
}

/// 2x2 matrix of scalar series in one coordinate; `entries[r][c][n]` is the
/// coefficient of `coord^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix2Series {
    pub order: u32,
    pub entries: [[Vec<Scalar>; 2]; 2],
}

impl Matrix2Series {
    pub fn coefficient(&self, r: usize, c: usize, n: u32) -> Scalar {
        self.entries[r][c]
            .get(n as usize)
            .cloned()
            .unwrap_or_default()
    }

    /// `d/dc E`, entrywise.
    pub fn derivative(&self) -> Matrix2Series {
        let d = |v: &Vec<Scalar>| -> Vec<Scalar> {
            (1..v.len())
                .map(|n| v[n].scale_rational(&crate::scalar::Rational::from_integer((n as i64).into())))
                .collect()
        };
        Matrix2Series {
            order: self.order.saturating_sub(1),
            entries: [
                [d(&self.entries[0][0]), d(&self.entries[0][1])],
                [d(&self.entries[1][0]), d(&self.entries[1][1])],
            ],
        }
    }

    /// Product with a constant matrix on the left, truncated.
    pub fn left_mul(&self, m: &[[Scalar; 2]; 2]) -> Matrix2Series {
        let mut entries: [[Vec<Scalar>; 2]; 2] = Default::default();
        for (r, row) in entries.iter_mut().enumerate() {
            for (c, e) in row.iter_mut().enumerate() {
                *e = (0..=self.order)
                    .map(|n| {
                        &(&m[r][0] * &self.coefficient(0, c, n))
                            + &(&m[r][1] * &self.coefficient(1, c, n))
                    })
                    .collect();
            }
        }
        Matrix2Series {
            order: self.order,
            entries,
        }
    }
}

/// `exp(i c A) = sum_n (i c)^n A^n / n!` up to `c^order`.
pub fn matrix_exp_2x2(a: &[[Scalar; 2]; 2], order: u32) -> Matrix2Series {
    let mut entries: [[Vec<Scalar>; 2]; 2] = Default::default();
    let mut power = [
        [Scalar::one(), Scalar::zero()],
        [Scalar::zero(), Scalar::one()],
    ];
    for n in 0..=order {
        let f = Scalar::i()
            .pow(n)
            .scale_rational(&inv_factorial(n));
        for r in 0..2 {
            for c in 0..2 {
                entries[r][c].push(&power[r][c] * &f);
            }
        }
        power = mat2_mul(a, &power);
    }
    Matrix2Series { order, entries }
}

fn mat2_mul(a: &[[Scalar; 2]; 2], b: &[[Scalar; 2]; 2]) -> [[Scalar; 2]; 2] {
    let e = |r: usize, c: usize| &(&a[r][0] * &b[0][c]) + &(&a[r][1] * &b[1][c]);
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// Coefficients of `exp(i d c) * f(c)` where `f` is a scalar series.
fn times_phase(d: &Scalar, f: &[Scalar], order: u32) -> Vec<Scalar> {
    let phase: Vec<Scalar> = (0..=order)
        .map(|n| (&Scalar::i() * d).pow(n).scale_rational(&inv_factorial(n)))
        .collect();
    (0..=order as usize)
        .map(|n| {
            let mut s = Scalar::zero();
            for (k, ph) in phase.iter().enumerate().take(n + 1) {
                s += &(ph * f.get(n - k).unwrap_or(&Scalar::zero()));
            }
            s
        })
        .collect()
}

/// `sum_k r^k c^(2k+parity) / (2k+parity)!` up to `c^order`.
fn root_series(r: &Scalar, parity: u32, order: u32) -> Vec<Scalar> {
    (0..=order)
        .map(|n| {
            if n % 2 == parity && n >= parity {
                r.pow((n - parity) / 2).scale_rational(&inv_factorial(n))
            } else {
                Scalar::zero()
            }
        })
        .collect()
}

/// Closed form for `A = [[d, b], [c, d]]`:
/// `exp(i t A) = e^{i d t} [[C, i b S], [i c S, C]]` with
/// `C = cosh(t sqrt(r))`, `S = sinh(t sqrt(r)) / sqrt(r)`, `r = -b c`.
pub fn equal_diagonal_closed_form(a: &[[Scalar; 2]; 2], order: u32) -> Option<Matrix2Series> {
    if a[0][0] != a[1][1] {
        return None;
    }
    let d = &a[0][0];
    let r = -(&a[0][1] * &a[1][0]);
    let ch = times_phase(d, &root_series(&r, 0, order), order);
    let sh = times_phase(d, &root_series(&r, 1, order), order);
    let off = |x: &Scalar| -> Vec<Scalar> { sh.iter().map(|s| &(&Scalar::i() * x) * s).collect() };
    Some(Matrix2Series {
        order,
        entries: [[ch.clone(), off(&a[0][1])], [off(&a[1][0]), ch]],
    })
}

/// The matrix `[[1/sigma, -1/lambda], [-1/alpha, 1/sigma]]` as printed.
pub fn printed_conjugation_matrix() -> [[Scalar; 2]; 2] {
    let s = Scalar::param(ParamSymbol::INV_SIGMA);
    let l = Scalar::param(ParamSymbol::INV_LAMBDA);
    let al = Scalar::param(ParamSymbol::INV_ALPHA);
    [[s.clone(), -l], [-al, s]]
}

/// Printed closed form: `e^{i t/sigma} [[cosh, -(alpha/sqrt(al)) sinh],
/// [-(lambda/sqrt(al)) sinh, cosh]]` with real argument `t/sqrt(alpha lambda)`.
pub fn printed_closed_form(order: u32) -> Matrix2Series {
    let s = Scalar::param(ParamSymbol::INV_SIGMA);
    let l = Scalar::param(ParamSymbol::INV_LAMBDA);
    let al = Scalar::param(ParamSymbol::INV_ALPHA);
    let q = &al * &l;
    let ch = times_phase(&s, &root_series(&q, 0, order), order);
    let sh = times_phase(&s, &root_series(&q, 1, order), order);
    let off = |x: &Scalar| -> Vec<Scalar> { sh.iter().map(|v| &-x * v).collect() };
    Matrix2Series {
        order,
        entries: [[ch.clone(), off(&l)], [off(&al), ch]],
    }
}

/// One coefficient where two series disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientDelta {
    pub entry: String,
    pub power: u32,
    pub expected: Scalar,
    pub found: Scalar,
}

impl fmt::Display for CoefficientDelta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at order {}: derived {} vs printed {}",
            self.entry, self.power, self.expected, self.found
        )
    }
}

pub fn matrix_deltas(derived: &Matrix2Series, printed: &Matrix2Series) -> Vec<CoefficientDelta> {
    let mut out = Vec::new();
    for r in 0..2 {
        for c in 0..2 {
            for n in 0..=derived.order.min(printed.order) {
                let (e, f) = (derived.coefficient(r, c, n), printed.coefficient(r, c, n));
                if e != f {
                    out.push(CoefficientDelta {
                        entry: format!("({},{})", r + 1, c + 1),
                        power: n,
                        expected: e,
                        found: f,
                    });
                }
            }
        }
    }
    out
}

/// Outcome of checking the conjugation of `tau` and `v` by `e^{mu' a}`.
#[derive(Clone, Debug)]
pub struct ConjugationReport {
    pub degree: u32,
    /// `A` read off from the first-order terms: `[x, a] = i A (tau, v)`.
    pub matrix: [[Scalar; 2]; 2],
    /// Orders where the adjoint series and `exp(i mu' A)` disagree.
    pub ode_mismatches: Vec<CoefficientDelta>,
    /// `exp(i mu' A)` against the equal-diagonal closed form.
    pub closed_form_mismatches: Vec<CoefficientDelta>,
    /// `None` when `A` has unequal diagonal entries.
    pub closed_form_available: bool,
    /// `r` in `cosh(mu' sqrt(r))`; `r < 0` means trigonometric functions.
    pub argument_square: Scalar,
    /// Entry deltas between derived and printed `A`.
    pub printed_matrix_deltas: Vec<CoefficientDelta>,
    /// Coefficient deltas against the printed hyperbolic closed form.
    pub printed_closed_form_deltas: Vec<CoefficientDelta>,
    /// Coefficient deltas of `x`, `y` against the printed closed form applied to `(tau, v)`.
    pub printed_solution_deltas: Vec<CoefficientDelta>,
}

impl ConjugationReport {
    pub fn passed(&self) -> bool {
        self.closed_form_available
            && self.ode_mismatches.is_empty()
            && self.closed_form_mismatches.is_empty()
    }
}

/// Conjugates `tau` and `v` by `e^{mu' a}` in a family-B presentation and
/// checks the result against the matrix exponential, term by term.
pub fn verify_conjugation_closed_form(
    p: &Presentation,
    degree: u32,
) -> Result<ConjugationReport, Error> {
    let a = p.id("a")?;
    let basis = [p.id("tau")?, p.id("v")?];
    let mut nz = p.normalizer(None);
    let mu = CoordSymbol::MU_P;
    let conj: Vec<FormalSeries> = basis
        .iter()
        .map(|g| ad_conjugate(&mut nz, mu.clone(), a, &NCPoly::gen(*g), degree))
        .collect();
    let coeff = |s: &FormalSeries, n: u32, g: GeneratorId| -> Result<Scalar, Error> {
        let x = s.coefficient(&CoordMonomial::from_factors([(mu.clone(), n)]));
        let lin = x.coefficient(&Word::gen(g));
        let rest = &x - &NCPoly::monomial(Word::gen(g), lin.clone());
        let other = basis.iter().filter(|h| **h != g).fold(rest, |acc, h| {
            &acc - &NCPoly::monomial(Word::gen(*h), x.coefficient(&Word::gen(*h)))
        });
        if !other.is_zero() {
            return Err(Error::Precondition(
                "conjugation leaves the span of tau and v".into(),
            ));
        }
        Ok(lin)
    };
    // First order: [x, a] = i A x, so A = -i * (order-1 coefficients).
    let minus_i = -Scalar::i();
    let mut matrix: [[Scalar; 2]; 2] = Default::default();
    for r in 0..2 {
        for c in 0..2 {
            matrix[r][c] = &minus_i * &coeff(&conj[r], 1, basis[c])?;
        }
    }
    let exp = matrix_exp_2x2(&matrix, degree);
    let mut ode_mismatches = Vec::new();
    let names = ["x", "y"];
    for r in 0..2 {
        for (c, g) in basis.iter().enumerate() {
            for n in 0..=degree {
                let got = coeff(&conj[r], n, *g)?;
                let want = exp.coefficient(r, c, n);
                if got != want {
                    ode_mismatches.push(CoefficientDelta {
                        entry: format!("{}[{}]", names[r], p.alphabet().name(basis[c])),
                        power: n,
                        expected: want,
                        found: got,
                    });
                }
            }
        }
    }
    let closed = equal_diagonal_closed_form(&matrix, degree);
    let closed_form_mismatches = closed
        .as_ref()
        .map(|cf| matrix_deltas(&exp, cf))
        .unwrap_or_default();
    let argument_square = -(&matrix[0][1] * &matrix[1][0]);
    let printed_a = printed_conjugation_matrix();
    let mut printed_matrix_deltas = Vec::new();
    for r in 0..2 {
        for c in 0..2 {
            if matrix[r][c] != printed_a[r][c] {
                printed_matrix_deltas.push(CoefficientDelta {
                    entry: format!("A({},{})", r + 1, c + 1),
                    power: 0,
                    expected: matrix[r][c].clone(),
                    found: printed_a[r][c].clone(),
                });
            }
        }
    }
    let printed = printed_closed_form(degree);
    let printed_closed_form_deltas = matrix_deltas(&exp, &printed);
    let mut printed_solution_deltas = Vec::new();
    for r in 0..2 {
        for (c, g) in basis.iter().enumerate() {
            for n in 0..=degree {
                let got = coeff(&conj[r], n, *g)?;
                let want = printed.coefficient(r, c, n);
                if got != want {
                    printed_solution_deltas.push(CoefficientDelta {
                        entry: format!("{}[{}]", names[r], p.alphabet().name(basis[c])),
                        power: n,
                        expected: got,
                        found: want,
                    });
                }
            }
        }
    }
    Ok(ConjugationReport {
        degree,
        matrix,
        ode_mismatches,
        closed_form_mismatches,
        closed_form_available: closed.is_some(),
        argument_square,
        printed_matrix_deltas,
        printed_closed_form_deltas,
        printed_solution_deltas,
    })
}

/// Exponential coordinates: `prod_k exp(c_k g_k)` in the listed order.
pub fn exponential_coordinates(
    nz: &mut Normalizer<'_>,
    factors: &[(CoordSymbol, GeneratorId)],
    order: u32,
) -> Result<FormalSeries, Error> {
    let mut out = FormalSeries::one(order);
    for (c, g) in factors {
        let e = exp_series(nz, c.clone(), &NCPoly::gen(*g), order)?;
        out = out.mul(&e, nz)?;
    }
    Ok(out)
}

/// Composition functions `c''_k(c, c')` with `f(c) f(c') = f(c'')`.
#[derive(Clone, Debug)]
pub struct GroupLaw {
    pub order: u32,
    pub factors: Vec<(CoordSymbol, GeneratorId)>,
    /// Scalar series for each factor coordinate, in factor order.
    pub composed: Vec<BTreeMap<CoordMonomial, Scalar>>,
}

impl GroupLaw {
    pub fn coordinate(&self, c: &CoordSymbol) -> Option<&BTreeMap<CoordMonomial, Scalar>> {
        self.factors
            .iter()
            .position(|(d, _)| d == c)
            .map(|k| &self.composed[k])
    }

    /// Coefficient of a coordinate monomial in `c''`.
    pub fn coefficient(&self, c: &CoordSymbol, m: &CoordMonomial) -> Scalar {
        self.coordinate(c)
            .and_then(|s| s.get(m).cloned())
            .unwrap_or_default()
    }
}

/// Multiplies two exponential-coordinate elements and refactors the product
/// into the same factor order. The factor order must be the PBW order, so
/// each `c''_k` is the coefficient of the single letter `g_k`. Fails with a
/// residual when the product is not of that form.
pub fn group_law_extract(
    p: &Presentation,
    factors: &[(CoordSymbol, GeneratorId)],
    order: u32,
) -> Result<GroupLaw, Error> {
    if factors.windows(2).any(|w| w[0].1 >= w[1].1) {
        return Err(Error::Precondition(
            "exponential factors must follow the PBW generator order".into(),
        ));
    }
    let mut nz = p.normalizer(None);
    let primed: Vec<(CoordSymbol, GeneratorId)> =
        factors.iter().map(|(c, g)| (c.primed(), *g)).collect();
    let f = exponential_coordinates(&mut nz, factors, order)?;
    let f2 = exponential_coordinates(&mut nz, &primed, order)?;
    let prod = f.mul(&f2, &mut nz)?;
    let mut composed = Vec::new();
    let mut rebuilt = FormalSeries::one(order);
    for (_, g) in factors {
        let w = Word::gen(*g);
        let mut s = BTreeMap::new();
        let mut lin = FormalSeries::zero(order);
        for (m, x) in prod.terms() {
            let c = x.coefficient(&w);
            if !c.is_zero() {
                lin.add_term(m.clone(), NCPoly::monomial(w.clone(), c.clone()));
                s.insert(m.clone(), c);
            }
        }
        rebuilt = rebuilt.mul(&lin.exp(&mut nz)?, &mut nz)?;
        composed.push(s);
    }
    let residual = prod.sub(&rebuilt)?;
    if let Some((m, x)) = residual.terms().next() {
        return Err(Error::Residual(format!(
            "product is not a product of exponentials: {m}*({})",
            p.alphabet().show(x)
        )));
    }
    Ok(GroupLaw {
        order,
        factors: factors.to_vec(),
        composed,
    })
}

/// The family-B coordinates `e^{mu a} e^{lam_c tau} e^{eta v}`.
pub fn family_b_factors(p: &Presentation) -> Result<Vec<(CoordSymbol, GeneratorId)>, Error> {
    Ok(vec![
        (CoordSymbol::MU, p.id("a")?),
        (CoordSymbol::LAM_C, p.id("tau")?),
        (CoordSymbol::ETA, p.id("v")?),
    ])
}

/// The family-A coordinates `e^{mu a} e^{eta v} e^{lam_c tau}`.
pub fn family_a_factors(p: &Presentation) -> Result<Vec<(CoordSymbol, GeneratorId)>, Error> {
    Ok(vec![
        (CoordSymbol::MU, p.id("a")?),
        (CoordSymbol::ETA, p.id("v")?),
        (CoordSymbol::LAM_C, p.id("tau")?),
    ])
}
