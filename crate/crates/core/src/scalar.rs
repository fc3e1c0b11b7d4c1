//! Exact coefficients: polynomials in inverse deformation parameters with
//! Gaussian-rational coefficients.

use alloc::borrow::Cow;
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;

/// Exact rational number.
pub type Rational = BigRational;

/// `re + i*im` with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussRational { re, im }
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::new(Rational::zero(), Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(Rational::from_integer(BigInt::from(n)), Rational::zero())
    }

    /// `num/den`; panics when `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::new(
            Rational::new(BigInt::from(num), BigInt::from(den)),
            Rational::zero(),
        )
    }

    pub fn imag(num: i64, den: i64) -> Self {
        Self::new(
            Rational::zero(),
            Rational::new(BigInt::from(num), BigInt::from(den)),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
    }

    /// Multiplication by `1/n!`-style rational factors without building a full
    /// `GaussRational`.
    pub fn scale(&self, r: &Rational) -> Self {
        Self::new(&self.re * r, &self.im * r)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Sign used when printing a term: negative when the leading nonzero part
    /// is negative.
    pub(crate) fn is_negative_leading(&self) -> bool {
        if !self.re.is_zero() {
            self.re.is_negative()
        } else {
            self.im.is_negative()
        }
    }

    /// True when the value prints as a single factor (no `+`).
    pub(crate) fn is_simple(&self) -> bool {
        self.re.is_zero() || self.im.is_zero()
    }
}

impl Add<&GaussRational> for &GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&GaussRational> for &GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&GaussRational> for &GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &GaussRational) -> GaussRational {
        GaussRational::new(
            &self.re * &rhs.re - &self.im * &rhs.im,
            &self.re * &rhs.im + &self.im * &rhs.re,
        )
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational::new(-self.re, -self.im)
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Writes `|x|` for a real or purely imaginary value, as a standalone factor.
fn fmt_simple_abs(g: &GaussRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if g.im.is_zero() {
        let a = g.re.abs();
        if a.is_integer() {
            write!(f, "{}", a.numer())
        } else {
            write!(f, "({}/{})", a.numer(), a.denom())
        }
    } else {
        let a = g.im.abs();
        match (a.numer().is_one(), a.denom().is_one()) {
            (true, true) => write!(f, "i"),
            (false, true) => write!(f, "{}*i", a.numer()),
            (true, false) => write!(f, "(i/{})", a.denom()),
            (false, false) => write!(f, "({}*i/{})", a.numer(), a.denom()),
        }
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        if self.is_simple() {
            if self.is_negative_leading() {
                write!(f, "-")?;
            }
            return fmt_simple_abs(self, f);
        }
        write!(f, "(")?;
        fmt_rational(&self.re, f)?;
        let im = GaussRational::new(Rational::zero(), self.im.clone());
        if self.im.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        fmt_simple_abs(&im, f)?;
        write!(f, ")")
    }
}

/// An inverse deformation parameter: the symbol named `kappa` stands for `1/κ`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParamSymbol(Cow<'static, str>);

impl ParamSymbol {
    pub const INV_ALPHA: ParamSymbol = ParamSymbol(Cow::Borrowed("alpha"));
    pub const INV_KAPPA: ParamSymbol = ParamSymbol(Cow::Borrowed("kappa"));
    pub const INV_LAMBDA: ParamSymbol = ParamSymbol(Cow::Borrowed("lambda"));
    pub const INV_RHO: ParamSymbol = ParamSymbol(Cow::Borrowed("rho"));
    pub const INV_SIGMA: ParamSymbol = ParamSymbol(Cow::Borrowed("sigma"));

    pub const BUILTIN: [ParamSymbol; 5] = [
        Self::INV_ALPHA,
        Self::INV_KAPPA,
        Self::INV_LAMBDA,
        Self::INV_RHO,
        Self::INV_SIGMA,
    ];

    /// A user-defined parameter. Names must be ASCII identifiers.
    pub fn new(name: &str) -> Result<Self, Error> {
        let ok = !name.is_empty()
            && name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(Error::InvalidName(name.into()));
        }
        Ok(Self::BUILTIN
            .iter()
            .find(|p| p.name() == name)
            .cloned()
            .unwrap_or_else(|| ParamSymbol(Cow::Owned(name.into()))))
    }

    /// Name of the constant this symbol inverts (`kappa` for `1/κ`).
    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ParamSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1/{})", self.0)
    }
}

/// Product of inverse parameters, sorted by symbol with positive exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ParamMonomial(Vec<(ParamSymbol, u32)>);

impl ParamMonomial {
    pub fn one() -> Self {
        ParamMonomial(Vec::new())
    }

    pub fn var(p: ParamSymbol) -> Self {
        ParamMonomial(alloc::vec![(p, 1)])
    }

    pub fn from_factors(factors: impl IntoIterator<Item = (ParamSymbol, u32)>) -> Self {
        let mut m = Self::one();
        for (p, e) in factors {
            if e > 0 {
                m = m.mul(&ParamMonomial(alloc::vec![(p, e)]));
            }
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, p: &ParamSymbol) -> u32 {
        self.0
            .iter()
            .find(|(q, _)| q == p)
            .map_or(0, |(_, e)| *e)
    }

    pub fn factors(&self) -> &[(ParamSymbol, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &ParamMonomial) -> ParamMonomial {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                core::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        ParamMonomial(out)
    }
}

impl fmt::Display for ParamMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (p, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Polynomial in inverse parameters over the Gaussian rationals.
///
/// Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Scalar {
    terms: BTreeMap<ParamMonomial, GaussRational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussRational::one())
    }

    pub fn i() -> Self {
        Self::constant(GaussRational::i())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(GaussRational::from_int(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::constant(GaussRational::ratio(num, den))
    }

    pub fn constant(c: GaussRational) -> Self {
        Self::term(c, ParamMonomial::one())
    }

    /// The inverse parameter `p` itself.
    pub fn param(p: ParamSymbol) -> Self {
        Self::term(GaussRational::one(), ParamMonomial::var(p))
    }

    pub fn term(c: GaussRational, m: ParamMonomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Scalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value when no parameter occurs.
    pub fn as_constant(&self) -> Option<GaussRational> {
        match self.terms.len() {
            0 => Some(GaussRational::zero()),
            1 => self
                .terms
                .get(&ParamMonomial::one())
                .cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ParamMonomial, &GaussRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &ParamMonomial) -> GaussRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, m: ParamMonomial, c: GaussRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// Complex conjugation: `i ↦ -i`, parameters fixed.
    pub fn conj(&self) -> Scalar {
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.conj()))
                .collect(),
        }
    }

    /// Sends the constant behind `p` to infinity, i.e. substitutes `p = 0`.
    pub fn limit(&self, p: &ParamSymbol) -> Scalar {
        Scalar {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(p) == 0)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitutes `p -> -p`: terms odd in `p` change sign.
    pub fn reflect(&self, p: &ParamSymbol) -> Scalar {
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let c = if m.exponent(p) % 2 == 1 { -c.clone() } else { c.clone() };
                    (m.clone(), c)
                })
                .collect(),
        }
    }

    pub fn scale(&self, c: &GaussRational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> Scalar {
        if r.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self
                .terms
                .iter()
                .map(|(m, x)| (m.clone(), x.scale(r)))
                .collect(),
        }
    }

    /// Division by a nonzero numeric constant. Division by anything that
    /// mentions a parameter is outside the polynomial ring and is rejected.
    pub fn try_div(&self, d: &Scalar) -> Result<Scalar, Error> {
        let c = d.as_constant().ok_or(Error::NonNumericDivisor)?;
        let inv = c.inv().ok_or(Error::DivisionByZero)?;
        Ok(self.scale(&inv))
    }

    pub fn pow(&self, n: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Parameters occurring with nonzero coefficient.
    pub fn params(&self) -> Vec<ParamSymbol> {
        let mut out: Vec<ParamSymbol> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(p, _)| p.clone()))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Printing helper: splits off a leading minus sign when the scalar is a
    /// single term.
    pub(crate) fn single_term(&self) -> Option<(&ParamMonomial, &GaussRational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    /// Writes `self` as a product factor preceding `rest` (a word, possibly
    /// empty). Handles sign extraction so sums print as `a - b`.
    pub(crate) fn fmt_coefficient(
        &self,
        f: &mut fmt::Formatter<'_>,
        first: bool,
        rest: Option<&dyn fmt::Display>,
    ) -> fmt::Result {
        let sep = |f: &mut fmt::Formatter<'_>, neg: bool| -> fmt::Result {
            match (first, neg) {
                (true, true) => write!(f, "-"),
                (true, false) => Ok(()),
                (false, true) => write!(f, " - "),
                (false, false) => write!(f, " + "),
            }
        };
        if let Some((m, c)) = self.single_term() {
            if c.is_simple() {
                sep(f, c.is_negative_leading())?;
                let unit = c.re.abs().is_one() && c.im.is_zero();
                let mut wrote = false;
                if !unit {
                    fmt_simple_abs(c, f)?;
                    wrote = true;
                }
                if !m.is_one() {
                    if wrote {
                        write!(f, "*")?;
                    }
                    write!(f, "{m}")?;
                    wrote = true;
                }
                return match rest {
                    Some(r) if wrote => write!(f, "*{r}"),
                    Some(r) => write!(f, "{r}"),
                    None if wrote => Ok(()),
                    None => write!(f, "1"),
                };
            }
        }
        sep(f, false)?;
        match rest {
            Some(r) => write!(f, "({self})*{r}"),
            None => write!(f, "({self})"),
        }
    }
}

impl From<GaussRational> for Scalar {
    fn from(c: GaussRational) -> Self {
        Scalar::constant(c)
    }
}

impl From<ParamSymbol> for Scalar {
    fn from(p: ParamSymbol) -> Self {
        Scalar::param(p)
    }
}

impl Add<&Scalar> for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(mut self, rhs: Scalar) -> Scalar {
        self += &rhs;
        self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c);
        }
    }
}

impl Sub<&Scalar> for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(mut self, rhs: Scalar) -> Scalar {
        self -= &rhs;
        self
    }
}

impl Mul<&Scalar> for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        let mut out = Scalar::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            Scalar::term(c.clone(), m.clone()).fmt_coefficient(f, k == 0, None)?;
        }
        Ok(())
    }
}

/// `1/n!` as an exact rational.
pub fn inv_factorial(n: u32) -> Rational {
    let mut d = BigInt::one();
    for k in 2..=n {
        d *= BigInt::from(k);
    }
    Rational::new(BigInt::one(), d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn kappa() -> Scalar {
        Scalar::param(ParamSymbol::INV_KAPPA)
    }

    #[test]
    fn additive_inverse_of_i() {
        assert!((&Scalar::i() + &(-Scalar::i())).is_zero());
    }

    #[test]
    fn like_terms_merge() {
        let half = Scalar::ratio(1, 2);
        let x = &half * &kappa();
        assert_eq!(&x + &x, kappa());
    }

    #[test]
    fn unlike_terms_stay_separate() {
        let x = &Scalar::i() * &Scalar::param(ParamSymbol::INV_ALPHA)
            + Scalar::param(ParamSymbol::INV_SIGMA);
        assert_eq!(x.num_terms(), 2);
        assert_eq!(format!("{x}"), "i*(1/alpha) + (1/sigma)");
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
        let a = &Scalar::i() * &kappa();
        let b = &Scalar::constant(GaussRational::imag(1, 2)) * &kappa();
        assert_eq!(&a * &b, &Scalar::ratio(-1, 2) * &kappa().pow(2));
    }

    #[test]
    fn scaling() {
        let x = &Scalar::constant(GaussRational::imag(-1, 2)) * &kappa();
        assert_eq!(&x * &Scalar::from_int(2), -(&Scalar::i() * &kappa()));
    }

    #[test]
    fn conjugation() {
        let s = Scalar::param(ParamSymbol::INV_SIGMA);
        assert_eq!((&Scalar::i() * &s).conj(), -(&Scalar::i() * &s));
        assert_eq!(Scalar::ratio(3, 4).conj(), Scalar::ratio(3, 4));
    }

    #[test]
    fn limits() {
        let rho = Scalar::param(ParamSymbol::INV_RHO);
        let x = &Scalar::i() * &rho + &Scalar::i() * &kappa();
        assert_eq!(x.limit(&ParamSymbol::INV_RHO), &Scalar::i() * &kappa());
        let y = &Scalar::param(ParamSymbol::INV_ALPHA) * &Scalar::param(ParamSymbol::INV_LAMBDA);
        assert!(y.limit(&ParamSymbol::INV_ALPHA).is_zero());
        assert_eq!(
            Scalar::from_int(5).limit(&ParamSymbol::INV_SIGMA),
            Scalar::from_int(5)
        );
    }

    #[test]
    fn division_only_by_constants() {
        let x = kappa();
        assert_eq!(
            x.try_div(&Scalar::from_int(2)).unwrap(),
            &Scalar::ratio(1, 2) * &kappa()
        );
        assert_eq!(x.try_div(&kappa()), Err(Error::NonNumericDivisor));
        assert_eq!(x.try_div(&Scalar::zero()), Err(Error::DivisionByZero));
        let z = Scalar::constant(GaussRational::new(
            Rational::from_integer(1.into()),
            Rational::from_integer(1.into()),
        ));
        assert_eq!(&z.try_div(&z).unwrap(), &Scalar::one());
    }

    #[test]
    fn display_forms() {
        let x = &Scalar::constant(GaussRational::imag(2, 3)) * &kappa().pow(2);
        assert_eq!(format!("{x}"), "(2*i/3)*(1/kappa)^2");
        assert_eq!(format!("{}", -Scalar::one()), "-1");
        assert_eq!(format!("{}", Scalar::ratio(-3, 4)), "-(3/4)");
    }

    #[test]
    fn user_params_sort_by_name() {
        let b = ParamSymbol::new("beta").unwrap();
        assert!(ParamSymbol::INV_ALPHA < b && b < ParamSymbol::INV_KAPPA);
        assert_eq!(ParamSymbol::new("kappa").unwrap(), ParamSymbol::INV_KAPPA);
        assert!(ParamSymbol::new("1x").is_err());
    }
}
