//! Free associative algebra on named generators and its 2- and 3-fold
//! tensor powers.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use crate::error::Error;
use crate::scalar::{ParamSymbol, Scalar};

pub const MAX_ARITY: usize = 3;

/// Index of a generator in an algebra's canonical order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorId(pub u8);

impl GeneratorId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite product of generators. The empty word is the unit `I`.
///
/// Words order by length first, then lexicographically, which is also the
/// printing order inside a polynomial.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<GeneratorId>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn gen(g: GeneratorId) -> Self {
        Word(vec![g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[GeneratorId] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Sum of per-generator grades.
    pub fn grade(&self, grades: &[u32]) -> u32 {
        self.0.iter().map(|g| grades[g.index()]).sum()
    }

    /// True when letters are weakly increasing.
    pub fn is_ordered(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finitely supported `Word -> Scalar` map.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NCPoly {
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero() -> Self {
        NCPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(s: Scalar) -> Self {
        Self::monomial(Word::unit(), s)
    }

    pub fn gen(g: GeneratorId) -> Self {
        Self::monomial(Word::gen(g), Scalar::one())
    }

    pub fn monomial(w: Word, s: Scalar) -> Self {
        let mut p = NCPoly::zero();
        p.add_term(w, s);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut p = NCPoly::zero();
        for (w, s) in terms {
            p.add_term(w, s);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Scalar)> {
        self.terms.into_iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Word::unit())
    }

    pub fn add_term(&mut self, w: Word, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(s);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &s;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Maximal word length with nonzero coefficient; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    pub fn min_grade(&self, grades: &[u32]) -> Option<u32> {
        self.terms.keys().map(|w| w.grade(grades)).min()
    }

    pub fn max_grade(&self, grades: &[u32]) -> Option<u32> {
        self.terms.keys().map(|w| w.grade(grades)).max()
    }

    pub fn scale(&self, s: &Scalar) -> NCPoly {
        if s.is_zero() {
            return NCPoly::zero();
        }
        NCPoly::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), c * s)))
    }

    pub fn map_coefficients(&self, mut f: impl FnMut(&Scalar) -> Scalar) -> NCPoly {
        NCPoly::from_terms(self.terms.iter().map(|(w, c)| (w.clone(), f(c))))
    }

    pub fn limit(&self, p: &ParamSymbol) -> NCPoly {
        self.map_coefficients(|c| c.limit(p))
    }

    /// Drops every term of total word length above `n`.
    pub fn truncate(&self, n: usize) -> NCPoly {
        NCPoly::from_terms(
            self.terms
                .iter()
                .filter(|(w, _)| w.len() <= n)
                .map(|(w, c)| (w.clone(), c.clone())),
        )
    }

    /// Drops every term whose grade exceeds `n`.
    pub fn truncate_graded(&self, n: u32, grades: &[u32]) -> NCPoly {
        NCPoly::from_terms(
            self.terms
                .iter()
                .filter(|(w, _)| w.grade(grades) <= n)
                .map(|(w, c)| (w.clone(), c.clone())),
        )
    }

    /// Fails when a word uses a generator index `>= rank`.
    pub fn check_universe(&self, rank: usize) -> Result<(), Error> {
        for w in self.terms.keys() {
            if let Some(g) = w.0.iter().find(|g| g.index() >= rank) {
                return Err(Error::UniverseMismatch {
                    generator: g.index(),
                    rank,
                });
            }
        }
        Ok(())
    }

    pub fn pow(&self, n: u32) -> NCPoly {
        let mut acc = NCPoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }
}

impl From<Scalar> for NCPoly {
    fn from(s: Scalar) -> Self {
        NCPoly::constant(s)
    }
}

impl AddAssign<&NCPoly> for NCPoly {
    fn add_assign(&mut self, rhs: &NCPoly) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c.clone());
        }
    }
}

impl SubAssign<&NCPoly> for NCPoly {
    fn sub_assign(&mut self, rhs: &NCPoly) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), -c);
        }
    }
}

impl Add<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for NCPoly {
    type Output = NCPoly;
    fn add(mut self, rhs: NCPoly) -> NCPoly {
        self += &rhs;
        self
    }
}

impl Sub<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for NCPoly {
    type Output = NCPoly;
    fn sub(mut self, rhs: NCPoly) -> NCPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.map_coefficients(|c| -c)
    }
}

impl Neg for NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        -&self
    }
}

/// Concatenation product in the free algebra (no reordering).
impl Mul<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &rhs.terms {
                out.add_term(w1.concat(w2), c1 * c2);
            }
        }
        out
    }
}

impl Mul for NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: NCPoly) -> NCPoly {
        &self * &rhs
    }
}

/// Finitely supported map from word tuples to scalars; the tuple length is
/// the arity (0 for a scalar, 1 for a plain element, up to [`MAX_ARITY`]).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorPoly {
    arity: usize,
    terms: BTreeMap<Vec<Word>, Scalar>,
}

impl TensorPoly {
    pub fn zero(arity: usize) -> Self {
        TensorPoly {
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// `I ⊗ ... ⊗ I`.
    pub fn one(arity: usize) -> Self {
        let mut t = Self::zero(arity);
        t.add_term(vec![Word::unit(); arity], Scalar::one());
        t
    }

    pub fn scalar(s: Scalar) -> Self {
        let mut t = Self::zero(0);
        t.add_term(Vec::new(), s);
        t
    }

    pub fn from_poly(p: &NCPoly) -> Self {
        let mut t = Self::zero(1);
        for (w, c) in p.terms() {
            t.add_term(vec![w.clone()], c.clone());
        }
        t
    }

    /// `p_1 ⊗ p_2 ⊗ ...`.
    pub fn tensor(legs: &[NCPoly]) -> Result<Self, Error> {
        if legs.len() > MAX_ARITY {
            return Err(Error::ArityOverflow(legs.len()));
        }
        let mut acc = TensorPoly::one(0);
        for leg in legs {
            let mut next = TensorPoly::zero(acc.arity + 1);
            for (key, c) in &acc.terms {
                for (w, d) in leg.terms() {
                    let mut k = key.clone();
                    k.push(w.clone());
                    next.add_term(k, c * d);
                }
            }
            acc = next;
        }
        Ok(acc)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<Word>, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, key: &[Word]) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, key: Vec<Word>, s: Scalar) {
        debug_assert_eq!(key.len(), self.arity);
        if s.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(s);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &s;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, rhs: &TensorPoly) -> Result<(), Error> {
        if rhs.arity != self.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: rhs.arity,
            });
        }
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), c.clone());
        }
        Ok(())
    }

    pub fn sub(&self, rhs: &TensorPoly) -> Result<TensorPoly, Error> {
        let mut out = self.clone();
        out.add_assign(&rhs.scale(&-Scalar::one()))?;
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> TensorPoly {
        let mut out = TensorPoly::zero(self.arity);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c * s);
        }
        out
    }

    pub fn map_coefficients(&self, mut f: impl FnMut(&Scalar) -> Scalar) -> TensorPoly {
        let mut out = TensorPoly::zero(self.arity);
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c));
        }
        out
    }

    /// Legwise concatenation product, `(x1⊗x2)(y1⊗y2) = x1y1 ⊗ x2y2`.
    pub fn mul(&self, rhs: &TensorPoly) -> Result<TensorPoly, Error> {
        if rhs.arity != self.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: rhs.arity,
            });
        }
        let mut out = TensorPoly::zero(self.arity);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &rhs.terms {
                let key = k1.iter().zip(k2).map(|(a, b)| a.concat(b)).collect();
                out.add_term(key, c1 * c2);
            }
        }
        Ok(out)
    }

    /// Swaps the two legs of an arity-2 tensor.
    pub fn flip(&self) -> TensorPoly {
        assert_eq!(self.arity, 2, "flip needs two legs");
        let mut out = TensorPoly::zero(2);
        for (k, c) in &self.terms {
            out.add_term(vec![k[1].clone(), k[0].clone()], c.clone());
        }
        out
    }

    /// Drops terms whose grade summed over all legs exceeds `n`.
    pub fn truncate_graded(&self, n: u32, grades: &[u32]) -> TensorPoly {
        let mut out = TensorPoly::zero(self.arity);
        for (k, c) in &self.terms {
            if k.iter().map(|w| w.grade(grades)).sum::<u32>() <= n {
                out.add_term(k.clone(), c.clone());
            }
        }
        out
    }

    /// Drops terms whose total word length over all legs exceeds `n`.
    pub fn truncate(&self, n: usize) -> TensorPoly {
        let mut out = TensorPoly::zero(self.arity);
        for (k, c) in &self.terms {
            if k.iter().map(Word::len).sum::<usize>() <= n {
                out.add_term(k.clone(), c.clone());
            }
        }
        out
    }

    /// Replaces leg `leg` by the linear extension of `f`. The image arity of
    /// `f` may be 0 (a counit), 1 (an endomorphism) or 2 (a coproduct); the
    /// result has `arity - 1 + image_arity` legs.
    pub fn apply_legwise<F>(&self, leg: usize, mut f: F) -> Result<TensorPoly, Error>
    where
        F: FnMut(&Word) -> Result<TensorPoly, Error>,
    {
        if leg >= self.arity {
            return Err(Error::LegOutOfRange {
                leg,
                arity: self.arity,
            });
        }
        let mut out: Option<TensorPoly> = None;
        let mut cache: BTreeMap<Word, TensorPoly> = BTreeMap::new();
        for (k, c) in &self.terms {
            if !cache.contains_key(&k[leg]) {
                cache.insert(k[leg].clone(), f(&k[leg])?);
            }
            let image = &cache[&k[leg]];
            let arity = self.arity - 1 + image.arity;
            if arity > MAX_ARITY {
                return Err(Error::ArityOverflow(arity));
            }
            let acc = out.get_or_insert_with(|| TensorPoly::zero(arity));
            for (ik, ic) in &image.terms {
                let mut key = Vec::with_capacity(arity);
                key.extend_from_slice(&k[..leg]);
                key.extend_from_slice(ik);
                key.extend_from_slice(&k[leg + 1..]);
                acc.add_term(key, c * ic);
            }
        }
        match out {
            Some(t) => Ok(t),
            None => {
                // Zero input: the arity still follows the map.
                let probe = f(&Word::unit())?;
                let arity = self.arity - 1 + probe.arity;
                if arity > MAX_ARITY {
                    return Err(Error::ArityOverflow(arity));
                }
                Ok(TensorPoly::zero(arity))
            }
        }
    }

    /// Concatenates all legs into a single word (the multiplication map).
    pub fn multiply_legs(&self) -> NCPoly {
        let mut out = NCPoly::zero();
        for (k, c) in &self.terms {
            let w = k.iter().fold(Word::unit(), |acc, w| acc.concat(w));
            out.add_term(w, c.clone());
        }
        out
    }

    /// Views an arity-1 tensor as a polynomial.
    pub fn to_poly(&self) -> Option<NCPoly> {
        (self.arity == 1).then(|| {
            NCPoly::from_terms(self.terms.iter().map(|(k, c)| (k[0].clone(), c.clone())))
        })
    }

    /// Views an arity-0 tensor as a scalar.
    pub fn to_scalar(&self) -> Option<Scalar> {
        (self.arity == 0).then(|| self.coefficient(&[]))
    }
}

/// Ordered generator names; resolves names and prints elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Result<Self, Error> {
        let mut out: Vec<String> = Vec::with_capacity(names.len());
        for n in names {
            let n = n.as_ref();
            let valid = n.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
                && !matches!(n, "I" | "i" | "x");
            if !valid {
                return Err(Error::InvalidName(n.into()));
            }
            if out.iter().any(|m| m == n) {
                return Err(Error::DuplicateGenerator(n.into()));
            }
            out.push(n.into());
        }
        if out.len() > u8::MAX as usize {
            return Err(Error::InvalidName("too many generators".into()));
        }
        Ok(Alphabet { names: out })
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, g: GeneratorId) -> &str {
        &self.names[g.index()]
    }

    pub fn id(&self, name: &str) -> Option<GeneratorId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| GeneratorId(i as u8))
    }

    pub fn gen(&self, name: &str) -> Result<NCPoly, Error> {
        self.id(name)
            .map(NCPoly::gen)
            .ok_or_else(|| Error::UnknownGenerator(name.into()))
    }

    pub fn ids(&self) -> impl Iterator<Item = GeneratorId> {
        (0..self.names.len()).map(|i| GeneratorId(i as u8))
    }

    /// Checked free-algebra product.
    pub fn mul(&self, x: &NCPoly, y: &NCPoly) -> Result<NCPoly, Error> {
        x.check_universe(self.rank())?;
        y.check_universe(self.rank())?;
        Ok(x * y)
    }

    pub fn word_string(&self, w: &Word) -> String {
        ShowWord(self, w).to_string()
    }

    pub fn show<'a>(&'a self, p: &'a NCPoly) -> impl fmt::Display + 'a {
        ShowPoly(self, p)
    }

    pub fn show_tensor<'a>(&'a self, t: &'a TensorPoly) -> impl fmt::Display + 'a {
        ShowTensor(self, t)
    }
}

struct ShowWord<'a>(&'a Alphabet, &'a Word);

impl fmt::Display for ShowWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.1.letters();
        if letters.is_empty() {
            return write!(f, "I");
        }
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let mut j = i;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            let name = self.0.name(letters[i]);
            if j - i == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{}", j - i)?;
            }
            i = j;
        }
        Ok(())
    }
}

struct ShowPoly<'a>(&'a Alphabet, &'a NCPoly);

impl fmt::Display for ShowPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1.is_zero() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.1.terms().enumerate() {
            if w.is_empty() {
                c.fmt_coefficient(f, k == 0, None)?;
            } else {
                c.fmt_coefficient(f, k == 0, Some(&ShowWord(self.0, w)))?;
            }
        }
        Ok(())
    }
}

struct ShowTensor<'a>(&'a Alphabet, &'a TensorPoly);

struct Legs<'a>(&'a Alphabet, &'a [Word]);

impl fmt::Display for Legs<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, w) in self.1.iter().enumerate() {
            if k > 0 {
                write!(f, " (x) ")?;
            }
            write!(f, "{}", ShowWord(self.0, w))?;
        }
        Ok(())
    }
}

impl fmt::Display for ShowTensor<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.1.is_zero() {
            return write!(f, "0");
        }
        for (k, (key, c)) in self.1.terms().enumerate() {
            if key.is_empty() {
                c.fmt_coefficient(f, k == 0, None)?;
            } else {
                c.fmt_coefficient(f, k == 0, Some(&Legs(self.0, key)))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;

    fn abc() -> (Alphabet, NCPoly, NCPoly, NCPoly) {
        let al = Alphabet::new(&["a", "v", "tau"]).unwrap();
        let a = al.gen("a").unwrap();
        let v = al.gen("v").unwrap();
        let t = al.gen("tau").unwrap();
        (al, a, v, t)
    }

    #[test]
    fn concatenation_and_unit() {
        let (al, a, v, t) = abc();
        let av = &a * &v;
        assert_eq!(format!("{}", al.show(&av)), "a*v");
        assert_eq!(&NCPoly::one() * &av, av);
        let s = &(&a + &v) * &t;
        assert_eq!(s, &(&a * &t) + &(&v * &t));
    }

    #[test]
    fn universe_mismatch() {
        let (al, a, _, _) = abc();
        let stray = NCPoly::gen(GeneratorId(7));
        assert_eq!(
            al.mul(&a, &stray),
            Err(Error::UniverseMismatch {
                generator: 7,
                rank: 3
            })
        );
    }

    #[test]
    fn tensor_products_are_legwise() {
        let (al, a, v, t) = abc();
        let i = NCPoly::one();
        let x = TensorPoly::tensor(&[a.clone(), i.clone()]).unwrap();
        let y = TensorPoly::tensor(&[i.clone(), v.clone()]).unwrap();
        let xy = x.mul(&y).unwrap();
        assert_eq!(xy, TensorPoly::tensor(&[a, v.clone()]).unwrap());
        let vt = TensorPoly::tensor(&[v.clone(), t.clone()]).unwrap();
        let sq = vt.mul(&vt).unwrap();
        assert_eq!(format!("{}", al.show_tensor(&sq)), "v^2 (x) tau^2");
        let z = TensorPoly::zero(3);
        assert!(matches!(
            z.mul(&vt),
            Err(Error::ArityMismatch { left: 3, right: 2 })
        ));
    }

    #[test]
    fn legwise_application() {
        let (_, a, v, t) = abc();
        let i = NCPoly::one();
        let x = TensorPoly::tensor(&[a.clone(), i.clone()]).unwrap();
        let id = x.apply_legwise(0, |w| Ok(TensorPoly::from_poly(&NCPoly::monomial(w.clone(), Scalar::one())))).unwrap();
        assert_eq!(id, x);
        // A counit that kills every generator.
        let vt = TensorPoly::tensor(&[v, t]).unwrap();
        let eps = |w: &Word| Ok(TensorPoly::scalar(if w.is_empty() { Scalar::one() } else { Scalar::zero() }));
        let r = vt.apply_legwise(1, eps).unwrap();
        assert_eq!(r.arity(), 1);
        assert!(r.is_zero());
        let three = TensorPoly::tensor(&[a.clone(), i.clone(), i]).unwrap();
        let dup = |w: &Word| {
            TensorPoly::tensor(&[
                NCPoly::monomial(w.clone(), Scalar::one()),
                NCPoly::one(),
            ])
        };
        assert_eq!(three.apply_legwise(0, dup), Err(Error::ArityOverflow(4)));
        assert!(matches!(
            three.apply_legwise(3, dup),
            Err(Error::LegOutOfRange { leg: 3, arity: 3 })
        ));
    }

    #[test]
    fn truncation() {
        let (al, _, _, t) = abc();
        let half = Scalar::ratio(1, 2);
        let p = &(&NCPoly::one() + &t) + &t.pow(2).scale(&half);
        assert_eq!(p.truncate(1), &NCPoly::one() + &t);
        assert_eq!(p.truncate(0), NCPoly::one());
        let x = TensorPoly::tensor(&[t.clone(), t.pow(2)]).unwrap();
        assert!(x.truncate(2).is_zero());
        assert_eq!(format!("{}", al.show(&p)), "1 + tau + (1/2)*tau^2");
    }
}
