//! Hopf algebra data over a presentation and an exact axiom checker.
//!
//! Structure maps are given on generators as symbolic expressions. Δ and ε
//! extend multiplicatively, S anti-multiplicatively and `*` as an antilinear
//! anti-automorphism. Series-valued data is expanded to a working grade.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::Error;
use crate::expr::{Expr, TensorExpr};
use crate::freealg::{GeneratorId, NCPoly, TensorPoly, Word};
use crate::linalg;
use crate::normalize::{Normalizer, Presentation};
use crate::scalar::{ParamSymbol, Scalar};

/// Grade up to which the `S⁻¹(Φ) = [S(Φ*)]*` identity is checked.
pub const STAR_IDENTITY_GRADE: u32 = 4;

const MAX_INVERSION_STEPS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfSpec {
    name: String,
    presentation: Presentation,
    coproduct: Vec<TensorExpr>,
    counit: Vec<Scalar>,
    antipode: Vec<Expr>,
    star: Vec<Expr>,
}

impl HopfSpec {
    pub fn new(
        name: &str,
        presentation: Presentation,
        coproduct: Vec<TensorExpr>,
        counit: Vec<Scalar>,
        antipode: Vec<Expr>,
        star: Vec<Expr>,
    ) -> Result<Self, Error> {
        let n = presentation.rank();
        for (what, len) in [
            ("coproduct", coproduct.len()),
            ("counit", counit.len()),
            ("antipode", antipode.len()),
            ("star", star.len()),
        ] {
            if len != n {
                return Err(Error::Precondition(format!(
                    "{what} given for {len} generators, algebra has {n}"
                )));
            }
        }
        for c in &coproduct {
            if let Some(a) = c.arity() {
                if a != 2 {
                    return Err(Error::ArityMismatch { left: 2, right: a });
                }
            }
        }
        Ok(HopfSpec {
            name: name.into(),
            presentation,
            coproduct,
            counit,
            antipode,
            star,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn coproduct(&self, g: GeneratorId) -> &TensorExpr {
        &self.coproduct[g.index()]
    }

    pub fn counit(&self, g: GeneratorId) -> &Scalar {
        &self.counit[g.index()]
    }

    pub fn antipode(&self, g: GeneratorId) -> &Expr {
        &self.antipode[g.index()]
    }

    pub fn star(&self, g: GeneratorId) -> &Expr {
        &self.star[g.index()]
    }

    pub fn renamed(&self, name: &str) -> HopfSpec {
        let mut out = self.clone();
        out.name = name.into();
        out.presentation = out.presentation.renamed(name);
        out
    }

    pub fn with_antipode(&self, antipode: Vec<Expr>) -> Result<HopfSpec, Error> {
        HopfSpec::new(
            &self.name,
            self.presentation.clone(),
            self.coproduct.clone(),
            self.counit.clone(),
            antipode,
            self.star.clone(),
        )
    }

    /// Parameters occurring anywhere in the structure data.
    pub fn params(&self) -> Vec<ParamSymbol> {
        let mut out = self.presentation.params();
        let mut visit = |e: &Expr| collect_params(e, &mut out);
        for t in &self.coproduct {
            t.terms.iter().flatten().for_each(&mut visit);
        }
        self.antipode.iter().for_each(&mut visit);
        self.star.iter().for_each(&mut visit);
        for c in &self.counit {
            out.extend(c.params());
        }
        out.sort();
        out.dedup();
        out
    }

    /// Sends the inverse parameter `p` to zero in every structure map.
    pub fn take_limit(&self, p: &ParamSymbol) -> HopfSpec {
        HopfSpec {
            name: format!("{}[{}->0]", self.name, p.name()),
            presentation: self
                .presentation
                .take_limit(p)
                .renamed(&format!("{}[{}->0]", self.presentation.name(), p.name())),
            coproduct: self.coproduct.iter().map(|t| t.limit(p)).collect(),
            counit: self.counit.iter().map(|c| c.limit(p)).collect(),
            antipode: self.antipode.iter().map(|e| e.limit(p)).collect(),
            star: self.star.iter().map(|e| e.limit(p)).collect(),
        }
    }

    /// Expands all structure maps. `degree = None` means exact, which needs
    /// every expression to be polynomial.
    pub fn expand(&self, degree: Option<u32>) -> Result<HopfData<'_>, Error> {
        if let Some(v) = self.presentation.valid_to() {
            match degree {
                Some(d) if d <= v => {}
                _ => {
                    return Err(Error::Precondition(format!(
                        "presentation `{}` is exact only up to grade {v}",
                        self.presentation.name()
                    )))
                }
            }
        }
        let mut nz = self.presentation.normalizer(degree);
        let mut delta = Vec::with_capacity(self.coproduct.len());
        for t in &self.coproduct {
            delta.push(t.expand(&mut nz)?);
        }
        let antipode = self
            .antipode
            .iter()
            .map(|e| e.expand(&mut nz))
            .collect::<Result<Vec<_>, _>>()?;
        let star = self
            .star
            .iter()
            .map(|e| e.expand(&mut nz))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(HopfData {
            spec: self,
            degree,
            nz,
            delta,
            antipode,
            star,
            delta_cache: BTreeMap::new(),
            antipode_cache: BTreeMap::new(),
            star_cache: BTreeMap::new(),
            inverse: None,
        })
    }
}

fn collect_params(e: &Expr, out: &mut Vec<ParamSymbol>) {
    match e {
        Expr::Scalar(s) => out.extend(s.params()),
        Expr::Gen(_) => {}
        Expr::Sum(v) | Expr::Product(v) => v.iter().for_each(|x| collect_params(x, out)),
        Expr::Pow(x, _) | Expr::Exp(x) | Expr::Cosh(x) | Expr::Sinh(x) => collect_params(x, out),
        Expr::Commutator(a, b) => {
            collect_params(a, out);
            collect_params(b, out);
        }
        Expr::CoshRoot(r, x) | Expr::SinhRoot(r, x) => {
            out.extend(r.params());
            collect_params(x, out);
        }
    }
}

/// Structure maps expanded to polynomials at a fixed working grade.
pub struct HopfData<'a> {
    spec: &'a HopfSpec,
    degree: Option<u32>,
    nz: Normalizer<'a>,
    delta: Vec<TensorPoly>,
    antipode: Vec<NCPoly>,
    star: Vec<NCPoly>,
    delta_cache: BTreeMap<Word, TensorPoly>,
    antipode_cache: BTreeMap<Word, NCPoly>,
    star_cache: BTreeMap<Word, NCPoly>,
    inverse: Option<Vec<NCPoly>>,
}

impl<'a> HopfData<'a> {
    pub fn spec(&self) -> &'a HopfSpec {
        self.spec
    }

    pub fn presentation(&self) -> &'a Presentation {
        self.spec.presentation()
    }

    pub fn degree(&self) -> Option<u32> {
        self.degree
    }

    pub fn normalizer(&mut self) -> &mut Normalizer<'a> {
        &mut self.nz
    }

    fn grades(&self) -> &'a [u32] {
        self.spec.presentation().grades()
    }

    fn cut(&self, t: TensorPoly) -> TensorPoly {
        match self.degree {
            Some(n) => t.truncate_graded(n, self.grades()),
            None => t,
        }
    }

    pub fn show(&self, x: &NCPoly) -> String {
        self.presentation().alphabet().show(x).to_string()
    }

    pub fn show_tensor(&self, t: &TensorPoly) -> String {
        self.presentation().alphabet().show_tensor(t).to_string()
    }

    pub fn gen(&self, g: GeneratorId) -> NCPoly {
        NCPoly::gen(g)
    }

    pub fn normal(&mut self, x: &NCPoly) -> NCPoly {
        self.nz.poly(x)
    }

    pub fn mul(&mut self, x: &NCPoly, y: &NCPoly) -> NCPoly {
        self.nz.mul(x, y)
    }

    pub fn delta_gen(&self, g: GeneratorId) -> &TensorPoly {
        &self.delta[g.index()]
    }

    pub fn antipode_gen(&self, g: GeneratorId) -> &NCPoly {
        &self.antipode[g.index()]
    }

    pub fn star_gen(&self, g: GeneratorId) -> &NCPoly {
        &self.star[g.index()]
    }

    pub fn counit_gen(&self, g: GeneratorId) -> &Scalar {
        self.spec.counit(g)
    }

    /// Δ of a word as the legwise product of generator coproducts.
    pub fn delta_word(&mut self, w: &Word) -> TensorPoly {
        if let Some(t) = self.delta_cache.get(w) {
            return t.clone();
        }
        let t = match w.letters().split_last() {
            None => TensorPoly::one(2),
            Some((last, rest)) => {
                let head = self.delta_word(&Word(rest.to_vec()));
                let g = self.delta[last.index()].clone();
                self.nz
                    .tensor_mul(&head, &g)
                    .expect("coproducts have two legs")
            }
        };
        self.delta_cache.insert(w.clone(), t.clone());
        t
    }

    pub fn delta(&mut self, x: &NCPoly) -> TensorPoly {
        let mut out = TensorPoly::zero(2);
        for (w, c) in x.terms() {
            let t = self.delta_word(w).scale(c);
            out.add_assign(&t).expect("two legs");
        }
        out
    }

    pub fn counit_word(&self, w: &Word) -> Scalar {
        let mut s = Scalar::one();
        for g in w.letters() {
            s = &s * self.spec.counit(*g);
        }
        s
    }

    pub fn counit(&self, x: &NCPoly) -> Scalar {
        let mut s = Scalar::zero();
        for (w, c) in x.terms() {
            s += &(c * &self.counit_word(w));
        }
        s
    }

    /// Anti-multiplicative product of per-generator images.
    fn anti_word(
        nz: &mut Normalizer<'_>,
        images: &[NCPoly],
        cache: &mut BTreeMap<Word, NCPoly>,
        w: &Word,
    ) -> NCPoly {
        if let Some(x) = cache.get(w) {
            return x.clone();
        }
        let out = match w.letters().split_first() {
            None => nz.poly(&NCPoly::one()),
            Some((first, rest)) => {
                let tail = Self::anti_word(nz, images, cache, &Word(rest.to_vec()));
                nz.mul(&tail, &images[first.index()])
            }
        };
        cache.insert(w.clone(), out.clone());
        out
    }

    pub fn antipode_word(&mut self, w: &Word) -> NCPoly {
        Self::anti_word(&mut self.nz, &self.antipode, &mut self.antipode_cache, w)
    }

    pub fn antipode_poly(&mut self, x: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in x.terms() {
            out += &self.antipode_word(w).scale(c);
        }
        out
    }

    pub fn star_word(&mut self, w: &Word) -> NCPoly {
        Self::anti_word(&mut self.nz, &self.star, &mut self.star_cache, w)
    }

    /// Antilinear: coefficients are conjugated.
    pub fn star_poly(&mut self, x: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in x.terms() {
            out += &self.star_word(w).scale(&c.conj());
        }
        out
    }

    /// `(* ⊗ *)` applied legwise, conjugating each coefficient once.
    pub fn star_tensor(&mut self, t: &TensorPoly) -> TensorPoly {
        let mut out = TensorPoly::zero(t.arity());
        for (k, c) in t.terms() {
            let legs: Vec<NCPoly> = k.iter().map(|w| self.star_word(w)).collect();
            let term = TensorPoly::tensor(&legs).expect("arity unchanged");
            out.add_assign(&term.scale(&c.conj())).expect("same arity");
        }
        self.cut(out)
    }

    /// `(Δ ⊗ id)` for `leg = 0`, `(id ⊗ Δ)` for `leg = 1`.
    pub fn delta_on_leg(&mut self, t: &TensorPoly, leg: usize) -> Result<TensorPoly, Error> {
        let out = t.apply_legwise(leg, |w| Ok(self.delta_word(w)))?;
        Ok(self.cut(out))
    }

    pub fn counit_on_leg(&mut self, t: &TensorPoly, leg: usize) -> Result<TensorPoly, Error> {
        t.apply_legwise(leg, |w| Ok(TensorPoly::scalar(self.counit_word(w))))
    }

    /// `m ∘ (id ⊗ S)` (`leg = 1`) or `m ∘ (S ⊗ id)` (`leg = 0`).
    pub fn antipode_contract(&mut self, t: &TensorPoly, leg: usize) -> NCPoly {
        let mut out = NCPoly::zero();
        for (k, c) in t.terms() {
            let (x, y) = if leg == 1 {
                (self.nz.word(&k[0]), self.antipode_word(&k[1]))
            } else {
                (self.antipode_word(&k[0]), self.nz.word(&k[1]))
            };
            out += &self.nz.mul(&x, &y).scale(c);
        }
        out
    }

    /// Generator images of `S⁻¹`, by order-by-order inversion around the
    /// linear part of `S`.
    pub fn antipode_inverse(&mut self) -> Result<Vec<NCPoly>, Error> {
        if let Some(t) = &self.inverse {
            return Ok(t.clone());
        }
        let n = self.presentation().rank();
        let ids: Vec<GeneratorId> = (0..n).map(|k| GeneratorId(k as u8)).collect();
        let lin: Vec<Vec<Scalar>> = ids
            .iter()
            .map(|g| {
                ids.iter()
                    .map(|h| self.antipode[g.index()].coefficient(&Word::gen(*h)))
                    .collect()
            })
            .collect();
        let inv = linalg::numeric(&lin)
            .and_then(|m| linalg::invert(&m))
            .ok_or_else(|| {
                Error::NotInvertible("linear part of the antipode is not a numeric invertible matrix".into())
            })?;
        let lin_inv: Vec<NCPoly> = inv
            .iter()
            .map(|row| {
                NCPoly::from_terms(
                    row.iter()
                        .enumerate()
                        .map(|(h, c)| (Word::gen(GeneratorId(h as u8)), Scalar::constant(c.clone()))),
                )
            })
            .collect();
        let mut lin_cache = BTreeMap::new();
        let mut t: Vec<NCPoly> = lin_inv.clone();
        for _ in 0..MAX_INVERSION_STEPS {
            let mut settled = true;
            for g in &ids {
                let image = self.antipode_poly(&t[g.index()]);
                let r = &NCPoly::gen(*g) - &image;
                if r.is_zero() {
                    continue;
                }
                settled = false;
                let mut corr = NCPoly::zero();
                for (w, c) in r.terms() {
                    let x = Self::anti_word(&mut self.nz, &lin_inv, &mut lin_cache, w);
                    corr += &x.scale(c);
                }
                t[g.index()] = &t[g.index()] + &corr;
            }
            if settled {
                self.inverse = Some(t.clone());
                return Ok(t);
            }
        }
        Err(Error::NotInvertible(format!(
            "antipode inversion did not settle in {MAX_INVERSION_STEPS} steps"
        )))
    }

    pub fn antipode_inverse_poly(&mut self, x: &NCPoly) -> Result<NCPoly, Error> {
        let t = self.antipode_inverse()?;
        let mut cache = BTreeMap::new();
        let mut out = NCPoly::zero();
        for (w, c) in x.terms() {
            out += &Self::anti_word(&mut self.nz, &t, &mut cache, w).scale(c);
        }
        Ok(out)
    }

    /// Generators on which `S² ≠ id`, with `S²(g) − g`.
    pub fn antipode_square_defect(&mut self) -> Vec<(GeneratorId, NCPoly)> {
        let n = self.presentation().rank();
        let mut out = Vec::new();
        for k in 0..n {
            let g = GeneratorId(k as u8);
            let s = self.antipode[k].clone();
            let s2 = self.antipode_poly(&s);
            let d = &s2 - &NCPoly::gen(g);
            if !d.is_zero() {
                out.push((g, d));
            }
        }
        out
    }

    fn name(&self, g: GeneratorId) -> &'a str {
        self.spec.presentation().alphabet().name(g)
    }

    pub fn check_coassociativity(&mut self) -> AxiomCheck {
        let mut out = AxiomCheck::new(Axiom::Coassociativity);
        for g in self.presentation().alphabet().ids() {
            let d = self.delta[g.index()].clone();
            let l = self.delta_on_leg(&d, 0);
            let r = self.delta_on_leg(&d, 1);
            match (l, r) {
                (Ok(l), Ok(r)) => {
                    let diff = l.sub(&r).expect("three legs");
                    if !diff.is_zero() {
                        out.fail(self.name(g), self.show_tensor(&diff));
                    }
                }
                (Err(e), _) | (_, Err(e)) => out.fail(self.name(g), e.to_string()),
            }
        }
        out
    }

    pub fn check_counit(&mut self) -> AxiomCheck {
        let mut out = AxiomCheck::new(Axiom::Counit);
        for g in self.presentation().alphabet().ids() {
            let d = self.delta[g.index()].clone();
            let expected = self.nz.poly(&NCPoly::gen(g));
            for leg in [0, 1] {
                let got = self
                    .counit_on_leg(&d, leg)
                    .map(|t| t.to_poly().expect("one leg"));
                match got {
                    Ok(p) if p == expected => {}
                    Ok(p) => {
                        let diff = &p - &expected;
                        let side = if leg == 0 { "(eps x id)" } else { "(id x eps)" };
                        out.fail(&format!("{side} {}", self.name(g)), self.show(&diff));
                    }
                    Err(e) => out.fail(self.name(g), e.to_string()),
                }
            }
        }
        out
    }

    pub fn check_antipode(&mut self) -> AxiomCheck {
        let mut out = AxiomCheck::new(Axiom::Antipode);
        for g in self.presentation().alphabet().ids() {
            let d = self.delta[g.index()].clone();
            let target = NCPoly::constant(self.spec.counit(g).clone());
            for leg in [1, 0] {
                let got = self.antipode_contract(&d, leg);
                let diff = &got - &target;
                if !diff.is_zero() {
                    let side = if leg == 1 { "m(id x S)" } else { "m(S x id)" };
                    out.fail(&format!("{side} {}", self.name(g)), self.show(&diff));
                }
            }
        }
        out
    }

    pub fn check_relations_respected(&mut self) -> AxiomCheck {
        let mut out = AxiomCheck::new(Axiom::Relations);
        for ((j, i), r) in self.presentation().relations() {
            let label = format!("[{}, {}]", self.name(j), self.name(i));
            let d = self.delta(&r);
            if !d.is_zero() {
                out.fail(&format!("Delta {label}"), self.show_tensor(&d));
            }
            let e = self.counit(&r);
            if !e.is_zero() {
                out.fail(&format!("eps {label}"), e.to_string());
            }
            let s = self.antipode_poly(&r);
            if !s.is_zero() {
                out.fail(&format!("S {label}"), self.show(&s));
            }
        }
        out
    }

    /// `*` is an involutive antilinear anti-automorphism compatible with Δ
    /// and ε.
    pub fn check_star(&mut self) -> AxiomCheck {
        let mut out = AxiomCheck::new(Axiom::Star);
        for g in self.presentation().alphabet().ids() {
            let s = self.star[g.index()].clone();
            let ss = self.star_poly(&s);
            let diff = &ss - &self.nz.poly(&NCPoly::gen(g));
            if !diff.is_zero() {
                out.fail(&format!("** {}", self.name(g)), self.show(&diff));
            }
            let lhs = self.delta(&s);
            let d = self.delta[g.index()].clone();
            let rhs = self.star_tensor(&d);
            let diff = lhs.sub(&rhs).expect("two legs");
            if !diff.is_zero() {
                out.fail(&format!("Delta(*) {}", self.name(g)), self.show_tensor(&diff));
            }
            let e = &self.counit(&s) - &self.spec.counit(g).conj();
            if !e.is_zero() {
                out.fail(&format!("eps(*) {}", self.name(g)), e.to_string());
            }
        }
        for ((j, i), r) in self.presentation().relations() {
            let s = self.star_poly(&r);
            if !s.is_zero() {
                out.fail(
                    &format!("* [{}, {}]", self.name(j), self.name(i)),
                    self.show(&s),
                );
            }
        }
        out
    }

    /// `S⁻¹(Φ) = [S(Φ*)]*` on every PBW monomial up to `max_grade`.
    pub fn check_star_antipode(&mut self, max_grade: u32) -> AxiomCheck {
        let mut out = AxiomCheck::new(Axiom::StarAntipode);
        let max_grade = self.degree.map_or(max_grade, |d| d.min(max_grade));
        if let Err(e) = self.antipode_inverse() {
            out.fail("S^-1", e.to_string());
            return out;
        }
        for g in self.presentation().alphabet().ids() {
            let t = self.inverse.as_ref().expect("computed")[g.index()].clone();
            let back = self.antipode_poly(&t);
            let diff = &back - &self.nz.poly(&NCPoly::gen(g));
            if !diff.is_zero() {
                out.fail(&format!("S(S^-1({}))", self.name(g)), self.show(&diff));
            }
            let s = self.antipode[g.index()].clone();
            let there = self.antipode_inverse_poly(&s).expect("computed");
            let diff = &there - &self.nz.poly(&NCPoly::gen(g));
            if !diff.is_zero() {
                out.fail(&format!("S^-1(S({}))", self.name(g)), self.show(&diff));
            }
        }
        for w in self.presentation().pbw_basis(max_grade) {
            let phi = NCPoly::monomial(w.clone(), Scalar::one());
            let lhs = self.antipode_inverse_poly(&phi).expect("computed");
            let st = self.star_poly(&phi);
            let s = self.antipode_poly(&st);
            let rhs = self.star_poly(&s);
            let diff = &lhs - &rhs;
            if !diff.is_zero() {
                let label = self.presentation().alphabet().word_string(&w);
                out.fail(&label, self.show(&diff));
            }
        }
        out
    }

    /// Every axiom family in a fixed order.
    pub fn check_all(&mut self) -> Vec<AxiomCheck> {
        alloc::vec![
            self.check_coassociativity(),
            self.check_counit(),
            self.check_antipode(),
            self.check_relations_respected(),
            self.check_star(),
            self.check_star_antipode(STAR_IDENTITY_GRADE),
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Axiom {
    Coassociativity,
    Counit,
    Antipode,
    Relations,
    Star,
    StarAntipode,
}

impl Axiom {
    pub fn label(self) -> &'static str {
        match self {
            Axiom::Coassociativity => "coassociativity",
            Axiom::Counit => "counit",
            Axiom::Antipode => "antipode",
            Axiom::Relations => "relations_respected",
            Axiom::Star => "star",
            Axiom::StarAntipode => "star_antipode_identity",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub subject: String,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: Axiom,
    pub failures: Vec<Failure>,
}

impl AxiomCheck {
    fn new(axiom: Axiom) -> Self {
        AxiomCheck {
            axiom,
            failures: Vec::new(),
        }
    }

    fn fail(&mut self, subject: &str, residual: String) {
        self.failures.push(Failure {
            subject: subject.into(),
            residual,
        });
    }

    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}
