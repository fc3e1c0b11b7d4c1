//! Pairing between a group Hopf algebra and its dual, and reconstruction of
//! the dual structure maps from it.
//!
//! A functional is stored as its values on the group PBW monomials of grade
//! at most `N`. Products of functionals are convolutions through the group
//! coproduct. Dual generators pair with exactly one group generator each,
//! and the dual grade of a generator is the grade of its partner.
//!
//! Group relations only lower the grade and Δ is grade-homogeneous on
//! generators, so `<w, m>` vanishes unless `grade(w) <= grade(m)`. The Gram
//! matrix is block lower-triangular and its diagonal blocks are numeric;
//! reconstruction is forward substitution, grade by grade.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::expr::{Expr, TensorExpr};
use crate::freealg::{Alphabet, GeneratorId, NCPoly, TensorPoly, Word};
use crate::hopf::{HopfData, HopfSpec};
use crate::linalg::{self, Matrix};
use crate::normalize::{ordered_words, Presentation};
use crate::scalar::{GaussRational, Scalar};

/// Dual generators and their base pairing: dual generator `k` pairs with
/// group generator `partners[k].0` with value `partners[k].1`, and with
/// every other PBW monomial (including `I`) as zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSpec {
    pub name: String,
    pub names: Vec<String>,
    pub partners: Vec<(GeneratorId, Scalar)>,
    /// Termination weights for the reconstructed presentation.
    pub weights: Vec<u32>,
}

impl DualSpec {
    fn standard(name: &str, group: &Presentation, weights: &[u32]) -> Result<DualSpec, Error> {
        Ok(DualSpec {
            name: name.into(),
            names: vec!["H".into(), "P".into(), "K".into()],
            partners: vec![
                (group.id("tau")?, Scalar::i()),
                (group.id("a")?, Scalar::i()),
                (group.id("v")?, Scalar::i()),
            ],
            weights: weights.to_vec(),
        })
    }

    /// `<H, tau> = <P, a> = <K, v> = i` over a family-A group.
    pub fn family_a(group: &Presentation) -> Result<DualSpec, Error> {
        Self::standard("dual_A", group, &[1, 1, 2])
    }

    /// Same base table over a family-B group; `P` is weightless so that the
    /// series `[K, H]` terminates.
    pub fn family_b(group: &Presentation) -> Result<DualSpec, Error> {
        Self::standard("dual_B", group, &[1, 0, 1])
    }
}

/// Values of a functional on the group PBW basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Functional {
    pub values: Vec<Scalar>,
}

impl Functional {
    pub fn zero(n: usize) -> Self {
        Functional {
            values: vec![Scalar::zero(); n],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }

    pub fn add(&self, o: &Functional) -> Functional {
        Functional {
            values: self.values.iter().zip(&o.values).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Functional) -> Functional {
        Functional {
            values: self.values.iter().zip(&o.values).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Functional {
        Functional {
            values: self.values.iter().map(|a| a * s).collect(),
        }
    }
}

/// Pairings of dual PBW words (rows) against group PBW monomials (columns).
#[derive(Clone, Debug)]
pub struct GramMatrix {
    pub rows: Vec<Word>,
    pub cols: Vec<Word>,
    pub row_grades: Vec<u32>,
    pub col_grades: Vec<u32>,
    pub entries: Matrix<Scalar>,
}

impl GramMatrix {
    /// Entries above the block diagonal, `grade(row) > grade(col)`, that fail to vanish.
    pub fn triangularity_violations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (r, rg) in self.row_grades.iter().enumerate() {
            for (c, cg) in self.col_grades.iter().enumerate() {
                if rg > cg && !self.entries[r][c].is_zero() {
                    out.push((r, c));
                }
            }
        }
        out
    }

    /// The diagonal block of grade `d`.
    pub fn block(&self, d: u32) -> Matrix<Scalar> {
        let rows: Vec<usize> = (0..self.rows.len()).filter(|&r| self.row_grades[r] == d).collect();
        let cols: Vec<usize> = (0..self.cols.len()).filter(|&c| self.col_grades[c] == d).collect();
        rows.iter()
            .map(|&r| cols.iter().map(|&c| self.entries[r][c].clone()).collect())
            .collect()
    }
}

struct Block {
    rows: Vec<usize>,
    cols: Vec<usize>,
    inverse: Matrix<GaussRational>,
}

pub struct DualityEngine<'g> {
    group: HopfData<'g>,
    spec: DualSpec,
    alphabet: Alphabet,
    gen_grades: Vec<u32>,
    degree: u32,
    basis: Vec<Word>,
    basis_grades: Vec<u32>,
    index: BTreeMap<Word, usize>,
    coproducts: Vec<Vec<(usize, usize, Scalar)>>,
    dual_basis: Vec<Word>,
    dual_basis_grades: Vec<u32>,
    word_cache: BTreeMap<Word, Functional>,
    blocks: BTreeMap<u32, Block>,
}

impl<'g> DualityEngine<'g> {
    /// Builds the monomial basis to grade `degree`, caches the coproduct of
    /// every basis monomial and inverts the diagonal Gram blocks.
    pub fn new(group: &'g HopfSpec, spec: DualSpec, degree: u32) -> Result<Self, Error> {
        let pres = group.presentation();
        if spec.names.len() != spec.partners.len() || spec.names.len() != spec.weights.len() {
            return Err(Error::Precondition(
                "one partner and one weight per dual generator".into(),
            ));
        }
        let alphabet = Alphabet::new(&spec.names)?;
        let grades: Vec<u32> = spec
            .partners
            .iter()
            .map(|(g, _)| pres.grades()[g.index()])
            .collect();
        let data = group.expand(None)?;
        let basis = pres.pbw_basis(degree);
        let basis_grades: Vec<u32> = basis.iter().map(|w| w.grade(pres.grades())).collect();
        let index: BTreeMap<Word, usize> =
            basis.iter().cloned().enumerate().map(|(k, w)| (w, k)).collect();
        let dual_basis = ordered_words(&grades, degree);
        let dual_basis_grades = dual_basis.iter().map(|w| w.grade(&grades)).collect();
        let mut engine = DualityEngine {
            group: data,
            spec,
            alphabet,
            gen_grades: grades,
            degree,
            basis,
            basis_grades,
            index,
            coproducts: Vec::new(),
            dual_basis,
            dual_basis_grades,
            word_cache: BTreeMap::new(),
            blocks: BTreeMap::new(),
        };
        engine.cache_coproducts()?;
        engine.invert_blocks()?;
        Ok(engine)
    }

    fn cache_coproducts(&mut self) -> Result<(), Error> {
        let mut all = Vec::with_capacity(self.basis.len());
        for w in self.basis.clone() {
            let d = self.group.delta_word(&w);
            let mut terms = Vec::with_capacity(d.num_terms());
            for (k, c) in d.terms() {
                let i0 = self.position(&k[0])?;
                let i1 = self.position(&k[1])?;
                terms.push((i0, i1, c.clone()));
            }
            all.push(terms);
        }
        self.coproducts = all;
        Ok(())
    }

    fn position(&self, w: &Word) -> Result<usize, Error> {
        self.index.get(w).copied().ok_or_else(|| {
            Error::Precondition(format!(
                "monomial {} lies outside the grade-{} basis",
                self.group.presentation().alphabet().word_string(w),
                self.degree
            ))
        })
    }

    fn invert_blocks(&mut self) -> Result<(), Error> {
        for d in 0..=self.degree {
            let rows: Vec<usize> = (0..self.dual_basis.len())
                .filter(|&r| self.dual_basis_grades[r] == d)
                .collect();
            let cols: Vec<usize> = (0..self.basis.len())
                .filter(|&c| self.basis_grades[c] == d)
                .collect();
            if rows.len() != cols.len() {
                return Err(Error::SingularBlock { grade: d });
            }
            let mut m = Vec::with_capacity(rows.len());
            for &r in &rows {
                let f = self.word_functional(&self.dual_basis[r].clone());
                m.push(cols.iter().map(|&c| f.values[c].clone()).collect::<Vec<_>>());
            }
            let inverse = linalg::numeric(&m)
                .and_then(|n| linalg::invert(&n))
                .ok_or(Error::SingularBlock { grade: d })?;
            self.blocks.insert(d, Block { rows, cols, inverse });
        }
        Ok(())
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn spec(&self) -> &DualSpec {
        &self.spec
    }

    pub fn dual_alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn dual_grades(&self) -> &[u32] {
        &self.gen_grades
    }

    pub fn group(&mut self) -> &mut HopfData<'g> {
        &mut self.group
    }

    pub fn group_presentation(&self) -> &'g Presentation {
        self.group.presentation()
    }

    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    pub fn dual_basis(&self) -> &[Word] {
        &self.dual_basis
    }

    pub fn dual_id(&self, name: &str) -> Result<GeneratorId, Error> {
        self.alphabet
            .id(name)
            .ok_or_else(|| Error::UnknownGenerator(name.into()))
    }

    /// The counit of the group, i.e. the unit of the dual.
    pub fn unit_functional(&self) -> Functional {
        let mut f = Functional::zero(self.basis.len());
        f.values[self.index[&Word::unit()]] = Scalar::one();
        f
    }

    pub fn generator_functional(&self, x: GeneratorId) -> Functional {
        let mut f = Functional::zero(self.basis.len());
        let (g, v) = &self.spec.partners[x.index()];
        if let Some(&k) = self.index.get(&Word::gen(*g)) {
            f.values[k] = v.clone();
        }
        f
    }

    /// `(f g)(m) = (f ⊗ g)(Δ m)`.
    pub fn mul(&self, f: &Functional, g: &Functional) -> Functional {
        let mut out = Functional::zero(self.basis.len());
        for (m, terms) in self.coproducts.iter().enumerate() {
            let mut s = Scalar::zero();
            for (i0, i1, c) in terms {
                let (a, b) = (&f.values[*i0], &g.values[*i1]);
                if a.is_zero() || b.is_zero() {
                    continue;
                }
                s += &(&(c * a) * b);
            }
            out.values[m] = s;
        }
        out
    }

    /// Functional of a dual word, any order of letters.
    pub fn word_functional(&mut self, w: &Word) -> Functional {
        if let Some(f) = self.word_cache.get(w) {
            return f.clone();
        }
        let f = match w.letters().split_last() {
            None => self.unit_functional(),
            Some((last, rest)) => {
                let head = self.word_functional(&Word(rest.to_vec()));
                let g = self.generator_functional(*last);
                self.mul(&head, &g)
            }
        };
        self.word_cache.insert(w.clone(), f.clone());
        f
    }

    /// Functional of a dual element.
    pub fn functional(&mut self, x: &NCPoly) -> Functional {
        let mut out = Functional::zero(self.basis.len());
        for (w, c) in x.terms() {
            out = out.add(&self.word_functional(w).scale(c));
        }
        out
    }

    /// `f(phi)` for a group element; `phi` is normal-ordered first.
    pub fn evaluate(&mut self, f: &Functional, phi: &NCPoly) -> Result<Scalar, Error> {
        let phi = self.group.normal(phi);
        let mut s = Scalar::zero();
        for (w, c) in phi.terms() {
            let k = self.position(w)?;
            s += &(c * &f.values[k]);
        }
        Ok(s)
    }

    /// `<w, phi>` for a dual word and a group element.
    pub fn pair(&mut self, w: &Word, phi: &NCPoly) -> Result<Scalar, Error> {
        let f = self.word_functional(w);
        self.evaluate(&f, phi)
    }

    pub fn gram(&mut self) -> GramMatrix {
        let rows = self.dual_basis.clone();
        let entries = rows.iter().map(|w| self.word_functional(w).values).collect();
        GramMatrix {
            rows,
            cols: self.basis.clone(),
            row_grades: self.dual_basis_grades.clone(),
            col_grades: self.basis_grades.clone(),
            entries,
        }
    }

    /// The dual element, up to grade `bound`, whose functional agrees with
    /// `f` on every monomial of grade at most `bound`.
    pub fn reconstruct_bounded(&mut self, f: &Functional, bound: u32) -> NCPoly {
        let mut coeffs: Vec<(usize, Scalar)> = Vec::new();
        for d in 0..=bound.min(self.degree) {
            let block = &self.blocks[&d];
            let (rows, cols) = (block.rows.clone(), block.cols.clone());
            let mut rhs: Vec<Scalar> = cols.iter().map(|&c| f.values[c].clone()).collect();
            for (r, x) in &coeffs {
                let row = self.word_functional(&self.dual_basis[*r].clone());
                for (k, &c) in cols.iter().enumerate() {
                    let v = &row.values[c];
                    if !v.is_zero() {
                        rhs[k] -= &(x * v);
                    }
                }
            }
            // x_rows · B = rhs  =>  x_rows = rhs · B⁻¹.
            let inv = &self.blocks[&d].inverse;
            for (i, &r) in rows.iter().enumerate() {
                let mut x = Scalar::zero();
                for (k, v) in rhs.iter().enumerate() {
                    if !v.is_zero() && !inv[k][i].is_zero() {
                        x += &v.scale(&inv[k][i]);
                    }
                }
                if !x.is_zero() {
                    coeffs.push((r, x));
                }
            }
        }
        NCPoly::from_terms(coeffs.into_iter().map(|(r, x)| (self.dual_basis[r].clone(), x)))
    }

    pub fn reconstruct(&mut self, f: &Functional) -> NCPoly {
        self.reconstruct_bounded(f, self.degree)
    }

    /// `[x, y]` in the dual, from `<x ⊗ y - y ⊗ x, Δ Φ>`.
    pub fn dual_commutator(&mut self, x: GeneratorId, y: GeneratorId) -> NCPoly {
        let xy = self.word_functional(&Word(vec![x, y]));
        let yx = self.word_functional(&Word(vec![y, x]));
        self.reconstruct(&xy.sub(&yx))
    }

    /// `<x, m1 m2>` for all basis pairs with `grade(m1) + grade(m2) <= N`.
    fn product_table(&mut self, f: &Functional) -> Result<BTreeMap<(usize, usize), Scalar>, Error> {
        let mut table = BTreeMap::new();
        for i in 0..self.basis.len() {
            for j in 0..self.basis.len() {
                if self.basis_grades[i] + self.basis_grades[j] > self.degree {
                    continue;
                }
                let prod = self.group.mul(
                    &NCPoly::monomial(self.basis[i].clone(), Scalar::one()),
                    &NCPoly::monomial(self.basis[j].clone(), Scalar::one()),
                );
                let v = self.evaluate(f, &prod)?;
                table.insert((i, j), v);
            }
        }
        Ok(table)
    }

    /// `Δ x` from `<Δ x, Φ ⊗ Ψ> = <x, Φ Ψ>`, truncated at total grade `N`.
    pub fn dual_coproduct(&mut self, x: GeneratorId) -> Result<TensorPoly, Error> {
        let fx = self.generator_functional(x);
        self.coproduct_of(&fx)
    }

    /// `Δ` of the dual element whose functional is `f`.
    pub fn coproduct_of(&mut self, f: &Functional) -> Result<TensorPoly, Error> {
        let table = self.product_table(f)?;
        let n = self.basis.len();
        // Rows first: for each right monomial m2 of grade q, solve over m1.
        let mut partial: BTreeMap<(Word, usize), Scalar> = BTreeMap::new();
        for j in 0..n {
            let q = self.basis_grades[j];
            let mut col = Functional::zero(n);
            for i in 0..n {
                if let Some(v) = table.get(&(i, j)) {
                    col.values[i] = v.clone();
                }
            }
            let left = self.reconstruct_bounded(&col, self.degree - q);
            for (w, c) in left.terms() {
                partial.insert((w.clone(), j), c.clone());
            }
        }
        // Then for each left dual word w1 of grade p, solve over m2.
        let mut lefts: Vec<Word> = partial.keys().map(|(w, _)| w.clone()).collect();
        lefts.dedup();
        let mut out = TensorPoly::zero(2);
        for w1 in lefts {
            let p = w1.grade(&self.gen_grades);
            let mut row = Functional::zero(n);
            for j in 0..n {
                if let Some(v) = partial.get(&(w1.clone(), j)) {
                    row.values[j] = v.clone();
                }
            }
            let right = self.reconstruct_bounded(&row, self.degree - p);
            for (w2, c) in right.terms() {
                out.add_term(vec![w1.clone(), w2.clone()], c.clone());
            }
        }
        Ok(out)
    }

    /// Pairs `(m1, m2)` where `<Δ x, m1 ⊗ m2> != <x, m1 m2>`.
    pub fn coproduct_closure(
        &mut self,
        x: GeneratorId,
        delta: &TensorPoly,
    ) -> Result<Vec<(Word, Word)>, Error> {
        let fx = self.generator_functional(x);
        let table = self.product_table(&fx)?;
        let mut legs: BTreeMap<Word, Functional> = BTreeMap::new();
        for (k, _) in delta.terms() {
            for w in k {
                if !legs.contains_key(w) {
                    let f = self.word_functional(w);
                    legs.insert(w.clone(), f);
                }
            }
        }
        let mut bad = Vec::new();
        for ((i, j), want) in &table {
            let mut got = Scalar::zero();
            for (k, c) in delta.terms() {
                let a = &legs[&k[0]].values[*i];
                let b = &legs[&k[1]].values[*j];
                if !a.is_zero() && !b.is_zero() {
                    got += &(&(c * a) * b);
                }
            }
            if &got != want {
                bad.push((self.basis[*i].clone(), self.basis[*j].clone()));
            }
        }
        Ok(bad)
    }

    /// `S x` from `<S x, Φ> = <x, S Φ>`.
    pub fn dual_antipode(&mut self, x: GeneratorId) -> Result<NCPoly, Error> {
        let fx = self.generator_functional(x);
        let mut f = Functional::zero(self.basis.len());
        for (k, m) in self.basis.clone().iter().enumerate() {
            let s = self.group.antipode_word(m);
            f.values[k] = self.evaluate(&fx, &s)?;
        }
        Ok(self.reconstruct(&f))
    }

    /// `x*` from `<x*, Φ> = conj <x, S⁻¹(Φ*)>`.
    pub fn dual_star(&mut self, x: GeneratorId) -> Result<NCPoly, Error> {
        let fx = self.generator_functional(x);
        self.star_of(&fx)
    }

    pub fn star_of(&mut self, fx: &Functional) -> Result<NCPoly, Error> {
        let mut f = Functional::zero(self.basis.len());
        for (k, m) in self.basis.clone().iter().enumerate() {
            let phi = NCPoly::monomial(m.clone(), Scalar::one());
            let st = self.group.star_poly(&phi);
            let s = self.group.antipode_inverse_poly(&st)?;
            f.values[k] = self.evaluate(fx, &s)?.conj();
        }
        Ok(self.reconstruct(&f))
    }

    /// `ε(x) = <x, I>`.
    pub fn dual_counit(&self, x: GeneratorId) -> Scalar {
        self.generator_functional(x).values[self.index[&Word::unit()]].clone()
    }

    /// Presentation of the dual from the reconstructed commutators, exact up
    /// to grade `N`.
    pub fn dual_presentation(&mut self) -> Result<Presentation, Error> {
        let owned = self.spec.names.clone();
        let names: Vec<&str> = owned.iter().map(String::as_str).collect();
        let mut b = Presentation::builder(
            &format!("{}(reconstructed)", self.spec.name),
            &names,
            &self.spec.weights,
            &self.gen_grades,
        )?;
        let n = names.len();
        for j in 0..n {
            for i in 0..j {
                let (gj, gi) = (GeneratorId(j as u8), GeneratorId(i as u8));
                let c = self.dual_commutator(gj, gi);
                b = b.commutator(names[j], names[i], c)?;
            }
        }
        b.valid_to(self.degree).build()
    }

    /// The complete dual Hopf algebra as reconstructed from the pairing.
    pub fn reconstruct_hopf(&mut self) -> Result<DualStructure, Error> {
        let presentation = self.dual_presentation()?;
        let n = self.spec.names.len();
        let mut coproducts = Vec::with_capacity(n);
        let mut antipodes = Vec::with_capacity(n);
        let mut stars = Vec::with_capacity(n);
        let mut counits = Vec::with_capacity(n);
        for k in 0..n {
            let x = GeneratorId(k as u8);
            coproducts.push(self.dual_coproduct(x)?);
            antipodes.push(self.dual_antipode(x)?);
            stars.push(self.dual_star(x)?);
            counits.push(self.dual_counit(x));
        }
        let hopf = HopfSpec::new(
            presentation.name(),
            presentation.clone(),
            coproducts.iter().map(TensorExpr::from_tensor).collect(),
            counits.clone(),
            antipodes.iter().map(Expr::from_poly).collect(),
            stars.iter().map(Expr::from_poly).collect(),
        )?;
        Ok(DualStructure {
            degree: self.degree,
            hopf,
            coproducts,
            antipodes,
            stars,
            counits,
        })
    }

    pub fn show(&self, x: &NCPoly) -> String {
        self.alphabet.show(x).to_string()
    }

    pub fn show_tensor(&self, t: &TensorPoly) -> String {
        self.alphabet.show_tensor(t).to_string()
    }
}

/// Dual structure maps on generators, as reconstructed.
#[derive(Clone, Debug)]
pub struct DualStructure {
    pub degree: u32,
    pub hopf: HopfSpec,
    pub coproducts: Vec<TensorPoly>,
    pub antipodes: Vec<NCPoly>,
    pub stars: Vec<NCPoly>,
    pub counits: Vec<Scalar>,
}

impl DualStructure {
    /// Antipode from the axiom `m(S ⊗ id)Δ = ε` alone, by fixed-point
    /// iteration starting at `S x = -x`.
    pub fn axiom_antipode(&self) -> Result<Vec<NCPoly>, Error> {
        let p = self.hopf.presentation();
        let mut nz = p.normalizer(Some(self.degree));
        let n = p.rank();
        let mut s: Vec<NCPoly> = (0..n).map(|k| -NCPoly::gen(GeneratorId(k as u8))).collect();
        for _ in 0..=(2 * self.degree + 2) {
            let mut next = Vec::with_capacity(n);
            for k in 0..n {
                let x = GeneratorId(k as u8);
                let mut acc = NCPoly::constant(self.counits[k].clone());
                for (key, c) in self.coproducts[k].terms() {
                    if key[0] == Word::gen(x) && key[1].is_empty() {
                        continue;
                    }
                    let mut left = nz.poly(&NCPoly::one());
                    for g in key[0].letters() {
                        left = nz.mul(&s[g.index()], &left);
                    }
                    let right = nz.word(&key[1]);
                    acc -= &nz.mul(&left, &right).scale(c);
                }
                next.push(acc);
            }
            if next == s {
                return Ok(s);
            }
            s = next;
        }
        Err(Error::NotInvertible(
            "antipode iteration did not settle".into(),
        ))
    }
}
