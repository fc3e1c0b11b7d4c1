//! Presented algebras with quadratic-linear commutation relations and
//! rewriting to PBW normal order.
//!
//! A presentation fixes a canonical generator order. Every out-of-order
//! adjacent pair `x_j x_i` (j after i) rewrites to `x_i x_j + C_ji`. Each
//! generator carries a termination weight; corrections must be strictly
//! lighter than the pair they replace, so the measure
//! `(total weight, inversion count)` strictly decreases on every step.
//!
//! Independently each generator carries a grade used for truncating formal
//! series. When every correction is at least as heavy in grade as the pair it
//! replaces, truncation commutes with rewriting and terms above the working
//! grade can be dropped eagerly.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;
use crate::freealg::{Alphabet, GeneratorId, NCPoly, TensorPoly, Word};
use crate::scalar::{ParamSymbol, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    name: String,
    alphabet: Alphabet,
    weights: Vec<u32>,
    grades: Vec<u32>,
    /// `(j, i)` with `j > i` maps to the correction `C` in `x_j x_i -> x_i x_j + C`.
    rules: BTreeMap<(GeneratorId, GeneratorId), NCPoly>,
    /// Corrections given as truncated series are exact only up to this grade.
    valid_to: Option<u32>,
}

/// Builder collecting commutators before validation.
#[derive(Clone, Debug)]
pub struct PresentationBuilder {
    name: String,
    alphabet: Alphabet,
    weights: Vec<u32>,
    grades: Vec<u32>,
    rules: BTreeMap<(GeneratorId, GeneratorId), NCPoly>,
    valid_to: Option<u32>,
}

impl PresentationBuilder {
    /// Declares `[x, y] = value`. Either orientation is accepted.
    pub fn commutator(mut self, x: &str, y: &str, value: NCPoly) -> Result<Self, Error> {
        let gx = self
            .alphabet
            .id(x)
            .ok_or_else(|| Error::UnknownGenerator(x.into()))?;
        let gy = self
            .alphabet
            .id(y)
            .ok_or_else(|| Error::UnknownGenerator(y.into()))?;
        if gx == gy {
            return Err(Error::Precondition(alloc::format!(
                "relation [{x}, {y}] pairs a generator with itself"
            )));
        }
        value.check_universe(self.alphabet.rank())?;
        // [x, y] = C with x > y reads x y -> y x + C.
        let (key, correction) = if gx > gy {
            ((gx, gy), value)
        } else {
            ((gy, gx), -value)
        };
        if self.rules.contains_key(&key) {
            return Err(Error::DuplicateRelation {
                left: x.into(),
                right: y.into(),
            });
        }
        self.rules.insert(key, correction);
        Ok(self)
    }

    /// Marks corrections as truncated series exact up to `grade`.
    pub fn valid_to(mut self, grade: u32) -> Self {
        self.valid_to = Some(grade);
        self
    }

    pub fn build(self) -> Result<Presentation, Error> {
        let n = self.alphabet.rank();
        for j in 0..n {
            for i in 0..j {
                let key = (GeneratorId(j as u8), GeneratorId(i as u8));
                if !self.rules.contains_key(&key) {
                    return Err(Error::Precondition(alloc::format!(
                        "no relation for the pair [{}, {}]",
                        self.alphabet.names()[j],
                        self.alphabet.names()[i]
                    )));
                }
            }
        }
        let p = Presentation {
            name: self.name,
            alphabet: self.alphabet,
            weights: self.weights,
            grades: self.grades,
            rules: self.rules,
            valid_to: self.valid_to,
        };
        for ((j, i), c) in &p.rules {
            let pair = p.weights[j.index()] + p.weights[i.index()];
            if c.terms().any(|(w, _)| weight(&p.weights, w) >= pair) {
                return Err(Error::NonDecreasingRewrite {
                    left: p.alphabet.name(*j).into(),
                    right: p.alphabet.name(*i).into(),
                });
            }
        }
        Ok(p)
    }
}

fn weight(weights: &[u32], w: &Word) -> u32 {
    w.letters().iter().map(|g| weights[g.index()]).sum()
}

fn inversions(w: &Word) -> u32 {
    let l = w.letters();
    let mut n = 0;
    for a in 0..l.len() {
        for b in a + 1..l.len() {
            if l[a] > l[b] {
                n += 1;
            }
        }
    }
    n
}

impl Presentation {
    /// Starts a presentation. `weights` are termination weights, `grades` the
    /// truncation grading; both are per generator in canonical order.
    pub fn builder(
        name: &str,
        generators: &[&str],
        weights: &[u32],
        grades: &[u32],
    ) -> Result<PresentationBuilder, Error> {
        let alphabet = Alphabet::new(generators)?;
        if weights.len() != alphabet.rank() || grades.len() != alphabet.rank() {
            return Err(Error::Precondition(
                "one weight and one grade per generator".into(),
            ));
        }
        if grades.contains(&0) {
            return Err(Error::Precondition("grades must be positive".into()));
        }
        Ok(PresentationBuilder {
            name: name.into(),
            alphabet,
            weights: weights.to_vec(),
            grades: grades.to_vec(),
            rules: BTreeMap::new(),
            valid_to: None,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.alphabet.rank()
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn grades(&self) -> &[u32] {
        &self.grades
    }

    pub fn valid_to(&self) -> Option<u32> {
        self.valid_to
    }

    pub fn gen(&self, name: &str) -> Result<NCPoly, Error> {
        self.alphabet.gen(name)
    }

    pub fn id(&self, name: &str) -> Result<GeneratorId, Error> {
        self.alphabet
            .id(name)
            .ok_or_else(|| Error::UnknownGenerator(name.into()))
    }

    /// Correction `C` for the out-of-order pair `x_j x_i`.
    pub fn correction(&self, j: GeneratorId, i: GeneratorId) -> Option<&NCPoly> {
        self.rules.get(&(j, i))
    }

    /// Defining relations as elements `x_j x_i - x_i x_j - C` of the free
    /// algebra, paired with their generators `(j, i)`.
    pub fn relations(&self) -> Vec<((GeneratorId, GeneratorId), NCPoly)> {
        self.rules
            .iter()
            .map(|(&(j, i), c)| {
                let r = &(&NCPoly::monomial(Word(alloc::vec![j, i]), Scalar::one())
                    - &NCPoly::monomial(Word(alloc::vec![i, j]), Scalar::one()))
                    - c;
                ((j, i), r)
            })
            .collect()
    }

    /// The termination measure `(total weight, inversion count)`.
    pub fn measure(&self, w: &Word) -> (u32, u32) {
        (weight(&self.weights, w), inversions(w))
    }

    /// True when no rewrite can lower the grade, so eager truncation is exact.
    pub fn grade_monotone(&self) -> bool {
        self.rules.iter().all(|((j, i), c)| {
            let pair = self.grades[j.index()] + self.grades[i.index()];
            c.terms().all(|(w, _)| w.grade(&self.grades) >= pair)
        })
    }

    /// One rewrite at the first descent of `w`; `None` when `w` is ordered.
    pub fn rewrite_step(&self, w: &Word) -> Option<Vec<(Word, Scalar)>> {
        let l = w.letters();
        let pos = l.windows(2).position(|p| p[0] > p[1])?;
        let (j, i) = (l[pos], l[pos + 1]);
        let mut out = Vec::new();
        let mut swapped = l.to_vec();
        swapped.swap(pos, pos + 1);
        out.push((Word(swapped), Scalar::one()));
        if let Some(c) = self.rules.get(&(j, i)) {
            for (cw, cs) in c.terms() {
                let mut v = Vec::with_capacity(l.len() + cw.len());
                v.extend_from_slice(&l[..pos]);
                v.extend_from_slice(cw.letters());
                v.extend_from_slice(&l[pos + 2..]);
                out.push((Word(v), cs.clone()));
            }
        }
        Some(out)
    }

    /// Substitutes `p = 0` in every correction.
    pub fn take_limit(&self, p: &ParamSymbol) -> Presentation {
        let mut out = self.clone();
        for c in out.rules.values_mut() {
            *c = c.limit(p);
        }
        out
    }

    /// Same algebra under a different name.
    pub fn renamed(&self, name: &str) -> Presentation {
        let mut out = self.clone();
        out.name = name.into();
        out
    }

    pub fn normalizer(&self, trunc: Option<u32>) -> Normalizer<'_> {
        Normalizer::new(self, trunc)
    }

    /// Parameters occurring in the relations.
    pub fn params(&self) -> Vec<ParamSymbol> {
        let mut out: Vec<ParamSymbol> = self
            .rules
            .values()
            .flat_map(|c| c.terms().flat_map(|(_, s)| s.params()))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// All ordered words of grade at most `max_grade`, sorted by grade and
    /// then by word order.
    pub fn pbw_basis(&self, max_grade: u32) -> Vec<Word> {
        ordered_words(&self.grades, max_grade)
    }
}

/// Weakly increasing words over generators with the given grades, of total
/// grade at most `max_grade`, sorted by grade and then by word order.
pub fn ordered_words(grades: &[u32], max_grade: u32) -> Vec<Word> {
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<GeneratorId>, u32)> = alloc::vec![(Vec::new(), 0)];
    while let Some((w, g)) = stack.pop() {
        let start = w.last().map_or(0, |x| x.index());
        for (k, gk) in grades.iter().enumerate().skip(start) {
            let ng = g + gk;
            if ng <= max_grade {
                let mut nw = w.clone();
                nw.push(GeneratorId(k as u8));
                stack.push((nw, ng));
            }
        }
        out.push(Word(w));
    }
    out.sort_by(|a, b| a.grade(grades).cmp(&b.grade(grades)).then_with(|| a.cmp(b)));
    out
}

/// Normal-ordering engine with a per-word cache. Create one per batch of
/// related computations; it borrows the presentation immutably.
pub struct Normalizer<'p> {
    p: &'p Presentation,
    trunc: Option<u32>,
    eager: bool,
    cache: BTreeMap<Word, NCPoly>,
}

impl<'p> Normalizer<'p> {
    pub fn new(p: &'p Presentation, trunc: Option<u32>) -> Self {
        let eager = trunc.is_some() && p.grade_monotone();
        Normalizer {
            p,
            trunc,
            eager,
            cache: BTreeMap::new(),
        }
    }

    pub fn presentation(&self) -> &'p Presentation {
        self.p
    }

    pub fn truncation(&self) -> Option<u32> {
        self.trunc
    }

    fn keep(&self, w: &Word) -> bool {
        match self.trunc {
            Some(n) if self.eager => w.grade(&self.p.grades) <= n,
            _ => true,
        }
    }

    fn finish(&self, x: NCPoly) -> NCPoly {
        match self.trunc {
            Some(n) => x.truncate_graded(n, &self.p.grades),
            None => x,
        }
    }

    /// Normal form of a single word.
    pub fn word(&mut self, w: &Word) -> NCPoly {
        if let Some(r) = self.cache.get(w) {
            return r.clone();
        }
        if w.is_ordered() {
            let r = self.finish(NCPoly::monomial(w.clone(), Scalar::one()));
            self.cache.insert(w.clone(), r.clone());
            return r;
        }
        // Always rewrite the pending word with the largest measure: every
        // word it produces is strictly smaller, so each word is visited once.
        let mut pending: BTreeMap<((u32, u32), Word), Scalar> = BTreeMap::new();
        let mut out = NCPoly::zero();
        if self.keep(w) {
            pending.insert((self.p.measure(w), w.clone()), Scalar::one());
        }
        while let Some(((_, cur), c)) = pending.pop_last() {
            if c.is_zero() {
                continue;
            }
            if let Some(known) = self.cache.get(&cur) {
                out += &known.scale(&c);
                continue;
            }
            match self.p.rewrite_step(&cur) {
                None => out.add_term(cur, c),
                Some(next) => {
                    for (nw, ns) in next {
                        if !self.keep(&nw) {
                            continue;
                        }
                        let s = &ns * &c;
                        let key = (self.p.measure(&nw), nw);
                        let slot = pending.entry(key).or_default();
                        *slot += &s;
                    }
                }
            }
        }
        let r = self.finish(out);
        self.cache.insert(w.clone(), r.clone());
        r
    }

    pub fn poly(&mut self, x: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w, c) in x.terms() {
            out += &self.word(w).scale(c);
        }
        out
    }

    /// Normal-ordered product.
    pub fn mul(&mut self, x: &NCPoly, y: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (w1, c1) in x.terms() {
            for (w2, c2) in y.terms() {
                let w = w1.concat(w2);
                if !self.keep(&w) {
                    continue;
                }
                let s = c1 * c2;
                out += &self.word(&w).scale(&s);
            }
        }
        out
    }

    pub fn pow(&mut self, x: &NCPoly, n: u32) -> NCPoly {
        let mut acc = self.finish(NCPoly::one());
        for _ in 0..n {
            acc = self.mul(&acc, x);
        }
        acc
    }

    pub fn commutator(&mut self, x: &NCPoly, y: &NCPoly) -> NCPoly {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        &xy - &yx
    }

    /// Normal-orders each leg; truncates by total grade across legs.
    pub fn tensor(&mut self, t: &TensorPoly) -> TensorPoly {
        let mut out = TensorPoly::zero(t.arity());
        for (key, c) in t.terms() {
            let mut acc = TensorPoly::scalar(c.clone());
            for w in key {
                let leg = self.word(w);
                let mut next = TensorPoly::zero(acc.arity() + 1);
                for (k, s) in acc.terms() {
                    for (lw, ls) in leg.terms() {
                        let mut nk = k.clone();
                        nk.push(lw.clone());
                        next.add_term(nk, s * ls);
                    }
                }
                acc = next;
            }
            for (k, s) in acc.terms() {
                out.add_term(k.clone(), s.clone());
            }
        }
        match self.trunc {
            Some(n) => out.truncate_graded(n, &self.p.grades),
            None => out,
        }
    }

    /// Normal-ordered legwise product of two tensors of equal arity.
    pub fn tensor_mul(&mut self, x: &TensorPoly, y: &TensorPoly) -> Result<TensorPoly, Error> {
        let raw = x.mul(y)?;
        Ok(self.tensor(&raw))
    }
}

/// Normal form of `x` in `p` (no truncation).
pub fn normal_order(p: &Presentation, x: &NCPoly) -> NCPoly {
    p.normalizer(None).poly(x)
}

/// `[x, y]` normal-ordered.
pub fn commutator(p: &Presentation, x: &NCPoly, y: &NCPoly) -> NCPoly {
    p.normalizer(None).commutator(x, y)
}

/// Outcome of checking one overlap `x_k x_j x_i`, `k > j > i`.
#[derive(Clone, Debug)]
pub struct TripleCheck {
    pub triple: (GeneratorId, GeneratorId, GeneratorId),
    /// Normal form after first rewriting `x_k x_j`.
    pub left_path: NCPoly,
    /// Normal form after first rewriting `x_j x_i`.
    pub right_path: NCPoly,
    /// `[x_i,[x_j,x_k]]`, `[x_j,[x_k,x_i]]`, `[x_k,[x_i,x_j]]`.
    pub jacobi_terms: [NCPoly; 3],
}

impl TripleCheck {
    pub fn jacobi_sum(&self) -> NCPoly {
        &(&self.jacobi_terms[0] + &self.jacobi_terms[1]) + &self.jacobi_terms[2]
    }

    pub fn ok(&self) -> bool {
        self.left_path == self.right_path && self.jacobi_sum().is_zero()
    }
}

#[derive(Clone, Debug)]
pub struct ConsistencyReport {
    pub triples: Vec<TripleCheck>,
}

impl ConsistencyReport {
    pub fn ok(&self) -> bool {
        self.triples.iter().all(TripleCheck::ok)
    }

    pub fn first_failure(&self) -> Option<&TripleCheck> {
        self.triples.iter().find(|t| !t.ok())
    }
}

/// Resolves every overlap ambiguity both ways and evaluates the Jacobi
/// identity on each generator triple. `max_degree` truncates series-valued
/// presentations.
pub fn verify_consistency(p: &Presentation, max_degree: Option<u32>) -> ConsistencyReport {
    let mut nz = p.normalizer(max_degree);
    let n = p.rank();
    let mut triples = Vec::new();
    let g = |k: usize| GeneratorId(k as u8);
    for k in 0..n {
        for j in 0..k {
            for i in 0..j {
                let (xk, xj, xi) = (g(k), g(j), g(i));
                let x = |id: GeneratorId| NCPoly::gen(id);
                let c_kj = p.correction(xk, xj).cloned().unwrap_or_default();
                let c_ji = p.correction(xj, xi).cloned().unwrap_or_default();
                let left = &(&(&x(xj) * &x(xk)) * &x(xi)) + &(&c_kj * &x(xi));
                let right = &(&(&x(xk) * &x(xi)) * &x(xj)) + &(&x(xk) * &c_ji);
                let left_path = nz.poly(&left);
                let right_path = nz.poly(&right);
                let c_jk = nz.commutator(&x(xj), &x(xk));
                let c_ki = nz.commutator(&x(xk), &x(xi));
                let c_ij = nz.commutator(&x(xi), &x(xj));
                let jacobi_terms = [
                    nz.commutator(&x(xi), &c_jk),
                    nz.commutator(&x(xj), &c_ki),
                    nz.commutator(&x(xk), &c_ij),
                ];
                triples.push(TripleCheck {
                    triple: (xk, xj, xi),
                    left_path,
                    right_path,
                    jacobi_terms,
                });
            }
        }
    }
    ConsistencyReport { triples }
}
