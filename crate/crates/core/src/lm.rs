//! Coalgebras from commuting matrix families.
//!
//! Given pairwise commuting generators `H_i`, the remaining generators
//! `X = (X_1..X_m)` and commuting `m × m` scalar matrices `mu_i`, `nu_i`,
//!
//!   Δ X_l = Σ_k exp(Σ mu_i H_i)_{lk} ⊗ X_k + X_k ⊗ exp(Σ nu_i H_i)_{lk},
//!   Δ H_i primitive, ε = 0,
//!
//! is coassociative. Series are cut at grade `N`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::freealg::{GeneratorId, NCPoly, TensorPoly, Word};
use crate::linalg::{self, Matrix};
use crate::normalize::{Normalizer, Presentation};
use crate::presets::Preset;
use crate::scalar::{inv_factorial, ParamSymbol, Scalar};

#[derive(Clone, Debug)]
pub struct LmInput {
    pub h: Vec<GeneratorId>,
    pub x: Vec<GeneratorId>,
    pub mu: Vec<Matrix<Scalar>>,
    pub nu: Vec<Matrix<Scalar>>,
}

#[derive(Clone, Debug)]
pub struct LmCoproduct {
    pub input: LmInput,
    pub degree: u32,
    /// Indexed by generator id; every generator is covered.
    pub coproducts: Vec<TensorPoly>,
    pub counits: Vec<Scalar>,
}

fn commute(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> bool {
    linalg::mat_mul(a, b) == linalg::mat_mul(b, a)
}

fn check_input(p: &Presentation, inp: &LmInput) -> Result<(), Error> {
    let n = p.rank();
    let m = inp.x.len();
    let mut seen = vec![false; n];
    for g in inp.h.iter().chain(&inp.x) {
        if g.index() >= n || core::mem::replace(&mut seen[g.index()], true) {
            return Err(Error::Precondition(format!(
                "generator index {} is missing or listed twice",
                g.index()
            )));
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Precondition(
            "every generator must be either commuting or a vector component".into(),
        ));
    }
    if inp.mu.len() != inp.h.len() || inp.nu.len() != inp.h.len() {
        return Err(Error::Precondition("one mu and one nu per commuting generator".into()));
    }
    for mat in inp.mu.iter().chain(&inp.nu) {
        if mat.len() != m || mat.iter().any(|r| r.len() != m) {
            return Err(Error::Precondition(format!("matrices must be {m}x{m}")));
        }
    }
    let mut nz = p.normalizer(None);
    for (j, hj) in inp.h.iter().enumerate() {
        for hi in &inp.h[..j] {
            let c = nz.commutator(&NCPoly::gen(*hj), &NCPoly::gen(*hi));
            if !c.is_zero() {
                return Err(Error::Precondition(format!(
                    "[{}, {}] != 0",
                    p.alphabet().name(*hj),
                    p.alphabet().name(*hi)
                )));
            }
        }
    }
    let all: Vec<(&str, usize, &Matrix<Scalar>)> = inp
        .mu
        .iter()
        .enumerate()
        .map(|(i, m)| ("mu", i, m))
        .chain(inp.nu.iter().enumerate().map(|(i, m)| ("nu", i, m)))
        .collect();
    for (k, (na, ia, a)) in all.iter().enumerate() {
        for (nb, ib, b) in &all[k + 1..] {
            if !commute(a, b) {
                return Err(Error::Precondition(format!(
                    "[{na}_{}, {nb}_{}] != 0",
                    ia + 1,
                    ib + 1
                )));
            }
        }
    }
    Ok(())
}

/// `exp(Σ mats_i H_i)` as a matrix over the algebra, cut at grade `degree`.
fn matrix_exp(
    nz: &mut Normalizer<'_>,
    h: &[GeneratorId],
    mats: &[Matrix<Scalar>],
    m: usize,
    degree: u32,
) -> Matrix<NCPoly> {
    let gen_sum: Matrix<NCPoly> = (0..m)
        .map(|r| {
            (0..m)
                .map(|c| {
                    let mut e = NCPoly::zero();
                    for (g, mat) in h.iter().zip(mats) {
                        e += &NCPoly::gen(*g).scale(&mat[r][c]);
                    }
                    e
                })
                .collect()
        })
        .collect();
    let eye: Matrix<NCPoly> = (0..m)
        .map(|r| {
            (0..m)
                .map(|c| if r == c { NCPoly::one() } else { NCPoly::zero() })
                .collect()
        })
        .collect();
    let mut acc = eye.clone();
    let mut power = eye;
    let min_grade = h
        .iter()
        .map(|g| nz.presentation().grades()[g.index()])
        .min()
        .unwrap_or(1);
    for n in 1..=(degree / min_grade) {
        let mut next: Matrix<NCPoly> = vec![vec![NCPoly::zero(); m]; m];
        for r in 0..m {
            for c in 0..m {
                for k in 0..m {
                    if power[r][k].is_zero() || gen_sum[k][c].is_zero() {
                        continue;
                    }
                    next[r][c] += &nz.mul(&power[r][k], &gen_sum[k][c]);
                }
            }
        }
        power = next;
        let f = Scalar::one().scale_rational(&inv_factorial(n));
        for r in 0..m {
            for c in 0..m {
                acc[r][c] += &power[r][c].scale(&f);
            }
        }
    }
    acc
}

/// Matrices reproducing the dual preset coproducts; `None` for groups.
///
/// dual_A: `h = (H)`, `x = (K, P)`, `mu = -[[1/kappa, 1/rho], [0, 1/kappa]]`.
/// dual_B: `h = (P)`, `x = (H, K)`, `nu = -[[1/sigma, 1/alpha], [1/lambda, 1/sigma]]`.
pub fn preset_input(preset: Preset, p: &Presentation) -> Result<Option<LmInput>, Error> {
    let neg = |s: ParamSymbol| -Scalar::param(s);
    let zero = || vec![vec![Scalar::zero(); 2]; 2];
    Ok(match preset {
        Preset::DualA => Some(LmInput {
            h: vec![p.id("H")?],
            x: vec![p.id("K")?, p.id("P")?],
            mu: vec![vec![
                vec![neg(ParamSymbol::INV_KAPPA), neg(ParamSymbol::INV_RHO)],
                vec![Scalar::zero(), neg(ParamSymbol::INV_KAPPA)],
            ]],
            nu: vec![zero()],
        }),
        Preset::DualB => Some(LmInput {
            h: vec![p.id("P")?],
            x: vec![p.id("H")?, p.id("K")?],
            mu: vec![zero()],
            nu: vec![vec![
                vec![neg(ParamSymbol::INV_SIGMA), neg(ParamSymbol::INV_ALPHA)],
                vec![neg(ParamSymbol::INV_LAMBDA), neg(ParamSymbol::INV_SIGMA)],
            ]],
        }),
        Preset::GroupA | Preset::GroupB => None,
    })
}

pub fn lm_coproduct(p: &Presentation, input: LmInput, degree: u32) -> Result<LmCoproduct, Error> {
    check_input(p, &input)?;
    let mut nz = p.normalizer(Some(degree));
    let m = input.x.len();
    let em = matrix_exp(&mut nz, &input.h, &input.mu, m, degree);
    let en = matrix_exp(&mut nz, &input.h, &input.nu, m, degree);
    let mut coproducts = vec![TensorPoly::zero(2); p.rank()];
    for g in &input.h {
        let x = NCPoly::gen(*g);
        let mut t = TensorPoly::tensor(&[x.clone(), NCPoly::one()])?;
        t.add_assign(&TensorPoly::tensor(&[NCPoly::one(), x])?)?;
        coproducts[g.index()] = t;
    }
    for (l, xl) in input.x.iter().enumerate() {
        let mut t = TensorPoly::zero(2);
        for (k, xk) in input.x.iter().enumerate() {
            let xk = NCPoly::gen(*xk);
            t.add_assign(&TensorPoly::tensor(&[em[l][k].clone(), xk.clone()])?)?;
            t.add_assign(&TensorPoly::tensor(&[xk, en[l][k].clone()])?)?;
        }
        coproducts[xl.index()] = t.truncate_graded(degree, p.grades());
    }
    Ok(LmCoproduct {
        input,
        degree,
        coproducts,
        counits: vec![Scalar::zero(); p.rank()],
    })
}

impl LmCoproduct {
    fn delta_word(&self, nz: &mut Normalizer<'_>, w: &Word) -> Result<TensorPoly, Error> {
        let mut t = TensorPoly::one(2);
        for g in w.letters() {
            t = nz.tensor_mul(&t, &self.coproducts[g.index()])?;
        }
        Ok(t)
    }

    /// `(Δ ⊗ id)Δ X - (id ⊗ Δ)Δ X` per generator, cut at grade `N`.
    pub fn coassociativity_defects(&self, p: &Presentation) -> Result<Vec<TensorPoly>, Error> {
        let mut nz = p.normalizer(Some(self.degree));
        let mut out = Vec::with_capacity(p.rank());
        for d in &self.coproducts {
            let l = d.apply_legwise(0, |w| self.delta_word(&mut nz, w))?;
            let r = d.apply_legwise(1, |w| self.delta_word(&mut nz, w))?;
            let l = nz.tensor(&l);
            let r = nz.tensor(&r);
            out.push(l.sub(&r)?.truncate_graded(self.degree, p.grades()));
        }
        Ok(out)
    }

    /// `(id ⊗ ε)Δ = id = (ε ⊗ id)Δ` on generators.
    pub fn counit_holds(&self) -> bool {
        let eps = |w: &Word| {
            w.letters()
                .iter()
                .fold(Scalar::one(), |s, h| &s * &self.counits[h.index()])
        };
        self.coproducts.iter().enumerate().all(|(g, d)| {
            let x = NCPoly::gen(GeneratorId(g as u8));
            [0, 1].iter().all(|&leg| {
                let mut acc = NCPoly::zero();
                for (k, c) in d.terms() {
                    acc.add_term(k[1 - leg].clone(), c * &eps(&k[leg]));
                }
                acc == x
            })
        })
    }

    /// First-order part `Σ mu_i H_i ⊗̇ X + flip(Σ nu_i H_i ⊗̇ X)` of `Δ X_l`.
    pub fn first_order(&self, l: usize) -> Result<TensorPoly, Error> {
        let inp = &self.input;
        let mut t = TensorPoly::zero(2);
        for (k, xk) in inp.x.iter().enumerate() {
            for (i, h) in inp.h.iter().enumerate() {
                let (a, b) = (&inp.mu[i][l][k], &inp.nu[i][l][k]);
                let (hg, xg) = (NCPoly::gen(*h), NCPoly::gen(*xk));
                if !a.is_zero() {
                    t.add_assign(&TensorPoly::tensor(&[hg.clone(), xg.clone()])?.scale(a))?;
                }
                if !b.is_zero() {
                    t.add_assign(&TensorPoly::tensor(&[xg, hg])?.scale(b))?;
                }
            }
        }
        Ok(t)
    }

    /// `δ X_l = Δ₁ X_l - flip(Δ₁ X_l)`, one entry per vector component.
    pub fn cocommutator(&self) -> Result<Vec<TensorPoly>, Error> {
        (0..self.input.x.len())
            .map(|l| {
                let d1 = self.first_order(l)?;
                d1.sub(&d1.flip())
            })
            .collect()
    }
}

/// `true` when `flip(t) = -t`.
pub fn is_antisymmetric(t: &TensorPoly) -> bool {
    let mut s = t.flip();
    s.add_assign(t).is_ok() && s.is_zero()
}
