//! The four built-in algebras: the quantum groups of families A and B and
//! their dual quantum Lie algebras.
//!
//! Group side: family A uses the generator order `a < v < tau`, family B
//! uses `a < tau < v`; both follow the factor order of the exponential
//! coordinates. Dual side: `H < P < K`. Grades are `tau = v = 1, a = 2` and
//! `H = K = 1, P = 2`, which makes the pairing triangular.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::Error;
use crate::expr::{Expr, TensorExpr};
use crate::freealg::{GeneratorId, NCPoly, Word};
use crate::hopf::HopfSpec;
use crate::normalize::Presentation;
use crate::scalar::{GaussRational, ParamMonomial, ParamSymbol, Rational, Scalar};

fn p(s: ParamSymbol) -> Scalar {
    Scalar::param(s)
}

/// `(i * num/den) * s`.
fn ip(num: i64, den: i64, s: ParamSymbol) -> Scalar {
    Scalar::term(GaussRational::imag(num, den), ParamMonomial::var(s))
}

fn g(k: u8) -> GeneratorId {
    GeneratorId(k)
}

fn x(k: u8) -> NCPoly {
    NCPoly::gen(g(k))
}

fn e(k: u8) -> Expr {
    Expr::gen(g(k))
}

fn one() -> Expr {
    Expr::one()
}

fn neg(e: Expr) -> Expr {
    Expr::negated(e)
}

fn mul(items: impl IntoIterator<Item = Expr>) -> Expr {
    Expr::product(items)
}

fn scaled(s: Scalar, e: Expr) -> Expr {
    Expr::scaled(s, e)
}

/// Sign in front of `(i/sigma) tau` in the family-B relation `[a, tau]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SigmaSign {
    Plus,
    Minus,
}

impl SigmaSign {
    fn factor(self) -> i64 {
        match self {
            SigmaSign::Plus => 1,
            SigmaSign::Minus => -1,
        }
    }
}

/// Family-B relation convention used by the built-in preset.
pub const GROUP_B_SIGMA_SIGN: SigmaSign = SigmaSign::Minus;

pub fn group_a() -> Presentation {
    let (a, v) = (x(0), x(1));
    Presentation::builder("group_A", &["a", "v", "tau"], &[2, 1, 1], &[2, 1, 1])
        .and_then(|b| b.commutator("a", "v", (&v * &v).scale(&ip(-1, 2, ParamSymbol::INV_KAPPA))))
        .and_then(|b| {
            b.commutator(
                "a",
                "tau",
                &a.scale(&ip(1, 1, ParamSymbol::INV_KAPPA)) + &v.scale(&ip(1, 1, ParamSymbol::INV_RHO)),
            )
        })
        .and_then(|b| b.commutator("v", "tau", v.scale(&ip(1, 1, ParamSymbol::INV_KAPPA))))
        .and_then(|b| b.build())
        .expect("built-in presentation is valid")
}

pub fn group_b() -> Presentation {
    group_b_with(GROUP_B_SIGMA_SIGN)
}

pub fn group_b_with(sign: SigmaSign) -> Presentation {
    let (tau, v) = (x(1), x(2));
    Presentation::builder("group_B", &["a", "tau", "v"], &[1, 1, 1], &[2, 1, 1])
        .and_then(|b| {
            b.commutator(
                "a",
                "v",
                &tau.scale(&ip(1, 1, ParamSymbol::INV_ALPHA)) - &v.scale(&ip(1, 1, ParamSymbol::INV_SIGMA)),
            )
        })
        .and_then(|b| {
            b.commutator(
                "a",
                "tau",
                &tau.scale(&ip(sign.factor(), 1, ParamSymbol::INV_SIGMA))
                    + &v.scale(&ip(1, 1, ParamSymbol::INV_LAMBDA)),
            )
        })
        .and_then(|b| b.commutator("v", "tau", NCPoly::zero()))
        .and_then(|b| b.build())
        .expect("built-in presentation is valid")
}

pub fn dual_a() -> Presentation {
    let p_ = x(1);
    Presentation::builder("dual_A", &["H", "P", "K"], &[1, 1, 2], &[1, 2, 1])
        .and_then(|b| b.commutator("H", "P", NCPoly::zero()))
        .and_then(|b| b.commutator("K", "P", (&p_ * &p_).scale(&ip(-1, 2, ParamSymbol::INV_KAPPA))))
        .and_then(|b| b.commutator("K", "H", p_.scale(&Scalar::i())))
        .and_then(|b| b.build())
        .expect("built-in presentation is valid")
}

/// `[K, H]` of family B as a polynomial in `P` of grade at most `degree`:
/// `sum_{n>=1} i (-1)^(n+1) 2^(n-1)/n! (1/sigma)^(n-1) P^n`.
pub fn dual_b_kh(degree: u32) -> NCPoly {
    let mut out = NCPoly::zero();
    let mut n = 1u32;
    while 2 * n <= degree {
        let sign: i64 = if n % 2 == 1 { 1 } else { -1 };
        let c = Rational::from_integer((sign * (1i64 << (n - 1))).into())
            * crate::scalar::inv_factorial(n);
        let coeff = Scalar::term(
            GaussRational::new(Rational::from_integer(0.into()), c),
            ParamMonomial::from_factors([(ParamSymbol::INV_SIGMA, n - 1)]),
        );
        out.add_term(Word(vec![g(1); n as usize]), coeff);
        n += 1;
    }
    out
}

/// Family-B dual algebra, exact up to grade `degree`. `P` has termination
/// weight 0 so that every power of `P` is lighter than `K H`.
pub fn dual_b(degree: u32) -> Presentation {
    Presentation::builder("dual_B", &["H", "P", "K"], &[1, 0, 1], &[1, 2, 1])
        .and_then(|b| b.commutator("H", "P", NCPoly::zero()))
        .and_then(|b| b.commutator("K", "P", NCPoly::zero()))
        .and_then(|b| b.commutator("K", "H", dual_b_kh(degree)))
        .map(|b| b.valid_to(degree))
        .and_then(|b| b.build())
        .expect("built-in presentation is valid")
}

fn primitive(k: u8) -> TensorExpr {
    TensorExpr::primitive(g(k))
}

fn self_adjoint(n: u8) -> Vec<Expr> {
    (0..n).map(e).collect()
}

fn group_hopf(name: &str, pres: Presentation) -> HopfSpec {
    let a = pres.id("a").expect("a");
    let v = pres.id("v").expect("v");
    let t = pres.id("tau").expect("tau");
    let mut coproduct = vec![TensorExpr::default(); 3];
    coproduct[a.index()] = TensorExpr::new(vec![
        vec![Expr::gen(a), one()],
        vec![one(), Expr::gen(a)],
        vec![Expr::gen(v), Expr::gen(t)],
    ]);
    coproduct[v.index()] = TensorExpr::primitive(v);
    coproduct[t.index()] = TensorExpr::primitive(t);
    let mut antipode = vec![Expr::one(); 3];
    antipode[a.index()] = Expr::sum([neg(Expr::gen(a)), mul([Expr::gen(v), Expr::gen(t)])]);
    antipode[v.index()] = neg(Expr::gen(v));
    antipode[t.index()] = neg(Expr::gen(t));
    HopfSpec::new(
        name,
        pres,
        coproduct,
        vec![Scalar::zero(); 3],
        antipode,
        self_adjoint(3),
    )
    .expect("built-in Hopf data is valid")
}

pub fn hopf_group_a() -> HopfSpec {
    group_hopf("group_A", group_a())
}

pub fn hopf_group_b() -> HopfSpec {
    group_hopf("group_B", group_b())
}

pub fn hopf_group_b_with(sign: SigmaSign) -> HopfSpec {
    group_hopf("group_B", group_b_with(sign))
}

/// `exp(c * (1/kappa) * H)`.
fn exp_h(c: i64) -> Expr {
    Expr::exp(scaled(Scalar::from_int(c) * p(ParamSymbol::INV_KAPPA), e(0)))
}

pub fn hopf_dual_a() -> HopfSpec {
    let (h, pp, k) = (e(0), e(1), e(2));
    let inv_rho = p(ParamSymbol::INV_RHO);
    let coproduct = vec![
        primitive(0),
        TensorExpr::new(vec![vec![pp.clone(), one()], vec![exp_h(-1), pp.clone()]]),
        TensorExpr::new(vec![
            vec![k.clone(), one()],
            vec![exp_h(-1), k.clone()],
            vec![scaled(-inv_rho.clone(), mul([h.clone(), exp_h(-1)])), pp.clone()],
        ]),
    ];
    HopfSpec::new(
        "dual_A",
        dual_a(),
        coproduct,
        vec![Scalar::zero(); 3],
        dual_a_antipode(DualAAntipode::Derived),
        self_adjoint(3),
    )
    .expect("built-in Hopf data is valid")
}

/// Candidate antipodes for the family-A dual.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualAAntipode {
    /// `S(P) = -P e^{-H/kappa}`, `S(K) = -K e^{-H/kappa} - (1/rho) H P e^{-H/kappa}`.
    Printed,
    /// As printed with the exponent sign flipped, group-like factor on the right.
    FlippedRight,
    /// `S(P) = -e^{H/kappa} P`, `S(K) = -e^{H/kappa} K - (1/rho) H e^{H/kappa} P`.
    Derived,
}

pub fn dual_a_antipode(kind: DualAAntipode) -> Vec<Expr> {
    let (h, pp, k) = (e(0), e(1), e(2));
    let inv_rho = p(ParamSymbol::INV_RHO);
    let (sp, sk) = match kind {
        DualAAntipode::Printed | DualAAntipode::FlippedRight => {
            let c = if kind == DualAAntipode::Printed { -1 } else { 1 };
            (
                neg(mul([pp.clone(), exp_h(c)])),
                Expr::sum([
                    neg(mul([k.clone(), exp_h(c)])),
                    scaled(-inv_rho, mul([h.clone(), pp.clone(), exp_h(c)])),
                ]),
            )
        }
        DualAAntipode::Derived => (
            neg(mul([exp_h(1), pp.clone()])),
            Expr::sum([
                neg(mul([exp_h(1), k.clone()])),
                scaled(-inv_rho, mul([h.clone(), exp_h(1), pp.clone()])),
            ]),
        ),
    };
    vec![neg(h), sp, sk]
}

/// Which inverse parameter multiplies the `K` term of `Delta(H)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualBCoproduct {
    /// `Delta(H)` carries `alpha/sqrt(alpha lambda)`, `Delta(K)` carries `lambda/...`.
    AlphaInH,
    /// `Delta(H)` carries `lambda/sqrt(alpha lambda)`, `Delta(K)` carries `alpha/...`.
    LambdaInH,
}

/// `exp(c * (1/sigma) * P)`.
fn exp_p(c: i64) -> Expr {
    Expr::exp(scaled(Scalar::from_int(c) * p(ParamSymbol::INV_SIGMA), e(1)))
}

fn q() -> Scalar {
    p(ParamSymbol::INV_ALPHA) * p(ParamSymbol::INV_LAMBDA)
}

/// `cosh(P / sqrt(alpha lambda))`.
fn cosh_p(sign: i64) -> Expr {
    Expr::cosh_root(q(), scaled(Scalar::from_int(sign), e(1)))
}

/// `sqrt(alpha lambda) sinh(P / sqrt(alpha lambda))`.
fn sinh_p(sign: i64) -> Expr {
    Expr::sinh_root(q(), scaled(Scalar::from_int(sign), e(1)))
}

/// `lambda/sqrt(alpha lambda) = (1/alpha) sqrt(alpha lambda)` and
/// `alpha/sqrt(alpha lambda) = (1/lambda) sqrt(alpha lambda)`.
fn ratio_h_k(kind: DualBCoproduct) -> (Scalar, Scalar) {
    let (al, la) = (p(ParamSymbol::INV_ALPHA), p(ParamSymbol::INV_LAMBDA));
    match kind {
        DualBCoproduct::LambdaInH => (al, la),
        DualBCoproduct::AlphaInH => (la, al),
    }
}

pub fn dual_b_coproduct(kind: DualBCoproduct) -> Vec<TensorExpr> {
    let (h, k) = (e(0), e(2));
    let (ch, ck) = ratio_h_k(kind);
    let right = |f: Expr| mul([exp_p(-1), f]);
    vec![
        TensorExpr::new(vec![
            vec![one(), h.clone()],
            vec![h.clone(), right(cosh_p(1))],
            vec![scaled(-ch, k.clone()), right(sinh_p(1))],
        ]),
        primitive(1),
        TensorExpr::new(vec![
            vec![one(), k.clone()],
            vec![k.clone(), right(cosh_p(1))],
            vec![scaled(-ck, h), right(sinh_p(1))],
        ]),
    ]
}

/// Antipode solving `m(id x S) Delta = eps` for the given coproduct.
pub fn dual_b_antipode(kind: DualBCoproduct) -> Vec<Expr> {
    let (h, pp, k) = (e(0), e(1), e(2));
    let (ch, ck) = ratio_h_k(kind);
    vec![
        Expr::sum([
            neg(mul([h.clone(), exp_p(1), cosh_p(1)])),
            scaled(-ch, mul([k.clone(), exp_p(1), sinh_p(1)])),
        ]),
        neg(pp),
        Expr::sum([
            neg(mul([k, exp_p(1), cosh_p(1)])),
            scaled(-ck, mul([h, exp_p(1), sinh_p(1)])),
        ]),
    ]
}

pub fn hopf_dual_b(degree: u32) -> HopfSpec {
    hopf_dual_b_with(degree, DualBCoproduct::LambdaInH)
}

pub fn hopf_dual_b_with(degree: u32, kind: DualBCoproduct) -> HopfSpec {
    HopfSpec::new(
        "dual_B",
        dual_b(degree),
        dual_b_coproduct(kind),
        vec![Scalar::zero(); 3],
        dual_b_antipode(kind),
        self_adjoint(3),
    )
    .expect("built-in Hopf data is valid")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Preset {
    GroupA,
    GroupB,
    DualA,
    DualB,
}

impl Preset {
    pub const ALL: [Preset; 4] = [Preset::GroupA, Preset::GroupB, Preset::DualA, Preset::DualB];

    pub fn name(self) -> &'static str {
        match self {
            Preset::GroupA => "group_A",
            Preset::GroupB => "group_B",
            Preset::DualA => "dual_A",
            Preset::DualB => "dual_B",
        }
    }

    pub fn is_dual(self) -> bool {
        matches!(self, Preset::DualA | Preset::DualB)
    }

    /// The group whose dual this is, or the dual of this group.
    pub fn partner(self) -> Preset {
        match self {
            Preset::GroupA => Preset::DualA,
            Preset::GroupB => Preset::DualB,
            Preset::DualA => Preset::GroupA,
            Preset::DualB => Preset::GroupB,
        }
    }

    pub fn presentation(self, degree: u32) -> Presentation {
        match self {
            Preset::GroupA => group_a(),
            Preset::GroupB => group_b(),
            Preset::DualA => dual_a(),
            Preset::DualB => dual_b(degree),
        }
    }

    pub fn hopf(self, degree: u32) -> HopfSpec {
        match self {
            Preset::GroupA => hopf_group_a(),
            Preset::GroupB => hopf_group_b(),
            Preset::DualA => hopf_dual_a(),
            Preset::DualB => hopf_dual_b(degree),
        }
    }

    /// Working grade for checks: exact on the group side.
    pub fn check_degree(self, degree: u32) -> Option<u32> {
        self.is_dual().then_some(degree)
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidName(s.into()))
    }
}
