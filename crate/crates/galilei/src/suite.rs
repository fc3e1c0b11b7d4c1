//! The verification pipeline behind `galilei check`.
//!
//! Stages run in a fixed order: consistency, Hopf axioms, star, series,
//! duality, Lyakhovsky-Mudrov matching, limits. A record is `Documented`
//! only when a derived value differs from a printed one in exactly the way
//! the check predicts; every other mismatch is `Fail`.

use std::time::Instant;

use galilei_core::duality::{DualSpec, DualStructure, DualityEngine};
use galilei_core::hopf::{Axiom, AxiomCheck, HopfData, HopfSpec};
use galilei_core::lm::{self, is_antisymmetric};
use galilei_core::normalize::verify_consistency;
use galilei_core::presets::{self, DualAAntipode, DualBCoproduct, Preset};
use galilei_core::series::{
    family_a_factors, family_b_factors, equal_diagonal_closed_form, group_law_extract, matrix_deltas, printed_closed_form,
    verify_conjugation_closed_form,
};
use galilei_core::{Alphabet, Error, GeneratorId, NCPoly, ParamSymbol, Presentation, Scalar, TensorPoly};

use crate::error::CliError;
use crate::report::{Record, Report, Status};
use crate::specfile::SpecFile;

/// Group law compositions are compared to this coordinate order.
const GROUP_LAW_ORDER: u32 = 3;

pub enum Target {
    Preset(Preset),
    File(Box<SpecFile>),
}

impl Target {
    pub fn name(&self) -> String {
        match self {
            Target::Preset(p) => p.name().into(),
            Target::File(f) => f.presentation.name().into(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub degree: u32,
    /// Attach wall time to records. Off by default so reports are
    /// byte-identical across runs.
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            degree: 6,
            timing: false,
        }
    }
}

/// Which printed convention a derived value may legitimately deviate from.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Family {
    A,
    B,
}

impl Family {
    fn of(p: Preset) -> Family {
        match p {
            Preset::GroupA | Preset::DualA => Family::A,
            Preset::GroupB | Preset::DualB => Family::B,
        }
    }

    fn group(self) -> Preset {
        match self {
            Family::A => Preset::GroupA,
            Family::B => Preset::GroupB,
        }
    }

    fn dual(self) -> Preset {
        self.group().partner()
    }
}

fn stage(
    report: &mut Report,
    opts: &Options,
    f: impl FnOnce() -> Result<Vec<Record>, CliError>,
) -> Result<(), CliError> {
    let t = Instant::now();
    let records = f()?;
    let ms = t.elapsed().as_millis() as u64;
    for mut r in records {
        if opts.timing {
            r.wall_ms = Some(ms);
        }
        report.push(r);
    }
    Ok(())
}

pub fn run_suite(target: &Target, opts: &Options) -> Result<Report, CliError> {
    let mut report = Report::new(target.name(), opts.degree);
    let n = opts.degree;
    match target {
        Target::Preset(p) => {
            let p = *p;
            let family = Family::of(p);
            let pres = p.presentation(n);
            let spec = p.hopf(n);
            let deg = p.check_degree(n);
            stage(&mut report, opts, || Ok(consistency(&pres, deg)))?;
            stage(&mut report, opts, || {
                hopf_and_star(&spec, deg, Some(&expected_square_defect(p, &pres)))
            })?;
            if !p.is_dual() {
                stage(&mut report, opts, || series(p, n))?;
            }
            stage(&mut report, opts, || duality(family, n))?;
            if p.is_dual() {
                stage(&mut report, opts, || lm_records(p, n))?;
            }
            stage(&mut report, opts, || limits(&spec, deg, p == Preset::DualB))?;
        }
        Target::File(f) => {
            let deg = f.presentation.valid_to().map(|v| v.min(n));
            stage(&mut report, opts, || Ok(consistency(&f.presentation, deg)))?;
            if let Some(spec) = &f.hopf {
                let deg = file_degree(spec, deg, n);
                stage(&mut report, opts, || hopf_and_star(spec, deg, None))?;
                stage(&mut report, opts, || limits(spec, deg, false))?;
            }
        }
    }
    Ok(report)
}

/// Only the limit lattice of the target's Hopf structure.
pub fn run_limits(target: &Target, opts: &Options) -> Result<Report, CliError> {
    let mut report = Report::new(target.name(), opts.degree);
    let n = opts.degree;
    match target {
        Target::Preset(p) => {
            let spec = p.hopf(n);
            stage(&mut report, opts, || limits(&spec, p.check_degree(n), *p == Preset::DualB))?;
        }
        Target::File(f) => {
            let Some(spec) = &f.hopf else {
                return Err(CliError::Load("limits need a Hopf structure".into()));
            };
            let deg = file_degree(spec, f.presentation.valid_to().map(|v| v.min(n)), n);
            stage(&mut report, opts, || limits(spec, deg, false))?;
        }
    }
    Ok(report)
}

/// Lyakhovsky-Mudrov matching for a dual preset; a group preset selects
/// its dual.
pub fn run_lm(preset: Preset, opts: &Options) -> Result<Report, CliError> {
    let p = if preset.is_dual() { preset } else { preset.partner() };
    let mut report = Report::new(p.name(), opts.degree);
    stage(&mut report, opts, || lm_records(p, opts.degree))?;
    Ok(report)
}

/// The reconstructed dual of a group preset, one line per structure map.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct DualListing {
    pub group: String,
    pub degree: u32,
    pub entries: Vec<(String, String)>,
}

impl DualListing {
    pub fn to_text(&self) -> String {
        let mut out = format!("dual of {} reconstructed at degree {}\n", self.group, self.degree);
        for (k, v) in &self.entries {
            out.push_str(&format!("{k} = {v}\n"));
        }
        out
    }
}

/// Reconstructs the dual of a group preset; a dual preset selects its group.
pub fn reconstruct_dual(preset: Preset, n: u32) -> Result<DualListing, CliError> {
    let family = Family::of(preset);
    let group = family.group().hopf(n);
    let spec = match family {
        Family::A => DualSpec::family_a(group.presentation())?,
        Family::B => DualSpec::family_b(group.presentation())?,
    };
    let mut engine = DualityEngine::new(&group, spec, n)?;
    let rec = engine.reconstruct_hopf()?;
    let al = engine.dual_alphabet().clone();
    let mut entries = Vec::new();
    for j in 0..al.rank() {
        for i in 0..j {
            let (gj, gi) = (GeneratorId(j as u8), GeneratorId(i as u8));
            let c = engine.dual_commutator(gj, gi);
            entries.push((format!("[{},{}]", al.name(gj), al.name(gi)), al.show(&c).to_string()));
        }
    }
    for (k, name) in al.names().iter().enumerate() {
        entries.push((format!("Delta({name})"), al.show_tensor(&rec.coproducts[k]).to_string()));
    }
    for (k, name) in al.names().iter().enumerate() {
        entries.push((format!("S({name})"), al.show(&rec.antipodes[k]).to_string()));
    }
    for (k, name) in al.names().iter().enumerate() {
        entries.push((format!("eps({name})"), rec.counits[k].to_string()));
    }
    for (k, name) in al.names().iter().enumerate() {
        entries.push((format!("star({name})"), al.show(&rec.stars[k]).to_string()));
    }
    Ok(DualListing {
        group: family.group().name().into(),
        degree: n,
        entries,
    })
}

/// Exact when possible; series in the structure maps force truncation.
fn file_degree(spec: &HopfSpec, deg: Option<u32>, n: u32) -> Option<u32> {
    match (deg, spec.expand(None)) {
        (None, Err(Error::NeedsTruncation)) => Some(n),
        _ => deg,
    }
}

fn first_failure(c: &AxiomCheck) -> Option<String> {
    let f = c.failures.first()?;
    let more = c.failures.len() - 1;
    Some(if more == 0 {
        format!("{}: {}", f.subject, f.residual)
    } else {
        format!("{}: {} (and {more} more)", f.subject, f.residual)
    })
}

fn consistency(p: &Presentation, deg: Option<u32>) -> Vec<Record> {
    let r = verify_consistency(p, deg);
    let mut rec = Record::new(
        "consistency.pbw",
        format!("overlap ambiguities of {} resolve", p.name()),
        Status::from_ok(r.ok()),
    )
    .degree(deg);
    if let Some(t) = r.first_failure() {
        let al = p.alphabet();
        let (x, y, z) = t.triple;
        rec = rec.witness(format!(
            "triple ({}, {}, {}): left - right = {}",
            al.name(x),
            al.name(y),
            al.name(z),
            al.show(&(&t.left_path - &t.right_path))
        ));
    }
    vec![rec]
}

fn axiom_check_name(a: Axiom) -> &'static str {
    match a {
        Axiom::Coassociativity => "hopf.coassociativity",
        Axiom::Counit => "hopf.counit",
        Axiom::Antipode => "hopf.antipode",
        Axiom::Relations => "hopf.relations_respected",
        Axiom::Star => "star.anti_involution",
        Axiom::StarAntipode => "star.antipode_identity",
    }
}

fn axiom_records(prefix: Option<&str>, data: &mut HopfData<'_>, deg: Option<u32>) -> Vec<Record> {
    let name = data.spec().name().to_string();
    data.check_all()
        .iter()
        .map(|c| {
            let check = match prefix {
                Some(p) => format!("{p}.{}", c.axiom.label()),
                None => axiom_check_name(c.axiom).into(),
            };
            let mut r = Record::new(check, format!("{} of {name}", c.axiom.label()), Status::from_ok(c.ok()))
                .degree(deg);
            if let Some(w) = first_failure(c) {
                r = r.witness(w);
            }
            r
        })
        .collect()
}

/// Predicted `S²(g) - g` for the presets, where it does not vanish.
fn expected_square_defect(p: Preset, pres: &Presentation) -> Vec<(GeneratorId, NCPoly)> {
    let (x, y) = match p {
        Preset::GroupA => ("a", "v"),
        Preset::DualA => ("K", "P"),
        Preset::GroupB | Preset::DualB => return Vec::new(),
    };
    let minus_ik = -(&Scalar::i() * &Scalar::param(ParamSymbol::INV_KAPPA));
    match (pres.id(x), pres.id(y)) {
        (Ok(x), Ok(y)) => vec![(x, NCPoly::gen(y).scale(&minus_ik))],
        _ => Vec::new(),
    }
}

fn hopf_and_star(
    spec: &HopfSpec,
    deg: Option<u32>,
    expected_defect: Option<&[(GeneratorId, NCPoly)]>,
) -> Result<Vec<Record>, CliError> {
    let mut data = match spec.expand(deg) {
        Ok(d) => d,
        Err(e) => {
            return Ok(vec![Record::new("hopf.expand", spec.name(), Status::Fail)
                .degree(deg)
                .witness(e.to_string())])
        }
    };
    let mut out = axiom_records(None, &mut data, deg);
    let defect = data.antipode_square_defect();
    let al = spec.presentation().alphabet();
    let shown = defect
        .iter()
        .map(|(g, d)| format!("S^2({0}) - {0} = {1}", al.name(*g), al.show(d)))
        .collect::<Vec<_>>()
        .join("; ");
    let mut r = Record::new("hopf.antipode_square", format!("S^2 = id on {}", spec.name()), Status::Pass)
        .degree(deg);
    if !defect.is_empty() {
        r = match expected_defect {
            Some(e) if e == defect.as_slice() => r
                .with_status(Status::Documented)
                .note(format!("S^2 is not the identity; {shown}")),
            Some(_) => r.with_status(Status::Fail).witness(shown),
            // No reference value for user structures: S^2 = id is not an axiom.
            None => r.note(format!("S^2 is not the identity; {shown}")),
        };
    }
    out.insert(4, r);
    Ok(out)
}

fn series(p: Preset, n: u32) -> Result<Vec<Record>, CliError> {
    let pres = p.presentation(n);
    let mut out = Vec::new();
    if p == Preset::GroupB {
        let r = verify_conjugation_closed_form(&pres, n)?;
        let show = |d: &[galilei_core::series::CoefficientDelta]| {
            d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
        };
        let mut ode = Record::new(
            "series.conjugation_ode",
            "e^{-mu' a} (tau, v) e^{mu' a} = exp(i mu' A) (tau, v)",
            Status::from_ok(r.ode_mismatches.is_empty()),
        )
        .degree(Some(n));
        if !r.ode_mismatches.is_empty() {
            ode = ode.witness(show(&r.ode_mismatches));
        }
        out.push(ode);
        let ok = r.closed_form_available && r.closed_form_mismatches.is_empty();
        let mut cf = Record::new(
            "series.conjugation_closed_form",
            "exp(i mu' A) in cosh/sinh form",
            Status::from_ok(ok),
        )
        .degree(Some(n))
        .note(format!("argument square {}", r.argument_square));
        if !r.closed_form_available {
            cf = cf.witness("A has unequal diagonal entries");
        } else if !r.closed_form_mismatches.is_empty() {
            cf = cf.witness(show(&r.closed_form_mismatches));
        }
        out.push(cf);
        let mut m = Record::new(
            "series.printed_matrix",
            "printed conjugation matrix A",
            Status::from_ok(r.printed_matrix_deltas.is_empty()),
        );
        if !r.printed_matrix_deltas.is_empty() {
            m = m.witness(show(&r.printed_matrix_deltas));
        }
        out.push(m);
        // Predicted deviation: the printed closed form is the cosh/sinh form
        // of A with its off-diagonal entries times -i, i.e. the hyperbolic
        // reading of what is a rotation for the derived A.
        let printed = printed_closed_form(n);
        let minus_i = -Scalar::i();
        let m = &r.matrix;
        let rotated = [
            [m[0][0].clone(), &minus_i * &m[0][1]],
            [&minus_i * &m[1][0], m[1][1].clone()],
        ];
        let predicted = equal_diagonal_closed_form(&rotated, n);
        let deltas = &r.printed_closed_form_deltas;
        let status = if deltas.is_empty() {
            Status::Pass
        } else if ok && predicted.is_some_and(|p| matrix_deltas(&p, &printed).is_empty()) {
            Status::Documented
        } else {
            Status::Fail
        };
        let mut pc = Record::new("series.printed_closed_form", "printed cosh/sinh closed form", status)
            .degree(Some(n));
        if !deltas.is_empty() {
            pc = pc.witness(show(deltas));
            if status == Status::Documented {
                pc = pc.note(format!(
                    "{} coefficients differ; the printed form equals the derived one with the \
                     argument square {} replaced by {}, so the printed cosh/sinh read as cos/sin",
                    deltas.len(),
                    r.argument_square,
                    -r.argument_square.clone()
                ));
            }
        }
        out.push(pc);
        out.push(match group_law_extract(&pres, &family_b_factors(&pres)?, GROUP_LAW_ORDER) {
            Ok(_) => Record::new("series.group_law", "e^{mu a} e^{lam tau} e^{eta v} composition", Status::Pass)
                .degree(Some(GROUP_LAW_ORDER)),
            Err(e) => Record::new("series.group_law", "e^{mu a} e^{lam tau} e^{eta v} composition", Status::Fail)
                .degree(Some(GROUP_LAW_ORDER))
                .witness(e.to_string()),
        });
    } else if p == Preset::GroupA {
        let target = "e^{mu a} e^{eta v} e^{lam tau} composition";
        let res = group_law_extract(&pres, &family_a_factors(&pres)?, GROUP_LAW_ORDER);
        // Predicted: the product leaves exponential coordinates through a
        // cubic term in v.
        out.push(match res {
            Ok(_) => Record::new("series.group_law", target, Status::Pass),
            Err(Error::Residual(w)) if w.contains("v^3") => Record::new("series.group_law", target, Status::Documented)
                .note("the product does not refactor into scalar exponential coordinates")
                .witness(w),
            Err(e) => Record::new("series.group_law", target, Status::Fail).witness(e.to_string()),
        }
        .degree(Some(GROUP_LAW_ORDER)));
    }
    Ok(out)
}

/// Verdict for a derived value against a printed one.
fn compare<T: PartialEq>(
    derived: &T,
    printed: &T,
    reflected: impl FnOnce() -> T,
    family: Family,
) -> Status {
    if derived == printed {
        Status::Pass
    } else if family == Family::B && *derived == reflected() {
        Status::Documented
    } else {
        Status::Fail
    }
}

const SIGMA_NOTE: &str = "derived value equals the printed one with sigma -> -sigma";

fn reflect_poly(x: &NCPoly) -> NCPoly {
    x.map_coefficients(|c| c.reflect(&ParamSymbol::INV_SIGMA))
}

fn reflect_tensor(t: &TensorPoly) -> TensorPoly {
    t.map_coefficients(|c| c.reflect(&ParamSymbol::INV_SIGMA))
}

struct Compared {
    check: String,
    target: String,
    status: Status,
    diff: String,
}

impl Compared {
    fn record(self, n: u32) -> Record {
        let r = Record::new(self.check, self.target, self.status).degree(Some(n));
        match self.status {
            Status::Pass => r,
            Status::Documented => r.note(SIGMA_NOTE),
            Status::Fail => r.witness(format!("derived - printed = {}", self.diff)),
        }
    }
}

fn compare_poly(al: &Alphabet, check: String, target: String, d: &NCPoly, p: &NCPoly, f: Family) -> Compared {
    Compared {
        status: compare(d, p, || reflect_poly(p), f),
        diff: al.show(&(d - p)).to_string(),
        check,
        target,
    }
}

fn compare_tensor(al: &Alphabet, check: String, target: String, d: &TensorPoly, p: &TensorPoly, f: Family) -> Compared {
    Compared {
        status: compare(d, p, || reflect_tensor(p), f),
        diff: d.sub(p).map(|t| al.show_tensor(&t).to_string()).unwrap_or_default(),
        check,
        target,
    }
}

fn duality(family: Family, n: u32) -> Result<Vec<Record>, CliError> {
    let group = family.group().hopf(n);
    let dual_preset = family.dual();
    let printed = dual_preset.hopf(n);
    let spec = match family {
        Family::A => DualSpec::family_a(group.presentation())?,
        Family::B => DualSpec::family_b(group.presentation())?,
    };
    let mut out = Vec::new();
    let mut engine = match DualityEngine::new(&group, spec, n) {
        Ok(e) => e,
        Err(e) => {
            out.push(
                Record::new("duality.engine", format!("pairing of {}", group.name()), Status::Fail)
                    .degree(Some(n))
                    .witness(e.to_string()),
            );
            return Ok(out);
        }
    };
    let al = engine.dual_alphabet().clone();
    let dual_name = dual_preset.name();
    let pp = printed.presentation();
    if al.names() != pp.alphabet().names() {
        return Err(CliError::Load(format!("dual generator names differ from {dual_name}")));
    }
    let gram = engine.gram();
    let bad = gram.triangularity_violations();
    let mut g = Record::new(
        "duality.gram_triangular",
        format!("pairing of {} with dual words", group.name()),
        Status::from_ok(bad.is_empty()),
    )
    .degree(Some(n));
    if let Some((r, c)) = bad.first() {
        g = g.witness(format!("nonzero entry at row {r}, column {c} above the diagonal blocks"));
    }
    out.push(g);

    let rank = al.rank();
    for j in 0..rank {
        for i in 0..j {
            let (gj, gi) = (GeneratorId(j as u8), GeneratorId(i as u8));
            let derived = engine.dual_commutator(gj, gi);
            let printed_c = pp
                .correction(gj, gi)
                .cloned()
                .unwrap_or_else(NCPoly::zero)
                .truncate_graded(n, pp.grades());
            let label = format!("[{},{}]", al.name(gj), al.name(gi));
            out.push(
                compare_poly(
                    &al,
                    format!("duality.commutator.{label}"),
                    format!("{dual_name} {label}"),
                    &derived,
                    &printed_c,
                    family,
                )
                .record(n),
            );
        }
    }

    let rec = engine.reconstruct_hopf()?;
    let pdata = printed.expand(Some(n))?;
    for k in 0..rank {
        let x = GeneratorId(k as u8);
        let name = al.name(x);
        out.push(
            compare_tensor(
                &al,
                format!("duality.coproduct.{name}"),
                format!("{dual_name} coproduct of {name}"),
                &rec.coproducts[k],
                pdata.delta_gen(x),
                family,
            )
            .record(n),
        );
        let bad = engine.coproduct_closure(x, &rec.coproducts[k])?;
        let mut c = Record::new(
            format!("duality.closure.{name}"),
            format!("<Delta {name}, f (x) g> = <{name}, f g> on all basis pairs"),
            Status::from_ok(bad.is_empty()),
        )
        .degree(Some(n));
        if !bad.is_empty() {
            c = c.witness(format!("{} basis pairs disagree", bad.len()));
        }
        out.push(c);
    }
    if family == Family::B {
        out.push(coproduct_assignment(&rec, n)?);
    }
    for k in 0..rank {
        let x = GeneratorId(k as u8);
        let name = al.name(x);
        out.push(
            compare_poly(
                &al,
                format!("duality.antipode.{name}"),
                format!("{dual_name} antipode of {name}"),
                &rec.antipodes[k],
                pdata.antipode_gen(x),
                family,
            )
            .record(n),
        );
    }
    let routes = rec.axiom_antipode()?;
    let mut r = Record::new(
        "duality.antipode_routes",
        "antipode from the pairing = antipode from m(S (x) id)Delta = eps",
        Status::from_ok(routes == rec.antipodes),
    )
    .degree(Some(n));
    if let Some(k) = (0..rank).find(|&k| routes[k] != rec.antipodes[k]) {
        r = r.witness(format!(
            "{}: {}",
            al.names()[k],
            al.show(&(&routes[k] - &rec.antipodes[k]))
        ));
    }
    out.push(r);
    if family == Family::A {
        out.push(printed_dual_a_antipode(&rec, n)?);
    }
    for k in 0..rank {
        let x = GeneratorId(k as u8);
        let ok = rec.counits[k] == *pdata.counit_gen(x);
        out.push(
            Record::new(
                format!("duality.counit.{}", al.name(x)),
                format!("{dual_name} counit of {}", al.name(x)),
                Status::from_ok(ok),
            )
            .degree(Some(n)),
        );
    }
    for k in 0..rank {
        out.push(star_record(&al, family, k, &rec.stars[k], pdata.star_gen(GeneratorId(k as u8)), n));
    }
    let mut data = rec.hopf.expand(Some(n))?;
    out.extend(axiom_records(Some("duality.reconstructed"), &mut data, Some(n)));
    Ok(out)
}

/// Family A: `K* = K - (i/kappa) P` is predicted; everything else must be
/// self-adjoint as printed.
fn star_record(al: &Alphabet, family: Family, k: usize, derived: &NCPoly, printed: &NCPoly, n: u32) -> Record {
    let x = GeneratorId(k as u8);
    let name = al.name(x);
    let check = format!("duality.star.{name}");
    let target = format!("{name}* = {}", al.show(printed));
    if derived == printed {
        return Record::new(check, target, Status::Pass).degree(Some(n));
    }
    let predicted = (family == Family::A && name == "K")
        .then(|| al.id("P"))
        .flatten()
        .map(|p| {
            let minus_ik = -(&Scalar::i() * &Scalar::param(ParamSymbol::INV_KAPPA));
            &NCPoly::gen(x) + &NCPoly::gen(p).scale(&minus_ik)
        });
    if predicted.as_ref() == Some(derived) {
        Record::new(check, target, Status::Documented)
            .degree(Some(n))
            .note(format!(
                "{name}* = {}; the hermitian combination is K - (i/2)*(1/kappa)*P",
                al.show(derived)
            ))
    } else {
        Record::new(check, target, Status::Fail)
            .degree(Some(n))
            .witness(format!("{name}* = {}", al.show(derived)))
    }
}

/// The printed dual_A antipode differs from the derived one. Documented
/// exactly when the printed one violates the antipode axiom for the
/// printed coproduct while the derived one satisfies it.
fn printed_dual_a_antipode(rec: &DualStructure, n: u32) -> Result<Record, CliError> {
    let printed = presets::hopf_dual_a().with_antipode(presets::dual_a_antipode(DualAAntipode::Printed))?;
    let mut pdata = printed.expand(Some(n))?;
    let al = printed.presentation().alphabet();
    let differs: Vec<String> = (0..al.rank())
        .filter(|&k| *pdata.antipode_gen(GeneratorId(k as u8)) != rec.antipodes[k])
        .map(|k| al.names()[k].clone())
        .collect();
    let printed_axiom = pdata.check_antipode();
    let mut data = rec.hopf.expand(Some(n))?;
    let derived_axiom = data.check_antipode();
    let target = "printed dual_A antipode";
    let r = Record::new("duality.antipode_printed", target, Status::Pass).degree(Some(n));
    Ok(if differs.is_empty() {
        r
    } else if !printed_axiom.ok() && derived_axiom.ok() {
        let mut r = r
            .with_status(Status::Documented)
            .note(format!(
                "printed antipode of {} violates m(S (x) id)Delta = eps for the printed coproduct; \
                 derived S(P) = {}",
                differs.join(", "),
                al.show(&rec.antipodes[printed.presentation().id("P")?.index()])
            ));
        if let Some(w) = first_failure(&printed_axiom) {
            r = r.witness(w);
        }
        r
    } else {
        r.with_status(Status::Fail)
            .witness(format!("antipode of {} differs", differs.join(", ")))
    })
}

/// The two printed alpha/lambda placements in the family B coproducts:
/// exactly one must match the derived coproducts (up to the sigma sign).
fn coproduct_assignment(rec: &DualStructure, n: u32) -> Result<Record, CliError> {
    let matches = |kind: DualBCoproduct| -> Result<bool, CliError> {
        let spec = presets::hopf_dual_b_with(n, kind);
        let d = spec.expand(Some(n))?;
        Ok((0..rec.coproducts.len()).all(|k| {
            let p = d.delta_gen(GeneratorId(k as u8));
            rec.coproducts[k] == *p || rec.coproducts[k] == reflect_tensor(p)
        }))
    };
    let lambda_in_h = matches(DualBCoproduct::LambdaInH)?;
    let alpha_in_h = matches(DualBCoproduct::AlphaInH)?;
    let target = "alpha/lambda placement in the H and K coproducts";
    let r = Record::new("duality.coproduct_assignment", target, Status::Fail).degree(Some(n));
    Ok(match (lambda_in_h, alpha_in_h) {
        (true, false) => r.with_status(Status::Documented).note(
            "the two printed placements disagree; the derived coproducts select \
             Delta H ~ -(1/alpha) K (x) P and Delta K ~ -(1/lambda) H (x) P at first order",
        ),
        (false, true) => r.with_status(Status::Documented).note(
            "the two printed placements disagree; the derived coproducts select \
             Delta H ~ -(1/lambda) K (x) P and Delta K ~ -(1/alpha) H (x) P at first order",
        ),
        (a, s) => r.witness(format!("lambda-in-H placement matches: {a}, alpha-in-H placement matches: {s}")),
    })
}

fn lm_records(p: Preset, n: u32) -> Result<Vec<Record>, CliError> {
    let pres = p.presentation(n);
    let Some(input) = lm::preset_input(p, &pres)? else {
        return Ok(Vec::new());
    };
    let spec = p.hopf(n);
    let data = spec.expand(Some(n))?;
    let c = lm::lm_coproduct(&pres, input, n)?;
    let al = pres.alphabet();
    let mut out = Vec::new();
    for k in 0..pres.rank() {
        let x = GeneratorId(k as u8);
        let printed = data.delta_gen(x);
        let ok = *printed == c.coproducts[k];
        let mut r = Record::new(
            format!("lm.coproduct.{}", al.name(x)),
            format!("{} coproduct of {}", p.name(), al.name(x)),
            Status::from_ok(ok),
        )
        .degree(Some(n));
        if !ok {
            r = r.witness(format!(
                "lm - printed = {}",
                al.show_tensor(&c.coproducts[k].sub(printed)?)
            ));
        }
        out.push(r);
    }
    let defects = c.coassociativity_defects(&pres)?;
    let mut r = Record::new(
        "lm.coassociativity",
        "(Delta (x) id)Delta = (id (x) Delta)Delta for the constructed coproduct",
        Status::from_ok(defects.iter().all(TensorPoly::is_zero)),
    )
    .degree(Some(n));
    if let Some((k, d)) = defects.iter().enumerate().find(|(_, d)| !d.is_zero()) {
        r = r.witness(format!("{}: {}", al.names()[k], al.show_tensor(d)));
    }
    out.push(r);
    out.push(Record::new("lm.counit", "counit identities", Status::from_ok(c.counit_holds())));
    let co = c.cocommutator()?;
    let mut r = Record::new(
        "lm.cocommutator_antisymmetric",
        "flip(delta X) = -delta X",
        Status::from_ok(co.iter().all(is_antisymmetric)),
    );
    let shown = co
        .iter()
        .zip(&c.input.x)
        .map(|(t, x)| format!("delta {} = {}", al.name(*x), al.show_tensor(t)))
        .collect::<Vec<_>>()
        .join("; ");
    r = r.note(shown);
    out.push(r);
    Ok(out)
}

fn limit_label(ps: &[&ParamSymbol]) -> String {
    ps.iter().map(|p| format!("1/{}", p.name())).collect::<Vec<_>>().join(",")
}

fn limits(spec: &HopfSpec, deg: Option<u32>, kh_check: bool) -> Result<Vec<Record>, CliError> {
    let params = spec.params();
    let mut sets: Vec<Vec<&ParamSymbol>> = params.iter().map(|p| vec![p]).collect();
    for (a, p) in params.iter().enumerate() {
        for q in &params[a + 1..] {
            sets.push(vec![p, q]);
        }
    }
    let mut out = Vec::new();
    for set in sets {
        let lim = set.iter().fold(spec.clone(), |s, p| s.take_limit(p));
        let label = limit_label(&set);
        let target = format!("{} with {} -> 0", spec.name(), label);
        let check = format!("limits.{label}");
        let mut consistent = verify_consistency(lim.presentation(), deg);
        let mut r = Record::new(check, target, Status::Pass).degree(deg);
        match lim.expand(deg) {
            Err(e) => r = r.with_status(Status::Fail).witness(e.to_string()),
            Ok(mut data) => {
                let checks = data.check_all();
                if let Some(c) = checks.iter().find(|c| !c.ok()) {
                    r = r.with_status(Status::Fail).witness(format!(
                        "{}: {}",
                        c.axiom.label(),
                        first_failure(c).unwrap_or_default()
                    ));
                }
            }
        }
        if let Some(t) = consistent.triples.drain(..).find(|t| !t.ok()) {
            let al = lim.presentation().alphabet();
            r = r.with_status(Status::Fail).witness(format!(
                "inconsistent triple ({}, {}, {})",
                al.name(t.triple.0),
                al.name(t.triple.1),
                al.name(t.triple.2)
            ));
        }
        out.push(r);
    }
    if kh_check {
        // [K,H] collapses to i*P when 1/sigma -> 0.
        let lim = spec.take_limit(&ParamSymbol::INV_SIGMA);
        let p = lim.presentation();
        let (k, h, pp) = (p.id("K")?, p.id("H")?, p.id("P")?);
        let got = p.correction(k, h).cloned().unwrap_or_else(NCPoly::zero);
        let want = NCPoly::gen(pp).scale(&Scalar::i());
        let mut r = Record::new("limits.1/sigma.[K,H]", "[K,H] -> i*P", Status::from_ok(got == want)).degree(deg);
        if got != want {
            r = r.witness(format!("[K,H] = {}", p.alphabet().show(&got)));
        }
        out.push(r);
    }
    Ok(out)
}
