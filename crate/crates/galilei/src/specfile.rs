//! User algebras from TOML files.
//!
//! ```toml
//! name = "group_A"
//! generators = ["a", "v", "tau"]
//! weights = [2, 1, 1]          # termination weights
//! grades = [2, 1, 1]           # optional, defaults to all 1
//! parameters = ["mu"]          # optional extra inverse parameters
//! relations = ["[v, a] = (i/2)*(1/kappa)*v^2"]
//!
//! [coproduct]                  # optional; makes the file a Hopf algebra
//! a = "a (x) I + I (x) a + v (x) tau"
//! [antipode]
//! a = "-a + v*tau"
//! [counit]                     # optional, defaults to 0
//! [star]                       # optional, defaults to self-adjoint
//! ```

use std::collections::BTreeMap;
use std::path::Path;

use serde::Deserialize;

use galilei_core::hopf::HopfSpec;
use galilei_core::{Alphabet, Expr, ParamSymbol, Presentation, Scalar};

use crate::ast::Ast;
use crate::error::CliError;
use crate::eval::{Evaluator, Symbolic, Value};
use crate::parser::parse;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    name: String,
    generators: Vec<String>,
    weights: Vec<u32>,
    grades: Option<Vec<u32>>,
    #[serde(default)]
    parameters: Vec<String>,
    #[serde(default)]
    relations: Vec<String>,
    valid_to: Option<u32>,
    coproduct: Option<BTreeMap<String, String>>,
    antipode: Option<BTreeMap<String, String>>,
    counit: Option<BTreeMap<String, String>>,
    star: Option<BTreeMap<String, String>>,
}

/// A loaded file: always a presentation, optionally a full Hopf structure.
#[derive(Debug)]
pub struct SpecFile {
    pub presentation: Presentation,
    pub hopf: Option<HopfSpec>,
    pub params: Vec<ParamSymbol>,
}

fn located(what: &str, e: CliError) -> CliError {
    CliError::Load(format!("{what}: {e}"))
}

fn parse_relation(text: &str) -> Result<(String, String, Ast), CliError> {
    let (lhs, rhs) = text
        .split_once('=')
        .ok_or_else(|| CliError::Load(format!("relation `{text}` has no `=`")))?;
    let rhs_offset = lhs.len() + 1;
    let lhs = parse(lhs)?;
    let rhs = parse(rhs).map_err(|mut e| {
        e.offset += rhs_offset;
        e
    })?;
    match lhs {
        Ast::Commutator(x, y) => match (*x, *y) {
            (Ast::Ident(x), Ast::Ident(y)) => Ok((x, y, rhs)),
            _ => Err(CliError::Load(format!(
                "relation `{text}`: left side must be [generator, generator]"
            ))),
        },
        _ => Err(CliError::Load(format!(
            "relation `{text}`: left side must be a commutator"
        ))),
    }
}

fn build_presentation(raw: &RawFile, params: &[ParamSymbol]) -> Result<Presentation, CliError> {
    let names: Vec<&str> = raw.generators.iter().map(String::as_str).collect();
    let grades = raw.grades.clone().unwrap_or_else(|| vec![1; names.len()]);
    let alphabet = Alphabet::new(&names)?;
    let mut b = Presentation::builder(&raw.name, &names, &raw.weights, &grades)?;
    for text in &raw.relations {
        let (x, y, rhs) = parse_relation(text).map_err(|e| located("relations", e))?;
        let sym = Symbolic {
            alphabet: &alphabet,
            params,
        };
        let value = sym
            .expr(&rhs)
            .and_then(|e| Ok(e.expand_free()?))
            .map_err(|e| located(&format!("relation `{text}`"), e))?;
        b = b.commutator(&x, &y, value)?;
    }
    if let Some(v) = raw.valid_to {
        b = b.valid_to(v);
    }
    Ok(b.build()?)
}

fn block<'m>(
    map: &'m Option<BTreeMap<String, String>>,
    block: &str,
    p: &Presentation,
) -> Result<Vec<Option<&'m str>>, CliError> {
    let mut out = vec![None; p.rank()];
    if let Some(m) = map {
        for (k, v) in m {
            let g = p
                .alphabet()
                .id(k)
                .ok_or_else(|| CliError::Load(format!("[{block}]: unknown generator `{k}`")))?;
            out[g.index()] = Some(v.as_str());
        }
    }
    Ok(out)
}

fn build_hopf<'m>(
    raw: &'m RawFile,
    p: &Presentation,
    params: &[ParamSymbol],
) -> Result<Option<HopfSpec>, CliError> {
    if raw.coproduct.is_none() && raw.antipode.is_none() {
        if raw.counit.is_some() || raw.star.is_some() {
            return Err(CliError::Load(
                "[counit] and [star] need [coproduct] and [antipode]".into(),
            ));
        }
        return Ok(None);
    }
    let sym = Symbolic {
        alphabet: p.alphabet(),
        params,
    };
    let names = p.alphabet().names().to_vec();
    let need = |v: Option<&'m str>, blk: &str, k: usize| -> Result<&'m str, CliError> {
        v.ok_or_else(|| CliError::Load(format!("[{blk}]: missing entry for `{}`", names[k])))
    };
    let mut coproduct = Vec::new();
    for (k, v) in block(&raw.coproduct, "coproduct", p)?.into_iter().enumerate() {
        let ast = parse(need(v, "coproduct", k)?)?;
        let t = sym
            .tensor_expr(&ast)
            .map_err(|e| located(&format!("coproduct of {}", names[k]), e))?;
        coproduct.push(t);
    }
    let mut antipode = Vec::new();
    for (k, v) in block(&raw.antipode, "antipode", p)?.into_iter().enumerate() {
        let ast = parse(need(v, "antipode", k)?)?;
        antipode.push(
            sym.expr(&ast)
                .map_err(|e| located(&format!("antipode of {}", names[k]), e))?,
        );
    }
    let mut counit = Vec::new();
    for (k, v) in block(&raw.counit, "counit", p)?.into_iter().enumerate() {
        let s = match v {
            None => Scalar::zero(),
            Some(text) => {
                let mut ev = Evaluator::new(p, 0).with_params(params.to_vec());
                match ev.eval(parse(text)?)? {
                    Value::Scalar(s) => s,
                    _ => {
                        return Err(CliError::Load(format!(
                            "[counit]: value for `{}` is not a scalar",
                            names[k]
                        )))
                    }
                }
            }
        };
        counit.push(s);
    }
    let mut star = Vec::new();
    for (k, v) in block(&raw.star, "star", p)?.into_iter().enumerate() {
        star.push(match v {
            None => Expr::Gen(galilei_core::GeneratorId(k as u8)),
            Some(text) => sym
                .expr(&parse(text)?)
                .map_err(|e| located(&format!("star of {}", names[k]), e))?,
        });
    }
    Ok(Some(HopfSpec::new(
        &raw.name,
        p.clone(),
        coproduct,
        counit,
        antipode,
        star,
    )?))
}

pub fn load_str(text: &str) -> Result<SpecFile, CliError> {
    let raw: RawFile = toml::from_str(text).map_err(|e| CliError::Load(e.to_string()))?;
    let mut params = Vec::new();
    for name in &raw.parameters {
        let p = ParamSymbol::new(name)?;
        if ParamSymbol::BUILTIN.contains(&p) || raw.generators.contains(name) {
            return Err(CliError::Load(format!("parameter `{name}` clashes with a built-in name")));
        }
        params.push(p);
    }
    let presentation = build_presentation(&raw, &params)?;
    let hopf = build_hopf(&raw, &presentation, &params)?;
    Ok(SpecFile {
        presentation,
        hopf,
        params,
    })
}

pub fn load(path: &Path) -> Result<SpecFile, CliError> {
    let text = std::fs::read_to_string(path)?;
    load_str(&text)
}
