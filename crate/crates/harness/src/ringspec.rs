//! Ring-spec files: TOML documents naming rings, ideals and modules.
//!
//! ```toml
//! version = 1
//!
//! [rings.r]
//! kind = "trivext"
//! base = { kind = "zmod", n = 4 }
//! fiber = { kind = "residue_field_power", rank = 1 }
//!
//! [ideals.m]
//! ring = "r"
//! generators = [[2, 0], [0, 1]]
//!
//! [modules.quot]
//! kind = "quotient"
//! ideal = "m"
//! ```
//!
//! Finite-ring generators are coefficient vectors, either as integer arrays
//! or as strings `"(2, 0)"`; `zq` and `uze` generators are strings in the
//! forms of [`crate::symtext`].

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use trivext_core::finmod::free_module;
use trivext_core::resolve::cyclic_quotient;
use trivext_core::symtriv::uze::UZEElement;
use trivext_core::symtriv::zq::ZQElement;
use trivext_core::{Ideal, Submodule};

use crate::recipe::{Built, Fiber, Recipe};
use crate::symtext::{parse_coeffs, parse_uze, parse_zq};

pub const SPEC_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub version: u32,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub rings: BTreeMap<String, RingDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ideals: BTreeMap<String, IdealDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, ModuleDef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RingDef {
    Zmod { n: i64 },
    Gfpoly { p: i64, f: Vec<i64> },
    Product { parts: Vec<Recipe> },
    Trivext { base: Recipe, fiber: Fiber },
    /// `Z ∝ Q`.
    Zq,
    /// `Z ×' ⊕F_2`.
    Uze,
}

impl RingDef {
    pub fn recipe(&self) -> Option<Recipe> {
        Some(match self {
            RingDef::Zmod { n } => Recipe::zmod(*n),
            RingDef::Gfpoly { p, f } => Recipe::poly(*p, f),
            RingDef::Product { parts } => Recipe::product(parts.clone()),
            RingDef::Trivext { base, fiber } => Recipe::trivext(base.clone(), *fiber),
            RingDef::Zq | RingDef::Uze => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GenDef {
    Coeffs(Vec<i64>),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealDef {
    pub ring: String,
    pub generators: Vec<GenDef>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleDef {
    /// The ideal as a submodule of `R`.
    Ideal { ideal: String },
    /// `R/I`.
    Quotient { ideal: String },
    Free { ring: String, rank: usize },
}

/// A parse or resolution error, located in the source text when possible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecError {
    pub location: Option<String>,
    pub message: String,
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.location {
            Some(loc) => write!(f, "{loc}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for SpecError {}

#[derive(Debug, Clone)]
pub enum RingObj {
    Finite { recipe: Recipe, built: Built },
    Zq,
    Uze,
}

impl RingObj {
    pub fn label(&self) -> String {
        match self {
            RingObj::Finite { recipe, .. } => recipe.to_string(),
            RingObj::Zq => "Z ∝ Q".into(),
            RingObj::Uze => "Z ×' ⊕F2".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub enum IdealObj {
    Finite(Ideal),
    Zq(Vec<ZQElement>),
    Uze(Vec<UZEElement>),
}

impl RingSpec {
    /// Parse and resolve every name; errors carry `line N` or the TOML
    /// parser's own position.
    pub fn parse(text: &str) -> Result<RingSpec, SpecError> {
        let spec: RingSpec = toml::from_str(text).map_err(|e| SpecError {
            location: e.span().map(|s| line_col(text, s.start)),
            message: e.message().to_string(),
        })?;
        if spec.version != SPEC_VERSION {
            return Err(SpecError {
                location: header_line(text, "version"),
                message: format!("unsupported spec version {} (expected {SPEC_VERSION})", spec.version),
            });
        }
        spec.validate().map_err(|(path, message)| SpecError {
            location: header_line(text, &path).or(Some(path)),
            message,
        })?;
        Ok(spec)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("spec serializes")
    }

    fn validate(&self) -> Result<(), (String, String)> {
        for (name, def) in &self.rings {
            let path = format!("rings.{name}");
            self.ring(name).map_err(|e| (path.clone(), format!("{e:#}")))?;
            if let RingDef::Product { parts } = def {
                if parts.is_empty() {
                    return Err((path, "a product needs at least one part".into()));
                }
            }
        }
        for name in self.ideals.keys() {
            self.ideal(name).map_err(|e| (format!("ideals.{name}"), format!("{e:#}")))?;
        }
        for name in self.modules.keys() {
            self.module(name).map_err(|e| (format!("modules.{name}"), format!("{e:#}")))?;
        }
        Ok(())
    }

    pub fn ring(&self, name: &str) -> anyhow::Result<RingObj> {
        let def = self.rings.get(name).ok_or_else(|| anyhow::anyhow!("unknown ring `{name}`"))?;
        Ok(match def.recipe() {
            Some(recipe) => RingObj::Finite {
                built: recipe.build()?,
                recipe,
            },
            None if *def == RingDef::Zq => RingObj::Zq,
            None => RingObj::Uze,
        })
    }

    pub fn ideal(&self, name: &str) -> anyhow::Result<(RingObj, IdealObj)> {
        let def = self.ideals.get(name).ok_or_else(|| anyhow::anyhow!("unknown ideal `{name}`"))?;
        let ring = self.ring(&def.ring)?;
        let ideal = ideal_from_gens(&ring, &def.generators)?;
        Ok((ring, ideal))
    }

    pub fn module(&self, name: &str) -> anyhow::Result<Submodule> {
        let def = self.modules.get(name).ok_or_else(|| anyhow::anyhow!("unknown module `{name}`"))?;
        let finite_ideal = |iname: &str| -> anyhow::Result<Ideal> {
            match self.ideal(iname)?.1 {
                IdealObj::Finite(i) => Ok(i),
                _ => anyhow::bail!("ideal `{iname}` is not over a finite ring"),
            }
        };
        Ok(match def {
            ModuleDef::Ideal { ideal } => finite_ideal(ideal)?.as_submodule(),
            ModuleDef::Quotient { ideal } => cyclic_quotient(&finite_ideal(ideal)?)?,
            ModuleDef::Free { ring, rank } => match self.ring(ring)? {
                RingObj::Finite { built, .. } => Submodule::whole(&free_module(&built.ring, *rank)),
                _ => anyhow::bail!("ring `{ring}` is not finite"),
            },
        })
    }

    /// Recipes of the finite rings, in name order.
    pub fn finite_recipes(&self) -> Vec<Recipe> {
        self.rings.values().filter_map(RingDef::recipe).collect()
    }
}

fn gen_text(g: &GenDef) -> String {
    match g {
        GenDef::Coeffs(v) => crate::symtext::format_coeffs(v),
        GenDef::Text(s) => s.clone(),
    }
}

/// One element of `ring` from text.
pub fn parse_element_coeffs(ring: &RingObj, s: &str) -> anyhow::Result<Vec<i64>> {
    match ring {
        RingObj::Finite { built, .. } => {
            let v = parse_coeffs(s)?;
            anyhow::ensure!(
                v.len() == built.ring.rank(),
                "`{s}` has {} coefficients, the ring needs {}",
                v.len(),
                built.ring.rank()
            );
            Ok(built.ring.group().reduced(v))
        }
        _ => anyhow::bail!("not a finite ring"),
    }
}

pub fn ideal_from_gens(ring: &RingObj, gens: &[GenDef]) -> anyhow::Result<IdealObj> {
    let texts: Vec<String> = gens.iter().map(gen_text).collect();
    ideal_from_texts(ring, &texts)
}

pub fn ideal_from_texts(ring: &RingObj, texts: &[String]) -> anyhow::Result<IdealObj> {
    Ok(match ring {
        RingObj::Finite { built, .. } => {
            let gens = texts
                .iter()
                .map(|s| parse_element_coeffs(ring, s))
                .collect::<anyhow::Result<Vec<_>>>()?;
            IdealObj::Finite(Ideal::generated(&built.ring, gens)?)
        }
        RingObj::Zq => IdealObj::Zq(texts.iter().map(|s| parse_zq(s)).collect::<anyhow::Result<_>>()?),
        RingObj::Uze => IdealObj::Uze(texts.iter().map(|s| parse_uze(s)).collect::<anyhow::Result<_>>()?),
    })
}

fn line_col(text: &str, offset: usize) -> String {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    format!("line {line}, column {col}")
}

/// `line N` of the table header `[path]` or of the key `path = ...`.
fn header_line(text: &str, path: &str) -> Option<String> {
    let header = format!("[{path}]");
    text.lines()
        .position(|l| {
            let t = l.trim();
            t == header || t.split('=').next().is_some_and(|k| k.trim() == path)
        })
        .map(|i| format!("line {}", i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
version = 1

[rings.r]
kind = "trivext"
base = { kind = "zmod", n = 4 }
fiber = { kind = "residue_field_power", rank = 1 }

[rings.q]
kind = "zq"

[ideals.m]
ring = "r"
generators = [[2, 0], "(0, 1)"]

[ideals.two]
ring = "q"
generators = ["(2, 0)"]

[modules.quot]
kind = "quotient"
ideal = "m"
"#;

    #[test]
    fn parse_print_round_trip() {
        let s = RingSpec::parse(SAMPLE).unwrap();
        let again = RingSpec::parse(&s.to_toml()).unwrap();
        assert_eq!(again, s);
        match s.ideal("m").unwrap().1 {
            IdealObj::Finite(i) => assert_eq!(i.order(), 4),
            _ => panic!("finite ideal expected"),
        }
        assert_eq!(s.module("quot").unwrap().order(), 2);
        assert_eq!(s.finite_recipes().len(), 1);
    }

    #[test]
    fn unknown_keys_are_rejected_with_a_location() {
        let bad = SAMPLE.replace("n = 4", "n = 4, colour = 1");
        let e = RingSpec::parse(&bad).unwrap_err();
        assert!(e.location.as_deref().unwrap().starts_with("line 4"), "{e}");
        assert!(e.message.contains("colour"), "{e}");
        let e = RingSpec::parse(&format!("{SAMPLE}\nextra = 1\n")).unwrap_err();
        assert!(e.message.contains("extra"), "{e}");
    }

    #[test]
    fn unresolved_names_point_at_their_table() {
        let bad = SAMPLE.replace("ring = \"q\"", "ring = \"nope\"");
        let e = RingSpec::parse(&bad).unwrap_err();
        assert_eq!(e.location.as_deref(), Some("line 16"));
        assert!(e.message.contains("nope"));
        let bad = SAMPLE.replace("[[2, 0], \"(0, 1)\"]", "[[2, 0, 1]]");
        assert!(RingSpec::parse(&bad).unwrap_err().message.contains("coefficients"));
    }

    #[test]
    fn version_is_checked() {
        let e = RingSpec::parse("version = 2\n").unwrap_err();
        assert_eq!(e.location.as_deref(), Some("line 1"));
    }
}
