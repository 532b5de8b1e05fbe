//! Construction recipes for finite rings. Every suite instance and every
//! counterexample witness carries one, so a ring can be rebuilt exactly.

use std::fmt;

use serde::{Deserialize, Serialize};
use trivext_core::finmod::{free_module, residue_field_power, trivial_extension, TrivialExtension};
use trivext_core::finring::{make_product, make_quotient_poly, make_zmod};
use trivext_core::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Recipe {
    Zmod { n: i64 },
    /// `F_p[x]/(f)`, coefficients of `f` from the constant term up.
    Gfpoly { p: i64, f: Vec<i64> },
    Product { parts: Vec<Recipe> },
    Trivext { base: Box<Recipe>, fiber: Fiber },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Fiber {
    Free { rank: usize },
    ResidueFieldPower { rank: usize },
}

/// A built ring, with the trivial-extension data when there is one.
#[derive(Debug, Clone)]
pub struct Built {
    pub ring: Ring,
    pub ext: Option<TrivialExtension>,
}

impl Recipe {
    pub fn zmod(n: i64) -> Recipe {
        Recipe::Zmod { n }
    }

    pub fn poly(p: i64, f: &[i64]) -> Recipe {
        Recipe::Gfpoly { p, f: f.to_vec() }
    }

    /// `F_p[x]/(x^t)`.
    pub fn truncated(p: i64, t: usize) -> Recipe {
        let mut f = vec![0; t];
        f.push(1);
        Recipe::Gfpoly { p, f }
    }

    pub fn product(parts: Vec<Recipe>) -> Recipe {
        Recipe::Product { parts }
    }

    pub fn trivext(base: Recipe, fiber: Fiber) -> Recipe {
        Recipe::Trivext {
            base: Box::new(base),
            fiber,
        }
    }

    pub fn build(&self) -> anyhow::Result<Built> {
        Ok(match self {
            Recipe::Zmod { n } => Built {
                ring: make_zmod(*n)?,
                ext: None,
            },
            Recipe::Gfpoly { p, f } => Built {
                ring: make_quotient_poly(*p, f)?,
                ext: None,
            },
            Recipe::Product { parts } => {
                let rings = parts.iter().map(|r| Ok(r.build()?.ring)).collect::<anyhow::Result<Vec<_>>>()?;
                Built {
                    ring: make_product(&rings)?,
                    ext: None,
                }
            }
            Recipe::Trivext { base, fiber } => {
                let a = base.build()?.ring;
                let e = match fiber {
                    Fiber::Free { rank } => free_module(&a, *rank),
                    Fiber::ResidueFieldPower { rank } => residue_field_power(&a, *rank)?,
                };
                let t = trivial_extension(&a, &e)?;
                Built {
                    ring: t.ring.clone(),
                    ext: Some(t),
                }
            }
        })
    }
}

fn poly_text(f: &[i64]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in f.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
        terms.push(match i {
            0 => c.to_string(),
            1 => format!("{coef}x"),
            _ => format!("{coef}x^{i}"),
        });
    }
    terms.join("+")
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::Zmod { n } => write!(f, "Z/{n}"),
            Recipe::Gfpoly { p, f: poly } if poly.len() == 2 => write!(f, "F{p}"),
            Recipe::Gfpoly { p, f: poly } => write!(f, "F{p}[x]/({})", poly_text(poly)),
            Recipe::Product { parts } => {
                let s: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", s.join(" × "))
            }
            Recipe::Trivext { base, fiber } => match fiber {
                Fiber::Free { rank } => write!(f, "{base} ∝ ({base})^{rank}"),
                Fiber::ResidueFieldPower { rank } => write!(f, "{base} ∝ k^{rank}"),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_and_labels() {
        let r = Recipe::trivext(Recipe::zmod(4), Fiber::ResidueFieldPower { rank: 1 });
        let b = r.build().unwrap();
        assert_eq!(b.ring.size(), 8);
        assert!(b.ext.is_some());
        assert_eq!(r.to_string(), "Z/4 ∝ k^1");
        assert_eq!(Recipe::truncated(2, 2).to_string(), "F2[x]/(x^2)");
        assert_eq!(Recipe::poly(2, &[1, 1, 1]).to_string(), "F2[x]/(x^2+x+1)");
    }

    #[test]
    fn json_round_trip() {
        let r = Recipe::product(vec![Recipe::zmod(2), Recipe::truncated(3, 2)]);
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<Recipe>(&s).unwrap(), r);
    }
}
