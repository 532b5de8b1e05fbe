//! Instance suites: deterministic enumerations of finite rings grouped into
//! families, plus the sampling parameters used by every check.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use trivext_core::finmod::TrivialExtension;
use trivext_core::finring::local_maximal_ideal;
use trivext_core::idealops::product;
use trivext_core::Ring;

use crate::recipe::{Fiber, Recipe};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// `Z/p^k`.
    Zmod,
    /// `F_p[x]/(x^t)`, `t >= 2`.
    Truncated,
    /// Products of local rings.
    Products,
    /// `A ∝ (A/M)^r` with `A` local.
    Mezero,
    /// Local rings whose maximal ideal squares to zero.
    M2zero,
}

impl Family {
    pub const ALL: [Family; 5] = [Family::Zmod, Family::Truncated, Family::Products, Family::Mezero, Family::M2zero];

    pub fn name(self) -> &'static str {
        match self {
            Family::Zmod => "zmod",
            Family::Truncated => "truncated",
            Family::Products => "products",
            Family::Mezero => "mezero",
            Family::M2zero => "m2zero",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = anyhow::Error;

    fn from_str(s: &str) -> anyhow::Result<Family> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| anyhow::anyhow!("unknown family `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyBound {
    pub family: Family,
    /// Largest ring size admitted.
    pub bound: u128,
}

/// Everything that shapes a run besides the seed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Config {
    pub families: Vec<FamilyBound>,
    /// Membership samples per symbolic object.
    pub samples: usize,
    /// Random generator lists for the `Z ∝ Q` ideal checks.
    pub zq_lists: usize,
    /// Random submodules of `R^1..R^3` over `Z ∝ Q`.
    pub submodules: usize,
    /// Integer parts and numerators are drawn from `[-coeff_bound, coeff_bound]`.
    pub coeff_bound: i64,
    pub den_bound: i64,
    /// Largest support index for `Z ×' ⊕F_2` samples.
    pub uze_support: u32,
    /// Rings up to this size get exhaustive axiom checks.
    pub exhaustive_limit: u128,
    pub axiom_samples: usize,
    pub pd_bound: usize,
    /// Cap on ideals (or ideal pairs) sampled per ring by the costlier checks.
    pub ideals_per_ring: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config::named("default").expect("default suite")
    }
}

impl Config {
    pub fn named(name: &str) -> anyhow::Result<Config> {
        let bounds: [u128; 5] = match name {
            "default" => [256, 256, 36, 256, 256],
            "small" => [16, 16, 16, 32, 16],
            _ => anyhow::bail!("unknown suite `{name}` (expected `default` or `small`)"),
        };
        let small = name == "small";
        Ok(Config {
            families: Family::ALL
                .into_iter()
                .zip(bounds)
                .map(|(family, bound)| FamilyBound { family, bound })
                .collect(),
            samples: if small { 200 } else { 1000 },
            zq_lists: if small { 20 } else { 100 },
            submodules: if small { 40 } else { 200 },
            coeff_bound: 12,
            den_bound: 12,
            uze_support: 8,
            exhaustive_limit: 256,
            axiom_samples: 10_000,
            pd_bound: 4,
            ideals_per_ring: 64,
        })
    }
}

#[derive(Debug, Clone)]
pub struct Instance {
    pub recipe: Recipe,
    pub label: String,
    pub ring: Ring,
    pub ext: Option<TrivialExtension>,
    pub families: Vec<Family>,
}

impl Instance {
    pub fn new(recipe: Recipe) -> anyhow::Result<Instance> {
        let built = recipe.build()?;
        Ok(Instance {
            label: recipe.to_string(),
            recipe,
            ring: built.ring,
            ext: built.ext,
            families: Vec::new(),
        })
    }

    pub fn in_family(&self, f: Family) -> bool {
        self.families.contains(&f)
    }

    pub fn size(&self) -> u128 {
        self.ring.size()
    }
}

#[derive(Debug, Clone)]
pub struct Suite {
    pub instances: Vec<Instance>,
}

impl Suite {
    pub fn generate(config: &Config) -> anyhow::Result<Suite> {
        let mut order: Vec<Recipe> = Vec::new();
        let mut tags: BTreeMap<Recipe, Vec<Family>> = BTreeMap::new();
        for fb in &config.families {
            let mut members = family_members(fb.family, fb.bound);
            members.sort();
            for (_, r) in members {
                let entry = tags.entry(r.clone()).or_default();
                if entry.is_empty() {
                    order.push(r);
                }
                if !entry.contains(&fb.family) {
                    entry.push(fb.family);
                }
            }
        }
        let instances = order
            .into_iter()
            .map(|r| {
                let mut inst = Instance::new(r.clone())?;
                inst.families = tags.remove(&r).unwrap_or_default();
                Ok(inst)
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        Ok(Suite { instances })
    }

    /// A suite of given rings, each placed in every family whose hypotheses
    /// it meets.
    pub fn from_recipes(recipes: &[Recipe]) -> anyhow::Result<Suite> {
        let instances = recipes
            .iter()
            .map(|r| {
                let mut inst = Instance::new(r.clone())?;
                inst.families = classify(&inst)?;
                Ok(inst)
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        Ok(Suite { instances })
    }

    pub fn of_family(&self, f: Family) -> impl Iterator<Item = &Instance> {
        self.instances.iter().filter(move |i| i.in_family(f))
    }
}

fn is_field(ring: &Ring) -> anyhow::Result<bool> {
    Ok(ring.is_local()? && local_maximal_ideal(ring)?.is_zero())
}

/// Families an arbitrary recipe belongs to, decided from the built ring.
pub fn classify(inst: &Instance) -> anyhow::Result<Vec<Family>> {
    let ring = &inst.ring;
    let local = ring.is_local()?;
    let mut out = Vec::new();
    match &inst.recipe {
        Recipe::Zmod { .. } if local => out.push(Family::Zmod),
        Recipe::Gfpoly { f, .. } if f.len() >= 3 && f[..f.len() - 1].iter().all(|&c| c == 0) && f[f.len() - 1] == 1 => {
            out.push(Family::Truncated)
        }
        Recipe::Product { parts } if parts.len() >= 2 => {
            let mut all_local = true;
            for p in parts {
                all_local &= p.build()?.ring.is_local()?;
            }
            if all_local {
                out.push(Family::Products);
            }
        }
        Recipe::Trivext { base, fiber } => {
            let a = base.build()?.ring;
            let me_zero = match fiber {
                Fiber::ResidueFieldPower { .. } => a.is_local()?,
                Fiber::Free { .. } => is_field(&a)?,
            };
            if me_zero {
                out.push(Family::Mezero);
            }
        }
        _ => {}
    }
    if local {
        let m = local_maximal_ideal(ring)?;
        if !m.is_zero() && product(&m, &m)?.is_zero() {
            out.push(Family::M2zero);
        }
    }
    Ok(out)
}

const PRIMES: [i64; 6] = [2, 3, 5, 7, 11, 13];

fn pow(p: i64, k: u32) -> u128 {
    (p as u128).pow(k)
}

/// Finite fields by recipe, with their sizes.
fn fields() -> Vec<(u128, Recipe)> {
    vec![
        (2, Recipe::zmod(2)),
        (3, Recipe::zmod(3)),
        (4, Recipe::poly(2, &[1, 1, 1])),
        (5, Recipe::zmod(5)),
        (7, Recipe::zmod(7)),
        (8, Recipe::poly(2, &[1, 1, 0, 1])),
        (9, Recipe::poly(3, &[1, 0, 1])),
        (11, Recipe::zmod(11)),
        (13, Recipe::zmod(13)),
    ]
}

/// Local rings as (size, residue field size, recipe).
fn locals() -> Vec<(u128, u128, Recipe)> {
    vec![
        (2, 2, Recipe::zmod(2)),
        (3, 3, Recipe::zmod(3)),
        (4, 2, Recipe::zmod(4)),
        (4, 2, Recipe::truncated(2, 2)),
        (4, 4, Recipe::poly(2, &[1, 1, 1])),
        (5, 5, Recipe::zmod(5)),
        (7, 7, Recipe::zmod(7)),
        (8, 2, Recipe::zmod(8)),
        (8, 2, Recipe::truncated(2, 3)),
        (9, 3, Recipe::zmod(9)),
        (9, 3, Recipe::truncated(3, 2)),
        (25, 5, Recipe::zmod(25)),
        (27, 3, Recipe::zmod(27)),
    ]
}

fn family_members(family: Family, bound: u128) -> Vec<(u128, Recipe)> {
    let mut out = Vec::new();
    match family {
        Family::Zmod => {
            for p in PRIMES {
                for k in 1.. {
                    let n = pow(p, k);
                    if n > bound {
                        break;
                    }
                    out.push((n, Recipe::zmod(n as i64)));
                }
            }
        }
        Family::Truncated => {
            for p in PRIMES {
                for t in 2.. {
                    let n = pow(p, t);
                    if n > bound {
                        break;
                    }
                    out.push((n, Recipe::truncated(p, t as usize)));
                }
            }
        }
        Family::Products => {
            let ls: Vec<(u128, Recipe)> = locals()
                .into_iter()
                .filter(|(n, _, _)| *n <= 9)
                .map(|(n, _, r)| (n, r))
                .collect();
            for (i, (n1, r1)) in ls.iter().enumerate() {
                for (n2, r2) in &ls[i..] {
                    if n1 * n2 <= bound {
                        out.push((n1 * n2, Recipe::product(vec![r1.clone(), r2.clone()])));
                    }
                }
            }
            if bound >= 8 {
                out.push((8, Recipe::product(vec![Recipe::zmod(2); 3])));
            }
        }
        Family::Mezero => {
            for (n, q, a) in locals() {
                for r in 1..=3u32 {
                    let size = n * q.pow(r);
                    if size <= bound {
                        out.push((size, Recipe::trivext(a.clone(), Fiber::ResidueFieldPower { rank: r as usize })));
                    }
                }
            }
        }
        Family::M2zero => {
            for p in PRIMES {
                let n = pow(p, 2);
                if n <= bound {
                    out.push((n, Recipe::zmod(n as i64)));
                    out.push((n, Recipe::truncated(p, 2)));
                }
            }
            for (q, f) in fields() {
                for r in 1..=3u32 {
                    let size = q.pow(r + 1);
                    if size <= bound {
                        out.push((size, Recipe::trivext(f.clone(), Fiber::Free { rank: r as usize })));
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(suite: &Suite, f: Family) -> Vec<String> {
        suite.of_family(f).map(|i| i.label.clone()).collect()
    }

    #[test]
    fn family_bounds_match_examples() {
        let mut c = Config::named("small").unwrap();
        c.families = vec![
            FamilyBound { family: Family::M2zero, bound: 16 },
            FamilyBound { family: Family::Mezero, bound: 64 },
            FamilyBound { family: Family::Products, bound: 36 },
        ];
        let s = Suite::generate(&c).unwrap();
        let m2 = labels(&s, Family::M2zero);
        assert!(m2.contains(&"Z/4".to_string()));
        assert!(m2.contains(&"F2[x]/(x^2)".to_string()));
        let me = labels(&s, Family::Mezero);
        assert!(me.contains(&"Z/4 ∝ k^1".to_string()));
        assert!(me.contains(&"F2[x]/(x^2) ∝ k^2".to_string()));
        assert!(labels(&s, Family::Products).contains(&"Z/2 × Z/3".to_string()));
    }

    #[test]
    fn generated_families_are_classified() {
        let s = Suite::generate(&Config::named("small").unwrap()).unwrap();
        for inst in &s.instances {
            let got = classify(inst).unwrap();
            for f in &inst.families {
                assert!(got.contains(f), "{} not classified as {f}", inst.label);
            }
        }
    }

    #[test]
    fn shared_rings_are_merged() {
        let s = Suite::generate(&Config::named("small").unwrap()).unwrap();
        let z4: Vec<&Instance> = s.instances.iter().filter(|i| i.label == "Z/4").collect();
        assert_eq!(z4.len(), 1);
        assert_eq!(z4[0].families, vec![Family::Zmod, Family::M2zero]);
    }
}
