use std::fmt;
use std::sync::Arc;

use super::{AlgebraPresentation, CoreError, Poly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// One relation `Σ_r entries[r]·e_r` (left) or `Σ_r e_r·entries[r]` (right) of internal
/// degree `degree`; entry `r` is zero or homogeneous of degree `degree - a_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleRelation {
    pub degree: i32,
    pub entries: Vec<Poly>,
}

/// A graded module `⊕ A(-a_r) / (relations)`.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    algebra: Arc<AlgebraPresentation>,
    side: Side,
    names: Vec<String>,
    degrees: Vec<i32>,
    relations: Vec<ModuleRelation>,
}

impl ModulePresentation {
    pub fn new(
        algebra: Arc<AlgebraPresentation>,
        side: Side,
        generators: Vec<(String, i32)>,
        relations: Vec<ModuleRelation>,
    ) -> Result<ModulePresentation, CoreError> {
        let (names, degrees): (Vec<String>, Vec<i32>) = generators.into_iter().unzip();
        for (i, rel) in relations.iter().enumerate() {
            if rel.entries.len() != degrees.len() {
                return Err(CoreError::InhomogeneousModuleRelation {
                    index: i,
                    detail: format!("{} entries for {} generators", rel.entries.len(), degrees.len()),
                });
            }
            for (r, p) in rel.entries.iter().enumerate() {
                if let Some(d) = p.degree() {
                    if d as i32 != rel.degree - degrees[r] {
                        return Err(CoreError::InhomogeneousModuleRelation {
                            index: i,
                            detail: format!(
                                "entry {r} has degree {d}, expected {}",
                                rel.degree - degrees[r]
                            ),
                        });
                    }
                }
            }
        }
        Ok(ModulePresentation { algebra, side, names, degrees, relations })
    }

    pub fn algebra(&self) -> &Arc<AlgebraPresentation> {
        &self.algebra
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn gen_names(&self) -> &[String] {
        &self.names
    }

    pub fn gen_degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn relations(&self) -> &[ModuleRelation] {
        &self.relations
    }

    /// `M(ℓ)`: every degree decreases by `ℓ`.
    pub fn shifted(&self, ell: i32) -> ModulePresentation {
        ModulePresentation {
            algebra: self.algebra.clone(),
            side: self.side,
            names: self.names.clone(),
            degrees: self.degrees.iter().map(|d| d - ell).collect(),
            relations: self
                .relations
                .iter()
                .map(|r| ModuleRelation { degree: r.degree - ell, entries: r.entries.clone() })
                .collect(),
        }
    }

    /// A right module over `A` as a left module over `A^op`; left modules are returned as is.
    pub fn as_left(&self) -> ModulePresentation {
        match self.side {
            Side::Left => self.clone(),
            Side::Right => ModulePresentation {
                algebra: Arc::new(self.algebra.opposite()),
                side: Side::Left,
                names: self.names.clone(),
                degrees: self.degrees.clone(),
                relations: self
                    .relations
                    .iter()
                    .map(|r| ModuleRelation {
                        degree: r.degree,
                        entries: r.entries.iter().map(Poly::reversed).collect(),
                    })
                    .collect(),
            },
        }
    }

    /// Direct sum of two modules over the same algebra.
    pub fn direct_sum(&self, other: &ModulePresentation) -> ModulePresentation {
        assert!(Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra);
        let n1 = self.degrees.len();
        let n2 = other.degrees.len();
        let field = self.algebra.field();
        let mut relations = Vec::new();
        for r in &self.relations {
            let mut e = r.entries.clone();
            e.extend((0..n2).map(|_| Poly::zero(field)));
            relations.push(ModuleRelation { degree: r.degree, entries: e });
        }
        for r in &other.relations {
            let mut e: Vec<Poly> = (0..n1).map(|_| Poly::zero(field)).collect();
            e.extend(r.entries.iter().cloned());
            relations.push(ModuleRelation { degree: r.degree, entries: e });
        }
        let mut names = self.names.clone();
        names.extend(other.names.iter().map(|n| format!("{n}'")));
        let mut degrees = self.degrees.clone();
        degrees.extend_from_slice(&other.degrees);
        ModulePresentation { algebra: self.algebra.clone(), side: self.side, names, degrees, relations }
    }

    pub fn to_text(&self) -> String {
        let a = &self.algebra;
        let gens: Vec<String> =
            self.names.iter().zip(&self.degrees).map(|(n, d)| format!("{n}:{d}")).collect();
        let mut rels = Vec::new();
        for r in &self.relations {
            let mut parts = Vec::new();
            for (i, p) in r.entries.iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                let body = a.render_relation(p);
                parts.push(match self.side {
                    Side::Left => format!("({body})*{}", self.names[i]),
                    Side::Right => format!("{}*({body})", self.names[i]),
                });
            }
            rels.push(parts.join(" + "));
        }
        let mut s = format!("side {}\ngens {}\n", self.side, gens.join(" "));
        if !rels.is_empty() {
            s.push_str(&format!("rels {}\n", rels.join(", ")));
        }
        s
    }
}
