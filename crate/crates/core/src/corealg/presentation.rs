use std::fmt::Write;

use serde::Serialize;

use super::{CoreError, Field, MonomialOrder, Poly};

/// A finite presentation `k<x_1..x_n>/(relations)` of a connected graded algebra.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraPresentation {
    field: Field,
    names: Vec<String>,
    weights: Vec<u32>,
    relations: Vec<Poly>,
    order: MonomialOrder,
    label: String,
}

#[derive(Serialize)]
struct GeneratorRecord<'a> {
    name: &'a str,
    degree: u32,
}

impl AlgebraPresentation {
    /// Validates and normalizes: generator degrees must be positive, relations nonzero and
    /// homogeneous; relations are made monic under `order`.
    pub fn new(
        field: Field,
        generators: Vec<(String, u32)>,
        relations: Vec<Poly>,
        order: MonomialOrder,
        label: impl Into<String>,
    ) -> Result<AlgebraPresentation, CoreError> {
        let mut names = Vec::new();
        let mut weights = Vec::new();
        for (name, deg) in generators {
            if deg == 0 {
                return Err(CoreError::BadGeneratorDegree { name, degree: 0 });
            }
            if names.contains(&name) {
                return Err(CoreError::DuplicateGenerator(name));
            }
            names.push(name);
            weights.push(deg);
        }
        assert_eq!(order.num_gens(), names.len(), "order does not match generator count");
        let mut rels = Vec::with_capacity(relations.len());
        for (i, r) in relations.into_iter().enumerate() {
            if r.field() != field {
                return Err(CoreError::FieldMismatch(field, r.field()));
            }
            if r.is_zero() {
                return Err(CoreError::ZeroRelation(i));
            }
            rels.push(r.monic(&order));
        }
        Ok(AlgebraPresentation { field, names, weights, relations: rels, order, label: label.into() })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn num_gens(&self) -> usize {
        self.names.len()
    }

    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn gen_index(&self, name: &str) -> Option<u16> {
        self.names.iter().position(|n| n == name).map(|i| i as u16)
    }

    pub fn max_gen_degree(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(1)
    }

    pub fn min_gen_degree(&self) -> u32 {
        self.weights.iter().copied().min().unwrap_or(1)
    }

    pub fn max_relation_degree(&self) -> u32 {
        self.relations.iter().filter_map(|r| r.degree()).max().unwrap_or(0)
    }

    /// The same generators with every relation word reversed: a presentation of `A^op`.
    pub fn opposite(&self) -> AlgebraPresentation {
        AlgebraPresentation {
            field: self.field,
            names: self.names.clone(),
            weights: self.weights.clone(),
            relations: self.relations.iter().map(|r| r.reversed().monic(&self.order)).collect(),
            order: self.order.clone(),
            label: format!("{}^op", self.label),
        }
    }

    /// Adds relations, keeping generators and order.
    pub fn with_extra_relations(&self, extra: &[Poly], label: impl Into<String>) -> Result<Self, CoreError> {
        let mut rels = self.relations.clone();
        rels.extend(extra.iter().cloned());
        AlgebraPresentation::new(
            self.field,
            self.names.iter().cloned().zip(self.weights.iter().copied()).collect(),
            rels,
            self.order.clone(),
            label,
        )
    }

    pub fn render_relation(&self, p: &Poly) -> String {
        p.render(&self.names, &self.order)
    }

    /// Text in the presentation file grammar; parsing it gives back an equal presentation.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        if !self.label.is_empty() {
            let _ = writeln!(s, "label {}", self.label);
        }
        let _ = writeln!(s, "field {}", self.field);
        let gens: Vec<String> =
            self.names.iter().zip(&self.weights).map(|(n, w)| format!("{n}:{w}")).collect();
        let _ = writeln!(s, "gens {}", gens.join(" "));
        let prec: Vec<&str> =
            self.order.precedence().iter().map(|&g| self.names[g as usize].as_str()).collect();
        let _ = writeln!(s, "order {}", prec.join(" "));
        if !self.relations.is_empty() {
            let rels: Vec<String> = self.relations.iter().map(|r| self.render_relation(r)).collect();
            let _ = writeln!(s, "rels {}", rels.join(", "));
        }
        s
    }

    /// Canonical text without the label; used for content addressing.
    pub fn canonical_text(&self) -> String {
        self.clone().with_label("").to_text()
    }

    pub fn generator_records(&self) -> serde_json::Value {
        let v: Vec<GeneratorRecord> = self
            .names
            .iter()
            .zip(&self.weights)
            .map(|(n, &d)| GeneratorRecord { name: n, degree: d })
            .collect();
        serde_json::to_value(v).unwrap()
    }
}
