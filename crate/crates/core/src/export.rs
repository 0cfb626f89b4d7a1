//! JSON and DOT output, and lattice JSON input.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::context::{bitset, FormalContext};
use crate::error::{Error, Result};
use crate::interval::{FactorStructure, FactorWitness};
use crate::lattice::ConceptLattice;
use crate::poset::{LatticeCheck, Poset};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConceptJson {
    pub extent: Vec<String>,
    pub intent: Vec<String>,
}

/// Concept-list form: concepts by name lists plus cover pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub objects: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attributes: Option<Vec<String>>,
    pub concepts: Vec<ConceptJson>,
    pub covers: Vec<[usize; 2]>,
}

/// Element-list form: a lattice given by labels and cover pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderJson {
    pub elements: Vec<String>,
    pub covers: Vec<[usize; 2]>,
}

pub fn lattice_to_json(lat: &ConceptLattice) -> LatticeJson {
    let ctx = lat.context();
    LatticeJson {
        objects: Some(ctx.objects().to_vec()),
        attributes: Some(ctx.attributes().to_vec()),
        concepts: lat
            .concepts()
            .iter()
            .map(|c| ConceptJson {
                extent: ctx.object_names(&c.extent),
                intent: ctx.attribute_names(&c.intent),
            })
            .collect(),
        covers: lat.order().covers().into_iter().map(|(a, b)| [a, b]).collect(),
    }
}

pub fn lattice_to_json_string(lat: &ConceptLattice) -> String {
    serde_json::to_string_pretty(&lattice_to_json(lat)).expect("serializable") + "\n"
}

/// Reads either JSON form and returns a context whose concept lattice is the
/// described one: the incidence behind the concept list, or the generic
/// context of the element order.
pub fn context_from_json(text: &str) -> Result<FormalContext> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Json(e.to_string()))?;
    if value.get("elements").is_some() {
        let o: OrderJson = serde_json::from_value(value).map_err(|e| Error::Json(e.to_string()))?;
        let covers: Vec<(usize, usize)> = o.covers.iter().map(|c| (c[0], c[1])).collect();
        return Poset::from_covers(o.elements, &covers)?.generic_context();
    }
    let l: LatticeJson = serde_json::from_value(value).map_err(|e| Error::Json(e.to_string()))?;
    let collect = |given: &Option<Vec<String>>, pick: &dyn Fn(&ConceptJson) -> &Vec<String>| {
        given.clone().unwrap_or_else(|| {
            let mut names: Vec<String> = Vec::new();
            for c in &l.concepts {
                for n in pick(c) {
                    if !names.contains(n) {
                        names.push(n.clone());
                    }
                }
            }
            names
        })
    };
    let objects = collect(&l.objects, &|c| &c.extent);
    let attributes = collect(&l.attributes, &|c| &c.intent);
    let mut pairs = Vec::new();
    let pos = |names: &[String], n: &str| names.iter().position(|x| x == n);
    for c in &l.concepts {
        for g in &c.extent {
            let gi = pos(&objects, g).ok_or_else(|| Error::UnknownObject(g.clone()))?;
            for m in &c.intent {
                let mi = pos(&attributes, m).ok_or_else(|| Error::UnknownAttribute(m.clone()))?;
                pairs.push((gi, mi));
            }
        }
    }
    let ctx = FormalContext::new(objects, attributes, pairs)?;
    let lat = ConceptLattice::new(ctx.clone());
    let mut listed: Vec<_> = l
        .concepts
        .iter()
        .map(|c| ctx.object_set(&c.extent).map(|e| bitset(ctx.n_objects(), e.ones())))
        .collect::<Result<_>>()?;
    listed.sort();
    let mut actual: Vec<_> = lat.concepts().iter().map(|c| c.extent.clone()).collect();
    actual.sort();
    if listed != actual {
        return Err(Error::Json(
            "concept list does not match the concepts of its incidence".into(),
        ));
    }
    Ok(ctx)
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn ranks(out: &mut String, heights: &[usize]) {
    let max = heights.iter().copied().max().unwrap_or(0);
    for h in 0..=max {
        let nodes: Vec<String> = (0..heights.len())
            .filter(|&i| heights[i] == h)
            .map(|i| format!("n{i}"))
            .collect();
        if !nodes.is_empty() {
            let _ = writeln!(out, "  {{ rank=same; {}; }}", nodes.join("; "));
        }
    }
}

/// Hasse diagram with reduced labelling: attributes above the node name,
/// objects below.
pub fn lattice_to_dot(lat: &ConceptLattice) -> String {
    let ctx = lat.context();
    let mut out = String::from("digraph lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for i in 0..lat.len() {
        let attrs: Vec<&str> = lat.attribute_labels(i).iter().map(|&m| ctx.attributes()[m].as_str()).collect();
        let objs: Vec<&str> = lat.object_labels(i).iter().map(|&g| ctx.objects()[g].as_str()).collect();
        let label = format!("{}\n{}", attrs.join(","), objs.join(","));
        let _ = writeln!(out, "  n{i} [label={}];", quote(&label));
    }
    ranks(&mut out, &lat.order().heights());
    for (a, b) in lat.order().covers() {
        let _ = writeln!(out, "  n{a} -> n{b};");
    }
    out.push_str("}\n");
    out
}

/// Factor diagram. For a partial order the covers are drawn; for a preorder
/// every strict pair is drawn and mutual pairs are dashed.
pub fn factor_to_dot(f: &FactorStructure) -> String {
    let mut out = String::from("digraph factor {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, l) in f.labels.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label={}];", quote(l));
    }
    match f.to_poset() {
        Ok(p) => {
            ranks(&mut out, &p.heights());
            for (a, b) in p.covers() {
                let _ = writeln!(out, "  n{a} -> n{b};");
            }
        }
        Err(_) => {
            for (a, b) in f.strict_pairs() {
                let style = if f.leq(b, a) { " [style=dashed]" } else { "" };
                let _ = writeln!(out, "  n{a} -> n{b}{style};");
            }
        }
    }
    out.push_str("}\n");
    out
}

fn witness_json(f: &FactorStructure) -> Value {
    match &f.witness {
        None => Value::Null,
        Some(FactorWitness::PenroseCrown(c)) => json!({ "penrose_crown": c }),
        Some(FactorWitness::NotALattice(check)) => {
            let (kind, a, b, bounds) = match check {
                LatticeCheck::NoJoin { a, b, bounds } => ("no-join", a, b, bounds),
                LatticeCheck::NoMeet { a, b, bounds } => ("no-meet", a, b, bounds),
                LatticeCheck::Lattice => return Value::Null,
            };
            json!({
                "not_a_lattice": kind,
                "pair": [f.labels[*a], f.labels[*b]],
                "bounds": bounds.iter().map(|&x| f.labels[x].clone()).collect::<Vec<_>>(),
            })
        }
    }
}

/// Classes with their members, strict pairs of `≤θ`, and the implosion map.
pub fn factor_to_json(f: &FactorStructure, order: &Poset) -> Value {
    let classes: Vec<Value> = f
        .classes
        .iter()
        .zip(&f.labels)
        .map(|(m, l)| {
            json!({
                "label": l,
                "members": m.iter().map(|&x| order.label(x)).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "kind": f.kind.as_str(),
        "classes": classes,
        "relation": f.strict_pairs().iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
        "class_map": f.class_of,
        "witness": witness_json(f),
    })
}
