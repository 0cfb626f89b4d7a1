//! Interval endpoints named by generating objects or attributes.
//!
//! Syntax: `ext={3}:int={e}`. Each endpoint is `ext=` (objects, closed to
//! `(A'', A')`) or `int=` (attributes, closed to `(B', B'')`), followed by a
//! braced comma list or a single name. The optional prefixes `bottom=` and
//! `top=` are accepted; `obj=` and `att=` are aliases of `ext=` and `int=`.

use std::fmt;
use std::str::FromStr;

use crate::context::FormalContext;
use crate::error::{Error, Result};
use crate::lattice::{Concept, ConceptLattice};
use crate::poset::Interval;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EndpointSpec {
    Objects(Vec<String>),
    Attributes(Vec<String>),
}

impl EndpointSpec {
    pub fn resolve(&self, ctx: &FormalContext) -> Result<Concept> {
        Ok(match self {
            EndpointSpec::Objects(names) => Concept::from_extent(ctx, &ctx.object_set(names)?),
            EndpointSpec::Attributes(names) => {
                Concept::from_intent(ctx, &ctx.attribute_set(names)?)
            }
        })
    }
}

impl fmt::Display for EndpointSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (tag, names) = match self {
            EndpointSpec::Objects(n) => ("ext", n),
            EndpointSpec::Attributes(n) => ("int", n),
        };
        write!(f, "{tag}={{{}}}", names.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalSpec {
    pub bottom: EndpointSpec,
    pub top: EndpointSpec,
}

impl IntervalSpec {
    pub fn new(bottom: EndpointSpec, top: EndpointSpec) -> Self {
        Self { bottom, top }
    }

    /// Both endpoints as concepts of `ctx`, checked to be ordered.
    pub fn resolve(&self, ctx: &FormalContext) -> Result<(Concept, Concept)> {
        let lo = self.bottom.resolve(ctx)?;
        let hi = self.top.resolve(ctx)?;
        if !lo.extent.is_subset(&hi.extent) {
            return Err(Error::IntervalSpec {
                spec: self.to_string(),
                reason: "bottom endpoint is not below top endpoint".into(),
            });
        }
        Ok((lo, hi))
    }

    pub fn resolve_in(&self, lat: &ConceptLattice) -> Result<Interval> {
        let (lo, hi) = self.resolve(lat.context())?;
        lat.interval_by_extents(&lo.extent, &hi.extent)
    }
}

impl fmt::Display for IntervalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.bottom, self.top)
    }
}

fn spec_err(spec: &str, reason: impl Into<String>) -> Error {
    Error::IntervalSpec {
        spec: spec.to_string(),
        reason: reason.into(),
    }
}

fn parse_endpoint(spec: &str, part: &str, role: &str) -> Result<EndpointSpec> {
    let part = part.trim();
    let part = part
        .strip_prefix(role)
        .and_then(|p| p.strip_prefix('='))
        .unwrap_or(part);
    let (tag, rest) = part
        .split_once('=')
        .ok_or_else(|| spec_err(spec, format!("endpoint `{part}` lacks `ext=` or `int=`")))?;
    let rest = rest.trim();
    let names: Vec<String> = match rest.strip_prefix('{') {
        Some(inner) => inner
            .strip_suffix('}')
            .ok_or_else(|| spec_err(spec, "unclosed `{`"))?
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(String::from)
            .collect(),
        None if rest.is_empty() => return Err(spec_err(spec, "empty endpoint")),
        None => vec![rest.to_string()],
    };
    match tag.trim() {
        "ext" | "obj" => Ok(EndpointSpec::Objects(names)),
        "int" | "att" => Ok(EndpointSpec::Attributes(names)),
        other => Err(spec_err(spec, format!("unknown endpoint kind `{other}`"))),
    }
}

impl FromStr for IntervalSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut depth = 0usize;
        let mut split = None;
        for (i, c) in s.char_indices() {
            match c {
                '{' => depth += 1,
                '}' => depth = depth.saturating_sub(1),
                ':' if depth == 0 => {
                    if split.is_some() {
                        return Err(spec_err(s, "more than one `:`"));
                    }
                    split = Some(i);
                }
                _ => {}
            }
        }
        let i = split.ok_or_else(|| spec_err(s, "expected `bottom:top`"))?;
        Ok(Self {
            bottom: parse_endpoint(s, &s[..i], "bottom")?,
            top: parse_endpoint(s, &s[i + 1..], "top")?,
        })
    }
}
