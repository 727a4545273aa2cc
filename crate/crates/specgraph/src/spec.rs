//! The `name:params` mini-grammar for graph families.
//!
//! ```text
//! cycle:5   path:4   complete:3   star:6   bipartite:2,3   kmm-e:4
//! multipart:1,2,1,1 [--base path:4]   corona --base star:5
//! ```
//!
//! Parameters may also follow the name as a separate argument
//! (`multipart 1,2,1,1`).

use std::fmt;

use specgraph_core::constructions::{
    corona, corona_inverse_closed_form, multipartitioned_expand, pinv_multipartitioned, ConstructionError, Family,
    PartitionSpec,
};
use specgraph_core::{Graph, RationalMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecError {
    Syntax(String),
    Construction(ConstructionError),
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::Syntax(msg) => f.write_str(msg),
            SpecError::Construction(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for SpecError {}

impl From<ConstructionError> for SpecError {
    fn from(e: ConstructionError) -> Self {
        SpecError::Construction(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSpec {
    Family(Family),
    /// Blow-up of an explicit base graph.
    Multipartitioned(PartitionSpec),
    /// Corona of the given base graph.
    Corona(Graph),
}

fn canonical_name(name: &str) -> Option<&'static str> {
    Some(match name {
        "cycle" => "cycle",
        "path" => "path",
        "complete" => "complete",
        "star" => "star",
        "bipartite" | "complete_bipartite" => "complete_bipartite",
        "multipart" | "multipartite" | "complete_multipartite" => "complete_multipartite",
        "kmm-e" | "complete_bipartite_minus_edge" => "complete_bipartite_minus_edge",
        "corona" => "corona",
        _ => return None,
    })
}

fn parse_params(text: &str) -> Result<Vec<usize>, SpecError> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| SpecError::Syntax(format!("invalid parameter `{p}`"))))
        .collect()
}

impl GraphSpec {
    /// Parses `spec` (optionally `name:params`), with `params` given
    /// separately and an optional base spec for `multipart` and `corona`.
    pub fn parse(spec: &str, params: Option<&str>, base: Option<&str>) -> Result<Self, SpecError> {
        let (name, inline) = match spec.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (spec, None),
        };
        let param_text = match (inline, params) {
            (Some(_), Some(_)) => return Err(SpecError::Syntax("parameters given twice".into())),
            (Some(p), None) | (None, Some(p)) => p,
            (None, None) => "",
        };
        let params = parse_params(param_text)?;
        let family = canonical_name(name.trim()).ok_or_else(|| SpecError::Syntax(format!("unknown family `{name}`")))?;
        let base_graph = base.map(|b| GraphSpec::parse(b, None, None)?.graph()).transpose()?;

        match (family, base_graph) {
            ("corona", Some(b)) => {
                if !params.is_empty() {
                    return Err(SpecError::Syntax("corona takes no parameters".into()));
                }
                Ok(GraphSpec::Corona(b))
            }
            ("corona", None) => Err(SpecError::Syntax("corona needs --base".into())),
            ("complete_multipartite", Some(b)) => Ok(GraphSpec::Multipartitioned(PartitionSpec::new(params, Some(b))?)),
            (_, Some(_)) => Err(SpecError::Syntax(format!("{family} does not take a base graph"))),
            (family, None) => Ok(GraphSpec::Family(Family::parse(family, &params)?)),
        }
    }

    pub fn graph(&self) -> Result<Graph, SpecError> {
        Ok(match self {
            GraphSpec::Family(f) => f.build()?,
            GraphSpec::Multipartitioned(p) => multipartitioned_expand(p)?,
            GraphSpec::Corona(b) => corona(b)?,
        })
    }

    /// Pseudoinverse from the family's closed form.
    pub fn closed_form_pinv(&self) -> Result<RationalMatrix, SpecError> {
        Ok(match self {
            GraphSpec::Family(f) => f.closed_form_pinv()?,
            GraphSpec::Multipartitioned(p) => pinv_multipartitioned(p)?,
            GraphSpec::Corona(b) => RationalMatrix::from_int(&corona_inverse_closed_form(b)),
        })
    }
}
