//! Per-graph curvature reports and their JSON / DOT / CSV renderings.

use serde::Serialize;
use thiserror::Error;

use crate::curvature::{lly_edge, lly_via_alpha, CurvatureError};
use crate::formulas::{extract_config, FormulaError};
use crate::graph::Graph;
use crate::triangulation::{is_maximal_outerplanar, EdgeKind, MopWitness};
use crate::{rat, rat_str, Rat};

/// Positivity of the whole graph is decided on edges; edge curvature
/// bounded below extends to all vertex pairs.
pub const PROVENANCE: &str =
    "positively_curved checks edges only; an edge curvature lower bound extends to all vertex pairs";

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("method requires a maximal outerplanar graph")]
    NotMaximalOuterplanar,
    #[error("curvature methods disagree on edge {0}-{1}: {2}")]
    MethodMismatch(usize, usize, String),
    #[error(transparent)]
    Curvature(#[from] CurvatureError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportMethod {
    Search,
    Alpha,
    ClosedForm,
    All,
}

impl ReportMethod {
    pub fn name(self) -> &'static str {
        match self {
            ReportMethod::Search => "search",
            ReportMethod::Alpha => "alpha",
            ReportMethod::ClosedForm => "closed-form",
            ReportMethod::All => "all",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EdgeRecord {
    pub u: usize,
    pub v: usize,
    pub kind: Option<String>,
    pub d_u: usize,
    pub d_v: usize,
    pub kappa: String,
    pub config: Option<String>,
    pub method: String,
    #[serde(skip)]
    pub kappa_exact: Rat,
}

#[derive(Debug, Clone, Serialize)]
pub struct Summary {
    pub min_kappa: String,
    pub positively_curved: bool,
    pub max_degree: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct CurvatureReport {
    pub graph: String,
    pub provenance: String,
    pub edges: Vec<EdgeRecord>,
    pub summary: Summary,
}

impl CurvatureReport {
    /// Compute curvature for every edge with the selected method. With
    /// [`ReportMethod::All`], every applicable route is run and exact
    /// agreement is asserted.
    pub fn build(
        id: &str,
        g: &Graph,
        method: ReportMethod,
    ) -> Result<CurvatureReport, ReportError> {
        let witness = is_maximal_outerplanar(g);
        if matches!(method, ReportMethod::ClosedForm) && witness.is_none() {
            return Err(ReportError::NotMaximalOuterplanar);
        }

        let mut records = Vec::new();
        for (u, v) in g.edges() {
            records.push(edge_record(g, witness.as_ref(), u, v, method)?);
        }

        let min_kappa = records
            .iter()
            .map(|r| r.kappa_exact.clone())
            .min()
            .unwrap_or_else(|| rat(0, 1));
        let positively_curved =
            !records.is_empty() && records.iter().all(|r| r.kappa_exact > rat(0, 1));
        Ok(CurvatureReport {
            graph: id.to_string(),
            provenance: PROVENANCE.to_string(),
            edges: records,
            summary: Summary {
                min_kappa: rat_str(&min_kappa),
                positively_curved,
                max_degree: g.max_degree(),
            },
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// DOT rendering: exterior edges solid, interior dashed, labeled with
    /// the exact curvature.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph curvature {\n");
        for r in &self.edges {
            let style = match r.kind.as_deref() {
                Some("interior") => "dashed",
                _ => "solid",
            };
            out.push_str(&format!(
                "  {} -- {} [style={style}, label=\"{}\"];\n",
                r.u, r.v, r.kappa
            ));
        }
        out.push_str("}\n");
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("u,v,kind,d_u,d_v,kappa,method\n");
        for r in &self.edges {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                r.u,
                r.v,
                r.kind.as_deref().unwrap_or(""),
                r.d_u,
                r.d_v,
                r.kappa,
                r.method
            ));
        }
        out
    }
}

fn edge_record(
    g: &Graph,
    witness: Option<&MopWitness>,
    u: usize,
    v: usize,
    method: ReportMethod,
) -> Result<EdgeRecord, ReportError> {
    let kind = witness
        .map(|w| w.edge_kind(g, u, v))
        .transpose()
        .map_err(|_| CurvatureError::NotAnEdge(u, v))?;
    let config = match witness {
        Some(w) => Some(extract_config(g, w, u, v)?),
        None => None,
    };

    let kappa = match method {
        ReportMethod::Search => lly_edge(g, u, v)?.kappa,
        ReportMethod::Alpha => lly_via_alpha(g, u, v)?,
        ReportMethod::ClosedForm => config
            .as_ref()
            .expect("closed-form requires a witness")
            .kappa()?,
        ReportMethod::All => {
            let searched = lly_edge(g, u, v)?.kappa;
            let alpha = lly_via_alpha(g, u, v)?;
            if alpha != searched {
                return Err(ReportError::MethodMismatch(
                    u,
                    v,
                    format!("search {} vs alpha {}", rat_str(&searched), rat_str(&alpha)),
                ));
            }
            if let Some(cfg) = &config {
                let closed = cfg.kappa()?;
                if closed != searched {
                    return Err(ReportError::MethodMismatch(
                        u,
                        v,
                        format!(
                            "search {} vs closed-form {}",
                            rat_str(&searched),
                            rat_str(&closed)
                        ),
                    ));
                }
            }
            searched
        }
    };

    Ok(EdgeRecord {
        u,
        v,
        kind: kind.map(|k| {
            match k {
                EdgeKind::Exterior => "exterior",
                EdgeKind::Interior => "interior",
            }
            .to_string()
        }),
        d_u: g.degree(u),
        d_v: g.degree(v),
        kappa: rat_str(&kappa),
        config: config.map(|c| c.tuple_string()),
        method: method.name().to_string(),
        kappa_exact: kappa,
    })
}
