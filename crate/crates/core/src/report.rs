//! Versioned JSON documents for verdicts, numbers and counts.
//!
//! Witness-bearing documents carry enough to be replayed against the graph
//! they name: [`VerdictDoc::replay`] and [`NumberDoc::replay`] re-check the
//! witness without trusting the search that produced it.

use serde::{Deserialize, Serialize};

use crate::coloring::{
    chromatic_number, is_k_colorable, is_proper_coloring, ColoringVerdict, Deletion,
};
use crate::dp::{
    canonical_labeling, find_transversal, validate_cover, Cover, CoverDoc, DpNumber, RobustVerdict,
    RobustWitness,
};
use crate::graph::{encode_graph6, parse_graph6, Graph};
use crate::list::{
    is_list_colorable, Choosability, ListAssignment, ListsDoc, StrongDecision, StrongVerdict,
    StrongWitness,
};

pub const VERDICT_SCHEMA: &str = "critickit.verdict/1";
pub const NUMBER_SCHEMA: &str = "critickit.number/1";
pub const COUNT_SCHEMA: &str = "critickit.count/1";
pub const GRAPH_SCHEMA: &str = "critickit.graph/1";

/// Three-way answer behind every decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckKind {
    Critical,
    VertexCritical,
    Strong,
    StrongCc,
    Robust,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessDoc {
    Edge { u: usize, v: usize },
    Vertex { vertex: usize },
    Cover { cover: CoverDoc },
    Assignment { lists: ListsDoc },
    Coloring { colors: Vec<usize> },
}

impl From<Deletion> for WitnessDoc {
    fn from(d: Deletion) -> Self {
        match d {
            Deletion::Edge { u, v } => WitnessDoc::Edge { u, v },
            Deletion::Vertex { vertex } => WitnessDoc::Vertex { vertex },
        }
    }
}

impl From<&Cover> for WitnessDoc {
    fn from(c: &Cover) -> Self {
        WitnessDoc::Cover {
            cover: CoverDoc::from(c),
        }
    }
}

impl From<&ListAssignment> for WitnessDoc {
    fn from(l: &ListAssignment) -> Self {
        WitnessDoc::Assignment {
            lists: ListsDoc::from(l),
        }
    }
}

fn bad_cover_of(g: &Graph, doc: &CoverDoc, folds: usize) -> Option<Cover> {
    validate_cover(doc).ok().filter(|c| {
        c.graph() == g && c.uniform_size() == Some(folds) && find_transversal(c).is_none()
    })
}

fn bad_assignment_of(g: &Graph, lists: &ListsDoc, size: usize) -> Option<ListAssignment> {
    ListAssignment::try_from(lists.clone())
        .ok()
        .filter(|l| l.len() == g.n() && l.uniform_size() == Some(size))
        .filter(|l| is_list_colorable(g, l) == Ok(false))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub schema: String,
    pub check: CheckKind,
    pub graph6: String,
    pub answer: Answer,
    pub decision: String,
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covers_scanned: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covers_total: Option<u128>,
    pub witness: Option<WitnessDoc>,
}

impl VerdictDoc {
    fn new(check: CheckKind, g: &Graph, answer: Answer, decision: &str, k: usize) -> Self {
        VerdictDoc {
            schema: VERDICT_SCHEMA.to_string(),
            check,
            graph6: encode_graph6(g),
            answer,
            decision: decision.to_string(),
            k,
            covers_scanned: None,
            covers_total: None,
            witness: None,
        }
    }

    /// Plain criticality, or vertex-criticality when `vertex` is set.
    pub fn criticality(g: &Graph, cv: &ColoringVerdict, vertex: bool) -> Self {
        let k = cv.chromatic_number;
        let (check, holds, yes, no) = if vertex {
            (
                CheckKind::VertexCritical,
                cv.is_vertex_critical,
                "vertex_critical",
                "not_vertex_critical",
            )
        } else {
            (
                CheckKind::Critical,
                cv.is_critical,
                "critical",
                "not_critical",
            )
        };
        if holds {
            return Self::new(check, g, Answer::Yes, yes, k);
        }
        let mut doc = Self::new(check, g, Answer::No, no, k);
        let witness = if vertex {
            (0..g.n())
                .find(|&v| k == 0 || !is_k_colorable(&g.without_vertices(&[v]).0, k - 1))
                .map(|vertex| Deletion::Vertex { vertex })
        } else {
            cv.witness
        };
        doc.witness = witness.map(WitnessDoc::from);
        doc
    }

    pub fn strong(g: &Graph, sv: &StrongVerdict) -> Self {
        let check = match sv.mode {
            crate::list::CriticalityMode::Critical => CheckKind::Strong,
            crate::list::CriticalityMode::VertexCritical => CheckKind::StrongCc,
        };
        let answer = match sv.decision {
            StrongDecision::Holds => Answer::Yes,
            StrongDecision::Unknown => Answer::Unknown,
            _ => Answer::No,
        };
        let decision = serde_json::to_value(sv.decision).expect("unit variant");
        let mut doc = Self::new(check, g, answer, decision.as_str().unwrap(), sv.k);
        doc.witness = sv.witness.as_ref().map(|w| match w {
            StrongWitness::Deletion(d) => WitnessDoc::from(*d),
            StrongWitness::Assignment(l) => WitnessDoc::from(l),
        });
        doc
    }

    pub fn robust(g: &Graph, rv: &RobustVerdict) -> Self {
        use crate::dp::RobustDecision as D;
        let answer = match rv.decision {
            D::RobustlyCritical => Answer::Yes,
            D::Unknown => Answer::Unknown,
            _ => Answer::No,
        };
        let decision = serde_json::to_value(rv.decision).expect("unit variant");
        let mut doc = Self::new(
            CheckKind::Robust,
            g,
            answer,
            decision.as_str().unwrap(),
            rv.k,
        );
        doc.covers_scanned = Some(rv.covers_scanned);
        doc.covers_total = rv.covers_total;
        doc.witness = rv.witness.as_ref().map(|w| match w {
            RobustWitness::Deletion(d) => WitnessDoc::from(*d),
            RobustWitness::Cover(c) => WitnessDoc::from(c),
        });
        doc
    }

    /// `None` without a witness; otherwise whether it refutes the property.
    ///
    /// A deletion must leave the chromatic number at `k`; a cover must be a
    /// bad non-canonical `(k-1)`-fold cover; lists must be a bad
    /// non-constant `(k-1)`-assignment.
    pub fn replay(&self) -> Option<bool> {
        let w = self.witness.as_ref()?;
        let Ok(g) = parse_graph6(&self.graph6) else {
            return Some(false);
        };
        let k = self.k;
        if k == 0 || chromatic_number(&g) != k {
            return Some(false);
        }
        let ok = match w {
            WitnessDoc::Edge { u, v } => g
                .without_edge(*u, *v)
                .is_ok_and(|h| !is_k_colorable(&h, k - 1)),
            WitnessDoc::Vertex { vertex } => Deletion::Vertex { vertex: *vertex }
                .apply(&g)
                .is_ok_and(|h| !is_k_colorable(&h, k - 1)),
            WitnessDoc::Cover { cover } => {
                bad_cover_of(&g, cover, k - 1).is_some_and(|c| canonical_labeling(&c).is_none())
            }
            WitnessDoc::Assignment { lists } => {
                bad_assignment_of(&g, lists, k - 1).is_some_and(|l| !l.is_constant())
            }
            WitnessDoc::Coloring { .. } => false,
        };
        Some(ok)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NumberKind {
    Chromatic,
    List,
    Dp,
}

/// A chromatic-type number. Exact values carry a witness of the lower
/// bound (a bad `(value-1)`-assignment or cover) or, for the chromatic
/// number, an optimal coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumberDoc {
    pub schema: String,
    pub kind: NumberKind,
    pub graph6: String,
    pub value: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lower_bound: Option<usize>,
    pub witness: Option<WitnessDoc>,
}

impl NumberDoc {
    fn new(kind: NumberKind, g: &Graph) -> Self {
        NumberDoc {
            schema: NUMBER_SCHEMA.to_string(),
            kind,
            graph6: encode_graph6(g),
            value: None,
            lower_bound: None,
            witness: None,
        }
    }

    pub fn chromatic(g: &Graph) -> Self {
        let k = chromatic_number(g);
        let mut doc = Self::new(NumberKind::Chromatic, g);
        doc.value = Some(k);
        doc.witness =
            crate::coloring::k_coloring(g, k).map(|colors| WitnessDoc::Coloring { colors });
        doc
    }

    pub fn list(g: &Graph, c: &Choosability) -> Self {
        let mut doc = Self::new(NumberKind::List, g);
        match c {
            Choosability::Exact { value, bad } => {
                doc.value = Some(*value);
                doc.witness = bad.as_ref().map(WitnessDoc::from);
            }
            Choosability::Unknown { lower_bound, .. } => doc.lower_bound = Some(*lower_bound),
        }
        doc
    }

    pub fn dp(g: &Graph, d: &DpNumber) -> Self {
        let mut doc = Self::new(NumberKind::Dp, g);
        match d {
            DpNumber::Exact { value, bad } => {
                doc.value = Some(*value);
                doc.witness = bad.as_ref().map(WitnessDoc::from);
            }
            DpNumber::Unknown { lower_bound, .. } => doc.lower_bound = Some(*lower_bound),
        }
        doc
    }

    /// `None` without a witness; otherwise whether it certifies the value.
    pub fn replay(&self) -> Option<bool> {
        let w = self.witness.as_ref()?;
        let (Ok(g), Some(value)) = (parse_graph6(&self.graph6), self.value) else {
            return Some(false);
        };
        let ok = match w {
            WitnessDoc::Coloring { colors } => is_proper_coloring(&g, colors, value),
            WitnessDoc::Assignment { lists } => {
                value >= 1 && bad_assignment_of(&g, lists, value - 1).is_some()
            }
            WitnessDoc::Cover { cover } => {
                value >= 1 && bad_cover_of(&g, cover, value - 1).is_some()
            }
            _ => false,
        };
        Some(ok)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountKind {
    Colorings,
    Transversals,
    Pdp,
    ChromaticPoly,
}

/// Counts are decimal strings so that big values survive JSON readers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountDoc {
    pub schema: String,
    pub kind: CountKind,
    pub graph6: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    /// False when a budget cut the minimization short; `value` is then an
    /// upper bound.
    pub exact: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<String>,
    /// Chromatic polynomial coefficients, constant term first.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub argmin: Option<CoverDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub covers_scanned: Option<u64>,
}

impl CountDoc {
    pub fn new(kind: CountKind, g: &Graph, k: Option<usize>) -> Self {
        CountDoc {
            schema: COUNT_SCHEMA.to_string(),
            kind,
            graph6: encode_graph6(g),
            k,
            value: None,
            exact: true,
            polynomial: None,
            coefficients: None,
            argmin: None,
            covers_scanned: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("documents serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub schema: String,
    pub graph6: String,
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl From<&Graph> for GraphDoc {
    fn from(g: &Graph) -> Self {
        GraphDoc {
            schema: GRAPH_SCHEMA.to_string(),
            graph6: encode_graph6(g),
            n: g.n(),
            edges: g.edges(),
        }
    }
}
