//! JSON document shapes for planes, partitions, and construction metadata.
//!
//! Vertex ids are `P<i>` for points and `L<i>` for lines, using the build
//! ordering of the plane.

use serde::{Deserialize, Serialize};

use crate::plane::VertexId;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneDocument {
    pub q: u32,
    pub lines: Vec<LineDocument>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineDocument {
    pub id: String,
    pub points: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionDocument {
    pub q: u32,
    pub classes: Vec<ClassDocument>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<ConstructionMetadata>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassDocument {
    pub name: String,
    pub members: Vec<String>,
}

/// Parameters of a successful construction run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionMetadata {
    pub q: u32,
    pub k: usize,
    pub l: usize,
    pub seed: u64,
    /// Index of the winning attempt; zero when the first attempt succeeded.
    pub retries: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub roles: Vec<ClassRole>,
}

/// What a constructed class is, in class order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum ClassRole {
    MajorPoints,
    Zeta { base_point: VertexId, base_line: VertexId },
    Searching,
    Rest,
}

/// Serializes with two-space indentation and a trailing newline.
pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("document types always serialize");
    s.push('\n');
    s
}
