//! JSON encodings of spaces and catalog lines.

use crate::error::{Error, Result};
use crate::points::PointSet;
use crate::space::FiniteSpace;
use serde::{Deserialize, Serialize};

pub const FORMAT_VERSION: u32 = 1;

/// A space file. Written with `preorder`; `opens` is accepted on input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDocument {
    pub version: u32,
    pub points: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub preorder: Option<Vec<Vec<u8>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opens: Option<Vec<PointSet>>,
}

impl SpaceDocument {
    pub fn from_space(space: &FiniteSpace) -> Self {
        SpaceDocument {
            version: FORMAT_VERSION,
            points: space.n(),
            preorder: Some(
                space
                    .preorder_matrix()
                    .into_iter()
                    .map(|row| row.into_iter().map(u8::from).collect())
                    .collect(),
            ),
            opens: None,
        }
    }

    pub fn to_space(&self) -> Result<FiniteSpace> {
        if self.version != FORMAT_VERSION {
            return Err(Error::UnsupportedVersion(self.version));
        }
        match (&self.preorder, &self.opens) {
            (Some(rows), None) => {
                if rows.len() != self.points {
                    return Err(Error::InvalidParams(format!(
                        "\"points\" is {} but the preorder has {} rows",
                        self.points,
                        rows.len()
                    )));
                }
                let matrix = rows
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|&v| match v {
                                0 => Ok(false),
                                1 => Ok(true),
                                other => Err(Error::InvalidParams(format!(
                                    "preorder entries must be 0 or 1, found {other}"
                                ))),
                            })
                            .collect::<Result<Vec<bool>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                FiniteSpace::from_preorder(&matrix)
            }
            (None, Some(opens)) => FiniteSpace::from_opens(self.points, opens),
            (Some(_), Some(_)) => Err(Error::InvalidParams(
                "give either \"preorder\" or \"opens\", not both".into(),
            )),
            (None, None) => Err(Error::InvalidParams(
                "missing \"preorder\" (or \"opens\")".into(),
            )),
        }
    }
}

pub fn space_to_json(space: &FiniteSpace) -> String {
    serde_json::to_string(&SpaceDocument::from_space(space)).expect("serializable")
}

pub fn space_from_json(text: &str) -> Result<FiniteSpace> {
    let doc: SpaceDocument = serde_json::from_str(text)?;
    doc.to_space()
}

/// One line of a space catalog: the space format plus identifiers.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogLine {
    #[serde(flatten)]
    pub space: SpaceDocument,
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub iso_class: Option<String>,
}
