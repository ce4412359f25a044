//! JSON form of frames: `{"name", "elements", "covers"}` plus optional raw tables.

use serde::{Deserialize, Serialize};

use super::{FiniteFrame, FrameError, FrameTables};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameFile {
    pub name: String,
    pub elements: Vec<String>,
    /// `[x, y]`: y covers x.
    pub covers: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tables: Option<TablesFile>,
}

/// Operation tables keyed by element names, rows in `elements` order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TablesFile {
    pub leq: Vec<Vec<bool>>,
    pub meet: Vec<Vec<String>>,
    pub join: Vec<Vec<String>>,
    pub arrow: Vec<Vec<String>>,
    pub pstar: Vec<String>,
    pub bottom: String,
    pub top: String,
}

impl FrameFile {
    pub fn from_frame(frame: &FiniteFrame, with_tables: bool) -> Self {
        let name_of = |i: usize| frame.names()[i].clone();
        let tables = with_tables.then(|| {
            let t = frame.tables();
            let rows = |m: &Vec<Vec<usize>>| m.iter().map(|r| r.iter().map(|&i| name_of(i)).collect()).collect();
            TablesFile {
                leq: t.leq.clone(),
                meet: rows(&t.meet),
                join: rows(&t.join),
                arrow: rows(&t.arrow),
                pstar: t.pstar.iter().map(|&i| name_of(i)).collect(),
                bottom: name_of(t.bottom),
                top: name_of(t.top),
            }
        });
        FrameFile {
            name: frame.name().to_string(),
            elements: frame.names().to_vec(),
            covers: frame
                .covers()
                .into_iter()
                .map(|(a, b)| (frame.name_of(a).to_string(), frame.name_of(b).to_string()))
                .collect(),
            tables,
        }
    }

    pub fn parse(text: &str) -> Result<Self, FrameError> {
        serde_json::from_str(text).map_err(|e| FrameError::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("frame files serialize")
    }

    /// Validates the cover relation; ignores any stored tables.
    pub fn to_frame(&self) -> Result<FiniteFrame, FrameError> {
        FiniteFrame::from_covers(self.name.clone(), &self.elements, &self.covers)
    }

    /// The frame exactly as stored: stored tables are loaded verbatim when present.
    pub fn to_frame_unchecked(&self) -> Result<FiniteFrame, FrameError> {
        let Some(t) = &self.tables else {
            return self.to_frame();
        };
        let idx = |s: &String| {
            self.elements
                .iter()
                .position(|e| e == s)
                .ok_or_else(|| FrameError::UnknownElement(s.clone()))
        };
        let rows = |m: &Vec<Vec<String>>| -> Result<Vec<Vec<usize>>, FrameError> {
            m.iter().map(|r| r.iter().map(idx).collect()).collect()
        };
        let tables = FrameTables {
            leq: t.leq.clone(),
            meet: rows(&t.meet)?,
            join: rows(&t.join)?,
            arrow: rows(&t.arrow)?,
            pstar: t.pstar.iter().map(idx).collect::<Result<_, _>>()?,
            bottom: idx(&t.bottom)?,
            top: idx(&t.top)?,
        };
        FiniteFrame::from_tables_unchecked(self.name.clone(), self.elements.clone(), &tables)
    }

    /// Full validation: covers must define a frame and stored tables, if
    /// any, must satisfy every law and agree with the covers.
    pub fn validate(&self) -> Result<FiniteFrame, FrameError> {
        let frame = self.to_frame()?;
        if self.tables.is_some() {
            let stored = self.to_frame_unchecked()?;
            stored.check_laws()?;
            if stored.tables() != frame.tables() {
                return Err(FrameError::LawViolated {
                    law: "tables-match-covers".into(),
                    witness: vec![],
                });
            }
        }
        Ok(frame)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::registry;

    #[test]
    fn json_round_trip() {
        let w5 = registry::w5();
        let file = FrameFile::from_frame(&w5, true);
        let back = FrameFile::parse(&file.to_json()).unwrap();
        assert_eq!(back, file);
        assert_eq!(back.validate().unwrap(), *w5);
    }

    #[test]
    fn plain_file_parses() {
        let text = r#"{"name":"C3","elements":["0","a","1"],"covers":[["0","a"],["a","1"]]}"#;
        let f = FrameFile::parse(text).unwrap().validate().unwrap();
        assert_eq!(f.len(), 3);
        assert!(FrameFile::parse("{").is_err());
    }

    #[test]
    fn tampered_tables_rejected() {
        let mut file = FrameFile::from_frame(&registry::c3(), true);
        file.tables.as_mut().unwrap().pstar[1] = "1".into();
        let err = file.validate().unwrap_err();
        assert_eq!(err.diagnostic()["law"], "pseudocomplement");
    }
}
