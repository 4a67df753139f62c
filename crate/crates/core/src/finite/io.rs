//! Table documents.
//!
//! JSON: `{"name": str, "elements": [str…], "table": [[int…]…]}`.
//! Text: a first line with the order `n`, then `n` rows of whitespace
//! separated indices; elements are named by their index.

use serde::{Deserialize, Serialize};

use super::{index_names, CayleyLoop, LoopError};

#[derive(Serialize, Deserialize)]
struct TableDoc {
    #[serde(default)]
    name: String,
    elements: Vec<String>,
    table: Vec<Vec<usize>>,
}

impl CayleyLoop {
    pub fn from_json(text: &str) -> Result<Self, LoopError> {
        let doc: TableDoc =
            serde_json::from_str(text).map_err(|e| LoopError::Format(e.to_string()))?;
        CayleyLoop::from_table(doc.name, doc.elements, &doc.table)
    }

    pub fn from_text(text: &str) -> Result<Self, LoopError> {
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or(LoopError::Empty)?;
        let n: usize = header
            .parse()
            .map_err(|_| LoopError::Format(format!("bad order line `{header}`")))?;
        let mut rows = Vec::with_capacity(n);
        for line in lines {
            let row = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| LoopError::Format(format!("bad entry `{tok}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        if rows.len() != n {
            return Err(LoopError::Format(format!(
                "declared order {n} but found {} rows",
                rows.len()
            )));
        }
        CayleyLoop::from_table("", index_names(n), &rows)
    }

    /// Reads either format, deciding by the first non-blank character.
    pub fn load(text: &str) -> Result<Self, LoopError> {
        if text.trim_start().starts_with('{') {
            CayleyLoop::from_json(text)
        } else {
            CayleyLoop::from_text(text)
        }
    }

    pub fn to_json(&self) -> String {
        let doc = TableDoc {
            name: self.name.clone(),
            elements: self.names.clone(),
            table: self.rows(),
        };
        serde_json::to_string(&doc).expect("table serialises")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.order);
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let doc = r#"{"name":"Z_3","elements":["0","1","2"],"table":[[0,1,2],[1,2,0],[2,0,1]]}"#;
        let l = CayleyLoop::from_json(doc).unwrap();
        assert_eq!(l.name(), "Z_3");
        assert_eq!(l.to_json(), doc);
        assert_eq!(CayleyLoop::load(doc).unwrap(), l);
    }

    #[test]
    fn text_format() {
        let l = CayleyLoop::from_text("# Klein\n4\n0 1 2 3\n1 0 3 2\n2 3 0 1\n3 2 1 0\n").unwrap();
        assert_eq!(l.order(), 4);
        assert_eq!(CayleyLoop::from_text(&l.to_text()).unwrap().rows(), l.rows());
        assert_eq!(
            CayleyLoop::from_text("1\n0\n").unwrap().order(),
            1
        );
    }

    #[test]
    fn text_rejects_non_latin() {
        let err = CayleyLoop::from_text("2\n0 1\n0 1\n").unwrap_err();
        assert!(matches!(err, LoopError::ColumnNotPermutation(_)));
        assert!(CayleyLoop::from_text("3\n0 1 2\n1 2 0\n").is_err());
        assert!(CayleyLoop::from_text("2\n0 x\n1 0\n").is_err());
    }

    #[test]
    fn json_rejects_malformed() {
        assert!(matches!(
            CayleyLoop::from_json("{\"elements\": [\"a\"]}"),
            Err(LoopError::Format(_))
        ));
        let ragged = r#"{"name":"r","elements":["a","b"],"table":[[0,1],[1]]}"#;
        assert!(matches!(
            CayleyLoop::from_json(ragged),
            Err(LoopError::Ragged { .. })
        ));
    }
}
