//! One CSV row per record, with the document kind repeated on every row.
//! Empty cells stand for absent fields.

use serde::{Deserialize, Serialize};

use super::{DocKind, Document, Record};
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize)]
struct Row {
    kind: String,
    subject: String,
    section: String,
    name: String,
    value: Option<String>,
    text: Option<String>,
    index: Option<u64>,
    diagnostic: Option<String>,
    status: Option<String>,
}

pub fn to_csv(doc: &Document) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &doc.records {
        w.serialize(Row {
            kind: doc.kind.name().to_string(),
            subject: r.subject.clone(),
            section: r.section.clone(),
            name: r.name.clone(),
            value: r.value.clone(),
            text: r.text.clone(),
            index: r.index,
            diagnostic: r.diagnostic.clone(),
            status: r.status.clone(),
        })
        .expect("in-memory csv write");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("csv is utf-8")
}

pub fn from_csv(text: &str) -> Result<Document> {
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let mut kind: Option<DocKind> = None;
    let mut records = Vec::new();
    for (i, row) in rd.deserialize::<Row>().enumerate() {
        let line = i + 2;
        let row = row.map_err(|e| Error::Parse {
            line,
            msg: e.to_string(),
        })?;
        let k = DocKind::parse(&row.kind).ok_or_else(|| Error::Parse {
            line,
            msg: format!("unknown kind {:?}", row.kind),
        })?;
        if kind.is_some_and(|prev| prev != k) {
            return Err(Error::Parse {
                line,
                msg: "mixed document kinds".into(),
            });
        }
        kind = Some(k);
        records.push(Record {
            subject: row.subject,
            section: row.section,
            name: row.name,
            value: row.value,
            text: row.text,
            index: row.index,
            diagnostic: row.diagnostic,
            status: row.status,
        });
    }
    let kind = kind.ok_or(Error::EmptyInput)?;
    let mut doc = Document::new(kind);
    doc.records = records;
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_with_awkward_text() {
        let mut doc = Document::new(DocKind::Checks);
        doc.push(Record::new("power(a=0.5)", "sandwich", "status").status("pass"));
        doc.push(Record::new("x", "y", "note").text("comma, \"quote\"\nnewline"));
        doc.push(Record::new("x", "y", "m").num(f64::INFINITY).index(7).diagnostic("diverging"));
        let back = from_csv(&to_csv(&doc)).unwrap();
        assert_eq!(back, doc);
    }

    #[test]
    fn rejects_bad_kind() {
        let text = "kind,subject,section,name,value,text,index,diagnostic,status\nbogus,a,b,c,,,,,\n";
        assert!(matches!(from_csv(text), Err(Error::Parse { line: 2, .. })));
    }
}
