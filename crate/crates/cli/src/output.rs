//! Flat records written as CSV with a header row or as a JSON array of objects.

use crate::config::Format;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use std::io::Write;

/// One row of `table` output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRecord {
    pub pi: String,
    #[serde(rename = "D")]
    pub d: String,
    #[serde(rename = "L_alg")]
    pub l_alg: Option<String>,
    pub ord_p: Option<i64>,
    pub bound: Option<i64>,
    pub tight: Option<bool>,
    pub predicted_sha: Option<String>,
}

pub fn write_records<T: Serialize, W: Write>(records: &[T], format: Format, mut out: W) -> std::io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in records {
                w.serialize(r).map_err(std::io::Error::other)?;
            }
            w.flush()
        }
        Format::Json => {
            serde_json::to_writer_pretty(&mut out, records).map_err(std::io::Error::other)?;
            writeln!(out)
        }
    }
}

pub fn records_to_string<T: Serialize>(records: &[T], format: Format) -> String {
    let mut buf = Vec::new();
    write_records(records, format, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("utf-8 output")
}

pub fn read_records<T: DeserializeOwned>(text: &str, format: Format) -> Result<Vec<T>, String> {
    match format {
        Format::Csv => csv::Reader::from_reader(text.as_bytes())
            .deserialize()
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string()),
        Format::Json => serde_json::from_str(text).map_err(|e| e.to_string()),
    }
}
