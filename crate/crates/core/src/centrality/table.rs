//! Measures table CSV: `network_id,layer,neuron,<measure columns...>`.
//! Undefined values are written as `NaN`.

use std::io::{Read, Write};

use super::{MeasureId, MeasureTable};
use crate::error::{Error, Result};

pub fn write_measures_csv<W: Write>(out: W, tables: &[MeasureTable]) -> Result<()> {
    let Some(first) = tables.first() else {
        return Err(Error::InvalidArgument("no measure tables to write".into()));
    };
    let measures = &first.measures;
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["network_id".to_string(), "layer".into(), "neuron".into()];
    header.extend(measures.iter().map(|m| m.name().to_string()));
    w.write_record(&header)?;
    for t in tables {
        if &t.measures != measures {
            return Err(Error::InvalidArgument(format!(
                "network {} has measures {:?}, expected {:?}",
                t.network_id, t.measures, measures
            )));
        }
        for i in 0..t.len() {
            let mut rec = vec![t.network_id.clone(), t.layers[i].to_string(), t.neurons[i].to_string()];
            rec.extend(t.columns.iter().map(|c| match c[i] {
                Some(v) => v.to_string(),
                None => "NaN".to_string(),
            }));
            w.write_record(&rec)?;
        }
    }
    w.flush().map_err(|e| Error::io("<measures csv>", e))?;
    Ok(())
}

/// Reads a measures table, one [`MeasureTable`] per network in order of
/// first appearance.
pub fn read_measures_csv<R: Read>(input: R) -> Result<Vec<MeasureTable>> {
    let mut r = csv::Reader::from_reader(input);
    let header = r.headers()?.clone();
    let fixed = ["network_id", "layer", "neuron"];
    if header.len() < 3 || header.iter().take(3).ne(fixed) {
        return Err(Error::format("measures csv header", "must start with network_id,layer,neuron"));
    }
    let measures = header
        .iter()
        .skip(3)
        .map(|h| h.parse::<MeasureId>().map_err(|e| Error::format("measures csv header", e.to_string())))
        .collect::<Result<Vec<_>>>()?;
    let mut tables: Vec<MeasureTable> = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec?;
        let field = |k: usize| format!("row {} column {}", line + 2, header.get(k).unwrap_or("?"));
        let id = rec.get(0).unwrap_or_default();
        let layer: usize = rec[1].parse().map_err(|_| Error::format(field(1), "not an integer"))?;
        let neuron: usize = rec[2].parse().map_err(|_| Error::format(field(2), "not an integer"))?;
        let idx = match tables.iter().position(|t| t.network_id == id) {
            Some(i) => i,
            None => {
                tables.push(MeasureTable {
                    network_id: id.to_string(),
                    layers: Vec::new(),
                    neurons: Vec::new(),
                    measures: measures.clone(),
                    columns: vec![Vec::new(); measures.len()],
                });
                tables.len() - 1
            }
        };
        let t = &mut tables[idx];
        t.layers.push(layer);
        t.neurons.push(neuron);
        for k in 0..measures.len() {
            let v: f64 = rec
                .get(k + 3)
                .ok_or_else(|| Error::format(field(k + 3), "missing value"))?
                .parse()
                .map_err(|_| Error::format(field(k + 3), "not a number"))?;
            t.columns[k].push(if v.is_nan() { None } else { Some(v) });
        }
    }
    Ok(tables)
}
