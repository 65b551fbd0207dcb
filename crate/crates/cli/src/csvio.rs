//! CSV with a header row. Numbers are written with `f64`'s `Display`,
//! which is the shortest string that parses back to the same value.

use gksmooth::Field;

use crate::error::FormatError;

pub fn write_table(columns: &[String], rows: &[Vec<f64>]) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(columns).expect("in-memory write");
    for row in rows {
        w.write_record(row.iter().map(f64::to_string)).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

/// Long form: one row per sample, `i0,...,i{d-1},value`.
pub fn field_to_csv(field: &Field) -> Vec<u8> {
    let mut columns: Vec<String> = (0..field.rank()).map(|k| format!("i{k}")).collect();
    columns.push("value".into());
    let rows: Vec<Vec<f64>> = field
        .values()
        .iter()
        .enumerate()
        .map(|(flat, &v)| {
            let mut row: Vec<f64> = field.multi_index(flat).into_iter().map(|i| i as f64).collect();
            row.push(v);
            row
        })
        .collect();
    write_table(&columns, &rows)
}

fn csv_error(e: csv::Error) -> FormatError {
    let offset = e.position().map_or(0, |p| p.byte());
    FormatError::new(offset, e.to_string())
}

/// Header and rows of an all-numeric table.
pub fn read_table(bytes: &[u8]) -> Result<(Vec<String>, Vec<Vec<f64>>), FormatError> {
    let mut r = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(bytes);
    let header: Vec<String> = r.headers().map_err(csv_error)?.iter().map(str::to_string).collect();
    if header.is_empty() || header.iter().all(String::is_empty) {
        return Err(FormatError::new(0, "missing header row"));
    }
    let mut rows = Vec::new();
    for record in r.records() {
        let record = record.map_err(csv_error)?;
        let at = record.position().map_or(0, |p| p.byte());
        let line = record.position().map_or(0, |p| p.line());
        let row = record
            .iter()
            .enumerate()
            .map(|(col, s)| {
                s.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| {
                        FormatError::new(at, format!("line {line}, column {}: not a finite number: {s:?}", col + 1))
                    })
            })
            .collect::<Result<Vec<f64>, _>>()?;
        rows.push(row);
    }
    Ok((header, rows))
}

/// The first column of a numeric table.
pub fn read_samples(bytes: &[u8]) -> Result<Vec<f64>, FormatError> {
    let (_, rows) = read_table(bytes)?;
    if rows.is_empty() {
        return Err(FormatError::new(bytes.len() as u64, "no data rows"));
    }
    Ok(rows.into_iter().map(|r| r[0]).collect())
}

/// Inverse of [`field_to_csv`]. Spacing is not stored, so it comes back as 1.
pub fn field_from_csv(bytes: &[u8]) -> Result<Field, FormatError> {
    let (header, rows) = read_table(bytes)?;
    let rank = header.len() - 1;
    let expected: Vec<String> = (0..rank).map(|k| format!("i{k}")).chain(["value".to_string()]).collect();
    if rank == 0 || header != expected {
        return Err(FormatError::new(0, format!("expected header {}", expected.join(","))));
    }
    if rows.is_empty() {
        return Err(FormatError::new(bytes.len() as u64, "no data rows"));
    }
    let mut index = Vec::with_capacity(rows.len());
    let mut dims = vec![0usize; rank];
    for (n, row) in rows.iter().enumerate() {
        let idx = row[..rank]
            .iter()
            .map(|&v| {
                (v >= 0.0 && v.fract() == 0.0 && v < 1e12)
                    .then_some(v as usize)
                    .ok_or_else(|| FormatError::new(0, format!("data row {}: bad index {v}", n + 1)))
            })
            .collect::<Result<Vec<usize>, _>>()?;
        for (d, &i) in dims.iter_mut().zip(&idx) {
            *d = (*d).max(i + 1);
        }
        index.push(idx);
    }
    let total: usize = dims.iter().product();
    if total != rows.len() {
        return Err(FormatError::new(
            0,
            format!("{} rows do not cover a {dims:?} grid exactly once", rows.len()),
        ));
    }
    let mut field = Field::zeros(dims).map_err(|e| FormatError::new(0, e.to_string()))?;
    let mut values = vec![f64::NAN; total];
    for (idx, row) in index.iter().zip(&rows) {
        let flat = field.flat_index(idx).expect("within dims");
        if !values[flat].is_nan() {
            return Err(FormatError::new(0, format!("duplicate index {idx:?}")));
        }
        values[flat] = row[rank];
    }
    field = Field::from_values(field.dims().to_vec(), values).map_err(|e| FormatError::new(0, e.to_string()))?;
    Ok(field)
}
