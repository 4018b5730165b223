//! Deterministic CSV serialization: fixed headers, fixed row order and
//! floats printed with 17 significant digits so identical runs produce
//! byte-identical files.

/// One float, 17 significant digits, scientific notation.
pub fn float(x: f64) -> String {
    if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:.16e}")
    }
}

/// Simple CSV builder with a fixed header row.
pub struct CsvTable {
    columns: usize,
    out: String,
}

impl CsvTable {
    pub fn new(header: &[&str]) -> Self {
        CsvTable {
            columns: header.len(),
            out: format!("{}\n", header.join(",")),
        }
    }

    pub fn row(&mut self, fields: &[String]) {
        assert_eq!(fields.len(), self.columns, "csv row width mismatch");
        self.out.push_str(&fields.join(","));
        self.out.push('\n');
    }

    pub fn float_row(&mut self, values: &[f64]) {
        let fields: Vec<String> = values.iter().map(|&v| float(v)).collect();
        self.row(&fields);
    }

    pub fn finish(self) -> String {
        self.out
    }
}
