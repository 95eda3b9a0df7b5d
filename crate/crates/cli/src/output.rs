use clap::ValueEnum;
use serde_json::{Map, Value};
use tailduality::format::number;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub enum Field {
    Num(f64),
    Int(u64),
    Interval(f64, f64),
    Text(String),
    Flag(bool),
}

/// Named scalar results of one command.
#[derive(Debug, Clone, Default)]
pub struct Record(pub Vec<(&'static str, Field)>);

impl Record {
    pub fn num(mut self, key: &'static str, x: f64) -> Self {
        self.0.push((key, Field::Num(x)));
        self
    }

    pub fn int(mut self, key: &'static str, n: u64) -> Self {
        self.0.push((key, Field::Int(n)));
        self
    }

    pub fn interval(mut self, key: &'static str, lo: f64, hi: f64) -> Self {
        self.0.push((key, Field::Interval(lo, hi)));
        self
    }

    pub fn text(mut self, key: &'static str, s: impl Into<String>) -> Self {
        self.0.push((key, Field::Text(s.into())));
        self
    }

    pub fn flag(mut self, key: &'static str, b: bool) -> Self {
        self.0.push((key, Field::Flag(b)));
        self
    }

    pub fn render(&self, format: Format, digits: usize) -> String {
        let g = |x: f64| number(x, digits);
        match format {
            Format::Table => {
                let items: Vec<String> = self
                    .0
                    .iter()
                    .map(|(k, f)| match f {
                        Field::Num(x) => format!("{k}={}", g(*x)),
                        Field::Int(n) => format!("{k}={n}"),
                        Field::Interval(a, b) => format!("{k}=[{},{}]", g(*a), g(*b)),
                        Field::Text(s) => format!("{k}={s}"),
                        Field::Flag(b) => format!("{k}={b}"),
                    })
                    .collect();
                items.join(" ") + "\n"
            }
            Format::Csv => {
                let mut head = Vec::new();
                let mut row = Vec::new();
                for (k, f) in &self.0 {
                    match f {
                        Field::Num(x) => {
                            head.push(k.to_string());
                            row.push(g(*x));
                        }
                        Field::Int(n) => {
                            head.push(k.to_string());
                            row.push(n.to_string());
                        }
                        Field::Interval(a, b) => {
                            head.push(format!("{k}_lo"));
                            head.push(format!("{k}_hi"));
                            row.push(g(*a));
                            row.push(g(*b));
                        }
                        Field::Text(s) => {
                            head.push(k.to_string());
                            row.push(csv_text(s));
                        }
                        Field::Flag(b) => {
                            head.push(k.to_string());
                            row.push(b.to_string());
                        }
                    }
                }
                format!("{}\n{}\n", head.join(","), row.join(","))
            }
            Format::Json => {
                let mut obj = Map::new();
                for (k, f) in &self.0 {
                    let v = match f {
                        Field::Num(x) => json_num(*x, digits),
                        Field::Int(n) => Value::from(*n),
                        Field::Interval(a, b) => Value::Array(vec![json_num(*a, digits), json_num(*b, digits)]),
                        Field::Text(s) => Value::String(s.clone()),
                        Field::Flag(b) => Value::Bool(*b),
                    };
                    obj.insert(k.to_string(), v);
                }
                serde_json::to_string(&Value::Object(obj)).expect("json") + "\n"
            }
        }
    }
}

/// Columns of numbers, one row per grid point.
#[derive(Debug, Clone)]
pub struct Curve {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Curve {
    pub fn render(&self, format: Format, digits: usize) -> String {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&x| number(x, digits)).collect())
            .collect();
        match format {
            Format::Table => {
                let mut widths: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
                for row in &cells {
                    for (w, c) in widths.iter_mut().zip(row) {
                        *w = (*w).max(c.len());
                    }
                }
                let line = |items: Vec<&str>| -> String {
                    let padded: Vec<String> = items
                        .iter()
                        .zip(&widths)
                        .map(|(c, w)| format!("{c:>w$}"))
                        .collect();
                    padded.join("  ") + "\n"
                };
                let mut out = line(self.columns.clone());
                for row in &cells {
                    out.push_str(&line(row.iter().map(String::as_str).collect()));
                }
                out
            }
            Format::Csv => {
                let mut out = self.columns.join(",") + "\n";
                for row in &cells {
                    out.push_str(&row.join(","));
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        let obj: Map<String, Value> = self
                            .columns
                            .iter()
                            .zip(r)
                            .map(|(c, &x)| (c.to_string(), json_num(x, digits)))
                            .collect();
                        Value::Object(obj)
                    })
                    .collect();
                serde_json::to_string(&Value::Array(rows)).expect("json") + "\n"
            }
        }
    }
}

/// A JSON number carrying the same rounding as the text formats; the
/// non-finite values become their text tokens.
fn json_num(x: f64, digits: usize) -> Value {
    let s = number(x, digits);
    match s.parse::<f64>().ok().and_then(serde_json::Number::from_f64) {
        Some(n) if x.is_finite() => Value::Number(n),
        _ => Value::String(s),
    }
}

fn csv_text(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_formats() {
        let r = Record::default().num("value", 0.5).interval("maximizer", 0.75, 0.75);
        assert_eq!(r.render(Format::Table, 6), "value=0.5 maximizer=[0.75,0.75]\n");
        assert_eq!(r.render(Format::Csv, 6), "value,maximizer_lo,maximizer_hi\n0.5,0.75,0.75\n");
        assert_eq!(r.render(Format::Json, 6), "{\"value\":0.5,\"maximizer\":[0.75,0.75]}\n");
        let r = Record::default().num("value", f64::INFINITY);
        assert_eq!(r.render(Format::Json, 6), "{\"value\":\"inf\"}\n");
    }

    #[test]
    fn curve_formats() {
        let c = Curve {
            columns: vec!["t", "value"],
            rows: vec![vec![0.0, 1.5], vec![10.0, 0.25]],
        };
        assert_eq!(c.render(Format::Csv, 6), "t,value\n0,1.5\n10,0.25\n");
        assert_eq!(c.render(Format::Table, 6), " t  value\n 0    1.5\n10   0.25\n");
    }
}
